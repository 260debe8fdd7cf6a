use std::panic;

fn main() {
    let code = panic::catch_unwind(|| galdef_cli::run(std::env::args_os())).unwrap_or(galdef_cli::EXIT_INTERNAL);
    std::process::exit(code);
}
