//! Exact computations for conjugate self-dual Galois deformation theory at
//! desk scale: the group 𝒢_N, tame and Fontaine–Laffaille tangent spaces,
//! unitary Satake parameters, Taylor–Wiles numerology and an elliptic-curve
//! rigidity screener.

pub mod ec;
pub mod error;
pub mod fl;
pub mod gn;
pub mod hensel;
pub mod matrix;
pub mod nilpotent;
pub mod numerology;
pub mod poly;
pub mod tame;
pub mod ring;
pub mod satake;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use nilpotent::Partition;
pub use poly::Poly;
pub use ring::*;
