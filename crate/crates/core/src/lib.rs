pub mod action;
pub mod cli;
pub mod circuit;
pub mod error;
pub mod homogenize;
pub mod index;
pub mod linalg;
pub mod meta;
pub mod oracle;
pub mod poly;
pub mod projector;
pub mod rep;
pub mod scalar;
pub mod text;
pub mod uea;

#[cfg(test)]
mod testutil;

pub use action::{BasisElement, GroupElement};
pub use error::{Error, Result};
pub use index::MultiIndex;
pub use meta::{Format, MetaMonomial, MetaPolynomial};
pub use poly::Polynomial;
pub use scalar::Scalar;
