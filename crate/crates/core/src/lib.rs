//! Shrinkage rates and shrinkage types of knots from their reduced Alexander
//! polynomials.
//!
//! The crate is organized bottom-up:
//!
//! - [`polyring`]: exact Laurent polynomials, square-free decomposition,
//!   Sturm root isolation, certified evaluation on the unit circle;
//! - [`smith`]: Smith normal form over the Laurent ring and Alexander
//!   polynomials of presentation matrices;
//! - [`unitcircle`]: unit-circle roots, cyclotomic detection, angles;
//! - [`shrinkage`]: the type I / II / III classification;
//! - [`diophantine`]: Mahler measure, Baker constants, convergents;
//! - [`sigma`]: spectral-gap scans and the matrix side of the equivalence;
//! - [`knotdb`]: the built-in knot table and knot families.

pub mod ball;
pub mod diophantine;
pub mod error;
pub mod knotdb;
pub mod polyring;
pub mod report;
pub mod shrinkage;
pub mod sigma;
pub mod smith;
pub mod unitcircle;

pub use error::{Error, Result};
pub use polyring::LaurentPoly;
