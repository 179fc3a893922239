//! Exact symbolic engine for the Kohn algorithm of subelliptic multipliers.
//!
//! Given a real polynomial defining function `r` of a domain in `C^n`, the
//! engine builds the increasing chain of multiplier ideals step by step,
//! certifies every element admitted by the real-radical closure, and reports
//! whether a unit (and hence a subelliptic estimate) is reached at the base
//! point.
//!
//! Modules, bottom-up:
//! - [`poly`]: Gaussian-rational scalars and polynomials in `z`, `zbar`.
//! - [`forms`]: exterior algebra over `dz`, `dzbar` and the Levi determinants.
//! - [`ideal`]: Gröbner bases, radical and sum-of-squares membership, closure.
//! - [`kohn`]: the algorithm driver, variety sampling and persistence checks.
//! - [`cli`]: expression parser, problem files, trace documents and reports.

pub mod cli;
pub mod forms;
pub mod ideal;
pub mod kohn;
pub mod poly;

pub use cli::{parse_expression, ParseError};
pub use poly::{GaussianRational, Monomial, Point, Poly, PolyError};
