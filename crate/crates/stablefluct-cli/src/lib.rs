//! Batch front-end for the fluctuation-identity library: an identity
//! registry exposed through `eval` and `tabulate`, and quadrature/Monte
//! Carlo verification suites behind `verify`.

pub mod registry;
pub mod suites;
