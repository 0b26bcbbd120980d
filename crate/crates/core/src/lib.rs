//! Morse theory of closed geodesics and string-topology bookkeeping for
//! compact symmetric spaces, computed exactly from restricted-root data.
//!
//! The modules build on each other in this order:
//!
//! * [`rootspace`]: space data, validation, the built-in catalog, space files.
//! * [`weyl`]: the Weyl group and the closed positive chamber.
//! * [`geodesics`]: conjugate times, index, nullity and `mu` along a ray.
//! * [`spectrum`]: critical manifolds below an energy bound.
//! * [`csring`]: Chas-Sullivan products of completing-manifold classes.
//! * [`bottcycles`]: Bott-Samelson families and lattice-avoiding polygons.
//! * [`products`]: product spaces.
//! * [`cli`]: the `symloop` command line and SVG output.

pub mod bottcycles;
pub mod check;
pub mod cli;
pub mod csring;
pub mod error;
pub mod exec;
pub mod geodesics;
pub mod matrix;
pub mod products;
pub mod rational;
pub mod rootspace;
pub mod spectrum;
pub mod weyl;

pub use check::{CheckItem, CheckResult};
pub use error::{Error, Result};
pub use exec::Execution;
pub use matrix::RatMatrix;
pub use rational::{RatVec, Rational};
pub use rootspace::{catalog, SymmetricSpaceData};
