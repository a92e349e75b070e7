//! Exact computation of Jacobians of sixth-root-of-unity matroids.

pub mod cli;
pub mod constructions;
pub mod eisenstein;
pub mod error;
pub mod hmatrix;
pub mod io;
pub mod jacobian;
pub mod matrix;
pub mod matroid;
pub mod projection;
pub mod ring;
pub mod snf;
