//! q-matroids, q-Δ-matroids, q-g-matroids and rank-metric-code
//! representability over finite vector spaces F_q^n, with exhaustive axiom
//! verifiers that report concrete witnesses for every failed check.

pub mod bitset;
pub mod corpus;
pub mod error;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod lattice;
pub mod qdelta;
pub mod qg;
pub mod qmatroid;
pub mod randgen;
pub mod rmcodes;
pub mod strongmap;
pub mod subspace;

pub use error::{Error, Result};
