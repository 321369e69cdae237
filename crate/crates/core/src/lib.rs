//! Exact string polytopes, Demazure crystals, pipe dreams and Schubert
//! calculus on (symplectic) Gelfand-Tsetlin polytopes for types A_n and C_n.

pub mod cartan_weyl;
pub mod cli;
pub mod crystal;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod parse;
pub mod pipedreams;
pub mod polyhedra;
pub mod schubert_faces;

pub use error::{Error, Result};
