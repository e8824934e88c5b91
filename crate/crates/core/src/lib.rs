//! Exact computer algebra for quiver algebras: path algebras, power series,
//! rational series, Leavitt path algebras, their regular localization, and
//! the associated monoid of projectives.

pub mod automaton;
pub mod error;
pub mod leavitt;
pub mod linalg;
pub mod modtools;
pub mod monoid;
pub mod path;
pub mod pathalg;
pub mod quiver;
pub mod random;
pub mod ratprint;
pub mod ratseries;
pub mod regalg;
pub mod rewrite;
pub mod scalar;
pub mod series;
pub mod text;

pub use error::{Error, Result};
pub use scalar::Scalar;
