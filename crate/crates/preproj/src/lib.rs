//! Exact computations with graded preprojective algebras of acyclic quivers,
//! their quotients by Coxeter-word ideals, tilting objects and endomorphism
//! algebras.

pub mod algebra;
pub mod context;
pub mod coxeter;
pub mod endo;
pub mod error;
pub mod field;
pub mod hereditary;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod quiver;
pub mod report;
pub mod split;
pub mod table;
pub mod thick;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rat};
