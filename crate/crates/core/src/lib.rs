//! Computational side of fine Selmer group comparisons over the cyclotomic
//! `Z_p`-extension: arithmetic in the Iwasawa algebra, structure invariants of
//! torsion modules, the two pseudo-isomorphism criteria with a brute-force
//! oracle, and the local hypothesis check for newforms of square-free level.

pub mod arith;
pub mod error;
pub mod gr;
pub mod greenberg;
pub mod hypothesis;
pub mod lambda;
pub mod module;
pub mod zmod;

pub use error::{Error, Result};
