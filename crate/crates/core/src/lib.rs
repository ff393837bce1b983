//! Albert twisted fields over small finite fields: construction, the split
//! Albert algebras, and exhaustive censuses of the subspaces `Av` of `A^2`.

pub mod algebra3;
pub mod engine;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod par;
pub mod split_albert;

pub use error::{Error, Result};
