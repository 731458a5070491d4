pub mod bounds;
pub mod cli;
pub mod error;
pub mod field;
pub mod frobchain;
pub mod hermitian;
pub mod latex;
pub mod oracle;
pub mod plane;
pub mod secant;
pub mod subfield;
pub mod upoly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Elt, FieldCtx};
