pub mod algebra;
pub mod classify;
pub mod cli;
pub mod code;
pub mod constacyclic;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod oracle;
pub mod quotient;
pub mod text;

pub use error::{Error, Result};
pub use exec::Exec;
