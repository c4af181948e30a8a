pub mod conjugacy;
pub mod config;
pub mod error;
pub mod machines;
pub mod oracle;
pub mod relators;
pub mod satenc;
pub mod smallcancel;
pub mod suites;
pub mod words;

pub use error::{Error, Result};
