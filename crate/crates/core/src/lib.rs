pub mod cli;
pub mod error;
pub mod folner;
pub mod grobner;
pub mod groups;
pub mod krull;
pub mod ring;
pub mod walk;

pub use error::{Error, Result};
