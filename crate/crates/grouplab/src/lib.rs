pub mod aut;
pub mod bounds;
pub mod characters;
pub mod corpus;
pub mod error;
pub mod ff;
pub mod group;
pub mod power;
pub mod psl2;
pub mod report;
pub mod suites;
pub mod wreath;

pub use error::{Error, Result};
