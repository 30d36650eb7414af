pub mod field;
pub mod poly;
