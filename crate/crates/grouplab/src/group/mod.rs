pub mod parse;
pub mod perm;
pub mod table;
