//! Library surface of the verification front end: expression parsing, run
//! configuration, the claim catalog, and the report renderers. The binary
//! in `main.rs` is a thin argument-parsing shell over these.

pub mod claims;
pub mod config;
pub mod expr;
pub mod render;
