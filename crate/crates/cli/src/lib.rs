//! Library surface of the command-line certifier: the arrangement file
//! format, report schema, and command pipelines. The binary in `main.rs` is
//! a thin argument-parsing wrapper around [`commands`].

pub mod commands;
pub mod parse;
pub mod report;
