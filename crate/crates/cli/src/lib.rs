//! JSON schemas of the `artinian` command-line tool.

pub mod schema;
