//! File formats, JSON reports, instance generators and the command-line
//! front end over `twobreak-core`.

pub mod cli;
pub mod formats;
pub mod gen;
pub mod json;
