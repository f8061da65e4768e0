//! Library side of the command-line tool: the ASCII renderer, JSON
//! scenario codecs and the sampling oracle suites. The binary in
//! `main.rs` is a thin dispatcher over these.

pub mod oracle;
pub mod render;
pub mod scenario;
