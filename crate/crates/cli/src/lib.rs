//! Matrix files, JSON reports, seeded generators and the `ripcert` command
//! line on top of `ripcert-core`.

#![forbid(unsafe_code)]

pub mod cli;
pub mod format;
pub mod gen;
pub mod report;

pub use cli::{run, Outcome};
pub use format::{
    format_rational, parse_exact, parse_matrix, serialize_matrix, serialize_parsed, ParseError,
    ParseErrorKind, ParsedMatrix,
};
pub use gen::{gen_planted, gen_random, generate, GenError, GeneratorKind, GeneratorSpec};
pub use report::ReportDocument;
