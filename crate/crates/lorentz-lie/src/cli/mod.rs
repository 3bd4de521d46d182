//! File formats, reports and commands of the `lorentz-lie` tool.

pub mod commands;
pub mod document;
pub mod report;
pub mod selftest;

pub use commands::{run, Cli, Command, FamilyCommand, Outcome};
pub use document::{emit_definition, parse_definition, parse_matrix_file, DefinitionDocument};
pub use report::{analyze, emit_report, AnalysisReport, Format, RicciType, TypeSummary};
pub use selftest::{run_selftest, Check};
