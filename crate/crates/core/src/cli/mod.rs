//! Expression parsing, problem files, trace documents and reports.

mod document;
mod parser;
mod problem;
mod report;

pub use document::{
    CapsDoc, CertificateDoc, DocumentError, PersistenceDoc, PersistenceStepDoc, ProblemDoc, SampleDoc, SquareDoc,
    StepDoc, SummaryDoc, TraceDocument, TruncationDoc, TupleDoc, VarietyDoc, TRACE_VERSION,
};
pub use parser::{parse_complex, parse_expression, ParseError};
pub use problem::{CapsOverride, InputError, Literal, ProblemFile, DEFAULT_PERSISTENCE_RADIUS};
pub use report::{emit_report, exit_code, run_problem, run_problem_with_trace, ReportFormat};
