//! Job files, check execution and report envelopes behind the `defcert` binary.

pub mod job;
pub mod render;
pub mod run;
pub mod schema;

pub use job::{Invocation, Job, JobError, Pos};
pub use run::{run, ReportEnvelope, Status};
