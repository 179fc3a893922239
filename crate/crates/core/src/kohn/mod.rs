//! The multiplier-ideal iteration: Step 1, Step k+1, the run loop, and
//! sampling of the result near the base point.

mod driver;
mod spec;
mod variety;

pub use driver::{run, step1, step_next, KohnStatus, KohnTrace, StepRecord, StepTruncation, TupleRecord};
pub use spec::{KohnCaps, KohnError, ProblemSpec, DEFAULT_MAX_STEPS, DEFAULT_TUPLE_CAP};
pub use variety::{
    persistence_check, surface_grid, variety_sample, PersistenceReport, PersistenceStep, SampleVerdict, VarietyReport,
    PERSISTENCE_CAVEAT,
};
