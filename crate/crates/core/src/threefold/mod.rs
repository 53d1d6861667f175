//! The concrete threefold and surface maps, their invariant curves and blow-up charts.

pub mod beta;
pub mod forms;
pub mod maps;
pub mod surface;

pub use beta::{cycle_report, verify_ell_condition, Curve, CurveParam, Cycle, OrbitTrace, StepStatus};
pub use maps::Maps;
