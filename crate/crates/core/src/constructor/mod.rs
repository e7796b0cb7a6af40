//! Proof-following Hamiltonian cycle construction with replayable traces.

mod assemble;
mod driver;
mod recorder;
mod trace;

pub use assemble::{check_assembly_preconditions, lemma8_procedure, MIN_ORDER};
pub use driver::{theorem1_driver, theorem1_driver_with, DegreeClasses, DriverOptions};
pub use recorder::{ConstructionFailure, ConstructionOutcome};
pub use trace::{
    graph_hash, replay_trace, Check, Cmp, ConstructionTrace, Expr, Quantity, ReplayVerdict, Rule,
    Step,
};
