//! Oriented cycles, an exact Hamiltonicity oracle, and the two
//! cycle-extension moves (single vertex, path).

mod cycle;
mod extend;
mod oracle;

pub use cycle::{validate_cycle, OrientedCycle, PathSeg};
pub use extend::{extend_with_path, extend_with_vertex, Extended, Extension, ExtensionFailure, Move};
pub use oracle::{
    hamiltonian_cycle, hamiltonian_cycle_backtrack, hamiltonian_cycle_dp, hamiltonian_cycle_with,
    HamiltonOptions, HamiltonResult, DP_LIMIT,
};
