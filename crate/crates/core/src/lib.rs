//! Toughness, (P2 ∪ P3)-freeness and Hamiltonian cycle construction for
//! dense graphs on at most 128 vertices.
//!
//! The [`constructor`] module assembles a Hamiltonian cycle for tough
//! (P2 ∪ P3)-free graphs by the cutset decomposition in [`structure`] and
//! the cycle-extension moves in [`hamiltonicity`], recording every step in
//! a replayable [`constructor::ConstructionTrace`].

pub mod constructor;
pub mod error;
mod flow;
pub mod generators;
pub mod graph;
pub mod hamiltonicity;
pub mod pattern;
pub mod rational;
pub mod structure;
pub mod toughness;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet};
pub use rational::Rational;
