//! Reduction graphs, SN verdicts, enumeration, sweeps and lemma checkers.

pub mod enumerate;
pub mod graph;
pub mod lemmas;
pub mod props;
pub mod sn;
pub mod sweep;

pub use enumerate::{EnumSpec, Grammar, VarPool};
pub use graph::{build_graph, confluence_witnesses, IncompleteGraph, ReductionGraph};
pub use sn::{sn_check, verdict, CycleWitness, SnVerdict};
pub use sweep::{sweep_sn, sweep_verdicts, SweepReport};
