//! Library side of the `farey` command: counting experiments, figure
//! rendering, witness export and the verification report, all pure
//! functions from a run configuration to output bytes.

pub mod count;
pub mod report;
pub mod svg;
pub mod witness;
