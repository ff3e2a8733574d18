//! Property verification: the constructive path partitioner, the
//! layer-path structural check, and exhaustive/adversarial checks of the
//! path-deletion stability property.

mod partition;
mod paths;
mod verify;

pub use partition::{
    gallai_milgram_partition, validate_path_partition, PartitionError, PathPartition,
};
pub use paths::{all_paths, maximal_paths, Budget, BudgetExhausted};
pub use verify::{
    check_layer_path_property, lower_bound_remaining, verify_adversarial, verify_exhaustive,
    Counterexample, Verdict, VerdictOutcome, VerifyStats, SOLVER_NODE_BUDGET,
};
