//! Falsification suite: batteries, property checks, theorem checks, the
//! mutation suite and reports.

pub mod battery;

pub use battery::{Battery, BatteryMap, BatteryModule, MapTag, Pair, Sizes, Triple};
pub mod props;

pub use props::{check_property, replay_property, Outcome, Property, PropertyVerdict, Witness};
pub mod theorems;

pub use theorems::{builtin_env, replay_theorem, verify_theorem, Builtin, Context, TheoremId, BUILTINS};
pub mod suite;
pub use suite::{mutation_suite, mutation_targets, run_suite, Check, MutationReport, Suite, SuiteReport, PASS_LABEL};
