//! Randomised exact verification and the extremiser search.

pub mod packets;
pub mod random;
pub mod search;
pub mod suite;

pub use random::{random_stepfun, random_triple, ValuePool};
pub use suite::{bound_sides, run_suite, CheckGroup, CheckRecord, Counterexample, Report, SuiteConfig};
pub use search::{search_extremal, SearchConfig, SearchResult};
