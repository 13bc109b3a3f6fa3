//! Von Mangoldt function tables, weighted prime-power sums and the
//! regularized limits they feed.

mod cache;
mod limit;
mod sieve;
mod sums;

pub use cache::{load_table, save_table, verify_table, CacheReport, MAGIC, VERSION};
pub use limit::{
    normalized_limits, regularized_limit, regularized_limits, LimitEstimate, LimitSchedule, Summation,
    DEFAULT_SMOOTHING_WIDTH, DEFAULT_WINDOW,
};
pub use sieve::{build_mangoldt_table, MangoldtEntry, MangoldtTable, SIEVE_CAPACITY};
pub use sums::{log_power_integral, log_power_normalized_all, weighted_partial_sum};
