//! Zero tables and the explicit zero-sum route.

mod sum;
mod table;
mod verify;

pub use sum::{
    k_zero_sum, paired_zero_sum, tail_correction, zero_term, Orientation, TailEstimate, TailModel, GUARD_DISTANCE,
    MIN_TAIL_HEIGHT,
};
pub use table::{load_zero_table, parse_zero_table, ZeroFormat, ZeroTable};
pub use verify::{verify_zero_table, VerificationReport, ZeroFailure};
