//! Worked systems: the Simpson system, rank-3 flag schemes over a line,
//! and Quot-scheme points of the Simpson system on the affine line.

mod flag;
mod quot;
mod simpson;

pub use flag::{flag_fiber_report, flag_ideal, flag_case_field, FiberReport, FlagIdeal, FlagCase};
pub use quot::{column_hermite, quot_canonicalize, quot_invariant_oracle, QuotPoint, QuotReport};
pub use simpson::{simpson_grass_check, simpson_system, SimpsonReport};
