//! G₀-fat Silver trees at finite scale: the fatness check, the shift step
//! inside clopen sets, fat extensions, fat trees inside clopen sets, ladders
//! and slaloms.

mod builder;
mod claim;
mod extend;
mod fatness;
mod ladder;
mod slalom;

pub use builder::g0_tree_inside;
pub use claim::{fatclaim_step, ClaimStep};
pub use extend::{fat_extend, Extension};
pub use fatness::{is_fat, shift_witness, sufficient_probe, FatnessEntry, FatnessReport, ShiftVerdict};
pub use ladder::{ladder, ladder_leq, Ladder, LISTED_LEVEL_LIMIT};
pub use slalom::{compatible_to_depth, slalom_cover, IdealShiftProbe, IntName, Slalom};
