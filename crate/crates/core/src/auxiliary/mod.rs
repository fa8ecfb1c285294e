//! Interval maintenance and minimum keeping for the working-set heap.

mod interval_map;
mod min_keeper;
mod skippable;

pub use interval_map::{Interval, IntervalMap, Located};
pub use min_keeper::{MinKeeper, NaturalOrder, Order};
pub use skippable::SkippableArray;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuxError {
    #[error("interval [{start}, {end}) overlaps a stored interval")]
    Overlap { start: u64, end: u64 },
    #[error("interval [{start}, {end}) is empty")]
    EmptyInterval { start: u64, end: u64 },
    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },
    #[error("decrease would increase the stored value")]
    Increase,
    #[error("pop requires the last two values to compare equal")]
    PopPrecondition,
    #[error("structure is empty")]
    Empty,
}
