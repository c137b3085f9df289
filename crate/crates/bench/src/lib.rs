//! Shared fixtures for the construction benchmarks.

use equifuse::{ExtModularData, Tolerance};

/// Values of `m` exercised by the benchmarks.
pub const MS: [u32; 3] = [2, 4, 6];

pub fn ext_for(m: u32) -> ExtModularData {
    ExtModularData::for_m(m, Tolerance::default()).expect("supported m")
}
