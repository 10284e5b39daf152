//! Size table comparing the generated Fourier-cover sets with the
//! `⌈d/2⌉ + 2` bound.

use serde::{Deserialize, Serialize};

use crate::certify::{certify, Direction, ProverConfig};
use crate::error::{Error, Result};
use crate::gpauli::Dimension;
use crate::states::{ceil_sqrt, theorem1_set};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: usize,
    /// `3⌈√d⌉ − 1`.
    pub nominal: usize,
    /// `⌈d/2⌉ + 2`.
    pub half_plus_two: usize,
    pub actual: usize,
    /// Both directions certified and verified.
    pub certificate_found: bool,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str =
        "d,three_ceil_sqrt_minus_1,ceil_half_plus_2,actual_size,certificate_found";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.d, self.nominal, self.half_plus_two, self.actual, self.certificate_found
        )
    }
}

pub fn sweep_row(d: Dimension) -> Result<SweepRow> {
    let n = d.get();
    let set = theorem1_set(d)?;
    let cfg = ProverConfig::default();
    let certificate_found = Direction::BOTH
        .iter()
        .all(|&dir| certify(&set, dir, &cfg).is_some());
    Ok(SweepRow {
        d: n,
        nominal: 3 * ceil_sqrt(n) - 1,
        half_plus_two: n.div_ceil(2) + 2,
        actual: set.len(),
        certificate_found,
    })
}

/// One row per `d` in `d_min..=d_max`.
pub fn sweep(d_min: usize, d_max: usize) -> Result<Vec<SweepRow>> {
    if d_min < 4 || d_min > d_max {
        return Err(Error::Input(format!(
            "need 4 <= d_min <= d_max, got {d_min}..{d_max}"
        )));
    }
    (d_min..=d_max)
        .map(|d| sweep_row(Dimension::new(d)?))
        .collect()
}
