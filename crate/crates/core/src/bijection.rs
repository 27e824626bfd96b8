//! The column-plus-reflection embedding of a bounded partition into odd
//! parts, and the hook-peeling bijection from odd parts to distinct parts.
//!
//! The diagram of an odd-part partition is drawn centered: row `i` of width
//! `mu_i` occupies column offsets `-(mu_i-1)/2 ..= (mu_i-1)/2`. Peeling
//! alternates right-bending and left-bending hooks around the center
//! column:
//!
//! - `nu_{2i-1}` = cells in column `i-1` from row `i` downward, plus cells
//!   in row `i` strictly right of column `i-1`;
//! - `nu_{2i}` = cells in row `i` strictly left of column `-(i-1)`, plus
//!   cells in column `-i` from row `i+1` downward;
//!
//! stopping at the first zero part. The inverse rebuilds the diagram from
//! the innermost hook outward.

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A partition all of whose parts are odd.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OddPartition(Partition);

impl OddPartition {
    pub fn new(p: Partition) -> Result<Self> {
        if p.parts().iter().any(|&x| x % 2 == 0) {
            return Err(Error::Domain(format!("{p} has an even part")));
        }
        Ok(OddPartition(p))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }
}

impl std::fmt::Display for OddPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The centered Ferrers picture of an odd-part partition, stored as
/// half-widths `(mu_i - 1) / 2` per row.
#[derive(Clone, Debug)]
pub struct CenteredDiagram {
    half: Vec<i64>,
}

impl CenteredDiagram {
    pub fn new(mu: &OddPartition) -> Self {
        CenteredDiagram {
            half: mu
                .partition()
                .parts()
                .iter()
                .map(|&p| (p as i64 - 1) / 2)
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.half.len()
    }

    /// Cells in column offset `c` from row `from` (1-based) downward.
    pub fn column_cells_from(&self, c: i64, from: usize) -> u64 {
        if from > self.half.len() {
            return 0;
        }
        self.half[from - 1..]
            .iter()
            .filter(|&&h| h >= c.abs())
            .count() as u64
    }

    /// Cells in row `i` (1-based) strictly beyond column offset `c >= 0`,
    /// on either side by symmetry.
    pub fn row_cells_beyond(&self, i: usize, c: i64) -> u64 {
        match self.half.get(i - 1) {
            Some(&h) => (h - c).max(0) as u64,
            None => 0,
        }
    }
}

/// Pad `pi` with zero rows to a column of height `j`, then widen each row
/// symmetrically: the result has parts `2 pi_i + 1` and size `2|pi| + j`.
pub fn embed(pi: &Partition, j: u32) -> Result<OddPartition> {
    if pi.len() as u64 > j as u64 {
        return Err(Error::Domain(format!(
            "{pi} has more than {j} parts and cannot embed"
        )));
    }
    let mut parts: Vec<u32> = pi.parts().iter().map(|&p| 2 * p + 1).collect();
    parts.resize(j as usize, 1);
    OddPartition::new(Partition::new(parts)?)
}

/// Hook-peel the centered diagram into a partition with distinct parts.
pub fn sylvester(mu: &OddPartition) -> Partition {
    let d = CenteredDiagram::new(mu);
    let mut parts: Vec<u32> = Vec::new();
    let mut i: usize = 1;
    loop {
        let c = (i - 1) as i64;
        let right = d.column_cells_from(c, i) + d.row_cells_beyond(i, c);
        if right == 0 {
            break;
        }
        parts.push(right as u32);
        let left = d.row_cells_beyond(i, c) + d.column_cells_from(-(i as i64), i + 1);
        if left == 0 {
            break;
        }
        parts.push(left as u32);
        i += 1;
    }
    assert!(
        parts.windows(2).all(|w| w[0] > w[1]),
        "peeled parts are not strictly decreasing for {mu}"
    );
    Partition::new(parts).expect("strictly decreasing positive parts")
}

/// Rebuild the unique odd-part partition that peels to `nu`.
///
/// Works from the innermost hook pair outward. At level `i` the state
/// holds the half-widths of all rows below row `i` that still reach column
/// `i`; the left hook fixes the half-width of row `i` and the right hook
/// fixes how many new rows of half-width exactly `i - 1` appear below.
pub fn sylvester_inverse(nu: &Partition) -> Result<OddPartition> {
    if !nu.has_distinct_parts() {
        return Err(Error::Domain(format!("{nu} does not have distinct parts")));
    }
    let parts = nu.parts();
    let k = parts.len();
    let levels = k.div_ceil(2);
    let mut rows: Vec<i64> = Vec::new();
    for i in (1..=levels).rev() {
        let right = parts[2 * i - 2] as i64;
        let left = if 2 * i - 1 < k {
            parts[2 * i - 1] as i64
        } else {
            0
        };
        let visible = rows.len() as i64;
        let h = (i as i64 - 1) + (left - visible);
        let fresh = right - left - 1;
        let consistent = left >= visible && fresh >= 0 && rows.first().is_none_or(|&top| h >= top);
        if !consistent {
            return Err(Error::Domain(format!(
                "{nu} is not the peeling of any odd-part partition"
            )));
        }
        let mut next = Vec::with_capacity(rows.len() + 1 + fresh as usize);
        next.push(h);
        next.extend_from_slice(&rows);
        next.extend(std::iter::repeat_n(i as i64 - 1, fresh as usize));
        rows = next;
    }
    let mu: Vec<u32> = rows.iter().map(|&h| (2 * h + 1) as u32).collect();
    OddPartition::new(Partition::new(mu)?)
}
