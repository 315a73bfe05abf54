//! Height of a monomial ideal as a minimum vertex cover of generator supports.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

pub const MAX_VARIABLES: usize = 24;

/// Smallest number of variables meeting the support of every generator.
pub fn height_oracle(ideal: &MonomialIdeal) -> Result<usize> {
    let n = ideal.n();
    if n > MAX_VARIABLES {
        return Err(Error::Precondition(format!("exhaustive height search limited to n <= {MAX_VARIABLES}, got {n}")));
    }
    let mut supports: Vec<u64> = ideal.minimalize().gens().iter().map(|g| g.support_mask()).collect();
    if supports.is_empty() {
        return Ok(0);
    }
    supports.sort_unstable();
    supports.dedup();
    if supports.contains(&0) {
        return Err(Error::Precondition("the unit ideal has no height".into()));
    }
    let mut best = n;
    for cover in 0u64..(1 << n) {
        let size = cover.count_ones() as usize;
        if size < best && supports.iter().all(|s| s & cover != 0) {
            best = size;
        }
    }
    Ok(best)
}
