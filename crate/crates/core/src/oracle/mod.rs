//! Brute-force ground truth: exact Betti tables, heights and derived invariants.
//!
//! Nothing here uses the closed forms of the families; every formula elsewhere in
//! the crate is checked against these routines.

pub mod betti;
pub mod height;
pub mod linalg;

pub use betti::{betti_table, betti_table_with_budget, BettiTable, SimplicialComplex, DEFAULT_BUDGET};
pub use height::height_oracle;

use crate::error::Result;
use crate::ideal::MonomialIdeal;

pub fn pd(ideal: &MonomialIdeal) -> Result<Option<usize>> {
    Ok(betti_table(ideal)?.pd())
}

pub fn depth_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(betti_table(ideal)?.depth_quotient())
}

pub fn reg_from_table(ideal: &MonomialIdeal) -> Result<Option<u32>> {
    Ok(betti_table(ideal)?.reg())
}

pub fn has_linear_resolution(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(betti_table(ideal)?.has_linear_resolution())
}

/// Cohen–Macaulay test for `S/I`: `pd(S/I) = height(I)`.
pub fn is_cohen_macaulay_oracle(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(betti_table(ideal)?.pd_quotient() == height_oracle(ideal)?)
}

/// Gorenstein test for `S/I`: Cohen–Macaulay with last total Betti number of `S/I` equal to 1.
pub fn is_gorenstein_oracle(ideal: &MonomialIdeal) -> Result<bool> {
    let table = betti_table(ideal)?;
    if table.pd_quotient() != height_oracle(ideal)? {
        return Ok(false);
    }
    Ok(table.totals().last().copied().unwrap_or(1) == 1)
}
