//! Linear quotients of c-bounded t-spread Veronese ideals in lex order.
//!
//! For a generator `u` with blocks `B_1, ..., B_r`, the gap intervals are
//! `[1, min B_1 - 1]` and, for `1 <= j < r`, `[max B_j + t (+1 if |B_j| = c), min B_{j+1} - 1]`.
//! Their union is `set(u)`, the variables generating `(lex-earlier generators) : u`.

use std::collections::BTreeSet;

use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::CBounded;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::multiset::{blocks_of, is_t_spread};

/// Integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapIntervalProfile {
    /// Index `j` holds the `j`th gap interval, `0 <= j < block count`.
    pub intervals: Vec<Interval>,
}

impl GapIntervalProfile {
    pub fn union(&self) -> BTreeSet<usize> {
        self.intervals.iter().flat_map(Interval::iter).map(|x| x as usize).collect()
    }
}

/// Structural membership in `G(I_{c,(n,d,t)})`.
pub fn is_generator(u: &Monomial, spec: &CBounded) -> bool {
    if u.n() != spec.n || u.degree() as usize != spec.d {
        return false;
    }
    let elems = u.to_multiset();
    is_t_spread(elems.elems(), spec.t) && blocks_of(elems.elems(), spec.t).iter().all(|b| b.len() <= spec.c)
}

pub fn gap_intervals(u: &Monomial, spec: &CBounded) -> Result<GapIntervalProfile> {
    if !is_generator(u, spec) {
        return Err(Error::NotAGenerator(format!("{u} in {spec}")));
    }
    let elems = u.to_multiset();
    let blocks = blocks_of(elems.elems(), spec.t);
    let t = spec.t as i64;
    let mut intervals = vec![Interval::new(1, blocks[0].min() as i64 - 1)];
    for w in blocks.windows(2) {
        let bump = if w[0].len() == spec.c { 1 } else { 0 };
        intervals.push(Interval::new(w[0].max() as i64 + t + bump, w[1].min() as i64 - 1));
    }
    Ok(GapIntervalProfile { intervals })
}

/// `set(u)`: the union of the gap intervals of `u`.
pub fn set_of(u: &Monomial, spec: &CBounded) -> Result<BTreeSet<usize>> {
    Ok(gap_intervals(u, spec)?.union())
}

/// `set(u^σ)` from `set(u)` via `b = a + #{j : i_j <= a}`.
pub fn set_transfer(u: &Monomial, spec: &CBounded) -> Result<BTreeSet<usize>> {
    let set = set_of(u, spec)?;
    let elems = u.to_multiset();
    Ok(set.into_iter().map(|a| a + elems.elems().iter().filter(|&&i| i <= a).count()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientFailure {
    /// Position of the generator in the lex-descending order (0-based).
    pub position: usize,
    pub generator: String,
    pub colon: Vec<String>,
    pub expected_set: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub holds: bool,
    pub generators: usize,
    pub counterexample: Option<QuotientFailure>,
}

/// Variables generating `(u_1, ..., u_{r-1}) : u_r`, or `None` when some minimal
/// generator of the colon ideal has degree > 1.
fn colon_variables(gens: &[Monomial], r: usize) -> (Option<BTreeSet<usize>>, MonomialIdeal) {
    let n = gens[r].n();
    let colon = MonomialIdeal::from_generators(n, gens[..r].iter().cloned()).colon(&gens[r]);
    let vars =
        colon.gens().iter().map(|g| (g.degree() == 1).then(|| g.min_index().unwrap())).collect::<Option<BTreeSet<_>>>();
    (vars, colon)
}

/// Check linear quotients of an arbitrary generating set in lex-descending order.
pub fn verify_linear_quotients_ideal(ideal: &MonomialIdeal) -> QuotientReport {
    let gens = ideal.minimalize().gens().to_vec();
    let failure = (1..gens.len()).into_par_iter().find_first(|&r| colon_variables(&gens, r).0.is_none());
    QuotientReport {
        holds: failure.is_none(),
        generators: gens.len(),
        counterexample: failure.map(|r| {
            let (_, colon) = colon_variables(&gens, r);
            QuotientFailure {
                position: r,
                generator: gens[r].to_string(),
                colon: colon.gens().iter().map(|g| g.to_string()).collect(),
                expected_set: None,
            }
        }),
    }
}

/// Oracle colon check for every generator of the family, compared with the gap-interval set.
pub fn verify_linear_quotients(spec: &CBounded) -> QuotientReport {
    let ideal = spec.generators();
    let gens = ideal.gens();
    let check = |r: usize| -> Option<QuotientFailure> {
        let (vars, colon) =
            if r == 0 { (Some(BTreeSet::new()), MonomialIdeal::zero(spec.n)) } else { colon_variables(gens, r) };
        let expected = set_of(&gens[r], spec).expect("enumerated generators are members");
        if vars.as_ref() == Some(&expected) {
            None
        } else {
            Some(QuotientFailure {
                position: r,
                generator: gens[r].to_string(),
                colon: colon.gens().iter().map(|g| g.to_string()).collect(),
                expected_set: Some(expected.into_iter().collect()),
            })
        }
    };
    let failure = (0..gens.len()).into_par_iter().find_map_first(check);
    QuotientReport { holds: failure.is_none(), generators: gens.len(), counterexample: failure }
}

/// `β_i = Σ_u C(|set(u)|, i)`; the vector has length `pd + 1`.
pub fn betti_numbers(spec: &CBounded) -> Result<Vec<u64>> {
    let ideal = spec.generators();
    if ideal.is_empty() {
        return Err(Error::EmptyFamily(spec.to_string()));
    }
    let sizes: Vec<usize> = ideal.gens().par_iter().map(|u| set_of(u, spec).map(|s| s.len())).collect::<Result<_>>()?;
    let pd = sizes.iter().copied().max().unwrap_or(0);
    Ok((0..=pd).map(|i| sizes.iter().map(|&s| binomial(s as u64, i as u64)).sum()).collect())
}

/// Projective dimension of the ideal: `max |set(u)|`.
pub fn projective_dimension(spec: &CBounded) -> Result<usize> {
    Ok(betti_numbers(spec)?.len() - 1)
}

/// The resolution is `d`-linear, so `reg(I) = d`.
pub fn regularity_cbounded(spec: &CBounded) -> Result<u32> {
    if !spec.is_nonempty() {
        return Err(Error::EmptyFamily(spec.to_string()));
    }
    Ok(spec.d as u32)
}
