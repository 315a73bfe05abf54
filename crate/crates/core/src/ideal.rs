//! Monomial ideals given by finite generating sets, with brute-force arithmetic.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A monomial ideal in `K[x1..xn]`. Generators are kept sorted lex-descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
    minimal: bool,
}

impl MonomialIdeal {
    /// Wrap a generating set; nothing is removed, duplicates are merged.
    pub fn from_generators(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(gens.iter().all(|g| g.n() == n));
        gens.sort_unstable_by(|a, b| b.cmp(a));
        gens.dedup();
        MonomialIdeal { n, gens, minimal: false }
    }

    /// Caller guarantees the set is an antichain under divisibility.
    pub(crate) fn from_minimal_unchecked(n: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_unstable_by(|a, b| b.cmp(a));
        gens.dedup();
        MonomialIdeal { n, gens, minimal: true }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new(), minimal: true }
    }

    /// `(x1, ..., xn)^d`.
    pub fn maximal_power(n: usize, d: u32) -> Self {
        let mut gens = Vec::new();
        let mut exps = vec![0u32; n];
        fill_degree(&mut exps, 0, d, &mut gens);
        MonomialIdeal::from_minimal_unchecked(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Common degree of all generators, if equigenerated and nonzero.
    pub fn common_degree(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.common_degree().is_some()
    }

    pub fn gcd(&self) -> Option<Monomial> {
        let first = self.gens.first()?.clone();
        Some(self.gens.iter().fold(first, |acc, g| acc.gcd(g)))
    }

    pub fn lcm(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.n), |acc, g| acc.lcm(g))
    }

    /// Remove every generator divisible by another one. Idempotent.
    pub fn minimalize(&self) -> MonomialIdeal {
        if self.minimal {
            return self.clone();
        }
        MonomialIdeal { n: self.n, gens: minimal_subset(self.gens.clone()), minimal: true }
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality as ideals: compare sorted minimal generator lists.
    pub fn equals(&self, other: &MonomialIdeal) -> bool {
        self.n == other.n && self.minimalize().gens == other.minimalize().gens
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient rings differ");
        let products: Vec<Monomial> =
            self.gens.par_iter().flat_map_iter(|a| other.gens.iter().map(move |b| a.mul(b))).collect();
        MonomialIdeal::from_generators(self.n, products).minimalize()
    }

    /// `I^s` by iterated multiplication, minimalizing after each step.
    pub fn power(&self, s: u32) -> Result<MonomialIdeal> {
        if s == 0 {
            return Err(Error::Precondition("power needs s >= 1".into()));
        }
        let base = self.minimalize();
        let mut acc = base.clone();
        for _ in 1..s {
            acc = acc.multiply(&base);
        }
        Ok(acc)
    }

    /// Minimal generators of `I : (u)`.
    pub fn colon(&self, u: &Monomial) -> MonomialIdeal {
        let quotients = self.gens.iter().map(|g| g.div(&g.gcd(u)).expect("gcd divides"));
        MonomialIdeal::from_generators(self.n, quotients).minimalize()
    }

    /// Generators are all variables (the ideal is linear).
    pub fn is_generated_by_variables(&self) -> bool {
        self.minimalize().gens.iter().all(|g| g.degree() == 1)
    }

    pub fn generator_set(&self) -> HashSet<Monomial> {
        self.gens.iter().cloned().collect()
    }
}

fn fill_degree(exps: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial::new(exps.clone()));
        exps[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill_degree(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

/// Antichain of divisibility-minimal elements, sorted lex-descending.
fn minimal_subset(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    let equigenerated = gens.first().map(|g| g.degree()) == gens.last().map(|g| g.degree());
    if equigenerated {
        kept = gens;
    } else {
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
    }
    kept.sort_unstable_by(|a, b| b.cmp(a));
    kept
}
