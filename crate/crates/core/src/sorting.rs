//! Sorting operator, sortability, the l-exchange property, and the relations of the
//! Rees algebra read off from the sorting order.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::CBounded;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub const MAX_TUPLE: usize = 3;

/// Sort an `N`-tuple of equal-degree monomials: merge the multisupports and deal the
/// merged sequence out round-robin.
pub fn sort_tuple(us: &[Monomial]) -> Result<Vec<Monomial>> {
    let Some(first) = us.first() else { return Ok(Vec::new()) };
    let (n, d) = (first.n(), first.degree());
    if let Some(bad) = us.iter().find(|u| u.degree() != d) {
        return Err(Error::DegreeMismatch(d, bad.degree()));
    }
    let mut merged: Vec<usize> = us.iter().flat_map(|u| u.to_multiset().elems().to_vec()).collect();
    merged.sort_unstable();
    let k = us.len();
    Ok((0..k)
        .map(|p| {
            let mut exps = vec![0u32; n];
            for &i in merged.iter().skip(p).step_by(k) {
                exps[i - 1] += 1;
            }
            Monomial::new(exps)
        })
        .collect())
}

pub fn sort_pair(u: &Monomial, v: &Monomial) -> Result<(Monomial, Monomial)> {
    let mut s = sort_tuple(&[u.clone(), v.clone()])?;
    let b = s.pop().unwrap();
    let a = s.pop().unwrap();
    Ok((a, b))
}

/// The tuple equals its own sorting. Tuples of unequal degree are never sorted.
pub fn is_sorted_tuple(us: &[Monomial]) -> bool {
    sort_tuple(us).map(|s| s == us).unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortFailure {
    pub u: String,
    pub v: String,
    pub sorted: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortableReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<SortFailure>,
}

/// Every pair of generators sorts into a pair of generators.
pub fn verify_sortable_ideal(ideal: &MonomialIdeal) -> SortableReport {
    let gens = ideal.gens();
    let members = ideal.generator_set();
    let m = gens.len();
    let failure = (0..m).into_par_iter().find_map_first(|a| {
        (a..m).find_map(|b| {
            let (p, q) = sort_pair(&gens[a], &gens[b]).ok()?;
            if members.contains(&p) && members.contains(&q) {
                None
            } else {
                Some(SortFailure {
                    u: gens[a].to_string(),
                    v: gens[b].to_string(),
                    sorted: (p.to_string(), q.to_string()),
                })
            }
        })
    });
    SortableReport { holds: failure.is_none(), pairs_checked: m * (m + 1) / 2, counterexample: failure }
}

pub fn verify_sortable(spec: &CBounded) -> SortableReport {
    verify_sortable_ideal(&spec.generators())
}

/// Sorted `N`-tuples of generators, as index tuples into the lex-descending generator list.
/// These are the standard monomials of degree `N` for the sorting order.
pub fn sorted_tuples(ideal: &MonomialIdeal, size: usize) -> Vec<Vec<usize>> {
    let gens = ideal.gens();
    let m = gens.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; size];
    if m == 0 || size == 0 {
        return out;
    }
    loop {
        let tuple: Vec<Monomial> = idx.iter().map(|&i| gens[i].clone()).collect();
        if is_sorted_tuple(&tuple) {
            out.push(idx.clone());
        }
        // next nondecreasing index tuple
        let Some(p) = (0..size).rev().find(|&p| idx[p] + 1 < m) else { break };
        let next = idx[p] + 1;
        idx[p..].iter_mut().for_each(|x| *x = next);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeFailure {
    pub q: usize,
    pub standard: Vec<String>,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeReport {
    pub holds: bool,
    pub tuple_size: usize,
    pub standard_monomials: usize,
    pub counterexample: Option<ExchangeFailure>,
}

/// Check the l-exchange property for standard monomials of degree `size` in the
/// sorting order (sorted tuples).
///
/// The conclusion only depends on the first tuple and on `q`, so for each `q` the
/// second tuple is located through its product: a prefix map from
/// `(deg_{x_1}, ..., deg_{x_{q-1}})` to the largest `deg_{x_q}`.
pub fn verify_l_exchange_ideal(ideal: &MonomialIdeal, size: usize) -> Result<ExchangeReport> {
    if size == 0 || size > MAX_TUPLE {
        return Err(Error::Precondition(format!("tuple size must be in 1..={MAX_TUPLE}, got {size}")));
    }
    let n = ideal.n();
    let gens = ideal.gens();
    let tuples = sorted_tuples(ideal, size);
    let products: Vec<Vec<u32>> =
        tuples.iter().map(|t| t.iter().fold(Monomial::one(n), |acc, &i| acc.mul(&gens[i])).exps().to_vec()).collect();

    // prefix_best[q-1]: prefix of length q-1 -> (max deg_{x_q}, tuple index)
    let prefix_best: Vec<HashMap<&[u32], (u32, usize)>> = (1..n)
        .map(|q| {
            let mut best: HashMap<&[u32], (u32, usize)> = HashMap::new();
            for (k, p) in products.iter().enumerate() {
                let e = best.entry(&p[..q - 1]).or_insert((p[q - 1], k));
                if p[q - 1] > e.0 {
                    *e = (p[q - 1], k);
                }
            }
            best
        })
        .collect();

    let exchanges = |tuple: &[usize], q: usize| -> bool {
        tuple.iter().any(|&g| {
            let u = &gens[g];
            (q + 1..=n).any(|j| u.exp(j) > 0 && ideal.contains(&u.exchange(q, j).unwrap()))
        })
    };

    let failure = (0..tuples.len()).into_par_iter().find_map_first(|k| {
        let p = &products[k];
        (1..n).find_map(|q| {
            let &(best, witness) = prefix_best[q - 1].get(&p[..q - 1])?;
            if best <= p[q - 1] || exchanges(&tuples[k], q) {
                return None;
            }
            let names = |t: &[usize]| t.iter().map(|&i| gens[i].to_string()).collect();
            Some(ExchangeFailure { q, standard: names(&tuples[k]), witness: names(&tuples[witness]) })
        })
    });
    Ok(ExchangeReport {
        holds: failure.is_none(),
        tuple_size: size,
        standard_monomials: tuples.len(),
        counterexample: failure,
    })
}

pub fn verify_l_exchange(spec: &CBounded, size: usize) -> Result<ExchangeReport> {
    verify_l_exchange_ideal(&spec.generators(), size)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReesRelation {
    /// `t_u t_v - t_{u'} t_{v'}` with `(u', v') = sort(u, v)`.
    QuadraticSorting { u: Monomial, v: Monomial, u_sorted: Monomial, v_sorted: Monomial },
    /// `x_i t_u - x_j t_v` with `i < j` and `x_i u = x_j v`.
    LinearExchange { i: usize, j: usize, u: Monomial, v: Monomial },
}

/// Flat JSON form `{kind, lhs, rhs}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub kind: String,
    pub lhs: String,
    pub rhs: String,
}

impl ReesRelation {
    pub fn record(&self) -> RelationRecord {
        match self {
            ReesRelation::QuadraticSorting { u, v, u_sorted, v_sorted } => RelationRecord {
                kind: "quadratic-sorting".into(),
                lhs: format!("t[{u}]*t[{v}]"),
                rhs: format!("t[{u_sorted}]*t[{v_sorted}]"),
            },
            ReesRelation::LinearExchange { i, j, u, v } => RelationRecord {
                kind: "linear-exchange".into(),
                lhs: format!("x{i}*t[{u}]"),
                rhs: format!("x{j}*t[{v}]"),
            },
        }
    }

    /// Both sides multiply out to the same monomial.
    pub fn is_balanced(&self) -> bool {
        match self {
            ReesRelation::QuadraticSorting { u, v, u_sorted, v_sorted } => u.mul(v) == u_sorted.mul(v_sorted),
            ReesRelation::LinearExchange { i, j, u, v } => {
                let n = u.n();
                Monomial::var(n, *i).mul(u) == Monomial::var(n, *j).mul(v)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesRelations {
    pub quadratic: Vec<ReesRelation>,
    /// For each `(i, u)`, the largest `j > i` with `x_i u / x_j ∈ G(I)`.
    pub linear: Vec<ReesRelation>,
    /// Linear relations under the word-for-word condition `x_i v / x_j ∈ G(I)` with `j` largest.
    pub linear_literal: Vec<ReesRelation>,
    /// Symmetric difference of `linear` and `linear_literal`.
    pub divergent: Vec<ReesRelation>,
}

pub fn quadratic_relations(ideal: &MonomialIdeal) -> Vec<ReesRelation> {
    let gens = ideal.gens();
    let m = gens.len();
    (0..m)
        .into_par_iter()
        .flat_map_iter(|a| {
            (a + 1..m).filter_map(move |b| {
                let (u, v) = (&gens[a], &gens[b]);
                let (p, q) = sort_pair(u, v).ok()?;
                (&p != u || &q != v).then(|| ReesRelation::QuadraticSorting {
                    u: u.clone(),
                    v: v.clone(),
                    u_sorted: p,
                    v_sorted: q,
                })
            })
        })
        .collect()
}

/// Every `x_i t_u - x_j t_v` with `i < j`, `x_i u = x_j v`, both generators.
pub fn exchange_relations_all(ideal: &MonomialIdeal) -> Vec<ReesRelation> {
    let n = ideal.n();
    let members = ideal.generator_set();
    let mut out = Vec::new();
    for u in ideal.gens() {
        for j in u.support() {
            for i in 1..j {
                let v = u.exchange(i, j).unwrap();
                if members.contains(&v) {
                    out.push(ReesRelation::LinearExchange { i, j, u: u.clone(), v });
                }
            }
        }
    }
    debug_assert!(out.iter().all(|r| matches!(r, ReesRelation::LinearExchange { u, .. } if u.n() == n)));
    out
}

fn largest_exchange(members: &HashSet<Monomial>, w: &Monomial, i: usize) -> Option<usize> {
    w.support().into_iter().rev().find(|&j| j > i && members.contains(&w.exchange(i, j).unwrap()))
}

pub fn rees_relations_ideal(ideal: &MonomialIdeal) -> ReesRelations {
    let members = ideal.generator_set();
    let n = ideal.n();
    let mut linear = Vec::new();
    for u in ideal.gens() {
        for i in 1..=n {
            if let Some(j) = largest_exchange(&members, u, i) {
                linear.push(ReesRelation::LinearExchange { i, j, u: u.clone(), v: u.exchange(i, j).unwrap() });
            }
        }
    }
    let linear_literal: Vec<ReesRelation> = exchange_relations_all(ideal)
        .into_iter()
        .filter(|r| match r {
            ReesRelation::LinearExchange { i, j, v, .. } => largest_exchange(&members, v, *i) == Some(*j),
            _ => false,
        })
        .collect();
    let a: BTreeSet<_> = linear.iter().cloned().collect();
    let b: BTreeSet<_> = linear_literal.iter().cloned().collect();
    let divergent = a.symmetric_difference(&b).cloned().collect();
    ReesRelations { quadratic: quadratic_relations(ideal), linear, linear_literal, divergent }
}

pub fn rees_relations(spec: &CBounded) -> ReesRelations {
    rees_relations_ideal(&spec.generators())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::BlockType;

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn sort_examples() {
        let u = mono("x1*x3", 4);
        assert_eq!(sort_pair(&u, &u).unwrap(), (u.clone(), u.clone()));
        let (a, b) = sort_pair(&mono("x2*x3", 4), &mono("x1*x4", 4)).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("x1*x3".into(), "x2*x4".into()));
        let (c, d) = sort_pair(&a, &b).unwrap();
        assert_eq!((c, d), (a, b));
        assert!(matches!(sort_pair(&mono("x1", 4), &mono("x1*x2", 4)), Err(Error::DegreeMismatch(1, 2))));
    }

    #[test]
    fn sortedness_examples() {
        assert!(is_sorted_tuple(&[mono("x2*x2*x4", 4)]));
        assert!(is_sorted_tuple(&[mono("x1*x3", 4), mono("x2*x4", 4)]));
        assert!(!is_sorted_tuple(&[mono("x1*x4", 4), mono("x2*x3", 4)]));
    }

    #[test]
    fn sortable_examples() {
        assert!(verify_sortable(&CBounded::new(3, 10, 5, 1)).holds);
        assert!(verify_sortable(&CBounded::new(2, 6, 4, 0)).holds);
        let rep = verify_sortable_ideal(&BlockType::new(3, 3, 0, 1).generators());
        assert!(!rep.holds);
        let f = rep.counterexample.unwrap();
        assert_eq!((f.u.as_str(), f.v.as_str()), ("x1^3", "x2^3"));
        assert_eq!(f.sorted, ("x1^2*x2".to_string(), "x1*x2^2".to_string()));
    }

    #[test]
    fn l_exchange_examples() {
        assert!(verify_l_exchange(&CBounded::new(2, 5, 3, 1), 2).unwrap().holds);
        assert!(verify_l_exchange(&CBounded::new(3, 5, 6, 0), 1).unwrap().holds);
        assert!(verify_l_exchange(&CBounded::new(1, 5, 3, 1), 1).unwrap().holds);
        assert!(verify_l_exchange(&CBounded::new(1, 5, 3, 1), 4).is_err());
    }

    #[test]
    fn l_exchange_detects_failure() {
        // (x1x3, x2x4): x2x4 vs x1x3 at q = 1, but x1*x2x4/x_j is never a generator
        let i = MonomialIdeal::from_generators(4, [mono("x1*x3", 4), mono("x2*x4", 4)]);
        let rep = verify_l_exchange_ideal(&i, 1).unwrap();
        assert!(!rep.holds);
        let f = rep.counterexample.unwrap();
        assert_eq!(f.q, 1);
        assert_eq!(f.standard, vec!["x2*x4"]);
    }

    #[test]
    fn singleton_family_has_no_relations() {
        let rel = rees_relations(&CBounded::new(1, 5, 3, 1));
        assert!(rel.quadratic.is_empty() && rel.linear.is_empty() && rel.linear_literal.is_empty());
    }

    #[test]
    fn squarefree_veronese_linear_relations() {
        let spec = CBounded::new(1, 3, 2, 0);
        let all = exchange_relations_all(&spec.generators());
        let wanted = ReesRelation::LinearExchange { i: 1, j: 2, u: mono("x2*x3", 3), v: mono("x1*x3", 3) };
        assert!(all.contains(&wanted));
        let rel = rees_relations(&spec);
        // for (i, u) = (1, x2x3) the largest exchange index is 3
        let max_j = ReesRelation::LinearExchange { i: 1, j: 3, u: mono("x2*x3", 3), v: mono("x1*x2", 3) };
        assert!(rel.linear.contains(&max_j));
        assert!(rel.linear.iter().chain(&rel.linear_literal).all(ReesRelation::is_balanced));
    }

    #[test]
    fn quadratic_relation_count_matches_pair_scan() {
        let spec = CBounded::new(1, 4, 2, 0);
        let g = spec.generators();
        // independent scan: a pair {u, v} with u >lex v is sorted iff i1 <= j1 <= i2 <= j2
        let unsorted = g
            .gens()
            .iter()
            .enumerate()
            .flat_map(|(a, u)| g.gens()[a + 1..].iter().map(move |v| (u, v)))
            .filter(|(u, v)| {
                let (x, y) = (u.to_multiset(), v.to_multiset());
                let (x, y) = (x.elems(), y.elems());
                !(x[0] <= y[0] && y[0] <= x[1] && x[1] <= y[1])
            })
            .count();
        assert_eq!(unsorted, 2);
        assert_eq!(quadratic_relations(&g).len(), unsorted);
    }

    #[test]
    fn relation_records() {
        let r = ReesRelation::LinearExchange { i: 1, j: 2, u: mono("x2*x3", 3), v: mono("x1*x3", 3) };
        let rec = r.record();
        assert_eq!(rec.kind, "linear-exchange");
        assert_eq!(rec.lhs, "x1*t[x2*x3]");
        assert_eq!(rec.rhs, "x2*t[x1*x3]");
    }
}
