//! Graded Betti numbers from upper Koszul simplicial complexes.
//!
//! For a multidegree `a`, `K^a(I)` is the complex of squarefree `F ⊆ supp(a)` with
//! `x^(a - F) ∈ I`, and `β_{i,a}(I) = dim H̃_{i-1}(K^a(I); Q)`. Only multidegrees in
//! the lcm box of the generators can carry Betti numbers.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Default cap on the number of multidegrees visited in the lcm box.
pub const DEFAULT_BUDGET: u128 = 200_000;

/// `β_{i,j}` of an ideal `I` (not of `S/I`): row `i = 0` counts minimal generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    n: usize,
    #[serde(with = "entry_list")]
    entries: BTreeMap<(usize, u32), u64>,
}

mod entry_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        i: usize,
        j: u32,
        rank: u64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, u32), u64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(&(i, j), &rank)| Entry { i, j, rank }).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, u32), u64>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?.into_iter().map(|e| ((e.i, e.j), e.rank)).collect())
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Total Betti numbers `β_i = Σ_j β_{i,j}`.
    pub fn totals(&self) -> Vec<u64> {
        let len = self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for (&(i, _), &v) in &self.entries {
            out[i] += v;
        }
        out
    }

    /// Projective dimension of `I`; `None` for the zero ideal.
    pub fn pd(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `pd(S/I) = pd(I) + 1`, and 0 for the zero ideal.
    pub fn pd_quotient(&self) -> usize {
        self.pd().map_or(0, |p| p + 1)
    }

    /// Auslander–Buchsbaum: `depth(S/I) = n - pd(S/I)`.
    pub fn depth_quotient(&self) -> usize {
        self.n - self.pd_quotient()
    }

    /// `reg(I) = max{j - i : β_{i,j} ≠ 0}`.
    pub fn reg(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, j)| j - i as u32).max()
    }

    /// `β_{i,j} = 0` unless `j = d + i`.
    pub fn has_linear_resolution(&self) -> bool {
        let Some(d) = self.entries.keys().filter(|k| k.0 == 0).map(|k| k.1).min() else {
            return true;
        };
        self.entries.keys().all(|&(i, j)| j == d + i as u32)
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn box_volume(ideal: &MonomialIdeal) -> u128 {
    ideal.lcm().exps().iter().map(|&e| e as u128 + 1).product()
}

pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    betti_table_with_budget(ideal, DEFAULT_BUDGET)
}

pub fn betti_table_with_budget(ideal: &MonomialIdeal, budget: u128) -> Result<BettiTable> {
    let ideal = ideal.minimalize();
    let n = ideal.n();
    if ideal.is_empty() {
        return Ok(BettiTable { n, entries: BTreeMap::new() });
    }
    let volume = box_volume(&ideal);
    if volume > budget {
        return Err(Error::BudgetExceeded { volume, budget });
    }
    let top: Vec<u32> = ideal.lcm().exps().to_vec();
    let gens: Vec<Vec<u32>> = ideal.gens().iter().map(|g| g.exps().to_vec()).collect();

    let partial: Vec<BTreeMap<(usize, u32), u64>> = (0..volume as u64)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, idx| {
            let a = decode(idx, &top);
            for (k, dim) in multidegree_homology(&a, &gens) {
                // H̃_{k} contributes to β_{k+1}
                let i = (k + 1) as usize;
                *acc.entry((i, a.iter().sum())).or_insert(0) += dim;
            }
            acc
        })
        .collect();

    let mut entries = BTreeMap::new();
    for m in partial {
        for (k, v) in m {
            *entries.entry(k).or_insert(0) += v;
        }
    }
    Ok(BettiTable { n, entries })
}

fn decode(mut idx: u64, top: &[u32]) -> Vec<u32> {
    top.iter()
        .map(|&e| {
            let base = e as u64 + 1;
            let v = idx % base;
            idx /= base;
            v as u32
        })
        .collect()
}

fn in_ideal(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

/// Nonzero reduced homology dimensions `(k, dim H̃_k)` of `K^a(I)`.
fn multidegree_homology(a: &[u32], gens: &[Vec<u32>]) -> Vec<(i32, u64)> {
    if !in_ideal(gens, a) {
        return Vec::new();
    }
    let supp: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0).collect();
    let s = supp.len();
    let mut scratch = a.to_vec();
    let mut faces: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << s) {
        for (b, &v) in supp.iter().enumerate() {
            scratch[v] = a[v] - ((mask >> b) & 1);
        }
        if in_ideal(gens, &scratch) {
            faces.push(mask);
        }
    }
    let complex = SimplicialComplex::from_faces(faces);
    if complex.is_cone() {
        return Vec::new();
    }
    complex.reduced_homology()
}

/// A downward-closed family of vertex subsets, stored as bitmasks.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<u32>>,
    index: HashMap<u32, usize>,
}

impl SimplicialComplex {
    pub fn from_faces(mut faces: Vec<u32>) -> Self {
        faces.sort_unstable_by_key(|f| (f.count_ones(), *f));
        faces.dedup();
        let top = faces.last().map_or(0, |f| f.count_ones() as usize);
        let mut by_dim = vec![Vec::new(); top + 1];
        let mut index = HashMap::with_capacity(faces.len());
        for f in faces {
            let bucket = &mut by_dim[f.count_ones() as usize];
            index.insert(f, bucket.len());
            bucket.push(f);
        }
        debug_assert!(index
            .keys()
            .all(|&f| (0..32).all(|b| f & (1 << b) == 0 || index.contains_key(&(f & !(1 << b))))));
        SimplicialComplex { by_dim, index }
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Some vertex `v` with `F ∪ {v}` a face for every face `F`; such complexes are acyclic.
    pub fn is_cone(&self) -> bool {
        let Some(vertices) = self.by_dim.get(1) else { return false };
        vertices.iter().any(|&v| self.index.keys().all(|&f| self.index.contains_key(&(f | v))))
    }

    /// `(k, dim H̃_k)` for each nonzero reduced homology group, `k >= -1`.
    pub fn reduced_homology(&self) -> Vec<(i32, u64)> {
        if self.is_empty() {
            return Vec::new();
        }
        // by_dim[m] holds faces with m vertices, i.e. chain group C_{m-1}
        let sizes: Vec<usize> = self.by_dim.iter().map(Vec::len).collect();
        let ranks: Vec<usize> = (0..self.by_dim.len()).map(|m| self.boundary_rank(m)).collect();
        let mut out = Vec::new();
        for m in 0..self.by_dim.len() {
            let next = ranks.get(m + 1).copied().unwrap_or(0);
            assert!(ranks[m] + next <= sizes[m], "boundary ranks exceed chain dimension");
            let dim = sizes[m] - ranks[m] - next;
            if dim > 0 {
                out.push((m as i32 - 1, dim as u64));
            }
        }
        out
    }

    /// Rank of the boundary map out of faces with `m` vertices.
    fn boundary_rank(&self, m: usize) -> usize {
        if m == 0 || self.by_dim[m].is_empty() {
            return 0;
        }
        let targets = self.by_dim[m - 1].len();
        let rows: Vec<Vec<i64>> = self.by_dim[m]
            .iter()
            .map(|&f| {
                let mut row = vec![0i64; targets];
                let mut sign = 1;
                for b in 0..32 {
                    if f & (1 << b) != 0 {
                        row[self.index[&(f & !(1 << b))]] = sign;
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        linalg::rank(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().map(|g| Monomial::parse(g, Some(n)).unwrap()))
    }

    #[test]
    fn triangle_ideal() {
        let b = betti_table(&ideal(3, &["x1*x2", "x1*x3", "x2*x3"])).unwrap();
        assert_eq!(b.get(0, 2), 3);
        assert_eq!(b.get(1, 3), 2);
        assert_eq!(b.totals(), vec![3, 2]);
        assert!(b.has_linear_resolution());
    }

    #[test]
    fn principal_ideal() {
        let b = betti_table(&ideal(3, &["x1^2*x3"])).unwrap();
        assert_eq!(b.totals(), vec![1]);
        assert_eq!(b.get(0, 3), 1);
    }

    #[test]
    fn complete_intersection_is_koszul() {
        // (x1^d..xn^d): β_i = C(n, i+1) in degree (i+1)d
        for (n, d) in [(3usize, 2u32), (4, 3)] {
            let gens =
                (1..=n).map(|i| Monomial::var(n, i)).map(|v| Monomial::new(v.exps().iter().map(|e| e * d).collect()));
            let b = betti_table(&MonomialIdeal::from_generators(n, gens)).unwrap();
            for i in 0..n {
                let expected = num_integer::binomial(n as u64, i as u64 + 1);
                assert_eq!(b.get(i, (i as u32 + 1) * d), expected);
                assert_eq!(b.totals()[i], expected);
            }
        }
    }

    #[test]
    fn complete_intersection_quotient() {
        let b = betti_table(&ideal(2, &["x1^2", "x2^2"])).unwrap();
        assert_eq!(b.reg(), Some(3));
        assert_eq!(b.reg().unwrap() - 1, 2);
        assert_eq!(b.depth_quotient(), 0);
        assert_eq!(b.pd_quotient() + b.depth_quotient(), 2);
    }

    #[test]
    fn budget_guard() {
        let i = ideal(2, &["x1^9", "x2^9"]);
        assert!(matches!(betti_table_with_budget(&i, 50), Err(Error::BudgetExceeded { volume: 100, budget: 50 })));
    }

    #[test]
    fn reduced_homology_of_small_complexes() {
        // two points: H̃_0 = 1
        let c = SimplicialComplex::from_faces(vec![0, 0b01, 0b10]);
        assert_eq!(c.reduced_homology(), vec![(0, 1)]);
        // hollow triangle: H̃_1 = 1
        let c = SimplicialComplex::from_faces(vec![0, 1, 2, 4, 3, 5, 6]);
        assert_eq!(c.reduced_homology(), vec![(1, 1)]);
        // {∅}: H̃_{-1} = 1
        assert_eq!(SimplicialComplex::from_faces(vec![0]).reduced_homology(), vec![(-1, 1)]);
        // full triangle is a cone
        assert!(SimplicialComplex::from_faces((0..8).collect()).is_cone());
    }

    #[test]
    fn json_round_trip() {
        let b = betti_table(&ideal(3, &["x1*x2", "x1*x3", "x2*x3"])).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<BettiTable>(&s).unwrap(), b);
    }
}
