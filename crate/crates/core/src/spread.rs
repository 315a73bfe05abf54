//! Analytic spread through the linear relation graph, and its closed form for the
//! c-bounded family.
//!
//! For an equigenerated monomial ideal with linear relations whose linear relation
//! graph has `r` vertices and `s` components, `ℓ(I) = r - s + 1`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::CBounded;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::oracle::linalg;
use crate::quotients::{verify_linear_quotients_ideal, Interval};

/// Linear relation graph: `{i, j}` is an edge iff `x_i u = x_j v` for generators `u, v`.
/// Vertices are the endpoints of edges; indices without an edge are not vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationGraph {
    pub n: usize,
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
    /// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
}

impl RelationGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// `r - s + 1`; the empty graph gives 1.
    pub fn analytic_spread(&self) -> usize {
        self.vertex_count() - self.component_count() + 1
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

pub fn relation_graph(ideal: &MonomialIdeal) -> Result<RelationGraph> {
    if !ideal.is_empty() && !ideal.is_equigenerated() {
        return Err(Error::NotEquigenerated);
    }
    let n = ideal.n();
    let members = ideal.generator_set();
    let edges: BTreeSet<(usize, usize)> = ideal
        .gens()
        .par_iter()
        .flat_map_iter(|u| {
            let members = &members;
            u.support().into_iter().flat_map(move |j| {
                (1..=n)
                    .filter(move |&i| i != j && members.contains(&u.exchange(i, j).unwrap()))
                    .map(move |i| (i.min(j), i.max(j)))
            })
        })
        .collect();
    Ok(graph_from_edges(n, edges))
}

fn graph_from_edges(n: usize, edges: BTreeSet<(usize, usize)>) -> RelationGraph {
    let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut uf = UnionFind::<usize>::new(n + 1);
    for &(a, b) in &edges {
        uf.union(a, b);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &vertices {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort();
    RelationGraph { n, vertices, edges, components }
}

/// Equigenerated ideal whose first syzygies are linear: any two generators are joined
/// by a chain of one-variable exchanges staying below their lcm.
///
/// Linear quotients in lex order imply a linear resolution, so that is tried first.
pub fn has_linear_relations(ideal: &MonomialIdeal) -> bool {
    if !ideal.is_equigenerated() {
        return false;
    }
    verify_linear_quotients_ideal(ideal).holds || pairwise_exchange_paths(ideal)
}

/// The pairwise path criterion, without shortcuts.
pub fn pairwise_exchange_paths(ideal: &MonomialIdeal) -> bool {
    let gens = ideal.gens();
    let members = ideal.generator_set();
    let n = ideal.n();
    (0..gens.len()).into_par_iter().all(|a| {
        (a + 1..gens.len()).all(|b| {
            let bound = gens[a].lcm(&gens[b]);
            let mut seen: HashSet<Monomial> = HashSet::from([gens[a].clone()]);
            let mut queue = VecDeque::from([gens[a].clone()]);
            while let Some(w) = queue.pop_front() {
                if w == gens[b] {
                    return true;
                }
                for j in w.support() {
                    for i in 1..=n {
                        if i == j {
                            continue;
                        }
                        let next = w.exchange(i, j).unwrap();
                        if next.divides(&bound) && members.contains(&next) && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
            false
        })
    })
}

/// `ℓ(I) = |V(Γ)| - #components + 1`. With `require_linear`, the ideal is first
/// checked to have linear relations.
pub fn analytic_spread_graph(ideal: &MonomialIdeal, require_linear: bool) -> Result<usize> {
    if ideal.is_empty() {
        return Err(Error::Precondition("the zero ideal has no fiber cone generators".into()));
    }
    if require_linear && !has_linear_relations(ideal) {
        return Err(Error::Precondition("ideal does not have linear relations".into()));
    }
    Ok(relation_graph(ideal)?.analytic_spread())
}

/// Rank of the rational span of the generator exponent vectors.
pub fn exponent_rank(ideal: &MonomialIdeal) -> usize {
    let rows: Vec<Vec<i64>> = ideal.gens().iter().map(|g| g.exps().iter().map(|&e| e as i64).collect()).collect();
    linalg::rank(&rows)
}

/// `K_i = [α_i, a_i]`, `i = 1..d`, from the extremal elements of the cover order.
pub fn k_intervals(spec: &CBounded) -> Result<Vec<Interval>> {
    if !spec.is_nonempty() {
        return Err(Error::EmptyFamily(spec.to_string()));
    }
    Ok((1..=spec.d).map(|i| Interval::new(spec.alpha(i), spec.a(i))).collect())
}

/// Vertex and component counts of the union of complete graphs on the `K_i`,
/// counting a one-point interval as an isolated vertex.
pub fn k_interval_model(spec: &CBounded) -> Result<(usize, usize)> {
    let ks = k_intervals(spec)?;
    let mut vertices = BTreeSet::new();
    for k in &ks {
        vertices.extend(k.iter());
    }
    // intervals are increasing in both endpoints; consecutive ones merge on overlap
    let components = 1 + ks.windows(2).filter(|w| w[1].lo > w[0].hi).count();
    Ok((vertices.len(), components))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaProfile {
    pub r: usize,
    /// `δ_i = floor(i/c) - ceil((i-r)/c)` for `i = 1..d-1`.
    pub deltas: Vec<i64>,
    pub delta_min: i64,
    pub delta_max: i64,
}

pub fn delta_profile(d: usize, c: usize) -> Result<DeltaProfile> {
    if d < 2 || c < 1 {
        return Err(Error::Precondition(format!("delta profile needs d >= 2 and c >= 1, got d={d}, c={c}")));
    }
    let r = d - ((d - 1) / c) * c;
    let (ci, ri) = (c as i64, r as i64);
    let deltas: Vec<i64> = (1..d as i64).map(|i| i.div_euclid(ci) - ceil_div(i - ri, ci)).collect();
    let delta_min = *deltas.iter().min().unwrap();
    let delta_max = *deltas.iter().max().unwrap();
    Ok(DeltaProfile { r, deltas, delta_min, delta_max })
}

/// The `(δ_min, δ_max)` table: `(-1, 0)` when `r < c`, `(0, 1)` when `r = c`.
pub fn delta_lemma_table(d: usize, c: usize) -> (i64, i64) {
    let r = d - ((d - 1) / c) * c;
    if r < c {
        (-1, 0)
    } else {
        (0, 1)
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpreadCase {
    /// `a_1 < t + 1 + δ_min`: the graph has `d` components.
    Disjoint,
    /// `a_1 >= t + 1 + δ_max`: the graph is connected on `[n]`.
    Connected,
    /// `t + 1 + δ_min <= a_1 < t + 1 + δ_max`, with `r = c`.
    BoundaryFull,
    /// `t + 1 + δ_min <= a_1 < t + 1 + δ_max`, with `r < c`.
    BoundaryPartial,
}

impl SpreadCase {
    pub fn tag(&self) -> &'static str {
        match self {
            SpreadCase::Disjoint => "(i)",
            SpreadCase::Connected => "(ii)",
            SpreadCase::BoundaryFull => "(iii) r=c",
            SpreadCase::BoundaryPartial => "(iii) r<c",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadDiscrepancy {
    pub spec: CBounded,
    pub case: SpreadCase,
    pub closed_form: i64,
    pub graph: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormSpread {
    pub case: SpreadCase,
    /// Closed-form value; in the `r < c` boundary case this is the literal `ν - (r+1)k`.
    pub closed_form: i64,
    pub graph: usize,
    /// Always the graph value.
    pub value: usize,
    pub discrepancy: Option<SpreadDiscrepancy>,
}

/// Which of the three regimes the parameters fall in.
pub fn spread_case(spec: &CBounded) -> Result<SpreadCase> {
    if !spec.is_nonempty() {
        return Err(Error::EmptyFamily(spec.to_string()));
    }
    let delta = delta_profile(spec.d, spec.c)?;
    let a1 = spec.a1();
    let t1 = spec.t as i64 + 1;
    Ok(if a1 < t1 + delta.delta_min {
        SpreadCase::Disjoint
    } else if a1 >= t1 + delta.delta_max {
        SpreadCase::Connected
    } else if spec.r() == spec.c {
        SpreadCase::BoundaryFull
    } else {
        SpreadCase::BoundaryPartial
    })
}

/// `nd - d(d-1)t - k(k-1)c - 2rk`: vertex count of `∪ K_i` when the intervals are disjoint.
pub fn disjoint_vertex_count(spec: &CBounded) -> i64 {
    let (n, d, t, c) = (spec.n as i64, spec.d as i64, spec.t as i64, spec.c as i64);
    let (k, r) = (spec.floor_k() as i64, spec.r() as i64);
    n * d - d * (d - 1) * t - k * (k - 1) * c - 2 * r * k
}

/// `ν` evaluated term by term, with `a_{-1} = 0` and the interval endpoints
/// extended to every other integer index by their defining formulas.
pub fn nu_literal(spec: &CBounded) -> i64 {
    let (c, k, r) = (spec.c as i64, spec.floor_k() as i64, spec.r() as i64);
    let alpha = |i: i64| -> i64 {
        let t = spec.t as i64;
        (i - 1) * t + (i - 1).div_euclid(c) + 1
    };
    let a = |i: i64| -> i64 {
        if i == -1 {
            return 0;
        }
        let t = spec.t as i64;
        spec.a1() + (i - 1) * t + ceil_div(i - r, c)
    };
    let mut sum = 0;
    for j in 0..=k {
        for i in 0..=r + 1 {
            let idx = j * c + i;
            sum += alpha(idx) - a(idx - 1) + 1;
        }
    }
    let tail = alpha(k * c + r + 1) - a(k * c + r) + 1;
    spec.n as i64 - sum - tail
}

/// Closed-form `ℓ` evaluated in its regime; `None` for `d = 1`.
pub fn closed_form_value(spec: &CBounded) -> Result<(SpreadCase, i64)> {
    if spec.d < 2 {
        return Err(Error::Precondition("closed-form analytic spread needs d >= 2".into()));
    }
    let case = spread_case(spec)?;
    let (n, d, c) = (spec.n as i64, spec.d as i64, spec.c as i64);
    let (k, r) = (spec.floor_k() as i64, spec.r() as i64);
    let value = match case {
        SpreadCase::Disjoint => disjoint_vertex_count(spec) - d + 1,
        SpreadCase::Connected => n,
        SpreadCase::BoundaryFull => n - d / c + 1,
        SpreadCase::BoundaryPartial => nu_literal(spec) - (r + 1) * k,
    };
    Ok((case, value))
}

/// Closed form cross-checked against the relation graph. The graph value is returned.
pub fn analytic_spread_closed(spec: &CBounded) -> Result<ClosedFormSpread> {
    let (case, closed_form) = closed_form_value(spec)?;
    let graph = relation_graph(&spec.generators())?.analytic_spread();
    let discrepancy =
        (closed_form != graph as i64).then_some(SpreadDiscrepancy { spec: *spec, case, closed_form, graph });
    Ok(ClosedFormSpread { case, closed_form, graph, value: graph, discrepancy })
}

/// `lim depth S/I^s = n - ℓ(I)`.
pub fn limit_depth(spec: &CBounded) -> Result<usize> {
    if !spec.is_nonempty() {
        return Err(Error::EmptyFamily(spec.to_string()));
    }
    let ell = analytic_spread_graph(&spec.generators(), false)?;
    Ok(spec.n - ell)
}
