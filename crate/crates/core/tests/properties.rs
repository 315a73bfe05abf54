use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use veronese::blocktype;
use veronese::families::{mu_blocktype, BlockType, CBounded};
use veronese::ideal::MonomialIdeal;
use veronese::monomial::Monomial;
use veronese::multiset::Multiset;
use veronese::oracle;
use veronese::quotients;
use veronese::sorting;
use veronese::spread;

fn spread_multiset(max_n: usize, max_d: usize, max_t: usize) -> impl Strategy<Value = (Multiset, usize)> {
    (0..=max_t, 1..=max_d, prop::collection::vec(0usize..4, 1..=max_d)).prop_map(move |(t, _, gaps)| {
        let mut elems = Vec::new();
        let mut cur = 1 + gaps[0];
        for (i, g) in gaps.iter().enumerate() {
            if i > 0 {
                cur += t + g;
            }
            elems.push(cur);
        }
        let n = (*elems.last().unwrap()).max(max_n);
        (Multiset::new(elems, n).unwrap(), t)
    })
}

fn nonempty_spec(max_n: usize, max_d: usize, max_t: usize) -> impl Strategy<Value = CBounded> {
    (1..=max_n, 1..=max_d, 1..=max_d, 0..=max_t)
        .prop_map(|(n, d, c, t)| CBounded::new(c.min(d), n, d, t))
        .prop_filter("nonempty", |s| s.is_nonempty())
}

fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..5)
        .prop_map(|rows| MonomialIdeal::from_generators(3, rows.into_iter().map(Monomial::new)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stretch_round_trip((a, t) in spread_multiset(12, 6, 3)) {
        let s = a.sigma();
        prop_assert!(s.is_t_spread(t + 1));
        prop_assert_eq!(s.tau().unwrap(), a.clone());
        prop_assert_eq!(s.block_sizes(t + 1).unwrap(), a.block_sizes(t).unwrap());
        prop_assert_eq!(a.sigma_pow(2).tau_pow(2).unwrap(), a);
    }

    #[test]
    fn generator_shift_law(s in nonempty_spec(7, 4, 2)) {
        let stretched: BTreeSet<Monomial> = s.stretched().generators().gens().iter().cloned().collect();
        let image: BTreeSet<Monomial> =
            s.generators().gens().iter().map(|u| u.to_multiset().sigma().to_monomial()).collect();
        prop_assert_eq!(stretched, image);
    }

    #[test]
    fn gap_sets_match_colons(s in nonempty_spec(7, 4, 2)) {
        let rep = quotients::verify_linear_quotients(&s);
        prop_assert!(rep.holds, "{:?}", rep.counterexample);
        for u in s.generators().gens() {
            prop_assert_eq!(quotients::set_transfer(u, &s).unwrap(),
                quotients::set_of(&u.to_multiset().sigma().to_monomial(), &s.stretched()).unwrap());
        }
    }

    #[test]
    fn betti_formula_matches_oracle(s in nonempty_spec(6, 4, 1)) {
        let gens = s.generators();
        prop_assume!(gens.len() <= 20);
        let table = oracle::betti_table(&gens).unwrap();
        prop_assert_eq!(table.totals(), quotients::betti_numbers(&s).unwrap());
        prop_assert!(table.has_linear_resolution());
        prop_assert_eq!(table.depth_quotient() + table.pd_quotient(), s.n);
    }

    #[test]
    fn height_and_cm_agree(s in nonempty_spec(6, 4, 2)) {
        let gens = s.generators();
        prop_assert_eq!(s.height().unwrap(), oracle::height_oracle(&gens).unwrap());
        prop_assume!(gens.len() <= 20);
        prop_assert_eq!(s.is_cohen_macaulay().unwrap(), oracle::is_cohen_macaulay_oracle(&gens).unwrap());
        prop_assert_eq!(s.is_gorenstein().unwrap(), oracle::is_gorenstein_oracle(&gens).unwrap());
    }

    #[test]
    fn extremes_are_lex_ends(s in nonempty_spec(10, 5, 2)) {
        let gens = s.generators();
        prop_assert_eq!(&s.min_element().unwrap(), gens.gens().first().unwrap());
        prop_assert_eq!(&s.max_element().unwrap(), gens.gens().last().unwrap());
    }

    #[test]
    fn sorting_is_canonical(s in nonempty_spec(7, 4, 1), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let gens = s.generators();
        let tuple: Vec<Monomial> = picks.iter().map(|i| i.get(gens.gens()).clone()).collect();
        let sorted = sorting::sort_tuple(&tuple).unwrap();
        prop_assert!(sorting::is_sorted_tuple(&sorted));
        let mut rev = tuple.clone();
        rev.reverse();
        prop_assert_eq!(sorting::sort_tuple(&rev).unwrap(), sorted.clone());
        let prod = |v: &[Monomial]| v.iter().fold(Monomial::one(s.n), |a, b| a.mul(b));
        prop_assert_eq!(prod(&sorted), prod(&tuple));
        prop_assert!(sorted.iter().all(|u| gens.contains(u) && gens.gens().contains(u)));
    }

    #[test]
    fn spread_rank_and_interval_model(s in nonempty_spec(12, 6, 3)) {
        let gens = s.generators();
        let graph = spread::relation_graph(&gens).unwrap();
        let ell = graph.analytic_spread();
        prop_assert_eq!(spread::exponent_rank(&gens), ell);
        let (v, comps) = spread::k_interval_model(&s).unwrap();
        prop_assert_eq!(v - comps + 1, ell);
        if s.d >= 2 && spread::spread_case(&s).unwrap() == spread::SpreadCase::Disjoint {
            prop_assert_eq!((v as i64, comps), (spread::disjoint_vertex_count(&s), s.d));
        }
    }

    #[test]
    fn blocktype_regularity_agrees(n in 3usize..=6, d in 2usize..=5, k in 2usize..6) {
        prop_assume!(k < n);
        let closed = blocktype::regularity_blocktype(n, d, k).unwrap();
        let socle = blocktype::top_socle_degree(&BlockType::new(n, d, 0, k).generators()).unwrap();
        prop_assert_eq!(closed as u32, socle);
    }

    #[test]
    fn blocktype_shift_transport(n in 1usize..=6, d in 1usize..=4, t in 0usize..=2, k in 1usize..=4) {
        prop_assume!(k <= n);
        let base = BlockType::new(n, d, 0, k);
        let shifted = BlockType::new(n + (d - 1) * t, d, t, k);
        let image: BTreeSet<Monomial> =
            base.generators().gens().iter().map(|u| u.to_multiset().sigma_pow(t).to_monomial()).collect();
        let direct: BTreeSet<Monomial> = shifted.generators().gens().iter().cloned().collect();
        prop_assert_eq!(direct, image);
        prop_assert_eq!(base.generators().len() as u128, mu_blocktype(n, d, k));
    }

    #[test]
    fn oracle_arithmetic(i in small_ideal(), j in small_ideal()) {
        let mi = i.minimalize();
        prop_assert_eq!(mi.minimalize(), mi.clone());
        prop_assert!(i.multiply(&j).equals(&j.multiply(&i)));
        let p3 = i.power(3).unwrap();
        prop_assert!(p3.equals(&i.power(1).unwrap().multiply(&i.power(2).unwrap())));
        let table = oracle::betti_table(&i).unwrap();
        let mut hist: BTreeMap<u32, u64> = BTreeMap::new();
        for g in mi.gens() {
            *hist.entry(g.degree()).or_default() += 1;
        }
        for (deg, count) in hist {
            prop_assert_eq!(table.get(0, deg), count);
        }
        prop_assert_eq!(table.depth_quotient() + table.pd_quotient(), 3);
    }
}

#[test]
fn power_sandwich_and_stabilization() {
    for n in 3..=4usize {
        for d in 2..=3usize {
            for k in 2..n {
                assert!(blocktype::power_equals_mpower(n, d, k, n as u32 - 1).unwrap());
                let j = blocktype::smallest_power_j(n, d, k).unwrap();
                for s in j..=j + 2 {
                    assert!(blocktype::power_equals_mpower(n, d, k, s).unwrap(), "n={n} d={d} k={k} s={s}");
                }
                if j > 1 {
                    assert!(!blocktype::power_equals_mpower(n, d, k, j - 1).unwrap());
                }
            }
        }
    }
}

/// The table for `(δ_min, δ_max)` holds except for `c = 1`, `d = c`, and `r = c - 1`.
#[test]
fn delta_table_exceptions() {
    for d in 2..=14usize {
        for c in 1..=d {
            let p = spread::delta_profile(d, c).unwrap();
            let exceptional = c == 1 || d == c || (p.r < c && p.r + 1 == c);
            let table = spread::delta_lemma_table(d, c);
            assert_eq!((p.delta_min, p.delta_max) != table, exceptional, "d={d} c={c} r={}", p.r);
        }
    }
}

#[test]
fn blocktype_sum_form() {
    for n in 1..=5usize {
        for d in 1..=4usize {
            for k in 1..=n {
                let mut sum = MonomialIdeal::zero(n);
                for subset in (0u32..1 << n).filter(|m| m.count_ones() as usize == k) {
                    let vars = (1..=n).filter(|i| subset >> (i - 1) & 1 == 1).map(|i| Monomial::var(n, i));
                    let gens = MonomialIdeal::from_generators(n, vars).power(d as u32).unwrap();
                    sum = MonomialIdeal::from_generators(n, sum.gens().iter().chain(gens.gens()).cloned());
                }
                assert!(sum.equals(&BlockType::new(n, d, 0, k).generators()), "n={n} d={d} k={k}");
            }
        }
    }
}

#[test]
fn count_law_under_stretching() {
    for s in veronese::cli::suites::cbounded_grid(&veronese::cli::Grid {
        max_n: 8,
        max_d: 4,
        max_t: 2,
        ..Default::default()
    }) {
        assert_eq!(s.generators().len(), s.stretched().generators().len(), "{s}");
        let base = s.unstretched().unwrap();
        assert_eq!(quotients::betti_numbers(&s).unwrap(), quotients::betti_numbers(&base).unwrap());
    }
}

#[test]
fn linear_relation_readings() {
    let s = CBounded::new(2, 5, 3, 1);
    let rel = sorting::rees_relations(&s);
    assert!(rel.quadratic.iter().chain(&rel.linear).chain(&rel.linear_literal).all(|r| r.is_balanced()));
    let lin: BTreeSet<_> = rel.linear.iter().cloned().collect();
    let lit: BTreeSet<_> = rel.linear_literal.iter().cloned().collect();
    let div: BTreeSet<_> = lin.symmetric_difference(&lit).cloned().collect();
    assert_eq!(div, rel.divergent.iter().cloned().collect());
}
