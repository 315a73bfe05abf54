//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, then a single assertion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use veronese::blocktype;
use veronese::cli::suites::{blocktype_grid, cbounded_grid, Grid};
use veronese::families::CBounded;
use veronese::monomial::Monomial;
use veronese::oracle;
use veronese::quotients;
use veronese::sorting;
use veronese::spread::{self, SpreadCase};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn grid4() -> Vec<CBounded> {
    cbounded_grid(&Grid { max_n: 8, max_d: 5, max_t: 2, ..Grid::default() })
}

fn c1_worked_spreads() -> Check {
    for ((c, n, d, t), ell) in [((3, 12, 4, 3), 7), ((3, 16, 6, 2), 16), ((2, 5, 3, 1), 5), ((2, 9, 6, 1), 7)] {
        let start = Instant::now();
        let s = CBounded::new(c, n, d, t);
        let graph = spread::analytic_spread_graph(&s.generators(), true).map_err(|e| e.to_string())?;
        let (_, closed) = spread::closed_form_value(&s).map_err(|e| e.to_string())?;
        ensure(graph == ell && closed == ell as i64, || format!("{s}: graph {graph}, closed {closed}, want {ell}"))?;
        within(start, Duration::from_secs(1), &s.to_string())?;
    }
    Ok("4 examples, graph and closed form".into())
}

fn c2_relation_graph() -> Check {
    let start = Instant::now();
    let g = spread::relation_graph(&CBounded::new(3, 12, 4, 3).generators()).map_err(|e| e.to_string())?;
    let want = vec![vec![1, 2], vec![4, 5, 6], vec![7, 8, 9], vec![11, 12]];
    ensure(g.vertex_count() == 10, || format!("{} vertices", g.vertex_count()))?;
    ensure(g.components == want, || format!("components {:?}", g.components))?;
    within(start, Duration::from_secs(1), "graph")?;
    Ok("10 vertices, components [1,2] [4,6] [7,9] [11,12]".into())
}

fn c3_sets() -> Check {
    let u = Monomial::parse("x1*x2*x3*x6*x10", Some(10)).unwrap();
    let a: Vec<usize> =
        quotients::set_of(&u, &CBounded::new(3, 10, 5, 1)).map_err(|e| e.to_string())?.into_iter().collect();
    ensure(a == [5, 7, 8, 9], || format!("set = {a:?}"))?;
    let v = Monomial::parse("x1^3*x3^2*x5", Some(5)).unwrap();
    let b: Vec<usize> =
        quotients::set_of(&v, &CBounded::new(3, 5, 6, 0)).map_err(|e| e.to_string())?.into_iter().collect();
    ensure(b == [2, 3, 4], || format!("set = {b:?}"))?;
    Ok("{5,7,8,9} and {2,3,4}".into())
}

fn c4_linear_quotients() -> Check {
    let start = Instant::now();
    let grid = grid4();
    for s in &grid {
        let rep = quotients::verify_linear_quotients(s);
        ensure(rep.holds, || format!("{s}: {:?}", rep.counterexample))?;
    }
    within(start, Duration::from_secs(120), "grid")?;
    Ok(format!("{} specs", grid.len()))
}

fn c5_betti_shift() -> Check {
    let mut oracle_checked = 0;
    for s in grid4() {
        let betti = quotients::betti_numbers(&s).map_err(|e| e.to_string())?;
        let base = s.unstretched().ok_or_else(|| format!("{s}: no t = 0 counterpart"))?;
        let shifted = quotients::betti_numbers(&base).map_err(|e| e.to_string())?;
        ensure(betti == shifted, || format!("{s}: {betti:?} vs {base}: {shifted:?}"))?;
        let gens = s.generators();
        if gens.len() <= 25 {
            let table = oracle::betti_table_with_budget(&gens, 1 << 24).map_err(|e| format!("{s}: {e}"))?;
            ensure(table.totals() == betti, || format!("{s}: oracle {:?}, formula {betti:?}", table.totals()))?;
            oracle_checked += 1;
        }
    }
    Ok(format!("shift invariance on the grid, {oracle_checked} oracle tables"))
}

fn c6_height() -> Check {
    let grid = cbounded_grid(&Grid { max_n: 9, max_d: 9, max_t: 3, ..Grid::default() });
    for s in &grid {
        let closed = s.height().map_err(|e| e.to_string())?;
        let found = oracle::height_oracle(&s.generators()).map_err(|e| e.to_string())?;
        ensure(closed == found, || format!("{s}: closed {closed}, oracle {found}"))?;
    }
    Ok(format!("{} specs with n <= 9", grid.len()))
}

fn c7_sortable_exchange() -> Check {
    let start = Instant::now();
    let grid = grid4();
    for s in &grid {
        let rep = sorting::verify_sortable(s);
        ensure(rep.holds, || format!("{s}: {:?}", rep.counterexample))?;
        let ex = sorting::verify_l_exchange(s, 2).map_err(|e| e.to_string())?;
        ensure(ex.holds, || format!("{s}: {:?}", ex.counterexample))?;
    }
    within(start, Duration::from_secs(300), "grid")?;
    Ok(format!("{} specs, N = 2", grid.len()))
}

fn c8_closed_vs_graph() -> Check {
    let grid = cbounded_grid(&Grid { max_n: 12, max_d: 6, max_t: 3, ..Grid::default() });
    let (mut agree, mut literal_off) = (0, 0);
    for s in grid.iter().filter(|s| s.d >= 2) {
        let r = spread::analytic_spread_closed(s).map_err(|e| e.to_string())?;
        let rank = spread::exponent_rank(&s.generators());
        ensure(rank == r.graph, || format!("{s}: exponent rank {rank}, graph {}", r.graph))?;
        match (r.case, r.discrepancy.is_some()) {
            (_, false) => agree += 1,
            (SpreadCase::BoundaryPartial, true) => literal_off += 1,
            (case, true) => return Err(format!("{s}: case {} closed {} graph {}", case.tag(), r.closed_form, r.graph)),
        }
    }
    let ex = spread::analytic_spread_closed(&CBounded::new(2, 7, 5, 1)).map_err(|e| e.to_string())?;
    ensure(ex.value == 3, || format!("I_2,(7,5,1): {}", ex.value))?;
    Ok(format!("{agree} agree, {literal_off} literal-nu discrepancies reported, graph shipped"))
}

fn c9_blocktype_regularity() -> Check {
    let start = Instant::now();
    let grid = blocktype_grid(&Grid { max_n: 6, max_d: 6, ..Grid::default() }, 2);
    for b in &grid {
        let closed = blocktype::regularity_blocktype(b.n, b.d, b.k).map_err(|e| e.to_string())?;
        let socle = blocktype::top_socle_degree(&b.generators()).map_err(|e| e.to_string())? as usize;
        ensure(closed == socle, || format!("{b}: closed {closed}, socle {socle}"))?;
    }
    within(start, Duration::from_secs(120), "grid")?;
    Ok(format!("{} specs", grid.len()))
}

fn c10_power_identity() -> Check {
    let grid = blocktype_grid(&Grid { max_n: 5, max_d: 4, ..Grid::default() }, 1);
    for b in &grid {
        let eq = blocktype::power_equals_mpower(b.n, b.d, b.k, b.n as u32 - 1).map_err(|e| e.to_string())?;
        ensure(eq, || format!("{b}: I^(n-1) != m^((n-1)d)"))?;
    }
    Ok(format!("{} specs", grid.len()))
}

fn c11_fiber_cone() -> Check {
    let a = blocktype::fiber_cone_regularity(4, 2, 2).map_err(|e| e.to_string())?;
    ensure(a == 2, || format!("n=4,d=2,k=2: {a}"))?;
    let j = blocktype::smallest_power_j(3, 3, 2).map_err(|e| e.to_string())?;
    let b = blocktype::fiber_cone_regularity(3, 3, 2).map_err(|e| e.to_string())?;
    ensure(j == 2 && b == 2, || format!("n=3,d=3,k=2: j={j}, reg={b}"))?;
    Ok("reg 2 and reg 2 from j = 2".into())
}

fn c12_linear_powers() -> Check {
    let mut checked = Vec::new();
    let mut specs = vec![CBounded::new(1, 4, 2, 0), CBounded::new(2, 4, 2, 0)];
    specs.extend(cbounded_grid(&Grid { max_n: 4, max_d: 3, max_t: 1, ..Grid::default() }));
    for s in specs {
        for e in 1..=2 {
            let p = s.generators().power(e).map_err(|e| e.to_string())?;
            match oracle::betti_table(&p) {
                Ok(t) => {
                    ensure(t.has_linear_resolution(), || format!("{s}^{e} has a nonlinear resolution"))?;
                    checked.push((s, e));
                }
                Err(veronese::Error::BudgetExceeded { .. }) => {}
                Err(err) => return Err(err.to_string()),
            }
        }
    }
    for required in [CBounded::new(1, 4, 2, 0), CBounded::new(2, 4, 2, 0)] {
        ensure(checked.contains(&(required, 2)), || format!("{required}^2 was not checked"))?;
    }
    Ok(format!("{} powers", checked.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("1 analytic spread, worked examples", c1_worked_spreads),
        ("2 relation graph structure", c2_relation_graph),
        ("3 set(u) examples", c3_sets),
        ("4 linear quotients", c4_linear_quotients),
        ("5 Betti invariance under shift", c5_betti_shift),
        ("6 height", c6_height),
        ("7 sortability and l-exchange", c7_sortable_exchange),
        ("8 closed form vs graph", c8_closed_vs_graph),
        ("9 block-type regularity", c9_blocktype_regularity),
        ("10 power identity", c10_power_identity),
        ("11 fiber-cone regularity", c11_fiber_cone),
        ("12 linear resolution of powers", c12_linear_powers),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(msg) => println!("PASS  criterion {name}: {msg} ({:.2?})", start.elapsed()),
            Err(msg) => {
                println!("FAIL  criterion {name}: {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
