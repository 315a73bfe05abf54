//! Named verification suites run over finite parameter grids.

use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::{Discrepancy, RunReport, Skip};
use crate::blocktype;
use crate::error::{Error, Result};
use crate::families::{BlockType, CBounded};
use crate::oracle;
use crate::quotients;
use crate::sorting;
use crate::spread::{self, SpreadCase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LinearQuotients,
    Betti,
    Height,
    CohenMacaulay,
    Sortable,
    Exchange,
    Spread,
    BlocktypeReg,
    Power,
    Stabilization,
    FiberCone,
    LinearPowers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub max_n: usize,
    pub max_d: usize,
    pub max_c: Option<usize>,
    pub max_t: usize,
    /// Oracle cross-checks only for families with at most this many generators.
    pub max_gens: usize,
    pub tuple: usize,
    pub max_s: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { max_n: 6, max_d: 4, max_c: None, max_t: 2, max_gens: 25, tuple: 2, max_s: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Disagreement that is recorded but does not affect a shipped value.
    Reported,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub point: Value,
    pub status: Status,
    pub detail: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub points: usize,
    pub passed: usize,
    pub failed: usize,
    pub reported: usize,
    pub skipped: usize,
    pub first_failure: Option<Value>,
    pub results: Vec<PointResult>,
}

impl SuiteSummary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Fold into a report; per-point results are included when `detailed`.
    pub fn into_report(self, report: &mut RunReport, detailed: bool) {
        use super::report::Method;
        report.push("suite", self.suite, Method::Oracle);
        report.push("points", self.points, Method::Oracle);
        report.push("passed", self.passed, Method::Oracle);
        report.push("failed", self.failed, Method::Oracle);
        report.push("reported", self.reported, Method::Oracle);
        report.push("skipped", self.skipped, Method::Oracle);
        report.push("first_failure", &self.first_failure, Method::Oracle);
        for r in &self.results {
            report.discrepancies.extend(r.discrepancies.iter().cloned());
            if r.status == Status::Skipped {
                report.skipped.push(Skip { point: r.point.clone(), reason: r.detail.to_string() });
            }
        }
        if detailed {
            report.push("results", &self.results, Method::Oracle);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Point {
    CBounded(CBounded),
    BlockType(BlockType),
}

impl Point {
    fn to_json(self) -> Value {
        match self {
            Point::CBounded(s) => json!({"c": s.c, "n": s.n, "d": s.d, "t": s.t}),
            Point::BlockType(s) => json!({"n": s.n, "d": s.d, "t": s.t, "k": s.k}),
        }
    }
}

/// Nonempty c-bounded specs with `c <= d`.
pub fn cbounded_grid(grid: &Grid) -> Vec<CBounded> {
    let mut out = Vec::new();
    for n in 1..=grid.max_n {
        for d in 1..=grid.max_d {
            for c in 1..=d.min(grid.max_c.unwrap_or(d)) {
                for t in 0..=grid.max_t {
                    let s = CBounded::new(c, n, d, t);
                    if s.is_nonempty() {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// `t = 0` block-type specs with `1 < k < n` and `min_d <= d`.
pub fn blocktype_grid(grid: &Grid, min_d: usize) -> Vec<BlockType> {
    let mut out = Vec::new();
    for n in 3..=grid.max_n {
        for d in min_d..=grid.max_d {
            for k in 2..n {
                out.push(BlockType::new(n, d, 0, k));
            }
        }
    }
    out
}

fn points(suite: Suite, grid: &Grid) -> Vec<Point> {
    match suite {
        Suite::BlocktypeReg | Suite::Stabilization | Suite::FiberCone => {
            blocktype_grid(grid, 2).into_iter().map(Point::BlockType).collect()
        }
        Suite::Power => blocktype_grid(grid, 1).into_iter().map(Point::BlockType).collect(),
        _ => cbounded_grid(grid).into_iter().map(Point::CBounded).collect(),
    }
}

fn pass(point: Value, detail: Value) -> PointResult {
    PointResult { point, status: Status::Pass, detail, discrepancies: Vec::new() }
}

fn fail(point: Value, quantity: &str, expected: Value, found: Value, note: &str) -> PointResult {
    PointResult {
        point: point.clone(),
        status: Status::Fail,
        detail: json!({"expected": expected, "found": found}),
        discrepancies: vec![Discrepancy { quantity: quantity.into(), point, expected, found, note: note.into() }],
    }
}

fn skip(point: Value, reason: String) -> PointResult {
    PointResult { point, status: Status::Skipped, detail: Value::String(reason), discrepancies: Vec::new() }
}

fn expect_eq<T: Serialize + PartialEq>(
    point: &Value,
    quantity: &str,
    expected: T,
    found: T,
    detail: Value,
) -> PointResult {
    if expected == found {
        pass(point.clone(), detail)
    } else {
        fail(point.clone(), quantity, json!(expected), json!(found), "")
    }
}

fn check_point(suite: Suite, point: Point, grid: &Grid) -> Result<PointResult> {
    let pj = point.to_json();
    match (suite, point) {
        (Suite::LinearQuotients, Point::CBounded(s)) => {
            let rep = quotients::verify_linear_quotients(&s);
            Ok(if rep.holds {
                pass(pj, json!({"generators": rep.generators}))
            } else {
                fail(pj, "linear-quotients", json!(true), json!(rep.counterexample), "")
            })
        }
        (Suite::Betti, Point::CBounded(s)) => {
            let formula = quotients::betti_numbers(&s)?;
            if let Some(base) = s.unstretched() {
                let shifted = quotients::betti_numbers(&base)?;
                if shifted != formula {
                    return Ok(fail(pj, "betti-shift", json!(shifted), json!(formula), "t = 0 counterpart differs"));
                }
            }
            let gens = s.generators();
            if gens.len() > grid.max_gens {
                return Ok(pass(pj, json!({"betti": formula, "oracle": "not run"})));
            }
            match oracle::betti_table(&gens) {
                Ok(table) => Ok(expect_eq(&pj, "betti", formula.clone(), table.totals(), json!({"betti": formula}))),
                Err(Error::BudgetExceeded { volume, .. }) => {
                    Ok(pass(pj, json!({"betti": formula, "oracle": format!("box volume {volume} over budget")})))
                }
                Err(e) => Err(e),
            }
        }
        (Suite::Height, Point::CBounded(s)) => {
            let closed = s.height()?;
            let found = oracle::height_oracle(&s.generators())?;
            Ok(expect_eq(&pj, "height", closed, found, json!({"height": closed})))
        }
        (Suite::CohenMacaulay, Point::CBounded(s)) => {
            let gens = s.generators();
            if gens.len() > grid.max_gens {
                return Ok(skip(pj, format!("{} generators > {}", gens.len(), grid.max_gens)));
            }
            let table = match oracle::betti_table(&gens) {
                Ok(t) => t,
                Err(Error::BudgetExceeded { volume, .. }) => {
                    return Ok(skip(pj, format!("box volume {volume} over budget")))
                }
                Err(e) => return Err(e),
            };
            let ht = oracle::height_oracle(&gens)?;
            let cm = table.pd_quotient() == ht;
            let gor = cm && table.totals().last().copied().unwrap_or(1) == 1;
            let closed = (s.is_cohen_macaulay()?, s.is_gorenstein()?);
            Ok(expect_eq(&pj, "cohen-macaulay/gorenstein", closed, (cm, gor), json!({"cm": cm, "gorenstein": gor})))
        }
        (Suite::Sortable, Point::CBounded(s)) => {
            let rep = sorting::verify_sortable(&s);
            Ok(if rep.holds {
                pass(pj, json!({"pairs": rep.pairs_checked}))
            } else {
                fail(pj, "sortable", json!(true), json!(rep.counterexample), "")
            })
        }
        (Suite::Exchange, Point::CBounded(s)) => {
            let rep = sorting::verify_l_exchange(&s, grid.tuple)?;
            Ok(if rep.holds {
                pass(pj, json!({"standard_monomials": rep.standard_monomials}))
            } else {
                fail(pj, "l-exchange", json!(true), json!(rep.counterexample), "")
            })
        }
        (Suite::Spread, Point::CBounded(s)) => check_spread(pj, &s),
        (Suite::BlocktypeReg, Point::BlockType(b)) => {
            let closed = blocktype::regularity_blocktype(b.n, b.d, b.k)? as u32;
            let found = blocktype::top_socle_degree(&b.generators())?;
            Ok(expect_eq(&pj, "blocktype-regularity", closed, found, json!({"reg": closed})))
        }
        (Suite::Power, Point::BlockType(b)) => {
            let eq = blocktype::power_equals_mpower(b.n, b.d, b.k, b.n as u32 - 1)?;
            Ok(expect_eq(&pj, "power-identity", true, eq, json!({"s": b.n - 1})))
        }
        (Suite::Stabilization, Point::BlockType(b)) => {
            let j = blocktype::smallest_power_j(b.n, b.d, b.k)?;
            let later: Vec<bool> =
                (j + 1..=j + 2).map(|s| blocktype::power_equals_mpower(b.n, b.d, b.k, s)).collect::<Result<_>>()?;
            Ok(expect_eq(&pj, "stabilization", vec![true, true], later, json!({"j": j})))
        }
        (Suite::FiberCone, Point::BlockType(b)) => {
            let j = blocktype::smallest_power_j(b.n, b.d, b.k)?;
            let reg = blocktype::fiber_cone_regularity(b.n, b.d, b.k)?;
            Ok(expect_eq(&pj, "smallest-power-bound", true, (j as usize) < b.n, json!({"j": j, "reg": reg})))
        }
        (Suite::LinearPowers, Point::CBounded(s)) => {
            let base = s.generators();
            let mut checked = Vec::new();
            for e in 1..=grid.max_s {
                let p = base.power(e)?;
                if p.len() > grid.max_gens {
                    break;
                }
                match oracle::betti_table(&p) {
                    Ok(t) => {
                        if !t.has_linear_resolution() {
                            return Ok(fail(pj, "linear-resolution", json!(true), json!(false), &format!("power {e}")));
                        }
                        checked.push(e);
                    }
                    Err(Error::BudgetExceeded { .. }) => break,
                    Err(e) => return Err(e),
                }
            }
            if checked.is_empty() {
                Ok(skip(pj, "no power within the oracle budget".into()))
            } else {
                Ok(pass(pj, json!({"powers": checked})))
            }
        }
        (suite, _) => Err(Error::Precondition(format!("suite {suite:?} does not apply to this grid point"))),
    }
}

fn check_spread(pj: Value, s: &CBounded) -> Result<PointResult> {
    let gens = s.generators();
    let graph = spread::analytic_spread_graph(&gens, false)?;
    let rank = spread::exponent_rank(&gens);
    if rank != graph {
        return Ok(fail(pj, "analytic-spread-rank", json!(rank), json!(graph), "exponent rank vs relation graph"));
    }
    if s.d < 2 {
        return Ok(pass(pj, json!({"graph": graph})));
    }
    let (case, closed) = spread::closed_form_value(s)?;
    let detail = json!({"case": case.tag(), "graph": graph, "closed_form": closed});
    if closed == graph as i64 {
        return Ok(pass(pj, detail));
    }
    let mut r = fail(pj, "analytic-spread", json!(graph), json!(closed), case.tag());
    if case == SpreadCase::BoundaryPartial {
        r.status = Status::Reported;
        r.discrepancies[0].note = "literal nu; graph value shipped".into();
    }
    Ok(r)
}

fn run_point(suite: Suite, point: Point, grid: &Grid, timeout: Option<Duration>) -> PointResult {
    let pj = point.to_json();
    let outcome = match timeout {
        None => Some(check_point(suite, point, grid)),
        Some(limit) => {
            let (tx, rx) = mpsc::channel();
            let g = grid.clone();
            thread::spawn(move || {
                let _ = tx.send(check_point(suite, point, &g));
            });
            rx.recv_timeout(limit).ok()
        }
    };
    match outcome {
        Some(Ok(r)) => r,
        Some(Err(e)) => skip(pj, e.to_string()),
        None => skip(pj, format!("timed out after {:?}", timeout.unwrap())),
    }
}

/// Run `suite` over its grid. Points run in parallel; results keep grid order.
pub fn run_suite(suite: Suite, grid: &Grid, timeout: Option<Duration>) -> SuiteSummary {
    let pts = points(suite, grid);
    let results: Vec<PointResult> = pts.par_iter().map(|&p| run_point(suite, p, grid, timeout)).collect();
    let count = |st: Status| results.iter().filter(|r| r.status == st).count();
    SuiteSummary {
        suite,
        points: results.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        reported: count(Status::Reported),
        skipped: count(Status::Skipped),
        first_failure: results.iter().find(|r| r.status == Status::Fail).map(|r| r.point.clone()),
        results,
    }
}
