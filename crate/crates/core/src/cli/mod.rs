//! Command-line front end.
//!
//! `run` parses arguments, executes one subcommand and returns what should go to
//! stdout and stderr together with the exit code: 0 on success, 2 when a
//! discrepancy was recorded, 1 on usage or parameter errors.

pub mod export;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blocktype;
use crate::error::{Error, Result};
use crate::families::{BlockType, CBounded, IdealSpec};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::oracle;
use crate::quotients;
use crate::sorting;
use crate::spread;

pub use report::{Method, RunReport};
pub use suites::{Grid, Suite};

#[derive(Parser, Debug)]
#[command(name = "veronese", version, about = "Invariants of c-bounded and block-type t-spread Veronese ideals")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Singular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cbounded,
    Blocktype,
    VeroneseType,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = Family::Cbounded)]
    pub family: Family,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub t: usize,
    #[arg(long)]
    pub k: Option<usize>,
    /// Exponent bounds a_1,...,a_n for the Veronese-type family.
    #[arg(long, value_delimiter = ',')]
    pub bounds: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpreadMethod {
    Graph,
    Closed,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BlockQuantity {
    Reg,
    J,
    FiberReg,
    PowerCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleQuantity {
    Betti,
    Height,
    Depth,
    Reg,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_d: usize,
    #[arg(long)]
    pub max_c: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub max_t: usize,
    #[arg(long, default_value_t = 25)]
    pub max_gens: usize,
    #[arg(long, default_value_t = 2)]
    pub max_tuple: usize,
    #[arg(long, default_value_t = 2)]
    pub max_s: u32,
    /// Per grid point; points over the limit are skipped and recorded.
    #[arg(long)]
    pub timeout_secs: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal generators of a family.
    Gens {
        #[command(flatten)]
        family: FamilyArgs,
        /// Write the Singular script here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Betti numbers from linear quotients.
    Betti {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also compute the oracle Betti table and report agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Analytic spread and limit depth.
    Spread {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = SpreadMethod::Graph)]
        method: SpreadMethod,
        /// Write the discrepancy records to this JSON file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Sortability, l-exchange and Rees algebra relations.
    Toric {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        relations: bool,
        #[arg(long, default_value_t = 2)]
        max_tuple: usize,
    },
    /// Block-type invariants with t = 0.
    Blocktype {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = BlockQuantity::Reg)]
        what: BlockQuantity,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Cross-check against the oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Brute-force invariants of an ideal read from a file.
    Oracle {
        #[arg(value_enum)]
        what: OracleQuantity,
        /// One monomial per line, e.g. `x1^2*x3`.
        #[arg(long)]
        gens_file: PathBuf,
        /// Number of variables; defaults to the largest index in the file.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a suite over a grid and summarize.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run a suite over a grid and list every point.
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl FamilyArgs {
    fn need(&self, v: Option<usize>, flag: &str) -> Result<usize> {
        v.ok_or_else(|| Error::Precondition(format!("--{flag} is required for this family")))
    }

    pub fn spec(&self) -> Result<IdealSpec> {
        let spec = match self.family {
            Family::Cbounded => IdealSpec::CBounded(CBounded::new(
                self.need(self.c, "c")?,
                self.need(self.n, "n")?,
                self.need(self.d, "d")?,
                self.t,
            )),
            Family::Blocktype => IdealSpec::BlockType(BlockType::new(
                self.need(self.n, "n")?,
                self.need(self.d, "d")?,
                self.t,
                self.need(self.k, "k")?,
            )),
            Family::VeroneseType => IdealSpec::VeroneseType { d: self.need(self.d, "d")?, bounds: self.bounds.clone() },
        };
        spec.validate()?;
        Ok(spec)
    }

    fn cbounded(&self) -> Result<CBounded> {
        match self.spec()? {
            IdealSpec::CBounded(s) => Ok(s),
            other => Err(Error::Precondition(format!("this command needs --family cbounded, got {other}"))),
        }
    }
}

fn grid_of(g: &GridArgs) -> Grid {
    Grid {
        max_n: g.max_n,
        max_d: g.max_d,
        max_c: g.max_c,
        max_t: g.max_t,
        max_gens: g.max_gens,
        tuple: g.max_tuple,
        max_s: g.max_s,
    }
}

/// Parse `argv` (including the program name) and run.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { stdout: text, stderr: String::new(), code: 0 }
                }
                _ => Outcome { stdout: String::new(), stderr: text, code: 1 },
            };
        }
    };
    match execute(&cli) {
        Ok(Output::Report(r)) => {
            let stdout = match cli.format {
                Format::Text => r.to_text(),
                _ => r.to_json() + "\n",
            };
            Outcome { stdout, stderr: String::new(), code: r.exit_code() }
        }
        Ok(Output::Raw(s)) => Outcome { stdout: s, stderr: String::new(), code: 0 },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 1 },
    }
}

enum Output {
    Report(RunReport),
    Raw(String),
}

fn execute(cli: &Cli) -> Result<Output> {
    let timings = cli.timings;
    match &cli.command {
        Command::Gens { family, output } => {
            let spec = family.spec()?;
            let ideal = spec.generators()?;
            match cli.format {
                Format::Singular => {
                    if let Some(path) = output {
                        export::export_singular(&ideal, path)?;
                        return Ok(Output::Raw(String::new()));
                    }
                    Ok(Output::Raw(export::singular_script(&ideal)))
                }
                Format::Text => Ok(Output::Raw(ideal.gens().iter().map(|g| format!("{g}\n")).collect())),
                Format::Json => {
                    let mut r = RunReport::new("gens", Some(json!(spec)), timings);
                    r.push("count", ideal.len(), Method::Enumeration);
                    r.push("generators", strings(ideal.gens()), Method::Enumeration);
                    Ok(Output::Report(r))
                }
            }
        }
        Command::Betti { family, oracle: with_oracle } => {
            let spec = family.cbounded()?;
            let mut r = RunReport::new("betti", Some(json!(IdealSpec::CBounded(spec))), timings);
            let betti = r.timed("formula", || quotients::betti_numbers(&spec))?;
            let agree = if *with_oracle {
                let table = r.timed("oracle", || oracle::betti_table(&spec.generators()))?;
                let totals = table.totals();
                if totals != betti {
                    r.discrepancy("betti", json!(spec), &totals, &betti, "oracle row sums");
                }
                r.push("betti_table", &table, Method::Oracle);
                Some(totals == betti)
            } else {
                None
            };
            r.push_checked("betti", &betti, Method::ClosedForm, agree);
            r.push("projective_dimension", betti.len() - 1, Method::ClosedForm);
            r.push("regularity", quotients::regularity_cbounded(&spec)?, Method::ClosedForm);
            r.push("height", spec.height()?, Method::ClosedForm);
            r.push("cohen_macaulay", spec.is_cohen_macaulay()?, Method::ClosedForm);
            r.push("gorenstein", spec.is_gorenstein()?, Method::ClosedForm);
            let stated = (spec.is_cohen_macaulay_stated()?, spec.is_gorenstein_stated()?);
            if stated != (spec.is_cohen_macaulay()?, spec.is_gorenstein()?) {
                r.push("cohen_macaulay_gorenstein_stated", stated, Method::ClosedForm);
            }
            Ok(Output::Report(r))
        }
        Command::Spread { family, method, report } => {
            let spec = family.spec()?;
            let mut r = RunReport::new("spread", Some(json!(spec)), timings);
            let ideal = spec.generators()?;
            let graph = r.timed("graph", || spread::relation_graph(&ideal))?;
            let ell = graph.analytic_spread();
            let cb = match &spec {
                IdealSpec::CBounded(s) => Some(*s),
                _ => None,
            };
            if *method != SpreadMethod::Closed || cb.is_none() {
                r.push("relation_graph", &graph, Method::Graph);
            }
            let mut verified = None;
            if *method != SpreadMethod::Graph {
                let s = cb.ok_or_else(|| Error::Precondition("the closed form needs --family cbounded".into()))?;
                if s.d >= 2 {
                    let (case, closed) = r.timed("closed-form", || spread::closed_form_value(&s))?;
                    r.push("case", case.tag(), Method::ClosedForm);
                    r.push_checked(
                        "analytic_spread_closed_form",
                        closed,
                        Method::ClosedForm,
                        Some(closed == ell as i64),
                    );
                    verified = Some(closed == ell as i64);
                    if closed != ell as i64 {
                        let note = if case == spread::SpreadCase::BoundaryPartial { "literal nu" } else { case.tag() };
                        r.discrepancy("analytic_spread", json!(s), ell, closed, note);
                    }
                }
            }
            r.push_checked("analytic_spread", ell, Method::Graph, verified);
            r.push("limit_depth", ideal.n() - ell, Method::Graph);
            if let Some(path) = report {
                fs::write(path, serde_json::to_string_pretty(&r.discrepancies).expect("serialize") + "\n")?;
            }
            Ok(Output::Report(r))
        }
        Command::Toric { family, relations, max_tuple } => {
            let spec = family.spec()?;
            let ideal = spec.generators()?;
            let mut r = RunReport::new("toric", Some(json!(spec)), timings);
            let sortable = r.timed("sortable", || sorting::verify_sortable_ideal(&ideal));
            r.push("sortable", &sortable, Method::Oracle);
            for size in 1..=*max_tuple {
                let ex = r.timed("l-exchange", || sorting::verify_l_exchange_ideal(&ideal, size))?;
                r.push(&format!("l_exchange_{size}"), &ex, Method::Oracle);
            }
            if *relations {
                let rel = r.timed("relations", || sorting::rees_relations_ideal(&ideal));
                let rec = |v: &[sorting::ReesRelation]| v.iter().map(|x| x.record()).collect::<Vec<_>>();
                r.push("quadratic_relations", rec(&rel.quadratic), Method::Enumeration);
                r.push("linear_relations", rec(&rel.linear), Method::Enumeration);
                r.push("linear_relations_literal", rec(&rel.linear_literal), Method::Enumeration);
                r.push("linear_relations_divergent", rec(&rel.divergent), Method::Enumeration);
            }
            Ok(Output::Report(r))
        }
        Command::Blocktype { n, d, k, what, s, verify } => {
            let (n, d, k) = (*n, *d, *k);
            let bt = BlockType::new(n, d, 0, k);
            bt.validate()?;
            let mut r = RunReport::new("blocktype", Some(json!(IdealSpec::BlockType(bt))), timings);
            match what {
                BlockQuantity::Reg => {
                    let reg = blocktype::regularity_blocktype(n, d, k)?;
                    let check = if *verify {
                        let socle = blocktype::top_socle_degree(&bt.generators())? as usize;
                        if socle != reg {
                            r.discrepancy("regularity", json!(bt), socle, reg, "top socle degree");
                        }
                        r.push("top_socle_degree", socle, Method::Oracle);
                        if let Ok(Some(reg_i)) = oracle::reg_from_table(&bt.generators()) {
                            r.push("reg_ideal", reg_i, Method::Oracle);
                        }
                        Some(socle == reg)
                    } else {
                        None
                    };
                    r.push_checked("regularity", reg, Method::ClosedForm, check);
                }
                BlockQuantity::J => r.push("smallest_power_j", blocktype::smallest_power_j(n, d, k)?, Method::Oracle),
                BlockQuantity::FiberReg => {
                    r.push("smallest_power_j", blocktype::smallest_power_j(n, d, k)?, Method::Oracle);
                    r.push("fiber_cone_regularity", blocktype::fiber_cone_regularity(n, d, k)?, Method::ClosedForm);
                }
                BlockQuantity::PowerCheck => {
                    r.push("s", s, Method::Oracle);
                    r.push("power_equals_mpower", blocktype::power_equals_mpower(n, d, k, *s)?, Method::Oracle);
                }
            }
            Ok(Output::Report(r))
        }
        Command::Oracle { what, gens_file, n } => {
            let ideal = read_gens_file(gens_file, *n)?;
            let mut r = RunReport::new("oracle", Some(json!({"generators": strings(ideal.gens())})), timings);
            match what {
                OracleQuantity::Betti => {
                    let t = oracle::betti_table(&ideal)?;
                    r.push("betti_table", &t, Method::Oracle);
                    r.push("betti", t.totals(), Method::Oracle);
                }
                OracleQuantity::Height => r.push("height", oracle::height_oracle(&ideal)?, Method::Oracle),
                OracleQuantity::Depth => r.push("depth", oracle::depth_quotient(&ideal)?, Method::Oracle),
                OracleQuantity::Reg => r.push("reg", oracle::reg_from_table(&ideal)?, Method::Oracle),
            }
            Ok(Output::Report(r))
        }
        Command::Verify { grid } | Command::Sweep { grid } => {
            let detailed = matches!(cli.command, Command::Sweep { .. });
            let g = grid_of(grid);
            let mut r = RunReport::new(if detailed { "sweep" } else { "verify" }, Some(json!(g)), timings);
            let timeout = grid.timeout_secs.map(Duration::from_secs);
            let summary = r.timed("suite", || suites::run_suite(grid.suite, &g, timeout));
            summary.into_report(&mut r, detailed);
            Ok(Output::Report(r))
        }
    }
}

fn strings(gens: &[Monomial]) -> Vec<String> {
    gens.iter().map(|g| g.to_string()).collect()
}

/// One monomial per line; blank lines and lines starting with `#` are ignored.
pub fn read_gens_file(path: &PathBuf, n: Option<usize>) -> Result<MonomialIdeal> {
    let text = fs::read_to_string(path)?;
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let parsed: Vec<Monomial> = lines.iter().map(|l| Monomial::parse(l, None)).collect::<Result<_>>()?;
    let widest = parsed.iter().map(|m| m.n()).max().unwrap_or(1);
    let n = n.unwrap_or(widest);
    if n < widest {
        return Err(Error::Parse(format!("--n {n} is smaller than the variables used ({widest})")));
    }
    let gens = lines.iter().map(|l| Monomial::parse(l, Some(n))).collect::<Result<Vec<_>>>()?;
    Ok(MonomialIdeal::from_generators(n, gens))
}

/// Parse a report back; used to check that emitted JSON round-trips.
pub fn parse_report(s: &str) -> Result<RunReport> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Discrepancy records from a `spread --report` file.
pub fn read_discrepancies(path: &PathBuf) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}
