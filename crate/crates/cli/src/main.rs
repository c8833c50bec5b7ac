//! Command-line front end: analyze polynomials, instantiate families, run
//! the oracles and the verification table, emit JSON reports.
//!
//! Machine-readable JSON goes to stdout; human-readable summaries go to
//! stderr under --pretty. Output is byte-identical across runs for the same
//! inputs and seed. Exit codes: 0 success, 1 verification failure, 2 usage
//! or parse error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use linstab::analysis::{analyze, field_json, poly_json, AnalysisOpts, IdealizerJson, StabJson};
use linstab::error::Error;
use linstab::families::{build_family, FamilyName};
use linstab::field::{Field, Tower};
use linstab::linpoly::LinPoly;
use linstab::rankcode::{idealizer, RankCode, Side};
use linstab::search::{search, SearchPredicate};
use linstab::stabilizer::{brute_force_stabilizer, compute_stabilizer, same_stabilizer};
use linstab::util::EnumOpts;
use linstab::verify::{run_tier, Tier};

#[derive(Parser)]
#[command(
    name = "linstab",
    version,
    about = "Stabilizer algebras, linear sets and rank-metric codes of linearized polynomials over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field specification "p^k" or "p^k/c0,c1,...,ck" (modulus low degree first)
    #[arg(long)]
    field: String,
    /// Base field size q = p^e (default: p, so that n = k)
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args, Clone)]
struct EnumArgs {
    /// Cap on every enumeration, counted in candidates
    #[arg(long, default_value_t = 1 << 24)]
    budget: u64,
    /// Worker threads for enumeration loops (results are worker-count independent)
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl EnumArgs {
    fn opts(&self) -> EnumOpts {
        EnumOpts {
            budget: self.budget,
            workers: self.workers,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis: weights, scatteredness, stabilizer, code, idealizers
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        /// Polynomial: "c0,c1,..." encodings or terms like "x^q1 + 3*x"
        #[arg(long)]
        poly: String,
        /// Divisors t to analyze, comma separated (default: all with 1 < t < n)
        #[arg(long)]
        t: Option<String>,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall time in the report (off keeps output byte-stable)
        #[arg(long)]
        timing: bool,
        /// Human-readable summary on stderr
        #[arg(long)]
        pretty: bool,
    },
    /// Instantiate a named family and report its diagnostics
    Family {
        #[command(flatten)]
        field: FieldArgs,
        /// One of: monomial, lp, half_gap, csmz_hexa, lz3_quad, trace,
        /// eta_binomial, delta_high, delta_low, ell_twist, projection,
        /// comp_subspace
        #[arg(long)]
        family: String,
        /// Family parameters as key=value (elements by canonical encoding,
        /// element lists colon separated)
        #[arg(long = "param")]
        params: Vec<String>,
        /// Also run the full analysis on the constructed polynomial
        #[arg(long)]
        analyze: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Stabilizer of the graph of a polynomial
    Stabilizer {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Rank-metric code report: distance, Singleton bound, idealizers
    Code {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long)]
        pretty: bool,
    },
    /// Enumerate bounded-degree polynomials satisfying a predicate
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        max_qdeg: usize,
        /// One of: scattered, l_pt, r_pt, nonfield_stab
        #[arg(long)]
        predicate: String,
        /// Divisor t for the partial predicates
        #[arg(long)]
        t: Option<usize>,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pretty: bool,
    },
    /// Run the verification table; nonzero exit when any row fails
    VerifyPaper {
        /// "fast" or "slow" (slow includes the n = 10 quadrinomial)
        #[arg(long, default_value = "fast")]
        tier: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Compare the stabilizer solver against the brute-force enumeration
    Oracle {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[arg(long)]
        pretty: bool,
    },
}

fn tower_from(args: &FieldArgs) -> Result<Tower, Error> {
    let field = Field::parse_spec(&args.field)?;
    match args.q {
        None => Ok(field.prime_tower()),
        Some(q) => field.tower_for_q(q),
    }
}

fn parse_ts(t: &Option<String>) -> Result<Option<Vec<usize>>, Error> {
    match t {
        None => Ok(None),
        Some(list) => list
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::ParseError(format!("bad divisor {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report serializes")
    );
}

#[derive(Serialize)]
struct FamilyReport {
    field: linstab::analysis::FieldJson,
    family: String,
    params: BTreeMap<String, String>,
    poly: Option<linstab::analysis::PolyJson>,
    subspace_basis: Option<Vec<Vec<u64>>>,
    diagnostics: Vec<DiagnosticJson>,
    analysis: Option<linstab::analysis::AnalysisReport>,
}

#[derive(Serialize)]
struct DiagnosticJson {
    label: String,
    holds: bool,
}

#[derive(Serialize)]
struct StabCommandReport {
    field: linstab::analysis::FieldJson,
    poly: linstab::analysis::PolyJson,
    stabilizer: StabJson,
}

#[derive(Serialize)]
struct CodeCommandReport {
    field: linstab::analysis::FieldJson,
    poly: linstab::analysis::PolyJson,
    dim: usize,
    degenerate: bool,
    d: Option<usize>,
    singleton_bound_log_q: Option<usize>,
    is_mrd: Option<bool>,
    left: IdealizerJson,
    right: IdealizerJson,
}

#[derive(Serialize)]
struct OracleReport {
    field: linstab::analysis::FieldJson,
    poly: linstab::analysis::PolyJson,
    solver: StabJson,
    brute: Option<StabJson>,
    agree: Option<bool>,
    error: Option<String>,
}

#[derive(Serialize)]
struct VerifyRowJson {
    id: String,
    label: String,
    expected: String,
    computed: String,
    pass: bool,
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze {
            field,
            poly,
            t,
            enumeration,
            seed,
            timing,
            pretty,
        } => {
            let tower = tower_from(&field)?;
            let f = LinPoly::parse(&tower, &poly)?;
            let opts = AnalysisOpts {
                ts: parse_ts(&t)?,
                enum_opts: enumeration.opts(),
                seed,
                record_timing: timing,
            };
            let report = analyze(&f, &opts)?;
            emit(&report);
            if pretty {
                eprintln!(
                    "f = {} over F_{}^{}",
                    report.poly.pretty,
                    tower.q(),
                    tower.n()
                );
                eprintln!(
                    "max weight {} | low weight {} | scattered {}",
                    report.max_weight, report.low_weight, report.scattered
                );
                eprintln!(
                    "|S_f| = {:?} ({}) | d(C_f) = {:?} | MRD {:?} | psi ok {:?}",
                    report.stabilizer.order,
                    if report.stabilizer.is_field {
                        "field"
                    } else {
                        "not a field"
                    },
                    report.code.d,
                    report.code.is_mrd,
                    report.code.psi_ok
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Family {
            field,
            family,
            params,
            analyze: run_analysis,
            pretty,
        } => {
            let tower = tower_from(&field)?;
            let name: FamilyName = family.parse()?;
            let mut map = BTreeMap::new();
            for kv in &params {
                let (k, v) = kv.split_once('=').ok_or_else(|| {
                    Error::ParseError(format!("parameter {kv:?} is not key=value"))
                })?;
                map.insert(k.to_string(), v.to_string());
            }
            let out = build_family(&tower, name, &map)?;
            let analysis = match (&out.poly, run_analysis) {
                (Some(f), true) => Some(analyze(f, &AnalysisOpts::default())?),
                _ => None,
            };
            let report = FamilyReport {
                field: field_json(&tower),
                family,
                params: map,
                poly: out.poly.as_ref().map(poly_json),
                subspace_basis: out.subspace.as_ref().map(|u| u.basis_vectors_raw()),
                diagnostics: out
                    .diagnostics
                    .iter()
                    .map(|d| DiagnosticJson {
                        label: d.label.clone(),
                        holds: d.holds,
                    })
                    .collect(),
                analysis,
            };
            emit(&report);
            if pretty {
                for d in &report.diagnostics {
                    eprintln!("{} {}", if d.holds { "ok  " } else { "FAIL" }, d.label);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Stabilizer {
            field,
            poly,
            pretty,
        } => {
            let tower = tower_from(&field)?;
            let f = LinPoly::parse(&tower, &poly)?;
            let stab = compute_stabilizer(&f);
            let report = StabCommandReport {
                field: field_json(&tower),
                poly: poly_json(&f),
                stabilizer: (&stab).into(),
            };
            emit(&report);
            if pretty {
                eprintln!(
                    "dim {} | order {:?} | {}",
                    stab.dim,
                    stab.order,
                    if stab.is_field {
                        "field"
                    } else {
                        "not a field"
                    }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Code {
            field,
            poly,
            enumeration,
            pretty,
        } => {
            let tower = tower_from(&field)?;
            let f = LinPoly::parse(&tower, &poly)?;
            let code = RankCode::from_poly(&f);
            let d = match code.min_distance(&enumeration.opts()) {
                Ok(d) => Some(d),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            let singleton = d.map(|d| code.singleton_check(d));
            let left = idealizer(&code, Side::Left);
            let right = idealizer(&code, Side::Right);
            let report = CodeCommandReport {
                field: field_json(&tower),
                poly: poly_json(&f),
                dim: code.dim(),
                degenerate: code.is_degenerate(),
                d,
                singleton_bound_log_q: singleton.map(|s| s.bound_log_q),
                is_mrd: singleton.map(|s| s.is_mrd),
                left: (&left).into(),
                right: (&right).into(),
            };
            emit(&report);
            if pretty {
                eprintln!(
                    "dim {} | d {:?} | MRD {:?} | idealizers L dim {} R dim {}",
                    report.dim, report.d, report.is_mrd, report.left.dim, report.right.dim
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Search {
            field,
            max_qdeg,
            predicate,
            t,
            enumeration,
            seed,
            pretty,
        } => {
            let tower = tower_from(&field)?;
            let pred = SearchPredicate::parse(&predicate, t)?;
            let hits = search(&tower, max_qdeg, pred, &enumeration.opts(), seed)?;
            for hit in &hits {
                emit(hit);
            }
            if pretty {
                eprintln!("{} orbit representatives found", hits.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyPaper { tier, pretty } => {
            let tier = match tier.as_str() {
                "fast" => Tier::Fast,
                "slow" => Tier::Slow,
                other => return Err(Error::ParseError(format!("unknown tier {other:?}"))),
            };
            let rows = run_tier(tier);
            let json_rows: Vec<VerifyRowJson> = rows
                .iter()
                .map(|r| VerifyRowJson {
                    id: r.id.clone(),
                    label: r.label.clone(),
                    expected: r.expected.clone(),
                    computed: r.computed.clone(),
                    pass: r.pass,
                })
                .collect();
            emit(&json_rows);
            let failed = rows.iter().filter(|r| !r.pass).count();
            if pretty {
                for r in &rows {
                    eprintln!(
                        "[{}] {} — expected: {} | computed: {} — {}",
                        r.id,
                        r.label,
                        r.expected,
                        r.computed,
                        if r.pass { "PASS" } else { "FAIL" }
                    );
                }
                eprintln!("{} rows, {} failing", rows.len(), failed);
            }
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Oracle {
            field,
            poly,
            enumeration,
            pretty,
        } => {
            let tower = tower_from(&field)?;
            let f = LinPoly::parse(&tower, &poly)?;
            let solver = compute_stabilizer(&f);
            let (brute, agree, error) = match brute_force_stabilizer(&f, &enumeration.opts()) {
                Ok(b) => {
                    let agree = same_stabilizer(&solver, &b);
                    (Some((&b).into()), Some(agree), None)
                }
                Err(e @ Error::BudgetExceeded { .. }) => (None, None, Some(e.to_string())),
                Err(e) => return Err(e),
            };
            let report = OracleReport {
                field: field_json(&tower),
                poly: poly_json(&f),
                solver: (&solver).into(),
                brute,
                agree,
                error,
            };
            emit(&report);
            if pretty {
                eprintln!("solver and brute force agree: {:?}", report.agree);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
