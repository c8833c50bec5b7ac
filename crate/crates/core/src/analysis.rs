//! One-stop analysis of a polynomial and serializable report types.
//!
//! The report mirrors hold plain data (encodings, flags, dimensions) so they
//! serialize to stable JSON; field order follows struct order and maps are
//! sorted, making byte-identical output reproducible for fixed inputs.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Tower;
use crate::geometry::{is_low_weight, scatteredness, weight_spectrum_poly, Scatteredness};
use crate::linalg::Matrix;
use crate::linpoly::LinPoly;
use crate::rankcode::{
    idealizer, ltnq_analysis, restrict_code, verify_psi, IdealizerReport, LtnqReport, RankCode,
    Side,
};
use crate::stabilizer::{compute_stabilizer, StabReport, VerdictMode};
use crate::util::EnumOpts;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize)]
pub struct FieldJson {
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
    pub q: u64,
    pub n: usize,
}

pub fn field_json(tower: &Tower) -> FieldJson {
    FieldJson {
        p: tower.field().p(),
        k: tower.field().k(),
        modulus: tower.field().modulus().to_vec(),
        q: tower.q(),
        n: tower.n(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyJson {
    pub coeffs: Vec<u64>,
    pub literal: String,
    pub pretty: String,
    pub q_degree: Option<usize>,
    pub in_span_of_x: bool,
}

pub fn poly_json(f: &LinPoly) -> PolyJson {
    PolyJson {
        coeffs: f.coeff_encodings(),
        literal: f.literal(),
        pretty: f.pretty(),
        q_degree: f.q_degree(),
        in_span_of_x: f.is_in_span_of_x(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScatterednessJson {
    pub t: usize,
    pub scattered: bool,
    pub l_pt: bool,
    pub r_pt: bool,
    pub l_witness: Option<[u64; 2]>,
    pub r_witness: Option<[u64; 2]>,
}

impl From<&Scatteredness> for ScatterednessJson {
    fn from(s: &Scatteredness) -> Self {
        let pair = |w: &Option<(crate::field::FieldElem, crate::field::FieldElem)>| {
            w.map(|(a, b)| [a.encoding(), b.encoding()])
        };
        ScatterednessJson {
            t: s.t,
            scattered: s.scattered,
            l_pt: s.l_pt,
            r_pt: s.r_pt,
            l_witness: pair(&s.l_witness),
            r_witness: pair(&s.r_witness),
        }
    }
}

fn mode_str(m: VerdictMode) -> &'static str {
    match m {
        VerdictMode::Exhaustive => "exhaustive",
        VerdictMode::Sampled => "sampled",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabJson {
    pub dim: usize,
    pub order: Option<u64>,
    pub basis: Vec<[u64; 4]>,
    pub is_field: bool,
    pub witness: Option<[u64; 4]>,
    pub mode: &'static str,
    pub closure_checked: bool,
}

impl From<&StabReport> for StabJson {
    fn from(r: &StabReport) -> Self {
        StabJson {
            dim: r.dim,
            order: r.order,
            basis: r.basis.iter().map(|m| m.encodings()).collect(),
            is_field: r.is_field,
            witness: r.witness.as_ref().map(|m| m.encodings()),
            mode: mode_str(r.mode),
            closure_checked: r.closure_checked,
        }
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealizerJson {
    pub side: &'static str,
    pub dim: usize,
    pub order: Option<u64>,
    pub basis: Vec<Vec<Vec<u64>>>,
    pub is_field: bool,
    pub witness: Option<Vec<Vec<u64>>>,
    pub mode: &'static str,
    pub closure_checked: bool,
}

impl From<&IdealizerReport> for IdealizerJson {
    fn from(r: &IdealizerReport) -> Self {
        IdealizerJson {
            side: match r.side {
                Side::Left => "left",
                Side::Right => "right",
            },
            dim: r.dim,
            order: r.order,
            basis: r.basis.iter().map(matrix_rows).collect(),
            is_field: r.is_field,
            witness: r.witness.as_ref().map(matrix_rows),
            mode: mode_str(r.mode),
            closure_checked: r.closure_checked,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LtnqJson {
    pub r_pt: bool,
    pub intersection_dim: usize,
    pub setwise_equal_count: u64,
    pub subspace_size: Option<u64>,
    pub inclusion_holds: bool,
    pub injective: bool,
    pub inequality_holds: bool,
    pub restricted_idealizer_dim: usize,
}

impl From<&LtnqReport> for LtnqJson {
    fn from(r: &LtnqReport) -> Self {
        LtnqJson {
            r_pt: r.r_pt,
            intersection_dim: r.intersection_dim,
            setwise_equal_count: r.setwise_equal_count,
            subspace_size: r.subspace_size,
            inclusion_holds: r.inclusion_holds,
            injective: r.injective,
            inequality_holds: r.inequality_holds,
            restricted_idealizer_dim: r.restricted_idealizer_dim,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedJson {
    pub t: usize,
    pub dim: usize,
    /// None when the enumeration exceeded the candidate budget.
    pub d: Option<usize>,
    pub singleton_bound_log_q: Option<usize>,
    pub is_mrd: Option<bool>,
    pub right: IdealizerJson,
    pub ltnq: LtnqJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeJson {
    pub dim: usize,
    pub degenerate: bool,
    pub d: Option<usize>,
    pub singleton_bound_log_q: Option<usize>,
    pub is_mrd: Option<bool>,
    pub left: IdealizerJson,
    pub right: IdealizerJson,
    pub psi_ok: Option<bool>,
    pub restricted: Vec<RestrictedJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub field: FieldJson,
    pub poly: PolyJson,
    pub spectrum: BTreeMap<usize, u64>,
    pub max_weight: usize,
    pub num_points: u64,
    pub low_weight: bool,
    pub scattered: bool,
    pub scatteredness: Vec<ScatterednessJson>,
    pub stabilizer: StabJson,
    pub code: CodeJson,
    pub seed: u64,
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisOpts {
    /// Divisors t of n to inspect; when None, every t with 1 < t < n.
    pub ts: Option<Vec<usize>>,
    pub enum_opts: EnumOpts,
    pub seed: u64,
    /// Record wall time in the report (off keeps output byte-stable).
    pub record_timing: bool,
}

fn proper_divisors(n: usize) -> Vec<usize> {
    (2..n).filter(|t| n.is_multiple_of(*t)).collect()
}

/// Run the full pipeline on one polynomial: weights, scatteredness for each
/// requested t, the stabilizer, the code with idealizers, the psi check and
/// the restricted codes.
pub fn analyze(f: &LinPoly, opts: &AnalysisOpts) -> Result<AnalysisReport> {
    let start = std::time::Instant::now();
    let tower = f.tower().clone();
    let n = tower.n();
    let ts = opts.ts.clone().unwrap_or_else(|| proper_divisors(n));
    for &t in &ts {
        if t <= 1 || t >= n || !n.is_multiple_of(t) {
            return Err(Error::BadDivisor(t));
        }
    }

    let spectrum = weight_spectrum_poly(f);
    let low_weight = is_low_weight(f);
    let scattered = spectrum.max_weight() <= 1;
    let scatter: Vec<Scatteredness> = ts
        .iter()
        .map(|&t| scatteredness(f, t))
        .collect::<Result<_>>()?;

    let stab = compute_stabilizer(f);

    let code = RankCode::from_poly(f);
    let d = match code.min_distance(&opts.enum_opts) {
        Ok(d) => Some(d),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    // internal consistency: d = n - max weight whenever f is outside <x>
    if let (Some(d), false) = (d, code.is_degenerate()) {
        assert_eq!(
            d,
            n - spectrum.max_weight(),
            "distance-weight duality violated"
        );
    }
    let singleton = d.map(|d| code.singleton_check(d));
    let left = idealizer(&code, Side::Left);
    let right = idealizer(&code, Side::Right);
    let psi_ok = if code.is_degenerate() {
        None
    } else {
        Some(verify_psi(f, &stab, &right)?.ok())
    };

    let mut restricted = Vec::new();
    for &t in &ts {
        let rc = restrict_code(f, t)?;
        let rd = match rc.min_distance(&opts.enum_opts) {
            Ok(d) => Some(d),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        let rsing = rd.map(|d| rc.singleton_check(d));
        let rright = idealizer(&rc, Side::Right);
        let ltnq = ltnq_analysis(f, t)?;
        restricted.push(RestrictedJson {
            t,
            dim: rc.dim(),
            d: rd,
            singleton_bound_log_q: rsing.map(|s| s.bound_log_q),
            is_mrd: rsing.map(|s| s.is_mrd),
            right: (&rright).into(),
            ltnq: (&ltnq).into(),
        });
    }

    let elapsed = start.elapsed().as_millis() as u64;
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        field: field_json(&tower),
        poly: poly_json(f),
        spectrum: spectrum.counts().clone(),
        max_weight: spectrum.max_weight(),
        num_points: spectrum.num_points(),
        low_weight,
        scattered,
        scatteredness: scatter.iter().map(Into::into).collect(),
        stabilizer: (&stab).into(),
        code: CodeJson {
            dim: code.dim(),
            degenerate: code.is_degenerate(),
            d,
            singleton_bound_log_q: singleton.map(|s| s.bound_log_q),
            is_mrd: singleton.map(|s| s.is_mrd),
            left: (&left).into(),
            right: (&right).into(),
            psi_ok,
            restricted,
        },
        seed: opts.seed,
        timing_ms: opts.record_timing.then_some(elapsed),
    })
}
