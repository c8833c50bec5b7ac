//! Executable verification rows: every catalog value and theorem-level
//! prediction checked exactly, one row per claim.
//!
//! The fast tier finishes in well under two minutes on one core; the slow
//! tier adds the n = 10 quadrinomial. All comparisons are exact: this is
//! finite algebra, there is no tolerance.

use crate::error::{Error, Result};
use crate::families;
use crate::field::{Field, FieldElem, Tower};
use crate::geometry::{
    self, apply_transform, is_low_weight, point_weight, proj_points, scatteredness,
    weight_spectrum_poly, TransformResult,
};
use crate::linalg::Matrix;
use crate::linpoly::LinPoly;
use crate::rankcode::{idealizer, ltnq_analysis, restrict_code, verify_psi, RankCode, Side};
use crate::stabilizer::{
    brute_force_stabilizer, compute_stabilizer, is_member, same_stabilizer, Mat2,
};
use crate::subspace::{Ambient, FqSubspace};
use crate::util::{EnumOpts, SplitMix64};

#[derive(Clone, Debug)]
pub struct CriterionRow {
    pub id: String,
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn row(
    id: &str,
    label: impl Into<String>,
    expected: impl ToString,
    computed: impl ToString,
) -> CriterionRow {
    let expected = expected.to_string();
    let computed = computed.to_string();
    CriterionRow {
        id: id.to_string(),
        label: label.into(),
        pass: expected == computed,
        expected,
        computed,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Slow,
}

pub const FAST_IDS: [&str; 12] = [
    "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "13",
];
pub const SLOW_IDS: [&str; 1] = ["12"];

pub fn criterion_ids(tier: Tier) -> Vec<&'static str> {
    let mut ids: Vec<&'static str> = FAST_IDS.to_vec();
    if tier == Tier::Slow {
        ids.push("12");
        ids.sort_by_key(|s| s.parse::<u32>().unwrap());
    }
    ids
}

pub fn run_criterion(id: &str) -> Result<Vec<CriterionRow>> {
    Ok(match id {
        "1" => stabilizer_catalog(),
        "2" => oracle_equivalence(),
        "3" => low_weight_implies_field(),
        "4" => psi_isomorphism(),
        "5" => mrd_iff_scattered(),
        "6" => distance_corollaries(),
        "7" => partial_scattered_weights(),
        "8" => ell_twist_characterization(),
        "9" => projection_maps(),
        "10" => complementary_weight_example(),
        "11" => restricted_codes(),
        "12" => quadrinomial_slow(),
        "13" => property_suites(),
        other => return Err(Error::ParseError(format!("unknown criterion {other:?}"))),
    })
}

pub fn run_tier(tier: Tier) -> Vec<CriterionRow> {
    criterion_ids(tier)
        .into_iter()
        .flat_map(|id| run_criterion(id).expect("known id"))
        .collect()
}

fn prime_tower(p: u64, k: usize) -> Tower {
    Field::new(p, k)
        .expect("valid field parameters")
        .prime_tower()
}

// ---- the shared instance catalog ----

struct CatalogEntry {
    id: &'static str,
    label: String,
    f: LinPoly,
    order: u64,
    is_field: bool,
}

/// The eta of smallest encoding with eta^(q^t + 1) = 1 and eta != 1.
fn norm_one_eta(tower: &Tower, t: usize) -> FieldElem {
    families::smallest_element_with(tower, |x| {
        let e = x.encoding();
        e > 1 && tower.field().rpow(e, (tower.q() as u128).pow(t as u32) + 1) == 1
    })
    .expect("norm-one elements exist")
}

fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let el = |t: &Tower, e: u64| t.field().el(e).expect("encoding in range");

    let t25 = prime_tower(2, 5);
    out.push(CatalogEntry {
        id: "1a",
        label: "q=2 n=5 monomial x^q".into(),
        f: families::monomial(&t25, 1).unwrap().poly.unwrap(),
        order: 32,
        is_field: true,
    });
    out.push(CatalogEntry {
        id: "1b",
        label: "q=2 n=5 LP (n odd)".into(),
        f: families::lp(&t25, 1, el(&t25, 2)).unwrap().poly.unwrap(),
        order: 2,
        is_field: true,
    });
    let t26 = prime_tower(2, 6);
    out.push(CatalogEntry {
        id: "1b",
        label: "q=2 n=6 LP (n even)".into(),
        f: families::lp(&t26, 1, el(&t26, 2)).unwrap().poly.unwrap(),
        order: 4,
        is_field: true,
    });
    let t34 = prime_tower(3, 4);
    let delta = families::smallest_element_with(&t34, |x| {
        !t34.field().is_zero(x) && t34.norm_to(x, 1).unwrap() != t34.field().one()
    })
    .expect("non-norm-one delta exists");
    let hg = families::half_gap(&t34, 1, delta).unwrap();
    assert!(hg.all_hypotheses_hold());
    out.push(CatalogEntry {
        id: "1c",
        label: format!("q=3 n=4 half-gap s=1, delta = {}", delta.encoding()),
        f: hg.poly.unwrap(),
        order: 9,
        is_field: true,
    });
    let t56 = prime_tower(5, 6);
    let hexa = families::csmz_hexa(&t56, el(&t56, 2)).unwrap();
    assert!(
        hexa.all_hypotheses_hold(),
        "delta = 2 satisfies delta^2 + delta = 1 over F_5"
    );
    out.push(CatalogEntry {
        id: "1d",
        label: "q=5 n=6 hexanomial delta=2".into(),
        f: hexa.poly.unwrap(),
        order: 25,
        is_field: true,
    });
    let t24 = prime_tower(2, 4);
    out.push(CatalogEntry {
        id: "1e",
        label: "q=2 n=4 trace onto F_{q^2} (t'=2)".into(),
        f: families::trace(&t24, 2).unwrap().poly.unwrap(),
        order: 256,
        is_field: false,
    });
    out.push(CatalogEntry {
        id: "1e",
        label: "q=2 n=6 trace onto F_{q^2} (t'=3, order q^(t+n))".into(),
        f: families::trace(&t26, 2).unwrap().poly.unwrap(),
        order: 256,
        is_field: false,
    });
    out.push(CatalogEntry {
        id: "1f",
        label: "q=2 n=6 binomial x^q + eta x^(q^3), t=2, t'=3".into(),
        f: families::eta_binomial(&t26, 2, el(&t26, 2))
            .unwrap()
            .poly
            .unwrap(),
        order: 4,
        is_field: true,
    });
    let eta9 = norm_one_eta(&t26, 3);
    out.push(CatalogEntry {
        id: "1g",
        label: format!(
            "q=2 n=6 binomial x^q + eta x^(q^4), eta^9 = 1 (eta = {})",
            eta9.encoding()
        ),
        f: families::eta_binomial(&t26, 3, eta9).unwrap().poly.unwrap(),
        order: 64,
        is_field: false,
    });
    out.push(CatalogEntry {
        id: "1h",
        label: "q=2 n=6 binomial x^q + delta x^(q^5), N(delta) = 1".into(),
        f: families::delta_high(&t26, el(&t26, 2))
            .unwrap()
            .poly
            .unwrap(),
        order: 4,
        is_field: true,
    });
    out.push(CatalogEntry {
        id: "1i",
        label: "q=2 n=5 binomial x^q + delta x^(q^2)".into(),
        f: families::delta_low(&t25, el(&t25, 2))
            .unwrap()
            .poly
            .unwrap(),
        order: 2,
        is_field: true,
    });
    out
}

fn random_poly(tower: &Tower, rng: &mut SplitMix64) -> LinPoly {
    let coeffs: Vec<FieldElem> = (0..tower.n())
        .map(|_| tower.field().el(rng.below(tower.field_size())).unwrap())
        .collect();
    LinPoly::from_coeffs(tower, coeffs).unwrap()
}

/// Seeded pool of 200 random polynomials per n over q = 3.
fn q3_pool() -> Vec<LinPoly> {
    let mut out = Vec::new();
    for n in [4usize, 5, 6] {
        let t = prime_tower(3, n);
        let mut rng = SplitMix64::new(0x0bad5eed ^ n as u64);
        for _ in 0..200 {
            out.push(random_poly(&t, &mut rng));
        }
    }
    out
}

// ---- criterion 1 ----

fn stabilizer_catalog() -> Vec<CriterionRow> {
    catalog()
        .iter()
        .map(|e| {
            let rep = compute_stabilizer(&e.f);
            row(
                e.id,
                &e.label,
                format!("|S_f| = {}, field = {}", e.order, e.is_field),
                format!(
                    "|S_f| = {}, field = {}",
                    rep.order.map_or(0, |o| o),
                    rep.is_field
                ),
            )
        })
        .collect()
}

// ---- criterion 2 ----

fn oracle_equivalence() -> Vec<CriterionRow> {
    let opts = EnumOpts::default();
    let mut rows = Vec::new();
    let mut checked = 0u64;
    let mut agreed = 0u64;
    for n in [3usize, 4] {
        let t = prime_tower(2, n);
        let mut rng = SplitMix64::new(0xace ^ n as u64);
        for _ in 0..20 {
            let f = random_poly(&t, &mut rng);
            let solved = compute_stabilizer(&f);
            let brute = brute_force_stabilizer(&f, &opts).expect("within budget");
            checked += 1;
            if same_stabilizer(&solved, &brute) {
                agreed += 1;
            }
        }
    }
    rows.push(row(
        "2",
        "solver vs brute force on 20 seeded random f for q=2, n in {3,4}",
        "40 of 40 agree",
        format!("{agreed} of {checked} agree"),
    ));
    let mut cat_checked = 0u64;
    let mut cat_agreed = 0u64;
    for e in catalog() {
        let size = e.f.tower().field_size() as u128;
        if size.pow(4) > opts.budget as u128 {
            continue;
        }
        let solved = compute_stabilizer(&e.f);
        let brute = brute_force_stabilizer(&e.f, &opts).expect("within budget");
        cat_checked += 1;
        if same_stabilizer(&solved, &brute) {
            cat_agreed += 1;
        }
    }
    rows.push(row(
        "2",
        "solver vs brute force on catalog instances fitting the 2^24 budget",
        format!("{cat_checked} of {cat_checked} agree"),
        format!("{cat_agreed} of {cat_checked} agree"),
    ));
    rows
}

// ---- criterion 3 ----

fn low_weight_implies_field() -> Vec<CriterionRow> {
    let mut rows = Vec::new();
    // q = 2: exhaustive polynomials of q-degree <= 2
    let mut counterexamples = 0u64;
    let mut low_weight_count = 0u64;
    for n in [4usize, 5, 6] {
        let t = prime_tower(2, n);
        let size = t.field_size();
        let mut coeffs = vec![0u64; n];
        for c0 in 0..size {
            for c1 in 0..size {
                for c2 in 0..size {
                    coeffs[0] = c0;
                    coeffs[1] = c1;
                    coeffs[2] = c2;
                    let f = LinPoly::from_raw(&t, coeffs.clone());
                    if f.is_zero() {
                        continue;
                    }
                    if is_low_weight(&f) {
                        low_weight_count += 1;
                        if !compute_stabilizer(&f).is_field {
                            counterexamples += 1;
                        }
                    }
                }
            }
        }
    }
    rows.push(row(
        "3",
        format!("q=2, n in {{4,5,6}}, exhaustive q-degree <= 2 ({low_weight_count} low-weight f)"),
        "0 counterexamples to low weight => field",
        format!("{counterexamples} counterexamples to low weight => field"),
    ));
    let mut counterexamples = 0u64;
    let mut low_weight_count = 0u64;
    for f in q3_pool() {
        if f.is_zero() {
            continue;
        }
        if is_low_weight(&f) {
            low_weight_count += 1;
            if !compute_stabilizer(&f).is_field {
                counterexamples += 1;
            }
        }
    }
    rows.push(row(
        "3",
        format!("q=3, n in {{4,5,6}}, 200 seeded random f each ({low_weight_count} low-weight)"),
        "0 counterexamples to low weight => field",
        format!("{counterexamples} counterexamples to low weight => field"),
    ));
    rows
}

// ---- criterion 4 ----

fn psi_isomorphism() -> Vec<CriterionRow> {
    catalog()
        .iter()
        .map(|e| {
            let stab = compute_stabilizer(&e.f);
            let right = idealizer(&RankCode::from_poly(&e.f), Side::Right);
            let psi = verify_psi(&e.f, &stab, &right).expect("catalog f outside <x>");
            row(
                "4",
                format!("psi for {}", e.label),
                "dims match, image inside, injective, multiplicative",
                if psi.ok() {
                    "dims match, image inside, injective, multiplicative".to_string()
                } else {
                    format!("{psi:?}")
                },
            )
        })
        .collect()
}

// ---- criterion 5 ----

fn mrd_iff_scattered() -> Vec<CriterionRow> {
    let opts = EnumOpts::default();
    let mut tested = 0u64;
    let mut violations = 0u64;
    let mut scattered_d_ok = true;
    let mut run = |f: &LinPoly| {
        if f.is_zero() || f.is_in_span_of_x() {
            return; // Sheekey's correspondence concerns two-dimensional C_f
        }
        let code = RankCode::from_poly(f);
        let d = code.min_distance(&opts).expect("fast path");
        let mrd = code.singleton_check(d).is_mrd;
        let scattered = geometry::is_scattered(f);
        tested += 1;
        if mrd != scattered {
            violations += 1;
        }
        if scattered && d != f.tower().n() - 1 {
            scattered_d_ok = false;
        }
    };
    for e in catalog() {
        run(&e.f);
    }
    for f in q3_pool() {
        run(&f);
    }
    vec![
        row(
            "5",
            format!("MRD(C_f) <=> scattered(f) on catalog + q=3 pool ({tested} f)"),
            "0 violations",
            format!("{violations} violations"),
        ),
        row(
            "5",
            "every scattered instance has d = n - 1",
            true,
            scattered_d_ok,
        ),
    ]
}

// ---- criterion 6 ----

fn distance_corollaries() -> Vec<CriterionRow> {
    let opts = EnumOpts::default();
    let mut tested = 0u64;
    let mut field_violations = 0u64;
    let mut duality_violations = 0u64;
    let mut run = |f: &LinPoly| {
        if f.is_zero() || f.is_in_span_of_x() {
            return;
        }
        let n = f.tower().n();
        let code = RankCode::from_poly(f);
        let d = code.min_distance(&opts).expect("fast path");
        tested += 1;
        if d != n - weight_spectrum_poly(f).max_weight() {
            duality_violations += 1;
        }
        if 2 * d > n && !idealizer(&code, Side::Right).is_field {
            field_violations += 1;
        }
    };
    for e in catalog() {
        run(&e.f);
    }
    for f in q3_pool() {
        run(&f);
    }
    let t24 = prime_tower(2, 4);
    let mut rng = SplitMix64::new(0xd15a);
    for _ in 0..50 {
        let f = random_poly(&t24, &mut rng);
        run(&f);
    }
    vec![
        row(
            "6",
            format!("d(C_f) > n/2 => R(C_f) is a field ({tested} f)"),
            "0 violations",
            format!("{field_violations} violations"),
        ),
        row(
            "6",
            "d(C_f) = n - max weight of L_f in every case",
            "0 violations",
            format!("{duality_violations} violations"),
        ),
    ]
}

// ---- criterion 7 ----

fn partial_scattered_weights() -> Vec<CriterionRow> {
    let mut r_checked = 0u64;
    let mut r_violations = 0u64;
    let mut l_checked = 0u64;
    let mut l_violations = 0u64;
    let mut run = |f: &LinPoly| {
        if f.is_zero() {
            return;
        }
        let n = f.tower().n();
        let max_w = weight_spectrum_poly(f).max_weight();
        for t in (2..n).filter(|t| n.is_multiple_of(*t)) {
            let s = scatteredness(f, t).expect("valid divisor");
            if s.r_pt {
                r_checked += 1;
                if 2 * max_w > n {
                    r_violations += 1;
                }
            }
            if s.l_pt {
                l_checked += 1;
                if max_w > t {
                    l_violations += 1;
                }
            }
        }
    };
    for e in catalog() {
        run(&e.f);
    }
    for f in q3_pool() {
        run(&f);
    }
    vec![
        row(
            "7",
            format!("R-q^t-partially scattered => max weight <= n/2 ({r_checked} instances)"),
            "0 violations",
            format!("{r_violations} violations"),
        ),
        row(
            "7",
            format!("L-q^t-partially scattered => max weight <= t ({l_checked} instances)"),
            "0 violations",
            format!("{l_violations} violations"),
        ),
    ]
}

// ---- criterion 8 ----

fn ell_twist_characterization() -> Vec<CriterionRow> {
    let mut rows = Vec::new();
    for q in [2u64, 3] {
        let t = prime_tower(q, 4);
        let fld = t.field().clone();
        let subfield: Vec<u64> = (0..t.field_size())
            .filter(|&x| t.rin_q_subfield(x, 2))
            .collect();
        let tau = families::canonical_tau(&t, 2).unwrap();
        let mut total = 0u64;
        let mut criterion_matches = 0u64;
        let mut l_pt_nonfield_ok = 0u64;
        let mut l_pt_count = 0u64;
        for &c0 in &subfield {
            for &c1 in &subfield {
                let ell = vec![fld.el(c0).unwrap(), fld.el(c1).unwrap()];
                // the constructor itself asserts criterion <=> L-partial
                // scatteredness; count the agreement explicitly as well
                let out = families::ell_twist(&t, &ell, 2).unwrap();
                total += 1;
                let l_pt = if out.poly.is_zero() {
                    false
                } else {
                    scatteredness(&out.poly, 2).unwrap().l_pt
                };
                if out.criterion == l_pt {
                    criterion_matches += 1;
                }
                if l_pt {
                    l_pt_count += 1;
                    let stab = compute_stabilizer(&out.poly);
                    let nilp = Mat2::new(fld.zero(), out.tau, fld.zero(), fld.zero());
                    if !stab.is_field && is_member(&out.poly, &nilp) {
                        l_pt_nonfield_ok += 1;
                    }
                }
            }
        }
        rows.push(row(
            "8",
            format!(
                "q={q}, t=2: nonsingularity criterion <=> L-q^t-partially scattered (tau = {})",
                tau.encoding()
            ),
            format!("{total} of {total} agree"),
            format!("{criterion_matches} of {total} agree"),
        ));
        rows.push(row(
            "8",
            format!("q={q}, t=2: every L-partially scattered twist has non-field S_f containing [[0,tau],[0,0]]"),
            format!("{l_pt_count} of {l_pt_count}"),
            format!("{l_pt_nonfield_ok} of {l_pt_count}"),
        ));
    }
    rows
}

// ---- criterion 9 ----

/// Deterministic random complementary pair (T, S) with dim T = dim_t.
fn random_complementary(
    tower: &Tower,
    dim_t: usize,
    rng: &mut SplitMix64,
) -> (FqSubspace, FqSubspace) {
    let amb = Ambient::line(tower.clone());
    let fld = tower.field().clone();
    loop {
        let tv: Vec<Vec<FieldElem>> = (0..dim_t)
            .map(|_| vec![fld.el(rng.below(tower.field_size())).unwrap()])
            .collect();
        let t_space = FqSubspace::span(amb.clone(), &tv).unwrap();
        if t_space.dim() != dim_t {
            continue;
        }
        let mut s_vecs: Vec<Vec<FieldElem>> = Vec::new();
        let mut sum = t_space.clone();
        for enc in 1..tower.field_size() {
            if sum.dim() == tower.n() {
                break;
            }
            let cand = vec![fld.el(enc).unwrap()];
            let trial = sum
                .sum(&FqSubspace::span(amb.clone(), std::slice::from_ref(&cand)).unwrap())
                .unwrap();
            if trial.dim() > sum.dim() {
                s_vecs.push(cand);
                sum = trial;
            }
        }
        let s_space = FqSubspace::span(amb.clone(), &s_vecs).unwrap();
        if s_space.dim() + dim_t == tower.n() {
            return (t_space, s_space);
        }
    }
}

fn projection_maps() -> Vec<CriterionRow> {
    let mut rows = Vec::new();
    for q in [2u64, 3] {
        let t = prime_tower(q, 4);
        let fld = t.field().clone();
        let mut rng = SplitMix64::new(0x9e0 + q);
        let mut ok = 0u64;
        for _ in 0..10 {
            let (ts, ss) = random_complementary(&t, 2, &mut rng);
            // identities of the projection pair are asserted inside
            let p = families::make_projection(&ts, &ss).unwrap();
            let witness = Mat2::new(fld.one(), fld.neg(fld.one()), fld.zero(), fld.zero());
            let stab = compute_stabilizer(&p);
            if is_member(&p, &witness) && !stab.is_field {
                ok += 1;
            }
        }
        rows.push(row(
            "9",
            format!(
                "q={q}, n=4: [[1,-1],[0,0]] stabilizes p_TS and S is not a field (10 random pairs)"
            ),
            "10 of 10",
            format!("{ok} of 10"),
        ));
    }
    rows
}

// ---- criterion 10 ----

fn complementary_weight_example() -> Vec<CriterionRow> {
    let t = prime_tower(3, 4);
    let fld = t.field().clone();
    // deterministic scan for the first (mu, xi) meeting both norm conditions
    let mut found = None;
    'outer: for mu in 1..t.field_size() {
        if !t.rin_q_subfield(mu, 2) {
            continue;
        }
        for xi in 1..t.field_size() {
            if t.rin_q_subfield(xi, 2) {
                continue;
            }
            let out =
                families::make_comp_subspace(&t, fld.el(mu).unwrap(), fld.el(xi).unwrap(), 1, 2)
                    .unwrap();
            if out.diagnostics.iter().all(|d| d.holds) {
                found = Some((mu, xi, out));
                break 'outer;
            }
        }
    }
    let Some((mu, xi, out)) = found else {
        return vec![row(
            "10",
            "parameter scan for (mu, xi)",
            "found",
            "none found",
        )];
    };
    let u = out.subspace;
    let (r_pt, _) = geometry::is_r_pt_subspace(&u, 2).unwrap();
    let w10 = point_weight(&u, &geometry::ProjPoint::slope(&t, fld.zero())).unwrap();
    let w01 = point_weight(&u, &geometry::ProjPoint::infinity(&t)).unwrap();
    let (_, g) = geometry::subspace_to_poly(&u).unwrap();
    let g_scatter = scatteredness(&g, 2).unwrap();
    let g_stab = compute_stabilizer(&g);
    vec![
        row(
            "10",
            format!("q=3, t=2: U(mu={mu}, xi={xi}) is R-q^2-partially scattered"),
            true,
            r_pt,
        ),
        row(
            "10",
            "weights at <(1,0)> and <(0,1)>",
            "(2, 2)",
            format!("({w10}, {w01})"),
        ),
        row(
            "10",
            "recovered g is R-q^2-partially scattered",
            true,
            g_scatter.r_pt,
        ),
        row("10", "S_g is not a field", false, g_stab.is_field),
    ]
}

// ---- criterion 11 ----

fn restricted_codes() -> Vec<CriterionRow> {
    let opts = EnumOpts::default();
    let mut rows = Vec::new();

    let t24 = prime_tower(2, 4);
    let f = families::monomial(&t24, 1).unwrap().poly.unwrap();
    let rc = restrict_code(&f, 2).unwrap();
    let rr = idealizer(&rc, Side::Right);
    rows.push(row(
        "11",
        "q=2 t=2 n=4, f=x^q: |R(restricted C_f)| = |L_{2,q}|",
        16u64,
        rr.order.unwrap(),
    ));
    let d = rc.min_distance(&opts).unwrap();
    rows.push(row(
        "11",
        "q=2 t=2 n=4: restricted parameters (n, t, q; t-1)",
        "(4, 2, 2; 1) MRD",
        format!(
            "(4, {}, 2; {d}) {}",
            rc.domain_dim(),
            if rc.singleton_check(d).is_mrd {
                "MRD"
            } else {
                "not MRD"
            }
        ),
    ));
    let lt = ltnq_analysis(&f, 2).unwrap();
    rows.push(row(
        "11",
        "q=2 t=2 n=4: inclusion of restricted right-idealizer images and |R| >= |intersection|",
        "inclusion, 16 >= 4",
        format!(
            "{}, {} >= {}",
            if lt.inclusion_holds {
                "inclusion"
            } else {
                "no inclusion"
            },
            rr.order.unwrap(),
            1u64 << lt.intersection_dim
        ),
    ));

    let t26 = prime_tower(2, 6);
    let f = families::monomial(&t26, 1).unwrap().poly.unwrap();
    let rc = restrict_code(&f, 3).unwrap();
    let rr = idealizer(&rc, Side::Right);
    rows.push(row(
        "11",
        "q=2 t=3 n=6, f=x^q: R(restricted C_f) = {alpha x| : alpha in F_8}",
        "order 8, field",
        format!(
            "order {}, {}",
            rr.order.unwrap(),
            if rr.is_field { "field" } else { "not a field" }
        ),
    ));
    let d = rc.min_distance(&opts).unwrap();
    rows.push(row(
        "11",
        "q=2 t=3 n=6: restricted parameters (n, t, q; t-1)",
        "(6, 3, 2; 2) MRD",
        format!(
            "(6, {}, 2; {d}) {}",
            rc.domain_dim(),
            if rc.singleton_check(d).is_mrd {
                "MRD"
            } else {
                "not MRD"
            }
        ),
    ));
    let lt = ltnq_analysis(&f, 3).unwrap();
    rows.push(row(
        "11",
        "q=2 t=3 n=6: inclusion, injectivity and the cardinality inequality",
        "inclusion, injective, inequality",
        format!(
            "{}, {}, {}",
            if lt.inclusion_holds {
                "inclusion"
            } else {
                "no inclusion"
            },
            if lt.injective {
                "injective"
            } else {
                "not injective"
            },
            if lt.inequality_holds {
                "inequality"
            } else {
                "inequality fails"
            }
        ),
    ));
    rows
}

// ---- criterion 12 (slow tier) ----

fn quadrinomial_slow() -> Vec<CriterionRow> {
    let t = prime_tower(3, 10);
    let fld = t.field().clone();
    let minus_one = fld.neg(fld.one());
    let eta = families::smallest_element_with(&t, |x| {
        !fld.is_zero(x) && t.norm_to(x, 5).unwrap() == minus_one
    })
    .expect("norm -1 elements exist");
    let out = families::lz3_quad(&t, 1, eta).unwrap();
    let diag_ok = out.all_hypotheses_hold();
    let f = out.poly.unwrap();
    let rep = compute_stabilizer(&f);
    vec![
        row(
            "12",
            format!(
                "q=3 n=10 quadrinomial, eta = {} with N(eta) = -1: hypotheses",
                eta.encoding()
            ),
            true,
            diag_ok,
        ),
        row(
            "12",
            "q=3 n=10 quadrinomial: |S_f| = q^2",
            9u64,
            rep.order.unwrap(),
        ),
    ]
}

// ---- criterion 13 ----

pub fn prop_weight_sum_identity(cases: usize, seed: u64) -> u64 {
    let mut failures = 0u64;
    let mut rng = SplitMix64::new(seed);
    for (p, k) in [(2u64, 4usize), (3, 3)] {
        let t = prime_tower(p, k);
        let amb = Ambient::plane(t.clone());
        let q = t.q() as u128;
        for _ in 0..cases / 2 {
            let rank = 1 + (rng.below(t.n() as u64 * 2) as usize).min(2 * t.n() - 1);
            let rows: Vec<Vec<FieldElem>> = (0..rank)
                .map(|_| {
                    vec![
                        t.field().el(rng.below(t.field_size())).unwrap(),
                        t.field().el(rng.below(t.field_size())).unwrap(),
                    ]
                })
                .collect();
            let u = FqSubspace::span(amb.clone(), &rows).unwrap();
            // independent recomputation of the identity, point by point
            let total: u128 = proj_points(&t)
                .map(|pt| q.pow(point_weight(&u, &pt).unwrap() as u32) - 1)
                .sum();
            if total != q.pow(u.dim() as u32) - 1 {
                failures += 1;
            }
        }
    }
    failures
}

pub fn prop_blokhuis_lavrauw(cases: usize, seed: u64) -> u64 {
    let mut failures = 0u64;
    let mut rng = SplitMix64::new(seed);
    for (p, k) in [(2u64, 3usize), (3, 2)] {
        let t = prime_tower(p, k);
        let amb = Ambient::plane(t.clone());
        for _ in 0..cases / 2 {
            let rank = 1 + (rng.below(2 * t.n() as u64) as usize).min(2 * t.n() - 1);
            let rows: Vec<Vec<FieldElem>> = (0..rank)
                .map(|_| {
                    vec![
                        t.field().el(rng.below(t.field_size())).unwrap(),
                        t.field().el(rng.below(t.field_size())).unwrap(),
                    ]
                })
                .collect();
            let u = FqSubspace::span(amb.clone(), &rows).unwrap();
            let scattered = proj_points(&t).all(|pt| point_weight(&u, &pt).unwrap() <= 1);
            if scattered && u.dim() > t.n() {
                failures += 1;
            }
        }
    }
    failures
}

pub fn prop_singleton_bound(cases: usize, seed: u64) -> u64 {
    let mut failures = 0u64;
    let mut rng = SplitMix64::new(seed);
    let opts = EnumOpts::default();
    for (p, k) in [(2u64, 3usize), (2, 4)] {
        let t = prime_tower(p, k);
        for _ in 0..cases / 2 {
            let f = random_poly(&t, &mut rng);
            let full = RankCode::from_poly(&f);
            // random subset of the generators gives a subcode
            let gens: Vec<Matrix> = full
                .generators()
                .iter()
                .filter(|_| rng.below(2) == 1)
                .cloned()
                .collect();
            if gens.is_empty() {
                continue;
            }
            let code = RankCode::from_generators(t.clone(), t.n(), gens);
            if code.dim() == 0 {
                continue;
            }
            let d = code.min_distance(&opts).expect("small spaces");
            if code.dim() > code.singleton_check(d).bound_log_q {
                failures += 1;
            }
        }
    }
    failures
}

pub fn prop_transform_invariance(cases: usize, seed: u64) -> u64 {
    let mut failures = 0u64;
    let mut rng = SplitMix64::new(seed);
    for (p, k) in [(2u64, 4usize), (3, 4)] {
        let t = prime_tower(p, k);
        let fld = t.field().clone();
        for _ in 0..cases / 2 {
            let f = random_poly(&t, &mut rng);
            let a = loop {
                let cand = Mat2::new(
                    fld.el(rng.below(t.field_size())).unwrap(),
                    fld.el(rng.below(t.field_size())).unwrap(),
                    fld.el(rng.below(t.field_size())).unwrap(),
                    fld.el(rng.below(t.field_size())).unwrap(),
                );
                if !fld.is_zero(cand.det(&fld)) {
                    break cand;
                }
            };
            let sigma = rng.below(t.field().k() as u64) as usize;
            if let TransformResult::Graph(g) = apply_transform(&a, sigma, &f).unwrap() {
                let same_spectrum = weight_spectrum_poly(&f) == weight_spectrum_poly(&g);
                let sf = scatteredness(&f, 2).unwrap();
                let sg = scatteredness(&g, 2).unwrap();
                let same_flags =
                    (sf.scattered, sf.l_pt, sf.r_pt) == (sg.scattered, sg.l_pt, sg.r_pt);
                if !(same_spectrum && same_flags) {
                    failures += 1;
                }
            }
        }
    }
    failures
}

fn property_suites() -> Vec<CriterionRow> {
    vec![
        row(
            "13",
            "weight-sum identity, 250 seeded cases",
            0u64,
            prop_weight_sum_identity(250, 0x13a),
        ),
        row(
            "13",
            "scattered rank bound, 250 seeded cases",
            0u64,
            prop_blokhuis_lavrauw(250, 0x13b),
        ),
        row(
            "13",
            "Singleton bound on random subcodes, 250 seeded cases",
            0u64,
            prop_singleton_bound(250, 0x13c),
        ),
        row(
            "13",
            "transform invariance of spectra and flags, 250 seeded cases",
            0u64,
            prop_transform_invariance(250, 0x13d),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_deterministically() {
        // fields are rebuilt per call, so compare the raw data
        let a = catalog();
        let b = catalog();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.f.coeff_encodings(), y.f.coeff_encodings());
            assert_eq!(x.f.tower().field().modulus(), y.f.tower().field().modulus());
        }
    }

    #[test]
    fn unknown_criterion_is_an_error() {
        assert!(run_criterion("0").is_err());
        assert!(run_criterion("14").is_err());
    }

    #[test]
    fn tier_listings() {
        assert_eq!(criterion_ids(Tier::Fast).len(), 12);
        assert_eq!(criterion_ids(Tier::Slow).len(), 13);
    }
}
