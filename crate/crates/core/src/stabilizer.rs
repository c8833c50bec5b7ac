//! The stabilizer algebra of a graph: all 2x2 matrices over F_{q^n} mapping
//! {(y, f(y))} into itself, computed two independent ways.
//!
//! A matrix (a b; c d) stabilizes the graph exactly when the polynomial
//! identity f(a x + b f) = c x + d f holds in L_{n,q}. The left side is
//! F_q-linear in (a, b, c, d), so membership is one linear system over F_q
//! in 4n unknowns; the solution space is the stabilizer. A brute-force
//! enumeration over all q^(4n) matrices serves as the oracle.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::Matrix;
use crate::linpoly::LinPoly;
use crate::util::{par_ranges, EnumOpts};

/// A 2x2 matrix (a b; c d) over the ambient field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mat2 {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mat2 {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(f: &Field) -> Mat2 {
        Mat2 {
            a: f.one(),
            b: f.zero(),
            c: f.zero(),
            d: f.one(),
        }
    }

    pub fn det(&self, f: &Field) -> FieldElem {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn mul(&self, f: &Field, other: &Mat2) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(self.a, other.a), f.mul(self.b, other.c)),
            b: f.add(f.mul(self.a, other.b), f.mul(self.b, other.d)),
            c: f.add(f.mul(self.c, other.a), f.mul(self.d, other.c)),
            d: f.add(f.mul(self.c, other.b), f.mul(self.d, other.d)),
        }
    }

    pub fn add(&self, f: &Field, other: &Mat2) -> Mat2 {
        Mat2 {
            a: f.add(self.a, other.a),
            b: f.add(self.b, other.b),
            c: f.add(self.c, other.c),
            d: f.add(self.d, other.d),
        }
    }

    pub fn is_zero(&self, f: &Field) -> bool {
        f.is_zero(self.a) && f.is_zero(self.b) && f.is_zero(self.c) && f.is_zero(self.d)
    }

    pub(crate) fn apply_raw(&self, f: &Field, x0: u64, x1: u64) -> (u64, u64) {
        let a = self.a.encoding();
        let b = self.b.encoding();
        let c = self.c.encoding();
        let d = self.d.encoding();
        (
            f.radd(f.rmul(a, x0), f.rmul(b, x1)),
            f.radd(f.rmul(c, x0), f.rmul(d, x1)),
        )
    }

    pub fn encodings(&self) -> [u64; 4] {
        [
            self.a.encoding(),
            self.b.encoding(),
            self.c.encoding(),
            self.d.encoding(),
        ]
    }
}

/// How the field verdict for a stabilizer (or idealizer) was reached.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerdictMode {
    /// Every nonzero element of the span was tested.
    Exhaustive,
    /// All combinations of up to two basis elements plus seeded random
    /// combinations were tested.
    Sampled,
}

/// Structured result of a stabilizer computation.
#[derive(Clone, Debug)]
pub struct StabReport {
    pub dim: usize,
    /// q^dim when it fits in a u64.
    pub order: Option<u64>,
    pub basis: Vec<Mat2>,
    pub is_field: bool,
    /// A singular nonzero member, when one exists.
    pub witness: Option<Mat2>,
    pub mode: VerdictMode,
    pub closure_checked: bool,
}

/// Check the defining identity f(a x + b f) = c x + d f for one matrix.
pub fn is_member(f: &LinPoly, m: &Mat2) -> bool {
    let x = LinPoly::identity(f.tower());
    let lhs = f.compose(&x.scale(m.a).add(&f.scale(m.b)));
    let rhs = x.scale(m.c).add(&f.scale(m.d));
    lhs == rhs
}

/// Solve the membership identity as one linear system over F_q and report
/// the solution space.
pub fn compute_stabilizer(f: &LinPoly) -> StabReport {
    let tower = f.tower();
    let fld = tower.field().clone();
    let n = tower.n();
    let x = LinPoly::identity(tower);
    let basis = tower.q_basis();

    // columns: partial derivative of f(a x + b f) - c x - d f with respect
    // to each F_q-generator of a, b, c, d
    let mut system = Matrix::zeros(n * n, 4 * n);
    let mut fill = |col: usize, poly: &LinPoly, negate: bool| {
        for (k, &coef) in poly.coeffs_raw().iter().enumerate() {
            let coef = if negate { fld.rneg(coef) } else { coef };
            for (r, &v) in tower.coords(coef).iter().enumerate() {
                system.set(k * n + r, col, v);
            }
        }
    };
    for (i, &bi) in basis.iter().enumerate() {
        fill(i, &f.compose(&x.scale(bi)), false);
        fill(n + i, &f.compose(&f.scale(bi)), false);
        fill(2 * n + i, &x.scale(bi), true);
        fill(3 * n + i, &f.scale(bi), true);
    }
    let solutions = system.nullspace(&fld);
    let basis_mats: Vec<Mat2> = (0..solutions.rows())
        .map(|r| {
            let row = solutions.row(r);
            let part = |block: usize| {
                fld.el_unchecked(tower.combine_coords(&row[block * n..(block + 1) * n]))
            };
            Mat2::new(part(0), part(1), part(2), part(3))
        })
        .collect();

    // every basis matrix must satisfy the identity, the identity matrix
    // must be present, and products must stay inside (closure)
    for m in &basis_mats {
        assert!(is_member(f, m), "solver produced a non-member");
    }
    assert!(is_member(f, &Mat2::identity(&fld)));
    let mut closure_checked = true;
    for a in &basis_mats {
        for b in &basis_mats {
            if !is_member(f, &a.mul(&fld, b)) {
                closure_checked = false;
            }
        }
    }
    assert!(closure_checked, "stabilizer is not closed under products");

    finish_report(&fld, tower.q(), basis_mats, closure_checked)
}

/// Enumerate all q^(4n) candidate matrices and keep those mapping every
/// graph vector back into the graph. The result must coincide with the
/// solver output; this is the independent oracle.
pub fn brute_force_stabilizer(f: &LinPoly, opts: &EnumOpts) -> Result<StabReport> {
    let tower = f.tower();
    let fld = tower.field().clone();
    let size = tower.field_size();
    let total = (size as u128).pow(4);
    if total > opts.budget as u128 {
        return Err(Error::BudgetExceeded {
            budget: opts.budget,
            needed: total.min(u64::MAX as u128) as u64,
        });
    }
    let table = f.value_table();
    let hits: Vec<[u64; 4]> = par_ranges(size * size, opts.workers, |range| {
        let mut out = Vec::new();
        for ab in range {
            let (a, b) = (ab / size, ab % size);
            for c in 0..size {
                'd: for d in 0..size {
                    for x in 0..size {
                        let fx = table[x as usize];
                        let u = fld.radd(fld.rmul(a, x), fld.rmul(b, fx));
                        let v = fld.radd(fld.rmul(c, x), fld.rmul(d, fx));
                        if table[u as usize] != v {
                            continue 'd;
                        }
                    }
                    out.push([a, b, c, d]);
                }
            }
        }
        out
    });

    // the hit set must be an F_q-subspace: canonicalize and count
    let n = tower.n();
    let rows: Vec<Vec<u64>> = hits
        .iter()
        .map(|m| {
            let mut row = Vec::with_capacity(4 * n);
            for &e in m {
                row.extend(tower.coords(e));
            }
            row
        })
        .collect();
    let span = Matrix::from_rows_with_cols(rows, 4 * n).row_space(&fld);
    let dim = span.rows();
    assert_eq!(
        hits.len() as u128,
        (tower.q() as u128).pow(dim as u32),
        "stabilizer hit set is not a subspace"
    );
    let basis_mats: Vec<Mat2> = (0..dim)
        .map(|r| {
            let row = span.row(r);
            let part = |block: usize| {
                fld.el_unchecked(tower.combine_coords(&row[block * n..(block + 1) * n]))
            };
            Mat2::new(part(0), part(1), part(2), part(3))
        })
        .collect();
    Ok(finish_report(&fld, tower.q(), basis_mats, true))
}

/// Two stabilizer reports describe the same set exactly when their canonical
/// bases coincide.
pub fn same_stabilizer(a: &StabReport, b: &StabReport) -> bool {
    a.dim == b.dim && a.basis.iter().zip(&b.basis).all(|(x, y)| x == y)
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

fn finish_report(fld: &Field, q: u64, basis: Vec<Mat2>, closure_checked: bool) -> StabReport {
    let dim = basis.len();
    let order = (q as u128)
        .checked_pow(dim as u32)
        .and_then(|o| u64::try_from(o).ok());
    let (is_field, witness, mode) = field_verdict(fld, q, &basis, order);
    if is_field {
        // a finite division algebra is commutative; verify on basis pairs
        for a in &basis {
            for b in &basis {
                assert_eq!(
                    a.mul(fld, b),
                    b.mul(fld, a),
                    "field verdict but non-commutative"
                );
            }
        }
    }
    StabReport {
        dim,
        order,
        basis,
        is_field,
        witness,
        mode,
        closure_checked,
    }
}

/// Scan the span for a singular nonzero member. Exhaustive when the span is
/// small enough, otherwise pairs of basis elements plus seeded random
/// combinations.
pub(crate) fn field_verdict(
    fld: &Field,
    q: u64,
    basis: &[Mat2],
    order: Option<u64>,
) -> (bool, Option<Mat2>, VerdictMode) {
    if basis.is_empty() {
        return (false, None, VerdictMode::Exhaustive); // empty: no identity, not a field
    }
    let q_elems: Vec<u64> = if q == fld.p() {
        (0..q).collect()
    } else {
        let e = q.ilog(fld.p()) as usize;
        (0..fld.size()).filter(|&x| fld.rfrobp(x, e) == x).collect()
    };
    let rows: Vec<Vec<u64>> = basis.iter().map(|m| m.encodings().to_vec()).collect();
    let mut pred = |v: &[u64]| {
        // singular and nonzero: det = ad - bc vanishes
        let det = fld.rsub(fld.rmul(v[0], v[3]), fld.rmul(v[1], v[2]));
        det == 0 && v.iter().any(|&x| x != 0)
    };
    let exhaustive = order.is_some_and(|o| o <= EXHAUSTIVE_LIMIT);
    let mode = if exhaustive {
        VerdictMode::Exhaustive
    } else {
        VerdictMode::Sampled
    };
    match crate::util::scan_span_for(fld, &q_elems, &rows, exhaustive, 0x5eed, &mut pred) {
        Some(v) => {
            let w = Mat2::new(
                fld.el_unchecked(v[0]),
                fld.el_unchecked(v[1]),
                fld.el_unchecked(v[2]),
                fld.el_unchecked(v[3]),
            );
            (false, Some(w), mode)
        }
        None => (true, None, mode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Tower};
    use crate::linpoly::LinPoly;
    use crate::util::SplitMix64;

    fn tower(p: u64, k: usize) -> Tower {
        Field::new(p, k).unwrap().prime_tower()
    }

    #[test]
    fn stabilizer_of_zero_polynomial() {
        // f = 0: the identity forces c = 0 only, so dim = 3n
        let t = tower(2, 3);
        let report = compute_stabilizer(&LinPoly::zero(&t));
        assert_eq!(report.dim, 9);
        assert_eq!(report.order, Some(512));
        assert!(!report.is_field);
        for m in &report.basis {
            assert!(t.field().is_zero(m.c));
        }
    }

    #[test]
    fn monomial_stabilizer_has_order_q_to_n() {
        // f = x^(q^s), gcd(s, n) = 1: |S_f| = q^n and it is a field
        let t = tower(2, 4);
        let f = LinPoly::monomial(&t, 1, t.field().one()).unwrap();
        let report = compute_stabilizer(&f);
        assert_eq!(report.order, Some(16));
        assert!(report.is_field);
        assert!(report.witness.is_none());
    }

    #[test]
    fn trace_stabilizer_matches_closed_form() {
        // Tr_{q^4/q^2}, q = 2, t' = 2: S_f = {(a, b; a - a^(q^t), f(b) + a^(q^t))}
        let t = tower(2, 4);
        let fld = t.field().clone();
        let f = LinPoly::trace_poly(&t, 2).unwrap();
        let report = compute_stabilizer(&f);
        assert_eq!(report.order, Some(256));
        assert!(!report.is_field);
        assert!(report.witness.is_some());
        // every (a, b) pair gives a member via the closed form
        for a in 0..16 {
            for b in 0..16 {
                let aq2 = t.rfrob(a, 2);
                let m = Mat2::new(
                    fld.el(a).unwrap(),
                    fld.el(b).unwrap(),
                    fld.el(fld.rsub(a, aq2)).unwrap(),
                    fld.el(fld.radd(f.reval(b), aq2)).unwrap(),
                );
                assert!(is_member(&f, &m));
            }
        }
    }

    #[test]
    fn brute_force_agrees_with_solver() {
        let t = tower(2, 3);
        let opts = EnumOpts::default();
        let mut rng = SplitMix64::new(4242);
        for _ in 0..12 {
            let f = LinPoly::from_raw(&t, (0..3).map(|_| rng.below(8)).collect());
            let solved = compute_stabilizer(&f);
            let brute = brute_force_stabilizer(&f, &opts).unwrap();
            assert!(
                same_stabilizer(&solved, &brute),
                "oracle mismatch for {f:?}"
            );
        }
    }

    #[test]
    fn sampled_verdict_finds_trace_witness() {
        // force the sampled scan on a stabilizer known to contain singular
        // members; the basis-pair sweep must find one
        let t = tower(2, 4);
        let f = LinPoly::trace_poly(&t, 2).unwrap();
        let rep = compute_stabilizer(&f);
        let (is_field, witness, mode) = field_verdict(t.field(), t.q(), &rep.basis, None);
        assert_eq!(mode, VerdictMode::Sampled);
        assert!(!is_field);
        let w = witness.unwrap();
        assert!(t.field().is_zero(w.det(t.field())));
        assert!(is_member(&f, &w));
        // and on a genuine field it reports none
        let xq = LinPoly::monomial(&t, 1, t.field().one()).unwrap();
        let rep = compute_stabilizer(&xq);
        let (is_field, witness, _) = field_verdict(t.field(), t.q(), &rep.basis, None);
        assert!(is_field && witness.is_none());
    }

    #[test]
    fn general_q_tower_matches_oracle() {
        // q = p^e with e > 1: the coordinate machinery over F_4 agrees with
        // the brute-force enumeration
        let f4 = Field::new(2, 4).unwrap();
        let t = f4.tower_for_q(4).unwrap();
        let opts = EnumOpts::default();
        let mut rng = SplitMix64::new(0x9e);
        for _ in 0..5 {
            let f = LinPoly::from_raw(&t, (0..2).map(|_| rng.below(16)).collect());
            let solved = compute_stabilizer(&f);
            let brute = brute_force_stabilizer(&f, &opts).unwrap();
            assert!(
                same_stabilizer(&solved, &brute),
                "general-q mismatch for {f:?}"
            );
        }
        // x^q at n = 2 is equivalent to the two-step trace: order q^(2n)
        let xq = LinPoly::monomial(&t, 1, f4.one()).unwrap();
        let rep = compute_stabilizer(&xq);
        assert_eq!(rep.order, Some(256));
        assert!(!rep.is_field);
    }

    #[test]
    fn budget_is_enforced() {
        let t = tower(2, 4);
        let f = LinPoly::identity(&t);
        let opts = EnumOpts::with_budget(1000);
        assert!(matches!(
            brute_force_stabilizer(&f, &opts).unwrap_err(),
            Error::BudgetExceeded { budget: 1000, .. }
        ));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let t = tower(2, 3);
        let f = LinPoly::trace_poly(&t, 1).unwrap();
        let one = brute_force_stabilizer(
            &f,
            &EnumOpts {
                budget: 1 << 24,
                workers: 1,
            },
        )
        .unwrap();
        let four = brute_force_stabilizer(
            &f,
            &EnumOpts {
                budget: 1 << 24,
                workers: 4,
            },
        )
        .unwrap();
        assert!(same_stabilizer(&one, &four));
    }

    #[test]
    fn equivalent_polynomials_have_isomorphic_stabilizers() {
        // dimension and field verdict are preserved under the semilinear
        // graph equivalence
        use crate::geometry::{apply_transform, TransformResult};
        let t = tower(2, 4);
        let fld = t.field().clone();
        let mut rng = SplitMix64::new(0x1717);
        let mut transformed = 0;
        for _ in 0..10 {
            let f = LinPoly::from_raw(&t, (0..4).map(|_| rng.below(16)).collect());
            let a = loop {
                let cand = Mat2::new(
                    fld.el(rng.below(16)).unwrap(),
                    fld.el(rng.below(16)).unwrap(),
                    fld.el(rng.below(16)).unwrap(),
                    fld.el(rng.below(16)).unwrap(),
                );
                if !fld.is_zero(cand.det(&fld)) {
                    break cand;
                }
            };
            let sigma = rng.below(4) as usize;
            if let TransformResult::Graph(g) = apply_transform(&a, sigma, &f).unwrap() {
                let sf = compute_stabilizer(&f);
                let sg = compute_stabilizer(&g);
                assert_eq!(sf.dim, sg.dim, "f = {f:?}, g = {g:?}");
                assert_eq!(sf.is_field, sg.is_field);
                transformed += 1;
            }
        }
        assert!(transformed > 0);
    }

    #[test]
    fn scalar_matrices_always_stabilize() {
        let t = tower(3, 3);
        let fld = t.field().clone();
        let mut rng = SplitMix64::new(7);
        for _ in 0..10 {
            let f = LinPoly::from_raw(&t, (0..3).map(|_| rng.below(27)).collect());
            let report = compute_stabilizer(&f);
            assert!(report.dim >= 1);
            // lambda * identity for lambda in F_q is always a member
            for lam in 0..3u64 {
                let l = fld.el(lam).unwrap();
                let m = Mat2::new(l, fld.zero(), fld.zero(), l);
                assert!(is_member(&f, &m));
            }
        }
    }
}
