//! Rank-metric codes from linearized polynomials: the two-dimensional
//! F_{q^n}-linear code spanned by x and f, its minimum distance and Singleton
//! bound, left and right idealizers, the restriction to a subfield domain,
//! and the isomorphism between the graph stabilizer and the right idealizer.
//!
//! Codewords are F_q-linear maps stored as matrices over F_q (codomain rows,
//! domain columns). The code itself is the F_q-span of its generators, kept
//! as a canonical reduced basis of flattened matrices.

use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower};
use crate::geometry::{scatteredness, weight_spectrum_poly};
use crate::linalg::{reduce_against, Matrix};
use crate::linpoly::LinPoly;
use crate::stabilizer::{StabReport, VerdictMode};
use crate::subspace::q_elements;
use crate::util::{par_ranges, scan_span_for, EnumOpts};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// An F_q-linear rank-metric code of maps F_q^domain -> F_q^n.
#[derive(Clone, Debug)]
pub struct RankCode {
    tower: Tower,
    domain_dim: usize,
    gens: Vec<Matrix>,
    /// Canonical reduced basis of the span, rows of length n * domain_dim.
    span: Matrix,
    fqn_linear: bool,
    degenerate: bool,
    source: Option<LinPoly>,
    /// Set when the code is the restriction of C_f to F_{q^t}.
    restricted_from: Option<(LinPoly, usize)>,
}

fn flatten(m: &Matrix) -> Vec<u64> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

fn unflatten(v: &[u64], rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, v[r * cols + c]);
        }
    }
    m
}

impl RankCode {
    /// C_f = <x, f> over F_{q^n}, as the F_q-span of the 2n generators
    /// b_i x and b_i f. When f lies in <x> the code degenerates to <x>.
    pub fn from_poly(f: &LinPoly) -> RankCode {
        let tower = f.tower().clone();
        let n = tower.n();
        let x = LinPoly::identity(&tower);
        let mut gens = Vec::with_capacity(2 * n);
        for &b in &tower.q_basis() {
            gens.push(x.scale(b).matrix());
        }
        for &b in &tower.q_basis() {
            gens.push(f.scale(b).matrix());
        }
        let degenerate = f.is_in_span_of_x();
        Self::build(tower, n, gens, true, degenerate, Some(f.clone()), None)
    }

    /// A code from explicit generator maps (codomain dimension n).
    pub fn from_generators(tower: Tower, domain_dim: usize, gens: Vec<Matrix>) -> RankCode {
        Self::build(tower, domain_dim, gens, false, false, None, None)
    }

    fn build(
        tower: Tower,
        domain_dim: usize,
        gens: Vec<Matrix>,
        fqn_linear: bool,
        degenerate: bool,
        source: Option<LinPoly>,
        restricted_from: Option<(LinPoly, usize)>,
    ) -> RankCode {
        let rows: Vec<Vec<u64>> = gens.iter().map(flatten).collect();
        let span =
            Matrix::from_rows_with_cols(rows, tower.n() * domain_dim).row_space(tower.field());
        RankCode {
            tower,
            domain_dim,
            gens,
            span,
            fqn_linear,
            degenerate,
            source,
            restricted_from,
        }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }
    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }
    pub fn codomain_dim(&self) -> usize {
        self.tower.n()
    }
    pub fn dim(&self) -> usize {
        self.span.rows()
    }
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn contains_map(&self, m: &Matrix) -> bool {
        let mut v = flatten(m);
        reduce_against(self.tower.field(), &self.span, &mut v);
        v.iter().all(|&x| x == 0)
    }

    /// Minimum rank over nonzero codewords. The F_{q^n}-linear case runs
    /// through the q^n + 1 projective codewords m x + f (rank is invariant
    /// under F_{q^n}-scaling); general codes enumerate projective
    /// representatives of the span within the candidate budget.
    pub fn min_distance(&self, opts: &EnumOpts) -> Result<usize> {
        let n = self.tower.n();
        if self.dim() == 0 {
            return Err(Error::ShapeMismatch(
                "minimum distance of the zero code".into(),
            ));
        }
        if let (true, Some(f)) = (self.fqn_linear, self.source.as_ref()) {
            if self.degenerate {
                return Ok(n); // <x>: every nonzero codeword is invertible
            }
            // d = n - max weight: rank(m x + f) = n - dim ker(f - (-m) x)
            return Ok(n - weight_spectrum_poly(f).max_weight());
        }
        if let Some((f, t)) = self.restricted_from.as_ref() {
            return Ok(self.restricted_min_distance(f, *t));
        }
        let q = self.tower.q();
        let dim = self.dim();
        let candidates = ((q as u128).pow(dim as u32) - 1) / (q as u128 - 1);
        if candidates > opts.budget as u128 {
            return Err(Error::BudgetExceeded {
                budget: opts.budget,
                needed: candidates.min(u64::MAX as u128) as u64,
            });
        }
        let fld = self.tower.field().clone();
        let q_elems = q_elements(&self.tower);
        let mut best = n.min(self.domain_dim);
        // projective representatives: first nonzero coefficient equal 1
        for lead in 0..dim {
            let tail = dim - lead - 1;
            let total = (q_elems.len() as u64).pow(tail as u32);
            let ranks = par_ranges(total, opts.workers, |range| {
                let mut out = Vec::new();
                for idx in range {
                    let mut v = self.span.row(lead).to_vec();
                    let mut rest = idx;
                    for j in 0..tail {
                        let lam = q_elems[(rest % q_elems.len() as u64) as usize];
                        rest /= q_elems.len() as u64;
                        if lam != 0 {
                            let row = self.span.row(lead + 1 + j);
                            for (c, &x) in v.iter_mut().zip(row) {
                                *c = fld.radd(*c, fld.rmul(lam, x));
                            }
                        }
                    }
                    out.push(unflatten(&v, n, self.domain_dim).rank(&fld));
                }
                out
            });
            best = best.min(ranks.into_iter().min().unwrap_or(best));
        }
        Ok(best)
    }

    /// Ranks of restricted codewords through kernels: the codeword
    /// (m x + f) restricted to F_{q^t} has rank t - dim(ker(f + m x) ∩
    /// F_{q^t}); projective representatives are these plus x itself (rank
    /// t). Zero restrictions are skipped.
    fn restricted_min_distance(&self, f: &LinPoly, t: usize) -> usize {
        let tower = &self.tower;
        let fld = tower.field().clone();
        let n = tower.n();
        let sub_rows: Vec<Vec<u64>> = tower
            .subfield_q_basis(t)
            .expect("t divides n")
            .iter()
            .map(|s| tower.coords(s.encoding()))
            .collect();
        let w = Matrix::from_rows(sub_rows);
        let w_space = crate::subspace::FqSubspace::from_coord_rows(
            crate::subspace::Ambient::line(tower.clone()),
            w,
        );
        let mf = f.matrix();
        let mut best = t; // the codeword x restricts with full rank t
        for m in 0..tower.field_size() {
            let mut mat = crate::geometry::mult_matrix(tower, m);
            for r in 0..n {
                for c in 0..n {
                    mat.set(r, c, fld.radd(mf.get(r, c), mat.get(r, c)));
                }
            }
            let ker = crate::subspace::FqSubspace::from_coord_rows(
                crate::subspace::Ambient::line(tower.clone()),
                mat.nullspace(&fld),
            );
            let hidden = ker.intersect(&w_space).expect("same ambient").dim();
            if hidden < t {
                best = best.min(t - hidden);
            }
        }
        best
    }

    /// Delsarte's Singleton-like bound: |C| <= q^(max(m,n) (min(m,n)-d+1)),
    /// with m the codomain and n the domain F_q-dimension.
    pub fn singleton_check(&self, d: usize) -> SingletonReport {
        let m = self.codomain_dim();
        let n = self.domain_dim();
        let bound_log_q = m.max(n) * (m.min(n) + 1 - d);
        SingletonReport {
            bound_log_q,
            is_mrd: self.dim() == bound_log_q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingletonReport {
    /// log_q of the Singleton bound on |C|.
    pub bound_log_q: usize,
    pub is_mrd: bool,
}

/// Basis and field structure of a left or right idealizer.
#[derive(Clone, Debug)]
pub struct IdealizerReport {
    pub side: Side,
    pub dim: usize,
    pub order: Option<u64>,
    /// Maps of the domain (right) or codomain (left) into itself.
    pub basis: Vec<Matrix>,
    pub is_field: bool,
    pub witness: Option<Matrix>,
    pub mode: VerdictMode,
    pub closure_checked: bool,
    span: Matrix,
    field: crate::field::Field,
}

impl IdealizerReport {
    pub fn contains(&self, m: &Matrix) -> bool {
        let mut v = flatten(m);
        reduce_against(&self.field, &self.span, &mut v);
        v.iter().all(|&x| x == 0)
    }

    pub fn span_basis(&self) -> &Matrix {
        &self.span
    }
}

/// Solve the idealizer as one nullspace problem over F_q: the unknown map Z
/// (d^2 or n^2 entries) must satisfy G Z in span(C) (right) or Z G in
/// span(C) (left) for every generator G.
pub fn idealizer(code: &RankCode, side: Side) -> IdealizerReport {
    let tower = code.tower();
    let fld = tower.field().clone();
    let n = code.codomain_dim();
    let d = code.domain_dim();
    let z = match side {
        Side::Right => d,
        Side::Left => n,
    };
    let flat_len = n * d;
    // column for unknown entry (u, v) of Z, per generator: residual of
    // G E_uv (right) or E_uv G (left) after reduction against the span
    let mut system = Matrix::zeros(code.gens.len() * flat_len, z * z);
    for (gi, g) in code.gens.iter().enumerate() {
        for u in 0..z {
            for v in 0..z {
                let mut w = vec![0u64; flat_len];
                match side {
                    Side::Right => {
                        // G E_uv: column v of the product is column u of G
                        for r in 0..n {
                            w[r * d + v] = g.get(r, u);
                        }
                    }
                    Side::Left => {
                        // E_uv G: row u of the product is row v of G
                        for c in 0..d {
                            w[u * d + c] = g.get(v, c);
                        }
                    }
                }
                reduce_against(&fld, &code.span, &mut w);
                for (r, &x) in w.iter().enumerate() {
                    system.set(gi * flat_len + r, u * z + v, x);
                }
            }
        }
    }
    let sol = system.nullspace(&fld);
    let basis: Vec<Matrix> = (0..sol.rows())
        .map(|r| unflatten(sol.row(r), z, z))
        .collect();

    // identity always belongs; composition stays inside
    let span = sol.clone();
    let mut idv = flatten(&Matrix::identity(z));
    reduce_against(&fld, &span, &mut idv);
    assert!(
        idv.iter().all(|&x| x == 0),
        "idealizer must contain the identity"
    );
    let mut closure_checked = true;
    for a in &basis {
        for b in &basis {
            let mut v = flatten(&a.mul(&fld, b));
            reduce_against(&fld, &span, &mut v);
            if v.iter().any(|&x| x != 0) {
                closure_checked = false;
            }
        }
    }
    assert!(closure_checked, "idealizer is not closed under composition");

    let dim = basis.len();
    let q = tower.q();
    let order = (q as u128)
        .checked_pow(dim as u32)
        .and_then(|o| u64::try_from(o).ok());
    let exhaustive = order.is_some_and(|o| o <= 1 << 20);
    let q_elems = q_elements(tower);
    let rows: Vec<Vec<u64>> = basis.iter().map(flatten).collect();
    let mut pred = |v: &[u64]| v.iter().any(|&x| x != 0) && unflatten(v, z, z).rank(&fld) < z;
    let hit = scan_span_for(&fld, &q_elems, &rows, exhaustive, 0x1dea, &mut pred);
    let mode = if exhaustive {
        VerdictMode::Exhaustive
    } else {
        VerdictMode::Sampled
    };
    let (is_field, witness) = match hit {
        Some(v) => (false, Some(unflatten(&v, z, z))),
        None => (true, None),
    };
    IdealizerReport {
        side,
        dim,
        order,
        basis,
        is_field,
        witness,
        mode,
        closure_checked,
        span,
        field: fld,
    }
}

/// Outcome of checking the map (a b; c d) -> a x + b f between the graph
/// stabilizer and the right idealizer of C_f.
#[derive(Clone, Copy, Debug)]
pub struct PsiReport {
    pub dims_match: bool,
    pub maps_into: bool,
    pub injective: bool,
    pub multiplicative: bool,
}

impl PsiReport {
    pub fn ok(&self) -> bool {
        self.dims_match && self.maps_into && self.injective && self.multiplicative
    }
}

/// Verify that psi carries the computed stabilizer onto the computed right
/// idealizer: images lie in the idealizer, dimensions agree, the map is
/// injective, and products are respected on basis pairs.
pub fn verify_psi(f: &LinPoly, stab: &StabReport, right: &IdealizerReport) -> Result<PsiReport> {
    if f.is_in_span_of_x() {
        return Err(Error::DegenerateF);
    }
    let tower = f.tower();
    let fld = tower.field().clone();
    let x = LinPoly::identity(tower);
    let psi = |a: FieldElem, b: FieldElem| x.scale(a).add(&f.scale(b));

    let mut maps_into = true;
    let mut image_rows = Vec::new();
    for m in &stab.basis {
        let img = psi(m.a, m.b).matrix();
        if !right.contains(&img) {
            maps_into = false;
        }
        image_rows.push(flatten(&img));
    }
    let n = tower.n();
    let injective = Matrix::from_rows_with_cols(image_rows, n * n).rank(&fld) == stab.dim;
    let dims_match = stab.dim == right.dim;
    let mut multiplicative = true;
    for a in &stab.basis {
        for b in &stab.basis {
            let prod = a.mul(&fld, b);
            let lhs = psi(prod.a, prod.b).matrix();
            let rhs = psi(a.a, a.b).matrix().mul(&fld, &psi(b.a, b.b).matrix());
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }
    Ok(PsiReport {
        dims_match,
        maps_into,
        injective,
        multiplicative,
    })
}

/// The restricted code: every codeword of C_f viewed as a map from F_{q^t}
/// into F_{q^n} (an n x t matrix over F_q). When f is R-q^t-partially
/// scattered the restriction is injective on C_f and the result is MRD with
/// parameters (n, t, q; t-1); both facts are asserted in that case.
pub fn restrict_code(f: &LinPoly, t: usize) -> Result<RankCode> {
    let tower = f.tower().clone();
    let n = tower.n();
    if t == 0 || !n.is_multiple_of(t) {
        return Err(Error::BadDivisor(t));
    }
    let code = RankCode::from_poly(f);
    let sb = tower.subfield_q_basis(t)?;
    // n x t change of domain: columns are coordinates of the subfield basis
    let mut dom = Matrix::zeros(n, t);
    for (j, s) in sb.iter().enumerate() {
        for (r, &v) in tower.coords(s.encoding()).iter().enumerate() {
            dom.set(r, j, v);
        }
    }
    let fld = tower.field().clone();
    let gens: Vec<Matrix> = code.gens.iter().map(|g| g.mul(&fld, &dom)).collect();
    let restricted = RankCode::build(
        tower.clone(),
        t,
        gens,
        false,
        code.degenerate,
        None,
        Some((f.clone(), t)),
    );

    let r_pt_applies = t > 1 && t < n && !f.is_in_span_of_x();
    if r_pt_applies && scatteredness(f, t)?.r_pt {
        assert_eq!(
            restricted.dim(),
            2 * n,
            "restriction must be injective on C_f"
        );
        let d = restricted.min_distance(&EnumOpts::default())?;
        assert_eq!(d, t - 1, "restricted code must have minimum distance t - 1");
        assert!(
            restricted.singleton_check(d).is_mrd,
            "restricted code must be MRD"
        );
    }
    Ok(restricted)
}

/// Study of R(C_f) ∩ L_{t,n,q} and its image inside R of the restricted
/// code. The subspace condition g(F_{q^t}) ⊆ F_{q^t} is used (the setwise
/// equals variant is not a vector space); elements satisfying the setwise
/// equality are counted separately.
#[derive(Clone, Debug)]
pub struct LtnqReport {
    /// Whether f was R-q^t-partially scattered (the hypothesis of the
    /// inclusion and injectivity claims). Analysis runs either way.
    pub r_pt: bool,
    /// dim of {g in R(C_f) : g(F_{q^t}) ⊆ F_{q^t}}.
    pub intersection_dim: usize,
    /// Elements of that subspace with g(F_{q^t}) = F_{q^t} setwise.
    pub setwise_equal_count: u64,
    pub subspace_size: Option<u64>,
    /// Restrictions of the intersection lie inside R of the restricted code.
    pub inclusion_holds: bool,
    /// Restriction is injective on the intersection.
    pub injective: bool,
    /// |R(restricted)| >= |intersection|.
    pub inequality_holds: bool,
    pub restricted_idealizer_dim: usize,
}

pub fn ltnq_analysis(f: &LinPoly, t: usize) -> Result<LtnqReport> {
    let tower = f.tower().clone();
    let n = tower.n();
    if t == 0 || t >= n || !n.is_multiple_of(t) {
        return Err(Error::BadDivisor(t));
    }
    let fld = tower.field().clone();
    let r_pt = if t > 1 {
        scatteredness(f, t)?.r_pt
    } else {
        false
    };

    let code = RankCode::from_poly(f);
    let right = idealizer(&code, Side::Right);
    let restricted = restrict_code(f, t)?;
    let rright = idealizer(&restricted, Side::Right);

    // W = coordinate space of F_{q^t}; stabilizing maps M W ⊆ W
    let sb = tower.subfield_q_basis(t)?;
    let w_rows: Vec<Vec<u64>> = sb.iter().map(|s| tower.coords(s.encoding())).collect();
    let w = Matrix::from_rows(w_rows.clone()).row_space(&fld);
    let mut stab_system = Matrix::zeros(t * n, n * n);
    for (j, wj) in w_rows.iter().enumerate() {
        // residual of M w_j per unknown entry (u, v): e_u * w_j[v]
        for u in 0..n {
            for v in 0..n {
                let mut img = vec![0u64; n];
                img[u] = wj[v];
                reduce_against(&fld, &w, &mut img);
                for (r, &x) in img.iter().enumerate() {
                    let cur = stab_system.get(j * n + r, u * n + v);
                    stab_system.set(j * n + r, u * n + v, fld.radd(cur, x));
                }
            }
        }
    }
    let stabilizing = stab_system.nullspace(&fld);

    // intersection of the two row spaces inside F_q^(n^2)
    let right_span = right.span.clone();
    let inter = row_space_intersection(&fld, &right_span, &stabilizing);
    let intersection_dim = inter.rows();

    // restriction to a t x t matrix: coordinates of M w_j in the original
    // subfield basis (the same domain convention as the restricted code)
    let w_mat = Matrix::from_rows(w_rows.clone());
    let restrict_map = |flat: &[u64]| -> Matrix {
        let m = unflatten(flat, n, n);
        let mut out = Matrix::zeros(t, t);
        for (j, wj) in w_rows.iter().enumerate() {
            let img = m.matvec(&fld, wj);
            let coords = w_mat
                .transpose()
                .solve(&fld, &img)
                .expect("image lies in W");
            for (r, &x) in coords.iter().enumerate() {
                out.set(r, j, x);
            }
        }
        out
    };

    let mut inclusion_holds = true;
    let mut restr_rows = Vec::new();
    for r in 0..intersection_dim {
        let m = restrict_map(inter.row(r));
        if !rright.contains(&m) {
            inclusion_holds = false;
        }
        restr_rows.push(flatten(&m));
    }
    let injective = Matrix::from_rows_with_cols(restr_rows, t * t).rank(&fld) == intersection_dim;
    let inequality_holds = rright.dim >= intersection_dim;

    // count setwise equality g(F_{q^t}) = F_{q^t}: restriction has full rank
    let q = tower.q();
    let subspace_size = (q as u128)
        .checked_pow(intersection_dim as u32)
        .and_then(|o| u64::try_from(o).ok());
    let q_elems = q_elements(&tower);
    let basis_rows: Vec<Vec<u64>> = (0..intersection_dim)
        .map(|r| inter.row(r).to_vec())
        .collect();
    let mut setwise_equal_count = 0u64;
    let mut count_pred = |v: &[u64]| {
        if restrict_map(v).rank(&fld) == t {
            setwise_equal_count += 1;
        }
        false
    };
    scan_span_for(&fld, &q_elems, &basis_rows, true, 0, &mut count_pred);

    Ok(LtnqReport {
        r_pt,
        intersection_dim,
        setwise_equal_count,
        subspace_size,
        inclusion_holds,
        injective,
        inequality_holds,
        restricted_idealizer_dim: rright.dim,
    })
}

/// Canonical basis of the intersection of two row spaces.
pub(crate) fn row_space_intersection(fld: &crate::field::Field, a: &Matrix, b: &Matrix) -> Matrix {
    let stacked = a.vstack(b).expect("same width");
    let ker = stacked.transpose().nullspace(fld);
    let rows: Vec<Vec<u64>> = (0..ker.rows())
        .map(|r| {
            let lam = &ker.row(r)[..a.rows()];
            let mut v = vec![0u64; a.cols()];
            for (i, &l) in lam.iter().enumerate() {
                if l != 0 {
                    for (c, x) in v.iter_mut().enumerate() {
                        *x = fld.radd(*x, fld.rmul(l, a.get(i, c)));
                    }
                }
            }
            v
        })
        .collect();
    Matrix::from_rows_with_cols(rows, a.cols()).row_space(fld)
}
