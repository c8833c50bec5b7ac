//! The algebra L_{n,q} of q-polynomials modulo x^(q^n) - x.
//!
//! A [`LinPoly`] is sum of c_i x^(q^i) with exactly n coefficients in
//! F_{q^n}; as a map it is an F_q-linear endomorphism of F_{q^n}. Reduction
//! mod x^(q^n) - x is structural: exponents live in Z/nZ.

use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower};
use crate::linalg::Matrix;
use crate::subspace::{Ambient, FqSubspace};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct LinPoly {
    tower: Tower,
    coeffs: Vec<u64>, // length exactly n
}

impl fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl LinPoly {
    pub fn zero(tower: &Tower) -> LinPoly {
        LinPoly {
            tower: tower.clone(),
            coeffs: vec![0; tower.n()],
        }
    }

    /// The identity polynomial x.
    pub fn identity(tower: &Tower) -> LinPoly {
        LinPoly::monomial(tower, 0, tower.field().one()).expect("one is a member")
    }

    /// c x^(q^i); the exponent is reduced mod n.
    pub fn monomial(tower: &Tower, i: usize, c: FieldElem) -> Result<LinPoly> {
        let enc = tower.field().ensure_member(c)?;
        let mut coeffs = vec![0; tower.n()];
        coeffs[i % tower.n()] = enc;
        Ok(LinPoly {
            tower: tower.clone(),
            coeffs,
        })
    }

    /// Exactly n coefficients c_0..c_{n-1}.
    pub fn from_coeffs(tower: &Tower, coeffs: Vec<FieldElem>) -> Result<LinPoly> {
        if coeffs.len() != tower.n() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients, got {}",
                tower.n(),
                coeffs.len()
            )));
        }
        let encs = coeffs
            .into_iter()
            .map(|c| tower.field().ensure_member(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinPoly {
            tower: tower.clone(),
            coeffs: encs,
        })
    }

    /// Sum of terms (exponent, coefficient); exponents reduce mod n and
    /// repeated exponents accumulate.
    pub fn from_terms(tower: &Tower, terms: &[(usize, FieldElem)]) -> Result<LinPoly> {
        let f = tower.field();
        let mut coeffs = vec![0u64; tower.n()];
        for &(i, c) in terms {
            let enc = f.ensure_member(c)?;
            let k = i % tower.n();
            coeffs[k] = f.radd(coeffs[k], enc);
        }
        Ok(LinPoly {
            tower: tower.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_raw(tower: &Tower, coeffs: Vec<u64>) -> LinPoly {
        debug_assert_eq!(coeffs.len(), tower.n());
        LinPoly {
            tower: tower.clone(),
            coeffs,
        }
    }

    /// The relative trace Tr_{q^n / q^t} as a polynomial; t | n.
    pub fn trace_poly(tower: &Tower, t: usize) -> Result<LinPoly> {
        let n = tower.n();
        if t == 0 || !n.is_multiple_of(t) {
            return Err(Error::NonDivisor(t));
        }
        let mut coeffs = vec![0u64; n];
        for j in 0..n / t {
            coeffs[t * j] = 1;
        }
        Ok(LinPoly {
            tower: tower.clone(),
            coeffs,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.tower
            .field()
            .el(self.coeffs[i])
            .expect("stored encoding")
    }

    pub(crate) fn coeffs_raw(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff_encodings(&self) -> Vec<u64> {
        self.coeffs.clone()
    }

    /// Largest i with c_i != 0; None for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Whether f lies in the F_{q^n}-span of x, i.e. f = c x.
    pub fn is_in_span_of_x(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &LinPoly) -> LinPoly {
        assert_eq!(self.tower, other.tower, "mixed towers");
        let f = self.tower.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.radd(a, b))
            .collect();
        LinPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &LinPoly) -> LinPoly {
        assert_eq!(self.tower, other.tower, "mixed towers");
        let f = self.tower.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.rsub(a, b))
            .collect();
        LinPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    /// Left scalar action: the polynomial alpha f(x).
    pub fn scale(&self, alpha: FieldElem) -> LinPoly {
        let f = self.tower.field();
        let a = f.ensure_member(alpha).expect("scalar from another context");
        let coeffs = self.coeffs.iter().map(|&c| f.rmul(a, c)).collect();
        LinPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> LinPoly {
        let f = self.tower.field();
        let coeffs = self.coeffs.iter().map(|&c| f.rneg(c)).collect();
        LinPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    pub(crate) fn reval(&self, x: u64) -> u64 {
        let f = self.tower.field();
        let mut acc = 0u64;
        let mut xi = x;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi = self.tower.rfrob(xi, 1);
            }
            if c != 0 {
                acc = f.radd(acc, f.rmul(c, xi));
            }
        }
        acc
    }

    pub fn eval(&self, x: FieldElem) -> Result<FieldElem> {
        let enc = self
            .tower
            .field()
            .ensure_member(x)
            .map_err(|_| Error::ContextMismatch)?;
        Ok(self.tower.field().el_unchecked(self.reval(enc)))
    }

    /// Value table indexed by element encoding.
    pub fn value_table(&self) -> Vec<u64> {
        (0..self.tower.field_size())
            .map(|x| self.reval(x))
            .collect()
    }

    /// Composition f(g(x)) reduced mod x^(q^n) - x:
    /// result_k = sum over i+j = k (mod n) of a_i b_j^(q^i).
    pub fn compose(&self, g: &LinPoly) -> LinPoly {
        assert_eq!(self.tower, g.tower, "mixed towers");
        let f = self.tower.field();
        let n = self.tower.n();
        // b_j^(q^i), computed progressively over i
        let mut frob = g.coeffs.clone();
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for b in frob.iter_mut() {
                    *b = self.tower.rfrob(*b, 1);
                }
            }
            if a == 0 {
                continue;
            }
            for (j, &b) in frob.iter().enumerate() {
                if b != 0 {
                    let k = (i + j) % n;
                    out[k] = f.radd(out[k], f.rmul(a, b));
                }
            }
        }
        LinPoly {
            tower: self.tower.clone(),
            coeffs: out,
        }
    }

    /// Matrix over F_q with respect to the canonical basis: column j holds
    /// the coordinates of f(basis_j).
    pub fn matrix(&self) -> Matrix {
        let n = self.tower.n();
        let mut m = Matrix::zeros(n, n);
        for (j, &b) in self.tower.q_basis_raw().iter().enumerate() {
            let img = self.tower.coords(self.reval(b));
            for (r, &v) in img.iter().enumerate() {
                m.set(r, j, v);
            }
        }
        m
    }

    /// Matrix with respect to an arbitrary F_q-basis of F_{q^n}.
    pub fn matrix_wrt(&self, basis: &[FieldElem]) -> Result<Matrix> {
        let n = self.tower.n();
        if basis.len() != n {
            return Err(Error::DependentBasis);
        }
        let encs: Vec<u64> = basis
            .iter()
            .map(|&b| self.tower.field().ensure_member(b))
            .collect::<Result<_>>()?;
        // change of basis: columns are coordinates of basis vectors
        let mut cb = Matrix::zeros(n, n);
        for (j, &b) in encs.iter().enumerate() {
            for (r, &v) in self.tower.coords(b).iter().enumerate() {
                cb.set(r, j, v);
            }
        }
        let f = self.tower.field();
        let cb_inv = cb.inverse(f).ok_or(Error::DependentBasis)?;
        let mut img = Matrix::zeros(n, n);
        for (j, &b) in encs.iter().enumerate() {
            for (r, &v) in self.tower.coords(self.reval(b)).iter().enumerate() {
                img.set(r, j, v);
            }
        }
        Ok(cb_inv.mul(f, &img))
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank(self.tower.field())
    }

    /// Kernel {x : f(x) = 0} as a canonical F_q-subspace of F_{q^n}.
    pub fn kernel(&self) -> FqSubspace {
        let ns = self.matrix().nullspace(self.tower.field());
        FqSubspace::from_coord_rows(Ambient::line(self.tower.clone()), ns)
    }

    /// Image f(F_{q^n}) as a canonical F_q-subspace.
    pub fn image(&self) -> FqSubspace {
        FqSubspace::from_coord_rows(Ambient::line(self.tower.clone()), self.matrix().transpose())
    }

    /// The unique f with f(y_i) = w_i for an F_q-basis {y_i}, by solving the
    /// Moore system sum_j c_j y_i^(q^j) = w_i over F_{q^n}.
    pub fn interpolate(tower: &Tower, pairs: &[(FieldElem, FieldElem)]) -> Result<LinPoly> {
        let n = tower.n();
        let f = tower.field();
        if pairs.len() != n {
            return Err(Error::DependentSamplePoints);
        }
        let ys: Vec<u64> = pairs
            .iter()
            .map(|&(y, _)| f.ensure_member(y))
            .collect::<Result<_>>()?;
        let ws: Vec<u64> = pairs
            .iter()
            .map(|&(_, w)| f.ensure_member(w))
            .collect::<Result<_>>()?;
        let coord_rows: Vec<Vec<u64>> = ys.iter().map(|&y| tower.coords(y)).collect();
        if Matrix::from_rows(coord_rows).rank(f) != n {
            return Err(Error::DependentSamplePoints);
        }
        let mut moore = Matrix::zeros(n, n);
        for (i, &y) in ys.iter().enumerate() {
            let mut yj = y;
            for j in 0..n {
                if j > 0 {
                    yj = tower.rfrob(yj, 1);
                }
                moore.set(i, j, yj);
            }
        }
        let coeffs = moore
            .solve(f, &ws)
            .map_err(|_| Error::SingularMooreMatrix)?;
        Ok(LinPoly {
            tower: tower.clone(),
            coeffs,
        })
    }

    /// The compositional inverse in L_{n,q}, when f is bijective.
    pub fn inverse(&self) -> Option<LinPoly> {
        let f = self.tower.field();
        let basis = self.tower.q_basis();
        let pairs: Vec<(FieldElem, FieldElem)> = basis
            .iter()
            .map(|&b| (f.el_unchecked(self.reval(b.encoding())), b))
            .collect();
        LinPoly::interpolate(&self.tower, &pairs).ok()
    }

    /// Whether f is F_{q^s}-linear, s | n. Checks the coefficient-support
    /// characterization (c_i = 0 for i not divisible by s) against the
    /// definition f(lambda x) = lambda f(x) and insists they agree.
    pub fn sublinear_over(&self, s: usize) -> Result<bool> {
        let n = self.tower.n();
        if s == 0 || !n.is_multiple_of(s) {
            return Err(Error::NonDivisor(s));
        }
        let by_support = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % s == 0);
        let f = self.tower.field();
        let lambda_basis = self.tower.subfield_q_basis(s)?;
        let by_definition = lambda_basis.iter().all(|&lam| {
            self.tower.q_basis_raw().iter().all(|&b| {
                let lhs = self.reval(f.rmul(lam.encoding(), b));
                let rhs = f.rmul(lam.encoding(), self.reval(b));
                lhs == rhs
            })
        });
        assert_eq!(
            by_support, by_definition,
            "sublinearity characterizations disagree"
        );
        Ok(by_support)
    }

    /// Conjugate by the p-power automorphism sigma = x -> x^(p^j): the
    /// polynomial sigma . f . sigma^{-1}, whose coefficients are c_i^(p^j).
    pub fn frob_conjugate(&self, j: usize) -> LinPoly {
        let f = self.tower.field();
        let coeffs = self.coeffs.iter().map(|&c| f.rfrobp(c, j)).collect();
        LinPoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    /// Literal form "c0,c1,...,c_{n-1}" of canonical encodings.
    pub fn literal(&self) -> String {
        self.coeffs
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human form like "x^q1 + 3*x^q4"; zero polynomial prints "0".
    pub fn pretty(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| {
                let var = if i == 0 {
                    "x".to_string()
                } else {
                    format!("x^q{i}")
                };
                if c == 1 {
                    var
                } else {
                    format!("{c}*{var}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Parse either the literal comma form or the human term form.
    pub fn parse(tower: &Tower, s: &str) -> Result<LinPoly> {
        let s = s.trim();
        if s.contains('x') {
            Self::parse_terms(tower, s)
        } else {
            let coeffs = s
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::ParseError(format!("bad coefficient {tok:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != tower.n() {
                return Err(Error::ParseError(format!(
                    "expected {} coefficients, got {}",
                    tower.n(),
                    coeffs.len()
                )));
            }
            let elems = coeffs
                .into_iter()
                .map(|c| {
                    tower
                        .field()
                        .el(c)
                        .map_err(|_| Error::ParseError(format!("encoding {c} out of range")))
                })
                .collect::<Result<Vec<_>>>()?;
            LinPoly::from_coeffs(tower, elems)
        }
    }

    fn parse_terms(tower: &Tower, s: &str) -> Result<LinPoly> {
        let f = tower.field();
        let normalized = s.replace('-', "+-").replace(' ', "");
        let mut terms = Vec::new();
        for tok in normalized.split('+').filter(|t| !t.is_empty()) {
            let (neg, tok) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let (coef_str, var) = match tok.split_once('*') {
                Some((c, v)) => (Some(c), v),
                None => (None, tok),
            };
            let exp = if var == "x" {
                0usize
            } else if let Some(e) = var.strip_prefix("x^q") {
                if e.is_empty() {
                    1
                } else {
                    e.parse::<usize>()
                        .map_err(|_| Error::ParseError(format!("bad exponent in {tok:?}")))?
                }
            } else {
                return Err(Error::ParseError(format!("unrecognized term {tok:?}")));
            };
            let coef = match coef_str {
                Some(c) => {
                    let enc = c
                        .parse::<u64>()
                        .map_err(|e| Error::ParseError(format!("bad coefficient {c:?}: {e}")))?;
                    f.el(enc)
                        .map_err(|_| Error::ParseError(format!("encoding {enc} out of range")))?
                }
                None => f.one(),
            };
            let coef = if neg { f.neg(coef) } else { coef };
            terms.push((exp, coef));
        }
        LinPoly::from_terms(tower, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn tower(p: u64, k: usize) -> Tower {
        Field::new(p, k).unwrap().prime_tower()
    }

    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            self.0
        }
    }

    fn random_poly(t: &Tower, rng: &mut Rng) -> LinPoly {
        let coeffs = (0..t.n()).map(|_| rng.next() % t.field_size()).collect();
        LinPoly::from_raw(t, coeffs)
    }

    #[test]
    fn eval_basics() {
        let t = tower(2, 4);
        let f = t.field().clone();
        let id = LinPoly::identity(&t);
        let zero = LinPoly::zero(&t);
        for x in 0..16 {
            assert_eq!(id.reval(x), x);
            assert_eq!(zero.reval(x), 0);
        }
        // f = x^q over F_9 is cubing
        let t9 = tower(3, 2);
        let xq = LinPoly::monomial(&t9, 1, t9.field().one()).unwrap();
        for x in 0..9 {
            let f9 = t9.field();
            assert_eq!(xq.reval(x), f9.rmul(x, f9.rmul(x, x)));
        }
        drop(f);
    }

    #[test]
    fn eval_is_additive_and_homogeneous() {
        let t = tower(2, 4);
        let mut rng = Rng(42);
        let f = random_poly(&t, &mut rng);
        let fld = t.field();
        for x in 0..16 {
            for y in 0..16 {
                assert_eq!(f.reval(fld.radd(x, y)), fld.radd(f.reval(x), f.reval(y)));
            }
        }
    }

    #[test]
    fn compose_matches_pointwise_oracle() {
        // exhaustive evaluation oracle over F_16
        let t = tower(2, 4);
        let mut rng = Rng(7);
        for _ in 0..20 {
            let f = random_poly(&t, &mut rng);
            let g = random_poly(&t, &mut rng);
            let fg = f.compose(&g);
            for x in 0..16 {
                assert_eq!(fg.reval(x), f.reval(g.reval(x)));
            }
        }
        // monomial law with index arithmetic mod n
        let xq = LinPoly::monomial(&t, 1, t.field().one()).unwrap();
        let xq2 = LinPoly::monomial(&t, 2, t.field().one()).unwrap();
        assert_eq!(xq.compose(&xq), xq2);
        let f = random_poly(&t, &mut rng);
        assert_eq!(f.compose(&LinPoly::identity(&t)), f);
    }

    #[test]
    fn compose_associative_and_distributive() {
        let t = tower(2, 3);
        let mut rng = Rng(99);
        for _ in 0..50 {
            let f = random_poly(&t, &mut rng);
            let g = random_poly(&t, &mut rng);
            let h = random_poly(&t, &mut rng);
            assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
            assert_eq!(f.add(&g).compose(&h), f.compose(&h).add(&g.compose(&h)));
        }
    }

    #[test]
    fn matrix_and_rank() {
        let t = tower(2, 4);
        assert_eq!(LinPoly::identity(&t).matrix(), Matrix::identity(4));
        // trace onto F_{q^2} has rank 2
        let tr = LinPoly::trace_poly(&t, 2).unwrap();
        assert_eq!(tr.rank(), 2);
        assert_eq!(tr.kernel().dim(), 2);
        // matrix of a composition is the product of matrices
        let mut rng = Rng(3);
        let f = random_poly(&t, &mut rng);
        let g = random_poly(&t, &mut rng);
        assert_eq!(
            f.compose(&g).matrix(),
            f.matrix().mul(t.field(), &g.matrix())
        );
    }

    #[test]
    fn rank_is_basis_independent() {
        let t = tower(3, 3);
        let f = t.field().clone();
        let mut rng = Rng(17);
        for _ in 0..10 {
            let poly = random_poly(&t, &mut rng);
            // build a random basis by rejection
            let basis = loop {
                let cand: Vec<FieldElem> = (0..3).map(|_| f.el(rng.next() % 27).unwrap()).collect();
                let rows: Vec<Vec<u64>> = cand.iter().map(|&b| t.coords(b.encoding())).collect();
                if Matrix::from_rows(rows).rank(&f) == 3 {
                    break cand;
                }
            };
            let m = poly.matrix_wrt(&basis).unwrap();
            assert_eq!(m.rank(&f), poly.rank());
        }
    }

    #[test]
    fn kernel_cases() {
        let t = tower(2, 4);
        assert_eq!(LinPoly::identity(&t).kernel().dim(), 0);
        // x^q - x has kernel F_q
        let frob_minus_id = LinPoly::monomial(&t, 1, t.field().one())
            .unwrap()
            .sub(&LinPoly::identity(&t));
        assert_eq!(frob_minus_id.kernel().dim(), 1);
        // Tr_{q^6/q^3} has kernel of dimension n - t
        let t6 = tower(2, 6);
        let tr = LinPoly::trace_poly(&t6, 3).unwrap();
        assert_eq!(tr.kernel().dim(), 3);
        assert_eq!(tr.rank(), 3);
    }

    #[test]
    fn q_degree_bounds_kernel() {
        let t = tower(3, 4);
        let mut rng = Rng(5);
        for _ in 0..200 {
            let f = random_poly(&t, &mut rng);
            if let Some(d) = f.q_degree() {
                assert!(
                    f.kernel().dim() <= d,
                    "kernel dim exceeds q-degree for {f:?}"
                );
                assert_eq!(f.rank() + f.kernel().dim(), 4);
            }
        }
    }

    #[test]
    fn interpolation_roundtrip() {
        let t = tower(2, 4);
        let basis = t.q_basis();
        // identity and zero
        let pairs: Vec<_> = basis.iter().map(|&b| (b, b)).collect();
        assert_eq!(
            LinPoly::interpolate(&t, &pairs).unwrap(),
            LinPoly::identity(&t)
        );
        let pairs: Vec<_> = basis.iter().map(|&b| (b, t.field().zero())).collect();
        assert_eq!(LinPoly::interpolate(&t, &pairs).unwrap(), LinPoly::zero(&t));
        // graph of a random polynomial reproduces all its coefficients
        let mut rng = Rng(11);
        for _ in 0..20 {
            let f = random_poly(&t, &mut rng);
            let pairs: Vec<_> = basis.iter().map(|&b| (b, f.eval(b).unwrap())).collect();
            assert_eq!(LinPoly::interpolate(&t, &pairs).unwrap(), f);
        }
        // dependent sample points are rejected
        let f = t.field();
        let dep = vec![
            (f.el(1).unwrap(), f.el(1).unwrap()),
            (f.el(2).unwrap(), f.el(2).unwrap()),
            (f.el(3).unwrap(), f.el(3).unwrap()),
            (f.el(4).unwrap(), f.el(4).unwrap()),
        ];
        assert_eq!(
            LinPoly::interpolate(&t, &dep).unwrap_err(),
            Error::DependentSamplePoints
        );
    }

    #[test]
    fn sublinearity() {
        let t = tower(2, 4);
        let mut rng = Rng(23);
        let f = random_poly(&t, &mut rng);
        assert!(f.sublinear_over(1).unwrap());
        let tr = LinPoly::trace_poly(&t, 2).unwrap();
        assert!(tr.sublinear_over(2).unwrap());
        let xq = LinPoly::monomial(&t, 1, t.field().one()).unwrap();
        assert!(!xq.sublinear_over(2).unwrap());
        assert_eq!(xq.sublinear_over(3).unwrap_err(), Error::NonDivisor(3));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let t = tower(2, 5);
        let xq = LinPoly::monomial(&t, 1, t.field().one()).unwrap();
        let inv = xq.inverse().unwrap();
        assert_eq!(xq.compose(&inv), LinPoly::identity(&t));
        assert_eq!(inv.compose(&xq), LinPoly::identity(&t));
        let tr = LinPoly::trace_poly(&t, 1).unwrap();
        assert!(tr.inverse().is_none());
    }

    #[test]
    fn parse_and_print() {
        let t = tower(2, 4);
        let f = LinPoly::parse(&t, "x^q1 + 3*x").unwrap();
        assert_eq!(f.coeff_encodings(), vec![3, 1, 0, 0]);
        assert_eq!(LinPoly::parse(&t, &f.literal()).unwrap(), f);
        assert_eq!(LinPoly::parse(&t, &f.pretty()).unwrap(), f);
        assert_eq!(
            LinPoly::parse(&t, "x^q").unwrap().coeff_encodings(),
            vec![0, 1, 0, 0]
        );
        assert!(LinPoly::parse(&t, "y + 2").is_err());
        assert!(LinPoly::parse(&t, "1,2,3").is_err());
        // minus folds into the coefficient (char 2: -1 = 1)
        let g = LinPoly::parse(&t, "x - x^q2").unwrap();
        assert_eq!(g.coeff_encodings(), vec![1, 0, 1, 0]);
    }
}
