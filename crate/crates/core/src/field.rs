//! Explicit construction of F_{p^k} with its subfield lattice.
//!
//! One field is built once as F_p[x]/(m) and every smaller field in play is a
//! subfield of it: F_q and F_{q^t} are realized as fixed fields of Frobenius
//! powers, with explicit bases. A [`Tower`] is a view of the same field as
//! F_{q^n} over F_q for q = p^e, e | k; coordinates, traces, norms and dual
//! bases are taken with respect to a tower.
//!
//! Elements are encoded as integers: sum of d_i p^i over the digits d_i in
//! the power basis of the modulus root, little-endian. Arithmetic is backed
//! by exp/log/Zech tables when the field is small enough and by polynomial
//! arithmetic otherwise.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fppoly;

/// Above this size no discrete-log tables are built and arithmetic falls
/// back to polynomial operations.
const TABLE_LIMIT: u64 = 1 << 21;
/// Hard cap on the field size.
const MAX_FIELD: u64 = 1 << 32;

const NONE32: u32 = u32::MAX;

static NEXT_CTX_ID: AtomicU32 = AtomicU32::new(1);

/// An element of one [`FieldCtx`]; a canonical integer encoding plus the id
/// of the context it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem {
    ctx: u32,
    enc: u64,
}

impl FieldElem {
    pub fn encoding(&self) -> u64 {
        self.enc
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc)
    }
}

struct Tables {
    generator: u64,
    exp: Vec<u64>,  // length 2N, exp[i] = enc(g^(i mod N))
    log: Vec<u32>,  // length size, log[0] = NONE32
    zech: Vec<u32>, // zech[i] = log(1 + g^i), NONE32 when 1 + g^i = 0
}

/// A subfield F_{p^d} of the ambient field, d | k.
pub struct Subfield {
    pub deg: usize,
    /// F_p-basis of the subfield, reduced echelon form, ascending pivots.
    pub fp_basis: Vec<u64>,
}

struct TowerData {
    e: usize,
    n: usize,
    /// Canonical F_q-basis of the whole field (greedy smallest encodings).
    q_basis: Vec<u64>,
    /// Digit vectors of the F_p-basis of F_q.
    sub_digits: Vec<Vec<u64>>,
    /// Maps element digits to the mu-coordinates over the product basis
    /// {s_j b_i}; None when e = 1 (digits are already the coordinates).
    mu_from_digits: Option<Vec<Vec<u64>>>,
}

/// The ambient field F_{p^k}. Immutable after construction; share it freely.
pub struct FieldCtx {
    id: u32,
    p: u64,
    k: usize,
    size: u64,
    modulus: Vec<u64>,
    pow_p: Vec<u64>,
    tables: Option<Tables>,
    subfields: Vec<Subfield>,
    towers: Vec<TowerData>,
}

/// Shared handle to a [`FieldCtx`].
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl std::ops::Deref for Field {
    type Target = FieldCtx;
    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.k)
    }
}

pub fn divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k.is_multiple_of(*d)).collect()
}

impl Field {
    /// Build F_{p^k} with the lexicographically smallest monic irreducible
    /// modulus (coefficients compared low degree first).
    pub fn new(p: u64, k: usize) -> Result<Field> {
        Self::build(p, k, None)
    }

    /// Build F_{p^k} with an explicit monic modulus, low degree first,
    /// length k+1.
    pub fn with_modulus(p: u64, k: usize, modulus: Vec<u64>) -> Result<Field> {
        Self::build(p, k, Some(modulus))
    }

    fn build(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
        if !fppoly::is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::BadModulus { expected: 0 });
        }
        let mut size: u64 = 1;
        let mut pow_p = Vec::with_capacity(k + 1);
        for _ in 0..=k {
            pow_p.push(size);
            size = size
                .checked_mul(p)
                .filter(|&s| s <= MAX_FIELD)
                .ok_or(Error::FieldTooLarge(p, k))?;
        }
        let size = pow_p[k]; // p^k
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|c| c % p).collect();
                if m.len() != k + 1 || m[k] != 1 {
                    return Err(Error::BadModulus { expected: k });
                }
                if !fppoly::is_irreducible(p, &m) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None => fppoly::smallest_irreducible(p, k),
        };

        let mut ctx = FieldCtx {
            id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
            p,
            k,
            size,
            modulus,
            pow_p,
            tables: None,
            subfields: Vec::new(),
            towers: Vec::new(),
        };
        if size <= TABLE_LIMIT {
            ctx.build_tables();
        }
        ctx.build_subfields();
        ctx.build_towers();
        Ok(Field(Arc::new(ctx)))
    }

    /// Tower view F_{q^n} over F_q with q = p^e; e must divide k.
    pub fn tower(&self, e: usize) -> Result<Tower> {
        let ti = self
            .towers
            .iter()
            .position(|t| t.e == e)
            .ok_or_else(|| Error::InvalidSubfield(self.p.pow(e as u32)))?;
        Ok(Tower {
            field: self.clone(),
            ti,
        })
    }

    /// The view over the prime field (q = p, n = k).
    pub fn prime_tower(&self) -> Tower {
        self.tower(1).expect("e = 1 always divides k")
    }

    /// Tower view with the base field given by its size q = p^e.
    pub fn tower_for_q(&self, q: u64) -> Result<Tower> {
        let mut e = 0usize;
        let mut acc = 1u64;
        while acc < q {
            acc *= self.p;
            e += 1;
        }
        if acc != q || e == 0 || !self.k.is_multiple_of(e) {
            return Err(Error::InvalidSubfield(q));
        }
        self.tower(e)
    }

    /// Parse a field specification string: "p^k" or "p^k/c0,c1,...,ck" with
    /// the modulus coefficients listed lowest degree first.
    pub fn parse_spec(spec: &str) -> Result<Field> {
        let (pk, modulus) = match spec.split_once('/') {
            Some((pk, m)) => (pk, Some(m)),
            None => (spec, None),
        };
        let (p_str, k_str) = pk
            .split_once('^')
            .ok_or_else(|| Error::ParseError(format!("field spec {spec:?} is not p^k")))?;
        let p = p_str
            .trim()
            .parse::<u64>()
            .map_err(|e| Error::ParseError(format!("bad characteristic: {e}")))?;
        let k = k_str
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::ParseError(format!("bad extension degree: {e}")))?;
        match modulus {
            None => Field::new(p, k),
            Some(m) => {
                let coeffs = m
                    .split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<u64>()
                            .map_err(|e| Error::ParseError(format!("bad modulus coefficient: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Field::with_modulus(p, k, coeffs)
            }
        }
    }
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn size(&self) -> u64 {
        self.size
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn subfields(&self) -> &[Subfield] {
        &self.subfields
    }

    /// The canonical multiplicative generator behind the discrete-log
    /// tables, when tables were built.
    pub fn generator(&self) -> Option<FieldElem> {
        self.tables.as_ref().map(|t| self.el_unchecked(t.generator))
    }

    /// Membership in the subfield F_{p^d} for a divisor d of k.
    pub fn in_subfield(&self, x: FieldElem, d: usize) -> bool {
        self.rin_subfield(self.guard(x), d)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            ctx: self.id,
            enc: 0,
        }
    }
    pub fn one(&self) -> FieldElem {
        FieldElem {
            ctx: self.id,
            enc: 1,
        }
    }

    /// Wrap an encoding as an element of this field.
    pub fn el(&self, enc: u64) -> Result<FieldElem> {
        if enc < self.size {
            Ok(FieldElem { ctx: self.id, enc })
        } else {
            Err(Error::BadEncoding(enc))
        }
    }

    pub(crate) fn el_unchecked(&self, enc: u64) -> FieldElem {
        debug_assert!(enc < self.size);
        FieldElem { ctx: self.id, enc }
    }

    /// Error (rather than panic) when an element comes from another context.
    pub fn ensure_member(&self, x: FieldElem) -> Result<u64> {
        if x.ctx == self.id {
            Ok(x.enc)
        } else {
            Err(Error::MixedContexts)
        }
    }

    #[inline]
    fn guard(&self, x: FieldElem) -> u64 {
        assert_eq!(x.ctx, self.id, "mixed field contexts");
        x.enc
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.el_unchecked(self.radd(self.guard(a), self.guard(b)))
    }
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.el_unchecked(self.rsub(self.guard(a), self.guard(b)))
    }
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.el_unchecked(self.rmul(self.guard(a), self.guard(b)))
    }
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.el_unchecked(self.rneg(self.guard(a)))
    }
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        self.rinv(self.guard(a))
            .map(|e| self.el_unchecked(e))
            .ok_or(Error::ZeroInverse)
    }
    pub fn pow(&self, a: FieldElem, e: u128) -> FieldElem {
        self.el_unchecked(self.rpow(self.guard(a), e))
    }
    pub fn is_zero(&self, a: FieldElem) -> bool {
        self.guard(a) == 0
    }

    /// Spec-level arithmetic dispatcher with error reporting.
    pub fn element_arithmetic(
        &self,
        a: FieldElem,
        b: Option<FieldElem>,
        op: ElemOp,
    ) -> Result<FieldElem> {
        let ae = self.ensure_member(a)?;
        let be = match b {
            Some(b) => Some(self.ensure_member(b)?),
            None => None,
        };
        let need = |x: Option<u64>| x.ok_or_else(|| Error::ParseError("missing operand".into()));
        Ok(match op {
            ElemOp::Add => self.el_unchecked(self.radd(ae, need(be)?)),
            ElemOp::Mul => self.el_unchecked(self.rmul(ae, need(be)?)),
            ElemOp::Inv => {
                return self
                    .rinv(ae)
                    .map(|e| self.el_unchecked(e))
                    .ok_or(Error::ZeroInverse)
            }
            ElemOp::Pow(e) => self.el_unchecked(self.rpow(ae, e)),
        })
    }

    // ---- raw arithmetic on encodings ----

    #[inline]
    pub(crate) fn radd(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        match &self.tables {
            Some(t) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let n = self.size - 1;
                let la = t.log[a as usize] as u64;
                let lb = t.log[b as usize] as u64;
                let d = (lb + n - la) % n;
                let z = t.zech[d as usize];
                if z == NONE32 {
                    0
                } else {
                    t.exp[(la + z as u64) as usize]
                }
            }
            None => self.digit_add(a, b),
        }
    }

    #[inline]
    pub(crate) fn rneg(&self, a: u64) -> u64 {
        if self.p == 2 || a == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let n = self.size - 1;
                t.exp[(t.log[a as usize] as u64 + n / 2) as usize]
            }
            None => {
                let mut digits = self.decode(a);
                for d in &mut digits {
                    *d = (self.p - *d) % self.p;
                }
                self.encode(&digits)
            }
        }
    }

    #[inline]
    pub(crate) fn rsub(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        self.radd(a, self.rneg(b))
    }

    #[inline]
    pub(crate) fn rmul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] as u64 + t.log[b as usize] as u64) as usize],
            None => {
                let prod = fppoly::mul(self.p, &self.decode(a), &self.decode(b));
                self.encode(&fppoly::rem(self.p, &prod, &self.modulus))
            }
        }
    }

    pub(crate) fn rinv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let n = self.size - 1;
                Some(t.exp[((n - t.log[a as usize] as u64) % n) as usize])
            }
            None => {
                let (g, u) = fppoly::ext_gcd_first(self.p, &self.decode(a), &self.modulus);
                debug_assert_eq!(fppoly::deg(&g), Some(0));
                Some(self.encode(&fppoly::rem(self.p, &u, &self.modulus)))
            }
        }
    }

    pub(crate) fn rpow(&self, a: u64, e: u128) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.size - 1) as u128;
        let e = (e % n) as u64;
        match &self.tables {
            Some(t) => {
                let l = (t.log[a as usize] as u128 * e as u128 % n) as u64;
                t.exp[l as usize]
            }
            None => {
                let mut result = 1u64;
                let mut base = a;
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        result = self.rmul(result, base);
                    }
                    base = self.rmul(base, base);
                    e >>= 1;
                }
                result
            }
        }
    }

    /// x^(p^j); j is reduced mod k.
    #[inline]
    pub(crate) fn rfrobp(&self, a: u64, j: usize) -> u64 {
        let j = j % self.k;
        if j == 0 || a == 0 {
            return a;
        }
        let n = (self.size - 1) as u128;
        let pj = pow_mod(self.p as u128, j as u64, n);
        match &self.tables {
            Some(t) => t.exp[((t.log[a as usize] as u128 * pj) % n) as usize],
            None => self.rpow(a, pj),
        }
    }

    /// Membership in the subfield F_{p^d}; d must divide k.
    pub(crate) fn rin_subfield(&self, a: u64, d: usize) -> bool {
        debug_assert_eq!(self.k % d, 0);
        self.rfrobp(a, d % self.k) == a
    }

    // ---- encodings ----

    pub(crate) fn decode(&self, enc: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.k];
        let mut rest = enc;
        for d in digits.iter_mut() {
            *d = rest % self.p;
            rest /= self.p;
        }
        digits
    }

    pub(crate) fn encode(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .zip(&self.pow_p)
            .map(|(&d, &q)| d % self.p * q)
            .sum()
    }

    fn digit_add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        for &q in &self.pow_p[..self.k] {
            out += (a % self.p + b % self.p) % self.p * q;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    // ---- construction stages ----

    fn build_tables(&mut self) {
        let n = self.size - 1;
        let factors = fppoly::prime_factors(n);
        let generator = if n == 1 {
            1
        } else {
            (2..self.size)
                .find(|&cand| factors.iter().all(|&r| self.slow_pow_nt(cand, n / r) != 1))
                .expect("multiplicative group of a finite field is cyclic")
        };
        let mut exp = vec![0u64; 2 * n as usize];
        let mut log = vec![NONE32; self.size as usize];
        let gdig = self.decode(generator);
        let mut cur = vec![1u64];
        for i in 0..n as usize {
            let enc = self.encode(&cur);
            exp[i] = enc;
            exp[i + n as usize] = enc;
            log[enc as usize] = i as u32;
            cur = fppoly::rem(self.p, &fppoly::mul(self.p, &cur, &gdig), &self.modulus);
        }
        let mut zech = vec![NONE32; n as usize];
        for (i, z) in zech.iter_mut().enumerate() {
            let s = self.digit_add(1, exp[i]);
            if s != 0 {
                *z = log[s as usize];
            }
        }
        self.tables = Some(Tables {
            generator,
            exp,
            log,
            zech,
        });
    }

    /// Table-free power used while tables are still being built.
    fn slow_pow_nt(&self, a: u64, mut e: u64) -> u64 {
        let mut result = vec![1u64];
        let mut base = self.decode(a);
        while e > 0 {
            if e & 1 == 1 {
                result = fppoly::rem(self.p, &fppoly::mul(self.p, &result, &base), &self.modulus);
            }
            base = fppoly::rem(self.p, &fppoly::mul(self.p, &base, &base), &self.modulus);
            e >>= 1;
        }
        self.encode(&result)
    }

    fn build_subfields(&mut self) {
        for d in divisors(self.k) {
            // kernel of (Frob^d - id) as an F_p-linear map on digits
            let mut m = vec![vec![0u64; self.k]; self.k];
            for c in 0..self.k {
                let img = self.rfrobp(self.pow_p[c], d % self.k);
                let digits = self.decode(img);
                for r in 0..self.k {
                    m[r][c] = (digits[r] + self.p - u64::from(r == c)) % self.p;
                }
            }
            let ker = fppoly::fp_kernel(self.p, &m);
            assert_eq!(
                ker.len(),
                d,
                "subfield F_{{p^{d}}} must have F_p-dimension {d}"
            );
            let fp_basis: Vec<u64> = ker.iter().map(|v| self.encode(v)).collect();
            self.subfields.push(Subfield { deg: d, fp_basis });
        }
    }

    fn build_towers(&mut self) {
        for e in divisors(self.k) {
            let n = self.k / e;
            let sub = self.subfields.iter().find(|s| s.deg == e).unwrap();
            let sub_basis = sub.fp_basis.clone();
            let sub_digits: Vec<Vec<u64>> = sub_basis.iter().map(|&s| self.decode(s)).collect();

            // greedy canonical basis of the field over F_q: scan encodings
            // ascending, keep elements independent over F_q of those chosen
            let mut q_basis: Vec<u64> = Vec::with_capacity(n);
            let mut span: Vec<Vec<u64>> = Vec::new();
            for cand in 1..self.size {
                if Self::fp_in_span(self.p, &span, &self.decode(cand)) {
                    continue;
                }
                q_basis.push(cand);
                for &s in &sub_basis {
                    span.push(self.decode(self.rmul(s, cand)));
                }
                fppoly::fp_rref(self.p, &mut span);
                if q_basis.len() == n {
                    break;
                }
            }
            assert_eq!(q_basis.len(), n);

            let mu_from_digits = if e == 1 {
                debug_assert!(q_basis.iter().enumerate().all(|(i, &b)| b == self.pow_p[i]));
                None
            } else {
                // column (i*e + j) of the product-basis matrix is s_j * b_i
                let mut m = vec![vec![0u64; self.k]; self.k];
                for (i, &b) in q_basis.iter().enumerate() {
                    for (j, &s) in sub_basis.iter().enumerate() {
                        let digits = self.decode(self.rmul(s, b));
                        for (r, &dg) in digits.iter().enumerate() {
                            m[r][i * e + j] = dg;
                        }
                    }
                }
                Some(fppoly::fp_inverse(self.p, &m).expect("product basis is an F_p-basis"))
            };
            self.towers.push(TowerData {
                e,
                n,
                q_basis,
                sub_digits,
                mu_from_digits,
            });
        }
    }

    fn fp_in_span(p: u64, rref_rows: &[Vec<u64>], v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for row in rref_rows {
            let Some(pivot) = row.iter().position(|&x| x != 0) else {
                continue;
            };
            if v[pivot] != 0 {
                let c = v[pivot]; // row is normalized: row[pivot] = 1
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Operation selector for [`FieldCtx::element_arithmetic`].
#[derive(Debug, Clone, Copy)]
pub enum ElemOp {
    Add,
    Mul,
    Inv,
    Pow(u128),
}

fn pow_mod(base: u128, mut e: u64, m: u128) -> u128 {
    let mut result = 1u128;
    let mut base = base % m;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    result
}

/// A tower view F_q ⊂ F_{q^n} of a [`Field`], q = p^e.
#[derive(Clone)]
pub struct Tower {
    field: Field,
    ti: usize,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ti == other.ti
    }
}
impl Eq for Tower {}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} over F_{}", self.q(), self.n(), self.q())
    }
}

impl Tower {
    fn data(&self) -> &TowerData {
        &self.field.towers[self.ti]
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    /// p-degree of the base field: q = p^e.
    pub fn e(&self) -> usize {
        self.data().e
    }
    pub fn n(&self) -> usize {
        self.data().n
    }
    pub fn q(&self) -> u64 {
        self.field.pow_p[self.e()]
    }
    /// Number of elements of the whole field, q^n.
    pub fn field_size(&self) -> u64 {
        self.field.size
    }

    pub(crate) fn q_basis_raw(&self) -> &[u64] {
        &self.data().q_basis
    }

    /// Canonical F_q-basis of F_{q^n}.
    pub fn q_basis(&self) -> Vec<FieldElem> {
        self.q_basis_raw()
            .iter()
            .map(|&b| self.field.el_unchecked(b))
            .collect()
    }

    /// x^(q^i).
    pub fn frob(&self, x: FieldElem, i: usize) -> FieldElem {
        let enc = self.field.guard(x);
        self.field.el_unchecked(self.rfrob(enc, i))
    }

    #[inline]
    pub(crate) fn rfrob(&self, enc: u64, i: usize) -> u64 {
        let n = self.n();
        self.field.rfrobp(enc, self.e() * (i % n))
    }

    /// Membership in F_{q^t} (t | n not required; t is reduced into the
    /// lattice by gcd when it does not divide n the test is still exact).
    pub(crate) fn rin_q_subfield(&self, enc: u64, t: usize) -> bool {
        self.field.rfrobp(enc, (self.e() * t) % self.field.k) == enc
    }

    pub fn in_q_subfield(&self, x: FieldElem, t: usize) -> bool {
        let enc = self.field.guard(x);
        self.rin_q_subfield(enc, t)
    }

    /// F_q coordinates of an element with respect to the canonical basis.
    pub(crate) fn coords(&self, enc: u64) -> Vec<u64> {
        let d = self.data();
        let digits = self.field.decode(enc);
        match &d.mu_from_digits {
            None => digits,
            Some(minv) => {
                let mu = fppoly::fp_matvec(self.field.p, minv, &digits);
                let e = d.e;
                (0..d.n)
                    .map(|i| {
                        let mut acc = vec![0u64; self.field.k];
                        for (j, sd) in d.sub_digits.iter().enumerate() {
                            let c = mu[i * e + j];
                            if c != 0 {
                                for (a, &b) in acc.iter_mut().zip(sd) {
                                    *a = (*a + c * b) % self.field.p;
                                }
                            }
                        }
                        self.field.encode(&acc)
                    })
                    .collect()
            }
        }
    }

    pub(crate) fn combine_coords(&self, coords: &[u64]) -> u64 {
        let d = self.data();
        debug_assert_eq!(coords.len(), d.n);
        let mut acc = 0u64;
        for (&c, &b) in coords.iter().zip(&d.q_basis) {
            acc = self.field.radd(acc, self.field.rmul(c, b));
        }
        acc
    }

    /// Relative trace onto F_{q^t}: sum of x^(q^(t j)), j < n/t.
    pub fn trace_to(&self, x: FieldElem, t: usize) -> Result<FieldElem> {
        let n = self.n();
        if t == 0 || !n.is_multiple_of(t) {
            return Err(Error::NonDivisorDegrees { from: n, to: t });
        }
        let enc = self.field.ensure_member(x)?;
        let mut acc = 0u64;
        for j in 0..n / t {
            acc = self.field.radd(acc, self.rfrob(enc, t * j));
        }
        debug_assert!(self.rin_q_subfield(acc, t));
        Ok(self.field.el_unchecked(acc))
    }

    /// Relative norm onto F_{q^t}: x^((q^n - 1)/(q^t - 1)); norm of 0 is 0.
    pub fn norm_to(&self, x: FieldElem, t: usize) -> Result<FieldElem> {
        let n = self.n();
        if t == 0 || !n.is_multiple_of(t) {
            return Err(Error::NonDivisorDegrees { from: n, to: t });
        }
        let enc = self.field.ensure_member(x)?;
        let q = self.q() as u128;
        let exp = (q.pow(n as u32) - 1) / (q.pow(t as u32) - 1);
        let r = if enc == 0 {
            0
        } else {
            self.field.rpow(enc, exp)
        };
        debug_assert!(self.rin_q_subfield(r, t));
        Ok(self.field.el_unchecked(r))
    }

    /// Dual basis with respect to the trace bilinear form down to F_q:
    /// returns B* with Tr(xi_i xi*_j) = delta_ij.
    pub fn dual_basis(&self, basis: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let n = self.n();
        if basis.len() != n {
            return Err(Error::DependentInput);
        }
        let encs: Vec<u64> = basis
            .iter()
            .map(|&b| self.field.ensure_member(b))
            .collect::<Result<_>>()?;
        // independence over F_q
        let coord_rows: Vec<Vec<u64>> = encs.iter().map(|&b| self.coords(b)).collect();
        let mat = crate::linalg::Matrix::from_rows(coord_rows);
        if mat.rank(&self.field) != n {
            return Err(Error::DependentInput);
        }
        // Gram matrix of the trace form, entries in F_q
        let mut gram = crate::linalg::Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.field.rmul(encs[i], encs[j]);
                let tr = self.trace_to(self.field.el_unchecked(prod), 1)?;
                gram.set(i, j, tr.encoding());
            }
        }
        let inv = gram
            .inverse(&self.field)
            .ok_or(Error::DegenerateTraceForm)?;
        // xi*_j = sum_m inv[m][j] xi_m
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = 0u64;
            for (m, &enc) in encs.iter().enumerate() {
                acc = self.field.radd(acc, self.field.rmul(inv.get(m, j), enc));
            }
            out.push(self.field.el_unchecked(acc));
        }
        Ok(out)
    }

    /// Canonical F_q-basis of the intermediate field F_{q^t}, t | n: the
    /// greedy smallest-encoding independent elements of the subfield.
    pub fn subfield_q_basis(&self, t: usize) -> Result<Vec<FieldElem>> {
        let n = self.n();
        if t == 0 || !n.is_multiple_of(t) {
            return Err(Error::NonDivisorDegrees { from: n, to: t });
        }
        if t == n {
            return Ok(self.q_basis()); // the greedy scan reproduces it anyway
        }
        let p = self.field.p;
        let mut basis = Vec::with_capacity(t);
        let mut span: Vec<Vec<u64>> = Vec::new();
        let sub_basis: Vec<u64> = self
            .field
            .subfields
            .iter()
            .find(|s| s.deg == self.e())
            .unwrap()
            .fp_basis
            .clone();
        for cand in 1..self.field.size {
            if !self.rin_q_subfield(cand, t) {
                continue;
            }
            if FieldCtx::fp_in_span(p, &span, &self.field.decode(cand)) {
                continue;
            }
            basis.push(self.field.el_unchecked(cand));
            for &s in &sub_basis {
                span.push(self.field.decode(self.field.rmul(s, cand)));
            }
            fppoly::fp_rref(p, &mut span);
            if basis.len() == t {
                break;
            }
        }
        debug_assert_eq!(basis.len(), t);
        Ok(basis)
    }

    /// All elements of the field, ascending encoding.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.field.size).map(move |e| self.field.el_unchecked(e))
    }
}
