//! F_q-subspaces of F_{q^n} or F_{q^n}^2 in canonical reduced-basis form.
//!
//! Vectors are stored by their F_q-coordinates with respect to the tower's
//! canonical basis (n coordinates per component), so subspace arithmetic is
//! plain linear algebra over F_q. Equal subspaces have identical bases.

use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower};
use crate::linalg::Matrix;

/// The space a subspace lives in: F_{q^n} (1 component) or F_{q^n}^2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ambient {
    tower: Tower,
    components: usize,
}

impl Ambient {
    pub fn new(tower: Tower, components: usize) -> Ambient {
        assert!(
            components == 1 || components == 2,
            "ambient has 1 or 2 components"
        );
        Ambient { tower, components }
    }

    pub fn line(tower: Tower) -> Ambient {
        Ambient::new(tower, 1)
    }
    pub fn plane(tower: Tower) -> Ambient {
        Ambient::new(tower, 2)
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }
    pub fn components(&self) -> usize {
        self.components
    }
    /// F_q-dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.components * self.tower.n()
    }

    pub(crate) fn coords_of_raw(&self, vec: &[u64]) -> Vec<u64> {
        debug_assert_eq!(vec.len(), self.components);
        let mut out = Vec::with_capacity(self.dim());
        for &comp in vec {
            out.extend(self.tower.coords(comp));
        }
        out
    }

    pub(crate) fn vec_from_coords(&self, coords: &[u64]) -> Vec<u64> {
        debug_assert_eq!(coords.len(), self.dim());
        let n = self.tower.n();
        (0..self.components)
            .map(|c| self.tower.combine_coords(&coords[c * n..(c + 1) * n]))
            .collect()
    }

    pub fn coords_of(&self, vec: &[FieldElem]) -> Result<Vec<u64>> {
        if vec.len() != self.components {
            return Err(Error::ShapeMismatch(format!(
                "expected {} components, got {}",
                self.components,
                vec.len()
            )));
        }
        let raw: Vec<u64> = vec
            .iter()
            .map(|&x| self.tower.field().ensure_member(x))
            .collect::<Result<_>>()?;
        Ok(self.coords_of_raw(&raw))
    }
}

/// An F_q-subspace in canonical form (reduced echelon basis rows).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqSubspace {
    ambient: Ambient,
    basis: Matrix,
}

impl FqSubspace {
    pub fn zero(ambient: Ambient) -> FqSubspace {
        let cols = ambient.dim();
        FqSubspace {
            ambient,
            basis: Matrix::zeros(0, cols),
        }
    }

    pub fn full(ambient: Ambient) -> FqSubspace {
        let basis = Matrix::identity(ambient.dim());
        FqSubspace { ambient, basis }
    }

    /// Span of coordinate rows; canonicalizes.
    pub fn from_coord_rows(ambient: Ambient, rows: Matrix) -> FqSubspace {
        assert_eq!(rows.cols(), ambient.dim(), "coordinate length mismatch");
        let basis = rows.row_space(ambient.tower.field());
        FqSubspace { ambient, basis }
    }

    /// Span of ambient vectors given as component tuples.
    pub fn span(ambient: Ambient, vectors: &[Vec<FieldElem>]) -> Result<FqSubspace> {
        let rows = vectors
            .iter()
            .map(|v| ambient.coords_of(v))
            .collect::<Result<Vec<_>>>()?;
        let dim = ambient.dim();
        Ok(FqSubspace::from_coord_rows(
            ambient,
            Matrix::from_rows_with_cols(rows, dim),
        ))
    }

    /// The F_{q^t}-line through `vec`, as an F_q-subspace: span of s * vec
    /// over an F_q-basis s of F_{q^t}.
    pub fn scalar_line(ambient: Ambient, vec: &[u64], t: usize) -> Result<FqSubspace> {
        let tower = &ambient.tower;
        let field = tower.field().clone();
        let sb = tower.subfield_q_basis(t)?;
        let rows: Vec<Vec<u64>> = sb
            .iter()
            .map(|s| {
                let scaled: Vec<u64> = vec.iter().map(|&v| field.rmul(s.encoding(), v)).collect();
                ambient.coords_of_raw(&scaled)
            })
            .collect();
        Ok(FqSubspace::from_coord_rows(
            ambient,
            Matrix::from_rows(rows),
        ))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis rows as ambient vectors (component encodings).
    pub fn basis_vectors_raw(&self) -> Vec<Vec<u64>> {
        (0..self.dim())
            .map(|r| self.ambient.vec_from_coords(self.basis.row(r)))
            .collect()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        let f = self.ambient.tower.field();
        self.basis_vectors_raw()
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|e| f.el(e).expect("basis encoding"))
                    .collect()
            })
            .collect()
    }

    fn check_ambient(&self, other: &FqSubspace) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn contains_coords(&self, coords: &[u64]) -> bool {
        let f = self.ambient.tower.field();
        let mut v = coords.to_vec();
        crate::linalg::reduce_against(f, &self.basis, &mut v);
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_vector(&self, vec: &[FieldElem]) -> Result<bool> {
        Ok(self.contains_coords(&self.ambient.coords_of(vec)?))
    }

    pub fn contains_subspace(&self, other: &FqSubspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok((0..other.dim()).all(|r| self.contains_coords(other.basis.row(r))))
    }

    pub fn sum(&self, other: &FqSubspace) -> Result<FqSubspace> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(FqSubspace::from_coord_rows(self.ambient.clone(), stacked))
    }

    pub fn intersect(&self, other: &FqSubspace) -> Result<FqSubspace> {
        self.check_ambient(other)?;
        let f = self.ambient.tower.field();
        // kernel of [A; B]^T: rows (lambda, mu) with lambda A = -mu B
        let stacked = self.basis.vstack(&other.basis)?;
        let ker = stacked.transpose().nullspace(f);
        let a = self.dim();
        let rows: Vec<Vec<u64>> = (0..ker.rows())
            .map(|r| {
                let lam = &ker.row(r)[..a];
                let mut v = vec![0u64; self.ambient.dim()];
                for (i, &l) in lam.iter().enumerate() {
                    if l != 0 {
                        for (c, x) in v.iter_mut().enumerate() {
                            *x = f.radd(*x, f.rmul(l, self.basis.get(i, c)));
                        }
                    }
                }
                v
            })
            .collect();
        let dim = self.ambient.dim();
        Ok(FqSubspace::from_coord_rows(
            self.ambient.clone(),
            Matrix::from_rows_with_cols(rows, dim),
        ))
    }

    /// All nonzero vectors up to F_q-scaling, as coordinate vectors with the
    /// first nonzero coordinate normalized to 1. Deterministic order.
    pub fn projective_coords(&self) -> Vec<Vec<u64>> {
        let f = self.ambient.tower.field();
        let q_elems = q_elements(&self.ambient.tower);
        let d = self.dim();
        let mut out = Vec::new();
        // first nonzero combination coefficient fixed to 1
        for lead in 0..d {
            let mut combo = vec![0u64; d];
            combo[lead] = 1;
            loop {
                let mut v = vec![0u64; self.ambient.dim()];
                for (i, &ci) in combo.iter().enumerate().skip(lead) {
                    if ci != 0 {
                        for (c, x) in v.iter_mut().enumerate() {
                            *x = f.radd(*x, f.rmul(ci, self.basis.get(i, c)));
                        }
                    }
                }
                out.push(v);
                // odometer over positions lead+1..d
                let mut pos = d;
                loop {
                    if pos == lead + 1 {
                        pos = 0;
                        break;
                    }
                    pos -= 1;
                    let idx = q_elems.iter().position(|&e| e == combo[pos]).unwrap();
                    if idx + 1 < q_elems.len() {
                        combo[pos] = q_elems[idx + 1];
                        break;
                    }
                    combo[pos] = 0;
                }
                if pos == 0 {
                    break;
                }
            }
        }
        out
    }
}

/// The elements of F_q inside the big field, ascending encoding.
pub fn q_elements(tower: &Tower) -> Vec<u64> {
    let f = tower.field();
    if tower.e() == 1 {
        (0..f.p()).collect()
    } else {
        (0..f.size())
            .filter(|&x| tower.rin_q_subfield(x, 1))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    fn ambient_2_4() -> Ambient {
        let f = Field::new(2, 4).unwrap();
        Ambient::line(f.prime_tower())
    }

    #[test]
    fn intersection_with_self_and_zero() {
        let amb = ambient_2_4();
        let f = amb.tower().field().clone();
        let v1 = vec![f.el(3).unwrap()];
        let v2 = vec![f.el(5).unwrap()];
        let a = FqSubspace::span(amb.clone(), &[v1, v2]).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        let z = FqSubspace::zero(amb.clone());
        assert_eq!(a.intersect(&z).unwrap(), z);
        assert!(a.contains_subspace(&z).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = FqSubspace::zero(ambient_2_4());
        let g = Field::new(2, 4).unwrap();
        let b = FqSubspace::zero(Ambient::line(g.prime_tower()));
        assert_eq!(a.sum(&b).unwrap_err(), Error::AmbientMismatch);
    }

    #[test]
    fn scalar_line_dimension() {
        let f = Field::new(2, 4).unwrap();
        let amb = Ambient::plane(f.prime_tower());
        let line = FqSubspace::scalar_line(amb, &[1, 3], 2).unwrap();
        assert_eq!(line.dim(), 2);
        // closed under F_{q^2}-scaling of the generator
        let tw = f.prime_tower();
        for s in 0..f.size() {
            if tw.rin_q_subfield(s, 2) {
                let scaled = [f.rmul(s, 1), f.rmul(s, 3)];
                assert!(line.contains_coords(&line.ambient().coords_of_raw(&scaled)));
            }
        }
    }

    #[test]
    fn projective_representative_count() {
        let f = Field::new(3, 2).unwrap();
        let amb = Ambient::line(f.prime_tower());
        let u = FqSubspace::full(amb);
        // (q^dim - 1)/(q - 1) = (9-1)/2 = 4
        assert_eq!(u.projective_coords().len(), 4);
    }

    proptest! {
        #[test]
        fn dimension_formula(seed in 0u64..300) {
            // dim(A+B) = dim A + dim B - dim(A cap B) on random pairs
            let field = Field::new(2, 5).unwrap();
            let amb = Ambient::line(field.prime_tower());
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(11);
            let mut next = move || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let mk = |next: &mut dyn FnMut() -> u64| {
                let rows: Vec<Vec<u64>> = (0..3)
                    .map(|_| amb.coords_of_raw(&[next() % 32]))
                    .collect();
                FqSubspace::from_coord_rows(amb.clone(), Matrix::from_rows(rows))
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            let sum = a.sum(&b).unwrap();
            let cap = a.intersect(&b).unwrap();
            prop_assert_eq!(sum.dim() + cap.dim(), a.dim() + b.dim());
            prop_assert!(a.contains_subspace(&cap).unwrap());
            prop_assert!(b.contains_subspace(&cap).unwrap());
            prop_assert!(sum.contains_subspace(&a).unwrap());
        }
    }
}
