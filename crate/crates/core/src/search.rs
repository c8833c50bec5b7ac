//! Bounded-degree search for polynomials with a prescribed property.
//!
//! Coefficient vectors of q-degree at most max_qdeg are enumerated
//! exhaustively when the space fits the candidate budget and sampled with a
//! seeded generator otherwise. Hits are pruned modulo the scaling
//! f -> alpha f(beta x) through canonical-form hashing, so each orbit is
//! reported once; output is deterministic for a fixed seed.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::field::Tower;
use crate::geometry::{is_scattered, scatteredness};
use crate::linpoly::LinPoly;
use crate::stabilizer::compute_stabilizer;
use crate::util::{EnumOpts, SplitMix64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchPredicate {
    Scattered,
    LPt(usize),
    RPt(usize),
    NonfieldStab,
}

impl SearchPredicate {
    pub fn parse(name: &str, t: Option<usize>) -> Result<SearchPredicate> {
        use crate::error::Error;
        Ok(match name {
            "scattered" => SearchPredicate::Scattered,
            "l_pt" => SearchPredicate::LPt(
                t.ok_or_else(|| Error::ParseError("predicate l_pt needs --t".into()))?,
            ),
            "r_pt" => SearchPredicate::RPt(
                t.ok_or_else(|| Error::ParseError("predicate r_pt needs --t".into()))?,
            ),
            "nonfield_stab" => SearchPredicate::NonfieldStab,
            other => return Err(Error::ParseError(format!("unknown predicate {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    /// Coefficients of the found polynomial.
    pub coeffs: Vec<u64>,
    /// Canonical representative of its orbit under f -> alpha f(beta x).
    pub canonical: Vec<u64>,
    pub pretty: String,
}

fn satisfies(f: &LinPoly, pred: SearchPredicate) -> Result<bool> {
    Ok(match pred {
        SearchPredicate::Scattered => is_scattered(f),
        SearchPredicate::LPt(t) => scatteredness(f, t)?.l_pt,
        SearchPredicate::RPt(t) => scatteredness(f, t)?.r_pt,
        SearchPredicate::NonfieldStab => !compute_stabilizer(f).is_field,
    })
}

/// Lexicographically smallest coefficient vector in the orbit
/// {alpha f(beta x) : alpha, beta nonzero}; coefficients of alpha f(beta x)
/// are alpha c_i beta^(q^i).
fn canonical_form(f: &LinPoly) -> Vec<u64> {
    let tower = f.tower();
    let fld = tower.field().clone();
    let n = tower.n();
    let coeffs = f.coeffs_raw();
    let mut best: Option<Vec<u64>> = None;
    for alpha in 1..tower.field_size() {
        for beta in 1..tower.field_size() {
            let mut cand = Vec::with_capacity(n);
            let mut bq = beta;
            for (i, &c) in coeffs.iter().enumerate() {
                if i > 0 {
                    bq = tower.rfrob(bq, 1);
                }
                cand.push(fld.rmul(alpha, fld.rmul(c, bq)));
            }
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("nonempty orbit")
}

/// Enumerate polynomials of q-degree at most `max_qdeg` satisfying the
/// predicate, one representative per scaling orbit.
pub fn search(
    tower: &Tower,
    max_qdeg: usize,
    pred: SearchPredicate,
    opts: &EnumOpts,
    seed: u64,
) -> Result<Vec<SearchHit>> {
    let n = tower.n();
    let width = max_qdeg.min(n - 1) + 1;
    let size = tower.field_size();
    let total = (size as u128).pow(width as u32);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut hits = Vec::new();

    let mut try_candidate = |prefix: &[u64], hits: &mut Vec<SearchHit>| -> Result<()> {
        let mut coeffs = prefix.to_vec();
        coeffs.resize(n, 0);
        let f = LinPoly::from_raw(tower, coeffs);
        if f.is_zero() || !satisfies(&f, pred)? {
            return Ok(());
        }
        let canonical = canonical_form(&f);
        if seen.insert(canonical.clone()) {
            hits.push(SearchHit {
                coeffs: f.coeff_encodings(),
                canonical,
                pretty: f.pretty(),
            });
        }
        Ok(())
    };

    if total <= opts.budget as u128 {
        let mut prefix = vec![0u64; width];
        loop {
            try_candidate(&prefix, &mut hits)?;
            let mut pos = 0;
            loop {
                if pos == width {
                    return Ok(hits);
                }
                prefix[pos] += 1;
                if prefix[pos] < size {
                    break;
                }
                prefix[pos] = 0;
                pos += 1;
            }
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..opts.budget {
            let prefix: Vec<u64> = (0..width).map(|_| rng.below(size)).collect();
            try_candidate(&prefix, &mut hits)?;
        }
        Ok(hits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn finds_the_scattered_monomial() {
        let t = Field::new(2, 4).unwrap().prime_tower();
        let hits = search(&t, 1, SearchPredicate::Scattered, &EnumOpts::default(), 0).unwrap();
        assert!(!hits.is_empty());
        // x^q is scattered at gcd(1,4) = 1 and its orbit must be reported;
        // all reported canonical forms are distinct
        let forms: BTreeSet<_> = hits.iter().map(|h| h.canonical.clone()).collect();
        assert_eq!(forms.len(), hits.len());
        let xq = LinPoly::monomial(&t, 1, t.field().one()).unwrap();
        let target = canonical_form(&xq);
        assert!(hits.iter().any(|h| h.canonical == target));
    }

    #[test]
    fn max_qdeg_zero_gives_no_scattered_hits() {
        // multiples of x only: weight spectrum has one point of weight n
        let t = Field::new(2, 3).unwrap().prime_tower();
        let hits = search(&t, 0, SearchPredicate::Scattered, &EnumOpts::default(), 0).unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn nonfield_search_finds_twists_at_n_2t() {
        // at n = 2t the ell-twists have non-field stabilizers
        let t = Field::new(2, 4).unwrap().prime_tower();
        let hits = search(
            &t,
            3,
            SearchPredicate::NonfieldStab,
            &EnumOpts::default(),
            0,
        )
        .unwrap();
        assert!(!hits.is_empty());
        let tr = canonical_form(&LinPoly::trace_poly(&t, 2).unwrap());
        assert!(hits.iter().any(|h| h.canonical == tr));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let t = Field::new(2, 4).unwrap().prime_tower();
        let opts = EnumOpts::with_budget(50); // forces sampling
        let a = search(&t, 3, SearchPredicate::Scattered, &opts, 7).unwrap();
        let b = search(&t, 3, SearchPredicate::Scattered, &opts, 7).unwrap();
        assert_eq!(
            a.iter().map(|h| h.coeffs.clone()).collect::<Vec<_>>(),
            b.iter().map(|h| h.coeffs.clone()).collect::<Vec<_>>()
        );
    }
}
