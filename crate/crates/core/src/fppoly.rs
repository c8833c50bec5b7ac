//! Polynomial and matrix helpers over the prime field F_p.
//!
//! These routines back field construction (modulus selection, irreducibility
//! sieve, subfield bases) and the non-table arithmetic fallback. Polynomials
//! are coefficient vectors mod p, lowest degree first, with no trailing zeros
//! (the zero polynomial is the empty vector).

/// Trial-division primality test; `n` is at most 2^32 in practice.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    trim(out)
}

pub fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn inv_mod_p(p: u64, a: u64) -> u64 {
    // Fermat; p is prime and a != 0.
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Euclidean division: returns (quotient, remainder).
pub fn divrem(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(p, b[db]);
    let mut rem = trim(a.to_vec());
    let mut quot = vec![0u64; rem.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem[dr] * lead_inv % p; // nonzero: rem is trimmed
        quot[dr - db] = c;
        for (i, &bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            rem[idx] = (rem[idx] + p - c * bc % p) % p;
        }
        rem.pop(); // leading coefficient is now zero
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(p, a, b).1
}

/// Monic gcd.
pub fn gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(p, &x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        if lead != 1 {
            let li = inv_mod_p(p, lead);
            for c in &mut x {
                *c = *c * li % p;
            }
        }
    }
    x
}

/// Extended Euclid: returns g = gcd(a, b) monic along with u with u*a = g mod b.
pub fn ext_gcd_first(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut u0, mut u1) = (vec![1u64], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(p, &r0, &r1);
        let u = sub(p, &u0, &mul(p, &q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    if let Some(&lead) = r0.clone().last() {
        if lead != 1 {
            let li = inv_mod_p(p, lead);
            for c in &mut r0 {
                *c = *c * li % p;
            }
            for c in &mut u0 {
                *c = *c * li % p;
            }
        }
    }
    (r0, u0)
}

/// x^e mod f, square-and-multiply on polynomials.
pub fn pow_x_mod(p: u64, e: u128, f: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = rem(p, &[0, 1], f);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = rem(p, &mul(p, &result, &base), f);
        }
        base = rem(p, &mul(p, &base, &base), f);
        e >>= 1;
    }
    result
}

/// Irreducibility of a monic degree-k polynomial over F_p: x^(p^k) = x mod f
/// and gcd(x^(p^(k/r)) - x, f) = 1 for every prime r dividing k.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let k = match deg(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    let xpk = pow_x_mod(p, (p as u128).pow(k as u32), f);
    if sub(p, &xpk, &[0, 1]) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let j = k / r as usize;
        let xpj = pow_x_mod(p, (p as u128).pow(j as u32), f);
        let g = gcd(p, &sub(p, &xpj, &[0, 1]), f);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree k over F_p,
/// comparing coefficient tuples (c_0, c_1, ..., c_{k-1}) low degree first.
pub fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    loop {
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
        // odometer with c_{k-1} as the fastest digit: lexicographic in
        // (c_0, ..., c_{k-1}) means c_0 is the most significant position
        let mut i = k;
        loop {
            assert!(i > 0, "no irreducible of degree {k} over F_{p} found");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

// ---- small dense matrices over F_p (row-major Vec<Vec<u64>>) ----

/// Row-reduce in place; returns pivot column indices.
pub fn fp_rref(p: u64, m: &mut [Vec<u64>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod_p(p, m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + (p - factor) * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Kernel basis of an F_p matrix, one vector per row, reduced echelon form.
pub fn fp_kernel(p: u64, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut work: Vec<Vec<u64>> = m.to_vec();
    let pivots = fp_rref(p, &mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0u64; cols];
        v[fc] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - work[r][fc]) % p;
        }
        basis.push(v);
    }
    fp_rref(p, &mut basis);
    basis
}

/// Inverse of a square F_p matrix, or None if singular.
pub fn fp_inverse(p: u64, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(j == i)));
            r
        })
        .collect();
    let pivots = fp_rref(p, &mut aug);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn fp_matvec(p: u64, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| (acc + a * b) % p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force reducibility oracle: scan all monic divisors of degree
    /// 1..=k/2. Independent of the sieve used by `is_irreducible`.
    fn has_proper_factor(p: u64, f: &[u64]) -> bool {
        let k = deg(f).unwrap();
        for d in 1..=k / 2 {
            // enumerate all monic polynomials of degree d
            let total = (p as u128).pow(d as u32);
            for idx in 0..total {
                let mut g = vec![0u64; d + 1];
                let mut rest = idx;
                for c in g.iter_mut().take(d) {
                    *c = (rest % p as u128) as u64;
                    rest /= p as u128;
                }
                g[d] = 1;
                if rem(p, f, &g).is_empty() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn sieve_matches_divisor_scan() {
        for p in [2u64, 3, 5] {
            for k in 1..=4usize {
                let total = (p as u128).pow(k as u32);
                for idx in 0..total {
                    let mut f = vec![0u64; k + 1];
                    let mut rest = idx;
                    for c in f.iter_mut().take(k) {
                        *c = (rest % p as u128) as u64;
                        rest /= p as u128;
                    }
                    f[k] = 1;
                    assert_eq!(
                        is_irreducible(p, &f),
                        !has_proper_factor(p, &f),
                        "disagreement at p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn smallest_irreducible_is_deterministic_and_minimal() {
        // the only irreducible quadratic over F_2
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        let a = smallest_irreducible(3, 4);
        let b = smallest_irreducible(3, 4);
        assert_eq!(a, b);
        assert!(is_irreducible(3, &a));
        // nothing lexicographically smaller (low-degree-first) is irreducible
        let smaller_exists = {
            let mut found = false;
            'outer: for c0 in 0..=a[0] {
                let c1_max = if c0 == a[0] { a[1] } else { 2 };
                for c1 in 0..=c1_max {
                    let c2_max = if c0 == a[0] && c1 == a[1] { a[2] } else { 2 };
                    for c2 in 0..=c2_max {
                        let c3_max = if c0 == a[0] && c1 == a[1] && c2 == a[2] {
                            a[3]
                        } else {
                            2
                        };
                        for c3 in 0..=c3_max {
                            let cand = vec![c0, c1, c2, c3, 1];
                            if cand == a {
                                break 'outer;
                            }
                            if is_irreducible(3, &cand) {
                                found = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            found
        };
        assert!(!smaller_exists);
    }

    #[test]
    fn gcd_and_division() {
        let p = 3;
        let a = mul(p, &[1, 1], &[2, 1, 1]); // (x+1)(x^2+x+2), second factor irreducible
        let b = mul(p, &[1, 1], &[1, 2]); // (x+1)(2x+1)
        let g = gcd(p, &a, &b);
        assert_eq!(g, vec![1, 1]);
        let (q, r) = divrem(p, &a, &[1, 1]);
        assert!(r.is_empty());
        assert_eq!(mul(p, &q, &[1, 1]), a);
    }

    #[test]
    fn kernel_and_inverse() {
        let p = 5;
        let m = vec![vec![1, 2, 3], vec![0, 1, 4]];
        let ker = fp_kernel(p, &m);
        assert_eq!(ker.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&ker[0])
                .fold(0u64, |s, (&a, &b)| (s + a * b) % p);
            assert_eq!(dot, 0);
        }
        let sq = vec![vec![1, 2], vec![3, 4]];
        let inv = fp_inverse(p, &sq).unwrap();
        let prod00 = (sq[0][0] * inv[0][0] + sq[0][1] * inv[1][0]) % p;
        let prod01 = (sq[0][0] * inv[0][1] + sq[0][1] * inv[1][1]) % p;
        assert_eq!((prod00, prod01), (1, 0));
    }
}
