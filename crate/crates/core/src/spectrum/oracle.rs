//! Fibers over `p` found by brute force: every root of `h mod p` in
//! `𝔽_{p^d}` gives a map `A[η] → 𝔽_{p^d}` whose kernel is the prime
//! `(p, m(η))`, `m` the minimal polynomial of the root. Shares no code with
//! the factorization routines.

use std::collections::BTreeSet;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder modulo a monic `m`.
fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let d = m.len() - 1;
    while a.len() > d {
        let c = *a.last().unwrap();
        let shift = a.len() - 1 - d;
        for (i, &mi) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
        }
        a = trim(a);
    }
    a
}

fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

/// Every monic polynomial of degree `d`.
fn monics(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(d as u32)).map(move |mut k| {
        let mut c: Vec<u64> = (0..d)
            .map(|_| {
                let r = k % p;
                k /= p;
                r
            })
            .collect();
        c.push(1);
        c
    })
}

/// Irreducible by trial division with every monic of degree ≤ d/2.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    (1..=d / 2).all(|k| monics(k, p).all(|q| !rem(m, &q, p).is_empty()))
}

/// Monic minimal polynomials over `𝔽_p` of all roots of `h` in
/// `𝔽_{p^d}`, `1 ≤ d ≤ max_degree`, coefficients constant-first.
pub fn fiber_by_root_search(h: &[u64], p: u64, max_degree: usize) -> BTreeSet<Vec<u64>> {
    let h = trim(h.iter().map(|c| c % p).collect());
    let mut found = BTreeSet::new();
    for d in 1..=max_degree {
        let modulus = monics(d, p).find(|m| is_irreducible(m, p)).unwrap();
        for k in 0..p.pow(d as u32) {
            let mut alpha = Vec::with_capacity(d);
            let mut k = k;
            for _ in 0..d {
                alpha.push(k % p);
                k /= p;
            }
            let alpha = trim(alpha);
            // Horner in 𝔽_p[Y]/(modulus)
            let value = h
                .iter()
                .rev()
                .fold(Vec::new(), |acc, &c| rem(&add(&mul(&acc, &alpha, p), &[c], p), &modulus, p));
            if !value.is_empty() {
                continue;
            }
            let mut conjugates = vec![alpha.clone()];
            loop {
                let last = conjugates.last().unwrap();
                let mut next = vec![1u64];
                for _ in 0..p {
                    next = rem(&mul(&next, last, p), &modulus, p);
                }
                if next == alpha {
                    break;
                }
                conjugates.push(next);
            }
            // ∏ (X − αᵢ) with coefficients in 𝔽_p[Y]/(modulus)
            let mut minpoly: Vec<Vec<u64>> = vec![vec![1]];
            for a in &conjugates {
                let neg: Vec<u64> = a.iter().map(|&c| (p - c) % p).collect();
                let mut next = vec![Vec::new(); minpoly.len() + 1];
                for (i, c) in minpoly.iter().enumerate() {
                    next[i + 1] = add(&next[i + 1], c, p);
                    next[i] = add(&next[i], &rem(&mul(c, &neg, p), &modulus, p), p);
                }
                minpoly = next;
            }
            let coeffs: Vec<u64> = minpoly
                .iter()
                .map(|c| {
                    assert!(c.len() <= 1, "minimal polynomial has coefficients in 𝔽_p");
                    c.first().copied().unwrap_or(0)
                })
                .collect();
            found.insert(coeffs);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // X² − 10X − 7 ≡ X(X − 3) mod 7
        let f = fiber_by_root_search(&[0, 4, 1], 7, 4);
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![vec![0, 1], vec![4, 1]]);
        let f = fiber_by_root_search(&[1, 0, 1], 3, 4);
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![vec![1, 0, 1]]);
        // X³ − X − 1 is irreducible mod 2 and has no root below degree 3
        assert!(fiber_by_root_search(&[1, 1, 0, 1], 2, 2).is_empty());
        assert_eq!(fiber_by_root_search(&[1, 1, 0, 1], 2, 3).len(), 1);
    }
}
