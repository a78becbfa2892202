//! Factorization over 𝔽_p: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modular::PrimeField;
use super::poly::{Poly, PolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_1e55_0000_0001;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactorization {
    pub leading: u64,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(Poly<u64>, usize)>,
}

impl FpFactorization {
    pub fn expand(&self, field: &PrimeField) -> Poly<u64> {
        let r = PolyRing::new(*field);
        let mut acc = r.constant(self.leading);
        for (g, m) in &self.factors {
            acc = r.mul(&acc, &r.pow(g, *m as u64));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Canonical factor order: by degree, then lexicographically on the
/// constant-first coefficients taken in balanced representation.
pub fn canonical_cmp(field: &PrimeField, a: &Poly<u64>, b: &Poly<u64>) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let ka = a.coeffs().iter().map(|&c| field.balanced(c));
        let kb = b.coeffs().iter().map(|&c| field.balanced(c));
        ka.cmp(kb)
    })
}

pub fn factor_mod_p(f: &Poly<u64>, field: &PrimeField) -> Result<FpFactorization> {
    factor_mod_p_seeded(f, field, DEFAULT_SEED)
}

/// Complete factorization; the result does not depend on `seed`, only the
/// path taken by the randomized splitting does.
pub fn factor_mod_p_seeded(f: &Poly<u64>, field: &PrimeField, seed: u64) -> Result<FpFactorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let r = PolyRing::new(*field);
    let leading = *f.leading().unwrap();
    let monic = r.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ field.characteristic());
    let mut collected: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for (part, mult) in squarefree_decomposition(&r, &monic) {
        for (d, block) in distinct_degree(&r, &part) {
            for g in equal_degree(&r, &block, d, &mut rng) {
                *collected.entry(g.into_coeffs()).or_insert(0) += mult;
            }
        }
    }
    let mut factors: Vec<(Poly<u64>, usize)> = collected
        .into_iter()
        .map(|(c, m)| (Poly::from_u64s(&c), m))
        .collect();
    factors.sort_by(|a, b| canonical_cmp(field, &a.0, &b.0));
    Ok(FpFactorization { leading, factors })
}

/// `f mod p` is squarefree iff `gcd(f, f') = 1`.
pub fn is_squarefree_mod_p(f: &Poly<u64>, field: &PrimeField) -> bool {
    PolyRing::new(*field).is_squarefree(f)
}

/// Squarefree decomposition of a monic polynomial in characteristic p.
fn squarefree_decomposition(r: &PolyRing<PrimeField>, f: &Poly<u64>) -> Vec<(Poly<u64>, usize)> {
    let p = r.base().characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = r.derivative(f);
    let mut c = r.gcd(f, &df);
    let mut w = r.exact_div(f, &c).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = r.gcd(&w, &c);
        let fac = r.exact_div(&w, &y).unwrap();
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = r.exact_div(&c, &w).unwrap();
        i += 1;
    }
    if c.deg() > 0 {
        // c is a p-th power: take the root coefficientwise.
        let root = r.from_coeffs(c.coeffs().iter().step_by(p).copied().collect());
        for (g, m) in squarefree_decomposition(r, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of equal-degree
/// irreducibles.
fn distinct_degree(r: &PolyRing<PrimeField>, f: &Poly<u64>) -> Vec<(usize, Poly<u64>)> {
    let p = BigUint::from(r.base().characteristic());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = r.x();
    let mut h = r.rem_monic(&x, &rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = r.pow_mod_monic(&h, &p, &rest);
        let g = r.gcd(&rest, &r.sub(&h, &x));
        if g.deg() > 0 {
            rest = r.exact_div(&rest, &g).unwrap();
            h = r.rem_monic(&h, &rest);
            out.push((d, g));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    out
}

fn equal_degree(
    r: &PolyRing<PrimeField>,
    f: &Poly<u64>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<u64>> {
    if f.deg() == d {
        return vec![f.clone()];
    }
    let p = r.base().characteristic();
    let n = f.deg();
    loop {
        let a = r.from_coeffs((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = r.gcd(&a, f);
        let candidate = if g.deg() > 0 && g.deg() < n {
            g
        } else {
            let b = if p == 2 {
                // trace map a + a^2 + … + a^(2^(d−1))
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = r.mul_mod_monic(&t, &t, f);
                    acc = r.add(&acc, &t);
                }
                acc
            } else {
                let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / 2u32;
                let s = r.pow_mod_monic(&a, &e, f);
                r.sub(&s, &r.one())
            };
            r.gcd(&b, f)
        };
        if candidate.deg() > 0 && candidate.deg() < n {
            let cofactor = r.exact_div(f, &candidate).unwrap();
            let mut out = equal_degree(r, &candidate, d, rng);
            out.extend(equal_degree(r, &cofactor, d, rng));
            return out;
        }
    }
}

/// Reduces integer coefficients modulo p.
pub fn reduce_int_poly(f: &Poly<num_bigint::BigInt>, field: &PrimeField) -> Poly<u64> {
    PolyRing::new(*field).from_coeffs(f.coeffs().iter().map(|c| field.from_int(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn x_squared_minus_two_mod_seven() {
        let f = Poly::from_u64s(&[5, 0, 1]);
        let fac = factor_mod_p(&f, &fp(7)).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_u64s(&[4, 1]), 1), (Poly::from_u64s(&[3, 1]), 1)]
        );
    }

    #[test]
    fn inert_and_linear() {
        let f = Poly::from_u64s(&[1, 0, 1]);
        let fac = factor_mod_p(&f, &fp(3)).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
        let x = Poly::from_u64s(&[0, 1]);
        for p in [2, 3, 5, 97] {
            assert_eq!(factor_mod_p(&x, &fp(p)).unwrap().factors, vec![(x.clone(), 1)]);
        }
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(
            factor_mod_p(&Poly::zero(), &fp(5)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        let field = fp(3);
        let r = PolyRing::new(field);
        // (X+1)^4 (X^2+1)^3 · 2
        let a = r.pow(&Poly::from_u64s(&[1, 1]), 4);
        let b = r.pow(&Poly::from_u64s(&[1, 0, 1]), 3);
        let f = r.scale(&r.mul(&a, &b), &2);
        let fac = factor_mod_p(&f, &field).unwrap();
        assert_eq!(fac.leading, 2);
        assert_eq!(
            fac.factors,
            vec![(Poly::from_u64s(&[1, 1]), 4), (Poly::from_u64s(&[1, 0, 1]), 3)]
        );
        assert_eq!(fac.expand(&field), f);
    }

    #[test]
    fn characteristic_two_splitting() {
        let field = fp(2);
        let r = PolyRing::new(field);
        // product of the two irreducible cubics over 𝔽_2
        let f = r.mul(&Poly::from_u64s(&[1, 1, 0, 1]), &Poly::from_u64s(&[1, 0, 1, 1]));
        let fac = factor_mod_p(&f, &field).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&field), f);
    }

    #[test]
    fn seed_does_not_change_result() {
        let field = fp(13);
        let f = Poly::from_u64s(&[3, 1, 4, 1, 5, 9, 2, 6, 1]);
        let a = factor_mod_p_seeded(&f, &field, 1).unwrap();
        let b = factor_mod_p_seeded(&f, &field, 99).unwrap();
        assert_eq!(a, b);
    }
}
