//! Factorization over ℚ: squarefree decomposition, factorization modulo a
//! good prime, Hensel lifting past the Mignotte bound, and exhaustive factor
//! recombination.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::factor_fp::{factor_mod_p, reduce_int_poly};
use super::hensel::lift_factors;
use super::modular::{PrimeField, ZMod};
use super::poly::{primitive_part, qpoly_ring, rational_to_primitive, Poly};
use super::ring::{is_prime, Ring};
use crate::error::{Error, Result};
use crate::valuation::base::PadicBase;

pub const MAX_RATIONAL_DEGREE: usize = 24;

/// Number of good primes tried when looking for the fewest local factors.
const PRIME_CANDIDATES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactorization {
    pub scalar: BigRational,
    /// Primitive integer factors with positive leading coefficient, sorted by
    /// degree and then coefficients.
    pub factors: Vec<(Poly<BigInt>, usize)>,
}

impl RationalFactorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn expand(&self) -> Poly<BigRational> {
        let q = qpoly_ring();
        let mut acc = q.constant(self.scalar.clone());
        for (g, m) in &self.factors {
            acc = q.mul(&acc, &q.pow(&g.to_rational(), *m as u64));
        }
        acc
    }
}

pub fn factor_over_rationals(f: &Poly<BigRational>) -> Result<RationalFactorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    if f.deg() > MAX_RATIONAL_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: f.deg(),
            bound: MAX_RATIONAL_DEGREE,
        });
    }
    let (scalar, g) = rational_to_primitive(f);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_parts(&g.to_rational()) {
        let (_, part) = rational_to_primitive(&part);
        for h in factor_squarefree(&part)? {
            factors.push((h, mult));
        }
    }
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Ok(RationalFactorization { scalar, factors })
}

pub fn is_irreducible_over_rationals(f: &Poly<BigRational>) -> Result<bool> {
    Ok(f.deg() >= 1 && factor_over_rationals(f)?.is_irreducible())
}

/// Yun's squarefree decomposition over ℚ.
fn squarefree_parts(f: &Poly<BigRational>) -> Vec<(Poly<BigRational>, usize)> {
    let q = qpoly_ring();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = q.derivative(f);
    let a0 = q.gcd(f, &df);
    let mut b = q.exact_div(f, &a0).unwrap();
    let c = q.exact_div(&df, &a0).unwrap();
    let mut d = q.sub(&c, &q.derivative(&b));
    let mut i = 1;
    while b.deg() > 0 {
        let a = q.gcd(&b, &d);
        let b_next = q.exact_div(&b, &a).unwrap();
        let c_next = q.exact_div(&d, &a).unwrap();
        d = q.sub(&c_next, &q.derivative(&b_next));
        if a.deg() > 0 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn factor_squarefree(h: &Poly<BigInt>) -> Result<Vec<Poly<BigInt>>> {
    let n = h.deg();
    if n <= 1 {
        return Ok(vec![h.clone()]);
    }
    let lc = h.leading().unwrap().clone();
    let mut best: Option<(u64, Vec<Poly<u64>>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < PRIME_CANDIDATES {
        p += 1;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = PrimeField::new(p)?;
        let fac = factor_mod_p(&reduce_int_poly(h, &field), &field)?;
        if !fac.is_squarefree() {
            continue;
        }
        tried += 1;
        let locals: Vec<Poly<u64>> = fac.factors.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| locals.len() < b.len()) {
            best = Some((p, locals));
        }
    }
    let (p, locals) = best.unwrap();
    if locals.len() == 1 {
        return Ok(vec![h.clone()]);
    }

    // coefficient bound 2^n (n+1) max|a_i| for any factor, times |lc|
    let max = h.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2u32).pow(n as u32) * BigInt::from(n + 1) * max * lc.abs() * 2;
    let mut exponent = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        exponent += 1;
    }
    let base = PadicBase::new(p)?;
    let q = qpoly_ring();
    let monic = q.scale(&h.to_rational(), &BigRational::from_integer(lc.clone()).recip());
    let lifted: Vec<Poly<BigInt>> = lift_factors(&base, &monic, &locals, exponent)
        .into_iter()
        .map(|g| Poly::new(g.coeffs().iter().map(|c| c.to_integer()).collect()))
        .collect();
    Ok(recombine(h, lifted, &ZMod::new(pk)))
}

fn recombine(h: &Poly<BigInt>, mut lifted: Vec<Poly<BigInt>>, modulus: &ZMod) -> Vec<Poly<BigInt>> {
    let zx = super::poly::PolyRing::new(modulus.clone());
    let mut out = Vec::new();
    let mut current = h.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in (0..lifted.len()).combinations(size) {
            let lc = modulus.from_int(current.leading().unwrap());
            let prod = subset
                .iter()
                .fold(zx.constant(lc), |acc, &i| zx.mul(&acc, &lifted[i]));
            let cand = Poly::new(prod.coeffs().iter().map(|c| modulus.symmetric(c)).collect());
            let (_, cand) = primitive_part(&cand);
            if let Some(quot) = exact_int_div(&current, &cand) {
                out.push(cand);
                current = primitive_part(&quot).1;
                let mut idx = 0;
                lifted.retain(|_| {
                    idx += 1;
                    !subset.contains(&(idx - 1))
                });
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.deg() > 0 {
        out.push(current);
    }
    out
}

fn exact_int_div(a: &Poly<BigInt>, b: &Poly<BigInt>) -> Option<Poly<BigInt>> {
    let q = qpoly_ring();
    to_integer_poly(&q.exact_div(&a.to_rational(), &b.to_rational())?)
}

/// Integer polynomial from a rational one with integer coefficients.
pub fn to_integer_poly(p: &Poly<BigRational>) -> Option<Poly<BigInt>> {
    p.coeffs()
        .iter()
        .all(|c| c.is_integer())
        .then(|| Poly::new(p.coeffs().iter().map(|c| c.to_integer()).collect()))
}
