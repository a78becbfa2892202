//! Dense univariate polynomials over a ring context.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::ring::{Field, Integers, Rationals, Ring};

/// Degree of a polynomial; the zero polynomial has degree −∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients constant term first; never carries trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// already excluded zero.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl<E: Zero> Poly<E> {
    /// Builds a polynomial from coefficients whose zero is `E::zero()`.
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
}

impl Poly<BigInt> {
    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl Poly<BigRational> {
    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::<BigInt>::from_i64s(cs).to_rational()
    }
}

impl Poly<u64> {
    pub fn from_u64s(cs: &[u64]) -> Self {
        let mut coeffs = cs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
}

/// Polynomial ring `R[X]` over a coefficient context.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// The indeterminate X.
    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    /// `X - a`.
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    pub fn coeff_or_zero(&self, p: &Poly<R::Elem>, i: usize) -> R::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, p: &Poly<R::Elem>) -> bool {
        p.leading().is_some_and(|c| self.base.is_one(c))
    }

    pub fn scale(&self, p: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(p.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, p: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if p.is_zero() {
            return p.clone();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(p.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(
            p.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(c, &self.base.from_int(&BigInt::from(i))))
                .collect(),
        )
    }

    pub fn eval(&self, p: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        p.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    /// Evaluates `p` at an element of another ring, mapping coefficients
    /// through `embed`.
    pub fn eval_in<S: Ring>(
        &self,
        p: &Poly<R::Elem>,
        target: &S,
        embed: impl Fn(&R::Elem) -> S::Elem,
        x: &S::Elem,
    ) -> S::Elem {
        p.coeffs
            .iter()
            .rev()
            .fold(target.zero(), |acc, c| target.add(&target.mul(&acc, x), &embed(c)))
    }

    pub fn map<S: Ring>(
        &self,
        p: &Poly<R::Elem>,
        target: &PolyRing<S>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        target.from_coeffs(p.coeffs.iter().map(f).collect())
    }

    /// `p(q(X))`.
    pub fn compose(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        p.coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, q), &self.constant(c.clone()))
        })
    }

    /// Coefficient reversal `X^n p(1/X)` with `n` the degree.
    pub fn reverse(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut v = p.coeffs.clone();
        v.reverse();
        self.from_coeffs(v)
    }

    /// Division with remainder by a polynomial whose leading coefficient is
    /// invertible (`lc_inv` is that inverse).
    pub fn div_rem_with(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
        lc_inv: &R::Elem,
    ) -> (Poly<R::Elem>, Poly<R::Elem>) {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let db = b.deg();
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut q = vec![self.base.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.base.mul(&r[i], lc_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, bj);
                r[i - db + j] = self.base.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    /// Division with remainder by a monic polynomial; valid over any ring.
    pub fn div_rem_monic(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
    ) -> (Poly<R::Elem>, Poly<R::Elem>) {
        debug_assert!(self.is_monic(b));
        self.div_rem_with(a, b, &self.base.one())
    }

    pub fn rem_monic(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.div_rem_monic(a, b).1
    }

    pub fn mul_mod_monic(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
        m: &Poly<R::Elem>,
    ) -> Poly<R::Elem> {
        self.rem_monic(&self.mul(a, b), m)
    }

    pub fn pow_mod_monic(
        &self,
        a: &Poly<R::Elem>,
        e: &BigUint,
        m: &Poly<R::Elem>,
    ) -> Poly<R::Elem> {
        let mut acc = self.rem_monic(&self.one(), m);
        let base = self.rem_monic(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod_monic(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mul_mod_monic(&acc, &base, m);
            }
        }
        acc
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Poly<R::Elem> {
        Poly::zero()
    }

    fn one(&self) -> Poly<R::Elem> {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(v)
    }

    fn sub(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(v)
    }

    fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|c| self.base.neg(c)).collect())
    }

    fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(v)
    }

    fn from_int(&self, n: &BigInt) -> Poly<R::Elem> {
        self.constant(self.base.from_int(n))
    }

    fn is_zero(&self, a: &Poly<R::Elem>) -> bool {
        a.is_zero()
    }
}

impl<F: Field> PolyRing<F> {
    pub fn div_rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let lc_inv = self
            .base
            .inv(b.leading().expect("division by the zero polynomial"))
            .expect("leading coefficient of a nonzero polynomial is invertible");
        self.div_rem_with(a, b, &lc_inv)
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.div_rem(a, b).1
    }

    /// `a / b` when `b` divides `a` exactly.
    pub fn exact_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.div_rem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, d: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.rem(a, d).is_zero()
    }

    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.leading() {
            None => p.clone(),
            Some(lc) => self.scale(p, &self.base.inv(lc).unwrap()),
        }
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g`, `g` the monic gcd.
    pub fn ext_gcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let li = self.base.inv(&lc).unwrap();
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    /// Inverse of `a` modulo `m`, if they are coprime.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.ext_gcd(a, m);
        if g.deg() == 0 && !g.is_zero() {
            Some(self.rem(&s, m))
        } else {
            None
        }
    }

    pub fn is_squarefree(&self, p: &Poly<F::Elem>) -> bool {
        !p.is_zero() && self.gcd(p, &self.derivative(p)).deg() == 0
    }
}

/// Content and primitive part of an integer polynomial; the primitive part
/// has positive leading coefficient.
pub fn primitive_part(p: &Poly<BigInt>) -> (BigInt, Poly<BigInt>) {
    use num_integer::Integer;
    use num_traits::Signed;
    if p.is_zero() {
        return (BigInt::zero(), p.clone());
    }
    let mut c = p.coeffs().iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if p.leading().unwrap().is_negative() {
        c = -c;
    }
    let pp = Poly::new(p.coeffs().iter().map(|a| a / &c).collect());
    (c, pp)
}

/// Writes `p` as `scalar · q` with `q` a primitive integer polynomial with
/// positive leading coefficient.
pub fn rational_to_primitive(p: &Poly<BigRational>) -> (BigRational, Poly<BigInt>) {
    if p.is_zero() {
        return (BigRational::zero(), Poly::zero());
    }
    let d = super::ring::common_denominator(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
        .collect();
    let (c, pp) = primitive_part(&Poly::new(ints));
    (BigRational::new(c, d), pp)
}

pub fn zpoly_ring() -> PolyRing<Integers> {
    PolyRing::new(Integers)
}

pub fn qpoly_ring() -> PolyRing<Rationals> {
    PolyRing::new(Rationals)
}

/// Human-readable rendering in the variable `var`, highest degree first.
pub fn render<E: fmt::Display>(p: &Poly<E>, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        let s = c.to_string();
        if s == "0" {
            continue;
        }
        let term = match i {
            0 => s,
            _ => {
                let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                match s.as_str() {
                    "1" => mono,
                    "-1" => format!("-{mono}"),
                    _ if s.contains(['+', '/']) || s[1..].contains('-') => format!("({s})*{mono}"),
                    _ => format!("{s}*{mono}"),
                }
            }
        };
        parts.push(term);
    }
    let mut out = parts[0].clone();
    for t in &parts[1..] {
        if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modular::PrimeField;

    #[test]
    fn zero_has_negative_infinite_degree() {
        let z: Poly<BigInt> = Poly::new(vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn division_and_gcd() {
        let r = qpoly_ring();
        let a = Poly::<BigRational>::from_i64s(&[-1, 0, 1]);
        let b = Poly::<BigRational>::from_i64s(&[1, 1]);
        let (q, rem) = r.div_rem(&a, &b);
        assert!(rem.is_zero());
        assert_eq!(q, Poly::<BigRational>::from_i64s(&[-1, 1]));
        let g = r.gcd(&a, &Poly::<BigRational>::from_i64s(&[1, 2, 1]));
        assert_eq!(g, b);
        let (g, s, t) = r.ext_gcd(&a, &Poly::<BigRational>::from_i64s(&[2, 1]));
        assert_eq!(g, r.one());
        let lhs = r.add(&r.mul(&s, &a), &r.mul(&t, &Poly::<BigRational>::from_i64s(&[2, 1])));
        assert_eq!(lhs, r.one());
    }

    #[test]
    fn pow_mod_over_fp() {
        let r = PolyRing::new(PrimeField::new(7).unwrap());
        let m = Poly::from_u64s(&[5, 0, 1]);
        // X^7 ≡ X^7 mod (X^2 - 2): X^2 = 2, X^7 = 8 X ≡ X
        let x7 = r.pow_mod_monic(&r.x(), &BigUint::from(7u32), &m);
        assert_eq!(x7, r.x());
    }

    #[test]
    fn primitive_and_render() {
        let p = Poly::<BigRational>::new(vec![
            BigRational::new(3.into(), 2.into()),
            BigRational::from_integer((-3).into()),
        ]);
        let (s, q) = rational_to_primitive(&p);
        assert_eq!(q, Poly::<BigInt>::from_i64s(&[-1, 2]));
        assert_eq!(s, BigRational::new((-3).into(), 2.into()));
        assert_eq!(render(&Poly::<BigInt>::from_i64s(&[-7, -10, 1]), "X"), "X^2 - 10*X - 7");
    }

    #[test]
    fn reversal() {
        let r = zpoly_ring();
        let h = Poly::<BigInt>::from_i64s(&[-2, 0, 1]);
        assert_eq!(r.reverse(&h), Poly::<BigInt>::from_i64s(&[1, 0, -2]));
    }
}
