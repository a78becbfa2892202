//! Discrete rank-1 valuation rings used as base rings `A ⊂ L`.
//!
//! Two instances: `ℤ_(p) ⊂ ℚ` and `ℚ[x]_(x) ⊂ ℚ(x)`. Everything above the
//! base (extensions, prime nodes, the henselian engine) is generic over
//! [`LocalBase`].

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use crate::arith::factor_fp::{canonical_cmp, factor_mod_p};
use crate::arith::factor_q::factor_over_rationals;
use crate::arith::modular::{PrimeField, ZMod};
use crate::arith::poly::{qpoly_ring, Poly};
use crate::arith::quotient::QuotientRing;
use crate::arith::ratfun::{RatFun, RationalFunctions};
use crate::arith::ring::{int_valuation, mod_inverse, rational_valuation, Field, Rationals, Ring};
use crate::error::{Error, Result};

pub type FracElem<B> = <<B as LocalBase>::Fraction as Ring>::Elem;
pub type ResElem<B> = <<B as LocalBase>::Residue as Ring>::Elem;
pub type TruncElem<B> = <<B as LocalBase>::Truncated as Ring>::Elem;

pub trait LocalBase: Clone + Debug + Send + Sync {
    /// Fraction field `L`.
    type Fraction: Field;
    /// Residue field `A/m`.
    type Residue: Field;
    /// `A/m^M` for a chosen precision `M`.
    type Truncated: Ring;

    fn fraction_field(&self) -> &Self::Fraction;
    fn residue_field(&self) -> &Self::Residue;
    /// Short label of the maximal ideal, e.g. `7` or `x`.
    fn label(&self) -> String;

    fn valuation(&self, a: &FracElem<Self>) -> Option<i64>;
    fn uniformizer(&self) -> FracElem<Self>;
    /// Residue class; `None` when `a` is not in `A`.
    fn reduce(&self, a: &FracElem<Self>) -> Option<ResElem<Self>>;
    /// Canonical representative in `A` of a residue class.
    fn lift(&self, r: &ResElem<Self>) -> FracElem<Self>;

    fn truncated(&self, precision: u32) -> Self::Truncated;
    /// Image of an element of `A` in `A/m^M`.
    fn to_truncated(&self, t: &Self::Truncated, a: &FracElem<Self>) -> TruncElem<Self>;
    /// Canonical representative in `A`.
    fn from_truncated(&self, t: &Self::Truncated, e: &TruncElem<Self>) -> FracElem<Self>;
    /// Valuation below the precision; `None` when `e` vanishes in `A/m^M`.
    fn truncated_valuation(&self, t: &Self::Truncated, e: &TruncElem<Self>) -> Option<u32>;

    /// Monic irreducible factors with multiplicities, canonically ordered.
    fn factor_residue(&self, f: &Poly<ResElem<Self>>) -> Result<Vec<(Poly<ResElem<Self>>, usize)>>;
    fn residue_cmp(&self, a: &Poly<ResElem<Self>>, b: &Poly<ResElem<Self>>) -> Ordering;
    fn random_residue(&self, rng: &mut dyn RngCore) -> ResElem<Self>;

    fn render(&self, a: &FracElem<Self>) -> String;
    fn render_residue(&self, a: &ResElem<Self>) -> String;

    fn is_integral(&self, a: &FracElem<Self>) -> bool {
        self.valuation(a).is_none_or(|v| v >= 0)
    }

    /// `π^k` for any integer `k`.
    fn uniformizer_pow(&self, k: i64) -> FracElem<Self> {
        let f = self.fraction_field();
        let pi = self.uniformizer();
        let pk = f.pow(&pi, k.unsigned_abs());
        if k >= 0 {
            pk
        } else {
            f.inv(&pk).unwrap()
        }
    }
}

/// `ℤ_(p)` inside ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicBase {
    residue: PrimeField,
}

impl PadicBase {
    pub fn new(p: u64) -> Result<Self> {
        Ok(PadicBase {
            residue: PrimeField::new(p)?,
        })
    }

    pub fn p(&self) -> u64 {
        self.residue.characteristic()
    }
}

impl LocalBase for PadicBase {
    type Fraction = Rationals;
    type Residue = PrimeField;
    type Truncated = ZMod;

    fn fraction_field(&self) -> &Rationals {
        &Rationals
    }
    fn residue_field(&self) -> &PrimeField {
        &self.residue
    }
    fn label(&self) -> String {
        self.p().to_string()
    }
    fn valuation(&self, a: &BigRational) -> Option<i64> {
        rational_valuation(a, self.p())
    }
    fn uniformizer(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.p()))
    }
    fn reduce(&self, a: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p());
        if int_valuation(a.denom(), self.p()).unwrap_or(0) > 0 {
            return None;
        }
        let n = self.residue.from_int(a.numer());
        let d = self.residue.from_int(&(a.denom() % &p));
        Some(self.residue.mul(&n, &self.residue.inv(&d).unwrap()))
    }
    fn lift(&self, r: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*r))
    }
    fn truncated(&self, precision: u32) -> ZMod {
        ZMod::prime_power(self.p(), precision.max(1))
    }
    fn to_truncated(&self, t: &ZMod, a: &BigRational) -> BigInt {
        let d = mod_inverse(a.denom(), t.modulus()).expect("element is not p-integral");
        t.mul(&t.from_int(a.numer()), &d)
    }
    fn from_truncated(&self, _t: &ZMod, e: &BigInt) -> BigRational {
        BigRational::from_integer(e.clone())
    }
    fn truncated_valuation(&self, _t: &ZMod, e: &BigInt) -> Option<u32> {
        int_valuation(e, self.p())
    }
    fn factor_residue(&self, f: &Poly<u64>) -> Result<Vec<(Poly<u64>, usize)>> {
        Ok(factor_mod_p(f, &self.residue)?.factors)
    }
    fn residue_cmp(&self, a: &Poly<u64>, b: &Poly<u64>) -> Ordering {
        canonical_cmp(&self.residue, a, b)
    }
    fn random_residue(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p())
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn render_residue(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// `ℚ[x]_(x)` inside ℚ(x).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct XadicBase;

impl LocalBase for XadicBase {
    type Fraction = RationalFunctions;
    type Residue = Rationals;
    type Truncated = QuotientRing<Rationals>;

    fn fraction_field(&self) -> &RationalFunctions {
        &RationalFunctions
    }
    fn residue_field(&self) -> &Rationals {
        &Rationals
    }
    fn label(&self) -> String {
        "x".to_string()
    }
    fn valuation(&self, a: &RatFun) -> Option<i64> {
        a.order()
    }
    fn uniformizer(&self) -> RatFun {
        RatFun::t()
    }
    fn reduce(&self, a: &RatFun) -> Option<BigRational> {
        match a.order() {
            None => Some(BigRational::zero()),
            Some(v) if v > 0 => Some(BigRational::zero()),
            Some(0) => a.lowest_coefficient(),
            Some(_) => None,
        }
    }
    fn lift(&self, r: &BigRational) -> RatFun {
        RatFun::constant(r.clone())
    }
    fn truncated(&self, precision: u32) -> QuotientRing<Rationals> {
        let q = qpoly_ring();
        QuotientRing::new(Rationals, q.monomial(BigRational::one(), precision.max(1) as usize))
    }
    fn to_truncated(&self, t: &QuotientRing<Rationals>, a: &RatFun) -> Poly<BigRational> {
        let num = t.reduce(&a.numer_q());
        let den_inv = t
            .try_inv(&t.reduce(&a.denom_q()))
            .expect("element is not x-integral");
        t.mul(&num, &den_inv)
    }
    fn from_truncated(&self, _t: &QuotientRing<Rationals>, e: &Poly<BigRational>) -> RatFun {
        RatFun::from_poly(e)
    }
    fn truncated_valuation(&self, _t: &QuotientRing<Rationals>, e: &Poly<BigRational>) -> Option<u32> {
        e.coeffs().iter().position(|c| !c.is_zero()).map(|i| i as u32)
    }
    fn factor_residue(&self, f: &Poly<BigRational>) -> Result<Vec<(Poly<BigRational>, usize)>> {
        let fac = factor_over_rationals(f)?;
        let q = qpoly_ring();
        let mut out: Vec<(Poly<BigRational>, usize)> = fac
            .factors
            .iter()
            .map(|(g, m)| (q.monic(&g.to_rational()), *m))
            .collect();
        out.sort_by(|a, b| self.residue_cmp(&a.0, &b.0));
        Ok(out)
    }
    fn residue_cmp(&self, a: &Poly<BigRational>, b: &Poly<BigRational>) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
    }
    fn random_residue(&self, rng: &mut dyn RngCore) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-6i64..=6)))
    }
    fn render(&self, a: &RatFun) -> String {
        a.to_string().replace('t', "x")
    }
    fn render_residue(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Helper for rendering coefficient vectors.
pub fn render_coords<B: LocalBase>(base: &B, coords: &[FracElem<B>]) -> Vec<String> {
    coords.iter().map(|c| base.render(c)).collect()
}

pub fn small_int(a: &BigRational) -> Option<i64> {
    if a.is_integer() {
        a.numer().to_i64()
    } else {
        None
    }
}

pub fn require_integral<B: LocalBase>(base: &B, a: &FracElem<B>, what: &str) -> Result<()> {
    if base.is_integral(a) {
        Ok(())
    } else {
        Err(Error::NotIntegral(format!("{what} = {}", base.render(a))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::rat;

    #[test]
    fn padic_reduce_and_truncate() {
        let b = PadicBase::new(7).unwrap();
        assert_eq!(b.reduce(&rat(1, 2)), Some(4));
        assert_eq!(b.reduce(&rat(1, 7)), None);
        let t = b.truncated(2);
        assert_eq!(b.to_truncated(&t, &rat(-1, 1)), BigInt::from(48));
        assert_eq!(b.truncated_valuation(&t, &BigInt::from(14)), Some(1));
        assert_eq!(b.truncated_valuation(&t, &BigInt::from(0)), None);
    }

    #[test]
    fn xadic_reduce_and_truncate() {
        let b = XadicBase;
        let f = RatFun::from_parts(
            &Poly::<BigRational>::from_i64s(&[2, 1]),
            &Poly::<BigRational>::from_i64s(&[1, 1]),
        )
        .unwrap();
        assert_eq!(b.reduce(&f), Some(BigRational::from_integer(2.into())));
        let t = b.truncated(3);
        // (2 + x)/(1 + x) = 2 - x + x^2 - …
        assert_eq!(b.to_truncated(&t, &f), Poly::<BigRational>::from_i64s(&[2, -1, 1]));
    }
}
