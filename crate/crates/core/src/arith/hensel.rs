//! Quadratic Hensel lifting of coprime factorizations over a discrete
//! valuation ring.

use num_bigint::BigInt;

use super::factor_fp::{factor_mod_p, reduce_int_poly};
use super::modular::PrimeField;
use super::poly::{Poly, PolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::valuation::base::{FracElem, LocalBase, PadicBase, ResElem};

pub(crate) fn to_trunc<B: LocalBase>(base: &B, t: &B::Truncated, p: &Poly<FracElem<B>>) -> Poly<<B::Truncated as Ring>::Elem> {
    PolyRing::new(t.clone()).from_coeffs(p.coeffs().iter().map(|c| base.to_truncated(t, c)).collect())
}

pub(crate) fn from_trunc<B: LocalBase>(
    base: &B,
    t: &B::Truncated,
    p: &Poly<<B::Truncated as Ring>::Elem>,
) -> Poly<FracElem<B>> {
    PolyRing::new(base.fraction_field().clone())
        .from_coeffs(p.coeffs().iter().map(|c| base.from_truncated(t, c)).collect())
}

pub(crate) fn lift_residue_poly<B: LocalBase>(base: &B, p: &Poly<ResElem<B>>) -> Poly<FracElem<B>> {
    PolyRing::new(base.fraction_field().clone()).from_coeffs(p.coeffs().iter().map(|c| base.lift(c)).collect())
}

pub(crate) fn reduce_poly<B: LocalBase>(base: &B, p: &Poly<FracElem<B>>) -> Option<Poly<ResElem<B>>> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| base.reduce(c))
        .collect::<Option<Vec<_>>>()?;
    Some(PolyRing::new(base.residue_field().clone()).from_coeffs(coeffs))
}

/// Reduces an integral polynomial to `A/m^M` and back to canonical
/// representatives.
pub fn truncate_poly<B: LocalBase>(base: &B, p: &Poly<FracElem<B>>, precision: u32) -> Poly<FracElem<B>> {
    let t = base.truncated(precision);
    from_trunc(base, &t, &to_trunc(base, &t, p))
}

/// Lifts `f ≡ g₀·h₀ (mod m)` to `f ≡ g·h (mod m^precision)`.
///
/// `f` monic with coefficients in `A`; `g₀`, `h₀` monic and coprime over the
/// residue field.
pub fn lift_pair<B: LocalBase>(
    base: &B,
    f: &Poly<FracElem<B>>,
    g0: &Poly<ResElem<B>>,
    h0: &Poly<ResElem<B>>,
    precision: u32,
) -> (Poly<FracElem<B>>, Poly<FracElem<B>>) {
    let kx = PolyRing::new(base.residue_field().clone());
    let (one, s0, t0) = kx.ext_gcd(g0, h0);
    assert!(kx.is_one(&one), "Hensel lifting needs coprime residue factors");
    let mut g = lift_residue_poly(base, g0);
    let mut h = lift_residue_poly(base, h0);
    let mut s = lift_residue_poly(base, &s0);
    let mut t = lift_residue_poly(base, &t0);
    let mut prec = 1u32;
    while prec < precision {
        let next = (2 * prec).min(precision);
        let ring = base.truncated(next);
        let px = PolyRing::new(ring.clone());
        let ft = to_trunc(base, &ring, f);
        let (gt, ht, st, tt) = (
            to_trunc(base, &ring, &g),
            to_trunc(base, &ring, &h),
            to_trunc(base, &ring, &s),
            to_trunc(base, &ring, &t),
        );
        let e = px.sub(&ft, &px.mul(&gt, &ht));
        let (q, r) = px.div_rem_monic(&px.mul(&st, &e), &ht);
        let g1 = px.add(&px.add(&gt, &px.mul(&tt, &e)), &px.mul(&q, &gt));
        let h1 = px.add(&ht, &r);
        let b = px.sub(&px.add(&px.mul(&st, &g1), &px.mul(&tt, &h1)), &px.one());
        let (c, d) = px.div_rem_monic(&px.mul(&st, &b), &h1);
        let s1 = px.sub(&st, &d);
        let t1 = px.sub(&px.sub(&tt, &px.mul(&tt, &b)), &px.mul(&c, &g1));
        g = from_trunc(base, &ring, &g1);
        h = from_trunc(base, &ring, &h1);
        s = from_trunc(base, &ring, &s1);
        t = from_trunc(base, &ring, &t1);
        prec = next;
    }
    let (g, h) = (truncate_poly(base, &g, precision), truncate_poly(base, &h, precision));
    (g, h)
}

/// Lifts a complete factorization of the reduction of a monic `f` into
/// pairwise coprime monic factors; the order of `factors` is preserved.
pub fn lift_factors<B: LocalBase>(
    base: &B,
    f: &Poly<FracElem<B>>,
    factors: &[Poly<ResElem<B>>],
    precision: u32,
) -> Vec<Poly<FracElem<B>>> {
    match factors.len() {
        0 => Vec::new(),
        1 => vec![truncate_poly(base, f, precision)],
        n => {
            let kx = PolyRing::new(base.residue_field().clone());
            let (left, right) = factors.split_at(n / 2);
            let a = kx.product(left.iter());
            let b = kx.product(right.iter());
            let (fa, fb) = lift_pair(base, f, &a, &b, precision);
            let mut out = lift_factors(base, &fa, left, precision);
            out.extend(lift_factors(base, &fb, right, precision));
            out
        }
    }
}

/// Factors a monic integer polynomial modulo `p^m`, lifting its
/// factorization modulo `p`. Coefficients are returned in `[0, p^m)`.
pub fn hensel_lift_factorization(f: &Poly<BigInt>, p: u64, m: u32) -> Result<Vec<Poly<BigInt>>> {
    if f.leading().is_none_or(|c| *c != BigInt::from(1)) {
        return Err(Error::InvalidInput("Hensel lifting requires a monic polynomial".into()));
    }
    let base = PadicBase::new(p)?;
    let field = PrimeField::new(p)?;
    let fbar = reduce_int_poly(f, &field);
    let fac = factor_mod_p(&fbar, &field)?;
    if !fac.is_squarefree() {
        return Err(Error::Separability { modulus: p.to_string() });
    }
    let locals: Vec<Poly<u64>> = fac.factors.into_iter().map(|(g, _)| g).collect();
    let lifted = lift_factors(&base, &f.to_rational(), &locals, m.max(1));
    Ok(lifted
        .into_iter()
        .map(|g| Poly::new(g.coeffs().iter().map(|c| c.to_integer()).collect()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modular::ZMod;

    #[test]
    fn sqrt_two_mod_49() {
        let f = Poly::<BigInt>::from_i64s(&[-2, 0, 1]);
        let lifted = hensel_lift_factorization(&f, 7, 2).unwrap();
        // canonical order X−3, X−4 lifts to X−10, X−39
        assert_eq!(
            lifted,
            vec![Poly::<BigInt>::from_i64s(&[39, 1]), Poly::<BigInt>::from_i64s(&[10, 1])]
        );
        let r = PolyRing::new(ZMod::prime_power(7, 2));
        let fm = r.from_coeffs(f.coeffs().iter().map(|c| r.base().from_int(c)).collect());
        assert_eq!(r.mul(&lifted[0], &lifted[1]), fm);
    }

    #[test]
    fn inert_and_split_trivially() {
        let f = Poly::<BigInt>::from_i64s(&[1, 0, 1]);
        assert_eq!(hensel_lift_factorization(&f, 3, 4).unwrap(), vec![f.clone()]);
        let g = Poly::<BigInt>::from_i64s(&[-1, 0, 1]);
        assert_eq!(
            hensel_lift_factorization(&g, 7, 2).unwrap(),
            vec![Poly::<BigInt>::from_i64s(&[48, 1]), Poly::<BigInt>::from_i64s(&[1, 1])]
        );
    }

    #[test]
    fn rejects_repeated_factors() {
        let f = Poly::<BigInt>::from_i64s(&[1, 2, 1]);
        assert!(matches!(
            hensel_lift_factorization(&f, 5, 3),
            Err(Error::Separability { .. })
        ));
    }
}
