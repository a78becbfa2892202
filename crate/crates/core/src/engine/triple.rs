use crate::arith::hensel::lift_residue_poly;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ring::Ring;
use crate::error::{Error, Result};
use crate::number_field::{crt_lift, power_basis_coords, CrtTarget};
use crate::valuation::base::{FracElem, LocalBase};

use super::certificate::{certify_by_conjugates, is_henselian, reciprocal_certificate, HenselVerdict, HenselianCertificate};
use super::{GeneratorPackage, LocalSetting};

/// `b = f(η) − η + r²s` with `η`, `r`, `s` henselian.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleCertificate<E> {
    pub b: Poly<E>,
    /// Lift to `A[X]` of the residue of `b` written in `ϑ`.
    pub f: Poly<E>,
    pub b_prime: Poly<E>,
    pub c: Poly<E>,
    pub eta: HenselianCertificate<E>,
    pub r: HenselianCertificate<E>,
    pub s: HenselianCertificate<E>,
}

fn expect_certificate<E>(v: HenselVerdict<E>, what: &str) -> Result<HenselianCertificate<E>> {
    match v {
        HenselVerdict::Henselian(c) => Ok(c),
        HenselVerdict::Rejected(r) => Err(Error::Precondition(format!("{what} was rejected: {}", r.reason))),
    }
}

pub fn henselian_triple<B: LocalBase>(
    setting: &LocalSetting<B>,
    pkg: &GeneratorPackage<B>,
    b: &Poly<FracElem<B>>,
) -> Result<TripleCertificate<FracElem<B>>> {
    let ext = setting.ext();
    let ring = ext.ring();
    let base = setting.base();
    let node = setting.chosen();
    let b = ring.reduce(b);
    let residue = node.residue(&b)?;
    let coeffs = power_basis_coords(&node.residue_field(), &pkg.residue_generator, &residue)
        .expect("the residue generator generates the residue field");
    let f = lift_residue_poly(base, &PolyRing::new(base.residue_field().clone()).from_coeffs(coeffs));
    let f_eta = ext.eval_poly(&f, &pkg.eta);
    let b_prime = ring.add(&ring.sub(&b, &f_eta), &pkg.eta);

    let one = PolyRing::new(base.residue_field().clone()).one();
    let mut targets = vec![CrtTarget {
        node,
        residue: one.clone(),
        exponent: 1,
    }];
    for o in setting.others() {
        let pole = o.valuation(&b_prime).is_some_and(|v| v < 0);
        targets.push(CrtTarget {
            node: o,
            residue: if pole { one.clone() } else { Poly::zero() },
            exponent: 1,
        });
    }
    let c = crt_lift(ext, &targets)?;
    let r = ring.mul(&b_prime, &c);
    let rc = ring.mul(&r, &c);

    let eta_cert = expect_certificate(is_henselian(setting, &pkg.eta, &pkg.min_poly)?, "eta")?;
    let r_cert = expect_certificate(certify_by_conjugates(setting, &r)?, "r")?;
    let rc_cert = expect_certificate(certify_by_conjugates(setting, &rc)?, "rc")?;
    let s_cert = expect_certificate(reciprocal_certificate(setting, &rc_cert)?, "s")?;
    let triple = TripleCertificate {
        b,
        f,
        b_prime,
        c,
        eta: eta_cert,
        r: r_cert,
        s: s_cert,
    };
    if !triple.identity_holds(setting) {
        return Err(Error::Precondition("triple identity failed to reconstruct b".into()));
    }
    Ok(triple)
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> TripleCertificate<E> {
    /// `b = f(η) − η + r²s`, exactly.
    pub fn identity_holds<B>(&self, setting: &LocalSetting<B>) -> bool
    where
        B: LocalBase,
        B::Fraction: Ring<Elem = E>,
    {
        let ext = setting.ext();
        let ring = ext.ring();
        let eta = &self.eta.element;
        let r2s = ring.mul(&ring.mul(&self.r.element, &self.r.element), &self.s.element);
        let rebuilt = ring.add(&ring.sub(&ext.eval_poly(&self.f, eta), eta), &r2s);
        setting.is_integral_poly(&self.f) && rebuilt == self.b
    }

    pub fn verify<B>(&self, setting: &LocalSetting<B>) -> bool
    where
        B: LocalBase,
        B::Fraction: Ring<Elem = E>,
    {
        self.identity_holds(setting)
            && self.eta.verify(setting)
            && self.r.verify(setting)
            && self.s.verify(setting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_fp::DEFAULT_SEED;
    use crate::engine::construct_generator;
    use crate::number_field::NumberField;
    use crate::valuation::PadicBase;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(cs: &[i64]) -> Poly<BigRational> {
        Poly::<BigRational>::from_i64s(cs)
    }

    #[test]
    fn sqrt_two_theta() {
        let k = NumberField::new(&Poly::<BigInt>::from_i64s(&[-2, 0, 1])).unwrap();
        let s = LocalSetting::new(k, PadicBase::new(7).unwrap(), 0).unwrap();
        let pkg = construct_generator(&s, DEFAULT_SEED).unwrap();
        let t = henselian_triple(&s, &pkg, &s.ext().theta()).unwrap();
        assert_eq!(t.f, q(&[3]));
        assert_eq!(t.b_prime, q(&[2, 5]));
        assert_eq!(t.c, q(&[4, 6]));
        assert_eq!(t.r.element, q(&[68, 32]));
        assert!(t.verify(&s));
        for b in [pkg.eta.clone(), Poly::zero(), q(&[3, -11])] {
            assert!(henselian_triple(&s, &pkg, &b).unwrap().verify(&s));
        }
    }
}
