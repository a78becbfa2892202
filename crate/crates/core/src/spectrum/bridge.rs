use num_rational::BigRational;

use crate::arith::poly::Poly;
use crate::arith::ratfun::RatFun;
use crate::engine::{GeneratorPackage, LocalSetting};
use crate::error::Result;
use crate::valuation::base::{FracElem, ResElem};
use crate::valuation::{LocalBase, PadicBase, ValuedFieldDescriptor, XadicBase};

use super::{enumerate_spectrum, ratfun_poly, FiberFactor, FiniteSpectrum};

/// Bases whose rings `A[η]` get a spectrum.
pub trait SpectrumBase: LocalBase {
    fn descriptor(&self) -> ValuedFieldDescriptor;
    fn to_ratfun(&self, a: &FracElem<Self>) -> RatFun;
    fn from_ratfun(&self, a: &RatFun) -> Option<FracElem<Self>>;
    fn fiber_factor(&self, g: &Poly<ResElem<Self>>) -> FiberFactor;
}

impl SpectrumBase for PadicBase {
    fn descriptor(&self) -> ValuedFieldDescriptor {
        ValuedFieldDescriptor::PadicQ { p: self.p() }
    }
    fn to_ratfun(&self, a: &BigRational) -> RatFun {
        RatFun::constant(a.clone())
    }
    fn from_ratfun(&self, a: &RatFun) -> Option<BigRational> {
        let c = a.as_polynomial().filter(|c| c.deg() == 0)?;
        Some(c.coeffs().first().cloned().unwrap_or_default())
    }
    fn fiber_factor(&self, g: &Poly<u64>) -> FiberFactor {
        FiberFactor::Modular(g.clone())
    }
}

impl SpectrumBase for XadicBase {
    fn descriptor(&self) -> ValuedFieldDescriptor {
        ValuedFieldDescriptor::XadicRatfun
    }
    fn to_ratfun(&self, a: &RatFun) -> RatFun {
        a.clone()
    }
    fn from_ratfun(&self, a: &RatFun) -> Option<RatFun> {
        Some(a.clone())
    }
    fn fiber_factor(&self, g: &Poly<BigRational>) -> FiberFactor {
        FiberFactor::Rational(g.clone())
    }
}

/// Spectrum of `A[η]` with `n` the prime where `η` reduces to `ϑ`.
pub fn spectrum_of<B: SpectrumBase>(setting: &LocalSetting<B>, pkg: &GeneratorPackage<B>) -> Result<FiniteSpectrum> {
    let base = setting.base();
    let h = ratfun_poly(pkg.min_poly.coeffs().iter().map(|c| base.to_ratfun(c)).collect());
    enumerate_spectrum(&base.descriptor(), &h, &base.fiber_factor(&pkg.g))
}

/// `u(η)` in the extension.
pub fn element_at_eta<B: SpectrumBase>(
    setting: &LocalSetting<B>,
    pkg: &GeneratorPackage<B>,
    u: &Poly<RatFun>,
) -> Option<Poly<FracElem<B>>> {
    let coeffs = u
        .coeffs()
        .iter()
        .map(|c| setting.base().from_ratfun(c))
        .collect::<Option<Vec<_>>>()?;
    Some(setting.ext().eval_poly(&setting.polys().from_coeffs(coeffs), &pkg.eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_fp::DEFAULT_SEED;
    use crate::engine::{construct_generator, localize_cover_with};
    use crate::number_field::NumberField;
    use crate::spectrum::fg_conditions;
    use num_bigint::BigInt;

    #[test]
    fn from_the_engine() {
        let k = NumberField::new(&Poly::<BigInt>::from_i64s(&[-2, 0, 1])).unwrap();
        let s = LocalSetting::new(k, PadicBase::new(7).unwrap(), 0).unwrap();
        let pkg = construct_generator(&s, DEFAULT_SEED).unwrap();
        let spec = spectrum_of(&s, &pkg).unwrap();
        assert_eq!(spec, crate::spectrum::tests::sqrt2_at_7());
        let report = fg_conditions(&spec);
        let u = element_at_eta(&s, &pkg, &report.u).unwrap();
        assert_eq!(u, pkg.eta);
        let z = s.ext().theta();
        assert!(localize_cover_with(&s, &pkg, &u, &[z]).unwrap().unwrap().verify(&s, &pkg));
    }
}
