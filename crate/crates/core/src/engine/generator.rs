use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::hensel::{lift_residue_poly, reduce_poly};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ring::Ring;
use crate::error::{Error, Result};
use crate::number_field::{crt_lift, min_poly_in, CrtTarget};
use crate::valuation::base::{FracElem, LocalBase, ResElem};

use super::LocalSetting;

pub const MAX_RETRIES: usize = 16;

/// A generator `η` of the extension that reduces to a generator `ϑ` of the
/// residue field at the chosen prime and lies in every other prime.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorPackage<B: LocalBase> {
    pub eta: Poly<FracElem<B>>,
    /// Monic minimal polynomial of `η`, with coefficients in `A`.
    pub min_poly: Poly<FracElem<B>>,
    pub chosen: usize,
    pub residue_generator: Poly<ResElem<B>>,
    /// `h mod m = X^l · g`.
    pub l: usize,
    pub g: Poly<ResElem<B>>,
    pub attempts: usize,
}

fn random_generator<B: LocalBase>(setting: &LocalSetting<B>, rng: &mut ChaCha8Rng) -> Poly<ResElem<B>> {
    let node = setting.chosen();
    let kx = PolyRing::new(setting.base().residue_field().clone());
    loop {
        let r = kx.from_coeffs((0..node.residue_degree()).map(|_| setting.base().random_residue(rng)).collect());
        if node.is_residue_generator(&r) {
            return r;
        }
    }
}

/// Lifts `ϑ` at the chosen prime and `0` at the others to an element of
/// `A[θ]`; retries with fresh generators and perturbed lifts while the
/// lift fails to generate the extension.
pub fn construct_generator<B: LocalBase>(setting: &LocalSetting<B>, seed: u64) -> Result<GeneratorPackage<B>> {
    let ext = setting.ext();
    let n = ext.degree();
    let node = setting.chosen();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta_residue = node.residue(&ext.theta())?;
    for attempt in 0..=MAX_RETRIES {
        let vartheta = if attempt == 0 && node.is_residue_generator(&theta_residue) {
            theta_residue.clone()
        } else {
            random_generator(setting, &mut rng)
        };
        let mut targets = vec![CrtTarget {
            node,
            residue: vartheta.clone(),
            exponent: 1,
        }];
        targets.extend(setting.others().map(|o| CrtTarget {
            node: o,
            residue: Poly::zero(),
            exponent: 1,
        }));
        let mut eta = crt_lift(ext, &targets)?;
        if attempt > 0 {
            // perturb by π times a random integral element
            let noise: Vec<_> = (0..n)
                .map(|_| setting.base().lift(&setting.base().random_residue(&mut rng)))
                .collect();
            let noise = ext.from_coords(noise)?;
            let pi = ext.from_base(setting.base().uniformizer());
            eta = ext.ring().add(&eta, &ext.ring().mul(&pi, &noise));
        }
        let h = ext.min_poly(&eta);
        if h.deg() < n {
            continue;
        }
        let g = min_poly_in(&node.residue_field(), &vartheta);
        let package = GeneratorPackage {
            eta,
            min_poly: h,
            chosen: setting.chosen_index(),
            residue_generator: vartheta,
            l: n - g.deg(),
            g,
            attempts: attempt + 1,
        };
        let failures = check_package(setting, &package);
        if !failures.is_empty() {
            return Err(Error::Precondition(format!(
                "generator invariants failed: {}",
                failures.join(", ")
            )));
        }
        return Ok(package);
    }
    Err(Error::DegenerateLift { retries: MAX_RETRIES })
}

/// Names of the package invariants that fail; empty when all hold.
pub fn check_package<B: LocalBase>(setting: &LocalSetting<B>, pkg: &GeneratorPackage<B>) -> Vec<&'static str> {
    let ext = setting.ext();
    let polys = setting.polys();
    let node = setting.chosen();
    let h = &pkg.min_poly;
    let mut failed = Vec::new();
    if pkg.chosen != setting.chosen_index() {
        failed.push("package belongs to another prime");
        return failed;
    }
    if h.deg() != ext.degree() || !polys.is_monic(h) {
        failed.push("h monic of full degree");
    }
    if !setting.is_integral_poly(h) {
        failed.push("h has coefficients in A");
    }
    if !ext.ring().is_zero(&ext.eval_poly(h, &pkg.eta)) {
        failed.push("h(eta) = 0");
    }
    if node.valuation(&pkg.eta) != Some(0) {
        failed.push("eta is a unit at the chosen prime");
    }
    if node.valuation(&ext.eval_poly(&polys.derivative(h), &pkg.eta)) != Some(0) {
        failed.push("h'(eta) is a unit at the chosen prime");
    }
    if node.residue(&pkg.eta).ok().as_ref() != Some(&pkg.residue_generator) {
        failed.push("eta reduces to the residue generator");
    }
    if setting.others().any(|o| o.valuation(&pkg.eta).is_some_and(|v| v <= 0)) {
        failed.push("eta lies in every other prime");
    }
    let kx = PolyRing::new(setting.base().residue_field().clone());
    let shape = kx.mul(&kx.monomial(kx.base().one(), pkg.l), &pkg.g);
    let g_ok = pkg.g == min_poly_in(&node.residue_field(), &pkg.residue_generator)
        && !kx.base().is_zero(&kx.coeff_or_zero(&pkg.g, 0))
        && pkg.l + pkg.g.deg() == ext.degree();
    if !g_ok || reduce_poly(setting.base(), h).as_ref() != Some(&shape) {
        failed.push("h mod m = X^l g with g(0) != 0");
    }
    failed
}

impl<B: LocalBase> GeneratorPackage<B> {
    /// `h′(η)`.
    pub fn derivative_at_eta(&self, setting: &LocalSetting<B>) -> Poly<FracElem<B>> {
        setting
            .ext()
            .eval_poly(&setting.polys().derivative(&self.min_poly), &self.eta)
    }

    /// `f(η)` for `f` with residue coefficients lifted to `A`.
    pub fn eval_residue_poly(&self, setting: &LocalSetting<B>, f: &Poly<ResElem<B>>) -> Poly<FracElem<B>> {
        setting
            .ext()
            .eval_poly(&lift_residue_poly(setting.base(), f), &self.eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_fp::DEFAULT_SEED;
    use crate::number_field::NumberField;
    use crate::valuation::PadicBase;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn setting(f: &[i64], p: u64, chosen: usize) -> LocalSetting<PadicBase> {
        let k = NumberField::new(&Poly::<BigInt>::from_i64s(f)).unwrap();
        LocalSetting::new(k, PadicBase::new(p).unwrap(), chosen).unwrap()
    }

    #[test]
    fn sqrt_two_at_seven() {
        let s = setting(&[-2, 0, 1], 7, 0);
        let pkg = construct_generator(&s, DEFAULT_SEED).unwrap();
        assert_eq!(pkg.eta, Poly::<BigRational>::from_i64s(&[5, 4]));
        assert_eq!(pkg.min_poly, Poly::<BigRational>::from_i64s(&[-7, -10, 1]));
        assert_eq!(pkg.l, 1);
        assert_eq!(pkg.g, Poly::from_u64s(&[4, 1]));
        assert!(check_package(&s, &pkg).is_empty());
    }

    #[test]
    fn inert_primes() {
        let s = setting(&[-1, -1, 0, 1], 2, 0);
        let pkg = construct_generator(&s, DEFAULT_SEED).unwrap();
        assert_eq!(pkg.eta, s.ext().theta());
        assert_eq!(pkg.l, 0);
        assert_eq!(pkg.g, Poly::from_u64s(&[1, 1, 0, 1]));
        let gi = setting(&[1, 0, 1], 3, 0);
        let pkg = construct_generator(&gi, DEFAULT_SEED).unwrap();
        assert_eq!(pkg.min_poly, Poly::<BigRational>::from_i64s(&[1, 0, 1]));
        assert_eq!(pkg.g, Poly::from_u64s(&[1, 0, 1]));
    }

    #[test]
    fn every_node_of_a_split_cubic() {
        // X^3 - 3X + 1 splits completely mod 17
        let s = setting(&[1, -3, 0, 1], 17, 0);
        for i in 0..s.nodes().len() {
            let si = s.choose(i).unwrap();
            let pkg = construct_generator(&si, 7).unwrap();
            assert!(check_package(&si, &pkg).is_empty());
        }
    }
}
