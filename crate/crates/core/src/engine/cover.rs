use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ring::Ring;
use crate::error::{Error, Result};
use crate::number_field::{crt_lift, CrtTarget};
use crate::valuation::base::{FracElem, LocalBase};

use super::{GeneratorPackage, LocalSetting};

/// Coordinates of `b·h′(η)` on `1, η, …, η^{n−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConductorReport<E> {
    pub coords: Vec<E>,
    pub integral: bool,
}

/// Checks that `b·h′(η)` lies in `A[η]` for `b` integral over `A`.
pub fn conductor_check<B: LocalBase>(
    setting: &LocalSetting<B>,
    pkg: &GeneratorPackage<B>,
    b: &Poly<FracElem<B>>,
) -> Result<ConductorReport<FracElem<B>>> {
    let ext = setting.ext();
    if !setting.is_integral_poly(&ext.min_poly(b)) {
        return Err(Error::Precondition("element is not integral over the base ring".into()));
    }
    let product = ext.ring().mul(b, &pkg.derivative_at_eta(setting));
    let coords = ext
        .coords_in_basis(&pkg.eta, &product)
        .expect("eta generates the extension");
    let integral = coords.iter().all(|c| setting.base().is_integral(c));
    Ok(ConductorReport { coords, integral })
}

/// `u^m · z = Σ aᵢ ηⁱ` with `aᵢ ∈ A`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverEntry<E> {
    pub z: Poly<E>,
    pub exponent: u32,
    pub coords: Vec<E>,
}

/// A unit `u ∈ A[η]` at the chosen prime with every `z` in `A[η, 1/u]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cover<E> {
    pub u: Poly<E>,
    /// `u` on the power basis of `η`.
    pub u_coords: Vec<E>,
    pub entries: Vec<CoverEntry<E>>,
}

fn check_inputs<B: LocalBase>(setting: &LocalSetting<B>, zs: &[Poly<FracElem<B>>]) -> Result<()> {
    match zs.iter().find(|z| setting.chosen().valuation(z).is_some_and(|v| v < 0)) {
        Some(z) => Err(Error::Precondition(format!(
            "element {} has negative value at the chosen prime",
            setting.render(z)
        ))),
        None => Ok(()),
    }
}

/// Builds `u` as a product of per-element denominators `b_z`, each a
/// unit at the chosen prime with `b_z z ∈ A[η]`.
pub fn localize_cover<B: LocalBase>(
    setting: &LocalSetting<B>,
    pkg: &GeneratorPackage<B>,
    zs: &[Poly<FracElem<B>>],
) -> Result<Cover<FracElem<B>>> {
    check_inputs(setting, zs)?;
    let ext = setting.ext();
    let ring = ext.ring();
    let dh = pkg.derivative_at_eta(setting);
    let mut u = ring.one();
    for z in zs {
        if setting.in_order(&pkg.eta, z).is_some() {
            continue;
        }
        // clear the poles of z at the other primes, then the conductor
        let k = setting
            .others()
            .filter_map(|o| o.valuation(z))
            .map(|v| -v)
            .max()
            .unwrap_or(0);
        let b_z = if k > 0 {
            let mut targets = vec![CrtTarget {
                node: setting.chosen(),
                residue: PolyRing::new(setting.base().residue_field().clone()).one(),
                exponent: 1,
            }];
            targets.extend(setting.others().map(|o| CrtTarget {
                node: o,
                residue: Poly::zero(),
                exponent: k as u32,
            }));
            ring.mul(&dh, &crt_lift(ext, &targets)?)
        } else {
            dh.clone()
        };
        u = ring.mul(&u, &b_z);
    }
    let cover = localize_cover_with(setting, pkg, &u, zs)?;
    cover.ok_or_else(|| Error::Precondition("constructed denominator does not cover the elements".into()))
}

/// Uses a given `u`, finding for each `z` the least `m` with
/// `u^m z ∈ A[η]`; `None` when some `z` is never reached.
pub fn localize_cover_with<B: LocalBase>(
    setting: &LocalSetting<B>,
    pkg: &GeneratorPackage<B>,
    u: &Poly<FracElem<B>>,
    zs: &[Poly<FracElem<B>>],
) -> Result<Option<Cover<FracElem<B>>>> {
    check_inputs(setting, zs)?;
    let ext = setting.ext();
    let ring = ext.ring();
    let u = ring.reduce(u);
    let Some(u_coords) = setting.in_order(&pkg.eta, &u) else {
        return Err(Error::Precondition("u does not lie in A[eta]".into()));
    };
    if setting.chosen().valuation(&u) != Some(0) {
        return Err(Error::Precondition("u is not a unit at the chosen prime".into()));
    }
    let dh = pkg.derivative_at_eta(setting);
    let mut entries = Vec::with_capacity(zs.len());
    for z in zs {
        // beyond this exponent u^m z lies in h'(η)·O_F ⊆ A[η] when u is in
        // every prime where z needs help
        let mut bound = 1i64;
        for o in setting.others() {
            let (Some(vz), Some(vd)) = (o.valuation(z), o.valuation(&dh)) else {
                continue;
            };
            if vz >= vd {
                continue;
            }
            if let Some(vu) = o.valuation(&u).filter(|&v| v > 0) {
                bound = bound.max((vd - vz + vu - 1) / vu);
            }
        }
        let mut acc = ring.reduce(z);
        let mut found = None;
        for m in 0..=bound {
            if let Some(coords) = setting.in_order(&pkg.eta, &acc) {
                found = Some((m as u32, coords));
                break;
            }
            acc = ring.mul(&acc, &u);
        }
        let Some((exponent, coords)) = found else {
            return Ok(None);
        };
        entries.push(CoverEntry {
            z: ring.reduce(z),
            exponent,
            coords,
        });
    }
    Ok(Some(Cover { u, u_coords, entries }))
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Cover<E> {
    /// Rebuilds `u` and each `u^m z` from the stored `η`-coordinates.
    pub fn verify<B>(&self, setting: &LocalSetting<B>, pkg: &GeneratorPackage<B>) -> bool
    where
        B: LocalBase,
        B::Fraction: Ring<Elem = E>,
    {
        let ext = setting.ext();
        let ring = ext.ring();
        let integral = |c: &[E]| c.iter().all(|x| setting.base().is_integral(x));
        integral(&self.u_coords)
            && ext.from_basis(&pkg.eta, &self.u_coords) == self.u
            && setting.chosen().valuation(&self.u) == Some(0)
            && self.entries.iter().all(|e| {
                integral(&e.coords)
                    && ext.from_basis(&pkg.eta, &e.coords) == ring.mul(&ring.pow(&self.u, e.exponent as u64), &e.z)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_fp::DEFAULT_SEED;
    use crate::arith::ring::int_rat;
    use crate::engine::construct_generator;
    use crate::number_field::NumberField;
    use crate::valuation::PadicBase;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(cs: &[i64]) -> Poly<BigRational> {
        Poly::<BigRational>::from_i64s(cs)
    }

    fn setting(chosen: usize) -> (LocalSetting<PadicBase>, GeneratorPackage<PadicBase>) {
        let k = NumberField::new(&Poly::<BigInt>::from_i64s(&[-2, 0, 1])).unwrap();
        let s = LocalSetting::new(k, PadicBase::new(7).unwrap(), chosen).unwrap();
        let pkg = construct_generator(&s, DEFAULT_SEED).unwrap();
        (s, pkg)
    }

    #[test]
    fn conductor_examples() {
        let (s, pkg) = setting(0);
        let r = conductor_check(&s, &pkg, &s.ext().theta()).unwrap();
        assert_eq!(r.coords, vec![int_rat(16), int_rat(0)]);
        assert!(r.integral);
        let r = conductor_check(&s, &pkg, &q(&[1])).unwrap();
        assert_eq!(r.coords, vec![int_rat(-10), int_rat(2)]);
        let r = conductor_check(&s, &pkg, &Poly::zero()).unwrap();
        assert_eq!(r.coords, vec![int_rat(0), int_rat(0)]);
        assert!(matches!(
            conductor_check(&s, &pkg, &Poly::new(vec![crate::arith::ring::rat(1, 7)])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn covers() {
        let (s, pkg) = setting(0);
        let c = localize_cover(&s, &pkg, &[s.ext().theta()]).unwrap();
        assert!(c.verify(&s, &pkg));
        let c = localize_cover(&s, &pkg, &[q(&[1])]).unwrap();
        assert_eq!(c.u, q(&[1]));
        // 1/(θ − 3) at the prime where θ ≡ 4
        let (s1, pkg1) = setting(1);
        let z = s1.ext().inv(&q(&[-3, 1])).unwrap();
        let c = localize_cover(&s1, &pkg1, std::slice::from_ref(&z)).unwrap();
        assert!(c.verify(&s1, &pkg1));
        assert!(matches!(localize_cover(&s, &pkg, &[z]), Err(Error::Precondition(_))));
        // with u = η, θ = 16/h'(η) needs no denominator beyond η^m
        let with_eta = localize_cover_with(&s, &pkg, &pkg.eta, &[s.ext().theta()]).unwrap().unwrap();
        assert!(with_eta.verify(&s, &pkg));
    }
}
