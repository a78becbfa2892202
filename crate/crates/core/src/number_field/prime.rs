//! Primes of an extension above the maximal ideal of a [`LocalBase`], for
//! defining polynomials with squarefree reduction.

use std::sync::{Arc, RwLock};

use crate::arith::hensel::{from_trunc, lift_pair, lift_residue_poly, reduce_poly, to_trunc};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::quotient::QuotientRing;
use crate::arith::ring::Ring;
use crate::error::{Error, Result};
use crate::valuation::base::{FracElem, LocalBase, ResElem};

use super::extension::{AlgebraicElement, Extension};

pub const DEFAULT_PRECISION: u32 = 8;

#[derive(Debug)]
struct Lifted<E> {
    precision: u32,
    factor: Poly<E>,
}

/// The prime `(π, G(θ))` where `G` is the Hensel lift of one irreducible
/// factor `g` of the reduction of `f`.
#[derive(Clone, Debug)]
pub struct PrimeNode<B: LocalBase> {
    base: B,
    index: usize,
    defining: Poly<FracElem<B>>,
    local_factor: Poly<ResElem<B>>,
    cofactor: Poly<ResElem<B>>,
    precision_start: u32,
    lifted: Arc<RwLock<Lifted<FracElem<B>>>>,
}

impl<B: LocalBase> PartialEq for PrimeNode<B> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.local_factor == other.local_factor && self.defining == other.defining
    }
}

impl<B: LocalBase> PrimeNode<B> {
    pub fn base(&self) -> &B {
        &self.base
    }

    /// Position in the canonical factor order.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn local_factor(&self) -> &Poly<ResElem<B>> {
        &self.local_factor
    }

    pub fn residue_degree(&self) -> usize {
        self.local_factor.deg()
    }

    /// `k[Y]/(g)`, the residue field of the node.
    pub fn residue_field(&self) -> QuotientRing<B::Residue> {
        QuotientRing::new(self.base.residue_field().clone(), self.local_factor.clone())
    }

    /// Precision currently held by the lifted factor.
    pub fn precision(&self) -> u32 {
        self.lifted.read().unwrap().precision
    }

    /// Lift of the local factor, correct at least modulo `π^precision`.
    pub fn lifted_factor(&self, precision: u32) -> Poly<FracElem<B>> {
        {
            let held = self.lifted.read().unwrap();
            if held.precision >= precision {
                return held.factor.clone();
            }
        }
        let mut held = self.lifted.write().unwrap();
        if held.precision < precision {
            let target = precision.max(2 * held.precision);
            let (g, _) = lift_pair(&self.base, &self.defining, &self.local_factor, &self.cofactor, target);
            *held = Lifted {
                precision: target,
                factor: g,
            };
        }
        held.factor.clone()
    }

    /// Image of `b` (coordinates integral) in `(A/π^M)[X]/(G)`.
    fn local_image(&self, b: &Poly<FracElem<B>>, precision: u32) -> Poly<FracElem<B>> {
        let t = self.base.truncated(precision);
        let px = PolyRing::new(t.clone());
        let g = to_trunc(&self.base, &t, &self.lifted_factor(precision));
        let r = px.rem_monic(&to_trunc(&self.base, &t, b), &g);
        from_trunc(&self.base, &t, &r)
    }

    /// `(e, π^{−e} b)` with `e` the minimal coordinate valuation.
    fn normalize(&self, b: &AlgebraicElement<FracElem<B>>) -> (i64, Poly<FracElem<B>>) {
        let e = b
            .coeffs()
            .iter()
            .filter_map(|c| self.base.valuation(c))
            .min()
            .unwrap_or(0);
        let scale = self.base.uniformizer_pow(-e);
        (e, PolyRing::new(self.base.fraction_field().clone()).scale(b, &scale))
    }

    /// Valuation of `b` at this node, normalized so `π` has value 1;
    /// `None` for zero.
    pub fn valuation(&self, b: &AlgebraicElement<FracElem<B>>) -> Option<i64> {
        if b.is_zero() {
            return None;
        }
        let (e, b0) = self.normalize(b);
        let mut m = self.precision_start;
        loop {
            let img = self.local_image(&b0, m);
            if let Some(w) = img.coeffs().iter().filter_map(|c| self.base.valuation(c)).min() {
                if w < m as i64 {
                    return Some(e + w);
                }
            }
            m *= 2;
        }
    }

    /// Whether `b` lies in this prime of the local ring.
    pub fn contains(&self, b: &AlgebraicElement<FracElem<B>>) -> bool {
        self.valuation(b).is_none_or(|v| v > 0)
    }

    /// Residue class of `b` in `k[Y]/(g)`.
    pub fn residue(&self, b: &AlgebraicElement<FracElem<B>>) -> Result<Poly<ResElem<B>>> {
        let Some(w) = self.valuation(b) else {
            return Ok(Poly::zero());
        };
        if w < 0 {
            return Err(Error::NotIntegral(format!("valuation {w} at node {}", self.index)));
        }
        let (e, b0) = self.normalize(b);
        let m = (self.precision_start as i64).max(w - e + 1).max(1 - e) as u32;
        let img = self.local_image(&b0, m);
        let fx = PolyRing::new(self.base.fraction_field().clone());
        let scaled = fx.scale(&img, &self.base.uniformizer_pow(e));
        let r = reduce_poly(&self.base, &scaled).expect("scaled image is integral");
        Ok(PolyRing::new(self.base.residue_field().clone()).rem(&r, &self.local_factor))
    }

    /// Whether a residue class generates `k[Y]/(g)` over `k`.
    pub fn is_residue_generator(&self, r: &Poly<ResElem<B>>) -> bool {
        let q = self.residue_field();
        !r.is_zero() && super::extension::min_poly_in(&q, r).deg() == self.residue_degree()
    }
}

/// Splits the maximal ideal of `base` in `ext`, with the default starting
/// precision.
pub fn split_prime<B: LocalBase>(ext: &Extension<B::Fraction>, base: &B) -> Result<Vec<PrimeNode<B>>> {
    split_prime_with(ext, base, DEFAULT_PRECISION)
}

pub fn split_prime_with<B: LocalBase>(
    ext: &Extension<B::Fraction>,
    base: &B,
    precision_start: u32,
) -> Result<Vec<PrimeNode<B>>> {
    let f = ext.defining_polynomial();
    let fbar = reduce_poly(base, f).ok_or_else(|| {
        Error::NotIntegral(format!("defining polynomial has a coefficient outside the base ring at {}", base.label()))
    })?;
    let kx = PolyRing::new(base.residue_field().clone());
    if !kx.is_squarefree(&fbar) {
        return Err(Error::Ramified { modulus: base.label() });
    }
    let factors = base.factor_residue(&fbar)?;
    Ok(factors
        .into_iter()
        .enumerate()
        .map(|(index, (g, _))| {
            let cofactor = kx.exact_div(&fbar, &g).unwrap();
            PrimeNode {
                base: base.clone(),
                index,
                defining: f.clone(),
                local_factor: g,
                cofactor,
                precision_start: precision_start.max(1),
                lifted: Arc::new(RwLock::new(Lifted {
                    precision: 0,
                    factor: Poly::zero(),
                })),
            }
        })
        .collect())
}

/// Residue prescription for [`crt_lift`]: the residue at `node` when
/// `exponent` is 1, and valuation at least `exponent` when the target is 0.
#[derive(Clone, Debug)]
pub struct CrtTarget<'a, B: LocalBase> {
    pub node: &'a PrimeNode<B>,
    pub residue: Poly<ResElem<B>>,
    pub exponent: u32,
}

/// Element of `A[θ]` meeting every prescription, with coordinates reduced
/// to canonical representatives modulo `π^K`, `K` the largest exponent.
pub fn crt_lift<B: LocalBase>(
    ext: &Extension<B::Fraction>,
    targets: &[CrtTarget<'_, B>],
) -> Result<AlgebraicElement<FracElem<B>>> {
    let Some(first) = targets.first() else {
        return Ok(ext.ring().zero());
    };
    let base = first.node.base();
    for (i, a) in targets.iter().enumerate() {
        if a.exponent == 0 {
            return Err(Error::InvalidInput("crt exponents must be at least 1".into()));
        }
        if targets[..i].iter().any(|b| b.node == a.node) {
            return Err(Error::InvalidInput(format!("node {} appears twice", a.node.index())));
        }
    }
    let k = targets.iter().map(|t| t.exponent).max().unwrap();
    let t = base.truncated(k);
    let px = PolyRing::new(t.clone());
    let kx = PolyRing::new(base.residue_field().clone());
    let gs: Vec<_> = targets
        .iter()
        .map(|a| to_trunc(base, &t, &a.node.lifted_factor(k)))
        .collect();
    let modulus = px.product(gs.iter());
    let mut x = px.zero();
    for (a, g) in targets.iter().zip(&gs) {
        let (q, _) = px.div_rem_monic(&modulus, g);
        let qbar = reduce_poly(base, &from_trunc(base, &t, &q)).unwrap();
        let inv0 = kx
            .inv_mod(&qbar, a.node.local_factor())
            .expect("distinct nodes have coprime factors");
        // Newton iteration s ← s(2 − qs) doubles the precision of the inverse
        let mut s = to_trunc(base, &t, &lift_residue_poly(base, &inv0));
        let two = px.constant(t.from_i64(2));
        let mut prec = 1;
        while prec < k {
            s = px.rem_monic(&px.mul(&s, &px.sub(&two, &px.mul(&q, &s))), g);
            prec *= 2;
        }
        let idempotent = px.mul(&q, &s);
        let target = kx.rem(&a.residue, a.node.local_factor());
        let lifted = to_trunc(base, &t, &lift_residue_poly(base, &target));
        x = px.add(&x, &px.rem_monic(&px.mul(&lifted, &idempotent), &modulus));
    }
    x = px.rem_monic(&x, &modulus);
    Ok(ext.ring().reduce(&from_trunc(base, &t, &x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::{int_rat, rat};
    use crate::number_field::extension::NumberField;
    use crate::valuation::base::PadicBase;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn field(cs: &[i64]) -> NumberField {
        NumberField::new(&Poly::<BigInt>::from_i64s(cs)).unwrap()
    }

    fn elem(k: &NumberField, cs: &[i64]) -> Poly<BigRational> {
        k.from_coords(cs.iter().map(|&c| int_rat(c)).collect()).unwrap()
    }

    #[test]
    fn splitting_shapes() {
        let k = field(&[-2, 0, 1]);
        let nodes = split_prime(&k, &PadicBase::new(7).unwrap()).unwrap();
        assert_eq!(nodes.len(), 2);
        assert_eq!(nodes[0].local_factor(), &Poly::from_u64s(&[4, 1]));
        assert_eq!(nodes[1].local_factor(), &Poly::from_u64s(&[3, 1]));

        let gi = field(&[1, 0, 1]);
        let inert = split_prime(&gi, &PadicBase::new(3).unwrap()).unwrap();
        assert_eq!(inert.len(), 1);
        assert_eq!(inert[0].residue_degree(), 2);

        let cubic = field(&[-1, -1, 0, 1]);
        let nodes = split_prime(&cubic, &PadicBase::new(2).unwrap()).unwrap();
        assert_eq!(nodes.iter().map(|n| n.residue_degree()).collect::<Vec<_>>(), vec![3]);

        assert!(matches!(
            split_prime(&k, &PadicBase::new(2).unwrap()),
            Err(Error::Ramified { .. })
        ));
    }

    #[test]
    fn valuations_and_residues() {
        let k = field(&[-2, 0, 1]);
        let nodes = split_prime(&k, &PadicBase::new(7).unwrap()).unwrap();
        let theta = k.theta();
        assert_eq!(nodes[0].valuation(&theta), Some(0));
        assert_eq!(nodes[0].residue(&theta).unwrap(), Poly::from_u64s(&[3]));
        let eta = elem(&k, &[5, 4]);
        assert!(nodes[1].valuation(&eta).unwrap() >= 1);
        assert_eq!(nodes[0].valuation(&k.ring().zero()), None);
        // 1/(θ − 3) is a unit at the node where θ ≡ 4
        let inv = k.inv(&elem(&k, &[-3, 1])).unwrap();
        assert_eq!(nodes[1].valuation(&inv), Some(0));
        assert_eq!(nodes[1].residue(&inv).unwrap(), Poly::from_u64s(&[1]));
        assert!(matches!(nodes[0].residue(&inv), Err(Error::NotIntegral(_))));
        // 7/2 has value 1 everywhere
        assert_eq!(nodes[0].valuation(&k.from_base(rat(7, 2))), Some(1));

        let gi = field(&[1, 0, 1]);
        let inert = split_prime(&gi, &PadicBase::new(3).unwrap()).unwrap();
        assert_eq!(inert[0].residue(&gi.theta()).unwrap(), Poly::from_u64s(&[0, 1]));
    }

    #[test]
    fn crt_examples() {
        let k = field(&[-2, 0, 1]);
        let nodes = split_prime(&k, &PadicBase::new(7).unwrap()).unwrap();
        let target = |node, r: u64| CrtTarget {
            node,
            residue: Poly::from_u64s(&[r]),
            exponent: 1,
        };
        let eta = crt_lift(&k, &[target(&nodes[0], 3), target(&nodes[1], 0)]).unwrap();
        assert_eq!(eta, elem(&k, &[5, 4]));
        let c = crt_lift(&k, &[target(&nodes[0], 1), target(&nodes[1], 0)]).unwrap();
        assert_eq!(c, elem(&k, &[4, 6]));
        assert!(matches!(
            crt_lift(&k, &[target(&nodes[0], 1), target(&nodes[0], 0)]),
            Err(Error::InvalidInput(_))
        ));
        let deep = crt_lift(
            &k,
            &[
                target(&nodes[0], 2),
                CrtTarget {
                    node: &nodes[1],
                    residue: Poly::zero(),
                    exponent: 3,
                },
            ],
        )
        .unwrap();
        assert_eq!(nodes[0].residue(&deep).unwrap(), Poly::from_u64s(&[2]));
        assert!(nodes[1].valuation(&deep).unwrap() >= 3);
    }

}
