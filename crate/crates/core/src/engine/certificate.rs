use crate::arith::poly::Poly;
use crate::arith::ring::{Field, Ring};
use crate::error::{Error, Result};
use crate::valuation::base::{FracElem, LocalBase};

use super::LocalSetting;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Witness supplied by the caller.
    Direct,
    /// Every other prime contains the element.
    ConjugatesPositive,
    /// At every other prime the element or its inverse lies in the prime.
    ConjugatesNonzero,
    /// Reversed witness of the inverse of a certified unit.
    Reciprocal,
}

/// `h(b) = 0` with `h ∈ A[X]` and `h′(b)` a unit at the chosen prime.
#[derive(Clone, Debug, PartialEq)]
pub struct HenselianCertificate<E> {
    pub element: Poly<E>,
    pub witness: Poly<E>,
    pub node: usize,
    pub kind: CertificateKind,
    /// Valuation of `h′(b)` at the chosen prime.
    pub derivative_value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Rejection {
    pub reason: String,
    /// Offending prime, when one is to blame.
    pub node: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum HenselVerdict<E> {
    Henselian(HenselianCertificate<E>),
    Rejected(Rejection),
}

impl<E> HenselVerdict<E> {
    pub fn certificate(self) -> Option<HenselianCertificate<E>> {
        match self {
            HenselVerdict::Henselian(c) => Some(c),
            HenselVerdict::Rejected(_) => None,
        }
    }

    pub fn is_henselian(&self) -> bool {
        matches!(self, HenselVerdict::Henselian(_))
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> HenselianCertificate<E> {
    /// Recomputes every condition from scratch.
    pub fn verify<B>(&self, setting: &LocalSetting<B>) -> bool
    where
        B: LocalBase,
        B::Fraction: Ring<Elem = E>,
    {
        let Some(node) = setting.nodes().get(self.node) else {
            return false;
        };
        let ext = setting.ext();
        let b = ext.ring().reduce(&self.element);
        !self.witness.is_zero()
            && setting.is_integral_poly(&self.witness)
            && ext.ring().is_zero(&ext.eval_poly(&self.witness, &b))
            && node.valuation(&ext.eval_poly(&setting.polys().derivative(&self.witness), &b)) == Some(0)
            && self.derivative_value == 0
    }
}

fn check<B: LocalBase>(
    setting: &LocalSetting<B>,
    b: &Poly<FracElem<B>>,
    h: &Poly<FracElem<B>>,
    kind: CertificateKind,
) -> HenselVerdict<FracElem<B>> {
    let ext = setting.ext();
    if !ext.ring().is_zero(&ext.eval_poly(h, b)) {
        return HenselVerdict::Rejected(Rejection {
            reason: "h(b) is not zero".into(),
            node: None,
        });
    }
    let dh = ext.eval_poly(&setting.polys().derivative(h), b);
    match setting.chosen().valuation(&dh) {
        Some(0) => HenselVerdict::Henselian(HenselianCertificate {
            element: b.clone(),
            witness: h.clone(),
            node: setting.chosen_index(),
            kind,
            derivative_value: 0,
        }),
        v => HenselVerdict::Rejected(Rejection {
            reason: format!(
                "h'(b) is not a unit at the chosen prime (value {})",
                v.map_or("inf".to_string(), |v| v.to_string())
            ),
            node: Some(setting.chosen_index()),
        }),
    }
}

/// Tests the defining conditions for a caller-supplied witness.
pub fn is_henselian<B: LocalBase>(
    setting: &LocalSetting<B>,
    b: &Poly<FracElem<B>>,
    h: &Poly<FracElem<B>>,
) -> Result<HenselVerdict<FracElem<B>>> {
    if h.is_zero() {
        return Err(Error::InvalidInput("witness polynomial is zero".into()));
    }
    if let Some(c) = h.coeffs().iter().find(|c| !setting.base().is_integral(c)) {
        return Err(Error::InvalidWitness(setting.base().render(c)));
    }
    Ok(check(setting, &setting.ext().ring().reduce(b), h, CertificateKind::Direct))
}

/// Divides by the coefficient of minimal valuation, lowest index first,
/// unless the polynomial is already `A`-primitive.
pub(crate) fn primitive_rescale<B: LocalBase>(setting: &LocalSetting<B>, h: &Poly<FracElem<B>>) -> Poly<FracElem<B>> {
    let base = setting.base();
    let vals: Vec<Option<i64>> = h.coeffs().iter().map(|c| base.valuation(c)).collect();
    let Some(min) = vals.iter().flatten().min().copied() else {
        return h.clone();
    };
    if min == 0 {
        return h.clone();
    }
    let i = vals.iter().position(|v| *v == Some(min)).unwrap();
    let inv = base.fraction_field().inv(&h.coeffs()[i]).unwrap();
    setting.polys().scale(h, &inv)
}

/// Certifies `z` from the values of `z` at the primes other than the
/// chosen one: all positive, or all nonzero.
pub fn certify_by_conjugates<B: LocalBase>(
    setting: &LocalSetting<B>,
    z: &Poly<FracElem<B>>,
) -> Result<HenselVerdict<FracElem<B>>> {
    let chosen = setting.chosen();
    let residue = chosen
        .residue(z)
        .map_err(|e| Error::Precondition(format!("element has no residue at the chosen prime: {e}")))?;
    if !chosen.is_residue_generator(&residue) {
        return Err(Error::Precondition(
            "residue at the chosen prime is not a nonzero generator of the residue field".into(),
        ));
    }
    let values: Vec<(usize, Option<i64>)> = setting.others().map(|n| (n.index(), n.valuation(z))).collect();
    let kind = if values.iter().all(|(_, v)| v.is_none_or(|v| v > 0)) {
        CertificateKind::ConjugatesPositive
    } else if let Some((i, _)) = values.iter().find(|(_, v)| *v == Some(0)) {
        return Ok(HenselVerdict::Rejected(Rejection {
            reason: format!("element is a unit at node {i}"),
            node: Some(*i),
        }));
    } else {
        CertificateKind::ConjugatesNonzero
    };
    let h = primitive_rescale(setting, &setting.ext().min_poly(z));
    Ok(check(setting, &setting.ext().ring().reduce(z), &h, kind))
}

/// `X^n h(1/X)` with `n = deg h`; the degree drops when `h(0) = 0`.
pub fn reciprocal_transform<R: Ring>(polys: &crate::arith::poly::PolyRing<R>, h: &Poly<R::Elem>) -> Poly<R::Elem> {
    polys.reverse(h)
}

/// Certificate for `b⁻¹` with the reversed witness, from a certificate for
/// a unit `b`.
pub fn reciprocal_certificate<B: LocalBase>(
    setting: &LocalSetting<B>,
    cert: &HenselianCertificate<FracElem<B>>,
) -> Result<HenselVerdict<FracElem<B>>> {
    if setting.chosen().valuation(&cert.element) != Some(0) {
        return Err(Error::Precondition("element is not a unit at the chosen prime".into()));
    }
    let inv = setting.ext().inv(&cert.element).unwrap();
    let g = reciprocal_transform(&setting.polys(), &cert.witness);
    Ok(check(setting, &inv, &g, CertificateKind::Reciprocal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::int_rat;
    use crate::number_field::NumberField;
    use crate::valuation::PadicBase;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(cs: &[i64]) -> Poly<BigRational> {
        Poly::<BigRational>::from_i64s(cs)
    }

    fn setting(f: &[i64], p: u64, chosen: usize) -> LocalSetting<PadicBase> {
        let k = NumberField::new(&Poly::<BigInt>::from_i64s(f)).unwrap();
        LocalSetting::new(k, PadicBase::new(p).unwrap(), chosen).unwrap()
    }

    #[test]
    fn direct_witnesses() {
        let s = setting(&[-2, 0, 1], 7, 0);
        let theta = s.ext().theta();
        let v = is_henselian(&s, &theta, &q(&[-2, 0, 1])).unwrap();
        assert!(v.clone().certificate().unwrap().verify(&s));
        let zero = s.ext().ring().zero();
        assert!(is_henselian(&s, &zero, &q(&[0, 1])).unwrap().is_henselian());
        // b = θ − 3 with h = (X² + 6X + 7)²
        let b = q(&[-3, 1]);
        let h = s.polys().pow(&q(&[7, 6, 1]), 2);
        assert!(is_henselian(&s, &b, &q(&[7, 6, 1])).unwrap().is_henselian());
        assert!(matches!(is_henselian(&s, &b, &h).unwrap(), HenselVerdict::Rejected(_)));
        let bad = Poly::new(vec![crate::arith::ring::rat(1, 7), int_rat(1)]);
        assert!(matches!(is_henselian(&s, &b, &bad), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn conjugate_criterion() {
        let s = setting(&[-2, 0, 1], 7, 0);
        let eta = q(&[5, 4]);
        let HenselVerdict::Henselian(c) = certify_by_conjugates(&s, &eta).unwrap() else {
            panic!("expected a certificate");
        };
        assert_eq!(c.witness, q(&[-7, -10, 1]));
        assert_eq!(c.kind, CertificateKind::ConjugatesPositive);
        match certify_by_conjugates(&s, &s.ext().theta()).unwrap() {
            HenselVerdict::Rejected(r) => assert_eq!(r.node, Some(1)),
            other => panic!("unexpected {other:?}"),
        }
        let inert = setting(&[-1, -1, 0, 1], 2, 0);
        assert!(certify_by_conjugates(&inert, &inert.ext().theta()).unwrap().is_henselian());
        assert!(matches!(
            certify_by_conjugates(&s, &q(&[0, 7])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reciprocal() {
        let r = crate::arith::poly::qpoly_ring();
        assert_eq!(reciprocal_transform(&r, &q(&[-2, 0, 1])), q(&[1, 0, -2]));
        assert_eq!(reciprocal_transform(&r, &q(&[-1, 1])), q(&[1, -1]));
        assert_eq!(reciprocal_transform(&r, &q(&[-7, -10, 1])), q(&[1, -10, -7]));
        let s = setting(&[-2, 0, 1], 7, 0);
        let c = is_henselian(&s, &s.ext().theta(), &q(&[-2, 0, 1])).unwrap().certificate().unwrap();
        let rc = reciprocal_certificate(&s, &c).unwrap().certificate().unwrap();
        assert!(rc.verify(&s));
        assert_eq!(rc.element, Poly::new(vec![int_rat(0), crate::arith::ring::rat(1, 2)]));
    }
}
