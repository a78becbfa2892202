//! Concrete valued fields, their valuations, the rank-2 decomposition and
//! centers on finitely generated rings.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::poly::render;
use crate::arith::ratfun::RatFun;
use crate::arith::ring::rational_valuation;
use crate::error::{Error, Result};
use crate::number_field::{AlgebraicElement, NumberField, PrimeNode};

use super::base::PadicBase;
use super::value::ValueVector;

#[derive(Clone, Debug)]
pub enum ValuedFieldDescriptor {
    /// ℚ with the p-adic valuation.
    PadicQ { p: u64 },
    /// ℚ(x) with the x-adic valuation.
    XadicRatfun,
    /// ℚ(t) with `(ord_t, v_p of the lowest t-coefficient)`.
    CompositeTP { p: u64 },
    /// A number field with the valuation of one prime above p.
    NumberFieldPrime {
        field: Arc<NumberField>,
        node: PrimeNode<PadicBase>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldElement {
    Rational(BigRational),
    RationalFunction(RatFun),
    Algebraic(AlgebraicElement<BigRational>),
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::RationalFunction(r) => write!(f, "{r}"),
            FieldElement::Algebraic(a) => write!(f, "{}", render(a, "θ")),
        }
    }
}

#[derive(Serialize)]
struct DescriptorWire {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    node: Option<usize>,
}

impl Serialize for ValuedFieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, p, node) = match self {
            ValuedFieldDescriptor::PadicQ { p } => ("PADIC_Q", Some(*p), None),
            ValuedFieldDescriptor::XadicRatfun => ("XADIC_RATFUN", None, None),
            ValuedFieldDescriptor::CompositeTP { p } => ("COMPOSITE_T_P", Some(*p), None),
            ValuedFieldDescriptor::NumberFieldPrime { node, .. } => {
                ("NUMBER_FIELD_PRIME", Some(node.base().p()), Some(node.index()))
            }
        };
        DescriptorWire {
            kind,
            p,
            rank: self.rank(),
            node,
        }
        .serialize(s)
    }
}

impl ValuedFieldDescriptor {
    pub fn rank(&self) -> usize {
        match self {
            ValuedFieldDescriptor::CompositeTP { .. } => 2,
            _ => 1,
        }
    }

    fn domain_error(&self, a: &FieldElement) -> Error {
        Error::Domain(format!("{a} for {}", serde_json::to_string(self).unwrap()))
    }
}

/// Value of `a`; `∞` for zero.
pub fn valuate(desc: &ValuedFieldDescriptor, a: &FieldElement) -> Result<ValueVector> {
    use FieldElement::*;
    use ValuedFieldDescriptor::*;
    match (desc, a) {
        (PadicQ { p }, Rational(q)) => Ok(ValueVector::rank1(rational_valuation(q, *p))),
        (XadicRatfun, Rational(q)) => Ok(ValueVector::rank1(RatFun::constant(q.clone()).order())),
        (XadicRatfun, RationalFunction(f)) => Ok(ValueVector::rank1(f.order())),
        (CompositeTP { p }, Rational(q)) => Ok(composite(&RatFun::constant(q.clone()), *p)),
        (CompositeTP { p }, RationalFunction(f)) => Ok(composite(f, *p)),
        (NumberFieldPrime { field, node }, Rational(q)) => {
            Ok(ValueVector::rank1(node.valuation(&field.from_base(q.clone()))))
        }
        (NumberFieldPrime { field, node }, Algebraic(b)) if b.coeffs().len() <= field.degree() => {
            Ok(ValueVector::rank1(node.valuation(b)))
        }
        _ => Err(desc.domain_error(a)),
    }
}

fn composite(f: &RatFun, p: u64) -> ValueVector {
    match (f.order(), f.lowest_coefficient()) {
        (Some(o), Some(c)) => ValueVector::Finite(vec![o, rational_valuation(&c, p).unwrap()]),
        _ => ValueVector::Infinity,
    }
}

/// The coarsening at level `j` of a rank-k valuation: the convex subgroup
/// `{0}^j × ℤ^{k−j}`, the coarse valuation on the same field and the
/// valuation induced on its residue field.
#[derive(Clone, Debug, Serialize)]
pub struct ConvexDecomposition {
    pub level: usize,
    pub rank: usize,
    pub coarse: ValuedFieldDescriptor,
    pub residue: ValuedFieldDescriptor,
}

pub fn decompose_at_prime(desc: &ValuedFieldDescriptor, level: usize) -> Result<ConvexDecomposition> {
    let rank = desc.rank();
    if rank < 2 {
        return Err(Error::NoProperPrime);
    }
    if level == 0 || level >= rank {
        return Err(Error::InvalidInput(format!("prime level must lie strictly between 0 and {rank}")));
    }
    match desc {
        ValuedFieldDescriptor::CompositeTP { p } => Ok(ConvexDecomposition {
            level,
            rank,
            coarse: ValuedFieldDescriptor::XadicRatfun,
            residue: ValuedFieldDescriptor::PadicQ { p: *p },
        }),
        _ => unreachable!("only the composite descriptor has rank 2"),
    }
}

impl ConvexDecomposition {
    /// Membership in the convex subgroup.
    pub fn delta_contains(&self, g: &ValueVector) -> bool {
        g.coords().is_some_and(|c| c[..self.level].iter().all(|&x| x == 0))
    }

    /// Residue in the coarse residue field ℚ of the unit part `a / t^{v_p(a)}`.
    pub fn residue_of_unit_part(&self, a: &FieldElement) -> Result<Option<BigRational>> {
        match a {
            FieldElement::Rational(q) => Ok(Some(q.clone()).filter(|q| !q.is_zero())),
            FieldElement::RationalFunction(f) => Ok(f.lowest_coefficient()),
            FieldElement::Algebraic(_) => Err(Error::Domain(format!("{a} is not in ℚ(t)"))),
        }
    }

    /// `(v_p(a), v̄_p(residue of the unit part))`, computed from the two
    /// component valuations alone.
    pub fn reassemble(&self, a: &FieldElement) -> Result<ValueVector> {
        let coarse = valuate(&self.coarse, a)?;
        let Some(r) = self.residue_of_unit_part(a)? else {
            return Ok(ValueVector::Infinity);
        };
        let fine = valuate(&self.residue, &FieldElement::Rational(r))?;
        Ok(coarse.concat(&fine))
    }

    /// Checks on samples that `γ ∈ Δ` exactly when `−v(a) < γ < v(a)` for
    /// every sampled `a` in the prime; returns the probes where the sampled
    /// inequalities and membership disagree.
    pub fn delta_mismatches(
        &self,
        desc: &ValuedFieldDescriptor,
        prime_sample: &[FieldElement],
        probes: &[ValueVector],
    ) -> Result<Vec<ValueVector>> {
        let mut values = Vec::new();
        for a in prime_sample {
            let v = valuate(desc, a)?;
            let in_prime = v.coords().is_some_and(|c| c[..self.level].iter().any(|&x| x != 0))
                && v.signum() == Ordering::Greater;
            if !in_prime && !v.is_infinite() {
                return Err(Error::InvalidInput(format!("{a} does not lie in the level-{} prime", self.level)));
            }
            values.push(v);
        }
        Ok(probes
            .iter()
            .filter(|g| {
                let bounded = values
                    .iter()
                    .filter_map(|v| v.neg().map(|n| (n, v)))
                    .all(|(lo, hi)| lo < **g && **g < *hi);
                bounded != self.delta_contains(g)
            })
            .cloned()
            .collect())
    }
}

/// Center of a valuation on the ring generated by `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Center {
    /// Indices of the generators of positive value.
    pub positive: Vec<usize>,
    /// Whether the center is a proper nonzero ideal, so the valuation ring
    /// dominates a local ring of positive dimension.
    pub dominates: bool,
}

pub fn center_of(desc: &ValuedFieldDescriptor, generators: &[FieldElement]) -> Result<Center> {
    let mut positive = Vec::new();
    for (i, a) in generators.iter().enumerate() {
        let v = valuate(desc, a)?;
        match v.signum() {
            Ordering::Less => return Err(Error::NoCenter { witness: a.to_string() }),
            Ordering::Greater if !v.is_infinite() => positive.push(i),
            _ => {}
        }
    }
    let dominates = !positive.is_empty();
    Ok(Center { positive, dominates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::ring::{int_rat, rat};

    fn ratfun(cs: &[i64]) -> FieldElement {
        FieldElement::RationalFunction(RatFun::from_poly(&Poly::<BigRational>::from_i64s(cs)))
    }

    #[test]
    fn valuate_examples() {
        let v = |d, a| valuate(&d, &a).unwrap();
        assert_eq!(
            v(ValuedFieldDescriptor::PadicQ { p: 2 }, FieldElement::Rational(rat(8, 3))),
            ValueVector::Finite(vec![3])
        );
        let c2 = ValuedFieldDescriptor::CompositeTP { p: 2 };
        assert_eq!(v(c2.clone(), ratfun(&[0, 2, 1])), ValueVector::Finite(vec![1, 1]));
        assert_eq!(v(c2.clone(), FieldElement::Rational(rat(3, 2))), ValueVector::Finite(vec![0, -1]));
        assert_eq!(v(c2, FieldElement::Rational(int_rat(0))), ValueVector::Infinity);
        assert!(matches!(
            valuate(&ValuedFieldDescriptor::PadicQ { p: 2 }, &ratfun(&[0, 1])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn decomposition_examples() {
        let c2 = ValuedFieldDescriptor::CompositeTP { p: 2 };
        let d = decompose_at_prime(&c2, 1).unwrap();
        assert!(matches!(d.coarse, ValuedFieldDescriptor::XadicRatfun));
        assert!(matches!(d.residue, ValuedFieldDescriptor::PadicQ { p: 2 }));
        assert_eq!(d.reassemble(&ratfun(&[0, 2, 1])).unwrap(), ValueVector::Finite(vec![1, 1]));
        assert_eq!(d.reassemble(&ratfun(&[1])).unwrap(), ValueVector::Finite(vec![0, 0]));
        assert!(matches!(
            decompose_at_prime(&ValuedFieldDescriptor::PadicQ { p: 3 }, 1),
            Err(Error::NoProperPrime)
        ));
        assert!(d.delta_contains(&ValueVector::Finite(vec![0, -7])));
        assert!(!d.delta_contains(&ValueVector::Finite(vec![1, 0])));
    }

    #[test]
    fn centers() {
        let p7 = ValuedFieldDescriptor::PadicQ { p: 7 };
        let c = center_of(&p7, &[FieldElement::Rational(int_rat(7)), FieldElement::Rational(int_rat(3))]).unwrap();
        assert_eq!(c.positive, vec![0]);
        assert!(matches!(
            center_of(&p7, &[FieldElement::Rational(rat(1, 7))]),
            Err(Error::NoCenter { witness }) if witness == "1/7"
        ));
        let c = center_of(&ValuedFieldDescriptor::XadicRatfun, &[ratfun(&[0, 1]), ratfun(&[1, 1])]).unwrap();
        assert_eq!(c.positive, vec![0]);
    }

    #[test]
    fn descriptor_json() {
        assert_eq!(
            serde_json::to_string(&ValuedFieldDescriptor::CompositeTP { p: 2 }).unwrap(),
            r#"{"kind":"COMPOSITE_T_P","p":2,"rank":2}"#
        );
    }
}
