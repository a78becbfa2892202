//! Finite prime spectra of the rings `A[η] = A[X]/(h)` over a base ring
//! whose primes form a chain of length one or two.
//!
//! A prime over the base prime at level `j` is `(𝔭_j, f(η))` for an
//! irreducible factor `f` of the reduction of `h` at that level. Membership
//! and inclusion are decided by reducing and testing divisibility.

pub mod bridge;
pub mod chains;
pub mod conditions;
pub mod oracle;

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::modular::PrimeField;
use crate::arith::poly::{qpoly_ring, render, Poly, PolyRing};
use crate::arith::ratfun::{RatFun, RationalFunctions};
use crate::error::{Error, Result};
use crate::valuation::{LocalBase, PadicBase, ValuedFieldDescriptor, XadicBase};

pub use bridge::{element_at_eta, spectrum_of, SpectrumBase};
pub use chains::{chain_decomposition, maximal_chains, width};
pub use conditions::{fg_conditions, localization_equality, restriction_check, ChainMinimum, FgReport, Localization};
pub use oracle::fiber_by_root_search;

/// Largest `deg h` accepted.
pub const MAX_SPECTRUM_DEGREE: usize = 12;

/// Prime chain of the base ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseChain {
    /// `(0) ⊂ (p)` in `ℤ_(p)`.
    Padic { p: u64 },
    /// `(0) ⊂ (x)` in `ℚ[x]_(x)`.
    Xadic,
    /// `(0) ⊂ 𝔭 ⊂ (p)` in the rank-2 valuation ring of ℚ(t), where `𝔭` is
    /// the set of elements of positive `t`-order.
    Composite { p: u64 },
}

impl BaseChain {
    pub fn from_descriptor(desc: &ValuedFieldDescriptor) -> Result<Self> {
        match desc {
            ValuedFieldDescriptor::PadicQ { p } => Ok(BaseChain::Padic { p: *p }),
            ValuedFieldDescriptor::XadicRatfun => Ok(BaseChain::Xadic),
            ValuedFieldDescriptor::CompositeTP { p } => Ok(BaseChain::Composite { p: *p }),
            ValuedFieldDescriptor::NumberFieldPrime { .. } => Err(Error::Unsupported(
                "spectra are computed over ℚ or ℚ(t) bases only".into(),
            )),
        }
    }

    pub fn descriptor(&self) -> ValuedFieldDescriptor {
        match *self {
            BaseChain::Padic { p } => ValuedFieldDescriptor::PadicQ { p },
            BaseChain::Xadic => ValuedFieldDescriptor::XadicRatfun,
            BaseChain::Composite { p } => ValuedFieldDescriptor::CompositeTP { p },
        }
    }

    /// Index of the maximal ideal in the chain.
    pub fn top(&self) -> usize {
        match self {
            BaseChain::Composite { .. } => 2,
            _ => 1,
        }
    }

    fn prime_label(&self, level: usize) -> String {
        match (self, level) {
            (_, 0) => "0".into(),
            (BaseChain::Padic { p }, _) => p.to_string(),
            (BaseChain::Xadic, _) => "x".into(),
            (BaseChain::Composite { .. }, 1) => "𝔭".into(),
            (BaseChain::Composite { p }, _) => p.to_string(),
        }
    }

    fn field(&self) -> Option<PrimeField> {
        match self {
            BaseChain::Padic { p } | BaseChain::Composite { p } => Some(PrimeField::new(*p).unwrap()),
            BaseChain::Xadic => None,
        }
    }

    /// Whether `a` lies in the base ring.
    pub fn is_integral(&self, a: &RatFun) -> bool {
        match self {
            BaseChain::Padic { p } => match a.as_polynomial() {
                Some(c) if c.deg() == 0 => {
                    let c = c.coeffs().first().cloned().unwrap_or_default();
                    PadicBase::new(*p).unwrap().reduce(&c).is_some()
                }
                _ => false,
            },
            BaseChain::Xadic => XadicBase.reduce(a).is_some(),
            BaseChain::Composite { p } => XadicBase
                .reduce(a)
                .is_some_and(|c| PadicBase::new(*p).unwrap().reduce(&c).is_some()),
        }
    }

    /// Image of an integral polynomial at `level ≥ 1`.
    fn reduce(&self, level: usize, f: &Poly<RatFun>) -> Option<FiberFactor> {
        let at_zero = || -> Option<Poly<BigRational>> {
            Some(Poly::new(f.coeffs().iter().map(|c| XadicBase.reduce(c)).collect::<Option<Vec<_>>>()?))
        };
        let mod_p = |q: Poly<BigRational>, p: u64| -> Option<Poly<u64>> {
            let b = PadicBase::new(p).unwrap();
            Some(Poly::new(q.coeffs().iter().map(|c| b.reduce(c)).collect::<Option<Vec<_>>>()?))
        };
        match (self, level) {
            (BaseChain::Padic { p }, 1) => mod_p(at_zero()?, *p).map(FiberFactor::Modular),
            (BaseChain::Xadic, 1) | (BaseChain::Composite { .. }, 1) => at_zero().map(FiberFactor::Rational),
            (BaseChain::Composite { p }, 2) => mod_p(at_zero()?, *p).map(FiberFactor::Modular),
            _ => None,
        }
    }

    fn factor(&self, f: &FiberFactor) -> Result<Vec<FiberFactor>> {
        match f {
            FiberFactor::Modular(g) => {
                let b = PadicBase::new(self.field().unwrap().characteristic()).unwrap();
                Ok(b.factor_residue(g)?.into_iter().map(|(g, _)| FiberFactor::Modular(g)).collect())
            }
            FiberFactor::Rational(g) => match XadicBase.factor_residue(g) {
                Ok(fs) => Ok(fs.into_iter().map(|(g, _)| FiberFactor::Rational(g)).collect()),
                Err(e) => Err(Error::Unsupported(format!("factorization over ℚ failed: {e}"))),
            },
        }
    }
}

/// Polynomial over ℚ(t) from constant-first coefficients.
pub fn ratfun_poly(coeffs: Vec<RatFun>) -> Poly<RatFun> {
    PolyRing::new(RationalFunctions).from_coeffs(coeffs)
}

/// An irreducible factor of a reduction of `h`, monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberFactor {
    Modular(Poly<u64>),
    Rational(Poly<BigRational>),
}

impl FiberFactor {
    pub fn degree(&self) -> usize {
        match self {
            FiberFactor::Modular(g) => g.deg(),
            FiberFactor::Rational(g) => g.deg(),
        }
    }

    /// Constant-first coefficient strings; residues in `0..p`.
    pub fn coefficient_strings(&self) -> Vec<String> {
        match self {
            FiberFactor::Modular(g) => g.coeffs().iter().map(u64::to_string).collect(),
            FiberFactor::Rational(g) => g.coeffs().iter().map(BigRational::to_string).collect(),
        }
    }

    /// Canonical lift to `A[X]`.
    pub fn lift(&self) -> Poly<RatFun> {
        match self {
            FiberFactor::Modular(g) => ratfun_poly(
                g.coeffs()
                    .iter()
                    .map(|&c| RatFun::constant(BigRational::from_integer(c.into())))
                    .collect(),
            ),
            FiberFactor::Rational(g) => ratfun_poly(g.coeffs().iter().map(|c| RatFun::constant(c.clone())).collect()),
        }
    }

    fn render(&self, field: Option<PrimeField>) -> String {
        match self {
            FiberFactor::Modular(g) => {
                let f = field.expect("modular factor needs a prime");
                let balanced: Poly<i64> = Poly::new(g.coeffs().iter().map(|&c| f.balanced(c)).collect());
                render(&balanced, "η")
            }
            FiberFactor::Rational(g) => render(g, "η"),
        }
    }

    fn divides(&self, other: &FiberFactor, field: Option<PrimeField>) -> bool {
        match (self, other) {
            (FiberFactor::Modular(d), FiberFactor::Modular(a)) => PolyRing::new(field.unwrap()).divides(d, a),
            (FiberFactor::Rational(d), FiberFactor::Rational(a)) => qpoly_ring().divides(d, a),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecNode {
    /// Index of the base prime this node lies over; 0 is the zero ideal.
    pub level: usize,
    pub factor: Option<FiberFactor>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpectrum {
    base: BaseChain,
    h: Poly<RatFun>,
    nodes: Vec<SpecNode>,
    /// Strict inclusions `(i, j)`: node `i` is properly contained in node `j`.
    order: Vec<(usize, usize)>,
    distinguished: usize,
}

/// Irreducible factors of `h` reduced modulo the maximal ideal, in node order.
pub fn top_factors(desc: &ValuedFieldDescriptor, h: &Poly<RatFun>) -> Result<Vec<FiberFactor>> {
    let base = BaseChain::from_descriptor(desc)?;
    if let Some(c) = h.coeffs().iter().find(|c| !base.is_integral(c)) {
        return Err(Error::NotIntegral(format!("coefficient {c} of h")));
    }
    base.factor(&base.reduce(base.top(), h).expect("h is integral"))
}

/// All primes of `A[X]/(h)`, with `distinguished` the factor at the top
/// level that defines `n`.
pub fn enumerate_spectrum(
    desc: &ValuedFieldDescriptor,
    h: &Poly<RatFun>,
    distinguished: &FiberFactor,
) -> Result<FiniteSpectrum> {
    let base = BaseChain::from_descriptor(desc)?;
    let polys = PolyRing::new(RationalFunctions);
    if h.deg() == 0 || !polys.is_monic(h) {
        return Err(Error::InvalidInput("h must be monic of positive degree".into()));
    }
    if h.deg() > MAX_SPECTRUM_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: h.deg(),
            bound: MAX_SPECTRUM_DEGREE,
        });
    }
    if let Some(c) = h.coeffs().iter().find(|c| !base.is_integral(c)) {
        return Err(Error::NotIntegral(format!("coefficient {c} of h")));
    }
    let field = base.field();
    let mut nodes = vec![SpecNode {
        level: 0,
        factor: None,
        label: "(0)".into(),
    }];
    for level in 1..=base.top() {
        let reduced = base.reduce(level, h).expect("h is integral");
        for f in base.factor(&reduced)? {
            let label = format!("({}, {})", base.prime_label(level), f.render(field));
            nodes.push(SpecNode {
                level,
                factor: Some(f),
                label,
            });
        }
    }
    let mut order = Vec::new();
    for j in 1..nodes.len() {
        order.push((0, j));
    }
    for (i, a) in nodes.iter().enumerate() {
        for (j, b) in nodes.iter().enumerate() {
            if a.level == 0 || b.level <= a.level {
                continue;
            }
            let (Some(fa), Some(fb)) = (&a.factor, &b.factor) else {
                continue;
            };
            let image = base.reduce(b.level, &fa.lift()).expect("factors are integral");
            if fb.divides(&image, field) {
                order.push((i, j));
            }
        }
    }
    order.sort_unstable();
    let top = base.top();
    let Some(distinguished) = nodes
        .iter()
        .position(|n| n.level == top && n.factor.as_ref() == Some(distinguished))
    else {
        return Err(Error::InvalidInput(format!(
            "distinguished factor {:?} is not a factor of h at the maximal ideal",
            distinguished.coefficient_strings()
        )));
    };
    FiniteSpectrum::from_parts(base, h.clone(), nodes, order, distinguished)
}

impl FiniteSpectrum {
    /// Assembles a spectrum from explicit data, checking that `order` is a
    /// strict partial order with the level-0 node below everything and no
    /// inclusions inside a fiber. Fibers are not checked for completeness.
    pub fn from_parts(
        base: BaseChain,
        h: Poly<RatFun>,
        nodes: Vec<SpecNode>,
        mut order: Vec<(usize, usize)>,
        distinguished: usize,
    ) -> Result<Self> {
        let n = nodes.len();
        order.sort_unstable();
        order.dedup();
        let bad = |msg: &str| Err(Error::InvalidInput(format!("malformed spectrum: {msg}")));
        if distinguished >= n {
            return bad("distinguished index out of range");
        }
        if order.iter().any(|&(i, j)| i >= n || j >= n || i == j) {
            return bad("order pair out of range or reflexive");
        }
        let rel = |i: usize, j: usize| order.binary_search(&(i, j)).is_ok();
        for &(i, j) in &order {
            if rel(j, i) {
                return bad("order is not antisymmetric");
            }
            if nodes[i].level == nodes[j].level {
                return bad("inclusion inside one fiber");
            }
            for k in 0..n {
                if rel(j, k) && !rel(i, k) {
                    return bad("order is not transitive");
                }
            }
        }
        let zeros: Vec<usize> = (0..n).filter(|&i| nodes[i].level == 0).collect();
        if zeros.len() > 1 {
            return bad("more than one level-0 node");
        }
        if let Some(&z) = zeros.first() {
            if (0..n).any(|j| j != z && !rel(z, j)) {
                return bad("level-0 node is not below every node");
            }
        }
        Ok(FiniteSpectrum {
            base,
            h,
            nodes,
            order,
            distinguished,
        })
    }

    pub fn base(&self) -> BaseChain {
        self.base
    }

    pub fn h(&self) -> &Poly<RatFun> {
        &self.h
    }

    pub fn nodes(&self) -> &[SpecNode] {
        &self.nodes
    }

    pub fn order(&self) -> &[(usize, usize)] {
        &self.order
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node `i` is contained in node `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.order.binary_search(&(i, j)).is_ok()
    }

    /// Nodes over the maximal ideal of the base.
    pub fn top_fiber(&self) -> impl Iterator<Item = usize> + '_ {
        let top = self.base.top();
        (0..self.nodes.len()).filter(move |&i| self.nodes[i].level == top)
    }

    /// `(i, j)` with `i < j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order
            .iter()
            .copied()
            .filter(|&(i, j)| !(0..self.nodes.len()).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j)))
            .collect()
    }

    /// Whether `u(η)` lies in node `i`; `u` must have coefficients in the
    /// base ring.
    pub fn contains(&self, i: usize, u: &Poly<RatFun>) -> Result<bool> {
        if let Some(c) = u.coeffs().iter().find(|c| !self.base.is_integral(c)) {
            return Err(Error::NotIntegral(format!("coefficient {c} of u")));
        }
        let node = &self.nodes[i];
        match &node.factor {
            None => Ok(PolyRing::new(RationalFunctions).rem(u, &self.h).is_zero()),
            Some(f) => {
                let image = self.base.reduce(node.level, u).expect("u is integral");
                Ok(f.divides(&image, self.base.field()))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct NodeWire<'a> {
            level: usize,
            factor: Option<Vec<String>>,
            label: &'a str,
        }
        let nodes: Vec<NodeWire> = self
            .nodes
            .iter()
            .map(|n| NodeWire {
                level: n.level,
                factor: n.factor.as_ref().map(FiberFactor::coefficient_strings),
                label: &n.label,
            })
            .collect();
        serde_json::json!({
            "base": self.base,
            "h": self.h.coeffs().iter().map(RatFun::to_wire).collect::<Vec<_>>(),
            "nodes": nodes,
            "order": self.order.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "distinguished": self.distinguished,
        })
    }

    /// Hasse diagram, smaller primes at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph spectrum {\n  rankdir=BT;\n  node [shape=ellipse];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let shape = if i == self.distinguished { ", shape=doublecircle" } else { "" };
            writeln!(out, "  n{i} [label=\"{}\"{shape}];", n.label.replace('"', "\\\"")).unwrap();
        }
        for (i, j) in self.covers() {
            writeln!(out, "  n{i} -> n{j};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::int_rat;

    pub(crate) fn rf_poly(cs: &[i64]) -> Poly<RatFun> {
        ratfun_poly(cs.iter().map(|&c| RatFun::constant(int_rat(c))).collect())
    }

    pub(crate) fn sqrt2_at_7() -> FiniteSpectrum {
        let h = rf_poly(&[-7, -10, 1]);
        enumerate_spectrum(
            &ValuedFieldDescriptor::PadicQ { p: 7 },
            &h,
            &FiberFactor::Modular(Poly::from_u64s(&[4, 1])),
        )
        .unwrap()
    }

    pub(crate) fn inert_at_3() -> FiniteSpectrum {
        enumerate_spectrum(
            &ValuedFieldDescriptor::PadicQ { p: 3 },
            &rf_poly(&[1, 0, 1]),
            &FiberFactor::Modular(Poly::from_u64s(&[1, 0, 1])),
        )
        .unwrap()
    }

    /// `X² − (2 + t)` over the rank-2 ring at p = 2.
    pub(crate) fn rank_two() -> FiniteSpectrum {
        let c = RatFun::from_poly(&Poly::<BigRational>::from_i64s(&[-2, -1]));
        let h = ratfun_poly(vec![c, RatFun::zero(), RatFun::constant(int_rat(1))]);
        enumerate_spectrum(
            &ValuedFieldDescriptor::CompositeTP { p: 2 },
            &h,
            &FiberFactor::Modular(Poly::from_u64s(&[0, 1])),
        )
        .unwrap()
    }

    #[test]
    fn split_quadratic() {
        let s = sqrt2_at_7();
        let labels: Vec<&str> = s.nodes().iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, ["(0)", "(7, η - 3)", "(7, η)"]);
        assert_eq!(s.order(), &[(0, 1), (0, 2)]);
        assert_eq!(s.distinguished(), 1);
        assert!(!s.leq(1, 2) && !s.leq(2, 1));
    }

    #[test]
    fn inert_and_rank_two() {
        let s = inert_at_3();
        assert_eq!(s.len(), 2);
        assert_eq!(s.nodes()[1].label, "(3, η^2 + 1)");
        let r = rank_two();
        assert_eq!(r.len(), 3);
        assert_eq!(r.nodes()[1].factor, Some(FiberFactor::Rational(Poly::<BigRational>::from_i64s(&[-2, 0, 1]))));
        assert_eq!(r.nodes()[2].label, "(2, η)");
        assert_eq!(r.order(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn membership() {
        let s = sqrt2_at_7();
        let eta = rf_poly(&[0, 1]);
        assert!(s.contains(2, &eta).unwrap());
        assert!(!s.contains(1, &eta).unwrap());
        assert!(!s.contains(0, &eta).unwrap());
        assert!(s.contains(0, &rf_poly(&[-7, -10, 1])).unwrap());
        assert!(s.contains(1, &rf_poly(&[7])).unwrap());
        let seventh = ratfun_poly(vec![RatFun::constant(crate::arith::ring::rat(1, 7))]);
        assert!(matches!(s.contains(1, &seventh), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn rejects_bad_input() {
        let d = ValuedFieldDescriptor::PadicQ { p: 7 };
        let g = FiberFactor::Modular(Poly::from_u64s(&[4, 1]));
        assert!(enumerate_spectrum(&d, &rf_poly(&[-7, -10, 2]), &g).is_err());
        assert!(matches!(
            enumerate_spectrum(&d, &rf_poly(&[-7, -10, 1]), &FiberFactor::Modular(Poly::from_u64s(&[1, 1]))),
            Err(Error::InvalidInput(_))
        ));
        let half = ratfun_poly(vec![RatFun::constant(crate::arith::ring::rat(1, 7)), RatFun::constant(int_rat(1))]);
        assert!(matches!(enumerate_spectrum(&d, &half, &g), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn malformed_parts() {
        let s = sqrt2_at_7();
        let nodes = s.nodes().to_vec();
        let h = s.h().clone();
        let base = s.base();
        assert!(FiniteSpectrum::from_parts(base, h.clone(), nodes.clone(), vec![(0, 1)], 1).is_err());
        assert!(FiniteSpectrum::from_parts(base, h.clone(), nodes.clone(), vec![(0, 1), (0, 2), (1, 2)], 1).is_err());
        assert!(FiniteSpectrum::from_parts(base, h, nodes, vec![(0, 1), (0, 2)], 3).is_err());
    }

    #[test]
    fn exports() {
        let s = sqrt2_at_7();
        let j = s.to_json();
        assert_eq!(j["order"], serde_json::json!([[0, 1], [0, 2]]));
        assert_eq!(j["distinguished"], 1);
        assert_eq!(j["nodes"][1]["factor"], serde_json::json!(["4", "1"]));
        let dot = s.to_dot();
        assert!(dot.contains("n0 -> n1;") && dot.contains("doublecircle"));
    }
}
