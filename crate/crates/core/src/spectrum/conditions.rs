use serde::Serialize;

use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfun::{RatFun, RationalFunctions};
use crate::arith::ring::Ring;
use crate::error::{Error, Result};

use super::chains::maximal_chains;
use super::FiniteSpectrum;

/// Outcome of testing `A[η]_u = A[η]_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Localization {
    pub holds: bool,
    /// A node not below `n` that misses `u`.
    pub witness: Option<usize>,
}

/// Nodes not contained in `n`.
pub fn outside(spec: &FiniteSpectrum) -> Vec<usize> {
    (0..spec.len()).filter(|&i| !spec.leq(i, spec.distinguished())).collect()
}

/// Whether `u` lies in every prime not contained in `n`; `u ∉ n` required.
pub fn localization_equality(spec: &FiniteSpectrum, u: &Poly<RatFun>) -> Result<Localization> {
    if spec.contains(spec.distinguished(), u)? {
        return Err(Error::Precondition("u lies in the distinguished prime".into()));
    }
    for i in outside(spec) {
        if !spec.contains(i, u)? {
            return Ok(Localization {
                holds: false,
                witness: Some(i),
            });
        }
    }
    Ok(Localization {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMinimum {
    pub chain: Vec<usize>,
    pub minimum: usize,
    /// The minimum, hence the intersection of the chain, is not inside `n`.
    pub outside_n: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FgReport {
    /// Nodes not contained in `n`.
    pub s_nodes: Vec<usize>,
    /// An element outside `n` lying in every node of `s_nodes`, written as a
    /// polynomial in `η`.
    #[serde(serialize_with = "ser_poly")]
    pub u: Poly<RatFun>,
    pub condition_iv: bool,
    pub chains: Vec<ChainMinimum>,
    pub condition_v: bool,
}

fn ser_poly<S: serde::Serializer>(p: &Poly<RatFun>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(RatFun::to_wire))
}

/// Searches for `u` as the product of the lifted factors of the minimal
/// nodes outside `n`, then checks each maximal chain outside `n` through
/// its minimum.
pub fn fg_conditions(spec: &FiniteSpectrum) -> FgReport {
    let s_nodes = outside(spec);
    let polys = PolyRing::new(RationalFunctions);
    let minimal = s_nodes
        .iter()
        .filter(|&&i| !s_nodes.iter().any(|&k| k != i && spec.leq(k, i)));
    let u = minimal.fold(polys.one(), |acc, &i| {
        let f = spec.nodes()[i].factor.as_ref().expect("the zero ideal lies in n");
        polys.mul(&acc, &f.lift())
    });
    let condition_iv = localization_equality(spec, &u).is_ok_and(|l| l.holds);
    let chains: Vec<ChainMinimum> = maximal_chains(spec, &s_nodes)
        .into_iter()
        .map(|chain| {
            let minimum = chain[0];
            ChainMinimum {
                outside_n: !spec.leq(minimum, spec.distinguished()),
                chain,
                minimum,
            }
        })
        .collect();
    let condition_v = chains.iter().all(|c| c.outside_n);
    FgReport {
        s_nodes,
        u,
        condition_iv,
        chains,
        condition_v,
    }
}

/// Every base prime has a nonempty fiber and inclusions never go down a
/// level.
pub fn restriction_check(spec: &FiniteSpectrum) -> bool {
    let nodes = spec.nodes();
    let surjective = (0..=spec.base().top()).all(|l| nodes.iter().any(|n| n.level == l));
    let monotone = spec.order().iter().all(|&(i, j)| nodes[i].level <= nodes[j].level);
    surjective && monotone
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::tests::{inert_at_3, rank_two, rf_poly, sqrt2_at_7};
    use crate::spectrum::FiniteSpectrum;

    #[test]
    fn localization_examples() {
        let s = sqrt2_at_7();
        let l = localization_equality(&s, &rf_poly(&[0, 1])).unwrap();
        assert!(l.holds);
        let l = localization_equality(&s, &rf_poly(&[1])).unwrap();
        assert_eq!(l.witness, Some(2));
        assert!(matches!(localization_equality(&s, &rf_poly(&[-3, 1])), Err(Error::Precondition(_))));
        assert!(localization_equality(&inert_at_3(), &rf_poly(&[1])).unwrap().holds);
    }

    #[test]
    fn fg_examples() {
        let r = fg_conditions(&sqrt2_at_7());
        assert_eq!(r.s_nodes, vec![2]);
        assert_eq!(r.u, rf_poly(&[0, 1]));
        assert!(r.condition_iv && r.condition_v);
        assert_eq!(r.chains.len(), 1);
        for s in [inert_at_3(), rank_two()] {
            let r = fg_conditions(&s);
            assert!(r.s_nodes.is_empty() && r.chains.is_empty());
            assert_eq!(r.u, rf_poly(&[1]));
            assert!(r.condition_iv && r.condition_v);
        }
    }

    #[test]
    fn restriction() {
        for s in [sqrt2_at_7(), inert_at_3(), rank_two()] {
            assert!(restriction_check(&s));
        }
        let s = sqrt2_at_7();
        let emptied =
            FiniteSpectrum::from_parts(s.base(), s.h().clone(), s.nodes()[..1].to_vec(), vec![], 0).unwrap();
        assert!(!restriction_check(&emptied));
    }
}
