//! Henselian elements of an extension at a chosen prime: certificates,
//! the generator construction, conductor and localization data, and
//! henselian triples.

pub mod certificate;
pub mod cover;
pub mod generator;
pub mod triple;

use crate::arith::poly::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::number_field::{split_prime_with, Extension, PrimeNode, DEFAULT_PRECISION};
use crate::valuation::base::{FracElem, LocalBase};

pub use certificate::{
    certify_by_conjugates, is_henselian, reciprocal_certificate, reciprocal_transform, CertificateKind,
    HenselVerdict, HenselianCertificate, Rejection,
};
pub use cover::{conductor_check, localize_cover, localize_cover_with, ConductorReport, Cover, CoverEntry};
pub use generator::{check_package, construct_generator, GeneratorPackage, MAX_RETRIES};
pub use triple::{henselian_triple, TripleCertificate};

/// An extension together with the primes above the base maximal ideal and
/// one chosen prime.
#[derive(Clone, Debug)]
pub struct LocalSetting<B: LocalBase> {
    ext: Extension<B::Fraction>,
    base: B,
    nodes: Vec<PrimeNode<B>>,
    chosen: usize,
}

impl<B: LocalBase> LocalSetting<B> {
    pub fn new(ext: Extension<B::Fraction>, base: B, chosen: usize) -> Result<Self> {
        Self::with_precision(ext, base, chosen, DEFAULT_PRECISION)
    }

    pub fn with_precision(ext: Extension<B::Fraction>, base: B, chosen: usize, precision_start: u32) -> Result<Self> {
        let nodes = split_prime_with(&ext, &base, precision_start)?;
        if chosen >= nodes.len() {
            return Err(Error::InvalidInput(format!(
                "node index {chosen} out of range; the prime splits into {} nodes",
                nodes.len()
            )));
        }
        Ok(LocalSetting {
            ext,
            base,
            nodes,
            chosen,
        })
    }

    /// The same extension and nodes with another chosen node.
    pub fn choose(&self, chosen: usize) -> Result<Self> {
        if chosen >= self.nodes.len() {
            return Err(Error::InvalidInput(format!("node index {chosen} out of range")));
        }
        Ok(LocalSetting {
            chosen,
            ..self.clone()
        })
    }

    pub fn ext(&self) -> &Extension<B::Fraction> {
        &self.ext
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn nodes(&self) -> &[PrimeNode<B>] {
        &self.nodes
    }

    pub fn chosen_index(&self) -> usize {
        self.chosen
    }

    pub fn chosen(&self) -> &PrimeNode<B> {
        &self.nodes[self.chosen]
    }

    pub fn others(&self) -> impl Iterator<Item = &PrimeNode<B>> {
        self.nodes.iter().filter(move |n| n.index() != self.chosen)
    }

    pub fn polys(&self) -> PolyRing<B::Fraction> {
        PolyRing::new(self.base.fraction_field().clone())
    }

    /// Whether every coefficient lies in the base ring.
    pub fn is_integral_poly(&self, h: &Poly<FracElem<B>>) -> bool {
        h.coeffs().iter().all(|c| self.base.is_integral(c))
    }

    /// Coordinates on `1, θ, …` as a tuple, e.g. `(5,4)`.
    pub fn render(&self, a: &Poly<FracElem<B>>) -> String {
        let parts: Vec<String> = self.ext.coords(a).iter().map(|c| self.base.render(c)).collect();
        format!("({})", parts.join(","))
    }

    /// Whether `a` lies in `A[η]`, judged by its coordinates on the power
    /// basis of `eta`.
    pub fn in_order(&self, eta: &Poly<FracElem<B>>, a: &Poly<FracElem<B>>) -> Option<Vec<FracElem<B>>> {
        self.ext
            .coords_in_basis(eta, a)
            .filter(|c| c.iter().all(|x| self.base.is_integral(x)))
    }
}
