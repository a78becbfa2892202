//! Quotient rings `R[Y]/(m)` by a monic modulus.
//!
//! The same context serves residue fields `𝔽_p[Y]/(g)`, number fields
//! `ℚ[X]/(f)`, function-field extensions and truncated power series
//! `ℚ[x]/(x^M)`.

use num_bigint::BigInt;

use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing<R: Ring> {
    polys: PolyRing<R>,
    modulus: Poly<R::Elem>,
}

impl<R: Ring> QuotientRing<R> {
    /// `modulus` must be monic of positive degree.
    pub fn new(base: R, modulus: Poly<R::Elem>) -> Self {
        let polys = PolyRing::new(base);
        assert!(polys.is_monic(&modulus), "quotient modulus must be monic");
        assert!(modulus.deg() >= 1, "quotient modulus must have positive degree");
        QuotientRing { polys, modulus }
    }

    pub fn base(&self) -> &R {
        self.polys.base()
    }

    pub fn polys(&self) -> &PolyRing<R> {
        &self.polys
    }

    pub fn modulus(&self) -> &Poly<R::Elem> {
        &self.modulus
    }

    /// Dimension over the base ring.
    pub fn dim(&self) -> usize {
        self.modulus.deg()
    }

    pub fn reduce(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.polys.rem_monic(p, &self.modulus)
    }

    /// Class of the indeterminate.
    pub fn generator(&self) -> Poly<R::Elem> {
        self.reduce(&self.polys.x())
    }

    pub fn from_base(&self, c: R::Elem) -> Poly<R::Elem> {
        self.polys.constant(c)
    }

    /// Coordinates on the basis `1, Y, …, Y^{dim−1}`.
    pub fn coords(&self, a: &Poly<R::Elem>) -> Vec<R::Elem> {
        (0..self.dim()).map(|i| self.polys.coeff_or_zero(a, i)).collect()
    }

    pub fn from_coords(&self, coords: Vec<R::Elem>) -> Poly<R::Elem> {
        self.reduce(&self.polys.from_coeffs(coords))
    }

    /// Evaluates a polynomial with coefficients in the base ring at `a`.
    pub fn eval_poly(&self, p: &Poly<R::Elem>, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.polys
            .eval_in(p, self, |c| self.from_base(c.clone()), a)
    }
}

impl<R: Ring> Ring for QuotientRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.polys.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.polys.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.polys.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.polys.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.polys.mul(a, b))
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.polys.from_int(n)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

impl<F: Field> QuotientRing<F> {
    /// Inverse when `a` is coprime to the modulus.
    pub fn try_inv(&self, a: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        if a.is_zero() {
            return None;
        }
        self.polys.inv_mod(a, &self.modulus)
    }
}

/// A quotient by an irreducible modulus is a field; the caller vouches for
/// irreducibility.
impl<F: Field> Field for QuotientRing<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.try_inv(a)
    }
}
