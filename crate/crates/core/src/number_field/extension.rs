//! Finite simple extensions `K[X]/(f)` of a field `K` in power-basis form.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::factor_q::factor_over_rationals;
use crate::arith::linalg::{determinant, rank, solve_columns, Matrix};
use crate::arith::poly::{qpoly_ring, render, Poly, PolyRing};
use crate::arith::quotient::QuotientRing;
use crate::arith::ratfun::{RatFun, RationalFunctions};
use crate::arith::ring::{Field, Rationals, Ring};
use crate::error::{Error, Result};

/// Elements are reduced polynomials in the generator θ; their coefficients
/// are the coordinates on `1, θ, …, θ^{n−1}`.
pub type AlgebraicElement<E> = Poly<E>;

#[derive(Clone, Debug)]
pub struct Extension<K: Field> {
    ring: QuotientRing<K>,
}

pub type NumberField = Extension<Rationals>;
pub type FunctionField = Extension<RationalFunctions>;

impl<K: Field> Extension<K> {
    /// Wraps a monic polynomial of degree ≥ 1 without checking irreducibility.
    pub fn new_unchecked(field: K, f: Poly<K::Elem>) -> Result<Self> {
        let polys = PolyRing::new(field.clone());
        if f.deg() < 1 || !polys.is_monic(&f) {
            return Err(Error::InvalidInput(
                "defining polynomial must be monic of degree at least 1".into(),
            ));
        }
        Ok(Extension {
            ring: QuotientRing::new(field, f),
        })
    }

    pub fn base_field(&self) -> &K {
        self.ring.base()
    }

    pub fn ring(&self) -> &QuotientRing<K> {
        &self.ring
    }

    pub fn polys(&self) -> &PolyRing<K> {
        self.ring.polys()
    }

    pub fn defining_polynomial(&self) -> &Poly<K::Elem> {
        self.ring.modulus()
    }

    pub fn degree(&self) -> usize {
        self.ring.dim()
    }

    pub fn theta(&self) -> AlgebraicElement<K::Elem> {
        self.ring.generator()
    }

    pub fn from_base(&self, c: K::Elem) -> AlgebraicElement<K::Elem> {
        self.ring.from_base(c)
    }

    pub fn coords(&self, a: &AlgebraicElement<K::Elem>) -> Vec<K::Elem> {
        self.ring.coords(a)
    }

    pub fn from_coords(&self, coords: Vec<K::Elem>) -> Result<AlgebraicElement<K::Elem>> {
        if coords.len() != self.degree() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(self.ring.from_coords(coords))
    }

    pub fn eval_poly(&self, p: &Poly<K::Elem>, a: &AlgebraicElement<K::Elem>) -> AlgebraicElement<K::Elem> {
        self.ring.eval_poly(p, a)
    }

    pub fn inv(&self, a: &AlgebraicElement<K::Elem>) -> Option<AlgebraicElement<K::Elem>> {
        self.ring.try_inv(a)
    }

    /// Matrix of multiplication by `a`; column j holds the coordinates of
    /// `a·θ^j`.
    pub fn mul_matrix(&self, a: &AlgebraicElement<K::Elem>) -> Matrix<K::Elem> {
        let n = self.degree();
        let cols: Vec<Vec<K::Elem>> = (0..n)
            .map(|j| self.coords(&self.ring.mul(a, &self.ring.polys().monomial(self.base_field().one(), j))))
            .collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn trace(&self, a: &AlgebraicElement<K::Elem>) -> K::Elem {
        let m = self.mul_matrix(a);
        let k = self.base_field();
        (0..self.degree()).fold(k.zero(), |acc, i| k.add(&acc, &m[i][i]))
    }

    pub fn norm(&self, a: &AlgebraicElement<K::Elem>) -> K::Elem {
        determinant(self.base_field(), &self.mul_matrix(a))
    }

    pub fn min_poly(&self, a: &AlgebraicElement<K::Elem>) -> Poly<K::Elem> {
        min_poly_in(&self.ring, a)
    }

    /// Coordinates of `a` on the power basis of `eta`, when `eta` generates.
    pub fn coords_in_basis(
        &self,
        eta: &AlgebraicElement<K::Elem>,
        a: &AlgebraicElement<K::Elem>,
    ) -> Option<Vec<K::Elem>> {
        power_basis_coords(&self.ring, eta, a)
    }

    /// `Σ cᵢ ηⁱ`.
    pub fn from_basis(&self, eta: &AlgebraicElement<K::Elem>, coords: &[K::Elem]) -> AlgebraicElement<K::Elem> {
        self.eval_poly(&self.polys().from_coeffs(coords.to_vec()), eta)
    }
}

/// Coordinates of `a` on `1, g, …, g^{dim−1}`; `None` unless `g` generates
/// `K[Y]/(m)` over `K`.
pub fn power_basis_coords<K: Field>(q: &QuotientRing<K>, g: &Poly<K::Elem>, a: &Poly<K::Elem>) -> Option<Vec<K::Elem>> {
    let n = q.dim();
    let mut cols = Vec::with_capacity(n);
    let mut power = q.one();
    for _ in 0..n {
        cols.push(q.coords(&power));
        power = q.mul(&power, g);
    }
    let k = q.base();
    if rank(k, &transpose(&cols)) < n {
        return None;
    }
    solve_columns(k, &cols, &q.coords(a))
}

fn transpose<E: Clone>(cols: &[Vec<E>]) -> Matrix<E> {
    if cols.is_empty() {
        return Vec::new();
    }
    (0..cols[0].len())
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Minimal polynomial over `K` of an element of `K[Y]/(m)`, found as the
/// first linear dependency among its powers.
pub fn min_poly_in<K: Field>(q: &QuotientRing<K>, a: &Poly<K::Elem>) -> Poly<K::Elem> {
    let k = q.base();
    let polys = q.polys();
    let mut powers = vec![q.coords(&q.one())];
    let mut current = q.one();
    for _ in 0..q.dim() {
        current = q.mul(&current, a);
        let target = q.coords(&current);
        if let Some(x) = solve_columns(k, &powers, &target) {
            let mut coeffs: Vec<K::Elem> = x.iter().map(|c| k.neg(c)).collect();
            coeffs.push(k.one());
            return polys.from_coeffs(coeffs);
        }
        powers.push(target);
    }
    unreachable!("powers beyond the dimension are always dependent")
}

impl NumberField {
    /// `ℚ[X]/(f)` for a monic irreducible integer polynomial.
    pub fn new(f: &Poly<BigInt>) -> Result<Self> {
        let fq = f.to_rational();
        if !factor_over_rationals(&fq)?.is_irreducible() {
            return Err(Error::InvalidInput(format!(
                "{} is not irreducible over the rationals",
                render(f, "X")
            )));
        }
        Extension::new_unchecked(Rationals, fq)
    }
}

/// Specialization points tried when certifying irreducibility over ℚ(x).
const SPECIALIZATIONS: [i64; 12] = [1, 2, 3, -1, -2, 5, 7, -3, 11, 13, -5, 17];

impl FunctionField {
    /// `ℚ(x)[Y]/(q)`. Irreducibility is certified by finding `c` with
    /// `q(c, Y)` of the same degree and irreducible over ℚ; `Unsupported`
    /// when no tried specialization certifies it.
    pub fn new(q: Poly<RatFun>) -> Result<Self> {
        let ext = Extension::new_unchecked(RationalFunctions, q)?;
        let n = ext.degree();
        let qx = qpoly_ring();
        for c in SPECIALIZATIONS {
            let c = BigRational::from_integer(c.into());
            let Some(coeffs) = ext
                .defining_polynomial()
                .coeffs()
                .iter()
                .map(|a| a.eval(&c))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let spec = qx.from_coeffs(coeffs);
            if spec.deg() == n && factor_over_rationals(&spec)?.is_irreducible() {
                return Ok(ext);
            }
        }
        Err(Error::Unsupported(
            "could not certify irreducibility of the defining polynomial".into(),
        ))
    }
}
