//! The rational function field ℚ(t).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{qpoly_ring, rational_to_primitive, render, Poly};
use super::ring::{Field, Ring};

/// `scalar · num / den` with `num`, `den` coprime primitive integer
/// polynomials of positive leading coefficient. Zero is `0 · 1/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    scalar: BigRational,
    num: Poly<BigInt>,
    den: Poly<BigInt>,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun {
            scalar: BigRational::zero(),
            num: Poly::<BigInt>::from_i64s(&[1]),
            den: Poly::<BigInt>::from_i64s(&[1]),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            scalar: c,
            num: Poly::<BigInt>::from_i64s(&[1]),
            den: Poly::<BigInt>::from_i64s(&[1]),
        }
    }

    pub fn from_poly(p: &Poly<BigRational>) -> Self {
        RatFun::from_parts(p, &Poly::<BigRational>::from_i64s(&[1])).unwrap()
    }

    /// `None` if the denominator vanishes.
    pub fn from_parts(num: &Poly<BigRational>, den: &Poly<BigRational>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFun::zero());
        }
        let q = qpoly_ring();
        let g = q.gcd(num, den);
        let n = q.exact_div(num, &g).unwrap();
        let d = q.exact_div(den, &g).unwrap();
        let (sn, pn) = rational_to_primitive(&n);
        let (sd, pd) = rational_to_primitive(&d);
        Some(RatFun {
            scalar: sn / sd,
            num: pn,
            den: pd,
        })
    }

    /// The variable t.
    pub fn t() -> Self {
        RatFun::from_poly(&Poly::<BigRational>::from_i64s(&[0, 1]))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn numerator(&self) -> &Poly<BigInt> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<BigInt> {
        &self.den
    }

    pub fn numer_q(&self) -> Poly<BigRational> {
        if self.is_zero() {
            return Poly::zero();
        }
        qpoly_ring().scale(&self.num.to_rational(), &self.scalar)
    }

    pub fn denom_q(&self) -> Poly<BigRational> {
        self.den.to_rational()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    /// Polynomial value when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<Poly<BigRational>> {
        self.is_polynomial().then(|| {
            let d = BigRational::from_integer(self.den.coeffs()[0].clone());
            qpoly_ring().scale(&self.numer_q(), &d.recip())
        })
    }

    /// t-adic order; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(lowest_index(&self.num) as i64 - lowest_index(&self.den) as i64)
    }

    /// Lowest-order coefficient of the t-adic expansion.
    pub fn lowest_coefficient(&self) -> Option<BigRational> {
        if self.is_zero() {
            return None;
        }
        let n = &self.num.coeffs()[lowest_index(&self.num)];
        let d = &self.den.coeffs()[lowest_index(&self.den)];
        Some(&self.scalar * BigRational::new(n.clone(), d.clone()))
    }

    /// Value at `t = c`, if the denominator does not vanish there.
    pub fn eval(&self, c: &BigRational) -> Option<BigRational> {
        let q = qpoly_ring();
        let d = q.eval(&self.denom_q(), c);
        if d.is_zero() {
            return None;
        }
        Some(q.eval(&self.numer_q(), c) / d)
    }
}

/// Exact text form: constant-first rational coefficients of the numerator
/// joined by `:`, then `//` and the denominator when it is not constant.
/// `3:0:1` is `3 + t²`, `1//-1:1` is `1/(t − 1)`.
impl RatFun {
    pub fn to_wire(&self) -> String {
        let join = |p: &Poly<BigRational>| -> String {
            if p.is_zero() {
                "0".into()
            } else {
                p.coeffs().iter().map(BigRational::to_string).collect::<Vec<_>>().join(":")
            }
        };
        match self.as_polynomial() {
            Some(p) => join(&p),
            None => format!("{}//{}", join(&self.numer_q()), join(&self.denom_q())),
        }
    }

    pub fn from_wire(s: &str) -> Option<RatFun> {
        let parse = |part: &str| -> Option<Poly<BigRational>> {
            let cs = part
                .split(':')
                .map(|c| c.trim().parse::<BigRational>().ok())
                .collect::<Option<Vec<_>>>()?;
            Some(Poly::new(cs))
        };
        match s.split_once("//") {
            Some((n, d)) => RatFun::from_parts(&parse(n)?, &parse(d)?),
            None => Some(RatFun::from_poly(&parse(s)?)),
        }
    }
}

fn lowest_index(p: &Poly<BigInt>) -> usize {
    p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0)
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let num = render(&self.numer_q(), "t");
        if self.den.deg() == 0 && self.den.coeffs()[0].is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", render(&self.den, "t"))
        }
    }
}

/// Context for ℚ(t).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalFunctions;

impl Ring for RationalFunctions {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun::zero()
    }
    fn one(&self) -> RatFun {
        RatFun::constant(BigRational::one())
    }
    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let q = qpoly_ring();
        if a.den == b.den {
            let num = q.add(&a.numer_q(), &b.numer_q());
            return RatFun::from_parts(&num, &a.denom_q()).unwrap();
        }
        let num = q.add(
            &q.mul(&a.numer_q(), &b.denom_q()),
            &q.mul(&b.numer_q(), &a.denom_q()),
        );
        RatFun::from_parts(&num, &q.mul(&a.denom_q(), &b.denom_q())).unwrap()
    }
    fn sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &RatFun) -> RatFun {
        RatFun {
            scalar: -a.scalar.clone(),
            ..a.clone()
        }
    }
    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        if a.is_zero() || b.is_zero() {
            return RatFun::zero();
        }
        let q = qpoly_ring();
        RatFun::from_parts(
            &q.mul(&a.numer_q(), &b.numer_q()),
            &q.mul(&a.denom_q(), &b.denom_q()),
        )
        .unwrap()
    }
    fn from_int(&self, n: &BigInt) -> RatFun {
        RatFun::constant(BigRational::from_integer(n.clone()))
    }
    fn is_zero(&self, a: &RatFun) -> bool {
        a.is_zero()
    }
}

impl Field for RationalFunctions {
    fn inv(&self, a: &RatFun) -> Option<RatFun> {
        if a.is_zero() {
            return None;
        }
        Some(RatFun {
            scalar: a.scalar.recip(),
            num: a.den.clone(),
            den: a.num.clone(),
        })
    }
}
