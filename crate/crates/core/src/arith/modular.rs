//! Prime fields 𝔽_p and residue rings ℤ/m.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ring::{is_prime, mod_inverse, Field, Ring};
use crate::error::{Error, Result};

/// 𝔽_p with residues stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("prime {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn balanced(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Every element of the field, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
}

/// ℤ/m with representatives in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMod {
    modulus: BigInt,
}

impl ZMod {
    pub fn new(modulus: BigInt) -> Self {
        assert!(modulus > BigInt::one(), "modulus must exceed 1");
        ZMod { modulus }
    }

    pub fn prime_power(p: u64, e: u32) -> Self {
        ZMod::new(num_traits::pow(BigInt::from(p), e as usize))
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn inv(&self, a: &BigInt) -> Option<BigInt> {
        mod_inverse(a, &self.modulus)
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn symmetric(&self, a: &BigInt) -> BigInt {
        let half: BigInt = &self.modulus / 2;
        if a > &half {
            a - &self.modulus
        } else {
            a.clone()
        }
    }
}

impl Ring for ZMod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.modulus)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a - b).mod_floor(&self.modulus)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        (-a).mod_floor(&self.modulus)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.modulus)
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.modulus)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse() {
        let f = PrimeField::new(97).unwrap();
        for a in 1..97 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert!(PrimeField::new(91).is_err());
    }

    #[test]
    fn zmod_reduces() {
        let r = ZMod::prime_power(7, 2);
        assert_eq!(r.from_int(&BigInt::from(-1)), BigInt::from(48));
        assert_eq!(r.symmetric(&BigInt::from(48)), BigInt::from(-1));
        assert_eq!(r.inv(&BigInt::from(7)), None);
    }
}
