//! Chinese remaindering over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::mod_inverse;
use crate::error::{Error, Result};

/// The unique `x ∈ [0, ∏ mᵢ)` with `x ≡ rᵢ (mod mᵢ)` for pairwise coprime
/// positive moduli.
pub fn crt_integers(system: &[(BigInt, BigInt)]) -> Result<BigInt> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, n) in system {
        if !n.is_positive() {
            return Err(Error::InvalidInput(format!("modulus {n} is not positive")));
        }
        let inv = mod_inverse(&m, n)
            .ok_or_else(|| Error::InvalidInput(format!("modulus {n} is not coprime to {m}")))?;
        let t = ((r - &x) * inv).mod_floor(n);
        x += &m * t;
        m *= n;
    }
    Ok(x.mod_floor(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(r, m)| (r.into(), m.into())).collect()
    }

    #[test]
    fn small_systems() {
        assert_eq!(crt_integers(&pairs(&[(1, 3), (0, 5)])).unwrap(), BigInt::from(10));
        assert_eq!(crt_integers(&pairs(&[(0, 12)])).unwrap(), BigInt::from(0));
        assert_eq!(crt_integers(&pairs(&[(2, 7), (2, 11)])).unwrap(), BigInt::from(2));
        assert_eq!(crt_integers(&pairs(&[(-1, 4), (3, 9)])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn rejects_shared_factors() {
        assert!(matches!(crt_integers(&pairs(&[(1, 4), (1, 6)])), Err(Error::InvalidInput(_))));
    }
}
