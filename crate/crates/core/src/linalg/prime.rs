use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A prime `p < 256`, the characteristic of the field `F_p`.
///
/// Entries of [`GfMatrix`](super::GfMatrix) are stored as bytes, which is where the
/// upper bound comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u8);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=255).contains(&p)
            || (2..p)
                .take_while(|d| d * d <= p)
                .any(|d| p.is_multiple_of(d))
        {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u8))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.get() - b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            (self.get() - a as u32) as u8
        }
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero mod {}", self.0);
        self.pow(a, self.get() - 2)
    }

    pub fn pow(self, a: u8, mut e: u32) -> u8 {
        let p = self.get();
        let mut base = a as u32 % p;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u8
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.get() as i64) as u8
    }

    /// `p^e` as a `u64`.
    pub fn power(self, e: u32) -> u64 {
        (self.get() as u64).pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.get())
    }
}

/// Number of `d`-dimensional subspaces of `F_p^n` (the Gaussian binomial coefficient).
pub fn gaussian_binomial(n: usize, d: usize, p: Prime) -> u64 {
    if d > n {
        return 0;
    }
    let q = p.get() as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..d {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

/// `|GL_n(F_p)| = prod_{i<n} (p^n - p^i)`.
pub fn general_linear_order(n: usize, p: Prime) -> u64 {
    stiefel_count(n, n, p)
}

/// Number of injective linear maps `F_p^d -> F_p^n`.
pub fn stiefel_count(n: usize, d: usize, p: Prime) -> u64 {
    if d > n {
        return 0;
    }
    let q = p.get() as u64;
    (0..d).map(|i| q.pow(n as u32) - q.pow(i as u32)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(251).is_ok());
        for bad in [0, 1, 4, 9, 255, 256, 257] {
            assert!(Prime::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn inverses() {
        let p = Prime::new(7).unwrap();
        for a in 1..7u8 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
    }

    #[test]
    fn counts() {
        let p2 = Prime::new(2).unwrap();
        let p3 = Prime::new(3).unwrap();
        assert_eq!(gaussian_binomial(2, 1, p3), 4);
        assert_eq!(gaussian_binomial(3, 1, p2), 7);
        assert_eq!(gaussian_binomial(4, 2, p2), 35);
        assert_eq!(general_linear_order(2, p2), 6);
        assert_eq!(general_linear_order(3, p2), 168);
        assert_eq!(general_linear_order(4, p2), 20160);
        assert_eq!(general_linear_order(2, p3), 48);
        assert_eq!(stiefel_count(2, 1, p2), 3);
        assert_eq!(stiefel_count(1, 0, p3), 1);
        assert_eq!(stiefel_count(1, 2, p3), 0);
    }
}
