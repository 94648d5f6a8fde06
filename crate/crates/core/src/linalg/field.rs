use std::fmt;

use crate::error::{Error, Result};

/// The prime field GF(p) for a prime `p <= 251`. Residues are stored as `u8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub const MAX_PRIME: u32 = 251;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u8 })
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let p = self.p as u32;
        let (mut base, mut exp, mut acc) = (a as u32, p - 2, 1u32);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc as u8)
    }

    /// Reduces an arbitrary integer into `0..p`.
    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    pub fn check(self, v: u32) -> Result<u8> {
        if v < self.p as u32 {
            Ok(v as u8)
        } else {
            Err(Error::EntryOutOfRange {
                value: v,
                p: self.p,
            })
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large() {
        for bad in [0, 1, 4, 9, 15, 255, 257] {
            assert!(PrimeField::new(bad).is_err(), "{bad}");
        }
        for good in [2, 3, 5, 7, 251] {
            assert_eq!(PrimeField::new(good).unwrap().p() as u32, good);
        }
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 251] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(f.inv(0), None);
            for a in 1..p as u8 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn arithmetic_wraps() {
        let f = PrimeField::new(251).unwrap();
        assert_eq!(f.add(250, 250), 249);
        assert_eq!(f.sub(0, 1), 250);
        assert_eq!(f.mul(250, 250), 1);
        assert_eq!(f.reduce(-1), 250);
    }
}
