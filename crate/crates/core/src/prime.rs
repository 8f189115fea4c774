use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^e` as u64, or `None` on overflow.
    pub fn checked_pow(self, e: u32) -> Option<u64> {
        (self.0 as u64).checked_pow(e)
    }

    /// Smallest power of p that is `>= n` (at least p).
    pub fn power_at_least(self, n: u64) -> u64 {
        let mut q = self.0 as u64;
        while q < n {
            q *= self.0 as u64;
        }
        q
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_primes_rejects_composites() {
        for p in [2, 3, 5, 7, 11, 13, 101] {
            assert!(Prime::new(p).is_ok());
        }
        for n in [0, 1, 4, 9, 15, 49] {
            assert_eq!(Prime::new(n), Err(Error::NotPrime(n as u64)));
        }
    }

    #[test]
    fn power_at_least() {
        let p = Prime::new(7).unwrap();
        assert_eq!(p.power_at_least(1), 7);
        assert_eq!(p.power_at_least(8), 49);
        assert_eq!(p.power_at_least(49), 49);
    }
}
