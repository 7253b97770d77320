use std::fmt;

use serde::{Deserialize, Serialize};

/// Coefficient ring tag: the integers or `Z/m` for a modulus `m >= 2`.
///
/// Cochain values are stored as `i64`; over `Z/m` they are normalized to
/// `0..m-1`. All moduli arising here are small powers of two (at most
/// `2^(2n)` with `n <= 3`), so `i64` arithmetic never overflows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    /// The integers.
    Z,
    /// The quotient ring `Z/m`.
    Mod(u64),
}

impl Ring {
    pub fn mod2n(n: u32) -> Ring {
        Ring::Mod(1u64 << n)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Z => None,
            Ring::Mod(m) => Some(*m),
        }
    }

    /// Normalize a value into the canonical representative set:
    /// `0..m-1` over `Z/m`, the value itself over `Z`.
    pub fn normalize(&self, v: i64) -> i64 {
        match self {
            Ring::Z => v,
            Ring::Mod(m) => v.rem_euclid(*m as i64),
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: i64, b: i64) -> i64 {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: i64) -> i64 {
        self.normalize(-a)
    }

    pub fn is_zero(&self, a: i64) -> bool {
        self.normalize(a) == 0
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_is_euclidean() {
        let r = Ring::Mod(4);
        assert_eq!(r.normalize(-1), 3);
        assert_eq!(r.normalize(4), 0);
        assert_eq!(r.normalize(7), 3);
        assert_eq!(Ring::Z.normalize(-5), -5);
    }

    #[test]
    fn display() {
        assert_eq!(Ring::mod2n(3).to_string(), "Z/8");
        assert_eq!(Ring::Z.to_string(), "Z");
    }
}
