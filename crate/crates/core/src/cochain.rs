//! Cochains on a fixed simplicial complex: dense value vectors over the
//! lexicographic simplex basis of one degree.

use crate::ring::Ring;

/// A cochain: one ring value per basis simplex of the given degree.
///
/// Values are `i64`, normalized to `0..m-1` over `Z/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<i64>,
}

impl Cochain {
    pub fn zero(degree: usize, ring: Ring, len: usize) -> Cochain {
        Cochain {
            degree,
            ring,
            values: vec![0; len],
        }
    }

    pub fn from_values(degree: usize, ring: Ring, values: Vec<i64>) -> Cochain {
        let values = values.into_iter().map(|v| ring.normalize(v)).collect();
        Cochain {
            degree,
            ring,
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| self.ring.is_zero(v))
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.ring, other.ring);
        Cochain {
            degree: self.degree,
            ring: self.ring,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| self.ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.ring, other.ring);
        Cochain {
            degree: self.degree,
            ring: self.ring,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| self.ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Cochain {
        Cochain {
            degree: self.degree,
            ring: self.ring,
            values: self.values.iter().map(|&v| self.ring.mul(v, c)).collect(),
        }
    }

    /// Coefficientwise transfer into another ring: values are carried over
    /// canonically and then multiplied by `scale`.
    pub fn map_ring(&self, target: Ring, scale: i64) -> Cochain {
        Cochain {
            degree: self.degree,
            ring: target,
            values: self
                .values
                .iter()
                .map(|&v| target.mul(target.normalize(v), scale))
                .collect(),
        }
    }
}
