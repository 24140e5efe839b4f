use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// Exact density of a periodic set, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Density(Ratio<u64>);

impl Density {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: u64, denominator: u64) -> Self {
        Self(Ratio::new(numerator, denominator))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn zero() -> Self {
        Self::new(0, 1)
    }
}

impl std::ops::Add for Density {
    type Output = Density;

    fn add(self, rhs: Density) -> Density {
        Density(self.0 + rhs.0)
    }
}

impl std::iter::Sum for Density {
    fn sum<I: Iterator<Item = Density>>(iter: I) -> Density {
        iter.fold(Density::zero(), |a, b| a + b)
    }
}

/// Always `p/q`, including `0/1` and `1/1`.
impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
