use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// An unreduced fractional Calabi-Yau pair: `S^n ≅ [m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyPair {
    pub n: u32,
    pub m: i64,
}

impl CyPair {
    pub fn new(n: u32, m: i64) -> Self {
        CyPair { n, m }
    }

    /// The dimension `m/n` as a reduced rational.
    pub fn dimension(&self) -> BigRational {
        BigRational::new(self.m.into(), i64::from(self.n).into())
    }

    /// Reduced `(numerator, denominator)` of `m/n`.
    pub fn reduced(&self) -> (i64, i64) {
        let n = i64::from(self.n);
        let g = self.m.gcd(&n).max(1);
        (self.m / g, n / g)
    }

    pub fn in_unit_interval(&self) -> bool {
        self.m >= 0 && self.m <= i64::from(self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_keeps_sign_and_ratio() {
        assert_eq!(CyPair::new(4, 2).reduced(), (1, 2));
        assert_eq!(CyPair::new(3, 3).reduced(), (1, 1));
        assert_eq!(CyPair::new(12, 10).reduced(), (5, 6));
        assert_eq!(CyPair::new(1, 0).reduced(), (0, 1));
        assert!(CyPair::new(6, 4).in_unit_interval());
        assert!(!CyPair::new(2, 3).in_unit_interval());
    }
}
