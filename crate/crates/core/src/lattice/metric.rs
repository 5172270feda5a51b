use num::traits::{One, Zero};

use super::Axis;
use crate::linalg::RatMatrix;
use crate::scalar::Rational;

/// The dual metric `χ^{νμ} = 1 − δ^{νμ}` of isotropic null coordinates and
/// its exact inverse `χ_{μν}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiEuclideanMetric {
    upper: RatMatrix,
    lower: RatMatrix,
}

impl AntiEuclideanMetric {
    pub fn new() -> Self {
        let upper = RatMatrix::from_fn(4, 4, |i, j| if i == j { Rational::zero() } else { Rational::one() });
        let lower = upper.inverse().expect("1 − δ is invertible in four dimensions");
        Self { upper, lower }
    }

    pub fn upper(&self) -> &RatMatrix {
        &self.upper
    }

    pub fn lower(&self) -> &RatMatrix {
        &self.lower
    }

    /// `χ^{νμ}`
    pub fn up(&self, nu: Axis, mu: Axis) -> &Rational {
        &self.upper[(nu.index(), mu.index())]
    }

    /// `χ_{μν}`
    pub fn low(&self, mu: Axis, nu: Axis) -> &Rational {
        &self.lower[(mu.index(), nu.index())]
    }
}

impl Default for AntiEuclideanMetric {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn inverse_pair() {
        let g = AntiEuclideanMetric::new();
        assert_eq!(g.upper() * g.lower(), RatMatrix::identity(4));
        for mu in Axis::ALL {
            for nu in Axis::ALL {
                let expect = if mu == nu { ratio(-2, 3) } else { ratio(1, 3) };
                assert_eq!(g.low(mu, nu), &expect);
            }
        }
    }
}
