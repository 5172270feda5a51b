use num::traits::Zero;

use super::coeff::affine;
use super::{unit_shift, AntiEuclideanMetric, Axis, CoeffFn, ShiftPolyOperator};
use crate::error::{Error, Result};

/// `p̃_μ`: lowers `m_μ` by one and kills states on the `m_μ = 0` face.
pub fn translation_generator(mu: Axis) -> ShiftPolyOperator {
    ShiftPolyOperator::term(unit_shift(mu, -1), CoeffFn::one())
}

/// `x^μ|n⟩ = (n_μ + 1)|n + 1_μ⟩`.
pub fn coordinate_operator(mu: Axis) -> ShiftPolyOperator {
    ShiftPolyOperator::term(unit_shift(mu, 1), affine(mu, 1, 1))
}

/// `x_μ = χ_{μν} x^ν`.
pub fn lowered_coordinate(mu: Axis, metric: &AntiEuclideanMetric) -> ShiftPolyOperator {
    Axis::ALL.into_iter().fold(ShiftPolyOperator::zero(), |acc, nu| {
        let c = metric.low(mu, nu);
        if c.is_zero() {
            acc
        } else {
            acc + coordinate_operator(nu).scale(c)
        }
    })
}

/// `l̃_{μλ} = x_μ p̃_λ − x_λ p̃_μ`, no ½.
pub fn lorentz_generator(mu: Axis, lam: Axis, metric: &AntiEuclideanMetric) -> Result<ShiftPolyOperator> {
    if mu == lam {
        return Err(Error::DegenerateIndex(mu.label()));
    }
    let a = lowered_coordinate(mu, metric).compose(&translation_generator(lam));
    let b = lowered_coordinate(lam, metric).compose(&translation_generator(mu));
    Ok(a - b)
}

/// `x^λ p̃_ν`, the traceless off-diagonal generators of gl(4) for `λ ≠ ν`.
pub fn mixed_generator(lam: Axis, nu: Axis) -> Result<ShiftPolyOperator> {
    if lam == nu {
        return Err(Error::DegenerateIndex(lam.label()));
    }
    Ok(coordinate_operator(lam).compose(&translation_generator(nu)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{operators_equal, LatticePoint, SparseVector};
    use crate::scalar::{int, Rational};
    use num::traits::One;

    fn ket(p: [u32; 4]) -> SparseVector {
        let mut v = SparseVector::new();
        v.insert(LatticePoint(p), Rational::one());
        v
    }

    #[test]
    fn translation_examples() {
        let p1 = translation_generator(Axis::X1);
        assert_eq!(p1.apply(&LatticePoint([1, 0, 0, 0])), ket([0, 0, 0, 0]));
        let p2 = translation_generator(Axis::X2);
        assert!(p2.apply(&LatticePoint([3, 0, 5, 1])).is_empty());
    }

    #[test]
    fn coordinate_examples() {
        let x1 = coordinate_operator(Axis::X1);
        let mut e = SparseVector::new();
        e.insert(LatticePoint([1, 0, 0, 0]), int(1));
        assert_eq!(x1.apply(&LatticePoint::ORIGIN), e);
        let mut e = SparseVector::new();
        e.insert(LatticePoint([3, 0, 0, 0]), int(3));
        assert_eq!(x1.apply(&LatticePoint([2, 0, 0, 0])), e);
    }

    #[test]
    fn compose_examples() {
        let t1 = translation_generator(Axis::X1);
        let u1 = ShiftPolyOperator::term(unit_shift(Axis::X1, 1), CoeffFn::one());
        assert_eq!(t1.compose(&u1), ShiftPolyOperator::identity());
        let ut = u1.compose(&t1);
        assert_eq!(ut, ShiftPolyOperator::diagonal(CoeffFn::indicator_ge(Axis::X1, 1)));
        assert!(ut.apply(&LatticePoint::ORIGIN).is_empty());
        let xp = coordinate_operator(Axis::X1).compose(&t1);
        assert_eq!(xp, ShiftPolyOperator::diagonal(affine(Axis::X1, 1, 0)));
    }

    #[test]
    fn degenerate_lorentz() {
        let g = AntiEuclideanMetric::new();
        assert_eq!(
            lorentz_generator(Axis::X2, Axis::X2, &g),
            Err(Error::DegenerateIndex(2))
        );
    }

    #[test]
    fn lorentz_antisymmetry() {
        let g = AntiEuclideanMetric::new();
        let a = lorentz_generator(Axis::X1, Axis::X2, &g).unwrap();
        let b = lorentz_generator(Axis::X2, Axis::X1, &g).unwrap();
        assert!(operators_equal(&(a.clone() + b.clone()), &ShiftPolyOperator::zero()));
        assert_eq!(a, -b);
    }

    #[test]
    fn window_equality_examples() {
        let t1 = translation_generator(Axis::X1);
        let lhs = ShiftPolyOperator::term(unit_shift(Axis::X1, 1), affine(Axis::X1, 1, 1)).compose(&t1);
        let rhs = ShiftPolyOperator::diagonal(affine(Axis::X1, 1, 0));
        assert!(operators_equal(&lhs, &rhs));
        assert!(!operators_equal(&t1, &translation_generator(Axis::X2)));
    }
}
