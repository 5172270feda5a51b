//! Seeded random inputs for randomized exact checks.

use rand::Rng;

use crate::lattice::{Axis, AxisFactor, CoeffFn, ShiftPolyOperator};
use crate::scalar::{ratio, Rational};

pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let r = ratio(rng.random_range(-5..=5), rng.random_range(1..=4));
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// Random coefficient function: a polynomial of degree ≤ 2 in up to two
/// axes, sometimes multiplied by an indicator or plus a point mass.
pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R) -> CoeffFn {
    let mut f = CoeffFn::zero();
    for _ in 0..rng.random_range(1..=3) {
        let a = Axis::ALL[rng.random_range(0..4)];
        let b = Axis::ALL[rng.random_range(0..4)];
        let da = rng.random_range(0..=2u32);
        let db = if a == b { 0 } else { rng.random_range(0..=(2 - da)) };
        let mono = &CoeffFn::axis_term(a, AxisFactor::Pow(da), small_rational(rng))
            * &CoeffFn::axis_term(b, AxisFactor::Pow(db), Rational::from_integer(1.into()));
        f = f + mono;
    }
    match rng.random_range(0..4) {
        0 => {
            let axis = Axis::ALL[rng.random_range(0..4)];
            f = &f * &CoeffFn::indicator_ge(axis, rng.random_range(1..=2));
        }
        1 => {
            let axis = Axis::ALL[rng.random_range(0..4)];
            f = f + CoeffFn::axis_term(axis, AxisFactor::Delta(rng.random_range(0..=1)), small_rational(rng));
        }
        _ => {}
    }
    f
}

/// Random shift with every component in `[-max, max]`, touching at most two
/// axes.
pub fn random_shift<R: Rng + ?Sized>(rng: &mut R, max: i64) -> [i64; 4] {
    let mut s = [0i64; 4];
    for _ in 0..rng.random_range(0..=2) {
        s[rng.random_range(0..4)] = rng.random_range(-max..=max);
    }
    s
}

/// Rational combination of `U^up M_f T^down` terms, shifts ≤ 2, degree ≤ 2.
pub fn random_chronon<R: Rng + ?Sized>(rng: &mut R) -> ShiftPolyOperator {
    loop {
        let mut op = ShiftPolyOperator::zero();
        for _ in 0..rng.random_range(1..=3) {
            op = op + ShiftPolyOperator::term(random_shift(rng, 2), random_coeff(rng));
        }
        if !op.is_zero() {
            return op;
        }
    }
}
