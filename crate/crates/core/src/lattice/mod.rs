//! Operator algebra on the topon lattice ℕ⁴.

mod coeff;
mod generators;
mod metric;
mod operator;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use coeff::{AxisFactor, CoeffFn, Factors};
pub use generators::{
    coordinate_operator, lorentz_generator, lowered_coordinate, mixed_generator, translation_generator,
};
pub use metric::AntiEuclideanMetric;
pub use operator::{equality_window, operators_equal, Shift, ShiftPolyOperator, SparseVector};

/// One of the four lattice axes, stored zero-based and displayed one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Axis(u8);

impl Axis {
    pub const X1: Axis = Axis(0);
    pub const X2: Axis = Axis(1);
    pub const X3: Axis = Axis(2);
    pub const X4: Axis = Axis(3);
    pub const ALL: [Axis; 4] = [Axis::X1, Axis::X2, Axis::X3, Axis::X4];

    /// Axis from its one-based label `1..=4`.
    pub fn new(mu: usize) -> Result<Axis> {
        if (1..=4).contains(&mu) {
            Ok(Axis(mu as u8 - 1))
        } else {
            Err(Error::Axis(mu))
        }
    }

    pub fn index(self) -> usize {
        usize::from(self.0)
    }

    pub fn label(self) -> usize {
        self.index() + 1
    }

    /// Ordered pairs `(μ, λ)` with `μ ≠ λ`.
    pub fn distinct_pairs() -> impl Iterator<Item = (Axis, Axis)> {
        Axis::ALL
            .into_iter()
            .flat_map(|a| Axis::ALL.into_iter().filter(move |&b| b != a).map(move |b| (a, b)))
    }

    /// Unordered pairs `μ < λ`.
    pub fn increasing_pairs() -> impl Iterator<Item = (Axis, Axis)> {
        Axis::distinct_pairs().filter(|(a, b)| a < b)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A quartet of natural numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint(pub [u32; 4]);

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint([0; 4]);

    /// `self + offset`, or `None` when a component leaves ℕ.
    pub fn offset(self, offset: [i64; 4]) -> Option<LatticePoint> {
        let mut out = [0u32; 4];
        for i in 0..4 {
            let v = i64::from(self.0[i]) + offset[i];
            if v < 0 {
                return None;
            }
            out[i] = v as u32;
        }
        Some(LatticePoint(out))
    }

    /// All points of the box `[0, w₁) × … × [0, w₄)`.
    pub fn boxed(w: [u32; 4]) -> impl Iterator<Item = LatticePoint> {
        (0..w[0]).flat_map(move |a| {
            (0..w[1]).flat_map(move |b| (0..w[2]).flat_map(move |c| (0..w[3]).map(move |d| LatticePoint([a, b, c, d]))))
        })
    }

    /// All points of the cube `[0, w)⁴`.
    pub fn window(w: u32) -> impl Iterator<Item = LatticePoint> {
        (0..w).flat_map(move |a| {
            (0..w).flat_map(move |b| (0..w).flat_map(move |c| (0..w).map(move |d| LatticePoint([a, b, c, d]))))
        })
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// The unit vector `1_μ` as a shift.
pub fn unit_shift(axis: Axis, sign: i64) -> [i64; 4] {
    let mut s = [0; 4];
    s[axis.index()] = sign;
    s
}
