//! Coefficient functions `f: ℕ⁴ → ℚ`.
//!
//! Per axis, every function we ever build is a polynomial plus finitely many
//! point masses: a piece `[n ≥ c]·p(n)` equals `p(n) − Σ_{j<c} p(j)·[n = j]`.
//! Polynomials and finitely supported functions meet only in zero, so
//! `{nᵏ} ∪ {[n = j]}` is a basis of the per-axis space and tensor products of
//! those basis functions are a basis of the four-axis space. Storing
//! coefficients in that basis makes the representation canonical: two
//! functions are equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};
use num::BigInt;

use super::{Axis, LatticePoint};
use crate::scalar::{int, Rational};

/// One per-axis basis function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxisFactor {
    /// `nᵏ`
    Pow(u32),
    /// `[n = j]`
    Delta(u32),
}

impl AxisFactor {
    pub const ONE: AxisFactor = AxisFactor::Pow(0);

    pub fn eval(self, n: u64) -> Rational {
        match self {
            AxisFactor::Pow(k) => Rational::from_integer(BigInt::from(n).pow(k)),
            AxisFactor::Delta(j) => {
                if n == u64::from(j) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
        }
    }

    /// Pointwise product, `None` when it vanishes identically.
    fn mul(self, other: AxisFactor) -> Option<(Rational, AxisFactor)> {
        use AxisFactor::*;
        match (self, other) {
            (Pow(a), Pow(b)) => Some((Rational::one(), Pow(a + b))),
            (Pow(k), Delta(j)) | (Delta(j), Pow(k)) => {
                let v = AxisFactor::Pow(k).eval(u64::from(j));
                (!v.is_zero()).then_some((v, Delta(j)))
            }
            (Delta(i), Delta(j)) => (i == j).then_some((Rational::one(), Delta(i))),
        }
    }

    /// The function `n ↦ self(n + t)` on ℕ, expanded in the basis.
    fn shifted(self, t: i64) -> Vec<(Rational, AxisFactor)> {
        match self {
            AxisFactor::Pow(k) => {
                if t == 0 {
                    return vec![(Rational::one(), self)];
                }
                // (n + t)^k = Σ_i C(k, i) t^(k-i) n^i
                let mut out = Vec::with_capacity(k as usize + 1);
                let tb = BigInt::from(t);
                let mut binom = BigInt::one();
                for i in 0..=k {
                    if i > 0 {
                        binom = binom * BigInt::from(k - i + 1) / BigInt::from(i);
                    }
                    let c = &binom * tb.pow(k - i);
                    if !c.is_zero() {
                        out.push((Rational::from_integer(c), AxisFactor::Pow(i)));
                    }
                }
                out
            }
            AxisFactor::Delta(j) => {
                let target = i64::from(j) - t;
                if target >= 0 {
                    vec![(Rational::one(), AxisFactor::Delta(target as u32))]
                } else {
                    Vec::new()
                }
            }
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            AxisFactor::Pow(k) => k,
            AxisFactor::Delta(_) => 0,
        }
    }

    /// One past the largest point-mass position, zero for polynomials.
    pub fn threshold(self) -> u32 {
        match self {
            AxisFactor::Pow(_) => 0,
            AxisFactor::Delta(j) => j + 1,
        }
    }
}

pub type Factors = [AxisFactor; 4];

const UNIT: Factors = [AxisFactor::ONE; 4];

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoeffFn {
    terms: BTreeMap<Factors, Rational>,
}

impl CoeffFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut f = Self::zero();
        f.add_term(UNIT, c);
        f
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c · factor(n_axis)`.
    pub fn axis_term(axis: Axis, factor: AxisFactor, c: Rational) -> Self {
        let mut key = UNIT;
        key[axis.index()] = factor;
        let mut f = Self::zero();
        f.add_term(key, c);
        f
    }

    /// Polynomial in `n_axis`; `coeffs[k]` multiplies `n_axisᵏ`.
    pub fn axis_polynomial(axis: Axis, coeffs: &[Rational]) -> Self {
        let mut f = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            f = f + Self::axis_term(axis, AxisFactor::Pow(k as u32), c.clone());
        }
        f
    }

    /// `[n_axis ≥ c]`.
    pub fn indicator_ge(axis: Axis, c: u32) -> Self {
        let mut f = Self::one();
        for j in 0..c {
            f = f + Self::axis_term(axis, AxisFactor::Delta(j), -Rational::one());
        }
        f
    }

    /// `[n = point]`.
    pub fn point_mass(point: LatticePoint) -> Self {
        let key = point.0.map(AxisFactor::Delta);
        let mut f = Self::zero();
        f.add_term(key, Rational::one());
        f
    }

    /// Piecewise polynomial in one axis: `pieces` is a list of
    /// `(threshold, coefficients)` sorted by threshold, the first starting at
    /// zero; each piece holds from its threshold to the next one.
    pub fn piecewise(axis: Axis, pieces: &[(u32, Vec<Rational>)]) -> Self {
        let mut f = Self::zero();
        for (i, (start, coeffs)) in pieces.iter().enumerate() {
            let poly = Self::axis_polynomial(axis, coeffs);
            let mut window = Self::indicator_ge(axis, *start);
            if let Some((next, _)) = pieces.get(i + 1) {
                window = window - Self::indicator_ge(axis, *next);
            }
            f = f + &poly * &window;
        }
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Factors, Rational)>) -> Self {
        let mut f = Self::zero();
        for (k, c) in terms {
            f.add_term(k, c);
        }
        f
    }

    pub(crate) fn add_term(&mut self, key: Factors, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Factors, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, n: &LatticePoint) -> Rational {
        let mut acc = Rational::zero();
        for (key, c) in &self.terms {
            let mut v = c.clone();
            for (f, &x) in key.iter().zip(n.0.iter()) {
                match *f {
                    AxisFactor::Pow(0) => {}
                    AxisFactor::Delta(j) if j != x => {
                        v = Rational::zero();
                        break;
                    }
                    AxisFactor::Delta(_) => {}
                    f => v *= f.eval(u64::from(x)),
                }
            }
            acc += v;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// `n ↦ self(n + t)`, valid wherever `n + t ∈ ℕ⁴`.
    pub fn shifted(&self, t: [i64; 4]) -> Self {
        if t == [0; 4] {
            return self.clone();
        }
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let mut partial: Vec<(Rational, Factors)> = vec![(c.clone(), UNIT)];
            for axis in 0..4 {
                let expansion = key[axis].shifted(t[axis]);
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (pc, pk) in &partial {
                    for (ec, ef) in &expansion {
                        let mut k = *pk;
                        k[axis] = *ef;
                        next.push((pc * ec, k));
                    }
                }
                partial = next;
            }
            for (pc, pk) in partial {
                out.add_term(pk, pc);
            }
        }
        out
    }

    /// Largest exponent on any single axis.
    pub fn max_axis_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|f| f.degree()))
            .max()
            .unwrap_or(0)
    }

    /// Largest exponent on each axis.
    pub fn axis_degrees(&self) -> [u32; 4] {
        let mut out = [0; 4];
        for key in self.terms.keys() {
            for (o, f) in out.iter_mut().zip(key) {
                *o = (*o).max(f.degree());
            }
        }
        out
    }

    /// Largest point-mass threshold on each axis.
    pub fn axis_thresholds(&self) -> [u32; 4] {
        let mut out = [0; 4];
        for key in self.terms.keys() {
            for (o, f) in out.iter_mut().zip(key) {
                *o = (*o).max(f.threshold());
            }
        }
        out
    }

    /// Largest point-mass threshold on any axis.
    pub fn max_threshold(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|f| f.threshold()))
            .max()
            .unwrap_or(0)
    }

    /// First coefficient in canonical term order.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    /// True when only pure point masses occur, i.e. the function has finite
    /// support.
    pub fn is_finitely_supported(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.iter().all(|f| matches!(f, AxisFactor::Delta(_))))
    }
}

impl std::ops::Add for CoeffFn {
    type Output = CoeffFn;
    fn add(mut self, rhs: CoeffFn) -> CoeffFn {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl std::ops::Sub for CoeffFn {
    type Output = CoeffFn;
    fn sub(mut self, rhs: CoeffFn) -> CoeffFn {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
        self
    }
}

impl std::ops::Neg for CoeffFn {
    type Output = CoeffFn;
    fn neg(self) -> CoeffFn {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl std::ops::Mul for &CoeffFn {
    type Output = CoeffFn;
    fn mul(self, rhs: &CoeffFn) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (ka, ca) in &self.terms {
            'pair: for (kb, cb) in &rhs.terms {
                let mut c = ca * cb;
                let mut key = UNIT;
                for axis in 0..4 {
                    match ka[axis].mul(kb[axis]) {
                        Some((v, f)) => {
                            c *= v;
                            key[axis] = f;
                        }
                        None => continue 'pair,
                    }
                }
                out.add_term(key, c);
            }
        }
        out
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (axis, factor) in key.iter().enumerate() {
                match factor {
                    AxisFactor::Pow(0) => {}
                    AxisFactor::Pow(1) => write!(f, "·n{}", axis + 1)?,
                    AxisFactor::Pow(k) => write!(f, "·n{}^{k}", axis + 1)?,
                    AxisFactor::Delta(j) => write!(f, "·[n{}={j}]", axis + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffFn({self})")
    }
}

/// `n ↦ c` helper used by generator constructors.
pub(crate) fn affine(axis: Axis, slope: i64, offset: i64) -> CoeffFn {
    CoeffFn::axis_polynomial(axis, &[int(offset), int(slope)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn p(a: u32, b: u32, c: u32, d: u32) -> LatticePoint {
        LatticePoint([a, b, c, d])
    }

    fn grid(w: u32) -> impl Iterator<Item = LatticePoint> {
        (0..w).flat_map(move |a| (0..w).flat_map(move |b| (0..w).flat_map(move |c| (0..w).map(move |d| p(a, b, c, d)))))
    }

    #[test]
    fn indicator_matches_definition() {
        let f = CoeffFn::indicator_ge(Axis::X2, 2);
        for n in grid(4) {
            let expect = if n.0[1] >= 2 { int(1) } else { int(0) };
            assert_eq!(f.eval(&n), expect, "{n:?}");
        }
    }

    #[test]
    fn product_is_pointwise() {
        let f = CoeffFn::axis_polynomial(Axis::X1, &[int(1), int(2), ratio(1, 3)]) + CoeffFn::point_mass(p(1, 0, 2, 0));
        let g = CoeffFn::indicator_ge(Axis::X1, 1) - CoeffFn::axis_polynomial(Axis::X3, &[int(0), int(5)]);
        let fg = &f * &g;
        for n in grid(4) {
            assert_eq!(fg.eval(&n), f.eval(&n) * g.eval(&n));
        }
    }

    #[test]
    fn shift_is_argument_translation() {
        let f = CoeffFn::axis_polynomial(Axis::X1, &[int(3), int(-1), int(2)])
            + CoeffFn::point_mass(p(2, 1, 0, 0))
            + &CoeffFn::indicator_ge(Axis::X4, 2) * &CoeffFn::axis_polynomial(Axis::X2, &[int(0), int(1)]);
        let t = [-1, 2, 0, 1];
        let g = f.shifted(t);
        for n in grid(4) {
            let mut m = [0i64; 4];
            for i in 0..4 {
                m[i] = i64::from(n.0[i]) + t[i];
            }
            if m.iter().all(|&v| v >= 0) {
                let m = LatticePoint(m.map(|v| v as u32));
                assert_eq!(g.eval(&n), f.eval(&m), "{n:?}");
            }
        }
    }

    #[test]
    fn piecewise_pieces() {
        // 5 for n < 2, then n^2
        let f = CoeffFn::piecewise(Axis::X3, &[(0, vec![int(5)]), (2, vec![int(0), int(0), int(1)])]);
        for n in 0..6u32 {
            let expect = if n < 2 { int(5) } else { int(i64::from(n * n)) };
            assert_eq!(f.eval(&p(0, 0, n, 0)), expect);
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        // [n ≥ 1]·n equals n.
        let a = &CoeffFn::indicator_ge(Axis::X1, 1) * &affine(Axis::X1, 1, 0);
        let b = affine(Axis::X1, 1, 0);
        assert_eq!(a, b);
    }
}
