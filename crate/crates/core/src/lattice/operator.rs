use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};

use super::{CoeffFn, LatticePoint};
use crate::scalar::Rational;

/// Net displacement of one operator term.
pub type Shift = [i64; 4];

/// Sparse vector over lattice basis states.
pub type SparseVector = BTreeMap<LatticePoint, Rational>;

/// Exact operator on `span{|m⟩ : m ∈ ℕ⁴}`.
///
/// Each term is `U^up ∘ M_f ∘ T^down` where `T` lowers (and kills states that
/// would leave ℕ⁴), `U` raises, and `up`, `down` never both move the same
/// axis. The pair is recovered from the net shift `s = up − down`, so terms
/// are keyed by `s`. The coefficient `f` is read at the lowered argument:
/// the term sends `|n⟩` with `n ≥ down` to `f(n − down)·|n + s⟩`. With that
/// parametrization every operator has exactly one representation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ShiftPolyOperator {
    terms: BTreeMap<Shift, CoeffFn>,
}

fn down_of(s: &Shift) -> Shift {
    s.map(|v| (-v).max(0))
}

fn up_of(s: &Shift) -> Shift {
    s.map(|v| v.max(0))
}

impl ShiftPolyOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term([0; 4], CoeffFn::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::term([0; 4], CoeffFn::constant(c))
    }

    pub fn term(shift: Shift, coeff: CoeffFn) -> Self {
        let mut op = Self::zero();
        op.add_term(shift, coeff);
        op
    }

    /// Diagonal multiplication `|n⟩ ↦ f(n)|n⟩`.
    pub fn diagonal(f: CoeffFn) -> Self {
        Self::term([0; 4], f)
    }

    /// The single arrow `|head⟩⟨tail|`.
    pub fn arrow(head: LatticePoint, tail: LatticePoint) -> Self {
        let s: Shift = std::array::from_fn(|i| i64::from(head.0[i]) - i64::from(tail.0[i]));
        let d = down_of(&s);
        // coefficient is read at tail − down
        let at = tail.offset(d.map(|v| -v)).expect("tail ≥ down");
        Self::term(s, CoeffFn::point_mass(at))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Shift, CoeffFn)>) -> Self {
        let mut op = Self::zero();
        for (s, f) in terms {
            op.add_term(s, f);
        }
        op
    }

    fn add_term(&mut self, s: Shift, f: CoeffFn) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_default();
        *slot = std::mem::take(slot) + f;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shift, &CoeffFn)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &Shift) -> Option<&CoeffFn> {
        self.terms.get(s)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Raising part of a shift.
    pub fn up(s: &Shift) -> Shift {
        up_of(s)
    }

    /// Lowering part of a shift.
    pub fn down(s: &Shift) -> Shift {
        down_of(s)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(s, f)| (*s, f.scale(c))))
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &ShiftPolyOperator) -> ShiftPolyOperator {
        let mut out = Self::zero();
        for (s1, f) in &self.terms {
            let d1 = down_of(s1);
            for (s2, g) in &rhs.terms {
                let d2 = down_of(s2);
                let mut s = [0i64; 4];
                for i in 0..4 {
                    s[i] = s1[i] + s2[i];
                }
                let d = down_of(&s);
                // input n = k + d; rhs needs n ≥ d2, self needs n + s2 ≥ d1
                let mut g_shift = [0i64; 4];
                let mut f_shift = [0i64; 4];
                let mut guard = CoeffFn::one();
                for i in 0..4 {
                    g_shift[i] = d[i] - d2[i];
                    f_shift[i] = d[i] + s2[i] - d1[i];
                    let axis = super::Axis(i as u8);
                    let need = (-g_shift[i]).max(-f_shift[i]);
                    if need > 0 {
                        guard = &guard * &CoeffFn::indicator_ge(axis, need as u32);
                    }
                }
                let h = &(&guard * &g.shifted(g_shift)) * &f.shifted(f_shift);
                out.add_term(s, h);
            }
        }
        out
    }

    /// `[self, rhs] = self∘rhs − rhs∘self`.
    pub fn commutator(&self, rhs: &ShiftPolyOperator) -> ShiftPolyOperator {
        self.compose(rhs) - rhs.compose(self)
    }

    /// Matrix transpose, `⟨n|χᵀ|m⟩ = ⟨m|χ|n⟩`. Reversing a term swaps its
    /// raising and lowering parts and keeps the coefficient at the same
    /// lowered argument, so the result is again in canonical form.
    pub fn transpose(&self) -> ShiftPolyOperator {
        Self::from_terms(self.terms.iter().map(|(s, f)| (s.map(|v| -v), f.clone())))
    }

    /// Image of one basis state.
    pub fn apply(&self, n: &LatticePoint) -> SparseVector {
        let mut out = SparseVector::new();
        for (s, f) in &self.terms {
            let d = down_of(s);
            let Some(k) = n.offset(d.map(|v| -v)) else { continue };
            let c = f.eval(&k);
            if c.is_zero() {
                continue;
            }
            let target = n.offset(*s).expect("n + s ≥ 0 when n ≥ down");
            accumulate(&mut out, target, c);
        }
        out
    }

    pub fn apply_vector(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (n, c) in v {
            for (m, d) in self.apply(n) {
                accumulate(&mut out, m, c * d);
            }
        }
        out
    }

    /// Largest single-axis displacement.
    pub fn max_shift(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|s| s.iter().map(|v| v.unsigned_abs() as u32))
            .max()
            .unwrap_or(0)
    }

    /// Largest single-axis lowering.
    pub fn max_down(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|s| down_of(s).into_iter().map(|v| v as u32))
            .max()
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.values().map(CoeffFn::max_axis_degree).max().unwrap_or(0)
    }

    pub fn max_threshold(&self) -> u32 {
        self.terms.values().map(CoeffFn::max_threshold).max().unwrap_or(0)
    }

    /// First coefficient in canonical order, used to fix the sign of a
    /// unitized operator.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next().and_then(CoeffFn::leading_coefficient)
    }

    /// Expansion over basis operators `U^up M_b T^down`, one per shift and
    /// coefficient basis function.
    pub fn basis_terms(&self) -> impl Iterator<Item = (ShiftPolyOperator, Rational)> + '_ {
        self.terms.iter().flat_map(|(s, f)| {
            f.terms().map(move |(key, c)| {
                (
                    ShiftPolyOperator::term(*s, CoeffFn::from_terms([(*key, Rational::one())])),
                    c.clone(),
                )
            })
        })
    }

    /// True for a single basis term with unit coefficient.
    pub fn is_basis_element(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .values()
                .all(|f| f.len() == 1 && f.leading_coefficient().is_some_and(One::is_one))
    }

    /// Shift-zero (diagonal) component.
    pub fn diagonal_part(&self) -> CoeffFn {
        self.terms.get(&[0; 4]).cloned().unwrap_or_default()
    }

    /// Finite support in every term (a finite matrix).
    pub fn is_finite_rank(&self) -> bool {
        self.terms.values().all(CoeffFn::is_finitely_supported)
    }
}

fn accumulate(v: &mut SparseVector, at: LatticePoint, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(at).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&at);
    }
}

/// Per-axis side lengths of a box `[0, W₁) × … × [0, W₄)` on which
/// agreement of `a` and `b` proves equality everywhere.
///
/// For a fixed shift, the coefficient read at `k = n − down` is, along each
/// axis, a polynomial of degree ≤ D plus point masses below a threshold J.
/// Such a function vanishing at `D + J + 1` consecutive points from zero is
/// zero (the polynomial part vanishes on the last D+1 of them, then each
/// mass vanishes), and tensor products of injective evaluations stay
/// injective. Adding the largest lowering on the axis gives
/// `W = down + D + J + 1`; an axis nothing depends on needs one point.
pub fn equality_window(a: &ShiftPolyOperator, b: &ShiftPolyOperator) -> [u32; 4] {
    let mut w = [1u32; 4];
    for op in [a, b] {
        for (s, f) in &op.terms {
            let down = down_of(s);
            let (deg, thr) = (f.axis_degrees(), f.axis_thresholds());
            for i in 0..4 {
                w[i] = w[i].max(down[i] as u32 + deg[i] + thr[i] + 1);
            }
        }
    }
    w
}

/// Decides `a = b` as operators on all of ℕ⁴ by evaluation on the
/// [`equality_window`]. Independent of the canonical term representation.
pub fn operators_equal(a: &ShiftPolyOperator, b: &ShiftPolyOperator) -> bool {
    LatticePoint::boxed(equality_window(a, b)).all(|n| a.apply(&n) == b.apply(&n))
}

impl std::ops::Add for ShiftPolyOperator {
    type Output = ShiftPolyOperator;
    fn add(mut self, rhs: ShiftPolyOperator) -> ShiftPolyOperator {
        for (s, f) in rhs.terms {
            self.add_term(s, f);
        }
        self
    }
}

impl std::ops::Sub for ShiftPolyOperator {
    type Output = ShiftPolyOperator;
    fn sub(mut self, rhs: ShiftPolyOperator) -> ShiftPolyOperator {
        for (s, f) in rhs.terms {
            self.add_term(s, -f);
        }
        self
    }
}

impl std::ops::Neg for ShiftPolyOperator {
    type Output = ShiftPolyOperator;
    fn neg(self) -> ShiftPolyOperator {
        Self {
            terms: self.terms.into_iter().map(|(s, f)| (s, -f)).collect(),
        }
    }
}

impl fmt::Display for ShiftPolyOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let up = up_of(s);
            let down = down_of(s);
            if up != [0; 4] {
                write!(f, "U{up:?}∘")?;
            }
            write!(f, "[{c}]")?;
            if down != [0; 4] {
                write!(f, "∘T{down:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ShiftPolyOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShiftPolyOperator({self})")
    }
}
