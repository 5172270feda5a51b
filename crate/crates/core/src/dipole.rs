//! Dipole chronons `A = T ⊗ T†`: operators on topon space, the Poincaré
//! generators lifted from topons to chronons, the arrow-reversing adjoint
//! and the trace metric.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{unitize, GeneratorId, GradedExtensor, Unitized};
use crate::lattice::{
    coordinate_operator, lorentz_generator, mixed_generator, translation_generator, AntiEuclideanMetric, Axis,
    AxisFactor, LatticePoint, ShiftPolyOperator,
};
use crate::linalg::RatMatrix;
use crate::scalar::{ratio, Rational};

/// A chronon given as an operator on topon space.
#[derive(Clone)]
pub struct ArrowChronon {
    op: ShiftPolyOperator,
    gen: OnceLock<Option<Unitized>>,
}

impl ArrowChronon {
    pub fn new(op: ShiftPolyOperator) -> Self {
        Self {
            op,
            gen: OnceLock::new(),
        }
    }

    pub fn op(&self) -> &ShiftPolyOperator {
        &self.op
    }

    /// `|χ⟩`, created on first use. `None` for the zero chronon.
    pub fn generator(&self) -> Option<&Unitized> {
        self.gen.get_or_init(|| unitize(&self.op).ok()).as_ref()
    }
}

impl PartialEq for ArrowChronon {
    fn eq(&self, other: &Self) -> bool {
        self.op == other.op
    }
}

impl fmt::Debug for ArrowChronon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArrowChronon({})", self.op)
    }
}

/// Expands an operator over basis chronons `|U^up M_b T^down⟩`, making the
/// chronon-to-extensor map linear. Every basis chronon has unit leading
/// coefficient, so its generator carries no sign.
pub fn expand(op: &ShiftPolyOperator) -> GradedExtensor<Rational> {
    crate::exterior::linear_combination(op.basis_terms().map(|(basis, c)| {
        let u = unitize(&basis).expect("basis operators are nonzero");
        debug_assert!(!u.sign.is_negative());
        (u.generator, c)
    }))
}

/// Inverse of [`expand`] on grade-1 combinations of chronon generators.
pub fn collapse(e: &GradedExtensor<Rational>) -> Result<ShiftPolyOperator> {
    let mut op = ShiftPolyOperator::zero();
    for (mono, c) in e.terms() {
        let [g] = mono.as_slice() else {
            return Err(Error::Domain(format!("grade {} term is not a chronon", mono.len())));
        };
        let content = g.operator().ok_or_else(|| Error::Domain(g.to_string()))?;
        op = op + content.scale(c);
    }
    Ok(op)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftedKind {
    /// `P̃_μ|χ⟩ = |[p̃_μ, χ]⟩`
    Translation(Axis),
    /// `X^μ|χ⟩ = ½|x^μ χ + χ x^μ⟩`
    Coordinate(Axis),
    /// `J̃_{μλ}|χ⟩ = |[l̃_{μλ}, χ]⟩`
    Lorentz(Axis, Axis),
    /// `L̃_{μλ} = X_μ P̃_λ − X_λ P̃_μ`
    Orbital(Axis, Axis),
    /// `S̃ = J̃ − L̃`
    Spin(Axis, Axis),
    /// `|[x^λ p̃_ν, χ]⟩`, the off-diagonal gl(4) generators.
    Mixed(Axis, Axis),
}

/// A topon-level generator extended to a linear map on chronons.
#[derive(Clone, Debug)]
pub struct LiftedGenerator {
    kind: LiftedKind,
    metric: Arc<AntiEuclideanMetric>,
    topon: Option<ShiftPolyOperator>,
}

impl LiftedGenerator {
    pub fn new(kind: LiftedKind, metric: Arc<AntiEuclideanMetric>) -> Result<Self> {
        let topon = match kind {
            LiftedKind::Translation(mu) => Some(translation_generator(mu)),
            LiftedKind::Coordinate(mu) => Some(coordinate_operator(mu)),
            LiftedKind::Lorentz(mu, lam) => Some(lorentz_generator(mu, lam, &metric)?),
            LiftedKind::Mixed(lam, nu) => Some(mixed_generator(lam, nu)?),
            LiftedKind::Orbital(mu, lam) | LiftedKind::Spin(mu, lam) => {
                if mu == lam {
                    return Err(Error::DegenerateIndex(mu.label()));
                }
                None
            }
        };
        Ok(Self { kind, metric, topon })
    }

    pub fn translation(mu: Axis) -> Self {
        Self::new(LiftedKind::Translation(mu), Arc::new(AntiEuclideanMetric::new())).expect("total")
    }

    pub fn coordinate(mu: Axis) -> Self {
        Self::new(LiftedKind::Coordinate(mu), Arc::new(AntiEuclideanMetric::new())).expect("total")
    }

    pub fn kind(&self) -> LiftedKind {
        self.kind
    }

    /// The topon operator being lifted, where one exists.
    pub fn topon_operator(&self) -> Option<&ShiftPolyOperator> {
        self.topon.as_ref()
    }

    /// Action on a chronon, at the operator level.
    pub fn apply(&self, chi: &ShiftPolyOperator) -> ShiftPolyOperator {
        match self.kind {
            LiftedKind::Translation(_) | LiftedKind::Lorentz(..) | LiftedKind::Mixed(..) => {
                self.topon.as_ref().expect("set in new").commutator(chi)
            }
            LiftedKind::Coordinate(_) => {
                let x = self.topon.as_ref().expect("set in new");
                (x.compose(chi) + chi.compose(x)).scale(&ratio(1, 2))
            }
            LiftedKind::Orbital(mu, lam) => self.orbital(mu, lam, chi),
            LiftedKind::Spin(mu, lam) => {
                let j = LiftedGenerator::new(LiftedKind::Lorentz(mu, lam), self.metric.clone()).expect("μ ≠ λ");
                j.apply(chi) - self.orbital(mu, lam, chi)
            }
        }
    }

    fn orbital(&self, mu: Axis, lam: Axis, chi: &ShiftPolyOperator) -> ShiftPolyOperator {
        let p_lam = translation_generator(lam).commutator(chi);
        let p_mu = translation_generator(mu).commutator(chi);
        let mut out = ShiftPolyOperator::zero();
        for nu in Axis::ALL {
            let x = LiftedGenerator::coordinate(nu);
            let a = self.metric.low(mu, nu);
            let b = self.metric.low(lam, nu);
            if !a.is_zero() {
                out = out + x.apply(&p_lam).scale(a);
            }
            if !b.is_zero() {
                out = out - x.apply(&p_mu).scale(b);
            }
        }
        out
    }

    /// Action on a rational combination of chronons.
    pub fn apply_combination(&self, e: &GradedExtensor<Rational>) -> Result<GradedExtensor<Rational>> {
        Ok(expand(&self.apply(&collapse(e)?)))
    }

    /// Image of one chronon generator, for extension as a derivation over
    /// `∨`. Generators that are not chronons are outside the domain.
    pub fn on_generator(&self, g: &GeneratorId) -> Result<GradedExtensor<Rational>> {
        let op = g.operator().ok_or_else(|| Error::Domain(g.to_string()))?;
        Ok(expand(&self.apply(op)))
    }

    pub fn name(&self) -> String {
        match self.kind {
            LiftedKind::Translation(mu) => format!("P{mu}"),
            LiftedKind::Coordinate(mu) => format!("X{mu}"),
            LiftedKind::Lorentz(m, l) => format!("J{m}{l}"),
            LiftedKind::Orbital(m, l) => format!("L{m}{l}"),
            LiftedKind::Spin(m, l) => format!("S{m}{l}"),
            LiftedKind::Mixed(l, n) => format!("x{l}p{n}"),
        }
    }
}

/// `[A, B]χ = A(Bχ) − B(Aχ)`.
pub fn lifted_commutator(a: &LiftedGenerator, b: &LiftedGenerator, chi: &ShiftPolyOperator) -> ShiftPolyOperator {
    a.apply(&b.apply(chi)) - b.apply(&a.apply(chi))
}

pub fn lift_translation(mu: Axis, chi: &ArrowChronon) -> GradedExtensor<Rational> {
    expand(&LiftedGenerator::translation(mu).apply(chi.op()))
}

pub fn lift_coordinate(mu: Axis, chi: &ArrowChronon) -> GradedExtensor<Rational> {
    expand(&LiftedGenerator::coordinate(mu).apply(chi.op()))
}

pub fn lift_lorentz(mu: Axis, lam: Axis, chi: &ArrowChronon) -> Result<GradedExtensor<Rational>> {
    let j = LiftedGenerator::new(LiftedKind::Lorentz(mu, lam), Arc::new(AntiEuclideanMetric::new()))?;
    Ok(expand(&j.apply(chi.op())))
}

/// `(L̃_{μλ}, S̃_{μλ})` with `J̃ = L̃ + S̃`.
pub fn spin_split(mu: Axis, lam: Axis) -> Result<(LiftedGenerator, LiftedGenerator)> {
    let metric = Arc::new(AntiEuclideanMetric::new());
    Ok((
        LiftedGenerator::new(LiftedKind::Orbital(mu, lam), metric.clone())?,
        LiftedGenerator::new(LiftedKind::Spin(mu, lam), metric)?,
    ))
}

/// The adjoint of a chronon: a dual chronon `Σ χ_{nm} ⟨m←n|`, stored as the
/// operator whose matrix lists its dual-basis coefficients (the transpose).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualChronon {
    reversed: ShiftPolyOperator,
}

impl DualChronon {
    /// Coefficients over the reciprocal arrow basis, as an operator.
    pub fn coefficients(&self) -> &ShiftPolyOperator {
        &self.reversed
    }

    pub fn adjoint(&self) -> ArrowChronon {
        ArrowChronon::new(self.reversed.transpose())
    }
}

/// `|n←m⟩† = ⟨m←n|`, extended linearly.
pub fn adjoint(chi: &ArrowChronon) -> DualChronon {
    DualChronon {
        reversed: chi.op().transpose(),
    }
}

/// Entries `(n, m)` in `[0, w)⁴ × [0, w)⁴` where the shift-algebra adjoint
/// disagrees with the literal transposed matrix. Empty when reversal and
/// the ℕ⁴ boundary are consistent.
pub fn adjoint_window_discrepancies(chi: &ShiftPolyOperator, w: u32) -> Vec<(LatticePoint, LatticePoint)> {
    let adj = chi.transpose();
    let mut bad = Vec::new();
    let points: Vec<LatticePoint> = LatticePoint::window(w).collect();
    for m in &points {
        let column = adj.apply(m);
        for n in &points {
            // ⟨n|χᵀ|m⟩ against ⟨m|χ|n⟩
            let lhs = column.get(n).cloned().unwrap_or_else(Rational::zero);
            let rhs = chi.apply(n).get(m).cloned().unwrap_or_else(Rational::zero);
            if lhs != rhs {
                bad.push((*n, *m));
            }
        }
    }
    bad
}

/// A sum over the window `[0, W)⁴` as an exact polynomial in `W`, valid for
/// `W ≥ valid_from`. A constant polynomial is a convergent (finite) value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowPolynomial {
    /// `coeffs[k]` multiplies `Wᵏ`.
    pub coeffs: Vec<Rational>,
    pub valid_from: u32,
}

impl WindowPolynomial {
    fn trimmed(mut coeffs: Vec<Rational>, valid_from: u32) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs, valid_from }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value when finite.
    pub fn finite_value(&self) -> Option<Rational> {
        match self.coeffs.as_slice() {
            [] => Some(Rational::zero()),
            [c] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn eval(&self, w: u32) -> Rational {
        let wr = Rational::from_integer(w.into());
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &wr + c)
    }
}

impl fmt::Display for WindowPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}·W"),
                _ => format!("{c}·W^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Vec<Rational>, b: &[Rational]) {
    if a.len() < b.len() {
        a.resize(b.len(), Rational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// `Σ_{n=0}^{W-1} nᵏ` as a polynomial in `W`, by exact interpolation.
fn power_sum(k: u32) -> Vec<Rational> {
    let deg = k as usize + 1;
    let vander = RatMatrix::from_fn(deg + 1, deg + 1, |i, j| {
        Rational::from_integer((i as i64).pow(j as u32).into())
    });
    let values: Vec<Rational> = (0..=deg)
        .map(|w| {
            (0..w).fold(Rational::zero(), |acc, n| {
                acc + Rational::from_integer((n as i64).pow(k).into())
            })
        })
        .collect();
    vander.solve(&values).expect("Vandermonde on distinct nodes")
}

/// Sum of a coefficient function over the window, as a polynomial in `W`.
fn window_sum(f: &crate::lattice::CoeffFn) -> WindowPolynomial {
    let mut total = Vec::new();
    for (key, c) in f.terms() {
        let mut term = vec![c.clone()];
        for factor in key {
            let axis_sum = match factor {
                AxisFactor::Pow(k) => power_sum(*k),
                AxisFactor::Delta(_) => vec![Rational::one()],
            };
            term = poly_mul(&term, &axis_sum);
        }
        poly_add(&mut total, &term);
    }
    WindowPolynomial::trimmed(total, f.max_threshold() + 1)
}

/// `|χ|² = tr χ²`, from the diagonal (zero-shift) part of `χ∘χ`. Sums that
/// grow with the window come back as non-constant polynomials.
pub fn trace_metric(chi: &ArrowChronon) -> WindowPolynomial {
    window_sum(&chi.op().compose(chi.op()).diagonal_part())
}

/// Reciprocal-basis pairing `⟨ψ|χ⟩ = Σ ψ_{nm} χ_{nm}` of a dual chronon with
/// a chronon, regularized on the same window.
pub fn pair(dual: &DualChronon, chi: &ArrowChronon) -> WindowPolynomial {
    let mut total = crate::lattice::CoeffFn::zero();
    for (s, f) in dual.coefficients().terms() {
        if let Some(g) = chi.op().coefficient(s) {
            total = total + f * g;
        }
    }
    window_sum(&total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{operators_equal, unit_shift, CoeffFn};
    use crate::scalar::int;

    fn pt(a: u32, b: u32, c: u32, d: u32) -> LatticePoint {
        LatticePoint([a, b, c, d])
    }

    #[test]
    fn translation_lift_examples() {
        let p1 = ArrowChronon::new(translation_generator(Axis::X1));
        assert!(lift_translation(Axis::X2, &p1).is_zero());
        for mu in Axis::ALL {
            let x = ArrowChronon::new(coordinate_operator(mu));
            assert_eq!(lift_translation(mu, &x), expand(&ShiftPolyOperator::identity()));
        }
        assert!(lift_translation(Axis::X1, &ArrowChronon::new(coordinate_operator(Axis::X2))).is_zero());
    }

    #[test]
    fn coordinate_lift_examples() {
        let id = ArrowChronon::new(ShiftPolyOperator::identity());
        assert_eq!(lift_coordinate(Axis::X3, &id), expand(&coordinate_operator(Axis::X3)));
        // X^μ|p̃_μ⟩ = |M_{n_μ} + ½|
        let p = ArrowChronon::new(translation_generator(Axis::X2));
        let expect = ShiftPolyOperator::diagonal(CoeffFn::axis_polynomial(Axis::X2, &[ratio(1, 2), int(1)]));
        assert_eq!(collapse(&lift_coordinate(Axis::X2, &p)).unwrap(), expect);
    }

    #[test]
    fn lorentz_lift_examples() {
        let g = AntiEuclideanMetric::new();
        let id = ArrowChronon::new(ShiftPolyOperator::identity());
        assert!(lift_lorentz(Axis::X1, Axis::X2, &id).unwrap().is_zero());
        let l12 = ArrowChronon::new(lorentz_generator(Axis::X1, Axis::X2, &g).unwrap());
        assert!(lift_lorentz(Axis::X1, Axis::X2, &l12).unwrap().is_zero());
        for (mu, lam) in Axis::distinct_pairs() {
            for nu in Axis::ALL {
                let p = ArrowChronon::new(translation_generator(nu));
                let lhs = collapse(&lift_lorentz(mu, lam, &p).unwrap()).unwrap();
                let rhs = translation_generator(lam).scale(&-g.low(mu, nu).clone())
                    + translation_generator(mu).scale(g.low(lam, nu));
                assert!(operators_equal(&lhs, &rhs));
            }
        }
        assert!(lift_lorentz(Axis::X4, Axis::X4, &id).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let a = pt(0, 1, 0, 0);
        let b = pt(2, 0, 0, 1);
        let arrow = ArrowChronon::new(ShiftPolyOperator::arrow(a, b));
        assert_eq!(adjoint(&arrow).coefficients(), &ShiftPolyOperator::arrow(b, a));
        assert_eq!(adjoint(&arrow).adjoint(), arrow);
        let id = ArrowChronon::new(ShiftPolyOperator::identity());
        assert_eq!(adjoint(&id).coefficients(), &ShiftPolyOperator::identity());
        let p = translation_generator(Axis::X1);
        assert!(adjoint_window_discrepancies(&p, 3).is_empty());
        let x = coordinate_operator(Axis::X2);
        assert!(adjoint_window_discrepancies(&x, 3).is_empty());
    }

    #[test]
    fn trace_metric_examples() {
        let p = ArrowChronon::new(translation_generator(Axis::X1));
        assert_eq!(trace_metric(&p).finite_value(), Some(int(0)));
        let a = pt(1, 0, 0, 0);
        let b = pt(0, 2, 0, 0);
        let sym = ArrowChronon::new(ShiftPolyOperator::arrow(a, b) + ShiftPolyOperator::arrow(b, a));
        assert_eq!(trace_metric(&sym).finite_value(), Some(int(2)));
        let single = ArrowChronon::new(ShiftPolyOperator::arrow(a, b));
        assert_eq!(trace_metric(&single).finite_value(), Some(int(0)));
        // identity: tr 1 = W⁴
        let id = ArrowChronon::new(ShiftPolyOperator::identity());
        let t = trace_metric(&id);
        assert!(!t.is_finite());
        assert_eq!(t.eval(3), int(81));
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum(0), vec![int(0), int(1)]);
        // Σ n = W(W-1)/2
        assert_eq!(power_sum(1), vec![int(0), ratio(-1, 2), ratio(1, 2)]);
    }

    #[test]
    fn pairing_matches_trace_on_finite_chronons() {
        let a = pt(1, 0, 0, 0);
        let b = pt(0, 2, 0, 0);
        let c = pt(0, 0, 1, 1);
        let op = ShiftPolyOperator::arrow(a, b).scale(&int(3))
            + ShiftPolyOperator::arrow(b, a).scale(&ratio(1, 2))
            + ShiftPolyOperator::arrow(c, c)
            + ShiftPolyOperator::arrow(a, c);
        let chi = ArrowChronon::new(op);
        assert_eq!(
            pair(&adjoint(&chi), &chi).finite_value(),
            trace_metric(&chi).finite_value()
        );
        assert_eq!(trace_metric(&chi).finite_value(), Some(int(4)));
    }

    #[test]
    fn expand_collapse_roundtrip() {
        let op = coordinate_operator(Axis::X1)
            + ShiftPolyOperator::term(unit_shift(Axis::X2, -2), CoeffFn::indicator_ge(Axis::X3, 1));
        assert_eq!(collapse(&expand(&op)).unwrap(), op);
        let vac = GradedExtensor::<Rational>::one();
        assert!(collapse(&vac).is_err());
    }
}
