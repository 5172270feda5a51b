//! The hyperdiamond vacuum `⋁_μ |p̃_μ⟩` and its invariance under the lifted
//! Poincaré and traceless gl(4) generators.

use std::sync::Arc;

use num::traits::Zero;

use crate::dipole::{LiftedGenerator, LiftedKind};
use crate::error::Result;
use crate::exterior::{unitize, Exclusion, GeneratorId, GradedExtensor};
use crate::lattice::{
    translation_generator, unit_shift, AntiEuclideanMetric, Axis, CoeffFn, LatticePoint, ShiftPolyOperator,
};
use crate::report::{Check, SuiteReport};
use crate::scalar::{to_f64, Rational};

/// `Σ_m |m⟩⟨m+1_μ|` over all of ℕ⁴: every link sends `|n⟩` to `|n−1_μ⟩`
/// with unit weight, and nothing below the boundary.
pub fn nearest_neighbor_links(mu: Axis) -> ShiftPolyOperator {
    ShiftPolyOperator::term(unit_shift(mu, -1), CoeffFn::one())
}

/// Whether the literal arrow sum over links inside `[0, w)⁴` agrees with
/// [`nearest_neighbor_links`] on every basis vector of the window.
pub fn links_agree_on_window(mu: Axis, w: u32) -> bool {
    let links = nearest_neighbor_links(mu);
    let mut arrows = ShiftPolyOperator::zero();
    for m in LatticePoint::window(w) {
        if let Some(tail) = m.offset(unit_shift(mu, 1)).filter(|t| t.0[mu.index()] < w) {
            arrows = arrows + ShiftPolyOperator::arrow(m, tail);
        }
    }
    LatticePoint::window(w).all(|n| arrows.apply(&n) == links.apply(&n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct VacuumExtensor {
    factors: [ShiftPolyOperator; 4],
    generators: [GeneratorId; 4],
    value: GradedExtensor<Rational>,
}

impl VacuumExtensor {
    pub fn value(&self) -> &GradedExtensor<Rational> {
        &self.value
    }

    pub fn factor(&self, mu: Axis) -> &ShiftPolyOperator {
        &self.factors[mu.index()]
    }

    pub fn generator(&self, mu: Axis) -> &GeneratorId {
        &self.generators[mu.index()]
    }
}

pub fn build_vacuum_i() -> VacuumExtensor {
    let factors = Axis::ALL.map(nearest_neighbor_links);
    let generators = factors
        .clone()
        .map(|op| unitize(&op).expect("links are nonzero").generator);
    let value = generators.iter().fold(GradedExtensor::one(), |acc, g| {
        acc.wedge(&GradedExtensor::generator(g.clone()))
    });
    VacuumExtensor {
        factors,
        generators,
        value,
    }
}

/// `G|vac I⟩` with `G` extended as an even derivation.
pub fn residual(vac: &VacuumExtensor, g: &LiftedGenerator, exclusion: Exclusion) -> Result<GradedExtensor<Rational>> {
    vac.value
        .extend_as_derivation_with(|gen| g.on_generator(gen), exclusion)
}

fn lifted(kind: LiftedKind) -> LiftedGenerator {
    LiftedGenerator::new(kind, Arc::new(AntiEuclideanMetric::new())).expect("indices checked by caller")
}

/// Coefficient of `|p̃_ν⟩` in the image of `|p̃_ν⟩`: the only part of slot
/// `ν` that survives the repeated-generator kill.
fn surviving_coefficient(vac: &VacuumExtensor, g: &LiftedGenerator, nu: Axis) -> Rational {
    let image = g.on_generator(vac.generator(nu)).expect("vacuum factors are chronons");
    image.coefficient(std::slice::from_ref(vac.generator(nu)))
}

fn commutator_trace(g: &LiftedGenerator) -> String {
    Axis::ALL
        .iter()
        .map(|&nu| format!("[{}, p{}] = {}", g.name(), nu, g.apply(&translation_generator(nu))))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn verify_structure() -> SuiteReport {
    let mut r = SuiteReport::new("vacuum-structure");
    let vac = build_vacuum_i();
    r.check(
        "grade",
        vac.value.grade() == Some(4),
        format!("grades {:?}", vac.value.grades()),
    );
    for mu in Axis::ALL {
        let same = crate::lattice::operators_equal(vac.factor(mu), &translation_generator(mu));
        r.check(
            format!("factor-{mu}-is-p{mu}"),
            same && links_agree_on_window(mu, 3),
            vac.factor(mu).to_string(),
        );
    }
    let extra = vac
        .value
        .wedge(&GradedExtensor::generator(vac.generator(Axis::X2).clone()));
    r.check("repeat-kills", extra.is_zero(), "vac ∨ |p2⟩");
    r
}

pub fn verify_translation_invariance() -> SuiteReport {
    let mut r = SuiteReport::new("translation");
    let vac = build_vacuum_i();
    for mu in Axis::ALL {
        let g = lifted(LiftedKind::Translation(mu));
        let res = residual(&vac, &g, Exclusion::Enforced).expect("chronon generators");
        r.push(
            Check::new(format!("P{mu}"), res.is_zero(), commutator_trace(&g))
                .with("residual_terms", res.num_terms() as f64),
        );
    }
    let x = lifted(LiftedKind::Coordinate(Axis::X1));
    let res = residual(&vac, &x, Exclusion::Enforced).expect("chronon generators");
    r.push(
        Check::new(
            "X1-contrast-nonzero",
            !res.is_zero(),
            format!("X1|vac⟩ has {} terms", res.num_terms()),
        )
        .with("residual_terms", res.num_terms() as f64),
    );
    r
}

pub fn verify_lorentz_invariance() -> SuiteReport {
    let mut r = SuiteReport::new("lorentz");
    let vac = build_vacuum_i();
    let mut mutation_terms = 0;
    for (mu, lam) in Axis::increasing_pairs() {
        let g = lifted(LiftedKind::Lorentz(mu, lam));
        let res = residual(&vac, &g, Exclusion::Enforced).expect("chronon generators");
        let survivors: Vec<Rational> = Axis::ALL
            .iter()
            .map(|&nu| surviving_coefficient(&vac, &g, nu))
            .collect();
        let cancel = survivors.iter().fold(Rational::zero(), |a, b| a + b).is_zero();
        let mut check = Check::new(format!("J{mu}{lam}"), res.is_zero() && cancel, commutator_trace(&g))
            .with("residual_terms", res.num_terms() as f64);
        for (nu, c) in Axis::ALL.iter().zip(&survivors) {
            check = check.with(format!("slot{nu}"), to_f64(c));
        }
        r.push(check);
        mutation_terms += residual(&vac, &g, Exclusion::Disabled)
            .expect("chronon generators")
            .num_terms();
    }
    r.push(
        Check::new(
            "mutation-disabled-exclusion-nonzero",
            mutation_terms > 0,
            "with repeated generators kept, the Lorentz residuals no longer vanish",
        )
        .with("residual_terms", mutation_terms as f64),
    );
    r
}

pub fn verify_sl4_invariance() -> SuiteReport {
    let mut r = SuiteReport::new("sl4");
    let vac = build_vacuum_i();
    for (lam, nu) in Axis::distinct_pairs() {
        let g = lifted(LiftedKind::Mixed(lam, nu));
        let res = residual(&vac, &g, Exclusion::Enforced).expect("chronon generators");
        r.push(
            Check::new(g.name(), res.is_zero(), commutator_trace(&g)).with("residual_terms", res.num_terms() as f64),
        );
    }
    r
}

/// The full vacuum suite.
pub fn vacuum_suite() -> SuiteReport {
    let mut r = SuiteReport::new("vacuum");
    r.absorb(verify_structure());
    r.absorb(verify_translation_invariance());
    r.absorb(verify_lorentz_invariance());
    r.absorb(verify_sl4_invariance());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn vacuum_is_grade_four_wedge_of_translations() {
        let vac = build_vacuum_i();
        assert_eq!(vac.value().grade(), Some(4));
        for mu in Axis::ALL {
            assert_eq!(vac.factor(mu), &translation_generator(mu));
        }
        assert!(links_agree_on_window(Axis::X3, 3));
    }

    #[test]
    fn translations_and_rotations_annihilate() {
        let vac = build_vacuum_i();
        for mu in [Axis::X1, Axis::X4] {
            assert!(
                residual(&vac, &lifted(LiftedKind::Translation(mu)), Exclusion::Enforced)
                    .unwrap()
                    .is_zero()
            );
        }
        let j12 = lifted(LiftedKind::Lorentz(Axis::X1, Axis::X2));
        assert!(residual(&vac, &j12, Exclusion::Enforced).unwrap().is_zero());
        // slot 2 keeps −χ₁₂, slot 1 keeps +χ₂₁
        assert_eq!(surviving_coefficient(&vac, &j12, Axis::X2), ratio(-1, 3));
        assert_eq!(surviving_coefficient(&vac, &j12, Axis::X1), ratio(1, 3));
        assert!(!residual(&vac, &j12, Exclusion::Disabled).unwrap().is_zero());
    }

    #[test]
    fn suite_passes() {
        let r = vacuum_suite();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.checks.iter().filter(|c| c.name.starts_with("lorentz/J")).count(), 6);
    }
}
