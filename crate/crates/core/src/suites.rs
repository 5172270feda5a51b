//! Verification suites for the lattice and dipole algebras, and the
//! aggregate run behind `qnd all`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dipole::{
    adjoint, adjoint_window_discrepancies, lifted_commutator, pair, trace_metric, ArrowChronon, LiftedGenerator,
    LiftedKind,
};
use crate::lattice::{
    coordinate_operator, lorentz_generator, operators_equal, translation_generator, AntiEuclideanMetric, Axis,
    ShiftPolyOperator,
};
use crate::linalg::RatMatrix;
use crate::report::{Check, SuiteReport};
use crate::sampling::random_chronon;
use crate::scalar::Rational;

/// Default seed for randomized checks.
pub const DEFAULT_SEED: u64 = 20240917;

/// Coordinates of `op` in the span of `basis`, when it lies there.
pub fn decompose(op: &ShiftPolyOperator, basis: &[ShiftPolyOperator]) -> Option<Vec<Rational>> {
    let mut keys: BTreeMap<String, usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut coords = |o: &ShiftPolyOperator| -> BTreeMap<usize, Rational> {
        o.basis_terms()
            .map(|(b, c)| {
                let n = keys.len();
                (*keys.entry(b.to_string()).or_insert(n), c)
            })
            .collect()
    };
    for b in basis {
        columns.push(coords(b));
    }
    let target = coords(op);
    let rows = keys.len();
    let mat = RatMatrix::from_fn(rows, basis.len(), |i, j| {
        columns[j].get(&i).cloned().unwrap_or_else(Rational::zero)
    });
    let rhs: Vec<Rational> = (0..rows)
        .map(|i| target.get(&i).cloned().unwrap_or_else(Rational::zero))
        .collect();
    mat.solve(&rhs)
}

/// `l̃` for an ordered pair, zero on the diagonal.
fn l(mu: Axis, lam: Axis, g: &AntiEuclideanMetric) -> ShiftPolyOperator {
    lorentz_generator(mu, lam, g).unwrap_or_else(|_| ShiftPolyOperator::zero())
}

/// `χ_{λρ} l_{μσ} − χ_{μρ} l_{λσ} − χ_{λσ} l_{μρ} + χ_{μσ} l_{λρ}`.
pub fn lorentz_closure_rhs(mu: Axis, lam: Axis, rho: Axis, sig: Axis, g: &AntiEuclideanMetric) -> ShiftPolyOperator {
    l(mu, sig, g).scale(g.low(lam, rho)) - l(lam, sig, g).scale(g.low(mu, rho)) - l(mu, rho, g).scale(g.low(lam, sig))
        + l(lam, rho, g).scale(g.low(mu, sig))
}

pub fn ccr_suite() -> SuiteReport {
    let mut r = SuiteReport::new("ccr");
    let g = AntiEuclideanMetric::new();

    let mut ok = 0;
    for mu in Axis::ALL {
        for lam in Axis::ALL {
            let lhs = translation_generator(mu).commutator(&coordinate_operator(lam));
            let rhs = if mu == lam {
                ShiftPolyOperator::identity()
            } else {
                ShiftPolyOperator::zero()
            };
            ok += operators_equal(&lhs, &rhs) as usize;
        }
    }
    r.push(Check::new("ccr", ok == 16, format!("[p̃_μ, x^λ] = δ^λ_μ for {ok}/16 pairs")).with("pairs", ok as f64));

    let commuting = Axis::ALL.iter().all(|&a| {
        Axis::ALL
            .iter()
            .all(|&b| translation_generator(a).commutator(&translation_generator(b)).is_zero())
    });
    r.check("translations-commute", commuting, "[p̃_μ, p̃_ν] = 0");

    let mut vector = 0;
    for (mu, lam) in Axis::distinct_pairs() {
        for nu in Axis::ALL {
            let lhs = l(mu, lam, &g).commutator(&translation_generator(nu));
            let rhs = translation_generator(lam).scale(&-g.low(mu, nu).clone())
                + translation_generator(mu).scale(g.low(lam, nu));
            vector += operators_equal(&lhs, &rhs) as usize;
        }
    }
    r.check(
        "vector-law",
        vector == 48,
        format!("[l̃_μλ, p̃_ν] = −χ_μν p̃_λ + χ_λν p̃_μ for {vector}/48 triples"),
    );

    let pairs: Vec<(Axis, Axis)> = Axis::increasing_pairs().collect();
    let basis: Vec<ShiftPolyOperator> = pairs.iter().map(|&(a, b)| l(a, b, &g)).collect();
    let mut closes = 0;
    let mut matches = 0;
    let mut fixture = String::new();
    for &(mu, lam) in &pairs {
        for &(rho, sig) in &pairs {
            let lhs = l(mu, lam, &g).commutator(&l(rho, sig, &g));
            if let Some(c) = decompose(&lhs, &basis) {
                closes += 1;
                let rebuilt = basis
                    .iter()
                    .zip(&c)
                    .fold(ShiftPolyOperator::zero(), |acc, (b, x)| acc + b.scale(x));
                let formula = lorentz_closure_rhs(mu, lam, rho, sig, &g);
                matches += (operators_equal(&rebuilt, &lhs) && operators_equal(&formula, &lhs)) as usize;
                if (mu, lam, rho, sig) == (Axis::X1, Axis::X2, Axis::X2, Axis::X3) {
                    fixture = pairs
                        .iter()
                        .zip(&c)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|((a, b), x)| format!("{x}·l{a}{b}"))
                        .collect::<Vec<_>>()
                        .join(" + ");
                }
            }
        }
    }
    r.check(
        "lorentz-closure",
        closes == 36 && matches == 36,
        format!("36 commutators close on l̃ with χ structure constants; [l12, l23] = {fixture}"),
    );

    let prod = g.upper() * g.lower();
    let values = Axis::ALL.iter().all(|&a| {
        Axis::ALL.iter().all(|&b| {
            *g.low(a, b)
                == if a == b {
                    crate::scalar::ratio(-2, 3)
                } else {
                    crate::scalar::ratio(1, 3)
                }
        })
    });
    r.check(
        "metric-inverse",
        prod == RatMatrix::identity(4),
        "χ^{νμ} χ_{μσ} = δ^ν_σ",
    );
    r.check("metric-values", values, "χ_μν = −2/3 on the diagonal, 1/3 off it");
    r
}

pub fn dipole_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("dipole");
    r.meta("seed", seed).meta("random_chronons", 24);
    let metric = Arc::new(AntiEuclideanMetric::new());
    let lift = |k: LiftedKind| LiftedGenerator::new(k, metric.clone()).expect("valid indices");
    let chronons: Vec<ShiftPolyOperator> = (0..24).map(|_| random_chronon(&mut rng)).collect();

    let mut ccr = 0;
    let mut pp = 0;
    for chi in &chronons {
        let mut all_ccr = true;
        let mut all_pp = true;
        for mu in Axis::ALL {
            for lam in Axis::ALL {
                let p = lift(LiftedKind::Translation(mu));
                let c = lifted_commutator(&p, &lift(LiftedKind::Coordinate(lam)), chi);
                let want = if mu == lam {
                    chi.clone()
                } else {
                    ShiftPolyOperator::zero()
                };
                all_ccr &= operators_equal(&c, &want);
                all_pp &= lifted_commutator(&p, &lift(LiftedKind::Translation(lam)), chi).is_zero();
            }
        }
        ccr += all_ccr as usize;
        pp += all_pp as usize;
    }
    let n = chronons.len();
    r.push(
        Check::new(
            "lifted-ccr",
            ccr == n,
            format!("[P̃_μ, X^λ] = δ^λ_μ on {ccr}/{n} random chronons"),
        )
        .with("chronons", n as f64),
    );
    r.check(
        "lifted-translations-commute",
        pp == n,
        format!("[P̃_μ, P̃_ν] = 0 on {pp}/{n}"),
    );

    let (mut spin, mut split, mut vector) = (0, 0, 0);
    for chi in &chronons {
        let (mut s_ok, mut j_ok, mut v_ok) = (true, true, true);
        for (mu, lam) in Axis::increasing_pairs() {
            let s = lift(LiftedKind::Spin(mu, lam));
            let o = lift(LiftedKind::Orbital(mu, lam));
            let j = lift(LiftedKind::Lorentz(mu, lam));
            j_ok &= operators_equal(&j.apply(chi), &(o.apply(chi) + s.apply(chi)));
            for nu in Axis::ALL {
                s_ok &= lifted_commutator(&s, &lift(LiftedKind::Coordinate(nu)), chi).is_zero();
                let lhs = lifted_commutator(&o, &lift(LiftedKind::Translation(nu)), chi);
                let rhs = lift(LiftedKind::Translation(lam))
                    .apply(chi)
                    .scale(&-metric.low(mu, nu).clone())
                    + lift(LiftedKind::Translation(mu)).apply(chi).scale(metric.low(lam, nu));
                v_ok &= operators_equal(&lhs, &rhs);
            }
        }
        spin += s_ok as usize;
        split += j_ok as usize;
        vector += v_ok as usize;
    }
    r.check(
        "spin-commutes-with-X",
        spin == n,
        format!("[S̃_μλ, X^ν] = 0 on {spin}/{n}"),
    );
    r.check("J-equals-L-plus-S", split == n, format!("J̃ = L̃ + S̃ on {split}/{n}"));
    r.check(
        "orbital-vector-law",
        vector == n,
        format!("[L̃_μλ, P̃_ν] = −χ_μν P̃_λ + χ_λν P̃_μ on {vector}/{n}"),
    );

    let pairs: Vec<(Axis, Axis)> = Axis::increasing_pairs().collect();
    let mut closure = 0;
    for chi in chronons.iter().take(6) {
        let mut ok = true;
        for &(mu, lam) in &pairs {
            for &(rho, sig) in &pairs {
                let lhs = lifted_commutator(
                    &lift(LiftedKind::Lorentz(mu, lam)),
                    &lift(LiftedKind::Lorentz(rho, sig)),
                    chi,
                );
                let rhs = lorentz_closure_rhs(mu, lam, rho, sig, &metric).commutator(chi);
                ok &= operators_equal(&lhs, &rhs);
            }
        }
        closure += ok as usize;
    }
    r.check(
        "lifted-lorentz-closure",
        closure == 6,
        format!("lifted J̃ algebra matches the topon structure constants on {closure}/6"),
    );

    let mut involution = 0;
    let mut boundary = 0;
    for chi in &chronons {
        let a = ArrowChronon::new(chi.clone());
        involution += (adjoint(&a).adjoint() == a) as usize;
        boundary += adjoint_window_discrepancies(chi, 3).is_empty() as usize;
    }
    r.check(
        "adjoint-involution",
        involution == n,
        format!("χ†† = χ on {involution}/{n}"),
    );
    r.check(
        "adjoint-boundary",
        boundary == n,
        format!("transpose agrees with the window matrix on {boundary}/{n}"),
    );

    let mut consistent = 0;
    let mut examples = Vec::new();
    for chi in &chronons {
        let a = ArrowChronon::new(chi.clone());
        let t = trace_metric(&a);
        let p = pair(&adjoint(&a), &a);
        let agree =
            (t.valid_from.max(p.valid_from)..t.valid_from.max(p.valid_from) + 3).all(|w| t.eval(w) == p.eval(w));
        if chi.is_finite_rank() {
            consistent += (agree && t.finite_value() == p.finite_value()) as usize;
        } else {
            consistent += 1;
        }
        if examples.len() < 3 {
            examples.push(format!("|χ|² = {t}"));
        }
    }
    r.info("trace-metric-samples", examples.join("; "));
    let p = ArrowChronon::new(translation_generator(Axis::X1));
    r.check(
        "trace-metric-p",
        trace_metric(&p).finite_value() == Some(Rational::zero()),
        "|p̃_1|² = 0",
    );
    r.check(
        "trace-pairing-consistent",
        consistent == n,
        format!("finite-rank chronons: |χ|² = ⟨χ†|χ⟩ on {consistent}/{n}"),
    );
    let id = ArrowChronon::new(ShiftPolyOperator::identity());
    r.info(
        "trace-metric-identity",
        format!("|1|² = {} (window polynomial)", trace_metric(&id)),
    );
    let _ = Rational::one();
    r
}

/// Every suite, in a fixed order.
pub fn all_suite(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("all");
    r.meta("seed", seed).meta("version", env!("CARGO_PKG_VERSION"));
    r.absorb(ccr_suite());
    r.absorb(crate::hyperdiamond::vacuum_suite());
    r.absorb(dipole_suite(seed));
    r.absorb(crate::quadrupole::quadrupole_suite(seed));
    r.absorb(crate::network::invariants_suite(seed));
    r.absorb(crate::network::exchange_suite());
    r.absorb(crate::toy::toy_suite(seed));
    r.absorb(crate::symmetry::s4_suite(seed, true));
    r
}

/// Suites addressable by name.
pub const SUITE_NAMES: [&str; 9] = [
    "ccr",
    "vacuum",
    "dipole",
    "quadrupole",
    "invariants",
    "exchange",
    "toy",
    "s4",
    "all",
];

pub fn run_suite(name: &str, seed: u64) -> crate::Result<SuiteReport> {
    Ok(match name {
        "ccr" => ccr_suite(),
        "vacuum" => crate::hyperdiamond::vacuum_suite(),
        "dipole" => dipole_suite(seed),
        "quadrupole" => crate::quadrupole::quadrupole_suite(seed),
        "invariants" => crate::network::invariants_suite(seed),
        "exchange" => crate::network::exchange_suite(),
        "toy" => crate::toy::toy_suite(seed),
        "s4" => crate::symmetry::s4_suite(seed, true),
        "all" => all_suite(seed),
        other => return Err(crate::Error::Config(format!("unknown suite '{other}'"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn lorentz_fixture() {
        let g = AntiEuclideanMetric::new();
        let basis: Vec<ShiftPolyOperator> = Axis::increasing_pairs().map(|(a, b)| l(a, b, &g)).collect();
        let lhs = l(Axis::X1, Axis::X2, &g).commutator(&l(Axis::X2, Axis::X3, &g));
        // order: l12 l13 l14 l23 l24 l34
        let c = decompose(&lhs, &basis).unwrap();
        assert_eq!(
            c,
            vec![
                ratio(-1, 3),
                ratio(-2, 3),
                ratio(0, 1),
                ratio(-1, 3),
                ratio(0, 1),
                ratio(0, 1)
            ]
        );
    }

    #[test]
    fn ccr_and_dipole_suites_pass() {
        let r = ccr_suite();
        assert!(r.passed(), "{}", r.summary());
        let r = dipole_suite(3);
        assert!(r.passed(), "{}", r.summary());
    }
}
