//! Acceptance criteria. One PASS/FAIL line per criterion; tolerances and
//! time bounds are pinned here.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num::traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qnd_core::dipole::LiftedGenerator;
use qnd_core::exterior::Exclusion;
use qnd_core::hyperdiamond::{build_vacuum_i, residual, vacuum_suite, verify_sl4_invariance};
use qnd_core::lattice::{
    coordinate_operator, operators_equal, translation_generator, AntiEuclideanMetric, Axis, LatticePoint,
    ShiftPolyOperator,
};
use qnd_core::linalg::RatMatrix;
use qnd_core::quadrupole::{build_vacuum_ii, quadrupole_suite, QuadChronon};
use qnd_core::report::{Status, SuiteReport};
use qnd_core::scalar::{ratio, Rational};
use qnd_core::suites::{dipole_suite, DEFAULT_SEED};
use qnd_core::{network, symmetry, toy};

const SEED: u64 = DEFAULT_SEED;
const CCR_BUDGET: Duration = Duration::from_secs(1);
const VACUUM_BUDGET: Duration = Duration::from_secs(5);
const TOY_BUDGET: Duration = Duration::from_secs(30);
const ALL_BUDGET: Duration = Duration::from_secs(120);
const TOY_TOLERANCE: f64 = 1e-10;
const RATIO_LO: f64 = 3.0;
const RATIO_HI: f64 = 5.0;
const MIN_CHRONONS: f64 = 20.0;
const MIN_QUAD_TRIPLES: f64 = 50.0;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn passes(r: &SuiteReport, name: &str) -> bool {
    r.find(name).is_some_and(|c| c.status == Status::Pass)
}

fn numeric(r: &SuiteReport, name: &str, label: &str) -> Option<f64> {
    r.find(name)?.numeric.iter().find(|n| n.label == label).map(|n| n.value)
}

/// Evaluates `[p̃_μ, x^λ]` pointwise on a few lattice points without the
/// window machinery.
fn ccr_pointwise(mu: Axis, lam: Axis) -> bool {
    let c = translation_generator(mu).commutator(&coordinate_operator(lam));
    [[0, 0, 0, 0], [3, 1, 4, 1], [5, 9, 2, 6]].into_iter().all(|p| {
        let v = c.apply(&LatticePoint(p));
        let expect = if mu == lam { Rational::one() } else { Rational::zero() };
        let diag = v.get(&LatticePoint(p)).cloned().unwrap_or_else(Rational::zero);
        diag == expect && v.iter().all(|(q, x)| *q == LatticePoint(p) || x.is_zero())
    })
}

fn c1_ccr() -> Outcome {
    let t = Instant::now();
    let mut ok = 0;
    let mut pointwise = 0;
    for mu in Axis::ALL {
        for lam in Axis::ALL {
            let lhs = translation_generator(mu).commutator(&coordinate_operator(lam));
            let rhs = if mu == lam {
                ShiftPolyOperator::identity()
            } else {
                ShiftPolyOperator::zero()
            };
            ok += operators_equal(&lhs, &rhs) as usize;
            pointwise += ccr_pointwise(mu, lam) as usize;
        }
    }
    let dt = t.elapsed();
    outcome(
        ok == 16 && pointwise == 16 && dt < CCR_BUDGET,
        format!("{ok}/16 pairs, pointwise {pointwise}/16, {dt:.2?}"),
    )
}

fn c2_vacuum() -> Outcome {
    let t = Instant::now();
    let r = vacuum_suite();
    let dt = t.elapsed();
    let vac = build_vacuum_i();
    let direct = Axis::ALL
        .iter()
        .filter(|&&mu| {
            residual(&vac, &LiftedGenerator::translation(mu), Exclusion::Enforced).is_ok_and(|e| e.is_zero())
        })
        .count();
    let translations = (1..=4).filter(|i| passes(&r, &format!("translation/P{i}"))).count();
    let lorentz = ["12", "13", "14", "23", "24", "34"]
        .iter()
        .filter(|ij| passes(&r, &format!("lorentz/J{ij}")))
        .count();
    let mutation = passes(&r, "lorentz/mutation-disabled-exclusion-nonzero");
    outcome(
        translations == 4 && direct == 4 && lorentz == 6 && mutation && dt < VACUUM_BUDGET,
        format!("P {translations}/4 (direct {direct}/4), J {lorentz}/6, mutation {mutation}, {dt:.2?}"),
    )
}

fn c3_sl4() -> Outcome {
    let r = verify_sl4_invariance();
    let ok = r.checks.iter().filter(|c| c.status == Status::Pass).count();
    outcome(
        ok == 12 && r.checks.len() == 12,
        format!("{ok}/12 mixed generators annihilate the vacuum"),
    )
}

fn c4_metric() -> Outcome {
    let g = AntiEuclideanMetric::new();
    let fixture = RatMatrix::from_fn(4, 4, |i, j| if i == j { ratio(-2, 3) } else { ratio(1, 3) });
    let upper = RatMatrix::from_fn(4, 4, |i, j| if i == j { Rational::zero() } else { Rational::one() });
    let inverse = g.upper() * g.lower() == RatMatrix::identity(4) && g.lower() * g.upper() == RatMatrix::identity(4);
    let ok = *g.lower() == fixture && *g.upper() == upper && inverse && &upper * &fixture == RatMatrix::identity(4);
    outcome(
        ok,
        format!(
            "lower matches −2/3, 1/3 fixture: {}; inverse exact: {inverse}",
            *g.lower() == fixture
        ),
    )
}

fn c5_lifted() -> Outcome {
    let r = dipole_suite(SEED);
    let n = r.meta.get("random_chronons").and_then(|v| v.as_f64()).unwrap_or(0.0);
    let ccr = passes(&r, "lifted-ccr");
    let spin = passes(&r, "spin-commutes-with-X");
    outcome(
        ccr && spin && n >= MIN_CHRONONS,
        format!("{n} random chronons; lifted CCR {ccr}, [S̃, X] = 0 {spin}"),
    )
}

fn c6_quadrupole() -> Outcome {
    let r = quadrupole_suite(SEED);
    let triples = numeric(&r, "serial-associative", "cases")
        .unwrap_or(0.0)
        .min(numeric(&r, "parallel-associative", "cases").unwrap_or(0.0));
    let assoc = passes(&r, "serial-associative") && passes(&r, "parallel-associative");
    let witnesses = ["parallel-noncommutative-witness", "serial-ne-parallel-witness"]
        .iter()
        .all(|w| passes(&r, w) && r.find(w).is_some_and(|c| c.detail.starts_with("a = ")));

    // independent recheck of the vacuum coefficients against χ^{νμ} = 1 − δ
    let vac = build_vacuum_ii(3).expect("window");
    let coeffs = Axis::ALL.iter().all(|&nu| {
        Axis::ALL.iter().all(|&mu| {
            let expect = if nu == mu { Rational::zero() } else { Rational::one() };
            vac.recovered_coefficient(nu, mu) == expect
        })
    });

    // independent associativity sample at d = 3
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa55);
    let sample = (0..5).all(|_| {
        let (a, b, c) = (
            QuadChronon::random(3, &mut rng),
            QuadChronon::random(3, &mut rng),
            QuadChronon::random(3, &mut rng),
        );
        a.serial(&b).unwrap().serial(&c).unwrap() == a.serial(&b.serial(&c).unwrap()).unwrap()
            && a.parallel(&b).unwrap().parallel(&c).unwrap() == a.parallel(&b.parallel(&c).unwrap()).unwrap()
    });
    outcome(
        assoc && triples >= MIN_QUAD_TRIPLES && witnesses && coeffs && passes(&r, "vacuum-ii-coefficients") && sample,
        format!("{triples} triples per product, witnesses stored {witnesses}, vacuum II coefficients {coeffs}"),
    )
}

fn c7_invariants() -> Outcome {
    let r = network::invariants_suite(SEED);
    let names = [
        "N(1)-eigenvalue-is-grade",
        "N(1)-matches-oracle",
        "N(2)-matches-oracle",
        "N(3)-matches-oracle",
        "N(1)-commutes-with-transport",
    ];
    let ok: Vec<&str> = names.iter().copied().filter(|n| passes(&r, n)).collect();
    let transports = numeric(&r, "N(1)-commutes-with-transport", "cases").unwrap_or(0.0);
    outcome(
        ok.len() == names.len() && transports >= 20.0,
        format!("{}/{} checks, {transports} transports", ok.len(), names.len()),
    )
}

fn c8_exchange() -> Outcome {
    let r = network::exchange_suite();
    let names = ["within-chronon", "across-chronon", "level-3-factor-swap"];
    let ok = names.iter().filter(|n| passes(&r, n)).count();
    let overlap = numeric(&r, "across-chronon", "self_overlap");
    outcome(
        ok == 3 && overlap == Some(0.0),
        format!("{ok}/3, across-chronon self-overlap {overlap:?}"),
    )
}

fn c9_toy() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut rows = 0;
    for pot in [toy::Potential::Free, toy::Potential::Harmonic] {
        for dim in [4, 8, 16, 32] {
            for steps in [1, 2, 4, 8] {
                let cfg = toy::ToyConfig::seeded(dim, steps, pot.clone(), &mut rng).expect("valid");
                let remote = toy::remote_amplitude(&cfg);
                let (e, d) = toy::build_experiment_and_dynamics(&cfg);
                let local = toy::local_amplitude(&e, &d).expect("well posed");
                worst = worst.max((local - remote).norm());
                rows += 1;
            }
        }
    }
    let dt = t.elapsed();
    outcome(
        rows == 32 && worst < TOY_TOLERANCE && dt < TOY_BUDGET,
        format!("{rows} configurations, max |ΔA| = {worst:.2e}, {dt:.2?}"),
    )
}

fn c10_schwinger() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cfg = toy::ToyConfig::seeded(8, 4, toy::Potential::Harmonic, &mut rng).expect("valid");
    let dh: Vec<toy::CMatrix> = (0..cfg.steps)
        .map(|_| toy::random_hermitian(cfg.dim, &mut rng))
        .collect();
    let study = toy::schwinger_variation(&cfg, &dh, toy::variation_start(&cfg.hamiltonian()), 3);
    let in_band = study.ratios.len() == 3 && study.ratios.iter().all(|x| (RATIO_LO..=RATIO_HI).contains(x));
    let suite = toy::toy_suite(SEED);
    let ok = in_band && passes(&suite, "schwinger-residual-scaling");
    outcome(
        ok,
        format!(
            "ratios {:?}",
            study.ratios.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>()
        ),
    )
}

fn c11_s4() -> Outcome {
    let r = symmetry::s4_suite(SEED, true);
    let bijective = (0..4).all(|i| passes(&r, &format!("factorization-bijective-{i}")));
    let counted = symmetry::Permutation::all()
        .into_iter()
        .filter(|&g| symmetry::galois_factorize(g, &symmetry::SubgroupChoice::DEFAULT).is_ok_and(|c| c.product() == g))
        .count();
    let tetrad = symmetry::NullTetrad::tetrahedral();
    let classes: Vec<_> = symmetry::Permutation::all()
        .into_iter()
        .map(|g| symmetry::classify_lorentz(g, &tetrad).expect("lorentz"))
        .collect();
    let proper = classes
        .iter()
        .filter(|c| c.handedness == symmetry::Handedness::Proper)
        .count();
    let metric = classes.iter().all(|c| c.metric_error < 1e-10);
    let rest = [
        "serial-commute",
        "parallel-noncommutative",
        "matrix-algebra-N2",
        "matrix-algebra-N3",
    ]
    .iter()
    .all(|n| passes(&r, n));
    outcome(
        bijective && counted == 24 && proper == 12 && classes.len() == 24 && metric && rest,
        format!("bijection {counted}/24, proper {proper}/24, metric preserved {metric}, algebra checks {rest}"),
    )
}

fn run_all() -> (Vec<u8>, Option<i32>, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qnd"))
        .args(["--seed", &SEED.to_string(), "all"])
        .env_remove("QND_SEED")
        .output()
        .expect("spawn qnd");
    (out.stdout, out.status.code(), t.elapsed())
}

fn c12_all() -> Outcome {
    let (a, code_a, dt_a) = run_all();
    let (b, code_b, dt_b) = run_all();
    let same = a == b && !a.is_empty();
    let ok = same && code_a == Some(0) && code_b == Some(0) && dt_a.max(dt_b) < ALL_BUDGET;
    outcome(
        ok,
        format!("byte-identical {same}, exit {code_a:?}/{code_b:?}, {dt_a:.1?} / {dt_b:.1?}"),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("exact-ccr", c1_ccr),
        ("hyperdiamond-invariance", c2_vacuum),
        ("sl4-invariance", c3_sl4),
        ("metric", c4_metric),
        ("lifted-structure", c5_lifted),
        ("quadrupole", c6_quadrupole),
        ("invariants", c7_invariants),
        ("parastatistics", c8_exchange),
        ("toy-equivalence", c9_toy),
        ("schwinger-variation", c10_schwinger),
        ("s4", c11_s4),
        ("deterministic-all", c12_all),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        // written to the raw handle so the lines survive test output capture
        let _ = writeln!(
            std::io::stderr(),
            "{} {:>2} {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        if !o.ok {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
