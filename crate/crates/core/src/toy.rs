//! One-dimensional toy model: the remote amplitude `⟨ω|Uᵀ|α⟩`, the same
//! amplitude as a contraction of experiment and dynamics chronons, and the
//! first-order variation of the amplitude under slice-wise perturbations.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{GeneratorId, GradedExtensor};
use crate::report::{Check, SuiteReport};
use crate::scalar::{int, Rational};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Potential {
    Free,
    /// `½ m ω² x²` with unit frequency.
    Harmonic,
    /// Values of `V` at the grid points.
    Custom(Vec<f64>),
}

impl Potential {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "free" => Ok(Self::Free),
            "harmonic" => Ok(Self::Harmonic),
            other => Err(Error::Config(format!("unknown potential '{other}' (free | harmonic)"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Free => "free",
            Self::Harmonic => "harmonic",
            Self::Custom(_) => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ToyConfig {
    pub dim: usize,
    pub steps: usize,
    pub tav: f64,
    pub mass: f64,
    pub potential: Potential,
    pub alpha: CVector,
    pub omega: CVector,
}

impl ToyConfig {
    /// Normalized random source and sink drawn from `rng`.
    pub fn seeded<R: Rng + ?Sized>(dim: usize, steps: usize, potential: Potential, rng: &mut R) -> Result<Self> {
        let cfg = Self {
            dim,
            steps,
            tav: 1.0,
            mass: 1.0,
            potential,
            alpha: random_state(dim, rng),
            omega: random_state(dim, rng),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// A validated configuration whose source and sink come from a ChaCha8
    /// stream seeded with `seed`.
    pub fn from_seed(dim: usize, steps: usize, potential: Potential, tav: f64, mass: f64, seed: u64) -> Result<Self> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut cfg = Self::seeded(dim, steps, potential, &mut rng)?;
        cfg.tav = tav;
        cfg.mass = mass;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::Config(format!("dim {} < 2", self.dim)));
        }
        if !(self.tav.is_finite() && self.tav > 0.0) || !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::Config("tav and mass must be positive".into()));
        }
        if self.alpha.len() != self.dim || self.omega.len() != self.dim {
            return Err(Error::DimensionMismatch(
                self.alpha.len().max(self.omega.len()),
                self.dim,
            ));
        }
        if self.alpha.norm() == 0.0 || self.omega.norm() == 0.0 {
            return Err(Error::Config("alpha and omega must be nonzero".into()));
        }
        if let Potential::Custom(v) = &self.potential {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch(v.len(), self.dim));
            }
        }
        Ok(())
    }

    /// Grid spacing `√(2π/M)`, which makes position and momentum grids
    /// equally fine.
    pub fn dx(&self) -> f64 {
        (2.0 * PI / self.dim as f64).sqrt()
    }

    pub fn grid(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.dim).map(|j| (j as f64 - (self.dim / 2) as f64) * dx).collect()
    }

    /// `H = p²/2m + V(x)` with `p²` the spectral second derivative on the
    /// periodic grid.
    pub fn hamiltonian(&self) -> CMatrix {
        let m = self.dim;
        let dx = self.dx();
        let ks: Vec<f64> = (0..m)
            .map(|q| {
                let q = if q < m.div_ceil(2) {
                    q as f64
                } else {
                    q as f64 - m as f64
                };
                2.0 * PI * q / (m as f64 * dx)
            })
            .collect();
        let mut h = CMatrix::from_fn(m, m, |j, l| {
            let d = (j as f64 - l as f64) * dx;
            let p2: Complex64 = ks.iter().map(|k| k * k * Complex64::from_polar(1.0, k * d)).sum();
            p2 / (m as f64 * 2.0 * self.mass)
        });
        let v: Vec<f64> = match &self.potential {
            Potential::Free => vec![0.0; m],
            Potential::Harmonic => self.grid().iter().map(|x| 0.5 * self.mass * x * x).collect(),
            Potential::Custom(v) => v.clone(),
        };
        for (j, vj) in v.into_iter().enumerate() {
            h[(j, j)] += vj;
        }
        // exact Hermitian part, removing rounding asymmetry
        (&h + h.adjoint()).scale(0.5)
    }

    pub fn propagator(&self) -> CMatrix {
        evolution(&self.hamiltonian(), self.tav)
    }
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    let v = CVector::from_fn(dim, |_, _| Complex64::new(normal(rng), normal(rng)));
    let n = v.norm();
    v.unscale(n)
}

/// `exp(−iHτ)` for Hermitian `H`.
pub fn evolution(h: &CMatrix, tau: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let q = &eig.eigenvectors;
    let phases = CVector::from_iterator(
        h.nrows(),
        eig.eigenvalues.iter().map(|l| Complex64::from_polar(1.0, -l * tau)),
    );
    q * CMatrix::from_diagonal(&phases) * q.adjoint()
}

/// `d/dε exp(−i(H + εV)τ)` at `ε = 0`, from divided differences of the
/// exponential over the spectrum of `H`.
pub fn evolution_derivative(h: &CMatrix, v: &CMatrix, tau: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let q = &eig.eigenvectors;
    let lam = &eig.eigenvalues;
    let vt = q.adjoint() * v * q;
    let n = h.nrows();
    let gamma = CMatrix::from_fn(n, n, |a, b| {
        let half = (lam[a] - lam[b]) * tau / 2.0;
        let sinc = if half.abs() < 1e-8 {
            1.0 - half * half / 6.0
        } else {
            half.sin() / half
        };
        -I * tau * Complex64::from_polar(1.0, -(lam[a] + lam[b]) * tau / 2.0) * sinc
    });
    q * gamma.component_mul(&vt) * q.adjoint()
}

/// `⟨ω|Uᵀ|α⟩`.
pub fn remote_amplitude(cfg: &ToyConfig) -> Complex64 {
    let u = cfg.propagator();
    let mut psi = cfg.alpha.clone();
    for _ in 0..cfg.steps {
        psi = &u * psi;
    }
    cfg.omega.dotc(&psi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChrononKind {
    ULink,
    IdentityLink,
    Input,
    Output,
}

#[derive(Clone, Debug, PartialEq)]
enum Tensor {
    Ket(CVector),
    /// Row coefficients, already conjugated.
    Bra(CVector),
    Op(CMatrix),
    Scalar(Complex64),
}

/// A piece of the network: `|ket⟩ ⊗ M ⊗ ⟨bra|` with time labels.
#[derive(Clone, Debug, PartialEq)]
pub struct ToyChronon {
    pub kind: ChrononKind,
    pub ket: Option<usize>,
    pub bra: Option<usize>,
    data: Tensor,
}

impl ToyChronon {
    /// `U[t+1←t]`.
    pub fn u_link(t: usize, u: &CMatrix) -> Self {
        Self {
            kind: ChrononKind::ULink,
            ket: Some(t + 1),
            bra: Some(t),
            data: Tensor::Op(u.clone()),
        }
    }

    /// `1[a, b]`.
    pub fn identity_link(a: usize, b: usize, dim: usize) -> Self {
        Self {
            kind: ChrononKind::IdentityLink,
            ket: Some(a),
            bra: Some(b),
            data: Tensor::Op(CMatrix::identity(dim, dim)),
        }
    }

    /// `|α, t⟩`.
    pub fn input(t: usize, alpha: &CVector) -> Self {
        Self {
            kind: ChrononKind::Input,
            ket: Some(t),
            bra: None,
            data: Tensor::Ket(alpha.clone()),
        }
    }

    /// `⟨ω, t|`.
    pub fn output(t: usize, omega: &CVector) -> Self {
        Self {
            kind: ChrononKind::Output,
            ket: None,
            bra: Some(t),
            data: Tensor::Bra(omega.conjugate()),
        }
    }

    pub fn label(&self) -> String {
        let l = |o: Option<usize>| o.map_or("·".to_string(), |t| t.to_string());
        match self.kind {
            ChrononKind::ULink => format!("U[{}←{}]", l(self.ket), l(self.bra)),
            ChrononKind::IdentityLink => format!("1[{},{}]", l(self.ket), l(self.bra)),
            ChrononKind::Input => format!("|α,{}⟩", l(self.ket)),
            ChrononKind::Output => format!("⟨ω,{}|", l(self.bra)),
        }
    }
}

impl fmt::Display for ToyChronon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The dynamics tensor as listed chronons, with its Grassmann bookkeeping
/// over one generator per jump.
#[derive(Clone, Debug, PartialEq)]
pub struct Dynamics {
    pub chronons: Vec<ToyChronon>,
    pub word: GradedExtensor<Rational>,
}

impl Dynamics {
    pub fn grade(&self) -> usize {
        self.word.grade().unwrap_or(0)
    }

    /// The same chronons listed in another order; `order[k]` is the
    /// position in the current listing of the k-th new entry.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.chronons.len()];
        if order.len() != seen.len() {
            return Err(Error::DimensionMismatch(order.len(), seen.len()));
        }
        for &k in order {
            if k >= seen.len() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::Config(format!("{order:?} is not a permutation")));
            }
        }
        let chronons: Vec<ToyChronon> = order.iter().map(|&k| self.chronons[k].clone()).collect();
        Ok(Self {
            word: jump_word(&chronons),
            chronons,
        })
    }

    /// Sign of this listing relative to the reference order `U[T←T−1]∨…∨U[1←0]`.
    pub fn grassmann_sign(&self) -> Rational {
        let mut canonical: Vec<ToyChronon> = self.chronons.clone();
        canonical.sort_by_key(|c| std::cmp::Reverse(c.bra));
        self.word.ratio_to(&jump_word(&canonical)).unwrap_or_else(|| int(0))
    }
}

fn jump_word(chronons: &[ToyChronon]) -> GradedExtensor<Rational> {
    let gens = chronons
        .iter()
        .map(|c| GeneratorId::index(c.bra.unwrap_or(0) as u64))
        .collect();
    GradedExtensor::word(gens, int(1))
}

/// Parity of a listing of jump times relative to descending order, by
/// counting inversions.
pub fn listing_parity(times: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..times.len() {
        for j in i + 1..times.len() {
            if times[i] < times[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `E = |α,0⟩ … ⟨ω,T|` in the minimal variant, plus any identity links.
#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub chronons: Vec<ToyChronon>,
}

impl Experiment {
    pub fn with_identity_link(mut self, a: usize, b: usize, dim: usize) -> Self {
        self.chronons.push(ToyChronon::identity_link(a, b, dim));
        self
    }
}

pub fn build_experiment_and_dynamics(cfg: &ToyConfig) -> (Experiment, Dynamics) {
    let u = cfg.propagator();
    let experiment = Experiment {
        chronons: vec![
            ToyChronon::input(0, &cfg.alpha),
            ToyChronon::output(cfg.steps, &cfg.omega),
        ],
    };
    let chronons: Vec<ToyChronon> = (0..cfg.steps).rev().map(|t| ToyChronon::u_link(t, &u)).collect();
    (
        experiment,
        Dynamics {
            word: jump_word(&chronons),
            chronons,
        },
    )
}

/// Checks that every bra label meets exactly one ket label on another
/// piece, and vice versa.
pub fn check_well_posed(pieces: &[ToyChronon]) -> Result<()> {
    let kets: Vec<usize> = pieces.iter().filter_map(|p| p.ket).collect();
    let bras: Vec<usize> = pieces.iter().filter_map(|p| p.bra).collect();
    for p in pieces {
        if p.ket.is_some() && p.ket == p.bra {
            return Err(Error::Contraction(format!("{p} contracts with itself")));
        }
    }
    for &b in &bras {
        match kets.iter().filter(|&&k| k == b).count() {
            1 => {}
            0 => return Err(Error::Contraction(format!("bra at t={b} has no matching ket"))),
            n => return Err(Error::Contraction(format!("bra at t={b} matches {n} kets"))),
        }
    }
    for &k in &kets {
        match bras.iter().filter(|&&b| b == k).count() {
            1 => {}
            0 => return Err(Error::Contraction(format!("ket at t={k} has no matching bra"))),
            n => return Err(Error::Contraction(format!("ket at t={k} matches {n} bras"))),
        }
    }
    Ok(())
}

/// Contracts the pieces pairwise, bra legs in listing order, each with the
/// unique ket carrying the same time label.
pub fn contract(pieces: &[ToyChronon]) -> Result<Complex64> {
    check_well_posed(pieces)?;
    let mut work: Vec<(Option<usize>, Option<usize>, Tensor)> =
        pieces.iter().map(|p| (p.ket, p.bra, p.data.clone())).collect();
    let mut factor = Complex64::new(1.0, 0.0);
    while let Some(x) = work.iter().position(|p| p.1.is_some()) {
        let b = work[x].1.expect("has bra");
        let (xk, _, xt) = work.remove(x);
        let Some(y) = work.iter().position(|p| p.0 == Some(b)) else {
            // the loop closed on this piece
            let Tensor::Op(m) = xt else {
                return Err(Error::Contraction(format!("open bra at t={b}")));
            };
            factor *= m.trace();
            continue;
        };
        let (_, yb, yt) = work.remove(y);
        let merged = match (xt, yt) {
            (Tensor::Op(m), Tensor::Op(n)) => Tensor::Op(m * n),
            (Tensor::Op(m), Tensor::Ket(w)) => Tensor::Ket(m * w),
            (Tensor::Bra(v), Tensor::Op(n)) => Tensor::Bra(n.transpose() * v),
            (Tensor::Bra(v), Tensor::Ket(w)) => Tensor::Scalar(v.dot(&w)),
            _ => return Err(Error::Contraction("incompatible legs".into())),
        };
        work.push((xk, yb, merged));
    }
    for (k, _, t) in work {
        match (k, t) {
            (None, Tensor::Scalar(s)) => factor *= s,
            (k, _) => return Err(Error::Contraction(format!("open ket at t={k:?}"))),
        }
    }
    Ok(factor)
}

/// `⟨vac|ED|vac⟩` for D as listed, with the listing's Grassmann sign.
pub fn local_amplitude_signed(e: &Experiment, d: &Dynamics) -> Result<Complex64> {
    let pieces: Vec<ToyChronon> = e.chronons.iter().chain(&d.chronons).cloned().collect();
    let sign = crate::scalar::to_f64(&d.grassmann_sign());
    Ok(contract(&pieces)? * sign)
}

/// The amplitude, corrected for the listing order of D.
pub fn local_amplitude(e: &Experiment, d: &Dynamics) -> Result<Complex64> {
    let sign = crate::scalar::to_f64(&d.grassmann_sign());
    Ok(local_amplitude_signed(e, d)? * sign)
}

/// Which single identity links `1[a, b]`, `a, b ∈ [0, T]`, added to the
/// minimal experiment still give a well-posed contraction.
pub fn identity_link_placements(cfg: &ToyConfig) -> Vec<((usize, usize), bool)> {
    let (e, d) = build_experiment_and_dynamics(cfg);
    let mut out = Vec::new();
    for a in 0..=cfg.steps {
        for b in 0..=cfg.steps {
            let ee = e.clone().with_identity_link(a, b, cfg.dim);
            let pieces: Vec<ToyChronon> = ee.chronons.iter().chain(&d.chronons).cloned().collect();
            out.push(((a, b), check_well_posed(&pieces).is_ok()));
        }
    }
    out
}

/// Unitary change of basis applied to the whole configuration.
pub fn conjugate_config(cfg: &ToyConfig, w: &CMatrix) -> (CMatrix, CVector, CVector) {
    (w * cfg.hamiltonian() * w.adjoint(), w * &cfg.alpha, w * &cfg.omega)
}

pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let m = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(normal(rng), normal(rng)));
    m.qr().q()
}

pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let m = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(normal(rng), normal(rng)));
    (&m + m.adjoint()).scale(0.5)
}

/// `⟨ω|U_{T−1}…U_0|α⟩` with a given evolution per slice.
fn chain(alpha: &CVector, omega: &CVector, slices: &[CMatrix]) -> Complex64 {
    let mut psi = alpha.clone();
    for u in slices {
        psi = u * psi;
    }
    omega.dotc(&psi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationRow {
    pub tav: f64,
    /// `|dA/dε|` from the exact derivative of every slice.
    pub measured: f64,
    /// `|δA_pred|` from inserting `−iτ δH_t` to the left of each `U`.
    pub predicted: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationStudy {
    pub rows: Vec<VariationRow>,
    /// `residual(τ) / residual(τ/2)` for consecutive rows.
    pub ratios: Vec<f64>,
}

/// Exact `dA/dε` for `U_t → exp(−i(H + εδH_t)τ)`.
pub fn variation_measured(h: &CMatrix, alpha: &CVector, omega: &CVector, dh: &[CMatrix], tau: f64) -> Complex64 {
    let u = evolution(h, tau);
    let mut total = Complex64::new(0.0, 0.0);
    for (t, v) in dh.iter().enumerate() {
        let mut slices = vec![u.clone(); dh.len()];
        slices[t] = evolution_derivative(h, v, tau);
        total += chain(alpha, omega, &slices);
    }
    total
}

/// First-order prediction: `Σ_t ⟨ω|U…(−iτδH_t)U_t…U|α⟩`.
pub fn variation_predicted(h: &CMatrix, alpha: &CVector, omega: &CVector, dh: &[CMatrix], tau: f64) -> Complex64 {
    let u = evolution(h, tau);
    let mut total = Complex64::new(0.0, 0.0);
    for (t, v) in dh.iter().enumerate() {
        let mut slices = vec![u.clone(); dh.len()];
        slices[t] = (v * &u) * (-I * tau);
        total += chain(alpha, omega, &slices);
    }
    total
}

/// `(A(ε) − A(−ε)) / 2ε`.
pub fn variation_finite_difference(
    h: &CMatrix,
    alpha: &CVector,
    omega: &CVector,
    dh: &[CMatrix],
    tau: f64,
    eps: f64,
) -> Complex64 {
    let amp = |e: f64| {
        let slices: Vec<CMatrix> = dh.iter().map(|v| evolution(&(h + v.scale(e)), tau)).collect();
        chain(alpha, omega, &slices)
    };
    (amp(eps) - amp(-eps)) / (2.0 * eps)
}

/// Residual of the first-order prediction as `τ` is halved `halvings`
/// times, slice count fixed.
pub fn schwinger_variation(cfg: &ToyConfig, dh: &[CMatrix], tav0: f64, halvings: usize) -> VariationStudy {
    let h = cfg.hamiltonian();
    let mut rows = Vec::new();
    let mut tau = tav0;
    for _ in 0..=halvings {
        let m = variation_measured(&h, &cfg.alpha, &cfg.omega, dh, tau);
        let p = variation_predicted(&h, &cfg.alpha, &cfg.omega, dh, tau);
        rows.push(VariationRow {
            tav: tau,
            measured: m.norm(),
            predicted: p.norm(),
            residual: (m - p).norm(),
        });
        tau /= 2.0;
    }
    let ratios = rows.windows(2).map(|w| w[0].residual / w[1].residual).collect();
    VariationStudy { rows, ratios }
}

/// Starting step for the scaling study: `τ₀ ρ(H) = 1/20`, so every halving
/// stays in the small-step regime the first-order claim is about.
pub fn variation_start(h: &CMatrix) -> f64 {
    let rho = h
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, l| m.max(l.abs()));
    0.05 / rho
}

/// Grid of configurations for the equivalence check.
pub const GRID_DIMS: [usize; 4] = [4, 8, 16, 32];
pub const GRID_STEPS: [usize; 4] = [1, 2, 4, 8];
pub const TOLERANCE: f64 = 1e-10;
pub const RATIO_BAND: (f64, f64) = (3.0, 5.0);

/// One configuration as a report row.
pub fn toy_row(cfg: &ToyConfig) -> Check {
    let remote = remote_amplitude(cfg);
    let (e, d) = build_experiment_and_dynamics(cfg);
    let (local, err) = match local_amplitude(&e, &d) {
        Ok(l) => (l, (l - remote).norm()),
        Err(_) => (Complex64::new(f64::NAN, 0.0), f64::INFINITY),
    };
    Check::new(
        format!("dim{}-T{}-{}", cfg.dim, cfg.steps, cfg.potential.name()),
        err < TOLERANCE,
        format!("A_remote = {remote:.12}, A_local = {local:.12}"),
    )
    .with("dim", cfg.dim as f64)
    .with("steps", cfg.steps as f64)
    .with("abs_remote", remote.norm())
    .with("abs_local", local.norm())
    .with("error", err)
}

pub fn toy_suite(seed: u64) -> SuiteReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("toy");
    r.meta("seed", seed).meta("tolerance", TOLERANCE);
    for pot in [Potential::Free, Potential::Harmonic] {
        for &dim in &GRID_DIMS {
            for &steps in &GRID_STEPS {
                let cfg = ToyConfig::seeded(dim, steps, pot.clone(), &mut rng).expect("valid grid");
                r.push(toy_row(&cfg));
            }
        }
    }

    let cfg = ToyConfig::seeded(8, 4, Potential::Harmonic, &mut rng).expect("valid");
    let w = random_unitary(8, &mut rng);
    let (h2, a2, o2) = conjugate_config(&cfg, &w);
    let u2 = evolution(&h2, cfg.tav);
    let rotated = chain(&a2, &o2, &vec![u2; cfg.steps]);
    let err = (rotated - remote_amplitude(&cfg)).norm();
    r.push(Check::new("basis-independence", err < TOLERANCE, "random unitary change of basis").with("error", err));

    let (_, d) = build_experiment_and_dynamics(&cfg);
    let order = [2, 0, 3, 1];
    let moved = d.reordered(&order).expect("permutation");
    let times: Vec<usize> = moved.chronons.iter().map(|c| c.bra.unwrap_or(0)).collect();
    let engine = crate::scalar::to_f64(&moved.grassmann_sign());
    let (e, _) = build_experiment_and_dynamics(&cfg);
    let a0 = local_amplitude(&e, &d).expect("well posed");
    let a1 = local_amplitude(&e, &moved).expect("well posed");
    r.push(
        Check::new(
            "reordering-sign",
            engine == listing_parity(&times) as f64 && (a0 - a1).norm() < TOLERANCE,
            format!(
                "listing {times:?}: Grassmann sign {engine}, inversion parity {}",
                listing_parity(&times)
            ),
        )
        .with("sign", engine),
    );

    let placements = identity_link_placements(&ToyConfig::seeded(4, 3, Potential::Free, &mut rng).expect("valid"));
    let ok: Vec<String> = placements
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|((a, b), _)| format!("1[{a},{b}]"))
        .collect();
    r.info(
        "identity-link-placements",
        format!(
            "{} of {} single identity links keep the T=3 contraction well posed{}",
            ok.len(),
            placements.len(),
            if ok.is_empty() {
                String::new()
            } else {
                format!(": {}", ok.join(", "))
            }
        ),
    );

    let cfg = ToyConfig::seeded(8, 4, Potential::Harmonic, &mut rng).expect("valid");
    let dh: Vec<CMatrix> = (0..cfg.steps).map(|_| random_hermitian(cfg.dim, &mut rng)).collect();
    let study = schwinger_variation(&cfg, &dh, variation_start(&cfg.hamiltonian()), 3);
    let mut c = Check::new(
        "schwinger-residual-scaling",
        study.ratios.len() == 3 && study.ratios.iter().all(|x| (RATIO_BAND.0..=RATIO_BAND.1).contains(x)),
        format!("residual ratios under halving {:?}", study.ratios),
    );
    for (k, row) in study.rows.iter().enumerate() {
        c = c
            .with(format!("tav{k}"), row.tav)
            .with(format!("residual{k}"), row.residual);
    }
    for (k, x) in study.ratios.iter().enumerate() {
        c = c.with(format!("ratio{k}"), *x);
    }
    r.push(c);

    let h = cfg.hamiltonian();
    let tau = 0.05;
    let fd = variation_finite_difference(&h, &cfg.alpha, &cfg.omega, &dh, tau, 1e-5);
    let exact = variation_measured(&h, &cfg.alpha, &cfg.omega, &dh, tau);
    r.push(
        Check::new(
            "derivative-vs-finite-difference",
            (fd - exact).norm() < 1e-6,
            "central difference, ε = 1e-5",
        )
        .with("error", (fd - exact).norm()),
    );

    let commuting: Vec<CMatrix> = (0..cfg.steps).map(|t| h.scale(0.1 * (t + 1) as f64)).collect();
    let m = variation_measured(&h, &cfg.alpha, &cfg.omega, &commuting, tau);
    let p = variation_predicted(&h, &cfg.alpha, &cfg.omega, &commuting, tau);
    r.push(Check::new("commuting-variation-exact", (m - p).norm() < 1e-12, "δH_t ∝ H").with("error", (m - p).norm()));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(dim: usize, steps: usize, pot: Potential) -> ToyConfig {
        ToyConfig::seeded(dim, steps, pot, &mut ChaCha8Rng::seed_from_u64(11)).unwrap()
    }

    #[test]
    fn zero_steps_is_overlap() {
        let c = cfg(6, 0, Potential::Harmonic);
        let overlap = c.omega.dotc(&c.alpha);
        assert!((remote_amplitude(&c) - overlap).norm() < 1e-14);
        let (e, d) = build_experiment_and_dynamics(&c);
        assert_eq!(d.grade(), 0);
        assert!((local_amplitude(&e, &d).unwrap() - overlap).norm() < 1e-14);
    }

    #[test]
    fn hamiltonian_is_hermitian_and_free_ground_is_stationary() {
        let mut c = cfg(8, 5, Potential::Free);
        let h = c.hamiltonian();
        assert!((&h - h.adjoint()).norm() < 1e-12);
        let eig = h.clone().symmetric_eigen();
        let k = eig.eigenvalues.imin();
        let ground = eig.eigenvectors.column(k).into_owned();
        c.alpha = ground.clone();
        c.omega = ground;
        assert!((remote_amplitude(&c).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitarity_bound() {
        let c = cfg(8, 3, Potential::Harmonic);
        let u = c.propagator();
        assert!((&u * u.adjoint() - CMatrix::identity(8, 8)).norm() < 1e-12);
        let mut d = c.clone();
        d.omega = d.alpha.clone();
        assert!(remote_amplitude(&d).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn local_matches_remote() {
        for pot in [Potential::Free, Potential::Harmonic] {
            let c = cfg(16, 8, pot);
            let (e, d) = build_experiment_and_dynamics(&c);
            assert_eq!(d.grade(), 8);
            assert_eq!(e.chronons.len(), 2);
            assert!((local_amplitude(&e, &d).unwrap() - remote_amplitude(&c)).norm() < 1e-10);
        }
    }

    #[test]
    fn reordering_tracks_parity() {
        let c = cfg(4, 3, Potential::Free);
        let (e, d) = build_experiment_and_dynamics(&c);
        let swapped = d.reordered(&[1, 0, 2]).unwrap();
        assert_eq!(swapped.grassmann_sign(), int(-1));
        let a = local_amplitude_signed(&e, &d).unwrap();
        let b = local_amplitude_signed(&e, &swapped).unwrap();
        assert!((a + b).norm() < 1e-12);
        assert!((local_amplitude(&e, &swapped).unwrap() - a).norm() < 1e-12);
        assert!(d.reordered(&[0, 0, 1]).is_err());
    }

    #[test]
    fn malformed_networks_are_rejected() {
        let c = cfg(4, 2, Potential::Free);
        let (e, d) = build_experiment_and_dynamics(&c);
        let mut pieces: Vec<ToyChronon> = e.chronons.iter().chain(&d.chronons).cloned().collect();
        pieces.pop();
        assert!(matches!(contract(&pieces), Err(Error::Contraction(_))));
        let extra = e.with_identity_link(2, 1, 4);
        assert!(local_amplitude(&extra, &d).is_err());
    }

    #[test]
    fn variation_basics() {
        let c = cfg(6, 3, Potential::Harmonic);
        let h = c.hamiltonian();
        let zero = vec![CMatrix::zeros(6, 6); 3];
        assert_eq!(variation_measured(&h, &c.alpha, &c.omega, &zero, 0.1).norm(), 0.0);
        let commuting = vec![h.clone(); 3];
        let m = variation_measured(&h, &c.alpha, &c.omega, &commuting, 0.1);
        let p = variation_predicted(&h, &c.alpha, &c.omega, &commuting, 0.1);
        assert!((m - p).norm() < 1e-12);
    }

    #[test]
    fn suite_passes() {
        let r = toy_suite(5);
        assert!(r.passed(), "{}", r.summary());
    }
}
