//! Quadrupole chronons `χ^n_m_k^l` with serial and parallel products, the
//! two traces, GL(T) transport and the candidate vacuum II.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{AntiEuclideanMetric, Axis, LatticePoint};
use crate::linalg::RatMatrix;
use crate::report::SuiteReport;
use crate::sampling::small_rational;
use crate::scalar::Rational;

pub type QuadIndex = [usize; 4];

/// Largest dimension stored densely.
pub const DENSE_MAX: usize = 4;

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    Dense(Vec<Rational>),
    Sparse(BTreeMap<QuadIndex, Rational>),
}

/// A four-index chronon `χ^n_m_k^l`, all indices in `[0, d)`. Index order
/// in [`QuadIndex`] is `[n, m, k, l]`.
#[derive(Clone)]
pub struct QuadChronon {
    dim: usize,
    data: Storage,
}

impl QuadChronon {
    pub fn zero(dim: usize) -> Self {
        let data = if dim <= DENSE_MAX {
            Storage::Dense(vec![Rational::zero(); dim.pow(4)])
        } else {
            Storage::Sparse(BTreeMap::new())
        };
        Self { dim, data }
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (QuadIndex, Rational)>) -> Result<Self> {
        let mut q = Self::zero(dim);
        for (idx, v) in entries {
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::DimensionMismatch(bad, dim));
            }
            let cur = q.get(idx);
            q.set(idx, cur + v);
        }
        Ok(q)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(QuadIndex) -> Rational) -> Self {
        let mut q = Self::zero(dim);
        for idx in all_indices(dim) {
            q.set(idx, f(idx));
        }
        q
    }

    /// The basis chronon with a single unit entry.
    pub fn basis(dim: usize, idx: QuadIndex) -> Self {
        Self::from_entries(dim, [(idx, Rational::one())]).expect("index in range")
    }

    /// `δ^n_k δ_m^l`, the unit of both products.
    pub fn unit(dim: usize) -> Self {
        Self::from_fn(dim, |[n, m, k, l]| {
            if n == k && m == l {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        Self::from_fn(dim, |_| {
            if rng.random_bool(0.3) {
                Rational::zero()
            } else {
                small_rational(rng)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.data, Storage::Dense(_))
    }

    fn offset(&self, [n, m, k, l]: QuadIndex) -> usize {
        ((n * self.dim + m) * self.dim + k) * self.dim + l
    }

    pub fn get(&self, idx: QuadIndex) -> Rational {
        match &self.data {
            Storage::Dense(v) => v[self.offset(idx)].clone(),
            Storage::Sparse(map) => map.get(&idx).cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn set(&mut self, idx: QuadIndex, value: Rational) {
        let off = self.offset(idx);
        match &mut self.data {
            Storage::Dense(v) => v[off] = value,
            Storage::Sparse(map) => {
                if value.is_zero() {
                    map.remove(&idx);
                } else {
                    map.insert(idx, value);
                }
            }
        }
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> Vec<(QuadIndex, Rational)> {
        match &self.data {
            Storage::Dense(v) => all_indices(self.dim)
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
            Storage::Sparse(map) => map.iter().map(|(i, x)| (*i, x.clone())).collect(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries().len()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_entries(self.dim, self.entries().into_iter().map(|(i, x)| (i, x * c))).expect("same dim")
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Self::from_entries(self.dim, self.entries().into_iter().chain(other.entries()))
    }

    /// `(a·b)^n_m_k^l = Σ_{r,s} a^n_m_r^s b^r_s_k^l`.
    pub fn serial(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut by_rs: BTreeMap<(usize, usize), Vec<Slice>> = BTreeMap::new();
        for ([r, s, k, l], v) in other.entries() {
            by_rs.entry((r, s)).or_default().push((k, l, v));
        }
        let mut out = Vec::new();
        for ([n, m, r, s], a) in self.entries() {
            for (k, l, b) in by_rs.get(&(r, s)).into_iter().flatten() {
                out.push(([n, m, *k, *l], &a * b));
            }
        }
        Self::from_entries(self.dim, out)
    }

    /// `(a∘b)^n_m_k^l = Σ_{r,s} a^n_s_r^l b^r_m_k^s`.
    pub fn parallel(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut by_rs: BTreeMap<(usize, usize), Vec<Slice>> = BTreeMap::new();
        for ([r, m, k, s], v) in other.entries() {
            by_rs.entry((r, s)).or_default().push((m, k, v));
        }
        let mut out = Vec::new();
        for ([n, s, r, l], a) in self.entries() {
            for (m, k, b) in by_rs.get(&(r, s)).into_iter().flatten() {
                out.push(([n, *m, *k, l], &a * b));
            }
        }
        Self::from_entries(self.dim, out)
    }

    /// `tr_o χ = χ^n_m_n^m`.
    pub fn trace_serial(&self) -> Rational {
        self.entries()
            .into_iter()
            .filter(|([n, m, k, l], _)| n == k && m == l)
            .fold(Rational::zero(), |acc, (_, v)| acc + v)
    }

    /// `tr χ = χ^n_n_k^k`.
    pub fn trace_parallel(&self) -> Rational {
        self.entries()
            .into_iter()
            .filter(|([n, m, k, l], _)| n == m && k == l)
            .fold(Rational::zero(), |acc, (_, v)| acc + v)
    }

    /// Matrix with rows `(n, m)` and columns `(k, l)`; the serial product
    /// is its matrix product.
    pub fn serial_matrix(&self) -> RatMatrix {
        let d = self.dim;
        RatMatrix::from_fn(d * d, d * d, |i, j| self.get([i / d, i % d, j / d, j % d]))
    }

    pub fn from_serial_matrix(dim: usize, mat: &RatMatrix) -> Self {
        Self::from_fn(dim, |[n, m, k, l]| mat[(n * dim + m, k * dim + l)].clone())
    }

    /// Matrix with rows `(n, l)` and columns `(k, m)`; the parallel product
    /// is its matrix product.
    pub fn parallel_matrix(&self) -> RatMatrix {
        let d = self.dim;
        RatMatrix::from_fn(d * d, d * d, |i, j| self.get([i / d, j % d, j / d, i % d]))
    }

    pub fn from_parallel_matrix(dim: usize, mat: &RatMatrix) -> Self {
        Self::from_fn(dim, |[n, m, k, l]| mat[(n * dim + l, k * dim + m)].clone())
    }

    /// Tensor transport under `g ∈ GL(T)`: upper indices `n, l` transform
    /// with `g`, lower indices `m, k` with `g⁻¹`.
    pub fn gl_transform(&self, g: &RatMatrix) -> Result<Self> {
        if g.rows() != self.dim || !g.is_square() {
            return Err(Error::DimensionMismatch(g.rows(), self.dim));
        }
        let gi = g.inverse()?;
        let d = self.dim;
        let mut out = Vec::new();
        for ([a, b, c, e], v) in self.entries() {
            for n in 0..d {
                for m in 0..d {
                    let nm = &g[(n, a)] * &gi[(b, m)];
                    if nm.is_zero() {
                        continue;
                    }
                    for k in 0..d {
                        for l in 0..d {
                            let w = &gi[(c, k)] * &g[(l, e)];
                            if !w.is_zero() {
                                out.push(([n, m, k, l], &v * &nm * w));
                            }
                        }
                    }
                }
            }
        }
        Self::from_entries(d, out)
    }
}

impl PartialEq for QuadChronon {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries() == other.entries()
    }
}

impl Eq for QuadChronon {}

impl fmt::Debug for QuadChronon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadChronon(d={}, ", self.dim)?;
        f.debug_map()
            .entries(self.entries().iter().map(|(i, v)| (i, v.to_string())))
            .finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for QuadChronon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .entries()
            .iter()
            .map(|([n, m, k, l], v)| format!("{v}·[{n}{m}|{k}{l}]"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn witness_detail(w: &Option<(QuadChronon, QuadChronon)>) -> String {
    match w {
        Some((a, b)) => format!("a = {a}; b = {b}"),
        None => "no witness in 1000 draws".into(),
    }
}

/// Free index pair of one factor with its value, grouped by the contracted pair.
type Slice = (usize, usize, Rational);

pub fn all_indices(dim: usize) -> impl Iterator<Item = QuadIndex> {
    (0..dim.pow(4)).map(move |i| [i / (dim * dim * dim), (i / (dim * dim)) % dim, (i / dim) % dim, i % dim])
}

/// Solves `e·χ = χ·e = χ` for all χ as a linear system in the `d⁴` entries
/// of `e`, using only the product as a black box.
pub fn solve_unit(dim: usize, product: fn(&QuadChronon, &QuadChronon) -> Result<QuadChronon>) -> Option<QuadChronon> {
    let idx: Vec<QuadIndex> = all_indices(dim).collect();
    let size = idx.len();
    // column u holds the products of basis element u with every basis chronon
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs = Vec::new();
    let mut images_left = Vec::with_capacity(size);
    let mut images_right = Vec::with_capacity(size);
    for &u in &idx {
        let eu = QuadChronon::basis(dim, u);
        let left: Vec<QuadChronon> = idx
            .iter()
            .map(|&b| product(&eu, &QuadChronon::basis(dim, b)).ok())
            .collect::<Option<_>>()?;
        let right: Vec<QuadChronon> = idx
            .iter()
            .map(|&b| product(&QuadChronon::basis(dim, b), &eu).ok())
            .collect::<Option<_>>()?;
        images_left.push(left);
        images_right.push(right);
    }
    for (bi, &b) in idx.iter().enumerate() {
        for &out in &idx {
            let target = if out == b { Rational::one() } else { Rational::zero() };
            for images in [&images_left, &images_right] {
                rows.push((0..size).map(|u| images[u][bi].get(out)).collect());
                rhs.push(target.clone());
            }
        }
    }
    let mat = RatMatrix::from_fn(rows.len(), size, |i, j| rows[i][j].clone());
    let sol = mat.solve(&rhs)?;
    Some(QuadChronon::from_entries(dim, idx.into_iter().zip(sol)).expect("in range"))
}

/// Searches seeded random pairs for `a, b` with `f(a, b) ≠ g(a, b)`.
pub fn find_witness<R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
    f: impl Fn(&QuadChronon, &QuadChronon) -> QuadChronon,
    g: impl Fn(&QuadChronon, &QuadChronon) -> QuadChronon,
) -> Option<(QuadChronon, QuadChronon)> {
    (0..1000).find_map(|_| {
        let a = QuadChronon::random(dim, rng);
        let b = QuadChronon::random(dim, rng);
        (f(&a, &b) != g(&a, &b)).then_some((a, b))
    })
}

/// Which factor of `|p̃_ν⟩⊗|p̃_μ⟩` carries the head arrow of the double
/// arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    LeftIsHead,
}

/// `χ^{νμ}|p̃_ν⟩⊗|p̃_μ⟩` with `p̃` represented on the window `[0, d)⁴`.
#[derive(Clone, Debug)]
pub struct VacuumII {
    pub coefficients: RatMatrix,
    pub window: usize,
    pub orientation: Orientation,
    tensor: QuadChronon,
}

/// Linear index of a window point.
fn linear(p: &LatticePoint, w: usize) -> usize {
    p.0.iter().fold(0, |acc, &c| acc * w + c as usize)
}

/// Entries `(n, m)` of `p̃_ν` on the window: `⟨n|p̃_ν|m⟩ = 1` for `n = m − 1_ν`.
pub fn translation_window_matrix(nu: Axis, w: usize) -> Vec<(usize, usize)> {
    LatticePoint::window(w as u32)
        .filter(|m| m.0[nu.index()] > 0)
        .map(|m| {
            let mut n = m;
            n.0[nu.index()] -= 1;
            (linear(&n, w), linear(&m, w))
        })
        .collect()
}

pub fn build_vacuum_ii(window: usize) -> Result<VacuumII> {
    if window < 2 {
        return Err(Error::Domain(format!("window {window} < 2")));
    }
    let metric = AntiEuclideanMetric::new();
    let dim = window.pow(4);
    let mut entries = Vec::new();
    for nu in Axis::ALL {
        let left = translation_window_matrix(nu, window);
        for mu in Axis::ALL {
            let c = metric.up(nu, mu);
            if c.is_zero() {
                continue;
            }
            let right = translation_window_matrix(mu, window);
            for &(n, m) in &left {
                // right factor indexed (l, k): upper l, lower k
                for &(l, k) in &right {
                    entries.push(([n, m, k, l], c.clone()));
                }
            }
        }
    }
    Ok(VacuumII {
        coefficients: metric.upper().clone(),
        window,
        orientation: Orientation::LeftIsHead,
        tensor: QuadChronon::from_entries(dim, entries)?,
    })
}

impl VacuumII {
    pub fn tensor(&self) -> &QuadChronon {
        &self.tensor
    }

    /// Reads the coefficient of `|p̃_ν⟩⊗|p̃_μ⟩` back out of the tensor. The
    /// window matrices of distinct `p̃` have disjoint supports, so this is a
    /// projection.
    pub fn recovered_coefficient(&self, nu: Axis, mu: Axis) -> Rational {
        let left = translation_window_matrix(nu, self.window);
        let right = translation_window_matrix(mu, self.window);
        let mut sum = Rational::zero();
        for &(n, m) in &left {
            for &(l, k) in &right {
                sum += self.tensor.get([n, m, k, l]);
            }
        }
        sum / Rational::from_integer(((left.len() * right.len()) as i64).into())
    }

    /// Whether exchanging the two factors leaves the tensor unchanged.
    pub fn factor_swap_symmetric(&self) -> bool {
        self.tensor
            .entries()
            .into_iter()
            .all(|([n, m, k, l], v)| self.tensor.get([l, k, m, n]) == v)
    }
}

pub fn quadrupole_suite(seed: u64) -> SuiteReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("quadrupole");
    r.meta("seed", seed);

    let solved_serial = solve_unit(2, QuadChronon::serial);
    let solved_parallel = solve_unit(2, QuadChronon::parallel);
    r.check(
        "serial-unit-solved",
        solved_serial.as_ref() == Some(&QuadChronon::unit(2)),
        "brute-force solve at d=2",
    );
    r.check(
        "parallel-unit-solved",
        solved_parallel.as_ref() == Some(&QuadChronon::unit(2)),
        "brute-force solve at d=2",
    );
    for d in [3, 4] {
        let e = QuadChronon::unit(d);
        let ok = (0..5).all(|_| {
            let x = QuadChronon::random(d, &mut rng);
            e.serial(&x).unwrap() == x
                && x.serial(&e).unwrap() == x
                && e.parallel(&x).unwrap() == x
                && x.parallel(&e).unwrap() == x
        });
        r.check(
            format!("unit-closed-form-d{d}"),
            ok,
            "δ^n_k δ_m^l is a two-sided unit of both products",
        );
    }
    r.check(
        "unit-trace-serial",
        QuadChronon::unit(2).trace_serial() == Rational::from_integer(4.into()),
        "tr_o e = d² at d=2",
    );

    let mut assoc = [0usize; 2];
    for i in 0..60 {
        let d = 2 + i % 2;
        let (a, b, c) = (
            QuadChronon::random(d, &mut rng),
            QuadChronon::random(d, &mut rng),
            QuadChronon::random(d, &mut rng),
        );
        let s = a.serial(&b).unwrap().serial(&c).unwrap() == a.serial(&b.serial(&c).unwrap()).unwrap();
        let p = a.parallel(&b).unwrap().parallel(&c).unwrap() == a.parallel(&b.parallel(&c).unwrap()).unwrap();
        assoc[0] += s as usize;
        assoc[1] += p as usize;
    }
    r.push(
        crate::report::Check::new(
            "serial-associative",
            assoc[0] == 60,
            format!("{}/60 triples, d=2,3", assoc[0]),
        )
        .with("cases", 60.0),
    );
    r.push(
        crate::report::Check::new(
            "parallel-associative",
            assoc[1] == 60,
            format!("{}/60 triples, d=2,3", assoc[1]),
        )
        .with("cases", 60.0),
    );

    let nc = find_witness(
        2,
        &mut rng,
        |a, b| a.parallel(b).unwrap(),
        |a, b| b.parallel(a).unwrap(),
    );
    r.check("parallel-noncommutative-witness", nc.is_some(), witness_detail(&nc));
    let sp = find_witness(2, &mut rng, |a, b| a.serial(b).unwrap(), |a, b| a.parallel(b).unwrap());
    r.check("serial-ne-parallel-witness", sp.is_some(), witness_detail(&sp));

    let cyclic = (0..10).all(|_| {
        let (a, b) = (QuadChronon::random(2, &mut rng), QuadChronon::random(2, &mut rng));
        a.serial(&b).unwrap().trace_serial() == b.serial(&a).unwrap().trace_serial()
    });
    r.check("serial-trace-cyclic", cyclic, "tr_o(a·b) = tr_o(b·a), 10 pairs");
    let gl = (0..10).all(|_| {
        let x = QuadChronon::random(2, &mut rng);
        let g = RatMatrix::random_invertible(2, &mut rng);
        let y = x.gl_transform(&g).unwrap();
        y.trace_serial() == x.trace_serial() && y.trace_parallel() == x.trace_parallel()
    });
    r.check(
        "traces-gl-invariant",
        gl,
        "both traces under GL(2) transport, 10 samples",
    );

    match build_vacuum_ii(2) {
        Ok(vac) => {
            let m = AntiEuclideanMetric::new();
            let exact = Axis::ALL.iter().all(|&nu| {
                Axis::ALL
                    .iter()
                    .all(|&mu| vac.recovered_coefficient(nu, mu) == *m.up(nu, mu))
            });
            r.check(
                "vacuum-ii-coefficients",
                exact && vac.coefficients == *m.upper(),
                "recovered from the window tensor",
            );
            r.check(
                "vacuum-ii-swap-symmetric",
                vac.factor_swap_symmetric(),
                format!("{} nonzeros, d={}", vac.tensor.nnz(), vac.tensor.dim()),
            );
        }
        Err(e) => {
            r.check("vacuum-ii-coefficients", false, e.to_string());
        }
    }
    r
}
