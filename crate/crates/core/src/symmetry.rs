//! S(4): Galois factorization, Lorentz classification through a null
//! tetrad, the group algebra as a double algebra, and the arrow algebra of
//! a finite state space as a full matrix algebra.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{Matrix4, Vector4};
use num::traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{AntiEuclideanMetric, Axis};
use crate::linalg::RatMatrix;
use crate::report::{Check, SuiteReport};
use crate::sampling::small_rational;
use crate::scalar::Rational;

/// A bijection of `{1, 2, 3, 4}`, stored 0-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation([u8; 4]);

impl Permutation {
    pub const IDENTITY: Permutation = Permutation([0, 1, 2, 3]);

    /// From 1-based images.
    pub fn new(images: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if !(1..=4).contains(&i) || std::mem::replace(&mut seen[i as usize - 1], true) {
                return Err(Error::Domain(format!("{images:?} is not a permutation of 1..4")));
            }
        }
        Ok(Self(images.map(|i| i - 1)))
    }

    /// From disjoint 1-based cycles, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Self> {
        let mut images = [1, 2, 3, 4];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if !(1..=4).contains(&x) {
                    return Err(Error::Domain(format!("{x} is not in 1..4")));
                }
                images[x as usize - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn all() -> Vec<Permutation> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        let p = [a, b, c, d];
                        if (0..4).all(|i| p.contains(&i)) {
                            out.push(Permutation(p));
                        }
                    }
                }
            }
        }
        out
    }

    /// 0-based image of a 0-based point.
    pub fn apply(self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `(self · other)(x) = self(other(x))`.
    pub fn compose(self, other: Permutation) -> Permutation {
        Permutation(other.0.map(|x| self.0[x as usize]))
    }

    pub fn inverse(self) -> Permutation {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation(inv)
    }

    pub fn cycles(self) -> Vec<Vec<u8>> {
        let mut seen = [false; 4];
        let mut out = Vec::new();
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u8 + 1);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(self) -> usize {
        let mut p = self;
        let mut k = 1;
        while p != Self::IDENTITY {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(u8::to_string).collect::<String>()))
            .collect();
        if nontrivial.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", nontrivial.concat())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn perm(cycles: &[&[u8]]) -> Permutation {
    Permutation::from_cycles(cycles).expect("literal cycles")
}

/// `{id, (12)(34), (13)(24), (14)(23)}`.
pub fn klein_group() -> [Permutation; 4] {
    [
        Permutation::IDENTITY,
        perm(&[&[1, 2], &[3, 4]]),
        perm(&[&[1, 3], &[2, 4]]),
        perm(&[&[1, 4], &[2, 3]]),
    ]
}

/// Representatives for the 2- and 3-factors of `2 ⋊ (3 ⋊ 4₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupChoice {
    pub transposition: Permutation,
    pub three_cycle: Permutation,
}

impl SubgroupChoice {
    pub const DEFAULT: SubgroupChoice = SubgroupChoice {
        transposition: Permutation([1, 0, 2, 3]),
        three_cycle: Permutation([1, 2, 0, 3]),
    };

    pub fn new(transposition: Permutation, three_cycle: Permutation) -> Result<Self> {
        if transposition.cycle_type() != [2, 1, 1] {
            return Err(Error::Domain(format!("{transposition} is not a transposition")));
        }
        if three_cycle.cycle_type() != [3, 1] {
            return Err(Error::Domain(format!("{three_cycle} is not a 3-cycle")));
        }
        Ok(Self {
            transposition,
            three_cycle,
        })
    }

    /// The default plus three alternatives.
    pub fn alternatives() -> [SubgroupChoice; 4] {
        [
            Self::DEFAULT,
            Self::new(perm(&[&[3, 4]]), perm(&[&[2, 3, 4]])).expect("valid"),
            Self::new(perm(&[&[1, 3]]), perm(&[&[1, 4, 2]])).expect("valid"),
            Self::new(perm(&[&[2, 4]]), perm(&[&[1, 3, 4]])).expect("valid"),
        ]
    }

    pub fn two(&self) -> [Permutation; 2] {
        [Permutation::IDENTITY, self.transposition]
    }

    pub fn three(&self) -> [Permutation; 3] {
        [
            Permutation::IDENTITY,
            self.three_cycle,
            self.three_cycle.compose(self.three_cycle),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisCoordinates {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
}

impl GaloisCoordinates {
    pub fn product(&self) -> Permutation {
        self.a.compose(self.b).compose(self.c)
    }
}

/// All `(a, b, c)` with `g = a·b·c`.
pub fn factorizations(g: Permutation, choice: &SubgroupChoice) -> Vec<GaloisCoordinates> {
    let mut out = Vec::new();
    for a in choice.two() {
        for b in choice.three() {
            for c in klein_group() {
                let co = GaloisCoordinates { a, b, c };
                if co.product() == g {
                    out.push(co);
                }
            }
        }
    }
    out
}

/// The unique factorization `g = a·b·c`.
pub fn galois_factorize(g: Permutation, choice: &SubgroupChoice) -> Result<GaloisCoordinates> {
    match factorizations(g, choice).as_slice() {
        [one] => Ok(*one),
        many => Err(Error::Domain(format!("{g} has {} factorizations", many.len()))),
    }
}

/// Whether every element of S(4) factors exactly once.
pub fn factorization_is_bijective(choice: &SubgroupChoice) -> bool {
    Permutation::all()
        .into_iter()
        .all(|g| factorizations(g, choice).len() == 1)
}

/// Four future null vectors with `k_a · k_b = 1 − δ_ab`.
#[derive(Clone, Debug, PartialEq)]
pub struct NullTetrad {
    /// Columns are `k_1 … k_4` in the frame `(t, x, y, z)`.
    pub vectors: Matrix4<f64>,
    pub scale: f64,
}

pub fn minkowski() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

impl NullTetrad {
    /// `k_a = λ (1, s_a)` with `s_a` the unit vertices of a regular
    /// tetrahedron; `λ` solves `λ² (1 − s_a·s_b) = 1`.
    pub fn tetrahedral() -> Self {
        let r = 1.0 / 3f64.sqrt();
        let s = [[r, r, r], [r, -r, -r], [-r, r, -r], [-r, -r, r]];
        let dot: f64 = (0..3).map(|i| s[0][i] * s[1][i]).sum();
        let scale = (1.0 / (1.0 - dot)).sqrt();
        let vectors = Matrix4::from_fn(|row, a| scale * if row == 0 { 1.0 } else { s[a][row - 1] });
        Self { vectors, scale }
    }

    pub fn gram(&self) -> Matrix4<f64> {
        self.vectors.transpose() * minkowski() * self.vectors
    }

    /// Largest deviation of the Gram matrix from `1 − δ`.
    pub fn gram_error(&self) -> f64 {
        let g = self.gram();
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                let want = if a == b { 0.0 } else { 1.0 };
                worst = worst.max((g[(a, b)] - want).abs());
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Proper,
    Improper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LorentzClass {
    pub handedness: Handedness,
    pub matrix: Matrix4<f64>,
    pub determinant: f64,
    pub metric_error: f64,
}

pub const METRIC_TOLERANCE: f64 = 1e-10;

/// The linear map with `Λ k_a = k_{g(a)}`, checked against the Minkowski
/// metric and classified by its determinant.
pub fn classify_lorentz(g: Permutation, tetrad: &NullTetrad) -> Result<LorentzClass> {
    let k = &tetrad.vectors;
    let moved = Matrix4::from_fn(|row, a| k[(row, g.apply(a))]);
    let inv = k.try_inverse().ok_or(Error::Singular)?;
    let lambda = moved * inv;
    let eta = minkowski();
    let metric_error = (lambda.transpose() * eta * lambda - eta).abs().max();
    if metric_error > METRIC_TOLERANCE {
        return Err(Error::Embedding(metric_error));
    }
    let determinant = lambda.determinant();
    let handedness = if determinant > 0.0 {
        Handedness::Proper
    } else {
        Handedness::Improper
    };
    Ok(LorentzClass {
        handedness,
        matrix: lambda,
        determinant,
        metric_error,
    })
}

/// Whether `χ^{g(a) g(b)} = χ^{ab}` exactly.
pub fn preserves_gram(g: Permutation) -> bool {
    let m = AntiEuclideanMetric::new();
    Axis::ALL.iter().all(|&a| {
        Axis::ALL.iter().all(|&b| {
            let ga = Axis::ALL[g.apply(a.index())];
            let gb = Axis::ALL[g.apply(b.index())];
            m.up(ga, gb) == m.up(a, b)
        })
    })
}

/// An element of the rational group algebra of S(4).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    coeffs: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElement {
    pub fn delta(g: Permutation) -> Self {
        Self {
            coeffs: BTreeMap::from([(g, Rational::one())]),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let all = Permutation::all();
        let mut e = Self::default();
        for _ in 0..4 {
            e.add_term(all[rng.random_range(0..24)], small_rational(rng));
        }
        e
    }

    fn add_term(&mut self, g: Permutation, c: Rational) {
        let entry = self.coeffs.entry(g).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn coefficient(&self, g: Permutation) -> Rational {
        self.coeffs.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    /// The parallel product: `δ_g * δ_h = δ_{gh}`.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (g, a) in &self.coeffs {
            for (h, b) in &other.coeffs {
                out.add_term(g.compose(*h), a * b);
            }
        }
        out
    }
}

/// Left translation acting on one Galois coordinate of a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SerialOperator {
    OnA(Permutation),
    OnB(Permutation),
    OnC(Permutation),
}

impl SerialOperator {
    pub fn apply(self, co: GaloisCoordinates) -> GaloisCoordinates {
        match self {
            Self::OnA(x) => GaloisCoordinates {
                a: x.compose(co.a),
                ..co
            },
            Self::OnB(x) => GaloisCoordinates {
                b: x.compose(co.b),
                ..co
            },
            Self::OnC(x) => GaloisCoordinates {
                c: x.compose(co.c),
                ..co
            },
        }
    }
}

/// Counts of (pairs checked, commuting pairs) for serial operators on two
/// distinct Galois coordinates, over all 24 basis elements.
pub fn serial_commutation(choice: &SubgroupChoice) -> (usize, usize) {
    let on_a: Vec<SerialOperator> = choice.two().into_iter().map(SerialOperator::OnA).collect();
    let on_b: Vec<SerialOperator> = choice.three().into_iter().map(SerialOperator::OnB).collect();
    let on_c: Vec<SerialOperator> = klein_group().into_iter().map(SerialOperator::OnC).collect();
    let mut checked = 0;
    let mut ok = 0;
    for g in Permutation::all() {
        let co = galois_factorize(g, choice).expect("bijective choice");
        for (xs, ys) in [(&on_a, &on_b), (&on_a, &on_c), (&on_b, &on_c)] {
            for &x in xs {
                for &y in ys {
                    checked += 1;
                    ok += (x.apply(y.apply(co)) == y.apply(x.apply(co))) as usize;
                }
            }
        }
    }
    (checked, ok)
}

/// `E_{ij} E_{kl}` in the matrix-unit basis, from literal matrix products.
fn matrix_unit_structure(n: usize) -> BTreeMap<[usize; 4], Vec<(usize, usize, Rational)>> {
    let unit = |i: usize, j: usize| {
        RatMatrix::from_fn(n, n, |r, c| {
            if r == i && c == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    };
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let p = &unit(i, j) * &unit(k, l);
                    let mut coords = Vec::new();
                    for r in 0..n {
                        for c in 0..n {
                            if !p[(r, c)].is_zero() {
                                coords.push((r, c, p[(r, c)].clone()));
                            }
                        }
                    }
                    out.insert([i, j, k, l], coords);
                }
            }
        }
    }
    out
}

/// An arrow `(head ← tail)` of `[S ← S]`.
pub type StateArrow = (usize, usize);

/// `(i←j)∘(k←l) = (i←l)` when `j = k`, otherwise zero.
pub fn compose_arrows(x: StateArrow, y: StateArrow) -> Option<StateArrow> {
    (x.1 == y.0).then_some((x.0, y.1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantizationReport {
    pub n: usize,
    pub dimension: usize,
    pub structure_constants_match: bool,
    /// `σ = Σ (i+1 ← i)` satisfies `σ^N = Σ (i ← i)`.
    pub cyclic_shift_order: bool,
}

pub fn formal_quantization_check(n: usize) -> QuantizationReport {
    let arrows: Vec<StateArrow> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let units = matrix_unit_structure(n);
    let mut matches = true;
    for &x in &arrows {
        for &y in &arrows {
            let arrow_side: Vec<(usize, usize, Rational)> = compose_arrows(x, y)
                .map(|(i, l)| vec![(i, l, Rational::one())])
                .unwrap_or_default();
            matches &= units[&[x.0, x.1, y.0, y.1]] == arrow_side;
        }
    }
    // σ as a combination of arrows, powers by arrow composition
    let sigma: Vec<StateArrow> = (0..n).map(|i| ((i + 1) % n, i)).collect();
    let mut power: BTreeMap<StateArrow, Rational> = sigma.iter().map(|&a| (a, Rational::one())).collect();
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for (a, c) in &power {
            for s in &sigma {
                if let Some(z) = compose_arrows(*s, *a) {
                    *next.entry(z).or_insert_with(Rational::zero) += c;
                }
            }
        }
        power = next;
    }
    let identity: BTreeMap<StateArrow, Rational> = (0..n).map(|i| ((i, i), Rational::one())).collect();
    QuantizationReport {
        n,
        dimension: arrows.len(),
        structure_constants_match: matches,
        cyclic_shift_order: power == identity,
    }
}

/// One report row per permutation.
pub fn s4_rows(choice: &SubgroupChoice, tetrad: &NullTetrad) -> Vec<Check> {
    Permutation::all()
        .into_iter()
        .map(|g| {
            let co = galois_factorize(g, choice);
            let lor = classify_lorentz(g, tetrad);
            let ok = co.is_ok()
                && lor
                    .as_ref()
                    .is_ok_and(|l| (l.handedness == Handedness::Proper) == g.is_even());
            let detail = match (&co, &lor) {
                (Ok(co), Ok(l)) => format!(
                    "cycle type {:?}, a={} b={} c={}, {:?}, det {:+.0}",
                    g.cycle_type(),
                    co.a,
                    co.b,
                    co.c,
                    l.handedness,
                    l.determinant
                ),
                (Err(e), _) | (_, Err(e)) => e.to_string(),
            };
            let mut c = Check::new(format!("perm-{g}"), ok, detail);
            if let Ok(l) = &lor {
                c = c
                    .with("determinant", l.determinant.round())
                    .with("metric_error", l.metric_error);
            }
            c
        })
        .collect()
}

/// The S(4) suite; `rows` adds one check per permutation.
pub fn s4_suite(seed: u64, rows: bool) -> SuiteReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("s4");
    let choice = SubgroupChoice::DEFAULT;
    r.meta("seed", seed)
        .meta("transposition", choice.transposition.to_string())
        .meta("three_cycle", choice.three_cycle.to_string());

    let k = klein_group();
    let closed = k.iter().all(|x| {
        k.iter()
            .all(|y| k.contains(&x.compose(*y)) && x.compose(*y) == y.compose(*x))
    });
    r.check(
        "klein-group",
        closed && k[1].compose(k[2]) == k[3] && k[1..].iter().all(|g| g.order() == 2),
        "closed, abelian, involutions",
    );

    for (i, alt) in SubgroupChoice::alternatives().iter().enumerate() {
        r.check(
            format!("factorization-bijective-{i}"),
            factorization_is_bijective(alt),
            format!("2 = <{}>, 3 = <{}>", alt.transposition, alt.three_cycle),
        );
    }

    let tetrad = NullTetrad::tetrahedral();
    r.push(
        Check::new(
            "null-tetrad",
            tetrad.gram_error() < 1e-12,
            format!("k_a = λ(1, s_a), λ = {:.12}", tetrad.scale),
        )
        .with("scale", tetrad.scale)
        .with("gram_error", tetrad.gram_error()),
    );
    let per_perm = s4_rows(&choice, &tetrad);
    let proper = Permutation::all()
        .into_iter()
        .filter(|&g| classify_lorentz(g, &tetrad).is_ok_and(|l| l.handedness == Handedness::Proper))
        .count();
    let worst = Permutation::all()
        .into_iter()
        .filter_map(|g| classify_lorentz(g, &tetrad).ok())
        .fold(0.0f64, |m, l| m.max(l.metric_error));
    let all_rows_ok = per_perm.iter().all(Check::passed);
    r.push(
        Check::new(
            "lorentz-classification",
            proper == 12 && all_rows_ok,
            format!("{proper} proper, {} improper", 24 - proper),
        )
        .with("proper", proper as f64)
        .with("improper", (24 - proper) as f64)
        .with("max_metric_error", worst),
    );
    r.check(
        "gram-permutation-invariant",
        Permutation::all().into_iter().all(preserves_gram),
        "χ^{g(a)g(b)} = χ^{ab}, exact",
    );
    if rows {
        for row in per_perm {
            r.push(row);
        }
    }

    let (checked, ok) = serial_commutation(&choice);
    r.check(
        "serial-commute",
        checked == ok,
        format!("{ok}/{checked} operator pairs on distinct coordinates over 24 basis elements"),
    );
    let t = perm(&[&[1, 2, 3]]);
    let v = perm(&[&[1, 2], &[3, 4]]);
    let (dt, dv) = (GroupAlgebraElement::delta(t), GroupAlgebraElement::delta(v));
    r.check(
        "parallel-noncommutative",
        dt.convolve(&dv) != dv.convolve(&dt),
        format!("δ{t} * δ{v} = δ{}, δ{v} * δ{t} = δ{}", t.compose(v), v.compose(t)),
    );
    let assoc = (0..10).all(|_| {
        let (a, b, c) = (
            GroupAlgebraElement::random(&mut rng),
            GroupAlgebraElement::random(&mut rng),
            GroupAlgebraElement::random(&mut rng),
        );
        a.convolve(&b).convolve(&c) == a.convolve(&b.convolve(&c))
    });
    r.check("convolution-associative", assoc, "10 random triples");

    for n in [2, 3] {
        let q = formal_quantization_check(n);
        r.push(
            Check::new(
                format!("matrix-algebra-N{n}"),
                q.dimension == n * n && q.structure_constants_match && q.cyclic_shift_order,
                format!(
                    "dimension {}, structure constants match matrix units, σ^N = 1",
                    q.dimension
                ),
            )
            .with("dimension", q.dimension as f64),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_examples() {
        let k = klein_group();
        assert_eq!(k[1].compose(k[2]), k[3]);
        assert_eq!(k[1].to_string(), "(12)(34)");
    }

    #[test]
    fn factorization_examples() {
        let c = SubgroupChoice::DEFAULT;
        let id = Permutation::IDENTITY;
        assert_eq!(
            galois_factorize(id, &c).unwrap(),
            GaloisCoordinates { a: id, b: id, c: id }
        );
        for k in klein_group() {
            assert_eq!(
                galois_factorize(k, &c).unwrap(),
                GaloisCoordinates { a: id, b: id, c: k }
            );
        }
        for alt in SubgroupChoice::alternatives() {
            assert!(factorization_is_bijective(&alt));
        }
        assert!(SubgroupChoice::new(perm(&[&[1, 2], &[3, 4]]), perm(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn lorentz_examples() {
        let t = NullTetrad::tetrahedral();
        assert!(t.gram_error() < 1e-12);
        assert!((t.scale - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let id = classify_lorentz(Permutation::IDENTITY, &t).unwrap();
        assert_eq!(id.handedness, Handedness::Proper);
        assert!((id.determinant - 1.0).abs() < 1e-12);
        let mut proper = 0;
        for g in Permutation::all() {
            let l = classify_lorentz(g, &t).unwrap();
            assert_eq!(l.handedness == Handedness::Proper, g.is_even());
            proper += (l.handedness == Handedness::Proper) as usize;
        }
        assert_eq!(proper, 12);
    }

    #[test]
    fn arrow_algebra() {
        assert_eq!(compose_arrows((0, 1), (1, 2)), Some((0, 2)));
        assert_eq!(compose_arrows((0, 1), (0, 2)), None);
        for n in [2, 3] {
            let q = formal_quantization_check(n);
            assert_eq!(q.dimension, n * n);
            assert!(q.structure_constants_match && q.cyclic_shift_order);
        }
    }

    #[test]
    fn suite_passes() {
        let r = s4_suite(1, true);
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.checks.iter().filter(|c| c.name.starts_with("perm-")).count(), 24);
    }
}
