//! Sparse engine for iterated Grassmann algebras.
//!
//! Generators are keyed by canonical content, so a generator built by
//! unitizing an extensor or an operator is equal to every other generator
//! with the same (sign-normalized) content. Monomials are strictly
//! increasing generator lists; zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, ShiftPolyOperator};
use crate::scalar::{is_positive, Rational, Scalar};

/// Level-1 basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Atom {
    Index(u64),
    Named(String),
    Point(LatticePoint),
    /// The arrow `|head ← tail⟩` between nodes of a finite net.
    Arrow {
        head: usize,
        tail: usize,
    },
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKey {
    Atom(Atom),
    /// Sign-normalized unitized extensor.
    Extensor(Arc<GradedExtensor<Rational>>),
    /// Sign-normalized unitized topon operator (a dipole chronon).
    Operator(Arc<ShiftPolyOperator>),
}

/// A grade-1 generator. Ordered by `(level, key)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    level: u32,
    key: GenKey,
}

impl GeneratorId {
    pub fn atom(atom: Atom) -> Self {
        Self {
            level: 1,
            key: GenKey::Atom(atom),
        }
    }

    pub fn index(i: u64) -> Self {
        Self::atom(Atom::Index(i))
    }

    pub fn named(name: impl Into<String>) -> Self {
        Self::atom(Atom::Named(name.into()))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn key(&self) -> &GenKey {
        &self.key
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match &self.key {
            GenKey::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Normalized operator content, for chronon generators.
    pub fn operator(&self) -> Option<&ShiftPolyOperator> {
        match &self.key {
            GenKey::Operator(op) => Some(op),
            _ => None,
        }
    }

    /// Normalized extensor content, for unitized extensors.
    pub fn content(&self) -> Option<&GradedExtensor<Rational>> {
        match &self.key {
            GenKey::Extensor(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.key {
            GenKey::Atom(Atom::Index(i)) => write!(f, "e{i}"),
            GenKey::Atom(Atom::Named(s)) => write!(f, "{s}"),
            GenKey::Atom(Atom::Point(p)) => write!(f, "|{p}⟩"),
            GenKey::Atom(Atom::Arrow { head, tail }) => write!(f, "|{head}←{tail}⟩"),
            GenKey::Extensor(e) => write!(f, "|{e}⟩"),
            GenKey::Operator(op) => write!(f, "|{op}⟩"),
        }
    }
}

/// Sign extracted while normalizing unitized content.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn apply<S: Scalar>(self, c: S) -> S {
        match self {
            Sign::Plus => c,
            Sign::Minus => -c,
        }
    }
}

/// Output of [`unitize`]: `|content⟩ = sign · generator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitized {
    pub generator: GeneratorId,
    pub sign: Sign,
}

impl Unitized {
    pub fn extensor<S: Scalar>(&self) -> GradedExtensor<S> {
        GradedExtensor::generator(self.generator.clone()).scale(&self.sign.apply(S::one()))
    }
}

/// Content that can be wrapped as a single next-level generator.
pub enum Content<'a> {
    Extensor(&'a GradedExtensor<Rational>),
    Operator(&'a ShiftPolyOperator),
}

impl<'a> From<&'a GradedExtensor<Rational>> for Content<'a> {
    fn from(e: &'a GradedExtensor<Rational>) -> Self {
        Content::Extensor(e)
    }
}

impl<'a> From<&'a ShiftPolyOperator> for Content<'a> {
    fn from(op: &'a ShiftPolyOperator) -> Self {
        Content::Operator(op)
    }
}

/// Wraps content as one generator of the next level. Content is normalized
/// so its first coefficient in canonical order is positive; the removed
/// sign is returned alongside. Zero content has no normal form.
pub fn unitize<'a>(content: impl Into<Content<'a>>) -> Result<Unitized> {
    match content.into() {
        Content::Extensor(e) => {
            let lead = e
                .terms
                .values()
                .next()
                .ok_or_else(|| Error::Canonicalization("zero extensor".into()))?;
            let sign = if is_positive(lead) { Sign::Plus } else { Sign::Minus };
            let normalized = if sign.is_negative() { -e.clone() } else { e.clone() };
            let level = 1 + normalized.terms.keys().flatten().map(|g| g.level).max().unwrap_or(0);
            Ok(Unitized {
                generator: GeneratorId {
                    level,
                    key: GenKey::Extensor(Arc::new(normalized)),
                },
                sign,
            })
        }
        Content::Operator(op) => {
            let lead = op
                .leading_coefficient()
                .ok_or_else(|| Error::Canonicalization("zero operator".into()))?;
            let sign = if is_positive(lead) { Sign::Plus } else { Sign::Minus };
            let normalized = if sign.is_negative() { -op.clone() } else { op.clone() };
            Ok(Unitized {
                generator: GeneratorId {
                    level: 2,
                    key: GenKey::Operator(Arc::new(normalized)),
                },
                sign,
            })
        }
    }
}

/// Whether repeated generators annihilate a monomial. `Disabled` breaks the
/// Grassmann relations and exists only to mutation-test verifications that
/// depend on exclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exclusion {
    Enforced,
    Disabled,
}

/// Sorts a generator word, returning the canonical monomial and whether the
/// sort was an odd permutation. `None` when exclusion kills the word.
pub fn canonical_word(mut word: Vec<GeneratorId>, exclusion: Exclusion) -> Option<(Vec<GeneratorId>, bool)> {
    let mut odd = false;
    // insertion sort; each adjacent swap of distinct elements is a transposition
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
        if exclusion == Exclusion::Enforced && j > 0 && word[j - 1] == word[j] {
            return None;
        }
    }
    Some((word, odd))
}

pub type Monomial = Vec<GeneratorId>;

/// Element of an (iterated) Grassmann algebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedExtensor<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for GradedExtensor<S> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> GradedExtensor<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty product `|1⟩`.
    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        let mut e = Self::zero();
        e.add_monomial(Vec::new(), c);
        e
    }

    pub fn generator(g: GeneratorId) -> Self {
        let mut e = Self::zero();
        e.add_monomial(vec![g], S::one());
        e
    }

    /// Wedge of `word` in the given order.
    pub fn word(word: Vec<GeneratorId>, c: S) -> Self {
        Self::word_with(word, c, Exclusion::Enforced)
    }

    pub fn word_with(word: Vec<GeneratorId>, c: S, exclusion: Exclusion) -> Self {
        let mut e = Self::zero();
        if let Some((mono, odd)) = canonical_word(word, exclusion) {
            e.add_monomial(mono, if odd { -c } else { c });
        }
        e
    }

    /// Adds `c` times an already-canonical monomial.
    fn add_monomial(&mut self, mono: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &[GeneratorId]) -> S {
        self.terms.get(mono).cloned().unwrap_or_else(S::zero)
    }

    /// Grades present, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The grade if homogeneous (the zero extensor has none).
    pub fn grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut e = Self::zero();
        for (m, v) in &self.terms {
            e.add_monomial(m.clone(), v.clone() * c.clone());
        }
        e
    }

    /// Generators occurring anywhere in the extensor.
    pub fn support(&self) -> Vec<GeneratorId> {
        let mut g: Vec<GeneratorId> = self.terms.keys().flatten().cloned().collect();
        g.sort();
        g.dedup();
        g
    }

    pub fn wedge(&self, rhs: &Self) -> Self {
        self.wedge_with(rhs, Exclusion::Enforced)
    }

    pub fn wedge_with(&self, rhs: &Self, exclusion: Exclusion) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((mono, odd)) = merge(ma, mb, exclusion) {
                    let c = ca.clone() * cb.clone();
                    out.add_monomial(mono, if odd { -c } else { c });
                }
            }
        }
        out
    }

    /// Left Grassmann derivative `∂/∂gen`.
    pub fn derivative(&self, gen: &GeneratorId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Ok(pos) = m.binary_search(gen) {
                let mut rest = m.clone();
                rest.remove(pos);
                out.add_monomial(rest, if pos % 2 == 1 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Extends a map on generators to an even derivation:
    /// `f(x₁∨…∨xₙ) = Σₖ x₁∨…∨f(xₖ)∨…∨xₙ`.
    pub fn extend_as_derivation<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&GeneratorId) -> Result<GradedExtensor<S>>,
    {
        self.extend_as_derivation_with(f, Exclusion::Enforced)
    }

    pub fn extend_as_derivation_with<F>(&self, f: F, exclusion: Exclusion) -> Result<Self>
    where
        F: Fn(&GeneratorId) -> Result<GradedExtensor<S>>,
    {
        let mut cache: BTreeMap<&GeneratorId, GradedExtensor<S>> = BTreeMap::new();
        for g in self.terms.keys().flatten() {
            if !cache.contains_key(g) {
                cache.insert(g, f(g)?);
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for k in 0..m.len() {
                let image = &cache[&m[k]];
                for (im, ic) in &image.terms {
                    let mut word = Vec::with_capacity(m.len() + im.len());
                    word.extend_from_slice(&m[..k]);
                    word.extend(im.iter().cloned());
                    word.extend_from_slice(&m[k + 1..]);
                    if let Some((mono, odd)) = canonical_word(word, exclusion) {
                        let v = c.clone() * ic.clone();
                        out.add_monomial(mono, if odd { -v } else { v });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative extension of a map on generators (an outermorphism
    /// when the images are grade 1). Generators mapped to `None` stay.
    pub fn substitute<F>(&self, f: F) -> Self
    where
        F: Fn(&GeneratorId) -> Option<GradedExtensor<S>>,
    {
        let mut cache: BTreeMap<&GeneratorId, GradedExtensor<S>> = BTreeMap::new();
        for g in self.terms.keys().flatten() {
            cache
                .entry(g)
                .or_insert_with(|| f(g).unwrap_or_else(|| GradedExtensor::generator(g.clone())));
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = GradedExtensor::scalar(c.clone());
            for g in m {
                acc = acc.wedge(&cache[g]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        out
    }

    /// Linear map induced by `f` on monomials.
    pub fn map_monomials<F>(&self, f: F) -> Self
    where
        F: Fn(&Monomial) -> GradedExtensor<S>,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out = out + f(m).scale(c);
        }
        out
    }

    /// `Some(λ)` when `self = λ · other` with `other ≠ 0`.
    pub fn ratio_to(&self, other: &Self) -> Option<S>
    where
        S: std::ops::Div<Output = S>,
    {
        let (m0, c0) = other.terms.iter().next()?;
        let lambda = self.coefficient(m0) / c0.clone();
        (other.scale(&lambda) == *self).then_some(lambda)
    }
}

/// Merge of two canonical monomials with the permutation sign.
fn merge(a: &[GeneratorId], b: &[GeneratorId], exclusion: Exclusion) -> Option<(Monomial, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                // b[j] jumps over every remaining element of a
                if (a.len() - i) % 2 == 1 {
                    odd = !odd;
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                if exclusion == Exclusion::Enforced {
                    return None;
                }
                out.push(a[i].clone());
                i += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, odd))
}

/// Reciprocal-basis pairing: `⟨g₁…gₖ|h₁…hₖ⟩` is the determinant of
/// `δ(gᵢ, hⱼ)`, which on canonical monomials is 1 for equal lists and 0
/// otherwise. Grades that differ pair to zero.
pub fn dual_pair<S: Scalar>(bra: &GradedExtensor<S>, ket: &GradedExtensor<S>) -> S {
    let mut acc = S::zero();
    let (small, large, bra_small) = if bra.terms.len() <= ket.terms.len() {
        (bra, ket, true)
    } else {
        (ket, bra, false)
    };
    for (m, c) in &small.terms {
        if let Some(d) = large.terms.get(m) {
            acc = if bra_small {
                acc + c.clone() * d.clone()
            } else {
                acc + d.clone() * c.clone()
            };
        }
    }
    acc
}

/// Renames generators at every nesting level. `rename` is consulted first;
/// generators it leaves alone are rebuilt from their renamed content and
/// re-unitized, which can flip their sign.
pub fn relabel<F>(e: &GradedExtensor<Rational>, rename: &F) -> GradedExtensor<Rational>
where
    F: Fn(&GeneratorId) -> Option<GeneratorId>,
{
    e.substitute(|g| Some(relabel_generator(g, rename)))
}

fn relabel_generator<F>(g: &GeneratorId, rename: &F) -> GradedExtensor<Rational>
where
    F: Fn(&GeneratorId) -> Option<GeneratorId>,
{
    if let Some(h) = rename(g) {
        return GradedExtensor::generator(h);
    }
    match &g.key {
        GenKey::Extensor(content) => {
            let renamed = relabel(content, rename);
            match unitize(&renamed) {
                Ok(u) => u.extensor(),
                Err(_) => GradedExtensor::zero(),
            }
        }
        _ => GradedExtensor::generator(g.clone()),
    }
}

impl<S: Scalar> std::ops::Add for GradedExtensor<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_monomial(m, c);
        }
        self
    }
}

impl<S: Scalar> std::ops::Sub for GradedExtensor<S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_monomial(m, -c);
        }
        self
    }
}

impl<S: Scalar> std::ops::Neg for GradedExtensor<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for GradedExtensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for g in m {
                write!(f, "·{g}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for GradedExtensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Sum of generators with rational coefficients.
pub fn linear_combination(items: impl IntoIterator<Item = (GeneratorId, Rational)>) -> GradedExtensor<Rational> {
    let mut e = GradedExtensor::zero();
    for (g, c) in items {
        e.add_monomial(vec![g], c);
    }
    e
}

#[allow(clippy::should_implement_trait)]
impl GradedExtensor<Rational> {
    /// `|content⟩` as a grade-1 extensor, zero content giving zero.
    pub fn unit<'a>(content: impl Into<Content<'a>>) -> Self {
        match unitize(content) {
            Ok(u) => u.extensor(),
            Err(_) => Self::zero(),
        }
    }

    pub fn one_rational() -> Self {
        Self::scalar(Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn e(i: u64) -> GeneratorId {
        GeneratorId::index(i)
    }

    fn g(i: u64) -> GradedExtensor<Rational> {
        GradedExtensor::generator(e(i))
    }

    #[test]
    fn wedge_examples() {
        assert!(g(1).wedge(&g(1)).is_zero());
        assert_eq!(g(2).wedge(&g(1)), -g(1).wedge(&g(2)));
        let lhs = (g(1) + g(2).scale(&int(2))).wedge(&g(3));
        let rhs = g(1).wedge(&g(3)) + g(2).wedge(&g(3)).scale(&int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_examples() {
        let e12 = g(1).wedge(&g(2));
        assert_eq!(e12.derivative(&e(1)), g(2));
        assert_eq!(e12.derivative(&e(2)), -g(1));
        assert!(e12.derivative(&e(3)).is_zero());
    }

    #[test]
    fn unitize_examples() {
        let e12 = g(1).wedge(&g(2));
        let a = unitize(&e12).unwrap();
        let b = unitize(&e12).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generator.level(), 2);
        let e21 = g(2).wedge(&g(1));
        let c = unitize(&e21).unwrap();
        assert_eq!(c.generator, a.generator);
        assert_eq!(c.sign, Sign::Minus);
        assert_eq!(a.sign, Sign::Plus);
        assert!(matches!(
            unitize(&GradedExtensor::<Rational>::zero()),
            Err(Error::Canonicalization(_))
        ));
    }

    #[test]
    fn derivation_examples() {
        let m = g(1).wedge(&g(2)).wedge(&g(3));
        let zero = m.extend_as_derivation(|_| Ok(GradedExtensor::zero())).unwrap();
        assert!(zero.is_zero());
        let id = m
            .extend_as_derivation(|x| Ok(GradedExtensor::generator(x.clone())))
            .unwrap();
        assert_eq!(id, m.scale(&int(3)));
        // f(x1) = x2, f(x2) = x1: x2∨x2 + x1∨x1 = 0
        let e12 = g(1).wedge(&g(2));
        let swapped = e12
            .extend_as_derivation(|x| Ok(if *x == e(1) { g(2) } else { g(1) }))
            .unwrap();
        assert!(swapped.is_zero());
        // f(x1) = x2, f(x2) = x3: 0 + x1∨x3
        let shifted = e12
            .extend_as_derivation(|x| Ok(if *x == e(1) { g(2) } else { g(3) }))
            .unwrap();
        assert_eq!(shifted, g(1).wedge(&g(3)));
        let err = e12.extend_as_derivation(|x| Err(Error::Domain(x.to_string())));
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn dual_pair_examples() {
        assert_eq!(dual_pair(&g(1), &g(1)), int(1));
        let e12 = g(1).wedge(&g(2));
        assert_eq!(dual_pair(&e12, &e12), int(1));
        assert_eq!(dual_pair(&e12, &g(2).wedge(&g(1))), int(-1));
        assert_eq!(dual_pair(&g(1), &e12), int(0));
    }

    #[test]
    fn disabled_exclusion_keeps_repeats() {
        let w = GradedExtensor::<Rational>::word_with(vec![e(2), e(1), e(2)], int(1), Exclusion::Disabled);
        assert_eq!(w.grade(), Some(3));
        assert!(GradedExtensor::<Rational>::word(vec![e(2), e(1), e(2)], int(1)).is_zero());
    }

    #[test]
    fn nested_exchanges() {
        // within one level-2 generator
        let inner = g(1).wedge(&g(2));
        let outer = GradedExtensor::unit(&inner);
        let swap = |x: &GeneratorId| {
            if *x == e(1) {
                Some(e(2))
            } else if *x == e(2) {
                Some(e(1))
            } else {
                None
            }
        };
        assert_eq!(relabel(&outer, &swap), -outer.clone());
        // across level-2 generators: different monomial
        let a = GradedExtensor::unit(&g(1).wedge(&g(3)));
        let b = GradedExtensor::unit(&g(2).wedge(&g(4)));
        let state = a.wedge(&b);
        let image = relabel(&state, &swap);
        assert_eq!(dual_pair(&state, &image), int(0));
        assert!(!image.is_zero());
        // swapping whole level-2 factors: level-3 sign
        assert_eq!(b.wedge(&a), -state);
    }
}
