//! Arrow creators and annihilators on plectons over a finite net, the
//! chronon-number and path invariants `N(n) = tr cⁿaⁿ`, loop invariants,
//! GL(T) transport and exchange tests for nested generators.

use std::collections::BTreeSet;

use num::traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{dual_pair, relabel, unitize, Atom, GeneratorId, GradedExtensor};
use crate::linalg::RatMatrix;
use crate::report::{Check, SuiteReport};
use crate::scalar::{to_f64, Rational};

/// Elements of the plecton algebra over arrow generators.
pub type PlectonState = GradedExtensor<Rational>;

/// A finite directed net. Arrows are `(tail, head)` pairs; duplicates
/// collapse to one generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteNet {
    pub num_nodes: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl FiniteNet {
    pub fn new(num_nodes: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let net = Self { num_nodes, arrows };
        net.validate()?;
        Ok(net)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_nodes == 0 {
            return Err(Error::Config("a net needs at least one node".into()));
        }
        for &(t, h) in &self.arrows {
            for node in [t, h] {
                if node >= self.num_nodes {
                    return Err(Error::NodeRange {
                        node,
                        num_nodes: self.num_nodes,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let net: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        net.validate()?;
        Ok(net)
    }

    /// Path `0 → 1 → … → len`.
    pub fn path(len: usize) -> Self {
        Self {
            num_nodes: len + 1,
            arrows: (0..len).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Distinct arrow generators in canonical order.
    pub fn generators(&self) -> Vec<GeneratorId> {
        let set: BTreeSet<GeneratorId> = self.arrows.iter().map(|&(t, h)| arrow(h, t)).collect();
        set.into_iter().collect()
    }

    /// The wedge of all arrows of the net.
    pub fn state(&self) -> PlectonState {
        GradedExtensor::word(self.generators(), Rational::one())
    }

    /// Number of directed chains of `n` consecutive arrows.
    pub fn chain_count(&self, n: usize) -> usize {
        let arrows: BTreeSet<(usize, usize)> = self.arrows.iter().copied().collect();
        fn walk(arrows: &BTreeSet<(usize, usize)>, at: usize, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            arrows
                .iter()
                .filter(|(t, _)| *t == at)
                .map(|&(_, h)| walk(arrows, h, left - 1))
                .sum()
        }
        (0..self.num_nodes).map(|start| walk(&arrows, start, n)).sum()
    }
}

/// The arrow generator `|head ← tail⟩`.
pub fn arrow(head: usize, tail: usize) -> GeneratorId {
    GeneratorId::atom(Atom::Arrow { head, tail })
}

/// `c(n←m)`: left wedge by `|n←m⟩`.
pub fn create(n: usize, m: usize, state: &PlectonState) -> PlectonState {
    GradedExtensor::generator(arrow(n, m)).wedge(state)
}

/// `a(m←n) = ∂/∂|n←m⟩`.
pub fn annihilate(m: usize, n: usize, state: &PlectonState) -> PlectonState {
    state.derivative(&arrow(n, m))
}

/// Topon indices seen in a state, plus `num_nodes` as a floor.
fn node_count(state: &PlectonState, num_nodes: usize) -> usize {
    state
        .support()
        .iter()
        .filter_map(|g| match g.as_atom() {
            Some(Atom::Arrow { head, tail }) => Some(head.max(tail) + 1),
            _ => None,
        })
        .fold(num_nodes, usize::max)
}

/// `N(1) = Σ_{n,m} c(n←m) a(m←n)` over nodes `[0, num_nodes)`.
pub fn chronon_number(state: &PlectonState, num_nodes: usize) -> PlectonState {
    let nodes = node_count(state, num_nodes);
    let mut out = PlectonState::zero();
    for n in 0..nodes {
        for m in 0..nodes {
            out = out + create(n, m, &annihilate(m, n, state));
        }
    }
    out
}

/// `tr cⁿaⁿ` as the literal sum over every index tuple of the operator word
/// `c(i←a₁)…c(a_{n−1}←j) a(j←b₁)…a(b_{n−1}←i)`, applied right to left.
pub fn path_invariant_oracle(n: usize, state: &PlectonState, num_nodes: usize) -> PlectonState {
    assert!(n >= 1, "order must be positive");
    let nodes = node_count(state, num_nodes);
    let mut out = PlectonState::zero();
    // annihilator chain: indices i = b_n, b_{n−1}, …, b_1, j read right to left
    fn annihilators(
        n: usize,
        nodes: usize,
        i: usize,
        prev: usize,
        left: usize,
        s: &PlectonState,
        out: &mut PlectonState,
    ) {
        if left == 0 {
            // `prev` is j; now the creator chain ending at j and starting at i
            creators(nodes, i, prev, n, s, out);
            return;
        }
        for next in 0..nodes {
            // a(next ← prev)
            let t = annihilate(next, prev, s);
            if !t.is_zero() {
                annihilators(n, nodes, i, next, left - 1, &t, out);
            }
        }
    }
    fn creators(nodes: usize, i: usize, tail: usize, left: usize, s: &PlectonState, out: &mut PlectonState) {
        if left == 1 {
            *out = std::mem::take(out) + create(i, tail, s);
            return;
        }
        for head in 0..nodes {
            let t = create(head, tail, s);
            if !t.is_zero() {
                creators(nodes, i, head, left - 1, &t, out);
            }
        }
    }
    for i in 0..nodes {
        annihilators(n, nodes, i, i, n, state, &mut out);
    }
    out
}

/// `tr cⁿaⁿ` by propagating a matrix of states: first `Aⁿ` acting on the
/// state, then `Cⁿ` on the left, then the trace.
pub fn path_invariant(n: usize, state: &PlectonState, num_nodes: usize) -> PlectonState {
    assert!(n >= 1, "order must be positive");
    let nodes = node_count(state, num_nodes);
    // w[j][i] = (Aᵗ)_{j i} state
    let mut w: Vec<Vec<PlectonState>> = (0..nodes)
        .map(|j| (0..nodes).map(|i| annihilate(j, i, state)).collect())
        .collect();
    for _ in 1..n {
        w = (0..nodes)
            .map(|j| {
                (0..nodes)
                    .map(|i| (0..nodes).fold(PlectonState::zero(), |acc, b| acc + annihilate(j, b, &w[b][i])))
                    .collect()
            })
            .collect();
    }
    for _ in 0..n {
        w = (0..nodes)
            .map(|a| {
                (0..nodes)
                    .map(|i| (0..nodes).fold(PlectonState::zero(), |acc, j| acc + create(a, j, &w[j][i])))
                    .collect()
            })
            .collect();
    }
    (0..nodes).fold(PlectonState::zero(), |acc, i| acc + w[i][i].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotKind {
    Creator,
    Annihilator,
}

/// One matrix factor of a loop: `C_{row col} = c(row←col)` or
/// `A_{row col} = a(row←col)`, with symbolic index labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub kind: SlotKind,
    pub row: String,
    pub col: String,
}

impl Slot {
    pub fn new(kind: SlotKind, row: &str, col: &str) -> Self {
        Self {
            kind,
            row: row.into(),
            col: col.into(),
        }
    }
}

/// A product of slots whose indices chain and close into a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSpec {
    slots: Vec<Slot>,
}

impl LoopSpec {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        for (k, s) in slots.iter().enumerate() {
            let next = &slots[(k + 1) % slots.len()];
            if s.col != next.row {
                return Err(Error::Shape(format!(
                    "slot {k} ends on index {} but slot {} starts on {}",
                    s.col,
                    (k + 1) % slots.len(),
                    next.row
                )));
            }
        }
        let labels: BTreeSet<&str> = slots.iter().map(|s| s.row.as_str()).collect();
        if labels.len() != slots.len() {
            return Err(Error::Shape("an index is contracted more than once".into()));
        }
        Ok(Self { slots })
    }

    /// `tr cⁿaⁿ` written as a loop.
    pub fn path(n: usize) -> Self {
        let label = |k: usize| format!("i{k}");
        let mut slots = Vec::new();
        for k in 0..2 * n {
            let kind = if k < n {
                SlotKind::Creator
            } else {
                SlotKind::Annihilator
            };
            slots.push(Slot {
                kind,
                row: label(k),
                col: label((k + 1) % (2 * n)),
            });
        }
        Self::new(slots).expect("closed by construction")
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// The loop operator applied to a state: every index assignment,
    /// rightmost slot first.
    pub fn apply(&self, state: &PlectonState, num_nodes: usize) -> PlectonState {
        if self.slots.is_empty() {
            return state.clone();
        }
        let nodes = node_count(state, num_nodes);
        let labels: Vec<&str> = self.slots.iter().map(|s| s.row.as_str()).collect();
        let pos = |l: &str| labels.iter().position(|x| *x == l).expect("validated");
        let mut out = PlectonState::zero();
        let mut assign = vec![0usize; labels.len()];
        loop {
            let mut s = state.clone();
            for slot in self.slots.iter().rev() {
                let (r, c) = (assign[pos(&slot.row)], assign[pos(&slot.col)]);
                s = match slot.kind {
                    SlotKind::Creator => create(r, c, &s),
                    SlotKind::Annihilator => annihilate(r, c, &s),
                };
                if s.is_zero() {
                    break;
                }
            }
            out = out + s;
            // odometer over index assignments
            let mut k = 0;
            while k < assign.len() {
                assign[k] += 1;
                if assign[k] < nodes {
                    break;
                }
                assign[k] = 0;
                k += 1;
            }
            if k == assign.len() {
                return out;
            }
        }
    }
}

/// `⟨s|L s⟩` for the loop operator `L`; the empty loop is the scalar 1.
pub fn loop_invariant(spec: &LoopSpec, state: &PlectonState, num_nodes: usize) -> Rational {
    if spec.slots.is_empty() {
        return Rational::one();
    }
    dual_pair(state, &spec.apply(state, num_nodes))
}

/// Transports every arrow `χ → gχg⁻¹`, extended multiplicatively.
pub fn gl_transport(g: &RatMatrix, state: &PlectonState) -> Result<PlectonState> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch(g.rows(), g.cols()));
    }
    let gi = g.inverse()?;
    let d = g.rows();
    for gen in state.support() {
        if let Some(Atom::Arrow { head, tail }) = gen.as_atom() {
            if *head >= d || *tail >= d {
                return Err(Error::NodeRange {
                    node: (*head).max(*tail),
                    num_nodes: d,
                });
            }
        } else {
            return Err(Error::Domain(format!("{gen} is not an arrow")));
        }
    }
    Ok(state.substitute(|gen| {
        let Some(Atom::Arrow { head, tail }) = gen.as_atom() else {
            return None;
        };
        // g E_{nm} g⁻¹ = Σ_{a,b} g_{an} g⁻¹_{mb} E_{ab}
        let mut image = PlectonState::zero();
        for a in 0..d {
            if g[(a, *head)].is_zero() {
                continue;
            }
            for b in 0..d {
                let c = &g[(a, *head)] * &gi[(*tail, b)];
                if !c.is_zero() {
                    image = image + GradedExtensor::word(vec![arrow(a, b)], c);
                }
            }
        }
        Some(image)
    }))
}

pub fn permutation_matrix(images: &[usize]) -> RatMatrix {
    let d = images.len();
    RatMatrix::from_fn(d, d, |i, j| {
        if images[j] == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExchangeClass {
    /// The image is the state times this scalar.
    Eigen(Rational),
    /// The image shares no basis monomial with the state.
    Permutation,
    Mixed,
}

impl std::fmt::Display for ExchangeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExchangeClass::Eigen(l) => write!(f, "eigenvalue {l}"),
            ExchangeClass::Permutation => write!(f, "basis permutation"),
            ExchangeClass::Mixed => write!(f, "mixed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeOutcome {
    pub image: PlectonState,
    pub self_overlap: Rational,
    pub class: ExchangeClass,
}

/// Swaps generators `a` and `b` wherever they occur, at every nesting
/// level, and classifies the image relative to the state.
pub fn exchange(state: &PlectonState, a: &GeneratorId, b: &GeneratorId) -> ExchangeOutcome {
    let image = relabel(state, &|g: &GeneratorId| {
        if g == a {
            Some(b.clone())
        } else if g == b {
            Some(a.clone())
        } else {
            None
        }
    });
    let self_overlap = dual_pair(state, &image);
    let class = match image.ratio_to(state) {
        Some(l) => ExchangeClass::Eigen(l),
        None if self_overlap.is_zero() && state.terms().all(|(m, _)| image.coefficient(m).is_zero()) => {
            ExchangeClass::Permutation
        }
        None => ExchangeClass::Mixed,
    };
    ExchangeOutcome {
        image,
        self_overlap,
        class,
    }
}

/// Unitizes `x₁ ∨ x₂` of two generators into one generator of the next level.
pub fn pair_unit(x: &GeneratorId, y: &GeneratorId) -> Result<GeneratorId> {
    let w = GradedExtensor::generator(x.clone()).wedge(&GradedExtensor::generator(y.clone()));
    Ok(unitize(&w)?.generator)
}

pub fn exchange_suite() -> SuiteReport {
    let mut r = SuiteReport::new("exchange");
    let tau: Vec<GeneratorId> = (1..=4).map(|i| GeneratorId::named(format!("τ{i}"))).collect();
    let unit12 = unitize(&GradedExtensor::word(
        vec![tau[0].clone(), tau[1].clone()],
        Rational::one(),
    ))
    .expect("nonzero");
    let within = unit12.extensor::<Rational>();
    let out = exchange(&within, &tau[0], &tau[1]);
    r.check(
        "within-chronon",
        out.class == ExchangeClass::Eigen(-Rational::one()),
        format!("swap τ1↔τ2 in |τ1∨τ2⟩: {}", out.class),
    );

    let u13 = pair_unit(&tau[0], &tau[2]).expect("distinct");
    let u24 = pair_unit(&tau[1], &tau[3]).expect("distinct");
    let across = GradedExtensor::generator(u13.clone()).wedge(&GradedExtensor::generator(u24.clone()));
    let out = exchange(&across, &tau[0], &tau[1]);
    r.push(
        Check::new(
            "across-chronon",
            out.class == ExchangeClass::Permutation && out.self_overlap.is_zero(),
            format!("swap τ1↔τ2 across |τ1∨τ3⟩∨|τ2∨τ4⟩ gives {} ({}); the image is another basis monomial rather than the same one with sign +1", out.image, out.class),
        )
        .with("self_overlap", to_f64(&out.self_overlap)),
    );

    let level3 = unitize(&across).expect("nonzero").extensor::<Rational>();
    let out = exchange(&level3, &u13, &u24);
    r.check(
        "level-3-factor-swap",
        out.class == ExchangeClass::Eigen(-Rational::one()),
        format!("swap the two level-2 factors inside the level-3 unit: {}", out.class),
    );
    r
}

/// All loop-free nets on `nodes` nodes, one per arrow subset.
pub fn all_nets(nodes: usize) -> impl Iterator<Item = FiniteNet> {
    let pairs: Vec<(usize, usize)> = (0..nodes)
        .flat_map(|t| (0..nodes).filter(move |&h| h != t).map(move |h| (t, h)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| FiniteNet {
        num_nodes: nodes,
        arrows: pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, p)| *p)
            .collect(),
    })
}

/// Every monomial of grade ≤ `max_grade` over all `nodes²` arrows.
pub fn all_monomials(nodes: usize, max_grade: usize) -> Vec<Vec<GeneratorId>> {
    let gens: Vec<GeneratorId> = (0..nodes)
        .flat_map(|h| (0..nodes).map(move |t| arrow(h, t)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<GeneratorId>)> = vec![(0, Vec::new())];
    for _ in 0..max_grade {
        let mut next = Vec::new();
        for (start, word) in &frontier {
            for (k, g) in gens.iter().enumerate().skip(*start) {
                let mut w = word.clone();
                w.push(g.clone());
                out.push(w.clone());
                next.push((k + 1, w));
            }
        }
        frontier = next;
    }
    out
}

pub fn random_state<R: Rng + ?Sized>(nodes: usize, rng: &mut R) -> PlectonState {
    let mut s = PlectonState::zero();
    for _ in 0..rng.random_range(1..=3) {
        let grade = rng.random_range(0..=3);
        let word: Vec<GeneratorId> = (0..grade)
            .map(|_| arrow(rng.random_range(0..nodes), rng.random_range(0..nodes)))
            .collect();
        s = s + GradedExtensor::word(word, crate::sampling::small_rational(rng));
    }
    s
}

/// Evaluates `N(n)` on the wedge of a net's arrows with both
/// implementations.
pub fn net_invariants(net: &FiniteNet, n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("invariants");
    r.meta("num_nodes", net.num_nodes).meta("order", n);
    let state = net.state();
    let fast = path_invariant(n, &state, net.num_nodes);
    let oracle = path_invariant_oracle(n, &state, net.num_nodes);
    let diag = fast.ratio_to(&state);
    r.check(
        format!("N({n})-matches-oracle"),
        fast == oracle,
        format!("N({n})|net⟩ = {fast}"),
    );
    let mut c = Check::info(
        format!("N({n})-path-correspondence"),
        format!(
            "eigenvalue on the net state: {}; directed {n}-chains in the net: {}",
            diag.as_ref().map_or("not an eigenstate".to_string(), |d| d.to_string()),
            net.chain_count(n)
        ),
    )
    .with("chains", net.chain_count(n) as f64)
    .with("terms", fast.num_terms() as f64);
    if let Some(d) = &diag {
        c = c.with("eigenvalue", to_f64(d));
    }
    r.push(c);
    r.push(Check::info("dual-pair", "⟨net|N(n)|net⟩").with("value", to_f64(&dual_pair(&state, &fast))));
    r
}

/// Exhaustive and randomized checks of the invariants.
pub fn invariants_suite(seed: u64) -> SuiteReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("invariants");
    r.meta("seed", seed);

    let mut checked = 0usize;
    let mut bad = Vec::new();
    for nodes in 1..=5 {
        for word in all_monomials(nodes, 4) {
            let grade = word.len();
            let s = GradedExtensor::word(word, Rational::one());
            if chronon_number(&s, nodes) != s.scale(&Rational::from_integer((grade as i64).into())) {
                bad.push(s.to_string());
            }
            checked += 1;
        }
    }
    r.push(
        Check::new(
            "N(1)-eigenvalue-is-grade",
            bad.is_empty(),
            format!("{checked} monomials, nets up to 5 nodes, grade up to 4; failures {bad:?}"),
        )
        .with("monomials", checked as f64),
    );

    for n in 1..=3 {
        let mut nets = 0usize;
        let mut mismatches = Vec::new();
        for nodes in 1..=4 {
            for net in all_nets(nodes) {
                let s = net.state();
                if path_invariant(n, &s, nodes) != path_invariant_oracle(n, &s, nodes) {
                    mismatches.push(format!("{:?}", net.arrows));
                }
                nets += 1;
            }
        }
        r.push(
            Check::new(
                format!("N({n})-matches-oracle"),
                mismatches.is_empty(),
                format!("{nets} nets up to 4 nodes; mismatches {mismatches:?}"),
            )
            .with("nets", nets as f64),
        );
    }

    let mut ok = 0;
    for _ in 0..20 {
        let g = RatMatrix::random_invertible(3, &mut rng);
        let s = random_state(3, &mut rng);
        let lhs = chronon_number(&gl_transport(&g, &s).expect("invertible"), 3);
        let rhs = gl_transport(&g, &chronon_number(&s, 3)).expect("invertible");
        ok += (lhs == rhs) as usize;
    }
    r.push(
        Check::new(
            "N(1)-commutes-with-transport",
            ok == 20,
            format!("{ok}/20 random g ∈ GL(3, ℚ)"),
        )
        .with("cases", 20.0),
    );

    let mut ok = 0;
    for _ in 0..10 {
        let g1 = RatMatrix::random_invertible(3, &mut rng);
        let g2 = RatMatrix::random_invertible(3, &mut rng);
        let s = random_state(3, &mut rng);
        let lhs = gl_transport(&g2, &gl_transport(&g1, &s).expect("invertible")).expect("invertible");
        ok += (lhs == gl_transport(&(&g2 * &g1), &s).expect("invertible")) as usize;
    }
    r.check("transport-is-representation", ok == 10, format!("{ok}/10 random pairs"));

    let path3 = FiniteNet::path(2);
    let n2 = path_invariant(2, &path3.state(), 3);
    r.push(
        Check::new(
            "path3-N(2)",
            n2 == path_invariant_oracle(2, &path3.state(), 3),
            format!("N(2)|0→1→2⟩ = {n2}"),
        )
        .with("dual_pair", to_f64(&dual_pair(&path3.state(), &n2))),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn creator_annihilator_examples() {
        let one = PlectonState::one();
        assert_eq!(annihilate(1, 0, &create(0, 1, &one)), one);
        assert!(create(0, 1, &create(0, 1, &one)).is_zero());
        // {a, c} = 1 on the one-arrow universe {1, x}
        let x = GradedExtensor::generator(arrow(0, 1));
        for s in [one.clone(), x] {
            let anti = annihilate(1, 0, &create(0, 1, &s)) + create(0, 1, &annihilate(1, 0, &s));
            assert_eq!(anti, s);
        }
    }

    #[test]
    fn number_operator_counts_grade() {
        let s = GradedExtensor::word(vec![arrow(0, 1), arrow(1, 2)], int(1));
        assert_eq!(chronon_number(&s, 3), s.scale(&int(2)));
        assert!(chronon_number(&PlectonState::one(), 3).is_zero());
    }

    #[test]
    fn path_invariants_agree() {
        let path3 = FiniteNet::path(2);
        for n in 1..=3 {
            assert_eq!(
                path_invariant(n, &path3.state(), 3),
                path_invariant_oracle(n, &path3.state(), 3)
            );
        }
        let disjoint = FiniteNet::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(path_invariant_oracle(2, &disjoint.state(), 4).is_zero());
        assert!(path_invariant(2, &disjoint.state(), 4).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let s = random_state(3, &mut rng);
            assert_eq!(path_invariant(1, &s, 3), chronon_number(&s, 3));
        }
    }

    #[test]
    fn loops() {
        let s = FiniteNet::path(2).state();
        assert_eq!(LoopSpec::path(1).apply(&s, 3), chronon_number(&s, 3));
        assert_eq!(loop_invariant(&LoopSpec::path(1), &s, 3), int(2));
        assert_eq!(loop_invariant(&LoopSpec::new(vec![]).unwrap(), &s, 3), int(1));
        assert_eq!(loop_invariant(&LoopSpec::path(1), &PlectonState::one(), 3), int(0));
        let open = LoopSpec::new(vec![
            Slot::new(SlotKind::Creator, "i", "j"),
            Slot::new(SlotKind::Annihilator, "j", "k"),
        ]);
        assert!(matches!(open, Err(Error::Shape(_))));
        assert_eq!(LoopSpec::path(2).apply(&s, 3), path_invariant(2, &s, 3));
    }

    #[test]
    fn transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = random_state(3, &mut rng);
        assert_eq!(gl_transport(&RatMatrix::identity(3), &s).unwrap(), s);
        let g1 = RatMatrix::random_invertible(3, &mut rng);
        let g2 = RatMatrix::random_invertible(3, &mut rng);
        let lhs = gl_transport(&g2, &gl_transport(&g1, &s).unwrap()).unwrap();
        assert_eq!(lhs, gl_transport(&(&g2 * &g1), &s).unwrap());
        let t = gl_transport(&g1, &s).unwrap();
        assert_eq!(
            chronon_number(&t, 3),
            gl_transport(&g1, &chronon_number(&s, 3)).unwrap()
        );
        assert_eq!(gl_transport(&RatMatrix::zeros(3, 3), &s), Err(Error::Singular));
        // permutation relabels the net up to sign
        let net = FiniteNet::path(2);
        let perm = [2, 0, 1];
        let moved = gl_transport(&permutation_matrix(&perm), &net.state()).unwrap();
        let relabeled = FiniteNet::new(3, net.arrows.iter().map(|&(t, h)| (perm[t], perm[h])).collect()).unwrap();
        let ratio = moved.ratio_to(&relabeled.state()).unwrap();
        assert!(ratio == int(1) || ratio == int(-1));
    }

    #[test]
    fn suite_passes() {
        let t = std::time::Instant::now();
        let r = invariants_suite(3);
        eprintln!("invariants suite {:?}", t.elapsed());
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn exchanges() {
        let r = exchange_suite();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let net = FiniteNet::from_json(r#"{"num_nodes": 3, "arrows": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(net, FiniteNet::path(2));
        assert!(matches!(
            FiniteNet::from_json(r#"{"num_nodes": 2, "arrows": [[0, 2]]}"#),
            Err(Error::NodeRange { node: 2, num_nodes: 2 })
        ));
        assert!(matches!(FiniteNet::from_json("{"), Err(Error::Parse(_))));
    }
}
