//! Boundary points, asymptotic equivalence and the self-similarity graph.
//!
//! Left-infinite words `⋯x_2 x_1` are identified when some left-infinite
//! path `⋯e_2 e_1` in the Moore diagram of the nucleus carries the labels
//! `⋯(x_2|y_2)(x_1|y_1)`, i.e. states `q_i` with `q_i(x_i) = y_i` and
//! `q_i|_{x_i} = q_{i-1}`. For eventually periodic words this is a cycle
//! reachability question in a finite graph and is decided exactly.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Letter};
use crate::automaton::{MealyAutomaton, StateId};
use crate::element::CanonicalElement;
use crate::error::{Error, Result};
use crate::nucleus::{NucleusResult, Verdict};
use crate::schreier::{
    build_schreier, pointed_component, RootedGraph, SchreierLimits, SimplicialGraph,
};

/// An eventually periodic left-infinite word `⋯(period)(period)(preperiod)`.
///
/// Both parts are stored root-first: `preperiod[0]` is `x_1`, the letter
/// nearest the root, and the period continues leftwards from the end of
/// the preperiod. Values are always in canonical form (minimal period,
/// shortest preperiod).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPoint {
    preperiod: Vec<Letter>,
    period: Vec<Letter>,
}

impl BoundaryPoint {
    pub fn new(preperiod: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidBoundaryPoint {
                input: format!("{preperiod:?}"),
                reason: "period must be nonempty".into(),
            });
        }
        Ok(Self::canonical(preperiod, period))
    }

    /// The constant word `⋯xxx`.
    pub fn constant(x: Letter) -> Self {
        Self {
            preperiod: Vec::new(),
            period: vec![x],
        }
    }

    fn canonical(mut preperiod: Vec<Letter>, mut period: Vec<Letter>) -> Self {
        let len = period.len();
        if let Some(d) = (1..=len)
            .find(|&d| len.is_multiple_of(d) && (d..len).all(|i| period[i] == period[i - d]))
        {
            period.truncate(d);
        }
        while let (Some(&last), Some(&tail)) = (preperiod.last(), period.last()) {
            if last != tail {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Self { preperiod, period }
    }

    pub fn preperiod(&self) -> &[Letter] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// `x_i` for `i ≥ 1`.
    pub fn letter(&self, i: usize) -> Letter {
        let i = i - 1;
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// `x_1 x_2 ⋯ x_n`, the tree vertex at level `n` under this point.
    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (1..=n).map(|i| self.letter(i)).collect()
    }

    pub fn check(&self, alphabet: Alphabet) -> Result<()> {
        alphabet.check_word(&self.preperiod)?;
        alphabet.check_word(&self.period)
    }

    /// Parses `PERIOD^w PREPERIOD`, written left to right as the
    /// left-infinite word reads: `10^w 0` is `⋯1010·0`.
    pub fn parse(text: &str) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidBoundaryPoint {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let (period, preperiod) = text
            .split_once("^w")
            .ok_or_else(|| invalid("expected `PERIOD^w PREPERIOD`"))?;
        let letters = |s: &str| -> Result<Vec<Letter>> {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(36)
                        .map(|d| d as Letter)
                        .ok_or_else(|| invalid("letters are digits 0-9 or a-z"))
                })
                .rev()
                .collect()
        };
        let period = letters(period)?;
        if period.is_empty() {
            return Err(invalid("period must be nonempty"));
        }
        Ok(Self::canonical(letters(preperiod)?, period))
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |w: &[Letter]| -> String {
            w.iter()
                .rev()
                .map(|&x| std::char::from_digit(x as u32, 36).unwrap_or('?'))
                .collect()
        };
        write!(f, "{}^w", digits(&self.period))?;
        if !self.preperiod.is_empty() {
            write!(f, " {}", digits(&self.preperiod))?;
        }
        Ok(())
    }
}

impl FromStr for BoundaryPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// The Moore diagram of a nucleus: element `i` maps letter `x` to
/// `outputs[i][x]` and has section `sections[i][x]` inside the set.
#[derive(Debug, Clone)]
pub struct NucleusDiagram {
    degree: usize,
    elements: Vec<CanonicalElement>,
    outputs: Vec<Vec<Letter>>,
    sections: Vec<Vec<usize>>,
}

impl NucleusDiagram {
    pub fn new(elements: &[CanonicalElement]) -> Result<Self> {
        let degree = elements
            .first()
            .map(CanonicalElement::degree)
            .ok_or_else(|| Error::NucleusUnavailable("empty nucleus".into()))?;
        let index: HashMap<&CanonicalElement, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut outputs = Vec::with_capacity(elements.len());
        let mut sections = Vec::with_capacity(elements.len());
        for e in elements {
            outputs.push((0..degree).map(|x| e.act_letter(x)).collect());
            sections.push(
                (0..degree)
                    .map(|x| {
                        index.get(&e.section_at(x)).copied().ok_or_else(|| {
                            Error::NucleusUnavailable("set is not closed under sections".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Self {
            degree,
            elements: elements.to_vec(),
            outputs,
            sections,
        })
    }

    pub fn from_result(result: &NucleusResult) -> Result<Self> {
        match &result.verdict {
            Verdict::Contracting(n) => Self::new(n),
            Verdict::BoundExceeded { bound, witnesses } => Err(Error::NucleusUnavailable(format!(
                "search stopped at {bound:?} with {witnesses} candidates"
            ))),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CanonicalElement] {
        &self.elements
    }

    pub fn output(&self, state: usize, x: Letter) -> Letter {
        self.outputs[state][x]
    }

    pub fn section(&self, state: usize, x: Letter) -> usize {
        self.sections[state][x]
    }

    fn check(&self, p: &BoundaryPoint) -> Result<()> {
        p.check(Alphabet::new(self.degree)?)
    }
}

/// Certificate for `p ~ q`: nucleus states `q_1, q_2, ⋯` given as a finite
/// tail followed by a cycle repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub tail: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl EquivalenceWitness {
    /// `q_i` for `i ≥ 1`.
    pub fn state(&self, i: usize) -> usize {
        let i = i - 1;
        if i < self.tail.len() {
            self.tail[i]
        } else {
            self.cycle[(i - self.tail.len()) % self.cycle.len()]
        }
    }

    /// Re-checks every transition: `q_i(x_i) = y_i` and
    /// `q_{i+1}|_{x_{i+1}} = q_i`, over enough positions to cover the tail
    /// and a full common period.
    pub fn validate(&self, diagram: &NucleusDiagram, p: &BoundaryPoint, q: &BoundaryPoint) -> bool {
        if self.cycle.is_empty() {
            return false;
        }
        let span = [p.preperiod.len(), q.preperiod.len(), self.tail.len()]
            .into_iter()
            .max()
            .unwrap_or(0)
            + lcm(lcm(p.period.len(), q.period.len()), self.cycle.len())
            + 1;
        (1..=span).all(|i| {
            let s = self.state(i);
            s < diagram.len()
                && diagram.output(s, p.letter(i)) == q.letter(i)
                && diagram.section(self.state(i + 1), p.letter(i + 1)) == s
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Positions `1..=pre+period` with position `pre+period` wrapping to
/// `pre+1`, so a phase determines the input letter.
struct Phases {
    pre: usize,
    period: usize,
}

impl Phases {
    fn new(points: &[&BoundaryPoint]) -> Self {
        let pre = points.iter().map(|p| p.preperiod.len()).max().unwrap_or(0);
        let period = points.iter().map(|p| p.period.len()).fold(1, lcm);
        Self { pre, period }
    }

    fn count(&self) -> usize {
        self.pre + self.period
    }

    fn next(&self, phase: usize) -> usize {
        if phase == self.count() {
            self.pre + 1
        } else {
            phase + 1
        }
    }
}

/// Decides `p ~ q` and returns a witness when they are equivalent.
pub fn asymptotic_equivalent(
    diagram: &NucleusDiagram,
    p: &BoundaryPoint,
    q: &BoundaryPoint,
) -> Result<Option<EquivalenceWitness>> {
    diagram.check(p)?;
    diagram.check(q)?;
    let phases = Phases::new(&[p, q]);
    let m = diagram.len();
    let node = |phase: usize, s: usize| (phase - 1) * m + s;
    let total = phases.count() * m;

    // node (i, s): q_i = s with q_i(x_i) = y_i; successor (i+1, t) needs
    // t|_{x_{i+1}} = s
    let valid = |phase: usize, s: usize| diagram.output(s, p.letter(phase)) == q.letter(phase);
    let successors = |phase: usize, s: usize| -> Vec<usize> {
        let next = phases.next(phase);
        (0..m)
            .filter(|&t| valid(next, t) && diagram.section(t, p.letter(next)) == s)
            .collect()
    };

    // alive = has an infinite forward path; compute by iterated pruning
    let mut alive: Vec<bool> = (0..total).map(|n| valid(n / m + 1, n % m)).collect();
    loop {
        let mut changed = false;
        for n in 0..total {
            if alive[n] {
                let (phase, s) = (n / m + 1, n % m);
                if !successors(phase, s)
                    .iter()
                    .any(|&t| alive[node(phases.next(phase), t)])
                {
                    alive[n] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let Some(start) = (0..m).find(|&s| alive[node(1, s)]) else {
        return Ok(None);
    };
    // walk alive nodes until one repeats
    let mut path: Vec<(usize, usize)> = vec![(1, start)];
    let mut seen: HashMap<(usize, usize), usize> = HashMap::from([((1, start), 0)]);
    loop {
        let &(phase, s) = path.last().expect("nonempty");
        let next = phases.next(phase);
        let t = successors(phase, s)
            .into_iter()
            .find(|&t| alive[node(next, t)])
            .expect("alive nodes have alive successors");
        if let Some(&at) = seen.get(&(next, t)) {
            let states: Vec<usize> = path.iter().map(|&(_, s)| s).collect();
            return Ok(Some(EquivalenceWitness {
                tail: states[..at].to_vec(),
                cycle: states[at..].to_vec(),
            }));
        }
        seen.insert((next, t), path.len());
        path.push((next, t));
    }
}

/// Every eventually periodic point equivalent to `p`, sorted.
pub fn equivalence_class(
    diagram: &NucleusDiagram,
    p: &BoundaryPoint,
) -> Result<Vec<BoundaryPoint>> {
    diagram.check(p)?;
    let phases = Phases::new(&[p]);
    let m = diagram.len();
    let k = diagram.degree;

    // Subset construction over the output letter: a node is (phase, set of
    // nucleus states consistent with y_1..y_i). Infinite paths through
    // nonempty sets are exactly the equivalent points.
    let step = |phase: usize, set: &[usize], y: Letter| -> Vec<usize> {
        let next = phases.next(phase);
        let x = p.letter(next);
        (0..m)
            .filter(|&t| diagram.output(t, x) == y && set.contains(&diagram.section(t, x)))
            .collect()
    };
    type Node = (usize, Vec<usize>);
    let mut ids: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut edges: Vec<Vec<(Letter, usize)>> = Vec::new();
    let mut starts: Vec<(Letter, usize)> = Vec::new();

    let mut intern =
        |n: Node, nodes: &mut Vec<Node>, edges: &mut Vec<Vec<(Letter, usize)>>| -> (usize, bool) {
            if let Some(&i) = ids.get(&n) {
                return (i, false);
            }
            let i = nodes.len();
            ids.insert(n.clone(), i);
            nodes.push(n);
            edges.push(Vec::new());
            (i, true)
        };
    let mut stack = Vec::new();
    let x1 = p.letter(1);
    for y in 0..k {
        let set: Vec<usize> = (0..m).filter(|&s| diagram.output(s, x1) == y).collect();
        if set.is_empty() {
            continue;
        }
        let (i, fresh) = intern((1, set), &mut nodes, &mut edges);
        starts.push((y, i));
        if fresh {
            stack.push(i);
        }
    }
    while let Some(i) = stack.pop() {
        let (phase, set) = nodes[i].clone();
        for y in 0..k {
            let next = step(phase, &set, y);
            if next.is_empty() {
                continue;
            }
            let (j, fresh) = intern((phases.next(phase), next), &mut nodes, &mut edges);
            edges[i].push((y, j));
            if fresh {
                stack.push(j);
            }
        }
    }

    // prune nodes without an infinite continuation
    let n = nodes.len();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if alive[i] && !edges[i].iter().any(|&(_, j)| alive[j]) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut class = BTreeSet::new();
    let limit = 4 * m.max(1) * phases.count() + 16;
    for &(y, start) in &starts {
        if !alive[start] {
            continue;
        }
        let mut letters = vec![y];
        let mut path = vec![start];
        enumerate(&edges, &alive, &mut path, &mut letters, &mut class, limit)?;
    }
    Ok(class.into_iter().collect())
}

/// Depth-first enumeration of the infinite paths of a finite deterministic
/// graph. A repeated node closes a cycle; a class is finite only if the
/// path then has no alternative but to repeat that cycle.
fn enumerate(
    edges: &[Vec<(Letter, usize)>],
    alive: &[bool],
    path: &mut Vec<usize>,
    letters: &mut Vec<Letter>,
    out: &mut BTreeSet<BoundaryPoint>,
    limit: usize,
) -> Result<()> {
    let current = *path.last().expect("nonempty");
    let choices: Vec<(Letter, usize)> = edges[current]
        .iter()
        .copied()
        .filter(|&(_, j)| alive[j])
        .collect();
    for (y, j) in choices {
        if let Some(at) = path.iter().position(|&v| v == j) {
            // the cycle path[at..] must be the only way forward from its nodes
            let cycle_nodes = &path[at..];
            let forced = cycle_nodes.iter().enumerate().all(|(offset, &v)| {
                let succ = if offset + 1 < cycle_nodes.len() {
                    cycle_nodes[offset + 1]
                } else {
                    j
                };
                edges[v]
                    .iter()
                    .filter(|&&(_, w)| alive[w])
                    .all(|&(_, w)| w == succ)
            });
            if !forced {
                return Err(Error::InfiniteClass);
            }
            // letters[i] labels the edge into path[i]; the cycle starts at `at`
            let pre = letters[..at].to_vec();
            let per = letters[at..].to_vec();
            out.insert(BoundaryPoint::canonical(pre, per));
            continue;
        }
        if path.len() > limit || out.len() > limit {
            return Err(Error::InfiniteClass);
        }
        path.push(j);
        letters.push(y);
        enumerate(edges, alive, path, letters, out, limit)?;
        path.pop();
        letters.pop();
    }
    Ok(())
}

/// Which kind of self-similarity graph edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// `{x v, v}`.
    Vertical,
    /// `{v, s(v)}` within one level.
    Horizontal,
}

/// The self-similarity graph truncated to words of length at most `depth`.
/// Vertex ids run level by level, each level in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimilarityGraph {
    alphabet: Alphabet,
    depth: usize,
    offsets: Vec<usize>,
    edges: Vec<(u32, u32, EdgeKind)>,
}

impl SelfSimilarityGraph {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        *self.offsets.last().expect("offsets has depth + 2 entries")
    }

    pub fn vertex_id(&self, word: &[Letter]) -> u32 {
        (self.offsets[word.len()] + self.alphabet.word_index(word)) as u32
    }

    pub fn level_of(&self, vertex: u32) -> usize {
        self.offsets
            .partition_point(|&o| o <= vertex as usize)
            .saturating_sub(1)
    }

    pub fn vertex_word(&self, vertex: u32) -> Vec<Letter> {
        let level = self.level_of(vertex);
        self.alphabet
            .word_at(vertex as usize - self.offsets[level], level)
    }

    pub fn vertex_label(&self, vertex: u32) -> String {
        self.alphabet.format_word(&self.vertex_word(vertex))
    }

    pub fn edges(&self) -> &[(u32, u32, EdgeKind)] {
        &self.edges
    }

    pub fn graph(&self) -> SimplicialGraph {
        SimplicialGraph::from_pairs(
            self.vertex_count(),
            self.edges.iter().map(|&(u, v, _)| (u, v)),
        )
    }

    /// Horizontal edges at `level`, in that level's own vertex numbering.
    pub fn horizontal_slice(&self, level: usize) -> Vec<(u32, u32)> {
        let base = self.offsets[level] as u32;
        let mut slice: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|&&(u, _, kind)| kind == EdgeKind::Horizontal && self.level_of(u) == level)
            .map(|&(u, v, _)| (u - base, v - base))
            .collect();
        slice.sort_unstable();
        slice
    }
}

pub fn self_similarity_graph(
    aut: &MealyAutomaton,
    gens: &[StateId],
    depth: usize,
    limits: SchreierLimits,
) -> Result<SelfSimilarityGraph> {
    if depth == 0 {
        return Err(Error::TooLarge {
            what: "self-similarity graph depth (minimum 1)",
            limit: 1,
            requested: 0,
        });
    }
    let alphabet = aut.alphabet();
    let mut offsets = vec![0usize];
    for level in 0..=depth {
        let n = limits.check(alphabet, level)?;
        let total = offsets[level] + n;
        if total > limits.max_vertices {
            return Err(Error::ResourceCap {
                level,
                vertices: total as u128,
                cap: limits.max_vertices,
            });
        }
        offsets.push(total);
    }
    let mut edges = Vec::new();
    for level in 0..=depth {
        if level > 0 {
            // x·v at `level` sits above v at `level - 1`
            let below = alphabet.level_size(level - 1).expect("checked");
            for idx in 0..alphabet.level_size(level).expect("checked") {
                let v = idx % below;
                let upper = (offsets[level] + idx) as u32;
                let lower = (offsets[level - 1] + v) as u32;
                edges.push((lower.min(upper), lower.max(upper), EdgeKind::Vertical));
            }
        }
        let schreier = build_schreier(aut, gens, level, limits)?;
        let base = offsets[level] as u32;
        for &(u, v) in schreier.simplicial().edges() {
            edges.push((base + u, base + v, EdgeKind::Horizontal));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(SelfSimilarityGraph {
        alphabet,
        depth,
        offsets,
        edges,
    })
}

/// Pointed components `(Γ_n, ξ_n)` for `n = 1..=n_max`.
pub fn gh_sequence(
    aut: &MealyAutomaton,
    gens: &[StateId],
    xi: &BoundaryPoint,
    n_max: usize,
    limits: SchreierLimits,
) -> Result<Vec<RootedGraph>> {
    (1..=n_max)
        .map(|n| pointed_component(aut, gens, xi, n, limits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_point_syntax() {
        let p = BoundaryPoint::parse("10^w 0").unwrap();
        assert_eq!(p.prefix(5), vec![0, 0, 1, 0, 1]);
        assert_eq!(p.preperiod(), &[0]);
        // ⋯0101·0 is ⋯1010 once the preperiod is absorbed
        assert_eq!(
            BoundaryPoint::parse("01^w 0").unwrap(),
            BoundaryPoint::parse("10^w").unwrap()
        );
        let q = BoundaryPoint::parse("1^w").unwrap();
        assert_eq!(q.prefix(3), vec![1, 1, 1]);
        assert_eq!(q.to_string(), "1^w");
        let r = BoundaryPoint::parse("11^w 10").unwrap();
        assert_eq!(r.to_string(), "1^w 0");
        assert_eq!(BoundaryPoint::parse(&r.to_string()).unwrap(), r);
        assert!(BoundaryPoint::parse("^w 1").is_err());
        assert!(BoundaryPoint::parse("101").is_err());
    }

    #[test]
    fn canonical_form_is_minimal() {
        let p = BoundaryPoint::new(vec![1, 0, 1], vec![0, 1, 0, 1]).unwrap();
        // x = 1 0 1 0 1 0 1 ... = ⋯0101 with period (1 0)... rooted at 1
        assert_eq!(p.period().len(), 2);
        assert!(p.preperiod().is_empty());
        for i in 1..20 {
            assert_eq!(p.letter(i), if i % 2 == 1 { 1 } else { 0 });
        }
    }

    use crate::group::AutomatonGroup;
    use crate::nucleus::{compute_nucleus, NucleusBounds};
    use crate::parser::parse;

    const ODOMETER: &str = "alphabet 2\na = (0 1)(e, a)\ne = id(e, e)\ngens a";

    fn diagram(text: &str) -> NucleusDiagram {
        let g = AutomatonGroup::from_document(&parse(text).unwrap());
        NucleusDiagram::from_result(&compute_nucleus(&g, NucleusBounds::default())).unwrap()
    }

    fn point(s: &str) -> BoundaryPoint {
        s.parse().unwrap()
    }

    #[test]
    fn odometer_glues_constant_words() {
        let d = diagram(ODOMETER);
        let w = asymptotic_equivalent(&d, &point("1^w"), &point("0^w"))
            .unwrap()
            .unwrap();
        assert!(w.validate(&d, &point("1^w"), &point("0^w")));
        assert!(asymptotic_equivalent(&d, &point("01^w"), &point("0^w"))
            .unwrap()
            .is_none());
        assert_eq!(
            equivalence_class(&d, &point("0^w")).unwrap(),
            vec![point("0^w"), point("1^w")]
        );
        assert_eq!(
            equivalence_class(&d, &point("1^w 0")).unwrap(),
            vec![point("1^w 0"), point("0^w 1")]
        );
        assert_eq!(
            equivalence_class(&d, &point("01^w")).unwrap(),
            vec![point("01^w")]
        );
    }

    #[test]
    fn witness_rejects_tampering() {
        let d = diagram(ODOMETER);
        let (p, q) = (point("1^w"), point("0^w"));
        let mut w = asymptotic_equivalent(&d, &p, &q).unwrap().unwrap();
        assert!(!w.validate(&d, &q, &point("01^w")));
        w.cycle = vec![];
        assert!(!w.validate(&d, &p, &q));
    }

    #[test]
    fn letters_outside_alphabet_are_rejected() {
        let d = diagram(ODOMETER);
        assert!(asymptotic_equivalent(&d, &point("2^w"), &point("0^w")).is_err());
    }

    #[test]
    fn self_similarity_graph_counts() {
        let doc = parse(ODOMETER).unwrap();
        let (aut, gens) = doc.to_automaton();
        let g = self_similarity_graph(&aut, &gens, 3, SchreierLimits::default()).unwrap();
        assert_eq!(g.vertex_count(), 1 + 2 + 4 + 8);
        let vertical = g
            .edges()
            .iter()
            .filter(|e| e.2 == EdgeKind::Vertical)
            .count();
        assert_eq!(vertical, 2 + 4 + 8);
        // the odometer acts on each level as one cycle
        assert_eq!(g.horizontal_slice(3).len(), 8);
        assert_eq!(g.horizontal_slice(1), vec![(0, 1)]);
        assert_eq!(g.graph().connected_components().len(), 1);
        let v = g.vertex_id(&[1, 0]);
        assert_eq!(g.level_of(v), 2);
        assert_eq!(g.vertex_word(v), vec![1, 0]);
    }

    #[test]
    fn gh_sequence_is_pointed_at_prefixes() {
        let doc = parse(ODOMETER).unwrap();
        let (aut, gens) = doc.to_automaton();
        let seq = gh_sequence(&aut, &gens, &point("1^w"), 4, SchreierLimits::default()).unwrap();
        assert_eq!(seq.len(), 4);
        for (n, r) in seq.iter().enumerate() {
            assert_eq!(r.vertices.len(), 1 << (n + 1));
        }
    }
}
