//! Level Schreier graphs `Γ_n` of the action on `A^n`.
//!
//! Vertices are the words of length `n` in lexicographic order (first letter
//! most significant). Every generator contributes one arrow `v → s(v)` per
//! vertex, so a generator's arrows form a permutation of the vertex set.

use std::collections::{BTreeMap, VecDeque};

use crate::alphabet::{Alphabet, Letter};
use crate::automaton::{MealyAutomaton, StateId};
use crate::error::{Error, Result};
use crate::limit::BoundaryPoint;

/// Environment variable overriding [`SchreierLimits::max_vertices`].
pub const VERTEX_CAP_ENV: &str = "WREATH_VERTEX_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchreierLimits {
    pub max_vertices: usize,
}

impl Default for SchreierLimits {
    fn default() -> Self {
        Self {
            max_vertices: 1 << 24,
        }
    }
}

impl SchreierLimits {
    /// Defaults, with the vertex cap taken from [`VERTEX_CAP_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(VERTEX_CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|max_vertices| Self { max_vertices })
                .map_err(|_| Error::Malformed(format!("{VERTEX_CAP_ENV}=`{v}` is not an integer"))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check(&self, alphabet: Alphabet, level: usize) -> Result<usize> {
        match alphabet.level_size(level) {
            Some(n) if n <= self.max_vertices && n <= u32::MAX as usize => Ok(n),
            _ => Err(Error::ResourceCap {
                level,
                vertices: alphabet.level_size_wide(level),
                cap: self.max_vertices,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: u32,
    pub target: u32,
    pub generator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSchreierGraph {
    alphabet: Alphabet,
    level: usize,
    labels: Vec<String>,
    /// `targets[s][v] = s(v)`.
    targets: Vec<Vec<u32>>,
}

/// Action tables of every state reachable from `roots` on `A^level`,
/// computed level by level from `q(xw) = q(x) q|_x(w)`.
fn level_tables(aut: &MealyAutomaton, roots: &[StateId], level: usize) -> Vec<Option<Vec<u32>>> {
    let k = aut.alphabet().size();
    let reach = aut.reachable(roots);
    let mut tables: Vec<Option<Vec<u32>>> = vec![None; aut.len()];
    for &q in &reach {
        tables[q.0] = Some(vec![0]);
    }
    let mut block = 1usize;
    for _ in 0..level {
        let mut next: Vec<Option<Vec<u32>>> = vec![None; aut.len()];
        for &q in &reach {
            let mut t = Vec::with_capacity(block * k);
            for x in 0..k {
                let y = aut.output(q, x) as u32;
                let sub = tables[aut.section(q, x).0].as_ref().expect("reachable");
                t.extend(sub.iter().map(|&w| y * block as u32 + w));
            }
            next[q.0] = Some(t);
        }
        tables = next;
        block *= k;
    }
    tables
}

pub fn build_schreier(
    aut: &MealyAutomaton,
    gens: &[StateId],
    level: usize,
    limits: SchreierLimits,
) -> Result<LabeledSchreierGraph> {
    gens.iter().try_for_each(|&g| aut.check_state(g))?;
    limits.check(aut.alphabet(), level)?;
    let tables = level_tables(aut, gens, level);
    let targets = gens
        .iter()
        .map(|g| {
            tables[g.0]
                .clone()
                .expect("generators are reachable from themselves")
        })
        .collect();
    Ok(LabeledSchreierGraph {
        alphabet: aut.alphabet(),
        level,
        labels: gens.iter().map(|&g| aut.name(g).to_string()).collect(),
        targets,
    })
}

impl LabeledSchreierGraph {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.targets.first().map_or_else(
            || self.alphabet.level_size(self.level).unwrap_or(0),
            Vec::len,
        )
    }

    pub fn arrow_count(&self) -> usize {
        self.targets.iter().map(Vec::len).sum()
    }

    pub fn generator_targets(&self, generator: usize) -> &[u32] {
        &self.targets[generator]
    }

    pub fn vertex_word(&self, v: u32) -> Vec<Letter> {
        self.alphabet.word_at(v as usize, self.level)
    }

    pub fn vertex_label(&self, v: u32) -> String {
        self.alphabet.format_index(v as usize, self.level)
    }

    /// Arrows grouped by generator, then by source vertex.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.targets.iter().enumerate().flat_map(|(generator, t)| {
            t.iter().enumerate().map(move |(source, &target)| Arrow {
                source: source as u32,
                target,
                generator,
            })
        })
    }

    pub fn symbolic_matrix(&self) -> SymbolicAdjacencyMatrix {
        let n = self.vertex_count();
        let mut rows: Vec<BTreeMap<u32, Vec<usize>>> = vec![BTreeMap::new(); n];
        for a in self.arrows() {
            rows[a.source as usize]
                .entry(a.target)
                .or_default()
                .push(a.generator);
        }
        SymbolicAdjacencyMatrix {
            labels: self.labels.clone(),
            rows: rows.into_iter().map(|r| r.into_iter().collect()).collect(),
        }
    }

    /// Underlying simple graph: loops and multiplicities forgotten.
    pub fn simplicial(&self) -> SimplicialGraph {
        SimplicialGraph::from_pairs(
            self.vertex_count(),
            self.arrows().map(|a| (a.source, a.target)),
        )
    }

    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        self.simplicial().connected_components()
    }
}

/// Sparse symbolic adjacency matrix: entry `(i, j)` is the multiset of
/// generators carrying `v_i` to `v_j`; absent entries are `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicAdjacencyMatrix {
    labels: Vec<String>,
    rows: Vec<Vec<(u32, Vec<usize>)>>,
}

impl SymbolicAdjacencyMatrix {
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Generator indices at `(i, j)`, empty for a zero entry.
    pub fn entry(&self, i: usize, j: usize) -> &[usize] {
        self.rows[i]
            .binary_search_by_key(&(j as u32), |(c, _)| *c)
            .map(|p| self.rows[i][p].1.as_slice())
            .unwrap_or(&[])
    }

    pub fn row(&self, i: usize) -> &[(u32, Vec<usize>)] {
        &self.rows[i]
    }

    pub fn row_cardinality(&self, i: usize) -> usize {
        self.rows[i].iter().map(|(_, l)| l.len()).sum()
    }

    /// `a+b` style rendering of an entry, `0` when empty.
    pub fn render_entry(&self, i: usize, j: usize) -> String {
        let e = self.entry(i, j);
        if e.is_empty() {
            "0".to_string()
        } else {
            e.iter()
                .map(|&g| self.labels[g].as_str())
                .collect::<Vec<_>>()
                .join("+")
        }
    }
}

/// Undirected graph without loops or multiple edges. Edges are stored as
/// sorted `(u, v)` pairs with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialGraph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl SimplicialGraph {
    pub fn from_pairs(vertex_count: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut edges: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self {
            vertex_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Compressed adjacency: `(offsets, neighbours)`.
    pub fn adjacency(&self) -> (Vec<usize>, Vec<u32>) {
        let mut degree = vec![0usize; self.vertex_count + 1];
        for &(u, v) in &self.edges {
            degree[u as usize + 1] += 1;
            degree[v as usize + 1] += 1;
        }
        for i in 0..self.vertex_count {
            degree[i + 1] += degree[i];
        }
        let offsets = degree.clone();
        let mut fill = degree;
        let mut neighbours = vec![0u32; self.edges.len() * 2];
        for &(u, v) in &self.edges {
            neighbours[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbours[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        (offsets, neighbours)
    }

    /// Breadth-first partition, components ordered by least vertex and
    /// each listed in ascending order.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let (offsets, neighbours) = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start as u32];
            let mut head = 0;
            while head < component.len() {
                let u = component[head] as usize;
                head += 1;
                for &v in &neighbours[offsets[u]..offsets[u + 1]] {
                    if !std::mem::replace(&mut seen[v as usize], true) {
                        component.push(v);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Subgraph induced on the component of `root`, renumbered in
    /// ascending order of the original indices.
    pub fn component_of(&self, root: u32) -> (Vec<u32>, SimplicialGraph, u32) {
        let (offsets, neighbours) = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        seen[root as usize] = true;
        let mut queue = VecDeque::from([root]);
        let mut members = vec![root];
        while let Some(u) = queue.pop_front() {
            for &v in &neighbours[offsets[u as usize]..offsets[u as usize + 1]] {
                if !std::mem::replace(&mut seen[v as usize], true) {
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        let local = |g: u32| members.binary_search(&g).expect("member") as u32;
        let edges = self
            .edges
            .iter()
            .filter(|(u, _)| seen[*u as usize])
            .map(|&(u, v)| (local(u), local(v)));
        let sub = SimplicialGraph::from_pairs(members.len(), edges.collect::<Vec<_>>());
        let root_local = local(root);
        (members, sub, root_local)
    }
}

/// A connected graph with a marked vertex, carrying the original word
/// indices of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    pub alphabet: Alphabet,
    pub level: usize,
    /// Word index (at `level`) of each local vertex, ascending.
    pub vertices: Vec<u32>,
    pub graph: SimplicialGraph,
    pub root: u32,
}

impl RootedGraph {
    pub fn vertex_label(&self, local: u32) -> String {
        self.alphabet
            .format_index(self.vertices[local as usize] as usize, self.level)
    }
}

/// The component of `Γ_n` containing the length-`n` prefix of `xi`.
pub fn pointed_component(
    aut: &MealyAutomaton,
    gens: &[StateId],
    xi: &BoundaryPoint,
    level: usize,
    limits: SchreierLimits,
) -> Result<RootedGraph> {
    aut.alphabet().check_word(xi.preperiod())?;
    aut.alphabet().check_word(xi.period())?;
    let g = build_schreier(aut, gens, level, limits)?;
    let prefix = xi.prefix(level);
    let root = aut.alphabet().word_index(&prefix) as u32;
    let (vertices, graph, root) = g.simplicial().component_of(root);
    Ok(RootedGraph {
        alphabet: aut.alphabet(),
        level,
        vertices,
        graph,
        root,
    })
}

/// Largest level accepted by [`dual_moore_check`].
pub const DUAL_CHECK_MAX_LEVEL: usize = 4;

/// Cross-checks `Γ(Q, A^n)` against the Moore diagram of the `n`-th power
/// of the dual automaton (states `A`, alphabet `Q`, `x --q--> q(x)` with
/// output `q|_x`), compared up to label-preserving isomorphism.
pub fn dual_moore_check(aut: &MealyAutomaton, level: usize) -> Result<bool> {
    if level > DUAL_CHECK_MAX_LEVEL {
        return Err(Error::TooLarge {
            what: "dual Moore check level",
            limit: DUAL_CHECK_MAX_LEVEL,
            requested: level,
        });
    }
    let all: Vec<StateId> = aut.state_ids().collect();
    let schreier = build_schreier(aut, &all, level, SchreierLimits::default())?;
    let from_action: Vec<Vec<u32>> = (0..all.len())
        .map(|s| schreier.generator_targets(s).to_vec())
        .collect();

    // dual power: a word x_1..x_n reads state q, x_1 is rewritten by q,
    // x_2 by q|_{x_1}, and so on
    let alphabet = aut.alphabet();
    let n_vertices = alphabet.level_size(level).expect("level checked");
    let from_dual: Vec<Vec<u32>> = all
        .iter()
        .map(|&q| {
            (0..n_vertices)
                .map(|v| {
                    let word = alphabet.word_at(v, level);
                    let mut state = q;
                    let image: Vec<Letter> = word
                        .iter()
                        .map(|&x| {
                            let (y, next) = dual_step(aut, x, state);
                            state = next;
                            y
                        })
                        .collect();
                    alphabet.word_index(&image) as u32
                })
                .collect()
        })
        .collect();

    Ok(canonical_labeled_form(&from_action) == canonical_labeled_form(&from_dual))
}

/// One transition of the dual automaton: letter-state `x` reading the
/// input `q` moves to `q(x)` and emits `q|_x`.
fn dual_step(aut: &MealyAutomaton, x: Letter, q: StateId) -> (Letter, StateId) {
    (aut.output(q, x), aut.section(q, x))
}

/// Canonical form of a graph whose arrows per label form a permutation.
/// Such graphs are rigid once a root is fixed: a breadth-first numbering
/// following labels in order is forced. The form is the sorted list of
/// per-component minima over all roots.
pub(crate) fn canonical_labeled_form(perms: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = perms.first().map_or(0, Vec::len);
    let mut component = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        component[start] = id;
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for p in perms {
                let v = p[u] as usize;
                if component[v] == usize::MAX {
                    component[v] = id;
                    members.push(v);
                }
            }
        }
        comps.push(members);
    }
    let mut forms: Vec<Vec<u32>> = comps
        .iter()
        .map(|members| {
            members
                .iter()
                .map(|&root| encode_from(perms, root, members.len()))
                .min()
                .unwrap_or_default()
        })
        .collect();
    forms.sort();
    forms
}

fn encode_from(perms: &[Vec<u32>], root: usize, size: usize) -> Vec<u32> {
    let n = perms[0].len();
    let mut number = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(size);
    number[root] = 0;
    order.push(root);
    let mut code = Vec::with_capacity(size * perms.len() + 1);
    code.push(size as u32);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for p in perms {
            let v = p[u] as usize;
            if number[v] == u32::MAX {
                number[v] = order.len() as u32;
                order.push(v);
            }
            code.push(number[v]);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn load(text: &str) -> (MealyAutomaton, Vec<StateId>) {
        parse(text).unwrap().to_automaton()
    }

    const BASILICA: &str = "alphabet 2\na = (0 1)(b, id)\nb = id(a, id)\nid = id(id, id)\ngens a b";
    const IDENTITY: &str = "alphabet 2\ne = id(e, e)\ngens e";

    #[test]
    fn counts() {
        let (aut, gens) = load(BASILICA);
        let g = build_schreier(&aut, &gens, 5, SchreierLimits::default()).unwrap();
        assert_eq!(g.vertex_count(), 32);
        assert_eq!(g.arrow_count(), 64);
        let g0 = build_schreier(&aut, &gens, 0, SchreierLimits::default()).unwrap();
        assert_eq!(g0.vertex_count(), 1);
        assert_eq!(g0.arrows().collect::<Vec<_>>().len(), 2);
        assert!(g0.arrows().all(|a| a.source == 0 && a.target == 0));
    }

    #[test]
    fn matches_act_word() {
        let (aut, gens) = load(BASILICA);
        let g = build_schreier(&aut, &gens, 6, SchreierLimits::default()).unwrap();
        for a in g.arrows() {
            let w = g.vertex_word(a.source);
            let image = aut.act_word(gens[a.generator], &w).unwrap();
            assert_eq!(aut.alphabet().word_index(&image) as u32, a.target);
        }
    }

    #[test]
    fn basilica_level_one_matrix() {
        let (aut, gens) = load(BASILICA);
        let m = build_schreier(&aut, &gens, 1, SchreierLimits::default())
            .unwrap()
            .symbolic_matrix();
        assert_eq!(m.render_entry(0, 0), "b");
        assert_eq!(m.render_entry(0, 1), "a");
        assert_eq!(m.render_entry(1, 0), "a");
        assert_eq!(m.render_entry(1, 1), "b");
    }

    #[test]
    fn identity_generator_gives_diagonal_matrix_and_no_edges() {
        let (aut, gens) = load(IDENTITY);
        let g = build_schreier(&aut, &gens, 3, SchreierLimits::default()).unwrap();
        let m = g.symbolic_matrix();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(m.render_entry(i, j), if i == j { "e" } else { "0" });
            }
        }
        assert_eq!(g.simplicial().edge_count(), 0);
        assert_eq!(g.connected_components().len(), 8);
    }

    #[test]
    fn basilica_level_one_simplicial() {
        let (aut, gens) = load(BASILICA);
        let s = build_schreier(&aut, &gens, 1, SchreierLimits::default())
            .unwrap()
            .simplicial();
        assert_eq!(s.edges(), &[(0, 1)]);
    }

    #[test]
    fn resource_cap() {
        let (aut, gens) = load(BASILICA);
        let err =
            build_schreier(&aut, &gens, 11, SchreierLimits { max_vertices: 1024 }).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceCap {
                level: 11,
                vertices: 2048,
                cap: 1024
            }
        );
    }

    #[test]
    fn dual_moore_small() {
        let (aut, _) = load(IDENTITY);
        for n in 0..=3 {
            assert!(dual_moore_check(&aut, n).unwrap());
        }
        let (aut, _) = load(BASILICA);
        assert!(dual_moore_check(&aut, 1).unwrap());
        assert!(dual_moore_check(&aut, 2).unwrap());
        assert!(dual_moore_check(&aut, 5).is_err());
    }

    #[test]
    fn canonical_form_detects_relabeling_and_difference() {
        // a 4-cycle under two different vertex numberings
        let p = vec![vec![1, 2, 3, 0]];
        let q = vec![vec![2, 0, 3, 1]];
        assert_eq!(canonical_labeled_form(&p), canonical_labeled_form(&q));
        let r = vec![vec![1, 0, 3, 2]];
        assert_ne!(canonical_labeled_form(&p), canonical_labeled_form(&r));
    }
}
