//! Bounded nucleus search for contracting self-similar groups.
//!
//! Every element `h` with `h|_u = h` for a nonempty `u` belongs to the
//! nucleus, and so do all of its sections. The search closes
//! `S ∪ S⁻¹ ∪ {1}` under "cyclic sections of pairwise products" and then
//! certifies the result with the containment `(S ∪ N)²|_{A^k} ⊆ N` for the
//! least `k ≥ 1`. Non-contracting inputs run into the element bound and are
//! reported as such rather than looping.
//!
//! All elements live as states of one growing automaton that is kept
//! minimal, so equal elements share a state and products of pairs are
//! memoized by state pair.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, Permutation};
use crate::element::CanonicalElement;
use crate::group::AutomatonGroup;
use crate::minimize::{partition_refinement, MealyTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NucleusBounds {
    pub max_elements: usize,
    pub max_depth: usize,
}

impl Default for NucleusBounds {
    fn default() -> Self {
        Self {
            max_elements: 10_000,
            max_depth: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Elements(usize),
    Depth(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The nucleus, sorted by [`CanonicalElement`]'s order.
    Contracting(Vec<CanonicalElement>),
    /// The search hit `bound` while holding `witnesses` candidate elements.
    BoundExceeded { bound: Bound, witnesses: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusResult {
    pub verdict: Verdict,
    /// Certifying depth `k` for a contracting verdict; the depth reached
    /// otherwise.
    pub depth: usize,
}

impl NucleusResult {
    pub fn nucleus(&self) -> Option<&[CanonicalElement]> {
        match &self.verdict {
            Verdict::Contracting(n) => Some(n),
            Verdict::BoundExceeded { .. } => None,
        }
    }

    pub fn is_contracting(&self) -> bool {
        matches!(self.verdict, Verdict::Contracting(_))
    }
}

/// Intermediate products may be far more numerous than nucleus candidates;
/// this multiple of `max_elements` caps the working automaton.
const WORKSPACE_FACTOR: usize = 16;

/// A minimal automaton closed under sections. State `u` is one element.
struct Universe {
    degree: usize,
    outputs: Vec<Permutation>,
    sections: Vec<u32>,
    cyclic: Vec<bool>,
    reached: Vec<bool>,
    member: Vec<bool>,
    members: Vec<u32>,
    products: HashMap<(u32, u32), u32>,
}

impl MealyTable for Universe {
    fn degree(&self) -> usize {
        self.degree
    }

    fn state_count(&self) -> usize {
        self.outputs.len()
    }

    fn output_of(&self, state: usize) -> &Permutation {
        &self.outputs[state]
    }

    fn section_of(&self, state: usize, letter: Letter) -> usize {
        self.sections[state * self.degree + letter] as usize
    }
}

/// Universe states followed by not-yet-merged pair states.
struct Extended<'a> {
    base: &'a Universe,
    outputs: Vec<Permutation>,
    sections: Vec<usize>,
}

impl MealyTable for Extended<'_> {
    fn degree(&self) -> usize {
        self.base.degree
    }

    fn state_count(&self) -> usize {
        self.base.state_count() + self.outputs.len()
    }

    fn output_of(&self, state: usize) -> &Permutation {
        match state.checked_sub(self.base.state_count()) {
            Some(i) => &self.outputs[i],
            None => self.base.output_of(state),
        }
    }

    fn section_of(&self, state: usize, letter: Letter) -> usize {
        match state.checked_sub(self.base.state_count()) {
            Some(i) => self.sections[i * self.base.degree + letter],
            None => self.base.section_of(state, letter),
        }
    }
}

impl Universe {
    fn len(&self) -> usize {
        self.outputs.len()
    }

    fn section(&self, u: u32, x: Letter) -> u32 {
        self.sections[u as usize * self.degree + x]
    }

    fn children(&self, u: u32) -> &[u32] {
        let at = u as usize * self.degree;
        &self.sections[at..at + self.degree]
    }

    /// Appends the classes of `table` beyond the first `len()` states,
    /// returning the universe state of every table state.
    fn absorb<T: MealyTable>(&mut self, table: &T) -> Vec<u32> {
        let old = self.len();
        let classes = partition_refinement(table);
        let mut class_state: HashMap<usize, u32> = HashMap::new();
        for (u, &c) in classes.iter().enumerate().take(old) {
            class_state.insert(c, u as u32);
        }
        let mut fresh = Vec::new();
        let mut state_of = Vec::with_capacity(classes.len());
        for (q, &c) in classes.iter().enumerate() {
            let next = (old + fresh.len()) as u32;
            let s = *class_state.entry(c).or_insert_with(|| {
                fresh.push(q);
                next
            });
            state_of.push(s);
        }
        for &q in &fresh {
            self.outputs.push(table.output_of(q).clone());
            for x in 0..self.degree {
                self.sections.push(state_of[table.section_of(q, x)]);
            }
        }
        let added = self.len() - old;
        self.reached.extend(std::iter::repeat_n(false, added));
        self.member.extend(std::iter::repeat_n(false, added));
        self.mark_cycles(old);
        state_of
    }

    /// Cyclic flags for states `from..`. Older states never reach newer
    /// ones, so every cycle through a new state stays among new states.
    fn mark_cycles(&mut self, from: usize) {
        let n = self.len() - from;
        self.cyclic.extend(std::iter::repeat_n(false, n));
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            // iterative Tarjan: (node, next letter)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&(v, x)) = call.last() {
                if x < self.degree {
                    call.last_mut().expect("nonempty").1 += 1;
                    let w = self.section((from + v) as u32, x) as usize;
                    if w < from {
                        continue;
                    }
                    let w = w - from;
                    if w == v {
                        self.cyclic[from + v] = true;
                    }
                    if index[w] == UNSEEN {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        if component.len() > 1 {
                            for w in component {
                                self.cyclic[from + w] = true;
                            }
                        }
                    }
                }
            }
        }
    }

    /// Computes products for `roots` (in order) until the number of new
    /// pair states passes `budget`. Returns how many roots were handled, or
    /// `None` once the pair states outgrow `cap`.
    fn multiply(&mut self, roots: &[(u32, u32)], budget: usize, cap: usize) -> Option<usize> {
        let k = self.degree;
        let mut local: HashMap<(u32, u32), usize> = HashMap::new();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut handled = 0;
        for &root in roots {
            if pairs.len() >= budget {
                break;
            }
            handled += 1;
            if self.products.contains_key(&root) || local.contains_key(&root) {
                continue;
            }
            local.insert(root, pairs.len());
            pairs.push(root);
            let mut head = pairs.len() - 1;
            while head < pairs.len() {
                if pairs.len() > cap {
                    return None;
                }
                let (u, v) = pairs[head];
                head += 1;
                for x in 0..k {
                    let y = self.outputs[v as usize].apply(x);
                    let s = (self.section(u, y), self.section(v, x));
                    if !self.products.contains_key(&s) && !local.contains_key(&s) {
                        local.insert(s, pairs.len());
                        pairs.push(s);
                    }
                }
            }
        }
        if pairs.is_empty() {
            return Some(handled);
        }
        let base = self.len();
        let mut outputs = Vec::with_capacity(pairs.len());
        let mut sections = Vec::with_capacity(pairs.len() * k);
        for &(u, v) in &pairs {
            let (ou, ov) = (&self.outputs[u as usize], &self.outputs[v as usize]);
            outputs.push(ou.compose(ov));
            for x in 0..k {
                let s = (self.section(u, ov.apply(x)), self.section(v, x));
                sections.push(match self.products.get(&s) {
                    Some(&w) => w as usize,
                    None => base + local[&s],
                });
            }
        }
        // `absorb` needs `&mut self`, so the extended table is copied out
        let owned = OwnedTable::from(&Extended {
            base: self,
            outputs,
            sections,
        });
        let state_of = self.absorb(&owned);
        for (i, p) in pairs.into_iter().enumerate() {
            self.products.insert(p, state_of[base + i]);
        }
        Some(handled)
    }

    /// Records `root` as a product of interest: every cyclic state it
    /// reaches joins the nucleus candidates together with its sections.
    fn reach(&mut self, root: u32) {
        let mut queue = VecDeque::new();
        if !self.reached[root as usize] {
            self.reached[root as usize] = true;
            queue.push_back(root);
        }
        while let Some(u) = queue.pop_front() {
            if self.cyclic[u as usize] {
                self.admit(u);
            }
            for i in 0..self.degree {
                let w = self.section(u, i);
                if !self.reached[w as usize] {
                    self.reached[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    fn admit(&mut self, u: u32) {
        let mut stack = vec![u];
        while let Some(v) = stack.pop() {
            if self.member[v as usize] {
                continue;
            }
            self.member[v as usize] = true;
            self.members.push(v);
            stack.extend_from_slice(self.children(v));
        }
    }
}

/// A plain copy of a [`MealyTable`].
struct OwnedTable {
    degree: usize,
    outputs: Vec<Permutation>,
    sections: Vec<usize>,
}

impl OwnedTable {
    fn from<T: MealyTable>(t: &T) -> Self {
        let n = t.state_count();
        let k = t.degree();
        Self {
            degree: k,
            outputs: (0..n).map(|q| t.output_of(q).clone()).collect(),
            sections: (0..n)
                .flat_map(|q| (0..k).map(move |x| (q, x)))
                .map(|(q, x)| t.section_of(q, x))
                .collect(),
        }
    }
}

impl MealyTable for OwnedTable {
    fn degree(&self) -> usize {
        self.degree
    }

    fn state_count(&self) -> usize {
        self.outputs.len()
    }

    fn output_of(&self, state: usize) -> &Permutation {
        &self.outputs[state]
    }

    fn section_of(&self, state: usize, letter: Letter) -> usize {
        self.sections[state * self.degree + letter]
    }
}

pub fn compute_nucleus(group: &AutomatonGroup, bounds: NucleusBounds) -> NucleusResult {
    let max_elements = bounds.max_elements.max(1);
    let max_depth = bounds.max_depth.max(1);
    let workspace = max_elements.saturating_mul(WORKSPACE_FACTOR);
    let degree = group.degree();

    // seed: the generating automaton plus an explicit identity state
    let aut = group.automaton();
    let mut seed = OwnedTable::from(aut);
    let identity_state = seed.outputs.len();
    seed.outputs.push(Permutation::identity(degree));
    seed.sections
        .extend(std::iter::repeat_n(identity_state, degree));
    let mut universe = Universe {
        degree,
        outputs: Vec::new(),
        sections: Vec::new(),
        cyclic: Vec::new(),
        reached: Vec::new(),
        member: Vec::new(),
        members: Vec::new(),
        products: HashMap::new(),
    };
    let state_of = universe.absorb(&seed);
    let mut generating: Vec<u32> = group
        .symmetric_states()
        .iter()
        .map(|q| state_of[q.0])
        .chain([state_of[identity_state]])
        .collect();
    generating.sort_unstable();
    generating.dedup();
    for &g in &generating {
        universe.reach(g);
    }

    let exceeded = |universe: &Universe, depth: usize| NucleusResult {
        verdict: Verdict::BoundExceeded {
            bound: Bound::Elements(max_elements),
            witnesses: universe.members.len(),
        },
        depth,
    };

    // pool = S ∪ N; pairs are processed once, new members extend the pool
    let mut pool: Vec<u32> = generating.clone();
    let mut in_pool = vec![false; universe.len()];
    for &g in &pool {
        in_pool[g as usize] = true;
    }
    let mut done = 0usize;
    let mut round = 0usize;
    loop {
        if universe.members.len() > max_elements {
            return exceeded(&universe, round);
        }
        in_pool.resize(universe.len(), false);
        for &m in &universe.members {
            if !in_pool[m as usize] {
                in_pool[m as usize] = true;
                pool.push(m);
            }
        }
        if done == pool.len() {
            break;
        }
        round += 1;
        let end = pool.len();
        let frontier: Vec<(u32, u32)> = (0..end)
            .flat_map(|i| (0..end).map(move |j| (i, j)))
            .filter(|&(i, j)| i >= done || j >= done)
            .map(|(i, j)| (pool[i], pool[j]))
            .collect();
        let mut at = 0;
        while at < frontier.len() {
            let budget = universe.len().max(4096);
            let Some(handled) = universe.multiply(&frontier[at..], budget, workspace) else {
                return exceeded(&universe, round);
            };
            for &pair in &frontier[at..at + handled] {
                let product = universe.products[&pair];
                universe.reach(product);
            }
            at += handled;
            if universe.members.len() > max_elements || universe.len() > workspace {
                return exceeded(&universe, round);
            }
        }
        done = end;
    }

    match certify(&universe, &pool, max_depth) {
        Some(k) => {
            let mut nucleus: Vec<CanonicalElement> = universe
                .members
                .iter()
                .map(|&m| CanonicalElement::from_table(&universe, m as usize))
                .collect();
            nucleus.sort();
            NucleusResult {
                verdict: Verdict::Contracting(nucleus),
                depth: k,
            }
        }
        None => NucleusResult {
            verdict: Verdict::BoundExceeded {
                bound: Bound::Depth(max_depth),
                witnesses: universe.members.len(),
            },
            depth: max_depth,
        },
    }
}

/// Least `k ≥ 1` with every depth-`k` section of every pairwise product of
/// `pool` inside the nucleus candidates, if it is at most `max_depth`.
fn certify(universe: &Universe, pool: &[u32], max_depth: usize) -> Option<usize> {
    let mut worst = 1;
    for &g in pool {
        for &h in pool {
            let product = universe.products[&(g, h)];
            let mut level: Vec<u32> = universe.children(product).to_vec();
            level.sort_unstable();
            level.dedup();
            let mut depth = 1;
            while !level.iter().all(|&u| universe.member[u as usize]) {
                depth += 1;
                if depth > max_depth {
                    return None;
                }
                let mut next: Vec<u32> = level
                    .iter()
                    .flat_map(|&u| universe.children(u).iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                level = next;
            }
            worst = worst.max(depth);
        }
    }
    Some(worst)
}
