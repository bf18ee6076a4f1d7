//! The group generated by selected states of an invertible automaton.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::alphabet::Letter;
use crate::automaton::{MealyAutomaton, StateId};
use crate::element::CanonicalElement;
use crate::error::{Error, Result};
use crate::parser::RecursionDocument;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signed {
    pub generator: usize,
    pub inverse: bool,
}

impl Signed {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A formal word in the generators. The rightmost factor acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Signed>,
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Signed>) -> Self {
        Self { letters }
    }

    pub fn generator(index: usize) -> Self {
        Self::from_letters(vec![Signed::new(index, false)])
    }

    pub fn generator_inverse(index: usize) -> Self {
        Self::from_letters(vec![Signed::new(index, true)])
    }

    pub fn letters(&self) -> &[Signed] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|s| s.inverted()).collect(),
        }
    }

    pub fn pow(&self, exponent: i64) -> GroupWord {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        GroupWord { letters }
    }

    /// Free reduction: cancels adjacent `g g^-1` pairs.
    pub fn reduce(&self) -> GroupWord {
        let mut out: Vec<Signed> = Vec::with_capacity(self.letters.len());
        for &s in &self.letters {
            if out.last() == Some(&s.inverted()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        GroupWord { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverted())
    }
}

/// Outcome of the bounded recurrence (self-replication) test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recurrence {
    Recurrent,
    NotRecurrent,
    Inconclusive { bound: usize },
}

/// Total automaton states [`AutomatonGroup::is_recurrent`] may explore.
pub const RECURRENCE_STATE_BUDGET: usize = 1_000_000;

/// A group `⟨S⟩` given by generator states of an automaton. The automaton is
/// closed under inverses on construction.
#[derive(Debug, Clone)]
pub struct AutomatonGroup {
    automaton: MealyAutomaton,
    generators: Vec<StateId>,
}

impl AutomatonGroup {
    pub fn new(automaton: &MealyAutomaton, generators: &[StateId]) -> Result<Self> {
        generators
            .iter()
            .try_for_each(|&g| automaton.check_state(g))?;
        Ok(Self {
            automaton: automaton.invert(),
            generators: generators.to_vec(),
        })
    }

    pub fn from_document(doc: &RecursionDocument) -> Self {
        let (automaton, gens) = doc.to_automaton();
        Self::new(&automaton, &gens).expect("document generators resolve")
    }

    /// The inverse-closed automaton.
    pub fn automaton(&self) -> &MealyAutomaton {
        &self.automaton
    }

    pub fn degree(&self) -> usize {
        self.automaton.alphabet().size()
    }

    pub fn generators(&self) -> &[StateId] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_name(&self, index: usize) -> &str {
        self.automaton.name(self.generators[index])
    }

    /// Generator states together with their inverse states.
    pub fn symmetric_states(&self) -> Vec<StateId> {
        let mut states = self.generators.clone();
        states.extend(
            self.generators
                .iter()
                .map(|&g| self.automaton.inverse_of(g).expect("inverse-closed")),
        );
        states
    }

    fn state_of(&self, s: Signed) -> Result<StateId> {
        let g = *self
            .generators
            .get(s.generator)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", s.generator)))?;
        Ok(if s.inverse {
            self.automaton.inverse_of(g).expect("inverse-closed")
        } else {
            g
        })
    }

    /// Solves the word problem: builds the reachable product automaton of
    /// the word's factors, minimizes it and returns the word's class.
    pub fn canonicalize(&self, word: &GroupWord) -> Result<CanonicalElement> {
        if word.is_empty() {
            return Ok(CanonicalElement::identity(self.degree()));
        }
        let tuple = word
            .letters()
            .iter()
            .map(|&s| self.state_of(s))
            .collect::<Result<Vec<_>>>()?;
        let (product, roots) = self.automaton.product_of(&[tuple])?;
        Ok(CanonicalElement::from_table(&product, roots[0].0))
    }

    pub fn state_element(&self, state: StateId) -> CanonicalElement {
        CanonicalElement::from_table(&self.automaton, state.0)
    }

    pub fn generator_element(&self, index: usize) -> CanonicalElement {
        self.state_element(self.generators[index])
    }

    /// `S ∪ S⁻¹ ∪ {1}`, deduplicated and sorted.
    pub fn symmetric_generating_set(&self) -> Vec<CanonicalElement> {
        let mut set: Vec<CanonicalElement> = self
            .symmetric_states()
            .into_iter()
            .map(|q| self.state_element(q))
            .collect();
        set.push(CanonicalElement::identity(self.degree()));
        set.sort();
        set.dedup();
        set
    }

    /// Parses words like `c a^-1 c b^-1`, `c*a^-1`, or `(c a^-1 c b^-1)^2`.
    /// Factors are separated by whitespace, `*` or `.`; `1` is the identity.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let names: HashMap<&str, usize> = (0..self.rank())
            .map(|i| (self.generator_name(i), i))
            .collect();
        WordParser {
            chars: text.chars().collect(),
            pos: 0,
            names: &names,
            text,
        }
        .parse()
    }

    pub fn format_word(&self, word: &GroupWord) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters()
            .iter()
            .map(|s| {
                let name = self.generator_name(s.generator);
                if s.inverse {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Shortest word (up to `max_len`) representing `element`, found by a
    /// breadth-first search of the Cayley ball.
    pub fn express(&self, element: &CanonicalElement, max_len: usize) -> Option<GroupWord> {
        self.express_all(std::slice::from_ref(element), max_len)
            .pop()
            .flatten()
    }

    /// [`Self::express`] for several elements with one shared search. The
    /// search also stops after [`RECURRENCE_STATE_BUDGET`] explored states.
    pub fn express_all(
        &self,
        elements: &[CanonicalElement],
        max_len: usize,
    ) -> Vec<Option<GroupWord>> {
        let mut found: Vec<Option<GroupWord>> = elements
            .iter()
            .map(|e| e.is_identity().then(GroupWord::identity))
            .collect();
        let mut wanted: HashMap<&CanonicalElement, Vec<usize>> = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if found[i].is_none() {
                wanted.entry(e).or_default().push(i);
            }
        }
        let steps: Vec<(Signed, CanonicalElement)> = (0..self.rank())
            .flat_map(|i| [Signed::new(i, false), Signed::new(i, true)])
            .map(|s| {
                let e = self.state_element(self.state_of(s).expect("valid generator"));
                (s, e)
            })
            .collect();
        let identity = CanonicalElement::identity(self.degree());
        let mut seen: HashMap<CanonicalElement, ()> = HashMap::from([(identity.clone(), ())]);
        let mut frontier: VecDeque<(CanonicalElement, GroupWord)> =
            VecDeque::from([(identity, GroupWord::identity())]);
        let mut stored = 0usize;
        while let Some((e, w)) = frontier.pop_front() {
            if wanted.is_empty() || stored > RECURRENCE_STATE_BUDGET {
                break;
            }
            if w.len() >= max_len {
                continue;
            }
            for (s, step) in &steps {
                if w.letters().last() == Some(&s.inverted()) {
                    continue;
                }
                let next = e.compose(step);
                if seen.contains_key(&next) {
                    continue;
                }
                let mut word = w.clone();
                word.letters.push(*s);
                if let Some(indices) = wanted.remove(&next) {
                    for i in indices {
                        found[i] = Some(word.clone());
                    }
                }
                stored += next.size();
                seen.insert(next.clone(), ());
                frontier.push_back((next, word));
            }
        }
        found
    }

    /// Orbits of the group on the first level.
    pub fn level_one_orbits(&self) -> Vec<Vec<Letter>> {
        let k = self.degree();
        let mut orbit_of = vec![usize::MAX; k];
        let mut orbits = Vec::new();
        for start in 0..k {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            orbit_of[start] = id;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &self.generators {
                    let y = self.automaton.output(g, x);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Bounded check of self-replication: the action on the first level is
    /// transitive and `g ↦ g|_0` maps the stabilizer of `0` onto the group.
    ///
    /// The stabilizer is generated by Schreier generators `t_{s(x)}^-1 s t_x`;
    /// their sections at `0` generate the image. Generators of the whole
    /// group are searched for in the ball of radius `max_len` of that image.
    ///
    /// The ball search also stops once the explored elements hold
    /// [`RECURRENCE_STATE_BUDGET`] automaton states in total, since element
    /// automata grow quickly in non-contracting groups.
    pub fn is_recurrent(&self, max_len: usize) -> Recurrence {
        let k = self.degree();
        if self.generators.is_empty() {
            return Recurrence::NotRecurrent;
        }
        if self.level_one_orbits().len() != 1 {
            return Recurrence::NotRecurrent;
        }
        let identity = CanonicalElement::identity(k);
        let symmetric: Vec<CanonicalElement> = self
            .symmetric_states()
            .into_iter()
            .map(|q| self.state_element(q))
            .collect();

        // transversal t_x with t_x(0) = x
        let mut transversal: Vec<Option<CanonicalElement>> = vec![None; k];
        transversal[0] = Some(identity.clone());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let t = transversal[x].clone().expect("visited");
            for s in &symmetric {
                let y = s.act_letter(x);
                if transversal[y].is_none() {
                    transversal[y] = Some(s.compose(&t));
                    queue.push_back(y);
                }
            }
        }

        let mut image_gens: Vec<CanonicalElement> = Vec::new();
        for x in 0..k {
            let t = transversal[x].as_ref().expect("transitive");
            for s in &symmetric {
                let y = s.act_letter(x);
                let back = transversal[y].as_ref().expect("transitive").inverse();
                let schreier = back.compose(&s.compose(t));
                debug_assert_eq!(schreier.act_letter(0), 0);
                let section = schreier.section_at(0);
                if !section.is_identity() && !image_gens.contains(&section) {
                    image_gens.push(section);
                }
            }
        }
        let inverses: Vec<CanonicalElement> = image_gens.iter().map(|g| g.inverse()).collect();
        image_gens.extend(inverses);

        let targets: Vec<CanonicalElement> = self
            .generators
            .iter()
            .map(|&g| self.state_element(g))
            .collect();
        let mut missing: Vec<&CanonicalElement> =
            targets.iter().filter(|t| !t.is_identity()).collect();
        let mut seen: HashMap<CanonicalElement, ()> = HashMap::from([(identity.clone(), ())]);
        let mut frontier = vec![identity];
        let mut stored = 0usize;
        'ball: for _ in 0..max_len {
            if missing.is_empty() {
                break;
            }
            let mut next_frontier = Vec::new();
            for e in &frontier {
                for g in &image_gens {
                    let n = g.compose(e);
                    if seen.contains_key(&n) {
                        continue;
                    }
                    missing.retain(|t| **t != n);
                    stored += n.size();
                    seen.insert(n.clone(), ());
                    next_frontier.push(n);
                    if stored > RECURRENCE_STATE_BUDGET {
                        break 'ball;
                    }
                }
            }
            frontier = next_frontier;
        }
        if missing.is_empty() {
            Recurrence::Recurrent
        } else {
            Recurrence::Inconclusive { bound: max_len }
        }
    }
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a HashMap<&'a str, usize>,
    text: &'a str,
}

impl WordParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Malformed(format!(
            "{msg} at position {} in `{}`",
            self.pos + 1,
            self.text
        ))
    }

    fn skip(&mut self) {
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_whitespace() || matches!(self.chars[self.pos], '*' | '.'))
        {
            self.pos += 1;
        }
    }

    fn parse(mut self) -> Result<GroupWord> {
        let w = self.sequence()?;
        self.skip();
        if self.pos < self.chars.len() {
            return Err(self.err("unexpected character"));
        }
        Ok(w)
    }

    fn sequence(&mut self) -> Result<GroupWord> {
        let mut word = GroupWord::identity();
        loop {
            self.skip();
            let Some(&c) = self.chars.get(self.pos) else {
                break;
            };
            let factor = if c == '(' {
                self.pos += 1;
                let inner = self.sequence()?;
                self.skip();
                if self.chars.get(self.pos) != Some(&')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                inner
            } else if c == '1' {
                self.pos += 1;
                GroupWord::identity()
            } else if c.is_alphanumeric() || c == '_' {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let index = *self
                    .names
                    .get(name.as_str())
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                GroupWord::generator(index)
            } else {
                break;
            };
            let factor = if self.chars.get(self.pos) == Some(&'^') {
                self.pos += 1;
                let start = self.pos;
                if self.chars.get(self.pos) == Some(&'-') {
                    self.pos += 1;
                }
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let exp: String = self.chars[start..self.pos].iter().collect();
                let exp: i64 = exp.parse().map_err(|_| self.err("bad exponent"))?;
                factor.pow(exp)
            } else {
                factor
            };
            word = word.concat(&factor);
        }
        Ok(word)
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recurrence::Recurrent => f.write_str("recurrent"),
            Recurrence::NotRecurrent => f.write_str("not recurrent"),
            Recurrence::Inconclusive { bound } => {
                write!(f, "inconclusive (word length bound {bound})")
            }
        }
    }
}
