//! Invertible Mealy automata and their action on the rooted tree `A^*`.
//!
//! A state `q` acts on words by `q(xv) = q(x) q|_x(v)`. Products follow the
//! left-action convention `(gh)(w) = g(h(w))`, with sections
//! `(gh)|_v = g|_{h(v)} h|_v`; in a product tuple the last factor is applied
//! first.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::alphabet::{Alphabet, Letter, Permutation};
use crate::error::{Error, Result};
use crate::minimize::{partition_refinement, MealyTable};

/// Index of a state inside its automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    name: String,
    output: Permutation,
    sections: Vec<StateId>,
}

impl State {
    pub fn new(name: impl Into<String>, output: Permutation, sections: Vec<StateId>) -> Self {
        Self {
            name: name.into(),
            output,
            sections,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn output(&self) -> &Permutation {
        &self.output
    }

    pub fn sections(&self) -> &[StateId] {
        &self.sections
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyAutomaton {
    alphabet: Alphabet,
    states: Vec<State>,
    /// `Some` once formal inverses have been adjoined; maps every state to
    /// its inverse state.
    inverses: Option<Vec<StateId>>,
}

impl MealyAutomaton {
    pub fn new(alphabet: Alphabet, states: Vec<State>) -> Result<Self> {
        let k = alphabet.size();
        let mut names = HashSet::new();
        for state in &states {
            if !names.insert(state.name.as_str()) {
                return Err(Error::DuplicateState(state.name.clone()));
            }
            if state.output.degree() != k {
                return Err(Error::DegreeMismatch {
                    expected: k,
                    found: state.output.degree(),
                });
            }
            if state.sections.len() != k {
                return Err(Error::SectionArity {
                    state: state.name.clone(),
                    expected: k,
                    found: state.sections.len(),
                });
            }
            if let Some(bad) = state.sections.iter().find(|s| s.0 >= states.len()) {
                return Err(Error::StateOutOfRange {
                    index: bad.0,
                    len: states.len(),
                });
            }
        }
        Ok(Self {
            alphabet,
            states,
            inverses: None,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, id: StateId) -> &State {
        &self.states[id.0]
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn find(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.name == name).map(StateId)
    }

    pub fn name(&self, id: StateId) -> &str {
        &self.states[id.0].name
    }

    pub fn check_state(&self, id: StateId) -> Result<()> {
        if id.0 < self.states.len() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                index: id.0,
                len: self.states.len(),
            })
        }
    }

    #[inline]
    pub fn output(&self, q: StateId, x: Letter) -> Letter {
        self.states[q.0].output.apply(x)
    }

    #[inline]
    pub fn section(&self, q: StateId, x: Letter) -> StateId {
        self.states[q.0].sections[x]
    }

    /// One step of the action: the image of `x` and the section `q|_x`.
    pub fn act_letter(&self, q: StateId, x: Letter) -> Result<(Letter, StateId)> {
        self.alphabet.check_letter(x)?;
        Ok((self.output(q, x), self.section(q, x)))
    }

    pub fn act_word(&self, q: StateId, word: &[Letter]) -> Result<Vec<Letter>> {
        self.alphabet.check_word(word)?;
        let mut state = q;
        Ok(word
            .iter()
            .map(|&x| {
                let y = self.output(state, x);
                state = self.section(state, x);
                y
            })
            .collect())
    }

    /// `q|_v`, following sections along `v`.
    pub fn section_word(&self, q: StateId, word: &[Letter]) -> Result<StateId> {
        self.alphabet.check_word(word)?;
        Ok(word.iter().fold(q, |s, &x| self.section(s, x)))
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverses.is_some()
    }

    pub fn inverse_of(&self, q: StateId) -> Option<StateId> {
        self.inverses.as_ref().map(|inv| inv[q.0])
    }

    /// Adjoins a formal inverse `q^-1` for every state, with output
    /// `σ_q^-1` and sections `q^-1|_y = (q|_{σ_q^-1(y)})^-1`. An automaton
    /// that is already inverse-closed is returned unchanged.
    pub fn invert(&self) -> MealyAutomaton {
        if self.inverses.is_some() {
            return self.clone();
        }
        let m = self.states.len();
        let mut states = self.states.clone();
        for state in &self.states {
            let inv = state.output.inverse();
            let sections = self
                .alphabet
                .letters()
                .map(|y| StateId(m + state.sections[inv.apply(y)].0))
                .collect();
            states.push(State::new(format!("{}^-1", state.name), inv, sections));
        }
        let inverses = (0..2 * m).map(|i| StateId((i + m) % (2 * m))).collect();
        MealyAutomaton {
            alphabet: self.alphabet,
            states,
            inverses: Some(inverses),
        }
    }

    /// The automaton on all `power`-tuples of states, each tuple acting as
    /// the composition of its entries.
    pub fn product_automaton(&self, power: usize) -> Result<MealyAutomaton> {
        if power == 0 {
            return Err(Error::ZeroPower);
        }
        let m = self.states.len();
        let total = m.checked_pow(power as u32).ok_or(Error::TooLarge {
            what: "product automaton states",
            limit: usize::MAX,
            requested: usize::MAX,
        })?;
        let seeds: Vec<Vec<StateId>> = (0..total)
            .map(|mut i| {
                let mut tuple = vec![StateId(0); power];
                for slot in tuple.iter_mut().rev() {
                    *slot = StateId(i % m);
                    i /= m;
                }
                tuple
            })
            .collect();
        Ok(self.product_of(&seeds)?.0)
    }

    /// Reachable product automaton generated by the given tuples. Tuple
    /// `(q_1, ..., q_p)` acts as `q_1 ∘ ... ∘ q_p`; the empty tuple is the
    /// identity. Returns the automaton and the state of each seed.
    pub fn product_of(&self, seeds: &[Vec<StateId>]) -> Result<(MealyAutomaton, Vec<StateId>)> {
        for tuple in seeds {
            tuple.iter().try_for_each(|&q| self.check_state(q))?;
        }
        let k = self.alphabet.size();
        let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
        let mut tuples: Vec<Vec<StateId>> = Vec::new();
        let mut queue = VecDeque::new();
        let mut seed_ids = Vec::with_capacity(seeds.len());

        let mut intern = |t: Vec<StateId>,
                          tuples: &mut Vec<Vec<StateId>>,
                          queue: &mut VecDeque<usize>|
         -> usize {
            if let Some(&i) = index.get(&t) {
                return i;
            }
            let i = tuples.len();
            index.insert(t.clone(), i);
            tuples.push(t);
            queue.push_back(i);
            i
        };

        for tuple in seeds {
            seed_ids.push(StateId(intern(tuple.clone(), &mut tuples, &mut queue)));
        }

        let mut rows: Vec<Option<(Permutation, Vec<StateId>)>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let tuple = tuples[i].clone();
            let mut images = Vec::with_capacity(k);
            let mut sections = Vec::with_capacity(k);
            for x in 0..k {
                let mut letter = x;
                let mut section = tuple.clone();
                for (slot, &q) in section.iter_mut().zip(tuple.iter()).rev() {
                    *slot = self.section(q, letter);
                    letter = self.output(q, letter);
                }
                images.push(letter);
                sections.push(StateId(intern(section, &mut tuples, &mut queue)));
            }
            if rows.len() <= i {
                rows.resize(i + 1, None);
            }
            rows[i] = Some((Permutation::from_images(images)?, sections));
        }

        let states = tuples
            .iter()
            .zip(rows)
            .map(|(tuple, row)| {
                let (output, sections) = row.expect("every interned tuple is expanded");
                State::new(self.tuple_name(tuple), output, sections)
            })
            .collect();
        Ok((
            MealyAutomaton {
                alphabet: self.alphabet,
                states,
                inverses: None,
            },
            seed_ids,
        ))
    }

    fn tuple_name(&self, tuple: &[StateId]) -> String {
        if tuple.is_empty() {
            return "1".to_string();
        }
        tuple
            .iter()
            .map(|&q| self.name(q))
            .collect::<Vec<_>>()
            .join("·")
    }

    /// Merges states that act identically on `A^*`. Returns the minimal
    /// automaton and the class of every original state. Each class is
    /// named after its first member.
    pub fn minimize(&self) -> (MealyAutomaton, Vec<StateId>) {
        let classes = partition_refinement(self);
        let count = classes.iter().copied().max().map_or(0, |c| c + 1);
        let mut representative = vec![usize::MAX; count];
        for (q, &c) in classes.iter().enumerate() {
            if representative[c] == usize::MAX {
                representative[c] = q;
            }
        }
        let states = representative
            .iter()
            .map(|&rep| {
                let state = &self.states[rep];
                State::new(
                    state.name.clone(),
                    state.output.clone(),
                    state
                        .sections
                        .iter()
                        .map(|s| StateId(classes[s.0]))
                        .collect(),
                )
            })
            .collect();
        let inverses = self.inverses.as_ref().map(|inv| {
            representative
                .iter()
                .map(|&rep| StateId(classes[inv[rep].0]))
                .collect()
        });
        (
            MealyAutomaton {
                alphabet: self.alphabet,
                states,
                inverses,
            },
            classes.into_iter().map(StateId).collect(),
        )
    }

    /// States reachable from `roots` along sections, in BFS order.
    pub fn reachable(&self, roots: &[StateId]) -> Vec<StateId> {
        let mut seen = vec![false; self.states.len()];
        let mut order = Vec::new();
        let mut queue: VecDeque<StateId> = VecDeque::new();
        for &r in roots {
            if !seen[r.0] {
                seen[r.0] = true;
                queue.push_back(r);
            }
        }
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &s in &self.states[q.0].sections {
                if !seen[s.0] {
                    seen[s.0] = true;
                    queue.push_back(s);
                }
            }
        }
        order
    }
}

impl MealyTable for MealyAutomaton {
    fn degree(&self) -> usize {
        self.alphabet.size()
    }

    fn state_count(&self) -> usize {
        self.states.len()
    }

    fn output_of(&self, state: usize) -> &Permutation {
        &self.states[state].output
    }

    fn section_of(&self, state: usize, letter: Letter) -> usize {
        self.states[state].sections[letter].0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> Permutation {
        Permutation::transposition(2, 0, 1).unwrap()
    }

    /// a = (0 1)(b, id), b = (a, id), id = (id, id)
    fn basilica() -> MealyAutomaton {
        let id = Permutation::identity(2);
        MealyAutomaton::new(
            Alphabet::new(2).unwrap(),
            vec![
                State::new("a", swap(), vec![StateId(1), StateId(2)]),
                State::new("b", id.clone(), vec![StateId(0), StateId(2)]),
                State::new("id", id, vec![StateId(2), StateId(2)]),
            ],
        )
        .unwrap()
    }

    /// a = (0 1)(c, c), b = (b, c), c = (b, a)
    fn aut882() -> MealyAutomaton {
        let id = Permutation::identity(2);
        MealyAutomaton::new(
            Alphabet::new(2).unwrap(),
            vec![
                State::new("a", swap(), vec![StateId(2), StateId(2)]),
                State::new("b", id.clone(), vec![StateId(1), StateId(2)]),
                State::new("c", id, vec![StateId(1), StateId(0)]),
            ],
        )
        .unwrap()
    }

    fn identity() -> MealyAutomaton {
        MealyAutomaton::new(
            Alphabet::new(2).unwrap(),
            vec![State::new(
                "e",
                Permutation::identity(2),
                vec![StateId(0), StateId(0)],
            )],
        )
        .unwrap()
    }

    #[test]
    fn act_letter_examples() {
        let b = basilica();
        assert_eq!(b.act_letter(StateId(0), 0).unwrap(), (1, StateId(1)));
        let e = identity();
        for x in 0..2 {
            assert_eq!(e.act_letter(StateId(0), x).unwrap(), (x, StateId(0)));
        }
        let m = aut882();
        assert_eq!(m.act_letter(StateId(0), 1).unwrap(), (0, StateId(2)));
        assert_eq!(
            b.act_letter(StateId(0), 2),
            Err(Error::LetterOutOfRange { letter: 2, size: 2 })
        );
    }

    #[test]
    fn act_word_examples() {
        let b = basilica();
        assert_eq!(b.act_word(StateId(0), &[0, 0]).unwrap(), vec![1, 0]);
        let e = identity();
        assert_eq!(e.act_word(StateId(0), &[1, 0, 1]).unwrap(), vec![1, 0, 1]);
        let m = aut882();
        assert_eq!(m.act_word(StateId(2), &[1, 0]).unwrap(), vec![1, 1]);
        assert!(m.act_word(StateId(2), &[1, 5]).is_err());
    }

    #[test]
    fn section_word_examples() {
        let b = basilica();
        assert_eq!(b.section_word(StateId(0), &[]).unwrap(), StateId(0));
        assert_eq!(b.section_word(StateId(0), &[0]).unwrap(), StateId(1));
        assert_eq!(b.section_word(StateId(0), &[0, 0]).unwrap(), StateId(0));
    }

    #[test]
    fn invert_examples() {
        let e = identity().invert();
        assert_eq!(e.len(), 2);
        assert_eq!(e.state(StateId(1)).output(), e.state(StateId(0)).output());
        assert_eq!(e.state(StateId(1)).sections(), &[StateId(1), StateId(1)]);

        let b = basilica().invert();
        let a_inv = b.inverse_of(StateId(0)).unwrap();
        assert_eq!(b.name(a_inv), "a^-1");
        assert_eq!(b.name(b.section(a_inv, 0)), "id^-1");
        assert_eq!(b.name(b.section(a_inv, 1)), "b^-1");
        assert_eq!(b.inverse_of(a_inv), Some(StateId(0)));
    }

    #[test]
    fn double_inversion_acts_like_the_original() {
        let b = basilica();
        let inv = b.invert();
        let again = inv.invert();
        assert_eq!(inv, again);
        for q in b.state_ids() {
            let qq = inv.inverse_of(inv.inverse_of(q).unwrap()).unwrap();
            for len in 0..=4 {
                for w in b.alphabet().words(len) {
                    assert_eq!(inv.act_word(qq, &w).unwrap(), b.act_word(q, &w).unwrap());
                }
            }
        }
    }

    #[test]
    fn product_power_one_is_isomorphic() {
        let b = basilica();
        let p = b.product_automaton(1).unwrap();
        assert_eq!(p.len(), b.len());
        for q in b.state_ids() {
            for w in b.alphabet().words(5) {
                assert_eq!(p.act_word(q, &w).unwrap(), b.act_word(q, &w).unwrap());
            }
        }
        assert_eq!(b.product_automaton(0), Err(Error::ZeroPower));
    }

    #[test]
    fn product_tuples_compose_right_to_left() {
        let b = basilica();
        let (p, ids) = b
            .product_of(&[vec![StateId(0), StateId(0)], vec![StateId(0), StateId(1)]])
            .unwrap();
        for len in 0..=6 {
            for w in b.alphabet().words(len) {
                let aa = b
                    .act_word(StateId(0), &b.act_word(StateId(0), &w).unwrap())
                    .unwrap();
                assert_eq!(p.act_word(ids[0], &w).unwrap(), aa);
                let ab = b
                    .act_word(StateId(0), &b.act_word(StateId(1), &w).unwrap())
                    .unwrap();
                assert_eq!(p.act_word(ids[1], &w).unwrap(), ab);
            }
        }
    }

    #[test]
    fn identity_pair_acts_trivially() {
        let e = identity();
        let p = e.product_automaton(2).unwrap();
        assert_eq!(p.len(), 1);
        for w in e.alphabet().words(4) {
            assert_eq!(p.act_word(StateId(0), &w).unwrap(), w);
        }
    }

    #[test]
    fn minimize_examples() {
        let id = Permutation::identity(2);
        let dup = MealyAutomaton::new(
            Alphabet::new(2).unwrap(),
            vec![
                State::new("e1", id.clone(), vec![StateId(1), StateId(1)]),
                State::new("e2", id, vec![StateId(0), StateId(0)]),
            ],
        )
        .unwrap();
        let (min, classes) = dup.minimize();
        assert_eq!(min.len(), 1);
        assert_eq!(classes, vec![StateId(0), StateId(0)]);

        let (min, _) = basilica().minimize();
        assert_eq!(min.len(), 3);

        let inv = basilica().invert();
        let a = StateId(0);
        let a_inv = inv.inverse_of(a).unwrap();
        let (p, ids) = inv.product_of(&[vec![a, a_inv], vec![StateId(2)]]).unwrap();
        let (_, classes) = p.minimize();
        assert_eq!(classes[ids[0].0], classes[ids[1].0]);
    }

    #[test]
    fn minimize_is_idempotent() {
        let inv = aut882().invert();
        let p = inv.product_automaton(2).unwrap();
        let (once, _) = p.minimize();
        let (twice, classes) = once.minimize();
        assert_eq!(once.len(), twice.len());
        assert_eq!(classes, once.state_ids().collect::<Vec<_>>());
    }

    #[test]
    fn constructor_validates() {
        let id = Permutation::identity(2);
        let k = Alphabet::new(2).unwrap();
        assert!(matches!(
            MealyAutomaton::new(
                k,
                vec![State::new("a", id.clone(), vec![StateId(1), StateId(0)])]
            ),
            Err(Error::StateOutOfRange { .. })
        ));
        assert!(matches!(
            MealyAutomaton::new(
                k,
                vec![
                    State::new("a", id.clone(), vec![StateId(0), StateId(0)]),
                    State::new("a", id.clone(), vec![StateId(0), StateId(0)])
                ]
            ),
            Err(Error::DuplicateState(_))
        ));
        assert!(matches!(
            MealyAutomaton::new(k, vec![State::new("a", id, vec![StateId(0)])]),
            Err(Error::SectionArity { .. })
        ));
    }
}
