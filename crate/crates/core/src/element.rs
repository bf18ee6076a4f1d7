//! Group elements in canonical form.
//!
//! A [`CanonicalElement`] is the minimal automaton of an element, rooted at
//! the element and numbered in breadth-first order (letters ascending). Two
//! elements act identically on `A^*` iff their canonical forms are equal,
//! so `==` and `Hash` decide the word problem.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::alphabet::{Letter, Permutation};
use crate::error::Result;
use crate::minimize::{partition_refinement, MealyTable};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalElement {
    degree: usize,
    outputs: Vec<Permutation>,
    /// Row-major `state * degree + letter`.
    sections: Vec<u32>,
}

struct Table {
    degree: usize,
    outputs: Vec<Permutation>,
    sections: Vec<usize>,
}

impl MealyTable for Table {
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

impl MealyTable for CanonicalElement {
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

impl CanonicalElement {
    pub fn identity(degree: usize) -> Self {
        Self {
            degree,
            outputs: vec![Permutation::identity(degree)],
            sections: vec![0; degree],
        }
    }

    /// Canonical form of `root` in any complete table: restrict to the
    /// reachable part, minimize, renumber.
    pub fn from_table<T: MealyTable + ?Sized>(table: &T, root: usize) -> Self {
        let k = table.degree();
        let mut local = HashMap::new();
        let mut order = vec![root];
        local.insert(root, 0usize);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for x in 0..k {
                let s = table.section_of(q, x);
                if let Entry::Vacant(e) = local.entry(s) {
                    e.insert(order.len());
                    order.push(s);
                }
            }
        }
        let reachable = Table {
            degree: k,
            outputs: order.iter().map(|&q| table.output_of(q).clone()).collect(),
            sections: order
                .iter()
                .flat_map(|&q| (0..k).map(move |x| (q, x)))
                .map(|(q, x)| local[&table.section_of(q, x)])
                .collect(),
        };
        let classes = partition_refinement(&reachable);
        let count = classes.iter().copied().max().map_or(0, |c| c + 1);
        let mut rep = vec![usize::MAX; count];
        for (q, &c) in classes.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = q;
            }
        }
        let quotient = Table {
            degree: k,
            outputs: rep.iter().map(|&q| reachable.outputs[q].clone()).collect(),
            sections: rep
                .iter()
                .flat_map(|&q| (0..k).map(move |x| (q, x)))
                .map(|(q, x)| classes[reachable.sections[q * k + x]])
                .collect(),
        };
        Self::renumber(&quotient, classes[0])
    }

    /// Breadth-first renumbering of an already minimal table.
    fn renumber<T: MealyTable + ?Sized>(table: &T, root: usize) -> Self {
        let k = table.degree();
        let n = table.state_count();
        let mut number = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        number[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for x in 0..k {
                let s = table.section_of(q, x);
                if number[s] == u32::MAX {
                    number[s] = order.len() as u32;
                    order.push(s);
                }
            }
        }
        let outputs = order.iter().map(|&q| table.output_of(q).clone()).collect();
        let mut sections = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for x in 0..k {
                sections.push(number[table.section_of(q, x)]);
            }
        }
        Self {
            degree: k,
            outputs,
            sections,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of states of the minimal automaton.
    pub fn size(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_identity(&self) -> bool {
        self.outputs.len() == 1 && self.outputs[0].is_identity()
    }

    /// Output permutation at the root.
    pub fn root_permutation(&self) -> &Permutation {
        &self.outputs[0]
    }

    fn check(&self, word: &[Letter]) -> Result<()> {
        crate::alphabet::Alphabet::new(self.degree)?.check_word(word)
    }

    pub fn act(&self, word: &[Letter]) -> Result<Vec<Letter>> {
        self.check(word)?;
        let mut q = 0usize;
        Ok(word
            .iter()
            .map(|&x| {
                let y = self.outputs[q].apply(x);
                q = self.sections[q * self.degree + x] as usize;
                y
            })
            .collect())
    }

    #[inline]
    pub fn act_letter(&self, x: Letter) -> Letter {
        self.outputs[0].apply(x)
    }

    /// `g|_v`.
    pub fn section(&self, word: &[Letter]) -> Result<CanonicalElement> {
        self.check(word)?;
        let q = word
            .iter()
            .fold(0usize, |q, &x| self.sections[q * self.degree + x] as usize);
        Ok(self.state_element(q))
    }

    /// `g|_x` for a single letter.
    pub fn section_at(&self, x: Letter) -> CanonicalElement {
        self.state_element(self.sections[x] as usize)
    }

    /// The element represented by one state of this automaton. States of a
    /// minimal automaton stay pairwise distinct, so renumbering suffices.
    pub fn state_element(&self, state: usize) -> CanonicalElement {
        if state == 0 {
            return self.clone();
        }
        Self::renumber(self, state)
    }

    /// Every distinct section `g|_v`, `v ∈ A^*`, in state order.
    pub fn all_sections(&self) -> Vec<CanonicalElement> {
        (0..self.size()).map(|q| self.state_element(q)).collect()
    }

    /// States lying on a cycle of the section graph, i.e. sections `h` with
    /// `h|_u = h` for some nonempty `u`.
    pub fn cyclic_states(&self) -> Vec<usize> {
        let n = self.size();
        let k = self.degree;
        // q is cyclic iff q is reachable from one of its own sections
        (0..n)
            .filter(|&q| {
                let mut seen = vec![false; n];
                let mut stack: Vec<usize> =
                    (0..k).map(|x| self.sections[q * k + x] as usize).collect();
                while let Some(s) = stack.pop() {
                    if s == q {
                        return true;
                    }
                    if !std::mem::replace(&mut seen[s], true) {
                        stack.extend((0..k).map(|x| self.sections[s * k + x] as usize));
                    }
                }
                false
            })
            .collect()
    }

    /// The product `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &CanonicalElement) -> CanonicalElement {
        assert_eq!(
            self.degree, inner.degree,
            "elements over different alphabets"
        );
        let k = self.degree;
        if inner.is_identity() {
            return self.clone();
        }
        if self.is_identity() {
            return inner.clone();
        }
        let mut index: HashMap<(u32, u32), usize> = HashMap::new();
        let mut pairs: Vec<(u32, u32)> = vec![(0, 0)];
        index.insert((0, 0), 0);
        let mut outputs = Vec::new();
        let mut sections = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (g, h) = pairs[i];
            let mut images = Vec::with_capacity(k);
            for x in 0..k {
                let y = inner.outputs[h as usize].apply(x);
                let z = self.outputs[g as usize].apply(y);
                images.push(z);
                let pair = (
                    self.sections[g as usize * k + y],
                    inner.sections[h as usize * k + x],
                );
                let j = *index.entry(pair).or_insert_with(|| {
                    pairs.push(pair);
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                });
                sections.push((i, x, j));
            }
            if outputs.len() <= i {
                outputs.resize(i + 1, None);
            }
            outputs[i] = Some(Permutation::from_images(images).expect("composition of bijections"));
        }
        let n = pairs.len();
        let mut flat = vec![0usize; n * k];
        for (i, x, j) in sections {
            flat[i * k + x] = j;
        }
        let table = Table {
            degree: k,
            outputs: outputs.into_iter().map(|p| p.expect("expanded")).collect(),
            sections: flat,
        };
        Self::from_table(&table, 0)
    }

    pub fn inverse(&self) -> CanonicalElement {
        let k = self.degree;
        let outputs: Vec<Permutation> = self.outputs.iter().map(Permutation::inverse).collect();
        let mut sections = Vec::with_capacity(self.sections.len());
        for (q, inv) in outputs.iter().enumerate() {
            for y in 0..k {
                sections.push(self.sections[q * k + inv.apply(y)] as usize);
            }
        }
        let table = Table {
            degree: k,
            outputs,
            sections,
        };
        Self::renumber(&table, 0)
    }

    pub fn pow(&self, exponent: i64) -> CanonicalElement {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = CanonicalElement::identity(self.degree);
        for _ in 0..exponent.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }
}

impl PartialOrd for CanonicalElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Smaller automata first, then lexicographic structure.
impl Ord for CanonicalElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.outputs
            .len()
            .cmp(&other.outputs.len())
            .then_with(|| self.degree.cmp(&other.degree))
            .then_with(|| self.outputs.cmp(&other.outputs))
            .then_with(|| self.sections.cmp(&other.sections))
    }
}

impl fmt::Debug for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.degree;
        let states: Vec<String> = (0..self.size())
            .map(|q| {
                let secs: Vec<String> = (0..k)
                    .map(|x| self.sections[q * k + x].to_string())
                    .collect();
                format!("{}:{}({})", q, self.outputs[q], secs.join(","))
            })
            .collect();
        write!(f, "Element[{}]", states.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odometer() -> CanonicalElement {
        // a = (0 1)(e, a)
        let table = Table {
            degree: 2,
            outputs: vec![
                Permutation::transposition(2, 0, 1).unwrap(),
                Permutation::identity(2),
            ],
            sections: vec![1, 0, 1, 1],
        };
        CanonicalElement::from_table(&table, 0)
    }

    #[test]
    fn identity_is_canonical() {
        let e = CanonicalElement::identity(2);
        assert!(e.is_identity());
        let a = odometer();
        assert!(!a.is_identity());
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn odometer_adds_one() {
        let a = odometer();
        assert_eq!(a.act(&[1, 1, 0]).unwrap(), vec![0, 0, 1]);
        let a3 = a.pow(3);
        // 3 in little-endian binary is 110
        assert_eq!(a3.act(&[0, 0, 0]).unwrap(), vec![1, 1, 0]);
        assert_eq!(a.pow(-1).act(&[0, 0, 1]).unwrap(), vec![1, 1, 0]);
        assert_eq!(a.section(&[1]).unwrap(), a);
        assert!(a.section(&[0]).unwrap().is_identity());
        assert_eq!(a.cyclic_states(), vec![0, 1]);
    }

    #[test]
    fn powers_of_two_are_conjugate_to_sections() {
        let a = odometer();
        let a2 = a.pow(2);
        // a^2 = (a, a): fixes the first letter, sections equal a
        assert!(a2.root_permutation().is_identity());
        assert_eq!(a2.section_at(0), a);
        assert_eq!(a2.section_at(1), a);
    }
}
