//! Moore-style partition refinement for invertible Mealy automata.
//!
//! Two states end up in the same class iff they have the same output
//! permutation and, letter by letter, sections in the same class. At the
//! fixed point that is exactly "acts identically on every finite word".

use std::collections::HashMap;

use crate::alphabet::{Letter, Permutation};

/// Read access to a complete transition table. Implemented by
/// [`crate::MealyAutomaton`] and by the internal tables of canonical elements.
pub trait MealyTable {
    fn degree(&self) -> usize;
    fn state_count(&self) -> usize;
    fn output_of(&self, state: usize) -> &Permutation;
    fn section_of(&self, state: usize, letter: Letter) -> usize;
}

/// Returns the class of every state. Classes are numbered in order of
/// first appearance, so the result is deterministic.
pub fn partition_refinement<T: MealyTable + ?Sized>(table: &T) -> Vec<usize> {
    let n = table.state_count();
    let k = table.degree();

    let mut class = Vec::with_capacity(n);
    let mut by_output: HashMap<&Permutation, usize> = HashMap::new();
    for q in 0..n {
        let next = by_output.len();
        class.push(*by_output.entry(table.output_of(q)).or_insert(next));
    }
    let mut count = by_output.len();

    loop {
        let mut by_signature: HashMap<Vec<usize>, usize> = HashMap::with_capacity(n);
        let mut refined = Vec::with_capacity(n);
        let mut signature = Vec::with_capacity(k + 1);
        for q in 0..n {
            signature.clear();
            signature.push(class[q]);
            signature.extend((0..k).map(|x| class[table.section_of(q, x)]));
            let next = by_signature.len();
            let id = match by_signature.get(&signature) {
                Some(&id) => id,
                None => {
                    by_signature.insert(signature.clone(), next);
                    next
                }
            };
            refined.push(id);
        }
        let refined_count = by_signature.len();
        class = refined;
        // refinement never merges classes, so an unchanged count is the fixed point
        if refined_count == count {
            return class;
        }
        count = refined_count;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Raw {
        outputs: Vec<Permutation>,
        sections: Vec<Vec<usize>>,
    }

    impl MealyTable for Raw {
        fn degree(&self) -> usize {
            2
        }
        fn state_count(&self) -> usize {
            self.outputs.len()
        }
        fn output_of(&self, state: usize) -> &Permutation {
            &self.outputs[state]
        }
        fn section_of(&self, state: usize, letter: Letter) -> usize {
            self.sections[state][letter]
        }
    }

    #[test]
    fn identity_duplicates_merge() {
        let id = Permutation::identity(2);
        let raw = Raw {
            outputs: vec![id.clone(), id],
            sections: vec![vec![1, 1], vec![0, 0]],
        };
        assert_eq!(partition_refinement(&raw), vec![0, 0]);
    }

    #[test]
    fn distinguishes_at_depth() {
        // states 0 and 1 share outputs at the root but differ one level down
        let id = Permutation::identity(2);
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        let raw = Raw {
            outputs: vec![id.clone(), id.clone(), id, swap],
            sections: vec![vec![2, 2], vec![3, 2], vec![2, 2], vec![2, 2]],
        };
        let classes = partition_refinement(&raw);
        assert_ne!(classes[0], classes[1]);
        assert_eq!(classes[0], classes[2]);
    }
}
