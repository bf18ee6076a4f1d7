//! Letters, words over a finite alphabet, and permutations of the alphabet.
//!
//! Letters are the integers `0..k`. Words are plain slices of letters; the
//! first letter of a word is the top level of the rooted tree.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

pub type Letter = usize;

/// A finite alphabet `{0, 1, ..., size - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn letters(&self) -> Range<Letter> {
        0..self.size
    }

    pub fn check_letter(&self, letter: Letter) -> Result<()> {
        if letter < self.size {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter,
                size: self.size,
            })
        }
    }

    pub fn check_word(&self, word: &[Letter]) -> Result<()> {
        word.iter().try_for_each(|&x| self.check_letter(x))
    }

    /// Number of words of length `n`, `None` if it does not fit in a `usize`.
    pub fn level_size(&self, n: usize) -> Option<usize> {
        u32::try_from(n).ok().and_then(|n| self.size.checked_pow(n))
    }

    /// Exact `size^n`, for diagnostics on levels that are too large to build.
    pub fn level_size_wide(&self, n: usize) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..n {
            acc = acc.saturating_mul(self.size as u128);
        }
        acc
    }

    /// Position of `word` among the words of its length in lexicographic
    /// order, leftmost letter most significant.
    pub fn word_index(&self, word: &[Letter]) -> usize {
        word.iter().fold(0, |acc, &x| acc * self.size + x)
    }

    /// Inverse of [`Alphabet::word_index`].
    pub fn word_at(&self, mut index: usize, len: usize) -> Vec<Letter> {
        let mut word = vec![0; len];
        for slot in word.iter_mut().rev() {
            *slot = index % self.size;
            index /= self.size;
        }
        word
    }

    /// All words of length `len` in lexicographic order.
    pub fn words(&self, len: usize) -> impl Iterator<Item = Vec<Letter>> + '_ {
        let count = self.level_size(len).unwrap_or(usize::MAX);
        (0..count).map(move |i| self.word_at(i, len))
    }

    /// Letters print as single base-36 digits for alphabets of up to 36
    /// letters, otherwise as dot-separated decimals.
    pub fn format_word(&self, word: &[Letter]) -> String {
        if self.size <= 36 {
            word.iter()
                .map(|&x| std::char::from_digit(x as u32, 36).unwrap_or('?'))
                .collect()
        } else {
            word.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub fn format_index(&self, index: usize, len: usize) -> String {
        self.format_word(&self.word_at(index, len))
    }

    /// Inverse of [`Alphabet::format_word`].
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        let word: Vec<Letter> = if self.size <= 36 {
            text.chars()
                .map(|c| {
                    c.to_digit(36)
                        .map(|d| d as Letter)
                        .ok_or_else(|| Error::Malformed(format!("`{c}` is not a letter")))
                })
                .collect::<Result<_>>()?
        } else if text.is_empty() {
            Vec::new()
        } else {
            text.split('.')
                .map(|t| {
                    t.parse::<Letter>()
                        .map_err(|_| Error::Malformed(format!("`{t}` is not a letter")))
                })
                .collect::<Result<_>>()?
        };
        self.check_word(&word)?;
        Ok(word)
    }
}

/// A bijection of the alphabet, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Letter>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<Letter>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in &images {
            if x >= degree {
                return Err(Error::LetterOutOfRange {
                    letter: x,
                    size: degree,
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::RepeatedLetter { letter: x });
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation from disjoint cycles. Letters may appear in at
    /// most one cycle, once.
    pub fn from_cycles(degree: usize, cycles: &[Vec<Letter>]) -> Result<Self> {
        let mut images: Vec<Letter> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::LetterOutOfRange {
                        letter: x,
                        size: degree,
                    });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::RepeatedLetter { letter: x });
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn transposition(degree: usize, a: Letter, b: Letter) -> Result<Self> {
        Self::from_cycles(degree, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: Letter) -> Letter {
        self.images[x]
    }

    pub fn images(&self) -> &[Letter] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        Permutation {
            images: inner.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its least letter, ordered by
    /// that letter.
    pub fn cycles(&self) -> Vec<Vec<Letter>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Every permutation of `0..degree`, identity first, in lexicographic
    /// order of image tables.
    pub fn all(degree: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<Letter> = (0..degree).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..current.len())
                .rev()
                .find(|&i| current[i - 1] < current[i])
            else {
                break;
            };
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot has a larger successor");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for cycle in cycles {
            let body: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms_on_s3() {
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        let id = Permutation::identity(3);
        for p in &all {
            assert_eq!(p.compose(&p.inverse()), id);
            assert_eq!(p.inverse().compose(p), id);
            assert_eq!(p.compose(&id), *p);
            for q in &all {
                for r in &all {
                    assert_eq!(p.compose(&q.compose(r)), p.compose(q).compose(r));
                }
            }
        }
    }

    #[test]
    fn cycle_notation_is_canonical() {
        let p = Permutation::from_cycles(4, &[vec![3, 2], vec![1, 0]]).unwrap();
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        let q = Permutation::from_cycles(3, &[vec![2, 0, 1]]).unwrap();
        assert_eq!(q.cycles(), vec![vec![0, 1, 2]]);
        assert_eq!(Permutation::identity(5).to_string(), "id");
    }

    #[test]
    fn malformed_cycles_are_rejected() {
        assert_eq!(
            Permutation::from_cycles(2, &[vec![0, 0]]),
            Err(Error::RepeatedLetter { letter: 0 })
        );
        assert_eq!(
            Permutation::from_cycles(2, &[vec![0, 2]]),
            Err(Error::LetterOutOfRange { letter: 2, size: 2 })
        );
        assert!(Permutation::from_images(vec![1, 1]).is_err());
    }

    #[test]
    fn word_indexing_is_lexicographic() {
        let a = Alphabet::new(3).unwrap();
        let words: Vec<_> = a.words(2).collect();
        assert_eq!(words[0], vec![0, 0]);
        assert_eq!(words[1], vec![0, 1]);
        assert_eq!(words[3], vec![1, 0]);
        for (i, w) in words.iter().enumerate() {
            assert_eq!(a.word_index(w), i);
        }
        assert_eq!(a.format_word(&[2, 0, 1]), "201");
        assert_eq!(a.parse_word("201").unwrap(), vec![2, 0, 1]);
        assert!(a.parse_word("3").is_err());
    }

    #[test]
    fn empty_alphabet_is_rejected() {
        assert_eq!(Alphabet::new(0), Err(Error::EmptyAlphabet));
        assert_eq!(Alphabet::new(1).unwrap().words(3).count(), 1);
    }
}
