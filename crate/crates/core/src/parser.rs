//! Line-oriented text format for wreath recursions.
//!
//! ```text
//! # Basilica
//! alphabet 2
//! title Basilica group
//! a = (0 1)(b, id)
//! b = id(a, id)
//! id = id(id, id)
//! gens a b
//! ```
//!
//! A state line reads `NAME = PERM(SEC_0, ..., SEC_{k-1})` where `PERM` is
//! `id` or a product of disjoint cycles such as `(0 1)(2 3)` (commas inside
//! a cycle are also accepted), and `SEC_x` names the section at input letter
//! `x`. `title` and `cite` lines carry optional free-text metadata. Comments
//! start with `#`; blank lines are ignored.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::alphabet::{Alphabet, Letter, Permutation};
use crate::automaton::{MealyAutomaton, State, StateId};
use crate::error::Error as CoreError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
    #[error("{0}")]
    Syntax(String),
    #[error("missing `alphabet` line")]
    MissingAlphabet,
    #[error("`alphabet` declared more than once")]
    DuplicateAlphabet,
    #[error("alphabet size must be a positive integer")]
    InvalidAlphabet,
    #[error("missing `gens` line")]
    MissingGens,
    #[error("`gens` declared more than once")]
    DuplicateGens,
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("unresolved names {}", .0.join(", "))]
    UnresolvedNames(Vec<String>),
    #[error("state `{state}` has {found} sections, expected {expected}")]
    SectionArity {
        state: String,
        expected: usize,
        found: usize,
    },
    #[error("letter {0} repeated in cycle notation")]
    RepeatedLetter(Letter),
    #[error("letter {letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: Letter, size: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

impl ParseError {
    fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        Self { line, column, kind }
    }
}

/// One `NAME = PERM(SECTIONS)` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDef {
    pub name: String,
    pub permutation: Permutation,
    pub sections: Vec<String>,
}

/// A validated wreath-recursion description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionDocument {
    alphabet: Alphabet,
    states: Vec<StateDef>,
    gens: Vec<String>,
    title: Option<String>,
    cite: Option<String>,
}

impl RecursionDocument {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<StateDef>,
        gens: Vec<String>,
    ) -> Result<Self, CoreError> {
        let mut names = HashSet::new();
        for def in &states {
            if !names.insert(def.name.as_str()) {
                return Err(CoreError::DuplicateState(def.name.clone()));
            }
            if def.permutation.degree() != alphabet.size() {
                return Err(CoreError::DegreeMismatch {
                    expected: alphabet.size(),
                    found: def.permutation.degree(),
                });
            }
            if def.sections.len() != alphabet.size() {
                return Err(CoreError::SectionArity {
                    state: def.name.clone(),
                    expected: alphabet.size(),
                    found: def.sections.len(),
                });
            }
        }
        for def in &states {
            if let Some(bad) = def.sections.iter().find(|s| !names.contains(s.as_str())) {
                return Err(CoreError::UnknownGenerator(bad.clone()));
            }
        }
        if let Some(bad) = gens.iter().find(|g| !names.contains(g.as_str())) {
            return Err(CoreError::UnknownGenerator(bad.clone()));
        }
        Ok(Self {
            alphabet,
            states,
            gens,
            title: None,
            cite: None,
        })
    }

    /// Describes an existing automaton. State names must be valid
    /// identifiers for the result to serialize and parse back.
    pub fn from_automaton(automaton: &MealyAutomaton, gens: &[StateId]) -> Self {
        let states = automaton
            .states()
            .iter()
            .map(|s| StateDef {
                name: s.name().to_string(),
                permutation: s.output().clone(),
                sections: s
                    .sections()
                    .iter()
                    .map(|&q| automaton.name(q).to_string())
                    .collect(),
            })
            .collect();
        Self {
            alphabet: automaton.alphabet(),
            states,
            gens: gens
                .iter()
                .map(|&g| automaton.name(g).to_string())
                .collect(),
            title: None,
            cite: None,
        }
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn with_cite(mut self, cite: impl Into<String>) -> Self {
        self.cite = Some(cite.into());
        self
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn states(&self) -> &[StateDef] {
        &self.states
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn title(&self) -> Option<&str> {
        self.title.as_deref()
    }

    pub fn cite(&self) -> Option<&str> {
        self.cite.as_deref()
    }

    /// Builds the automaton (states in declaration order) and resolves the
    /// generators.
    pub fn to_automaton(&self) -> (MealyAutomaton, Vec<StateId>) {
        let index: HashMap<&str, usize> = self
            .states
            .iter()
            .enumerate()
            .map(|(i, d)| (d.name.as_str(), i))
            .collect();
        let states = self
            .states
            .iter()
            .map(|d| {
                State::new(
                    d.name.clone(),
                    d.permutation.clone(),
                    d.sections
                        .iter()
                        .map(|s| StateId(index[s.as_str()]))
                        .collect(),
                )
            })
            .collect();
        let automaton = MealyAutomaton::new(self.alphabet, states)
            .expect("a validated document describes a valid automaton");
        let gens = self
            .gens
            .iter()
            .map(|g| StateId(index[g.as_str()]))
            .collect();
        (automaton, gens)
    }

    /// Canonical text: one state per line, cycles starting at their least
    /// letter in ascending order, single spaces.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RecursionDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet {}", self.alphabet.size())?;
        if let Some(title) = &self.title {
            writeln!(f, "title {title}")?;
        }
        if let Some(cite) = &self.cite {
            writeln!(f, "cite {cite}")?;
        }
        for def in &self.states {
            writeln!(
                f,
                "{} = {}({})",
                def.name,
                def.permutation,
                def.sections.join(", ")
            )?;
        }
        writeln!(f, "gens {}", self.gens.join(" "))
    }
}

pub fn parse(text: &str) -> Result<RecursionDocument, ParseError> {
    Parser::default().run(text)
}

/// Like [`parse`], for raw bytes of unknown encoding.
pub fn parse_bytes(bytes: &[u8]) -> Result<RecursionDocument, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let line_start = valid.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
            let column = String::from_utf8_lossy(&valid[line_start..])
                .chars()
                .count()
                + 1;
            Err(ParseError::new(line, column, ParseErrorKind::InvalidUtf8))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Open,
    Close,
    Comma,
    Equals,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Equals => f.write_str("`=`"),
        }
    }
}

type Spanned = (Tok, usize);

struct Line<'a> {
    number: usize,
    text: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
}

impl Line<'_> {
    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.number, column, kind)
    }

    fn end_column(&self) -> usize {
        self.text.chars().count() + 1
    }

    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<usize, ParseError> {
        match self.next() {
            Some((t, col)) if t == want => Ok(col),
            Some((t, col)) => Err(self.err(
                col,
                ParseErrorKind::Syntax(format!("expected {want}, found {t}")),
            )),
            None => Err(self.err(
                self.end_column(),
                ParseErrorKind::Syntax(format!("expected {want}, found end of line")),
            )),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.next() {
            None => Ok(()),
            Some((t, col)) => Err(self.err(col, ParseErrorKind::Syntax(format!("unexpected {t}")))),
        }
    }
}

fn tokenize(number: usize, text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                toks.push((Tok::Open, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::Close, col));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, col));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Equals, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Number(chars[start..i].iter().collect()), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(ParseError::new(
                    number,
                    col,
                    ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                ))
            }
        }
    }
    Ok(toks)
}

struct RawState {
    name: String,
    line: usize,
    column: usize,
    cycles: Vec<Vec<(Letter, usize)>>,
    identity: bool,
    sections: Vec<(String, usize)>,
}

#[derive(Default)]
struct Parser {
    alphabet: Option<(usize, usize)>,
    title: Option<String>,
    cite: Option<String>,
    states: Vec<RawState>,
    gens: Option<(usize, Vec<(String, usize)>)>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<RecursionDocument, ParseError> {
        let mut last_line = 1;
        for (i, raw) in text.lines().enumerate() {
            let number = i + 1;
            last_line = number;
            let body = raw.split('#').next().unwrap_or("");
            // metadata lines hold free text and are not tokenized past the keyword
            let trimmed = body.trim_start();
            let keyword = trimmed.split_whitespace().next().unwrap_or("");
            let toks = if keyword == "title" || keyword == "cite" {
                let col = body[..body.len() - trimmed.len()].chars().count() + 1;
                vec![(Tok::Ident(keyword.to_string()), col)]
            } else {
                tokenize(number, body)?
            };
            if toks.is_empty() {
                continue;
            }
            let mut line = Line {
                number,
                text: body,
                toks,
                pos: 0,
            };
            self.line(&mut line)?;
        }
        self.validate(last_line)
    }

    fn line(&mut self, line: &mut Line<'_>) -> Result<(), ParseError> {
        let (first, col) = line.next().expect("line has tokens");
        let is_state = matches!(line.peek(), Some((Tok::Equals, _)));
        let keyword = match &first {
            Tok::Ident(word) if !is_state => word.as_str(),
            Tok::Ident(_) => "",
            other => {
                return Err(line.err(
                    col,
                    ParseErrorKind::Syntax(format!(
                        "expected a keyword or state name, found {other}"
                    )),
                ))
            }
        };
        match keyword {
            "alphabet" => {
                if self.alphabet.is_some() {
                    return Err(line.err(col, ParseErrorKind::DuplicateAlphabet));
                }
                let size = match line.next() {
                    Some((Tok::Number(n), c)) => n
                        .parse::<usize>()
                        .ok()
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| line.err(c, ParseErrorKind::InvalidAlphabet))?,
                    Some((_, c)) => return Err(line.err(c, ParseErrorKind::InvalidAlphabet)),
                    None => {
                        return Err(line.err(line.end_column(), ParseErrorKind::InvalidAlphabet))
                    }
                };
                line.finish()?;
                self.alphabet = Some((size, line.number));
            }
            "title" | "cite" => {
                let rest = free_text_after(line.text, col, keyword);
                if keyword == "title" {
                    self.title = Some(rest);
                } else {
                    self.cite = Some(rest);
                }
            }
            "gens" => {
                if self.gens.is_some() {
                    return Err(line.err(col, ParseErrorKind::DuplicateGens));
                }
                let mut names = Vec::new();
                while let Some((t, c)) = line.next() {
                    match t {
                        Tok::Ident(name) => names.push((name, c)),
                        other => {
                            return Err(line.err(
                                c,
                                ParseErrorKind::Syntax(format!(
                                    "expected a generator name, found {other}"
                                )),
                            ))
                        }
                    }
                }
                self.gens = Some((line.number, names));
            }
            "" => {
                let Tok::Ident(name) = first else {
                    unreachable!()
                };
                line.expect(Tok::Equals)?;
                let state = self.state(line, name, col)?;
                self.states.push(state);
            }
            other => {
                return Err(line.err(
                    col,
                    ParseErrorKind::Syntax(format!("unknown keyword `{other}`")),
                ))
            }
        }
        Ok(())
    }

    fn state(
        &mut self,
        line: &mut Line<'_>,
        name: String,
        column: usize,
    ) -> Result<RawState, ParseError> {
        let mut cycles = Vec::new();
        let mut identity = false;
        if let Some((Tok::Ident(word), _)) = line.peek() {
            if word == "id" {
                identity = true;
                line.next();
            }
        }
        loop {
            let open = line.expect(Tok::Open)?;
            match line.peek() {
                Some((Tok::Number(_), _)) if !identity => {
                    let mut cycle = Vec::new();
                    loop {
                        match line.next() {
                            Some((Tok::Number(n), c)) => {
                                let letter = n.parse::<Letter>().unwrap_or(Letter::MAX);
                                cycle.push((letter, c));
                            }
                            Some((Tok::Comma, _)) => {}
                            Some((Tok::Close, _)) => break,
                            Some((t, c)) => {
                                return Err(line.err(
                                    c,
                                    ParseErrorKind::Syntax(format!(
                                        "expected a letter in cycle, found {t}"
                                    )),
                                ))
                            }
                            None => {
                                return Err(line.err(
                                    line.end_column(),
                                    ParseErrorKind::Syntax("unterminated cycle".into()),
                                ))
                            }
                        }
                    }
                    cycles.push(cycle);
                }
                Some((Tok::Ident(_), _)) => {
                    let mut sections = Vec::new();
                    loop {
                        match line.next() {
                            Some((Tok::Ident(s), c)) => sections.push((s, c)),
                            Some((t, c)) => {
                                return Err(line.err(
                                    c,
                                    ParseErrorKind::Syntax(format!(
                                        "expected a section name, found {t}"
                                    )),
                                ))
                            }
                            None => {
                                return Err(line.err(
                                    line.end_column(),
                                    ParseErrorKind::Syntax("unterminated section list".into()),
                                ))
                            }
                        }
                        match line.next() {
                            Some((Tok::Comma, _)) => {}
                            Some((Tok::Close, _)) => break,
                            Some((t, c)) => {
                                return Err(line.err(
                                    c,
                                    ParseErrorKind::Syntax(format!(
                                        "expected `,` or `)`, found {t}"
                                    )),
                                ))
                            }
                            None => {
                                return Err(line.err(
                                    line.end_column(),
                                    ParseErrorKind::Syntax("unterminated section list".into()),
                                ))
                            }
                        }
                    }
                    line.finish()?;
                    if !identity && cycles.is_empty() {
                        return Err(line.err(
                            open,
                            ParseErrorKind::Syntax(
                                "expected `id` or a cycle before the sections".into(),
                            ),
                        ));
                    }
                    return Ok(RawState {
                        name,
                        line: line.number,
                        column,
                        cycles,
                        identity,
                        sections,
                    });
                }
                Some((t, c)) => {
                    let (t, c) = (t.clone(), *c);
                    return Err(line.err(
                        c,
                        ParseErrorKind::Syntax(format!(
                            "expected a cycle or section list, found {t}"
                        )),
                    ));
                }
                None => {
                    return Err(line.err(
                        line.end_column(),
                        ParseErrorKind::Syntax("expected a cycle or section list".into()),
                    ))
                }
            }
        }
    }

    fn validate(self, last_line: usize) -> Result<RecursionDocument, ParseError> {
        let (size, _) = self
            .alphabet
            .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::MissingAlphabet))?;
        let alphabet = Alphabet::new(size).expect("size checked at parse time");

        let mut names: HashSet<&str> = HashSet::new();
        for s in &self.states {
            if !names.insert(s.name.as_str()) {
                return Err(ParseError::new(
                    s.line,
                    s.column,
                    ParseErrorKind::DuplicateState(s.name.clone()),
                ));
            }
        }

        let mut states = Vec::with_capacity(self.states.len());
        let mut unresolved: Vec<(String, usize, usize)> = Vec::new();
        for s in &self.states {
            let mut seen = vec![false; size];
            let mut cycles = Vec::with_capacity(s.cycles.len());
            for cycle in &s.cycles {
                for &(letter, col) in cycle {
                    if letter >= size {
                        return Err(ParseError::new(
                            s.line,
                            col,
                            ParseErrorKind::LetterOutOfRange { letter, size },
                        ));
                    }
                    if std::mem::replace(&mut seen[letter], true) {
                        return Err(ParseError::new(
                            s.line,
                            col,
                            ParseErrorKind::RepeatedLetter(letter),
                        ));
                    }
                }
                cycles.push(cycle.iter().map(|&(l, _)| l).collect::<Vec<_>>());
            }
            debug_assert!(!s.identity || cycles.is_empty());
            let permutation =
                Permutation::from_cycles(size, &cycles).expect("cycles validated above");
            if s.sections.len() != size {
                return Err(ParseError::new(
                    s.line,
                    s.column,
                    ParseErrorKind::SectionArity {
                        state: s.name.clone(),
                        expected: size,
                        found: s.sections.len(),
                    },
                ));
            }
            for (sec, col) in &s.sections {
                if !names.contains(sec.as_str()) && !unresolved.iter().any(|(n, ..)| n == sec) {
                    unresolved.push((sec.clone(), s.line, *col));
                }
            }
            states.push(StateDef {
                name: s.name.clone(),
                permutation,
                sections: s.sections.iter().map(|(n, _)| n.clone()).collect(),
            });
        }
        if let Some((_, line, col)) = unresolved.first() {
            return Err(ParseError::new(
                *line,
                *col,
                ParseErrorKind::UnresolvedNames(
                    unresolved.iter().map(|(n, ..)| n.clone()).collect(),
                ),
            ));
        }

        let (gens_line, gens) = self
            .gens
            .ok_or_else(|| ParseError::new(last_line, 1, ParseErrorKind::MissingGens))?;
        if let Some((g, col)) = gens.iter().find(|(g, _)| !names.contains(g.as_str())) {
            return Err(ParseError::new(
                gens_line,
                *col,
                ParseErrorKind::UnknownGenerator(g.clone()),
            ));
        }

        Ok(RecursionDocument {
            alphabet,
            states,
            gens: gens.into_iter().map(|(g, _)| g).collect(),
            title: self.title,
            cite: self.cite,
        })
    }
}

fn free_text_after(text: &str, keyword_column: usize, keyword: &str) -> String {
    let start: usize = text
        .chars()
        .take(keyword_column - 1 + keyword.chars().count())
        .map(char::len_utf8)
        .sum();
    text[start..].trim().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASILICA: &str =
        "alphabet 2\na = (0 1)(b, id)\nb = id(a, id)\nid = id(id, id)\ngens a b\n";

    #[test]
    fn parses_basilica() {
        let doc = parse(BASILICA).unwrap();
        assert_eq!(doc.alphabet().size(), 2);
        assert_eq!(doc.states().len(), 3);
        assert_eq!(doc.gens(), &["a".to_string(), "b".to_string()]);
        let (aut, gens) = doc.to_automaton();
        assert_eq!(aut.section(gens[0], 0), gens[1]);
        assert_eq!(aut.output(gens[0], 0), 1);
    }

    #[test]
    fn identity_document_serializes_canonically() {
        let doc = parse("alphabet 2\ne = id(e, e)\ngens e").unwrap();
        assert_eq!(doc.states().len(), 1);
        assert_eq!(doc.serialize(), "alphabet 2\ne = id(e, e)\ngens e\n");
    }

    #[test]
    fn unresolved_names_are_reported_together() {
        let err = parse("alphabet 2\na = (0 1)(b, c)\ngens a").unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::UnresolvedNames(vec!["b".into(), "c".into()])
        );
        assert_eq!((err.line, err.column), (2, 11));
    }

    #[test]
    fn comments_metadata_and_comma_cycles() {
        let text =
            "# ternary\nalphabet 3\ntitle Sierpinski gasket # variant\ncite grigorchuk2014\n\
                    a = (0,2)(e, a, e)\ne = id(e, e, e)\ngens a\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.title(), Some("Sierpinski gasket"));
        assert_eq!(doc.cite(), Some("grigorchuk2014"));
        assert_eq!(doc.states()[0].permutation.to_string(), "(0 2)");
        assert_eq!(parse(&doc.serialize()).unwrap(), doc);
    }

    #[test]
    fn error_cases() {
        let kind = |t: &str| parse(t).unwrap_err().kind;
        assert_eq!(
            kind("alphabet 2\na = id(a)\ngens a"),
            ParseErrorKind::SectionArity {
                state: "a".into(),
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            kind("alphabet 2\na = (0 0)(a, a)\ngens a"),
            ParseErrorKind::RepeatedLetter(0)
        );
        assert_eq!(
            kind("alphabet 2\na = (0 2)(a, a)\ngens a"),
            ParseErrorKind::LetterOutOfRange { letter: 2, size: 2 }
        );
        assert_eq!(
            kind("alphabet 2\na = id(a, a)\na = id(a, a)\ngens a"),
            ParseErrorKind::DuplicateState("a".into())
        );
        assert_eq!(
            kind("alphabet 2\na = id(a, a)\n"),
            ParseErrorKind::MissingGens
        );
        assert_eq!(
            kind("a = id(a, a)\ngens a"),
            ParseErrorKind::MissingAlphabet
        );
        assert_eq!(
            kind("alphabet 2\na = id(a, a)\ngens z"),
            ParseErrorKind::UnknownGenerator("z".into())
        );
        assert!(matches!(
            kind("alphabet 2\na = (a, a)\ngens a"),
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            kind("alphabet 2\na = id(a, a\ngens a"),
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            kind("alphabet 2\na = id(a, a) x\ngens a"),
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            kind("alphabet 2\na ~ id(a, a)\ngens a"),
            ParseErrorKind::Syntax(_)
        ));
        assert_eq!(kind("alphabet 0\n"), ParseErrorKind::InvalidAlphabet);
    }

    #[test]
    fn invalid_utf8_is_a_diagnostic() {
        let err = parse_bytes(b"alphabet 2\na = \xff").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::InvalidUtf8);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn lamplighter_round_trip() {
        let doc = parse("alphabet 2\na = (0 1)(b, a)\nb = id(b, a)\ngens a b").unwrap();
        assert_eq!(parse(&doc.serialize()).unwrap(), doc);
        let (aut, gens) = doc.to_automaton();
        let again = RecursionDocument::from_automaton(&aut, &gens);
        assert_eq!(parse(&again.serialize()).unwrap(), doc);
    }
}
