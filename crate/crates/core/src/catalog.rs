//! Built-in automata with machine-checkable expected properties.

use std::fmt;

use crate::alphabet::{Alphabet, Permutation};
use crate::automaton::StateId;
use crate::error::{Error, Result};
use crate::group::{AutomatonGroup, Recurrence};
use crate::nucleus::{compute_nucleus, Bound, NucleusBounds, Verdict};
use crate::parser::{parse, RecursionDocument, StateDef};
use crate::schreier::{build_schreier, SchreierLimits};

/// A statement about an entry that [`check`] can decide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedProperty {
    /// `Γ_n` is connected for every `1 ≤ n ≤ level`.
    ConnectedUpTo(usize),
    /// Frozen component counts `(n, count)` of `Γ_n`.
    ComponentCounts(Vec<(usize, usize)>),
    /// The nucleus search succeeds with a nucleus of this size.
    Contracting {
        nucleus_size: usize,
    },
    /// The nucleus search runs into the element bound.
    ExceedsElementBound(usize),
    /// `word` fixes `vertex` and its section there equals `section`.
    StabilizerSection {
        word: String,
        vertex: String,
        section: String,
    },
    /// `word` maps `from` to `to`.
    Maps {
        word: String,
        from: String,
        to: String,
    },
    Recurrent,
}

impl fmt::Display for ExpectedProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ConnectedUpTo(n) => write!(f, "Γ_n connected for n ≤ {n}"),
            Self::ComponentCounts(counts) => {
                write!(f, "component counts")?;
                for (n, c) in counts {
                    write!(f, " n={n}:{c}")?;
                }
                Ok(())
            }
            Self::Contracting { nucleus_size } => write!(f, "contracting, |N| = {nucleus_size}"),
            Self::ExceedsElementBound(m) => write!(f, "nucleus search exceeds {m} elements"),
            Self::StabilizerSection {
                word,
                vertex,
                section,
            } => write!(f, "{word} fixes {vertex} with section {section}"),
            Self::Maps { word, from, to } => write!(f, "{word} maps {from} to {to}"),
            Self::Recurrent => write!(f, "recurrent"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub document: RecursionDocument,
    pub citation: String,
    /// False for supplementary reference examples.
    pub primary: bool,
    pub notes: String,
    pub expected: Vec<ExpectedProperty>,
}

impl CatalogEntry {
    pub fn group(&self) -> AutomatonGroup {
        AutomatonGroup::from_document(&self.document)
    }
}

struct Seed {
    key: &'static str,
    title: &'static str,
    text: &'static str,
    citation: &'static str,
    primary: bool,
    notes: &'static str,
}

const SEEDS: &[Seed] = &[
    Seed {
        key: "basilica",
        title: "Basilica group IMG(z^2-1)",
        text: "a = (0 1)(b, id)\nb = id(a, id)\nid = id(id, id)\ngens a b",
        citation: "Grigorchuk, Zuk 2002",
        primary: true,
        notes: "",
    },
    Seed {
        key: "aleshin",
        title: "Aleshin automaton, free group of rank 3",
        text: "a = (0 1)(b, c)\nb = (0 1)(c, b)\nc = id(a, a)\ngens a b c",
        citation: "Vorobets, Vorobets 2007",
        primary: true,
        notes: "",
    },
    Seed {
        key: "aut882",
        title: "Automaton 882",
        text: "a = (0 1)(c, c)\nb = id(b, c)\nc = id(b, a)\ngens a b c",
        citation: "Bondarenko et al. 2008, classification of 3-state 2-letter automata",
        primary: true,
        notes: "",
    },
    Seed {
        key: "aut878",
        title: "Automaton 878",
        text: "a = (0 1)(b, b)\nb = id(b, c)\nc = id(b, a)\ngens a b c",
        citation: "Bondarenko et al. 2008, classification of 3-state 2-letter automata",
        primary: true,
        notes: "",
    },
    Seed {
        key: "aut2853",
        title: "Automaton 2853",
        text: "a = (0 1)(c, c)\nb = (0 1)(b, a)\nc = id(c, c)\ngens a b",
        citation: "Bondarenko et al. 2008, classification of 3-state 2-letter automata",
        primary: true,
        notes: "c acts trivially and is left out of the generating set",
    },
    Seed {
        key: "z2",
        title: "Free abelian group Z^2",
        text: "a = (0 1)(e, b)\nb = id(a, a)\ne = id(e, e)\ngens a b",
        citation: "Bondarenko et al. 2008",
        primary: true,
        notes: "",
    },
    Seed {
        key: "virtually_z3",
        title: "Virtually Z^3 group",
        text: "a = (0 1)(b, b)\nb = id(c, a)\nc = id(a, a)\ngens a b c",
        citation: "Bondarenko et al. 2008",
        primary: true,
        notes: "the identification is a label, not a verified isomorphism",
    },
    Seed {
        key: "half_basilica",
        title: "Half-Basilica",
        text: "a = (0 1)(b, b)\nb = id(c, b)\nc = id(c, a)\ngens a b c",
        citation: "Bondarenko et al. 2008",
        primary: true,
        notes: "",
    },
    Seed {
        key: "lamplighter",
        title: "Lamplighter group Z/2 wr Z",
        text: "a = (0 1)(b, a)\nb = id(b, a)\ngens a b",
        citation: "Grigorchuk, Zuk 2001",
        primary: true,
        notes: "",
    },
    Seed {
        key: "long_range",
        title: "Long range group",
        text: "a = id(a, b)\nb = (0 1)(b, e)\ne = id(e, e)\ngens a b",
        citation: "Benjamini, Hoffman 2005",
        primary: true,
        notes: "",
    },
    Seed {
        key: "sierpinski",
        title: "Sierpinski gasket group with c = (0 1)(c, e, e)",
        text: "a = (0 2)(e, a, e)\nb = (0 1)(e, e, b)\nc = (0 1)(c, e, e)\ne = id(e, e, e)\ngens a b c",
        citation: "Grigorchuk, Savchuk, Sunic 2007",
        primary: true,
        notes: "c reuses (0 1); sierpinski_sigma3 is the (1 2) variant",
    },
    Seed {
        key: "sierpinski_sigma3",
        title: "Sierpinski gasket group with c = (1 2)(c, e, e)",
        text: "a = (0 2)(e, a, e)\nb = (0 1)(e, e, b)\nc = (1 2)(c, e, e)\ne = id(e, e, e)\ngens a b c",
        citation: "Grigorchuk, Savchuk, Sunic 2007",
        primary: true,
        notes: "variant using the otherwise unused permutation (1 2) for c",
    },
    Seed {
        key: "grigorchuk",
        title: "First Grigorchuk group",
        text: "a = (0 1)(e, e)\nb = id(a, c)\nc = id(a, d)\nd = id(e, b)\ne = id(e, e)\ngens a b c d",
        citation: "Grigorchuk 1980",
        primary: false,
        notes: "standard recursion",
    },
    Seed {
        key: "hanoi",
        title: "Hanoi towers group on three pegs",
        text: "a = (0 1)(e, e, a)\nb = (0 2)(e, b, e)\nc = (1 2)(c, e, e)\ne = id(e, e, e)\ngens a b c",
        citation: "Grigorchuk, Sunic 2006",
        primary: false,
        notes: "standard recursion",
    },
    Seed {
        key: "odometer",
        title: "Binary odometer",
        text: "a = (0 1)(e, a)\ne = id(e, e)\ngens a",
        citation: "",
        primary: false,
        notes: "reference example for asymptotic equivalence",
    },
    Seed {
        key: "identity",
        title: "Trivial automaton",
        text: "e = id(e, e)\ngens e",
        citation: "",
        primary: false,
        notes: "degenerate reference example",
    },
];

/// Mother groups listed by [`catalog_list`]; any `mother_D_M` with
/// `D, M ≤ 3` is available through [`catalog_get`].
const LISTED_MOTHERS: &[(usize, usize)] = &[(2, 2), (1, 3)];

pub const MOTHER_MAX: usize = 3;

fn degree_of(text: &str) -> usize {
    // the first state line decides the arity
    let line = text.lines().next().unwrap_or("");
    line.matches(',').count() + 1
}

fn expected(key: &str) -> Vec<ExpectedProperty> {
    use ExpectedProperty::*;
    let contracting = |nucleus_size| Contracting { nucleus_size };
    match key {
        "basilica" => vec![ConnectedUpTo(12), contracting(7), Recurrent],
        "aleshin" => vec![ConnectedUpTo(12), ExceedsElementBound(2000)],
        "aut882" => vec![
            ConnectedUpTo(12),
            Maps {
                word: "c a^-1 c b^-1".into(),
                from: "00".into(),
                to: "11".into(),
            },
            StabilizerSection {
                word: "(c a^-1 c b^-1)^2".into(),
                vertex: "00".into(),
                section: "c a^-1 c b^-1".into(),
            },
            Recurrent,
        ],
        "aut878" => vec![ConnectedUpTo(12), contracting(10), Recurrent],
        "aut2853" => vec![ConnectedUpTo(12), contracting(4), Recurrent],
        "z2" => vec![ConnectedUpTo(12), contracting(9), Recurrent],
        "virtually_z3" => vec![ConnectedUpTo(12), contracting(41)],
        "half_basilica" => vec![ConnectedUpTo(12), contracting(8), Recurrent],
        "lamplighter" => vec![ConnectedUpTo(12), ExceedsElementBound(500), Recurrent],
        "long_range" => vec![ConnectedUpTo(12), Recurrent],
        "sierpinski" => vec![ConnectedUpTo(7), contracting(8)],
        "sierpinski_sigma3" => vec![ConnectedUpTo(7), contracting(4)],
        "grigorchuk" => vec![ConnectedUpTo(12), contracting(5), Recurrent],
        "hanoi" => vec![ConnectedUpTo(7), contracting(4), Recurrent],
        "odometer" => vec![ConnectedUpTo(12), contracting(3), Recurrent],
        "identity" => vec![
            ComponentCounts(vec![(1, 2), (3, 8), (6, 64)]),
            contracting(1),
        ],
        _ => Vec::new(),
    }
}

fn from_seed(seed: &Seed) -> CatalogEntry {
    let text = format!(
        "alphabet {}\ntitle {}\n{}\n",
        degree_of(seed.text),
        seed.title,
        seed.text
    );
    let mut document = parse(&text).expect("catalog recursions are well formed");
    if !seed.citation.is_empty() {
        document = document.with_cite(seed.citation);
    }
    CatalogEntry {
        key: seed.key.to_string(),
        document,
        citation: seed.citation.to_string(),
        primary: seed.primary,
        notes: seed.notes.to_string(),
        expected: expected(seed.key),
    }
}

/// The mother group `M_{d,m}`: for each non-identity `σ ∈ Sym(m)`,
/// `a_{-1,σ} = σ` and `a_{k,σ} = ⟨a_{k,σ}, a_{k-1,σ}, 1, …, 1⟩` for
/// `0 ≤ k ≤ d`; for each non-identity `ρ` fixing `0`,
/// `b_{0,ρ} = ⟨b_{0,ρ}, 1, …, 1⟩ρ` and `b_{k,ρ} = ⟨b_{k,ρ}, b_{k-1,ρ}, 1, …, 1⟩`
/// for `1 ≤ k ≤ d`.
pub fn mother_group(d: usize, m: usize) -> Result<RecursionDocument> {
    if d > MOTHER_MAX || !(2..=MOTHER_MAX).contains(&m) {
        return Err(Error::TooLarge {
            what: "mother group parameters (d ≤ 3, 2 ≤ m ≤ 3)",
            limit: MOTHER_MAX,
            requested: d.max(m),
        });
    }
    let perms: Vec<Permutation> = Permutation::all(m)
        .into_iter()
        .filter(|p| !p.is_identity())
        .collect();
    let fixing: Vec<&Permutation> = perms.iter().filter(|p| p.apply(0) == 0).collect();
    let e = "e".to_string();
    let row = |first: String, second: Option<String>| -> Vec<String> {
        let mut v = vec![e.clone(); m];
        v[0] = first;
        if let Some(s) = second {
            v[1] = s;
        }
        v
    };
    let mut states = Vec::new();
    let mut gens = Vec::new();
    for (i, sigma) in perms.iter().enumerate() {
        let base = format!("s{i}");
        states.push(StateDef {
            name: base.clone(),
            permutation: sigma.clone(),
            sections: vec![e.clone(); m],
        });
        gens.push(base);
        for k in 0..=d {
            let name = format!("a{k}_{i}");
            let below = if k == 0 {
                format!("s{i}")
            } else {
                format!("a{}_{i}", k - 1)
            };
            states.push(StateDef {
                name: name.clone(),
                permutation: Permutation::identity(m),
                sections: row(name.clone(), Some(below)),
            });
            gens.push(name);
        }
    }
    for (i, rho) in fixing.iter().enumerate() {
        let root = format!("b0_{i}");
        states.push(StateDef {
            name: root.clone(),
            permutation: (*rho).clone(),
            sections: row(root.clone(), None),
        });
        gens.push(root);
        for k in 1..=d {
            let name = format!("b{k}_{i}");
            states.push(StateDef {
                name: name.clone(),
                permutation: Permutation::identity(m),
                sections: row(name.clone(), Some(format!("b{}_{i}", k - 1))),
            });
            gens.push(name);
        }
    }
    states.push(StateDef {
        name: e.clone(),
        permutation: Permutation::identity(m),
        sections: vec![e; m],
    });
    Ok(RecursionDocument::new(Alphabet::new(m)?, states, gens)?
        .with_title(format!("Mother group M({d},{m})")))
}

fn mother_entry(d: usize, m: usize) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        key: format!("mother_{d}_{m}"),
        document: mother_group(d, m)?,
        citation: "Amir, Angel, Virag 2013".into(),
        primary: true,
        notes: "b_0 carries its permutation at the root; rho ranges over non-identity permutations fixing 0"
            .into(),
        expected: vec![ExpectedProperty::ConnectedUpTo(if m == 2 { 12 } else { 7 })],
    })
}

fn parse_mother_key(key: &str) -> Option<(usize, usize)> {
    let rest = key.strip_prefix("mother_")?;
    let (d, m) = rest.split_once('_')?;
    Some((d.parse().ok()?, m.parse().ok()?))
}

pub fn catalog_list() -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = SEEDS.iter().map(from_seed).collect();
    entries.extend(
        LISTED_MOTHERS
            .iter()
            .map(|&(d, m)| mother_entry(d, m).expect("listed parameters are within the caps")),
    );
    entries
}

pub fn catalog_get(key: &str) -> Result<CatalogEntry> {
    if let Some(seed) = SEEDS.iter().find(|s| s.key == key) {
        return Ok(from_seed(seed));
    }
    match parse_mother_key(key) {
        Some((d, m)) => mother_entry(d, m).map_err(|_| Error::UnknownCatalogKey(key.to_string())),
        None => Err(Error::UnknownCatalogKey(key.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub property: ExpectedProperty,
    pub passed: bool,
    pub detail: String,
}

/// Evaluates every expected property of `entry`.
pub fn check(entry: &CatalogEntry, limits: SchreierLimits) -> Result<Vec<CheckOutcome>> {
    let group = entry.group();
    let (aut, gens) = entry.document.to_automaton();
    entry
        .expected
        .iter()
        .map(|p| {
            let (passed, detail) = evaluate(p, &group, &aut, &gens, limits)?;
            Ok(CheckOutcome {
                property: p.clone(),
                passed,
                detail,
            })
        })
        .collect()
}

fn evaluate(
    property: &ExpectedProperty,
    group: &AutomatonGroup,
    aut: &crate::automaton::MealyAutomaton,
    gens: &[StateId],
    limits: SchreierLimits,
) -> Result<(bool, String)> {
    use ExpectedProperty::*;
    Ok(match property {
        ConnectedUpTo(level) => {
            for n in 1..=*level {
                let c = build_schreier(aut, gens, n, limits)?
                    .connected_components()
                    .len();
                if c != 1 {
                    return Ok((false, format!("Γ_{n} has {c} components")));
                }
            }
            (true, String::new())
        }
        ComponentCounts(counts) => {
            for &(n, expected) in counts {
                let c = build_schreier(aut, gens, n, limits)?
                    .connected_components()
                    .len();
                if c != expected {
                    return Ok((
                        false,
                        format!("Γ_{n} has {c} components, expected {expected}"),
                    ));
                }
            }
            (true, String::new())
        }
        Contracting { nucleus_size } => {
            let r = compute_nucleus(group, NucleusBounds::default());
            match r.nucleus() {
                Some(n) => (
                    n.len() == *nucleus_size,
                    format!("|N| = {} certified at depth {}", n.len(), r.depth),
                ),
                None => (false, format!("{:?}", r.verdict)),
            }
        }
        ExceedsElementBound(m) => {
            let r = compute_nucleus(
                group,
                NucleusBounds {
                    max_elements: *m,
                    ..NucleusBounds::default()
                },
            );
            let hit = matches!(
                r.verdict,
                Verdict::BoundExceeded {
                    bound: Bound::Elements(_),
                    ..
                }
            );
            (hit, format!("{:?}", r.verdict))
        }
        StabilizerSection {
            word,
            vertex,
            section,
        } => {
            let g = group.canonicalize(&group.parse_word(word)?)?;
            let v = aut.alphabet().parse_word(vertex)?;
            let image = g.act(&v)?;
            let expected = group.canonicalize(&group.parse_word(section)?)?;
            let fixed = image == v;
            let equal = g.section(&v)? == expected;
            (
                fixed && equal,
                format!("fixes: {fixed}, section matches: {equal}"),
            )
        }
        Maps { word, from, to } => {
            let g = group.canonicalize(&group.parse_word(word)?)?;
            let alphabet = aut.alphabet();
            let image = g.act(&alphabet.parse_word(from)?)?;
            (
                image == alphabet.parse_word(to)?,
                format!("image {}", alphabet.format_word(&image)),
            )
        }
        Recurrent => {
            let r = group.is_recurrent(8);
            (r == Recurrence::Recurrent, r.to_string())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique_and_resolvable() {
        let list = catalog_list();
        let mut keys: Vec<&str> = list.iter().map(|e| e.key.as_str()).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), list.len());
        for e in &list {
            assert_eq!(catalog_get(&e.key).unwrap().document, e.document);
        }
    }

    #[test]
    fn unknown_key() {
        assert_eq!(
            catalog_get("nosuch").unwrap_err(),
            Error::UnknownCatalogKey("nosuch".into())
        );
        assert!(catalog_get("mother_4_2").is_err());
    }

    #[test]
    fn basilica_document() {
        let doc = catalog_get("basilica").unwrap().document;
        assert_eq!(doc.states().len(), 3);
        assert_eq!(doc.gens(), &["a", "b"]);
    }

    #[test]
    fn aut882_first_state() {
        let doc = catalog_get("aut882").unwrap().document;
        let a = &doc.states()[0];
        assert_eq!(a.name, "a");
        assert_eq!(a.permutation, Permutation::transposition(2, 0, 1).unwrap());
        assert_eq!(a.sections, vec!["c", "c"]);
    }

    #[test]
    fn mother_group_shape() {
        let doc = mother_group(2, 2).unwrap();
        // s0, a0_0..a2_0, e
        assert_eq!(doc.states().len(), 5);
        let doc = mother_group(1, 3).unwrap();
        // 5 sigmas with 3 states each, one rho with 2 states, e
        assert_eq!(doc.states().len(), 5 * 3 + 2 + 1);
        assert!(mother_group(1, 4).is_err());
    }

    #[test]
    fn reference_entries_are_flagged() {
        for key in ["grigorchuk", "hanoi"] {
            assert!(!catalog_get(key).unwrap().primary);
        }
        assert!(catalog_get("aut878").unwrap().primary);
    }
}
