use proptest::prelude::*;
use proptest::strategy::ValueTree;

use wreath_core::{
    asymptotic_equivalent, build_schreier, catalog_get, compute_nucleus, equivalence_class, parse,
    parse_edges_tsv, Alphabet, AutomatonGroup, BoundaryPoint, CanonicalElement, ExportGraph,
    Format, GroupWord, Letter, MealyAutomaton, NucleusBounds, NucleusDiagram, Permutation,
    RecursionDocument, SchreierLimits, Signed, State, StateId,
};

/// Invertible automata with 1 to 4 states over a binary or ternary alphabet.
fn automaton() -> impl Strategy<Value = MealyAutomaton> {
    (2usize..=3, 1usize..=4).prop_flat_map(|(k, n)| {
        let perms = Permutation::all(k).len();
        proptest::collection::vec((0..perms, proptest::collection::vec(0..n, k)), n).prop_map(
            move |rows| {
                let all = Permutation::all(k);
                let states = rows
                    .into_iter()
                    .enumerate()
                    .map(|(i, (p, secs))| {
                        State::new(
                            format!("q{i}"),
                            all[p].clone(),
                            secs.into_iter().map(StateId).collect(),
                        )
                    })
                    .collect();
                MealyAutomaton::new(Alphabet::new(k).unwrap(), states).unwrap()
            },
        )
    })
}

fn word(k: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(0..k as Letter, 0..=max)
}

fn group_word(rank: usize, max: usize) -> impl Strategy<Value = GroupWord> {
    proptest::collection::vec((0..rank, any::<bool>()), 0..=max).prop_map(|letters| {
        GroupWord::from_letters(
            letters
                .into_iter()
                .map(|(g, i)| Signed::new(g, i))
                .collect(),
        )
    })
}

fn full_group(aut: &MealyAutomaton) -> AutomatonGroup {
    let gens: Vec<StateId> = aut.state_ids().collect();
    AutomatonGroup::new(aut, &gens).unwrap()
}

fn all_words(k: usize, len: usize) -> Vec<Vec<Letter>> {
    Alphabet::new(k).unwrap().words(len).collect()
}

/// Automaton, a state, and two words over its alphabet.
fn with_words() -> impl Strategy<Value = (MealyAutomaton, usize, Vec<Letter>, Vec<Letter>)> {
    automaton().prop_flat_map(|aut| {
        let (n, k) = (aut.len(), aut.alphabet().size());
        (Just(aut), 0..n, word(k, 6), word(k, 6))
    })
}

/// Automaton and two group words over all of its states.
fn with_group_words() -> impl Strategy<Value = (MealyAutomaton, GroupWord, GroupWord)> {
    automaton().prop_flat_map(|aut| {
        let n = aut.len();
        (Just(aut), group_word(n, 4), group_word(n, 4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn action_is_a_cocycle((aut, q, u, v) in with_words()) {
        let q = StateId(q);
        let mut uv = u.clone();
        uv.extend(&v);
        let mut expected = aut.act_word(q, &u).unwrap();
        expected.extend(aut.act_word(aut.section_word(q, &u).unwrap(), &v).unwrap());
        prop_assert_eq!(aut.act_word(q, &uv).unwrap(), expected);
    }

    #[test]
    fn states_permute_each_level((aut, q, _, _) in with_words()) {
        let k = aut.alphabet().size();
        let words = all_words(k, 4);
        let mut images: Vec<Vec<Letter>> =
            words.iter().map(|w| aut.act_word(StateId(q), w).unwrap()).collect();
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), words.len());
    }

    #[test]
    fn inverse_undoes_action((aut, q, u, _) in with_words()) {
        let closed = aut.invert();
        let q = StateId(q);
        let inv = closed.inverse_of(q).unwrap();
        let image = closed.act_word(q, &u).unwrap();
        prop_assert_eq!(closed.act_word(inv, &image).unwrap(), u);
    }

    #[test]
    fn dsl_round_trip(aut in automaton()) {
        let gens: Vec<StateId> = aut.state_ids().collect();
        let doc = RecursionDocument::from_automaton(&aut, &gens);
        let text = doc.serialize();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn canonicalize_is_a_homomorphism((aut, u, v) in with_group_words()) {
        let group = full_group(&aut);
        let gu = group.canonicalize(&u).unwrap();
        let gv = group.canonicalize(&v).unwrap();
        let guv = group.canonicalize(&u.concat(&v)).unwrap();
        prop_assert_eq!(&guv, &gu.compose(&gv));
        for w in all_words(aut.alphabet().size(), 4) {
            prop_assert_eq!(guv.act(&w).unwrap(), gu.act(&gv.act(&w).unwrap()).unwrap());
        }
        prop_assert!(group.canonicalize(&u.concat(&u.inverse())).unwrap().is_identity());
        prop_assert_eq!(gu.inverse(), group.canonicalize(&u.inverse()).unwrap());
    }

    /// Two automata with `m` and `n` states that agree on all words of length
    /// `m + n` agree everywhere, so equality can be checked by brute force.
    #[test]
    fn equality_matches_action((aut, u, v) in with_group_words()) {
        let group = full_group(&aut);
        let gu = group.canonicalize(&u).unwrap();
        let gv = group.canonicalize(&v).unwrap();
        let depth = gu.size() + gv.size();
        let k = aut.alphabet().size();
        prop_assume!(depth <= if k == 2 { 12 } else { 7 });
        let agree = all_words(k, depth)
            .iter()
            .all(|w| gu.act(w).unwrap() == gv.act(w).unwrap());
        prop_assert_eq!(gu == gv, agree);
    }

    #[test]
    fn canonical_form_is_minimal((aut, u, _) in with_group_words()) {
        let group = full_group(&aut);
        let g = group.canonicalize(&u).unwrap();
        let again = CanonicalElement::from_table(&g, 0);
        prop_assert_eq!(&again, &g);
        let sections = g.all_sections();
        let mut distinct = sections.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(distinct.len(), g.size());
    }

    #[test]
    fn labeled_graph_matches_action(aut in automaton(), level in 1usize..=5) {
        let gens: Vec<StateId> = aut.state_ids().collect();
        let g = build_schreier(&aut, &gens, level, SchreierLimits::default()).unwrap();
        for (s, &q) in gens.iter().enumerate() {
            for (v, &t) in g.generator_targets(s).iter().enumerate() {
                let image = aut.act_word(q, &g.vertex_word(v as u32)).unwrap();
                prop_assert_eq!(g.vertex_word(t), image);
            }
        }
        let rows = parse_edges_tsv(&ExportGraph::from_labeled(&g).render(Format::Edges)).unwrap();
        prop_assert_eq!(rows.len(), g.arrow_count());
    }
}

fn point() -> impl Strategy<Value = BoundaryPoint> {
    (word(2, 3), proptest::collection::vec(0..2 as Letter, 1..=4))
        .prop_map(|(pre, period)| BoundaryPoint::new(pre, period).unwrap())
}

fn raw_point() -> impl Strategy<Value = (Vec<Letter>, Vec<Letter>)> {
    (word(3, 4), proptest::collection::vec(0..3 as Letter, 1..=4))
}

fn diagram(key: &str) -> NucleusDiagram {
    let group = catalog_get(key).unwrap().group();
    NucleusDiagram::from_result(&compute_nucleus(&group, NucleusBounds::default())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn boundary_point_canonical_form_keeps_letters((pre, period) in raw_point()) {
        let p = BoundaryPoint::new(pre.clone(), period.clone()).unwrap();
        for i in 1..=24 {
            let naive = if i <= pre.len() {
                pre[i - 1]
            } else {
                period[(i - pre.len() - 1) % period.len()]
            };
            prop_assert_eq!(p.letter(i), naive);
        }
        prop_assert_eq!(p.to_string().parse::<BoundaryPoint>().unwrap(), p.clone());
        prop_assert_eq!(BoundaryPoint::new(p.preperiod().to_vec(), p.period().to_vec()).unwrap(), p);
    }

    #[test]
    fn basilica_equivalence_is_consistent(p in point(), q in point()) {
        let d = diagram("basilica");
        let pq = asymptotic_equivalent(&d, &p, &q).unwrap();
        let qp = asymptotic_equivalent(&d, &q, &p).unwrap();
        prop_assert_eq!(pq.is_some(), qp.is_some());
        if let Some(w) = &pq {
            prop_assert!(w.validate(&d, &p, &q));
        }
        let class = equivalence_class(&d, &p).unwrap();
        prop_assert!(class.contains(&p));
        prop_assert!(class.len() <= d.len());
        prop_assert_eq!(class.contains(&q), pq.is_some());
        for r in &class {
            prop_assert!(asymptotic_equivalent(&d, &p, r).unwrap().is_some());
        }
    }
}

#[test]
fn nucleus_is_closed_under_sections_and_inverses() {
    for key in ["basilica", "grigorchuk", "z2", "half_basilica", "hanoi"] {
        let group = catalog_get(key).unwrap().group();
        let result = compute_nucleus(&group, NucleusBounds::default());
        let nucleus = result.nucleus().expect("contracting");
        for g in nucleus {
            assert!(nucleus.contains(&g.inverse()), "{key}: not inverse closed");
            for x in 0..group.degree() as Letter {
                assert!(
                    nucleus.contains(&g.section_at(x)),
                    "{key}: not section closed"
                );
            }
        }
    }
}

#[test]
fn long_words_contract_into_the_nucleus() {
    let group = catalog_get("basilica").unwrap().group();
    let result = compute_nucleus(&group, NucleusBounds::default());
    let nucleus = result.nucleus().unwrap();
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..64 {
        let w = group_word(group.rank(), 16)
            .new_tree(&mut runner)
            .unwrap()
            .current();
        let g = group.canonicalize(&w).unwrap();
        // Basilica sections shrink word length by half per level.
        for v in all_words(2, 6) {
            assert!(nucleus.contains(&g.section(&v).unwrap()), "{w:?} at {v:?}");
        }
    }
}
