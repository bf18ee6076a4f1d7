//! Shared fixtures for the benchmarks.

use wreath_core::{catalog_get, AutomatonGroup, MealyAutomaton, StateId};

/// Automaton and generators of a catalog entry.
pub fn fixture(key: &str) -> (MealyAutomaton, Vec<StateId>) {
    catalog_get(key)
        .unwrap_or_else(|e| panic!("{key}: {e}"))
        .document
        .to_automaton()
}

pub fn group(key: &str) -> AutomatonGroup {
    catalog_get(key)
        .unwrap_or_else(|e| panic!("{key}: {e}"))
        .group()
}
