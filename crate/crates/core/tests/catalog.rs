use wreath_core::{catalog_get, catalog_list, check, SchreierLimits};

#[test]
fn every_expected_property_holds() {
    let mut failures = Vec::new();
    for entry in catalog_list() {
        for outcome in check(&entry, SchreierLimits::default()).unwrap() {
            if !outcome.passed {
                failures.push(format!(
                    "{}: {} ({})",
                    entry.key, outcome.property, outcome.detail
                ));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn mother_groups_outside_the_listing_resolve() {
    for (d, m) in [(1, 2), (3, 2), (2, 3)] {
        let entry = catalog_get(&format!("mother_{d}_{m}")).unwrap();
        assert_eq!(entry.document.alphabet().size(), m);
    }
    assert!(catalog_get("mother_4_2").is_err());
    assert!(catalog_get("mother_1_4").is_err());
}
