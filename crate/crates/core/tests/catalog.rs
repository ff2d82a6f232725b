//! The forbidden-pattern catalog against the Betti oracle on every
//! three-vertex weighted oriented graph.

use wolin_core::graphs::enumerate::weighted_oriented_classes;
use wolin_core::graphs::{find_forbidden, Pattern};
use wolin_core::ideals::{edge_ideal, power};
use wolin_core::oracle::{componentwise_linear_fast, formula_vs_oracle, regularity, Characteristic};

#[test]
fn pattern_iff_not_componentwise_linear_on_three_vertices() {
    let ch = Characteristic::default();
    let mut checked = 0;
    for d in weighted_oriented_classes(3, 3, |_| true) {
        let i = edge_ideal(&d);
        let fails = componentwise_linear_fast(&i, ch).unwrap().is_some();
        assert_eq!(fails, find_forbidden(&d).is_some(), "{d:?}");
        checked += 1;
    }
    // brute-force count of classes with weights up to 3
    assert_eq!(checked, 42);
}

#[test]
fn each_pattern_instance_fails_at_first_and_second_power() {
    let ch = Characteristic::default();
    for p in Pattern::FORBIDDEN {
        let d = p.instance(2, 2);
        assert_eq!(find_forbidden(&d).map(|m| m.pattern), Some(p));
        for k in 1..=2 {
            let i = power(&edge_ideal(&d), k);
            assert!(componentwise_linear_fast(&i, ch).unwrap().is_some(), "{p} k={k}");
        }
    }
}

#[test]
fn directed_triangle_regularities() {
    let ch = Characteristic::default();
    let d = Pattern::D3.instance(2, 2);
    assert_eq!(regularity(&edge_ideal(&d), ch), Ok(4));
    assert_eq!(regularity(&power(&edge_ideal(&d), 2), ch), Ok(7));
}

#[test]
fn closed_forms_match_oracle_for_small_weights() {
    let ch = Characteristic::default();
    for p in Pattern::FORBIDDEN {
        for (w2, w3) in [(2, 2), (2, 3), (3, 2)] {
            let r = formula_vs_oracle(p, 1, w2, w3, ch).unwrap();
            assert!(r.matches(), "{r:?}");
        }
    }
}
