//! Exhaustive agreement of the four characterizations on the graph classes
//! where they are known to coincide.

use wolin_core::graphs::enumerate::weighted_oriented_classes;
use wolin_core::graphs::is_house_free;
use wolin_core::ideals::edge_ideal;
use wolin_core::linearity::{criterion4, has_linear_quotients, is_vertex_splittable, LqOptions, SplitOptions};
use wolin_core::oracle::{componentwise_linear_fast, Characteristic};

#[test]
fn house_free_classes_agree_up_to_six_vertices() {
    let lq = LqOptions { cap: 64, ..LqOptions::default() };
    let split = SplitOptions { cap: 64, node_budget: 2_000_000 };
    let mut classes = 0;
    for n in 2..=6 {
        // chordal and complete multipartite graphs are house-free
        for d in weighted_oriented_classes(n, 2, |g| g.is_connected() && is_house_free(g)) {
            let i = edge_ideal(&d);
            let cl = componentwise_linear_fast(&i, Characteristic::TWO).unwrap().is_none();
            let row = [
                is_vertex_splittable(&i, split).unwrap().is_some(),
                has_linear_quotients(&i, lq).unwrap().is_some(),
                criterion4(&d).holds,
            ];
            assert_eq!(row, [cl; 3], "{d:?}");
            classes += 1;
        }
    }
    assert!(classes > 9000);
}
