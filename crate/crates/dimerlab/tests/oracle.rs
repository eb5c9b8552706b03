use dimerlab::graph::PlanarGraph;
use dimerlab::kasteleyn::count_int;
use dimerlab::oracle::{
    all_matchings, cube_matchings, dimer_covering_poly, dimer_tableaux_poly, enumerate_matchings, for_each_tableau,
    subset_count,
};
use dimerlab::region::generate;
use num_bigint::BigInt;
use num_rational::BigRational;

fn region(s: &str) -> PlanarGraph {
    generate(&s.parse().unwrap()).unwrap()
}

#[test]
fn listed_matchings_are_perfect_and_distinct() {
    let g = region("hexagon(2,2,2)");
    let all = all_matchings(&g).unwrap();
    assert_eq!(BigInt::from(all.len()), count_int(&g).unwrap());
    let mut seen = std::collections::BTreeSet::new();
    for m in &all {
        let mut covered = vec![false; g.vertex_count()];
        for &k in m {
            let e = &g.edges[k];
            assert!(!covered[e.u] && !covered[e.v]);
            covered[e.u] = true;
            covered[e.v] = true;
        }
        assert!(covered.iter().all(|&c| c));
        let mut key = m.clone();
        key.sort_unstable();
        assert!(seen.insert(key));
    }
}

#[test]
fn both_oracles_agree() {
    for s in ["rectangle(4,4)", "aztec_diamond(3)", "triangle_graph_augmented(4)", "hexagon(1,2,3)"] {
        let g = region(s);
        assert_eq!(subset_count(&g).unwrap(), BigRational::from_integer(enumerate_matchings(&g).unwrap()), "{s}");
    }
}

#[test]
fn cube_counts() {
    assert_eq!(cube_matchings(4).unwrap(), BigInt::from(272));
    assert_eq!(count_int(&region("hypercube(4)")).unwrap(), BigInt::from(272));
}

#[test]
fn tableau_count_is_the_tiling_count() {
    for (m, n) in [(2, 4), (4, 4), (2, 8)] {
        let mut tableaux = 0u64;
        for_each_tableau(m, n, |_| tableaux += 1).unwrap();
        let tilings = count_int(&region(&format!("rectangle({m},{n})"))).unwrap();
        assert_eq!(BigInt::from(tableaux), tilings, "{m}x{n}");
        assert_eq!(dimer_tableaux_poly(m, n).unwrap().eval_ones(), tilings);
        assert_eq!(dimer_covering_poly(m, n).unwrap().eval_ones(), tilings);
    }
}

#[test]
fn odd_shapes_are_rejected_or_empty() {
    if let Ok(p) = dimer_tableaux_poly(3, 3) {
        assert!(p.is_zero());
    }
}
