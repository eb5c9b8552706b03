use dimerlab::graph::PlanarGraph;
use dimerlab::kasteleyn::count_matchings;
use dimerlab::oracle::enumerate_weighted;
use dimerlab::region::generate;
use dimerlab::rewrite::{find_sites, kenyon_substitution, reduce, urban_renewal, Pattern, Strategy};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn region(s: &str) -> PlanarGraph {
    generate(&s.parse().unwrap()).unwrap()
}

fn randomize(g: &mut PlanarGraph, rng: &mut ChaCha8Rng) {
    for e in &mut g.edges {
        e.weight = BigRational::new(rng.gen_range(1..=12).into(), rng.gen_range(1..=12).into());
    }
}

#[test]
fn urban_renewal_at_every_site() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut g = region("aztec_diamond(3)");
    randomize(&mut g, &mut rng);
    let total = enumerate_weighted(&g).unwrap();
    let sites = find_sites(&g, Pattern::Urban);
    assert!(!sites.is_empty());
    for site in &sites {
        let (renewed, factor) = urban_renewal(&g, site).unwrap();
        assert_eq!(total, factor * enumerate_weighted(&renewed).unwrap());
    }
}

#[test]
fn kenyon_substitution_for_several_e() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut g = region("rectangle(2,6)");
    randomize(&mut g, &mut rng);
    let total = enumerate_weighted(&g).unwrap();
    let sites = find_sites(&g, Pattern::Kenyon);
    assert!(!sites.is_empty());
    for (n, d) in [(1, 1), (3, 7), (-2, 5), (11, 2)] {
        let e = BigRational::new(BigInt::from(n), BigInt::from(d));
        let h = kenyon_substitution(&g, &sites[0], &e).unwrap();
        assert_eq!(enumerate_weighted(&h).unwrap(), total, "E = {e}");
    }
}

#[test]
fn reductions_verify() {
    for s in ["aztec_diamond(4)", "rectangle(4,4)", "hexagon(2,2,2)", "rectangle(2,7)", "aztec_diamond(3)+knight_pair"]
    {
        let g = region(s);
        for strategy in [Strategy::Urban, Strategy::Kenyon, Strategy::All] {
            let t = reduce(&g, strategy);
            assert!(!t.truncated, "{s} {strategy:?}");
            assert!(t.verify(&g).unwrap(), "{s} {strategy:?}");
        }
    }
}

#[test]
fn aztec_diamonds_reduce_completely() {
    for n in 1..=4u32 {
        let g = region(&format!("aztec_diamond({n})"));
        let t = reduce(&g, Strategy::Urban);
        assert!(t.is_trivial(), "order {n}");
        assert_eq!(t.factor, count_matchings(&g).unwrap());
    }
}

#[test]
fn weighted_reduction_keeps_the_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut g = region("aztec_diamond(3)");
    randomize(&mut g, &mut rng);
    let t = reduce(&g, Strategy::All);
    assert!(t.verify(&g).unwrap());
    assert_eq!(enumerate_weighted(&g).unwrap(), &t.factor * enumerate_weighted(&t.remainder).unwrap());
}
