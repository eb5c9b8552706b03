use dimerlab::graph::validate_embedding;
use dimerlab::kasteleyn::count_int;
use dimerlab::oracle::enumerate_matchings_with_limit;
use dimerlab::region::{generate, Family, RegionSpec};
use num_bigint::BigInt;

fn spec(s: &str) -> RegionSpec {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn count(s: &str) -> BigInt {
    count_int(&generate(&spec(s)).unwrap()).unwrap()
}

/// Small members of every family, each small enough for the oracle.
const SMALL: &[&str] = &[
    "rectangle(2,3)",
    "rectangle(4,4)",
    "aztec_diamond(3)",
    "aztec_rectangle(2,3)+central_square",
    "aztec_window(1,3)",
    "fools_diamond(3)",
    "pillow_0mod4(3)",
    "pillow_2mod4(3)",
    "intruded_square(2)",
    "hexagon(2,2,3)",
    "hexagon_minus_central_triangle(1)",
    "hexagon_notched_sides(1)",
    "hexagon_two_central(opposite,2)",
    "hexagon_general(1,2,1,2,1,2)",
    "triangle_graph(4)",
    "triangle_graph_augmented(4)",
    "right_triangle_augmented(4)",
    "fortress(2)",
    "aztec_dungeon(1)",
    "hexagonal_dungeon(1,2)",
    "dragon(2)",
    "quasihexagon(1,1,1)",
    "hypercube(3)",
];

#[test]
fn every_family_has_a_small_example() {
    let covered: Vec<&str> = SMALL.iter().map(|s| s.split('(').next().unwrap()).collect();
    for family in Family::all() {
        let name = family.name();
        if !covered.contains(&name) && !name.ends_with("majority") {
            panic!("no small example for {name}");
        }
    }
}

#[test]
fn kasteleyn_counts_match_the_oracle() {
    for s in SMALL {
        let g = match generate(&spec(s)) {
            Ok(g) => g,
            Err(e) => panic!("{s}: {e}"),
        };
        let oracle = enumerate_matchings_with_limit(&g, 100).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(count_int(&g).unwrap(), oracle, "{s}");
    }
}

#[test]
fn embeddings_validate() {
    for s in SMALL {
        let g = generate(&spec(s)).unwrap();
        if g.planar {
            validate_embedding(&g).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }
}

#[test]
fn specs_round_trip_through_text() {
    for s in SMALL.iter().copied().chain(["aztec_diamond(5)+border_middles", "hexagon(2,2,2)+central_two(adjacent)"]) {
        let parsed = spec(s);
        assert_eq!(parsed.to_string(), s);
        assert_eq!(spec(&parsed.to_string()), parsed);
    }
    assert_eq!(spec(" hexagon( 1, 2 ,3 ) ").to_string(), "hexagon(1,2,3)");
}

#[test]
fn rectangles_and_strips() {
    // Domino tilings of 2×n strips are Fibonacci numbers.
    let fib = [1u32, 2, 3, 5, 8, 13, 21, 34];
    for (n, f) in (1..=8).zip(fib) {
        assert_eq!(count(&format!("rectangle(2,{n})")), BigInt::from(f));
    }
    assert_eq!(count("rectangle(8,8)"), BigInt::from(12_988_816u64));
    assert_eq!(count("rectangle(3,3)"), BigInt::from(0));
}

#[test]
fn hexagons_are_symmetric_in_their_sides() {
    let a = count("hexagon(2,3,4)");
    for perm in ["hexagon(3,4,2)", "hexagon(4,2,3)", "hexagon(3,2,4)"] {
        assert_eq!(count(perm), a, "{perm}");
    }
    assert_eq!(a, BigInt::from(490));
}

#[test]
fn bad_specs_are_rejected() {
    for s in ["", "hexagon", "hexagon(1,2", "nowhere(1)", "hexagon(1,-2,3)", "hexagon(1,2,3)+sideways"] {
        assert!(s.parse::<RegionSpec>().is_err(), "{s}");
    }
    for s in ["hexagon(1,2)", "aztec_diamond(1,2)", "hexagon_two_central(2,sideways)", "rectangle(0,0,0)"] {
        if let Ok(sp) = s.parse::<RegionSpec>() {
            assert!(generate(&sp).is_err(), "{s}");
        }
    }
}

#[test]
fn deletions_change_the_count() {
    assert_eq!(count("aztec_diamond(4)"), BigInt::from(1024));
    assert_ne!(count("aztec_diamond(4)+knight_pair"), count("aztec_diamond(4)"));
    let hex = count("hexagon(2,2,2)");
    assert!(count("hexagon(2,2,2)+central_two(opposite)") < hex);
}
