//! Acceptance checks: one PASS/FAIL line per criterion, exact equality
//! throughout. Runs without the test harness so the lines are always printed;
//! exits nonzero when a criterion outside the known discrepancies fails.

use std::process::ExitCode;

use dimerlab::analytics::{
    central_edge, edge_probabilities, exact_sqrt, factorize, fit_recurrence, hexagon_moments, inverse_entry_sum,
    transfer_count, two_adic_valuation,
};
use dimerlab::formulas::{evaluate, FormulaId};
use dimerlab::graph::{pt, Embedding, PlanarGraph};
use dimerlab::kasteleyn::{build_bipartite, count_int, count_matchings, SignRule};
use dimerlab::linalg::{carlitz_matrix, gram_det, smith_normal_form, to_integer};
use dimerlab::oracle::{cube_matchings, dimer_covering_poly, dimer_tableaux_poly, enumerate_weighted, monomial, Var};
use dimerlab::region::generate;
use dimerlab::rewrite::{find_sites, kenyon_substitution, reduce, urban_renewal, Pattern, Strategy};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

/// Criteria whose published values disagree with every consistent
/// computation: the mismatch is reported as FAIL but does not abort the run.
/// 4: the published Iy for n = 2 is 20, while 18 = (7n⁴ − n²)/6 fits all
///    five published values except that one.
/// 16: the mutilated order-5 diamond has 59392 = 2¹¹·29 matchings under every
///    reading of the deletion; the published 59493 is never reached.
const KNOWN_DISCREPANCIES: &[usize] = &[4, 16];

fn g(spec: &str) -> PlanarGraph {
    generate(&spec.parse().unwrap_or_else(|e| panic!("{spec}: {e}"))).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn count(spec: &str) -> BigInt {
    count_int(&g(spec)).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn pow(b: u64, e: u32) -> BigInt {
    big(b).pow(e)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    (ok, detail.into())
}

fn c1_aztec() -> Outcome {
    let bad: Vec<u32> =
        (1..=10u32).filter(|&n| count(&format!("aztec_diamond({n})")) != pow(2, n * (n + 1) / 2)).collect();
    check(bad.is_empty(), format!("n = 1..10 match 2^(n(n+1)/2); mismatches at {bad:?}"))
}

fn c2_macmahon() -> Outcome {
    let mut bad = Vec::new();
    for a in 0..=5i64 {
        for b in 0..=5 {
            for c in 0..=5 {
                let f = evaluate(FormulaId::MacMahon, &[a, b, c]).unwrap();
                if BigRational::from_integer(count(&format!("hexagon({a},{b},{c})"))) != f {
                    bad.push((a, b, c));
                }
            }
        }
    }
    let twenty = count("hexagon(2,2,2)") == big(20);
    check(bad.is_empty() && twenty, format!("216 boxes a,b,c <= 5, hexagon(2,2,2) = 20: {twenty}; mismatches {bad:?}"))
}

fn c3_central_edge() -> Outcome {
    let mut got = Vec::new();
    for n in 1..=3 {
        let h = g(&format!("hexagon({},{},{})", 2 * n - 1, 2 * n, 2 * n - 1));
        let p = edge_probabilities(&h).unwrap();
        got.push(p[central_edge(&h).unwrap()].clone());
    }
    let ok = got.iter().all(|p| *p == q(1, 3));
    check(ok, format!("central probabilities {}", got.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
}

fn c4_moments() -> Outcome {
    let expected = [(0, 1), (2, 20), (12, 93), (40, 296), (100, 725)];
    let mut ok = true;
    let mut shown = Vec::new();
    for (n, &(ix, iy)) in (1..=5i64).zip(&expected) {
        let (mx, my) = hexagon_moments(n as u64).unwrap();
        let horizontal = mx == q(n.pow(4) - n * n, 6);
        let hit = mx == q(ix, 1) && my == q(iy, 1) && horizontal;
        ok &= hit;
        let expected = if hit { String::new() } else { format!(" vs ({ix},{iy})") };
        shown.push(format!("({mx},{my}){expected}"));
    }
    check(ok, format!("moments {}", shown.join(" ")))
}

fn c5_knight_pairs() -> Outcome {
    let expected: [BigInt; 9] = [
        big(2),
        pow(2, 3),
        pow(2, 5) * 5,
        pow(2, 9) * 9,
        pow(2, 17) * 3,
        pow(2, 22) * 9,
        pow(2, 24) * 9 * 73,
        pow(2, 31) * 9 * 25 * 11,
        pow(2, 47) * 9 * 5,
    ];
    let bad: Vec<u32> = (2..=10u32)
        .zip(&expected)
        .filter(|(n, e)| count(&format!("aztec_diamond({n})+knight_pair")) != **e)
        .map(|(n, _)| n)
        .collect();
    check(bad.is_empty(), format!("n = 2..10 reproduce the factored list; mismatches at {bad:?}"))
}

fn c6_inverse_sums() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=8u64 {
        let s = inverse_entry_sum(n).unwrap();
        let f = evaluate(FormulaId::InverseSum, &[n as i64]).unwrap();
        if s != f {
            bad.push(format!("n={n}: {s} vs {f}"));
        }
    }
    check(bad.is_empty(), format!("n = 1..8 equal (n-1)(n+3)/2 - 2^(n-1) + 2; mismatches {bad:?}"))
}

fn c7_holey_hexagons() -> Outcome {
    let central: Vec<BigInt> = (1..=3).map(|n| count(&format!("hexagon_minus_central_triangle({n})"))).collect();
    let notched: Vec<BigInt> = (1..=2).map(|n| count(&format!("hexagon_notched_sides({n})"))).collect();
    let ok = central == [big(2), big(2) * 27, pow(2, 5) * 27 * 5] && notched == [big(1), pow(2, 7) * 49];
    check(ok, format!("central triangle {central:?}, notched {notched:?}"))
}

fn c8_cokernels() -> Outcome {
    let carlitz = smith_normal_form(&carlitz_matrix(2, 2, 2)).nontrivial();
    let mut ok = carlitz == [big(2), big(10)];
    let mut bad = Vec::new();
    for a in 1..=3usize {
        for b in 1..=3 {
            for c in 1..=3 {
                let h = g(&format!("hexagon({a},{b},{c})"));
                let k = to_integer(&build_bipartite(&h, SignRule::HoneycombPlain).unwrap().matrix).unwrap();
                if smith_normal_form(&k).nontrivial() != smith_normal_form(&carlitz_matrix(a, b, c)).nontrivial() {
                    bad.push((a, b, c));
                }
            }
        }
    }
    ok &= bad.is_empty();
    check(ok, format!("carlitz(2,2,2) invariants {carlitz:?}; 27 hexagons agree except {bad:?}"))
}

fn c9_gram_determinants() -> Outcome {
    let h = g("hexagon_general(3,4,3,4,3,4)");
    let k = build_bipartite(&h, SignRule::HoneycombPlain).unwrap();
    let d = gram_det(&k.matrix).unwrap();
    let hex_ok = d == BigRational::from_integer(pow(2, 8) * 27 * pow(7, 6));
    let published: [BigInt; 8] = [
        big(1),
        big(2),
        big(15),
        pow(2, 7) * 3,
        big(9) * 125 * 29,
        pow(2, 9) * 3 * 5 * 7 * 169,
        pow(7, 3) * pow(13, 4) * pow(29, 2),
        pow(2, 25) * 3 * 49 * pow(17, 3),
    ];
    let mut fools = Vec::new();
    for n in 1..=8 {
        let f = g(&format!("fools_diamond({n})"));
        let k = build_bipartite(&f, SignRule::Wilson).unwrap();
        let d = gram_det(&k.matrix).unwrap();
        fools.push(if d.is_integer() { exact_sqrt(&d.to_integer()) } else { None });
    }
    let fools_ok = fools.iter().zip(&published).all(|(x, p)| x.as_ref() == Some(p));
    let shown: Vec<String> = fools.iter().map(|x| x.as_ref().map_or("non-square".into(), |v| v.to_string())).collect();
    check(hex_ok && fools_ok, format!("3,4,3,4,3,4 hexagon det(KK*) = {d}; fool's diamonds {}", shown.join(", ")))
}

fn c10_diforms() -> Outcome {
    let fortress = count("fortress(5)") == big(2) * pow(5, 6);
    let dungeon = count("aztec_dungeon(2)") == pow(13, 3);
    let dragons: Vec<u32> = (1..=6u32).filter(|&n| count(&format!("dragon({n})")) != pow(2, n * (n + 1))).collect();
    let quasi = count("quasihexagon(2,3,2)") == big(17920);
    let hexd = count("hexagonal_dungeon(2,4)") == pow(13, 8) * pow(14, 2);
    let ok = fortress && dungeon && dragons.is_empty() && quasi && hexd;
    check(
        ok,
        format!("fortress {fortress}, aztec dungeon {dungeon}, dragon mismatches {dragons:?}, quasihexagon {quasi}, hexagonal dungeon {hexd}"),
    )
}

fn c11_cubes() -> Outcome {
    let expected = [1u64, 2, 9, 272, 589185];
    let got: Vec<BigInt> = (1..=5).map(|n| cube_matchings(n).unwrap()).collect();
    let kasteleyn_side: Vec<BigInt> = (1..=4).map(|n| count(&format!("hypercube({n})"))).collect();
    let ok = got.iter().zip(expected).all(|(x, e)| *x == big(e))
        && got.iter().enumerate().all(|(i, x)| x.is_odd() == ((i + 1) % 2 == 1))
        && kasteleyn_side.iter().zip(&got).all(|(a, b)| a == b);
    check(ok, format!("cube matchings {got:?}; parity n mod 2"))
}

fn c12_tableaux() -> Outcome {
    let mut bad = Vec::new();
    for (m, n) in [(2, 2), (2, 6), (2, 10), (4, 4), (4, 6)] {
        if dimer_covering_poly(m, n).unwrap() != dimer_tableaux_poly(m, n).unwrap() {
            bad.push((m, n));
        }
    }
    let w = monomial(&[(Var::y(1), 2), (Var::x(2), 1), (Var::x(5), 1), (Var::x(7), 1)]);
    let present = !dimer_covering_poly(2, 10).unwrap().coefficient(&w).is_zero();
    check(bad.is_empty() && present, format!("polynomials differ on {bad:?}; y1^2 x2 x5 x7 present: {present}"))
}

fn random_weights(h: &mut PlanarGraph, rng: &mut ChaCha8Rng) {
    for e in &mut h.edges {
        e.weight = q(rng.gen_range(1..=9), rng.gen_range(1..=9));
    }
}

fn ladder() -> PlanarGraph {
    let mut h = PlanarGraph::new(Embedding::Square);
    for p in [pt(1, 1, 1), pt(1, 0, 1), pt(2, 0, 1), pt(2, 1, 1), pt(0, 1, 1), pt(0, 0, 1)] {
        h.add_vertex(p);
    }
    for (a, b) in [(4, 5), (0, 1), (3, 2), (4, 0), (1, 2), (5, 1), (0, 3)] {
        h.add_unit_edge(a, b);
    }
    h.with_coloring()
}

fn c13_rewrites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut failures = Vec::new();
    let mut trials = 0;
    let urban_fixtures = ["aztec_diamond(2)", "aztec_diamond(3)", "rectangle(4,4)", "rectangle(3,4)"];
    for spec in urban_fixtures {
        let base = g(spec);
        for t in 0..10 {
            let mut h = base.clone();
            random_weights(&mut h, &mut rng);
            let sites = find_sites(&h, Pattern::Urban);
            let site = &sites[t % sites.len()];
            let (renewed, factor) = urban_renewal(&h, site).unwrap();
            trials += 1;
            if enumerate_weighted(&h).unwrap() != factor * enumerate_weighted(&renewed).unwrap() {
                failures.push(format!("urban {spec} #{t}"));
            }
        }
    }
    let kenyon_fixtures =
        [("ladder", ladder()), ("rectangle(2,4)", g("rectangle(2,4)")), ("rectangle(2,5)", g("rectangle(2,5)"))];
    for (name, base) in kenyon_fixtures {
        for t in 0..10 {
            let mut h = base.clone();
            random_weights(&mut h, &mut rng);
            let sites = find_sites(&h, Pattern::Kenyon);
            if sites.is_empty() {
                failures.push(format!("kenyon {name}: no site"));
                break;
            }
            let site = &sites[t % sites.len()];
            let big_e = q(rng.gen_range(1..=9), rng.gen_range(1..=9));
            let sub = kenyon_substitution(&h, site, &big_e).unwrap();
            trials += 1;
            if enumerate_weighted(&h).unwrap() != enumerate_weighted(&sub).unwrap() {
                failures.push(format!("kenyon {name} #{t}"));
            }
        }
    }
    let mut reductions = Vec::new();
    for n in 2..=3u32 {
        let t = reduce(&g(&format!("aztec_diamond({n})")), Strategy::Urban);
        let ok = t.is_trivial() && t.factor == BigRational::from_integer(pow(2, n * (n + 1) / 2));
        reductions.push(format!("n={n}: {}", t.factor));
        if !ok {
            failures.push(format!("reduce aztec_diamond({n})"));
        }
    }
    check(
        failures.is_empty(),
        format!("{trials} weighted identity trials; reductions {}; failures {failures:?}", reductions.join(", ")),
    )
}

fn n(a: usize, b: usize) -> BigInt {
    transfer_count(a, b).unwrap()
}

fn c14_number_theory() -> Outcome {
    let mod4: Vec<BigInt> = (1..=5).map(|a| n(a, 2 * a) % 4).collect();
    let mod4_ok = mod4.iter().all(|r| r.is_one());
    // (a+1) | (A+1) and (b+1) | (B+1) implies N(a,b) | N(A,B).
    let mut pairs = Vec::new();
    'outer: for a in 1..=5usize {
        for b in a..=5 {
            if a * b % 2 == 1 {
                continue;
            }
            for big_a in (a + 1..=11).filter(|x| (x + 1) % (a + 1) == 0) {
                for big_b in (b..=11).filter(|x| (x + 1) % (b + 1) == 0) {
                    pairs.push((a, b, big_a, big_b));
                    if pairs.len() == 20 {
                        break 'outer;
                    }
                }
            }
        }
    }
    let divides = pairs.len() == 20 && pairs.iter().all(|&(a, b, x, y)| (n(x, y) % n(a, b)).is_zero());
    let seq =
        |a: usize, len: usize| -> Vec<BigRational> { (1..=len).map(|b| BigRational::from_integer(n(a, b))).collect() };
    let d2 = fit_recurrence(&seq(2, 14)).map(|r| r.degree).ok();
    let d3 = fit_recurrence(&seq(3, 16)).map(|r| r.degree).ok();
    let ok = mod4_ok && divides && d2 == Some(2) && d3 == Some(4);
    check(
        ok,
        format!("N(a,2a) mod 4 = {mod4:?}; {} divisibility pairs hold: {divides}; degrees {d2:?}, {d3:?}", pairs.len()),
    )
}

fn c15_augmented_triangles() -> Outcome {
    let expected = [(3, 3u64, 0u64), (4, 6, 1), (7, 1065, 0), (8, 6276, 2)];
    let mut ok = true;
    let mut shown = Vec::new();
    for (m, c, v) in expected {
        let got = count(&format!("right_triangle_augmented({m})"));
        ok &= got == big(c) && two_adic_valuation(&got) == v;
        shown.push(format!("{m}:{got}"));
    }
    let tri: Vec<BigInt> = (1..=14).map(|m| count(&format!("triangle_graph_augmented({m})"))).collect();
    let div3 = tri.iter().all(|x| (x % big(3)).is_zero());
    check(ok && div3, format!("right triangles {}; triangle graphs 1..14 divisible by 3: {div3}", shown.join(" ")))
}

fn c16_mutilated_diamond() -> Outcome {
    let whole = count("aztec_diamond(5)");
    let cut = count("aztec_diamond(5)+border_middles");
    let ok = whole == big(32768) && cut == big(59493);
    let f = factorize(&cut).unwrap();
    check(ok, format!("order 5: {whole}; mutilated: {cut} = {f} (published 59493)"))
}

/// Random test graphs on at most 20 vertices: subregions of square and
/// honeycomb lattices (bipartite) and of a triangulated grid (not
/// bipartite), half of them with random rational weights.
fn corpus() -> Vec<(String, PlanarGraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut out = Vec::new();
    let triangulated = |w: i64, h: i64| {
        let mut t = PlanarGraph::new(Embedding::Square);
        for y in 0..h {
            for x in 0..w {
                t.add_vertex(pt(x, y, 1));
            }
        }
        let id = |x: i64, y: i64| (y * w + x) as usize;
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    t.add_unit_edge(id(x, y), id(x + 1, y));
                }
                if y + 1 < h {
                    t.add_unit_edge(id(x, y), id(x, y + 1));
                }
                if x + 1 < w && y + 1 < h {
                    t.add_unit_edge(id(x, y), id(x + 1, y + 1));
                }
            }
        }
        t
    };
    let sources: [(&str, PlanarGraph); 3] =
        [("grid", g("rectangle(4,5)")), ("honeycomb", g("hexagon(1,2,2)")), ("triangulated", triangulated(5, 4))];
    let mut i = 0;
    while out.len() < 50 {
        let (name, src) = &sources[i % 3];
        let keep: Vec<usize> = (0..src.vertex_count()).filter(|_| rng.gen_bool(0.8)).collect();
        let mut h = src.induced(&keep);
        if h.vertex_count() % 2 == 1 && rng.gen_bool(0.7) {
            // Mostly even graphs, so most counts are nonzero.
            i += 1;
            continue;
        }
        let weighted = out.len() % 2 == 1;
        if weighted {
            random_weights(&mut h, &mut rng);
        }
        out.push((format!("{name} #{i}{}", if weighted { " weighted" } else { "" }), h));
        i += 1;
    }
    out
}

fn c17_oracle_corpus() -> Outcome {
    let graphs = corpus();
    let mut bad = Vec::new();
    let mut nonzero = 0;
    let mut nonbipartite = 0;
    for (name, h) in &graphs {
        assert!(h.vertex_count() <= 20);
        let fast = count_matchings(h).unwrap();
        let slow = enumerate_weighted(h).unwrap();
        if !slow.is_zero() {
            nonzero += 1;
        }
        if !h.clone().with_coloring().is_bipartite() {
            nonbipartite += 1;
        }
        if fast != slow {
            bad.push(name.clone());
        }
    }
    check(
        bad.is_empty(),
        format!("{} graphs ({nonzero} matchable, {nonbipartite} non-bipartite); disagreements {bad:?}", graphs.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 17] = [
        ("Aztec diamonds", c1_aztec),
        ("MacMahon boxes", c2_macmahon),
        ("central edge probability 1/3", c3_central_edge),
        ("hexagon moments of inertia", c4_moments),
        ("knight-pair deleted diamonds", c5_knight_pairs),
        ("inverse entry sums", c6_inverse_sums),
        ("holey hexagons", c7_holey_hexagons),
        ("Smith normal forms", c8_cokernels),
        ("det(KK*) values", c9_gram_determinants),
        ("diform families", c10_diforms),
        ("hypercube matchings", c11_cubes),
        ("dimer tableaux", c12_tableaux),
        ("rewrite identities", c13_rewrites),
        ("number theory of N(a,b)", c14_number_theory),
        ("augmented triangles", c15_augmented_triangles),
        ("mutilated Aztec diamond", c16_mutilated_diamond),
        ("oracle corpus", c17_oracle_corpus),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let k = i + 1;
        let (ok, detail) = run();
        println!("criterion {k:2} {}: {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok && !KNOWN_DISCREPANCIES.contains(&k) {
            unexpected.push(k);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria pass except the known discrepancies {KNOWN_DISCREPANCIES:?}");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        ExitCode::FAILURE
    }
}
