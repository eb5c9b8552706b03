use dimerlab::graph::{pt, Embedding, PlanarGraph};
use dimerlab::kasteleyn::{
    build_bipartite, build_pfaffian_orientation, count_int, count_matchings, count_matchings_with,
    is_pfaffian_orientation, Limits, SignRule,
};
use dimerlab::linalg::{
    charpoly, det, det_cofactor, det_int, invert, pfaffian, smith_normal_form, snf_verifies, to_rational, IntMatrix,
    Matrix, RatMatrix,
};
use dimerlab::oracle::enumerate_weighted;
use dimerlab::region::generate;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-6i64..=6, n * n)
            .prop_map(move |v| Matrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j])))
    })
}

fn skew_matrix(max_half: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max_half).prop_flat_map(|h| {
        let n = 2 * h;
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => BigRational::from_integer(v[i * n + j].into()),
                std::cmp::Ordering::Greater => -BigRational::from_integer(v[j * n + i].into()),
                std::cmp::Ordering::Equal => BigRational::zero(),
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn determinant_algorithms_agree(m in int_matrix(5)) {
        let d = det_int(&m);
        let r = to_rational(&m);
        prop_assert_eq!(&BigRational::from_integer(d.clone()), &det(&r).unwrap());
        prop_assert_eq!(BigRational::from_integer(d), det_cofactor(&r));
    }

    #[test]
    fn inverse_is_an_inverse(m in int_matrix(5)) {
        let r = to_rational(&m);
        match invert(&r) {
            Ok(inv) => prop_assert_eq!(r.mul(&inv), Matrix::identity(r.rows())),
            Err(_) => prop_assert!(det_int(&m).is_zero()),
        }
    }

    #[test]
    fn smith_form_verifies(m in int_matrix(5)) {
        let snf = smith_normal_form(&m);
        prop_assert!(snf_verifies(&m, &snf));
        let d = det_int(&m);
        if !d.is_zero() {
            let product: BigInt = snf.nontrivial().iter().product();
            prop_assert_eq!(product, d.abs());
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant(s in skew_matrix(3)) {
        let p = pfaffian(&s).unwrap();
        prop_assert_eq!(&p * &p, det(&s).unwrap());
    }

    #[test]
    fn characteristic_polynomial_constant_term(m in int_matrix(4)) {
        let r = to_rational(&m);
        let p = charpoly(&r).unwrap();
        prop_assert_eq!(p.degree(), Some(r.rows()));
        prop_assert!(p.leading().is_one());
        let sign = if r.rows().is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
        prop_assert_eq!(p.coeff(0), sign * det(&r).unwrap());
    }
}

fn region(s: &str) -> PlanarGraph {
    generate(&s.parse().unwrap()).unwrap()
}

#[test]
fn sign_rules_agree_on_square_regions() {
    for s in ["aztec_diamond(4)", "rectangle(4,6)", "aztec_window(1,3)", "pillow_0mod4(3)"] {
        let g = region(s);
        let wilson = det(&build_bipartite(&g, SignRule::Wilson).unwrap().matrix).unwrap().abs();
        let generic = det(&build_bipartite(&g, SignRule::GenericPlanar).unwrap().matrix).unwrap().abs();
        assert_eq!(wilson, generic, "{s}");
        assert_eq!(BigRational::from_integer(count_int(&g).unwrap()), generic, "{s}");
    }
}

#[test]
fn honeycomb_rule_agrees_with_generic() {
    for s in ["hexagon(2,3,2)", "hexagon_general(1,2,3,1,2,3)", "hexagon(3,3,3)+central_two(opposite)"] {
        let g = region(s);
        let plain = det(&build_bipartite(&g, SignRule::HoneycombPlain).unwrap().matrix).unwrap().abs();
        let generic = det(&build_bipartite(&g, SignRule::GenericPlanar).unwrap().matrix).unwrap().abs();
        assert_eq!(plain, generic, "{s}");
    }
}

#[test]
fn orientations_are_pfaffian_on_nonbipartite_graphs() {
    for s in ["triangle_graph(5)", "triangle_graph_augmented(4)", "right_triangle_augmented(7)"] {
        let g = region(s);
        let sys = build_pfaffian_orientation(&g).unwrap();
        assert!(is_pfaffian_orientation(&g, &sys.orientation).unwrap(), "{s}");
        let pf = pfaffian(&sys.matrix).unwrap().abs();
        assert_eq!(pf, count_matchings(&g).unwrap(), "{s}");
    }
}

#[test]
fn weighted_counts_match_the_oracle() {
    // A 3×4 grid with distinct weights on every edge.
    let mut g = PlanarGraph::new(Embedding::Square);
    for y in 0..3 {
        for x in 0..4 {
            g.add_vertex(pt(x, y, 1));
        }
    }
    for y in 0..3usize {
        for x in 0..4usize {
            let v = 4 * y + x;
            if x < 3 {
                g.add_unit_edge(v, v + 1);
            }
            if y < 2 {
                g.add_unit_edge(v, v + 4);
            }
        }
    }
    for (k, e) in g.edges.iter_mut().enumerate() {
        e.weight = BigRational::new(BigInt::from(k as i64 + 1), BigInt::from(k as i64 % 4 + 2));
    }
    let g = g.with_coloring();
    assert_eq!(count_matchings(&g).unwrap(), enumerate_weighted(&g).unwrap());
}

#[test]
fn size_limits_are_enforced() {
    let g = region("rectangle(36,36)");
    assert!(count_matchings(&g).is_err());
    let lifted = Limits { matrix: 700, ..Limits::default() };
    assert!(count_matchings_with(&region("rectangle(8,8)"), lifted).is_ok());
}

#[test]
fn odd_regions_have_no_matchings() {
    assert!(count_int(&region("rectangle(3,5)")).unwrap().is_zero());
    assert!(count_int(&region("triangle_graph_augmented(5)")).unwrap().is_zero());
}
