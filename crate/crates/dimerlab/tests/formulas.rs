use dimerlab::formulas::*;
use num_rational::BigRational;

fn check(id: &str, grid: &str) {
    let r = verify_str(id, grid).unwrap();
    assert!(r.all_match(), "{r}");
}

#[test]
fn macmahon_boxes() {
    check("macmahon", "a=1..3 b=1..3 c=1..3");
}

#[test]
fn aztec_and_cell_count_forms() {
    check("aztec", "n=1..6");
    for cells in [4, 12, 24, 40, 60] {
        check("gcz", &format!("N={cells}"));
    }
}

#[test]
fn dragons_and_fortresses() {
    check("dragon", "n=1..4");
    check("fortress", "n=1..6");
}

#[test]
fn dungeons() {
    check("aztec_dungeon", "n=1..2");
    check("hex_dungeon", "a=1..2 b=2a..2a+1");
    // Order 3 of the Aztec dungeon carries an extra factor 2.
    let r = verify_str("aztec_dungeon", "n=3").unwrap();
    assert_eq!(r.mismatches().count(), 1);
}

#[test]
fn inverse_sums_and_moments() {
    check("inverse_sum", "n=1..6");
    check("moment_h", "n=1..4");
}

#[test]
fn trig_product_against_transfer_matrix() {
    check("kasteleyn_product", "a=1..8 b=a..8");
}

#[test]
fn second_quotients() {
    check("second_quotient_formula", "n=2..4");
}

#[test]
fn pillow_generating_functions() {
    check("pillow_gf", "k=0 n=1..5");
    check("pillow_gf", "k=2 n=2..5");
}

#[test]
fn per_point_errors_become_mismatches() {
    let r = verify_str("gcz", "N=5..6").unwrap();
    assert_eq!(r.lines.len(), 2);
    assert!(r.lines.iter().all(|l| l.error.is_some()));
    assert!(!r.all_match());
}

#[test]
fn report_lists_every_point() {
    let r = verify_str("aztec", "n=1..3").unwrap();
    let text = r.to_string();
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("n=2  formula=8  count=8  match"));
    assert!(text.ends_with("aztec: 3 points, 0 mismatches"));
}

#[test]
fn approximations() {
    assert_eq!(approx(&BigRational::new(1.into(), 4.into())), 0.25);
}
