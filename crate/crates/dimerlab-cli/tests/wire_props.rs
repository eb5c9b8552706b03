use dimerlab_cli::wire::{rational_from_wire, rational_to_wire};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::json;

proptest! {
    #[test]
    fn rationals_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX, scale in 0u32..4) {
        let x = BigRational::new(BigInt::from(n) * BigInt::from(10).pow(scale * 9), BigInt::from(d));
        let wire = rational_to_wire(&x);
        prop_assert_eq!(rational_from_wire(&wire).unwrap(), x.clone());
        // Through a JSON document as well.
        let doc = serde_json::to_string(&json!({ "p": wire })).unwrap();
        let back: serde_json::Value = serde_json::from_str(&doc).unwrap();
        prop_assert_eq!(rational_from_wire(back["p"].as_str().unwrap()).unwrap(), x);
    }

    #[test]
    fn garbage_is_rejected_not_misread(s in "[0-9./ a-z-]{0,12}") {
        if let Ok(x) = rational_from_wire(&s) {
            // Anything accepted must re-encode to an equal value.
            prop_assert_eq!(rational_from_wire(&rational_to_wire(&x)).unwrap(), x);
        }
    }
}
