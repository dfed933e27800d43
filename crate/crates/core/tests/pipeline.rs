use num_bigint::BigInt;
use num_rational::BigRational;

use qdim_core::gf::{GFq, DEFAULT_LIMIT};
use qdim_core::identity::{raw_rhs_with, theorem_lhs, verify_main};
use qdim_core::jacquet::{brute_dim, closed_dim, middle_dim, DimensionReport};
use qdim_core::Exec;

#[test]
fn raw_sum_is_strategy_independent() {
    for n in 1..=5 {
        assert_eq!(raw_rhs_with(n, Exec::Sequential).unwrap(), raw_rhs_with(n, Exec::default()).unwrap());
    }
}

#[test]
fn identity_evaluates_to_enumerated_dimension() {
    // The symbolic side at q = 2, 3 against the finite-field enumeration.
    for (n, q) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let lhs = theorem_lhs(n).unwrap().eval_int(q).unwrap();
        let brute = brute_dim(&GFq::new(q as u32).unwrap(), n as usize, DEFAULT_LIMIT, Exec::default()).unwrap();
        assert_eq!(lhs, BigRational::from_integer(brute.dim));
    }
}

#[test]
fn dimension_report_json() {
    let field = GFq::new(2).unwrap();
    let brute = brute_dim(&field, 2, DEFAULT_LIMIT, Exec::default()).unwrap();
    let report = DimensionReport::new(&brute, &middle_dim(2, 2).unwrap(), &closed_dim(2, 2));
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["brute"], "4");
    assert_eq!(v["middle"], "4");
    assert_eq!(v["closed"], "4");
    assert_eq!(v["buckets"]["0"], "8192");
    assert_eq!(v["buckets"]["1"], "-8192");
    assert_eq!(v["agree"], true);
}

#[test]
fn main_report_is_deterministic_apart_from_timing() {
    let strip = |n| {
        let mut v = serde_json::to_value(verify_main(n).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v.to_string()
    };
    assert_eq!(strip(4), strip(4));
    let v = serde_json::to_value(verify_main(2).unwrap()).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn closed_dimension_grows_with_field() {
    for n in 1..=4 {
        let dims: Vec<BigInt> = [2, 3, 4, 5].iter().map(|&q| closed_dim(n, q)).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    }
}
