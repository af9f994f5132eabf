mod common;

use common::*;

#[test]
fn normalize_is_idempotent() {
    normalize_idempotent(CASES).unwrap();
}

#[test]
fn parser_round_trips() {
    parser_round_trip(CASES).unwrap();
}

#[test]
fn diff_product_rule() {
    product_rule(CASES).unwrap();
}

#[test]
fn eps_truncation_is_a_ring_homomorphism() {
    truncation_homomorphism(CASES).unwrap();
}

#[test]
fn prolongation_respects_brackets() {
    bracket_compatibility(CASES).unwrap();
}
