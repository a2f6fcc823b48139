mod common;

use common::*;

#[test]
fn valuations_of_zero_sum_triples() {
    valuation_triples(100_000).unwrap();
}

#[test]
fn two_term_matches_search() {
    two_term_exhaustive().unwrap();
}

#[test]
fn minimal_solutions_are_complete() {
    hilbert_completeness(200).unwrap();
}

#[test]
fn divisibility_sets_match_search() {
    minimal_sets_exhaustive().unwrap();
}

#[test]
fn two_monomial_matches_oracle() {
    two_monomial_vs_oracle(50).unwrap();
}

#[test]
fn strict_case_exponent_identity() {
    strict_case_identity(2000).unwrap();
}

#[test]
fn direct_formula_named_equations() {
    for eq in ["x^2 + y^3 = z^5", "x^3 - y^2*z - z"] {
        let e = eligible(eq).expect("direct formula applies");
        direct_formula_check(&e, 1000, 50, 1).unwrap();
    }
}

#[test]
fn direct_formula_random_equations() {
    for (i, e) in random_eligible(10, 11).iter().enumerate() {
        direct_formula_check(e, 1000, 50, i as u64).unwrap();
    }
}

#[test]
fn certificate_solvers_match_oracle() {
    for (eq, b) in [("x^3 - y^2*z - y", 20), ("x^2*y = z^2 + 1", 20), ("y*z*t = x^2 + 1", 10), ("x*y - z*t = 1", 10)] {
        box_equivalent(eq, b).unwrap();
    }
}
