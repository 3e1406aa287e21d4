//! Acceptance suite: one pass/fail line per criterion, plus independent recomputations of the
//! headline numbers.

use std::io::Write;

use innerscope::exactmath::{Field, Matrix, Scalar};
use innerscope::selftest::{run_criterion, CriterionResult, CRITERIA};
use innerscope::tensoralg::{matrix_unit, StructAlgebra};

fn run(id: usize) -> CriterionResult {
    let r = run_criterion(id).expect("known criterion");
    // written to the stream directly so the line shows without --nocapture
    let _ = writeln!(std::io::stderr(), "{}", r.line());
    r
}

fn check(id: usize) {
    let r = run(id);
    assert!(r.checks_passed, "{}", r.line());
    assert!(r.within_limit(), "over time: {}", r.line());
}

#[test]
fn criterion_01_group_classification() {
    check(1);
}

#[test]
fn criterion_02_monoid_structure() {
    check(2);
}

#[test]
fn criterion_03_algebra_brute_force() {
    check(3);
}

#[test]
fn criterion_04_derivation_brute_force() {
    check(4);
}

#[test]
fn criterion_05_leavitt() {
    check(5);
}

#[test]
fn criterion_06_pbw_jacobi() {
    check(6);
}

#[test]
fn criterion_07_characteristic_p() {
    check(7);
}

#[test]
fn criterion_08_gset_coinner() {
    check(8);
}

#[test]
fn criterion_09_embedding() {
    check(9);
}

#[test]
fn criterion_10_naturality() {
    check(10);
}

#[test]
fn criteria_are_numbered_one_to_ten() {
    assert_eq!(CRITERIA.len(), 10);
}

/// All 2×2 matrices over GF(2) with nonzero determinant, by direct enumeration.
fn gl2_f2() -> Vec<[[u8; 2]; 2]> {
    let mut out = Vec::new();
    for bits in 0u8..16 {
        let m = [[bits & 1, (bits >> 1) & 1], [(bits >> 2) & 1, (bits >> 3) & 1]];
        if (m[0][0] * m[1][1] + m[0][1] * m[1][0]) % 2 == 1 {
            out.push(m);
        }
    }
    out
}

#[test]
fn unit_group_order_matches_gl2() {
    // |GL₂(GF(2))| = (4 − 1)(4 − 2) and |U(GF(2))| = 1, so six inner endomorphisms
    assert_eq!(gl2_f2().len(), 6);
    let f2 = Field::prime(2).unwrap();
    let r = StructAlgebra::matrix_algebra(2, f2);
    let units = r.units().unwrap();
    assert_eq!(units.len(), 6);
    for m in gl2_f2() {
        let mut mat = Matrix::zeros(f2, 2, 2);
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 1 {
                    mat = add(&mat, &matrix_unit(f2, 2, i, j));
                }
            }
        }
        let coords = r.coords_of_matrix(&mat).unwrap();
        assert!(units.iter().any(|(u, _)| *u == coords));
    }
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    let entries: Vec<Scalar> = a.entries().iter().zip(b.entries()).map(|(x, y)| x + y).collect();
    Matrix::new(a.field(), a.rows(), a.cols(), entries).unwrap()
}
