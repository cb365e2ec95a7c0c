//! Printed tables and figures, with their known misprints pinned exactly.

mod common;

fn check(id: usize, report: common::Report) {
    assert_eq!(report.mismatches, common::documented(id), "{}", report.summary);
}

#[test]
fn prediction_table_and_rows() {
    check(3, common::criterion_3());
}

#[test]
fn block_edges_after_rescaling() {
    check(5, common::criterion_5());
}

#[test]
fn characteristic_zero_tables() {
    check(7, common::criterion_7());
}

#[test]
fn characteristic_zero_stairs() {
    check(2, common::criterion_2(8));
}

#[test]
fn direct_cohomology_against_prediction() {
    check(1, common::criterion_1(8));
}
