//! Golden data for the worked examples of the sibling decomposition, the
//! resolution of each column of `C`, and the resulting certificate.

mod common;

use common::worked_example;

#[test]
fn sibling_classes_and_c() {
    worked_example::sibling_classes_and_c();
}

#[test]
fn first_column_has_a_row_outside_the_basis() {
    worked_example::first_column_has_a_row_outside_the_basis();
}

#[test]
fn second_column_has_a_zero_coefficient() {
    worked_example::second_column_has_a_zero_coefficient();
}

#[test]
fn third_column_combines_two_columns() {
    worked_example::third_column_combines_two_columns();
}

#[test]
fn certificate_vectors() {
    worked_example::certificate_vectors();
}
