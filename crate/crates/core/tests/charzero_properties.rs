use std::collections::BTreeMap;

use wakimoto::charzero::{
    build_char0_complex, char0_cohomology, char0_row, root_by_action, root_of_reflection, Clearing, ExtClass,
    Realization,
};
use wakimoto::dg::{check_d_squared, Letter};

const POINTS: [(i64, i64); 6] = [(2, 2), (3, 3), (4, 4), (2, 3), (3, 5), (5, 2)];

#[test]
fn differential_squares_to_zero_under_both_clearings() {
    for n in 1..=8 {
        for start in [Letter::S, Letter::T] {
            for &(x, y) in &POINTS {
                for clearing in [Clearing::Lcm, Clearing::Product] {
                    let c = build_char0_complex(n, start, x, y, clearing).unwrap();
                    assert!(check_d_squared(&c.complex), "n={} {:?} ({}, {}) {:?}", n, start, x, y, clearing);
                }
            }
        }
    }
}

/// Clearing denominators rescales each differential by a nonzero constant, so dimensions agree.
#[test]
fn cohomology_is_independent_of_the_clearing() {
    for n in 1..=7 {
        for start in [Letter::S, Letter::T] {
            let lcm = build_char0_complex(n, start, 2, 2, Clearing::Lcm).unwrap();
            let prod = build_char0_complex(n, start, 2, 2, Clearing::Product).unwrap();
            let cutoff = 2 * n as i64 + 6;
            assert_eq!(char0_cohomology(&lcm, cutoff).unwrap(), char0_cohomology(&prod, cutoff).unwrap(), "n={}", n);
        }
    }
}

/// Away from the two ends, each nonzero group is a single class in internal degree `2j − n`.
#[test]
fn interior_classes_are_points() {
    for n in 2..=8u32 {
        for start in [Letter::S, Letter::T] {
            let row: BTreeMap<i64, ExtClass> = char0_row(n, start, 2 * n as i64 + 6).unwrap();
            for (&j, class) in &row {
                if (j - n as i64) % 2 != 0 {
                    assert_eq!(*class, ExtClass::Zero, "n={} j={}", n, j);
                } else if j >= 2 {
                    assert_eq!(*class, ExtClass::Point(2 * j - n as i64), "n={} j={}", n, j);
                }
            }
        }
    }
}

#[test]
fn reflection_roots_agree_with_the_action() {
    let r = Realization::generic();
    for len in (1..=15).step_by(2) {
        for c in [Letter::S, Letter::T] {
            assert_eq!(root_of_reflection(c, len, &r).unwrap(), root_by_action(c, len, &r), "{:?} {}", c, len);
        }
    }
}
