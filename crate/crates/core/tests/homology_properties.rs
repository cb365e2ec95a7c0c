use std::cmp::Reverse;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use wakimoto::complex::DgComplex;
use wakimoto::dg::{build_b, build_tilde_c, SignRule};
use wakimoto::homology::{cohomology, integral_cohomology, mod_p_dims_from_integral, smith_normal_form};
use wakimoto::ring::Specialization;

/// Determinant by rational elimination.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
    let mut d = BigRational::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return BigInt::zero() };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= a[col][col].clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / a[col][col].clone();
            for c in col..n {
                let v = a[col][c].clone() * f.clone();
                a[r][c] -= v;
            }
        }
    }
    d.to_integer()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_of_random_square_matrices(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 4)) {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let f = smith_normal_form(&m);
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(f.iter().all(|v| v.is_positive()));
        let d = det(&m).abs();
        if f.len() == 4 {
            prop_assert_eq!(f.iter().product::<BigInt>(), d);
        } else {
            prop_assert!(d.is_zero());
        }
    }
}

#[test]
fn cohomology_ignores_basis_order() {
    let z = Specialization::integers(2, 2);
    for m in 0..=5 {
        let b = build_b(m, SignRule::Koszul);
        let cells: Vec<(i64, Reverse<_>)> =
            b.basis.iter().flat_map(|(d, v)| v.iter().map(move |l| (*d, Reverse(l.clone())))).collect();
        let entries: Vec<_> = {
            let mut out = Vec::new();
            for (d, mat) in &b.diff {
                for ((r, c), v) in &mat.entries {
                    out.push((Reverse(b.basis[d][*c].clone()), Reverse(b.basis[&(d + 1)][*r].clone()), v.clone()));
                }
            }
            out
        };
        let reversed = DgComplex::from_entries(cells, entries);
        assert_ne!(reversed.basis.values().next().map(|v| v.len()), None);
        assert_eq!(integral_cohomology(&b, &z).unwrap(), integral_cohomology(&reversed, &z).unwrap());
    }
}

/// Field dimensions computed directly agree with those derived from the integral groups.
#[test]
fn universal_coefficients() {
    for n in 1..=8 {
        let c = build_tilde_c(n, true, SignRule::Koszul);
        for (x, y) in [(2, 2), (3, 3)] {
            let integral = cohomology(&c, &Specialization::integers(x, y)).unwrap();
            for p in [2u64, 3, 5, 7] {
                let field = cohomology(&c, &Specialization::mod_prime(p, x, y).unwrap()).unwrap();
                let derived = mod_p_dims_from_integral(&integral, p);
                let degrees: std::collections::BTreeSet<i64> =
                    field.groups.keys().chain(derived.keys()).copied().collect();
                for d in degrees {
                    assert_eq!(
                        field.get(d).free_rank,
                        derived.get(&d).copied().unwrap_or(0),
                        "n={} ({},{}) p={} degree {}",
                        n, x, y, p, d
                    );
                }
            }
        }
    }
}
