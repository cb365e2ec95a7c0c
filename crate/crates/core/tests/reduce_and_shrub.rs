use std::collections::BTreeSet;

use proptest::prelude::*;
use wakimoto::dg::{build_b, Letter, SignRule};
use wakimoto::reduce::{cyclotomic_label, gamma_transform, block_decompose, reduced_blocks};
use wakimoto::shrub::{enumerate, order_leq, uproot, uproot_set, Filter, Shrubbery};

#[test]
fn blocks_partition_the_basis() {
    for m in 1..=8 {
        let b = build_b(m, SignRule::Koszul);
        let g = gamma_transform(&b, SignRule::Koszul).unwrap();
        let blocks = block_decompose(&g).unwrap();
        let sum: usize = blocks.iter().map(|(_, c)| c.total_rank()).sum();
        assert_eq!(sum, b.total_rank(), "m={}", m);
        let keys: BTreeSet<_> = blocks.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(keys.len(), blocks.len());
    }
}

/// After rescaling, every nonzero entry is a unit or a signed cyclotomic polynomial.
#[test]
fn rescaled_entries_are_cyclotomic() {
    for m in 1..=8 {
        for (key, block) in reduced_blocks(m, SignRule::Koszul).unwrap() {
            for (a, b, v) in block.edges() {
                let label = cyclotomic_label(&v, m);
                let ok = label == "1" || label == "-1" || label.trim_start_matches('-').starts_with("phi");
                assert!(ok, "m={} block {:?}: {} -> {} has entry {}", m, key, a, b, label);
            }
        }
    }
}

fn all_shrubberies(len: usize) -> Vec<Shrubbery> {
    enumerate(len, Filter::default())
}

/// Removing stems `i < j` in either order gives the same shrubbery once indices are shifted.
#[test]
fn uprooting_commutes() {
    for len in 0..=9 {
        for l in enumerate(len, Filter { basis_only: true, ..Filter::default() }) {
            let n = l.stem_count();
            for j in 0..n {
                for i in 0..j {
                    let a = uproot(&uproot(&l, j).unwrap(), i).unwrap();
                    let b = uproot(&uproot(&l, i).unwrap(), j - 1).unwrap();
                    assert_eq!(a, b, "{} stems {} {}", l, i, j);
                    let set: BTreeSet<usize> = [i, j].into_iter().collect();
                    assert_eq!(uproot_set(&l, &set).unwrap(), a);
                }
            }
        }
    }
}

fn concat(parts: &[&Shrubbery]) -> Shrubbery {
    Shrubbery(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
}

/// `L < L'` implies `N L M < N L' M'` for all shrubberies of matching lengths.
#[test]
fn order_is_lexicographic_in_products() {
    let by_len: Vec<Vec<Shrubbery>> = (0..=7).map(all_shrubberies).collect();
    for ll in 1..=7 {
        let mut strict = Vec::new();
        for a in &by_len[ll] {
            for b in &by_len[ll] {
                if a != b && order_leq(a, b).unwrap() {
                    strict.push((a, b));
                }
            }
        }
        for nl in 0..=7 - ll {
            for ml in 0..=7 - ll - nl {
                for n in &by_len[nl] {
                    for (a, b) in &strict {
                        for m in &by_len[ml] {
                            for m2 in &by_len[ml] {
                                let lhs = concat(&[n, a, m]);
                                let rhs = concat(&[n, b, m2]);
                                assert!(order_leq(&lhs, &rhs).unwrap() && lhs != rhs, "{} vs {}", lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn order_rejects_length_mismatch() {
    let a: Shrubbery = "b".parse().unwrap();
    let b: Shrubbery = "br".parse().unwrap();
    assert!(order_leq(&a, &b).is_err());
}

fn shrubbery_strategy() -> impl Strategy<Value = Shrubbery> {
    (0usize..=8, any::<prop::sample::Index>()).prop_map(|(len, idx)| {
        let all = all_shrubberies(len);
        all[idx.index(all.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_form_round_trips(l in shrubbery_strategy()) {
        let parsed: Shrubbery = l.to_string().parse().unwrap();
        prop_assert_eq!(parsed, l);
    }

    #[test]
    fn swapping_colors_is_an_involution(l in shrubbery_strategy()) {
        let swapped = l.swap_colors();
        prop_assert_eq!(swapped.len(), l.len());
        let flipped: Vec<Letter> = l.word().into_iter().map(Letter::other).collect();
        prop_assert_eq!(swapped.word(), flipped);
        prop_assert_eq!(swapped.swap_colors(), l);
    }
}
