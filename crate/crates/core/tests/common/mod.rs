//! Check routines shared by the acceptance harness and the integration tests.
//! Each returns a [`Report`] listing every mismatch it found.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use wakimoto::charzero::{
    build_char0_complex, char0_cohomology, char0_row, root_by_action, root_of_reflection, Clearing, Realization,
};
use wakimoto::cli::{h_rows, shrub_checks};
use wakimoto::dg::{build_b, build_tilde_c, build_truncated_algebra, Letter, SignRule};
use wakimoto::homology::{cohomology, compare, CohomologyReport};
use wakimoto::predict::{ext_row, predicted_cohomology, specialize_prediction};
use wakimoto::qnum::{
    cyclotomic, cyclotomic_bezout, cyclotomic_divides_binomial, divisors, pascal_triangle, qbinomial, qnum,
    verify_product_identity, Color,
};
use wakimoto::reduce::{block_decompose, cyclotomic_label, gamma_transform, rescale_block};
use wakimoto::ring::{BiPoly, Specialization};
use wakimoto::shrub::{enumerate, order_leq, Filter, Shrubbery};

pub struct Report {
    pub summary: String,
    pub mismatches: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{}", env!("CARGO_MANIFEST_DIR"), name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path, e))
}

/// Rows of a CSV with a header line; quoted fields may contain commas.
pub fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|line| {
            let mut fields = Vec::new();
            let mut cur = String::new();
            let mut quoted = false;
            for ch in line.chars() {
                match ch {
                    '"' => quoted = !quoted,
                    ',' if !quoted => fields.push(std::mem::take(&mut cur)),
                    c => cur.push(c),
                }
            }
            fields.push(cur);
            fields
        })
        .collect()
}

pub const SPECS: [&str; 6] = ["Z:2,2", "F2:2,2", "F3:2,2", "F5:2,2", "Q:2,2", "Z:3,3"];

/// Direct cohomology against the specialized prediction, one mismatch per differing degree.
pub fn criterion_1(n_max: u32) -> Report {
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for n in 1..=n_max {
        let c = build_tilde_c(n, true, SignRule::Koszul);
        let p = predicted_cohomology(n);
        for sp in SPECS {
            let s: Specialization = sp.parse().unwrap();
            let direct = cohomology(&c, &s).unwrap();
            let model = specialize_prediction(&p, &s).unwrap();
            compared += 1;
            for d in compare(&model, &direct) {
                mismatches.push(format!("n={} {} {}", n, s, d));
            }
        }
    }
    Report { summary: format!("{} (n, specialization) pairs", compared), mismatches }
}

/// Over ℚ at (2,2) only the two top Ext-degrees survive, each one-dimensional.
pub fn criterion_2(n_max: u32) -> Report {
    let mut mismatches = Vec::new();
    let q: Specialization = "Q:2,2".parse().unwrap();
    for n in 1..=n_max {
        let h = cohomology(&build_tilde_c(n, true, SignRule::Koszul), &q).unwrap();
        let top = 2 * n as i64;
        let mut dims: BTreeMap<i64, usize> =
            h.groups.iter().map(|(d, g)| (d + top, g.free_rank)).filter(|(_, r)| *r > 0).collect();
        for j in [top - 1, top] {
            if dims.remove(&j) != Some(1) {
                mismatches.push(format!("n={} j={}: expected dimension 1", n, j));
            }
        }
        for (j, r) in dims {
            mismatches.push(format!("n={} j={}: unexpected dimension {}", n, j, r));
        }
    }
    let table = ext_golden();
    for ((n, j), cells) in &table {
        let stair = *n >= 1 && (*j == 2 * *n as i64 - 1 || *j == 2 * *n as i64);
        let free = cells.iter().filter(|c| *c == "K").count();
        if stair && (free != 1 || cells.len() != 1) || !stair && *n >= 1 && free > 0 {
            mismatches.push(format!("printed table n={} j={} does not fit the stair", n, j));
        }
    }
    Report { summary: format!("n = 1..{} over Q(2,2)", n_max), mismatches }
}

/// `(n, j) ↦ sorted cells` of the printed cohomology table.
pub fn ext_golden() -> BTreeMap<(u32, i64), Vec<String>> {
    csv_rows(&golden("ext_table.csv"))
        .into_iter()
        .map(|r| {
            let mut cells: Vec<String> = r[2].split('|').map(str::to_string).collect();
            cells.sort();
            ((r[0].parse().unwrap(), r[1].parse().unwrap()), cells)
        })
        .collect()
}

pub fn ext_predicted(n_max: u32) -> BTreeMap<(u32, i64), Vec<String>> {
    let mut out = BTreeMap::new();
    for n in 0..=n_max {
        for (j, mut cells) in ext_row(&predicted_cohomology(n), n) {
            cells.sort();
            out.insert((n, j), cells);
        }
    }
    out
}

pub fn pascal_golden() -> BTreeMap<(u32, u32), Vec<u32>> {
    csv_rows(&golden("pascal.csv"))
        .into_iter()
        .map(|r| {
            let f = if r[2].is_empty() { Vec::new() } else { r[2].split('.').map(|d| d.parse().unwrap()).collect() };
            ((r[0].parse().unwrap(), r[1].parse().unwrap()), f)
        })
        .collect()
}

/// Prediction table, stacked rows for n = 6, and the Pascal triangle.
pub fn criterion_3() -> Report {
    let mut mismatches = Vec::new();
    let printed = ext_golden();
    let ours = ext_predicted(12);
    let keys: BTreeSet<_> = printed.keys().chain(ours.keys()).collect();
    for k in keys {
        if printed.get(k) != ours.get(k) {
            mismatches.push(format!(
                "table n={} j={}: printed {:?}, predicted {:?}",
                k.0,
                k.1,
                printed.get(k).map(|c| c.join("|")),
                ours.get(k).map(|c| c.join("|"))
            ));
        }
    }
    let rows = h_rows(&predicted_cohomology(6));
    let printed_text = golden("h_rows_6.txt");
    let printed_rows: Vec<&str> = printed_text.lines().collect();
    if rows.len() != printed_rows.len() {
        mismatches.push(format!("n=6 rows: {} printed, {} predicted", printed_rows.len(), rows.len()));
    }
    for (a, b) in printed_rows.iter().zip(&rows) {
        if a != b {
            mismatches.push(format!("n=6 row: printed {:?}, predicted {:?}", a, b));
        }
    }
    let pascal = pascal_golden();
    for (n, row) in pascal_triangle(7).iter().enumerate() {
        for (k, f) in row.iter().enumerate() {
            let key = (n as u32, k as u32);
            if n >= 2 && pascal.get(&key) != Some(f) {
                mismatches.push(format!("pascal [{};{}]: printed {:?}, computed {:?}", n, k, pascal.get(&key), f));
            }
        }
    }
    Report { summary: format!("{} table cells, {} rows, Pascal rows 2..7", printed.len(), rows.len()), mismatches }
}

/// Symbolic `d² = 0` for the truncated algebra and the antispherical modules.
pub fn criterion_4() -> Report {
    let mut mismatches = Vec::new();
    for rule in [SignRule::Koszul, SignRule::RightLeibniz] {
        let c = build_truncated_algebra(6, rule);
        if !c.basis.values().flatten().any(|m| m.has_rho()) || !c.check_d_squared() {
            mismatches.push(format!("truncated algebra, {:?}", rule));
        }
    }
    for n in 0..=8 {
        if !build_tilde_c(n, true, SignRule::Koszul).check_d_squared() {
            mismatches.push(format!("antispherical n={}", n));
        }
    }
    for n in 0..=4 {
        if !build_tilde_c(n, false, SignRule::Koszul).check_d_squared() {
            mismatches.push(format!("full module n={}", n));
        }
    }
    Report { summary: "total parameter <= 6 (both sign rules), n <= 8".into(), mismatches }
}

/// Unsigned label of a printed or computed entry.
fn unsigned(s: &str) -> String {
    s.trim_start_matches('-').to_string()
}

/// Rescaled blocks of `B_m` for `m ≤ 6`: cohomology sums and the `m = 6` edge labels.
pub fn criterion_5() -> Report {
    let mut mismatches = Vec::new();
    let z: Specialization = "Z:2,2".parse().unwrap();
    let mut computed: BTreeMap<(String, String), (String, String)> = BTreeMap::new();
    for m in 0..=6 {
        let b = build_b(m, SignRule::Koszul);
        let g = gamma_transform(&b, SignRule::Koszul).unwrap();
        let mut sum = CohomologyReport::default();
        for (_, block) in block_decompose(&g).unwrap() {
            let r = rescale_block(&block).unwrap();
            sum = sum.direct_sum(&cohomology(&r, &z).unwrap());
            if m == 6 {
                let before: BTreeMap<(String, String), BiPoly> =
                    block.edges().into_iter().map(|(a, c, v)| ((a, c), v)).collect();
                for (a, c, v) in r.edges() {
                    let k = (1..=6).find(|&k| before[&(a.clone(), c.clone())] == qnum(k, Color::Y)
                        || before[&(a.clone(), c.clone())] == -qnum(k, Color::Y));
                    let k = k.map_or("?".to_string(), |k| k.to_string());
                    computed.insert((a, c), (k, unsigned(&cyclotomic_label(&v, 6))));
                }
            }
        }
        let direct = cohomology(&b, &z).unwrap();
        for d in compare(&direct, &sum) {
            mismatches.push(format!("B_{} {}", m, d));
        }
    }
    let mut printed = BTreeMap::new();
    for line in golden("b6_reduced_edges.txt").lines() {
        let f: Vec<&str> = line.split(' ').collect();
        printed.insert((f[0].to_string(), f[1].to_string()), (f[2].to_string(), f[3].to_string()));
    }
    let keys: BTreeSet<_> = printed.keys().chain(computed.keys()).cloned().collect();
    for k in keys {
        if printed.get(&k) != computed.get(&k) {
            mismatches.push(format!(
                "edge {} -> {}: printed {:?}, computed {:?}",
                k.0,
                k.1,
                printed.get(&k),
                computed.get(&k)
            ));
        }
    }
    Report { summary: format!("m = 0..6, {} edges of B_6", printed.len()), mismatches }
}

/// `p` when `n` is a prime power `p^r`, else 1, by trial division.
fn prime_power_base(n: u32) -> u32 {
    let mut m = n;
    let mut base = 0;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            if base != 0 && base != p {
                return 1;
            }
            base = p;
            m /= p;
        } else {
            p += 1;
        }
    }
    if base == 0 {
        1
    } else {
        base
    }
}

pub fn criterion_6() -> Report {
    let mut mismatches = Vec::new();
    let two = [BigInt::from(2), BigInt::from(2), BigInt::zero(), BigInt::zero()];
    for n in 2..=50 {
        for c in [Color::X, Color::Y] {
            let prod: BiPoly = divisors(n).into_iter().filter(|&d| d >= 2).map(|d| cyclotomic(d, c)).product();
            if prod != qnum(n, c) {
                mismatches.push(format!("factorization of [{}]_{:?}", n, c));
            }
            if cyclotomic(n, c).eval_int(&two) != BigInt::from(prime_power_base(n)) {
                mismatches.push(format!("phi_{} at (2,2), color {:?}", n, c));
            }
        }
    }
    for n in 2..=30u32 {
        for k in 0..=n as i64 {
            for d in divisors(n).into_iter().filter(|&d| d >= 2) {
                let expected = k % d as i64 != 0;
                if cyclotomic_divides_binomial(d, n, k).unwrap() != expected {
                    mismatches.push(format!("divisibility phi_{} | [{};{}]", d, n, k));
                }
            }
        }
    }
    for n in 3..=20u32 {
        for k in 2..n {
            if n % k == 0 {
                continue;
            }
            match cyclotomic_bezout(k, n) {
                Ok((a, b)) => {
                    let s = &(&a * &cyclotomic(k, Color::X)) + &(&b * &cyclotomic(n, Color::X));
                    if !s.is_one() {
                        mismatches.push(format!("Bezout witness for ({}, {}) is wrong", k, n));
                    }
                }
                Err(e) => mismatches.push(format!("Bezout ({}, {}): {}", k, n, e)),
            }
        }
    }
    for n in 1..=20 {
        for m in n..=20 {
            for c in [Color::X, Color::Y] {
                if !verify_product_identity(n, m, c) {
                    mismatches.push(format!("product identity ({}, {}, {:?})", n, m, c));
                }
            }
        }
    }
    for n in 0..=30u32 {
        for k in 0..=n as i64 {
            if qbinomial(n, k, Color::Y).unwrap() != qbinomial(n, n as i64 - k, Color::Y).unwrap() {
                mismatches.push(format!("binomial symmetry ({}, {})", n, k));
            }
        }
    }
    Report { summary: "n <= 50 factorization, n <= 30 divisibility, n <= 20 Bezout and products".into(), mismatches }
}

pub fn char0_golden() -> BTreeMap<(u32, i64), String> {
    csv_rows(&golden("char0_table.csv"))
        .into_iter()
        .map(|r| ((r[0].parse().unwrap(), r[1].parse().unwrap()), r[2].clone()))
        .collect()
}

pub fn criterion_7() -> Report {
    let mut mismatches = Vec::new();
    let printed = char0_golden();
    for start in [Letter::S, Letter::T] {
        let mut ours = BTreeMap::new();
        for n in 0..=8u32 {
            for (j, c) in char0_row(n, start, 20).unwrap() {
                ours.insert((n, j), c.to_string());
            }
        }
        let keys: BTreeSet<_> = printed.keys().filter(|k| k.0 <= 8).chain(ours.keys()).collect();
        for k in keys {
            if printed.get(k) != ours.get(k) {
                mismatches.push(format!("start {} n={} j={}: printed {:?}, computed {:?}", start, k.0, k.1, printed.get(k), ours.get(k)));
            }
        }
        for n in 0..=8u32 {
            let c = build_char0_complex(n, start, 2, 2, Clearing::Lcm).unwrap();
            for ((j, e), d) in char0_cohomology(&c, 20).unwrap() {
                if d > 0 && (j - n as i64) % 2 != 0 {
                    mismatches.push(format!("parity: start {} n={} H^{} internal {}", start, n, j, e));
                }
            }
        }
    }
    let generic = Realization::generic();
    for len in (1..=15).step_by(2) {
        for first in [Letter::S, Letter::T] {
            if root_of_reflection(first, len, &generic).unwrap() != root_by_action(first, len, &generic) {
                mismatches.push(format!("root of {}-reflection of length {}", first, len));
            }
        }
    }
    Report { summary: "n <= 8, both starting letters, cutoff 20; roots of length <= 15".into(), mismatches }
}

/// Reflexivity, antisymmetry and transitivity of the order on all shrubberies of each length.
pub fn order_axioms(max_len: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for len in 0..=max_len {
        let all: Vec<Shrubbery> = enumerate(len, Filter::default());
        let n = all.len();
        let words = (n + 63) / 64;
        let mut up = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in 0..n {
                if order_leq(&all[i], &all[j]).unwrap() {
                    up[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let has = |i: usize, j: usize| up[i][j / 64] >> (j % 64) & 1 == 1;
        for i in 0..n {
            if !has(i, i) {
                bad.push(format!("not reflexive at {}", all[i]));
            }
            for j in 0..n {
                if !has(i, j) {
                    continue;
                }
                if i != j && has(j, i) {
                    bad.push(format!("not antisymmetric: {} and {}", all[i], all[j]));
                }
                if (0..words).any(|w| up[j][w] & !up[i][w] != 0) {
                    bad.push(format!("not transitive through {} <= {}", all[i], all[j]));
                }
            }
        }
    }
    bad
}

pub fn criterion_8() -> Report {
    let mut mismatches: Vec<String> = shrub_checks(9, 4, 11)
        .unwrap()
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(line, _)| line)
        .collect();
    mismatches.extend(order_axioms(7));
    Report { summary: "oracle <= 9, Euler n <= 4, E/F <= 11, order axioms <= 7".into(), mismatches }
}

/// Mismatches the acceptance run accepts because they are discrepancies in the printed
/// material, each confirmed by an independent computation.
pub fn documented(criterion: usize) -> Vec<String> {
    match criterion {
        1 => criterion_1_documented(),
        3 => [(7, 7), (8, 9), (9, 11), (10, 13), (11, 15), (12, 17)]
            .iter()
            .map(|(n, j)| format!("table n={} j={}: printed Some(\"4\"), predicted Some(\"2|4\")", n, j))
            .collect(),
        5 => vec![
            "edge g3+g2-g1 -> g3-g2-g1: printed Some((\"2\", \"phi2\")), computed Some((\"3\", \"phi3\"))".into(),
            "edge g3-g2+g1 -> g3-g2-g1: printed Some((\"3\", \"phi3\")), computed Some((\"2\", \"phi2\"))".into(),
            "edge g4+g2- -> g4-g2-: printed Some((\"2\", \"phi2\")), computed Some((\"4\", \"phi4\"))".into(),
            "edge g4-g2+ -> g4-g2-: printed Some((\"4\", \"phi4\")), computed Some((\"2\", \"phi2\"))".into(),
        ],
        _ => Vec::new(),
    }
}

fn criterion_1_documented() -> Vec<String> {
    let lines = [
        "n=6 Z(2,2) degree -10: predicted Z/2, computed 0",
        "n=6 Z(2,2) degree -8: predicted Z/15, computed Z/30",
        "n=6 F2(2,2) degree -11: predicted Z, computed 0",
        "n=6 F2(2,2) degree -10: predicted Z^2, computed Z",
        "n=6 F2(2,2) degree -9: predicted Z, computed Z^2",
        "n=6 F2(2,2) degree -8: predicted Z, computed Z^2",
        "n=7 Z(2,2) degree -11: predicted Z/2, computed 0",
        "n=7 Z(2,2) degree -10: predicted Z/2+Z/2, computed Z/2",
        "n=7 Z(2,2) degree -9: predicted Z/30, computed Z/2+Z/30",
        "n=7 Z(2,2) degree -8: predicted Z/15, computed Z/30",
        "n=7 F2(2,2) degree -12: predicted Z, computed 0",
        "n=7 F2(2,2) degree -11: predicted Z^3, computed Z",
        "n=7 F2(2,2) degree -9: predicted Z, computed Z^3",
        "n=7 F2(2,2) degree -8: predicted Z^2, computed Z^3",
        "n=8 Z(2,2) degree -12: predicted Z/2+Z/14, computed Z/14",
        "n=8 Z(2,2) degree -11: predicted Z/2+Z/2, computed Z/2",
        "n=8 Z(2,2) degree -9: predicted Z/30, computed Z/2+Z/30",
        "n=8 Z(2,2) degree -8: predicted Z/30, computed Z/2+Z/30",
        "n=8 F2(2,2) degree -13: predicted Z^2, computed Z",
        "n=8 F2(2,2) degree -12: predicted Z^4, computed Z^2",
        "n=8 F2(2,2) degree -11: predicted Z^4, computed Z^3",
        "n=8 F2(2,2) degree -10: predicted Z^3, computed Z^4",
        "n=8 F2(2,2) degree -9: predicted Z^2, computed Z^4",
        "n=8 F2(2,2) degree -8: predicted Z^3, computed Z^4",
        "n=8 Z(3,3) degree -14: predicted Z/141, computed Z/47",
        "n=8 Z(3,3) degree -12: predicted Z/2639, computed Z/7917",
    ];
    lines.iter().map(|s| s.to_string()).collect()
}
