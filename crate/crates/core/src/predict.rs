//! Closed-form prediction of the cohomology of the antispherical module.
//!
//! A partition is distinguished when its parts form a divisibility chain. Each such
//! partition of `k` contributes a cyclic piece `k/(φ_{λ_1}, …)` to `H_k`, shifted by
//! its weight, and the full prediction stacks shifted copies of the `H_k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::Result;
use crate::homology::{cohomology, CohomologyReport};
use crate::qnum::phi;
use crate::reduce::koszul_cube;
use crate::ring::{BiPoly, Specialization};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistinguishedPartition(pub Vec<u32>);

impl DistinguishedPartition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distinct_parts(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.0.iter().copied().collect();
        s.into_iter().collect()
    }
}

impl fmt::Display for DistinguishedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", p.join(","))
    }
}

/// Partitions of `k` whose parts divide each other, in lexicographically descending order.
/// Parts are at least 2, except for the single partition `(1)` of 1.
pub fn distinguished_partitions(k: u32) -> Vec<DistinguishedPartition> {
    if k == 1 {
        return vec![DistinguishedPartition(vec![1])];
    }
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<DistinguishedPartition>) {
        if rest == 0 {
            out.push(DistinguishedPartition(prefix.clone()));
            return;
        }
        for p in (2..=max.min(rest)).rev() {
            if prefix.last().map_or(true, |&last| last % p == 0) {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// How the shift of the piece attached to a distinguished partition is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightRule {
    /// `2·(number of parts) − (number of distinct parts)`.
    #[default]
    TwiceLengthMinusDistinct,
    /// `2·(number of parts) − 1`: the degree offset of the top monomial of the block.
    TwiceLengthMinusOne,
}

pub fn weight_with(lambda: &DistinguishedPartition, rule: WeightRule) -> i64 {
    let k = lambda.len() as i64;
    match rule {
        WeightRule::TwiceLengthMinusDistinct => 2 * k - lambda.distinct_parts().len() as i64,
        WeightRule::TwiceLengthMinusOne => 2 * k - 1,
    }
}

pub fn partition_weight(lambda: &DistinguishedPartition) -> i64 {
    weight_with(lambda, WeightRule::default())
}

/// One cyclic piece `k/(φ_{g_1}, …, φ_{g_r})[shift]`; `M[j]` puts a degree-0 class in degree `-j`.
/// No generators means a free piece.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub shift: i64,
    /// Cyclotomic indices, increasing and distinct.
    pub generators: Vec<u32>,
    /// `(k, s)` when the piece comes from `H_k[s]`.
    pub origin: Option<(u32, i64)>,
}

impl Summand {
    /// Degree of the class.
    pub fn degree(&self) -> i64 {
        -self.shift
    }

    pub fn ideal(&self) -> Vec<BiPoly> {
        self.generators.iter().map(|&d| phi(d)).collect()
    }

    /// Table text: `K` for free pieces, else comma-joined indices.
    pub fn cell(&self) -> String {
        if self.generators.is_empty() {
            "K".into()
        } else {
            let g: Vec<String> = self.generators.iter().map(u32::to_string).collect();
            g.join(",")
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModulePresentation {
    pub summands: Vec<Summand>,
}

impl ModulePresentation {
    pub fn shifted(&self, by: i64) -> ModulePresentation {
        ModulePresentation {
            summands: self
                .summands
                .iter()
                .map(|s| Summand { shift: s.shift + by, ..s.clone() })
                .collect(),
        }
    }

    /// Pieces grouped by the degree of their class.
    pub fn by_degree(&self) -> BTreeMap<i64, Vec<&Summand>> {
        let mut out: BTreeMap<i64, Vec<&Summand>> = BTreeMap::new();
        for s in &self.summands {
            out.entry(s.degree()).or_default().push(s);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .summands
            .iter()
            .map(|s| json!({
                "shift": s.shift,
                "generators": s.generators,
                "ideal": s.ideal().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>())
    }
}

/// `H_k`, one piece per distinguished partition of `k` (and `H_1` free).
pub fn h_module_with(k: u32, rule: WeightRule) -> ModulePresentation {
    let summands = distinguished_partitions(k)
        .into_iter()
        .map(|lambda| {
            let generators = if k == 1 { Vec::new() } else { lambda.distinct_parts() };
            Summand { shift: 1 - weight_with(&lambda, rule), generators, origin: None }
        })
        .collect();
    ModulePresentation { summands }
}

pub fn h_module(k: u32) -> ModulePresentation {
    h_module_with(k, WeightRule::default())
}

/// The values of `i` in `⊕_i H_{⌊i/2⌋}[i−2]`: `2..=2n` for `n ≥ 2`, `2..=3` for `n = 1`
/// and `2` alone for `n = 0`.
pub fn stack_indices(n: u32) -> std::ops::RangeInclusive<u32> {
    match n {
        0 => 2..=2,
        1 => 2..=3,
        _ => 2..=2 * n,
    }
}

/// Predicted cohomology of the antispherical module for `n`, in unshifted degrees.
pub fn predicted_cohomology_with(n: u32, rule: WeightRule) -> ModulePresentation {
    let mut summands = Vec::new();
    for i in stack_indices(n) {
        let k = i / 2;
        let s = i as i64 - 2;
        for mut piece in h_module_with(k, rule).shifted(s).summands {
            piece.origin = Some((k, s));
            summands.push(piece);
        }
    }
    ModulePresentation { summands }
}

pub fn predicted_cohomology(n: u32) -> ModulePresentation {
    predicted_cohomology_with(n, WeightRule::default())
}

/// Ext-degree of an unshifted cohomological degree.
pub fn ext_degree(n: u32, degree: i64) -> i64 {
    degree + 2 * n as i64
}

/// Unshifted cohomological degree of an Ext-degree.
pub fn degree_of_ext(n: u32, j: i64) -> i64 {
    j - 2 * n as i64
}

/// Row of the Ext table: for each Ext-degree, the stacked cells in generation order.
pub fn ext_row(p: &ModulePresentation, n: u32) -> BTreeMap<i64, Vec<String>> {
    let mut out: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for s in &p.summands {
        out.entry(ext_degree(n, s.degree())).or_default().push(s.cell());
    }
    out
}

/// CSV with one line per (n, j) cell: `n,j,cell|cell|…`.
pub fn ext_table_csv(n_max: u32) -> String {
    let mut out = String::from("n,j,cells\n");
    for n in 0..=n_max {
        for (j, cells) in ext_row(&predicted_cohomology(n), n) {
            out.push_str(&format!("{},{},\"{}\"\n", n, j, cells.join("|")));
        }
    }
    out
}

/// Cohomology of the Koszul-cube model of a presentation after specialization.
pub fn specialize_prediction(p: &ModulePresentation, s: &Specialization) -> Result<CohomologyReport> {
    let mut report = CohomologyReport::default();
    for piece in &p.summands {
        let cube = koszul_cube(&piece.ideal(), piece.degree());
        report = report.direct_sum(&cohomology(&cube, s)?);
    }
    Ok(report)
}

pub use crate::homology::compare;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::AbGroup;

    fn dp(v: &[u32]) -> DistinguishedPartition {
        DistinguishedPartition(v.to_vec())
    }

    #[test]
    fn partitions_and_weights() {
        assert_eq!(distinguished_partitions(4), vec![dp(&[4]), dp(&[2, 2])]);
        assert_eq!(
            distinguished_partitions(6),
            vec![dp(&[6]), dp(&[4, 2]), dp(&[3, 3]), dp(&[2, 2, 2])]
        );
        assert_eq!(distinguished_partitions(1), vec![dp(&[1])]);
        assert_eq!(partition_weight(&dp(&[5, 4, 4, 2, 1])), 6);
        assert_eq!(partition_weight(&dp(&[7])), 1);
        assert_eq!(partition_weight(&dp(&[2, 2, 2])), 5);
    }

    #[test]
    fn h_modules() {
        let cells = |k: u32| -> Vec<(i64, String)> {
            h_module(k).summands.iter().map(|s| (s.shift, s.cell())).collect()
        };
        assert_eq!(cells(1), vec![(0, "K".to_string())]);
        assert_eq!(cells(4), vec![(0, "4".to_string()), (-2, "2".to_string())]);
    }

    #[test]
    fn small_predictions() {
        let row = ext_row(&predicted_cohomology(2), 2);
        assert_eq!(row[&2], vec!["2"]);
        assert_eq!(row[&3], vec!["K"]);
        assert_eq!(row[&4], vec!["K"]);
        let row0 = ext_row(&predicted_cohomology(0), 0);
        assert_eq!(row0.into_iter().collect::<Vec<_>>(), vec![(0, vec!["K".to_string()])]);
    }

    #[test]
    fn specialized_pieces() {
        let z = Specialization::integers(2, 2);
        let one = |gens: Vec<u32>| ModulePresentation {
            summands: vec![Summand { shift: 0, generators: gens, origin: None }],
        };
        let r = specialize_prediction(&one(vec![2]), &z).unwrap();
        assert_eq!(r.nonzero().into_iter().collect::<Vec<_>>(), vec![(0, AbGroup::cyclic(2))]);
        let q = specialize_prediction(&one(vec![6]), &Specialization::rationals(2, 2)).unwrap();
        assert!(q.nonzero().is_empty());
        let r = specialize_prediction(&one(vec![2, 4]), &z).unwrap();
        assert_eq!(
            r.nonzero().into_iter().collect::<Vec<_>>(),
            vec![(-1, AbGroup::cyclic(2)), (0, AbGroup::cyclic(2))]
        );
    }
}
