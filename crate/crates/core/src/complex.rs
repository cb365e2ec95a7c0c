//! Bounded cochain complexes of finite free modules with sparse polynomial differentials.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde_json::{json, Value};

use crate::ring::{BiPoly, Var};

/// Sparse matrix over ℤ[x, y, a_s, a_t]; entry `(row, col)` maps basis vector `col`
/// of the source to basis vector `row` of the target.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), BiPoly>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn get(&self, r: usize, c: usize) -> BiPoly {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BiPoly) {
        assert!(r < self.rows && c < self.cols, "entry out of bounds");
        let e = self.entries.entry((r, c)).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: BiPoly) {
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self * rhs`, i.e. first apply `rhs`, then `self`.
    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BiPoly)>> = BTreeMap::new();
        for ((r, c), v) in &rhs.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for ((r, k), a) in &self.entries {
            if let Some(list) = by_row.get(k) {
                for (c, b) in list {
                    out.add_to(*r, *c, &(a * *b));
                }
            }
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&BiPoly) -> BiPoly) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            out.set(*r, *c, f(v));
        }
        out
    }
}

/// Cochain complex: per-degree ordered basis labels and differentials `d^k : C^k → C^{k+1}`.
/// Degrees with empty basis are simply absent.
#[derive(Clone, Debug)]
pub struct DgComplex<L> {
    pub basis: BTreeMap<i64, Vec<L>>,
    pub diff: BTreeMap<i64, SparseMatrix>,
}

impl<L> Default for DgComplex<L> {
    fn default() -> Self {
        DgComplex { basis: BTreeMap::new(), diff: BTreeMap::new() }
    }
}

impl<L: Clone + Ord> DgComplex<L> {
    /// Assemble a complex from labels with degrees and a list of `(source, target, coefficient)`.
    pub fn from_entries(
        cells: impl IntoIterator<Item = (i64, L)>,
        entries: impl IntoIterator<Item = (L, L, BiPoly)>,
    ) -> Self {
        let mut basis: BTreeMap<i64, Vec<L>> = BTreeMap::new();
        for (d, l) in cells {
            basis.entry(d).or_default().push(l);
        }
        for v in basis.values_mut() {
            v.sort();
            v.dedup();
        }
        let mut c = DgComplex { basis, diff: BTreeMap::new() };
        c.reset_diff();
        let index = c.index();
        for (src, tgt, v) in entries {
            let (ds, i) = index[&src];
            let (dt, j) = index[&tgt];
            assert_eq!(dt, ds + 1, "differential must raise degree by one");
            c.diff.get_mut(&ds).unwrap().add_to(j, i, &v);
        }
        c
    }

    fn reset_diff(&mut self) {
        self.diff.clear();
        for (&d, b) in &self.basis {
            if let Some(t) = self.basis.get(&(d + 1)) {
                self.diff.insert(d, SparseMatrix::new(t.len(), b.len()));
            }
        }
    }

    /// Degree and position of each label.
    pub fn index(&self) -> BTreeMap<L, (i64, usize)> {
        let mut out = BTreeMap::new();
        for (&d, b) in &self.basis {
            for (i, l) in b.iter().enumerate() {
                out.insert(l.clone(), (d, i));
            }
        }
        out
    }

    /// Subcomplex (or quotient, as a graded module) spanned by the labels satisfying `keep`,
    /// with the differential entries between kept labels.
    pub fn restrict(&self, keep: impl Fn(&L) -> bool) -> DgComplex<L> {
        let mut out = DgComplex::default();
        let mut maps: BTreeMap<i64, Vec<Option<usize>>> = BTreeMap::new();
        for (&d, b) in &self.basis {
            let mut kept = Vec::new();
            let mut map = Vec::new();
            for l in b {
                if keep(l) {
                    map.push(Some(kept.len()));
                    kept.push(l.clone());
                } else {
                    map.push(None);
                }
            }
            maps.insert(d, map);
            if !kept.is_empty() {
                out.basis.insert(d, kept);
            }
        }
        out.reset_diff();
        for (&d, m) in &self.diff {
            if let Some(target) = out.diff.get_mut(&d) {
                for ((r, c), v) in &m.entries {
                    if let (Some(r2), Some(c2)) = (maps[&(d + 1)][*r], maps[&d][*c]) {
                        target.set(r2, c2, v.clone());
                    }
                }
            }
        }
        out
    }
}

impl<L> DgComplex<L> {
    pub fn rank(&self, d: i64) -> usize {
        self.basis.get(&d).map_or(0, Vec::len)
    }

    pub fn total_rank(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_rank() == 0
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.basis.keys().next()?, *self.basis.keys().next_back()?))
    }

    /// Differential out of degree `d`, or a zero matrix of the right shape.
    pub fn diff_at(&self, d: i64) -> SparseMatrix {
        self.diff
            .get(&d)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::new(self.rank(d + 1), self.rank(d)))
    }

    pub fn num_edges(&self) -> usize {
        self.diff.values().map(|m| m.entries.len()).sum()
    }

    /// Euler characteristic `Σ (-1)^d rank C^d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .map(|(d, b)| if d.rem_euclid(2) == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }

    /// True when every composite `d^{k+1} d^k` vanishes identically.
    pub fn check_d_squared(&self) -> bool {
        self.diff.iter().all(|(&d, m)| match self.diff.get(&(d + 1)) {
            Some(next) => next.compose(m).is_zero(),
            None => true,
        })
    }

    /// Set the listed variables to zero in every differential entry.
    pub fn kill_vars(&mut self, vars: &[Var]) {
        for m in self.diff.values_mut() {
            *m = m.map_entries(|p| {
                let mut q = p.clone();
                for v in vars {
                    q = q.substitute(*v, &BiPoly::zero());
                }
                q
            });
        }
    }

    pub fn shifted(&self, by: i64) -> DgComplex<L>
    where
        L: Clone,
    {
        DgComplex {
            basis: self.basis.iter().map(|(d, b)| (d + by, b.clone())).collect(),
            diff: self.diff.iter().map(|(d, m)| (d + by, m.clone())).collect(),
        }
    }

    pub fn map_labels<M>(&self, f: impl Fn(&L) -> M) -> DgComplex<M> {
        DgComplex {
            basis: self
                .basis
                .iter()
                .map(|(d, b)| (*d, b.iter().map(&f).collect()))
                .collect(),
            diff: self.diff.clone(),
        }
    }

    /// Direct sum; bases are concatenated degree by degree in the given order.
    pub fn direct_sum<M: Clone>(parts: &[DgComplex<M>]) -> DgComplex<M> {
        let mut out: DgComplex<M> = DgComplex::default();
        let mut offsets: Vec<BTreeMap<i64, usize>> = Vec::new();
        for p in parts {
            let mut off = BTreeMap::new();
            for (&d, b) in &p.basis {
                let v = out.basis.entry(d).or_default();
                off.insert(d, v.len());
                v.extend(b.iter().cloned());
            }
            offsets.push(off);
        }
        for (&d, b) in &out.basis {
            if let Some(t) = out.basis.get(&(d + 1)) {
                out.diff.insert(d, SparseMatrix::new(t.len(), b.len()));
            }
        }
        for (p, off) in parts.iter().zip(&offsets) {
            for (&d, m) in &p.diff {
                let target = out.diff.get_mut(&d).unwrap();
                for ((r, c), v) in &m.entries {
                    target.set(r + off[&(d + 1)], c + off[&d], v.clone());
                }
            }
        }
        out
    }
}

impl<L: Display> DgComplex<L> {
    /// Graph description: one node per basis element, one edge per nonzero entry.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n  rankdir=LR;\n", name);
        let id = |d: i64, i: usize| format!("n{}_{}", if d < 0 { format!("m{}", -d) } else { d.to_string() }, i);
        for (&d, b) in &self.basis {
            for (i, l) in b.iter().enumerate() {
                out.push_str(&format!("  {} [label=\"{}\"];\n", id(d, i), l));
            }
        }
        for (&d, m) in &self.diff {
            for ((r, c), v) in &m.entries {
                out.push_str(&format!(
                    "  {} -> {} [label=\"{}\"];\n",
                    id(d, *c),
                    id(d + 1, *r),
                    v
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Edge list `(source label, target label, coefficient)` in deterministic order.
    pub fn edges(&self) -> Vec<(String, String, BiPoly)> {
        let mut out = Vec::new();
        for (&d, m) in &self.diff {
            for ((r, c), v) in &m.entries {
                out.push((
                    self.basis[&d][*c].to_string(),
                    self.basis[&(d + 1)][*r].to_string(),
                    v.clone(),
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let range = self.degree_range();
        json!({
            "degrees": range.map(|(a, b)| vec![a, b]).unwrap_or_default(),
            "basis": self.basis.iter().map(|(d, b)| {
                (d.to_string(), b.iter().map(|l| l.to_string()).collect::<Vec<_>>())
            }).collect::<BTreeMap<_, _>>(),
            "diff": self.diff.iter().filter(|(_, m)| !m.is_zero()).map(|(d, m)| json!({
                "deg": d,
                "entries": m.entries.iter().map(|((r, c), v)| json!([r, c, v.to_string()])).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}
