//! Reductions of the antispherical pieces `B_m`.
//!
//! The γ-basis replaces each `β_k` (k ≥ 2) by the pair `γ_k^+ = β_k` and
//! `γ_k^- = Σ_i ([k;i]/[k]) β_i β_{k-i}`, with `d γ_k^+ = [k] γ_k^-`. The change of basis
//! has rational-function coefficients; every identity involving it is certified by exact
//! evaluation on an integer grid larger than the relevant degree bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::{DgComplex, SparseMatrix};
use crate::dg::{build_b, Combination, Monomial, SignRule};
use crate::error::{Error, Result};
use crate::predict::{predicted_cohomology_with, WeightRule};
use crate::qnum::{phi, qbinomial, qnum, Color};
use crate::ring::{BiPoly, Frac, Var};

/// Cancel the unit entry `(row, col)` of `d^degree` (Gaussian elimination).
/// The remaining differential out of `degree` is `a − g φ⁻¹ f`; neighbouring
/// differentials lose the cancelled row or column.
pub fn gaussian_eliminate<L: Clone + Ord>(
    c: &DgComplex<L>,
    degree: i64,
    row: usize,
    col: usize,
) -> Result<DgComplex<L>> {
    let d = c.diff_at(degree);
    let pivot = d.get(row, col);
    let u = pivot
        .as_unit()
        .ok_or_else(|| Error::NotAUnit(pivot.to_string()))?;
    let mut out = DgComplex { basis: c.basis.clone(), diff: BTreeMap::new() };
    out.basis.get_mut(&degree).unwrap().remove(col);
    out.basis.get_mut(&(degree + 1)).unwrap().remove(row);
    out.basis.retain(|_, b| !b.is_empty());
    let reindex = |i: usize, gone: usize| if i > gone { i - 1 } else { i };
    for (&k, m) in &c.diff {
        let (skip_row, skip_col) = match k {
            k if k == degree - 1 => (Some(col), None),
            k if k == degree => (Some(row), Some(col)),
            k if k == degree + 1 => (None, Some(row)),
            _ => (None, None),
        };
        let rows = m.rows - skip_row.is_some() as usize;
        let cols = m.cols - skip_col.is_some() as usize;
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut nm = SparseMatrix::new(rows, cols);
        for ((r, cc), v) in &m.entries {
            if Some(*r) == skip_row || Some(*cc) == skip_col {
                continue;
            }
            let r2 = skip_row.map_or(*r, |s| reindex(*r, s));
            let c2 = skip_col.map_or(*cc, |s| reindex(*cc, s));
            nm.add_to(r2, c2, v);
        }
        if k == degree {
            let unit = BiPoly::constant(u);
            for ((r, _), a) in m.entries.iter().filter(|((_, cc), _)| *cc == col) {
                if *r == row {
                    continue;
                }
                for ((_, j), b) in m.entries.range((row, 0)..(row + 1, 0)) {
                    if *j == col {
                        continue;
                    }
                    let corr = &(a * &unit) * b;
                    nm.add_to(reindex(*r, row), reindex(*j, col), &-corr);
                }
            }
        }
        out.diff.insert(k, nm);
    }
    Ok(out)
}

/// Cancel unit entries until none is left.
pub fn eliminate_units<L: Clone + Ord>(c: &DgComplex<L>) -> DgComplex<L> {
    let mut cur = c.clone();
    loop {
        let found = cur.diff.iter().find_map(|(&k, m)| {
            m.entries
                .iter()
                .find(|(_, v)| v.as_unit().is_some())
                .map(|((r, cc), _)| (k, *r, *cc))
        });
        match found {
            Some((k, r, cc)) => cur = gaussian_eliminate(&cur, k, r, cc).expect("unit pivot"),
            None => return cur,
        }
    }
}

/// Koszul complex on `gens`, with top degree `top`; basis labels are subset bitmasks.
pub fn koszul_cube(gens: &[BiPoly], top: i64) -> DgComplex<u32> {
    let r = gens.len();
    let bottom = top - r as i64;
    let cells = (0u32..1 << r).map(|s| (bottom + s.count_ones() as i64, s));
    let mut entries = Vec::new();
    for s in 0u32..1 << r {
        for (i, g) in gens.iter().enumerate() {
            if s & (1 << i) != 0 {
                continue;
            }
            let below = (s & ((1 << i) - 1)).count_ones();
            let coef = if below % 2 == 0 { g.clone() } else { -g };
            entries.push((s, s | (1 << i), coef));
        }
    }
    DgComplex::from_entries(cells, entries)
}

/// A list of Koszul cubes, each given by its top degree and cyclotomic indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeModel {
    pub cubes: Vec<(i64, Vec<u32>)>,
}

impl CubeModel {
    /// Per-degree ranks of the whole model.
    pub fn complex(&self) -> DgComplex<(usize, u32)> {
        let parts: Vec<DgComplex<(usize, u32)>> = self
            .cubes
            .iter()
            .enumerate()
            .map(|(i, (top, gens))| {
                let g: Vec<BiPoly> = gens.iter().map(|&d| phi(d)).collect();
                koszul_cube(&g, *top).map_labels(|s| (i, *s))
            })
            .collect();
        DgComplex::<(usize, u32)>::direct_sum(&parts)
    }
}

/// One cube per predicted piece, its top degree where the piece's class sits.
pub fn cube_model_with(n: u32, rule: WeightRule) -> CubeModel {
    CubeModel {
        cubes: predicted_cohomology_with(n, rule)
            .summands
            .into_iter()
            .map(|s| (s.degree(), s.generators))
            .collect(),
    }
}

pub fn cube_model(n: u32) -> CubeModel {
    cube_model_with(n, WeightRule::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GammaFactor {
    Plus(u32),
    Minus(u32),
    One,
}

impl GammaFactor {
    pub fn degree(self) -> i64 {
        match self {
            GammaFactor::Plus(k) => 1 - 2 * k as i64,
            GammaFactor::Minus(k) => 2 - 2 * k as i64,
            GammaFactor::One => -1,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            GammaFactor::Plus(k) | GammaFactor::Minus(k) => k,
            GammaFactor::One => 1,
        }
    }

    fn is_odd(self) -> bool {
        !matches!(self, GammaFactor::Minus(_))
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaFactor::Plus(k) => write!(f, "g{}+", k),
            GammaFactor::Minus(k) => write!(f, "g{}-", k),
            GammaFactor::One => write!(f, "g1"),
        }
    }
}

/// Product of γ-variables; a trailing `γ_1` may only appear last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GammaMonomial(pub Vec<GammaFactor>);

impl GammaMonomial {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|f| f.degree()).sum()
    }

    pub fn block_key(&self) -> BlockKey {
        let tail = self.0.last() == Some(&GammaFactor::One);
        let parts = self
            .0
            .iter()
            .filter(|f| **f != GammaFactor::One)
            .map(|f| f.index())
            .collect();
        BlockKey { parts, tail }
    }

    /// Leading β-composition: `γ_k^+ ↦ (k)`, `γ_k^- ↦ (1, k-1)`, `γ_1 ↦ (1)`.
    pub fn lead(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for f in &self.0 {
            match *f {
                GammaFactor::Plus(k) => out.push(k),
                GammaFactor::Minus(k) => out.extend([1, k - 1]),
                GammaFactor::One => out.push(1),
            }
        }
        out
    }
}

impl fmt::Display for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

/// Composition with parts at least 2, plus whether a trailing `γ_1` is present.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockKey {
    pub parts: Vec<u32>,
    pub tail: bool,
}

impl fmt::Display for BlockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", p.join(","))?;
        if self.tail {
            f.write_str("g1")?;
        }
        Ok(())
    }
}

/// Compositions of `m` into parts at least 2 (the empty composition for `m = 0`).
pub fn compositions_min2(m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 2..=m {
        for rest in compositions_min2(m - first) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// All sign choices over a composition.
fn signed(parts: &[u32], tail: bool) -> Vec<GammaMonomial> {
    let r = parts.len();
    (0u32..1 << r)
        .map(|mask| {
            let mut v: Vec<GammaFactor> = parts
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    if mask & (1 << (r - 1 - i)) == 0 {
                        GammaFactor::Plus(k)
                    } else {
                        GammaFactor::Minus(k)
                    }
                })
                .collect();
            if tail {
                v.push(GammaFactor::One);
            }
            GammaMonomial(v)
        })
        .collect()
}

/// The γ-basis of `B_m`.
pub fn gamma_basis(m: u32) -> Vec<GammaMonomial> {
    let mut out = Vec::new();
    for c in compositions_min2(m) {
        out.extend(signed(&c, false));
    }
    if m >= 1 {
        for c in compositions_min2(m - 1) {
            out.extend(signed(&c, true));
        }
    }
    out.sort();
    out
}

/// Expansion in the β-basis as `numerator / denominator`, the denominator being the product
/// of `[k]` over the minus factors.
pub fn expand(g: &GammaMonomial) -> (BiPoly, Combination) {
    let mut den = BiPoly::one();
    let mut terms: Vec<(BiPoly, Vec<u32>)> = vec![(BiPoly::one(), Vec::new())];
    for f in &g.0 {
        let options: Vec<(BiPoly, Vec<u32>)> = match *f {
            GammaFactor::Plus(k) => vec![(BiPoly::one(), vec![k])],
            GammaFactor::One => vec![(BiPoly::one(), vec![1])],
            GammaFactor::Minus(k) => {
                den = &den * &qnum(k, Color::Y);
                (1..k)
                    .map(|i| (qbinomial(k, i as i64, Color::Y).unwrap(), vec![i, k - i]))
                    .collect()
            }
        };
        let mut next = Vec::new();
        for (c, w) in &terms {
            for (c2, w2) in &options {
                let mut w3 = w.clone();
                w3.extend(w2);
                next.push((c * c2, w3));
            }
        }
        terms = next;
    }
    let mut num = Combination::new();
    for (c, w) in terms {
        let e = num.entry(Monomial::betas(&w)).or_default();
        *e += &c;
    }
    num.retain(|_, v| !v.is_zero());
    (den, num)
}

/// Differential on γ-monomials: `d γ_k^+ = [k] γ_k^-`, other factors closed, graded
/// Leibniz with `γ_k^+` and `γ_1` odd and `γ_k^-` even.
pub fn gamma_differential(g: &GammaMonomial, rule: SignRule) -> Vec<(BiPoly, GammaMonomial)> {
    let mut out = Vec::new();
    for (j, f) in g.0.iter().enumerate() {
        if let GammaFactor::Plus(k) = *f {
            let odd_count = match rule {
                SignRule::Koszul => g.0[..j].iter().filter(|f| f.is_odd()).count(),
                SignRule::RightLeibniz => g.0[j + 1..].iter().filter(|f| f.is_odd()).count(),
            };
            let mut v = g.0.clone();
            v[j] = GammaFactor::Minus(k);
            let c = qnum(k, Color::Y);
            out.push((if odd_count % 2 == 0 { c } else { -c }, GammaMonomial(v)));
        }
    }
    out
}

/// `B_m` rewritten in the γ-basis, with the change of basis it was certified against.
#[derive(Clone, Debug)]
pub struct GammaComplex {
    pub m: u32,
    pub complex: DgComplex<GammaMonomial>,
    pub change: BTreeMap<GammaMonomial, (BiPoly, Combination)>,
}

/// Rewrite `B_m` in the γ-basis and certify the result (unitriangular change of basis,
/// intertwining of the differentials on a sufficiently large grid, `d² = 0`).
pub fn gamma_transform(b: &DgComplex<Monomial>, rule: SignRule) -> Result<GammaComplex> {
    let totals: BTreeSet<u32> = b.basis.values().flatten().map(Monomial::total).collect();
    if totals.len() > 1 {
        return Err(Error::Arg("complex mixes several total parameters".into()));
    }
    let m = totals.into_iter().next().unwrap_or(0);
    let basis = gamma_basis(m);
    let entries: Vec<_> = basis
        .iter()
        .flat_map(|g| {
            gamma_differential(g, rule)
                .into_iter()
                .map(move |(c, t)| (g.clone(), t, c))
        })
        .collect();
    let complex =
        DgComplex::from_entries(basis.iter().map(|g| (g.degree(), g.clone())), entries);
    let change: BTreeMap<_, _> = basis.iter().map(|g| (g.clone(), expand(g))).collect();
    let out = GammaComplex { m, complex, change };
    certify_unitriangular(&out, b)?;
    certify_intertwining(&out, b)?;
    if !out.complex.check_d_squared() {
        return Err(Error::Certificate("d^2 != 0 in the gamma basis".into()));
    }
    Ok(out)
}

fn certify_unitriangular(g: &GammaComplex, b: &DgComplex<Monomial>) -> Result<()> {
    let old: BTreeSet<Vec<u32>> = b.basis.values().flatten().map(Monomial::composition).collect();
    let leads: BTreeMap<Vec<u32>, &GammaMonomial> =
        g.change.keys().map(|k| (k.lead(), k)).collect();
    if leads.len() != g.change.len() || leads.keys().cloned().collect::<BTreeSet<_>>() != old {
        return Err(Error::Certificate("leading terms are not a bijection onto the old basis".into()));
    }
    // lead coefficient 1, and no cycles among "column j meets the lead of column j'"
    let mut edges: BTreeMap<&GammaMonomial, Vec<&GammaMonomial>> = BTreeMap::new();
    let mut indegree: BTreeMap<&GammaMonomial, usize> = g.change.keys().map(|k| (k, 0)).collect();
    for (k, (den, num)) in &g.change {
        let lead = Monomial::betas(&k.lead());
        match num.get(&lead) {
            Some(c) if c == den => {}
            _ => return Err(Error::Certificate(format!("lead coefficient of {} is not 1", k))),
        }
        for mono in num.keys() {
            if *mono == lead {
                continue;
            }
            let other = leads[&mono.composition()];
            edges.entry(k).or_default().push(other);
            *indegree.get_mut(other).unwrap() += 1;
        }
    }
    let mut queue: VecDeque<&GammaMonomial> =
        indegree.iter().filter(|(_, d)| **d == 0).map(|(k, _)| *k).collect();
    let mut seen = 0;
    while let Some(k) = queue.pop_front() {
        seen += 1;
        for t in edges.get(k).into_iter().flatten() {
            let d = indegree.get_mut(t).unwrap();
            *d -= 1;
            if *d == 0 {
                queue.push_back(t);
            }
        }
    }
    if seen != g.change.len() {
        return Err(Error::Certificate("change of basis is not triangular".into()));
    }
    Ok(())
}

/// Check `D · P = P · D_γ` column by column at every point of an integer grid whose size in
/// each variable exceeds the degree of the cleared identity in that variable.
fn certify_intertwining(g: &GammaComplex, b: &DgComplex<Monomial>) -> Result<()> {
    let bidx = b.index();
    let gidx = g.complex.index();
    let deg = |p: &BiPoly, v: Var| p.degree_in(v) as usize;
    // per-variable degree bound of the cleared identity
    let mut bound = [0usize; 2];
    for (j, (den_j, num_j)) in &g.change {
        let (dj, cj) = gidx[j];
        let dg = g.complex.diff_at(dj);
        let targets: Vec<(&GammaMonomial, BiPoly)> = dg
            .entries
            .iter()
            .filter(|((_, c), _)| *c == cj)
            .map(|((r, _), v)| (&g.complex.basis[&(dj + 1)][*r], v.clone()))
            .collect();
        for (vi, v) in [Var::X, Var::Y].into_iter().enumerate() {
            let d_max = b.diff.values().flat_map(|m| m.entries.values()).map(|p| deg(p, v)).max().unwrap_or(0);
            let num_max = num_j.values().map(|p| deg(p, v)).max().unwrap_or(0);
            let dens: usize = targets.iter().map(|(t, _)| deg(&g.change[*t].0, v)).sum();
            let lhs = d_max + num_max + dens;
            let rhs = targets
                .iter()
                .map(|(t, c)| {
                    let (den_t, num_t) = &g.change[*t];
                    deg(c, v) + num_t.values().map(|p| deg(p, v)).max().unwrap_or(0)
                        + deg(den_j, v)
                        + dens
                        - deg(den_t, v)
                })
                .max()
                .unwrap_or(0);
            bound[vi] = bound[vi].max(lhs.max(rhs));
        }
    }
    for x in 2..=2 + bound[0] as i64 {
        for y in 2..=2 + bound[1] as i64 {
            let pt = [BigInt::from(x), BigInt::from(y), BigInt::zero(), BigInt::zero()];
            let ev = |p: &BiPoly| BigRational::from_integer(p.eval_int(&pt));
            for (j, (den_j, num_j)) in &g.change {
                let (dj, cj) = gidx[j];
                let dv = ev(den_j);
                if dv.is_zero() {
                    return Err(Error::Certificate(format!("denominator vanishes at ({}, {})", x, y)));
                }
                // D · P e_j
                let mut lhs: BTreeMap<(i64, usize), BigRational> = BTreeMap::new();
                let dmat = b.diff_at(dj);
                for (mono, c) in num_j {
                    let (_, col) = bidx[mono];
                    let cv = ev(c) / &dv;
                    for ((r, cc), e) in &dmat.entries {
                        if *cc == col {
                            *lhs.entry((dj + 1, *r)).or_insert_with(BigRational::zero) += &cv * ev(e);
                        }
                    }
                }
                // P · D_γ e_j
                let mut rhs: BTreeMap<(i64, usize), BigRational> = BTreeMap::new();
                for ((r, cc), e) in &g.complex.diff_at(dj).entries {
                    if *cc != cj {
                        continue;
                    }
                    let t = &g.complex.basis[&(dj + 1)][*r];
                    let (den_t, num_t) = &g.change[t];
                    let f = ev(e) / ev(den_t);
                    for (mono, c) in num_t {
                        let (_, row) = bidx[mono];
                        *rhs.entry((dj + 1, row)).or_insert_with(BigRational::zero) += &f * ev(c);
                    }
                }
                lhs.retain(|_, v| !v.is_zero());
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    return Err(Error::Certificate(format!(
                        "differentials disagree on {} at ({}, {})",
                        j, x, y
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Split the γ-complex into its blocks, checking that no entry connects two blocks.
pub fn block_decompose(g: &GammaComplex) -> Result<Vec<(BlockKey, DgComplex<GammaMonomial>)>> {
    for (&d, m) in &g.complex.diff {
        for (r, c) in m.entries.keys() {
            let a = g.complex.basis[&d][*c].block_key();
            let b = g.complex.basis[&(d + 1)][*r].block_key();
            if a != b {
                return Err(Error::Certificate(format!("entry between blocks {} and {}", a, b)));
            }
        }
    }
    let keys: BTreeSet<BlockKey> =
        g.complex.basis.values().flatten().map(GammaMonomial::block_key).collect();
    Ok(keys
        .into_iter()
        .map(|k| {
            let block = g.complex.restrict(|l| l.block_key() == k);
            (k, block)
        })
        .collect())
}

/// Disjoint adjacent pairs `γ_d^+ γ_e^±` with `d | e`, counted greedily from the left,
/// excluding `γ_d^+ γ_d^-`; returns the count per `d`.
pub fn d_weights(g: &GammaMonomial) -> BTreeMap<u32, u32> {
    let f: Vec<GammaFactor> = g.0.iter().copied().filter(|f| *f != GammaFactor::One).collect();
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i + 1 < f.len() {
        if let GammaFactor::Plus(d) = f[i] {
            let pairs = match f[i + 1] {
                GammaFactor::Plus(e) => e % d == 0,
                GammaFactor::Minus(e) => e % d == 0 && e != d,
                GammaFactor::One => false,
            };
            if pairs {
                *out.entry(d).or_insert(0) += 1;
                i += 2;
                continue;
            }
        }
        i += 1;
    }
    out
}

/// Rescaling factor `Π [d]^{r_d} / Π φ_d^{w_d + r_d}`, with `r_d` the number of `γ_d^-`
/// factors and `w_d` the d-weight.
pub fn rescale_factor(g: &GammaMonomial) -> Frac {
    let mut r: BTreeMap<u32, u32> = BTreeMap::new();
    for f in &g.0 {
        if let GammaFactor::Minus(d) = f {
            *r.entry(*d).or_insert(0) += 1;
        }
    }
    let w = d_weights(g);
    let mut num = BiPoly::one();
    let mut den = BiPoly::one();
    let all: BTreeSet<u32> = r.keys().chain(w.keys()).copied().collect();
    for d in all {
        let rd = r.get(&d).copied().unwrap_or(0);
        let wd = w.get(&d).copied().unwrap_or(0);
        num = &num * &qnum(d, Color::Y).pow(rd);
        den = &den * &phi(d).pow(rd + wd);
    }
    Frac::new(num, den)
}

/// Rescale every basis element by its factor; the new entries must be polynomials.
pub fn rescale_block(block: &DgComplex<GammaMonomial>) -> Result<DgComplex<GammaMonomial>> {
    let mut out = block.clone();
    for (&d, m) in &block.diff {
        let mut nm = SparseMatrix::new(m.rows, m.cols);
        for ((r, c), v) in &m.entries {
            let cj = rescale_factor(&block.basis[&d][*c]);
            let ck = rescale_factor(&block.basis[&(d + 1)][*r]);
            let num = &(v * &cj.num) * &ck.den;
            let den = &cj.den * &ck.num;
            let q = num
                .exact_div(&den)
                .map_err(|_| Error::NonIntegralAfterRescale(format!("{} -> {}", block.basis[&d][*c], block.basis[&(d + 1)][*r])))?;
            nm.set(*r, *c, q);
        }
        out.diff.insert(d, nm);
    }
    Ok(out)
}

/// Label of a rescaled entry: `1`, `-1`, `phi_d`, `-phi_d`, or the polynomial itself.
pub fn cyclotomic_label(p: &BiPoly, max_index: u32) -> String {
    if let Some(u) = p.as_unit() {
        return u.to_string();
    }
    for d in 2..=max_index.max(2) {
        let f = phi(d);
        if *p == f {
            return format!("phi{}", d);
        }
        if *p == -&f {
            return format!("-phi{}", d);
        }
    }
    p.to_string()
}

/// `B_m` in the γ-basis, split into blocks and rescaled to integral entries.
pub fn reduced_blocks(m: u32, rule: SignRule) -> Result<Vec<(BlockKey, DgComplex<GammaMonomial>)>> {
    let g = gamma_transform(&build_b(m, rule), rule)?;
    block_decompose(&g)?
        .into_iter()
        .map(|(k, b)| Ok((k, rescale_block(&b)?)))
        .collect()
}

/// Edges of a rescaled block as `(source, target, label)` with cyclotomic labels.
pub fn labeled_edges(block: &DgComplex<GammaMonomial>, max_index: u32) -> Vec<(String, String, String)> {
    block
        .edges()
        .into_iter()
        .map(|(a, b, v)| (a, b, cyclotomic_label(&v, max_index)))
        .collect()
}
