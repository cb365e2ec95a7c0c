//! Cohomology of specialized complexes: Smith normal form over ℤ, ranks over 𝔽_p and ℚ,
//! and internal-degree-wise ranks for complexes of free graded ℚ[a_s, a_t]-modules.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::complex::{DgComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::ring::{BiPoly, Exp, Scalar, Specialization, Target};

/// Finitely generated abelian group `ℤ^free ⊕ ⊕ ℤ/d_i` with `d_1 | d_2 | …`, all `d_i ≥ 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn free(rank: usize) -> Self {
        AbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        AbGroup::from_factors(0, [BigInt::from(order)])
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Normalizes an arbitrary list of cyclic orders (units dropped) into invariant factors.
    pub fn from_factors(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        // primary decomposition, then recombine the largest prime powers
        let mut by_prime: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                continue;
            }
            for (p, e) in factorize(&o) {
                by_prime.entry(p.clone()).or_default().push(num_traits::pow(p, e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![BigInt::one(); len];
        for powers in by_prime.values_mut() {
            powers.sort();
            let offset = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                torsion[offset + i] *= q;
            }
        }
        AbGroup { free_rank, torsion }
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        AbGroup::from_factors(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free": self.free_rank,
            "torsion": self.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

fn factorize(n: &BigInt) -> Vec<(BigInt, usize)> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}

/// Cohomology per degree. For field coefficients only `free_rank` is used.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyReport {
    pub groups: BTreeMap<i64, AbGroup>,
}

impl CohomologyReport {
    pub fn get(&self, d: i64) -> AbGroup {
        self.groups.get(&d).cloned().unwrap_or_default()
    }

    /// Nonzero groups only.
    pub fn nonzero(&self) -> BTreeMap<i64, AbGroup> {
        self.groups
            .iter()
            .filter(|(_, g)| !g.is_zero())
            .map(|(d, g)| (*d, g.clone()))
            .collect()
    }

    pub fn direct_sum(&self, other: &CohomologyReport) -> CohomologyReport {
        let mut groups = self.groups.clone();
        for (d, g) in &other.groups {
            let e = groups.entry(*d).or_default();
            *e = e.direct_sum(g);
        }
        CohomologyReport { groups }
    }

    pub fn shifted(&self, by: i64) -> CohomologyReport {
        CohomologyReport { groups: self.groups.iter().map(|(d, g)| (d + by, g.clone())).collect() }
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.groups
                .iter()
                .map(|(d, g)| (d.to_string(), g.to_json()))
                .collect(),
        )
    }
}

impl fmt::Display for CohomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, g) in &self.groups {
            writeln!(f, "H^{} = {}", d, g)?;
        }
        Ok(())
    }
}

/// Nonzero invariant factors (positive, divisibility chain) of an integer matrix.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of minimal absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot row/column cleared; enforce divisibility of the rest
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of the pivot row/column to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.1 == t {
                a.swap(t, best.0);
            } else {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Rank over 𝔽_p.
pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = mod_inverse(a[rank][c], p);
        for j in c..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in c..cols {
                    a[r][j] = (a[r][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(p as i128));
    (e.x.rem_euclid(p as i128)) as u64
}

/// Rank over ℚ.
pub fn rank_rational(m: &[Vec<BigRational>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, pr);
        for r in rank + 1..rows {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let v = &a[rank][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dense(m: &SparseMatrix, s: &Specialization) -> Result<Vec<Vec<Scalar>>> {
    let zero = match s.target {
        Target::Integers => Scalar::Int(BigInt::zero()),
        Target::ModPrime(p) => Scalar::Mod(0, p),
        Target::Rationals => Scalar::Rat(BigRational::zero()),
    };
    let mut out = vec![vec![zero; m.cols]; m.rows];
    for ((r, c), v) in &m.entries {
        out[*r][*c] = s.apply(v)?;
    }
    Ok(out)
}

fn int_matrix(m: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|v| match v {
                    Scalar::Int(i) => i.clone(),
                    _ => unreachable!("integral specialization"),
                })
                .collect()
        })
        .collect()
}

fn matrix_rank(m: &[Vec<Scalar>], s: &Specialization) -> usize {
    match s.target {
        Target::Integers => smith_normal_form(&int_matrix(m)).len(),
        Target::ModPrime(p) => {
            let a: Vec<Vec<u64>> = m
                .iter()
                .map(|r| r.iter().map(|v| if let Scalar::Mod(x, _) = v { *x } else { 0 }).collect())
                .collect();
            rank_mod_p(&a, p)
        }
        Target::Rationals => {
            let a: Vec<Vec<BigRational>> = m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| if let Scalar::Rat(x) = v { x.clone() } else { BigRational::zero() })
                        .collect()
                })
                .collect();
            rank_rational(&a)
        }
    }
}

/// Cohomology over ℤ of a complex specialized at integer values.
pub fn integral_cohomology<L>(c: &DgComplex<L>, s: &Specialization) -> Result<CohomologyReport> {
    if s.target != Target::Integers {
        return Err(Error::Arg("integral cohomology needs an integral specialization".into()));
    }
    let mut factors: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for &d in c.basis.keys() {
        let m = dense(&c.diff_at(d), s)?;
        factors.insert(d, smith_normal_form(&int_matrix(&m)));
    }
    let mut groups = BTreeMap::new();
    for (&d, b) in &c.basis {
        let out_rank = factors[&d].len();
        let incoming = factors.get(&(d - 1)).cloned().unwrap_or_default();
        let free = b.len() - out_rank - incoming.len();
        groups.insert(d, AbGroup::from_factors(free, incoming));
    }
    Ok(CohomologyReport { groups })
}

/// Dimensions of cohomology over a field (`𝔽_p` or `ℚ`), stored as free ranks.
pub fn field_cohomology<L>(c: &DgComplex<L>, s: &Specialization) -> Result<CohomologyReport> {
    if !s.is_field() {
        return Err(Error::Arg("field cohomology needs a field specialization".into()));
    }
    let mut ranks = BTreeMap::new();
    for &d in c.basis.keys() {
        ranks.insert(d, matrix_rank(&dense(&c.diff_at(d), s)?, s));
    }
    let groups = c
        .basis
        .iter()
        .map(|(&d, b)| {
            let r_in = ranks.get(&(d - 1)).copied().unwrap_or(0);
            (d, AbGroup::free(b.len() - ranks[&d] - r_in))
        })
        .collect();
    Ok(CohomologyReport { groups })
}

/// Integral or field cohomology according to the specialization's target.
pub fn cohomology<L>(c: &DgComplex<L>, s: &Specialization) -> Result<CohomologyReport> {
    if s.is_field() {
        field_cohomology(c, s)
    } else {
        integral_cohomology(c, s)
    }
}

/// Exponent vectors of the monomials `a_s^i a_t^j` spanning the internal degree `deg`
/// part of ℚ[a_s, a_t] (each variable in degree 2).
fn graded_monomials(deg: i64) -> Vec<Exp> {
    if deg < 0 || deg % 2 != 0 {
        return Vec::new();
    }
    let h = (deg / 2) as u32;
    (0..=h).map(|i| [0, 0, i, h - i]).collect()
}

/// Internal degree of a polynomial in `a_s, a_t`, or `InhomogeneousEntry`.
fn internal_degree(p: &BiPoly) -> Result<i64> {
    let mut deg = None;
    for (e, _) in p.terms() {
        let d = 2 * (e[2] + e[3]) as i64;
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 != d => return Err(Error::InhomogeneousEntry(p.to_string())),
            _ => {}
        }
    }
    Ok(deg.unwrap_or(0))
}

/// Dimensions of cohomology of a complex of free graded ℚ[a_s, a_t]-modules, per
/// (cohomological degree, internal degree). `generator_degree` gives the internal degree of
/// each basis element; `x` and `y` are substituted by the specialization's values, and
/// internal degrees up to `cutoff` are reported.
pub fn graded_field_cohomology<L>(
    c: &DgComplex<L>,
    generator_degree: impl Fn(&L) -> i64,
    s: &Specialization,
    cutoff: i64,
) -> Result<BTreeMap<(i64, i64), usize>> {
    // coefficient of each a-monomial after substituting x and y
    let a_coefficients = |p: &BiPoly| -> BTreeMap<(u32, u32), BigRational> {
        let mut out: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for (e, coef) in p.terms() {
            let mut t = BigRational::from_integer(coef.clone());
            t *= num_traits::pow(s.values[0].clone(), e[0] as usize);
            t *= num_traits::pow(s.values[1].clone(), e[1] as usize);
            *out.entry((e[2], e[3])).or_insert_with(BigRational::zero) += t;
        }
        out
    };
    let lowest = c
        .basis
        .values()
        .flatten()
        .map(&generator_degree)
        .min()
        .unwrap_or(0);
    let mut out = BTreeMap::new();
    for e in lowest..=cutoff {
        // rank of d^k restricted to internal degree e
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for (&k, b) in &c.basis {
            let src: Vec<(usize, Exp)> = b
                .iter()
                .enumerate()
                .flat_map(|(i, l)| {
                    graded_monomials(e - generator_degree(l)).into_iter().map(move |m| (i, m))
                })
                .collect();
            dims.insert(k, src.len());
            let Some(tb) = c.basis.get(&(k + 1)) else { continue };
            let tgt: Vec<(usize, Exp)> = tb
                .iter()
                .enumerate()
                .flat_map(|(i, l)| {
                    graded_monomials(e - generator_degree(l)).into_iter().map(move |m| (i, m))
                })
                .collect();
            let tidx: BTreeMap<(usize, Exp), usize> =
                tgt.iter().enumerate().map(|(i, k)| (*k, i)).collect();
            let mut mat = vec![vec![BigRational::zero(); src.len()]; tgt.len()];
            let d = c.diff_at(k);
            for ((r, col), p) in &d.entries {
                let pd = internal_degree(p)?;
                let src_deg = generator_degree(&b[*col]);
                let tgt_deg = generator_degree(&tb[*r]);
                if !p.is_zero() && src_deg != tgt_deg + pd {
                    return Err(Error::InhomogeneousEntry(p.to_string()));
                }
                let coefs = a_coefficients(p);
                for (si, (i, m)) in src.iter().enumerate() {
                    if i != col {
                        continue;
                    }
                    for ((es, et), v) in &coefs {
                        let prod = [0, 0, m[2] + es, m[3] + et];
                        if let Some(&ti) = tidx.get(&(*r, prod)) {
                            mat[ti][si] += v;
                        }
                    }
                }
            }
            ranks.insert(k, rank_rational(&mat));
        }
        for (&k, &dim) in &dims {
            let h = dim - ranks.get(&k).copied().unwrap_or(0)
                - ranks.get(&(k - 1)).copied().unwrap_or(0);
            if h > 0 {
                out.insert((k, e), h);
            }
        }
    }
    Ok(out)
}

/// Per-degree differences between two reports; empty when they agree.
pub fn compare(predicted: &CohomologyReport, computed: &CohomologyReport) -> Vec<String> {
    let degrees: std::collections::BTreeSet<i64> =
        predicted.groups.keys().chain(computed.groups.keys()).copied().collect();
    degrees
        .into_iter()
        .filter_map(|d| {
            let (a, b) = (predicted.get(d), computed.get(d));
            (a != b).then(|| format!("degree {}: predicted {}, computed {}", d, a, b))
        })
        .collect()
}

/// `dim_p H^i(C ⊗ 𝔽_p)` from an integral report by the universal coefficient theorem.
pub fn mod_p_dims_from_integral(r: &CohomologyReport, p: u64) -> BTreeMap<i64, usize> {
    let p = BigInt::from(p);
    let count = |g: &AbGroup| g.torsion.iter().filter(|t| (*t % &p).is_zero()).count();
    let mut out = BTreeMap::new();
    for (&d, g) in &r.groups {
        let next = r.get(d + 1);
        out.insert(d, g.free_rank + count(g) + count(&next));
    }
    out
}

/// Convenience for tests: an integer matrix from `i64` rows.
pub fn int_rows(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}
