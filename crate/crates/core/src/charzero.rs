//! Characteristic zero: minimal complexes of Hom(1, F_w) and the resulting Ext tables.
//!
//! The complex for the reduced word of length `n` starting with a given letter has, in
//! cohomological degree `k`, one copy of `R(−n+2k)` per reduced word of length `n−k` (two in the
//! middle degrees, one at each end). Arrows are multiplication by a rational multiple of a root;
//! the rational factors are cleared degree by degree before computing graded cohomology.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::DgComplex;
use crate::dg::Letter;
use crate::error::{Error, Result};
use crate::homology::graded_field_cohomology;
use crate::qnum::{qnum, Color};
use crate::ring::{BiPoly, Specialization};

/// A realization, given by the values of `[2]_s` and `[2]_t`; the simple roots stay independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub two_s: BiPoly,
    pub two_t: BiPoly,
}

impl Realization {
    /// `[2]_s = x`, `[2]_t = y`.
    pub fn generic() -> Self {
        Realization { two_s: BiPoly::x(), two_t: BiPoly::y() }
    }

    pub fn specialized(x: i64, y: i64) -> Self {
        Realization { two_s: BiPoly::constant(x), two_t: BiPoly::constant(y) }
    }

    pub fn standard() -> Self {
        Self::specialized(2, 2)
    }

    /// `[n]` in the color of `c` (`s` ↔ `x`, `t` ↔ `y`).
    pub fn qnum(&self, n: u32, c: Letter) -> BiPoly {
        let color = if c == Letter::S { Color::X } else { Color::Y };
        qnum(n, color)
            .substitute(crate::ring::Var::X, &self.two_s)
            .substitute(crate::ring::Var::Y, &self.two_t)
    }
}

/// `c_s α_s + c_t α_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVector {
    pub s: BiPoly,
    pub t: BiPoly,
}

impl RootVector {
    pub fn simple(c: Letter) -> Self {
        match c {
            Letter::S => RootVector { s: BiPoly::one(), t: BiPoly::zero() },
            Letter::T => RootVector { s: BiPoly::zero(), t: BiPoly::one() },
        }
    }

    /// As a linear form in `a_s, a_t`.
    pub fn linear_form(&self) -> BiPoly {
        &(&self.s * &BiPoly::a_s()) + &(&self.t * &BiPoly::a_t())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*as + ({})*at", self.s, self.t)
    }
}

/// Action of a single reflection: `s(α_s) = −α_s`, `s(α_t) = α_t + [2]_s α_s`, and symmetrically.
pub fn reflect(c: Letter, v: &RootVector, r: &Realization) -> RootVector {
    match c {
        Letter::S => RootVector { s: &(&r.two_s * &v.t) - &v.s, t: v.t.clone() },
        Letter::T => RootVector { s: v.s.clone(), t: &(&r.two_t * &v.s) - &v.t },
    }
}

/// Left action of a word, rightmost letter first.
pub fn act(word: &[Letter], v: &RootVector, r: &Realization) -> RootVector {
    word.iter().rev().fold(v.clone(), |acc, &c| reflect(c, &acc, r))
}

/// Closed form of the root of the reflection with reduced word of odd length `2r+1` starting
/// with `first`: `[r+1]_s α_s + [r]_t α_t` on the `s` side, `[r]_s α_s + [r+1]_t α_t` on the `t` side.
pub fn root_of_reflection(first: Letter, len: u32, r: &Realization) -> Result<RootVector> {
    if len % 2 == 0 {
        return Err(Error::Arg(format!("reflections have odd length, got {}", len)));
    }
    let h = len / 2;
    Ok(match first {
        Letter::S => RootVector { s: r.qnum(h + 1, Letter::S), t: r.qnum(h, Letter::T) },
        Letter::T => RootVector { s: r.qnum(h, Letter::S), t: r.qnum(h + 1, Letter::T) },
    })
}

/// The same root as `w(α_x)`, where the reflection's word is `w x w⁻¹`.
pub fn root_by_action(first: Letter, len: u32, r: &Realization) -> RootVector {
    let word = crate::dg::alternating(first, len as usize);
    let h = (len / 2) as usize;
    act(&word[..h], &RootVector::simple(word[h]), r)
}

/// A reduced word, given by first letter and length; length zero is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub len: u32,
    pub first: Option<Letter>,
}

impl Word {
    pub fn new(first: Letter, len: u32) -> Self {
        Word { len, first: (len > 0).then_some(first) }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first {
            None => f.write_str("1"),
            Some(c) => write!(f, "{}{}", c, self.len),
        }
    }
}

/// `q_{w,u} = (num/den)·root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCoefficient {
    pub num: BiPoly,
    pub den: BiPoly,
    pub root: RootVector,
}

/// Coefficient relating the fully dotted idempotents of `w` and `u`, `ℓ(w) = ℓ(u) + 1`.
/// The root is that of the unique reflection below `w` and not below `u`.
pub fn q_coefficient(w: Word, u: Word, r: &Realization) -> Result<QCoefficient> {
    if w.len != u.len + 1 {
        return Err(Error::Arg(format!("lengths {} and {} do not differ by one", w.len, u.len)));
    }
    let wf = w.first.expect("w is nontrivial");
    if u.len % 2 == 0 {
        let h = u.len / 2;
        let root = root_of_reflection(wf, w.len, r)?;
        if h == 0 {
            return Ok(QCoefficient { num: BiPoly::one(), den: BiPoly::one(), root });
        }
        Ok(QCoefficient { num: r.qnum(h, wf), den: r.qnum(2 * h, wf), root })
    } else {
        let h = u.len / 2;
        let uf = u.first.expect("u is nontrivial");
        Ok(QCoefficient {
            num: r.qnum(h + 1, uf),
            den: r.qnum(2 * h + 1, uf),
            root: root_of_reflection(uf.other(), u.len, r)?,
        })
    }
}

/// Arrow `p_{w,u}`: `q_{w,u}`, with the extra sign `(−1)^{ℓ(w)+1}` when `w` and `u` start alike.
pub fn arrow(w: Word, u: Word, r: &Realization) -> Result<(i64, QCoefficient)> {
    let q = q_coefficient(w, u, r)?;
    let same = u.first.is_none() || u.first == w.first;
    let sign = if same && w.len % 2 == 0 { -1 } else { 1 };
    Ok((sign, q))
}

/// How the rational factors of each differential are cleared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Clearing {
    /// Multiply `d^k` by the lcm of its denominators.
    #[default]
    Lcm,
    /// Multiply `d^k` by the product of its distinct denominators.
    Product,
}

#[derive(Clone, Debug)]
pub struct Char0Complex {
    pub n: u32,
    pub start: Letter,
    pub complex: DgComplex<Word>,
}

impl Char0Complex {
    /// Internal degree of the generator of `R(−n+2k)`.
    pub fn generator_degree(&self, w: &Word) -> i64 {
        2 * w.len as i64 - self.n as i64
    }
}

fn constant_value(p: &BiPoly) -> Result<BigInt> {
    p.as_constant()
        .ok_or_else(|| Error::Arg(format!("quantum number {} is not specialized", p)))
}

/// The complex for the word of length `n` starting with `start`, at integer values of `[2]_s, [2]_t`.
pub fn build_char0_complex(n: u32, start: Letter, x: i64, y: i64, clearing: Clearing) -> Result<Char0Complex> {
    let r = Realization::specialized(x, y);
    let words_at = |k: u32| -> Vec<Word> {
        let len = n - k;
        if k == 0 {
            vec![Word::new(start, n)]
        } else if len == 0 {
            vec![Word { len: 0, first: None }]
        } else {
            vec![Word::new(Letter::S, len), Word::new(Letter::T, len)]
        }
    };
    let mut cells = Vec::new();
    let mut entries = Vec::new();
    for k in 0..=n {
        for w in words_at(k) {
            cells.push((k as i64, w));
        }
        if k == n {
            break;
        }
        let mut raw = Vec::new();
        let mut dens: Vec<BigInt> = Vec::new();
        for w in words_at(k) {
            for u in words_at(k + 1) {
                let (sign, q) = arrow(w, u, &r)?;
                let den = constant_value(&q.den)?;
                if den.is_zero() {
                    return Err(Error::Arg(format!("[{}] vanishes at ({}, {})", 2 * (u.len / 2), x, y)));
                }
                let num = constant_value(&q.num)? * sign;
                dens.push(den.clone());
                raw.push((w, u, BigRational::new(num, den), q.root.linear_form()));
            }
        }
        let scale = match clearing {
            Clearing::Lcm => dens.iter().fold(BigInt::one(), |a, b| a.lcm(b)),
            Clearing::Product => {
                let mut d: Vec<BigInt> = dens.iter().map(|v| v.abs()).collect();
                d.sort();
                d.dedup();
                d.iter().product()
            }
        };
        for (w, u, c, form) in raw {
            let c = c * BigRational::from_integer(scale.clone());
            if !c.is_integer() {
                return Err(Error::Arg("clearing left a fraction".into()));
            }
            entries.push((w, u, form.scale(&c.to_integer())));
        }
    }
    Ok(Char0Complex { n, start, complex: DgComplex::from_entries(cells, entries) })
}

/// Graded dimensions `(k, internal degree) ↦ dim H^k` up to `cutoff`.
pub fn char0_cohomology(c: &Char0Complex, cutoff: i64) -> Result<BTreeMap<(i64, i64), usize>> {
    graded_field_cohomology(&c.complex, |w| c.generator_degree(w), &Specialization::rationals(0, 0), cutoff)
}

/// Shape of a graded cohomology group, from its Hilbert function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtClass {
    Zero,
    /// `R(shift)`.
    Free(i64),
    /// `k(shift)`, a single class.
    Point(i64),
    /// `R/(linear form)(shift)`.
    LinearQuotient(i64),
    /// Dimensions per internal degree that match none of the above.
    Unclassified(Vec<(i64, usize)>),
}

impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtClass::Zero => Ok(()),
            ExtClass::Free(0) => f.write_str("R"),
            ExtClass::Free(m) => write!(f, "R({})", m),
            ExtClass::Point(m) => write!(f, "k({})", m),
            ExtClass::LinearQuotient(m) => write!(f, "R/(l)({})", m),
            ExtClass::Unclassified(v) => {
                let p: Vec<String> = v.iter().map(|(e, d)| format!("{}:{}", e, d)).collect();
                write!(f, "?[{}]", p.join(" "))
            }
        }
    }
}

/// Classify a Hilbert function known on internal degrees up to `cutoff`.
pub fn classify(dims: &BTreeMap<i64, usize>, cutoff: i64) -> ExtClass {
    let nz: Vec<(i64, usize)> = dims.iter().filter(|(_, d)| **d > 0).map(|(e, d)| (*e, *d)).collect();
    let Some(&(low, _)) = nz.first() else { return ExtClass::Zero };
    let expect = |f: &dyn Fn(i64) -> usize| -> bool {
        let mut want: Vec<(i64, usize)> = (low..=cutoff)
            .filter(|e| (e - low) % 2 == 0)
            .map(|e| (e, f((e - low) / 2)))
            .collect();
        want.retain(|(_, d)| *d > 0);
        want == nz
    };
    if low + 2 <= cutoff {
        if expect(&|h| if h == 0 { 1 } else { 0 }) {
            return ExtClass::Point(-low);
        }
        if expect(&|_| 1) {
            return ExtClass::LinearQuotient(-low);
        }
        if expect(&|h| h as usize + 1) {
            return ExtClass::Free(-low);
        }
    }
    ExtClass::Unclassified(nz)
}

/// Row of the Ext table: cohomological degree `j` ↦ class.
pub fn char0_row(n: u32, start: Letter, cutoff: i64) -> Result<BTreeMap<i64, ExtClass>> {
    let c = build_char0_complex(n, start, 2, 2, Clearing::Lcm)?;
    let h = char0_cohomology(&c, cutoff)?;
    let mut by_j: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
    for ((k, e), d) in h {
        by_j.entry(k).or_default().insert(e, d);
    }
    Ok(by_j
        .into_iter()
        .map(|(j, dims)| (j, classify(&dims, cutoff)))
        .filter(|(_, c)| *c != ExtClass::Zero)
        .collect())
}

/// Default internal-degree cutoff for a row: past the top generator with room for a tail.
pub fn default_cutoff(n: u32) -> i64 {
    n as i64 + 6
}

/// Ext table for lengths `0..=n_max` at the standard Cartan matrix, rows computed in parallel.
pub fn char0_ext_table(n_max: u32, start: Letter) -> Result<BTreeMap<u32, BTreeMap<i64, ExtClass>>> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| char0_row(n, start, default_cutoff(n)).map(|r| (n, r)))
        .collect()
}

pub fn char0_table_csv(t: &BTreeMap<u32, BTreeMap<i64, ExtClass>>) -> String {
    let mut out = String::from("n,j,class\n");
    for (n, row) in t {
        for (j, c) in row {
            out.push_str(&format!("{},{},{}\n", n, j, c));
        }
    }
    out
}

pub fn char0_table_json(t: &BTreeMap<u32, BTreeMap<i64, ExtClass>>) -> Value {
    json!(t
        .iter()
        .map(|(n, row)| json!({
            "n": n,
            "cells": row.iter().map(|(j, c)| json!({"j": j, "class": c.to_string()})).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}
