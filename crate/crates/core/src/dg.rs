//! The reduced dg-algebra on generators `ρ_k`, `β_k` and its modules.
//!
//! A monomial is a word in generators; its cohomological degree is `r - 2m` for
//! `r` generators of total parameter `m`. The differential on generators has
//! two-colored binomial coefficients (`x` for the `s`-color, `y` for the `t`-color) and is
//! extended to monomials by a graded Leibniz rule.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::complex::DgComplex;
use crate::qnum::{qbinomial, Color};
use crate::ring::{BiPoly, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Rho,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub k: u32,
}

impl Generator {
    pub fn rho(k: u32) -> Self {
        Generator { kind: Kind::Rho, k }
    }

    pub fn beta(k: u32) -> Self {
        Generator { kind: Kind::Beta, k }
    }

    pub fn degree(&self) -> i64 {
        1 - 2 * self.k as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    S,
    T,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::S => Letter::T,
            Letter::T => Letter::S,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::S => "s",
            Letter::T => "t",
        })
    }
}

impl std::str::FromStr for Letter {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Letter> {
        match s {
            "s" => Ok(Letter::S),
            "t" => Ok(Letter::T),
            _ => Err(crate::error::Error::Parse(format!("unknown letter {:?}", s))),
        }
    }
}

/// A word such as `stst`; the empty string or `1` is the empty word.
pub fn parse_word(s: &str) -> crate::error::Result<Vec<Letter>> {
    if s == "1" {
        return Ok(Vec::new());
    }
    s.chars().map(|c| c.to_string().parse()).collect()
}

/// Alternating word of length `len` starting with `first`.
pub fn alternating(first: Letter, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|i| if i % 2 == 0 { first } else { first.other() })
        .collect()
}

/// Ordered word in generators of positive parameter; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<Generator>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn betas(parts: &[u32]) -> Self {
        Monomial(parts.iter().map(|&k| Generator::beta(k)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn composition(&self) -> Vec<u32> {
        self.0.iter().map(|g| g.k).collect()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|g| g.k).sum()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(Generator::degree).sum()
    }

    pub fn has_rho(&self) -> bool {
        self.0.iter().any(|g| g.kind == Kind::Rho)
    }

    /// Concatenation `m_{<j} · middle · m_{>j}`.
    fn splice(&self, j: usize, middle: &Monomial) -> Monomial {
        let mut v = self.0[..j].to_vec();
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[j + 1..]);
        Monomial(v)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.composition()
            .cmp(&other.composition())
            .then_with(|| {
                let a: Vec<Kind> = self.0.iter().map(|g| g.kind).collect();
                let b: Vec<Kind> = other.0.iter().map(|g| g.kind).collect();
                a.cmp(&b)
            })
    }
}

impl fmt::Display for Monomial {
    /// `b2*b1*b3`, `r1*b2`, or `1` for the unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|g| format!("{}{}", if g.kind == Kind::Rho { 'r' } else { 'b' }, g.k))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Graded Leibniz sign for differentiating the `j`-th of `r` generators (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignRule {
    /// `(-1)^{generators to the left}`.
    #[default]
    Koszul,
    /// `(-1)^{generators to the right}`.
    RightLeibniz,
}

impl SignRule {
    fn sign(self, j: usize, r: usize) -> i64 {
        let count = match self {
            SignRule::Koszul => j,
            SignRule::RightLeibniz => r - 1 - j,
        };
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Linear combination of monomials.
pub type Combination = BTreeMap<Monomial, BiPoly>;

fn push(out: &mut Combination, c: BiPoly, m: Monomial) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(m.clone()).or_default();
    *e += &c;
    if e.is_zero() {
        out.remove(&m);
    }
}

fn qb(n: u32, k: u32, c: Color) -> BiPoly {
    qbinomial(n, k as i64, c).expect("index in range")
}

/// Differential of a single generator.
pub fn diff_generator(g: Generator) -> Combination {
    let mut out = Combination::new();
    let k = g.k;
    assert!(k >= 1, "the unit generator has zero differential");
    let pair = |a: Generator, b: Generator| Monomial(vec![a, b]);
    match (g.kind, k) {
        (Kind::Rho, 1) => push(&mut out, BiPoly::a_s(), Monomial::unit()),
        (Kind::Beta, 1) => push(&mut out, -BiPoly::a_t(), Monomial::unit()),
        (Kind::Rho, _) => {
            for i in 1..k {
                let (r_i, r_j) = (Generator::rho(i), Generator::rho(k - i));
                let (b_i, b_j) = (Generator::beta(i), Generator::beta(k - i));
                push(&mut out, -qb(k, i, Color::X), pair(r_i, r_j));
                push(&mut out, qb(k - 1, i - 1, Color::Y), pair(r_i, b_j));
                push(&mut out, qb(k - 1, k - i - 1, Color::Y), pair(b_i, r_j));
            }
        }
        (Kind::Beta, _) => {
            for i in 1..k {
                let (r_i, r_j) = (Generator::rho(i), Generator::rho(k - i));
                let (b_i, b_j) = (Generator::beta(i), Generator::beta(k - i));
                push(&mut out, qb(k, i, Color::Y), pair(b_i, b_j));
                push(&mut out, -qb(k - 1, k - i - 1, Color::X), pair(r_i, b_j));
                push(&mut out, -qb(k - 1, i - 1, Color::X), pair(b_i, r_j));
            }
        }
    }
    out
}

/// Differential of a monomial under the chosen Leibniz sign rule.
pub fn diff_monomial(m: &Monomial, rule: SignRule) -> Combination {
    let mut out = Combination::new();
    let r = m.len();
    for (j, g) in m.0.iter().enumerate() {
        let s = BiPoly::constant(rule.sign(j, r));
        for (tm, c) in diff_generator(*g) {
            push(&mut out, &c * &s, m.splice(j, &tm));
        }
    }
    out
}

/// Coxeter word attached to a monomial: `ρ_k ↦ sts…` and `β_k ↦ tst…`, each of length `2k-1`.
pub fn associated_word(m: &Monomial) -> Vec<Letter> {
    m.0.iter()
        .flat_map(|g| {
            let first = if g.kind == Kind::Rho { Letter::S } else { Letter::T };
            alternating(first, 2 * g.k as usize - 1)
        })
        .collect()
}

/// Subsequence test (not necessarily contiguous).
pub fn is_subword(u: &[Letter], w: &[Letter]) -> bool {
    let mut it = w.iter();
    u.iter().all(|a| it.any(|b| a == b))
}

/// Greedy embedding position after placing a generator into the alternating word `stst…`
/// starting at index `pos`; `None` when it does not fit in length `len`.
fn place(pos: usize, g: Generator, len: usize) -> Option<usize> {
    // letter at index i of stst… is s for even i
    let want_even = g.kind == Kind::Rho;
    let start = if (pos % 2 == 0) == want_even { pos } else { pos + 1 };
    let end = start + 2 * g.k as usize - 1;
    (end <= len).then_some(end)
}

/// All monomials whose associated word embeds into `s̲_{2n}`, optionally beta-only.
pub fn subword_monomials(n: u32, beta_only: bool) -> Vec<Monomial> {
    let len = 2 * n as usize;
    let mut out = Vec::new();
    let mut stack = vec![(Monomial::unit(), 0usize)];
    while let Some((m, pos)) = stack.pop() {
        for k in 1..=n {
            for kind in [Kind::Rho, Kind::Beta] {
                if beta_only && kind == Kind::Rho {
                    continue;
                }
                let g = Generator { kind, k };
                if let Some(next) = place(pos, g, len) {
                    let mut v = m.0.clone();
                    v.push(g);
                    stack.push((Monomial(v), next));
                }
            }
        }
        out.push(m);
    }
    out.sort();
    out
}

/// All monomials (both kinds) with total parameter at most `max_total`.
pub fn truncated_monomials(max_total: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::unit()];
    let mut frontier = vec![Monomial::unit()];
    while let Some(m) = frontier.pop() {
        let t = m.total();
        for k in 1..=max_total.saturating_sub(t) {
            for kind in [Kind::Rho, Kind::Beta] {
                let mut v = m.0.clone();
                v.push(Generator { kind, k });
                out.push(Monomial(v.clone()));
                frontier.push(Monomial(v));
            }
        }
    }
    out.sort();
    out
}

/// Complex on the given monomials with the differential restricted to them.
/// Panics if the span is not closed under the differential (modulo dropped terms).
fn complex_on(
    basis: Vec<Monomial>,
    rule: SignRule,
    keep_term: impl Fn(&Monomial) -> bool,
) -> DgComplex<Monomial> {
    let set: std::collections::BTreeSet<Monomial> = basis.iter().cloned().collect();
    let mut entries = Vec::new();
    for m in &basis {
        for (t, c) in diff_monomial(m, rule) {
            if !keep_term(&t) {
                continue;
            }
            assert!(set.contains(&t), "differential of {} leaves the span via {}", m, t);
            entries.push((m.clone(), t, c));
        }
    }
    DgComplex::from_entries(basis.into_iter().map(|m| (m.degree(), m)), entries)
}

/// The module spanned by monomials whose word is a subword of `s̲_{2n}`. The antispherical
/// version keeps only `β`-monomials and sets `a_s = a_t = 0`. Degrees are unshifted.
pub fn build_tilde_c(n: u32, antispherical: bool, rule: SignRule) -> DgComplex<Monomial> {
    let basis = subword_monomials(n, antispherical);
    let mut c = complex_on(basis, rule, |t| !(antispherical && t.has_rho()));
    if antispherical {
        c.kill_vars(&[Var::As, Var::At]);
    }
    c
}

/// Truncation of the whole dg-algebra to total parameter at most `max_total`,
/// over ℤ[x, y, a_s, a_t].
pub fn build_truncated_algebra(max_total: u32, rule: SignRule) -> DgComplex<Monomial> {
    complex_on(truncated_monomials(max_total), rule, |_| true)
}

/// Summand spanned by the monomials of total parameter `m`.
pub fn piece(c: &DgComplex<Monomial>, m: u32) -> DgComplex<Monomial> {
    c.restrict(|mono| mono.total() == m)
}

/// Splitting of an antispherical complex by total parameter, `B_0, B_1, …`.
pub fn split_b(c: &DgComplex<Monomial>) -> Vec<DgComplex<Monomial>> {
    let max = c.basis.values().flatten().map(Monomial::total).max().unwrap_or(0);
    (0..=max).map(|m| piece(c, m)).collect()
}

/// Antispherical summand `B_m` built directly.
pub fn build_b(m: u32, rule: SignRule) -> DgComplex<Monomial> {
    piece(&build_tilde_c(m, true, rule), m)
}

pub fn check_d_squared<L>(c: &DgComplex<L>) -> bool {
    c.check_d_squared()
}

/// Composition label used in graph output, e.g. `2,1,3`.
pub fn composition_label(m: &Monomial) -> String {
    let parts: Vec<String> = m.composition().iter().map(u32::to_string).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(",")
    }
}

/// DOT export with nodes labeled by compositions.
pub fn to_dot(c: &DgComplex<Monomial>, name: &str) -> String {
    c.map_labels(composition_label).to_dot(name)
}

pub fn to_json(c: &DgComplex<Monomial>) -> Value {
    c.to_json()
}
