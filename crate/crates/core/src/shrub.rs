//! Shrubberies: the light-leaves basis of morphisms `B_w → 1` in type Ã₁.
//!
//! A shrub of a color is either a dot or an arch `(L_1|…|L_k)` over shrubberies of the other
//! color; a shrubbery is a product of shrubs. Colors follow the letters: red is `s`, blue is `t`.
//! The bracket syntax is `B(…)`/`R(…)` for arches, `b`/`r` for dots, `|` for stems and `1` for the
//! trivial shrubbery.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::dg::{alternating, is_subword, subword_monomials, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shrub {
    Dot(Letter),
    Arch(Letter, Vec<Shrubbery>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Shrubbery(pub Vec<Shrub>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decoration {
    U1,
    U0,
    D1,
    D0,
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decoration::U1 => "U1",
            Decoration::U0 => "U0",
            Decoration::D1 => "D1",
            Decoration::D0 => "D0",
        })
    }
}

impl Shrub {
    pub fn color(&self) -> Letter {
        match self {
            Shrub::Dot(c) | Shrub::Arch(c, _) => *c,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Shrub::Dot(_) => 1,
            Shrub::Arch(_, slots) => 1 + slots.iter().map(|s| s.len() + 1).sum::<usize>(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn push_tokens(&self, out: &mut Vec<(Letter, Decoration)>) {
        match self {
            Shrub::Dot(c) => out.push((*c, Decoration::U0)),
            Shrub::Arch(c, slots) => {
                out.push((*c, Decoration::U1));
                for (i, s) in slots.iter().enumerate() {
                    for sh in &s.0 {
                        sh.push_tokens(out);
                    }
                    let last = i + 1 == slots.len();
                    out.push((*c, if last { Decoration::D1 } else { Decoration::D0 }));
                }
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        let w = Shrubbery(vec![self.clone()]).word();
        w == alternating(self.color(), w.len())
    }

    pub fn swap_colors(&self) -> Shrub {
        match self {
            Shrub::Dot(c) => Shrub::Dot(c.other()),
            Shrub::Arch(c, slots) => Shrub::Arch(c.other(), slots.iter().map(Shrubbery::swap_colors).collect()),
        }
    }
}

impl Shrubbery {
    pub fn trivial() -> Self {
        Shrubbery(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(Shrub::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters and decorations in reading order.
    pub fn tokens(&self) -> Vec<(Letter, Decoration)> {
        let mut out = Vec::new();
        for s in &self.0 {
            s.push_tokens(&mut out);
        }
        out
    }

    pub fn word(&self) -> Vec<Letter> {
        self.tokens().into_iter().map(|t| t.0).collect()
    }

    pub fn to_word_and_sequence(&self) -> (Vec<Letter>, Vec<Decoration>) {
        self.tokens().into_iter().unzip()
    }

    /// Every shrub has an alternating starting word.
    pub fn is_complete(&self) -> bool {
        self.0.iter().all(Shrub::is_complete)
    }

    pub fn stem_count(&self) -> usize {
        self.tokens().iter().filter(|t| t.1 == Decoration::D0).count()
    }

    pub fn is_well_tended(&self) -> bool {
        self.is_complete() && self.stem_count() == 0
    }

    /// No arch has an empty slot.
    pub fn is_basis(&self) -> bool {
        self.0.iter().all(|s| match s {
            Shrub::Dot(_) => true,
            Shrub::Arch(_, slots) => slots.iter().all(|l| !l.is_empty() && l.is_basis()),
        })
    }

    pub fn is_monochrome(&self, c: Letter) -> bool {
        self.0.iter().all(|s| s.color() == c)
    }

    pub fn swap_colors(&self) -> Shrubbery {
        Shrubbery(self.0.iter().map(Shrub::swap_colors).collect())
    }

    pub fn to_json(&self) -> Value {
        let (w, e) = self.to_word_and_sequence();
        json!({
            "shrubbery": self.to_string(),
            "length": self.len(),
            "word": w.iter().map(|l| l.to_string()).collect::<String>(),
            "sequence": e.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "complete": self.is_complete(),
            "stems": self.stem_count(),
            "well_tended": self.is_well_tended(),
        })
    }
}

fn write_slot(f: &mut fmt::Formatter<'_>, l: &Shrubbery) -> fmt::Result {
    for s in &l.0 {
        write!(f, "{}", s)?;
    }
    Ok(())
}

impl fmt::Display for Shrub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shrub::Dot(Letter::S) => f.write_str("r"),
            Shrub::Dot(Letter::T) => f.write_str("b"),
            Shrub::Arch(c, slots) => {
                f.write_str(if *c == Letter::S { "R(" } else { "B(" })?;
                for (i, l) in slots.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write_slot(f, l)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Shrubbery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        write_slot(f, self)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{} at position {}", what, self.pos))
    }

    fn shrubbery(&mut self) -> Result<Shrubbery> {
        let mut out = Vec::new();
        while let Some(&c) = self.s.get(self.pos) {
            let color = match c {
                b'r' | b'R' => Letter::S,
                b'b' | b'B' => Letter::T,
                _ => break,
            };
            self.pos += 1;
            if c.is_ascii_lowercase() {
                out.push(Shrub::Dot(color));
                continue;
            }
            if self.s.get(self.pos) != Some(&b'(') {
                return Err(self.err("expected '('"));
            }
            self.pos += 1;
            let mut slots = vec![self.shrubbery()?];
            loop {
                match self.s.get(self.pos) {
                    Some(b'|') => {
                        self.pos += 1;
                        slots.push(self.shrubbery()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected '|' or ')'")),
                }
            }
            if let Some(bad) = slots.iter().flat_map(|l| &l.0).find(|s| s.color() == color) {
                return Err(Error::Parse(format!("slot shrub {} has the color of its arch", bad)));
            }
            out.push(Shrub::Arch(color, slots));
        }
        Ok(Shrubbery(out))
    }
}

impl FromStr for Shrubbery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "1" {
            return Ok(Shrubbery::trivial());
        }
        let mut p = Parser { s: t.as_bytes(), pos: 0 };
        let out = p.shrubbery()?;
        if p.pos != t.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(out)
    }
}

/// Restrictions applied during enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Filter {
    /// Every shrub of this color.
    pub color: Option<Letter>,
    /// No empty arches.
    pub basis_only: bool,
    /// Every shrub has an alternating word.
    pub complete_only: bool,
}

#[derive(Default)]
struct Enumerator {
    shrubs: HashMap<(usize, Letter, bool, bool), Vec<Shrub>>,
    shrubberies: HashMap<(usize, Option<Letter>, bool, bool), Vec<Shrubbery>>,
}

impl Enumerator {
    fn shrubs(&mut self, len: usize, c: Letter, basis: bool, complete: bool) -> Vec<Shrub> {
        let key = (len, c, basis, complete);
        if let Some(v) = self.shrubs.get(&key) {
            return v.clone();
        }
        let out = if len == 1 {
            vec![Shrub::Dot(c)]
        } else if len == 0 {
            Vec::new()
        } else {
            self.slot_sequences(len - 1, c.other(), basis, complete)
                .into_iter()
                .map(|slots| Shrub::Arch(c, slots))
                .collect()
        };
        self.shrubs.insert(key, out.clone());
        out
    }

    /// Slot lists whose lengths plus separators sum to `rem`.
    fn slot_sequences(&mut self, rem: usize, c: Letter, basis: bool, complete: bool) -> Vec<Vec<Shrubbery>> {
        let mut out = Vec::new();
        if rem == 0 {
            return out;
        }
        let min = if basis || complete { 1 } else { 0 };
        for l in min..rem {
            let firsts: Vec<Shrubbery> = if complete {
                self.shrubs(l, c, basis, true).into_iter().map(|s| Shrubbery(vec![s])).collect()
            } else {
                self.shrubberies(l, Some(c), basis, false)
            };
            if firsts.is_empty() {
                continue;
            }
            let rest_len = rem - l - 1;
            let rests = if rest_len == 0 { vec![Vec::new()] } else { self.slot_sequences(rest_len, c, basis, complete) };
            for f in &firsts {
                for r in &rests {
                    let mut v = vec![f.clone()];
                    v.extend(r.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }

    fn shrubberies(&mut self, len: usize, c: Option<Letter>, basis: bool, complete: bool) -> Vec<Shrubbery> {
        let key = (len, c, basis, complete);
        if let Some(v) = self.shrubberies.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if len == 0 {
            out.push(Shrubbery::trivial());
        }
        for l in 1..=len {
            let colors: Vec<Letter> = match c {
                Some(c) => vec![c],
                None => vec![Letter::S, Letter::T],
            };
            let mut firsts = Vec::new();
            for col in colors {
                firsts.extend(self.shrubs(l, col, basis, complete));
            }
            if firsts.is_empty() {
                continue;
            }
            let rests = self.shrubberies(len - l, c, basis, complete);
            for f in &firsts {
                for r in &rests {
                    let mut v = vec![f.clone()];
                    v.extend(r.0.iter().cloned());
                    out.push(Shrubbery(v));
                }
            }
        }
        self.shrubberies.insert(key, out.clone());
        out
    }
}

/// All shrubberies of length `len` satisfying the filter, sorted.
pub fn enumerate(len: usize, filter: Filter) -> Vec<Shrubbery> {
    let mut e = Enumerator::default();
    let mut out = e.shrubberies(len, filter.color, filter.basis_only, filter.complete_only);
    out.sort();
    out
}

/// Shrubberies whose starting word is exactly `word`.
pub fn enumerate_word(word: &[Letter], filter: Filter) -> Vec<Shrubbery> {
    enumerate(word.len(), filter).into_iter().filter(|l| l.word() == word).collect()
}

/// Distinct subwords of `w`, including the empty word.
pub fn subwords(w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << w.len() {
        out.insert((0..w.len()).filter(|i| mask & (1 << i) != 0).map(|i| w[i]).collect());
    }
    out
}

/// Shrubberies whose starting word is a subword of `w`.
pub fn enumerate_subwords(w: &[Letter], filter: Filter) -> Vec<Shrubbery> {
    let mut out = Vec::new();
    for len in 0..=w.len() {
        out.extend(enumerate(len, filter).into_iter().filter(|l| is_subword(&l.word(), w)));
    }
    out
}

/// Brute-force generator: walk every word and 01-sequence through the Bruhat order of the
/// infinite dihedral group, keep the walks ending at the identity, and spell them with the
/// bracket dictionary. Returns bracket strings.
pub fn stroll_enumerate(len: usize, color: Option<Letter>, basis_only: bool) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for wmask in 0u32..1 << len {
        let word: Vec<Letter> =
            (0..len).map(|i| if wmask & (1 << i) != 0 { Letter::T } else { Letter::S }).collect();
        'seq: for emask in 0u32..1 << len {
            // group element as (length, last letter of its reduced word)
            let (mut l, mut last) = (0usize, Letter::S);
            let mut text = String::new();
            for (i, &a) in word.iter().enumerate() {
                let e = emask & (1 << i) != 0;
                let down = l > 0 && last == a;
                if l == 0 {
                    if let Some(c) = color {
                        if a != c {
                            continue 'seq;
                        }
                    }
                }
                text.push_str(match (down, e) {
                    (false, true) => if a == Letter::S { "R(" } else { "B(" },
                    (false, false) => if a == Letter::S { "r" } else { "b" },
                    (true, true) => ")",
                    (true, false) => "|",
                });
                if e {
                    if down {
                        l -= 1;
                        last = a.other();
                    } else {
                        l += 1;
                        last = a;
                    }
                }
            }
            if l != 0 {
                continue;
            }
            if basis_only && ["(|", "()", "||", "|)"].iter().any(|p| text.contains(p)) {
                continue;
            }
            out.insert(if text.is_empty() { "1".into() } else { text });
        }
    }
    out
}

/// Remove the `i`-th stem in reading order.
pub fn uproot(l: &Shrubbery, i: usize) -> Result<Shrubbery> {
    fn in_shrubbery(l: &Shrubbery, i: &mut usize) -> Option<Shrubbery> {
        let mut out = l.clone();
        for s in out.0.iter_mut() {
            if let Some(n) = in_shrub(s, i) {
                *s = n;
                return Some(out);
            }
        }
        None
    }
    fn in_shrub(s: &Shrub, i: &mut usize) -> Option<Shrub> {
        let Shrub::Arch(c, slots) = s else { return None };
        for (j, slot) in slots.iter().enumerate() {
            if let Some(n) = in_shrubbery(slot, i) {
                let mut v = slots.clone();
                v[j] = n;
                return Some(Shrub::Arch(*c, v));
            }
            if j + 1 < slots.len() {
                if *i == 0 {
                    let mut v = slots.clone();
                    let next = v.remove(j + 1);
                    v[j].0.extend(next.0);
                    return Some(Shrub::Arch(*c, v));
                }
                *i -= 1;
            }
        }
        None
    }
    let mut k = i;
    in_shrubbery(l, &mut k).ok_or(Error::NoStem)
}

/// Remove a set of stems, given by their reading-order indices in `l`.
pub fn uproot_set(l: &Shrubbery, stems: &BTreeSet<usize>) -> Result<Shrubbery> {
    let mut cur = l.clone();
    for &i in stems.iter().rev() {
        cur = uproot(&cur, i)?;
    }
    Ok(cur)
}

fn shrub_has_stem(s: &Shrub) -> bool {
    match s {
        Shrub::Dot(_) => false,
        Shrub::Arch(_, slots) => slots.len() > 1 || slots.iter().any(|l| l.0.iter().any(shrub_has_stem)),
    }
}

/// Uproot the leftmost outer stem: in the first shrub with a stem, merge the first two slots
/// of the outer arch, or recurse into the single slot.
pub fn uproot_leftmost(l: &Shrubbery) -> Result<Shrubbery> {
    fn shrub(s: &Shrub) -> Result<Shrub> {
        match s {
            Shrub::Arch(c, slots) if slots.len() > 1 => {
                let mut v = slots.clone();
                let second = v.remove(1);
                v[0].0.extend(second.0);
                Ok(Shrub::Arch(*c, v))
            }
            Shrub::Arch(c, slots) => Ok(Shrub::Arch(*c, vec![uproot_leftmost(&slots[0])?])),
            Shrub::Dot(_) => Err(Error::NoStem),
        }
    }
    let pos = l.0.iter().position(shrub_has_stem).ok_or(Error::NoStem)?;
    let mut out = l.clone();
    out.0[pos] = shrub(&l.0[pos])?;
    Ok(out)
}

/// Reading-order index of the stem removed by [`uproot_leftmost`].
pub fn leftmost_outer_stem(l: &Shrubbery) -> Result<usize> {
    fn stems(s: &Shrub) -> usize {
        Shrubbery(vec![s.clone()]).stem_count()
    }
    fn in_shrub(s: &Shrub) -> Result<usize> {
        match s {
            Shrub::Arch(_, slots) if slots.len() > 1 => Ok(slots[0].stem_count()),
            Shrub::Arch(_, slots) => leftmost_outer_stem(&slots[0]),
            Shrub::Dot(_) => Err(Error::NoStem),
        }
    }
    let pos = l.0.iter().position(shrub_has_stem).ok_or(Error::NoStem)?;
    let before: usize = l.0[..pos].iter().map(stems).sum();
    Ok(before + in_shrub(&l.0[pos])?)
}

/// Partition of the partial uprootings of `l` by whether the leftmost outer stem survives.
#[derive(Clone, Debug)]
pub struct EfClasses {
    pub e: Vec<(BTreeSet<usize>, Shrubbery)>,
    pub f: Vec<(BTreeSet<usize>, Shrubbery)>,
    /// `u(E_i)` for each element of `e`, in order.
    pub images: Vec<Shrubbery>,
}

impl EfClasses {
    /// `u` is a bijection from `E` onto `F` sending the uprooting of `S` to that of `S ∪ {i₀}`.
    pub fn is_bijection(&self) -> bool {
        let f: BTreeSet<&Shrubbery> = self.f.iter().map(|x| &x.1).collect();
        let im: BTreeSet<&Shrubbery> = self.images.iter().collect();
        self.e.len() == self.f.len() && im.len() == self.images.len() && im == f
    }
}

pub fn ef_classes(l: &Shrubbery) -> Result<EfClasses> {
    let n = l.stem_count();
    let lead = leftmost_outer_stem(l)?;
    let mut out = EfClasses { e: Vec::new(), f: Vec::new(), images: Vec::new() };
    for mask in 0u64..1 << n {
        let s: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let r = uproot_set(l, &s)?;
        if s.contains(&lead) {
            out.f.push((s, r));
        } else {
            out.images.push(uproot_leftmost(&r)?);
            out.e.push((s, r));
        }
    }
    Ok(out)
}

/// The partial order on shrubberies of equal length.
pub fn order_leq(a: &Shrubbery, b: &Shrubbery) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(leq(a, b))
}

fn leq(a: &Shrubbery, b: &Shrubbery) -> bool {
    if a == b {
        return true;
    }
    match (a.0.as_slice(), b.0.as_slice()) {
        ([x], [y]) => shrub_leq(x, y),
        (xs, ys) => product_leq(xs, ys),
    }
}

fn product_leq(a: &[Shrub], b: &[Shrub]) -> bool {
    if a == b {
        return true;
    }
    let (Some(k), Some(k2)) = (a.first(), b.first()) else { return false };
    match k.len().cmp(&k2.len()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal if k != k2 => shrub_leq(k, k2),
        std::cmp::Ordering::Equal => product_leq(&a[1..], &b[1..]),
    }
}

fn shrub_leq(a: &Shrub, b: &Shrub) -> bool {
    if a == b {
        return true;
    }
    match (a, b) {
        (Shrub::Arch(c, x), Shrub::Arch(c2, y)) if c == c2 => slots_leq(x, y),
        _ => false,
    }
}

fn slots_leq(a: &[Shrubbery], b: &[Shrubbery]) -> bool {
    if a == b {
        return true;
    }
    let (Some(l), Some(l2)) = (a.first(), b.first()) else { return false };
    match l.len().cmp(&l2.len()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal if l != l2 => leq(l, l2),
        std::cmp::Ordering::Equal => slots_leq(&a[1..], &b[1..]),
    }
}

/// `Σ (−1)^ℓ` over blue basis shrubberies with word in `s̲_{2n}`, against `Σ (−1)^{#gens}`
/// over the β-monomials of the antispherical reduced complex.
pub fn euler_sums(n: u32) -> (i64, i64) {
    let w = alternating(Letter::S, 2 * n as usize);
    let filter = Filter { color: Some(Letter::T), basis_only: true, complete_only: false };
    let shrubs = enumerate_subwords(&w, filter)
        .iter()
        .map(|l| if l.len() % 2 == 0 { 1 } else { -1 })
        .sum();
    let monos = subword_monomials(n, true)
        .iter()
        .map(|m| if m.len() % 2 == 0 { 1 } else { -1 })
        .sum();
    (shrubs, monos)
}

pub fn euler_check(n: u32) -> bool {
    let (a, b) = euler_sums(n);
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(s: &str) -> Shrubbery {
        s.parse().unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["1", "b", "R(b|b)", "R(B(r|R(b)))B(r|r)rb", "B(|)", "R()"] {
            assert_eq!(sh(s).to_string(), s);
        }
        assert!("R(r)".parse::<Shrubbery>().is_err());
        assert!("B(r".parse::<Shrubbery>().is_err());
    }

    #[test]
    fn dictionary() {
        let (w, e) = sh("B(r)").to_word_and_sequence();
        assert_eq!(w, vec![Letter::T, Letter::S, Letter::T]);
        assert_eq!(e, vec![Decoration::U1, Decoration::U0, Decoration::D1]);
        assert_eq!(sh("B(r)").len(), 3);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(0, Filter::default()).len(), 1);
        assert_eq!(enumerate(1, Filter::default()).len(), 2);
        let blue = Filter { color: Some(Letter::T), ..Filter::default() };
        assert_eq!(enumerate(1, blue).len(), 1);
        let basis_blue = Filter { basis_only: true, ..blue };
        let st = [Letter::S, Letter::T];
        let found: Vec<String> = enumerate_subwords(&st, basis_blue).iter().map(|l| l.to_string()).collect();
        assert_eq!(found, vec!["1", "b"]);
    }

    #[test]
    fn predicates() {
        let r2 = sh("R(b)");
        assert!(r2.is_complete() && r2.is_well_tended());
        let l = sh("R(b|b)");
        assert!(l.is_complete() && !l.is_well_tended());
        assert_eq!(l.stem_count(), 1);
        assert!(Shrubbery::trivial().is_well_tended());
    }

    #[test]
    fn uprooting() {
        assert_eq!(uproot_leftmost(&sh("R(b|b)")).unwrap(), sh("R(bb)"));
        assert_eq!(uproot_leftmost(&sh("B(R(b|b))")).unwrap(), sh("B(R(bb))"));
        assert_eq!(uproot_leftmost(&sh("R(b)")).unwrap_err(), Error::NoStem);
        assert_eq!(uproot(&sh("R(b|b|b)"), 1).unwrap(), sh("R(b|bb)"));
    }

    #[test]
    fn order_examples() {
        // u(L) for L = R(b|b) dominates the other terms of d(L)
        let top = uproot_leftmost(&sh("R(b|b)")).unwrap();
        for other in ["bR(b)", "rR(b)", "R(b)r", "R(b)b"] {
            assert!(order_leq(&sh(other), &top).unwrap(), "{}", other);
            assert!(!order_leq(&top, &sh(other)).unwrap(), "{}", other);
        }
        assert!(order_leq(&sh("R(b|b)"), &sh("R(b|b)")).unwrap());
        assert!(!order_leq(&sh("rR(b)"), &sh("bR(b)")).unwrap());
        assert_eq!(order_leq(&sh("R(b|b)"), &sh("b")).unwrap_err(), Error::LengthMismatch(5, 1));
    }

    #[test]
    fn three_stem_classes() {
        let l = sh("B(r|R(b|b))R(b|b)");
        let c = ef_classes(&l).unwrap();
        assert_eq!((c.e.len(), c.f.len()), (4, 4));
        assert!(c.is_bijection());
    }

    #[test]
    fn euler_small() {
        assert_eq!(euler_sums(0), (1, 1));
        assert_eq!(euler_sums(1), (0, 0));
    }
}
