//! Two-colored quantum numbers in ℤ[x, y] and their cyclotomic factors.
//!
//! `[2]_x = x`, `[2]_y = y`, and `[n+1]_x = [2]_x [n]_y - [n-1]_x` (colors swapped for `y`).
//! Binomials are produced by exact division only.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::BiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    X,
    Y,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::X => Color::Y,
            Color::Y => Color::X,
        }
    }

    pub fn generator(self) -> BiPoly {
        match self {
            Color::X => BiPoly::x(),
            Color::Y => BiPoly::y(),
        }
    }
}

impl std::str::FromStr for Color {
    type Err = Error;
    fn from_str(s: &str) -> Result<Color> {
        match s {
            "x" | "s" => Ok(Color::X),
            "y" | "t" => Ok(Color::Y),
            _ => Err(Error::Parse(format!("unknown color {:?}", s))),
        }
    }
}

type Memo = Mutex<HashMap<(u32, Color), BiPoly>>;

fn qnum_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn cyclo_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// `[n]_c`, with `[0] = 0`.
pub fn qnum(n: u32, c: Color) -> BiPoly {
    if let Some(p) = qnum_memo().lock().unwrap().get(&(n, c)) {
        return p.clone();
    }
    let p = match n {
        0 => BiPoly::zero(),
        1 => BiPoly::one(),
        2 => c.generator(),
        _ => &(&c.generator() * &qnum(n - 1, c.other())) - &qnum(n - 2, c),
    };
    qnum_memo().lock().unwrap().insert((n, c), p.clone());
    p
}

pub fn qfactorial(n: u32, c: Color) -> BiPoly {
    (1..=n).map(|i| qnum(i, c)).product()
}

/// Two-colored quantum binomial, computed as `[n][n-1]…[n-k+1] / [k]!` by successive
/// exact divisions, each intermediate being itself a binomial times a quantum number.
pub fn qbinomial(n: u32, k: i64, c: Color) -> Result<BiPoly> {
    if k < 0 || k > n as i64 {
        return Err(Error::Range(format!("k = {} outside [0, {}]", k, n)));
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc = BiPoly::one();
    for i in 1..=k {
        // acc = [n;i-1], then [n;i] = [n;i-1] * [n-i+1] / [i]
        let num = &acc * &qnum(n - i + 1, c);
        acc = num
            .exact_div(&qnum(i, c))
            .expect("quantum binomial must be a polynomial");
    }
    Ok(acc)
}

/// The product identity writing `[n][m]` as a sum of `n` quantum numbers centered at `m`.
/// For even `n` the left-hand colors are `[n]_c [m]_{c'}`; the right-hand side is in color `c`.
pub fn verify_product_identity(n: u32, m: u32, c: Color) -> bool {
    if n == 0 || m < n {
        return false;
    }
    let lhs = if n % 2 == 1 {
        &qnum(n, c) * &qnum(m, c)
    } else {
        &qnum(n, c) * &qnum(m, c.other())
    };
    let rhs: BiPoly = (1..=n).map(|k| qnum(m - n + 2 * k - 1, c)).sum();
    lhs == rhs
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Two-color cyclotomic polynomial `φ_{n,c}`, the factor of `[n]_c` not dividing any earlier one.
pub fn cyclotomic(n: u32, c: Color) -> BiPoly {
    assert!(n >= 2, "cyclotomic polynomials start at n = 2");
    if let Some(p) = cyclo_memo().lock().unwrap().get(&(n, c)) {
        return p.clone();
    }
    let mut p = qnum(n, c);
    for d in divisors(n) {
        if d >= 2 && d < n {
            p = p
                .exact_div(&cyclotomic(d, c))
                .expect("cyclotomic factor must divide");
        }
    }
    cyclo_memo().lock().unwrap().insert((n, c), p.clone());
    p
}

/// The cyclotomic polynomial in the convention used for cohomology (`φ_2 = y`).
pub fn phi(n: u32) -> BiPoly {
    cyclotomic(n, Color::Y)
}

/// Exact-division test `φ_{d,y} | [n;k]_y`.
pub fn cyclotomic_divides_binomial(d: u32, n: u32, k: i64) -> Result<bool> {
    if d < 2 || n % d != 0 {
        return Err(Error::Arg(format!("{} does not divide {}", d, n)));
    }
    let b = qbinomial(n, k, Color::Y)?;
    Ok(cyclotomic(d, Color::Y).divides(&b))
}

/// Multiplicity of `φ_{d,c}` in `p` by repeated exact division.
pub fn cyclotomic_multiplicity(p: &BiPoly, d: u32, c: Color) -> u32 {
    let f = cyclotomic(d, c);
    let mut q = p.clone();
    let mut k = 0;
    while !q.is_zero() {
        match q.exact_div(&f) {
            Ok(next) => {
                q = next;
                k += 1;
            }
            Err(_) => break,
        }
    }
    k
}

/// Factor indices (with multiplicity, increasing) of `[n;k]_y` for `0 ≤ k ≤ n`, `n ≤ rows`.
pub fn pascal_triangle(rows: u32) -> Vec<Vec<Vec<u32>>> {
    (0..=rows)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let b = qbinomial(n, k as i64, Color::Y).expect("in range");
                    let mut idx = Vec::new();
                    for d in 2..=n {
                        for _ in 0..cyclotomic_multiplicity(&b, d, Color::Y) {
                            idx.push(d);
                        }
                    }
                    idx
                })
                .collect()
        })
        .collect()
}

/// One CSV line per entry: `n,k,d1.d2...` (empty factor list for units).
pub fn pascal_csv(rows: u32) -> String {
    let mut out = String::from("n,k,factors\n");
    for (n, row) in pascal_triangle(rows).iter().enumerate() {
        for (k, f) in row.iter().enumerate() {
            let f: Vec<String> = f.iter().map(u32::to_string).collect();
            out.push_str(&format!("{},{},{}\n", n, k, f.join(".")));
        }
    }
    out
}

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
type UPoly = Vec<BigRational>;

fn utrim(mut p: UPoly) -> UPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn usub_scaled(a: &UPoly, b: &UPoly, c: &BigRational, shift: usize) -> UPoly {
    let mut out = a.clone();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        out[i + shift] -= bi * c;
    }
    utrim(out)
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    utrim(out)
}

fn udivrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        q[shift] = c.clone();
        r = usub_scaled(&r, b, &c, shift);
    }
    (utrim(q), r)
}

/// Extended Euclid over ℚ[z]: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
fn uxgcd(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (UPoly, UPoly) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (UPoly, UPoly) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = udivrem(&r0, &r1);
        let s = usub_poly(&s0, &umul(&q, &s1));
        let t = usub_poly(&t0, &umul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let lead = r0.last().cloned().unwrap_or_else(BigRational::one);
    let norm = |p: &UPoly| p.iter().map(|c| c / &lead).collect::<UPoly>();
    (norm(&r0), norm(&s0), norm(&t0))
}

fn usub_poly(a: &UPoly, b: &UPoly) -> UPoly {
    usub_scaled(a, b, &BigRational::one(), 0)
}

/// Coefficients of `p` as a polynomial in `z = xy`, when it is one.
fn as_poly_in_xy(p: &BiPoly) -> Option<UPoly> {
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        if e[0] != e[1] || e[2] != 0 || e[3] != 0 {
            return None;
        }
        let k = e[0] as usize;
        if out.len() <= k {
            out.resize(k + 1, BigRational::zero());
        }
        out[k] = BigRational::from_integer(c.clone());
    }
    Some(utrim(out))
}

fn from_poly_in_xy(p: &UPoly) -> Option<BiPoly> {
    let mut out = BiPoly::zero();
    for (k, c) in p.iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        let k = k as u32;
        out += &BiPoly::term(c.to_integer(), [k, k, 0, 0]);
    }
    Some(out)
}

/// Witness `(a, b)` with `a·φ_{k,x} + b·φ_{n,x} = 1` for `2 ≤ k < n`, `k ∤ n`.
pub fn cyclotomic_bezout(k: u32, n: u32) -> Result<(BiPoly, BiPoly)> {
    if k < 2 || k >= n || n % k == 0 {
        return Err(Error::Arg(format!("need 2 <= k < n with k not dividing n, got ({}, {})", k, n)));
    }
    let fk = cyclotomic(k, Color::X);
    let fn_ = cyclotomic(n, Color::X);
    let (a, b) = if k == 2 {
        // φ_2 = x; n is odd so φ_n is a polynomial in xy and its constant term must be a unit.
        let c0 = fn_.coefficient(&[0; 4]);
        let b = if c0 == BigInt::one() || c0 == -BigInt::one() {
            BiPoly::from_bigint(c0)
        } else {
            return Err(Error::NoUnitCombination);
        };
        let a = (&BiPoly::one() - &(&b * &fn_))
            .exact_div(&fk)
            .map_err(|_| Error::NoUnitCombination)?;
        (a, b)
    } else {
        let (uk, un) = match (as_poly_in_xy(&fk), as_poly_in_xy(&fn_)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NoUnitCombination),
        };
        let (g, s, t) = uxgcd(&uk, &un);
        if g.len() != 1 {
            return Err(Error::NoUnitCombination);
        }
        match (from_poly_in_xy(&s), from_poly_in_xy(&t)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NoUnitCombination),
        }
    };
    if &(&a * &fk) + &(&b * &fn_) != BiPoly::one() {
        return Err(Error::NoUnitCombination);
    }
    Ok((a, b))
}

/// Von Mangoldt exponential: `p` when `n = p^r`, else 1.
pub fn exp_von_mangoldt(n: u32) -> u32 {
    if n < 2 {
        return 1;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 {
        p
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_quantum_numbers() {
        assert_eq!(qnum(1, Color::X), BiPoly::one());
        assert_eq!(qnum(2, Color::X), BiPoly::x());
        assert_eq!(qnum(3, Color::X), p("x*y - 1"));
        assert_eq!(qnum(4, Color::Y), p("x*y^2 - 2*y"));
        assert_eq!(qnum(5, Color::X), p("x^2*y^2 - 3*x*y + 1"));
        assert_eq!(qnum(4, Color::Y).exact_div(&BiPoly::y()).unwrap(), p("x*y - 2"));
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(qfactorial(0, Color::Y), BiPoly::one());
        assert_eq!(qfactorial(2, Color::Y), BiPoly::y());
        assert_eq!(
            qbinomial(4, 2, Color::Y).unwrap(),
            &p("x*y - 2") * &p("x*y - 1")
        );
        assert!(qbinomial(3, 4, Color::X).is_err());
        assert!(qbinomial(3, -1, Color::X).is_err());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(2, Color::X), BiPoly::x());
        assert_eq!(cyclotomic(3, Color::X), p("x*y - 1"));
        assert_eq!(cyclotomic(4, Color::Y), p("x*y - 2"));
        assert_eq!(cyclotomic(6, Color::Y), p("x*y - 3"));
    }

    #[test]
    fn bezout_examples() {
        let (a, b) = cyclotomic_bezout(2, 3).unwrap();
        assert_eq!(a, BiPoly::y());
        assert_eq!(b, BiPoly::constant(-1));
        let (a, b) = cyclotomic_bezout(4, 6).unwrap();
        assert_eq!(&(&a * &p("x*y - 2")) + &(&b * &p("x*y - 3")), BiPoly::one());
        assert!(matches!(cyclotomic_bezout(2, 4), Err(Error::Arg(_))));
    }

    #[test]
    fn pascal_rows() {
        let t = pascal_triangle(7);
        assert_eq!(t[2], vec![vec![], vec![2], vec![]]);
        assert_eq!(t[4], vec![vec![], vec![2, 4], vec![3, 4], vec![2, 4], vec![]]);
        assert_eq!(t[7][1], vec![7]);
    }

    #[test]
    fn divisibility_examples() {
        assert!(cyclotomic_divides_binomial(2, 4, 1).unwrap());
        assert!(!cyclotomic_divides_binomial(2, 4, 2).unwrap());
        assert!(!cyclotomic_divides_binomial(3, 6, 3).unwrap());
        assert!(cyclotomic_divides_binomial(4, 6, 1).is_err());
    }
}
