//! Sparse polynomials over the integers in the four variables `x`, `y`, `as`, `at`,
//! unnormalized fractions of such polynomials, and specialization maps to
//! ℤ, 𝔽_p and ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const NVARS: usize = 4;

/// Exponent vector `(e_x, e_y, e_as, e_at)`.
pub type Exp = [u32; NVARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    As,
    At,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::As, Var::At];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::As => "as",
            Var::At => "at",
        }
    }
}

/// Polynomial in ℤ[x, y, a_s, a_t]. The term map never stores a zero coefficient,
/// so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Exp, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::term(c, [0; NVARS])
    }

    pub fn term(c: BigInt, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Self::term(BigInt::one(), e)
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn a_s() -> Self {
        Self::var(Var::As)
    }

    pub fn a_t() -> Self {
        Self::var(Var::At)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    /// `Some(±1)` when the polynomial is a unit of ℤ[x, y, a_s, a_t].
    pub fn as_unit(&self) -> Option<i64> {
        let c = self.as_constant()?;
        if c.is_one() {
            Some(1)
        } else if (-c).is_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exp) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Leading term for the lexicographic order on exponent vectors.
    pub fn leading(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// True when every variable outside `vars` has exponent zero.
    pub fn uses_only(&self, vars: &[Var]) -> bool {
        self.terms.keys().all(|e| {
            Var::ALL
                .iter()
                .all(|v| vars.contains(v) || e[v.index()] == 0)
        })
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / b`, or `NotDivisible` when `b` does not divide `self`
    /// in ℤ[x, y, a_s, a_t].
    pub fn exact_div(&self, b: &BiPoly) -> Result<BiPoly> {
        let (lb_exp, lb_coef) = match b.leading() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::Arg("division by zero".into())),
        };
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((le, lc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let mut qe = [0; NVARS];
            for i in 0..NVARS {
                if le[i] < lb_exp[i] {
                    return Err(Error::NotDivisible);
                }
                qe[i] = le[i] - lb_exp[i];
            }
            let (qc, r) = lc.div_rem(&lb_coef);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (e, c) in &b.terms {
                let mut ne = *e;
                for i in 0..NVARS {
                    ne[i] += qe[i];
                }
                rem.add_term(ne, -(c * &qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    pub fn divides(&self, a: &BiPoly) -> bool {
        a.exact_div(self).is_ok()
    }

    /// Substitute rational values for all four variables.
    pub fn eval_rat(&self, point: &[BigRational; NVARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for i in 0..NVARS {
                if e[i] > 0 {
                    t *= pow_rat(&point[i], e[i]);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute integer values for all four variables.
    pub fn eval_int(&self, point: &[BigInt; NVARS]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NVARS {
                if e[i] > 0 {
                    t *= num_traits::pow(point[i].clone(), e[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, v: Var, value: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            let k = rest[v.index()];
            rest[v.index()] = 0;
            out += &(&BiPoly::term(c.clone(), rest) * &value.pow(k));
        }
        out
    }

    pub fn specialize(&self, s: &Specialization) -> Result<Scalar> {
        s.apply(self)
    }
}

fn pow_rat(b: &BigRational, k: u32) -> BigRational {
    num_traits::pow(b.clone(), k as usize)
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(c)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(mut self, rhs: BiPoly) -> BiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..NVARS {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for BiPoly {
    fn product<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::one(), |acc, p| acc * p)
    }
}

impl fmt::Display for BiPoly {
    /// Canonical text: terms by exponent vector, lexicographically descending,
    /// `c*x^a*y^b*as^c*at^d` with unit coefficients and exponents elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                factors.push(mag.to_string());
            }
            for v in Var::ALL {
                match e[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    k => factors.push(format!("{}^{}", v.name(), k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

impl FromStr for BiPoly {
    type Err = Error;

    /// Parses the canonical grammar (and any reordering of it):
    /// signed sums of `*`-separated factors, each an integer or `var[^k]`.
    fn from_str(s: &str) -> Result<BiPoly> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut pos = 0;
        let mut out = BiPoly::zero();
        let mut first = true;
        while pos < src.len() {
            let mut sign = BigInt::one();
            if src[pos] == '+' || src[pos] == '-' {
                if src[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if !first {
                return Err(Error::Parse(format!("expected sign at {}", pos)));
            }
            first = false;
            let mut coef = sign;
            let mut exp = [0u32; NVARS];
            loop {
                parse_factor(&src, &mut pos, &mut coef, &mut exp)?;
                if pos < src.len() && src[pos] == '*' {
                    pos += 1;
                } else {
                    break;
                }
            }
            out.add_term(exp, coef);
        }
        Ok(out)
    }
}

fn parse_uint(src: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < src.len() && src[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    src[start..*pos].iter().collect::<String>().parse().ok()
}

fn parse_factor(src: &[char], pos: &mut usize, coef: &mut BigInt, exp: &mut Exp) -> Result<()> {
    if let Some(n) = parse_uint(src, pos) {
        *coef *= n;
        return Ok(());
    }
    let rest: String = src[*pos..].iter().collect();
    let var = if rest.starts_with("as") {
        *pos += 2;
        Var::As
    } else if rest.starts_with("at") {
        *pos += 2;
        Var::At
    } else if rest.starts_with('x') {
        *pos += 1;
        Var::X
    } else if rest.starts_with('y') {
        *pos += 1;
        Var::Y
    } else {
        return Err(Error::Parse(format!("unexpected input at {}: {:?}", pos, rest)));
    };
    let mut k = 1u32;
    if *pos < src.len() && src[*pos] == '^' {
        *pos += 1;
        k = parse_uint(src, pos)
            .and_then(|n| n.to_u32())
            .ok_or_else(|| Error::Parse(format!("bad exponent at {}", pos)))?;
    }
    exp[var.index()] += k;
    Ok(())
}

/// Quotient of two polynomials, never reduced. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl Frac {
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Frac { num, den }
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Frac { num: p, den: BiPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn same_as(&self, other: &Frac) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        Frac::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn add(&self, other: &Frac) -> Frac {
        if self.den == other.den {
            return Frac::new(&self.num + &other.num, self.den.clone());
        }
        Frac::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    /// Exact polynomial value when the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<BiPoly> {
        self.num.exact_div(&self.den)
    }

    pub fn eval_rat(&self, point: &[BigRational; NVARS]) -> Option<BigRational> {
        let d = self.den.eval_rat(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_rat(point) / d)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Integers,
    ModPrime(u64),
    Rationals,
}

/// A ring homomorphism out of ℤ[x, y, a_s, a_t], determined by the target ring
/// and the images of the four variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Specialization {
    pub target: Target,
    pub values: [BigRational; NVARS],
}

impl Specialization {
    pub fn new(target: Target, values: [BigRational; NVARS]) -> Result<Self> {
        if let Target::ModPrime(p) = target {
            if !is_prime(p) {
                return Err(Error::Arg(format!("{} is not prime", p)));
            }
        }
        if target != Target::Rationals && values.iter().any(|v| !v.is_integer()) {
            return Err(Error::Arg("integral target needs integer values".into()));
        }
        Ok(Specialization { target, values })
    }

    fn xy(target: Target, x: i64, y: i64) -> Result<Self> {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        Self::new(target, [r(x), r(y), r(0), r(0)])
    }

    pub fn integers(x: i64, y: i64) -> Self {
        Self::xy(Target::Integers, x, y).expect("integer point")
    }

    pub fn mod_prime(p: u64, x: i64, y: i64) -> Result<Self> {
        Self::xy(Target::ModPrime(p), x, y)
    }

    pub fn rationals(x: i64, y: i64) -> Self {
        Self::xy(Target::Rationals, x, y).expect("rational point")
    }

    pub fn is_field(&self) -> bool {
        self.target != Target::Integers
    }

    pub fn int_values(&self) -> [BigInt; NVARS] {
        self.values.clone().map(|v| v.to_integer())
    }

    pub fn apply(&self, p: &BiPoly) -> Result<Scalar> {
        Ok(match self.target {
            Target::Integers => Scalar::Int(p.eval_int(&self.int_values())),
            Target::ModPrime(q) => {
                let v = p.eval_int(&self.int_values()).mod_floor(&BigInt::from(q));
                Scalar::Mod(v.to_u64().expect("residue fits"), q)
            }
            Target::Rationals => Scalar::Rat(p.eval_rat(&self.values)),
        })
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.target {
            Target::Integers => "Z".to_string(),
            Target::ModPrime(p) => format!("F{}", p),
            Target::Rationals => "Q".to_string(),
        };
        write!(f, "{}({},{})", ring, self.values[0], self.values[1])
    }
}

impl FromStr for Specialization {
    type Err = Error;

    /// `Z:2,2`, `F3:2,2`, `Q:2,2`, or a bare `2,2` for the integers.
    fn from_str(s: &str) -> Result<Self> {
        let (ring, point) = match s.split_once(':') {
            Some((r, p)) => (r, p),
            None => ("Z", s),
        };
        let coords: Vec<i64> = point
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad point {:?}: {}", point, e)))?;
        if coords.len() != 2 {
            return Err(Error::Parse(format!("expected two coordinates in {:?}", point)));
        }
        let target = match ring {
            "Z" => Target::Integers,
            "Q" => Target::Rationals,
            r if r.starts_with('F') => Target::ModPrime(
                r[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in {:?}", r)))?,
            ),
            r => return Err(Error::Parse(format!("unknown ring {:?}", r))),
        };
        Self::xy(target, coords[0], coords[1])
    }
}

/// Value of a polynomial under a specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Mod(u64, u64),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
            Scalar::Rat(v) => v.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{}", v),
            Scalar::Mod(v, _) => write!(f, "{}", v),
            Scalar::Rat(v) => write!(f, "{}", v),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_text_round_trip() {
        let q = p("x^2*y^2 - 3*x*y + 1");
        assert_eq!(q.to_string(), "x^2*y^2 - 3*x*y + 1");
        assert_eq!(p("1 - 3*y*x + y^2*x^2"), q);
        assert_eq!(p("-x + as*at^3").to_string(), "-x + as*at^3");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(p("0"), BiPoly::zero());
    }

    #[test]
    fn sums_and_products() {
        assert!((BiPoly::x() + -BiPoly::x()).is_zero());
        assert_eq!(p("x*y - 1") + BiPoly::one(), p("x*y"));
        let t = p("x*y - 1");
        assert_eq!(&t * &t, p("x^2*y^2 - 2*x*y + 1"));
        assert_eq!(&BiPoly::y() * &p("x*y - 2"), p("x*y^2 - 2*y"));
    }

    #[test]
    fn division() {
        assert_eq!(p("x*y^2 - 2*y").exact_div(&BiPoly::y()).unwrap(), p("x*y - 2"));
        assert_eq!(p("x*y - 1").exact_div(&p("x*y - 1")).unwrap(), BiPoly::one());
        assert_eq!(p("x*y - 1").exact_div(&BiPoly::x()), Err(Error::NotDivisible));
        assert_eq!(p("3*x").exact_div(&p("2*x")), Err(Error::NotDivisible));
    }

    #[test]
    fn specialization_parsing() {
        let s: Specialization = "F5:2,2".parse().unwrap();
        assert_eq!(s.target, Target::ModPrime(5));
        assert!("F4:2,2".parse::<Specialization>().is_err());
        assert_eq!(p("x^2 + 3").specialize(&s).unwrap(), Scalar::Mod(2, 5));
    }

    #[test]
    fn fractions_compare_by_cross_multiplication() {
        let a = Frac::new(p("x*y^2 - 2*y"), p("y"));
        let b = Frac::new(p("2*x*y - 4"), p("2"));
        assert!(a.same_as(&b));
        assert_eq!(a.to_poly().unwrap(), p("x*y - 2"));
    }
}
