//! Exact integer Laurent polynomials in the Hecke parameter `v`.
//!
//! A polynomial is stored as a sparse list of `(exponent, coefficient)`
//! pairs sorted by ascending exponent with no zero coefficients, so
//! structural equality is polynomial equality. All coefficient arithmetic
//! is checked; an overflow panics instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, i64)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePolyError {
    #[error("empty polynomial string")]
    Empty,
    #[error("malformed term `{0}`")]
    BadTerm(String),
    #[error("coefficient overflow while parsing")]
    Overflow,
}

#[inline]
fn checked(op: &str, r: Option<i64>) -> i64 {
    match r {
        Some(x) => x,
        None => panic!("Laurent coefficient overflow in {op}"),
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * v^exp`.
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(exp, coeff)] }
        }
    }

    /// The parameter `v` itself.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `v - v^-1`, the off-diagonal coefficient of the quadratic relation.
    pub fn v_minus_v_inv() -> Self {
        Self { terms: vec![(-1, -1), (1, 1)] }
    }

    /// Builds a normalized polynomial from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut raw: Vec<(i32, i64)> = terms.into_iter().collect();
        raw.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = checked("from_terms", lc.checked_add(c)),
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn coefficient(&self, exp: i32) -> i64 {
        match self.terms.binary_search_by_key(&exp, |&(e, _)| e) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|&(e, _)| e)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// Exponent negation `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|&(e, c)| (-e, c)).collect(),
        }
    }

    /// `Some((sign, k))` iff `self == sign * v^k`.
    pub fn is_monomial(&self) -> Option<(i8, i32)> {
        match self.terms.as_slice() {
            [(e, 1)] => Some((1, *e)),
            [(e, -1)] => Some((-1, *e)),
            _ => None,
        }
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms
            .iter()
            .fold(0i64, |acc, &(_, c)| checked("eval_at_one", acc.checked_add(c)))
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (e.checked_add(k).expect("Laurent exponent overflow"), c))
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|&(e, x)| (e, checked("scale", x.checked_mul(c))))
                .collect(),
        }
    }

    /// Keeps only the terms with strictly negative exponent.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|&(e, _)| e < 0).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        merge(&self.terms, &other.terms, 1)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        merge(&self.terms, &other.terms, -1)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.is_zero() || other.is_zero() {
            return Some(Self::zero());
        }
        let mut acc: Vec<(i32, i64)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &other.terms {
                acc.push((e1.checked_add(e2)?, c1.checked_mul(c2)?));
            }
        }
        acc.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(acc.len());
        for (e, c) in acc {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.checked_add(c)?,
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Some(Self { terms: out })
    }

    /// `self += factor * other`, the inner step of every triangular elimination.
    pub fn add_mul_assign(&mut self, factor: &Self, other: &Self) {
        let prod = factor * other;
        *self += &prod;
    }
}

fn merge(a: &[(i32, i64)], b: &[(i32, i64)], sign: i64) -> Option<LaurentPoly> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, b[j].1.checked_mul(sign)?));
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].1.checked_add(b[j].1.checked_mul(sign)?)?;
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Some(LaurentPoly { terms: out })
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent coefficient overflow in add")
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent coefficient overflow in sub")
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent coefficient overflow in mul")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, abs: i64, exp: i32) -> fmt::Result {
    match (abs, exp) {
        (c, 0) => write!(f, "{c}"),
        (1, 1) => write!(f, "v"),
        (1, e) => write!(f, "v^{e}"),
        (c, 1) => write!(f, "{c}*v"),
        (c, e) => write!(f, "{c}*v^{e}"),
    }
}

/// Renders terms in descending exponent order, e.g. `v^2 - 1` or `1 + v^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_monomial(f, c.unsigned_abs() as i64, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_term(s: &str) -> Result<(i32, i64), ParsePolyError> {
    let bad = || ParsePolyError::BadTerm(s.to_string());
    let (coeff_part, var_part) = match s.find('v') {
        None => (s, None),
        Some(pos) => {
            let c = s[..pos].trim_end_matches('*');
            (c, Some(&s[pos + 1..]))
        }
    };
    let coeff: i64 = if coeff_part.is_empty() {
        if var_part.is_none() {
            return Err(bad());
        }
        1
    } else {
        coeff_part.parse().map_err(|_| bad())?
    };
    let exp: i32 = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?,
    };
    Ok((exp, coeff))
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    /// Parses the rendering produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError::Empty);
        }
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        let mut sign = 1i64;
        if bytes[0] == b'-' {
            sign = -1;
            start = 1;
        } else if bytes[0] == b'+' {
            start = 1;
        }
        let mut i = start;
        while i <= bytes.len() {
            // a sign splits terms unless it follows `^`
            let at_split = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^');
            if at_split {
                let (e, c) = parse_term(&compact[start..i])?;
                terms.push((e, c.checked_mul(sign).ok_or(ParsePolyError::Overflow)?));
                if i < bytes.len() {
                    sign = if bytes[i] == b'-' { -1 } else { 1 };
                }
                start = i + 1;
            }
            i += 1;
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
