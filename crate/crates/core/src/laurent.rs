//! Exact Laurent polynomials over the integers and desingularization parameters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coxeter::OddComponents;
use crate::error::{Error, Result};

/// Element of `Z[v, v^-1]`, stored as exponent to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// `v - v^-1`.
    pub fn v_minus_vinv() -> Self {
        Self::monomial(1, 1) - Self::monomial(1, -1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Constant term if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 if self.coeffs.contains_key(&0) => Some(self.coeffs[&0].clone()),
            _ => None,
        }
    }

    /// `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Membership in `v Z[v]`. The zero polynomial belongs to it.
    pub fn in_positive_part(&self) -> bool {
        self.coeffs.keys().all(|&e| e >= 1)
    }

    /// Part with exponents `<= 0`.
    pub fn nonpositive_part(&self) -> Self {
        Self {
            coeffs: self.coeffs.range(..=0).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().rev().map(|(e, c)| (c, *e)), "v")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_poly<'a, I>(f: &mut fmt::Formatter<'_>, terms: I, var: &str) -> fmt::Result
where
    I: Iterator<Item = (&'a BigInt, i32)>,
{
    let mut first = true;
    for (c, e) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let unit = abs.is_one();
        match e {
            0 => write!(f, "{abs}")?,
            _ => {
                if !unit {
                    write!(f, "{abs}*")?;
                }
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add, LaurentPoly);
forward_binop!(Sub, sub, LaurentPoly);
forward_binop!(Mul, mul, LaurentPoly);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts `v` or `x` as the variable, but not both.
    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s)?;
        let uses_x = terms.iter().any(|t| t.x != 0);
        let uses_v = terms.iter().any(|t| t.v != 0);
        if uses_x && uses_v {
            return Err(Error::Parse(format!("`{s}` mixes the variables v and x")));
        }
        Ok(Self::from_terms(terms.into_iter().map(|t| (t.x + t.v, t.coeff))))
    }
}

struct Term {
    coeff: BigInt,
    x: i32,
    v: i32,
}

fn parse_terms(input: &str) -> Result<Vec<Term>> {
    let cleaned: String = input
        .chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | '(' | ')'))
        .collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes: Vec<char> = cleaned.chars().collect();
    let mut pieces = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^' {
            pieces.push(bytes[start..i].iter().collect::<String>());
            start = i;
        }
    }
    pieces.push(bytes[start..].iter().collect::<String>());
    pieces.iter().map(|p| parse_term(p, input)).collect()
}

fn parse_term(piece: &str, whole: &str) -> Result<Term> {
    let err = || Error::Parse(format!("cannot parse term `{piece}` in `{whole}`"));
    let (neg, body) = match piece.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, piece.strip_prefix('+').unwrap_or(piece)),
    };
    if body.is_empty() {
        return Err(err());
    }
    let mut term = Term {
        coeff: BigInt::one(),
        x: 0,
        v: 0,
    };
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(err());
        }
        let digits: String = factor.chars().take_while(|c| c.is_ascii_digit()).collect();
        if !digits.is_empty() {
            term.coeff *= digits.parse::<BigInt>().map_err(|_| err())?;
        }
        let rest = &factor[digits.len()..];
        if rest.is_empty() {
            continue;
        }
        let mut chars = rest.chars();
        let var = chars.next().ok_or_else(err)?;
        let tail = chars.as_str();
        let exp: i32 = if tail.is_empty() {
            1
        } else {
            tail.strip_prefix('^')
                .ok_or_else(err)?
                .parse()
                .map_err(|_| err())?
        };
        match var {
            'v' => term.v += exp,
            'x' => term.x += exp,
            _ => return Err(err()),
        }
    }
    if neg {
        term.coeff = -term.coeff;
    }
    Ok(term)
}

/// Element of `A[x, x^-1]` with `A = Z[v, v^-1]`; the value of a parameter on one odd component.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPoly {
    coeffs: BTreeMap<i32, LaurentPoly>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `x`.
    pub fn x() -> Self {
        Self::term(1, LaurentPoly::one())
    }

    pub fn term(x_exp: i32, c: LaurentPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(x_exp, c);
        p
    }

    fn add_term(&mut self, x_exp: i32, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(x_exp).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&x_exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &LaurentPoly)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients as integers, failing if any coefficient involves `v`.
    pub fn integer_coeffs(&self) -> Result<BTreeMap<i32, BigInt>> {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                c.as_constant().map(|k| (*e, k)).ok_or_else(|| {
                    Error::Parameter(format!("coefficient `{c}` of x^{e} is not an integer"))
                })
            })
            .collect()
    }
}

impl From<LaurentPoly> for XPoly {
    /// Reads a single-variable polynomial as a polynomial in `x` with integer coefficients.
    fn from(p: LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(e, LaurentPoly::constant(c.clone()));
        }
        out
    }
}

impl FromStr for XPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::zero();
        for t in parse_terms(s)? {
            out.add_term(t.x, LaurentPoly::monomial(t.coeff, t.v));
        }
        Ok(out)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A parameter value for every odd component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAssignment {
    values: Vec<XPoly>,
}

impl PhiAssignment {
    pub fn new(components: &OddComponents, values: Vec<XPoly>) -> Result<Self> {
        if values.len() != components.len() {
            return Err(Error::Parameter(format!(
                "{} values given for {} odd components",
                values.len(),
                components.len()
            )));
        }
        Ok(Self { values })
    }

    pub fn uniform(components: &OddComponents, value: XPoly) -> Self {
        Self {
            values: vec![value; components.len()],
        }
    }

    /// Parses one polynomial for all components, or a `;`-separated list, one per component.
    pub fn parse(components: &OddComponents, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() == 1 {
            return Ok(Self::uniform(components, text.parse()?));
        }
        let values = parts.iter().map(|p| p.parse()).collect::<Result<Vec<_>>>()?;
        Self::new(components, values)
    }

    pub fn value(&self, component: usize) -> &XPoly {
        &self.values[component]
    }
}

/// A finite set of integers for every odd component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSet {
    values: Vec<BTreeSet<i64>>,
}

impl PhiSet {
    pub fn new(components: &OddComponents, values: Vec<BTreeSet<i64>>) -> Result<Self> {
        if values.len() != components.len() {
            return Err(Error::Parameter(format!(
                "{} sets given for {} odd components",
                values.len(),
                components.len()
            )));
        }
        Ok(Self { values })
    }

    pub fn uniform(components: &OddComponents, set: BTreeSet<i64>) -> Self {
        Self {
            values: vec![set; components.len()],
        }
    }

    /// Parses `{0,1}` for all components, or `{0,1};{1}` per component.
    pub fn parse(components: &OddComponents, text: &str) -> Result<Self> {
        let parse_one = |s: &str| -> Result<BTreeSet<i64>> {
            let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
            inner
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
                .collect()
        };
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() == 1 {
            return Ok(Self::uniform(components, parse_one(text)?));
        }
        let values = parts.iter().map(|p| parse_one(p)).collect::<Result<Vec<_>>>()?;
        Self::new(components, values)
    }

    pub fn value(&self, component: usize) -> &BTreeSet<i64> {
        &self.values[component]
    }
}
