//! Sparse bivariate polynomials in `x` and `y` with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by `(deg_x, deg_y)` and zero
//! coefficients are never stored, so structural equality is polynomial
//! equality. The canonical text form lists terms by `deg_x` descending and
//! then `deg_y` ascending, e.g. `x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Coefficient;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("unexpected character {found:?} at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error("invalid polynomial JSON: {0}")]
    Json(String),
}

/// Exponent pair `(deg_x, deg_y)`.
pub type Exponents = (u32, u32);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    /// `c * x^dx * y^dy`.
    pub fn monomial(c: C, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(dx, dy, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (dx, dy, c) in terms {
            p.add_term(dx, dy, c);
        }
        p
    }

    /// Adds `c * x^dx * y^dy` in place.
    pub fn add_term(&mut self, dx: u32, dy: u32, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((dx, dy)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> C {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: `deg_x` descending, then `deg_y` ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &C)> + '_ {
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        keys.into_iter().map(move |k| (k.0, k.1, &self.terms[k]))
    }

    /// Multiplies by `x^dx * y^dy`.
    pub fn shift(&self, dx: u32, dy: u32) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dx, b + dy), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut p = Self::zero();
        for (&(a, b), c) in &self.terms {
            p.add_term(a, b, c.clone() * k.clone());
        }
        p
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Evaluates at `(x0, y0)` in any ring the coefficients embed into.
    pub fn evaluate<S>(&self, x0: &S, y0: &S) -> S
    where
        S: Clone + Num + From<C>,
    {
        let mut acc = S::zero();
        for (&(dx, dy), c) in &self.terms {
            let term = S::from(c.clone())
                * num_traits::pow(x0.clone(), dx as usize)
                * num_traits::pow(y0.clone(), dy as usize);
            acc = acc + term;
        }
        acc
    }

    /// Re-expresses the coefficients in another ring.
    pub fn map_coefficients<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(&(a, b), c)| (a, b, f(c))))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.json_terms()).expect("polynomial terms serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json_terms()).expect("polynomial terms serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, PolyParseError> {
        let raw: Vec<JsonTerm> =
            serde_json::from_str(text).map_err(|e| PolyParseError::Json(e.to_string()))?;
        let mut p = Self::zero();
        for t in raw {
            let c = C::from_str(&t.c).map_err(|_| PolyParseError::BadNumber(t.c.clone()))?;
            p.add_term(t.dx, t.dy, c);
        }
        Ok(p)
    }

    fn json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(dx, dy, c)| JsonTerm {
                dx,
                dy,
                c: c.to_string(),
            })
            .collect()
    }
}

impl Polynomial<BigInt> {
    /// Exact rational value at `(x0, y0)`.
    pub fn evaluate_rational(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        self.evaluate(x0, y0)
    }

    pub fn evaluate_int(&self, x0: i64, y0: i64) -> BigInt {
        self.evaluate(&BigInt::from(x0), &BigInt::from(y0))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    dx: u32,
    dy: u32,
    c: String,
}

impl<C: Coefficient> Add<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(mut self, rhs: Polynomial<C>) -> Polynomial<C> {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> AddAssign<&Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, rhs: &Polynomial<C>) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl<C: Coefficient> Sub<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for Polynomial<C> {
    fn one() -> Self {
        Polynomial::one()
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, var: char, deg: u32) -> fmt::Result {
    match deg {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        d => write!(f, "{var}^{d}"),
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (dx, dy, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() || (dx == 0 && dy == 0) {
                write!(f, "{mag}")?;
            }
            write_var(f, 'x', dx)?;
            write_var(f, 'y', dy)?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<C: Coefficient> FromStr for Polynomial<C> {
    type Err = PolyParseError;

    /// Accepts the canonical form plus optional `*` between factors and
    /// arbitrary whitespace, e.g. `-3*x^2*y + x - 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        if chars.is_empty() {
            return Err(PolyParseError::Empty);
        }
        let mut pos = 0;
        let mut out = Polynomial::zero();
        let mut first = true;
        while pos < chars.len() {
            let mut negative = false;
            match chars[pos].1 {
                '+' if !first => pos += 1,
                '-' => {
                    negative = true;
                    pos += 1;
                }
                _ if first => {}
                c => {
                    return Err(PolyParseError::Unexpected {
                        found: c,
                        offset: chars[pos].0,
                    })
                }
            }
            first = false;
            let (c, dx, dy, next) = parse_term::<C>(&chars, pos)?;
            pos = next;
            out.add_term(dx, dy, if negative { -c } else { c });
        }
        Ok(out)
    }
}

fn parse_digits(chars: &[(usize, char)], mut pos: usize) -> (String, usize) {
    let mut digits = String::new();
    while pos < chars.len() && chars[pos].1.is_ascii_digit() {
        digits.push(chars[pos].1);
        pos += 1;
    }
    (digits, pos)
}

fn parse_term<C: Coefficient>(
    chars: &[(usize, char)],
    mut pos: usize,
) -> Result<(C, u32, u32, usize), PolyParseError> {
    let (digits, next) = parse_digits(chars, pos);
    let mut seen = false;
    let coeff = if digits.is_empty() {
        C::one()
    } else {
        seen = true;
        pos = next;
        C::from_str(&digits).map_err(|_| PolyParseError::BadNumber(digits.clone()))?
    };
    let (mut dx, mut dy) = (0u32, 0u32);
    loop {
        if pos < chars.len() && chars[pos].1 == '*' && seen {
            pos += 1;
        }
        let Some(&(offset, var)) = chars.get(pos) else {
            break;
        };
        if var != 'x' && var != 'y' {
            if matches!(var, '+' | '-') && seen {
                break;
            }
            return Err(PolyParseError::Unexpected { found: var, offset });
        }
        pos += 1;
        let mut deg = 1u32;
        if pos < chars.len() && chars[pos].1 == '^' {
            let (d, next) = parse_digits(chars, pos + 1);
            if d.is_empty() {
                let (offset, found) = chars.get(pos + 1).copied().unwrap_or((offset, '^'));
                return Err(PolyParseError::Unexpected { found, offset });
            }
            deg = d
                .parse()
                .map_err(|_| PolyParseError::BadNumber(d.clone()))?;
            pos = next;
        }
        if var == 'x' {
            dx += deg;
        } else {
            dy += deg;
        }
        seen = true;
    }
    if !seen {
        let (offset, found) = chars.get(pos).copied().unwrap_or((0, ' '));
        return Err(PolyParseError::Unexpected { found, offset });
    }
    Ok((coeff, dx, dy, pos))
}
