//! Truncated power series in `t` with exact coefficients, and the expression
//! grammar used for ring generators.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A power series known modulo `t^precision`, stored sparsely.
///
/// Invariants: exponents strictly increasing, all `< precision`, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    field: Field,
    terms: Vec<(u32, Scalar)>,
    precision: u32,
}

impl TruncatedSeries {
    pub fn zero(field: Field, precision: u32) -> Self {
        TruncatedSeries {
            field,
            terms: Vec::new(),
            precision,
        }
    }

    pub fn one(field: Field, precision: u32) -> Self {
        Self::monomial(field, field.one(), 0, precision)
    }

    /// `coeff * t^exp`, zero if `exp >= precision`.
    pub fn monomial(field: Field, coeff: Scalar, exp: u32, precision: u32) -> Self {
        let mut s = Self::zero(field, precision);
        if exp < precision && !coeff.is_zero() {
            s.terms.push((exp, coeff));
        }
        s
    }

    /// Builds a series from arbitrary `(exponent, coefficient)` pairs;
    /// duplicate exponents are summed, terms at or above `precision` dropped.
    pub fn from_terms(
        field: Field,
        terms: impl IntoIterator<Item = (u32, Scalar)>,
        precision: u32,
    ) -> Self {
        let mut v: Vec<(u32, Scalar)> = terms.into_iter().filter(|(k, _)| *k < precision).collect();
        v.sort_by_key(|(k, _)| *k);
        let mut out: Vec<(u32, Scalar)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = lc.add(&c),
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        TruncatedSeries {
            field,
            terms: out,
            precision,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn terms(&self) -> &[(u32, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent with a nonzero coefficient; `None` means order `>= precision`.
    pub fn order(&self) -> Option<u32> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest exponent present (degree of the stored polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn coefficient(&self, exp: u32) -> Option<&Scalar> {
        self.terms
            .binary_search_by_key(&exp, |(k, _)| *k)
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Reduces the known precision; never increases it.
    pub fn truncate(&self, precision: u32) -> Self {
        let p = precision.min(self.precision);
        TruncatedSeries {
            field: self.field,
            terms: self.terms.iter().filter(|(k, _)| *k < p).cloned().collect(),
            precision: p,
        }
    }

    /// Reinterprets the stored terms as an exact polynomial known to `precision`.
    ///
    /// Only sound when the caller knows the stored polynomial itself is the
    /// element of interest (e.g. a truncation that remains in an ideal
    /// containing `t^{self.precision} k[[t]]`).
    pub fn lift(&self, precision: u32) -> Self {
        let mut s = self.truncate(precision);
        s.precision = precision;
        s
    }

    pub fn check_field(&self, other: &TruncatedSeries) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.label(), other.field.label()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.precision);
        }
        TruncatedSeries {
            field: self.field,
            terms: self.terms.iter().map(|(k, a)| (*k, a.mul(c))).collect(),
            precision: self.precision,
        }
    }

    /// Normalizes to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        TruncatedSeries {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            precision: self.precision + k,
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.combine(other, &self.field.one()))
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.combine(other, &self.field.one().neg()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.one().neg())
    }

    /// `self + lambda * other`, precision the minimum of both.
    pub(crate) fn combine(&self, other: &TruncatedSeries, lambda: &Scalar) -> Self {
        let p = self.precision.min(other.precision);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ka = a.get(i).map(|t| t.0).unwrap_or(u32::MAX);
            let kb = b.get(j).map(|t| t.0).unwrap_or(u32::MAX);
            let (k, c) = if ka < kb {
                i += 1;
                (ka, a[i - 1].1.clone())
            } else if kb < ka {
                j += 1;
                (kb, b[j - 1].1.mul(lambda))
            } else {
                i += 1;
                j += 1;
                (ka, a[i - 1].1.add(&b[j - 1].1.mul(lambda)))
            };
            if k >= p {
                break;
            }
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        TruncatedSeries {
            field: self.field,
            terms: out,
            precision: p,
        }
    }

    /// Exact product. The result is known modulo
    /// `t^min(N_a + ord b, N_b + ord a)`.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<Self> {
        self.check_field(other)?;
        let p = match (self.order(), other.order()) {
            (Some(oa), Some(ob)) => (self.precision + ob).min(other.precision + oa),
            (None, Some(ob)) => self.precision + ob,
            (Some(oa), None) => other.precision + oa,
            (None, None) => self.precision + other.precision,
        };
        let mut prod: Vec<(u32, Scalar)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if ka + kb < p {
                    prod.push((ka + kb, ca.mul(cb)));
                }
            }
        }
        Ok(Self::from_terms(self.field, prod, p))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.field, self.precision.max(1));
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Quotient `self / other` in `k[[t]]`. Fails when `other` is zero or the
    /// quotient would have negative order.
    pub fn div(&self, other: &TruncatedSeries) -> Result<Self> {
        self.check_field(other)?;
        let k = other.order().ok_or(Error::ZeroElement)?;
        if let Some(o) = self.order() {
            if o < k {
                return Err(Error::Unsupported(format!(
                    "series of order {o} is not divisible by one of order {k}"
                )));
            }
        }
        if self.precision < k {
            return Err(Error::Precision {
                needed: k,
                available: self.precision,
            });
        }
        let num_prec = self.precision - k;
        let unit_prec = other.precision - k;
        let p = match self.order() {
            Some(o) => num_prec.min(unit_prec + (o - k)),
            None => num_prec,
        };
        // long division on the shifted unit
        let lead_inv = other.leading_coefficient().unwrap().inv();
        let mut rem: Vec<Scalar> = vec![self.field.zero(); p as usize];
        for (e, c) in &self.terms {
            if *e >= k && e - k < p {
                rem[(e - k) as usize] = c.clone();
            }
        }
        let unit: Vec<(u32, Scalar)> = other
            .terms
            .iter()
            .map(|(e, c)| (e - k, c.clone()))
            .collect();
        let mut quot = Vec::new();
        for n in 0..p {
            let c = rem[n as usize].clone();
            if c.is_zero() {
                continue;
            }
            let q = c.mul(&lead_inv);
            for (ue, uc) in &unit {
                let idx = n + ue;
                if idx >= p {
                    break;
                }
                rem[idx as usize] = rem[idx as usize].sub(&q.mul(uc));
            }
            quot.push((n, q));
        }
        Ok(TruncatedSeries {
            field: self.field,
            terms: quot,
            precision: p,
        })
    }

    /// Clears denominators and maps a rational series into GF(p).
    /// Returns `None` when some coefficient's denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<TruncatedSeries> {
        let target = Field::Prime(p);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let (n, d) = c.as_fraction()?;
            terms.push((*k, target.from_fraction(&n, &d).ok()?));
        }
        Some(Self::from_terms(target, terms, self.precision))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if *k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

/// Parses `term (("+"|"-") term)*` where a term is `[coeff "*"] "t" ["^" nat]`
/// or a bare `coeff`, and `coeff` is an integer or `a/b`. Coefficients are
/// reduced into `field`; exponents must lie below `precision`.
pub fn parse_series(text: &str, field: Field, precision: u32) -> Result<TruncatedSeries> {
    if precision == 0 {
        return Err(Error::Parse("precision must be positive".into()));
    }
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    p.skip_ws();
    let mut sign = 1i32;
    if p.eat(b'-') {
        sign = -1;
    } else {
        p.eat(b'+');
    }
    loop {
        let (num, den, exp) = p.term()?;
        if exp >= precision {
            return Err(Error::Parse(format!(
                "exponent {exp} is not below the working precision {precision}"
            )));
        }
        let num = if sign < 0 { -num } else { num };
        terms.push((exp, field.from_fraction(&num, &den)?));
        p.skip_ws();
        if p.at_end() {
            break;
        }
        sign = if p.eat(b'+') {
            1
        } else if p.eat(b'-') {
            -1
        } else {
            return Err(p.error("expected '+' or '-'"));
        };
    }
    Ok(TruncatedSeries::from_terms(field, terms, precision))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(digits.parse::<BigInt>().unwrap())
    }

    /// Returns `(numerator, denominator, exponent)`.
    fn term(&mut self) -> Result<(BigInt, BigInt, u32)> {
        self.skip_ws();
        let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
        let mut has_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            num = self.natural()?;
            if self.eat(b'/') {
                den = self.natural()?;
            }
            has_coeff = true;
            if !self.eat(b'*') {
                return Ok((num, den, 0));
            }
        }
        self.skip_ws();
        if self.peek() != Some(b't') {
            return Err(self.error(if has_coeff {
                "expected 't' after '*'"
            } else {
                "expected a coefficient or 't'"
            }));
        }
        self.pos += 1;
        let exp = if self.eat(b'^') {
            let n = self.natural()?;
            u32::try_from(n).map_err(|_| self.error("exponent too large"))?
        } else {
            1
        };
        Ok((num, den, exp))
    }
}
