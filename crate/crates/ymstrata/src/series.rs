//! Truncated power series in t with exact rational coefficients.
//!
//! A `TruncatedSeries` of degree D stores coefficients c_0, …, c_D exactly
//! (arbitrary-precision rationals). Binary operations truncate to the smaller
//! degree of the two operands. Division requires the divisor to have a
//! nonzero constant term.
//!
//! `FactoredRational` represents products of integer constants and binomial
//! factors (1 ± t^a)^b, optionally divided by another such product, e.g.
//! `(1+t)^4 / (1-t^2)^2`. It parses from and prints to that textual form and
//! expands to a `TruncatedSeries` of any requested degree.
//!
//! Text rendering of a series follows the fixed shape
//! `c0 + c1*t + c2*t^2 + ... + O(t^{D+1})` (every coefficient present, zeros
//! included); JSON rendering is an object with the degree and the
//! coefficients as decimal strings.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("division requires a nonzero constant term in the divisor")]
    NonUnitDivisor,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("series is not a Poincare polynomial truncation: {0}")]
    NotPoincare(String),
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Power series truncated at a fixed degree, with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>, // length degree + 1
}

impl TruncatedSeries {
    pub fn zero(degree: u64) -> Self {
        TruncatedSeries { coeffs: vec![BigRational::zero(); degree as usize + 1] }
    }

    pub fn one(degree: u64) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Series with the given low-order coefficients (padded with zeros up to
    /// `degree`, truncated if longer).
    pub fn from_coeffs(degree: u64, coeffs: &[BigRational]) -> Self {
        let mut s = Self::zero(degree);
        for (i, c) in coeffs.iter().enumerate().take(degree as usize + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn from_ints(degree: u64, coeffs: &[i64]) -> Self {
        let rats: Vec<BigRational> = coeffs.iter().map(|&c| int(c)).collect();
        Self::from_coeffs(degree, &rats)
    }

    pub fn degree(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeff(&self, i: u64) -> &BigRational {
        &self.coeffs[i as usize]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncated(&self, degree: u64) -> Self {
        let d = degree.min(self.degree());
        TruncatedSeries { coeffs: self.coeffs[..=d as usize].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree()) as usize;
        let coeffs = (0..=d).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree()) as usize;
        let coeffs = (0..=d).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree()) as usize;
        let mut coeffs = vec![BigRational::zero(); d + 1];
        for i in 0..=d {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(d - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Long division; the divisor's constant term must be nonzero.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.coeffs[0].is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let d = self.degree().min(other.degree()) as usize;
        let mut q = vec![BigRational::zero(); d + 1];
        for i in 0..=d {
            let mut acc = self.coeffs[i].clone();
            for j in 0..i {
                acc -= &q[j] * &other.coeffs[i - j];
            }
            q[i] = acc / &other.coeffs[0];
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.degree());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// The series t^offset · self, re-truncated at `target_degree`.
    pub fn shifted_into(&self, offset: u64, target_degree: u64) -> Self {
        let mut out = Self::zero(target_degree);
        for i in 0..=self.degree() {
            let p = offset + i;
            if p > target_degree {
                break;
            }
            out.coeffs[p as usize] = self.coeffs[i as usize].clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Check that this truncation could be an equivariant Poincare series:
    /// constant term 1 and every coefficient a nonnegative integer.
    pub fn validate_poincare(&self) -> Result<(), SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NotPoincare(format!(
                "constant term is {}, expected 1",
                self.coeffs[0]
            )));
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_integer() {
                return Err(SeriesError::NotPoincare(format!(
                    "coefficient of t^{i} is non-integral ({c})"
                )));
            }
            if c.is_negative() {
                return Err(SeriesError::NotPoincare(format!(
                    "coefficient of t^{i} is negative ({c})"
                )));
            }
        }
        Ok(())
    }

    /// Fixed text rendering: `c0 + c1*t + c2*t^2 + ... + O(t^{D+1})`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i == 0 {
                out.push_str(&c.to_string());
                continue;
            }
            if c.is_negative() {
                out.push_str(" - ");
                out.push_str(&term_string(&-c.clone(), i));
            } else {
                out.push_str(" + ");
                out.push_str(&term_string(c, i));
            }
        }
        out.push_str(&format!(" + O(t^{})", self.degree() + 1));
        out
    }

    /// JSON rendering: `{"degree": D, "coefficients": ["c0", "c1", …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree(),
            "coefficients": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn term_string(c: &BigRational, power: usize) -> String {
    let t = if power == 1 { "t".to_string() } else { format!("t^{power}") };
    format!("{c}*{t}")
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// One multiplicative factor of a factored rational function of t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// An integer constant.
    Const(BigInt),
    /// (1 + sign·t^{t_power})^{exponent} with sign ∈ {+1, −1}.
    Binomial { sign: i8, t_power: u32, exponent: u32 },
}

impl Factor {
    fn expand(&self, degree: u64) -> TruncatedSeries {
        match self {
            Factor::Const(c) => {
                let mut s = TruncatedSeries::zero(degree);
                s.coeffs[0] = BigRational::from_integer(c.clone());
                s
            }
            Factor::Binomial { sign, t_power, exponent } => {
                // (1 ± t^a)^b = Σ_j C(b, j) (±1)^j t^{aj}
                let mut s = TruncatedSeries::zero(degree);
                let mut binom = BigInt::one();
                let b = i64::from(*exponent);
                for j in 0..=u64::from(*exponent) {
                    let p = u64::from(*t_power) * j;
                    if p > degree {
                        break;
                    }
                    let signed = if *sign < 0 && j % 2 == 1 { -binom.clone() } else { binom.clone() };
                    s.coeffs[p as usize] = BigRational::from_integer(signed);
                    // C(b, j+1) = C(b, j)·(b − j)/(j + 1)
                    binom = binom * BigInt::from(b - j as i64) / BigInt::from(j as i64 + 1);
                }
                s
            }
        }
    }
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Factor::Const(c) => write!(f, "{c}"),
            Factor::Binomial { sign, t_power, exponent } => {
                let s = if *sign < 0 { '-' } else { '+' };
                let t = if *t_power == 1 { "t".to_string() } else { format!("t^{t_power}") };
                if *exponent == 1 {
                    write!(f, "(1{s}{t})")
                } else {
                    write!(f, "(1{s}{t})^{exponent}")
                }
            }
        }
    }
}

/// A product of factors divided by another product of factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRational {
    pub numer: Vec<Factor>,
    pub denom: Vec<Factor>,
}

impl FactoredRational {
    pub fn new(numer: Vec<Factor>, denom: Vec<Factor>) -> Self {
        FactoredRational { numer, denom }
    }

    pub fn expand(&self, degree: u64) -> Result<TruncatedSeries, SeriesError> {
        let mut num = TruncatedSeries::one(degree);
        for f in &self.numer {
            num = num.mul(&f.expand(degree));
        }
        let mut den = TruncatedSeries::one(degree);
        for f in &self.denom {
            den = den.mul(&f.expand(degree));
        }
        num.div(&den)
    }

    /// Parse expressions like `(1+t)^4 / (1-t^2)^2` or `2 * (1+t)^2`.
    pub fn parse(input: &str) -> Result<Self, SeriesError> {
        Parser { bytes: input.as_bytes(), pos: 0 }.parse_expr()
    }
}

impl std::fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |fs: &[Factor]| fs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" * ");
        if self.numer.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "{}", join(&self.numer))?;
        }
        if !self.denom.is_empty() {
            write!(f, " / {}", join(&self.denom))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SeriesError> {
        Err(SeriesError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), SeriesError> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn parse_uint(&mut self) -> Result<u64, SeriesError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|e| SeriesError::Parse { pos: start, msg: e.to_string() })
    }

    fn parse_expr(&mut self) -> Result<FactoredRational, SeriesError> {
        let numer = self.parse_product()?;
        let denom = if self.eat(b'/') { self.parse_product()? } else { Vec::new() };
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.err("unexpected trailing input");
        }
        Ok(FactoredRational { numer, denom })
    }

    fn parse_product(&mut self) -> Result<Vec<Factor>, SeriesError> {
        let mut out = vec![self.parse_factor()?];
        while self.eat(b'*') {
            out.push(self.parse_factor()?);
        }
        Ok(out)
    }

    fn parse_factor(&mut self) -> Result<Factor, SeriesError> {
        match self.peek() {
            Some(b'(') => {
                self.expect(b'(')?;
                self.skip_ws();
                if self.parse_uint()? != 1 {
                    return self.err("binomial factors start with 1");
                }
                let sign = match self.peek() {
                    Some(b'+') => 1i8,
                    Some(b'-') => -1,
                    _ => return self.err("expected '+' or '-'"),
                };
                self.pos += 1;
                self.skip_ws();
                if self.peek() != Some(b't') {
                    return self.err("expected 't'");
                }
                self.pos += 1;
                let t_power = if self.eat(b'^') { self.parse_uint()? } else { 1 };
                if t_power == 0 {
                    return self.err("t power must be positive");
                }
                self.expect(b')')?;
                let exponent = if self.eat(b'^') { self.parse_uint()? } else { 1 };
                Ok(Factor::Binomial {
                    sign,
                    t_power: u32::try_from(t_power)
                        .map_err(|_| SeriesError::Parse { pos: self.pos, msg: "t power too large".into() })?,
                    exponent: u32::try_from(exponent)
                        .map_err(|_| SeriesError::Parse { pos: self.pos, msg: "exponent too large".into() })?,
                })
            }
            Some(b'-') => {
                self.pos += 1;
                let v = self.parse_uint()?;
                Ok(Factor::Const(-BigInt::from(v)))
            }
            Some(c) if c.is_ascii_digit() => Ok(Factor::Const(BigInt::from(self.parse_uint()?))),
            _ => self.err("expected a factor"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integer coefficient {c}");
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    fn expand(src: &str, degree: u64) -> TruncatedSeries {
        FactoredRational::parse(src).unwrap().expand(degree).unwrap()
    }

    #[test]
    fn expand_binomial_over_binomial() {
        assert_eq!(ints(&expand("(1+t)^4 / (1-t^2)", 4)), vec![1, 4, 7, 8, 8]);
        assert_eq!(ints(&expand("(1-t^2)", 4)), vec![1, 0, -1, 0, 0]);
        assert_eq!(ints(&expand("(1+t)/(1+t)", 3)), vec![1, 0, 0, 0]);
        assert_eq!(ints(&expand("2 * (1+t)^2", 2)), vec![2, 4, 2]);
    }

    #[test]
    fn expand_geometric() {
        assert_eq!(ints(&expand("(1+t)^0 / (1-t^2)", 5)), vec![1, 0, 1, 0, 1, 0]);
        assert_eq!(ints(&expand("1 / (1-t)^2", 4)), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn division_against_multiplication() {
        let a = expand("(1+t)^3", 8);
        let b = expand("(1-t^2)^2 * (1+t^3)", 8);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn division_requires_unit() {
        let t = TruncatedSeries::from_ints(3, &[0, 1]);
        assert_eq!(
            TruncatedSeries::one(3).div(&t),
            Err(SeriesError::NonUnitDivisor)
        );
    }

    #[test]
    fn ops_truncate_to_min_degree() {
        let a = TruncatedSeries::from_ints(5, &[1, 1, 1, 1, 1, 1]);
        let b = TruncatedSeries::from_ints(3, &[1, 2, 3, 4]);
        assert_eq!(a.add(&b).degree(), 3);
        assert_eq!(ints(&a.add(&b)), vec![2, 3, 4, 5]);
        assert_eq!(ints(&a.mul(&b)), vec![1, 3, 6, 10]);
        assert_eq!(ints(&a.sub(&b)), vec![0, -1, -2, -3]);
    }

    #[test]
    fn shift_into_target() {
        let a = TruncatedSeries::from_ints(2, &[1, 2, 3]);
        let s = a.shifted_into(3, 6);
        assert_eq!(ints(&s), vec![0, 0, 0, 1, 2, 3, 0]);
        // offset beyond the target drops everything
        assert!(a.shifted_into(9, 4).is_zero());
    }

    #[test]
    fn text_format() {
        let s = TruncatedSeries::from_ints(4, &[1, 4, 7, 8, 8]);
        assert_eq!(s.to_text(), "1 + 4*t + 7*t^2 + 8*t^3 + 8*t^4 + O(t^5)");
        let z = TruncatedSeries::from_ints(2, &[0, 0, 1]);
        assert_eq!(z.to_text(), "0 + 0*t + 1*t^2 + O(t^3)");
        let neg = TruncatedSeries::from_ints(2, &[1, -3, 0]);
        assert_eq!(neg.to_text(), "1 - 3*t + 0*t^2 + O(t^3)");
    }

    #[test]
    fn json_format() {
        let s = TruncatedSeries::from_ints(2, &[1, 0, 7]);
        assert_eq!(
            s.to_json(),
            serde_json::json!({"degree": 2, "coefficients": ["1", "0", "7"]})
        );
    }

    #[test]
    fn poincare_validation() {
        assert!(TruncatedSeries::from_ints(3, &[1, 0, 2, 5]).validate_poincare().is_ok());
        assert!(TruncatedSeries::from_ints(2, &[2, 0, 1]).validate_poincare().is_err());
        assert!(TruncatedSeries::from_ints(2, &[1, -1, 1]).validate_poincare().is_err());
        let half = TruncatedSeries::from_coeffs(
            1,
            &[BigRational::one(), BigRational::new(BigInt::from(1), BigInt::from(2))],
        );
        assert!(half.validate_poincare().is_err());
    }

    #[test]
    fn parse_round_trip() {
        for src in [
            "(1+t)^4 / (1-t^2)^2",
            "(1+t^3)^2 * (1-t^4) / (1-t^2)^3 * (1+t)",
            "2 * (1+t)^2",
            "1",
        ] {
            let parsed = FactoredRational::parse(src).unwrap();
            let reparsed = FactoredRational::parse(&parsed.to_string()).unwrap();
            assert_eq!(parsed, reparsed);
            assert_eq!(
                parsed.expand(10).unwrap(),
                reparsed.expand(10).unwrap()
            );
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["(2+t)", "(1+t", "t^", "(1+t)^", "(1*t)", "(1+t^0)", "", "(1+t) ^ 2 extra"] {
            assert!(FactoredRational::parse(bad).is_err(), "accepted {bad:?}");
        }
    }
}
