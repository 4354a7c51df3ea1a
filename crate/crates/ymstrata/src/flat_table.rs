//! Table of flat-moduli series factors for zero-slope blocks.
//!
//! The series attached to a zero-block stratum over Σ^ℓ_i factors through the
//! Poincare series of a flat U(n0) moduli space on the appropriate bundle
//! component. The rank-1 factor is built in: (1+t)^{2ℓ+i−1} / (1−t²), the
//! same on both components. Higher-rank factors are not computed here; they
//! may be supplied externally through a table file, and a missing entry makes
//! the dependent stratum series explicitly unknown rather than silently
//! wrong.
//!
//! Table file format: one record per line; `#` starts a comment. A record is
//!
//! ```text
//! n0 ell i sign poly: c0 c1 c2 …
//! n0 ell i sign rat: (1+t)^4 / (1-t^2)^2
//! ```
//!
//! with sign `+1` or `-1`, `poly:` followed by integer coefficients from
//! degree 0 upward, and `rat:` followed by a factored rational function.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num::bigint::BigInt;
use num::rational::BigRational;
use thiserror::Error;

use crate::series::{Factor, FactoredRational, SeriesError, TruncatedSeries};

#[derive(Debug, Error)]
pub enum FlatTableError {
    #[error("failed to read flat table: {0}")]
    Io(#[from] std::io::Error),
    #[error("flat table line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("flat table line {line}: duplicate entry for {key}")]
    Duplicate { line: usize, key: FlatKey },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Identifies one flat-moduli factor: rank n0 over Σ^ℓ_i on the component of
/// the given sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct FlatKey {
    pub n0: u32,
    pub ell: u32,
    pub i: u8,
    pub sign: i8,
}

impl fmt::Display for FlatKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign >= 0 { "+1" } else { "-1" };
        write!(f, "(n0={}, ell={}, i={}, sign={s})", self.n0, self.ell, self.i)
    }
}

/// A stored series: either a genuine polynomial (exact at every degree) or a
/// factored rational function expanded on demand.
#[derive(Debug, Clone, PartialEq)]
pub enum FlatEntry {
    Poly(Vec<BigInt>),
    Rat(FactoredRational),
}

impl FlatEntry {
    pub fn expand(&self, degree: u64) -> Result<TruncatedSeries, SeriesError> {
        match self {
            FlatEntry::Poly(coeffs) => {
                let rats: Vec<BigRational> =
                    coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
                Ok(TruncatedSeries::from_coeffs(degree, &rats))
            }
            FlatEntry::Rat(fr) => fr.expand(degree),
        }
    }
}

/// Flat-series lookup: explicit file entries first, then the built-in rank-1
/// factor; anything else is `None` (unknown).
#[derive(Debug, Default)]
pub struct FlatSeriesTable {
    entries: HashMap<FlatKey, FlatEntry>,
}

impl FlatSeriesTable {
    /// Table with only the built-in rank-1 factor.
    pub fn builtin() -> Self {
        FlatSeriesTable::default()
    }

    pub fn load_path(path: &Path) -> Result<Self, FlatTableError> {
        let mut table = Self::builtin();
        table.extend_from_str(&std::fs::read_to_string(path)?)?;
        Ok(table)
    }

    pub fn extend_from_str(&mut self, text: &str) -> Result<(), FlatTableError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, entry) = parse_record(body, line)?;
            if self.entries.contains_key(&key) {
                return Err(FlatTableError::Duplicate { line, key });
            }
            self.entries.insert(key, entry);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The series for a key at the requested degree, if known. Explicit
    /// entries win over the built-in rank-1 factor.
    pub fn series(&self, key: &FlatKey, degree: u64) -> Result<Option<TruncatedSeries>, FlatTableError> {
        if let Some(entry) = self.entries.get(key) {
            return Ok(Some(entry.expand(degree)?));
        }
        if key.n0 == 1 && (key.sign == 1 || key.sign == -1) {
            // (1+t)^{2ℓ+i−1} / (1−t²) on both components
            let e = 2 * key.ell + u32::from(key.i) - 1;
            let fr = FactoredRational::new(
                vec![Factor::Binomial { sign: 1, t_power: 1, exponent: e }],
                vec![Factor::Binomial { sign: -1, t_power: 2, exponent: 1 }],
            );
            return Ok(Some(fr.expand(degree)?));
        }
        Ok(None)
    }

    pub fn knows(&self, key: &FlatKey) -> bool {
        self.entries.contains_key(key) || (key.n0 == 1 && (key.sign == 1 || key.sign == -1))
    }
}

fn parse_record(body: &str, line: usize) -> Result<(FlatKey, FlatEntry), FlatTableError> {
    let perr = |msg: String| FlatTableError::Parse { line, msg };
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() < 5 {
        return Err(perr("expected: n0 ell i sign poly:|rat: …".into()));
    }
    let n0: u32 = tokens[0].parse().map_err(|e| perr(format!("bad n0: {e}")))?;
    if n0 == 0 {
        return Err(perr("n0 must be positive".into()));
    }
    let ell: u32 = tokens[1].parse().map_err(|e| perr(format!("bad ell: {e}")))?;
    let i: u8 = tokens[2].parse().map_err(|e| perr(format!("bad i: {e}")))?;
    if !(1..=2).contains(&i) {
        return Err(perr(format!("i must be 1 or 2, got {i}")));
    }
    let sign: i8 = tokens[3].parse().map_err(|e| perr(format!("bad sign: {e}")))?;
    if sign != 1 && sign != -1 {
        return Err(perr(format!("sign must be +1 or -1, got {sign}")));
    }
    let key = FlatKey { n0, ell, i, sign };
    let rest = tokens[5..].join(" ");
    let entry = match tokens[4] {
        "poly:" => {
            if tokens.len() == 5 {
                return Err(perr("poly: needs at least one coefficient".into()));
            }
            let mut coeffs = Vec::new();
            for tok in &tokens[5..] {
                coeffs.push(
                    tok.parse::<BigInt>()
                        .map_err(|e| perr(format!("bad coefficient {tok:?}: {e}")))?,
                );
            }
            FlatEntry::Poly(coeffs)
        }
        "rat:" => FlatEntry::Rat(
            FactoredRational::parse(&rest).map_err(|e| perr(format!("bad rational: {e}")))?,
        ),
        other => return Err(perr(format!("expected poly: or rat:, got {other:?}"))),
    };
    Ok((key, entry))
}
