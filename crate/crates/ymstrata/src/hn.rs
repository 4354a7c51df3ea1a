//! Harder–Narasimhan / Yang–Mills stratum types for U(n).
//!
//! A stratum type μ ∈ I_{n,k} is an ordered list of blocks (n_j, k_j) with
//! n = Σ n_j, k = Σ k_j and strictly decreasing slopes
//! k_1/n_1 > k_2/n_2 > … > k_m/n_m (exact rational comparison). Its entry
//! vector repeats each slope n_j times and is weakly decreasing of length n.
//!
//! Over a nonorientable surface only k = 0 occurs, and the types fixed by the
//! flip τ₀(μ_1,…,μ_n) = (−μ_n,…,−μ_1) decompose as μ = (ν, 0^{n0}, τ₀(ν));
//! they split into a zero-block family (n0 > 0, strata on both bundles) and
//! paired families whose bundle sign is forced to (−1)^{n′i+k(ν)}.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::complex::Complex64;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::morse::{codim_orientable, MorseError};
use crate::surface::Surface;

#[derive(Debug, Error, PartialEq)]
pub enum HnError {
    #[error("rank must be positive")]
    InvalidRank,
    #[error("block sizes must be positive")]
    InvalidBlockSize,
    #[error("block slopes must be strictly decreasing (block {0} violates)")]
    SlopesNotDecreasing(usize),
    #[error("nonorientable surfaces only carry degree-0 types (got k = {0})")]
    NonorientableDegree(i64),
    #[error("crosscap count for symmetric enumeration must be 1 or 2 (got {0})")]
    InvalidCrosscap(u8),
    #[error("surface crosscap count {surface} does not match requested i = {requested}")]
    CrosscapMismatch { surface: u8, requested: u8 },
    #[error("type {0} is not fixed by the slope flip")]
    NotSymmetric(String),
    #[error(transparent)]
    Codim(#[from] MorseError),
}

fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A Harder–Narasimhan stratum type: blocks (n_j, k_j) with strictly
/// decreasing slopes. The empty type (rank 0) is allowed so that the positive
/// part ν of a symmetric type can itself be represented.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HNType {
    blocks: Vec<(u32, i64)>,
}

impl HNType {
    pub fn new(blocks: Vec<(u32, i64)>) -> Result<Self, HnError> {
        for (idx, (n, _)) in blocks.iter().enumerate() {
            if *n == 0 {
                return Err(HnError::InvalidBlockSize);
            }
            if idx > 0 {
                let (np, kp) = blocks[idx - 1];
                let (nc, kc) = blocks[idx];
                // k_p/n_p > k_c/n_c  ⟺  k_p·n_c > k_c·n_p (sizes positive)
                if i128::from(kp) * i128::from(nc) <= i128::from(kc) * i128::from(np) {
                    return Err(HnError::SlopesNotDecreasing(idx));
                }
            }
        }
        Ok(HNType { blocks })
    }

    pub fn empty() -> Self {
        HNType { blocks: Vec::new() }
    }

    /// Single-block (semistable) type of the given rank and degree.
    pub fn single(n: u32, k: i64) -> Result<Self, HnError> {
        Self::new(vec![(n, k)])
    }

    pub fn blocks(&self) -> &[(u32, i64)] {
        &self.blocks
    }

    pub fn rank(&self) -> u32 {
        self.blocks.iter().map(|(n, _)| *n).sum()
    }

    pub fn degree(&self) -> i64 {
        self.blocks.iter().map(|(_, k)| *k).sum()
    }

    /// A type is semistable exactly when it has at most one block.
    pub fn is_semistable(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// The weakly decreasing entry vector (μ_1, …, μ_n), slope k_j/n_j
    /// repeated n_j times.
    pub fn entries(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.rank() as usize);
        for (n, k) in &self.blocks {
            let slope = big_ratio(*k, i64::from(*n));
            for _ in 0..*n {
                out.push(slope.clone());
            }
        }
        out
    }

    /// Slope flip (μ_1,…,μ_n) ↦ (−μ_n,…,−μ_1): reverse the blocks and negate
    /// each degree.
    pub fn tau0(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .rev()
            .map(|(n, k)| (*n, -*k))
            .collect();
        HNType { blocks }
    }

    /// Diagonal curvature values −2π√−1·μ_α (length n, block-constant).
    pub fn x_mu(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.rank() as usize);
        for (n, k) in &self.blocks {
            let v = -2.0 * std::f64::consts::PI * (*k as f64) / (f64::from(*n));
            for _ in 0..*n {
                out.push(Complex64::new(0.0, v));
            }
        }
        out
    }

    /// Power sums (Σμ_α, Σμ_α², …, Σμ_αⁿ) in exact rationals; distinct types
    /// of the same rank have distinct power-sum vectors.
    pub fn separating_invariant(&self) -> Vec<BigRational> {
        let entries = self.entries();
        let n = entries.len();
        let mut out = Vec::with_capacity(n);
        let mut powers: Vec<BigRational> = vec![BigRational::one(); n];
        for _ in 0..n {
            let mut sum = BigRational::zero();
            for (p, e) in powers.iter_mut().zip(entries.iter()) {
                *p *= e;
                sum += &*p;
            }
            out.push(sum);
        }
        out
    }
}

impl std::fmt::Display for HNType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let entries: Vec<String> = self.entries().iter().map(|e| e.to_string()).collect();
        write!(f, "({})", entries.join(", "))
    }
}

/// Classification of a τ₀-fixed degree-0 type over Σ^ℓ_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SymClass {
    /// Some entry is zero (n0 > 0); the stratum exists on both bundles.
    ZeroBlock,
    /// n0 = 0 and n′·i + k(ν) is even; the stratum lives on the + bundle.
    PairedPlus,
    /// n0 = 0 and n′·i + k(ν) is odd; the stratum lives on the − bundle.
    PairedMinus,
}

/// A τ₀-fixed type μ = (ν, 0^{n0}, τ₀(ν)) together with its component
/// classification for a fixed crosscap count i ∈ {1,2}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricTypeClass {
    mu: HNType,
    nu: HNType,
    n0: u32,
    n_prime: u32,
    cross: u8,
    classification: SymClass,
}

impl SymmetricTypeClass {
    /// Classify a τ₀-fixed, degree-0 type for crosscap count i ∈ {1,2}.
    pub fn classify(mu: &HNType, i: u8) -> Result<Self, HnError> {
        if !(1..=2).contains(&i) {
            return Err(HnError::InvalidCrosscap(i));
        }
        if mu.degree() != 0 || mu.tau0() != *mu {
            return Err(HnError::NotSymmetric(mu.to_string()));
        }
        let mut nu_blocks = Vec::new();
        let mut n0 = 0u32;
        for (n, k) in mu.blocks() {
            if *k > 0 {
                nu_blocks.push((*n, *k));
            } else if *k == 0 {
                n0 = *n; // at most one zero-slope block by strict decrease
            }
        }
        let nu = HNType::new(nu_blocks)?;
        let n_prime = nu.rank();
        let classification = if n0 > 0 {
            SymClass::ZeroBlock
        } else {
            let parity = (i64::from(n_prime) * i64::from(i) + nu.degree()).rem_euclid(2);
            if parity == 0 {
                SymClass::PairedPlus
            } else {
                SymClass::PairedMinus
            }
        };
        Ok(SymmetricTypeClass {
            mu: mu.clone(),
            nu,
            n0,
            n_prime,
            cross: i,
            classification,
        })
    }

    pub fn mu(&self) -> &HNType {
        &self.mu
    }

    /// The positive-slope part ν (possibly empty for the flat type).
    pub fn nu(&self) -> &HNType {
        &self.nu
    }

    pub fn n0(&self) -> u32 {
        self.n0
    }

    pub fn n_prime(&self) -> u32 {
        self.n_prime
    }

    /// Crosscap count i the classification was computed for.
    pub fn cross(&self) -> u8 {
        self.cross
    }

    pub fn classification(&self) -> SymClass {
        self.classification
    }

    /// Total degree k of the positive part ν.
    pub fn nu_degree(&self) -> i64 {
        self.nu.degree()
    }

    /// The bundle signs on which this stratum is nonempty: both for a
    /// zero-block type, the forced sign (−1)^{n′i+k} for a paired type.
    pub fn admissible_signs(&self) -> &'static [i8] {
        match self.classification {
            SymClass::ZeroBlock => &[1, -1],
            SymClass::PairedPlus => &[1],
            SymClass::PairedMinus => &[-1],
        }
    }

    /// (−1)^{n′i+k}: the sign pairing the flat factor of a zero-block stratum
    /// (and the forced bundle sign of a paired stratum).
    pub fn parity_sign(&self) -> i8 {
        if (i64::from(self.n_prime) * i64::from(self.cross) + self.nu_degree()).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

fn floor_int(x: &BigRational) -> i64 {
    x.floor().to_integer().to_i64().expect("slope bound fits i64")
}

fn ceil_int(x: &BigRational) -> i64 {
    x.ceil().to_integer().to_i64().expect("slope bound fits i64")
}

/// Largest integer strictly below x.
fn strict_floor_int(x: &BigRational) -> i64 {
    if x.is_integer() {
        floor_int(x) - 1
    } else {
        floor_int(x)
    }
}

fn enumerate_raw(n: u32, k: i64, lo: &BigRational, hi: &BigRational) -> Vec<HNType> {
    fn rec(
        rem_n: u32,
        rem_k: i64,
        prev_slope: Option<BigRational>,
        lo: &BigRational,
        hi: &BigRational,
        blocks: &mut Vec<(u32, i64)>,
        out: &mut Vec<HNType>,
    ) {
        for n1 in 1..=rem_n {
            let n1_big = BigRational::from_integer(BigInt::from(n1));
            let k_lo = ceil_int(&(lo * &n1_big));
            let mut k_hi = floor_int(&(hi * &n1_big));
            if let Some(prev) = &prev_slope {
                k_hi = k_hi.min(strict_floor_int(&(prev * &n1_big)));
            }
            if n1 == rem_n {
                if rem_k >= k_lo && rem_k <= k_hi {
                    blocks.push((n1, rem_k));
                    out.push(HNType { blocks: blocks.clone() });
                    blocks.pop();
                }
                continue;
            }
            for k1 in k_lo..=k_hi {
                let slope = big_ratio(k1, i64::from(n1));
                let rest_n = rem_n - n1;
                let rest_k = rem_k - k1;
                let rest_k_big = BigRational::from_integer(BigInt::from(rest_k));
                let rest_n_big = BigRational::from_integer(BigInt::from(rest_n));
                // remaining slopes lie in [lo, slope): prune infeasible sums
                if rest_k_big >= &rest_n_big * &slope || rest_k_big < &rest_n_big * lo {
                    continue;
                }
                blocks.push((n1, k1));
                rec(rest_n, rest_k, Some(slope), lo, hi, blocks, out);
                blocks.pop();
            }
        }
    }

    let mut out = Vec::new();
    rec(n, k, None, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// All μ ∈ I_{n,k} with stratum codimension ≤ `max_codim`, sorted
/// lexicographically by entry vector. For a nonorientable surface (k must be
/// 0) the bound is the double-cover codimension.
pub fn enumerate_types(
    n: u32,
    k: i64,
    surface: &Surface,
    max_codim: u64,
) -> Result<Vec<HNType>, HnError> {
    if n == 0 {
        return Err(HnError::InvalidRank);
    }
    let genus = match surface.genus() {
        Some(g) => g,
        None => {
            if k != 0 {
                return Err(HnError::NonorientableDegree(k));
            }
            surface.double_cover_genus().expect("nonorientable surface")
        }
    };
    // Any strict pair contributes at least (slope spread − 1) over all pairs,
    // and there are < n² pairs, so |λ_j − k/n| ≤ max_codim + n² on admissible
    // types for every genus ≥ 0.
    let mean = big_ratio(k, i64::from(n));
    let width = BigRational::from_integer(BigInt::from(max_codim) + BigInt::from(n) * BigInt::from(n));
    let lo = &mean - &width;
    let hi = &mean + &width;
    let mut out = Vec::new();
    for mu in enumerate_raw(n, k, &lo, &hi) {
        let d = codim_orientable(&mu, genus)?;
        if d <= max_codim {
            out.push(mu);
        }
    }
    out.sort_by_key(|mu| mu.entries());
    Ok(out)
}

/// All τ₀-fixed μ ∈ I_{n,0} with double-cover codimension ≤ `max_codim`,
/// classified for crosscap count i = surface.cross() ∈ {1,2}. Odd n yields
/// only zero-block classes.
pub fn enumerate_symmetric(
    n: u32,
    i: u8,
    surface: &Surface,
    max_codim: u64,
) -> Result<Vec<SymmetricTypeClass>, HnError> {
    if surface.cross() != i {
        return Err(HnError::CrosscapMismatch { surface: surface.cross(), requested: i });
    }
    if !(1..=2).contains(&i) {
        return Err(HnError::InvalidCrosscap(i));
    }
    let mut out = Vec::new();
    for mu in enumerate_types(n, 0, surface, max_codim)? {
        if mu.tau0() == mu {
            out.push(SymmetricTypeClass::classify(&mu, i)?);
        }
    }
    Ok(out)
}
