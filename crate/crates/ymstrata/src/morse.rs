//! Stratum codimensions, Morse indices, and stratum tables.
//!
//! Over an orientable genus-g surface the stratum of type μ has complex
//! codimension d_μ = Σ_{α<β, μ_α>μ_β} (μ_α − μ_β + g − 1) and Morse index
//! 2d_μ. In block form d_μ = Σ_{j<j′} n_j n_{j′}(λ_j − λ_{j′} + g − 1), whose
//! cross terms n_j n_{j′}(λ_j − λ_{j′}) = k_j n_{j′} − k_{j′} n_j are
//! integers, so d_μ is always an integer.
//!
//! Over Σ^ℓ_i (i crosscaps) the index of the stratum of a symmetric type is
//! the double-cover codimension λ_μ = Σ_{α<β, μ_α>μ_β} (μ_α − μ_β + 2ℓ+i−2),
//! i.e. d_μ computed at the double-cover genus 2ℓ+i−1. When the Euler
//! characteristic is negative, every nonzero λ_μ is at least 2.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hn::{enumerate_symmetric, enumerate_types, HNType, HnError, SymClass};
use crate::surface::Surface;

#[derive(Debug, Error, PartialEq)]
pub enum MorseError {
    #[error("codimension of {mu} at genus {genus} is negative ({value})")]
    NegativeCodim { mu: String, genus: u32, value: i64 },
    #[error("expected a nonorientable surface, got {0}")]
    OrientableSurface(String),
    #[error("nonorientable strata require degree 0 (got {0})")]
    NonzeroDegree(i64),
}

/// Complex codimension d_μ of the orientable stratum at genus g.
pub fn codim_orientable(mu: &HNType, genus: u32) -> Result<u64, MorseError> {
    let blocks = mu.blocks();
    let mut total: i128 = 0;
    for j in 0..blocks.len() {
        for jp in j + 1..blocks.len() {
            let (nj, kj) = blocks[j];
            let (njp, kjp) = blocks[jp];
            total += i128::from(kj) * i128::from(njp) - i128::from(kjp) * i128::from(nj)
                + i128::from(nj) * i128::from(njp) * (i128::from(genus) - 1);
        }
    }
    if total < 0 {
        return Err(MorseError::NegativeCodim {
            mu: mu.to_string(),
            genus,
            value: total as i64,
        });
    }
    Ok(total as u64)
}

/// Morse index of the orientable stratum: twice its complex codimension.
pub fn index_orientable(mu: &HNType, genus: u32) -> Result<u64, MorseError> {
    Ok(2 * codim_orientable(mu, genus)?)
}

/// Morse index λ_μ of the stratum of a degree-0 type over a nonorientable
/// surface: the codimension of the corresponding stratum over the double
/// cover (genus 2ℓ + i − 1).
pub fn codim_nonorientable(mu: &HNType, surface: &Surface) -> Result<u64, MorseError> {
    let cover = surface
        .double_cover_genus()
        .ok_or_else(|| MorseError::OrientableSurface(surface.to_string()))?;
    if mu.degree() != 0 {
        return Err(MorseError::NonzeroDegree(mu.degree()));
    }
    codim_orientable(mu, cover)
}

/// One row of a stratum table: the type, its codimension, its Morse index
/// (the exponent of t it contributes), and — over a nonorientable surface —
/// its component classification and the bundle signs on which it is nonempty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub mu: HNType,
    pub entries: Vec<String>,
    pub codim: u64,
    pub morse_index: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<SymClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
}

fn entry_strings(mu: &HNType) -> Vec<String> {
    mu.entries().iter().map(|e| e.to_string()).collect()
}

/// The stratum table up to the given codimension bound, sorted by entry
/// vector. Orientable surfaces list all types of I_{n,k}; nonorientable
/// surfaces (k must be 0) list the τ₀-fixed types with classification and
/// admissible bundle signs.
pub fn strata_table(
    n: u32,
    k: i64,
    surface: &Surface,
    max_codim: u64,
) -> Result<Vec<StratumRecord>, HnError> {
    let mut out = Vec::new();
    if let Some(genus) = surface.genus() {
        for mu in enumerate_types(n, k, surface, max_codim)? {
            let d = codim_orientable(&mu, genus)?;
            out.push(StratumRecord {
                entries: entry_strings(&mu),
                codim: d,
                morse_index: 2 * d,
                classification: None,
                signs: None,
                mu,
            });
        }
    } else {
        if k != 0 {
            return Err(HnError::NonorientableDegree(k));
        }
        for cls in enumerate_symmetric(n, surface.cross(), surface, max_codim)? {
            let lambda = codim_nonorientable(cls.mu(), surface)?;
            out.push(StratumRecord {
                mu: cls.mu().clone(),
                entries: entry_strings(cls.mu()),
                codim: lambda,
                morse_index: lambda,
                classification: Some(cls.classification()),
                signs: Some(cls.admissible_signs().to_vec()),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;
    use num::{BigInt, Signed, Zero};

    fn ty(blocks: &[(u32, i64)]) -> HNType {
        HNType::new(blocks.to_vec()).unwrap()
    }

    #[test]
    fn codim_examples() {
        // semistable strata are open
        assert_eq!(codim_orientable(&ty(&[(2, 1)]), 2).unwrap(), 0);
        assert_eq!(codim_orientable(&ty(&[(3, 0)]), 5).unwrap(), 0);
        // (1,−1) at genus 2: 1 − (−1) + 1 = 3
        assert_eq!(codim_orientable(&ty(&[(1, 1), (1, -1)]), 2).unwrap(), 3);
        // (2,−2) at genus 2: 4 + 1 = 5
        assert_eq!(codim_orientable(&ty(&[(1, 2), (1, -2)]), 2).unwrap(), 5);
        // (1, 1/2, 1/2) at genus 2: two pairs of (1/2 + 1) = 3
        assert_eq!(codim_orientable(&ty(&[(1, 1), (2, 1)]), 2).unwrap(), 3);
        // index doubles the codimension
        assert_eq!(index_orientable(&ty(&[(1, 1), (1, -1)]), 2).unwrap(), 6);
    }

    #[test]
    fn codim_matches_entrywise_rational_sum() {
        // oracle: sum μ_α − μ_β + g − 1 over strict pairs in exact rationals
        let cases = [
            (ty(&[(1, 3), (2, 1), (1, -2)]), 2u32),
            (ty(&[(2, 3), (3, 1)]), 3),
            (ty(&[(1, 1), (1, 0), (1, -1)]), 4),
            (ty(&[(4, 2), (1, -5)]), 2),
        ];
        for (mu, g) in cases {
            let entries = mu.entries();
            let mut sum = BigRational::zero();
            for a in 0..entries.len() {
                for b in a + 1..entries.len() {
                    if entries[a] > entries[b] {
                        sum += &entries[a] - &entries[b]
                            + BigRational::from_integer(BigInt::from(g) - BigInt::from(1));
                    }
                }
            }
            assert!(sum.is_integer(), "codimension of {mu} not integral");
            assert!(!sum.is_negative());
            let expect: u64 = sum.to_integer().try_into().unwrap();
            assert_eq!(codim_orientable(&mu, g).unwrap(), expect, "mismatch for {mu}");
        }
    }

    #[test]
    fn codim_negative_is_error() {
        // genus 0, slopes 1/2 > 1/3: 6·(1/6 − 1) = −5
        let mu = ty(&[(2, 1), (3, 1)]);
        assert_eq!(
            codim_orientable(&mu, 0),
            Err(MorseError::NegativeCodim { mu: mu.to_string(), genus: 0, value: -5 })
        );
    }

    #[test]
    fn nonorientable_codim_examples() {
        // Σ¹₁: double cover genus 2, constant 2ℓ+i−2 = 1
        let s11 = Surface::new(1, 1).unwrap();
        assert_eq!(codim_nonorientable(&ty(&[(2, 0)]), &s11).unwrap(), 0);
        assert_eq!(codim_nonorientable(&ty(&[(1, 1), (1, -1)]), &s11).unwrap(), 3);
        assert_eq!(codim_nonorientable(&ty(&[(1, 2), (1, -2)]), &s11).unwrap(), 5);
        // Σ¹₂: constant 2
        let s12 = Surface::new(1, 2).unwrap();
        assert_eq!(codim_nonorientable(&ty(&[(1, 1), (1, -1)]), &s12).unwrap(), 4);
        // Klein bottle Σ⁰₂: constant 0
        let kb = Surface::new(0, 2).unwrap();
        assert_eq!(codim_nonorientable(&ty(&[(1, 1), (1, -1)]), &kb).unwrap(), 2);
        // degree must vanish; surface must be nonorientable
        assert!(matches!(
            codim_nonorientable(&ty(&[(1, 1)]), &s11),
            Err(MorseError::NonzeroDegree(1))
        ));
        assert!(matches!(
            codim_nonorientable(&ty(&[(2, 0)]), &Surface::orientable(2)),
            Err(MorseError::OrientableSurface(_))
        ));
    }

    #[test]
    fn nonzero_index_at_least_two_when_chi_negative() {
        for (ell, i) in [(1u32, 1u8), (1, 2), (2, 1), (2, 2), (3, 1)] {
            let surf = Surface::new(ell, i).unwrap();
            assert!(surf.euler_characteristic() < 0);
            for n in 1..=4u32 {
                for cls in enumerate_symmetric(n, i, &surf, 14).unwrap() {
                    let lam = codim_nonorientable(cls.mu(), &surf).unwrap();
                    assert!(lam == 0 || lam >= 2, "λ = {lam} for {} on {surf}", cls.mu());
                }
            }
        }
    }

    #[test]
    fn orientable_table() {
        let surf = Surface::orientable(2);
        let table = strata_table(2, 0, &surf, 6).unwrap();
        let summary: Vec<(String, u64, u64)> = table
            .iter()
            .map(|r| (r.mu.to_string(), r.codim, r.morse_index))
            .collect();
        assert_eq!(
            summary,
            vec![
                ("(0, 0)".to_string(), 0, 0),
                ("(1, -1)".to_string(), 3, 6),
                ("(2, -2)".to_string(), 5, 10),
            ]
        );
        assert!(table.iter().all(|r| r.classification.is_none() && r.signs.is_none()));
        assert_eq!(table[1].entries, vec!["1", "-1"]);
    }

    #[test]
    fn nonorientable_table() {
        let surf = Surface::new(1, 1).unwrap();
        let table = strata_table(2, 0, &surf, 5).unwrap();
        let summary: Vec<(String, u64, Option<SymClass>, Option<Vec<i8>>)> = table
            .iter()
            .map(|r| (r.mu.to_string(), r.morse_index, r.classification, r.signs.clone()))
            .collect();
        assert_eq!(
            summary,
            vec![
                ("(0, 0)".to_string(), 0, Some(SymClass::ZeroBlock), Some(vec![1, -1])),
                ("(1, -1)".to_string(), 3, Some(SymClass::PairedPlus), Some(vec![1])),
                ("(2, -2)".to_string(), 5, Some(SymClass::PairedMinus), Some(vec![-1])),
            ]
        );
        // degree must be zero over a nonorientable surface
        assert!(strata_table(2, 1, &surf, 5).is_err());
    }
}
