//! Closed-surface bookkeeping.
//!
//! Every closed connected surface is Σ^ℓ_i: the connected sum of a genus-ℓ
//! orientable surface with i ∈ {0,1,2} crosscaps (i = 0 orientable, i = 1 the
//! sum with a projective plane, i = 2 the sum with a Klein bottle). For
//! i ∈ {1,2} the orientable double cover has genus 2ℓ + i − 1, and
//! χ(Σ^ℓ_i) = 2 − 2ℓ − i.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("crosscap count must be 0, 1, or 2 (got {0})")]
    InvalidCross(u8),
}

/// A closed connected surface Σ^ℓ_i with ℓ handles and i ∈ {0,1,2} crosscaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    ell: u32,
    cross: u8,
}

impl Surface {
    pub fn new(ell: u32, cross: u8) -> Result<Self, SurfaceError> {
        if cross > 2 {
            return Err(SurfaceError::InvalidCross(cross));
        }
        Ok(Surface { ell, cross })
    }

    /// The orientable surface of the given genus (ℓ = genus, i = 0).
    pub fn orientable(genus: u32) -> Self {
        Surface { ell: genus, cross: 0 }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn cross(&self) -> u8 {
        self.cross
    }

    pub fn is_orientable(&self) -> bool {
        self.cross == 0
    }

    /// Genus of an orientable surface; `None` when nonorientable.
    pub fn genus(&self) -> Option<u32> {
        self.is_orientable().then_some(self.ell)
    }

    /// Genus 2ℓ + i − 1 of the orientable double cover; `None` when orientable.
    pub fn double_cover_genus(&self) -> Option<u32> {
        (!self.is_orientable()).then(|| 2 * self.ell + u32::from(self.cross) - 1)
    }

    /// χ(Σ^ℓ_i) = 2 − 2ℓ − i.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.ell) - i64::from(self.cross)
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sigma^{}_{}", self.ell, self.cross)
    }
}
