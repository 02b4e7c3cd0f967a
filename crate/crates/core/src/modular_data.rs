//! S-matrices attached to fusion rings.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fusion::{FusionRing, FusionTensor, Label};

/// Tolerance for every floating-point S-matrix identity.
pub const TAU_S: f64 = 1e-9;

/// A fusion ring together with a symmetric S-matrix whose vacuum row is
/// strictly positive.
///
/// Unitarity is not enforced at construction: premodular examples such as a
/// symmetric `Z/2` carry a degenerate S̃ and must still be representable so
/// that the transparency test can reject them. Use [`ModularData::unitarity_defect`]
/// or [`ModularData::is_unitary`] where unitarity matters.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularData {
    ring: FusionRing,
    s: Vec<Complex64>,
}

/// Result of reconstructing fusion rules from an S-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct VerlindeReconstruction {
    pub tensor: FusionTensor,
    /// `|value - round(value)|` per `(a, b, c)` entry, row-major.
    pub residuals: Vec<f64>,
}

impl VerlindeReconstruction {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

impl ModularData {
    /// `s` is row-major with `rank²` entries.
    pub fn new(ring: FusionRing, s: Vec<Complex64>) -> Result<Self> {
        let r = ring.rank();
        if s.len() != r * r {
            return Err(Error::InvalidModularData(format!(
                "S-matrix has {} entries, expected {}",
                s.len(),
                r * r
            )));
        }
        let report = ring.validate();
        if !report.is_empty() {
            return Err(Error::InvalidRing(report));
        }
        for a in 0..r {
            for b in (a + 1)..r {
                if (s[a * r + b] - s[b * r + a]).norm() > TAU_S {
                    return Err(Error::InvalidModularData(format!(
                        "S-matrix is not symmetric at ({a}, {b})"
                    )));
                }
            }
        }
        for (l, v) in s[..r].iter().enumerate() {
            if v.im.abs() > TAU_S || v.re <= TAU_S {
                return Err(Error::InvalidModularData(format!(
                    "S[0][{l}] = {v} is not strictly positive"
                )));
            }
        }
        Ok(ModularData { ring, s })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    #[inline]
    pub fn s(&self, a: Label, b: Label) -> Complex64 {
        self.s[a.0 * self.rank() + b.0]
    }

    pub fn s_entries(&self) -> &[Complex64] {
        &self.s
    }

    /// `max |S S† - I|` over all entries.
    pub fn unitarity_defect(&self) -> f64 {
        let r = self.rank();
        let mut worst: f64 = 0.0;
        for a in 0..r {
            for b in 0..r {
                let dot: Complex64 = (0..r).map(|k| self.s[a * r + k] * self.s[b * r + k].conj()).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() <= TAU_S
    }

    /// `d_λ = S_{0λ} / S_{00}`.
    pub fn quantum_dims(&self) -> Vec<f64> {
        let s00 = self.s[0].re;
        self.s[..self.rank()].iter().map(|v| v.re / s00).collect()
    }

    /// Fusion rules reconstructed by the Verlinde formula
    /// `N_{ab}^c = Σ_ρ S_{aρ} S_{bρ} conj(S_{cρ}) / S_{0ρ}`.
    pub fn verlinde_from_s(&self) -> Result<VerlindeReconstruction> {
        let defect = self.unitarity_defect();
        if defect > TAU_S {
            return Err(Error::NotUnitary { defect });
        }
        let r = self.rank();
        let s = &self.s;
        let mut tensor = FusionTensor::zeros(r);
        let mut residuals = vec![0.0; r * r * r];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let value: Complex64 = (0..r)
                        .map(|k| s[a * r + k] * s[b * r + k] * s[c * r + k].conj() / s[k])
                        .sum();
                    let rounded = value.re.round();
                    let residual = (value - rounded).norm();
                    if residual > TAU_S || rounded < 0.0 {
                        return Err(Error::ResidualTooLarge { a, b, c, residual });
                    }
                    tensor.set(a, b, c, rounded as u64);
                    residuals[(a * r + b) * r + c] = residual;
                }
            }
        }
        Ok(VerlindeReconstruction { tensor, residuals })
    }
}
