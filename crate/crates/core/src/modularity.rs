//! Transparent labels and Verlinde cross-checks.
//!
//! A label `λ` is transparent when its monodromy with every label is
//! trivial; on the S-matrix this reads `S_{λμ} S_{00} = S_{0λ} S_{0μ}` for all
//! `μ`. The data is modular exactly when the vacuum is the only transparent
//! label.

use crate::decomposition::DecompositionGraph;
use crate::engine::dim_blocks;
use crate::error::{Error, Result};
use crate::fusion::Label;
use crate::modular_data::{ModularData, TAU_S};
use crate::surface::Surface;

/// Agreement tolerance between Verlinde genus dimensions and state sums.
pub const TAU_V: f64 = 1e-6;

/// Largest genus accepted by [`cross_check`].
pub const CROSS_CHECK_MAX_GENUS: u32 = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ModularityReport {
    pub transparent_labels: Vec<Label>,
    pub is_modular: bool,
    /// `max_μ |S_{λμ} S_{00} − S_{0λ} S_{0μ}|` for each label `λ`.
    pub deviations: Vec<f64>,
}

pub fn detect_transparent(data: &ModularData) -> ModularityReport {
    let s00 = data.s(Label(0), Label(0));
    let deviations: Vec<f64> = data
        .ring()
        .labels()
        .map(|l| {
            data.ring()
                .labels()
                .map(|m| (data.s(l, m) * s00 - data.s(Label(0), l) * data.s(Label(0), m)).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let transparent_labels: Vec<Label> = deviations
        .iter()
        .enumerate()
        .filter(|(_, &d)| d <= TAU_S)
        .map(|(i, _)| Label(i))
        .collect();
    let is_modular = transparent_labels == [Label::VACUUM];
    ModularityReport {
        transparent_labels,
        is_modular,
        deviations,
    }
}

/// `Σ_λ S_{0λ}^{2−2g}`.
pub fn verlinde_genus_dim(data: &ModularData, genus: u32) -> Result<f64> {
    if !detect_transparent(data).is_modular {
        return Err(Error::NotModular);
    }
    let exponent = 2 - 2 * genus as i32;
    Ok(data
        .ring()
        .labels()
        .map(|l| data.s(Label(0), l).re.powi(exponent))
        .sum())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenusCheck {
    pub genus: u32,
    pub state_sum: u64,
    pub verlinde: f64,
    /// `|verlinde − state_sum|`, before any rounding.
    pub residual: f64,
    pub agree: bool,
}

/// Compares the state sum on the canonical closed decomposition with the
/// Verlinde genus formula for every genus `0..=g_max`.
pub fn cross_check(data: &ModularData, g_max: u32) -> Result<Vec<GenusCheck>> {
    if g_max > CROSS_CHECK_MAX_GENUS {
        return Err(Error::GenusTooLarge {
            genus: g_max,
            max: CROSS_CHECK_MAX_GENUS,
        });
    }
    (0..=g_max)
        .map(|genus| {
            let verlinde = verlinde_genus_dim(data, genus)?;
            let d = DecompositionGraph::canonical(&Surface::standard(genus, 0));
            let state_sum = dim_blocks(data.ring(), &d, &[])?;
            let residual = (verlinde - state_sum as f64).abs();
            let agree = residual <= TAU_V && (verlinde.round() - state_sum as f64).abs() < 0.5;
            Ok(GenusCheck {
                genus,
                state_sum,
                verlinde,
                residual,
                agree,
            })
        })
        .collect()
}
