//! Standard fusion rings with closed-form S-matrices.
//!
//! Names: `trivial`, `ising`, `fibonacci`, `su2_<k>` (k ≥ 1), `z_<n>`
//! (n ≥ 1) and `z2_boson`, a symmetric (non-modular) `Z/2` whose S̃ has
//! trivial monodromy.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::modular_data::ModularData;

/// The catalog entries exercised by the test and acceptance suites.
pub fn standard_names() -> Vec<String> {
    [
        "trivial",
        "ising",
        "fibonacci",
        "su2_1",
        "su2_2",
        "su2_3",
        "su2_4",
        "z_2",
        "z_3",
        "z_4",
        "z2_boson",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

/// Looks up a catalog entry by name.
pub fn catalog(name: &str) -> Result<ModularData> {
    let unknown = || Error::UnknownCatalogName(name.to_string());
    match name {
        "trivial" => trivial(),
        "ising" => ising(),
        "fibonacci" => fibonacci(),
        "z2_boson" => z2_boson(),
        _ => {
            if let Some(k) = name.strip_prefix("su2_") {
                let k: usize = k.parse().map_err(|_| unknown())?;
                if k == 0 {
                    return Err(unknown());
                }
                su2(k)
            } else if let Some(n) = name.strip_prefix("z_") {
                let n: usize = n.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                cyclic(n)
            } else {
                Err(unknown())
            }
        }
    }
}

fn real(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

fn trivial() -> Result<ModularData> {
    let ring = FusionRing::from_rule(["1"], vec![0], |_, _, _| 1)?;
    ModularData::new(ring, real(&[1.0]))
}

fn ising() -> Result<ModularData> {
    // labels 1, σ, ψ
    let table = |a: usize, b: usize, c: usize| -> u64 {
        let (a, b) = (a.min(b), a.max(b));
        let hit = match (a, b) {
            (0, x) => c == x,
            (1, 1) => c == 0 || c == 2,
            (1, 2) => c == 1,
            (2, 2) => c == 0,
            _ => false,
        };
        u64::from(hit)
    };
    let ring = FusionRing::from_rule(["1", "sigma", "psi"], vec![0, 1, 2], table)?;
    let h = 0.5;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    ModularData::new(ring, real(&[h, r, h, r, 0.0, -r, h, -r, h]))
}

fn fibonacci() -> Result<ModularData> {
    let table = |a: usize, b: usize, c: usize| -> u64 {
        u64::from(match (a, b) {
            (0, x) | (x, 0) => c == x,
            _ => true,
        })
    };
    let ring = FusionRing::from_rule(["1", "tau"], vec![0, 1], table)?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let norm = (2.0 + phi).sqrt();
    ModularData::new(ring, real(&[1.0 / norm, phi / norm, phi / norm, -1.0 / norm]))
}

/// Level-k SU(2): labels are twice the spin, `0..=k`, all self-dual.
fn su2(k: usize) -> Result<ModularData> {
    let names: Vec<String> = (0..=k).map(|a| a.to_string()).collect();
    let table = |a: usize, b: usize, c: usize| -> u64 {
        let lo = a.abs_diff(b);
        let hi = (a + b).min(2 * k - a - b);
        u64::from(lo <= c && c <= hi && (a + b + c).is_multiple_of(2))
    };
    let ring = FusionRing::from_rule(names, (0..=k).collect(), table)?;
    let r = k + 1;
    let scale = (2.0 / (k as f64 + 2.0)).sqrt();
    let mut s = Vec::with_capacity(r * r);
    for a in 0..r {
        for b in 0..r {
            let angle = PI * ((a + 1) * (b + 1)) as f64 / (k as f64 + 2.0);
            s.push(Complex64::new(scale * angle.sin(), 0.0));
        }
    }
    ModularData::new(ring, s)
}

/// Pointed `Z/n` with the standard nondegenerate pairing.
fn cyclic(n: usize) -> Result<ModularData> {
    let names: Vec<String> = (0..n).map(|a| a.to_string()).collect();
    let dual = (0..n).map(|a| (n - a) % n).collect();
    let ring = FusionRing::from_rule(names, dual, |a, b, c| u64::from((a + b) % n == c))?;
    let norm = (n as f64).sqrt();
    let mut s = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let angle = 2.0 * PI * ((a * b) % n) as f64 / n as f64;
            s.push(Complex64::from_polar(1.0 / norm, angle));
        }
    }
    ModularData::new(ring, s)
}

/// `Rep(Z/2)` with trivial braiding: the nonvacuum label is a transparent
/// boson, so S̃ has two equal rows.
fn z2_boson() -> Result<ModularData> {
    let ring = FusionRing::from_rule(["1", "b"], vec![0, 1], |a, b, c| u64::from((a + b) % 2 == c))?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    ModularData::new(ring, real(&[r, r, r, r]))
}
