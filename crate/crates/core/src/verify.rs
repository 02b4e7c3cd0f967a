//! Checks of the structural identities satisfied by the state sum:
//! factorization along circles and invariance under decomposition moves.
//!
//! When two circles are glued they carry opposite orientation flags, so a
//! single label `λ` written on both (each relative to its own flag) is the
//! pairing of `λ` on one side with `λ̄` on the other.

use crate::decomposition::{DecompositionGraph, Move};
use crate::engine::{dim_blocks, dim_tensor, DimensionTensor};
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, Label};
use crate::surface::Surface;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    /// Dimension on the glued decomposition.
    pub lhs: u64,
    /// Sum over cut-circle labels of the product of the factors' dimensions.
    pub rhs: u64,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFactorizationReport {
    pub lhs: DimensionTensor,
    pub rhs: Vec<u64>,
    /// Entry indices (into `lhs.entries`) where the two sides differ.
    pub mismatches: Vec<usize>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveReport {
    pub before: DimensionTensor,
    pub after: DimensionTensor,
    pub equal: bool,
}

/// Sums `t` over a common label on each pair of boundary circles; the
/// result is indexed by the remaining circles in their original order.
pub fn contract_pairs(t: &DimensionTensor, pairs: &[(usize, usize)]) -> Result<Vec<u64>> {
    let n = t.arity();
    let rank = t.rank;
    let mut matched = vec![false; n];
    for &(i, j) in pairs {
        matched[i] = true;
        matched[j] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&k| !matched[k]).collect();
    let out_len = rank.pow(free.len() as u32);
    let inner_len = rank.pow(pairs.len() as u32);
    let mut out = Vec::with_capacity(out_len);
    let mut labels = vec![Label(0); n];
    for o in 0..out_len {
        let mut rest = o;
        for &k in free.iter().rev() {
            labels[k] = Label(rest % rank);
            rest /= rank;
        }
        let mut total = 0u64;
        for inner in 0..inner_len {
            let mut rest = inner;
            for &(i, j) in pairs.iter().rev() {
                labels[i] = Label(rest % rank);
                labels[j] = labels[i];
                rest /= rank;
            }
            total = total.checked_add(t.get(&labels)).ok_or(Error::Overflow)?;
        }
        out.push(total);
    }
    Ok(out)
}

fn compare(lhs: DimensionTensor, rhs: Vec<u64>) -> TensorFactorizationReport {
    let mismatches: Vec<usize> = (0..lhs.entries.len()).filter(|&i| lhs.entries[i] != rhs[i]).collect();
    let equal = mismatches.is_empty() && lhs.entries.len() == rhs.len();
    TensorFactorizationReport {
        lhs,
        rhs,
        mismatches,
        equal,
    }
}

/// Factorization over every boundary labeling of `d1 ∪ d2` glued along
/// `matching` (pairs of external-leg indices).
pub fn factorization_tensors(
    ring: &FusionRing,
    d1: &DecompositionGraph,
    d2: &DecompositionGraph,
    matching: &[(usize, usize)],
) -> Result<TensorFactorizationReport> {
    let glued = d1.glue(d2, matching)?;
    let lhs = dim_tensor(ring, &glued)?;
    let product = dim_tensor(ring, d1)?.outer(&dim_tensor(ring, d2)?)?;
    let shift = d1.external.len();
    let pairs: Vec<(usize, usize)> = matching.iter().map(|&(i, j)| (i, j + shift)).collect();
    Ok(compare(lhs, contract_pairs(&product, &pairs)?))
}

/// Factorization over every boundary labeling when external legs of a
/// single decomposition are glued to each other.
pub fn self_factorization_tensors(
    ring: &FusionRing,
    d: &DecompositionGraph,
    pairs: &[(usize, usize)],
) -> Result<TensorFactorizationReport> {
    let glued = d.join(pairs)?;
    let lhs = dim_tensor(ring, &glued)?;
    let rhs = contract_pairs(&dim_tensor(ring, d)?, pairs)?;
    Ok(compare(lhs, rhs))
}

fn labels_or_zero(rank: usize, index: usize, len: usize) -> Vec<Label> {
    let mut labels = vec![Label(0); len];
    let mut rest = index;
    for slot in labels.iter_mut().rev() {
        *slot = Label(rest % rank);
        rest /= rank;
    }
    labels
}

/// Splits a labeling of the glued boundary back into the unmatched circles
/// of two (or one) factors.
fn scatter(labeling: &[Label], unmatched: &[usize], full: &mut [Label]) {
    for (&slot, &l) in unmatched.iter().zip(labeling) {
        full[slot] = l;
    }
}

/// Checks `dim V(Σ₁ ∪ Σ₂; labeling)` against
/// `Σ_λ dim V(Σ₁; …, λ) · dim V(Σ₂; λ, …)` using canonical decompositions
/// of the two factors, one dimension at a time.
pub fn verify_factorization(
    ring: &FusionRing,
    s1: &Surface,
    s2: &Surface,
    matching: &[(usize, usize)],
    labeling: &[Label],
) -> Result<FactorizationReport> {
    let glued_surface = s1.glue(s2, matching)?;
    if labeling.len() != glued_surface.boundary().len() {
        return Err(Error::LabelingLength {
            expected: glued_surface.boundary().len(),
            found: labeling.len(),
        });
    }
    let d1 = DecompositionGraph::canonical(s1);
    let d2 = DecompositionGraph::canonical(s2);
    let glued = d1.glue(&d2, matching)?;
    let lhs = dim_blocks(ring, &glued, labeling)?;

    let (n1, n2) = (s1.boundary().len(), s2.boundary().len());
    let free1: Vec<usize> = (0..n1).filter(|i| !matching.iter().any(|m| m.0 == *i)).collect();
    let free2: Vec<usize> = (0..n2).filter(|j| !matching.iter().any(|m| m.1 == *j)).collect();
    let mut l1 = vec![Label(0); n1];
    let mut l2 = vec![Label(0); n2];
    scatter(&labeling[..free1.len()], &free1, &mut l1);
    scatter(&labeling[free1.len()..], &free2, &mut l2);

    let rank = ring.rank();
    let mut rhs = 0u64;
    for index in 0..rank.pow(matching.len() as u32) {
        let cut = labels_or_zero(rank, index, matching.len());
        for (&(i, j), &l) in matching.iter().zip(&cut) {
            l1[i] = l;
            l2[j] = l;
        }
        let a = dim_blocks(ring, &d1, &l1)?;
        if a == 0 {
            continue;
        }
        let b = dim_blocks(ring, &d2, &l2)?;
        rhs = rhs
            .checked_add(a.checked_mul(b).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
    }
    Ok(FactorizationReport {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Self-gluing version of [`verify_factorization`]: circles `i` and `j` of
/// `s` are glued and `Σ_λ dim V(Σ; …, λ, …, λ, …)` is compared with the
/// glued dimension.
pub fn verify_self_factorization(
    ring: &FusionRing,
    s: &Surface,
    i: usize,
    j: usize,
    labeling: &[Label],
) -> Result<FactorizationReport> {
    let glued_surface = s.self_glue(i, j)?;
    if labeling.len() != glued_surface.boundary().len() {
        return Err(Error::LabelingLength {
            expected: glued_surface.boundary().len(),
            found: labeling.len(),
        });
    }
    let d = DecompositionGraph::canonical(s);
    let glued = d.self_glue(i, j)?;
    let lhs = dim_blocks(ring, &glued, labeling)?;
    let n = s.boundary().len();
    let free: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
    let mut full = vec![Label(0); n];
    scatter(labeling, &free, &mut full);
    let mut rhs = 0u64;
    for l in ring.labels() {
        full[i] = l;
        full[j] = l;
        rhs = rhs.checked_add(dim_blocks(ring, &d, &full)?).ok_or(Error::Overflow)?;
    }
    Ok(FactorizationReport {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Compares the dimension tensors before and after `mv`.
pub fn verify_move_invariance(ring: &FusionRing, d: &DecompositionGraph, mv: Move) -> Result<MoveReport> {
    let after_graph = d.apply(mv)?;
    let before = dim_tensor(ring, d)?;
    let after = dim_tensor(ring, &after_graph)?;
    let equal = before == after;
    Ok(MoveReport { before, after, equal })
}

/// Subdivides internal edge `edge` by a cylinder and compares tensors.
pub fn insert_cylinder_noop(ring: &FusionRing, d: &DecompositionGraph, edge: usize) -> Result<MoveReport> {
    verify_move_invariance(ring, d, Move::SubdivideEdge { edge })
}
