//! Greedy elimination orders for the state sum and their execution on dense
//! integer factors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// One elimination step: all factors touching `edges` are multiplied and
/// `edges` are summed out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    pub edges: Vec<usize>,
    /// Number of index combinations visited: product of the ranges of all
    /// live indices of the merged factors.
    pub cost: u128,
}

/// An ordered elimination of every internal edge of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    pub steps: Vec<EliminationStep>,
    /// Cost of the single-step full enumeration over the same factors.
    pub naive_cost: u128,
}

impl ContractionPlan {
    pub fn total_cost(&self) -> u128 {
        self.steps.iter().fold(0u128, |acc, s| acc.saturating_add(s.cost))
    }

    /// Edges in elimination order.
    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().flat_map(|s| s.edges.iter().copied()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub(crate) fn pow(rank: usize, exp: usize) -> u128 {
    (rank as u128).saturating_pow(exp as u32)
}

/// Greedy planner over factor scopes. Variables `0..edges` are summed out;
/// any other variable in a scope stays free.
pub(crate) fn greedy(scopes: &[Vec<usize>], edges: usize, rank: usize) -> ContractionPlan {
    let mut active: Vec<BTreeSet<usize>> = scopes.iter().map(|s| s.iter().copied().collect()).collect();
    let all: BTreeSet<usize> = active.iter().flatten().copied().collect();
    let naive_cost = pow(rank, all.len());
    let mut remaining: BTreeSet<usize> = (0..edges).collect();
    let mut steps = Vec::new();

    while let Some(&first) = remaining.iter().next() {
        let mut best = (u128::MAX, first);
        for &e in &remaining {
            let width = active
                .iter()
                .filter(|s| s.contains(&e))
                .flatten()
                .collect::<BTreeSet<_>>()
                .len();
            let cost = pow(rank, width);
            if cost < best.0 {
                best = (cost, e);
            }
        }
        let (cost, e) = best;
        let (touching, rest): (Vec<_>, Vec<_>) = active.into_iter().partition(|s| s.contains(&e));
        let merged: BTreeSet<usize> = touching.into_iter().flatten().collect();
        let eliminated: Vec<usize> = merged
            .iter()
            .copied()
            .filter(|v| remaining.contains(v) && !rest.iter().any(|s| s.contains(v)))
            .collect();
        for v in &eliminated {
            remaining.remove(v);
        }
        active = rest;
        active.push(merged.into_iter().filter(|v| !eliminated.contains(v)).collect());
        steps.push(EliminationStep {
            edges: eliminated,
            cost,
        });
    }

    let plan = ContractionPlan { steps, naive_cost };
    if edges > 0 && plan.total_cost() > naive_cost {
        ContractionPlan {
            steps: vec![EliminationStep {
                edges: (0..edges).collect(),
                cost: naive_cost,
            }],
            naive_cost,
        }
    } else {
        plan
    }
}

/// A plan that eliminates one edge per step in the given order.
pub(crate) fn from_order(scopes: &[Vec<usize>], order: &[usize], rank: usize) -> ContractionPlan {
    let mut active: Vec<BTreeSet<usize>> = scopes.iter().map(|s| s.iter().copied().collect()).collect();
    let all: BTreeSet<usize> = active.iter().flatten().copied().collect();
    let mut steps = Vec::new();
    for &e in order {
        let (touching, rest): (Vec<_>, Vec<_>) = active.into_iter().partition(|s| s.contains(&e));
        let mut merged: BTreeSet<usize> = touching.into_iter().flatten().collect();
        let cost = pow(rank, merged.len());
        merged.remove(&e);
        active = rest;
        active.push(merged);
        steps.push(EliminationStep { edges: vec![e], cost });
    }
    ContractionPlan {
        steps,
        naive_cost: pow(rank, all.len()),
    }
}

/// Dense nonnegative-integer table over a sorted list of variables, each
/// ranging over `0..rank`, stored row-major.
#[derive(Clone, Debug)]
pub(crate) struct Factor {
    pub scope: Vec<usize>,
    pub table: Vec<u64>,
}

impl Factor {
    pub fn value_at(&self, assignment: &[usize], rank: usize) -> u64 {
        let idx = self.scope.iter().fold(0, |acc, &v| acc * rank + assignment[v]);
        self.table[idx]
    }
}

/// Multiplies `factors` and sums out `eliminate`.
fn merge(factors: &[Factor], eliminate: &[usize], rank: usize) -> Result<Factor> {
    let union: Vec<usize> = factors
        .iter()
        .flat_map(|f| f.scope.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let out_scope: Vec<usize> = union.iter().copied().filter(|v| !eliminate.contains(v)).collect();
    let width = union.len();
    let position = |v: usize| union.iter().position(|&u| u == v).unwrap();

    // strides of each factor (and the output) along the union's positions
    let strides_for = |scope: &[usize]| -> Vec<usize> {
        let mut strides = vec![0; width];
        let mut s = 1;
        for &v in scope.iter().rev() {
            strides[position(v)] = s;
            s *= rank;
        }
        strides
    };
    let factor_strides: Vec<Vec<usize>> = factors.iter().map(|f| strides_for(&f.scope)).collect();
    let out_strides = strides_for(&out_scope);
    let mut out = vec![0u64; rank.pow(out_scope.len() as u32)];

    let mut digits = vec![0usize; width];
    let mut offsets = vec![0usize; factors.len()];
    let mut out_offset = 0usize;
    loop {
        let mut product = 1u64;
        for (f, &off) in factors.iter().zip(&offsets) {
            let v = f.table[off];
            if v == 0 {
                product = 0;
                break;
            }
            product = product.checked_mul(v).ok_or(Error::Overflow)?;
        }
        if product != 0 {
            let slot = &mut out[out_offset];
            *slot = slot.checked_add(product).ok_or(Error::Overflow)?;
        }
        // odometer, last position fastest
        let mut p = width;
        loop {
            if p == 0 {
                return Ok(Factor {
                    scope: out_scope,
                    table: out,
                });
            }
            p -= 1;
            digits[p] += 1;
            for (off, st) in offsets.iter_mut().zip(&factor_strides) {
                *off += st[p];
            }
            out_offset += out_strides[p];
            if digits[p] < rank {
                break;
            }
            for (off, st) in offsets.iter_mut().zip(&factor_strides) {
                *off -= st[p] * rank;
            }
            out_offset -= out_strides[p] * rank;
            digits[p] = 0;
        }
    }
}

/// Runs `plan` on `factors`; the returned factors mention only variables
/// that the plan leaves free.
pub(crate) fn execute(mut factors: Vec<Factor>, plan: &ContractionPlan, rank: usize) -> Result<Vec<Factor>> {
    for step in &plan.steps {
        let (touching, rest): (Vec<Factor>, Vec<Factor>) = factors
            .into_iter()
            .partition(|f| f.scope.iter().any(|v| step.edges.contains(v)));
        factors = rest;
        factors.push(merge(&touching, &step.edges, rank)?);
    }
    Ok(factors)
}

/// Product of factors over a full assignment of their free variables,
/// enumerated row-major over `free` (sorted ascending variable ids given in
/// the caller's axis order).
pub(crate) fn expand(factors: &[Factor], free: &[usize], rank: usize, total_vars: usize) -> Result<Vec<u64>> {
    let size = rank.pow(free.len() as u32);
    let mut out = Vec::with_capacity(size);
    let mut assignment = vec![0usize; total_vars];
    let mut digits = vec![0usize; free.len()];
    for _ in 0..size {
        for (&v, &d) in free.iter().zip(&digits) {
            assignment[v] = d;
        }
        let mut product = 1u64;
        for f in factors {
            product = product
                .checked_mul(f.value_at(&assignment, rank))
                .ok_or(Error::Overflow)?;
            if product == 0 {
                break;
            }
        }
        out.push(product);
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < rank {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}
