//! Exact evaluation of the state sum
//!
//! ```text
//! dim V(Σ; λ₁…λₙ) = Σ_{labelings of internal edges} Π_{atoms} dim(atom; leg labels)
//! ```
//!
//! where a leg whose orientation is `Reversed` sees the dual of the label on
//! its circle. Pants contribute `N₀^{abc}`, cylinders `δ_{b, dual(a)}` and
//! disks `δ_{a, 0}`.

mod plan;

pub use plan::{ContractionPlan, EliminationStep};

use plan::Factor;

use crate::decomposition::{Atom, AtomKind, DecompositionGraph};
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, Label};
use crate::surface::{Orientation, Surface};

/// Default limit on internal edges for [`brute_force_dim`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;

/// Environment variable overriding the brute-force edge cap.
pub const BRUTE_CAP_ENV: &str = "BLOCKS_BRUTE_CAP";

/// The brute-force cap, honouring `BLOCKS_BRUTE_CAP` when it parses.
pub fn brute_force_cap_from_env() -> usize {
    std::env::var(BRUTE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BRUTE_FORCE_CAP)
}

/// `dim V(Σ; λ₁…λₙ)` for every boundary labeling, row-major with the first
/// boundary circle most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTensor {
    pub surface: Surface,
    pub rank: usize,
    pub entries: Vec<u64>,
}

impl DimensionTensor {
    pub fn arity(&self) -> usize {
        self.surface.boundary().len()
    }

    pub fn index_of(&self, labels: &[Label]) -> usize {
        assert_eq!(labels.len(), self.arity());
        labels.iter().fold(0, |acc, l| acc * self.rank + l.0)
    }

    pub fn get(&self, labels: &[Label]) -> u64 {
        self.entries[self.index_of(labels)]
    }

    /// Labels of entry `index`.
    pub fn labels_at(&self, mut index: usize) -> Vec<Label> {
        let mut labels = vec![Label(0); self.arity()];
        for slot in labels.iter_mut().rev() {
            *slot = Label(index % self.rank);
            index /= self.rank;
        }
        labels
    }

    /// The scalar of a closed surface.
    pub fn scalar(&self) -> Option<u64> {
        (self.arity() == 0).then(|| self.entries[0])
    }

    /// Tensor of `self ⊔ other`: the outer product of the two tables.
    pub fn outer(&self, other: &DimensionTensor) -> Result<DimensionTensor> {
        assert_eq!(self.rank, other.rank);
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for &a in &self.entries {
            for &b in &other.entries {
                entries.push(a.checked_mul(b).ok_or(Error::Overflow)?);
            }
        }
        Ok(DimensionTensor {
            surface: self.surface.disjoint_union(&other.surface),
            rank: self.rank,
            entries,
        })
    }
}

/// Dimension contributed by one atom whose legs carry `labels`. Labels are
/// given relative to each leg's circle; `Reversed` legs are dualized.
pub fn atom_dimension(ring: &FusionRing, atom: &Atom, labels: &[Label]) -> Result<u64> {
    if labels.len() != atom.legs.len() || atom.legs.len() != atom.kind.leg_count() {
        return Err(Error::LabelingLength {
            expected: atom.kind.leg_count(),
            found: labels.len(),
        });
    }
    let mut seen = [Label(0); 3];
    for (i, (&l, &o)) in labels.iter().zip(&atom.legs).enumerate() {
        ring.check(l)?;
        seen[i] = match o {
            Orientation::Induced => l,
            Orientation::Reversed => ring.dual(l),
        };
    }
    Ok(match atom.kind {
        AtomKind::Pants => ring.n3(seen[0], seen[1], seen[2])?,
        AtomKind::Cylinder => u64::from(seen[1] == ring.dual(seen[0])),
        AtomKind::Disk => u64::from(seen[0] == Label::VACUUM),
    })
}

fn check_structure(d: &DecompositionGraph) -> Result<()> {
    let report = d.structural_violations();
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDecomposition(report))
    }
}

fn check_labeling(ring: &FusionRing, d: &DecompositionGraph, labeling: &[Label]) -> Result<()> {
    if labeling.len() != d.external.len() {
        return Err(Error::LabelingLength {
            expected: d.external.len(),
            found: labeling.len(),
        });
    }
    labeling.iter().try_for_each(|&l| ring.check(l).map(|_| ()))
}

/// Variable id of every leg: internal edge `e` is variable `e`, external leg
/// `i` is variable `edges + i`.
fn leg_variables(d: &DecompositionGraph) -> Vec<Vec<usize>> {
    let mut vars: Vec<Vec<usize>> = d.atoms.iter().map(|a| vec![usize::MAX; a.legs.len()]).collect();
    for (e, &(x, y)) in d.internal_edges.iter().enumerate() {
        vars[x.atom][x.leg] = e;
        vars[y.atom][y.leg] = e;
    }
    let edges = d.edge_count();
    for (i, leg) in d.external.iter().enumerate() {
        vars[leg.atom][leg.leg] = edges + i;
    }
    vars
}

/// Factor scopes; with `fixed_externals` the external variables are
/// substituted and do not appear.
fn scopes(d: &DecompositionGraph, fixed_externals: bool) -> Vec<Vec<usize>> {
    let edges = d.edge_count();
    leg_variables(d)
        .into_iter()
        .map(|legs| {
            let mut scope: Vec<usize> = legs.into_iter().filter(|&v| !(fixed_externals && v >= edges)).collect();
            scope.sort_unstable();
            scope.dedup();
            scope
        })
        .collect()
}

fn atom_factors(ring: &FusionRing, d: &DecompositionGraph, fixed: Option<&[Label]>) -> Result<Vec<Factor>> {
    let rank = ring.rank();
    let edges = d.edge_count();
    let vars = leg_variables(d);
    let scopes = scopes(d, fixed.is_some());
    let mut factors = Vec::with_capacity(d.atoms.len());
    let mut assignment = vec![0usize; edges + d.external.len()];
    if let Some(labels) = fixed {
        for (i, l) in labels.iter().enumerate() {
            assignment[edges + i] = l.0;
        }
    }
    for ((atom, legs), scope) in d.atoms.iter().zip(&vars).zip(scopes) {
        let size = rank.pow(scope.len() as u32);
        let mut table = Vec::with_capacity(size);
        let mut digits = vec![0usize; scope.len()];
        let mut labels = vec![Label(0); legs.len()];
        for _ in 0..size {
            for (&v, &x) in scope.iter().zip(&digits) {
                assignment[v] = x;
            }
            for (slot, &v) in labels.iter_mut().zip(legs) {
                *slot = Label(assignment[v]);
            }
            table.push(atom_dimension(ring, atom, &labels)?);
            for x in digits.iter_mut().rev() {
                *x += 1;
                if *x < rank {
                    break;
                }
                *x = 0;
            }
        }
        factors.push(Factor { scope, table });
    }
    Ok(factors)
}

/// Greedy elimination order for evaluating one boundary labeling.
pub fn plan_contraction(d: &DecompositionGraph, rank: usize) -> ContractionPlan {
    plan::greedy(&scopes(d, true), d.edge_count(), rank)
}

/// Plan eliminating one edge at a time in `order`, which must be a
/// permutation of the internal edges.
pub fn plan_with_order(d: &DecompositionGraph, rank: usize, order: &[usize]) -> Result<ContractionPlan> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..d.edge_count()).collect::<Vec<_>>() {
        return Err(Error::Validation(format!(
            "{order:?} is not an ordering of the internal edges"
        )));
    }
    Ok(plan::from_order(&scopes(d, true), order, rank))
}

/// Plan for the full tensor: external legs stay free.
fn plan_tensor(d: &DecompositionGraph, rank: usize) -> ContractionPlan {
    plan::greedy(&scopes(d, false), d.edge_count(), rank)
}

fn product(factors: &[Factor]) -> Result<u64> {
    factors.iter().try_fold(1u64, |acc, f| {
        debug_assert!(f.scope.is_empty());
        acc.checked_mul(f.table[0]).ok_or(Error::Overflow)
    })
}

/// `dim V(Σ; labeling)` by planned contraction.
pub fn dim_blocks(ring: &FusionRing, d: &DecompositionGraph, labeling: &[Label]) -> Result<u64> {
    check_structure(d)?;
    let plan = plan_contraction(d, ring.rank());
    dim_blocks_with_plan(ring, d, labeling, &plan)
}

/// [`dim_blocks`] with a caller-supplied plan (see [`plan_with_order`]).
pub fn dim_blocks_with_plan(
    ring: &FusionRing,
    d: &DecompositionGraph,
    labeling: &[Label],
    plan: &ContractionPlan,
) -> Result<u64> {
    check_structure(d)?;
    check_labeling(ring, d, labeling)?;
    let factors = atom_factors(ring, d, Some(labeling))?;
    let rest = plan::execute(factors, plan, ring.rank())?;
    product(&rest)
}

/// The full dimension tensor, from a single contraction with the external
/// legs left open.
pub fn dim_tensor(ring: &FusionRing, d: &DecompositionGraph) -> Result<DimensionTensor> {
    check_structure(d)?;
    let surface = d.infer_surface()?;
    let rank = ring.rank();
    let edges = d.edge_count();
    let plan = plan_tensor(d, rank);
    let factors = atom_factors(ring, d, None)?;
    let rest = plan::execute(factors, &plan, rank)?;
    let free: Vec<usize> = (edges..edges + d.external.len()).collect();
    let entries = plan::expand(&rest, &free, rank, edges + d.external.len())?;
    Ok(DimensionTensor { surface, rank, entries })
}

/// Literal enumeration of all `rank^edges` internal labelings; the oracle
/// for [`dim_blocks`].
pub fn brute_force_dim(ring: &FusionRing, d: &DecompositionGraph, labeling: &[Label], cap: usize) -> Result<u64> {
    check_structure(d)?;
    check_labeling(ring, d, labeling)?;
    let edges = d.edge_count();
    if edges > cap {
        return Err(Error::CapExceeded { edges, cap });
    }
    let rank = ring.rank();
    let mut edge_labels = vec![0usize; edges];
    let mut leg_labels: Vec<Vec<Label>> = d.atoms.iter().map(|a| vec![Label(0); a.legs.len()]).collect();
    for (leg, &l) in d.external.iter().zip(labeling) {
        leg_labels[leg.atom][leg.leg] = l;
    }
    let mut total = 0u64;
    loop {
        for (&(x, y), &l) in d.internal_edges.iter().zip(&edge_labels) {
            leg_labels[x.atom][x.leg] = Label(l);
            leg_labels[y.atom][y.leg] = Label(l);
        }
        let mut term = 1u64;
        for (atom, labels) in d.atoms.iter().zip(&leg_labels) {
            term = term
                .checked_mul(atom_dimension(ring, atom, labels)?)
                .ok_or(Error::Overflow)?;
            if term == 0 {
                break;
            }
        }
        total = total.checked_add(term).ok_or(Error::Overflow)?;

        let mut k = 0;
        while k < edges {
            edge_labels[k] += 1;
            if edge_labels[k] < rank {
                break;
            }
            edge_labels[k] = 0;
            k += 1;
        }
        if k == edges {
            return Ok(total);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, standard_names};
    use crate::decomposition::LegRef;
    use Orientation::{Induced as P, Reversed as M};

    fn ring(name: &str) -> FusionRing {
        catalog(name).unwrap().ring().clone()
    }

    fn genus_two() -> DecompositionGraph {
        DecompositionGraph::new(
            vec![Atom::pants([P, P, P]), Atom::pants([M, M, M])],
            (0..3).map(|l| (LegRef::new(0, l), LegRef::new(1, l))).collect(),
            vec![],
        )
    }

    /// Σ_{abc} N₀^{abc} N₀^{ā b̄ c̄}, written out directly.
    fn genus_two_oracle(ring: &FusionRing) -> u64 {
        let mut total = 0;
        for a in ring.labels() {
            for b in ring.labels() {
                for c in ring.labels() {
                    let x = ring.n3(a, b, c).unwrap();
                    let y = ring.n3(ring.dual(a), ring.dual(b), ring.dual(c)).unwrap();
                    total += x * y;
                }
            }
        }
        total
    }

    #[test]
    fn atom_dimension_examples() {
        let ising = ring("ising");
        let (one, s, p) = (Label(0), Label(1), Label(2));
        assert_eq!(atom_dimension(&ising, &Atom::pants([P, P, P]), &[s, s, p]).unwrap(), 1);
        assert_eq!(atom_dimension(&ising, &Atom::cylinder([P, P]), &[s, s]).unwrap(), 1);
        assert_eq!(atom_dimension(&ising, &Atom::cylinder([P, P]), &[s, p]).unwrap(), 0);
        for name in standard_names() {
            let r = ring(&name);
            assert_eq!(atom_dimension(&r, &Atom::disk(P), &[one]).unwrap(), 1);
            assert_eq!(atom_dimension(&r, &Atom::disk(M), &[one]).unwrap(), 1);
        }
        assert!(atom_dimension(&ising, &Atom::disk(P), &[Label(3)]).is_err());
        assert!(atom_dimension(&ising, &Atom::disk(P), &[one, one]).is_err());
    }

    #[test]
    fn reversed_legs_see_duals() {
        let z3 = ring("z_3");
        let (a, b) = (Label(1), Label(2));
        // a ⊠ a ⊠ a contains the vacuum in Z/3
        assert_eq!(atom_dimension(&z3, &Atom::pants([P, P, P]), &[a, a, a]).unwrap(), 1);
        assert_eq!(atom_dimension(&z3, &Atom::pants([P, P, M]), &[a, a, a]).unwrap(), 0);
        assert_eq!(atom_dimension(&z3, &Atom::pants([P, P, M]), &[a, a, b]).unwrap(), 1);
        // a cylinder with both legs induced pairs a with its dual
        assert_eq!(atom_dimension(&z3, &Atom::cylinder([P, P]), &[a, b]).unwrap(), 1);
        assert_eq!(atom_dimension(&z3, &Atom::cylinder([P, M]), &[a, a]).unwrap(), 1);
        assert_eq!(atom_dimension(&z3, &Atom::disk(M), &[a]).unwrap(), 0);
    }

    #[test]
    fn closed_genus_two() {
        assert_eq!(dim_blocks(&ring("ising"), &genus_two(), &[]).unwrap(), 10);
        assert_eq!(dim_blocks(&ring("fibonacci"), &genus_two(), &[]).unwrap(), 5);
        for name in standard_names() {
            let r = ring(&name);
            let expected = genus_two_oracle(&r);
            assert_eq!(dim_blocks(&r, &genus_two(), &[]).unwrap(), expected, "{name}");
            assert_eq!(brute_force_dim(&r, &genus_two(), &[], 12).unwrap(), expected, "{name}");
        }
    }

    #[test]
    fn torus_counts_labels() {
        let torus = DecompositionGraph::canonical(&Surface::standard(1, 0));
        for name in standard_names() {
            let r = ring(&name);
            assert_eq!(dim_blocks(&r, &torus, &[]).unwrap(), r.rank() as u64, "{name}");
        }
    }

    #[test]
    fn sphere_and_disk() {
        let sphere = DecompositionGraph::canonical(&Surface::standard(0, 0));
        let disk = DecompositionGraph::canonical(&Surface::standard(0, 1));
        let ising = ring("ising");
        assert_eq!(dim_blocks(&ising, &sphere, &[]).unwrap(), 1);
        assert_eq!(dim_blocks(&ising, &disk, &[Label(0)]).unwrap(), 1);
        assert_eq!(brute_force_dim(&ising, &disk, &[Label(1)], 12).unwrap(), 0);
    }

    #[test]
    fn empty_decomposition() {
        let empty = DecompositionGraph::default();
        let ising = ring("ising");
        assert_eq!(brute_force_dim(&ising, &empty, &[], 12).unwrap(), 1);
        assert_eq!(dim_blocks(&ising, &empty, &[]).unwrap(), 1);
        let t = dim_tensor(&ising, &empty).unwrap();
        assert_eq!(t.scalar(), Some(1));
        assert_eq!(t.surface, Surface::empty());
    }

    #[test]
    fn four_holed_sphere() {
        let d = DecompositionGraph::canonical(&Surface::standard(0, 4));
        let s = Label(1);
        assert_eq!(dim_blocks(&ring("ising"), &d, &[s, s, s, s]).unwrap(), 2);
    }

    #[test]
    fn ising_pants_tensor() {
        let d = DecompositionGraph::canonical(&Surface::standard(0, 3));
        let t = dim_tensor(&ring("ising"), &d).unwrap();
        assert_eq!(t.entries.len(), 27);
        assert_eq!(t.entries.iter().filter(|&&v| v == 1).count(), 10);
        assert_eq!(t.entries.iter().filter(|&&v| v == 0).count(), 17);
    }

    #[test]
    fn cylinder_tensor_is_identity_for_self_dual_labels() {
        let d = DecompositionGraph::canonical(&Surface::connected(0, [P, M]));
        let t = dim_tensor(&ring("ising"), &d).unwrap();
        assert_eq!(t.entries, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn trivial_ring_gives_all_ones() {
        let r = ring("trivial");
        for (g, n) in [(0, 3), (1, 2), (2, 1), (0, 0), (3, 0)] {
            let d = DecompositionGraph::canonical(&Surface::standard(g, n));
            let t = dim_tensor(&r, &d).unwrap();
            assert_eq!(t.entries, vec![1]);
        }
    }

    #[test]
    fn tensor_agrees_with_pointwise_evaluation() {
        for name in ["ising", "fibonacci", "z_3", "su2_3"] {
            let r = ring(name);
            for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1), (0, 5)] {
                let s = Surface::connected(g, (0..n).map(|i| if i % 2 == 0 { P } else { M }));
                let d = DecompositionGraph::canonical(&s);
                let t = dim_tensor(&r, &d).unwrap();
                for (i, &v) in t.entries.iter().enumerate() {
                    let labels = t.labels_at(i);
                    assert_eq!(dim_blocks(&r, &d, &labels).unwrap(), v);
                    assert_eq!(brute_force_dim(&r, &d, &labels, 12).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn contraction_order_does_not_matter() {
        let r = ring("su2_3");
        let s = Surface::connected(2, [P, M]);
        let d = DecompositionGraph::canonical(&s);
        let labels = [Label(1), Label(1)];
        let expected = dim_blocks(&r, &d, &labels).unwrap();
        let e = d.edge_count();
        let forward: Vec<usize> = (0..e).collect();
        let backward: Vec<usize> = (0..e).rev().collect();
        for order in [forward, backward] {
            let plan = plan_with_order(&d, r.rank(), &order).unwrap();
            assert_eq!(dim_blocks_with_plan(&r, &d, &labels, &plan).unwrap(), expected);
        }
        assert!(plan_with_order(&d, r.rank(), &[0, 0]).is_err());
    }

    #[test]
    fn plan_examples() {
        // chain of four pants: (0,6), three internal edges
        let chain = DecompositionGraph::canonical(&Surface::standard(0, 6));
        assert_eq!(chain.edge_count(), 3);
        let plan = plan_contraction(&chain, 3);
        assert!(plan.total_cost() < 27);
        assert_eq!(plan.naive_cost, 27);

        let pants = DecompositionGraph::canonical(&Surface::standard(0, 3));
        assert!(plan_contraction(&pants, 3).is_empty());

        let plan = plan_contraction(&genus_two(), 3);
        assert_eq!(plan.order().len(), 3);
        assert!(plan.total_cost() <= plan.naive_cost);
    }

    #[test]
    fn brute_force_cap() {
        let d = DecompositionGraph::canonical(&Surface::standard(3, 0));
        assert_eq!(
            brute_force_dim(&ring("ising"), &d, &[], 2),
            Err(Error::CapExceeded { edges: 6, cap: 2 })
        );
    }

    #[test]
    fn bad_inputs() {
        let d = DecompositionGraph::canonical(&Surface::standard(0, 3));
        let ising = ring("ising");
        assert!(matches!(
            dim_blocks(&ising, &d, &[Label(0)]),
            Err(Error::LabelingLength { .. })
        ));
        assert!(matches!(
            dim_blocks(&ising, &d, &[Label(0), Label(0), Label(7)]),
            Err(Error::LabelOutOfRange { .. })
        ));
        let broken = DecompositionGraph::new(vec![Atom::pants([P, P, P])], vec![], vec![]);
        assert!(matches!(
            dim_blocks(&ising, &broken, &[]),
            Err(Error::InvalidDecomposition(_))
        ));
        assert!(matches!(
            dim_tensor(&ising, &broken),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn overflow_is_reported() {
        // closed genus g on Z/40 has dimension 40^g; 40^13 > u64::MAX
        let r = ring("z_40");
        let d = DecompositionGraph::canonical(&Surface::standard(13, 0));
        assert_eq!(dim_blocks(&r, &d, &[]), Err(Error::Overflow));
        let small = DecompositionGraph::canonical(&Surface::standard(12, 0));
        assert_eq!(dim_blocks(&r, &small, &[]).unwrap(), 40u64.pow(12));
    }

    #[test]
    fn disjoint_union_is_outer_product() {
        let r = ring("fibonacci");
        let a = DecompositionGraph::canonical(&Surface::standard(0, 3));
        let b = DecompositionGraph::canonical(&Surface::connected(1, [M]));
        let ta = dim_tensor(&r, &a).unwrap();
        let tb = dim_tensor(&r, &b).unwrap();
        let tu = dim_tensor(&r, &a.disjoint_union(&b)).unwrap();
        assert_eq!(tu, ta.outer(&tb).unwrap());
    }
}
