//! Random decompositions and random move sequences, for randomized
//! verification.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::decomposition::{Atom, AtomKind, DecompositionGraph, LegRef, Move};
use crate::error::Result;
use crate::surface::Orientation;

/// A structurally valid decomposition with `1..=max_atoms` atoms and at most
/// `max_edges` internal edges. Edges may join two legs of the same atom, so
/// handles and disconnected pieces both occur.
pub fn random_decomposition<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize, max_edges: usize) -> DecompositionGraph {
    let count = rng.gen_range(1..=max_atoms.max(1));
    let mut atoms: Vec<Atom> = (0..count)
        .map(|_| {
            let kind = match rng.gen_range(0..6) {
                0..=3 => AtomKind::Pants,
                4 => AtomKind::Cylinder,
                _ => AtomKind::Disk,
            };
            let legs = (0..kind.leg_count())
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Orientation::Induced
                    } else {
                        Orientation::Reversed
                    }
                })
                .collect();
            Atom { kind, legs }
        })
        .collect();
    let mut legs: Vec<LegRef> = atoms
        .iter()
        .enumerate()
        .flat_map(|(a, atom)| (0..atom.legs.len()).map(move |l| LegRef::new(a, l)))
        .collect();
    legs.shuffle(rng);
    let edges = rng.gen_range(0..=max_edges.min(legs.len() / 2));
    let mut internal_edges = Vec::with_capacity(edges);
    for pair in legs[..2 * edges].chunks(2) {
        let (x, y) = (pair[0], pair[1]);
        atoms[y.atom].legs[y.leg] = atoms[x.atom].legs[x.leg].opposite();
        internal_edges.push((x, y));
    }
    let external = legs[2 * edges..].to_vec();
    DecompositionGraph::new(atoms, internal_edges, external)
}

/// Every move applicable to `d`: flips on edges between distinct pants and
/// cylinder insertions on internal edges. Falls back to subdividing external
/// legs when there are no internal edges.
pub fn available_moves(d: &DecompositionGraph) -> Vec<Move> {
    let mut moves: Vec<Move> = d
        .flippable_edges()
        .into_iter()
        .map(|edge| Move::Flip { edge })
        .collect();
    moves.extend((0..d.edge_count()).map(|edge| Move::SubdivideEdge { edge }));
    if moves.is_empty() {
        moves.extend((0..d.external.len()).map(|index| Move::SubdivideExternal { index }));
    }
    moves
}

/// A flip with probability 3/4 when one exists, otherwise a cylinder
/// insertion on an internal edge (or an external leg if there are none).
pub fn random_move<R: Rng + ?Sized>(rng: &mut R, d: &DecompositionGraph) -> Option<Move> {
    let flips = d.flippable_edges();
    if !flips.is_empty() && (d.edge_count() == 0 || rng.gen_bool(0.75)) {
        return flips.choose(rng).map(|&edge| Move::Flip { edge });
    }
    if d.edge_count() > 0 {
        return Some(Move::SubdivideEdge {
            edge: rng.gen_range(0..d.edge_count()),
        });
    }
    (!d.external.is_empty()).then(|| Move::SubdivideExternal {
        index: rng.gen_range(0..d.external.len()),
    })
}

/// Applies up to `steps` moves drawn by [`random_move`]; returns the moves taken and
/// the final decomposition.
pub fn random_walk<R: Rng + ?Sized>(
    rng: &mut R,
    d: &DecompositionGraph,
    steps: usize,
) -> Result<(Vec<Move>, DecompositionGraph)> {
    let mut current = d.clone();
    let mut taken = Vec::with_capacity(steps);
    for _ in 0..steps {
        let Some(mv) = random_move(rng, &current) else { break };
        current = current.apply(mv)?;
        taken.push(mv);
    }
    Ok((taken, current))
}
