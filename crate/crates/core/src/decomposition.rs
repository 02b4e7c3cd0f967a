//! Decompositions of surfaces into pants, cylinders and disks.
//!
//! Each atom has ordered legs (half-edges), and each leg carries the
//! orientation of its circle relative to the atom. An internal edge glues an
//! `Induced` leg to a `Reversed` leg; the remaining legs are the external
//! legs, listed in the order of the surface's boundary circles.

use std::fmt;

use crate::error::{Error, Result};
use crate::surface::{check_matching, BoundaryCircle, Orientation, Surface};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Pants,
    Cylinder,
    Disk,
}

impl AtomKind {
    pub fn leg_count(self) -> usize {
        match self {
            AtomKind::Pants => 3,
            AtomKind::Cylinder => 2,
            AtomKind::Disk => 1,
        }
    }

    pub fn euler_characteristic(self) -> i64 {
        match self {
            AtomKind::Pants => -1,
            AtomKind::Cylinder => 0,
            AtomKind::Disk => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AtomKind::Pants => "pants",
            AtomKind::Cylinder => "cylinder",
            AtomKind::Disk => "disk",
        }
    }

    pub fn from_name(name: &str) -> Option<AtomKind> {
        match name {
            "pants" => Some(AtomKind::Pants),
            "cylinder" => Some(AtomKind::Cylinder),
            "disk" => Some(AtomKind::Disk),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub kind: AtomKind,
    pub legs: Vec<Orientation>,
}

impl Atom {
    pub fn pants(legs: [Orientation; 3]) -> Atom {
        Atom {
            kind: AtomKind::Pants,
            legs: legs.to_vec(),
        }
    }

    pub fn cylinder(legs: [Orientation; 2]) -> Atom {
        Atom {
            kind: AtomKind::Cylinder,
            legs: legs.to_vec(),
        }
    }

    pub fn disk(leg: Orientation) -> Atom {
        Atom {
            kind: AtomKind::Disk,
            legs: vec![leg],
        }
    }
}

/// A half-edge: leg `leg` of atom `atom`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegRef {
    pub atom: usize,
    pub leg: usize,
}

impl LegRef {
    pub fn new(atom: usize, leg: usize) -> LegRef {
        LegRef { atom, leg }
    }

    fn shifted(self, by: usize) -> LegRef {
        LegRef {
            atom: self.atom + by,
            leg: self.leg,
        }
    }
}

impl fmt::Display for LegRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.atom, self.leg)
    }
}

/// One failed decomposition invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    LegCount {
        atom: usize,
        expected: usize,
        found: usize,
    },
    LegOutOfRange {
        leg: LegRef,
    },
    HalfEdgeUnused {
        leg: LegRef,
    },
    HalfEdgeReused {
        leg: LegRef,
    },
    EdgeSignsNotOpposite {
        edge: usize,
    },
    ExternalCount {
        expected: usize,
        found: usize,
    },
    ExternalOrientation {
        index: usize,
    },
    /// Boundary circle `index` sits on a graph component that does not
    /// correspond to its surface component.
    ComponentMismatch {
        index: usize,
    },
    ClosedComponents {
        expected: Vec<u32>,
        found: Vec<u32>,
    },
    Euler {
        component: usize,
        expected: i64,
        found: i64,
    },
    Genus {
        component: usize,
        expected: u32,
        found: i64,
    },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DecompositionViolation::*;
        match self {
            LegCount { atom, expected, found } => {
                write!(f, "atom {atom} has {found} legs, expected {expected}")
            }
            LegOutOfRange { leg } => write!(f, "leg {leg} does not exist"),
            HalfEdgeUnused { leg } => write!(f, "leg {leg} is neither internal nor external"),
            HalfEdgeReused { leg } => write!(f, "leg {leg} is used more than once"),
            EdgeSignsNotOpposite { edge } => {
                write!(f, "internal edge {edge} joins legs of equal orientation")
            }
            ExternalCount { expected, found } => {
                write!(f, "{found} external legs for {expected} boundary circles")
            }
            ExternalOrientation { index } => {
                write!(f, "external leg {index} disagrees with the boundary orientation")
            }
            ComponentMismatch { index } => {
                write!(f, "boundary circle {index} lies on the wrong connected component")
            }
            ClosedComponents { expected, found } => {
                write!(f, "closed components of genus {found:?}, expected {expected:?}")
            }
            Euler {
                component,
                expected,
                found,
            } => {
                write!(
                    f,
                    "component {component} has Euler characteristic {found}, expected {expected}"
                )
            }
            Genus {
                component,
                expected,
                found,
            } => {
                write!(f, "component {component} has genus {found}, expected {expected}")
            }
        }
    }
}

/// A local modification of a decomposition that leaves the surface fixed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Replace pants `(a, b, e)` and `(e, c, d)` by `(a, d, f)` and `(f, b, c)`.
    Flip { edge: usize },
    /// Insert a cylinder in the middle of an internal edge.
    SubdivideEdge { edge: usize },
    /// Attach a cylinder to an external leg.
    SubdivideExternal { index: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Flip { edge } => write!(f, "flip {edge}"),
            Move::SubdivideEdge { edge } => write!(f, "subdivide-edge {edge}"),
            Move::SubdivideExternal { index } => write!(f, "subdivide-external {index}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DecompositionGraph {
    pub atoms: Vec<Atom>,
    pub internal_edges: Vec<(LegRef, LegRef)>,
    /// Unmatched legs, in boundary order.
    pub external: Vec<LegRef>,
}

impl DecompositionGraph {
    pub fn new(atoms: Vec<Atom>, internal_edges: Vec<(LegRef, LegRef)>, external: Vec<LegRef>) -> Self {
        DecompositionGraph {
            atoms,
            internal_edges,
            external,
        }
    }

    pub fn orientation(&self, leg: LegRef) -> Orientation {
        self.atoms[leg.atom].legs[leg.leg]
    }

    pub fn edge_count(&self) -> usize {
        self.internal_edges.len()
    }

    /// Violations that do not depend on the surface: leg counts, dangling
    /// references, half-edge usage and edge orientations.
    pub fn structural_violations(&self) -> Vec<DecompositionViolation> {
        use DecompositionViolation::*;
        let mut report = Vec::new();
        for (i, atom) in self.atoms.iter().enumerate() {
            if atom.legs.len() != atom.kind.leg_count() {
                report.push(LegCount {
                    atom: i,
                    expected: atom.kind.leg_count(),
                    found: atom.legs.len(),
                });
            }
        }
        let mut uses: Vec<Vec<u32>> = self.atoms.iter().map(|a| vec![0; a.legs.len()]).collect();
        let mut count = |leg: LegRef, report: &mut Vec<DecompositionViolation>| -> bool {
            match uses.get_mut(leg.atom).and_then(|a| a.get_mut(leg.leg)) {
                Some(n) => {
                    *n += 1;
                    true
                }
                None => {
                    report.push(LegOutOfRange { leg });
                    false
                }
            }
        };
        for (e, &(x, y)) in self.internal_edges.iter().enumerate() {
            let ok_x = count(x, &mut report);
            let ok_y = count(y, &mut report);
            if ok_x && ok_y && self.orientation(x) == self.orientation(y) {
                report.push(EdgeSignsNotOpposite { edge: e });
            }
        }
        for &leg in &self.external {
            count(leg, &mut report);
        }
        for (a, legs) in uses.iter().enumerate() {
            for (l, &n) in legs.iter().enumerate() {
                let leg = LegRef::new(a, l);
                match n {
                    0 => report.push(HalfEdgeUnused { leg }),
                    1 => {}
                    _ => report.push(HalfEdgeReused { leg }),
                }
            }
        }
        report
    }

    /// Connected component of every atom. Components are numbered in order
    /// of first appearance along the external legs, then along the atoms.
    fn atom_components(&self) -> (Vec<usize>, usize) {
        let n = self.atoms.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &(x, y) in &self.internal_edges {
            let (a, b) = (find(&mut parent, x.atom), find(&mut parent, y.atom));
            parent[a.max(b)] = a.min(b);
        }
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        let order = self.external.iter().map(|l| l.atom).chain(0..n);
        for atom in order {
            let root = find(&mut parent, atom);
            if id[root] == usize::MAX {
                id[root] = next;
                next += 1;
            }
        }
        let comps = (0..n).map(|a| id[find(&mut parent, a)]).collect();
        (comps, next)
    }

    /// Per graph component: (genus = edges − atoms + 1, Euler characteristic
    /// of the union of atoms, number of external legs).
    fn component_invariants(&self, comps: &[usize], count: usize) -> Vec<(i64, i64, usize)> {
        let mut inv = vec![(1i64, 0i64, 0usize); count];
        for (a, atom) in self.atoms.iter().enumerate() {
            inv[comps[a]].0 -= 1;
            inv[comps[a]].1 += atom.kind.euler_characteristic();
        }
        for &(x, _) in &self.internal_edges {
            inv[comps[x.atom]].0 += 1;
        }
        for leg in &self.external {
            inv[comps[leg.atom]].2 += 1;
        }
        inv
    }

    /// The surface this decomposition describes (labels unset).
    pub fn infer_surface(&self) -> Result<Surface> {
        let report = self.structural_violations();
        if !report.is_empty() {
            return Err(Error::InvalidDecomposition(report));
        }
        let (comps, count) = self.atom_components();
        let inv = self.component_invariants(&comps, count);
        let genera = inv.iter().map(|&(g, _, _)| g as u32).collect();
        let boundary = self
            .external
            .iter()
            .map(|&leg| BoundaryCircle {
                orientation: self.orientation(leg),
                label: None,
                component: comps[leg.atom],
            })
            .collect();
        Surface::from_components(genera, boundary)
    }

    /// Every decomposition invariant checked against `surface`; empty iff
    /// this graph decomposes `surface`.
    pub fn validate(&self, surface: &Surface) -> Vec<DecompositionViolation> {
        use DecompositionViolation::*;
        let mut report = self.structural_violations();
        if !report.is_empty() {
            return report;
        }
        let boundary = surface.boundary();
        if self.external.len() != boundary.len() {
            report.push(ExternalCount {
                expected: boundary.len(),
                found: self.external.len(),
            });
        }
        for (i, (&leg, circle)) in self.external.iter().zip(boundary).enumerate() {
            if self.orientation(leg) != circle.orientation {
                report.push(ExternalOrientation { index: i });
            }
        }

        let (comps, count) = self.atom_components();
        let inv = self.component_invariants(&comps, count);
        let mut graph_to_surface = vec![None; count];
        let mut surface_to_graph = vec![None; surface.component_count()];
        for (i, (&leg, circle)) in self.external.iter().zip(boundary).enumerate() {
            let g = comps[leg.atom];
            let s = circle.component;
            let consistent = *graph_to_surface[g].get_or_insert(s) == s && *surface_to_graph[s].get_or_insert(g) == g;
            if !consistent {
                report.push(ComponentMismatch { index: i });
            }
        }
        // closed components are matched by genus
        let mut closed_graph: Vec<u32> = (0..count)
            .filter(|&g| graph_to_surface[g].is_none())
            .map(|g| inv[g].0.max(0) as u32)
            .collect();
        let mut closed_surface: Vec<u32> = (0..surface.component_count())
            .filter(|&s| surface_to_graph[s].is_none())
            .map(|s| surface.component_genera()[s])
            .collect();
        closed_graph.sort_unstable();
        closed_surface.sort_unstable();
        if closed_graph != closed_surface {
            report.push(ClosedComponents {
                expected: closed_surface,
                found: closed_graph,
            });
        }

        for (g, &(genus, euler, legs)) in inv.iter().enumerate() {
            let Some(s) = graph_to_surface[g] else {
                if genus < 0 || euler != 2 - 2 * genus {
                    report.push(Euler {
                        component: g,
                        expected: 2 - 2 * genus.max(0),
                        found: euler,
                    });
                }
                continue;
            };
            let expected_genus = surface.component_genera()[s];
            let expected_legs = surface.component_boundary(s).len() as i64;
            if genus != i64::from(expected_genus) {
                report.push(Genus {
                    component: s,
                    expected: expected_genus,
                    found: genus,
                });
            }
            let expected_euler = 2 - 2 * i64::from(expected_genus) - expected_legs;
            if euler != expected_euler || legs as i64 != expected_legs {
                report.push(Euler {
                    component: s,
                    expected: expected_euler,
                    found: euler,
                });
            }
        }
        report
    }

    /// A standard decomposition of `surface`, one block per component:
    /// disk for (0,1), cylinder for (0,2), two disks joined by a cylinder
    /// for the sphere, a self-glued cylinder for the torus, and otherwise
    /// `2g − 2 + n` pants: `g` self-glued handle pants hanging off a chain.
    pub fn canonical(surface: &Surface) -> DecompositionGraph {
        let mut b = Builder::default();
        let mut external = vec![LegRef::new(0, 0); surface.boundary().len()];
        for (c, &genus) in surface.component_genera().iter().enumerate() {
            let indices = surface.component_boundary(c);
            let orients: Vec<Orientation> = indices.iter().map(|&i| surface.boundary()[i].orientation).collect();
            let legs = b.component(genus, &orients);
            for (i, leg) in indices.into_iter().zip(legs) {
                external[i] = leg;
            }
        }
        DecompositionGraph {
            atoms: b.atoms,
            internal_edges: b.edges,
            external,
        }
    }

    /// `self ⊔ other` with external legs of `self` first.
    pub fn disjoint_union(&self, other: &DecompositionGraph) -> DecompositionGraph {
        let shift = self.atoms.len();
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        let mut internal_edges = self.internal_edges.clone();
        internal_edges.extend(
            other
                .internal_edges
                .iter()
                .map(|&(x, y)| (x.shifted(shift), y.shifted(shift))),
        );
        let mut external = self.external.clone();
        external.extend(other.external.iter().map(|l| l.shifted(shift)));
        DecompositionGraph {
            atoms,
            internal_edges,
            external,
        }
    }

    /// Glues external leg `i` of `self` to external leg `j` of `other` for
    /// each `(i, j)`; mirrors [`Surface::glue`].
    pub fn glue(&self, other: &DecompositionGraph, matching: &[(usize, usize)]) -> Result<DecompositionGraph> {
        check_matching(self.external.len(), other.external.len(), matching)?;
        for &(i, j) in matching {
            if self.orientation(self.external[i]) == other.orientation(other.external[j]) {
                return Err(Error::OrientationMismatch(i, j));
            }
        }
        let shift = self.external.len();
        let pairs: Vec<(usize, usize)> = matching.iter().map(|&(i, j)| (i, j + shift)).collect();
        self.disjoint_union(other).join(&pairs)
    }

    pub fn self_glue(&self, i: usize, j: usize) -> Result<DecompositionGraph> {
        self.join(&[(i, j)])
    }

    /// Turns pairs of external legs into internal edges.
    pub fn join(&self, pairs: &[(usize, usize)]) -> Result<DecompositionGraph> {
        let n = self.external.len();
        let mut used = vec![false; n];
        for &(i, j) in pairs {
            for k in [i, j] {
                if k >= n {
                    return Err(Error::IndexOutOfRange { index: k, len: n });
                }
                if std::mem::replace(&mut used[k], true) {
                    return Err(Error::DuplicateMatch(k));
                }
            }
            if self.orientation(self.external[i]) == self.orientation(self.external[j]) {
                return Err(Error::OrientationMismatch(i, j));
            }
        }
        let mut out = self.clone();
        out.internal_edges
            .extend(pairs.iter().map(|&(i, j)| (self.external[i], self.external[j])));
        out.external = (0..n).filter(|&k| !used[k]).map(|k| self.external[k]).collect();
        Ok(out)
    }

    /// Internal edges joining two distinct pants.
    pub fn flippable_edges(&self) -> Vec<usize> {
        self.internal_edges
            .iter()
            .enumerate()
            .filter(|(_, (x, y))| {
                x.atom != y.atom
                    && self.atoms[x.atom].kind == AtomKind::Pants
                    && self.atoms[y.atom].kind == AtomKind::Pants
            })
            .map(|(e, _)| e)
            .collect()
    }

    pub fn apply(&self, mv: Move) -> Result<DecompositionGraph> {
        match mv {
            Move::Flip { edge } => self.flip(edge),
            Move::SubdivideEdge { edge } => self.subdivide_edge(edge),
            Move::SubdivideExternal { index } => self.subdivide_external(index),
        }
    }

    /// The elementary move between the two pants decompositions of a
    /// four-holed sphere, applied along internal edge `edge`.
    pub fn flip(&self, edge: usize) -> Result<DecompositionGraph> {
        let &(x, y) = self
            .internal_edges
            .get(edge)
            .ok_or(Error::EdgeNotBetweenTwoPants(edge))?;
        let (pa, pb) = (x.atom, y.atom);
        if pa == pb || self.atoms[pa].kind != AtomKind::Pants || self.atoms[pb].kind != AtomKind::Pants {
            return Err(Error::EdgeNotBetweenTwoPants(edge));
        }
        let others = |leg: usize| -> [usize; 2] {
            let v: Vec<usize> = (0..3).filter(|&l| l != leg).collect();
            [v[0], v[1]]
        };
        let [a, b] = others(x.leg);
        let [c, d] = others(y.leg);
        let (oa, ob) = (self.atoms[pa].legs[a], self.atoms[pa].legs[b]);
        let (oc, od) = (self.atoms[pb].legs[c], self.atoms[pb].legs[d]);

        let remap = |leg: LegRef| -> LegRef {
            match (leg.atom, leg.leg) {
                (at, l) if at == pa && l == a => LegRef::new(pa, 0),
                (at, l) if at == pb && l == d => LegRef::new(pa, 1),
                (at, l) if at == pa && l == b => LegRef::new(pb, 1),
                (at, l) if at == pb && l == c => LegRef::new(pb, 2),
                _ => leg,
            }
        };
        let mut out = self.clone();
        out.atoms[pa] = Atom::pants([oa, od, Orientation::Induced]);
        out.atoms[pb] = Atom::pants([Orientation::Reversed, ob, oc]);
        for (e, pair) in out.internal_edges.iter_mut().enumerate() {
            *pair = if e == edge {
                (LegRef::new(pa, 2), LegRef::new(pb, 0))
            } else {
                (remap(pair.0), remap(pair.1))
            };
        }
        for leg in out.external.iter_mut() {
            *leg = remap(*leg);
        }
        Ok(out)
    }

    pub fn subdivide_edge(&self, edge: usize) -> Result<DecompositionGraph> {
        let len = self.internal_edges.len();
        let &(x, y) = self
            .internal_edges
            .get(edge)
            .ok_or(Error::IndexOutOfRange { index: edge, len })?;
        let o = self.orientation(x);
        let mut out = self.clone();
        let c = out.atoms.len();
        out.atoms.push(Atom::cylinder([o.opposite(), o]));
        out.internal_edges[edge] = (x, LegRef::new(c, 0));
        out.internal_edges.push((LegRef::new(c, 1), y));
        Ok(out)
    }

    pub fn subdivide_external(&self, index: usize) -> Result<DecompositionGraph> {
        let len = self.external.len();
        let &x = self.external.get(index).ok_or(Error::IndexOutOfRange { index, len })?;
        let o = self.orientation(x);
        let mut out = self.clone();
        let c = out.atoms.len();
        out.atoms.push(Atom::cylinder([o.opposite(), o]));
        out.internal_edges.push((x, LegRef::new(c, 0)));
        out.external[index] = LegRef::new(c, 1);
        Ok(out)
    }

    /// Same graph with every edge written low-leg first and the edge list
    /// sorted; two graphs differing only in edge bookkeeping normalize equal.
    pub fn normalized(&self) -> DecompositionGraph {
        let mut out = self.clone();
        for e in out.internal_edges.iter_mut() {
            if e.1 < e.0 {
                *e = (e.1, e.0);
            }
        }
        out.internal_edges.sort_unstable();
        out
    }
}

pub fn validate_decomposition(d: &DecompositionGraph, s: &Surface) -> Vec<DecompositionViolation> {
    d.validate(s)
}

pub fn canonical_decomposition(s: &Surface) -> DecompositionGraph {
    DecompositionGraph::canonical(s)
}

pub fn glue_decompositions(
    d1: &DecompositionGraph,
    d2: &DecompositionGraph,
    matching: &[(usize, usize)],
) -> Result<DecompositionGraph> {
    d1.glue(d2, matching)
}

#[derive(Default)]
struct Builder {
    atoms: Vec<Atom>,
    edges: Vec<(LegRef, LegRef)>,
}

enum End {
    Boundary(usize),
    Handle,
}

impl Builder {
    fn add(&mut self, atom: Atom) -> usize {
        self.atoms.push(atom);
        self.atoms.len() - 1
    }

    fn connect(&mut self, x: LegRef, y: LegRef) {
        debug_assert_ne!(self.atoms[x.atom].legs[x.leg], self.atoms[y.atom].legs[y.leg]);
        self.edges.push((x, y));
    }

    /// A self-glued pants whose free leg (leg 2) has orientation `free`.
    fn handle(&mut self, free: Orientation) -> LegRef {
        use Orientation::*;
        let h = self.add(Atom::pants([Induced, Reversed, free]));
        self.connect(LegRef::new(h, 0), LegRef::new(h, 1));
        LegRef::new(h, 2)
    }

    /// Builds one connected component; returns its external legs in the
    /// order of `orients`.
    fn component(&mut self, genus: u32, orients: &[Orientation]) -> Vec<LegRef> {
        use Orientation::*;
        let n = orients.len();
        match (genus, n) {
            (0, 0) => {
                let d0 = self.add(Atom::disk(Induced));
                let c = self.add(Atom::cylinder([Reversed, Induced]));
                let d1 = self.add(Atom::disk(Reversed));
                self.connect(LegRef::new(d0, 0), LegRef::new(c, 0));
                self.connect(LegRef::new(c, 1), LegRef::new(d1, 0));
                vec![]
            }
            (0, 1) => {
                let d = self.add(Atom::disk(orients[0]));
                vec![LegRef::new(d, 0)]
            }
            (0, 2) => {
                let c = self.add(Atom::cylinder([orients[0], orients[1]]));
                vec![LegRef::new(c, 0), LegRef::new(c, 1)]
            }
            (1, 0) => {
                let c = self.add(Atom::cylinder([Induced, Reversed]));
                self.connect(LegRef::new(c, 0), LegRef::new(c, 1));
                vec![]
            }
            (1, 1) => vec![self.handle(orients[0])],
            (2, 0) => {
                let a = self.handle(Induced);
                let b = self.handle(Reversed);
                self.connect(a, b);
                vec![]
            }
            _ => {
                let ends: Vec<End> = (0..n)
                    .map(End::Boundary)
                    .chain((0..genus).map(|_| End::Handle))
                    .collect();
                let chain = ends.len() - 2;
                let mut external = vec![LegRef::new(0, 0); n];
                let mut slot = 0;
                let mut prev: Option<LegRef> = None;
                for p in 0..chain {
                    let first = p == 0;
                    let last = p + 1 == chain;
                    let mut legs = Vec::with_capacity(3);
                    let mut attach = Vec::new();
                    if !first {
                        legs.push(Reversed);
                    }
                    let take = match (first, last) {
                        (true, true) => 3,
                        (true, false) | (false, true) => 2,
                        (false, false) => 1,
                    };
                    for _ in 0..take {
                        attach.push((legs.len(), &ends[slot]));
                        legs.push(match ends[slot] {
                            End::Boundary(i) => orients[i],
                            End::Handle => Reversed,
                        });
                        slot += 1;
                    }
                    if !last {
                        legs.push(Induced);
                    }
                    let atom = self.add(Atom::pants([legs[0], legs[1], legs[2]]));
                    if let Some(link) = prev {
                        self.connect(link, LegRef::new(atom, 0));
                    }
                    prev = (!last).then_some(LegRef::new(atom, 2));
                    for (leg, end) in attach {
                        let here = LegRef::new(atom, leg);
                        match *end {
                            End::Boundary(i) => external[i] = here,
                            End::Handle => {
                                let free = self.handle(Induced);
                                self.connect(free, here);
                            }
                        }
                    }
                }
                external
            }
        }
    }
}
