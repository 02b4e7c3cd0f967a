//! Topological types of compact oriented surfaces with ordered boundary, and
//! gluing along boundary circles.

use crate::error::{Error, Result};
use crate::fusion::Label;

/// Orientation of a circle relative to the surface (or atom) it bounds.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// The circle carries the orientation induced by the surface (`+`).
    Induced,
    /// The circle carries the opposite orientation (`-`).
    Reversed,
}

impl Orientation {
    pub fn opposite(self) -> Orientation {
        match self {
            Orientation::Induced => Orientation::Reversed,
            Orientation::Reversed => Orientation::Induced,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Induced => 1,
            Orientation::Reversed => -1,
        }
    }

    pub fn from_sign(sign: i8) -> Option<Orientation> {
        match sign {
            1 => Some(Orientation::Induced),
            -1 => Some(Orientation::Reversed),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Orientation::Induced => "+",
            Orientation::Reversed => "-",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryCircle {
    pub orientation: Orientation,
    pub label: Option<Label>,
    /// Index of the connected component this circle bounds.
    pub component: usize,
}

/// A possibly disconnected compact oriented surface, up to homeomorphism,
/// with an ordered list of boundary circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surface {
    genera: Vec<u32>,
    boundary: Vec<BoundaryCircle>,
}

impl Surface {
    /// The empty surface.
    pub fn empty() -> Surface {
        Surface {
            genera: vec![],
            boundary: vec![],
        }
    }

    pub fn connected(genus: u32, orientations: impl IntoIterator<Item = Orientation>) -> Surface {
        let boundary = orientations
            .into_iter()
            .map(|orientation| BoundaryCircle {
                orientation,
                label: None,
                component: 0,
            })
            .collect();
        Surface {
            genera: vec![genus],
            boundary,
        }
    }

    /// Connected surface of genus `genus` with `n` boundary circles, all
    /// carrying the induced orientation.
    pub fn standard(genus: u32, n: usize) -> Surface {
        Self::connected(genus, std::iter::repeat_n(Orientation::Induced, n))
    }

    /// Builds a surface from per-component genera and boundary circles.
    pub fn from_components(genera: Vec<u32>, boundary: Vec<BoundaryCircle>) -> Result<Surface> {
        if let Some(c) = boundary.iter().find(|c| c.component >= genera.len()) {
            return Err(Error::Validation(format!(
                "boundary circle refers to component {} of {}",
                c.component,
                genera.len()
            )));
        }
        Ok(Surface { genera, boundary })
    }

    pub fn with_labels(mut self, labels: &[Option<Label>]) -> Result<Surface> {
        if labels.len() != self.boundary.len() {
            return Err(Error::LabelingLength {
                expected: self.boundary.len(),
                found: labels.len(),
            });
        }
        for (c, &l) in self.boundary.iter_mut().zip(labels) {
            c.label = l;
        }
        Ok(self)
    }

    /// Total genus (sum over components).
    pub fn genus(&self) -> u32 {
        self.genera.iter().sum()
    }

    pub fn component_genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn component_count(&self) -> usize {
        self.genera.len()
    }

    pub fn is_connected(&self) -> bool {
        self.genera.len() == 1
    }

    pub fn boundary(&self) -> &[BoundaryCircle] {
        &self.boundary
    }

    pub fn orientations(&self) -> Vec<Orientation> {
        self.boundary.iter().map(|c| c.orientation).collect()
    }

    /// Boundary labels, if every circle carries one.
    pub fn labels(&self) -> Option<Vec<Label>> {
        self.boundary.iter().map(|c| c.label).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let closed: i64 = self.genera.iter().map(|&g| 2 - 2 * i64::from(g)).sum();
        closed - self.boundary.len() as i64
    }

    /// Boundary indices of component `c`, in boundary order.
    pub fn component_boundary(&self, c: usize) -> Vec<usize> {
        (0..self.boundary.len())
            .filter(|&i| self.boundary[i].component == c)
            .collect()
    }

    /// `self ⊔ other`: components and boundary of `self` first.
    pub fn disjoint_union(&self, other: &Surface) -> Surface {
        let shift = self.genera.len();
        let mut genera = self.genera.clone();
        genera.extend_from_slice(&other.genera);
        let mut boundary = self.boundary.clone();
        boundary.extend(other.boundary.iter().map(|c| BoundaryCircle {
            component: c.component + shift,
            ..*c
        }));
        Surface { genera, boundary }
    }

    /// Glues boundary circle `i` of `self` to circle `j` of `other` for every
    /// `(i, j)` in `matching`. The remaining circles of `self`, then of
    /// `other`, form the new boundary in their original order.
    pub fn glue(&self, other: &Surface, matching: &[(usize, usize)]) -> Result<Surface> {
        check_matching(self.boundary.len(), other.boundary.len(), matching)?;
        for &(i, j) in matching {
            if self.boundary[i].orientation == other.boundary[j].orientation {
                return Err(Error::OrientationMismatch(i, j));
            }
        }
        let shift = self.boundary.len();
        let pairs: Vec<(usize, usize)> = matching.iter().map(|&(i, j)| (i, j + shift)).collect();
        self.disjoint_union(other).join(&pairs)
    }

    /// Glues two boundary circles of the same surface.
    pub fn self_glue(&self, i: usize, j: usize) -> Result<Surface> {
        self.join(&[(i, j)])
    }

    /// Identifies boundary circles pairwise. Every index must be distinct and
    /// every pair must carry opposite orientations.
    pub fn join(&self, pairs: &[(usize, usize)]) -> Result<Surface> {
        let n = self.boundary.len();
        let mut used = vec![false; n];
        for &(i, j) in pairs {
            for k in [i, j] {
                if k >= n {
                    return Err(Error::IndexOutOfRange { index: k, len: n });
                }
                if used[k] {
                    return Err(Error::DuplicateMatch(k));
                }
                used[k] = true;
            }
            if self.boundary[i].orientation == self.boundary[j].orientation {
                return Err(Error::OrientationMismatch(i, j));
            }
        }

        // Union-find over components; each gluing either merges two
        // components or adds a handle.
        let c = self.genera.len();
        let mut parent: Vec<usize> = (0..c).collect();
        let mut extra = vec![0u32; c];
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for &(i, j) in pairs {
            let (a, b) = (
                find(&mut parent, self.boundary[i].component),
                find(&mut parent, self.boundary[j].component),
            );
            if a == b {
                extra[a] += 1;
            } else {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
                extra[lo] += extra[hi];
            }
        }
        let mut new_index = vec![usize::MAX; c];
        let mut genera = Vec::new();
        for comp in 0..c {
            let root = find(&mut parent, comp);
            if new_index[root] == usize::MAX {
                new_index[root] = genera.len();
                genera.push(extra[root]);
            }
            genera[new_index[root]] += self.genera[comp];
        }
        let boundary = self
            .boundary
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(_, b)| BoundaryCircle {
                component: new_index[find(&mut parent, b.component)],
                ..*b
            })
            .collect();
        Ok(Surface { genera, boundary })
    }
}

pub(crate) fn check_matching(len_a: usize, len_b: usize, matching: &[(usize, usize)]) -> Result<()> {
    let mut seen_a = vec![false; len_a];
    let mut seen_b = vec![false; len_b];
    for &(i, j) in matching {
        if i >= len_a {
            return Err(Error::IndexOutOfRange { index: i, len: len_a });
        }
        if j >= len_b {
            return Err(Error::IndexOutOfRange { index: j, len: len_b });
        }
        if std::mem::replace(&mut seen_a[i], true) {
            return Err(Error::DuplicateMatch(i));
        }
        if std::mem::replace(&mut seen_b[j], true) {
            return Err(Error::DuplicateMatch(j));
        }
    }
    Ok(())
}
