//! Fusion rings: a finite label set with a dual involution and integer
//! fusion multiplicities `N_{ab}^c`.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a simple sector in a [`FusionRing`]. Index 0 is the vacuum.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub usize);

impl Label {
    pub const VACUUM: Label = Label(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Dense table `N_{ab}^c`, stored row-major in `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    rank: usize,
    entries: Vec<u64>,
}

impl FusionTensor {
    pub fn zeros(rank: usize) -> Self {
        FusionTensor {
            rank,
            entries: vec![0; rank * rank * rank],
        }
    }

    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize, usize) -> u64) -> Self {
        let mut t = Self::zeros(rank);
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    t.set(a, b, c, f(a, b, c));
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        self.entries[(a * self.rank + b) * self.rank + c]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, c: usize, n: u64) {
        self.entries[(a * self.rank + b) * self.rank + c] = n;
    }

    /// Nonzero entries in `(a, b, c)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        let r = self.rank;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(move |(i, &n)| (i / (r * r), (i / r) % r, i % r, n))
    }
}

/// One failed fusion-ring axiom together with a witness tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingViolation {
    DualOfVacuum {
        dual: usize,
    },
    DualNotInvolution {
        label: usize,
    },
    /// `N_{0a}^b` or `N_{a0}^b` differs from `δ_{ab}`.
    Unit {
        a: usize,
        b: usize,
    },
    Commutativity {
        a: usize,
        b: usize,
        c: usize,
    },
    Associativity {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
    /// `N_{ab}^0` differs from `δ_{b, dual(a)}`.
    Rigidity {
        a: usize,
        b: usize,
    },
    DualCompatibility {
        a: usize,
        b: usize,
        c: usize,
    },
}

/// Axiom families, used to classify [`RingViolation`]s.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Involution,
    Unit,
    Commutativity,
    Associativity,
    Rigidity,
    DualCompatibility,
}

impl RingViolation {
    pub fn axiom(&self) -> Axiom {
        match self {
            RingViolation::DualOfVacuum { .. } | RingViolation::DualNotInvolution { .. } => Axiom::Involution,
            RingViolation::Unit { .. } => Axiom::Unit,
            RingViolation::Commutativity { .. } => Axiom::Commutativity,
            RingViolation::Associativity { .. } => Axiom::Associativity,
            RingViolation::Rigidity { .. } => Axiom::Rigidity,
            RingViolation::DualCompatibility { .. } => Axiom::DualCompatibility,
        }
    }
}

impl fmt::Display for RingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingViolation::DualOfVacuum { dual } => write!(f, "dual(0) = {dual}, expected 0"),
            RingViolation::DualNotInvolution { label } => {
                write!(f, "dual(dual({label})) != {label}")
            }
            RingViolation::Unit { a, b } => write!(f, "unit axiom fails at ({a}, {b})"),
            RingViolation::Commutativity { a, b, c } => {
                write!(f, "N[{a}][{b}][{c}] != N[{b}][{a}][{c}]")
            }
            RingViolation::Associativity { a, b, c, d } => {
                write!(f, "associativity fails at ({a}, {b}, {c}; {d})")
            }
            RingViolation::Rigidity { a, b } => write!(f, "rigidity fails at ({a}, {b})"),
            RingViolation::DualCompatibility { a, b, c } => {
                write!(f, "N[{a}][{b}][{c}] differs from its dual entry")
            }
        }
    }
}

/// A finite fusion ring with named labels. The vacuum is always index 0.
///
/// Construction only checks shapes; the ring axioms are checked by
/// [`FusionRing::validate`] so that invalid rings can still be reported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    names: Vec<String>,
    dual: Vec<usize>,
    n: FusionTensor,
}

impl FusionRing {
    pub fn from_parts(names: Vec<String>, dual: Vec<usize>, n: FusionTensor) -> Result<Self> {
        let rank = names.len();
        if rank == 0 {
            return Err(Error::Validation("a fusion ring needs at least one label".into()));
        }
        if dual.len() != rank {
            return Err(Error::Validation(format!(
                "dual map has {} entries for {rank} labels",
                dual.len()
            )));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::LabelOutOfRange { label: bad, rank });
        }
        if n.rank() != rank {
            return Err(Error::Validation(format!(
                "fusion tensor has rank {} for {rank} labels",
                n.rank()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::Validation(format!("duplicate label name {name:?}")));
            }
        }
        Ok(FusionRing { names, dual, n })
    }

    /// Builds a ring from a rule `(a, b, c) -> N_{ab}^c`.
    pub fn from_rule<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        dual: Vec<usize>,
        rule: impl FnMut(usize, usize, usize) -> u64,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = FusionTensor::from_fn(names.len(), rule);
        Self::from_parts(names, dual, n)
    }

    /// Checks all axioms and fails with the full report if any is violated.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidRing(report))
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        (0..self.rank()).map(Label)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, label: Label) -> &str {
        &self.names[label.0]
    }

    pub fn label(&self, name: &str) -> Result<Label> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Label)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn dual(&self, label: Label) -> Label {
        Label(self.dual[label.0])
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    pub fn tensor(&self) -> &FusionTensor {
        &self.n
    }

    /// `N_{ab}^c`; panics on out-of-range labels.
    #[inline]
    pub fn n(&self, a: Label, b: Label, c: Label) -> u64 {
        self.n.get(a.0, b.0, c.0)
    }

    pub fn check(&self, label: Label) -> Result<Label> {
        if label.0 < self.rank() {
            Ok(label)
        } else {
            Err(Error::LabelOutOfRange {
                label: label.0,
                rank: self.rank(),
            })
        }
    }

    /// Multiplicity of the vacuum in `a ⊠ b ⊠ c`, i.e. `N_{ab}^{dual(c)}`.
    pub fn n3(&self, a: Label, b: Label, c: Label) -> Result<u64> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        Ok(self.n(a, b, self.dual(c)))
    }

    /// Multiplicity of the vacuum in `λ₁ ⊠ … ⊠ λₙ`, contracted left to right.
    /// The empty product is the vacuum itself.
    pub fn n_vacuum(&self, labels: &[Label]) -> Result<u64> {
        let rank = self.rank();
        for &l in labels {
            self.check(l)?;
        }
        let mut acc = vec![0u64; rank];
        acc[0] = 1;
        let mut next = vec![0u64; rank];
        for &l in labels {
            next.iter_mut().for_each(|x| *x = 0);
            for (s, &weight) in acc.iter().enumerate() {
                if weight == 0 {
                    continue;
                }
                for (nu, slot) in next.iter_mut().enumerate() {
                    let m = self.n.get(s, l.0, nu);
                    if m != 0 {
                        let term = weight.checked_mul(m).ok_or(Error::Overflow)?;
                        *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
                    }
                }
            }
            std::mem::swap(&mut acc, &mut next);
        }
        Ok(acc[0])
    }

    /// Lists every violated axiom with a witness; empty iff the ring is valid.
    pub fn validate(&self) -> Vec<RingViolation> {
        let r = self.rank();
        let n = |a: usize, b: usize, c: usize| self.n.get(a, b, c);
        let delta = |x: usize, y: usize| u64::from(x == y);
        let mut report = Vec::new();

        let mut involutive = true;
        if self.dual[0] != 0 {
            report.push(RingViolation::DualOfVacuum { dual: self.dual[0] });
            involutive = false;
        }
        for a in 0..r {
            if self.dual[self.dual[a]] != a {
                report.push(RingViolation::DualNotInvolution { label: a });
                involutive = false;
            }
        }

        for a in 0..r {
            for b in 0..r {
                if n(0, a, b) != delta(a, b) || n(a, 0, b) != delta(a, b) {
                    report.push(RingViolation::Unit { a, b });
                }
            }
        }

        for a in 0..r {
            for b in (a + 1)..r {
                for c in 0..r {
                    if n(a, b, c) != n(b, a, c) {
                        report.push(RingViolation::Commutativity { a, b, c });
                    }
                }
            }
        }

        // (a ⊠ b) ⊠ c against a ⊠ (b ⊠ c), compared in u128.
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let left: u128 = (0..r).map(|s| u128::from(n(a, b, s)) * u128::from(n(s, c, d))).sum();
                        let right: u128 = (0..r).map(|s| u128::from(n(b, c, s)) * u128::from(n(a, s, d))).sum();
                        if left != right {
                            report.push(RingViolation::Associativity { a, b, c, d });
                        }
                    }
                }
            }
        }

        for a in 0..r {
            for b in 0..r {
                if n(a, b, 0) != delta(b, self.dual[a]) {
                    report.push(RingViolation::Rigidity { a, b });
                }
            }
        }

        if involutive {
            let d = &self.dual;
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        if n(a, b, c) != n(d[a], d[b], d[c]) {
                            report.push(RingViolation::DualCompatibility { a, b, c });
                        }
                    }
                }
            }
        }
        report
    }
}

/// Free-function form of [`FusionRing::validate`].
pub fn validate_ring(ring: &FusionRing) -> Vec<RingViolation> {
    ring.validate()
}
