use std::sync::Arc;

use super::GradedBoundedPoset;
use crate::error::{Error, Result};

/// A finite atomic semimodular lattice, with its join and meet tables and a
/// fixed linear order on the atoms (their index order).
#[derive(Clone, Debug)]
pub struct GeometricLattice {
    poset: Arc<GradedBoundedPoset>,
    join: Vec<usize>,
    meet: Vec<usize>,
    atoms: Vec<usize>,
}

impl GeometricLattice {
    /// Validates the lattice, atomicity and semimodularity axioms.
    pub fn from_poset(poset: GradedBoundedPoset) -> Result<Self> {
        let n = poset.len();
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for x in 0..n {
            for y in x..n {
                let j = least_upper_bound(&poset, x, y)
                    .ok_or_else(|| Error::NotALattice(poset.label(x).into(), poset.label(y).into(), "join"))?;
                let m = greatest_lower_bound(&poset, x, y)
                    .ok_or_else(|| Error::NotALattice(poset.label(x).into(), poset.label(y).into(), "meet"))?;
                join[x * n + y] = j;
                join[y * n + x] = j;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
            }
        }
        let atoms: Vec<usize> = poset.upper_covers(poset.bottom()).to_vec();
        let lattice = GeometricLattice {
            poset: Arc::new(poset),
            join,
            meet,
            atoms,
        };
        lattice.check_geometric()?;
        Ok(lattice)
    }

    fn check_geometric(&self) -> Result<()> {
        let p = &*self.poset;
        for x in 0..p.len() {
            let j = self
                .atoms
                .iter()
                .filter(|&&a| p.leq(a, x))
                .fold(p.bottom(), |acc, &a| self.join(acc, a));
            if j != x {
                return Err(Error::NotGeometric {
                    axiom: "atomicity",
                    witness: format!("{} is not a join of atoms", p.label(x)),
                });
            }
        }
        for x in 0..p.len() {
            for y in x + 1..p.len() {
                let lhs = p.rank_of(x) + p.rank_of(y);
                let rhs = p.rank_of(self.join(x, y)) + p.rank_of(self.meet(x, y));
                if lhs < rhs {
                    return Err(Error::NotGeometric {
                        axiom: "semimodularity",
                        witness: format!("pair ({}, {})", p.label(x), p.label(y)),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &GradedBoundedPoset {
        &self.poset
    }

    pub fn poset_arc(&self) -> Arc<GradedBoundedPoset> {
        Arc::clone(&self.poset)
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.poset.rank()
    }

    pub fn bottom(&self) -> usize {
        self.poset.bottom()
    }

    pub fn top(&self) -> usize {
        self.poset.top()
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    /// Atoms in their fixed linear order.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Atoms of the interval `[x, y]`: the covers of `x` below `y`, in index order.
    pub fn interval_atoms(&self, x: usize, y: usize) -> Vec<usize> {
        self.poset
            .upper_covers(x)
            .iter()
            .copied()
            .filter(|&a| self.poset.leq(a, y))
            .collect()
    }

    /// The interval `[x, y]` as a geometric lattice of its own.
    pub fn interval(&self, x: usize, y: usize) -> Result<GeometricLattice> {
        GeometricLattice::from_poset(self.poset.interval(x, y)?)
    }
}

fn least_upper_bound(p: &GradedBoundedPoset, x: usize, y: usize) -> Option<usize> {
    let mut common = p.up_set(x).clone();
    common.intersect_with(p.up_set(y));
    // index order is a linear extension: the first common upper bound is minimal
    let c = common.iter().next()?;
    let size = common.count();
    (common.intersection_count(p.up_set(c)) == size).then_some(c)
}

fn greatest_lower_bound(p: &GradedBoundedPoset, x: usize, y: usize) -> Option<usize> {
    let mut common = p.down_set(x).clone();
    common.intersect_with(p.down_set(y));
    let c = common.iter().last()?;
    let size = common.count();
    (common.intersection_count(p.down_set(c)) == size).then_some(c)
}
