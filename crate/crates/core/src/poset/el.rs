//! Edge labelings of cover relations and the EL-shellability check.

use std::collections::HashMap;

use super::GeometricLattice;
use crate::error::{Error, Result};

/// A labeling of the cover relations of a lattice by integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElLabeling {
    labels: HashMap<(usize, usize), usize>,
}

/// The minimal-atom labeling: `λ(x ⋖ y)` is the position (starting at 1)
/// of the least atom `a` with `x ∨ a = y`.
pub fn el_labeling_min_atom(lattice: &GeometricLattice) -> ElLabeling {
    let p = lattice.poset();
    let mut labels = HashMap::new();
    for x in 0..lattice.len() {
        for &y in p.upper_covers(x) {
            let idx = lattice
                .atoms()
                .iter()
                .position(|&a| lattice.join(x, a) == y)
                .expect("every cover of a geometric lattice is reached by an atom");
            labels.insert((x, y), idx + 1);
        }
    }
    ElLabeling { labels }
}

impl ElLabeling {
    /// Label of the cover `x ⋖ y`, or `None` if it is not a cover.
    pub fn label(&self, x: usize, y: usize) -> Option<usize> {
        self.labels.get(&(x, y)).copied()
    }

    /// Label word of a saturated chain given as its full element sequence.
    pub fn word(&self, chain: &[usize]) -> Vec<usize> {
        chain
            .windows(2)
            .map(|w| self.label(w[0], w[1]).expect("chain steps must be covers"))
            .collect()
    }

    /// Maximal chains of `[x, y]` whose labels weakly increase.
    pub fn increasing_chains(&self, lattice: &GeometricLattice, x: usize, y: usize) -> Vec<Vec<usize>> {
        lattice
            .poset()
            .maximal_chains(x, y)
            .into_iter()
            .filter(|c| self.word(c).windows(2).all(|w| w[0] <= w[1]))
            .collect()
    }

    /// Maximal chains of `[x, y]` whose labels strictly decrease.
    pub fn decreasing_chains(&self, lattice: &GeometricLattice, x: usize, y: usize) -> Vec<Vec<usize>> {
        lattice
            .poset()
            .maximal_chains(x, y)
            .into_iter()
            .filter(|c| self.word(c).windows(2).all(|w| w[0] > w[1]))
            .collect()
    }

    /// Checks the EL property on every interval of rank at most `max_rank`:
    /// exactly one weakly increasing maximal chain, and its word is
    /// lexicographically strictly smallest.
    pub fn verify(&self, lattice: &GeometricLattice, max_rank: usize) -> Result<()> {
        let p = lattice.poset();
        for x in 0..p.len() {
            for y in p.up_set(x).iter().filter(|&y| y != x) {
                if p.interval_rank(x, y) > max_rank {
                    continue;
                }
                let mut words: Vec<Vec<usize>> = p.maximal_chains(x, y).iter().map(|c| self.word(c)).collect();
                let increasing = words.iter().filter(|w| w.windows(2).all(|v| v[0] <= v[1])).count();
                if increasing != 1 {
                    return Err(Error::ElVerificationFailed(x, y));
                }
                words.sort();
                let least_is_increasing = words[0].windows(2).all(|v| v[0] <= v[1]);
                let least_is_unique = words.len() < 2 || words[0] < words[1];
                if !least_is_increasing || !least_is_unique {
                    return Err(Error::ElVerificationFailed(x, y));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_lattice, Caps, MatroidSpec};

    #[test]
    fn boolean_two_words() {
        let l = build_lattice(&MatroidSpec::Boolean(2), &Caps::default()).unwrap();
        let el = el_labeling_min_atom(&l);
        let a = l.atoms();
        assert_eq!(el.word(&[0, a[0], l.top()]), vec![1, 2]);
        assert_eq!(el.word(&[0, a[1], l.top()]), vec![2, 1]);
        el.verify(&l, usize::MAX).unwrap();
    }

    #[test]
    fn rank_one_single_label() {
        let l = build_lattice(&MatroidSpec::Boolean(1), &Caps::default()).unwrap();
        let el = el_labeling_min_atom(&l);
        assert_eq!(el.label(0, 1), Some(1));
        el.verify(&l, usize::MAX).unwrap();
    }

    #[test]
    fn partition_three_has_one_increasing_chain() {
        let l = build_lattice(&MatroidSpec::Partition(3), &Caps::default()).unwrap();
        let el = el_labeling_min_atom(&l);
        assert_eq!(el.increasing_chains(&l, 0, l.top()).len(), 1);
        assert_eq!(el.decreasing_chains(&l, 0, l.top()).len(), 2);
    }
}
