//! Reduced simplicial homology of order complexes.

use std::collections::{BTreeMap, HashMap};

use super::{Caps, GradedBoundedPoset};
use crate::error::Result;
use crate::linalg::SparseMatrix;

/// Reduced rational Betti numbers of the order complex of the open interval
/// `P° = P ∖ {0̂, 1̂}`, keyed by dimension from `-1` (the empty simplex) up
/// to the largest simplex dimension.
pub fn order_complex_homology(p: &GradedBoundedPoset, caps: &Caps) -> Result<BTreeMap<i64, usize>> {
    let chains = p.enumerate_chains(true, caps)?;
    let mut by_dim: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    for c in chains {
        by_dim.entry(c.interior.len() as i64 - 1).or_default().push(c.interior);
    }
    let index: HashMap<i64, HashMap<&[usize], usize>> = by_dim
        .iter()
        .map(|(&d, simplices)| (d, simplices.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()))
        .collect();
    // boundary ranks: ∂_d : C_d → C_{d-1}
    let mut boundary_rank: BTreeMap<i64, usize> = BTreeMap::new();
    for (&d, simplices) in &by_dim {
        let Some(lower) = index.get(&(d - 1)) else {
            boundary_rank.insert(d, 0);
            continue;
        };
        let columns = simplices
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut face = s.clone();
                        face.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (lower[face.as_slice()], sign)
                    })
                    .collect()
            })
            .collect();
        boundary_rank.insert(d, SparseMatrix::from_columns(lower.len(), columns).rank());
    }
    Ok(by_dim
        .iter()
        .map(|(&d, simplices)| {
            let out = boundary_rank[&d];
            let inc = boundary_rank.get(&(d + 1)).copied().unwrap_or(0);
            (d, simplices.len() - out - inc)
        })
        .collect())
}
