//! Bar constructions, lattice paths, KLS subcomplexes, the Koszul complex
//! and exact cohomology.
//!
//! A basis element of `Bar(Gerst)(L)` is a chain `0̂ = G_0 < … < G_n = 1̂`
//! with one dual-nbc basis element per interval. It sits in degree
//! `rk L − n`. The differential merges adjacent factors at `G_{k+1}` with
//! sign `(−1)^k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gerst::GerstOperad;
use crate::linalg::SparseMatrix;
use crate::os::AtomSet;
use crate::poly::Poly;
use crate::poset::{Caps, GradedBoundedPoset};

/// A chain with a bigrade `(i_k, j_k)` on each of its intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSummand {
    /// Full chain `G_0 < … < G_n`.
    pub chain: Vec<usize>,
    /// Ranks of the chain elements, measured from `G_0`.
    pub ranks: Vec<usize>,
    /// `(C-weight, L-weight)` of each interval `[G_k, G_{k+1}]`.
    pub bigrades: Vec<(usize, usize)>,
}

impl ChainSummand {
    pub fn new(chain: Vec<usize>, ranks: Vec<usize>, bigrades: Vec<(usize, usize)>) -> Self {
        debug_assert_eq!(chain.len(), ranks.len());
        debug_assert_eq!(chain.len(), bigrades.len() + 1);
        ChainSummand { chain, ranks, bigrades }
    }

    pub fn rank(&self) -> usize {
        self.ranks.last().copied().unwrap_or(0) - self.ranks.first().copied().unwrap_or(0)
    }

    pub fn intervals(&self) -> usize {
        self.bigrades.len()
    }

    /// Cohomological degree `rk − n`.
    pub fn degree(&self) -> i64 {
        self.rank() as i64 - self.intervals() as i64
    }

    /// Total C-weight.
    pub fn weight(&self) -> usize {
        self.bigrades.iter().map(|b| b.0).sum()
    }

    /// Total L-weight.
    pub fn l_weight(&self) -> usize {
        self.bigrades.iter().map(|b| b.1).sum()
    }

    /// `(rank, C-weight, L-weight)` of each interval, bottom first. KLS
    /// membership depends on this shape only.
    pub fn shape(&self) -> Vec<(usize, usize, usize)> {
        self.bigrades
            .iter()
            .zip(self.ranks.windows(2))
            .map(|(&(i, j), r)| (r[1] - r[0], i, j))
            .collect()
    }

    /// The summand with `C` and `L` exchanged.
    pub fn swapped(&self) -> Self {
        ChainSummand {
            chain: self.chain.clone(),
            ranks: self.ranks.clone(),
            bigrades: self.bigrades.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// The summand read from top to bottom (chain reversed, ranks taken
    /// from the top).
    pub fn flipped(&self) -> Self {
        let top = self.ranks.last().copied().unwrap_or(0);
        ChainSummand {
            chain: self.chain.iter().rev().copied().collect(),
            ranks: self.ranks.iter().rev().map(|r| top - r).collect(),
            bigrades: self.bigrades.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for ChainSummand {
    /// Storeys from top to bottom, e.g. `L/C` for `L` over `C`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let storeys: Vec<String> = self
            .bigrades
            .iter()
            .rev()
            .map(|&(i, j)| {
                let letter = |c: char, n: usize| match n {
                    0 => String::new(),
                    1 => c.to_string(),
                    _ => format!("{c}^{n}"),
                };
                let s = format!("{}{}", letter('C', i), letter('L', j));
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        write!(f, "{}", storeys.join("/"))
    }
}

/// A lattice path: values at a finite set of integer positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    /// `(position, value)` pairs sorted by position.
    pub points: Vec<(i64, i64)>,
}

impl LatticePath {
    /// Reads the summand from the top: `φ(0) = 0` at `1̂`, each interval
    /// adds `j − i` (L steps up, C steps down); positions are `rk − rk G_q`.
    pub fn of_summand(s: &ChainSummand) -> Self {
        let rk = s.rank() as i64;
        let base = s.ranks.first().copied().unwrap_or(0) as i64;
        let n = s.intervals();
        let mut points = Vec::with_capacity(n + 1);
        let mut value = 0i64;
        points.push((rk - (s.ranks[n] as i64 - base), 0));
        for k in (0..n).rev() {
            let (i, j) = s.bigrades[k];
            value += j as i64 - i as i64;
            points.push((rk - (s.ranks[k] as i64 - base), value));
        }
        LatticePath { points }
    }

    fn min_pos(&self) -> (i64, i64) {
        self.points[0]
    }

    fn max_pos(&self) -> (i64, i64) {
        *self.points.last().expect("a path has at least one point")
    }

    pub fn rank(&self) -> i64 {
        self.max_pos().0 - self.min_pos().0
    }

    pub fn degree(&self) -> i64 {
        self.rank() - self.points.len() as i64 + 1
    }

    /// `(max I − min I − φ(max I) + φ(min I)) / 2`.
    pub fn weight(&self) -> i64 {
        let num = self.rank() - self.max_pos().1 + self.min_pos().1;
        debug_assert_eq!(num % 2, 0);
        num / 2
    }

    /// Points strictly between the two ends.
    pub fn interior(&self) -> &[(i64, i64)] {
        match self.points.len() {
            0..=2 => &[],
            n => &self.points[1..n - 1],
        }
    }

    /// Position and value of the leftmost interior minimum.
    pub fn interior_min(&self) -> Option<(i64, i64)> {
        self.interior().iter().copied().min_by_key(|&(p, v)| (v, p))
    }

    pub fn end_value(&self) -> i64 {
        self.max_pos().1
    }
}

/// The four KLS subcomplexes of `Bar(Gerst)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Rkls,
    Lkls,
    RklsHat,
    LklsHat,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Rkls, Variant::Lkls, Variant::RklsHat, Variant::LklsHat];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Rkls => "rkls",
            Variant::Lkls => "lkls",
            Variant::RklsHat => "rkls-hat",
            Variant::LklsHat => "lkls-hat",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Variant::ALL.into_iter().find(|v| v.name() == s)
    }

    pub fn is_hat(&self) -> bool {
        matches!(self, Variant::RklsHat | Variant::LklsHat)
    }

    /// The weight a summand carries in this variant: the C-weight, or the
    /// L-weight for the hatted variants.
    pub fn weight_of(&self, s: &ChainSummand) -> usize {
        if self.is_hat() {
            s.l_weight()
        } else {
            s.weight()
        }
    }
}

/// Membership through the defining half-rank inequalities.
fn filter_by_inequalities(s: &ChainSummand, variant: Variant) -> bool {
    let n = s.intervals();
    let grade = |k: usize| {
        let (i, j) = s.bigrades[k];
        if variant.is_hat() {
            j
        } else {
            i
        }
    };
    let rk_top = *s.ranks.last().expect("nonempty chain");
    let rk_bottom = s.ranks[0];
    match variant {
        Variant::Rkls | Variant::RklsHat => (1..n).all(|q| {
            let sum: usize = (q..n).map(grade).sum();
            2 * sum < rk_top - s.ranks[q]
        }),
        Variant::Lkls | Variant::LklsHat => (0..n.saturating_sub(1)).all(|q| {
            let sum: usize = (0..=q).map(grade).sum();
            2 * sum < s.ranks[q + 1] - rk_bottom
        }),
    }
}

/// Membership through the associated lattice path.
fn filter_by_path(s: &ChainSummand, variant: Variant) -> bool {
    let path = LatticePath::of_summand(s);
    let end = path.end_value();
    path.interior().iter().all(|&(_, v)| match variant {
        Variant::Rkls => v > 0,
        Variant::RklsHat => v < 0,
        Variant::Lkls => v < end,
        Variant::LklsHat => v > end,
    })
}

/// Whether the summand belongs to the given KLS complex. Both
/// characterizations are evaluated and must agree.
pub fn kls_filter(s: &ChainSummand, variant: Variant) -> Result<bool> {
    let a = filter_by_inequalities(s, variant);
    let b = filter_by_path(s, variant);
    if a != b {
        return Err(Error::CharacterizationMismatch(format!("{} summand {s}", variant.name())));
    }
    Ok(a)
}

/// A cochain complex with one basis per degree and differentials
/// `d^k : C^k → C^{k+1}` as sparse integer matrices.
#[derive(Clone, Debug, Default)]
pub struct GradedChainComplex {
    pub name: String,
    pub weight: Option<usize>,
    pub dims: BTreeMap<i64, usize>,
    pub differentials: BTreeMap<i64, SparseMatrix>,
    /// Summand of each basis vector, per degree (empty for complexes not
    /// built from chains).
    pub summands: BTreeMap<i64, Vec<ChainSummand>>,
}

impl GradedChainComplex {
    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Distinct summands (chain and bigrade shapes) per degree.
    pub fn summand_shapes(&self) -> BTreeMap<i64, Vec<ChainSummand>> {
        self.summands
            .iter()
            .map(|(&k, v)| {
                let mut s = v.clone();
                s.sort();
                s.dedup();
                (k, s)
            })
            .collect()
    }

    /// Checks `d^{k+1} ∘ d^k = 0` in every degree.
    pub fn check_d_squared(&self) -> Result<()> {
        for (&k, d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(k + 1)) {
                match next.mul(d) {
                    Some(p) if p.is_zero() => {}
                    _ => return Err(Error::DSquareNonzero(k)),
                }
            }
        }
        Ok(())
    }

    /// Alternating sum of dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&k, &n)| if k.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Betti numbers of a complex: `dim C^k − rank d^k − rank d^{k−1}`.
/// Degrees with zero cohomology are included.
pub fn cohomology(c: &GradedChainComplex) -> BTreeMap<i64, usize> {
    let ranks: BTreeMap<i64, usize> = c
        .differentials
        .par_iter()
        .map(|(&k, d)| (k, d.rank()))
        .collect();
    c.dims
        .iter()
        .map(|(&k, &n)| {
            let out = ranks.get(&k).copied().unwrap_or(0);
            let inc = ranks.get(&(k - 1)).copied().unwrap_or(0);
            (k, n - out - inc)
        })
        .collect()
}

/// Betti numbers of a family of complexes indexed by weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub betti: BTreeMap<usize, BTreeMap<i64, usize>>,
    pub chain_dims: BTreeMap<usize, BTreeMap<i64, usize>>,
}

impl BettiTable {
    pub fn insert(&mut self, weight: usize, complex: &GradedChainComplex) {
        self.betti.insert(weight, cohomology(complex));
        self.chain_dims.insert(weight, complex.dims.clone());
    }

    fn alternating(m: &BTreeMap<i64, usize>) -> i64 {
        m.iter()
            .map(|(&k, &n)| if k.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Euler characteristic at a weight, from the Betti numbers.
    pub fn euler(&self, weight: usize) -> i64 {
        self.betti.get(&weight).map_or(0, Self::alternating)
    }

    /// Euler characteristic at a weight, from the chain dimensions.
    pub fn chain_euler(&self, weight: usize) -> i64 {
        self.chain_dims.get(&weight).map_or(0, Self::alternating)
    }

    /// Degrees with nonzero cohomology at a weight.
    pub fn support(&self, weight: usize) -> Vec<i64> {
        self.betti
            .get(&weight)
            .map(|m| m.iter().filter(|&(_, &n)| n > 0).map(|(&k, _)| k).collect())
            .unwrap_or_default()
    }
}

/// Which operad's bar construction to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarOperad {
    Gerst,
    /// The pure-C slice (weight `rk`).
    Com,
    /// The pure-L slice (weight 0).
    Lie,
}

type Element = (Vec<usize>, Vec<AtomSet>);

/// Chains of the open interior of `[0̂, 1̂]`, as full sequences.
fn full_chains(p: &GradedBoundedPoset, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    Ok(p.enumerate_chains(true, caps)?.into_iter().map(|c| c.full()).collect())
}

/// Assembles the weight-`w` part of `Bar(Gerst)(L)`, optionally restricted
/// to a KLS variant (where `w` is the variant's weight).
fn assemble(gerst: &GerstOperad, w: usize, variant: Option<Variant>, caps: &Caps) -> Result<GradedChainComplex> {
    let lattice = gerst.lattice();
    let p = lattice.poset();
    let rk = p.rank();
    let name = match variant {
        Some(v) => v.name().to_string(),
        None => "bar".to_string(),
    };
    let mut complex = GradedChainComplex {
        name,
        weight: Some(w),
        ..Default::default()
    };
    if rk == 0 {
        return Ok(complex);
    }
    let chains = full_chains(p, caps)?;
    let mut elements: BTreeMap<i64, Vec<Element>> = BTreeMap::new();
    let mut summands: BTreeMap<i64, Vec<ChainSummand>> = BTreeMap::new();
    let mut count = 0usize;
    for chain in chains {
        let ranks: Vec<usize> = chain.iter().map(|&g| p.rank_of(g)).collect();
        let n = chain.len() - 1;
        let lens: Vec<usize> = (0..n).map(|k| ranks[k + 1] - ranks[k]).collect();
        // every distribution of the C-weight over the intervals
        let mut comp = vec![0usize; n];
        loop {
            let c_weight: usize = comp.iter().sum();
            let bigrades: Vec<(usize, usize)> = comp.iter().zip(&lens).map(|(&i, &r)| (i, r - i)).collect();
            let summand = ChainSummand::new(chain.clone(), ranks.clone(), bigrades);
            let weight_ok = match variant {
                Some(v) => v.weight_of(&summand) == w,
                None => c_weight == w,
            };
            let admitted = weight_ok
                && match variant {
                    Some(v) => kls_filter(&summand, v)?,
                    None => true,
                };
            if admitted {
                let bases: Vec<&[AtomSet]> = (0..n)
                    .map(|k| gerst.basis_of_weight(chain[k], chain[k + 1], comp[k]))
                    .collect();
                if bases.iter().all(|b| !b.is_empty()) {
                    let deg = summand.degree();
                    let mut idx = vec![0usize; n];
                    loop {
                        count += 1;
                        if count > caps.max_chains {
                            return Err(Error::SizeGuardExceeded {
                                what: "complex dimension",
                                limit: caps.max_chains,
                            });
                        }
                        let factors: Vec<AtomSet> = (0..n).map(|k| bases[k][idx[k]]).collect();
                        elements.entry(deg).or_default().push((chain.clone(), factors));
                        summands.entry(deg).or_default().push(summand.clone());
                        if !advance(&mut idx, |k| bases[k].len()) {
                            break;
                        }
                    }
                }
            }
            if !advance(&mut comp, |k| lens[k] + 1) {
                break;
            }
        }
    }
    for k in 0..rk as i64 {
        elements.entry(k).or_default();
        summands.entry(k).or_default();
    }
    let index: BTreeMap<i64, HashMap<&Element, usize>> = elements
        .iter()
        .map(|(&k, v)| (k, v.iter().enumerate().map(|(i, e)| (e, i)).collect()))
        .collect();
    for (&k, elems) in &elements {
        complex.dims.insert(k, elems.len());
        let Some(target) = index.get(&(k + 1)) else { continue };
        let columns: Vec<Vec<(usize, i64)>> = elems
            .par_iter()
            .map(|(chain, factors)| -> Result<Vec<(usize, i64)>> {
                let mut col = Vec::new();
                for j in 0..factors.len().saturating_sub(1) {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let (x, g, y) = (chain[j], chain[j + 1], chain[j + 2]);
                    for &(s, v) in gerst.mu(x, g, y, factors[j], factors[j + 1]) {
                        let mut new_chain = chain.clone();
                        new_chain.remove(j + 1);
                        let mut new_factors = factors.clone();
                        new_factors[j] = s;
                        new_factors.remove(j + 1);
                        let key = (new_chain, new_factors);
                        match target.get(&key) {
                            Some(&row) => col.push((row, sign * v)),
                            None => {
                                return Err(Error::SubcomplexViolation(format!(
                                    "merging at {g} leaves the admitted span (chain {:?})",
                                    key.0
                                )))
                            }
                        }
                    }
                }
                Ok(col)
            })
            .collect::<Result<_>>()?;
        complex
            .differentials
            .insert(k, SparseMatrix::from_columns(target.len(), columns));
    }
    complex.summands = summands;
    Ok(complex)
}

/// Odometer increment; returns false after the last combination.
fn advance(idx: &mut [usize], bound: impl Fn(usize) -> usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < bound(k) {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// The weight-`w` part of the bar construction of Gerst, or of its Com or
/// Lie slice (for which `w` is ignored).
pub fn bar_complex(gerst: &GerstOperad, w: usize, operad: BarOperad, caps: &Caps) -> Result<GradedChainComplex> {
    let rk = gerst.lattice().rank();
    let mut c = match operad {
        BarOperad::Gerst => assemble(gerst, w, None, caps)?,
        BarOperad::Com => assemble(gerst, rk, None, caps)?,
        BarOperad::Lie => assemble(gerst, 0, None, caps)?,
    };
    c.name = match operad {
        BarOperad::Gerst => "bar".into(),
        BarOperad::Com => "bar-com".into(),
        BarOperad::Lie => "bar-lie".into(),
    };
    c.check_d_squared()?;
    Ok(c)
}

/// The bar construction of Com on an arbitrary graded bounded poset: one
/// basis vector per chain of the open interior.
pub fn bar_com_poset(p: &GradedBoundedPoset, caps: &Caps) -> Result<GradedChainComplex> {
    let rk = p.rank() as i64;
    let mut complex = GradedChainComplex {
        name: "bar-com".into(),
        weight: Some(p.rank()),
        ..Default::default()
    };
    if rk == 0 {
        return Ok(complex);
    }
    let mut by_degree: BTreeMap<i64, Vec<Vec<usize>>> = (0..rk).map(|k| (k, Vec::new())).collect();
    for chain in full_chains(p, caps)? {
        let deg = rk - (chain.len() as i64 - 1);
        by_degree.entry(deg).or_default().push(chain);
    }
    let index: BTreeMap<i64, HashMap<&[usize], usize>> = by_degree
        .iter()
        .map(|(&k, v)| (k, v.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect()))
        .collect();
    for (&k, chains) in &by_degree {
        complex.dims.insert(k, chains.len());
        let Some(target) = index.get(&(k + 1)) else { continue };
        let columns = chains
            .iter()
            .map(|chain| {
                (0..chain.len().saturating_sub(2))
                    .map(|j| {
                        let mut c = chain.clone();
                        c.remove(j + 1);
                        (target[c.as_slice()], if j % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        complex.differentials.insert(k, SparseMatrix::from_columns(target.len(), columns));
    }
    complex.check_d_squared()?;
    Ok(complex)
}

/// The KLS complex of the given variant and weight, restricted from
/// `Bar(Gerst)`; fails if the differential leaves the admitted span.
pub fn kls_complex(gerst: &GerstOperad, w: usize, variant: Variant, caps: &Caps) -> Result<GradedChainComplex> {
    let c = assemble(gerst, w, Some(variant), caps)?;
    c.check_d_squared()?;
    Ok(c)
}

/// The Koszul complex `⊕_G Gerst([0̂, G]) ⊗ Gerst^¡([G, 1̂])` with the
/// Koszul dual realized by the twisted Orlik–Solomon cooperad. The summand
/// at `G` sits in degree `rk G`; its weight is the C-weight of the Gerst
/// factor plus the degree of the twisted OS factor.
pub fn koszul_complex(gerst: &GerstOperad, w: usize) -> Result<GradedChainComplex> {
    let os = gerst.os();
    let lattice = gerst.lattice();
    let p = lattice.poset();
    let (bottom, top) = (lattice.bottom(), lattice.top());
    let mut elements: BTreeMap<i64, Vec<(usize, AtomSet, AtomSet)>> = BTreeMap::new();
    for g in 0..p.len() {
        let rg = p.rank_of(g);
        let left = os.algebra(bottom, g);
        let right = os.algebra(g, top);
        for d_left in 0..=rg {
            let c_weight = rg - d_left;
            if c_weight > w {
                continue;
            }
            for &a in left.basis(d_left) {
                for &c in right.basis(w - c_weight) {
                    elements.entry(rg as i64).or_default().push((g, a, c));
                }
            }
        }
    }
    for k in 0..=p.rank() as i64 {
        elements.entry(k).or_default();
    }
    let index: BTreeMap<i64, HashMap<(usize, AtomSet, AtomSet), usize>> = elements
        .iter()
        .map(|(&k, v)| (k, v.iter().enumerate().map(|(i, &e)| (e, i)).collect()))
        .collect();
    let mut complex = GradedChainComplex {
        name: "kos".into(),
        weight: Some(w),
        ..Default::default()
    };
    for (&k, elems) in &elements {
        complex.dims.insert(k, elems.len());
        let Some(target) = index.get(&(k + 1)) else { continue };
        let columns: Vec<Vec<(usize, i64)>> = elems
            .par_iter()
            .map(|&(g, a, c)| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &g2 in p.upper_covers(g) {
                    // Δ_{G'} on the twisted OS factor, split at the cover G'
                    let split: Vec<((AtomSet, AtomSet), i64)> = if g2 == top {
                        vec![((c, 0), 1)]
                    } else {
                        os.coproduct_set(g, g2, top, c, true)
                    };
                    for ((c1, c2), v) in split {
                        // τ: 1 ↦ L (dual of e), e ↦ C (dual of 1)
                        let tau = if c1 == 0 { 1 } else { 0 };
                        let merged: Vec<(AtomSet, i64)> = if g == bottom {
                            vec![(tau, 1)]
                        } else {
                            gerst.mu(bottom, g, g2, a, tau).to_vec()
                        };
                        for (s, u) in merged {
                            let row = target[&(g2, s, c2)];
                            *acc.entry(row).or_insert(0) += v * u;
                        }
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        complex
            .differentials
            .insert(k, SparseMatrix::from_columns(target.len(), columns));
    }
    complex.check_d_squared()?;
    Ok(complex)
}

/// Kazhdan–Lusztig polynomials read off KLS complexes, with the Betti
/// tables they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlFromComplexes {
    pub p: Poly,
    pub q: Poly,
    /// RKLS Betti numbers by weight.
    pub rkls: BettiTable,
    /// Hatted LKLS Betti numbers by weight.
    pub lkls_hat: BettiTable,
}

/// For `2i < rk`, the `i`-th coefficient of `P_L` is `dim H^i(RKLS_(i))`
/// and that of `Q_L` is `dim H^i(\widehat{LKLS}_(i))`. Cohomology in any
/// other degree is reported as a [`Error::ConcentrationFailure`].
pub fn kl_via_complexes(gerst: &GerstOperad, caps: &Caps) -> Result<KlFromComplexes> {
    let rk = gerst.lattice().rank();
    let mut rkls = BettiTable::default();
    let mut lkls_hat = BettiTable::default();
    let mut p = Vec::new();
    let mut q = Vec::new();
    for i in (0..rk).take_while(|i| 2 * i < rk) {
        for (variant, table, coeffs) in [
            (Variant::Rkls, &mut rkls, &mut p),
            (Variant::LklsHat, &mut lkls_hat, &mut q),
        ] {
            let c = kls_complex(gerst, i, variant, caps)?;
            table.insert(i, &c);
            let betti = &table.betti[&i];
            if let Some((&k, _)) = betti.iter().find(|&(&k, &n)| n > 0 && k != i as i64) {
                return Err(Error::ConcentrationFailure {
                    variant: variant.name().into(),
                    weight: i,
                    degree: k,
                    expected: i.to_string(),
                });
            }
            coeffs.push(betti.get(&(i as i64)).copied().unwrap_or(0) as i64);
        }
    }
    if rk == 0 {
        p.push(1);
        q.push(1);
    }
    Ok(KlFromComplexes {
        p: Poly::from_i64s(&p),
        q: Poly::from_i64s(&q),
        rkls,
        lkls_hat,
    })
}
