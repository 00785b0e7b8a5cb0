//! The Gerstenhaber operad as the linear dual of the Orlik–Solomon
//! cooperad, and the monomial/rewriting machinery for Com, Lie and Gerst.
//!
//! The basis of `Gerst([x, y])` is dual to the nbc basis of `OS([x, y])`;
//! the element dual to a degree-`d` monomial has bigrade
//! `(C, L) = (rk − d, d)`. Products `μ_G` are the transposes of `Δ_G`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::os::{AtomSet, OsCooperad};
use crate::poly::Poly;
use crate::poset::{ElLabeling, GeometricLattice};

/// Products `μ_G` on a fixed triple `x < G < y`, keyed by the pair of
/// factors, each image listed as `(basis element of [x, y], coefficient)`.
pub type MuTable = HashMap<(AtomSet, AtomSet), Vec<(AtomSet, i64)>>;

/// The Gerstenhaber operad of a geometric lattice with all products tabulated.
#[derive(Debug)]
pub struct GerstOperad {
    os: OsCooperad,
    mu: HashMap<(usize, usize, usize), MuTable>,
}

/// Bigraded basis data of `Gerst(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerstSpace {
    pub interval: (usize, usize),
    pub rank: usize,
    /// Basis elements (dual nbc monomials) with their `(C, L)` bigrade.
    pub basis: Vec<(AtomSet, (usize, usize))>,
    pub dims: BTreeMap<(usize, usize), usize>,
}

impl GerstSpace {
    /// Hilbert series in the C-weight variable.
    pub fn hilbert_series(&self) -> Poly {
        let mut coeffs = vec![0i64; self.rank + 1];
        for (&(c, _), &n) in &self.dims {
            coeffs[c] += n as i64;
        }
        Poly::from_i64s(&coeffs)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `μ_G` as a matrix from `Gerst([x, G]) ⊗ Gerst([G, y])` to
/// `Gerst([x, y])`. Columns index pairs `(i, j)` as `i · dim_right + j`;
/// rows and factor indices follow [`GerstOperad::flat_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadProductMatrix {
    pub x: usize,
    pub g: usize,
    pub y: usize,
    pub matrix: SparseMatrix,
}

impl GerstOperad {
    pub fn new(lattice: Arc<GeometricLattice>) -> Result<Self> {
        let os = OsCooperad::new(lattice)?;
        let p = os.lattice().poset();
        let triples: Vec<(usize, usize, usize)> = (0..p.len())
            .flat_map(|x| {
                p.up_set(x).iter().flat_map(move |g| {
                    p.up_set(g)
                        .iter()
                        .filter(move |&y| x != g && g != y)
                        .map(move |y| (x, g, y))
                })
            })
            .collect();
        let mu = triples
            .par_iter()
            .map(|&(x, g, y)| {
                let mut table: MuTable = HashMap::new();
                let alg = os.algebra(x, y);
                for d in 0..=alg.rank() {
                    for &s in alg.basis(d) {
                        for (pair, v) in os.coproduct_set(x, g, y, s, false) {
                            table.entry(pair).or_default().push((s, v));
                        }
                    }
                }
                ((x, g, y), table)
            })
            .collect();
        Ok(GerstOperad { os, mu })
    }

    pub fn os(&self) -> &OsCooperad {
        &self.os
    }

    pub fn lattice(&self) -> &GeometricLattice {
        self.os.lattice()
    }

    /// Basis of `Gerst([x, y])` ordered by L-weight, then nbc order.
    pub fn flat_basis(&self, x: usize, y: usize) -> Vec<AtomSet> {
        let alg = self.os.algebra(x, y);
        (0..=alg.rank()).flat_map(|d| alg.basis(d).iter().copied()).collect()
    }

    /// Basis elements of `Gerst([x, y])` of C-weight `c`.
    pub fn basis_of_weight(&self, x: usize, y: usize, c: usize) -> &[AtomSet] {
        let alg = self.os.algebra(x, y);
        match alg.rank().checked_sub(c) {
            Some(d) => alg.basis(d),
            None => &[],
        }
    }

    pub fn gerst_space(&self, x: usize, y: usize) -> GerstSpace {
        let alg = self.os.algebra(x, y);
        let rank = alg.rank();
        let mut basis = Vec::new();
        let mut dims = BTreeMap::new();
        for d in 0..=rank {
            for &s in alg.basis(d) {
                basis.push((s, (rank - d, d)));
            }
            if !alg.basis(d).is_empty() {
                dims.insert((rank - d, d), alg.basis(d).len());
            }
        }
        GerstSpace {
            interval: (x, y),
            rank,
            basis,
            dims,
        }
    }

    /// `μ_G(a ⊗ b)` for basis elements `a` of `[x, G]` and `b` of `[G, y]`.
    pub fn mu(&self, x: usize, g: usize, y: usize, a: AtomSet, b: AtomSet) -> &[(AtomSet, i64)] {
        self.mu
            .get(&(x, g, y))
            .and_then(|t| t.get(&(a, b)))
            .map_or(&[], Vec::as_slice)
    }

    /// Applies `μ_G` to a combination of factor pairs.
    pub fn mu_combination(&self, x: usize, g: usize, y: usize, terms: &[((AtomSet, AtomSet), i64)]) -> Vec<(AtomSet, i64)> {
        let mut acc: BTreeMap<AtomSet, i64> = BTreeMap::new();
        for &((a, b), v) in terms {
            for &(s, w) in self.mu(x, g, y, a, b) {
                *acc.entry(s).or_insert(0) += v * w;
            }
        }
        acc.into_iter().filter(|&(_, v)| v != 0).collect()
    }

    pub fn gerst_mu(&self, x: usize, g: usize, y: usize) -> Result<OperadProductMatrix> {
        let p = self.lattice().poset();
        if !(p.lt(x, g) && p.lt(g, y)) {
            return Err(Error::NotInterior(g));
        }
        let rows = self.flat_basis(x, y);
        let left = self.flat_basis(x, g);
        let right = self.flat_basis(g, y);
        let row_of: HashMap<AtomSet, usize> = rows.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut triplets = Vec::new();
        for (i, &a) in left.iter().enumerate() {
            for (j, &b) in right.iter().enumerate() {
                for &(s, v) in self.mu(x, g, y, a, b) {
                    triplets.push((row_of[&s], i * right.len() + j, v));
                }
            }
        }
        Ok(OperadProductMatrix {
            x,
            g,
            y,
            matrix: SparseMatrix::from_triplets(rows.len(), left.len() * right.len(), triplets),
        })
    }

    /// Verifies `μ_{G₂}∘(μ_{G₁}⊗Id) = μ_{G₁}∘(Id⊗μ_{G₂})` for every
    /// `x < G₁ < G₂ < y` on all basis triples; returns the first failing pair.
    pub fn check_operad_axiom(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        let p = self.lattice().poset();
        let interior: Vec<usize> = self.os.interior(x, y);
        for &g1 in &interior {
            for &g2 in interior.iter().filter(|&&g2| p.lt(g1, g2)) {
                for &a in &self.flat_basis(x, g1) {
                    for &b in &self.flat_basis(g1, g2) {
                        for &c in &self.flat_basis(g2, y) {
                            let ab: Vec<_> = self.mu(x, g1, g2, a, b).iter().map(|&(s, v)| ((s, c), v)).collect();
                            let lhs = self.mu_combination(x, g2, y, &ab);
                            let bc: Vec<_> = self.mu(g1, g2, y, b, c).iter().map(|&(s, v)| ((a, s), v)).collect();
                            let rhs = self.mu_combination(x, g1, y, &bc);
                            if lhs != rhs {
                                return Some((g1, g2));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// The three operads whose monomials are counted and rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperadKind {
    Com,
    Lie,
    Gerst,
}

/// Decoration of one factor of a chain monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decoration {
    /// The single generator of Com or Lie.
    One,
    /// The commutative generator of Gerst.
    C,
    /// The Lie generator of Gerst.
    L,
    /// A dual nbc basis element of a longer interval.
    Dual(AtomSet),
}

/// A chain `G_0 < … < G_n` with one decoration per interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedChainMonomial {
    pub chain: Vec<usize>,
    pub decorations: Vec<Decoration>,
}

impl DecoratedChainMonomial {
    /// A maximal chain decorated with [`Decoration::One`] everywhere.
    pub fn undecorated(chain: Vec<usize>) -> Self {
        let n = chain.len().saturating_sub(1);
        DecoratedChainMonomial {
            chain,
            decorations: vec![Decoration::One; n],
        }
    }
}

/// Whether `m1` divides `m2`: the chain of `m1` is a consecutive segment of
/// the chain of `m2` and the decorations agree on it.
pub fn divides(m1: &DecoratedChainMonomial, m2: &DecoratedChainMonomial) -> bool {
    let k = m1.chain.len();
    if k == 0 || k > m2.chain.len() {
        return false;
    }
    m2.chain.windows(k).enumerate().any(|(p, w)| {
        w == m1.chain.as_slice() && m2.decorations[p..p + k - 1] == m1.decorations[..]
    })
}

/// Comparator on monomials over one interval: label words under the
/// EL-labeling first, then decorations under `C < L < Dual < One`, then
/// chain length and element indices. Reversal flips the whole order.
#[derive(Clone, Debug)]
pub struct AdmissibleOrder {
    labeling: ElLabeling,
    reversed: bool,
}

impl AdmissibleOrder {
    pub fn new(labeling: ElLabeling, reversed: bool) -> Self {
        AdmissibleOrder { labeling, reversed }
    }

    /// The order used for Com rewriting (increasing label words are least).
    pub fn for_com(labeling: ElLabeling) -> Self {
        Self::new(labeling, false)
    }

    /// The order used for Lie rewriting (increasing label pairs are leading).
    pub fn for_lie(labeling: ElLabeling) -> Self {
        Self::new(labeling, true)
    }

    pub fn labeling(&self) -> &ElLabeling {
        &self.labeling
    }

    fn label_word(&self, m: &DecoratedChainMonomial) -> Vec<usize> {
        m.chain
            .windows(2)
            .map(|w| self.labeling.label(w[0], w[1]).unwrap_or(usize::MAX))
            .collect()
    }

    pub fn compare(&self, a: &DecoratedChainMonomial, b: &DecoratedChainMonomial) -> Ordering {
        let rank = |d: &Decoration| match d {
            Decoration::C => (0, 0),
            Decoration::L => (1, 0),
            Decoration::Dual(s) => (2, *s),
            Decoration::One => (3, 0),
        };
        let ord = self
            .label_word(a)
            .cmp(&self.label_word(b))
            .then_with(|| {
                let da: Vec<_> = a.decorations.iter().map(rank).collect();
                let db: Vec<_> = b.decorations.iter().map(rank).collect();
                da.cmp(&db)
            })
            .then_with(|| a.chain.len().cmp(&b.chain.len()))
            .then_with(|| a.chain.cmp(&b.chain));
        if self.reversed {
            ord.reverse()
        } else {
            ord
        }
    }
}

/// Normal monomials of `[x, y]` for the given operad.
///
/// Com: the increasing maximal chain. Lie: the decreasing maximal chains.
/// Gerst: for each `G` in `[x, y]`, a decreasing chain of `[x, G]` decorated
/// by `L` followed by the increasing chain of `[G, y]` decorated by `C`.
pub fn normal_monomials(
    lattice: &GeometricLattice,
    labeling: &ElLabeling,
    x: usize,
    y: usize,
    kind: OperadKind,
) -> Vec<DecoratedChainMonomial> {
    match kind {
        OperadKind::Com => labeling
            .increasing_chains(lattice, x, y)
            .into_iter()
            .map(DecoratedChainMonomial::undecorated)
            .collect(),
        OperadKind::Lie => labeling
            .decreasing_chains(lattice, x, y)
            .into_iter()
            .map(DecoratedChainMonomial::undecorated)
            .collect(),
        OperadKind::Gerst => {
            let mut out = Vec::new();
            for g in lattice.poset().interval_elements(x, y) {
                let inc = labeling.increasing_chains(lattice, g, y);
                let inc = inc.first().expect("an EL-labeling has an increasing chain");
                for dec in labeling.decreasing_chains(lattice, x, g) {
                    let mut decorations = vec![Decoration::L; dec.len() - 1];
                    decorations.extend(std::iter::repeat_n(Decoration::C, inc.len() - 1));
                    let mut chain = dec;
                    chain.extend_from_slice(&inc[1..]);
                    out.push(DecoratedChainMonomial { chain, decorations });
                }
            }
            out
        }
    }
}

/// Where a rewriting step is applied when several positions qualify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewritePosition {
    Leftmost,
    Rightmost,
}

/// Rewrites a maximal-chain monomial of Com or Lie into normal form.
pub fn rewrite_normal_form(
    lattice: &GeometricLattice,
    m: &DecoratedChainMonomial,
    kind: OperadKind,
    order: &AdmissibleOrder,
) -> Result<BTreeMap<DecoratedChainMonomial, i64>> {
    rewrite_normal_form_at(lattice, m, kind, order, RewritePosition::Leftmost)
}

/// [`rewrite_normal_form`] with an explicit choice of rewriting position.
pub fn rewrite_normal_form_at(
    lattice: &GeometricLattice,
    m: &DecoratedChainMonomial,
    kind: OperadKind,
    order: &AdmissibleOrder,
    position: RewritePosition,
) -> Result<BTreeMap<DecoratedChainMonomial, i64>> {
    if kind == OperadKind::Gerst {
        return Err(Error::InvalidInput("rewriting is implemented for Com and Lie".into()));
    }
    const LOOP_CAP: usize = 1_000_000;
    let el = order.labeling();
    let bad = |w: &[usize]| -> bool {
        let (a, b) = (el.label(w[0], w[1]), el.label(w[1], w[2]));
        match kind {
            OperadKind::Com => a >= b,
            _ => a < b,
        }
    };
    let mut current: BTreeMap<DecoratedChainMonomial, i64> = BTreeMap::new();
    current.insert(m.clone(), 1);
    let mut normal: BTreeMap<DecoratedChainMonomial, i64> = BTreeMap::new();
    let mut steps = 0;
    while let Some((mono, coeff)) = current.pop_first() {
        if coeff == 0 {
            continue;
        }
        steps += 1;
        if steps > LOOP_CAP {
            return Err(Error::LoopCapExceeded(LOOP_CAP));
        }
        let positions: Vec<usize> = (0..mono.chain.len().saturating_sub(2))
            .filter(|&i| bad(&mono.chain[i..i + 3]))
            .collect();
        let pos = match position {
            RewritePosition::Leftmost => positions.first(),
            RewritePosition::Rightmost => positions.last(),
        };
        let Some(&i) = pos else {
            *normal.entry(mono).or_insert(0) += coeff;
            continue;
        };
        let (lo, hi) = (mono.chain[i], mono.chain[i + 2]);
        let middles: Vec<usize> = lattice.interval_atoms(lo, hi);
        let replacements: Vec<(usize, i64)> = match kind {
            OperadKind::Com => {
                let inc = el.increasing_chains(lattice, lo, hi);
                vec![(inc[0][1], 1)]
            }
            _ => middles
                .iter()
                .filter(|&&h| h != mono.chain[i + 1])
                .map(|&h| (h, -1))
                .collect(),
        };
        for (h, v) in replacements {
            let mut next = mono.clone();
            next.chain[i + 1] = h;
            if order.compare(&next, &mono) != Ordering::Less {
                return Err(Error::LoopCapExceeded(steps));
            }
            *current.entry(next).or_insert(0) += v * coeff;
        }
    }
    normal.retain(|_, v| *v != 0);
    Ok(normal)
}
