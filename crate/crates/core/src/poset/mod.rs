//! Finite graded bounded posets and geometric lattices.
//!
//! Elements are always indexed so that index order is a linear extension
//! of the partial order, sorted by rank. In particular the bottom element
//! has index 0 and the top element has the largest index.

mod bitset;
mod el;
mod homology;
mod lattice;
mod matroid;

pub use bitset::BitRow;
pub use el::{el_labeling_min_atom, ElLabeling};
pub use homology::order_complex_homology;
pub use lattice::GeometricLattice;
pub use matroid::{build_lattice, MatroidSpec};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Size guards applied by every enumeration in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_elements: usize,
    pub max_chains: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_elements: 500,
            max_chains: 1_000_000,
        }
    }
}

/// A finite graded poset with a least and a greatest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBoundedPoset {
    labels: Vec<String>,
    up: Vec<BitRow>,
    down: Vec<BitRow>,
    rank: Vec<usize>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    parent: Option<Vec<usize>>,
}

impl GradedBoundedPoset {
    /// Builds a poset from labels and a list of order relations `(i, j)`
    /// meaning `i < j`. The relations need not be exactly the covers; the
    /// transitive closure is taken. Elements are re-indexed by rank.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)], caps: &Caps) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidInput("poset has no elements".into()));
        }
        if n > caps.max_elements {
            return Err(Error::SizeGuardExceeded {
                what: "element count",
                limit: caps.max_elements,
            });
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!("relation ({i}, {j}) refers to a missing element")));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("relation ({i}, {i}) is reflexive")));
            }
            succ[i].push(j);
            indeg[j] += 1;
        }
        // Kahn's algorithm: a topological order exists iff the relation is acyclic.
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidInput("order relations contain a cycle".into()));
        }
        let mut up = vec![BitRow::new(n); n];
        for &v in order.iter().rev() {
            up[v].insert(v);
            for &w in &succ[v] {
                let row = up[w].clone();
                up[v].union_with(&row);
            }
        }
        let minimal: Vec<usize> = (0..n).filter(|&v| (0..n).all(|u| u == v || !up[u].contains(v))).collect();
        let maximal: Vec<usize> = (0..n).filter(|&v| up[v].count() == 1).collect();
        if minimal.len() != 1 {
            return Err(Error::InvalidInput(format!("poset has {} minimal elements, expected one", minimal.len())));
        }
        if maximal.len() != 1 {
            return Err(Error::InvalidInput(format!("poset has {} maximal elements, expected one", maximal.len())));
        }
        let bottom = minimal[0];
        // Longest-chain rank from the bottom, following the topological order.
        let mut rank = vec![0usize; n];
        for &v in &order {
            for &w in &succ[v] {
                rank[w] = rank[w].max(rank[v] + 1);
            }
        }
        let _ = bottom;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&v| (rank[v], v));
        let mut inverse = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut new_up = vec![BitRow::new(n); n];
        for (new, &old) in perm.iter().enumerate() {
            for w in up[old].iter() {
                new_up[new].insert(inverse[w]);
            }
        }
        let new_labels = perm.iter().map(|&old| labels[old].clone()).collect();
        let new_rank = perm.iter().map(|&old| rank[old]).collect();
        let poset = Self::from_closure(new_labels, new_up, new_rank, None);
        poset.check_graded()?;
        Ok(poset)
    }

    /// Assembles a poset from an already closed, rank-sorted relation.
    pub(crate) fn from_closure(labels: Vec<String>, up: Vec<BitRow>, rank: Vec<usize>, parent: Option<Vec<usize>>) -> Self {
        let n = labels.len();
        let mut down = vec![BitRow::new(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            for y in up[x].iter() {
                if y == x {
                    continue;
                }
                // y covers x iff nothing lies strictly between them
                let between = up[x].intersection_count(&down[y]);
                if between == 2 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        GradedBoundedPoset {
            labels,
            up,
            down,
            rank,
            upper_covers,
            lower_covers,
            parent,
        }
    }

    fn check_graded(&self) -> Result<()> {
        for x in 0..self.len() {
            for &y in &self.upper_covers[x] {
                if self.rank[y] != self.rank[x] + 1 {
                    return Err(Error::NotGraded(format!(
                        "cover {} < {} jumps from rank {} to rank {}",
                        self.labels[x], self.labels[y], self.rank[x], self.rank[y]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &BitRow {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &BitRow {
        &self.down[x]
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Rank of the whole poset.
    pub fn rank(&self) -> usize {
        self.rank[self.top()]
    }

    /// Rank of the interval `[x, y]`.
    pub fn interval_rank(&self, x: usize, y: usize) -> usize {
        self.rank[y] - self.rank[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// Back-map to the parent poset, for posets produced by [`Self::interval`].
    pub fn parent_map(&self) -> Option<&[usize]> {
        self.parent.as_deref()
    }

    /// Elements of `[x, y]` in index order.
    pub fn interval_elements(&self, x: usize, y: usize) -> Vec<usize> {
        let mut row = self.up[x].clone();
        row.intersect_with(&self.down[y]);
        row.iter().collect()
    }

    /// The closed interval `[x, y]` as a poset of its own, ranked from 0 and
    /// carrying a back-map to this poset.
    pub fn interval(&self, x: usize, y: usize) -> Result<GradedBoundedPoset> {
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let elems = self.interval_elements(x, y);
        let m = elems.len();
        let mut local = vec![usize::MAX; self.len()];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i;
        }
        let mut up = vec![BitRow::new(m); m];
        for (i, &e) in elems.iter().enumerate() {
            for f in self.up[e].iter() {
                if local[f] != usize::MAX {
                    up[i].insert(local[f]);
                }
            }
        }
        let rank = elems.iter().map(|&e| self.rank[e] - self.rank[x]).collect();
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Ok(Self::from_closure(labels, up, rank, Some(elems)))
    }

    /// Table of all Möbius values `μ(x, y)`, with zero for incomparable pairs.
    pub fn mobius_table(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut mu = vec![vec![0i64; n]; n];
        for x in 0..n {
            mu[x][x] = 1;
            // index order is a linear extension, so every z < y is already done
            for y in self.up[x].iter().filter(|&y| y != x) {
                let mut row = self.up[x].clone();
                row.intersect_with(&self.down[y]);
                let s: i64 = row.iter().filter(|&z| z != y).map(|z| mu[x][z]).sum();
                mu[x][y] = -s;
            }
        }
        mu
    }

    /// Möbius function on `[x, y]` through the defining recursion.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let elems = self.interval_elements(x, y);
        let mut values: Vec<i64> = Vec::with_capacity(elems.len());
        for (i, &z) in elems.iter().enumerate() {
            if i == 0 {
                values.push(1);
                continue;
            }
            let s: i64 = elems[..i]
                .iter()
                .zip(&values)
                .filter(|(&w, _)| self.leq(w, z))
                .map(|(_, &v)| v)
                .sum();
            values.push(-s);
        }
        Ok(*values.last().expect("interval is nonempty"))
    }

    /// Characteristic polynomial of `[x, y]`: `Σ_z μ(x, z) t^{rk[z, y]}`.
    pub fn interval_characteristic_polynomial(&self, x: usize, y: usize, mu: &[Vec<i64>]) -> Poly {
        let r = self.interval_rank(x, y);
        let mut coeffs = vec![0i64; r + 1];
        for z in self.interval_elements(x, y) {
            coeffs[self.rank[y] - self.rank[z]] += mu[x][z];
        }
        Poly::from_i64s(&coeffs)
    }

    /// `χ_P(t) = Σ_G μ(0̂, G) t^{rk[G, 1̂]}`.
    pub fn characteristic_polynomial(&self) -> Poly {
        let mu = self.mobius_table();
        self.interval_characteristic_polynomial(self.bottom(), self.top(), &mu)
    }

    /// `χ⁺_P(t) = Σ_G |μ(0̂, G)| t^{rk[G, 1̂]}`.
    pub fn unsigned_characteristic_polynomial(&self) -> Poly {
        let mu = self.mobius_table();
        let r = self.rank();
        let mut coeffs = vec![0i64; r + 1];
        for z in 0..self.len() {
            coeffs[r - self.rank[z]] += mu[0][z].abs();
        }
        Poly::from_i64s(&coeffs)
    }

    /// All strictly increasing chains, in lexicographic order of their
    /// index sequences, starting with the empty chain. With
    /// `open_interior` only chains of `P° = P ∖ {0̂, 1̂}` are produced.
    pub fn enumerate_chains(&self, open_interior: bool, caps: &Caps) -> Result<Vec<Chain>> {
        self.chains_between(self.bottom(), self.top(), open_interior, caps)
    }

    /// Chains of the open interval `(x, y)` (or of the closed one when
    /// `open_interior` is false).
    pub fn chains_between(&self, x: usize, y: usize, open_interior: bool, caps: &Caps) -> Result<Vec<Chain>> {
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let pool: Vec<usize> = self
            .interval_elements(x, y)
            .into_iter()
            .filter(|&e| !open_interior || (e != x && e != y))
            .collect();
        let mut out = vec![Chain {
            bottom: x,
            top: y,
            interior: Vec::new(),
        }];
        let mut stack: Vec<usize> = Vec::new();
        self.extend_chains(&pool, 0, &mut stack, x, y, &mut out, caps)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_chains(
        &self,
        pool: &[usize],
        start: usize,
        stack: &mut Vec<usize>,
        x: usize,
        y: usize,
        out: &mut Vec<Chain>,
        caps: &Caps,
    ) -> Result<()> {
        for (i, &e) in pool.iter().enumerate().skip(start) {
            if let Some(&last) = stack.last() {
                if !self.lt(last, e) {
                    continue;
                }
            }
            stack.push(e);
            if out.len() >= caps.max_chains {
                return Err(Error::SizeGuardExceeded {
                    what: "chain count",
                    limit: caps.max_chains,
                });
            }
            out.push(Chain {
                bottom: x,
                top: y,
                interior: stack.clone(),
            });
            self.extend_chains(pool, i + 1, stack, x, y, out, caps)?;
            stack.pop();
        }
        Ok(())
    }

    /// All maximal chains of `[x, y]` as full element sequences `x = c_0 ⋖ … ⋖ c_r = y`.
    pub fn maximal_chains(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![x];
        self.walk_maximal(y, &mut path, &mut out);
        out
    }

    fn walk_maximal(&self, y: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let cur = *path.last().expect("path starts nonempty");
        if cur == y {
            out.push(path.clone());
            return;
        }
        for &c in &self.upper_covers[cur] {
            if self.leq(c, y) {
                path.push(c);
                self.walk_maximal(y, path, out);
                path.pop();
            }
        }
    }
}

/// A chain `bottom < c_1 < … < c_n < top`; only the interior is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub bottom: usize,
    pub top: usize,
    pub interior: Vec<usize>,
}

impl Chain {
    /// The full sequence `bottom = G_0 < … < G_{n+1} = top`.
    pub fn full(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.interior.len() + 2);
        v.push(self.bottom);
        v.extend_from_slice(&self.interior);
        v.push(self.top);
        v
    }

    /// The consecutive intervals `[G_k, G_{k+1}]` of the chain.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.full().windows(2).map(|w| (w[0], w[1])).collect()
    }
}
