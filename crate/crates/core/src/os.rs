//! Orlik–Solomon algebras of the intervals of a geometric lattice, their nbc
//! bases, straightening, and the cooperadic coproducts `Δ_G`.
//!
//! Monomials are indexed by sets of local atoms (bit `i` is the `i`-th atom
//! of the interval in atom order). The canonical monomial of a set `S` is
//! the product of its generators in decreasing atom order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poset::GeometricLattice;

/// Bitmask of local atom indices.
pub type AtomSet = u64;

/// Sparse integer combination of canonical monomials.
pub type Combination = Vec<(AtomSet, i64)>;

/// A no-broken-circuit monomial of a fixed interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NbcMonomial {
    pub set: AtomSet,
}

impl NbcMonomial {
    pub fn degree(&self) -> usize {
        self.set.count_ones() as usize
    }

    /// Local atom indices in decreasing order.
    pub fn atoms(&self) -> Vec<usize> {
        let mut v = bits(self.set);
        v.reverse();
        v
    }
}

fn bits(mut m: AtomSet) -> Vec<usize> {
    let mut v = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    v
}

/// The Orlik–Solomon algebra of one interval `[x, y]`.
#[derive(Clone, Debug)]
pub struct OsAlgebra {
    x: usize,
    y: usize,
    rank: usize,
    atoms: Vec<usize>,
    circuits: Vec<AtomSet>,
    basis: Vec<Vec<AtomSet>>,
    position: HashMap<AtomSet, usize>,
    reductions: HashMap<AtomSet, Combination>,
}

impl OsAlgebra {
    /// Builds the algebra of `[x, y]` with atoms in the lattice's atom order.
    pub fn new(lattice: &GeometricLattice, x: usize, y: usize) -> Result<Self> {
        let p = lattice.poset();
        if !p.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let atoms = lattice.interval_atoms(x, y);
        if atoms.len() > 64 {
            return Err(Error::InvalidInput(format!(
                "interval [{x}, {y}] has {} atoms; at most 64 are supported",
                atoms.len()
            )));
        }
        let rank = p.interval_rank(x, y);

        // independent sets, grown by appending larger atoms
        let mut independent: Vec<(AtomSet, usize)> = vec![(0, x)];
        let mut frontier = vec![(0 as AtomSet, x)];
        let mut dependent_candidates: Vec<AtomSet> = Vec::new();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &(s, flat) in &frontier {
                let start = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
                for (i, &a) in atoms.iter().enumerate().skip(start) {
                    if p.leq(a, flat) {
                        dependent_candidates.push(s | 1 << i);
                    } else {
                        next.push((s | 1 << i, lattice.join(flat, a)));
                    }
                }
            }
            independent.extend_from_slice(&next);
            frontier = next;
        }
        let indep: HashSet<AtomSet> = independent.iter().map(|&(s, _)| s).collect();
        let mut circuits: Vec<AtomSet> = dependent_candidates
            .into_iter()
            .filter(|&t| bits(t).iter().all(|&i| indep.contains(&(t & !(1 << i)))))
            .collect();
        circuits.sort_by_key(|&c| (c.count_ones(), bits(c)));
        circuits.dedup();

        let broken: Vec<AtomSet> = circuits.iter().map(|&c| c & (c - 1)).collect();
        let mut basis = vec![Vec::new(); rank + 1];
        for &(s, _) in &independent {
            if broken.iter().all(|&b| s & b != b) {
                basis[s.count_ones() as usize].push(s);
            }
        }
        for level in basis.iter_mut() {
            level.sort_by_key(|&s| bits(s));
        }
        let position = basis
            .iter()
            .flat_map(|level| level.iter().enumerate().map(|(i, &s)| (s, i)))
            .collect();
        let mut alg = OsAlgebra {
            x,
            y,
            rank,
            atoms,
            circuits,
            basis,
            position,
            reductions: HashMap::new(),
        };
        let mut memo = HashMap::new();
        let mut sets: Vec<AtomSet> = indep.iter().copied().collect();
        sets.sort_unstable();
        for s in sets {
            alg.reduce_set(s, &indep, &mut memo, 0)?;
        }
        alg.reductions = memo;
        Ok(alg)
    }

    fn reduce_set(
        &self,
        s: AtomSet,
        indep: &HashSet<AtomSet>,
        memo: &mut HashMap<AtomSet, Combination>,
        depth: usize,
    ) -> Result<Combination> {
        if let Some(c) = memo.get(&s) {
            return Ok(c.clone());
        }
        const DEPTH_CAP: usize = 10_000;
        if depth > DEPTH_CAP {
            return Err(Error::LoopCapExceeded(DEPTH_CAP));
        }
        let hit = self.circuits.iter().find(|&&c| {
            let b = c & (c - 1);
            s & b == b
        });
        let result = match hit {
            None => vec![(s, 1)],
            Some(&c) => {
                let b = c & (c - 1);
                let a = s & !b;
                let desc = |m: AtomSet| {
                    let mut v = bits(m);
                    v.reverse();
                    v
                };
                let mut word = desc(a);
                word.extend(desc(b));
                let (sigma, _) = sort_desc(&word).expect("distinct atoms");
                let w = desc(c);
                let k = w.len();
                let mut acc: BTreeMap<AtomSet, i64> = BTreeMap::new();
                for i in 0..k - 1 {
                    let sign = sigma * if (k + i) % 2 == 0 { 1 } else { -1 };
                    let mut term = desc(a);
                    term.extend(w.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                    let Some((s2, m)) = sort_desc(&term) else { continue };
                    if !indep.contains(&m) {
                        continue;
                    }
                    for (t, v) in self.reduce_set(m, indep, memo, depth + 1)? {
                        *acc.entry(t).or_insert(0) += sign * s2 * v;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            }
        };
        memo.insert(s, result.clone());
        Ok(result)
    }

    pub fn bottom(&self) -> usize {
        self.x
    }

    pub fn top(&self) -> usize {
        self.y
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Atoms of the interval (parent indices) in atom order.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Circuits as local atom sets.
    pub fn circuits(&self) -> &[AtomSet] {
        &self.circuits
    }

    /// nbc monomials of degree `d`, in lexicographic order of their atom lists.
    pub fn basis(&self, d: usize) -> &[AtomSet] {
        self.basis.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn nbc_basis(&self) -> Vec<Vec<NbcMonomial>> {
        self.basis
            .iter()
            .map(|level| level.iter().map(|&set| NbcMonomial { set }).collect())
            .collect()
    }

    /// Index of an nbc monomial inside its degree.
    pub fn position(&self, s: AtomSet) -> Option<usize> {
        self.position.get(&s).copied()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Local index of a parent atom of this interval.
    pub fn local_atom(&self, parent: usize) -> Option<usize> {
        self.atoms.iter().position(|&a| a == parent)
    }

    /// The flat spanned by a set of local atoms.
    pub fn flat_of(&self, lattice: &GeometricLattice, s: AtomSet) -> usize {
        bits(s).into_iter().fold(self.x, |acc, i| lattice.join(acc, self.atoms[i]))
    }

    /// Straightens the product of the generators in `word` (local atom
    /// indices) into the nbc basis.
    pub fn reduce_word(&self, word: &[usize]) -> Combination {
        let Some((sign, s)) = sort_desc(word) else {
            return Vec::new();
        };
        match self.reductions.get(&s) {
            Some(c) => c.iter().map(|&(t, v)| (t, sign * v)).collect(),
            None => Vec::new(),
        }
    }

    /// Product of two canonical monomials.
    pub fn multiply_sets(&self, a: AtomSet, b: AtomSet) -> Combination {
        let mut word: Vec<usize> = bits(a).into_iter().rev().collect();
        word.extend(bits(b).into_iter().rev());
        self.reduce_word(&word)
    }
}

/// Sorts distinct atoms into decreasing order. Returns the permutation
/// sign and the set, or `None` when an atom repeats.
fn sort_desc(word: &[usize]) -> Option<(i64, AtomSet)> {
    let mut set: AtomSet = 0;
    let mut inversions = 0usize;
    for (i, &a) in word.iter().enumerate() {
        if set & (1 << a) != 0 {
            return None;
        }
        set |= 1 << a;
        inversions += word[..i].iter().filter(|&&b| b < a).count();
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, set))
}

/// A homogeneous-or-not element of `OS([x, y])` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OsElement {
    pub interval: (usize, usize),
    pub terms: BTreeMap<NbcMonomial, BigRational>,
}

impl OsElement {
    pub fn zero(interval: (usize, usize)) -> Self {
        OsElement {
            interval,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_combination(interval: (usize, usize), c: &[(AtomSet, i64)]) -> Self {
        let mut e = OsElement::zero(interval);
        for &(s, v) in c {
            e.add_term(NbcMonomial { set: s }, BigRational::from_integer(v.into()));
        }
        e
    }

    fn add_term(&mut self, m: NbcMonomial, v: BigRational) {
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += v;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(NbcMonomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }
}

/// An element of `OS([x, G]) ⊗ OS([G, y])` in the tensor product of nbc bases.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OsTensor {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub terms: BTreeMap<(NbcMonomial, NbcMonomial), BigRational>,
}

/// The Orlik–Solomon algebras of every interval of a lattice, with the
/// coproducts between them.
#[derive(Clone, Debug)]
pub struct OsCooperad {
    lattice: Arc<GeometricLattice>,
    algebras: HashMap<(usize, usize), OsAlgebra>,
}

impl OsCooperad {
    pub fn new(lattice: Arc<GeometricLattice>) -> Result<Self> {
        let p = lattice.poset();
        let pairs: Vec<(usize, usize)> = (0..p.len()).flat_map(|x| p.up_set(x).iter().map(move |y| (x, y))).collect();
        let algebras = pairs
            .par_iter()
            .map(|&(x, y)| OsAlgebra::new(&lattice, x, y).map(|a| ((x, y), a)))
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(OsCooperad { lattice, algebras })
    }

    pub fn lattice(&self) -> &GeometricLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> Arc<GeometricLattice> {
        Arc::clone(&self.lattice)
    }

    pub fn algebra(&self, x: usize, y: usize) -> &OsAlgebra {
        self.algebras
            .get(&(x, y))
            .unwrap_or_else(|| panic!("[{x}, {y}] is not an interval"))
    }

    /// The straightened product of a word of local atoms of `[x, y]`.
    pub fn os_reduce(&self, x: usize, y: usize, word: &[usize]) -> OsElement {
        OsElement::from_combination((x, y), &self.algebra(x, y).reduce_word(word))
    }

    /// Bilinear product in `OS([x, y])`.
    pub fn os_multiply(&self, a: &OsElement, b: &OsElement) -> Result<OsElement> {
        if a.interval != b.interval {
            return Err(Error::HostMismatch);
        }
        let (x, y) = a.interval;
        let alg = self.algebra(x, y);
        let mut out = OsElement::zero(a.interval);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                for (s, v) in alg.multiply_sets(ma.set, mb.set) {
                    out.add_term(NbcMonomial { set: s }, ca * cb * BigRational::from_integer(v.into()));
                }
            }
        }
        Ok(out)
    }

    /// `Δ_G` of the canonical monomial `s` of `[x, y]`, as integer
    /// combinations of pairs of nbc monomials of `[x, G]` and `[G, y]`.
    /// The twisted coproduct puts a sign on every generator sent right.
    pub fn coproduct_set(&self, x: usize, g: usize, y: usize, s: AtomSet, twisted: bool) -> Vec<((AtomSet, AtomSet), i64)> {
        let alg = self.algebra(x, y);
        let left = self.algebra(x, g);
        let right = self.algebra(g, y);
        let p = self.lattice.poset();
        let mut lword = Vec::new();
        let mut rword = Vec::new();
        let mut sign = 1i64;
        for i in bits(s).into_iter().rev() {
            let h = alg.atoms[i];
            if p.leq(h, g) {
                lword.push(left.local_atom(h).expect("atom below G is an atom of [x, G]"));
                // moving a left generator past every right generator already placed
                if rword.len() % 2 == 1 {
                    sign = -sign;
                }
            } else {
                let t = self.lattice.join(g, h);
                rword.push(right.local_atom(t).expect("G ∨ H covers G"));
                if twisted {
                    sign = -sign;
                }
            }
        }
        let lc = left.reduce_word(&lword);
        let rc = right.reduce_word(&rword);
        let mut out = Vec::with_capacity(lc.len() * rc.len());
        for &(a, va) in &lc {
            for &(b, vb) in &rc {
                out.push(((a, b), sign * va * vb));
            }
        }
        out
    }

    /// `Δ_G(a)` for `G` strictly inside the interval of `a`.
    pub fn os_coproduct(&self, g: usize, a: &OsElement, twisted: bool) -> Result<OsTensor> {
        let (x, y) = a.interval;
        let p = self.lattice.poset();
        if !(p.lt(x, g) && p.lt(g, y)) {
            return Err(Error::NotInterior(g));
        }
        let mut out = OsTensor {
            left: (x, g),
            right: (g, y),
            terms: BTreeMap::new(),
        };
        for (m, c) in &a.terms {
            for ((l, r), v) in self.coproduct_set(x, g, y, m.set, twisted) {
                let key = (NbcMonomial { set: l }, NbcMonomial { set: r });
                let entry = out.terms.entry(key).or_insert_with(BigRational::zero);
                *entry += c * BigRational::from_integer(v.into());
                if entry.is_zero() {
                    out.terms.remove(&key);
                }
            }
        }
        Ok(out)
    }

    /// Product in the graded tensor algebra,
    /// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`.
    pub fn tensor_multiply(&self, s: &OsTensor, t: &OsTensor) -> Result<OsTensor> {
        if s.left != t.left || s.right != t.right {
            return Err(Error::HostMismatch);
        }
        let la = self.algebra(s.left.0, s.left.1);
        let ra = self.algebra(s.right.0, s.right.1);
        let mut out = OsTensor {
            left: s.left,
            right: s.right,
            terms: BTreeMap::new(),
        };
        for ((a, b), c) in &s.terms {
            for ((a2, b2), c2) in &t.terms {
                let koszul = if b.degree() * a2.degree() % 2 == 0 { 1 } else { -1 };
                for (l, vl) in la.multiply_sets(a.set, a2.set) {
                    for (r, vr) in ra.multiply_sets(b.set, b2.set) {
                        let key = (NbcMonomial { set: l }, NbcMonomial { set: r });
                        let entry = out.terms.entry(key).or_insert_with(BigRational::zero);
                        *entry += c * c2 * BigRational::from_integer((koszul * vl * vr).into());
                        if entry.is_zero() {
                            out.terms.remove(&key);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The basis element `e_S` as an [`OsElement`].
    pub fn basis_element(&self, x: usize, y: usize, s: AtomSet) -> OsElement {
        OsElement::from_combination((x, y), &[(s, 1)])
    }

    /// Checks `Δ_G(ab) = Δ_G(a)Δ_G(b)` on all pairs of basis monomials of
    /// `[x, y]` and every interior `G`. Returns the first failure.
    pub fn check_multiplicative(&self, x: usize, y: usize, twisted: bool) -> Result<Option<(usize, AtomSet, AtomSet)>> {
        let alg = self.algebra(x, y);
        let all: Vec<AtomSet> = alg.basis.iter().flatten().copied().collect();
        for g in self.interior(x, y) {
            for &a in &all {
                for &b in &all {
                    let ea = self.basis_element(x, y, a);
                    let eb = self.basis_element(x, y, b);
                    let lhs = self.os_coproduct(g, &self.os_multiply(&ea, &eb)?, twisted)?;
                    let rhs = self.tensor_multiply(&self.os_coproduct(g, &ea, twisted)?, &self.os_coproduct(g, &eb, twisted)?)?;
                    if lhs != rhs {
                        return Ok(Some((g, a, b)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Compares `(Δ_{G₁}⊗Id)∘Δ_{G₂}` with `(Id⊗Δ_{G₂})∘Δ_{G₁}` on every
    /// basis monomial of `[x, y]` and every `x < G₁ < G₂ < y`. When
    /// `sign_on_third` is set, the second composite is multiplied by
    /// `(−1)^{deg}` of the third tensor factor before comparing. Returns the
    /// first failure.
    pub fn check_coassociative(
        &self,
        x: usize,
        y: usize,
        twisted: bool,
        sign_on_third: bool,
    ) -> Option<(usize, usize, AtomSet)> {
        let p = self.lattice.poset();
        let interior = self.interior(x, y);
        let alg = self.algebra(x, y);
        for &g1 in &interior {
            for &g2 in interior.iter().filter(|&&g2| p.lt(g1, g2)) {
                for &s in alg.basis.iter().flatten() {
                    let mut lhs: BTreeMap<(AtomSet, AtomSet, AtomSet), i64> = BTreeMap::new();
                    for ((a, c), v) in self.coproduct_set(x, g2, y, s, twisted) {
                        for ((a1, b1), w) in self.coproduct_set(x, g1, g2, a, twisted) {
                            *lhs.entry((a1, b1, c)).or_insert(0) += v * w;
                        }
                    }
                    let mut rhs: BTreeMap<(AtomSet, AtomSet, AtomSet), i64> = BTreeMap::new();
                    for ((a, b), v) in self.coproduct_set(x, g1, y, s, twisted) {
                        for ((b1, c1), w) in self.coproduct_set(g1, g2, y, b, twisted) {
                            let sign = if sign_on_third && c1.count_ones() % 2 == 1 { -1 } else { 1 };
                            *rhs.entry((a, b1, c1)).or_insert(0) += sign * v * w;
                        }
                    }
                    lhs.retain(|_, v| *v != 0);
                    rhs.retain(|_, v| *v != 0);
                    if lhs != rhs {
                        return Some((g1, g2, s));
                    }
                }
            }
        }
        None
    }

    /// Elements strictly between `x` and `y`, in index order.
    pub fn interior(&self, x: usize, y: usize) -> Vec<usize> {
        self.lattice
            .poset()
            .interval_elements(x, y)
            .into_iter()
            .filter(|&g| g != x && g != y)
            .collect()
    }
}

/// Coefficient of an element as an `i64`, when it is an integer that fits.
pub fn integral_coefficient(c: &BigRational) -> Option<i64> {
    c.is_integer().then(|| c.to_integer().to_i64()).flatten()
}
