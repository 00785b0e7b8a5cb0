//! Reference implementations that share no code with the library: lattices
//! of flats by brute force over subsets, Möbius functions, KL polynomials by
//! chain expansion, and ranks over the rationals.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use opkls::poset::MatroidSpec;

/// A corpus entry: a builtin name and an independent description.
#[derive(Clone, Debug)]
pub enum Family {
    Boolean(usize),
    Uniform(usize, usize),
    Graph(usize, Vec<(usize, usize)>),
}

impl Family {
    pub fn complete(n: usize) -> Self {
        Family::Graph(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect())
    }

    pub fn cycle(n: usize) -> Self {
        Family::Graph(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    fn ground(&self) -> usize {
        match self {
            Family::Boolean(n) => *n,
            Family::Uniform(_, n) => *n,
            Family::Graph(_, e) => e.len(),
        }
    }

    /// Rank function on subsets of the ground set.
    fn rank(&self, s: u64) -> usize {
        let size = s.count_ones() as usize;
        match self {
            Family::Boolean(_) => size,
            Family::Uniform(k, _) => size.min(*k),
            Family::Graph(v, edges) => {
                let mut parent: Vec<usize> = (0..*v).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    if p[x] != x {
                        let r = find(p, p[x]);
                        p[x] = r;
                    }
                    p[x]
                }
                let mut r = 0;
                for (i, &(a, b)) in edges.iter().enumerate() {
                    if s >> i & 1 == 1 {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        if ra != rb {
                            parent[ra] = rb;
                            r += 1;
                        }
                    }
                }
                r
            }
        }
    }

    pub fn spec(&self) -> MatroidSpec {
        match self {
            Family::Boolean(n) => MatroidSpec::Boolean(*n),
            Family::Uniform(k, n) => MatroidSpec::Uniform { k: *k, n: *n },
            Family::Graph(v, e) => MatroidSpec::Graph {
                vertices: *v,
                edges: e.clone(),
            },
        }
    }
}

/// A lattice of flats with the order and Möbius function precomputed.
pub struct RefLattice {
    pub flats: Vec<u64>,
    pub rank: Vec<usize>,
    pub mu: Vec<Vec<i64>>,
}

impl RefLattice {
    /// Flats are the subsets whose rank grows when any outside element is
    /// added.
    pub fn new(f: &Family) -> Self {
        let n = f.ground();
        let mut flats: Vec<(usize, u64)> = (0..1u64 << n)
            .filter(|&s| {
                let r = f.rank(s);
                (0..n).filter(|i| s >> i & 1 == 0).all(|i| f.rank(s | 1 << i) > r)
            })
            .map(|s| (f.rank(s), s))
            .collect();
        flats.sort();
        let rank: Vec<usize> = flats.iter().map(|p| p.0).collect();
        let flats: Vec<u64> = flats.into_iter().map(|p| p.1).collect();
        let m = flats.len();
        let mut mu = vec![vec![0i64; m]; m];
        for x in 0..m {
            mu[x][x] = 1;
            let above: Vec<usize> = (x + 1..m).filter(|&y| Self::subset(flats[x], flats[y])).collect();
            for &y in &above {
                let s: i64 = std::iter::once(x)
                    .chain(above.iter().copied().filter(|&z| z != y && Self::subset(flats[z], flats[y])))
                    .map(|z| mu[x][z])
                    .sum();
                mu[x][y] = -s;
            }
        }
        RefLattice { flats, rank, mu }
    }

    fn subset(a: u64, b: u64) -> bool {
        a & !b == 0
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        Self::subset(self.flats[x], self.flats[y])
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn total_rank(&self) -> usize {
        self.rank[self.top()]
    }

    /// `Σ_{z ∈ [x, y]} μ(x, z) t^{rk y − rk z}`, ascending coefficients.
    pub fn chi(&self, x: usize, y: usize) -> Vec<i64> {
        let r = self.rank[y] - self.rank[x];
        let mut c = vec![0i64; r + 1];
        for z in 0..self.len() {
            if self.leq(x, z) && self.leq(z, y) {
                c[self.rank[y] - self.rank[z]] += self.mu[x][z];
            }
        }
        c
    }

    /// Whitney numbers of the first kind, unsigned, by rank.
    pub fn whitney(&self) -> Vec<i64> {
        let mut w = vec![0i64; self.total_rank() + 1];
        for z in 0..self.len() {
            w[self.rank[z]] += self.mu[0][z].abs();
        }
        w
    }

    /// KL polynomial of `[x, y]` by summing over all chains.
    pub fn kl(&self, x: usize, y: usize) -> Vec<i64> {
        trim(self.chain_sum(x, y, y))
    }

    /// `Σ_{x = G_0 < … < G_n = y} (−1)^n TR(χ_{G_0 G_1} TR(χ_{G_1 G_2} …))`,
    /// where each truncation keeps degrees `< rk [G_k, top] / 2`.
    fn chain_sum(&self, x: usize, y: usize, top: usize) -> Vec<i64> {
        if x == y {
            return vec![1];
        }
        let mut total = vec![0i64];
        for z in 0..self.len() {
            if z != x && self.leq(x, z) && self.leq(z, y) {
                let inner = self.chain_sum(z, y, top);
                let prod = poly_mul(&self.chi(x, z), &inner);
                let half = self.rank[top] - self.rank[x];
                let tr: Vec<i64> = prod.into_iter().enumerate().map(|(d, c)| if 2 * d < half { c } else { 0 }).collect();
                total = poly_sub(&total, &tr);
            }
        }
        total
    }

    /// Inverse KL polynomial of `[x, y]` from the convolution identity
    /// `Σ_{x ≤ F ≤ y} (−1)^{rk [x, F]} P_{[x, F]} Q_{[F, y]} = 0`.
    pub fn inverse_kl(&self, x: usize, y: usize) -> Vec<i64> {
        if x == y {
            return vec![1];
        }
        let mut acc = vec![0i64];
        for f in 0..self.len() {
            if f != x && self.leq(x, f) && self.leq(f, y) {
                let term = poly_mul(&self.kl(x, f), &self.inverse_kl(f, y));
                if (self.rank[f] - self.rank[x]) % 2 == 1 {
                    acc = poly_sub(&acc, &term);
                } else {
                    acc = poly_add(&acc, &term);
                }
            }
        }
        trim(acc.into_iter().map(|c| -c).collect())
    }
}

pub fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

pub fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        c[i] += y;
    }
    c
}

pub fn poly_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    poly_add(a, &b.iter().map(|c| -c).collect::<Vec<_>>())
}

/// Rank over `Q` of a dense integer matrix by plain Gaussian elimination.
pub fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() * inv.clone();
                for k in c..cols {
                    let v = m[rank][k].clone() * f.clone();
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced rational Betti numbers of the order complex of the open interval
/// `(x, y)`, keyed by simplex dimension from `−1`.
pub fn order_complex_betti(l: &RefLattice, x: usize, y: usize) -> Vec<(i64, usize)> {
    let inner: Vec<usize> = (0..l.len())
        .filter(|&z| z != x && z != y && l.leq(x, z) && l.leq(z, y))
        .collect();
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    loop {
        let last = simplices.last().unwrap();
        let next: Vec<Vec<usize>> = last
            .iter()
            .flat_map(|s| {
                inner
                    .iter()
                    .filter(|&&z| s.last().is_none_or(|&t| t != z && l.leq(t, z)))
                    .map(|&z| {
                        let mut t = s.clone();
                        t.push(z);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        if next.is_empty() {
            break;
        }
        simplices.push(next);
    }
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d >= simplices.len() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = simplices[d]
            .iter()
            .map(|s| {
                simplices[d - 1]
                    .iter()
                    .map(|f| {
                        (0..s.len())
                            .find(|&i| {
                                let mut t = s.clone();
                                t.remove(i);
                                &t == f
                            })
                            .map_or(0, |i| if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        dense_rank(&rows)
    };
    (0..simplices.len())
        .map(|d| (d as i64 - 1, simplices[d].len() - boundary_rank(d) - boundary_rank(d + 1)))
        .collect()
}

/// The acceptance corpus with builtin names.
pub fn corpus() -> Vec<(String, Family)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("boolean:{n}"), Family::Boolean(n)));
    }
    for n in 2..=5 {
        for k in 1..=n {
            out.push((format!("uniform:{k},{n}"), Family::Uniform(k, n)));
        }
    }
    for n in 2..=5 {
        out.push((format!("partition:{n}"), Family::complete(n)));
    }
    out.push(("complete:4".into(), Family::complete(4)));
    out.push(("cycle:4".into(), Family::cycle(4)));
    out
}
