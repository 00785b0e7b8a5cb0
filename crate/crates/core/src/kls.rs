//! Incidence algebras with polynomial entries, kernels, and the
//! Kazhdan–Lusztig–Stanley recursion.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::poset::GradedBoundedPoset;

/// An element of the incidence algebra of a graded bounded poset with
/// integer-polynomial entries; entries at incomparable pairs are zero.
#[derive(Clone, Debug)]
pub struct IncidencePolynomial {
    host: Arc<GradedBoundedPoset>,
    entries: Vec<Poly>,
}

impl PartialEq for IncidencePolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_host(&self.host, &other.host) && self.entries == other.entries
    }
}

impl Eq for IncidencePolynomial {}

fn same_host(a: &Arc<GradedBoundedPoset>, b: &Arc<GradedBoundedPoset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl IncidencePolynomial {
    /// Builds an element from a function on comparable pairs.
    pub fn from_fn(host: Arc<GradedBoundedPoset>, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let n = host.len();
        let mut entries = vec![Poly::zero(); n * n];
        for x in 0..n {
            for y in host.up_set(x).iter() {
                entries[x * n + y] = f(x, y);
            }
        }
        IncidencePolynomial { host, entries }
    }

    /// The unit `δ`.
    pub fn delta(host: Arc<GradedBoundedPoset>) -> Self {
        Self::from_fn(host, |x, y| if x == y { Poly::one() } else { Poly::zero() })
    }

    /// The zeta function: 1 on every interval.
    pub fn zeta(host: Arc<GradedBoundedPoset>) -> Self {
        Self::from_fn(host, |_, _| Poly::one())
    }

    /// The characteristic kernel `χ`, whose entry on `[x, y]` is the
    /// characteristic polynomial of that interval.
    pub fn characteristic(host: Arc<GradedBoundedPoset>) -> Self {
        let mu = host.mobius_table();
        let h = Arc::clone(&host);
        Self::from_fn(host, move |x, y| h.interval_characteristic_polynomial(x, y, &mu))
    }

    pub fn host(&self) -> &GradedBoundedPoset {
        &self.host
    }

    pub fn host_arc(&self) -> Arc<GradedBoundedPoset> {
        Arc::clone(&self.host)
    }

    /// Entry on `[x, y]` (zero when `x ≰ y`).
    pub fn get(&self, x: usize, y: usize) -> &Poly {
        &self.entries[x * self.host.len() + y]
    }

    /// Overwrites the entry on `[x, y]`.
    pub fn set(&mut self, x: usize, y: usize, p: Poly) -> Result<()> {
        if !self.host.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        let n = self.host.len();
        self.entries[x * n + y] = p;
        Ok(())
    }

    /// Checks `deg f_{xy} ≤ rk[x, y]` everywhere.
    pub fn check_rank_bounded(&self) -> Result<()> {
        for (x, y) in self.pairs() {
            if self.get(x, y).degree().is_some_and(|d| d > self.host.interval_rank(x, y)) {
                return Err(Error::DegreeExceedsRank(x, y));
            }
        }
        Ok(())
    }

    /// True when `deg f_{xy} < rk[x, y]/2` for every `x < y`.
    pub fn is_half_rank_bounded(&self) -> bool {
        self.pairs()
            .filter(|&(x, y)| x != y)
            .all(|(x, y)| self.get(x, y).degree().is_none_or(|d| 2 * d < self.host.interval_rank(x, y)))
    }

    /// All comparable pairs `x ≤ y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.host.len()).flat_map(move |x| self.host.up_set(x).iter().map(move |y| (x, y)))
    }

    /// The involution `f̄_{xy}(t) = t^{rk[x, y]} f_{xy}(1/t)`.
    pub fn bar(&self) -> Result<Self> {
        let n = self.host.len();
        let mut entries = vec![Poly::zero(); n * n];
        for (x, y) in self.pairs() {
            entries[x * n + y] = self
                .get(x, y)
                .reverse(self.host.interval_rank(x, y))
                .ok_or(Error::DegreeExceedsRank(x, y))?;
        }
        Ok(IncidencePolynomial {
            host: Arc::clone(&self.host),
            entries,
        })
    }

    /// Convolution `(f·g)_{xz} = Σ_{x ≤ y ≤ z} f_{xy} g_{yz}`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if !same_host(&self.host, &other.host) {
            return Err(Error::HostMismatch);
        }
        let n = self.host.len();
        let entries: Vec<Poly> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (x, z) = (k / n, k % n);
                if !self.host.leq(x, z) {
                    return Poly::zero();
                }
                let mut acc = Poly::zero();
                for y in self.host.interval_elements(x, z) {
                    let (a, b) = (self.get(x, y), other.get(y, z));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(IncidencePolynomial {
            host: Arc::clone(&self.host),
            entries,
        })
    }

    /// First interval on which `κ̄κ = δ` fails, if any. A diagonal entry
    /// other than 1 is reported on the singleton interval.
    pub fn kernel_witness(&self) -> Result<Option<(usize, usize)>> {
        for x in 0..self.host.len() {
            if *self.get(x, x) != Poly::one() {
                return Ok(Some((x, x)));
            }
        }
        let prod = self.bar()?.convolve(self)?;
        let witness = prod.pairs().find(|&(x, y)| {
            let expected = if x == y { Poly::one() } else { Poly::zero() };
            *prod.get(x, y) != expected
        });
        Ok(witness)
    }

    /// Whether `κ̄κ = δ`.
    pub fn is_kernel(&self) -> Result<bool> {
        Ok(self.kernel_witness()?.is_none())
    }

    /// The right KLS polynomial: the unique `f` with `deg f_{xy} < rk/2`,
    /// diagonal 1 and `f̄ = κf`.
    pub fn kls_right(&self) -> Result<Self> {
        self.require_kernel()?;
        let n = self.host.len();
        // column y only depends on entries of the same column
        let columns: Vec<Vec<(usize, Poly)>> = (0..n)
            .into_par_iter()
            .map(|y| {
                let mut col: Vec<Option<Poly>> = vec![None; n];
                let below: Vec<usize> = self.host.down_set(y).iter().collect();
                for &x in below.iter().rev() {
                    let value = if x == y {
                        Poly::one()
                    } else {
                        let mut acc = Poly::zero();
                        for z in self.host.interval_elements(x, y).into_iter().filter(|&z| z != x) {
                            let f_zy = col[z].as_ref().expect("larger elements are solved first");
                            acc = &acc - &(self.get(x, z) * f_zy);
                        }
                        acc.truncate_below_half(self.host.interval_rank(x, y))
                    };
                    col[x] = Some(value);
                }
                col.into_iter().enumerate().filter_map(|(x, p)| p.map(|p| (x, p))).collect()
            })
            .collect();
        let f = self.assemble(columns.into_iter().enumerate().flat_map(|(y, col)| col.into_iter().map(move |(x, p)| (x, y, p))));
        let lhs = f.bar()?;
        let rhs = self.convolve(&f)?;
        if let Some((x, y)) = lhs.pairs().find(|&(x, y)| lhs.get(x, y) != rhs.get(x, y)) {
            return Err(Error::RecursionInconsistent(x, y));
        }
        Ok(f)
    }

    /// The left KLS polynomial: the unique `g` with `deg g_{xy} < rk/2`,
    /// diagonal 1 and `ḡ = gκ`.
    pub fn kls_left(&self) -> Result<Self> {
        self.require_kernel()?;
        let n = self.host.len();
        let rows: Vec<Vec<(usize, Poly)>> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut row: Vec<Option<Poly>> = vec![None; n];
                for y in self.host.up_set(x).iter() {
                    let value = if x == y {
                        Poly::one()
                    } else {
                        let mut acc = Poly::zero();
                        for z in self.host.interval_elements(x, y).into_iter().filter(|&z| z != y) {
                            let g_xz = row[z].as_ref().expect("smaller elements are solved first");
                            acc = &acc - &(g_xz * self.get(z, y));
                        }
                        acc.truncate_below_half(self.host.interval_rank(x, y))
                    };
                    row[y] = Some(value);
                }
                row.into_iter().enumerate().filter_map(|(y, p)| p.map(|p| (y, p))).collect()
            })
            .collect();
        let g = self.assemble(rows.into_iter().enumerate().flat_map(|(x, row)| row.into_iter().map(move |(y, p)| (x, y, p))));
        let lhs = g.bar()?;
        let rhs = g.convolve(self)?;
        if let Some((x, y)) = lhs.pairs().find(|&(x, y)| lhs.get(x, y) != rhs.get(x, y)) {
            return Err(Error::RecursionInconsistent(x, y));
        }
        Ok(g)
    }

    /// The inverse KLS pair: right and left KLS polynomials of `κ̄`.
    pub fn inverse_kls(&self) -> Result<(Self, Self)> {
        let kb = self.bar()?;
        Ok((kb.kls_right()?, kb.kls_left()?))
    }

    /// Multiplies the entry on `[x, y]` by `(−1)^{rk [x, y]}`. This is a ring
    /// automorphism commuting with the bar involution.
    pub fn sign_twist(&self) -> Self {
        let h = Arc::clone(&self.host);
        self.assemble(self.pairs().map(|(x, y)| {
            let p = self.get(x, y);
            let p = if h.interval_rank(x, y) % 2 == 1 { -p } else { p.clone() };
            (x, y, p)
        }))
    }

    fn require_kernel(&self) -> Result<()> {
        match self.kernel_witness()? {
            Some((x, y)) => Err(Error::KernelCheckFailed(x, y)),
            None => Ok(()),
        }
    }

    fn assemble(&self, items: impl Iterator<Item = (usize, usize, Poly)>) -> Self {
        let n = self.host.len();
        let mut entries = vec![Poly::zero(); n * n];
        for (x, y, p) in items {
            entries[x * n + y] = p;
        }
        IncidencePolynomial {
            host: Arc::clone(&self.host),
            entries,
        }
    }

    /// JSON rows `{"interval":[x,y],"coeffs":[...]}` for every comparable pair.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.pairs()
                .map(|(x, y)| serde_json::json!({"interval": [x, y], "coeffs": self.get(x, y).to_json()}))
                .collect(),
        )
    }
}

/// The Kazhdan–Lusztig polynomial of every interval: right KLS polynomials
/// of the characteristic kernel.
pub fn kl_polynomials(host: Arc<GradedBoundedPoset>) -> Result<IncidencePolynomial> {
    IncidencePolynomial::characteristic(host).kls_right()
}

/// The inverse Kazhdan–Lusztig polynomial of every interval: left KLS
/// polynomials of `χ̄`, normalized by `(−1)^{rk}` to have nonnegative
/// coefficients.
pub fn inverse_kl_polynomials(host: Arc<GradedBoundedPoset>) -> Result<IncidencePolynomial> {
    Ok(IncidencePolynomial::characteristic(host).bar()?.kls_left()?.sign_twist())
}
