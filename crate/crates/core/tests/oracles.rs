mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::{corpus, dense_rank, order_complex_betti, Family, RefLattice};
use opkls::bar::{bar_com_poset, bar_complex, cohomology, kl_via_complexes, BarOperad};
use opkls::gerst::GerstOperad;
use opkls::kls::{inverse_kl_polynomials, kl_polynomials, IncidencePolynomial};
use opkls::poset::{build_lattice, Caps, GeometricLattice};
use opkls::Poly;

fn lattice(f: &Family) -> Arc<GeometricLattice> {
    Arc::new(build_lattice(&f.spec(), &Caps::default()).unwrap())
}

fn coeffs(p: &Poly) -> Vec<i64> {
    let mut c = p.to_i64s().unwrap();
    if c.is_empty() {
        c.push(0);
    }
    c
}

fn small_corpus() -> Vec<(String, Family)> {
    corpus().into_iter().filter(|(n, _)| n != "boolean:5" && n != "uniform:5,5").collect()
}

#[test]
fn flats_rank_and_whitney_numbers() {
    for (name, f) in corpus() {
        let r = RefLattice::new(&f);
        let l = lattice(&f);
        let p = l.poset();
        assert_eq!(l.len(), r.len(), "{name}");
        assert_eq!(l.rank(), r.total_rank(), "{name}");
        let mut whitney = vec![0i64; l.rank() + 1];
        for z in 0..p.len() {
            whitney[p.rank_of(z)] += p.mobius(p.bottom(), z).unwrap().abs();
        }
        assert_eq!(whitney, r.whitney(), "{name}");
        assert_eq!(coeffs(&p.characteristic_polynomial()), r.chi(0, r.top()), "{name}");
    }
}

#[test]
fn partition_lattice_sizes_are_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52];
    for n in 1..=5 {
        let l = build_lattice(&opkls::poset::MatroidSpec::Partition(n), &Caps::default()).unwrap();
        assert_eq!(l.len(), bell[n]);
        assert_eq!(l.rank(), n - 1);
    }
}

/// The multiset of `(interval rank, polynomial)` over all intervals is an
/// isomorphism invariant, so it can be compared without matching elements.
fn interval_profile(
    len: usize,
    leq: impl Fn(usize, usize) -> bool,
    rank: impl Fn(usize, usize) -> usize,
    poly: impl Fn(usize, usize) -> Vec<i64>,
) -> BTreeMap<(usize, Vec<i64>), usize> {
    let mut out = BTreeMap::new();
    for x in 0..len {
        for y in 0..len {
            if leq(x, y) {
                *out.entry((rank(x, y), poly(x, y))).or_insert(0) += 1;
            }
        }
    }
    out
}

#[test]
fn kl_polynomials_match_chain_expansion() {
    for (name, f) in small_corpus() {
        let r = RefLattice::new(&f);
        let l = lattice(&f);
        let p = l.poset();
        let kl = kl_polynomials(l.poset_arc()).unwrap();
        let ours = interval_profile(p.len(), |x, y| p.leq(x, y), |x, y| p.interval_rank(x, y), |x, y| coeffs(kl.get(x, y)));
        let theirs = interval_profile(r.len(), |x, y| r.leq(x, y), |x, y| r.rank[y] - r.rank[x], |x, y| r.kl(x, y));
        assert_eq!(ours, theirs, "{name}");
    }
}

#[test]
fn inverse_kl_polynomials_match_convolution_identity() {
    for (name, f) in small_corpus() {
        let r = RefLattice::new(&f);
        let l = lattice(&f);
        let q = inverse_kl_polynomials(l.poset_arc()).unwrap();
        assert_eq!(coeffs(q.get(l.bottom(), l.top())), r.inverse_kl(0, r.top()), "{name}");
    }
}

#[test]
fn known_kl_values() {
    // P of the braid matroids M(K_4), M(K_5) and of U_{3,4}, U_{4,5}
    for (name, expected) in [
        ("partition:4", vec![1, 1]),
        ("partition:5", vec![1, 5]),
        ("uniform:3,4", vec![1, 2]),
        ("uniform:4,5", vec![1, 5]),
        ("boolean:4", vec![1]),
    ] {
        let l = Arc::new(build_lattice(&opkls::poset::MatroidSpec::builtin(name).unwrap(), &Caps::default()).unwrap());
        let kl = kl_polynomials(l.poset_arc()).unwrap();
        assert_eq!(coeffs(kl.get(l.bottom(), l.top())), expected, "{name}");
    }
}

#[test]
fn complexes_reproduce_reference_polynomials() {
    for (name, f) in small_corpus() {
        let r = RefLattice::new(&f);
        let g = GerstOperad::new(lattice(&f)).unwrap();
        let cx = kl_via_complexes(&g, &Caps::default()).unwrap();
        assert_eq!(coeffs(&cx.p), r.kl(0, r.top()), "{name}");
        assert_eq!(coeffs(&cx.q), r.inverse_kl(0, r.top()), "{name}");
    }
}

#[test]
fn left_kls_of_characteristic_kernel_is_trivial() {
    for (name, f) in small_corpus() {
        let l = lattice(&f);
        let left = IncidencePolynomial::characteristic(l.poset_arc()).kls_left().unwrap();
        let zeta = IncidencePolynomial::zeta(l.poset_arc());
        assert_eq!(left, zeta, "{name}");
    }
}

#[test]
fn sparse_rank_matches_dense_rank_on_bar_differentials() {
    for name in ["uniform:3,4", "partition:4", "boolean:3"] {
        let l = Arc::new(build_lattice(&opkls::poset::MatroidSpec::builtin(name).unwrap(), &Caps::default()).unwrap());
        let g = GerstOperad::new(l).unwrap();
        for w in 0..=3 {
            let c = bar_complex(&g, w, BarOperad::Gerst, &Caps::default()).unwrap();
            for d in c.differentials.values() {
                let dense: Vec<Vec<i64>> = (0..d.rows()).map(|i| (0..d.cols()).map(|j| d.get(i, j)).collect()).collect();
                assert_eq!(d.rank(), dense_rank(&dense), "{name} weight {w}");
            }
        }
    }
}

#[test]
fn bar_com_matches_reference_order_complex() {
    for (name, f) in small_corpus() {
        let r = RefLattice::new(&f);
        let l = lattice(&f);
        let bar = cohomology(&bar_com_poset(l.poset(), &Caps::default()).unwrap());
        let rk = r.total_rank() as i64;
        let reference: BTreeMap<i64, usize> = order_complex_betti(&r, 0, r.top())
            .into_iter()
            .map(|(d, b)| (rk - 2 - d, b))
            .filter(|&(k, _)| k >= 0)
            .collect();
        for (k, b) in &bar {
            assert_eq!(reference.get(k).copied().unwrap_or(0), *b, "{name} degree {k}");
        }
        assert_eq!(bar.get(&0).copied().unwrap_or(0) as i64, r.mu[0][r.top()].abs(), "{name}");
    }
}
