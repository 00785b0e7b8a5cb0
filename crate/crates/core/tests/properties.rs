mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use common::dense_rank;
use opkls::bar::{bar_complex, cohomology, kl_via_complexes, kls_filter, BarOperad, ChainSummand, LatticePath, Variant};
use opkls::gerst::GerstOperad;
use opkls::kls::{kl_polynomials, IncidencePolynomial};
use opkls::linalg::SparseMatrix;
use opkls::os::OsCooperad;
use opkls::poset::{build_lattice, Caps, GeometricLattice, MatroidSpec};
use opkls::Poly;

const K5_EDGES: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Cycle matroids of random simple graphs on five vertices.
fn graph() -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::sample::subsequence(K5_EDGES.to_vec(), 1..=7)
}

fn graph_lattice(edges: &[(usize, usize)]) -> Arc<GeometricLattice> {
    let spec = MatroidSpec::Graph {
        vertices: 5,
        edges: edges.to_vec(),
    };
    Arc::new(build_lattice(&spec, &Caps::default()).unwrap())
}

fn rank_bounded(host: &Arc<GeometricLattice>, seed: &[i64]) -> IncidencePolynomial {
    let p = host.poset();
    let mut k = 0usize;
    IncidencePolynomial::from_fn(host.poset_arc(), |x, y| {
        let r = p.interval_rank(x, y);
        let coeffs: Vec<i64> = (0..=r)
            .map(|_| {
                k += 1;
                seed[k % seed.len()]
            })
            .collect();
        Poly::from_i64s(&coeffs)
    })
}

fn summand() -> impl Strategy<Value = ChainSummand> {
    proptest::collection::vec(1usize..=3, 1..=5)
        .prop_flat_map(|lens| {
            let splits: Vec<_> = lens.iter().map(|&r| 0..=r).collect();
            (Just(lens), splits)
        })
        .prop_map(|(lens, cs)| {
            let mut ranks = vec![0];
            for r in &lens {
                ranks.push(ranks.last().unwrap() + r);
            }
            let bigrades = lens.iter().zip(&cs).map(|(&r, &i)| (i, r - i)).collect();
            ChainSummand::new((0..ranks.len()).collect(), ranks, bigrades)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mobius_sums_vanish(edges in graph()) {
        let l = graph_lattice(&edges);
        let p = l.poset();
        for x in 0..p.len() {
            for y in p.up_set(x).iter().filter(|&y| y != x) {
                let s: i64 = p.interval_elements(x, y).iter().map(|&z| p.mobius(x, z).unwrap()).sum();
                prop_assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn characteristic_is_a_kernel(edges in graph()) {
        let l = graph_lattice(&edges);
        prop_assert!(IncidencePolynomial::characteristic(l.poset_arc()).is_kernel().unwrap());
    }

    #[test]
    fn nbc_dimensions_are_whitney_numbers(edges in graph()) {
        let l = graph_lattice(&edges);
        let os = OsCooperad::new(Arc::clone(&l)).unwrap();
        let p = l.poset();
        let mut whitney = vec![0usize; l.rank() + 1];
        for z in 0..p.len() {
            whitney[p.rank_of(z)] += p.mobius(p.bottom(), z).unwrap().unsigned_abs() as usize;
        }
        prop_assert_eq!(os.algebra(l.bottom(), l.top()).dims(), whitney);
    }

    #[test]
    fn bar_involution_and_convolution(seed in proptest::collection::vec(-3i64..=3, 5..12)) {
        let l = Arc::new(build_lattice(&MatroidSpec::Boolean(3), &Caps::default()).unwrap());
        let a = rank_bounded(&l, &seed);
        let b = rank_bounded(&l, &seed[1..]);
        let c = rank_bounded(&l, &seed[2..]);
        prop_assert_eq!(a.bar().unwrap().bar().unwrap(), a.clone());
        let ab_c = a.convolve(&b).unwrap().convolve(&c).unwrap();
        let a_bc = a.convolve(&b.convolve(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let bar_ab = a.convolve(&b).unwrap().bar().unwrap();
        prop_assert_eq!(bar_ab, a.bar().unwrap().convolve(&b.bar().unwrap()).unwrap());
    }

    #[test]
    fn complexes_on_random_graphs(edges in graph()) {
        let l = graph_lattice(&edges);
        let g = GerstOperad::new(Arc::clone(&l)).unwrap();
        let caps = Caps::default();
        for w in 0..=l.rank() {
            let h = cohomology(&bar_complex(&g, w, BarOperad::Gerst, &caps).unwrap());
            prop_assert!(h.iter().all(|(&k, &n)| k == 0 || n == 0));
        }
        let cx = kl_via_complexes(&g, &caps).unwrap();
        let kl = kl_polynomials(l.poset_arc()).unwrap();
        prop_assert_eq!(&cx.p, kl.get(l.bottom(), l.top()));
    }

    #[test]
    fn betti_tables_ignore_ground_set_order(edges in graph(), seed in any::<u64>()) {
        let mut shuffled = edges.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed >> (i % 60)) as usize % (i + 1));
        }
        let table = |e: &[(usize, usize)]| {
            let g = GerstOperad::new(graph_lattice(e)).unwrap();
            (0..=g.lattice().rank())
                .map(|w| {
                    let c = bar_complex(&g, w, BarOperad::Gerst, &Caps::default()).unwrap();
                    (w, (c.dims.clone(), cohomology(&c)))
                })
                .collect::<BTreeMap<_, _>>()
        };
        prop_assert_eq!(table(&edges), table(&shuffled));
    }

    #[test]
    fn membership_characterizations_agree(s in summand()) {
        for v in Variant::ALL {
            prop_assert!(kls_filter(&s, v).is_ok());
        }
        prop_assert_eq!(kls_filter(&s, Variant::Rkls).unwrap(), kls_filter(&s.flipped(), Variant::Lkls).unwrap());
        prop_assert_eq!(kls_filter(&s, Variant::RklsHat).unwrap(), kls_filter(&s.swapped(), Variant::Rkls).unwrap());
        prop_assert_eq!(kls_filter(&s, Variant::LklsHat).unwrap(), kls_filter(&s.swapped(), Variant::Lkls).unwrap());
    }

    #[test]
    fn lattice_path_statistics(s in summand()) {
        let path = LatticePath::of_summand(&s);
        prop_assert_eq!(path.rank(), s.rank() as i64);
        prop_assert_eq!(path.degree(), s.degree());
        prop_assert_eq!(path.weight(), s.weight() as i64);
    }

    #[test]
    fn sparse_rank_matches_dense(rows in 1usize..7, cols in 1usize..7, vals in proptest::collection::vec(-4i64..=4, 49)) {
        let dense: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| vals[i * 7 + j]).collect()).collect();
        let m = SparseMatrix::from_triplets(rows, cols, (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| (i, j, dense[i][j])));
        prop_assert_eq!(m.rank(), dense_rank(&dense));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn polynomial_reversal(coeffs in proptest::collection::vec(-5i64..=5, 1..6), extra in 0usize..3) {
        let p = Poly::from_i64s(&coeffs);
        let r = coeffs.len() - 1 + extra;
        prop_assert_eq!(p.reverse(r).unwrap().reverse(r).unwrap(), p.clone());
        let q = Poly::from_i64s(&[1, -1]);
        prop_assert_eq!(&p * &q, &q * &p);
    }
}

#[test]
fn rank_overflow_falls_back_to_big_integers() {
    let big = i64::MAX / 3;
    let m = SparseMatrix::from_triplets(3, 3, [(0, 0, big), (0, 1, big - 1), (1, 0, big - 7), (1, 1, big), (2, 2, 5)]);
    assert_eq!(m.rank(), 3);
}
