mod common;

use mahler_core::cli::{parse_matrix, run, Format, InputDoc, Report};
use mahler_core::companion::{cyclic_gauge, lower_hull};
use mahler_core::exact::{rat, Poly, RatFun};
use mahler_core::linalg::{intersect, kernel, GriddedMat, MatQ, Subspace};
use mahler_core::system::{MahlerSystem, RatMat};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatQ> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let rows: Vec<Vec<_>> = v.chunks(cols).map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        MatQ::from_rows(rows).unwrap()
    })
}

fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    (0..=n).prop_flat_map(move |k| int_matrix(n, k.max(1))).prop_map(|m| Subspace::span(&m))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 1..6).prop_map(|c| Poly::from_ints(&c))
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

/// A block matrix that is d-gridded for a random permutation.
fn gridded(d: usize, block: usize, br: usize, bc: usize) -> impl Strategy<Value = (MatQ, Vec<usize>)> {
    (
        Just((0..d).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(-2i64..=2, br * bc * block * block),
    )
        .prop_map(move |(sigma, vals)| {
            let mut m = MatQ::zeros(br * block, bc * block);
            for bi in 0..br {
                for bj in 0..bc {
                    if bj % d != sigma[bi % d] {
                        continue;
                    }
                    for i in 0..block {
                        for j in 0..block {
                            let v = vals[((bi * bc + bj) * block + i) * block + j];
                            m.set(bi * block + i, bj * block + j, rat(v, 1));
                        }
                    }
                }
            }
            (m, sigma)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_commutative_and_contained(a in subspace(5), b in subspace(5)) {
        let ab = intersect(&a, &b).unwrap();
        prop_assert_eq!(&ab, &intersect(&b, &a).unwrap());
        prop_assert!(ab.is_subspace_of(&a) && ab.is_subspace_of(&b));
        let s = a.sum(&b).unwrap();
        prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
        prop_assert_eq!(ab.dim() + s.dim(), a.dim() + b.dim());
    }

    #[test]
    fn subspace_is_canonical(m in int_matrix(4, 3), k in int_matrix(3, 3)) {
        // same span from a different generating set
        let other = m.checked_mul(&k).unwrap();
        let s = Subspace::span(&m);
        let t = Subspace::span(&other);
        prop_assert!(t.is_subspace_of(&s));
        if k.inverse().is_ok() {
            prop_assert_eq!(s, t);
        }
    }

    #[test]
    fn kernel_is_annihilated(m in int_matrix(3, 5)) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim(), 5 - m.rank());
        prop_assert!(m.checked_mul(k.basis()).unwrap().is_zero());
    }

    #[test]
    fn gridded_matches_dense(
        (a, sa) in gridded(3, 2, 5, 4),
        (b, _) in gridded(3, 2, 4, 4),
        x in int_matrix(8, 2),
    ) {
        let ga = GriddedMat::with_sigma(&a, 3, 2, sa).unwrap();
        prop_assert_eq!(&ga.to_dense(), &a);
        let gb = GriddedMat::from_dense(&b, 3, 2).unwrap();
        prop_assert_eq!(ga.mul(&gb).unwrap().to_dense(), a.checked_mul(&b).unwrap());
        prop_assert_eq!(ga.mul_dense(&x).unwrap(), a.checked_mul(&x).unwrap());
        prop_assert_eq!(ga.kernel(), kernel(&a));
    }

    #[test]
    fn laurent_windows_concatenate(f in ratfun(), lo in -6i64..0, mid in 0i64..5, hi in 5i64..10) {
        let v = match f.valuation0() {
            Ok(v) => v,
            Err(_) => return Ok(()),
        };
        let (lo, mid, hi) = (v + lo, v + mid, v + hi);
        let whole = f.laurent_coeffs(lo, hi).unwrap();
        let mut parts = f.laurent_coeffs(lo, mid).unwrap();
        parts.extend(f.laurent_coeffs(mid + 1, hi).unwrap());
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn valuation_is_additive(f in ratfun(), g in ratfun()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = &f * &g;
        prop_assert_eq!(fg.valuation0().unwrap(), f.valuation0().unwrap() + g.valuation0().unwrap());
        prop_assert_eq!(f.inflate(3).valuation0().unwrap(), 3 * f.valuation0().unwrap());
    }

    #[test]
    fn matrix_text_round_trips(entries in prop::collection::vec(ratfun(), 4)) {
        let a = RatMat::from_rows(vec![entries[..2].to_vec(), entries[2..].to_vec()]).unwrap();
        prop_assert_eq!(parse_matrix(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn lower_hull_invariants(points in prop::collection::vec((1i64..40, -20i64..20), 1..10)) {
        let h = lower_hull(&points);
        prop_assert!(h.slopes.windows(2).all(|w| w[0] < w[1]));
        for v in &h.vertices {
            prop_assert!(points.contains(v));
        }
        for &(x, y) in &points {
            for (w, s) in h.vertices.windows(2).zip(&h.slopes) {
                if w[0].0 <= x && x <= w[1].0 {
                    let on_hull = rat(w[0].1, 1) + s * rat(x - w[0].0, 1);
                    prop_assert!(rat(y, 1) >= on_hull);
                }
            }
        }
        let xs: Vec<i64> = points.iter().map(|p| p.0).collect();
        prop_assert_eq!(h.vertices.first().unwrap().0, *xs.iter().min().unwrap());
        prop_assert_eq!(h.vertices.last().unwrap().0, *xs.iter().max().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn companion_identity_on_random_systems(seed in any::<u64>(), (m, p) in prop_oneof![Just((2, 2)), Just((2, 3)), Just((3, 2))]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (0..m)
            .map(|_| (0..m).map(|_| common::random_ratfun(&mut rng, 1, 3)).collect())
            .collect();
        let a = RatMat::from_rows(rows).unwrap();
        prop_assume!(a.det().is_ok_and(|d| !d.is_zero()));
        let sys = MahlerSystem::new(p, a).unwrap();
        let cf = cyclic_gauge(&sys).unwrap();
        prop_assert!(cf.verify(&sys).unwrap());
    }

    #[test]
    fn report_json_round_trips(f in ratfun(), p in 2usize..=3, order in 1u64..5) {
        prop_assume!(!f.is_zero());
        let doc = InputDoc {
            p,
            matrix_text: f.to_string(),
            example: None,
            order,
            d_override: None,
            scan_all_d: false,
            format: Format::Json,
        };
        let r = run(&doc).unwrap();
        prop_assert!(r.regular_singular);
        prop_assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}
