use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use canonical_core::algebra::CanonicalAlgebra;
use canonical_core::homext::{hom_ext, is_exceptional, ExtModel};
use canonical_core::kronecker::{
    disjoint_support_audit, exceptional_preinjective, exceptional_preprojective, kronecker_hom_ext,
    preinjective_dims, preprojective_dims,
};
use canonical_core::linalg::Matrix;
use canonical_core::scalar::ratio_i64;
use canonical_core::schofield::{
    assemble, constructor_pool, ext_basis_from_u, find_orthogonal_pairs, generic_u_basis,
    negative_control, structured_u_basis, PoolEntry,
};
use canonical_core::{Rational, Rep, ThetaRep, WeightSequence};

type Alg = Arc<CanonicalAlgebra<Rational>>;

fn alg_237() -> Alg {
    Arc::new(
        CanonicalAlgebra::new(
            WeightSequence::new(vec![2, 3, 7]).unwrap(),
            vec![ratio_i64(0, 1), ratio_i64(1, 1)],
        )
        .unwrap(),
    )
}

#[test]
fn dimension_recurrence() {
    for n in 2..=5u64 {
        for k in 0..=6usize {
            let (v, u) = preprojective_dims(n as usize, k);
            let (v1, u1) = preprojective_dims(n as usize, k + 1);
            assert_eq!(u1, v);
            assert_eq!(v1, n * v - u, "n={n} k={k}");
            assert_eq!(preinjective_dims(n as usize, k), (u, v));
        }
    }
}

#[test]
fn kronecker_constructors_in_range() {
    let cases = [(1, 0), (1, 1)]
        .into_iter()
        .chain((2..=5).flat_map(|n| (0..=4).map(move |k| (n, k))))
        .chain([(2, 5), (2, 6), (3, 5), (3, 6)]);
    for (n, k) in cases {
        for rep in [
            exceptional_preprojective::<Rational>(n, k).unwrap(),
            exceptional_preinjective::<Rational>(n, k).unwrap(),
        ] {
            assert!(rep.is_zero_one(), "n={n} k={k}");
            assert!(disjoint_support_audit(&rep).is_empty(), "n={n} k={k}");
            assert_eq!(
                kronecker_hom_ext(&rep, &rep).unwrap(),
                (1, 0),
                "n={n} k={k}"
            );
        }
    }
}

/// A 0-1 exceptional representation whose matrices share a nonzero
/// position: disjoint support is a property of the constructed basis, not
/// of every presentation.
#[test]
fn exceptional_without_disjoint_support() {
    let rep = ThetaRep::new(
        2,
        1,
        vec![
            Matrix::from_i64(&[&[1], &[1]]),
            Matrix::from_i64(&[&[0], &[1]]),
        ],
    )
    .unwrap();
    assert_eq!(kronecker_hom_ext(&rep, &rep).unwrap(), (1, 0));
    assert_eq!(disjoint_support_audit(&rep), vec![(1, 0)]);
}

/// Random 0-1 representations with overlapping supports: some are
/// exceptional, and those sit at real roots.
#[test]
fn overlapping_support_survey() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let (mut overlapping, mut overlapping_exceptional) = (0, 0);
    for _ in 0..400 {
        let n = rng.gen_range(2..=3);
        let (v, u) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let mats = (0..n)
            .map(|_| {
                let data = (0..v * u)
                    .map(|_| ratio_i64(rng.gen_range(0..=1), 1))
                    .collect();
                Matrix::new(v, u, data).unwrap()
            })
            .collect();
        let rep = ThetaRep::new(v, u, mats).unwrap();
        if disjoint_support_audit(&rep).is_empty() {
            continue;
        }
        overlapping += 1;
        if kronecker_hom_ext(&rep, &rep).unwrap() == (1, 0) {
            overlapping_exceptional += 1;
            // exceptional dimension vectors are real roots: v² + u² - n·v·u = 1
            let q = (v * v + u * u) as i64 - (n * v * u) as i64;
            assert_eq!(q, 1, "n={n} dims=({v}, {u})");
        }
    }
    assert!(overlapping > 0);
    assert!(overlapping_exceptional > 0);
}

type PoolPairs = (Vec<PoolEntry<Rational>>, Vec<(usize, usize, usize)>);

fn pool_and_pairs() -> &'static PoolPairs {
    static CACHE: OnceLock<PoolPairs> = OnceLock::new();
    CACHE.get_or_init(|| {
        let pool = constructor_pool(&alg_237(), 0).unwrap();
        let reps: Vec<Rep> = pool.iter().map(|e| e.rep.clone()).collect();
        let pairs = find_orthogonal_pairs(&reps).unwrap();
        (pool, pairs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn assembled_modules_are_exceptional(pick in any::<prop::sample::Index>(), k in 0usize..=2, pre in any::<bool>()) {
        let (pool, pairs) = pool_and_pairs();
        let (x, y, n) = pairs[pick.index(pairs.len())];
        let (x, y) = (&pool[x], &pool[y]);
        let model = ExtModel::new(&x.rep, &y.rep).unwrap();
        let basis = match x.regular {
            Some(spec) if y.rep.rank() > 0 => structured_u_basis(&model, spec).unwrap(),
            _ => generic_u_basis(&model),
        };
        let ext = ext_basis_from_u(&model, &basis);
        prop_assert_eq!(ext.len(), n);
        let k = if n == 1 { k.min(1) } else { k };
        let kron = if pre { exceptional_preprojective(n, k) } else { exceptional_preinjective(n, k) }.unwrap();
        let m = assemble(&model, &ext, &kron).unwrap();
        prop_assert_eq!(hom_ext(&m, &m).unwrap(), (1, 0));
        let (v, u) = (kron.v(), kron.u());
        prop_assert_eq!(m.rank(), u as i64 * x.rep.rank() + v as i64 * y.rep.rank());
        for ((dm, dx), dy) in m.dims().iter().zip(x.rep.dims()).zip(y.rep.dims()) {
            prop_assert_eq!(*dm, u * dx + v * dy);
        }
    }

    #[test]
    fn negative_controls_are_rejected(pick in any::<prop::sample::Index>()) {
        let (pool, pairs) = pool_and_pairs();
        let (x, y, _) = pairs[pick.index(pairs.len())];
        prop_assert!(!negative_control(&pool[x].rep, &pool[y].rep).unwrap());
    }
}

#[test]
fn structured_bases_keep_coefficients() {
    let (pool, pairs) = pool_and_pairs();
    let mut checked = 0;
    for &(x, y, n) in pairs
        .iter()
        .filter(|(x, y, _)| pool[*x].regular.is_some() && pool[*y].rep.rank() > 0)
    {
        let (x, y) = (&pool[x], &pool[y]);
        let model = ExtModel::new(&x.rep, &y.rep).unwrap();
        let ext = ext_basis_from_u(
            &model,
            &structured_u_basis(&model, x.regular.unwrap()).unwrap(),
        );
        let kron = exceptional_preprojective(n, 1).unwrap();
        let m = assemble(&model, &ext, &kron).unwrap();
        assert!(is_exceptional(&m).unwrap());
        assert!(m.coefficient_audit().is_ok(), "{} {}", x.label, y.label);
        checked += 1;
    }
    assert!(checked > 100);
}
