//! Seeded random representations satisfying the canonical relations.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{ArmPath, Arrow, CanonicalAlgebra, Vertex};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::representation::Rep;
use crate::scalar::Scalar;

/// Integer matrix with entries in -bound..=bound.
pub fn random_matrix<T: Scalar, R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    bound: i64,
) -> Matrix<T> {
    let data = (0..rows * cols)
        .map(|_| T::from_i64(rng.gen_range(-bound..=bound)))
        .collect();
    Matrix::new(rows, cols, data).expect("data sized to shape")
}

pub fn random_invertible<T: Scalar, R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<T> {
    loop {
        let m = random_matrix(rng, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

/// A relation-satisfying representation with every vertex dimension at
/// most `max_dim`. Arms 1 and 2 are arbitrary; on each further arm the
/// interior dimensions equal dim M_c, the tail is invertible, and the
/// first arrow is solved from the relation.
pub fn random_rep<T: Scalar, R: Rng>(
    rng: &mut R,
    alg: &Arc<CanonicalAlgebra<T>>,
    max_dim: usize,
) -> Result<Rep<T>> {
    let t = alg.num_arms();
    let d0 = rng.gen_range(0..=max_dim);
    let dc = rng.gen_range(0..=max_dim);
    let mut dims = vec![0; alg.num_vertices()];
    dims[alg.vertex_index(Vertex::Zero)] = d0;
    dims[alg.vertex_index(Vertex::Top)] = dc;
    for arm in 1..=t {
        for step in 1..alg.weight(arm) {
            dims[alg.vertex_index(alg.arm_vertex(arm, step))] = if arm <= 2 {
                rng.gen_range(0..=max_dim)
            } else {
                dc
            };
        }
    }
    let dim_of = |v: Vertex| dims[alg.vertex_index(v)];
    let mut mats: Vec<Matrix<T>> = alg
        .arrows()
        .iter()
        .map(|&a| {
            let (r, c) = (dim_of(alg.source(a)), dim_of(alg.target(a)));
            match (a.arm, a.step) {
                (1 | 2, _) => random_matrix(rng, r, c, 2),
                (_, 1) => Matrix::zeros(r, c),
                _ => random_invertible(rng, c, 2),
            }
        })
        .collect();
    let scratch = Rep::new(alg.clone(), dims.clone(), mats.clone())?;
    let p1 = scratch.path_matrix(alg.full_path(1));
    let p2 = scratch.path_matrix(alg.full_path(2));
    for arm in 3..=t {
        let rhs = p1.add(&p2.scale(alg.lambda(arm)))?;
        let tail = scratch.path_matrix(ArmPath {
            arm,
            from: 2,
            to: alg.weight(arm),
        });
        mats[alg.arrow_index(Arrow { arm, step: 1 })] = rhs.matmul(&tail.inverse()?)?;
    }
    let m = Rep::new(alg.clone(), dims, mats)?;
    m.ensure_relations()?;
    Ok(m)
}

/// Conjugates `m` by random invertible matrices at every vertex.
pub fn random_base_change<T: Scalar, R: Rng>(rng: &mut R, m: &Rep<T>) -> Result<Rep<T>> {
    let g: Vec<Matrix<T>> = m
        .dims()
        .iter()
        .map(|&d| random_invertible(rng, d, 2))
        .collect();
    m.base_change(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio_i64;
    use crate::weight::WeightSequence;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_reps_satisfy_relations() {
        let alg = Arc::new(
            CanonicalAlgebra::<Rational>::new(
                WeightSequence::new(vec![2, 3, 3, 4]).unwrap(),
                vec![ratio_i64(0, 1), ratio_i64(1, 1), ratio_i64(-1, 2)],
            )
            .unwrap(),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_rep(&mut rng, &alg, 3).unwrap();
            assert!(m.dims().iter().all(|&d| d <= 3));
            let n = random_base_change(&mut rng, &m).unwrap();
            assert!(n.check_relations().is_ok());
        }
    }
}
