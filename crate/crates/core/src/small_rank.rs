//! Explicit exceptional modules of rank 0 and 1.

use std::sync::Arc;

use crate::algebra::{Arrow, CanonicalAlgebra, Vertex};
use crate::error::{Error, Result};
use crate::homext::is_exceptional;
use crate::linalg::Matrix;
use crate::representation::Rep;
use crate::scalar::Scalar;

/// X_{n+k,n}: I_n on top of k zero rows.
pub fn matrix_x<T: Scalar>(n: usize, k: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(n + k, n);
    for i in 0..n {
        m.set(i, i, T::one());
    }
    m
}

/// Y_{n+k,n}: k zero rows on top of I_n.
pub fn matrix_y<T: Scalar>(n: usize, k: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(n + k, n);
    for i in 0..n {
        m.set(k + i, i, T::one());
    }
    m
}

/// Which support pattern S_a^[l] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularCase {
    /// a < p_i and l <= p_i - a: thin on the window a..a+l-1.
    Window,
    /// a < p_i and l > p_i - a: zero exactly on s..a-1 of the arm.
    Wrapped { s: usize },
    /// a = p_i: zero exactly on s..p_i-1 of the arm, s = l.
    Top { s: usize },
}

/// S_a^[l] in the tube of arm `arm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegularSpec {
    pub arm: usize,
    pub a: usize,
    pub l: usize,
}

impl RegularSpec {
    pub fn new(arm: usize, a: usize, l: usize) -> Self {
        Self { arm, a, l }
    }

    pub fn validate<T: Scalar>(&self, alg: &CanonicalAlgebra<T>) -> Result<()> {
        if self.arm == 0 || self.arm > alg.num_arms() {
            return Err(Error::InvalidSpec(format!(
                "arm {} out of range 1..={}",
                self.arm,
                alg.num_arms()
            )));
        }
        let p = alg.weight(self.arm);
        if self.a == 0 || self.a > p {
            return Err(Error::InvalidSpec(format!(
                "position {} out of range 1..={p}",
                self.a
            )));
        }
        if self.l == 0 || self.l >= p {
            return Err(Error::InvalidSpec(format!(
                "quasi-length {} must lie in 1..{p}; longer modules are not exceptional",
                self.l
            )));
        }
        Ok(())
    }

    pub fn case(&self, p: usize) -> RegularCase {
        if self.a == p {
            RegularCase::Top { s: self.l }
        } else if self.l <= p - self.a {
            RegularCase::Window
        } else {
            RegularCase::Wrapped {
                s: self.l - (p - self.a),
            }
        }
    }

    /// Whether step·x_arm (0 <= step <= p) carries k; off-arm vertices
    /// follow the vertex 0 and c.
    pub fn supports(&self, p: usize, step: usize) -> bool {
        match self.case(p) {
            RegularCase::Window => step >= self.a && step < self.a + self.l,
            RegularCase::Wrapped { s } => step < s || step >= self.a,
            RegularCase::Top { s } => step < s || step == p,
        }
    }

    /// τS_a^[l] = S_{a-1}^[l], positions taken in 1..=p.
    pub fn tau(&self, p: usize) -> Self {
        Self {
            a: if self.a == 1 { p } else { self.a - 1 },
            ..*self
        }
    }

    /// τ⁻¹S_a^[l] = S_{a+1}^[l].
    pub fn tau_inverse(&self, p: usize) -> Self {
        Self {
            a: self.a % p + 1,
            ..*self
        }
    }
}

/// Every exceptional S_a^[l] of the algebra, arm by arm.
pub fn all_regular_specs<T: Scalar>(alg: &CanonicalAlgebra<T>) -> Vec<RegularSpec> {
    let mut out = Vec::new();
    for arm in 1..=alg.num_arms() {
        let p = alg.weight(arm);
        for a in 1..=p {
            for l in 1..p {
                out.push(RegularSpec { arm, a, l });
            }
        }
    }
    out
}

/// First-arrow coefficients u_m (m != i) for S_a^[l] with a gap on arm i,
/// solved from the relations: arm_m = arm_1 + λ_m·arm_2 with arm_i = 0.
/// Unknowns are ordered [u_m (m >= 3), u_1, u_2] so that the remaining free
/// coefficient is set to 1.
pub fn regular_first_arrow_coefficients<T: Scalar>(
    alg: &CanonicalAlgebra<T>,
    arm: usize,
) -> Result<Vec<(usize, T)>> {
    let t = alg.num_arms();
    let mut order: Vec<usize> = (3..=t).filter(|&m| m != arm).collect();
    order.extend([1, 2].into_iter().filter(|&m| m != arm));
    let col = |m: usize| order.iter().position(|&x| x == m);
    let mut rows = Vec::new();
    for m in 3..=t {
        // u_m - u_1 - λ_m u_2 = 0, with arm i's term absent
        let mut row = vec![T::zero(); order.len()];
        if let Some(c) = col(m) {
            row[c] = row[c].clone() + T::one();
        }
        if let Some(c) = col(1) {
            row[c] = row[c].clone() - T::one();
        }
        if let Some(c) = col(2) {
            row[c] = row[c].clone() - alg.lambda(m).clone();
        }
        rows.push(row);
    }
    let sol = if rows.is_empty() {
        vec![T::one(); order.len()]
    } else {
        let a = Matrix::from_rows(rows, order.len())?;
        a.solve(&vec![T::zero(); a.rows()])?
            .ok_or_else(|| Error::Certification("homogeneous system is inconsistent".into()))?
    };
    if sol.iter().any(|x| x.is_zero()) {
        return Err(Error::Certification(format!(
            "first-arrow coefficient vanishes for arm {arm}"
        )));
    }
    let mut out: Vec<(usize, T)> = order.into_iter().zip(sol).collect();
    out.sort_by_key(|(m, _)| *m);
    Ok(out)
}

/// The regular exceptional module S_a^[l].
pub fn regular_exceptional<T: Scalar>(
    alg: &Arc<CanonicalAlgebra<T>>,
    spec: RegularSpec,
) -> Result<Rep<T>> {
    spec.validate(alg)?;
    let i = spec.arm;
    let p = alg.weight(i);
    let case = spec.case(p);
    let arm_dim = |arm: usize, step: usize| -> usize {
        if arm == i {
            usize::from(spec.supports(p, step))
        } else {
            // off-arm vertices behave like 0 and c
            usize::from(!matches!(case, RegularCase::Window))
        }
    };
    let dims: Vec<usize> = alg
        .vertices()
        .iter()
        .map(|&v| match v {
            Vertex::Zero => arm_dim(i, 0),
            Vertex::Top => arm_dim(i, p),
            Vertex::Arm { arm, step } => arm_dim(arm, step),
        })
        .collect();

    let first = if matches!(case, RegularCase::Window) {
        Vec::new()
    } else {
        regular_first_arrow_coefficients(alg, i)?
    };
    let mats = alg
        .arrows()
        .iter()
        .map(|&a| {
            let rows = dims[alg.vertex_index(alg.source(a))];
            let cols = dims[alg.vertex_index(alg.target(a))];
            if rows == 0 || cols == 0 {
                return Matrix::zeros(rows, cols);
            }
            let coeff = if a.step == 1 && a.arm != i {
                first
                    .iter()
                    .find(|(m, _)| *m == a.arm)
                    .map(|(_, c)| c.clone())
                    .expect("coefficient for every other arm")
            } else {
                T::one()
            };
            Matrix::scalar(1, coeff)
        })
        .collect();
    let m = Rep::new(alg.clone(), dims, mats)?;
    m.ensure_relations()?;
    if !is_exceptional(&m)? {
        return Err(Error::Certification(format!(
            "S_{}^[{}] on arm {} is not exceptional",
            spec.a, spec.l, spec.arm
        )));
    }
    Ok(m)
}

/// The rank-one module with dims n+1 on 0 and s·x_i (s <= r_i), n elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOneSpec {
    pub r: Vec<usize>,
    pub n: usize,
}

impl RankOneSpec {
    pub fn new(r: Vec<usize>, n: usize) -> Self {
        Self { r, n }
    }

    pub fn validate<T: Scalar>(&self, alg: &CanonicalAlgebra<T>) -> Result<()> {
        if self.r.len() != alg.num_arms() {
            return Err(Error::InvalidSpec(format!(
                "{} entries in r for {} arms",
                self.r.len(),
                alg.num_arms()
            )));
        }
        for (i, &ri) in self.r.iter().enumerate() {
            if ri >= alg.weight(i + 1) {
                return Err(Error::InvalidSpec(format!(
                    "r_{} = {ri} must be below p_{} = {}",
                    i + 1,
                    i + 1,
                    alg.weight(i + 1)
                )));
            }
        }
        Ok(())
    }

    pub fn dims<T: Scalar>(&self, alg: &CanonicalAlgebra<T>) -> Vec<usize> {
        alg.vertices()
            .iter()
            .map(|&v| match v {
                Vertex::Zero => self.n + 1,
                Vertex::Top => self.n,
                Vertex::Arm { arm, step } => {
                    if step <= self.r[arm - 1] {
                        self.n + 1
                    } else {
                        self.n
                    }
                }
            })
            .collect()
    }
}

/// Every r with 0 <= r_i < p_i.
pub fn all_rank_one_offsets<T: Scalar>(alg: &CanonicalAlgebra<T>) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for arm in 1..=alg.num_arms() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..alg.weight(arm)).map(move |ri| {
                    let mut v = prefix.clone();
                    v.push(ri);
                    v
                })
            })
            .collect();
    }
    out
}

/// (rows)×n bidiagonal block: 1 on the diagonal, λ just below it.
fn bidiagonal<T: Scalar>(rows: usize, cols: usize, lambda: &T) -> Matrix<T> {
    let mut m = Matrix::zeros(rows, cols);
    for k in 0..cols.min(rows) {
        m.set(k, k, T::one());
    }
    for k in 0..cols {
        if k + 1 < rows {
            m.set(k + 1, k, lambda.clone());
        }
    }
    m
}

/// The exceptional rank-one module for (r, n).
pub fn rank_one<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>, spec: &RankOneSpec) -> Result<Rep<T>> {
    spec.validate(alg)?;
    let n = spec.n;
    let dims = spec.dims(alg);
    let mats = alg
        .arrows()
        .iter()
        .map(|&Arrow { arm, step }| {
            let ri = spec.r[arm - 1];
            let transition = step == ri + 1;
            match arm {
                1 if transition => matrix_x(n, 1),
                2 if transition => matrix_y(n, 1),
                1 | 2 => Matrix::identity(if step <= ri { n + 1 } else { n }),
                _ => {
                    let lambda = alg.lambda(arm);
                    if step == 1 && ri == 0 {
                        bidiagonal(n + 1, n, lambda)
                    } else if step == 1 {
                        bidiagonal(n + 1, n + 1, lambda)
                    } else if transition {
                        matrix_x(n, 1)
                    } else {
                        Matrix::identity(if step <= ri { n + 1 } else { n })
                    }
                }
            }
        })
        .collect();
    let m = Rep::new(alg.clone(), dims, mats)?;
    m.ensure_relations()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homext::{ext_dim, hom_ext};
    use crate::scalar::ratio_i64;
    use crate::weight::WeightSequence;
    use crate::Rational;

    fn alg(p: &[i64], l: &[i64]) -> Arc<CanonicalAlgebra<Rational>> {
        Arc::new(
            CanonicalAlgebra::new(
                WeightSequence::new(p.to_vec()).unwrap(),
                l.iter().map(|&x| ratio_i64(x, 1)).collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn elementary_matrices() {
        assert!(matrix_x::<Rational>(2, 0).is_identity());
        assert_eq!(matrix_x::<Rational>(0, 3).shape(), (3, 0));
        assert_eq!(matrix_y::<Rational>(1, 1), Matrix::from_i64(&[&[0], &[1]]));
        assert_eq!(matrix_x::<Rational>(1, 1), Matrix::from_i64(&[&[1], &[0]]));
    }

    #[test]
    fn cases() {
        let s = |a, l| RegularSpec::new(3, a, l).case(7);
        assert_eq!(s(1, 1), RegularCase::Window);
        assert_eq!(s(2, 5), RegularCase::Window);
        assert_eq!(s(2, 6), RegularCase::Wrapped { s: 1 });
        assert_eq!(s(7, 3), RegularCase::Top { s: 3 });
    }

    #[test]
    fn simple_regular_is_simple_module() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let m = regular_exceptional(&a, RegularSpec::new(3, 1, 1)).unwrap();
        assert_eq!(m, Rep::simple(a.clone(), Vertex::Arm { arm: 3, step: 1 }));
    }

    #[test]
    fn wrapped_case_coefficients() {
        let a = alg(&[2, 3, 7, 5], &[0, 1, 4]);
        let m = regular_exceptional(&a, RegularSpec::new(3, 2, 6)).unwrap();
        // s = 1: arm 3 vanishes exactly at x_3
        assert_eq!(m.dim(Vertex::Arm { arm: 3, step: 1 }), 0);
        let c = |arm| m.mat(Arrow { arm, step: 1 }).get(0, 0).clone();
        assert_eq!(c(1), ratio_i64(-1, 1));
        assert_eq!(c(2), ratio_i64(1, 1));
        assert_eq!(c(4), ratio_i64(3, 1));
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn top_case_zero_arrows() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let m = regular_exceptional(&a, RegularSpec::new(3, 7, 3)).unwrap();
        assert!(m.mat(Arrow { arm: 3, step: 3 }).shape().1 == 0);
        assert!(m.mat(Arrow { arm: 3, step: 7 }).shape().0 == 0);
        assert!(m.mat(Arrow { arm: 3, step: 2 }).is_identity());
    }

    #[test]
    fn solver_matches_explicit_coefficients() {
        let a = alg(&[2, 3, 4, 5, 3], &[0, 1, 3, -2]);
        for i in 3..=5 {
            let sol = regular_first_arrow_coefficients(&a, i).unwrap();
            let li = a.lambda(i).clone();
            for (m, u) in sol {
                let want = match m {
                    1 => -li.clone(),
                    2 => ratio_i64(1, 1),
                    _ => a.lambda(m).clone() - li.clone(),
                };
                assert_eq!(u, want, "arm {i}, coefficient {m}");
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        assert!(regular_exceptional(&a, RegularSpec::new(3, 1, 7)).is_err());
        assert!(regular_exceptional(&a, RegularSpec::new(4, 1, 1)).is_err());
        assert!(rank_one(&a, &RankOneSpec::new(vec![2, 0, 0], 0)).is_err());
        assert!(rank_one(&a, &RankOneSpec::new(vec![0, 0], 0)).is_err());
    }

    #[test]
    fn rank_one_examples() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let m = rank_one(&a, &RankOneSpec::new(vec![0, 0, 0], 0)).unwrap();
        assert_eq!(m, Rep::simple(a.clone(), Vertex::Zero));
        let line = rank_one(&a, &RankOneSpec::new(vec![1, 2, 3], 0)).unwrap();
        assert_eq!(line.rank(), 1);
        assert!(line
            .mats()
            .iter()
            .all(|x| x.is_identity() || x.shape().1 == 0));
        let b = rank_one(&a, &RankOneSpec::new(vec![1, 1, 1], 1)).unwrap();
        let first = b.mat(Arrow { arm: 3, step: 1 });
        assert_eq!(first, &Matrix::from_i64(&[&[1, 0], &[1, 1]]));
        assert!(is_exceptional(&b).unwrap());
    }

    #[test]
    fn tube_extensions() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        for arm in 1..=3 {
            let p = a.weight(arm);
            for x in 1..=p {
                let sx = RegularSpec::new(arm, x, 1);
                let mx = regular_exceptional(&a, sx).unwrap();
                for y in 1..=p {
                    let my = regular_exceptional(&a, RegularSpec::new(arm, y, 1)).unwrap();
                    let want = usize::from(y == sx.tau(p).a);
                    assert_eq!(ext_dim(&mx, &my).unwrap(), want, "arm {arm}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn projective_top_is_rank_one() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let p = rank_one(&a, &RankOneSpec::new(vec![0, 0, 0], 1)).unwrap();
        for v in a.vertices().to_vec() {
            let s = Rep::simple(a.clone(), v);
            let want = usize::from(v == Vertex::Top);
            assert_eq!(hom_ext(&p, &s).unwrap(), (want, 0));
        }
    }
}
