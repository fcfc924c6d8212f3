//! Hom and Ext¹ through the linear map δ: C⁰(X,Y) → C¹(X,Y).
//!
//! C⁰ = ⊕_v Hom(X_v, Y_v) and C¹ = ⊕_{α: i→j} Hom(X_j, Y_i), each block
//! flattened row-major and concatenated in vertex/arrow order. Hom(X,Y) is
//! ker δ and Ext¹(X,Y) is U(X,Y)/im δ, where U(X,Y) ⊆ C¹ is cut out by the
//! linearised canonical relations.

use crate::algebra::{Arrow, CanonicalAlgebra, Vertex};
use crate::error::{Error, Result};
use crate::linalg::{dense_to_sparse, IncrementalEchelon, Matrix, SparseMatrix};
use crate::representation::Rep;
use crate::scalar::Scalar;

type ArmTerm<T> = (Arrow, Matrix<T>, Matrix<T>);

/// One coordinate block of C⁰ or C¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Block {
    fn at(&self, r: usize, c: usize) -> usize {
        self.offset + r * self.cols + c
    }

    fn len(&self) -> usize {
        self.rows * self.cols
    }
}

#[derive(Debug, Clone)]
pub struct ExtModel<T> {
    x: Rep<T>,
    y: Rep<T>,
    c0: Vec<Block>,
    c1: Vec<Block>,
    c0_dim: usize,
    c1_dim: usize,
    delta: SparseMatrix<T>,
    u_constraint: SparseMatrix<T>,
}

impl<T: Scalar> ExtModel<T> {
    pub fn new(x: &Rep<T>, y: &Rep<T>) -> Result<Self> {
        if !x.same_algebra(y) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = x.algebra().clone();
        let mut c0 = Vec::new();
        let mut off = 0;
        for v in 0..alg.num_vertices() {
            let b = Block {
                offset: off,
                rows: y.dims()[v],
                cols: x.dims()[v],
            };
            off += b.len();
            c0.push(b);
        }
        let c0_dim = off;
        let mut c1 = Vec::new();
        off = 0;
        for &a in alg.arrows() {
            let b = Block {
                offset: off,
                rows: y.dim(alg.source(a)),
                cols: x.dim(alg.target(a)),
            };
            off += b.len();
            c1.push(b);
        }
        let c1_dim = off;

        let mut model = Self {
            x: x.clone(),
            y: y.clone(),
            c0,
            c1,
            c0_dim,
            c1_dim,
            delta: SparseMatrix::new(c0_dim),
            u_constraint: SparseMatrix::new(c1_dim),
        };
        model.delta = model.build_delta(&alg);
        model.u_constraint = model.build_u_constraint(&alg);
        Ok(model)
    }

    fn build_delta(&self, alg: &CanonicalAlgebra<T>) -> SparseMatrix<T> {
        let mut delta = SparseMatrix::new(self.c0_dim);
        for &a in alg.arrows() {
            let src = self.c0[alg.vertex_index(alg.source(a))];
            let tgt = self.c0[alg.vertex_index(alg.target(a))];
            let xa = self.x.mat(a);
            let ya = self.y.mat(a);
            let blk = self.c1[alg.arrow_index(a)];
            for r in 0..blk.rows {
                for c in 0..blk.cols {
                    // (f_src X_α - Y_α f_tgt)[r, c]
                    let mut entries = Vec::new();
                    for k in 0..src.cols {
                        let v = xa.get(k, c);
                        if !v.is_zero() {
                            entries.push((src.at(r, k), v.clone()));
                        }
                    }
                    for k in 0..tgt.rows {
                        let v = ya.get(r, k);
                        if !v.is_zero() {
                            entries.push((tgt.at(k, c), -v.clone()));
                        }
                    }
                    delta.push_entries(entries);
                }
            }
        }
        delta
    }

    /// Rows of P_m(f) - P_1(f) - λ_m P_2(f) = 0 for m = 3..t, where
    /// P_i(f) = Σ_j Y_{ω_{1,j-1}} f_{α_j} X_{ω_{j+1,p_i}}.
    fn build_u_constraint(&self, alg: &CanonicalAlgebra<T>) -> SparseMatrix<T> {
        let mut out = SparseMatrix::new(self.c1_dim);
        let t = alg.num_arms();
        if t < 3 {
            return out;
        }
        let rows = self.y.dim(Vertex::Zero);
        let cols = self.x.dim(Vertex::Top);
        let arm_terms: Vec<Vec<ArmTerm<T>>> = (1..=t).map(|i| self.arm_terms(alg, i)).collect();
        for m in 3..=t {
            let lambda = alg.lambda(m).clone();
            let weighted = [(m, T::one()), (1, -T::one()), (2, -lambda)];
            for r in 0..rows {
                for c in 0..cols {
                    let mut entries = Vec::new();
                    for (arm, w) in &weighted {
                        if w.is_zero() {
                            continue;
                        }
                        for (a, left, right) in &arm_terms[arm - 1] {
                            let blk = self.c1[alg.arrow_index(*a)];
                            for k in 0..blk.rows {
                                let l_rk = left.get(r, k);
                                if l_rk.is_zero() {
                                    continue;
                                }
                                for l in 0..blk.cols {
                                    let r_lc = right.get(l, c);
                                    if !r_lc.is_zero() {
                                        entries.push((
                                            blk.at(k, l),
                                            w.clone() * l_rk.clone() * r_lc.clone(),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                    out.push_entries(entries);
                }
            }
        }
        out
    }

    /// (α_j, Y_{ω_{1,j-1}}, X_{ω_{j+1,p}}) for j = 1..p on one arm.
    fn arm_terms(&self, alg: &CanonicalAlgebra<T>, arm: usize) -> Vec<ArmTerm<T>> {
        let p = alg.weight(arm);
        let y_prefix = {
            let mut v = vec![Matrix::identity(self.y.dim(Vertex::Zero))];
            v.extend(self.y.path_matrices_from(arm, 1));
            v
        };
        // x_suffix[j] = X_{ω_{j+1,p}}, with x_suffix[p] = I
        let mut x_suffix = vec![Matrix::identity(self.x.dim(Vertex::Top)); p + 1];
        for j in (1..p).rev() {
            let a = Arrow { arm, step: j + 1 };
            x_suffix[j] = self
                .x
                .mat(a)
                .matmul(&x_suffix[j + 1])
                .expect("validated shapes");
        }
        (1..=p)
            .map(|j| {
                (
                    Arrow { arm, step: j },
                    y_prefix[j - 1].clone(),
                    x_suffix[j].clone(),
                )
            })
            .collect()
    }

    pub fn x(&self) -> &Rep<T> {
        &self.x
    }

    pub fn y(&self) -> &Rep<T> {
        &self.y
    }

    pub fn c0_dim(&self) -> usize {
        self.c0_dim
    }

    pub fn c1_dim(&self) -> usize {
        self.c1_dim
    }

    pub fn c0_blocks(&self) -> &[Block] {
        &self.c0
    }

    pub fn c1_blocks(&self) -> &[Block] {
        &self.c1
    }

    /// δ as a matrix with C¹ rows and C⁰ columns.
    pub fn delta(&self) -> &SparseMatrix<T> {
        &self.delta
    }

    /// Matrix whose kernel in C¹ is U(X,Y).
    pub fn u_constraint(&self) -> &SparseMatrix<T> {
        &self.u_constraint
    }

    pub fn delta_rank(&self) -> usize {
        self.delta.rank()
    }

    pub fn hom_dim(&self) -> usize {
        self.c0_dim - self.delta_rank()
    }

    pub fn u_dim(&self) -> usize {
        self.c1_dim - self.u_constraint.rank()
    }

    pub fn ext_dim(&self) -> usize {
        self.u_dim() - self.delta_rank()
    }

    pub fn hom_basis(&self) -> Vec<Vec<T>> {
        self.delta.nullspace_basis()
    }

    /// Echelon basis of U(X,Y).
    pub fn u_basis(&self) -> Vec<Vec<T>> {
        self.u_constraint.nullspace_basis()
    }

    /// The image of δ, one vector per C⁰ coordinate.
    pub fn delta_image_generators(&self) -> Vec<Vec<T>> {
        let mut cols = vec![vec![T::zero(); self.c1_dim]; self.c0_dim];
        for (i, row) in self.delta.sparse_rows().iter().enumerate() {
            for (j, v) in row {
                cols[*j][i] = v.clone();
            }
        }
        cols
    }

    /// True iff the vector satisfies the U(X,Y) equations.
    pub fn in_u(&self, f: &[T]) -> bool {
        f.len() == self.c1_dim && self.u_constraint.mul_vec(f).iter().all(|x| x.is_zero())
    }

    /// Echelon basis of im δ seeded for rank augmentation.
    pub fn image_echelon(&self) -> IncrementalEchelon<T> {
        let mut ech = IncrementalEchelon::new(self.c1_dim);
        for v in self.delta_image_generators() {
            ech.insert_sparse(dense_to_sparse(&v));
        }
        ech
    }

    /// Members of `candidates` whose classes extend im δ greedily; with the
    /// U basis as candidates this is a basis of Ext¹ representatives.
    pub fn ext_representatives_from(&self, candidates: &[Vec<T>]) -> Vec<usize> {
        let mut ech = self.image_echelon();
        candidates
            .iter()
            .enumerate()
            .filter(|(_, v)| ech.insert(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Cocycles representing a basis of Ext¹(X,Y).
    pub fn ext_cocycles(&self) -> Vec<Vec<T>> {
        let u = self.u_basis();
        self.ext_representatives_from(&u)
            .into_iter()
            .map(|i| u[i].clone())
            .collect()
    }

    /// The block f_α of a C¹ vector.
    pub fn c1_block(&self, f: &[T], a: Arrow) -> Matrix<T> {
        let alg = self.x.algebra();
        let b = self.c1[alg.arrow_index(a)];
        Matrix::new(b.rows, b.cols, f[b.offset..b.offset + b.len()].to_vec()).expect("block length")
    }

    /// The block f_v of a C⁰ vector.
    pub fn c0_block(&self, f: &[T], v: Vertex) -> Matrix<T> {
        let alg = self.x.algebra();
        let b = self.c0[alg.vertex_index(v)];
        Matrix::new(b.rows, b.cols, f[b.offset..b.offset + b.len()].to_vec()).expect("block length")
    }

    /// Assembles a C¹ vector from per-arrow blocks.
    pub fn c1_vector(&self, blocks: &[Matrix<T>]) -> Result<Vec<T>> {
        if blocks.len() != self.c1.len() {
            return Err(Error::Dimension(format!(
                "{} blocks for {} arrows",
                blocks.len(),
                self.c1.len()
            )));
        }
        let mut out = Vec::with_capacity(self.c1_dim);
        for (b, m) in self.c1.iter().zip(blocks) {
            if m.shape() != (b.rows, b.cols) {
                return Err(Error::Dimension(format!(
                    "block of shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    b.rows,
                    b.cols
                )));
            }
            out.extend(m.as_slice().iter().cloned());
        }
        Ok(out)
    }

    /// The extension with arrow matrices [[Y_α, φ_α], [0, X_α]].
    pub fn middle_term(&self, cocycle: &[T]) -> Result<Rep<T>> {
        if cocycle.len() != self.c1_dim {
            return Err(Error::Dimension(format!(
                "cocycle of length {} in C¹ of dimension {}",
                cocycle.len(),
                self.c1_dim
            )));
        }
        if !self.in_u(cocycle) {
            return Err(Error::RelationsViolated(
                "cocycle does not lie in U(X,Y)".into(),
            ));
        }
        let alg = self.x.algebra();
        let dims: Vec<usize> = self
            .y
            .dims()
            .iter()
            .zip(self.x.dims())
            .map(|(a, b)| a + b)
            .collect();
        let mats = alg
            .arrows()
            .iter()
            .map(|&a| {
                let ya = self.y.mat(a);
                let xa = self.x.mat(a);
                let phi = self.c1_block(cocycle, a);
                Matrix::block2(ya, &phi, &Matrix::zeros(xa.rows(), ya.cols()), xa)
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::new_checked(alg.clone(), dims, mats)
    }
}

pub fn hom_dim<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<usize> {
    Ok(ExtModel::new(x, y)?.hom_dim())
}

pub fn ext_dim<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<usize> {
    Ok(ExtModel::new(x, y)?.ext_dim())
}

/// (dim Hom, dim Ext¹) from one model.
pub fn hom_ext<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<(usize, usize)> {
    let m = ExtModel::new(x, y)?;
    let r = m.delta_rank();
    Ok((m.c0_dim() - r, m.u_dim() - r))
}

/// dim Ext¹(X ⊗ k^u, Y ⊗ k^v) = u·v·dim Ext¹(X, Y).
pub fn ext_tensor_dim<T: Scalar>(x: &Rep<T>, y: &Rep<T>, u: usize, v: usize) -> Result<usize> {
    if u == 0 || v == 0 {
        return Ok(0);
    }
    Ok(u * v * ext_dim(x, y)?)
}

/// End = k and Ext¹(M, M) = 0.
pub fn is_exceptional<T: Scalar>(m: &Rep<T>) -> Result<bool> {
    m.ensure_relations()?;
    let model = ExtModel::new(m, m)?;
    let r = model.delta_rank();
    Ok(model.c0_dim() - r == 1 && model.u_dim() == r)
}

/// Sub-checks of orthogonality for an ordered pair (X, Y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairReport {
    pub x_exceptional: bool,
    pub y_exceptional: bool,
    pub hom_yx: usize,
    pub ext_yx: usize,
    pub hom_xy: usize,
    /// dim Ext¹(X, Y).
    pub n: usize,
}

impl PairReport {
    pub fn is_orthogonal(&self) -> bool {
        self.failing_axes().is_empty()
    }

    pub fn failing_axes(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.x_exceptional {
            out.push("X not exceptional");
        }
        if !self.y_exceptional {
            out.push("Y not exceptional");
        }
        if self.hom_yx != 0 {
            out.push("Hom(Y,X) != 0");
        }
        if self.ext_yx != 0 {
            out.push("Ext(Y,X) != 0");
        }
        if self.hom_xy != 0 {
            out.push("Hom(X,Y) != 0");
        }
        out
    }
}

pub fn orthogonal_pair_report<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<PairReport> {
    let (hom_yx, ext_yx) = hom_ext(y, x)?;
    let (hom_xy, n) = hom_ext(x, y)?;
    Ok(PairReport {
        x_exceptional: is_exceptional(x)?,
        y_exceptional: is_exceptional(y)?,
        hom_yx,
        ext_yx,
        hom_xy,
        n,
    })
}

pub fn is_orthogonal_exceptional_pair<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<bool> {
    Ok(orthogonal_pair_report(x, y)?.is_orthogonal())
}

pub fn extension_middle_term<T: Scalar>(x: &Rep<T>, y: &Rep<T>, cocycle: &[T]) -> Result<Rep<T>> {
    ExtModel::new(x, y)?.middle_term(cocycle)
}

/// ⟨x, y⟩ = Σ_v x_v y_v - Σ_{α: i→j} x_j y_i + (t-2)·x_c·y_0.
pub fn euler_form<T: Scalar>(dx: &[usize], dy: &[usize], alg: &CanonicalAlgebra<T>) -> Result<i64> {
    let n = alg.num_vertices();
    for d in [dx, dy] {
        if d.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: d.len(),
            });
        }
    }
    let v = |d: &[usize], w: Vertex| d[alg.vertex_index(w)] as i64;
    let mut sum: i64 = dx.iter().zip(dy).map(|(&a, &b)| (a * b) as i64).sum();
    for &a in alg.arrows() {
        sum -= v(dx, alg.target(a)) * v(dy, alg.source(a));
    }
    sum += (alg.num_arms() as i64 - 2) * v(dx, Vertex::Top) * v(dy, Vertex::Zero);
    Ok(sum)
}

/// Dimension vector of the indecomposable projective at `v`: the paths
/// ending at `v` modulo the relations.
pub fn projective_dims<T: Scalar>(alg: &CanonicalAlgebra<T>, v: Vertex) -> Vec<usize> {
    let mut d = vec![0; alg.num_vertices()];
    match v {
        Vertex::Zero => d[0] = 1,
        Vertex::Arm { arm, step } => {
            for s in 0..=step {
                d[alg.vertex_index(alg.arm_vertex(arm, s))] = 1;
            }
        }
        Vertex::Top => {
            d.iter_mut().for_each(|x| *x = 1);
            d[0] = 2;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio_i64;
    use crate::weight::WeightSequence;
    use crate::Rational;
    use std::sync::Arc;

    fn alg(p: &[i64]) -> Arc<CanonicalAlgebra<Rational>> {
        let lambdas = (0..p.len() as i64 - 1).map(|i| ratio_i64(i, 1)).collect();
        Arc::new(CanonicalAlgebra::new(WeightSequence::new(p.to_vec()).unwrap(), lambdas).unwrap())
    }

    #[test]
    fn simple_at_top() {
        let a = alg(&[2, 3, 7]);
        let s = Rep::simple(a.clone(), Vertex::Top);
        let m = ExtModel::new(&s, &s).unwrap();
        assert_eq!(m.c1_dim(), 0);
        assert_eq!(m.c0_dim(), 1);
        assert_eq!((m.hom_dim(), m.ext_dim()), (1, 0));
        let s0 = Rep::simple(a, Vertex::Zero);
        assert_eq!(hom_dim(&s, &s0).unwrap(), 0);
        assert!(is_exceptional(&s).unwrap());
    }

    #[test]
    fn simples_along_an_arrow() {
        let a = alg(&[2, 3, 7]);
        let s1 = Rep::simple(a.clone(), Vertex::Arm { arm: 3, step: 1 });
        let s2 = Rep::simple(a.clone(), Vertex::Arm { arm: 3, step: 2 });
        // α_2^(3): x_3 → 2x_3 glues S(2x_3) below S(x_3)
        assert_eq!(hom_ext(&s2, &s1).unwrap(), (0, 1));
        assert_eq!(hom_ext(&s1, &s2).unwrap(), (0, 0));
        let m = ExtModel::new(&s2, &s1).unwrap();
        let cocycles = m.ext_cocycles();
        assert_eq!(cocycles.len(), 1);
        let e = m.middle_term(&cocycles[0]).unwrap();
        assert!(is_exceptional(&e).unwrap());
        assert_eq!(e.total_dim(), 2);
    }

    #[test]
    fn euler_form_matches_projectives() {
        let a = alg(&[2, 3, 7]);
        let y: Vec<usize> = (0..a.num_vertices()).map(|i| (i * 7 + 3) % 5).collect();
        for &v in a.vertices() {
            let p = projective_dims(&a, v);
            assert_eq!(
                euler_form(&p, &y, &a).unwrap(),
                y[a.vertex_index(v)] as i64,
                "{v}"
            );
        }
        assert_eq!(euler_form(&[0; 11], &y, &a).unwrap(), 0);
        assert!(euler_form(&[1], &y, &a).is_err());
    }

    #[test]
    fn middle_term_rejects_non_cocycles() {
        let a = alg(&[2, 2, 2]);
        let p_top = {
            let dims = projective_dims(&a, Vertex::Top);
            let mats = a
                .arrows()
                .iter()
                .map(|ar| {
                    if ar.step == 1 {
                        match ar.arm {
                            1 => Matrix::from_i64(&[&[1], &[0]]),
                            2 => Matrix::from_i64(&[&[0], &[1]]),
                            _ => Matrix::from_i64(&[&[1], &[1]]),
                        }
                    } else {
                        Matrix::identity(1)
                    }
                })
                .collect();
            Rep::new_checked(a.clone(), dims, mats).unwrap()
        };
        let s0 = Rep::simple(a.clone(), Vertex::Zero);
        let model = ExtModel::new(&Rep::simple(a.clone(), Vertex::Top), &p_top).unwrap();
        assert!(model.u_dim() < model.c1_dim());
        let outside = (0..model.c1_dim())
            .map(|i| crate::linalg::unit_vector::<Rational>(model.c1_dim(), i))
            .find(|v| !model.in_u(v))
            .unwrap();
        assert!(model.middle_term(&outside).is_err());
        let zero = vec![Rational::from_i64(0); model.c1_dim()];
        let split = model.middle_term(&zero).unwrap();
        assert_eq!(
            split,
            p_top
                .direct_sum(&Rep::simple(a.clone(), Vertex::Top))
                .unwrap()
        );
        assert_eq!(hom_ext(&p_top, &s0).unwrap(), (0, 0));
        assert_eq!(hom_ext(&s0, &p_top).unwrap().0, 2);
    }
}
