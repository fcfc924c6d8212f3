//! Λ-modules as matrix representations of the canonical quiver.
//!
//! The matrix of an arrow α: i → j maps M_j to M_i, so it has shape
//! dim M_i × dim M_j, and the path ω_{u,v} = α_v⋯α_u is represented by the
//! product M_{α_u}⋯M_{α_v}.

use std::sync::Arc;

use crate::algebra::{ArmPath, Arrow, CanonicalAlgebra, CoefficientSet, Vertex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, Scalar};

#[derive(Debug, Clone)]
pub struct Rep<T> {
    algebra: Arc<CanonicalAlgebra<T>>,
    dims: Vec<usize>,
    mats: Vec<Matrix<T>>,
}

impl<T: Scalar> PartialEq for Rep<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims == other.dims && self.mats == other.mats
    }
}

impl<T: Scalar> Eq for Rep<T> {}

/// A relation that does not hold, with residual arm_i - arm_1 - λ_i·arm_2.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationFailure<T> {
    pub arm: usize,
    pub residual: Matrix<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport<T> {
    pub failures: Vec<RelationFailure<T>>,
}

impl<T> RelationReport<T> {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// An entry of an arrow or path matrix, for audit reports.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryLocation<T> {
    pub location: String,
    pub row: usize,
    pub col: usize,
    pub value: T,
}

impl<T: Scalar> std::fmt::Display for EntryLocation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}[{},{}] = {}",
            self.location,
            self.row,
            self.col,
            format_scalar(&self.value)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientReport<T> {
    pub offending: Vec<EntryLocation<T>>,
}

impl<T> CoefficientReport<T> {
    pub fn is_ok(&self) -> bool {
        self.offending.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<T> {
    pub name: &'static str,
    pub offending: Vec<EntryLocation<T>>,
}

impl<T> ConditionReport<T> {
    pub fn is_ok(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Outcome of the conditions C1..C5.
#[derive(Debug, Clone, PartialEq)]
pub struct AcceptabilityReport<T> {
    pub conditions: Vec<ConditionReport<T>>,
    /// The conditions are stated for positive rank; set when they were
    /// applied to a module of rank <= 0.
    pub outside_positive_rank: bool,
    /// Set when λ_2 != 0 or λ_3 != 1.
    pub non_normalized: bool,
}

impl<T> AcceptabilityReport<T> {
    pub fn is_ok(&self) -> bool {
        self.conditions.iter().all(ConditionReport::is_ok)
    }
}

impl<T: Scalar> Rep<T> {
    /// Validates shapes only; use [`Rep::check_relations`] or
    /// [`Rep::new_checked`] for the relations.
    pub fn new(
        algebra: Arc<CanonicalAlgebra<T>>,
        dims: Vec<usize>,
        mats: Vec<Matrix<T>>,
    ) -> Result<Self> {
        if dims.len() != algebra.num_vertices() {
            return Err(Error::Dimension(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                algebra.num_vertices()
            )));
        }
        if mats.len() != algebra.num_arrows() {
            return Err(Error::Dimension(format!(
                "{} matrices for {} arrows",
                mats.len(),
                algebra.num_arrows()
            )));
        }
        for (&a, m) in algebra.arrows().iter().zip(&mats) {
            let want = (
                dims[algebra.vertex_index(algebra.source(a))],
                dims[algebra.vertex_index(algebra.target(a))],
            );
            if m.shape() != want {
                return Err(Error::Dimension(format!(
                    "{} has shape {}x{}, expected {}x{}",
                    a.label(),
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Self {
            algebra,
            dims,
            mats,
        })
    }

    /// Like [`Rep::new`], rejecting representations that violate a relation.
    pub fn new_checked(
        algebra: Arc<CanonicalAlgebra<T>>,
        dims: Vec<usize>,
        mats: Vec<Matrix<T>>,
    ) -> Result<Self> {
        let m = Self::new(algebra, dims, mats)?;
        m.ensure_relations()?;
        Ok(m)
    }

    pub fn zero(algebra: Arc<CanonicalAlgebra<T>>) -> Self {
        let dims = vec![0; algebra.num_vertices()];
        let mats = vec![Matrix::zeros(0, 0); algebra.num_arrows()];
        Self {
            algebra,
            dims,
            mats,
        }
    }

    /// The simple module at `v`.
    pub fn simple(algebra: Arc<CanonicalAlgebra<T>>, v: Vertex) -> Self {
        let mut dims = vec![0; algebra.num_vertices()];
        dims[algebra.vertex_index(v)] = 1;
        Self::with_zero_maps(algebra, dims)
    }

    /// Given dimensions and all arrow maps zero.
    pub fn with_zero_maps(algebra: Arc<CanonicalAlgebra<T>>, dims: Vec<usize>) -> Self {
        let mats = algebra
            .arrows()
            .iter()
            .map(|&a| {
                Matrix::zeros(
                    dims[algebra.vertex_index(algebra.source(a))],
                    dims[algebra.vertex_index(algebra.target(a))],
                )
            })
            .collect();
        Self {
            algebra,
            dims,
            mats,
        }
    }

    pub fn algebra(&self) -> &Arc<CanonicalAlgebra<T>> {
        &self.algebra
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: Vertex) -> usize {
        self.dims[self.algebra.vertex_index(v)]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mats(&self) -> &[Matrix<T>] {
        &self.mats
    }

    pub fn mat(&self, a: Arrow) -> &Matrix<T> {
        &self.mats[self.algebra.arrow_index(a)]
    }

    pub fn rank(&self) -> i64 {
        self.dim(Vertex::Zero) as i64 - self.dim(Vertex::Top) as i64
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// M_{α_from}⋯M_{α_to}, of shape dim M_{(from-1)x} × dim M_{to·x}.
    pub fn path_matrix(&self, p: ArmPath) -> Matrix<T> {
        let mut arrows = p.arrows();
        let first = arrows.next().expect("paths are nonempty");
        arrows.fold(self.mat(first).clone(), |acc, a| {
            acc.matmul(self.mat(a))
                .expect("shapes validated on construction")
        })
    }

    /// All path matrices ω_{from,v} for v = from..=p_arm, in order.
    pub fn path_matrices_from(&self, arm: usize, from: usize) -> Vec<Matrix<T>> {
        let p = self.algebra.weight(arm);
        let mut out: Vec<Matrix<T>> = Vec::with_capacity(p + 1 - from);
        for step in from..=p {
            let m = self.mat(Arrow { arm, step });
            let next = match out.last() {
                Some(prev) => prev.matmul(m).expect("validated shapes"),
                None => m.clone(),
            };
            out.push(next);
        }
        out
    }

    pub fn check_relations(&self) -> RelationReport<T> {
        let alg = &self.algebra;
        let failures = alg
            .relations()
            .into_iter()
            .filter_map(|r| {
                let lhs = self.path_matrix(r.lhs);
                let rhs = self
                    .path_matrix(r.first)
                    .add(&self.path_matrix(r.second).scale(&r.lambda))
                    .expect("full arm paths share their shape");
                let residual = lhs.sub(&rhs).expect("full arm paths share their shape");
                (!residual.is_zero()).then_some(RelationFailure {
                    arm: r.arm,
                    residual,
                })
            })
            .collect();
        RelationReport { failures }
    }

    pub fn ensure_relations(&self) -> Result<()> {
        let report = self.check_relations();
        match report.failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::RelationsViolated(format!(
                "relation for arm {} has residual {}",
                f.arm, f.residual
            ))),
        }
    }

    /// Blockwise direct sum, `self` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self {
            algebra: self.algebra.clone(),
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| Matrix::direct_sum(a, b))
                .collect(),
        })
    }

    /// M ⊗ k^u: every arrow matrix becomes kron(M_α, I_u).
    pub fn tensor_power(&self, u: usize) -> Self {
        let id = Matrix::identity(u);
        Self {
            algebra: self.algebra.clone(),
            dims: self.dims.iter().map(|d| d * u).collect(),
            mats: self.mats.iter().map(|m| m.kron(&id)).collect(),
        }
    }

    /// Conjugates by one invertible matrix per vertex: α: i → j becomes
    /// g_i · M_α · g_j⁻¹.
    pub fn base_change(&self, g: &[Matrix<T>]) -> Result<Self> {
        if g.len() != self.dims.len() {
            return Err(Error::Dimension(format!(
                "{} base changes for {} vertices",
                g.len(),
                self.dims.len()
            )));
        }
        for (m, &d) in g.iter().zip(&self.dims) {
            if m.shape() != (d, d) {
                return Err(Error::Dimension(format!(
                    "base change of shape {}x{} at a vertex of dimension {d}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let inverses = g.iter().map(Matrix::inverse).collect::<Result<Vec<_>>>()?;
        let alg = &self.algebra;
        let mats = alg
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(&a, m)| {
                let s = alg.vertex_index(alg.source(a));
                let t = alg.vertex_index(alg.target(a));
                g[s].matmul(m)?.matmul(&inverses[t])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            algebra: self.algebra.clone(),
            dims: self.dims.clone(),
            mats,
        })
    }

    /// Entries of arrow matrices outside D(λ).
    pub fn coefficient_audit(&self) -> CoefficientReport<T> {
        let d = self.algebra.coefficient_set();
        let mut offending = Vec::new();
        for (a, m) in self.algebra.arrows().iter().zip(&self.mats) {
            collect_offending(&a.label(), m, |x| d.contains(x), &mut offending);
        }
        CoefficientReport { offending }
    }

    /// Checks C1..C5 independently.
    pub fn acceptability_audit(&self) -> AcceptabilityReport<T> {
        let alg = &self.algebra;
        let d = alg.coefficient_set();
        let in_d = |x: &T| d.contains(x);
        let zero_one = |x: &T| x.is_zero() || x.is_one();
        let t = alg.num_arms();

        let mut c1 = Vec::new();
        let mut c2 = Vec::new();
        for (a, m) in alg.arrows().iter().zip(&self.mats) {
            if a.step == 1 && a.arm != 2 {
                collect_offending(&a.label(), m, in_d, &mut c1);
            } else {
                collect_offending(&a.label(), m, zero_one, &mut c2);
            }
        }

        let mut c3 = Vec::new();
        let mut c4 = Vec::new();
        let mut c5 = Vec::new();
        for arm in 1..=t {
            for from in 1..=alg.weight(arm) {
                for (k, m) in self.path_matrices_from(arm, from).iter().enumerate() {
                    let label = format!("omega_{}_{}_{}", arm, from, from + k);
                    if arm == 2 {
                        collect_offending(&label, m, zero_one, &mut c3);
                    } else if from == 1 {
                        collect_offending(&label, m, in_d, &mut c4);
                    } else {
                        collect_offending(&label, m, zero_one, &mut c5);
                    }
                }
            }
        }

        AcceptabilityReport {
            conditions: vec![
                ConditionReport {
                    name: "C1",
                    offending: c1,
                },
                ConditionReport {
                    name: "C2",
                    offending: c2,
                },
                ConditionReport {
                    name: "C3",
                    offending: c3,
                },
                ConditionReport {
                    name: "C4",
                    offending: c4,
                },
                ConditionReport {
                    name: "C5",
                    offending: c5,
                },
            ],
            outside_positive_rank: self.rank() <= 0,
            non_normalized: !alg.is_normalized(),
        }
    }

    /// The set of distinct entries over all arrow matrices.
    pub fn entry_set(&self) -> Vec<T> {
        let mut out: Vec<T> = Vec::new();
        for m in &self.mats {
            for x in m.as_slice() {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
        }
        out
    }

    /// Replaces one arrow matrix, keeping the shape.
    pub fn with_matrix(&self, a: Arrow, m: Matrix<T>) -> Result<Self> {
        let mut mats = self.mats.clone();
        mats[self.algebra.arrow_index(a)] = m;
        Self::new(self.algebra.clone(), self.dims.clone(), mats)
    }
}

fn collect_offending<T: Scalar>(
    location: &str,
    m: &Matrix<T>,
    ok: impl Fn(&T) -> bool,
    out: &mut Vec<EntryLocation<T>>,
) {
    for (row, col, x) in m.iter() {
        if !ok(x) {
            out.push(EntryLocation {
                location: location.to_string(),
                row,
                col,
                value: x.clone(),
            });
        }
    }
}

/// Checks membership in an explicit coefficient set, for reports on
/// arbitrary vectors.
pub fn entries_within<T: Scalar>(entries: &[T], set: &CoefficientSet<T>) -> bool {
    entries.iter().all(|x| set.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio_i64;
    use crate::weight::WeightSequence;
    use crate::Rational;

    fn alg() -> Arc<CanonicalAlgebra<Rational>> {
        Arc::new(
            CanonicalAlgebra::new(
                WeightSequence::new(vec![2, 3, 7]).unwrap(),
                vec![ratio_i64(0, 1), ratio_i64(1, 1)],
            )
            .unwrap(),
        )
    }

    /// dims 1 everywhere: arm 1 carries 1, arm 2 carries 1, arm 3 carries
    /// the sum 1 + λ_3.
    fn line(alg: &Arc<CanonicalAlgebra<Rational>>) -> Rep<Rational> {
        let dims = vec![1; alg.num_vertices()];
        let mats = alg
            .arrows()
            .iter()
            .map(|a| {
                if a.arm == 3 && a.step == 1 {
                    Matrix::from_i64(&[&[2]])
                } else {
                    Matrix::identity(1)
                }
            })
            .collect();
        Rep::new(alg.clone(), dims, mats).unwrap()
    }

    #[test]
    fn shapes_are_validated() {
        let a = alg();
        let mut mats: Vec<_> = line(&a).mats().to_vec();
        mats[0] = Matrix::zeros(2, 1);
        assert!(matches!(
            Rep::new(a.clone(), vec![1; 11], mats),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn relations_and_perturbation() {
        let a = alg();
        let m = line(&a);
        assert!(m.check_relations().is_ok());
        let bad = m
            .with_matrix(
                crate::algebra::Arrow { arm: 3, step: 4 },
                Matrix::from_i64(&[&[2]]),
            )
            .unwrap();
        let rep = bad.check_relations();
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].arm, 3);
        assert!(Rep::new_checked(a, bad.dims().to_vec(), bad.mats().to_vec()).is_err());
    }

    #[test]
    fn sums_and_powers() {
        let a = alg();
        let m = line(&a);
        let z = Rep::zero(a.clone());
        assert_eq!(m.direct_sum(&z).unwrap(), m);
        let s = m.direct_sum(&Rep::simple(a.clone(), Vertex::Zero)).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.check_relations().is_ok());
        assert_eq!(m.tensor_power(1), m);
        assert!(m.tensor_power(0).is_zero());
        assert_eq!(m.tensor_power(3).dims(), &[3; 11][..]);
        assert!(m.tensor_power(3).check_relations().is_ok());
    }

    #[test]
    fn base_change_scalar_family_is_trivial() {
        let a = alg();
        let m = line(&a).tensor_power(2);
        let g: Vec<_> = m
            .dims()
            .iter()
            .map(|&d| Matrix::scalar(d, ratio_i64(3, 1)))
            .collect();
        assert_eq!(m.base_change(&g).unwrap(), m);
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let mut g2: Vec<_> = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        g2[0] = swap;
        let changed = m.base_change(&g2).unwrap();
        assert!(changed.check_relations().is_ok());
        let singular = vec![Matrix::zeros(2, 2); 11];
        assert!(m.base_change(&singular).is_err());
    }

    #[test]
    fn audits() {
        let a = alg();
        let m = line(&a);
        // 2 = λ_3 + 1 is not a difference of {0, 1}
        let rep = m.coefficient_audit();
        assert_eq!(rep.offending.len(), 1);
        assert_eq!(rep.offending[0].location, "alpha_3_1");
        let acc = m.acceptability_audit();
        assert!(!acc.conditions[0].is_ok());
        assert!(acc.conditions[1].is_ok());
        assert!(acc.outside_positive_rank);

        let four = Arc::new(
            CanonicalAlgebra::<Rational>::new(
                WeightSequence::new(vec![2, 2, 2]).unwrap(),
                vec![ratio_i64(0, 1), ratio_i64(1, 1)],
            )
            .unwrap(),
        );
        let mut bad = Rep::with_zero_maps(four.clone(), vec![1; 5]);
        bad = bad
            .with_matrix(
                crate::algebra::Arrow { arm: 1, step: 2 },
                Matrix::from_i64(&[&[7]]),
            )
            .unwrap();
        let rep = bad.coefficient_audit();
        assert_eq!(rep.offending.len(), 1);
        assert_eq!(rep.offending[0].value, ratio_i64(7, 1));
    }
}
