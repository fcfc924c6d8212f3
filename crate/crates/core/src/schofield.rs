//! Schofield induction: from an orthogonal exceptional pair (X, Y) with
//! n = dim Ext¹(X, Y) and an exceptional Θ(n)-representation of dimension
//! (v, u), assemble the middle term of 0 → Y^v → M → X^u → 0.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{ArmPath, Arrow, CanonicalAlgebra, Vertex};
use crate::error::{Error, Result};
use crate::homext::{is_exceptional, ExtModel};
use crate::kronecker::{exceptional_preinjective, exceptional_preprojective, ThetaRep};
use crate::linalg::{IncrementalEchelon, Matrix};
use crate::representation::{AcceptabilityReport, CoefficientReport, Rep};
use crate::scalar::Scalar;
use crate::small_rank::{
    all_rank_one_offsets, all_regular_specs, rank_one, regular_exceptional, RankOneSpec,
    RegularCase, RegularSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Explicit families for X regular.
    Structured,
    /// Echelon basis from the solver.
    Generic,
}

/// Entry properties (i)-(iii) expected of a basis of U(X,Y) for two
/// positive-rank modules; reported, not enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisPropertyReport {
    /// f_{α_j^(2)} has entries 0/1.
    pub arm_two_zero_one: bool,
    /// f_{α_j^(i)}, j >= 2, i != 2, has entries 0/1.
    pub later_arrows_zero_one: bool,
    /// f_{α_1^(i)}, i != 2, has entries in D(λ).
    pub first_arrows_in_d: bool,
}

impl BasisPropertyReport {
    pub fn all(&self) -> bool {
        self.arm_two_zero_one && self.later_arrows_zero_one && self.first_arrows_in_d
    }
}

/// A family of C¹(X, Y) vectors F^(1), ..., F^(d).
#[derive(Debug, Clone)]
pub struct UBasis<T> {
    pub vectors: Vec<Vec<T>>,
    pub provenance: Provenance,
    pub properties: Option<BasisPropertyReport>,
}

impl<T: Scalar> UBasis<T> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Rank of the span of `vectors` inside k^dim.
pub fn span_rank<T: Scalar>(vectors: &[Vec<T>], dim: usize) -> usize {
    let mut e = IncrementalEchelon::new(dim);
    vectors.iter().filter(|v| e.insert(v)).count()
}

/// True iff the two families span the same subspace.
pub fn same_span<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>], dim: usize) -> bool {
    let ra = span_rank(a, dim);
    let rb = span_rank(b, dim);
    let both: Vec<Vec<T>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&both, dim) == ra
}

/// The explicit basis of U(X, Y) for X = S_a^[l].
pub fn structured_u_basis<T: Scalar>(model: &ExtModel<T>, spec: RegularSpec) -> Result<UBasis<T>> {
    let x = model.x();
    let y = model.y();
    let alg = x.algebra().clone();
    let expected = regular_exceptional(&alg, spec)?;
    if *x != expected {
        return Err(Error::InvalidSpec(format!(
            "X is not S_{}^[{}] of arm {}",
            spec.a, spec.l, spec.arm
        )));
    }
    let i = spec.arm;
    let t = alg.num_arms();
    let blocks = model.c1_blocks();
    let c1 = model.c1_dim();
    let block_of = |a: Arrow| blocks[alg.arrow_index(a)];

    let vectors = match spec.case(alg.weight(i)) {
        RegularCase::Window => (0..c1).map(|k| crate::linalg::unit_vector(c1, k)).collect(),
        RegularCase::Wrapped { .. } | RegularCase::Top { .. } => {
            let dependents: Vec<usize> = if i >= 3 {
                std::iter::once(1)
                    .chain((3..=t).filter(|&m| m != i))
                    .collect()
            } else {
                (3..=t).collect()
            };
            let is_dependent = |a: Arrow| a.step == 1 && dependents.contains(&a.arm);
            // X_{ω_{j+1,p}} is a 1x1 matrix for these thin modules
            let x_tail = |a: Arrow| -> T {
                let p = alg.weight(a.arm);
                if a.step == p {
                    T::one()
                } else {
                    x.path_matrix(ArmPath {
                        arm: a.arm,
                        from: a.step + 1,
                        to: p,
                    })
                    .as_slice()
                    .first()
                    .cloned()
                    .unwrap_or_else(T::zero)
                }
            };
            let lam_i = if i >= 2 {
                alg.lambda(i).clone()
            } else {
                T::zero()
            };
            let mut out = Vec::new();
            for &a in alg.arrows() {
                if is_dependent(a) {
                    continue;
                }
                let blk = block_of(a);
                if blk.cols == 0 {
                    continue;
                }
                let tail = x_tail(a);
                let y_prefix = if a.step == 1 {
                    Matrix::identity(y.dim(Vertex::Zero))
                } else {
                    y.path_matrix(ArmPath {
                        arm: a.arm,
                        from: 1,
                        to: a.step - 1,
                    })
                };
                for r in 0..blk.rows {
                    let mut f = vec![T::zero(); c1];
                    f[blk.offset + r] = T::one();
                    // contribution of this coordinate to P_{a.arm}
                    let contrib: Vec<T> = y_prefix
                        .column(r)
                        .into_iter()
                        .map(|z| z * tail.clone())
                        .collect();
                    let ind = |arm: usize| if a.arm == arm { T::one() } else { T::zero() };
                    let mut set_block = |arm: usize, coeff: T| {
                        let b = block_of(Arrow { arm, step: 1 });
                        for (row, z) in contrib.iter().enumerate() {
                            f[b.offset + row] = coeff.clone() * z.clone();
                        }
                    };
                    if i >= 3 {
                        // f_{α_1^(1)} from the relation of arm i
                        let d1 = ind(i) - lam_i.clone() * ind(2) - ind(1);
                        set_block(1, d1.clone());
                        for m in (3..=t).filter(|&m| m != i) {
                            let c = d1.clone() + ind(1) + alg.lambda(m).clone() * ind(2) - ind(m);
                            set_block(m, c);
                        }
                    } else {
                        for m in 3..=t {
                            let c = ind(1) + alg.lambda(m).clone() * ind(2) - ind(m);
                            set_block(m, c);
                        }
                    }
                    out.push(f);
                }
            }
            out
        }
    };

    let u_dim = model.u_dim();
    if vectors.len() != u_dim {
        return Err(Error::Certification(format!(
            "structured basis has {} vectors, dim U = {u_dim}",
            vectors.len()
        )));
    }
    if let Some(bad) = vectors.iter().position(|v| !model.in_u(v)) {
        return Err(Error::Certification(format!(
            "structured vector {bad} is not in U(X,Y)"
        )));
    }
    Ok(UBasis {
        vectors,
        provenance: Provenance::Structured,
        properties: None,
    })
}

/// Solver basis of U(X, Y) with the property report attached.
pub fn generic_u_basis<T: Scalar>(model: &ExtModel<T>) -> UBasis<T> {
    let vectors = model.u_basis();
    let properties = Some(basis_properties(model, &vectors));
    UBasis {
        vectors,
        provenance: Provenance::Generic,
        properties,
    }
}

pub fn basis_properties<T: Scalar>(model: &ExtModel<T>, vectors: &[Vec<T>]) -> BasisPropertyReport {
    let alg = model.x().algebra();
    let d = alg.coefficient_set();
    let zero_one = |x: &T| x.is_zero() || x.is_one();
    let mut rep = BasisPropertyReport {
        arm_two_zero_one: true,
        later_arrows_zero_one: true,
        first_arrows_in_d: true,
    };
    for v in vectors {
        for &a in alg.arrows() {
            let b = model.c1_blocks()[alg.arrow_index(a)];
            let entries = &v[b.offset..b.offset + b.rows * b.cols];
            if a.arm == 2 {
                rep.arm_two_zero_one &= entries.iter().all(zero_one);
            } else if a.step >= 2 {
                rep.later_arrows_zero_one &= entries.iter().all(zero_one);
            } else {
                rep.first_arrows_in_d &= entries.iter().all(|x| d.contains(x));
            }
        }
    }
    rep
}

/// Entries of every path matrix of Y starting at vertex 0, plus 0 and 1.
pub fn y_path_entries<T: Scalar>(y: &Rep<T>) -> Vec<T> {
    let alg = y.algebra();
    let mut out = vec![T::zero(), T::one()];
    for arm in 1..=alg.num_arms() {
        for m in y.path_matrices_from(arm, 1) {
            for x in m.as_slice() {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
        }
    }
    out
}

/// True iff every entry of the basis is d·y with d in D(λ) and y an entry
/// of a path matrix of Y from vertex 0.
pub fn entries_scaled_by_y<T: Scalar>(basis: &UBasis<T>, y: &Rep<T>) -> bool {
    let d = y.algebra().coefficient_set();
    let ys = y_path_entries(y);
    let products: Vec<T> = d
        .values()
        .iter()
        .flat_map(|a| ys.iter().map(move |b| a.clone() * b.clone()))
        .collect();
    basis
        .vectors
        .iter()
        .flatten()
        .all(|x| x.is_zero() || products.contains(x))
}

/// The members of `basis` whose classes form a basis of Ext¹(X, Y).
pub fn ext_basis_from_u<T: Scalar>(model: &ExtModel<T>, basis: &UBasis<T>) -> UBasis<T> {
    let keep = model.ext_representatives_from(&basis.vectors);
    UBasis {
        vectors: keep.into_iter().map(|i| basis.vectors[i].clone()).collect(),
        provenance: basis.provenance,
        properties: basis.properties,
    }
}

/// M with M_x = Y_x^v ⊕ X_x^u and arrow blocks
/// [[Y_α ⊗ I_v, Σ_m f_α^(m) ⊗ A_m], [0, X_α ⊗ I_u]].
pub fn assemble<T: Scalar>(
    model: &ExtModel<T>,
    ext_basis: &UBasis<T>,
    kron: &ThetaRep<T>,
) -> Result<Rep<T>> {
    if kron.n() != ext_basis.len() {
        return Err(Error::Dimension(format!(
            "Θ({}) against {} extension classes",
            kron.n(),
            ext_basis.len()
        )));
    }
    let (x, y) = (model.x(), model.y());
    let alg = x.algebra();
    let (v, u) = (kron.v(), kron.u());
    let iv = Matrix::identity(v);
    let iu = Matrix::identity(u);
    let dims: Vec<usize> = y
        .dims()
        .iter()
        .zip(x.dims())
        .map(|(dy, dx)| dy * v + dx * u)
        .collect();
    let mats = alg
        .arrows()
        .iter()
        .map(|&a| {
            let ya = y.mat(a).kron(&iv);
            let xa = x.mat(a).kron(&iu);
            let mut phi = Matrix::zeros(ya.rows(), xa.cols());
            for (f, am) in ext_basis.vectors.iter().zip(kron.mats()) {
                phi = phi.add(&model.c1_block(f, a).kron(am))?;
            }
            Matrix::block2(&ya, &phi, &Matrix::zeros(xa.rows(), ya.cols()), &xa)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Rep::new(alg.clone(), dims, mats)?;
    m.ensure_relations()?;
    Ok(m)
}

/// Indices (x, y) into the pool with (X, Y) orthogonal exceptional and
/// n = dim Ext¹(X, Y) >= 1.
pub fn find_orthogonal_pairs<T: Scalar>(pool: &[Rep<T>]) -> Result<Vec<(usize, usize, usize)>> {
    let exceptional: Vec<bool> = pool
        .par_iter()
        .map(is_exceptional)
        .collect::<Result<Vec<_>>>()?;
    let candidates: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (0..pool.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && exceptional[i] && exceptional[j])
        .collect();
    let mut found: Vec<(usize, usize, usize)> = candidates
        .par_iter()
        .map(|&(i, j)| pair_check(&pool[i], &pool[j]).map(|n| n.map(|n| (i, j, n))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort_unstable();
    Ok(found)
}

/// Some(n) when (X, Y) is orthogonal with n >= 1, for exceptional X and Y.
fn pair_check<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<Option<usize>> {
    let xy = ExtModel::new(x, y)?;
    let r = xy.delta_rank();
    if xy.c0_dim() != r {
        return Ok(None);
    }
    let n = xy.u_dim() - r;
    if n == 0 {
        return Ok(None);
    }
    let yx = ExtModel::new(y, x)?;
    let r = yx.delta_rank();
    if yx.c0_dim() != r || yx.u_dim() != r {
        return Ok(None);
    }
    Ok(Some(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KronSide {
    Preprojective,
    Preinjective,
}

impl KronSide {
    pub fn build<T: Scalar>(self, n: usize, k: usize) -> Result<ThetaRep<T>> {
        match self {
            KronSide::Preprojective => exceptional_preprojective(n, k),
            KronSide::Preinjective => exceptional_preinjective(n, k),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InductionRecord<T> {
    pub x: Rep<T>,
    pub y: Rep<T>,
    pub x_label: String,
    pub y_label: String,
    pub n: usize,
    pub kron: ThetaRep<T>,
    pub provenance: Provenance,
    pub m: Rep<T>,
}

/// Each check of one induction step, reported separately.
#[derive(Debug, Clone)]
pub struct InductionReport<T> {
    pub relations: bool,
    pub exceptional: bool,
    pub dims_additive: bool,
    pub rank_additive: bool,
    pub coefficients: CoefficientReport<T>,
    /// Present when the structured basis was used.
    pub acceptability: Option<AcceptabilityReport<T>>,
}

impl<T: Scalar> InductionReport<T> {
    pub fn structural_ok(&self) -> bool {
        self.relations && self.exceptional && self.dims_additive && self.rank_additive
    }

    pub fn all_ok(&self) -> bool {
        self.structural_ok()
            && self.coefficients.is_ok()
            && self.acceptability.as_ref().is_none_or(|a| a.is_ok())
    }
}

/// Builds the record for (X, Y) with the given basis choice.
pub fn induction_step<T: Scalar>(
    x: &Rep<T>,
    y: &Rep<T>,
    labels: (String, String),
    regular: Option<RegularSpec>,
    kron_for_n: impl FnOnce(usize) -> Result<ThetaRep<T>>,
) -> Result<InductionRecord<T>> {
    let model = ExtModel::new(x, y)?;
    let basis = match regular {
        Some(spec) => structured_u_basis(&model, spec)?,
        None => generic_u_basis(&model),
    };
    let ext = ext_basis_from_u(&model, &basis);
    let n = ext.len();
    if n == 0 {
        return Err(Error::InvalidSpec("Ext¹(X, Y) vanishes".into()));
    }
    let kron = kron_for_n(n)?;
    let m = assemble(&model, &ext, &kron)?;
    Ok(InductionRecord {
        x: x.clone(),
        y: y.clone(),
        x_label: labels.0,
        y_label: labels.1,
        n,
        kron,
        provenance: basis.provenance,
        m,
    })
}

pub fn verify_induction_step<T: Scalar>(rec: &InductionRecord<T>) -> Result<InductionReport<T>> {
    let m = &rec.m;
    let relations = m.check_relations().is_ok();
    let exceptional = relations && is_exceptional(m)?;
    let (v, u) = (rec.kron.v(), rec.kron.u());
    let dims_additive = m
        .dims()
        .iter()
        .zip(rec.x.dims().iter().zip(rec.y.dims()))
        .all(|(&dm, (&dx, &dy))| dm == u * dx + v * dy);
    let rank_additive = m.rank() == u as i64 * rec.x.rank() + v as i64 * rec.y.rank();
    let acceptability = (rec.provenance == Provenance::Structured).then(|| m.acceptability_audit());
    Ok(InductionReport {
        relations,
        exceptional,
        dims_additive,
        rank_additive,
        coefficients: m.coefficient_audit(),
        acceptability,
    })
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Rank-one modules with n up to this bound enter the pool.
    pub rank_one_max_n: usize,
    /// Index k of the Kronecker representation used for each pair.
    pub kron_k: usize,
    pub kron_side: KronSide,
    /// Cap on the number of first-round records.
    pub max_records: usize,
    /// Feed first-round outputs of rank 2..=3 back in as Y.
    pub second_round: bool,
    /// Upper bound on the rank of modules kept.
    pub max_rank: i64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            rank_one_max_n: 1,
            kron_k: 1,
            kron_side: KronSide::Preprojective,
            max_records: 12,
            second_round: true,
            max_rank: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome<T> {
    pub pairs_found: usize,
    pub pairs_with_regular_x: usize,
    pub records: Vec<(InductionRecord<T>, InductionReport<T>)>,
    /// Some(is_exceptional) of the negative-control assembly; expected false.
    pub negative_control: Option<bool>,
}

/// A labelled constructor output.
#[derive(Debug, Clone)]
pub struct PoolEntry<T> {
    pub label: String,
    pub rep: Rep<T>,
    pub regular: Option<RegularSpec>,
}

pub fn constructor_pool<T: Scalar>(
    alg: &Arc<CanonicalAlgebra<T>>,
    rank_one_max_n: usize,
) -> Result<Vec<PoolEntry<T>>> {
    let mut pool = Vec::new();
    for spec in all_regular_specs(alg) {
        pool.push(PoolEntry {
            label: format!("S[{}]_{}^{}", spec.arm, spec.a, spec.l),
            rep: regular_exceptional(alg, spec)?,
            regular: Some(spec),
        });
    }
    for n in 0..=rank_one_max_n {
        for r in all_rank_one_offsets(alg) {
            let spec = RankOneSpec::new(r, n);
            pool.push(PoolEntry {
                label: format!("L{:?}_{}", spec.r, n),
                rep: rank_one(alg, &spec)?,
                regular: None,
            });
        }
    }
    Ok(pool)
}

/// Pair search, assembly and verification over constructor pools.
pub fn run_pipeline<T: Scalar>(
    alg: &Arc<CanonicalAlgebra<T>>,
    cfg: &PipelineConfig,
) -> Result<PipelineOutcome<T>> {
    let pool = constructor_pool(alg, cfg.rank_one_max_n)?;
    let reps: Vec<Rep<T>> = pool.iter().map(|e| e.rep.clone()).collect();
    let pairs = find_orthogonal_pairs(&reps)?;
    let with_regular: Vec<_> = pairs
        .iter()
        .filter(|(x, y, _)| pool[*x].regular.is_some() && pool[*y].rep.rank() > 0)
        .copied()
        .collect();

    // larger n first, then distinct X and Y where possible
    let mut ordered = with_regular.clone();
    ordered.sort_by_key(|&(x, y, n)| (std::cmp::Reverse(n), x, y));
    let mut chosen: Vec<(usize, usize, usize)> = Vec::new();
    for strict in [true, false] {
        for &(x, y, n) in &ordered {
            if chosen.len() >= cfg.max_records || chosen.iter().any(|c| c.1 == y) {
                continue;
            }
            if strict && chosen.iter().any(|c| c.0 == x) {
                continue;
            }
            chosen.push((x, y, n));
        }
    }
    if let Some(&(x, y, n)) = pairs
        .iter()
        .filter(|(x, y, _)| pool[*x].regular.is_none() && pool[*y].regular.is_none())
        .max_by_key(|p| p.2)
    {
        chosen.push((x, y, n));
    }

    let side = cfg.kron_side;
    let k = cfg.kron_k;
    let mut records: Vec<(InductionRecord<T>, InductionReport<T>)> = chosen
        .par_iter()
        .map(|&(x, y, _)| {
            let rec = induction_step(
                &pool[x].rep,
                &pool[y].rep,
                (pool[x].label.clone(), pool[y].label.clone()),
                pool[x].regular,
                |n| side.build(n, k),
            )?;
            let rep = verify_induction_step(&rec)?;
            Ok((rec, rep))
        })
        .collect::<Result<Vec<_>>>()?;
    records.retain(|(r, _)| r.m.rank() <= cfg.max_rank);

    if cfg.second_round {
        let seeds: Vec<(Rep<T>, String)> = records
            .iter()
            .filter(|(r, rep)| rep.exceptional && (2..=3).contains(&r.m.rank()))
            .map(|(r, _)| (r.m.clone(), format!("M({},{})", r.x_label, r.y_label)))
            .take(2)
            .collect();
        let regulars: Vec<&PoolEntry<T>> = pool.iter().filter(|e| e.regular.is_some()).collect();
        for (y, ylabel) in seeds {
            let hit = regulars
                .par_iter()
                .map(|e| pair_check(&e.rep, &y).map(|n| n.map(|_| *e)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            if let Some(e) = hit {
                let rec = induction_step(&e.rep, &y, (e.label.clone(), ylabel), e.regular, |n| {
                    side.build(n, k)
                })?;
                if rec.m.rank() <= cfg.max_rank {
                    let rep = verify_induction_step(&rec)?;
                    records.push((rec, rep));
                }
            }
        }
    }

    let negative_control = match pairs.iter().find(|(_, _, n)| *n >= 2).or(pairs.first()) {
        Some(&(x, y, _)) => Some(negative_control(&pool[x].rep, &pool[y].rep)?),
        None => None,
    };

    Ok(PipelineOutcome {
        pairs_found: pairs.len(),
        pairs_with_regular_x: with_regular.len(),
        records,
        negative_control,
    })
}

/// is_exceptional of M assembled from a non-exceptional Kronecker
/// representation: every A_m = [1] for n >= 2, A_1 = I_2 for n = 1.
pub fn negative_control<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<bool> {
    let model = ExtModel::new(x, y)?;
    let ext = ext_basis_from_u(&model, &generic_u_basis(&model));
    let kron = match ext.len() {
        0 => return Err(Error::InvalidSpec("Ext¹(X, Y) vanishes".into())),
        1 => ThetaRep::new(2, 2, vec![Matrix::identity(2)])?,
        n => ThetaRep::new(1, 1, vec![Matrix::identity(1); n])?,
    };
    let m = assemble(&model, &ext, &kron)?;
    is_exceptional(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homext::hom_ext;
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
    fn structured_matches_generic_for_all_cases() {
        for (p, l) in [
            (&[2, 3, 7][..], &[0, 1][..]),
            (&[2, 2, 3, 3][..], &[0, 1, 3][..]),
        ] {
            let a = alg(p, l);
            let y = rank_one(&a, &RankOneSpec::new(vec![1; p.len()], 1)).unwrap();
            for spec in all_regular_specs(&a) {
                let x = regular_exceptional(&a, spec).unwrap();
                let model = ExtModel::new(&x, &y).unwrap();
                let s = structured_u_basis(&model, spec).unwrap();
                let g = generic_u_basis(&model);
                assert_eq!(s.len(), g.len(), "{spec:?}");
                assert!(
                    same_span(&s.vectors, &g.vectors, model.c1_dim()),
                    "{spec:?}"
                );
            }
        }
    }

    #[test]
    fn structured_rejects_wrong_x() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let x = regular_exceptional(&a, RegularSpec::new(3, 2, 1)).unwrap();
        let y = rank_one(&a, &RankOneSpec::new(vec![0, 0, 0], 1)).unwrap();
        let model = ExtModel::new(&x, &y).unwrap();
        assert!(structured_u_basis(&model, RegularSpec::new(3, 3, 1)).is_err());
    }

    #[test]
    fn tube_pairs() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let pool: Vec<_> = (1..=7)
            .map(|k| regular_exceptional(&a, RegularSpec::new(3, k, 1)).unwrap())
            .collect();
        let pairs = find_orthogonal_pairs(&pool).unwrap();
        assert!(!pairs.is_empty());
        for (x, y, n) in pairs {
            assert_eq!(n, 1);
            assert_eq!(y + 1, if x == 0 { 7 } else { x });
        }
        assert!(find_orthogonal_pairs(&pool[..1]).unwrap().is_empty());
    }

    #[test]
    fn split_assembly_is_direct_sum() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let x = regular_exceptional(&a, RegularSpec::new(3, 1, 1)).unwrap();
        let y = rank_one(&a, &RankOneSpec::new(vec![0, 0, 0], 0)).unwrap();
        let model = ExtModel::new(&x, &y).unwrap();
        let ext = ext_basis_from_u(&model, &generic_u_basis(&model));
        assert_eq!(ext.len(), 1);
        let zero = ThetaRep::new(2, 3, vec![Matrix::zeros(2, 3)]).unwrap();
        let m = assemble(&model, &ext, &zero).unwrap();
        assert_eq!(m, y.tensor_power(2).direct_sum(&x.tensor_power(3)).unwrap());
    }

    #[test]
    fn simple_extension_step() {
        let a = alg(&[2, 3, 7], &[0, 1]);
        let x = regular_exceptional(&a, RegularSpec::new(3, 1, 1)).unwrap();
        let y = rank_one(&a, &RankOneSpec::new(vec![0, 0, 0], 0)).unwrap();
        assert_eq!(hom_ext(&x, &y).unwrap(), (0, 1));
        let rec = induction_step(
            &x,
            &y,
            ("x".into(), "y".into()),
            Some(RegularSpec::new(3, 1, 1)),
            |n| KronSide::Preprojective.build(n, 1),
        )
        .unwrap();
        let rep = verify_induction_step(&rec).unwrap();
        assert!(rep.all_ok(), "{rep:?}");
        assert_eq!(rec.m.rank(), 1);
    }
}
