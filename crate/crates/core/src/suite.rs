//! Self-verification suite over one canonical algebra. Each check returns
//! a named outcome; the overall status maps onto process exit codes.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{CanonicalAlgebra, Vertex};
use crate::error::{Error, Result};
use crate::homext::{
    euler_form, ext_dim, ext_tensor_dim, hom_ext, is_exceptional, projective_dims, ExtModel,
};
use crate::kronecker::{
    disjoint_support_audit, exceptional_preinjective, exceptional_preprojective, kronecker_hom_ext,
    kronecker_sequence, ThetaRep,
};
use crate::random::random_rep;
use crate::representation::Rep;
use crate::scalar::{format_scalar, Scalar};
use crate::schofield::{
    constructor_pool, entries_scaled_by_y, generic_u_basis, run_pipeline, same_span,
    structured_u_basis, PipelineConfig,
};
use crate::small_rank::{
    all_rank_one_offsets, all_regular_specs, rank_one, regular_exceptional, RankOneSpec,
    RegularSpec,
};
use crate::weight::{
    normal_form, sufficient_translation_bound, translation_bound, LElement, WeightSequence,
};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Exit code for a failed computation: invalid input unless the failure is
/// a certification or relation check.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Certification(_) => EXIT_VERIFICATION,
        _ => EXIT_INVALID,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub note: Option<String>,
}

impl CheckOutcome {
    fn new(name: &'static str, failures: Vec<String>, summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<_> = failures.iter().take(5).cloned().collect();
            format!("{} failure(s): {}", failures.len(), shown.join("; "))
        };
        Self {
            name,
            passed,
            detail,
            note: None,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        }
    }

    /// PASS/FAIL lines in check order, notes after their check.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            s.push_str(&o.line());
            s.push('\n');
            if let Some(n) = &o.note {
                s.push_str(&format!("NOTE {}: {n}\n", o.name));
            }
        }
        s
    }
}

type Check = fn(&Arc<CanonicalAlgebra<Rational>>) -> Result<CheckOutcome>;

const CHECKS: &[Check] = &[
    check_wildness,
    check_regular,
    check_rank_one,
    check_kronecker,
    check_delta_model,
    check_tensor,
    check_structured_bases,
    check_pipeline,
    check_translation_bound,
    check_euler_form,
];

/// Runs every check, in parallel, and reports in a fixed order.
pub fn run_suite(alg: &Arc<CanonicalAlgebra<Rational>>) -> Result<SuiteReport> {
    let outcomes = CHECKS
        .par_iter()
        .map(|c| c(alg))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { outcomes })
}

pub fn check_wildness<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let w = alg.weights();
    let t = w.len() as i64;
    let direct = w
        .weights()
        .iter()
        .fold(Rational::from_integer((2 - t).into()), |acc, &p| {
            acc + Rational::new(1.into(), p.into())
        });
    let chi = w.euler_characteristic();
    let mut failures = Vec::new();
    if chi != direct {
        failures.push(format!("chi {chi} != {direct}"));
    }
    if w.is_wild() != (direct < Rational::from_integer(0.into())) {
        failures.push("wildness flag disagrees with the sign of chi".into());
    }
    Ok(CheckOutcome::new(
        "wildness",
        failures,
        format!("chi={} wild={}", format_scalar(&chi), w.is_wild()),
    ))
}

pub fn check_regular<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let specs = all_regular_specs(alg);
    let failures: Vec<String> = specs
        .par_iter()
        .map(|&spec| {
            let m = regular_exceptional(alg, spec)?;
            let mut bad = Vec::new();
            if !m.check_relations().is_ok() {
                bad.push("relations");
            }
            if !is_exceptional(&m)? {
                bad.push("exceptional");
            }
            if m.rank() != 0 {
                bad.push("rank");
            }
            if !m.coefficient_audit().is_ok() {
                bad.push("coefficients");
            }
            Ok((!bad.is_empty()).then(|| format!("{spec:?}: {}", bad.join(","))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckOutcome::new(
        "regular-constructors",
        failures,
        format!("{} modules", specs.len()),
    ))
}

pub fn check_rank_one<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let specs: Vec<RankOneSpec> = all_rank_one_offsets(alg)
        .into_iter()
        .flat_map(|r| (0..=2).map(move |n| RankOneSpec::new(r.clone(), n)))
        .collect();
    let mut allowed = vec![T::zero(), T::one()];
    allowed.extend(alg.lambdas().iter().cloned());
    let failures: Vec<String> = specs
        .par_iter()
        .map(|spec| {
            let m = rank_one(alg, spec)?;
            let mut bad = Vec::new();
            if !m.check_relations().is_ok() {
                bad.push("relations");
            }
            if m.rank() != 1 {
                bad.push("rank");
            }
            if !is_exceptional(&m)? {
                bad.push("exceptional");
            }
            if !m.entry_set().iter().all(|x| allowed.contains(x)) {
                bad.push("entries");
            }
            Ok((!bad.is_empty()).then(|| format!("{spec:?}: {}", bad.join(","))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckOutcome::new(
        "rank-one-constructors",
        failures,
        format!("{} modules", specs.len()),
    ))
}

pub fn check_kronecker<T: Scalar>(_alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let cases: Vec<(usize, usize, bool)> = (2..=4)
        .flat_map(|n| (0..=4).flat_map(move |k| [(n, k, true), (n, k, false)]))
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .map(|&(n, k, pre)| {
            let rep: ThetaRep<T> = if pre {
                exceptional_preprojective(n, k)?
            } else {
                exceptional_preinjective(n, k)?
            };
            let d = kronecker_sequence(n, k + 2);
            let expected = if pre {
                (d[k + 1], d[k])
            } else {
                (d[k], d[k + 1])
            };
            let mut bad = Vec::new();
            if (rep.v() as u64, rep.u() as u64) != expected {
                bad.push("dims");
            }
            if kronecker_hom_ext(&rep, &rep)? != (1, 0) {
                bad.push("hom/ext");
            }
            if !rep.is_zero_one() {
                bad.push("entries");
            }
            if !disjoint_support_audit(&rep).is_empty() {
                bad.push("support");
            }
            let side = if pre { "preprojective" } else { "preinjective" };
            Ok((!bad.is_empty()).then(|| format!("{side} n={n} k={k}: {}", bad.join(","))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckOutcome::new(
        "kronecker",
        failures,
        format!("{} representations", cases.len()),
    ))
}

pub fn check_delta_model<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for i in 0..20 {
        let x = random_rep(&mut rng, alg, 3)?;
        let y = random_rep(&mut rng, alg, 3)?;
        let model = ExtModel::new(&x, &y)?;
        if !model.delta_image_generators().iter().all(|g| model.in_u(g)) {
            failures.push(format!("random pair {i}: im δ not in U"));
        }
    }
    for arm in 1..=alg.num_arms() {
        let p = alg.weight(arm);
        for a in 1..=p {
            let prev = if a == 1 { p } else { a - 1 };
            let x = regular_exceptional(alg, RegularSpec::new(arm, a, 1))?;
            let y = regular_exceptional(alg, RegularSpec::new(arm, prev, 1))?;
            if ext_dim(&x, &y)? != 1 {
                failures.push(format!("tube arm {arm}: Ext(S_{a}, S_{prev}) != 1"));
            }
        }
    }
    Ok(CheckOutcome::new(
        "delta-model",
        failures,
        "20 random pairs, all tubes".into(),
    ))
}

pub fn check_tensor<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let pool = constructor_pool(alg, 0)?;
    let pairs: Vec<(usize, usize, usize, usize)> = (0..10)
        .map(|i| {
            let x = (7 * i + 3) % pool.len();
            let y = (11 * i + 1) % pool.len();
            (x, y, 1 + i % 3, 1 + (i / 3) % 3)
        })
        .collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .map(|&(x, y, u, v)| {
            let (x, y) = (&pool[x], &pool[y]);
            let formula = ext_tensor_dim(&x.rep, &y.rep, u, v)?;
            let direct = ext_dim(&x.rep.tensor_power(u), &y.rep.tensor_power(v))?;
            Ok((formula != direct)
                .then(|| format!("{} {} u={u} v={v}: {formula} != {direct}", x.label, y.label)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckOutcome::new(
        "tensor-decomposition",
        failures,
        "10 pairs, u,v <= 3".into(),
    ))
}

pub fn check_structured_bases<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let t = alg.num_arms();
    let ys = [
        RankOneSpec::new(vec![0; t], 0),
        RankOneSpec::new(vec![1; t], 1),
        RankOneSpec::new((1..=t).map(|i| alg.weight(i) - 1).collect(), 2),
    ]
    .into_iter()
    .map(|s| rank_one(alg, &s))
    .collect::<Result<Vec<Rep<T>>>>()?;
    let specs = all_regular_specs(alg);
    let jobs: Vec<(RegularSpec, usize)> = specs
        .iter()
        .flat_map(|&s| (0..ys.len()).map(move |j| (s, j)))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .map(|&(spec, j)| {
            let x = regular_exceptional(alg, spec)?;
            let model = ExtModel::new(&x, &ys[j])?;
            let s = match structured_u_basis(&model, spec) {
                Ok(s) => s,
                Err(e) => return Ok(Some(format!("{spec:?} Y{j}: {e}"))),
            };
            let g = generic_u_basis(&model);
            let mut bad = Vec::new();
            if s.len() != g.len() {
                bad.push("count");
            }
            if !same_span(&s.vectors, &g.vectors, model.c1_dim()) {
                bad.push("span");
            }
            if !entries_scaled_by_y(&s, &ys[j]) {
                bad.push("entries");
            }
            Ok((!bad.is_empty()).then(|| format!("{spec:?} Y{j}: {}", bad.join(","))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckOutcome::new(
        "structured-bases",
        failures,
        format!("{} (X, Y) pairs", jobs.len()),
    ))
}

pub fn check_pipeline<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let out = run_pipeline(alg, &PipelineConfig::default())?;
    let mut failures = Vec::new();
    if out.pairs_found < 3 {
        failures.push(format!("only {} orthogonal pairs", out.pairs_found));
    }
    for (rec, rep) in &out.records {
        let tag = format!("M({}, {})", rec.x_label, rec.y_label);
        if !rep.structural_ok() {
            failures.push(format!("{tag}: structure"));
        }
        if rep.exceptional && rec.m.rank() <= 4 && !rep.coefficients.is_ok() {
            failures.push(format!("{tag}: coefficients"));
        }
        if rep.acceptability.as_ref().is_some_and(|a| !a.is_ok()) {
            failures.push(format!("{tag}: acceptability"));
        }
    }
    if out.negative_control == Some(true) {
        failures.push("negative control assembled an exceptional module".into());
    }
    Ok(CheckOutcome::new(
        "schofield-pipeline",
        failures,
        format!(
            "{} pairs, {} modules assembled, negative control rejected",
            out.pairs_found,
            out.records.len()
        ),
    ))
}

/// Every determinant a·c + Σ l_i x_i with 0 <= l_i < p_i and a in `range`.
pub fn determinants(
    weights: &WeightSequence,
    range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<LElement>> {
    let mut out = Vec::new();
    for a in range {
        let mut l = vec![0i64; weights.len()];
        loop {
            out.push(normal_form(a, &l, weights)?);
            let mut i = 0;
            while i < l.len() {
                l[i] += 1;
                if l[i] < weights.weights()[i] {
                    break;
                }
                l[i] = 0;
                i += 1;
            }
            if i == l.len() {
                break;
            }
        }
    }
    Ok(out)
}

pub fn check_translation_bound<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let w = alg.weights();
    if !w.is_wild() {
        let mut o = CheckOutcome::new("translation-bound", Vec::new(), "skipped: not wild".into());
        o.note = Some("no finite shift bound outside the wild case".into());
        return Ok(o);
    }
    let dets = determinants(w, -2..=1)?;
    let mut failures = Vec::new();
    let mut closed_form_misses = 0;
    for d in &dets {
        let n0 = sufficient_translation_bound(std::slice::from_ref(d), w)?.expect("wild");
        if let Some(n) = (n0 + 1..=n0 + 20).find(|&n| !crate::weight::shifted_is_negative(d, n)) {
            failures.push(format!("{d}: fails at n={n} above bound {n0}"));
        }
        let closed = translation_bound(std::slice::from_ref(d), w)?;
        if (closed + 1..=closed + 20).any(|n| !crate::weight::shifted_is_negative(d, n)) {
            closed_form_misses += 1;
        }
    }
    let mut o = CheckOutcome::new(
        "translation-bound",
        failures,
        format!("{} determinants, a in -2..=1", dets.len()),
    );
    if closed_form_misses > 0 {
        o.note = Some(format!(
            "closed form floor((1-a)(t-2))+1 is too small for {closed_form_misses} of {} determinants; the sufficient bound was checked instead",
            dets.len()
        ));
    }
    Ok(o)
}

pub fn check_euler_form<T: Scalar>(alg: &Arc<CanonicalAlgebra<T>>) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1e7);
    let samples = (0..10)
        .map(|_| random_rep(&mut rng, alg, 3))
        .collect::<Result<Vec<_>>>()?;
    for &v in alg.vertices() {
        let p = projective_dims(alg, v);
        for n in &samples {
            if euler_form(&p, n.dims(), alg)? != n.dim(v) as i64 {
                failures.push(format!("<P_{}, N> != dim N_v", v.label()));
            }
        }
    }
    let pc = rank_one(alg, &RankOneSpec::new(vec![0; alg.num_arms()], 1))?;
    if pc.dims() != projective_dims(alg, Vertex::Top).as_slice() {
        failures.push("P_c dimension vector".into());
    }
    let pool: Vec<Rep<T>> = constructor_pool(alg, 1)?
        .into_iter()
        .map(|e| e.rep)
        .collect();
    let pairs: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (0..pool.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| sheaf_compatible(&pool[i], &pool[j]))
        .collect();
    let mismatches: Vec<String> =
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (h, e) = hom_ext(&pool[i], &pool[j])?;
                let chi = euler_form(pool[i].dims(), pool[j].dims(), alg)?;
                Ok((h as i64 - e as i64 != chi)
                    .then(|| format!("pair ({i}, {j}): {h} - {e} != {chi}")))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
    failures.extend(mismatches);
    Ok(CheckOutcome::new(
        "euler-form",
        failures,
        format!(
            "projectives against 10 random modules, {} constructor pairs",
            pairs.len()
        ),
    ))
}

/// Pairs of nonnegative rank, where Ext² vanishes for constructor outputs.
pub fn sheaf_compatible<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> bool {
    x.rank() >= 0 && y.rank() >= 0
}

/// Hom and Ext dimensions for a pair, as printed by the CLI.
pub fn hom_ext_line<T: Scalar>(x: &Rep<T>, y: &Rep<T>) -> Result<String> {
    let (h, e) = hom_ext(x, y)?;
    Ok(format!("hom={h} ext={e}"))
}
