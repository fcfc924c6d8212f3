//! Representations of the generalized Kronecker quiver Θ(n): two vertices,
//! n parallel arrows, maps A_m: k^u → k^v.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaRep<T> {
    n: usize,
    v: usize,
    u: usize,
    mats: Vec<Matrix<T>>,
}

impl<T: Scalar> ThetaRep<T> {
    pub fn new(v: usize, u: usize, mats: Vec<Matrix<T>>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::InvalidSpec("Θ(n) needs n >= 1".into()));
        }
        if let Some(m) = mats.iter().find(|m| m.shape() != (v, u)) {
            return Err(Error::Dimension(format!(
                "arrow matrix of shape {}x{}, expected {v}x{u}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self {
            n: mats.len(),
            v,
            u,
            mats,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            v: 0,
            u: 0,
            mats: vec![Matrix::zeros(0, 0); n],
        }
    }

    /// The simple module at the sink (v, u) = (1, 0).
    pub fn simple_sink(n: usize) -> Self {
        Self {
            n,
            v: 1,
            u: 0,
            mats: vec![Matrix::zeros(1, 0); n],
        }
    }

    /// The simple module at the source (v, u) = (0, 1).
    pub fn simple_source(n: usize) -> Self {
        Self {
            n,
            v: 0,
            u: 1,
            mats: vec![Matrix::zeros(0, 1); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn mats(&self) -> &[Matrix<T>] {
        &self.mats
    }

    /// All A_m transposed, (v, u) swapped.
    pub fn transpose(&self) -> Self {
        Self {
            n: self.n,
            v: self.u,
            u: self.v,
            mats: self.mats.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn is_zero_one(&self) -> bool {
        self.mats
            .iter()
            .all(|m| m.as_slice().iter().all(|x| x.is_zero() || x.is_one()))
    }

    /// [A_1 | ... | A_n], a v × nu matrix.
    fn concatenated(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.v, self.n * self.u);
        for (m, a) in self.mats.iter().enumerate() {
            for (i, j, x) in a.iter() {
                out.set(i, m * self.u + j, x.clone());
            }
        }
        out
    }
}

/// Positions (i, j) where more than one A_m is nonzero.
pub fn disjoint_support_audit<T: Scalar>(rep: &ThetaRep<T>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..rep.v {
        for j in 0..rep.u {
            if rep.mats.iter().filter(|m| !m.get(i, j).is_zero()).count() > 1 {
                out.push((i, j));
            }
        }
    }
    out
}

/// δ(f, g) = (f A_m - B_m g)_m with f: k^{v_V} → k^{v_W}, g: k^{u_V} → k^{u_W}.
pub fn kronecker_delta<T: Scalar>(a: &ThetaRep<T>, b: &ThetaRep<T>) -> Result<SparseMatrix<T>> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("Θ({}) against Θ({})", a.n, b.n)));
    }
    let f_len = b.v * a.v;
    let g_len = b.u * a.u;
    let f_at = |r: usize, k: usize| r * a.v + k;
    let g_at = |k: usize, c: usize| f_len + k * a.u + c;
    let mut delta = SparseMatrix::new(f_len + g_len);
    for m in 0..a.n {
        for r in 0..b.v {
            for c in 0..a.u {
                let mut entries = Vec::new();
                for k in 0..a.v {
                    let x = a.mats[m].get(k, c);
                    if !x.is_zero() {
                        entries.push((f_at(r, k), x.clone()));
                    }
                }
                for k in 0..b.u {
                    let x = b.mats[m].get(r, k);
                    if !x.is_zero() {
                        entries.push((g_at(k, c), -x.clone()));
                    }
                }
                delta.push_entries(entries);
            }
        }
    }
    Ok(delta)
}

/// (dim Hom(V, W), dim Ext¹(V, W)).
pub fn kronecker_hom_ext<T: Scalar>(a: &ThetaRep<T>, b: &ThetaRep<T>) -> Result<(usize, usize)> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("Θ({}) against Θ({})", a.n, b.n)));
    }
    let c0 = a.v * b.v + a.u * b.u;
    let c1 = a.n * b.v * a.u;
    let hom = if c0 <= 400 {
        c0 - kronecker_delta(a, b)?.rank()
    } else if let Some(h) = hom_by_elimination(a, b) {
        h
    } else if let Some(h) = hom_by_elimination(&b.transpose(), &a.transpose()) {
        h
    } else {
        c0 - kronecker_delta(a, b)?.rank()
    };
    // rank δ = c0 - hom
    Ok((hom, c1 + hom - c0))
}

/// dim Hom(V, W) when [A_1 | ... | A_n] has full row rank: then each row of
/// f is determined by g, and only the solvability conditions on g remain.
fn hom_by_elimination<T: Scalar>(a: &ThetaRep<T>, b: &ThetaRep<T>) -> Option<usize> {
    let cat = a.concatenated();
    if cat.rank() != a.v {
        return None;
    }
    // columns spanning the right kernel of [A_1 | ... | A_n]
    let kernel = cat.nullspace_basis();
    let g_len = b.u * a.u;
    let mut sys = SparseMatrix::new(g_len);
    for r in 0..b.v {
        for z in &kernel {
            // Σ_m Σ_{k,c} B_m[r,k] g[k,c] z[(m,c)] = 0
            let mut entries = Vec::new();
            for m in 0..a.n {
                for k in 0..b.u {
                    let bx = b.mats[m].get(r, k);
                    if bx.is_zero() {
                        continue;
                    }
                    for c in 0..a.u {
                        let zx = &z[m * a.u + c];
                        if !zx.is_zero() {
                            entries.push((k * a.u + c, bx.clone() * zx.clone()));
                        }
                    }
                }
            }
            sys.push_entries(entries);
        }
    }
    Some(g_len - sys.rank())
}

/// d_0 = 0, d_1 = 1, d_{k+1} = n·d_k - d_{k-1}. For n = 1 the terms past
/// d_2 are clamped at zero.
pub fn kronecker_sequence(n: usize, len: usize) -> Vec<u64> {
    let mut d = vec![0u64, 1];
    while d.len() < len {
        let k = d.len();
        d.push((n as u64 * d[k - 1]).saturating_sub(d[k - 2]));
    }
    d.truncate(len);
    d
}

/// (v, u) of the k-th preprojective: (d_{k+1}, d_k).
pub fn preprojective_dims(n: usize, k: usize) -> (u64, u64) {
    let d = kronecker_sequence(n, k + 2);
    (d[k + 1], d[k])
}

/// (v, u) of the k-th preinjective: (d_k, d_{k+1}).
pub fn preinjective_dims(n: usize, k: usize) -> (u64, u64) {
    let (v, u) = preprojective_dims(n, k);
    (u, v)
}

/// The k-th exceptional preprojective representation, k = 0 being the
/// simple sink. Each step takes the cokernel of (A_m)_m: k^u → (k^v)^n and
/// picks a 0-1 basis of the quotient; the result is certified.
pub fn exceptional_preprojective<T: Scalar>(n: usize, k: usize) -> Result<ThetaRep<T>> {
    if n == 0 {
        return Err(Error::InvalidSpec("Θ(n) needs n >= 1".into()));
    }
    if n == 1 && k > 1 {
        return Err(Error::InvalidSpec(
            "Θ(1) has only the preprojectives k = 0, 1".into(),
        ));
    }
    let mut rep = ThetaRep::simple_sink(n);
    for _ in 0..k {
        rep = reflect(&rep)?;
    }
    certify(&rep, preprojective_dims(n, k))?;
    Ok(rep)
}

/// The k-th exceptional preinjective: transpose of the k-th preprojective.
pub fn exceptional_preinjective<T: Scalar>(n: usize, k: usize) -> Result<ThetaRep<T>> {
    let rep = exceptional_preprojective::<T>(n, k)?.transpose();
    certify(&rep, preinjective_dims(n, k))?;
    Ok(rep)
}

fn certify<T: Scalar>(rep: &ThetaRep<T>, dims: (u64, u64)) -> Result<()> {
    if (rep.v as u64, rep.u as u64) != dims {
        return Err(Error::Certification(format!(
            "dimension pair ({}, {}) differs from {:?}",
            rep.v, rep.u, dims
        )));
    }
    if !rep.is_zero_one() {
        return Err(Error::Certification("entries outside {0, 1}".into()));
    }
    if !disjoint_support_audit(rep).is_empty() {
        return Err(Error::Certification("overlapping supports".into()));
    }
    let he = kronecker_hom_ext(rep, rep)?;
    if he != (1, 0) {
        return Err(Error::Certification(format!("(hom, ext) = {he:?}")));
    }
    Ok(())
}

/// Cokernel step (v, u) → (nv - u, v).
fn reflect<T: Scalar>(prev: &ThetaRep<T>) -> Result<ThetaRep<T>> {
    let (n, v, u) = (prev.n, prev.v, prev.u);
    let coord = |m: usize, i: usize| m * v + i;
    // stacked columns c_j ∈ (k^v)^n
    let columns: Vec<Vec<(usize, T)>> = (0..u)
        .map(|j| {
            let mut c = Vec::new();
            for m in 0..n {
                for i in 0..v {
                    let x = prev.mats[m].get(i, j);
                    if !x.is_zero() {
                        c.push((coord(m, i), x.clone()));
                    }
                }
            }
            c
        })
        .collect();
    let candidates: Vec<Vec<usize>> = columns
        .iter()
        .map(|c| {
            (0..n)
                .filter_map(|m| {
                    let in_m: Vec<_> = c.iter().filter(|(x, _)| x / v == m).collect();
                    match in_m.as_slice() {
                        [(x, val)] if val.is_one() => Some(*x),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect();

    let mut pivots = vec![usize::MAX; u];
    let mut attempts = 0usize;
    let mut result = None;
    search(
        0,
        &columns,
        &candidates,
        &mut pivots,
        &mut attempts,
        &mut |piv: &[usize]| {
            let rep = build_quotient(prev, &columns, piv)?;
            let rep = fix_signs(rep)?;
            disjoint_support_audit(&rep).is_empty().then_some(rep)
        },
        &mut result,
    );
    result.ok_or_else(|| {
        Error::Certification(format!(
            "no 0-1 quotient basis found for ({v}, {u}) over Θ({n})"
        ))
    })
}

const MAX_ATTEMPTS: usize = 20_000;

#[allow(clippy::too_many_arguments)]
fn search<T: Scalar>(
    j: usize,
    columns: &[Vec<(usize, T)>],
    candidates: &[Vec<usize>],
    pivots: &mut Vec<usize>,
    attempts: &mut usize,
    accept: &mut dyn FnMut(&[usize]) -> Option<ThetaRep<T>>,
    out: &mut Option<ThetaRep<T>>,
) {
    if out.is_some() || *attempts >= MAX_ATTEMPTS {
        return;
    }
    if j == columns.len() {
        *attempts += 1;
        *out = accept(pivots);
        return;
    }
    for &x in &candidates[j] {
        let clash = pivots[..j].contains(&x)
            || columns
                .iter()
                .enumerate()
                .any(|(jj, c)| jj != j && c.iter().any(|(y, _)| *y == x))
            || pivots[..j]
                .iter()
                .any(|&p| columns[j].iter().any(|(y, _)| *y == p));
        if clash {
            continue;
        }
        pivots[j] = x;
        search(j + 1, columns, candidates, pivots, attempts, accept, out);
        if out.is_some() {
            return;
        }
    }
    pivots[j] = usize::MAX;
}

fn build_quotient<T: Scalar>(
    prev: &ThetaRep<T>,
    columns: &[Vec<(usize, T)>],
    pivots: &[usize],
) -> Option<ThetaRep<T>> {
    let (n, v) = (prev.n, prev.v);
    let total = n * v;
    let mut index = vec![usize::MAX; total];
    let mut next = 0;
    for (x, slot) in index.iter_mut().enumerate() {
        if !pivots.contains(&x) {
            *slot = next;
            next += 1;
        }
    }
    let v_new = next;
    let mut mats = vec![Matrix::zeros(v_new, v); n];
    for (m, mat) in mats.iter_mut().enumerate() {
        for i in 0..v {
            let x = m * v + i;
            match pivots.iter().position(|&p| p == x) {
                None => mat.set(index[x], i, T::one()),
                Some(j) => {
                    let lead = columns[j].iter().find(|(y, _)| *y == x)?.1.clone();
                    for (y, val) in &columns[j] {
                        if *y != x {
                            if index[*y] == usize::MAX {
                                return None;
                            }
                            mat.set(index[*y], i, -(val.clone() / lead.clone()));
                        }
                    }
                }
            }
        }
    }
    ThetaRep::new(v_new, v, mats).ok()
}

/// Rescales basis vectors by ±1 so every nonzero entry becomes 1; fails
/// unless the coefficient quiver admits a consistent sign choice.
fn fix_signs<T: Scalar>(rep: ThetaRep<T>) -> Option<ThetaRep<T>> {
    let (v, u) = (rep.v, rep.u);
    // nodes: rows 0..v, then columns v..v+u
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); v + u];
    for m in &rep.mats {
        for (i, j, x) in m.iter() {
            if x.is_zero() {
                continue;
            }
            let neg = if x.is_one() {
                false
            } else if (-x.clone()).is_one() {
                true
            } else {
                return None;
            };
            adj[i].push((v + j, neg));
            adj[v + j].push((i, neg));
        }
    }
    let mut sign: Vec<Option<bool>> = vec![None; v + u];
    for start in 0..v + u {
        if sign[start].is_some() {
            continue;
        }
        sign[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            let sa = sign[a].expect("visited");
            for &(b, neg) in &adj[a] {
                let want = sa ^ neg;
                match sign[b] {
                    None => {
                        sign[b] = Some(want);
                        queue.push_back(b);
                    }
                    Some(sb) if sb != want => return None,
                    _ => {}
                }
            }
        }
    }
    let flip = |s: Option<bool>| if s == Some(true) { -T::one() } else { T::one() };
    let mats = rep
        .mats
        .iter()
        .map(|m| {
            let mut out = m.clone();
            for (i, j, x) in m.iter() {
                if !x.is_zero() {
                    let s = flip(sign[i]) * flip(sign[v + j]);
                    out.set(i, j, x.clone() * s);
                }
            }
            out
        })
        .collect();
    ThetaRep::new(v, u, mats).ok()
}
