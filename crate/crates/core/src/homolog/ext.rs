//! Graded and ungraded Ext from minimal resolutions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::module::GradedModule;
use super::resolution::{free_layout, minimal_resolution, Resolution};
use crate::error::{GrexError, Result};
use crate::exact::ExactMatrix;
use crate::gradalg::GradedAlgebra;

/// `dim ext^n(M, N⟨r⟩)` for `n ≤ nmax`, with the ungraded row sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub nmax: usize,
    /// Nonzero entries keyed by `(n, r)`.
    pub graded: BTreeMap<(usize, i32), usize>,
    /// `Σ_r dim ext^n(M, N⟨r⟩)` for each `n`.
    pub ungraded: Vec<usize>,
}

impl ExtTable {
    pub fn get(&self, n: usize, r: i32) -> usize {
        self.graded.get(&(n, r)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(n, r, dim)`.
    pub fn entries(&self) -> Vec<(usize, i32, usize)> {
        self.graded.iter().map(|(&(n, r), &d)| (n, r, d)).collect()
    }

    /// First `(n, r, dim)` with `n ≥ from` and `r ≠ n`, if any.
    pub fn off_diagonal(&self, from: usize) -> Option<(usize, i32, usize)> {
        self.graded.iter().find(|((n, r), _)| *n >= from && *r != *n as i32).map(|((n, r), d)| (*n, *r, *d))
    }
}

/// Coordinates of `hom(Pᵏ, N⟨r⟩) = ⊕_j e_{v_j} N_{s_j − r}`.
fn hom_coords(term: &[(usize, i32)], r: i32, cells: &BTreeMap<(usize, i32), Vec<usize>>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (j, &(v, s)) in term.iter().enumerate() {
        if let Some(ms) = cells.get(&(v, s - r)) {
            for &y in ms {
                out.push((j, y));
            }
        }
    }
    out
}

/// Rank of `d*: hom(Pᵏ, N⟨r⟩) → hom(Pᵏ⁺¹, N⟨r⟩)`.
fn dual_rank(res: &Resolution, k: usize, n: &GradedModule, r: i32, cells: &BTreeMap<(usize, i32), Vec<usize>>) -> usize {
    if k + 1 >= res.len() {
        return 0;
    }
    let f = n.field();
    let src = hom_coords(&res.terms[k], r, cells);
    let dst = hom_coords(&res.terms[k + 1], r, cells);
    if src.is_empty() || dst.is_empty() {
        return 0;
    }
    let dst_index: BTreeMap<(usize, usize), usize> = dst.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let layout = free_layout(&res.algebra, &res.terms[k]);
    let mut mat = ExactMatrix::zeros(f, dst.len(), src.len());
    // (φ∘d)(gen j') = Σ_components a · φ(gen j) for φ(gen j) = y.
    for (jp, image) in res.differentials[k].iter().enumerate() {
        for (idx, c) in image {
            let (j, b) = layout[*idx];
            for (col, &(js, y)) in src.iter().enumerate() {
                if js != j {
                    continue;
                }
                for (z, d) in n.act(b, y) {
                    if let Some(&row) = dst_index.get(&(jp, *z)) {
                        let cur = mat.get(row, col).clone();
                        mat.set(row, col, f.add(&cur, &f.mul(c, d)));
                    }
                }
            }
        }
    }
    mat.rank()
}

/// Ext table from a resolution of length at least `nmax + 2` (or complete).
pub fn ext_from_resolution(res: &Resolution, n: &GradedModule, nmax: usize) -> ExtTable {
    let cells = n.cells();
    let mut graded = BTreeMap::new();
    let mut ungraded = vec![0; nmax + 1];
    for k in 0..res.len().min(nmax + 1) {
        let shifts: BTreeSet<i32> = res.terms[k]
            .iter()
            .flat_map(|&(v, s)| cells.keys().filter(move |c| c.0 == v).map(move |c| s - c.1))
            .collect();
        for r in shifts {
            let dim_hom = hom_coords(&res.terms[k], r, &cells).len();
            let rank_out = dual_rank(res, k, n, r, &cells);
            let rank_in = if k == 0 { 0 } else { dual_rank(res, k - 1, n, r, &cells) };
            let e = dim_hom - rank_out - rank_in;
            if e > 0 {
                graded.insert((k, r), e);
                ungraded[k] += e;
            }
        }
    }
    ExtTable { nmax, graded, ungraded }
}

/// `dim ext^n(M, N⟨r⟩)` for all `n ≤ nmax` and all `r`.
pub fn graded_ext(m: &GradedModule, n: &GradedModule, nmax: usize) -> ExtTable {
    let res = minimal_resolution(m, nmax + 1);
    ext_from_resolution(&res, n, nmax)
}

/// Ungraded `dim Ext^n(M, N)` computed from an independent resolution over
/// the algebra with its grading forgotten.
pub fn ungraded_ext(m: &GradedModule, n: &GradedModule, nmax: usize) -> Vec<usize> {
    let ungraded = Arc::new(m.algebra.forget_grading());
    ungraded_ext_over(&ungraded, m, n, nmax)
}

/// As `ungraded_ext`, reusing an already forgotten algebra.
pub fn ungraded_ext_over(ungraded: &Arc<GradedAlgebra>, m: &GradedModule, n: &GradedModule, nmax: usize) -> Vec<usize> {
    let mu = m.forget_grading(ungraded.clone());
    let nu = n.forget_grading(ungraded.clone());
    let res = minimal_resolution(&mu, nmax + 1);
    let t = ext_from_resolution(&res, &nu, nmax);
    (0..=nmax).map(|k| t.get(k, 0)).collect()
}

/// `ext^n(X, Y) = 0` for `n ≤ nmax` when `X` lives in grades `≥ r` and `Y`
/// in grades `≤ s` with `r > s`. Returns whether the vanishing holds.
pub fn vanishing_range_check(x: &GradedModule, y: &GradedModule, r: i32, s: i32, nmax: usize) -> Result<bool> {
    if x.min_grade().map(|g| g < r).unwrap_or(false) {
        return Err(GrexError::Precondition(format!("first module is not concentrated in grades ≥ {r}")));
    }
    if y.max_grade().map(|g| g > s).unwrap_or(false) {
        return Err(GrexError::Precondition(format!("second module is not concentrated in grades ≤ {s}")));
    }
    if r <= s {
        return Ok(true);
    }
    let t = graded_ext(x, y, nmax);
    Ok((0..=nmax).all(|k| t.get(k, 0) == 0))
}
