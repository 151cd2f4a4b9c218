//! Minimal graded projective resolutions.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::{combine, sparse_to_dense, GradedModule, ModCell};
use super::GradedMap;
use crate::error::{GrexError, Result};
use crate::exact::{Echelon, ExactMatrix, Field};
use crate::gradalg::{GradedAlgebra, SparseVec};

/// `P⁰ ← P¹ ← … ← Pⁿ`, each term `⊕ P(v)⟨s⟩`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub algebra: Arc<GradedAlgebra>,
    /// Summands `(vertex, shift)` of each term.
    pub terms: Vec<Vec<(usize, i32)>>,
    /// The terms as modules.
    pub modules: Vec<GradedModule>,
    /// `differentials[n]`: images in `Pⁿ` of the generators of `Pⁿ⁺¹`.
    pub differentials: Vec<Vec<SparseVec>>,
    /// Images in `M` of the generators of `P⁰`.
    pub augmentation: Vec<SparseVec>,
    /// The last syzygy vanished, so the resolution is finite.
    pub complete: bool,
}

/// Head generators of the submodule `U ⊆ X` spanned by `u`: a basis of a
/// complement to `rad U` chosen from `u` in order.
fn head_generators(x: &GradedModule, u: &[SparseVec]) -> Vec<SparseVec> {
    let f = x.field();
    let cells = x.cells();
    let mut pos = vec![0; x.dim()];
    for ms in cells.values() {
        for (i, m) in ms.iter().enumerate() {
            pos[*m] = i;
        }
    }
    let dense = |v: &SparseVec| -> (ModCell, Vec<_>) {
        let c = x.cell(v[0].0);
        let mut d = f.zeros(cells[&c].len());
        for (k, a) in v {
            d[pos[*k]] = a.clone();
        }
        (c, d)
    };
    let mut ech: BTreeMap<ModCell, Echelon> = BTreeMap::new();
    for w in x.radical_span(u) {
        for comp in x.homogeneous_components(&w) {
            let (c, d) = dense(&comp);
            let n = d.len();
            ech.entry(c).or_insert_with(|| Echelon::new(f, n)).insert(&d);
        }
    }
    let mut out = Vec::new();
    for v in u {
        if v.is_empty() {
            continue;
        }
        let (c, d) = dense(v);
        let n = d.len();
        if ech.entry(c).or_insert_with(|| Echelon::new(f, n)).insert(&d) {
            out.push(v.clone());
        }
    }
    out
}

/// For a free module built by `GradedModule::free`, the `(summand, algebra
/// basis element)` of each basis vector.
pub(crate) fn free_layout(a: &GradedAlgebra, summands: &[(usize, i32)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (j, &(v, _)) in summands.iter().enumerate() {
        for b in a.projective_basis(v) {
            out.push((j, b));
        }
    }
    out
}

/// Kernel of the module map `P → X` determined by generator images, as
/// homogeneous vectors of `P`.
fn kernel_of_cover(p: &GradedModule, layout: &[(usize, usize)], gens: &[SparseVec], x: &GradedModule) -> Vec<SparseVec> {
    let f = p.field();
    let images: Vec<SparseVec> = layout.iter().map(|&(j, b)| x.apply(b, &gens[j])).collect();
    let xcells = x.cells();
    let mut xpos = vec![0; x.dim()];
    for ms in xcells.values() {
        for (i, m) in ms.iter().enumerate() {
            xpos[*m] = i;
        }
    }
    let mut out = Vec::new();
    for (c, cols) in p.cells() {
        let rows = xcells.get(&c).map(|v| v.len()).unwrap_or(0);
        let mut mat = ExactMatrix::zeros(f, rows, cols.len());
        for (ci, &pc) in cols.iter().enumerate() {
            for (k, a) in &images[pc] {
                mat.set(xpos[*k], ci, a.clone());
            }
        }
        for kv in mat.kernel_basis() {
            out.push(kv.iter().enumerate().filter(|(_, a)| !f.is_zero(a)).map(|(i, a)| (cols[i], a.clone())).collect());
        }
    }
    out
}

/// Projective cover `P ↠ M` with `P = ⊕ P(v)⟨s⟩` matching the graded head.
pub fn projective_cover(m: &GradedModule) -> (GradedModule, GradedMap, Vec<(usize, i32)>) {
    let f = m.field();
    let all: Vec<SparseVec> = (0..m.dim()).map(|k| vec![(k, f.one())]).collect();
    let gens = head_generators(m, &all);
    let summands: Vec<(usize, i32)> = gens.iter().map(|g| m.cell(g[0].0)).collect();
    let p = GradedModule::free(m.algebra.clone(), &summands);
    let layout = free_layout(&m.algebra, &summands);
    let images = layout.iter().map(|&(j, b)| m.apply(b, &gens[j])).collect();
    (p, GradedMap { shift: 0, images }, summands)
}

/// Minimal graded projective resolution of `m` with terms `P⁰ … Pⁿ`.
pub fn minimal_resolution(m: &GradedModule, n: usize) -> Resolution {
    let f = m.field();
    let a = m.algebra.clone();
    let mut res = Resolution {
        algebra: a.clone(),
        terms: vec![],
        modules: vec![],
        differentials: vec![],
        augmentation: vec![],
        complete: false,
    };
    let mut ambient = m.clone();
    let mut u: Vec<SparseVec> = (0..m.dim()).map(|k| vec![(k, f.one())]).collect();
    for k in 0..=n {
        if u.is_empty() {
            res.complete = true;
            break;
        }
        let gens = head_generators(&ambient, &u);
        let summands: Vec<(usize, i32)> = gens.iter().map(|g| ambient.cell(g[0].0)).collect();
        let p = GradedModule::free(a.clone(), &summands);
        let layout = free_layout(&a, &summands);
        let kernel = kernel_of_cover(&p, &layout, &gens, &ambient);
        if k == 0 {
            res.augmentation = gens;
        } else {
            res.differentials.push(gens);
        }
        res.terms.push(summands);
        res.modules.push(p.clone());
        ambient = p;
        u = kernel;
    }
    if u.is_empty() {
        res.complete = true;
    }
    res
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    /// Multiplicity of `P(v)⟨s⟩` in term `n`.
    pub fn betti(&self, n: usize, v: usize, s: i32) -> usize {
        self.terms.get(n).map(|t| t.iter().filter(|x| **x == (v, s)).count()).unwrap_or(0)
    }

    /// Full matrix of `d: Pⁿ⁺¹ → Pⁿ`, as images of all basis vectors.
    pub fn differential_images(&self, n: usize) -> Vec<SparseVec> {
        let layout = free_layout(&self.algebra, &self.terms[n + 1]);
        layout.iter().map(|&(j, b)| self.modules[n].apply(b, &self.differentials[n][j])).collect()
    }

    /// Verify `d∘d = 0`, exactness at every interior term, surjectivity of
    /// the augmentation, and minimality.
    pub fn verify(&self, m: &GradedModule) -> Result<()> {
        let f = self.field();
        if self.is_empty() {
            return if m.is_zero() { Ok(()) } else { Err(GrexError::Structural("empty resolution of a nonzero module".into())) };
        }
        let aug_layout = free_layout(&self.algebra, &self.terms[0]);
        let aug: Vec<SparseVec> = aug_layout.iter().map(|&(j, b)| m.apply(b, &self.augmentation[j])).collect();
        let rank_of = |images: &[SparseVec], target: &GradedModule| -> usize {
            let mut e = Echelon::new(f, target.dim());
            images.iter().filter(|v| e.insert(&sparse_to_dense(f, target.dim(), v))).count()
        };
        if rank_of(&aug, m) != m.dim() {
            return Err(GrexError::Structural("augmentation is not surjective".into()));
        }
        let mut prev_images = aug;
        let mut prev_target = m;
        for n in 0..self.len() {
            let pn = &self.modules[n];
            let ker_dim = pn.dim() - rank_of(&prev_images, prev_target);
            if n + 1 < self.len() {
                let d = self.differential_images(n);
                for v in &d {
                    if !combine(f, v, &prev_images).is_empty() {
                        return Err(GrexError::Structural(format!("d∘d ≠ 0 at term {n}")));
                    }
                }
                if rank_of(&d, pn) != ker_dim {
                    return Err(GrexError::Structural(format!("not exact at term {n}")));
                }
                let rad = pn.radical_span(&(0..pn.dim()).map(|k| vec![(k, f.one())]).collect::<Vec<_>>());
                let mut e = Echelon::new(f, pn.dim());
                for v in &rad {
                    e.insert(&sparse_to_dense(f, pn.dim(), v));
                }
                if self.differentials[n].iter().any(|v| !e.contains(&sparse_to_dense(f, pn.dim(), v))) {
                    return Err(GrexError::Structural(format!("differential into term {n} is not minimal")));
                }
                prev_images = d;
            } else if self.complete && ker_dim != 0 {
                return Err(GrexError::Structural("resolution marked finite but last map not injective".into()));
            }
            prev_target = pn;
        }
        Ok(())
    }
}
