//! Positively graded finite-dimensional split basic algebras.
//!
//! Paths compose right to left: the word `[a, b]` denotes the product `a·b`,
//! i.e. first `b`, then `a`. A basis element sits in the cell
//! `e_target · A · e_source`, and left modules decompose as `⊕ e_v M`.

mod bimodule;
mod builder;
mod tensor_algebra;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GrexError, Result};
use crate::exact::{Echelon, Field, Scalar};

pub use bimodule::{bimodule_tensor_a0, GradedBimodule, TensorQuotient};
pub use builder::{build_algebra, build_algebra_with, ArrowSpec, QuiverSpec, RelationTerm, DEFAULT_DIM_GUARD};
pub use tensor_algebra::{truncated_tensor_algebra, TensorAlgebra};

/// Sparse vector as (index, coefficient) pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A linear combination of generator words; a word `[g1, …, gk]` is the
/// product `g1·…·gk`.
pub type WordSum = Vec<(Vec<usize>, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElem {
    pub label: String,
    pub grade: u32,
    pub source: usize,
    pub target: usize,
}

/// A radical generator, homogeneous for grade and for both idempotent sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub grade: u32,
    pub elem: SparseVec,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub field: Field,
    pub vertices: Vec<String>,
    pub basis: Vec<BasisElem>,
    /// `mult[i]` lists `(j, b_i·b_j)` for the nonzero products, sorted by `j`.
    mult: Vec<Vec<(usize, SparseVec)>>,
    /// Basis index of `e_v` for each vertex `v`.
    pub idempotents: Vec<usize>,
    pub generators: Vec<Generator>,
    /// Expression of each non-idempotent basis element through generators.
    words: Vec<WordSum>,
    /// Quiver presentation this algebra was built from, if any.
    pub presentation: Option<QuiverSpec>,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.vertices == o.vertices
            && self.basis == o.basis
            && self.mult == o.mult
            && self.idempotents == o.idempotents
    }
}

/// Cell key `(source, target, grade)`.
pub type Cell = (usize, usize, u32);

impl GradedAlgebra {
    /// Assemble from parts and run the structural checks.
    pub(crate) fn assemble(
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        mult: Vec<Vec<(usize, SparseVec)>>,
        idempotents: Vec<usize>,
        generators: Vec<Generator>,
        words: Vec<WordSum>,
    ) -> Result<Self> {
        let a = GradedAlgebra { field, vertices, basis, mult, idempotents, generators, words, presentation: None };
        a.verify()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn top_grade(&self) -> u32 {
        self.basis.iter().map(|b| b.grade).max().unwrap_or(0)
    }

    /// `dim A_i` for `i = 0..=top`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.top_grade() as usize + 1];
        for b in &self.basis {
            d[b.grade as usize] += 1;
        }
        d
    }

    pub fn is_idempotent(&self, b: usize) -> bool {
        self.idempotents.contains(&b)
    }

    /// The product `b_i · b_j` in the basis.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        let row = &self.mult[i];
        match row.binary_search_by_key(&j, |(k, _)| *k) {
            Ok(pos) => &row[pos].1,
            Err(_) => &[],
        }
    }

    /// Nonzero products `b_i · b_j` for fixed `i`.
    pub fn products_from(&self, i: usize) -> &[(usize, SparseVec)] {
        &self.mult[i]
    }

    /// Product of two dense elements.
    pub fn mul_dense(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = f.zeros(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, prod) in &self.mult[i] {
                let yj = &y[*j];
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, v) in prod {
                    f.axpy(&mut out[*k], &c, v);
                }
            }
        }
        out
    }

    pub fn words(&self, b: usize) -> &WordSum {
        &self.words[b]
    }

    pub fn cell(&self, b: usize) -> Cell {
        let e = &self.basis[b];
        (e.source, e.target, e.grade)
    }

    /// Basis indices of `A e_v`, the indecomposable projective at `v`.
    pub fn projective_basis(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].source == v).collect()
    }

    /// Cartan numbers `dim e_μ A e_λ = [P(λ) : L(μ)]`, indexed `[λ][μ]`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0; n]; n];
        for b in &self.basis {
            c[b.source][b.target] += 1;
        }
        c
    }

    fn verify(&self) -> Result<()> {
        let f = self.field;
        let d = self.dim();
        if self.idempotents.len() != self.vertices.len() {
            return Err(GrexError::Structural("one idempotent per vertex required".into()));
        }
        for (v, &e) in self.idempotents.iter().enumerate() {
            let b = &self.basis[e];
            if b.source != v || b.target != v || b.grade != 0 {
                return Err(GrexError::Structural(format!("idempotent of vertex {v} misplaced")));
            }
        }
        for i in 0..d {
            for (j, prod) in &self.mult[i] {
                let (bi, bj) = (&self.basis[i], &self.basis[*j]);
                if bi.source != bj.target {
                    return Err(GrexError::Structural(format!("product {i}·{j} crosses vertices")));
                }
                for (k, _) in prod {
                    let bk = &self.basis[*k];
                    if bk.grade != bi.grade + bj.grade || bk.source != bj.source || bk.target != bi.target {
                        return Err(GrexError::Structural(format!("product {i}·{j} is not homogeneous")));
                    }
                }
            }
        }
        for (v, &e) in self.idempotents.iter().enumerate() {
            for b in 0..d {
                let unit = vec![(b, f.one())];
                let left = if self.basis[b].target == v { unit.clone() } else { vec![] };
                let right = if self.basis[b].source == v { unit } else { vec![] };
                if self.product(e, b) != left.as_slice() || self.product(b, e) != right.as_slice() {
                    return Err(GrexError::Structural(format!("e_{v} does not act as an idempotent")));
                }
            }
        }
        self.check_associativity()?;
        for g in &self.generators {
            for (k, _) in &g.elem {
                if self.cell(*k) != (g.source, g.target, g.grade) {
                    return Err(GrexError::Structural(format!("generator {} not homogeneous", g.label)));
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let f = self.field;
        for i in 0..self.dim() {
            for (j, ij) in &self.mult[i] {
                for (k, jk) in &self.mult[*j] {
                    let mut left = BTreeMap::<usize, Scalar>::new();
                    for (m, c) in ij {
                        for (r, c2) in self.product(*m, *k) {
                            let e = left.entry(*r).or_insert_with(|| f.zero());
                            f.axpy(e, c, c2);
                        }
                    }
                    let mut right = BTreeMap::<usize, Scalar>::new();
                    for (m, c) in jk {
                        for (r, c2) in self.product(i, *m) {
                            let e = right.entry(*r).or_insert_with(|| f.zero());
                            f.axpy(e, c, c2);
                        }
                    }
                    left.retain(|_, v| !f.is_zero(v));
                    right.retain(|_, v| !f.is_zero(v));
                    if left != right {
                        return Err(GrexError::Structural(format!("associativity fails on ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The opposite algebra on the same basis.
    pub fn opposite(&self) -> GradedAlgebra {
        let d = self.dim();
        let mut mult: Vec<Vec<(usize, SparseVec)>> = vec![Vec::new(); d];
        for i in 0..d {
            for (j, prod) in &self.mult[i] {
                mult[*j].push((i, prod.clone()));
            }
        }
        for row in mult.iter_mut() {
            row.sort_by_key(|(k, _)| *k);
        }
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElem { label: b.label.clone(), grade: b.grade, source: b.target, target: b.source })
            .collect();
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                label: g.label.clone(),
                source: g.target,
                target: g.source,
                grade: g.grade,
                elem: g.elem.clone(),
            })
            .collect();
        let words = self
            .words
            .iter()
            .map(|ws| ws.iter().map(|(w, c)| (w.iter().rev().copied().collect(), c.clone())).collect())
            .collect();
        GradedAlgebra {
            field: self.field,
            vertices: self.vertices.clone(),
            basis,
            mult,
            idempotents: self.idempotents.clone(),
            generators,
            words,
            presentation: None,
        }
    }

    /// Forget the grading: every basis element and generator moves to grade 0.
    pub fn forget_grading(&self) -> GradedAlgebra {
        let mut a = self.clone();
        for b in a.basis.iter_mut() {
            b.grade = 0;
        }
        for g in a.generators.iter_mut() {
            g.grade = 0;
        }
        a.presentation = None;
        a
    }

    /// Restrict to the span of a set of basis elements closed under
    /// multiplication (a subalgebra containing all idempotents), or pass to
    /// the quotient by the complementary span when that span is an ideal.
    /// `keep[b]` gives the new index of `b` or `None`. Generators are kept
    /// when all their support survives.
    fn reindexed(&self, keep: &[Option<usize>], vertices_map: &[Option<usize>]) -> Result<GradedAlgebra> {
        let n_new = keep.iter().filter(|k| k.is_some()).count();
        let mut basis = vec![None; n_new];
        for (b, k) in keep.iter().enumerate() {
            if let Some(nb) = k {
                let e = &self.basis[b];
                basis[*nb] = Some(BasisElem {
                    label: e.label.clone(),
                    grade: e.grade,
                    source: vertices_map[e.source].expect("surviving element at removed vertex"),
                    target: vertices_map[e.target].expect("surviving element at removed vertex"),
                });
            }
        }
        let basis: Vec<BasisElem> = basis.into_iter().map(|b| b.unwrap()).collect();
        let mut mult = vec![Vec::new(); n_new];
        for (i, ki) in keep.iter().enumerate() {
            let Some(ni) = ki else { continue };
            for (j, prod) in &self.mult[i] {
                let Some(nj) = keep[*j] else { continue };
                let p: SparseVec = prod.iter().filter_map(|(k, c)| keep[*k].map(|nk| (nk, c.clone()))).collect();
                if !p.is_empty() {
                    mult[*ni].push((nj, p));
                }
            }
        }
        for row in mult.iter_mut() {
            row.sort_by_key(|(k, _)| *k);
        }
        let n_vert = vertices_map.iter().filter(|v| v.is_some()).count();
        let mut vertices = vec![String::new(); n_vert];
        let mut idempotents = vec![0; n_vert];
        for (v, nv) in vertices_map.iter().enumerate() {
            if let Some(nv) = nv {
                vertices[*nv] = self.vertices[v].clone();
                idempotents[*nv] = keep[self.idempotents[v]].expect("idempotent removed");
            }
        }
        let mut gen_map = vec![None; self.generators.len()];
        let mut generators = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            let (Some(s), Some(t)) = (vertices_map[g.source], vertices_map[g.target]) else { continue };
            let elem: SparseVec = g.elem.iter().filter_map(|(k, c)| keep[*k].map(|nk| (nk, c.clone()))).collect();
            if elem.is_empty() {
                continue;
            }
            gen_map[gi] = Some(generators.len());
            generators.push(Generator { label: g.label.clone(), source: s, target: t, grade: g.grade, elem });
        }
        let mut words = vec![Vec::new(); n_new];
        for (b, k) in keep.iter().enumerate() {
            let Some(nb) = k else { continue };
            let mut ws = Vec::new();
            for (w, c) in &self.words[b] {
                if let Some(nw) = w.iter().map(|g| gen_map[*g]).collect::<Option<Vec<_>>>() {
                    ws.push((nw, c.clone()));
                }
            }
            words[*nb] = ws;
        }
        GradedAlgebra::assemble(self.field, vertices, basis, mult, idempotents, generators, words)
    }

    /// `A₀` together with the projection `π`, given as the new index of each
    /// grade-0 basis element.
    pub fn grade_zero(&self) -> (GradedAlgebra, Vec<Option<usize>>) {
        let mut keep = vec![None; self.dim()];
        let mut next = 0;
        for (b, e) in self.basis.iter().enumerate() {
            if e.grade == 0 {
                keep[b] = Some(next);
                next += 1;
            }
        }
        let vmap: Vec<Option<usize>> = (0..self.num_vertices()).map(Some).collect();
        let a0 = self.reindexed(&keep, &vmap).expect("grade-zero part of a graded algebra is an algebra");
        (a0, keep)
    }

    /// Quotient by the two-sided ideal `A e A`, `e = Σ_{v ∉ keep} e_v`.
    pub fn idempotent_quotient(&self, keep_vertices: &[usize]) -> Result<GradedAlgebra> {
        let f = self.field;
        let d = self.dim();
        let removed: Vec<usize> =
            (0..self.num_vertices()).filter(|v| !keep_vertices.contains(v)).collect();
        // Spanning set of A e A: products b·e_v·b' with v removed.
        let mut by_cell: BTreeMap<Cell, Echelon> = BTreeMap::new();
        let cells: Vec<Cell> = (0..d).map(|b| self.cell(b)).collect();
        let mut cell_members: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
        for b in 0..d {
            cell_members.entry(cells[b]).or_default().push(b);
        }
        let local = |cell: &Cell, b: usize, members: &BTreeMap<Cell, Vec<usize>>| {
            members[cell].iter().position(|&x| x == b).unwrap()
        };
        for &v in &removed {
            let through: Vec<usize> = (0..d).filter(|&b| self.basis[b].source == v).collect();
            let into: Vec<usize> = (0..d).filter(|&b| self.basis[b].target == v).collect();
            for &x in &into {
                for &y in &through {
                    let prod = self.product(y, x).to_vec();
                    if prod.is_empty() {
                        continue;
                    }
                    let cell = cells[prod[0].0];
                    let n = cell_members[&cell].len();
                    let mut vec = f.zeros(n);
                    for (k, c) in &prod {
                        vec[local(&cell, *k, &cell_members)] = c.clone();
                    }
                    by_cell.entry(cell).or_insert_with(|| Echelon::new(f, n)).insert(&vec);
                }
            }
        }
        // Quotient basis: within each cell, basis elements not at a pivot.
        // Reduction of a basis element to normal form uses the echelon rows.
        let mut keep: Vec<Option<usize>> = vec![None; d];
        let mut next = 0;
        for b in 0..d {
            let cell = cells[b];
            let is_pivot = by_cell
                .get(&cell)
                .map(|e| e.pivots().contains(&local(&cell, b, &cell_members)))
                .unwrap_or(false);
            let at_removed = removed.contains(&cell.0) || removed.contains(&cell.1);
            if !is_pivot && !at_removed {
                keep[b] = Some(next);
                next += 1;
            }
        }
        let mut vmap = vec![None; self.num_vertices()];
        for (i, v) in keep_vertices.iter().enumerate() {
            vmap[*v] = Some(i);
        }
        // Rewrite the multiplication table in normal form.
        let normal = |vecsparse: &SparseVec| -> SparseVec {
            if vecsparse.is_empty() {
                return vec![];
            }
            let cell = cells[vecsparse[0].0];
            let members = &cell_members[&cell];
            let mut v = f.zeros(members.len());
            for (k, c) in vecsparse {
                v[local(&cell, *k, &cell_members)] = c.clone();
            }
            if let Some(e) = by_cell.get(&cell) {
                e.reduce(&mut v);
            }
            members
                .iter()
                .zip(v)
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(b, c)| (*b, c))
                .collect()
        };
        let mut reduced = self.clone();
        for i in 0..d {
            let row: Vec<(usize, SparseVec)> =
                self.mult[i].iter().map(|(j, p)| (*j, normal(p))).filter(|(_, p)| !p.is_empty()).collect();
            reduced.mult[i] = row;
        }
        for g in reduced.generators.iter_mut() {
            g.elem = normal(&g.elem);
        }
        // Words of surviving elements stay valid; elements in the ideal are
        // dropped. Generators at removed vertices disappear.
        reduced.reindexed(&keep, &vmap)
    }

    /// Tensor product over the base field.
    pub fn tensor_product(&self, other: &GradedAlgebra) -> Result<GradedAlgebra> {
        if self.field != other.field {
            return Err(GrexError::InvalidInput("tensor product over different fields".into()));
        }
        let f = self.field;
        let (da, db) = (self.dim(), other.dim());
        let nb = other.num_vertices();
        let idx = |i: usize, j: usize| i * db + j;
        let vidx = |v: usize, w: usize| v * nb + w;
        let mut basis = Vec::with_capacity(da * db);
        for x in &self.basis {
            for y in &other.basis {
                basis.push(BasisElem {
                    label: format!("{}⊗{}", x.label, y.label),
                    grade: x.grade + y.grade,
                    source: vidx(x.source, y.source),
                    target: vidx(x.target, y.target),
                });
            }
        }
        let mut mult = vec![Vec::new(); da * db];
        for i in 0..da {
            for (k, ik) in &self.mult[i] {
                for j in 0..db {
                    for (l, jl) in &other.mult[j] {
                        let mut p = Vec::new();
                        for (m, c) in ik {
                            for (n, c2) in jl {
                                p.push((idx(*m, *n), f.mul(c, c2)));
                            }
                        }
                        p.sort_by_key(|(k, _)| *k);
                        mult[idx(i, j)].push((idx(*k, *l), p));
                    }
                }
            }
        }
        for row in mult.iter_mut() {
            row.sort_by_key(|(k, _)| *k);
        }
        let mut vertices = Vec::new();
        let mut idempotents = Vec::new();
        for (v, lv) in self.vertices.iter().enumerate() {
            for (w, lw) in other.vertices.iter().enumerate() {
                vertices.push(format!("{lv}⊗{lw}"));
                idempotents.push(idx(self.idempotents[v], other.idempotents[w]));
            }
        }
        // Generators g⊗e_w and e_v⊗h.
        let mut generators = Vec::new();
        let mut left_gen = vec![vec![0; nb]; self.generators.len()];
        for (gi, g) in self.generators.iter().enumerate() {
            for w in 0..nb {
                left_gen[gi][w] = generators.len();
                generators.push(Generator {
                    label: format!("{}⊗{}", g.label, other.vertices[w]),
                    source: vidx(g.source, w),
                    target: vidx(g.target, w),
                    grade: g.grade,
                    elem: g.elem.iter().map(|(k, c)| (idx(*k, other.idempotents[w]), c.clone())).collect(),
                });
            }
        }
        let na = self.num_vertices();
        let mut right_gen = vec![vec![0; other.generators.len()]; na];
        for v in 0..na {
            for (hi, h) in other.generators.iter().enumerate() {
                right_gen[v][hi] = generators.len();
                generators.push(Generator {
                    label: format!("{}⊗{}", self.vertices[v], h.label),
                    source: vidx(v, h.source),
                    target: vidx(v, h.target),
                    grade: h.grade,
                    elem: h.elem.iter().map(|(k, c)| (idx(self.idempotents[v], *k), c.clone())).collect(),
                });
            }
        }
        // b_i ⊗ b_j = (b_i ⊗ e_{t(j)}) · (e_{s(i)} ⊗ b_j).
        let mut words = vec![Vec::new(); da * db];
        for i in 0..da {
            for j in 0..db {
                let (bi, bj) = (&self.basis[i], &other.basis[j]);
                let left: WordSum = if self.is_idempotent(i) {
                    vec![(vec![], f.one())]
                } else {
                    self.words[i]
                        .iter()
                        .map(|(w, c)| (w.iter().map(|g| left_gen[*g][bj.target]).collect(), c.clone()))
                        .collect()
                };
                let right: WordSum = if other.is_idempotent(j) {
                    vec![(vec![], f.one())]
                } else {
                    other.words[j]
                        .iter()
                        .map(|(w, c)| (w.iter().map(|h| right_gen[bi.source][*h]).collect(), c.clone()))
                        .collect()
                };
                let mut ws = Vec::new();
                for (w1, c1) in &left {
                    for (w2, c2) in &right {
                        let mut w = w1.clone();
                        w.extend(w2);
                        ws.push((w, f.mul(c1, c2)));
                    }
                }
                if !(self.is_idempotent(i) && other.is_idempotent(j)) {
                    words[idx(i, j)] = ws;
                }
            }
        }
        GradedAlgebra::assemble(f, vertices, basis, mult, idempotents, generators, words)
    }

    /// Build from structure constants with designated idempotents and radical
    /// generators. Each non-idempotent basis element must be homogeneous for
    /// the idempotent decomposition; the builder computes sources and targets,
    /// checks that the radical (span of non-idempotent elements) is a
    /// nilpotent ideal generated by the given elements, and expresses every
    /// radical basis element through generator words.
    pub fn from_structure_constants(
        field: Field,
        vertices: Vec<String>,
        grades: Vec<u32>,
        table: Vec<Vec<SparseVec>>,
        idempotents: Vec<usize>,
        radical_generators: Vec<usize>,
    ) -> Result<GradedAlgebra> {
        let f = field;
        let d = grades.len();
        if table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(GrexError::InvalidInput("multiplication table has the wrong shape".into()));
        }
        if idempotents.len() != vertices.len() {
            return Err(GrexError::InvalidInput("one idempotent per vertex required".into()));
        }
        let lookup = |i: usize, j: usize| -> SparseVec {
            table[i][j].iter().filter(|(_, c)| !f.is_zero(c)).cloned().collect()
        };
        let mut source = vec![None; d];
        let mut target = vec![None; d];
        for b in 0..d {
            for (v, &e) in idempotents.iter().enumerate() {
                let l = lookup(e, b);
                let r = lookup(b, e);
                let unit = vec![(b, f.one())];
                if l == unit {
                    if target[b].replace(v).is_some() {
                        return Err(GrexError::InvalidInput(format!("basis element {b} has two targets")));
                    }
                } else if !l.is_empty() {
                    return Err(GrexError::InvalidInput(format!("basis element {b} is not idempotent-homogeneous")));
                }
                if r == unit {
                    if source[b].replace(v).is_some() {
                        return Err(GrexError::InvalidInput(format!("basis element {b} has two sources")));
                    }
                } else if !r.is_empty() {
                    return Err(GrexError::InvalidInput(format!("basis element {b} is not idempotent-homogeneous")));
                }
            }
        }
        let mut basis = Vec::with_capacity(d);
        for b in 0..d {
            let (Some(s), Some(t)) = (source[b], target[b]) else {
                return Err(GrexError::InvalidInput(format!("idempotents do not sum to 1 on element {b}")));
            };
            basis.push(BasisElem { label: format!("b{b}"), grade: grades[b], source: s, target: t });
        }
        for (v, &e) in idempotents.iter().enumerate() {
            basis[e].label = format!("e_{}", vertices[v]);
        }
        let is_rad = |b: usize| !idempotents.contains(&b);
        for i in 0..d {
            for j in 0..d {
                for (k, _) in lookup(i, j) {
                    if (is_rad(i) || is_rad(j)) && !is_rad(k) {
                        return Err(GrexError::InvalidInput("radical span is not an ideal".into()));
                    }
                }
            }
        }
        let mut mult = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                let p = lookup(i, j);
                if !p.is_empty() {
                    mult[i].push((j, p));
                }
            }
        }
        let generators: Vec<Generator> = radical_generators
            .iter()
            .map(|&g| {
                let b = &basis[g];
                Generator { label: b.label.clone(), source: b.source, target: b.target, grade: b.grade, elem: vec![(g, f.one())] }
            })
            .collect();
        if radical_generators.iter().any(|g| !is_rad(*g)) {
            return Err(GrexError::InvalidInput("radical generators must be radical basis elements".into()));
        }
        // Words: breadth-first products of generators, solved against the basis.
        let mut span = Echelon::tracking(f, d);
        let mut found: Vec<(Vec<usize>, Vec<Scalar>)> = Vec::new();
        let mut frontier: Vec<(Vec<usize>, Vec<Scalar>)> = generators
            .iter()
            .enumerate()
            .map(|(gi, g)| {
                let mut v = f.zeros(d);
                for (k, c) in &g.elem {
                    v[*k] = c.clone();
                }
                (vec![gi], v)
            })
            .collect();
        let proto = GradedAlgebra {
            field: f,
            vertices: vertices.clone(),
            basis: basis.clone(),
            mult: mult.clone(),
            idempotents: idempotents.clone(),
            generators: generators.clone(),
            words: vec![Vec::new(); d],
            presentation: None,
        };
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            if depth > d + 1 {
                return Err(GrexError::InvalidInput("radical is not nilpotent".into()));
            }
            let mut next = Vec::new();
            for (w, v) in frontier {
                if f.is_zero_vec(&v) {
                    continue;
                }
                if span.insert(&v) {
                    found.push((w.clone(), v.clone()));
                    for (gi, g) in generators.iter().enumerate() {
                        let mut gv = f.zeros(d);
                        for (k, c) in &g.elem {
                            gv[*k] = c.clone();
                        }
                        let prod = proto.mul_dense(&gv, &v);
                        let mut nw = vec![gi];
                        nw.extend(&w);
                        next.push((nw, prod));
                    }
                }
            }
            frontier = next;
        }
        if span.dim() != d - idempotents.len() {
            return Err(GrexError::InvalidInput("generators do not generate the radical".into()));
        }
        let mut words = vec![Vec::new(); d];
        for b in (0..d).filter(|b| is_rad(*b)) {
            let coords = span.solve(&f.unit_vector(d, b)).expect("radical element in span");
            words[b] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(i, c)| (found[i].0.clone(), c))
                .collect();
        }
        GradedAlgebra::assemble(f, vertices, basis, mult, idempotents, generators, words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;

    #[test]
    fn build_examples() {
        assert_eq!(dual_numbers(2).graded_dims(), vec![1, 1]);
        assert_eq!(truncated_poly(2, 3).graded_dims(), vec![1, 1, 1]);
        let a = two_cycle(2);
        assert_eq!(a.dim(), 5);
        let labels: Vec<&str> = a.basis.iter().map(|b| b.label.as_str()).collect();
        assert!(labels.contains(&"b·a"));
        assert!(!labels.contains(&"a·b"));
    }

    #[test]
    fn opposite_involution() {
        let a = two_cycle(3);
        let aa = a.opposite().opposite();
        assert_eq!(a, aa);
        let d = dual_numbers(2);
        assert_eq!(d.opposite(), d);
    }

    #[test]
    fn path_algebra_opposite_reverses_arrow() {
        let a = quiver(2, &["1", "2"], &[("a", "1", "2", 1)], &[]);
        let op = a.opposite();
        let g = &op.generators[0];
        assert_eq!((g.source, g.target), (1, 0));
    }

    #[test]
    fn grade_zero_examples() {
        let (a0, pi) = dual_numbers(2).grade_zero();
        assert_eq!(a0.dim(), 1);
        assert_eq!(pi.iter().filter(|x| x.is_none()).count(), 1);
        assert_eq!(two_cycle(2).grade_zero().0.dim(), 2);
        let a = quiver(2, &["1", "2"], &[("z", "1", "2", 0), ("x", "2", "2", 1)], &[&[(1, "x x")]]);
        let (a0, _) = a.grade_zero();
        assert_eq!(a0.dim(), 3);
        assert_eq!(a0.generators.len(), 1);
    }

    #[test]
    fn tensor_examples() {
        let d = dual_numbers(2);
        let t = d.tensor_product(&d).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.graded_dims(), vec![1, 2, 1]);
        let k = quiver(2, &["1"], &[], &[]);
        assert_eq!(two_cycle(2).tensor_product(&k).unwrap().dim(), 5);
        let (a0, _) = two_cycle(2).grade_zero();
        assert_eq!(a0.tensor_product(&a0.opposite()).unwrap().dim(), a0.dim() * a0.dim());
    }

    #[test]
    fn idempotent_quotient_to_field() {
        let a = two_cycle(2);
        let q = a.idempotent_quotient(&[0]).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(a.idempotent_quotient(&[0, 1]).unwrap().dim(), 5);
    }

    #[test]
    fn structure_constant_roundtrip() {
        let a = truncated_poly(3, 3);
        let d = a.dim();
        let f = a.field;
        let table: Vec<Vec<SparseVec>> =
            (0..d).map(|i| (0..d).map(|j| a.product(i, j).to_vec()).collect()).collect();
        let grades = a.basis.iter().map(|b| b.grade).collect();
        let x = a.basis.iter().position(|b| b.grade == 1).unwrap();
        let b = GradedAlgebra::from_structure_constants(f, a.vertices.clone(), grades, table, a.idempotents.clone(), vec![x])
            .unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.words(2).len(), 1);
    }
}
