//! Finite-dimensional graded left modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{GrexError, Result};
use crate::exact::{Echelon, Field, Scalar};
use crate::gradalg::{GradedAlgebra, GradedBimodule, SparseVec};

/// Homogeneous basis vector: its grade and the vertex `v` with `e_v m = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModElem {
    pub grade: i32,
    pub vertex: usize,
}

/// Cell key `(vertex, grade)`.
pub type ModCell = (usize, i32);

#[derive(Clone, Debug)]
pub struct GradedModule {
    pub algebra: Arc<GradedAlgebra>,
    pub basis: Vec<ModElem>,
    /// `act[b][m] = b_b · m_m`.
    act: Vec<Vec<SparseVec>>,
}

pub(crate) fn add_into(f: Field, acc: &mut BTreeMap<usize, Scalar>, k: usize, c: &Scalar) {
    let e = acc.entry(k).or_insert_with(|| f.zero());
    *e = f.add(e, c);
}

pub(crate) fn finish(f: Field, acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
}

pub(crate) fn sparse_to_dense(f: Field, n: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = f.zeros(n);
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

/// Linear combination `Σ c · vecs[k]` of sparse vectors.
pub(crate) fn combine(f: Field, coeffs: &SparseVec, vecs: &[SparseVec]) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (k, c) in coeffs {
        for (j, d) in &vecs[*k] {
            add_into(f, &mut acc, *j, &f.mul(c, d));
        }
    }
    finish(f, acc)
}

impl GradedModule {
    /// Module given by the action of each algebra generator; the action of
    /// every basis element is derived from its generator words and the
    /// module axioms are verified.
    pub fn from_generator_action(
        algebra: Arc<GradedAlgebra>,
        basis: Vec<ModElem>,
        gen_act: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let f = algebra.field;
        if gen_act.len() != algebra.generators.len() || gen_act.iter().any(|g| g.len() != basis.len()) {
            return Err(GrexError::InvalidInput("generator action table has the wrong shape".into()));
        }
        let d = basis.len();
        let mut act = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            let mut col = Vec::with_capacity(d);
            for m in 0..d {
                if let Some(v) = algebra.idempotents.iter().position(|&e| e == b) {
                    col.push(if basis[m].vertex == v { vec![(m, f.one())] } else { vec![] });
                    continue;
                }
                let mut acc = BTreeMap::new();
                for (word, c) in algebra.words(b) {
                    let mut v: SparseVec = vec![(m, c.clone())];
                    for g in word.iter().rev() {
                        v = combine(f, &v, &gen_act[*g]);
                    }
                    for (k, x) in v {
                        add_into(f, &mut acc, k, &x);
                    }
                }
                col.push(finish(f, acc));
            }
            act.push(col);
        }
        let m = GradedModule { algebra, basis, act };
        m.verify()?;
        for (g, gen) in m.algebra.generators.iter().enumerate() {
            for (k, col) in gen_act[g].iter().enumerate() {
                let expect = m.apply_element(&gen.elem, &vec![(k, f.one())]);
                if *col != expect {
                    return Err(GrexError::InvalidInput(format!("action of generator {} is inconsistent", gen.label)));
                }
            }
        }
        Ok(m)
    }

    /// Check grading, idempotent decomposition and associativity of the action.
    pub fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field;
        let bad = |m: String| Err(GrexError::Structural(m));
        for (b, col) in self.act.iter().enumerate() {
            let be = &a.basis[b];
            for (m, img) in col.iter().enumerate() {
                let me = self.basis[m];
                if !img.is_empty() && me.vertex != be.source {
                    return bad(format!("{} acts on a vector at the wrong vertex", be.label));
                }
                for (k, _) in img {
                    let ke = self.basis[*k];
                    if ke.vertex != be.target || ke.grade != me.grade + be.grade as i32 {
                        return bad(format!("action of {} is not homogeneous", be.label));
                    }
                }
            }
        }
        for (v, &e) in a.idempotents.iter().enumerate() {
            for m in 0..self.dim() {
                let expect = if self.basis[m].vertex == v { vec![(m, f.one())] } else { vec![] };
                if self.act[e][m] != expect {
                    return bad(format!("e_{} is not the projection onto its component", a.vertices[v]));
                }
            }
        }
        for m in 0..self.dim() {
            let images: Vec<SparseVec> = self.act.iter().map(|c| c[m].clone()).collect();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    if a.basis[i].source != a.basis[j].target || images[j].is_empty() {
                        continue;
                    }
                    let lhs = self.apply(i, &images[j]);
                    let rhs = combine(f, &a.product(i, j).to_vec(), &images);
                    if lhs != rhs {
                        return bad(format!("action is not associative on ({i},{j})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `b · m` for basis elements.
    pub fn act(&self, b: usize, m: usize) -> &SparseVec {
        &self.act[b][m]
    }

    /// `b · v`.
    pub fn apply(&self, b: usize, v: &SparseVec) -> SparseVec {
        combine(self.field(), v, &self.act[b])
    }

    /// `x · v` for an algebra element `x` given sparsely.
    pub fn apply_element(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut acc = BTreeMap::new();
        for (b, c) in x {
            for (k, y) in self.apply(*b, v) {
                add_into(f, &mut acc, k, &f.mul(c, &y));
            }
        }
        finish(f, acc)
    }

    /// Action of generator `g` on `v`.
    pub fn apply_generator(&self, g: usize, v: &SparseVec) -> SparseVec {
        let elem = self.algebra.generators[g].elem.clone();
        self.apply_element(&elem, v)
    }

    pub fn cell(&self, m: usize) -> ModCell {
        (self.basis[m].vertex, self.basis[m].grade)
    }

    /// Basis indices per `(vertex, grade)` cell.
    pub fn cells(&self) -> BTreeMap<ModCell, Vec<usize>> {
        let mut out: BTreeMap<ModCell, Vec<usize>> = BTreeMap::new();
        for m in 0..self.dim() {
            out.entry(self.cell(m)).or_default().push(m);
        }
        out
    }

    /// Graded composition multiplicities `[M : L(v)⟨g⟩]`.
    pub fn composition(&self) -> BTreeMap<ModCell, usize> {
        self.cells().into_iter().map(|(c, v)| (c, v.len())).collect()
    }

    /// Ungraded multiplicities `[M : L(v)]` indexed by vertex.
    pub fn vertex_multiplicities(&self) -> Vec<usize> {
        let mut out = vec![0; self.algebra.num_vertices()];
        for e in &self.basis {
            out[e.vertex] += 1;
        }
        out
    }

    pub fn min_grade(&self) -> Option<i32> {
        self.basis.iter().map(|e| e.grade).min()
    }

    pub fn max_grade(&self) -> Option<i32> {
        self.basis.iter().map(|e| e.grade).max()
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Self {
        let n = algebra.dim();
        GradedModule { algebra, basis: vec![], act: vec![vec![]; n] }
    }

    /// `A e_v ⟨shift⟩`, with basis the algebra basis elements with source `v`.
    pub fn projective(algebra: Arc<GradedAlgebra>, v: usize, shift: i32) -> Self {
        Self::free(algebra, &[(v, shift)])
    }

    /// `⊕ A e_v ⟨s⟩`.
    pub fn free(algebra: Arc<GradedAlgebra>, summands: &[(usize, i32)]) -> Self {
        let a = &algebra;
        let mut basis = Vec::new();
        let mut local: Vec<BTreeMap<usize, usize>> = Vec::new();
        for &(v, s) in summands {
            let mut map = BTreeMap::new();
            for b in a.projective_basis(v) {
                map.insert(b, basis.len());
                basis.push(ModElem { grade: a.basis[b].grade as i32 + s, vertex: a.basis[b].target });
            }
            local.push(map);
        }
        let mut act = vec![vec![Vec::new(); basis.len()]; a.dim()];
        for map in &local {
            for (&b, &m) in map {
                for x in 0..a.dim() {
                    let prod = a.product(x, b);
                    act[x][m] = prod.iter().map(|(k, c)| (map[k], c.clone())).collect();
                }
            }
        }
        GradedModule { algebra, basis, act }
    }

    /// The simple module `L(v)⟨shift⟩`.
    pub fn simple(algebra: Arc<GradedAlgebra>, v: usize, shift: i32) -> Self {
        let f = algebra.field;
        let mut act = vec![vec![vec![]]; algebra.dim()];
        act[algebra.idempotents[v]][0] = vec![(0, f.one())];
        GradedModule { algebra, basis: vec![ModElem { grade: shift, vertex: v }], act }
    }

    /// `M⟨r⟩`, with `M⟨r⟩_i = M_{i−r}`.
    pub fn shift(&self, r: i32) -> Self {
        let mut out = self.clone();
        for e in out.basis.iter_mut() {
            e.grade += r;
        }
        out
    }

    /// The same module over `algebra`, a regrading of the original algebra on
    /// the same basis, with every grade replaced by `grade_of`.
    pub fn regrade(&self, algebra: Arc<GradedAlgebra>, grade_of: impl Fn(i32) -> i32) -> Self {
        let mut out = self.clone();
        out.algebra = algebra;
        for e in out.basis.iter_mut() {
            e.grade = grade_of(e.grade);
        }
        out
    }

    /// The module with all grades set to 0, over the ungraded algebra.
    pub fn forget_grading(&self, ungraded: Arc<GradedAlgebra>) -> Self {
        self.regrade(ungraded, |_| 0)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Self {
        let n = self.dim();
        let mut basis = self.basis.clone();
        basis.extend(&other.basis);
        let act = (0..self.algebra.dim())
            .map(|b| {
                let mut col = self.act[b].clone();
                col.extend(other.act[b].iter().map(|v| v.iter().map(|(k, c)| (k + n, c.clone())).collect()));
                col
            })
            .collect();
        GradedModule { algebra: self.algebra.clone(), basis, act }
    }

    /// Split each vector into its `(vertex, grade)` components.
    pub fn homogeneous_components(&self, v: &SparseVec) -> Vec<SparseVec> {
        let mut by: BTreeMap<ModCell, SparseVec> = BTreeMap::new();
        for (k, c) in v {
            by.entry(self.cell(*k)).or_default().push((*k, c.clone()));
        }
        by.into_values().collect()
    }

    /// Basis (homogeneous vectors) of the graded submodule generated by the
    /// homogeneous components of `gens`.
    pub fn submodule_generated(&self, gens: &[SparseVec]) -> Vec<SparseVec> {
        let f = self.field();
        let cells = self.cells();
        let pos: Vec<usize> = {
            let mut p = vec![0; self.dim()];
            for ms in cells.values() {
                for (i, m) in ms.iter().enumerate() {
                    p[*m] = i;
                }
            }
            p
        };
        let mut ech: BTreeMap<ModCell, Echelon> = BTreeMap::new();
        let mut out = Vec::new();
        let mut queue: Vec<SparseVec> = gens.iter().flat_map(|g| self.homogeneous_components(g)).collect();
        while let Some(v) = queue.pop() {
            if v.is_empty() {
                continue;
            }
            let c = self.cell(v[0].0);
            let members = &cells[&c];
            let mut dense = f.zeros(members.len());
            for (k, x) in &v {
                dense[pos[*k]] = x.clone();
            }
            let e = ech.entry(c).or_insert_with(|| Echelon::new(f, members.len()));
            if e.insert(&dense) {
                for g in 0..self.algebra.generators.len() {
                    let w = self.apply_generator(g, &v);
                    if !w.is_empty() {
                        queue.push(w);
                    }
                }
                out.push(v);
            }
        }
        out
    }

    /// `rad M = Σ_g g·M` as a list of homogeneous spanning vectors.
    pub fn radical_span(&self, of: &[SparseVec]) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for g in 0..self.algebra.generators.len() {
            for v in of {
                let w = self.apply_generator(g, v);
                if !w.is_empty() {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Submodule with basis `vecs` (homogeneous, closed under the action),
    /// returned as a module in its own right.
    pub fn submodule(&self, vecs: &[SparseVec]) -> Result<GradedModule> {
        let f = self.field();
        let d = self.dim();
        let mut basis = Vec::new();
        let mut ech: BTreeMap<ModCell, (Echelon, Vec<usize>)> = BTreeMap::new();
        for (i, v) in vecs.iter().enumerate() {
            let Some(&(k0, _)) = v.first() else {
                return Err(GrexError::InvalidInput("zero vector in submodule basis".into()));
            };
            let c = self.cell(k0);
            if v.iter().any(|(k, _)| self.cell(*k) != c) {
                return Err(GrexError::InvalidInput("submodule basis must be homogeneous".into()));
            }
            basis.push(ModElem { grade: c.1, vertex: c.0 });
            let e = ech.entry(c).or_insert_with(|| (Echelon::tracking(f, d), vec![]));
            if !e.0.insert(&sparse_to_dense(f, d, v)) {
                return Err(GrexError::InvalidInput("submodule basis is linearly dependent".into()));
            }
            e.1.push(i);
        }
        let mut act = Vec::with_capacity(self.algebra.dim());
        for b in 0..self.algebra.dim() {
            let mut col = Vec::with_capacity(vecs.len());
            for v in vecs {
                let w = self.apply(b, v);
                if w.is_empty() {
                    col.push(vec![]);
                    continue;
                }
                let c = self.cell(w[0].0);
                let (e, idx) = ech
                    .get(&c)
                    .ok_or_else(|| GrexError::InvalidInput("span is not a submodule".into()))?;
                let coords = e
                    .solve(&sparse_to_dense(f, d, &w))
                    .ok_or_else(|| GrexError::InvalidInput("span is not a submodule".into()))?;
                col.push(coords.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(i, x)| (idx[i], x)).collect());
            }
            act.push(col);
        }
        Ok(GradedModule { algebra: self.algebra.clone(), basis, act })
    }

    /// `M / U` for a submodule `U` spanned by homogeneous vectors. Returns the
    /// quotient and the image of each basis vector of `M`.
    pub fn quotient(&self, sub: &[SparseVec]) -> (GradedModule, Vec<SparseVec>) {
        let f = self.field();
        let cells = self.cells();
        let mut pos = vec![0; self.dim()];
        for ms in cells.values() {
            for (i, m) in ms.iter().enumerate() {
                pos[*m] = i;
            }
        }
        let mut ech: BTreeMap<ModCell, Echelon> = BTreeMap::new();
        for v in sub {
            for comp in self.homogeneous_components(v) {
                let c = self.cell(comp[0].0);
                let n = cells[&c].len();
                let mut dense = f.zeros(n);
                for (k, x) in &comp {
                    dense[pos[*k]] = x.clone();
                }
                ech.entry(c).or_insert_with(|| Echelon::new(f, n)).insert(&dense);
            }
        }
        let mut new_index = vec![None; self.dim()];
        let mut basis = Vec::new();
        for (c, ms) in &cells {
            let piv: Vec<usize> = ech.get(c).map(|e| e.pivots().to_vec()).unwrap_or_default();
            for (i, m) in ms.iter().enumerate() {
                if !piv.contains(&i) {
                    new_index[*m] = Some(basis.len());
                    basis.push(self.basis[*m]);
                }
            }
        }
        let project = |v: &SparseVec| -> SparseVec {
            let mut acc = BTreeMap::new();
            for comp in self.homogeneous_components(v) {
                let c = self.cell(comp[0].0);
                let ms = &cells[&c];
                let mut dense = f.zeros(ms.len());
                for (k, x) in &comp {
                    dense[pos[*k]] = x.clone();
                }
                if let Some(e) = ech.get(&c) {
                    e.reduce(&mut dense);
                }
                for (i, x) in dense.iter().enumerate() {
                    if !f.is_zero(x) {
                        add_into(f, &mut acc, new_index[ms[i]].expect("reduced off pivots"), x);
                    }
                }
            }
            finish(f, acc)
        };
        let proj: Vec<SparseVec> = (0..self.dim()).map(|m| project(&vec![(m, f.one())])).collect();
        let reps: Vec<usize> = {
            let mut r = vec![0; basis.len()];
            for (m, n) in new_index.iter().enumerate() {
                if let Some(n) = n {
                    r[*n] = m;
                }
            }
            r
        };
        let act = (0..self.algebra.dim())
            .map(|b| reps.iter().map(|&m| combine(f, &self.act[b][m], &proj)).collect())
            .collect();
        (GradedModule { algebra: self.algebra.clone(), basis, act }, proj)
    }

    /// The linear dual `Hom_k(M, k)` as a left module over the opposite
    /// algebra `op` (which must share this algebra's basis). Grades negate.
    pub fn dual(&self, op: Arc<GradedAlgebra>) -> GradedModule {
        let f = self.field();
        let basis = self.basis.iter().map(|e| ModElem { grade: -e.grade, vertex: e.vertex }).collect();
        let mut act = vec![vec![Vec::new(); self.dim()]; self.algebra.dim()];
        for (b, col) in self.act.iter().enumerate() {
            let mut t: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.dim()];
            for (x, img) in col.iter().enumerate() {
                for (m, c) in img {
                    add_into(f, &mut t[*m], x, c);
                }
            }
            act[b] = t.into_iter().map(|acc| finish(f, acc)).collect();
        }
        GradedModule { algebra: op, basis, act }
    }

    /// Inflate an `A₀`-module along `π: A ↠ A₀` (given as the `A₀` index of
    /// each grade-0 basis element of `A`).
    pub fn inflate(a: Arc<GradedAlgebra>, pi: &[Option<usize>], n: &GradedModule) -> GradedModule {
        let act = (0..a.dim())
            .map(|b| match pi[b] {
                Some(b0) if a.basis[b].grade == 0 => n.act[b0].clone(),
                _ => vec![Vec::new(); n.dim()],
            })
            .collect();
        GradedModule { algebra: a, basis: n.basis.clone(), act }
    }

    /// The grade-`g` part `M_g` as an `A₀`-module.
    pub fn grade_part(&self, a0: Arc<GradedAlgebra>, pi: &[Option<usize>], g: i32) -> GradedModule {
        let keep: Vec<usize> = (0..self.dim()).filter(|&m| self.basis[m].grade == g).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut act = vec![Vec::new(); a0.dim()];
        for (b, p) in pi.iter().enumerate() {
            if let Some(b0) = p {
                act[*b0] = keep
                    .iter()
                    .map(|&m| self.act[b][m].iter().map(|(k, c)| (pos[k], c.clone())).collect())
                    .collect();
            }
        }
        let basis = keep.iter().map(|&m| self.basis[m]).collect();
        GradedModule { algebra: a0, basis, act }
    }

    /// An `(A₀, A₀)`-bimodule as a left module over `env = A₀ ⊗ A₀^op`
    /// (built by `tensor_product`), with `(x⊗y)·m = x·m·y`.
    pub fn from_bimodule(bm: &GradedBimodule, env: Arc<GradedAlgebra>) -> Result<GradedModule> {
        let (da, nv) = (bm.left.dim(), bm.left.num_vertices());
        if env.dim() != da * bm.right.dim() || env.num_vertices() != nv * bm.right.num_vertices() {
            return Err(GrexError::InvalidInput("enveloping algebra does not match the bimodule".into()));
        }
        let f = bm.field();
        let db = bm.right.dim();
        let basis = bm.basis.iter().map(|e| ModElem { grade: e.grade, vertex: e.left_vertex * nv + e.right_vertex }).collect();
        let mut act = vec![Vec::new(); env.dim()];
        for x in 0..da {
            for y in 0..db {
                act[x * db + y] = (0..bm.dim())
                    .map(|m| {
                        let mut acc = BTreeMap::new();
                        for (k, c) in bm.act_left(x, m) {
                            for (l, d) in bm.act_right(*k, y) {
                                add_into(f, &mut acc, *l, &f.mul(c, d));
                            }
                        }
                        finish(f, acc)
                    })
                    .collect();
            }
        }
        let m = GradedModule { algebra: env, basis, act };
        m.verify()?;
        Ok(m)
    }

    /// Basis of the submodule `M_{≥g}`.
    pub fn grades_at_least(&self, g: i32) -> Vec<SparseVec> {
        let f = self.field();
        (0..self.dim()).filter(|&m| self.basis[m].grade >= g).map(|m| vec![(m, f.one())]).collect()
    }
}
