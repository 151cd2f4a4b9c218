//! Graded bimodules and tensor products over a common algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{GradedAlgebra, SparseVec};
use crate::error::{GrexError, Result};
use crate::exact::{Echelon, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleElem {
    pub grade: i32,
    pub left_vertex: usize,
    pub right_vertex: usize,
}

/// A graded `(L, R)`-bimodule with vertex-homogeneous basis.
#[derive(Clone, Debug)]
pub struct GradedBimodule {
    pub left: Arc<GradedAlgebra>,
    pub right: Arc<GradedAlgebra>,
    pub basis: Vec<BimoduleElem>,
    /// `left_act[a][m] = b_a · m_m`.
    left_act: Vec<Vec<SparseVec>>,
    /// `right_act[b][m] = m_m · b_b`.
    right_act: Vec<Vec<SparseVec>>,
}

/// `M ⊗_{A₀} N` with a representative pair for each basis vector.
/// `(left vertex, right vertex, grade)` of a pair cell.
type CellKey = (usize, usize, i32);

#[derive(Clone, Debug)]
pub struct TensorQuotient {
    pub bimodule: GradedBimodule,
    /// Representative `(m, n)` pair of each quotient basis vector.
    pub reps: Vec<(usize, usize)>,
    cells: BTreeMap<CellKey, PairCell>,
    index: BTreeMap<(usize, usize), (CellKey, usize)>,
}

#[derive(Clone, Debug)]
struct PairCell {
    pairs: Vec<(usize, usize)>,
    relations: Echelon,
    /// Quotient basis index of each non-pivot column.
    out_index: Vec<Option<usize>>,
}

fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn add_into(f: Field, acc: &mut BTreeMap<usize, Scalar>, k: usize, c: &Scalar) {
    let e = acc.entry(k).or_insert_with(|| f.zero());
    *e = f.add(e, c);
}

fn to_sparse(f: Field, acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
}

impl GradedBimodule {
    pub fn new(
        left: Arc<GradedAlgebra>,
        right: Arc<GradedAlgebra>,
        basis: Vec<BimoduleElem>,
        left_act: Vec<Vec<SparseVec>>,
        right_act: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let m = GradedBimodule { left, right, basis, left_act, right_act };
        m.verify()?;
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.left.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn act_left(&self, a: usize, m: usize) -> &SparseVec {
        &self.left_act[a][m]
    }

    pub fn act_right(&self, m: usize, b: usize) -> &SparseVec {
        &self.right_act[b][m]
    }

    fn apply_left(&self, a: usize, v: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut acc = BTreeMap::new();
        for (k, c) in v {
            for (j, d) in &self.left_act[a][*k] {
                add_into(f, &mut acc, *j, &f.mul(c, d));
            }
        }
        to_sparse(f, acc)
    }

    fn apply_right(&self, v: &SparseVec, b: usize) -> SparseVec {
        let f = self.field();
        let mut acc = BTreeMap::new();
        for (k, c) in v {
            for (j, d) in &self.right_act[b][*k] {
                add_into(f, &mut acc, *j, &f.mul(c, d));
            }
        }
        to_sparse(f, acc)
    }

    fn verify(&self) -> Result<()> {
        let f = self.field();
        let (l, r) = (&self.left, &self.right);
        if l.field != r.field {
            return Err(GrexError::InvalidInput("bimodule over different fields".into()));
        }
        let bad = |m: &str| Err(GrexError::Structural(m.to_string()));
        if self.left_act.len() != l.dim() || self.right_act.len() != r.dim() {
            return bad("action tables have the wrong size");
        }
        for m in 0..self.dim() {
            let e = &self.basis[m];
            for a in 0..l.dim() {
                for (k, _) in &self.left_act[a][m] {
                    let ek = &self.basis[*k];
                    let ba = &l.basis[a];
                    if ek.grade != e.grade + ba.grade as i32 || ek.right_vertex != e.right_vertex || ba.source != e.left_vertex || ek.left_vertex != ba.target {
                        return bad("left action not homogeneous");
                    }
                }
            }
            for b in 0..r.dim() {
                for (k, _) in &self.right_act[b][m] {
                    let ek = &self.basis[*k];
                    let bb = &r.basis[b];
                    if ek.grade != e.grade + bb.grade as i32 || ek.left_vertex != e.left_vertex || bb.target != e.right_vertex || ek.right_vertex != bb.source {
                        return bad("right action not homogeneous");
                    }
                }
            }
            let unit = vec![(m, f.one())];
            if self.left_act[l.idempotents[e.left_vertex]][m] != unit || self.right_act[r.idempotents[e.right_vertex]][m] != unit {
                return bad("idempotents do not act as identity on their component");
            }
        }
        // Associativity of each action and commutation, on all basis triples.
        for m in 0..self.dim() {
            let v = vec![(m, f.one())];
            for a in 0..l.dim() {
                let am = self.apply_left(a, &v);
                for a2 in 0..l.dim() {
                    let lhs = self.apply_left(a2, &am);
                    let mut acc = BTreeMap::new();
                    for (k, c) in l.product(a2, a) {
                        for (j, d) in &self.left_act[*k][m] {
                            add_into(f, &mut acc, *j, &f.mul(c, d));
                        }
                    }
                    if lhs != to_sparse(f, acc) {
                        return bad("left action is not associative");
                    }
                }
                for b in 0..r.dim() {
                    if self.apply_right(&am, b) != self.apply_left(a, &self.right_act[b][m]) {
                        return bad("left and right actions do not commute");
                    }
                }
            }
            for b in 0..r.dim() {
                let mb = self.apply_right(&v, b);
                for b2 in 0..r.dim() {
                    let lhs = self.apply_right(&mb, b2);
                    let mut acc = BTreeMap::new();
                    for (k, c) in r.product(b, b2) {
                        for (j, d) in &self.right_act[*k][m] {
                            add_into(f, &mut acc, *j, &f.mul(c, d));
                        }
                    }
                    if lhs != to_sparse(f, acc) {
                        return bad("right action is not associative");
                    }
                }
            }
        }
        Ok(())
    }

    /// The grades `grades` of `A` as an `(A₀, A₀)`-bimodule; `a0` must be the
    /// grade-zero algebra of `A` with projection `pi`.
    pub fn from_algebra_grades(
        a: &GradedAlgebra,
        a0: Arc<GradedAlgebra>,
        pi: &[Option<usize>],
        grades: &[u32],
    ) -> Result<Self> {
        let keep: Vec<usize> = (0..a.dim()).filter(|&b| grades.contains(&a.basis[b].grade)).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let lift: Vec<usize> = {
            let mut l = vec![0; a0.dim()];
            for (b, p) in pi.iter().enumerate() {
                if let Some(p) = p {
                    l[*p] = b;
                }
            }
            l
        };
        let basis = keep
            .iter()
            .map(|&b| BimoduleElem {
                grade: a.basis[b].grade as i32,
                left_vertex: a.basis[b].target,
                right_vertex: a.basis[b].source,
            })
            .collect();
        let restrict = |v: &[(usize, Scalar)]| -> SparseVec {
            v.iter().map(|(k, c)| (pos[k], c.clone())).collect()
        };
        let left_act = (0..a0.dim())
            .map(|x| keep.iter().map(|&m| restrict(a.product(lift[x], m))).collect())
            .collect();
        let right_act = (0..a0.dim())
            .map(|x| keep.iter().map(|&m| restrict(a.product(m, lift[x]))).collect())
            .collect();
        GradedBimodule::new(a0.clone(), a0, basis, left_act, right_act)
    }

    /// Sub-bimodule spanned by `gens` (dense vectors); fails unless the span
    /// is closed under both actions.
    pub fn subbimodule(&self, gens: &[Vec<Scalar>]) -> Result<(GradedBimodule, Vec<Vec<Scalar>>)> {
        let f = self.field();
        let d = self.dim();
        let mut ech = Echelon::tracking(f, d);
        let mut basis_vecs = Vec::new();
        for g in gens {
            if ech.insert(g) {
                basis_vecs.push(g.clone());
            }
        }
        // Homogeneity of each generator is required so that the new basis
        // has well-defined grades and vertices.
        let mut elems = Vec::new();
        for v in &basis_vecs {
            let supp: Vec<usize> = (0..d).filter(|&k| !f.is_zero(&v[k])).collect();
            let e0 = &self.basis[supp[0]];
            if supp.iter().any(|&k| self.basis[k] != *e0) {
                return Err(GrexError::InvalidInput("sub-bimodule generators must be homogeneous".into()));
            }
            elems.push(e0.clone());
        }
        let mut basis_ech = Echelon::tracking(f, d);
        for v in &basis_vecs {
            basis_ech.insert(v);
        }
        let to_dense = |s: &SparseVec| {
            let mut v = f.zeros(d);
            for (k, c) in s {
                v[*k] = c.clone();
            }
            v
        };
        let coords = |v: &[Scalar]| -> Result<SparseVec> {
            let c = basis_ech
                .solve(v)
                .ok_or_else(|| GrexError::InvalidInput("span is not closed under the actions".into()))?;
            Ok(c.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect())
        };
        let image = |act: &dyn Fn(&SparseVec) -> SparseVec| -> Result<Vec<SparseVec>> {
            basis_vecs
                .iter()
                .map(|v| {
                    let sv: SparseVec = v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(k, x)| (k, x.clone())).collect();
                    coords(&to_dense(&act(&sv)))
                })
                .collect()
        };
        let mut left_act = Vec::new();
        for a in 0..self.left.dim() {
            left_act.push(image(&|v| self.apply_left(a, v))?);
        }
        let mut right_act = Vec::new();
        for b in 0..self.right.dim() {
            right_act.push(image(&|v| self.apply_right(v, b))?);
        }
        let sub = GradedBimodule::new(self.left.clone(), self.right.clone(), elems, left_act, right_act)?;
        Ok((sub, basis_vecs))
    }
}

impl TensorQuotient {
    /// Normal form in the quotient of `Σ c·(m ⊗ n)`.
    pub fn reduce_pairs(&self, terms: &[((usize, usize), Scalar)]) -> SparseVec {
        let f = self.bimodule.field();
        let mut by_cell: BTreeMap<(usize, usize, i32), Vec<Scalar>> = BTreeMap::new();
        for ((m, n), c) in terms {
            let Some(&(key, col)) = self.index.get(&(*m, *n)) else { continue };
            let cell = &self.cells[&key];
            let v = by_cell.entry(key).or_insert_with(|| f.zeros(cell.pairs.len()));
            let cur = v[col].clone();
            v[col] = f.add(&cur, c);
        }
        let mut acc = BTreeMap::new();
        for (key, mut v) in by_cell {
            let cell = &self.cells[&key];
            cell.relations.reduce(&mut v);
            for (k, c) in v.iter().enumerate() {
                if !f.is_zero(c) {
                    add_into(f, &mut acc, cell.out_index[k].expect("reduced vector off the pivots"), c);
                }
            }
        }
        to_sparse(f, acc)
    }
}

/// `M ⊗_{A₀} N = (M ⊗_k N) / span{ m·a ⊗ n − m ⊗ a·n }`.
pub fn bimodule_tensor_a0(m: &GradedBimodule, n: &GradedBimodule) -> Result<TensorQuotient> {
    if !same_algebra(&m.right, &n.left) {
        return Err(GrexError::InvalidInput("right algebra of the first factor must be the left algebra of the second".into()));
    }
    let f = m.field();
    let mid = m.right.clone();
    // Pairs that survive the idempotent relations, grouped by cell.
    let mut cells: BTreeMap<(usize, usize, i32), PairCell> = BTreeMap::new();
    for (i, ei) in m.basis.iter().enumerate() {
        for (j, ej) in n.basis.iter().enumerate() {
            if ei.right_vertex == ej.left_vertex {
                let key = (ei.left_vertex, ej.right_vertex, ei.grade + ej.grade);
                cells
                    .entry(key)
                    .or_insert_with(|| PairCell { pairs: vec![], relations: Echelon::new(f, 0), out_index: vec![] })
                    .pairs
                    .push((i, j));
            }
        }
    }
    let index: BTreeMap<(usize, usize), (CellKey, usize)> = cells
        .iter()
        .flat_map(|(k, c)| c.pairs.iter().enumerate().map(move |(i, p)| (*p, (*k, i))))
        .collect();
    for c in cells.values_mut() {
        c.relations = Echelon::new(f, c.pairs.len());
    }
    for a in (0..mid.dim()).filter(|a| !mid.is_idempotent(*a)) {
        let ba = &mid.basis[a];
        for (i, ei) in m.basis.iter().enumerate() {
            if ei.right_vertex != ba.target {
                continue;
            }
            for (j, ej) in n.basis.iter().enumerate() {
                if ej.left_vertex != ba.source {
                    continue;
                }
                let key = (ei.left_vertex, ej.right_vertex, ei.grade + ej.grade + ba.grade as i32);
                let Some(cell) = cells.get_mut(&key) else { continue };
                let mut v = f.zeros(cell.pairs.len());
                for (k, c) in m.act_right(i, a) {
                    let (_, col) = index[&(*k, j)];
                    v[col] = f.add(&v[col], c);
                }
                for (k, c) in n.act_left(a, j) {
                    let (_, col) = index[&(i, *k)];
                    v[col] = f.sub(&v[col], c);
                }
                cell.relations.insert(&v);
            }
        }
    }
    let mut reps = Vec::new();
    let mut basis = Vec::new();
    for (key, c) in cells.iter_mut() {
        c.out_index = vec![None; c.pairs.len()];
        for k in 0..c.pairs.len() {
            if !c.relations.pivots().contains(&k) {
                c.out_index[k] = Some(reps.len());
                reps.push(c.pairs[k]);
                basis.push(BimoduleElem { grade: key.2, left_vertex: key.0, right_vertex: key.1 });
            }
        }
    }
    let mut tq = TensorQuotient {
        bimodule: GradedBimodule {
            left: m.left.clone(),
            right: n.right.clone(),
            basis,
            left_act: vec![],
            right_act: vec![],
        },
        reps: reps.clone(),
        cells,
        index,
    };
    let mut left_act = Vec::new();
    for a in 0..m.left.dim() {
        let row: Vec<SparseVec> = reps
            .iter()
            .map(|&(i, j)| {
                let terms: Vec<_> = m.act_left(a, i).iter().map(|(k, c)| ((*k, j), c.clone())).collect();
                tq.reduce_pairs(&terms)
            })
            .collect();
        left_act.push(row);
    }
    let mut right_act = Vec::new();
    for b in 0..n.right.dim() {
        let row: Vec<SparseVec> = reps
            .iter()
            .map(|&(i, j)| {
                let terms: Vec<_> = n.act_right(j, b).iter().map(|(k, c)| ((i, *k), c.clone())).collect();
                tq.reduce_pairs(&terms)
            })
            .collect();
        right_act.push(row);
    }
    tq.bimodule.left_act = left_act;
    tq.bimodule.right_act = right_act;
    tq.bimodule.verify()?;
    Ok(tq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;

    fn a1_bimodule(a: &GradedAlgebra) -> GradedBimodule {
        let (a0, pi) = a.grade_zero();
        GradedBimodule::from_algebra_grades(a, Arc::new(a0), &pi, &[1]).unwrap()
    }

    #[test]
    fn unit_law() {
        let a = two_cycle(2);
        let (a0, pi) = a.grade_zero();
        let a0 = Arc::new(a0);
        let reg = GradedBimodule::from_algebra_grades(&a, a0.clone(), &pi, &[0]).unwrap();
        let a1 = GradedBimodule::from_algebra_grades(&a, a0, &pi, &[1]).unwrap();
        let t = bimodule_tensor_a0(&reg, &a1).unwrap();
        assert_eq!(t.bimodule.dim(), a1.dim());
        let t = bimodule_tensor_a0(&a1, &reg).unwrap();
        assert_eq!(t.bimodule.dim(), a1.dim());
    }

    #[test]
    fn dual_numbers_square() {
        let a1 = a1_bimodule(&dual_numbers(2));
        assert_eq!(bimodule_tensor_a0(&a1, &a1).unwrap().bimodule.dim(), 1);
    }

    #[test]
    fn non_semisimple_base_balances() {
        // z: 1→2 in grade 0, x: 2→2 in grade 1, so A₁ = span{x, x·z}.
        let a = quiver(2, &["1", "2"], &[("z", "1", "2", 0), ("x", "2", "2", 1)], &[&[(1, "x x")]]);
        let a1 = a1_bimodule(&a);
        assert_eq!(a1.dim(), 2);
        let t = bimodule_tensor_a0(&a1, &a1).unwrap();
        // Only x⊗x and x⊗(x·z) meet at a common vertex; no relation involves z.
        assert_eq!(t.bimodule.dim(), 2);
    }

    #[test]
    fn orthogonal_simples() {
        let k = Arc::new(field_algebra(2));
        let a0 = Arc::new(semisimple(2, 2));
        let f = Field::Prime(2);
        // L(0)^op as a (k, A₀)-bimodule and L(1) as an (A₀, k)-bimodule.
        let simple_right = |v: usize| {
            let basis = vec![BimoduleElem { grade: 0, left_vertex: 0, right_vertex: v }];
            let right = (0..a0.dim()).map(|b| vec![if b == a0.idempotents[v] { vec![(0, f.one())] } else { vec![] }]).collect();
            GradedBimodule::new(k.clone(), a0.clone(), basis, vec![vec![vec![(0, f.one())]]], right).unwrap()
        };
        let simple_left = |v: usize| {
            let basis = vec![BimoduleElem { grade: 0, left_vertex: v, right_vertex: 0 }];
            let left = (0..a0.dim()).map(|b| vec![if b == a0.idempotents[v] { vec![(0, f.one())] } else { vec![] }]).collect();
            GradedBimodule::new(a0.clone(), k.clone(), basis, left, vec![vec![vec![(0, f.one())]]]).unwrap()
        };
        assert_eq!(bimodule_tensor_a0(&simple_right(0), &simple_left(1)).unwrap().bimodule.dim(), 0);
        assert_eq!(bimodule_tensor_a0(&simple_right(1), &simple_left(1)).unwrap().bimodule.dim(), 1);
    }

    #[test]
    fn mismatch_rejected() {
        let a1 = a1_bimodule(&dual_numbers(2));
        let b1 = a1_bimodule(&two_cycle(2));
        assert!(bimodule_tensor_a0(&a1, &b1).is_err());
    }
}
