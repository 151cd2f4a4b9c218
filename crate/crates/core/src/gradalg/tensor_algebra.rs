//! The tensor algebra `T_{A₀}(A₁)` truncated at a tensor degree, with its
//! multiplication map to `A`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::bimodule::{bimodule_tensor_a0, GradedBimodule, TensorQuotient};
use super::{BasisElem, GradedAlgebra, Generator, SparseVec, WordSum};
use crate::error::Result;
use crate::exact::{ExactMatrix, Field, Scalar};

#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    /// `T≤dmax`, graded by tensor degree.
    pub algebra: GradedAlgebra,
    /// Image in `A` of each basis element of `T`.
    pub to_a: Vec<SparseVec>,
    /// Tensor degree of each basis element and its chain of `A₁` basis
    /// indices (empty for `A₀`).
    pub chains: Vec<Vec<usize>>,
    /// Whether `T_s → A_s` is onto, for `s = 0..=dmax`.
    pub surjective: Vec<bool>,
    /// `dim ker(T_s → A_s)`.
    pub kernel_dims: Vec<usize>,
    /// Basis indices of `T_s`, for `s = 0..=dmax`.
    pub degree_ranges: Vec<std::ops::Range<usize>>,
    levels: Vec<Level>,
    a1_in_a: Vec<usize>,
    a0_dim: usize,
}

#[derive(Clone, Debug)]
enum Level {
    Base,
    First(GradedBimodule),
    Higher(TensorQuotient),
}

impl Level {
    fn bimodule(&self) -> Option<&GradedBimodule> {
        match self {
            Level::Base => None,
            Level::First(b) => Some(b),
            Level::Higher(t) => Some(&t.bimodule),
        }
    }
}

fn accumulate(f: Field, acc: &mut BTreeMap<usize, Scalar>, k: usize, c: &Scalar) {
    let e = acc.entry(k).or_insert_with(|| f.zero());
    *e = f.add(e, c);
}

impl TensorAlgebra {
    /// Normal form of `Σ c · (y₁ ⊗ … ⊗ y_s)` in `T_s` (indices local to
    /// `T_s`), for chains of one common length `s ≥ 1`.
    pub fn normal_form(&self, terms: &[(Vec<usize>, Scalar)]) -> SparseVec {
        let f = self.algebra.field;
        let Some(s) = terms.first().map(|(c, _)| c.len()) else { return vec![] };
        if s == 1 {
            let mut acc = BTreeMap::new();
            for (c, x) in terms {
                accumulate(f, &mut acc, c[0], x);
            }
            return acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect();
        }
        let Level::Higher(tq) = &self.levels[s] else { unreachable!("tensor level {s} missing") };
        let mut pairs = Vec::new();
        for (c, x) in terms {
            let head = self.normal_form(&[(c[..s - 1].to_vec(), f.one())]);
            for (i, y) in head {
                pairs.push(((i, c[s - 1]), f.mul(x, &y)));
            }
        }
        tq.reduce_pairs(&pairs)
    }

    pub fn dmax(&self) -> usize {
        self.levels.len() - 1
    }

    /// Index in `T` of local index `k` of `T_s`.
    pub fn global(&self, s: usize, k: usize) -> usize {
        self.degree_ranges[s].start + k
    }

    pub fn a1_in_a(&self) -> &[usize] {
        &self.a1_in_a
    }

    pub fn a0_dim(&self) -> usize {
        self.a0_dim
    }

    /// `T_s` as an `(A₀, A₀)`-bimodule, for `1 ≤ s ≤ dmax`.
    pub fn level_bimodule(&self, s: usize) -> Option<&GradedBimodule> {
        self.levels.get(s).and_then(|l| l.bimodule())
    }
}

/// Build `T_{A₀}(A₁)` truncated above tensor degree `dmax`.
pub fn truncated_tensor_algebra(a: &GradedAlgebra, dmax: usize) -> Result<TensorAlgebra> {
    let f = a.field;
    let (a0, pi) = a.grade_zero();
    let a0 = Arc::new(a0);
    let b1 = GradedBimodule::from_algebra_grades(a, a0.clone(), &pi, &[1])?;
    let a1_in_a: Vec<usize> = (0..a.dim()).filter(|&b| a.basis[b].grade == 1).collect();
    let mut lift0 = vec![0; a0.dim()];
    for (b, p) in pi.iter().enumerate() {
        if let Some(p) = p {
            lift0[*p] = b;
        }
    }
    let mut levels = vec![Level::Base];
    if dmax >= 1 {
        levels.push(Level::First(b1.clone()));
    }
    for s in 2..=dmax {
        let prev = levels[s - 1].bimodule().unwrap().clone();
        levels.push(Level::Higher(bimodule_tensor_a0(&prev, &b1)?));
    }
    // Global basis and representative chains.
    let mut degree_ranges: Vec<std::ops::Range<usize>> = Vec::with_capacity(dmax + 1);
    degree_ranges.push(0..a0.dim());
    let mut chains: Vec<Vec<usize>> = vec![vec![]; a0.dim()];
    let mut basis: Vec<BasisElem> = a0.basis.clone();
    for s in 1..=dmax {
        let start = basis.len();
        let bm = levels[s].bimodule().unwrap();
        for (k, e) in bm.basis.iter().enumerate() {
            let chain = match &levels[s] {
                Level::Higher(tq) => {
                    let (i, j) = tq.reps[k];
                    let mut c = chains[degree_ranges[s - 1].start + i].clone();
                    c.push(j);
                    c
                }
                _ => vec![k],
            };
            chains.push(chain);
            basis.push(BasisElem {
                label: format!("t{}", basis.len()),
                grade: s as u32,
                source: e.right_vertex,
                target: e.left_vertex,
            });
        }
        degree_ranges.push(start..basis.len());
    }
    for (i, b) in basis.iter_mut().enumerate().skip(a0.dim()) {
        b.label = chains[i].iter().map(|&y| a.basis[a1_in_a[y]].label.clone()).collect::<Vec<_>>().join("⊗");
    }
    let mut ta = TensorAlgebra {
        algebra: GradedAlgebra {
            field: f,
            vertices: a.vertices.clone(),
            basis: vec![],
            mult: vec![],
            idempotents: vec![],
            generators: vec![],
            words: vec![],
            presentation: None,
        },
        to_a: vec![],
        chains: chains.clone(),
        surjective: vec![],
        kernel_dims: vec![],
        degree_ranges: degree_ranges.clone(),
        levels,
        a1_in_a: a1_in_a.clone(),
        a0_dim: a0.dim(),
    };
    let deg = |i: usize| basis[i].grade as usize;
    let d = basis.len();
    let mut mult = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            if basis[i].source != basis[j].target {
                continue;
            }
            let (si, sj) = (deg(i), deg(j));
            if si + sj > dmax {
                continue;
            }
            let prod: SparseVec = match (si, sj) {
                (0, 0) => a0.product(i, j).to_vec(),
                (0, _) => {
                    let bm = ta.levels[sj].bimodule().unwrap();
                    bm.act_left(i, j - degree_ranges[sj].start).clone()
                }
                (_, 0) => {
                    let bm = ta.levels[si].bimodule().unwrap();
                    bm.act_right(i - degree_ranges[si].start, j).clone()
                }
                _ => {
                    let mut c = chains[i].clone();
                    c.extend(&chains[j]);
                    ta.normal_form(&[(c, f.one())])
                }
            };
            let off = degree_ranges[si + sj].start;
            let prod: SparseVec = prod.into_iter().map(|(k, c)| (k + off, c)).collect();
            if !prod.is_empty() {
                mult[i].push((j, prod));
            }
        }
    }
    let mut generators: Vec<Generator> = a0.generators.clone();
    let n0 = generators.len();
    for k in degree_ranges.get(1).cloned().unwrap_or(0..0) {
        generators.push(Generator {
            label: basis[k].label.clone(),
            source: basis[k].source,
            target: basis[k].target,
            grade: 1,
            elem: vec![(k, f.one())],
        });
    }
    let words: Vec<WordSum> = (0..d)
        .map(|i| {
            if i < a0.dim() {
                a0.words(i).clone()
            } else {
                vec![(chains[i].iter().map(|&y| n0 + y).collect(), f.one())]
            }
        })
        .collect();
    ta.algebra = GradedAlgebra::assemble(f, a.vertices.clone(), basis, mult, a0.idempotents.clone(), generators, words)?;
    // Multiplication map T → A.
    let to_a: Vec<SparseVec> = (0..d)
        .map(|i| {
            if i < a0.dim() {
                return vec![(lift0[i], f.one())];
            }
            let mut v = f.unit_vector(a.dim(), a1_in_a[chains[i][0]]);
            for &y in &chains[i][1..] {
                v = a.mul_dense(&v, &f.unit_vector(a.dim(), a1_in_a[y]));
            }
            v.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect()
        })
        .collect();
    let graded = a.graded_dims();
    for s in 0..=dmax {
        let r = &degree_ranges[s];
        let target: Vec<usize> = (0..a.dim()).filter(|&b| a.basis[b].grade as usize == s).collect();
        let pos: BTreeMap<usize, usize> = target.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let rows: Vec<Vec<Scalar>> = r
            .clone()
            .map(|i| {
                let mut v = f.zeros(target.len());
                for (k, c) in &to_a[i] {
                    v[pos[k]] = c.clone();
                }
                v
            })
            .collect();
        let rank = ExactMatrix::from_rows(f, target.len(), rows).rank();
        ta.surjective.push(rank == graded.get(s).copied().unwrap_or(0));
        ta.kernel_dims.push(r.len() - rank);
    }
    ta.to_a = to_a;
    Ok(ta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;

    #[test]
    fn dual_numbers_truncation() {
        let t = truncated_tensor_algebra(&dual_numbers(2), 2).unwrap();
        assert_eq!(t.algebra.graded_dims(), vec![1, 1, 1]);
        assert_eq!(t.surjective, vec![true, true, true]);
        assert_eq!(t.kernel_dims, vec![0, 0, 1]);
    }

    #[test]
    fn cubic_truncation() {
        let t = truncated_tensor_algebra(&truncated_poly(2, 3), 3).unwrap();
        assert!(t.surjective.iter().all(|s| *s));
        assert_eq!(t.kernel_dims[2], 0);
        assert_eq!(t.kernel_dims[3], 1);
    }

    #[test]
    fn grade_two_generator_not_tight() {
        let t = truncated_tensor_algebra(&truncated_poly_graded(2, 2, 2), 2).unwrap();
        assert!(!t.surjective[2]);
    }

    #[test]
    fn non_semisimple_base() {
        let a = quiver(2, &["1", "2"], &[("z", "1", "2", 0), ("x", "2", "2", 1)], &[&[(1, "x x")]]);
        let t = truncated_tensor_algebra(&a, 2).unwrap();
        assert_eq!(t.algebra.graded_dims(), vec![3, 2, 2]);
        assert_eq!(t.kernel_dims, vec![0, 0, 2]);
    }
}
