//! Graded modules, homomorphisms, minimal resolutions and Ext.

mod ext;
mod module;
mod resolution;

use std::collections::BTreeMap;

pub use ext::{ext_from_resolution, graded_ext, ungraded_ext, ungraded_ext_over, vanishing_range_check, ExtTable};
pub(crate) use module::{add_into, combine, finish, sparse_to_dense};
pub use module::{GradedModule, ModCell, ModElem};
pub use resolution::{minimal_resolution, projective_cover, Resolution};

use crate::exact::{Echelon, ExactMatrix};
use crate::gradalg::SparseVec;

/// A homogeneous module map `M → N⟨shift⟩`, stored as the image of each
/// basis vector of `M` in `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub shift: i32,
    pub images: Vec<SparseVec>,
}

impl GradedMap {
    pub fn apply(&self, m: &GradedModule, v: &SparseVec) -> SparseVec {
        combine(m.field(), v, &self.images)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.is_empty())
    }

    /// Whether this is a module map `m → n⟨shift⟩`.
    pub fn is_homomorphism(&self, m: &GradedModule, n: &GradedModule) -> bool {
        let f = m.field();
        for (k, img) in self.images.iter().enumerate() {
            let c = m.cell(k);
            if img.iter().any(|(y, _)| n.cell(*y) != (c.0, c.1 - self.shift)) {
                return false;
            }
        }
        (0..m.algebra.generators.len()).all(|g| {
            (0..m.dim()).all(|k| {
                let lhs = combine(f, &m.apply_generator(g, &vec![(k, f.one())]), &self.images);
                lhs == n.apply_generator(g, &self.images[k])
            })
        })
    }
}

/// Basis of `hom(M, N⟨r⟩)`: degree-preserving maps sending `M_i` into
/// `N_{i−r}`.
pub fn hom_space(m: &GradedModule, n: &GradedModule, r: i32) -> Vec<GradedMap> {
    let f = m.field();
    let ncells = n.cells();
    // Unknown φ(m_k) = Σ x_{k,y} y over y in the matching cell of N.
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for k in 0..m.dim() {
        let (v, i) = m.cell(k);
        for &y in ncells.get(&(v, i - r)).map(|x| x.as_slice()).unwrap_or(&[]) {
            index.insert((k, y), unknowns.len());
            unknowns.push((k, y));
        }
    }
    if unknowns.is_empty() {
        return vec![];
    }
    // φ(g·m_k) − g·φ(m_k) = 0, one row per (g, k, coordinate of N).
    let mut rows: Vec<Vec<_>> = Vec::new();
    for g in 0..m.algebra.generators.len() {
        for k in 0..m.dim() {
            let mut eq: BTreeMap<usize, Vec<_>> = BTreeMap::new();
            let gm = m.apply_generator(g, &vec![(k, f.one())]);
            for (k2, c) in &gm {
                for (&(_, y), &u) in index.range((*k2, 0)..(*k2 + 1, 0)) {
                    let row = eq.entry(y).or_insert_with(|| f.zeros(unknowns.len()));
                    row[u] = f.add(&row[u], c);
                }
            }
            for (&(_, y), &u) in index.range((k, 0)..(k + 1, 0)) {
                for (z, c) in n.apply_generator(g, &vec![(y, f.one())]) {
                    let row = eq.entry(z).or_insert_with(|| f.zeros(unknowns.len()));
                    row[u] = f.sub(&row[u], &c);
                }
            }
            rows.extend(eq.into_values());
        }
    }
    let sol = if rows.is_empty() {
        (0..unknowns.len()).map(|u| f.unit_vector(unknowns.len(), u)).collect()
    } else {
        ExactMatrix::from_rows(f, unknowns.len(), rows).kernel_basis()
    };
    sol.into_iter()
        .map(|x| {
            let mut images = vec![BTreeMap::new(); m.dim()];
            for (u, c) in x.iter().enumerate() {
                if !f.is_zero(c) {
                    let (k, y) = unknowns[u];
                    add_into(f, &mut images[k], y, c);
                }
            }
            GradedMap { shift: r, images: images.into_iter().map(|a| finish(f, a)).collect() }
        })
        .collect()
}

/// `dim hom(M, N⟨r⟩)`.
pub fn hom_dim(m: &GradedModule, n: &GradedModule, r: i32) -> usize {
    hom_space(m, n, r).len()
}

/// Cell dimensions of a span of homogeneous vectors.
fn span_cells(m: &GradedModule, vecs: &[SparseVec]) -> BTreeMap<ModCell, usize> {
    let mut out = BTreeMap::new();
    for v in vecs {
        if let Some((k, _)) = v.first() {
            *out.entry(m.cell(*k)).or_insert(0) += 1;
        }
    }
    out
}

fn layer(upper: &BTreeMap<ModCell, usize>, lower: &BTreeMap<ModCell, usize>) -> BTreeMap<ModCell, usize> {
    upper
        .iter()
        .filter_map(|(c, d)| {
            let e = d - lower.get(c).copied().unwrap_or(0);
            (e > 0).then_some((*c, e))
        })
        .collect()
}

/// Layers `radᵏM / radᵏ⁺¹M`, top first, each as multiplicities of
/// `L(v)⟨i⟩` keyed by `(v, i)`.
pub fn radical_series(m: &GradedModule) -> Vec<BTreeMap<ModCell, usize>> {
    let f = m.field();
    let mut current: Vec<SparseVec> = (0..m.dim()).map(|k| vec![(k, f.one())]).collect();
    let mut out = Vec::new();
    while !current.is_empty() {
        let next = m.submodule_generated(&m.radical_span(&current));
        out.push(layer(&span_cells(m, &current), &span_cells(m, &next)));
        current = next;
    }
    out
}

/// Layers `socᵏ⁺¹M / socᵏM`, socle first.
pub fn socle_series(m: &GradedModule) -> Vec<BTreeMap<ModCell, usize>> {
    let f = m.field();
    let cells = m.cells();
    let mut current: Vec<SparseVec> = Vec::new();
    let mut out = Vec::new();
    while current.len() < m.dim() {
        let (_, proj) = m.quotient(&current);
        let mut next = Vec::new();
        for ms in cells.values() {
            // Vectors of this cell whose generator images vanish mod `current`.
            let mut rows = Vec::new();
            let mut width = 0;
            for g in 0..m.algebra.generators.len() {
                let imgs: Vec<SparseVec> = ms.iter().map(|&k| combine(f, &m.apply_generator(g, &vec![(k, f.one())]), &proj)).collect();
                width = width.max(imgs.iter().flat_map(|v| v.iter().map(|(j, _)| j + 1)).max().unwrap_or(0));
                rows.push(imgs);
            }
            let mut mat_rows = Vec::new();
            for imgs in rows {
                let mut block = vec![f.zeros(ms.len()); width];
                for (col, v) in imgs.iter().enumerate() {
                    for (j, c) in v {
                        block[*j][col] = c.clone();
                    }
                }
                mat_rows.extend(block);
            }
            let kernel = if mat_rows.is_empty() {
                (0..ms.len()).map(|i| f.unit_vector(ms.len(), i)).collect()
            } else {
                ExactMatrix::from_rows(f, ms.len(), mat_rows).kernel_basis()
            };
            for kv in kernel {
                next.push(kv.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (ms[i], c.clone())).collect());
            }
        }
        let mut reduced = Vec::new();
        let mut ech = Echelon::new(f, m.dim());
        for v in &current {
            ech.insert(&sparse_to_dense(f, m.dim(), v));
        }
        for v in &next {
            if ech.insert(&sparse_to_dense(f, m.dim(), v)) {
                reduced.push(v.clone());
            }
        }
        let grown = span_cells(m, &reduced);
        if grown.is_empty() {
            break;
        }
        out.push(grown);
        current.extend(reduced);
    }
    out
}

/// Number of radical layers.
pub fn loewy_length(m: &GradedModule) -> usize {
    radical_series(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;
    use std::sync::Arc;

    #[test]
    fn dual_numbers_trivial_module_resolves_by_shifts() {
        let a = Arc::new(dual_numbers(2));
        let k = GradedModule::simple(a.clone(), 0, 0);
        let res = minimal_resolution(&k, 6);
        for (n, t) in res.terms.iter().enumerate() {
            assert_eq!(t, &vec![(0, n as i32)]);
        }
        res.verify(&k).unwrap();
        let t = graded_ext(&k, &k, 8);
        for n in 0..=8 {
            for r in -2..12 {
                assert_eq!(t.get(n, r), usize::from(n as i32 == r), "ext^{n}(k, k<{r}>)");
            }
        }
    }

    #[test]
    fn cubic_shifts() {
        let a = Arc::new(truncated_poly(3, 3));
        let k = GradedModule::simple(a, 0, 0);
        let res = minimal_resolution(&k, 3);
        let shifts: Vec<i32> = res.terms.iter().map(|t| t[0].1).collect();
        assert_eq!(shifts, vec![0, 1, 3, 4]);
        res.verify(&k).unwrap();
        let more = minimal_resolution(&k, 4);
        assert_eq!(more.terms[4], vec![(0, 6)]);
    }

    #[test]
    fn projective_resolves_in_one_step() {
        let a = Arc::new(two_cycle(3));
        let p = GradedModule::projective(a, 0, 2);
        let res = minimal_resolution(&p, 3);
        assert_eq!(res.len(), 1);
        assert!(res.complete);
        assert_eq!(res.terms[0], vec![(0, 2)]);
        res.verify(&p).unwrap();
    }

    #[test]
    fn hom_from_projective_is_vertex_component() {
        let a = Arc::new(two_cycle(0));
        let n = GradedModule::projective(a.clone(), 0, 0).direct_sum(&GradedModule::projective(a.clone(), 1, 1));
        for v in 0..2 {
            for s in -1..3 {
                let p = GradedModule::projective(a.clone(), v, s);
                for r in -3..4 {
                    let expected = n.cells().get(&(v, s - r)).map(|x| x.len()).unwrap_or(0);
                    let maps = hom_space(&p, &n, r);
                    assert_eq!(maps.len(), expected, "v={v} s={s} r={r}");
                    assert!(maps.iter().all(|f| f.is_homomorphism(&p, &n)));
                }
            }
        }
    }

    #[test]
    fn identity_and_schur() {
        let a = Arc::new(two_cycle(2));
        let p = GradedModule::projective(a.clone(), 0, 0);
        assert!(hom_dim(&p, &p, 0) >= 1);
        let l1 = GradedModule::simple(a.clone(), 0, 0);
        let l2 = GradedModule::simple(a, 1, 0);
        assert_eq!(hom_dim(&l1, &l1, 0), 1);
        assert_eq!(hom_dim(&l1, &l2, 0), 0);
        assert_eq!(hom_dim(&l1, &l1, 1), 0);
    }

    #[test]
    fn radical_and_socle_layers() {
        let a = Arc::new(dual_numbers(2));
        let p = GradedModule::projective(a.clone(), 0, 0);
        let rad = radical_series(&p);
        assert_eq!(rad, vec![BTreeMap::from([((0, 0), 1)]), BTreeMap::from([((0, 1), 1)])]);
        let soc = socle_series(&p);
        assert_eq!(soc, vec![BTreeMap::from([((0, 1), 1)]), BTreeMap::from([((0, 0), 1)])]);
        let ss = GradedModule::simple(a.clone(), 0, 0).direct_sum(&GradedModule::simple(a, 0, 3));
        assert_eq!(radical_series(&ss).len(), 1);
        let b = Arc::new(two_cycle(2));
        let p1 = GradedModule::projective(b, 0, 0);
        assert_eq!(radical_series(&p1).len(), 3);
        assert_eq!(socle_series(&p1).len(), 3);
    }

    #[test]
    fn vanishing_range() {
        let a = Arc::new(two_cycle(2));
        let x = GradedModule::projective(a.clone(), 0, 3);
        let y = GradedModule::simple(a.clone(), 0, 1);
        assert!(vanishing_range_check(&x, &y, 3, 1, 4).unwrap());
        assert!(vanishing_range_check(&x, &y, 4, 1, 4).is_err());
    }

    #[test]
    fn ungraded_matches_graded_sum() {
        let a = Arc::new(two_cycle(3));
        for v in 0..2 {
            for w in 0..2 {
                let m = GradedModule::simple(a.clone(), v, 0);
                let n = GradedModule::simple(a.clone(), w, 0);
                let g = graded_ext(&m, &n, 4);
                assert_eq!(g.ungraded, ungraded_ext(&m, &n, 4));
            }
        }
    }
}
