//! Bound-quiver presentations and the path-reduction builder.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{BasisElem, Cell, GradedAlgebra, Generator, SparseVec, WordSum};
use crate::error::{GrexError, Result};
use crate::exact::{Echelon, Field, Scalar};

pub const DEFAULT_DIM_GUARD: usize = 10_000;

/// Enumerated paths (up to the working length) beyond which the builder
/// gives up on certifying finite dimension.
const PATH_LIMIT: usize = 250_000;

/// Longest path length the builder tries to certify as zero.
const MAX_PATH_LENGTH: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub label: String,
    pub source: String,
    pub target: String,
    pub grade: u32,
}

/// One term `coeff · path`; `path` lists arrow labels left to right, the
/// rightmost arrow acting first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub relations: Vec<Vec<RelationTerm>>,
}

struct Quiver {
    source: Vec<usize>,
    target: Vec<usize>,
    grade: Vec<u32>,
    nv: usize,
}

impl Quiver {
    fn path_source(&self, v0: usize, p: &[usize]) -> usize {
        p.last().map(|&a| self.source[a]).unwrap_or(v0)
    }
    fn path_target(&self, v0: usize, p: &[usize]) -> usize {
        p.first().map(|&a| self.target[a]).unwrap_or(v0)
    }
    fn path_grade(&self, p: &[usize]) -> u32 {
        p.iter().map(|&a| self.grade[a]).sum()
    }
}

/// A path: its vertex (meaningful only for the empty path) and arrow word.
type Path = (usize, Vec<usize>);

struct Relation {
    terms: Vec<(Scalar, Vec<usize>)>,
    source: usize,
    target: usize,
    maxlen: usize,
}

fn validate(spec: &QuiverSpec) -> Result<(Quiver, Vec<Relation>)> {
    let bad = |m: String| GrexError::InvalidInput(m);
    let mut vindex = HashMap::new();
    for (i, v) in spec.vertices.iter().enumerate() {
        if vindex.insert(v.as_str(), i).is_some() {
            return Err(bad(format!("duplicate vertex {v}")));
        }
    }
    let mut aindex = HashMap::new();
    let mut q = Quiver { source: vec![], target: vec![], grade: vec![], nv: spec.vertices.len() };
    for (i, a) in spec.arrows.iter().enumerate() {
        if a.label.is_empty() || a.label.contains(char::is_whitespace) {
            return Err(bad(format!("arrow label {:?} must be a nonempty word", a.label)));
        }
        if aindex.insert(a.label.as_str(), i).is_some() || vindex.contains_key(a.label.as_str()) {
            return Err(bad(format!("duplicate label {}", a.label)));
        }
        let s = *vindex.get(a.source.as_str()).ok_or_else(|| bad(format!("unknown vertex {}", a.source)))?;
        let t = *vindex.get(a.target.as_str()).ok_or_else(|| bad(format!("unknown vertex {}", a.target)))?;
        q.source.push(s);
        q.target.push(t);
        q.grade.push(a.grade);
    }
    let f = spec.field;
    let mut rels = Vec::new();
    for (ri, r) in spec.relations.iter().enumerate() {
        let mut terms = Vec::new();
        let mut shape: Option<(usize, usize, u32)> = None;
        for term in r {
            if term.path.is_empty() {
                return Err(bad(format!("relation {ri} has an empty path")));
            }
            let word = term
                .path
                .iter()
                .map(|l| aindex.get(l.as_str()).copied().ok_or_else(|| bad(format!("unknown arrow {l}"))))
                .collect::<Result<Vec<_>>>()?;
            for w in word.windows(2) {
                if q.source[w[0]] != q.target[w[1]] {
                    return Err(bad(format!("relation {ri}: path {} is not composable", term.path.join(" "))));
                }
            }
            let sh = (q.path_source(0, &word), q.path_target(0, &word), q.path_grade(&word));
            match shape {
                None => shape = Some(sh),
                Some(s0) if s0 == sh => {}
                Some(_) => {
                    return Err(bad(format!(
                        "relation {ri}: paths are not parallel of equal grade"
                    )))
                }
            }
            let c = f.from_i64(term.coeff);
            if !f.is_zero(&c) {
                terms.push((c, word));
            }
        }
        if let (Some((s, t, _)), false) = (shape, terms.is_empty()) {
            let maxlen = terms.iter().map(|(_, w)| w.len()).max().unwrap();
            rels.push(Relation { terms, source: s, target: t, maxlen });
        }
    }
    Ok((q, rels))
}

/// All paths of length `0..=lmax`, grouped by length.
fn enumerate_paths(q: &Quiver, lmax: usize) -> Option<Vec<Vec<Path>>> {
    let mut by_len: Vec<Vec<Path>> = vec![(0..q.nv).map(|v| (v, vec![])).collect()];
    let mut total = q.nv;
    for l in 1..=lmax {
        let mut next = Vec::new();
        for (v, p) in &by_len[l - 1] {
            let t = q.path_target(*v, p);
            for a in 0..q.source.len() {
                if q.source[a] == t {
                    let mut np = Vec::with_capacity(l);
                    np.push(a);
                    np.extend(p);
                    next.push((q.source[*p.last().unwrap_or(&a)], np));
                }
            }
        }
        total += next.len();
        if total > PATH_LIMIT {
            return None;
        }
        by_len.push(next);
    }
    Some(by_len)
}

struct CellSpace {
    /// Paths in column order: longest first, then word descending.
    paths: Vec<Vec<usize>>,
    col: HashMap<Vec<usize>, usize>,
}

fn cell_of(q: &Quiver, p: &Path) -> Cell {
    (q.path_source(p.0, &p.1), q.path_target(p.0, &p.1), q.path_grade(&p.1))
}

/// Group the paths of length `< below` by cell.
fn cell_spaces(q: &Quiver, paths: &[Vec<Path>], below: usize) -> BTreeMap<Cell, CellSpace> {
    let mut cells: BTreeMap<Cell, CellSpace> = BTreeMap::new();
    for len in (0..below.min(paths.len())).rev() {
        let mut group: BTreeMap<Cell, Vec<Vec<usize>>> = BTreeMap::new();
        for p in &paths[len] {
            group.entry(cell_of(q, p)).or_default().push(p.1.clone());
        }
        for (c, mut ps) in group {
            ps.sort_by(|a, b| b.cmp(a));
            let cs = cells.entry(c).or_insert_with(|| CellSpace { paths: vec![], col: HashMap::new() });
            for p in ps {
                cs.col.insert(p.clone(), cs.paths.len());
                cs.paths.push(p);
            }
        }
    }
    cells
}

pub fn build_algebra(spec: &QuiverSpec) -> Result<GradedAlgebra> {
    build_algebra_with(spec, DEFAULT_DIM_GUARD)
}

/// Build with an explicit dimension guard.
pub fn build_algebra_with(spec: &QuiverSpec, guard: usize) -> Result<GradedAlgebra> {
    let (q, rels) = validate(spec)?;
    let f = spec.field;
    let maxrel = rels.iter().map(|r| r.maxlen).max().unwrap_or(0);
    let mut n = 1usize;
    loop {
        let l = n.max(n - 1 + maxrel);
        let Some(paths) = enumerate_paths(&q, l).filter(|_| n <= MAX_PATH_LENGTH) else {
            return Err(diagnose_infinite(spec, &q, n));
        };
        if paths[n].is_empty() {
            return assemble(spec, &q, &rels, &paths, n, l, guard);
        }
        let cells = cell_spaces(&q, &paths, l + 1);
        let ideal = relation_span(f, &q, &rels, &paths, &cells, l);
        let certified = paths[n].iter().all(|p| {
            let c = cell_of(&q, p);
            let cs = &cells[&c];
            let mut v = f.zeros(cs.paths.len());
            v[cs.col[&p.1]] = f.one();
            ideal.get(&c).map(|e| e.contains(&v)).unwrap_or(false)
        });
        if certified {
            return assemble(spec, &q, &rels, &paths, n, l, guard);
        }
        n += 1;
    }
}

/// Calls `visit(cell, terms)` for every `u·r·v` with
/// `len(u) + len(v) + maxlen(r) ≤ l`; `terms` are the coefficient and word of
/// each summand.
fn for_each_multiple(
    q: &Quiver,
    rels: &[Relation],
    paths: &[Vec<Path>],
    l: usize,
    mut visit: impl FnMut(Cell, &[(Scalar, Vec<usize>)]),
) {
    let top = paths.len() - 1;
    for r in rels.iter().filter(|r| r.maxlen <= l) {
        let budget = l - r.maxlen;
        let rgrade = q.path_grade(&r.terms[0].1);
        for lu in 0..=budget.min(top) {
            for u in paths[lu].iter().filter(|u| q.path_source(u.0, &u.1) == r.target) {
                for lv in 0..=(budget - lu).min(top) {
                    for v in paths[lv].iter().filter(|v| q.path_target(v.0, &v.1) == r.source) {
                        let cell = (
                            q.path_source(v.0, &v.1),
                            q.path_target(u.0, &u.1),
                            q.path_grade(&u.1) + rgrade + q.path_grade(&v.1),
                        );
                        let terms: Vec<(Scalar, Vec<usize>)> = r
                            .terms
                            .iter()
                            .map(|(c, w)| {
                                let mut word = u.1.clone();
                                word.extend(w);
                                word.extend(&v.1);
                                (c.clone(), word)
                            })
                            .collect();
                        visit(cell, &terms);
                    }
                }
            }
        }
    }
}

/// Span of the relation multiples inside the given cells; summands whose
/// word lies outside a cell's columns are dropped.
fn relation_span(
    f: Field,
    q: &Quiver,
    rels: &[Relation],
    paths: &[Vec<Path>],
    cells: &BTreeMap<Cell, CellSpace>,
    l: usize,
) -> BTreeMap<Cell, Echelon> {
    let mut out: BTreeMap<Cell, Echelon> = BTreeMap::new();
    for_each_multiple(q, rels, paths, l, |c, terms| {
        let Some(cs) = cells.get(&c) else { return };
        let mut vec = f.zeros(cs.paths.len());
        for (coef, word) in terms {
            if let Some(&k) = cs.col.get(word) {
                let cur = vec[k].clone();
                vec[k] = f.add(&cur, coef);
            }
        }
        if !f.is_zero_vec(&vec) {
            out.entry(c).or_insert_with(|| Echelon::new(f, cs.paths.len())).insert(&vec);
        }
    });
    out
}

fn diagnose_infinite(spec: &QuiverSpec, q: &Quiver, n: usize) -> GrexError {
    // Find a cycle among arrows reachable in a surviving long path: any
    // closed walk in the quiver witnesses unbounded path growth.
    let na = q.source.len();
    for start in 0..q.nv {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, vec![])];
        while let Some((v, word)) = stack.pop() {
            if word.len() > q.nv {
                continue;
            }
            for a in 0..na {
                if q.source[a] == v {
                    let mut w = vec![a];
                    w.extend(&word);
                    if q.target[a] == start {
                        let labels: Vec<&str> = w.iter().map(|&i| spec.arrows[i].label.as_str()).collect();
                        return GrexError::InfiniteDimensional(format!(
                            "paths of length {n} survive the relations; cycle {} is not killed",
                            labels.join(" ")
                        ));
                    }
                    stack.push((q.target[a], w));
                }
            }
        }
    }
    GrexError::InfiniteDimensional(format!("paths of length {n} survive the relations"))
}

fn assemble(
    spec: &QuiverSpec,
    q: &Quiver,
    rels: &[Relation],
    paths: &[Vec<Path>],
    n: usize,
    l: usize,
    guard: usize,
) -> Result<GradedAlgebra> {
    let f = spec.field;
    // Short paths (length < n) per cell.
    let cells = cell_spaces(q, paths, n);
    // Projected ideal: relation multiples restricted to short paths.
    let ideal = relation_span(f, q, rels, paths, &cells, l);
    // Basis: non-pivot columns. Idempotents first, then by grade and label.
    let mut survivors: Vec<(Cell, Vec<usize>)> = Vec::new();
    for (c, cs) in &cells {
        let piv = ideal.get(c).map(|e| e.pivots().to_vec()).unwrap_or_default();
        for (k, p) in cs.paths.iter().enumerate() {
            if !piv.contains(&k) {
                survivors.push((*c, p.clone()));
            }
        }
    }
    if survivors.len() > guard {
        return Err(GrexError::DimensionGuard { dim: survivors.len(), bound: guard });
    }
    let label_of = |c: &Cell, p: &[usize]| -> String {
        if p.is_empty() {
            format!("e_{}", spec.vertices[c.0])
        } else {
            p.iter().map(|&a| spec.arrows[a].label.as_str()).collect::<Vec<_>>().join("·")
        }
    };
    survivors.sort_by(|(c1, p1), (c2, p2)| {
        (!p1.is_empty(), c1.2, p1.len(), label_of(c1, p1), c1.0, c1.1)
            .cmp(&(!p2.is_empty(), c2.2, p2.len(), label_of(c2, p2), c2.0, c2.1))
    });
    let mut index: HashMap<(Cell, Vec<usize>), usize> = HashMap::new();
    let mut basis = Vec::new();
    for (i, (c, p)) in survivors.iter().enumerate() {
        index.insert((*c, p.clone()), i);
        basis.push(BasisElem { label: label_of(c, p), grade: c.2, source: c.0, target: c.1 });
    }
    let normal = |c: Cell, word: &[usize]| -> SparseVec {
        let Some(cs) = cells.get(&c) else { return vec![] };
        let Some(&k) = cs.col.get(word) else { return vec![] };
        let mut v = f.zeros(cs.paths.len());
        v[k] = f.one();
        if let Some(e) = ideal.get(&c) {
            e.reduce(&mut v);
        }
        let mut out: SparseVec = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(k, x)| (index[&(c, cs.paths[k].clone())], x))
            .collect();
        out.sort_by_key(|(k, _)| *k);
        out
    };
    let d = basis.len();
    let mut mult = vec![Vec::new(); d];
    for i in 0..d {
        let (ci, pi) = &survivors[i];
        for j in 0..d {
            let (cj, pj) = &survivors[j];
            if ci.0 != cj.1 {
                continue;
            }
            let mut word = pi.clone();
            word.extend(pj);
            let c = (cj.0, ci.1, ci.2 + cj.2);
            let prod = normal(c, &word);
            if !prod.is_empty() {
                mult[i].push((j, prod));
            }
        }
    }
    let idempotents: Vec<usize> = (0..q.nv).map(|v| index[&((v, v, 0), vec![])]).collect();
    let generators: Vec<Generator> = spec
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| Generator {
            label: arrow.label.clone(),
            source: q.source[a],
            target: q.target[a],
            grade: arrow.grade,
            elem: normal((q.source[a], q.target[a], arrow.grade), &[a]),
        })
        .collect();
    let words: Vec<WordSum> =
        survivors.iter().map(|(_, p)| if p.is_empty() { vec![] } else { vec![(p.clone(), f.one())] }).collect();
    let mut alg = GradedAlgebra::assemble(f, spec.vertices.clone(), basis, mult, idempotents, generators, words)?;
    alg.presentation = Some(spec.clone());
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::quiver;

    #[test]
    fn rejects_non_parallel_relation() {
        let spec = QuiverSpec {
            field: Field::Prime(2),
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![
                ArrowSpec { label: "a".into(), source: "1".into(), target: "2".into(), grade: 1 },
                ArrowSpec { label: "x".into(), source: "1".into(), target: "1".into(), grade: 1 },
            ],
            relations: vec![vec![
                RelationTerm { coeff: 1, path: vec!["a".into()] },
                RelationTerm { coeff: 1, path: vec!["x".into()] },
            ]],
        };
        assert!(matches!(build_algebra(&spec), Err(GrexError::InvalidInput(_))));
    }

    #[test]
    fn free_loop_is_infinite() {
        let spec = QuiverSpec {
            field: Field::Prime(3),
            vertices: vec!["1".into()],
            arrows: vec![ArrowSpec { label: "x".into(), source: "1".into(), target: "1".into(), grade: 0 }],
            relations: vec![],
        };
        match build_algebra(&spec) {
            Err(GrexError::InfiniteDimensional(m)) => assert!(m.contains("cycle x")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_guard() {
        let a = quiver(2, &["1"], &[("x", "1", "1", 1)], &[&[(1, "x x x x")]]);
        let spec = a.presentation.clone().unwrap();
        assert_eq!(build_algebra_with(&spec, 3), Err(GrexError::DimensionGuard { dim: 4, bound: 3 }));
    }

    #[test]
    fn commutative_square() {
        // k[x,y]/(x², y², xy − yx) has dims [1,2,1].
        let a = quiver(3, &["1"], &[("x", "1", "1", 1), ("y", "1", "1", 1)], &[
            &[(1, "x x")],
            &[(1, "y y")],
            &[(1, "x y"), (-1, "y x")],
        ]);
        assert_eq!(a.graded_dims(), vec![1, 2, 1]);
    }

    #[test]
    fn acyclic_path_algebra() {
        let a = quiver(2, &["1", "2", "3"], &[("a", "1", "2", 1), ("b", "2", "3", 1)], &[]);
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn grade_zero_arrow_cell_dims() {
        let a = quiver(2, &["1", "2"], &[("z", "1", "2", 0), ("x", "2", "2", 1)], &[&[(1, "x x")]]);
        // e1, e2, z, x, x·z
        assert_eq!(a.dim(), 5);
        let cells: usize = a.cartan_matrix().iter().flatten().sum();
        assert_eq!(cells, a.dim());
    }
}
