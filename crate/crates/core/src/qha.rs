//! Standard and costandard modules for a weight poset, quasi-hereditary
//! certification, Δ-filtrations and decomposition matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GrexError, Result};
use crate::gradalg::{GradedAlgebra, SparseVec};
use crate::homolog::{graded_ext, GradedModule};

/// A partial order on the vertices of an algebra, stored as its strict
/// transitive closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPoset {
    pub labels: Vec<String>,
    /// `below[a][b]` iff `a < b`.
    below: Vec<Vec<bool>>,
    /// Optional total refinement, used only for iteration order.
    pub refinement: Option<Vec<usize>>,
}

impl WeightPoset {
    /// Poset generated by cover relations `lower < upper`.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut below = vec![vec![false; n]; n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(GrexError::InvalidInput(format!("cover ({a}, {b}) out of range")));
            }
            below[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if below[i][k] {
                    for j in 0..n {
                        if below[k][j] {
                            below[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i][i]) {
            return Err(GrexError::InvalidInput(format!("order relations form a cycle through {}", labels[i])));
        }
        Ok(WeightPoset { labels, below, refinement: None })
    }

    /// Poset on the algebra's vertices from label pairs `lower < upper`.
    pub fn for_algebra(a: &GradedAlgebra, covers: &[(&str, &str)]) -> Result<Self> {
        let idx = |s: &str| a.vertex_index(s).ok_or_else(|| GrexError::InvalidInput(format!("unknown weight {s}")));
        let pairs = covers.iter().map(|(x, y)| Ok((idx(x)?, idx(y)?))).collect::<Result<Vec<_>>>()?;
        Self::from_covers(a.vertices.clone(), &pairs)
    }

    /// `0 < 1 < … < n−1` on the algebra's vertices.
    pub fn chain(a: &GradedAlgebra) -> Self {
        let n = a.num_vertices();
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(a.vertices.clone(), &covers).expect("a chain is acyclic")
    }

    pub fn antichain(a: &GradedAlgebra) -> Self {
        Self::from_covers(a.vertices.clone(), &[]).expect("no relations")
    }

    pub fn with_refinement(mut self, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        for (pos, &v) in order.iter().enumerate() {
            if v >= self.len() || seen[v] || order[..pos].iter().any(|&u| self.lt(v, u)) {
                return Err(GrexError::InvalidInput("refinement is not a linear extension".into()));
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(GrexError::InvalidInput("refinement misses a weight".into()));
        }
        self.refinement = Some(order);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.below[a][b]
    }

    /// Weights in refinement order if given, else by index.
    pub fn order(&self) -> Vec<usize> {
        self.refinement.clone().unwrap_or_else(|| (0..self.len()).collect())
    }

    /// Whether `set` is closed downward.
    pub fn is_ideal(&self, set: &[usize]) -> bool {
        set.iter().all(|&b| (0..self.len()).all(|a| !self.lt(a, b) || set.contains(&a)))
    }

    /// Cover relations `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Minimal elements.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| (0..self.len()).all(|a| !self.lt(a, b))).collect()
    }

    /// Restriction to `keep` (re-indexed in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let below = keep.iter().map(|&a| keep.iter().map(|&b| self.below[a][b]).collect()).collect();
        let labels = keep.iter().map(|&a| self.labels[a].clone()).collect();
        WeightPoset { labels, below, refinement: None }
    }
}

/// Largest quotient of `P(λ)` whose composition factors `L(μ)` have `μ ≤ λ`.
pub fn standard_module(a: &Arc<GradedAlgebra>, poset: &WeightPoset, lambda: usize) -> GradedModule {
    let f = a.field;
    let mut m = GradedModule::projective(a.clone(), lambda, 0);
    loop {
        let bad: Vec<SparseVec> =
            (0..m.dim()).filter(|&k| !poset.leq(m.basis[k].vertex, lambda)).map(|k| vec![(k, f.one())]).collect();
        if bad.is_empty() {
            return m;
        }
        let sub = m.submodule_generated(&bad);
        m = m.quotient(&sub).0;
    }
}

/// `∇(λ)`: the dual of the standard module of the opposite algebra.
pub fn costandard_module(a: &Arc<GradedAlgebra>, op: &Arc<GradedAlgebra>, poset: &WeightPoset, lambda: usize) -> GradedModule {
    standard_module(op, poset, lambda).dual(a.clone())
}

/// Standard, costandard, projective and simple modules for every weight.
#[derive(Clone, Debug)]
pub struct StandardSystem {
    pub algebra: Arc<GradedAlgebra>,
    pub opposite: Arc<GradedAlgebra>,
    pub poset: WeightPoset,
    pub delta: Vec<GradedModule>,
    pub nabla: Vec<GradedModule>,
    pub proj: Vec<GradedModule>,
    pub simple: Vec<GradedModule>,
}

impl StandardSystem {
    pub fn new(a: Arc<GradedAlgebra>, poset: WeightPoset) -> Result<Self> {
        if poset.len() != a.num_vertices() || poset.labels != a.vertices {
            return Err(GrexError::InvalidInput("poset labels must match the algebra's vertices".into()));
        }
        let op = Arc::new(a.opposite());
        let n = poset.len();
        let delta = crate::par::Exec::default().map((0..n).collect(), |l| standard_module(&a, &poset, l));
        let nabla = crate::par::Exec::default().map((0..n).collect(), |l| costandard_module(&a, &op, &poset, l));
        let proj = (0..n).map(|l| GradedModule::projective(a.clone(), l, 0)).collect();
        let simple = (0..n).map(|l| GradedModule::simple(a.clone(), l, 0)).collect();
        Ok(StandardSystem { algebra: a, opposite: op, poset, delta, nabla, proj, simple })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }
}

/// Which quasi-heredity condition failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QhaFailure {
    /// `[Δ(λ):L(λ)] ≠ 1`.
    HeadMultiplicity { weight: String, multiplicity: usize },
    /// `dim A ≠ Σ dim Δ(λ)·dim ∇(λ)`.
    DimensionCount { algebra_dim: usize, sum: usize },
    /// `P(λ)` has no Δ-filtration.
    ProjectiveNotFiltered { weight: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QhaCertificate {
    pub algebra_dim: usize,
    /// `(dim Δ(λ), dim ∇(λ))` per weight.
    pub dims: Vec<(usize, usize)>,
    /// `[P(λ):Δ(μ)]`.
    pub projective_multiplicities: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QhaVerdict {
    Certified(QhaCertificate),
    Refuted(QhaFailure),
}

impl QhaVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, QhaVerdict::Certified(_))
    }
}

/// Graded multiplicities `[m : Δ(μ)⟨r⟩]` keyed by `(μ, r)`.
pub type FiltrationMultiplicities = BTreeMap<(usize, i32), usize>;

/// Δ-filtration test: `Ext¹(m, ∇(μ)) = 0` for all `μ`, with multiplicities
/// `dim hom(m, ∇(μ)⟨r⟩)` that must account for `dim m`.
pub fn delta_filtration_test(m: &GradedModule, sys: &StandardSystem) -> std::result::Result<FiltrationMultiplicities, String> {
    let mut mult = BTreeMap::new();
    let mut accounted = 0;
    for mu in sys.poset.order() {
        let t = graded_ext(m, &sys.nabla[mu], 1);
        if t.ungraded[1] != 0 {
            let (_, r) = t.graded.keys().find(|(n, _)| *n == 1).copied().unwrap();
            return Err(format!("ext^1(m, ∇({})⟨{r}⟩) ≠ 0", sys.poset.labels[mu]));
        }
        for (&(n, r), &d) in &t.graded {
            if n == 0 {
                mult.insert((mu, r), d);
                accounted += d * sys.delta[mu].dim();
            }
        }
    }
    if accounted != m.dim() {
        return Err(format!("sections account for dimension {accounted}, module has {}", m.dim()));
    }
    Ok(mult)
}

/// Ungraded totals `[m : Δ(μ)]`.
pub fn ungraded_multiplicities(n: usize, mult: &FiltrationMultiplicities) -> Vec<usize> {
    let mut out = vec![0; n];
    for (&(mu, _), &d) in mult {
        out[mu] += d;
    }
    out
}

/// Quasi-heredity certificate, or the first failing condition.
pub fn certify_qha(sys: &StandardSystem) -> QhaVerdict {
    let n = sys.len();
    for l in sys.poset.order() {
        let k = sys.delta[l].vertex_multiplicities()[l];
        if k != 1 {
            return QhaVerdict::Refuted(QhaFailure::HeadMultiplicity { weight: sys.poset.labels[l].clone(), multiplicity: k });
        }
    }
    let dims: Vec<(usize, usize)> = (0..n).map(|l| (sys.delta[l].dim(), sys.nabla[l].dim())).collect();
    let sum: usize = dims.iter().map(|(x, y)| x * y).sum();
    if sum != sys.algebra.dim() {
        return QhaVerdict::Refuted(QhaFailure::DimensionCount { algebra_dim: sys.algebra.dim(), sum });
    }
    let mut projective_multiplicities = Vec::new();
    for l in 0..n {
        match delta_filtration_test(&sys.proj[l], sys) {
            Ok(m) => projective_multiplicities.push(ungraded_multiplicities(n, &m)),
            Err(reason) => {
                return QhaVerdict::Refuted(QhaFailure::ProjectiveNotFiltered { weight: sys.poset.labels[l].clone(), reason })
            }
        }
    }
    QhaVerdict::Certified(QhaCertificate { algebra_dim: sys.algebra.dim(), dims, projective_multiplicities })
}

/// `D[λ][μ] = [Δ(λ) : L(μ)]`.
pub fn decomposition_matrix(sys: &StandardSystem) -> Vec<Vec<usize>> {
    sys.delta.iter().map(|d| d.vertex_multiplicities()).collect()
}

/// Graded decomposition numbers `[Δ(λ) : L(μ)⟨i⟩]` keyed by grade `i`.
pub fn graded_decomposition_matrix(sys: &StandardSystem) -> Vec<Vec<BTreeMap<i32, usize>>> {
    sys.delta
        .iter()
        .map(|d| {
            let mut row = vec![BTreeMap::new(); sys.len()];
            for ((v, i), k) in d.composition() {
                row[v].insert(i, k);
            }
            row
        })
        .collect()
}

/// `C = Dᵀ D`.
pub fn cartan_from_decomposition(d: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = d.first().map(|r| r.len()).unwrap_or(0);
    (0..n).map(|l| (0..n).map(|m| d.iter().map(|row| row[l] * row[m]).sum()).collect()).collect()
}

/// BGG reciprocity `[P(λ):Δ(μ)] = [∇(μ):L(λ)]` for all pairs; returns the
/// first failing pair.
pub fn bgg_reciprocity(sys: &StandardSystem, cert: &QhaCertificate) -> std::result::Result<(), (usize, usize)> {
    for l in 0..sys.len() {
        for m in 0..sys.len() {
            if cert.projective_multiplicities[l][m] != sys.nabla[m].vertex_multiplicities()[l] {
                return Err((l, m));
            }
        }
    }
    Ok(())
}

/// Grade-zero standard system: `A₀` with `Δ⁰(λ) = Δ(λ)₀`, `∇₀(λ) = ∇(λ)₀`
/// both as `A₀`-modules and inflated to `A`.
#[derive(Clone, Debug)]
pub struct GradeZeroSystem {
    pub a0: Arc<GradedAlgebra>,
    pub pi: Vec<Option<usize>>,
    pub delta0: Vec<GradedModule>,
    pub nabla0: Vec<GradedModule>,
    pub delta0_inflated: Vec<GradedModule>,
    pub nabla0_inflated: Vec<GradedModule>,
}

/// `Δ⁰`, `∇₀` as grade-0 parts of a graded standard system.
pub fn grade_zero_system(sys: &StandardSystem) -> GradeZeroSystem {
    let (a0, pi) = sys.algebra.grade_zero();
    let a0 = Arc::new(a0);
    let delta0: Vec<GradedModule> = sys.delta.iter().map(|d| d.grade_part(a0.clone(), &pi, 0)).collect();
    let nabla0: Vec<GradedModule> = sys.nabla.iter().map(|d| d.grade_part(a0.clone(), &pi, 0)).collect();
    inflate_system(&sys.algebra, a0, pi, delta0, nabla0)
}

/// `Δ⁰`, `∇₀` computed directly as the standard system of `A₀`.
pub fn grade_zero_standard(a: &Arc<GradedAlgebra>, poset: &WeightPoset) -> Result<(GradeZeroSystem, StandardSystem)> {
    let (a0, pi) = a.grade_zero();
    let a0 = Arc::new(a0);
    let sys0 = StandardSystem::new(a0.clone(), poset.clone())?;
    let z = inflate_system(a, a0, pi, sys0.delta.clone(), sys0.nabla.clone());
    Ok((z, sys0))
}

fn inflate_system(
    a: &Arc<GradedAlgebra>,
    a0: Arc<GradedAlgebra>,
    pi: Vec<Option<usize>>,
    delta0: Vec<GradedModule>,
    nabla0: Vec<GradedModule>,
) -> GradeZeroSystem {
    let delta0_inflated = delta0.iter().map(|m| GradedModule::inflate(a.clone(), &pi, m)).collect();
    let nabla0_inflated = nabla0.iter().map(|m| GradedModule::inflate(a.clone(), &pi, m)).collect();
    GradeZeroSystem { a0, pi, delta0, nabla0, delta0_inflated, nabla0_inflated }
}

/// `A_Γ = A / AeA` with `e = Σ_{λ∉Γ} e_λ`, and the restricted poset.
pub fn truncate_to_ideal(a: &GradedAlgebra, poset: &WeightPoset, gamma: &[usize]) -> Result<(GradedAlgebra, WeightPoset)> {
    if gamma.is_empty() {
        return Err(GrexError::Precondition("ideal must be nonempty".into()));
    }
    if !poset.is_ideal(gamma) {
        return Err(GrexError::Precondition("weights do not form a poset ideal".into()));
    }
    let mut keep = gamma.to_vec();
    keep.sort_unstable();
    keep.dedup();
    Ok((a.idempotent_quotient(&keep)?, poset.restrict(&keep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;

    fn system(a: GradedAlgebra, covers: &[(&str, &str)]) -> StandardSystem {
        let a = Arc::new(a);
        let p = WeightPoset::for_algebra(&a, covers).unwrap();
        StandardSystem::new(a, p).unwrap()
    }

    #[test]
    fn two_cycle_is_quasi_hereditary() {
        let sys = system(two_cycle(2), &[("1", "2")]);
        assert_eq!(sys.delta[0].dim(), 1);
        assert_eq!(sys.delta[1].dim(), 2);
        assert_eq!(sys.nabla[1].dim(), 2);
        assert_eq!(crate::homolog::socle_series(&sys.nabla[1])[0], BTreeMap::from([((1, 0), 1)]));
        assert!(sys.nabla[1].max_grade().unwrap() <= 0);
        let QhaVerdict::Certified(cert) = certify_qha(&sys) else { panic!("not certified") };
        assert_eq!(cert.dims, vec![(1, 1), (2, 2)]);
        let d = decomposition_matrix(&sys);
        assert_eq!(d, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(cartan_from_decomposition(&d), vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(cartan_from_decomposition(&d), sys.algebra.cartan_matrix());
        assert!(bgg_reciprocity(&sys, &cert).is_ok());
    }

    #[test]
    fn antichain_and_dual_numbers_refuted() {
        let sys = system(two_cycle(2), &[]);
        assert!(matches!(certify_qha(&sys), QhaVerdict::Refuted(QhaFailure::DimensionCount { .. })));
        let sys = system(dual_numbers(2), &[]);
        assert_eq!(sys.delta[0].dim(), 2);
        assert_eq!(
            certify_qha(&sys),
            QhaVerdict::Refuted(QhaFailure::HeadMultiplicity { weight: "1".into(), multiplicity: 2 })
        );
    }

    #[test]
    fn filtration_of_simples() {
        let sys = system(two_cycle(3), &[("1", "2")]);
        let m = delta_filtration_test(&sys.simple[0], &sys).unwrap();
        assert_eq!(m, BTreeMap::from([((0, 0), 1)]));
        assert!(delta_filtration_test(&sys.simple[1], &sys).is_err());
    }

    #[test]
    fn truncation_to_minimal_weight() {
        let a = two_cycle(2);
        let p = WeightPoset::for_algebra(&a, &[("1", "2")]).unwrap();
        let (t, q) = truncate_to_ideal(&a, &p, &[0]).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(q.len(), 1);
        assert!(truncate_to_ideal(&a, &p, &[1]).is_err());
        let (full, _) = truncate_to_ideal(&a, &p, &[0, 1]).unwrap();
        assert_eq!(full, a);
    }

    #[test]
    fn grade_zero_of_semisimple_base() {
        let sys = system(two_cycle(2), &[("1", "2")]);
        let z = grade_zero_system(&sys);
        assert!(z.delta0.iter().all(|m| m.dim() == 1));
        assert!(z.nabla0.iter().all(|m| m.dim() == 1));
    }

    #[test]
    fn refinement_must_extend_order() {
        let a = two_cycle(2);
        let p = WeightPoset::for_algebra(&a, &[("1", "2")]).unwrap();
        assert!(p.clone().with_refinement(vec![1, 0]).is_err());
        assert_eq!(p.with_refinement(vec![0, 1]).unwrap().order(), vec![0, 1]);
    }

    #[test]
    fn cyclic_order_rejected() {
        assert!(WeightPoset::from_covers(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]).is_err());
    }
}
