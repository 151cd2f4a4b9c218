//! Koszul-type property checkers, certified up to an explicit degree bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact::{Echelon, ExactMatrix};
use crate::gradalg::{truncated_tensor_algebra, GradedAlgebra, SparseVec, TensorAlgebra};
use crate::homolog::{
    ext_from_resolution, minimal_resolution, sparse_to_dense, ungraded_ext_over, ExtTable, GradedModule,
};
use crate::par::Exec;
use crate::qha::{
    certify_qha, delta_filtration_test, grade_zero_standard, grade_zero_system, GradeZeroSystem, QhaVerdict,
    StandardSystem, WeightPoset,
};

pub const DEFAULT_DEGREE_BOUND: usize = 8;

/// Degree bound from `GREX_DEGREE_BOUND`, else the default.
pub fn degree_bound() -> usize {
    std::env::var("GREX_DEGREE_BOUND").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_DEGREE_BOUND)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "reason")]
pub enum Verdict {
    HoldsToBound,
    Refuted,
    /// A hypothesis of the checker is not met.
    Precondition(String),
}

/// A nonzero `ext^n(lhs, rhs⟨r⟩)` that violates the property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
    pub n: usize,
    pub r: i32,
    pub dim: usize,
}

/// Nonzero `(n, r, dim)` entries of one ext table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtRecord {
    pub lhs: String,
    pub rhs: String,
    pub entries: Vec<(usize, i32, usize)>,
}

/// One consequence tested by a suite. A failing claim is a counterexample
/// only when its hypotheses were met.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub asserted: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub bound: usize,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub tables: Vec<ExtRecord>,
    pub claims: Vec<Claim>,
    pub replay: Option<Box<PropertyReport>>,
}

impl PropertyReport {
    fn new(property: &str, bound: usize) -> Self {
        PropertyReport {
            property: property.into(),
            bound,
            verdict: Verdict::HoldsToBound,
            witnesses: vec![],
            tables: vec![],
            claims: vec![],
            replay: None,
        }
    }

    fn precondition(property: &str, bound: usize, reason: String) -> Self {
        PropertyReport { verdict: Verdict::Precondition(reason), ..Self::new(property, bound) }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsToBound
    }

    pub fn refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }

    /// Claims whose hypotheses held but which failed.
    pub fn counterexamples(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| c.asserted && !c.holds).collect()
    }

    fn finish_witnesses(&mut self) {
        if !self.witnesses.is_empty() {
            self.verdict = Verdict::Refuted;
        }
    }

    fn finish_claims(&mut self) {
        if !self.counterexamples().is_empty() {
            self.verdict = Verdict::Refuted;
        }
    }
}

/// Ext tables `ext^•(x, y⟨r⟩)` for all pairs, one resolution per source.
fn ext_grid(xs: &[GradedModule], ys: &[GradedModule], nmax: usize) -> Vec<Vec<ExtTable>> {
    Exec::default().map(xs.iter().collect(), |x| {
        let res = minimal_resolution(x, nmax + 1);
        ys.iter().map(|y| ext_from_resolution(&res, y, nmax)).collect()
    })
}

/// Scan a grid for entries with `n ∈ ns` and `r ≠ n`.
fn off_diagonal_witnesses(
    grid: &[Vec<ExtTable>],
    xl: &dyn Fn(usize) -> String,
    yl: &dyn Fn(usize) -> String,
    ns: std::ops::RangeInclusive<usize>,
    report: &mut PropertyReport,
) {
    for (i, row) in grid.iter().enumerate() {
        for (j, t) in row.iter().enumerate() {
            for (n, r, dim) in t.entries() {
                if ns.contains(&n) && r != n as i32 {
                    report.witnesses.push(Witness { lhs: xl(i), rhs: yl(j), n, r, dim });
                }
            }
            report.tables.push(ExtRecord { lhs: xl(i), rhs: yl(j), entries: t.entries() });
        }
    }
}

/// `ext^n(L, L'⟨r⟩) ≠ 0 ⟹ n = r` for all simples, `n ≤ nmax`.
pub fn check_koszul(a: &Arc<GradedAlgebra>, nmax: usize) -> PropertyReport {
    let simples: Vec<GradedModule> = (0..a.num_vertices()).map(|v| GradedModule::simple(a.clone(), v, 0)).collect();
    let grid = ext_grid(&simples, &simples, nmax);
    let mut report = PropertyReport::new("koszul", nmax);
    let label = |v: usize| format!("L({})", a.vertices[v]);
    off_diagonal_witnesses(&grid, &label, &label, 0..=nmax, &mut report);
    report.finish_witnesses();
    report
}

/// `A₀` standard system, certified quasi-hereditary, with `Δ⁰`, `∇₀`
/// inflated to `A`.
pub fn grade_zero_context(a: &Arc<GradedAlgebra>, poset: &WeightPoset) -> Result<(GradeZeroSystem, StandardSystem), String> {
    let (z, sys0) = grade_zero_standard(a, poset).map_err(|e| e.to_string())?;
    match certify_qha(&sys0) {
        QhaVerdict::Certified(_) => Ok((z, sys0)),
        QhaVerdict::Refuted(why) => Err(format!("A0 is not quasi-hereditary: {why:?}")),
    }
}

/// `ext^i(Δ⁰(λ), ∇₀(μ)⟨j⟩) ≠ 0 ⟹ i = j` for `0 < i ≤ n`.
pub fn check_n_q_koszul(a: &Arc<GradedAlgebra>, poset: &WeightPoset, n: usize) -> PropertyReport {
    let property = format!("{n}-q-koszul");
    let (z, _) = match grade_zero_context(a, poset) {
        Ok(c) => c,
        Err(reason) => return PropertyReport::precondition(&property, n, reason),
    };
    let grid = ext_grid(&z.delta0_inflated, &z.nabla0_inflated, n);
    let mut report = PropertyReport::new(&property, n);
    let dl = |v: usize| format!("Δ⁰({})", poset.labels[v]);
    let nl = |v: usize| format!("∇₀({})", poset.labels[v]);
    off_diagonal_witnesses(&grid, &dl, &nl, 1..=n, &mut report);
    report.finish_witnesses();
    report
}

/// Largest `k ≤ n` for which the algebra is `k`-Q-Koszul, or the reason
/// `A₀` is not quasi-hereditary.
pub fn q_koszul_level(a: &Arc<GradedAlgebra>, poset: &WeightPoset, n: usize) -> Result<usize, String> {
    let r = check_n_q_koszul(a, poset, n);
    match r.verdict {
        Verdict::HoldsToBound => Ok(n),
        Verdict::Refuted => Ok(r.witnesses.iter().map(|w| w.n).min().unwrap_or(n + 1) - 1),
        Verdict::Precondition(why) => Err(why),
    }
}

/// Both standard Q-Koszul conditions to degree `nmax`; on success the
/// Q-Koszul check is replayed at the same bound.
pub fn check_standard_q_koszul(a: &Arc<GradedAlgebra>, poset: &WeightPoset, nmax: usize) -> PropertyReport {
    let property = "standard-q-koszul";
    let sys = match StandardSystem::new(a.clone(), poset.clone()) {
        Ok(s) => s,
        Err(e) => return PropertyReport::precondition(property, nmax, e.to_string()),
    };
    if let QhaVerdict::Refuted(why) = certify_qha(&sys) {
        return PropertyReport::precondition(property, nmax, format!("not quasi-hereditary: {why:?}"));
    }
    let z = grade_zero_system(&sys);
    let mut report = PropertyReport::new(property, nmax);
    let lab = |p: &'static str| move |v: usize| format!("{p}({})", poset.labels[v]);
    let grid_a = ext_grid(&sys.delta, &z.nabla0_inflated, nmax);
    off_diagonal_witnesses(&grid_a, &lab("Δ"), &lab("∇₀"), 0..=nmax, &mut report);
    let grid_b = ext_grid(&z.delta0_inflated, &sys.nabla, nmax);
    off_diagonal_witnesses(&grid_b, &lab("Δ⁰"), &lab("∇"), 0..=nmax, &mut report);
    report.finish_witnesses();
    if report.holds() {
        report.replay = Some(Box::new(check_n_q_koszul(a, poset, nmax)));
    }
    report
}

/// `A_n = A₁·A_{n−1}` for `2 ≤ n ≤` top grade.
pub fn check_tight(a: &GradedAlgebra) -> PropertyReport {
    let f = a.field;
    let top = a.top_grade() as usize;
    let mut report = PropertyReport::new("tight", top);
    let by_grade = |g: usize| (0..a.dim()).filter(move |&b| a.basis[b].grade as usize == g);
    let dims = a.graded_dims();
    for n in 2..=top {
        let mut e = Echelon::new(f, a.dim());
        for x in by_grade(1) {
            for y in by_grade(n - 1) {
                let p = a.product(x, y).to_vec();
                if !p.is_empty() {
                    e.insert(&sparse_to_dense(f, a.dim(), &p));
                }
            }
        }
        if e.dim() != dims[n] {
            report.claims.push(Claim {
                name: format!("A_{n} = A_1·A_{}", n - 1),
                asserted: true,
                holds: false,
                detail: format!("span of products has dimension {} of {}", e.dim(), dims[n]),
            });
        }
    }
    report.finish_claims();
    report
}

/// `W₂ = ker(A₁⊗A₁ → A₂)` and the comparison of the ideal it generates in
/// `T_{A₀}(A₁)` with the kernel of `T → A`, grade by grade.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticData {
    pub w2_dim: usize,
    /// `(s, dim ⟨W₂⟩_s, dim I_s)` for `2 ≤ s ≤ top + 1`.
    pub grades: Vec<(usize, usize, usize)>,
    /// Basis of `W₂` in local coordinates of `T₂`.
    #[serde(skip)]
    pub w2: Vec<SparseVec>,
}

fn mul_sparse(alg: &GradedAlgebra, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let f = alg.field;
    let mut acc = BTreeMap::new();
    for (i, c) in x {
        for (j, d) in y {
            let cd = f.mul(c, d);
            for (k, e) in alg.product(*i, *j) {
                crate::homolog::add_into(f, &mut acc, *k, &f.mul(&cd, e));
            }
        }
    }
    crate::homolog::finish(f, acc)
}

/// Kernel of `T₂ → A₂`, split by vertex cells, in local `T₂` coordinates.
fn w2_basis(t: &TensorAlgebra, a: &GradedAlgebra) -> Vec<SparseVec> {
    let f = a.field;
    let Some(range) = t.degree_ranges.get(2).cloned() else { return vec![] };
    let mut cells: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for k in range.clone() {
        let e = &t.algebra.basis[k];
        cells.entry((e.source, e.target)).or_default().push(k);
    }
    let mut out = Vec::new();
    for cols in cells.values() {
        let rows: Vec<Vec<_>> = cols.iter().map(|&k| sparse_to_dense(f, a.dim(), &t.to_a[k])).collect();
        let m = ExactMatrix::from_rows(f, a.dim(), rows).transpose();
        for kv in m.kernel_basis() {
            out.push(
                kv.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (cols[i] - range.start, c.clone())).collect(),
            );
        }
    }
    out
}

/// Quadratic test: tight, and the relation ideal generated in grade 2.
pub fn quadratic_check(a: &GradedAlgebra) -> (Option<QuadraticData>, PropertyReport) {
    let tight = check_tight(a);
    let top = a.top_grade() as usize;
    let mut report = PropertyReport::new("quadratic", top + 1);
    if !tight.holds() {
        report.claims = tight.claims;
        report.claims.push(Claim { name: "tight".into(), asserted: true, holds: false, detail: "not tight".into() });
        report.verdict = Verdict::Refuted;
        return (None, report);
    }
    let t = match truncated_tensor_algebra(a, top + 1) {
        Ok(t) => t,
        Err(e) => return (None, PropertyReport::precondition("quadratic", top + 1, e.to_string())),
    };
    let f = a.field;
    let tdim = t.algebra.dim();
    let w2 = w2_basis(&t, a);
    let start2 = t.degree_ranges.get(2).map(|r| r.start).unwrap_or(0);
    // Two-sided ideal of T generated by W₂, closed under generators and
    // idempotents on both sides.
    let mut mults: Vec<SparseVec> = t.algebra.generators.iter().map(|g| g.elem.clone()).collect();
    mults.extend(t.algebra.idempotents.iter().map(|&e| vec![(e, f.one())]));
    let mut ech: BTreeMap<usize, Echelon> = BTreeMap::new();
    let mut queue: Vec<SparseVec> = w2.iter().map(|v| v.iter().map(|(k, c)| (k + start2, c.clone())).collect()).collect();
    while let Some(v) = queue.pop() {
        if v.is_empty() {
            continue;
        }
        let s = t.algebra.basis[v[0].0].grade as usize;
        if ech.entry(s).or_insert_with(|| Echelon::new(f, tdim)).insert(&sparse_to_dense(f, tdim, &v)) {
            for m in &mults {
                queue.push(mul_sparse(&t.algebra, m, &v));
                queue.push(mul_sparse(&t.algebra, &v, m));
            }
        }
    }
    let grades: Vec<(usize, usize, usize)> =
        (2..=top + 1).map(|s| (s, ech.get(&s).map(|e| e.dim()).unwrap_or(0), t.kernel_dims[s])).collect();
    for &(s, gen, ker) in &grades {
        report.claims.push(Claim {
            name: format!("<W2>_{s} = I_{s}"),
            asserted: true,
            holds: gen == ker,
            detail: format!("generated {gen}, kernel {ker}"),
        });
    }
    report.finish_claims();
    (Some(QuadraticData { w2_dim: w2.len(), grades, w2 }), report)
}

/// Syzygies `Ω_0 = m, Ω_1, …, Ω_k` of an `A₀`-module.
fn syzygies(m: &GradedModule, k: usize) -> Vec<GradedModule> {
    let res = minimal_resolution(m, k);
    let mut out = vec![m.clone()];
    for i in 1..=k {
        if i < res.len() {
            let p = &res.modules[i - 1];
            let span = p.submodule_generated(&res.differentials[i - 1]);
            out.push(p.submodule(&span).expect("image of a module map is a submodule"));
        } else {
            out.push(GradedModule::zero(m.algebra.clone()));
        }
    }
    out
}

fn filtration_claim(name: String, asserted: bool, m: &GradedModule, sys: &StandardSystem) -> Claim {
    match delta_filtration_test(m, sys) {
        Ok(mult) => Claim { name, asserted, holds: true, detail: format!("{} sections", mult.values().sum::<usize>()) },
        Err(why) => Claim { name, asserted, holds: false, detail: why },
    }
}

/// Δ⁰-filtration consequences of the detected Q-Koszul level `≤ n`: `A₁` on
/// both sides (level 2), syzygies `Ω_{s−1}, Ω_s, Ω_{s+1}` of `A_s` for
/// `0 < s` with level `≥ s + 1`, and `Δ(γ)₁` (level 2 and quasi-hereditary).
pub fn delta0_filtration_suite(a: &Arc<GradedAlgebra>, poset: &WeightPoset, n: usize) -> PropertyReport {
    let property = "delta0-filtrations";
    let (z, sys0) = match grade_zero_context(a, poset) {
        Ok(c) => c,
        Err(reason) => return PropertyReport::precondition(property, n, reason),
    };
    let level = q_koszul_level(a, poset, n).unwrap_or(0);
    let mut report = PropertyReport::new(property, n);
    let all: Vec<(usize, i32)> = (0..a.num_vertices()).map(|v| (v, 0)).collect();
    let regular = GradedModule::free(a.clone(), &all);
    let grade = |s: usize| regular.grade_part(z.a0.clone(), &z.pi, s as i32);
    report.claims.push(filtration_claim("A_1 left Δ⁰".into(), level >= 2, &grade(1), &sys0));
    let op = Arc::new(a.opposite());
    let (op0, pi_op) = op.grade_zero();
    let op0 = Arc::new(op0);
    match StandardSystem::new(op0.clone(), poset.clone()) {
        Ok(sys_op) => {
            let regular_op = GradedModule::free(op.clone(), &all);
            let a1_right = regular_op.grade_part(op0, &pi_op, 1);
            report.claims.push(filtration_claim("A_1 right Δ⁰op".into(), level >= 2, &a1_right, &sys_op));
        }
        Err(e) => report.claims.push(Claim {
            name: "A_1 right Δ⁰op".into(),
            asserted: false,
            holds: false,
            detail: e.to_string(),
        }),
    }
    let top = a.top_grade() as usize;
    for s in 1..=top.min(n.saturating_sub(1)).max(1) {
        let omegas = syzygies(&grade(s), s + 1);
        for i in s - 1..=s + 1 {
            report.claims.push(filtration_claim(format!("Ω_{i}(A_{s}) Δ⁰"), level > s, &omegas[i], &sys0));
        }
    }
    if let Ok(sys) = StandardSystem::new(a.clone(), poset.clone()) {
        let qha = certify_qha(&sys).is_certified();
        for (g, d) in sys.delta.iter().enumerate() {
            let d1 = d.grade_part(z.a0.clone(), &z.pi, 1);
            report.claims.push(filtration_claim(format!("Δ({})_1 Δ⁰", poset.labels[g]), qha && level >= 2, &d1, &sys0));
        }
    }
    report.finish_claims();
    report
}

/// Product order on pairs of weights, pair `(λ, μ)` at index `λ·n + μ`.
fn product_poset(env: &GradedAlgebra, poset: &WeightPoset) -> crate::error::Result<WeightPoset> {
    let n = poset.len();
    let mut rel = Vec::new();
    for a in 0..n * n {
        for b in 0..n * n {
            let (l1, m1, l2, m2) = (a / n, a % n, b / n, b % n);
            if a != b && poset.leq(l1, l2) && poset.leq(m1, m2) {
                rel.push((a, b));
            }
        }
    }
    WeightPoset::from_covers(env.vertices.clone(), &rel)
}

/// `Δ⁰⊗Δ^{0,op}`-filtrations of `A₁`, `A₁⊗_{A₀}A₁` and `W₂` as modules over
/// `A₀ ⊗ A₀^op`.
pub fn bimodule_filtration_check(a: &Arc<GradedAlgebra>, poset: &WeightPoset) -> PropertyReport {
    let property = "bimodule-filtrations";
    let level = match q_koszul_level(a, poset, 3) {
        Ok(l) => l,
        Err(reason) => return PropertyReport::precondition(property, 3, reason),
    };
    let qha = StandardSystem::new(a.clone(), poset.clone()).map(|s| certify_qha(&s).is_certified()).unwrap_or(false);
    let mut report = PropertyReport::new(property, 3);
    let t = match truncated_tensor_algebra(a, 2) {
        Ok(t) => t,
        Err(e) => return PropertyReport::precondition(property, 3, e.to_string()),
    };
    let Some(b1) = t.level_bimodule(1) else { return report };
    let a0 = b1.left.clone();
    let env = match a0.tensor_product(&a0.opposite()) {
        Ok(e) => Arc::new(e),
        Err(e) => return PropertyReport::precondition(property, 3, e.to_string()),
    };
    let env_sys = match product_poset(&env, poset).and_then(|p| StandardSystem::new(env.clone(), p)) {
        Ok(s) => s,
        Err(e) => return PropertyReport::precondition(property, 3, e.to_string()),
    };
    let mut targets = vec![("A_1".to_string(), b1.clone(), qha && level >= 2)];
    if let Some(b2) = t.level_bimodule(2) {
        targets.push(("A_1⊗A_1".into(), b2.clone(), qha && level >= 2));
        let w2 = w2_basis(&t, a);
        let dense: Vec<_> = w2.iter().map(|v| sparse_to_dense(a.field, b2.dim(), v)).collect();
        if let Ok((w, _)) = b2.subbimodule(&dense) {
            targets.push(("W_2".into(), w, qha && level >= 3));
        }
    }
    for (name, bm, asserted) in targets {
        match GradedModule::from_bimodule(&bm, env.clone()) {
            Ok(m) => report.claims.push(filtration_claim(format!("{name} Δ⁰⊗Δ⁰op"), asserted, &m, &env_sys)),
            Err(e) => report.claims.push(Claim { name, asserted, holds: false, detail: e.to_string() }),
        }
    }
    report.finish_claims();
    report
}

/// `dim Ext^n(Δ⁰(λ), ∇₀(μ)) = Σ_{a+b=n} Σ_ν dim Ext^a(Δ(ν), ∇₀(μ)) ·
/// dim Ext^b(Δ⁰(λ), ∇(ν))`, the left side from ungraded resolutions and the
/// right side from graded ones.
pub fn product_formula_check(a: &Arc<GradedAlgebra>, poset: &WeightPoset, nmax: usize) -> PropertyReport {
    let property = "product-formula";
    let pre = check_standard_q_koszul(a, poset, nmax);
    if !pre.holds() {
        return PropertyReport::precondition(property, nmax, "not standard Q-Koszul to the bound".into());
    }
    let sys = StandardSystem::new(a.clone(), poset.clone()).expect("checked above");
    let z = grade_zero_system(&sys);
    let n = poset.len();
    let ungraded = Arc::new(a.forget_grading());
    let lhs: Vec<Vec<Vec<usize>>> = Exec::default().map((0..n).collect(), |l| {
        (0..n).map(|m| ungraded_ext_over(&ungraded, &z.delta0_inflated[l], &z.nabla0_inflated[m], nmax)).collect()
    });
    let left = ext_grid(&sys.delta, &z.nabla0_inflated, nmax);
    let right = ext_grid(&z.delta0_inflated, &sys.nabla, nmax);
    let mut report = PropertyReport::new(property, nmax);
    for l in 0..n {
        for m in 0..n {
            for k in 0..=nmax {
                let mut rhs = 0;
                for nu in 0..n {
                    for i in 0..=k {
                        rhs += left[nu][m].ungraded[i] * right[l][nu].ungraded[k - i];
                    }
                }
                let holds = lhs[l][m][k] == rhs;
                report.claims.push(Claim {
                    name: format!("Ext^{k}(Δ⁰({}), ∇₀({}))", poset.labels[l], poset.labels[m]),
                    asserted: true,
                    holds,
                    detail: format!("{} = {rhs}", lhs[l][m][k]),
                });
            }
        }
    }
    report.finish_claims();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::*;

    fn chain(a: &GradedAlgebra) -> WeightPoset {
        WeightPoset::chain(a)
    }

    #[test]
    fn dual_numbers_koszul_and_quadratic() {
        let a = Arc::new(dual_numbers(2));
        assert!(check_koszul(&a, 8).holds());
        let (q, r) = quadratic_check(&a);
        assert!(r.holds());
        assert_eq!(q.unwrap().w2_dim, 1);
    }

    #[test]
    fn cubic_refuted_at_second_syzygy() {
        let a = Arc::new(truncated_poly(2, 3));
        let r = check_koszul(&a, 4);
        assert!(r.refuted());
        assert_eq!((r.witnesses[0].n, r.witnesses[0].r), (2, 3));
        assert!(check_tight(&a).holds());
        let (q, r) = quadratic_check(&a);
        assert!(r.refuted());
        let q = q.unwrap();
        assert_eq!(q.w2_dim, 0);
        assert!(q.grades.iter().any(|&(s, _, ker)| s == 3 && ker > 0));
    }

    #[test]
    fn grade_two_arrow() {
        let a = Arc::new(truncated_poly_graded(2, 2, 2));
        assert!(check_tight(&a).refuted());
        let r = check_n_q_koszul(&a, &chain(&a), 2);
        assert!(r.refuted());
        assert!(r.witnesses.iter().any(|w| w.n == 1 && w.r == 2));
        assert_eq!(q_koszul_level(&a, &chain(&a), 2), Ok(0));
    }

    #[test]
    fn two_cycle_standard_q_koszul() {
        let a = Arc::new(two_cycle(2));
        let p = chain(&a);
        let r = check_standard_q_koszul(&a, &p, 6);
        assert!(r.holds(), "{:?}", r.witnesses);
        assert!(r.replay.as_ref().unwrap().holds());
        assert!(product_formula_check(&a, &p, 4).holds());
        let suite = delta0_filtration_suite(&a, &p, 3);
        assert!(suite.counterexamples().is_empty(), "{:?}", suite.claims);
        let bim = bimodule_filtration_check(&a, &p);
        assert!(bim.counterexamples().is_empty(), "{:?}", bim.claims);
    }

    #[test]
    fn not_quasi_hereditary_base_is_a_precondition() {
        let a = Arc::new(quiver(2, &["1"], &[("z", "1", "1", 0)], &[&[(1, "z z")]]));
        let r = check_n_q_koszul(&a, &chain(&a), 2);
        assert!(matches!(r.verdict, Verdict::Precondition(_)));
    }

    #[test]
    fn reports_serialize() {
        let a = Arc::new(dual_numbers(3));
        let r = check_koszul(&a, 2);
        let s = serde_json::to_string(&r).unwrap();
        let back: PropertyReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
