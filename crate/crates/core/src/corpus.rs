//! Exhaustive corpus of small bound-quiver algebras and the theorem suites
//! run over it.
//!
//! Quivers have at most `max_vertices` vertices and `max_arrows` arrows of
//! grade at most `max_grade`, are connected, and are taken up to relabelling
//! of vertices. Grade-0 arrows are never loops and never form a cycle. Each
//! quiver is paired with the relation sets
//!
//! * none (acyclic quivers only),
//! * all paths of length 2,
//! * all paths of length 3,
//! * all paths of length 3 together with one path of length 2,
//! * all paths of length 3 together with `p − q` (and `p + q` when that
//!   differs) for parallel length-2 paths `p ≠ q` of equal grade,
//!
//! over each configured field, keeping algebras of dimension at most
//! `max_dim`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::Field;
use crate::gradalg::{build_algebra_with, ArrowSpec, GradedAlgebra, QuiverSpec, RelationTerm};
use crate::homolog::{ext_from_resolution, minimal_resolution, GradedModule};
use crate::koszul::{check_standard_q_koszul, check_tight, delta0_filtration_suite, q_koszul_level, quadratic_check};
use crate::par::Exec;
use crate::qha::{bgg_reciprocity, certify_qha, QhaVerdict, StandardSystem, WeightPoset};
use crate::symgrp::all_perms;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_grade: u32,
    pub characteristics: Vec<u64>,
    pub max_dim: usize,
    /// Ext degree bound for the suites.
    pub degree: usize,
    /// Keep a random subset of this size, if set.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { max_vertices: 3, max_arrows: 4, max_grade: 2, characteristics: vec![2, 3], max_dim: 40, degree: 2, sample: None, seed: 0 }
    }
}

/// Arrow `(source, target, grade)`.
type ArrowType = (usize, usize, u32);

fn canonical(arrows: &[ArrowType], perms: &[Vec<u8>]) -> Vec<ArrowType> {
    perms
        .iter()
        .map(|p| {
            let mut v: Vec<ArrowType> = arrows.iter().map(|&(s, t, g)| (p[s] as usize, p[t] as usize, g)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

fn connected(n: usize, arrows: &[ArrowType]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            x = c[x];
        }
        x
    }
    for &(s, t, _) in arrows {
        let (a, b) = (root(&mut comp, s), root(&mut comp, t));
        comp[a] = b;
    }
    let r = root(&mut comp, 0);
    (0..n).all(|v| root(&mut comp, v) == r)
}

/// Whether the arrows selected by `keep` contain an oriented cycle.
fn has_cycle(n: usize, arrows: &[ArrowType], keep: impl Fn(&ArrowType) -> bool) -> bool {
    let mut indeg = vec![0; n];
    let kept: Vec<&ArrowType> = arrows.iter().filter(|a| keep(a)).collect();
    for a in &kept {
        indeg[a.1] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for a in kept.iter().filter(|a| a.0 == v) {
            indeg[a.1] -= 1;
            if indeg[a.1] == 0 {
                stack.push(a.1);
            }
        }
    }
    seen < n
}

/// Quivers up to vertex relabelling.
pub fn quivers(cfg: &CorpusConfig) -> Vec<(usize, Vec<ArrowType>)> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_vertices {
        let perms = all_perms(n);
        let types: Vec<ArrowType> =
            (0..n).flat_map(|s| (0..n).flat_map(move |t| (0..=cfg.max_grade).map(move |g| (s, t, g)))).filter(|&(s, t, g)| g > 0 || s != t).collect();
        let mut seen = BTreeSet::new();
        let mut choose = vec![];
        multisets(&types, cfg.max_arrows, 0, &mut choose, &mut |arrows| {
            if !connected(n, arrows) || has_cycle(n, arrows, |a| a.2 == 0) {
                return;
            }
            let c = canonical(arrows, &perms);
            if seen.insert(c.clone()) {
                out.push((n, c));
            }
        });
    }
    out
}

fn multisets(types: &[ArrowType], left: usize, from: usize, cur: &mut Vec<ArrowType>, f: &mut dyn FnMut(&[ArrowType])) {
    f(cur);
    if left == 0 {
        return;
    }
    for i in from..types.len() {
        cur.push(types[i]);
        multisets(types, left - 1, i, cur, f);
        cur.pop();
    }
}

/// Composable arrow words of length `len`, rightmost arrow first.
fn paths(arrows: &[ArrowType], len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..arrows.len()).map(|i| vec![i]).collect();
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                let end = arrows[p[0]].1;
                (0..arrows.len()).filter(move |&j| arrows[j].0 == end).map(move |j| {
                    let mut q = vec![j];
                    q.extend(&p);
                    q
                })
            })
            .collect();
    }
    out
}

type RelationSet = Vec<Vec<(i64, Vec<usize>)>>;

fn relation_sets(n: usize, arrows: &[ArrowType], p: u64) -> Vec<RelationSet> {
    let mono = |ps: &[Vec<usize>]| -> RelationSet { ps.iter().map(|q| vec![(1, q.clone())]).collect() };
    let len2 = paths(arrows, 2);
    let len3 = paths(arrows, 3);
    let cube = mono(&len3);
    let mut sets: Vec<RelationSet> = Vec::new();
    if !has_cycle(n, arrows, |_| true) {
        sets.push(vec![]);
    }
    sets.push(mono(&len2));
    sets.push(cube.clone());
    for q in &len2 {
        let mut s = cube.clone();
        s.push(vec![(1, q.clone())]);
        sets.push(s);
    }
    let ends = |q: &Vec<usize>| (arrows[q[q.len() - 1]].0, arrows[q[0]].1, q.iter().map(|&a| arrows[a].2).sum::<u32>());
    for (i, a) in len2.iter().enumerate() {
        for b in &len2[i + 1..] {
            if ends(a) != ends(b) {
                continue;
            }
            let signs: &[i64] = if p == 2 { &[-1] } else { &[-1, 1] };
            for &c in signs {
                let mut s = cube.clone();
                s.push(vec![(1, a.clone()), (c, b.clone())]);
                sets.push(s);
            }
        }
    }
    let autos = automorphisms(n, arrows);
    let mut seen = BTreeSet::new();
    sets.into_iter().filter(|s| seen.insert(autos.iter().map(|m| normalize(s, m)).min().unwrap_or_default())).collect()
}

/// Arrow permutations induced by quiver automorphisms: a vertex permutation
/// together with a type-preserving bijection of the arrows.
fn automorphisms(n: usize, arrows: &[ArrowType]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for vp in all_perms(n) {
        let mapped: Vec<ArrowType> = arrows.iter().map(|&(s, t, g)| (vp[s] as usize, vp[t] as usize, g)).collect();
        for ap in all_perms(arrows.len()) {
            if (0..arrows.len()).all(|i| arrows[ap[i] as usize] == mapped[i]) {
                out.push(ap.iter().map(|&x| x as usize).collect());
            }
        }
    }
    out
}

/// Relation set with arrows renamed by `map`, each relation scaled to a
/// leading coefficient 1 on its least path, relations sorted.
fn normalize(set: &RelationSet, map: &[usize]) -> RelationSet {
    let mut out: RelationSet = set
        .iter()
        .map(|r| {
            let mut terms: Vec<(i64, Vec<usize>)> = r.iter().map(|(c, w)| (*c, w.iter().map(|&a| map[a]).collect())).collect();
            terms.sort_by(|x, y| x.1.cmp(&y.1));
            // Coefficients are ±1, so scaling by the leading one is its own inverse.
            let lead = terms[0].0;
            terms.iter_mut().for_each(|t| t.0 *= lead);
            terms
        })
        .collect();
    out.sort();
    out
}

fn to_spec(n: usize, arrows: &[ArrowType], rels: &RelationSet, field: Field) -> QuiverSpec {
    let label = |i: usize| ((b'a' + i as u8) as char).to_string();
    QuiverSpec {
        field,
        vertices: (1..=n).map(|v| v.to_string()).collect(),
        arrows: arrows
            .iter()
            .enumerate()
            .map(|(i, &(s, t, g))| ArrowSpec { label: label(i), source: (s + 1).to_string(), target: (t + 1).to_string(), grade: g })
            .collect(),
        relations: rels.iter().map(|r| r.iter().map(|(c, w)| RelationTerm { coeff: *c, path: w.iter().map(|&a| label(a)).collect() }).collect()).collect(),
    }
}

/// All presentations in the corpus, before building.
pub fn presentations(cfg: &CorpusConfig) -> crate::error::Result<Vec<QuiverSpec>> {
    let mut out = Vec::new();
    for &p in &cfg.characteristics {
        let field = Field::from_characteristic(p)?;
        for (n, arrows) in quivers(cfg) {
            for rels in relation_sets(n, &arrows, p) {
                out.push(to_spec(n, &arrows, &rels, field));
            }
        }
    }
    if let Some(k) = cfg.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        out.shuffle(&mut rng);
        out.truncate(k);
    }
    Ok(out)
}

/// One algebra of the corpus with its presentation.
#[derive(Clone, Debug)]
pub struct CorpusAlgebra {
    pub spec: QuiverSpec,
    pub algebra: Arc<GradedAlgebra>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub presentations: usize,
    pub built: usize,
    pub over_dim: usize,
    /// Presentations the builder rejected, by error kind.
    pub rejected: BTreeMap<String, usize>,
}

/// Build every presentation, keeping those within the dimension bound.
pub fn generate(cfg: &CorpusConfig, exec: Exec) -> crate::error::Result<(Vec<CorpusAlgebra>, CorpusStats)> {
    let specs = presentations(cfg)?;
    let mut stats = CorpusStats { presentations: specs.len(), ..Default::default() };
    let built = exec.map(specs, |s| {
        let r = build_algebra_with(&s, cfg.max_dim);
        (s, r)
    });
    let mut out = Vec::new();
    for (spec, r) in built {
        match r {
            Ok(a) => out.push(CorpusAlgebra { spec, algebra: Arc::new(a) }),
            Err(crate::GrexError::DimensionGuard { .. }) => stats.over_dim += 1,
            Err(e) => *stats.rejected.entry(error_kind(&e)).or_default() += 1,
        }
    }
    stats.built = out.len();
    Ok((out, stats))
}

fn error_kind(e: &crate::GrexError) -> String {
    format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("").to_string()
}

/// The theorem-as-property suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// 1-Q-Koszul implies tight.
    OneQKoszulTight,
    /// 2-Q-Koszul implies quadratic, and `A₁` is `Δ⁰`-filtered.
    TwoQKoszulQuadratic,
    /// Standard Q-Koszul implies Q-Koszul.
    StandardImpliesQKoszul,
    /// `Σ_r dim ext^n(M, N⟨r⟩) = dim Ext^n(M, N)` on simples.
    GradedExtSum,
    /// BGG reciprocity on certified quasi-hereditary algebras.
    BggReciprocity,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::OneQKoszulTight, Suite::TwoQKoszulQuadratic, Suite::StandardImpliesQKoszul, Suite::GradedExtSum, Suite::BggReciprocity];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OneQKoszulTight => "1-q-koszul-implies-tight",
            Suite::TwoQKoszulQuadratic => "2-q-koszul-implies-quadratic-and-filtered",
            Suite::StandardImpliesQKoszul => "standard-q-koszul-implies-q-koszul",
            Suite::GradedExtSum => "graded-ext-sum",
            Suite::BggReciprocity => "bgg-reciprocity",
        }
    }
}

/// An instance whose hypotheses held but whose conclusion failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: Suite,
    pub spec: QuiverSpec,
    /// Vertex order, lowest weight first.
    pub order: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteTally {
    pub instances: usize,
    pub hypotheses_met: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub config: CorpusConfig,
    pub stats: CorpusStats,
    pub suites: BTreeMap<Suite, SuiteTally>,
}

impl CorpusReport {
    pub fn counterexamples(&self) -> usize {
        self.suites.values().map(|t| t.counterexamples.len()).sum()
    }
}

/// `(suite, hypotheses met, failure detail)` per instance.
type Outcome = (Suite, bool, Option<String>, Vec<String>);

fn total_orders(a: &GradedAlgebra) -> Vec<WeightPoset> {
    let n = a.num_vertices();
    all_perms(n)
        .into_iter()
        .map(|p| {
            let covers: Vec<(usize, usize)> = (1..n).map(|i| (p[i - 1] as usize, p[i] as usize)).collect();
            WeightPoset::from_covers(a.vertices.clone(), &covers).expect("a chain is acyclic")
        })
        .collect()
}

fn order_labels(p: &WeightPoset) -> Vec<String> {
    let n = p.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| (0..n).filter(|&j| p.lt(j, i)).count());
    idx.into_iter().map(|i| p.labels[i].clone()).collect()
}

/// Run every suite on one algebra, over every total order of its vertices.
pub fn run_suites(a: &Arc<GradedAlgebra>, degree: usize) -> Vec<Outcome> {
    let mut out = Vec::new();
    let n = a.num_vertices();
    let simples: Vec<GradedModule> = (0..n).map(|v| GradedModule::simple(a.clone(), v, 0)).collect();
    let ungraded = Arc::new(a.forget_grading());
    let flat: Vec<GradedModule> = simples.iter().map(|s| s.forget_grading(ungraded.clone())).collect();
    let mut bad = Vec::new();
    for i in 0..n {
        let res = minimal_resolution(&simples[i], degree + 1);
        let flat_res = minimal_resolution(&flat[i], degree + 1);
        for j in 0..n {
            let g = ext_from_resolution(&res, &simples[j], degree);
            let u = ext_from_resolution(&flat_res, &flat[j], degree);
            let u: Vec<usize> = (0..=degree).map(|k| u.get(k, 0)).collect();
            if g.ungraded != u {
                bad.push(format!("Ext(L({}), L({})): graded sums {:?}, ungraded {:?}", a.vertices[i], a.vertices[j], g.ungraded, u));
            }
        }
    }
    out.push((Suite::GradedExtSum, true, bad.first().cloned(), vec![]));

    let tight = check_tight(a).holds();
    let quadratic = quadratic_check(a).1.holds();
    for poset in total_orders(a) {
        let order = order_labels(&poset);
        let level = q_koszul_level(a, &poset, degree.max(2));
        if let Ok(level) = level {
            out.push((Suite::OneQKoszulTight, level >= 1, (level >= 1 && !tight).then(|| "not tight".to_string()), order.clone()));
            if level >= 2 {
                let filt = delta0_filtration_suite(a, &poset, 2);
                let a1 = filt.claims.iter().find(|c| c.name == "A_1 left Δ⁰");
                let filtered = a1.map(|c| c.holds).unwrap_or(false);
                let detail = match (quadratic, filtered) {
                    (true, true) => None,
                    (false, _) => Some("not quadratic".to_string()),
                    (true, false) => Some(format!("A_1 not Δ⁰-filtered: {}", a1.map(|c| c.detail.as_str()).unwrap_or("missing"))),
                };
                out.push((Suite::TwoQKoszulQuadratic, true, detail, order.clone()));
            } else {
                out.push((Suite::TwoQKoszulQuadratic, false, None, order.clone()));
            }
        }
        let Ok(sys) = StandardSystem::new(a.clone(), poset.clone()) else { continue };
        match certify_qha(&sys) {
            QhaVerdict::Certified(cert) => {
                let bgg = bgg_reciprocity(&sys, &cert).err().map(|(l, m)| format!("[P({}):Δ({})] ≠ [∇({}):L({})]", a.vertices[l], a.vertices[m], a.vertices[m], a.vertices[l]));
                out.push((Suite::BggReciprocity, true, bgg, order.clone()));
                let sq = check_standard_q_koszul(a, &poset, degree);
                if sq.holds() {
                    let replay_ok = sq.replay.as_ref().map(|r| r.holds()).unwrap_or(false);
                    out.push((Suite::StandardImpliesQKoszul, true, (!replay_ok).then(|| "standard Q-Koszul but the Q-Koszul replay fails".to_string()), order));
                } else {
                    out.push((Suite::StandardImpliesQKoszul, false, None, order));
                }
            }
            QhaVerdict::Refuted(_) => out.push((Suite::BggReciprocity, false, None, order)),
        }
    }
    out
}

/// Generate the corpus and run all suites, building each algebra inside
/// its work item so that only one algebra per worker is alive at a time.
pub fn run_corpus(cfg: &CorpusConfig, exec: Exec) -> crate::error::Result<CorpusReport> {
    let specs = presentations(cfg)?;
    let mut stats = CorpusStats { presentations: specs.len(), ..Default::default() };
    let degree = cfg.degree;
    let results = exec.map(specs, |spec| match build_algebra_with(&spec, cfg.max_dim) {
        Ok(a) => Ok((run_suites(&Arc::new(a), degree), spec)),
        Err(e) => Err(e),
    });
    let mut suites: BTreeMap<Suite, SuiteTally> = Suite::ALL.iter().map(|s| (*s, SuiteTally::default())).collect();
    for r in results {
        let (outcomes, spec) = match r {
            Ok(x) => x,
            Err(crate::GrexError::DimensionGuard { .. }) => {
                stats.over_dim += 1;
                continue;
            }
            Err(e) => {
                *stats.rejected.entry(error_kind(&e)).or_default() += 1;
                continue;
            }
        };
        stats.built += 1;
        for (suite, met, failure, order) in outcomes {
            let t = suites.entry(suite).or_default();
            t.instances += 1;
            if met {
                t.hypotheses_met += 1;
                if let Some(detail) = failure {
                    t.counterexamples.push(Counterexample { suite, spec: spec.clone(), order, detail });
                }
            }
        }
    }
    Ok(CorpusReport { config: cfg.clone(), stats, suites })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_counts() {
        let cfg = CorpusConfig { max_vertices: 1, max_arrows: 1, max_grade: 1, ..Default::default() };
        // One vertex: no arrows, or one loop of grade 1.
        assert_eq!(quivers(&cfg).len(), 2);
        let cfg = CorpusConfig { max_vertices: 2, max_arrows: 1, max_grade: 0, ..Default::default() };
        // Two vertices need an arrow; both directions are the same up to relabelling.
        assert_eq!(quivers(&cfg).iter().filter(|q| q.0 == 2).count(), 1);
    }

    #[test]
    fn relations_of_a_loop() {
        let loop_ = vec![(0, 0, 1)];
        let sets = relation_sets(1, &loop_, 3);
        // x² = 0; x³ = 0; x³ = 0 together with x² = 0.
        assert_eq!(sets.len(), 3);
    }

    #[test]
    fn small_corpus_has_no_counterexamples() {
        let cfg = CorpusConfig { max_vertices: 2, max_arrows: 2, max_grade: 1, characteristics: vec![2], degree: 2, ..Default::default() };
        let r = run_corpus(&cfg, Exec::Sequential).unwrap();
        assert!(r.stats.built > 5);
        assert_eq!(r.counterexamples(), 0, "{:#?}", r.suites);
        assert!(r.suites[&Suite::BggReciprocity].hypotheses_met > 0);
    }
}
