//! Symmetric groups and their Hecke algebras: partitions, Young subgroups,
//! permutation and Specht modules over prime fields, composition factors,
//! and `q`-permutation modules over ℚ.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GrexError, Result};
use crate::exact::{Echelon, ExactMatrix, Field, LaurentPoly, Scalar};

pub const MAX_MODULE_DIM: usize = 200;
const MAX_SPIN_VECTORS: u64 = 1 << 16;

/// A partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(GrexError::InvalidInput(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Parse `3,2`, `2^2,1` or `1^5`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || GrexError::Parse(format!("bad partition token {tok:?}"));
            let (base, rep) = match tok.split_once('^') {
                Some((b, r)) => (b.trim().parse::<usize>().map_err(|_| bad())?, r.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok.parse::<usize>().map_err(|_| bad())?, 1),
            };
            parts.extend(std::iter::repeat_n(base, rep));
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn dual(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// No part repeated `p` or more times.
    pub fn is_regular(&self, p: usize) -> bool {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in &self.0 {
            *counts.entry(x).or_default() += 1;
        }
        counts.values().all(|&c| c < p)
    }

    /// The `p`-core, by sliding beads up on a `p`-runner abacus.
    pub fn core(&self, p: usize) -> Partition {
        let k = self.0.len();
        let beta: Vec<usize> = (0..k).map(|i| self.0[i] + (k - 1 - i)).collect();
        let mut runners = vec![0usize; p];
        for b in &beta {
            runners[b % p] += 1;
        }
        let mut slid: Vec<usize> = Vec::new();
        for (r, &count) in runners.iter().enumerate() {
            for level in 0..count {
                slid.push(r + level * p);
            }
        }
        slid.sort_unstable_by(|a, b| b.cmp(a));
        Partition((0..k).map(|i| slid[i] - (k - 1 - i)).filter(|&x| x > 0).collect())
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0usize, 0usize);
        (0..len).all(|i| {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            a >= b
        })
    }

    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let d = self.dual();
        (0..self.0.len()).map(|i| (0..self.0[i]).map(|j| (self.0[i] - j) + (d.0[j] - i) - 1).collect()).collect()
    }

    /// Number of standard tableaux, by the hook-length formula.
    pub fn hook_dimension(&self) -> u128 {
        let num: u128 = (1..=self.size() as u128).product();
        let den: u128 = self.hook_lengths().into_iter().flatten().map(|h| h as u128).product();
        num / den
    }

    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut toks = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let j = (i..self.0.len()).take_while(|&j| self.0[j] == self.0[i]).count();
            toks.push(if j > 1 { format!("{}^{}", self.0[i], j) } else { self.0[i].to_string() });
            i += j;
        }
        write!(f, "({})", toks.join(","))
    }
}

/// A permutation of `{0, …, n−1}` in one-line notation.
pub type Perm = Vec<u8>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn perm_length(w: &[u8]) -> usize {
    (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

/// `(xy)(i) = x(y(i))`.
pub fn perm_mul(x: &[u8], y: &[u8]) -> Perm {
    y.iter().map(|&i| x[i as usize]).collect()
}

pub fn perm_inverse(w: &[u8]) -> Perm {
    let mut out = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        out[v as usize] = i as u8;
    }
    out
}

/// `w s_i`: swap positions `i, i+1`.
pub fn perm_right_gen(w: &[u8], i: usize) -> Perm {
    let mut out = w.to_vec();
    out.swap(i, i + 1);
    out
}

/// `s_i w`: swap values `i, i+1`.
pub fn perm_left_gen(i: usize, w: &[u8]) -> Perm {
    w.iter().map(|&v| if v as usize == i { v + 1 } else if v as usize == i + 1 { v - 1 } else { v }).collect()
}

/// Lexicographically least reduced word (generator indices from 0).
pub fn perm_reduced_word(w: &[u8]) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = w.to_vec();
    // Strip left descents: s_i w < w iff i+1 precedes i in one-line.
    while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| {
        let inv = perm_inverse(&cur);
        inv[i] > inv[i + 1]
    }) {
        word.push(i);
        cur = perm_left_gen(i, &cur);
    }
    word
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![];
    let mut stack = vec![(Vec::<u8>::new(), (0..n as u8).collect::<Vec<_>>())];
    while let Some((pre, rest)) = stack.pop() {
        if rest.is_empty() {
            out.push(pre);
            continue;
        }
        for k in (0..rest.len()).rev() {
            let mut p = pre.clone();
            p.push(rest[k]);
            let mut r = rest.clone();
            r.remove(k);
            stack.push((p, r));
        }
    }
    out
}

/// Generators and elements of the Young subgroup of a composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoungSubgroup {
    pub composition: Vec<usize>,
    pub generators: Vec<usize>,
}

impl YoungSubgroup {
    pub fn new(composition: &[usize]) -> Self {
        YoungSubgroup { composition: composition.to_vec(), generators: crate::kl::young_generators(composition) }
    }

    pub fn n(&self) -> usize {
        self.composition.iter().sum()
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        let mut block = Vec::with_capacity(self.n());
        for (b, &part) in self.composition.iter().enumerate() {
            block.extend(std::iter::repeat_n(b, part));
        }
        w.iter().enumerate().all(|(i, &v)| block[i] == block[v as usize])
    }

    pub fn elements(&self) -> Vec<Perm> {
        all_perms(self.n()).into_iter().filter(|w| self.contains(w)).collect()
    }

    /// Shortest elements `d` of the right cosets `𝔖_λ d`.
    pub fn distinguished_reps(&self) -> Vec<Perm> {
        let mut reps: Vec<Perm> = all_perms(self.n())
            .into_iter()
            .filter(|d| {
                let inv = perm_inverse(d);
                self.generators.iter().all(|&i| inv[i] < inv[i + 1])
            })
            .collect();
        reps.sort_by_key(|d| (perm_length(d), d.clone()));
        reps
    }

    /// `Σ_d q^{ℓ(d)}` over distinguished representatives.
    pub fn rep_generating_function(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for d in self.distinguished_reps() {
            p.add_term(perm_length(&d) as i64, 1);
        }
        p
    }
}

/// A left module for `F𝔖_n`, given by the matrices of the generators `s_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupModule {
    pub field: Field,
    pub n: usize,
    pub gens: Vec<ExactMatrix>,
    pub dim: usize,
}

impl GroupModule {
    pub fn new(field: Field, n: usize, dim: usize, gens: Vec<ExactMatrix>) -> Result<Self> {
        if gens.len() != n.saturating_sub(1) || gens.iter().any(|g| g.rows != dim || g.cols != dim) {
            return Err(GrexError::InvalidInput("generator matrices have the wrong shape".into()));
        }
        Ok(GroupModule { field, n, gens, dim })
    }

    pub fn trivial(field: Field, n: usize) -> Self {
        GroupModule { field, n, gens: vec![ExactMatrix::identity(field, 1); n.saturating_sub(1)], dim: 1 }
    }

    pub fn direct_sum(&self, other: &GroupModule) -> GroupModule {
        let d = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = ExactMatrix::zeros(self.field, d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        GroupModule { field: self.field, n: self.n, gens, dim: d }
    }

    /// Coxeter relations of `𝔖_n` on the generator matrices.
    pub fn satisfies_relations(&self) -> bool {
        let id = ExactMatrix::identity(self.field, self.dim);
        let k = self.gens.len();
        (0..k).all(|i| {
            self.gens[i].mul(&self.gens[i]) == id
                && (0..k).all(|j| {
                    let (a, b) = (&self.gens[i], &self.gens[j]);
                    if i.abs_diff(j) == 1 {
                        a.mul(b).mul(a) == b.mul(a).mul(b)
                    } else {
                        a.mul(b) == b.mul(a)
                    }
                })
        })
    }

    /// Whether `gram` is a nondegenerate form with `gᵀ G g = G` for all `g`.
    pub fn is_invariant_form(&self, gram: &ExactMatrix) -> bool {
        gram.rank() == self.dim && self.gens.iter().all(|g| &g.transpose().mul(gram).mul(g) == gram)
    }

    /// Smallest submodule containing `v`.
    pub fn spin(&self, v: &[Scalar]) -> Echelon {
        spin_with(self.field, self.dim, &self.gens, v)
    }

    /// Submodule and quotient for a submodule basis.
    fn split(&self, sub: &Echelon) -> (GroupModule, GroupModule) {
        let f = self.field;
        let k = sub.dim();
        let pivots: BTreeSet<usize> = sub.pivots().iter().copied().collect();
        let mut basis: Vec<Vec<Scalar>> = sub.rows().to_vec();
        basis.extend((0..self.dim).filter(|j| !pivots.contains(j)).map(|j| f.unit_vector(self.dim, j)));
        let mut ech = Echelon::tracking(f, self.dim);
        for b in &basis {
            ech.insert(b);
        }
        let mut sub_gens = Vec::new();
        let mut quo_gens = Vec::new();
        for g in &self.gens {
            let coords: Vec<Vec<Scalar>> = basis.iter().map(|b| ech.solve(&g.apply(b)).expect("basis spans")).collect();
            let sub_cols: Vec<Vec<Scalar>> = coords[..k].iter().map(|c| c[..k].to_vec()).collect();
            let quo_cols: Vec<Vec<Scalar>> = coords[k..].iter().map(|c| c[k..].to_vec()).collect();
            sub_gens.push(ExactMatrix::from_columns(f, k, &sub_cols));
            quo_gens.push(ExactMatrix::from_columns(f, self.dim - k, &quo_cols));
        }
        (
            GroupModule { field: f, n: self.n, gens: sub_gens, dim: k },
            GroupModule { field: f, n: self.n, gens: quo_gens, dim: self.dim - k },
        )
    }

    fn group_element_matrices(&self, count: usize, rng: &mut ChaCha8Rng) -> Vec<ExactMatrix> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut m = ExactMatrix::identity(self.field, self.dim);
            for _ in 0..(2 * self.n).max(1) {
                if self.gens.is_empty() {
                    break;
                }
                m = m.mul(&self.gens[rng.gen_range(0..self.gens.len())]);
            }
            out.push(m);
        }
        out
    }

    /// A singular group-algebra element of small positive nullity.
    fn singular_element(&self) -> Option<(ExactMatrix, Vec<Vec<Scalar>>)> {
        let f = self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let id = ExactMatrix::identity(f, self.dim);
        let scalars: Vec<Scalar> = match f {
            Field::Prime(p) => (0..p.min(8)).map(|c| f.from_i64(c as i64)).collect(),
            Field::Rational => (-2..=2).map(|c| f.from_i64(c)).collect(),
        };
        let mut candidates: Vec<ExactMatrix> = Vec::new();
        for g in &self.gens {
            for c in [f.one(), f.neg(&f.one())] {
                candidates.push(sum_scaled(g, &id, &c));
            }
        }
        let els = self.group_element_matrices(24, &mut rng);
        for w in els.chunks(2) {
            let base = if w.len() == 2 { add(&w[0], &w[1]) } else { w[0].clone() };
            for c in &scalars {
                candidates.push(sum_scaled(&base, &id, c));
            }
        }
        let mut best: Option<(ExactMatrix, Vec<Vec<Scalar>>)> = None;
        for a in candidates {
            let ker = a.kernel_basis();
            if ker.is_empty() {
                continue;
            }
            if best.as_ref().map(|b| ker.len() < b.1.len()).unwrap_or(true) {
                let done = ker.len() == 1;
                best = Some((a, ker));
                if done {
                    break;
                }
            }
        }
        best
    }

    /// A proper nonzero submodule, or `None` if the module is irreducible.
    pub fn proper_submodule(&self) -> Result<Option<Echelon>> {
        if self.dim <= 1 {
            return Ok(None);
        }
        if self.dim > MAX_MODULE_DIM {
            return Err(GrexError::DimensionGuard { dim: self.dim, bound: MAX_MODULE_DIM });
        }
        let f = self.field;
        let (a, ker) = self.singular_element().ok_or_else(|| GrexError::Structural("no singular element found".into()))?;
        // Every nonzero kernel vector must generate the whole module.
        for v in kernel_vectors(f, &ker)? {
            let s = self.spin(&v);
            if s.dim() < self.dim {
                return Ok(Some(s));
            }
        }
        // One kernel vector of the transpose must generate the dual.
        let tgens: Vec<ExactMatrix> = self.gens.iter().map(ExactMatrix::transpose).collect();
        let kt = a.transpose().kernel_basis();
        let w = &kt[0];
        let s = spin_with(f, self.dim, &tgens, w);
        if s.dim() < self.dim {
            let ann = ExactMatrix::from_rows(f, self.dim, s.rows().to_vec()).kernel_basis();
            let mut e = Echelon::new(f, self.dim);
            for v in &ann {
                e.insert(v);
            }
            return Ok(Some(e));
        }
        Ok(None)
    }

    /// Dimensions of the factors of a composition series, sorted.
    pub fn composition_factor_dims(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(m) = stack.pop() {
            if m.dim == 0 {
                continue;
            }
            match m.proper_submodule()? {
                None => out.push(m.dim),
                Some(sub) => {
                    let (s, q) = m.split(&sub);
                    stack.push(s);
                    stack.push(q);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

fn add(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    sum_scaled(a, b, &a.field.one())
}

/// `a + c·b`.
fn sum_scaled(a: &ExactMatrix, b: &ExactMatrix, c: &Scalar) -> ExactMatrix {
    let f = a.field;
    let mut m = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            let v = f.add(a.get(i, j), &f.mul(c, b.get(i, j)));
            m.set(i, j, v);
        }
    }
    m
}

fn spin_with(f: Field, dim: usize, gens: &[ExactMatrix], v: &[Scalar]) -> Echelon {
    let mut e = Echelon::new(f, dim);
    if !e.insert(v) {
        return e;
    }
    let mut queue = VecDeque::from([v.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(&x);
            if e.insert(&y) {
                queue.push_back(y);
            }
        }
    }
    e
}

/// One representative of every line in the span of `basis`.
fn kernel_vectors(f: Field, basis: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let k = basis.len();
    let p = match f {
        Field::Prime(p) => p,
        Field::Rational if k == 1 => return Ok(vec![basis[0].clone()]),
        Field::Rational => return Err(GrexError::Precondition("composition series over ℚ needs a nullity-one element".into())),
    };
    let lines = (0..k as u32).try_fold(0u64, |acc, i| p.checked_pow(i).map(|x| acc + x));
    match lines {
        Some(c) if c <= MAX_SPIN_VECTORS => {}
        _ => return Err(GrexError::DimensionGuard { dim: k, bound: MAX_SPIN_VECTORS as usize }),
    }
    let dim = basis[0].len();
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        for code in 0..p.pow(free as u32) {
            let mut v = basis[lead].clone();
            let mut c = code;
            for b in &basis[lead + 1..] {
                let coeff = f.from_i64((c % p) as i64);
                c /= p;
                f.add_scaled(&mut v, &coeff, b);
            }
            debug_assert_eq!(v.len(), dim);
            out.push(v);
        }
    }
    Ok(out)
}

/// Tabloids of shape `λ`, each encoded by the row index of every entry.
fn tabloids(parts: &[usize]) -> Vec<Vec<u8>> {
    let n: usize = parts.iter().sum();
    let mut out = Vec::new();
    fn rec(i: usize, n: usize, left: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..left.len() {
            if left[r] > 0 {
                left[r] -= 1;
                cur.push(r as u8);
                rec(i + 1, n, left, cur, out);
                cur.pop();
                left[r] += 1;
            }
        }
    }
    rec(0, n, &mut parts.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// The permutation module on `λ`-tabloids (the coset module of the Young
/// subgroup), with its tabloid list.
pub fn permutation_module(composition: &[usize], field: Field) -> (GroupModule, Vec<Vec<u8>>) {
    let n: usize = composition.iter().sum();
    let tabs = tabloids(composition);
    let index: HashMap<Vec<u8>, usize> = tabs.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let gens = (0..n.saturating_sub(1))
        .map(|s| {
            let mut m = ExactMatrix::zeros(field, tabs.len(), tabs.len());
            for (j, t) in tabs.iter().enumerate() {
                let mut u = t.clone();
                u.swap(s, s + 1);
                m.set(index[&u], j, field.one());
            }
            m
        })
        .collect();
    (GroupModule { field, n, gens, dim: tabs.len() }, tabs)
}

/// Standard tableaux of shape `λ` (rows of entries `0..n`).
pub fn standard_tableaux(shape: &Partition) -> Vec<Vec<Vec<u8>>> {
    let n = shape.size();
    let mut out = Vec::new();
    fn rec(k: usize, n: usize, shape: &[usize], t: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if k == n {
            out.push(t.clone());
            return;
        }
        for r in 0..shape.len() {
            let len = t[r].len();
            if len < shape[r] && (r == 0 || t[r - 1].len() > len) {
                t[r].push(k as u8);
                rec(k + 1, n, shape, t, out);
                t[r].pop();
            }
        }
    }
    let mut t = vec![Vec::new(); shape.parts().len()];
    rec(0, n, shape.parts(), &mut t, &mut out);
    out
}

/// `e_t = Σ_{c ∈ C_t} sgn(c) {ct}` as a vector on tabloids.
fn polytabloid(t: &[Vec<u8>], shape: &Partition, index: &HashMap<Vec<u8>, usize>, field: Field) -> Vec<Scalar> {
    let n = shape.size();
    let cols: Vec<Vec<u8>> = (0..shape.dual().parts().len()).map(|j| t.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect();
    let mut v = field.zeros(index.len());
    let col_perms: Vec<Vec<(Perm, bool)>> = cols
        .iter()
        .map(|c| all_perms(c.len()).into_iter().map(|p| { let odd = perm_length(&p) % 2 == 1; (p, odd) }).collect())
        .collect();
    let mut choice = vec![0usize; cols.len()];
    loop {
        let mut rows = vec![0u8; n];
        let mut odd = false;
        for (j, col) in cols.iter().enumerate() {
            let (p, o) = &col_perms[j][choice[j]];
            odd ^= *o;
            // entry col[i] moves to the cell of col[p[i]], i.e. to row p[i]
            for (i, &e) in col.iter().enumerate() {
                rows[e as usize] = p[i];
            }
        }
        let c = if odd { field.neg(&field.one()) } else { field.one() };
        let k = index[&rows];
        v[k] = field.add(&v[k], &c);
        let mut j = 0;
        loop {
            if j == cols.len() {
                return v;
            }
            choice[j] += 1;
            if choice[j] < col_perms[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// The Specht module `S_λ` over `field`, spanned by standard polytabloids.
pub fn specht_module(shape: &Partition, field: Field) -> Result<GroupModule> {
    let n = shape.size();
    if n > 8 {
        return Err(GrexError::DimensionGuard { dim: n, bound: 8 });
    }
    let tabs = tabloids(shape.parts());
    let index: HashMap<Vec<u8>, usize> = tabs.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let std = standard_tableaux(shape);
    let mut ech = Echelon::tracking(field, tabs.len());
    for t in &std {
        if !ech.insert(&polytabloid(t, shape, &index, field)) {
            return Err(GrexError::Structural("standard polytabloids are dependent".into()));
        }
    }
    let d = std.len();
    let gens = (0..n.saturating_sub(1))
        .map(|s| {
            let cols: Vec<Vec<Scalar>> = std
                .iter()
                .map(|t| {
                    let moved: Vec<Vec<u8>> = t
                        .iter()
                        .map(|r| r.iter().map(|&e| if e as usize == s { e + 1 } else if e as usize == s + 1 { e - 1 } else { e }).collect())
                        .collect();
                    ech.solve(&polytabloid(&moved, shape, &index, field)).ok_or_else(|| GrexError::Structural("Specht span not invariant".into()))
                })
                .collect::<Result<_>>()?;
            Ok(ExactMatrix::from_columns(field, d, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupModule { field, n, gens, dim: d })
}

/// Dimension of the space of module maps `M → N`.
pub fn hom_dim(m: &GroupModule, n: &GroupModule) -> usize {
    intertwiner_dim(m.field, m.dim, n.dim, &m.gens, &n.gens, false)
}

/// Solve `Φ A_s = B_s Φ` (left) or `A_s Φ = Φ B_s` (right action) for `Φ`.
fn intertwiner_basis(f: Field, dm: usize, dn: usize, a: &[ExactMatrix], b: &[ExactMatrix], right: bool) -> Vec<ExactMatrix> {
    // Unknown Φ is dn×dm (left) or dm×dn (right), flattened row-major.
    let (rows, cols) = if right { (dm, dn) } else { (dn, dm) };
    let nvar = rows * cols;
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for (am, bm) in a.iter().zip(b) {
        for i in 0..rows {
            for j in 0..cols {
                let mut eq = f.zeros(nvar);
                if right {
                    // (AΦ)_ij − (ΦB)_ij
                    for k in 0..dm {
                        let c = am.get(i, k);
                        if !f.is_zero(c) {
                            f.axpy(&mut eq[k * cols + j], &f.one(), c);
                        }
                    }
                    for k in 0..dn {
                        let c = bm.get(k, j);
                        if !f.is_zero(c) {
                            f.axpy(&mut eq[i * cols + k], &f.neg(&f.one()), c);
                        }
                    }
                } else {
                    // (ΦA)_ij − (BΦ)_ij
                    for k in 0..dm {
                        let c = am.get(k, j);
                        if !f.is_zero(c) {
                            f.axpy(&mut eq[i * cols + k], &f.one(), c);
                        }
                    }
                    for k in 0..dn {
                        let c = bm.get(i, k);
                        if !f.is_zero(c) {
                            f.axpy(&mut eq[k * cols + j], &f.neg(&f.one()), c);
                        }
                    }
                }
                if !f.is_zero_vec(&eq) {
                    eqs.push(eq);
                }
            }
        }
    }
    let sol = if eqs.is_empty() {
        (0..nvar).map(|i| f.unit_vector(nvar, i)).collect()
    } else {
        ExactMatrix::from_rows(f, nvar, eqs).kernel_basis()
    };
    sol.into_iter().map(|v| ExactMatrix::from_rows(f, cols, v.chunks(cols).map(|c| c.to_vec()).collect())).collect()
}

fn intertwiner_dim(f: Field, dm: usize, dn: usize, a: &[ExactMatrix], b: &[ExactMatrix], right: bool) -> usize {
    intertwiner_basis(f, dm, dn, a, b, right).len()
}

/// An element `Σ c_w τ_w` of a Hecke algebra.
pub type HeckeElement = BTreeMap<Perm, BigRational>;

/// The Iwahori-Hecke algebra of `𝔖_n` over ℚ at a fixed rational `q`, with
/// `τ_s² = (q−1)τ_s + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeAlgebra {
    pub n: usize,
    pub q: BigRational,
}

fn add_term(x: &mut HeckeElement, w: Perm, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(w).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        let key: Vec<Perm> = x.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
        for k in key {
            x.remove(&k);
        }
    }
}

impl HeckeAlgebra {
    pub fn new(n: usize, q: BigRational) -> Result<Self> {
        if n > 6 {
            return Err(GrexError::DimensionGuard { dim: n, bound: 6 });
        }
        Ok(HeckeAlgebra { n, q })
    }

    pub fn at_minus_one(n: usize) -> Result<Self> {
        Self::new(n, -BigRational::one())
    }

    pub fn dim(&self) -> usize {
        (1..=self.n).product()
    }

    pub fn tau(&self, w: &[u8]) -> HeckeElement {
        BTreeMap::from([(w.to_vec(), BigRational::one())])
    }

    pub fn one(&self) -> HeckeElement {
        self.tau(&perm_identity(self.n))
    }

    /// `x τ_s`.
    pub fn mul_gen_right(&self, x: &HeckeElement, s: usize) -> HeckeElement {
        let mut out = HeckeElement::new();
        for (w, c) in x {
            let ws = perm_right_gen(w, s);
            if w[s] < w[s + 1] {
                add_term(&mut out, ws, c.clone());
            } else {
                add_term(&mut out, w.clone(), c * (&self.q - BigRational::one()));
                add_term(&mut out, ws, c * &self.q);
            }
        }
        out
    }

    /// `τ_s x`.
    pub fn mul_gen_left(&self, s: usize, x: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::new();
        for (w, c) in x {
            let sw = perm_left_gen(s, w);
            let inv = perm_inverse(w);
            if inv[s] < inv[s + 1] {
                add_term(&mut out, sw, c.clone());
            } else {
                add_term(&mut out, w.clone(), c * (&self.q - BigRational::one()));
                add_term(&mut out, sw, c * &self.q);
            }
        }
        out
    }

    pub fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::new();
        for (w, c) in y {
            let mut part = x.clone();
            for s in perm_reduced_word(w) {
                part = self.mul_gen_right(&part, s);
            }
            for (v, d) in part {
                add_term(&mut out, v, d * c);
            }
        }
        out
    }

    /// `x_λ = Σ_{w ∈ 𝔖_λ} τ_w`.
    pub fn x_element(&self, composition: &[usize]) -> HeckeElement {
        YoungSubgroup::new(composition).elements().into_iter().map(|w| (w, BigRational::one())).collect()
    }

    /// Quadratic and braid relations, checked as right multiplication
    /// operators on every basis element.
    pub fn check_relations(&self) -> bool {
        let basis = all_perms(self.n);
        let k = self.n.saturating_sub(1);
        let q = &self.q;
        basis.iter().all(|w| {
            let x = self.tau(w);
            (0..k).all(|s| {
                let xs = self.mul_gen_right(&x, s);
                let lhs = self.mul_gen_right(&xs, s);
                let mut rhs = HeckeElement::new();
                for (v, c) in &xs {
                    add_term(&mut rhs, v.clone(), c * (q - BigRational::one()));
                }
                add_term(&mut rhs, w.clone(), q.clone());
                lhs == rhs
                    && (0..k).all(|t| {
                        if s.abs_diff(t) == 1 {
                            let a = self.mul_gen_right(&self.mul_gen_right(&xs, t), s);
                            let b = self.mul_gen_right(&self.mul_gen_right(&self.mul_gen_right(&x, t), s), t);
                            a == b
                        } else {
                            self.mul_gen_right(&xs, t) == self.mul_gen_right(&self.mul_gen_right(&x, t), s)
                        }
                    })
            })
        })
    }
}

/// The right module `x_λ H` with basis `x_λ τ_d`, `d` distinguished.
#[derive(Clone, Debug)]
pub struct QPermutationModule {
    pub hecke: HeckeAlgebra,
    pub composition: Vec<usize>,
    pub reps: Vec<Perm>,
    /// Row `i` of `gens[s]` is `(x_λ τ_{d_i}) τ_s` in the basis.
    pub gens: Vec<ExactMatrix>,
}

impl QPermutationModule {
    pub fn new(hecke: &HeckeAlgebra, composition: &[usize]) -> Result<Self> {
        if composition.iter().sum::<usize>() != hecke.n {
            return Err(GrexError::InvalidInput("composition does not match the Hecke algebra".into()));
        }
        let young = YoungSubgroup::new(composition);
        let reps = young.distinguished_reps();
        let index: HashMap<Perm, usize> = reps.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        let f = Field::Rational;
        let q = f.from_rational(&hecke.q)?;
        let qm1 = f.sub(&q, &f.one());
        let d = reps.len();
        let gens = (0..hecke.n.saturating_sub(1))
            .map(|s| {
                let mut m = ExactMatrix::zeros(f, d, d);
                for (i, rep) in reps.iter().enumerate() {
                    let ds = perm_right_gen(rep, s);
                    match index.get(&ds) {
                        Some(&j) if rep[s] < rep[s + 1] => m.set(i, j, f.one()),
                        Some(&j) => {
                            m.set(i, i, qm1.clone());
                            m.set(i, j, q.clone());
                        }
                        // ds = s'd with s' in the Young subgroup
                        None => m.set(i, i, q.clone()),
                    }
                }
                m
            })
            .collect();
        Ok(QPermutationModule { hecke: hecke.clone(), composition: composition.to_vec(), reps, gens })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of an element of `x_λ H` given as a Hecke element: the
    /// coefficient of `x_λ τ_d` is that of `τ_d`.
    pub fn coordinates(&self, x: &HeckeElement) -> Vec<BigRational> {
        self.reps.iter().map(|d| x.get(d).cloned().unwrap_or_else(BigRational::zero)).collect()
    }

    pub fn basis_element(&self, i: usize) -> HeckeElement {
        self.hecke.mul(&self.hecke.x_element(&self.composition), &self.hecke.tau(&self.reps[i]))
    }

    /// `v · τ_w` for a row vector `v`.
    pub fn act(&self, v: &[Scalar], w: &[u8]) -> Vec<Scalar> {
        let f = Field::Rational;
        let mut cur = v.to_vec();
        for s in perm_reduced_word(w) {
            let m = &self.gens[s];
            let mut next = f.zeros(self.dim());
            for (i, c) in cur.iter().enumerate() {
                if !f.is_zero(c) {
                    f.add_scaled(&mut next, c, m.row(i));
                }
            }
            cur = next;
        }
        cur
    }
}

/// Basis of module maps `T′_λ → T′_μ`, as matrices `Φ` with `φ(v) = vΦ`.
pub fn q_perm_hom(lhs: &QPermutationModule, rhs: &QPermutationModule) -> Vec<ExactMatrix> {
    intertwiner_basis(Field::Rational, lhs.dim(), rhs.dim(), &lhs.gens, &rhs.gens, true)
}

/// Outcome of composing the two explicit maps between `T′_{(n)}` and `T′_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub composition: Vec<usize>,
    pub q: String,
    /// `ψ∘φ = scalar · x_{(n)}`.
    pub scalar: String,
    pub hom_dims: (usize, usize),
    pub splits: bool,
}

/// `φ: x_{(n)} ↦ Σ_d x_λ τ_d` and `ψ: x_λ h ↦ x_{(n)} h`; returns the scalar
/// by which `ψ∘φ` acts.
pub fn splitting_check(hecke: &HeckeAlgebra, composition: &[usize]) -> Result<(BigRational, SplittingReport)> {
    let f = Field::Rational;
    let top = QPermutationModule::new(hecke, &[hecke.n])?;
    let low = QPermutationModule::new(hecke, composition)?;
    let phi = ExactMatrix::from_rows(f, low.dim(), vec![vec![f.one(); low.dim()]]);
    let psi_rows: Vec<Vec<Scalar>> = low.reps.iter().map(|d| top.act(&[f.one()], d)).collect();
    let psi = ExactMatrix::from_rows(f, 1, psi_rows);
    let is_hom = |a: &[ExactMatrix], b: &[ExactMatrix], m: &ExactMatrix| a.iter().zip(b).all(|(x, y)| x.mul(m) == m.mul(y));
    if !is_hom(&top.gens, &low.gens, &phi) || !is_hom(&low.gens, &top.gens, &psi) {
        return Err(GrexError::Structural("explicit maps are not module maps".into()));
    }
    let comp = phi.mul(&psi);
    let scalar = match comp.get(0, 0) {
        Scalar::Q(r) => (**r).clone(),
        Scalar::Fp(_) => unreachable!("rational field"),
    };
    let hom_dims = (q_perm_hom(&low, &top).len(), q_perm_hom(&top, &low).len());
    let report = SplittingReport {
        composition: composition.to_vec(),
        q: hecke.q.to_string(),
        scalar: scalar.to_string(),
        hom_dims,
        splits: !scalar.is_zero(),
    };
    Ok((scalar, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn partitions() {
        let l = Partition::parse("2^2,1").unwrap();
        assert_eq!(l.parts(), &[2, 2, 1]);
        assert_eq!(l.dual().parts(), &[3, 2]);
        assert_eq!(l.to_string(), "(2^2,1)");
        assert!(!l.is_regular(2));
        assert!(Partition::parse("3,2").unwrap().is_regular(2));
        assert_eq!(Partition::parse("3,2").unwrap().core(2).parts(), &[1]);
        assert_eq!(Partition::parse("2,1").unwrap().core(2).parts(), &[2, 1]);
        assert_eq!(Partition::parse("5").unwrap().core(2).parts(), &[1]);
        assert_eq!(Partition::parse("2,2").unwrap().core(2).parts(), &[] as &[usize]);
        assert_eq!(Partition::all(5).len(), 7);
        assert!(Partition::parse("2,3").is_err());
    }

    #[test]
    fn young_reps() {
        assert_eq!(YoungSubgroup::new(&[5]).distinguished_reps().len(), 1);
        assert_eq!(YoungSubgroup::new(&[1, 1, 1, 1]).distinguished_reps().len(), 24);
        let y = YoungSubgroup::new(&[3, 2]);
        assert_eq!(y.distinguished_reps().len(), 10);
        assert_eq!(y.elements().len(), 12);
        assert_eq!(y.rep_generating_function(), crate::kl::young_quotient_poly(&[3, 2]).unwrap());
    }

    #[test]
    fn specht_small() {
        let s = specht_module(&Partition::parse("2^2,1").unwrap(), gf(2)).unwrap();
        assert_eq!(s.dim, 5);
        assert!(s.satisfies_relations());
        assert!(s.proper_submodule().unwrap().is_some());
        assert_eq!(s.composition_factor_dims().unwrap(), vec![1, 4]);
        let t = specht_module(&Partition::parse("5").unwrap(), gf(2)).unwrap();
        assert_eq!(t.dim, 1);
    }

    #[test]
    fn composition_factors_trivial_cases() {
        let f = gf(3);
        let t = GroupModule::trivial(f, 4);
        assert_eq!(t.direct_sum(&t).composition_factor_dims().unwrap(), vec![1, 1]);
        let s = specht_module(&Partition::parse("3,1").unwrap(), f).unwrap();
        assert_eq!(s.composition_factor_dims().unwrap(), vec![3]);
    }

    #[test]
    fn permutation_module_form() {
        let (m, _) = permutation_module(&[3, 2], gf(2));
        assert_eq!(m.dim, 10);
        assert!(m.satisfies_relations());
        assert!(m.is_invariant_form(&ExactMatrix::identity(m.field, m.dim)));
    }

    #[test]
    fn hecke_relations_and_x_elements() {
        let h = HeckeAlgebra::at_minus_one(3).unwrap();
        assert!(h.check_relations());
        let s = h.tau(&perm_right_gen(&perm_identity(3), 0));
        let sq = h.mul(&s, &s);
        assert_eq!(sq.get(&perm_identity(3)), Some(&rational(-1, 1)));
        assert_eq!(sq.get(&perm_right_gen(&perm_identity(3), 0)), Some(&rational(-2, 1)));
        let h5 = HeckeAlgebra::at_minus_one(5).unwrap();
        assert_eq!(h5.x_element(&[5]).len(), 120);
        assert_eq!(h5.x_element(&[3, 2]).len(), 12);
    }

    #[test]
    fn q_permutation_action_matches_hecke_product() {
        let h = HeckeAlgebra::at_minus_one(4).unwrap();
        let m = QPermutationModule::new(&h, &[2, 2]).unwrap();
        let f = Field::Rational;
        for i in 0..m.dim() {
            let b = m.basis_element(i);
            for s in 0..3 {
                let lhs = m.coordinates(&h.mul_gen_right(&b, s));
                let rhs: Vec<BigRational> = m.gens[s].row(i).iter().map(|x| match x {
                    Scalar::Q(r) => (**r).clone(),
                    _ => unreachable!(),
                }).collect();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(f, Field::Rational);
    }

    #[test]
    fn splitting_scalar() {
        let h = HeckeAlgebra::at_minus_one(5).unwrap();
        let (c, rep) = splitting_check(&h, &[3, 2]).unwrap();
        assert_eq!(c, rational(2, 1));
        assert_eq!(rep.hom_dims, (1, 1));
        let r = crate::kl::young_quotient_poly(&[3, 2]).unwrap();
        assert_eq!(r.eval(&rational(-1, 1)).unwrap(), c);
    }
}
