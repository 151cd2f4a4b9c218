//! Crystallographic Coxeter groups, Bruhat order, Kazhdan-Lusztig and
//! singular parabolic polynomials, and the affine dot action on weights.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{GrexError, Result};
use crate::exact::LaurentPoly;

pub const DEFAULT_LENGTH_BOUND: usize = 12;

/// A finite crystallographic root system given by its Cartan matrix
/// `A[i][j] = ⟨α_j, α_i^∨⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub name: String,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    /// Matching coroots in simple-coroot coordinates.
    pub positive_coroots: Vec<Vec<i64>>,
    /// Index into `positive_roots` of the root whose coroot is highest.
    pub highest_coroot: usize,
}

fn finite_cartan(kind: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || GrexError::InvalidInput(format!("unsupported root system {kind}{n}"));
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 1..upto {
            a[i - 1][i] = -1;
            a[i][i - 1] = -1;
        }
    };
    match kind.to_ascii_uppercase() {
        'A' if n >= 1 => chain(&mut a, n),
        'B' if n >= 2 => {
            chain(&mut a, n);
            a[n - 1][n - 2] = -2;
        }
        'C' if n >= 2 => {
            chain(&mut a, n);
            a[n - 2][n - 1] = -2;
        }
        'D' if n >= 4 => {
            chain(&mut a, n - 1);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        'G' if n == 2 => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
        _ => return Err(bad()),
    }
    Ok(a)
}

impl RootSystem {
    pub fn new(kind: char, rank: usize) -> Result<Self> {
        Self::from_cartan(format!("{}{rank}", kind.to_ascii_uppercase()), finite_cartan(kind, rank)?)
    }

    pub fn from_cartan(name: String, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        let d = symmetrizer(&cartan)?;
        let reflect = |i: usize, b: &[i64]| -> Vec<i64> {
            let pair: i64 = (0..n).map(|j| cartan[i][j] * b[j]).sum();
            let mut out = b.to_vec();
            out[i] -= pair;
            out
        };
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        while let Some(b) = queue.pop_front() {
            if !seen.insert(b.clone()) {
                continue;
            }
            if seen.len() > 10_000 {
                return Err(GrexError::InvalidInput(format!("{name} is not of finite type")));
            }
            for i in 0..n {
                let r = reflect(i, &b);
                if r.iter().all(|c| *c >= 0) && !seen.contains(&r) {
                    queue.push_back(r);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().collect();
        positive_roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        let norm = |b: &[i64]| -> i64 { (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| b[i] * b[j] * d[i] * cartan[i][j]).sum() };
        let positive_coroots: Vec<Vec<i64>> = positive_roots
            .iter()
            .map(|b| {
                let nb = norm(b);
                (0..n).map(|j| b[j] * 2 * d[j] / nb).collect::<Vec<_>>()
            })
            .collect();
        let highest_coroot = (0..positive_roots.len()).max_by_key(|&k| positive_coroots[k].iter().sum::<i64>()).unwrap_or(0);
        Ok(RootSystem { name, cartan, positive_roots, positive_coroots, highest_coroot })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// A root (simple-root coordinates) in fundamental-weight coordinates.
    pub fn root_as_weight(&self, b: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.cartan[i][j] * b[j]).sum()).collect()
    }

    /// `(x, α^∨)` for a weight `x` in fundamental-weight coordinates.
    pub fn pair(x: &[i64], coroot: &[i64]) -> i64 {
        x.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    /// `ρ` in fundamental-weight coordinates.
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Positive integers `d` with `d_i A_ij = d_j A_ji`.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (p, q) = d[i].unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_j = d_i A_ij / A_ji
                let (np, nq) = (p * a[i][j], q * a[j][i]);
                let g = gcd(np.abs(), nq.abs());
                let v = (np / g * nq.signum(), nq.abs() / g);
                match d[j] {
                    None => {
                        d[j] = Some(v);
                        stack.push(j);
                    }
                    Some(w) if w.0 * v.1 != v.0 * w.1 => {
                        return Err(GrexError::InvalidInput("Cartan matrix is not symmetrizable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    let lcm = d.iter().fold(1i64, |acc, x| acc / gcd(acc, x.unwrap().1) * x.unwrap().1);
    Ok(d.into_iter().map(|x| x.unwrap().0 * lcm / x.unwrap().1).collect())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// A Coxeter group realized on the span of simple roots of a crystallographic
/// Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterGroup {
    pub name: String,
    pub cartan: Vec<Vec<i64>>,
    pub affine: bool,
    /// Printed label of each generator.
    pub labels: Vec<String>,
    /// For affine groups: the finite root system whose `W_p` this is.
    pub roots: Option<RootSystem>,
}

/// Element stored as the matrix of its action (column `j` = `w(α_j)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterElement {
    mat: Vec<i64>,
    len: usize,
}

impl CoxeterElement {
    pub fn length(&self) -> usize {
        self.len
    }
}

impl CoxeterGroup {
    /// Finite Weyl group of type `kind` and rank `n`; generators `1..=n`.
    pub fn finite(kind: char, n: usize) -> Result<Self> {
        let cartan = finite_cartan(kind, n)?;
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Ok(CoxeterGroup { name: format!("{}{n}", kind.to_ascii_uppercase()), cartan, affine: false, labels, roots: None })
    }

    /// The group `W_p` generated by reflections of weight space in the
    /// hyperplanes `(x, α^∨) ∈ pℤ`; generator `0` is the affine reflection
    /// in the wall of the highest coroot, generators `1..=n` the finite ones.
    pub fn affine(kind: char, n: usize) -> Result<Self> {
        let rs = RootSystem::new(kind, n)?;
        let a = &rs.cartan;
        let c = &rs.positive_coroots[rs.highest_coroot];
        let h = &rs.positive_roots[rs.highest_coroot];
        let mut ext = vec![vec![0i64; n + 1]; n + 1];
        ext[0][0] = 2;
        for j in 0..n {
            for i in 0..n {
                ext[i + 1][j + 1] = a[j][i];
            }
            ext[0][j + 1] = -(0..n).map(|k| h[k] * a[j][k]).sum::<i64>();
            ext[j + 1][0] = -(0..n).map(|k| c[k] * a[k][j]).sum::<i64>();
        }
        let labels = (0..=n).map(|i| i.to_string()).collect();
        Ok(CoxeterGroup { name: format!("~{}{n}", kind.to_ascii_uppercase()), cartan: ext, affine: true, labels, roots: Some(rs) })
    }

    /// Parse `A3`, `b2`, `~A1`, `A1~`.
    pub fn parse(desc: &str) -> Result<Self> {
        let d = desc.trim();
        let affine = d.starts_with('~') || d.ends_with('~');
        let core = d.trim_matches('~');
        let mut chars = core.chars();
        let kind = chars.next().ok_or_else(|| GrexError::Parse(format!("empty group descriptor {desc:?}")))?;
        let n: usize = chars.as_str().parse().map_err(|_| GrexError::Parse(format!("bad group descriptor {desc:?}")))?;
        if affine {
            Self::affine(kind, n)
        } else {
            Self::finite(kind, n)
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> CoxeterElement {
        let n = self.rank();
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        CoxeterElement { mat, len: 0 }
    }

    fn col(&self, w: &CoxeterElement, j: usize) -> impl Iterator<Item = i64> + '_ {
        let n = self.rank();
        let m = w.mat.clone();
        (0..n).map(move |i| m[i * n + j])
    }

    /// `ℓ(ws) < ℓ(w)`.
    pub fn is_right_descent(&self, w: &CoxeterElement, s: usize) -> bool {
        self.col(w, s).any(|c| c < 0)
    }

    /// `ws`.
    pub fn mul_gen(&self, w: &CoxeterElement, s: usize) -> CoxeterElement {
        let n = self.rank();
        let down = self.is_right_descent(w, s);
        let mut mat = w.mat.clone();
        // (ws)(α_j) = w(α_j) − A_sj w(α_s)
        for j in 0..n {
            let a = self.cartan[s][j];
            if j != s && a != 0 {
                for i in 0..n {
                    mat[i * n + j] -= a * w.mat[i * n + s];
                }
            }
        }
        for i in 0..n {
            mat[i * n + s] = -w.mat[i * n + s];
        }
        CoxeterElement { mat, len: if down { w.len - 1 } else { w.len + 1 } }
    }

    /// `s w`.
    pub fn gen_mul(&self, s: usize, w: &CoxeterElement) -> CoxeterElement {
        self.element_from_indices(&[s]).map(|sw| self.mul(&sw, w)).expect("generator in range")
    }

    pub fn mul(&self, x: &CoxeterElement, y: &CoxeterElement) -> CoxeterElement {
        let mut out = x.clone();
        for s in self.word(y) {
            out = self.mul_gen(&out, s);
        }
        out
    }

    pub fn inverse(&self, w: &CoxeterElement) -> CoxeterElement {
        let mut out = self.identity();
        for s in self.word(w).into_iter().rev() {
            out = self.mul_gen(&out, s);
        }
        out
    }

    /// Some reduced word (by removing right descents).
    fn word(&self, w: &CoxeterElement) -> Vec<usize> {
        let mut rev = Vec::with_capacity(w.len);
        let mut cur = w.clone();
        while cur.len > 0 {
            let s = (0..self.rank()).find(|&s| self.is_right_descent(&cur, s)).expect("nonidentity has a descent");
            rev.push(s);
            cur = self.mul_gen(&cur, s);
        }
        rev.reverse();
        rev
    }

    /// Lexicographically least reduced word.
    pub fn reduced_word(&self, w: &CoxeterElement) -> Vec<usize> {
        let mut out = Vec::with_capacity(w.len);
        let mut cur = self.inverse(w);
        // Left descents of w are right descents of w⁻¹.
        while cur.len > 0 {
            let s = (0..self.rank()).find(|&s| self.is_right_descent(&cur, s)).unwrap();
            out.push(s);
            cur = self.mul_gen(&cur, s);
        }
        out
    }

    pub fn word_labels(&self, w: &CoxeterElement) -> String {
        self.reduced_word(w).iter().map(|&s| self.labels[s].as_str()).collect::<Vec<_>>().join("")
    }

    pub fn element_from_indices(&self, word: &[usize]) -> Result<CoxeterElement> {
        let mut w = self.identity();
        for &s in word {
            if s >= self.rank() {
                return Err(GrexError::InvalidInput(format!("generator {s} out of range")));
            }
            w = self.mul_gen(&w, s);
        }
        Ok(w)
    }

    /// Element from a string of generator labels, e.g. `"2132"`.
    pub fn element(&self, word: &str) -> Result<CoxeterElement> {
        let idx = word
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| self.generator_index(&c.to_string()).ok_or_else(|| GrexError::Parse(format!("unknown generator {c} in {word:?}"))))
            .collect::<Result<Vec<_>>>()?;
        self.element_from_indices(&idx)
    }

    /// Bruhat order by the lifting property along a reduced word of `y`.
    pub fn bruhat_leq(&self, x: &CoxeterElement, y: &CoxeterElement) -> bool {
        if x.len > y.len {
            return false;
        }
        if y.len == 0 {
            return x.len == 0;
        }
        let s = (0..self.rank()).find(|&s| self.is_right_descent(y, s)).unwrap();
        let ys = self.mul_gen(y, s);
        if self.is_right_descent(x, s) {
            self.bruhat_leq(&self.mul_gen(x, s), &ys)
        } else {
            self.bruhat_leq(x, &ys)
        }
    }

    /// Bruhat order by the subword criterion against a fixed reduced word.
    pub fn bruhat_leq_subword(&self, x: &CoxeterElement, y: &CoxeterElement) -> bool {
        let word = self.reduced_word(y);
        let mut reach: BTreeSet<CoxeterElement> = BTreeSet::from([self.identity()]);
        for &s in &word {
            let next: Vec<CoxeterElement> = reach.iter().map(|w| self.mul_gen(w, s)).collect();
            reach.extend(next);
        }
        reach.contains(x)
    }

    /// `{x : x ≤ y}`.
    pub fn lower_interval(&self, y: &CoxeterElement) -> Vec<CoxeterElement> {
        let mut set: BTreeSet<CoxeterElement> = BTreeSet::from([self.identity()]);
        for s in self.word(y) {
            let next: Vec<CoxeterElement> = set.iter().map(|w| self.mul_gen(w, s)).collect();
            set.extend(next);
        }
        let mut v: Vec<CoxeterElement> = set.into_iter().collect();
        v.sort_by_key(|w| w.len);
        v
    }

    /// All elements of length at most `bound`.
    pub fn ball(&self, bound: usize) -> Vec<CoxeterElement> {
        let mut seen: BTreeSet<CoxeterElement> = BTreeSet::new();
        let mut layer = vec![self.identity()];
        let mut out = vec![];
        for _ in 0..=bound {
            if layer.is_empty() {
                break;
            }
            let mut next = BTreeSet::new();
            for w in &layer {
                if seen.insert(w.clone()) {
                    out.push(w.clone());
                    for s in 0..self.rank() {
                        let ws = self.mul_gen(w, s);
                        if ws.len > w.len {
                            next.insert(ws);
                        }
                    }
                }
            }
            layer = next.into_iter().collect();
        }
        out
    }

    /// All elements of a finite group.
    pub fn elements(&self) -> Result<Vec<CoxeterElement>> {
        if self.affine {
            return Err(GrexError::Precondition(format!("{} is infinite", self.name)));
        }
        let all = self.ball(usize::MAX >> 1).into_iter();
        Ok(all.collect())
    }

    /// Elements of the parabolic subgroup `W_I`, if it has at most `limit`.
    pub fn parabolic_elements(&self, gens: &[usize], limit: usize) -> Result<Vec<CoxeterElement>> {
        let mut seen: BTreeSet<CoxeterElement> = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            for &s in gens {
                let ws = self.mul_gen(&w, s);
                if seen.insert(ws.clone()) {
                    if seen.len() > limit {
                        return Err(GrexError::Precondition("parabolic subgroup is infinite or too large".into()));
                    }
                    queue.push_back(ws);
                }
            }
        }
        let mut v: Vec<CoxeterElement> = seen.into_iter().collect();
        v.sort_by_key(|w| w.len);
        Ok(v)
    }

    /// Shortest element of the left coset `wW_I`.
    pub fn min_coset_rep(&self, w: &CoxeterElement, gens: &[usize]) -> CoxeterElement {
        let mut cur = w.clone();
        while let Some(&s) = gens.iter().find(|&&s| self.is_right_descent(&cur, s)) {
            cur = self.mul_gen(&cur, s);
        }
        cur
    }

    /// `Σ_{w ∈ W_J} q^{ℓ(w)}` for a finite parabolic subgroup.
    pub fn poincare_poly(&self, gens: &[usize]) -> Result<LaurentPoly> {
        let els = self.parabolic_elements(gens, 1_000_000)?;
        let mut p = LaurentPoly::zero();
        for w in els {
            p.add_term(w.len as i64, 1);
        }
        Ok(p)
    }
}

/// Memoized Kazhdan-Lusztig polynomials `P_{x,y}` in `q`.
#[derive(Clone, Debug)]
pub struct KlTable {
    pub group: CoxeterGroup,
    pub length_bound: usize,
    memo: HashMap<(CoxeterElement, CoxeterElement), LaurentPoly>,
    intervals: HashMap<CoxeterElement, Vec<CoxeterElement>>,
}

impl KlTable {
    pub fn new(group: CoxeterGroup) -> Self {
        Self::with_bound(group, DEFAULT_LENGTH_BOUND)
    }

    pub fn with_bound(group: CoxeterGroup, length_bound: usize) -> Self {
        KlTable { group, length_bound, memo: HashMap::new(), intervals: HashMap::new() }
    }

    fn interval(&mut self, y: &CoxeterElement) -> Vec<CoxeterElement> {
        if let Some(v) = self.intervals.get(y) {
            return v.clone();
        }
        let v = self.group.lower_interval(y);
        self.intervals.insert(y.clone(), v.clone());
        v
    }

    /// `μ(z, v)`: coefficient of `q^{(ℓ(v)−ℓ(z)−1)/2}` in `P_{z,v}`.
    pub fn mu(&mut self, z: &CoxeterElement, v: &CoxeterElement) -> Result<i64> {
        let d = v.len as i64 - z.len as i64;
        if d <= 0 || d % 2 == 0 {
            return Ok(0);
        }
        Ok(self.p(z, v)?.coeff((d - 1) / 2))
    }

    /// `P_{x,y}` by the recursion along a right descent of `y`.
    pub fn p(&mut self, x: &CoxeterElement, y: &CoxeterElement) -> Result<LaurentPoly> {
        if y.len > self.length_bound {
            return Err(GrexError::LengthOverflow { length: y.len, bound: self.length_bound });
        }
        if let Some(p) = self.memo.get(&(x.clone(), y.clone())) {
            return Ok(p.clone());
        }
        let g = self.group.clone();
        let out = if !g.bruhat_leq(x, y) {
            LaurentPoly::zero()
        } else if x == y {
            LaurentPoly::one()
        } else {
            let s = (0..g.rank()).find(|&s| g.is_right_descent(y, s)).unwrap();
            let v = g.mul_gen(y, s);
            let xs = g.mul_gen(x, s);
            let c = i64::from(g.is_right_descent(x, s));
            let mut acc = &self.p(&xs, &v)?.shift(1 - c) + &self.p(x, &v)?.shift(c);
            for z in self.interval(&v) {
                if z == v || !g.is_right_descent(&z, s) || !g.bruhat_leq(x, &z) {
                    continue;
                }
                let m = self.mu(&z, &v)?;
                if m != 0 {
                    let e = (y.len as i64 - z.len as i64) / 2;
                    acc = &acc - &self.p(x, &z)?.scale(m).shift(e);
                }
            }
            acc
        };
        self.memo.insert((x.clone(), y.clone()), out.clone());
        Ok(out)
    }

    /// `P^sing_{ȳ,w̄}(t) = Σ_{x∈W_I, ȳx≤w̄} (−1)^{ℓ(x)} P_{ȳx,w̄}(t)`, with
    /// `q = t²`. Both arguments must be shortest in their `W_I` cosets.
    pub fn parabolic_sing(&mut self, ybar: &CoxeterElement, wbar: &CoxeterElement, gens: &[usize]) -> Result<LaurentPoly> {
        let g = self.group.clone();
        for (name, e) in [("first", ybar), ("second", wbar)] {
            if let Some(&s) = gens.iter().find(|&&s| g.is_right_descent(e, s)) {
                return Err(GrexError::Precondition(format!(
                    "{name} argument is not a distinguished coset representative: right descent {}",
                    g.labels[s]
                )));
            }
        }
        let wi = g.parabolic_elements(gens, 100_000)?;
        let mut sum = LaurentPoly::zero();
        for x in wi {
            let yx = g.mul(ybar, &x);
            if g.bruhat_leq(&yx, wbar) {
                let sign = if x.len % 2 == 0 { 1 } else { -1 };
                sum = &sum + &self.p(&yx, wbar)?.scale(sign);
            }
        }
        let t = sum.substitute_power(2);
        if !t.has_nonnegative_coeffs() {
            return Err(GrexError::Structural(format!("singular polynomial has a negative coefficient: {t}")));
        }
        Ok(t)
    }
}

/// `ℓ(p)`: `p` for odd primes, 4 for `p = 2`.
pub fn ell_of_p(p: u64) -> Result<u64> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(GrexError::InvalidInput(format!("{p} is not prime")));
    }
    Ok(if p == 2 { 4 } else { p })
}

/// `λ = w̄·λ⁻` with `λ⁻` in the closed alcove, `W_I` its stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveWeight {
    pub weight: Vec<i64>,
    pub p: i64,
    pub alcove_weight: Vec<i64>,
    /// Reduced word (generator labels) of the shortest `w̄` with `λ = w̄·λ⁻`.
    pub wbar: Vec<String>,
    /// Generators fixing `λ⁻`.
    pub stabilizer: Vec<String>,
}

/// The dot action `w·x = w(x+ρ)−ρ` of `W_p` on integral weights.
pub struct DotAction<'a> {
    pub group: &'a CoxeterGroup,
    pub roots: &'a RootSystem,
    pub p: i64,
}

impl<'a> DotAction<'a> {
    pub fn new(group: &'a CoxeterGroup, p: i64) -> Result<Self> {
        let roots = group.roots.as_ref().ok_or_else(|| GrexError::Precondition("dot action needs an affine group".into()))?;
        Ok(DotAction { group, roots, p })
    }

    fn wall(&self, s: usize) -> (Vec<i64>, Vec<i64>, i64) {
        let rs = self.roots;
        if s == 0 {
            let k = rs.highest_coroot;
            (rs.root_as_weight(&rs.positive_roots[k]), rs.positive_coroots[k].clone(), self.p)
        } else {
            let e = unit(rs.rank(), s - 1);
            (rs.root_as_weight(&e), e, 0)
        }
    }

    /// `s·x` for a generator `s`.
    pub fn apply_gen(&self, s: usize, x: &[i64]) -> Vec<i64> {
        let (alpha, coroot, shift) = self.wall(s);
        let rho = self.roots.rho();
        let xr: Vec<i64> = x.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let k = RootSystem::pair(&xr, &coroot) - shift;
        x.iter().zip(&alpha).map(|(a, b)| a - k * b).collect()
    }

    pub fn apply(&self, w: &CoxeterElement, x: &[i64]) -> Vec<i64> {
        let mut out = x.to_vec();
        for &s in self.group.reduced_word(w).iter().rev() {
            out = self.apply_gen(s, &out);
        }
        out
    }

    /// Whether `0 ≤ (x+ρ, α^∨) ≤ p` for every positive `α`.
    pub fn in_closed_alcove(&self, x: &[i64]) -> bool {
        let rho = self.roots.rho();
        let xr: Vec<i64> = x.iter().zip(&rho).map(|(a, b)| a + b).collect();
        self.roots.positive_coroots.iter().all(|c| {
            let v = RootSystem::pair(&xr, c);
            (0..=self.p).contains(&v)
        })
    }

    fn stabilizer(&self, x: &[i64]) -> Vec<usize> {
        (0..self.group.rank()).filter(|&s| self.apply_gen(s, x) == x).collect()
    }

    /// Move `λ` into the closed alcove; returns `(λ⁻, w̄, I)`.
    pub fn normalize(&self, lambda: &[i64]) -> Result<(Vec<i64>, CoxeterElement, Vec<usize>)> {
        if lambda.len() != self.roots.rank() {
            return Err(GrexError::InvalidInput("weight has the wrong rank".into()));
        }
        let rho = self.roots.rho();
        let mut x = lambda.to_vec();
        let mut w = self.group.identity();
        for _ in 0..100_000 {
            let xr: Vec<i64> = x.iter().zip(&rho).map(|(a, b)| a + b).collect();
            let step = (1..self.group.rank())
                .find(|&s| xr[s - 1] < 0)
                .or_else(|| (RootSystem::pair(&xr, &self.roots.positive_coroots[self.roots.highest_coroot]) > self.p).then_some(0));
            match step {
                Some(s) => {
                    x = self.apply_gen(s, &x);
                    w = self.group.mul_gen(&w, s);
                }
                None => {
                    let gens = self.stabilizer(&x);
                    let wbar = self.group.min_coset_rep(&w, &gens);
                    return Ok((x, wbar, gens));
                }
            }
        }
        Err(GrexError::Structural("alcove normalization did not terminate".into()))
    }

    pub fn alcove_weight(&self, lambda: &[i64]) -> Result<AlcoveWeight> {
        let (lm, w, gens) = self.normalize(lambda)?;
        Ok(AlcoveWeight {
            weight: lambda.to_vec(),
            p: self.p,
            alcove_weight: lm,
            wbar: self.group.reduced_word(&w).iter().map(|&s| self.group.labels[s].clone()).collect(),
            stabilizer: gens.iter().map(|&s| self.group.labels[s].clone()).collect(),
        })
    }
}

/// `t^{ℓ(w̄)−ℓ(ȳ)} · bar(P^sing_{ȳ,w̄}(t))` for `λ = w̄·λ⁻`, `μ = ȳ·λ⁻`;
/// zero when `μ` is not in the dot orbit of `λ⁻`. With `bar = false` the
/// polynomial is used without the bar involution.
pub fn conjecture_iii_series(table: &mut KlTable, lambda: &[i64], mu: &[i64], p: i64, bar: bool) -> Result<LaurentPoly> {
    let group = table.group.clone();
    let dot = DotAction::new(&group, p)?;
    let (lm, wbar, gens) = dot.normalize(lambda)?;
    let (mm, ybar, _) = dot.normalize(mu)?;
    if lm != mm {
        return Ok(LaurentPoly::zero());
    }
    let ps = table.parabolic_sing(&ybar, &wbar, &gens)?;
    let ps = if bar { ps.bar() } else { ps };
    Ok(ps.shift(wbar.len as i64 - ybar.len as i64))
}

/// `Π_{i=1}^{n} (q^i − 1)/(q − 1)`, the Poincaré polynomial of `𝔖_n`.
pub fn symmetric_poincare_product(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for i in 1..=n {
        p = &p * &LaurentPoly::from_terms((0..i as i64).map(|e| (e, 1)));
    }
    p
}

/// Generators of the Young subgroup `𝔖_λ ⊆ 𝔖_n` (type `A_{n−1}`, generators
/// indexed from 0) for a composition `λ` of `n`.
pub fn young_generators(composition: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut start = 0;
    for &part in composition {
        for i in start..start + part.saturating_sub(1) {
            gens.push(i);
        }
        start += part;
    }
    gens
}

/// `r_λ(q) = p_{𝔖_n}(q) / p_{𝔖_λ}(q)`.
pub fn young_quotient_poly(composition: &[usize]) -> Result<LaurentPoly> {
    let n: usize = composition.iter().sum();
    if n < 2 {
        return Ok(LaurentPoly::one());
    }
    let g = CoxeterGroup::finite('A', n - 1)?;
    let full = g.poincare_poly(&(0..n - 1).collect::<Vec<_>>())?;
    let sub = g.poincare_poly(&young_generators(composition))?;
    full.div_exact(&sub).ok_or_else(|| GrexError::Structural("Poincaré quotient is not exact".into()))
}

/// Exponent/coefficient pairs per named polynomial, for reports.
pub fn poly_report(polys: &[(&str, &LaurentPoly)]) -> BTreeMap<String, Vec<(i64, i64)>> {
    polys.iter().map(|(k, p)| (k.to_string(), p.to_pairs())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_basics() {
        let g = CoxeterGroup::finite('A', 2).unwrap();
        let e = g.identity();
        let s = g.mul_gen(&e, 0);
        assert_eq!(s.length(), 1);
        assert_eq!(g.mul_gen(&s, 0), e);
        assert_eq!(g.element("121").unwrap(), g.element("212").unwrap());
        assert_eq!(g.element("121").unwrap().length(), 3);
    }

    #[test]
    fn group_orders() {
        for (k, n, order) in [('A', 3, 24), ('B', 2, 8), ('C', 3, 48), ('D', 4, 192), ('G', 2, 12)] {
            assert_eq!(CoxeterGroup::finite(k, n).unwrap().elements().unwrap().len(), order, "{k}{n}");
        }
    }

    #[test]
    fn root_counts() {
        for (k, n, count) in [('A', 4, 10), ('B', 3, 9), ('C', 3, 9), ('D', 4, 12), ('G', 2, 6)] {
            assert_eq!(RootSystem::new(k, n).unwrap().positive_roots.len(), count, "{k}{n}");
        }
    }

    #[test]
    fn bruhat_matches_subwords_on_a3() {
        let g = CoxeterGroup::finite('A', 3).unwrap();
        let els = g.elements().unwrap();
        for x in &els {
            for y in &els {
                assert_eq!(g.bruhat_leq(x, y), g.bruhat_leq_subword(x, y));
            }
        }
    }

    #[test]
    fn kl_known_value() {
        let g = CoxeterGroup::finite('A', 3).unwrap();
        let x = g.element("2").unwrap();
        let y = g.element("2132").unwrap();
        let mut t = KlTable::new(g);
        assert_eq!(t.p(&x, &y).unwrap(), LaurentPoly::from_coeffs(&[1, 1]));
    }

    #[test]
    fn dihedral_polynomials_are_one() {
        for k in ['B', 'G'] {
            let g = CoxeterGroup::finite(k, 2).unwrap();
            let els = g.elements().unwrap();
            let mut t = KlTable::new(g.clone());
            for x in &els {
                for y in &els {
                    if g.bruhat_leq(x, y) {
                        assert_eq!(t.p(x, y).unwrap(), LaurentPoly::one());
                    }
                }
            }
        }
    }

    #[test]
    fn affine_a1_is_infinite_dihedral() {
        let g = CoxeterGroup::affine('A', 1).unwrap();
        assert_eq!(g.cartan, vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(g.ball(8).len(), 17);
    }

    #[test]
    fn length_overflow_is_reported() {
        let g = CoxeterGroup::affine('A', 1).unwrap();
        let y = g.element("0101").unwrap();
        let mut t = KlTable::with_bound(g.clone(), 3);
        assert!(matches!(t.p(&g.identity(), &y), Err(GrexError::LengthOverflow { .. })));
    }

    #[test]
    fn poincare_of_young_quotient() {
        let r = young_quotient_poly(&[3, 2]).unwrap();
        let expect = &LaurentPoly::from_coeffs(&[1, 0, 1]) * &LaurentPoly::from_coeffs(&[1, 1, 1, 1, 1]);
        assert_eq!(r, expect);
        let g = CoxeterGroup::finite('A', 4).unwrap();
        assert_eq!(g.poincare_poly(&[0, 1, 2, 3]).unwrap(), symmetric_poincare_product(5));
    }

    #[test]
    fn ell_values() {
        assert_eq!(ell_of_p(2).unwrap(), 4);
        assert_eq!(ell_of_p(3).unwrap(), 3);
        assert_eq!(ell_of_p(7).unwrap(), 7);
        assert!(ell_of_p(9).is_err());
    }

    #[test]
    fn dot_action_relations_hold() {
        for (k, n) in [('A', 1), ('A', 2), ('B', 2), ('C', 2), ('G', 2)] {
            let g = CoxeterGroup::affine(k, n).unwrap();
            let dot = DotAction::new(&g, 5).unwrap();
            let x: Vec<i64> = (0..n as i64).map(|i| 3 * i - 7).collect();
            for s in 0..g.rank() {
                assert_eq!(dot.apply_gen(s, &dot.apply_gen(s, &x)), x);
                for t in 0..g.rank() {
                    let st = g.element_from_indices(&[s, t]).unwrap();
                    let mut order = 1;
                    let mut w = st.clone();
                    while w != g.identity() && order < 13 {
                        w = g.mul(&w, &st);
                        order += 1;
                    }
                    if order < 13 {
                        let mut y = x.clone();
                        for _ in 0..order {
                            y = dot.apply_gen(t, &y);
                            y = dot.apply_gen(s, &y);
                        }
                        assert_eq!(y, x, "{k}{n}: ({s}{t})^{order}");
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_replays() {
        let g = CoxeterGroup::affine('A', 2).unwrap();
        let dot = DotAction::new(&g, 3).unwrap();
        for lam in [[0, 0], [5, -2], [-4, 7], [2, 2], [-1, -1]] {
            let (lm, w, gens) = dot.normalize(&lam).unwrap();
            assert!(dot.in_closed_alcove(&lm));
            assert_eq!(dot.apply(&w, &lm), lam.to_vec());
            assert!(gens.iter().all(|&s| !g.is_right_descent(&w, s)));
        }
        let g1 = CoxeterGroup::affine('A', 1).unwrap();
        let d1 = DotAction::new(&g1, 2).unwrap();
        let (lm, w, _) = d1.normalize(&[0]).unwrap();
        assert_eq!((lm, w.length()), (vec![0], 0));
    }

    #[test]
    fn singular_polynomials() {
        let g = CoxeterGroup::finite('A', 2).unwrap();
        let mut t = KlTable::new(g.clone());
        let y = g.element("2").unwrap();
        let w = g.element("12").unwrap();
        assert_eq!(t.parabolic_sing(&y, &w, &[]).unwrap(), t.p(&y, &w).unwrap().substitute_power(2));
        assert_eq!(t.parabolic_sing(&w, &w, &[0]).unwrap(), LaurentPoly::one());
        assert!(t.parabolic_sing(&g.identity(), &w, &[0]).unwrap().is_zero());
        assert!(t.parabolic_sing(&g.element("1").unwrap(), &w, &[0]).is_err());
    }

    #[test]
    fn conjecture_series_trivial_cases() {
        let g = CoxeterGroup::affine('A', 1).unwrap();
        let mut t = KlTable::new(g);
        let lam = [5];
        assert_eq!(conjecture_iii_series(&mut t, &lam, &lam, 3, true).unwrap(), LaurentPoly::one());
        assert!(conjecture_iii_series(&mut t, &lam, &[6], 3, true).unwrap().is_zero());
    }
}
