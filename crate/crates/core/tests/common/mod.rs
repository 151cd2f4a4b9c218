//! Independent Kazhdan-Lusztig oracle: R-polynomials
//! from their own recursion, then each `P_{x,w}` solved from
//! bar-invariance `q^{ℓ(w)−ℓ(x)} P̄_{x,w} = Σ_{x≤y≤w} R_{x,y} P_{y,w}`
//! together with the degree bound. Bruhat order comes from subwords.

#![allow(dead_code)]

use std::collections::HashMap;

use grex::exact::LaurentPoly;
use grex::kl::{CoxeterElement, CoxeterGroup, KlTable};

pub struct Oracle<'a> {
    g: &'a CoxeterGroup,
    r: HashMap<(CoxeterElement, CoxeterElement), LaurentPoly>,
}

impl<'a> Oracle<'a> {
    pub fn new(g: &'a CoxeterGroup) -> Self {
        Oracle { g, r: HashMap::new() }
    }

    pub fn r(&mut self, x: &CoxeterElement, w: &CoxeterElement) -> LaurentPoly {
        if let Some(v) = self.r.get(&(x.clone(), w.clone())) {
            return v.clone();
        }
        let out = if !self.g.bruhat_leq_subword(x, w) {
            LaurentPoly::zero()
        } else if w.length() == 0 {
            LaurentPoly::one()
        } else {
            let s = (0..self.g.rank()).find(|&s| self.g.is_right_descent(w, s)).unwrap();
            let ws = self.g.mul_gen(w, s);
            let xs = self.g.mul_gen(x, s);
            if xs.length() < x.length() {
                self.r(&xs, &ws)
            } else {
                let a = self.r(x, &ws).shift(1) - self.r(x, &ws);
                let b = self.r(&xs, &ws).shift(1);
                &a + &b
            }
        };
        self.r.insert((x.clone(), w.clone()), out.clone());
        out
    }

    /// `P_{x,w}` for every `x` in `interval`, which must be the lower
    /// Bruhat interval of `w`.
    pub fn column(&mut self, w: &CoxeterElement, interval: &[CoxeterElement]) -> HashMap<CoxeterElement, LaurentPoly> {
        let mut sorted = interval.to_vec();
        sorted.sort_by_key(|x| std::cmp::Reverse(x.length()));
        let mut p: HashMap<CoxeterElement, LaurentPoly> = HashMap::new();
        for x in &sorted {
            if x == w {
                p.insert(x.clone(), LaurentPoly::one());
                continue;
            }
            // q^d P̄ − P = Σ_{x<y≤w} R_{x,y} P_{y,w}; P has degree < d/2 and
            // q^d P̄ has degree > d/2, so P is minus the low part.
            let mut rhs = LaurentPoly::zero();
            for y in &sorted {
                if y != x && y.length() > x.length() && self.g.bruhat_leq_subword(x, y) {
                    rhs = &rhs + &(&self.r(x, y) * &p[y]);
                }
            }
            let d = (w.length() - x.length()) as i64;
            let low = LaurentPoly::from_terms(rhs.terms().filter(|(e, _)| 2 * e < d).map(|(e, c)| (e, -c)));
            let check = &low.bar().shift(d) - &low;
            assert_eq!(check, rhs, "bar-invariance has no solution at x = {}", self.g.word_labels(x));
            p.insert(x.clone(), low);
        }
        p
    }
}

pub fn compare_all(g: &CoxeterGroup, elements: &[CoxeterElement]) -> usize {
    let mut oracle = Oracle::new(g);
    let mut table = KlTable::with_bound(g.clone(), 16);
    let mut pairs = 0;
    for w in elements {
        let interval: Vec<CoxeterElement> = elements.iter().filter(|x| g.bruhat_leq_subword(x, w)).cloned().collect();
        let col = oracle.column(w, &interval);
        for x in elements {
            let expected = col.get(x).cloned().unwrap_or_else(LaurentPoly::zero);
            let got = table.p(x, w).unwrap();
            assert_eq!(got, expected, "P_{{{},{}}} in {}", g.word_labels(x), g.word_labels(w), g.name);
            pairs += 1;
        }
    }
    pairs
}

/// Distinguished representatives for `W_I`: no right descent in `I`.
pub fn distinguished(g: &CoxeterGroup, els: &[CoxeterElement], gens: &[usize]) -> Vec<CoxeterElement> {
    els.iter().filter(|w| gens.iter().all(|&s| !g.is_right_descent(w, s))).cloned().collect()
}

