//! Exact scalars over GF(p) and ℚ, dense matrices with Gaussian elimination,
//! and integer Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{GrexError, Result};

/// Largest prime modulus accepted for machine-word arithmetic.
pub const MAX_PRIME: u64 = 1 << 31;

/// Base field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Prime(u64),
    Rational,
}

/// A field element. GF(p) values are kept in `[0, p)`; rationals are kept in
/// lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(Box<BigRational>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p), rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(GrexError::InvalidInput(format!("{p} is not a prime ≤ 2^31")));
        }
        Ok(Field::Prime(p))
    }

    /// Parse the spec-file convention: `0` is ℚ, otherwise a prime.
    pub fn from_characteristic(c: u64) -> Result<Field> {
        if c == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(c)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rational => Scalar::Q(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
            Field::Rational => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Q(Box::new(r.clone()))),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = (r.numer() % &pb + &pb) % &pb;
                let d = (r.denom() % &pb + &pb) % &pb;
                if d.is_zero() {
                    return Err(GrexError::InvalidInput(format!("{r} has no image in GF({p})")));
                }
                let n = self.bigint_scalar(&n);
                let d = self.bigint_scalar(&d);
                Ok(self.div(&n, &d))
            }
        }
    }

    fn bigint_scalar(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let r = ((v % &pb) + &pb) % &pb;
                Scalar::Fp(r.to_string().parse().expect("residue fits u64"))
            }
            Field::Rational => Scalar::Q(Box::new(BigRational::from_integer(v.clone()))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Q(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x + &**y)),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + p - y) % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x - &**y)),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % p),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x * &**y)),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(Box::new(-&**x)),
            _ => panic!("scalar from a different field"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Fp(pow_mod(*x, p - 2, *p))
            }
            (Field::Rational, Scalar::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Q(Box::new(x.recip()))
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// `a += c * b` in place.
    pub fn axpy(&self, a: &mut Scalar, c: &Scalar, b: &Scalar) {
        match (self, &mut *a, c, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(cc), Scalar::Fp(y)) => {
                *x = (*x + cc * y) % p;
            }
            _ => {
                let t = self.mul(c, b);
                *a = self.add(a, &t);
            }
        }
    }

    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    pub fn unit_vector(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    pub fn is_zero_vec(&self, v: &[Scalar]) -> bool {
        v.iter().all(|x| self.is_zero(x))
    }

    /// `dst += c * src`.
    pub fn add_scaled(&self, dst: &mut [Scalar], c: &Scalar, src: &[Scalar]) {
        if self.is_zero(c) {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                self.axpy(d, c, s);
            }
        }
    }

    pub fn scale(&self, v: &mut [Scalar], c: &Scalar) {
        for x in v.iter_mut() {
            *x = self.mul(x, c);
        }
    }

    /// Integer representative of a scalar, when it has one (always for GF(p)).
    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Fp(v) => Some(*v as i64),
            Scalar::Q(r) => {
                if r.is_integer() {
                    r.to_integer().to_string().parse().ok()
                } else {
                    None
                }
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Q(r) => write!(f, "{r}"),
        }
    }
}

/// Dense matrix over a single field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, data: field.zeros(rows * cols) }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_int_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        ExactMatrix { field, rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let a = a.clone();
                let (lo, hi) = (i * out.cols, (i + 1) * out.cols);
                f.add_scaled(&mut out.data[lo..hi], &a, other.row(k));
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        let mut out = f.zeros(self.rows);
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !f.is_zero(a) {
                    f.axpy(o, x, a);
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(r, c));
            let (lo, hi) = (r * m.cols, (r + 1) * m.cols);
            f.scale(&mut m.data[lo..hi], &inv);
            let prow = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let x = m.get(i, c).clone();
                if f.is_zero(&x) {
                    continue;
                }
                let neg = f.neg(&x);
                let (lo, hi) = (i * m.cols, (i + 1) * m.cols);
                f.add_scaled(&mut m.data[lo..hi], &neg, &prow);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = f.zeros(self.cols);
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    pub fn hstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Integer view of the entries, available over GF(p) and for integral rationals.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.to_i64(x)).collect())
            .collect()
    }
}

/// Rank by exact Gaussian elimination.
pub fn ff_rank(m: &ExactMatrix) -> usize {
    m.rank()
}

/// Basis of the right null space in reduced echelon form.
pub fn ff_kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

/// Incrementally maintained semi-echelon basis of a subspace of `field^n`.
///
/// Optionally records, for each stored row, its expression in terms of the
/// vectors that were inserted, so that membership tests can also return
/// coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Field,
    pub n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<Scalar>>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: Field, n: usize) -> Self {
        Echelon { field, n, rows: Vec::new(), pivots: Vec::new(), track: None, inserted: 0 }
    }

    /// Like `new`, but tracks coordinates relative to the inserted vectors.
    pub fn tracking(field: Field, n: usize) -> Self {
        Echelon { track: Some(Vec::new()), ..Self::new(field, n) }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduce `v` against the basis, returning the coefficients used
    /// (indexed by stored row).
    fn reduce_with(&self, v: &mut [Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !f.is_zero(&c) {
                let neg = f.neg(&c);
                f.add_scaled(v, &neg, row);
            }
            coeffs.push(c);
        }
        coeffs
    }

    pub fn reduce(&self, v: &mut [Scalar]) {
        self.reduce_with(v);
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.field.is_zero_vec(&w)
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let mut w = v.to_vec();
        let coeffs = self.reduce_with(&mut w);
        let idx = self.inserted;
        self.inserted += 1;
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]);
        f.scale(&mut w, &inv);
        if let Some(track) = self.track.as_mut() {
            let mut t = f.zeros(idx + 1);
            t[idx] = f.one();
            for (k, c) in coeffs.iter().enumerate() {
                if !f.is_zero(c) {
                    let neg = f.neg(c);
                    let src = &track[k];
                    for (i, s) in src.iter().enumerate() {
                        if !f.is_zero(s) {
                            f.axpy(&mut t[i], &neg, s);
                        }
                    }
                }
            }
            f.scale(&mut t, &inv);
            track.push(t);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` lies in
    /// the span. Requires a tracking basis.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let track = self.track.as_ref().expect("solve needs a tracking basis");
        let mut w = v.to_vec();
        let coeffs = self.reduce_with(&mut w);
        if !f.is_zero_vec(&w) {
            return None;
        }
        let mut out = f.zeros(self.inserted);
        for (k, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (i, s) in track[k].iter().enumerate() {
                if !f.is_zero(s) {
                    f.axpy(&mut out[i], c, s);
                }
            }
        }
        Some(out)
    }
}

/// Integer Laurent polynomial in one variable, with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Ordinary polynomial from coefficients of `t^0, t^1, …`.
    pub fn from_coeffs(cs: &[i64]) -> Self {
        Self::from_terms(cs.iter().enumerate().map(|(e, c)| (e as i64, *c)))
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot = slot.checked_add(c).expect("Laurent coefficient overflow");
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// The involution `t ↦ t⁻¹`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + k, c)))
    }

    /// Substitute `t ↦ t^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, x)| (e, x * c)))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| *c >= 0)
    }

    /// Whether every exponent is even (a polynomial in `t²`).
    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    /// Evaluate exactly at a nonzero rational.
    pub fn eval(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(GrexError::InvalidInput("Laurent polynomial evaluated at 0".into()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 { a.clone() } else { a.recip() };
            let pw = num_traits::pow(base, e.unsigned_abs() as usize);
            acc += pw * BigRational::from_integer(BigInt::from(c));
        }
        Ok(acc)
    }

    /// Exact division by a nonzero divisor, `None` if it leaves a remainder.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let dmax = d.max_exp()?;
        let dlead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dmin = d.min_exp().unwrap();
        while let Some(rmax) = rem.max_exp() {
            if rmax - dmax < rem.min_exp().unwrap() - dmin {
                return None;
            }
            let c = rem.coeff(rmax);
            if c % dlead != 0 {
                return None;
            }
            let term = LaurentPoly::monomial(c / dlead, rmax - dmax);
            rem = &rem - &(&term * d);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Pretty form in the given variable, lowest exponent first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}{mono}"));
            }
        }
        s
    }

    /// Exponent/coefficient pairs, lowest exponent first.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.terms().collect()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i64, i64)>::deserialize(d)?;
        Ok(LaurentPoly::from_terms(pairs))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in o.terms() {
            r.add_term(e, c);
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in o.terms() {
            r.add_term(e, -c);
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                r.add_term(e1 + e2, c1.checked_mul(c2).expect("Laurent coefficient overflow"));
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Convenience: an exact rational from an integer pair.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let f2 = Field::Prime(2);
        assert_eq!(ff_rank(&ExactMatrix::from_int_rows(f2, &[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(ff_rank(&ExactMatrix::identity(Field::Rational, 4)), 4);
        assert_eq!(ff_rank(&ExactMatrix::zeros(f2, 3, 2)), 0);
    }

    #[test]
    fn kernel_examples() {
        let f2 = Field::Prime(2);
        assert!(ff_kernel_basis(&ExactMatrix::identity(f2, 3)).is_empty());
        assert_eq!(ff_kernel_basis(&ExactMatrix::zeros(f2, 2, 3)).len(), 3);
        let k = ff_kernel_basis(&ExactMatrix::from_int_rows(f2, &[vec![1, 1]]));
        assert_eq!(k, vec![vec![Scalar::Fp(1), Scalar::Fp(1)]]);
    }

    #[test]
    fn bar_examples() {
        let f = LaurentPoly::from_terms([(2, 1), (-1, 1)]);
        assert_eq!(f.bar(), LaurentPoly::from_terms([(-2, 1), (1, 1)]));
        assert_eq!(LaurentPoly::monomial(5, 0).bar(), LaurentPoly::monomial(5, 0));
    }

    #[test]
    fn eval_examples() {
        let r = LaurentPoly::from_coeffs(&[1, 0, 1]) * LaurentPoly::from_coeffs(&[1, 1, 1, 1, 1]);
        assert_eq!(r.eval(&rational(-1, 1)).unwrap(), rational(2, 1));
        assert_eq!(LaurentPoly::one().eval(&rational(7, 3)).unwrap(), rational(1, 1));
        assert!(LaurentPoly::one().eval(&rational(0, 1)).is_err());
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_coeffs(&[1, 1]);
        let b = LaurentPoly::from_coeffs(&[1, 0, -1]);
        assert_eq!(b.div_exact(&a), Some(LaurentPoly::from_coeffs(&[1, -1])));
        assert_eq!(LaurentPoly::from_coeffs(&[1, 0, 1]).div_exact(&a), None);
    }

    #[test]
    fn echelon_solve() {
        let f = Field::Prime(5);
        let mut e = Echelon::tracking(f, 3);
        let a = vec![f.from_i64(1), f.from_i64(2), f.zero()];
        let b = vec![f.zero(), f.from_i64(1), f.from_i64(1)];
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let mut target = a.clone();
        f.add_scaled(&mut target, &f.from_i64(3), &b);
        let c = e.solve(&target).unwrap();
        assert_eq!(c, vec![f.one(), f.from_i64(3)]);
        assert!(e.solve(&[f.zero(), f.zero(), f.one()]).is_none());
    }
}
