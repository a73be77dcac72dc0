//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`LaurentPoly`] lives in Q[t_1^{±1}, ..., t_n^{±1}]; ordinary polynomials
//! (all exponents nonnegative) are the same type restricted by
//! [`LaurentPoly::is_polynomial`].  Degree-truncated arithmetic, used for
//! computations in the completed polynomial ring, is provided by the
//! `*_trunc` variants: a truncation bound `D` means every term of total
//! degree greater than `D` is dropped as soon as it appears.
//!
//! All arithmetic is exact.  Terms are kept in a `BTreeMap` keyed by the
//! exponent vector, so iteration order (and hence printing) is canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::ArralexError;

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Convenience: the rational `n/1`.
pub fn qint(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A sparse Laurent polynomial in `nvars` variables.
///
/// Exponent vectors always have length `nvars`; coefficients are never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Q>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `t_i` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {} out of range (nvars = {})", i, nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::term(nvars, exps, Q::one())
    }

    /// A single term `c * t^exps`.
    pub fn term(nvars: usize, exps: Vec<i32>, c: Q) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The monomial `t^exps` with coefficient one.
    pub fn monomial(nvars: usize, exps: Vec<i32>) -> Self {
        Self::term(nvars, exps, Q::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Q)> {
        self.terms.iter()
    }

    /// True if every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// True if the polynomial is a single term with coefficient ±1
    /// (a unit of the Laurent ring up to sign).
    pub fn is_monomial_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().map_or(false, |c| c.abs().is_one())
    }

    /// The inverse of a unit term `c * t^e` (requires a single term).
    pub fn unit_inverse(&self) -> Result<Self, ArralexError> {
        if self.terms.len() != 1 {
            return Err(ArralexError::NotAUnit(format!("{}", self)));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv_e: Vec<i32> = e.iter().map(|&x| -x).collect();
        Ok(Self::term(self.nvars, inv_e, c.recip()))
    }

    fn insert_term(&mut self, exps: Vec<i32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_trunc(other, None)
    }

    /// Product, dropping terms of total degree above `trunc` when given.
    pub fn mul_trunc(&self, other: &Self, trunc: Option<i32>) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if let Some(d) = trunc {
                    if e.iter().sum::<i32>() > d {
                        continue;
                    }
                }
                out.insert_term(e, c1 * c2);
            }
        }
        out
    }

    /// Drop all terms of total degree above `d`.
    pub fn truncate(&self, d: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<i32>() <= d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Augmentation: evaluate every variable at 1.
    pub fn eval_at_one(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    /// Maximum total degree of any term (`None` for the zero polynomial).
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum::<i32>()).max()
    }

    /// Minimum total degree of any term (`None` for the zero polynomial).
    pub fn low_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum::<i32>()).min()
    }

    /// Per-variable minimum exponent over all terms (identity on zero).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut mins = vec![0; self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                mins.copy_from_slice(e);
                first = false;
            } else {
                for (m, &x) in mins.iter_mut().zip(e) {
                    if x < *m {
                        *m = x;
                    }
                }
            }
        }
        mins
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// The Magnus substitution `t_i -> 1 - x_i`.
    ///
    /// Requires every exponent to be nonnegative; clear units first.
    pub fn magnus_substitute(&self) -> Result<Self, ArralexError> {
        if !self.is_polynomial() {
            return Err(ArralexError::NegativeExponent(format!("{}", self)));
        }
        Ok(self.magnus_substitute_trunc(None))
    }

    /// Magnus substitution valid on the full Laurent ring when a truncation
    /// degree is supplied: `t_i^{-1}` maps to the geometric series
    /// `1 + x_i + x_i^2 + ...` cut at total degree `D`.
    pub fn magnus_substitute_trunc(&self, trunc: Option<i32>) -> Self {
        let n = self.nvars;
        let mut out = Self::zero(n);
        // 1 - x_i and, when truncated, its inverse series.
        let one_minus = |i: usize| {
            let mut p = Self::one(n);
            p = p.sub(&Self::var(n, i));
            p
        };
        for (e, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let f = one_minus(i);
                    for _ in 0..k {
                        term = term.mul_trunc(&f, trunc);
                    }
                } else if k < 0 {
                    let d = trunc.expect("negative exponent requires a truncation degree");
                    let mut series = Self::zero(n);
                    for j in 0..=d.max(0) {
                        let mut ee = vec![0; n];
                        ee[i] = j;
                        series.insert_term(ee, Q::one());
                    }
                    for _ in 0..(-k) {
                        term = term.mul_trunc(&series, trunc);
                    }
                }
            }
            out = out.add(&term);
        }
        if let Some(d) = trunc {
            out = out.truncate(d);
        }
        out
    }

    /// Substitute each variable by the given Laurent polynomial.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let n = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    for _ in 0..k {
                        term = term.mul(&images[i]);
                    }
                } else if k < 0 {
                    let inv = images[i]
                        .unit_inverse()
                        .expect("substitution with negative exponent requires unit images");
                    for _ in 0..(-k) {
                        term = term.mul(&inv);
                    }
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Render with the given variable prefix, e.g. `t` gives `t1*t2^-1`.
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    factors.push(format!("{}{}", prefix, i + 1));
                } else if k != 0 {
                    factors.push(format!("{}{}^{}", prefix, i + 1, k));
                }
            }
            let abs = c.abs();
            let sign = c.is_negative();
            let coeff_str = if abs.is_one() && !factors.is_empty() {
                String::new()
            } else {
                format!("{}", abs)
            };
            let body = match (coeff_str.is_empty(), factors.is_empty()) {
                (true, _) => factors.join("*"),
                (false, true) => coeff_str,
                (false, false) => format!("{}*{}", coeff_str, factors.join("*")),
            };
            if idx == 0 {
                if sign {
                    out.push_str("- ");
                }
            } else if sign {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }

    /// Parse the output of [`LaurentPoly::render`].
    pub fn parse(s: &str, prefix: &str, nvars: usize) -> Result<Self, ArralexError> {
        let mut out = Self::zero(nvars);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        // Split into signed summands.
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut started = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            match ch {
                '+' | '-' if started && prev != Some('^') && prev != Some('*') => {
                    chunks.push((neg, cur.trim().to_string()));
                    cur = String::new();
                    neg = ch == '-';
                }
                '-' if !started => {
                    neg = true;
                }
                c if c.is_whitespace() => {}
                _ => {
                    cur.push(ch);
                    started = true;
                }
            }
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
        }
        if !cur.trim().is_empty() {
            chunks.push((neg, cur.trim().to_string()));
        }
        for (is_neg, chunk) in chunks {
            let mut coeff = Q::one();
            let mut exps = vec![0i32; nvars];
            for factor in chunk.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    continue;
                }
                if let Some(rest) = factor.strip_prefix(prefix) {
                    if rest.chars().next().map_or(false, |c| c.is_ascii_digit()) {
                        let (var_s, exp_s) = match rest.split_once('^') {
                            Some((v, e)) => (v, Some(e)),
                            None => (rest, None),
                        };
                        let vi: usize = var_s
                            .parse()
                            .map_err(|_| ArralexError::Parse(format!("bad variable: {}", factor)))?;
                        if vi == 0 || vi > nvars {
                            return Err(ArralexError::Parse(format!("variable out of range: {}", factor)));
                        }
                        let k: i32 = match exp_s {
                            Some(e) => e
                                .parse()
                                .map_err(|_| ArralexError::Parse(format!("bad exponent: {}", factor)))?,
                            None => 1,
                        };
                        exps[vi - 1] += k;
                        continue;
                    }
                }
                // Otherwise a rational coefficient.
                let c: Q = factor
                    .parse()
                    .map_err(|_| ArralexError::Parse(format!("bad coefficient: {}", factor)))?;
                coeff *= c;
            }
            if is_neg {
                coeff = -coeff;
            }
            out.insert_term(exps, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_roundtrip() {
        let n = 3;
        let t1 = LaurentPoly::var(n, 0);
        let t2 = LaurentPoly::var(n, 1);
        let p = t1.mul(&t2).sub(&LaurentPoly::one(n)).add(&t2.pow(2).scale(&qint(3)));
        let s = p.render("t");
        let q = LaurentPoly::parse(&s, "t", n).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn magnus_of_t_minus_one() {
        // t_1 - 1 maps to -x_1.
        let n = 2;
        let p = LaurentPoly::var(n, 0).sub(&LaurentPoly::one(n));
        let m = p.magnus_substitute().unwrap();
        assert_eq!(m, LaurentPoly::var(n, 0).neg());
    }

    #[test]
    fn magnus_inverse_series() {
        // t_1^{-1} * t_1 = 1 must survive truncation.
        let n = 1;
        let t = LaurentPoly::monomial(n, vec![1]);
        let tinv = LaurentPoly::monomial(n, vec![-1]);
        let a = t.magnus_substitute_trunc(Some(5));
        let b = tinv.magnus_substitute_trunc(Some(5));
        assert_eq!(a.mul_trunc(&b, Some(5)), LaurentPoly::one(n));
    }

    #[test]
    fn parse_negative_exponents() {
        let p = LaurentPoly::parse("t1^-1*t2 - 2", "t", 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.eval_at_one(), qint(-1));
    }
}
