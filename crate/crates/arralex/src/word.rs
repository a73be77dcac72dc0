//! Words in a free group and Fox free-derivative calculus.
//!
//! A [`FreeWord`] is a reduced word in the generators `t_1, ..., t_n`.
//! [`fox_gradient`] returns the vector of free derivatives in the integral
//! group ring; [`abelianized_gradient`] pushes it to the Laurent ring, where
//! the fundamental identity
//! `sum_i (dw/dt_i)^{ab} (t_i - 1) = w^{ab} - 1` holds.

use crate::error::ArralexError;
use crate::ring::{LaurentPoly, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A reduced word in the free group on `nvars` generators.
///
/// Letters are `(generator index (0-based), exponent sign)` with adjacent
/// equal-generator letters merged on construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    nvars: usize,
    letters: Vec<(usize, i32)>, // (generator, +1 or -1), freely reduced
}

impl FreeWord {
    pub fn identity(nvars: usize) -> Self {
        FreeWord { nvars, letters: Vec::new() }
    }

    /// The generator `t_i` (zero-based).
    pub fn generator(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        FreeWord { nvars, letters: vec![(i, 1)] }
    }

    /// Build from a letter sequence, reducing freely.
    pub fn from_letters(nvars: usize, letters: &[(usize, i32)]) -> Self {
        let mut w = FreeWord::identity(nvars);
        for &(g, e) in letters {
            assert!(g < nvars, "generator index out of range");
            assert!(e == 1 || e == -1, "letter exponents must be ±1");
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i32) {
        if let Some(&(lg, le)) = self.letters.last() {
            if lg == g && le == -e {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
        FreeWord { nvars: self.nvars, letters }
    }

    /// Conjugate `self^other = other^{-1} * self * other`.
    pub fn conjugate(&self, other: &Self) -> Self {
        other.inverse().mul(self).mul(other)
    }

    /// The commutator `[self, other] = self * other * self^{-1} * other^{-1}`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    /// The product `t_{j_1} ... t_{j_k}` for an increasing index set (1-based).
    pub fn from_index_set(nvars: usize, set: &[usize]) -> Self {
        let letters: Vec<(usize, i32)> = set.iter().map(|&j| (j - 1, 1)).collect();
        Self::from_letters(nvars, &letters)
    }

    /// Image in the free abelian group, as a Laurent monomial.
    pub fn abelianized(&self) -> LaurentPoly {
        let mut exps = vec![0i32; self.nvars];
        for &(g, e) in &self.letters {
            exps[g] += e;
        }
        LaurentPoly::monomial(self.nvars, exps)
    }

    /// Substitute each generator by the given word.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        assert_eq!(images.len(), self.nvars);
        let n = images.first().map_or(self.nvars, |w| w.nvars);
        let mut out = FreeWord::identity(n);
        for &(g, e) in &self.letters {
            let img = if e == 1 { images[g].clone() } else { images[g].inverse() };
            out = out.mul(&img);
        }
        out
    }

    /// Parse a word like `t1 t2^-1 [t1,t3] t2`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, ArralexError> {
        let mut w = FreeWord::identity(nvars);
        let mut rest = s.trim();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('[') {
                let close = r
                    .find(']')
                    .ok_or_else(|| ArralexError::Parse(format!("unclosed commutator in '{}'", s)))?;
                let inner = &r[..close];
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| ArralexError::Parse(format!("bad commutator '[{}']", inner)))?;
                let wa = FreeWord::parse(a, nvars)?;
                let wb = FreeWord::parse(b, nvars)?;
                let mut comm = wa.commutator(&wb);
                let mut tail = &r[close + 1..];
                if let Some(exp_str) = tail.strip_prefix('^') {
                    let end = exp_str
                        .find(|c: char| c.is_whitespace() || c == '[')
                        .unwrap_or(exp_str.len());
                    let exp: i64 = exp_str[..end]
                        .parse()
                        .map_err(|_| ArralexError::Parse(format!("bad exponent in '{}'", s)))?;
                    let base = if exp >= 0 { comm.clone() } else { comm.inverse() };
                    let mut acc = FreeWord::identity(nvars);
                    for _ in 0..exp.unsigned_abs() {
                        acc = acc.mul(&base);
                    }
                    comm = acc;
                    tail = &exp_str[end..];
                }
                w = w.mul(&comm);
                rest = tail.trim_start();
                continue;
            }
            let token_end = rest
                .find(|c: char| c.is_whitespace() || c == '[')
                .unwrap_or(rest.len());
            let token = &rest[..token_end];
            rest = rest[token_end..].trim_start();
            if token == "1" || token.is_empty() {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<i64>()
                        .map_err(|_| ArralexError::Parse(format!("bad exponent in '{}'", token)))?,
                ),
                None => (token, 1),
            };
            let gi: usize = base
                .strip_prefix('t')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| ArralexError::Parse(format!("bad generator '{}'", token)))?;
            if gi == 0 || gi > nvars {
                return Err(ArralexError::Parse(format!("generator out of range: '{}'", token)));
            }
            let letter = if exp >= 0 { (gi - 1, 1) } else { (gi - 1, -1) };
            for _ in 0..exp.unsigned_abs() {
                w.push(letter.0, letter.1);
            }
        }
        Ok(w)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("t{}", g + 1)
                } else {
                    format!("t{}^-1", g + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An element of the integral group ring of the free group: a finite
/// Z-linear combination of reduced words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupRingElement {
    pub nvars: usize,
    pub terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero(nvars: usize) -> Self {
        GroupRingElement { nvars, terms: BTreeMap::new() }
    }

    pub fn from_word(w: FreeWord, c: BigInt) -> Self {
        let nvars = w.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        GroupRingElement { nvars, terms }
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-borrow to remove; find the key again.
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Left-multiply every word by `w`.
    pub fn left_mul_word(&self, w: &FreeWord) -> Self {
        let mut out = Self::zero(self.nvars);
        for (v, c) in &self.terms {
            out.add_term(w.mul(v), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Abelianize to a Laurent polynomial.
    pub fn abelianized(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (w, c) in &self.terms {
            out = out.add(&w.abelianized().scale(&Q::from_integer(c.clone())));
        }
        out
    }

    /// Augmentation (sum of coefficients).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a + c)
    }
}

/// The Fox gradient: the vector of free derivatives `dw/dt_i` in the group
/// ring, satisfying the product rule `d(uv) = du * eps(v) + u * dv`.
pub fn fox_gradient(w: &FreeWord) -> Vec<GroupRingElement> {
    let n = w.nvars();
    let mut grad: Vec<GroupRingElement> = (0..n).map(|_| GroupRingElement::zero(n)).collect();
    let mut prefix = FreeWord::identity(n);
    for &(g, e) in w.letters() {
        if e == 1 {
            // d(t_g)/dt_g = 1, multiplied by the accumulated prefix.
            grad[g].add_term(prefix.clone(), BigInt::one());
            prefix = prefix.mul(&FreeWord::from_letters(n, &[(g, 1)]));
        } else {
            // d(t_g^{-1})/dt_g = -t_g^{-1}.
            prefix = prefix.mul(&FreeWord::from_letters(n, &[(g, -1)]));
            grad[g].add_term(prefix.clone(), -BigInt::one());
        }
    }
    grad
}

/// The abelianized Fox gradient as a row vector over the Laurent ring.
pub fn abelianized_gradient(w: &FreeWord) -> Vec<LaurentPoly> {
    let n = w.nvars();
    let mut grad = vec![LaurentPoly::zero(n); n];
    let mut prefix = vec![0i32; n]; // exponent vector of the abelianized prefix
    for &(g, e) in w.letters() {
        if e == 1 {
            grad[g] = grad[g].add(&LaurentPoly::monomial(n, prefix.clone()));
            prefix[g] += 1;
        } else {
            prefix[g] -= 1;
            grad[g] = grad[g].sub(&LaurentPoly::monomial(n, prefix.clone()));
        }
    }
    grad
}
