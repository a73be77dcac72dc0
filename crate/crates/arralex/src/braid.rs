//! Pure braids as basis-conjugating free-group automorphisms, and the
//! Gassner (Magnus) representation.
//!
//! A basis-conjugating automorphism sends `t_i` to `z_i t_i z_i^{-1}`; it is
//! stored as the tuple of conjugating words [`BasisConjugating`].  The group
//! operation follows the convention used for all maps in this crate:
//! `a * b` means "apply `a` first, then `b`", and the representation matrix
//! of a product is the product of the matrices in the same order.
//!
//! The standard pure braid generator `A_{i,j}` is the full twist on strands
//! i and j; the full twist `A_V` on a strand set V is built either from its
//! explicit conjugating tuple ([`twist_tuple`]) or as a product of the
//! `A_{i,j}` ([`twist_word`]).  Agreement of the two routes is a test
//! invariant, as is multiplicativity of the representation.

use crate::error::ArralexError;
use crate::koszul::nabla_v;
use crate::matrix::RingMatrix;
use crate::ring::LaurentPoly;
use crate::word::{abelianized_gradient, FreeWord};
use std::fmt;

/// One letter of a pure braid word: `A_{i,j}^{±1}` with `1 <= i < j <= n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BraidLetter {
    pub i: usize,
    pub j: usize,
    pub exp: i32,
}

/// A word in the standard pure braid generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord { letters: Vec::new() }
    }

    pub fn generator(i: usize, j: usize) -> Self {
        assert!(i < j, "pure braid generator requires i < j");
        BraidWord { letters: vec![BraidLetter { i, j, exp: 1 }] }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn inverse(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| BraidLetter { i: l.i, j: l.j, exp: -l.exp })
            .collect();
        BraidWord { letters }
    }

    /// Parse `A[1,2] A[1,3]^-1 ...`.
    pub fn parse(s: &str) -> Result<Self, ArralexError> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let rest = token
                .strip_prefix("A[")
                .ok_or_else(|| ArralexError::Parse(format!("bad braid letter '{}'", token)))?;
            let close = rest
                .find(']')
                .ok_or_else(|| ArralexError::Parse(format!("bad braid letter '{}'", token)))?;
            let (pair, tail) = rest.split_at(close);
            let tail = &tail[1..];
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| ArralexError::Parse(format!("bad braid letter '{}'", token)))?;
            let i: usize = a.trim().parse().map_err(|_| ArralexError::Parse(token.to_string()))?;
            let j: usize = b.trim().parse().map_err(|_| ArralexError::Parse(token.to_string()))?;
            if i == 0 || j == 0 || i >= j {
                return Err(ArralexError::Parse(format!("bad strand pair in '{}'", token)));
            }
            let exp: i32 = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| ArralexError::Parse(format!("bad exponent in '{}'", token)))?
            };
            for _ in 0..exp.unsigned_abs() {
                letters.push(BraidLetter { i, j, exp: exp.signum() });
            }
        }
        Ok(BraidWord { letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.exp == 1 {
                    format!("A[{},{}]", l.i, l.j)
                } else {
                    format!("A[{},{}]^-1", l.i, l.j)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A conjugated full twist `A_V ^ delta` (conjugation `x^y = y^{-1} x y`),
/// the shape in which braid monodromy generators arrive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugatedTwist {
    pub v_set: Vec<usize>,
    pub conjugator: BraidWord,
}

impl ConjugatedTwist {
    pub fn plain(v_set: Vec<usize>) -> Self {
        ConjugatedTwist { v_set, conjugator: BraidWord::identity() }
    }

    /// Parse `T{1,3,6}` or `T{1,3,6} ^ (A[3,4] A[3,6])`.
    pub fn parse(s: &str) -> Result<Self, ArralexError> {
        let s = s.trim();
        let rest = s
            .strip_prefix("T{")
            .ok_or_else(|| ArralexError::Parse(format!("bad twist '{}'", s)))?;
        let close = rest
            .find('}')
            .ok_or_else(|| ArralexError::Parse(format!("bad twist '{}'", s)))?;
        let mut v_set: Vec<usize> = Vec::new();
        for part in rest[..close].split(',') {
            v_set.push(
                part.trim()
                    .parse()
                    .map_err(|_| ArralexError::Parse(format!("bad strand index in '{}'", s)))?,
            );
        }
        v_set.sort_unstable();
        v_set.dedup();
        let tail = rest[close + 1..].trim();
        let conjugator = if tail.is_empty() {
            BraidWord::identity()
        } else {
            let inner = tail
                .strip_prefix('^')
                .map(str::trim)
                .and_then(|t| t.strip_prefix('('))
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| ArralexError::Parse(format!("bad conjugator in '{}'", s)))?;
            BraidWord::parse(inner)?
        };
        Ok(ConjugatedTwist { v_set, conjugator })
    }
}

impl fmt::Display for ConjugatedTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v_set.iter().map(|x| x.to_string()).collect();
        if self.conjugator.letters.is_empty() {
            write!(f, "T{{{}}}", v.join(","))
        } else {
            write!(f, "T{{{}}} ^ ({})", v.join(","), self.conjugator)
        }
    }
}

/// A basis-conjugating automorphism `t_i -> z_i t_i z_i^{-1}` of the free
/// group on n generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisConjugating {
    pub words: Vec<FreeWord>,
}

impl BasisConjugating {
    pub fn identity(n: usize) -> Self {
        BasisConjugating { words: (0..n).map(|_| FreeWord::identity(n)).collect() }
    }

    /// Normalize each conjugating word to its canonical representative:
    /// `z_i` is only determined up to right multiplication by powers of
    /// `t_i`, so trailing `t_i^{±1}` letters are stripped.
    pub fn normalized(mut self) -> Self {
        let n = self.words.len();
        for (i, w) in self.words.iter_mut().enumerate() {
            loop {
                let letters = w.letters();
                match letters.last() {
                    Some(&(g, _)) if g == i => {
                        let trimmed = FreeWord::from_letters(n, &letters[..letters.len() - 1]);
                        *w = trimmed;
                    }
                    _ => break,
                }
            }
        }
        self
    }

    pub fn nvars(&self) -> usize {
        self.words.len()
    }

    /// Apply the automorphism to a word.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let n = self.nvars();
        let images: Vec<FreeWord> = (0..n)
            .map(|i| {
                self.words[i]
                    .mul(&FreeWord::generator(n, i))
                    .mul(&self.words[i].inverse())
            })
            .collect();
        w.substitute(&images)
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.nvars();
        assert_eq!(n, other.nvars());
        let words = (0..n)
            .map(|i| other.apply(&self.words[i]).mul(&other.words[i]))
            .collect();
        BasisConjugating { words }.normalized()
    }

    /// The Gassner matrix: row i is `(1 - t_i) grad(z_i) + z_i^{ab} e_i`.
    pub fn gassner(&self) -> RingMatrix {
        let n = self.nvars();
        let mut m = RingMatrix::zero(n, n, n);
        for i in 0..n {
            let grad = abelianized_gradient(&self.words[i]);
            let one_minus_ti = LaurentPoly::one(n).sub(&LaurentPoly::var(n, i));
            for j in 0..n {
                *m.at_mut(i, j) = grad[j].mul(&one_minus_ti);
            }
            let zab = self.words[i].abelianized();
            *m.at_mut(i, i) = m.at(i, i).add(&zab);
        }
        m
    }
}

/// A general automorphism of the free group, stored by generator images.
/// Composition follows the crate convention: `a.compose(b)` applies `a`
/// first, then `b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeAutomorphism {
    pub images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(n: usize) -> Self {
        FreeAutomorphism { images: (0..n).map(|i| FreeWord::generator(n, i)).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let images = self.images.iter().map(|w| other.apply(w)).collect();
        FreeAutomorphism { images }
    }

    /// The Artin action of the braid generator exchanging the strands at
    /// positions p and p+1 (1-based): `t_p -> t_p t_{p+1} t_p^{-1}`,
    /// `t_{p+1} -> t_p`.  Negative `sign` gives the inverse crossing.
    pub fn artin_sigma(n: usize, p: usize, sign: i32) -> Self {
        let mut a = Self::identity(n);
        let tp = FreeWord::generator(n, p - 1);
        let tq = FreeWord::generator(n, p);
        if sign > 0 {
            a.images[p - 1] = tp.mul(&tq).mul(&tp.inverse());
            a.images[p] = tp;
        } else {
            a.images[p - 1] = tq.clone();
            a.images[p] = tq.inverse().mul(&tp).mul(&tq);
        }
        a
    }

    /// Try to express a pure-braid automorphism as a basis-conjugating tuple.
    pub fn to_basis_conjugating(&self) -> Option<BasisConjugating> {
        let n = self.nvars();
        let mut words = Vec::with_capacity(n);
        for (i, img) in self.images.iter().enumerate() {
            let letters = img.letters();
            if letters.is_empty() {
                return None;
            }
            let mid = letters.len() / 2;
            if letters.len() % 2 == 0 || letters[mid] != (i, 1) {
                return None;
            }
            let z = FreeWord::from_letters(n, &letters[..mid]);
            let ztail = FreeWord::from_letters(n, &letters[mid + 1..]);
            if ztail != z.inverse() {
                return None;
            }
            words.push(z);
        }
        Some(BasisConjugating { words }.normalized())
    }
}

/// The conjugating word `w_i` of the full twist `A_V` on the strand set `V`
/// (1-based, increasing).
pub fn twist_word(n: usize, v_set: &[usize], i: usize) -> FreeWord {
    if v_set.contains(&i) {
        FreeWord::from_index_set(n, v_set)
    } else if i > v_set[0] && i < *v_set.last().unwrap() {
        let before: Vec<usize> = v_set.iter().copied().filter(|&j| j < i).collect();
        let after: Vec<usize> = v_set.iter().copied().filter(|&j| j > i).collect();
        FreeWord::from_index_set(n, &before).commutator(&FreeWord::from_index_set(n, &after))
    } else {
        FreeWord::identity(n)
    }
}

/// The full conjugating tuple of `A_V`.
pub fn twist_tuple(n: usize, v_set: &[usize]) -> BasisConjugating {
    let words = (1..=n).map(|i| twist_word(n, v_set, i)).collect();
    BasisConjugating { words }.normalized()
}

/// The tuple of a single pure braid letter `A_{i,j}^{±1}`.
pub fn letter_tuple(n: usize, letter: &BraidLetter) -> BasisConjugating {
    let v = vec![letter.i, letter.j];
    if letter.exp == 1 {
        return twist_tuple(n, &v);
    }
    // Inverse twist: t_k -> u_k t_k u_k^{-1} with u_k = A_{i,j}^{-1}(z_k^{-1}).
    // A_{i,j} fixes t_i t_j, so u_i = u_j = (t_i t_j)^{-1}; for i < k < j,
    // u_k = (t_i t_j)^{-1} [t_i, t_j]^{-1} (t_i t_j).
    let tij = FreeWord::from_index_set(n, &v);
    let ti = FreeWord::generator(n, letter.i - 1);
    let tj = FreeWord::generator(n, letter.j - 1);
    let comm_inv = ti.commutator(&tj).inverse();
    let words = (1..=n)
        .map(|k| {
            if k == letter.i || k == letter.j {
                tij.inverse()
            } else if k > letter.i && k < letter.j {
                tij.inverse().mul(&comm_inv).mul(&tij)
            } else {
                FreeWord::identity(n)
            }
        })
        .collect();
    BasisConjugating { words }.normalized()
}

/// The tuple of an arbitrary pure braid word (letters applied left to right).
pub fn word_tuple(n: usize, word: &BraidWord) -> BasisConjugating {
    let mut t = BasisConjugating::identity(n);
    for letter in &word.letters {
        t = t.compose(&letter_tuple(n, letter));
    }
    t
}

/// The tuple of a conjugated twist `A_V ^ delta = delta^{-1} A_V delta`.
pub fn conjugated_twist_tuple(n: usize, tw: &ConjugatedTwist) -> BasisConjugating {
    let d = word_tuple(n, &tw.conjugator);
    let dinv = word_tuple(n, &tw.conjugator.inverse());
    dinv.compose(&twist_tuple(n, &tw.v_set)).compose(&d)
}

/// Gassner matrix of a pure braid word: the product of the letter matrices
/// in word order (the fast path of the representation).
pub fn gassner_word(n: usize, word: &BraidWord) -> RingMatrix {
    let mut m = RingMatrix::identity(n, n);
    for letter in &word.letters {
        m = m.mul(&letter_tuple(n, letter).gassner());
    }
    m
}

/// Gassner matrix of a conjugated twist via its conjugating tuple
/// (the slow, definition-level path; used as an oracle for the fast path).
pub fn gassner_conj(n: usize, tw: &ConjugatedTwist) -> RingMatrix {
    conjugated_twist_tuple(n, tw).gassner()
}

/// Gassner matrix of a conjugated twist via matrix conjugation.
pub fn gassner_conjugated_fast(n: usize, tw: &ConjugatedTwist) -> RingMatrix {
    let dm = gassner_word(n, &tw.conjugator);
    let dm_inv = gassner_word(n, &tw.conjugator.inverse());
    dm_inv.mul(&twist_tuple(n, &tw.v_set).gassner()).mul(&dm)
}

/// The matrix of the basis change `mu_V` (`t_{min V} -> t_V`) under the
/// Magnus representation: the identity except that row `min V` is `nabla_V`.
pub fn mu_matrix(n: usize, v_set: &[usize]) -> RingMatrix {
    let mut m = RingMatrix::identity(n, n);
    let i1 = v_set[0];
    let nv = nabla_v(n, v_set);
    for j in 0..n {
        *m.at_mut(i1 - 1, j) = nv[j].clone();
    }
    m
}

/// Closed-form inverse of [`mu_matrix`]: the identity except that row
/// `min V` is `e_{min V} - sum_{i in V'} t_{V^i} e_i`.
pub fn mu_matrix_inverse(n: usize, v_set: &[usize]) -> RingMatrix {
    let mut m = RingMatrix::identity(n, n);
    let i1 = v_set[0];
    let nv = nabla_v(n, v_set);
    for j in 0..n {
        if j == i1 - 1 {
            continue;
        }
        *m.at_mut(i1 - 1, j) = nv[j].neg();
    }
    m
}

/// The coefficient-ring substitution of `mu_V`: `t_{min V} -> t_V`.
pub fn mu_ring_images(n: usize, v_set: &[usize]) -> Vec<LaurentPoly> {
    let i1 = v_set[0];
    (0..n)
        .map(|i| {
            if i == i1 - 1 {
                crate::koszul::set_monomial(n, v_set)
            } else {
                LaurentPoly::var(n, i)
            }
        })
        .collect()
}

/// Inverse substitution: `t_{min V} -> t_{min V} * t_{V'}^{-1}`.
pub fn mu_ring_images_inverse(n: usize, v_set: &[usize]) -> Vec<LaurentPoly> {
    let i1 = v_set[0];
    (0..n)
        .map(|i| {
            if i == i1 - 1 {
                let mut exps = vec![0i32; n];
                exps[i] = 1;
                for &j in &v_set[1..] {
                    exps[j - 1] -= 1;
                }
                LaurentPoly::monomial(n, exps)
            } else {
                LaurentPoly::var(n, i)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RingMatrix;

    #[test]
    fn twist_as_word_and_tuple_agree() {
        // A_V as a product of A_{i,j} letters equals the explicit tuple.
        for (n, v) in [(4usize, vec![1usize, 2, 4]), (5, vec![2, 3, 5]), (3, vec![1, 2, 3])] {
            let mut word = BraidWord::identity();
            for (s, &js) in v.iter().enumerate() {
                for &is in &v[..s] {
                    word = word.mul(&BraidWord::generator(is, js));
                }
            }
            let via_word = word_tuple(n, &word);
            let direct = twist_tuple(n, &v);
            assert_eq!(via_word, direct, "tuples differ for V={:?}", v);
            assert_eq!(gassner_word(n, &word), direct.gassner());
        }
    }

    #[test]
    fn gassner_inverse_letters() {
        let n = 4;
        let w = BraidWord::parse("A[1,3] A[2,4]^-1 A[1,2]").unwrap();
        let m = gassner_word(n, &w);
        let minv = gassner_word(n, &w.inverse());
        assert_eq!(m.mul(&minv), RingMatrix::identity(n, n));
    }

    #[test]
    fn conjugated_twist_paths_agree() {
        let n = 6;
        let tw = ConjugatedTwist::parse("T{2,4,6} ^ (A[3,4] A[3,6])").unwrap();
        let slow = gassner_conj(n, &tw);
        let fast = gassner_conjugated_fast(n, &tw);
        assert_eq!(slow, fast);
    }

    #[test]
    fn mu_matrix_inverse_closed_form() {
        let n = 6;
        let v = vec![2usize, 4, 5];
        let m = mu_matrix(n, &v);
        let mi = mu_matrix_inverse(n, &v);
        assert_eq!(m.mul(&mi), RingMatrix::identity(n, n));
        assert_eq!(mi.mul(&m), RingMatrix::identity(n, n));
    }

    #[test]
    fn parse_display_roundtrip() {
        let tw = ConjugatedTwist::parse("T{1,4} ^ (A[3,4])").unwrap();
        assert_eq!(format!("{}", tw), "T{1,4} ^ (A[3,4])");
        let tw2 = ConjugatedTwist::parse(&format!("{}", tw)).unwrap();
        assert_eq!(tw, tw2);
    }
}
