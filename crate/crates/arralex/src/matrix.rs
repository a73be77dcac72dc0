//! Dense matrices over the Laurent polynomial ring.
//!
//! Maps between free modules are written in the row convention used
//! throughout the crate: the matrix of a map sends the i-th basis vector of
//! the source to the i-th *row*, and elements are row vectors acted on by
//! right multiplication.  Consequently the matrix of a composite
//! "first f, then g" is `M(f) * M(g)`.

use crate::error::ArralexError;
use crate::ring::{LaurentPoly, Q};
use crate::subsets::ksubsets;
use num_traits::Zero;

/// A rows x cols matrix with [`LaurentPoly`] entries (row major).
#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<LaurentPoly>,
}

impl RingMatrix {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        RingMatrix {
            nvars,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zero(nvars, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = LaurentPoly::one(nvars);
        }
        m
    }

    pub fn from_rows(nvars: usize, cols: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            entries.extend(r);
        }
        RingMatrix { nvars, rows: nrows, cols, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        RingMatrix { nvars: self.nvars, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        RingMatrix { nvars: self.nvars, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_trunc(other, None)
    }

    /// Matrix product with optional degree truncation of every entry.
    pub fn mul_trunc(&self, other: &Self, trunc: Option<i32>) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zero(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul_trunc(b, trunc);
                    let cur = out.at(i, j).add(&prod);
                    *out.at_mut(i, j) = if let Some(d) = trunc { cur.truncate(d) } else { cur };
                }
            }
        }
        out
    }

    pub fn map<F: Fn(&LaurentPoly) -> LaurentPoly>(&self, f: F) -> Self {
        let entries = self.entries.iter().map(|p| f(p)).collect();
        RingMatrix { nvars: self.nvars, rows: self.rows, cols: self.cols, entries }
    }

    /// Vertical stack: `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RingMatrix { nvars: self.nvars, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                *out.at_mut(i, jj) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Keep only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                *out.at_mut(ii, j) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Evaluate every entry at t = 1.
    pub fn eval_at_one(&self) -> Vec<Vec<Q>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval_at_one()).collect())
            .collect()
    }

    /// Multiply each row by a unit monomial so all its entries become
    /// honest polynomials (no negative exponents).  This does not change
    /// the module presented by the matrix.
    pub fn clear_units(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            let mut mins = vec![0i32; self.nvars];
            for j in 0..self.cols {
                for (m, &x) in mins.iter_mut().zip(&self.at(i, j).min_exponents()) {
                    if x < *m {
                        *m = x;
                    }
                }
            }
            if mins.iter().any(|&m| m < 0) {
                let shift: Vec<i32> = mins.iter().map(|&m| if m < 0 { -m } else { 0 }).collect();
                for j in 0..self.cols {
                    *out.at_mut(i, j) = out.at(i, j).shift(&shift);
                }
            }
        }
        out
    }

    /// Entrywise Magnus substitution t_i -> 1 - x_i (entries must be polynomials).
    pub fn magnus_substitute(&self) -> Result<Self, ArralexError> {
        let mut out = Self::zero(self.nvars, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).magnus_substitute()?;
            }
        }
        Ok(out)
    }

    /// Entrywise truncated Magnus substitution (negative exponents allowed).
    pub fn magnus_substitute_trunc(&self, trunc: i32) -> Self {
        self.map(|p| p.magnus_substitute_trunc(Some(trunc)))
    }

    /// Exact inverse over the Laurent ring by Gauss-Jordan elimination.
    ///
    /// At every step the pivot must be a unit of the ring (a single term
    /// with coefficient ±c); the matrices this crate inverts -- blockwise
    /// exterior squares of basis-changing substitutions and monodromy
    /// twists -- always admit such pivots.
    pub fn invert_unit_pivot(&self) -> Result<Self, ArralexError> {
        if self.rows != self.cols {
            return Err(ArralexError::Dimension(format!(
                "cannot invert {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut left = self.clone();
        let mut right = Self::identity(self.nvars, n);
        let mut row_used = vec![false; n];
        let mut col_used = vec![false; n];
        // pivot_of_col[c] = row holding the pivot of column c.
        let mut pivot_of_col = vec![usize::MAX; n];
        for _step in 0..n {
            // Prefer pivots in sparse rows to limit fill-in.
            let mut best: Option<(usize, usize, usize)> = None;
            for r in 0..n {
                if row_used[r] {
                    continue;
                }
                let weight = (0..n).filter(|&j| !left.at(r, j).is_zero()).count();
                for c in 0..n {
                    if col_used[c] || !left.at(r, c).is_monomial_unit() {
                        continue;
                    }
                    if best.map_or(true, |(w, _, _)| weight < w) {
                        best = Some((weight, r, c));
                    }
                }
            }
            let (_, r, c) = best.ok_or_else(|| {
                ArralexError::NotInvertible("no unit pivot available".to_string())
            })?;
            row_used[r] = true;
            col_used[c] = true;
            pivot_of_col[c] = r;
            let inv = left.at(r, c).unit_inverse()?;
            for j in 0..n {
                *left.at_mut(r, j) = left.at(r, j).mul(&inv);
                *right.at_mut(r, j) = right.at(r, j).mul(&inv);
            }
            for i in 0..n {
                if i == r || left.at(i, c).is_zero() {
                    continue;
                }
                let factor = left.at(i, c).clone();
                for j in 0..n {
                    let l = left.at(r, j).mul(&factor);
                    *left.at_mut(i, j) = left.at(i, j).sub(&l);
                    let rr = right.at(r, j).mul(&factor);
                    *right.at_mut(i, j) = right.at(i, j).sub(&rr);
                }
            }
        }
        // left is now a permutation matrix: row pivot_of_col[c] has 1 in column c.
        let mut inv = Self::zero(self.nvars, n, n);
        for c in 0..n {
            let r = pivot_of_col[c];
            for j in 0..n {
                *inv.at_mut(c, j) = right.at(r, j).clone();
            }
        }
        Ok(inv)
    }

    /// Inverse of a matrix congruent to the identity modulo the augmentation
    /// ideal, over the polynomial ring truncated at total degree `trunc`:
    /// the finite geometric series `sum (I - M)^k`.
    pub fn truncated_inverse(&self, trunc: i32) -> Result<Self, ArralexError> {
        if self.rows != self.cols {
            return Err(ArralexError::Dimension(format!(
                "cannot invert {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let ident = Self::identity(self.nvars, n);
        let nil = ident.sub(self); // = I - M, entries in the augmentation ideal
        for i in 0..n {
            for j in 0..n {
                let p = nil.at(i, j);
                if !p.is_polynomial() || p.low_degree().map_or(false, |d| d < 1) {
                    return Err(ArralexError::NotInvertible(
                        "matrix is not congruent to the identity modulo the maximal ideal".to_string(),
                    ));
                }
            }
        }
        let mut out = ident.clone();
        let mut power = ident;
        for _ in 1..=trunc.max(0) {
            power = power.mul_trunc(&nil, Some(trunc));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// The k-th exterior power: rows and columns are indexed by increasing
    /// k-subsets in lex order; the (J, J') entry is the minor with rows J
    /// and columns J'.
    pub fn exterior_power(&self, k: usize) -> Self {
        assert_eq!(self.rows, self.cols, "exterior power of a square matrix only");
        let n = self.rows;
        let subs = ksubsets(n, k);
        let m = subs.len();
        let mut out = Self::zero(self.nvars, m, m);
        for (a, ja) in subs.iter().enumerate() {
            for (b, jb) in subs.iter().enumerate() {
                *out.at_mut(a, b) = self.minor(ja, jb);
            }
        }
        out
    }

    /// Determinant of the submatrix with the given rows and columns (1-based).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        match k {
            0 => LaurentPoly::one(self.nvars),
            1 => self.at(rows[0] - 1, cols[0] - 1).clone(),
            _ => {
                // Laplace expansion along the first row; k <= 3 in practice.
                let mut det = LaurentPoly::zero(self.nvars);
                for (j, &c) in cols.iter().enumerate() {
                    let a = self.at(rows[0] - 1, c - 1);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> =
                        cols.iter().enumerate().filter(|&(jj, _)| jj != j).map(|(_, &x)| x).collect();
                    let sub = self.minor(&rows[1..], &sub_cols);
                    let term = a.mul(&sub);
                    det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
                }
                det
            }
        }
    }

    /// Apply a ring substitution to every entry.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Self {
        self.map(|p| p.substitute(images))
    }
}

impl std::fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RingMatrix {}x{} over {} vars", self.rows, self.cols, self.nvars)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.render("t")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Projection matrix keeping the listed coordinates (columns of the result),
/// as a map from an ambient space of dimension `dim`.
pub fn projection_matrix(nvars: usize, dim: usize, keep: &[usize]) -> RingMatrix {
    let mut m = RingMatrix::zero(nvars, dim, keep.len());
    for (j, &k) in keep.iter().enumerate() {
        *m.at_mut(k, j) = LaurentPoly::one(nvars);
    }
    m
}

/// Inclusion matrix of the span of the listed coordinates into an ambient
/// space of dimension `dim`.
pub fn inclusion_matrix(nvars: usize, dim: usize, keep: &[usize]) -> RingMatrix {
    let mut m = RingMatrix::zero(nvars, keep.len(), dim);
    for (i, &k) in keep.iter().enumerate() {
        *m.at_mut(i, k) = LaurentPoly::one(nvars);
    }
    m
}

/// Rank over Q of a rational matrix (used for integer matrices after
/// evaluation at t = 1).
pub fn rational_rank(mat: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = mat.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let piv = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = piv else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..cols {
            let v = &m[row][c] * &inv;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let v = &m[r][c] - &m[row][c] * &f;
                    m[r][c] = v;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qint;

    #[test]
    fn unit_pivot_inverse_roundtrip() {
        let n = 2;
        let mut m = RingMatrix::identity(n, 3);
        let t1 = LaurentPoly::var(n, 0);
        let t2 = LaurentPoly::var(n, 1);
        *m.at_mut(0, 1) = t1.sub(&LaurentPoly::one(n));
        *m.at_mut(1, 2) = t2.mul(&t1);
        *m.at_mut(0, 0) = t2.clone();
        let inv = m.invert_unit_pivot().unwrap();
        assert_eq!(m.mul(&inv), RingMatrix::identity(n, 3));
        assert_eq!(inv.mul(&m), RingMatrix::identity(n, 3));
    }

    #[test]
    fn truncated_geometric_inverse() {
        let n = 2;
        let mut m = RingMatrix::identity(n, 2);
        *m.at_mut(0, 1) = LaurentPoly::var(n, 0);
        *m.at_mut(1, 0) = LaurentPoly::var(n, 1).scale(&qint(2));
        let d = 6;
        let inv = m.truncated_inverse(d).unwrap();
        let prod = m.mul_trunc(&inv, Some(d));
        assert_eq!(prod, RingMatrix::identity(n, 2));
    }

    #[test]
    fn exterior_power_multiplicative() {
        // wedge^2(AB) = wedge^2(A) wedge^2(B)
        let n = 2;
        let t1 = LaurentPoly::var(n, 0);
        let t2 = LaurentPoly::var(n, 1);
        let mut a = RingMatrix::identity(n, 3);
        *a.at_mut(0, 1) = t1.clone();
        *a.at_mut(2, 0) = t2.sub(&LaurentPoly::one(n));
        let mut b = RingMatrix::identity(n, 3);
        *b.at_mut(1, 2) = t1.mul(&t2);
        *b.at_mut(1, 0) = qint(3).into_poly(n);
        let ab = a.mul(&b);
        assert_eq!(ab.exterior_power(2), a.exterior_power(2).mul(&b.exterior_power(2)));
    }

    trait IntoPoly {
        fn into_poly(self, n: usize) -> LaurentPoly;
    }
    impl IntoPoly for Q {
        fn into_poly(self, n: usize) -> LaurentPoly {
            LaurentPoly::constant(n, self)
        }
    }
}
