//! The Koszul-type free complex over the Laurent ring and its localized
//! subcomplexes.
//!
//! `C_k` is the free module on increasing k-subsets `e_J` of {1, ..., n}
//! (lex order, see [`crate::subsets`]), with differential
//! `d_k(e_J) = sum_r (-1)^{k+r} (t_{j_r} - 1) e_{J - j_r}`.

use crate::matrix::{inclusion_matrix, projection_matrix, RingMatrix};
use crate::ring::LaurentPoly;
use crate::subsets::{ksubsets, subset_index, sort_with_sign};

/// The matrix of `d_k : C_k -> C_{k-1}` (rows indexed by `C_k`).
pub fn differential(n: usize, k: usize) -> RingMatrix {
    assert!(k >= 1);
    let source = ksubsets(n, k);
    let target_len = crate::subsets::binomial(n, k - 1);
    let mut m = RingMatrix::zero(n, source.len(), target_len);
    for (row, j_set) in source.iter().enumerate() {
        for (r, &jr) in j_set.iter().enumerate() {
            let rest: Vec<usize> = j_set.iter().copied().filter(|&x| x != jr).collect();
            let col = subset_index(n, &rest);
            // (-1)^{k+r} with r counted from 1.
            let sign_pos = (k + r + 1) % 2 == 0;
            let mut coeff = LaurentPoly::var(n, jr - 1).sub(&LaurentPoly::one(n));
            if !sign_pos {
                coeff = coeff.neg();
            }
            *m.at_mut(row, col) = m.at(row, col).add(&coeff);
        }
    }
    m
}

/// The row vector `nabla_V = sum_{i in V} t_{V^i} e_i` in `C_1`, where
/// `t_{V^i}` is the product of `t_j` over `j in V` with `j < i`.
pub fn nabla_v(n: usize, v_set: &[usize]) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(n); n];
    for &i in v_set {
        out[i - 1] = prefix_monomial(n, v_set, i);
    }
    out
}

/// The monomial `t_{V^i}`: product of `t_j` for `j in V`, `j < i`.
pub fn prefix_monomial(n: usize, v_set: &[usize], i: usize) -> LaurentPoly {
    let mut exps = vec![0i32; n];
    for &j in v_set {
        if j < i {
            exps[j - 1] += 1;
        }
    }
    LaurentPoly::monomial(n, exps)
}

/// The monomial `t_U = prod_{j in U} t_j`.
pub fn set_monomial(n: usize, u_set: &[usize]) -> LaurentPoly {
    let mut exps = vec![0i32; n];
    for &j in u_set {
        exps[j - 1] += 1;
    }
    LaurentPoly::monomial(n, exps)
}

/// Wedge of two `C_1` row vectors into `C_2` coordinates.
pub fn wedge2(n: usize, a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let pairs = ksubsets(n, 2);
    let mut out = vec![LaurentPoly::zero(n); pairs.len()];
    for (idx, pq) in pairs.iter().enumerate() {
        let (p, q) = (pq[0] - 1, pq[1] - 1);
        out[idx] = a[p].mul(&b[q]).sub(&a[q].mul(&b[p]));
    }
    out
}

/// Wedge of a `C_1` row vector with the basis vector `e_l` (1-based),
/// in `C_2` coordinates.
pub fn wedge_with_basis(n: usize, a: &[LaurentPoly], l: usize) -> Vec<LaurentPoly> {
    let pairs = ksubsets(n, 2);
    let mut out = vec![LaurentPoly::zero(n); pairs.len()];
    for (i, coeff) in a.iter().enumerate() {
        if coeff.is_zero() || i + 1 == l {
            continue;
        }
        if let Some((sorted, sign)) = sort_with_sign(&[i + 1, l]) {
            let idx = subset_index(n, &sorted);
            let c = if sign > 0 { coeff.clone() } else { coeff.neg() };
            out[idx] = out[idx].add(&c);
        }
    }
    out
}

/// Column indices of `C_2` basis pairs entirely contained in `set`.
pub fn pairs_within(n: usize, set: &[usize]) -> Vec<usize> {
    ksubsets(n, 2)
        .iter()
        .enumerate()
        .filter(|(_, pq)| pq.iter().all(|x| set.contains(x)))
        .map(|(i, _)| i)
        .collect()
}

/// Column indices of the pairs `{min V, i}` for `i` in `V' = V - min V`
/// (the summand `C_2'(V)` of `C_2`).
pub fn pairs_through_min(n: usize, v_set: &[usize]) -> Vec<usize> {
    let i1 = v_set[0];
    v_set[1..]
        .iter()
        .map(|&i| subset_index(n, &[i1.min(i), i1.max(i)]))
        .collect()
}

/// Column indices of pairs contained in `V' = V - min V` (the summand
/// `C_2(V')` of `C_2`).
pub fn pairs_in_vprime(n: usize, v_set: &[usize]) -> Vec<usize> {
    pairs_within(n, &v_set[1..])
}

/// Indices (into `ksubsets(n, m)`) of the m-subsets meeting `V'` in at
/// least two elements: the basis of the submodule `C_2(V') ^ C_{m-2}`.
pub fn wedge_submodule_indices(n: usize, vprime: &[usize], m: usize) -> Vec<usize> {
    ksubsets(n, m)
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().filter(|x| vprime.contains(x)).count() >= 2)
        .map(|(i, _)| i)
        .collect()
}

/// Projection `C_m -> C_2(V') ^ C_{m-2}` (kills other basis vectors).
pub fn wedge_submodule_projection(n: usize, vprime: &[usize], m: usize) -> RingMatrix {
    let keep = wedge_submodule_indices(n, vprime, m);
    projection_matrix(n, crate::subsets::binomial(n, m), &keep)
}

/// Inclusion `C_2(V') ^ C_{m-2} -> C_m`.
pub fn wedge_submodule_inclusion(n: usize, vprime: &[usize], m: usize) -> RingMatrix {
    let keep = wedge_submodule_indices(n, vprime, m);
    inclusion_matrix(n, crate::subsets::binomial(n, m), &keep)
}
