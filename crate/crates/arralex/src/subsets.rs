//! Increasing subsets of {1, ..., n} in lexicographic order.
//!
//! These index the standard basis of the degree-k part of the exterior
//! algebra: the basis vector `e_J` for `J = {j_1 < ... < j_k}` sits at
//! position [`subset_index`]`(n, J)` in the list [`ksubsets`]`(n, k)`.
//! Every matrix in the crate that is indexed by wedge-basis elements uses
//! this single ordering.

/// All k-element subsets of {1, ..., n}, each increasing, in lex order.
pub fn ksubsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next subset in lex order.
        let mut i = k;
        while i > 0 && cur[i - 1] == n - (k - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Position of the increasing subset `j` in `ksubsets(n, j.len())`.
pub fn subset_index(n: usize, j: &[usize]) -> usize {
    let k = j.len();
    let mut idx = 0usize;
    let mut prev = 0usize;
    for (pos, &ji) in j.iter().enumerate() {
        for v in (prev + 1)..ji {
            idx += binomial(n - v, k - pos - 1);
        }
        prev = ji;
    }
    idx
}

/// Binomial coefficient as usize (small arguments only).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    num as usize
}

/// Sort a sequence of distinct indices, returning (sorted, sign of permutation).
/// Returns `None` if two indices coincide (the wedge is zero).
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v: Vec<usize> = idx.to_vec();
    let mut sign = 1i32;
    // Insertion sort, counting inversions.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, sign))
}
