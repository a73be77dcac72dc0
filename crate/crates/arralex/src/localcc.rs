//! Local data attached to the rank-two flats of an arrangement: local
//! presentations, chain maps comparing an arrangement to the direct sum of
//! its local models, coarse combinatorial lower bounds, and transport of
//! comparison data along sub-arrangement inclusions.

use crate::alexinv::{pair_label, Presentation, RingTag};
use crate::braid::{mu_matrix, mu_matrix_inverse, mu_ring_images};
use crate::error::ArralexError;
use crate::intmat::IntMatrix;
use crate::koszul::{differential, pairs_in_vprime, pairs_within, wedge_submodule_indices};
use crate::matrix::RingMatrix;
use crate::ring::Q;
use crate::subsets::{binomial, ksubsets, sort_with_sign, subset_index};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The rank-two part of an arrangement's intersection lattice: for each
/// multiple point, the set of lines through it. Every pair of lines may
/// appear in at most one set; pairs not covered by any set are generic
/// double points and may be listed as two-element sets or omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice2 {
    pub n: usize,
    pub vertex_sets: Vec<Vec<usize>>,
}

impl Lattice2 {
    pub fn new(n: usize, vertex_sets: Vec<Vec<usize>>) -> Result<Self, ArralexError> {
        let c2 = binomial(n, 2);
        let mut seen = vec![false; c2];
        for v in &vertex_sets {
            if v.len() < 2 {
                return Err(ArralexError::NotArrangementLattice(
                    "vertex set with fewer than two lines".into(),
                ));
            }
            if v.windows(2).any(|w| w[0] >= w[1]) || v[0] < 1 || *v.last().unwrap() > n {
                return Err(ArralexError::NotArrangementLattice(format!(
                    "vertex set {:?} is not a sorted subset of 1..={}",
                    v, n
                )));
            }
            for p in pairs_within(n, v) {
                if seen[p] {
                    return Err(ArralexError::NotArrangementLattice(format!(
                        "pair {} lies in two vertex sets",
                        pair_label(&ksubsets(n, 2)[p])
                    )));
                }
                seen[p] = true;
            }
        }
        Ok(Lattice2 { n, vertex_sets })
    }

    /// True if every pair of lines is covered by some vertex set.
    pub fn is_complete(&self) -> bool {
        let covered: usize = self
            .vertex_sets
            .iter()
            .map(|v| v.len() * (v.len() - 1) / 2)
            .sum();
        covered == binomial(self.n, 2)
    }

    /// Add every uncovered pair as a generic double point, in lex order.
    pub fn completed(&self) -> Lattice2 {
        let c2 = binomial(self.n, 2);
        let mut seen = vec![false; c2];
        for v in &self.vertex_sets {
            for p in pairs_within(self.n, v) {
                seen[p] = true;
            }
        }
        let mut sets = self.vertex_sets.clone();
        for (p, pair) in ksubsets(self.n, 2).iter().enumerate() {
            if !seen[p] {
                sets.push(pair.clone());
            }
        }
        Lattice2 {
            n: self.n,
            vertex_sets: sets,
        }
    }

    /// Number of relations in the reduced presentation: Σ (|V| − 1).
    pub fn b2(&self) -> usize {
        self.vertex_sets.iter().map(|v| v.len() - 1).sum()
    }

    /// Second nilpotent quotient rank: C(n,2) − b₂ (requires completeness).
    pub fn theta2(&self) -> usize {
        binomial(self.n, 2) - self.b2()
    }

    /// Number of vertex sets of each size r ≥ 3 (index = r).
    pub fn multiplicity_counts(&self) -> Vec<usize> {
        let max = self.vertex_sets.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut c = vec![0usize; max + 1];
        for v in &self.vertex_sets {
            c[v.len()] += 1;
        }
        c
    }

    /// Sum of local contributions: Σ over vertices V of
    /// (k−1)·C(k + |V| − 3, k), with double points contributing zero.
    pub fn theta_cc(&self, k: usize) -> usize {
        assert!(k >= 2);
        self.vertex_sets
            .iter()
            .filter(|v| v.len() >= 3)
            .map(|v| (k - 1) * binomial(k + v.len() - 3, k))
            .sum()
    }

    /// Serialization: `n <count>` then one `{a,b,...}` line per vertex set.
    pub fn render(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for v in &self.vertex_sets {
            out.push_str(&format!(
                "{{{}}}\n",
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ArralexError> {
        let mut n = None;
        let mut sets = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: String| ArralexError::Parse(format!("line {}: {}", lineno + 1, m));
            if let Some(rest) = line.strip_prefix("n ") {
                n = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| err("bad line count".into()))?,
                );
            } else if line.starts_with('{') && line.ends_with('}') {
                let inner = &line[1..line.len() - 1];
                let mut v = Vec::new();
                for part in inner.split(',') {
                    v.push(
                        part.trim()
                            .parse::<usize>()
                            .map_err(|_| err(format!("bad index '{}'", part)))?,
                    );
                }
                sets.push(v);
            } else {
                return Err(err(format!("unrecognized line '{}'", line)));
            }
        }
        let n = n.ok_or_else(|| ArralexError::Parse("missing 'n <count>' line".into()))?;
        Lattice2::new(n, sets)
    }
}

/// Presentation of the local Alexander invariant at a vertex V:
/// the degree-three Koszul rows with entries pushed through the pencil
/// substitution, restricted to the span of V′ = V \ {min V}.
pub fn local_presentation(n: usize, v_set: &[usize]) -> Presentation {
    let vprime = &v_set[1..];
    let d3 = differential(n, 3).substitute(&mu_ring_images(n, v_set));
    let rows = wedge_submodule_indices(n, vprime, 3);
    let cols = pairs_in_vprime(n, v_set);
    let triples = ksubsets(n, 3);
    let all_pairs = ksubsets(n, 2);
    Presentation {
        matrix: d3.select_rows(&rows).select_columns(&cols),
        gen_labels: cols.iter().map(|&p| pair_label(&all_pairs[p])).collect(),
        rel_labels: rows.iter().map(|&r| pair_label(&triples[r])).collect(),
        ring: RingTag::Laurent(n),
    }
}

/// The comparison chain map Ψ_{V,k} : C_k → C₂(V′) ∧ C_{k−2}, as a
/// C(n,k) × dim matrix (the target realized as the span of the k-sets
/// meeting V′ in at least two indices).
pub fn local_chain_map(n: usize, v_set: &[usize], k: usize) -> RingMatrix {
    let vprime = &v_set[1..];
    let idx = wedge_submodule_indices(n, vprime, k);
    mu_matrix_inverse(n, v_set)
        .exterior_power(k)
        .select_columns(&idx)
}

fn int_at_one(m: &RingMatrix) -> IntMatrix {
    let rat = m.eval_at_one();
    let mut out = IntMatrix::zero(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let q: &Q = &rat[i][j];
            assert!(q.denom().is_one(), "entry not integral at t = 1");
            *out.at_mut(i, j) = q.numer().clone();
        }
    }
    out
}

/// Starting column offset of each vertex block in the stacked comparison map
/// (vertices of multiplicity two contribute zero columns).
pub fn block_offsets(lat: &Lattice2) -> Vec<usize> {
    let mut offs = Vec::with_capacity(lat.vertex_sets.len() + 1);
    let mut total = 0usize;
    for v in &lat.vertex_sets {
        offs.push(total);
        if v.len() >= 3 {
            total += wedge_submodule_indices(lat.n, &v[1..], 3).len();
        }
    }
    offs.push(total);
    offs
}

/// The stacked degree-three comparison map at t = 1: an integer matrix
/// C(n,3) × Σ_V dim(C₂(V′) ∧ C₁), one block per vertex of multiplicity ≥ 3.
pub fn psi3_bar(lat: &Lattice2) -> IntMatrix {
    let n = lat.n;
    let offs = block_offsets(lat);
    let total = *offs.last().unwrap();
    let mut out = IntMatrix::zero(binomial(n, 3), total);
    for (bi, v) in lat.vertex_sets.iter().enumerate() {
        if v.len() < 3 {
            continue;
        }
        let block = int_at_one(&local_chain_map(n, v, 3));
        for i in 0..block.rows {
            for j in 0..block.cols {
                *out.at_mut(i, offs[bi] + j) = block.at(i, j).clone();
            }
        }
    }
    out
}

/// θ₃ from the lattice: the free corank of the stacked comparison map plus
/// the sum of local contributions.
pub fn theta3(lat: &Lattice2) -> usize {
    psi3_bar(lat).coker_rank() + lat.theta_cc(3)
}

/// True when the stacked comparison map is surjective over the integers,
/// i.e. when the Chen ranks are determined by the local data alone.
pub fn decomposes(lat: &Lattice2) -> bool {
    let m = psi3_bar(lat);
    let (diag, _) = m.smith();
    diag.len() == m.cols && diag.iter().all(|d| d.magnitude().is_one())
}

/// Index and sign of the term e_{i,j} ∧ e_l in the stacked target space:
/// locates the vertex whose set contains the pair {i, j} and the position of
/// the sorted triple inside its block. Returns None for degenerate terms.
pub fn stacked_term(
    lat: &Lattice2,
    pair: (usize, usize),
    l: usize,
) -> Result<Option<(usize, i32)>, ArralexError> {
    let (i, j) = pair;
    if l == i || l == j {
        return Ok(None);
    }
    let offs = block_offsets(lat);
    for (bi, v) in lat.vertex_sets.iter().enumerate() {
        if v.len() >= 3 && v[1..].contains(&i) && v[1..].contains(&j) {
            let idx = wedge_submodule_indices(lat.n, &v[1..], 3);
            let (triple, sign) = sort_with_sign(&[i, j, l]).expect("distinct indices");
            let pos = subset_index(lat.n, &triple);
            let local = idx
                .iter()
                .position(|&t| t == pos)
                .ok_or_else(|| ArralexError::Invalid("term outside the block span".into()))?;
            return Ok(Some((offs[bi] + local, sign)));
        }
    }
    Err(ArralexError::Invalid(format!(
        "pair {{{},{}}} is not contained in the non-minimal part of any vertex set",
        i, j
    )))
}

/// Build a vector in the stacked target space from terms
/// (i, j, l, coefficient) standing for c · e_{i,j} ∧ e_l.
pub fn stacked_vector(
    lat: &Lattice2,
    terms: &[(usize, usize, usize, i64)],
) -> Result<Vec<BigInt>, ArralexError> {
    let offs = block_offsets(lat);
    let mut out = vec![BigInt::zero(); *offs.last().unwrap()];
    for &(i, j, l, c) in terms {
        if let Some((pos, sign)) = stacked_term(lat, (i, j), l)? {
            out[pos] += BigInt::from(c) * BigInt::from(sign);
        }
    }
    Ok(out)
}

fn rat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Q::zero(); cols]; rows];
    for i in 0..rows {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !bk[j].is_zero() {
                    let prod = &a[i][k] * &bk[j];
                    out[i][j] += prod;
                }
            }
        }
    }
    out
}

/// Transport of the degree-three comparison data along an inclusion of
/// arrangements: ω maps line l of the small arrangement to line ω[l−1] of
/// the large one. Returns the integer matrix of ξ̄ from the V block of the
/// small arrangement to the ω(V) block of the large one.
pub fn lattice_transport(
    n1: usize,
    n2: usize,
    omega: &[usize],
    v_set: &[usize],
) -> Result<IntMatrix, ArralexError> {
    if omega.len() != n1 {
        return Err(ArralexError::Invalid("line map has wrong length".into()));
    }
    let mut u: Vec<usize> = v_set.iter().map(|&l| omega[l - 1]).collect();
    u.sort_unstable();
    if u.windows(2).any(|w| w[0] == w[1]) || u[0] < 1 || *u.last().unwrap() > n2 {
        return Err(ArralexError::Invalid("line map is not injective".into()));
    }

    // source side: include the V block into C₃(n1), apply Θ₃(μ_V) at t = 1
    let src_idx = wedge_submodule_indices(n1, &v_set[1..], 3);
    let theta_v = mu_matrix(n1, v_set).exterior_power(3).eval_at_one();
    let included: Vec<Vec<Q>> = src_idx.iter().map(|&r| theta_v[r].clone()).collect();

    // middle: the relabeling map C₃(n1) → C₃(n2) with signs
    let triples1 = ksubsets(n1, 3);
    let c3b = binomial(n2, 3);
    let mut relabel = vec![vec![Q::zero(); c3b]; triples1.len()];
    for (r, t) in triples1.iter().enumerate() {
        let image: Vec<usize> = t.iter().map(|&l| omega[l - 1]).collect();
        if let Some((sorted, sign)) = sort_with_sign(&image) {
            relabel[r][subset_index(n2, &sorted)] = Q::from_integer(BigInt::from(sign));
        }
    }

    // target side: Θ₃(μ_U)⁻¹ at t = 1, projected onto the U block
    let dst_idx = wedge_submodule_indices(n2, &u[1..], 3);
    let theta_u_inv = mu_matrix_inverse(n2, &u).exterior_power(3).eval_at_one();
    let projected: Vec<Vec<Q>> = theta_u_inv
        .iter()
        .map(|row| dst_idx.iter().map(|&c| row[c].clone()).collect())
        .collect();

    let result = rat_mul(&rat_mul(&included, &relabel), &projected);
    let mut out = IntMatrix::zero(result.len(), dst_idx.len());
    for (i, row) in result.iter().enumerate() {
        for (j, q) in row.iter().enumerate() {
            if !q.denom().is_one() {
                return Err(ArralexError::Invalid(
                    "transport matrix is not integral".into(),
                ));
            }
            *out.at_mut(i, j) = q.numer().clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::differential;

    fn braid4() -> Lattice2 {
        // rank-two flats of the rank-three braid arrangement on six lines
        Lattice2::new(
            6,
            vec![
                vec![1, 2, 4],
                vec![1, 3, 5],
                vec![2, 3, 6],
                vec![3, 4],
                vec![2, 5],
                vec![4, 5, 6],
                vec![1, 6],
            ],
        )
        .unwrap()
    }

    #[test]
    fn lattice_validation() {
        assert!(Lattice2::new(4, vec![vec![1, 2, 3], vec![2, 3]]).is_err());
        assert!(Lattice2::new(4, vec![vec![2, 1]]).is_err());
        assert!(Lattice2::new(4, vec![vec![3, 5]]).is_err());
        let lat = braid4();
        assert!(lat.is_complete());
        assert_eq!(lat.b2(), 11);
        assert_eq!(lat.theta2(), 4);
    }

    #[test]
    fn lattice_roundtrip_and_completion() {
        let lat = braid4();
        let again = Lattice2::parse(&lat.render()).unwrap();
        assert_eq!(lat, again);
        let partial = Lattice2::new(4, vec![vec![1, 2, 3]]).unwrap();
        assert!(!partial.is_complete());
        let full = partial.completed();
        assert!(full.is_complete());
        assert_eq!(full.vertex_sets.len(), 4);
    }

    #[test]
    fn theta_cc_values() {
        let lat = braid4();
        // four triple points, each contributing k−1
        for k in 2..=6 {
            assert_eq!(lat.theta_cc(k), 4 * (k - 1));
        }
    }

    #[test]
    fn local_chain_map_is_chain_map() {
        // Δ_V ∘ Ψ_{V,3} = Ψ_{V,2} ∘ d₃ (as right-multiplication matrices:
        // Ψ₃·Δ = D₃·Ψ₂)
        for v in [vec![1usize, 2, 4], vec![2, 3, 5], vec![1, 3, 4, 5]] {
            let n = 5;
            let psi3 = local_chain_map(n, &v, 3);
            let psi2 = mu_matrix_inverse(n, &v)
                .exterior_power(2)
                .select_columns(&pairs_in_vprime(n, &v));
            let delta = local_presentation(n, &v).matrix;
            assert_eq!(
                psi3.mul(&delta),
                differential(n, 3).mul(&psi2),
                "failed for {:?}",
                v
            );
        }
    }

    #[test]
    fn braid_arrangement_theta3() {
        let lat = braid4();
        let m = psi3_bar(&lat);
        assert_eq!(m.rows, binomial(6, 3));
        assert_eq!(m.cols, 16);
        assert_eq!(theta3(&lat), lat.theta_cc(3) + 2);
        assert!(!decomposes(&lat));
    }

    #[test]
    fn transport_identity_map() {
        // transporting along the identity inclusion is the identity on blocks
        let v = vec![1usize, 2, 4];
        let omega: Vec<usize> = (1..=6).collect();
        let m = lattice_transport(6, 6, &omega, &v).unwrap();
        assert_eq!(m, IntMatrix::identity(4));
    }
}
