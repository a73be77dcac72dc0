//! Presentations of Alexander modules and invariants.
//!
//! All presentations are cokernel presentations: a module is the quotient of
//! the free module on the column generators by the row span of the matrix.
//! Maps act on row vectors by right multiplication throughout.

use crate::braid::{gassner_conjugated_fast, gassner_word, BraidWord, ConjugatedTwist};
use crate::braid::{mu_matrix_inverse, BasisConjugating};
use crate::error::ArralexError;
use crate::koszul::{differential, nabla_v, wedge_with_basis};
use crate::matrix::RingMatrix;
use crate::ring::LaurentPoly;
use crate::subsets::{binomial, ksubsets};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingTag {
    /// Laurent polynomials in n variables.
    Laurent(usize),
    /// Ordinary polynomials in n variables (after the 1 - x substitution).
    Polynomial(usize),
    /// Polynomials in n variables truncated above total degree d.
    Truncated(usize, i32),
}

impl RingTag {
    pub fn nvars(&self) -> usize {
        match self {
            RingTag::Laurent(n) | RingTag::Polynomial(n) | RingTag::Truncated(n, _) => *n,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub matrix: RingMatrix,
    pub gen_labels: Vec<String>,
    pub rel_labels: Vec<String>,
    pub ring: RingTag,
}

impl Presentation {
    pub fn generators(&self) -> usize {
        self.matrix.cols
    }

    pub fn relations(&self) -> usize {
        self.matrix.rows
    }
}

pub fn pair_label(p: &[usize]) -> String {
    format!(
        "e{{{}}}",
        p.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn pair_labels(n: usize, k: usize) -> Vec<String> {
    ksubsets(n, k).iter().map(|p| pair_label(p)).collect()
}

/// The restricted map Φ_V : C₁(V′) → C₂, with rows indexed by V′ = V \ {min V}.
/// Row for e_i is ∇_V ∧ e_i; the image lands in C₂(V).
pub fn phi_v(n: usize, v_set: &[usize]) -> RingMatrix {
    assert!(v_set.len() >= 2);
    let nabla = nabla_v(n, v_set);
    let rows: Vec<Vec<LaurentPoly>> = v_set[1..]
        .iter()
        .map(|&i| wedge_with_basis(n, &nabla, i))
        .collect();
    RingMatrix::from_rows(n, binomial(n, 2), rows)
}

/// Φ(γ_z) : C₁ → C₂ for a basis-conjugating tuple: e_i ↦ ∇(z_i) ∧ e_i.
pub fn phi_conj(z: &BasisConjugating) -> RingMatrix {
    let n = z.nvars();
    let rows: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            let grad = crate::word::abelianized_gradient(&z.words[i]);
            wedge_with_basis(n, &grad, i + 1)
        })
        .collect();
    RingMatrix::from_rows(n, binomial(n, 2), rows)
}

/// The Alexander matrix of a list of conjugated twists: the blocks
/// id − Θ(α_k) stacked vertically (sn×n over the Laurent ring).
pub fn alexander_matrix(n: usize, monodromy: &[ConjugatedTwist]) -> Presentation {
    let id = RingMatrix::identity(n, n);
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    let mut rel_labels = Vec::new();
    for (k, tw) in monodromy.iter().enumerate() {
        let theta = gassner_conjugated_fast(n, tw);
        let block = id.sub(&theta);
        for i in 0..n {
            rows.push(block.row(i).to_vec());
            rel_labels.push(format!("a{}:e{}", k + 1, i + 1));
        }
    }
    Presentation {
        matrix: RingMatrix::from_rows(n, n, rows),
        gen_labels: (1..=n).map(|i| format!("e{}", i)).collect(),
        rel_labels,
        ring: RingTag::Laurent(n),
    }
}

/// Θ₂(δ) for a single braid word, via the exterior square of its Gassner matrix.
pub fn theta2_word(n: usize, delta: &BraidWord) -> RingMatrix {
    gassner_word(n, delta).exterior_power(2)
}

/// Presentation of the Alexander invariant from braid monodromy generators:
/// rows Θ₂(δ_k)∘Φ_k for each twist, then the Koszul rows d₃.
pub fn presentation_general(n: usize, monodromy: &[ConjugatedTwist]) -> Presentation {
    let c2 = binomial(n, 2);
    let mut matrix = RingMatrix::zero(n, 0, c2);
    let mut rel_labels = Vec::new();
    for tw in monodromy {
        let block = phi_v(n, &tw.v_set).mul(&theta2_word(n, &tw.conjugator));
        for &i in &tw.v_set[1..] {
            rel_labels.push(format!("{}:e{}", pair_label(&tw.v_set), i));
        }
        matrix = matrix.vstack(&block);
    }
    let d3 = differential(n, 3);
    rel_labels.extend(pair_labels(n, 3));
    matrix = matrix.vstack(&d3);
    Presentation {
        matrix,
        gen_labels: pair_labels(n, 2),
        rel_labels,
        ring: RingTag::Laurent(n),
    }
}

/// One vertex of a wiring diagram: the lines through it and the conjugating
/// index set J (wires passing above the vertex, within the index interval).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringVertex {
    pub v_set: Vec<usize>,
    pub j_set: Vec<usize>,
}

/// Θ(δ_k) as an n×n matrix: e_i ↦ (1−t_i)·∇_{J^i} + t_{J^i}·e_i,
/// where J^i = {j ∈ J : j < i}. Rows for i outside V are identity rows.
fn theta_delta(n: usize, j_set: &[usize]) -> RingMatrix {
    let mut m = RingMatrix::identity(n, n);
    for i in 1..=n {
        let ji: Vec<usize> = j_set.iter().copied().filter(|&j| j < i).collect();
        if ji.is_empty() {
            continue;
        }
        let grad = nabla_v(n, &ji);
        let one_minus_ti = LaurentPoly::one(n).sub(&LaurentPoly::var(n, i - 1));
        let tji = crate::koszul::set_monomial(n, &ji);
        for (col, g) in grad.iter().enumerate() {
            let mut entry = g.mul(&one_minus_ti);
            if col == i - 1 {
                entry = entry.add(&tji);
            }
            *m.at_mut(i - 1, col) = entry;
        }
    }
    m
}

/// The pairwise block map 𝚯₂(δ): rows for pairs inside some V_k are taken
/// from Θ₂(δ_k); all other rows are identity rows.
pub fn big_theta2_delta(n: usize, wiring: &[WiringVertex]) -> RingMatrix {
    let c2 = binomial(n, 2);
    let mut m = RingMatrix::identity(n, c2);
    for w in wiring {
        if w.j_set.is_empty() {
            continue;
        }
        let block = theta_delta(n, &w.j_set).exterior_power(2);
        for p in crate::koszul::pairs_within(n, &w.v_set) {
            for c in 0..c2 {
                *m.at_mut(p, c) = block.at(p, c).clone();
            }
        }
    }
    m
}

/// The pairwise block map 𝚯₂(μ): rows for pairs inside V_k from Θ₂(μ_{V_k}).
/// When `inverse` is set, the closed-form inverse rows are used instead;
/// the assembled matrix is block diagonal over the pair partition, so the
/// blockwise inverse is the exact inverse.
pub fn big_theta2_mu(n: usize, vsets: &[Vec<usize>], inverse: bool) -> RingMatrix {
    let c2 = binomial(n, 2);
    let mut m = RingMatrix::identity(n, c2);
    for v in vsets {
        if v.len() < 3 {
            // |V| = 2 blocks are identity in degree two only when min V is
            // one of the pair indices; Θ₂(μ_V) on the single pair ⊂ V is a
            // 1×1 determinant, which is 1 (row min V has unit leading entry
            // and row j is untouched). Verified: ∇_V ∧ e_j = e_{i₁}∧e_j + t_{i₁}e_j∧e_j.
        }
        let base = if inverse {
            mu_matrix_inverse(n, v)
        } else {
            crate::braid::mu_matrix(n, v)
        };
        let block = base.exterior_power(2);
        for p in crate::koszul::pairs_within(n, v) {
            for c in 0..c2 {
                *m.at_mut(p, c) = block.at(p, c).clone();
            }
        }
    }
    m
}

/// Column indices of L₀: all pairs except those of the form {min V_k, i}
/// with i ∈ V_k′ (the summand ⊕_k C₂′(V_k)).
pub fn l0_indices(n: usize, vsets: &[Vec<usize>]) -> Vec<usize> {
    let c2 = binomial(n, 2);
    let mut drop = vec![false; c2];
    for v in vsets {
        for p in crate::koszul::pairs_through_min(n, v) {
            drop[p] = true;
        }
    }
    (0..c2).filter(|&p| !drop[p]).collect()
}

fn check_pair_cover(n: usize, vsets: &[Vec<usize>]) -> Result<(), ArralexError> {
    let c2 = binomial(n, 2);
    let mut seen = vec![false; c2];
    for v in vsets {
        for p in crate::koszul::pairs_within(n, v) {
            if seen[p] {
                return Err(ArralexError::NotArrangementLattice(format!(
                    "pair {} covered by two vertex sets",
                    pair_label(&ksubsets(n, 2)[p])
                )));
            }
            seen[p] = true;
        }
    }
    Ok(())
}

/// Presentation of the Alexander invariant of a complexified real arrangement
/// from its wiring diagram: Δ′ = π₀ ∘ 𝚯₂(μ)⁻¹ ∘ 𝚯₂(δ)⁻¹ ∘ d₃,
/// with C(n,2) − b₂ generators and C(n,3) relations over the Laurent ring.
pub fn presentation_real(n: usize, wiring: &[WiringVertex]) -> Result<Presentation, ArralexError> {
    let vsets: Vec<Vec<usize>> = wiring.iter().map(|w| w.v_set.clone()).collect();
    check_pair_cover(n, &vsets)?;
    let delta_inv = big_theta2_delta(n, wiring).invert_unit_pivot()?;
    let mu_inv = big_theta2_mu(n, &vsets, true);
    let keep = l0_indices(n, &vsets);
    let matrix = differential(n, 3)
        .mul(&delta_inv)
        .mul(&mu_inv)
        .select_columns(&keep);
    let all_pairs = ksubsets(n, 2);
    Ok(Presentation {
        matrix,
        gen_labels: keep.iter().map(|&p| pair_label(&all_pairs[p])).collect(),
        rel_labels: pair_labels(n, 3),
        ring: RingTag::Laurent(n),
    })
}

/// Presentation of the Alexander invariant of a product, in block form:
/// (Δ₁; D₂-rows) ⊕ (Δ₂; D₁-rows) over the joined variable set.
pub fn presentation_product(p1: &Presentation, p2: &Presentation) -> Presentation {
    let n1 = p1.ring.nvars();
    let n2 = p2.ring.nvars();
    let n = n1 + n2;
    let (b1, b2) = (p1.generators(), p2.generators());
    let widen1 = |f: &LaurentPoly| widen(f, n, 0);
    let widen2 = |f: &LaurentPoly| widen(f, n, n1);
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    let mut rel_labels = Vec::new();
    let zero = LaurentPoly::zero(n);
    // block (Δ₁; D₂^{b₁}) on the first b₁ generators
    for i in 0..p1.relations() {
        let mut row = vec![zero.clone(); b1 + b2];
        for j in 0..b1 {
            row[j] = widen1(p1.matrix.at(i, j));
        }
        rel_labels.push(format!("L:{}", p1.rel_labels[i]));
        rows.push(row);
    }
    for j in 0..b1 {
        for v in 0..n2 {
            let mut row = vec![zero.clone(); b1 + b2];
            row[j] = LaurentPoly::var(n, n1 + v).sub(&LaurentPoly::one(n));
            rel_labels.push(format!("L:{}*(t{}-1)", p1.gen_labels[j], n1 + v + 1));
            rows.push(row);
        }
    }
    // block (Δ₂; D₁^{b₂}) on the last b₂ generators
    for i in 0..p2.relations() {
        let mut row = vec![zero.clone(); b1 + b2];
        for j in 0..b2 {
            row[b1 + j] = widen2(p2.matrix.at(i, j));
        }
        rel_labels.push(format!("R:{}", p2.rel_labels[i]));
        rows.push(row);
    }
    for j in 0..b2 {
        for v in 0..n1 {
            let mut row = vec![zero.clone(); b1 + b2];
            row[b1 + j] = LaurentPoly::var(n, v).sub(&LaurentPoly::one(n));
            rel_labels.push(format!("R:{}*(t{}-1)", p2.gen_labels[j], v + 1));
            rows.push(row);
        }
    }
    let gen_labels = p1
        .gen_labels
        .iter()
        .map(|l| format!("L:{}", l))
        .chain(p2.gen_labels.iter().map(|l| format!("R:{}", l)))
        .collect();
    Presentation {
        matrix: RingMatrix::from_rows(n, b1 + b2, rows),
        gen_labels,
        rel_labels,
        ring: RingTag::Laurent(n),
    }
}

/// Embed a polynomial in n_old variables into n variables, shifting
/// variable indices by `offset`.
fn widen(f: &LaurentPoly, n: usize, offset: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n);
    for (exp, c) in f.iter_terms() {
        let mut e = vec![0i32; n];
        e[offset..offset + exp.len()].copy_from_slice(exp);
        out = out.add(&LaurentPoly::term(n, e, c.clone()));
    }
    out
}

/// Presentation of the Alexander invariant of the cone: the original matrix
/// over the ring with one extra variable x, plus the rows (x−1)·id.
pub fn presentation_cone(p: &Presentation) -> Presentation {
    let n_old = p.ring.nvars();
    let n = n_old + 1;
    let b = p.generators();
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    for i in 0..p.relations() {
        rows.push((0..b).map(|j| widen(p.matrix.at(i, j), n, 0)).collect());
    }
    let xm1 = LaurentPoly::var(n, n_old).sub(&LaurentPoly::one(n));
    for j in 0..b {
        let mut row = vec![LaurentPoly::zero(n); b];
        row[j] = xm1.clone();
        rows.push(row);
    }
    let mut rel_labels = p.rel_labels.clone();
    rel_labels.extend(p.gen_labels.iter().map(|l| format!("{}*(x-1)", l)));
    Presentation {
        matrix: RingMatrix::from_rows(n, b, rows),
        gen_labels: p.gen_labels.clone(),
        rel_labels,
        ring: RingTag::Laurent(n),
    }
}

/// Presentation of the Alexander invariant of a pure link given by the
/// basis-conjugating tuples of its monodromy: rows Φ(γ_z) per tuple plus d₃.
pub fn presentation_pure_link(tuples: &[BasisConjugating]) -> Presentation {
    assert!(!tuples.is_empty());
    let n = tuples[0].nvars();
    let c2 = binomial(n, 2);
    let mut matrix = RingMatrix::zero(n, 0, c2);
    let mut rel_labels = Vec::new();
    for (k, z) in tuples.iter().enumerate() {
        matrix = matrix.vstack(&phi_conj(z));
        rel_labels.extend((1..=n).map(|i| format!("z{}:e{}", k + 1, i)));
    }
    matrix = matrix.vstack(&differential(n, 3));
    rel_labels.extend(pair_labels(n, 3));
    Presentation {
        matrix,
        gen_labels: pair_labels(n, 2),
        rel_labels,
        ring: RingTag::Laurent(n),
    }
}

/// The stacked Φ map of a monodromy (rows Θ₂(δ_k)∘Φ_k, b₂ × C(n,2)).
fn phi_stack(n: usize, monodromy: &[ConjugatedTwist]) -> RingMatrix {
    let c2 = binomial(n, 2);
    let mut m = RingMatrix::zero(n, 0, c2);
    for tw in monodromy {
        m = m.vstack(&phi_v(n, &tw.v_set).mul(&theta2_word(n, &tw.conjugator)));
    }
    m
}

/// Column indices of K₀′ = ⊕_k C₂′(V_k), in the order of the monodromy rows.
fn k0prime_indices(n: usize, vsets: &[Vec<usize>]) -> Vec<usize> {
    let mut idx = Vec::new();
    for v in vsets {
        idx.extend(crate::koszul::pairs_through_min(n, v));
    }
    idx
}

/// Reduced presentation of the I-adic completion over the truncated power
/// series ring: Δ̂♯ = p″∘(id − Φ̂∘Φ̂′⁻¹∘p′)∘d̂₃, with C(n,2)−b₂ generators
/// and C(n,3) relations, correct modulo terms of degree > D.
pub fn presentation_completed_reduced(
    n: usize,
    monodromy: &[ConjugatedTwist],
    d: i32,
) -> Result<Presentation, ArralexError> {
    assert!(d >= 1);
    let vsets: Vec<Vec<usize>> = monodromy.iter().map(|t| t.v_set.clone()).collect();
    check_pair_cover(n, &vsets)?;
    let c2 = binomial(n, 2);
    let kprime = k0prime_indices(n, &vsets);
    let b2 = kprime.len();
    let phi = phi_stack(n, monodromy).magnus_substitute_trunc(d);
    let phi_prime = phi.select_columns(&kprime);
    let one = LaurentPoly::one(n);
    for i in 0..b2 {
        let mut c0 = phi_prime.at(i, i).clone();
        c0 = c0.truncate(0);
        if c0 != one {
            return Err(ArralexError::Invalid(
                "reduced completion: Φ' constant term is not the identity".into(),
            ));
        }
    }
    let phi_prime_inv = phi_prime.truncated_inverse(d)?;
    // p′ as a matrix: C(n,2) → b₂ coordinate selection
    let pprime = crate::matrix::projection_matrix(n, c2, &kprime);
    let keep = l0_indices(n, &vsets);
    let d3 = differential(n, 3).magnus_substitute_trunc(d);
    let correction = pprime
        .mul_trunc(&phi_prime_inv, Some(d))
        .mul_trunc(&phi, Some(d));
    let inner = RingMatrix::identity(n, c2).sub(&correction);
    let matrix = d3.mul_trunc(&inner, Some(d)).select_columns(&keep);
    let all_pairs = ksubsets(n, 2);
    Ok(Presentation {
        matrix,
        gen_labels: keep.iter().map(|&p| pair_label(&all_pairs[p])).collect(),
        rel_labels: pair_labels(n, 3),
        ring: RingTag::Truncated(n, d),
    })
}

/// Presentation of the free-group Alexander invariant B(F_n): d₃ alone.
pub fn presentation_free(n: usize) -> Presentation {
    Presentation {
        matrix: differential(n, 3),
        gen_labels: pair_labels(n, 2),
        rel_labels: pair_labels(n, 3),
        ring: RingTag::Laurent(n),
    }
}

impl Presentation {
    /// Plain-text serialization; round-trips exactly through `parse`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let (tag, n) = match &self.ring {
            RingTag::Laurent(n) => ("laurent".to_string(), *n),
            RingTag::Polynomial(n) => ("poly".to_string(), *n),
            RingTag::Truncated(n, d) => (format!("trunc:{}", d), *n),
        };
        out.push_str(&format!("ring {} {}\n", tag, n));
        out.push_str(&format!(
            "size {} {}\n",
            self.matrix.rows, self.matrix.cols
        ));
        out.push_str(&format!("gens {}\n", self.gen_labels.join(" ")));
        out.push_str(&format!("rels {}\n", self.rel_labels.join(" ")));
        let prefix = match self.ring {
            RingTag::Laurent(_) => "t",
            _ => "x",
        };
        for i in 0..self.matrix.rows {
            for j in 0..self.matrix.cols {
                let f = self.matrix.at(i, j);
                if !f.is_zero() {
                    out.push_str(&format!("entry {} {} {}\n", i, j, f.render(prefix)));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Presentation, ArralexError> {
        let mut ring = None;
        let mut size = None;
        let mut gens: Vec<String> = Vec::new();
        let mut rels: Vec<String> = Vec::new();
        let mut entries: Vec<(usize, usize, String)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.splitn(2, ' ');
            let key = it.next().unwrap();
            let rest = it.next().unwrap_or("");
            let err = |m: &str| ArralexError::Parse(format!("line {}: {}", lineno + 1, m));
            match key {
                "ring" => {
                    let mut parts = rest.split_whitespace();
                    let tag = parts.next().ok_or_else(|| err("missing ring tag"))?;
                    let n: usize = parts
                        .next()
                        .ok_or_else(|| err("missing variable count"))?
                        .parse()
                        .map_err(|_| err("bad variable count"))?;
                    ring = Some(if tag == "laurent" {
                        RingTag::Laurent(n)
                    } else if tag == "poly" {
                        RingTag::Polynomial(n)
                    } else if let Some(d) = tag.strip_prefix("trunc:") {
                        RingTag::Truncated(n, d.parse().map_err(|_| err("bad truncation"))?)
                    } else {
                        return Err(err("unknown ring tag"));
                    });
                }
                "size" => {
                    let mut parts = rest.split_whitespace();
                    let r: usize = parts
                        .next()
                        .ok_or_else(|| err("missing rows"))?
                        .parse()
                        .map_err(|_| err("bad rows"))?;
                    let c: usize = parts
                        .next()
                        .ok_or_else(|| err("missing cols"))?
                        .parse()
                        .map_err(|_| err("bad cols"))?;
                    size = Some((r, c));
                }
                "gens" => gens = rest.split_whitespace().map(String::from).collect(),
                "rels" => rels = rest.split_whitespace().map(String::from).collect(),
                "entry" => {
                    let mut parts = rest.splitn(3, ' ');
                    let i: usize = parts
                        .next()
                        .ok_or_else(|| err("missing row"))?
                        .parse()
                        .map_err(|_| err("bad row index"))?;
                    let j: usize = parts
                        .next()
                        .ok_or_else(|| err("missing col"))?
                        .parse()
                        .map_err(|_| err("bad col index"))?;
                    let poly = parts.next().ok_or_else(|| err("missing entry"))?;
                    entries.push((i, j, poly.to_string()));
                }
                _ => return Err(err("unknown directive")),
            }
        }
        let ring = ring.ok_or_else(|| ArralexError::Parse("missing ring line".into()))?;
        let (rows, cols) = size.ok_or_else(|| ArralexError::Parse("missing size line".into()))?;
        let n = ring.nvars();
        let prefix = match ring {
            RingTag::Laurent(_) => "t",
            _ => "x",
        };
        let mut matrix = RingMatrix::zero(n, rows, cols);
        for (i, j, s) in entries {
            if i >= rows || j >= cols {
                return Err(ArralexError::Parse(format!(
                    "entry ({}, {}) out of range",
                    i, j
                )));
            }
            *matrix.at_mut(i, j) = LaurentPoly::parse(&s, prefix, n)?;
        }
        if gens.is_empty() {
            gens = (0..cols).map(|j| format!("g{}", j + 1)).collect();
        }
        if rels.is_empty() {
            rels = (0..rows).map(|i| format!("r{}", i + 1)).collect();
        }
        if gens.len() != cols || rels.len() != rows {
            return Err(ArralexError::Parse("label counts do not match size".into()));
        }
        Ok(Presentation {
            matrix,
            gen_labels: gens,
            rel_labels: rels,
            ring,
        })
    }
}

/// Helper: presentation of the Alexander invariant from a wiring diagram's
/// vertex and J data via the general pipeline (twists with the conjugators
/// δ_k = ∏_{j<i} A_{j,i} over i ∈ V_k, j ∈ J_k).
pub fn wiring_to_monodromy(wiring: &[WiringVertex]) -> Vec<ConjugatedTwist> {
    wiring
        .iter()
        .map(|w| {
            let mut delta = BraidWord::identity();
            for &i in &w.v_set {
                for &j in &w.j_set {
                    if j < i {
                        delta = delta.mul(&BraidWord::generator(j, i));
                    }
                }
            }
            ConjugatedTwist {
                v_set: w.v_set.clone(),
                conjugator: delta,
            }
        })
        .collect()
}
