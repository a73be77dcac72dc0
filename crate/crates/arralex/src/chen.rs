//! Graded ranks of the associated-graded module of a presentation, computed
//! by two independent methods: a truncated standard-basis completion and a
//! degreewise linear elimination.
//!
//! Both work over the polynomial ring after the substitution t_i -> 1 - x_i,
//! with the local term order in which lower total degree leads. All
//! arithmetic is truncated above a degree bound; truncation never affects
//! the leading terms in the degrees that are counted.

use crate::alexinv::{Presentation, RingTag};
use crate::error::ArralexError;
use crate::ring::{LaurentPoly, Q};
use crate::subsets::binomial;
use num_traits::{One, Zero};
use std::collections::BinaryHeap;

/// Bits per variable in the packed exponent word.
const FIELD_BITS: u32 = 5;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;
const MAX_VARS: usize = (u64::BITS / FIELD_BITS) as usize;

/// A term position in the free module: total degree, component index, and
/// exponents packed into a word (variable 1 in the highest field, so that
/// word comparison is lexicographic). The derived order has the *leading*
/// term smallest: lower degree first, then component, then lex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct Term {
    deg: u32,
    comp: u32,
    exp: u64,
}

fn field_shift(nvars: usize, var: usize) -> u32 {
    debug_assert!(var < nvars && nvars <= MAX_VARS);
    (u64::BITS - FIELD_BITS) - FIELD_BITS * var as u32
}

fn pack_exponents(nvars: usize, exp: &[i32]) -> u64 {
    let mut word = 0u64;
    for (var, &e) in exp.iter().enumerate() {
        debug_assert!((0..=FIELD_MASK as i32).contains(&e));
        word |= (e as u64) << field_shift(nvars, var);
    }
    word
}

fn divides(nvars: usize, a: &Term, b: &Term) -> bool {
    if a.comp != b.comp || a.deg > b.deg {
        return false;
    }
    for var in 0..nvars {
        let s = field_shift(nvars, var);
        if (a.exp >> s) & FIELD_MASK > (b.exp >> s) & FIELD_MASK {
            return false;
        }
    }
    true
}

/// A sparse vector of polynomials over ℚ, kept monic (leading coefficient
/// one) once placed in a basis: terms sorted with the leading term first.
#[derive(Clone, Debug, Default)]
struct VecPoly {
    terms: Vec<(Term, Q)>,
}

impl VecPoly {
    fn from_row(nvars: usize, row: &[LaurentPoly], trunc: i32) -> Self {
        let mut terms: Vec<(Term, Q)> = Vec::new();
        for (comp, p) in row.iter().enumerate() {
            for (exp, c) in p.iter_terms() {
                let deg: i32 = exp.iter().sum();
                if deg <= trunc && !c.is_zero() {
                    terms.push((
                        Term {
                            deg: deg as u32,
                            comp: comp as u32,
                            exp: pack_exponents(nvars, exp),
                        },
                        c.clone(),
                    ));
                }
            }
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        VecPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Term, Q) {
        &self.terms[0]
    }

    /// Make the leading coefficient one.
    fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().map(|(_, c)| Q::one() / c) {
            if !inv.is_one() {
                for (_, c) in self.terms.iter_mut() {
                    *c *= &inv;
                }
            }
        }
        self
    }

    /// self − c·x^shift·other, truncated above `trunc`; sorted merge.
    fn axpy_shift(&self, c: &Q, shift: &Term, other: &VecPoly, trunc: u32) -> VecPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term| Term {
            deg: t.deg + shift.deg,
            comp: t.comp,
            exp: t.exp + shift.exp,
        };
        let next_j = |j: &mut usize| {
            while *j < other.terms.len() && other.terms[*j].0.deg + shift.deg > trunc {
                *j += 1;
            }
        };
        next_j(&mut j);
        while i < self.terms.len() || j < other.terms.len() {
            let take_self = if i >= self.terms.len() {
                false
            } else if j >= other.terms.len() {
                true
            } else {
                self.terms[i].0 <= shifted(&other.terms[j].0)
            };
            if take_self {
                let t = self.terms[i].0;
                let mut coeff = self.terms[i].1.clone();
                i += 1;
                if j < other.terms.len() && shifted(&other.terms[j].0) == t {
                    coeff -= c * &other.terms[j].1;
                    j += 1;
                    next_j(&mut j);
                }
                if !coeff.is_zero() {
                    out.push((t, coeff));
                }
            } else {
                let t = shifted(&other.terms[j].0);
                let coeff = -(c * &other.terms[j].1);
                j += 1;
                next_j(&mut j);
                if !coeff.is_zero() {
                    out.push((t, coeff));
                }
            }
        }
        VecPoly { terms: out }
    }
}

/// Reduce `v` by the basis until its lead is not divisible by any basis
/// lead. Terminates because each step strictly raises the lead within the
/// finite truncated term set. The vector is held in an ordered map so each
/// step costs only the divisor's tail, not a merge of the whole vector.
fn reduce(nvars: usize, v: VecPoly, basis: &[VecPoly], trunc: u32) -> VecPoly {
    let mut map: std::collections::BTreeMap<Term, Q> = v.terms.into_iter().collect();
    while let Some((&lead, _)) = map.first_key_value() {
        let Some(g) = basis.iter().find(|g| divides(nvars, &g.lead().0, &lead)) else {
            break;
        };
        let coeff = map.remove(&lead).unwrap();
        let gl = g.lead().0;
        let shift_deg = lead.deg - gl.deg;
        let shift_exp = lead.exp - gl.exp;
        // basis elements are monic, so the head cancels with coefficient one
        for (t, c) in g.terms.iter().skip(1) {
            let deg = t.deg + shift_deg;
            if deg > trunc {
                break; // terms are sorted by ascending degree
            }
            let nt = Term {
                deg,
                comp: t.comp,
                exp: t.exp + shift_exp,
            };
            let entry = map.entry(nt).or_insert_with(Q::zero);
            *entry -= &coeff * c;
            if entry.is_zero() {
                map.remove(&nt);
            }
        }
    }
    VecPoly {
        terms: map.into_iter().collect(),
    }
}

/// Leading terms of a standard basis of the row module, truncated above
/// `trunc`: correct in all degrees ≤ trunc.
fn standard_basis_leads(nvars: usize, rows: Vec<VecPoly>, trunc: u32) -> Vec<Term> {
    let mut basis: Vec<VecPoly> = Vec::new();
    // pairs ordered by ascending lcm degree (normal selection strategy);
    // `pending` mirrors the heap so the chain criterion can tell which
    // pairs are still waiting to be processed
    let mut pairs: BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut pending: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let push_elem = |basis: &mut Vec<VecPoly>,
                         pairs: &mut BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>>,
                         pending: &mut std::collections::HashSet<(usize, usize)>,
                         g: VecPoly| {
        let j = basis.len();
        let lj = g.lead().0;
        for (i, h) in basis.iter().enumerate() {
            let li = h.lead().0;
            if li.comp != lj.comp {
                continue;
            }
            let lcm_deg = lcm_degree(nvars, &li, &lj);
            if lcm_deg <= trunc {
                pairs.push(std::cmp::Reverse((lcm_deg, i, j)));
                pending.insert((i, j));
            }
        }
        basis.push(g.monic());
    };
    let mut sorted_rows = rows;
    sorted_rows.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        (false, false) => a.lead().0.cmp(&b.lead().0),
    });
    for r in sorted_rows {
        if r.is_zero() {
            continue;
        }
        let red = reduce(nvars, r, &basis, trunc);
        if !red.is_zero() {
            push_elem(&mut basis, &mut pairs, &mut pending, red);
        }
    }
    while let Some(std::cmp::Reverse((_, i, j))) = pairs.pop() {
        pending.remove(&(i, j));
        let li = basis[i].lead().0;
        let lj = basis[j].lead().0;
        let (lcm_deg, lcm_exp) = lcm_term(nvars, &li, &lj);
        if lcm_deg > trunc {
            continue;
        }
        // chain criterion: if some other basis lead divides the lcm and
        // both pairs with that element are already settled, this pair's
        // S-vector reduces to zero through those two.
        let lcm_t = Term {
            deg: lcm_deg,
            comp: li.comp,
            exp: lcm_exp,
        };
        let chained = basis.iter().enumerate().any(|(k, h)| {
            k != i
                && k != j
                && divides(nvars, &h.lead().0, &lcm_t)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let shift_i = Term {
            deg: lcm_deg - li.deg,
            comp: 0,
            exp: lcm_exp - li.exp,
        };
        let shift_j = Term {
            deg: lcm_deg - lj.deg,
            comp: 0,
            exp: lcm_exp - lj.exp,
        };
        // S-vector of two monic elements: leading terms cancel exactly
        let spair = VecPoly::default()
            .axpy_shift(&(-Q::one()), &shift_i, &basis[i], trunc)
            .axpy_shift(&Q::one(), &shift_j, &basis[j], trunc);
        let red = reduce(nvars, spair, &basis, trunc);
        if !red.is_zero() {
            push_elem(&mut basis, &mut pairs, &mut pending, red);
        }
    }
    basis.iter().map(|g| g.lead().0).collect()
}

fn lcm_term(nvars: usize, a: &Term, b: &Term) -> (u32, u64) {
    let mut exp = 0u64;
    let mut deg = 0u32;
    for var in 0..nvars {
        let s = field_shift(nvars, var);
        let e = ((a.exp >> s) & FIELD_MASK).max((b.exp >> s) & FIELD_MASK);
        exp |= e << s;
        deg += e as u32;
    }
    (deg, exp)
}

fn lcm_degree(nvars: usize, a: &Term, b: &Term) -> u32 {
    lcm_term(nvars, a, b).0
}

/// Number of monomials of total degree d in ncomp components that are not
/// divisible by any of the given leading terms.
fn count_standard_monomials(
    nvars: usize,
    leads: &[Term],
    ncomp: usize,
    d: u32,
) -> usize {
    let mut count = 0usize;
    let mut exp = vec![0i32; nvars];
    for comp in 0..ncomp {
        count += count_rec(nvars, leads, comp as u32, &mut exp, 0, d as i32);
    }
    count
}

fn count_rec(
    nvars: usize,
    leads: &[Term],
    comp: u32,
    exp: &mut Vec<i32>,
    pos: usize,
    left: i32,
) -> usize {
    if pos == exp.len() {
        if left != 0 {
            return 0;
        }
        let t = Term {
            deg: exp.iter().sum::<i32>() as u32,
            comp,
            exp: pack_exponents(nvars, exp),
        };
        return if leads.iter().any(|l| divides(nvars, l, &t)) {
            0
        } else {
            1
        };
    }
    let mut total = 0usize;
    for e in 0..=left {
        exp[pos] = e;
        total += count_rec(nvars, leads, comp, exp, pos + 1, left - e);
    }
    exp[pos] = 0;
    total
}

/// Bring a presentation matrix into polynomial form over ℚ[x₁..x_n]:
/// clear row units and substitute t_i -> 1 - x_i. Presentations already over
/// a polynomial or truncated ring are used as they are.
fn polynomial_rows(pres: &Presentation, trunc: i32) -> Result<Vec<VecPoly>, ArralexError> {
    let nvars = pres.ring.nvars();
    if nvars > MAX_VARS {
        return Err(ArralexError::Invalid(format!(
            "at most {} variables are supported",
            MAX_VARS
        )));
    }
    let matrix = match pres.ring {
        RingTag::Laurent(_) => pres
            .matrix
            .clear_units()
            .magnus_substitute()?
            .map(|p| p.truncate(trunc)),
        RingTag::Polynomial(_) => pres.matrix.clone(),
        RingTag::Truncated(_, d) => {
            if d < trunc {
                return Err(ArralexError::Invalid(format!(
                    "presentation is only correct up to degree {}, need {}",
                    d, trunc
                )));
            }
            pres.matrix.clone()
        }
    };
    Ok((0..matrix.rows)
        .map(|i| VecPoly::from_row(nvars, matrix.row(i), trunc))
        .collect())
}

/// Graded ranks θ_2, ..., θ_K of the presented module after the I-adic
/// associated-graded construction: θ_k is the dimension of the degree k−2
/// piece of the quotient by the leading-term module.
pub fn chen_ranks(pres: &Presentation, kmax: usize) -> Result<Vec<usize>, ArralexError> {
    assert!(kmax >= 2);
    let trunc = (kmax - 2) as u32;
    let rows = polynomial_rows(pres, trunc as i32)?;
    let nvars = pres.ring.nvars();
    let leads = standard_basis_leads(nvars, rows, trunc);
    let b = pres.generators();
    Ok((2..=kmax)
        .map(|k| count_standard_monomials(nvars, &leads, b, (k - 2) as u32))
        .collect())
}

/// Independent check of `chen_ranks`: spans each truncated degree of the row
/// module by all monomial multiples of the rows and eliminates, counting
/// pivot terms degree by degree. Slower, but only linear algebra.
pub fn chen_ranks_oracle(pres: &Presentation, kmax: usize) -> Result<Vec<usize>, ArralexError> {
    assert!(kmax >= 2);
    let trunc = (kmax - 2) as u32;
    let rows = polynomial_rows(pres, trunc as i32)?;
    let nvars = pres.ring.nvars();
    let b = pres.generators();

    // Online reduced-echelon elimination keyed by leading term, streaming
    // over all monomial shifts of all rows up to the degree bound. Pivot
    // tails are kept clear of pivot columns (reduced form), so every tail is
    // bounded by the quotient dimension; `occurs` tracks, for each non-pivot
    // column, which pivot tails currently touch it.
    type Tail = std::collections::BTreeMap<Term, Q>;
    let mut pivots: std::collections::BTreeMap<Term, Tail> = std::collections::BTreeMap::new();
    let mut occurs: std::collections::HashMap<Term, std::collections::BTreeSet<Term>> =
        std::collections::HashMap::new();
    let mut exp = vec![0i32; nvars];
    let mut eliminate = |v: VecPoly| {
        let mut map: Tail = v.terms.into_iter().collect();
        // forward pass: pivot tails only contain non-pivot columns and lie
        // strictly above their lead, so a single ascending sweep clears every
        // pivot-lead term of the vector
        let mut cursor: Option<Term> = map.first_key_value().map(|(t, _)| *t);
        while let Some(at) = cursor {
            let Some((&t, _)) = map.range(at..).next() else { break };
            if let Some(tail) = pivots.get(&t) {
                let coeff = map.remove(&t).unwrap();
                for (u, c) in tail {
                    let entry = map.entry(*u).or_insert_with(Q::zero);
                    *entry -= &coeff * c;
                    if entry.is_zero() {
                        map.remove(u);
                    }
                }
                cursor = Some(t);
            } else {
                cursor = map
                    .range((std::ops::Bound::Excluded(t), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, _)| *k);
            }
        }
        let Some((&lead, _)) = map.first_key_value() else {
            return;
        };
        let inv = Q::one() / map.remove(&lead).unwrap();
        let tail: Tail = map.into_iter().map(|(t, c)| (t, c * &inv)).collect();
        // back-substitution: clear the new lead from every existing tail
        if let Some(holders) = occurs.remove(&lead) {
            for h in holders {
                let mut ht = pivots.remove(&h).expect("indexed pivot exists");
                let coeff = ht.remove(&lead).expect("indexed column present");
                for (u, c) in &tail {
                    let entry = ht.entry(*u).or_insert_with(Q::zero);
                    *entry -= &coeff * c;
                    let present = !entry.is_zero();
                    if !present {
                        ht.remove(u);
                    }
                    let set = occurs.entry(*u).or_default();
                    if present {
                        set.insert(h);
                    } else {
                        set.remove(&h);
                    }
                }
                pivots.insert(h, ht);
            }
        }
        for u in tail.keys() {
            occurs.entry(*u).or_default().insert(lead);
        }
        pivots.insert(lead, tail);
    };
    stream_shifts(nvars, &rows, &mut exp, 0, trunc as i32, trunc, &mut eliminate);

    let mut out = Vec::new();
    for k in 2..=kmax {
        let d = (k - 2) as u32;
        let full = b * monomial_count(nvars, d as i32);
        let hit = pivots.keys().filter(|t| t.deg == d).count();
        out.push(full - hit);
    }
    Ok(out)
}

fn monomial_count(nvars: usize, d: i32) -> usize {
    binomial(d as usize + nvars - 1, nvars - 1)
}

fn stream_shifts<F: FnMut(VecPoly)>(
    nvars: usize,
    rows: &[VecPoly],
    exp: &mut Vec<i32>,
    pos: usize,
    budget: i32,
    trunc: u32,
    sink: &mut F,
) {
    if pos == exp.len() {
        let shift = Term {
            deg: exp.iter().sum::<i32>() as u32,
            comp: 0,
            exp: pack_exponents(nvars, exp),
        };
        for r in rows {
            let s = VecPoly::default().axpy_shift(&(-Q::one()), &shift, r, trunc);
            if !s.is_zero() {
                sink(s);
            }
        }
        return;
    }
    for e in 0..=budget {
        exp[pos] = e;
        stream_shifts(nvars, rows, exp, pos + 1, budget - e, trunc, sink);
    }
    exp[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexinv::presentation_free;

    #[test]
    fn packed_term_order_is_deg_comp_lex() {
        let t = |deg: u32, comp: u32, e: &[i32]| Term {
            deg,
            comp,
            exp: pack_exponents(3, e),
        };
        // degree dominates
        assert!(t(1, 5, &[0, 0, 1]) < t(2, 0, &[2, 0, 0]));
        // then component
        assert!(t(2, 0, &[0, 1, 1]) < t(2, 1, &[2, 0, 0]));
        // then lex on the packed word, variable 1 most significant
        assert!(t(2, 0, &[1, 0, 1]) < t(2, 0, &[1, 1, 0]));
        assert!(t(2, 0, &[1, 1, 0]) < t(2, 0, &[2, 0, 0]));
        // divisibility
        assert!(divides(3, &t(1, 0, &[1, 0, 0]), &t(2, 0, &[1, 1, 0])));
        assert!(!divides(3, &t(1, 0, &[0, 0, 1]), &t(2, 0, &[1, 1, 0])));
        assert!(!divides(3, &t(1, 1, &[1, 0, 0]), &t(2, 0, &[1, 1, 0])));
    }

    #[test]
    fn free_group_ranks() {
        for n in 2..=4 {
            let p = presentation_free(n);
            let a = chen_ranks(&p, 6).unwrap();
            let b = chen_ranks_oracle(&p, 6).unwrap();
            assert_eq!(a, b, "disagreement for n = {}", n);
        }
    }

    #[test]
    fn known_free_values() {
        // n = 2: d₃ has no rows, so θ_k counts monomials of degree k-2 in
        // two variables.
        let p = presentation_free(2);
        assert_eq!(chen_ranks(&p, 6).unwrap(), vec![1, 2, 3, 4, 5]);
        // n = 3: θ_k = (k-1)·C(k+1, k)
        let p = presentation_free(3);
        let vals = chen_ranks(&p, 6).unwrap();
        assert_eq!(vals, vec![3, 8, 15, 24, 35]);
    }

    #[test]
    fn truncation_ring_accepted() {
        let p = presentation_free(3);
        let q = Presentation {
            matrix: p.matrix.magnus_substitute_trunc(3),
            gen_labels: p.gen_labels.clone(),
            rel_labels: p.rel_labels.clone(),
            ring: RingTag::Truncated(3, 3),
        };
        assert_eq!(chen_ranks(&q, 5).unwrap(), chen_ranks(&p, 5).unwrap());
        assert!(chen_ranks(&q, 6).is_err());
    }
}
