//! Exact rational geometry of real line arrangements: file ingestion,
//! deconing of central arrangements, generic projection frames, wiring
//! diagrams, and the monodromy generators they determine.
//!
//! All comparisons are exact; no floating point is used anywhere.

use crate::alexinv::WiringVertex;
use crate::braid::{BraidWord, ConjugatedTwist};
use crate::error::ArralexError;
use crate::localcc::Lattice2;
use crate::ring::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// An affine line a·x + b·y = c with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLine {
    pub a: Q,
    pub b: Q,
    pub c: Q,
}

impl AffineLine {
    pub fn new(a: Q, b: Q, c: Q) -> Self {
        AffineLine { a, b, c }
    }

    /// Projective normalization for equality testing: integer coefficients
    /// with content one and a positive leading coefficient.
    fn normalized_key(&self) -> [BigInt; 3] {
        normalize_triple(&[self.a.clone(), self.b.clone(), self.c.clone()])
    }

    /// y-coordinate above x, defined when the line is not vertical.
    fn y_at(&self, x: &Q) -> Q {
        (&self.c - &self.a * x) / &self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineArrangement {
    pub lines: Vec<AffineLine>,
}

/// A central plane arrangement in 3-space: planes a·x + b·y + c·z = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralArrangement {
    pub planes: Vec<[Q; 3]>,
}

#[derive(Clone, Debug)]
pub enum ArrangementFile {
    Affine(AffineArrangement),
    Central(CentralArrangement),
}

fn normalize_triple(v: &[Q; 3]) -> [BigInt; 3] {
    // common denominator, divide by content, fix the sign of the first
    // nonzero entry
    let lcm = v.iter().fold(BigInt::one(), |acc, q| {
        num_integer::Integer::lcm(&acc, q.denom())
    });
    let mut ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    if !gcd.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    [ints[0].clone(), ints[1].clone(), ints[2].clone()]
}

fn parse_q(s: &str) -> Result<Q, ArralexError> {
    let bad = || ArralexError::Parse(format!("bad rational '{}'", s));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Q::new(n, d))
    } else {
        let n: BigInt = s.trim().parse().map_err(|_| bad())?;
        Ok(Q::from_integer(n))
    }
}

fn render_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl ArrangementFile {
    /// One hyperplane per line as three exact rationals; an optional leading
    /// `central` marker distinguishes central arrangements (a·x+b·y+c·z = 0)
    /// from affine ones (a·x+b·y = c).
    pub fn parse(text: &str) -> Result<Self, ArralexError> {
        let mut central = false;
        let mut rows: Vec<[Q; 3]> = Vec::new();
        let mut saw_data = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "central" {
                if saw_data {
                    return Err(ArralexError::Parse(format!(
                        "line {}: 'central' must precede the coefficients",
                        lineno + 1
                    )));
                }
                central = true;
                continue;
            }
            saw_data = true;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(ArralexError::Parse(format!(
                    "line {}: expected three rationals",
                    lineno + 1
                )));
            }
            rows.push([parse_q(parts[0])?, parse_q(parts[1])?, parse_q(parts[2])?]);
        }
        if central {
            let arr = CentralArrangement { planes: rows };
            arr.validate()?;
            Ok(ArrangementFile::Central(arr))
        } else {
            let lines = rows
                .into_iter()
                .map(|[a, b, c]| AffineLine::new(a, b, c))
                .collect();
            let arr = AffineArrangement { lines };
            arr.validate()?;
            Ok(ArrangementFile::Affine(arr))
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let rows: Vec<[Q; 3]> = match self {
            ArrangementFile::Central(c) => {
                out.push_str("central\n");
                c.planes.clone()
            }
            ArrangementFile::Affine(a) => a
                .lines
                .iter()
                .map(|l| [l.a.clone(), l.b.clone(), l.c.clone()])
                .collect(),
        };
        for r in rows {
            out.push_str(&format!(
                "{} {} {}\n",
                render_q(&r[0]),
                render_q(&r[1]),
                render_q(&r[2])
            ));
        }
        out
    }
}

impl AffineArrangement {
    pub fn validate(&self) -> Result<(), ArralexError> {
        let mut seen = BTreeMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            if l.a.is_zero() && l.b.is_zero() {
                return Err(ArralexError::DegenerateGeometry(format!(
                    "line {} has no x or y coefficient",
                    i + 1
                )));
            }
            if let Some(j) = seen.insert(l.normalized_key(), i + 1) {
                return Err(ArralexError::DegenerateGeometry(format!(
                    "lines {} and {} coincide",
                    j,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    /// All intersection points, each with the sorted labels of the lines
    /// through it. Parallel lines contribute nothing.
    pub fn vertices(&self) -> Vec<((Q, Q), Vec<usize>)> {
        let mut map: BTreeMap<(Q, Q), Vec<usize>> = BTreeMap::new();
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let li = &self.lines[i];
                let lj = &self.lines[j];
                let det = &li.a * &lj.b - &lj.a * &li.b;
                if det.is_zero() {
                    continue;
                }
                let x = (&li.c * &lj.b - &lj.c * &li.b) / &det;
                let y = (&li.a * &lj.c - &lj.a * &li.c) / &det;
                let entry = map.entry((x, y)).or_default();
                for l in [i + 1, j + 1] {
                    if !entry.contains(&l) {
                        entry.push(l);
                    }
                }
            }
        }
        map.into_iter()
            .map(|(p, mut v)| {
                v.sort_unstable();
                (p, v)
            })
            .collect()
    }
}

impl CentralArrangement {
    pub fn validate(&self) -> Result<(), ArralexError> {
        let mut seen = BTreeMap::new();
        for (i, p) in self.planes.iter().enumerate() {
            if p.iter().all(|q| q.is_zero()) {
                return Err(ArralexError::DegenerateGeometry(format!(
                    "plane {} is identically zero",
                    i + 1
                )));
            }
            if let Some(j) = seen.insert(normalize_triple(p), i + 1) {
                return Err(ArralexError::DegenerateGeometry(format!(
                    "planes {} and {} are proportional",
                    j,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.planes.len()
    }
}

/// Remove one plane of a central arrangement to infinity: after a coordinate
/// change sending it to z = 0, the remaining planes become affine lines in
/// the chart z = 1. Labels keep their relative order.
pub fn decone(c: &CentralArrangement, which: usize) -> Result<AffineArrangement, ArralexError> {
    if which < 1 || which > c.n() {
        return Err(ArralexError::Invalid(format!(
            "arrangement has no plane {}",
            which
        )));
    }
    let p = &c.planes[which - 1];
    // invertible change of coordinates with new last coordinate a·x+b·y+c·z:
    // complete the row (a,b,c) with the two standard basis vectors avoiding
    // the position of a nonzero coefficient
    let pivot = p.iter().position(|q| !q.is_zero()).expect("validated");
    let mut rows: Vec<[Q; 3]> = Vec::new();
    for k in 0..3 {
        if k != pivot {
            let mut e = [Q::zero(), Q::zero(), Q::zero()];
            e[k] = Q::one();
            rows.push(e);
        }
    }
    let m = [rows[0].clone(), rows[1].clone(), p.clone()];
    let minv = invert3(&m)?;
    let mut lines = Vec::new();
    for (i, q) in c.planes.iter().enumerate() {
        if i + 1 == which {
            continue;
        }
        // coefficients in the new coordinates: q' = q · M⁻¹
        let qp: Vec<Q> = (0..3)
            .map(|col| (0..3).map(|r| &q[r] * &minv[r][col]).sum())
            .collect();
        if qp[0].is_zero() && qp[1].is_zero() {
            return Err(ArralexError::DegenerateGeometry(format!(
                "plane {} is proportional to the removed plane",
                i + 1
            )));
        }
        lines.push(AffineLine::new(qp[0].clone(), qp[1].clone(), -qp[2].clone()));
    }
    let arr = AffineArrangement { lines };
    arr.validate()?;
    Ok(arr)
}

fn det3(a: &[Q; 3], b: &[Q; 3], c: &[Q; 3]) -> Q {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn invert3(m: &[[Q; 3]; 3]) -> Result<[[Q; 3]; 3], ArralexError> {
    let d = det3(&m[0], &m[1], &m[2]);
    if d.is_zero() {
        return Err(ArralexError::DegenerateGeometry(
            "singular coordinate change".into(),
        ));
    }
    let cof = |r: usize, c: usize| -> Q {
        let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
        let minor = &m[rs[0]][cs[0]] * &m[rs[1]][cs[1]] - &m[rs[0]][cs[1]] * &m[rs[1]][cs[0]];
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    let mut out = [
        [Q::zero(), Q::zero(), Q::zero()],
        [Q::zero(), Q::zero(), Q::zero()],
        [Q::zero(), Q::zero(), Q::zero()],
    ];
    for r in 0..3 {
        for c in 0..3 {
            out[r][c] = cof(c, r) / &d;
        }
    }
    Ok(out)
}

/// Certificate that the first-coordinate projection is generic: the shear
/// applied and the strictly increasing vertex projection values.
#[derive(Clone, Debug)]
pub struct FrameCertificate {
    pub shear: Q,
    pub projections: Vec<Q>,
}

fn is_generic(arr: &AffineArrangement) -> Option<Vec<Q>> {
    if arr.lines.iter().any(|l| l.b.is_zero()) {
        return None;
    }
    let verts = arr.vertices();
    let mut xs: Vec<Q> = verts.iter().map(|(p, _)| p.0.clone()).collect();
    xs.sort();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(xs)
}

/// Deterministic sequence of shear parameters 0, 1, -1, 2, -2, 1/2, -1/2, ...
fn shear_sequence() -> impl Iterator<Item = Q> {
    std::iter::once(Q::zero()).chain((1..).flat_map(|k: i64| {
        let whole = Q::from_integer(BigInt::from(k));
        let frac = Q::new(BigInt::one(), BigInt::from(k));
        [whole.clone(), -whole, frac.clone(), -frac]
    }))
}

/// Apply the shear x ↦ x + q·y (lines transform as a ↦ a, b ↦ b − a·q).
pub fn apply_shear(arr: &AffineArrangement, q: &Q) -> AffineArrangement {
    AffineArrangement {
        lines: arr
            .lines
            .iter()
            .map(|l| AffineLine::new(l.a.clone(), &l.b - &l.a * q, l.c.clone()))
            .collect(),
    }
}

/// Find a rational shear making the first-coordinate projection generic:
/// no vertical lines and all vertices with distinct projections. The search
/// is deterministic and terminates (only finitely many bad directions).
pub fn generic_frame(arr: &AffineArrangement) -> (AffineArrangement, FrameCertificate) {
    for q in shear_sequence() {
        let sheared = apply_shear(arr, &q);
        if let Some(projections) = is_generic(&sheared) {
            return (
                sheared,
                FrameCertificate {
                    shear: q,
                    projections,
                },
            );
        }
    }
    unreachable!("the shear sequence is infinite and bad shears are finite");
}

/// A wiring diagram event: the wires through a vertex (V), the wires passing
/// strictly above it (U), and the conjugating set J = (V̄ ∖ V) ∩ U, where V̄
/// is the label interval spanned by V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringEvent {
    pub v_set: Vec<usize>,
    pub u_set: Vec<usize>,
    pub j_set: Vec<usize>,
}

/// A wiring diagram on n wires. Wires are labeled bottom-to-top on the far
/// left; `wire_to_input[i-1]` is the input label of wire i.
#[derive(Clone, Debug)]
pub struct WiringDiagram {
    pub n: usize,
    pub events: Vec<WiringEvent>,
    pub wire_to_input: Vec<usize>,
}

impl WiringDiagram {
    pub fn vertex_data(&self) -> Vec<WiringVertex> {
        self.events
            .iter()
            .map(|e| WiringVertex {
                v_set: e.v_set.clone(),
                j_set: e.j_set.clone(),
            })
            .collect()
    }

    /// Vertex sets translated back to the input labeling.
    pub fn input_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.events
            .iter()
            .map(|e| {
                let mut v: Vec<usize> = e
                    .v_set
                    .iter()
                    .map(|&w| self.wire_to_input[w - 1])
                    .collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

/// Read off the wiring diagram of an affine arrangement in a generic frame:
/// wires labeled by height at the far left, events ordered by vertex
/// projection, above-sets and conjugating sets by exact evaluation.
pub fn wiring_diagram(arr: &AffineArrangement) -> Result<WiringDiagram, ArralexError> {
    for (i, l) in arr.lines.iter().enumerate() {
        if l.b.is_zero() {
            return Err(ArralexError::DegenerateGeometry(format!(
                "line {} is vertical; apply a generic frame first",
                i + 1
            )));
        }
    }
    let verts = arr.vertices();
    for w in verts.windows(2) {
        if w[0].0 .0 == w[1].0 .0 {
            return Err(ArralexError::DegenerateGeometry(format!(
                "vertices {{{}}} and {{{}}} share the projection value {}; \
                 apply a generic frame first",
                w[0].1
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                w[1].1
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                render_q(&w[0].0 .0)
            )));
        }
    }
    let n = arr.n();
    // far-left fiber: strictly left of every vertex
    let x0 = verts
        .iter()
        .map(|(p, _)| p.0.clone())
        .min()
        .unwrap_or_else(Q::zero)
        - Q::one();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&i, &j| {
        arr.lines[i - 1]
            .y_at(&x0)
            .cmp(&arr.lines[j - 1].y_at(&x0))
    });
    // wire label of each input line
    let mut input_to_wire = vec![0usize; n];
    for (wire0, &input) in order.iter().enumerate() {
        input_to_wire[input - 1] = wire0 + 1;
    }

    let mut events = Vec::new();
    for ((vx, vy), inputs) in &verts {
        let mut v_set: Vec<usize> = inputs.iter().map(|&l| input_to_wire[l - 1]).collect();
        v_set.sort_unstable();
        let mut u_set = Vec::new();
        for input in 1..=n {
            if inputs.contains(&input) {
                continue;
            }
            if arr.lines[input - 1].y_at(vx) > *vy {
                u_set.push(input_to_wire[input - 1]);
            }
        }
        u_set.sort_unstable();
        let lo = v_set[0];
        let hi = *v_set.last().unwrap();
        let j_set: Vec<usize> = u_set
            .iter()
            .copied()
            .filter(|w| lo < *w && *w < hi && !v_set.contains(w))
            .collect();
        events.push(WiringEvent { v_set, u_set, j_set });
    }
    Ok(WiringDiagram {
        n,
        events,
        wire_to_input: order,
    })
}

/// The braid monodromy generators of a wiring diagram: conjugated twists
/// A_{V_k} with conjugator δ_k = ∏ A_{j,i} over i ∈ V_k, j ∈ J_k, j < i,
/// ordered by i ascending, then j ascending.
pub fn monodromy_real(w: &WiringDiagram) -> Vec<ConjugatedTwist> {
    w.events
        .iter()
        .map(|e| {
            let mut delta = BraidWord::identity();
            for &i in &e.v_set {
                for &j in &e.j_set {
                    if j < i {
                        delta = delta.mul(&BraidWord::generator(j, i));
                    }
                }
            }
            ConjugatedTwist {
                v_set: e.v_set.clone(),
                conjugator: delta,
            }
        })
        .collect()
}

/// Rank-two flats of an affine arrangement: vertex sets in input labels.
/// Pairs of parallel lines meet nowhere and are left uncovered.
pub fn lattice2_affine(arr: &AffineArrangement) -> Result<Lattice2, ArralexError> {
    arr.validate()?;
    let sets: Vec<Vec<usize>> = arr.vertices().into_iter().map(|(_, v)| v).collect();
    Lattice2::new(arr.n(), sets)
}

/// Rank-two flats of a central arrangement: planes grouped by their exact
/// pairwise intersection lines.
pub fn lattice2_central(c: &CentralArrangement) -> Result<Lattice2, ArralexError> {
    c.validate()?;
    let n = c.n();
    let mut map: BTreeMap<[BigInt; 3], Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = &c.planes[i];
            let q = &c.planes[j];
            let dir = [
                &p[1] * &q[2] - &p[2] * &q[1],
                &p[2] * &q[0] - &p[0] * &q[2],
                &p[0] * &q[1] - &p[1] * &q[0],
            ];
            let key = normalize_triple(&dir);
            let entry = map.entry(key).or_default();
            for l in [i + 1, j + 1] {
                if !entry.contains(&l) {
                    entry.push(l);
                }
            }
        }
    }
    let mut sets: Vec<Vec<usize>> = map
        .into_values()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect();
    sets.sort();
    Lattice2::new(n, sets)
}
