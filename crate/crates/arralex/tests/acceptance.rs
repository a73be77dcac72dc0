//! Acceptance gate: one test per numbered criterion, each asserting exact
//! integer values end to end on the bundled fixtures.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational as Q;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arralex::alexinv::{
    phi_conj, presentation_cone, presentation_free, presentation_general, presentation_product,
    presentation_real, Presentation,
};
use arralex::braid::{gassner_word, BasisConjugating, BraidWord, ConjugatedTwist};
use arralex::chen::{chen_ranks, chen_ranks_oracle};
use arralex::geom::{
    decone, generic_frame, lattice2_central, monodromy_real, wiring_diagram, ArrangementFile,
    CentralArrangement, WiringDiagram,
};
use arralex::intmat::IntMatrix;
use arralex::koszul::differential;
use arralex::localcc::{
    block_offsets, decomposes, lattice_transport, local_chain_map, local_presentation, psi3_bar,
    stacked_vector, theta3, Lattice2,
};
use arralex::matrix::{rational_rank, RingMatrix};
use arralex::ring::LaurentPoly;
use arralex::subsets::{binomial, ksubsets};
use arralex::word::{abelianized_gradient, FreeWord};

fn fixture(name: &str) -> String {
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e))
}

fn central(name: &str) -> CentralArrangement {
    match ArrangementFile::parse(&fixture(name)).expect("fixture parses") {
        ArrangementFile::Central(c) => c,
        ArrangementFile::Affine(_) => panic!("{} is not central", name),
    }
}

/// Wiring diagram and real/general ingredients of a central fixture after
/// sending plane `at` to infinity.
fn real_pipeline(name: &str, at: usize) -> (usize, WiringDiagram, Vec<ConjugatedTwist>) {
    let aff = decone(&central(name), at).expect("decone");
    let (framed, _) = generic_frame(&aff);
    let w = wiring_diagram(&framed).expect("wiring");
    let mono = monodromy_real(&w);
    (framed.n(), w, mono)
}

fn real_pres(name: &str, at: usize) -> Presentation {
    let (n, w, _) = real_pipeline(name, at);
    presentation_real(n, &w.vertex_data()).expect("real presentation")
}

fn set_of(sets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    sets.iter().cloned().collect()
}

#[test]
fn criterion_1_free_group_chen_ranks() {
    // theta_1 = n by definition (rank of H_1); theta_k from the Koszul
    // presentation must match (k-1)*C(k+n-2, k)
    for n in 2..=5 {
        let pres = presentation_free(n);
        let ranks = chen_ranks(&pres, 8).unwrap();
        for k in 2..=8usize {
            assert_eq!(
                ranks[k - 2],
                (k - 1) * binomial(k + n - 2, k),
                "free group on {} generators, k = {}",
                n,
                k
            );
        }
    }
}

#[test]
fn criterion_2_products_of_free_groups() {
    let product = |ds: &[usize]| -> Presentation {
        let mut it = ds.iter();
        let mut p = presentation_free(*it.next().unwrap());
        for &d in it {
            p = presentation_product(&p, &presentation_free(d));
        }
        p
    };
    for ds in [vec![2usize, 2], vec![1, 2, 3], vec![3, 2, 1]] {
        let pres = product(&ds);
        let ranks = chen_ranks(&pres, 7).unwrap();
        for k in 2..=7usize {
            let expected: usize = ds.iter().map(|&d| (k - 1) * binomial(k + d - 2, k)).sum();
            assert_eq!(ranks[k - 2], expected, "product {:?}, k = {}", ds, k);
        }
    }
}

#[test]
fn criterion_3_six_line_arrangement() {
    let c = central("sixlines.arr");
    assert_eq!(c.n(), 6); // theta_1
    let lat = lattice2_central(&c).unwrap();
    let expected: Vec<Vec<usize>> = vec![
        vec![1, 2, 6],
        vec![1, 3, 5],
        vec![2, 3, 4],
        vec![1, 4],
        vec![2, 5],
        vec![4, 5],
        vec![3, 6],
        vec![4, 6],
        vec![5, 6],
    ];
    assert_eq!(set_of(&lat.vertex_sets), set_of(&expected));
    let psi = psi3_bar(&lat);
    assert_eq!((psi.rows, psi.cols), (20, 12));
    assert_eq!(psi.rank(), 12);
    assert!(decomposes(&lat));
    let ranks = chen_ranks(&real_pres("sixlines.arr", 3), 8).unwrap();
    for k in 2..=8usize {
        assert_eq!(ranks[k - 2], 3 * (k - 1), "six lines, k = {}", k);
    }
}

/// kappa_1 and kappa_2 in the stacked basis of the braid-arrangement lattice.
fn kappa_terms() -> [Vec<(usize, usize, usize, i64)>; 2] {
    [
        vec![
            (2, 4, 6, 1),
            (2, 4, 3, -1),
            (3, 5, 4, 1),
            (3, 5, 6, -1),
            (3, 6, 1, 1),
            (3, 6, 4, -1),
            (5, 6, 3, 1),
            (5, 6, 1, -1),
        ],
        vec![
            (2, 4, 6, 1),
            (2, 4, 5, -1),
            (3, 5, 2, 1),
            (3, 5, 6, -1),
            (3, 6, 1, 1),
            (3, 6, 5, -1),
            (5, 6, 2, 1),
            (5, 6, 1, -1),
        ],
    ]
}

#[test]
fn criterion_4_braid_arrangement() {
    let c = central("a4.arr");
    let lat = lattice2_central(&c).unwrap();
    let psi = psi3_bar(&lat);
    assert_eq!(psi.rank(), 14);
    assert_eq!(psi.coker_rank(), 2);
    assert_eq!(theta3(&lat), 10);

    // the cokernel is free of rank 2 (the image is a direct summand) and
    // the displayed kappa_1, kappa_2 are independent modulo the image, so
    // their images form a basis of the rationalized cokernel
    let (pdiag, _) = psi.smith();
    assert!(pdiag.iter().all(|d| d.magnitude().is_one()));
    let kappas = kappa_terms();
    let k1 = stacked_vector(&lat, &kappas[0]).unwrap();
    let k2 = stacked_vector(&lat, &kappas[1]).unwrap();
    let stacked = psi.vstack(&IntMatrix::from_rows(vec![k1, k2]));
    assert_eq!(stacked.rank(), psi.cols);

    let ranks = chen_ranks(&real_pres("a4.arr", 1), 7).unwrap();
    assert_eq!(ranks[1], 10); // theta_3
    for k in 4..=7usize {
        assert_eq!(ranks[k - 2], 5 * (k - 1), "braid arrangement, k = {}", k);
    }
}

#[test]
fn criterion_5_diamond() {
    // wiring sequence in the published frame
    let aff = match ArrangementFile::parse(&fixture("diamond-affine.arr")).unwrap() {
        ArrangementFile::Affine(a) => a,
        _ => panic!("expected affine"),
    };
    let (framed, _) = generic_frame(&aff);
    let w = wiring_diagram(&framed).unwrap();
    let vertices = w.vertex_data();
    let vsets: Vec<Vec<usize>> = vertices.iter().map(|v| v.v_set.clone()).collect();
    assert_eq!(
        vsets,
        vec![
            vec![3, 4, 5],
            vec![1, 2, 5],
            vec![1, 4],
            vec![1, 3, 6],
            vec![2, 4, 6]
        ]
    );

    // monodromy versus the published generator list: identical except for
    // the second conjugator (see the fixture notes), and the Chen ranks of
    // both monodromies agree in full
    let computed = monodromy_real(&w);
    let published: Vec<ConjugatedTwist> = fixture("diamond.mono")
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| ConjugatedTwist::parse(l).unwrap())
        .collect();
    assert_eq!(computed.len(), published.len());
    for (i, (a, b)) in computed.iter().zip(&published).enumerate() {
        assert_eq!(a.v_set, b.v_set, "generator {}", i + 1);
        if i != 1 {
            assert_eq!(a, b, "generator {}", i + 1);
        }
    }
    let expected: Vec<usize> = (2..=8).map(|k| if k == 2 { 6 } else if k == 3 { 17 } else { 9 * (k - 1) }).collect();
    let from_published = chen_ranks(&presentation_general(6, &published), 8).unwrap();
    assert_eq!(from_published, expected);
    let real = presentation_real(6, &vertices).unwrap();
    assert_eq!(chen_ranks(&real, 8).unwrap(), expected);

    // lattice level: rank 25, theta_3 = 17
    let dlat = lattice2_central(&central("diamond.arr")).unwrap();
    let psi = psi3_bar(&dlat);
    assert_eq!((psi.rows, psi.cols), (35, 30));
    assert_eq!(psi.rank(), 25);
    assert_eq!(theta3(&dlat), 17);

    // transport of kappa_1, kappa_2 along 1->2, 2->3, 3->4, 4->7, 5->6, 6->5
    let a4lat = lattice2_central(&central("a4.arr")).unwrap();
    let omega = [2usize, 3, 4, 7, 6, 5];
    let offs_a = block_offsets(&a4lat);
    let offs_d = block_offsets(&dlat);
    let images: Vec<Vec<BigInt>> = kappa_terms()
        .iter()
        .map(|terms| {
            let src = stacked_vector(&a4lat, terms).unwrap();
            let mut out = vec![BigInt::zero(); *offs_d.last().unwrap()];
            for (bi, v) in a4lat.vertex_sets.iter().enumerate() {
                if v.len() < 3 {
                    continue;
                }
                let m = lattice_transport(6, 7, &omega, v).unwrap();
                let mut u: Vec<usize> = v.iter().map(|&l| omega[l - 1]).collect();
                u.sort_unstable();
                let ti = dlat
                    .vertex_sets
                    .iter()
                    .position(|s| *s == u)
                    .expect("image vertex present");
                for r in 0..m.rows {
                    let c_src = &src[offs_a[bi] + r];
                    if c_src.is_zero() {
                        continue;
                    }
                    for c in 0..m.cols {
                        out[offs_d[ti] + c] += c_src * m.at(r, c);
                    }
                }
            }
            out
        })
        .collect();
    let displayed1 = stacked_vector(
        &dlat,
        &[
            (3, 7, 5, 1),
            (3, 7, 4, -1),
            (4, 6, 7, 1),
            (4, 6, 5, -1),
            (4, 5, 2, 1),
            (4, 5, 7, -1),
            (6, 7, 2, 1),
            (6, 7, 4, -1),
        ],
    )
    .unwrap();
    let displayed2 = stacked_vector(
        &dlat,
        &[
            (3, 7, 5, 1),
            (3, 7, 6, -1),
            (4, 6, 3, 1),
            (4, 6, 5, -1),
            (4, 5, 2, 1),
            (4, 5, 6, -1),
            (6, 7, 2, 1),
            (6, 7, 3, -1),
        ],
    )
    .unwrap();
    assert_eq!(images[0], displayed1);
    assert_eq!(images[1], displayed2);
}

#[test]
fn criterion_6_maclane_lattice() {
    let lat = Lattice2::parse(&fixture("maclane.lat")).unwrap();
    assert_eq!(lat.vertex_sets.len(), 12);
    assert_eq!(lat.theta_cc(3), 16);
    assert_eq!(theta3(&lat), 21);
    assert!(!decomposes(&lat));
    // the published full table theta_k = 8(k-1) for k >= 4 needs monodromy
    // data that no real picture provides; it is recorded in FORMATS.md as
    // informational and deliberately not asserted here
}

#[test]
fn criterion_7_pappus_pair() {
    let lat2 = lattice2_central(&central("pappus2.arr")).unwrap();
    assert!(decomposes(&lat2));
    let ranks2 = chen_ranks(&real_pres("pappus2.arr", 3), 8).unwrap();
    for k in 2..=8usize {
        assert_eq!(ranks2[k - 2], 9 * (k - 1), "decomposable Pappus, k = {}", k);
    }

    let lat1 = lattice2_central(&central("pappus1.arr")).unwrap();
    assert!(!decomposes(&lat1));
    let ranks1 = chen_ranks(&real_pres("pappus1.arr", 3), 8).unwrap();
    assert_eq!(ranks1[0], 9);
    for k in 3..=8usize {
        assert_eq!(ranks1[k - 2], 10 * (k - 1), "perturbed Pappus, k = {}", k);
    }
    assert_eq!(lat1.theta2(), lat2.theta2());
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(1..=max_len);
    let letters: Vec<(usize, i32)> = (0..len)
        .map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    FreeWord::from_letters(n, &letters)
}

fn random_braid(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let mut w = BraidWord::identity();
    for _ in 0..rng.gen_range(1..=max_len) {
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let g = BraidWord::generator(i, j);
        w = w.mul(&if rng.gen_bool(0.5) { g } else { g.inverse() });
    }
    w
}

/// The correction term W in Theta_2(A_{r,s})(e_i wedge e_j) = e_ij + W,
/// written on the ascending wedge basis; the eleven shapes depend on how
/// {i,j} meets and interleaves {r,s}.
fn w_table(
    n: usize,
    r: usize,
    s: usize,
    i: usize,
    j: usize,
) -> Vec<((usize, usize), LaurentPoly)> {
    let t = |k: usize| LaurentPoly::var(n, k - 1);
    let one = LaurentPoly::one(n);
    let tr = t(r);
    let ts = t(s);
    let ti = t(i);
    let tj = t(j);
    if i < j && j == r && r < s {
        vec![
            ((i, r), tr.mul(&ts.sub(&one))),
            ((i, s), tr.mul(&one.sub(&tr))),
        ]
    } else if i < r && r < j && j < s {
        let f = one.sub(&tj);
        vec![
            ((i, r), f.mul(&one.sub(&ts))),
            ((i, s), f.mul(&tr.sub(&one))),
        ]
    } else if i < r && r < j && j == s {
        vec![((i, s), tr.sub(&one)), ((i, r), one.sub(&ts))]
    } else if i == r && j == s {
        vec![((r, s), tr.mul(&ts).sub(&one))]
    } else if r < i && i < j && j == s {
        vec![
            ((i, s), tr.sub(&one)),
            ((r, i), ts.sub(&one)),
            ((r, s), ts.sub(&one).mul(&ti.sub(&one))),
        ]
    } else if r < i && i < s && s < j {
        let f = one.sub(&ti);
        vec![
            ((r, j), f.mul(&one.sub(&ts))),
            ((s, j), f.mul(&tr.sub(&one))),
        ]
    } else if i == r && s < j {
        vec![
            ((r, j), tr.mul(&ts.sub(&one))),
            ((s, j), tr.mul(&one.sub(&tr))),
        ]
    } else if r < i && i == s && s < j {
        vec![((s, j), tr.sub(&one)), ((r, j), one.sub(&ts))]
    } else if i == r && r < j && j < s {
        vec![
            ((r, j), tr.mul(&ts.sub(&one))),
            ((j, s), tr.sub(&one).mul(&tr)),
            ((r, s), tr.sub(&one).mul(&one.sub(&tj))),
        ]
    } else if r < i && i < j && j < s {
        let f1 = tj.sub(&one);
        let f2 = one.sub(&ti);
        vec![
            ((r, i), f1.mul(&one.sub(&ts))),
            ((i, s), f1.mul(&one.sub(&tr))),
            ((r, j), f2.mul(&one.sub(&ts))),
            ((j, s), f2.mul(&one.sub(&tr))),
        ]
    } else {
        vec![]
    }
}

#[test]
fn criterion_8_structural_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);

    // Fox fundamental formula, abelianized: sum_i dw/dt_i (t_i - 1) = w - 1
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let w = random_word(&mut rng, n, 10);
        let grads = abelianized_gradient(&w);
        let one = LaurentPoly::one(n);
        let mut lhs = LaurentPoly::zero(n);
        for (i, g) in grads.iter().enumerate() {
            lhs = lhs.add(&g.mul(&LaurentPoly::var(n, i).sub(&one)));
        }
        assert_eq!(lhs, w.abelianized().sub(&one));
    }

    // d compose d = 0 on all Koszul degrees
    for n in 2..=8usize {
        for k in 3..=n {
            let dd = differential(n, k).mul(&differential(n, k - 1));
            assert!(
                dd.rows == binomial(n, k)
                    && (0..dd.rows).all(|i| (0..dd.cols).all(|j| dd.at(i, j).is_zero()))
            );
        }
    }

    // d_2 after Phi(gamma_z) equals id - Theta(gamma_z)
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let z = BasisConjugating {
            words: (0..n).map(|_| random_word(&mut rng, n, 4)).collect(),
        };
        let lhs = phi_conj(&z).mul(&differential(n, 2));
        let rhs = RingMatrix::identity(n, n).sub(&z.gassner());
        assert_eq!(lhs, rhs);
    }

    // chain-map identity for the local comparison maps
    for _ in 0..500 {
        let n = rng.gen_range(3..=6);
        let size = rng.gen_range(2..=n.min(5));
        let mut v: Vec<usize> = (1..=n).collect();
        for k in 0..size {
            let pick = rng.gen_range(k..v.len());
            v.swap(k, pick);
        }
        let mut v: Vec<usize> = v[..size].to_vec();
        v.sort_unstable();
        let psi3 = local_chain_map(n, &v, 3);
        let psi2 = local_chain_map(n, &v, 2)
            .select_columns(&pairs_position(n, &v));
        let delta = local_presentation(n, &v).matrix;
        assert_eq!(psi3.mul(&delta), differential(n, 3).mul(&psi2));
    }

    // the eleven-case W table against the exterior square of Gassner
    let mut case_hits = 0usize;
    for n in 3..=6usize {
        let pairs = ksubsets(n, 2);
        for rs in &pairs {
            let (r, s) = (rs[0], rs[1]);
            let fwd = gassner_word(n, &BraidWord::generator(r, s)).exterior_power(2);
            let inv =
                gassner_word(n, &BraidWord::generator(r, s).inverse()).exterior_power(2);
            let trs_inv = LaurentPoly::term(
                n,
                {
                    let mut e = vec![0i32; n];
                    e[r - 1] = -1;
                    e[s - 1] = -1;
                    e
                },
                BigInt::one().into(),
            );
            for (row, ij) in pairs.iter().enumerate() {
                let (i, j) = (ij[0], ij[1]);
                let w = w_table(n, r, s, i, j);
                case_hits += 2; // forward and inverse rows both checked
                for (col, pq) in pairs.iter().enumerate() {
                    let mut expect_fwd = LaurentPoly::zero(n);
                    let mut expect_inv = LaurentPoly::zero(n);
                    if col == row {
                        expect_fwd = LaurentPoly::one(n);
                        expect_inv = LaurentPoly::one(n);
                    }
                    for ((a, b), f) in &w {
                        if pq[0] == *a && pq[1] == *b {
                            expect_fwd = expect_fwd.add(f);
                            expect_inv = expect_inv.sub(&trs_inv.mul(f));
                        }
                    }
                    assert_eq!(
                        fwd.at(row, col),
                        &expect_fwd,
                        "n={} A[{},{}] row {:?} col {:?}",
                        n,
                        r,
                        s,
                        ij,
                        pq
                    );
                    assert_eq!(
                        inv.at(row, col),
                        &expect_inv,
                        "inverse n={} A[{},{}] row {:?} col {:?}",
                        n,
                        r,
                        s,
                        ij,
                        pq
                    );
                }
            }
        }
    }
    assert!(case_hits >= 500);

    // Gassner multiplicativity and inverses
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let a = random_braid(&mut rng, n, 4);
        let b = random_braid(&mut rng, n, 4);
        assert_eq!(
            gassner_word(n, &a.mul(&b)),
            gassner_word(n, &a).mul(&gassner_word(n, &b))
        );
        assert_eq!(
            gassner_word(n, &a).mul(&gassner_word(n, &a.inverse())),
            RingMatrix::identity(n, n)
        );
    }

    // pure-braid commutation relations: disjoint (s < i) and nested
    // (r < i < j < s) generator pairs commute
    for n in 4..=6usize {
        for rs in ksubsets(n, 2) {
            for ij in ksubsets(n, 2) {
                let (r, s, i, j) = (rs[0], rs[1], ij[0], ij[1]);
                if s < i || (r < i && j < s) {
                    let ab = BraidWord::generator(r, s).mul(&BraidWord::generator(i, j));
                    let ba = BraidWord::generator(i, j).mul(&BraidWord::generator(r, s));
                    assert_eq!(gassner_word(n, &ab), gassner_word(n, &ba));
                }
            }
        }
    }

    // the degree-two comparison map is surjective on every lattice fixture
    for lat in lattice_fixtures() {
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for v in &lat.vertex_sets {
            if v.len() < 3 {
                continue;
            }
            let block = local_chain_map(lat.n, v, 2).eval_at_one();
            let width = block[0].len();
            for c in 0..width {
                cols.push(block.iter().map(|row| row[c].clone()).collect());
            }
        }
        let total = cols.len();
        assert_eq!(rational_rank(&cols), total, "n = {}", lat.n);
    }

    // presentation-size closed forms
    for n in 2..=7usize {
        let p = presentation_free(n);
        assert_eq!((p.relations(), p.generators()), (binomial(n, 3), binomial(n, 2)));
    }
    for (name, at) in [("sixlines.arr", 3), ("a4.arr", 1), ("pappus1.arr", 3)] {
        let lat = lattice2_central(&central(name)).unwrap();
        let (n, w, mono) = real_pipeline(name, at);
        let p = presentation_real(n, &w.vertex_data()).unwrap();
        assert_eq!(p.relations(), binomial(n, 3));
        // generator count is C(lines, 2) - b_2 of the central lattice,
        // which is exactly theta_2
        assert_eq!(p.generators(), binomial(lat.n, 2) - lat.b2());
        assert_eq!(p.generators(), lat.theta2());
        let g = presentation_general(n, &mono);
        let twist_rows: usize = mono.iter().map(|t| t.v_set.len() - 1).sum();
        assert_eq!(g.relations(), twist_rows + binomial(n, 3));
        assert_eq!(g.generators(), binomial(n, 2));
    }
    let p1 = presentation_free(2);
    let p2 = presentation_free(3);
    let prod = presentation_product(&p1, &p2);
    assert_eq!(prod.generators(), p1.generators() + p2.generators());
    assert_eq!(
        prod.relations(),
        p1.relations() + p2.relations() + p1.generators() * 3 + p2.generators() * 2
    );
}

/// Positions of the pairs inside V' within the degree-two wedge block, so
/// the randomized chain-map check can cut Psi_{V,2} down to the local
/// presentation's generator columns.
fn pairs_position(n: usize, v: &[usize]) -> Vec<usize> {
    let idx = arralex::koszul::wedge_submodule_indices(n, &v[1..], 2);
    arralex::koszul::pairs_in_vprime(n, v)
        .iter()
        .map(|p| idx.iter().position(|q| q == p).expect("pair in block"))
        .collect()
}

fn lattice_fixtures() -> Vec<Lattice2> {
    let mut out = vec![Lattice2::parse(&fixture("maclane.lat")).unwrap()];
    for name in ["sixlines.arr", "a4.arr", "diamond.arr", "pappus1.arr", "pappus2.arr"] {
        out.push(lattice2_central(&central(name)).unwrap());
    }
    out
}

#[test]
fn criterion_9_cross_checks() {
    // oracle equivalence on every fixture presentation, k = 2..7; the two
    // Pappus runs are the heavy items, so everything runs on threads
    let mut presentations: Vec<(String, Presentation)> = Vec::new();
    for n in 2..=5usize {
        presentations.push((format!("free {}", n), presentation_free(n)));
    }
    presentations.push((
        "product (1,2,3)".into(),
        presentation_product(
            &presentation_product(&presentation_free(1), &presentation_free(2)),
            &presentation_free(3),
        ),
    ));
    for (name, at) in [
        ("sixlines.arr", 3),
        ("a4.arr", 1),
        ("diamond.arr", 7),
        ("pappus1.arr", 3),
        ("pappus2.arr", 3),
    ] {
        presentations.push((name.into(), real_pres(name, at)));
    }
    let published: Vec<ConjugatedTwist> = fixture("diamond.mono")
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| ConjugatedTwist::parse(l).unwrap())
        .collect();
    presentations.push((
        "diamond.mono".into(),
        presentation_general(6, &published),
    ));
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (name, pres) in &presentations {
            handles.push((name, scope.spawn(move || {
                (
                    chen_ranks(pres, 7).unwrap(),
                    chen_ranks_oracle(pres, 7).unwrap(),
                )
            })));
        }
        for (name, h) in handles {
            let (basis, oracle) = h.join().expect("no panic");
            assert_eq!(basis, oracle, "oracle disagreement on {}", name);
        }
    });

    // theta_2 = C(n,2) - b_2, theta_k >= theta^cc_k, general = real
    for (name, at) in [("sixlines.arr", 3), ("a4.arr", 1), ("diamond.arr", 7)] {
        let lat = lattice2_central(&central(name)).unwrap();
        let (n, w, mono) = real_pipeline(name, at);
        let real = presentation_real(n, &w.vertex_data()).unwrap();
        let ranks = chen_ranks(&real, 7).unwrap();
        assert_eq!(ranks[0], lat.theta2(), "theta_2 on {}", name);
        assert_eq!(ranks[0], binomial(lat.n, 2) - lat.b2());
        for k in 2..=7usize {
            assert!(
                ranks[k - 2] >= lat.theta_cc(k),
                "lower bound fails on {} at k = {}",
                name,
                k
            );
        }
        let general = presentation_general(n, &mono);
        assert_eq!(
            chen_ranks(&general, 7).unwrap(),
            ranks,
            "general/real disagree on {}",
            name
        );
    }
    // the Pappus pair: same cross-checks with a smaller k range, since the
    // general presentation carries all C(8,2) generators
    for (name, at) in [("pappus1.arr", 3), ("pappus2.arr", 3)] {
        let lat = lattice2_central(&central(name)).unwrap();
        let (n, w, mono) = real_pipeline(name, at);
        let real = presentation_real(n, &w.vertex_data()).unwrap();
        let ranks = chen_ranks(&real, 6).unwrap();
        assert_eq!(ranks[0], lat.theta2());
        for k in 2..=6usize {
            assert!(ranks[k - 2] >= lat.theta_cc(k));
        }
        let general = presentation_general(n, &mono);
        assert_eq!(chen_ranks(&general, 6).unwrap(), ranks, "{}", name);
    }

    // cone/decone invariance: ranks are independent of the plane sent to
    // infinity, and coning the presentation changes nothing for k >= 2
    let base = chen_ranks(&real_pres("sixlines.arr", 3), 6).unwrap();
    for at in [1usize, 6] {
        assert_eq!(chen_ranks(&real_pres("sixlines.arr", at), 6).unwrap(), base);
    }
    let coned = presentation_cone(&real_pres("sixlines.arr", 3));
    assert_eq!(chen_ranks(&coned, 6).unwrap(), base);
    let a4_base = chen_ranks(&real_pres("a4.arr", 1), 6).unwrap();
    assert_eq!(
        chen_ranks(&presentation_cone(&real_pres("a4.arr", 1)), 6).unwrap(),
        a4_base
    );

    // the two global theta_3 computations agree on every lattice fixture
    // with a full pipeline
    for (name, at, t3) in [
        ("sixlines.arr", 3, 6usize),
        ("a4.arr", 1, 10),
        ("diamond.arr", 7, 17),
    ] {
        let lat = lattice2_central(&central(name)).unwrap();
        assert_eq!(theta3(&lat), t3);
        let ranks = chen_ranks(&real_pres(name, at), 3).unwrap();
        assert_eq!(ranks[1], t3, "theta_3 mismatch on {}", name);
    }
}
