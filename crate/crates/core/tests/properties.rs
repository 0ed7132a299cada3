//! Randomized invariants over small pure complexes and integer matrices.

use std::sync::Arc;

use facering::analysis::QuotientPresentation;
use facering::complex::SimplicialComplex;
use facering::face_ring::{enumerate_basis, find_characteristic_function, FaceRing, RingElement};
use facering::homology::{chain_complex, poset_betti, reduced_betti};
use facering::linalg::{rational_rank, smith_normal_form, IntMatrix};
use facering::poset::h_vector;
use facering::{GroundRing, SimplicialPoset};
use num_rational::BigRational;
use proptest::prelude::*;

/// A pure complex given by up to six distinct `dim`-subsets of `0..7`.
fn pure_complex() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..=3).prop_flat_map(|size| {
        prop::collection::btree_set(prop::collection::btree_set(0usize..7, size), 1..6)
            .prop_map(|facets| facets.into_iter().map(|f| f.into_iter().collect()).collect())
    })
}

fn poset_of(facets: &[Vec<usize>]) -> SimplicialPoset {
    let labels: Vec<Vec<String>> = facets.iter().map(|f| f.iter().map(|v| v.to_string()).collect()).collect();
    SimplicialPoset::from_facets(&labels).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn element(ring: &FaceRing, weight: usize, picks: &[(usize, i64)]) -> RingElement {
    let basis = ring.basis(weight);
    let mut x = RingElement::zero(weight);
    if basis.is_empty() {
        return x;
    }
    for &(i, c) in picks {
        x.add_term(basis.get(i % basis.len()).clone(), BigRational::from_integer(c.into()));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h_vector_sums_to_the_facet_count(facets in pure_complex()) {
        let s = poset_of(&facets);
        let f = s.f_vector();
        let h = h_vector(&f, s.n());
        prop_assert_eq!(h[0], 1);
        prop_assert_eq!(h.iter().sum::<i64>(), f.0[s.n()] as i64);
    }

    #[test]
    fn lower_ideals_are_boolean(facets in pure_complex()) {
        let s = poset_of(&facets);
        for j in s.cells() {
            let r = s.rank(j) as u64;
            for k in 0..=r {
                let count = s.below(j).iter().filter(|&&i| s.rank(i) as u64 == k).count() as u64;
                prop_assert_eq!(count, binomial(r, k));
            }
        }
    }

    #[test]
    fn meet_join_is_symmetric(facets in pure_complex()) {
        let s = poset_of(&facets);
        let cells: Vec<_> = s.cells().collect();
        for &a in &cells {
            for &b in &cells {
                let ab = s.meet_join(a, b).unwrap();
                prop_assert_eq!(&ab, &s.meet_join(b, a).unwrap());
                if s.le(a, b) {
                    prop_assert_eq!(ab.joins, vec![b]);
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(facets in pure_complex()) {
        let s = poset_of(&facets);
        let f = s.f_vector();
        let chi: i64 = (1..f.0.len()).map(|i| if i % 2 == 1 { f.0[i] as i64 } else { -(f.0[i] as i64) }).sum();
        let betti = poset_betti(&s.barycentric_subdivision(), s.n(), GroundRing::Integer);
        let alternating: i64 = betti.betti.iter().enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi - 1, alternating);
    }

    #[test]
    fn subdivision_preserves_homology(facets in pure_complex()) {
        let s = poset_of(&facets);
        let direct = SimplicialComplex::from_facets(s.vertex_count(), &s.facet_vertex_sets());
        let sd = s.barycentric_subdivision();
        for ring in [GroundRing::Rational, GroundRing::Integer] {
            prop_assert_eq!(reduced_betti(&direct, ring).resized(s.n()), poset_betti(&sd, s.n(), ring));
        }
        chain_complex(&sd.complex).verify().unwrap();
    }

    #[test]
    fn dual_faces_have_the_expected_dimension(facets in pure_complex()) {
        let s = poset_of(&facets);
        let sd = s.barycentric_subdivision();
        for face in s.proper_cells() {
            let (g, dg) = s.dual_face_pair(&sd, face).unwrap();
            prop_assert_eq!(g.dim(), Some(s.n() - s.rank(face)));
            prop_assert!(dg.is_subcomplex_of(&g));
        }
    }

    #[test]
    fn hilbert_function_matches_the_generating_function(facets in pure_complex()) {
        let s = poset_of(&facets);
        let f = s.f_vector();
        for k in 0..=s.n() + 1 {
            let expected: u64 = if k == 0 {
                1
            } else {
                (1..f.0.len()).map(|i| f.0[i] * binomial(k as u64 - 1, i as u64 - 1)).sum()
            };
            prop_assert_eq!(enumerate_basis(&s, k).len() as u64, expected);
        }
    }

    #[test]
    fn face_ring_is_commutative_and_associative(
        facets in pure_complex(),
        weights in (0usize..3, 0usize..3, 0usize..3),
        picks in prop::collection::vec((0usize..100, -3i64..=3), 3..9),
    ) {
        let ring = FaceRing::new(Arc::new(poset_of(&facets)));
        let x = element(&ring, weights.0, &picks[0..1 + picks.len() / 3]);
        let y = element(&ring, weights.1, &picks[picks.len() / 3..]);
        let z = element(&ring, weights.2, &picks[1..]);
        prop_assert_eq!(ring.multiply(&x, &y).unwrap(), ring.multiply(&y, &x).unwrap());
        let left = ring.multiply(&ring.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = ring.multiply(&x, &ring.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn quotient_vanishes_above_the_top_degree(facets in pure_complex(), seed in any::<u64>()) {
        let s = Arc::new(poset_of(&facets));
        let lambda = find_characteristic_function(&s, GroundRing::Rational, seed).unwrap();
        let pres = QuotientPresentation::build(Arc::new(FaceRing::new(s.clone())), &lambda).unwrap();
        prop_assert_eq!(pres.dims()[s.n() + 1], 0);
        // reduction is idempotent
        let x = element(pres.ring(), 1, &[(0, 1), (3, -2), (5, 1)]);
        let once = pres.reduce(&x);
        prop_assert_eq!(pres.reduce(&pres.lift(1, &once)), once);
    }

    #[test]
    fn smith_rank_equals_rational_rank(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..6)) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m, true);
        prop_assert_eq!(snf.rank(), rational_rank(&m));
        let product = snf.left.as_ref().unwrap().mul(&m).mul(snf.right.as_ref().unwrap());
        for i in 0..product.rows() {
            for j in 0..product.cols() {
                let expected = if i == j && i < snf.rank() { snf.diagonal[i].clone() } else { 0.into() };
                prop_assert_eq!(product.get(i, j), &expected);
            }
        }
    }
}
