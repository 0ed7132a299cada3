//! Worked examples on the bundled corpus, one module at a time.

mod common;

use std::sync::Arc;

use facering::analysis::{
    h_double_prime, h_prime, integral_pairing, interior_socle, pairing_ranks, quotient_dimensions,
    NsQuotient, QuotientPresentation, Status,
};
use facering::complex::SimplicialComplex;
use facering::face_ring::{find_characteristic_function, CharacteristicFunction, FaceRing};
use facering::homology::{
    buchsbaum_check, chain_complex, manifold_check, poset_betti, reduced_betti, relative_betti,
};
use facering::input::load_poset;
use facering::poset::{h_vector, PosetError};
use facering::{full_report, FVector, FaceId, GroundRing, ReportOptions, SimplicialPoset};
use num_bigint::BigInt;

use common::{antipodal_lambda, load};

fn id(s: &SimplicialPoset, label: &str) -> FaceId {
    s.find(label).unwrap_or_else(|| panic!("no cell {label}"))
}

#[test]
fn f_vectors_of_the_corpus() {
    assert_eq!(load("boundary_tetrahedron").f_vector().0, vec![1, 4, 6, 4]);
    assert_eq!(load("octahedron").f_vector().0, vec![1, 6, 12, 8]);
    assert_eq!(load("torus7").f_vector().0, vec![1, 7, 21, 14]);
    assert_eq!(load("circle_poset").f_vector().0, vec![1, 2, 2]);
    assert_eq!(load("rp2_6").f_vector().0, vec![1, 6, 15, 10]);
    assert_eq!(load("point").f_vector().0, vec![1, 1]);
}

#[test]
fn h_vectors_from_f_vectors() {
    assert_eq!(h_vector(&FVector(vec![1, 4, 6, 4]), 3), vec![1, 1, 1, 1]);
    assert_eq!(h_vector(&FVector(vec![1, 7, 21, 14]), 3), vec![1, 4, 10, -1]);
    assert_eq!(h_vector(&FVector(vec![1, 6, 15, 10]), 3), vec![1, 3, 6, 0]);
    assert_eq!(h_vector(&FVector(vec![1, 1]), 1), vec![1, 0]);
}

#[test]
fn invalid_inputs_are_rejected_with_the_failed_axiom() {
    let text = std::fs::read_to_string(common::data_path("doubled_edge_triangle")).unwrap();
    let err = load_poset(&text).unwrap_err();
    assert!(matches!(err, PosetError::NonBoolean { ref cell, .. } if cell == "t"), "{err}");
    let err = SimplicialPoset::from_facets(&[vec!["1", "2"], vec!["1", "2", "3"]]).unwrap_err();
    assert!(matches!(err, PosetError::NonPureFacets { .. }), "{err}");
}

#[test]
fn circle_poset_structure() {
    let s = load("circle_poset");
    assert!(!s.is_simplicial_complex());
    let mj = s.meet_join(id(&s, "u"), id(&s, "v")).unwrap();
    assert_eq!(mj.meet, Some(FaceId::BOTTOM));
    assert_eq!(mj.joins, vec![id(&s, "a"), id(&s, "b")]);

    let sd = s.barycentric_subdivision();
    assert_eq!((sd.complex.count(0), sd.complex.count(1)), (4, 4));
    let (g, dg) = s.dual_face_pair(&sd, id(&s, "u")).unwrap();
    assert_eq!((g.count(0), g.count(1)), (3, 2));
    assert_eq!((dg.count(0), dg.count(1)), (2, 0));
}

#[test]
fn octahedron_structure() {
    let s = load("octahedron");
    // 1 and 4 are antipodal
    assert!(s.meet_join(id(&s, "1"), id(&s, "4")).unwrap().joins.is_empty());
    let v = id(&s, "1");
    let mj = s.meet_join(v, v).unwrap();
    assert_eq!((mj.meet, mj.joins), (Some(v), vec![v]));

    let sd = s.barycentric_subdivision();
    let (g, dg) = s.dual_face_pair(&sd, v).unwrap();
    assert_eq!(g.dim(), Some(2));
    assert_eq!(dg.dim(), Some(1));
    assert_eq!((dg.count(0), dg.count(1)), (8, 8));
    let rel = relative_betti(&g, &dg, GroundRing::Integer).unwrap();
    assert_eq!(rel.betti, vec![0, 0, 1]);
    assert!(!rel.has_torsion());

    let facet = id(&s, "1,2,3");
    let (g, dg) = s.dual_face_pair(&sd, facet).unwrap();
    assert_eq!(g.count(0), 1);
    assert!(dg.is_empty());
    assert!(matches!(s.dual_face_pair(&sd, FaceId::BOTTOM), Err(PosetError::BottomHasNoDualFace)));
}

#[test]
fn subdivision_of_triangle_boundary_and_point() {
    let tri = SimplicialPoset::from_facets(&[vec!["1", "2"], vec!["2", "3"], vec!["1", "3"]]).unwrap();
    let sd = tri.barycentric_subdivision();
    assert_eq!((sd.complex.count(0), sd.complex.count(1)), (6, 6));
    let cx = chain_complex(&sd.complex);
    assert_eq!((cx.boundary(1).rows(), cx.boundary(1).cols()), (6, 6));
    assert_eq!(facering::linalg::rational_rank(cx.boundary(1)), 5);

    let p = load("point");
    let sd = p.barycentric_subdivision();
    assert_eq!(sd.complex.count(0), 1);
    let cx = chain_complex(&sd.complex);
    assert_eq!(cx.boundary(0).rows(), 1);
    assert_eq!(cx.boundary(0).get(0, 0), &BigInt::from(1));
}

#[test]
fn boundary_squares_vanish_on_the_octahedron_subdivision() {
    let sd = load("octahedron").barycentric_subdivision();
    chain_complex(&sd.complex).verify().unwrap();
}

#[test]
fn relative_homology_of_small_pairs() {
    let interval = SimplicialComplex::from_facets(2, &[vec![0, 1]]);
    let ends = SimplicialComplex::from_facets(2, &[vec![0], vec![1]]);
    assert_eq!(relative_betti(&interval, &ends, GroundRing::Integer).unwrap().betti, vec![0, 1]);
    let point = SimplicialComplex::from_facets(1, &[vec![0]]);
    assert!(relative_betti(&point, &point, GroundRing::Integer).unwrap().betti.iter().all(|&b| b == 0));
    assert!(relative_betti(&ends, &interval, GroundRing::Rational).is_err());
}

#[test]
fn reduced_betti_numbers() {
    let betti = |name: &str, ring| {
        let s = load(name);
        poset_betti(&s.barycentric_subdivision(), s.n(), ring)
    };
    assert_eq!(betti("octahedron", GroundRing::Rational).betti, vec![0, 0, 1]);
    assert_eq!(betti("torus7", GroundRing::Rational).betti, vec![0, 2, 1]);
    assert_eq!(betti("rp2_6", GroundRing::Rational).betti, vec![0, 0, 0]);
    let rp2 = betti("rp2_6", GroundRing::Integer);
    assert_eq!(rp2.betti, vec![0, 0, 0]);
    assert_eq!(rp2.torsion, vec![vec![], vec![BigInt::from(2)], vec![]]);
    assert_eq!(betti("circle_poset", GroundRing::Integer).betti, vec![0, 1]);

    // the complex itself agrees with its subdivision
    let s = load("torus7");
    let direct = SimplicialComplex::from_facets(s.vertex_count(), &s.facet_vertex_sets());
    assert_eq!(reduced_betti(&direct, GroundRing::Integer), betti("torus7", GroundRing::Integer));
}

#[test]
fn buchsbaum_and_manifold_classification() {
    for name in ["torus7", "boundary_tetrahedron", "octahedron", "rp2_6", "circle_poset"] {
        assert!(buchsbaum_check(&load(name), GroundRing::Rational).buchsbaum, "{name}");
    }
    let bowtie = buchsbaum_check(&load("bowtie"), GroundRing::Rational);
    assert!(!bowtie.buchsbaum);
    assert_eq!(bowtie.defects.len(), 1);
    assert_eq!(bowtie.defects[0].face, "1");
    assert_eq!(bowtie.defects[0].groups[0].0, 1);

    let m = manifold_check(&load("octahedron"), GroundRing::Rational);
    assert_eq!((m.connected, m.closed_homology_manifold, m.orientable), (true, true, Some(true)));
    let m = manifold_check(&load("rp2_6"), GroundRing::Rational);
    assert_eq!((m.connected, m.closed_homology_manifold, m.orientable), (true, true, Some(false)));
    let m = manifold_check(&load("rp2_6"), GroundRing::Integer);
    assert_eq!(m.orientable, Some(false));
    let m = manifold_check(&load("bowtie"), GroundRing::Rational);
    assert_eq!((m.connected, m.closed_homology_manifold, m.orientable), (true, false, None));
}

#[test]
fn h_prime_and_h_double_prime() {
    let hp = h_prime(&[1, 4, 10, -1], &[0, 2, 1], 3);
    assert_eq!(hp, vec![1, 4, 10, 1]);
    assert_eq!(h_double_prime(&hp, &[0, 2, 1], 3), vec![1, 4, 4, 1]);
    assert_eq!(h_prime(&[1, 3, 6, 0], &[0, 0, 0], 3), vec![1, 3, 6, 0]);
    assert_eq!(h_double_prime(&[1, 3, 6, 0], &[0, 0, 0], 3), vec![1, 3, 6, 0]);
    assert_eq!(h_prime(&[1, 1, 1, 1], &[0, 0, 1], 3), vec![1, 1, 1, 1]);
}

#[test]
fn quotient_dimensions_on_examples() {
    let oct = load("octahedron");
    let lambda = antipodal_lambda(&oct, GroundRing::Rational);
    assert_eq!(quotient_dimensions(oct, &lambda).unwrap(), vec![1, 3, 3, 1, 0]);
    for (name, expected) in [("torus7", vec![1, 4, 10, 1, 0]), ("circle_poset", vec![1, 0, 1, 0])] {
        let s = load(name);
        let lambda = find_characteristic_function(&s, GroundRing::Rational, 0).unwrap();
        assert_eq!(quotient_dimensions(s, &lambda).unwrap(), expected, "{name}");
    }
}

#[test]
fn socle_quotient_and_pairing_on_the_torus() {
    let s = load("torus7");
    let lambda = find_characteristic_function(&s, GroundRing::Rational, 3).unwrap();
    let ring = Arc::new(FaceRing::new(s));
    let pres = QuotientPresentation::build(ring, &lambda).unwrap();
    let socle = interior_socle(&pres).unwrap();
    assert_eq!(socle.dims(), vec![0, 6]);
    assert_eq!(socle.polynomial_socle_dims, vec![0, 6]);
    // socle elements are killed by every generator
    for v in &socle.ring_socle[1] {
        let x = pres.lift(2, v);
        for cell in pres.ring().poset().proper_cells().collect::<Vec<_>>() {
            let y = pres.ring().multiply(&pres.ring().generator(cell), &x).unwrap();
            assert!(pres.in_theta(&y) || y.weight() > pres.n());
        }
    }
    let a = NsQuotient::new(&pres, &socle);
    assert_eq!(a.dims(), vec![1, 4, 4, 1]);
    let pd = pairing_ranks(&a).unwrap();
    assert_eq!(pd.top_dim, 1);
    assert_eq!(pd.pairings.iter().map(|p| p.rank.unwrap()).collect::<Vec<_>>(), vec![1, 4, 4, 1]);
    assert!(pd.poincare_duality);
}

#[test]
fn integral_pairing_of_the_antipodal_octahedron_is_unimodular() {
    let s = load("octahedron");
    let lambda = antipodal_lambda(&s, GroundRing::Integer);
    let ring = FaceRing::new(s);
    let pd = integral_pairing(&ring, &lambda).unwrap();
    assert_eq!(pd.free_ranks, vec![1, 3, 3, 1, 0]);
    assert!(pd.quotient_torsion.iter().all(Vec::is_empty));
    assert_eq!(pd.ns_ranks, vec![1, 3, 3, 1]);
    for det in &pd.determinants {
        let d: i64 = det.as_ref().unwrap().parse().unwrap();
        assert_eq!(d.abs(), 1);
    }
    assert!(pd.unimodular);
}

#[test]
fn rp2_report_blames_orientability() {
    let r = full_report(load("rp2_6"), &ReportOptions::default()).unwrap();
    assert_eq!(r.h_double_prime, vec![1, 3, 6, 0]);
    assert_eq!(r.verdicts.orientable.status, Status::Fail);
    assert_eq!(r.verdicts.poincare_duality.status, Status::Skipped);
    assert!(r.verdicts.poincare_duality.detail.contains("not orientable"));
    assert!(r.verdicts.poincare_duality.detail.contains("asymmetric (1,3,6,0)"));
    assert!(!r.pairing.poincare_duality);
    assert!(!r.verdicts.any_theorem_failed());
}

#[test]
fn bowtie_report_skips_theorem_checks() {
    let r = full_report(load("bowtie"), &ReportOptions::default()).unwrap();
    assert_eq!(r.verdicts.buchsbaum.status, Status::Fail);
    assert_eq!(r.verdicts.schenzel.status, Status::Skipped);
    assert_eq!(r.verdicts.nonnegativity.status, Status::Skipped);
    assert!(!r.verdicts.any_theorem_failed());
}

#[test]
fn torus_report_passes_everything() {
    let r = full_report(load("torus7"), &ReportOptions::default()).unwrap();
    for (name, v) in r.verdicts.all() {
        assert_eq!(v.status, Status::Pass, "{name}: {}", v.detail);
    }
    assert_eq!(r.h_double_prime, vec![1, 4, 4, 1]);
}

#[test]
fn integer_mode_falls_back_when_no_integral_lambda_exists() {
    let opts = ReportOptions { ring: GroundRing::Integer, ..Default::default() };
    let r = full_report(load("torus7"), &opts).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("falling back")));
    assert!(r.pairing.integral.is_none());
    assert!(r.verdicts.poincare_duality.passed());

    let oct = load("octahedron");
    let opts = ReportOptions {
        ring: GroundRing::Integer,
        lambda: Some(antipodal_lambda(&oct, GroundRing::Integer)),
        ..Default::default()
    };
    let r = full_report(oct, &opts).unwrap();
    assert!(r.pairing.integral.as_ref().unwrap().unimodular);
    assert!(r.verdicts.poincare_duality.passed());
}

#[test]
fn user_lambda_gives_the_same_dimension_data() {
    let s = load("torus7");
    let searched = full_report(s.clone(), &ReportOptions { seed: 5, ..Default::default() }).unwrap();
    let doc = searched.lambda.clone();
    let lambda = CharacteristicFunction::from_document(&doc, &s, GroundRing::Rational).unwrap();
    let given =
        full_report(s.clone(), &ReportOptions { lambda: Some(lambda), ..Default::default() }).unwrap();
    assert_eq!(given.quotient_dims, searched.quotient_dims);
    assert_eq!(given.socle_dims, searched.socle_dims);
    assert_eq!(given.ns_quotient_dims, searched.ns_quotient_dims);

    let other = find_characteristic_function(&s, GroundRing::Rational, 99).unwrap();
    let given = full_report(s, &ReportOptions { lambda: Some(other), ..Default::default() }).unwrap();
    assert_eq!(given.quotient_dims, searched.quotient_dims);
}

#[test]
fn dimension_data_is_independent_of_the_seed() {
    let s = load("octahedron");
    let first = full_report(s.clone(), &ReportOptions::default()).unwrap();
    for seed in 1..10 {
        let r = full_report(s.clone(), &ReportOptions { seed, ..Default::default() }).unwrap();
        assert_eq!(r.quotient_dims, first.quotient_dims);
        assert_eq!(r.socle_dims, first.socle_dims);
        let ranks = |r: &facering::AnalysisReport| r.pairing.pairings.iter().map(|p| p.rank).collect::<Vec<_>>();
        assert_eq!(ranks(&r), ranks(&first));
    }
}

#[test]
fn reports_serialize_identically() {
    let a = full_report(load("circle_poset"), &ReportOptions::default()).unwrap().to_json();
    let b = full_report(load("circle_poset"), &ReportOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
    assert!(a.contains("\"poincareDuality\""));
    assert!(!a.contains("timings"));
}
