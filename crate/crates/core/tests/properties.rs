mod common;

use common::*;
use ghzsym::geometry::{
    self, boundary_point, boundary_tangent, classify, in_triangle, is_full_rank,
    line_curve_intersection, BoundaryParam, SloccClass,
};
use ghzsym::linalg::{expectation, hermitian_eigenvalues, ComplexMatrix8, DensityMatrix};
use ghzsym::symmetry::{self, reconstruct_state, twirl_coordinates, SymCoords, APEX_Y, BOTTOM_Y};
use ghzsym::witness::{self, witness_from_line, Witness};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bp(v: f64) -> BoundaryParam {
    BoundaryParam::new(v).unwrap()
}

/// Barycentric point in the closed triangle.
fn triangle_point() -> impl Strategy<Value = SymCoords> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(mut u, mut w)| {
        if u + w > 1.0 {
            u = 1.0 - u;
            w = 1.0 - w;
        }
        let (a, b, c) = (SymCoords::BOTTOM, SymCoords::GHZ_PLUS, SymCoords::GHZ_MINUS);
        SymCoords::new(
            a.x + u * (b.x - a.x) + w * (c.x - a.x),
            a.y + u * (b.y - a.y) + w * (c.y - a.y),
        )
    })
}

fn seeded_rng() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn density_spectrum_sums_to_one(mut rng in seeded_rng()) {
        let rho = random_density_matrix(&mut rng);
        let eig = rho.eigenvalues();
        prop_assert!((eig.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        prop_assert!(eig.iter().all(|&e| e >= -1e-10));
    }

    #[test]
    fn partial_transpose_is_involution(mut rng in seeded_rng(), k in 1usize..=3) {
        let m = random_complex(&mut rng);
        let twice = m.partial_transpose(k).unwrap().partial_transpose(k).unwrap();
        prop_assert_eq!(twice, m);
        let rho = random_density_matrix(&mut rng);
        let pt = rho.matrix().partial_transpose(k).unwrap();
        prop_assert!(pt.is_hermitian());
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_bilinear(mut rng in seeded_rng(), s in -3.0..3.0f64, p in 0.0..=1.0f64) {
        let (m1, m2) = (random_hermitian(&mut rng), random_hermitian(&mut rng));
        let (r1, r2) = (random_density_matrix(&mut rng), random_density_matrix(&mut rng));
        let combo = m1.scale(s) + m2;
        let lhs = expectation(&combo, &r1).unwrap();
        let rhs = s * expectation(&m1, &r1).unwrap() + expectation(&m2, &r1).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));

        let mix = r1.mix(&r2, p).unwrap();
        let lhs = expectation(&m1, &mix).unwrap();
        let rhs = (1.0 - p) * expectation(&m1, &r1).unwrap() + p * expectation(&m1, &r2).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn hermitian_spectrum_is_scale_covariant(mut rng in seeded_rng(), s in 0.1..10.0f64) {
        let m = random_hermitian(&mut rng);
        let a = hermitian_eigenvalues(&m).unwrap();
        let b = hermitian_eigenvalues(&m.scale(s)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((s * x - y).abs() <= 1e-11 * s * m.frobenius_norm());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn twirl_round_trip(p in triangle_point()) {
        let rho = reconstruct_state(p).unwrap();
        let back = twirl_coordinates(&rho);
        prop_assert!((back.x - p.x).abs() <= 1e-14 && (back.y - p.y).abs() <= 1e-14);
    }

    #[test]
    fn boundary_is_mirror_symmetric(v in -1.0..=1.0f64) {
        let (a, b) = (boundary_point(bp(v)), boundary_point(bp(-v)));
        prop_assert_eq!(b.x, -a.x);
        prop_assert_eq!(b.y, a.y);
    }

    #[test]
    fn witness_mirror_covariance(a in 0.1..2.0f64, b in -3.0..1.0f64, c in -3.0..1.0f64, p in triangle_point()) {
        prop_assume!(a + (b + c) / 8.0 > 0.0);
        let w = Witness::new(a, b, c).unwrap();
        prop_assert_eq!(w.mirror().expectation_sym(p.mirror()), w.expectation_sym(p));
        prop_assert_eq!(w.mirror().mirror(), w);
    }

    #[test]
    fn tangent_witness_vanishes_at_tangent_point(v in -1.0..=1.0f64) {
        let w = witness::ghz_tangent_witness(bp(v));
        prop_assert!(w.expectation_sym(boundary_point(bp(v))).abs() <= 1e-12);
        prop_assert!(boundary_tangent(bp(v)).eval(boundary_point(bp(v))).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_preserves_twirl_coordinates(mut rng in seeded_rng()) {
        let rho = random_density_matrix(&mut rng);
        let e = symmetry::random_element(&mut rng);
        let rotated = DensityMatrix::new(e.conjugate(rho.matrix())).unwrap();
        let (a, b) = (twirl_coordinates(&rho), twirl_coordinates(&rotated));
        prop_assert!((a.x - b.x).abs() <= 1e-10 && (a.y - b.y).abs() <= 1e-10);
    }

    #[test]
    fn reconstructed_states_are_valid_and_rank_deficient_on_border(p in triangle_point()) {
        let rho = reconstruct_state(p).unwrap();
        let min = rho.eigenvalues()[0];
        prop_assert!(min >= -1e-10);
        prop_assert_eq!(min > 1e-12, is_full_rank(p));
    }

    #[test]
    fn classes_grow_along_rays(p in triangle_point(), t in 0.0..1.0f64) {
        // ray from the origin through p stays in the triangle (star-shaped about the origin)
        let inner = SymCoords::ORIGIN.lerp(p, t);
        prop_assert!(classify(inner).unwrap() <= classify(p).unwrap());
    }

    #[test]
    fn at_most_w_region_is_convex(p in triangle_point(), q in triangle_point(), t in 0.0..=1.0f64) {
        prop_assume!(classify(p).unwrap() <= SloccClass::WClass);
        prop_assume!(classify(q).unwrap() <= SloccClass::WClass);
        prop_assert!(classify(p.lerp(q, t)).unwrap() <= SloccClass::WClass);
    }

    #[test]
    fn tangents_support_the_at_most_w_region(v in -1.0..=1.0f64, q in triangle_point()) {
        prop_assume!(classify(q).unwrap() <= SloccClass::WClass);
        prop_assert!(boundary_tangent(bp(v)).eval(q) >= -1e-10);
    }

    #[test]
    fn crossing_lies_on_segment(q in triangle_point(), t in 0.0..0.4f64, s in 0.0..=1.0f64) {
        // noise on the vertical axis (p0), GHZ target (p1) near the right corner
        let p1 = SymCoords::GHZ_PLUS.lerp(q, t);
        prop_assume!(p1.x > 0.0 && classify(p1).unwrap() == SloccClass::GhzClass);
        let p0 = SymCoords::new(0.0, BOTTOM_Y + s * (APEX_Y - BOTTOM_Y) * 0.9);
        let v = line_curve_intersection(p0, p1).unwrap();
        let b = boundary_point(v);
        let (dx, dy) = (p1.x - p0.x, p1.y - p0.y);
        let t = ((b.x - p0.x) * dx + (b.y - p0.y) * dy) / (dx * dx + dy * dy);
        let foot = p0.lerp(p1, t);
        prop_assert!(foot.distance(b) <= 1e-10);
        prop_assert!((-1e-10..=1.0 + 1e-10).contains(&t));
    }

    #[test]
    fn line_witness_correspondence(v in -1.0..=1.0f64) {
        let w = witness::ghz_tangent_witness(bp(v));
        let back = witness_from_line(&w.zero_line().unwrap(), SloccClass::WClass).unwrap();
        prop_assert!(back.proportionality(&w, 1e-9).is_some());

        let from_tangent = witness_from_line(&boundary_tangent(bp(v)), SloccClass::WClass).unwrap();
        prop_assert!(from_tangent.proportionality(&w, 1e-9).is_some());
    }

    #[test]
    fn tangent_witnesses_have_full_rank_zeros(v in -0.999..0.999f64) {
        prop_assume!(v.abs() > 1e-3);
        let w = witness::ghz_tangent_witness(bp(v));
        let p = witness::full_rank_zero_point(&w).expect("full-rank zero");
        prop_assert!(is_full_rank(p) && in_triangle(p));
        prop_assert!(w.expectation_sym(p).abs() <= 1e-12);
    }
}

#[test]
fn witness_correspondence_for_explicit_witnesses() {
    for (w, bound) in [
        (witness::bisep_sep_witness(), SloccClass::Separable),
        (witness::genuine_witness(), SloccClass::Biseparable),
        (witness::projection_witness(), SloccClass::WClass),
        (witness::ghz_tangent_witness(bp(1.0)), SloccClass::WClass),
    ] {
        for w in [w, w.mirror()] {
            let back = witness_from_line(&w.zero_line().unwrap(), bound).unwrap();
            assert!(back.proportionality(&w, 1e-12).is_some(), "{w:?}");
        }
    }
}

#[test]
fn ppt_matches_numeric_partial_transpose() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..500 {
        let p = geometry::uniform_point(&mut rng);
        let rho = reconstruct_state(p).unwrap();
        let min = hermitian_eigenvalues(&rho.matrix().partial_transpose(1).unwrap()).unwrap()[0];
        assert_eq!(min >= -1e-10, geometry::is_ppt(p), "{p:?} min {min}");
    }
}

#[test]
fn sampled_twirl_preserves_witness_expectation() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let ms: Vec<ComplexMatrix8> = [
        witness::bisep_sep_witness(),
        witness::genuine_witness(),
        witness::ghz_tangent_witness(bp(0.6)),
    ]
    .iter()
    .map(Witness::to_matrix)
    .collect();
    for seed in 0..3 {
        let rho = random_density_matrix(&mut rng);
        let twirled = symmetry::sampled_twirl(&rho, 100_000, seed).unwrap();
        for m in &ms {
            let (a, b) = (
                expectation(m, &rho).unwrap(),
                expectation(m, &twirled).unwrap(),
            );
            assert!((a - b).abs() <= 0.01);
        }
    }
}
