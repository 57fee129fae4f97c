//! Property tests for the Möbius layer and the coordinate constructions.

use bgroup_core::moebius::{cross_ratio, Classification, Cplx, ExtComplex, MoebiusMap};
use bgroup_core::triangle::Nu;
use bgroup_core::{bgroups, verify};
use proptest::prelude::*;

fn finite(re: f64, im: f64) -> ExtComplex {
    ExtComplex::finite(re, im)
}

fn arb_cplx() -> impl Strategy<Value = Cplx> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Cplx::new(re, im))
}

/// A well-conditioned random Möbius map.
fn arb_map() -> impl Strategy<Value = MoebiusMap> {
    (arb_cplx(), arb_cplx(), arb_cplx(), arb_cplx())
        .prop_filter_map("nonsingular", |(a, b, c, d)| {
            if (a * d - b * c).norm() > 0.1 {
                MoebiusMap::new(a, b, c, d).ok()
            } else {
                None
            }
        })
}

fn arb_point() -> impl Strategy<Value = ExtComplex> {
    prop_oneof![
        9 => (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(re, im)| finite(re, im)),
        1 => Just(ExtComplex::Infinity),
    ]
}

/// The composition contract at scale: 1000 seeded
/// random (M, N, z) triples with chordal error at most 1e-9.
#[test]
fn associativity_thousand_samples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1000);
    let mut done = 0;
    while done < 1000 {
        let mut e = || Cplx::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (a, b, c, d) = (e(), e(), e(), e());
        let (a2, b2, c2, d2) = (e(), e(), e(), e());
        let z = ExtComplex::Finite(e());
        if (a * d - b * c).norm() < 0.1 || (a2 * d2 - b2 * c2).norm() < 0.1 {
            continue;
        }
        let m = MoebiusMap::new(a, b, c, d).unwrap();
        let n = MoebiusMap::new(a2, b2, c2, d2).unwrap();
        let lhs = m.compose(&n).apply(z);
        let rhs = m.apply(n.apply(z));
        assert!(lhs.chordal(&rhs) <= 1e-9, "{} vs {}", lhs, rhs);
        done += 1;
    }
}

/// The Patterson map is affine and injective, and keeps each coordinate
/// in the upper half plane.
#[test]
fn patterson_map_is_affine_and_injective() {
    use bgroup_core::patterson::patterson_map;
    let a = [Cplx::new(0.1, 2.0), Cplx::new(-1.0, 3.0), Cplx::new(2.0, 4.0)];
    let b = [Cplx::new(0.4, 1.0), Cplx::new(0.0, 2.5), Cplx::new(-2.0, 6.0)];
    let fa = patterson_map(a[0], a[1], a[2]);
    let fb = patterson_map(b[0], b[1], b[2]);
    // affine: f((a+b)/2) = (f(a)+f(b))/2
    let mid = patterson_map(
        (a[0] + b[0]) / 2.0,
        (a[1] + b[1]) / 2.0,
        (a[2] + b[2]) / 2.0,
    );
    for k in 0..3 {
        assert!(((fa[k] + fb[k]) / 2.0 - mid[k]).norm() < 1e-12);
        assert!(fa[k].im > 0.0 && fb[k].im > 0.0);
        assert!((fa[k] - fb[k]).norm() > 1e-9); // distinct inputs stay distinct
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn compose_is_application_composition(m in arb_map(), n in arb_map(), z in arb_point()) {
        let lhs = m.compose(&n).apply(z);
        let rhs = m.apply(n.apply(z));
        prop_assert!(lhs.chordal(&rhs) <= 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn inverse_round_trip(m in arb_map(), z in arb_point()) {
        let back = m.inverse().apply(m.apply(z));
        prop_assert!(back.chordal(&z) <= 1e-8);
        prop_assert!(m.compose(&m.inverse()).is_identity(1e-10));
    }

    #[test]
    fn cross_ratio_is_moebius_invariant(
        t in arb_map(),
        a in arb_point(), b in arb_point(), c in arb_point(), z in arb_point(),
    ) {
        prop_assume!(a != b && b != c && a != c);
        let plain = cross_ratio(a, b, c, z).unwrap();
        let moved = cross_ratio(t.apply(a), t.apply(b), t.apply(c), t.apply(z)).unwrap();
        prop_assert!(plain.chordal(&moved) <= 1e-9);
    }

    #[test]
    fn parabolic_sqrt_squares_back(t in arb_map(), shift in -4.0..4.0f64) {
        prop_assume!(shift.abs() > 1e-3);
        // every parabolic is a conjugated translation
        let p = MoebiusMap::translation(Cplx::new(shift, 0.0)).conjugate_by(&t);
        let r = p.parabolic_sqrt().unwrap();
        prop_assert!(r.compose(&r).psl_eq(&p, 1e-7));
        prop_assert_eq!(r.classify_coarse(), Classification::Parabolic);
        let fp = p.fixed_points().unwrap();
        let fr = r.fixed_points().unwrap();
        prop_assert_eq!(fp.len(), 1);
        prop_assert!(fp[0].chordal(&fr[0]) <= 1e-5);
    }

    #[test]
    fn fixed_point_count_matches_classification(m in arb_map()) {
        prop_assume!(!m.is_identity(1e-9));
        let count = m.fixed_points().unwrap().len();
        match m.classify_coarse() {
            Classification::Parabolic => prop_assert_eq!(count, 1),
            Classification::Elliptic { .. } | Classification::Loxodromic => {
                prop_assert_eq!(count, 2)
            }
            Classification::Identity => unreachable!(),
        }
        for fp in m.fixed_points().unwrap() {
            prop_assert!(m.apply(fp).chordal(&fp) <= 1e-6);
        }
    }

    #[test]
    fn psl_eq_ignores_sign(m in arb_map()) {
        let (a, b, c, d) = m.entries();
        let neg = MoebiusMap::new(-a, -b, -c, -d).unwrap();
        prop_assert!(m.psl_eq(&neg, 1e-12));
    }

    #[test]
    fn plumbing_parameters_lie_in_the_punctured_disc(
        re in -6.0..6.0f64, im in 1e-2..6.0f64, nu in 2u64..40,
    ) {
        let z = Cplx::new(re, im);
        let t = bgroups::plumbing_param_0_4(z).unwrap();
        prop_assert!(t.norm() > 0.0 && t.norm() < 1.0);
        let t = bgroups::plumbing_param_1_1(z, Nu::Finite(nu)).unwrap();
        prop_assert!(t.norm() > 0.0 && t.norm() < 1.0);
        let t = bgroups::plumbing_param_1_1(z, Nu::Infinity).unwrap();
        prop_assert!(t.norm() > 0.0 && t.norm() < 1.0);
    }

    #[test]
    fn hnn_relation_holds_across_coordinates(
        re in -4.0..4.0f64, im in 0.5..6.0f64, nu in 2u64..20,
    ) {
        let tau = Cplx::new(re, im);
        let g = bgroups::build_1_1(Nu::Finite(nu), tau).unwrap();
        let report = verify::check_relations(&g, 1e-9).unwrap();
        prop_assert!(report.all_passed());
    }

    #[test]
    fn exclusion_witness_identity_everywhere(
        re in -4.0..4.0f64, im in 1e-2..4.0f64,
        n3 in 2u64..12, n4 in 2u64..12,
    ) {
        prop_assume!(!(n3 == 2 && n4 == 2));
        let nu = [Nu::Infinity, Nu::Infinity, Nu::Finite(n3), Nu::Finite(n4)];
        let alpha = Cplx::new(re, im);
        let s = Nu::Finite(n3).q() + Nu::Finite(n4).q();
        let (_, got) = bgroups::exclusion_witness_0_4(&nu, alpha).unwrap();
        prop_assert!((got - (alpha.im - 1.0 / s)).abs() <= 1e-10);
    }
}
