//! Property-based invariants.

use boys_surface::assembly::{boundary_circuit_labels, build_m, check_symmetry};
use boys_surface::cone_pizza::{build_pizza, cone_friendly};
use boys_surface::export_io::{parse_obj, write_obj};
use boys_surface::geom::{PlaneMotion, Point2, Point3};
use boys_surface::octa_graph::{
    build_octahedral_graph, expand_circuit, symmetric_matching, symmetry_group, Isometry,
};
use boys_surface::rectilinear::{build_m_square, build_omega};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn band_topology_is_resolution_independent(n in 2usize..12) {
        let m = build_m::<f64>(n).unwrap();
        prop_assert_eq!(m.euler_characteristic().unwrap(), 0);
        prop_assert_eq!(m.boundary_components().unwrap().len(), 1);
        prop_assert!(!m.orientable().unwrap());
        let expected = expand_circuit(&symmetric_matching(&build_octahedral_graph())).unwrap();
        prop_assert!(boundary_circuit_labels(&m).unwrap().equivalent(&expected));
    }

    #[test]
    fn orientability_does_not_depend_on_seed_face(n in 2usize..6, seed in any::<prop::sample::Index>()) {
        let m = build_m::<f64>(n).unwrap();
        let t = m.topology().unwrap();
        prop_assert!(!t.orientable_from(seed.index(t.face_count)));
        let sq = build_m_square().topology().unwrap();
        prop_assert!(!sq.orientable_from(seed.index(sq.face_count)));
    }

    #[test]
    fn group_words_preserve_band(word in prop::collection::vec(0usize..2, 0..8), n in 2usize..6) {
        let gens = [Isometry::rho(), Isometry::sigma()];
        let t = word.iter().fold(Isometry::identity(), |acc, &g| gens[g].compose(&acc));
        prop_assert!(symmetry_group().contains(&t));
        prop_assert!(check_symmetry(&build_m::<f64>(n).unwrap(), &t));
    }

    #[test]
    fn closed_surface_independent_of_truncation(t in 1.01f64..1e4, n in 2usize..5) {
        let m = build_m::<f64>(n).unwrap();
        let boy = build_pizza(&m, t).unwrap().union;
        prop_assert_eq!(boy.euler_characteristic().unwrap(), 1);
        prop_assert!(boy.boundary_components().unwrap().is_empty());
        prop_assert!(!boy.orientable().unwrap());
    }

    #[test]
    fn obj_round_trip_preserves_counts(n in 2usize..7) {
        let m = build_m::<f64>(n).unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf, false).unwrap();
        let back = parse_obj(std::str::from_utf8(&buf).unwrap()).unwrap();
        let a = m.topology().unwrap();
        let b = back.topology().unwrap();
        prop_assert_eq!((a.vertex_count, a.edge_count(), a.face_count), (b.vertex_count, b.edge_count(), b.face_count));
    }
}

proptest! {
    #[test]
    fn omega_is_invariant_under_the_group(k in 0usize..6) {
        let o = build_omega();
        let t = symmetry_group()[k];
        prop_assert_eq!(o.mapped(&t), o.cubes.clone());
    }

    #[test]
    fn m_square_topology_is_translation_invariant(v in prop::array::uniform3(-50i64..50)) {
        let m = build_m_square().translated(v);
        let t = m.topology().unwrap();
        prop_assert_eq!(t.euler_characteristic(), 0);
        prop_assert_eq!(t.boundary_loops().unwrap().len(), 1);
        prop_assert!(m.boundary_is_embedded().unwrap());
    }

    #[test]
    fn plane_motions_are_rigid(
        a in -3.0f64..3.0,
        off in prop::array::uniform2(-5.0f64..5.0),
        p in prop::array::uniform2(-5.0f64..5.0),
        q in prop::array::uniform2(-5.0f64..5.0),
        flip in any::<bool>(),
    ) {
        let mut m = PlaneMotion::rotation(a).compose(&PlaneMotion::translation(Point2::new(off[0], off[1])));
        if flip {
            m = PlaneMotion::reflection_across(Point2::new(0.0, 1.0), Point2::new(2.0, -1.0)).compose(&m);
        }
        let (p, q) = (Point2::new(p[0], p[1]), Point2::new(q[0], q[1]));
        prop_assert!((m.apply(p).distance(m.apply(q)) - p.distance(q)).abs() < 1e-9);
        prop_assert!((m.determinant().abs() - 1.0).abs() < 1e-12);
        prop_assert_eq!(m.determinant() < 0.0, flip);
    }

    #[test]
    fn star_shaped_loops_are_cone_friendly(radii in prop::collection::vec(0.5f64..2.0, 5..40), z in -0.5f64..0.5) {
        let k = radii.len();
        let pts: Vec<Point3<f64>> = radii
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let a = std::f64::consts::TAU * i as f64 / k as f64;
                Point3::new(r * a.cos(), r * a.sin(), z * r)
            })
            .collect();
        prop_assert!(cone_friendly(&pts).unwrap().friendly);
    }

    #[test]
    fn doubly_wound_loops_are_not_cone_friendly(k in 4usize..30) {
        let pts: Vec<Point3<f64>> = (0..2 * k)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / k as f64;
                let r = 1.0 + 0.1 * (i / k) as f64;
                Point3::new(r * a.cos(), r * a.sin(), 0.0)
            })
            .collect();
        prop_assert!(!cone_friendly(&pts).unwrap().friendly);
    }
}
