//! The generic constructions also run in `f32`.

use boys_surface::assembly::{boundary_circuit_labels, build_h, build_m, check_symmetry};
use boys_surface::cone_pizza::{boundary_cone_report, build_pizza};
use boys_surface::development::{develop, total_geodesic_curvature};
use boys_surface::octa_graph::{
    build_octahedral_graph, expand_circuit, symmetric_matching, symmetry_group,
};

#[test]
fn band_and_closed_surface_in_f32() {
    for n in [2, 4, 8] {
        let m = build_m::<f32>(n).unwrap();
        assert_eq!(m.euler_characteristic().unwrap(), 0);
        assert_eq!(m.boundary_components().unwrap().len(), 1);
        assert!(!m.orientable().unwrap());
        let boy = build_pizza(&m, 10.0f32).unwrap().union;
        assert_eq!(boy.euler_characteristic().unwrap(), 1);
        assert!(boy.boundary_components().unwrap().is_empty());
    }
    assert_eq!(
        build_h::<f32>(4).unwrap().euler_characteristic().unwrap(),
        -3
    );
}

#[test]
fn labels_symmetry_and_cone_in_f32() {
    let m = build_m::<f32>(8).unwrap();
    let expected = expand_circuit(&symmetric_matching(&build_octahedral_graph())).unwrap();
    assert!(boundary_circuit_labels(&m).unwrap().equivalent(&expected));
    assert!(symmetry_group().iter().all(|t| check_symmetry(&m, t)));
    assert!(boundary_cone_report(&m).unwrap().friendly);
}

#[test]
fn development_in_f32() {
    let layout = develop::<f32>(32).unwrap();
    let total = total_geodesic_curvature(&layout).unwrap();
    assert!((total - 9.0 * std::f64::consts::PI).abs() < 0.05, "{total}");
}
