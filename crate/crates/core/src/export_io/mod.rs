//! Mesh files, printable kit pages and the JSON report.

mod kit;
mod obj;
mod report;
mod stl;

pub use kit::{
    export_kit, kit_pages, layout_svg, KitLabel, KitPage, KitPath, Stroke, KIT_MARGIN, KIT_SCALE,
    TAB_FRACTION,
};
pub use obj::{export_obj, parse_obj, read_obj, write_obj, ObjMesh};
pub use report::{
    emit_report, CheckRecord, CircuitRecord, ConfigRecord, DevelopmentRecord, RectilinearRecord,
    Report, SliceRecord, SlicesRecord, SymmetryRecord,
};
pub use stl::{export_stl, parse_stl, read_stl, triangles, write_stl};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{build_m, build_octacross};
    use crate::cone_pizza::build_boys_surface;

    #[test]
    fn obj_round_trip_keeps_topology() {
        let m = build_m::<f64>(3).unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf, false).unwrap();
        let back = parse_obj(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.vertices.len(), m.vertex_count());
        assert_eq!(back.faces.len(), m.face_count());
        let t = back.topology().unwrap();
        assert_eq!(t.euler_characteristic(), 0);
        assert!(!t.orientable());
        assert_eq!(t.boundary_loops().unwrap().len(), 1);
    }

    #[test]
    fn obj_apex_needs_clamp() {
        let boy = build_boys_surface::<f64>(2, 4.0).unwrap();
        let mut buf = Vec::new();
        assert!(matches!(
            write_obj(&boy, &mut buf, false),
            Err(crate::BoyError::VertexAtInfinity)
        ));
        buf.clear();
        write_obj(&boy, &mut buf, true).unwrap();
        let back = parse_obj(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.topology().unwrap().euler_characteristic(), 1);
    }

    #[test]
    fn obj_parser_handles_slashes_and_negative_indices() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2//2 -1\n";
        let m = parse_obj(text).unwrap();
        assert_eq!(m.faces, vec![vec![0, 1, 2]]);
        assert!(parse_obj("v 0 0\n").is_err());
        assert!(parse_obj("v 0 0 0\nf 1 2 3\n").is_err());
    }

    #[test]
    fn stl_round_trip() {
        let c = build_octacross::<f64>(2).unwrap();
        let mut buf = Vec::new();
        write_stl(&c, &mut buf, false).unwrap();
        let tris = parse_stl(&buf).unwrap();
        let expect = triangles(&c, false).unwrap();
        assert_eq!(buf.len(), 84 + 50 * expect.len());
        assert_eq!(tris.len(), expect.len());
        for (a, b) in tris.iter().zip(&expect) {
            for i in 0..3 {
                for k in 0..3 {
                    assert!((a[i][k] as f64 - b[i][k]).abs() < 1e-6);
                }
            }
        }
        assert!(parse_stl(&buf[..buf.len() - 1]).is_err());
    }

    #[test]
    fn kit_pages_fit_and_use_two_strokes() {
        let pages = kit_pages();
        assert_eq!((pages[0].width_mm, pages[0].height_mm), (210.0, 297.0));
        assert_eq!((pages[1].width_mm, pages[1].height_mm), (297.0, 210.0));
        for p in &pages {
            assert!(p.fits());
            let svg = p.to_svg();
            assert!(svg.contains("class=\"cut\""));
            assert!(svg.contains("class=\"slit\""));
            assert!(!svg.contains("class=\"fold\""));
        }
    }

    #[test]
    fn kit_strips_and_annuli_have_model_proportions() {
        let pages = kit_pages();
        let extent = |p: &KitPath| {
            let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
            for q in &p.points {
                for i in 0..2 {
                    lo[i] = lo[i].min(q[i]);
                    hi[i] = hi[i].max(q[i]);
                }
            }
            [hi[0] - lo[0], hi[1] - lo[1]]
        };
        let strips: Vec<_> = pages[1]
            .paths
            .iter()
            .filter(|p| p.stroke == Stroke::Cut && p.label == "strip")
            .collect();
        assert_eq!(strips.len(), 6);
        for s in strips {
            let e = extent(s);
            let (long, short) = (e[0].max(e[1]), e[0].min(e[1]));
            let want = 1.5 * std::f64::consts::PI * KIT_SCALE;
            assert!((long - want).abs() < 1e-6, "{long}");
            assert!((short - 2.0 / 3.0 * KIT_SCALE).abs() < 1e-6);
        }
        let annuli: Vec<_> = pages[1]
            .paths
            .iter()
            .filter(|p| p.stroke == Stroke::Cut && p.label == "outline")
            .collect();
        assert_eq!(annuli.len(), 3);
        for a in annuli {
            let e = extent(a);
            assert!((e[0].max(e[1]) - 8.0 / 3.0 * KIT_SCALE).abs() < 0.5);
        }
    }

    #[test]
    fn report_serializes() {
        let r = crate::verify::run_suite(&crate::verify::RunConfig {
            resolution: 2,
            ..Default::default()
        })
        .unwrap();
        let text = emit_report(&r).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["passed"], serde_json::Value::Bool(r.passed));
        assert!(v["checks"].as_array().unwrap().len() > 10);
    }
}
