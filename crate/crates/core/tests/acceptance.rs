//! Acceptance criteria 1 to 9. Each prints one PASS/FAIL line with its
//! measured quantities and wall time.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use boys_surface::assembly::{
    boundary_circuit_labels, build_h, build_m, build_octacross, check_symmetry,
};
use boys_surface::cone_pizza::{boundary_cone_report, build_pizza, classify_slices, SliceClass};
use boys_surface::development::{develop, total_geodesic_curvature};
use boys_surface::export_io::{kit_pages, parse_obj, write_obj, Stroke};
use boys_surface::octa_graph::{
    build_octahedral_graph, expand_circuit, symmetric_matching, symmetry_group, xy_bridge,
    Isometry, SignVector,
};
use boys_surface::pieces::{ArcSide, PieceId, PlaneId};
use boys_surface::rectilinear::{
    build_m_square, build_omega, slab_triple_intersection, unit_cube_census, verify_containment,
    CubeGroup,
};
use boys_surface::surface_complex::SurfaceComplex;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let expected = expand_circuit(&symmetric_matching(&build_octahedral_graph())).map_err(err)?;
    ensure!(
        expected.len() == 18,
        "expansion has {} steps",
        expected.len()
    );
    ensure!(expected.alternates(), "expansion does not alternate");
    ensure!(
        expected.is_connected_cycle(),
        "expansion is not a single cycle"
    );
    let m = build_m::<f64>(4).map_err(err)?;
    let found = boundary_circuit_labels(&m).map_err(err)?;
    ensure!(
        found.equivalent(&expected),
        "boundary labels differ from the expansion"
    );
    let pairing = found.joins_across(
        SignVector::new(1, 1, 0),
        SignVector::new(-1, -1, 0),
        xy_bridge(),
    );
    ensure!(
        pairing,
        "(+,+,0) and (-,-,0) are not joined across the XY bridge"
    );
    Ok("18 steps, alternating, equivalent, XY pairing ok".into())
}

fn criterion_2() -> Outcome {
    for n in [2, 4, 8, 16] {
        let m = build_m::<f64>(n).map_err(err)?;
        let chi = m.euler_characteristic().map_err(err)?;
        let b = m.boundary_components().map_err(err)?.len();
        let o = m.orientable().map_err(err)?;
        ensure!(
            chi == 0 && b == 1 && !o,
            "n={n}: M has chi={chi}, {b} boundary loops, orientable={o}"
        );
        let h = build_h::<f64>(n).map_err(err)?;
        let chi = h.euler_characteristic().map_err(err)?;
        let b = h.boundary_components().map_err(err)?.len();
        ensure!(
            chi == -3 && b == 4,
            "n={n}: H has chi={chi}, {b} boundary loops"
        );
    }
    Ok("n=2,4,8,16: chi(M)=0, 1 loop, non-orientable; chi(H)=-3, 4 loops".into())
}

fn criterion_3() -> Outcome {
    let m = build_m::<f64>(8).map_err(err)?;
    let group = symmetry_group();
    ensure!(group.len() == 6, "group has {} elements", group.len());
    for t in &group {
        ensure!(
            check_symmetry(&m, t),
            "M not invariant under {:?}",
            t.matrix()
        );
    }
    ensure!(
        !check_symmetry(&m, &Isometry::point_reflection()),
        "M invariant under -I"
    );
    Ok("6/6 elements preserve M, -I does not".into())
}

fn criterion_4() -> Outcome {
    let mut clearances = Vec::new();
    for n in [8, 16, 32] {
        let r = boundary_cone_report(&build_m::<f64>(n).map_err(err)?).map_err(err)?;
        ensure!(
            r.friendly,
            "n={n}: not cone-friendly, crossing {:?}",
            r.crossing
        );
        ensure!(
            r.min_clearance > 0.0,
            "n={n}: clearance {}",
            r.min_clearance
        );
        clearances.push(r.min_clearance);
    }
    let hi = clearances.iter().cloned().fold(f64::MIN, f64::max);
    let lo = clearances.iter().cloned().fold(f64::MAX, f64::min);
    ensure!((hi - lo) / hi <= 0.1, "clearance varies {clearances:?}");
    Ok(format!(
        "clearance {:.6} rad at n=8,16,32, spread {:.2e}",
        lo,
        (hi - lo) / hi
    ))
}

fn criterion_5() -> Outcome {
    let m = build_m::<f64>(8).map_err(err)?;
    for t in [2.0, 10.0, 100.0] {
        let boy = build_pizza(&m, t).map_err(err)?.union;
        let chi = boy.euler_characteristic().map_err(err)?;
        let b = boy.boundary_components().map_err(err)?.len();
        let o = boy.orientable().map_err(err)?;
        ensure!(
            chi == 1 && b == 0 && !o,
            "T={t}: chi={chi}, {b} loops, orientable={o}"
        );
        for g in symmetry_group() {
            ensure!(
                check_symmetry(&boy, &g),
                "T={t}: not invariant under {:?}",
                g.matrix()
            );
        }
    }
    Ok("T=2,10,100: chi=1, closed, non-orientable, order-6 symmetric".into())
}

fn criterion_6() -> Outcome {
    let m = build_m::<f64>(8).map_err(err)?;
    let slices = classify_slices(&build_pizza(&m, 10.0).map_err(err)?);
    let mut planar = 0;
    let mut orthants = Vec::new();
    let mut worst: f64 = 0.0;
    let mut max_dev: f64 = 0.0;
    for s in &slices {
        match s.class {
            SliceClass::Planar(_) => {
                planar += 1;
                max_dev = max_dev.max(s.planar_deviation);
            }
            SliceClass::Conical(o) => {
                orthants.push(o);
                let q = s.quadric.ok_or("conical slice without quadric fit")?;
                worst = worst.max(q.residual);
            }
        }
    }
    ensure!(
        planar == 12 && orthants.len() == 6,
        "{planar} planar, {} conical",
        orthants.len()
    );
    ensure!(max_dev <= 1e-12, "planar deviation {max_dev:e}");
    ensure!(worst < 1e-6, "quadric residual {worst:e}");
    let top = slices
        .iter()
        .find(|s| s.arc.piece == PieceId::Wall(PlaneId::XY) && s.arc.side == ArcSide::Top)
        .ok_or("no slice for the XY wall top")?;
    ensure!(
        top.class == SliceClass::Conical(SignVector::new(1, -1, 1)),
        "XY wall top is {:?}",
        top.class
    );
    let mut distinct = orthants.clone();
    distinct.sort();
    distinct.dedup();
    ensure!(
        distinct.len() == 6,
        "only {} distinct orthants",
        distinct.len()
    );
    Ok(format!(
        "12 planar (dev {max_dev:.1e}), 6 conical in distinct orthants, residual {worst:.1e}"
    ))
}

fn criterion_7() -> Outcome {
    let target = 9.0 * PI;
    let l64 = develop::<f64>(64).map_err(err)?;
    let e64 = (total_geodesic_curvature(&l64).map_err(err)? - target).abs();
    let l128 = develop::<f64>(128).map_err(err)?;
    let e128 = (total_geodesic_curvature(&l128).map_err(err)? - target).abs();
    ensure!(e64 <= 0.01, "n=64 error {e64:e}");
    ensure!(e128 < e64, "error did not decrease: {e64:e} -> {e128:e}");
    for w in l64.wall_extents() {
        ensure!(
            (w[0] - 1.5 * PI).abs() < 1e-9 && (w[1] - 2.0 / 3.0).abs() < 1e-9,
            "wall rectangle {w:?}"
        );
    }
    Ok(format!(
        "|total - 9pi| = {e64:.2e} (n=64), {e128:.2e} (n=128); walls 3pi/2 x 2/3"
    ))
}

fn criterion_8() -> Outcome {
    let omega = build_omega();
    ensure!(omega.len() == 46, "{} cubes", omega.len());
    let sizes = omega.group_sizes();
    ensure!(
        sizes[&CubeGroup::Octacross] == 7,
        "octacross group {}",
        sizes[&CubeGroup::Octacross]
    );
    for p in [PlaneId::XY, PlaneId::YZ, PlaneId::ZX] {
        ensure!(
            sizes[&CubeGroup::Crossbridge(p)] == 9,
            "crossbridge {p} group"
        );
        ensure!(sizes[&CubeGroup::Disk(p)] == 4, "disk {p} group");
    }
    ensure!(
        slab_triple_intersection() == ([-1; 3], [1; 3]),
        "triple intersection"
    );
    let msq = build_m_square();
    let census = unit_cube_census(&msq, &omega);
    ensure!(census.unit_cubes == 368, "{} unit cubes", census.unit_cubes);
    ensure!(
        census.passed(),
        "face histogram {:?}, adjacent {}",
        census.histogram,
        census.adjacent
    );
    let t = msq.topology().map_err(err)?;
    let loops = t.boundary_loops().map_err(err)?.len();
    ensure!(
        t.euler_characteristic() == 0 && !t.orientable() && loops == 1,
        "M_square topology"
    );
    ensure!(
        msq.boundary_is_embedded().map_err(err)?,
        "boundary not embedded"
    );
    let c = verify_containment(&msq, &omega).map_err(err)?;
    ensure!(c.passed(), "containment {c:?}");
    Ok(format!(
        "46 cubes, 368 unit cubes, histogram {:?}",
        census.histogram
    ))
}

fn reparse(c: &SurfaceComplex<f64>, clamp: bool) -> Result<(), String> {
    let mut buf = Vec::new();
    write_obj(c, &mut buf, clamp).map_err(err)?;
    let back = parse_obj(std::str::from_utf8(&buf).map_err(err)?).map_err(err)?;
    let a = c.topology().map_err(err)?;
    let b = back.topology().map_err(err)?;
    ensure!(
        (a.vertex_count, a.edge_count(), a.face_count)
            == (b.vertex_count, b.edge_count(), b.face_count),
        "V/E/F changed on re-parse"
    );
    ensure!(
        a.euler_characteristic() == b.euler_characteristic()
            && a.orientable() == b.orientable()
            && a.boundary_loops().map_err(err)?.len() == b.boundary_loops().map_err(err)?.len(),
        "invariants changed on re-parse"
    );
    Ok(())
}

fn criterion_9() -> Outcome {
    let n = 8;
    reparse(&build_octacross::<f64>(n).map_err(err)?, false)?;
    reparse(&build_h::<f64>(n).map_err(err)?, false)?;
    let m = build_m::<f64>(n).map_err(err)?;
    reparse(&m, false)?;
    reparse(&build_pizza(&m, 10.0).map_err(err)?.union, true)?;
    reparse(&build_m_square().to_surface_complex::<f64>(), false)?;

    let pages = kit_pages();
    ensure!(pages.len() == 2, "{} kit pages", pages.len());
    let want = (1.5 * PI) / (2.0 / 3.0);
    let mut strips = 0;
    for page in &pages {
        let svg = page.to_svg();
        let doc = roxmltree::Document::parse(&svg).map_err(err)?;
        ensure!(
            doc.root_element().tag_name().name() == "svg",
            "root is not svg"
        );
        ensure!(page.fits(), "page content exceeds its box");
        for p in page
            .paths
            .iter()
            .filter(|p| p.stroke == Stroke::Cut && p.label == "strip")
        {
            let xs = p.points.iter().map(|q| q[0]);
            let ys = p.points.iter().map(|q| q[1]);
            let w = xs.clone().fold(f64::MIN, f64::max) - xs.fold(f64::MAX, f64::min);
            let h = ys.clone().fold(f64::MIN, f64::max) - ys.fold(f64::MAX, f64::min);
            let ratio = w.max(h) / w.min(h);
            ensure!((ratio - want).abs() <= 1e-6, "strip aspect {ratio}");
            strips += 1;
        }
    }
    ensure!(strips > 0, "no strips on the kit pages");

    let dir = tempfile::tempdir().map_err(err)?;
    let mut reports = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}"));
        let status = Command::new(env!("CARGO_BIN_EXE_boys"))
            .args(["verify", "--out"])
            .arg(&out)
            .output()
            .map_err(err)?;
        ensure!(
            status.status.code() == Some(0),
            "verify exited {:?}",
            status.status.code()
        );
        reports.push(std::fs::read(out.join("report.json")).map_err(err)?);
    }
    ensure!(reports[0] == reports[1], "report.json differs between runs");
    Ok(format!("5 OBJ round trips, {strips} strips at aspect {want:.9}, verify exit 0, report deterministic"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("circuit", criterion_1, 1),
        ("moebius band", criterion_2, 5),
        ("symmetry", criterion_3, 1),
        ("cone-friendliness", criterion_4, 5),
        ("projective plane", criterion_5, 5),
        ("slices", criterion_6, 5),
        ("geodesic curvature", criterion_7, 10),
        ("rectilinear", criterion_8, 5),
        ("i/o", criterion_9, 5),
    ];
    let mut failures = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("{d}; over the {budget} s budget"))
            }
            o => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {} [{name}]: {status} ({:.2} s) {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if outcome.is_err() {
            failures.push(i + 1);
        }
    }
    if !failures.is_empty() {
        println!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
