//! The full invariant suite behind `boys verify`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::assembly::{
    boundary_circuit_labels, build_h, build_m_with_table, build_octacross, check_symmetry,
    corridor_decomposition, gluing_table, perturbed_gluing_table,
};
use crate::cone_pizza::{boundary_cone_report, build_pizza, classify_slices, SliceClass};
use crate::development::{develop_corridor, geodesic_curvature_report};
use crate::error::{BoyError, Result};
use crate::export_io::{
    CheckRecord, CircuitRecord, ConfigRecord, DevelopmentRecord, RectilinearRecord, Report,
    SliceRecord, SlicesRecord, SymmetryRecord,
};
use crate::octa_graph::{
    build_octahedral_graph, expand_circuit, symmetric_matching, symmetry_group, xy_bridge,
    Isometry, SignVector,
};
use crate::rectilinear::{
    build_m_square, build_omega, slab_triple_intersection, unit_cube_census, verify_containment,
};

/// Resolution below which the curvature total is taken from a finer development.
pub const MIN_GEODESIC_RESOLUTION: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub resolution: usize,
    pub truncation: f64,
    /// Allowed distance of the curvature total from `9π`.
    pub geodesic_tolerance: f64,
    /// Flip the orientation of this corridor seam before gluing.
    pub perturb_seam: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            resolution: 8,
            truncation: 10.0,
            geodesic_tolerance: 0.01,
            perturb_seam: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(BoyError::InvalidResolution(self.resolution));
        }
        if !(self.truncation > 1.0) {
            return Err(BoyError::InvalidTruncation(self.truncation));
        }
        Ok(())
    }

    pub fn table(&self) -> crate::surface_complex::GluingTable {
        match self.perturb_seam {
            Some(k) => perturbed_gluing_table(k),
            None => gluing_table(),
        }
    }
}

fn element_name(t: &Isometry) -> String {
    let axes = ['x', 'y', 'z'];
    let m = t.matrix();
    let parts: Vec<String> = m
        .iter()
        .map(|row| {
            let j = row.iter().position(|&v| v != 0).unwrap_or(0);
            format!("{}{}", if row[j] < 0 { "-" } else { "" }, axes[j])
        })
        .collect();
    format!("({})", parts.join(","))
}

pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let n = cfg.resolution;
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| {
        checks.push(CheckRecord {
            name: name.to_string(),
            passed,
        })
    };

    let g = symmetric_matching(&build_octahedral_graph());
    let expected = expand_circuit(&g)?;
    let m = build_m_with_table::<f64>(n, &cfg.table())?;
    let h = build_h::<f64>(n)?;
    let octacross = build_octacross::<f64>(n)?;
    let found = boundary_circuit_labels(&m)?;
    let xy_pairing = found.joins_across(
        SignVector::new(1, 1, 0),
        SignVector::new(-1, -1, 0),
        xy_bridge(),
    );
    let circuit = CircuitRecord {
        steps: found.len(),
        alternates: found.alternates(),
        equivalent: found.equivalent(&expected),
        xy_pairing,
        expected,
        found,
    };
    check(
        "circuit.matches_expansion",
        circuit.equivalent && circuit.steps == 18,
    );
    check("circuit.alternates", circuit.alternates);
    check("circuit.xy_pairing", circuit.xy_pairing);

    let pizza = build_pizza(&m, cfg.truncation)?;
    let boy = &pizza.union;
    let cone = pizza.cone();
    let mut euler = BTreeMap::new();
    let mut components = BTreeMap::new();
    let mut orientable = BTreeMap::new();
    for (name, c) in [
        ("octacross", &octacross),
        ("H", &h),
        ("M", &m),
        ("P", &cone),
        ("Boy", boy),
    ] {
        euler.insert(name.to_string(), c.euler_characteristic()?);
        components.insert(name.to_string(), c.boundary_components()?.len());
        orientable.insert(name.to_string(), c.orientable()?);
    }
    check("M.euler", euler["M"] == 0);
    check("M.boundary", components["M"] == 1);
    check("M.non_orientable", !orientable["M"]);
    check("H.euler", euler["H"] == -3);
    check("H.boundary", components["H"] == 4);
    check("P.disk", euler["P"] == 1 && components["P"] == 1);
    check("Boy.euler", euler["Boy"] == 1);
    check("Boy.closed", components["Boy"] == 0);
    check("Boy.non_orientable", !orientable["Boy"]);

    let symmetry: Vec<SymmetryRecord> = symmetry_group()
        .iter()
        .map(|t| SymmetryRecord {
            element: element_name(t),
            m: check_symmetry(&m, t),
            boy: check_symmetry(boy, t),
        })
        .collect();
    let point_reflection_symmetric = check_symmetry(&m, &Isometry::point_reflection());
    check("symmetry.group", symmetry.iter().all(|s| s.m && s.boy));
    check(
        "symmetry.point_reflection_fails",
        !point_reflection_symmetric,
    );

    let cone_report = boundary_cone_report(&m)?;
    check(
        "cone.friendly",
        cone_report.friendly && cone_report.min_clearance > 0.0,
    );

    let slices = classify_slices(&pizza);
    let mut orthants = Vec::new();
    let mut max_residual: f64 = 0.0;
    let mut records = Vec::new();
    for s in &slices {
        let class = match s.class {
            SliceClass::Planar(p) => format!("planar {p}"),
            SliceClass::Conical(o) => {
                orthants.push(o);
                format!("conical {o}")
            }
        };
        if let Some(q) = s.quadric {
            max_residual = max_residual.max(q.residual);
        }
        records.push(SliceRecord {
            arc: s.arc.to_string(),
            class,
            residual: s.quadric.map(|q| q.residual),
            elliptic: s.quadric.map(|q| q.elliptic),
        });
    }
    let conical = orthants.len();
    orthants.sort();
    orthants.dedup();
    let slices_record = SlicesRecord {
        planar: slices.len() - conical,
        conical,
        distinct_orthants: orthants.len(),
        max_residual,
        slices: records,
    };
    check(
        "slices.classification",
        slices_record.planar == 12
            && slices_record.conical == 6
            && slices_record.distinct_orthants == 6,
    );
    check("slices.quadric_fit", max_residual < 1e-6);

    let corridor = corridor_decomposition();
    let geodesic_resolution = n.max(MIN_GEODESIC_RESOLUTION);
    let layout = develop_corridor::<f64>(&corridor, geodesic_resolution)?;
    let curvature = geodesic_curvature_report(&layout.boundary)?;
    let walls: Vec<[f64; 2]> = layout.wall_extents();
    check(
        "development.walls",
        walls.len() == 3
            && walls
                .iter()
                .all(|w| (w[0] - 1.5 * PI).abs() < 1e-9 && (w[1] - 2.0 / 3.0).abs() < 1e-9),
    );
    check(
        "development.isometric",
        layout.edge_distortion < 1e-9 && layout.seam_mismatch() < 1e-9,
    );
    check(
        "development.geodesic_total",
        (curvature.absolute - 9.0 * PI).abs() <= cfg.geodesic_tolerance,
    );

    let omega = build_omega();
    let msq = build_m_square();
    let topo = msq.topology()?;
    let census = unit_cube_census(&msq, &omega);
    let containment = verify_containment(&msq, &omega)?;
    let (lo, hi) = slab_triple_intersection();
    let rect = RectilinearRecord {
        cubes: omega.len(),
        groups: omega
            .group_sizes()
            .into_iter()
            .map(|(g, k)| (g.to_string(), k))
            .collect(),
        triple_intersection: [lo, hi],
        unit_cubes: census.unit_cubes,
        face_histogram: census.histogram.clone(),
        faces_adjacent: census.adjacent,
        euler: topo.euler_characteristic(),
        orientable: topo.orientable(),
        boundary_loops: topo.boundary_loops()?.len(),
        boundary_embedded: msq.boundary_is_embedded()?,
        containment,
    };
    check(
        "rectilinear.cubes",
        rect.cubes == 46 && rect.unit_cubes == 368,
    );
    check(
        "rectilinear.triple_intersection",
        rect.triple_intersection == [[-1; 3], [1; 3]],
    );
    check("rectilinear.census", census.passed());
    check(
        "rectilinear.moebius",
        rect.euler == 0 && !rect.orientable && rect.boundary_loops == 1 && rect.boundary_embedded,
    );
    check("rectilinear.containment", rect.containment.passed());

    let passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        config: ConfigRecord {
            resolution: n,
            truncation: cfg.truncation,
            geodesic_resolution,
            geodesic_tolerance: cfg.geodesic_tolerance,
        },
        corridor_order: corridor.traversal_order(),
        circuit,
        euler,
        boundary_components: components,
        orientable,
        symmetry,
        point_reflection_symmetric,
        cone: cone_report,
        slices: slices_record,
        geodesic_total: curvature.absolute,
        development: DevelopmentRecord {
            wall_rectangles: walls,
            edge_distortion: layout.edge_distortion,
            seam_mismatch: layout.seam_mismatch(),
            signed_total: curvature.signed,
        },
        rectilinear: rect,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let r = run_suite(&RunConfig::default()).unwrap();
        let failed: Vec<_> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(r.config.geodesic_resolution, 64);
        assert_eq!(r.symmetry.len(), 6);
        assert_eq!(r.euler["octacross"], 3);
        assert_eq!(r.euler["P"], 1);
    }

    #[test]
    fn bad_config_rejected() {
        let mut c = RunConfig {
            resolution: 1,
            ..RunConfig::default()
        };
        assert!(matches!(run_suite(&c), Err(BoyError::InvalidResolution(1))));
        c.resolution = 4;
        c.truncation = 1.0;
        assert!(matches!(run_suite(&c), Err(BoyError::InvalidTruncation(_))));
    }

    #[test]
    fn perturbed_seam_fails_to_glue() {
        let c = RunConfig {
            perturb_seam: Some(1),
            ..RunConfig::default()
        };
        assert!(matches!(
            run_suite(&c),
            Err(BoyError::PositionMismatch { .. })
        ));
    }
}
