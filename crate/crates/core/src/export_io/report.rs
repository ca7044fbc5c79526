use std::collections::BTreeMap;

use serde::Serialize;

use crate::cone_pizza::ConeReport;
use crate::error::Result;
use crate::octa_graph::Circuit;
use crate::rectilinear::ContainmentReport;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigRecord {
    pub resolution: usize,
    pub truncation: f64,
    pub geodesic_resolution: usize,
    pub geodesic_tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircuitRecord {
    pub expected: Circuit,
    pub found: Circuit,
    pub steps: usize,
    pub alternates: bool,
    pub equivalent: bool,
    /// `++0` and `--0` are joined by a lane over the XY bridge.
    pub xy_pairing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryRecord {
    pub element: String,
    pub m: bool,
    pub boy: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceRecord {
    pub arc: String,
    pub class: String,
    pub residual: Option<f64>,
    pub elliptic: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlicesRecord {
    pub planar: usize,
    pub conical: usize,
    pub distinct_orthants: usize,
    pub max_residual: f64,
    pub slices: Vec<SliceRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DevelopmentRecord {
    pub wall_rectangles: Vec<[f64; 2]>,
    pub edge_distortion: f64,
    pub seam_mismatch: f64,
    pub signed_total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RectilinearRecord {
    pub cubes: usize,
    pub groups: BTreeMap<String, usize>,
    pub triple_intersection: [[i64; 3]; 2],
    pub unit_cubes: usize,
    pub face_histogram: Vec<usize>,
    pub faces_adjacent: bool,
    pub euler: i64,
    pub orientable: bool,
    pub boundary_loops: usize,
    pub boundary_embedded: bool,
    pub containment: ContainmentReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
}

/// Everything the verification suite measured.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: ConfigRecord,
    pub corridor_order: Vec<String>,
    pub circuit: CircuitRecord,
    pub euler: BTreeMap<String, i64>,
    pub boundary_components: BTreeMap<String, usize>,
    pub orientable: BTreeMap<String, bool>,
    pub symmetry: Vec<SymmetryRecord>,
    pub point_reflection_symmetric: bool,
    pub cone: ConeReport,
    pub slices: SlicesRecord,
    pub geodesic_total: f64,
    pub development: DevelopmentRecord,
    pub rectilinear: RectilinearRecord,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl Report {
    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| c.name.as_str())
    }
}

/// Pretty JSON with a fixed key order.
pub fn emit_report(report: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}
