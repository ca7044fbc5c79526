//! Coning the boundary of `M` off to infinity: the pizza `P` and Boy's
//! surface `M ∪ P`.

use nalgebra::{DMatrix, Matrix3};
use serde::Serialize;

use crate::assembly::{build_m, trace_boundary, TracedArc};
use crate::error::{BoyError, Result};
use crate::geom::Point3;
use crate::octa_graph::SignVector;
use crate::pieces::{ArcId, PlaneId};
use crate::scalar::{count, to_f64, Real};
use crate::surface_complex::{edge_key, EdgeRole, Face, FaceTag, SurfaceComplex};

/// Default number of rungs between the boundary and the apex.
pub const DEFAULT_RUNGS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConeReport {
    pub friendly: bool,
    /// First pair of segments found whose radial projections cross.
    pub crossing: Option<(usize, usize)>,
    /// Minimum angle (radians) between projections of non-adjacent arcs.
    pub min_clearance: f64,
}

type V3 = [f64; 3];

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

fn unit(a: V3) -> V3 {
    let l = norm(a);
    [a[0] / l, a[1] / l, a[2] / l]
}

fn angle(a: V3, b: V3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

/// Great-circle arc between two unit vectors (shorter than a half turn).
#[derive(Clone, Copy)]
struct SphereSegment {
    a: V3,
    b: V3,
    normal: V3,
}

impl SphereSegment {
    fn new(a: V3, b: V3) -> Self {
        Self {
            a,
            b,
            normal: unit(cross(a, b)),
        }
    }

    /// Whether unit vector `p` on this segment's great circle lies on the segment.
    fn spans(&self, p: V3, eps: f64) -> bool {
        dot(cross(self.a, p), self.normal) >= -eps && dot(cross(p, self.b), self.normal) >= -eps
    }

    fn intersects(&self, o: &SphereSegment, eps: f64) -> bool {
        let line = cross(self.normal, o.normal);
        if norm(line) <= eps {
            // same great circle: overlap if an endpoint of one lies on the other
            return (dot(self.a, o.a) > 0.0 || dot(self.b, o.b) > 0.0)
                && (self.spans(o.a, eps)
                    || self.spans(o.b, eps)
                    || o.spans(self.a, eps)
                    || o.spans(self.b, eps));
        }
        let p = unit(line);
        [p, [-p[0], -p[1], -p[2]]]
            .iter()
            .any(|&q| self.spans(q, eps) && o.spans(q, eps))
    }

    fn point_distance(&self, p: V3) -> f64 {
        let off = dot(p, self.normal);
        let proj = [
            p[0] - off * self.normal[0],
            p[1] - off * self.normal[1],
            p[2] - off * self.normal[2],
        ];
        if norm(proj) > 0.0 && self.spans(unit(proj), 0.0) {
            off.abs().clamp(-1.0, 1.0).asin()
        } else {
            angle(p, self.a).min(angle(p, self.b))
        }
    }

    fn distance(&self, o: &SphereSegment) -> f64 {
        self.point_distance(o.a)
            .min(self.point_distance(o.b))
            .min(o.point_distance(self.a))
            .min(o.point_distance(self.b))
    }
}

/// Cone-friendliness of a closed polyline, each segment counted as its own arc.
pub fn cone_friendly<T: Real>(points: &[Point3<T>]) -> Result<ConeReport> {
    let arcs: Vec<usize> = (0..points.len()).collect();
    cone_friendly_arcs(points, &arcs)
}

/// Cone-friendliness of a closed polyline whose segment `i` belongs to arc
/// `arc_of_segment[i]`; clearance is measured between arcs that are not
/// cyclically adjacent.
pub fn cone_friendly_arcs<T: Real>(
    points: &[Point3<T>],
    arc_of_segment: &[usize],
) -> Result<ConeReport> {
    let len = points.len();
    let mut dirs = Vec::with_capacity(len);
    for (i, p) in points.iter().enumerate() {
        let q = p.to_f64();
        if norm(q) <= 1e-12 {
            return Err(BoyError::LoopTouchesOrigin(i));
        }
        dirs.push(unit(q));
    }
    let eps = 1e-12;
    let mut segments = Vec::with_capacity(len);
    for i in 0..len {
        let (a, b) = (dirs[i], dirs[(i + 1) % len]);
        if norm(cross(a, b)) <= eps {
            if dot(a, b) > 0.0 {
                // two loop points on one ray
                return Ok(ConeReport {
                    friendly: false,
                    crossing: Some((i, i)),
                    min_clearance: 0.0,
                });
            }
            return Err(BoyError::DegenerateSegment(i));
        }
        segments.push(SphereSegment::new(a, b));
    }
    let arc_count = arc_of_segment.iter().max().map_or(0, |m| m + 1);
    let arcs_adjacent = |x: usize, y: usize| {
        let d = (x + arc_count - y) % arc_count;
        d == 0 || d == 1 || d + 1 == arc_count
    };
    let mut crossing = None;
    let mut clearance = f64::INFINITY;
    for i in 0..len {
        for j in i + 2..len {
            if i == 0 && j == len - 1 {
                continue;
            }
            if crossing.is_none() && segments[i].intersects(&segments[j], eps) {
                crossing = Some((i, j));
            }
            if !arcs_adjacent(arc_of_segment[i], arc_of_segment[j]) {
                clearance = clearance.min(segments[i].distance(&segments[j]));
            }
        }
    }
    Ok(ConeReport {
        friendly: crossing.is_none(),
        crossing,
        min_clearance: if crossing.is_some() { 0.0 } else { clearance },
    })
}

/// Boundary polyline of `m` with the arc index of every segment.
pub fn boundary_polyline<T: Real>(
    m: &SurfaceComplex<T>,
) -> Result<(Vec<usize>, Vec<usize>, Vec<TracedArc>)> {
    let arcs = trace_boundary(m)?;
    let mut verts = Vec::new();
    let mut arc_of = Vec::new();
    for (k, a) in arcs.iter().enumerate() {
        for &v in &a.vertices[..a.vertices.len() - 1] {
            verts.push(v);
            arc_of.push(k);
        }
    }
    Ok((verts, arc_of, arcs))
}

pub fn boundary_cone_report<T: Real>(m: &SurfaceComplex<T>) -> Result<ConeReport> {
    let (verts, arc_of, _) = boundary_polyline(m)?;
    let pts = verts
        .iter()
        .map(|&v| m.positions[v].ok_or(BoyError::VertexAtInfinity))
        .collect::<Result<Vec<_>>>()?;
    cone_friendly_arcs(&pts, &arc_of)
}

/// The cone over `∂M`, sharing its boundary vertex ids with `M`.
#[derive(Clone, Debug)]
pub struct Pizza<T> {
    /// `M ∪ P`: the vertices and faces of `M` followed by those of `P`.
    pub union: SurfaceComplex<T>,
    /// Number of faces of `M` at the front of `union.faces`.
    pub m_faces: usize,
    /// Boundary vertices of `M`, in loop order.
    pub rim: Vec<usize>,
    /// Base arc of each slice.
    pub arcs: Vec<TracedArc>,
    pub apex: usize,
    pub truncation: T,
    pub rungs: usize,
}

impl<T: Real> Pizza<T> {
    /// `P` on its own (vertex ids compacted).
    pub fn cone(&self) -> SurfaceComplex<T> {
        self.union
            .filter_faces(|f| matches!(f.tag, FaceTag::Pizza(_)))
    }

    pub fn apex_degree(&self) -> usize {
        let mut nb = std::collections::BTreeSet::new();
        for f in &self.union.faces {
            if let Some(i) = f.verts.iter().position(|&v| v == self.apex) {
                let k = f.verts.len();
                nb.insert(f.verts[(i + 1) % k]);
                nb.insert(f.verts[(i + k - 1) % k]);
            }
        }
        nb.len()
    }
}

pub fn build_pizza<T: Real>(m: &SurfaceComplex<T>, truncation: T) -> Result<Pizza<T>> {
    build_pizza_with_rungs(m, truncation, DEFAULT_RUNGS)
}

/// Radial ladder `t_k = T^(k/R)` over every boundary vertex, closed by an
/// apex at infinity.
pub fn build_pizza_with_rungs<T: Real>(
    m: &SurfaceComplex<T>,
    truncation: T,
    rungs: usize,
) -> Result<Pizza<T>> {
    if !(truncation > T::one()) {
        return Err(BoyError::InvalidTruncation(to_f64(truncation)));
    }
    let report = boundary_cone_report(m)?;
    if let Some((i, j)) = report.crossing {
        return Err(BoyError::NotConeFriendly(i, j));
    }
    let (rim, arc_of, arcs) = boundary_polyline(m)?;
    let len = rim.len();
    let mut union = m.clone();
    let m_faces = union.faces.len();
    let mut ladder: Vec<Vec<usize>> = vec![rim.clone()];
    for k in 1..=rungs {
        let t = truncation.powf(count::<T>(k as i64) / count::<T>(rungs as i64));
        let ring = rim
            .iter()
            .map(|&v| {
                let p = m.positions[v].expect("boundary of M is finite");
                union.positions.push(Some(p * t));
                union.positions.len() - 1
            })
            .collect();
        ladder.push(ring);
    }
    union.positions.push(None);
    let apex = union.positions.len() - 1;
    for i in 0..len {
        let j = (i + 1) % len;
        let tag = FaceTag::Pizza(arc_of[i]);
        for k in 0..rungs {
            let (lo, hi) = (&ladder[k], &ladder[k + 1]);
            union.faces.push(Face {
                verts: vec![lo[j], lo[i], hi[i], hi[j]],
                tag,
                uv: None,
            });
        }
        let top = &ladder[rungs];
        union.faces.push(Face {
            verts: vec![top[j], top[i], apex],
            tag,
            uv: None,
        });
    }
    // rays at slice corners
    for (i, &a) in arc_of.iter().enumerate() {
        if a != arc_of[(i + len - 1) % len] {
            for k in 0..rungs {
                let key = edge_key(ladder[k][i], ladder[k + 1][i]);
                union.edge_labels.insert(
                    key,
                    crate::surface_complex::EdgeLabel {
                        role: EdgeRole::Seam,
                        chain: crate::surface_complex::ChainKey::Named(format!("ray{a}")),
                    },
                );
            }
        }
    }
    Ok(Pizza {
        union,
        m_faces,
        rim,
        arcs,
        apex,
        truncation,
        rungs,
    })
}

/// Boy's surface `M ∪ P` at resolution `n` and truncation `T`.
pub fn build_boys_surface<T: Real>(n: usize, truncation: T) -> Result<SurfaceComplex<T>> {
    let m = build_m::<T>(n)?;
    Ok(build_pizza(&m, truncation)?.union)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SliceClass {
    Planar(PlaneId),
    /// Lies on a quadric cone inside the given open orthant.
    Conical(SignVector),
}

/// Homogeneous quadric `q(p) = pᵀ Q p` fitted through slice directions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadricFit {
    /// Symmetric matrix `Q`, unit Frobenius-style coefficient norm.
    pub matrix: [[f64; 3]; 3],
    /// RMS of `|q(p)| / |∇q(p)|` over normalised samples.
    pub residual: f64,
    /// Eigenvalue signature is (2,1) or (1,2): a real elliptic cone.
    pub elliptic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PizzaSlice {
    pub arc: ArcId,
    pub role: EdgeRole,
    pub class: SliceClass,
    /// Largest out-of-plane coordinate among finite slice vertices.
    pub planar_deviation: f64,
    /// Interior samples share one zero-free sign vector.
    pub sign_constant: bool,
    pub quadric: Option<QuadricFit>,
    pub faces: Vec<usize>,
}

/// Least-squares homogeneous quadric through the directions of `points`.
pub fn fit_quadric(points: &[[f64; 3]]) -> QuadricFit {
    let dirs: Vec<V3> = points.iter().map(|&p| unit(p)).collect();
    let rows: Vec<f64> = dirs
        .iter()
        .flat_map(|p| {
            let [x, y, z] = *p;
            [x * x, y * y, z * z, x * y, y * z, z * x]
        })
        .collect();
    let mut a = DMatrix::from_row_slice(dirs.len(), 6, &rows);
    if dirs.len() < 6 {
        a = a.resize_vertically(6, 0.0);
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .unwrap();
    let c: Vec<f64> = vt.row(imin).iter().copied().collect();
    let q = Matrix3::new(
        c[0],
        c[3] / 2.0,
        c[5] / 2.0,
        c[3] / 2.0,
        c[1],
        c[4] / 2.0,
        c[5] / 2.0,
        c[4] / 2.0,
        c[2],
    );
    let mut sq = 0.0;
    for p in &dirs {
        let v = nalgebra::Vector3::new(p[0], p[1], p[2]);
        let val = (v.transpose() * q * v)[0];
        let grad = (q * v * 2.0).norm();
        let r = if grad > 0.0 {
            val.abs() / grad
        } else {
            val.abs()
        };
        sq += r * r;
    }
    let residual = (sq / dirs.len() as f64).sqrt();
    let eig = q.symmetric_eigenvalues();
    let scale = eig.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let pos = eig.iter().filter(|&&e| e > 1e-9 * scale).count();
    let neg = eig.iter().filter(|&&e| e < -1e-9 * scale).count();
    let mut matrix = [[0.0; 3]; 3];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = q[(i, j)];
        }
    }
    QuadricFit {
        matrix,
        residual,
        elliptic: (pos, neg) == (2, 1) || (pos, neg) == (1, 2),
    }
}

/// Splits the pizza into one slice per boundary arc and classifies each.
pub fn classify_slices<T: Real>(p: &Pizza<T>) -> Vec<PizzaSlice> {
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); p.arcs.len()];
    for (i, f) in p.union.faces.iter().enumerate().skip(p.m_faces) {
        if let FaceTag::Pizza(s) = f.tag {
            faces_of[s].push(i);
        }
    }
    p.arcs
        .iter()
        .zip(faces_of)
        .map(|(arc, faces)| {
            let mut verts: Vec<usize> = faces
                .iter()
                .flat_map(|&f| p.union.faces[f].verts.iter().copied())
                .collect();
            verts.sort_unstable();
            verts.dedup();
            let pts: Vec<V3> = verts
                .iter()
                .filter_map(|&v| p.union.positions[v].map(|q| q.to_f64()))
                .collect();
            let dev = |axis: usize| pts.iter().fold(0.0f64, |m, q| m.max(q[axis].abs()));
            let (axis, planar_deviation) = (0..3)
                .map(|a| (a, dev(a)))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            let base: Vec<V3> = arc
                .vertices
                .iter()
                .map(|&v| p.union.positions[v].expect("rim is finite").to_f64())
                .collect();
            let interior = &base[1..base.len() - 1];
            let signs: Vec<SignVector> = interior
                .iter()
                .map(|q| SignVector::from_signs(*q, 1e-12))
                .collect();
            let first = signs[signs.len() / 2];
            let sign_constant = first.is_orthant() && signs.iter().all(|s| *s == first);
            let (class, quadric) = if planar_deviation <= 1e-12 {
                (SliceClass::Planar(PlaneId::from_normal_axis(axis)), None)
            } else {
                (SliceClass::Conical(first), Some(fit_quadric(&base)))
            };
            PizzaSlice {
                arc: arc.arc,
                role: arc.role,
                class,
                planar_deviation,
                sign_constant,
                quadric,
                faces,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::check_symmetry;
    use crate::octa_graph::{symmetry_group, Isometry};
    use crate::pieces::{ArcSide, PieceId};

    fn circle(z: f64, k: usize) -> Vec<Point3<f64>> {
        (0..k)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / k as f64;
                Point3::new(a.cos(), a.sin(), z)
            })
            .collect()
    }

    #[test]
    fn offset_circle_is_cone_friendly() {
        let r = cone_friendly(&circle(1.0, 40)).unwrap();
        assert!(r.friendly);
        assert!(r.min_clearance > 0.0);
    }

    #[test]
    fn two_points_on_a_ray_are_not() {
        let mut pts = circle(1.0, 12);
        pts[6] = pts[0] * 2.0;
        assert!(!cone_friendly(&pts).unwrap().friendly);
        let mut pts = circle(1.0, 12);
        pts.insert(1, pts[0] * 2.0);
        assert!(!cone_friendly(&pts).unwrap().friendly);
    }

    #[test]
    fn circle_through_origin_is_rejected() {
        let pts: Vec<Point3<f64>> = circle(0.0, 8)
            .into_iter()
            .map(|p| p + Point3::new(1.0, 0.0, 0.0))
            .collect();
        assert!(matches!(
            cone_friendly(&pts),
            Err(BoyError::LoopTouchesOrigin(4))
        ));
    }

    #[test]
    fn boundary_of_m_is_cone_friendly() {
        let m = build_m::<f64>(8).unwrap();
        let r = boundary_cone_report(&m).unwrap();
        assert!(r.friendly, "{r:?}");
        assert!(r.min_clearance > 0.0);
    }

    #[test]
    fn boys_surface_is_a_projective_plane() {
        let m = build_m::<f64>(4).unwrap();
        let p = build_pizza(&m, 10.0).unwrap();
        let c = &p.union;
        assert_eq!(c.euler_characteristic().unwrap(), 1);
        assert!(c.boundary_components().unwrap().is_empty());
        assert!(!c.orientable().unwrap());
        let cone = p.cone();
        assert_eq!(cone.euler_characteristic().unwrap(), 1);
        assert_eq!(cone.boundary_components().unwrap().len(), 1);
        assert_eq!(p.apex_degree(), p.rim.len());
        for t in symmetry_group() {
            assert!(check_symmetry(c, &t));
        }
        assert!(!check_symmetry(c, &Isometry::point_reflection()));
    }

    #[test]
    fn slices_split_twelve_planar_six_conical() {
        let m = build_m::<f64>(4).unwrap();
        let p = build_pizza(&m, 10.0).unwrap();
        let slices = classify_slices(&p);
        assert_eq!(slices.len(), 18);
        let planar = slices
            .iter()
            .filter(|s| matches!(s.class, SliceClass::Planar(_)))
            .count();
        assert_eq!(planar, 12);
        let mut orthants: Vec<SignVector> = slices
            .iter()
            .filter_map(|s| match s.class {
                SliceClass::Conical(o) => Some(o),
                _ => None,
            })
            .collect();
        orthants.sort();
        orthants.dedup();
        assert_eq!(orthants.len(), 6);
        for s in &slices {
            if let Some(q) = s.quadric {
                assert!(s.sign_constant);
                assert!(q.residual < 1e-6, "{} {}", s.arc, q.residual);
            }
        }
        let top = slices
            .iter()
            .find(|s| s.arc.piece == PieceId::Wall(PlaneId::XY) && s.arc.side == ArcSide::Top)
            .unwrap();
        assert_eq!(top.class, SliceClass::Conical(SignVector::new(1, -1, 1)));
    }

    #[test]
    fn rejects_truncation_at_most_one() {
        let m = build_m::<f64>(2).unwrap();
        assert!(matches!(
            build_pizza(&m, 1.0),
            Err(BoyError::InvalidTruncation(_))
        ));
    }

    #[test]
    fn quadric_fit_recovers_a_circular_cone() {
        let pts: Vec<[f64; 3]> = (0..20)
            .map(|i| {
                let a = i as f64 * 0.3;
                [a.cos(), a.sin(), 1.0]
            })
            .collect();
        let q = fit_quadric(&pts);
        assert!(q.residual < 1e-12);
        assert!(q.elliptic);
    }
}
