//! Intrinsic flat structure of the abstract Moebius band: the corridor
//! pieces laid out in the plane and the total geodesic curvature of the
//! developed boundary.

use std::collections::HashMap;

use serde::Serialize;

use crate::assembly::{
    build_m, corridor_decomposition, trace_boundary, CorridorDecomposition, CorridorPiece,
};
use crate::error::{BoyError, Result};
use crate::geom::{turning_angle, PlaneMotion, Point2, Point3};
use crate::pieces::{ArcId, ArcSide, PieceId};
use crate::scalar::{lit, to_f64, Real};
use crate::surface_complex::{edge_key, wall_chart_u, FaceTag, SurfaceComplex};

pub fn corridor_piece_of(p: PieceId) -> CorridorPiece {
    match p {
        PieceId::Wall(q) => CorridorPiece::Wall(q),
        PieceId::Octagon(q) | PieceId::Annulus(q) | PieceId::Disk(q) => CorridorPiece::Flat(q),
    }
}

/// One corridor piece placed in the plane.
#[derive(Clone, Debug)]
pub struct Placement<T> {
    pub piece: CorridorPiece,
    /// Chart coordinates to layout coordinates.
    pub motion: PlaneMotion<T>,
    /// Developed faces in layout coordinates.
    pub polygons: Vec<Vec<Point2<T>>>,
    /// Width and height of the chart's bounding box.
    pub extent: [T; 2],
}

/// A boundary arc in the layout frame of its home placement.
#[derive(Clone, Debug, PartialEq)]
pub struct DevelopedArc<T> {
    pub arc: Option<ArcId>,
    pub points: Vec<Point2<T>>,
    /// `+1` when the surface lies to the left of the traversal, `-1` otherwise.
    pub side: T,
}

/// The meeting point of two consecutive arcs, in a frame containing both.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DevelopedCorner<T> {
    pub before: Point2<T>,
    pub at: Point2<T>,
    pub after: Point2<T>,
    pub side: T,
}

/// Closed developed boundary: `corners[i]` joins `arcs[i-1]` to `arcs[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DevelopedBoundary<T> {
    pub arcs: Vec<DevelopedArc<T>>,
    pub corners: Vec<DevelopedCorner<T>>,
}

impl<T: Real> DevelopedBoundary<T> {
    /// A closed polyline in the plane treated as a single smooth arc.
    pub fn closed_polyline(points: &[Point2<T>], interior_left: bool) -> Self {
        let m = points.len();
        let mut pts = points.to_vec();
        pts.push(points[0]);
        let side = if interior_left { T::one() } else { -T::one() };
        Self {
            arcs: vec![DevelopedArc {
                arc: None,
                points: pts,
                side,
            }],
            corners: vec![DevelopedCorner {
                before: points[m - 1],
                at: points[0],
                after: points[1],
                side,
            }],
        }
    }
}

/// The two developed copies of one seam segment.
pub type SeamPair<T> = ([Point2<T>; 2], [Point2<T>; 2]);

#[derive(Clone, Debug)]
pub struct FlatLayout<T> {
    pub placements: Vec<Placement<T>>,
    /// Seam segment as seen from the two placements it joins.
    pub seams: Vec<SeamPair<T>>,
    pub boundary: DevelopedBoundary<T>,
    /// Largest difference between an edge's length on the surface and in the layout.
    pub edge_distortion: T,
}

impl<T: Real> FlatLayout<T> {
    pub fn wall_extents(&self) -> Vec<[T; 2]> {
        self.placements
            .iter()
            .filter(|p| matches!(p.piece, CorridorPiece::Wall(_)))
            .map(|p| p.extent)
            .collect()
    }

    /// Largest gap between the two developed copies of any seam.
    pub fn seam_mismatch(&self) -> T {
        self.seams.iter().fold(T::zero(), |m, (a, b)| {
            m.max(a[0].distance(b[0])).max(a[1].distance(b[1]))
        })
    }
}

fn chart_interior<T: Real>(piece: CorridorPiece) -> Point2<T> {
    match piece {
        CorridorPiece::Flat(_) => Point2::new(T::zero(), T::zero()),
        CorridorPiece::Wall(_) => Point2::new(lit::<T>(0.75) * T::PI(), T::zero()),
    }
}

/// Endpoints of the seam arc `id` in the chart of its piece.
fn seam_ends<T: Real>(id: ArcId, n: usize) -> [Point2<T>; 2] {
    let arc = crate::pieces::all_patches::<T>()
        .into_iter()
        .flat_map(|p| p.boundary)
        .find(|a| a.id == id)
        .expect("seam arc exists");
    let end = |k: usize| {
        let l = arc.sample_local(k, n);
        match id.side {
            ArcSide::EndX => Point2::new(wall_chart_u(3 * n, n), l.z),
            ArcSide::EndY => Point2::new(T::zero(), l.z),
            _ => Point2::new(l.x, l.y),
        }
    };
    [end(0), end(n)]
}

fn side_of<T: Real>(a: Point2<T>, b: Point2<T>, p: Point2<T>) -> T {
    (b - a).perp_dot(p - a).signum()
}

/// Rigid motion taking segment `b` onto segment `a` (endpoint to endpoint)
/// with the `b` interior landing on the opposite side from the `a` interior.
fn seam_motion<T: Real>(
    a: [Point2<T>; 2],
    a_in: Point2<T>,
    b: [Point2<T>; 2],
    b_in: Point2<T>,
) -> PlaneMotion<T> {
    let rot = PlaneMotion::rotation(turning_angle(b[1] - b[0], a[1] - a[0]));
    let mut g = PlaneMotion {
        offset: a[0] - rot.apply_linear(b[0]),
        ..rot
    };
    if side_of(a[0], a[1], g.apply(b_in)) == side_of(a[0], a[1], a_in) {
        g = PlaneMotion::reflection_across(a[0], a[1]).compose(&g);
    }
    g
}

/// Surface length of the edge `p`-`q` of `piece`: chord in flat pieces,
/// helix length on the unit cylinder of a wall.
fn surface_length<T: Real>(piece: PieceId, p: Point3<T>, q: Point3<T>) -> T {
    match piece {
        PieceId::Wall(plane) => {
            let (a, b) = (plane.unembed(p), plane.unembed(q));
            let ta = (a.y + T::one()).atan2(a.x - T::one());
            let tb = (b.y + T::one()).atan2(b.x - T::one());
            let mut d = (tb - ta).abs();
            if d > T::PI() {
                d = T::TAU() - d;
            }
            (d * d + (b.z - a.z).powi(2)).sqrt()
        }
        _ => p.distance(q),
    }
}

/// Lays the six corridor pieces end to end, cut at the seam between the
/// last piece and the first, which is placed a second time.
pub fn develop_corridor<T: Real>(d: &CorridorDecomposition, n: usize) -> Result<FlatLayout<T>> {
    develop_laps(d, n, 1)
}

/// Like [`develop_corridor`] but walks the corridor `laps` times.
pub fn develop_laps<T: Real>(
    d: &CorridorDecomposition,
    n: usize,
    laps: usize,
) -> Result<FlatLayout<T>> {
    let m = build_m::<T>(n)?;
    develop_complex(&m, d, n, laps)
}

fn develop_complex<T: Real>(
    m: &SurfaceComplex<T>,
    d: &CorridorDecomposition,
    n: usize,
    laps: usize,
) -> Result<FlatLayout<T>> {
    let k = d.pieces.len();
    let mut motions = vec![PlaneMotion::identity()];
    let mut seams = Vec::new();
    for step in 0..k * laps {
        let seam = d.seams[step % k];
        let (prev, next) = (d.pieces[step % k], d.pieces[(step + 1) % k]);
        let arc_of = |p: CorridorPiece| match p {
            CorridorPiece::Flat(_) => seam.flat_arc,
            CorridorPiece::Wall(_) => seam.wall_arc,
        };
        let g = motions[step];
        let a = seam_ends::<T>(arc_of(prev), n).map(|p| g.apply(p));
        let b = seam_ends::<T>(arc_of(next), n);
        let h = seam_motion(a, g.apply(chart_interior(prev)), b, chart_interior(next));
        seams.push((a, b.map(|p| h.apply(p))));
        motions.push(h);
    }
    let piece_at = |i: usize| d.pieces[i % k];

    // chart coordinates per (vertex, corridor piece), and the face of each edge
    let mut uv: HashMap<(usize, CorridorPiece), Point2<T>> = HashMap::new();
    let mut edge_face: HashMap<(usize, usize), usize> = HashMap::new();
    let mut distortion = T::zero();
    let mut polygons: HashMap<CorridorPiece, Vec<Vec<Point2<T>>>> = HashMap::new();
    for (fi, f) in m.faces.iter().enumerate() {
        let FaceTag::Piece(pid) = f.tag else { continue };
        let cp = corridor_piece_of(pid);
        let chart = f.uv.as_ref().expect("pieces carry charts");
        let len = f.verts.len();
        for i in 0..len {
            uv.insert((f.verts[i], cp), chart[i]);
            let j = (i + 1) % len;
            edge_face
                .entry(edge_key(f.verts[i], f.verts[j]))
                .or_insert(fi);
            let (p, q) = (m.positions[f.verts[i]], m.positions[f.verts[j]]);
            if let (Some(p), Some(q)) = (p, q) {
                let dev = (surface_length(pid, p, q) - chart[i].distance(chart[j])).abs();
                distortion = distortion.max(dev);
            }
        }
        polygons.entry(cp).or_default().push(chart.clone());
    }

    let placements = motions
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let piece = piece_at(i);
            let polys = polygons.get(&piece).cloned().unwrap_or_default();
            let (mut lo, mut hi) = ([T::infinity(); 2], [T::neg_infinity(); 2]);
            for p in polys.iter().flatten() {
                lo = [lo[0].min(p.x), lo[1].min(p.y)];
                hi = [hi[0].max(p.x), hi[1].max(p.y)];
            }
            Placement {
                piece,
                motion: *g,
                polygons: polys
                    .iter()
                    .map(|poly| poly.iter().map(|p| g.apply(*p)).collect())
                    .collect(),
                extent: [hi[0] - lo[0], hi[1] - lo[1]],
            }
        })
        .collect();

    let arcs = trace_boundary(m)?;
    let home = |p: CorridorPiece| {
        (0..k)
            .find(|&i| d.pieces[i] == p)
            .expect("piece in corridor")
    };
    let layout_point = |v: usize, p: CorridorPiece, placement: usize| -> Result<Point2<T>> {
        let c = uv
            .get(&(v, p))
            .ok_or_else(|| BoyError::BoundaryShape(format!("vertex {v} has no chart in {p}")))?;
        Ok(motions[placement].apply(*c))
    };
    let third_vertex = |a: usize, b: usize| -> Result<usize> {
        let f = edge_face
            .get(&edge_key(a, b))
            .ok_or_else(|| BoyError::BoundaryShape(format!("edge {a}-{b} has no face")))?;
        let verts = &m.faces[*f].verts;
        let i = verts.iter().position(|&v| v == b).unwrap();
        // neighbour of b that is not a
        let len = verts.len();
        let c = if verts[(i + 1) % len] == a {
            verts[(i + len - 1) % len]
        } else {
            verts[(i + 1) % len]
        };
        Ok(c)
    };
    let edge_side = |a: usize, b: usize, p: CorridorPiece, placement: usize| -> Result<T> {
        let c = third_vertex(a, b)?;
        Ok(side_of(
            layout_point(a, p, placement)?,
            layout_point(b, p, placement)?,
            layout_point(c, p, placement)?,
        ))
    };

    let mut developed = Vec::with_capacity(arcs.len());
    for a in &arcs {
        let p = corridor_piece_of(a.arc.piece);
        let h = home(p);
        let points = a
            .vertices
            .iter()
            .map(|&v| layout_point(v, p, h))
            .collect::<Result<Vec<_>>>()?;
        let side = edge_side(a.vertices[0], a.vertices[1], p, h)?;
        developed.push(DevelopedArc {
            arc: Some(a.arc),
            points,
            side,
        });
    }
    let mut corners = Vec::with_capacity(arcs.len());
    for i in 0..arcs.len() {
        let prev = &arcs[(i + arcs.len() - 1) % arcs.len()];
        let cur = &arcs[i];
        let (pa, pb) = (
            corridor_piece_of(prev.arc.piece),
            corridor_piece_of(cur.arc.piece),
        );
        let (ia, ib) = if pa == pb {
            (home(pa), home(pa))
        } else {
            let s = (0..k)
                .find(|&s| {
                    let pair = [piece_at(s), piece_at(s + 1)];
                    pair.contains(&pa) && pair.contains(&pb)
                })
                .ok_or_else(|| {
                    BoyError::BoundaryShape(format!("{pa} and {pb} are not adjacent"))
                })?;
            if piece_at(s) == pa {
                (s, s + 1)
            } else {
                (s + 1, s)
            }
        };
        let lv = prev.vertices.len();
        let before = layout_point(prev.vertices[lv - 2], pa, ia)?;
        let at = layout_point(cur.vertices[0], pb, ib)?;
        let after = layout_point(cur.vertices[1], pb, ib)?;
        let side = edge_side(prev.vertices[lv - 2], prev.vertices[lv - 1], pa, ia)?;
        corners.push(DevelopedCorner {
            before,
            at,
            after,
            side,
        });
    }

    Ok(FlatLayout {
        placements,
        seams,
        boundary: DevelopedBoundary {
            arcs: developed,
            corners,
        },
        edge_distortion: distortion,
    })
}

/// Geodesic curvature of the developed boundary, each quantity signed
/// positive when the boundary turns toward the surface.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    /// Sum of absolute arc totals and absolute corner angles.
    pub absolute: f64,
    /// Signed sum; zero for a flat Moebius band.
    pub signed: f64,
    pub arcs: Vec<f64>,
    pub corners: Vec<f64>,
}

/// Discrete curvature `2 sin(turn) / |q[i+1] - q[i-1]|` at interior points
/// and edge lengths of a polyline, signed by `side`.
fn arc_curvatures<T: Real>(a: &DevelopedArc<T>) -> Result<(Vec<f64>, Vec<f64>)> {
    let pts: Vec<[f64; 2]> = a.points.iter().map(|p| p.to_f64()).collect();
    let side = to_f64(a.side);
    let m = pts.len();
    let sub = |u: [f64; 2], v: [f64; 2]| [u[0] - v[0], u[1] - v[1]];
    let len = |u: [f64; 2]| u[0].hypot(u[1]);
    let edges: Vec<f64> = (0..m - 1).map(|i| len(sub(pts[i + 1], pts[i]))).collect();
    if let Some(i) = edges.iter().position(|&e| e <= 0.0) {
        return Err(BoyError::DegenerateSegment(i));
    }
    let mut kappa = vec![0.0; m];
    for i in 1..m - 1 {
        let (u, v) = (sub(pts[i], pts[i - 1]), sub(pts[i + 1], pts[i]));
        let turn = (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1]);
        kappa[i] = side * 2.0 * turn.sin() / len(sub(pts[i + 1], pts[i - 1]));
    }
    if m > 2 {
        kappa[0] = kappa[1];
        kappa[m - 1] = kappa[m - 2];
    }
    Ok((kappa, edges))
}

pub fn geodesic_curvature_report<T: Real>(b: &DevelopedBoundary<T>) -> Result<CurvatureReport> {
    let mut arc_totals = Vec::with_capacity(b.arcs.len());
    let mut ends = Vec::with_capacity(b.arcs.len());
    for a in &b.arcs {
        let (kappa, edges) = arc_curvatures(a)?;
        let m = kappa.len();
        let mut total = 0.0;
        for i in 0..m {
            let left = if i > 0 { edges[i - 1] } else { 0.0 };
            let right = if i + 1 < m { edges[i] } else { 0.0 };
            total += kappa[i] * (left + right) / 2.0;
        }
        arc_totals.push(total);
        // half-edge turning absorbed by the polyline at each end
        ends.push((kappa[0] * edges[0] / 2.0, kappa[m - 1] * edges[m - 2] / 2.0));
    }
    let k = b.arcs.len();
    let mut corners = Vec::with_capacity(k);
    for (i, c) in b.corners.iter().enumerate() {
        let u = c.at - c.before;
        let v = c.after - c.at;
        if u.norm() <= T::zero() || v.norm() <= T::zero() {
            return Err(BoyError::DegenerateSegment(i));
        }
        let turn = to_f64(c.side * turning_angle(u, v));
        let incoming = ends[(i + k - 1) % k].1;
        let outgoing = ends[i].0;
        corners.push(turn - incoming - outgoing);
    }
    let absolute = arc_totals.iter().chain(&corners).map(|x| x.abs()).sum();
    let signed = arc_totals.iter().chain(&corners).sum();
    Ok(CurvatureReport {
        absolute,
        signed,
        arcs: arc_totals,
        corners,
    })
}

/// Total (absolute) geodesic curvature of the developed boundary.
pub fn total_geodesic_curvature<T: Real>(layout: &FlatLayout<T>) -> Result<f64> {
    Ok(geodesic_curvature_report(&layout.boundary)?.absolute)
}

/// Layout of the corridor at resolution `n`.
pub fn develop<T: Real>(n: usize) -> Result<FlatLayout<T>> {
    develop_corridor(&corridor_decomposition(), n)
}
