//! Analytic building pieces: octagons, three-quarter annuli, three-quarter
//! cylinder walls and disks, each with labelled boundary arcs.
//!
//! Every piece is described in local XY coordinates and carried to its
//! coordinate plane by a power of the cyclic coordinate shift
//! `(X, Y, Z) -> (Z, X, Y)`. Arcs are sampled through [`BoundaryArc::sample`],
//! which is the single place sample points are computed, so two pieces that
//! share an arc produce bit-identical point sequences.

use std::fmt;

use serde::Serialize;

use crate::geom::Point3;
use crate::octa_graph::{Isometry, SignVector};
use crate::scalar::{count, lit, to_f64, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PlaneId {
    XY,
    YZ,
    ZX,
}

impl PlaneId {
    pub const ALL: [PlaneId; 3] = [PlaneId::XY, PlaneId::YZ, PlaneId::ZX];

    pub fn index(self) -> u32 {
        match self {
            PlaneId::XY => 0,
            PlaneId::YZ => 1,
            PlaneId::ZX => 2,
        }
    }

    pub fn from_index(k: u32) -> PlaneId {
        PlaneId::ALL[(k % 3) as usize]
    }

    /// Sibling obtained by cycling the coordinates: XY -> YZ -> ZX -> XY.
    pub fn next(self) -> PlaneId {
        PlaneId::from_index(self.index() + 1)
    }

    /// Map from local XY coordinates to this plane.
    pub fn embedding(self) -> Isometry {
        Isometry::cycle().power(self.index())
    }

    pub fn embed<T: Real>(self, p: Point3<T>) -> Point3<T> {
        self.embedding().apply_point(p)
    }

    pub fn unembed<T: Real>(self, p: Point3<T>) -> Point3<T> {
        self.embedding().inverse().apply_point(p)
    }

    /// Index of the coordinate that vanishes on this plane.
    pub fn normal_axis(self) -> usize {
        match self {
            PlaneId::XY => 2,
            PlaneId::YZ => 0,
            PlaneId::ZX => 1,
        }
    }

    pub fn from_normal_axis(axis: usize) -> PlaneId {
        match axis {
            2 => PlaneId::XY,
            0 => PlaneId::YZ,
            _ => PlaneId::ZX,
        }
    }

    /// Image of this plane under an isometry.
    pub fn mapped_by(self, t: &Isometry) -> PlaneId {
        let mut normal = [0i8; 3];
        normal[self.normal_axis()] = 1;
        let image = t.apply_sign(SignVector(normal));
        let axis = (0..3).find(|&i| image.0[i] != 0).unwrap();
        PlaneId::from_normal_axis(axis)
    }
}

impl fmt::Display for PlaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlaneId::XY => "XY",
            PlaneId::YZ => "YZ",
            PlaneId::ZX => "ZX",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PieceId {
    Octagon(PlaneId),
    Annulus(PlaneId),
    Wall(PlaneId),
    Disk(PlaneId),
}

impl PieceId {
    pub fn plane(self) -> PlaneId {
        match self {
            PieceId::Octagon(p) | PieceId::Annulus(p) | PieceId::Wall(p) | PieceId::Disk(p) => p,
        }
    }

    pub fn with_plane(self, p: PlaneId) -> PieceId {
        match self {
            PieceId::Octagon(_) => PieceId::Octagon(p),
            PieceId::Annulus(_) => PieceId::Annulus(p),
            PieceId::Wall(_) => PieceId::Wall(p),
            PieceId::Disk(_) => PieceId::Disk(p),
        }
    }
}

impl fmt::Display for PieceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceId::Octagon(p) => write!(f, "O_{p}"),
            PieceId::Annulus(p) => write!(f, "A_{p}"),
            PieceId::Wall(p) => write!(f, "B_{p}"),
            PieceId::Disk(p) => write!(f, "D_{p}"),
        }
    }
}

/// Which side of the local square a straight octagon edge lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    XPos,
    YPos,
    XNeg,
    YNeg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArcSide {
    /// Octagon road around the removed corner disk at local `(sx, sy)`.
    Road([i8; 2]),
    /// Octagon straight edge.
    Edge(Side),
    /// Annulus inner (radius 2/3) bridge arc.
    Inner,
    /// Annulus outer (radius 4/3) bridge arc.
    Outer,
    /// Annulus chop segment on the line `x = 1`.
    ChopX,
    /// Annulus chop segment on the line `y = -1`.
    ChopY,
    /// Wall circle at height `+1/3`.
    Top,
    /// Wall circle at height `-1/3`.
    Bottom,
    /// Wall end segment `(1, 0, t)`.
    EndX,
    /// Wall end segment `(0, -1, t)`.
    EndY,
    /// Quarter arc of a disk boundary, shared with the octagon road.
    DiskRoad,
    /// Three-quarter arc of a disk boundary, shared with the annulus.
    DiskBridge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcId {
    pub piece: PieceId,
    pub side: ArcSide,
}

impl ArcId {
    pub fn new(piece: PieceId, side: ArcSide) -> Self {
        Self { piece, side }
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:?}", self.piece, self.side)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArcRole {
    Road,
    Bridge,
    StraightEdge,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArcGeometry<T> {
    /// Arc of the circle of `radius` about local `center` in the plane
    /// `z = offset`, from angle `start_quarter * pi/2` sweeping `quarters * pi/2`
    /// counterclockwise.
    Circular {
        center: [T; 2],
        radius: T,
        start_quarter: i32,
        quarters: u32,
        offset: T,
    },
    /// Segment of length 2/3 along local axis `free_axis`, centered at
    /// `anchor` (whose `free_axis` coordinate is ignored), running from
    /// `-1/3` to `+1/3`.
    Segment { anchor: [T; 3], free_axis: usize },
}

/// Number of segments a resolution-`n` tessellation uses along each edge of
/// length 2/3, and along each quarter of a circular arc.
pub fn segment_parameter<T: Real>(k: usize, n: usize) -> T {
    count::<T>(2 * k as i64 - n as i64) / count::<T>(3 * n as i64)
}

/// Unit direction at angle `index * (pi/2) / n`, with exact values on the
/// coordinate axes.
pub fn quarter_direction<T: Real>(index: i64, n: usize) -> [T; 2] {
    let n = n as i64;
    let q = index.div_euclid(n);
    let r = index.rem_euclid(n);
    let angle = T::FRAC_PI_2() * count::<T>(r) / count::<T>(n);
    let (s, c) = if r == 0 {
        (T::zero(), T::one())
    } else {
        angle.sin_cos()
    };
    match q.rem_euclid(4) {
        0 => [c, s],
        1 => [-s, c],
        2 => [-c, -s],
        _ => [s, -c],
    }
}

/// Point of the circle of `radius` about `center` at the quarter-grid angle.
pub fn circle_point<T: Real>(center: [T; 2], radius: T, index: i64, n: usize) -> [T; 2] {
    let d = quarter_direction::<T>(index, n);
    [center[0] + radius * d[0], center[1] + radius * d[1]]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryArc<T> {
    pub id: ArcId,
    pub geometry: ArcGeometry<T>,
    pub role: ArcRole,
}

impl<T: Real> BoundaryArc<T> {
    pub fn plane(&self) -> PlaneId {
        self.id.piece.plane()
    }

    /// Number of segments at resolution `n`.
    pub fn segments(&self, n: usize) -> usize {
        match self.geometry {
            ArcGeometry::Circular { quarters, .. } => quarters as usize * n,
            ArcGeometry::Segment { .. } => n,
        }
    }

    /// Point `k` (of `segments(n) + 1`) in local coordinates.
    pub fn sample_local(&self, k: usize, n: usize) -> Point3<T> {
        match self.geometry {
            ArcGeometry::Circular {
                center,
                radius,
                start_quarter,
                offset,
                ..
            } => {
                let idx = start_quarter as i64 * n as i64 + k as i64;
                let p = circle_point(center, radius, idx, n);
                Point3::new(p[0], p[1], offset)
            }
            ArcGeometry::Segment { anchor, free_axis } => {
                let mut p = anchor;
                p[free_axis] = segment_parameter(k, n);
                Point3::from_array(p)
            }
        }
    }

    pub fn sample(&self, k: usize, n: usize) -> Point3<T> {
        self.plane().embed(self.sample_local(k, n))
    }

    pub fn samples(&self, n: usize) -> Vec<Point3<T>> {
        (0..=self.segments(n)).map(|k| self.sample(k, n)).collect()
    }

    pub fn start(&self) -> Point3<T> {
        self.sample(0, 1)
    }

    pub fn end(&self) -> Point3<T> {
        self.sample(self.segments(1), 1)
    }

    /// Radius for circular arcs.
    pub fn radius(&self) -> Option<T> {
        match self.geometry {
            ArcGeometry::Circular { radius, .. } => Some(radius),
            ArcGeometry::Segment { .. } => None,
        }
    }

    /// Swept angle for circular arcs.
    pub fn sweep(&self) -> Option<T> {
        match self.geometry {
            ArcGeometry::Circular { quarters, .. } => Some(T::FRAC_PI_2() * count(quarters as i64)),
            ArcGeometry::Segment { .. } => None,
        }
    }

    /// Arc length.
    pub fn length(&self) -> T {
        match self.geometry {
            ArcGeometry::Circular {
                radius, quarters, ..
            } => radius * T::FRAC_PI_2() * count(quarters as i64),
            ArcGeometry::Segment { .. } => lit(2.0 / 3.0),
        }
    }

    /// Sign label of the arc's interior points (zero where the arc lies on a
    /// coordinate plane).
    pub fn sign_label(&self) -> SignVector {
        let n = 4;
        let mid = self.sample(self.segments(n) / 2, n);
        SignVector::from_signs(mid.to_f64(), to_f64(T::gluing_tolerance()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PatchKind {
    Octagon,
    Annulus,
    CylinderWall,
    Disk,
}

/// One analytic piece of the surface.
#[derive(Clone, Debug, PartialEq)]
pub struct Patch<T> {
    pub kind: PatchKind,
    pub piece: PieceId,
    pub boundary: Vec<BoundaryArc<T>>,
}

pub const CORNERS: [[i8; 2]; 4] = [[1, 1], [-1, 1], [-1, -1], [1, -1]];

/// Starting quarter of the road arc around corner `(sx, sy)`: the quarter
/// circle facing the origin.
fn road_start_quarter(corner: [i8; 2]) -> i32 {
    match corner {
        [1, 1] => 2,
        [-1, 1] => 3,
        [-1, -1] => 0,
        _ => 1,
    }
}

fn third<T: Real>() -> T {
    lit(1.0 / 3.0)
}

fn two_thirds<T: Real>() -> T {
    lit(2.0 / 3.0)
}

fn four_thirds<T: Real>() -> T {
    lit(4.0 / 3.0)
}

fn crossbridge_center<T: Real>() -> [T; 2] {
    [T::one(), -T::one()]
}

fn side_segment<T: Real>(piece: PieceId, side: Side) -> BoundaryArc<T> {
    let one = T::one();
    let zero = T::zero();
    let (anchor, free_axis) = match side {
        Side::XPos => ([one, zero, zero], 1),
        Side::XNeg => ([-one, zero, zero], 1),
        Side::YPos => ([zero, one, zero], 0),
        Side::YNeg => ([zero, -one, zero], 0),
    };
    BoundaryArc {
        id: ArcId::new(piece, ArcSide::Edge(side)),
        geometry: ArcGeometry::Segment { anchor, free_axis },
        role: ArcRole::StraightEdge,
    }
}

fn road_arc<T: Real>(piece: PieceId, corner: [i8; 2], side: ArcSide) -> BoundaryArc<T> {
    BoundaryArc {
        id: ArcId::new(piece, side),
        geometry: ArcGeometry::Circular {
            center: [count(corner[0] as i64), count(corner[1] as i64)],
            radius: two_thirds(),
            start_quarter: road_start_quarter(corner),
            quarters: 1,
            offset: T::zero(),
        },
        role: ArcRole::Road,
    }
}

fn three_quarter_arc<T: Real>(id: ArcId, radius: T, offset: T, role: ArcRole) -> BoundaryArc<T> {
    BoundaryArc {
        id,
        geometry: ArcGeometry::Circular {
            center: crossbridge_center(),
            radius,
            start_quarter: 2,
            quarters: 3,
            offset,
        },
        role,
    }
}

/// `[-1,1]^2` minus the open corner disks of radius 2/3, in the given plane.
pub fn make_octagon_piece<T: Real>(plane: PlaneId) -> Patch<T> {
    let piece = PieceId::Octagon(plane);
    // counterclockwise from the +x side
    let boundary = vec![
        side_segment(piece, Side::XPos),
        road_arc(piece, [1, 1], ArcSide::Road([1, 1])),
        side_segment(piece, Side::YPos),
        road_arc(piece, [-1, 1], ArcSide::Road([-1, 1])),
        side_segment(piece, Side::XNeg),
        road_arc(piece, [-1, -1], ArcSide::Road([-1, -1])),
        side_segment(piece, Side::YNeg),
        road_arc(piece, [1, -1], ArcSide::Road([1, -1])),
    ];
    Patch {
        kind: PatchKind::Octagon,
        piece,
        boundary,
    }
}

pub fn make_octacross<T: Real>() -> [Patch<T>; 3] {
    PlaneId::ALL.map(make_octagon_piece)
}

/// The three-quarter annulus and three-quarter cylinder wall of the
/// crossbridge in the given plane.
pub fn make_crossbridge<T: Real>(plane: PlaneId) -> (Patch<T>, Patch<T>) {
    let zero = T::zero();
    let one = T::one();
    let a = PieceId::Annulus(plane);
    let annulus = Patch {
        kind: PatchKind::Annulus,
        piece: a,
        boundary: vec![
            three_quarter_arc(
                ArcId::new(a, ArcSide::Inner),
                two_thirds(),
                zero,
                ArcRole::Bridge,
            ),
            BoundaryArc {
                id: ArcId::new(a, ArcSide::ChopY),
                geometry: ArcGeometry::Segment {
                    anchor: [zero, -one, zero],
                    free_axis: 0,
                },
                role: ArcRole::StraightEdge,
            },
            three_quarter_arc(
                ArcId::new(a, ArcSide::Outer),
                four_thirds(),
                zero,
                ArcRole::Bridge,
            ),
            BoundaryArc {
                id: ArcId::new(a, ArcSide::ChopX),
                geometry: ArcGeometry::Segment {
                    anchor: [one, zero, zero],
                    free_axis: 1,
                },
                role: ArcRole::StraightEdge,
            },
        ],
    };
    let b = PieceId::Wall(plane);
    let wall = Patch {
        kind: PatchKind::CylinderWall,
        piece: b,
        boundary: vec![
            three_quarter_arc(
                ArcId::new(b, ArcSide::Bottom),
                one,
                -third::<T>(),
                ArcRole::Bridge,
            ),
            BoundaryArc {
                id: ArcId::new(b, ArcSide::EndX),
                geometry: ArcGeometry::Segment {
                    anchor: [one, zero, zero],
                    free_axis: 2,
                },
                role: ArcRole::StraightEdge,
            },
            three_quarter_arc(ArcId::new(b, ArcSide::Top), one, third(), ArcRole::Bridge),
            BoundaryArc {
                id: ArcId::new(b, ArcSide::EndY),
                geometry: ArcGeometry::Segment {
                    anchor: [zero, -one, zero],
                    free_axis: 2,
                },
                role: ArcRole::StraightEdge,
            },
        ],
    };
    (annulus, wall)
}

/// Closed disk of radius 2/3 about the crossbridge corner.
pub fn make_disk<T: Real>(plane: PlaneId) -> Patch<T> {
    let d = PieceId::Disk(plane);
    Patch {
        kind: PatchKind::Disk,
        piece: d,
        boundary: vec![
            road_arc(d, [1, -1], ArcSide::DiskRoad),
            three_quarter_arc(
                ArcId::new(d, ArcSide::DiskBridge),
                two_thirds(),
                T::zero(),
                ArcRole::Bridge,
            ),
        ],
    }
}

/// Every piece of the Moebius band, octagons first.
pub fn all_patches<T: Real>() -> Vec<Patch<T>> {
    let mut out: Vec<Patch<T>> = make_octacross().into_iter().collect();
    for plane in PlaneId::ALL {
        let (a, b) = make_crossbridge(plane);
        out.push(a);
        out.push(b);
    }
    for plane in PlaneId::ALL {
        out.push(make_disk(plane));
    }
    out
}

/// Distance along direction `dir` (local, unit) from the origin to the
/// octagon boundary.
fn octagon_ray_extent<T: Real>(dir: [T; 2]) -> T {
    let s_sq = T::one() / dir[0].abs().max(dir[1].abs());
    let hit = [dir[0] * s_sq, dir[1] * s_sq];
    let corner = [hit[0].signum(), hit[1].signum()];
    let r = two_thirds::<T>();
    let dx = hit[0] - corner[0];
    let dy = hit[1] - corner[1];
    if dx * dx + dy * dy >= r * r {
        return s_sq;
    }
    // nearer intersection of the ray with the corner circle
    let b = dir[0] * corner[0] + dir[1] * corner[1];
    let c = corner[0] * corner[0] + corner[1] * corner[1] - r * r;
    b - (b * b - c).sqrt()
}

impl<T: Real> Patch<T> {
    pub fn plane(&self) -> PlaneId {
        self.piece.plane()
    }

    pub fn arc(&self, side: ArcSide) -> Option<&BoundaryArc<T>> {
        self.boundary.iter().find(|a| a.id.side == side)
    }

    /// Parameterization on `[0,1]^2`, in space.
    ///
    /// Octagons and disks use polar coordinates about their center (`u` is
    /// the turn fraction, `v` the radial fraction); annuli use
    /// (angle, radius) and walls (angle, height) over the three-quarter range.
    pub fn point(&self, u: T, v: T) -> Point3<T> {
        let pi = T::PI();
        let two = lit::<T>(2.0);
        let local = match self.kind {
            PatchKind::Octagon => {
                let (s, c) = (two * pi * u).sin_cos();
                let extent = octagon_ray_extent([c, s]);
                Point3::new(c * extent * v, s * extent * v, T::zero())
            }
            PatchKind::Disk => {
                let (s, c) = (two * pi * u).sin_cos();
                let r = two_thirds::<T>() * v;
                Point3::new(T::one() + r * c, -T::one() + r * s, T::zero())
            }
            PatchKind::Annulus => {
                let theta = pi + lit::<T>(1.5) * pi * u;
                let r = two_thirds::<T>() * (T::one() + v);
                let (s, c) = theta.sin_cos();
                Point3::new(T::one() + r * c, -T::one() + r * s, T::zero())
            }
            PatchKind::CylinderWall => {
                let theta = pi + lit::<T>(1.5) * pi * u;
                let (s, c) = theta.sin_cos();
                let z = two_thirds::<T>() * v - third::<T>();
                Point3::new(T::one() + c, -T::one() + s, z)
            }
        };
        self.plane().embed(local)
    }

    /// Membership test with tolerance `eps`.
    pub fn contains(&self, p: Point3<T>, eps: T) -> bool {
        let q = self.plane().unembed(p);
        let one = T::one();
        let planar = q.z.abs() <= eps;
        let d_corner = |cx: T, cy: T| ((q.x - cx).powi(2) + (q.y - cy).powi(2)).sqrt();
        let chopped_ok = q.x.abs().max(q.y.abs()) >= one - eps;
        match self.kind {
            PatchKind::Octagon => {
                planar
                    && q.x.abs() <= one + eps
                    && q.y.abs() <= one + eps
                    && CORNERS.iter().all(|c| {
                        d_corner(count(c[0] as i64), count(c[1] as i64)) >= two_thirds::<T>() - eps
                    })
            }
            PatchKind::Disk => planar && d_corner(one, -one) <= two_thirds::<T>() + eps,
            PatchKind::Annulus => {
                let d = d_corner(one, -one);
                planar
                    && d >= two_thirds::<T>() - eps
                    && d <= four_thirds::<T>() + eps
                    && chopped_ok
            }
            PatchKind::CylinderWall => {
                (d_corner(one, -one) - one).abs() <= eps
                    && q.z.abs() <= third::<T>() + eps
                    && chopped_ok
            }
        }
    }

    /// Orders the boundary arcs into one closed curve; returns each arc with
    /// a flag telling whether it is traversed against its canonical direction,
    /// or `None` if the arcs do not close up.
    pub fn boundary_loop(&self, eps: T) -> Option<Vec<(ArcId, bool)>> {
        let arcs = &self.boundary;
        let first = arcs.first()?;
        let mut used = vec![false; arcs.len()];
        used[0] = true;
        let mut out = vec![(first.id, false)];
        let mut cursor = first.end();
        for _ in 1..arcs.len() {
            let (i, rev) = arcs.iter().enumerate().find_map(|(i, a)| {
                if used[i] {
                    None
                } else if a.start().max_abs_diff(cursor) <= eps {
                    Some((i, false))
                } else if a.end().max_abs_diff(cursor) <= eps {
                    Some((i, true))
                } else {
                    None
                }
            })?;
            used[i] = true;
            cursor = if rev { arcs[i].start() } else { arcs[i].end() };
            out.push((arcs[i].id, rev));
        }
        (cursor.max_abs_diff(first.start()) <= eps).then_some(out)
    }
}

fn segment_intersection<T: Real>(
    a0: Point3<T>,
    a1: Point3<T>,
    b0: Point3<T>,
    b1: Point3<T>,
) -> Option<Point3<T>> {
    let u = a1 - a0;
    let v = b1 - b0;
    let w = a0 - b0;
    let (a, b, c, d, e) = (u.dot(u), u.dot(v), v.dot(v), u.dot(w), v.dot(w));
    let den = a * c - b * b;
    if den.abs() <= T::epsilon() {
        return None;
    }
    let s = (b * e - c * d) / den;
    let t = (a * e - b * d) / den;
    let eps = T::gluing_tolerance();
    if s < -eps || s > T::one() + eps || t < -eps || t > T::one() + eps {
        return None;
    }
    let p = a0 + u * s;
    let q = b0 + v * t;
    (p.distance(q) <= eps).then_some(p)
}

/// Points where straight edges of the octacross cross each other.
pub fn cross_points<T: Real>() -> Vec<Point3<T>> {
    let straight: Vec<BoundaryArc<T>> = make_octacross::<T>()
        .iter()
        .flat_map(|p| p.boundary.clone())
        .filter(|a| a.role == ArcRole::StraightEdge)
        .collect();
    let mut out: Vec<Point3<T>> = Vec::new();
    for (i, a) in straight.iter().enumerate() {
        for b in &straight[i + 1..] {
            if let Some(p) = segment_intersection(a.start(), a.end(), b.start(), b.end()) {
                if !out
                    .iter()
                    .any(|q| q.max_abs_diff(p) <= T::gluing_tolerance())
                {
                    out.push(p);
                }
            }
        }
    }
    out
}
