//! Gluing the pieces into the head `H` and the Moebius band `M`, reading the
//! boundary circuit back off `M`, and checking the order-6 symmetry.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{BoyError, Result};
use crate::geom::Point3;
use crate::octa_graph::{Circuit, CircuitEdge, Isometry, SignVector, StepLabel};
use crate::pieces::{all_patches, make_octacross, ArcId, ArcSide, PieceId, PlaneId, Side};
use crate::scalar::{to_f64, Real};
use crate::surface_complex::{
    glue, tessellate, ChainKey, EdgeRole, FaceTag, GluingEntry, GluingTable, SubMesh,
    SurfaceComplex,
};

/// One of the six pieces of the corridor: `M_P` is the octagon, annulus and
/// disk of plane `P`; `B_P` the cylinder wall of the crossbridge in `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CorridorPiece {
    Flat(PlaneId),
    Wall(PlaneId),
}

impl fmt::Display for CorridorPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorridorPiece::Flat(p) => write!(f, "M_{p}"),
            CorridorPiece::Wall(p) => write!(f, "B_{p}"),
        }
    }
}

/// Straight segment of length 2/3 shared by a flat piece and a wall piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Seam {
    pub flat_arc: ArcId,
    pub wall_arc: ArcId,
}

impl Seam {
    pub fn flat(&self) -> PlaneId {
        self.flat_arc.piece.plane()
    }

    pub fn wall(&self) -> PlaneId {
        self.wall_arc.piece.plane()
    }
}

/// The cycle `M_XY, B_YZ, M_ZX, B_XY, M_YZ, B_ZX`; `seams[i]` joins
/// `pieces[i]` to `pieces[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorridorDecomposition {
    pub pieces: Vec<CorridorPiece>,
    pub seams: Vec<Seam>,
}

fn seam_to_next_wall(p: PlaneId) -> Seam {
    Seam {
        flat_arc: ArcId::new(PieceId::Octagon(p), ArcSide::Edge(Side::YPos)),
        wall_arc: ArcId::new(PieceId::Wall(p.next()), ArcSide::EndX),
    }
}

fn seam_to_previous_wall(p: PlaneId) -> Seam {
    Seam {
        flat_arc: ArcId::new(PieceId::Octagon(p), ArcSide::Edge(Side::XNeg)),
        wall_arc: ArcId::new(PieceId::Wall(p.next().next()), ArcSide::EndY),
    }
}

pub fn corridor_decomposition() -> CorridorDecomposition {
    use PlaneId::*;
    let pieces = vec![
        CorridorPiece::Flat(XY),
        CorridorPiece::Wall(YZ),
        CorridorPiece::Flat(ZX),
        CorridorPiece::Wall(XY),
        CorridorPiece::Flat(YZ),
        CorridorPiece::Wall(ZX),
    ];
    let seams = vec![
        seam_to_next_wall(XY),
        seam_to_previous_wall(ZX),
        seam_to_next_wall(ZX),
        seam_to_previous_wall(YZ),
        seam_to_next_wall(YZ),
        seam_to_previous_wall(XY),
    ];
    CorridorDecomposition { pieces, seams }
}

impl CorridorDecomposition {
    /// Pieces in the order an observer walking the corridor meets them,
    /// starting from `M_XY`.
    pub fn traversal_order(&self) -> Vec<String> {
        self.pieces.iter().map(ToString::to_string).collect()
    }
}

fn arc(piece: PieceId, side: ArcSide) -> ChainKey {
    ChainKey::Arc(ArcId::new(piece, side))
}

/// Gluings internal to the flat piece `M_P`.
pub fn flat_piece_entries(p: PlaneId) -> Vec<GluingEntry> {
    let (o, a, d) = (PieceId::Octagon(p), PieceId::Annulus(p), PieceId::Disk(p));
    vec![
        GluingEntry::new(
            arc(o, ArcSide::Edge(Side::XPos)),
            arc(a, ArcSide::ChopX),
            false,
        ),
        GluingEntry::new(
            arc(o, ArcSide::Edge(Side::YNeg)),
            arc(a, ArcSide::ChopY),
            false,
        ),
        GluingEntry::new(
            arc(o, ArcSide::Road([1, -1])),
            arc(d, ArcSide::DiskRoad),
            false,
        ),
        GluingEntry::new(arc(a, ArcSide::Inner), arc(d, ArcSide::DiskBridge), false),
    ]
}

pub fn seam_entries() -> Vec<GluingEntry> {
    corridor_decomposition()
        .seams
        .iter()
        .map(|s| GluingEntry::new(ChainKey::Arc(s.flat_arc), ChainKey::Arc(s.wall_arc), false))
        .collect()
}

/// Every gluing of `M`: the internal gluings of the three flat pieces
/// followed by the six corridor seams.
pub fn gluing_table() -> GluingTable {
    let mut entries: Vec<GluingEntry> = PlaneId::ALL
        .iter()
        .flat_map(|&p| flat_piece_entries(p))
        .collect();
    entries.extend(seam_entries());
    GluingTable { entries }
}

/// Table with the orientation of corridor seam `seam` flipped; used to
/// exercise failure reporting.
pub fn perturbed_gluing_table(seam: usize) -> GluingTable {
    let mut t = gluing_table();
    let idx = 12 + seam % 6;
    t.entries[idx].reversed = !t.entries[idx].reversed;
    t
}

/// Image of an arc under an element of the symmetry group that permutes
/// the planes by the coordinate cycle.
pub fn map_arc(t: &Isometry, id: ArcId) -> ArcId {
    let plane = id.piece.plane().mapped_by(t);
    ArcId::new(id.piece.with_plane(plane), id.side)
}

pub fn tessellate_pieces<T: Real>(n: usize) -> Result<Vec<SubMesh<T>>> {
    all_patches::<T>()
        .iter()
        .map(|p| tessellate(p, n))
        .collect()
}

pub fn build_m_with_table<T: Real>(n: usize, table: &GluingTable) -> Result<SurfaceComplex<T>> {
    glue(&tessellate_pieces::<T>(n)?, table)
}

/// The Moebius band `M`: head plus the three disks.
pub fn build_m<T: Real>(n: usize) -> Result<SurfaceComplex<T>> {
    build_m_with_table(n, &gluing_table())
}

/// The head `H`: `M` with the disk faces removed.
pub fn build_h<T: Real>(n: usize) -> Result<SurfaceComplex<T>> {
    let m = build_m::<T>(n)?;
    Ok(m.filter_faces(|f| !matches!(f.tag, FaceTag::Piece(PieceId::Disk(_)))))
}

/// The three octagons, unglued (they only cross each other).
pub fn build_octacross<T: Real>(n: usize) -> Result<SurfaceComplex<T>> {
    let meshes = make_octacross::<T>()
        .iter()
        .map(|p| tessellate(p, n))
        .collect::<Result<Vec<_>>>()?;
    glue(&meshes, &GluingTable::default())
}

/// A maximal run of boundary edges coming from one arc.
#[derive(Clone, Debug, PartialEq)]
pub struct TracedArc {
    pub arc: ArcId,
    pub role: EdgeRole,
    /// Vertex ids in traversal order, both corners included.
    pub vertices: Vec<usize>,
}

/// Splits the single boundary loop of `c` into its labelled arcs.
pub fn trace_boundary<T: Real>(c: &SurfaceComplex<T>) -> Result<Vec<TracedArc>> {
    let loops = c.boundary_components()?;
    if loops.len() != 1 {
        return Err(BoyError::BoundaryShape(format!(
            "{} boundary components",
            loops.len()
        )));
    }
    let lp = &loops[0];
    let len = lp.len();
    let label_of = |i: usize| -> Result<(ArcId, EdgeRole)> {
        let (a, b) = (lp[i], lp[(i + 1) % len]);
        match c.edge_label(a, b) {
            Some(l) => match &l.chain {
                ChainKey::Arc(id) => Ok((*id, l.role)),
                other => Err(BoyError::BoundaryShape(format!(
                    "edge on non-arc chain {other}"
                ))),
            },
            None => Err(BoyError::BoundaryShape(format!(
                "unlabelled boundary edge {a}-{b}"
            ))),
        }
    };
    let labels = (0..len).map(label_of).collect::<Result<Vec<_>>>()?;
    let start = (0..len)
        .find(|&i| labels[i].0 != labels[(i + len - 1) % len].0)
        .ok_or_else(|| BoyError::BoundaryShape("boundary is a single arc".into()))?;
    let mut out: Vec<TracedArc> = Vec::new();
    for j in 0..len {
        let i = (start + j) % len;
        let (id, role) = labels[i];
        match out.last_mut() {
            Some(t) if t.arc == id => t.vertices.push(lp[(i + 1) % len]),
            _ => out.push(TracedArc {
                arc: id,
                role,
                vertices: vec![lp[i], lp[(i + 1) % len]],
            }),
        }
    }
    Ok(out)
}

/// Octahedron vertex nearest to `p`.
fn nearest_axis_vertex<T: Real>(p: Point3<T>) -> SignVector {
    let a = p.to_f64();
    let i = (0..3)
        .max_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))
        .unwrap();
    let mut s = [0i8; 3];
    s[i] = if a[i] > 0.0 { 1 } else { -1 };
    SignVector(s)
}

fn position<T: Real>(c: &SurfaceComplex<T>, v: usize) -> Result<Point3<T>> {
    c.positions[v].ok_or(BoyError::VertexAtInfinity)
}

/// Reads the road/lane circuit off the boundary of `M`.
pub fn boundary_circuit_labels<T: Real>(c: &SurfaceComplex<T>) -> Result<Circuit> {
    let arcs = trace_boundary(c)?;
    if arcs.len() != 18 {
        return Err(BoyError::BoundaryShape(format!("{} arcs", arcs.len())));
    }
    let mut ends = Vec::with_capacity(arcs.len());
    let mut roads = Vec::with_capacity(arcs.len());
    for a in &arcs {
        let from = nearest_axis_vertex(position(c, a.vertices[0])?);
        let to = nearest_axis_vertex(position(c, *a.vertices.last().unwrap())?);
        ends.push((from, to));
        roads.push(match a.role {
            EdgeRole::Road => {
                let mid = position(c, a.vertices[a.vertices.len() / 2])?;
                Some(SignVector::from_signs(
                    mid.to_f64(),
                    to_f64(T::gluing_tolerance()),
                ))
            }
            EdgeRole::Bridge => None,
            other => {
                return Err(BoyError::BoundaryShape(format!(
                    "{} has role {other:?}",
                    a.arc
                )));
            }
        });
    }
    let k = arcs.len();
    let mut steps = Vec::with_capacity(k);
    for i in 0..k {
        let (from, to) = ends[i];
        let label = match roads[i] {
            Some(r) => StepLabel::Road(r),
            None => {
                let before = roads[(i + k - 1) % k];
                let after = roads[(i + 1) % k];
                match (before, after) {
                    (Some(a), Some(b)) => StepLabel::lane([from, to], a, b),
                    _ => {
                        return Err(BoyError::BoundaryShape(format!(
                            "bridge {} is not between two roads",
                            arcs[i].arc
                        )))
                    }
                }
            }
        };
        steps.push(CircuitEdge { label, from, to });
    }
    Ok(Circuit { steps })
}

/// Positions of the points where consecutive boundary arcs meet.
pub fn boundary_corners<T: Real>(c: &SurfaceComplex<T>) -> Result<Vec<Point3<T>>> {
    trace_boundary(c)?
        .iter()
        .map(|a| position(c, a.vertices[0]))
        .collect()
}

const INFINITY_CLASS: usize = usize::MAX;

/// Groups vertices whose positions agree within `tol`.
struct Clusters {
    class: Vec<usize>,
    reps: Vec<[f64; 3]>,
    sizes: Vec<usize>,
    cells: HashMap<[i64; 3], Vec<usize>>,
    cell: f64,
    tol: f64,
}

impl Clusters {
    fn new<T: Real>(positions: &[Option<Point3<T>>], tol: f64) -> Self {
        let mut c = Clusters {
            class: Vec::with_capacity(positions.len()),
            reps: Vec::new(),
            sizes: Vec::new(),
            cells: HashMap::new(),
            cell: 1e-6,
            tol,
        };
        for p in positions {
            let id = match p {
                None => INFINITY_CLASS,
                Some(p) => {
                    let q = p.to_f64();
                    match c.find(q) {
                        Some(id) => {
                            c.sizes[id] += 1;
                            id
                        }
                        None => {
                            let id = c.reps.len();
                            c.reps.push(q);
                            c.sizes.push(1);
                            c.cells.entry(c.key(q)).or_default().push(id);
                            id
                        }
                    }
                }
            };
            c.class.push(id);
        }
        c
    }

    fn key(&self, q: [f64; 3]) -> [i64; 3] {
        q.map(|x| (x / self.cell).floor() as i64)
    }

    fn find(&self, q: [f64; 3]) -> Option<usize> {
        let k = self.key(q);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(ids) = self.cells.get(&[k[0] + dx, k[1] + dy, k[2] + dz]) {
                        for &id in ids {
                            let r = self.reps[id];
                            let d = (0..3).map(|i| (r[i] - q[i]).abs()).fold(0.0, f64::max);
                            if d <= self.tol {
                                return Some(id);
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

fn canonical_cycle(mut seq: Vec<usize>) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for _ in 0..2 {
        for r in 0..seq.len() {
            let mut cand = seq.clone();
            cand.rotate_left(r);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        seq.reverse();
    }
    best.unwrap_or_default()
}

/// True when `t` maps the vertex positions of `c` onto themselves (with
/// multiplicity, within `1e-9`) and carries faces to faces.
pub fn check_symmetry<T: Real>(c: &SurfaceComplex<T>, t: &Isometry) -> bool {
    let tol = to_f64(T::gluing_tolerance());
    let cl = Clusters::new(&c.positions, tol);
    let mut image = vec![0usize; cl.reps.len()];
    let mut hit = vec![false; cl.reps.len()];
    for (id, rep) in cl.reps.iter().enumerate() {
        let q = t.apply_array(*rep);
        match cl.find(q) {
            Some(j) if !hit[j] && cl.sizes[j] == cl.sizes[id] => {
                hit[j] = true;
                image[id] = j;
            }
            _ => return false,
        }
    }
    let lift = |v: usize, mapped: bool| {
        let k = cl.class[v];
        if k == INFINITY_CLASS || !mapped {
            k
        } else {
            image[k]
        }
    };
    let classes = |mapped: bool| {
        let mut all: Vec<Vec<usize>> = c
            .faces
            .iter()
            .map(|f| canonical_cycle(f.verts.iter().map(|&v| lift(v, mapped)).collect()))
            .collect();
        all.sort_unstable();
        all
    };
    classes(false) == classes(true)
}
