//! The cube model: the thickening `Ω` as 46 side-2 cubes and the
//! rectilinear Moebius band `M□` as a complex of unit quads. Everything
//! here is exact integer arithmetic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::geom::Point3;
use crate::octa_graph::Isometry;
use crate::pieces::PlaneId;
use crate::scalar::Real;
use crate::surface_complex::{Face, FaceTag, SurfaceComplex, Topology};

pub type IPoint = [i64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CubeGroup {
    Octacross,
    Crossbridge(PlaneId),
    Disk(PlaneId),
}

impl fmt::Display for CubeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeGroup::Octacross => f.write_str("octacross"),
            CubeGroup::Crossbridge(p) => write!(f, "crossbridge_{p}"),
            CubeGroup::Disk(p) => write!(f, "disk_{p}"),
        }
    }
}

/// Side-2 axis cube `[c-1, c+1]^3`, `c` all even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cube2 {
    pub center: IPoint,
}

impl Cube2 {
    /// Min corners of its eight unit cubes.
    pub fn unit_cubes(&self) -> impl Iterator<Item = IPoint> + '_ {
        (0..8).map(move |b| {
            let c = self.center;
            [
                c[0] - 1 + (b & 1),
                c[1] - 1 + ((b >> 1) & 1),
                c[2] - 1 + ((b >> 2) & 1),
            ]
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeComplex {
    pub cubes: BTreeMap<Cube2, CubeGroup>,
}

fn embed(p: PlaneId, q: IPoint) -> IPoint {
    p.embedding().apply_int(q)
}

fn unembed(p: PlaneId, q: IPoint) -> IPoint {
    p.embedding().inverse().apply_int(q)
}

/// Slab `[-1,7] x [-7,1] x [-1,1]` of plane `p`, as side-2 cube centers.
fn slab(p: PlaneId) -> Vec<IPoint> {
    let mut out = Vec::with_capacity(16);
    for x in [0, 2, 4, 6] {
        for y in [0, -2, -4, -6] {
            out.push(embed(p, [x, y, 0]));
        }
    }
    out
}

fn group_of(c: IPoint) -> CubeGroup {
    let l1: i64 = c.iter().map(|x| x.abs()).sum();
    let nonzero = c.iter().filter(|&&x| x != 0).count();
    if nonzero <= 1 && l1 <= 2 {
        return CubeGroup::Octacross;
    }
    let plane = PlaneId::ALL
        .into_iter()
        .find(|&p| {
            c[p.normal_axis()] == 0 && {
                let l = unembed(p, c);
                (0..=6).contains(&l[0]) && (-6..=0).contains(&l[1])
            }
        })
        .expect("cube lies in a slab");
    let l = unembed(plane, c);
    if l[0] == 0 || l[0] == 6 || l[1] == 0 || l[1] == -6 {
        CubeGroup::Crossbridge(plane)
    } else {
        CubeGroup::Disk(plane)
    }
}

/// `Ω`: union of the three slabs.
pub fn build_omega() -> CubeComplex {
    let cubes = PlaneId::ALL
        .into_iter()
        .flat_map(slab)
        .map(|c| (Cube2 { center: c }, group_of(c)))
        .collect();
    CubeComplex { cubes }
}

impl CubeComplex {
    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn group_sizes(&self) -> BTreeMap<CubeGroup, usize> {
        let mut out = BTreeMap::new();
        for g in self.cubes.values() {
            *out.entry(*g).or_insert(0) += 1;
        }
        out
    }

    pub fn members(&self, g: CubeGroup) -> Vec<IPoint> {
        self.cubes
            .iter()
            .filter(|(_, &h)| h == g)
            .map(|(c, _)| c.center)
            .collect()
    }

    pub fn unit_cubes(&self) -> BTreeSet<IPoint> {
        self.cubes
            .keys()
            .flat_map(|c| c.unit_cubes().collect::<Vec<_>>())
            .collect()
    }

    /// The tagged cube set mapped by `t`.
    pub fn mapped(&self, t: &Isometry) -> BTreeMap<Cube2, CubeGroup> {
        self.cubes
            .iter()
            .map(|(c, g)| {
                let g = match *g {
                    CubeGroup::Octacross => CubeGroup::Octacross,
                    CubeGroup::Crossbridge(p) => CubeGroup::Crossbridge(p.mapped_by(t)),
                    CubeGroup::Disk(p) => CubeGroup::Disk(p.mapped_by(t)),
                };
                (
                    Cube2 {
                        center: t.apply_int(c.center),
                    },
                    g,
                )
            })
            .collect()
    }
}

/// Intersection of the three slabs as a box `[lo, hi]`.
pub fn slab_triple_intersection() -> (IPoint, IPoint) {
    let mut lo = [i64::MIN; 3];
    let mut hi = [i64::MAX; 3];
    for p in PlaneId::ALL {
        let mut a = [i64::MAX; 3];
        let mut b = [i64::MIN; 3];
        for c in slab(p) {
            for i in 0..3 {
                a[i] = a[i].min(c[i] - 1);
                b[i] = b[i].max(c[i] + 1);
            }
        }
        for i in 0..3 {
            lo[i] = lo[i].max(a[i]);
            hi[i] = hi[i].min(b[i]);
        }
    }
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SquarePart {
    Sheet(PlaneId),
    Wall(PlaneId),
}

/// Unit quads with integer corners forming `M□`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadComplex {
    pub positions: Vec<IPoint>,
    pub quads: Vec<[usize; 4]>,
    pub parts: Vec<SquarePart>,
}

struct Part {
    part: SquarePart,
    positions: Vec<IPoint>,
    quads: Vec<[usize; 4]>,
    chains: HashMap<&'static str, Vec<usize>>,
}

/// Path around `∂Q3` outside the central cube, from `(1,0)` to `(0,-1)`.
fn wall_path() -> Vec<[i64; 2]> {
    let corners: [[i64; 2]; 5] = [[1, 0], [6, 0], [6, -6], [0, -6], [0, -1]];
    let mut out = vec![corners[0]];
    for w in corners.windows(2) {
        let (a, b) = (w[0], w[1]);
        let steps = (b[0] - a[0]).abs().max((b[1] - a[1]).abs());
        for s in 1..=steps {
            out.push([
                a[0] + (b[0] - a[0]) * s / steps,
                a[1] + (b[1] - a[1]) * s / steps,
            ]);
        }
    }
    out
}

fn sheet(p: PlaneId) -> Part {
    let (w, x0, y0) = (8usize, -1i64, -7i64);
    let id = |i: usize, j: usize| j * (w + 1) + i;
    let mut positions = Vec::new();
    for j in 0..=w {
        for i in 0..=w {
            positions.push(embed(p, [x0 + i as i64, y0 + j as i64, 0]));
        }
    }
    let mut quads = Vec::new();
    for j in 0..w {
        for i in 0..w {
            quads.push([id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    let mut chains = HashMap::new();
    // y = 1, x in [-1, 1]
    chains.insert("top", (0..=2).map(|i| id(i, w)).collect());
    // x = -1, y in [-1, 1]
    chains.insert("left", (6..=8).map(|j| id(0, j)).collect());
    Part {
        part: SquarePart::Sheet(p),
        positions,
        quads,
        chains,
    }
}

fn wall(p: PlaneId) -> Part {
    let path = wall_path();
    let cols = path.len();
    let id = |i: usize, k: usize| k * cols + i;
    let mut positions = Vec::new();
    for z in -1..=1 {
        for q in &path {
            positions.push(embed(p, [q[0], q[1], z]));
        }
    }
    let mut quads = Vec::new();
    for k in 0..2 {
        for i in 0..cols - 1 {
            quads.push([id(i, k), id(i + 1, k), id(i + 1, k + 1), id(i, k + 1)]);
        }
    }
    let mut chains = HashMap::new();
    chains.insert("end_x", (0..3).map(|k| id(0, k)).collect());
    chains.insert("end_y", (0..3).map(|k| id(cols - 1, k)).collect());
    Part {
        part: SquarePart::Wall(p),
        positions,
        quads,
        chains,
    }
}

/// `M□`: per plane the sheet `Q4 x {0}` and the wall over `∂Q3`, with the
/// wall ends attached to the sheets of the other two planes.
pub fn build_m_square() -> QuadComplex {
    let mut parts = Vec::new();
    for p in PlaneId::ALL {
        parts.push(sheet(p));
        parts.push(wall(p));
    }
    let index = |part: SquarePart| parts.iter().position(|q| q.part == part).unwrap();
    let mut gluings = Vec::new();
    for p in PlaneId::ALL {
        gluings.push((
            (SquarePart::Sheet(p), "top"),
            (SquarePart::Wall(p.next()), "end_x"),
        ));
        gluings.push((
            (SquarePart::Sheet(p), "left"),
            (SquarePart::Wall(p.next().next()), "end_y"),
        ));
    }
    let mut offsets = Vec::new();
    let mut total = 0;
    for q in &parts {
        offsets.push(total);
        total += q.positions.len();
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for ((pa, ca), (pb, cb)) in gluings {
        let (ia, ib) = (index(pa), index(pb));
        for &u in &parts[ia].chains[ca] {
            let pos = parts[ia].positions[u];
            let v = parts[ib].chains[cb]
                .iter()
                .copied()
                .find(|&v| parts[ib].positions[v] == pos)
                .expect("seam chains coincide");
            let (ru, rv) = (
                find(&mut parent, u + offsets[ia]),
                find(&mut parent, v + offsets[ib]),
            );
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut new_id = vec![usize::MAX; total];
    let mut positions = Vec::new();
    let all_pos: Vec<IPoint> = parts
        .iter()
        .flat_map(|q| q.positions.iter().copied())
        .collect();
    for g in 0..total {
        let r = find(&mut parent, g);
        if new_id[r] == usize::MAX {
            new_id[r] = positions.len();
            positions.push(all_pos[r]);
        }
        new_id[g] = new_id[r];
    }
    let mut quads = Vec::new();
    let mut tags = Vec::new();
    for (i, q) in parts.iter().enumerate() {
        for f in &q.quads {
            quads.push(f.map(|v| new_id[v + offsets[i]]));
            tags.push(q.part);
        }
    }
    QuadComplex {
        positions,
        quads,
        parts: tags,
    }
}

/// Axis of the normal of an axis-aligned unit quad, and its min corner.
fn quad_frame(c: &QuadComplex, q: &[usize; 4]) -> (usize, IPoint) {
    let pts = q.map(|v| c.positions[v]);
    let axis = (0..3)
        .find(|&a| pts.iter().all(|p| p[a] == pts[0][a]))
        .expect("axis-aligned quad");
    let mut lo = pts[0];
    for p in &pts {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
        }
    }
    (axis, lo)
}

impl QuadComplex {
    pub fn empty() -> Self {
        Self {
            positions: Vec::new(),
            quads: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn topology(&self) -> Result<Topology> {
        let faces: Vec<Vec<usize>> = self.quads.iter().map(|q| q.to_vec()).collect();
        Topology::new(self.positions.len(), &faces)
    }

    pub fn translated(&self, v: IPoint) -> Self {
        let mut out = self.clone();
        for p in &mut out.positions {
            for i in 0..3 {
                p[i] += v[i];
            }
        }
        out
    }

    /// Boundary loops whose vertices all sit at distinct positions.
    pub fn boundary_is_embedded(&self) -> Result<bool> {
        let loops = self.topology()?.boundary_loops()?;
        let mut seen = BTreeSet::new();
        Ok(loops
            .iter()
            .flatten()
            .all(|&v| seen.insert(self.positions[v])))
    }

    pub fn to_surface_complex<T: Real>(&self) -> SurfaceComplex<T> {
        let mut c = SurfaceComplex::empty();
        c.positions = self
            .positions
            .iter()
            .map(|p| Some(Point3::from_array(p.map(|x| T::from_i64(x).unwrap()))))
            .collect();
        c.faces = self
            .quads
            .iter()
            .zip(&self.parts)
            .map(|(q, part)| Face {
                verts: q.to_vec(),
                tag: FaceTag::Custom(match part {
                    SquarePart::Sheet(p) => p.index(),
                    SquarePart::Wall(p) => 3 + p.index(),
                }),
                uv: None,
            })
            .collect();
        c
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub quads_in_omega: bool,
    pub boundary_in_boundary: bool,
    pub quad_violations: Vec<usize>,
    pub edge_violations: Vec<(usize, usize)>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.quads_in_omega && self.boundary_in_boundary
    }
}

/// `M□ ⊂ Ω` quad by quad, and `∂M□ ⊂ ∂Ω` edge by edge.
pub fn verify_containment(m: &QuadComplex, o: &CubeComplex) -> Result<ContainmentReport> {
    let units = o.unit_cubes();
    let mut report = ContainmentReport::default();
    for (i, q) in m.quads.iter().enumerate() {
        let (axis, lo) = quad_frame(m, q);
        let mut below = lo;
        below[axis] -= 1;
        if !units.contains(&lo) && !units.contains(&below) {
            report.quad_violations.push(i);
        }
    }
    for (a, b) in m.topology()?.boundary_edges() {
        let (pa, pb) = (m.positions[a], m.positions[b]);
        let axis = (0..3).find(|&i| pa[i] != pb[i]).expect("edge has length");
        let mut lo = pa;
        lo[axis] = pa[axis].min(pb[axis]);
        let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
        let mut inside = 0;
        for (da, db) in [(0, 0), (-1, 0), (0, -1), (-1, -1)] {
            let mut c = lo;
            c[others[0]] += da;
            c[others[1]] += db;
            inside += usize::from(units.contains(&c));
        }
        if !(1..=3).contains(&inside) {
            report.edge_violations.push((a, b));
        }
    }
    report.quads_in_omega = report.quad_violations.is_empty();
    report.boundary_in_boundary = report.edge_violations.is_empty();
    Ok(report)
}

/// Face of a unit cube: axis and side (`false` = low face).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFace {
    pub axis: usize,
    pub high: bool,
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.high { '+' } else { '-' };
        write!(f, "{sign}{}", ['x', 'y', 'z'][self.axis])
    }
}

impl Serialize for CubeFace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaintedCube {
    pub cube: IPoint,
    pub group: CubeGroup,
    pub faces: Vec<CubeFace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub unit_cubes: usize,
    /// Number of cubes meeting `M□` in 0, 1, 2, 3, ... faces.
    pub histogram: Vec<usize>,
    /// Every multi-face cube has pairwise adjacent (never opposite) faces.
    pub adjacent: bool,
    pub paint: Vec<PaintedCube>,
}

impl Census {
    pub fn passed(&self) -> bool {
        self.adjacent
            && self.histogram.first().copied().unwrap_or(0) == 0
            && self.histogram.len() <= 4
    }
}

/// Which faces of each of `Ω`'s unit cubes belong to `M□`.
pub fn unit_cube_census(m: &QuadComplex, o: &CubeComplex) -> Census {
    let owner: HashMap<IPoint, CubeGroup> = o
        .cubes
        .iter()
        .flat_map(|(c, g)| c.unit_cubes().map(|u| (u, *g)).collect::<Vec<_>>())
        .collect();
    let mut faces: BTreeMap<IPoint, BTreeSet<CubeFace>> =
        owner.keys().map(|u| (*u, BTreeSet::new())).collect();
    for q in &m.quads {
        let (axis, lo) = quad_frame(m, q);
        let mut below = lo;
        below[axis] -= 1;
        if let Some(s) = faces.get_mut(&lo) {
            s.insert(CubeFace { axis, high: false });
        }
        if let Some(s) = faces.get_mut(&below) {
            s.insert(CubeFace { axis, high: true });
        }
    }
    let mut histogram = vec![0usize; 7];
    let mut adjacent = true;
    let mut paint = Vec::with_capacity(faces.len());
    for (u, fs) in faces {
        histogram[fs.len()] += 1;
        let axes: BTreeSet<usize> = fs.iter().map(|f| f.axis).collect();
        if axes.len() != fs.len() {
            adjacent = false;
        }
        paint.push(PaintedCube {
            cube: u,
            group: owner[&u],
            faces: fs.into_iter().collect(),
        });
    }
    while histogram.len() > 1 && histogram.last() == Some(&0) {
        histogram.pop();
    }
    Census {
        unit_cubes: paint.len(),
        histogram,
        adjacent,
        paint,
    }
}
