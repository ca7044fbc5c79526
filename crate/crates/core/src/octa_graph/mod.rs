//! The octahedral graph, its symmetric perfect matching, and the
//! alternating road/bridge-lane circuit obtained by tripling each bridge.

mod isometry;
mod sign;

pub use isometry::{generate_group, symmetry_group, Isometry};
pub use sign::SignVector;

use serde::Serialize;

use crate::error::{BoyError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    Road,
    Bridge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    /// Sorted endpoint pair.
    pub ends: [SignVector; 2],
    pub kind: EdgeKind,
}

impl GraphEdge {
    /// Sum of the endpoints; for a road this is the sign label of its points.
    pub fn label(&self) -> SignVector {
        self.ends[0].add(&self.ends[1])
    }

    pub fn contains(&self, v: SignVector) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }

    pub fn other(&self, v: SignVector) -> SignVector {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

fn sorted_pair(a: SignVector, b: SignVector) -> [SignVector; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OctaGraph {
    pub vertices: Vec<SignVector>,
    pub edges: Vec<GraphEdge>,
}

/// The six unit axis directions, in the order +x, -x, +y, -y, +z, -z.
pub fn axis_vertices() -> Vec<SignVector> {
    let mut out = Vec::with_capacity(6);
    for axis in 0..3 {
        for s in [1i8, -1] {
            let mut v = [0i8; 3];
            v[axis] = s;
            out.push(SignVector(v));
        }
    }
    out
}

pub fn build_octahedral_graph() -> OctaGraph {
    let vertices = axis_vertices();
    let mut edges = Vec::with_capacity(12);
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            if *b != a.neg() {
                edges.push(GraphEdge {
                    ends: sorted_pair(*a, *b),
                    kind: EdgeKind::Road,
                });
            }
        }
    }
    OctaGraph { vertices, edges }
}

/// The bridge of the XY crossbridge: it joins the crosses at (1,0,0) and (0,-1,0).
pub fn xy_bridge() -> [SignVector; 2] {
    sorted_pair(SignVector::new(1, 0, 0), SignVector::new(0, -1, 0))
}

/// The three bridges of the rotation-invariant matching.
pub fn symmetric_bridges() -> Vec<[SignVector; 2]> {
    let [a, b] = xy_bridge();
    (0..3)
        .map(|k| {
            let t = Isometry::rho().power(k);
            sorted_pair(t.apply_sign(a), t.apply_sign(b))
        })
        .collect()
}

pub fn symmetric_matching(g: &OctaGraph) -> OctaGraph {
    let bridges = symmetric_bridges();
    let edges = g
        .edges
        .iter()
        .map(|e| GraphEdge {
            ends: e.ends,
            kind: if bridges.contains(&e.ends) {
                EdgeKind::Bridge
            } else {
                EdgeKind::Road
            },
        })
        .collect();
    OctaGraph {
        vertices: g.vertices.clone(),
        edges,
    }
}

impl OctaGraph {
    pub fn degree(&self, v: SignVector) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn bridges(&self) -> Vec<GraphEdge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| e.kind == EdgeKind::Bridge)
            .collect()
    }

    pub fn roads(&self) -> Vec<GraphEdge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| e.kind == EdgeKind::Road)
            .collect()
    }

    pub fn has_edge(&self, a: SignVector, b: SignVector) -> bool {
        let key = sorted_pair(a, b);
        self.edges.iter().any(|e| e.ends == key)
    }

    /// True when the bridges cover every vertex exactly once.
    pub fn matching_is_perfect(&self) -> bool {
        let bridges = self.bridges();
        self.vertices
            .iter()
            .all(|v| bridges.iter().filter(|e| e.contains(*v)).count() == 1)
    }
}

/// Which of the three parallel copies of a bridge a lane is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LaneName {
    /// Joins two roads lying in the bridge's own coordinate plane.
    Planar,
    /// Joins two roads on the positive side of the bridge plane.
    Upper,
    /// Joins two roads on the negative side of the bridge plane.
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    Road,
    BridgeLane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepLabel {
    Road(SignVector),
    /// A lane is identified by its bridge and the (sorted) road pair it joins.
    Lane {
        bridge: [SignVector; 2],
        roads: [SignVector; 2],
    },
}

impl StepLabel {
    pub fn lane(bridge: [SignVector; 2], a: SignVector, b: SignVector) -> Self {
        StepLabel::Lane {
            bridge: sorted_pair(bridge[0], bridge[1]),
            roads: sorted_pair(a, b),
        }
    }

    fn map(&self, t: &Isometry) -> Self {
        match *self {
            StepLabel::Road(r) => StepLabel::Road(t.apply_sign(r)),
            StepLabel::Lane { bridge, roads } => StepLabel::lane(
                [t.apply_sign(bridge[0]), t.apply_sign(bridge[1])],
                t.apply_sign(roads[0]),
                t.apply_sign(roads[1]),
            ),
        }
    }

    /// Coordinate index that vanishes on both bridge endpoints.
    fn bridge_normal_axis(bridge: &[SignVector; 2]) -> usize {
        (0..3)
            .find(|&i| bridge[0].0[i] == 0 && bridge[1].0[i] == 0)
            .expect("bridge endpoints span a coordinate plane")
    }

    pub fn lane_name(&self) -> Option<LaneName> {
        match self {
            StepLabel::Road(_) => None,
            StepLabel::Lane { bridge, roads } => {
                let axis = Self::bridge_normal_axis(bridge);
                Some(match roads[0].0[axis] {
                    0 => LaneName::Planar,
                    1 => LaneName::Upper,
                    _ => LaneName::Lower,
                })
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            StepLabel::Road(r) => r.to_string(),
            StepLabel::Lane { bridge, roads } => {
                format!("{}~{}:{}|{}", bridge[0], bridge[1], roads[0], roads[1])
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CircuitEdge {
    pub label: StepLabel,
    /// Octahedron vertex (cross) the step leaves from.
    pub from: SignVector,
    /// Octahedron vertex (cross) the step arrives at.
    pub to: SignVector,
}

impl CircuitEdge {
    pub fn kind(&self) -> StepKind {
        match self.label {
            StepLabel::Road(_) => StepKind::Road,
            StepLabel::Lane { .. } => StepKind::BridgeLane,
        }
    }

    fn reversed(&self) -> Self {
        Self {
            label: self.label,
            from: self.to,
            to: self.from,
        }
    }

    fn map(&self, t: &Isometry) -> Self {
        Self {
            label: self.label.map(t),
            from: t.apply_sign(self.from),
            to: t.apply_sign(self.to),
        }
    }
}

#[derive(Serialize)]
struct StepRecord {
    kind: StepKind,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    lane: Option<LaneName>,
    direction: [SignVector; 2],
}

impl Serialize for CircuitEdge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StepRecord {
            kind: self.kind(),
            label: self.label.describe(),
            lane: self.label.lane_name(),
            direction: [self.from, self.to],
        }
        .serialize(s)
    }
}

/// Cyclic sequence of road and bridge-lane steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Circuit {
    pub steps: Vec<CircuitEdge>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> Circuit {
        Circuit {
            steps: self.steps.iter().rev().map(CircuitEdge::reversed).collect(),
        }
    }

    pub fn map(&self, t: &Isometry) -> Circuit {
        Circuit {
            steps: self.steps.iter().map(|s| s.map(t)).collect(),
        }
    }

    fn equal_up_to_rotation(a: &[CircuitEdge], b: &[CircuitEdge]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..b.len()).any(|shift| (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]))
    }

    /// Equality as cyclic sequences, up to rotation and reversal.
    pub fn equivalent(&self, other: &Circuit) -> bool {
        Self::equal_up_to_rotation(&self.steps, &other.steps)
            || Self::equal_up_to_rotation(&self.steps, &other.reversed().steps)
    }

    /// Steps alternate strictly between roads and bridge lanes around the cycle.
    pub fn alternates(&self) -> bool {
        let n = self.steps.len();
        n.is_multiple_of(2)
            && (0..n).all(|i| self.steps[i].kind() != self.steps[(i + 1) % n].kind())
    }

    /// Each step starts where the previous one ended.
    pub fn is_connected_cycle(&self) -> bool {
        let n = self.steps.len();
        (0..n).all(|i| self.steps[i].to == self.steps[(i + 1) % n].from)
    }

    /// True when `road_a` and `road_b` are consecutive roads joined by a lane
    /// over `bridge`.
    pub fn joins_across(
        &self,
        road_a: SignVector,
        road_b: SignVector,
        bridge: [SignVector; 2],
    ) -> bool {
        let n = self.steps.len();
        let want = StepLabel::lane(bridge, road_a, road_b);
        (0..n).any(|i| {
            let lane = &self.steps[i];
            let before = &self.steps[(i + n - 1) % n];
            let after = &self.steps[(i + 1) % n];
            lane.label == want
                && matches!((before.label, after.label),
                    (StepLabel::Road(x), StepLabel::Road(y))
                        if (x == road_a && y == road_b) || (x == road_b && y == road_a))
        })
    }

    /// Closed walk in the octahedral graph obtained by collapsing each lane
    /// to its bridge: the sequence of road labels in order.
    pub fn contracted_roads(&self) -> Vec<SignVector> {
        self.steps
            .iter()
            .filter_map(|s| match s.label {
                StepLabel::Road(r) => Some(r),
                _ => None,
            })
            .collect()
    }
}

/// Lane pairing across the XY bridge, as read off the crossbridge geometry.
fn xy_lane_pairs() -> [(SignVector, SignVector); 3] {
    [
        (SignVector::new(1, 1, 0), SignVector::new(-1, -1, 0)),
        (SignVector::new(1, 0, 1), SignVector::new(0, -1, 1)),
        (SignVector::new(1, 0, -1), SignVector::new(0, -1, -1)),
    ]
}

/// Pairing table for a bridge of the symmetric matching, or `None` when the
/// bridge is not one of its three edges.
fn lane_pairs(bridge: [SignVector; 2]) -> Option<Vec<(SignVector, SignVector)>> {
    let base = xy_bridge();
    (0..3).find_map(|k| {
        let t = Isometry::rho().power(k);
        let image = sorted_pair(t.apply_sign(base[0]), t.apply_sign(base[1]));
        (image == bridge).then(|| {
            xy_lane_pairs()
                .iter()
                .map(|(a, b)| (t.apply_sign(*a), t.apply_sign(*b)))
                .collect()
        })
    })
}

fn partner(pairs: &[(SignVector, SignVector)], road: SignVector) -> Option<SignVector> {
    pairs.iter().find_map(|&(a, b)| {
        if a == road {
            Some(b)
        } else if b == road {
            Some(a)
        } else {
            None
        }
    })
}

/// Expands every bridge into three lanes and walks the resulting circuit,
/// starting at road `++0` traversed from `+00` to `0+0`.
pub fn expand_circuit(g: &OctaGraph) -> Result<Circuit> {
    let bridges = g.bridges();
    if !g.matching_is_perfect() || bridges.len() != 3 {
        return Err(BoyError::CircuitNotSingleCycle(
            "bridges do not form a perfect matching".into(),
        ));
    }
    let mut tables = Vec::new();
    for b in &bridges {
        let pairs = lane_pairs(b.ends).ok_or_else(|| {
            BoyError::CircuitNotSingleCycle(format!(
                "no lane table for bridge {}~{}",
                b.ends[0], b.ends[1]
            ))
        })?;
        tables.push((*b, pairs));
    }

    let start = CircuitEdge {
        label: StepLabel::Road(SignVector::new(1, 1, 0)),
        from: SignVector::new(1, 0, 0),
        to: SignVector::new(0, 1, 0),
    };
    let mut steps = vec![start];
    let mut current = start;
    let expected = 2 * g.roads().len();
    loop {
        let StepLabel::Road(road) = current.label else {
            unreachable!("walk only stops on roads");
        };
        let (bridge, pairs) = tables
            .iter()
            .find(|(b, _)| b.contains(current.to))
            .ok_or_else(|| {
                BoyError::CircuitNotSingleCycle(format!("vertex {} has no bridge", current.to))
            })?;
        let across = bridge.other(current.to);
        let next_road = partner(pairs, road).ok_or_else(|| {
            BoyError::CircuitNotSingleCycle(format!("road {road} has no lane over its bridge"))
        })?;
        if !g.has_edge(across, next_road.add(&across.neg())) {
            return Err(BoyError::CircuitNotSingleCycle(format!(
                "road {next_road} is not incident to {across}"
            )));
        }
        let lane = CircuitEdge {
            label: StepLabel::lane(bridge.ends, road, next_road),
            from: current.to,
            to: across,
        };
        let next = CircuitEdge {
            label: StepLabel::Road(next_road),
            from: across,
            to: next_road.add(&across.neg()),
        };
        steps.push(lane);
        if next == start {
            break;
        }
        if steps.len() > expected {
            return Err(BoyError::CircuitNotSingleCycle(format!(
                "walk exceeded {expected} steps without closing"
            )));
        }
        steps.push(next);
        current = next;
    }
    if steps.len() != expected {
        return Err(BoyError::CircuitNotSingleCycle(format!(
            "walk closed after {} steps, expected {expected}",
            steps.len()
        )));
    }
    Ok(Circuit { steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn v(x: i8, y: i8, z: i8) -> SignVector {
        SignVector::new(x, y, z)
    }

    #[test]
    fn octahedral_graph_shape() {
        let g = build_octahedral_graph();
        assert_eq!(g.vertices.len(), 6);
        assert_eq!(g.edges.len(), 12);
        assert!(g.vertices.iter().all(|&x| g.degree(x) == 4));
        assert!(g.edges.iter().all(|e| e.kind == EdgeKind::Road));
        for &x in &g.vertices {
            assert!(!g.has_edge(x, x.neg()));
        }
        let e = g
            .edges
            .iter()
            .find(|e| e.contains(v(1, 0, 0)) && e.contains(v(0, 1, 0)))
            .unwrap();
        assert_eq!(e.label(), v(1, 1, 0));
        assert!(g.edges.iter().all(|e| e.label().is_road()));
    }

    #[test]
    fn matching_is_perfect_and_rotation_invariant() {
        let g = symmetric_matching(&build_octahedral_graph());
        assert!(g.matching_is_perfect());
        assert_eq!(g.bridges().len(), 3);
        assert_eq!(g.roads().len(), 9);
        let set: BTreeSet<_> = g.bridges().iter().map(|e| e.ends).collect();
        let rotated: BTreeSet<_> = set
            .iter()
            .map(|e| {
                sorted_pair(
                    Isometry::rho().apply_sign(e[0]),
                    Isometry::rho().apply_sign(e[1]),
                )
            })
            .collect();
        assert_eq!(set, rotated);
        assert!(set.contains(&sorted_pair(v(1, 0, 0), v(0, -1, 0))));
        assert!(set.contains(&sorted_pair(v(0, 1, 0), v(0, 0, -1))));
        assert!(set.contains(&sorted_pair(v(0, 0, 1), v(-1, 0, 0))));
    }

    #[test]
    fn circuit_is_single_alternating_cycle() {
        let g = symmetric_matching(&build_octahedral_graph());
        let c = expand_circuit(&g).unwrap();
        assert_eq!(c.len(), 18);
        assert!(c.alternates());
        assert!(c.is_connected_cycle());
        let roads: BTreeSet<_> = c.contracted_roads().into_iter().collect();
        assert_eq!(roads.len(), 9);
        let lanes: BTreeSet<_> = c
            .steps
            .iter()
            .filter(|s| s.kind() == StepKind::BridgeLane)
            .map(|s| s.label)
            .collect::<Vec<_>>()
            .into_iter()
            .map(|l| l.describe())
            .collect();
        assert_eq!(lanes.len(), 9);
        assert!(c.joins_across(v(1, 1, 0), v(-1, -1, 0), xy_bridge()));
        assert!(c.joins_across(v(1, 0, 1), v(0, -1, 1), xy_bridge()));
        assert!(c.joins_across(v(1, 0, -1), v(0, -1, -1), xy_bridge()));
    }

    #[test]
    fn each_bridge_has_planar_upper_lower_lanes() {
        let g = symmetric_matching(&build_octahedral_graph());
        let c = expand_circuit(&g).unwrap();
        for b in symmetric_bridges() {
            let mut names: Vec<_> = c
                .steps
                .iter()
                .filter(|s| matches!(s.label, StepLabel::Lane { bridge, .. } if bridge == b))
                .map(|s| s.label.lane_name().unwrap())
                .collect();
            names.sort();
            assert_eq!(
                names,
                vec![LaneName::Planar, LaneName::Upper, LaneName::Lower]
            );
        }
    }

    #[test]
    fn circuit_invariant_under_symmetry_group() {
        let g = symmetric_matching(&build_octahedral_graph());
        let c = expand_circuit(&g).unwrap();
        for t in symmetry_group() {
            assert!(c.equivalent(&c.map(&t)), "not invariant under {t:?}");
        }
        assert!(c.equivalent(&c.reversed()));
    }

    #[test]
    fn contracted_walk_uses_each_road_once() {
        let g = symmetric_matching(&build_octahedral_graph());
        let c = expand_circuit(&g).unwrap();
        let roads = c.contracted_roads();
        assert_eq!(roads.len(), 9);
        let road_steps: Vec<_> = c
            .steps
            .iter()
            .filter(|s| s.kind() == StepKind::Road)
            .collect();
        for (i, s) in road_steps.iter().enumerate() {
            assert!(g.has_edge(s.from, s.to));
            let next = road_steps[(i + 1) % road_steps.len()];
            // consecutive roads meet at the two ends of one bridge
            let bridge = sorted_pair(s.to, next.from);
            assert!(g.bridges().iter().any(|b| b.ends == bridge));
        }
    }

    #[test]
    fn wrong_matching_is_rejected() {
        let mut g = build_octahedral_graph();
        // mark a non-symmetric perfect matching
        let wrong = [
            sorted_pair(v(1, 0, 0), v(0, 1, 0)),
            sorted_pair(v(-1, 0, 0), v(0, 0, 1)),
            sorted_pair(v(0, -1, 0), v(0, 0, -1)),
        ];
        for e in &mut g.edges {
            if wrong.contains(&e.ends) {
                e.kind = EdgeKind::Bridge;
            }
        }
        assert!(g.matching_is_perfect());
        assert!(expand_circuit(&g).is_err());
    }

    #[test]
    fn json_shape() {
        let g = symmetric_matching(&build_octahedral_graph());
        let c = expand_circuit(&g).unwrap();
        let j = serde_json::to_value(&c).unwrap();
        let arr = j.as_array().unwrap();
        assert_eq!(arr.len(), 18);
        assert_eq!(arr[0]["kind"], "Road");
        assert_eq!(arr[0]["label"], "++0");
        assert_eq!(arr[0]["direction"][0], "+00");
        assert_eq!(arr[1]["kind"], "BridgeLane");
    }
}
