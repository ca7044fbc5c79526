//! Combinatorial invariants of a polygonal cell complex given only by its
//! faces (vertex id cycles).

use std::collections::HashMap;

use crate::error::{BoyError, Result};

/// Faces incident to one undirected edge, each with whether the face
/// traverses the edge from the smaller to the larger vertex id.
#[derive(Clone, Debug, Default)]
pub struct EdgeFaces {
    pub faces: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct Topology {
    pub vertex_count: usize,
    pub face_count: usize,
    pub edges: HashMap<(usize, usize), EdgeFaces>,
    faces: Vec<Vec<usize>>,
}

fn key(a: usize, b: usize) -> ((usize, usize), bool) {
    if a < b {
        ((a, b), true)
    } else {
        ((b, a), false)
    }
}

impl Topology {
    /// Builds the edge table; fails if an edge borders more than two faces.
    pub fn new(vertex_count: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut edges: HashMap<(usize, usize), EdgeFaces> = HashMap::with_capacity(faces.len() * 2);
        for (f, face) in faces.iter().enumerate() {
            for i in 0..face.len() {
                let (k, fwd) = key(face[i], face[(i + 1) % face.len()]);
                let entry = edges.entry(k).or_default();
                entry.faces.push((f, fwd));
                if entry.faces.len() > 2 {
                    return Err(BoyError::NonManifoldEdge(k));
                }
            }
        }
        Ok(Self {
            vertex_count,
            face_count: faces.len(),
            edges,
            faces: faces.to_vec(),
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.face_count as i64
    }

    /// Edges with exactly one adjacent face, sorted.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .filter(|(_, e)| e.faces.len() == 1)
            .map(|(k, _)| *k)
            .collect();
        out.sort_unstable();
        out
    }

    /// Boundary loops as cyclic vertex sequences. Each loop starts at its
    /// smallest vertex and first steps to the smaller of its two neighbours.
    pub fn boundary_loops(&self) -> Result<Vec<Vec<usize>>> {
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for (a, b) in self.boundary_edges() {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        for (v, nbrs) in adj.iter_mut() {
            if nbrs.len() != 2 {
                return Err(BoyError::NonManifoldBoundary(*v));
            }
            nbrs.sort_unstable();
        }
        let mut starts: Vec<usize> = adj.keys().copied().collect();
        starts.sort_unstable();
        let mut visited: HashMap<usize, bool> = HashMap::with_capacity(adj.len());
        let mut loops = Vec::new();
        for s in starts {
            if visited.contains_key(&s) {
                continue;
            }
            let mut cycle = vec![s];
            visited.insert(s, true);
            let mut prev = s;
            let mut cur = adj[&s][0];
            while cur != s {
                visited.insert(cur, true);
                cycle.push(cur);
                let nb = &adj[&cur];
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            loops.push(cycle);
        }
        Ok(loops)
    }

    /// Connected components of the face adjacency graph, as face lists.
    pub fn face_components(&self) -> Vec<Vec<usize>> {
        let nbrs = self.face_neighbours();
        let mut comp = vec![usize::MAX; self.face_count];
        let mut out = Vec::new();
        for seed in 0..self.face_count {
            if comp[seed] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![seed];
            comp[seed] = id;
            let mut stack = vec![seed];
            while let Some(f) = stack.pop() {
                for &(g, _) in &nbrs[f] {
                    if comp[g] == usize::MAX {
                        comp[g] = id;
                        members.push(g);
                        stack.push(g);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// For every face, its neighbours across interior edges, with a flag
    /// telling whether the two faces induce the same direction on the edge.
    fn face_neighbours(&self) -> Vec<Vec<(usize, bool)>> {
        let mut nbrs = vec![Vec::new(); self.face_count];
        for e in self.edges.values() {
            if let [(f, df), (g, dg)] = e.faces[..] {
                let same = df == dg;
                nbrs[f].push((g, same));
                nbrs[g].push((f, same));
            }
        }
        for n in &mut nbrs {
            n.sort_unstable();
        }
        nbrs
    }

    /// Attempts to orient all faces coherently, propagating from `seed`
    /// (then from the lowest unvisited face of each further component).
    pub fn orientable_from(&self, seed: usize) -> bool {
        if self.face_count == 0 {
            return true;
        }
        let nbrs = self.face_neighbours();
        // flip[f]: whether face f must be reversed
        let mut flip: Vec<Option<bool>> = vec![None; self.face_count];
        let seeds = std::iter::once(seed % self.face_count).chain(0..self.face_count);
        for s in seeds {
            if flip[s].is_some() {
                continue;
            }
            flip[s] = Some(false);
            let mut stack = vec![s];
            while let Some(f) = stack.pop() {
                let ff = flip[f].unwrap();
                for &(g, same) in &nbrs[f] {
                    // coherent iff the induced directions are opposite after flips
                    let want = ff ^ same;
                    match flip[g] {
                        None => {
                            flip[g] = Some(want);
                            stack.push(g);
                        }
                        Some(x) if x != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn orientable(&self) -> bool {
        self.orientable_from(0)
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle() {
        let t = Topology::new(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(t.euler_characteristic(), 1);
        assert_eq!(t.boundary_loops().unwrap(), vec![vec![0, 1, 2]]);
        assert!(t.orientable());
    }

    #[test]
    fn octahedron_is_sphere() {
        // vertices: 0 +x, 1 -x, 2 +y, 3 -y, 4 +z, 5 -z
        let faces = vec![
            vec![0, 2, 4],
            vec![2, 1, 4],
            vec![1, 3, 4],
            vec![3, 0, 4],
            vec![2, 0, 5],
            vec![1, 2, 5],
            vec![3, 1, 5],
            vec![0, 3, 5],
        ];
        let t = Topology::new(6, &faces).unwrap();
        assert_eq!(t.euler_characteristic(), 2);
        assert!(t.boundary_loops().unwrap().is_empty());
        assert!(t.orientable());
    }

    #[test]
    fn moebius_strip_of_three_quads() {
        // top row 0-1-2, bottom row 3-4-5; the last quad closes up with a flip
        let faces = vec![vec![0, 1, 4, 3], vec![1, 2, 5, 4], vec![2, 3, 0, 5]];
        let t = Topology::new(6, &faces).unwrap();
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.boundary_loops().unwrap().len(), 1);
        for seed in 0..3 {
            assert!(!t.orientable_from(seed));
        }
    }

    #[test]
    fn three_faces_on_an_edge_rejected() {
        let faces = vec![vec![0, 1, 2], vec![1, 0, 3], vec![0, 1, 4]];
        assert!(matches!(
            Topology::new(5, &faces),
            Err(BoyError::NonManifoldEdge(_))
        ));
    }
}
