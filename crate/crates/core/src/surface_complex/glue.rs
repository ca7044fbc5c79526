use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{edge_key, ChainKey, EdgeLabel, EdgeRole, Face, SubMesh, SurfaceComplex};
use crate::error::{BoyError, Result};
use crate::scalar::{to_f64, Real};

/// Identify chain `a` with chain `b`, vertex by vertex; `reversed` pairs
/// the first vertex of `a` with the last of `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingEntry {
    pub a: ChainKey,
    pub b: ChainKey,
    pub reversed: bool,
}

impl GluingEntry {
    pub fn new(a: ChainKey, b: ChainKey, reversed: bool) -> Self {
        Self { a, b, reversed }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GluingTable {
    pub entries: Vec<GluingEntry>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Glue submeshes along a table using the scalar's default tolerance.
pub fn glue<T: Real>(meshes: &[SubMesh<T>], table: &GluingTable) -> Result<SurfaceComplex<T>> {
    glue_with_tolerance(meshes, table, to_f64(T::gluing_tolerance()))
}

pub fn glue_with_tolerance<T: Real>(
    meshes: &[SubMesh<T>],
    table: &GluingTable,
    tolerance: f64,
) -> Result<SurfaceComplex<T>> {
    let mut offsets = Vec::with_capacity(meshes.len());
    let mut total = 0;
    for m in meshes {
        offsets.push(total);
        total += m.positions.len();
    }
    let mut chains: HashMap<&ChainKey, (Vec<usize>, EdgeRole)> = HashMap::new();
    for (mi, m) in meshes.iter().enumerate() {
        for (k, ids) in &m.chains {
            let global = ids.iter().map(|v| v + offsets[mi]).collect();
            let role = m
                .chain_roles
                .get(k)
                .copied()
                .unwrap_or(EdgeRole::StraightEdge);
            if chains.insert(k, (global, role)).is_some() {
                return Err(BoyError::DuplicateArc(k.to_string()));
            }
        }
    }
    let position = |g: usize| {
        let mi = offsets.partition_point(|&o| o <= g) - 1;
        meshes[mi].positions[g - offsets[mi]]
    };

    let mut uf = UnionFind((0..total).collect());
    let mut seen: HashMap<&ChainKey, usize> = HashMap::new();
    let mut seam_of: BTreeMap<&ChainKey, &ChainKey> = BTreeMap::new();
    for (i, e) in table.entries.iter().enumerate() {
        for k in [&e.a, &e.b] {
            if seen.insert(k, i).is_some() {
                return Err(BoyError::DuplicateArc(k.to_string()));
            }
        }
        let lookup = |k: &ChainKey| {
            chains
                .get(k)
                .map(|c| &c.0)
                .ok_or_else(|| BoyError::UnknownArc {
                    entry: i,
                    arc: k.to_string(),
                })
        };
        let ca = lookup(&e.a)?;
        let cb = lookup(&e.b)?;
        let detail = format!("{} ~ {}", e.a, e.b);
        if ca.len() != cb.len() {
            return Err(BoyError::ChainLengthMismatch {
                entry: i,
                detail,
                left: ca.len(),
                right: cb.len(),
            });
        }
        let len = ca.len();
        let mut worst = 0.0f64;
        for j in 0..len {
            let vb = if e.reversed { cb[len - 1 - j] } else { cb[j] };
            worst = worst.max(to_f64(position(ca[j]).distance(position(vb))));
        }
        if !(worst <= tolerance) {
            return Err(BoyError::PositionMismatch {
                entry: i,
                detail,
                deviation: worst,
            });
        }
        for j in 0..len {
            let vb = if e.reversed { cb[len - 1 - j] } else { cb[j] };
            uf.union(ca[j], vb);
        }
        seam_of.insert(&e.a, &e.a);
        seam_of.insert(&e.b, &e.a);
    }

    let mut new_id = vec![usize::MAX; total];
    let mut positions = Vec::new();
    for g in 0..total {
        let r = uf.find(g);
        if new_id[r] == usize::MAX {
            new_id[r] = positions.len();
            positions.push(Some(position(r)));
        }
        new_id[g] = new_id[r];
    }

    let mut faces = Vec::new();
    for (mi, m) in meshes.iter().enumerate() {
        for f in &m.faces {
            let verts: Vec<usize> = f.iter().map(|&v| new_id[v + offsets[mi]]).collect();
            let mut sorted = verts.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != verts.len() {
                return Err(BoyError::DegenerateFace(faces.len()));
            }
            faces.push(Face {
                verts,
                tag: m.tag,
                uv: Some(f.iter().map(|&v| m.uv[v]).collect()),
            });
        }
    }

    let mut edge_labels = BTreeMap::new();
    let mut keys: Vec<&&ChainKey> = chains.keys().collect();
    keys.sort();
    for k in keys {
        let (ids, role) = &chains[*k];
        let (role, chain) = match seam_of.get(*k) {
            Some(&canon) if *role == EdgeRole::StraightEdge => (EdgeRole::Seam, canon.clone()),
            Some(&canon) => (*role, canon.clone()),
            None => (*role, (*k).clone()),
        };
        for w in ids.windows(2) {
            edge_labels.insert(
                edge_key(new_id[w[0]], new_id[w[1]]),
                EdgeLabel {
                    role,
                    chain: chain.clone(),
                },
            );
        }
    }

    Ok(SurfaceComplex {
        positions,
        faces,
        edge_labels,
    })
}
