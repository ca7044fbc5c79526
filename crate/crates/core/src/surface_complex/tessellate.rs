use super::{ChainKey, EdgeRole, FaceTag, SubMesh};
use crate::error::{BoyError, Result};
use crate::geom::{Point2, Point3};
use crate::pieces::{circle_point, segment_parameter, ArcSide, Patch, PatchKind};
use crate::scalar::{count, lit, Real};

/// Tessellates one piece at resolution `n` (segments per quarter turn, per
/// straight edge, per radial width and per wall height).
///
/// Boundary vertices coincide exactly with `BoundaryArc::sample`, so chains
/// of pieces that share an arc agree bit for bit.
pub fn tessellate<T: Real>(patch: &Patch<T>, n: usize) -> Result<SubMesh<T>> {
    if n < 2 {
        return Err(BoyError::InvalidResolution(n));
    }
    match patch.kind {
        PatchKind::Octagon => Ok(star(patch, n, [T::zero(), T::zero()])),
        PatchKind::Disk => Ok(star(patch, n, [T::one(), -T::one()])),
        PatchKind::Annulus | PatchKind::CylinderWall => Ok(grid(patch, n)),
    }
}

fn register_chains<T: Real>(
    m: &mut SubMesh<T>,
    patch: &Patch<T>,
    chains: Vec<(ArcSide, Vec<usize>)>,
) {
    for (side, ids) in chains {
        let arc = patch.arc(side).expect("arc belongs to patch");
        let key = ChainKey::Arc(arc.id);
        m.chain_roles.insert(key.clone(), EdgeRole::from(arc.role));
        m.chains.insert(key, ids);
    }
}

/// Unrolled arc-length coordinate of wall column `i` (radius 1).
pub fn wall_chart_u<T: Real>(i: usize, n: usize) -> T {
    T::FRAC_PI_2() / count::<T>(n as i64) * count::<T>(i as i64)
}

/// Concentric rings scaled toward `center`, with a triangle fan in the middle.
fn star<T: Real>(patch: &Patch<T>, n: usize, center: [T; 2]) -> SubMesh<T> {
    let plane = patch.plane();
    let eps = T::gluing_tolerance();
    let order = patch.boundary_loop(eps).expect("piece boundary closes");
    let mut ring: Vec<Point3<T>> = Vec::new();
    let mut spans = Vec::new();
    for (id, rev) in &order {
        let arc = patch.arc(id.side).expect("arc belongs to patch");
        let segs = arc.segments(n);
        let start = ring.len();
        for j in 0..segs {
            let k = if *rev { segs - j } else { j };
            ring.push(arc.sample_local(k, n));
        }
        spans.push((id.side, *rev, start, segs));
    }
    let m_len = ring.len();
    let mut m = SubMesh::new(FaceTag::Piece(patch.piece));
    let c = Point3::new(center[0], center[1], T::zero());
    let hub = m.add_vertex(plane.embed(c), Point2::new(c.x, c.y));
    let mut rings: Vec<Vec<usize>> = Vec::with_capacity(n);
    for k in 1..=n {
        let t = count::<T>(k as i64) / count::<T>(n as i64);
        let ids = ring
            .iter()
            .map(|&q| {
                let p = if k == n { q } else { c + (q - c) * t };
                m.add_vertex(plane.embed(p), Point2::new(p.x, p.y))
            })
            .collect();
        rings.push(ids);
    }
    for i in 0..m_len {
        let j = (i + 1) % m_len;
        m.faces.push(vec![hub, rings[0][i], rings[0][j]]);
        for k in 0..n - 1 {
            m.faces.push(vec![
                rings[k][i],
                rings[k + 1][i],
                rings[k + 1][j],
                rings[k][j],
            ]);
        }
    }
    let outer = &rings[n - 1];
    let chains = spans
        .into_iter()
        .map(|(side, rev, start, segs)| {
            let mut ids: Vec<usize> = (0..=segs).map(|j| outer[(start + j) % m_len]).collect();
            if rev {
                ids.reverse();
            }
            (side, ids)
        })
        .collect();
    register_chains(&mut m, patch, chains);
    m
}

/// Annulus in (angle, radius) and cylinder wall in (angle, height).
fn grid<T: Real>(patch: &Patch<T>, n: usize) -> SubMesh<T> {
    let plane = patch.plane();
    let wall = patch.kind == PatchKind::CylinderWall;
    let cols = 3 * n;
    let center = [T::one(), -T::one()];
    let two_thirds = lit::<T>(2.0 / 3.0);
    let mut m = SubMesh::new(FaceTag::Piece(patch.piece));
    let id = |i: usize, j: usize| j * (cols + 1) + i;
    for j in 0..=n {
        for i in 0..=cols {
            let idx = (2 * n + i) as i64;
            let (local, uv) = if wall {
                let q = circle_point(center, T::one(), idx, n);
                let z = segment_parameter::<T>(j, n);
                (
                    Point3::new(q[0], q[1], z),
                    Point2::new(wall_chart_u(i, n), z),
                )
            } else {
                let r = two_thirds * (T::one() + count::<T>(j as i64) / count::<T>(n as i64));
                let q = circle_point(center, r, idx, n);
                (Point3::new(q[0], q[1], T::zero()), Point2::new(q[0], q[1]))
            };
            m.add_vertex(plane.embed(local), uv);
        }
    }
    for j in 0..n {
        for i in 0..cols {
            let quad = if wall {
                vec![id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]
            } else {
                vec![id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)]
            };
            m.faces.push(quad);
        }
    }
    let row = |j: usize| (0..=cols).map(|i| id(i, j)).collect::<Vec<_>>();
    let col = |i: usize| (0..=n).map(|j| id(i, j)).collect::<Vec<_>>();
    let chains = if wall {
        vec![
            (ArcSide::Bottom, row(0)),
            (ArcSide::Top, row(n)),
            (ArcSide::EndY, col(0)),
            (ArcSide::EndX, col(cols)),
        ]
    } else {
        let mut chop_y = col(0);
        chop_y.reverse();
        vec![
            (ArcSide::Inner, row(0)),
            (ArcSide::Outer, row(n)),
            (ArcSide::ChopY, chop_y),
            (ArcSide::ChopX, col(cols)),
        ]
    };
    // snap boundary vertices onto the canonical arc samples
    for (side, ids) in &chains {
        let arc = patch.arc(*side).expect("arc belongs to patch");
        for (k, &v) in ids.iter().enumerate() {
            m.positions[v] = arc.sample(k, n);
            if !wall {
                let l = arc.sample_local(k, n);
                m.uv[v] = Point2::new(l.x, l.y);
            }
        }
    }
    register_chains(&mut m, patch, chains);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::all_patches;

    #[test]
    fn every_piece_is_a_disk() {
        for n in [2, 3, 5] {
            for p in all_patches::<f64>() {
                let m = tessellate(&p, n).unwrap();
                let t = m.topology().unwrap();
                assert_eq!(t.euler_characteristic(), 1, "{} n={n}", p.piece);
                assert_eq!(t.boundary_loops().unwrap().len(), 1);
                assert!(t.orientable());
            }
        }
    }

    #[test]
    fn chains_follow_arc_samples() {
        let n = 4;
        for p in all_patches::<f64>() {
            let m = tessellate(&p, n).unwrap();
            for arc in &p.boundary {
                let ids = &m.chains[&ChainKey::Arc(arc.id)];
                let s = arc.samples(n);
                assert_eq!(ids.len(), s.len());
                let last = s.len() - 1;
                for (k, (v, q)) in ids.iter().zip(s).enumerate() {
                    if k == 0 || k == last {
                        // corners are shared with the neighbouring arc
                        assert!(m.positions[*v].distance(q) < 1e-15, "{}", arc.id);
                    } else {
                        assert_eq!(m.positions[*v], q, "{}", arc.id);
                    }
                }
            }
        }
    }

    #[test]
    fn tessellated_vertices_lie_on_piece() {
        for p in all_patches::<f64>() {
            let m = tessellate(&p, 3).unwrap();
            for q in &m.positions {
                assert!(p.contains(*q, 1e-9), "{} {:?}", p.piece, q);
            }
        }
    }

    #[test]
    fn planar_faces_are_counterclockwise_in_chart() {
        for p in all_patches::<f64>() {
            let m = tessellate(&p, 3).unwrap();
            for f in &m.faces {
                let mut area = 0.0;
                for i in 0..f.len() {
                    let a = m.uv[f[i]];
                    let b = m.uv[f[(i + 1) % f.len()]];
                    area += a.perp_dot(b);
                }
                assert!(area > 0.0, "{}", p.piece);
            }
        }
    }

    #[test]
    fn resolution_below_two_is_rejected() {
        let p = &all_patches::<f64>()[0];
        assert!(matches!(
            tessellate(p, 1),
            Err(BoyError::InvalidResolution(1))
        ));
    }
}
