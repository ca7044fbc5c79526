use std::collections::BTreeSet;

use crate::geom::Point3;
use crate::octa_graph::SignVector;
use crate::scalar::Real;

/// Signed permutation of the coordinates: `image[i] = sign[i] * p[perm[i]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    perm: [usize; 3],
    sign: [i8; 3],
}

impl Isometry {
    pub fn new(perm: [usize; 3], sign: [i8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        if sign.iter().any(|s| *s != 1 && *s != -1) {
            return None;
        }
        Some(Self { perm, sign })
    }

    pub fn identity() -> Self {
        Self {
            perm: [0, 1, 2],
            sign: [1, 1, 1],
        }
    }

    /// `(X, Y, Z) -> (Y, Z, X)`, the order 3 rotation about `X = Y = Z`.
    pub fn rho() -> Self {
        Self {
            perm: [1, 2, 0],
            sign: [1, 1, 1],
        }
    }

    /// `(X, Y, Z) -> (-Y, -X, -Z)`, the half turn fixing the line `X + Y = 0`.
    pub fn sigma() -> Self {
        Self {
            perm: [1, 0, 2],
            sign: [-1, -1, -1],
        }
    }

    /// `(X, Y, Z) -> (Z, X, Y)`: carries the XY plane to YZ and YZ to ZX.
    /// This is the inverse of [`Isometry::rho`].
    pub fn cycle() -> Self {
        Self {
            perm: [2, 0, 1],
            sign: [1, 1, 1],
        }
    }

    pub fn point_reflection() -> Self {
        Self {
            perm: [0, 1, 2],
            sign: [-1, -1, -1],
        }
    }

    /// Matrix with entries in {-1, 0, 1}.
    pub fn matrix(&self) -> [[i8; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            m[i][self.perm[i]] = self.sign[i];
        }
        m
    }

    pub fn determinant(&self) -> i8 {
        let m = self.matrix();
        let d = m[0][0] as i32
            * (m[1][1] as i32 * m[2][2] as i32 - m[1][2] as i32 * m[2][1] as i32)
            - m[0][1] as i32 * (m[1][0] as i32 * m[2][2] as i32 - m[1][2] as i32 * m[2][0] as i32)
            + m[0][2] as i32 * (m[1][0] as i32 * m[2][1] as i32 - m[1][1] as i32 * m[2][0] as i32);
        d as i8
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Isometry) -> Isometry {
        let mut perm = [0; 3];
        let mut sign = [0; 3];
        for i in 0..3 {
            perm[i] = inner.perm[self.perm[i]];
            sign[i] = self.sign[i] * inner.sign[self.perm[i]];
        }
        Isometry { perm, sign }
    }

    pub fn inverse(&self) -> Isometry {
        let mut perm = [0; 3];
        let mut sign = [0; 3];
        for i in 0..3 {
            perm[self.perm[i]] = i;
            sign[self.perm[i]] = self.sign[i];
        }
        Isometry { perm, sign }
    }

    pub fn power(&self, k: u32) -> Isometry {
        (0..k).fold(Isometry::identity(), |acc, _| self.compose(&acc))
    }

    pub fn apply_array<V: Copy + std::ops::Neg<Output = V>>(&self, p: [V; 3]) -> [V; 3] {
        let mut out = p;
        for i in 0..3 {
            let v = p[self.perm[i]];
            out[i] = if self.sign[i] < 0 { -v } else { v };
        }
        out
    }

    pub fn apply_sign(&self, v: SignVector) -> SignVector {
        SignVector(self.apply_array(v.0))
    }

    pub fn apply_point<T: Real>(&self, p: Point3<T>) -> Point3<T> {
        Point3::from_array(self.apply_array(p.to_array()))
    }

    pub fn apply_int(&self, p: [i64; 3]) -> [i64; 3] {
        self.apply_array(p)
    }
}

/// All elements generated by `gens`, sorted.
pub fn generate_group(gens: &[Isometry]) -> Vec<Isometry> {
    let mut group: BTreeSet<Isometry> = BTreeSet::new();
    group.insert(Isometry::identity());
    let mut frontier = vec![Isometry::identity()];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let p = h.compose(&g);
            if group.insert(p) {
                frontier.push(p);
            }
        }
    }
    group.into_iter().collect()
}

/// The order 6 group generated by the order 3 rotation and the half turns.
pub fn symmetry_group() -> Vec<Isometry> {
    generate_group(&[Isometry::rho(), Isometry::sigma()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_and_sigma_on_labels() {
        let v = SignVector::new(1, 1, 0);
        assert_eq!(Isometry::rho().apply_sign(v), SignVector::new(1, 0, 1));
        assert_eq!(Isometry::identity().apply_sign(v), v);
        assert_eq!(Isometry::sigma().apply_sign(v), SignVector::new(-1, -1, 0));
    }

    #[test]
    fn group_has_six_rotations() {
        let g = symmetry_group();
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|t| t.determinant() == 1));
        assert!(!g.contains(&Isometry::point_reflection()));
        assert_eq!(Isometry::rho().power(3), Isometry::identity());
        assert_eq!(Isometry::sigma().power(2), Isometry::identity());
        assert_eq!(Isometry::cycle(), Isometry::rho().inverse());
    }

    #[test]
    fn compose_matches_sequential_application() {
        let g = symmetry_group();
        let p = [1i64, -2, 3];
        for a in &g {
            for b in &g {
                assert_eq!(a.compose(b).apply_int(p), a.apply_int(b.apply_int(p)));
            }
            assert_eq!(a.inverse().apply_int(a.apply_int(p)), p);
        }
    }
}
