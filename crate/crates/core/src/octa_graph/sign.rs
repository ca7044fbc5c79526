use std::fmt;

use serde::{Serialize, Serializer};

/// Triple of signs in {-1, 0, +1}.
///
/// Octahedron vertices have one nonzero entry, roads have exactly one zero
/// entry and orthants have none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub [i8; 3]);

impl SignVector {
    pub fn new(x: i8, y: i8, z: i8) -> Self {
        debug_assert!([x, y, z].iter().all(|s| (-1..=1).contains(s)));
        SignVector([x, y, z])
    }

    pub fn from_signs(values: [f64; 3], eps: f64) -> Self {
        let sign = |v: f64| {
            if v > eps {
                1
            } else if v < -eps {
                -1
            } else {
                0
            }
        };
        SignVector([sign(values[0]), sign(values[1]), sign(values[2])])
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == 0).count()
    }

    pub fn is_vertex(&self) -> bool {
        self.zero_count() == 2
    }

    pub fn is_road(&self) -> bool {
        self.zero_count() == 1
    }

    pub fn is_orthant(&self) -> bool {
        self.zero_count() == 0
    }

    pub fn add(&self, o: &SignVector) -> SignVector {
        SignVector([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn neg(&self) -> SignVector {
        SignVector([-self.0[0], -self.0[1], -self.0[2]])
    }

    pub fn as_f64(&self) -> [f64; 3] {
        [self.0[0] as f64, self.0[1] as f64, self.0[2] as f64]
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            let c = match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert!(SignVector::new(1, 0, 0).is_vertex());
        assert!(SignVector::new(1, -1, 0).is_road());
        assert!(SignVector::new(1, -1, 1).is_orthant());
        assert_eq!(SignVector::new(1, 1, 0).to_string(), "++0");
    }
}
