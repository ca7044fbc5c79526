use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{BoyError, Result};
use crate::geom::Point3;
use crate::scalar::Real;
use crate::surface_complex::{SurfaceComplex, Topology};

/// Finite positions of `c`; with `clamp` the vertex at infinity is placed
/// at the origin (the fixed point of the symmetry group).
pub(crate) fn finite_positions<T: Real>(
    c: &SurfaceComplex<T>,
    clamp: bool,
) -> Result<Vec<[f64; 3]>> {
    c.positions
        .iter()
        .map(|p| match p {
            Some(p) => Ok(p.to_f64()),
            None if clamp => Ok([0.0; 3]),
            None => Err(BoyError::VertexAtInfinity),
        })
        .collect()
}

pub fn write_obj<T: Real, W: Write>(c: &SurfaceComplex<T>, out: W, clamp: bool) -> Result<()> {
    let pos = finite_positions(c, clamp)?;
    let mut w = BufWriter::new(out);
    writeln!(w, "# {} vertices, {} faces", pos.len(), c.faces.len())?;
    for p in &pos {
        writeln!(w, "v {} {} {}", p[0], p[1], p[2])?;
    }
    for f in &c.faces {
        write!(w, "f")?;
        for v in &f.verts {
            write!(w, " {}", v + 1)?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_obj<T: Real>(c: &SurfaceComplex<T>, path: &Path, clamp: bool) -> Result<()> {
    let file = fs::File::create(path)?;
    write_obj(c, file, clamp)
}

/// Vertices and faces read back from an OBJ file.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
}

impl ObjMesh {
    pub fn topology(&self) -> Result<Topology> {
        Topology::new(self.vertices.len(), &self.faces)
    }

    pub fn to_complex(&self) -> SurfaceComplex<f64> {
        let mut c = SurfaceComplex::empty();
        c.positions = self
            .vertices
            .iter()
            .map(|&p| Some(Point3::from_array(p)))
            .collect();
        c.faces = self
            .faces
            .iter()
            .map(|f| crate::surface_complex::Face {
                verts: f.clone(),
                tag: crate::surface_complex::FaceTag::Custom(0),
                uv: None,
            })
            .collect();
        c
    }
}

pub fn parse_obj(text: &str) -> Result<ObjMesh> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        let bad = |what: &str| BoyError::Parse(format!("line {}: {what}", ln + 1));
        match it.next() {
            Some("v") => {
                let mut p = [0.0; 3];
                for x in &mut p {
                    *x = it
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad vertex"))?;
                }
                if p.iter().any(|x: &f64| !x.is_finite()) {
                    return Err(bad("non-finite vertex"));
                }
                vertices.push(p);
            }
            Some("f") => {
                let mut f = Vec::new();
                for tok in it {
                    let idx: i64 = tok
                        .split('/')
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad face index"))?;
                    let v = if idx < 0 {
                        vertices.len() as i64 + idx
                    } else {
                        idx - 1
                    };
                    if v < 0 || v as usize >= vertices.len() {
                        return Err(bad("face index out of range"));
                    }
                    f.push(v as usize);
                }
                if f.len() < 3 {
                    return Err(bad("face with fewer than 3 vertices"));
                }
                faces.push(f);
            }
            _ => {}
        }
    }
    Ok(ObjMesh { vertices, faces })
}

pub fn read_obj(path: &Path) -> Result<ObjMesh> {
    parse_obj(&fs::read_to_string(path)?)
}
