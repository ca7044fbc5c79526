use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::obj::finite_positions;
use crate::error::{BoyError, Result};
use crate::scalar::Real;
use crate::surface_complex::SurfaceComplex;

fn normal(t: &[[f64; 3]; 3]) -> [f32; 3] {
    let u = [t[1][0] - t[0][0], t[1][1] - t[0][1], t[1][2] - t[0][2]];
    let v = [t[2][0] - t[0][0], t[2][1] - t[0][1], t[2][2] - t[0][2]];
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let l = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if l > 0.0 {
        n.map(|x| (x / l) as f32)
    } else {
        [0.0; 3]
    }
}

/// Fan triangulation of every face.
pub fn triangles<T: Real>(c: &SurfaceComplex<T>, clamp: bool) -> Result<Vec<[[f64; 3]; 3]>> {
    let pos = finite_positions(c, clamp)?;
    let mut out = Vec::new();
    for f in &c.faces {
        for i in 1..f.verts.len() - 1 {
            out.push([pos[f.verts[0]], pos[f.verts[i]], pos[f.verts[i + 1]]]);
        }
    }
    Ok(out)
}

/// Binary little-endian STL.
pub fn write_stl<T: Real, W: Write>(c: &SurfaceComplex<T>, out: W, clamp: bool) -> Result<()> {
    let tris = triangles(c, clamp)?;
    let mut w = BufWriter::new(out);
    let mut header = [0u8; 80];
    let tag = b"boys-surface binary stl";
    header[..tag.len()].copy_from_slice(tag);
    w.write_all(&header)?;
    w.write_all(&(tris.len() as u32).to_le_bytes())?;
    for t in &tris {
        for x in normal(t) {
            w.write_all(&x.to_le_bytes())?;
        }
        for p in t {
            for x in p {
                w.write_all(&(*x as f32).to_le_bytes())?;
            }
        }
        w.write_all(&0u16.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_stl<T: Real>(c: &SurfaceComplex<T>, path: &Path, clamp: bool) -> Result<()> {
    write_stl(c, fs::File::create(path)?, clamp)
}

/// Triangles of a binary STL.
pub fn parse_stl(bytes: &[u8]) -> Result<Vec<[[f32; 3]; 3]>> {
    if bytes.len() < 84 {
        return Err(BoyError::Parse("stl shorter than header".into()));
    }
    let count = u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize;
    if bytes.len() != 84 + 50 * count {
        return Err(BoyError::Parse(format!(
            "stl size does not match {count} triangles"
        )));
    }
    let f = |o: usize| f32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    Ok((0..count)
        .map(|i| {
            let base = 84 + 50 * i + 12;
            let mut t = [[0f32; 3]; 3];
            for (k, p) in t.iter_mut().enumerate() {
                for (j, x) in p.iter_mut().enumerate() {
                    *x = f(base + 12 * k + 4 * j);
                }
            }
            t
        })
        .collect())
}

pub fn read_stl(path: &Path) -> Result<Vec<[[f32; 3]; 3]>> {
    parse_stl(&fs::read(path)?)
}
