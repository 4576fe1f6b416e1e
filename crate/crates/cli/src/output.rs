//! CSV tables and Wavefront OBJ meshes.

use std::io::{BufRead, Write};

use mannheim_core::mannheim::OffsetRow;
use mannheim_core::ruled_surface::FrameSample;
use mannheim_core::{DualScalar, Vec3L};

use crate::error::{CliError, CliResult};

pub const FRAMES_HEADER: [&str; 18] = [
    "s", "e1", "e2", "e3", "t1", "t2", "t3", "g1", "g2", "g3", "gamma", "delta", "Delta", "s_star", "gamma_dual_re",
    "gamma_dual_du", "R_re", "R_du",
];

/// Writes one row per frame; `radius` gives `R̄` for each frame.
pub fn write_frames<W: Write>(out: W, frames: &[FrameSample], radius: &[DualScalar]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| CliError { kind: crate::error::ErrorKind::Io, message: e.to_string() };
    w.write_record(FRAMES_HEADER).map_err(err)?;
    for (f, r) in frames.iter().zip(radius) {
        let mut row = vec![f.s];
        for v in [f.e, f.t, f.g] {
            row.extend(v.to_array());
        }
        row.extend([f.gamma, f.delta, f.big_delta, f.s_star, f.gamma_dual.re, f.gamma_dual.du, r.re, r.du]);
        w.write_record(row.iter().map(|x| x.to_string())).map_err(err)?;
    }
    w.flush().map_err(|e| CliError { kind: crate::error::ErrorKind::Io, message: e.to_string() })
}

pub const OFFSET_HEADER: [&str; 25] = [
    "s",
    "s1",
    "theta",
    "theta_star",
    "gamma",
    "delta",
    "Delta",
    "predicted_arc_rate",
    "measured_arc_rate",
    "predicted_Delta1",
    "measured_Delta1",
    "predicted_delta1",
    "measured_delta1",
    "predicted_gamma1",
    "measured_gamma1",
    "predicted_gamma1_dual_re",
    "predicted_gamma1_dual_du",
    "measured_gamma1_dual_re",
    "measured_gamma1_dual_du",
    "predicted_R1_re",
    "predicted_R1_du",
    "measured_R1_re",
    "measured_R1_du",
    "max_residual",
    "coth_singular",
];

pub fn write_offset_rows<W: Write>(out: W, rows: &[OffsetRow]) -> CliResult<()> {
    let err = |e: csv::Error| CliError { kind: crate::error::ErrorKind::Io, message: e.to_string() };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(OFFSET_HEADER).map_err(err)?;
    for r in rows {
        let (p, m) = (&r.predicted, &r.measured);
        let max = r.residuals.values().iter().fold(0.0f64, |a, b| a.max(*b));
        let cols = [
            r.s,
            r.s1,
            r.theta,
            r.theta_star,
            r.base_gamma,
            r.base_delta,
            r.base_big_delta,
            p.arc_rate,
            m.arc_rate,
            p.big_delta,
            m.big_delta,
            p.delta,
            m.delta,
            p.gamma,
            m.gamma,
            p.gamma_dual.re,
            p.gamma_dual.du,
            m.gamma_dual.re,
            m.gamma_dual.du,
            p.radius.re,
            p.radius.du,
            m.radius.re,
            m.radius.du,
            max,
        ];
        let mut rec: Vec<String> = cols.iter().map(|x| x.to_string()).collect();
        rec.push(r.coth_singular.to_string());
        w.write_record(rec).map_err(err)?;
    }
    w.flush().map_err(|e| CliError { kind: crate::error::ErrorKind::Io, message: e.to_string() })
}

/// `x` rounded to 9 significant digits, printed without exponent.
pub fn fmt9(x: f64) -> String {
    let rounded: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    let s = format!("{rounded}");
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// A grid of `rows × cols` vertices, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshObject {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub vertices: Vec<Vec3L>,
}

/// Writes every object with quad faces between neighbouring grid points.
pub fn write_obj<W: Write>(mut out: W, objects: &[MeshObject]) -> std::io::Result<()> {
    let mut base = 1;
    for o in objects {
        writeln!(out, "o {}", o.name)?;
        for v in &o.vertices {
            writeln!(out, "v {} {} {}", fmt9(v.x1), fmt9(v.x2), fmt9(v.x3))?;
        }
        for i in 0..o.rows.saturating_sub(1) {
            for j in 0..o.cols.saturating_sub(1) {
                let k = base + i * o.cols + j;
                writeln!(out, "f {} {} {} {}", k, k + 1, k + 1 + o.cols, k + o.cols)?;
            }
        }
        base += o.vertices.len();
    }
    out.flush()
}

/// Parsed OBJ content: vertices of each object and all faces (1-based).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ObjFile {
    pub objects: Vec<(String, Vec<Vec3L>)>,
    pub faces: Vec<Vec<usize>>,
}

pub fn read_obj<R: BufRead>(input: R) -> Result<ObjFile, String> {
    let mut obj = ObjFile::default();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        let mut it = line.split_whitespace();
        match it.next() {
            Some("o") => obj.objects.push((it.collect::<Vec<_>>().join(" "), Vec::new())),
            Some("v") => {
                let c: Vec<f64> = it.map(str::parse).collect::<Result<_, _>>().map_err(|e| format!("line {}: {e}", n + 1))?;
                if c.len() != 3 {
                    return Err(format!("line {}: vertex needs 3 coordinates", n + 1));
                }
                if obj.objects.is_empty() {
                    obj.objects.push((String::new(), Vec::new()));
                }
                obj.objects.last_mut().expect("object exists").1.push(Vec3L::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let f = it
                    .map(|t| t.split('/').next().unwrap_or(t).parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| format!("line {}: {e}", n + 1))?;
                obj.faces.push(f);
            }
            _ => {}
        }
    }
    Ok(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt9(0.123456789123), "0.123456789");
        assert_eq!(fmt9(1234.56789012), "1234.56789");
        assert_eq!(fmt9(0.5), "0.5");
        assert_eq!(fmt9(-0.0), "0");
        assert_eq!(fmt9(1e-12), "0.000000000001");
    }

    #[test]
    fn obj_round_trip() {
        let o = MeshObject {
            name: "base".into(),
            rows: 2,
            cols: 2,
            vertices: vec![Vec3L::zero(), Vec3L::E1, Vec3L::E2, Vec3L::new(1.0, 1.0, 1.0 / 3.0)],
        };
        let mut buf = Vec::new();
        write_obj(&mut buf, &[o.clone(), MeshObject { name: "offset".into(), ..o.clone() }]).unwrap();
        let back = read_obj(buf.as_slice()).unwrap();
        assert_eq!(back.objects.len(), 2);
        assert_eq!(back.faces, vec![vec![1, 2, 4, 3], vec![5, 6, 8, 7]]);
        assert!((back.objects[0].1[3].x3 - 1.0 / 3.0).abs() < 1e-9);
    }
}
