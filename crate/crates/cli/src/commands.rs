use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use jgeom::jordan::{peirce, PeirceIndex};
use jgeom::manifold::{distance, geodesic, levi_norm, log_map};
use jgeom::matrix::io::{read_matrix, write_matrix, MatrixFile};
use jgeom::matrix::{herm_eig, is_projection, CMat, HermMat};
use jgeom::pair::{decompose_pair, principal_angles};
use jgeom::tangent::tangent_residual;
use jgeom::{Error, Projection, Result};

use crate::config::RunConfig;

/// Output of one subcommand, rendered later as JSON or CSV.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub residuals: Value,
    pub csv: String,
}

fn matrix_value(m: &CMat) -> Value {
    serde_json::to_value(MatrixFile::from_cmat(m)).expect("matrix serialization")
}

fn path_value(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

fn read_hermitian(path: &Path, cfg: &RunConfig) -> Result<HermMat> {
    HermMat::new(read_matrix(path)?, &cfg.tolerances)
}

fn read_projection(path: &Path, cfg: &RunConfig) -> Result<Projection> {
    Projection::new(read_hermitian(path, cfg)?, &cfg.tolerances)
}

fn idempotency_residual(m: &HermMat) -> f64 {
    let sq = m.mat() * m.mat();
    (&sq - m.mat()).op_norm()
}

fn write_output(path: &Path, m: &CMat) -> Result<()> {
    write_matrix(path, m).map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))
}

/// Row-major `row,col,re,im` lines, each prefixed by `prefix`.
fn csv_matrix(out: &mut String, prefix: &str, m: &CMat) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            writeln!(out, "{prefix}{i},{j},{},{}", num(z.re), num(z.im)).unwrap();
        }
    }
}

/// Shortest round-trip decimal, the same encoding the JSON output uses.
fn num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

fn csv_key_values(rows: &[(&str, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        writeln!(out, "{k},{v}").unwrap();
    }
    out
}

pub fn check(file: &Path, cfg: &RunConfig) -> Result<Report> {
    let m = read_hermitian(file, cfg)?;
    let n = m.n();
    let (is_proj, rank) = is_projection(&m, &cfg.tolerances);
    let eig = herm_eig(&m)?;
    let (lo, hi) = (eig.values[n - 1], eig.values[0]);
    let residual = idempotency_residual(&m);
    let summary = if is_proj { format!("projection, rank {rank}") } else { "not a projection".to_string() };
    let csv = csv_key_values(&[
        ("summary", format!("\"{summary}\"")),
        ("n", n.to_string()),
        ("projection", is_proj.to_string()),
        ("rank", if is_proj { rank.to_string() } else { String::new() }),
        ("eigenvalue_min", num(lo)),
        ("eigenvalue_max", num(hi)),
        ("idempotency", num(residual)),
        ("hermitian", num(m.mat().hermitian_defect())),
    ]);
    Ok(Report {
        command: "check",
        inputs: json!({ "file": path_value(file) }),
        result: json!({
            "summary": summary,
            "n": n,
            "projection": is_proj,
            "rank": if is_proj { json!(rank) } else { Value::Null },
            "eigenvalue_min": lo,
            "eigenvalue_max": hi,
        }),
        residuals: json!({
            "idempotency": residual,
            "hermitian": m.mat().hermitian_defect(),
        }),
        csv,
    })
}

pub fn peirce_cmd(file_a: &Path, file_x: &Path, out_dir: &Path, prefix: &str, cfg: &RunConfig) -> Result<Report> {
    let a = read_projection(file_a, cfg)?;
    let x = read_hermitian(file_x, cfg)?;
    let names = ["one", "half", "zero"];
    let mut parts = Vec::with_capacity(3);
    let mut outputs = serde_json::Map::new();
    let mut csv = String::from("part,row,col,re,im\n");
    for (k, name) in PeirceIndex::ALL.into_iter().zip(names) {
        let part = peirce(&a, k, &x)?;
        let path: PathBuf = out_dir.join(format!("{prefix}_{name}.json"));
        write_output(&path, part.mat())?;
        outputs.insert(name.to_string(), path_value(&path));
        csv_matrix(&mut csv, &format!("{name},"), part.mat());
        parts.push(part);
    }
    let sum = parts.iter().fold(HermMat::zeros(x.n()), |s, p| s.add(p));
    Ok(Report {
        command: "peirce",
        inputs: json!({ "a": path_value(file_a), "x": path_value(file_x) }),
        result: json!({ "rank": a.rank(), "outputs": outputs }),
        residuals: json!({ "reconstruction": sum.dist(&x) }),
        csv,
    })
}

pub fn geodesic_cmd(file_a: &Path, file_b: &Path, cfg: &RunConfig) -> Result<Report> {
    let tol = &cfg.tolerances;
    let a = read_projection(file_a, cfg)?;
    let b = read_projection(file_b, cfg)?;
    let u = log_map(&a, &b, tol)?;
    let g = geodesic(&u, tol)?;
    let n = cfg.sample_count;
    let mut samples = Vec::with_capacity(n);
    let mut csv = String::from("sample,t,rank,row,col,re,im\n");
    let mut max_idem: f64 = 0.0;
    let mut all_ranks_ok = true;
    let mut first_last = (HermMat::zeros(a.n()), HermMat::zeros(a.n()));
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        let p = g.eval_matrix(t);
        let (ok, rank) = is_projection(&p, tol);
        let rank_ok = ok && rank == a.rank();
        all_ranks_ok &= rank_ok;
        max_idem = max_idem.max(idempotency_residual(&p));
        csv_matrix(&mut csv, &format!("{i},{},{rank},", num(t)), p.mat());
        samples.push(json!({ "t": t, "rank": rank, "rank_ok": rank_ok, "matrix": matrix_value(p.mat()) }));
        if i == 0 {
            first_last.0 = p.clone();
        }
        if i == n - 1 {
            first_last.1 = p;
        }
    }
    Ok(Report {
        command: "geodesic",
        inputs: json!({ "a": path_value(file_a), "b": path_value(file_b), "samples": n }),
        result: json!({
            "rank": a.rank(),
            "tangent": matrix_value(u.mat().mat()),
            "length": levi_norm(&u).value(),
            "ranks_ok": all_ranks_ok,
            "samples": samples,
        }),
        residuals: json!({
            "endpoint_a": first_last.0.dist(a.mat()),
            "endpoint_b": first_last.1.dist(b.mat()),
            "tangent": tangent_residual(&a, u.mat()),
            "max_idempotency": max_idem,
        }),
        csv,
    })
}

pub fn distance_cmd(file_a: &Path, file_b: &Path, cfg: &RunConfig) -> Result<Report> {
    let tol = &cfg.tolerances;
    let a = read_projection(file_a, cfg)?;
    let b = read_projection(file_b, cfg)?;
    let d = distance(&a, &b, tol)?;
    let thetas = principal_angles(&a, &b, tol)?.expanded();
    let (case_i, case_ii, case_iii) = decompose_pair(&a, &b, tol)?.case_ranks();
    let mut csv = String::from("key,value\n");
    writeln!(csv, "distance,{}", num(d)).unwrap();
    for (k, t) in thetas.iter().enumerate() {
        writeln!(csv, "theta_{k},{}", num(*t)).unwrap();
    }
    writeln!(csv, "case_i,{case_i}\ncase_ii,{case_ii}\ncase_iii,{case_iii}").unwrap();
    let angle_sum = thetas.iter().map(|t| t * t).sum::<f64>().sqrt();
    Ok(Report {
        command: "distance",
        inputs: json!({ "a": path_value(file_a), "b": path_value(file_b) }),
        result: json!({
            "distance": d,
            "thetas": thetas,
            "case_ranks": { "case_i": case_i, "case_ii": case_ii, "case_iii": case_iii },
        }),
        residuals: json!({ "angle_sum": (angle_sum - d).abs() }),
        csv,
    })
}

pub fn interpolate(file_a: &Path, file_b: &Path, t: f64, out: &Path, cfg: &RunConfig) -> Result<Report> {
    if !t.is_finite() {
        return Err(Error::ParseError(format!("--t must be finite, got {t}")));
    }
    let tol = &cfg.tolerances;
    let a = read_projection(file_a, cfg)?;
    let b = read_projection(file_b, cfg)?;
    let g = geodesic(&log_map(&a, &b, tol)?, tol)?;
    let p = g.eval_matrix(t);
    write_output(out, p.mat())?;
    let mut csv = String::from("row,col,re,im\n");
    csv_matrix(&mut csv, "", p.mat());
    let (_, rank) = is_projection(&p, tol);
    Ok(Report {
        command: "interpolate",
        inputs: json!({ "a": path_value(file_a), "b": path_value(file_b), "t": t }),
        result: json!({ "output": path_value(out), "rank": rank }),
        residuals: json!({ "idempotency": idempotency_residual(&p) }),
        csv,
    })
}
