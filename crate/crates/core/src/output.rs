//! CSV and JSON encodings of sweep grids.
//!
//! CSV layout (UTF-8, LF, comma separated):
//!
//! ```text
//! # fixed: J=-0.4,K=-0.6
//! # axes: x=B:0.0:1.0:101,y=T:0.001:1.0:101
//! # <key>: <value>            (optional metadata lines)
//! B,T,negativity
//! 0.0,0.001,1.0
//! ...
//! ```
//!
//! Rows are x-major. Numbers use the shortest decimal form that parses back
//! to the same `f64`.

use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::{Axis, Param, SweepGrid};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("malformed grid CSV (line {line}): {msg}")]
pub struct GridParseError {
    pub line: usize,
    pub msg: String,
}

/// Shortest round-trip decimal representation.
pub fn fmt_num(x: f64) -> String {
    format!("{x:?}")
}

fn fmt_axis(a: &Axis<f64>) -> String {
    format!(
        "{}:{}:{}:{}",
        a.param,
        fmt_num(a.min),
        fmt_num(a.max),
        a.count
    )
}

/// `metadata` pairs are emitted as `# key: value` lines after the axes line.
pub fn grid_to_csv(grid: &SweepGrid<f64>, metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    let fixed: Vec<String> = grid
        .fixed
        .iter()
        .map(|(p, v)| format!("{p}={}", fmt_num(*v)))
        .collect();
    out.push_str(&format!("# fixed: {}\n", fixed.join(",")));
    out.push_str(&format!(
        "# axes: x={},y={}\n",
        fmt_axis(&grid.x),
        fmt_axis(&grid.y)
    ));
    for (k, v) in metadata {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out.push_str(&format!("{},{},negativity\n", grid.x.param, grid.y.param));
    for (x, y, n) in grid.rows() {
        out.push_str(&format!("{},{},{}\n", fmt_num(x), fmt_num(y), fmt_num(n)));
    }
    out
}

/// Inverse of [`grid_to_csv`]. Extra `#` lines are ignored.
pub fn grid_from_csv(text: &str) -> Result<SweepGrid<f64>, GridParseError> {
    let err = |line: usize, msg: String| GridParseError { line, msg };
    let mut fixed = None;
    let mut axes = None;
    let mut header_seen = false;
    let mut rows = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(rest) = meta.strip_prefix("fixed:") {
                fixed = Some(parse_fixed(rest.trim()).map_err(|m| err(lineno, m))?);
            } else if let Some(rest) = meta.strip_prefix("axes:") {
                axes = Some(parse_axes(rest.trim()).map_err(|m| err(lineno, m))?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            header_seen = true;
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(err(
                lineno,
                format!("expected 3 columns, got {}", cols.len()),
            ));
        }
        let mut vals = [0.0; 3];
        for (slot, c) in vals.iter_mut().zip(&cols) {
            *slot = c
                .parse()
                .map_err(|_| err(lineno, format!("bad number {c:?}")))?;
        }
        rows.push((lineno, vals));
    }

    let fixed = fixed.ok_or_else(|| err(0, "missing '# fixed:' line".into()))?;
    let (x, y): (Axis<f64>, Axis<f64>) =
        axes.ok_or_else(|| err(0, "missing '# axes:' line".into()))?;
    if rows.len() != x.count * y.count {
        return Err(err(
            0,
            format!("expected {} rows, found {}", x.count * y.count, rows.len()),
        ));
    }
    let mut values = Vec::with_capacity(rows.len());
    for (idx, (lineno, [xv, yv, n])) in rows.into_iter().enumerate() {
        if xv != x.value(idx / y.count) || yv != y.value(idx % y.count) {
            return Err(err(lineno, "coordinates do not match the axes".into()));
        }
        values.push(n);
    }
    Ok(SweepGrid {
        x,
        y,
        fixed,
        values,
    })
}

fn parse_fixed(s: &str) -> Result<Vec<(Param, f64)>, String> {
    s.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("bad fixed entry {kv:?}"))?;
            let p: Param = k.parse().map_err(|e: crate::Error| e.to_string())?;
            let v: f64 = v.parse().map_err(|_| format!("bad number {v:?}"))?;
            Ok((p, v))
        })
        .collect()
}

fn parse_axes(s: &str) -> Result<(Axis<f64>, Axis<f64>), String> {
    let (xs, ys) = s
        .split_once(',')
        .ok_or_else(|| format!("bad axes line {s:?}"))?;
    let x = xs
        .strip_prefix("x=")
        .ok_or_else(|| format!("expected x=..., got {xs:?}"))?;
    let y = ys
        .strip_prefix("y=")
        .ok_or_else(|| format!("expected y=..., got {ys:?}"))?;
    let parse = |a: &str| a.parse::<Axis<f64>>().map_err(|e| e.to_string());
    Ok((parse(x)?, parse(y)?))
}

/// JSON document `{ "metadata": …, "grid": … }` with values nested per x.
pub fn grid_to_json(grid: &SweepGrid<f64>, metadata: Value) -> String {
    let ny = grid.y.count;
    let nested: Vec<&[f64]> = grid.values.chunks(ny).collect();
    let fixed: serde_json::Map<String, Value> = grid
        .fixed
        .iter()
        .map(|(p, v)| (p.symbol().to_string(), json!(v)))
        .collect();
    let doc = json!({
        "metadata": metadata,
        "grid": {
            "x_axis": axis_json(&grid.x),
            "y_axis": axis_json(&grid.y),
            "fixed": fixed,
            "values": nested,
        }
    });
    serde_json::to_string_pretty(&doc).expect("grid serializes") + "\n"
}

fn axis_json(a: &Axis<f64>) -> Value {
    json!({ "name": a.param.symbol(), "min": a.min, "max": a.max, "count": a.count })
}
