//! CSV import/export of grid fields.
//!
//! Scalar fields use the header `x,y,value`, vector fields `x,y,vx,vy`.
//! One row per interior cell, at its center. A reader accepts rows in any
//! order but requires every interior cell exactly once.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::geometry::{GridDomain, Point};

#[derive(Debug, Serialize, Deserialize)]
struct ScalarRow {
    x: f64,
    y: f64,
    value: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct VectorRow {
    x: f64,
    y: f64,
    vx: f64,
    vy: f64,
}

pub fn write_scalar_csv<W: Write>(f: &ScalarField, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for idx in f.domain.interior_cells() {
        let c = f.grid().center_of(idx);
        wr.serialize(ScalarRow { x: c.x, y: c.y, value: f.values[idx] })?;
    }
    wr.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_vector_csv<W: Write>(v: &VectorField, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for idx in v.domain.interior_cells() {
        let c = v.domain.grid.center_of(idx);
        wr.serialize(VectorRow { x: c.x, y: c.y, vx: v.vx[idx], vy: v.vy[idx] })?;
    }
    wr.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Maps a row position to its interior cell, marking it as seen.
fn claim(g: &GridDomain, seen: &mut [bool], line: usize, x: f64, y: f64) -> Result<usize> {
    let p = Point::new(x, y);
    if !p.is_finite() {
        return Err(Error::Parse { line, msg: format!("non-finite coordinates ({x}, {y})") });
    }
    let idx = g
        .grid
        .locate(p)
        .filter(|&i| g.contains(i))
        .ok_or_else(|| Error::DimensionMismatch(format!("line {line}: ({x}, {y}) is not inside an interior cell")))?;
    if g.grid.center_of(idx).dist(p) > 1e-6 * g.cell() {
        return Err(Error::DimensionMismatch(format!("line {line}: ({x}, {y}) is not a cell center")));
    }
    if std::mem::replace(&mut seen[idx], true) {
        return Err(Error::DimensionMismatch(format!("line {line}: cell at ({x}, {y}) given twice")));
    }
    Ok(idx)
}

fn all_seen(g: &GridDomain, seen: &[bool]) -> Result<()> {
    let got = seen.iter().filter(|&&s| s).count();
    if got != g.interior_count() {
        return Err(Error::DimensionMismatch(format!(
            "field has {got} cells, domain has {} interior cells",
            g.interior_count()
        )));
    }
    Ok(())
}

fn row_error(e: csv::Error, fallback_line: usize) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(fallback_line);
    Error::Parse { line, msg: e.to_string() }
}

pub fn read_scalar_csv<R: Read>(r: R, g: &GridDomain) -> Result<ScalarField> {
    let mut f = ScalarField::zeros(g);
    let mut seen = vec![false; g.grid.len()];
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    for (k, row) in rd.deserialize::<ScalarRow>().enumerate() {
        let line = k + 2;
        let row = row.map_err(|e| row_error(e, line))?;
        if !row.value.is_finite() {
            return Err(Error::Parse { line, msg: format!("non-finite value {}", row.value) });
        }
        let idx = claim(g, &mut seen, line, row.x, row.y)?;
        f.values[idx] = row.value;
    }
    all_seen(g, &seen)?;
    Ok(f)
}

pub fn read_vector_csv<R: Read>(r: R, g: &GridDomain) -> Result<VectorField> {
    let mut v = VectorField::zeros(g);
    let mut seen = vec![false; g.grid.len()];
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    for (k, row) in rd.deserialize::<VectorRow>().enumerate() {
        let line = k + 2;
        let row = row.map_err(|e| row_error(e, line))?;
        if !(row.vx.is_finite() && row.vy.is_finite()) {
            return Err(Error::Parse { line, msg: format!("non-finite vector ({}, {})", row.vx, row.vy) });
        }
        let idx = claim(g, &mut seen, line, row.x, row.y)?;
        v.vx[idx] = row.vx;
        v.vy[idx] = row.vy;
    }
    all_seen(g, &seen)?;
    Ok(v)
}
