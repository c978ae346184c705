//! File formats: the flat binary field-grid layout, CSV emission for small
//! grids and result tables.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::for_each_index;
use crate::grid::{FieldGrid, GridMeta};

/// Binary layout: d as u32 LE, n as u64 LE, then (n+1)^d values row-major
/// as f64 LE (last axis fastest).
pub fn write_field_binary(path: &Path, field: &FieldGrid) -> Result<()> {
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    w.write_all(&(field.d as u32).to_le_bytes())?;
    w.write_all(&(field.n as u64).to_le_bytes())?;
    for v in &field.values {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_field_binary(path: &Path) -> Result<FieldGrid> {
    let f = File::open(path)?;
    let mut r = BufReader::new(f);
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4)?;
    let d = u32::from_le_bytes(b4) as usize;
    r.read_exact(&mut b8)?;
    let n = u64::from_le_bytes(b8) as usize;
    if d == 0 || d > 3 || n == 0 {
        return Err(Error::Parameter(format!("implausible grid header d={d} n={n}")));
    }
    let total = (n + 1).pow(d as u32);
    let mut values = Vec::with_capacity(total);
    for _ in 0..total {
        r.read_exact(&mut b8)?;
        values.push(f64::from_le_bytes(b8));
    }
    FieldGrid::new(d, n, values, GridMeta::default())
}

/// CSV dump of a small grid: one row per site, index columns then value.
pub fn write_field_csv(path: &Path, field: &FieldGrid) -> Result<()> {
    if field.values.len() > 1_000_000 {
        return Err(Error::Size("grid too large for CSV; use the binary format".into()));
    }
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    writeln!(w, "# fracfield field-grid v1")?;
    let header: Vec<String> = (0..field.d).map(|a| format!("i{a}")).collect();
    writeln!(w, "{},value", header.join(","))?;
    let shape = field.shape();
    let mut rows: Vec<String> = Vec::with_capacity(field.values.len());
    for_each_index(&shape, |flat, idx| {
        let cells: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        rows.push(format!("{},{}", cells.join(","), field.values[flat]));
    });
    for row in rows {
        writeln!(w, "{row}")?;
    }
    w.flush()?;
    Ok(())
}
