//! Grid CSV with header `x,u,du,v,logE,logF`, 17 significant digits.

use std::io::{Read, Write};

use involis::painleve2::PiiGrid;
use involis::Error;

use crate::fmt::sig;

pub const HEADER: [&str; 6] = ["x", "u", "du", "v", "logE", "logF"];

pub fn write_grid<W: Write>(grid: &PiiGrid, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for i in 0..grid.x_nodes.len() {
        let row = [
            grid.x_nodes[i],
            grid.u_vals[i],
            grid.du_vals[i],
            grid.v_vals[i],
            grid.log_e_vals[i],
            grid.log_f_vals[i],
        ];
        w.write_record(row.iter().map(|v| sig(*v, 17)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid<R: Read>(input: R, tolerance: f64) -> Result<PiiGrid, Error> {
    let bad = |e: String| Error::InvalidConfig(format!("grid csv: {e}"));
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(|e| bad(e.to_string()))?;
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(bad(format!("expected header {}", HEADER.join(","))));
    }
    let mut cols: [Vec<f64>; 6] = Default::default();
    for rec in r.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if rec.len() != 6 {
            return Err(bad("row with wrong field count".into()));
        }
        for (c, field) in cols.iter_mut().zip(rec.iter()) {
            c.push(field.trim().parse::<f64>().map_err(|e| bad(format!("{field:?}: {e}")))?);
        }
    }
    let [x, u, du, v, le, lf] = cols;
    PiiGrid::from_columns(x, u, du, v, le, lf, tolerance)
}
