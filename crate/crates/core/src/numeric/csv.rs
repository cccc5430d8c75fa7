use std::fmt::Display;
use std::io::Write;

use super::SampleTable;
use crate::error::Result;

/// Writes `columns…,value,pole` followed by one row per sample. Numbers use
/// the shortest decimal form that parses back to the same float.
pub fn emit_csv<F: Display, W: Write>(table: &SampleTable<F>, mut out: W) -> Result<()> {
    let mut header = table.columns.join(",");
    header.push_str(",value,pole");
    writeln!(out, "{header}")?;
    for row in &table.rows {
        for c in &row.coords {
            write!(out, "{c},")?;
        }
        writeln!(out, "{},{}", row.value, u8::from(row.pole))?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{sample, Axis, GridSpec};
    use crate::ratfunc::phi_solution;

    #[test]
    fn line_and_surface_shapes() {
        let u = phi_solution(2, 2).unwrap();
        let grid = GridSpec::line(Axis::new("x", 1.0, 2.0, 2).unwrap(), vec![("y".into(), 0.0)]);
        let mut buf = Vec::new();
        emit_csv(&sample(&u, &grid).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x,y,value,pole\n1,0,2,0\n1.5,0,1.3333333333333333,0\n2,0,1,0\n");

        let grid =
            GridSpec::surface(Axis::new("x", -1.0, 1.0, 3).unwrap(), Axis::new("y", 0.0, 1.0, 4).unwrap(), vec![]);
        let mut buf = Vec::new();
        emit_csv(&sample(&u, &grid).unwrap(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1 + 4 * 5);
    }

    #[test]
    fn values_round_trip() {
        let u = phi_solution(9, 3).unwrap();
        let grid = GridSpec::line(Axis::new("x", -5.0, 5.0, 37).unwrap(), vec![("y".into(), 0.7)]);
        let table = sample(&u, &grid).unwrap();
        let mut buf = Vec::new();
        emit_csv(&table, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for (line, row) in text.lines().skip(1).zip(&table.rows) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[0].parse::<f64>().unwrap(), row.coords[0]);
            assert_eq!(fields[2].parse::<f64>().unwrap(), row.value);
            assert_eq!(fields[3], if row.pole { "1" } else { "0" });
        }
    }
}
