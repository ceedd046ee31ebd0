//! CSV formats: functions as `x,value`, spectra as `r,re,im`.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::function::{Spectrum, ZpFunction};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ValueRow {
    x: u64,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRow {
    r: u64,
    re: f64,
    im: f64,
}

pub fn write_function_csv<W: Write>(f: &ZpFunction, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (x, &value) in f.values().iter().enumerate() {
        w.serialize(ValueRow { x: x as u64, value })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `x,value` rows; rows must list x = 0..p-1 in ascending order.
pub fn read_function_csv<R: Read>(p: u64, input: R) -> Result<ZpFunction> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut values = Vec::with_capacity(p as usize);
    for (i, row) in rdr.deserialize::<ValueRow>().enumerate() {
        let row = row?;
        if row.x != i as u64 {
            return Err(Error::Parse(format!(
                "row {i}: expected x = {i}, found {}",
                row.x
            )));
        }
        values.push(row.value);
    }
    ZpFunction::new(p, values)
}

pub fn write_spectrum_csv<W: Write>(s: &Spectrum, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (r, c) in s.coeffs().iter().enumerate() {
        w.serialize(SpectrumRow {
            r: r as u64,
            re: c.re,
            im: c.im,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_spectrum_csv<R: Read>(p: u64, input: R) -> Result<Spectrum> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut coeffs = Vec::with_capacity(p as usize);
    for (i, row) in rdr.deserialize::<SpectrumRow>().enumerate() {
        let row = row?;
        if row.r != i as u64 {
            return Err(Error::Parse(format!(
                "row {i}: expected r = {i}, found {}",
                row.r
            )));
        }
        coeffs.push(Complex64::new(row.re, row.im));
    }
    Spectrum::new(p, coeffs)
}

/// Whitespace/comma separated residues, reduced mod p, sorted, deduplicated.
pub fn parse_set(p: u64, text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() {
            continue;
        }
        let v: i64 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue `{tok}`")))?;
        out.push(v.rem_euclid(p as i64) as u64);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn format_set(set: &[u64]) -> String {
    let mut s = String::new();
    for x in set {
        s.push_str(&x.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zp::forward_transform;

    #[test]
    fn function_csv_round_trip() {
        let f = ZpFunction::new(5, vec![0.1, -2.0, 3.5e-12, 4.0, 1.0 / 3.0]).unwrap();
        let mut buf = Vec::new();
        write_function_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,value\n0,0.1\n"));
        assert_eq!(read_function_csv(5, buf.as_slice()).unwrap(), f);

        let s = forward_transform(&f);
        let mut buf = Vec::new();
        write_spectrum_csv(&s, &mut buf).unwrap();
        assert!(String::from_utf8(buf.clone())
            .unwrap()
            .starts_with("r,re,im\n"));
        assert_eq!(read_spectrum_csv(5, buf.as_slice()).unwrap(), s);
    }

    #[test]
    fn out_of_order_rows_rejected() {
        let text = "x,value\n1,0.0\n0,0.0\n";
        assert!(matches!(
            read_function_csv(2, text.as_bytes()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn set_parsing() {
        assert_eq!(parse_set(7, "3 1, 8\n-1").unwrap(), vec![1, 3, 6]);
        assert!(parse_set(7, "a").is_err());
    }
}
