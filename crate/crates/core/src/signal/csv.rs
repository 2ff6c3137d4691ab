//! Plain comma-separated tables: header row, LF endings, 12 significant digits.

use std::io::Write;
use std::path::Path;

use super::write_atomic;
use crate::{Error, Result};

/// A named column of values. NaN marks an absent cell and renders empty.
pub type Column<'a> = (&'a str, &'a [f64]);

const SIGNIFICANT_DIGITS: usize = 12;

/// Renders `v` in positional decimal notation rounded to 12 significant
/// digits, without trailing zeros or exponent.
pub fn format_decimal(v: f64) -> String {
    if v.is_nan() {
        return String::new();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');

    let mut out = String::with_capacity(24);
    if v < 0.0 {
        out.push('-');
    }
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            out.push_str(digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(digits);
    }
    out
}

fn check_columns(columns: &[Column<'_>]) -> Result<usize> {
    let rows = columns.first().map_or(0, |c| c.1.len());
    for (name, values) in columns {
        if values.len() != rows {
            return Err(Error::RaggedColumns {
                name: name.to_string(),
                len: values.len(),
                expected: rows,
            });
        }
    }
    Ok(rows)
}

/// Renders the table to a string; see [`write_csv`].
pub fn render_csv(columns: &[Column<'_>]) -> Result<String> {
    let rows = check_columns(columns)?;
    let mut out = String::new();
    let header: Vec<&str> = columns.iter().map(|c| c.0).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..rows {
        for (k, (_, values)) in columns.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&format_decimal(values[i]));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_csv(columns: &[Column<'_>], path: impl AsRef<Path>) -> Result<()> {
    let text = render_csv(columns)?;
    write_atomic(path.as_ref(), |w| w.write_all(text.as_bytes()))
}

/// Writes pre-rendered rows under `header`, for tables that mix text cells
/// with numbers.
pub fn write_csv_rows(header: &[&str], rows: &[Vec<String>], path: impl AsRef<Path>) -> Result<()> {
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::RaggedColumns {
                name: row.first().cloned().unwrap_or_default(),
                len: row.len(),
                expected: header.len(),
            });
        }
    }
    write_atomic(path.as_ref(), |w| {
        writeln!(w, "{}", header.join(","))?;
        for row in rows {
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    })
}
