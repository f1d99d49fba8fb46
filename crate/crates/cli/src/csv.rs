use std::fmt::Write as _;
use std::path::Path;

use fhca::analysis::ResultTable;

use crate::error::{CliError, CliResult};

pub const CSV_HEADER: &str = "x_db_or_alpha,estimate,stderr,trials";

/// Plain decimal rendering of `x` rounded to `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mantissa.starts_with('-');
    let d: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), d)
    } else {
        let int_len = exp as usize + 1;
        if int_len >= d.len() {
            format!("{}{}", d, "0".repeat(int_len - d.len()))
        } else {
            format!("{}.{}", &d[..int_len], &d[int_len..])
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// CSV text of a table: header, one line per row in x order, trailing newline.
pub fn table_to_csv(table: &ResultTable) -> String {
    let mut out = String::with_capacity(48 * (table.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in table.rows() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_significant(r.x, 12),
            format_significant(r.estimate, 12),
            format_significant(r.stderr, 12),
            r.trials
        );
    }
    out
}

pub fn emit_csv(table: &ResultTable, path: &Path) -> CliResult<()> {
    std::fs::write(path, table_to_csv(table)).map_err(|e| CliError::io(path, e))
}
