use std::fmt;
use std::io::{self, Write};

use serde_json::{Map, Number, Value};

pub fn put(args: fmt::Arguments<'_>) {
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_fmt(args).and_then(|_| stdout.write_all(b"\n")) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

/// Round to 12 significant digits so repeated runs print identical bytes.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("float round trip");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds every non-integer number in `v`.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN));
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, round_floats(v)))
                .collect::<Map<_, _>>(),
        ),
        other => other,
    }
}

pub fn document(m: u32, kappa: u32, tolerance: f64, results: Value) -> String {
    let doc = serde_json::json!({
        "m": m,
        "kappa": kappa,
        "tolerance": tolerance,
        "results": results,
    });
    serde_json::to_string_pretty(&round_floats(doc)).expect("json values serialize")
}

/// Fixed-width `(re, im)` cell for text tables.
pub fn complex_cell(re: f64, im: f64) -> String {
    format!(
        "({:>9.6}, {:>9.6})",
        round_sig(re) + 0.0,
        round_sig(im) + 0.0
    )
}

pub fn text_matrix(
    rows: &[String],
    cols: &[String],
    cell: impl Fn(usize, usize) -> String,
) -> String {
    let mut width = rows.iter().map(String::len).max().unwrap_or(0);
    let cells: Vec<Vec<String>> = (0..rows.len())
        .map(|r| (0..cols.len()).map(|c| cell(r, c)).collect())
        .collect();
    let col_width = cells
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .chain(cols.iter().map(|s| s.chars().count()))
        .max()
        .unwrap_or(0);
    width = width.max(1);
    let mut out = format!("{:width$}", "");
    for c in cols {
        out.push_str(&format!("  {c:>col_width$}"));
    }
    out.push('\n');
    for (r, row) in rows.iter().enumerate() {
        out.push_str(&format!("{row:width$}"));
        for c in &cells[r] {
            out.push_str(&format!("  {c:>col_width$}"));
        }
        out.push('\n');
    }
    out
}
