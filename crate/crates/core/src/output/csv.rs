use std::fmt::Write as _;

use super::LogBase;
use crate::monogamy::{Engine, MonogamyRecord};

pub const CSV_HEADER: &str = "alpha_sq,beta_sq,gamma_sq,e_ab,e_ac,e_abc,delta";

/// Run metadata appended as `#` comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvMeta {
    pub engine: &'static str,
    pub resolution: usize,
    pub seed: u64,
    pub log_base: LogBase,
}

/// 17 significant digits: enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    // `-0.0 + 0.0` is `+0.0`
    format!("{:.16e}", x + 0.0)
}

/// Renders records (already in the presentation base) as CSV.
///
/// With `numeric` present (the `both` engine), a `delta_numeric` column is
/// appended and the largest absolute difference between the two δ columns is
/// reported in a trailing comment line.
pub fn write_csv(
    records: &[MonogamyRecord],
    numeric: Option<&[MonogamyRecord]>,
    meta: &CsvMeta,
) -> String {
    let mut out = String::with_capacity(records.len() * 180);
    out.push_str(CSV_HEADER);
    if numeric.is_some() {
        out.push_str(",delta_numeric");
    }
    out.push('\n');
    let mut max_diff = 0.0_f64;
    for (idx, r) in records.iter().enumerate() {
        let fields = [
            r.alpha_sq, r.beta_sq, r.gamma_sq, r.e_ab, r.e_ac, r.e_abc, r.delta,
        ];
        let line: Vec<String> = fields.iter().map(|&x| format_float(x)).collect();
        out.push_str(&line.join(","));
        if let Some(num) = numeric {
            let d = num[idx].delta;
            max_diff = max_diff.max((d - r.delta).abs());
            out.push(',');
            out.push_str(&format_float(d));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "# engine={}", meta.engine);
    let _ = writeln!(out, "# resolution={}", meta.resolution);
    let _ = writeln!(out, "# seed={}", meta.seed);
    let _ = writeln!(out, "# log_base={}", meta.log_base);
    if numeric.is_some() {
        let _ = writeln!(out, "# max_abs_diff={}", format_float(max_diff));
    }
    out
}

pub fn engine_label(engine: Engine) -> &'static str {
    match engine {
        Engine::ClosedForm => "closed",
        Engine::RestrictedNumeric => "numeric",
    }
}
