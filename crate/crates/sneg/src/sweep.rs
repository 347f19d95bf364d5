//! Parameter sweeps over the example families, emitted as deterministic CSV.

use serde::{Deserialize, Serialize};

use crate::measures::{measure_report, MeasureError, MeasureReport};
use crate::qstate::{Family, FamilyPoint, StateError};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter_value: f64,
    pub negativity: f64,
    pub structured_negativity: f64,
    pub c_lb: f64,
    pub q_count: usize,
    pub lambda_min_pt: f64,
    pub lambda_min_spa: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub family: String,
    pub parameter_name: String,
    pub rows: Vec<SweepRow>,
}

/// Eq.-30 final bound, checked on every emitted row.
pub fn row_satisfies_result1(d: usize, row: &SweepRow) -> bool {
    let df = d as f64;
    let mut ok = row.negativity <= 2.0 * (1.0 - 1.0 / df) * row.structured_negativity + 1e-9;
    if row.q_count >= 1 {
        let bound = 2.0 * row.q_count as f64 / (df * (df - 1.0)) * row.structured_negativity;
        ok = ok && row.negativity <= bound + 1e-9;
    }
    ok
}

fn row_from_report(parameter_value: f64, r: &MeasureReport) -> SweepRow {
    SweepRow {
        parameter_value,
        negativity: r.negativity,
        structured_negativity: r.structured_negativity,
        c_lb: r.c_lb,
        q_count: r.q_count,
        lambda_min_pt: r.lambda_min_pt,
        lambda_min_spa: r.lambda_min_spa,
    }
}

/// Evenly spaced closed-interval sweep; endpoints hit the closed-form anchors.
pub fn run_sweep(
    family: Family,
    start: f64,
    stop: f64,
    steps: usize,
) -> Result<SweepResult, MeasureError> {
    assert!(steps >= 2, "a sweep needs at least 2 points");
    let (lo, hi) = family.parameter_range();
    for endpoint in [start, stop] {
        if endpoint < lo - 1e-12 || endpoint > hi + 1e-12 {
            return Err(MeasureError::State(StateError::ParameterOutOfRange {
                name: family.parameter_name(),
                value: endpoint,
                min: lo,
                max: hi,
            }));
        }
    }
    if stop <= start {
        return Err(MeasureError::State(StateError::ParameterOutOfRange {
            name: family.parameter_name(),
            value: stop,
            min: start,
            max: hi,
        }));
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let p = start + (stop - start) * i as f64 / (steps - 1) as f64;
        // keep the endpoint exactly inside the legal interval
        let p = p.clamp(lo, hi);
        let state = FamilyPoint { family, parameter: p }.construct()?;
        let report = measure_report(&state)?;
        rows.push(row_from_report(p, &report));
    }
    Ok(SweepResult {
        family: family.name().to_string(),
        parameter_name: family.parameter_name().to_string(),
        rows,
    })
}

/// 12 significant digits, locale independent.
fn fmt12(x: f64) -> String {
    format!("{:.11e}", x)
}

pub const CSV_HEADER: &str =
    "param,negativity,structured_negativity,c_lb,q,lambda_min_pt,lambda_min_spa";

pub fn to_csv(result: &SweepResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt12(row.parameter_value),
            fmt12(row.negativity),
            fmt12(row.structured_negativity),
            fmt12(row.c_lb),
            row.q_count,
            fmt12(row.lambda_min_pt),
            fmt12(row.lambda_min_spa),
        ));
    }
    out
}
