//! CSV tables from JSON Lines result files.

use serde_json::Value;

use crate::cli::PlotKind;
use crate::error::{CliError, Result};
use crate::record::format_float;

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| CliError::Schema(format!("{what} is not a number")))
}

/// Header plus one row per point. Records of other experiments are skipped;
/// no matching record at all is a schema mismatch.
pub fn emit_plot_data(jsonl: &str, kind: PlotKind) -> Result<String> {
    let (experiment, header) = match kind {
        PlotKind::Longpath => ("longpath", "t,phi,theta,tau,min_eig_s"),
        PlotKind::Coindex => ("coindex", "elements,coindex"),
        PlotKind::Varthm => ("ma-varthm", "coeff,gap"),
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in jsonl.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let rec: Value = serde_json::from_str(line).map_err(|e| CliError::Schema(format!("line {}: {e}", i + 1)))?;
        if rec["experiment"].as_str() != Some(experiment) {
            continue;
        }
        match kind {
            PlotKind::Longpath => {
                let cols = ["t", "phi", "theta", "tau", "min_eig_s"]
                    .iter()
                    .map(|k| {
                        rec["series"][k]
                            .as_array()
                            .ok_or_else(|| CliError::Schema(format!("line {}: missing series {k}", i + 1)))?
                            .iter()
                            .map(|v| number(v, k))
                            .collect::<Result<Vec<f64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let len = cols[0].len();
                if cols.iter().any(|c| c.len() != len) {
                    return Err(CliError::Schema(format!("line {}: series lengths differ", i + 1)));
                }
                rows.extend((0..len).map(|j| cols.iter().map(|c| c[j]).collect()));
            }
            PlotKind::Coindex => {
                rows.push(vec![number(&rec["params"]["elements"], "elements")?, number(&rec["results"]["coindex"], "coindex")?]);
            }
            PlotKind::Varthm => {
                rows.push(vec![number(&rec["params"]["a"], "a")?, number(&rec["results"]["gap"], "gap")?]);
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Schema(format!("no {experiment} records found")));
    }
    let mut out = String::from(header);
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .map(|x| {
                // both columns of the coindex table are integers
                if kind == PlotKind::Coindex {
                    format!("{}", *x as i64)
                } else {
                    format_float(*x)
                }
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::ExperimentResult;

    #[test]
    fn coindex_table() {
        let mut a = ExperimentResult::new("coindex").param("elements", 64usize);
        a.result("coindex", 4usize);
        let mut b = ExperimentResult::new("coindex").param("elements", 128usize);
        b.result("coindex", 4usize);
        let other = ExperimentResult::new("nazarov");
        let text = [a, other, b].iter().map(|r| r.to_json_line()).collect::<Vec<_>>().join("\n");
        assert_eq!(emit_plot_data(&text, PlotKind::Coindex).unwrap(), "elements,coindex\n64,4\n128,4\n");
    }

    #[test]
    fn schema_mismatch() {
        let r = ExperimentResult::new("nazarov").to_json_line();
        assert!(matches!(emit_plot_data(&r, PlotKind::Varthm), Err(CliError::Schema(_))));
        assert!(matches!(emit_plot_data("{not json", PlotKind::Varthm), Err(CliError::Schema(_))));
        let mut lp = ExperimentResult::new("longpath");
        lp.series("t", vec![0.0, 1.0]);
        assert!(matches!(emit_plot_data(&lp.to_json_line(), PlotKind::Longpath), Err(CliError::Schema(_))));
    }
}
