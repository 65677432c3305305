use super::SuiteOutcome;
use crate::error::{Error, Result};
use serde_json::json;

pub const CSV_COLUMNS: [&str; 12] = ["suite", "claim", "scale_name", "scale", "n", "q", "p", "s", "norm", "rhs", "quad_error", "tail_bound"];

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Per-sample rows, preceded by `# key=value` header comments.
pub fn render_csv(outcome: &SuiteOutcome, header: &[(String, String)]) -> Result<String> {
    let mut out = String::new();
    for (k, v) in header {
        out.push_str(&format!("# {k}={v}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in &outcome.reports {
        for s in &r.samples {
            w.write_record([
                outcome.suite.name().to_string(),
                r.claim.clone(),
                r.scale_name.clone(),
                real(s.scale),
                s.n.to_string(),
                real(s.q),
                real(s.p),
                real(s.s),
                real(s.value),
                real(s.rhs),
                real(s.quad_error),
                real(s.tail_bound),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
    out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv: {e}")))?);
    Ok(out)
}

/// One JSON object per claim with verdict, slope, constant and margins.
pub fn render_summary(outcome: &SuiteOutcome, header: &[(String, String)]) -> String {
    let meta: serde_json::Map<String, serde_json::Value> = header.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let claims: Vec<serde_json::Value> = outcome
        .reports
        .iter()
        .map(|r| {
            json!({
                "claim": r.claim,
                "description": r.description,
                "verdict": r.verdict,
                "informational": r.informational,
                "criterion": r.criterion,
                "slope": r.slope,
                "predicted": r.predicted(),
                "margin": r.margin(),
                "constant": r.constant,
                "samples": r.samples.len(),
                "note": r.note,
            })
        })
        .collect();
    let v = json!({
        "suite": outcome.suite,
        "meta": meta,
        "violated": outcome.violated().count(),
        "claims": claims,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}
