//! Result rendering: CSV (the default) and a JSON mirror of the same rows.
//!
//! Floats print through Rust's `{:e}` — the shortest lowercase e-notation
//! string that parses back to the same bits — so identical runs produce
//! byte-identical files. Non-finite values print as `inf`/`-inf` in CSV and
//! become `null` in JSON (serde_json has no representation for them).

use mzparity::{CheckOutcome, JointDistribution, SweepTable, TwoModeState};
use serde_json::{json, Value};

/// Output encoding selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(format!("unknown format '{s}'; expected 'csv' or 'json'")),
    }
}

fn f(x: f64) -> String {
    format!("{x:e}")
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON trees serialize");
    s.push('\n');
    s
}

/// Amplitude dump: `# norm=… truncation_loss=…`, then one row per basis
/// state in lexicographic (n_a, n_b) order.
pub fn render_state(state: &TwoModeState, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = format!(
                "# norm={} truncation_loss={}\nn_a,n_b,re,im,probability\n",
                f(state.norm()),
                f(state.truncation_loss()),
            );
            for (&(n_a, n_b), amp) in state.iter() {
                out.push_str(&format!(
                    "{n_a},{n_b},{},{},{}\n",
                    f(amp.re),
                    f(amp.im),
                    f(amp.norm_sqr())
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = state
                .iter()
                .map(|(&(n_a, n_b), amp)| {
                    json!({
                        "n_a": n_a,
                        "n_b": n_b,
                        "re": amp.re,
                        "im": amp.im,
                        "probability": amp.norm_sqr(),
                    })
                })
                .collect();
            pretty(json!({
                "norm": state.norm(),
                "truncation_loss": state.truncation_loss(),
                "rows": rows,
            }))
        }
    }
}

/// Phase sweep: columns exactly `phi,mean,variance,snr`. The SNR may be
/// `inf` where the noise vanishes.
pub fn render_signal(table: &SweepTable, format: Format) -> String {
    let observable = table.meta.observable;
    match format {
        Format::Csv => {
            let mut out = String::from("phi,mean,variance,snr\n");
            for row in &table.rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    f(row.x),
                    f(row.mean),
                    f(row.variance),
                    f(row.snr(observable))
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "phi": row.x,
                        "mean": row.mean,
                        "variance": row.variance,
                        "snr": row.snr(observable),
                    })
                })
                .collect();
            pretty(json!({
                "family": table.meta.family,
                "observable": observable.label(),
                "rows": rows,
            }))
        }
    }
}

/// Uncertainty table: columns exactly `two_n,delta_phi,sql,hl,diverged`,
/// abscissa 2N = total photons. `delta_phi` is `inf` on diverged rows.
pub fn render_uncertainty(table: &SweepTable, format: Format) -> String {
    let report = |row: &mzparity::SweepRow| {
        row.uncertainty
            .expect("uncertainty sweeps carry a report per row")
    };
    match format {
        Format::Csv => {
            let mut out = String::from("two_n,delta_phi,sql,hl,diverged\n");
            for row in &table.rows {
                let r = report(row);
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.x.round() as u64,
                    f(r.delta_phi),
                    f(r.sql),
                    f(r.hl),
                    r.diverged
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let r = report(row);
                    json!({
                        "two_n": row.x.round() as u64,
                        "delta_phi": r.delta_phi,
                        "sql": r.sql,
                        "hl": r.hl,
                        "diverged": r.diverged,
                    })
                })
                .collect();
            let phi = table.rows.first().map(|row| report(row).phi);
            pretty(json!({
                "family": table.meta.family,
                "observable": table.meta.observable.label(),
                "phi": phi,
                "rows": rows,
            }))
        }
    }
}

/// Joint photon-number distribution: columns `n_a,n_b,probability`.
pub fn render_joint(dist: &JointDistribution, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("n_a,n_b,probability\n");
            for (&(n_a, n_b), &p) in dist.iter() {
                out.push_str(&format!("{n_a},{n_b},{}\n", f(p)));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = dist
                .iter()
                .map(|(&(n_a, n_b), &p)| json!({"n_a": n_a, "n_b": n_b, "probability": p}))
                .collect();
            pretty(json!({ "rows": rows }))
        }
    }
}

/// Verification report: one line per check plus a summary tally. `csv`
/// renders the plain-text report; `json` the structured mirror.
pub fn render_verify(outcomes: &[CheckOutcome], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for o in outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{status} {:<38} max_error={:<12} tolerance={}",
                    o.name,
                    f(o.max_error),
                    f(o.tolerance)
                ));
                if !o.detail.is_empty() {
                    out.push_str(&format!(" | {}", o.detail));
                }
                out.push('\n');
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            out.push_str(&format!("{passed}/{} checks passed\n", outcomes.len()));
            out
        }
        Format::Json => {
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "max_error": o.max_error,
                        "tolerance": o.tolerance,
                        "passed": o.passed,
                        "detail": o.detail,
                    })
                })
                .collect();
            pretty(json!({
                "all_passed": outcomes.iter().all(|o| o.passed),
                "checks": rows,
            }))
        }
    }
}
