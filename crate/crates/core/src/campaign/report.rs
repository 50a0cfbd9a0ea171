//! JSON and CSV emission for hunt reports and verification records.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::hunt::HuntReport;
use super::verify::VerifyRecord;
use crate::error::{Result, ZrError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = ZrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(ZrError::validation(format!("format must be json or csv, got {s:?}"))),
        }
    }
}

pub enum Report<'a> {
    Hunt(&'a [HuntReport]),
    Verify(&'a [VerifyRecord]),
}

pub const HUNT_CSV_HEADER: &str = "N,sigma,alpha,beta,argmax_ell,max_modulus,bound,ratio";

/// Render a report. Timing is dropped unless `with_timing`, so identical
/// inputs give identical bytes.
pub fn render_report(report: &Report, format: ReportFormat, with_timing: bool) -> Result<String> {
    let mut out = String::new();
    match (report, format) {
        (Report::Hunt(rs), ReportFormat::Json) => {
            let rs: Vec<HuntReport> = rs
                .iter()
                .cloned()
                .map(|mut r| {
                    if !with_timing {
                        r.wall_time_secs = None;
                    }
                    r
                })
                .collect();
            out = serde_json::to_string_pretty(&rs)?;
            out.push('\n');
        }
        (Report::Hunt(rs), ReportFormat::Csv) => {
            out.push_str(HUNT_CSV_HEADER);
            out.push('\n');
            for r in rs.iter() {
                let p = &r.config.prog;
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.config.n,
                    p.sigma(),
                    p.alpha(),
                    p.beta(),
                    r.argmax_ell,
                    r.max_modulus,
                    r.bound.value,
                    r.ratio
                ));
            }
        }
        (Report::Verify(rs), ReportFormat::Json) => {
            for r in rs.iter() {
                out.push_str(&serde_json::to_string(r)?);
                out.push('\n');
            }
        }
        (Report::Verify(rs), ReportFormat::Csv) => {
            out.push_str("check_id,lhs,rhs,gap_or_ratio,pass\n");
            for r in rs.iter() {
                out.push_str(&format!("{},{},{},{},{}\n", r.check_id, r.lhs, r.rhs, r.gap_or_ratio, r.pass));
            }
        }
    }
    Ok(out)
}

pub fn emit_report(report: &Report, format: ReportFormat, path: &Path, with_timing: bool) -> Result<()> {
    let text = render_report(report, format, with_timing)?;
    fs::write(path, text).map_err(|source| ZrError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parse the JSON written by `emit_report` for hunts.
pub fn read_hunt_reports(text: &str) -> Result<Vec<HuntReport>> {
    Ok(serde_json::from_str(text)?)
}
