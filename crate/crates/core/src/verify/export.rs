use std::path::Path;
use std::str::FromStr;

use super::VerificationReport;
use crate::catalog;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::Parse(format!("unknown format `{s}` (json, csv, markdown)"))),
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

fn json(reports: &[VerificationReport]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(reports).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_text(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Io { path: "<csv>".into(), message: e.to_string() };
    w.write_record(["id", "params", "digits", "terms", "error", "certified", "pass"]).map_err(err)?;
    for r in reports {
        w.write_record([
            r.id.clone(),
            r.params.to_string(),
            r.digits.to_string(),
            r.terms.to_string(),
            r.error_display(),
            r.certified.to_string(),
            r.pass.to_string(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io { path: "<csv>".into(), message: e.to_string() })?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn markdown(reports: &[VerificationReport]) -> String {
    let mut s = String::from("| id | params | digits | terms | error | certified | pass | provenance |\n");
    s.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in reports {
        let prov = catalog::entry(&r.id).map(|e| e.provenance).unwrap_or("");
        let params = if r.params.is_empty() { "-".to_string() } else { r.params.to_string() };
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.id,
            params,
            r.digits,
            r.terms,
            r.error_display(),
            if r.certified { "yes" } else { "no" },
            if r.pass { "pass" } else { "FAIL" },
            prov.replace('|', "\\|")
        ));
    }
    s
}

/// Renders reports in the given format.
pub fn export_string(reports: &[VerificationReport], format: Format) -> Result<String> {
    match format {
        Format::Json => json(reports),
        Format::Csv => csv_text(reports),
        Format::Markdown => Ok(markdown(reports)),
    }
}

/// Writes reports to `path`.
pub fn export(reports: &[VerificationReport], format: Format, path: &Path) -> Result<()> {
    let text = export_string(reports, format)?;
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Reads a JSON report file written by [`export`].
pub fn import_json(path: &Path) -> Result<Vec<VerificationReport>> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_err(path, e))
}
