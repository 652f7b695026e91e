//! Report files: the full report as JSON, plus a one-row CSV summary beside it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::lab::{LabError, LabResult, Suite, VerificationReport};

const SUMMARY_HEADER: [&str; 5] = ["suite", "n", "checked", "violations", "pass"];
const COUNT_GOOD_HEADER: [&str; 5] = ["n", "total", "good", "motzkin", "match"];

fn io_error(path: &Path, source: std::io::Error) -> LabError {
    LabError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Pretty JSON with a trailing newline. Field order is fixed by the struct and the
/// evidence map is sorted, so equal reports give identical bytes.
pub fn to_json(r: &VerificationReport) -> LabResult<String> {
    let mut s = serde_json::to_string_pretty(r)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(s: &str) -> LabResult<VerificationReport> {
    Ok(serde_json::from_str(s)?)
}

/// Writes `r` as JSON to `path` and its CSV summary next to it (same name, `.csv`).
/// Returns the CSV path.
pub fn write_report(r: &VerificationReport, path: &Path) -> LabResult<PathBuf> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    fs::write(path, to_json(r)?).map_err(|e| io_error(path, e))?;
    let csv_path = path.with_extension("csv");
    let file = fs::File::create(&csv_path).map_err(|e| io_error(&csv_path, e))?;
    write_csv(std::slice::from_ref(r), file)?;
    Ok(csv_path)
}

pub fn read_report(path: &Path) -> LabResult<VerificationReport> {
    from_json(&fs::read_to_string(path).map_err(|e| io_error(path, e))?)
}

/// CSV summary with one row per report.
///
/// Reports of the `count-good` suite use the columns `n,total,good,motzkin,match`;
/// anything else uses `suite,n,checked,violations,pass`. No reports gives just the
/// summary header.
pub fn write_csv<W: Write>(reports: &[VerificationReport], out: W) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let count_good =
        !reports.is_empty() && reports.iter().all(|r| r.suite == Suite::CountGood.name());
    if count_good {
        w.write_record(COUNT_GOOD_HEADER)?;
        for r in reports {
            let field = |key: &str| match r.evidence.get(key) {
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
                None => String::new(),
            };
            w.write_record([
                r.n.to_string(),
                field("total"),
                field("good"),
                field("motzkin"),
                field("motzkin_match"),
            ])?;
        }
    } else {
        w.write_record(SUMMARY_HEADER)?;
        for r in reports {
            w.write_record([
                r.suite.clone(),
                r.n.to_string(),
                r.checked.to_string(),
                r.violation_count.to_string(),
                r.pass.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| io_error(Path::new("<csv>"), e))?;
    Ok(())
}

pub fn write_csv_file(reports: &[VerificationReport], path: &Path) -> LabResult<()> {
    let file = fs::File::create(path).map_err(|e| io_error(path, e))?;
    write_csv(reports, file)
}
