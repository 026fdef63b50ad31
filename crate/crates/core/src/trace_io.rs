//! JSON and CSV serialization of run traces.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::solver::RunTrace;

pub const CSV_HEADER: &str = "k,x,y,f,grad_norm,lambda,dist_to_S,drift";

pub fn to_json(trace: &RunTrace) -> serde_json::Result<String> {
    serde_json::to_string_pretty(trace)
}

pub fn from_json(s: &str) -> serde_json::Result<RunTrace> {
    serde_json::from_str(s)
}

/// One row per record; floats use the shortest round-trip representation,
/// an absent distance is an empty field.
pub fn to_csv(trace: &RunTrace) -> String {
    let mut out = String::with_capacity(64 * (trace.records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &trace.records {
        let dist = r.dist_to_s.map(|d| d.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.k,
            r.point.x,
            r.point.y,
            r.f_value,
            r.grad_norm,
            r.lambda_k,
            dist,
            u8::from(r.drift_event)
        );
    }
    out
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}
