//! File formats, JSON code specs and the parallel simulation driver behind the `qcgr` binary.

pub mod alist;
pub mod bitio;
pub mod parallel;
pub mod spec;

use std::fmt;

/// Input that was read fine but fails a check; the binary exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError(pub String);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationError {}

/// Parses `start:step:stop` (inclusive) or a comma list.
pub fn parse_snr_list(text: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let [start, step, stop] = [parts[0], parts[1], parts[2]].map(|t| t.trim().parse::<f64>());
        let (start, step, stop) = (start?, step?, stop?);
        anyhow::ensure!(step > 0.0 && stop >= start, "SNR range needs step > 0 and stop >= start");
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        // rounded to avoid 2.5000000000000004 in the CSV
        return Ok((0..count).map(|i| ((start + step * i as f64) * 1e9).round() / 1e9).collect());
    }
    Ok(text.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>()?)
}

/// Accepts plain integers and float notation like `1e6`.
pub fn parse_count(text: &str) -> anyhow::Result<u64> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = text.parse()?;
    anyhow::ensure!(f >= 0.0 && f.fract() == 0.0 && f < 1.8e19, "{text} is not a frame count");
    Ok(f as u64)
}
