//! Text serialization of fingerprint collections: one header line recording
//! radius and width, then one hex string per fingerprint.

use crate::error::MetricsError;
use crate::fingerprint::Fingerprint;

/// Header line for a fingerprint file.
pub fn header_line(radius: usize, width: usize) -> String {
    format!("# fingerprint radius={radius} width={width}")
}

pub fn to_text(fps: &[Fingerprint]) -> Result<String, MetricsError> {
    let first = fps.first().ok_or(MetricsError::EmptySet("fingerprint collection"))?;
    let mut out = header_line(first.radius(), first.width());
    out.push('\n');
    for fp in fps {
        if fp.radius() != first.radius() || fp.width() != first.width() {
            return Err(MetricsError::FingerprintMismatch {
                width_a: first.width(),
                width_b: fp.width(),
                radius_a: first.radius(),
                radius_b: fp.radius(),
            });
        }
        out.push_str(&fp.to_hex());
        out.push('\n');
    }
    Ok(out)
}

pub fn from_text(text: &str) -> Result<Vec<Fingerprint>, MetricsError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| MetricsError::BadHeader("empty file".into()))?;
    let (radius, width) = parse_header(header)?;
    lines
        .filter(|l| !l.starts_with('#'))
        .map(|l| Fingerprint::from_hex(l.trim(), radius, width))
        .collect()
}

fn parse_header(line: &str) -> Result<(usize, usize), MetricsError> {
    if !line.starts_with('#') || !line.contains("fingerprint") {
        return Err(MetricsError::BadHeader(format!("not a fingerprint header: {line}")));
    }
    let mut radius = None;
    let mut width = None;
    for tok in line.split_whitespace() {
        if let Some(v) = tok.strip_prefix("radius=") {
            radius = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("width=") {
            width = v.parse().ok();
        }
    }
    match (radius, width) {
        (Some(r), Some(w)) => Ok((r, w)),
        _ => Err(MetricsError::BadHeader(format!("missing radius/width in: {line}"))),
    }
}
