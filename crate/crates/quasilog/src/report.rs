//! Line-oriented key/value reports: the stable structured output format of
//! the library and CLI, including certificate serialization.

use crate::logder::{FreenessCertificate, MultiArrangement};
use crate::quasi::GradedSubspace;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

/// Ordered key/value lines; values use canonical polynomial text, so a
/// report is byte-stable for a fixed configuration.
#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            writeln!(out, "{}: {}", k, v).unwrap();
        }
        out
    }
}

/// Hash of the canonical text of an arrangement (forms with multiplicities),
/// independent of its display name.
pub fn arrangement_hash(arr: &MultiArrangement) -> String {
    let mut h = Sha256::new();
    for (f, m) in arr.forms.iter().zip(&arr.mult) {
        h.update(f.to_text().as_bytes());
        h.update(b"^");
        h.update(m.to_string().as_bytes());
        h.update(b";");
    }
    let digest = h.finalize();
    let mut s = String::new();
    for b in digest.iter().take(8) {
        write!(s, "{:02x}", b).unwrap();
    }
    s
}

/// Serialize a freeness certificate.
pub fn certificate_report(cert: &FreenessCertificate) -> String {
    let mut r = Report::new();
    r.push("arrangement", &cert.arrangement.name);
    r.push("arrangement_hash", arrangement_hash(&cert.arrangement));
    r.push("hyperplanes", cert.arrangement.forms.len());
    r.push(
        "multiplicities",
        cert.arrangement
            .mult
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    r.push(
        "exponents",
        cert.exponents
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    r.push(
        "determinant_degree",
        cert.determinant
            .degree()
            .map(|d| d.to_string())
            .unwrap_or_else(|| "-inf".into()),
    );
    match &cert.scalar {
        Some(c) => r.push("scalar", c.to_text()),
        None => r.push("scalar", "none"),
    }
    if let Some(res) = &cert.residual {
        r.push("residual", res.to_text());
    }
    if let Some(f) = &cert.failure {
        r.push("failure", f);
    }
    for (i, b) in cert.basis.iter().enumerate() {
        r.push(&format!("basis_{}", i + 1), b.to_text());
    }
    r.push("verdict", if cert.verdict { "PASS" } else { "FAIL" });
    r.render()
}

/// Serialize a graded or filtered space: per-degree dimensions and bases.
pub fn space_report(title: &str, gs: &GradedSubspace) -> String {
    let mut r = Report::new();
    r.push("space", title);
    r.push("kind", if gs.filtered { "filtered" } else { "graded" });
    for d in 0..=gs.cutoff() {
        r.push(&format!("dim_{}", d), gs.dim_at(d));
    }
    for (d, elems) in gs.by_degree.iter().enumerate() {
        for p in elems {
            r.push(&format!("basis_{}", d), p.to_text());
        }
    }
    r.render()
}
