//! Text formats.
//!
//! Points and lines files hold one record per line, two rationals separated
//! by whitespace; `#` starts a comment. A points record `x y` is the point
//! `(x, y)`; a lines record `a b` is the line `y + a·x + b = 0`. Bundles are
//! JSON documents carrying exact coefficient vectors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::counterexample::{CounterexampleBundle, VerificationReport, Verdict};
use crate::cyclotomic::{CycloElement, CyclotomicField};
use crate::error::{CounterexampleError, ParseError};
use crate::geometry::{NonVerticalLine, Point};
use crate::polygon::{working_order, PolygonConfig, RationalRotation};
use crate::rational::{format_rational, parse_rational};
use crate::{Rational, RationalLine, RationalPoint};

fn parse_pairs(text: &str) -> Result<Vec<(Rational, Rational)>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [x, y] => {
                let parse = |s: &str| {
                    parse_rational(s).map_err(|e| ParseError::Record {
                        line,
                        message: e.to_string(),
                    })
                };
                out.push((parse(x)?, parse(y)?));
            }
            other => {
                return Err(ParseError::Record {
                    line,
                    message: format!("expected 2 fields, found {}", other.len()),
                })
            }
        }
    }
    Ok(out)
}

pub fn parse_points(text: &str) -> Result<Vec<RationalPoint>, ParseError> {
    Ok(parse_pairs(text)?
        .into_iter()
        .map(|(x, y)| Point { x, y })
        .collect())
}

pub fn parse_lines(text: &str) -> Result<Vec<RationalLine>, ParseError> {
    Ok(parse_pairs(text)?
        .into_iter()
        .map(|(a, b)| NonVerticalLine { a, b })
        .collect())
}

pub fn format_points(points: &[RationalPoint]) -> String {
    points
        .iter()
        .map(|p| format!("{} {}\n", format_rational(&p.x), format_rational(&p.y)))
        .collect()
}

pub fn format_lines(lines: &[RationalLine]) -> String {
    lines
        .iter()
        .map(|l| format!("{} {}\n", format_rational(&l.a), format_rational(&l.b)))
        .collect()
}

/// Exact element as a list of power-basis coefficients in rational text form.
pub type CoeffVector = Vec<String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationDocument {
    pub c: String,
    pub s: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineDocument {
    pub a: CoeffVector,
    pub b: CoeffVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub pairwise_nonparallel: bool,
    pub parallel_witness: Option<(usize, usize)>,
    pub nonconcurrent: bool,
    pub concurrency_witness: Option<[CoeffVector; 3]>,
    pub stab_counts: BTreeSet<usize>,
    pub forbidden: BTreeSet<usize>,
    pub forbidden_hit: BTreeSet<usize>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleDocument {
    pub n: usize,
    pub config: PolygonConfig,
    pub rotation: RotationDocument,
    pub field_order: usize,
    pub lines: Vec<LineDocument>,
    pub certificate: CertificateDocument,
    pub approx_lines: Vec<(f64, f64)>,
}

fn coeff_vector(e: &CycloElement) -> CoeffVector {
    e.coeffs().iter().map(format_rational).collect()
}

fn element(field: &std::sync::Arc<CyclotomicField>, v: &[String]) -> Result<CycloElement, CounterexampleError> {
    let coeffs = v
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    CycloElement::from_coeffs(field, &coeffs)
        .map_err(|e| CounterexampleError::Malformed(e.to_string()))
}

pub fn certificate_document(r: &VerificationReport<CycloElement>) -> CertificateDocument {
    CertificateDocument {
        pairwise_nonparallel: r.pairwise_nonparallel,
        parallel_witness: r.parallel_witness,
        nonconcurrent: r.nonconcurrent,
        concurrency_witness: r
            .concurrency_witness
            .as_ref()
            .map(|w| [coeff_vector(&w[0]), coeff_vector(&w[1]), coeff_vector(&w[2])]),
        stab_counts: r.stab_counts.clone(),
        forbidden: r.forbidden.clone(),
        forbidden_hit: r.forbidden_hit.clone(),
        verdict: r.verdict,
    }
}

impl From<&CounterexampleBundle> for BundleDocument {
    fn from(b: &CounterexampleBundle) -> Self {
        BundleDocument {
            n: b.n,
            config: b.config,
            rotation: RotationDocument {
                c: format_rational(b.rotation.c()),
                s: format_rational(b.rotation.s()),
                parameter: b.rotation_parameter.as_ref().map(format_rational),
            },
            field_order: b.field_order(),
            lines: b
                .lines
                .iter()
                .map(|l| LineDocument {
                    a: coeff_vector(&l.a),
                    b: coeff_vector(&l.b),
                })
                .collect(),
            certificate: certificate_document(&b.certificate),
            approx_lines: b.approx_lines.clone(),
        }
    }
}

impl BundleDocument {
    /// Rebuilds the exact bundle. The stored certificate is decoded as is;
    /// callers re-verify.
    pub fn into_bundle(self) -> Result<CounterexampleBundle, CounterexampleError> {
        let config = PolygonConfig::new(self.config.n, self.config.with_center)?;
        if self.field_order != working_order(config.n) {
            return Err(CounterexampleError::Malformed(format!(
                "field order {} does not fit {}",
                self.field_order, config
            )));
        }
        let field = CyclotomicField::new(self.field_order)
            .map_err(|e| CounterexampleError::Malformed(e.to_string()))?;
        let rotation = RationalRotation::new(
            parse_rational(&self.rotation.c)?,
            parse_rational(&self.rotation.s)?,
        )
        .ok_or_else(|| CounterexampleError::Malformed("rotation is not a unit vector".into()))?;
        let rotation_parameter = self
            .rotation
            .parameter
            .as_deref()
            .map(parse_rational)
            .transpose()?;
        let lines = self
            .lines
            .iter()
            .map(|l| {
                Ok(NonVerticalLine {
                    a: element(&field, &l.a)?,
                    b: element(&field, &l.b)?,
                })
            })
            .collect::<Result<Vec<_>, CounterexampleError>>()?;
        let c = self.certificate;
        let concurrency_witness = c
            .concurrency_witness
            .map(|[x, y, w]| -> Result<_, CounterexampleError> {
                Ok([element(&field, &x)?, element(&field, &y)?, element(&field, &w)?])
            })
            .transpose()?;
        Ok(CounterexampleBundle {
            n: self.n,
            config,
            rotation,
            rotation_parameter,
            certificate: VerificationReport {
                line_count: lines.len(),
                pairwise_nonparallel: c.pairwise_nonparallel,
                parallel_witness: c.parallel_witness,
                nonconcurrent: c.nonconcurrent,
                concurrency_witness,
                stab_counts: c.stab_counts,
                forbidden: c.forbidden,
                forbidden_hit: c.forbidden_hit,
                verdict: c.verdict,
            },
            lines,
            approx_lines: self.approx_lines,
        })
    }
}

pub fn bundle_to_json(b: &CounterexampleBundle) -> String {
    serde_json::to_string_pretty(&BundleDocument::from(b)).expect("bundle serializes")
}

pub fn bundle_from_json(text: &str) -> Result<CounterexampleBundle, CounterexampleError> {
    let doc: BundleDocument = serde_json::from_str(text)
        .map_err(|e| CounterexampleError::Parse(ParseError::Document(e.to_string())))?;
    doc.into_bundle()
}
