//! Stable map complexity bounds and `smc = 2m` certificates.
//!
//! Upper bound: the `f2` construction gives `smc(E(L)) <= 2m` whenever every
//! `b_j` is even. Lower bound: `vol(M) <= 2 V_oct smc(M)` for hyperbolic `M`.
//! When a supplied volume exceeds `(4m - 2) V_oct` the two meet at `2m`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::{twist_number, ConwayError, ConwayWord};
use crate::curve::Variant;
use crate::morse::SingularFiberCensus;
use crate::scalar::Real;

/// Volume of the regular ideal hyperbolic octahedron, `8 Λ(π/4)`.
pub const V_OCT: f64 = 3.663862376708876;

/// Default absolute margin applied to strict volume comparisons.
pub const DEFAULT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexityError {
    #[error("volume must be positive, got {0}")]
    NonPositiveVolume(f64),
    #[error("every b_j must be even; {word} has an odd vertical twist")]
    EvenBRequired { word: ConwayWord },
    #[error("{word} has m = 0; the volume bound needs a hyperbolic (non-torus) link")]
    TorusCase { word: ConwayWord },
    #[error(transparent)]
    Conway(#[from] ConwayError),
    #[error("volume table line {line}: {message}")]
    ParseError { line: u64, message: String },
    #[error("volume table line {line}: duplicate label {label:?}")]
    DuplicateLabel { line: u64, label: String },
}

impl ComplexityError {
    pub fn is_hypothesis_failure(&self) -> bool {
        match self {
            ComplexityError::EvenBRequired { .. } | ComplexityError::TorusCase { .. } => true,
            ComplexityError::Conway(e) => e.is_hypothesis_failure(),
            _ => false,
        }
    }
}

/// `|II²(f)| + 2 |II³(f)|`.
pub fn weighted_sum(census: &SingularFiberCensus) -> u64 {
    census.ii2 + 2 * census.ii3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub m: u64,
    /// `2m`, realised by `witness`.
    pub smc_upper: u64,
    pub witness: Variant,
    /// Weighted sum of the `f3` map, `sum |b_j|`.
    pub f3_weighted_sum: u64,
}

pub fn smc_upper_bound(word: &ConwayWord) -> Result<UpperBound, ComplexityError> {
    if !word.all_b_even() {
        return Err(ComplexityError::EvenBRequired { word: word.clone() });
    }
    let m = word.m() as u64;
    Ok(UpperBound {
        m,
        smc_upper: 2 * m,
        witness: Variant::F2,
        f3_weighted_sum: word.sum_abs_b(),
    })
}

fn check_volume<F: Real>(volume: F) -> Result<(), ComplexityError> {
    if volume.is_nan() || volume <= F::zero() {
        return Err(ComplexityError::NonPositiveVolume(volume.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// `ceil(volume / (2 V_oct))`.
pub fn smc_lower_bound_from_volume<F: Real>(volume: F) -> Result<u64, ComplexityError> {
    check_volume(volume)?;
    let ratio = volume / (F::lit(2.0) * F::lit(V_OCT));
    Ok(ratio.ceil().to_u64().expect("finite ratio"))
}

/// `2 (tw(D) - 1) V_oct = 4m V_oct` for a reduced alternating word.
pub fn volume_upper_bound<F: Real>(word: &ConwayWord) -> Result<F, ComplexityError> {
    let tw = twist_number(word)?;
    if word.m() == 0 {
        return Err(ComplexityError::TorusCase { word: word.clone() });
    }
    Ok(F::lit(2.0) * F::from_usize(tw - 1).expect("small") * F::lit(V_OCT))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityBounds<F> {
    pub m: u64,
    pub smc_upper: Option<UpperBound>,
    pub smc_lower: Option<u64>,
    pub volume_upper: Option<F>,
}

/// Everything derivable about `word`, with an optional supplied volume.
pub fn complexity_bounds<F: Real>(
    word: &ConwayWord,
    volume: Option<F>,
) -> Result<ComplexityBounds<F>, ComplexityError> {
    let smc_lower = volume.map(smc_lower_bound_from_volume).transpose()?;
    Ok(ComplexityBounds {
        m: word.m() as u64,
        smc_upper: smc_upper_bound(word).ok(),
        smc_lower,
        volume_upper: volume_upper_bound(word).ok(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    Certified,
    Inconclusive,
    Inapplicable,
}

/// The instantiated inequality chain behind a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate<F> {
    pub status: CertificateStatus,
    pub word: String,
    pub m: u64,
    pub volume: F,
    pub v_oct: F,
    pub margin: F,
    /// `smc = 2m` when certified.
    pub value: Option<u64>,
    /// `volume / (2 V_oct)`; `smc` is at least this.
    pub lower_ratio: F,
    /// `ceil(lower_ratio)`.
    pub smc_lower: u64,
    /// `2m` from the `f2` construction.
    pub smc_upper: u64,
    /// `(4m - 2) V_oct`; certification needs `volume > threshold + margin`.
    pub threshold: F,
    /// `4m V_oct`, present for reduced alternating words.
    pub volume_upper: Option<F>,
    /// Set when the supplied volume forces `smc > 2m`, contradicting the
    /// upper bound: the volume input is wrong.
    pub inconsistent: bool,
}

impl<F: Real> Certificate<F> {
    /// Human-readable lines of the instantiated chain.
    pub fn chain(&self) -> Vec<String> {
        let mut out = vec![
            format!("vol = {} <= 2 V_oct smc  =>  smc >= {:.6} (so smc >= {})", self.volume, self.lower_ratio, self.smc_lower),
            format!("f2 construction  =>  smc <= 2m = {}", self.smc_upper),
            format!("threshold (4m-2) V_oct = {:.9}, margin {:e}", self.threshold, self.margin.to_f64().unwrap_or(0.0)),
        ];
        if let Some(vu) = self.volume_upper {
            out.push(format!("reduced alternating  =>  vol < 4m V_oct = {vu:.9}"));
        }
        if self.inconsistent {
            out.push("warning: supplied volume exceeds 4m V_oct; lower bound exceeds 2m".into());
        }
        out
    }
}

pub fn certify_smc<F: Real>(word: &ConwayWord, volume: F) -> Result<Certificate<F>, ComplexityError> {
    certify_smc_with_margin(word, volume, F::lit(DEFAULT_MARGIN))
}

pub fn certify_smc_with_margin<F: Real>(
    word: &ConwayWord,
    volume: F,
    margin: F,
) -> Result<Certificate<F>, ComplexityError> {
    check_volume(volume)?;
    let upper = smc_upper_bound(word)?;
    let v_oct = F::lit(V_OCT);
    let m = upper.m;
    let lower_ratio = volume / (F::lit(2.0) * v_oct);
    let smc_lower = smc_lower_bound_from_volume(volume)?;
    let threshold = F::from_u64((4 * m).saturating_sub(2)).expect("small") * v_oct;
    let status = if m == 0 {
        CertificateStatus::Inapplicable
    } else if volume > threshold + margin {
        CertificateStatus::Certified
    } else {
        CertificateStatus::Inconclusive
    };
    Ok(Certificate {
        status,
        word: word.to_string(),
        m,
        volume,
        v_oct,
        margin,
        value: (status == CertificateStatus::Certified).then_some(2 * m),
        lower_ratio,
        smc_lower,
        smc_upper: upper.smc_upper,
        threshold,
        volume_upper: volume_upper_bound(word).ok(),
        inconsistent: m > 0 && smc_lower > upper.smc_upper,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeRecord<F> {
    pub label: String,
    /// Conway word, fraction, or free text naming the link.
    pub reference: String,
    pub volume: F,
    /// Where the value came from, `name:line`.
    pub source: String,
}

/// Parse `label,conway_or_fraction,volume` lines; `#` starts a comment.
/// The middle field may be quoted or left bare.
pub fn ingest_volume_table<F: Real>(
    document: &str,
    source: &str,
) -> Result<Vec<VolumeRecord<F>>, ComplexityError> {
    let mut out: Vec<VolumeRecord<F>> = Vec::new();
    for (idx, text) in document.lines().enumerate() {
        let line = idx as u64 + 1;
        let perr = |message: String| ComplexityError::ParseError { line, message };
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(trimmed.as_bytes())
            .records()
            .next()
            .expect("non-empty line")
            .map_err(|e| perr(e.to_string()))?;
        // An unquoted Conway word spills over several fields; rejoin them.
        if row.len() < 3 {
            return Err(perr(format!("expected 3 fields, found {}", row.len())));
        }
        let last = row.len() - 1;
        let reference = (1..last).map(|i| &row[i]).collect::<Vec<_>>().join(",");
        let label = row[0].to_string();
        if label.is_empty() {
            return Err(perr("empty label".into()));
        }
        let volume: f64 = row[last].parse().map_err(|_| perr(format!("bad volume {:?}", &row[last])))?;
        if !(volume.is_finite() && volume > 0.0) {
            return Err(perr(format!("volume must be positive, got {volume}")));
        }
        if out.iter().any(|r| r.label == label) {
            return Err(ComplexityError::DuplicateLabel { line, label });
        }
        out.push(VolumeRecord {
            label,
            reference,
            volume: F::lit(volume),
            source: format!("{source}:{line}"),
        });
    }
    Ok(out)
}
