//! Verification checks, the randomized/extremal suite and the constant table.

mod suite;
mod table;

pub use suite::{run_verification_suite, Budget, CaseKind, VerificationCase};
pub use table::{build_constant_table, ConstantTable, TableFormat, TableRow};

use num_complex::Complex64;
use serde::Serialize;

use crate::series::{SeriesSum, TruncatedSeries};
use crate::{DomainSpec, Error, Result};

/// Boundary points are pulled inside by this factor before evaluation.
pub const SUP_SAMPLE_SCALE: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BohrReport {
    pub case_id: String,
    /// `majorant`, `l1` or `homogeneous`.
    pub check: &'static str,
    pub domain: &'static str,
    pub n: usize,
    pub r: f64,
    pub sum: f64,
    pub threshold: f64,
    /// Truncation allowance subtracted from the threshold.
    pub slack: f64,
    pub verdict: Verdict,
    pub cap: u32,
    pub top_layer: f64,
    pub expected: Option<Verdict>,
    pub premise_sup: Option<f64>,
}

impl BohrReport {
    fn new(check: &'static str, domain: &'static str, n: usize, r: f64, sum: SeriesSum, cap: u32, slack: f64) -> Self {
        let verdict = if sum.value < 1.0 - slack {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Self {
            case_id: String::new(),
            check,
            domain,
            n,
            r,
            sum: sum.value,
            threshold: 1.0,
            slack,
            verdict,
            cap,
            top_layer: sum.top_layer,
            expected: None,
            premise_sup: None,
        }
    }

    /// `true` unless an expectation was set and the verdict differs.
    pub fn as_expected(&self) -> bool {
        self.expected.is_none_or(|e| e == self.verdict)
    }
}

/// `max |f(0.999 z)|` over [`DomainSpec::boundary_sample`]; a lower bound of
/// the sup of `|f|` on the scaled domain, non-decreasing in `density` along
/// refining grids.
pub fn estimate_sup(f: &TruncatedSeries, domain: &DomainSpec, density: usize) -> Result<f64> {
    if domain.dimension() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            found: domain.dimension(),
        });
    }
    let mut best = 0.0f64;
    for p in domain.boundary_sample(density)? {
        let z: Vec<Complex64> = p.iter().map(|v| v * SUP_SAMPLE_SCALE).collect();
        best = best.max(f.evaluate(&z)?.norm());
    }
    Ok(best)
}

/// Majorant-sum check `Σ|c_α| d_α(D_r) < 1 − slack`.
pub fn check_bohr(f: &TruncatedSeries, domain: &DomainSpec, r: f64, slack: f64) -> Result<BohrReport> {
    let sum = f.bohr_majorant_sum(domain, r)?;
    Ok(BohrReport::new(
        "majorant",
        domain.kind().name(),
        f.dimension(),
        r,
        sum,
        f.cap(),
        slack,
    ))
}

/// L¹ check on the hypercone boundary.
pub fn check_l1(f: &TruncatedSeries, r: f64, slack: f64) -> Result<BohrReport> {
    let sum = f.cone_l1_sum(r)?;
    Ok(BohrReport::new(
        "l1",
        "hypercone",
        f.dimension(),
        r,
        sum,
        f.cap(),
        slack,
    ))
}

/// Phase grid for the disk premise check.
const PREMISE_DENSITY: usize = 256;

/// Homogeneous-layer check on the slab `r·{|a·z| < 1}` for `f(a·z)`.
///
/// The premise `|f1d| < 1` is sampled on the unit circle (scaled by 0.999)
/// and must not exceed `1 + premise_slack`; `slack` is the truncation
/// allowance for the sum at radius `r`. The sum `Σ_k |P_k(z)|` is maximised over
/// points `z = s·ā/|a|² + t·w` with `|s| ≤ r`, `w` in the kernel of
/// `z ↦ a·z`, and a few shifts `t` small enough that `Σ|a_j z_j| ≤ 1`; the
/// reported sum is that maximum.
pub fn check_homogeneous(
    f1d: &TruncatedSeries,
    direction: &[Complex64],
    r: f64,
    premise_slack: f64,
    slack: f64,
) -> Result<BohrReport> {
    if f1d.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f1d.dimension(),
        });
    }
    let norm2: f64 = direction.iter().map(|a| a.norm_sqr()).sum();
    if norm2.is_nan() || norm2 <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "direction",
            value: norm2,
            reason: "direction vector must be nonzero",
        });
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    let premise = estimate_sup(f1d, &DomainSpec::polydisk(1)?, PREMISE_DENSITY)?;
    if premise > 1.0 + premise_slack {
        return Err(Error::PremiseViolated(premise));
    }

    let n = direction.len();
    let h = f1d.compose_linear(direction)?.to_homogeneous();
    let base: Vec<Complex64> = direction.iter().map(|a| a.conj() / norm2).collect();
    let mut kernel = vec![Complex64::new(0.0, 0.0); n];
    if n >= 2 {
        kernel[0] = direction[1];
        kernel[1] = -direction[0];
    }
    // keep Σ|a_j z_j| ≤ 1 so the expanded layers do not cancel catastrophically
    let spread = 2.0 * (direction[0] * direction.get(1).copied().unwrap_or_default()).norm();
    let tau = if spread > 0.0 { 0.5 * (1.0 - r) / spread } else { 1.0 };
    let shifts = if n >= 2 {
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(tau, 0.0),
            Complex64::new(0.0, tau),
        ]
    } else {
        vec![Complex64::new(0.0, 0.0)]
    };

    const RADII: usize = 4;
    const PHASES: usize = 8;
    let mut worst = SeriesSum {
        value: 0.0,
        top_layer: 0.0,
    };
    for i in 1..=RADII {
        let rho = r * i as f64 / RADII as f64;
        for j in 0..PHASES {
            let s = Complex64::from_polar(rho, std::f64::consts::TAU * j as f64 / PHASES as f64);
            for &t in &shifts {
                let z: Vec<Complex64> = base.iter().zip(&kernel).map(|(b, w)| s * b + t * w).collect();
                let line = h.slice_to_line(&z)?;
                let value: f64 = crate::sum::compensated_sum(line.iter().map(|v| v.norm()));
                if value > worst.value {
                    worst = SeriesSum {
                        value,
                        top_layer: line.last().map_or(0.0, |v| v.norm()),
                    };
                }
            }
        }
    }
    let mut report = BohrReport::new("homogeneous", "slab", n, r, worst, f1d.cap(), slack);
    report.premise_sup = Some(premise);
    Ok(report)
}

/// Geometric tail `coef · q^{K+1}/(1−q)`, infinite when `q ≥ 1`.
pub fn geometric_slack(coef: f64, q: f64, cap: u32) -> f64 {
    if (0.0..1.0).contains(&q) {
        coef * q.powi(cap as i32 + 1) / (1.0 - q)
    } else {
        f64::INFINITY
    }
}
