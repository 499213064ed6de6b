use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_bohr, check_homogeneous, check_l1, estimate_sup, geometric_slack, BohrReport, Verdict};
use crate::bounds::{cone_failure_radius, general_lower_value, l1_extremal_threshold};
use crate::combinatorics::enumerate_up_to;
use crate::series::TruncatedSeries;
use crate::{DomainSpec, Result};

/// Grid sup estimates are lower bounds; random series are divided by the
/// estimate times this factor.
pub const RESCALE_SAFETY: f64 = 1.05;

/// Relative step past a failure threshold.
pub const PAST_THRESHOLD: f64 = 1.02;

/// Extremal families are expanded to this degree.
pub const EXTREMAL_CAP: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Small,
    Full,
}

impl std::str::FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "small" => Ok(Budget::Small),
            "full" => Ok(Budget::Full),
            other => Err(format!("unknown budget `{other}` (expected small|full)")),
        }
    }
}

#[derive(Debug, Clone)]
pub enum CaseKind {
    /// Random polynomial rescaled so its sampled sup is below one.
    RandomMajorant {
        domain: DomainSpec,
        series: TruncatedSeries,
    },
    /// Extremal cone family, majorant sum on the hypercone.
    ConeMajorant { a: f64 },
    /// Extremal cone family, L¹ sum on the hypercone boundary.
    ConeL1 { a: f64 },
    /// `(a − z)/(1 − az)` on the unit disk.
    Mobius { a: f64 },
    /// Möbius witness composed with a linear form, homogeneous layers.
    Homogeneous { a: f64, direction: Vec<Complex64> },
}

#[derive(Debug, Clone)]
pub struct VerificationCase {
    pub id: String,
    pub kind: CaseKind,
    pub n: usize,
    pub r: f64,
    pub cap: u32,
    pub expect: Verdict,
}

impl VerificationCase {
    pub fn run(&self) -> Result<BohrReport> {
        let mut report = match &self.kind {
            CaseKind::RandomMajorant { domain, series } => check_bohr(series, domain, self.r, 0.0)?,
            CaseKind::ConeMajorant { a } => {
                let f = TruncatedSeries::extremal_cone_family(*a, self.n, self.cap)?;
                // layer k is at most (1−a²)/2 a^{k−1} (n r)^k
                let slack = geometric_slack((1.0 - a * a) / (2.0 * a), a * self.n as f64 * self.r, self.cap);
                check_bohr(&f, &DomainSpec::hypercone(self.n)?, self.r, slack)?
            }
            CaseKind::ConeL1 { a } => {
                let f = TruncatedSeries::extremal_cone_family(*a, self.n, self.cap)?;
                let slack = geometric_slack((1.0 - a * a) / (2.0 * a), a * self.r, self.cap);
                check_l1(&f, self.r, slack)?
            }
            CaseKind::Mobius { a } => {
                let f = TruncatedSeries::mobius_witness(*a, self.cap)?;
                let slack = geometric_slack((1.0 - a * a) / a, a * self.r, self.cap);
                check_bohr(&f, &DomainSpec::polydisk(1)?, self.r, slack)?
            }
            CaseKind::Homogeneous { a, direction } => {
                let f = TruncatedSeries::mobius_witness(*a, self.cap)?;
                let coef = (1.0 - a * a) / a;
                let premise_slack = geometric_slack(coef, *a, self.cap).max(1e-9);
                let slack = geometric_slack(coef, a * self.r, self.cap);
                check_homogeneous(&f, direction, self.r, premise_slack, slack)?
            }
        };
        report.case_id = self.id.clone();
        report.expected = Some(self.expect);
        Ok(report)
    }
}

fn random_polynomial(rng: &mut ChaCha8Rng, n: usize, cap: u32) -> Result<TruncatedSeries> {
    let mut f = TruncatedSeries::new(n, cap)?;
    for alpha in enumerate_up_to(n, cap)? {
        let re: f64 = rng.random_range(-1.0..1.0);
        let im: f64 = rng.random_range(-1.0..1.0);
        f.insert(alpha, Complex64::new(re, im))?;
    }
    Ok(f)
}

fn sample_density(n: usize) -> usize {
    match n {
        1 => 128,
        2 => 24,
        _ => 10,
    }
}

/// Builds the deterministic case list for `seed`.
pub fn build_cases(seed: u64, budget: Budget) -> Result<Vec<VerificationCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (per_domain, degree, dims, alphas): (usize, u32, usize, &[f64]) = match budget {
        Budget::Small => (2, 4, 3, &[0.6, 0.9]),
        Budget::Full => (5, 6, 4, &[0.3, 0.6, 0.75, 0.9]),
    };
    let mut cases = Vec::new();

    for n in 1..=dims.min(3) {
        let r = general_lower_value(n);
        let domains = [
            DomainSpec::polydisk(n)?,
            DomainSpec::ball(n)?,
            DomainSpec::hypercone(n)?,
        ];
        for domain in domains {
            for i in 0..per_domain {
                let raw = random_polynomial(&mut rng, n, degree)?;
                let sup = estimate_sup(&raw, &domain, sample_density(n))?;
                let series = raw.scaled(1.0 / (sup * RESCALE_SAFETY));
                cases.push(VerificationCase {
                    id: format!("random/{}/n{n}/{i}", domain.kind().name()),
                    kind: CaseKind::RandomMajorant {
                        domain: domain.clone(),
                        series,
                    },
                    n,
                    r,
                    cap: degree,
                    expect: Verdict::Holds,
                });
            }
        }
    }

    for &a in alphas {
        for n in 1..=dims {
            let base = VerificationCase {
                id: String::new(),
                kind: CaseKind::ConeMajorant { a },
                n,
                r: general_lower_value(n),
                cap: EXTREMAL_CAP,
                expect: Verdict::Holds,
            };
            cases.push(VerificationCase {
                id: format!("cone-majorant/a{a}/n{n}/guaranteed"),
                ..base.clone()
            });
            cases.push(VerificationCase {
                id: format!("cone-majorant/a{a}/n{n}/past-threshold"),
                r: PAST_THRESHOLD * cone_failure_radius(a, n)?,
                expect: Verdict::Fails,
                ..base.clone()
            });
            cases.push(VerificationCase {
                id: format!("cone-l1/a{a}/n{n}/guaranteed"),
                kind: CaseKind::ConeL1 { a },
                r: 0.23,
                ..base.clone()
            });
            cases.push(VerificationCase {
                id: format!("cone-l1/a{a}/n{n}/past-threshold"),
                kind: CaseKind::ConeL1 { a },
                r: PAST_THRESHOLD * l1_extremal_threshold(a),
                expect: Verdict::Fails,
                ..base
            });
        }
    }

    for &a in &[0.5, 0.9] {
        let base = VerificationCase {
            id: format!("mobius/a{a}/guaranteed"),
            kind: CaseKind::Mobius { a },
            n: 1,
            r: 1.0 / 3.0,
            cap: 200,
            expect: Verdict::Holds,
        };
        cases.push(VerificationCase {
            id: format!("mobius/a{a}/past-threshold"),
            r: PAST_THRESHOLD * l1_extremal_threshold(a),
            expect: Verdict::Fails,
            ..base.clone()
        });
        cases.push(base);
    }

    for n in 2..=3usize {
        let direction: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        cases.push(VerificationCase {
            id: format!("homogeneous/n{n}/inside-third"),
            kind: CaseKind::Homogeneous {
                a: 0.5,
                direction: direction.clone(),
            },
            n,
            r: 1.0 / 3.0 - 1e-3,
            cap: 40,
            expect: Verdict::Holds,
        });
        if n == 2 {
            cases.push(VerificationCase {
                id: format!("homogeneous/n{n}/past-third"),
                kind: CaseKind::Homogeneous { a: 0.97, direction },
                n,
                r: 1.0 / 3.0 + 1e-2,
                cap: 400,
                expect: Verdict::Fails,
            });
        }
    }

    cases.sort_by(|x, y| x.id.cmp(&y.id));
    Ok(cases)
}

/// Runs every case for `seed`; reports are ordered by case id.
pub fn run_verification_suite(seed: u64, budget: Budget) -> Result<Vec<BohrReport>> {
    build_cases(seed, budget)?.iter().map(VerificationCase::run).collect()
}
