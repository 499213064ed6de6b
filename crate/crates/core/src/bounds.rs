//! Closed-form and equation-based Bohr radius bounds.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{big_to_f64, binomial, power_of_self, simplex_count, MultiIndex};
use crate::rootfind::{bisect_best_effort, bisect_increasing, CertifiedRoot, SeriesEquation, DEFAULT_TOL};
use crate::sum::NeumaierSum;
use crate::{Error, Result};

/// Truncation degree used for the x^k/k^k and k^k/k! equations.
pub const EQUATION_DEGREE: u32 = 25;

/// Upper threshold printed for the hypercone root.
pub const HYPERCONE_ROOT_CEILING: f64 = 0.446663;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Majorant-sum radius `B_n(D)`.
    Bn,
    /// Polydisk radius `K_n`.
    Kn,
    /// Hypercone L¹ radius `L_n(D°)`.
    Ln,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusBound {
    pub quantity: Quantity,
    pub direction: Direction,
    pub domain: &'static str,
    /// `None` when the bound does not depend on the dimension.
    pub n: Option<usize>,
    pub value: f64,
    /// True when `value` is the radius itself rather than a one-sided bound.
    pub exact: bool,
    pub certificate: Option<CertifiedRoot>,
    /// Asymptotic improvement without an effective threshold; never used in
    /// comparisons.
    pub asymptotic: Option<f64>,
    pub source: &'static str,
}

impl RadiusBound {
    fn closed(
        quantity: Quantity,
        direction: Direction,
        domain: &'static str,
        n: Option<usize>,
        value: f64,
        source: &'static str,
    ) -> Self {
        Self {
            quantity,
            direction,
            domain,
            n,
            value,
            exact: false,
            certificate: None,
            asymptotic: None,
            source,
        }
    }

    /// Decimal rendering rounded away from the bounded quantity: lower bounds
    /// round down, upper bounds round up.
    pub fn display(&self, digits: usize) -> String {
        match self.direction {
            Direction::Lower => round_down(self.value, digits),
            Direction::Upper => round_up(self.value, digits),
        }
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n < min {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "dimension too small for this bound",
        });
    }
    Ok(())
}

/// `1 − (2/3)^{1/n}`; exactly `1/3` for `n = 1`.
pub fn general_lower_value(n: usize) -> f64 {
    if n == 1 {
        return 1.0 / 3.0;
    }
    -((2.0f64 / 3.0).ln() / n as f64).exp_m1()
}

/// Lower bound valid for every complete bounded n-circular domain.
pub fn general_lower(n: usize) -> Result<RadiusBound> {
    check_n(n, 1)?;
    Ok(RadiusBound::closed(
        Quantity::Bn,
        Direction::Lower,
        "any",
        Some(n),
        general_lower_value(n),
        "binomial majorant chain: (1-r)^-n - 1 <= 1/2",
    ))
}

/// `c₀ + (1−c₀²)((1−r)^{−n} − 1)`: the majorant of `Σ|c_α| d_α(D_r)` for
/// functions bounded by one.
pub fn binomial_majorant(c0: f64, n: usize, r: f64) -> Result<f64> {
    check_c0(c0)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    let growth = (-(n as f64) * (-r).ln_1p()).exp_m1();
    Ok(c0 + (1.0 - c0 * c0) * growth)
}

fn check_c0(c0: f64) -> Result<()> {
    if (0.0..1.0).contains(&c0) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "c0",
            value: c0,
            reason: "must lie in [0, 1)",
        })
    }
}

/// `2/(5n)` for the unit ball, with `1/(2n)` attached as asymptotic
/// metadata. For `n = 1` this is the general bound `1/3`.
pub fn ball_lower(n: usize) -> Result<RadiusBound> {
    check_n(n, 1)?;
    if n == 1 {
        let mut b = general_lower(1)?;
        b.domain = "ball";
        return Ok(b);
    }
    let mut b = RadiusBound::closed(
        Quantity::Bn,
        Direction::Lower,
        "ball",
        Some(n),
        2.0 / (5.0 * n as f64),
        "ball lower bound 2/(5n)",
    );
    b.asymptotic = Some(1.0 / (2.0 * n as f64));
    Ok(b)
}

/// Truncated ball majorant
/// `c₀ + (1−c₀²)(r√n + Σ_{k=2}^{K} √C(n+k−1,k) (r√n)^k)`.
pub fn ball_majorant(c0: f64, n: usize, r: f64, cap: u32) -> Result<f64> {
    check_c0(c0)?;
    check_n(n, 1)?;
    let q = r * (n as f64).sqrt();
    if !(r >= 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "need 0 <= r and r*sqrt(n) < 1",
        });
    }
    if cap < 2 {
        return Err(Error::InvalidParameter {
            name: "K",
            value: cap as f64,
            reason: "degree cap must be at least 2",
        });
    }
    let mut acc = NeumaierSum::new();
    acc += q;
    for k in 2..=cap {
        acc += big_to_f64(&simplex_count(n, k)).sqrt() * q.powi(k as i32);
    }
    Ok(c0 + (1.0 - c0 * c0) * acc.value())
}

/// Polydisk bounds: lower `2/(5√n)` (which dominates `1/(3√n)`), upper
/// `2√(log n)/√n`. The upper value exceeds one for small `n`.
pub fn kn_bounds(n: usize) -> Result<(RadiusBound, RadiusBound)> {
    check_n(n, 2)?;
    let s = (n as f64).sqrt();
    let mut lower = RadiusBound::closed(
        Quantity::Kn,
        Direction::Lower,
        "polydisk",
        Some(n),
        (1.0 / (3.0 * s)).max(2.0 / (5.0 * s)),
        "polydisk lower bound 2/(5 sqrt n)",
    );
    lower.asymptotic = Some(1.0 / (2.0 * s));
    let upper = RadiusBound::closed(
        Quantity::Kn,
        Direction::Upper,
        "polydisk",
        Some(n),
        2.0 * (n as f64).ln().sqrt() / s,
        "polydisk upper bound 2 sqrt(log n)/sqrt n",
    );
    Ok((lower, upper))
}

/// `T_k(n) = Σ_{|α|=k} multinomial(α)·α^α / k^k` for `k = 1..=cap`, exact.
///
/// Uses the binomial convolution `W_m(k) = Σ_a C(k,a) a^a W_{m−1}(k−a)`,
/// `W_1(k) = k^k`, so `T_k = W_n(k)/k^k`.
pub fn cone_layer_sums(n: usize, cap: u32) -> Result<Vec<BigRational>> {
    check_n(n, 1)?;
    let self_pows: Vec<BigUint> = (0..=cap).map(power_of_self).collect();
    let mut w: Vec<BigUint> = self_pows.clone();
    for _ in 1..n {
        w = (0..=cap as usize)
            .map(|k| {
                (0..=k)
                    .map(|a| binomial(k as u64, a as u64) * &self_pows[a] * &w[k - a])
                    .sum()
            })
            .collect();
    }
    Ok((1..=cap as usize)
        .map(|k| BigRational::new(BigInt::from(w[k].clone()), BigInt::from(self_pows[k].clone())))
        .collect())
}

/// Single `T_k(n)`.
pub fn cone_layer_sum(k: u32, n: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
            reason: "layer index starts at 1",
        });
    }
    Ok(cone_layer_sums(n, k)?.pop().expect("k >= 1"))
}

fn ceil_decimal(v: f64, digits: i32) -> f64 {
    let scale = 10f64.powi(digits);
    let c = (v * scale).ceil();
    if (c - 1.0) / scale >= v {
        (c - 1.0) / scale
    } else {
        c / scale
    }
}

/// Certified root of `Σ x^k/k^k = 1/2` at the default tolerance.
pub fn hypercone_root() -> Result<CertifiedRoot> {
    let eq = SeriesEquation::self_power_reciprocal(0.5);
    Ok(bisect_increasing(&eq, EQUATION_DEGREE, DEFAULT_TOL)?)
}

/// `B_n(D°) ≤ x₀/n`, with the certified upper end of `x₀` rounded up at the
/// sixth decimal.
pub fn hypercone_upper(n: usize) -> Result<RadiusBound> {
    check_n(n, 1)?;
    let root = hypercone_root()?;
    let mut b = RadiusBound::closed(
        Quantity::Bn,
        Direction::Upper,
        "hypercone",
        Some(n),
        ceil_decimal(root.hi, 6) / n as f64,
        "hypercone extremal family, root of sum x^k/k^k = 1/2",
    );
    b.certificate = Some(root);
    Ok(b)
}

/// Equation `Σ T_k(n) x^k = 1/2` with exact layer sums up to `max_degree`
/// and the geometric tail from `T_k ≤ n^k`.
pub fn refined_cone_equation(n: usize, max_degree: u32) -> Result<SeriesEquation> {
    let layers: Vec<f64> = cone_layer_sums(n, max_degree)?
        .iter()
        .map(|t| t.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let nf = n as f64;
    Ok(SeriesEquation::new(
        move |k, x| {
            let t = layers.get(k as usize - 1).copied().unwrap_or_else(|| nf.powi(k as i32));
            t * x.powi(k as i32)
        },
        move |p, x| {
            let q = nf * x;
            if (0.0..1.0).contains(&q) {
                q.powi(p as i32 + 1) / (1.0 - q)
            } else {
                f64::INFINITY
            }
        },
        0.5,
        (0.0, 0.5 / nf),
    ))
}

/// Upper bound for `B_n(D°)` from the exact layer sums (no termwise
/// lower estimate), truncated at degree `cap`.
pub fn refined_cone_upper(n: usize, cap: u32) -> Result<RadiusBound> {
    check_n(n, 1)?;
    let eq = refined_cone_equation(n, 2 * cap)?;
    let root = bisect_increasing(&eq, cap, 1e-10)?;
    let mut b = RadiusBound::closed(
        Quantity::Bn,
        Direction::Upper,
        "hypercone",
        Some(n),
        root.hi,
        "hypercone extremal family with exact layer sums",
    );
    b.certificate = Some(root);
    Ok(b)
}

/// Certified lower end of the root of `Σ k^k/k! r^k = 1/2` under the
/// degree-25 Stirling tail.
pub fn l1_root() -> Result<CertifiedRoot> {
    let eq = SeriesEquation::stirling_series(0.5);
    Ok(bisect_best_effort(&eq, EQUATION_DEGREE, DEFAULT_TOL)?)
}

/// Dimension-free bounds for `L_n(D°)`: the certified root from below and
/// `1/3` from above.
pub fn l1_bounds() -> Result<(RadiusBound, RadiusBound)> {
    let root = l1_root()?;
    let mut lower = RadiusBound::closed(
        Quantity::Ln,
        Direction::Lower,
        "hypercone",
        None,
        root.lo,
        "L1 chain, root of sum k^k/k! r^k = 1/2",
    );
    lower.certificate = Some(root);
    let upper = RadiusBound::closed(
        Quantity::Ln,
        Direction::Upper,
        "hypercone",
        None,
        1.0 / 3.0,
        "extremal family L1 threshold 1/(1+2a) as a -> 1",
    );
    Ok((lower, upper))
}

/// Root `x₀(a)` of `Σ x^k/k^k = a/(1+a)`.
pub fn cone_threshold_root(a: f64) -> Result<CertifiedRoot> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "must lie in (0, 1]",
        });
    }
    let eq = SeriesEquation::self_power_reciprocal(a / (1.0 + a));
    Ok(bisect_increasing(&eq, EQUATION_DEGREE, DEFAULT_TOL)?)
}

/// Radius `x₀(a)/(an)` (upper end of the certificate) from which the
/// majorant sum of the extremal cone family is at least one.
pub fn cone_failure_radius(a: f64, n: usize) -> Result<f64> {
    check_n(n, 1)?;
    Ok(cone_threshold_root(a)?.hi / (a * n as f64))
}

/// `1/(1+2a)`: the L¹ sum of the extremal family (and the disk Bohr sum of
/// the Möbius witness) reaches one exactly here.
pub fn l1_extremal_threshold(a: f64) -> f64 {
    1.0 / (1.0 + 2.0 * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptotics {
    /// `log(3/2)`, the leading coefficient of `1 − (2/3)^{1/n}`.
    pub slope: f64,
    /// `0.446663 / log(3/2)`.
    pub ratio_limsup: f64,
    /// Same ratio using the certified root instead of the printed ceiling.
    pub ratio_from_root: f64,
    /// `n·(1 − (2/3)^{1/n})` at `n = 1000`.
    pub scaled_lower_at_1000: f64,
}

pub fn asymptotics() -> Result<Asymptotics> {
    let slope = 1.5f64.ln();
    let root = hypercone_root()?;
    Ok(Asymptotics {
        slope,
        ratio_limsup: HYPERCONE_ROOT_CEILING / slope,
        ratio_from_root: root.hi / slope,
        scaled_lower_at_1000: 1000.0 * general_lower_value(1000),
    })
}

/// Exact radius `3^{−1/|β|}` of `{|z^β| < c}` for coprime `β`.
pub fn monomial_domain_radius(beta: &MultiIndex) -> Result<RadiusBound> {
    let g = beta.parts().iter().fold(0u32, |g, &b| g.gcd(&b));
    if g != 1 {
        return Err(Error::NotCoprime(beta.to_string()));
    }
    let mut b = RadiusBound::closed(
        Quantity::Bn,
        Direction::Lower,
        "monomial",
        Some(beta.dimension()),
        3f64.powf(-1.0 / beta.weight() as f64),
        "one-variable reduction in z^beta",
    );
    b.exact = true;
    Ok(b)
}

/// Rounds toward negative infinity at `digits` decimals.
pub fn round_down(v: f64, digits: usize) -> String {
    let scale = 10f64.powi(digits as i32);
    let mut f = (v * scale).floor();
    if (f + 1.0) / scale <= v {
        f += 1.0;
    }
    format!("{:.*}", digits, f / scale)
}

/// Rounds toward positive infinity at `digits` decimals.
pub fn round_up(v: f64, digits: usize) -> String {
    format!("{:.*}", digits, ceil_decimal(v, digits as i32))
}

/// `T_k(n) ≥ n^k/k^k`, checked exactly.
pub fn layer_sum_dominates_rough(k: u32, n: usize) -> Result<bool> {
    let t = cone_layer_sum(k, n)?;
    let rough = BigRational::new(BigInt::from(n).pow(k), BigInt::from(power_of_self(k)));
    Ok(t >= rough && !t.is_zero())
}
