//! Certified bisection for increasing power-series equations.
//!
//! A [`SeriesEquation`] is `Σ_{k≥1} term(k, x) = target` with non-negative
//! terms increasing in `x`. Bisection runs on the degree-`p` partial sum
//! `S_p`; a point `x` is certified *below* the root when
//! `S_p(x) + tail(p, x) < target` and *above* it when `S_p(x) > target`
//! (partial sums never exceed the full series). Every comparison carries a
//! slack of 8 ulps of the compared value to absorb rounding; this is an
//! approximation of directed rounding, not interval arithmetic.

use std::f64::consts::{E, PI};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::sum::NeumaierSum;
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
const ULP_SLACK: f64 = 8.0 * f64::EPSILON;

type TermFn = dyn Fn(u32, f64) -> f64 + Send + Sync;

pub struct SeriesEquation {
    term: Box<TermFn>,
    tail: Box<TermFn>,
    target: f64,
    interval: (f64, f64),
}

impl fmt::Debug for SeriesEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesEquation")
            .field("target", &self.target)
            .field("interval", &self.interval)
            .finish_non_exhaustive()
    }
}

impl SeriesEquation {
    /// `term(k, x)` for `k ≥ 1`; `tail(p, x)` must bound `Σ_{k>p} term(k, x)`
    /// from above (return `f64::INFINITY` where no bound is available).
    pub fn new<T, B>(term: T, tail: B, target: f64, interval: (f64, f64)) -> Self
    where
        T: Fn(u32, f64) -> f64 + Send + Sync + 'static,
        B: Fn(u32, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            term: Box::new(term),
            tail: Box::new(tail),
            target,
            interval,
        }
    }

    /// `Σ x^k = target`.
    pub fn geometric(target: f64) -> Self {
        Self::new(
            |k, x| x.powi(k as i32),
            |p, x| {
                if (0.0..1.0).contains(&x) {
                    x.powi(p as i32 + 1) / (1.0 - x)
                } else {
                    f64::INFINITY
                }
            },
            target,
            (0.0, 1.0 - f64::EPSILON),
        )
    }

    /// `Σ (scale·x)^k = target`.
    pub fn scaled_geometric(scale: f64, target: f64) -> Self {
        let geo = Self::geometric(target);
        Self::new(
            move |k, x| (scale * x).powi(k as i32),
            move |p, x| (geo.tail)(p, scale * x),
            target,
            (0.0, (1.0 - f64::EPSILON) / scale),
        )
    }

    /// `Σ x^k / k^k = target`; `target = 1/2` gives the hypercone threshold
    /// `x₀`, and `target = a/(1+a)` gives `x₀(a)`.
    pub fn self_power_reciprocal(target: f64) -> Self {
        Self::new(
            |k, x| (x / k as f64).powi(k as i32),
            |p, x| tail_geometric(p, x).unwrap_or(f64::INFINITY),
            target,
            (0.0, 1.0),
        )
    }

    /// `Σ k^k/k! · x^k = target` with the Stirling tail bound.
    pub fn stirling_series(target: f64) -> Self {
        Self::new(
            |k, x| {
                let kf = k as f64;
                (1..=k).fold(x.powi(k as i32), |acc, j| acc * (kf / j as f64))
            },
            |p, x| tail_stirling_from(p, x).unwrap_or(f64::INFINITY),
            target,
            (0.0, 0.3),
        )
    }

    /// The same equation truncated at the solve degree (zero tail).
    pub fn truncated(self) -> Self {
        Self {
            tail: Box::new(|_, _| 0.0),
            ..self
        }
    }

    pub fn with_interval(mut self, lo: f64, hi: f64) -> Self {
        self.interval = (lo, hi);
        self
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn term(&self, k: u32, x: f64) -> f64 {
        (self.term)(k, x)
    }

    pub fn tail(&self, p: u32, x: f64) -> f64 {
        (self.tail)(p, x)
    }

    /// `S_p(x) = Σ_{k=1}^{p} term(k, x)`.
    pub fn partial_sum(&self, p: u32, x: f64) -> f64 {
        (1..=p).map(|k| (self.term)(k, x)).sum::<NeumaierSum>().value()
    }

    fn below(&self, p: u32, x: f64) -> (bool, f64, f64) {
        let s = self.partial_sum(p, x);
        let t = self.tail(p, x);
        let upper = s + t;
        (upper + ULP_SLACK * upper.abs() < self.target, s, t)
    }

    fn above(&self, s: f64) -> bool {
        s - ULP_SLACK * s.abs() > self.target
    }
}

/// Bracket `[lo, hi]` around the root together with its evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedRoot {
    pub lo: f64,
    pub hi: f64,
    /// Truncation degree of the partial sums.
    pub p: u32,
    pub target: f64,
    pub partial_lo: f64,
    pub tail_lo: f64,
    pub partial_hi: f64,
    pub tail_hi: f64,
    pub steps: u32,
}

impl CertifiedRoot {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Re-checks both evidence inequalities using degree `p`.
    pub fn verify(&self, eq: &SeriesEquation, p: u32) -> bool {
        let (below, _, _) = eq.below(p, self.lo);
        below && eq.above(eq.partial_sum(p, self.hi))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("interval [{lo}, {hi}] does not straddle the target (S(lo) = {at_lo}, S(hi) = {at_hi})")]
    NotBracketed { lo: f64, hi: f64, at_lo: f64, at_hi: f64 },

    #[error("tail bound {tail} at x = {x} closes the gap S = {partial} < {target}; raise p")]
    TailTooLarge {
        x: f64,
        partial: f64,
        tail: f64,
        target: f64,
    },

    #[error("tail bound limits the bracket to width {} > tol {tol}", best.width())]
    WidthUnattainable { best: Box<CertifiedRoot>, tol: f64 },
}

/// Certified bisection on `S_p` over the equation's search interval.
///
/// Returns a bracket of width at most `tol`. When the tail bound makes a
/// midpoint undecidable the two ends are refined separately; if the width
/// still exceeds `tol` the best certified bracket is returned inside
/// [`RootError::WidthUnattainable`].
pub fn bisect_increasing(eq: &SeriesEquation, p: u32, tol: f64) -> std::result::Result<CertifiedRoot, RootError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(RootError::InvalidTolerance(tol));
    }
    let (mut lo, mut hi) = eq.interval;
    let at_lo = eq.partial_sum(p, lo);
    let at_hi = eq.partial_sum(p, hi);
    if at_lo.is_nan() || at_lo >= eq.target || !eq.above(at_hi) {
        return Err(RootError::NotBracketed { lo, hi, at_lo, at_hi });
    }
    let (ok, partial, tail) = eq.below(p, lo);
    if !ok {
        return Err(RootError::TailTooLarge {
            x: lo,
            partial,
            tail,
            target: eq.target,
        });
    }

    let mut steps = 0u32;
    let mut undecided = None;
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        steps += 1;
        if eq.below(p, mid).0 {
            lo = mid;
        } else if eq.above(eq.partial_sum(p, mid)) {
            hi = mid;
        } else {
            undecided = Some(mid);
            break;
        }
    }

    if let Some(m) = undecided {
        // push lo up towards m, then hi down towards m
        let quarter = tol / 4.0;
        let mut gap = m;
        while gap - lo > quarter {
            let mid = lo + 0.5 * (gap - lo);
            if mid <= lo || mid >= gap {
                break;
            }
            steps += 1;
            if eq.below(p, mid).0 {
                lo = mid;
            } else {
                gap = mid;
            }
        }
        let mut gap = m;
        while hi - gap > quarter {
            let mid = gap + 0.5 * (hi - gap);
            if mid <= gap || mid >= hi {
                break;
            }
            steps += 1;
            if eq.above(eq.partial_sum(p, mid)) {
                hi = mid;
            } else {
                gap = mid;
            }
        }
    }

    let root = CertifiedRoot {
        lo,
        hi,
        p,
        target: eq.target,
        partial_lo: eq.partial_sum(p, lo),
        tail_lo: eq.tail(p, lo),
        partial_hi: eq.partial_sum(p, hi),
        tail_hi: eq.tail(p, hi),
        steps,
    };
    if root.width() > tol {
        return Err(RootError::WidthUnattainable {
            best: Box::new(root),
            tol,
        });
    }
    Ok(root)
}

/// Like [`bisect_increasing`] but accepts a tail-limited bracket wider than
/// `tol`.
pub fn bisect_best_effort(eq: &SeriesEquation, p: u32, tol: f64) -> std::result::Result<CertifiedRoot, RootError> {
    match bisect_increasing(eq, p, tol) {
        Err(RootError::WidthUnattainable { best, .. }) => Ok(*best),
        other => other,
    }
}

fn check_x(x: f64, sup: f64, reason: &'static str) -> Result<()> {
    if (0.0..sup).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "x",
            value: x,
            reason,
        })
    }
}

/// `x^{p+1} / ((p+1)^{p+1} (1−x))`, an upper bound for `Σ_{k>p} x^k/k^k`.
pub fn tail_geometric(p: u32, x: f64) -> Result<f64> {
    check_x(x, 1.0, "geometric tail needs 0 <= x < 1")?;
    let q = (p + 1) as f64;
    Ok((x / q).powi(p as i32 + 1) / (1.0 - x))
}

/// `(ex)^{p+1} / (√(2π(p+1)) (1−ex))`, an upper bound for
/// `Σ_{k>p} k^k/k! · x^k` from `k! ≥ √(2πk) (k/e)^k`.
pub fn tail_stirling_from(p: u32, x: f64) -> Result<f64> {
    check_x(x, 1.0 / E, "Stirling tail needs 0 <= x < 1/e")?;
    let ex = E * x;
    let q = (p + 1) as f64;
    Ok(ex.powi(p as i32 + 1) / ((2.0 * PI * q).sqrt() * (1.0 - ex)))
}

/// `(1/√(52π)) · (ex)^{26} / (1−ex)`: the degree-25 Stirling tail.
pub fn tail_stirling(x: f64) -> Result<f64> {
    tail_stirling_from(25, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath, 30 digits: root of Σ x^k/k^k = 1/2
    const X0: f64 = 0.446_661_574_510_168_1;
    // root of Σ_{k≤25} k^k/k! r^k + tail_stirling(r) = 1/2
    const EQ22_ROOT: f64 = 0.238_843_748_512_157_9;

    #[test]
    fn geometric_third() {
        let eq = SeriesEquation::geometric(0.5);
        let root = bisect_increasing(&eq, 200, 1e-12).unwrap();
        assert!(root.lo <= 1.0 / 3.0 && 1.0 / 3.0 <= root.hi);
        assert!(root.width() <= 1e-12);
    }

    #[test]
    fn eq19_bracket() {
        let eq = SeriesEquation::self_power_reciprocal(0.5);
        let root = bisect_increasing(&eq, 25, 1e-6).unwrap();
        assert!(root.lo <= X0 && X0 <= root.hi, "{root:?}");
        assert!(root.width() <= 1e-6);
        assert!(root.hi <= 0.446663);
        let fine = bisect_increasing(&eq, 25, DEFAULT_TOL).unwrap();
        assert!(fine.lo <= X0 && X0 <= fine.hi);
        assert!((fine.lo * 1e6).round() / 1e6 == 0.446662);
        assert!(root.verify(&eq, 50) && fine.verify(&eq, 50));
    }

    #[test]
    fn eq22_lower_bracket() {
        let eq = SeriesEquation::stirling_series(0.5);
        let root = bisect_best_effort(&eq, 25, DEFAULT_TOL).unwrap();
        assert!(root.lo >= 0.238843, "{root:?}");
        assert!(root.lo <= EQ22_ROOT);
        let (ok, _, _) = eq.below(25, root.lo);
        assert!(ok);
        // the bracket cannot reach 1e-9 with the degree-25 tail
        assert!(matches!(
            bisect_increasing(&eq, 25, DEFAULT_TOL),
            Err(RootError::WidthUnattainable { .. })
        ));
    }

    #[test]
    fn tail_geometric_values() {
        assert!(tail_geometric(25, 0.45).unwrap() < 1e-34);
        assert!((tail_geometric(1, 0.5).unwrap() - 0.125).abs() < 1e-16);
        let mut prev = f64::INFINITY;
        for p in 1..60 {
            let t = tail_geometric(p, 0.6).unwrap();
            assert!(t < prev);
            prev = t;
        }
        assert!(tail_geometric(3, 1.0).is_err());
    }

    #[test]
    fn tail_geometric_bounds_true_tail() {
        for &x in &[0.1, 0.45, 0.9] {
            for p in [1u32, 5, 10] {
                let direct: f64 = (p + 1..200).map(|k| (x / k as f64).powi(k as i32)).sum();
                assert!(direct <= tail_geometric(p, x).unwrap());
            }
        }
    }

    #[test]
    fn stirling_tail_values() {
        let x = 0.238843;
        let t = tail_stirling(x).unwrap();
        let eq = SeriesEquation::stirling_series(0.5);
        assert!(t > 0.0);
        assert!(eq.partial_sum(25, x) + t < 0.5);
        assert!(tail_stirling(1e-6).unwrap() < 1e-100);
        let mut prev = 0.0;
        for i in 1..36 {
            let v = tail_stirling(i as f64 * 0.01).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(tail_stirling(0.37).is_err());
        let c = 1.0 / (52.0 * PI).sqrt();
        assert!((tail_stirling(0.2).unwrap() - c * (E * 0.2).powi(26) / (1.0 - E * 0.2)).abs() < 1e-18);
    }

    #[test]
    fn stirling_tail_dominates_direct_terms() {
        let eq = SeriesEquation::stirling_series(0.5);
        for &x in &[0.1, 0.2, 0.238843, 0.3, 0.35] {
            let direct: f64 = (26..=60).map(|k| eq.term(k, x)).sum();
            assert!(direct <= tail_stirling(x).unwrap(), "x={x}");
        }
    }

    #[test]
    fn errors() {
        let eq = SeriesEquation::geometric(0.5);
        assert_eq!(bisect_increasing(&eq, 10, 0.0), Err(RootError::InvalidTolerance(0.0)));
        let eq = SeriesEquation::geometric(0.5).with_interval(0.4, 0.9);
        assert!(matches!(
            bisect_increasing(&eq, 10, 1e-6),
            Err(RootError::NotBracketed { .. })
        ));
        let eq = SeriesEquation::self_power_reciprocal(0.5).with_interval(0.44, 0.9);
        assert!(matches!(
            bisect_increasing(&eq, 1, 1e-6),
            Err(RootError::TailTooLarge { .. })
        ));
    }

    #[test]
    fn doubled_degree_reverifies() {
        for eq in [
            SeriesEquation::geometric(0.5),
            SeriesEquation::self_power_reciprocal(0.5),
            SeriesEquation::self_power_reciprocal(0.9 / 1.9),
        ] {
            for p in [25u32, 40] {
                let root = bisect_increasing(&eq, p, 1e-9).unwrap_or_else(|e| panic!("{e}"));
                if eq.tail(p, root.lo) < 1e-12 {
                    assert!(root.verify(&eq, 2 * p));
                }
            }
        }
    }

    #[test]
    fn step_count_bound() {
        let eq = SeriesEquation::self_power_reciprocal(0.5);
        for tol in [1e-3, 1e-6, 1e-9, 1e-12] {
            let root = bisect_increasing(&eq, 25, tol).unwrap();
            let (lo, hi) = eq.interval();
            let bound = ((hi - lo) / tol).log2().ceil() as u32 + 1;
            assert!(root.steps <= bound, "{} > {bound}", root.steps);
        }
    }

    #[test]
    fn scaled_geometric_threshold() {
        for a in [0.5, 0.9, 0.99] {
            let eq = SeriesEquation::scaled_geometric(a, a / (1.0 + a));
            let root = bisect_increasing(&eq, 400, 1e-9).unwrap();
            let expect = 1.0 / (1.0 + 2.0 * a);
            assert!(root.lo <= expect + 1e-15 && expect - 1e-15 <= root.hi, "a={a} {root:?}");
        }
    }

    #[test]
    fn truncated_sweep_matches_six_decimals() {
        for p in 5..=25 {
            let eq = SeriesEquation::self_power_reciprocal(0.5).truncated();
            let r = bisect_increasing(&eq, p, 1e-10).unwrap();
            assert_eq!((r.lo * 1e6).round() as i64, 446662, "p={p}");
            assert_eq!((r.hi * 1e6).round() as i64, 446662, "p={p}");
        }
    }
}
