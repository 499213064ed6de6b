//! Truncated power series in `n` complex variables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::combinatorics::{big_to_f64, enumerate_weight, multinomial, MultiIndex};
use crate::domains::{check_radius, cone_l1_weight, DomainSpec};
use crate::sum::NeumaierSum;
use crate::{Error, Result};

/// Value of a series sum plus the total contribution of the top-degree
/// layer, which callers use to judge truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: f64,
    pub top_layer: f64,
}

/// `Σ c_α z^α` cut at total degree `cap`. Absent coefficients are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    dimension: usize,
    cap: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TruncatedSeries {
    pub fn new(dimension: usize, cap: u32) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dimension,
            cap,
            coeffs: BTreeMap::new(),
        })
    }

    /// One-variable series with coefficients `c_0, …, c_K`.
    pub fn from_coefficients(coeffs: &[Complex64]) -> Result<Self> {
        let cap = coeffs.len().saturating_sub(1) as u32;
        let mut s = Self::new(1, cap)?;
        for (k, &c) in coeffs.iter().enumerate() {
            s.insert(MultiIndex::from([k as u32]), c)?;
        }
        Ok(s)
    }

    /// Sets `c_α`; a zero coefficient removes the entry.
    pub fn insert(&mut self, alpha: MultiIndex, c: Complex64) -> Result<()> {
        if alpha.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: alpha.dimension(),
            });
        }
        if alpha.weight() > self.cap {
            return Err(Error::AboveCap {
                index: alpha.to_string(),
                cap: self.cap,
            });
        }
        if c == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&alpha);
        } else {
            self.coeffs.insert(alpha, c);
        }
        Ok(())
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs.get(alpha).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c *= factor;
        }
        out
    }

    /// Expansion of `f_a(z) = (1+a)/2 · (1 − Σz_j)/(1 − aΣz_j)`, bounded by
    /// one on the hypercone.
    ///
    /// `c_0 = (1+a)/2`, and `c_α = −((1−a²)/2)·a^{k−1}·multinomial(α)` for
    /// `|α| = k ≥ 1`.
    pub fn extremal_cone_family(a: f64, n: usize, cap: u32) -> Result<Self> {
        check_open_unit(a)?;
        let mut s = Self::new(n, cap)?;
        s.insert(MultiIndex::zero(n), Complex64::from((1.0 + a) / 2.0))?;
        let half = (1.0 - a * a) / 2.0;
        for k in 1..=cap {
            let layer = -half * a.powi(k as i32 - 1);
            for alpha in enumerate_weight(n, k)? {
                let c = layer * big_to_f64(&multinomial(&alpha));
                s.insert(alpha, Complex64::from(c))?;
            }
        }
        Ok(s)
    }

    /// Expansion of the disk automorphism `(a − z)/(1 − az)`:
    /// `c_0 = a`, `c_k = −(1−a²)a^{k−1}`.
    pub fn mobius_witness(a: f64, cap: u32) -> Result<Self> {
        check_open_unit(a)?;
        let mut coeffs = vec![Complex64::from(a)];
        coeffs.extend((1..=cap).map(|k| Complex64::from(-(1.0 - a * a) * a.powi(k as i32 - 1))));
        Self::from_coefficients(&coeffs)
    }

    /// `f(a₁z₁ + … + a_nz_n)` for a one-variable `f`.
    pub fn compose_linear(&self, direction: &[Complex64]) -> Result<Self> {
        if self.dimension != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dimension,
            });
        }
        let n = direction.len();
        let mut out = Self::new(n, self.cap)?;
        for (idx, &fk) in &self.coeffs {
            let k = idx.weight();
            for alpha in enumerate_weight(n, k)? {
                let mono = monomial_value(&alpha, direction);
                let c = fk * big_to_f64(&multinomial(&alpha)) * mono;
                out.insert(alpha, c)?;
            }
        }
        Ok(out)
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: z.len(),
            });
        }
        Ok(())
    }

    /// `Σ c_α z^α`, summed in lexicographic index order.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_point(z)?;
        let powers = power_table(z, self.cap);
        let mut re = NeumaierSum::new();
        let mut im = NeumaierSum::new();
        for (alpha, c) in &self.coeffs {
            let term = c * tabulated_monomial(alpha, &powers);
            re += term.re;
            im += term.im;
        }
        Ok(Complex64::new(re.value(), im.value()))
    }

    fn weighted_sum<F>(&self, mut weight: F) -> Result<SeriesSum>
    where
        F: FnMut(&MultiIndex) -> Result<f64>,
    {
        let mut total = NeumaierSum::new();
        let mut top = NeumaierSum::new();
        for (alpha, c) in &self.coeffs {
            let term = c.norm() * weight(alpha)?;
            total += term;
            if alpha.weight() == self.cap {
                top += term;
            }
        }
        Ok(SeriesSum {
            value: total.value(),
            top_layer: top.value(),
        })
    }

    /// Majorant sum `Σ |c_α| d_α(D_r)`.
    pub fn bohr_majorant_sum(&self, domain: &DomainSpec, r: f64) -> Result<SeriesSum> {
        check_radius(r)?;
        if domain.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: domain.dimension(),
            });
        }
        self.weighted_sum(|alpha| domain.scaled_monomial_sup(alpha, r))
    }

    /// L¹ sum `Σ |c_α| ‖z^α‖_{L¹(∂D°_r)}` on the hypercone boundary.
    pub fn cone_l1_sum(&self, r: f64) -> Result<SeriesSum> {
        check_radius(r)?;
        let n = self.dimension;
        self.weighted_sum(|alpha| cone_l1_weight(alpha, n, r))
    }

    /// Groups coefficients into homogeneous layers `P_0, …, P_K`.
    pub fn to_homogeneous(&self) -> HomogeneousExpansion {
        let mut layers = vec![BTreeMap::new(); self.cap as usize + 1];
        for (alpha, &c) in &self.coeffs {
            layers[alpha.weight() as usize].insert(alpha.clone(), c);
        }
        HomogeneousExpansion {
            dimension: self.dimension,
            layers,
        }
    }

    /// Plain-text form: a header line `n K`, then one line per stored
    /// coefficient with the index parts followed by the real and imaginary
    /// parts in 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dimension, self.cap);
        for (alpha, c) in &self.coeffs {
            let parts: Vec<String> = alpha.parts().iter().map(u32::to_string).collect();
            writeln!(out, "{}  {:.16e}  {:.16e}", parts.join(" "), c.re, c.im).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, message: String| Error::Parse {
            line: line + 1,
            message,
        };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "missing header".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(err(hl, "header must be `n K`".into()));
        }
        let n: usize = head[0].parse().map_err(|e| err(hl, format!("{e}")))?;
        let cap: u32 = head[1].parse().map_err(|e| err(hl, format!("{e}")))?;
        let mut s = Self::new(n, cap)?;
        for (i, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != n + 2 {
                return Err(err(i, format!("expected {} fields, found {}", n + 2, tokens.len())));
            }
            let parts = tokens[..n]
                .iter()
                .map(|t| t.parse::<u32>().map_err(|e| err(i, format!("{t}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let re: f64 = tokens[n].parse().map_err(|e| err(i, format!("{e}")))?;
            let im: f64 = tokens[n + 1].parse().map_err(|e| err(i, format!("{e}")))?;
            s.insert(MultiIndex::new(parts)?, Complex64::new(re, im))
                .map_err(|e| err(i, e.to_string()))?;
        }
        Ok(s)
    }
}

/// Decomposition `f = Σ_k P_k` into homogeneous polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousExpansion {
    dimension: usize,
    layers: Vec<BTreeMap<MultiIndex, Complex64>>,
}

impl HomogeneousExpansion {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn layers(&self) -> &[BTreeMap<MultiIndex, Complex64>] {
        &self.layers
    }

    /// Inverse of [`TruncatedSeries::to_homogeneous`].
    pub fn to_series(&self) -> TruncatedSeries {
        let mut coeffs = BTreeMap::new();
        for layer in &self.layers {
            coeffs.extend(layer.iter().map(|(a, c)| (a.clone(), *c)));
        }
        TruncatedSeries {
            dimension: self.dimension,
            cap: self.layers.len().saturating_sub(1) as u32,
            coeffs,
        }
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: z.len(),
            });
        }
        Ok(())
    }

    /// One-variable coefficients `(P_0(a), P_1(a), …, P_K(a))` of `t ↦ f(at)`.
    pub fn slice_to_line(&self, direction: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(direction)?;
        let cap = self.layers.len().saturating_sub(1) as u32;
        let powers = power_table(direction, cap);
        Ok(self
            .layers
            .iter()
            .map(|layer| {
                let mut re = NeumaierSum::new();
                let mut im = NeumaierSum::new();
                for (alpha, c) in layer {
                    let t = c * tabulated_monomial(alpha, &powers);
                    re += t.re;
                    im += t.im;
                }
                Complex64::new(re.value(), im.value())
            })
            .collect())
    }

    /// `Σ_k |P_k(z)|`.
    pub fn homogeneous_bohr_sum(&self, z: &[Complex64]) -> Result<f64> {
        let values = self.slice_to_line(z)?;
        Ok(values.iter().map(|v| v.norm()).sum::<NeumaierSum>().value())
    }
}

fn monomial_value(alpha: &MultiIndex, z: &[Complex64]) -> Complex64 {
    alpha
        .parts()
        .iter()
        .zip(z)
        .fold(Complex64::new(1.0, 0.0), |acc, (&a, &zj)| acc * zj.powu(a))
}

/// `powers[j][a] = z_j^a` for `a = 0..=cap`.
fn power_table(z: &[Complex64], cap: u32) -> Vec<Vec<Complex64>> {
    z.iter()
        .map(|&zj| {
            let mut p = Vec::with_capacity(cap as usize + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=cap {
                p.push(acc);
                acc *= zj;
            }
            p
        })
        .collect()
}

fn tabulated_monomial(alpha: &MultiIndex, powers: &[Vec<Complex64>]) -> Complex64 {
    alpha
        .parts()
        .iter()
        .enumerate()
        .fold(Complex64::new(1.0, 0.0), |acc, (j, &a)| acc * powers[j][a as usize])
}

fn check_open_unit(a: f64) -> Result<()> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "must lie in (0, 1)",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{big_to_f64, simplex_count};
    use crate::domains::DomainSpec;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn extremal_family_coefficients() {
        let f = TruncatedSeries::extremal_cone_family(0.5, 1, 1).unwrap();
        assert_eq!(f.coefficient(&MultiIndex::from([0])), c(0.75));
        assert_eq!(f.coefficient(&MultiIndex::from([1])), c(-0.375));
        let g = TruncatedSeries::extremal_cone_family(0.5, 2, 1).unwrap();
        assert_eq!(g.coefficient(&MultiIndex::from([1, 0])), c(-0.375));
        assert_eq!(g.coefficient(&MultiIndex::from([0, 1])), c(-0.375));
        // small a approaches (1 - z)/2
        let h = TruncatedSeries::extremal_cone_family(1e-9, 1, 3).unwrap();
        assert!(close(h.coefficient(&MultiIndex::from([0])).re, 0.5, 1e-8));
        assert!(close(h.coefficient(&MultiIndex::from([1])).re, -0.5, 1e-8));
        assert!(h.coefficient(&MultiIndex::from([2])).norm() < 1e-8);
        assert!(TruncatedSeries::extremal_cone_family(1.0, 1, 3).is_err());
        assert!(TruncatedSeries::extremal_cone_family(0.0, 1, 3).is_err());
    }

    #[test]
    fn extremal_family_matches_geometric_expansion() {
        // (1+a)/2 (1-w)/(1-aw) = (1+a)/2 [1 + Σ_{k≥1} (a^k - a^{k-1}) w^k]
        let a = 0.7;
        let f = TruncatedSeries::extremal_cone_family(a, 1, 12).unwrap();
        for k in 1..=12u32 {
            let oracle = (1.0 + a) / 2.0 * (a.powi(k as i32) - a.powi(k as i32 - 1));
            assert!(close(f.coefficient(&MultiIndex::from([k])).re, oracle, 1e-15));
        }
    }

    #[test]
    fn mobius_coefficients() {
        let m = TruncatedSeries::mobius_witness(0.5, 2).unwrap();
        let got: Vec<f64> = (0..=2).map(|k| m.coefficient(&MultiIndex::from([k])).re).collect();
        assert_eq!(got, vec![0.5, -0.75, -0.375]);
        let near = TruncatedSeries::mobius_witness(0.999999, 3).unwrap();
        assert!(close(near.coefficient(&MultiIndex::from([0])).re, 1.0, 1e-5));
        assert!(near.coefficient(&MultiIndex::from([2])).norm() < 1e-5);
    }

    #[test]
    fn mobius_bohr_threshold() {
        // a + (1-a²) r/(1-ar) = 1  ⟺  r = 1/(1+2a)
        let disk = DomainSpec::polydisk(1).unwrap();
        for a in [0.3, 0.5, 0.8] {
            let r = 1.0 / (1.0 + 2.0 * a);
            let mut prev = 0.0;
            for cap in [5, 10, 20, 40, 80] {
                let s = TruncatedSeries::mobius_witness(a, cap)
                    .unwrap()
                    .bohr_majorant_sum(&disk, r)
                    .unwrap()
                    .value;
                // the truncation is below 1 exactly; allow rounding once the tail vanishes
                assert!(s <= 1.0 + 4.0 * f64::EPSILON && s >= prev);
                prev = s;
            }
            assert!(close(prev, 1.0, 1e-12));
        }
    }

    #[test]
    fn compose_examples() {
        let id = TruncatedSeries::from_coefficients(&[c(0.0), c(1.0)]).unwrap();
        let g = id.compose_linear(&[c(1.0), c(1.0)]).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.coefficient(&MultiIndex::from([1, 0])), c(1.0));
        assert_eq!(g.coefficient(&MultiIndex::from([0, 1])), c(1.0));

        let sq = TruncatedSeries::from_coefficients(&[c(0.0), c(0.0), c(1.0)]).unwrap();
        let g = sq.compose_linear(&[c(1.0), c(1.0)]).unwrap();
        assert_eq!(g.coefficient(&MultiIndex::from([2, 0])), c(1.0));
        assert_eq!(g.coefficient(&MultiIndex::from([1, 1])), c(2.0));
        assert_eq!(g.coefficient(&MultiIndex::from([0, 2])), c(1.0));

        let m = TruncatedSeries::mobius_witness(0.6, 6).unwrap();
        let e = m.compose_linear(&[c(1.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(e.len(), m.len());
        for k in 0..=6u32 {
            assert_eq!(
                e.coefficient(&MultiIndex::from([k, 0, 0])),
                m.coefficient(&MultiIndex::from([k]))
            );
        }
        assert_eq!(m.compose_linear(&[]), Err(Error::ZeroDimension));
        assert!(g.compose_linear(&[c(1.0)]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let f = TruncatedSeries::from_coefficients(&[c(1.0), c(1.0)]).unwrap();
        assert_eq!(f.evaluate(&[c(0.0)]).unwrap(), c(1.0));
        let g = TruncatedSeries::extremal_cone_family(0.4, 3, 8).unwrap();
        assert_eq!(g.evaluate(&[c(0.0); 3]).unwrap(), c(0.7));
        assert!(g.evaluate(&[c(0.0); 2]).is_err());
        let m = TruncatedSeries::mobius_witness(0.5, 40).unwrap();
        assert!(m.evaluate(&[c(0.5)]).unwrap().norm() < 1e-10);
    }

    #[test]
    fn majorant_examples() {
        let k = TruncatedSeries::from_coefficients(&[c(-0.4)]).unwrap();
        assert_eq!(
            k.bohr_majorant_sum(&DomainSpec::ball(1).unwrap(), 0.7).unwrap().value,
            0.4
        );

        // c_α = 1/d_α on the polydisk gives Σ_k C(n+k-1,k) r^k
        let (n, cap, r) = (3usize, 9u32, 0.3f64);
        let mut f = TruncatedSeries::new(n, cap).unwrap();
        for k in 0..=cap {
            for a in enumerate_weight(n, k).unwrap() {
                f.insert(a, c(1.0)).unwrap();
            }
        }
        let oracle: f64 = (0..=cap)
            .map(|k| big_to_f64(&simplex_count(n, k)) * r.powi(k as i32))
            .sum();
        let got = f.bohr_majorant_sum(&DomainSpec::polydisk(n).unwrap(), r).unwrap();
        assert!(close(got.value, oracle, 1e-13));
        assert!(close(
            got.top_layer,
            big_to_f64(&simplex_count(n, cap)) * r.powi(cap as i32),
            1e-15
        ));
        assert!(f.bohr_majorant_sum(&DomainSpec::polydisk(n).unwrap(), 1.1).is_err());
        assert!(f.bohr_majorant_sum(&DomainSpec::polydisk(2).unwrap(), 0.5).is_err());
    }

    #[test]
    fn cone_l1_examples() {
        let disk = DomainSpec::polydisk(1).unwrap();
        let m = TruncatedSeries::mobius_witness(0.6, 30).unwrap();
        for r in [0.1, 0.3, 0.9] {
            assert!(close(
                m.cone_l1_sum(r).unwrap().value,
                m.bohr_majorant_sum(&disk, r).unwrap().value,
                1e-15
            ));
        }
        for n in 1..=3usize {
            let (a, r, cap) = (0.8, 0.35, 25u32);
            let f = TruncatedSeries::extremal_cone_family(a, n, cap).unwrap();
            let geo: f64 = (1..=cap).map(|k| (a * r).powi(k as i32)).sum();
            let oracle = (1.0 + a) / 2.0 + (1.0 - a * a) / (2.0 * a) * geo;
            assert!(close(f.cone_l1_sum(r).unwrap().value, oracle, 1e-13), "n={n}");
        }
        let k = TruncatedSeries::from_coefficients(&[c(0.25)]).unwrap();
        assert_eq!(k.cone_l1_sum(0.9).unwrap().value, 0.25);
        assert!(k.cone_l1_sum(0.0).is_err());
    }

    #[test]
    fn homogeneous_examples() {
        let mut f = TruncatedSeries::new(2, 2).unwrap();
        f.insert(MultiIndex::from([0, 0]), c(1.0)).unwrap();
        f.insert(MultiIndex::from([1, 0]), c(1.0)).unwrap();
        f.insert(MultiIndex::from([1, 1]), c(1.0)).unwrap();
        let h = f.to_homogeneous();
        assert_eq!(h.layers().len(), 3);
        assert!(h.layers().iter().all(|l| l.len() == 1));
        assert!(h.layers()[2].contains_key(&MultiIndex::from([1, 1])));
        assert_eq!(h.to_series(), f);

        let empty = TruncatedSeries::new(3, 4).unwrap().to_homogeneous();
        assert!(empty.layers().iter().all(|l| l.is_empty()));

        let mut zz = TruncatedSeries::new(2, 2).unwrap();
        zz.insert(MultiIndex::from([1, 1]), c(1.0)).unwrap();
        let hz = zz.to_homogeneous();
        assert_eq!(
            hz.slice_to_line(&[c(1.0), c(1.0)]).unwrap(),
            vec![c(0.0), c(0.0), c(1.0)]
        );

        let s0 = h.slice_to_line(&[c(0.0), c(0.0)]).unwrap();
        assert_eq!(s0, vec![c(1.0), c(0.0), c(0.0)]);
        assert!(h.slice_to_line(&[c(0.0)]).is_err());
    }

    #[test]
    fn homogeneous_bohr_sum_examples() {
        let k = TruncatedSeries::from_coefficients(&[c(-0.3)])
            .unwrap()
            .compose_linear(&[c(1.0), c(2.0)])
            .unwrap()
            .to_homogeneous();
        assert_eq!(k.homogeneous_bohr_sum(&[c(0.4), c(-0.1)]).unwrap(), 0.3);

        let a = 0.6;
        let h = TruncatedSeries::mobius_witness(a, 60)
            .unwrap()
            .compose_linear(&[c(1.0), c(0.0), c(0.0)])
            .unwrap()
            .to_homogeneous();
        for x in [0.1, 0.3, 0.5] {
            let z = [c(x), c(0.2), c(-0.7)];
            let s = h.homogeneous_bohr_sum(&z).unwrap();
            let line: f64 = h.slice_to_line(&z).unwrap().iter().map(|v| v.norm()).sum();
            assert!(close(s, line, 1e-14));
            assert!(close(s, a + (1.0 - a * a) * x / (1.0 - a * x), 1e-12));
        }
    }

    #[test]
    fn text_format() {
        let f = TruncatedSeries::mobius_witness(0.3, 3).unwrap();
        let text = f.to_text();
        assert!(text.starts_with("1 3\n0  2.9999999999999999e-1  0.0000000000000000e0\n"));
        assert_eq!(TruncatedSeries::from_text(&text).unwrap(), f);
        assert!(matches!(
            TruncatedSeries::from_text("2 1\n1 0 0.5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            TruncatedSeries::from_text("1 1\n2 0.5 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(TruncatedSeries::from_text("").is_err());
    }

    #[test]
    fn evaluation_bounded_by_majorant_on_samples() {
        for n in 1..=3usize {
            let cap = if n == 3 { 8 } else { 20 };
            let f = TruncatedSeries::extremal_cone_family(0.7, n, cap).unwrap();
            let r = 0.8;
            for dom in [
                DomainSpec::polydisk(n).unwrap(),
                DomainSpec::ball(n).unwrap(),
                DomainSpec::hypercone(n).unwrap(),
            ] {
                let bound = f.bohr_majorant_sum(&dom, r).unwrap().value;
                for p in dom.boundary_sample(5).unwrap() {
                    let z: Vec<Complex64> = p.iter().map(|v| v * r).collect();
                    assert!(f.evaluate(&z).unwrap().norm() <= bound * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn extremal_family_bounded_on_hypercone() {
        for &a in &[0.3, 0.6, 0.9] {
            let tail = (a * 0.999f64).powi(61) / (1.0 - a * 0.999);
            for n in 1..=3usize {
                let f = TruncatedSeries::extremal_cone_family(a, n, 60).unwrap();
                let density = if n == 3 { 4 } else { 8 };
                let dom = DomainSpec::hypercone(n).unwrap();
                for p in dom.boundary_sample(density).unwrap() {
                    let z: Vec<Complex64> = p.iter().map(|v| v * 0.999).collect();
                    assert!(f.evaluate(&z).unwrap().norm() < 1.0 + tail);
                }
            }
        }
    }

    fn direction(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
            .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    }

    fn one_dim_series() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..11)
            .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn slice_of_composition_collapses(
            f in one_dim_series(),
            (a, b) in (1usize..4).prop_flat_map(|n| (direction(n), direction(n))),
        ) {
            let series = TruncatedSeries::from_coefficients(&f).unwrap();
            let h = series.compose_linear(&a).unwrap().to_homogeneous();
            let s: Complex64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
            let got = h.slice_to_line(&b).unwrap();
            for (k, fk) in f.iter().enumerate() {
                let expect = fk * s.powu(k as u32);
                prop_assert!((got[k] - expect).norm() <= 1e-12);
            }
        }

        #[test]
        fn homogeneous_round_trip(coeffs in prop::collection::vec(((0u32..4, 0u32..4), -1.0f64..1.0), 0..12)) {
            let mut f = TruncatedSeries::new(2, 6).unwrap();
            for ((i, j), v) in coeffs {
                f.insert(MultiIndex::from([i, j]), Complex64::new(v, -v)).unwrap();
            }
            prop_assert_eq!(f.to_homogeneous().to_series(), f);
        }

        #[test]
        fn text_round_trip_is_exact(coeffs in prop::collection::vec((0u32..6, any::<f64>(), any::<f64>()), 1..8)) {
            let mut f = TruncatedSeries::new(1, 5).unwrap();
            for (k, re, im) in coeffs {
                if re.is_finite() && im.is_finite() {
                    f.insert(MultiIndex::from([k]), Complex64::new(re, im)).unwrap();
                }
            }
            prop_assert_eq!(TruncatedSeries::from_text(&f.to_text()).unwrap(), f);
        }

        #[test]
        fn majorant_monotone_in_r_and_cap(a in 0.05f64..0.95, r1 in 0.01f64..1.0, r2 in 0.01f64..1.0, n in 1usize..4) {
            let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
            let dom = DomainSpec::hypercone(n).unwrap();
            let f = TruncatedSeries::extremal_cone_family(a, n, 8).unwrap();
            let g = TruncatedSeries::extremal_cone_family(a, n, 9).unwrap();
            let s_lo = f.bohr_majorant_sum(&dom, lo).unwrap().value;
            let s_hi = f.bohr_majorant_sum(&dom, hi).unwrap().value;
            prop_assert!(s_lo <= s_hi);
            prop_assert!(s_hi <= g.bohr_majorant_sum(&dom, hi).unwrap().value);
        }
    }
}
