//! Complete Reinhardt domains and the monomial sup-norms `d_α(D)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::{
    big_to_f64, enumerate_weight, ln_self_power, multinomial, power_of_self, self_power, simplex_count, MultiIndex,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    /// `{|z_j| < 1 for all j}`
    Polydisk,
    /// `{Σ |z_j|² < 1}`
    Ball,
    /// `{Σ |z_j| < 1}`
    Hypercone,
    /// `{|z^β| < c}` with coprime `β`; unbounded, only its radius is known in
    /// closed form.
    Monomial { beta: MultiIndex },
    /// User-supplied `d_α` table.
    Custom { table: BTreeMap<MultiIndex, f64> },
}

impl DomainKind {
    pub fn name(&self) -> &'static str {
        match self {
            DomainKind::Polydisk => "polydisk",
            DomainKind::Ball => "ball",
            DomainKind::Hypercone => "hypercone",
            DomainKind::Monomial { .. } => "monomial",
            DomainKind::Custom { .. } => "custom",
        }
    }
}

/// A complete n-circular domain of a fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    kind: DomainKind,
    dimension: usize,
}

impl DomainSpec {
    fn named(kind: DomainKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { kind, dimension: n })
    }

    pub fn polydisk(n: usize) -> Result<Self> {
        Self::named(DomainKind::Polydisk, n)
    }

    pub fn ball(n: usize) -> Result<Self> {
        Self::named(DomainKind::Ball, n)
    }

    pub fn hypercone(n: usize) -> Result<Self> {
        Self::named(DomainKind::Hypercone, n)
    }

    pub fn monomial(beta: MultiIndex) -> Result<Self> {
        let g = beta.parts().iter().fold(0u32, |g, &b| g.gcd(&b));
        if g != 1 {
            return Err(Error::NotCoprime(beta.to_string()));
        }
        let n = beta.dimension();
        Self::named(DomainKind::Monomial { beta }, n)
    }

    pub fn custom(n: usize, table: BTreeMap<MultiIndex, f64>) -> Result<Self> {
        for (alpha, &d) in &table {
            if alpha.dimension() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: alpha.dimension(),
                });
            }
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "d_alpha",
                    value: d,
                    reason: "table values must be positive and finite",
                });
            }
        }
        Self::named(DomainKind::Custom { table }, n)
    }

    /// Parses a custom `d_α` table.
    ///
    /// One entry per line: the `n` parts of the multi-index separated by
    /// whitespace, then the value of `d_α`. Blank lines and lines starting
    /// with `#` are skipped. The dimension is taken from the first entry.
    pub fn custom_from_text(text: &str) -> Result<Self> {
        let mut table = BTreeMap::new();
        let mut dim = None;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |message: String| Error::Parse { line: i + 1, message };
            if tokens.len() < 2 {
                return Err(parse_err("expected index parts followed by a value".into()));
            }
            let (idx, val) = tokens.split_at(tokens.len() - 1);
            let parts = idx
                .iter()
                .map(|t| t.parse::<u32>().map_err(|e| parse_err(format!("{t}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let value: f64 = val[0].parse().map_err(|e| parse_err(format!("{}: {e}", val[0])))?;
            let n = *dim.get_or_insert(parts.len());
            if parts.len() != n {
                return Err(parse_err(format!("expected {n} index parts, found {}", parts.len())));
            }
            table.insert(MultiIndex::new(parts)?, value);
        }
        let n = dim.ok_or(Error::Parse {
            line: 0,
            message: "empty table".into(),
        })?;
        Self::custom(n, table)
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    fn check_dim(&self, alpha: &MultiIndex) -> Result<()> {
        if alpha.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: alpha.dimension(),
            });
        }
        Ok(())
    }

    /// `d_α(D) = max over the closure of D of |z^α|`.
    pub fn monomial_sup(&self, alpha: &MultiIndex) -> Result<f64> {
        self.check_dim(alpha)?;
        match &self.kind {
            DomainKind::Polydisk => Ok(1.0),
            DomainKind::Hypercone => Ok(hypercone_sup_exact(alpha).to_f64().unwrap_or(0.0)),
            DomainKind::Ball => {
                if alpha.is_zero() {
                    return Ok(1.0);
                }
                let k = alpha.weight() as f64;
                Ok((0.5 * (ln_self_power(alpha) - k * k.ln())).exp())
            }
            DomainKind::Monomial { .. } => Err(Error::UnsupportedDomain("monomial")),
            DomainKind::Custom { table } => table
                .get(alpha)
                .copied()
                .ok_or_else(|| Error::MissingTableEntry(alpha.to_string())),
        }
    }

    /// `d_α(D_r) = r^{|α|} d_α(D)`.
    pub fn scaled_monomial_sup(&self, alpha: &MultiIndex, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(r.powi(alpha.weight() as i32) * self.monomial_sup(alpha)?)
    }

    /// Deterministic grid on the boundary of `D`.
    ///
    /// Polydisk: torus points with `density` equally spaced phases per
    /// coordinate. Ball and hypercone: moduli on an equal subdivision of the
    /// simplex (`|z_j|² = i_j/density` or `|z_j| = i_j/density`), each nonzero
    /// coordinate crossed with `density` phases. The maximum of `|f|` over the
    /// grid is a lower bound for its sup on the closed domain.
    pub fn boundary_sample(&self, density: usize) -> Result<Vec<Vec<Complex64>>> {
        if density == 0 {
            return Err(Error::InvalidParameter {
                name: "density",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        let n = self.dimension;
        let phases: Vec<Complex64> = (0..density)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / density as f64))
            .collect();
        let moduli: Vec<Vec<f64>> = match &self.kind {
            DomainKind::Polydisk => vec![vec![1.0; n]],
            DomainKind::Ball | DomainKind::Hypercone => {
                let square = matches!(self.kind, DomainKind::Ball);
                enumerate_weight(n, density as u32)?
                    .into_iter()
                    .map(|idx| {
                        idx.parts()
                            .iter()
                            .map(|&i| {
                                let t = i as f64 / density as f64;
                                if square {
                                    t.sqrt()
                                } else {
                                    t
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
            DomainKind::Monomial { .. } => return Err(Error::UnsupportedDomain("monomial")),
            DomainKind::Custom { .. } => return Err(Error::UnsupportedDomain("custom")),
        };

        let mut points = Vec::new();
        for m in &moduli {
            let mut partial: Vec<Vec<Complex64>> = vec![Vec::with_capacity(n)];
            for &rho in m {
                let choices: &[Complex64] = if rho == 0.0 { &phases[..1] } else { &phases };
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        choices.iter().map(move |&ph| {
                            let mut q = p.clone();
                            q.push(ph * rho);
                            q
                        })
                    })
                    .collect();
            }
            points.extend(partial);
        }
        Ok(points)
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::RadiusOutOfRange(r))
    }
}

/// `d_α(D°) = α^α / |α|^{|α|}` as an exact rational; equals `d_α(D¹)²`.
pub fn hypercone_sup_exact(alpha: &MultiIndex) -> BigRational {
    BigRational::new(
        BigInt::from(self_power(alpha)),
        BigInt::from(power_of_self(alpha.weight())),
    )
}

/// `∫_{∂D¹} |z^{2α}| dμ = α!(n−1)!/(|α|+n−1)!`, exact.
pub fn sphere_moment(alpha: &MultiIndex, n: usize) -> Result<BigRational> {
    if alpha.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alpha.dimension(),
        });
    }
    // α!(n−1)!/(k+n−1)! = 1 / (multinomial(α) · C(n+k−1, k))
    let denom = multinomial(alpha) * simplex_count(n, alpha.weight());
    Ok(BigRational::new(BigInt::one(), BigInt::from(denom)))
}

/// L¹ weight of `z^α` on `∂D°_r`: `α!(n−1)!/(|α|+n−1)! · r^{|α|}`.
pub fn cone_l1_weight(alpha: &MultiIndex, n: usize, r: f64) -> Result<f64> {
    check_radius(r)?;
    if alpha.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alpha.dimension(),
        });
    }
    let denom = multinomial(alpha) * simplex_count(n, alpha.weight());
    let w = if denom.is_zero() { 0.0 } else { 1.0 / big_to_f64(&denom) };
    Ok(w * r.powi(alpha.weight() as i32))
}
