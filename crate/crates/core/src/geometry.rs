//! Metric geometry of the canonical curve: wedge norms, the solutions `u_k`
//! with their bounded remainders, the coordinate normalization `xi(z)`, and
//! the simplified `xi`-chart densities.
//!
//! Everything here evaluates moduli only, so all outputs are single-valued on
//! the punctured disk even though the curve itself is branched. Near the
//! origin the singular part `2 gamma_k log|z|` is carried exactly and the
//! bounded remainder is evaluated through the shifted expansions, so no large
//! logarithms are ever subtracted.

use num_complex::Complex64 as C64;

use crate::error::{Result, TodaError};
use crate::exponents::ExponentData;
use crate::series::TruncatedSeries;
use crate::wronskian::{series_tail_radius, wedge_expansion, LambdaExpansion, SeedData};

/// Agreement tolerance between the two routes to `u_k`.
const U_ROUTE_TOL: f64 = 1e-10;

/// Residual threshold for the first-two-components invariant of the chart.
const CHART_UNIT_TOL: f64 = 1e-10;

/// Tail tolerance defining validity radii.
const TAIL_TOL: f64 = 1e-9;

/// One metric sample: the density `e^{u_k}` against `|dz|^2`, the solution
/// value, and the bounded remainder `R_k = u_k - 2 gamma_k log|z|`.
#[derive(Clone, Copy, Debug)]
pub struct MetricSample {
    pub z: C64,
    pub k: usize,
    pub density: f64,
    pub u: f64,
    pub remainder: f64,
}

/// Cached wedge expansions of a normalized seed, for batch evaluation.
pub struct CurveEvaluator {
    exponents: ExponentData,
    expansions: Vec<LambdaExpansion>,
    validity: f64,
}

impl CurveEvaluator {
    pub fn new(seed: &SeedData) -> Result<Self> {
        if !seed.is_normalized() {
            return Err(TodaError::NotNormalized);
        }
        let n = seed.rank();
        let betas = seed.exponents().beta().to_vec();
        let expansions = (0..=n)
            .map(|k| wedge_expansion(&betas, seed.seeds(), k))
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveEvaluator {
            exponents: seed.exponents().clone(),
            expansions,
            validity: seed.validity_radius(TAIL_TOL),
        })
    }

    pub fn rank(&self) -> usize {
        self.exponents.rank()
    }

    pub fn exponents(&self) -> &ExponentData {
        &self.exponents
    }

    /// Validity radius of the underlying seed series (advisory; grid
    /// validation happens in the verification layer).
    pub fn validity_radius(&self) -> f64 {
        self.validity
    }

    /// Bounded factor of `|Lambda_level|^2`: the expansion sum with the
    /// minimal exponent stripped, so the leading term carries no power of
    /// `|z|` at all. Strictly positive, smooth across `z = 0`.
    pub fn norm_sq_bounded(&self, level: usize, z: C64) -> Result<f64> {
        let r = z.norm();
        if r < f64::MIN_POSITIVE {
            return Err(TodaError::SingularEvaluation);
        }
        let expansion = &self.expansions[level];
        let e0 = expansion.base_term().exponent;
        let log_r = r.ln();
        let mut acc = 0.0;
        for (pos, term) in expansion.terms.iter().enumerate() {
            let g = term.coeff.eval(z).norm_sqr();
            if pos == 0 {
                acc += g;
            } else {
                acc += (2.0 * (term.exponent - e0) * log_r).exp() * g;
            }
        }
        Ok(acc)
    }

    /// `log |Lambda_level|^2 = 2 e_min log|z| + log(bounded part)`.
    pub fn log_norm_sq(&self, level: usize, z: C64) -> Result<f64> {
        let e0 = self.expansions[level].base_term().exponent;
        Ok(2.0 * e0 * z.norm().ln() + self.norm_sq_bounded(level, z)?.ln())
    }

    /// `|Lambda_level|^2` evaluated directly (moduli only).
    pub fn norm_sq(&self, level: usize, z: C64) -> Result<f64> {
        Ok(self.log_norm_sq(level, z)?.exp())
    }

    /// `|Lambda_level|^2` through complex branched term values on the sheet
    /// with branch angle `theta` (which may lie outside `(-pi, pi]`).
    /// Used by the branch-consistency check; the production path above never
    /// touches a branch choice.
    pub fn norm_sq_branched(&self, level: usize, r: f64, theta: f64) -> Result<f64> {
        if r < f64::MIN_POSITIVE {
            return Err(TodaError::SingularEvaluation);
        }
        let z = C64::from_polar(r, theta);
        let log_z = C64::new(r.ln(), theta);
        let mut acc = 0.0;
        for term in &self.expansions[level].terms {
            let v = (term.exponent * log_z).exp() * term.coeff.eval(z);
            acc += v.norm_sqr();
        }
        Ok(acc)
    }

    /// The Pluecker quotient `|Lambda_{k-1}|^2 |Lambda_{k+1}|^2 / |Lambda_k|^4`
    /// for `k = 0..n-1`, with `|Lambda_{-1}| = 1`.
    pub fn plucker_quotient(&self, k: usize, z: C64) -> Result<f64> {
        let low = if k == 0 { 0.0 } else { self.log_norm_sq(k - 1, z)? };
        let high = self.log_norm_sq(k + 1, z)?;
        let mid = self.log_norm_sq(k, z)?;
        Ok((low + high - 2.0 * mid).exp())
    }

    /// The solution value `u_k` with its bounded remainder.
    ///
    /// `u_k = -sum_j a_{kj} log |Lambda_{j-1}|^2` is evaluated in log space;
    /// the remainder uses the bounded expansion factors directly, so the
    /// singular part `2 gamma_k log|z|` never passes through a logarithm of a
    /// vanishing quantity. The two routes must agree.
    pub fn u(&self, k: usize, z: C64) -> Result<MetricSample> {
        let n = self.rank();
        assert!((1..=n).contains(&k), "component index 1..=n");
        Ok(self.samples(z)?[k - 1])
    }

    /// All components `u_1..u_n` at once, sharing the bounded norm
    /// evaluations across the Cartan rows.
    pub fn samples(&self, z: C64) -> Result<Vec<MetricSample>> {
        let n = self.rank();
        let r = z.norm();
        if r < f64::MIN_POSITIVE {
            return Err(TodaError::SingularEvaluation);
        }
        let log_r = r.ln();
        let bounded_ln = (0..n)
            .map(|level| Ok(self.norm_sq_bounded(level, z)?.ln()))
            .collect::<Result<Vec<f64>>>()?;
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut direct = 0.0;
            let mut remainder = 0.0;
            for j in 1..=n {
                let a = self.exponents.cartan_entry(k, j) as f64;
                if a == 0.0 {
                    continue;
                }
                let e0 = self.expansions[j - 1].base_term().exponent;
                direct -= a * (2.0 * e0 * log_r + bounded_ln[j - 1]);
                remainder -= a * bounded_ln[j - 1];
            }
            let gamma_k = self.exponents.gamma()[k - 1];
            let via_remainder = 2.0 * gamma_k * log_r + remainder;
            let discrepancy = (direct - via_remainder).abs();
            if discrepancy > U_ROUTE_TOL * direct.abs().max(1.0) {
                return Err(TodaError::InternalInconsistency {
                    context: format!("u_{k} routes (curve_sol vs remainder)"),
                    discrepancy,
                });
            }
            out.push(MetricSample {
                z,
                k,
                density: direct.exp(),
                u: direct,
                remainder,
            });
        }
        Ok(out)
    }

    /// `u_k` evaluated through complex branched values on an explicit sheet.
    pub fn u_branched(&self, k: usize, r: f64, theta: f64) -> Result<f64> {
        let n = self.rank();
        let mut u = 0.0;
        for j in 1..=n {
            let a = self.exponents.cartan_entry(k, j) as f64;
            if a != 0.0 {
                u -= a * self.norm_sq_branched(j - 1, r, theta)?.ln();
            }
        }
        Ok(u)
    }
}

fn check_domain(validity: f64, z: C64) -> Result<()> {
    if z.norm() > validity {
        return Err(TodaError::OutOfDomain {
            radius: z.norm(),
            validity,
        });
    }
    Ok(())
}

/// `|Lambda_k(nu)|^2` of the canonical curve of a normalized seed at `z`.
pub fn lambda_norm_sq(seed: &SeedData, k: usize, z: C64) -> Result<f64> {
    let ev = CurveEvaluator::new(seed)?;
    check_domain(ev.validity_radius(), z)?;
    ev.norm_sq(k, z)
}

/// The solution component `u_k` at `z`, as a [`MetricSample`].
pub fn u_value(seed: &SeedData, k: usize, z: C64) -> Result<MetricSample> {
    let ev = CurveEvaluator::new(seed)?;
    check_domain(ev.validity_radius(), z)?;
    ev.u(k, z)
}

/// The coordinate normalization of a seed: the chart `xi(z)`, its reversion
/// `z(xi)`, and the tilded unit series `g~_2..g~_n` in which the curve reads
/// `(xi^{beta_0}, xi^{beta_1}, xi^{beta_2} g~_2, .., xi^{beta_n} g~_n)`.
#[derive(Clone, Debug)]
pub struct NormalizedChart {
    /// Forward chart: `xi` as a series in `z` (vanishing at 0).
    pub xi: TruncatedSeries,
    /// Reversion: `z` as a series in `xi` (vanishing at 0).
    pub reversion: TruncatedSeries,
    /// Tilded seeds `g~_2..g~_n`, nonvanishing at 0; empty for rank 1.
    pub tilde_g: Vec<TruncatedSeries>,
    /// Advisory radius inside which truncation tails stay below 1e-9,
    /// capped at 1/2.
    pub validity_radius: f64,
    /// Achieved residual of the first-two-components invariant (the tilded
    /// g~_1 against the unit series).
    pub unit_residual: f64,
}

/// Build the normalized chart `xi = z (g_1/g_0)^{1/(beta_1 - beta_0)}` of a
/// normalized seed and the tilded seeds
/// `g~_j(xi) = (z(xi)/xi)^{beta_j - beta_0} (g_j/g_0)(z(xi))`.
pub fn normalized_chart(seed: &SeedData) -> Result<NormalizedChart> {
    if !seed.is_normalized() {
        return Err(TodaError::NotNormalized);
    }
    let n = seed.rank();
    let beta = seed.exponents().beta();
    let g = seed.seeds();
    if g[0].coeff(0).norm() < f64::MIN_POSITIVE || g[1].coeff(0).norm() < f64::MIN_POSITIVE {
        return Err(TodaError::DegenerateSeed);
    }
    let ratio = g[1].div(&g[0])?;
    let xi_over_z = ratio.power(1.0 / (beta[1] - beta[0]))?;
    let xi = xi_over_z.shift_up(1);
    let reversion = xi.revert()?;
    let z_over_xi = reversion.shift_down(1)?;

    let tilde = |j: usize| -> Result<TruncatedSeries> {
        let quotient = g[j].div(&g[0])?.compose(&reversion)?;
        Ok(z_over_xi.power(beta[j] - beta[0])?.mul(&quotient))
    };

    // First-two-components invariant: the tilded g~_1 must be the unit series.
    let unit_check = tilde(1)?;
    let mut unit_residual = (unit_check.coeff(0) - C64::new(1.0, 0.0)).norm();
    for k in 1..=unit_check.order() {
        unit_residual = unit_residual.max(unit_check.coeff(k).norm());
    }
    if unit_residual > CHART_UNIT_TOL {
        return Err(TodaError::InternalInconsistency {
            context: "chart first-two-components invariant".into(),
            discrepancy: unit_residual,
        });
    }

    let tilde_g = (2..=n).map(tilde).collect::<Result<Vec<_>>>()?;
    let mut validity = series_tail_radius(&reversion, TAIL_TOL, 0.5);
    for t in &tilde_g {
        validity = validity.min(series_tail_radius(t, TAIL_TOL, 0.5));
    }
    Ok(NormalizedChart {
        xi,
        reversion,
        tilde_g,
        validity_radius: validity,
        unit_residual,
    })
}

impl NormalizedChart {
    /// The full tilded frame `(1, 1, g~_2, .., g~_n)` at a common order.
    fn tilde_frame(&self) -> Vec<TruncatedSeries> {
        let order = self
            .tilde_g
            .iter()
            .map(|s| s.order())
            .min()
            .unwrap_or_else(|| self.reversion.order());
        let mut frame = vec![TruncatedSeries::one(order), TruncatedSeries::one(order)];
        frame.extend(self.tilde_g.iter().map(|s| s.truncated(order)));
        frame
    }

    /// `dz/dxi` at a point of the chart.
    pub fn dz_dxi(&self, xi: C64) -> Result<C64> {
        Ok(self.reversion.derivative()?.eval(xi))
    }
}

/// Cached expansions of the tilded frame, for the `xi`-chart densities.
pub struct ChartEvaluator {
    exponents: ExponentData,
    expansions: Vec<LambdaExpansion>,
}

impl ChartEvaluator {
    pub fn new(chart: &NormalizedChart, exponents: &ExponentData) -> Result<Self> {
        let n = exponents.rank();
        let frame = chart.tilde_frame();
        let expansions = (0..=n)
            .map(|k| wedge_expansion(exponents.beta(), &frame, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChartEvaluator {
            exponents: exponents.clone(),
            expansions,
        })
    }

    fn log_norm_sq(&self, level: usize, xi: C64) -> f64 {
        let expansion = &self.expansions[level];
        let e0 = expansion.base_term().exponent;
        let log_r = xi.norm().ln();
        let mut acc = 0.0;
        for (pos, term) in expansion.terms.iter().enumerate() {
            let g = term.coeff.eval(xi).norm_sqr();
            if pos == 0 {
                acc += g;
            } else {
                acc += (2.0 * (term.exponent - e0) * log_r).exp() * g;
            }
        }
        2.0 * e0 * log_r + acc.ln()
    }

    /// Density of `e^{u_k} |dz|^2` transported to the `xi` chart, through the
    /// Pluecker quotient of the tilded frame:
    /// `|L~_{k-2}|^2 |L~_k|^2 / |L~_{k-1}|^4`. The quotient is invariant
    /// under the scalar renormalization of the lift, and the coordinate
    /// change contributes exactly the `|dz/dxi|^2` Jacobian factor.
    pub fn density(&self, k: usize, xi: C64) -> Result<f64> {
        let n = self.exponents.rank();
        assert!((1..=n).contains(&k), "component index 1..=n");
        if xi.norm() < f64::MIN_POSITIVE {
            return Err(TodaError::SingularEvaluation);
        }
        let low = if k >= 2 { self.log_norm_sq(k - 2, xi) } else { 0.0 };
        let high = self.log_norm_sq(k, xi);
        let mid = self.log_norm_sq(k - 1, xi);
        Ok((low + high - 2.0 * mid).exp())
    }
}

/// The simplified `xi`-chart density of `e^{u_1} |dz|^2`:
///
/// `|xi|^{2 gamma_1} [ (beta_1-beta_0)^2 + sum |xi|^{2(beta_{i0}+beta_{i1}-1+alpha_2)}
///   |G_1(beta_{i0}, beta_{i1}; g~_{i0}, g~_{i1})|^2 ]
///   / ( sum_j |xi|^{2(beta_j-beta_0)} |g~_j|^2 )^2`
///
/// with `g~_0 = g~_1 = 1` and the full denominator sum over `j = 0..n`.
/// For rank 1 this reduces to the Bryant form
/// `(gamma_1+1)^2 |xi|^{2 gamma_1} / (1 + |xi|^{2 gamma_1 + 2})^2`.
pub fn xi_metric_density(
    chart: &NormalizedChart,
    exponents: &ExponentData,
    xi: C64,
) -> Result<f64> {
    let r = xi.norm();
    if r < f64::MIN_POSITIVE {
        return Err(TodaError::SingularEvaluation);
    }
    let beta = exponents.beta();
    let frame = chart.tilde_frame();
    let log_r = r.ln();

    let pairs = wedge_expansion(beta, &frame, 1)?;
    let mut numerator = 0.0;
    for (pos, term) in pairs.terms.iter().enumerate() {
        let g = term.coeff.eval(xi).norm_sqr();
        if pos == 0 {
            // the (0,1) pair: exponent exactly -alpha_2, coefficient beta_1 - beta_0
            numerator += g;
        } else {
            let power = term.exponent + exponents.alpha_one_indexed(2);
            numerator += (2.0 * power * log_r).exp() * g;
        }
    }

    let singles = wedge_expansion(beta, &frame, 0)?;
    let mut denominator = 0.0;
    for term in &singles.terms {
        let g = term.coeff.eval(xi).norm_sqr();
        denominator += (2.0 * (term.exponent - beta[0]) * log_r).exp() * g;
    }

    let gamma_1 = exponents.gamma()[0];
    Ok((2.0 * gamma_1 * log_r).exp() * numerator / (denominator * denominator))
}

/// The `xi`-chart density of `e^{u_k} |dz|^2` for any `k = 1..n`, through the
/// Pluecker quotient of the tilded frame. For `k = 1` this agrees with
/// [`xi_metric_density`].
pub fn xi_metric_density_k(
    chart: &NormalizedChart,
    exponents: &ExponentData,
    k: usize,
    xi: C64,
) -> Result<f64> {
    ChartEvaluator::new(chart, exponents)?.density(k, xi)
}
