//! The Fuchsian-equation side of the correspondence: reconstruct the
//! order-(n+1) operator annihilating the canonical components, read off its
//! local exponents, and rebuild the seed series by the Frobenius method.
//!
//! For a normalized seed the components `nu_i = z^{beta_i} g_i` form a
//! fundamental system of `y^{(n+1)} + sum_{k=0}^{n-1} Z_{k+1} y^{(k)} = 0`,
//! where the coefficient of `y^{(k)}` is `(-1)^{n+1+k} M_k / W` with `M_k`
//! the bordered-Wronskian minor using derivative orders `{0..n+1} \ {k}`.
//! Each minor factors as `z^{k-(n+1)}` times a holomorphic series, so
//! `Z_{k+1}` has pole order at most `n+1-k` by construction and is stored as
//! that pole order plus a Taylor series. The `y^{(n)}` coefficient is the
//! logarithmic derivative of the Wronskian and must vanish (the normalized
//! condition makes the Wronskian constant); it is checked and dropped.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Result, TodaError};
use crate::series::{BranchedFunction, TruncatedSeries};
use crate::wronskian::{falling_factorial, frame_minor, SeedData};

/// Vanishing threshold for the reconstructed `y^{(n)}` coefficient.
const TRACE_TOL: f64 = 1e-10;

/// Imaginary-part and separation thresholds for the local exponents.
const EXPONENT_IMAG_TOL: f64 = 1e-8;
const EXPONENT_GAP_TOL: f64 = 1e-8;

/// Default obstruction tolerance of the Frobenius recursion, relative to the
/// largest recursion term.
pub const DEFAULT_OBSTRUCTION_TOL: f64 = 1e-8;

/// A coefficient with an explicit pole order: `z^{-pole_order} * series(z)`.
#[derive(Clone, Debug)]
pub struct LaurentCoefficient {
    pole_order: usize,
    series: TruncatedSeries,
}

impl LaurentCoefficient {
    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// The most singular coefficient (of `z^{-pole_order}`).
    pub fn leading(&self) -> C64 {
        self.series.coeff(0)
    }
}

/// The Fuchsian operator `y^{(n+1)} + sum_{k=0}^{n-1} Z_{k+1} y^{(k)}`.
///
/// `coefficient(k)` is `Z_{k+1}`, the coefficient of `y^{(k)}`, with pole
/// order `n+1-k`; the `y^{(n)}` coefficient is absent by construction.
#[derive(Clone, Debug)]
pub struct FuchsianOperator {
    n: usize,
    z: Vec<LaurentCoefficient>,
}

impl FuchsianOperator {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// `Z_{k+1}`, the coefficient of `y^{(k)}`, for `k = 0..n-1`.
    pub fn coefficient(&self, k: usize) -> &LaurentCoefficient {
        &self.z[k]
    }

    pub fn coefficients(&self) -> &[LaurentCoefficient] {
        &self.z
    }

    /// Indicial polynomial in the monomial basis (monic, degree n+1):
    /// `I(rho) = rho (rho-1) .. (rho-n) + sum_k c_k rho (rho-1) .. (rho-k+1)`
    /// with `c_k` the most singular coefficient of `Z_{k+1}`.
    pub fn indicial_polynomial(&self) -> Vec<C64> {
        let degree = self.n + 1;
        let mut poly = vec![C64::new(0.0, 0.0); degree + 1];
        // FF_m(rho) built iteratively: FF_0 = 1, FF_m = FF_{m-1} * (rho - (m-1)).
        let mut ff = vec![C64::new(1.0, 0.0)];
        for m in 0..=degree {
            if m == degree {
                for (p, &c) in ff.iter().enumerate() {
                    poly[p] += c;
                }
            } else if m < self.n {
                let lead = self.z[m].leading();
                for (p, &c) in ff.iter().enumerate() {
                    poly[p] += lead * c;
                }
            }
            if m == degree {
                break;
            }
            // multiply ff by (rho - m)
            let mut next = vec![C64::new(0.0, 0.0); ff.len() + 1];
            for (p, &c) in ff.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= c * (m as f64);
            }
            ff = next;
        }
        poly
    }

    /// Indicial polynomial evaluated at `rho`.
    pub fn indicial_value(&self, rho: f64) -> C64 {
        let mut value = C64::new(falling_factorial(rho, self.n + 1), 0.0);
        for k in 0..self.n {
            value += self.z[k].leading() * falling_factorial(rho, k);
        }
        value
    }
}

/// Reconstruct the Fuchsian operator annihilating the canonical components of
/// a normalized seed, by bordered-Wronskian elimination.
pub fn reconstruct(seed: &SeedData) -> Result<FuchsianOperator> {
    if !seed.is_normalized() {
        return Err(TodaError::NotNormalized);
    }
    let n = seed.rank();
    if seed.order() < n + 1 {
        return Err(TodaError::InsufficientOrder {
            needed: n + 1,
            got: seed.order(),
        });
    }
    let betas = seed.exponents().beta();
    let gs = seed.seeds();

    let minor = |skip: usize| -> TruncatedSeries {
        let derivs: Vec<usize> = (0..=n + 1).filter(|&l| l != skip).collect();
        frame_minor(betas, gs, &derivs)
    };

    let wronskian = minor(n + 1); // the top Wronskian, constant 1 for normalized seeds
    if wronskian.coeff(0).norm() < 1e-14 {
        return Err(TodaError::DegenerateSeed);
    }

    // Abel check: the y^(n) coefficient is -W'/W and must vanish.
    let trace = minor(n).div(&wronskian)?;
    let trace_max = trace.max_abs_coeff();
    if trace_max > TRACE_TOL {
        return Err(TodaError::NonvanishingTrace {
            max_coeff: trace_max,
        });
    }

    let mut z = Vec::with_capacity(n);
    for k in 0..n {
        let sign = if (n + 1 + k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let series = minor(k).div(&wronskian)?.scale(C64::new(sign, 0.0));
        z.push(LaurentCoefficient {
            pole_order: n + 1 - k,
            series,
        });
    }
    Ok(FuchsianOperator { n, z })
}

/// The raw `y^{(n)}` coefficient of the bordered-Wronskian elimination,
/// `-W'/W` as a series in `z^{-1} * series` form (the series part only).
/// Vanishes identically for a normalized seed; exposed so the vanishing can
/// be asserted independently of [`reconstruct`].
pub fn reconstruction_trace(seed: &SeedData) -> Result<TruncatedSeries> {
    if !seed.is_normalized() {
        return Err(TodaError::NotNormalized);
    }
    let n = seed.rank();
    if seed.order() < n + 1 {
        return Err(TodaError::InsufficientOrder {
            needed: n + 1,
            got: seed.order(),
        });
    }
    let betas = seed.exponents().beta();
    let gs = seed.seeds();
    let derivs: Vec<usize> = (0..=n + 1).filter(|&l| l != n).collect();
    let all: Vec<usize> = (0..=n).collect();
    let wronskian = frame_minor(betas, gs, &all);
    Ok(frame_minor(betas, gs, &derivs)
        .div(&wronskian)?
        .scale(C64::new(-1.0, 0.0)))
}

/// Local exponents of the operator at 0: the roots of the indicial
/// polynomial, via companion-matrix eigenvalues, sorted ascending.
///
/// Non-real or repeated roots are outside this correspondence's regime and
/// reported as errors.
pub fn indicial_roots(op: &FuchsianOperator) -> Result<Vec<f64>> {
    let poly = op.indicial_polynomial();
    let degree = op.n + 1;
    debug_assert!((poly[degree] - C64::new(1.0, 0.0)).norm() < 1e-12);
    // A monic indicial polynomial with real local exponents has real
    // coefficients; the minors of a complex frame may leave imaginary dust,
    // anything larger flags genuinely non-real exponents.
    let scale: f64 = poly.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let poly_imag = poly.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if poly_imag > EXPONENT_IMAG_TOL * scale {
        return Err(TodaError::NonRealExponents {
            max_imag: poly_imag,
        });
    }
    let mut companion = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -poly[i].re;
    }
    let eigen = companion.complex_eigenvalues();
    let max_imag = eigen.iter().map(|l| l.im.abs()).fold(0.0, f64::max);
    if max_imag > EXPONENT_IMAG_TOL * scale {
        return Err(TodaError::NonRealExponents { max_imag });
    }
    let mut roots: Vec<f64> = eigen.iter().map(|l| l.re).collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut min_gap = f64::MAX;
    for w in roots.windows(2) {
        min_gap = min_gap.min(w[1] - w[0]);
    }
    if degree > 1 && min_gap < EXPONENT_GAP_TOL {
        return Err(TodaError::RepeatedExponents { min_gap });
    }
    Ok(roots)
}

/// Apply the operator to a branched function `z^rho phi(z)`.
///
/// Every term contributes at the common branched exponent `rho - (n+1)`, so
/// the residual is again a single branched expression; for members of the
/// annihilated span its unit series vanishes to working precision.
pub fn apply_operator(op: &FuchsianOperator, f: &BranchedFunction) -> Result<BranchedFunction> {
    let n = op.n;
    let rho = f.exponent();
    let unit = f.unit();
    if unit.order() < n + 1 {
        return Err(TodaError::InsufficientOrder {
            needed: n + 1,
            got: unit.order(),
        });
    }
    // phi_l: the holomorphic factor of (z^rho phi)^(l) = z^{rho-l} phi_l.
    let phi = |l: usize| -> TruncatedSeries {
        TruncatedSeries::new(
            unit.coeffs()
                .iter()
                .enumerate()
                .map(|(j, &c)| c * falling_factorial(rho + j as f64, l))
                .collect(),
        )
    };
    let mut out = phi(n + 1);
    for k in 0..n {
        out = out.add(&op.z[k].series.mul(&phi(k)));
    }
    Ok(BranchedFunction::residual(rho - (n as f64 + 1.0), out))
}

/// Frobenius series at an indicial root: the unit series `g` with
/// `L(z^rho g) = 0` order by order and `g(0) = 1`.
///
/// At a resonant order `m` (where `rho + m` is again a root) the recursion is
/// solvable only when the accumulated obstruction vanishes; if it exceeds
/// `obstruction_tol` relative to the largest recursion term the solution
/// needs a logarithm and the construction fails. Otherwise the free
/// coefficient is fixed to 0 (canonical gauge).
pub fn frobenius_series_with_tol(
    op: &FuchsianOperator,
    rho: f64,
    order: usize,
    obstruction_tol: f64,
) -> Result<TruncatedSeries> {
    let n = op.n;
    let roots = indicial_roots(op)?;
    let indicial_scale: f64 = (0..=n)
        .map(|k| {
            if k == n {
                falling_factorial(rho, n + 1).abs()
            } else {
                op.z[k].leading().norm() * falling_factorial(rho, k).abs()
            }
        })
        .sum::<f64>()
        .max(1.0);
    if op.indicial_value(rho).norm() > 1e-8 * indicial_scale {
        return Err(TodaError::NotAnExponent {
            rho,
            indicial_value: op.indicial_value(rho).norm(),
        });
    }
    let available = op.z.iter().map(|c| c.series.order()).min().unwrap_or(order);
    if order > available {
        return Err(TodaError::InsufficientOrder {
            needed: order,
            got: available,
        });
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
    coeffs[0] = C64::new(1.0, 0.0);
    for q in 1..=order {
        let mut numer = C64::new(0.0, 0.0);
        let mut largest: f64 = 0.0;
        for m in 0..q {
            if coeffs[m].norm() == 0.0 {
                continue;
            }
            let mut weight = C64::new(0.0, 0.0);
            for k in 0..n {
                weight += op.z[k].series.coeff(q - m) * falling_factorial(rho + m as f64, k);
            }
            let term = coeffs[m] * weight;
            numer += term;
            largest = largest.max(term.norm());
        }
        let resonant = roots
            .iter()
            .any(|&r| r > rho && (rho + q as f64 - r).abs() < 1e-6);
        if resonant {
            let obstruction = numer.norm();
            if obstruction > obstruction_tol * largest.max(1.0) {
                return Err(TodaError::LogarithmRequired { order: q, obstruction });
            }
            coeffs[q] = C64::new(0.0, 0.0);
        } else {
            coeffs[q] = -numer / op.indicial_value(rho + q as f64);
        }
    }
    Ok(TruncatedSeries::new(coeffs))
}

/// [`frobenius_series_with_tol`] with the default obstruction tolerance.
pub fn frobenius_series(op: &FuchsianOperator, rho: f64, order: usize) -> Result<TruncatedSeries> {
    frobenius_series_with_tol(op, rho, order, DEFAULT_OBSTRUCTION_TOL)
}
