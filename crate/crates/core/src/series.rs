//! Truncated power-series arithmetic over complex double-precision
//! coefficients, and branched powers `z^beta * g(z)`.
//!
//! A [`TruncatedSeries`] stores the coefficients `c_0..c_N` of a holomorphic
//! germ known exactly to order `N`. Arithmetic never silently extends the
//! order: binary operations carry `order = min` of the operand validities,
//! differentiation drops one order, multiplication by `z^m` raises it by `m`.
//!
//! A [`BranchedFunction`] pairs a real exponent `beta` with a unit series and
//! represents `z^beta * g(z)` on the slit disk with the principal branch
//! `arg z` in `(-pi, pi]`. Its modulus is branch-independent.

use num_complex::Complex64;

use crate::error::{Result, TodaError};

/// Complex double-precision scalar used throughout the crate.
pub type C64 = Complex64;

/// A holomorphic germ truncated at a finite order: coefficients `c_0..c_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<C64>,
}

impl TruncatedSeries {
    /// Series from its coefficient list `c_0..c_N`. The list must be non-empty.
    pub fn new(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    /// Series from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Constant series `c` carried to the given order.
    pub fn constant(c: C64, order: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    /// The series `1` at the given order.
    pub fn one(order: usize) -> Self {
        Self::constant(C64::new(1.0, 0.0), order)
    }

    /// The identity series `z` at the given order (order >= 1).
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1);
        let mut coeffs = vec![C64::new(0.0, 0.0); order + 1];
        coeffs[1] = C64::new(1.0, 0.0);
        TruncatedSeries { coeffs }
    }

    /// Truncation order `N` (the series carries `N + 1` coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `c_k`. Panics when `k` exceeds the truncation order.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs[k]
    }

    /// All coefficients `c_0..c_N`.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Copy truncated down to `order` (never extends).
    pub fn truncated(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Cauchy product truncated to the common valid order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs.iter().take(n + 1).enumerate() {
            for (j, &b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Long division; requires `rhs(0) != 0`.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let b0 = rhs.coeffs[0];
        if b0.norm() < f64::MIN_POSITIVE {
            return Err(TodaError::DegenerateDivision);
        }
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc -= coeffs[j] * rhs.coeffs[k - j];
            }
            coeffs[k] = acc / b0;
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Formal derivative; drops one order.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(TodaError::InsufficientOrder { needed: 1, got: 0 });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * (k as f64))
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Formal antiderivative with constant term 0; raises the order by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C64::new(0.0, 0.0));
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / ((k + 1) as f64));
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplication by `z^m`; raises the order by `m` (no information is
    /// created: the new low coefficients are exactly zero).
    pub fn shift_up(&self, m: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); m];
        coeffs.extend_from_slice(&self.coeffs);
        TruncatedSeries { coeffs }
    }

    /// Division by `z^m`; the dropped low coefficients must vanish.
    pub(crate) fn shift_down(&self, m: usize) -> Result<Self> {
        if self.order() < m {
            return Err(TodaError::InsufficientOrder {
                needed: m,
                got: self.order(),
            });
        }
        let scale = self.max_abs_coeff().max(1.0);
        for k in 0..m {
            if self.coeffs[k].norm() > 1e-12 * scale {
                return Err(TodaError::DegenerateDivision);
            }
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[m..].to_vec(),
        })
    }

    /// Series exponential, via `e' = e * a'` integrated term by term.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += (j as f64) * self.coeffs[j] * coeffs[k - j];
            }
            coeffs[k] = acc / (k as f64);
        }
        TruncatedSeries { coeffs }
    }

    /// Principal series logarithm, via `(log a)' = a'/a`; requires `a(0) != 0`.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() < f64::MIN_POSITIVE {
            return Err(TodaError::DegenerateRoot);
        }
        let n = self.order();
        if n == 0 {
            return Ok(TruncatedSeries {
                coeffs: vec![c0.ln()],
            });
        }
        let logd = self.derivative()?.div(&self.truncated(n - 1))?;
        let mut out = logd.integrate();
        out.coeffs[0] = c0.ln();
        Ok(out)
    }

    /// Principal fractional power `a^s = exp(s * log a)`; requires `a(0) != 0`.
    pub fn power(&self, s: f64) -> Result<Self> {
        if self.coeffs[0].norm() < f64::MIN_POSITIVE {
            return Err(TodaError::DegenerateRoot);
        }
        Ok(self.log()?.scale(C64::new(s, 0.0)).exp())
    }

    /// Composition `self(inner(z))`; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let scale = inner.max_abs_coeff().max(1.0);
        if inner.coeffs[0].norm() > 1e-13 * scale {
            return Err(TodaError::IllegalComposition);
        }
        let n = self.order().min(inner.order());
        let mut b = inner.truncated(n);
        b.coeffs[0] = C64::new(0.0, 0.0);
        // Horner in the inner series.
        let mut acc = TruncatedSeries::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&b);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of a series with `b(0) = 0`, `b'(0) != 0`,
    /// by Newton iteration on truncated series. The result `w` satisfies
    /// `compose(self, w) = z` up to the common truncation order.
    pub fn revert(&self) -> Result<Self> {
        let scale = self.max_abs_coeff().max(1.0);
        if self.coeffs[0].norm() > 1e-13 * scale {
            return Err(TodaError::IllegalComposition);
        }
        if self.order() < 1 || self.coeffs[1].norm() < f64::MIN_POSITIVE {
            return Err(TodaError::NotInvertibleAtOrigin);
        }
        let n = self.order();
        let deriv = self.derivative()?;
        // First-order inverse, refined by Newton: w <- w - (b(w) - z)/(b'(w)).
        let mut w = TruncatedSeries::identity(n).scale(C64::new(1.0, 0.0) / self.coeffs[1]);
        let id = TruncatedSeries::identity(n);
        let steps = (usize::BITS - n.leading_zeros()) as usize + 2;
        for _ in 0..steps {
            let residual = self.compose(&w)?.sub(&id);
            let slope = deriv.truncated(n).compose(&w.truncated(n))?;
            w = w.sub(&residual.div(&slope)?);
        }
        Ok(w)
    }
}

/// `z^beta * g(z)` with `g(0) != 0`, on the slit disk with the principal
/// branch `arg z` in `(-pi, pi]`.
#[derive(Clone, Debug)]
pub struct BranchedFunction {
    exponent: f64,
    unit: TruncatedSeries,
}

impl BranchedFunction {
    /// New branched function; the unit series must not vanish at the origin.
    pub fn new(exponent: f64, unit: TruncatedSeries) -> Result<Self> {
        if unit.coeff(0).norm() < f64::MIN_POSITIVE {
            return Err(TodaError::DegenerateRoot);
        }
        Ok(BranchedFunction { exponent, unit })
    }

    /// Branched expression without the unit-at-origin requirement; used for
    /// residuals of differential operators, which may vanish identically.
    pub fn residual(exponent: f64, unit: TruncatedSeries) -> Self {
        BranchedFunction { exponent, unit }
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn unit(&self) -> &TruncatedSeries {
        &self.unit
    }

    /// Principal-branch evaluation `z^beta * g(z)`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.norm() < f64::MIN_POSITIVE {
            if self.exponent < 0.0 {
                return Err(TodaError::SingularEvaluation);
            }
            if self.exponent == 0.0 {
                return Ok(self.unit.coeff(0));
            }
            return Ok(C64::new(0.0, 0.0));
        }
        self.eval_polar(z.norm(), z.arg())
    }

    /// Evaluation at `z = r e^{i theta}` with an explicit branch angle.
    ///
    /// `theta` may lie outside `(-pi, pi]`; angles differing by `2 pi` name
    /// the same physical point on different sheets of `z^beta`.
    pub fn eval_polar(&self, r: f64, theta: f64) -> Result<C64> {
        if r < f64::MIN_POSITIVE {
            return Err(TodaError::SingularEvaluation);
        }
        let z = C64::from_polar(r, theta);
        let power = (self.exponent * (C64::new(r.ln(), theta))).exp();
        Ok(power * self.unit.eval(z))
    }

    /// Branch-independent modulus `r^beta * |g(z)|`.
    pub fn modulus(&self, z: C64) -> Result<f64> {
        let r = z.norm();
        if r < f64::MIN_POSITIVE {
            return Err(TodaError::SingularEvaluation);
        }
        Ok((self.exponent * r.ln()).exp() * self.unit.eval(z).norm())
    }
}
