//! Exact Cartan-matrix algebra for rank `n` and the exponent pipeline
//! `gamma -> alpha -> beta`, plus the `w`-potential map.
//!
//! The inverse Cartan matrix is computed by exact rational Gauss-Jordan
//! elimination, never from a printed closed form. The exponents `beta` are
//! produced twice, through the matrix route and through the telescoping
//! system `{beta_i - beta_{i-1} = gamma_i + 1, sum beta_i = n(n+1)/2}`, and
//! the two constructions must agree.

use num_rational::Ratio;

use crate::error::{Result, TodaError};

/// Exact rational scalar used for Cartan-matrix algebra.
pub type Rational = Ratio<i64>;

/// Tolerance for the cross-check between the two `beta` constructions.
const BETA_ROUTE_TOL: f64 = 1e-12;

/// Exponent data for rank `n`: weights, the two derived exponent vectors,
/// and the Cartan matrix with its exact inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentData {
    n: usize,
    gamma: Vec<f64>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<Rational>>,
}

/// The type-A_n Cartan matrix: 2 on the diagonal, -1 off-diagonal.
pub fn cartan_matrix(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

/// Exact rational matrix inverse by Gauss-Jordan elimination.
fn invert_rational(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(if i == j { 1 } else { 0 }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| a[r][col] != Rational::from_integer(0))?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col];
        for j in 0..n {
            a[col][j] /= pivot;
            inv[col][j] /= pivot;
        }
        for r in 0..n {
            if r != col && a[r][col] != Rational::from_integer(0) {
                let factor = a[r][col];
                for j in 0..n {
                    let ac = a[col][j];
                    let ic = inv[col][j];
                    a[r][j] -= factor * ac;
                    inv[r][j] -= factor * ic;
                }
            }
        }
    }
    Some(inv)
}

impl ExponentData {
    /// Build the exponent data for rank `n` and weights `gamma` (each > -1).
    ///
    /// `alpha_i = sum_j a^{ij} gamma_j` with `a^{ij}` the exact rational
    /// inverse of the Cartan matrix; `beta` from `alpha` by
    /// `beta_0 = -alpha_1`, `beta_i = alpha_i - alpha_{i+1} + i`,
    /// `beta_n = alpha_n + n`, cross-checked against the telescoping route.
    pub fn new(n: usize, gamma: &[f64]) -> Result<Self> {
        assert!(n >= 1, "rank must be at least 1");
        if gamma.len() != n {
            return Err(TodaError::ArityMismatch {
                what: "weights",
                expected: n,
                got: gamma.len(),
            });
        }
        for (i, &g) in gamma.iter().enumerate() {
            if !(g > -1.0) || !g.is_finite() {
                return Err(TodaError::IllegalWeight { index: i, value: g });
            }
        }
        let cartan = cartan_matrix(n);
        let cartan_inverse =
            invert_rational(&cartan).expect("the A_n Cartan matrix is invertible");

        // The inverse has common denominator n+1 (the determinant of the
        // Cartan matrix), so each alpha_i is an integer combination of the
        // weights divided once by n+1: a single rounding per entry.
        let denom = Rational::from_integer(n as i64 + 1);
        let alpha: Vec<f64> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let adjugate = cartan_inverse[i][j] * denom;
                        debug_assert!(adjugate.is_integer());
                        adjugate.to_integer() as f64 * gamma[j]
                    })
                    .sum::<f64>()
                    / (n as f64 + 1.0)
            })
            .collect();

        // Matrix route for beta.
        let mut beta = vec![0.0; n + 1];
        beta[0] = -alpha[0];
        for i in 1..n {
            beta[i] = alpha[i - 1] - alpha[i] + i as f64;
        }
        beta[n] = alpha[n - 1] + n as f64;

        // Telescoping route: beta_i = beta_0 + sum_{j<=i} (gamma_j + 1) and
        // sum beta_i = n(n+1)/2 pin beta uniquely.
        let total: f64 = (1..=n).map(|j| (n + 1 - j) as f64 * (gamma[j - 1] + 1.0)).sum();
        let beta0 = (0.5 * (n * (n + 1)) as f64 - total) / (n + 1) as f64;
        let mut beta_tel = vec![beta0; n + 1];
        for i in 1..=n {
            beta_tel[i] = beta_tel[i - 1] + gamma[i - 1] + 1.0;
        }
        let disagreement = beta
            .iter()
            .zip(&beta_tel)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if disagreement > BETA_ROUTE_TOL {
            return Err(TodaError::InternalInconsistency {
                context: "beta constructions (matrix vs telescoping)".into(),
                discrepancy: disagreement,
            });
        }
        for i in 1..=n {
            if beta[i] <= beta[i - 1] {
                return Err(TodaError::InternalInconsistency {
                    context: format!("beta ordering at index {i}"),
                    discrepancy: beta[i - 1] - beta[i],
                });
            }
        }
        Ok(ExponentData {
            n,
            gamma: gamma.to_vec(),
            alpha,
            beta,
            cartan,
            cartan_inverse,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Weights `gamma_1..gamma_n` (1-indexed in the formulas, 0-indexed here).
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// `alpha_1..alpha_n` (0-indexed storage).
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Local exponents `beta_0..beta_n`, strictly increasing.
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Cartan matrix entry `a_{ij}` (1-indexed arguments).
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<Rational>] {
        &self.cartan_inverse
    }

    /// `alpha_j` in the 1-indexed convention of the exponent formulas,
    /// extended by `alpha_{n+1} = 0` so that
    /// `sum_{i<=k} beta_i = -alpha_{k+1} + k(k+1)/2` holds for all k.
    pub fn alpha_one_indexed(&self, j: usize) -> f64 {
        if j == self.n + 1 {
            0.0
        } else {
            self.alpha[j - 1]
        }
    }
}

/// The `w`-potential of a tuple `u`: `w_0 = -sum (n-i+1) u_i / (2(n+1))`,
/// `w_i = w_0 + (1/2) sum_{j<=i} u_j`. The result sums to zero and
/// `u_i = 2(w_i - w_{i-1})` recovers the input.
pub fn w_from_u(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let w0 = -(1..=n).map(|i| (n - i + 1) as f64 * u[i - 1]).sum::<f64>() / (2.0 * (n + 1) as f64);
    let mut w = Vec::with_capacity(n + 1);
    w.push(w0);
    let mut acc = w0;
    for &ui in u {
        acc += 0.5 * ui;
        w.push(acc);
    }
    w
}
