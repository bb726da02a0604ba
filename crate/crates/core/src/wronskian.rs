//! Reduced Wronskians, seed normalization, and multi-index wedge expansions.
//!
//! The reduced Wronskian `G_k` of `z^{beta_0} g_0, ..., z^{beta_k} g_k` is the
//! Wronskian determinant with the universal monomial factor
//! `z^{sum beta - k(k+1)/2}` stripped symbolically. It is computed as the
//! determinant of the holomorphic rows
//! `g_{i,l}(z) = sum_j FF(beta_i + j, l) c_{ij} z^j`
//! (falling-factorial rescaling of the seed coefficients), never by numerical
//! division by the monomial. Exactness at `z = 0` is what makes the bounded
//! remainders of the metric densities computable without cancellation.

use num_complex::Complex64 as C64;

use crate::error::{Result, TodaError};
use crate::exponents::ExponentData;
use crate::series::TruncatedSeries;

/// Residual threshold for the normalized condition `G_n = 1`.
pub const NORMALIZED_TOL: f64 = 1e-10;

/// Falling factorial `x (x-1) ... (x-m+1)`, with `FF(x, 0) = 1`.
pub(crate) fn falling_factorial(x: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, t| acc * (x - t as f64))
}

/// The holomorphic row entry `g_{i,l}`: the series whose j-th coefficient is
/// `FF(beta + j, l)` times the j-th coefficient of `g`. This is the
/// falling-factorial Leibniz expansion of `(z^beta g)^(l) = z^{beta-l} g_{i,l}`
/// collapsed coefficientwise; it is exact to the full order of `g`.
fn wronskian_row_entry(beta: f64, g: &TruncatedSeries, l: usize) -> TruncatedSeries {
    let coeffs = g
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| c * falling_factorial(beta + j as f64, l))
        .collect();
    TruncatedSeries::new(coeffs)
}

/// Determinant of a square matrix of series, by Laplace expansion along rows
/// with memoization over column subsets.
fn series_determinant(rows: &[Vec<TruncatedSeries>]) -> TruncatedSeries {
    let k = rows.len();
    assert!(k >= 1 && rows.iter().all(|r| r.len() == k));
    let order = rows
        .iter()
        .flat_map(|r| r.iter().map(|s| s.order()))
        .min()
        .unwrap();
    let full: u32 = (1u32 << k) - 1;
    // minors[mask] = determinant of rows 0..popcount(mask)-1 over columns in mask
    let mut minors: Vec<Option<TruncatedSeries>> = vec![None; 1 << k];
    for i in 0..k {
        minors[1 << i] = Some(rows[0][i].truncated(order));
    }
    for r in 1..k {
        let mut next: Vec<Option<TruncatedSeries>> = vec![None; 1 << k];
        for mask in 0..=full {
            if mask.count_ones() as usize != r + 1 {
                continue;
            }
            let mut acc = TruncatedSeries::constant(C64::new(0.0, 0.0), order);
            let mut pos = 0usize;
            for i in 0..k {
                if mask & (1 << i) == 0 {
                    continue;
                }
                if let Some(minor) = &minors[(mask & !(1 << i)) as usize] {
                    let term = rows[r][i].truncated(order).mul(minor);
                    if (r + pos).is_multiple_of(2) {
                        acc = acc.add(&term);
                    } else {
                        acc = acc.sub(&term);
                    }
                }
                pos += 1;
            }
            next[mask as usize] = Some(acc);
        }
        minors = next;
    }
    minors[full as usize].take().expect("full minor computed")
}

/// Determinant of the holomorphic rows `g_{i,l}` for an arbitrary list of
/// derivative orders `l` (one per row). The reduced Wronskian is the special
/// case `derivs = 0..=k`; the Fuchsian reconstruction uses the bordered
/// minors with one derivative order removed from `0..=n+1`.
pub(crate) fn frame_minor(
    betas: &[f64],
    gs: &[TruncatedSeries],
    derivs: &[usize],
) -> TruncatedSeries {
    assert_eq!(betas.len(), gs.len());
    assert_eq!(derivs.len(), gs.len());
    let rows: Vec<Vec<TruncatedSeries>> = derivs
        .iter()
        .map(|&l| {
            (0..gs.len())
                .map(|i| wronskian_row_entry(betas[i], &gs[i], l))
                .collect()
        })
        .collect();
    series_determinant(&rows)
}

/// Reduced Wronskian `G_k(beta_0..beta_k; g_0..g_k)`.
///
/// Requires `k + 1` series of common order at least `k`. The result is exact
/// to the common order of the inputs (the falling-factorial rows are
/// coefficientwise rescalings, so no order is lost to differentiation).
pub fn reduced_wronskian(betas: &[f64], gs: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    assert_eq!(betas.len(), gs.len(), "one exponent per seed series");
    assert!(!gs.is_empty());
    let k = gs.len() - 1;
    let order = gs.iter().map(|g| g.order()).min().unwrap();
    if order < k {
        return Err(TodaError::InsufficientOrder {
            needed: k,
            got: order,
        });
    }
    let rows: Vec<Vec<TruncatedSeries>> = (0..=k)
        .map(|l| {
            (0..=k)
                .map(|i| wronskian_row_entry(betas[i], &gs[i], l))
                .collect()
        })
        .collect();
    Ok(series_determinant(&rows))
}

/// Closed-form value of the reduced Wronskian at the origin:
/// `prod g_i(0) * prod_{i<j} (beta_j - beta_i)`.
///
/// The falling-factorial Vandermonde determinant with rows ordered by
/// derivative count evaluates to `prod_{i<j} (beta_j - beta_i)`; this
/// orientation is fixed by `W(1, z) = +1` and verified against the
/// brute-force determinant oracle in the test suite.
pub fn wronskian_at_zero(betas: &[f64], gs: &[TruncatedSeries]) -> C64 {
    assert_eq!(betas.len(), gs.len());
    let mut value = C64::new(1.0, 0.0);
    for g in gs {
        value *= g.coeff(0);
    }
    let mut vandermonde = 1.0;
    for i in 0..betas.len() {
        for j in (i + 1)..betas.len() {
            vandermonde *= betas[j] - betas[i];
        }
    }
    value * vandermonde
}

/// Seed data for the canonical curve: exponents, the `n + 1` seed series,
/// a common truncation order, and the normalization flag.
#[derive(Clone, Debug)]
pub struct SeedData {
    exponents: ExponentData,
    g: Vec<TruncatedSeries>,
    order: usize,
    normalized: bool,
}

impl SeedData {
    /// Seed from exact polynomial coefficient lists; each polynomial is
    /// zero-padded to the truncation order (exact, the tail is genuinely zero).
    pub fn from_polynomials(
        exponents: ExponentData,
        coeffs: &[Vec<C64>],
        order: usize,
    ) -> Result<Self> {
        let n = exponents.rank();
        if coeffs.len() != n + 1 {
            return Err(TodaError::ArityMismatch {
                what: "seed polynomials",
                expected: n + 1,
                got: coeffs.len(),
            });
        }
        let g = coeffs
            .iter()
            .map(|c| {
                let mut padded = c.clone();
                if padded.is_empty() {
                    padded.push(C64::new(0.0, 0.0));
                }
                padded.resize(order + 1, C64::new(0.0, 0.0));
                padded.truncate(order + 1);
                TruncatedSeries::new(padded)
            })
            .collect();
        Ok(SeedData {
            exponents,
            g,
            order,
            normalized: false,
        })
    }

    /// Seed from already-truncated series; each must carry at least `order`.
    pub fn from_series(
        exponents: ExponentData,
        g: Vec<TruncatedSeries>,
        order: usize,
    ) -> Result<Self> {
        let n = exponents.rank();
        if g.len() != n + 1 {
            return Err(TodaError::ArityMismatch {
                what: "seed series",
                expected: n + 1,
                got: g.len(),
            });
        }
        for s in &g {
            if s.order() < order {
                return Err(TodaError::InsufficientOrder {
                    needed: order,
                    got: s.order(),
                });
            }
        }
        let g = g.into_iter().map(|s| s.truncated(order)).collect();
        Ok(SeedData {
            exponents,
            g,
            order,
            normalized: false,
        })
    }

    pub fn exponents(&self) -> &ExponentData {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.rank()
    }

    pub fn seeds(&self) -> &[TruncatedSeries] {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Top reduced Wronskian `G_n` over all `n + 1` seeds.
    pub fn top_wronskian(&self) -> Result<TruncatedSeries> {
        reduced_wronskian(self.exponents.beta(), &self.g)
    }

    /// Max coefficient deviation of `G_n` from the constant series 1.
    pub fn normalization_residual(&self) -> Result<f64> {
        let gn = self.top_wronskian()?;
        let mut worst = (gn.coeff(0) - C64::new(1.0, 0.0)).norm();
        for k in 1..=gn.order() {
            worst = worst.max(gn.coeff(k).norm());
        }
        Ok(worst)
    }

    /// Radius inside which truncation tails of the seed series stay below
    /// `tail_tol`, capped at the unit disk. Exact polynomials (zero tails)
    /// give the full disk.
    pub fn validity_radius(&self, tail_tol: f64) -> f64 {
        let mut radius: f64 = 1.0;
        for g in &self.g {
            radius = radius.min(series_tail_radius(g, tail_tol, 1.0));
        }
        radius
    }
}

/// Radius at which the last stored coefficients of `s` would contribute more
/// than `tol`, capped at `cap`.
pub(crate) fn series_tail_radius(s: &TruncatedSeries, tol: f64, cap: f64) -> f64 {
    let n = s.order();
    let mut radius = cap;
    for k in n.saturating_sub(2)..=n {
        if k == 0 {
            continue;
        }
        let a = s.coeff(k).norm();
        if a > tol {
            radius = radius.min((tol / a).powf(1.0 / k as f64));
        }
    }
    radius
}

/// Normalize a seed so that `G_n = 1` identically: divide every `g_i` by the
/// principal `(n+1)`-th root of `G_n`. Returns the normalized seed together
/// with the applied root value at the origin (recorded for reproducibility).
///
/// The Wronskian scaling identity `W(h f_0, .., h f_n) = h^{n+1} W(f_0, .., f_n)`
/// makes the new top Wronskian identically 1. Already-normalized seeds are
/// returned unchanged.
pub fn normalize(seed: &SeedData) -> Result<(SeedData, C64)> {
    let gn = seed.top_wronskian()?;
    let scale = gn.max_abs_coeff().max(1.0);
    if gn.coeff(0).norm() <= 1e-14 * scale {
        return Err(TodaError::DegenerateSeed);
    }
    let residual = {
        let mut worst = (gn.coeff(0) - C64::new(1.0, 0.0)).norm();
        for k in 1..=gn.order() {
            worst = worst.max(gn.coeff(k).norm());
        }
        worst
    };
    if residual <= NORMALIZED_TOL {
        let mut out = seed.clone();
        out.normalized = true;
        return Ok((out, C64::new(1.0, 0.0)));
    }
    let n = seed.rank();
    let root = gn.power(1.0 / (n + 1) as f64)?;
    let g = seed
        .g
        .iter()
        .map(|gi| gi.div(&root))
        .collect::<Result<Vec<_>>>()?;
    let out = SeedData {
        exponents: seed.exponents.clone(),
        g,
        order: seed.order,
        normalized: true,
    };
    // Ill-conditioned seeds (top Wronskian with a zero close to the origin)
    // cannot be normalized accurately at this truncation order.
    let achieved = out.normalization_residual()?;
    if achieved > NORMALIZED_TOL {
        return Err(TodaError::InternalInconsistency {
            context: "normalization residual exceeds tolerance".into(),
            discrepancy: achieved,
        });
    }
    Ok((out, root.coeff(0)))
}

/// One term of a wedge expansion: the ascending index set, the branched
/// exponent `sum beta_{i_j} - k(k+1)/2`, and the reduced-Wronskian
/// coefficient series.
#[derive(Clone, Debug)]
pub struct LambdaTerm {
    pub indices: Vec<usize>,
    pub exponent: f64,
    pub coeff: TruncatedSeries,
}

/// Expansion of the k-th wedge `Lambda_k = nu ^ nu' ^ ... ^ nu^(k)` over the
/// standard basis: one term per `(k+1)`-subset of `{0..n}`, sorted with the
/// `(0..k)` term (the strict exponent minimum) first.
#[derive(Clone, Debug)]
pub struct LambdaExpansion {
    pub k: usize,
    pub terms: Vec<LambdaTerm>,
}

impl LambdaExpansion {
    /// The `(0, 1, .., k)` term, which carries the strictly smallest exponent.
    pub fn base_term(&self) -> &LambdaTerm {
        &self.terms[0]
    }
}

/// Wedge expansion of an arbitrary framed curve `(z^{beta_i} g_i)_i`; does not
/// require the normalized condition (the tilded curves of the coordinate
/// normalization are expanded with the same machinery).
pub fn wedge_expansion(
    betas: &[f64],
    gs: &[TruncatedSeries],
    k: usize,
) -> Result<LambdaExpansion> {
    let n = gs.len() - 1;
    assert!(k <= n, "wedge level must not exceed the rank");
    let order = gs.iter().map(|g| g.order()).min().unwrap();
    if order < k {
        return Err(TodaError::InsufficientOrder {
            needed: k,
            got: order,
        });
    }
    let offset = 0.5 * (k * (k + 1)) as f64;
    let mut terms = Vec::new();
    let mut subset: Vec<usize> = (0..=k).collect();
    loop {
        let sel_betas: Vec<f64> = subset.iter().map(|&i| betas[i]).collect();
        let sel_gs: Vec<TruncatedSeries> = subset.iter().map(|&i| gs[i].clone()).collect();
        let coeff = reduced_wronskian(&sel_betas, &sel_gs)?;
        let exponent = sel_betas.iter().sum::<f64>() - offset;
        terms.push(LambdaTerm {
            indices: subset.clone(),
            exponent,
            coeff,
        });
        // next (k+1)-subset of {0..n} in lexicographic order
        let mut pos = k + 1;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if subset[pos] < n - (k - pos) {
                subset[pos] += 1;
                for q in (pos + 1)..=k {
                    subset[q] = subset[q - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                subset.clear();
                break;
            }
        }
        if subset.is_empty() {
            break;
        }
    }
    terms.sort_by(|a, b| {
        a.exponent
            .partial_cmp(&b.exponent)
            .unwrap()
            .then_with(|| a.indices.cmp(&b.indices))
    });
    Ok(LambdaExpansion { k, terms })
}

/// Wedge expansion of the canonical curve of a normalized seed.
///
/// For `k = n` the expansion is the single term with exponent 0 and
/// coefficient series `G_n = 1`.
pub fn lambda_expansion(seed: &SeedData, k: usize) -> Result<LambdaExpansion> {
    if !seed.is_normalized() {
        return Err(TodaError::NotNormalized);
    }
    wedge_expansion(seed.exponents().beta(), seed.seeds(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::ExponentData;

    fn series(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs)
    }

    #[test]
    fn reduced_wronskian_of_one_and_z() {
        // betas=(0,1), gs=(1,1): W(1, z) = 1, so G_1 = 1.
        let g = reduced_wronskian(&[0.0, 1.0], &[series(&[1.0, 0.0]), series(&[1.0, 0.0])])
            .unwrap();
        assert!((g.coeff(0) - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(g.coeff(1).norm() < 1e-14);
    }

    #[test]
    fn reduced_wronskian_of_veronese_rows() {
        // betas=(0,1,2), gs=(1,1,1): W(1, z, z^2) = 2, so G_2 = 2.
        let g = reduced_wronskian(
            &[0.0, 1.0, 2.0],
            &[series(&[1.0, 0.0, 0.0]), series(&[1.0, 0.0, 0.0]), series(&[1.0, 0.0, 0.0])],
        )
        .unwrap();
        assert!((g.coeff(0) - C64::new(2.0, 0.0)).norm() < 1e-14);
        for k in 1..=g.order() {
            assert!(g.coeff(k).norm() < 1e-14);
        }
    }

    #[test]
    fn level_zero_is_the_seed() {
        let s = series(&[0.7, -0.3, 0.11]);
        let g = reduced_wronskian(&[0.37], std::slice::from_ref(&s)).unwrap();
        assert_eq!(g, s);
    }

    #[test]
    fn value_at_zero_matches_closed_form() {
        let betas = [0.25, 1.5, 2.75];
        let gs = [
            series(&[2.0, 1.0, 0.5, 0.0]),
            series(&[1.0, -1.0, 0.25, 0.0]),
            series(&[0.5, 0.2, 0.0, 0.0]),
        ];
        let g = reduced_wronskian(&betas, &gs).unwrap();
        let closed = wronskian_at_zero(&betas, &gs);
        assert!((g.coeff(0) - closed).norm() <= 1e-12 * closed.norm().max(1.0));
    }

    #[test]
    fn value_at_zero_vanishing_factor() {
        let betas = [0.0, 1.0];
        let gs = [series(&[0.0, 1.0]), series(&[1.0, 0.0])];
        assert_eq!(wronskian_at_zero(&betas, &gs), C64::new(0.0, 0.0));
    }

    #[test]
    fn column_swap_negates() {
        let betas = [0.3, 1.1, 2.9];
        let gs = [
            series(&[1.0, 0.4, -0.2, 0.1]),
            series(&[0.8, -0.1, 0.3, 0.0]),
            series(&[1.2, 0.05, 0.0, -0.3]),
        ];
        let g = reduced_wronskian(&betas, &gs).unwrap();
        let swapped_b = [1.1, 0.3, 2.9];
        let swapped_g = [gs[1].clone(), gs[0].clone(), gs[2].clone()];
        let h = reduced_wronskian(&swapped_b, &swapped_g).unwrap();
        for k in 0..=g.order() {
            assert!((g.coeff(k) + h.coeff(k)).norm() < 1e-12 * g.max_abs_coeff().max(1.0));
        }
    }

    #[test]
    fn insufficient_order_detected() {
        let betas = [0.0, 1.0, 2.0];
        let gs = [series(&[1.0, 0.0]), series(&[1.0, 0.0]), series(&[1.0, 0.0])];
        assert!(matches!(
            reduced_wronskian(&betas, &gs),
            Err(TodaError::InsufficientOrder { .. })
        ));
    }

    fn seed_n1(g0: &[f64], g1: &[f64], order: usize) -> SeedData {
        let e = ExponentData::new(1, &[0.0]).unwrap();
        SeedData::from_polynomials(
            e,
            &[
                g0.iter().map(|&x| C64::new(x, 0.0)).collect(),
                g1.iter().map(|&x| C64::new(x, 0.0)).collect(),
            ],
            order,
        )
        .unwrap()
    }

    #[test]
    fn normalize_constant_seed() {
        // n=1, beta=(0,1), g=(2,1): G_1 = 2, normalized g = (sqrt 2, 1/sqrt 2).
        let seed = seed_n1(&[2.0], &[1.0], 6);
        let (norm, root) = normalize(&seed).unwrap();
        assert!(norm.is_normalized());
        assert!((root - C64::new(2f64.sqrt(), 0.0)).norm() < 1e-14);
        assert!((norm.seeds()[0].coeff(0) - C64::new(2f64.sqrt(), 0.0)).norm() < 1e-13);
        assert!((norm.seeds()[1].coeff(0) - C64::new(1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-13);
        assert!(norm.normalization_residual().unwrap() <= NORMALIZED_TOL);
    }

    #[test]
    fn normalize_is_idempotent() {
        let seed = seed_n1(&[2.0, 0.4], &[1.0, -0.3], 8);
        let (once, _) = normalize(&seed).unwrap();
        let (twice, root) = normalize(&once).unwrap();
        assert!((root - C64::new(1.0, 0.0)).norm() < 1e-12);
        for (a, b) in once.seeds().iter().zip(twice.seeds()) {
            for k in 0..=a.order() {
                assert_eq!(a.coeff(k), b.coeff(k));
            }
        }
    }

    #[test]
    fn normalize_degenerate_seed() {
        // g_0 = z forces G_1(0) = 0.
        let seed = seed_n1(&[0.0, 1.0], &[1.0], 6);
        assert!(matches!(normalize(&seed), Err(TodaError::DegenerateSeed)));
    }

    #[test]
    fn scaling_identity() {
        // Reduced Wronskian of (h g_i) equals h^{k+1} times the one of (g_i).
        let betas = [0.2, 1.4, 3.0];
        let gs = [
            series(&[1.0, 0.3, -0.1, 0.02, 0.0]),
            series(&[0.7, -0.2, 0.05, 0.0, 0.0]),
            series(&[1.3, 0.1, 0.0, 0.04, 0.0]),
        ];
        let h = series(&[1.0, 0.5, -0.25, 0.125, 0.0]);
        let scaled: Vec<TruncatedSeries> = gs.iter().map(|g| g.mul(&h)).collect();
        let lhs = reduced_wronskian(&betas, &scaled).unwrap();
        let rhs = reduced_wronskian(&betas, &gs)
            .unwrap()
            .mul(&h.mul(&h).mul(&h));
        for k in 0..=lhs.order().min(rhs.order()) {
            assert!(
                (lhs.coeff(k) - rhs.coeff(k)).norm() <= 1e-11 * rhs.max_abs_coeff().max(1.0),
                "coefficient {k}"
            );
        }
    }

    #[test]
    fn lambda_expansion_top_level_is_unit() {
        let e = ExponentData::new(2, &[0.0, 0.0]).unwrap();
        let seed = SeedData::from_polynomials(
            e,
            &[
                vec![C64::new(1.0, 0.0)],
                vec![C64::new(1.0, 0.0)],
                vec![C64::new(0.5, 0.0)],
            ],
            8,
        )
        .unwrap();
        let (seed, _) = normalize(&seed).unwrap();
        let top = lambda_expansion(&seed, 2).unwrap();
        assert_eq!(top.terms.len(), 1);
        assert!(top.base_term().exponent.abs() < 1e-12);
        assert!((top.base_term().coeff.coeff(0) - C64::new(1.0, 0.0)).norm() < NORMALIZED_TOL);
    }

    #[test]
    fn lambda_expansion_level_zero_terms() {
        // n=1, k=0, seed (1,1), beta=(0,1): terms {(0): (0, 1), (1): (1, 1)}.
        let seed = seed_n1(&[1.0], &[1.0], 6);
        let (seed, _) = normalize(&seed).unwrap();
        let exp = lambda_expansion(&seed, 0).unwrap();
        assert_eq!(exp.terms.len(), 2);
        assert_eq!(exp.terms[0].indices, vec![0]);
        assert!((exp.terms[0].exponent - 0.0).abs() < 1e-14);
        assert_eq!(exp.terms[1].indices, vec![1]);
        assert!((exp.terms[1].exponent - 1.0).abs() < 1e-14);
    }

    #[test]
    fn lambda_expansion_veronese_pairs() {
        // n=2, gamma=(0,0), g=(1,1,1/2), k=1: exponents {0,1,2}, constants
        // from the 2x2 reduced Wronskians.
        let e = ExponentData::new(2, &[0.0, 0.0]).unwrap();
        let seed = SeedData::from_polynomials(
            e,
            &[
                vec![C64::new(1.0, 0.0)],
                vec![C64::new(1.0, 0.0)],
                vec![C64::new(0.5, 0.0)],
            ],
            8,
        )
        .unwrap();
        let (seed, _) = normalize(&seed).unwrap();
        let exp = lambda_expansion(&seed, 1).unwrap();
        assert_eq!(exp.terms.len(), 3);
        let expect = [(vec![0, 1], 0.0, 1.0), (vec![0, 2], 1.0, 1.0), (vec![1, 2], 2.0, 0.5)];
        for (term, (idx, ex, c)) in exp.terms.iter().zip(&expect) {
            assert_eq!(&term.indices, idx);
            assert!((term.exponent - ex).abs() < 1e-14);
            assert!((term.coeff.coeff(0) - C64::new(*c, 0.0)).norm() < 1e-12);
        }
        // lowest exponent is -alpha_2
        assert!((exp.base_term().exponent + seed.exponents().alpha_one_indexed(2)).abs() < 1e-12);
    }

    #[test]
    fn lambda_expansion_requires_normalized() {
        let seed = seed_n1(&[2.0], &[1.0], 6);
        assert!(matches!(
            lambda_expansion(&seed, 0),
            Err(TodaError::NotNormalized)
        ));
    }

    #[test]
    fn dominance_monotonicity_of_exponents() {
        let e = ExponentData::new(3, &[0.5, 1.25, 0.1]).unwrap();
        let betas = e.beta().to_vec();
        let gs: Vec<TruncatedSeries> = (0..4).map(|_| series(&[1.0, 0.1, 0.0, 0.0, 0.0])).collect();
        let exp = wedge_expansion(&betas, &gs, 1).unwrap();
        for a in &exp.terms {
            for b in &exp.terms {
                let dominates = a
                    .indices
                    .iter()
                    .zip(&b.indices)
                    .all(|(x, y)| x >= y)
                    && a.indices != b.indices;
                if dominates {
                    assert!(a.exponent > b.exponent);
                }
            }
        }
    }
}
