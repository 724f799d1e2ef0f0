//! Generalized Laguerre polynomials, Gauss–Laguerre quadrature and exact
//! combinatorics.
//!
//! Everything downstream (normalization integrals, inner products, residuals,
//! degeneracy identities) is built on these four primitives, so they are kept
//! deliberately boring: upward three-term recurrence for evaluation (stable on
//! x ≥ 0), the derivative identity d/dx L^α_n = −L^{α+1}_{n−1}, Golub–Welsch
//! quadrature from the Jacobi matrix of the weight x^α e^{−x}, and
//! overflow-checked integer binomials.

use crate::error::{KeplerError, Result};
use crate::tridiag::TridiagPencil;
use statrs::function::gamma::gamma;

/// Parameters of a generalized Laguerre polynomial `L^α_n`.
///
/// The superscript is real-valued (separated radial channels need
/// α = l + n/2 − 1, which is fractional in odd dimensions); integrability of
/// the companion weight requires α > −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParams {
    alpha: f64,
    degree: usize,
}

impl LaguerreParams {
    pub fn new(alpha: f64, degree: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(KeplerError::Parameter(format!(
                "Laguerre superscript must be a finite real > -1, got {alpha}"
            )));
        }
        Ok(LaguerreParams { alpha, degree })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Evaluate `L^α_n(x)` by the upward degree recurrence
/// `(k+1) L_{k+1} = (2k+1+α−x) L_k − (k+α) L_{k−1}`.
pub fn laguerre_eval(params: LaguerreParams, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(KeplerError::Domain(format!(
            "Laguerre evaluation needs x >= 0, got {x}"
        )));
    }
    Ok(laguerre_unchecked(params.alpha, params.degree, x))
}

pub(crate) fn laguerre_unchecked(alpha: f64, degree: usize, x: f64) -> f64 {
    if degree == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// First derivative via `d/dx L^α_n = −L^{α+1}_{n−1}` (zero for degree 0).
pub fn laguerre_deriv(params: LaguerreParams, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(KeplerError::Domain(format!(
            "Laguerre derivative needs x >= 0, got {x}"
        )));
    }
    Ok(laguerre_deriv_unchecked(params.alpha, params.degree, x))
}

pub(crate) fn laguerre_deriv_unchecked(alpha: f64, degree: usize, x: f64) -> f64 {
    if degree == 0 {
        0.0
    } else {
        -laguerre_unchecked(alpha + 1.0, degree - 1, x)
    }
}

/// Second derivative, iterating the same identity.
pub(crate) fn laguerre_second_deriv_unchecked(alpha: f64, degree: usize, x: f64) -> f64 {
    if degree < 2 {
        0.0
    } else {
        laguerre_unchecked(alpha + 2.0, degree - 2, x)
    }
}

/// A Gauss–Laguerre rule: `Σ w_i f(x_i) ≈ ∫_0^∞ x^α e^{−x} f(x) dx`,
/// exact for polynomial `f` of degree ≤ 2·npoints − 1.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Apply the rule to `f` (the weight `x^α e^{−x}` is implicit).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Build an `npoints`-node Gauss–Laguerre rule for the weight `x^α e^{−x}`
/// from the symmetric tridiagonal Jacobi matrix of the weight
/// (diagonal `2k+α+1`, off-diagonal `√(k(k+α))`), Golub–Welsch style:
/// nodes are the eigenvalues, weights are `Γ(α+1)` times the squared first
/// eigenvector components.
pub fn gauss_laguerre_rule(alpha: f64, npoints: usize) -> Result<QuadratureRule> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(KeplerError::Parameter(format!(
            "quadrature weight exponent must be > -1, got {alpha}"
        )));
    }
    if npoints == 0 {
        return Err(KeplerError::Parameter(
            "quadrature rule needs at least one node".into(),
        ));
    }
    let diag: Vec<f64> = (0..npoints).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..npoints)
        .map(|k| (k as f64 * (k as f64 + alpha)).sqrt())
        .collect();
    let jacobi = TridiagPencil::standard(diag, off)?;
    let nodes = jacobi.all_eigenvalues()?;
    let mu0 = gamma(alpha + 1.0);
    let mut weights = Vec::with_capacity(npoints);
    for &node in &nodes {
        let v = jacobi.eigenvector(node)?;
        weights.push(mu0 * v[0] * v[0]);
    }
    let rule = QuadratureRule {
        nodes,
        weights,
        alpha,
    };
    validate_rule(&rule, mu0, npoints)?;
    Ok(rule)
}

fn validate_rule(rule: &QuadratureRule, mu0: f64, npoints: usize) -> Result<()> {
    for i in 0..npoints {
        if !(rule.nodes[i] > 0.0) || !(rule.weights[i] > 0.0) {
            return Err(KeplerError::Numerical(format!(
                "Gauss-Laguerre rule (alpha={}, n={npoints}) produced invalid node/weight at {i}: \
                 node {}, weight {}",
                rule.alpha, rule.nodes[i], rule.weights[i]
            )));
        }
        if i > 0 && rule.nodes[i] <= rule.nodes[i - 1] {
            return Err(KeplerError::Numerical(format!(
                "Gauss-Laguerre nodes not strictly increasing at index {i}"
            )));
        }
    }
    let wsum: f64 = rule.weights.iter().sum();
    let rel = ((wsum - mu0) / mu0).abs();
    if rel > 1e-12 {
        return Err(KeplerError::Numerical(format!(
            "Gauss-Laguerre weight sum off by {rel:.3e} relative (alpha={}, n={npoints})",
            rule.alpha
        )));
    }
    Ok(())
}

/// Default node count for an integrand of the given polynomial degree:
/// half the degree plus ten guard nodes.
pub fn nodes_for_degree(poly_degree: usize) -> usize {
    poly_degree / 2 + 10
}

/// Exact binomial coefficient with checked arithmetic; `k` outside `[0, n]`
/// yields 0.
pub fn exact_binomial(n: u64, k: i64) -> Result<u64> {
    if k < 0 || k as u64 > n {
        return Ok(0);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc
            .checked_mul((n - j) as u128)
            .ok_or_else(|| KeplerError::Numerical(format!("binomial C({n},{k}) overflows")))?;
        acc /= (j + 1) as u128;
    }
    u64::try_from(acc)
        .map_err(|_| KeplerError::Numerical(format!("binomial C({n},{k}) exceeds u64")))
}

/// Γ(x) for x > 0, re-exported for normalization formulas.
pub fn gamma_fn(x: f64) -> f64 {
    gamma(x)
}
