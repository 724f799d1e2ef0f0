//! Closed-form radial bound states, their normalization, inner products and
//! an analytic ODE-residual check.
//!
//! A channel's radial factor is
//!
//! ```text
//!   R(r) = c · r^{l+1} · L^{l+n/2−1}_{k−1}(2r²/ν) · exp(−r²/ν),   ν = I + n/4 + σ/2,
//! ```
//!
//! normalized in `L²(ℝ₊, r^{n−1} dr)`. All integrals substitute `u = 2r²/ν`
//! (or the pairwise analogue), which turns the integrand into the Laguerre
//! weight times a polynomial, so Gauss–Laguerre quadrature is exact up to the
//! guard nodes. The residual of the radial operator is evaluated with
//! analytic derivatives through the closed form — finite differences would
//! conflate discretization error with formula error.

use crate::error::{KeplerError, Result};
use crate::specialfn::{
    gauss_laguerre_rule, laguerre_deriv_unchecked, laguerre_second_deriv_unchecked,
    laguerre_unchecked, nodes_for_degree,
};
use crate::spectrum::{channel_energy, QuantumChannel};

/// A normalized radial eigenfunction with its closed-form parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    channel: QuantumChannel,
    nu: f64,
    norm_const: f64,
}

impl RadialState {
    pub fn channel(&self) -> &QuantumChannel {
        &self.channel
    }

    /// The decay scale `ν = I + n/4 + σ/2`.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// The positive normalization constant `c`.
    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    pub fn energy(&self) -> f64 {
        channel_energy(&self.channel)
    }

    /// Pointwise value of the closed form at `r > 0`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(KeplerError::Domain(format!(
                "radial evaluation needs r > 0, got {r}"
            )));
        }
        let (g, _, _) = self.reduced_jet(r);
        Ok(r * g)
    }

    /// Value and first two derivatives of the reduced function `g = R/r`
    /// at `r > 0` (callers guarantee positivity).
    pub(crate) fn reduced_jet(&self, r: f64) -> (f64, f64, f64) {
        let l = self.channel.l() as i32;
        let alpha = self.channel.laguerre_alpha();
        let deg = self.channel.k() as usize - 1;
        let nu = self.nu;

        let u = 2.0 * r * r / nu;
        let du = 4.0 * r / nu;
        let ddu = 4.0 / nu;

        let a = r.powi(l);
        let a1 = l as f64 * r.powi(l - 1);
        let a2 = (l * (l - 1)) as f64 * r.powi(l - 2);

        let p = laguerre_unchecked(alpha, deg, u);
        let p1 = laguerre_deriv_unchecked(alpha, deg, u);
        let p2 = laguerre_second_deriv_unchecked(alpha, deg, u);
        let b = p;
        let b1 = p1 * du;
        let b2 = p2 * du * du + p1 * ddu;

        let w = (-r * r / nu).exp();
        let w1 = (-2.0 * r / nu) * w;
        let w2 = (-2.0 / nu + 4.0 * r * r / (nu * nu)) * w;

        let c = self.norm_const;
        let g = c * a * b * w;
        let g1 = c * (a1 * b * w + a * b1 * w + a * b * w1);
        let g2 = c
            * (a2 * b * w
                + 2.0 * a1 * b1 * w
                + 2.0 * a1 * b * w1
                + a * b2 * w
                + 2.0 * a * b1 * w1
                + a * b * w2);
        (g, g1, g2)
    }

    /// Test-only constructor for deliberately broken states.
    #[cfg(test)]
    pub(crate) fn with_parameters(channel: QuantumChannel, nu: f64, norm_const: f64) -> Self {
        RadialState {
            channel,
            nu,
            norm_const,
        }
    }
}

/// The squared norm `∫ R² r^{n−1} dr` of the closed form with constant `c`.
///
/// Substituting `u = 2r²/ν` gives
/// `c² · (1/2)(ν/2)^{l+n/2+1} ∫ u^{α+1} L(u)² e^{−u} du` with `α = l+n/2−1`,
/// quadrature-exact for the polynomial factor `u·L(u)²`.
fn norm_integral(channel: &QuantumChannel, nu: f64, c: f64) -> Result<f64> {
    let alpha = channel.laguerre_alpha();
    let deg = channel.k() as usize - 1;
    let rule = gauss_laguerre_rule(alpha, nodes_for_degree(2 * deg + 1))?;
    let q = rule.integrate(|u| {
        let p = laguerre_unchecked(alpha, deg, u);
        u * p * p
    });
    let exponent = channel.l() as f64 + channel.n() as f64 / 2.0 + 1.0;
    Ok(c * c * 0.5 * (nu / 2.0).powf(exponent) * q)
}

/// Construct the normalized radial state of a channel: `c > 0` chosen so the
/// `r^{n−1} dr` norm is one, by Gauss–Laguerre quadrature.
pub fn radial_normalize(channel: &QuantumChannel) -> Result<RadialState> {
    let nu = channel.nu();
    let raw = norm_integral(channel, nu, 1.0)?;
    if !(raw > 0.0) || !raw.is_finite() {
        return Err(KeplerError::Numerical(format!(
            "norm integral for channel {channel} came out {raw}"
        )));
    }
    Ok(RadialState {
        channel: *channel,
        nu,
        norm_const: 1.0 / raw.sqrt(),
    })
}

/// Re-evaluate the squared norm of an already-built state (idempotence and
/// isometry checks).
pub fn radial_norm_squared(state: &RadialState) -> Result<f64> {
    norm_integral(&state.channel, state.nu, state.norm_const)
}

/// `∫ R_a R_b r^{n−1} dr` for two states sharing `(n, σ, l)`.
///
/// The decay scales differ across `k`, so the integrand is reduced with the
/// harmonic-mean scale `H = 2ν_aν_b/(ν_a+ν_b)`: `u = 2r²/H` again yields
/// weight-times-polynomial.
pub fn radial_inner_product(a: &RadialState, b: &RadialState) -> Result<f64> {
    let (ca, cb) = (a.channel, b.channel);
    if ca.n() != cb.n() || ca.sigma() != cb.sigma() || ca.l() != cb.l() {
        return Err(KeplerError::Domain(format!(
            "inner product needs matching (n, sigma, l); got {ca} vs {cb}"
        )));
    }
    let alpha = ca.laguerre_alpha();
    let (da, db) = (ca.k() as usize - 1, cb.k() as usize - 1);
    let h = 2.0 * a.nu * b.nu / (a.nu + b.nu);
    let (ra, rb) = (h / a.nu, h / b.nu);
    let rule = gauss_laguerre_rule(alpha, nodes_for_degree(da + db + 1))?;
    let q = rule.integrate(|u| {
        u * laguerre_unchecked(alpha, da, ra * u) * laguerre_unchecked(alpha, db, rb * u)
    });
    let exponent = ca.l() as f64 + ca.n() as f64 / 2.0 + 1.0;
    Ok(a.norm_const * b.norm_const * 0.5 * (h / 2.0).powf(exponent) * q)
}

/// Maximum scaled residual of the separated radial operator over the grid:
/// `max |(H_rad R)(r) − E R(r)| / max |R|`, with
/// `H_rad R = (1/8)(−g″/r − (n−1) g′/r² + l(l+n−2) g/r³) − g/r` for `g = R/r`,
/// evaluated with analytic derivatives.
pub fn radial_residual(state: &RadialState, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(KeplerError::Domain("residual grid is empty".into()));
    }
    let n = state.channel.n() as f64;
    let l = state.channel.l() as f64;
    let energy = state.energy();
    let mut max_res = 0.0f64;
    let mut max_val = 0.0f64;
    for &r in grid {
        if !(r > 0.0) || !r.is_finite() {
            return Err(KeplerError::Domain(format!(
                "residual grid point must be positive, got {r}"
            )));
        }
        let (g, g1, g2) = state.reduced_jet(r);
        let applied = 0.125 * (-g2 / r - (n - 1.0) * g1 / (r * r) + l * (l + n - 2.0) * g / (r * r * r))
            - g / r;
        let value = r * g;
        max_res = max_res.max((applied - energy * value).abs());
        max_val = max_val.max(value.abs());
    }
    if max_val == 0.0 {
        return Err(KeplerError::Numerical(
            "state vanishes on the whole residual grid".into(),
        ));
    }
    Ok(max_res / max_val)
}

/// Default residual grid: 400 logarithmically spaced points spanning
/// `[10⁻²·√ν, 8·√ν]`, covering the region where all operator terms compete.
pub fn default_residual_grid(state: &RadialState) -> Vec<f64> {
    log_grid(1e-2 * state.nu.sqrt(), 8.0 * state.nu.sqrt(), 400)
}

pub(crate) fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (ll, lh) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (ll + (lh - ll) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Number of zeros of `R` on `(0, ∞)`, counted by sign changes on a fine
/// grid covering the oscillatory region.
pub fn radial_node_count(state: &RadialState) -> usize {
    let deg = state.channel.k() as f64 - 1.0;
    let alpha = state.channel.laguerre_alpha();
    let u_max = 4.0 * deg + 2.0 * alpha + 8.0;
    let r_max = (state.nu * u_max / 2.0).sqrt();
    let grid = log_grid(1e-4 * state.nu.sqrt(), r_max, 6000);
    let mut nodes = 0usize;
    let mut prev = 0.0f64;
    for &r in &grid {
        let (g, _, _) = state.reduced_jet(r);
        let v = r * g;
        if prev != 0.0 && v != 0.0 && prev.signum() != v.signum() {
            nodes += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    nodes
}
