//! Independent finite-difference oracle for the radial bound-state family
//!
//! ```text
//!   ( −(1/(2r^m)) ∂_r r^m ∂_r + (l² + (m−1)l)/(2r²) − 1/r ) R = E R
//! ```
//!
//! used to confirm every closed-form energy without trusting any algebra.
//!
//! The equation is first symmetrized with `u = r^{m/2} R`, turning the
//! centrifugal strength into `l′(l′+1)` with `l′ = l + m/2 − 1` (a computed
//! identity, unit-tested exactly over the half-integer matrix). The
//! substitution `x = ln r`, `q = u/√r` then gives the pencil
//!
//! ```text
//!   −(1/2) q″ + [ (l′+1/2)²/2 − eˣ ] q = E e^{2x} q,
//! ```
//!
//! discretized by second-order central differences on a uniform grid in `x`,
//! with a Dirichlet condition at the outer end and the indicial (Robin)
//! condition `q′ = (l′+1/2 − r/(l′+1)) q` at the inner end, which selects the
//! regular solution `u ~ r^{l′+1}`. The generalized symmetric tridiagonal
//! problem is solved by Sturm bisection directly on the pencil `A − λB`
//! (congruence by `B^{-1/2}` would wreck the absolute accuracy of the small
//! eigenvalues), and eigenvalues are Richardson-extrapolated across dyadic
//! grid refinements. Observed convergence is clean second order for every
//! channel, including the critically singular `l′ = −1/2` one.

use crate::error::{KeplerError, Result};
use crate::specialfn::laguerre_unchecked;
use crate::spectrum::{QuantumChannel, RadialFamilyParams};
use crate::tridiag::TridiagPencil;
use num_rational::Rational64;

/// Discretization parameters.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Inner endpoint of the mesh (indicial boundary condition).
    pub rmin: f64,
    /// Outer endpoint of the mesh (Dirichlet).
    pub rmax: f64,
    /// Grid size of the coarsest refinement level.
    pub npoints: usize,
    /// Number of dyadic refinements used for extrapolation (≥ 2).
    pub refinement_levels: usize,
    /// Number of eigenvalues requested.
    pub num_levels: usize,
}

impl SolverConfig {
    /// Defaults for a given family: the outer box scales quadratically with
    /// the largest principal quantum number, the inner cutoff linearly with
    /// the ground-state radius scale.
    pub fn for_family(p: &RadialFamilyParams, num_levels: usize) -> Self {
        let lp = p.lprime();
        SolverConfig {
            rmin: 1e-4 * (1.0 + lp),
            rmax: 40.0 * (num_levels as f64 + lp + 1.0).powi(2),
            npoints: 1500,
            refinement_levels: if lp < 0.0 { 4 } else { 3 },
            num_levels,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rmin > 0.0 && self.rmin < self.rmax && self.rmax.is_finite()) {
            return Err(KeplerError::Parameter(format!(
                "need 0 < rmin < rmax, got [{}, {}]",
                self.rmin, self.rmax
            )));
        }
        if self.npoints < 200 {
            return Err(KeplerError::Parameter(format!(
                "npoints = {} must be at least 200",
                self.npoints
            )));
        }
        if self.refinement_levels < 2 {
            return Err(KeplerError::Parameter(
                "refinement_levels must be at least 2".into(),
            ));
        }
        if self.num_levels == 0 || self.num_levels * 10 >= self.npoints {
            return Err(KeplerError::Parameter(format!(
                "requested {} eigenvalues from a base grid of {} points",
                self.num_levels, self.npoints
            )));
        }
        Ok(())
    }
}

/// Result of a solve: extrapolated eigenvalues (ascending), the raw values on
/// each refinement level, and any accuracy warnings.
#[derive(Debug, Clone)]
pub struct RadialSolve {
    pub eigenvalues: Vec<f64>,
    pub raw_levels: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

/// The symmetrization identity `l² + (m−1)l + (m/2)(m/2−1) = l′(l′+1)` in
/// exact arithmetic; both sides are returned for testing.
pub fn centrifugal_strengths(p: &RadialFamilyParams) -> (Rational64, Rational64) {
    let l = p.l().as_rational();
    let m = p.m().as_rational();
    let one = Rational64::from_integer(1);
    let half_m = m / 2;
    let lhs = l * l + (m - one) * l + half_m * (half_m - one);
    let lp = p.lprime_rational();
    let rhs = lp * (lp + one);
    (lhs, rhs)
}

struct Mesh {
    pencil: TridiagPencil,
    radii: Vec<f64>,
}

fn assemble(lprime: f64, rmin: f64, rmax: f64, npoints: usize) -> Result<Mesh> {
    let x0 = rmin.ln();
    let x1 = rmax.ln();
    let h = (x1 - x0) / npoints as f64;
    let kappa = lprime + 0.5;
    let mut diag = Vec::with_capacity(npoints);
    let mut weight = Vec::with_capacity(npoints);
    let mut radii = Vec::with_capacity(npoints);
    for i in 0..npoints {
        let x = x0 + h * i as f64;
        let r = x.exp();
        radii.push(r);
        diag.push(1.0 / (h * h) + 0.5 * kappa * kappa - r);
        weight.push(r * r);
    }
    // Indicial Robin condition at the inner node, eliminated through a ghost
    // point; the row (and its weight) are halved to keep the pencil symmetric.
    let beta = kappa - rmin / (lprime + 1.0);
    diag[0] = 0.5 * (1.0 / (h * h) + beta / h + 0.5 * kappa * kappa - rmin);
    weight[0] *= 0.5;
    let off = vec![-0.5 / (h * h); npoints - 1];
    Ok(Mesh {
        pencil: TridiagPencil::new(diag, off, weight)?,
        radii,
    })
}

fn richardson_order2(per_grid: &[Vec<f64>], idx: usize) -> (f64, f64) {
    let mut row: Vec<f64> = per_grid.iter().map(|g| g[idx]).collect();
    let mut step = 1usize;
    let mut last_delta = f64::INFINITY;
    while row.len() > 1 {
        let factor = 4.0f64.powi(step as i32);
        let next: Vec<f64> = (0..row.len() - 1)
            .map(|i| (factor * row[i + 1] - row[i]) / (factor - 1.0))
            .collect();
        last_delta = (next[next.len() - 1] - row[row.len() - 1]).abs();
        row = next;
        step += 1;
    }
    (row[0], last_delta)
}

fn observed_order(values: &[f64]) -> Option<f64> {
    let n = values.len();
    if n < 3 {
        return None;
    }
    let d1 = values[n - 3] - values[n - 2];
    let d2 = values[n - 2] - values[n - 1];
    if d2 == 0.0 || (d1 / d2) <= 0.0 {
        return None;
    }
    Some((d1 / d2).log2())
}

/// Lowest `cfg.num_levels` eigenvalues of the radial family, ascending,
/// Richardson-extrapolated across the refinement levels.
pub fn solve_radial_family(p: &RadialFamilyParams, cfg: &SolverConfig) -> Result<RadialSolve> {
    cfg.validate()?;
    let lp = p.lprime();
    let mut raw_levels = Vec::with_capacity(cfg.refinement_levels);
    for j in 0..cfg.refinement_levels {
        let npoints = cfg.npoints << j;
        let mesh = assemble(lp, cfg.rmin, cfg.rmax, npoints)?;
        raw_levels.push(mesh.pencil.lowest_eigenvalues(cfg.num_levels)?);
    }
    let mut eigenvalues = Vec::with_capacity(cfg.num_levels);
    let mut warnings = Vec::new();
    for idx in 0..cfg.num_levels {
        let (value, delta) = richardson_order2(&raw_levels, idx);
        if delta > 1e-6 * value.abs().max(1e-3) {
            warnings.push(format!(
                "eigenvalue {idx}: extrapolation increment {delta:.3e} has not settled"
            ));
        }
        let series: Vec<f64> = raw_levels.iter().map(|g| g[idx]).collect();
        if let Some(order) = observed_order(&series) {
            if (order - 2.0).abs() > 0.5 {
                warnings.push(format!(
                    "eigenvalue {idx}: observed convergence order {order:.2} deviates from 2"
                ));
            }
        }
        eigenvalues.push(value);
    }
    let negatives = eigenvalues.iter().filter(|&&e| e < -1e-12).count();
    if negatives < cfg.num_levels {
        return Err(KeplerError::Accuracy(format!(
            "only {negatives} of {} bound states fit in the box; increase rmax (currently {})",
            cfg.num_levels, cfg.rmax
        )));
    }
    Ok(RadialSolve {
        eigenvalues,
        raw_levels,
        warnings,
    })
}

/// Solve a Kepler channel by the dimensional reduction `m = n/2`,
/// centrifugal parameter `l/2`; the returned eigenvalues line up with the
/// channel's closed-form energies for `k = 1, 2, …`.
pub fn solve_kepler_channel(ch: &QuantumChannel, cfg: &SolverConfig) -> Result<RadialSolve> {
    let p = RadialFamilyParams::from_channel(ch);
    solve_radial_family(&p, cfg)
}

/// Default configuration for a Kepler channel.
pub fn kepler_channel_config(ch: &QuantumChannel, num_levels: usize) -> SolverConfig {
    SolverConfig::for_family(&RadialFamilyParams::from_channel(ch), num_levels)
}

/// Overlap of the solver's `k`-th eigenvector (finest grid, inverse
/// iteration) with the closed-form eigenfunction
/// `u = r^{l′+1} L^{2l′+1}_{k−1}(2r/(k+l′)) e^{−r/(k+l′)}`, both normalized in
/// the discrete `dr = r dx` measure. Returns a value in [0, 1].
pub fn eigenvector_overlap(p: &RadialFamilyParams, k: usize, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    if k == 0 || k > cfg.num_levels {
        return Err(KeplerError::Parameter(format!(
            "eigenvector index k={k} outside 1..={}",
            cfg.num_levels
        )));
    }
    let lp = p.lprime();
    let npoints = cfg.npoints << (cfg.refinement_levels - 1);
    let mesh = assemble(lp, cfg.rmin, cfg.rmax, npoints)?;
    let evs = mesh.pencil.lowest_eigenvalues(k)?;
    let q = mesh.pencil.eigenvector(evs[k - 1])?;
    let scale = k as f64 + lp;
    if scale <= 0.0 {
        return Err(KeplerError::Domain(format!("k + l' = {scale} must be positive")));
    }
    let alpha = 2.0 * lp + 1.0;
    let mut dot = 0.0f64;
    let mut nn_fd = 0.0f64;
    let mut nn_ex = 0.0f64;
    for (i, (&r, &qi)) in mesh.radii.iter().zip(&q).enumerate() {
        let w = if i == 0 { 0.5 * r } else { r };
        let u_fd = r.sqrt() * qi;
        let u_ex = r.powf(lp + 1.0)
            * laguerre_unchecked(alpha, k - 1, 2.0 * r / scale)
            * (-r / scale).exp();
        dot += w * u_fd * u_ex;
        nn_fd += w * u_fd * u_fd;
        nn_ex += w * u_ex * u_ex;
    }
    Ok(dot.abs() / (nn_fd * nn_ex).sqrt())
}
