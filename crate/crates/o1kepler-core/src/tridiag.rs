//! Symmetric tridiagonal eigenproblem machinery.
//!
//! One kernel serves two consumers: the Golub–Welsch construction of
//! Gauss–Laguerre rules (standard eigenproblem) and the radial eigensolver
//! (generalized pencil `A v = λ B v` with a positive diagonal `B`).
//!
//! Eigenvalues come from bisection on Sturm counts: by Sylvester's law of
//! inertia the number of negative pivots of the LDLᵀ factorization of
//! `A − λB` equals the number of pencil eigenvalues below `λ`. Eigenvectors
//! come from inverse iteration with a partially pivoted tridiagonal solve.
//! Working on the pencil directly avoids the `B^{-1/2}` congruence, whose
//! exponentially graded entries would destroy the absolute accuracy of the
//! small eigenvalues of interest.

use crate::error::{KeplerError, Result};

/// Symmetric tridiagonal pencil `(A, B)` with `A = tridiag(off, diag, off)`
/// and `B = diag(weight)`, `weight[i] > 0`.
#[derive(Debug, Clone)]
pub struct TridiagPencil {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub weight: Vec<f64>,
}

impl TridiagPencil {
    pub fn new(diag: Vec<f64>, off: Vec<f64>, weight: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(KeplerError::Parameter("empty tridiagonal matrix".into()));
        }
        if off.len() + 1 != diag.len() || weight.len() != diag.len() {
            return Err(KeplerError::Parameter(format!(
                "inconsistent tridiagonal sizes: diag {}, off {}, weight {}",
                diag.len(),
                off.len(),
                weight.len()
            )));
        }
        if weight.iter().any(|&w| !(w > 0.0)) {
            return Err(KeplerError::Parameter(
                "pencil weight must be strictly positive".into(),
            ));
        }
        Ok(TridiagPencil { diag, off, weight })
    }

    /// Standard eigenproblem (`B = I`).
    pub fn standard(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        let w = vec![1.0; diag.len()];
        TridiagPencil::new(diag, off, w)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of pencil eigenvalues strictly below `lambda`
    /// (negative LDLᵀ pivots of `A − λB`).
    pub fn count_below(&self, lambda: f64) -> usize {
        let n = self.len();
        let mut count = 0usize;
        let mut q = self.diag[0] - lambda * self.weight[0];
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let denom = if q.abs() < 1e-300 {
                if q >= 0.0 {
                    1e-300
                } else {
                    -1e-300
                }
            } else {
                q
            };
            q = (self.diag[i] - lambda * self.weight[i]) - self.off[i - 1] * self.off[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval certain to contain the whole spectrum (generalized Gershgorin).
    fn spectrum_bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::MAX;
        let mut hi = f64::MIN;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i < n - 1 { self.off[i].abs() } else { 0.0 };
            lo = lo.min((self.diag[i] - left - right) / self.weight[i]);
            hi = hi.max((self.diag[i] + left + right) / self.weight[i]);
        }
        (lo - 1.0, hi + 1.0)
    }

    /// The `nev` lowest eigenvalues, ascending, by Sturm bisection.
    pub fn lowest_eigenvalues(&self, nev: usize) -> Result<Vec<f64>> {
        let n = self.len();
        if nev == 0 || nev > n {
            return Err(KeplerError::Parameter(format!(
                "requested {nev} eigenvalues from a {n}-dimensional problem"
            )));
        }
        let (lo, hi) = self.spectrum_bounds();
        let mut out = Vec::with_capacity(nev);
        for k in 0..nev {
            let mut a = lo;
            let mut b = hi;
            for _ in 0..220 {
                let mid = 0.5 * (a + b);
                if (b - a) <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
                    break;
                }
                if self.count_below(mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            out.push(0.5 * (a + b));
        }
        Ok(out)
    }

    /// All eigenvalues, ascending.
    pub fn all_eigenvalues(&self) -> Result<Vec<f64>> {
        self.lowest_eigenvalues(self.len())
    }

    /// Eigenvector for the eigenvalue nearest `lambda`, by inverse iteration,
    /// normalized to unit B-norm (`Σ w_i v_i² = 1`).
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.len();
        // Shift slightly off the eigenvalue so the solve stays factorizable.
        let shift = lambda + lambda.abs().max(1e-3) * 1e-9 + 1e-300;
        let mut rng = SplitMix64::new(0x5eed_0f0c_u64 ^ n as u64);
        let mut v: Vec<f64> = (0..n).map(|_| rng.uniform() - 0.5).collect();
        normalize_b(&mut v, &self.weight)?;
        let mut best = v.clone();
        for _ in 0..5 {
            let rhs: Vec<f64> = (0..n).map(|i| self.weight[i] * v[i]).collect();
            let mut z = self.solve_shifted(shift, &rhs)?;
            normalize_b(&mut z, &self.weight)?;
            best.copy_from_slice(&z);
            v = z;
        }
        // Fix overall sign: make the entry of largest magnitude positive.
        let mut imax = 0usize;
        for i in 1..n {
            if best[i].abs() > best[imax].abs() {
                imax = i;
            }
        }
        if best[imax] < 0.0 {
            for x in &mut best {
                *x = -*x;
            }
        }
        Ok(best)
    }

    /// Solve `(A − shift·B) x = rhs` by tridiagonal LU with partial pivoting.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        let mut dl: Vec<f64> = self.off.clone();
        let mut d: Vec<f64> = (0..n)
            .map(|i| self.diag[i] - shift * self.weight[i])
            .collect();
        let mut du: Vec<f64> = self.off.clone();
        let mut du2 = vec![0.0; n];
        let mut b = rhs.to_vec();

        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                let pivot = if d[i] == 0.0 { 1e-300 } else { d[i] };
                let m = dl[i] / pivot;
                d[i + 1] -= m * du[i];
                b[i + 1] -= m * b[i];
                dl[i] = 0.0;
            } else {
                // Pivot row i+1 above row i.
                let m = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = 0.0;
                let old_d_next = d[i + 1];
                d[i + 1] = du[i] - m * old_d_next;
                du[i] = old_d_next;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du[i + 1];
                }
                let old_bi = b[i];
                b[i] = b[i + 1];
                b[i + 1] = old_bi - m * b[i + 1];
            }
        }
        // Back substitution.
        let mut x = vec![0.0; n];
        let dn = if d[n - 1] == 0.0 { 1e-300 } else { d[n - 1] };
        x[n - 1] = b[n - 1] / dn;
        if n >= 2 {
            let dm = if d[n - 2] == 0.0 { 1e-300 } else { d[n - 2] };
            x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / dm;
        }
        for i in (0..n.saturating_sub(2)).rev() {
            let di = if d[i] == 0.0 { 1e-300 } else { d[i] };
            x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / di;
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(KeplerError::Numerical(
                "inverse iteration produced non-finite entries".into(),
            ));
        }
        Ok(x)
    }
}

fn normalize_b(v: &mut [f64], w: &[f64]) -> Result<()> {
    let norm2: f64 = v.iter().zip(w).map(|(x, wi)| wi * x * x).sum();
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(KeplerError::Numerical(
            "vector with zero or non-finite B-norm in inverse iteration".into(),
        ));
    }
    let s = norm2.sqrt();
    for x in v {
        *x /= s;
    }
    Ok(())
}

/// Small deterministic PRNG (splitmix64) for reproducible starting vectors
/// and sampling; avoids any platform or crate-version dependence.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
