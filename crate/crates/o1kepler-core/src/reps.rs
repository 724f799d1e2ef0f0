//! Dimension and weight bookkeeping: harmonic-polynomial dimensions, level
//! degeneracies and the multiplicity-free ladder of angular sectors per level.
//!
//! Dimensions use the harmonic-polynomial binomial formula, which is
//! integer-exact and stays valid at n = 2 where the rotation group is abelian
//! and the degree-l harmonic space splits into two characters (callers get a
//! caveat note instead of an irreducibility claim).

use crate::error::Result;
use crate::specialfn::exact_binomial;
use crate::spectrum::HalfInt;
use serde::{Deserialize, Serialize};

/// Dimension of the space of polynomials of exact degree `d` in `n` variables
/// (zero for negative `d`).
fn monomial_dim(n: u32, d: i64) -> Result<u64> {
    if d < 0 {
        return Ok(0);
    }
    exact_binomial(d as u64 + n as u64 - 1, n as i64 - 1)
}

/// Dimension of the degree-`l` harmonic polynomials in `n` variables:
/// `C(l+n−1, n−1) − C(l+n−3, n−1)`, i.e. degree-l monomials minus the image
/// of multiplication by r² (equivalently, the rank of the Laplacian).
pub fn harmonic_dim(n: u32, l: u32) -> Result<u64> {
    Ok(monomial_dim(n, l as i64)? - monomial_dim(n, l as i64 - 2)?)
}

/// One rung of the per-level angular ladder: angular degree, dimension, and
/// the level's highest weight under the compact group (n half-integer
/// entries, all −1/2 except the last).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTypeEntry {
    pub l: u32,
    pub dim: u64,
    pub un_weight: Vec<HalfInt>,
}

/// The highest weight of level `I` in parity sector `sigma`:
/// `(−1/2, …, −1/2, −(1/2 + sigma + 2I))`.
pub fn level_weight(n: u32, sigma: u32, level: u32) -> Vec<HalfInt> {
    let mut w = vec![HalfInt::from_twice(-1); n as usize];
    w[n as usize - 1] = HalfInt::from_twice(-(1 + 2 * (sigma as i64 + 2 * level as i64)));
    w
}

/// The angular decomposition of level `I`: one entry per degree
/// `l = sigma, sigma+2, …, 2I+sigma`. Each entry carries the weight obtained
/// by padding its degree with the level's remaining radial pairs, which makes
/// every entry assemble to the same level weight.
pub fn ktype_decomposition(n: u32, sigma: u32, level: u32) -> Result<Vec<KTypeEntry>> {
    let _ = crate::spectrum::channels_at_level(n, sigma, level)?; // parameter validation
    let mut entries = Vec::with_capacity(level as usize + 1);
    for j in 0..=level {
        let l = sigma + 2 * j;
        let prior_even_steps = (level - j) as i64;
        let mut w = vec![HalfInt::from_twice(-1); n as usize];
        w[n as usize - 1] = HalfInt::from_twice(-(1 + 2 * (l as i64 + 2 * prior_even_steps)));
        entries.push(KTypeEntry {
            l,
            dim: harmonic_dim(n, l)?,
            un_weight: w,
        });
    }
    Ok(entries)
}

/// Dimension of the level-`I` energy eigenspace:
/// `Σ_{k=0}^{I} harmonic_dim(n, 2k+sigma)`, which telescopes to the exact
/// binomial `C(2I+sigma+n−1, n−1)`.
pub fn level_degeneracy(n: u32, sigma: u32, level: u32) -> Result<u64> {
    let mut total: u64 = 0;
    for j in 0..=level {
        total = total
            .checked_add(harmonic_dim(n, sigma + 2 * j)?)
            .ok_or_else(|| {
                crate::error::KeplerError::Numerical("level degeneracy overflows u64".into())
            })?;
    }
    Ok(total)
}
