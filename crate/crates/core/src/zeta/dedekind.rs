//! Numerical Dedekind zeta values of a cubic field, by an Euler product and
//! independently by Dirichlet sums of ideal counts, plus the completed zeta
//! function and the constants built from its residue.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::local::{local_factor, LocalFactor};
use crate::error::{Error, Result};

/// Gamma-factor convention used by [`completed_zeta`].
pub const GAMMA_CONVENTION: &str =
    "Z(s) = |d|^(s/2) * (pi^(-s/2) Gamma(s/2))^r1 * ((2pi)^(1-s) Gamma(s))^r2 * zeta(s)";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaEstimate {
    pub s: f64,
    pub prime_bound: u64,
    /// Euler product over `p ≤ P`.
    pub euler: f64,
    /// `euler − 1`, kept separately since it underflows `euler` for large `s`.
    pub euler_excess: f64,
    /// `Σ_{n ≤ P} a_n n^{−s}`.
    pub dirichlet: f64,
    /// `3·Σ_{n > P} n^{−s} ≤ 3·P^{1−s}/(s − 1)`.
    pub tail_bound: f64,
}

impl ZetaEstimate {
    pub fn discrepancy(&self) -> f64 {
        (self.euler - self.dirichlet).abs()
    }
}

/// Smallest prime factor of every `n ≤ bound` (0 and 1 map to 0).
fn spf_sieve(bound: usize) -> Vec<u32> {
    let mut spf = vec![0u32; bound + 1];
    for i in 2..=bound {
        if spf[i] == 0 {
            let mut j = i;
            while j <= bound {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Splitting data for every prime up to `bound`.
pub fn local_factors(f: [i64; 3], bound: u64) -> Result<Vec<LocalFactor>> {
    let spf = spf_sieve(bound as usize);
    factors_from_sieve(f, &spf)
}

fn factors_from_sieve(f: [i64; 3], spf: &[u32]) -> Result<Vec<LocalFactor>> {
    let primes: Vec<u64> = (2..spf.len() as u64).filter(|&n| spf[n as usize] as u64 == n).collect();
    primes.par_iter().map(|&p| local_factor(p, f)).collect()
}

/// Local factors for `p ≤ bound` and ideal counts `a_n` for `n ≤ bound`
/// (`a_0 = 0`), built multiplicatively from the local factors.
pub fn ideal_table(f: [i64; 3], bound: u64) -> Result<(Vec<LocalFactor>, Vec<u64>)> {
    let n = bound as usize;
    let spf = spf_sieve(n);
    let factors = factors_from_sieve(f, &spf)?;
    let kmax = 64 - bound.max(2).leading_zeros() as usize;
    let mut counts: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for l in &factors {
        counts[l.p as usize] = l.ideal_counts(kmax);
    }
    let mut a = vec![0u64; n + 1];
    if n >= 1 {
        a[1] = 1;
    }
    for m in 2..=n {
        let p = spf[m] as usize;
        let (mut rest, mut k) = (m, 0);
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        a[m] = a[rest] * counts[p][k];
    }
    Ok((factors, a))
}

pub fn dedekind_zeta(f: [i64; 3], s: f64, prime_bound: u64) -> Result<ZetaEstimate> {
    if !(s > 1.0) {
        return Err(Error::InvalidArgument(format!("need s > 1, got {s}")));
    }
    if prime_bound < 2 {
        return Err(Error::InvalidArgument("prime bound must be at least 2".into()));
    }
    let (factors, a) = ideal_table(f, prime_bound)?;
    let log_sum: f64 = factors.iter().map(|l| l.log_euler_factor(s)).sum();
    let euler_excess = log_sum.exp_m1();
    // smallest terms first
    let dirichlet = (1..a.len())
        .rev()
        .filter(|&m| a[m] != 0)
        .map(|m| a[m] as f64 * (m as f64).powf(-s))
        .sum();
    Ok(ZetaEstimate {
        s,
        prime_bound,
        euler: 1.0 + euler_excess,
        euler_excess,
        dirichlet,
        tail_bound: 3.0 * (prime_bound as f64).powf(1.0 - s) / (s - 1.0),
    })
}

/// Number of ideals of norm at most `bound`.
pub fn ideal_count_up_to(f: [i64; 3], bound: u64) -> Result<u64> {
    Ok(ideal_table(f, bound)?.1.iter().sum())
}

/// Arithmetic invariants of the cubic field entering the residue formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldInvariants {
    pub r1: u32,
    pub r2: u32,
    pub class_number: u64,
    pub regulator: f64,
    pub roots_of_unity: u64,
    pub abs_disc: u64,
}

impl FieldInvariants {
    pub fn validate(&self) -> Result<()> {
        if !matches!((self.r1, self.r2), (3, 0) | (1, 1)) {
            return Err(Error::InvalidArgument(format!(
                "signature ({}, {}) is not that of a cubic field",
                self.r1, self.r2
            )));
        }
        if self.class_number == 0 || self.roots_of_unity == 0 || self.abs_disc == 0 {
            return Err(Error::InvalidArgument("h, w and |d| must be positive".into()));
        }
        if !(self.regulator > 0.0) {
            return Err(Error::InvalidArgument("regulator must be positive".into()));
        }
        Ok(())
    }
}

/// `|d|^{s/2}·(π^{−s/2}Γ(s/2))^{r₁}·((2π)^{1−s}Γ(s))^{r₂}`.
pub fn gamma_factor(s: f64, inv: &FieldInvariants) -> f64 {
    let real = PI.powf(-s / 2.0) * gamma(s / 2.0);
    let complex = (2.0 * PI).powf(1.0 - s) * gamma(s);
    (inv.abs_disc as f64).powf(s / 2.0) * real.powi(inv.r1 as i32) * complex.powi(inv.r2 as i32)
}

/// The completed zeta function from a value of the plain one.
pub fn completed_zeta(s: f64, inv: &FieldInvariants, zeta_value: f64) -> f64 {
    gamma_factor(s, inv) * zeta_value
}

/// `Res_{s=1} ζ_{k₁}(s) = 2^{r₁}(2π)^{r₂}hR/(w√|d|)`.
pub fn residue_kappa(inv: &FieldInvariants) -> f64 {
    2f64.powi(inv.r1 as i32) * (2.0 * PI).powi(inv.r2 as i32) * inv.class_number as f64 * inv.regulator
        / (inv.roots_of_unity as f64 * (inv.abs_disc as f64).sqrt())
}

/// `Res_{s=1}` of the completed zeta function.
pub fn completed_residue(inv: &FieldInvariants) -> f64 {
    gamma_factor(1.0, inv) * residue_kappa(inv)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constants {
    /// Residue of the completed zeta at 1.
    pub residue: f64,
    /// Completed zeta at 2.
    pub z2: f64,
    /// Residue divided by `Z(2)`.
    pub rho: f64,
    /// `1/ρ`, the volume constant.
    pub volume: f64,
}

/// Constants from the plain zeta value at 2.
pub fn constants(inv: &FieldInvariants, zeta2: f64) -> Result<Constants> {
    inv.validate()?;
    let residue = completed_residue(inv);
    let z2 = completed_zeta(2.0, inv, zeta2);
    let rho = residue / z2;
    Ok(Constants {
        residue,
        z2,
        rho,
        volume: 1.0 / rho,
    })
}

/// `Z(s)/Z(s + 1)` from plain zeta values at `s` and `s + 1`.
pub fn phi(s: f64, inv: &FieldInvariants, zeta_s: f64, zeta_s1: f64) -> f64 {
    completed_zeta(s, inv, zeta_s) / completed_zeta(s + 1.0, inv, zeta_s1)
}
