//! Splitting of a rational prime in `ℤ[θ]`, `θ` a root of a monic integer
//! cubic, read off from the factorization of `f` mod `p`.

use std::fmt;

use crate::error::{Error, Result};

/// Polynomials over `𝔽_p`, coefficients low degree first, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mul_mod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn div_exact(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut q = vec![0; a.len().saturating_sub(dm)];
    while r.len() > dm && !r.is_empty() {
        let k = r.len() - 1 - dm;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        q[k] = c;
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mul_mod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact division");
    trim(q)
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn monic(a: Poly, p: u64) -> Poly {
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
        }
    }
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(x, p)
}

fn derivative(a: &[u64], p: u64) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}

/// Distinct roots of a squarefree product of distinct linear factors.
fn split_roots(h: &[u64], p: u64) -> Vec<u64> {
    match h.len() {
        0 | 1 => Vec::new(),
        2 => vec![(p - mul_mod(h[0], inv_mod(h[1], p), p)) % p],
        _ if p < 64 => (0..p)
            .filter(|&r| h.iter().rev().fold(0, |acc, &c| (mul_mod(acc, r, p) + c) % p) == 0)
            .collect(),
        _ => {
            // Cantor–Zassenhaus with shifts a = 1, 2, …
            for a in 1..p {
                let w = pow_rem(&[a, 1], (p - 1) / 2, h, p);
                let g = gcd(h, &sub(&w, &[1], p), p);
                if g.len() > 1 && g.len() < h.len() {
                    let mut out = split_roots(&g, p);
                    out.extend(split_roots(&div_exact(h, &g, p), p));
                    return out;
                }
            }
            unreachable!("equal-degree splitting failed")
        }
    }
}

/// Discriminant of the monic cubic `t³ + c2·t² + c1·t + c0`.
pub fn integer_discriminant(f: [i64; 3]) -> i128 {
    let [c0, c1, c2] = f.map(i128::from);
    c2 * c2 * c1 * c1 - 4 * c1 * c1 * c1 - 4 * c2 * c2 * c2 * c0 + 18 * c2 * c1 * c0 - 27 * c0 * c0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub p: u64,
    /// `(residue degree, ramification index)` per prime above `p`.
    pub primes: Vec<(u32, u32)>,
    /// Roots of `f` in `𝔽_p` with multiplicity.
    pub roots: Vec<(u64, u32)>,
}

impl LocalFactor {
    /// `log Π(1 − p^{−f_i s})^{−1}`.
    pub fn log_euler_factor(&self, s: f64) -> f64 {
        let lp = (self.p as f64).ln();
        self.primes
            .iter()
            .map(|&(deg, _)| -(-(-(deg as f64) * s * lp).exp()).ln_1p())
            .sum()
    }

    /// Number of ideals of norm `p^k` for `k = 0..=kmax`.
    pub fn ideal_counts(&self, kmax: usize) -> Vec<u64> {
        let mut c = vec![0u64; kmax + 1];
        c[0] = 1;
        for &(deg, _) in &self.primes {
            let d = deg as usize;
            for k in d..=kmax {
                c[k] += c[k - d];
            }
        }
        c
    }

    pub fn degree_sum(&self) -> u32 {
        self.primes.iter().map(|&(f, e)| f * e).sum()
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(f, e) in &self.primes {
            if e == 1 {
                write!(out, "({f})")?;
            } else {
                write!(out, "({f}^{e})")?;
            }
        }
        Ok(())
    }
}

/// Factorization type of `f` mod `p`. Requires `p² ∤ disc f`, which makes
/// `ℤ[θ]` maximal at `p` so the factorization describes the splitting.
pub fn local_factor(p: u64, f: [i64; 3]) -> Result<LocalFactor> {
    if p < 2 || !crate::cubealg::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let disc = integer_discriminant(f);
    if disc % (p as i128 * p as i128) == 0 {
        return Err(Error::NonMaximalOrder(p));
    }
    let red = |c: i64| c.rem_euclid(p as i64) as u64;
    let fp: Poly = vec![red(f[0]), red(f[1]), red(f[2]), 1 % p];
    let fp = trim(fp);
    let g = gcd(&fp, &derivative(&fp, p), p);
    let frob = pow_rem(&[0, 1], p, &fp, p);
    let lin = gcd(&fp, &sub(&frob, &[0, 1], p), p);
    let (primes, roots) = match g.len() - 1 {
        0 => match lin.len() - 1 {
            0 => (vec![(3, 1)], Vec::new()),
            1 => (vec![(1, 1), (2, 1)], vec![(split_roots(&lin, p)[0], 1)]),
            _ => {
                let mut r = split_roots(&lin, p);
                r.sort_unstable();
                (vec![(1, 1); 3], r.into_iter().map(|x| (x, 1)).collect())
            }
        },
        1 => {
            let double = split_roots(&g, p)[0];
            let sq = mul_rem(&g, &g, &[0, 0, 0, 0, 1], p);
            let simple = split_roots(&div_exact(&fp, &sq, p), p)[0];
            (vec![(1, 2), (1, 1)], vec![(double, 2), (simple, 1)])
        }
        _ => (vec![(1, 3)], vec![(split_roots(&lin, p)[0], 3)]),
    };
    Ok(LocalFactor { p, primes, roots })
}
