//! Brute force over `𝔽_q`: exhaustive stratification census, orbit closure
//! under generators, and the finite Fourier transform attached to `[·,·]`.
//!
//! Points are enumerated lexicographically in their eight coordinates
//! ([`Point::coords`] order, most significant first).

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num::complex::Complex64;
use rayon::prelude::*;

use crate::cubealg::{AlgebraElement, BaseField, CubicAlgebra};
use crate::error::{Error, Result};
use crate::space::{GroupElement, Point, Space};
use crate::strata::Label;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub q: u64,
    /// `f` coefficients `(c0, c1, c2)` as canonical residues.
    pub f: [u64; 3],
    pub n_total: u64,
    pub n_zero: u64,
    pub n_ss: u64,
    pub n_s1: u64,
    pub n_s2: u64,
    pub elapsed: Duration,
}

impl CensusRecord {
    pub fn counts(&self) -> (u64, u64, u64) {
        (self.n_ss, self.n_s1, self.n_s2)
    }

    pub fn partition_holds(&self) -> bool {
        self.n_total == self.q.pow(8)
            && self.n_zero == 1
            && self.n_zero + self.n_ss + self.n_s1 + self.n_s2 == self.n_total
    }
}

/// `(n_ss, n_s1, n_s2)` predicted by `S_i ≅ G ×_B Y_i^ss`.
pub fn predicted_counts(q: u64) -> (u64, u64, u64) {
    let big = q.pow(3);
    let n_s2 = (big + 1) * (q - 1);
    let n_s1 = (big + 1) * (big - 1) * q;
    (q.pow(8) - 1 - n_s1 - n_s2, n_s1, n_s2)
}

/// Complex-valued function on `V(𝔽_q)`, indexed lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFunction {
    pub q: u64,
    pub values: Vec<Complex64>,
}

impl FiniteFunction {
    pub fn max_abs_diff(&self, other: &FiniteFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(Complex64::norm_sqr).sum()
    }
}

/// `V` over a prime field `𝔽_q` with `f` irreducible.
#[derive(Clone, Debug)]
pub struct FiniteModel {
    space: Space,
    q: u64,
    size: usize,
}

impl FiniteModel {
    pub fn new(q: u64, f: [i64; 3]) -> Result<Self> {
        let field = BaseField::prime(q)?;
        let alg = CubicAlgebra::from_i64s(field, f)?;
        Self::from_algebra(alg)
    }

    pub fn from_algebra(alg: CubicAlgebra) -> Result<Self> {
        let q = alg
            .field()
            .order()
            .ok_or_else(|| Error::InvalidArgument("finite model needs a prime field".into()))?;
        if !alg.is_field() {
            return Err(Error::SplitAlgebra);
        }
        let size = usize::try_from(q.pow(8)).map_err(|_| Error::InvalidArgument("q too large".into()))?;
        Ok(FiniteModel {
            space: Space::new(alg),
            q,
            size,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q⁸`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn point_at(&self, index: usize) -> Point {
        let f = self.space.field();
        let mut rest = index as u64;
        let mut digits = [0u64; 8];
        for d in digits.iter_mut().rev() {
            *d = rest % self.q;
            rest /= self.q;
        }
        Point::from_coords(digits.map(|d| f.from_u64(d)))
    }

    pub fn index_of(&self, x: &Point) -> usize {
        self.index_of_digits(&x.coords().map(|c| c.residue().expect("point over 𝔽_q")))
    }

    fn index_of_digits(&self, digits: &[u64; 8]) -> usize {
        digits.iter().fold(0u64, |acc, &d| acc * self.q + d % self.q) as usize
    }

    /// Labels of all points in index order.
    pub fn label_table(&self, jobs: usize) -> Result<Vec<Label>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..self.size)
                .into_par_iter()
                .map(|i| self.space.label(&self.point_at(i)))
                .collect()
        })
    }

    pub fn census(&self, jobs: usize) -> Result<(CensusRecord, Vec<Label>)> {
        let start = Instant::now();
        let labels = self.label_table(jobs)?;
        let count = |l: Label| labels.iter().filter(|&&x| x == l).count() as u64;
        let c = self.space.algebra().coeffs();
        let record = CensusRecord {
            q: self.q,
            f: std::array::from_fn(|i| c[i].residue().expect("residue")),
            n_total: labels.len() as u64,
            n_zero: count(Label::Zero),
            n_ss: count(Label::SemiStable),
            n_s1: count(Label::S1),
            n_s2: count(Label::S2),
            elapsed: start.elapsed(),
        };
        Ok((record, labels))
    }

    /// A generator of the cyclic group `A^× = 𝔽_{q³}^×`.
    pub fn multiplicative_generator(&self) -> AlgebraElement {
        let alg = self.space.algebra();
        let order = self.q.pow(3) - 1;
        let primes = prime_factors(order);
        (0..self.size as u64)
            .map(|i| {
                let f = self.space.field();
                alg.element(f.from_u64(i % self.q), f.from_u64(i / self.q % self.q), f.from_u64(i / self.q / self.q))
            })
            .filter(|g| !g.is_zero())
            .find(|g| primes.iter().all(|&l| alg.pow(g, order / l) != alg.one()))
            .expect("𝔽_{q³}^× is cyclic")
    }

    /// Size of the `G(𝔽_q)`-orbit of `x`, by closure under `τ`, every `n(u)`,
    /// every scalar `t₁`, and `a(γ, 1)`, `a(1, γ)` for a generator `γ` of `A^×`.
    pub fn orbit_bfs(&self, x: &Point, cap: usize) -> Result<usize> {
        let s = &self.space;
        let alg = s.algebra();
        let f = s.field();
        let one_a = alg.one();
        let one = f.one();
        let gamma = self.multiplicative_generator();
        let us: Vec<AlgebraElement> = (0..self.q.pow(3))
            .map(|i| alg.element(f.from_u64(i % self.q), f.from_u64(i / self.q % self.q), f.from_u64(i / self.q / self.q)))
            .collect();
        let scalars: Vec<_> = (1..self.q).map(|t| f.from_u64(t)).collect();

        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.index_of(x));
        queue.push_back(x.clone());
        while let Some(p) = queue.pop_front() {
            let mut next = vec![
                s.act_tau(&p),
                s.act_diag(&one, &gamma, &one_a, &p),
                s.act_diag(&one, &one_a, &gamma, &p),
            ];
            next.extend(scalars.iter().map(|t| p.scale(t)));
            next.extend(us.iter().map(|u| s.act_n(u, &p)));
            for y in next {
                if seen.insert(self.index_of(&y)) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.len())
    }

    pub fn function(&self, phi: impl Fn(&Point) -> Complex64 + Sync) -> FiniteFunction {
        let values = (0..self.size)
            .into_par_iter()
            .map(|i| phi(&self.point_at(i)))
            .collect();
        FiniteFunction { q: self.q, values }
    }

    pub fn indicator(&self, pred: impl Fn(&Point) -> bool + Sync) -> FiniteFunction {
        self.function(|x| if pred(x) { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    /// `x ↦ Φ(g·x)`.
    pub fn compose(&self, phi: &FiniteFunction, g: &GroupElement) -> FiniteFunction {
        self.function(|x| phi.values[self.index_of(&self.space.act(g, x))])
    }

    /// Gram matrix of `[·,·]` with residue entries.
    fn gram(&self) -> [[u64; 8]; 8] {
        let g = self.space.gram_matrix();
        std::array::from_fn(|i| std::array::from_fn(|j| g[i][j].residue().expect("residue")))
    }

    /// `Φ̂(x) = q⁻⁴ Σ_y Φ(y) ψ([x, y])`, `ψ(r) = e^{2πir/q}`.
    ///
    /// Computed as an 8-fold one-dimensional DFT evaluated at `Gᵀx`.
    pub fn fourier(&self, phi: &FiniteFunction) -> FiniteFunction {
        let q = self.q as usize;
        let roots: Vec<Complex64> = (0..q)
            .map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / q as f64))
            .collect();
        let mut data = phi.values.clone();
        let mut stride = 1usize;
        for _ in 0..8 {
            let block = stride * q;
            data.par_chunks_mut(block).for_each(|chunk| {
                let mut tmp = vec![Complex64::new(0.0, 0.0); q];
                for off in 0..stride {
                    for (w, t) in tmp.iter_mut().enumerate() {
                        *t = (0..q)
                            .map(|y| chunk[off + y * stride] * roots[(w * y) % q])
                            .sum();
                    }
                    for (w, t) in tmp.iter().enumerate() {
                        chunk[off + w * stride] = *t;
                    }
                }
            });
            stride = block;
        }
        let gram = self.gram();
        let scale = (self.q as f64).powi(-4);
        let values = (0..self.size)
            .into_par_iter()
            .map(|i| {
                let x = self.point_at(i).coords().map(|c| c.residue().expect("residue"));
                let w: [u64; 8] =
                    std::array::from_fn(|j| (0..8).map(|k| x[k] * gram[k][j]).sum::<u64>() % self.q);
                data[self.index_of_digits(&w)] * scale
            })
            .collect();
        FiniteFunction { q: self.q, values }
    }

    /// `Σ_{label(x) = label} Φ(g·x)`.
    pub fn theta(&self, phi: &FiniteFunction, g: &GroupElement, label: Label, labels: &[Label]) -> Complex64 {
        (0..self.size)
            .into_par_iter()
            .filter(|&i| labels[i] == label)
            .map(|i| phi.values[self.index_of(&self.space.act(g, &self.point_at(i)))])
            .sum()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
