//! Integer points in a box: the histogram of `Δ` and the stratum tallies.

use std::collections::BTreeMap;

use num::BigInt;
use rayon::prelude::*;

use crate::cubealg::{BaseField, CubicAlgebra};
use crate::error::{Error, Result};
use crate::space::{Point, Space};
use crate::strata::Label;

/// `V` over `ℚ` with the lattice `x₁₁₁, x₂₂₂ ∈ ℤ`, `x₂₁₁, x₁₂₂ ∈ ℤ[θ]`.
#[derive(Clone, Debug)]
pub struct IntegralModel {
    space: Space,
    f: [i64; 3],
}

impl IntegralModel {
    pub fn new(f: [i64; 3]) -> Result<Self> {
        let alg = CubicAlgebra::from_i64s(BaseField::Rational, f)?;
        Ok(IntegralModel {
            space: Space::new(alg),
            f,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn f(&self) -> [i64; 3] {
        self.f
    }

    /// The `index`-th point of `[−h, h]⁸`, coordinates in lexicographic order.
    pub fn point_at(&self, h: i64, index: u64) -> Point {
        let side = (2 * h + 1) as u64;
        let field = self.space.field();
        let mut rest = index;
        let mut digits = [0i64; 8];
        for d in digits.iter_mut().rev() {
            *d = (rest % side) as i64 - h;
            rest /= side;
        }
        Point::from_coords(digits.map(|d| field.from_i64(d)))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoxCount {
    pub height: i64,
    pub total: u64,
    pub histogram: BTreeMap<BigInt, u64>,
    pub labels: BTreeMap<Label, u64>,
}

impl BoxCount {
    fn merge(mut self, other: BoxCount) -> BoxCount {
        self.total += other.total;
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        for (k, v) in other.labels {
            *self.labels.entry(k).or_default() += v;
        }
        self
    }
}

/// Exhaustive pass over `[−h, h]⁸`; unstable points are classified.
pub fn box_count(model: &IntegralModel, h: i64, jobs: usize) -> Result<BoxCount> {
    if h < 0 {
        return Err(Error::InvalidArgument("height must be nonnegative".into()));
    }
    let side = (2 * h + 1) as u64;
    let n = side
        .checked_pow(8)
        .ok_or_else(|| Error::InvalidArgument("box too large".into()))?;
    let space = model.space();
    if !space.algebra().is_field() {
        return Err(Error::SplitAlgebra);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut out = pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let x = model.point_at(h, i);
                let delta = space.checked_discriminant(&x)?;
                let label = if delta.is_zero() { space.label(&x)? } else { Label::SemiStable };
                let d = delta.as_rational().expect("rational").to_integer();
                let mut c = BoxCount { total: 1, ..BoxCount::default() };
                c.histogram.insert(d, 1);
                c.labels.insert(label, 1);
                Ok(c)
            })
            .try_reduce(BoxCount::default, |a, b| Ok(a.merge(b)))
    })?;
    out.height = h;
    Ok(out)
}
