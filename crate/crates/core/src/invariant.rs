//! The pencil `M_x(v)`, its determinant `F_x(v)`, the relative invariant
//! `Δ(x)`, the middle-coefficient form, the pairings and the dual involution.

use crate::cubealg::{AlgebraElement, ResolventElement, Scalar};
use crate::error::{Error, Result};
use crate::space::{GroupElement, Point, Space};

pub type ResMat2 = [[ResolventElement; 2]; 2];

/// `F_x(v) = a·v₁² + b·v₁v₂ + c·v₂²`, coefficients in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub a: ResolventElement,
    pub b: ResolventElement,
    pub c: ResolventElement,
}

impl QuadForm {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

impl Space {
    /// `(X₁, X₂)` with `(X_k)_{ij} = x_{ijk}`, so `M_x(v) = v₁X₁ + v₂X₂`.
    pub fn pencil(&self, x: &Point) -> (ResMat2, ResMat2) {
        let h = self.lift(x);
        let slice = |k: usize| -> ResMat2 {
            std::array::from_fn(|i| std::array::from_fn(|j| h.get(i, j, k).clone()))
        };
        (slice(0), slice(1))
    }

    /// `det M_x(v)`, expanded from the pencil.
    pub fn quad_form(&self, x: &Point) -> QuadForm {
        let alg = self.algebra();
        let m = |p: &ResolventElement, q: &ResolventElement| alg.res_mul(p, q);
        let (x1, x2) = self.pencil(x);
        let a = &m(&x1[0][0], &x1[1][1]) - &m(&x1[0][1], &x1[1][0]);
        let c = &m(&x2[0][0], &x2[1][1]) - &m(&x2[0][1], &x2[1][0]);
        let b = &(&m(&x1[0][0], &x2[1][1]) + &m(&x2[0][0], &x1[1][1]))
            - &(&m(&x1[0][1], &x2[1][0]) + &m(&x2[0][1], &x1[1][0]));
        QuadForm { a, b, c }
    }

    pub fn checked_discriminant(&self, x: &Point) -> Result<Scalar> {
        let q = self.quad_form(x);
        let alg = self.algebra();
        let b2 = alg.res_mul(&q.b, &q.b);
        let ac = alg.res_mul(&q.a, &q.c).scale(&self.field().from_i64(4));
        alg.descend_to_base(&(&b2 - &ac))
            .map_err(|e| Error::DescentFailure(format!("discriminant: {e}")))
    }

    /// `Δ(x)`, the discriminant of `F_x`.
    ///
    /// # Panics
    /// If `b² − 4ac` fails to lie in `F`.
    pub fn discriminant(&self, x: &Point) -> Scalar {
        self.checked_discriminant(x)
            .unwrap_or_else(|e| panic!("invariant violation: {e}"))
    }

    /// `Δ(g·x) / Δ(x) = t₁⁴·χ(g)²`.
    pub fn covariance_factor(&self, g: &GroupElement) -> Scalar {
        let chi = self.chi(g);
        &g.t1.pow(4) * &(&chi * &chi)
    }

    /// `(A(x), B(x))`: the middle coefficient of `F_{n(u)x}` is `σ₃(A(x) + 2B(x)u)`.
    pub fn middle_affine(&self, x: &Point) -> (AlgebraElement, AlgebraElement) {
        let alg = self.algebra();
        let p = alg.mul(&x.x211, &x.x122);
        let two = self.field().from_i64(2);
        let a = &(&alg.scalar(&x.x111 * &x.x222) + &p.scale(&two)) - &alg.scalar(alg.trace(&p));
        let b = &x.x122.scale(&x.x111) - &alg.other_conjugates_product(&x.x211);
        (a, b)
    }

    /// `[x, y]′ = x₁₁₁y₁₁₁ + Tr(x₂₁₁y₂₁₁ + x₁₂₂y₁₂₂) + x₂₂₂y₂₂₂`.
    pub fn pair_prime(&self, x: &Point, y: &Point) -> Scalar {
        let alg = self.algebra();
        let mid = &alg.mul(&x.x211, &y.x211) + &alg.mul(&x.x122, &y.x122);
        &(&(&x.x111 * &y.x111) + &alg.trace(&mid)) + &(&x.x222 * &y.x222)
    }

    /// `[x, y] = [x, τy]′`.
    pub fn pair(&self, x: &Point, y: &Point) -> Scalar {
        self.pair_prime(x, &self.act_tau(y))
    }

    /// Gram matrix of `[·,·]` in the standard basis.
    pub fn gram_matrix(&self) -> Vec<Vec<Scalar>> {
        let basis = self.basis();
        basis
            .iter()
            .map(|x| basis.iter().map(|y| self.pair(x, y)).collect())
            .collect()
    }

    /// `(t₁⁻¹, τ·ᵗg₂⁻¹·τ)`; satisfies `[gx, y] = [x, dual(g)⁻¹·y]`.
    pub fn dual_involution(&self, g: &GroupElement) -> Result<GroupElement> {
        let inv = self.inverse(g)?;
        let tau = self.tau();
        Ok(self.product([&tau, &self.transpose(&inv), &tau]))
    }
}

/// Determinant over a field by Gaussian elimination.
pub fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let field = m[0][0].field();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return field.zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let d = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &d;
            }
        }
    }
    det
}
