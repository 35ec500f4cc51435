//! Exact arithmetic in the cubic étale algebra `A = F[t]/(f)` and its
//! resolvent `B = A[δ]/(δ² − D)`, together with the three embeddings
//! `σ₁, σ₂, σ₃ : A → B`.
//!
//! `σ₁` is the inclusion. `σ₂` and `σ₃` send θ to the two remaining roots
//! of `f`, written as `((e₁ − θ) ± δ/f′(θ))/2`; this requires 2 and `f′(θ)`
//! to be invertible, which is why characteristic 2 and cubics with
//! vanishing discriminant are rejected.

mod element;
mod scalar;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use element::{AlgebraElement, ResolventElement};
pub use scalar::{is_prime, BaseField, Residue, Scalar, MAX_MODULUS};

use crate::error::{Error, Result};

/// Descriptor for `A = F[t]/(t³ + c₂t² + c₁t + c₀)` with cached elementary
/// symmetric functions and discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicAlgebra {
    field: BaseField,
    coeffs: [Scalar; 3],
    e: [Scalar; 3],
    disc: Scalar,
    half: Scalar,
    basis_trace: [Scalar; 3],
    /// `[σ₂(θ), σ₂(θ²)]` and `[σ₃(θ), σ₃(θ²)]`.
    conj_powers: [[ResolventElement; 2]; 2],
    irreducible: bool,
}

/// JSON field configuration: `{"base": "Q" | {"Fp": p}, "f": ["c0","c1","c2"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub base: BaseSpec,
    pub f: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldConfig {
    pub fn base_field(&self) -> Result<BaseField> {
        match &self.base {
            BaseSpec::Named(n) if n == "Q" => Ok(BaseField::Rational),
            BaseSpec::Named(n) => Err(Error::Parse(format!("unknown base field {n:?}"))),
            BaseSpec::Prime { fp } => BaseField::prime(*fp),
        }
    }

    pub fn build(&self) -> Result<CubicAlgebra> {
        let field = self.base_field()?;
        let c = [
            field.parse(&self.f[0])?,
            field.parse(&self.f[1])?,
            field.parse(&self.f[2])?,
        ];
        CubicAlgebra::new(field, c)
    }

    pub fn from_algebra(alg: &CubicAlgebra) -> Self {
        let base = match alg.field() {
            BaseField::Rational => BaseSpec::Named("Q".into()),
            BaseField::Prime(p) => BaseSpec::Prime { fp: p },
        };
        FieldConfig {
            base,
            f: alg.coeffs().clone().map(|c| c.to_string()),
        }
    }
}

impl CubicAlgebra {
    /// Builds `A` for the monic cubic `t³ + c[2]·t² + c[1]·t + c[0]`.
    pub fn new(field: BaseField, c: [Scalar; 3]) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::BadCharacteristic(2));
        }
        if c.iter().any(|s| s.field() != field) {
            return Err(Error::InvalidArgument("coefficients outside the base field".into()));
        }
        let e1 = -&c[2];
        let e2 = c[1].clone();
        let e3 = -&c[0];
        let disc = cubic_discriminant(&e1, &e2, &e3);
        if disc.is_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        let half = field.from_i64(2).inv().expect("2 is invertible");
        let tr_theta2 = &(&e1 * &e1) - &(&field.from_i64(2) * &e2);
        let mut alg = CubicAlgebra {
            field,
            coeffs: c,
            e: [e1, e2, e3],
            disc,
            half,
            basis_trace: [field.from_i64(3), field.zero(), tr_theta2],
            conj_powers: [
                [ResolventElement::zero(field), ResolventElement::zero(field)],
                [ResolventElement::zero(field), ResolventElement::zero(field)],
            ],
            irreducible: false,
        };
        alg.basis_trace[1] = alg.e[0].clone();

        // θ₂,₃ = ((e₁ − θ) ± δ·f′(θ)⁻¹)/2
        let theta = alg.theta();
        let fprime = alg.element(
            alg.coeffs[1].clone(),
            &field.from_i64(2) * &alg.coeffs[2],
            field.from_i64(3),
        );
        let fprime_inv = alg.invert(&fprime)?;
        let sum = &AlgebraElement::from_scalar(alg.e[0].clone()) - &theta;
        let p = sum.scale(&alg.half);
        let q = fprime_inv.scale(&alg.half);
        let th2 = ResolventElement::new(p.clone(), q.clone());
        let th3 = ResolventElement::new(p, -&q);
        let th2_sq = alg.res_mul(&th2, &th2);
        let th3_sq = alg.res_mul(&th3, &th3);
        alg.conj_powers = [[th2, th2_sq], [th3, th3_sq]];
        alg.irreducible = alg.compute_irreducible();
        Ok(alg)
    }

    pub fn from_i64s(field: BaseField, c: [i64; 3]) -> Result<Self> {
        Self::new(field, c.map(|v| field.from_i64(v)))
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    /// `[c₀, c₁, c₂]`.
    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    /// `[e₁, e₂, e₃] = [−c₂, c₁, −c₀]`.
    pub fn elementary(&self) -> &[Scalar; 3] {
        &self.e
    }

    pub fn discriminant(&self) -> &Scalar {
        &self.disc
    }

    /// Whether `f` is irreducible over the base field, i.e. `A` is a field.
    pub fn is_field(&self) -> bool {
        self.irreducible
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.field)
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::one(self.field)
    }

    pub fn theta(&self) -> AlgebraElement {
        self.element(self.field.zero(), self.field.one(), self.field.zero())
    }

    pub fn element(&self, a0: Scalar, a1: Scalar, a2: Scalar) -> AlgebraElement {
        AlgebraElement::new(a0, a1, a2)
    }

    pub fn from_i64s_elem(&self, c: [i64; 3]) -> AlgebraElement {
        AlgebraElement::from_i64s(self.field, c)
    }

    pub fn scalar(&self, s: Scalar) -> AlgebraElement {
        AlgebraElement::from_scalar(s)
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let (x, y) = (&a.c, &b.c);
        let mut r: [Scalar; 5] = [
            &x[0] * &y[0],
            &(&x[0] * &y[1]) + &(&x[1] * &y[0]),
            &(&(&x[0] * &y[2]) + &(&x[1] * &y[1])) + &(&x[2] * &y[0]),
            &(&x[1] * &y[2]) + &(&x[2] * &y[1]),
            &x[2] * &y[2],
        ];
        // θ³ = −c₂θ² − c₁θ − c₀
        for k in (3..5).rev() {
            if r[k].is_zero() {
                continue;
            }
            let top = r[k].clone();
            r[k - 1] = &r[k - 1] - &(&self.coeffs[2] * &top);
            r[k - 2] = &r[k - 2] - &(&self.coeffs[1] * &top);
            r[k - 3] = &r[k - 3] - &(&self.coeffs[0] * &top);
        }
        let [r0, r1, r2, _, _] = r;
        AlgebraElement { c: [r0, r1, r2] }
    }

    pub fn pow(&self, a: &AlgebraElement, mut exp: u64) -> AlgebraElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `a` in the basis `1, θ, θ²` (column `j` is `a·θʲ`).
    pub fn mul_matrix(&self, a: &AlgebraElement) -> [[Scalar; 3]; 3] {
        let theta = self.theta();
        let c0 = a.clone();
        let c1 = self.mul(&c0, &theta);
        let c2 = self.mul(&c1, &theta);
        let cols = [c0, c1, c2];
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j].c[i].clone()))
    }

    pub fn trace(&self, a: &AlgebraElement) -> Scalar {
        let t = &self.basis_trace;
        &(&(&a.c[0] * &t[0]) + &(&a.c[1] * &t[1])) + &(&a.c[2] * &t[2])
    }

    pub fn norm(&self, a: &AlgebraElement) -> Scalar {
        let m = self.mul_matrix(a);
        det3(&m)
    }

    /// Second elementary symmetric function of the conjugates of `a`.
    pub fn s2(&self, a: &AlgebraElement) -> Scalar {
        let t = self.trace(a);
        let t_sq = self.trace(&self.mul(a, a));
        &(&(&t * &t) - &t_sq) * &self.half
    }

    /// `σ₂(u)·σ₃(u)`, computed inside `A` as `u² − Tr(u)·u + s₂(u)`.
    pub fn other_conjugates_product(&self, u: &AlgebraElement) -> AlgebraElement {
        let u2 = self.mul(u, u);
        let tu = u.scale(&self.trace(u));
        &(&u2 - &tu) + &AlgebraElement::from_scalar(self.s2(u))
    }

    /// `σ₂(u)·σ₃(x) + σ₃(u)·σ₂(x)`, computed inside `A` as
    /// `(Tr u − u)(Tr x − x) − Tr(ux) + ux`.
    pub fn cross_conjugate_sum(&self, u: &AlgebraElement, x: &AlgebraElement) -> AlgebraElement {
        let tu = &AlgebraElement::from_scalar(self.trace(u)) - u;
        let tx = &AlgebraElement::from_scalar(self.trace(x)) - x;
        let ux = self.mul(u, x);
        let tr_ux = AlgebraElement::from_scalar(self.trace(&ux));
        &(&self.mul(&tu, &tx) - &tr_ux) + &ux
    }

    pub fn invert(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let n = self.norm(a);
        let n_inv = n.inv().ok_or(Error::NonUnit)?;
        Ok(self.other_conjugates_product(a).scale(&n_inv))
    }

    pub fn res_mul(&self, x: &ResolventElement, y: &ResolventElement) -> ResolventElement {
        let pp = self.mul(&x.p, &y.p);
        let qq = self.mul(&x.q, &y.q);
        let pq = self.mul(&x.p, &y.q);
        let qp = self.mul(&x.q, &y.p);
        ResolventElement {
            p: &pp + &qq.scale(&self.disc),
            q: &pq + &qp,
        }
    }

    /// Multiplication of a resolvent element by an element of `A ⊂ B`.
    pub fn res_mul_a(&self, x: &ResolventElement, a: &AlgebraElement) -> ResolventElement {
        ResolventElement {
            p: self.mul(&x.p, a),
            q: self.mul(&x.q, a),
        }
    }

    /// `σᵢ(a)` for `i ∈ {1, 2, 3}`.
    pub fn embed(&self, i: usize, a: &AlgebraElement) -> ResolventElement {
        match i {
            1 => ResolventElement::from_algebra(a.clone()),
            2 | 3 => {
                let [th, th2] = &self.conj_powers[i - 2];
                let lin = &th.scale(&a.c[1]) + &th2.scale(&a.c[2]);
                ResolventElement {
                    p: &lin.p + &AlgebraElement::from_scalar(a.c[0].clone()),
                    q: lin.q,
                }
            }
            _ => panic!("embedding index must be 1, 2 or 3, got {i}"),
        }
    }

    pub fn descend_to_a(&self, b: &ResolventElement) -> Result<AlgebraElement> {
        if !b.q.is_zero() {
            return Err(Error::DescentFailure(format!(
                "nonzero δ-component {:?}",
                display_alg(&b.q)
            )));
        }
        Ok(b.p.clone())
    }

    pub fn descend_to_base(&self, b: &ResolventElement) -> Result<Scalar> {
        let a = self.descend_to_a(b)?;
        a.as_scalar().cloned().ok_or_else(|| {
            Error::DescentFailure(format!("nonzero θ-component in {}", display_alg(&a)))
        })
    }

    /// Recovers `a` from `b = σᵢ(a)`.
    ///
    /// For `i ∈ {2, 3}` the δ-free part of `σᵢ(a)` is `(Tr a − a)/2`, which
    /// determines `a = Tr(p) − 2p`; the candidate is then checked by re-embedding.
    pub fn pull_back(&self, i: usize, b: &ResolventElement) -> Result<AlgebraElement> {
        let candidate = match i {
            1 => return self.descend_to_a(b),
            2 | 3 => {
                let tr = AlgebraElement::from_scalar(self.trace(&b.p));
                &tr - &b.p.scale(&self.field.from_i64(2))
            }
            _ => panic!("embedding index must be 1, 2 or 3, got {i}"),
        };
        if self.embed(i, &candidate) == *b {
            Ok(candidate)
        } else {
            Err(Error::DescentFailure(format!(
                "element is not in the image of embedding {i}"
            )))
        }
    }

    /// `f(b)` evaluated in `B`.
    pub fn eval_f(&self, b: &ResolventElement) -> ResolventElement {
        let b2 = self.res_mul(b, b);
        let b3 = self.res_mul(&b2, b);
        let c = &self.coeffs;
        let lin = &(&b2.scale(&c[2]) + &b.scale(&c[1])) + &ResolventElement::from_scalar(c[0].clone());
        &b3 + &lin
    }

    fn compute_irreducible(&self) -> bool {
        match self.field {
            // no roots in F_p  ⇔  gcd(f, t^p − t) = 1  ⇔  θ^p − θ is a unit
            BaseField::Prime(p) => {
                let theta = self.theta();
                let frob = &self.pow(&theta, p) - &theta;
                !self.norm(&frob).is_zero()
            }
            BaseField::Rational => !has_rational_root(&self.coeffs),
        }
    }
}

pub fn display_alg(a: &AlgebraElement) -> String {
    format!("[{}, {}, {}]", a.c[0], a.c[1], a.c[2])
}

/// `e₁²e₂² − 4e₂³ − 4e₁³e₃ + 18e₁e₂e₃ − 27e₃²`.
fn cubic_discriminant(e1: &Scalar, e2: &Scalar, e3: &Scalar) -> Scalar {
    let f = e1.field();
    let k = |v: i64| f.from_i64(v);
    let e1s = e1 * e1;
    let e2s = e2 * e2;
    let t1 = &e1s * &e2s;
    let t2 = &k(4) * &(&e2s * e2);
    let t3 = &k(4) * &(&(&e1s * e1) * e3);
    let t4 = &k(18) * &(&(e1 * e2) * e3);
    let t5 = &k(27) * &(e3 * e3);
    &(&(&(&t1 - &t2) - &t3) + &t4) - &t5
}

pub(crate) fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    let p = |a: &Scalar, b: &Scalar, c: &Scalar| &(a * b) * c;
    let plus = &(&p(&m[0][0], &m[1][1], &m[2][2]) + &p(&m[0][1], &m[1][2], &m[2][0]))
        + &p(&m[0][2], &m[1][0], &m[2][1]);
    let minus = &(&p(&m[0][2], &m[1][1], &m[2][0]) + &p(&m[0][0], &m[1][2], &m[2][1]))
        + &p(&m[0][1], &m[1][0], &m[2][2]);
    &plus - &minus
}

/// Rational root test for a monic cubic with rational coefficients.
///
/// Clears denominators to a monic integer cubic `g`, splits the line into
/// pieces on which `g` is monotone and bisects each piece over the integers.
fn has_rational_root(c: &[Scalar; 3]) -> bool {
    let rats: Vec<_> = c
        .iter()
        .map(|s| s.as_rational().expect("rational coefficients").clone())
        .collect();
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scale = |r: &num::BigRational, pow: u32| -> BigInt {
        let v = r * num::BigRational::from_integer(num::pow(l.clone(), pow as usize));
        debug_assert!(v.is_integer());
        v.to_integer()
    };
    let a = scale(&rats[2], 1);
    let b = scale(&rats[1], 2);
    let cc = scale(&rats[0], 3);
    has_integer_root(&a, &b, &cc)
}

fn has_integer_root(a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    let g = |s: &BigInt| -> BigInt { ((s + a) * s + b) * s + c };
    let bound = BigInt::one() + a.abs().max(b.abs()).max(c.abs());
    let three = BigInt::from(3);
    let d = a * a - &three * b;
    let mut pieces = Vec::new();
    if d.is_positive() {
        let m = d.sqrt();
        let lo = (-a - &m).div_floor(&three);
        let hi = (-a + &m).div_floor(&three);
        for centre in [&lo, &hi] {
            let mut s = centre - 3;
            while s <= centre + 3 {
                if g(&s).is_zero() {
                    return true;
                }
                s += 1;
            }
        }
        pieces.push((-bound.clone(), &lo - 3));
        pieces.push((&lo + 3, &hi - 3));
        pieces.push((&hi + 3, bound));
    } else {
        pieces.push((-bound.clone(), bound));
    }
    pieces
        .into_iter()
        .any(|(lo, hi)| lo <= hi && monotone_root(&g, lo, hi))
}

fn monotone_root(g: &impl Fn(&BigInt) -> BigInt, mut lo: BigInt, mut hi: BigInt) -> bool {
    let glo = g(&lo);
    let ghi = g(&hi);
    if glo.is_zero() || ghi.is_zero() {
        return true;
    }
    if glo.signum() == ghi.signum() {
        return false;
    }
    let lo_sign = glo.signum();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        let gm = g(&mid);
        if gm.is_zero() {
            return true;
        }
        if gm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    false
}
