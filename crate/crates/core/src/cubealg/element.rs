use std::ops::{Add, Neg, Sub};

use super::scalar::{BaseField, Scalar};

/// `a0 + a1·θ + a2·θ²` in `A = F[t]/(f)`, reduced to degree at most two.
///
/// Addition and negation need no knowledge of `f`; multiplication goes
/// through [`CubicAlgebra::mul`](super::CubicAlgebra::mul).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub(crate) c: [Scalar; 3],
}

/// `p + q·δ` in the resolvent algebra `B = A[δ]/(δ² − D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolventElement {
    pub p: AlgebraElement,
    pub q: AlgebraElement,
}

impl AlgebraElement {
    pub fn new(a0: Scalar, a1: Scalar, a2: Scalar) -> Self {
        let f = a0.field();
        assert!(a1.field() == f && a2.field() == f, "mixed base fields");
        AlgebraElement { c: [a0, a1, a2] }
    }

    pub fn from_scalar(s: Scalar) -> Self {
        let z = s.field().zero();
        AlgebraElement {
            c: [s, z.clone(), z],
        }
    }

    pub fn zero(field: BaseField) -> Self {
        Self::from_scalar(field.zero())
    }

    pub fn one(field: BaseField) -> Self {
        Self::from_scalar(field.one())
    }

    pub fn from_i64s(field: BaseField, c: [i64; 3]) -> Self {
        AlgebraElement {
            c: c.map(|v| field.from_i64(v)),
        }
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.c
    }

    pub fn field(&self) -> BaseField {
        self.c[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// The base-field value when the θ- and θ²-coordinates vanish.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        (self.c[1].is_zero() && self.c[2].is_zero()).then_some(&self.c[0])
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        AlgebraElement {
            c: [&self.c[0] * s, &self.c[1] * s, &self.c[2] * s],
        }
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
            ],
        }
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
            ],
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            c: [-&self.c[0], -&self.c[1], -&self.c[2]],
        }
    }
}

impl ResolventElement {
    pub fn new(p: AlgebraElement, q: AlgebraElement) -> Self {
        ResolventElement { p, q }
    }

    pub fn zero(field: BaseField) -> Self {
        ResolventElement {
            p: AlgebraElement::zero(field),
            q: AlgebraElement::zero(field),
        }
    }

    pub fn one(field: BaseField) -> Self {
        ResolventElement {
            p: AlgebraElement::one(field),
            q: AlgebraElement::zero(field),
        }
    }

    /// The canonical inclusion `A ⊂ B`.
    pub fn from_algebra(a: AlgebraElement) -> Self {
        let z = AlgebraElement::zero(a.field());
        ResolventElement { p: a, q: z }
    }

    pub fn from_scalar(s: Scalar) -> Self {
        Self::from_algebra(AlgebraElement::from_scalar(s))
    }

    /// δ itself.
    pub fn delta(field: BaseField) -> Self {
        ResolventElement {
            p: AlgebraElement::zero(field),
            q: AlgebraElement::one(field),
        }
    }

    pub fn field(&self) -> BaseField {
        self.p.field()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ResolventElement {
            p: self.p.scale(s),
            q: self.q.scale(s),
        }
    }

    /// The transposition swapping the second and third embeddings: `δ ↦ −δ`.
    pub fn conj_nu(&self) -> Self {
        ResolventElement {
            p: self.p.clone(),
            q: -&self.q,
        }
    }
}

impl<'a> Add<&'a ResolventElement> for &'a ResolventElement {
    type Output = ResolventElement;
    fn add(self, rhs: &'a ResolventElement) -> ResolventElement {
        ResolventElement {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }
}

impl<'a> Sub<&'a ResolventElement> for &'a ResolventElement {
    type Output = ResolventElement;
    fn sub(self, rhs: &'a ResolventElement) -> ResolventElement {
        ResolventElement {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }
}

impl Neg for &ResolventElement {
    type Output = ResolventElement;
    fn neg(self) -> ResolventElement {
        ResolventElement {
            p: -&self.p,
            q: -&self.q,
        }
    }
}
