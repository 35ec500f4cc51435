//! Elements of the base field: the rationals or a prime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest prime modulus accepted; products of two residues must fit in a `u64`.
pub const MAX_MODULUS: u64 = (1 << 32) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rational,
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

/// An exact element of a [`BaseField`].
///
/// Rationals are kept in lowest terms and residues in `[0, p)`, so derived
/// equality is the field equality. Mixing elements of different fields in
/// one operation is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(Residue),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl BaseField {
    /// The prime field of order `p`; rejects composites and moduli that are too large.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        Ok(BaseField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rational => 0,
            BaseField::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            BaseField::Rational => None,
            BaseField::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            BaseField::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            BaseField::Prime(p) => Scalar::Residue(Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            }),
        }
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match *self {
            BaseField::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            BaseField::Prime(p) => Scalar::Residue(Residue {
                value: v % p,
                modulus: p,
            }),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            BaseField::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            BaseField::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                self.from_u64(r.to_u64().expect("reduced residue fits u64"))
            }
        }
    }

    /// Maps a rational into this field. Fails in characteristic `p` when `p`
    /// divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            BaseField::Rational => Ok(Scalar::Rational(r.clone())),
            BaseField::Prime(_) => {
                let num = self.from_bigint(r.numer());
                let den = self.from_bigint(r.denom());
                let inv = den.inv().ok_or_else(|| {
                    Error::Parse(format!("denominator of {r} vanishes in {self}"))
                })?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses `"num"` or `"num/den"`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let r: BigRational = t
            .parse()
            .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))?;
        self.from_rational(&r)
    }

    /// All elements in increasing residue order (prime fields only).
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar> + '_> {
        self.order().map(move |p| (0..p).map(move |v| self.from_u64(v)))
    }

    /// A random element. Rationals have numerator in `[-height, height]` and
    /// denominator in `[1, height]`; residues are uniform.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        match *self {
            BaseField::Rational => {
                let h = height.max(1);
                let n = rng.gen_range(-h..=h);
                let d = rng.gen_range(1..=h);
                Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            BaseField::Prime(p) => self.from_u64(rng.gen_range(0..p)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        loop {
            let s = self.random(rng, height);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Scalar {
    pub fn field(&self) -> BaseField {
        match self {
            Scalar::Rational(_) => BaseField::Rational,
            Scalar::Residue(r) => BaseField::Prime(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue(r) => r.value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue(r) => Scalar::Residue(Residue {
                value: pow_mod(r.value, r.modulus - 2, r.modulus),
                modulus: r.modulus,
            }),
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Residue value for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue(r) => Some(r.value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue(_) => None,
        }
    }

    /// Approximate real value (rationals only).
    pub fn to_f64(&self) -> Option<f64> {
        self.as_rational().and_then(|r| r.to_f64())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue(r) => write!(f, "{}", r.value),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar operands come from different base fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                let mut v = a.value + b.value;
                if v >= a.modulus {
                    v -= a.modulus;
                }
                Scalar::Residue(Residue {
                    value: v,
                    modulus: a.modulus,
                })
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                let v = if a.value >= b.value {
                    a.value - b.value
                } else {
                    a.value + a.modulus - b.value
                };
                Scalar::Residue(Residue {
                    value: v,
                    modulus: a.modulus,
                })
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                Scalar::Residue(Residue {
                    value: a.value * b.value % a.modulus,
                    modulus: a.modulus,
                })
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue(a) => Scalar::Residue(Residue {
                value: if a.value == 0 { 0 } else { a.modulus - a.value },
                modulus: a.modulus,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
