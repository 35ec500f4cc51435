//! The 8-dimensional descent space `V`, its realization as a 2×2×2
//! hypermatrix over `B`, and the action of `G = GL(1, F) × GL(2, A)`.
//!
//! A general group element acts on the hypermatrix by `σ₁(g)`, `σ₂(g)`,
//! `σ₃(g)` on the three tensor slots; the result is descended back to `V`
//! and a failed descent is treated as a broken invariant. The generators
//! `a(t₂₁, t₂₂)`, `n(u)` and `τ` also have closed forms that never leave `A`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubealg::{AlgebraElement, BaseField, CubicAlgebra, ResolventElement, Scalar};
use crate::error::{Error, Result};

/// A point of `V`: `x₁₁₁, x₂₂₂ ∈ F` and `x₂₁₁, x₁₂₂ ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x111: Scalar,
    pub x211: AlgebraElement,
    pub x122: AlgebraElement,
    pub x222: Scalar,
}

impl Point {
    pub fn new(x111: Scalar, x211: AlgebraElement, x122: AlgebraElement, x222: Scalar) -> Self {
        Point {
            x111,
            x211,
            x122,
            x222,
        }
    }

    pub fn zero(field: BaseField) -> Self {
        Point::new(
            field.zero(),
            AlgebraElement::zero(field),
            AlgebraElement::zero(field),
            field.zero(),
        )
    }

    pub fn field(&self) -> BaseField {
        self.x111.field()
    }

    pub fn is_zero(&self) -> bool {
        self.x111.is_zero() && self.x211.is_zero() && self.x122.is_zero() && self.x222.is_zero()
    }

    /// Coordinates over `F`: `x₁₁₁`, the three of `x₂₁₁`, the three of `x₁₂₂`, `x₂₂₂`.
    pub fn coords(&self) -> [Scalar; 8] {
        let a = self.x211.coeffs();
        let b = self.x122.coeffs();
        [
            self.x111.clone(),
            a[0].clone(),
            a[1].clone(),
            a[2].clone(),
            b[0].clone(),
            b[1].clone(),
            b[2].clone(),
            self.x222.clone(),
        ]
    }

    pub fn from_coords(c: [Scalar; 8]) -> Self {
        let [c0, c1, c2, c3, c4, c5, c6, c7] = c;
        Point::new(
            c0,
            AlgebraElement::new(c1, c2, c3),
            AlgebraElement::new(c4, c5, c6),
            c7,
        )
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Point::new(
            &self.x111 * s,
            self.x211.scale(s),
            self.x122.scale(s),
            &self.x222 * s,
        )
    }
}

impl std::ops::Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(
            &self.x111 + &rhs.x111,
            &self.x211 + &rhs.x211,
            &self.x122 + &rhs.x122,
            &self.x222 + &rhs.x222,
        )
    }
}

impl std::ops::Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x111, -&self.x211, -&self.x122, -&self.x222)
    }
}

/// The eight coordinates `x_{ijk}` over `B`; entry `(i, j, k)` (0-based)
/// lives at index `4i + 2j + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperMatrix {
    pub entries: [ResolventElement; 8],
}

impl HyperMatrix {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &ResolventElement {
        &self.entries[4 * i + 2 * j + k]
    }
}

pub type Mat2 = [[AlgebraElement; 2]; 2];

/// `(t₁, g₂)` with `t₁ ∈ F^×` and `g₂ ∈ GL(2, A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub t1: Scalar,
    pub g2: Mat2,
}

/// Coordinates stored in the hypermatrix: the `x_{ijk}` that belong to `V` directly.
const X111: usize = 0;
const X112: usize = 1;
const X121: usize = 2;
const X122: usize = 3;
const X211: usize = 4;
const X212: usize = 5;
const X221: usize = 6;
const X222: usize = 7;

/// The space `V` over a fixed cubic algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    alg: CubicAlgebra,
}

impl Space {
    pub fn new(alg: CubicAlgebra) -> Self {
        Space { alg }
    }

    pub fn algebra(&self) -> &CubicAlgebra {
        &self.alg
    }

    pub fn field(&self) -> BaseField {
        self.alg.field()
    }

    pub fn zero_point(&self) -> Point {
        Point::zero(self.field())
    }

    /// `x₁₁₁` set to one, everything else zero.
    pub fn e111(&self) -> Point {
        let mut p = self.zero_point();
        p.x111 = self.field().one();
        p
    }

    pub fn e222(&self) -> Point {
        let mut p = self.zero_point();
        p.x222 = self.field().one();
        p
    }

    /// Standard basis of `V` over `F`, in [`Point::coords`] order.
    pub fn basis(&self) -> Vec<Point> {
        let f = self.field();
        (0..8)
            .map(|i| Point::from_coords(std::array::from_fn(|j| if i == j { f.one() } else { f.zero() })))
            .collect()
    }

    pub fn lift(&self, x: &Point) -> HyperMatrix {
        let a = &self.alg;
        let x111 = ResolventElement::from_scalar(x.x111.clone());
        let x222 = ResolventElement::from_scalar(x.x222.clone());
        let entries = [
            x111,
            a.embed(3, &x.x211),
            a.embed(2, &x.x211),
            a.embed(1, &x.x122),
            a.embed(1, &x.x211),
            a.embed(2, &x.x122),
            a.embed(3, &x.x122),
            x222,
        ];
        HyperMatrix { entries }
    }

    pub fn descend(&self, h: &HyperMatrix) -> Result<Point> {
        let a = &self.alg;
        let e = &h.entries;
        let tag = |rel: &str, r: Result<Scalar>| {
            r.map_err(|err| Error::DescentFailure(format!("{rel}: {err}")))
        };
        let x111 = tag("x111 in F", a.descend_to_base(&e[X111]))?;
        let x222 = tag("x222 in F", a.descend_to_base(&e[X222]))?;
        let x211 = a
            .descend_to_a(&e[X211])
            .map_err(|err| Error::DescentFailure(format!("x211 in A: {err}")))?;
        let x122 = a
            .descend_to_a(&e[X122])
            .map_err(|err| Error::DescentFailure(format!("x122 in A: {err}")))?;
        let checks = [
            (X121, 2, &x211, "x121 = σ2(x211)"),
            (X112, 3, &x211, "x112 = σ3(x211)"),
            (X212, 2, &x122, "x212 = σ2(x122)"),
            (X221, 3, &x122, "x221 = σ3(x122)"),
        ];
        for (idx, i, src, rel) in checks {
            if e[idx] != a.embed(i, src) {
                return Err(Error::DescentFailure(format!("relation {rel} violated")));
            }
        }
        Ok(Point::new(x111, x211, x122, x222))
    }

    // ---- group elements ----

    pub fn identity(&self) -> GroupElement {
        let a = &self.alg;
        GroupElement {
            t1: self.field().one(),
            g2: [[a.one(), a.zero()], [a.zero(), a.one()]],
        }
    }

    /// Validated constructor: `t₁ ≠ 0` and `N(det g₂) ≠ 0`.
    pub fn group_element(&self, t1: Scalar, g2: Mat2) -> Result<GroupElement> {
        let g = GroupElement { t1, g2 };
        if g.t1.is_zero() || self.alg.norm(&self.det(&g)).is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(g)
    }

    pub fn n(&self, u: &AlgebraElement) -> GroupElement {
        let a = &self.alg;
        GroupElement {
            t1: self.field().one(),
            g2: [[a.one(), a.zero()], [u.clone(), a.one()]],
        }
    }

    /// `a(t₂₁, t₂₂)` with scalar part `t₁`.
    pub fn diag(&self, t1: &Scalar, t21: &AlgebraElement, t22: &AlgebraElement) -> Result<GroupElement> {
        let z = self.alg.zero();
        self.group_element(t1.clone(), [[t21.clone(), z.clone()], [z, t22.clone()]])
    }

    pub fn tau(&self) -> GroupElement {
        let a = &self.alg;
        GroupElement {
            t1: self.field().one(),
            g2: [[a.zero(), a.one()], [a.one(), a.zero()]],
        }
    }

    pub fn scalar_element(&self, t1: &Scalar) -> Result<GroupElement> {
        let mut g = self.identity();
        g.t1 = t1.clone();
        if t1.is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(g)
    }

    pub fn det(&self, g: &GroupElement) -> AlgebraElement {
        let a = &self.alg;
        let m = &g.g2;
        &a.mul(&m[0][0], &m[1][1]) - &a.mul(&m[0][1], &m[1][0])
    }

    /// `χ(g) = N(det g₂)`.
    pub fn chi(&self, g: &GroupElement) -> Scalar {
        self.alg.norm(&self.det(g))
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let a = &self.alg;
        let (x, y) = (&g.g2, &h.g2);
        let entry = |i: usize, j: usize| &a.mul(&x[i][0], &y[0][j]) + &a.mul(&x[i][1], &y[1][j]);
        GroupElement {
            t1: &g.t1 * &h.t1,
            g2: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        }
    }

    /// Product of a sequence, leftmost factor applied last.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        factors
            .into_iter()
            .fold(self.identity(), |acc, g| self.compose(&acc, g))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        let a = &self.alg;
        let t_inv = g.t1.inv().ok_or(Error::NonInvertible)?;
        let d_inv = a.invert(&self.det(g)).map_err(|_| Error::NonInvertible)?;
        let m = &g.g2;
        Ok(GroupElement {
            t1: t_inv,
            g2: [
                [a.mul(&m[1][1], &d_inv), a.mul(&(-&m[0][1]), &d_inv)],
                [a.mul(&(-&m[1][0]), &d_inv), a.mul(&m[0][0], &d_inv)],
            ],
        })
    }

    pub fn transpose(&self, g: &GroupElement) -> GroupElement {
        let m = &g.g2;
        GroupElement {
            t1: g.t1.clone(),
            g2: [
                [m[0][0].clone(), m[1][0].clone()],
                [m[0][1].clone(), m[1][1].clone()],
            ],
        }
    }

    /// Whether `g₂` lies in the lower-triangular Borel subgroup `B₂ = T₂N₂`.
    pub fn in_borel(&self, g: &GroupElement) -> bool {
        g.g2[0][1].is_zero()
    }

    // ---- the action ----

    /// `(t₁, g)·x` through the hypermatrix: `σᵢ(g)` acts on slot `i`.
    pub fn act_hyper(&self, g: &GroupElement, h: &HyperMatrix) -> HyperMatrix {
        let a = &self.alg;
        let mut e = h.entries.clone();
        for slot in 1..=3usize {
            let bit = 1usize << (3 - slot);
            let m: [[ResolventElement; 2]; 2] =
                std::array::from_fn(|i| std::array::from_fn(|j| a.embed(slot, &g.g2[i][j])));
            for idx in 0..8 {
                if idx & bit != 0 {
                    continue;
                }
                let lo = e[idx].clone();
                let hi = e[idx | bit].clone();
                e[idx] = &a.res_mul(&m[0][0], &lo) + &a.res_mul(&m[0][1], &hi);
                e[idx | bit] = &a.res_mul(&m[1][0], &lo) + &a.res_mul(&m[1][1], &hi);
            }
        }
        let entries = e.map(|v| v.scale(&g.t1));
        HyperMatrix { entries }
    }

    pub fn try_act(&self, g: &GroupElement, x: &Point) -> Result<Point> {
        self.descend(&self.act_hyper(g, &self.lift(x)))
    }

    /// The action of `G` on `V`.
    ///
    /// # Panics
    /// If the transformed hypermatrix fails to descend; that would mean the
    /// embeddings are not Galois-compatible.
    pub fn act(&self, g: &GroupElement, x: &Point) -> Point {
        self.try_act(g, x)
            .unwrap_or_else(|e| panic!("invariant violation: action left V ({e})"))
    }

    /// Closed form of `n(u)·x`.
    pub fn act_n(&self, u: &AlgebraElement, x: &Point) -> Point {
        let a = &self.alg;
        let oc = a.other_conjugates_product(u);
        let y211 = &x.x211 + &u.scale(&x.x111);
        let y122 = &(&x.x122 + &oc.scale(&x.x111)) + &a.cross_conjugate_sum(u, &x.x211);
        let y222 = &(&(&x.x222 + &(&a.norm(u) * &x.x111)) + &a.trace(&a.mul(&oc, &x.x211)))
            + &a.trace(&a.mul(u, &x.x122));
        Point::new(x.x111.clone(), y211, y122, y222)
    }

    /// Closed form of `(t₁, a(t₂₁, t₂₂))·x`.
    pub fn act_diag(&self, t1: &Scalar, t21: &AlgebraElement, t22: &AlgebraElement, x: &Point) -> Point {
        let a = &self.alg;
        let c111 = t1 * &a.norm(t21);
        let c222 = t1 * &a.norm(t22);
        let c211 = a.mul(t22, &a.other_conjugates_product(t21)).scale(t1);
        let c122 = a.mul(t21, &a.other_conjugates_product(t22)).scale(t1);
        Point::new(
            &c111 * &x.x111,
            a.mul(&c211, &x.x211),
            a.mul(&c122, &x.x122),
            &c222 * &x.x222,
        )
    }

    /// `τ·x`: exchange 1 and 2 in every index.
    pub fn act_tau(&self, x: &Point) -> Point {
        Point::new(x.x222.clone(), x.x122.clone(), x.x211.clone(), x.x111.clone())
    }

    // ---- sampling ----

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> AlgebraElement {
        let f = self.field();
        self.alg
            .element(f.random(rng, height), f.random(rng, height), f.random(rng, height))
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> AlgebraElement {
        loop {
            let u = self.random_element(rng, height);
            if !self.alg.norm(&u).is_zero() {
                return u;
            }
        }
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Point {
        let f = self.field();
        Point::new(
            f.random(rng, height),
            self.random_element(rng, height),
            self.random_element(rng, height),
            f.random(rng, height),
        )
    }

    /// Product of `len` random generators `a(t₂₁, t₂₂)`, `n(u)`, `τ` times a
    /// random scalar `t₁`; `len == 0` gives the identity.
    pub fn sample_group_element<R: Rng + ?Sized>(&self, rng: &mut R, len: usize, height: i64) -> GroupElement {
        if len == 0 {
            return self.identity();
        }
        let mut g = self
            .scalar_element(&self.field().random_nonzero(rng, height))
            .expect("nonzero scalar");
        for _ in 0..len {
            let factor = match rng.gen_range(0..3) {
                0 => {
                    let one = self.field().one();
                    self.diag(&one, &self.random_unit(rng, height), &self.random_unit(rng, height))
                        .expect("units")
                }
                1 => self.n(&self.random_element(rng, height)),
                _ => self.tau(),
            };
            g = self.compose(&g, &factor);
        }
        g
    }

    /// Deterministic random group element for a seed.
    pub fn random_group_element(&self, seed: u64) -> GroupElement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rng.gen_range(1..=5);
        self.sample_group_element(&mut rng, len, 10)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(f: BaseField, c: [i64; 3]) -> Space {
        Space::new(CubicAlgebra::from_i64s(f, c).unwrap())
    }

    fn cube_root_two() -> Space {
        space(BaseField::Rational, [-2, 0, 0])
    }

    fn pt(s: &Space, x111: i64, x211: [i64; 3], x122: [i64; 3], x222: i64) -> Point {
        let f = s.field();
        let a = s.algebra();
        Point::new(f.from_i64(x111), a.from_i64s_elem(x211), a.from_i64s_elem(x122), f.from_i64(x222))
    }

    #[test]
    fn lift_examples() {
        let s = cube_root_two();
        let f = s.field();
        let h = s.lift(&s.e111());
        assert_eq!(h.entries[0], ResolventElement::one(f));
        assert!(h.entries[1..].iter().all(ResolventElement::is_zero));

        let th = s.algebra().theta();
        let h = s.lift(&pt(&s, 0, [0, 1, 0], [0; 3], 0));
        assert_eq!(*h.get(1, 0, 0), ResolventElement::from_algebra(th.clone()));
        assert_eq!(*h.get(0, 1, 0), s.algebra().embed(2, &th));
        assert_eq!(*h.get(0, 0, 1), s.algebra().embed(3, &th));
        assert!(h.get(0, 1, 1).is_zero() && h.get(1, 1, 1).is_zero());
    }

    #[test]
    fn descend_examples() {
        let s = cube_root_two();
        let zero = HyperMatrix {
            entries: std::array::from_fn(|_| ResolventElement::zero(s.field())),
        };
        assert_eq!(s.descend(&zero).unwrap(), s.zero_point());
        let mut h = s.lift(&pt(&s, 0, [0, 1, 0], [0; 3], 0));
        h.entries[X121] = ResolventElement::from_algebra(s.algebra().theta());
        match s.descend(&h) {
            Err(Error::DescentFailure(msg)) => assert!(msg.contains("x121")),
            other => panic!("expected descent failure, got {other:?}"),
        }
    }

    #[test]
    fn lift_descend_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for s in [cube_root_two(), space(BaseField::Prime(7), [1, 3, 0])] {
            for _ in 0..1000 {
                let p = s.random_point(&mut rng, 10);
                assert_eq!(s.descend(&s.lift(&p)).unwrap(), p);
            }
        }
    }

    #[test]
    fn generator_examples() {
        let s = cube_root_two();
        let a = s.algebra();
        let f = s.field();
        let th = a.theta();
        let x = pt(&s, 1, [0; 3], [0; 3], 1);
        assert_eq!(s.act(&s.identity(), &x), x);
        let g = s.diag(&f.one(), &th, &a.one()).unwrap();
        assert_eq!(s.act(&g, &x), pt(&s, 2, [0; 3], [0; 3], 1));

        let nx = s.act(&s.n(&th), &s.e111());
        assert_eq!(nx, pt(&s, 1, [0, 1, 0], [0, 0, 1], 2));
        assert_eq!(s.act_n(&th, &s.e111()), nx);

        let w = a.from_i64s_elem([1, -2, 3]);
        let u = a.from_i64s_elem([0, 5, -1]);
        let y = Point::new(f.zero(), a.zero(), w.clone(), f.zero());
        let expect = Point::new(f.zero(), a.zero(), w.clone(), a.trace(&a.mul(&u, &w)));
        assert_eq!(s.act_n(&u, &y), expect);

        assert_eq!(s.act_tau(&nx), pt(&s, 2, [0, 0, 1], [0, 1, 0], 1));
        let x = pt(&s, 0, [0; 3], [0, 0, 1], 0);
        assert_eq!(s.act_n(&th, &x).x222, f.from_i64(6));
    }

    #[test]
    fn chi_examples() {
        let s = cube_root_two();
        let a = s.algebra();
        let f = s.field();
        assert_eq!(s.chi(&s.identity()), f.one());
        assert_eq!(s.chi(&s.diag(&f.one(), &a.theta(), &a.one()).unwrap()), f.from_i64(2));
        assert_eq!(s.chi(&s.n(&a.from_i64s_elem([3, 1, -4]))), f.one());
    }

    #[test]
    fn singular_group_elements_rejected() {
        let s = space(BaseField::Rational, [0, -1, 0]); // split
        let a = s.algebra();
        let zd = &a.theta() - &a.one();
        assert_eq!(s.diag(&s.field().one(), &zd, &a.one()), Err(Error::NonInvertible));
        assert!(s.scalar_element(&s.field().zero()).is_err());
    }

    #[test]
    fn generator_closed_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for s in [cube_root_two(), space(BaseField::Prime(7), [1, 3, 0]), space(BaseField::Rational, [-1, -1, 0])] {
            for _ in 0..100 {
                let x = s.random_point(&mut rng, 10);
                let u = s.random_element(&mut rng, 10);
                assert_eq!(s.act(&s.n(&u), &x), s.act_n(&u, &x));
                assert_eq!(s.act(&s.tau(), &x), s.act_tau(&x));
                let t1 = s.field().random_nonzero(&mut rng, 10);
                let (t21, t22) = (s.random_unit(&mut rng, 10), s.random_unit(&mut rng, 10));
                let g = s.diag(&t1, &t21, &t22).unwrap();
                assert_eq!(s.act(&g, &x), s.act_diag(&t1, &t21, &t22, &x));
            }
        }
    }

    #[test]
    fn group_law_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in [cube_root_two(), space(BaseField::Prime(5), [1, 1, 0])] {
            for seed in 0..40 {
                let g = s.random_group_element(seed);
                let h = s.random_group_element(seed + 1000);
                let x = s.random_point(&mut rng, 5);
                assert_eq!(s.act(&g, &s.act(&h, &x)), s.act(&s.compose(&g, &h), &x));
                let gi = s.inverse(&g).unwrap();
                assert_eq!(s.compose(&g, &gi), s.identity());
                assert_eq!(s.act(&gi, &s.act(&g, &x)), x);
            }
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let s = cube_root_two();
        for seed in [0, 7, 99] {
            assert_eq!(s.random_group_element(seed), s.random_group_element(seed));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(s.sample_group_element(&mut rng, 0, 10), s.identity());
    }

    #[test]
    fn sampler_hits_both_bruhat_cells() {
        let s = space(BaseField::Prime(3), [-1, -1, 0]);
        let (mut borel, mut big) = (0, 0);
        for seed in 0..200 {
            if s.in_borel(&s.random_group_element(seed)) {
                borel += 1;
            } else {
                big += 1;
            }
        }
        assert!(borel > 0 && big > 0, "borel {borel}, big cell {big}");
    }
}
