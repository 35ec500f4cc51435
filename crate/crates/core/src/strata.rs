//! Constructive classification of points of `V` into `0`, the semistable
//! locus, `S₁ = G·Y₁^ss` and `S₂ = G·Y₂^ss`, each unstable point coming with
//! a witness `g` such that `g·x` lies in the corresponding slice.
//!
//! The double root of `F_x` is in general only rational over `σ₃(A)`, not
//! over `F` (e.g. any `G`-translate of `Z₁^ss` by an upper-unipotent with
//! non-scalar entry), so normalization works in `GL₂(A)`.

use std::fmt;

use crate::cubealg::{display_alg, AlgebraElement, Scalar};
use crate::error::{Error, Result};
use crate::invariant::QuadForm;
use crate::space::{GroupElement, Point, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    SemiStable,
    S1,
    S2,
    Zero,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::SemiStable, Label::S1, Label::S2, Label::Zero];

    pub fn exit_code(self) -> i32 {
        match self {
            Label::SemiStable => 0,
            Label::S1 => 1,
            Label::S2 => 2,
            Label::Zero => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::SemiStable => "SemiStable",
            Label::S1 => "S1",
            Label::S2 => "S2",
            Label::Zero => "Zero",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coordinate slices of `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    Y1,
    Y1ss,
    Z1,
    Z1ss,
    Y2,
    Y2ss,
}

/// A point of `P¹(A)`, canonicalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    pub r1: AlgebraElement,
    pub r2: AlgebraElement,
}

impl ProjPoint {
    /// Fails with `NonUnit` if the leading nonzero coordinate is not invertible.
    pub fn canonical(space: &Space, r1: AlgebraElement, r2: AlgebraElement) -> Result<Self> {
        let alg = space.algebra();
        if r1.is_zero() {
            if r2.is_zero() {
                return Err(Error::InvalidArgument("(0 : 0) is not a projective point".into()));
            }
            return Ok(ProjPoint { r1, r2: alg.one() });
        }
        let inv = alg.invert(&r1)?;
        Ok(ProjPoint {
            r1: alg.one(),
            r2: alg.mul(&r2, &inv),
        })
    }

    /// The point as an element of `P¹(F)`, if it is rational.
    pub fn to_base(&self) -> Result<(Scalar, Scalar)> {
        match (self.r1.as_scalar(), self.r2.as_scalar()) {
            (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
            _ => Err(Error::IrrationalRoot),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", display_alg(&self.r1), display_alg(&self.r2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub label: Label,
    /// `g` with `g·x = normalized`; present for `S1` and `S2`.
    pub witness: Option<GroupElement>,
    pub normalized: Option<Point>,
    pub transcript: Vec<String>,
}

impl Space {
    /// The double root of an unstable `F_x`, as a point of `P¹` over `σ₃(A) ≅ A`.
    /// `None` when the form vanishes identically.
    pub fn double_root(&self, q: &QuadForm) -> Result<Option<ProjPoint>> {
        if q.is_zero() {
            return Ok(None);
        }
        let alg = self.algebra();
        let pull = |c| alg.pull_back(3, c).map_err(|_| Error::IrrationalRoot);
        let (a, b) = (pull(&q.a)?, pull(&q.b)?);
        let root = if a.is_zero() {
            if !b.is_zero() {
                return Err(Error::AssertionFailure("a = 0 but b ≠ 0 for an unstable form".into()));
            }
            ProjPoint::canonical(self, alg.one(), alg.zero())?
        } else {
            let two = self.field().from_i64(2);
            ProjPoint::canonical(self, -&b, a.scale(&two))?
        };
        Ok(Some(root))
    }

    /// `g` whose first row is the root, so that `F_{gx}` has root `(1 : 0)`.
    fn root_mover(&self, root: &ProjPoint) -> GroupElement {
        if root.r1.is_zero() {
            return self.tau();
        }
        let alg = self.algebra();
        GroupElement {
            t1: self.field().one(),
            g2: [[alg.one(), root.r2.clone()], [alg.zero(), alg.one()]],
        }
    }

    pub fn classify(&self, x: &Point) -> Result<StratumReport> {
        if !self.algebra().is_field() {
            return Err(Error::SplitAlgebra);
        }
        let mut transcript = Vec::new();
        if x.is_zero() {
            transcript.push("x = 0".to_string());
            return Ok(StratumReport {
                label: Label::Zero,
                witness: None,
                normalized: None,
                transcript,
            });
        }
        let delta = self.checked_discriminant(x)?;
        if !delta.is_zero() {
            transcript.push(format!("Δ(x) = {delta} ≠ 0"));
            return Ok(StratumReport {
                label: Label::SemiStable,
                witness: None,
                normalized: None,
                transcript,
            });
        }
        transcript.push("Δ(x) = 0".to_string());

        let q = self.quad_form(x);
        let h = match self.double_root(&q)? {
            None => {
                transcript.push("F_x ≡ 0; h = 1".to_string());
                self.identity()
            }
            Some(root) => {
                transcript.push(format!("double root {root}"));
                let mover = self.root_mover(&root);
                let candidates = [mover.clone(), self.transpose(&mover)];
                let h = candidates
                    .into_iter()
                    .find(|h| {
                        let q = self.quad_form(&self.act(h, x));
                        q.a.is_zero() && q.b.is_zero()
                    })
                    .ok_or_else(|| {
                        Error::AssertionFailure("no normalizer moves the double root to (1 : 0)".into())
                    })?;
                transcript.push("h·x has F = c·v₂²".to_string());
                h
            }
        };
        let xp = self.act(&h, x);

        if xp.x111.is_zero() {
            if !xp.x211.is_zero() {
                return Err(Error::AssertionFailure("x′111 = 0 but x′211 ≠ 0".into()));
            }
            let label = if xp.x122.is_zero() { Label::S2 } else { Label::S1 };
            transcript.push(format!("x′111 = x′211 = 0: h·x ∈ Y1, label {label}"));
            if label == Label::S2 && xp.x222.is_zero() {
                return Err(Error::AssertionFailure("nonzero point normalized to 0".into()));
            }
            return Ok(StratumReport {
                label,
                witness: Some(h),
                normalized: Some(xp),
                transcript,
            });
        }

        let inv = xp.x111.inv().expect("nonzero");
        let u = -&xp.x211.scale(&inv);
        let y = self.act_n(&u, &xp);
        transcript.push(format!("y = n({})·h·x", display_alg(&u)));
        for (name, zero) in [
            ("y211", y.x211.is_zero()),
            ("y122", y.x122.is_zero()),
            ("y222", y.x222.is_zero()),
        ] {
            if !zero {
                return Err(Error::AssertionFailure(format!("{name} ≠ 0 after killing y211")));
            }
        }
        let witness = self.product([&self.tau(), &self.n(&u), &h]);
        let normalized = self.act_tau(&y);
        transcript.push("τ·y ∈ Y2ss".to_string());
        Ok(StratumReport {
            label: Label::S2,
            witness: Some(witness),
            normalized: Some(normalized),
            transcript,
        })
    }

    pub fn label(&self, x: &Point) -> Result<Label> {
        self.classify(x).map(|r| r.label)
    }
}

pub fn in_slice(x: &Point, slice: Slice) -> bool {
    let y1 = x.x111.is_zero() && x.x211.is_zero();
    match slice {
        Slice::Y1 => y1,
        Slice::Y1ss => y1 && !x.x122.is_zero(),
        Slice::Z1 => y1 && x.x222.is_zero(),
        Slice::Z1ss => y1 && x.x222.is_zero() && !x.x122.is_zero(),
        Slice::Y2 => y1 && x.x122.is_zero(),
        Slice::Y2ss => y1 && x.x122.is_zero() && !x.x222.is_zero(),
    }
}

/// The slice a normalized representative of the given label must land in.
pub fn target_slice(label: Label) -> Option<Slice> {
    match label {
        Label::S1 => Some(Slice::Y1ss),
        Label::S2 => Some(Slice::Y2ss),
        _ => None,
    }
}

/// Checks `witness·x = normalized ∈ Y_label^ss`.
pub fn witness_is_valid(space: &Space, x: &Point, report: &StratumReport) -> bool {
    match (target_slice(report.label), &report.witness, &report.normalized) {
        (Some(slice), Some(g), Some(n)) => {
            !space.chi(g).is_zero() && space.act(g, x) == *n && in_slice(n, slice)
        }
        (None, None, None) => true,
        _ => false,
    }
}
