//! Exact symbolic bookkeeping for the principal part of the zeta function:
//! polynomial expressions over `ℚ` in named input quantities, expansions in
//! `λ^{−j}(log λ)^k`, the scaling laws of the input functionals under
//! `Φ ↦ Φ_λ`, and the Mellin rewrite `∫₀¹ λ^{s−j}(log λ)^k d^×λ = (−1)^k k!/(s−j)^{k+1}`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const PHI0: &str = "Phi(0)";
pub const PHIHAT0: &str = "Phihat(0)";
pub const VOLUME: &str = "V";
pub const SIGMA2: &str = "Sigma1(R2Phi,2)";
pub const SIGMA2_HAT: &str = "Sigma1(R2Phihat,2)";
pub const SIGMA_M1: &str = "Sigma_k1(-1)(R1Phi,1)";
pub const SIGMA_M1_HAT: &str = "Sigma_k1(-1)(R1Phihat,1)";
pub const SIGMA_0: &str = "Sigma_k1(0)(R1Phi,1)";
pub const SIGMA_0_HAT: &str = "Sigma_k1(0)(R1Phihat,1)";

/// Polynomial over `ℚ` in named symbols. A monomial is a sorted list of
/// symbol names (repetition = power).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Expr {
    terms: BTreeMap<Vec<String>, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut e = Expr::zero();
        if !c.is_zero() {
            e.terms.insert(Vec::new(), c);
        }
        e
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(rat(n))
    }

    pub fn sym(name: &str) -> Self {
        let mut e = Expr::zero();
        e.terms.insert(vec![name.to_string()], BigRational::one());
        e
    }

    /// A rational literal (`"3"`, `"-1/2"`) or else a symbol name.
    pub fn atom(s: &str) -> Self {
        match s.trim().parse::<BigRational>() {
            Ok(r) => Expr::constant(r),
            Err(_) => Expr::sym(s.trim()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mono: Vec<String>, c: BigRational) {
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Expr::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Rename every symbol.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Self {
        let mut out = Expr::zero();
        for (m, v) in &self.terms {
            let mut mono: Vec<String> = m.iter().map(|s| f(s)).collect();
            mono.sort();
            out.add_term(mono, v.clone());
        }
        out
    }

    pub fn substitute(&self, name: &str, value: &Expr) -> Self {
        let mut out = Expr::zero();
        for (m, v) in &self.terms {
            let mut term = Expr::constant(v.clone());
            for s in m {
                term = if s == name { &term * value } else { &term * &Expr::sym(s) };
            }
            out = &out + &term;
        }
        out
    }

    pub fn symbols(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.terms.keys().flatten().map(String::as_str).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl std::ops::Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), v.clone());
        }
        out
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&rat(-1))
    }
}

impl std::ops::Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        self + &(-rhs)
    }
}

impl std::ops::Mul<&Expr> for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, v1) in &self.terms {
            for (m2, v2) in &rhs.terms {
                let mut mono = m1.clone();
                mono.extend(m2.iter().cloned());
                mono.sort();
                out.add_term(mono, v1 * v2);
            }
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.is_empty() {
                parts.push(a.to_string());
            }
            parts.extend(m.iter().cloned());
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// `Σ c·λ^e·(log λ)^k`, keyed by `(e, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaSeries {
    pub terms: BTreeMap<(i64, u32), Expr>,
}

impl LambdaSeries {
    pub fn term(exp: i64, log_power: u32, c: Expr) -> Self {
        let mut s = LambdaSeries::default();
        s.add(exp, log_power, &c);
        s
    }

    pub fn add(&mut self, exp: i64, log_power: u32, c: &Expr) {
        let entry = self.terms.entry((exp, log_power)).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&(exp, log_power));
        }
    }

    pub fn plus(&self, other: &LambdaSeries) -> Self {
        let mut out = self.clone();
        for ((e, k), c) in &other.terms {
            out.add(*e, *k, c);
        }
        out
    }

    pub fn scale(&self, c: &Expr) -> Self {
        let mut out = LambdaSeries::default();
        for ((e, k), v) in &self.terms {
            out.add(*e, *k, &(v * c));
        }
        out
    }

    pub fn minus(&self, other: &LambdaSeries) -> Self {
        self.plus(&other.scale(&Expr::int(-1)))
    }
}

/// Residue and constant term of a functional at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub m1: Expr,
    pub c0: Expr,
}

/// A functional `S` with `S(Φ_λ, s) = λ^{α + βs}·S(Φ, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleLaw {
    pub alpha: i64,
    pub beta: i64,
}

impl ScaleLaw {
    pub const PHI_AT_ZERO: ScaleLaw = ScaleLaw { alpha: 0, beta: 0 };
    pub const PHIHAT_AT_ZERO: ScaleLaw = ScaleLaw { alpha: -8, beta: 0 };
    /// Values at `s = 2` only.
    pub const SIGMA1_R2: ScaleLaw = ScaleLaw { alpha: -2, beta: 0 };
    pub const SIGMA1_R2_HAT: ScaleLaw = ScaleLaw { alpha: -6, beta: 0 };
    pub const SIGMA_K1_R1: ScaleLaw = ScaleLaw { alpha: -1, beta: -3 };
    pub const SIGMA_K1_R1_HAT: ScaleLaw = ScaleLaw { alpha: -7, beta: 3 };

    pub fn exponent_at(&self, s0: i64) -> i64 {
        self.alpha + self.beta * s0
    }

    /// A value holomorphic at `s0`.
    pub fn scale_value(&self, s0: i64, v: &Expr) -> LambdaSeries {
        LambdaSeries::term(self.exponent_at(s0), 0, v.clone())
    }

    /// Laurent data at `s0`: `λ^{α+βs}·(c₋₁/(s−s₀) + c₀ + …)` with
    /// `λ^{β(s−s₀)} = 1 + β log λ·(s−s₀) + …` gives
    /// `c₋₁ ↦ λ^{e}c₋₁` and `c₀ ↦ λ^{e}(c₀ + β log λ·c₋₁)`.
    pub fn scale_laurent(&self, s0: i64, d: &Laurent) -> (LambdaSeries, LambdaSeries) {
        let e = self.exponent_at(s0);
        let m1 = LambdaSeries::term(e, 0, d.m1.clone());
        let mut c0 = LambdaSeries::term(e, 0, d.c0.clone());
        c0.add(e, 1, &d.m1.scale(&rat(self.beta)));
        (m1, c0)
    }
}

/// Character selectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub sharp: bool,
    pub d1: bool,
    pub d2: bool,
}

impl Flags {
    pub const ALL: Flags = Flags { sharp: true, d1: true, d2: true };

    /// Comma-separated subset of `d#`, `d1`, `d2` (empty string allowed).
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Flags::default();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "d#" | "dsharp" => out.sharp = true,
                "d1" => out.d1 = true,
                "d2" => out.d2 = true,
                _ => return Err(Error::Parse(format!("unknown flag {tok:?}"))),
            }
        }
        Ok(out)
    }
}

/// Values of the input quantities; symbolic by default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inputs {
    pub volume: Expr,
    pub phi0: Expr,
    pub phihat0: Expr,
    pub sigma2: Expr,
    pub sigma2_hat: Expr,
    pub sigma_k1: Laurent,
    pub sigma_k1_hat: Laurent,
}

impl Default for Inputs {
    fn default() -> Self {
        Inputs {
            volume: Expr::sym(VOLUME),
            phi0: Expr::sym(PHI0),
            phihat0: Expr::sym(PHIHAT0),
            sigma2: Expr::sym(SIGMA2),
            sigma2_hat: Expr::sym(SIGMA2_HAT),
            sigma_k1: Laurent { m1: Expr::sym(SIGMA_M1), c0: Expr::sym(SIGMA_0) },
            sigma_k1_hat: Laurent { m1: Expr::sym(SIGMA_M1_HAT), c0: Expr::sym(SIGMA_0_HAT) },
        }
    }
}

impl Inputs {
    /// Overrides from `(name, value)` pairs keyed by the symbol names.
    pub fn with_overrides<'a>(mut self, pairs: impl IntoIterator<Item = (&'a str, Expr)>) -> Result<Self> {
        for (k, v) in pairs {
            let slot = match k {
                VOLUME => &mut self.volume,
                PHI0 => &mut self.phi0,
                PHIHAT0 => &mut self.phihat0,
                SIGMA2 => &mut self.sigma2,
                SIGMA2_HAT => &mut self.sigma2_hat,
                SIGMA_M1 => &mut self.sigma_k1.m1,
                SIGMA_0 => &mut self.sigma_k1.c0,
                SIGMA_M1_HAT => &mut self.sigma_k1_hat.m1,
                SIGMA_0_HAT => &mut self.sigma_k1_hat.c0,
                _ => return Err(Error::Parse(format!("unknown input {k:?}"))),
            };
            *slot = v;
        }
        Ok(self)
    }
}

/// `I⁰(Φ_λ, ω)` as a series in `λ`, from the unscaled identity
/// `I⁰ = V·δ#(Φ̂(0) − Φ(0)) + δ₂(Σ₁(R₂Φ̂) − Σ₁(R₂Φ)) + δ₁(Σ_{(0)}(R₁Φ̂) − Σ_{(0)}(R₁Φ))`
/// and the scaling laws.
pub fn scaled_i0(flags: Flags, inputs: &Inputs) -> LambdaSeries {
    let mut out = LambdaSeries::default();
    if flags.sharp {
        let hat = ScaleLaw::PHIHAT_AT_ZERO.scale_value(0, &inputs.phihat0);
        let plain = ScaleLaw::PHI_AT_ZERO.scale_value(0, &inputs.phi0);
        out = out.plus(&hat.minus(&plain).scale(&inputs.volume));
    }
    if flags.d2 {
        let hat = ScaleLaw::SIGMA1_R2_HAT.scale_value(2, &inputs.sigma2_hat);
        let plain = ScaleLaw::SIGMA1_R2.scale_value(2, &inputs.sigma2);
        out = out.plus(&hat.minus(&plain));
    }
    if flags.d1 {
        let (_, hat) = ScaleLaw::SIGMA_K1_R1_HAT.scale_laurent(1, &inputs.sigma_k1_hat);
        let (_, plain) = ScaleLaw::SIGMA_K1_R1.scale_laurent(1, &inputs.sigma_k1);
        out = out.plus(&hat.minus(&plain));
    }
    out
}

/// `∫₀¹ λ^{s−j}(log λ)^k d^×λ = coefficient/(s − j)^{order}` for `Re s > j`.
pub fn mellin_rewrite(j: i64, k: u32) -> (i64, u32, BigRational) {
    let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
    let sign = if k % 2 == 0 { 1 } else { -1 };
    (j, k + 1, BigRational::from_integer(fact * sign))
}

/// Poles → order → coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrincipalPart {
    pub poles: BTreeMap<i64, BTreeMap<u32, Expr>>,
}

impl PrincipalPart {
    pub fn add(&mut self, pole: i64, order: u32, c: &Expr) {
        let orders = self.poles.entry(pole).or_default();
        let entry = orders.entry(order).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            orders.remove(&order);
        }
        if orders.is_empty() {
            self.poles.remove(&pole);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn coefficient(&self, pole: i64, order: u32) -> Expr {
        self.poles
            .get(&pole)
            .and_then(|o| o.get(&order))
            .cloned()
            .unwrap_or_default()
    }

    pub fn max_order(&self) -> u32 {
        self.poles.values().flat_map(|o| o.keys().copied()).max().unwrap_or(0)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        let mut out = PrincipalPart::default();
        for (&p, orders) in &self.poles {
            for (&o, c) in orders {
                out.add(p, o, &f(c));
            }
        }
        out
    }

    pub fn substitute(&self, name: &str, value: &Expr) -> Self {
        self.map_coefficients(|c| c.substitute(name, value))
    }

    /// Identify the two residues at `s = 1` (they agree for `M_ω Φ = Φ`).
    pub fn with_residue_identity(&self) -> Self {
        self.substitute(SIGMA_M1_HAT, &Expr::sym(SIGMA_M1))
    }

    /// Both residues at `s = 1` vanish.
    pub fn with_vanishing_residues(&self) -> Self {
        self.substitute(SIGMA_M1, &Expr::zero())
            .substitute(SIGMA_M1_HAT, &Expr::zero())
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .poles
            .iter()
            .map(|(p, orders)| {
                let list: Vec<Value> = orders
                    .iter()
                    .map(|(o, c)| json!({"order": o, "coefficient": c.to_string()}))
                    .collect();
                (p.to_string(), Value::Array(list))
            })
            .collect();
        Value::Object(map)
    }
}

impl fmt::Display for PrincipalPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, orders) in &self.poles {
            for (o, c) in orders {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                let den = if *p == 0 { "s".to_string() } else { format!("(s - {p})") };
                let den = if *o == 1 { den } else { format!("{den}^{o}") };
                write!(f, "({c})/{den}")?;
            }
        }
        Ok(())
    }
}

/// Integrates `λ^s·I⁰(Φ_λ)` over `(0, 1]` term by term. Only simple poles
/// and a double pole at 4 can occur; anything else is rejected.
pub fn assemble_principal_part(i0: &LambdaSeries) -> Result<PrincipalPart> {
    let mut pp = PrincipalPart::default();
    for (&(e, k), c) in &i0.terms {
        let j = -e;
        match k {
            0 => {}
            1 if j == 4 => {}
            1 => {
                return Err(Error::MalformedLaurent(format!(
                    "log λ term at λ^{e}; only λ^-4 may carry one"
                )))
            }
            _ => return Err(Error::MalformedLaurent(format!("(log λ)^{k} term at λ^{e}"))),
        }
        let (pole, order, coef) = mellin_rewrite(j, k);
        pp.add(pole, order, &c.scale(&coef));
    }
    Ok(pp)
}

/// The full principal part for the given selectors.
pub fn principal_part(flags: Flags, inputs: &Inputs) -> Result<PrincipalPart> {
    assemble_principal_part(&scaled_i0(flags, inputs))
}

/// Exchange `Φ` and `Φ̂` in symbol names.
pub fn swap_symbol(name: &str) -> String {
    if name.contains("Phihat") {
        name.replace("Phihat", "Phi")
    } else {
        name.replace("Phi", "Phihat")
    }
}

/// Whether the principal part is compatible with `Z(Φ, s) = Z(Φ̂, 8 − s)`:
/// substituting `s ↦ 8 − s` and swapping `Φ ↔ Φ̂` gives it back.
pub fn fe_symmetry_check(pp: &PrincipalPart) -> bool {
    let mut mirrored = PrincipalPart::default();
    for (&p, orders) in &pp.poles {
        for (&o, c) in orders {
            // c/(8 − s − p)^o = (−1)^o·c/(s − (8 − p))^o
            let sign = if o % 2 == 0 { 1 } else { -1 };
            mirrored.add(8 - p, o, &c.rename(&swap_symbol).scale(&rat(sign)));
        }
    }
    mirrored == *pp
}
