//! A compact run of the invariant checks, for the `selftest` command.

use num::complex::Complex64;
use num::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cubealg::{BaseField, CubicAlgebra};
use crate::finite::FiniteModel;
use crate::space::Space;
use crate::strata::{witness_is_valid, Label};
use crate::zeta::symbolic::{self, Expr, Flags, Inputs, PrincipalPart};
use crate::zeta::{dedekind_zeta, local_factor};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spaces() -> Vec<Space> {
    [
        (BaseField::Rational, [-2, 0, 0]),
        (BaseField::Rational, [-1, -1, 0]),
        (BaseField::Prime(7), [-2, 0, 0]),
    ]
    .into_iter()
    .map(|(f, c)| Space::new(CubicAlgebra::from_i64s(f, c).expect("valid cubic")))
    .collect()
}

fn census() -> Outcome {
    let m = FiniteModel::new(3, [-1, -1, 0]).map_err(|e| e.to_string())?;
    let (rec, _) = m.census(1).map_err(|e| e.to_string())?;
    ensure(rec.partition_holds() && rec.counts() == (4320, 2184, 56), || format!("{rec:?}"))?;
    Ok(format!("{:?}", rec.counts()))
}

fn covariance(samples: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for s in spaces() {
        for seed in 0..samples {
            let g = s.random_group_element(seed);
            let x = s.random_point(&mut rng, 10);
            let lhs = s.discriminant(&s.act(&g, &x));
            ensure(lhs == &s.covariance_factor(&g) * &s.discriminant(&x), || format!("seed {seed}"))?;
        }
    }
    Ok(format!("{} samples", 3 * samples))
}

fn generators(samples: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for s in spaces() {
        for _ in 0..samples {
            let x = s.random_point(&mut rng, 10);
            let u = s.random_element(&mut rng, 10);
            let t1 = s.field().random_nonzero(&mut rng, 10);
            let (a, b) = (s.random_unit(&mut rng, 10), s.random_unit(&mut rng, 10));
            let g = s.diag(&t1, &a, &b).map_err(|e| e.to_string())?;
            ensure(s.act(&s.n(&u), &x) == s.act_n(&u, &x), || "n(u)".into())?;
            ensure(s.act(&g, &x) == s.act_diag(&t1, &a, &b, &x), || "a(t21,t22)".into())?;
            ensure(s.act(&s.tau(), &x) == s.act_tau(&x), || "tau".into())?;
        }
    }
    Ok(format!("{} samples", 3 * samples))
}

fn duality(samples: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in spaces() {
        for seed in 0..samples {
            let g = s.random_group_element(seed);
            let d = s.dual_involution(&g).map_err(|e| e.to_string())?;
            let d_inv = s.inverse(&d).map_err(|e| e.to_string())?;
            let x = s.random_point(&mut rng, 10);
            let y = s.random_point(&mut rng, 10);
            ensure(s.pair(&s.act(&g, &x), &y) == s.pair(&x, &s.act(&d_inv, &y)), || "pairing".into())?;
            ensure(s.dual_involution(&d).map_err(|e| e.to_string())? == g, || "involution".into())?;
        }
    }
    Ok(format!("{} samples", 3 * samples))
}

fn middle(samples: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for s in spaces() {
        let alg = s.algebra();
        for _ in 0..samples {
            let x = s.random_point(&mut rng, 10);
            let u = s.random_element(&mut rng, 10);
            let (a, b) = s.middle_affine(&x);
            let lin = &a + &alg.mul(&b, &u).scale(&s.field().from_i64(2));
            ensure(s.quad_form(&s.act_n(&u, &x)).b == alg.embed(3, &lin), || "b-coefficient".into())?;
        }
    }
    Ok(format!("{} samples", 3 * samples))
}

fn witnesses() -> Outcome {
    let m = FiniteModel::new(3, [-1, -1, 0]).map_err(|e| e.to_string())?;
    let s = m.space();
    let mut n = 0;
    for i in 0..m.size() {
        let x = m.point_at(i);
        let r = s.classify(&x).map_err(|e| e.to_string())?;
        if matches!(r.label, Label::S1 | Label::S2) {
            ensure(witness_is_valid(s, &x, &r), || format!("point {i}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} unstable points"))
}

fn fourier() -> Outcome {
    let m = FiniteModel::new(3, [-1, -1, 0]).map_err(|e| e.to_string())?;
    let s = m.space();
    let phi = m.function(|x| {
        let c = x.coords().map(|v| v.residue().unwrap_or(0) as f64);
        Complex64::new(c.iter().sum::<f64>().sin(), c[0] - c[7] * 0.5)
    });
    let hat = m.fourier(&phi);
    let parseval = (hat.norm_sqr() - phi.norm_sqr()).abs() / phi.norm_sqr();
    let reflected = m.function(|x| phi.values[m.index_of(&-x)]);
    let double = m.fourier(&hat).max_abs_diff(&reflected);
    let mut equiv: f64 = 0.0;
    for seed in 0..2 {
        let g = s.random_group_element(seed);
        let d = s.dual_involution(&g).map_err(|e| e.to_string())?;
        equiv = equiv.max(m.fourier(&m.compose(&phi, &g)).max_abs_diff(&m.compose(&hat, &d)));
    }
    ensure(parseval < 1e-9 && double < 1e-9 && equiv < 1e-9, || {
        format!("parseval {parseval:e}, double {double:e}, equivariance {equiv:e}")
    })?;
    Ok(format!("max error {:e}", parseval.max(double).max(equiv)))
}

fn zeta() -> Outcome {
    let f = [-1, -1, 0];
    let kinds: Vec<String> = [2, 5, 23]
        .iter()
        .map(|&p| local_factor(p, f).map(|l| l.to_string()))
        .collect::<crate::Result<_>>()
        .map_err(|e| e.to_string())?;
    ensure(kinds == ["(3)", "(1)(2)", "(1^2)(1)"], || format!("{kinds:?}"))?;
    let z = dedekind_zeta(f, 2.0, 100_000).map_err(|e| e.to_string())?;
    ensure(z.discrepancy() < 1e-4, || format!("{z:?}"))?;
    Ok(format!("zeta(2) ≈ {:.9}", z.euler))
}

/// The displayed principal part, with `Φ̂`-side residue kept separate.
pub fn reference_table() -> PrincipalPart {
    use symbolic::*;
    let v = Expr::sym(VOLUME);
    let mut pp = PrincipalPart::default();
    pp.add(8, 1, &(&v * &Expr::sym(PHIHAT0)));
    pp.add(0, 1, &-&(&v * &Expr::sym(PHI0)));
    pp.add(6, 1, &Expr::sym(SIGMA2_HAT));
    pp.add(2, 1, &-&Expr::sym(SIGMA2));
    pp.add(4, 2, &Expr::sym(SIGMA_M1_HAT).scale(&BigRational::from_integer((-3).into())));
    pp.add(4, 1, &Expr::sym(SIGMA_0_HAT));
    pp.add(4, 2, &Expr::sym(SIGMA_M1).scale(&BigRational::from_integer((-3).into())));
    pp.add(4, 1, &-&Expr::sym(SIGMA_0));
    pp
}

fn principal_part() -> Outcome {
    let pp = symbolic::principal_part(Flags::ALL, &Inputs::default()).map_err(|e| e.to_string())?;
    ensure(pp == reference_table(), || format!("got {pp}"))?;
    ensure(symbolic::fe_symmetry_check(&pp), || "functional equation".into())?;
    let merged = pp.with_residue_identity();
    let want = Expr::sym(symbolic::SIGMA_M1).scale(&BigRational::from_integer((-6).into()));
    ensure(merged.coefficient(4, 2) == want, || "order-2 coefficient".into())?;
    ensure(pp.with_vanishing_residues().max_order() == 1, || "simple poles".into())?;
    Ok(pp.to_string())
}

pub fn run() -> Vec<Check> {
    let checks: Vec<(&'static str, Box<dyn Fn() -> Outcome>)> = vec![
        ("census F3", Box::new(census)),
        ("witness validity F3", Box::new(witnesses)),
        ("discriminant covariance", Box::new(|| covariance(100))),
        ("generator closed forms", Box::new(|| generators(100))),
        ("pairing duality", Box::new(|| duality(50))),
        ("middle coefficient", Box::new(|| middle(100))),
        ("finite Fourier", Box::new(fourier)),
        ("Dedekind zeta", Box::new(zeta)),
        ("principal part", Box::new(principal_part)),
    ];
    checks
        .into_iter()
        .map(|(name, f)| {
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
                .unwrap_or_else(|_| Err("panicked".into()));
            match outcome {
                Ok(detail) => Check { name, passed: true, detail },
                Err(detail) => Check { name, passed: false, detail },
            }
        })
        .collect()
}
