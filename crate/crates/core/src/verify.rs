//! Property suites over every module, with reproducible failure witnesses.
//!
//! Each check runs `trials` independent trials; trial `t` of check `name`
//! draws from `trial_rng(seed, name, t)`, so a witness `(seed, name, t)`
//! replays one failure in isolation. Records are sorted by check name and
//! the JSON form carries no timing, so reruns are byte-identical.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, catalog_scorza, list_hermitian, severi_check, GOLDEN_K, GOLDEN_R};
use crate::cd::{cd_multiply, conjugate, norm_form, real_trace, CDElement};
use crate::dual_pair::{
    self, cartan_project, cartan_split, dagger_defect, equivariance_check_with, random_group_g, random_group_h,
    random_lie_g, random_v, random_w, reduced_point, sample_zero_level, signed_permutation, symplectic_shear,
    veronese_map, CaseKind, DualPairCase, MomentMaps,
};
use crate::error::{Error, Result};
use crate::jordan::{
    freudenthal_det, generic_det, jordan_product, jordan_rank3, jtrace, sharp, to_complex_matrix, trace_form,
    JordanElement,
};
use crate::linalg::Matrix;
use crate::rng::{rand_cd, rand_jordan, rand_nonzero_rational, trial_rng, DEFAULT_HEIGHT};
use crate::scalar::{Field, Scalar};
use crate::strata::{
    closure_membership, defects, peel_rank_one, rank_of, relative_invariant, sample_rank_one, sample_secant,
    stratum_dimension, PSpaceModel, StratumPoint,
};

/// Fraction of trials that must hit the generic value in genericity checks.
pub const GENERICITY_PERCENT: usize = 95;

/// Every library operation the `all` suite must exercise.
pub const ALL_OPS: &[&str] = &[
    "cd_multiply",
    "conjugate",
    "norm_form",
    "real_trace",
    "jordan_product",
    "jtrace",
    "trace_form",
    "sharp",
    "generic_det",
    "jordan_rank3",
    "catalog_scorza",
    "severi_check",
    "list_hermitian",
    "rank_of",
    "sample_rank_one",
    "sample_secant",
    "relative_invariant",
    "stratum_dimension",
    "defects",
    "closure_membership",
    "dagger",
    "mu_K",
    "mu_G",
    "equivariance_check",
    "sample_zero_level",
    "cartan_project",
    "reduced_point",
    "veronese_map",
    "verify_suite",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Composition,
    Jordan,
    Strata,
    Moment,
    Catalog,
    All,
}

impl Suite {
    pub const NAMES: &'static str = "composition | jordan | strata | moment | catalog | all";
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "composition" => Self::Composition,
            "jordan" => Self::Jordan,
            "strata" => Self::Strata,
            "moment" => Self::Moment,
            "catalog" => Self::Catalog,
            "all" => Self::All,
            _ => return Err(Error::Input(format!("unknown suite {s:?}; expected {}", Self::NAMES))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("enum serializes");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub seed: u64,
    pub trial: u64,
    pub inputs: Value,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub trials: usize,
    pub passes: usize,
    /// Trials reaching the generic value, for genericity checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Recorded data for checks that exhibit something (a counterexample, a table).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    pub ops_covered: Vec<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A failed trial: what went in and what went wrong.
#[derive(Debug)]
pub struct Fail {
    inputs: Value,
    detail: String,
}

fn fail<T>(inputs: Value, detail: impl Into<String>) -> std::result::Result<T, Fail> {
    Err(Fail { inputs, detail: detail.into() })
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail { inputs: Value::Null, detail: e.to_string() }
    }
}

type Outcome = std::result::Result<bool, Fail>;

fn ensure(ok: bool, inputs: impl FnOnce() -> Value, detail: &str) -> std::result::Result<(), Fail> {
    if ok {
        Ok(())
    } else {
        fail(inputs(), detail)
    }
}

fn v<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

#[derive(Clone, Copy)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub height: u32,
    pub maps: MomentMaps,
}

impl VerifyOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self { trials, seed, height: DEFAULT_HEIGHT, maps: MomentMaps::default() }
    }
}

struct Runner {
    opts: VerifyOptions,
    records: Vec<CheckRecord>,
    covered: BTreeSet<&'static str>,
}

impl Runner {
    fn cover(&mut self, ops: &[&'static str]) {
        self.covered.extend(ops.iter().copied());
    }

    fn rng(&self, name: &str, trial: u64) -> ChaCha8Rng {
        trial_rng(self.opts.seed, name, trial)
    }

    /// Runs `trials` trials. Each returns `Ok(generic)` or a failure.
    /// With `generic_needed`, the check also needs that many generic trials.
    fn run(
        &mut self,
        name: String,
        trials: usize,
        generic_needed: Option<usize>,
        mut f: impl FnMut(&mut ChaCha8Rng, u64) -> Outcome,
    ) -> &mut CheckRecord {
        let mut passes = 0;
        let mut generic = 0;
        let mut witness = None;
        for t in 0..trials as u64 {
            let mut rng = self.rng(&name, t);
            match f(&mut rng, t) {
                Ok(g) => {
                    passes += 1;
                    generic += g as usize;
                }
                Err(e) => {
                    if witness.is_none() {
                        witness = Some(Witness { seed: self.opts.seed, trial: t, inputs: e.inputs, detail: e.detail });
                    }
                }
            }
        }
        let mut pass = passes == trials;
        if let Some(need) = generic_needed {
            if generic < need {
                pass = false;
                witness.get_or_insert(Witness {
                    seed: self.opts.seed,
                    trial: 0,
                    inputs: json!({ "generic": generic, "needed": need }),
                    detail: format!("only {generic}/{trials} trials reached the generic value"),
                });
            }
        }
        self.records.push(CheckRecord {
            name,
            trials,
            passes,
            generic: generic_needed.map(|_| generic),
            pass,
            witness,
            evidence: None,
        });
        self.records.last_mut().expect("just pushed")
    }

    fn trials(&mut self, name: impl Into<String>, f: impl FnMut(&mut ChaCha8Rng, u64) -> Outcome) {
        let t = self.opts.trials;
        self.run(name.into(), t, None, f);
    }

    fn generic(&mut self, name: impl Into<String>, f: impl FnMut(&mut ChaCha8Rng, u64) -> Outcome) {
        let t = self.opts.trials;
        let need = (t * GENERICITY_PERCENT).div_ceil(100);
        self.run(name.into(), t, Some(need), f);
    }

    fn once(&mut self, name: impl Into<String>, f: impl FnOnce(&mut ChaCha8Rng) -> std::result::Result<Option<Value>, Fail>) {
        let name = name.into();
        let mut f = Some(f);
        let mut evidence = None;
        let rec = self.run(name, 1, None, |rng, _| {
            evidence = (f.take().expect("single trial"))(rng)?;
            Ok(true)
        });
        rec.evidence = evidence;
    }
}

pub fn verify_suite(suite: Suite, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify_suite_with(suite, VerifyOptions::new(trials, seed))
}

pub fn verify_suite_with(suite: Suite, opts: VerifyOptions) -> Result<VerificationReport> {
    if opts.trials == 0 {
        return Err(Error::Input("trials must be >= 1".into()));
    }
    let start = Instant::now();
    let mut r = Runner { opts, records: Vec::new(), covered: BTreeSet::new() };
    r.cover(&["verify_suite"]);
    let all = suite == Suite::All;
    if all || suite == Suite::Composition {
        composition_suite(&mut r);
    }
    if all || suite == Suite::Jordan {
        jordan_suite(&mut r);
    }
    if all || suite == Suite::Strata {
        strata_suite(&mut r);
    }
    if all || suite == Suite::Moment {
        moment_suite(&mut r);
    }
    if all || suite == Suite::Catalog {
        catalog_suite(&mut r);
    }
    if all {
        let covered = r.covered.clone();
        r.once("all/op_coverage", |_| {
            let missing: Vec<&str> = ALL_OPS.iter().copied().filter(|op| !covered.contains(op)).collect();
            if missing.is_empty() {
                Ok(Some(json!({ "ops": ALL_OPS.len() })))
            } else {
                fail(json!({ "missing": missing }), "operations not exercised by the suite")
            }
        });
    }
    let mut checks = r.records;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerificationReport {
        suite,
        seed: opts.seed,
        trials: opts.trials,
        pass: checks.iter().all(|c| c.pass),
        checks,
        ops_covered: r.covered.iter().map(|s| s.to_string()).collect(),
        wall_time: start.elapsed(),
    })
}

// ---------------------------------------------------------------------------

fn composition_suite(r: &mut Runner) {
    r.cover(&["cd_multiply", "conjugate", "norm_form", "real_trace"]);
    let h = r.opts.height;
    for field in [Field::Rational, Field::Gaussian] {
        let tag = if field == Field::Rational { "O" } else { "O_C" };
        r.trials(format!("composition/norm_multiplicative/{tag}"), |rng, _| {
            let (x, y) = (rand_cd(rng, 3, field, h), rand_cd(rng, 3, field, h));
            let lhs = norm_form(&cd_multiply(&x, &y)?);
            ensure(lhs == &norm_form(&x) * &norm_form(&y), || json!({"x": v(&x), "y": v(&y)}), "N(xy) != N(x)N(y)")?;
            Ok(true)
        });
        r.trials(format!("composition/alternative_laws/{tag}"), |rng, _| {
            let (x, y) = (rand_cd(rng, 3, field, h), rand_cd(rng, 3, field, h));
            let xx = cd_multiply(&x, &x)?;
            let left = cd_multiply(&x, &cd_multiply(&x, &y)?)? == cd_multiply(&xx, &y)?;
            let right = cd_multiply(&cd_multiply(&y, &x)?, &x)? == cd_multiply(&y, &xx)?;
            ensure(left && right, || json!({"x": v(&x), "y": v(&y)}), "alternative law fails")?;
            Ok(true)
        });
        r.trials(format!("composition/conjugation_anti_automorphism/{tag}"), |rng, _| {
            let (x, y) = (rand_cd(rng, 3, field, h), rand_cd(rng, 3, field, h));
            let ok = conjugate(&cd_multiply(&x, &y)?) == cd_multiply(&conjugate(&y), &conjugate(&x))?
                && conjugate(&conjugate(&x)) == x;
            ensure(ok, || json!({"x": v(&x), "y": v(&y)}), "conjugation is not an involutive anti-automorphism")?;
            Ok(true)
        });
        r.trials(format!("composition/trace_symmetric/{tag}"), |rng, _| {
            let (x, y) = (rand_cd(rng, 3, field, h), rand_cd(rng, 3, field, h));
            let ok = real_trace(&cd_multiply(&x, &y)?) == real_trace(&cd_multiply(&y, &x)?);
            ensure(ok, || json!({"x": v(&x), "y": v(&y)}), "t(xy) != t(yx)")?;
            Ok(true)
        });
    }
    for level in 0..=3u8 {
        r.trials(format!("composition/norm_multiplicative/level{level}"), |rng, _| {
            let (x, y) = (rand_cd(rng, level, Field::Gaussian, h), rand_cd(rng, level, Field::Gaussian, h));
            let ok = norm_form(&cd_multiply(&x, &y)?) == &norm_form(&x) * &norm_form(&y);
            ensure(ok, || json!({"x": v(&x), "y": v(&y)}), "N(xy) != N(x)N(y)")?;
            Ok(true)
        });
    }
    for level in 0..=2u8 {
        r.trials(format!("composition/associative/level{level}"), |rng, _| {
            let (x, y, z) = (rand_cd(rng, level, Field::Rational, h), rand_cd(rng, level, Field::Rational, h), rand_cd(rng, level, Field::Rational, h));
            let ok = cd_multiply(&cd_multiply(&x, &y)?, &z)? == cd_multiply(&x, &cd_multiply(&y, &z)?)?;
            ensure(ok, || json!({"x": v(&x), "y": v(&y), "z": v(&z)}), "(xy)z != x(yz)")?;
            Ok(true)
        });
    }
    r.once("composition/octonions_not_associative", |_| {
        let e = |i| CDElement::basis(3, Field::Rational, i);
        let (a, b, c) = (e(1), e(2), e(4));
        let ab_c = cd_multiply(&cd_multiply(&a, &b)?, &c)?;
        let a_bc = cd_multiply(&a, &cd_multiply(&b, &c)?)?;
        if ab_c == a_bc {
            return fail(json!({"a": "e1", "b": "e2", "c": "e4"}), "expected (e1 e2) e4 != e1 (e2 e4)");
        }
        Ok(Some(json!({"a": "e1", "b": "e2", "c": "e4", "(ab)c": v(&ab_c), "a(bc)": v(&a_bc)})))
    });
    r.once("composition/quaternion_units", |_| {
        let e = |i| CDElement::basis(2, Field::Rational, i);
        let ok = cd_multiply(&e(1), &e(2))? == e(3)
            && cd_multiply(&e(1), &e(1))? == CDElement::from_scalar(2, Field::Rational, Scalar::from_int(-1))
            && norm_form(&e(1).try_add(&e(2))?) == Scalar::from_int(2)
            && real_trace(&CDElement::one(3, Field::Rational)) == Scalar::from_int(2);
        ensure(ok, || Value::Null, "basis products disagree with the frozen table")?;
        Ok(None)
    });
}

// ---------------------------------------------------------------------------

fn jordan_suite(r: &mut Runner) {
    r.cover(&["jordan_product", "jtrace", "trace_form", "sharp", "generic_det", "jordan_rank3"]);
    let h = r.opts.height;
    let oc = |rng: &mut ChaCha8Rng| rand_jordan(rng, 3, 3, Field::Gaussian, h);
    let oq = |rng: &mut ChaCha8Rng| rand_jordan(rng, 3, 3, Field::Rational, h);
    r.trials("jordan/jordan_identity/O", |rng, _| {
        let (x, y) = (oq(rng), oq(rng));
        let x2 = jordan_product(&x, &x)?;
        let lhs = jordan_product(&x2, &jordan_product(&x, &y)?)?;
        let rhs = jordan_product(&x, &jordan_product(&x2, &y)?)?;
        ensure(lhs == rhs, || json!({"x": v(&x), "y": v(&y)}), "(x^2)(xy) != x((x^2)y)")?;
        Ok(true)
    });
    r.trials("jordan/power_associative/O_C", |rng, _| {
        let x = oc(rng);
        let x2 = jordan_product(&x, &x)?;
        let ok = jordan_product(&x, &jordan_product(&x, &x2)?)? == jordan_product(&x2, &x2)?;
        ensure(ok, || json!({"x": v(&x)}), "x(x x^2) != x^2 x^2")?;
        Ok(true)
    });
    r.trials("jordan/trace_form_symmetric/O_C", |rng, _| {
        let (x, y) = (oc(rng), oc(rng));
        ensure(trace_form(&x, &y)? == trace_form(&y, &x)?, || json!({"x": v(&x), "y": v(&y)}), "asymmetric trace form")?;
        Ok(true)
    });
    r.trials("jordan/trace_form_positive/O", |rng, _| {
        let x = oq(rng);
        if x.is_zero() {
            return Ok(true);
        }
        let t = trace_form(&x, &x)?;
        ensure(t.real_sign() == Some(std::cmp::Ordering::Greater), || json!({"x": v(&x)}), "t(x∘x) <= 0")?;
        Ok(true)
    });
    r.trials("jordan/sharp_identity/O_C", |rng, _| {
        let x = oc(rng);
        let lhs = jordan_product(&sharp(&x)?, &x)?;
        let rhs = JordanElement::identity(3, 3, Field::Gaussian).scale(&generic_det(&x)?);
        ensure(lhs == rhs, || json!({"x": v(&x)}), "x# ∘ x != det(x) I")?;
        Ok(true)
    });
    r.trials("jordan/adjoint_identity/O_C", |rng, _| {
        let x = oc(rng);
        let d = generic_det(&x)?;
        ensure(generic_det(&sharp(&x)?)? == &d * &d, || json!({"x": v(&x)}), "det(x#) != det(x)^2")?;
        Ok(true)
    });
    r.trials("jordan/det_matches_complex_det/C", |rng, _| {
        let x = rand_jordan(rng, 3, 1, Field::Rational, h);
        let ok = generic_det(&x)? == to_complex_matrix(&x)?.det()?;
        ensure(ok, || json!({"x": v(&x)}), "generic det differs from the matrix determinant")?;
        Ok(true)
    });
    r.trials("jordan/det_cubic/O_C", |rng, _| {
        let x = oc(rng);
        let l = Scalar::from_rational(rand_nonzero_rational(rng, h));
        let ok = generic_det(&x.scale(&l))? == &l.pow(3) * &generic_det(&x)?;
        ensure(ok, || json!({"x": v(&x), "lambda": v(&l)}), "det(λx) != λ^3 det(x)")?;
        Ok(true)
    });
    r.trials("jordan/freudenthal_cross_check/O_C", |rng, _| {
        let x = oc(rng);
        ensure(freudenthal_det(&x)? == generic_det(&x)?, || json!({"x": v(&x)}), "closed cubic disagrees")?;
        Ok(true)
    });
    r.trials("jordan/rank_matches_matrix_rank/C", |rng, t| {
        let target = (t % 4) as usize;
        let mut x = JordanElement::zero(3, 1, Field::Rational);
        for _ in 0..target {
            let vv: Vec<CDElement> = (0..3).map(|_| rand_cd(rng, 1, Field::Rational, h)).collect();
            let sign = Scalar::from_int(if rand::Rng::gen::<bool>(rng) { 1 } else { -1 });
            x = x.try_add(&JordanElement::outer_self(&vv)?.scale(&sign))?;
        }
        let jr = jordan_rank3(&x)?;
        let mr = to_complex_matrix(&x)?.rank();
        ensure(jr == mr, || json!({"x": v(&x), "jordan_rank": jr, "matrix_rank": mr}), "Jordan rank != matrix rank")?;
        Ok(true)
    });
    r.trials("jordan/quaternionic_rank_one/O_C", |rng, _| {
        let vv: Vec<CDElement> =
            (0..3).map(|_| rand_cd(rng, 2, Field::Gaussian, h).promote(3, Field::Gaussian)).collect::<Result<_>>()?;
        let x = JordanElement::outer_self(&vv)?;
        if x.is_zero() {
            return Ok(true);
        }
        ensure(sharp(&x)?.is_zero() && jordan_rank3(&x)? == 1, || json!({"v": v(&vv)}), "v v* is not rank one")?;
        Ok(true)
    });
    r.once("jordan/diagonal_examples", |_| {
        let d = |a: &[i64]| JordanElement::diag(3, Field::Rational, &a.iter().map(|&k| Scalar::from_int(k)).collect::<Vec<_>>());
        let ok = generic_det(&d(&[2, 3, 5]))? == Scalar::from_int(30)
            && sharp(&d(&[2, 3, 5]))? == d(&[15, 10, 6])
            && jtrace(&JordanElement::identity(3, 3, Field::Rational)) == Scalar::from_int(3)
            && jordan_rank3(&d(&[1, 1, 0]))? == 2;
        ensure(ok, || Value::Null, "diagonal examples fail")?;
        Ok(None)
    });
}

// ---------------------------------------------------------------------------

pub fn strata_models() -> Vec<PSpaceModel> {
    vec![
        PSpaceModel::Sym { r: 3 },
        PSpaceModel::Mat { q: 3, p: 3 },
        PSpaceModel::Mat { q: 3, p: 5 },
        PSpaceModel::Skew { n: 6 },
        PSpaceModel::Skew { n: 7 },
        PSpaceModel::Exc27,
    ]
}

fn strata_suite(r: &mut Runner) {
    r.cover(&[
        "rank_of",
        "sample_rank_one",
        "sample_secant",
        "relative_invariant",
        "stratum_dimension",
        "defects",
        "closure_membership",
        "catalog_scorza",
        "severi_check",
    ]);
    let h = r.opts.height;
    for model in strata_models() {
        r.trials(format!("strata/rank_one/{model}"), |rng, _| {
            let x = sample_rank_one(model, rng, h)?;
            let ok = !x.is_zero() && rank_of(&x)? == 1;
            ensure(ok, || json!({"x": v(&x)}), "rank-one sample has rank != 1")?;
            if let Some(j) = x.jordan() {
                ensure(sharp(j)?.is_zero() && generic_det(j)?.is_zero(), || json!({"x": v(&x)}), "sharp or det nonzero")?;
            }
            Ok(true)
        });
        let top = model.max_rank();
        for s in 1..=top {
            r.generic(format!("strata/secant/{model}/s{s}"), |rng, _| {
                let x = sample_secant(model, s - 1, rng, h)?;
                let rank = rank_of(&x)?;
                let w = || json!({"x": v(&x), "rank": rank});
                ensure(rank <= s, w, "secant point exceeds rank s")?;
                ensure(closure_membership(&x, s)? && (s == 0 || !closure_membership(&x, s - 1)? || rank < s), w, "closure membership inconsistent")?;
                ensure(closure_membership(&x, s + 1)?, w, "closures are not ascending")?;
                if model.is_regular() {
                    let inv = relative_invariant(&x)?;
                    ensure(inv.is_zero() == (rank < top), w, "relative invariant vanishing disagrees with rank")?;
                }
                if let (Some(j), 2) = (x.jordan(), s) {
                    ensure(generic_det(j)?.is_zero(), w, "chordal point off the cubic")?;
                }
                Ok(rank == s)
            });
        }
        if model != PSpaceModel::Exc27 {
            r.trials(format!("strata/peeling/{model}"), |rng, t| {
                let s = 1 + (t as usize) % top;
                let x = sample_secant(model, s - 1, rng, h)?;
                let parts = peel_rank_one(&x)?;
                let rank = rank_of(&x)?;
                let w = || json!({"x": v(&x)});
                ensure(parts.len() == rank, w, "number of summands != rank")?;
                let mut acc = StratumPoint::zero(model);
                for p in &parts {
                    ensure(rank_of(p)? == 1, w, "summand is not rank one")?;
                    acc = acc.try_add(p)?;
                }
                ensure(acc.coordinate_vector() == x.coordinate_vector(), w, "summands do not re-sum to the input")?;
                Ok(true)
            });
        }
    }
    r.trials("strata/pfaffian_squared/skew:6", |rng, _| {
        let x = sample_secant(PSpaceModel::Skew { n: 6 }, 2, rng, h)?;
        let m = x.matrix().expect("matrix model");
        let pf = m.pfaffian()?;
        ensure(&pf * &pf == m.det()?, || json!({"x": v(&x)}), "Pf^2 != det")?;
        Ok(true)
    });
    r.once("strata/dimension_table", |rng| {
        let cases: &[(PSpaceModel, usize, usize)] = &[
            (PSpaceModel::Sym { r: 3 }, 1, 2),
            (PSpaceModel::Sym { r: 3 }, 2, 4),
            (PSpaceModel::Sym { r: 3 }, 3, 5),
            (PSpaceModel::Mat { q: 3, p: 3 }, 2, 7),
            (PSpaceModel::Skew { n: 6 }, 1, 8),
            (PSpaceModel::Skew { n: 6 }, 2, 13),
            (PSpaceModel::Skew { n: 5 }, 1, 6),
            (PSpaceModel::Exc27, 1, 16),
            (PSpaceModel::Exc27, 2, 25),
            (PSpaceModel::Exc27, 3, 26),
        ];
        let mut rows = Vec::new();
        for &(model, s, want) in cases {
            let got = stratum_dimension(model, s, rng, h)?.proj_dim;
            rows.push(json!({"model": model.to_string(), "s": s, "proj_dim": got}));
            if got != want {
                return fail(json!({"model": model.to_string(), "s": s, "got": got, "want": want}), "dimension mismatch");
            }
        }
        Ok(Some(Value::Array(rows)))
    });
    r.once("strata/severi_relation_on_computed_dims", |rng| {
        let mut rows = Vec::new();
        for e in catalog_scorza(2)?.into_iter() {
            let n = stratum_dimension(e.model, 1, rng, h)?.proj_dim;
            let m = stratum_dimension(e.model, e.model.max_rank(), rng, h)?.proj_dim;
            let critical = 2 * m == 3 * n + 4;
            rows.push(json!({"label": e.label, "dim_x": n, "m": m, "critical": critical}));
            if critical != e.regular || (e.regular && !severi_check(&e)?) {
                return fail(json!({"label": e.label, "dim_x": n, "m": m}), "Severi relation does not single out the regular rows");
            }
        }
        Ok(Some(Value::Array(rows)))
    });
    r.once("strata/defects", |rng| {
        let mut rows = Vec::new();
        let cases: &[(PSpaceModel, bool)] = &[
            (PSpaceModel::Sym { r: 3 }, true),
            (PSpaceModel::Mat { q: 3, p: 4 }, true),
            (PSpaceModel::Mat { q: 3, p: 5 }, false),
            (PSpaceModel::Skew { n: 7 }, true),
            (PSpaceModel::Exc27, true),
        ];
        for &(model, ok) in cases {
            let d = defects(model, rng, h)?;
            rows.push(json!({"model": model.to_string(), "defects": v(&d)}));
            if d.scorza_ok != ok {
                return fail(json!({"model": model.to_string(), "defects": v(&d)}), "unexpected Scorza verdict");
            }
            if let PSpaceModel::Mat { q, p } = model {
                if d.k0 + (p - q) / 2 != d.secant_dims[0] / d.delta[0] {
                    return fail(json!({"model": model.to_string(), "defects": v(&d)}), "k0 + [(p-q)/2] != [dim/δ]");
                }
            }
        }
        Ok(Some(Value::Array(rows)))
    });
}

// ---------------------------------------------------------------------------

pub fn moment_cases() -> Vec<CaseKind> {
    vec![CaseKind::Sp { l: 3 }, CaseKind::U { p: 3, q: 3 }, CaseKind::Ostar { d: 6 }]
}

fn moment_suite(r: &mut Runner) {
    r.cover(&[
        "dagger",
        "mu_K",
        "mu_G",
        "equivariance_check",
        "sample_zero_level",
        "cartan_project",
        "reduced_point",
        "veronese_map",
    ]);
    let h = r.opts.height;
    let maps = r.opts.maps;
    for kind in moment_cases() {
        let case2 = DualPairCase { kind, s: 2 };
        r.trials(format!("moment/dagger_identity/{kind}"), |rng, _| {
            let a = random_w(&case2, rng, h);
            let dag = (maps.dagger)(&a);
            let ok = dagger_defect(&a, &dag).iter().all(Scalar::is_zero);
            ensure(ok, || json!({"alpha": v(a.alpha()), "case": v(&case2)}), "(α†u, v) != B(u, αv)")?;
            Ok(true)
        });
        r.trials(format!("moment/lie_membership/{kind}"), |rng, _| {
            let a = random_w(&case2, rng, h);
            let ok = case2.in_h(&maps.mu_k(&a)) && case2.in_g(&maps.mu_g(&a));
            ensure(ok, || json!({"alpha": v(a.alpha()), "case": v(&case2)}), "moment map leaves its Lie algebra")?;
            Ok(true)
        });
        r.trials(format!("moment/equivariance/{kind}"), |rng, _| {
            let a = random_w(&case2, rng, h);
            let g = random_group_g(&case2, rng, 3)?;
            let hh = random_group_h(&case2, rng, 3)?;
            let ok = equivariance_check_with(&maps, &a, &hh, &g)?;
            ensure(ok, || json!({"alpha": v(a.alpha()), "g": v(&g), "h": v(&hh)}), "momentum maps not equivariant")?;
            Ok(true)
        });
        r.trials(format!("moment/cartan_split/{kind}"), |rng, _| {
            let x = random_lie_g(&case2, rng, h)?;
            let (xk, xp) = cartan_split(&x, &case2)?;
            let j = case2.j_v();
            let ok = &xk * &j == &j * &xk && &xp * &j == -&(&j * &xp);
            ensure(ok, || json!({"x": v(&x)}), "Cartan parts do not (anti)commute with J")?;
            cartan_project(&x, &case2)?;
            Ok(true)
        });
        let rk = case2.split_rank();
        for s in 1..=rk + 1 {
            let case = DualPairCase { kind, s };
            r.generic(format!("moment/reduction/{kind}/s{s}"), |rng, _| {
                let a = sample_zero_level(&case, rng, h)?;
                let pt = reduced_point(&a)?;
                let rank = rank_of(&pt)?;
                let bound = s.min(rk);
                ensure(rank <= bound, || json!({"alpha": v(a.alpha()), "rank": rank}), "reduced point exceeds min(s, r)")?;
                Ok(rank == bound)
            });
        }
        let case1 = DualPairCase { kind, s: 1 };
        r.generic(format!("moment/veronese/{kind}"), |rng, _| {
            let x = random_v(&case1, rng, h);
            let pt = veronese_map(&case1, &x)?;
            let rank = rank_of(&pt)?;
            let lam = Scalar::from_rational(rand_nonzero_rational(rng, h));
            let scaled: Vec<Scalar> = x.iter().map(|c| c * &lam).collect();
            let pt2 = veronese_map(&case1, &scaled)?;
            let w = || json!({"v": v(&x), "lambda": v(&lam)});
            ensure(rank <= 1, w, "Veronese image has rank > 1")?;
            ensure(pt2.coordinate_vector() == pt.scale(&(&lam * &lam)).coordinate_vector(), w, "not quadratic")?;
            ensure(rank_of(&pt2)? == rank, w, "rank changes under scaling")?;
            Ok(rank == 1)
        });
    }
    let sp = DualPairCase { kind: CaseKind::Sp { l: 3 }, s: 2 };
    r.trials("moment/equivariance_elementary/sp:3", |rng, _| {
        let a = random_w(&sp, rng, h);
        let hh = signed_permutation(2, rng);
        let g = symplectic_shear(3, rng, h);
        let ok = equivariance_check_with(&maps, &a, &hh, &Matrix::identity(6))?
            && equivariance_check_with(&maps, &a, &Matrix::identity(2), &g)?
            && equivariance_check_with(&maps, &a, &Matrix::identity(2), &Matrix::identity(6))?;
        ensure(ok, || json!({"alpha": v(a.alpha()), "g": v(&g), "h": v(&hh)}), "elementary equivariance fails")?;
        Ok(true)
    });
    r.once("moment/hand_example/sp:1", |_| {
        let c = DualPairCase { kind: CaseKind::Sp { l: 1 }, s: 1 };
        let a = dual_pair::WElement::new(c, Matrix::from_ints(&[&[1], &[0]]))?;
        let ok = (maps.dagger)(&a) == Matrix::from_ints(&[&[0, -1]])
            && maps.mu_g(&a) == Matrix::from_ints(&[&[0, -1], &[0, 0]]);
        ensure(ok, || json!({"alpha": v(a.alpha())}), "alpha = e1 example fails")?;
        Ok(None)
    });
    r.once("moment/w_dimensions/sp:3", |_| {
        let dims: Vec<usize> = (1..=3).map(|s| DualPairCase { kind: CaseKind::Sp { l: 3 }, s }.w_complex_dim()).collect();
        let proj: Vec<usize> = dims.iter().map(|d| d - 1).collect();
        ensure(dims == [3, 6, 9], || json!({"dims": dims}), "W(s) dimensions")?;
        Ok(Some(json!({"complex_dims": dims, "projective_dims": proj})))
    });
    r.once("moment/zero_point", |_| {
        let c = DualPairCase { kind: CaseKind::Sp { l: 3 }, s: 2 };
        let pt = reduced_point(&dual_pair::WElement::zero(c))?;
        ensure(pt.is_zero() && rank_of(&pt)? == 0, || Value::Null, "zero alpha does not reduce to zero")?;
        Ok(None)
    });
}

// ---------------------------------------------------------------------------

fn catalog_suite(r: &mut Runner) {
    r.cover(&["catalog_scorza", "severi_check", "list_hermitian", "stratum_dimension"]);
    let h = r.opts.height;
    for k in GOLDEN_K {
        r.once(format!("catalog/golden/scorza_k{k}"), |_| {
            let fresh = catalog::scorza_json(k)?;
            ensure(Some(fresh.as_str()) == catalog::golden_scorza(k), || json!({"k": k}), "catalog differs from golden file")?;
            Ok(None)
        });
    }
    for rank in GOLDEN_R {
        r.once(format!("catalog/golden/hermitian_r{rank}"), |_| {
            let fresh = catalog::hermitian_json(rank, false)?;
            ensure(Some(fresh.as_str()) == catalog::golden_hermitian(rank), || json!({"r": rank}), "list differs from golden file")?;
            Ok(None)
        });
    }
    r.once("catalog/scorza_invariants", |_| {
        for k in GOLDEN_K {
            for e in catalog_scorza(k)? {
                let w = || json!({"entry": v(&e)});
                ensure(e.ambient_m == e.model.proj_ambient_dim(), w, "ambient m != dim P(model)")?;
                ensure(e.k0 * e.delta <= e.dim_x && e.dim_x < (e.k0 + 1) * e.delta, w, "k0 inconsistent")?;
                ensure(e.regular == e.model.is_regular(), w, "regularity disagrees with model")?;
                if let PSpaceModel::Mat { q, p } = e.model {
                    ensure(p == q || p == q + 1, w, "Mat family outside p = q, q + 1")?;
                }
                let critical = 2 * e.ambient_m == 3 * e.dim_x + 4;
                ensure(critical == (k == 2 && e.regular), w, "Severi relation holds off the four Severi rows")?;
            }
        }
        Ok(None)
    });
    r.once("catalog/dims_match_jacobian", |rng| {
        let mut rows = Vec::new();
        for k in GOLDEN_K {
            for e in catalog_scorza(k)? {
                let dim_x = stratum_dimension(e.model, 1, rng, h)?.proj_dim;
                let top = if e.regular { Some(stratum_dimension(e.model, e.model.max_rank(), rng, h)?.proj_dim) } else { None };
                rows.push(json!({"k": k, "label": e.label, "dim_x": dim_x, "m": top}));
                if dim_x != e.dim_x || top.is_some_and(|m| m != e.ambient_m) {
                    return fail(json!({"entry": v(&e), "dim_x": dim_x, "m": top}), "Jacobian dimension disagrees with catalog");
                }
            }
        }
        Ok(Some(Value::Array(rows)))
    });
    r.once("catalog/severi_rows", |_| {
        let rows: Vec<_> = catalog_scorza(2)?.into_iter().filter(|e| e.regular).collect();
        let pairs: Vec<(usize, usize)> = rows.iter().map(|e| (e.dim_x, e.ambient_m)).collect();
        ensure(pairs == [(2, 5), (4, 8), (8, 14), (16, 26)], || json!({"pairs": pairs}), "Severi rows")?;
        for e in &rows {
            ensure(severi_check(e)?, || json!({"entry": v(e)}), "severi_check rejects a Severi row")?;
        }
        Ok(None)
    });
    r.once("catalog/hermitian_lists", |_| {
        let names = |rank, reg| -> Result<Vec<String>> {
            Ok(list_hermitian(rank, reg)?.into_iter().map(|e| e.family).collect())
        };
        ensure(names(3, true)? == ["sp(3,R)", "su(3,3)", "so*(12)", "e7(-25)"], || Value::Null, "rank 3 regular")?;
        ensure(names(5, true)? == ["sp(5,R)", "su(5,5)", "so*(20)"], || Value::Null, "rank 5 regular")?;
        ensure(names(2, true)? == ["so(p,2)"], || Value::Null, "rank 2 regular")?;
        for rank in GOLDEN_R {
            for e in list_hermitian(rank, false)? {
                if let (Some(m), Some(d)) = (e.p_model, e.dim_p) {
                    let w = || json!({"entry": v(&e)});
                    ensure(m.ambient_dim() == d && m.max_rank() == rank && m.is_regular() == e.regular, w, "p-model mismatch")?;
                }
            }
        }
        Ok(None)
    });
}
