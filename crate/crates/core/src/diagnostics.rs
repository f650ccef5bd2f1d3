//! Structural facts checked at finite dimension: monos without retractions
//! (and the dual epis without sections), Hom-vanishing against identity
//! objects, the unique simple object and additivity of its multiplicity.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::{is_exact_pair, kernel};
use crate::error::{NilError, Result};
use crate::hom::{intertwiner_matrix, intertwiner_solutions};
use crate::jordan::{decompose, is_simple};
use crate::json::{MatDoc, MorphismDoc, ObjectDoc};
use crate::matrix::{Mat, Vector};
use crate::object::{JordanType, NilMorphism, NilObject};
use crate::random::ProbeRng;
use crate::scalar::Field;

/// `f = (1, 0)ᵀ: (X, x) → (X ⊕ X, [[x, 1], [0, x]])`.
pub fn double_embedding(x: &NilObject) -> Result<(NilMorphism, NilObject)> {
    if x.dim() == 0 {
        return Err(NilError::ZeroObject);
    }
    let field = x.field();
    let n = x.dim();
    let id = Mat::identity(field, n);
    let zero = Mat::zeros(field, n, n);
    let y = Mat::from_blocks(field, &[vec![x.endo(), &id], vec![&zero, x.endo()]]);
    let target = NilObject::new(2 * n, y)?;
    let f = NilMorphism::new(x.clone(), target.clone(), id.vstack(&zero))?;
    Ok((f, target))
}

/// `(1, 0): (X ⊕ X, [[x, 0], [1, x]]) → (X, x)`, the transpose of the
/// double embedding of `(X, xᵀ)`.
pub fn double_projection(x: &NilObject) -> Result<(NilMorphism, NilObject)> {
    let (f, _) = double_embedding(&x.transpose())?;
    let g = f.transpose();
    let src = g.src().clone();
    Ok((g, src))
}

/// Solves `lin·v = rhs` together with `constraint·v = 0`.
fn solve_constrained(lin: &Mat, rhs: &[crate::Scalar], constraint: &Mat) -> Result<Option<Vector>> {
    let field = lin.field();
    let system = lin.vstack(constraint);
    let mut b = rhs.to_vec();
    b.extend(std::iter::repeat_n(field.zero(), constraint.rows()));
    Ok(system.solve(&b)?.map(|s| s.particular))
}

/// A morphism `g` with `g∘f = 1`, found by solving `g·f = 1` and
/// `g·y = x·g` as one linear system.
pub fn has_retraction(f: &NilMorphism) -> Result<Option<NilMorphism>> {
    let field = f.field();
    let (n, m) = (f.src().dim(), f.dst().dim());
    if f.mat().rank() != n {
        return Err(NilError::NotMonic);
    }
    // vec(g·f) = (fᵀ ⊗ 1_n)·vec(g)
    let lin = f.mat().transpose().kron(&Mat::identity(field, n));
    let inter = intertwiner_matrix(f.dst().endo(), f.src().endo())?;
    let Some(v) = solve_constrained(&lin, &Mat::identity(field, n).vectorize(), &inter)? else {
        return Ok(None);
    };
    NilMorphism::new(f.dst().clone(), f.src().clone(), Mat::unvectorize(field, n, m, &v)).map(Some)
}

/// A morphism `s` with `g∘s = 1`.
pub fn has_section(g: &NilMorphism) -> Result<Option<NilMorphism>> {
    let field = g.field();
    let (m, n) = (g.src().dim(), g.dst().dim());
    if g.mat().rank() != n {
        return Err(NilError::NotEpic);
    }
    // vec(g·s) = (1_n ⊗ g)·vec(s)
    let lin = Mat::identity(field, n).kron(g.mat());
    let inter = intertwiner_matrix(g.dst().endo(), g.src().endo())?;
    let Some(v) = solve_constrained(&lin, &Mat::identity(field, n).vectorize(), &inter)? else {
        return Ok(None);
    };
    NilMorphism::new(g.dst().clone(), g.src().clone(), Mat::unvectorize(field, m, n, &v)).map(Some)
}

/// A retraction of the double embedding of `x` would be `(1, z)` with
/// `xz − zx = 1`. Traces rule that out whenever `dim X ≠ 0` in `K`.
pub fn trace_obstruction(x: &NilObject) -> bool {
    let n = x.dim() as u64;
    match x.field().characteristic() {
        0 => n != 0,
        p => !n.is_multiple_of(p),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    /// `dim Hom((K^m, 1), (Y, y))`
    pub into_y: usize,
    /// `dim Hom((Y, y), (K^m, 1))`
    pub from_y: usize,
}

impl VanishingReport {
    pub fn vanishes(&self) -> bool {
        self.into_y == 0 && self.from_y == 0
    }
}

/// Intertwiner spaces between `(K^m, 1)` and `(Y, y)` in both directions.
pub fn hom_vanishing_check(y: &NilObject, m: usize) -> VanishingReport {
    let id = Mat::identity(y.field(), m);
    let dim = |src: &Mat, dst: &Mat| intertwiner_solutions(src, dst).expect("same field").len();
    VanishingReport { into_y: dim(&id, y.endo()), from_y: dim(y.endo(), &id) }
}

/// Class in the Grothendieck group `Z`: the multiplicity of `(K, 0)` in a
/// composition series, which is the dimension.
pub fn g_class(x: &NilObject) -> i64 {
    x.dim() as i64
}

/// Checks `[Y] = [X] + [Z]` for a short exact sequence `X →f Y →g Z`.
pub fn ses_additivity_check(f: &NilMorphism, g: &NilMorphism) -> Result<bool> {
    if f.mat().rank() != f.src().dim() {
        return Err(NilError::NotExact("first map is not monic".into()));
    }
    if g.mat().rank() != g.dst().dim() {
        return Err(NilError::NotExact("second map is not epic".into()));
    }
    if !is_exact_pair(f, g)? {
        return Err(NilError::NotExact("image differs from kernel".into()));
    }
    Ok(g_class(f.dst()) == g_class(f.src()) + g_class(g.dst()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCandidate {
    pub jordan_type: JordanType,
    pub object: NilObject,
    pub simple: bool,
    /// A proper nonzero subobject, for every non-simple candidate.
    pub witness: Option<NilMorphism>,
}

/// `ker x` when `x ≠ 0`, otherwise the first summand.
fn proper_subobject(a: &NilObject) -> Option<NilMorphism> {
    if a.dim() < 2 {
        return None;
    }
    if !a.endo().is_zero() {
        return Some(kernel(&NilMorphism::new(a.clone(), a.clone(), a.endo().clone()).expect("x commutes with x")).mono);
    }
    decompose(a).into_iter().next().map(|s| s.injection)
}

/// Whether `m` is a mono with `0 < dim src < dim dst`.
pub fn is_proper_subobject(m: &NilMorphism) -> bool {
    let n = m.src().dim();
    n > 0 && n < m.dst().dim() && m.mat().rank() == n
}

/// Every Jordan type of dimension `1..=max_dim`, each tested for simplicity.
pub fn enumerate_candidates(field: Field, max_dim: usize) -> Vec<SimpleCandidate> {
    (1..=max_dim)
        .flat_map(JordanType::partitions)
        .map(|t| {
            let object = NilObject::from_jordan_type(field, &t);
            let simple = is_simple(&object);
            let witness = if simple { None } else { proper_subobject(&object) };
            SimpleCandidate { jordan_type: t, object, simple, witness }
        })
        .collect()
}

pub fn enumerate_simples(field: Field, max_dim: usize) -> Vec<NilObject> {
    enumerate_candidates(field, max_dim).into_iter().filter(|c| c.simple).map(|c| c.object).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    NoProjInj,
    Vanishing,
    Simples,
    Grothendieck,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::NoProjInj => "noprojinj",
            Suite::Vanishing => "vanishing",
            Suite::Simples => "simples",
            Suite::Grothendieck => "grothendieck",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = NilError;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "noprojinj" => Ok(Suite::NoProjInj),
            "vanishing" => Ok(Suite::Vanishing),
            "simples" => Ok(Suite::Simples),
            "grothendieck" => Ok(Suite::Grothendieck),
            other => Err(NilError::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    pub reason: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub field: String,
    pub max_dim: usize,
    pub seed: u64,
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub(crate) struct Tally {
    pub(crate) cases: usize,
    pub(crate) failures: Vec<CaseFailure>,
}

impl Tally {
    pub(crate) fn new() -> Tally {
        Tally { cases: 0, failures: Vec::new() }
    }

    pub(crate) fn record(&mut self, outcome: std::result::Result<(), (String, Value)>) {
        if let Err((reason, witness)) = outcome {
            self.failures.push(CaseFailure { case: self.cases, reason, witness });
        }
        self.cases += 1;
    }
}

impl Tally {
    pub(crate) fn finish(self, suite: &str, field: Field, max_dim: usize, seed: u64) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            field: field.to_string(),
            max_dim,
            seed,
            passes: self.cases - self.failures.len(),
            cases: self.cases,
            failures: self.failures,
        }
    }
}

pub(crate) fn obj_json(a: &NilObject) -> Value {
    serde_json::to_value(ObjectDoc::encode(a)).expect("serializable")
}

pub(crate) fn mor_json(f: &NilMorphism) -> Value {
    serde_json::to_value(MorphismDoc::encode(f)).expect("serializable")
}

pub(crate) fn mat_json(m: &Mat) -> Value {
    serde_json::to_value(MatDoc::encode(m)).expect("serializable")
}

fn noprojinj_case(x: &NilObject) -> std::result::Result<(), (String, Value)> {
    let err = |e: NilError| (e.to_string(), json!({"object": obj_json(x)}));
    let (f, _) = double_embedding(x).map_err(err)?;
    if kernel(&f).object.dim() != 0 {
        return Err(("double embedding is not monic".into(), json!({"mono": mor_json(&f)})));
    }
    if let Some(r) = has_retraction(&f).map_err(err)? {
        return Err(("double embedding splits".into(), json!({"mono": mor_json(&f), "retraction": mor_json(&r)})));
    }
    let (g, _) = double_projection(x).map_err(err)?;
    if let Some(s) = has_section(&g).map_err(err)? {
        return Err(("double projection splits".into(), json!({"epi": mor_json(&g), "section": mor_json(&s)})));
    }
    Ok(())
}

/// Runs one suite. Cases are generated in a fixed order from `seed`, so the
/// report is a pure function of the arguments.
pub fn run_suite(suite: Suite, field: Field, max_dim: usize, seed: u64) -> SuiteReport {
    let mut rng = ProbeRng::new(seed);
    let mut tally = Tally::new();
    match suite {
        Suite::NoProjInj => {
            for t in (1..=max_dim).flat_map(JordanType::partitions) {
                let x = NilObject::from_jordan_type(field, &t);
                tally.record(noprojinj_case(&x));
            }
        }
        Suite::Vanishing => {
            for t in (1..=max_dim).flat_map(JordanType::partitions) {
                let c = rng.invertible(field, t.size());
                let (y, _) = NilObject::from_jordan_type(field, &t).conjugate(&c).expect("invertible");
                for m in 1..=3 {
                    let rep = hom_vanishing_check(&y, m);
                    tally.record(if rep.vanishes() {
                        Ok(())
                    } else {
                        Err(("nonzero intertwiner".into(), json!({"object": obj_json(&y), "m": m, "dims": rep})))
                    });
                }
            }
        }
        Suite::Simples => {
            let candidates = enumerate_candidates(field, max_dim.max(1));
            for c in &candidates {
                let ok = match (&c.witness, c.simple) {
                    (None, true) => c.object == NilObject::plain(field, 1),
                    (Some(w), false) => is_proper_subobject(w),
                    _ => false,
                };
                tally.record(if ok {
                    Ok(())
                } else {
                    Err(("candidate lacks a valid classification".into(), json!({"object": obj_json(&c.object)})))
                });
            }
        }
        Suite::Grothendieck => {
            for _ in 0..30 {
                let ext = rng.extension(field, max_dim.max(2));
                let witness = json!({
                    "sub": obj_json(&ext.sub),
                    "mid": mat_json(&ext.mid),
                    "quot": obj_json(&ext.quot),
                    "f": mat_json(&ext.f),
                    "g": mat_json(&ext.g),
                });
                let outcome = ses_of(&ext).and_then(|(f, g)| {
                    let c = rng.invertible(field, f.dst().dim());
                    let (conj, _) = f.dst().conjugate(&c)?;
                    Ok(ses_additivity_check(&f, &g)? && g_class(&conj) == g_class(f.dst()))
                });
                tally.record(match outcome {
                    Ok(true) => Ok(()),
                    Ok(false) => Err(("class is not additive".into(), witness)),
                    Err(e) => Err((e.to_string(), witness)),
                });
            }
        }
    }
    tally.finish(&suite.to_string(), field, max_dim, seed)
}

/// The two maps of an extension whose middle is nilpotent.
pub fn ses_of(ext: &crate::abelian::EndExtension) -> Result<(NilMorphism, NilMorphism)> {
    ext.validate()?;
    let mid = ext.middle_object()?;
    let f = NilMorphism::new(ext.sub.clone(), mid.clone(), ext.f.clone())?;
    let g = NilMorphism::new(mid, ext.quot.clone(), ext.g.clone())?;
    Ok((f, g))
}
