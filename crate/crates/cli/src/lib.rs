//! Command-line front end: reads object and morphism documents, dispatches to
//! `nilcat-core`, and renders deterministic JSON or aligned text.
//!
//! Exit codes: 0 on success, 1 when a check finds a failing case (the report
//! carries the witness), 2 on malformed input or validation errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use nilcat_core::abelian::{cokernel, image_factorization, is_exact_pair, kernel};
use nilcat_core::diagnostics::{run_suite, Suite, SuiteReport};
use nilcat_core::functors::{divergence_report, homf_obj, tensor_obj, HomFunctorParam, TensorParam};
use nilcat_core::hom::hom_basis;
use nilcat_core::jordan::{decompose, jordan_basis, jordan_type};
use nilcat_core::json::{declared_field, from_value, parse_value, FieldDoc, MatDoc, MorphismDoc, ObjectDoc, SequenceDoc};
use nilcat_core::probes::{eta_suite, hom_suite, tensor_suite};
use nilcat_core::{Field, Mat, NilError, NilObject};

const SCHEMAS: &str = "\
Input documents (schemas in docs/):
  matrix    {\"rows\": n, \"cols\": m, \"entries\": [[\"1\", \"-1/2\", ...], ...]}  row-major, exact strings
  object    {\"dim\": n, \"endo\": <matrix>}  or  {\"jordan_type\": [p1, p2, ...]}
  morphism  {\"src\": <object>, \"dst\": <object>, \"mat\": <matrix>}
  sequence  {\"f\": <morphism>, \"g\": <morphism>}
Any document may declare its field at top level: {\"field\": \"Q\"} or {\"field\": \"Fp\", \"p\": 7}.";

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "nilcat", version, about = "Exact computations with nilpotent endomorphisms", after_help = SCHEMAS)]
pub struct RunConfig {
    /// Field of scalars: Q, Fp:7, F7
    #[arg(long, global = true, env = "NILCAT_FIELD")]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointKind {
    Tensor,
    Hom,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Jordan type and an isomorphism onto the canonical form
    Decompose {
        #[arg(long)]
        object: PathBuf,
    },
    /// Dimension (and optionally a basis) of the space of intertwiners
    Hom {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        dst: PathBuf,
        #[arg(long)]
        basis: bool,
    },
    /// Kernel object with its monomorphism
    Kernel {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Cokernel object with its epimorphism
    Cokernel {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Image object with its factorization
    Image {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Whether im f = ker g for a composable pair
    Exact {
        #[arg(long)]
        seq: PathBuf,
    },
    /// The object X ⊗ (B, b) for an invertible b
    Tensor {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The object HOM((A, a), X)
    Homf {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
    /// Seeded bijectivity and naturality probes for a self-adjunction
    Adjoint {
        #[arg(long, value_enum)]
        kind: AdjointKind,
        #[arg(long, default_value_t = 4)]
        probe_dims: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compares dim(X ⊗ K^d) with dim HOM(A, X) over X = J_1, J_2, ...
    Diverge {
        #[arg(long)]
        a: PathBuf,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
    },
    /// Structural check suites
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Unit evaluation eta for the plain functors
    Eta {
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    Noprojinj,
    Vanishing,
    Simples,
    Grothendieck,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Noprojinj => Suite::NoProjInj,
            SuiteArg::Vanishing => Suite::Vanishing,
            SuiteArg::Simples => Suite::Simples,
            SuiteArg::Grothendieck => Suite::Grothendieck,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Engine(NilError),
}

impl From<NilError> for CliError {
    fn from(e: NilError) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Io(m) => ("Io", m.clone()),
            CliError::Engine(e) => (e.kind(), e.to_string()),
        };
        json!({"error": {"kind": kind, "message": message}})
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Loads a document and returns it with any top-level field declaration
/// removed.
fn load(path: &Path) -> CliResult<(Value, Option<Field>)> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut doc = parse_value(&text)?;
    let field = declared_field(&doc)?;
    if let Value::Object(map) = &mut doc {
        map.remove("field");
        map.remove("p");
    }
    Ok((doc, field))
}

/// Collects field declarations from the flag and every input document; all
/// that are present must agree. Defaults to Q.
struct FieldResolver {
    field: Option<Field>,
}

impl FieldResolver {
    fn new(flag: Option<&str>) -> CliResult<FieldResolver> {
        let field = flag.map(str::parse::<Field>).transpose()?;
        Ok(FieldResolver { field })
    }

    fn merge(&mut self, declared: Option<Field>) -> CliResult<()> {
        match (self.field, declared) {
            (Some(a), Some(b)) if a != b => Err(NilError::FieldMismatch(a, b).into()),
            (None, Some(b)) => {
                self.field = Some(b);
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn get(&self) -> Field {
        self.field.unwrap_or(Field::Rationals)
    }
}

fn load_all(flag: Option<&str>, paths: &[&Path]) -> CliResult<(Vec<Value>, Field)> {
    let mut resolver = FieldResolver::new(flag)?;
    let mut docs = Vec::with_capacity(paths.len());
    for path in paths {
        let (doc, declared) = load(path)?;
        resolver.merge(declared)?;
        docs.push(doc);
    }
    Ok((docs, resolver.get()))
}

fn object_of(doc: &Value, field: Field) -> CliResult<NilObject> {
    Ok(from_value::<ObjectDoc>(doc)?.decode(field)?)
}

fn mat(m: &Mat) -> Value {
    serde_json::to_value(MatDoc::encode(m)).expect("serializable")
}

fn obj(a: &NilObject) -> Value {
    serde_json::to_value(ObjectDoc::encode(a)).expect("serializable")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Prefixes the field declaration to a result document.
fn with_field(field: Field, body: Value) -> Value {
    let mut out = match to_value(&FieldDoc::encode(field)) {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Value::Object(out)
}

enum Report {
    Plain(Value),
    Check { passed: bool, body: Value },
    Table { body: Value, text: String },
}

fn suite_report(rep: SuiteReport) -> Report {
    Report::Check { passed: rep.passed(), body: to_value(&rep) }
}

fn dispatch(cfg: &RunConfig) -> CliResult<Report> {
    let flag = cfg.field.as_deref();
    let field_only = || FieldResolver::new(flag).map(|r| r.get());
    match &cfg.command {
        Command::Decompose { object } => {
            let (docs, field) = load_all(flag, &[object])?;
            let a = object_of(&docs[0], field)?;
            let summands: Vec<Value> = decompose(&a)
                .iter()
                .map(|s| json!({"dim": s.object.dim(), "injection": mat(s.injection.mat()), "projection": mat(s.projection.mat())}))
                .collect();
            Ok(Report::Plain(with_field(
                field,
                json!({
                    "jordan_type": jordan_type(&a).parts(),
                    "iso": mat(jordan_basis(&a).mat()),
                    "summands": summands,
                }),
            )))
        }
        Command::Hom { src, dst, basis } => {
            let (docs, field) = load_all(flag, &[src, dst])?;
            let (a, b) = (object_of(&docs[0], field)?, object_of(&docs[1], field)?);
            let hb = hom_basis(&a, &b)?;
            let mut body = json!({"dim": hb.len()});
            if *basis {
                body["basis"] = Value::Array(hb.iter().map(|f| mat(f.mat())).collect());
            }
            Ok(Report::Plain(with_field(field, body)))
        }
        Command::Kernel { morphism } | Command::Cokernel { morphism } | Command::Image { morphism } => {
            let (docs, field) = load_all(flag, &[morphism])?;
            let f = from_value::<MorphismDoc>(&docs[0])?.decode(field)?;
            let body = match &cfg.command {
                Command::Kernel { .. } => {
                    let k = kernel(&f);
                    json!({"object": obj(&k.object), "mono": mat(k.mono.mat())})
                }
                Command::Cokernel { .. } => {
                    let c = cokernel(&f);
                    json!({"object": obj(&c.object), "epi": mat(c.epi.mat())})
                }
                _ => {
                    let im = image_factorization(&f);
                    json!({"object": obj(&im.object), "epi": mat(im.epi.mat()), "mono": mat(im.mono.mat())})
                }
            };
            Ok(Report::Plain(with_field(field, body)))
        }
        Command::Exact { seq } => {
            let (docs, field) = load_all(flag, &[seq])?;
            let s: SequenceDoc = from_value(&docs[0])?;
            let (f, g) = (s.f.decode(field)?, s.g.decode(field)?);
            let exact = is_exact_pair(&f, &g)?;
            let composite_zero = (g.mat() * f.mat()).is_zero();
            Ok(Report::Plain(with_field(
                field,
                json!({
                    "exact": exact,
                    "composite_zero": composite_zero,
                    "image_dim": f.mat().rank(),
                    "kernel_dim": kernel(&g).object.dim(),
                }),
            )))
        }
        Command::Tensor { x, b } => {
            let (docs, field) = load_all(flag, &[x, b])?;
            let x = object_of(&docs[0], field)?;
            let t = TensorParam::new(from_value::<MatDoc>(&docs[1])?.decode(field)?)?;
            let tx = tensor_obj(&x, &t)?;
            Ok(Report::Plain(with_field(field, json!({"object": obj(&tx), "jordan_type": jordan_type(&tx).parts()}))))
        }
        Command::Homf { a, x } => {
            let (docs, field) = load_all(flag, &[a, x])?;
            let h = HomFunctorParam::new(object_of(&docs[0], field)?);
            let hx = homf_obj(&object_of(&docs[1], field)?, &h)?;
            Ok(Report::Plain(with_field(
                field,
                json!({
                    "object": obj(&hx.object),
                    "jordan_type": jordan_type(&hx.object).parts(),
                    "basis": hx.basis.iter().map(|f| mat(f.mat())).collect::<Vec<_>>(),
                }),
            )))
        }
        Command::Adjoint { kind, probe_dims, seed } => {
            let field = field_only()?;
            let dims = (*probe_dims).max(1);
            Ok(suite_report(match kind {
                AdjointKind::Tensor => tensor_suite(field, dims, *seed),
                AdjointKind::Hom => hom_suite(field, dims, *seed),
            }))
        }
        Command::Diverge { a, d, max_dim } => {
            let (docs, field) = load_all(flag, &[a])?;
            let h = HomFunctorParam::new(object_of(&docs[0], field)?);
            let t = TensorParam::identity(field, *d)?;
            let rep = divergence_report(&h, &t, *max_dim)?;
            Ok(Report::Table { text: rep.to_text(), body: with_field(field, to_value(&rep)) })
        }
        Command::Check { suite, max_dim, seed } => Ok(suite_report(run_suite((*suite).into(), field_only()?, *max_dim, *seed))),
        Command::Eta { max_dim, seed } => Ok(suite_report(eta_suite(field_only()?, (*max_dim).max(1), *seed))),
    }
}

fn render(value: &Value, output: Output) -> String {
    match output {
        Output::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")),
        Output::Text => text::render(value),
    }
}

/// Runs one command and returns the exit code with everything meant for
/// standard output.
pub fn run(cfg: &RunConfig) -> Outcome {
    match dispatch(cfg) {
        Ok(Report::Plain(v)) => Outcome { code: 0, stdout: render(&v, cfg.output) },
        Ok(Report::Check { passed, body }) => Outcome { code: if passed { 0 } else { 1 }, stdout: render(&body, cfg.output) },
        Ok(Report::Table { body, text }) => Outcome {
            code: 0,
            stdout: match cfg.output {
                Output::Json => render(&body, Output::Json),
                Output::Text => text,
            },
        },
        Err(e) => Outcome { code: 2, stdout: render(&e.to_json(), Output::Json) },
    }
}

mod text {
    use serde_json::Value;

    fn is_matrix(v: &Value) -> bool {
        v.get("rows").is_some() && v.get("cols").is_some() && v.get("entries").is_some()
    }

    fn matrix_lines(v: &Value, indent: usize) -> Vec<String> {
        let rows: Vec<Vec<String>> = v["entries"]
            .as_array()
            .map(|rs| {
                rs.iter()
                    .map(|r| r.as_array().map(|c| c.iter().map(scalar).collect()).unwrap_or_default())
                    .collect()
            })
            .unwrap_or_default();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        if rows.is_empty() {
            return vec![format!("{:indent$}[{}x{}]", "", v["rows"], v["cols"])];
        }
        rows.iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
                format!("{:indent$}[{}]", "", cells.join(" "))
            })
            .collect()
    }

    fn scalar(v: &Value) -> String {
        v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())
    }

    fn walk(key: &str, v: &Value, indent: usize, out: &mut Vec<String>) {
        let pad = " ".repeat(indent);
        match v {
            _ if is_matrix(v) => {
                out.push(format!("{pad}{key}:"));
                out.extend(matrix_lines(v, indent + 2));
            }
            Value::Object(map) => {
                out.push(format!("{pad}{key}:"));
                for (k, x) in map {
                    walk(k, x, indent + 2, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                out.push(format!("{pad}{key}:"));
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("[{i}]"), x, indent + 2, out);
                }
            }
            _ => out.push(format!("{pad}{key}: {}", scalar(v))),
        }
    }

    pub fn render(v: &Value) -> String {
        let mut out = Vec::new();
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    walk(k, x, 0, &mut out);
                }
            }
            other => out.push(scalar(other)),
        }
        out.join("\n") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_check_command() {
        let cfg = RunConfig::try_parse_from(["nilcat", "check", "--suite", "noprojinj", "--max-dim", "3", "--seed", "7"]).unwrap();
        assert_eq!(cfg.command, Command::Check { suite: SuiteArg::Noprojinj, max_dim: 3, seed: 7 });
        assert_eq!(cfg.output, Output::Json);
    }

    #[test]
    fn rejects_unknown_suite() {
        assert!(RunConfig::try_parse_from(["nilcat", "check", "--suite", "bogus"]).is_err());
    }

    #[test]
    fn field_resolution() {
        let mut r = FieldResolver::new(Some("F7")).unwrap();
        assert!(r.merge(Some(Field::Prime(7))).is_ok());
        assert!(r.merge(Some(Field::Rationals)).is_err());
        let mut r = FieldResolver::new(None).unwrap();
        r.merge(Some(Field::Prime(5))).unwrap();
        assert_eq!(r.get(), Field::Prime(5));
        assert_eq!(FieldResolver::new(None).unwrap().get(), Field::Rationals);
    }

    #[test]
    fn text_renders_matrices() {
        let v = json!({"dim": 2, "iso": {"rows": 2, "cols": 2, "entries": [["1", "0"], ["-1/2", "1"]]}});
        let s = text::render(&v);
        assert!(s.contains("dim: 2"));
        assert!(s.contains("[-1/2    1]"));
    }
}
