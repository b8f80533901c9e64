//! Command-line front end. `run` parses arguments, dispatches, and returns
//! the exit code together with what should go to stdout and stderr.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 undetermined
//! cone verdict (`tits-cone`, `causal`).

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gcm::{self, GeneralizedCartanMatrix};
use crate::geometry::{self, CausalRelation, ConeVerdict, TitsConeQuery, DEFAULT_CAP};
use crate::liegroup::{self, Mat2};
use crate::linalg::{rational_from_json, Rational};
use crate::refspace::{self, Axiom, SymmetricGroup};
use crate::weylrep::{self, WeylWord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kmss", version, about = "Kac-Moody root data, Weyl group representations, Tits cones and reflection-space checks")]
pub struct Cli {
    /// Emit a JSON run report instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct MatrixInput {
    /// Generalized Cartan matrix as JSON, e.g. '[[2,-1],[-1,2]]'.
    #[arg(long, conflicts_with_all = ["file", "family"])]
    pub matrix: Option<String>,
    /// JSON file holding either a bare matrix or {"A": matrix}.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
    /// Named matrix: A<n>, E<n>, AE<n> or Atilde<m>.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spherical / affine / indefinite type, rank and corank.
    Classify(MatrixInput),
    /// Dynkin diagram as JSON or Graphviz DOT.
    Dynkin {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        dot: bool,
    },
    /// Coxeter matrix.
    Coxeter(MatrixInput),
    /// Symmetrization, invariant form and root basis checks.
    Symmetrize(MatrixInput),
    /// Positive real roots up to a height bound.
    Roots {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long, default_value_t = 5)]
        height: i64,
    },
    /// Matrix of a Weyl group word on the coroot space.
    Weyl {
        #[command(flatten)]
        input: MatrixInput,
        /// 1-based word, e.g. '[1,2,1]'.
        #[arg(long)]
        word: String,
        /// Act on the root space instead.
        #[arg(long)]
        dual: bool,
        /// Second word to compare with.
        #[arg(long)]
        equals: Option<String>,
    },
    /// Center, quotient coordinates and the reduced representation.
    Reduce {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        word: Option<String>,
    },
    /// Tits cone membership by reflection descent.
    TitsCone {
        #[command(flatten)]
        input: MatrixInput,
        /// Point in coroot coordinates (or reduced with --reduced).
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        reduced: bool,
        /// Step cap; defaults to $KMSS_CAP or 10000.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Causal order of two points of the quotient (reduced coordinates).
    Causal {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Enumerated roots vanishing at a point.
    Singular {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 5)]
        height: i64,
    },
    /// Whether every vertex star is of spherical type.
    StarSpherical(MatrixInput),
    /// Dynkin (or Coxeter) diagram automorphisms.
    Automorphisms {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        coxeter: bool,
    },
    /// Linear realization of (word, diagram automorphism, sign) on the quotient.
    Realize {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long, default_value = "[]")]
        word: String,
        /// 1-based images of the vertices; identity by default.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
        #[arg(long, default_value_t = 10)]
        height: i64,
    },
    /// Reflection space axioms RS1-RS4 on a model.
    CheckAxioms {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dimension of the Euclidean model.
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// One-parameter transvection groups along a geodesic.
    Translation {
        #[arg(long, value_enum)]
        model: GeodesicModel,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Weak flat axioms on a candidate subset.
    Flats {
        #[arg(long, value_enum)]
        subset: FlatKind,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The non-diagonalizable twist image in SL_{n+1}(R[t,t^-1]).
    DemoHole {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Rank-one convexity sweep of the Iwasawa projection.
    Kostant {
        #[arg(long, default_value_t = 360)]
        samples: usize,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
    },
    /// KAK and Iwasawa decompositions of an SL_2(R) element.
    Kak {
        /// Matrix as JSON, e.g. '[[2,1],[1,1]]'.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModelKind {
    Euclidean,
    Sl2Group,
    S3Involution,
    Hyperbolic,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GeodesicModel {
    Euclidean,
    Hyperbolic,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FlatKind {
    Line,
    Integers,
    Diagonal,
}

#[derive(Serialize, Debug)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_hash: String,
    pub results: Value,
    pub warnings: Vec<String>,
    pub elapsed_ms: u128,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    results: Value,
    human: String,
    warnings: Vec<String>,
    code: i32,
}

impl Output {
    fn new(results: Value, human: String) -> Self {
        Output { results, human, warnings: Vec::new(), code: EXIT_OK }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize to JSON")
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    match parse_json(text, "point")? {
        Value::Array(items) => items.iter().map(rational_from_json).collect(),
        other => Err(Error::Parse(format!("expected a JSON array, got {other}"))),
    }
}

fn parse_word(text: &str) -> Result<WeylWord> {
    let letters: Vec<usize> = serde_json::from_str(text).map_err(|e| Error::Parse(format!("word: {e}")))?;
    WeylWord::from_one_based(&letters)
}

fn parse_family(name: &str) -> Result<GeneralizedCartanMatrix> {
    let bad = || Error::Parse(format!("unknown family {name:?}; use A<n>, E<n>, AE<n> or Atilde<m>"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(m) = name.strip_prefix("Atilde") {
        let m = num(m)?;
        return if m >= 1 { Ok(gcm::type_affine_a(m)) } else { Err(bad()) };
    }
    if let Some(n) = name.strip_prefix("AE") {
        let n = num(n)?;
        return if n >= 3 { Ok(gcm::type_ae(n)) } else { Err(bad()) };
    }
    if let Some(n) = name.strip_prefix('E') {
        let n = num(n)?;
        return if n >= 4 { Ok(gcm::type_e(n)) } else { Err(bad()) };
    }
    if let Some(n) = name.strip_prefix('A') {
        let n = num(n)?;
        return if n >= 1 { Ok(gcm::type_a(n)) } else { Err(bad()) };
    }
    Err(bad())
}

fn load_matrix(input: &MatrixInput) -> Result<GeneralizedCartanMatrix> {
    if let Some(text) = &input.matrix {
        return GeneralizedCartanMatrix::from_json(text);
    }
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return GeneralizedCartanMatrix::from_json(&text);
    }
    if let Some(name) = &input.family {
        return parse_family(name);
    }
    Err(Error::Parse("one of --matrix, --file or --family is required".into()))
}

fn resolve_cap(cap: Option<usize>, warnings: &mut Vec<String>) -> usize {
    if let Some(c) = cap {
        return c;
    }
    match std::env::var("KMSS_CAP") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(c) => c,
            Err(_) => {
                warnings.push(format!("ignoring unparsable KMSS_CAP={v:?}; using {DEFAULT_CAP}"));
                DEFAULT_CAP
            }
        },
        Err(_) => DEFAULT_CAP,
    }
}

fn rows_text<T: std::fmt::Display>(rows: &[Vec<T>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| format!("{x:>4}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn qmatrix_text(m: &crate::linalg::QMatrix) -> String {
    rows_text(&m.to_strings())
}

fn report_text(r: &refspace::Report) -> String {
    let mut s = format!("model: {} (samples {}, seed {})\n", r.model, r.samples, r.seed);
    for c in &r.checks {
        let status = match c.status {
            refspace::Status::Proved => "proved",
            refspace::Status::Passed => "passed",
            refspace::Status::Failed => "FAILED",
        };
        s.push_str(&format!("{:<30} {:<7} checked {}", c.name, status, c.checked));
        if let Some(w) = &c.witness {
            s.push_str(&format!("  witness {w}"));
        }
        s.push('\n');
    }
    s
}

fn verdict_text(v: &ConeVerdict) -> String {
    match v {
        ConeVerdict::InCone { witness, interior, open, steps } => {
            format!("in_cone witness {:?} interior {interior} open {open} steps {steps}", witness)
        }
        ConeVerdict::InNegativeCone { witness, interior, open, steps } => {
            format!("in_negative_cone witness {:?} interior {interior} open {open} steps {steps}", witness)
        }
        ConeVerdict::Undetermined { steps } => format!("undetermined after {steps} steps"),
    }
}

fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Classify(input) => {
            let a = load_matrix(input)?;
            let c = gcm::classify(&a)?;
            Ok(Output::new(to_value(&c), format!("type: {}\nrank: {}\ncorank: {}", c.kind, c.rank, c.corank)))
        }
        Command::Dynkin { input, dot } => {
            let a = load_matrix(input)?;
            let d = gcm::dynkin_diagram(&a);
            let text = gcm::dynkin_dot(&a);
            let mut results = to_value(&d);
            if *dot {
                results = json!({ "dot": text });
            }
            Ok(Output::new(results, text.trim_end().to_string()))
        }
        Command::Coxeter(input) => {
            let a = load_matrix(input)?;
            let m = gcm::coxeter_matrix(&a);
            let n = a.n();
            let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).to_string()).collect()).collect();
            Ok(Output::new(to_value(&m), rows_text(&rows)))
        }
        Command::Symmetrize(input) => {
            let a = load_matrix(input)?;
            let sym = gcm::symmetrize(&a)?;
            let form = geometry::invariant_form(&a, &sym)?;
            let mut out_warnings = Vec::new();
            let basis = match geometry::verify_root_basis(&a, &sym) {
                Ok(r) => {
                    if let Some(reason) = &r.pushforward.skipped_reason {
                        out_warnings.push(format!("quotient check skipped: {reason}"));
                    }
                    to_value(&r)
                }
                Err(e) => json!({ "error": e.to_string() }),
            };
            let human = format!(
                "epsilon: {:?}\nB:\n{}\ninvariant form on coroots:\n{}",
                sym.epsilon,
                qmatrix_text(&sym.b),
                qmatrix_text(&form.gram_coroots)
            );
            let mut out = Output::new(
                json!({ "epsilon": sym.epsilon, "b": sym.b, "gram_coroots": form.gram_coroots, "root_basis": basis }),
                human,
            );
            out.warnings = out_warnings;
            Ok(out)
        }
        Command::Roots { input, height } => {
            let a = load_matrix(input)?;
            let roots = weylrep::enumerate_real_roots(&a, *height);
            let human = roots
                .iter()
                .map(|r| format!("{:?}  height {}  = {:?} . alpha_{}", r.coords, r.height, r.witness, r.base + 1))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(json!({ "count": roots.len(), "roots": roots }), format!("{} roots\n{human}", roots.len())))
        }
        Command::Weyl { input, word, dual, equals } => {
            let a = load_matrix(input)?;
            let w = parse_word(word)?;
            let m = if *dual { weylrep::dual_word_to_matrix(&a, &w)? } else { weylrep::word_to_matrix(&a, &w)? };
            let mut results = json!({ "word": w, "matrix": m, "identity": m.is_identity() });
            let mut human = rows_text(&m.to_rows());
            if let Some(other) = equals {
                let w2 = parse_word(other)?;
                let eq = weylrep::words_equal(&a, &w, &w2)?;
                results["equals"] = json!(eq);
                human.push_str(&format!("\nequal to {:?}: {eq}", w2));
            }
            Ok(Output::new(results, human))
        }
        Command::Reduce { input, word } => {
            let a = load_matrix(input)?;
            let center = weylrep::center_basis(&a);
            let red = weylrep::reduced_space(&a);
            let center_s: Vec<Vec<String>> =
                center.iter().map(|v| v.iter().map(crate::linalg::fmt_rational).collect()).collect();
            let mut results = json!({
                "center": center_s,
                "l": red.l,
                "projection": red.projection,
                "section": red.section,
            });
            let mut human = format!("center: {center_s:?}\nquotient dimension: {}\nprojection:\n{}", red.l, qmatrix_text(&red.projection));
            if let Some(wt) = word {
                let w = parse_word(wt)?;
                let m = red.restrict(&weylrep::word_to_matrix(&a, &w)?.to_qmatrix());
                human.push_str(&format!("\nreduced matrix of {:?}:\n{}", w, qmatrix_text(&m)));
                results["word"] = to_value(&w);
                results["reduced_matrix"] = to_value(&m);
            }
            Ok(Output::new(results, human))
        }
        Command::TitsCone { input, point, reduced, cap } => {
            let a = load_matrix(input)?;
            let mut warnings = Vec::new();
            let cap = resolve_cap(*cap, &mut warnings);
            let p = parse_vector(point)?;
            let v = if *reduced {
                geometry::tits_cone_membership_reduced(&a, &weylrep::reduced_space(&a), &p, cap)?
            } else {
                geometry::tits_cone_membership(&a, &TitsConeQuery { point: p, max_steps: cap })?
            };
            let mut out = Output::new(to_value(&v), verdict_text(&v));
            if matches!(v, ConeVerdict::Undetermined { .. }) {
                out.code = EXIT_UNDETERMINED;
            }
            out.warnings = warnings;
            Ok(out)
        }
        Command::Causal { input, x, y, cap } => {
            let a = load_matrix(input)?;
            let mut warnings = Vec::new();
            let cap = resolve_cap(*cap, &mut warnings);
            let rel = geometry::causal_flat_order(&a, &parse_vector(x)?, &parse_vector(y)?, cap)?;
            let mut out = Output::new(json!({ "relation": rel }), to_value(&rel).as_str().unwrap_or("").to_string());
            if rel == CausalRelation::Undetermined {
                out.code = EXIT_UNDETERMINED;
            }
            out.warnings = warnings;
            Ok(out)
        }
        Command::Singular { input, point, height } => {
            let a = load_matrix(input)?;
            let roots = geometry::singular_roots_at(&a, &parse_vector(point)?, *height)?;
            let human = roots.iter().map(|r| format!("{:?}", r.coords)).collect::<Vec<_>>().join("\n");
            Ok(Output::new(json!({ "count": roots.len(), "roots": roots }), format!("{} roots\n{human}", roots.len())))
        }
        Command::StarSpherical(input) => {
            let a = load_matrix(input)?;
            let stars: Vec<Value> = (0..a.n())
                .map(|v| {
                    let s = a.star(v);
                    json!({
                        "vertex": v + 1,
                        "star": s.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "spherical": a.principal(&s).is_spherical_type(),
                    })
                })
                .collect();
            let all = a.is_star_spherical();
            let human = format!("star-spherical: {all}");
            Ok(Output::new(json!({ "star_spherical": all, "stars": stars }), human))
        }
        Command::Automorphisms { input, coxeter } => {
            let a = load_matrix(input)?;
            let perms =
                if *coxeter { gcm::coxeter_diagram_automorphisms(&a) } else { gcm::diagram_automorphisms(&a) };
            let one_based: Vec<Vec<usize>> = perms.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect();
            let human = format!(
                "{} automorphisms\n{}",
                one_based.len(),
                one_based.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join("\n")
            );
            Ok(Output::new(json!({ "count": one_based.len(), "automorphisms": one_based }), human))
        }
        Command::Realize { input, word, perm, sign, height } => {
            let a = load_matrix(input)?;
            let w = parse_word(word)?;
            let sigma: Vec<usize> = match perm {
                Some(text) => {
                    let p: Vec<usize> = serde_json::from_str(text).map_err(|e| Error::Parse(format!("perm: {e}")))?;
                    if p.iter().any(|&i| i == 0 || i > a.n()) {
                        return Err(Error::NotADiagramAutomorphism);
                    }
                    p.iter().map(|i| i - 1).collect()
                }
                None => (0..a.n()).collect(),
            };
            let sym = gcm::symmetrize(&a)?;
            let r = geometry::canonical_linear_realization(&a, &sym, &w, &sigma, *sign, *height)?;
            let human = format!(
                "matrix:\n{}\npreserves form: {}\nmaps hyperplanes: {}\npermutes enumerated hyperplanes: {}\nchamber image: {:?}",
                qmatrix_text(&r.matrix),
                r.preserves_form,
                r.maps_hyperplanes,
                r.permutes_enumerated,
                r.chamber_image
            );
            Ok(Output::new(to_value(&r), human))
        }
        Command::CheckAxioms { model, samples, seed, dim } => {
            let r = match model {
                ModelKind::Euclidean => refspace::check_axioms(&refspace::euclidean_model(*dim), *samples, *seed, &Axiom::ALL),
                ModelKind::Sl2Group => {
                    refspace::check_axioms(&refspace::group_model(refspace::Sl2Group::default()), *samples, *seed, &Axiom::ALL)
                }
                ModelKind::S3Involution => {
                    let s3 = SymmetricGroup { n: 3 };
                    let m = refspace::involution_model(s3.clone(), s3.transpositions())?;
                    refspace::check_axioms(&m, *samples, *seed, &Axiom::ALL)
                }
                ModelKind::Hyperbolic => {
                    refspace::check_axioms(&refspace::HyperbolicModel::default(), *samples, *seed, &Axiom::ALL)
                }
            };
            Ok(Output::new(to_value(&r), report_text(&r)))
        }
        Command::Translation { model, samples, seed } => {
            let r = match model {
                GeodesicModel::Euclidean => {
                    let m = refspace::euclidean_model(2);
                    let dir = [crate::linalg::q(1), crate::linalg::q(-2)];
                    let phi = move |t: &Rational| dir.iter().map(|d| d * t).collect::<Vec<_>>();
                    refspace::translation_group_checks(&m, &phi, *samples, *seed)?
                }
                GeodesicModel::Hyperbolic => refspace::translation_group_checks(
                    &refspace::HyperbolicModel::default(),
                    &refspace::HyperbolicModel::diagonal_geodesic,
                    *samples,
                    *seed,
                )?,
            };
            Ok(Output::new(to_value(&r), report_text(&r)))
        }
        Command::Flats { subset, samples, seed } => {
            let r = match subset {
                FlatKind::Line => {
                    let q = crate::linalg::q;
                    let line = refspace::AffineLine { base: vec![q(1), q(2)], dir: vec![q(3), q(-1)] };
                    refspace::weak_flat_checks(&refspace::euclidean_model(2), &line, *samples, *seed)
                }
                FlatKind::Integers => {
                    refspace::weak_flat_checks(&refspace::euclidean_model(1), &refspace::IntegerLattice, *samples, *seed)
                }
                FlatKind::Diagonal => refspace::weak_flat_checks(
                    &refspace::group_model(refspace::Sl2Group::default()),
                    &refspace::PositiveDiagonal::default(),
                    *samples,
                    *seed,
                ),
            };
            Ok(Output::new(to_value(&r), report_text(&r)))
        }
        Command::DemoHole { n } => {
            let h = liegroup::example_hole(*n)?;
            let verdict = liegroup::diagonalizable_in_affine(&h.v)?;
            let obstruction = liegroup::midpoint_obstruction(&h.v)?;
            let splits = liegroup::quadratic_splits_over_laurent(&h.trace_coefficient);
            let v_text: Vec<Vec<String>> =
                h.v.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
            let human = format!(
                "v:\n{}\ncharacteristic polynomial: {}\nmatches (x^2 - ({})x + 1)(x - 1)^{}: {}\nquadratic splits: {}\ndiagonalizable: {}\nmidpoint of e and v exists: {}\n{}",
                v_text.iter().map(|r| r.join(" | ")).collect::<Vec<_>>().join("\n"),
                h.charpoly,
                h.trace_coefficient,
                n - 1,
                h.charpoly_matches,
                splits,
                match &verdict {
                    liegroup::Diagonalizability::Yes { .. } => "yes",
                    liegroup::Diagonalizability::No { .. } => "no",
                },
                obstruction.midpoint_exists,
                obstruction.argument
            );
            Ok(Output::new(
                json!({
                    "n": n,
                    "v": h.v,
                    "v_text": v_text,
                    "charpoly": h.charpoly,
                    "charpoly_text": h.charpoly.to_string(),
                    "charpoly_matches": h.charpoly_matches,
                    "block_matches": h.block_matches,
                    "det_is_one": h.det_is_one,
                    "quadratic_splits": splits,
                    "diagonalizable": verdict,
                    "midpoint_obstruction": obstruction,
                }),
                human,
            ))
        }
        Command::Kostant { samples, s } => {
            if !(*s > 0.0) || *samples == 0 {
                return Err(Error::Parse("need --s > 0 and --samples >= 1".into()));
            }
            let values: Vec<f64> = (0..*samples)
                .map(|k| liegroup::kostant_rank_one(*s, std::f64::consts::TAU * k as f64 / *samples as f64))
                .collect();
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let holds = values.iter().all(|v| v.abs() <= s + 1e-10);
            let human = format!("s = {s}, {samples} angles: log a' in [{min}, {max}], bound |log a'| <= s holds: {holds}");
            Ok(Output::new(json!({ "s": s, "samples": samples, "min": min, "max": max, "bound_holds": holds }), human))
        }
        Command::Kak { g } => {
            let rows: [[f64; 2]; 2] = serde_json::from_str(g).map_err(|e| Error::Parse(format!("g: {e}")))?;
            let g = Mat2::sl2(rows)?;
            let k = liegroup::kak(&g)?;
            let i = liegroup::iwasawa(&g)?;
            let kak_err = g.max_diff(&k.k1.mul(&k.a).mul(&k.k2));
            let iw_err = g.max_diff(&i.u.mul(&i.a).mul(&i.k));
            let human = format!(
                "k1 = {:?}\na  = {:?}\nk2 = {:?}\nsigma = {}\nreconstruction error {kak_err:e}\niwasawa u = {:?}, a = {:?}, k = {:?}\nreconstruction error {iw_err:e}",
                k.k1.0, k.a.0, k.k2.0, k.sigma, i.u.0, i.a.0, i.k.0
            );
            Ok(Output::new(
                json!({ "kak": k, "kak_error": kak_err, "iwasawa": i, "iwasawa_error": iw_err }),
                human,
            ))
        }
    }
}

fn inputs_hash(args: &[String]) -> String {
    let mut h = Sha256::new();
    for a in args.iter().skip(1).filter(|a| a.as_str() != "--json") {
        h.update(a.as_bytes());
        h.update([0u8]);
    }
    if let Ok(cap) = std::env::var("KMSS_CAP") {
        h.update(b"KMSS_CAP=");
        h.update(cap.as_bytes());
    }
    format!("{:x}", h.finalize())
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    let command: Vec<String> = args.iter().skip(1).cloned().collect();
    match dispatch(&cli.command) {
        Ok(out) => {
            let stderr = out.warnings.iter().map(|w| format!("warning: {w}\n")).collect::<String>();
            let stdout = if cli.json {
                let report = RunReport {
                    command,
                    inputs_hash: inputs_hash(&args),
                    results: out.results,
                    warnings: out.warnings,
                    elapsed_ms: start.elapsed().as_millis(),
                };
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                out.human + "\n"
            };
            Outcome { code: out.code, stdout, stderr: if cli.json { String::new() } else { stderr } }
        }
        Err(e) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&json!({ "command": command, "error": e.to_string() })).expect("serializes") + "\n"
            } else {
                String::new()
            };
            Outcome { code: EXIT_DOMAIN, stdout, stderr: format!("error: {e}\n") }
        }
    }
}
