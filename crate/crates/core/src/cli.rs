//! Batch command-line front end.
//!
//! Every subcommand parses its inputs, calls one library operation and
//! renders a report, either as `key: value` lines or as a JSON object with
//! a top-level `"schema"`, an `"inputs"` echo of the parsed inputs in
//! canonical form and their SHA-256 `"inputs_digest"`.
//!
//! Exit status: 0 on success (verdicts live in the report), 1 on parse and
//! validation errors, 2 on mathematical rejections such as an invalid
//! character or a Gram matrix that is not positive semidefinite.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::approx::{
    bernstein_approx, density_witness, is_holomorphic_image, seminorm_on_box, wirtinger_dzbar,
    BernsteinApprox, Seminormed, TargetFunction,
};
use crate::error::{Error, Result};
use crate::parser::{
    parse_box, parse_character, parse_morphism, parse_poly, parse_presentation, parse_scalar,
    parse_state,
};
use crate::scalar::{CRational, Scalar};
use crate::spectrum::{
    is_nilpotent, pushforward, radical_vanishing_check, search_characters, CompactBox, GridSampler,
    RadicalVerdict, RationalSampler,
};
use crate::star_poly::{free_star, underlying, Link, Mode, Monomial, Presentation, StarPoly};
use crate::states::{
    make_state, multiplication_operator, norm_squared, truncation_leakage, GnsModel, State,
    StateSpec,
};

pub const SCHEMA: &str = "gelfand-lab/1";

const DEFAULT_GNS_DEGREE: u32 = 6;
const DEFAULT_NILPOTENCY_BOUND: u32 = 16;
const DEFAULT_APPROX_DEGREE: u32 = 16;
const DEFAULT_WITNESS_MAX_DEGREE: u32 = 256;
const DEFAULT_RESOLUTION: usize = 101;
const DEFAULT_STATE_SAMPLES: usize = 500;
const DEFAULT_SAMPLE_DEGREE: u32 = 3;
const DEFAULT_POSITIVITY_TOLERANCE: f64 = 1e-10;

/// One run of the tool.
#[derive(Parser, Debug, Clone)]
#[command(
    name = "gelfand-lab",
    version,
    about = "Presented commutative *-algebras: characters, transforms, approximation and GNS"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Degree bound: GNS truncation, nilpotency search, Bernstein degree,
    /// random test polynomials.
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    /// Grid points per box axis.
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Quadrature order, overriding the one in a density state.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Target error for `approx`, positivity slack for `state-check`.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Parse a presentation and print it in canonical form.
    Parse { file: PathBuf },
    /// Apply the free *-algebra functor.
    Free { file: PathBuf },
    /// Apply the underlying-algebra functor.
    Underlying { file: PathBuf },
    /// Validate a character, or list the valid characters among a finite
    /// candidate grid.
    SpectrumCheck {
        file: PathBuf,
        #[arg(long = "char", required_unless_present = "candidates")]
        character: Option<String>,
        /// Comma-separated scalars tried for every non-adjoint generator.
        #[arg(long, conflicts_with = "character")]
        candidates: Option<String>,
    },
    /// Evaluate the Gel'fand transform of a polynomial at a character.
    Eval {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long = "char")]
        character: String,
    },
    /// Pull a character of the target back along a morphism.
    Pushforward {
        /// Source presentation of the morphism.
        file: PathBuf,
        /// Target presentation of the morphism.
        #[arg(long)]
        target: PathBuf,
        /// Generator images, e.g. `x = y^2 ; z = y + 1`.
        #[arg(long)]
        map: String,
        /// Character of the target presentation.
        #[arg(long = "char")]
        character: String,
        /// Require the morphism to be a *-homomorphism.
        #[arg(long)]
        star: bool,
    },
    /// Decide nilpotency up to the degree bound; optionally sample the
    /// spectrum for a radical witness.
    Nilpotent {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        /// Number of sampled characters.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Bracket the sup-seminorm of a polynomial on a box.
    Seminorm {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long = "box")]
        region: String,
    },
    /// Bernstein approximation of a target function on a box.
    Approx {
        file: PathBuf,
        /// abs-shift[:c], exp, square or const:c.
        #[arg(long, conflicts_with = "table")]
        target: Option<String>,
        /// Whitespace-separated samples on a uniform grid of the box.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long = "box")]
        region: String,
    },
    /// Wirtinger derivative with respect to the adjoint of a free pair.
    Wirtinger {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        /// Free generator naming the pair; defaults to the first one.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Build a state and test positivity on random polynomials.
    StateCheck {
        file: PathBuf,
        /// State literal, or a file holding one.
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = DEFAULT_STATE_SAMPLES)]
        samples: usize,
    },
    /// Truncated GNS construction of a state.
    Gns {
        file: PathBuf,
        /// State literal, or a file holding one.
        #[arg(long)]
        state: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Free { .. } => "free",
            Command::Underlying { .. } => "underlying",
            Command::SpectrumCheck { .. } => "spectrum-check",
            Command::Eval { .. } => "eval",
            Command::Pushforward { .. } => "pushforward",
            Command::Nilpotent { .. } => "nilpotent",
            Command::Seminorm { .. } => "seminorm",
            Command::Approx { .. } => "approx",
            Command::Wirtinger { .. } => "wirtinger",
            Command::StateCheck { .. } => "state-check",
            Command::Gns { .. } => "gns",
        }
    }
}

/// Exit status and rendered report of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Parses command-line arguments (including the program name) and runs.
/// Usage errors exit with status 1.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            Outcome {
                code,
                output: e.render().to_string(),
            }
        }
    }
}

/// Executes the configured subcommand.
pub fn run(config: &RunConfig) -> Outcome {
    let mut ctx = Ctx {
        config,
        inputs: Map::new(),
    };
    ctx.inputs
        .insert("command".into(), json!(config.command.name()));
    let result = ctx.dispatch();
    let (code, body) = match result {
        Ok((code, body)) => (code, body),
        Err(e) => {
            let mut body = Map::new();
            body.insert(
                "error".into(),
                json!({ "kind": e.kind(), "message": e.to_string() }),
            );
            (if e.is_rejection() { 2 } else { 1 }, body)
        }
    };
    Outcome {
        code,
        output: ctx.render(body),
    }
}

struct Ctx<'a> {
    config: &'a RunConfig,
    inputs: Map<String, Value>,
}

type Body = Map<String, Value>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn c64_json(z: Complex64) -> Value {
    if z.im == 0.0 {
        json!(z.re)
    } else {
        json!({ "re": z.re, "im": z.im })
    }
}

fn scalar_json(s: &Scalar) -> Value {
    json!({
        "value": s.to_string(),
        "exact": s.is_exact(),
        "approx": c64_json(s.to_c64()),
    })
}

fn matrix_json(m: &nalgebra::DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| c64_json(m[(i, j)])).collect()))
            .collect(),
    )
}

impl Ctx<'_> {
    fn render(&self, body: Body) -> String {
        let digest = {
            let canonical = serde_json::to_string(&self.inputs).expect("serializable inputs");
            hex::encode(Sha256::digest(canonical.as_bytes()))
        };
        if self.config.json {
            let mut out = Map::new();
            out.insert("schema".into(), json!(SCHEMA));
            out.insert("command".into(), json!(self.config.command.name()));
            out.insert("inputs".into(), Value::Object(self.inputs.clone()));
            out.insert("inputs_digest".into(), json!(digest));
            out.extend(body);
            let mut s = serde_json::to_string_pretty(&Value::Object(out)).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            for (k, v) in body {
                match v {
                    Value::String(text) if text.contains('\n') => {
                        s.push_str(&format!("{k}:\n{text}"));
                        if !text.ends_with('\n') {
                            s.push('\n');
                        }
                    }
                    Value::String(text) => s.push_str(&format!("{k}: {text}\n")),
                    other => s.push_str(&format!("{k}: {other}\n")),
                }
            }
            s.push_str(&format!("inputs_digest: {digest}\n"));
            s
        }
    }

    fn echo(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    fn presentation(&mut self, key: &str, path: &Path) -> Result<Arc<Presentation>> {
        let text = read(path)?;
        let mode = if path.extension().is_some_and(|e| e == "star") {
            Mode::Star
        } else {
            Mode::Algebra
        };
        let pres = Arc::new(parse_presentation(&text, mode)?);
        self.echo(key, pres.to_string());
        Ok(pres)
    }

    fn poly(&mut self, text: &str, pres: &Arc<Presentation>) -> Result<StarPoly> {
        let p = parse_poly(text, pres)?;
        self.echo("poly", p.to_string());
        Ok(p)
    }

    fn region(&mut self, text: &str, pres: &Arc<Presentation>) -> Result<CompactBox> {
        let k = parse_box(text, pres)?;
        let axes: Vec<Value> = (0..k.dim())
            .map(|a| json!([k.axis_name(a), k.axes()[a].lo, k.axes()[a].hi]))
            .collect();
        self.echo("box", axes);
        Ok(k)
    }

    fn state(&mut self, text: &str, pres: &Arc<Presentation>) -> Result<State> {
        let text = if Path::new(text).is_file() {
            read(Path::new(text))?
        } else {
            text.to_string()
        };
        let mut spec = parse_state(&text, pres)?;
        if let (StateSpec::Density { order, .. }, Some(o)) = (&mut spec, self.config.order) {
            *order = o;
        }
        self.echo("state", state_echo(&spec));
        make_state(pres, spec)
    }

    fn resolution(&mut self) -> usize {
        let r = self.config.resolution.unwrap_or(DEFAULT_RESOLUTION);
        self.echo("resolution", r);
        r
    }

    fn dispatch(&mut self) -> Result<(i32, Body)> {
        let cfg = self.config;
        let mut body = Body::new();
        match &cfg.command {
            Command::Parse { file } => {
                let pres = self.presentation("presentation", file)?;
                body.insert("presentation".into(), json!(pres.to_string()));
                body.insert(
                    "mode".into(),
                    json!(match pres.mode() {
                        Mode::Star => "star",
                        Mode::Algebra => "algebra",
                    }),
                );
                body.insert(
                    "generators".into(),
                    json!(pres
                        .generators()
                        .iter()
                        .map(|g| g.display_name())
                        .collect::<Vec<_>>()),
                );
                let rules: Vec<String> = pres
                    .rules()
                    .iter()
                    .map(|r| {
                        format!(
                            "{} -> {}",
                            pres.format_monomial(&r.lead),
                            pres.format_terms(&r.tail)
                        )
                    })
                    .collect();
                body.insert("rules".into(), json!(rules));
            }
            Command::Free { file } => {
                let pres = self.presentation("presentation", file)?;
                let f = free_star(&pres)?;
                body.insert("generators".into(), json!(f.arity()));
                body.insert("presentation".into(), json!(f.to_string()));
            }
            Command::Underlying { file } => {
                let pres = self.presentation("presentation", file)?;
                let u = underlying(&pres)?;
                body.insert("generators".into(), json!(u.arity()));
                body.insert("presentation".into(), json!(u.to_string()));
            }
            Command::SpectrumCheck {
                file,
                character,
                candidates,
            } => {
                let pres = self.presentation("presentation", file)?;
                if let Some(list) = candidates {
                    let values = list
                        .split(',')
                        .map(|w| parse_scalar(w.trim()))
                        .collect::<Result<Vec<CRational>>>()?;
                    self.echo(
                        "candidates",
                        values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    );
                    let found = search_characters(&pres, &values)?;
                    body.insert("count".into(), json!(found.len()));
                    body.insert(
                        "characters".into(),
                        json!(found.iter().map(|p| p.describe()).collect::<Vec<_>>()),
                    );
                    return Ok((0, body));
                }
                let character = character.as_deref().unwrap_or_default();
                self.echo("char", character.trim());
                match parse_character(character, &pres) {
                    Ok(p) => {
                        body.insert("valid".into(), json!(true));
                        body.insert("character".into(), json!(p.describe()));
                    }
                    Err(Error::CharacterRejected(v)) => {
                        body.insert("valid".into(), json!(false));
                        body.insert("violation".into(), json!(v.kind()));
                        body.insert("detail".into(), json!(v.to_string()));
                        return Ok((2, body));
                    }
                    Err(e) => return Err(e),
                }
            }
            Command::Eval {
                file,
                poly,
                character,
            } => {
                let pres = self.presentation("presentation", file)?;
                let a = self.poly(poly, &pres)?;
                let p = parse_character(character, &pres)?;
                self.echo("char", p.describe());
                body.insert("value".into(), scalar_json(&p.eval(&a)?));
            }
            Command::Pushforward {
                file,
                target,
                map,
                character,
                star,
            } => {
                let source = self.presentation("source", file)?;
                let tgt = self.presentation("target", target)?;
                let f = parse_morphism(map, &source, &tgt, *star)?;
                let images: Vec<String> = f.images().iter().map(|p| p.to_string()).collect();
                self.echo("map", images);
                self.echo("star", *star);
                let p = parse_character(character, &tgt)?;
                self.echo("char", p.describe());
                let q = pushforward(&f, &p)?;
                body.insert("character".into(), json!(q.describe()));
                body.insert(
                    "star_hom".into(),
                    json!(f.is_star_hom().map(|c| c.holds).unwrap_or(false)),
                );
            }
            Command::Nilpotent {
                file,
                poly,
                samples,
            } => {
                let pres = self.presentation("presentation", file)?;
                let a = self.poly(poly, &pres)?;
                let bound = cfg.degree.unwrap_or(DEFAULT_NILPOTENCY_BOUND);
                self.echo("degree", bound);
                let n = is_nilpotent(&a, bound)?;
                body.insert("nilpotent".into(), json!(n.is_some()));
                body.insert("exponent".into(), json!(n));
                if *samples > 0 {
                    self.echo("samples", *samples);
                    self.echo("seed", cfg.seed);
                    let verdict = if pres.has_relations() {
                        let s =
                            GridSampler::new(&pres, &GridSampler::default_candidates(), cfg.seed)?;
                        radical_vanishing_check(&a, s, *samples, bound)?
                    } else {
                        let s = RationalSampler::new(&pres, cfg.seed)?;
                        radical_vanishing_check(&a, s, *samples, bound)?
                    };
                    let radical = match verdict {
                        RadicalVerdict::NotInRadical { witness, value } => json!({
                            "in_radical": false,
                            "witness": witness.describe(),
                            "value": value.to_string(),
                        }),
                        RadicalVerdict::ConsistentSampled { samples, .. } => json!({
                            "in_radical": "consistent (sampled)",
                            "samples": samples,
                        }),
                    };
                    body.insert("radical".into(), radical);
                }
            }
            Command::Seminorm { file, poly, region } => {
                let pres = self.presentation("presentation", file)?;
                let a = self.poly(poly, &pres)?;
                let k = self.region(region, &pres)?;
                let r = self.resolution();
                let s = seminorm_on_box(Seminormed::Poly(&a), &k, r)?;
                let rep = serde_json::to_value(s.report()).expect("serializable");
                if let Value::Object(m) = rep {
                    body.extend(m);
                }
            }
            Command::Approx {
                file,
                target,
                table,
                region,
            } => {
                let pres = self.presentation("presentation", file)?;
                let k = self.region(region, &pres)?;
                let f = match (target, table) {
                    (_, Some(path)) => {
                        let values = read(path)?
                            .split_whitespace()
                            .map(|w| {
                                w.parse::<f64>().map_err(|_| {
                                    Error::InvalidArgument(format!("not a number in table: `{w}`"))
                                })
                            })
                            .collect::<Result<Vec<f64>>>()?;
                        let d = k.dim().max(1) as f64;
                        let res = (values.len() as f64).powf(1.0 / d).round() as usize;
                        TargetFunction::tabulated(&k, res, values)?
                    }
                    (Some(name), None) => TargetFunction::from_name(name)?,
                    (None, None) => {
                        return Err(Error::InvalidArgument(
                            "approx needs --target or --table".into(),
                        ))
                    }
                };
                self.echo("target", f.name());
                let r = self.resolution();
                let approx: Option<BernsteinApprox> = match cfg.tolerance {
                    Some(eps) => {
                        let max = cfg.degree.unwrap_or(DEFAULT_WITNESS_MAX_DEGREE);
                        self.echo("tolerance", eps);
                        self.echo("degree", max);
                        density_witness(&f, &k, eps, max, r)?
                    }
                    None => {
                        let n = cfg.degree.unwrap_or(DEFAULT_APPROX_DEGREE);
                        self.echo("degree", n);
                        Some(bernstein_approx(&f, &k, n, r)?)
                    }
                };
                body.insert("found".into(), json!(approx.is_some()));
                if let Some(b) = approx {
                    body.insert("degree".into(), json!(b.degree));
                    body.insert("error".into(), json!(b.error.lower));
                    body.insert("lower".into(), json!(b.error.lower));
                    body.insert("upper".into(), json!(b.error.upper));
                    body.insert("certified".into(), json!(b.error.certified));
                    body.insert("polynomial".into(), json!(b.poly.to_string()));
                }
            }
            Command::Wirtinger { file, poly, pair } => {
                let pres = self.presentation("presentation", file)?;
                let a = self.poly(poly, &pres)?;
                let g = match pair {
                    Some(name) => pres
                        .index_of(name)
                        .ok_or_else(|| Error::UnknownGenerator(name.clone()))?,
                    None => pres
                        .generators()
                        .iter()
                        .position(|g| matches!(g.link, Link::Partner(_)) && !g.adjoint)
                        .ok_or_else(|| {
                            Error::Unsupported("presentation has no free generator pair".into())
                        })?,
                };
                self.echo("pair", pres.generators()[g].display_name());
                body.insert(
                    "derivative".into(),
                    json!(wirtinger_dzbar(&a, g)?.to_string()),
                );
                body.insert("holomorphic".into(), json!(is_holomorphic_image(&a, g)?));
            }
            Command::StateCheck {
                file,
                state,
                samples,
            } => {
                let pres = self.presentation("presentation", file)?;
                let s = self.state(state, &pres)?;
                let degree = cfg.degree.unwrap_or(DEFAULT_SAMPLE_DEGREE);
                let tol = cfg.tolerance.unwrap_or(DEFAULT_POSITIVITY_TOLERANCE);
                self.echo("samples", *samples);
                self.echo("degree", degree);
                self.echo("seed", cfg.seed);
                self.echo("tolerance", tol);
                let check = positivity_check(&s, *samples, degree, cfg.seed, tol)?;
                body.insert("kind".into(), json!(s.kind().name()));
                body.insert("densely_defined".into(), json!(s.densely_defined()));
                body.insert(
                    "support".into(),
                    match s.continuity_certificate() {
                        Some((k, c)) => json!({
                            "box": (0..k.dim())
                                .map(|a| json!([k.axis_name(a), k.axes()[a].lo, k.axes()[a].hi]))
                                .collect::<Vec<_>>(),
                            "constant": c,
                        }),
                        None => Value::Null,
                    },
                );
                body.insert(
                    "expect_one".into(),
                    scalar_json(&s.expect(&StarPoly::one(&pres))?),
                );
                body.insert("positive".into(), json!(check.positive));
                body.insert("cauchy_schwarz".into(), json!(check.cauchy_schwarz));
                body.insert("min_norm_squared".into(), json!(check.min_norm_squared));
                if !(check.positive && check.cauchy_schwarz) {
                    return Ok((2, body));
                }
            }
            Command::Gns { file, state } => {
                let pres = self.presentation("presentation", file)?;
                let s = self.state(state, &pres)?;
                let d = cfg.degree.unwrap_or(DEFAULT_GNS_DEGREE);
                self.echo("degree", d);
                let model = GnsModel::build(&s, d)?;
                gns_report(&model, &mut body)?;
            }
        }
        Ok((0, body))
    }
}

fn state_echo(spec: &StateSpec) -> Value {
    match spec {
        StateSpec::Atomic { atoms, rescale } => json!({
            "kind": "atomic",
            "normalize": rescale,
            "atoms": atoms
                .iter()
                .map(|(p, w)| json!([p.describe(), w.to_string()]))
                .collect::<Vec<_>>(),
        }),
        StateSpec::Density {
            density,
            region,
            order,
        } => json!({
            "kind": "density",
            "density": density.name(),
            "box": region.axes().iter().map(|a| json!([a.lo, a.hi])).collect::<Vec<_>>(),
            "order": order,
        }),
        StateSpec::Gaussian => json!({ "kind": "gaussian" }),
    }
}

struct PositivityCheck {
    positive: bool,
    cauchy_schwarz: bool,
    min_norm_squared: f64,
}

/// Random polynomial with Gaussian-integer coefficients in `[-3, 3]` on a
/// random subset of the irreducible monomials of degree `≤ degree`.
fn random_poly(pres: &Arc<Presentation>, degree: u32, rng: &mut ChaCha8Rng) -> Result<StarPoly> {
    let terms: Vec<(Monomial, CRational)> = Monomial::up_to_degree(pres.arity(), degree)
        .into_iter()
        .filter(|m| pres.is_irreducible(m))
        .filter_map(|m| {
            if rng.random_bool(0.5) {
                let c = CRational::gaussian(rng.random_range(-3..=3), rng.random_range(-3..=3));
                Some((m, c))
            } else {
                None
            }
        })
        .collect();
    StarPoly::from_terms(pres, terms)
}

fn positivity_check(
    state: &State,
    samples: usize,
    degree: u32,
    seed: u64,
    tol: f64,
) -> Result<PositivityCheck> {
    let pres = state.presentation();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positive = true;
    let mut cauchy_schwarz = true;
    let mut min = f64::INFINITY;
    let mut prev: Option<(StarPoly, Scalar)> = None;
    for _ in 0..samples {
        let a = random_poly(pres, degree, &mut rng)?;
        let aa = norm_squared(state, &a)?;
        let ok = match &aa {
            Scalar::Exact(q) => q.im.is_zero() && !q.re.is_negative(),
            Scalar::Float(z) => z.re >= -tol,
        };
        positive &= ok;
        min = min.min(aa.to_c64().re);
        if let Some((b, bb)) = prev.take() {
            let ab = state.expect(&a.involute()?.mul(&b)?)?;
            cauchy_schwarz &= match (&ab, &aa, &bb) {
                (Scalar::Exact(ab), Scalar::Exact(aa), Scalar::Exact(bb)) => {
                    ab.norm_sqr() <= &aa.re * &bb.re
                }
                _ => {
                    let lhs = ab.to_c64().norm_sqr();
                    let rhs = aa.to_c64().re * bb.to_c64().re;
                    lhs <= rhs + tol * (1.0 + rhs.abs())
                }
            };
        } else {
            prev = Some((a, aa));
        }
    }
    Ok(PositivityCheck {
        positive,
        cauchy_schwarz,
        min_norm_squared: if samples == 0 { 0.0 } else { min },
    })
}

fn gns_report(model: &GnsModel, body: &mut Body) -> Result<()> {
    let pres = model.presentation();
    body.insert("degree".into(), json!(model.degree()));
    body.insert(
        "basis".into(),
        json!(model
            .basis()
            .iter()
            .map(|m| {
                let text = pres.format_monomial(m);
                if text.is_empty() {
                    "1".to_string()
                } else {
                    text
                }
            })
            .collect::<Vec<_>>()),
    );
    body.insert(
        "gram".into(),
        Value::Array(
            model
                .gram()
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|s| match s {
                                Scalar::Exact(q) => json!(q.to_string()),
                                Scalar::Float(z) => c64_json(*z),
                            })
                            .collect(),
                    )
                })
                .collect(),
        ),
    );
    body.insert("rank".into(), json!(model.rank()));
    if let Some(null) = model.exact_null_space() {
        let polys = null
            .iter()
            .map(|v| Ok(model.polynomial(v)?.to_string()))
            .collect::<Result<Vec<_>>>()?;
        body.insert("null_space".into(), json!(polys));
    } else {
        let vecs: Vec<Value> = model
            .null_space()
            .unwrap_or_default()
            .iter()
            .map(|v| Value::Array(v.iter().map(|z| c64_json(*z)).collect()))
            .collect();
        body.insert("null_space".into(), Value::Array(vecs));
    }
    if let Some(ortho) = model.exact_orthogonal() {
        let polys = ortho
            .iter()
            .map(|(u, n)| Ok(json!({ "poly": model.polynomial(u)?.to_string(), "norm_squared": n.to_string() })))
            .collect::<Result<Vec<_>>>()?;
        body.insert("orthogonal".into(), Value::Array(polys));
    }
    body.insert(
        "orthonormal".into(),
        Value::Array(
            model
                .orthonormal()
                .unwrap_or_default()
                .iter()
                .map(|v| Value::Array(v.iter().map(|z| c64_json(*z)).collect()))
                .collect(),
        ),
    );
    let mut mult = Map::new();
    let mut leak = Map::new();
    for (g, gen) in pres.generators().iter().enumerate() {
        mult.insert(
            gen.display_name(),
            matrix_json(&multiplication_operator(model, g)?),
        );
        leak.insert(gen.display_name(), json!(truncation_leakage(model, g)?));
    }
    body.insert("multiplication".into(), Value::Object(mult));
    body.insert("leakage".into(), Value::Object(leak));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn run_strs(args: &[&str]) -> Outcome {
        run_args(std::iter::once("gelfand-lab").chain(args.iter().copied()))
    }

    fn scratch(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("gelfand-lab-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        d
    }

    #[test]
    fn spectrum_check_exit_codes() {
        let dir = scratch("spectrum");
        let f = write(&dir, "alg.star", "algebra A; generator x : selfadjoint;");
        let f = f.to_str().unwrap();
        let ok = run_strs(&["spectrum-check", f, "--char", "x=2.5", "--json"]);
        assert_eq!(ok.code, 0, "{}", ok.output);
        let v: Value = serde_json::from_str(&ok.output).unwrap();
        assert_eq!(v["valid"], json!(true));
        assert_eq!(v["schema"], json!(SCHEMA));
        let bad = run_strs(&["spectrum-check", f, "--char", "x=(0+1i)", "--json"]);
        assert_eq!(bad.code, 2);
        let v: Value = serde_json::from_str(&bad.output).unwrap();
        assert_eq!(v["valid"], json!(false));
        assert_eq!(v["violation"], json!("reality"));
        let syntax = run_strs(&["spectrum-check", f, "--char", "x=="]);
        assert_eq!(syntax.code, 1);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_strs(&["frobnicate"]).code, 1);
        assert_eq!(run_strs(&["parse"]).code, 1);
        assert_eq!(run_strs(&["--help"]).code, 0);
    }

    #[test]
    fn missing_file_is_a_validation_error() {
        let o = run_strs(&["parse", "/nonexistent/gelfand.star"]);
        assert_eq!(o.code, 1);
        assert!(o.output.contains("cannot read"));
    }
}
