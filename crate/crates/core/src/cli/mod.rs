//! Command-line front end: argument types, presets and subcommand dispatch.

pub mod config;
pub mod export;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arithmetic::{
    check_integrality, invariant_form, invariant_form_in, kernel_certificate, orbit_module, rescale_to_integral,
    KernelCertificate, ModuleSeed,
};
use crate::catalog::{bi6_certificate_spheres, bi6_vectors, bianchi_roots, BIANCHI_CUSP};
use crate::forms::{bianchi_form, reduce_to_standard, Covector, QuadraticForm};
use crate::groups::{coxeter_diagram, diagram_to_dot, GeneratorSet};
use crate::inversive::InversiveVector;
use crate::linalg::Vector;
use crate::orbits::{audit, OrbitEnumeration};
use crate::radical::RadicalNumber;
use crate::render::{render_svg, RenderOptions};
use crate::vinberg::{vinberg_roots, VinbergProblem, DEFAULT_MAX_HEIGHT, DEFAULT_MAX_ROOTS};

pub use config::{run_pipeline, Format, PipelineError, SceneConfig};
use config::{artifact, build_orbit, Mode};
use export::{bends_csv, matrix_csv, orbit_from_records, orbit_json, roots_csv, to_json, SphereRecord};

#[derive(Debug, Parser)]
#[command(name = "kleinian", version, about = "Exact tools for Kleinian sphere packings and bugs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gram matrix of a list of vectors.
    Gram(VectorArgs),
    /// Coxeter diagram of reflection walls.
    Coxeter(VectorArgs),
    /// Vinberg roots of an integral hyperbolic form.
    Vinberg(FormArgs),
    /// Basis change carrying a form to the standard inversive form.
    Reduce(FormArgs),
    /// Orbit of seed spheres under a generator set.
    Orbit(SceneArgs),
    /// Closure of the seeds under reflection in each other.
    Super(SceneArgs),
    /// Pairwise classification: packing, bug or neither.
    Audit(SceneArgs),
    /// Integrality of bends.
    Check(SceneArgs),
    /// Similarity making all bends integral.
    Rescale(SceneArgs),
    /// Kernel certificate of non-integrality.
    Certify(VectorArgs),
    /// Rank of the integer module spanned by an orbit.
    ModuleRank(ModuleArgs),
    /// Quadratic form preserved by a generator set.
    InvariantForm(VectorArgs),
    /// SVG picture of a planar orbit.
    Render(SceneArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// The six Bi(6) walls in standard coordinates.
    Bi6,
    /// The Bi(6) bug: walls 3 and 6 dropped.
    Bi6Bug,
    /// The five spheres behind the Bi(6) non-integrality certificate.
    Bi6Certificate,
    /// The eleven Bi(30) walls.
    Bi30,
    /// The Bi(30) packing: wall 8 dropped.
    Bi30Drop8,
}

#[derive(Debug, Args)]
pub struct VectorArgs {
    /// JSON list of vectors in the radical grammar, e.g. `[["0","1","0","0"], …]`.
    #[arg(long, conflicts_with = "preset")]
    pub vectors: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// JSON quadratic form `{dim, matrix}`; defaults to the standard form.
    #[arg(long)]
    pub form: Option<PathBuf>,
    /// Use the roots of the Bianchi form `Bi(D)`.
    #[arg(long, conflicts_with_all = ["vectors", "preset"])]
    pub bianchi: Option<i64>,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    #[arg(long, conflicts_with = "bianchi")]
    pub form: Option<PathBuf>,
    #[arg(long)]
    pub bianchi: Option<i64>,
    #[arg(long, default_value_t = DEFAULT_MAX_ROOTS)]
    pub max_roots: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_HEIGHT)]
    pub max_height: i64,
    /// Comma-separated integer point ordering the output, e.g. `1,0,0,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub order_by: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct SceneArgs {
    #[arg(long, conflicts_with_all = ["preset", "input"])]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "input")]
    pub preset: Option<Preset>,
    /// Orbit JSON written by `orbit --format json`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub max_bend: Option<RadicalNumber>,
    #[arg(long)]
    pub max_spheres: Option<usize>,
    #[arg(long)]
    pub uncooriented: bool,
    /// Print bends at circle centers.
    #[arg(long)]
    pub labels: bool,
    /// Label irrational bends in the radical grammar.
    #[arg(long)]
    pub label_exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedKind {
    Bend,
    Cobend,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    /// Generators are the reflections in the roots of `Bi(D)`.
    #[arg(long, default_value_t = 30)]
    pub bianchi: i64,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = SeedKind::Bend)]
    pub seed: SeedKind,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, PipelineError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| PipelineError::ConfigInvalid {
        field: e.path().to_string(),
        reason: e.into_inner().to_string(),
    })
}

fn unit(vs: Vec<Vector>) -> Result<Vec<InversiveVector>, PipelineError> {
    vs.into_iter()
        .map(|v| InversiveVector::new(v).map_err(|e| PipelineError::module("inversive", e)))
        .collect()
}

fn preset_vectors(p: Preset) -> Result<Vec<InversiveVector>, PipelineError> {
    match p {
        Preset::Bi6 | Preset::Bi6Bug => Ok(bi6_vectors()),
        Preset::Bi6Certificate => Ok(bi6_certificate_spheres()),
        Preset::Bi30 | Preset::Bi30Drop8 => Ok(bianchi_roots(30)
            .map_err(|e| PipelineError::module("vinberg", e))?
            .vectors),
    }
}

fn preset_scene(p: Preset) -> SceneConfig {
    match p {
        Preset::Bi6 | Preset::Bi6Bug | Preset::Bi6Certificate => SceneConfig {
            generators: Some(GeneratorSet::reflections(bi6_vectors())),
            drop: Some(vec![3, 6]),
            ..SceneConfig::default()
        },
        Preset::Bi30 | Preset::Bi30Drop8 => {
            let mut c = SceneConfig {
                bianchi: Some(30),
                drop: Some(vec![8]),
                ..SceneConfig::default()
            };
            c.bounds.depth = 5;
            c
        }
    }
}

fn vectors(a: &VectorArgs, default: Preset) -> Result<Vec<Vector>, PipelineError> {
    if let Some(p) = &a.vectors {
        return parse_json(&read(p)?);
    }
    if let Some(d) = a.bianchi {
        return Ok(bianchi_roots(d)
            .map_err(|e| PipelineError::module("vinberg", e))?
            .vectors
            .into_iter()
            .map(InversiveVector::into_coords)
            .collect());
    }
    Ok(preset_vectors(a.preset.unwrap_or(default))?
        .into_iter()
        .map(InversiveVector::into_coords)
        .collect())
}

fn form_of(a: &FormArgs) -> Result<QuadraticForm, CliError> {
    match (&a.form, a.bianchi) {
        (Some(p), _) => Ok(parse_json(&read(p)?)?),
        (None, Some(d)) if d > 0 => Ok(bianchi_form(d)),
        _ => Err(CliError::Usage("give --form FILE or --bianchi D (D > 0)".into())),
    }
}

struct Scene {
    enumeration: OrbitEnumeration,
    log: Vec<String>,
    config: SceneConfig,
}

fn scene(a: &SceneArgs, mode: Mode) -> Result<Scene, PipelineError> {
    if let Some(p) = &a.input {
        let records: Vec<SphereRecord> = parse_json(&read(p)?)?;
        return Ok(Scene {
            enumeration: orbit_from_records(records),
            log: vec![format!("read orbit from {}", p.display())],
            config: SceneConfig::default(),
        });
    }
    let mut cfg = match (&a.config, a.preset) {
        (Some(p), _) => SceneConfig::load(p)?,
        (None, Some(p)) => preset_scene(p),
        (None, None) => preset_scene(Preset::Bi6Bug),
    };
    if a.config.is_none() {
        cfg.mode = mode;
    }
    if let Some(d) = a.depth {
        cfg.bounds.depth = d;
    }
    if let Some(b) = &a.max_bend {
        cfg.bounds.max_bend = Some(b.clone());
    }
    if let Some(m) = a.max_spheres {
        cfg.bounds.max_spheres = Some(m);
    }
    if a.uncooriented {
        cfg.bounds.uncooriented = true;
    }
    cfg.output.labels |= a.labels;
    cfg.output.label_exact |= a.label_exact;
    let (enumeration, log) = build_orbit(&cfg)?;
    Ok(Scene {
        enumeration,
        log,
        config: cfg,
    })
}

/// Text of the `certify` report.
pub fn certificate_text(c: &KernelCertificate) -> String {
    let mut s = String::new();
    s.push_str(&format!("spheres: {}\n", c.spheres.len()));
    for (i, v) in c.spheres.iter().enumerate() {
        s.push_str(&format!("  b{} <- {}\n", i + 1, v));
    }
    s.push_str("kernel basis:\n");
    for k in &c.kernel {
        let row: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("  ({})\n", row.join(", ")));
    }
    s.push_str("relations on bends in any realization with rational bends:\n");
    for r in &c.relations {
        let tag = if r.radicand == 1 {
            "rational part".to_string()
        } else {
            format!("sqrt({}) part", r.radicand)
        };
        s.push_str(&format!("  [{tag}] {r}\n"));
    }
    if c.forced_zero.is_empty() {
        s.push_str("forced zero bends: none\n");
        s.push_str("conclusion: inconclusive; no bend is forced to vanish.\n");
    } else {
        let names: Vec<String> = c.forced_zero.iter().map(|i| format!("b{}", i + 1)).collect();
        s.push_str(&format!("forced zero bends: {}\n", names.join(", ")));
        s.push_str(
            "conclusion: no integral realization. Every conformal realization with rational \
             bends gives bend 0 to the listed spheres, hence to their whole orbit under the \
             Zariski-dense symmetry group, which no bug allows. So this configuration admits \
             no realization with all bends integral.\n",
        );
    }
    s
}

/// Runs one command and returns the text to emit.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let fmt = cli.format;
    let out = match &cli.command {
        Command::Gram(a) => {
            let vs = vectors(a, Preset::Bi6)?;
            let f = match &a.form {
                Some(p) => parse_json::<QuadraticForm>(&read(p)?)?,
                None => QuadraticForm::standard(vs.first().map(|v| v.len()).unwrap_or(4).max(3) - 2),
            };
            let g = f.gram(&vs).map_err(|e| PipelineError::module("forms", e))?;
            match fmt.unwrap_or(Format::Json) {
                Format::Csv => matrix_csv(&g),
                Format::Json => to_json(&g),
                other => return Err(CliError::Usage(format!("gram cannot write {other:?}"))),
            }
        }
        Command::Coxeter(a) => {
            let vs = unit(vectors(a, Preset::Bi6)?)?;
            let d = coxeter_diagram(&vs).map_err(|e| PipelineError::module("groups", e))?;
            match fmt.unwrap_or(Format::Dot) {
                Format::Dot => diagram_to_dot(&d),
                Format::Json => to_json(&d),
                other => return Err(CliError::Usage(format!("coxeter cannot write {other:?}"))),
            }
        }
        Command::Vinberg(a) => {
            let f = form_of(a)?;
            let order = a.order_by.clone().or_else(|| (f.dim() == 4).then(|| BIANCHI_CUSP.to_vec()));
            let mut p = VinbergProblem::new(f)
                .with_max_roots(a.max_roots)
                .with_max_height(a.max_height);
            if let Some(o) = order {
                p = p.with_order_by(o);
            }
            let rl = vinberg_roots(&p).map_err(|e| PipelineError::module("vinberg", e))?;
            match fmt.unwrap_or(Format::Json) {
                Format::Csv => roots_csv(&rl),
                Format::Json => to_json(&rl),
                other => return Err(CliError::Usage(format!("vinberg cannot write {other:?}"))),
            }
        }
        Command::Reduce(a) => {
            let f = form_of(a)?;
            let bc = reduce_to_standard(&f).map_err(|e| PipelineError::module("forms", e))?;
            match fmt.unwrap_or(Format::Json) {
                Format::Csv => matrix_csv(&bc.t),
                Format::Json => to_json(&bc),
                other => return Err(CliError::Usage(format!("reduce cannot write {other:?}"))),
            }
        }
        Command::Orbit(a) | Command::Super(a) | Command::Render(a) => {
            let mode = if matches!(cli.command, Command::Super(_)) {
                Mode::Super
            } else {
                Mode::Orbit
            };
            let s = scene(a, mode)?;
            for l in &s.log {
                eprintln!("{l}");
            }
            let default = if matches!(cli.command, Command::Render(_)) {
                Format::Svg
            } else {
                s.config.output.format
            };
            let mut spec = s.config.output.clone();
            spec.format = fmt.unwrap_or(default);
            artifact(&s.enumeration, &spec)?
        }
        Command::Audit(a) => {
            let s = scene(a, Mode::Orbit)?;
            let r = audit(&s.enumeration).map_err(|e| PipelineError::module("orbits", e))?;
            to_json(&r)
        }
        Command::Check(a) => {
            let s = scene(a, Mode::Orbit)?;
            let r = check_integrality(&s.enumeration);
            eprintln!("{}", r.summary());
            to_json(&r)
        }
        Command::Rescale(a) => {
            let s = scene(a, Mode::Orbit)?;
            let r = rescale_to_integral(&s.enumeration).map_err(|e| PipelineError::module("arithmetic", e))?;
            eprintln!("bends multiplied by {}", r.scale);
            match fmt.unwrap_or(Format::Json) {
                Format::Csv => bends_csv(&r.enumeration),
                Format::Json => orbit_json(&r.enumeration),
                Format::Svg => render_svg(&r.enumeration, &RenderOptions::default())
                    .map_err(|e| PipelineError::module("render", e))?,
                Format::Dot => return Err(CliError::Usage("rescale cannot write dot".into())),
            }
        }
        Command::Certify(a) => {
            let vs = unit(vectors(a, Preset::Bi6Certificate)?)?;
            let c = kernel_certificate(&vs).map_err(|e| PipelineError::module("arithmetic", e))?;
            match fmt {
                Some(Format::Json) => to_json(&c),
                None => certificate_text(&c),
                Some(other) => return Err(CliError::Usage(format!("certify cannot write {other:?}"))),
            }
        }
        Command::ModuleRank(a) => {
            let b = bianchi_roots(a.bianchi).map_err(|e| PipelineError::module("vinberg", e))?;
            let g = GeneratorSet::reflections(b.vectors.clone());
            let seed = match a.seed {
                SeedKind::Bend => Covector::bend(2),
                SeedKind::Cobend => Covector::cobend(2),
            };
            let r = orbit_module(&g, &ModuleSeed::Covector(seed), a.depth, Some(&b.basis))
                .map_err(|e| PipelineError::module("arithmetic", e))?;
            eprintln!("rank {} after depth {}", r.rank, a.depth);
            to_json(&r)
        }
        Command::InvariantForm(a) => {
            if let Some(d) = a.bianchi {
                let b = bianchi_roots(d).map_err(|e| PipelineError::module("vinberg", e))?;
                let g = GeneratorSet::reflections(b.vectors.clone());
                let f = invariant_form_in(&g, Some(&b.basis)).map_err(|e| PipelineError::module("arithmetic", e))?;
                to_json(&f)
            } else {
                let g = GeneratorSet::reflections(unit(vectors(a, Preset::Bi6)?)?);
                let f = invariant_form(&g).map_err(|e| PipelineError::module("arithmetic", e))?;
                to_json(&f)
            }
        }
    };
    Ok(out)
}

/// Parses arguments, runs, and writes the result. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(text) => match &cli.out {
            Some(p) => match fs::write(p, text) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    1
                }
            },
            None => {
                use std::io::Write;
                match std::io::stdout().lock().write_all(text.as_bytes()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                        eprintln!("error: {e}");
                        1
                    }
                    _ => 0,
                }
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
