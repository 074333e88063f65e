//! Scene configuration files and the batch pipeline
//! form → reduction → Vinberg roots → dropped walls → orbit → reports.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arithmetic::{check_integrality, rescale_to_integral, IntegralityReport};
use crate::catalog::{drop_config, BIANCHI_CUSP};
use crate::forms::{bianchi_form, reduce_to_standard, QuadraticForm};
use crate::groups::GeneratorSet;
use crate::inversive::InversiveVector;
use crate::orbits::{audit, enumerate_orbit, superorbit, AuditReport, Dedupe, OrbitConfig, OrbitEnumeration, SuperLimits};
use crate::radical::RadicalNumber;
use crate::render::{render_svg, RenderOptions, DEFAULT_COLORS};
use crate::vinberg::{roots_to_inversive, vinberg_roots, VinbergProblem, DEFAULT_MAX_HEIGHT, DEFAULT_MAX_ROOTS};

use super::export::{bends_csv, orbit_json, to_json};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid config at `{field}`: {reason}")]
    ConfigInvalid { field: String, reason: String },
    #[error("{module}: {message}")]
    Module { module: &'static str, message: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl PipelineError {
    pub fn module(module: &'static str, e: impl std::fmt::Display) -> Self {
        PipelineError::Module {
            module,
            message: e.to_string(),
        }
    }

    fn invalid(field: &str, reason: impl Into<String>) -> Self {
        PipelineError::ConfigInvalid {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Svg,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Orbit of the seeds under the generators.
    #[default]
    Orbit,
    /// Closure of the seeds under reflection in each other.
    Super,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Report {
    Audit,
    Check,
    Rescale,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VinbergSettings {
    pub max_roots: usize,
    pub max_height: i64,
    pub order_by: Option<Vec<i64>>,
}

impl Default for VinbergSettings {
    fn default() -> Self {
        VinbergSettings {
            max_roots: DEFAULT_MAX_ROOTS,
            max_height: DEFAULT_MAX_HEIGHT,
            order_by: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    pub depth: usize,
    pub max_bend: Option<RadicalNumber>,
    pub max_spheres: Option<usize>,
    pub uncooriented: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            depth: 4,
            max_bend: None,
            max_spheres: None,
            uncooriented: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub format: Format,
    /// Relative paths resolve against the config file's directory.
    pub path: Option<PathBuf>,
    pub colors: Vec<String>,
    pub viewport: Option<[f64; 4]>,
    pub labels: bool,
    pub label_exact: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            format: Format::Json,
            path: None,
            colors: DEFAULT_COLORS.iter().map(|s| s.to_string()).collect(),
            viewport: None,
            labels: false,
            label_exact: false,
        }
    }
}

/// A scene: where the generators come from, what to seed, and what to write.
///
/// Generators are either given explicitly or derived from `form` (or the
/// Bianchi form `bianchi`) by reduction and Vinberg's algorithm. Exactly one
/// of `seeds` and `drop` must be present; `drop` lists 1-based root labels
/// whose reflections are removed and whose walls become the seeds.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneConfig {
    pub form: Option<QuadraticForm>,
    pub bianchi: Option<i64>,
    pub vinberg: VinbergSettings,
    pub generators: Option<GeneratorSet>,
    pub seeds: Option<Vec<InversiveVector>>,
    pub drop: Option<Vec<usize>>,
    pub mode: Mode,
    pub bounds: Bounds,
    pub reports: Vec<Report>,
    pub output: OutputSpec,
}

impl SceneConfig {
    pub fn parse(text: &str) -> Result<Self, PipelineError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            PipelineError::ConfigInvalid {
                field: if path == "." { "(root)".to_string() } else { path },
                reason: e.into_inner().to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = fs::read_to_string(path).map_err(|source| PipelineError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    fn vinberg_form(&self) -> Result<Option<QuadraticForm>, PipelineError> {
        match (&self.form, self.bianchi) {
            (Some(_), Some(_)) => Err(PipelineError::invalid("form", "give either `form` or `bianchi`, not both")),
            (Some(f), None) => Ok(Some(f.clone())),
            (None, Some(d)) if d <= 0 => Err(PipelineError::invalid("bianchi", "D must be positive")),
            (None, Some(d)) => Ok(Some(bianchi_form(d))),
            (None, None) => Ok(None),
        }
    }

    /// Resolves generators and seeds into an orbit configuration.
    pub fn orbit_config(&self) -> Result<(OrbitConfig, Vec<String>), PipelineError> {
        let mut log = Vec::new();
        let form = self.vinberg_form()?;
        let generators = match (&self.generators, form) {
            (Some(_), Some(_)) => {
                return Err(PipelineError::invalid(
                    "generators",
                    "give either explicit generators or a form, not both",
                ))
            }
            (Some(g), None) => g.clone(),
            (None, Some(f)) => {
                let bc = reduce_to_standard(&f).map_err(|e| PipelineError::module("forms", e))?;
                let mut p = VinbergProblem::new(f)
                    .with_max_roots(self.vinberg.max_roots)
                    .with_max_height(self.vinberg.max_height);
                p = p.with_order_by(self.vinberg.order_by.clone().unwrap_or(BIANCHI_CUSP.to_vec()));
                let rl = vinberg_roots(&p).map_err(|e| PipelineError::module("vinberg", e))?;
                log.push(format!(
                    "vinberg: {} roots (stop: {:?}, truncated: {})",
                    rl.roots.len(),
                    rl.stop,
                    rl.truncated
                ));
                let vs = roots_to_inversive(&rl, &bc).map_err(|e| PipelineError::module("vinberg", e))?;
                GeneratorSet::reflections(vs)
            }
            (None, None) => GeneratorSet::empty(),
        };
        let mut c = match (&self.seeds, &self.drop) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(PipelineError::invalid("seeds", "exactly one of `seeds` and `drop` is required"))
            }
            (Some(seeds), None) => OrbitConfig::new(generators, seeds.clone(), self.bounds.depth),
            (None, Some(drop)) => {
                if !generators.matrices().is_empty() {
                    return Err(PipelineError::invalid("drop", "dropping walls needs reflection generators only"));
                }
                let roots = generators.roots();
                let mut idx = Vec::new();
                for &k in drop {
                    if k == 0 || k > roots.len() {
                        return Err(PipelineError::invalid(
                            "drop",
                            format!("label {k} outside 1..={}", roots.len()),
                        ));
                    }
                    idx.push(k - 1);
                }
                drop_config(roots, &idx, self.bounds.depth)
            }
        };
        c.max_bend = self.bounds.max_bend.clone();
        c.max_spheres = self.bounds.max_spheres;
        if self.bounds.uncooriented {
            c.dedupe = Dedupe::Uncooriented;
        }
        Ok((c, log))
    }
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub enumeration: OrbitEnumeration,
    pub audit: Option<AuditReport>,
    pub integrality: Option<IntegralityReport>,
    pub rescaled: Option<OrbitEnumeration>,
    /// The main artifact in the configured format.
    pub artifact: String,
    pub written: Vec<PathBuf>,
    pub log: Vec<String>,
}

/// Builds the orbit described by `cfg`.
pub fn build_orbit(cfg: &SceneConfig) -> Result<(OrbitEnumeration, Vec<String>), PipelineError> {
    let (c, mut log) = cfg.orbit_config()?;
    let e = match cfg.mode {
        Mode::Orbit => enumerate_orbit(&c),
        Mode::Super => {
            let limits = SuperLimits {
                max_rounds: cfg.bounds.depth,
                max_bend: c.max_bend.clone(),
                max_spheres: c.max_spheres,
                dedupe: c.dedupe,
            };
            superorbit(&c.seeds, &limits)
        }
    }
    .map_err(|e| PipelineError::module("orbits", e))?;
    log.push(format!(
        "orbits: {} spheres, depth {}, frontier sizes {:?}, truncated at this depth (finite approximation)",
        e.len(),
        e.max_depth,
        e.frontier_sizes
    ));
    Ok((e, log))
}

/// Renders the main artifact of a pipeline run.
pub fn artifact(e: &OrbitEnumeration, out: &OutputSpec) -> Result<String, PipelineError> {
    match out.format {
        Format::Json => Ok(orbit_json(e)),
        Format::Csv => Ok(bends_csv(e)),
        Format::Svg => {
            let opts = RenderOptions {
                viewport: out.viewport,
                colors: out.colors.clone(),
                labels: out.labels,
                label_exact: out.label_exact,
                ..RenderOptions::default()
            };
            render_svg(e, &opts).map_err(|e| PipelineError::module("render", e))
        }
        Format::Dot => Err(PipelineError::invalid("output.format", "dot output applies to Coxeter diagrams, not orbits")),
    }
}

pub fn run_config(cfg: &SceneConfig, base_dir: &Path) -> Result<PipelineResult, PipelineError> {
    let (e, mut log) = build_orbit(cfg)?;
    let mut result = PipelineResult {
        artifact: artifact(&e, &cfg.output)?,
        enumeration: e,
        audit: None,
        integrality: None,
        rescaled: None,
        written: Vec::new(),
        log: Vec::new(),
    };
    for r in &cfg.reports {
        match r {
            Report::Audit => {
                let a = audit(&result.enumeration).map_err(|e| PipelineError::module("orbits", e))?;
                log.push(format!("audit: {:?}", a.verdict));
                result.audit = Some(a);
            }
            Report::Check => {
                let c = check_integrality(&result.enumeration);
                log.push(format!("check: {}", c.summary()));
                result.integrality = Some(c);
            }
            Report::Rescale => {
                let r = rescale_to_integral(&result.enumeration).map_err(|e| PipelineError::module("arithmetic", e))?;
                log.push(format!("rescale: bends multiplied by {}", r.scale));
                result.rescaled = Some(r.enumeration);
            }
        }
    }
    if let Some(p) = &cfg.output.path {
        let path = if p.is_absolute() { p.clone() } else { base_dir.join(p) };
        fs::write(&path, &result.artifact).map_err(|source| PipelineError::Io {
            path: path.clone(),
            source,
        })?;
        result.written.push(path.clone());
        let mut write_report = |suffix: &str, text: String| -> Result<(), PipelineError> {
            let rp = path.with_extension(suffix);
            fs::write(&rp, text).map_err(|source| PipelineError::Io {
                path: rp.clone(),
                source,
            })?;
            result.written.push(rp);
            Ok(())
        };
        if let Some(a) = &result.audit {
            write_report("audit.json", to_json(a))?;
        }
        if let Some(c) = &result.integrality {
            write_report("check.json", to_json(c))?;
        }
    }
    result.log = log;
    Ok(result)
}

/// Loads a config file and runs it; relative output paths resolve next to the file.
pub fn run_pipeline(path: &Path) -> Result<PipelineResult, PipelineError> {
    let cfg = SceneConfig::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    run_config(&cfg, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_seed_no_generators() {
        let cfg = SceneConfig::parse(r#"{"seeds": [["0", "1", "0", "0"]]}"#).unwrap();
        let r = run_config(&cfg, Path::new(".")).unwrap();
        assert_eq!(r.enumeration.len(), 1);
        let parsed: Vec<serde_json::Value> = serde_json::from_str(&r.artifact).unwrap();
        assert_eq!(parsed.len(), 1);
    }

    #[test]
    fn malformed_number_names_field() {
        let err = SceneConfig::parse(r#"{"seeds": [["0", "1", "0", "sqrt(2"]]}"#).unwrap_err();
        match err {
            PipelineError::ConfigInvalid { field, .. } => assert_eq!(field, "seeds[0][3]"),
            other => panic!("{other:?}"),
        }
        let err = SceneConfig::parse(r#"{"bounds": {"max_bend": "1//2"}}"#).unwrap_err();
        assert!(matches!(err, PipelineError::ConfigInvalid { field, .. } if field == "bounds.max_bend"));
    }

    #[test]
    fn seeds_and_drop_exclusive() {
        let cfg = SceneConfig::parse(r#"{"bianchi": 6}"#).unwrap();
        assert!(matches!(cfg.orbit_config(), Err(PipelineError::ConfigInvalid { .. })));
        let cfg = SceneConfig::parse(r#"{"bianchi": 6, "drop": [12]}"#).unwrap();
        assert!(matches!(cfg.orbit_config(), Err(PipelineError::ConfigInvalid { field, .. }) if field == "drop"));
    }

    #[test]
    fn bianchi_drop_pipeline() {
        let cfg = SceneConfig::parse(
            r#"{"bianchi": 6, "drop": [3, 6], "bounds": {"depth": 2}, "reports": ["audit", "check"], "output": {"format": "csv"}}"#,
        )
        .unwrap();
        let r = run_config(&cfg, Path::new(".")).unwrap();
        assert!(r.artifact.starts_with("bend,depth\n"));
        assert!(r.audit.is_some() && r.integrality.is_some());
    }
}
