//! The `dagex` command line.
//!
//! Exit codes: 0 success, 2 unreadable input or bad arguments, 3 invalid
//! CLIC, 4 no generic index in the requested box, 5 a check failed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dagex_core::clic::{enumerate_clics, enumerate_local_isos, DEFAULT_ISO_BOUND};
use dagex_core::perm::random_k_commuting;
use dagex_core::sampler::box_indices;
use dagex_core::{Classifier, Clic, Dag, Error, FSpec, GPermutation, Index, SampleSpec};
use serde::Serialize;

use crate::formats::{
    read_json, to_json_line, ClicJson, FJson, GraphJson, IndexJson, IsoJson, LoadError,
    PermutationJson, Real, SampleJson, TestReport,
};
use crate::{sample, stats, template};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVALID_CLIC: i32 = 3;
pub const EXIT_EMPTY: i32 = 4;
pub const EXIT_FAILED: i32 = 5;

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "DAGEX_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "dagex",
    version,
    about = "Jointly exchangeable arrays indexed by DAGs"
)]
pub struct Cli {
    /// Output format for listings.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph JSON: {"vertices": [...], "edges": [[from, to], ...]}.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// CLIC JSON with "isos" or "generators"; the trivial CLIC if omitted.
    #[arg(long, conflicts_with = "generator")]
    pub clic: Option<PathBuf>,
    /// Inline generator such as `u=v,v=u,r=c`; repeatable.
    #[arg(long = "gen", value_name = "MAP")]
    pub generator: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every local isomorphism.
    Isos(GraphArgs),
    /// List every CLIC by its non-identity members.
    Clics {
        #[command(flatten)]
        graph: GraphArgs,
        /// Omit the trivial CLIC.
        #[arg(long)]
        nontrivial_only: bool,
    },
    /// Print the symbolic representation of the array.
    Template(ModelArgs),
    /// Dump class keys of all generic indices in a box.
    Classes {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "box", default_value_t = 3)]
        size: u32,
        /// Only indices on the whole vertex set.
        #[arg(long)]
        full_only: bool,
    },
    /// Materialize an array over the box.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "box", default_value_t = 3)]
        size: u32,
        /// `mix`, `affine[:w1,w2,...]` or `threshold[:level]`.
        #[arg(long, default_value = "mix")]
        f: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the uniform attached to every class key used.
        #[arg(long)]
        latents: bool,
    },
    /// Run the invariance, conditional-independence and equivariance checks.
    Test {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "box", default_value_t = 3)]
        size: u32,
        #[arg(long, default_value = "mix")]
        f: String,
        #[arg(long, default_value_t = 10_000)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Permutation JSON to test instead of a random K-commuting one.
        #[arg(long)]
        perm: Option<PathBuf>,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code,
        }
    }
}

fn load_code(e: &LoadError) -> i32 {
    match e {
        LoadError::InvalidClic(_) | LoadError::Core(Error::MalformedIso(_)) => EXIT_INVALID_CLIC,
        LoadError::Core(Error::EmptyIndexSet) => EXIT_EMPTY,
        _ => EXIT_INPUT,
    }
}

fn core_code(e: &Error) -> i32 {
    match e {
        Error::EmptyIndexSet => EXIT_EMPTY,
        Error::MalformedIso(_) => EXIT_INVALID_CLIC,
        _ => EXIT_INPUT,
    }
}

impl From<LoadError> for Outcome {
    fn from(e: LoadError) -> Self {
        Outcome::fail(load_code(&e), e)
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(core_code(&e), e)
    }
}

fn path_str(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn load_graph(g: &GraphArgs) -> Result<Dag, LoadError> {
    read_json::<GraphJson>(&path_str(&g.graph))?.to_dag()
}

fn parse_generator(text: &str) -> Result<IsoJson, LoadError> {
    let mut map = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = part.split_once('=').ok_or_else(|| {
            LoadError::Core(Error::MalformedIso(format!(
                "`{part}` is not of the form from=to"
            )))
        })?;
        map.insert(a.trim().to_string(), b.trim().to_string());
    }
    Ok(IsoJson { map })
}

fn load_model(m: &ModelArgs) -> Result<(Dag, Clic), LoadError> {
    let d = load_graph(&m.graph)?;
    let k = match &m.clic {
        Some(p) => read_json::<ClicJson>(&path_str(p))?.to_clic(&d)?,
        None => ClicJson {
            isos: None,
            generators: Some(
                m.generator
                    .iter()
                    .map(|g| parse_generator(g))
                    .collect::<Result<_, _>>()?,
            ),
        }
        .to_clic(&d)?,
    };
    Ok((d, k))
}

/// Parses `mix`, `affine`, `affine:w1,...`, `threshold` or `threshold:l`.
pub fn parse_f(text: &str) -> Result<(FSpec, FJson), Error> {
    let (kind, params) = match text.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (text, None),
    };
    let reals = |p: &str| -> Result<Vec<f64>, Error> {
        p.split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidSpec(format!("`{x}` is not a number")))
            })
            .collect()
    };
    let json = |kind: &str, weights: Option<Vec<f64>>, level: Option<f64>| FJson {
        kind: kind.into(),
        weights: weights.map(|w| w.into_iter().map(Real).collect()),
        level: level.map(Real),
    };
    match (kind, params) {
        ("mix", None) => Ok((FSpec::Mix, json("mix", None, None))),
        ("affine", None) => Ok((FSpec::Affine(None), json("affine", None, None))),
        ("affine", Some(p)) => {
            let w = reals(p)?;
            Ok((
                FSpec::Affine(Some(w.clone())),
                json("affine", Some(w), None),
            ))
        }
        ("threshold", p) => {
            let level = match p {
                None => 0.5,
                Some(p) => match reals(p)?.as_slice() {
                    [l] => *l,
                    _ => return Err(Error::InvalidSpec("threshold takes one level".into())),
                },
            };
            Ok((
                FSpec::Threshold(level),
                json("threshold", None, Some(level)),
            ))
        }
        _ => Err(Error::InvalidSpec(format!("unknown f `{text}`"))),
    }
}

fn emit<T: Serialize>(value: &T) -> String {
    to_json_line(value)
}

fn cmd_isos(format: Format, g: &GraphArgs) -> Result<String, Outcome> {
    let d = load_graph(g)?;
    let isos: Vec<IsoJson> = enumerate_local_isos(&d)
        .iter()
        .map(|k| IsoJson::from_iso(&d, k))
        .collect();
    Ok(match format {
        Format::Json => emit(&serde_json::json!({ "isos": isos })),
        Format::Text => isos.iter().map(|k| k.to_text() + "\n").collect(),
    })
}

fn cmd_clics(format: Format, g: &GraphArgs, nontrivial_only: bool) -> Result<String, Outcome> {
    let d = load_graph(g)?;
    let clics: Vec<Clic> = enumerate_clics(&d, DEFAULT_ISO_BOUND)?
        .into_iter()
        .filter(|k| !nontrivial_only || !k.is_trivial())
        .collect();
    Ok(match format {
        Format::Json => {
            let list: Vec<ClicJson> = clics.iter().map(|k| ClicJson::nontrivial(&d, k)).collect();
            emit(&serde_json::json!({ "clics": list }))
        }
        Format::Text => clics
            .iter()
            .map(|k| {
                let members: Vec<String> = k
                    .nontrivial()
                    .map(|m| format!("[{}]", IsoJson::from_iso(&d, m).to_text()))
                    .collect();
                if members.is_empty() {
                    "trivial\n".to_string()
                } else {
                    members.join(" ") + "\n"
                }
            })
            .collect(),
    })
}

fn cmd_classes(
    format: Format,
    m: &ModelArgs,
    size: u32,
    full_only: bool,
) -> Result<String, Outcome> {
    let (d, k) = load_model(m)?;
    let cl = Classifier::new(&d, &k);
    let mut classes: BTreeMap<Index, Vec<Index>> = BTreeMap::new();
    for a in cl.generic_indices(u64::from(size), full_only) {
        classes
            .entry(cl.class_key(&a)?.into_rep())
            .or_default()
            .push(a);
    }
    Ok(match format {
        Format::Json => {
            let list: Vec<serde_json::Value> = classes
                .iter()
                .map(|(key, members)| {
                    serde_json::json!({
                        "key": IndexJson::from_index(&d, key),
                        "members": members.iter().map(|a| IndexJson::from_index(&d, a)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit(&serde_json::json!({ "classes": list }))
        }
        Format::Text => {
            let show = |a: &Index| -> String {
                let parts: Vec<String> = a
                    .iter()
                    .map(|(v, x)| format!("{}:{x}", d.label(v)))
                    .collect();
                format!("({})", parts.join(","))
            };
            classes
                .iter()
                .map(|(key, members)| {
                    let ms: Vec<String> = members.iter().map(show).collect();
                    format!("{} <- {}\n", show(key), ms.join(" "))
                })
                .collect()
        }
    })
}

/// Materializes the array and renders it as JSON.
pub fn sample_json(spec: &SampleSpec, f: FJson, latents: bool) -> Result<String, Error> {
    let bundle = sample::generate_array(spec)?;
    Ok(emit(&SampleJson::from_bundle(&bundle, f, latents)))
}

fn cmd_sample(
    m: &ModelArgs,
    size: u32,
    f: &str,
    seed: u64,
    latents: bool,
) -> Result<String, Outcome> {
    let (dag, clic) = load_model(m)?;
    let (f, fj) = parse_f(f).map_err(|e| Outcome::fail(EXIT_INPUT, e))?;
    let spec = SampleSpec {
        dag,
        clic,
        size,
        f,
        seed,
    };
    Ok(sample_json(&spec, fj, latents)?)
}

fn failed_report(test: &str, error: &Error, n: usize, seed: u64) -> TestReport {
    TestReport {
        test: test.into(),
        stat: Real(f64::NAN),
        tol: Real(0.0),
        pass: false,
        n,
        seeds: vec![seed],
        error: Some(format!("{error:?}")),
    }
}

/// A pair of full indices in different classes sharing as few restriction
/// classes as possible.
fn independent_pair(
    cl: &Classifier<'_>,
    indices: &[Index],
) -> dagex_core::Result<Option<(Index, Index)>> {
    let Some(a) = indices.first() else {
        return Ok(None);
    };
    let ka = cl.restr_class_keys(a)?;
    let own = cl.class_key(a)?;
    let mut best: Option<(usize, &Index)> = None;
    for b in &indices[1..] {
        if cl.class_key(b)? == own {
            continue;
        }
        let shared = cl
            .restr_class_keys(b)?
            .iter()
            .filter(|k| ka.binary_search(k).is_ok())
            .count();
        if best.is_none_or(|(s, _)| shared < s) {
            best = Some((shared, b));
        }
    }
    Ok(best.map(|(_, b)| (a.clone(), b.clone())))
}

/// The default battery, one report per line.
pub fn run_battery(
    spec: &SampleSpec,
    tau: Option<GPermutation>,
    replicates: usize,
) -> Result<Vec<TestReport>, Error> {
    let d = &spec.dag;
    let cl = Classifier::new(d, &spec.clic);
    let indices = box_indices(&cl, spec.size)?;
    let tau = tau.unwrap_or_else(|| random_k_commuting(d, &spec.clic, spec.size, spec.seed));
    let mut reports = Vec::new();

    let mut pattern = vec![indices[0].clone()];
    if indices.len() > 1 {
        pattern.push(indices[indices.len() - 1].clone());
    }
    reports.push(
        stats::invariance_test(spec, &tau, &pattern, &stats::product, replicates)
            .unwrap_or_else(|e| failed_report("invariance", &e, replicates, spec.seed)),
    );
    if let Some((a, b)) = independent_pair(&cl, &indices)? {
        reports.push(
            stats::cond_indep_test(spec, &a, &b, replicates)
                .unwrap_or_else(|e| failed_report("cond_indep", &e, replicates, spec.seed)),
        );
    }
    reports.push(
        stats::equivariance_report(d, &spec.clic, &tau, spec.size.max(tau.size()), spec.seed)
            .unwrap_or_else(|e| failed_report("equivariance", &e, 0, spec.seed)),
    );
    Ok(reports)
}

fn cmd_test(
    m: &ModelArgs,
    size: u32,
    f: &str,
    replicates: usize,
    seed: u64,
    perm: Option<&Path>,
) -> Result<Outcome, Outcome> {
    let (dag, clic) = load_model(m)?;
    let (f, _) = parse_f(f).map_err(|e| Outcome::fail(EXIT_INPUT, e))?;
    let tau = match perm {
        Some(p) => Some(read_json::<PermutationJson>(&path_str(p))?.to_perm(&dag)?),
        None => None,
    };
    if replicates < 2 {
        return Err(Outcome::fail(
            EXIT_INPUT,
            "at least two replicates are needed",
        ));
    }
    let spec = SampleSpec {
        dag,
        clic,
        size,
        f,
        seed,
    };
    spec.validate()?;
    let reports = run_battery(&spec, tau, replicates)?;
    let stdout: String = reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
        .collect();
    let failures: Vec<&str> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.test.as_str())
        .collect();
    Ok(Outcome {
        stdout,
        stderr: if failures.is_empty() {
            String::new()
        } else {
            format!("failed: {}\n", failures.join(", "))
        },
        code: if failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
    })
}

fn dispatch(cli: &Cli) -> Outcome {
    let text = |r: Result<String, Outcome>| r.map(Outcome::ok).unwrap_or_else(|e| e);
    match &cli.command {
        Command::Isos(g) => text(cmd_isos(cli.format, g)),
        Command::Clics {
            graph,
            nontrivial_only,
        } => text(cmd_clics(cli.format, graph, *nontrivial_only)),
        Command::Template(m) => text(
            load_model(m)
                .map(|(d, k)| template::render(&d, &k) + "\n")
                .map_err(Outcome::from),
        ),
        Command::Classes {
            model,
            size,
            full_only,
        } => text(cmd_classes(cli.format, model, *size, *full_only)),
        Command::Sample {
            model,
            size,
            f,
            seed,
            latents,
        } => text(cmd_sample(model, *size, f, *seed, *latents)),
        Command::Test {
            model,
            size,
            f,
            replicates,
            seed,
            perm,
        } => cmd_test(model, *size, f, *replicates, *seed, perm.as_deref()).unwrap_or_else(|e| e),
    }
}

/// Writes through a sibling temporary file so readers never see a partial
/// result.
fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

/// Parses arguments and runs one command on `threads` workers (the rayon
/// default when `None`).
pub fn run_with_threads<I, T>(args: I, threads: Option<usize>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_INPUT,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let mut out = pool.install(|| dispatch(&cli));
    if let Some(path) = &cli.output {
        if let Err(e) = write_atomically(path, &out.stdout) {
            return Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display()));
        }
        out.stdout.clear();
    }
    out
}

/// Thread count from the environment, if set to a positive integer.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "{THREADS_VAR} must be a positive integer, got `{s}`"
            )),
        },
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match threads_from_env() {
        Ok(t) => run_with_threads(args, t),
        Err(e) => Outcome::fail(EXIT_INPUT, e),
    }
}
