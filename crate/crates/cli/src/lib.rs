//! Command-line plumbing for `hypercoarsen`: argument parsing, the run
//! configuration and its provenance header, and artifact writers.

use std::fmt;
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use hypercoarsen::coarsen::{DEFAULT_LEVELS, DEFAULT_QUANTILE};
use hypercoarsen::embedding::{build_embedding_pool, DEFAULT_RHO};
use hypercoarsen::expansion::DEFAULT_MAX_CLIQUE_CARDINALITY;
use hypercoarsen::metrics::{rating_rows, write_rating_tsv};
use hypercoarsen::{
    coarsen_multilevel, estimate_resistances, evaluate_clustering, parse_hgr, read_clusters, write_clusters,
    write_hgr, CoarsenConfig, ContractionPolicy, EmbeddingConfig, Error as CoreError, Hypergraph64,
};

/// Environment variable capping the worker thread count (0 = automatic).
pub const THREADS_ENV: &str = "HYPERCOARSEN_THREADS";

const HEADER_PREFIX: &str = "% run.";

#[derive(Parser, Debug)]
#[command(name = "hypercoarsen", version, about = "Spectral hypergraph coarsening")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Coarsen a hypergraph; writes clusters.txt, coarse.hgr, levels.tsv, report.tsv.
    Coarsen(RunArgs),
    /// Score a cluster file against a hypergraph; writes report.tsv.
    Eval(RunArgs),
    /// Estimate hyperedge resistances; writes resistances.tsv.
    Resist(RunArgs),
    /// Export per-hyperedge rating denominators; writes rating.tsv.
    Rate(RunArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Input hypergraph in hMETIS format.
    #[arg(long)]
    pub input: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_RHO)]
    pub rho: usize,
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    pub levels: usize,
    /// Contraction threshold: `abs:<x>` or `q:<quantile>`.
    #[arg(long, default_value_t = DeltaPolicy(ContractionPolicy::Quantile(DEFAULT_QUANTILE)))]
    pub delta: DeltaPolicy,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Disable merging of isolated vertices.
    #[arg(long)]
    pub no_local: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_CLIQUE_CARDINALITY)]
    pub max_clique: usize,
    /// Stop coarsening once this node reduction is reached.
    #[arg(long)]
    pub target_nr: Option<f64>,
    /// Cluster file to evaluate (eval only).
    #[arg(long)]
    pub clusters: Option<PathBuf>,
    /// Also write the level-0 embedding pool to pool.txt.
    #[arg(long)]
    pub dump_pool: bool,
}

/// `--delta` value with the `abs:x` / `q:y` text form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaPolicy(pub ContractionPolicy);

impl fmt::Display for DeltaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            ContractionPolicy::Absolute(x) => write!(f, "abs:{x}"),
            ContractionPolicy::Quantile(q) => write!(f, "q:{q}"),
        }
    }
}

impl FromStr for DeltaPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, value) = s.split_once(':').ok_or_else(|| format!("expected abs:<x> or q:<y>, got {s:?}"))?;
        let x: f64 = value.parse().map_err(|_| format!("not a number: {value:?}"))?;
        let policy = match kind {
            "abs" => ContractionPolicy::Absolute(x),
            "q" => ContractionPolicy::Quantile(x),
            _ => return Err(format!("unknown threshold kind {kind:?}; use abs or q")),
        };
        policy.validate().map_err(|e| e.to_string())?;
        Ok(DeltaPolicy(policy))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Coarsen,
    Eval,
    Resist,
    Rate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Coarsen => "coarsen",
            Command::Eval => "eval",
            Command::Resist => "resist",
            Command::Rate => "rate",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "coarsen" => Ok(Command::Coarsen),
            "eval" => Ok(Command::Eval),
            "resist" => Ok(Command::Resist),
            "rate" => Ok(Command::Rate),
            _ => Err(format!("unknown command {s:?}")),
        }
    }
}

/// Everything that determines a run's artifacts.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub out: PathBuf,
    pub rho: usize,
    pub levels: usize,
    pub delta: ContractionPolicy,
    pub seed: u64,
    pub local_clustering: bool,
    pub max_clique: usize,
    pub target_nr: Option<f64>,
    pub clusters: Option<PathBuf>,
    pub dump_pool: bool,
}

/// Configuration or argument problem detected before any work starts.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, a) = match cli.command {
            CliCommand::Coarsen(a) => (Command::Coarsen, a),
            CliCommand::Eval(a) => (Command::Eval, a),
            CliCommand::Resist(a) => (Command::Resist, a),
            CliCommand::Rate(a) => (Command::Rate, a),
        };
        RunConfig {
            command,
            input: a.input,
            out: a.out,
            rho: a.rho,
            levels: a.levels,
            delta: a.delta.0,
            seed: a.seed,
            local_clustering: !a.no_local,
            max_clique: a.max_clique,
            target_nr: a.target_nr,
            clusters: a.clusters,
            dump_pool: a.dump_pool,
        }
    }
}

fn path_text(p: &Path) -> anyhow::Result<&str> {
    match p.to_str() {
        Some(s) if !s.contains('\n') => Ok(s),
        _ => Err(UsageError(format!("path {p:?} is not representable in a header")).into()),
    }
}

impl RunConfig {
    /// Parses command-line arguments (without the program name).
    pub fn from_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let argv = std::iter::once(std::ffi::OsString::from("hypercoarsen")).chain(args.into_iter().map(Into::into));
        Ok(Cli::try_parse_from(argv)?.into())
    }

    pub fn coarsen_config(&self) -> CoarsenConfig {
        CoarsenConfig {
            levels: self.levels,
            rho: self.rho,
            seed: self.seed,
            policy: self.delta,
            local_clustering: self.local_clustering,
            embedding: EmbeddingConfig {
                max_clique_cardinality: self.max_clique,
            },
            target_nr: self.target_nr,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        self.coarsen_config().validate()?;
        path_text(&self.input)?;
        path_text(&self.out)?;
        match (&self.command, &self.clusters) {
            (Command::Eval, None) => bail!(UsageError("eval needs --clusters".into())),
            (Command::Eval, Some(c)) => {
                path_text(c)?;
            }
            (_, Some(_)) => bail!(UsageError("--clusters is only used by eval".into())),
            _ => {}
        }
        Ok(())
    }

    /// `%`-comment lines that [`RunConfig::from_header`] turns back into
    /// this exact configuration.
    pub fn to_header(&self) -> String {
        let opt_path = |p: &Option<PathBuf>| p.as_ref().map_or("-".to_string(), |p| p.display().to_string());
        let fields = [
            ("command", self.command.name().to_string()),
            ("input", self.input.display().to_string()),
            ("out", self.out.display().to_string()),
            ("rho", self.rho.to_string()),
            ("levels", self.levels.to_string()),
            ("delta", DeltaPolicy(self.delta).to_string()),
            ("seed", self.seed.to_string()),
            ("local", self.local_clustering.to_string()),
            ("max_clique", self.max_clique.to_string()),
            ("target_nr", self.target_nr.map_or("-".to_string(), |t| t.to_string())),
            ("clusters", opt_path(&self.clusters)),
            ("dump_pool", self.dump_pool.to_string()),
        ];
        let mut s = format!("% hypercoarsen {}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in fields {
            s.push_str(&format!("{HEADER_PREFIX}{k}={v}\n"));
        }
        s
    }

    /// Rebuilds a configuration from the header of any artifact.
    pub fn from_header(text: &str) -> anyhow::Result<RunConfig> {
        let mut map = std::collections::BTreeMap::new();
        for line in text.lines().take_while(|l| l.starts_with('%')) {
            if let Some(kv) = line.strip_prefix(HEADER_PREFIX) {
                let (k, v) = kv.split_once('=').with_context(|| format!("bad header line {line:?}"))?;
                if map.insert(k.to_string(), v.to_string()).is_some() {
                    bail!(UsageError(format!("duplicate header key {k:?}")));
                }
            }
        }
        let mut take = |k: &str| map.remove(k).ok_or_else(|| UsageError(format!("header lacks {k:?}")));
        let usage = |e: String| UsageError(e);
        let opt = |v: String| (v != "-").then_some(v);
        let cfg = RunConfig {
            command: take("command")?.parse().map_err(usage)?,
            input: take("input")?.into(),
            out: take("out")?.into(),
            rho: take("rho")?.parse()?,
            levels: take("levels")?.parse()?,
            delta: take("delta")?.parse::<DeltaPolicy>().map_err(usage)?.0,
            seed: take("seed")?.parse()?,
            local_clustering: take("local")?.parse()?,
            max_clique: take("max_clique")?.parse()?,
            target_nr: opt(take("target_nr")?).map(|t| t.parse()).transpose()?,
            clusters: opt(take("clusters")?).map(PathBuf::from),
            dump_pool: take("dump_pool")?.parse()?,
        };
        if let Some(k) = map.keys().next() {
            bail!(UsageError(format!("unknown header key {k:?}")));
        }
        Ok(cfg)
    }
}

/// What a run produced.
#[derive(Debug, Default)]
pub struct RunOutcome {
    pub artifacts: Vec<PathBuf>,
    /// Human-readable summary for the terminal.
    pub summary: String,
    pub warnings: Vec<String>,
}

struct ArtifactWriter<'a> {
    dir: &'a Path,
    header: String,
    written: Vec<PathBuf>,
}

impl ArtifactWriter<'_> {
    fn write(&mut self, name: &str, fill: impl FnOnce(&mut Vec<u8>) -> hypercoarsen::Result<()>) -> anyhow::Result<()> {
        let mut buf = self.header.clone().into_bytes();
        fill(&mut buf)?;
        let path = self.dir.join(name);
        fs::write(&path, buf).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }
}

fn load_hypergraph(path: &Path) -> anyhow::Result<Hypergraph64> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let h = parse_hgr(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    Ok(h)
}

/// Executes one command and writes its artifacts into `cfg.out`.
pub fn run(cfg: &RunConfig) -> anyhow::Result<RunOutcome> {
    cfg.validate()?;
    let h = load_hypergraph(&cfg.input)?;
    fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    let mut out = ArtifactWriter {
        dir: &cfg.out,
        header: cfg.to_header(),
        written: Vec::new(),
    };
    let mut outcome = RunOutcome::default();
    if h.dropped_edges() > 0 {
        outcome
            .warnings
            .push(format!("dropped {} hyperedges with fewer than two pins", h.dropped_edges()));
    }
    if cfg.dump_pool {
        let pool = build_embedding_pool(&h, cfg.rho, cfg.seed, &cfg.coarsen_config().embedding);
        out.write("pool.txt", |w| pool.write_matrix(w))?;
    }

    match cfg.command {
        Command::Coarsen => {
            let hier = coarsen_multilevel(&h, &cfg.coarsen_config())?;
            let report = evaluate_clustering(&h, hier.composed_clusters())?;
            out.write("clusters.txt", |w| write_clusters(hier.composed_clusters(), w))?;
            out.write("coarse.hgr", |w| write_hgr(hier.coarsest(), true, w))?;
            out.write("levels.tsv", |w| hier.write_levels_tsv(w))?;
            out.write("report.tsv", |w| report.write_tsv(w))?;
            outcome.warnings.extend(hier.warnings().iter().cloned());
            outcome.summary = format!(
                "levels        {}\nvertices      {} -> {}\n{}",
                hier.levels().len(),
                h.num_vertices(),
                hier.coarsest().num_vertices(),
                report.to_table()
            );
        }
        Command::Eval => {
            let path = cfg.clusters.as_ref().expect("validated");
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let clusters = read_clusters(BufReader::new(file), h.num_vertices())
                .with_context(|| format!("reading {}", path.display()))?;
            let report = evaluate_clustering(&h, &clusters)?;
            out.write("report.tsv", |w| report.write_tsv(w))?;
            outcome.summary = report.to_table();
        }
        Command::Resist | Command::Rate => {
            let pool = build_embedding_pool(&h, cfg.rho, cfg.seed, &cfg.coarsen_config().embedding);
            outcome.warnings.extend(pool.warnings().iter().cloned());
            let r = estimate_resistances(&h, &pool)?;
            if cfg.command == Command::Resist {
                out.write("resistances.tsv", |w| r.write_tsv(w))?;
                outcome.summary = format!("hyperedges    {}\npool size     {}\n", r.len(), pool.len());
            } else {
                let rows = rating_rows(&h, &r);
                let guarded = rows.iter().filter(|r| r.guarded).count();
                out.write("rating.tsv", |w| write_rating_tsv(&rows, w))?;
                outcome.summary = format!("hyperedges    {}\nguarded       {guarded}\n", rows.len());
            }
        }
    }
    outcome.artifacts = out.written;
    Ok(outcome)
}

/// Stable error identifier: the core error kind when there is one.
pub fn error_kind(err: &anyhow::Error) -> &'static str {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CoreError>() {
            return e.kind();
        }
        if cause.is::<UsageError>() {
            return "usage";
        }
        if cause.is::<std::io::Error>() {
            return "io";
        }
        if cause.is::<std::num::ParseIntError>()
            || cause.is::<std::num::ParseFloatError>()
            || cause.is::<std::str::ParseBoolError>()
        {
            return "usage";
        }
    }
    "internal"
}

/// One tab-separated line: `error`, kind, message (with the context chain).
pub fn error_line(err: &anyhow::Error) -> String {
    let msg = format!("{err:#}").replace(['\n', '\t'], " ");
    format!("error\t{}\t{msg}", error_kind(err))
}

/// Installs the global rayon pool according to [`THREADS_ENV`].
pub fn configure_threads(value: Option<&str>) -> anyhow::Result<()> {
    let Some(v) = value else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(())
}
