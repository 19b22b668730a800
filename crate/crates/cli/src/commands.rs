use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use sdic_core::channel::{ChannelFile, ChannelSpec, DistFile, SchemeDistribution};
use sdic_core::fm;
use sdic_core::regions::{self, RegionError};
use sdic_core::search::{self, AuxCards, SearchConfig};
use sdic_core::sim::{self, SimConfig, SimError};
use sdic_core::theorems::Scheme;

use crate::manifest::RunManifest;

/// Exit codes: 0 success, 2 input error, 3 empty result, 4 resource cap.
pub struct CmdError {
    code: u8,
    source: anyhow::Error,
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.source)
    }
}

fn input_err(e: impl Into<anyhow::Error>) -> CmdError {
    CmdError { code: 2, source: e.into() }
}

fn empty_err(msg: &str) -> CmdError {
    CmdError { code: 3, source: anyhow!("{msg}") }
}

fn cap_err(e: impl Into<anyhow::Error>) -> CmdError {
    CmdError { code: 4, source: e.into() }
}

type CmdResult = Result<(), CmdError>;

#[derive(Parser)]
#[command(
    name = "sdic",
    version,
    about = "Rate regions and coding simulations for the two-user interference \
             channel with transmitter state information"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the evaluated rate constraints for a channel and distribution.
    Info {
        /// Channel description (JSON).
        channel: PathBuf,
        /// Auxiliary distribution (JSON).
        dist: PathBuf,
        /// Expected scheme; must match the distribution file.
        #[arg(long)]
        scheme: Option<u8>,
    },
    /// Approximate the union achievable region and emit it as CSV.
    Region {
        channel: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project a 4-variable rate system onto the (R1, R2) plane.
    Project {
        /// Constraint text file over R10, R11, R20, R22.
        constraints: Option<PathBuf>,
        /// Emit the built-in symbolic projection for a scheme instead.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        symbolic: Option<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the two schemes' regions over matched distribution pairs.
    Compare {
        channel: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Monte Carlo coding simulator from a sim spec (JSON).
    Simulate {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Coding scheme to evaluate.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    scheme: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled distributions (the first is the constant one).
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Simplex lattice resolution for grid enumeration.
    #[arg(long)]
    grid_step: Option<f64>,
    /// Support-function sweep size.
    #[arg(long, default_value_t = 33)]
    lambdas: usize,
    /// Auxiliary cardinalities, e.g. `Q=1,U1=2,V1=4,U2=1,V2=1`.
    #[arg(long)]
    card: Option<String>,
    /// Random encoder maps per sampled conditional when |V| != |X|.
    #[arg(long, default_value_t = 2)]
    maps: usize,
}

impl SearchArgs {
    fn to_config(&self, channel: &ChannelSpec) -> Result<SearchConfig, CmdError> {
        let mut cards = AuxCards::default_for(channel);
        if let Some(spec) = &self.card {
            for part in spec.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| input_err(anyhow!("bad --card entry `{part}`")))?;
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| input_err(anyhow!("bad --card value `{part}`")))?;
                match k.trim() {
                    "Q" => cards.q = v,
                    "U1" => cards.u1 = v,
                    "V1" => cards.v1 = v,
                    "U2" => cards.u2 = v,
                    "V2" => cards.v2 = v,
                    other => return Err(input_err(anyhow!("unknown --card key `{other}`"))),
                }
            }
        }
        let mut cfg = SearchConfig::new(cards, self.samples, self.seed);
        cfg.grid_step = self.grid_step;
        cfg.lambda_count = self.lambdas;
        cfg.maps_per_sample = self.maps;
        cfg.validate().map_err(input_err)?;
        Ok(cfg)
    }
}

pub fn run(cli: Cli) -> CmdResult {
    match cli.cmd {
        Command::Info { channel, dist, scheme } => cmd_info(&channel, &dist, scheme),
        Command::Region { channel, search, out } => cmd_region(&channel, &search, out.as_deref()),
        Command::Project { constraints, symbolic, out } => {
            cmd_project(constraints.as_deref(), symbolic, out.as_deref())
        }
        Command::Compare { channel, search, out } => {
            cmd_compare(&channel, &search, out.as_deref())
        }
        Command::Simulate { spec, out } => cmd_simulate(&spec, out.as_deref()),
    }
}

fn load_channel(path: &Path) -> Result<ChannelSpec, CmdError> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input_err)?;
    let file: ChannelFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(input_err)?;
    file.into_spec()
        .with_context(|| format!("validating {}", path.display()))
        .map_err(input_err)
}

fn load_dist(path: &Path, channel: &ChannelSpec) -> Result<SchemeDistribution, CmdError> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input_err)?;
    let file: DistFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(input_err)?;
    file.into_distribution(channel)
        .with_context(|| format!("validating {}", path.display()))
        .map_err(input_err)
}

fn emit(out: Option<&Path>, content: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(input_err),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_info(channel_path: &Path, dist_path: &Path, scheme: Option<u8>) -> CmdResult {
    let channel = load_channel(channel_path)?;
    let dist = load_dist(dist_path, &channel)?;
    let dist_scheme = match &dist {
        SchemeDistribution::Scheme1(_) => 1,
        SchemeDistribution::Scheme2(_) => 2,
    };
    if let Some(s) = scheme {
        if s != dist_scheme {
            return Err(input_err(anyhow!(
                "--scheme {s} does not match the distribution file (scheme {dist_scheme})"
            )));
        }
    }
    let joint = dist.build_joint(&channel).map_err(input_err)?;
    let constraints = match dist_scheme {
        1 => regions::theorem1_constraints(&joint),
        _ => regions::theorem2_constraints(&joint),
    }
    .map_err(input_err)?;

    let mut table = String::new();
    for c in &constraints {
        let mut terms = String::new();
        for t in &c.terms {
            let sign = if t.sign >= 0 { '+' } else { '-' };
            let _ = write!(terms, " {sign}{}={:.6}", t.symbol, t.value_bits);
        }
        println!("{:<6} {:>10.6} {}", c.tag, c.rhs, terms.trim_start());
        let _ = &mut table;
    }
    Ok(())
}

fn cmd_region(channel_path: &Path, args: &SearchArgs, out: Option<&Path>) -> CmdResult {
    let channel = load_channel(channel_path)?;
    let cfg = args.to_config(&channel)?;
    let scheme = Scheme::from_number(args.scheme).expect("validated");
    let approx = search::union_region(&channel, scheme, &cfg).map_err(input_err)?;
    if approx.raw_union.is_empty() {
        return Err(empty_err("every sampled distribution produced an empty region"));
    }
    let manifest = RunManifest::new(
        "region",
        vec![channel_path.display().to_string()],
        serde_json::json!({
            "scheme": args.scheme,
            "search": cfg,
        }),
        cfg.seed,
    );
    let mut content = manifest.comment_line();
    content.push('\n');
    content.push_str(&search::region_csv(&approx));
    emit(out, &content)
}

fn cmd_project(
    constraints: Option<&Path>,
    symbolic: Option<u8>,
    out: Option<&Path>,
) -> CmdResult {
    let (content, inputs) = match (constraints, symbolic) {
        (Some(_), Some(_)) => {
            return Err(input_err(anyhow!(
                "pass either a constraints file or --symbolic, not both"
            )))
        }
        (None, None) => {
            return Err(input_err(anyhow!(
                "a constraints file or --symbolic {{1|2}} is required"
            )))
        }
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(input_err)?;
            let sys = fm::parse_system(&text, Some(&["R10", "R11", "R20", "R22"]))
                .map_err(input_err)?;
            let region = match regions::project_rate_system(&sys) {
                Ok(r) => r,
                Err(RegionError::EmptyRegion) => {
                    return Err(empty_err("projected region is empty"))
                }
                Err(e) => return Err(input_err(e)),
            };
            (
                fm::write_system(&region.system),
                vec![path.display().to_string()],
            )
        }
        (None, Some(n)) => {
            let scheme = Scheme::from_number(n).expect("validated");
            let sys = fm::eliminate_symbolic_region(scheme).map_err(input_err)?;
            (fm::write_system(&sys), Vec::new())
        }
    };
    let manifest = RunManifest::new(
        "project",
        inputs,
        serde_json::json!({ "symbolic": symbolic }),
        0,
    );
    let mut full = manifest.comment_line();
    full.push('\n');
    full.push_str(&content);
    emit(out, &full)
}

fn cmd_compare(channel_path: &Path, args: &SearchArgs, out: Option<&Path>) -> CmdResult {
    let channel = load_channel(channel_path)?;
    let cfg = args.to_config(&channel)?;
    let report = search::compare_regions(&channel, &cfg).map_err(input_err)?;
    let manifest = RunManifest::new(
        "compare",
        vec![channel_path.display().to_string()],
        serde_json::json!({ "search": cfg }),
        cfg.seed,
    );
    #[derive(Serialize)]
    struct CompareArtifact<'a> {
        manifest: &'a RunManifest,
        #[serde(flatten)]
        report: &'a search::CompareReport,
    }
    let artifact = CompareArtifact { manifest: &manifest, report: &report };
    let mut text = serde_json::to_string_pretty(&artifact).expect("report serializes");
    text.push('\n');
    emit(out, &text)
}

/// Simulation spec file: channel and distribution paths plus the run knobs.
#[derive(Debug, Serialize, Deserialize)]
pub struct SimSpecFile {
    pub channel: PathBuf,
    pub dist: PathBuf,
    pub scheme: u8,
    pub n: usize,
    pub epsilon: f64,
    pub rates: [f64; 4],
    pub bin_rates: [f64; 4],
    pub trials: u64,
    pub seed: u64,
}

fn cmd_simulate(spec_path: &Path, out: Option<&Path>) -> CmdResult {
    let text = fs::read_to_string(spec_path)
        .with_context(|| format!("reading {}", spec_path.display()))
        .map_err(input_err)?;
    let spec: SimSpecFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", spec_path.display()))
        .map_err(input_err)?;

    // paths are resolved relative to the spec file
    let base = spec_path.parent().unwrap_or_else(|| Path::new("."));
    let channel = load_channel(&base.join(&spec.channel))?;
    let dist = load_dist(&base.join(&spec.dist), &channel)?;
    let dist_scheme = match &dist {
        SchemeDistribution::Scheme1(_) => 1,
        SchemeDistribution::Scheme2(_) => 2,
    };
    if spec.scheme != dist_scheme {
        return Err(input_err(anyhow!(
            "spec scheme {} does not match the distribution file (scheme {dist_scheme})",
            spec.scheme
        )));
    }
    let cfg = SimConfig {
        n: spec.n,
        epsilon: spec.epsilon,
        rates: spec.rates,
        bin_rates: spec.bin_rates,
        trials: spec.trials,
        seed: spec.seed,
        scheme: spec.scheme,
    };
    let report = match sim::run_trials(&channel, &dist, &cfg) {
        Ok(r) => r,
        Err(e @ SimError::CapExceeded { .. }) => return Err(cap_err(e)),
        Err(e) => return Err(input_err(e)),
    };
    let manifest = RunManifest::new(
        "simulate",
        vec![spec_path.display().to_string()],
        serde_json::to_value(&cfg).expect("config serializes"),
        cfg.seed,
    );
    #[derive(Serialize)]
    struct SimArtifact<'a> {
        manifest: &'a RunManifest,
        #[serde(flatten)]
        report: &'a sim::SimReport,
    }
    let artifact = SimArtifact { manifest: &manifest, report: &report };
    let mut text = serde_json::to_string_pretty(&artifact).expect("report serializes");
    text.push('\n');
    emit(out, &text)
}
