//! Command-line front door: argument parsing, configuration, the verdict
//! cache, and CSV/JSON artifact output.
//!
//! Exit codes: 0 success, 2 invalid input (parse errors, non-cube-free n,
//! bad polynomials), 3 undetermined verdict (integer side only), 4 work
//! budget exceeded, 1 internal errors.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::census_ff::{self, CensusFfError, FFWitness};
use crate::census_z::{self, CensusClass};
use crate::cubic_ff::{
    decide_monogenic_ff, decide_monogenic_ff_congruence, integral_basis_ff, FFVerdict,
    PureCubicFF,
};
use crate::cubic_field_z;
use crate::ff_arith::{format_poly, parse_poly, FqConfig, FqPoly};
use crate::int_arith::{self, CubeFreeInt};
use crate::thue_z::{self, HeightPolicy, SearchConfig, VerdictZ};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNDETERMINED: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

/// Bumping this discards every existing cache file on next load.
pub const CACHE_VERSION: u32 = 1;
pub const CACHE_FILE: &str = "verdicts.jsonl";
pub const OUT_DIR_ENV: &str = "PURECUBIC_OUT_DIR";

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn invalid(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INVALID,
            message: msg.into(),
        }
    }
    fn internal(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INTERNAL,
            message: msg.into(),
        }
    }
    fn budget(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_BUDGET,
            message: msg.into(),
        }
    }
}

fn census_ff_err(e: CensusFfError) -> CliError {
    match e {
        CensusFfError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
        other => CliError::invalid(other.to_string()),
    }
}

/// Tool configuration; JSON round-trips.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Fixed search height; when absent the heuristic height is used.
    pub fixed_height: Option<u64>,
    pub abc_delta: f64,
    pub obstruction_prime_bound: u64,
    pub extra_moduli: Vec<u64>,
    /// Worker threads; 0 lets the runtime pick.
    pub workers: usize,
    /// Cap on scanned polynomials in finite-field censuses.
    pub budget: u64,
    /// Seed for the randomized factorization inside the congruence solver.
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            fixed_height: None,
            abc_delta: thue_z::DEFAULT_ABC_DELTA,
            obstruction_prime_bound: thue_z::DEFAULT_OBSTRUCTION_PRIME_BOUND,
            extra_moduli: vec![9],
            workers: 0,
            budget: census_ff::DEFAULT_FF_BUDGET,
            seed: 1,
            out_dir: None,
        }
    }
}

impl Config {
    pub fn search_config(&self) -> SearchConfig {
        let mut sc = SearchConfig::default();
        sc.height = match self.fixed_height {
            Some(h) => HeightPolicy::Fixed(h),
            None => HeightPolicy::AbcHeuristic {
                delta: self.abc_delta,
            },
        };
        sc.obstruction_prime_bound = self.obstruction_prime_bound;
        sc.extra_moduli = self.extra_moduli.clone();
        sc
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.search_config()
            .validate()
            .map_err(|e| CliError::invalid(e.to_string()))?;
        if self.budget == 0 {
            return Err(CliError::invalid("budget must be positive"));
        }
        Ok(())
    }

    /// Stable digest of the fields that can change an integer-side verdict.
    pub fn z_fingerprint(&self) -> String {
        let sc = self.search_config();
        format!(
            "z1;h={:?};b={};xm={:?}",
            sc.height, sc.obstruction_prime_bound, sc.extra_moduli
        )
    }

    /// Function-field verdicts come from a complete search, so they do not
    /// depend on any tunable.
    pub fn ff_fingerprint(&self) -> String {
        "ff1".to_string()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Hash)]
#[serde(rename_all = "snake_case")]
pub enum CacheKey {
    Z { k: u64, m: u64 },
    Ff { q: u64, g: Vec<u64>, h: Vec<u64> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum CachedVerdict {
    Z(VerdictZ),
    Ff(FFVerdict),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub fingerprint: String,
    pub key: CacheKey,
    pub verdict: CachedVerdict,
    pub timestamp: u64,
}

/// Append-only JSONL verdict store. A version mismatch or unreadable line
/// discards the whole file (loudly), since stale verdicts must never leak
/// into new runs.
pub struct VerdictCache {
    path: PathBuf,
    entries: HashMap<(CacheKey, String), CachedVerdict>,
    enabled: bool,
}

impl VerdictCache {
    pub fn load(path: PathBuf, enabled: bool) -> VerdictCache {
        let mut cache = VerdictCache {
            path,
            entries: HashMap::new(),
            enabled,
        };
        if !enabled || !cache.path.exists() {
            return cache;
        }
        let text = match fs::read_to_string(&cache.path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("warning: unreadable cache {}: {e}; discarding", cache.path.display());
                let _ = fs::remove_file(&cache.path);
                return cache;
            }
        };
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheEntry>(line) {
                Ok(entry) if entry.version == CACHE_VERSION => {
                    cache
                        .entries
                        .insert((entry.key, entry.fingerprint), entry.verdict);
                }
                Ok(entry) => {
                    eprintln!(
                        "warning: cache version {} != {}; discarding {}",
                        entry.version,
                        CACHE_VERSION,
                        cache.path.display()
                    );
                    cache.entries.clear();
                    let _ = fs::remove_file(&cache.path);
                    return cache;
                }
                Err(e) => {
                    eprintln!(
                        "warning: corrupt cache line in {}: {e}; discarding",
                        cache.path.display()
                    );
                    cache.entries.clear();
                    let _ = fs::remove_file(&cache.path);
                    return cache;
                }
            }
        }
        cache
    }

    pub fn get(&self, key: &CacheKey, fingerprint: &str) -> Option<&CachedVerdict> {
        if !self.enabled {
            return None;
        }
        self.entries
            .get(&(key.clone(), fingerprint.to_string()))
    }

    /// Appends entries not yet present. A key that is present with a
    /// different verdict under the same fingerprint is a determinism
    /// violation and fails loudly.
    pub fn append(
        &mut self,
        batch: Vec<(CacheKey, String, CachedVerdict)>,
    ) -> Result<(), CliError> {
        if !self.enabled || batch.is_empty() {
            return Ok(());
        }
        let mut lines = String::new();
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        for (key, fingerprint, verdict) in batch {
            match self.entries.get(&(key.clone(), fingerprint.clone())) {
                Some(existing) if *existing != verdict => {
                    return Err(CliError::internal(format!(
                        "cache verdict mismatch for {key:?}: cached {existing:?}, new {verdict:?}"
                    )));
                }
                Some(_) => continue,
                None => {}
            }
            let entry = CacheEntry {
                version: CACHE_VERSION,
                fingerprint: fingerprint.clone(),
                key: key.clone(),
                verdict: verdict.clone(),
                timestamp,
            };
            lines.push_str(
                &serde_json::to_string(&entry)
                    .map_err(|e| CliError::internal(e.to_string()))?,
            );
            lines.push('\n');
            self.entries.insert((key, fingerprint), verdict);
        }
        if lines.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir).map_err(|e| CliError::internal(e.to_string()))?;
        }
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::internal(e.to_string()))?;
        file.write_all(lines.as_bytes())
            .map_err(|e| CliError::internal(e.to_string()))?;
        Ok(())
    }
}

/// Writes through a sibling temp file and renames, so readers never see a
/// partial artifact.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::internal(e.to_string()))?;
    }
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::internal("artifact path has no file name"))?;
    let tmp = path.with_file_name(format!("{}.tmp", file_name.to_string_lossy()));
    fs::write(&tmp, bytes).map_err(|e| CliError::internal(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| CliError::internal(e.to_string()))
}

#[derive(Parser, Debug)]
#[command(
    name = "purecubic",
    version,
    about = "Monogenicity of pure cubic number fields and function fields"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV/JSON artifacts and the verdict cache.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Machine-readable JSON to stdout where applicable.
    #[arg(long, global = true)]
    json: bool,
    /// Skip reading and writing the verdict cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (0 = automatic).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized factorization in the congruence backend.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scan budget for finite-field censuses.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the integral basis of Q(cbrt(n)) or F_q(t, cbrt(f)).
    Basis(BasisArgs),
    /// Decide monogenicity of one field.
    Decide(DecideArgs),
    /// Census of monogenic Q(cbrt(k^2 m)) over square-free m <= limit.
    CensusZ(CensusZArgs),
    /// Census of monogenic F_q(t, cbrt(g^2 h)) over h of degree <= N.
    CensusFf(CensusFfArgs),
    /// Density of the obstruction prime set for a X^3 - m Y^3 = b.
    SieveDensity(SieveArgs),
    /// Exact sums of 3^omega(P) against the zeta-coefficient bound.
    OmegaSum(OmegaArgs),
    /// Exact maximum of omega(P) over deg P <= N.
    OmegaMax(OmegaArgs),
    /// The explicit monogenic family m = (k x^3 - c)/1 with witness (x, 1).
    FamilyZ(CensusZArgs),
    /// The explicit monogenic family h = g X^3 - 1 with witness (X, 1).
    FamilyFf(CensusFfArgs),
}

#[derive(Args, Debug)]
struct BasisArgs {
    /// Function-field mode; expects q=... f=... key-value arguments.
    #[arg(long)]
    ff: bool,
    /// `n` in integer mode; `q=2 f="t^2*(t+1)"` in --ff mode.
    values: Vec<String>,
}

#[derive(Args, Debug)]
struct DecideArgs {
    /// Function-field mode; expects q=... g=... h=... key-value arguments.
    #[arg(long)]
    ff: bool,
    /// Backend for --ff: brute or congruence.
    #[arg(long, default_value = "brute")]
    backend: String,
    /// Fixed search height override (integer mode).
    #[arg(long)]
    height: Option<u64>,
    /// Heuristic height exponent offset override (integer mode).
    #[arg(long)]
    delta: Option<f64>,
    /// Obstruction prime bound override (integer mode).
    #[arg(long)]
    prime_bound: Option<u64>,
    /// Extra composite obstruction moduli (integer mode, repeatable).
    #[arg(long = "extra-modulus")]
    extra_moduli: Vec<u64>,
    /// `k m` in integer mode; `q=2 g=t h="t^2+t+1"` in --ff mode.
    values: Vec<String>,
}

#[derive(Args, Debug)]
struct CensusZArgs {
    #[arg(short)]
    k: u64,
    #[arg(short = 'N', long = "limit")]
    limit: u64,
    /// Ramification class: S (c = 1) or T (c = 9).
    #[arg(long, default_value = "S")]
    class: String,
    /// Override the fixed search height.
    #[arg(long)]
    height: Option<u64>,
}

#[derive(Args, Debug)]
struct CensusFfArgs {
    #[arg(short)]
    q: u64,
    #[arg(short, allow_hyphen_values = true)]
    g: String,
    #[arg(short = 'N', long = "degree")]
    n: usize,
    /// Scan only monic h.
    #[arg(long)]
    monic_only: bool,
}

#[derive(Args, Debug)]
struct SieveArgs {
    #[arg(short)]
    a: u64,
    #[arg(short)]
    b: u64,
    #[arg(short)]
    x: u64,
}

#[derive(Args, Debug)]
struct OmegaArgs {
    #[arg(short)]
    q: u64,
    #[arg(short = 'N')]
    n: usize,
}

/// Entry point used by the binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct Context {
    config: Config,
    out_dir: PathBuf,
    json: bool,
    cache: VerdictCache,
}

fn resolve_config(cli: &Cli) -> Result<Config, CliError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::invalid(format!("cannot read config: {e}")))?;
            serde_json::from_str::<Config>(&text)
                .map_err(|e| CliError::invalid(format!("bad config: {e}")))?
        }
        None => Config::default(),
    };
    if let Some(w) = cli.workers {
        config.workers = w;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(b) = cli.budget {
        config.budget = b;
    }
    if let Some(dir) = &cli.out_dir {
        config.out_dir = Some(dir.clone());
    }
    config.validate()?;
    Ok(config)
}

fn resolve_out_dir(config: &Config) -> PathBuf {
    if let Some(dir) = &config.out_dir {
        return dir.clone();
    }
    if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from(".")
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    let config = resolve_config(&cli)?;
    if config.workers > 0 {
        // a second initialization in the same process is fine to ignore
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build_global();
    }
    let out_dir = resolve_out_dir(&config);
    let cache = VerdictCache::load(out_dir.join(CACHE_FILE), !cli.no_cache);
    let mut ctx = Context {
        config,
        out_dir,
        json: cli.json,
        cache,
    };
    match cli.command {
        Command::Basis(args) => cmd_basis(&ctx, args),
        Command::Decide(args) => cmd_decide(&mut ctx, args),
        Command::CensusZ(args) => cmd_census_z(&mut ctx, args),
        Command::CensusFf(args) => cmd_census_ff(&mut ctx, args),
        Command::SieveDensity(args) => cmd_sieve(&ctx, args),
        Command::OmegaSum(args) => cmd_omega_sum(&ctx, args),
        Command::OmegaMax(args) => cmd_omega_max(&ctx, args),
        Command::FamilyZ(args) => cmd_family_z(&ctx, args),
        Command::FamilyFf(args) => cmd_family_ff(&ctx, args),
    }
}

fn kv_args(values: &[String]) -> Result<HashMap<String, String>, CliError> {
    let mut out = HashMap::new();
    for v in values {
        let (key, value) = v
            .split_once('=')
            .ok_or_else(|| CliError::invalid(format!("expected key=value, got `{v}`")))?;
        out.insert(key.trim().to_string(), value.to_string());
    }
    Ok(out)
}

fn kv_need<'a>(map: &'a HashMap<String, String>, key: &str) -> Result<&'a str, CliError> {
    map.get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| CliError::invalid(format!("missing `{key}=...`")))
}

/// Builds F_q from q = p^e.
fn fq_from_q(q: u64) -> Result<FqConfig, CliError> {
    let factorization = int_arith::factor(q).map_err(|e| CliError::invalid(e.to_string()))?;
    if factorization.pairs().len() != 1 {
        return Err(CliError::invalid(format!("q = {q} is not a prime power")));
    }
    let (p, e) = factorization.pairs()[0];
    FqConfig::new(p, e).map_err(|e| CliError::invalid(e.to_string()))
}

fn parse_class(text: &str) -> Result<CensusClass, CliError> {
    match text {
        "S" | "s" => Ok(CensusClass::S),
        "T" | "t" => Ok(CensusClass::T),
        other => Err(CliError::invalid(format!(
            "class must be S or T, got `{other}`"
        ))),
    }
}

fn effective_search_config(ctx: &Context, args: &DecideArgs) -> Result<SearchConfig, CliError> {
    let mut sc = ctx.config.search_config();
    if let Some(d) = args.delta {
        sc.height = HeightPolicy::AbcHeuristic { delta: d };
    }
    if let Some(h) = args.height {
        sc.height = HeightPolicy::Fixed(h);
    }
    if let Some(b) = args.prime_bound {
        sc.obstruction_prime_bound = b;
    }
    if !args.extra_moduli.is_empty() {
        sc.extra_moduli = args.extra_moduli.clone();
    }
    sc.validate().map_err(|e| CliError::invalid(e.to_string()))?;
    Ok(sc)
}

fn search_fingerprint(sc: &SearchConfig) -> String {
    format!(
        "z1;h={:?};b={};xm={:?}",
        sc.height, sc.obstruction_prime_bound, sc.extra_moduli
    )
}

fn cmd_basis(ctx: &Context, args: BasisArgs) -> Result<u8, CliError> {
    let rendered = if args.ff {
        let map = kv_args(&args.values)?;
        let q: u64 = kv_need(&map, "q")?
            .parse()
            .map_err(|_| CliError::invalid("q must be an integer"))?;
        let cfg = fq_from_q(q)?;
        let f = parse_poly(kv_need(&map, "f")?, &cfg)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        let field = PureCubicFF::from_f(cfg.clone(), &f)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        integral_basis_ff(&field).display(&cfg)
    } else {
        if args.values.len() != 1 {
            return Err(CliError::invalid("basis expects exactly one integer n"));
        }
        let n: u64 = args.values[0]
            .parse()
            .map_err(|_| CliError::invalid("n must be a positive integer"))?;
        let field = CubeFreeInt::from_n(n).map_err(|e| CliError::invalid(e.to_string()))?;
        let basis =
            cubic_field_z::integral_basis(&field).map_err(|e| CliError::internal(e.to_string()))?;
        basis.display(&field)
    };
    if ctx.json {
        println!("{}", json!({ "basis": rendered }));
    } else {
        println!("{rendered}");
    }
    Ok(EXIT_OK)
}

fn verdict_z_line(v: &VerdictZ) -> String {
    match v {
        VerdictZ::Monogenic { x, y } => format!("MONOGENIC X={x} Y={y}"),
        VerdictZ::NotMonogenic { modulus } => format!("NOT_MONOGENIC mod={modulus}"),
        VerdictZ::Undetermined { height } => format!("UNDETERMINED height={height}"),
    }
}

fn verdict_ff_line(v: &FFVerdict, cfg: &FqConfig) -> String {
    match v {
        FFVerdict::Monogenic { x, y, alpha } => format!(
            "MONOGENIC X={} Y={} alpha={}",
            format_poly(x, cfg),
            format_poly(y, cfg),
            alpha
        ),
        FFVerdict::NotMonogenic => "NOT_MONOGENIC (complete search)".to_string(),
    }
}

fn cmd_decide(ctx: &mut Context, args: DecideArgs) -> Result<u8, CliError> {
    if args.ff {
        let map = kv_args(&args.values)?;
        let q: u64 = kv_need(&map, "q")?
            .parse()
            .map_err(|_| CliError::invalid("q must be an integer"))?;
        let cfg = fq_from_q(q)?;
        let g = parse_poly(kv_need(&map, "g")?, &cfg)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        let h = parse_poly(kv_need(&map, "h")?, &cfg)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        let field = PureCubicFF::new(cfg.clone(), g.clone(), h.clone())
            .map_err(|e| CliError::invalid(e.to_string()))?;
        let key = CacheKey::Ff {
            q,
            g: g.coeffs().to_vec(),
            h: h.coeffs().to_vec(),
        };
        let fingerprint = ctx.config.ff_fingerprint();
        let verdict = match ctx.cache.get(&key, &fingerprint) {
            Some(CachedVerdict::Ff(v)) => v.clone(),
            _ => {
                let v = match args.backend.as_str() {
                    "brute" => decide_monogenic_ff(&field),
                    "congruence" => decide_monogenic_ff_congruence(&field, ctx.config.seed),
                    other => {
                        return Err(CliError::invalid(format!(
                            "backend must be brute or congruence, got `{other}`"
                        )))
                    }
                }
                .map_err(|e| CliError::invalid(e.to_string()))?;
                ctx.cache
                    .append(vec![(key, fingerprint, CachedVerdict::Ff(v.clone()))])?;
                v
            }
        };
        if ctx.json {
            println!(
                "{}",
                json!({
                    "q": q,
                    "g": format_poly(&g, &cfg),
                    "h": format_poly(&h, &cfg),
                    "verdict": verdict,
                })
            );
        } else {
            println!("{}", verdict_ff_line(&verdict, &cfg));
        }
        Ok(EXIT_OK)
    } else {
        if args.values.len() != 2 {
            return Err(CliError::invalid("decide expects `k m`"));
        }
        let k: u64 = args.values[0]
            .parse()
            .map_err(|_| CliError::invalid("k must be a positive integer"))?;
        let m: u64 = args.values[1]
            .parse()
            .map_err(|_| CliError::invalid("m must be a positive integer"))?;
        let sc = effective_search_config(ctx, &args)?;
        let key = CacheKey::Z { k, m };
        let fingerprint = search_fingerprint(&sc);
        let verdict = match ctx.cache.get(&key, &fingerprint) {
            Some(CachedVerdict::Z(v)) => *v,
            _ => {
                let v = thue_z::decide_monogenic(k, m, &sc)
                    .map_err(|e| CliError::invalid(e.to_string()))?;
                ctx.cache
                    .append(vec![(key, fingerprint, CachedVerdict::Z(v))])?;
                v
            }
        };
        if ctx.json {
            println!("{}", json!({ "k": k, "m": m, "verdict": verdict }));
        } else {
            println!("{}", verdict_z_line(&verdict));
        }
        match verdict {
            VerdictZ::Undetermined { .. } => Ok(EXIT_UNDETERMINED),
            _ => Ok(EXIT_OK),
        }
    }
}

fn cmd_census_z(ctx: &mut Context, args: CensusZArgs) -> Result<u8, CliError> {
    let class = parse_class(&args.class)?;
    let mut sc = ctx.config.search_config();
    if let Some(h) = args.height {
        sc.height = HeightPolicy::Fixed(h);
    }
    sc.validate().map_err(|e| CliError::invalid(e.to_string()))?;
    let fingerprint = search_fingerprint(&sc);

    // consult the cache: a fully covered range needs no recomputation
    let eligible = census_z::eligible_m(args.k, class, args.limit)
        .map_err(|e| CliError::invalid(e.to_string()))?;
    let cached: Option<Vec<census_z::CensusRecordZ>> = eligible
        .iter()
        .map(|&m| {
            match ctx.cache.get(&CacheKey::Z { k: args.k, m }, &fingerprint) {
                Some(CachedVerdict::Z(v)) => Some(census_z::CensusRecordZ { m, verdict: *v }),
                _ => None,
            }
        })
        .collect();
    let report = match cached {
        Some(records) => census_z::assemble_report(args.k, class, args.limit, records),
        None => census_z::enumerate_census(args.k, class, args.limit, &sc)
            .map_err(|e| CliError::invalid(e.to_string()))?,
    };
    let batch: Vec<_> = report
        .records
        .iter()
        .map(|r| {
            (
                CacheKey::Z { k: args.k, m: r.m },
                fingerprint.clone(),
                CachedVerdict::Z(r.verdict),
            )
        })
        .collect();
    ctx.cache.append(batch)?;

    let csv = census_z::census_csv(&report).map_err(|e| CliError::internal(e.to_string()))?;
    let stem = format!("census_z_k{}_{}_N{}", args.k, class, args.limit);
    let csv_path = ctx.out_dir.join(format!("{stem}.csv"));
    write_atomic(&csv_path, csv.as_bytes())?;
    let last = report.density.last();
    let metadata = json!({
        "k": args.k,
        "class": class.to_string(),
        "limit": args.limit,
        "search": {
            "height": format!("{:?}", sc.height),
            "obstruction_prime_bound": sc.obstruction_prime_bound,
            "extra_moduli": sc.extra_moduli,
        },
        "tool_version": env!("CARGO_PKG_VERSION"),
        "eligible": last.map_or(0, |d| d.eligible),
        "monogenic": last.map_or(0, |d| d.monogenic),
        "not_monogenic": last.map_or(0, |d| d.not_monogenic),
        "undetermined": last.map_or(0, |d| d.undetermined),
        "density": report.density,
    });
    let json_path = ctx.out_dir.join(format!("{stem}.json"));
    write_atomic(
        &json_path,
        serde_json::to_string_pretty(&metadata)
            .map_err(|e| CliError::internal(e.to_string()))?
            .as_bytes(),
    )?;
    if ctx.json {
        println!("{metadata}");
    } else {
        println!(
            "wrote {} ({} eligible, {} monogenic, {} not monogenic, {} undetermined)",
            csv_path.display(),
            last.map_or(0, |d| d.eligible),
            last.map_or(0, |d| d.monogenic),
            last.map_or(0, |d| d.not_monogenic),
            last.map_or(0, |d| d.undetermined),
        );
    }
    Ok(EXIT_OK)
}

fn cmd_census_ff(ctx: &mut Context, args: CensusFfArgs) -> Result<u8, CliError> {
    let cfg = fq_from_q(args.q)?;
    let g = parse_poly(&args.g, &cfg).map_err(|e| CliError::invalid(e.to_string()))?;
    let fingerprint = ctx.config.ff_fingerprint();

    let mut lookup = |h: &FqPoly| -> Option<Option<FFWitness>> {
        let key = CacheKey::Ff {
            q: args.q,
            g: g.coeffs().to_vec(),
            h: h.coeffs().to_vec(),
        };
        match ctx.cache.get(&key, &fingerprint) {
            Some(CachedVerdict::Ff(FFVerdict::Monogenic { x, y, alpha })) => Some(Some(FFWitness {
                x: x.clone(),
                y: y.clone(),
                alpha: *alpha,
            })),
            Some(CachedVerdict::Ff(FFVerdict::NotMonogenic)) => Some(None),
            _ => None,
        }
    };
    let rebuilt = census_ff::assemble_ug_report(&cfg, &g, args.n, args.monic_only, &mut lookup)
        .map_err(census_ff_err)?;
    let report = match rebuilt {
        Some(report) => report,
        None => census_ff::enumerate_ug(&cfg, &g, args.n, ctx.config.budget, args.monic_only)
            .map_err(census_ff_err)?,
    };

    // record every eligible verdict: members are monogenic, the rest are not
    let mut batch: Vec<(CacheKey, String, CachedVerdict)> = Vec::new();
    let mut member_set: HashMap<&FqPoly, &FFWitness> = HashMap::new();
    for (h, w) in &report.members {
        member_set.insert(h, w);
    }
    for d in 0..=args.n {
        let total = if args.monic_only {
            crate::ff_arith::monic_count(args.q, d)
        } else {
            crate::ff_arith::all_count(args.q, d)
        };
        for idx in 0..total {
            let h = if args.monic_only {
                crate::ff_arith::monic_by_index(args.q, d, idx)
            } else {
                crate::ff_arith::poly_by_index(args.q, d, idx)
            };
            let sf = crate::ff_arith::is_square_free_poly(&h, &cfg)
                .map_err(|e| CliError::internal(e.to_string()))?;
            if !sf || !g.gcd_monic(&h, &cfg).is_one() {
                continue;
            }
            let verdict = match member_set.get(&h) {
                Some(w) => FFVerdict::Monogenic {
                    x: w.x.clone(),
                    y: w.y.clone(),
                    alpha: w.alpha,
                },
                None => FFVerdict::NotMonogenic,
            };
            batch.push((
                CacheKey::Ff {
                    q: args.q,
                    g: g.coeffs().to_vec(),
                    h: h.coeffs().to_vec(),
                },
                fingerprint.clone(),
                CachedVerdict::Ff(verdict),
            ));
        }
    }
    ctx.cache.append(batch)?;

    let csv = census_ff::census_ff_csv(&report);
    let stem = census_ff::census_ff_file_stem(&report, &cfg);
    let csv_path = ctx.out_dir.join(format!("{stem}.csv"));
    write_atomic(&csv_path, csv.as_bytes())?;
    let metadata = json!({
        "q": args.q,
        "p": cfg.p(),
        "e": cfg.e(),
        "modulus": cfg.modulus(),
        "g": format_poly(&g, &cfg),
        "degree_bound": args.n,
        "monic_only": args.monic_only,
        "budget": ctx.config.budget,
        "seed": ctx.config.seed,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "count": report.count,
        "count_nonconstant": report.count_nonconstant,
    });
    let json_path = ctx.out_dir.join(format!("{stem}.json"));
    write_atomic(
        &json_path,
        serde_json::to_string_pretty(&metadata)
            .map_err(|e| CliError::internal(e.to_string()))?
            .as_bytes(),
    )?;
    if ctx.json {
        println!("{metadata}");
    } else {
        println!(
            "wrote {} (count={} nonconstant={})",
            csv_path.display(),
            report.count,
            report.count_nonconstant
        );
    }
    Ok(EXIT_OK)
}

fn cmd_sieve(ctx: &Context, args: SieveArgs) -> Result<u8, CliError> {
    let report = census_z::sieve_prime_density(args.a, args.b, args.x)
        .map_err(|e| CliError::invalid(e.to_string()))?;
    let csv = format!(
        "a,b,x,primes_considered,sieve_primes,sieve_ratio,partial_product,log_decay,band_ratio\n{},{},{},{},{},{},{},{},{}\n",
        report.a,
        report.b,
        report.x,
        report.primes_considered,
        report.sieve_primes,
        report.sieve_ratio,
        report.partial_product,
        report.log_decay,
        report.band_ratio
    );
    let path = ctx
        .out_dir
        .join(format!("sieve_density_a{}_b{}_x{}.csv", args.a, args.b, args.x));
    write_atomic(&path, csv.as_bytes())?;
    if ctx.json {
        println!("{}", serde_json::to_string(&report).map_err(|e| CliError::internal(e.to_string()))?);
    } else {
        println!(
            "sieve ratio {:.6} over {} primes (product {:.6}, (log x)^(-1/3) {:.6}, band {:.3})",
            report.sieve_ratio,
            report.primes_considered,
            report.partial_product,
            report.log_decay,
            report.band_ratio
        );
    }
    Ok(EXIT_OK)
}

fn cmd_omega_sum(ctx: &Context, args: OmegaArgs) -> Result<u8, CliError> {
    let cfg = fq_from_q(args.q)?;
    let mut rows = Vec::with_capacity(args.n + 1);
    for n in 0..=args.n {
        let s = census_ff::omega_sum(&cfg, n, ctx.config.budget).map_err(census_ff_err)?;
        let bound = census_ff::omega_sum_bound(args.q, n);
        rows.push((n, s, bound));
    }
    let mut csv = String::from("n,s_n,bound\n");
    for (n, s, bound) in &rows {
        csv.push_str(&format!(
            "{},{},{}\n",
            n,
            s,
            bound.map(|b| b.to_string()).unwrap_or_default()
        ));
    }
    let path = ctx
        .out_dir
        .join(format!("omega_sum_q{}_N{}.csv", args.q, args.n));
    write_atomic(&path, csv.as_bytes())?;
    if ctx.json {
        let items: Vec<_> = rows
            .iter()
            .map(|(n, s, bound)| {
                json!({"n": n, "s": s.to_string(), "bound": bound.map(|b| b.to_string())})
            })
            .collect();
        println!("{}", json!(items));
    } else {
        for (n, s, bound) in &rows {
            match bound {
                Some(b) => println!("n={n} s={s} bound={b}"),
                None => println!("n={n} s={s} bound=overflow"),
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_omega_max(ctx: &Context, args: OmegaArgs) -> Result<u8, CliError> {
    if args.n == 0 {
        return Err(CliError::invalid("N must be positive"));
    }
    let cfg = fq_from_q(args.q)?;
    let value = census_ff::omega_max(&cfg, args.n);
    if ctx.json {
        println!("{}", json!({"q": args.q, "n": args.n, "omega_max": value}));
    } else {
        println!("omega_max={value}");
    }
    Ok(EXIT_OK)
}

fn cmd_family_z(ctx: &Context, args: CensusZArgs) -> Result<u8, CliError> {
    let class = parse_class(&args.class)?;
    let members = census_z::lower_bound_family(args.k, class, args.limit)
        .map_err(|e| CliError::invalid(e.to_string()))?;
    if ctx.json {
        println!(
            "{}",
            serde_json::to_string(&members).map_err(|e| CliError::internal(e.to_string()))?
        );
    } else {
        for member in &members {
            println!("m={} x={} y={}", member.m, member.x, member.y);
        }
        println!("family size {}", members.len());
    }
    Ok(EXIT_OK)
}

fn cmd_family_ff(ctx: &Context, args: CensusFfArgs) -> Result<u8, CliError> {
    let cfg = fq_from_q(args.q)?;
    let g = parse_poly(&args.g, &cfg).map_err(|e| CliError::invalid(e.to_string()))?;
    let members =
        census_ff::lower_bound_family_ff(&cfg, &g, args.n).map_err(census_ff_err)?;
    if ctx.json {
        let items: Vec<_> = members
            .iter()
            .map(|(h, w)| {
                json!({
                    "h": format_poly(h, &cfg),
                    "x": format_poly(&w.x, &cfg),
                    "y": format_poly(&w.y, &cfg),
                    "alpha": w.alpha,
                })
            })
            .collect();
        println!("{}", json!(items));
    } else {
        for (h, w) in &members {
            println!(
                "h={} X={} Y={} alpha={}",
                format_poly(h, &cfg),
                format_poly(&w.x, &cfg),
                format_poly(&w.y, &cfg),
                w.alpha
            );
        }
        println!("family size {}", members.len());
    }
    Ok(EXIT_OK)
}
