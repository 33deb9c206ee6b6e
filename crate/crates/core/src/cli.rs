//! Command-line front end. `run` parses arguments, executes one subcommand
//! and returns the process exit code: 0 on success, 1 when a verification
//! suite reports a violated verdict, 2 on usage or parameter errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds;
use crate::codes::{self, LinearCode};
use crate::concat::{self, ConcatenatedCode};
use crate::error::Error;
use crate::gf::Field;
use crate::pauli::PauliSpace;
use crate::stab::{self, StabilizerCode};
use crate::verify::{self, ExperimentResult, McKind, SamplerKind};

pub const SEED_ENV: &str = "STABFORGE_SEED";

#[derive(Parser, Debug)]
#[command(name = "stabforge", version, about = "Random stabilizer codes over GF(q): sampling, distances, bounds and checks")]
struct Cli {
    /// Master seed; defaults to $STABFORGE_SEED, then to fresh entropy.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a uniformly random [[n,k]]_q stabilizer code.
    SampleCode {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Sample a concatenated code: GRS outer code over GF(q^{2n}) with N random rate-one inner codes.
    SampleConcat {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long = "K")]
        big_k: usize,
    },
    /// Exhaustive minimum distance of a classical or concatenated code.
    MinDistance(CodeSource),
    /// Quantum distance min wt(C_N \ C_S) of a stabilizer code.
    QuantumDistance {
        /// Stabilizer code JSON; otherwise a code is sampled.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Weight distribution of a classical code.
    WeightDist(CodeSource),
    /// QGVB and distance/probability bounds over a grid of rates.
    QgvbTable {
        #[arg(long)]
        q: u64,
        /// Inner length used for the finite-n bounds.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// start:stop:step
        #[arg(long, default_value = "0:1:0.1")]
        r_grid: String,
    },
    /// Distance and probability bounds at one parameter point.
    Thm2Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long = "R")]
        r: f64,
    },
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args, Debug)]
struct CodeSource {
    /// Code JSON (classical, GRS or concatenated); otherwise a GRS code is built.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Alphabet size of the GRS code.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long = "K")]
    big_k: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Coset sizes and partition of the constraint sets Ω_{A,b}.
    Lemma2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        tuples: usize,
    },
    /// Exact Pr[σ ∈ N(S)] for every ℓ ≤ n and weight class of σ.
    Lemma3 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: Option<usize>,
        /// Also run Monte Carlo with this many trials.
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Exact Pr[σ ∈ S_c] for every 1 ≤ k ≤ n and weight class of σ, c = e_1.
    Lemma4 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Per-symbol collision probability of a random inner code.
    Lemma5 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Chi-square test of a sampler against its enumerated target set.
    Uniformity {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// ℓ for stabilizers, k for codes.
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Exact distances of sampled concatenated codes.
    DistanceExperiment {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long = "K")]
        big_k: usize,
        #[arg(long, default_value_t = 200)]
        samples: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Stabilizer,
    Code,
}

/// Parameters of one invocation, embedded in every output.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub big_k: Option<usize>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub seed: u64,
    pub threads: usize,
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => match v.trim().parse() {
                Ok(s) => s,
                Err(_) => {
                    eprintln!("error: {SEED_ENV}={v:?} is not a 64-bit unsigned integer");
                    return 2;
                }
            },
            Err(_) => rand::random(),
        },
    };
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return 2;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 2;
        }
    };
    let result = pool.install(|| dispatch(&cli, seed));
    match result {
        Ok((text, violated)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            i32::from(violated)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn base_config(cli: &Cli, seed: u64, name: &str, default_format: Format) -> RunConfig {
    RunConfig {
        subcommand: name.to_string(),
        seed,
        threads: cli.threads,
        format: format_name(cli.format.unwrap_or(default_format)).to_string(),
        output: cli.output.as_ref().map(|p| p.display().to_string()),
        ..RunConfig::default()
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Pretty => "pretty",
    }
}

fn json_doc(config: &RunConfig, key: &str, value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "config": config, key: value })).expect("json");
    s.push('\n');
    s
}

fn csv_doc(config: &RunConfig, body: &str) -> String {
    format!("# config: {}\n{body}", serde_json::to_string(config).expect("json"))
}

fn pretty_header(config: &RunConfig) -> String {
    format!("# {} (seed {})\n", config.subcommand, config.seed)
}

fn read_json(path: &PathBuf) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Accepts either a bare record or one wrapped as `{"config": …, key: record}`.
fn unwrap_record(v: Value, keys: &[&str]) -> Value {
    for key in keys {
        if let Some(inner) = v.get(*key) {
            return inner.clone();
        }
    }
    v
}

enum LoadedCode {
    Linear(LinearCode),
    Concat(Box<ConcatenatedCode>),
}

fn load_code(src: &CodeSource, config: &mut RunConfig) -> std::result::Result<LoadedCode, Failure> {
    if let Some(path) = &src.input {
        if src.q.is_some() || src.big_n.is_some() || src.big_k.is_some() {
            return Err(usage("--input conflicts with --q/--N/--K"));
        }
        config.input = Some(path.display().to_string());
        let v = unwrap_record(read_json(path)?, &["code", "concat"]);
        if v.get("outer").is_some() {
            let cc: ConcatenatedCode = serde_json::from_value(v).map_err(|e| usage(e.to_string()))?;
            return Ok(LoadedCode::Concat(Box::new(cc)));
        }
        let code: LinearCode = serde_json::from_value(v).map_err(|e| usage(e.to_string()))?;
        return Ok(LoadedCode::Linear(code));
    }
    let (Some(q), Some(big_n), Some(big_k)) = (src.q, src.big_n, src.big_k) else {
        return Err(usage("give --input, or all of --q, --N and --K for a GRS code"));
    };
    config.q = Some(q);
    config.big_n = Some(big_n);
    config.big_k = Some(big_k);
    let field = Field::with_order(q)?;
    if big_n > field.order() as usize {
        return Err(usage(format!("--N {big_n} exceeds the field order {q}")));
    }
    let alphas: Vec<_> = field.elements().take(big_n).collect();
    Ok(LoadedCode::Linear(codes::grs(&field, &alphas, &vec![1; big_n], big_k)?.into_code()))
}

fn parse_grid(spec: &str) -> std::result::Result<Vec<f64>, Failure> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("bad --r-grid {spec:?}; expected start:stop:step")))?;
    let [start, stop, step] = parts[..] else {
        return Err(usage(format!("bad --r-grid {spec:?}; expected start:stop:step")));
    };
    if step.is_nan() || step <= 0.0 || !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || stop < start {
        return Err(usage(format!("bad --r-grid {spec:?}; need 0 <= start <= stop <= 1 and step > 0")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| (start + i as f64 * step).min(stop)).map(|r| (r * 1e12).round() / 1e12).collect())
}

fn dispatch(cli: &Cli, seed: u64) -> Outcome {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    match &cli.command {
        Command::SampleCode { q, n, k } => {
            let mut config = base_config(cli, seed, "sample-code", Format::Json);
            config.q = Some(*q);
            config.n = Some(*n);
            config.k = Some(*k);
            if *n == 0 || k > n {
                return Err(usage("need n >= 1 and 0 <= k <= n"));
            }
            let space = PauliSpace::with_q(*q, *n)?;
            let code = stab::sample_code(&space, *k, &mut rng)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json_doc(&config, "code", serde_json::to_value(&code).expect("json")),
                Format::Csv => {
                    let mut body = String::from("role,index,pauli\n");
                    for (role, list) in
                        [("stabilizer", code.stabilizer().gens()), ("logical_x", code.logical_x()), ("logical_z", code.logical_z())]
                    {
                        for (i, p) in list.iter().enumerate() {
                            body.push_str(&format!("{role},{i},{p}\n"));
                        }
                    }
                    csv_doc(&config, &body)
                }
                Format::Pretty => {
                    let mut s = pretty_header(&config);
                    s.push_str(&format!("[[{n},{k}]]_{q} stabilizer code\n"));
                    for g in code.stabilizer().gens() {
                        s.push_str(&format!("  S   {g}\n"));
                    }
                    for (x, z) in code.logical_x().iter().zip(code.logical_z()) {
                        s.push_str(&format!("  X̄   {x}\n  Z̄   {z}\n"));
                    }
                    s
                }
            };
            Ok((text, false))
        }
        Command::SampleConcat { q, n, big_n, big_k } => {
            let mut config = base_config(cli, seed, "sample-concat", Format::Json);
            config.q = Some(*q);
            config.n = Some(*n);
            config.big_n = Some(*big_n);
            config.big_k = Some(*big_k);
            let cc = concat::sample_concat(*q, *n, *big_n, *big_k, &mut rng)?.with_seed(seed);
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Pretty => format!(
                    "{}concatenated code: {} inner [[{n},{n}]]_{q} codes, outer [{big_n},{}] GRS over GF({}), toy_mode={}\n",
                    pretty_header(&config),
                    cc.inners().len(),
                    cc.outer().dimension(),
                    cc.outer().field().order(),
                    cc.toy_mode()
                ),
                Format::Csv => return Err(usage("sample-concat supports json and pretty output")),
                Format::Json => json_doc(&config, "concat", serde_json::to_value(&cc).expect("json")),
            };
            Ok((text, false))
        }
        Command::MinDistance(src) => {
            let mut config = base_config(cli, seed, "min-distance", Format::Json);
            let (d, len, dim, kind) = match load_code(src, &mut config)? {
                LoadedCode::Linear(c) => (c.min_distance()?, c.len(), c.dimension(), "linear"),
                LoadedCode::Concat(cc) => (concat::concat_distance(&cc)?, cc.len(), cc.outer().dimension(), "concatenated"),
            };
            let value = json!({"kind": kind, "length": len, "dimension": dim, "d": d});
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json_doc(&config, "result", value),
                Format::Csv => csv_doc(&config, &format!("kind,length,dimension,d\n{kind},{len},{dim},{d}\n")),
                Format::Pretty => format!("{}{kind} code, length {len}, dimension {dim}: d = {d}\n", pretty_header(&config)),
            };
            Ok((text, false))
        }
        Command::QuantumDistance { input, q, n, k } => {
            let mut config = base_config(cli, seed, "quantum-distance", Format::Json);
            let code: StabilizerCode = match input {
                Some(path) => {
                    if q.is_some() || n.is_some() || k.is_some() {
                        return Err(usage("--input conflicts with --q/--n/--k"));
                    }
                    config.input = Some(path.display().to_string());
                    serde_json::from_value(unwrap_record(read_json(path)?, &["code"])).map_err(|e| usage(e.to_string()))?
                }
                None => {
                    let (Some(q), Some(n), Some(k)) = (q, n, k) else {
                        return Err(usage("give --input, or all of --q, --n and --k to sample a code"));
                    };
                    config.q = Some(*q);
                    config.n = Some(*n);
                    config.k = Some(*k);
                    if *n == 0 || k > n {
                        return Err(usage("need n >= 1 and 0 <= k <= n"));
                    }
                    stab::sample_code(&PauliSpace::with_q(*q, *n)?, *k, &mut rng)?
                }
            };
            let cs = codes::stabilizer_code(code.stabilizer())?;
            let cn = codes::normalizer_code(&code)?;
            let (d, degenerate) = codes::quantum_distance(&cs, &cn)?;
            let dn = cn.min_distance()?;
            let value = json!({"n": code.n(), "k": code.k(), "q": code.space().q(), "d": d, "d_normalizer": dn,
                "degenerate": degenerate, "code": serde_json::to_value(&code).expect("json")});
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json_doc(&config, "result", value),
                Format::Csv => csv_doc(&config, &format!("d,d_normalizer,degenerate\n{d},{dn},{degenerate}\n")),
                Format::Pretty => format!(
                    "{}[[{},{},{d}]]_{} code; normalizer distance {dn}; degenerate: {degenerate}\n",
                    pretty_header(&config),
                    code.n(),
                    code.k(),
                    code.space().q()
                ),
            };
            Ok((text, false))
        }
        Command::WeightDist(src) => {
            let mut config = base_config(cli, seed, "weight-dist", Format::Csv);
            let LoadedCode::Linear(code) = load_code(src, &mut config)? else {
                return Err(usage("weight-dist takes a classical code"));
            };
            let dist = code.weight_distribution()?;
            let text = match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => csv_doc(&config, &codes::weight_distribution_csv(&dist)),
                Format::Json => json_doc(&config, "weight_distribution", json!(dist)),
                Format::Pretty => {
                    let mut s = pretty_header(&config);
                    for (w, c) in dist.iter().enumerate() {
                        s.push_str(&format!("{w:>4} {c:>12}\n"));
                    }
                    s
                }
            };
            Ok((text, false))
        }
        Command::QgvbTable { q, n, r_grid } => {
            let mut config = base_config(cli, seed, "qgvb-table", Format::Csv);
            config.q = Some(*q);
            config.n = Some(*n as usize);
            config.r = Some(r_grid.clone());
            let grid = parse_grid(r_grid)?;
            let mut rows = Vec::with_capacity(grid.len());
            for r in grid {
                let qg = bounds::qgvb(*q, r)?;
                let thm = if r < 1.0 { Some(bounds::theorem2_bounds(*q, *n, r)?) } else { None };
                rows.push((r, qg, thm));
            }
            let text = match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut body = String::from("q,R,qgvb,thm2_bound,prob_bound,vacuous\n");
                    for (r, qg, t) in &rows {
                        match t {
                            Some(t) => body.push_str(&format!(
                                "{q},{r},{qg},{},{},{}\n",
                                t.relative_distance, t.success_probability, t.vacuous
                            )),
                            None => body.push_str(&format!("{q},{r},{qg},,,true\n")),
                        }
                    }
                    csv_doc(&config, &body)
                }
                Format::Json => json_doc(
                    &config,
                    "rows",
                    rows.iter()
                        .map(|(r, qg, t)| json!({"q": q, "R": r, "qgvb": qg,
                            "thm2_bound": t.map(|t| t.relative_distance),
                            "prob_bound": t.map(|t| t.success_probability),
                            "vacuous": t.is_none_or(|t| t.vacuous)}))
                        .collect(),
                ),
                Format::Pretty => {
                    let mut s = pretty_header(&config);
                    s.push_str(&format!("{:>6} {:>12} {:>14} {:>14}\n", "R", "qgvb", "thm2", "prob"));
                    for (r, qg, t) in &rows {
                        let (a, b) = t.map_or(("-".into(), "-".into()), |t| {
                            (format!("{:.6}", t.relative_distance), format!("{:.6}", t.success_probability))
                        });
                        s.push_str(&format!("{r:>6.3} {qg:>12.6} {a:>14} {b:>14}\n"));
                    }
                    s
                }
            };
            Ok((text, false))
        }
        Command::Thm2Bound { q, n, r } => {
            let mut config = base_config(cli, seed, "thm2-bound", Format::Json);
            config.q = Some(*q);
            config.n = Some(*n as usize);
            config.r = Some(r.to_string());
            let t = bounds::theorem2_bounds(*q, *n, *r)?;
            let params = bounds::BoundParams::new(*q, *n, *r)?;
            let qg = bounds::qgvb(*q, *r)?;
            let value = json!({"bounds": t, "params": params, "qgvb": qg});
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json_doc(&config, "result", value),
                Format::Csv => csv_doc(
                    &config,
                    &format!(
                        "q,n,R,qgvb,thm2_bound,prob_bound,vacuous\n{q},{n},{r},{qg},{},{},{}\n",
                        t.relative_distance, t.success_probability, t.vacuous
                    ),
                ),
                Format::Pretty => format!(
                    "{}q={q} n={n} R={r}\n  qgvb            {qg:.9}\n  distance bound  {:.9}{}\n  probability     {:.9}\n",
                    pretty_header(&config),
                    t.relative_distance,
                    if t.vacuous { "  (vacuous)" } else { "" },
                    t.success_probability
                ),
            };
            Ok((text, false))
        }
        Command::Verify(v) => run_verify(cli, seed, v),
    }
}

fn run_verify(cli: &Cli, seed: u64, cmd: &VerifyCommand) -> Outcome {
    let name = match cmd {
        VerifyCommand::Lemma2 { .. } => "verify lemma2",
        VerifyCommand::Lemma3 { .. } => "verify lemma3",
        VerifyCommand::Lemma4 { .. } => "verify lemma4",
        VerifyCommand::Lemma5 { .. } => "verify lemma5",
        VerifyCommand::Uniformity { .. } => "verify uniformity",
        VerifyCommand::DistanceExperiment { .. } => "verify distance-experiment",
    };
    let config = &mut base_config(cli, seed, name, Format::Json);
    let mut results: Vec<ExperimentResult> = Vec::new();
    match cmd {
        VerifyCommand::Lemma2 { q, n, tuples } => {
            config.q = Some(*q);
            config.n = Some(*n);
            config.trials = Some(*tuples as u64);
            results.push(verify::lemma2_check(*q, *n, *tuples, seed)?);
        }
        VerifyCommand::Lemma3 { q, n, ell, trials } => {
            config.q = Some(*q);
            config.n = Some(*n);
            config.ell = *ell;
            config.trials = *trials;
            let ells: Vec<usize> = match ell {
                Some(l) if l > n => return Err(usage("need ell <= n")),
                Some(l) => vec![*l],
                None => (0..=*n).collect(),
            };
            for &l in &ells {
                for w in 1..=*n {
                    let sigma = verify::weight_class_rep(*n, w);
                    results.push(verify::exact_normalizer_prob(*q, *n, l, &sigma)?);
                    if let Some(t) = trials {
                        let kind = McKind::Normalizer { q: *q, n: *n, ell: l, sigma };
                        results.push(verify::mc_prob(&kind, *t, seed)?);
                    }
                }
            }
        }
        VerifyCommand::Lemma4 { q, n, k, trials } => {
            config.q = Some(*q);
            config.n = Some(*n);
            config.k = *k;
            config.trials = *trials;
            let ks: Vec<usize> = match k {
                Some(0) => return Err(usage("need k >= 1; the label c must be nonzero")),
                Some(k) if k > n => return Err(usage("need k <= n")),
                Some(k) => vec![*k],
                None => (1..=*n).collect(),
            };
            for &k in &ks {
                let mut c = vec![0; 2 * k];
                c[0] = 1;
                for w in 1..=*n {
                    let sigma = verify::weight_class_rep(*n, w);
                    results.push(verify::exact_coset_prob(*q, *n, k, &sigma, &c)?);
                    if let Some(t) = trials {
                        let kind = McKind::Coset { q: *q, n: *n, k, sigma, c: c.clone() };
                        results.push(verify::mc_prob(&kind, *t, seed)?);
                    }
                }
            }
        }
        VerifyCommand::Lemma5 { q, n, trials } => {
            config.q = Some(*q);
            config.n = Some(*n);
            config.trials = Some(*trials);
            results.push(verify::mc_prob(&McKind::default_collision(*q, *n)?, *trials, seed)?);
        }
        VerifyCommand::Uniformity { kind, q, n, dim, trials } => {
            config.q = Some(*q);
            config.n = Some(*n);
            config.trials = Some(*trials);
            let kind = match kind {
                KindArg::Stabilizer => {
                    config.ell = Some(*dim);
                    SamplerKind::Stabilizer
                }
                KindArg::Code => {
                    config.k = Some(*dim);
                    SamplerKind::Code
                }
            };
            results.push(verify::sampler_uniformity(kind, *q, *n, *dim, *trials, seed)?);
        }
        VerifyCommand::DistanceExperiment { q, n, big_n, big_k, samples } => {
            config.q = Some(*q);
            config.n = Some(*n);
            config.big_n = Some(*big_n);
            config.big_k = Some(*big_k);
            config.samples = Some(*samples);
            results.extend(verify::distance_experiment(*q, *n, *big_n, *big_k, *samples, seed)?.results);
        }
    }
    let violated = verify::any_violated(&results);
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = serde_json::to_string(&json!({ "config": config })).expect("json");
            s.push('\n');
            for r in &results {
                s.push_str(&r.to_json_line());
                s.push('\n');
            }
            s
        }
        Format::Csv => csv_doc(config, &verify::summary_csv(&results)),
        Format::Pretty => {
            let mut s = pretty_header(config);
            for r in &results {
                let value = r.exact.clone().or(r.estimate.map(|e| format!("{e:.6}"))).unwrap_or_default();
                let bound = r.bound.map(|b| format!("{b:.6}")).unwrap_or_default();
                let params = serde_json::to_string(&r.params).expect("json");
                s.push_str(&format!(
                    "{:<24} {:<10} value {:<14} bound {:<10} {}\n",
                    r.experiment,
                    serde_json::to_value(r.verdict).expect("enum").as_str().expect("string"),
                    value,
                    bound,
                    params
                ));
            }
            s
        }
    };
    Ok((text, violated))
}
