use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fbpath_cli::checks::{run_check, CheckId, CheckReport, SweepConfig};
use fbpaths::bijection::{partition_to_path, path_profile, PathLabels};
use fbpaths::cfmn::{format_mnsystem, model_zones};
use fbpaths::charform::{
    chi_bosonic, chi_bruteforce, chi_fermionic_infinite_trunc, chi_fermionic_lambda,
    chi_fermionic_m, chi_recurrence, dki_closed, gordon_trunc, rocha_caridi_trunc, CharLabels,
};
use fbpaths::pathmodel::{enumerate_paths, PathJson};
use fbpaths::transforms::{
    b1, b2, b3, b_transform, d_transform, particle_content, particle_move, particle_move_back,
    sector_decompose,
};
use fbpaths::{Error, ModelParams, Partition, Path, QPolynomial};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fbpath", version, about = "Forrester-Baxter paths and their polynomial identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharMethod {
    Bruteforce,
    Recurrence,
    Bosonic,
    FermionicM,
    FermionicLambda,
    Dki,
}

#[derive(Clone, Copy, ValueEnum)]
enum LimitMethod {
    Rocha,
    Fermionic,
    Gordon,
}

#[derive(Subcommand)]
enum Command {
    /// List the paths of P^{p,p'}_{a,b,c}(L).
    Enumerate {
        p: i64,
        p_prime: i64,
        a: i64,
        b: i64,
        c: i64,
        len: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also report each ground-state path's sector.
        #[arg(long)]
        sectors: bool,
        /// Only print paths of this weight.
        #[arg(long)]
        wt: Option<i64>,
    },
    /// Finitized character χ^{p,p'}_{a,b,c}(L).
    Char {
        p: i64,
        p_prime: i64,
        a: i64,
        b: i64,
        c: i64,
        len: usize,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: CharMethod,
        #[arg(long)]
        json: bool,
    },
    /// The L -> ∞ character truncated at `--degree`. For `gordon`, p = 2 and p' = 2e_0 + 1.
    Limit {
        p: i64,
        p_prime: i64,
        #[arg(long, value_enum, default_value = "rocha")]
        method: LimitMethod,
        #[arg(long, default_value_t = 20)]
        degree: usize,
        /// Rocha-Caridi label r (default r_0).
        #[arg(long)]
        r: Option<i64>,
        /// Rocha-Caridi label s (default s_0).
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Apply a `;`-separated transform script to a path JSON (file or `-`).
    ///
    /// Steps: `b1`, `b2:K`, `b3:K:[parts]`, `b:K:[parts]`, `d`, `move:J`,
    /// `back:J`, `content`.
    Transform {
        path: String,
        #[arg(long)]
        script: String,
    },
    /// Map a path JSON to its partition, or with `--reverse` a partition JSON back to a path.
    Bijection {
        input: String,
        #[arg(long)]
        reverse: bool,
        /// `p,p',a,b,c,L` labels for `--reverse`.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Print the solved mn-system of p'/p.
    Mnsystem { p: i64, p_prime: i64 },
    /// Run the agreement sweeps.
    Verify {
        /// Comma-separated subset of: golden, mnsystem, bijection, characters,
        /// transforms, sectors, dki, limits, gordon, cf.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        /// Perturb one bosonic polynomial to exercise failure reporting.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long)]
        max_p_prime: Option<i64>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
    },
}

/// Domain or usage failure, exit 2. An empty message marks a closed stdout.
struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Fail(String::new())
        } else {
            Fail(e.to_string())
        }
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(format!("bad JSON: {e}"))
    }
}

type CmdResult = Result<ExitCode, Fail>;

fn read_input(src: &str) -> Result<String, Fail> {
    if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(src).map_err(|e| Fail(format!("{src}: {e}")))
    }
}

/// Accepts a bare path JSON or a document holding one under `"path"`.
fn read_path(src: &str) -> Result<Path, Fail> {
    let mut v: Value = serde_json::from_str(&read_input(src)?)?;
    if let Some(inner) = v.get_mut("path") {
        v = inner.take();
    }
    let pj: PathJson = serde_json::from_value(v)?;
    Ok(pj.to_path()?)
}

fn path_json(h: &Path) -> Value {
    serde_json::to_value(h.to_json()).expect("path JSON serializes")
}

fn labels(p: i64, p_prime: i64, a: i64, b: i64, c: i64, len: usize) -> Result<CharLabels, Fail> {
    Ok(CharLabels::new(ModelParams::new(p, p_prime)?, a, b, c, len)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    p: i64,
    p_prime: i64,
    a: i64,
    b: i64,
    c: i64,
    len: usize,
    format: Format,
    sectors: bool,
    wt: Option<i64>,
) -> CmdResult {
    let l = labels(p, p_prime, a, b, c, len)?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    for h in enumerate_paths(l.params, a, b, c, len) {
        if wt.is_some_and(|w| w != h.wt()) {
            continue;
        }
        let sector = if sectors && h.is_ground_state() { Some(sector_decompose(&h)?) } else { None };
        match format {
            Format::Text => {
                let heights: Vec<String> = h.heights().iter().map(i64::to_string).collect();
                write!(out, "{}  wt={}", heights.join(" "), h.wt())?;
                if let Some(s) = &sector {
                    let lambdas: Vec<&[i64]> = s.lambdas.iter().map(Partition::parts).collect();
                    write!(out, "  n={:?} lambda={:?}", s.n_hat, lambdas)?;
                }
                writeln!(out)?;
            }
            Format::Jsonl => {
                let mut v = path_json(&h);
                v["wt"] = json!(h.wt());
                v["m"] = json!(h.m());
                let ss = h.striking_sequence();
                v["striking"] = json!(ss.pairs);
                if let Some(s) = &sector {
                    let lambdas: Vec<Value> = s.lambdas.iter().map(Partition::to_json).collect();
                    v["sector"] = json!({ "n": s.n_hat, "lambdas": lambdas });
                }
                writeln!(out, "{v}")?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn print_poly(poly: &QPolynomial, as_json: bool) {
    if as_json {
        println!("{}", json!({ "polynomial": poly.to_json(), "text": poly.to_string() }));
    } else {
        println!("{poly}");
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_char(p: i64, p_prime: i64, a: i64, b: i64, c: i64, len: usize, method: CharMethod, as_json: bool) -> CmdResult {
    let l = labels(p, p_prime, a, b, c, len)?;
    let ground = (a, b, c) == (l.params.s0(), l.params.s0(), l.params.s0() + 1);
    let require_ground = || {
        if ground {
            Ok(())
        } else {
            Err(Fail(format!("this method needs the ground-state labels ({0},{0},{1})", l.params.s0(), l.params.s0() + 1)))
        }
    };
    let poly = match method {
        CharMethod::Bruteforce => chi_bruteforce(&l),
        CharMethod::Recurrence => chi_recurrence(&l),
        CharMethod::Bosonic => chi_bosonic(&l),
        CharMethod::FermionicM => {
            require_ground()?;
            chi_fermionic_m(&l.params, len)?
        }
        CharMethod::FermionicLambda => {
            require_ground()?;
            chi_fermionic_lambda(&l.params, len)?
        }
        CharMethod::Dki => {
            let r = l.r();
            let l64 = len as i64;
            dki_closed(p_prime, a, (l64 - a + b) / 2, (l64 + a - b) / 2, p - r, r)?
        }
    };
    print_poly(&poly, as_json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_limit(p: i64, p_prime: i64, method: LimitMethod, degree: usize, r: Option<i64>, s: Option<i64>, as_json: bool) -> CmdResult {
    let params = ModelParams::new(p, p_prime)?;
    let series = match method {
        LimitMethod::Rocha => {
            rocha_caridi_trunc(p, p_prime, r.unwrap_or(params.r0()), s.unwrap_or(params.s0()), degree)?
        }
        LimitMethod::Fermionic => chi_fermionic_infinite_trunc(p, p_prime, degree)?,
        LimitMethod::Gordon => {
            if p != 2 || p_prime % 2 == 0 {
                return Err(Fail(format!("Gordon's sum needs (2, 2e0+1), got ({p},{p_prime})")));
            }
            gordon_trunc((p_prime as usize - 1) / 2, degree)?
        }
    };
    print_poly(&series.to_polynomial(), as_json);
    Ok(ExitCode::SUCCESS)
}

fn parse_parts(s: &str) -> Result<Partition, Fail> {
    let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']'));
    let inner = inner.ok_or_else(|| Fail(format!("expected [parts], got {s:?}")))?;
    let parts = inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Fail(format!("bad part {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

fn parse_count(s: Option<&&str>, step: &str) -> Result<usize, Fail> {
    s.ok_or_else(|| Fail(format!("{step} needs a count")))?
        .trim()
        .parse()
        .map_err(|_| Fail(format!("bad count in {step:?}")))
}

fn cmd_transform(src: &str, script: &str) -> CmdResult {
    let mut h = read_path(src)?;
    for step in script.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let fields: Vec<&str> = step.splitn(3, ':').collect();
        h = match fields[0] {
            "b1" => b1(&h)?,
            "b2" => b2(&h, parse_count(fields.get(1), step)?)?,
            "b3" | "b" => {
                let k = parse_count(fields.get(1), step)?;
                let lambda = parse_parts(fields.get(2).copied().unwrap_or("[]"))?;
                if fields[0] == "b" { b_transform(&h, k, &lambda)? } else { b3(&h, k, &lambda)? }
            }
            "d" => d_transform(&h)?,
            "move" => particle_move(&h, parse_count(fields.get(1), step)?)?,
            "back" => particle_move_back(&h, parse_count(fields.get(1), step)?)?,
            "content" => {
                let (below, record) = particle_content(&h)?;
                eprintln!("k={} lambda={:?}", record.k, record.lambda.parts());
                below
            }
            other => return Err(Fail(format!("unknown transform step {other:?}"))),
        };
    }
    println!("{}", path_json(&h));
    Ok(ExitCode::SUCCESS)
}

fn parse_labels(s: &str) -> Result<PathLabels, Fail> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Fail(format!("bad label {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let [p, pp, a, b, c, len] = v[..] else {
        return Err(Fail("--labels needs p,p',a,b,c,L".into()));
    };
    if len < 0 {
        return Err(Fail("L must be non-negative".into()));
    }
    let l = labels(p, pp, a, b, c, len as usize)?;
    Ok(PathLabels { params: l.params, a, b, c, len: l.len })
}

fn cmd_bijection(src: &str, reverse: bool, label_text: Option<&str>) -> CmdResult {
    if reverse {
        let labels = parse_labels(label_text.ok_or_else(|| Fail("--reverse needs --labels".into()))?)?;
        let v: Value = serde_json::from_str(&read_input(src)?)?;
        let mu = Partition::from_json(&v)?;
        let h = partition_to_path(&mu, &labels)?;
        println!("{}", path_json(&h));
    } else {
        let h = read_path(src)?;
        let profile = path_profile(&h);
        let r = CharLabels::new(*h.params(), h.a(), h.b(), h.c(), h.len())?.r();
        let mut v = profile.partition.to_json();
        v["N"] = json!(profile.n);
        v["M"] = json!(profile.m);
        v["alpha"] = json!(h.params().p() - r);
        v["beta"] = json!(r);
        v["wt"] = json!(profile.partition.wt());
        println!("{v}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_mnsystem(p: i64, p_prime: i64) -> CmdResult {
    print!("{}", format_mnsystem(&model_zones(&ModelParams::new(p, p_prime)?)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    only: Option<&str>,
    as_json: bool,
    inject_fault: bool,
    max_p_prime: Option<i64>,
    max_len: Option<usize>,
    degree: Option<usize>,
) -> CmdResult {
    let ids: Vec<CheckId> = match only {
        None => CheckId::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(|s| CheckId::from_name(s.trim()).ok_or_else(|| Fail(format!("unknown check {s:?}"))))
            .collect::<Result<_, _>>()?,
    };
    let mut cfg = SweepConfig { inject_fault, ..SweepConfig::default() };
    if let Some(v) = max_p_prime {
        cfg.char_max_p_prime = v;
    }
    if let Some(v) = max_len {
        cfg.char_max_len = v;
    }
    if let Some(v) = degree {
        cfg.degree = v;
    }
    let mut reports: Vec<CheckReport> = Vec::with_capacity(ids.len());
    for id in ids {
        let start = Instant::now();
        let report = run_check(id, &cfg);
        // timing stays off stdout so reports are byte-identical across runs
        eprintln!("{id}: {:.3}s", start.elapsed().as_secs_f64());
        reports.push(report);
    }
    if as_json {
        let all: Vec<Value> = reports.iter().map(CheckReport::to_json).collect();
        println!("{}", serde_json::to_string_pretty(&all)?);
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    Ok(if reports.iter().all(CheckReport::passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn configure_threads() {
    if let Some(n) = std::env::var("FBPATH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // the global pool can only be built once; a second call is harmless
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { p, p_prime, a, b, c, len, format, sectors, wt } => {
            cmd_enumerate(p, p_prime, a, b, c, len, format, sectors, wt)
        }
        Command::Char { p, p_prime, a, b, c, len, method, json } => cmd_char(p, p_prime, a, b, c, len, method, json),
        Command::Limit { p, p_prime, method, degree, r, s, json } => cmd_limit(p, p_prime, method, degree, r, s, json),
        Command::Transform { path, script } => cmd_transform(&path, &script),
        Command::Bijection { input, reverse, labels } => cmd_bijection(&input, reverse, labels.as_deref()),
        Command::Mnsystem { p, p_prime } => cmd_mnsystem(p, p_prime),
        Command::Verify { only, json, inject_fault, max_p_prime, max_len, degree } => {
            cmd_verify(only.as_deref(), json, inject_fault, max_p_prime, max_len, degree)
        }
    };
    match result {
        Ok(code) => code,
        Err(Fail(msg)) if msg.is_empty() => ExitCode::SUCCESS,
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
