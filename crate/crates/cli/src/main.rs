use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use qspin::characters::{decompose, dimension, Decomposition};
use qspin::localization::{localized_index, numeric_cross_check, orbit_model, su3_flag_bundle, ExpansionConfig, ManifoldModel};
use qspin::model_file::{model_from_json, model_to_json, ModelFileError};
use qspin::orbits::{admissible_orbits_on_face, orbit_spin_index, OrbitIndex, Region};
use qspin::qr::{align, validate_provider, verify_qr, ReducedIndexProvider};
use qspin::rational::{parse_rational, Weight};
use qspin::RootSystem;

const EXIT_USAGE: u8 = 1;
const EXIT_COMPUTE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "qspin", version, about = "Exact spin^c indices, orbit quantization and [Q,R]=0 checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the faces of the dominant chamber, their ρ_σ and stabilizer classes
    Faces {
        #[arg(long, default_value = "A2")]
        group: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Admissible coadjoint orbits on one face, with their spin^c indices
    Orbits {
        #[arg(long, default_value = "A2")]
        group: String,
        /// Free fundamental weights of the face: `w1`, `w1+w2`, `open` or `origin`
        #[arg(long)]
        face: String,
        /// Lower bound on every free coordinate
        #[arg(long, default_value = "0")]
        min: String,
        /// Upper bound on every free coordinate
        #[arg(long)]
        max: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Equivariant index of a model by fixed-point localization
    Index {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        expansion: ExpansionArgs,
        /// Also compare against the fixed-point sum at random torus points
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decompose the index of a model into irreducibles
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        expansion: ExpansionArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the index with the sum over reduced spaces; exit 3 on mismatch
    VerifyQr {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        expansion: ExpansionArgs,
        /// `constant:<int>`, `table:<path>` or `from-multiplicities`
        #[arg(long, default_value = "constant:1")]
        provider: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write a built-in model as a JSON model file
    ExportModel {
        #[command(flatten)]
        model: ModelArgs,
        /// Destination file; stdout when omitted
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// `su3-flag-bundle`, `orbit`, or a path to a JSON model file
    #[arg(long)]
    model: String,
    /// Group for `--model orbit`
    #[arg(long, default_value = "A2")]
    group: String,
    /// Dominant point for `--model orbit`, e.g. `3/2,0`
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    /// Inclusive sweep `LO..HI` over `a`
    #[arg(long, value_name = "LO..HI")]
    a_range: Option<String>,
    /// Inclusive sweep `LO..HI` over `b`
    #[arg(long, value_name = "LO..HI")]
    b_range: Option<String>,
}

#[derive(Args)]
struct ExpansionArgs {
    /// Expansion depth along ξ; the exact support bound when omitted
    #[arg(long, env = "QSPIN_CUTOFF")]
    cutoff: Option<u64>,
    #[arg(long, default_value_t = qspin::localization::DEFAULT_STABILITY_MARGIN)]
    margin: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
}

impl ExpansionArgs {
    fn config(&self) -> ExpansionConfig {
        ExpansionConfig { direction: None, cutoff: self.cutoff, stability_margin: self.margin }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    fn compute(e: impl std::fmt::Display) -> Self {
        CliError::Compute(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Faces { group, out } => faces(&group, out.format),
        Command::Orbits { group, face, min, max, out } => orbits(&group, &face, &min, &max, out.format),
        Command::Index { model, expansion, check, out } => index(&model, &expansion, check, out.format),
        Command::Decompose { model, expansion, out } => decomposition(&model, &expansion, out.format),
        Command::VerifyQr { model, expansion, provider, out } => verify(&model, &expansion, &provider, out.format),
        Command::ExportModel { model, output } => export(&model, output),
    }
}

fn emit(format: Format, value: &Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("values serialize")),
        Format::Table => print!("{text}"),
    }
}

fn root_system(label: &str) -> CliResult<RootSystem> {
    RootSystem::from_label(label).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_weight(s: &str) -> CliResult<Weight> {
    s.parse().map_err(|e: qspin::rational::ParseRationalError| CliError::Usage(e.to_string()))
}

fn parse_range(s: &str) -> CliResult<Vec<i64>> {
    let bad = || CliError::Usage(format!("bad range `{s}`; expected LO..HI"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn faces(group: &str, format: Format) -> CliResult<u8> {
    let rs = root_system(group)?;
    let classes = rs.stabilizer_classes();
    let class_id = |f: &qspin::Face| classes.iter().position(|c| c.faces().contains(f)).unwrap() + 1;
    let faces = rs.faces();
    let rows: Vec<[String; 5]> = faces
        .iter()
        .map(|f| {
            let free: Vec<String> = f.free_coords(rs.rank()).iter().map(|i| format!("ω{}", i + 1)).collect();
            [
                f.to_string(),
                if free.is_empty() { "-".into() } else { free.join("+") },
                f.rho_sigma().to_string(),
                f.levi_positive_roots().len().to_string(),
                class_id(f).to_string(),
            ]
        })
        .collect();
    let mut text = format!("group {}\n\n", rs.label());
    text.push_str(&align(&["face", "spanned by", "ρ_σ", "|Δ_σ+|", "class"], &rows));
    text.push('\n');
    for (k, c) in classes.iter().enumerate() {
        let fs: Vec<String> = c.faces().iter().map(|f| f.to_string()).collect();
        text.push_str(&format!("class {}: {}\n", k + 1, fs.join(" ")));
    }
    let value = json!({
        "group": rs.label(),
        "faces": faces.iter().map(|f| json!({
            "face": f.label(),
            "rho_sigma": f.rho_sigma(),
            "levi_positive_roots": f.levi_positive_roots(),
            "class": class_id(f),
        })).collect::<Vec<_>>(),
        "stabilizer_classes": classes.iter().map(|c| c.faces().iter().map(|f| f.label()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    emit(format, &value, text);
    Ok(0)
}

fn parse_face(rs: &RootSystem, spec: &str) -> CliResult<qspin::Face> {
    let rank = rs.rank();
    let free: Vec<usize> = match spec.trim() {
        "open" => (0..rank).collect(),
        "origin" | "0" => Vec::new(),
        s => s
            .split(['+', ','])
            .map(|t| {
                t.trim()
                    .strip_prefix(['w', 'ω'])
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1 && n <= rank)
                    .map(|n| n - 1)
                    .ok_or_else(|| CliError::Usage(format!("bad face `{spec}`; use e.g. w1, w1+w2, open, origin")))
            })
            .collect::<CliResult<_>>()?,
    };
    let vanishing: Vec<usize> = (0..rank).filter(|i| !free.contains(i)).collect();
    Ok(rs.face(&vanishing))
}

fn orbits(group: &str, face: &str, min: &str, max: &str, format: Format) -> CliResult<u8> {
    let rs = root_system(group)?;
    let face = parse_face(&rs, face)?;
    let lo = parse_rational(min).map_err(|e| CliError::Usage(e.to_string()))?;
    let hi = parse_rational(max).map_err(|e| CliError::Usage(e.to_string()))?;
    let region = Region::cube(lo, hi, face.free_coords(rs.rank()).len());
    let found = admissible_orbits_on_face(&face, &region, &rs).map_err(CliError::compute)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for o in &found {
        let idx = orbit_spin_index(o, &rs).map_err(CliError::compute)?;
        let hw = match &idx {
            OrbitIndex::Irreducible(l) => (l - rs.rho()).to_string(),
            OrbitIndex::Zero => "-".into(),
        };
        rows.push([o.mu().to_string(), idx.to_string(), hw]);
        entries.push(json!({"mu": o.mu(), "index": idx}));
    }
    let mut text = format!("admissible orbits on {face} of {} with coordinates in [{min}, {max}]\n\n", rs.label());
    text.push_str(&align(&["μ", "Q_K(K·μ)", "highest weight"], &rows));
    let value = json!({"group": rs.label(), "face": face.label(), "orbits": entries});
    emit(format, &value, text);
    Ok(0)
}

fn load_models(args: &ModelArgs) -> CliResult<Vec<ManifoldModel>> {
    let sweep = args.a_range.is_some() || args.b_range.is_some();
    match args.model.as_str() {
        "su3-flag-bundle" => {
            let values = |single: Option<i64>, range: &Option<String>, name: &str| -> CliResult<Vec<i64>> {
                match (single, range) {
                    (Some(v), None) => Ok(vec![v]),
                    (None, Some(r)) => parse_range(r),
                    (Some(_), Some(_)) => Err(CliError::Usage(format!("give either --{name} or --{name}-range"))),
                    (None, None) => Err(CliError::Usage(format!("su3-flag-bundle needs --{name}"))),
                }
            };
            let av = values(args.a, &args.a_range, "a")?;
            let bv = values(args.b, &args.b_range, "b")?;
            if av.iter().chain(&bv).any(|&x| x < 0) {
                return Err(CliError::Usage("a and b must be non-negative".into()));
            }
            Ok(av.iter().flat_map(|&a| bv.iter().map(move |&b| su3_flag_bundle(a, b))).collect())
        }
        "orbit" => {
            if sweep {
                return Err(CliError::Usage("--a-range/--b-range only apply to su3-flag-bundle".into()));
            }
            let rs = root_system(&args.group)?;
            let mu = parse_weight(args.mu.as_deref().ok_or_else(|| CliError::Usage("orbit model needs --mu".into()))?)?;
            if mu.len() != rs.rank() {
                return Err(CliError::Usage(format!("--mu needs {} coordinates for {}", rs.rank(), rs.label())));
            }
            orbit_model(&rs, &mu).map(|m| vec![m]).map_err(CliError::compute)
        }
        path => {
            if sweep {
                return Err(CliError::Usage("--a-range/--b-range only apply to su3-flag-bundle".into()));
            }
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read model `{path}`: {e}")))?;
            match model_from_json(&text) {
                Ok(m) => Ok(vec![m]),
                Err(ModelFileError::Json(e)) => Err(CliError::Usage(format!("{path}: {e}"))),
                Err(e) => Err(CliError::Compute(format!("{path}: {e}"))),
            }
        }
    }
}

/// Runs `f` over the models in parallel and keeps parameter order.
fn for_each_model<T: Send>(
    models: &[ManifoldModel],
    f: impl Fn(&ManifoldModel) -> CliResult<T> + Sync,
) -> CliResult<Vec<T>> {
    models.par_iter().map(&f).collect::<Vec<_>>().into_iter().collect()
}

/// One value for a single model, an array for a sweep.
fn collect(values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.into_iter().next().unwrap()
    } else {
        Value::Array(values)
    }
}

fn with_model_name(m: &ManifoldModel, e: impl std::fmt::Display) -> CliError {
    CliError::Compute(format!("{}: {e}", m.name))
}

fn index(args: &ModelArgs, exp: &ExpansionArgs, check: bool, format: Format) -> CliResult<u8> {
    let models = load_models(args)?;
    let cfg = exp.config();
    let results = for_each_model(&models, |m| {
        let chi = localized_index(m, &cfg).map_err(|e| with_model_name(m, e))?;
        let deviation = if check {
            Some(numeric_cross_check(m, &chi, exp.trials, exp.seed).map_err(|e| with_model_name(m, e))?)
        } else {
            None
        };
        let rows: Vec<[String; 2]> = chi.terms().map(|(w, c)| [w.to_string(), c.to_string()]).collect();
        let mut text = format!("{}\n", m.name);
        if rows.is_empty() {
            text.push_str("(zero character)\n");
        } else {
            text.push_str(&align(&["weight", "coeff"], &rows));
        }
        let mut value = json!({"model": m.name, "character": chi, "degree": chi.degree()});
        if let Some(d) = deviation {
            text.push_str(&format!("numeric deviation over {} points: {d:.3e}\n", exp.trials));
            value["numeric_deviation"] = json!(d);
        }
        Ok((value, text))
    })?;
    finish(format, results);
    Ok(0)
}

fn decomposition_rows(d: &Decomposition, rs: &RootSystem) -> CliResult<(Vec<[String; 4]>, Vec<Value>)> {
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (lambda, m) in d.iter() {
        let hw = lambda - rs.rho();
        let dim = dimension(lambda, rs).map_err(CliError::compute)?;
        rows.push([lambda.to_string(), hw.to_string(), m.to_string(), dim.to_string()]);
        entries.push(json!({"lambda": lambda, "highest_weight": hw, "multiplicity": m, "dimension": dim}));
    }
    Ok((rows, entries))
}

fn decomposition(args: &ModelArgs, exp: &ExpansionArgs, format: Format) -> CliResult<u8> {
    let models = load_models(args)?;
    let cfg = exp.config();
    let results = for_each_model(&models, |m| {
        let rs = &m.root_system;
        let chi = localized_index(m, &cfg).map_err(|e| with_model_name(m, e))?;
        let d = decompose(&chi, rs).map_err(|e| with_model_name(m, e))?;
        let (rows, entries) = decomposition_rows(&d, rs)?;
        let mut text = format!("{}\n", m.name);
        if rows.is_empty() {
            text.push_str("(zero)\n");
        } else {
            text.push_str(&align(&["λ", "λ−ρ", "multiplicity", "dimension"], &rows));
        }
        Ok((json!({"model": m.name, "decomposition": entries}), text))
    })?;
    finish(format, results);
    Ok(0)
}

enum ProviderSpec {
    Fixed(ReducedIndexProvider),
    FromMultiplicities,
}

fn parse_provider(spec: &str) -> CliResult<ProviderSpec> {
    if spec == "from-multiplicities" {
        return Ok(ProviderSpec::FromMultiplicities);
    }
    if let Some(v) = spec.strip_prefix("constant:") {
        let v = v.trim().parse().map_err(|_| CliError::Usage(format!("bad constant in `{spec}`")))?;
        return Ok(ProviderSpec::Fixed(ReducedIndexProvider::Constant(v)));
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read table `{path}`: {e}")))?;
        let p = ReducedIndexProvider::table_from_json(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
        return Ok(ProviderSpec::Fixed(p));
    }
    Err(CliError::Usage(format!("unknown provider `{spec}`; use constant:<int>, table:<path> or from-multiplicities")))
}

fn verify(args: &ModelArgs, exp: &ExpansionArgs, provider: &str, format: Format) -> CliResult<u8> {
    let spec = parse_provider(provider)?;
    let models = load_models(args)?;
    let cfg = exp.config();
    let results = for_each_model(&models, |m| {
        let provider = match &spec {
            ProviderSpec::Fixed(p) => p.clone(),
            ProviderSpec::FromMultiplicities => {
                let chi = localized_index(m, &cfg).map_err(|e| with_model_name(m, e))?;
                let d = decompose(&chi, &m.root_system).map_err(|e| with_model_name(m, e))?;
                ReducedIndexProvider::FromMultiplicities(d)
            }
        };
        let warnings: Vec<String> = validate_provider(&provider, m).iter().map(|w| w.to_string()).collect();
        let report = verify_qr(m, &provider, &cfg).map_err(|e| with_model_name(m, e))?;
        let mut value = report.to_json();
        value["provider_warnings"] = json!(warnings);
        let mut text = report.to_table();
        for w in &warnings {
            text.push_str(&format!("warning: {w}\n"));
        }
        Ok(((value, text), report.is_match()))
    })?;
    let all_match = results.iter().all(|(_, ok)| *ok);
    finish(format, results.into_iter().map(|(r, _)| r).collect());
    Ok(if all_match { 0 } else { EXIT_MISMATCH })
}

fn finish(format: Format, results: Vec<(Value, String)>) {
    let (values, texts): (Vec<Value>, Vec<String>) = results.into_iter().unzip();
    emit(format, &collect(values), texts.join("\n"));
}

fn export(args: &ModelArgs, output: Option<PathBuf>) -> CliResult<u8> {
    let models = load_models(args)?;
    let [model] = &models[..] else {
        return Err(CliError::Usage("export-model writes a single model; drop the ranges".into()));
    };
    let text = serde_json::to_string_pretty(&model_to_json(model)).expect("values serialize") + "\n";
    match output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}
