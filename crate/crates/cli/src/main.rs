mod presets;
mod report;
mod suites;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qinv_core::colored::{evaluate_labeled_link, ColoredError, Parity, SkeinLabel};
use qinv_core::diagram::{parse_link_file, LinkBlock};
use qinv_core::invariants::{broda, compare, rtw, InvariantError, InvariantValue, SpecialFramedLink};
use qinv_core::ring::{LaurentPoly, Level};
use qinv_core::skein::{bracket_in, Engine, EvalConfig, Generic, SkeinError};
use serde_json::{json, Value};

use crate::suites::Suite;

#[derive(Parser)]
#[command(name = "qinv", version, about = "Exact quantum invariants of framed links, 3-manifolds and 4-manifolds")]
#[command(after_help = "Exit codes: 0 ok, 1 check failure, 2 input error, 3 capacity, 4 degenerate level, 5 invalid link.\n\
Environment: QINV_MAX_CROSSINGS and QINV_MAX_WIDTH override the engine caps.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kauffman bracket of a link, optionally colored and evaluated at a level
    Bracket {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = EngineArg::Sweep)]
        engine: EngineArg,
        /// Level k; the bracket variable becomes exp(iπ/2k)
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: Option<u32>,
        /// Per-component label: a color 0..k-1, omega, omega+ or omega-
        #[arg(long = "label", value_name = "LABEL")]
        labels: Vec<String>,
    },
    /// Normalized invariant of the 3-manifold obtained by surgery
    Rtw {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = EngineArg::Sweep)]
        engine: EngineArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
    },
    /// Invariant I_k of the 4-manifold presented by a special framed link
    Broda4 {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = EngineArg::Sweep)]
        engine: EngineArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
    },
    /// Run an invariance suite and print a per-check table
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Level to check at; defaults to 3 and 4
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: Option<u32>,
    },
    /// List the bundled presets
    Presets,
}

#[derive(Args)]
struct Input {
    /// Use a bundled presentation instead of a file
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
    /// Name of the link block to use; defaults to the first
    #[arg(long)]
    link: Option<String>,
    /// Link file, or - for standard input
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Statesum,
    Sweep,
    Both,
}

impl EngineArg {
    fn engines(self) -> Vec<Engine> {
        match self {
            EngineArg::Statesum => vec![Engine::StateSum],
            EngineArg::Sweep => vec![Engine::Sweep],
            EngineArg::Both => vec![Engine::StateSum, Engine::Sweep],
        }
    }
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::StateSum => "statesum",
        Engine::Sweep => "sweep",
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        Failure::new(3, e.to_string())
    }
}

impl From<ColoredError> for Failure {
    fn from(e: ColoredError) -> Self {
        match e {
            ColoredError::Skein(s) => s.into(),
            other => Failure::new(5, other.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Colored(c) => c.into(),
            InvariantError::DegenerateLevel { .. } => Failure::new(4, e.to_string()),
            InvariantError::IncomparableLevels { .. } => Failure::new(1, e.to_string()),
            other => Failure::new(5, other.to_string()),
        }
    }
}

fn load(input: &Input) -> Result<LinkBlock, Failure> {
    let (source, text) = match (&input.preset, &input.file) {
        (Some(name), _) => {
            let text = presets::preset_text(name)
                .ok_or_else(|| Failure::new(2, format!("unknown preset {name}; see `qinv presets`")))?;
            (format!("preset {name}"), text)
        }
        (None, Some(path)) if path.as_os_str() == "-" => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::new(2, format!("reading standard input: {e}")))?;
            ("<stdin>".to_string(), text)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::new(2, format!("reading {}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        (None, None) => return Err(Failure::new(2, "give a link FILE or --preset NAME")),
    };
    let blocks = parse_link_file(&text).map_err(|e| Failure::new(2, format!("{source}: {e}")))?;
    match &input.link {
        Some(name) => blocks
            .into_iter()
            .find(|b| &b.name == name)
            .ok_or_else(|| Failure::new(2, format!("{source}: no link named {name}"))),
        None => Ok(blocks.into_iter().next().expect("a file has at least one block")),
    }
}

fn parse_label(s: &str, k: u32) -> Result<SkeinLabel, Failure> {
    match s {
        "omega" => Ok(SkeinLabel::Omega(Parity::All)),
        "omega+" => Ok(SkeinLabel::Omega(Parity::Even)),
        "omega-" => Ok(SkeinLabel::Omega(Parity::Odd)),
        _ => match s.parse::<u32>() {
            Ok(n) if n < k => Ok(SkeinLabel::Color(n)),
            Ok(n) => Err(Failure::new(5, format!("color {n} needs level above {n}; got k={k}"))),
            Err(_) => Err(Failure::new(2, format!("bad label {s:?}; expected a color, omega, omega+ or omega-"))),
        },
    }
}

fn level(k: u32) -> Level {
    Level::new(k as i64).expect("clap enforces k >= 2")
}

fn cmd_bracket(input: &Input, engine: EngineArg, k: Option<u32>, labels: &[String]) -> Result<Value, Failure> {
    let block = load(input)?;
    let d = &block.diagram;
    let base = EvalConfig::from_env();
    let mut out = json!({
        "command": "bracket",
        "link": block.name,
        "components": d.component_count(),
        "crossings": d.crossing_count(),
        "engine": match engine { EngineArg::Both => "both", _ => engine_name(engine.engines()[0]) },
    });

    if !labels.is_empty() {
        let k = k.ok_or_else(|| Failure::new(5, "--label needs --k"))?;
        if labels.len() != d.component_count() {
            return Err(Failure::new(
                5,
                format!("{} labels for {} components", labels.len(), d.component_count()),
            ));
        }
        let parsed = labels.iter().map(|s| parse_label(s, k)).collect::<Result<Vec<_>, _>>()?;
        let mut values = Vec::new();
        for e in engine.engines() {
            values.push(evaluate_labeled_link(d, &parsed, level(k), &base.with_engine(e))?);
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            return Err(Failure::new(1, "engines disagree"));
        }
        out["level"] = json!(k);
        out["labels"] = json!(labels);
        out["colored"] = report::cyclotomic(&values[0]);
        return Ok(out);
    }

    let mut values: Vec<LaurentPoly> = Vec::new();
    for e in engine.engines() {
        values.push(bracket_in(&Generic, d.word(), &base.with_engine(e))?);
    }
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(Failure::new(1, "engines disagree"));
    }
    let generic = &values[0];
    out["generic"] = report::laurent(generic);
    out["generic_text"] = json!(generic.to_string());
    if let Some(k) = k {
        out["level"] = json!(k);
        out["specialized"] = report::cyclotomic(&generic.specialize(&level(k).ring()));
    }
    Ok(out)
}

fn agree(values: &[InvariantValue]) -> Result<(), Failure> {
    for w in values.windows(2) {
        if !compare(&w[0], &w[1])?.equal {
            return Err(Failure::new(1, "engines disagree"));
        }
    }
    Ok(())
}

fn cmd_rtw(input: &Input, engine: EngineArg, k: u32) -> Result<Value, Failure> {
    let block = load(input)?;
    if !block.special.is_empty() {
        return Err(Failure::new(5, "rtw takes ordinary surgery links; this link declares special components"));
    }
    let cfg = EvalConfig::from_env();
    let values = engine
        .engines()
        .into_iter()
        .map(|e| rtw(&block.diagram, level(k), &cfg.with_engine(e)))
        .collect::<Result<Vec<_>, _>>()?;
    agree(&values)?;
    Ok(report::invariant("rtw", &block.name, &values[0]))
}

fn cmd_broda(input: &Input, engine: EngineArg, k: u32) -> Result<Value, Failure> {
    let block = load(input)?;
    let sl = SpecialFramedLink::new(block.diagram.clone(), &block.special)?;
    let cfg = EvalConfig::from_env();
    let values = engine
        .engines()
        .into_iter()
        .map(|e| broda(&sl, level(k), &cfg.with_engine(e)))
        .collect::<Result<Vec<_>, _>>()?;
    agree(&values)?;
    Ok(report::invariant("broda4", &block.name, &values[0]))
}

fn cmd_check(suite: Suite, k: Option<u32>) -> Result<(), Failure> {
    let levels = k.map_or(vec![3, 4], |k| vec![k]);
    let rows = suites::run(suite, &levels, &EvalConfig::from_env());
    let group_w = rows.iter().map(|r| r.group.chars().count()).max().unwrap_or(0);
    let name_w = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
    for r in &rows {
        println!(
            "{:<4}  {:<gw$}  {:<nw$}  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.group,
            r.name,
            r.detail,
            gw = group_w,
            nw = name_w
        );
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    println!("{} checks, {failed} failed", rows.len());
    if failed > 0 {
        Err(Failure::new(1, format!("{failed} checks failed")))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = match cli.command {
        Command::Bracket { input, engine, k, labels } => cmd_bracket(&input, engine, k, &labels)?,
        Command::Rtw { input, engine, k } => cmd_rtw(&input, engine, k)?,
        Command::Broda4 { input, engine, k } => cmd_broda(&input, engine, k)?,
        Command::Check { suite, k } => return cmd_check(suite, k),
        Command::Presets => {
            for p in presets::PRESETS {
                println!("{:<12} {}", p.name, p.summary);
            }
            return Ok(());
        }
    };
    println!("{}", serde_json::to_string_pretty(&json).expect("JSON values serialize"));
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
