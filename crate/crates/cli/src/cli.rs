//! Command-line parsing and verb dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::config::{ConfigFile, Settings};
use crate::error::CliError;
use crate::files::read_text;
use crate::ops::{self, OPS};
use crate::report::Report;
use crate::scenario::{self, add_builtin_expectations, RunOptions, Scenario, Step, BUILTINS};

#[derive(Debug, Parser)]
#[command(name = "twistlab", version, about = "Exact verification of twists on finite group algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// TOML file with caps, seed and cache_dir; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    table_cap: Option<usize>,
    #[arg(long, global = true)]
    closure_cap: Option<usize>,
    #[arg(long, global = true)]
    aut_cap: Option<usize>,
    #[arg(long, global = true)]
    enum_cap: Option<usize>,
    #[arg(long, global = true)]
    triple_tensor_cap: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    conductor_multiplier: Option<u64>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Recompute every step and leave the cache untouched
    #[arg(long, global = true)]
    no_cache: bool,
    /// Add per-step wall-clock times to the report
    #[arg(long, global = true)]
    timing: bool,
    /// Print the human rendering instead of the machine document
    #[arg(long, global = true)]
    human: bool,
    /// Also write the machine document to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Silence progress lines on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    NormalAbelian,
    Forms,
    Triangular,
    Twists,
}

impl What {
    fn as_str(self) -> &'static str {
        match self {
            What::NormalAbelian => "normal-abelian",
            What::Forms => "forms",
            What::Triangular => "triangular",
            What::Twists => "twists",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a builtin scenario or a scenario file
    Run {
        /// Builtin name or path to a TOML scenario
        scenario: String,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        /// Override a scenario parameter, as key=value
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// List normal abelian subgroups, forms, triangular structures or twists of a group
    Enumerate {
        groupfile: PathBuf,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Check the twist axioms for a twist file on a group
    VerifyTwist { groupfile: PathBuf, twistfile: PathBuf },
    /// Product and composite of two twists (each file names its group)
    Compose { first: PathBuf, second: PathBuf },
    /// Commutator of two twists (each file names its group)
    Commutator { first: PathBuf, second: PathBuf },
    /// Class-preserving automorphisms of a group
    Classpreserving { groupfile: PathBuf },
    /// Render a saved machine report with --machine or --human
    Report {
        #[arg(long)]
        machine: bool,
        file: PathBuf,
    },
    /// List builtin scenarios and operations
    List,
}

fn settings(g: &Global) -> Result<Settings, CliError> {
    let base = match &g.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let flags = ConfigFile {
        table_cap: g.table_cap,
        closure_cap: g.closure_cap,
        aut_cap: g.aut_cap,
        enum_cap: g.enum_cap,
        triple_tensor_cap: g.triple_tensor_cap,
        seed: g.seed,
        conductor_multiplier: g.conductor_multiplier,
        cache_dir: g.cache_dir.clone(),
    };
    Settings::from_config(&base.overlay(&flags), !g.no_cache)
}

fn load_scenario(name: &str) -> Result<(Scenario, PathBuf, bool), CliError> {
    if let Some(sc) = scenario::builtin(name) {
        return Ok((sc, PathBuf::from("."), true));
    }
    let path = Path::new(name);
    if !path.is_file() {
        let names: Vec<&str> = BUILTINS.iter().map(|(n, _)| *n).collect();
        return Err(CliError::parse(name, format!("no builtin scenario or scenario file named `{name}` (builtins: {})", names.join(", "))));
    }
    let sc = Scenario::parse(&read_text(path)?, &path.display().to_string())?;
    Ok((sc, ops::base_dir(Some(path)), false))
}

fn single_step(name: &str, op: &str, args: Value) -> Scenario {
    Scenario {
        name: name.into(),
        parameters: BTreeMap::new(),
        steps: vec![Step {
            name: name.into(),
            op: op.into(),
            args: serde_json::from_value(args).expect("verb arguments are an object"),
            expect: None,
        }],
    }
}

fn path_arg(p: &Path) -> Value {
    json!(p.display().to_string())
}

fn emit(report: &Report, g: &Global) -> Result<(), CliError> {
    if let Some(out) = &g.out {
        std::fs::write(out, report.to_machine())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    }
    let text = if g.human { report.to_human() } else { report.to_machine() };
    let _ = std::io::stdout().write_all(text.as_bytes());
    Ok(())
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    let sc = match &cli.command {
        Command::List => {
            let mut out = String::from("builtin scenarios:\n");
            for (name, about) in BUILTINS {
                out.push_str(&format!("  {name:<12} {about}\n"));
            }
            out.push_str("operations:\n");
            for op in OPS {
                let params: Vec<&str> = op.params.iter().map(|p| p.name).collect();
                out.push_str(&format!("  {:<22} {} [{}]\n", op.name, op.summary, params.join(", ")));
            }
            print!("{out}");
            return Ok(0);
        }
        Command::Report { file, machine } => {
            if *machine && g.human {
                return Err(CliError::Usage("choose one of --machine and --human".into()));
            }
            let report = Report::from_machine(&read_text(file)?, &file.display().to_string())?;
            print!("{}", if g.human { report.to_human() } else { report.to_machine() });
            return Ok(0);
        }
        Command::Run { scenario, p, n, params } => {
            let (mut sc, base, is_builtin) = load_scenario(scenario)?;
            let mut overrides = BTreeMap::new();
            for (k, v) in [("p", p), ("n", n)] {
                if let Some(v) = v {
                    overrides.insert(k.to_string(), v.to_string());
                }
            }
            for kv in params {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("--param expects key=value, got `{kv}`")))?;
                overrides.insert(k.trim().to_string(), v.trim().to_string());
            }
            sc.override_parameters(&overrides)?;
            if is_builtin {
                add_builtin_expectations(&mut sc);
            }
            (sc, base)
        }
        Command::Enumerate { groupfile, what } => (
            single_step("enumerate", "enumerate", json!({ "group": path_arg(groupfile), "what": what.as_str() })),
            PathBuf::from("."),
        ),
        Command::VerifyTwist { groupfile, twistfile } => (
            single_step("verify-twist", "twist.verify", json!({ "group": path_arg(groupfile), "twist": path_arg(twistfile) })),
            PathBuf::from("."),
        ),
        Command::Compose { first, second } => (
            single_step("compose", "twist.compose", json!({ "first": path_arg(first), "second": path_arg(second) })),
            PathBuf::from("."),
        ),
        Command::Commutator { first, second } => (
            single_step("commutator", "twist.commutator", json!({ "first": path_arg(first), "second": path_arg(second) })),
            PathBuf::from("."),
        ),
        Command::Classpreserving { groupfile } => (
            single_step("classpreserving", "classpreserving", json!({ "group": path_arg(groupfile) })),
            PathBuf::from("."),
        ),
    };
    let (sc, base) = sc;
    let settings = settings(g)?;
    let quiet = g.quiet;
    let mut log = |line: &str| {
        if !quiet {
            eprintln!("{line}");
        }
    };
    let result = scenario::run(&sc, RunOptions { settings: &settings, base: &base, timing: g.timing, log: &mut log })?;
    emit(&result.report, g)?;
    Ok(result.exit_code)
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
