use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use acatlab::equivariant::certified_upper_bound;
use acatlab::group::catalog_groups;
use acatlab::verify::{run_suite, SuiteReport};
use acatlab::{AcatReport, Caps, Error, ErrorKind, GroupSpec};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

/// Bounds on the analog category of finite groups.
#[derive(Parser, Debug)]
#[command(name = "acatlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; analyze and verify default to text, survey to tsv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for parallel checks.
    #[arg(long, global = true, value_name = "K")]
    parallel: Option<usize>,

    /// Seed for sampled associativity checks.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,

    /// Allow ACATLAB_CAPS to raise caps above their defaults.
    #[arg(long, global = true)]
    unsafe_caps: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report bounds for one group, given as JSON, @file or a catalog name.
    Analyze {
        group: String,
        /// Also build X(G) and derive the obstruction certificate.
        #[arg(long)]
        certify: bool,
    },
    /// Bounds for every catalog group up to an order.
    Survey {
        #[arg(long, value_name = "N")]
        max_order: usize,
    },
    /// Run a verification suite: fixed-points, connectivity, construction, lattice or all.
    Verify { suite: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

/// What a command produced: rendered output and whether every check passed.
struct Outcome {
    output: String,
    passed: bool,
}

fn caps_from(cli: &Cli) -> acatlab::Result<Caps> {
    let mut caps = match std::env::var("ACATLAB_CAPS") {
        Ok(spec) => Caps::default().with_overrides(&spec, cli.unsafe_caps)?,
        Err(_) => Caps::default(),
    };
    if let Some(seed) = cli.seed {
        caps.seed = seed;
    }
    Ok(caps)
}

fn read_group(arg: &str) -> acatlab::Result<GroupSpec> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let path = PathBuf::from(path);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            GroupSpec::parse(&text)
        }
        None => GroupSpec::parse(arg),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

const TSV_HEADER: &str = "group\torder\tq\ta_special\tlower\tupper\tsharpness\td_p";

fn tsv_row(r: &AcatReport) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.group_id,
        r.order,
        r.q,
        opt(&r.a_special),
        r.lower,
        r.upper,
        r.sharpness,
        r.d_p_list()
    )
}

fn text_report(r: &AcatReport, certificate: Option<&str>) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: String| writeln!(s, "{k:<18} {v}").expect("writing to a String");
    line("group", r.group_id.clone());
    line("order", r.order.to_string());
    for d in &r.per_prime {
        line(
            &format!("prime {}", d.p),
            format!(
                "Sylow order {}, n_p {}, normalizer order {}{}, d_p {}",
                d.sylow_order,
                d.num_sylows,
                d.normalizer_order,
                if d.self_normalizing { " (self-normalizing)" } else { "" },
                d.d_p
            ),
        );
    }
    line("q", r.q.to_string());
    line("lower", r.lower.to_string());
    line("upper", r.upper.to_string());
    line("exact", opt(&r.exact));
    line("a-special", opt(&r.a_special));
    line("sharpness", r.sharpness.to_string());
    line("range consistency", opt(&r.range_consistency));
    line("proof inequality", opt(&r.proof_inequality));
    if let Some(c) = certificate {
        line("certificate", c.to_string());
    }
    s
}

fn analyze(group: &str, certify: bool, format: Format, caps: &Caps) -> acatlab::Result<Outcome> {
    let spec = read_group(group)?;
    let g = Arc::new(spec.build(caps)?);
    let mut report = AcatReport::analyze(&g, spec.name())?;
    let mut note = None;
    if certify {
        match certified_upper_bound(&g, caps) {
            Ok(Some(cert)) => {
                report.certificate_n = Some(cert.n);
                note = Some(format!("{} ({} cells)", cert.n, cert.cells));
            }
            Ok(None) => note = Some("none: X(G) is not acyclic within the dimension cap".to_string()),
            Err(Error::Hypothesis(why)) => note = Some(format!("not applicable: {why}")),
            Err(e) => return Err(e),
        }
    }
    let output = match format {
        Format::Text => text_report(&report, note.as_deref()),
        Format::Tsv => format!("{TSV_HEADER}\n{}\n", tsv_row(&report)),
        Format::Json => {
            let mut v = json!({ "schema": SCHEMA, "report": report });
            if let Some(n) = note {
                v["certificate"] = Value::String(n);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("reports serialize"))
        }
    };
    Ok(Outcome { output, passed: true })
}

fn survey(max_order: usize, format: Format, caps: &Caps) -> acatlab::Result<Outcome> {
    caps.check("survey order", max_order, caps.order)?;
    let entries = catalog_groups(max_order, caps)?;
    let reports: Vec<AcatReport> = entries
        .par_iter()
        .map(|e| AcatReport::analyze(&e.group, e.name.as_str()))
        .collect::<acatlab::Result<_>>()?;
    let output = match format {
        Format::Json => {
            let v = json!({ "schema": SCHEMA, "reports": reports });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("reports serialize"))
        }
        Format::Tsv | Format::Text => {
            let mut s = format!("{TSV_HEADER}\n");
            for r in &reports {
                s += &tsv_row(r);
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome { output, passed: true })
}

fn verify(suite: &str, format: Format, caps: &Caps) -> acatlab::Result<Outcome> {
    let reports: Vec<SuiteReport> = run_suite(suite, caps)?;
    let passed = reports.iter().all(|r| r.passed);
    let output = match format {
        Format::Json => {
            let v = json!({ "schema": SCHEMA, "passed": passed, "suites": reports });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("reports serialize"))
        }
        Format::Tsv => {
            let mut s = "suite\tpassed\tcases\tskipped\tfailures\n".to_string();
            for r in &reports {
                s += &format!("{}\t{}\t{}\t{}\t{}\n", r.suite, r.passed, r.cases, r.skipped, r.failures);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                s += &format!(
                    "{verdict} {}: {} cases, {} skipped, {} failures\n",
                    r.suite, r.cases, r.skipped, r.failures
                );
                for c in &r.counterexamples {
                    s += &format!("  {} {}: {}\n", c.group, c.case, c.detail);
                }
            }
            s
        }
    };
    Ok(Outcome { output, passed })
}

fn run(cli: &Cli) -> acatlab::Result<Outcome> {
    let caps = caps_from(cli)?;
    if let Some(k) = cli.parallel {
        if k == 0 {
            return Err(Error::Input("--parallel needs at least one thread".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Error::Input(format!("cannot start thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Analyze { group, certify } => analyze(group, *certify, cli.format.unwrap_or(Format::Text), &caps),
        Command::Survey { max_order } => survey(*max_order, cli.format.unwrap_or(Format::Tsv), &caps),
        Command::Verify { suite } => verify(suite, cli.format.unwrap_or(Format::Text), &caps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Verification => 1,
                ErrorKind::Input => 2,
                ErrorKind::Cap => 3,
            })
        }
    }
}
