use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cayley_core::cayley::{build_cayley_graph, CayleyGraph, ConnectionSet};
use cayley_core::census::{family_groups, run_census, CensusOptions, Family, Sampling, DEFAULT_MAX_EXHAUSTIVE_ORDER};
use cayley_core::certfile::CertificateFile;
use cayley_core::constructions::{find_witness_y, prop1_certificate, thm2_certificate, RegularCertificate};
use cayley_core::export::{export_graph, Format};
use cayley_core::group::{build_group_capped, DEFAULT_MAX_ORDER};
use cayley_core::oracle::{
    automorphism_group, enumerate_regular_subgroups, verify_certificate, AutMode, VerificationReport,
    DEFAULT_MAX_AUT, MAX_FACTORIAL_N,
};
use cayley_core::Error;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "cayley", version, about = "Cayley graphs, regular-representation certificates and an automorphism oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Group spec: cyclic:<n> | abelian:<n1>x… | dihedral:<k> | gendih:<n1>x…
    #[arg(long, global = true)]
    group: Option<String>,

    /// Comma-separated connection-set tokens, e.g. `1,3,x:0`
    #[arg(long, global = true, allow_hyphen_values = true)]
    set: Option<String>,

    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, default_value = "graph6")]
    format: String,

    /// Largest group order to construct (census: largest order for exhaustive runs)
    #[arg(long, global = true)]
    max_order: Option<usize>,

    /// Largest automorphism group to materialize
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_AUT)]
    max_aut: usize,

    /// Cross-check with the factorial search where the vertex count allows it
    #[arg(long, global = true)]
    oracle: bool,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Random sample count per group (census); exhaustive when absent
    #[arg(long, global = true)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build Cay(G, S) and export it
    Build,
    /// Dihedral certificate for an even circulant
    Prop1 {
        /// Re-verify a certificate file instead of building one
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Abelian certificate for a witnessed generalized dihedral Cayley graph
    Thm2 {
        /// Use this witness instead of searching for one
        #[arg(long)]
        witness: Option<String>,
        /// Re-verify a certificate file instead of building one
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Automorphism group order and generators
    Aut,
    /// Regular subgroups of the automorphism group, by isomorphism type
    Regulars,
    /// Run a construction over many connection sets, JSON Lines output
    Census {
        #[arg(long)]
        family: String,
        /// Order range `lo..hi` (inclusive) instead of --group
        #[arg(long)]
        orders: Option<String>,
        /// Record per-row wall-clock time
        #[arg(long)]
        timings: bool,
    },
}

enum Failure {
    Error(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(e.into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::SelfCheck(_) | Error::InvalidWitness { .. } => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn usage(msg: &str) -> Failure {
    Failure::Error(Error::Unsupported(msg.to_string()))
}

impl Cli {
    fn graph(&self) -> Result<CayleyGraph, Failure> {
        let spec = self.group.as_deref().ok_or_else(|| usage("--group is required"))?;
        let group = build_group_capped(spec, self.max_order.unwrap_or(DEFAULT_MAX_ORDER))?;
        let set = ConnectionSet::parse(&group, self.set.as_deref().unwrap_or(""))?;
        Ok(build_cayley_graph(&set))
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                if !text.ends_with('\n') {
                    stdout.write_all(b"\n")?;
                }
            }
        }
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Build => {
            let graph = cli.graph()?;
            let format: Format = cli.format.parse()?;
            cli.emit(&export_graph(&graph, format)?)
        }
        Command::Prop1 { check: Some(path) } | Command::Thm2 { check: Some(path), .. } => {
            let file = CertificateFile::from_json(&fs::read_to_string(path)?)?;
            finish_report(&file.verify()?)
        }
        Command::Prop1 { check: None } => {
            let cert = prop1_certificate(&cli.graph()?)?;
            emit_certificate(cli, &cert)
        }
        Command::Thm2 { witness, check: None } => {
            let graph = cli.graph()?;
            let y = match witness {
                Some(tok) => graph.group().parse_token(tok)?,
                None => find_witness_y(graph.group(), graph.connection())?.ok_or_else(|| {
                    Failure::Verification(format!(
                        "no witness in xA for {{{}}}",
                        graph.connection().tokens().join(",")
                    ))
                })?,
            };
            let cert = thm2_certificate(&graph, &y)?;
            emit_certificate(cli, &cert)
        }
        Command::Aut => {
            let graph = cli.graph()?;
            let aut = automorphism_group(graph.graph(), AutMode::Refined, cli.max_aut)?;
            println!("order {}", aut.order);
            for g in &aut.generators {
                println!("generator {g}");
            }
            if cli.oracle {
                if graph.n() > MAX_FACTORIAL_N {
                    eprintln!("oracle: skipped, factorial search needs at most {MAX_FACTORIAL_N} vertices");
                } else {
                    let brute = automorphism_group(graph.graph(), AutMode::Factorial, usize::MAX)?;
                    if brute.elements != aut.elements || brute.order != aut.order {
                        return Err(Failure::Verification(format!(
                            "factorial search found order {}, refined found {}",
                            brute.order, aut.order
                        )));
                    }
                    println!("oracle: factorial search agrees");
                }
            }
            Ok(())
        }
        Command::Regulars => {
            let graph = cli.graph()?;
            let aut = automorphism_group(graph.graph(), AutMode::Refined, cli.max_aut)?;
            let report = enumerate_regular_subgroups(graph.graph(), &aut)?;
            println!("aut order {}", aut.order);
            println!("regular subgroups {}", report.total_regular_subgroups);
            for class in &report.classes {
                let profile: Vec<String> = class.order_profile.iter().map(|(o, c)| format!("{o}^{c}")).collect();
                println!(
                    "class {} count {} orders [{}]",
                    class.label_or_unrecognized(),
                    class.count,
                    profile.join(" ")
                );
            }
            Ok(())
        }
        Command::Census { family, orders, timings } => census(cli, family, orders.as_deref(), *timings),
    }
}

fn emit_certificate(cli: &Cli, cert: &RegularCertificate) -> Result<(), Failure> {
    let report = verify_certificate(cert);
    if let Some(path) = &cli.out {
        fs::write(path, CertificateFile::from(cert).to_json()?)?;
    }
    println!(
        "{} certificate: {} is Cayley on {} (|H| = {})",
        cert.construction,
        cert.graph.group(),
        cert.claimed_type,
        cert.perms.order()
    );
    if let Some(w) = &cert.witness {
        println!("witness {}", cert.graph.group().token(w));
    }
    for g in cert.perms.generators() {
        println!("generator {g}");
    }
    finish_report(&report)
}

fn finish_report(report: &VerificationReport) -> Result<(), Failure> {
    for c in &report.checks {
        match &c.detail {
            Some(d) => println!("check {}: {} ({d})", c.name, if c.passed { "pass" } else { "FAIL" }),
            None => println!("check {}: {}", c.name, if c.passed { "pass" } else { "FAIL" }),
        }
    }
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        Err(Failure::Verification(failed.join(", ")))
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || {
        Failure::Error(Error::Parse {
            input: s.to_string(),
            position: 0,
            message: "expected `lo..hi`".into(),
        })
    };
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn census(cli: &Cli, family: &str, orders: Option<&str>, timings: bool) -> Result<(), Failure> {
    let family: Family = family.parse()?;
    let groups = match (&cli.group, orders) {
        (Some(spec), None) => vec![build_group_capped(spec, DEFAULT_MAX_ORDER)?],
        (None, Some(range)) => {
            let (lo, hi) = parse_range(range)?;
            family_groups(family, lo, hi)
        }
        _ => return Err(usage("census needs exactly one of --group or --orders")),
    };
    let mut opts = CensusOptions::new(family);
    opts.oracle = cli.oracle;
    opts.max_aut = cli.max_aut;
    opts.max_exhaustive_order = cli.max_order.unwrap_or(DEFAULT_MAX_EXHAUSTIVE_ORDER);
    opts.timings = timings;
    if let Some(count) = cli.samples {
        opts.sampling = Sampling::Random { seed: cli.seed, count };
    }
    let summary = match &cli.out {
        Some(path) => run_census(&groups, &opts, &mut io::BufWriter::new(fs::File::create(path)?))?,
        None => run_census(&groups, &opts, &mut io::stdout().lock())?,
    };
    eprintln!(
        "census: {} records, {} certificates ok, {} with witness ({:.1}%), {} degenerate, {} oracle-checked, {} failures",
        summary.records,
        summary.certificates_ok,
        summary.with_witness,
        100.0 * summary.witness_admission_rate(),
        summary.degenerate,
        summary.oracle_checked,
        summary.failures + summary.oracle_disagreements,
    );
    if summary.ok() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} failed rows, {} oracle disagreements",
            summary.failures, summary.oracle_disagreements
        )))
    }
}
