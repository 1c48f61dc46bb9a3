mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rackcoh::complex::{Coefficients, Complex, Variant, DEFAULT_MAX_BASIS};
use rackcoh::cup::{ring_structure, CupContext};
use rackcoh::rack::{Builtin, Rack, XSet};
use rackcoh::scalar::{format_scalar, Ring};
use rackcoh::verify::{self, Suite, SuiteConfig};
use serde_json::json;
use sha2::{Digest, Sha256};

use report::{CliError, Report};

/// Largest degree accepted by `ring`.
const RING_DEGREE_CAP: usize = 6;

/// Racks run by `verify --all-builtins`.
const STANDARD_BUILTINS: &[&str] = &[
    "trivial:1",
    "trivial:2",
    "trivial:3",
    "trivial:4",
    "dihedral:3",
    "dihedral:4",
    "cyclic:3",
    "cyclic:4",
];

#[derive(Parser)]
#[command(name = "rackcoh", version, about = "Rack and quandle (co)homology with exact arithmetic")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on the dimension of any chain group.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BASIS)]
    max_basis: usize,
    /// Include wall-clock timings in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology or cohomology groups in degrees 1..=N.
    Homology(HomologyArgs),
    /// Cohomology ring structure constants over a field.
    Ring(RingArgs),
    /// Run identity suites and report witnesses for failures.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Rack table file (text or JSON).
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    rack: Option<String>,
    /// Builtin rack: trivial:n, dihedral:n, cyclic:n, conjugation:S<n>, conjugation:Z<n>.
    #[arg(long, value_name = "SPEC")]
    builtin: Option<String>,
}

#[derive(Args)]
struct HomologyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Z, Q, or Fp:p.
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Quandle complex (non-degenerate tuples).
    #[arg(long)]
    quandle: bool,
    /// X-set coefficients: a file, `self` for the rack acting on itself, or `singleton`.
    #[arg(long, value_name = "PATH|self|singleton")]
    coefficients: Option<String>,
    /// Cohomology instead of homology.
    #[arg(long)]
    cohomology: bool,
}

#[derive(Args)]
struct RingArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Q or Fp:p.
    #[arg(long, default_value = "Q")]
    ring: String,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    #[arg(long)]
    quandle: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Run every suite on each standard builtin of size at most 4.
    #[arg(long, conflicts_with_all = ["rack", "builtin"])]
    all_builtins: bool,
    /// Suite to run; repeatable. Defaults to all.
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    /// Seed for the sampled cocycle combinations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Top chain degree for the boundary suites [default: 4].
    #[arg(long)]
    max_degree: Option<usize>,
    /// Longest e-word for the word-engine identities [default: 3].
    #[arg(long)]
    word_length: Option<usize>,
    /// Largest p+q+r for cup associativity [default: 5].
    #[arg(long)]
    cup_total: Option<usize>,
    /// Random cocycle combinations for the homotopy check [default: 8].
    #[arg(long)]
    samples: Option<usize>,
}

/// A loaded rack with a label and canonical text used for the input digest.
struct Loaded {
    rack: Rack,
    label: String,
    canonical: String,
}

fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    match (&input.rack, &input.builtin) {
        (Some(path), None) => {
            let rack = input::parse_rack(path, &input::read(path)?)?;
            Ok(Loaded { canonical: rack.to_string(), label: path.clone(), rack })
        }
        (None, Some(spec)) => {
            let rack = Rack::builtin(&spec.parse::<Builtin>()?)?;
            Ok(Loaded { canonical: rack.to_string(), label: spec.clone(), rack })
        }
        _ => Err(CliError::Usage("exactly one of --rack or --builtin is required".into())),
    }
}

fn parse_ring(s: &str) -> Result<Ring, CliError> {
    s.parse::<Ring>().map_err(|e| CliError::Usage(format!("--ring {s}: {e}")))
}

fn xset_text(y: &XSet) -> String {
    let mut out = format!("xset {} {}\n", y.size(), y.table().first().map_or(0, Vec::len));
    for row in y.table() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn variant(quandle: bool) -> Variant {
    if quandle {
        Variant::Quandle
    } else {
        Variant::Rack
    }
}

fn cmd_homology(args: &HomologyArgs, max_basis: usize) -> Result<(Report, String), CliError> {
    let loaded = load(&args.input)?;
    let ring = parse_ring(&args.ring)?;
    let (coefficients, coeff_text) = match args.coefficients.as_deref() {
        None => (Coefficients::Trivial, String::new()),
        Some("self") => {
            let y = XSet::regular(&loaded.rack);
            let t = xset_text(&y);
            (Coefficients::XSet(y), t)
        }
        Some("singleton") => {
            let y = XSet::singleton(&loaded.rack);
            let t = xset_text(&y);
            (Coefficients::XSet(y), t)
        }
        Some(path) => {
            let y = input::parse_xset(path, &input::read(path)?, &loaded.rack)?;
            let t = xset_text(&y);
            (Coefficients::XSet(y), t)
        }
    };
    let complex = Complex::new(loaded.rack.clone(), variant(args.quandle), coefficients)?.with_max_basis(max_basis);
    let kind = if args.cohomology { "cohomology" } else { "homology" };
    let mut results = Vec::new();
    let mut text = format!(
        "{} {kind} of {} over {ring} ({} coefficients)\n",
        if args.quandle { "quandle" } else { "rack" },
        loaded.label,
        args.coefficients.as_deref().unwrap_or("trivial")
    );
    for n in 1..=args.max_degree {
        let group = if args.cohomology { complex.cohomology(n, ring)? } else { complex.homology(n, ring)? };
        let name = if args.cohomology { format!("H^{n}") } else { format!("H_{n}") };
        text.push_str(&format!("{name} = {group}\n"));
        results.push(json!({
            "kind": kind,
            "degree": n,
            "dim": complex.dim(n)?,
            "betti": group.betti,
            "torsion": group.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "group": group.to_string(),
        }));
    }
    let config = json!({
        "input": loaded.label,
        "ring": ring.to_string(),
        "max_degree": args.max_degree,
        "variant": if args.quandle { "quandle" } else { "rack" },
        "coefficients": args.coefficients.clone().unwrap_or_else(|| "trivial".into()),
        "cohomology": args.cohomology,
        "max_basis": max_basis,
    });
    let report = Report::new(kind, digest(&[&loaded.canonical, &coeff_text]), config, results);
    Ok((report, text))
}

fn cmd_ring(args: &RingArgs, max_basis: usize) -> Result<(Report, String), CliError> {
    let loaded = load(&args.input)?;
    let ring = parse_ring(&args.ring)?;
    if !ring.is_field() {
        return Err(CliError::Usage(format!("ring structure needs a field, got {ring}")));
    }
    let ctx = CupContext::new(loaded.rack.clone(), variant(args.quandle), ring)?.with_max_basis(max_basis);
    let rs = ring_structure(&ctx, args.max_degree, RING_DEGREE_CAP)?;
    let complex = ctx.target();
    let zero = ring.zero();
    let mut results = Vec::new();
    let mut text = format!(
        "{} cohomology ring of {} over {ring}, degrees 0..={}\n",
        if args.quandle { "quandle" } else { "rack" },
        loaded.label,
        args.max_degree
    );
    for (p, reps) in rs.representatives.iter().enumerate() {
        let basis = complex.basis(p)?;
        text.push_str(&format!("dim H^{p} = {}\n", reps.len()));
        let reps_json: Vec<_> = reps
            .iter()
            .map(|f| {
                f.values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != zero)
                    .map(|(k, v)| json!({ "tuple": basis.tuple(k), "value": format_scalar(v) }))
                    .collect::<Vec<_>>()
            })
            .collect();
        results.push(json!({ "kind": "degree", "degree": p, "dim": reps.len(), "representatives": reps_json }));
    }
    for e in &rs.products {
        let coords: Vec<String> = e.coordinates.iter().map(format_scalar).collect();
        text.push_str(&format!("[{},{}]·[{},{}] = ({})\n", e.p, e.i, e.q, e.j, coords.join(", ")));
        results.push(json!({ "kind": "product", "p": e.p, "i": e.i, "q": e.q, "j": e.j, "coordinates": coords }));
    }
    let commutative = rs.graded_commutativity_witness().is_none();
    text.push_str(&format!("graded commutative: {commutative}\n"));
    results.push(json!({ "kind": "graded_commutative", "value": commutative }));
    let config = json!({
        "input": loaded.label,
        "ring": ring.to_string(),
        "max_degree": args.max_degree,
        "variant": if args.quandle { "quandle" } else { "rack" },
        "max_basis": max_basis,
    });
    Ok((Report::new("ring", digest(&[&loaded.canonical]), config, results), text))
}

fn cmd_verify(args: &VerifyArgs) -> Result<(Report, String, bool), CliError> {
    let racks: Vec<Loaded> = if args.all_builtins {
        STANDARD_BUILTINS
            .iter()
            .map(|s| load(&InputArgs { rack: None, builtin: Some(s.to_string()) }))
            .collect::<Result<_, _>>()?
    } else {
        vec![load(&args.input)?]
    };
    let suites: Vec<Suite> = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?
    };
    let mut cfg = SuiteConfig { seed: args.seed, ..SuiteConfig::default() };
    if let Some(v) = args.max_degree {
        cfg.max_degree = v;
    }
    if let Some(v) = args.word_length {
        cfg.word_length = v;
    }
    if let Some(v) = args.cup_total {
        cfg.cup_total = v;
    }
    if let Some(v) = args.samples {
        cfg.samples = v;
    }
    let mut reports = Vec::new();
    let mut text = String::new();
    for loaded in &racks {
        for &s in &suites {
            let rep = verify::run(s, &loaded.rack, &loaded.label, &cfg)?;
            let total: usize = rep.checks.iter().map(|c| c.checks).sum();
            text.push_str(&format!(
                "{} {s} on {} ({total} checks)\n",
                if rep.passed { "PASS" } else { "FAIL" },
                loaded.label
            ));
            for c in &rep.checks {
                if let Some(w) = &c.witness {
                    text.push_str(&format!("  {}: {} failures, first: {w}\n", c.name, c.failures));
                }
            }
            for n in &rep.notes {
                text.push_str(&format!("  note: {n}\n"));
            }
            reports.push(rep);
        }
    }
    let ok = reports.iter().all(|r| r.passed);
    let canon: Vec<&str> = racks.iter().map(|l| l.canonical.as_str()).collect();
    let config = json!({
        "inputs": racks.iter().map(|l| l.label.clone()).collect::<Vec<_>>(),
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "sizes": serde_json::to_value(&cfg).expect("config serializes"),
    });
    let mut report = Report::new("verify", digest(&canon), config, Vec::new());
    report.suites = reports.iter().map(|r| serde_json::to_value(r).expect("suite report serializes")).collect();
    report.seed = Some(args.seed);
    Ok((report, text, ok))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let command_name = match &cli.command {
        Command::Homology(a) if a.cohomology => "cohomology",
        Command::Homology(_) => "homology",
        Command::Ring(_) => "ring",
        Command::Verify(_) => "verify",
    };
    let outcome = match &cli.command {
        Command::Homology(a) => cmd_homology(a, cli.max_basis).map(|(r, t)| (r, t, true)),
        Command::Ring(a) => cmd_ring(a, cli.max_basis).map(|(r, t)| (r, t, true)),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok((mut report, text, ok)) => {
            if cli.timings {
                report.set_elapsed(start.elapsed());
            }
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            if cli.json {
                println!("{}", Report::failure(command_name, &err).to_json());
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
