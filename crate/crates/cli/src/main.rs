//! Command line front end. Every subcommand prints machine-readable output
//! in one of three formats: `json` (JSON lines, one object per row, summary
//! object last), `csv` (header plus rows), or `pretty` (human-oriented).
//! Identical invocations produce byte-identical output; `--jobs` only moves
//! wall time. Exit codes: 0 success, 1 falsified verification or failed
//! inversion, 2 usage error.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, ToPrimitive};
use serde_json::{json, Value};

use shi_ish::arrangement::{ArrangementSpec, Region};
use shi_ish::centers::{
    center, reverse_center, reverse_center_distribution, conjecture_sweep_with_limit,
    DEFAULT_MAX_DISTRIBUTION_N, DEFAULT_MAX_SWEEP_N,
};
use shi_ish::charpoly::{
    characteristic_polynomial_detailed, zaslavsky_counts, DEFAULT_MAX_CHARPOLY_N,
};
use shi_ish::arrangement::DEFAULT_MAX_ENUMERATION_N;
use shi_ish::graphs::{
    augmented_graph, dfs_burn, enumerate_arborescences_with_limit, enumerate_parking_functions,
    graph_of_arrangement, laplacian, reduced_determinant, tree_to_parking,
};
use shi_ish::valid_pairs::{
    invert_ell, invert_ell_search, label_ell, label_lambda, ValidPair,
    DEFAULT_MAX_PAIR_ENUMERATION_N,
};

#[derive(Parser)]
#[command(
    name = "shi-ish",
    version,
    about = "Regions, labels, and parking combinatorics of Shi/Ish interpolations"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sweeps; defaults to $SHI_ISH_JOBS, then 1.
    /// Never changes emitted bytes, only wall time.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Acknowledge an invocation past the default size limits.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the regions of an arrangement with labels and witnesses.
    Regions(ArrangementArgs),
    /// Census of region labels with multiplicities.
    Labels(ArrangementArgs),
    /// Characteristic polynomial by finite-field counting.
    Charpoly(ArrangementArgs),
    /// Run the burning pass on a budget vector.
    Burn(BurnArgs),
    /// Laplacian of the augmented graph and its reduced determinant.
    Laplacian(ArrangementArgs),
    /// Enumerate spanning arborescences with their budget vectors.
    Arborescences(ArrangementArgs),
    /// Enumerate the graph's parking functions.
    Parking(ArrangementArgs),
    /// Center of a word with entries in 1..=n.
    Center(VectorArgs),
    /// Reverse center of a vector with entries from 0.
    ReverseCenter(VectorArgs),
    /// Reverse-center length distribution of one arrangement.
    Distribution(ArrangementArgs),
    /// Sweep every X and compare reverse-center distributions.
    VerifyConjecture(SweepArgs),
    /// Valid-pair operations specific to the Shi arrangement.
    #[command(subcommand)]
    Shi(ShiCommand),
}

#[derive(Args)]
struct ArrangementArgs {
    /// Number of coordinates, at least 3.
    #[arg(long)]
    n: usize,
    /// Comma-separated Shi indices inside {2,...,n-1}; "" means Ish.
    #[arg(long, conflicts_with = "shi")]
    x: Option<String>,
    /// Shorthand for the full index set {2,...,n-1}, the Shi arrangement.
    #[arg(long)]
    shi: bool,
}

#[derive(Args)]
struct BurnArgs {
    #[command(flatten)]
    arrangement: ArrangementArgs,
    /// Comma-separated budgets for vertices 1..=n.
    #[arg(long)]
    a: String,
    /// Also report the burnt order, tree arcs, and dampened arcs.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VectorArgs {
    /// Comma-separated entries.
    #[arg(long)]
    a: String,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of coordinates, at least 3.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum ShiCommand {
    /// Label a valid pair.
    Label(LabelArgs),
    /// Recover the valid pair with a given label.
    Invert(InvertArgs),
}

#[derive(Args)]
struct LabelArgs {
    /// Permutation as comma-separated values, e.g. 5,2,1,7,6,9,3,4,8.
    #[arg(long)]
    w: String,
    /// Intervals as b-e pairs, e.g. 1-4,2-7,4-9; "" for none.
    #[arg(long, default_value = "")]
    intervals: String,
    /// Which labeling to apply.
    #[arg(long, value_enum, default_value_t = Style::Ell)]
    style: Style,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Ell,
    Lambda,
}

#[derive(Args)]
struct InvertArgs {
    /// The label to invert, comma-separated.
    #[arg(long)]
    a: String,
    /// Expected length; must match the label.
    #[arg(long)]
    n: usize,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let outcome = run(&cli, &mut sink).and_then(|code| {
        sink.flush()?;
        Ok(code)
    });
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: output failed: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<ExitCode, Failure> {
    let fmt = cli.format;
    let jobs = resolve_jobs(cli.jobs)?;
    match &cli.command {
        Command::Regions(args) => cmd_regions(args, fmt, cli.allow_large, out),
        Command::Labels(args) => cmd_labels(args, fmt, cli.allow_large, out),
        Command::Charpoly(args) => cmd_charpoly(args, fmt, jobs, out),
        Command::Burn(args) => cmd_burn(args, fmt, out),
        Command::Laplacian(args) => cmd_laplacian(args, fmt, out),
        Command::Arborescences(args) => cmd_arborescences(args, fmt, cli.allow_large, out),
        Command::Parking(args) => cmd_parking(args, fmt, cli.allow_large, out),
        Command::Center(args) => cmd_center(args, fmt, out),
        Command::ReverseCenter(args) => cmd_reverse_center(args, fmt, out),
        Command::Distribution(args) => cmd_distribution(args, fmt, jobs, cli.allow_large, out),
        Command::VerifyConjecture(args) => cmd_verify(args, fmt, jobs, cli.allow_large, out),
        Command::Shi(ShiCommand::Label(args)) => cmd_shi_label(args, fmt, out),
        Command::Shi(ShiCommand::Invert(args)) => cmd_shi_invert(args, fmt, cli.allow_large, out),
    }
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, Failure> {
    let jobs = match flag {
        Some(j) => j,
        None => match std::env::var("SHI_ISH_JOBS") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("SHI_ISH_JOBS is not a worker count: {s:?}")))?,
            Err(_) => 1,
        },
    };
    if jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    Ok(jobs)
}

fn parse_usize_list(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| usage(format!("{what}: {part:?} is not a nonnegative integer")))
        })
        .collect()
}

fn parse_intervals(s: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            let bad = || usage(format!("--intervals: {part:?} is not of the form b-e"));
            let (b, e) = part.trim().split_once('-').ok_or_else(bad)?;
            Ok((b.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?))
        })
        .collect()
}

/// The Shi index set from `--x`/`--shi`, validated against {2,...,n-1} and
/// normalized to a sorted deduplicated list.
fn resolve_spec(args: &ArrangementArgs) -> Result<(ArrangementSpec, Vec<usize>), Failure> {
    let n = args.n;
    if n < 3 {
        return Err(usage(format!("--n must be at least 3, got {n}")));
    }
    let mut x = if args.shi {
        (2..n).collect()
    } else {
        match &args.x {
            Some(list) => parse_usize_list(list, "--x")?,
            None => return Err(usage("one of --x or --shi is required")),
        }
    };
    x.sort_unstable();
    x.dedup();
    for &i in &x {
        if !(2..n).contains(&i) {
            return Err(usage(format!("--x: index {i} is outside 2..={}", n - 1)));
        }
    }
    Ok((ArrangementSpec::new(n, x.iter().copied()), x))
}

fn gate(n: usize, limit: usize, allow: bool, what: &str) -> Result<(), Failure> {
    if n > limit && !allow {
        return Err(usage(format!(
            "{what} at n = {n} exceeds the default limit {limit}; pass --allow-large to proceed"
        )));
    }
    Ok(())
}

fn big_json(v: &BigInt) -> Value {
    if let Some(i) = v.to_i64() {
        json!(i)
    } else if let Some(u) = v.to_u64() {
        json!(u)
    } else {
        json!(v.to_string())
    }
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn fmt_x(x: &[usize]) -> String {
    format!("{{{}}}", join(x.iter(), ","))
}

fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(out: &mut dyn Write, cells: &[String]) -> io::Result<()> {
    let encoded: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
    writeln!(out, "{}", encoded.join(","))
}

fn intervals_json(intervals: &[(usize, usize)]) -> Value {
    Value::Array(intervals.iter().map(|&(b, e)| json!([b, e])).collect())
}

fn intervals_text(intervals: &[(usize, usize)]) -> String {
    if intervals.is_empty() {
        "-".to_string()
    } else {
        join(intervals.iter().map(|&(b, e)| format!("{b}-{e}")), ",")
    }
}

fn witness_strings(region: &Region) -> Vec<String> {
    region.witness().iter().map(|c| c.to_string()).collect()
}

fn enumerate_with_labels(
    spec: &ArrangementSpec,
) -> (Vec<(Region, Vec<usize>)>, BTreeMap<Vec<usize>, usize>) {
    let regions = spec.regions_with_limit(spec.n().max(DEFAULT_MAX_ENUMERATION_N));
    let mut census: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut rows = Vec::with_capacity(regions.len());
    for region in regions {
        let label = spec.region_label(&region);
        *census.entry(label.clone()).or_insert(0) += 1;
        rows.push((region, label));
    }
    (rows, census)
}

fn cmd_regions(
    args: &ArrangementArgs,
    fmt: Format,
    allow: bool,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(args)?;
    gate(args.n, DEFAULT_MAX_ENUMERATION_N, allow, "region enumeration")?;
    let (rows, _) = enumerate_with_labels(&spec);
    let bounded = rows.iter().filter(|(r, _)| spec.is_relatively_bounded(r)).count();
    match fmt {
        Format::Json => {
            for (region, label) in &rows {
                let value = json!({
                    "signs": region.sign_string(),
                    "label": label,
                    "relatively_bounded": spec.is_relatively_bounded(region),
                    "witness": witness_strings(region),
                });
                writeln!(out, "{value}")?;
            }
            let summary = json!({
                "n": args.n,
                "x": x,
                "regions": rows.len(),
                "relatively_bounded": bounded,
            });
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            csv_row(out, &["signs".into(), "label".into(), "relatively_bounded".into(), "witness".into()])?;
            for (region, label) in &rows {
                csv_row(
                    out,
                    &[
                        region.sign_string(),
                        join(label.iter(), " "),
                        spec.is_relatively_bounded(region).to_string(),
                        witness_strings(region).join(" "),
                    ],
                )?;
            }
        }
        Format::Pretty => {
            for (region, label) in &rows {
                let tag = if spec.is_relatively_bounded(region) { "bounded" } else { "unbounded" };
                writeln!(out, "{}  label {}  {tag}", region.sign_string(), join(label.iter(), ","))?;
            }
            writeln!(
                out,
                "{} regions, {} relatively bounded (n={}, X={})",
                rows.len(),
                bounded,
                args.n,
                fmt_x(&x)
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_labels(
    args: &ArrangementArgs,
    fmt: Format,
    allow: bool,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(args)?;
    gate(args.n, DEFAULT_MAX_ENUMERATION_N, allow, "label enumeration")?;
    let (rows, census) = enumerate_with_labels(&spec);
    let regions = rows.len();
    let injective = census.values().all(|&c| c == 1);
    match fmt {
        Format::Json => {
            for (label, count) in &census {
                writeln!(out, "{}", json!({"label": label, "regions": count}))?;
            }
            let summary = json!({
                "n": args.n,
                "x": x,
                "distinct": census.len(),
                "regions": regions,
                "injective": injective,
            });
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            csv_row(out, &["label".into(), "regions".into()])?;
            for (label, count) in &census {
                csv_row(out, &[join(label.iter(), " "), count.to_string()])?;
            }
        }
        Format::Pretty => {
            for (label, count) in &census {
                writeln!(out, "{}  regions {count}", join(label.iter(), ","))?;
            }
            writeln!(
                out,
                "{} distinct labels over {} regions (n={}, X={}); injective: {}",
                census.len(),
                regions,
                args.n,
                fmt_x(&x),
                if injective { "yes" } else { "no" }
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_charpoly(
    args: &ArrangementArgs,
    fmt: Format,
    jobs: usize,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(args)?;
    if args.n > DEFAULT_MAX_CHARPOLY_N {
        return Err(usage(format!(
            "the characteristic polynomial is limited to n <= {DEFAULT_MAX_CHARPOLY_N}"
        )));
    }
    let detail = characteristic_polynomial_detailed(&spec, jobs);
    let (regions, bounded) = zaslavsky_counts(&detail.poly);
    let chi: Vec<Value> = detail.poly.coeffs().iter().map(big_json).collect();
    match fmt {
        Format::Json => {
            let summary = json!({
                "n": args.n,
                "x": x,
                "chi": chi,
                "regions": big_json(&regions),
                "bounded": big_json(&bounded),
                "primes_used": detail.primes_used,
                "validated_at": detail.validated_at,
            });
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            csv_row(
                out,
                &[
                    "n".into(),
                    "x".into(),
                    "chi".into(),
                    "regions".into(),
                    "bounded".into(),
                    "primes_used".into(),
                    "validated_at".into(),
                ],
            )?;
            csv_row(
                out,
                &[
                    args.n.to_string(),
                    join(x.iter(), " "),
                    join(detail.poly.coeffs().iter(), " "),
                    regions.to_string(),
                    bounded.to_string(),
                    join(detail.primes_used.iter(), " "),
                    detail.validated_at.to_string(),
                ],
            )?;
        }
        Format::Pretty => {
            writeln!(out, "chi(q) = {}", detail.poly)?;
            writeln!(out, "regions {regions}, relatively bounded {bounded}")?;
            writeln!(
                out,
                "primes used {}; validated at {}",
                join(detail.primes_used.iter(), " "),
                detail.validated_at
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_burn(args: &BurnArgs, fmt: Format, out: &mut dyn Write) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(&args.arrangement)?;
    let n = args.arrangement.n;
    let a = parse_usize_list(&args.a, "--a")?;
    if a.len() != n {
        return Err(usage(format!("--a must list {n} budgets, got {}", a.len())));
    }
    let gbar = augmented_graph(&graph_of_arrangement(&spec));
    let trace = dfs_burn(&gbar, &a);
    let arcs = |list: &[shi_ish::graphs::ArcId]| -> Vec<String> {
        list.iter().map(|&arc| gbar.format_arc(arc)).collect()
    };
    match fmt {
        Format::Json => {
            let mut value = json!({
                "n": n,
                "x": x,
                "a": a,
                "fits": trace.fits,
            });
            if args.trace {
                let more = value.as_object_mut().expect("object");
                more.insert("burnt".into(), json!(trace.burnt_vertices));
                more.insert("tree".into(), json!(arcs(&trace.tree_edges)));
                more.insert("dampened".into(), json!(arcs(&trace.dampened_edges)));
            }
            writeln!(out, "{value}")?;
        }
        Format::Csv => {
            let mut header = vec!["n".into(), "x".into(), "a".into(), "fits".into()];
            let mut row = vec![
                n.to_string(),
                join(x.iter(), " "),
                join(a.iter(), " "),
                trace.fits.to_string(),
            ];
            if args.trace {
                header.extend(["burnt".into(), "tree".into(), "dampened".into()]);
                row.extend([
                    join(trace.burnt_vertices.iter(), " "),
                    arcs(&trace.tree_edges).join(" "),
                    arcs(&trace.dampened_edges).join(" "),
                ]);
            }
            csv_row(out, &header)?;
            csv_row(out, &row)?;
        }
        Format::Pretty => {
            writeln!(out, "a {} on n={n} X={}", join(a.iter(), ","), fmt_x(&x))?;
            writeln!(out, "fits: {}", if trace.fits { "yes" } else { "no" })?;
            if args.trace {
                writeln!(out, "burnt {}", join(trace.burnt_vertices.iter(), ","))?;
                writeln!(out, "tree {}", arcs(&trace.tree_edges).join(" "))?;
                writeln!(out, "dampened {}", arcs(&trace.dampened_edges).join(" "))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_laplacian(
    args: &ArrangementArgs,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(args)?;
    let gbar = augmented_graph(&graph_of_arrangement(&spec));
    let m = laplacian(&gbar);
    let det = reduced_determinant(&gbar);
    match fmt {
        Format::Json => {
            for r in 0..m.rows() {
                let entries: Vec<Value> = (0..m.cols()).map(|c| big_json(m.get(r, c))).collect();
                writeln!(out, "{}", json!({"row": r, "entries": entries}))?;
            }
            let summary = json!({
                "n": args.n,
                "x": x,
                "size": m.rows(),
                "reduced_determinant": big_json(&det),
            });
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            csv_row(out, &["row".into(), "entries".into()])?;
            for r in 0..m.rows() {
                let entries = join((0..m.cols()).map(|c| m.get(r, c)), " ");
                csv_row(out, &[r.to_string(), entries])?;
            }
        }
        Format::Pretty => {
            for r in 0..m.rows() {
                writeln!(out, "{}", join((0..m.cols()).map(|c| m.get(r, c)), " "))?;
            }
            writeln!(out, "reduced determinant {det} (n={}, X={})", args.n, fmt_x(&x))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_arborescences(
    args: &ArrangementArgs,
    fmt: Format,
    allow: bool,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(args)?;
    gate(args.n, DEFAULT_MAX_ENUMERATION_N, allow, "arborescence enumeration")?;
    let gbar = augmented_graph(&graph_of_arrangement(&spec));
    let trees = enumerate_arborescences_with_limit(&gbar, args.n + 1);
    let det = reduced_determinant(&gbar);
    let mut rows = Vec::with_capacity(trees.len());
    for tree in &trees {
        let budgets = tree_to_parking(&gbar, tree)
            .unwrap_or_else(|e| panic!("enumerated tree failed to unwind: {e}"));
        let arcs: Vec<String> = tree.iter().map(|&arc| gbar.format_arc(arc)).collect();
        rows.push((arcs, budgets));
    }
    match fmt {
        Format::Json => {
            for (arcs, budgets) in &rows {
                writeln!(out, "{}", json!({"tree": arcs, "budgets": budgets}))?;
            }
            let summary = json!({
                "n": args.n,
                "x": x,
                "count": rows.len(),
                "reduced_determinant": big_json(&det),
            });
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            csv_row(out, &["tree".into(), "budgets".into()])?;
            for (arcs, budgets) in &rows {
                csv_row(out, &[arcs.join(" "), join(budgets.iter(), " ")])?;
            }
        }
        Format::Pretty => {
            for (arcs, budgets) in &rows {
                writeln!(out, "{}  budgets {}", arcs.join(" "), join(budgets.iter(), ","))?;
            }
            writeln!(
                out,
                "{} arborescences; reduced determinant {det} (n={}, X={})",
                rows.len(),
                args.n,
                fmt_x(&x)
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_parking(
    args: &ArrangementArgs,
    fmt: Format,
    allow: bool,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(args)?;
    gate(args.n, DEFAULT_MAX_ENUMERATION_N, allow, "parking-function enumeration")?;
    let g = graph_of_arrangement(&spec);
    let census = enumerate_parking_functions(&g);
    match fmt {
        Format::Json => {
            for a in &census {
                writeln!(out, "{}", json!({ "a": a }))?;
            }
            writeln!(out, "{}", json!({"n": args.n, "x": x, "count": census.len()}))?;
        }
        Format::Csv => {
            csv_row(out, &["a".into()])?;
            for a in &census {
                csv_row(out, &[join(a.iter(), " ")])?;
            }
        }
        Format::Pretty => {
            for a in &census {
                writeln!(out, "{}", join(a.iter(), ","))?;
            }
            writeln!(out, "{} parking functions (n={}, X={})", census.len(), args.n, fmt_x(&x))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_center(
    a: &[usize],
    members: Vec<usize>,
    kind: &str,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    match fmt {
        Format::Json => {
            let value = json!({
                "a": a,
                "kind": kind,
                "members": members,
                "length": members.len(),
            });
            writeln!(out, "{value}")?;
        }
        Format::Csv => {
            csv_row(out, &["a".into(), "kind".into(), "members".into(), "length".into()])?;
            csv_row(
                out,
                &[
                    join(a.iter(), " "),
                    kind.to_string(),
                    join(members.iter(), " "),
                    members.len().to_string(),
                ],
            )?;
        }
        Format::Pretty => {
            let shown = if members.is_empty() { "-".to_string() } else { join(members.iter(), ",") };
            writeln!(out, "{kind} {shown} (length {})", members.len())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_center(args: &VectorArgs, fmt: Format, out: &mut dyn Write) -> Result<ExitCode, Failure> {
    let a = parse_usize_list(&args.a, "--a")?;
    let n = a.len();
    if n == 0 {
        return Err(usage("--a must not be empty"));
    }
    if let Some(&bad) = a.iter().find(|&&e| !(1..=n).contains(&e)) {
        return Err(usage(format!("center entries must lie in 1..={n}, got {bad}")));
    }
    let members: Vec<usize> = center(&a).members.into_iter().collect();
    emit_center(&a, members, "center", fmt, out)
}

fn cmd_reverse_center(
    args: &VectorArgs,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let a = parse_usize_list(&args.a, "--a")?;
    if a.is_empty() {
        return Err(usage("--a must not be empty"));
    }
    let members: Vec<usize> = reverse_center(&a).members.into_iter().collect();
    emit_center(&a, members, "reverse-center", fmt, out)
}

fn cmd_distribution(
    args: &ArrangementArgs,
    fmt: Format,
    jobs: usize,
    allow: bool,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let (spec, x) = resolve_spec(args)?;
    gate(args.n, DEFAULT_MAX_DISTRIBUTION_N, allow, "the distribution scan")?;
    let by_length = reverse_center_distribution(&spec, jobs);
    let total: u64 = by_length.iter().sum();
    match fmt {
        Format::Json => {
            let summary = json!({
                "n": args.n,
                "x": x,
                "by_length": by_length,
                "total": total,
            });
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            csv_row(out, &["length".into(), "count".into()])?;
            for (i, count) in by_length.iter().enumerate() {
                csv_row(out, &[(i + 1).to_string(), count.to_string()])?;
            }
        }
        Format::Pretty => {
            for (i, count) in by_length.iter().enumerate() {
                writeln!(out, "length {}: {count}", i + 1)?;
            }
            writeln!(out, "total {total} (n={}, X={})", args.n, fmt_x(&x))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    args: &SweepArgs,
    fmt: Format,
    jobs: usize,
    allow: bool,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    if args.n < 3 {
        return Err(usage(format!("--n must be at least 3, got {}", args.n)));
    }
    gate(args.n, DEFAULT_MAX_SWEEP_N, allow, "the conjecture sweep")?;
    let report = conjecture_sweep_with_limit(args.n, jobs, args.n.max(DEFAULT_MAX_SWEEP_N));
    let equal = report.all_equal();
    let verdict = if equal { "equal" } else { "differ" };
    match fmt {
        Format::Json => {
            for row in &report.rows {
                let value = json!({
                    "x": row.x,
                    "by_length": row.by_length,
                    "total": row.total,
                });
                writeln!(out, "{value}")?;
            }
            let summary = json!({
                "n": report.n,
                "subsets": report.rows.len(),
                "verdict": verdict,
            });
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            csv_row(out, &["x".into(), "by_length".into(), "total".into()])?;
            for row in &report.rows {
                csv_row(
                    out,
                    &[
                        join(row.x.iter(), " "),
                        join(row.by_length.iter(), " "),
                        row.total.to_string(),
                    ],
                )?;
            }
        }
        Format::Pretty => {
            for row in &report.rows {
                writeln!(
                    out,
                    "X={}: {} total {}",
                    fmt_x(&row.x),
                    join(row.by_length.iter(), ","),
                    row.total
                )?;
            }
            writeln!(out, "verdict: {verdict}")?;
        }
    }
    Ok(if equal { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_shi_label(args: &LabelArgs, fmt: Format, out: &mut dyn Write) -> Result<ExitCode, Failure> {
    let w = parse_usize_list(&args.w, "--w")?;
    let intervals = parse_intervals(&args.intervals)?;
    let pair = ValidPair::try_new(w, intervals).map_err(|e| usage(format!("invalid pair: {e}")))?;
    let style = match args.style {
        Style::Ell => "ell",
        Style::Lambda => "lambda",
    };
    let label = match args.style {
        Style::Ell => label_ell(&pair),
        Style::Lambda => label_lambda(&pair),
    };
    match fmt {
        Format::Json => {
            let value = json!({
                "w": pair.w(),
                "intervals": intervals_json(pair.intervals()),
                "style": style,
                "label": label,
            });
            writeln!(out, "{value}")?;
        }
        Format::Csv => {
            csv_row(out, &["w".into(), "intervals".into(), "style".into(), "label".into()])?;
            csv_row(
                out,
                &[
                    join(pair.w().iter(), " "),
                    intervals_text(pair.intervals()),
                    style.to_string(),
                    join(label.iter(), " "),
                ],
            )?;
        }
        Format::Pretty => {
            writeln!(out, "pair {pair}")?;
            writeln!(out, "{style} label {}", join(label.iter(), ","))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_shi_invert(
    args: &InvertArgs,
    fmt: Format,
    allow: bool,
    out: &mut dyn Write,
) -> Result<ExitCode, Failure> {
    let a = parse_usize_list(&args.a, "--a")?;
    if a.len() != args.n {
        return Err(usage(format!("--a must list {} entries, got {}", args.n, a.len())));
    }
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let pair = if args.n <= DEFAULT_MAX_PAIR_ENUMERATION_N {
        invert_ell(&a)
    } else {
        gate(args.n, DEFAULT_MAX_PAIR_ENUMERATION_N, allow, "inversion by search")?;
        invert_ell_search(&a)
    };
    match fmt {
        Format::Json => {
            let value = match &pair {
                Some(p) => json!({
                    "a": a,
                    "found": true,
                    "w": p.w(),
                    "intervals": intervals_json(p.intervals()),
                }),
                None => json!({"a": a, "found": false}),
            };
            writeln!(out, "{value}")?;
        }
        Format::Csv => {
            csv_row(out, &["a".into(), "found".into(), "w".into(), "intervals".into()])?;
            let row = match &pair {
                Some(p) => [
                    join(a.iter(), " "),
                    "true".to_string(),
                    join(p.w().iter(), " "),
                    intervals_text(p.intervals()),
                ],
                None => [join(a.iter(), " "), "false".to_string(), String::new(), String::new()],
            };
            csv_row(out, &row)?;
        }
        Format::Pretty => match &pair {
            Some(p) => writeln!(out, "pair {p}")?,
            None => writeln!(out, "no valid pair has this label")?,
        },
    }
    Ok(if pair.is_some() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
