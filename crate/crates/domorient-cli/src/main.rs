use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use domorient::format::EdgeListDocument;
use domorient::generators::{gen_extremal, gen_random_bridgeless, probe_two_connected, Gadget};
use domorient::oracle::{exact_oriented_diameter_budget, exact_oriented_strong_diameter_budget, DIAMETER_EDGE_BUDGET};
use domorient::{minimum_dominating_set, orient, DominatingSet, Error, Objective, UndirectedMultigraph, VertexId};

#[derive(Parser)]
#[command(
    name = "domorient",
    version,
    about = "Strong orientations bounded by the domination number"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Diam,
    Sdiam,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Diam => Objective::Diameter,
            ObjectiveArg::Sdiam => Objective::StrongDiameter,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    /// `key: value` lines.
    Kv,
    /// Aligned two-column table.
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Orient a graph and report measured values against the bound.
    Orient(OrientArgs),
    /// Exact oriented diameter or strong diameter by branch and bound.
    Exact(ExactArgs),
    /// Domination number and a minimum dominating set.
    Gamma { input: PathBuf },
    /// Write a generated graph as an edge list.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Run the orienter on seeded random graphs and compare with the oracle.
    Bench(BenchArgs),
    /// Compare exact values on random 2-connected graphs against 3 gamma - 1 and 3 gamma.
    Probe2c(ProbeArgs),
}

#[derive(Args)]
struct OrientArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "diam")]
    objective: ObjectiveArg,
    /// Comma-separated dominating set overriding the file's `D:` line.
    #[arg(long, value_delimiter = ',')]
    dominators: Option<Vec<u32>>,
    /// Write the oriented edge list here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the orientation plan here.
    #[arg(long)]
    emit_plan: Option<PathBuf>,
    /// Also compute the exact optimum when the graph has at most this many edges.
    #[arg(long)]
    budget_edges: Option<usize>,
    /// Recorded in the report.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "kv")]
    format: ReportFormat,
}

#[derive(Args)]
struct ExactArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "diam")]
    objective: ObjectiveArg,
    #[arg(long)]
    budget_edges: Option<usize>,
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// The sharp family: dominators on a path joined by gadgets.
    Extremal {
        #[arg(long)]
        gamma: usize,
        /// Comma-separated gadget indices (1 or 2), one per consecutive pair.
        #[arg(long, value_delimiter = ',')]
        pattern: Vec<u8>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// A Hamiltonian cycle with random chords.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "diam")]
    objective: ObjectiveArg,
    #[arg(long, default_value_t = DIAMETER_EDGE_BUDGET)]
    budget_edges: usize,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 7)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(e) = err.chain().find_map(|c| c.downcast_ref::<Error>()) else {
        return 2;
    };
    match e {
        Error::Parse { .. } => 2,
        Error::InvariantBreach { .. } | Error::ShapeMismatch(_) | Error::NotStrong => 4,
        Error::Budget { .. } | Error::ExactLimit { .. } => 5,
        _ => 3,
    }
}

fn read_document(path: &Path) -> Result<EdgeListDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    EdgeListDocument::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(fields: &[(&str, String)], format: ReportFormat) -> String {
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in fields {
        let _ = match format {
            ReportFormat::Kv => writeln!(out, "{k}: {v}"),
            ReportFormat::Table => writeln!(out, "{k:<width$}  {v}"),
        };
    }
    out
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn exact_optimum(g: &UndirectedMultigraph, objective: Objective, budget: usize) -> domorient::Result<u32> {
    let r = match objective {
        Objective::Diameter => exact_oriented_diameter_budget(g, budget)?,
        Objective::StrongDiameter => exact_oriented_strong_diameter_budget(g, budget)?,
    };
    Ok(r.optimum)
}

fn cmd_orient(args: OrientArgs) -> Result<()> {
    let doc = read_document(&args.input)?;
    let g = doc.graph()?;
    let members: Option<BTreeSet<VertexId>> = match &args.dominators {
        Some(list) => Some(list.iter().map(|&v| VertexId(v)).collect()),
        None => doc.dominator_set(),
    };
    let d = members.map(|m| DominatingSet::new(&g, m)).transpose()?;
    let objective = Objective::from(args.objective);
    let start = Instant::now();
    let (o, plan, report) = orient(&g, d.as_ref(), objective)?;
    let elapsed = start.elapsed();
    let oracle = match args.budget_edges {
        Some(b) if g.edge_count() <= b => Some(exact_optimum(&g, objective, b)?),
        _ => None,
    };
    let oriented = EdgeListDocument::from_orientation(&o)
        .with_comment(format!(
            "oriented {}, objective {}",
            args.input.display(),
            objective.name()
        ))
        .to_string();
    if let Some(path) = &args.emit_plan {
        fs::write(path, plan.dump() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.output {
        write_or_print(Some(path), &oriented)?;
    }
    let fields = [
        ("gamma", report.gamma.to_string()),
        ("objective", objective.name().to_string()),
        ("formula-bound", report.formula_bound.to_string()),
        ("measured-diameter", report.diameter.to_string()),
        ("measured-sdiam-upper", report.strong_diameter_upper.to_string()),
        ("sdiam-exact", opt(report.strong_diameter_exact)),
        ("oracle-optimum", opt(oracle)),
        ("elapsed", format!("{:.3}ms", elapsed.as_secs_f64() * 1000.0)),
        ("seed", opt(args.seed)),
        ("plan-hash", plan.hash()),
    ];
    print!("{}", render(&fields, args.format));
    if args.output.is_none() {
        print!("{oriented}");
    }
    Ok(())
}

fn cmd_exact(args: ExactArgs) -> Result<()> {
    let g = read_document(&args.input)?.graph()?;
    let objective = Objective::from(args.objective);
    let budget = args.budget_edges.unwrap_or(match objective {
        Objective::Diameter => DIAMETER_EDGE_BUDGET,
        Objective::StrongDiameter => domorient::oracle::STRONG_EDGE_BUDGET,
    });
    let start = Instant::now();
    let r = match objective {
        Objective::Diameter => exact_oriented_diameter_budget(&g, budget)?,
        Objective::StrongDiameter => exact_oriented_strong_diameter_budget(&g, budget)?,
    };
    let fields = [
        ("objective", objective.name().to_string()),
        ("optimum", r.optimum.to_string()),
        ("explored", r.explored.to_string()),
        ("pruned", r.pruned.to_string()),
        ("elapsed", format!("{:.3}ms", start.elapsed().as_secs_f64() * 1000.0)),
    ];
    print!("{}", render(&fields, ReportFormat::Kv));
    print!(
        "{}",
        EdgeListDocument::from_orientation(&r.witness).with_comment("witness")
    );
    Ok(())
}

fn cmd_gamma(input: &Path) -> Result<()> {
    let g = read_document(input)?.graph()?;
    let d = minimum_dominating_set(&g);
    let labels: Vec<String> = d.members().iter().map(|v| v.0.to_string()).collect();
    println!("gamma: {}", d.len());
    println!("D: {}", labels.join(" "));
    Ok(())
}

fn cmd_generate(cmd: GenerateCommand) -> Result<()> {
    match cmd {
        GenerateCommand::Extremal { gamma, pattern, output } => {
            let gadgets = pattern
                .iter()
                .map(|&i| Gadget::from_index(i).ok_or_else(|| anyhow!("gadget index {i} is not 1 or 2")))
                .collect::<Result<Vec<_>>>()?;
            let (g, d) = gen_extremal(gamma, &gadgets)?;
            let doc = EdgeListDocument::from_graph(&g)
                .with_comment(format!("extremal family, gamma {gamma}, pattern {pattern:?}"))
                .with_dominators(d.members());
            write_or_print(output.as_deref(), &doc.to_string())
        }
        GenerateCommand::Random { n, extra, seed, output } => {
            let g = gen_random_bridgeless(n, extra, seed)?;
            let doc = EdgeListDocument::from_graph(&g)
                .with_comment(format!("random bridgeless, n {n}, extra {extra}, seed {seed}"));
            write_or_print(output.as_deref(), &doc.to_string())
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let objective = Objective::from(args.objective);
    let mut out = format!(
        "{:>5} {:>5} {:>6} {:>5} {:>9} {:>6} {:>4}\n",
        "index", "edges", "gamma", "bound", "algorithm", "oracle", "gap"
    );
    let (mut violations, mut max_gap) = (0, 0);
    for i in 0..args.count {
        let seed = args.seed.wrapping_add(i as u64);
        let extra = (seed % (args.n as u64 / 2 + 1)) as usize;
        let g = gen_random_bridgeless(args.n, extra, seed)?;
        let (_, _, report) = orient(&g, None, objective)?;
        let value = report.measured();
        if !report.holds() {
            violations += 1;
        }
        let oracle = if g.edge_count() <= args.budget_edges {
            Some(exact_optimum(&g, objective, args.budget_edges)?)
        } else {
            None
        };
        let gap = oracle.map(|o| value - o);
        max_gap = max_gap.max(gap.unwrap_or(0));
        let _ = writeln!(
            out,
            "{i:>5} {:>5} {:>6} {:>5} {value:>9} {:>6} {:>4}",
            g.edge_count(),
            report.gamma,
            report.formula_bound,
            opt(oracle),
            opt(gap)
        );
    }
    let _ = writeln!(
        out,
        "summary: count={} max-gap={max_gap} violations={violations}",
        args.count
    );
    print!("{out}");
    if violations > 0 {
        return Err(anyhow!("{violations} bound violations"));
    }
    Ok(())
}

fn cmd_probe(args: ProbeArgs) -> Result<()> {
    let rows = probe_two_connected(args.count, args.n, args.seed)?;
    println!(
        "{:>6} {:>3} {:>3} {:>5} {:>4} {:>6} {:>5} {:>7} counterexample",
        "sample", "n", "m", "gamma", "diam", "target", "sdiam", "target"
    );
    for r in &rows {
        println!(
            "{:>6} {:>3} {:>3} {:>5} {:>4} {:>6} {:>5} {:>7} {}",
            r.sample,
            r.n,
            r.m,
            r.gamma,
            r.oriented_diameter,
            r.diameter_target(),
            r.oriented_strong_diameter,
            r.strong_target(),
            r.counterexample
        );
    }
    for r in rows.iter().filter(|r| r.counterexample) {
        let edges: Vec<String> = r.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        println!("counterexample {}: {}", r.sample, edges.join(" "));
    }
    let found = rows.iter().filter(|r| r.counterexample).count();
    println!("summary: samples={} counterexamples={found}", rows.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Orient(a) => cmd_orient(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Gamma { input } => cmd_gamma(&input),
        Command::Generate(c) => cmd_generate(c),
        Command::Bench(a) => cmd_bench(a),
        Command::Probe2c(a) => cmd_probe(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
