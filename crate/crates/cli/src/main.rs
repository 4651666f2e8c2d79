use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eightvertex::estimator::{estimate_z8v, EstimatorConfig};
use eightvertex::exact::{census_with_cap, Model};
use eightvertex::graph::{gen_k44, gen_octahedron, gen_torus, parse_graph, serialize_graph};
use eightvertex::mcmc::{exact_chain_diagnostics, sample, ChainConfig, Proposal};
use eightvertex::params::format_rational;
use eightvertex::transforms::{group_table, plan_transform, GraphClass};
use eightvertex::verify::{verify, Suite};
use eightvertex::{LabeledGraph, ParamVec};

#[derive(Parser)]
#[command(
    name = "eightv",
    version,
    about = "Eight-vertex model partition functions, transforms and sampling"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in the `8vx-graph` text format.
    Gen {
        kind: GraphKind,
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact partition function as an integer or `num/den`.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        params: ParamVec,
        #[arg(long, value_enum, default_value_t = ModelArg::EightVertex)]
        model: ModelArg,
    },
    /// Class-profile histogram as CSV.
    Census {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelArg::EightVertex)]
        model: ModelArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Elements of the transform group in table order.
    GroupTable {
        #[arg(long)]
        class: GraphClass,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Group element moving the parameters into Y∩Z, as JSON.
    Plan {
        #[arg(long)]
        params: ParamVec,
        #[arg(long)]
        class: GraphClass,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        suite: SuiteArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw orientations from the Gibbs distribution, one bit string per line.
    Sample {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        params: ParamVec,
        #[arg(long)]
        seed: u64,
        #[arg(long, short = 'n', default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        burn_in: Option<u64>,
        #[arg(long)]
        thinning: Option<u64>,
        #[arg(long)]
        laziness: Option<f64>,
        #[arg(long, value_enum, default_value_t = ProposalArg::Basis)]
        proposal: ProposalArg,
    },
    /// Exact transition-matrix checks and the TV curve as CSV.
    DiagnoseChain {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        params: ParamVec,
        #[arg(long, default_value_t = 0.01)]
        threshold: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: u64,
        #[arg(long)]
        laziness: Option<f64>,
        #[arg(long, value_enum, default_value_t = ProposalArg::Basis)]
        proposal: ProposalArg,
    },
    /// Transform into Y∩Z and run the annealed estimator; emits JSON.
    Estimate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        params: ParamVec,
        #[arg(long)]
        class: GraphClass,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        groups: Option<usize>,
        #[arg(long)]
        samples_per_stage: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Torus,
    Octahedron,
    K44,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    #[value(name = "8v")]
    EightVertex,
    #[value(name = "ec")]
    EvenColoring,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::EightVertex => Model::EightVertex,
            ModelArg::EvenColoring => Model::EvenColoring,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Holant,
    Groups,
    Bijection,
    Signs,
    Counting,
    Invariance,
    Preimage,
    Chain,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Holant => vec![Suite::Holant],
            SuiteArg::Groups => vec![Suite::Groups],
            SuiteArg::Bijection => vec![Suite::Bijection],
            SuiteArg::Signs => vec![Suite::Signs],
            SuiteArg::Counting => vec![Suite::Counting],
            SuiteArg::Invariance => vec![Suite::Invariance],
            SuiteArg::Preimage => vec![Suite::Preimage],
            SuiteArg::Chain => vec![Suite::Chain],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProposalArg {
    Basis,
    BasisOrFace,
}

impl From<ProposalArg> for Proposal {
    fn from(p: ProposalArg) -> Proposal {
        match p {
            ProposalArg::Basis => Proposal::BasisCycle,
            ProposalArg::BasisOrFace => Proposal::BasisOrFace,
        }
    }
}

/// Failed verification, distinct from usage and runtime errors.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn read_graph(path: &Path) -> Result<LabeledGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn chain_config(seed: u64, laziness: Option<f64>, proposal: ProposalArg) -> ChainConfig {
    let mut cfg = ChainConfig::new(seed);
    if let Some(l) = laziness {
        cfg.laziness = l;
    }
    cfg.proposal = proposal.into();
    cfg
}

fn group_table_text(class: GraphClass) -> Result<String> {
    let table = group_table(class)?;
    let mut out = format!(
        "# group ⟨{}⟩ order {}\n",
        class.generator_names().join(", "),
        table.rows.len()
    );
    for row in &table.rows {
        let word = if row.word.is_empty() {
            "I".to_string()
        } else {
            row.word.join(" ")
        };
        out.push_str(&format!(
            "{}\tword: {}\torder: {}\n",
            row.label, word, row.order
        ));
        for line in row.matrix.rows_as_strings() {
            let cells: Vec<String> = line.iter().map(|c| format!("{c:>5}")).collect();
            out.push_str(&format!("  [{} ]\n", cells.join("")));
        }
    }
    let fp = &table.fingerprint;
    out.push_str(&format!(
        "# fingerprint: order {}, abelian {}, element orders {:?}\n",
        fp.order, fp.abelian, fp.element_orders
    ));
    Ok(out)
}

#[derive(Serialize)]
struct EstimateOutput<'a> {
    value: f64,
    method: &'a eightvertex::estimator::EstimateMethod,
    plan: &'a eightvertex::TransformPlan,
    stages: usize,
    diagnostics: &'a eightvertex::Estimate,
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    match cli.command {
        Command::Gen {
            kind,
            rows,
            cols,
            out,
        } => {
            let g = match kind {
                GraphKind::Torus => {
                    if rows < 2 || cols < 2 {
                        return Err(anyhow!(clap::Error::raw(
                            clap::error::ErrorKind::ValueValidation,
                            "torus needs --rows and --cols of at least 2\n",
                        )));
                    }
                    gen_torus(rows, cols)
                }
                GraphKind::Octahedron => gen_octahedron(),
                GraphKind::K44 => gen_k44(),
            };
            emit(out.as_deref(), &serialize_graph(&g))
        }
        Command::Exact {
            graph,
            params,
            model,
        } => {
            let g = read_graph(&graph)?;
            let census = census_with_cap(
                &g,
                model.into(),
                eightvertex::states::DEFAULT_ENUMERATION_CAP,
            )?;
            emit(
                None,
                &format!("{}\n", format_rational(&census.evaluate(&params))),
            )
        }
        Command::Census { graph, model, out } => {
            let g = read_graph(&graph)?;
            let census = census_with_cap(
                &g,
                model.into(),
                eightvertex::states::DEFAULT_ENUMERATION_CAP,
            )?;
            emit(out.as_deref(), &census.to_csv())
        }
        Command::GroupTable { class, format } => {
            let text = match format {
                Format::Text => group_table_text(class)?,
                Format::Json => json(&group_table(class)?)?,
            };
            emit(None, &text)
        }
        Command::Plan { params, class } => match plan_transform(&params, class) {
            Ok(plan) => emit(None, &json(&plan)?),
            Err(failure) => {
                eprint!("{}", json(&failure)?);
                Err(failure.into())
            }
        },
        Command::Verify {
            suite,
            seed,
            format,
        } => {
            let report = verify(&suite.suites(), seed);
            let text = match format {
                Format::Text => report.table(),
                Format::Json => json(&report)?,
            };
            emit(None, &text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(VerificationFailed.into())
            }
        }
        Command::Sample {
            graph,
            params,
            seed,
            samples,
            burn_in,
            thinning,
            laziness,
            proposal,
        } => {
            let g = read_graph(&graph)?;
            let mut cfg = chain_config(seed, laziness, proposal);
            if let Some(b) = burn_in {
                cfg.burn_in = b;
            }
            if let Some(t) = thinning {
                cfg.thinning = t;
            }
            let states = sample(&g, &params, &cfg, samples)?;
            let mut text = String::with_capacity(states.len() * (g.edge_count() + 1));
            for s in &states {
                text.push_str(&s.to_bit_string());
                text.push('\n');
            }
            emit(None, &text)
        }
        Command::DiagnoseChain {
            graph,
            params,
            threshold,
            max_steps,
            laziness,
            proposal,
        } => {
            let g = read_graph(&graph)?;
            let d = exact_chain_diagnostics(
                &g,
                &params,
                &chain_config(0, laziness, proposal),
                threshold,
                max_steps,
            )?;
            eprintln!(
                "states {} moves {} rows_sum_to_one {} detailed_balance {} stationary {} steps_to_threshold {}",
                d.states,
                d.moves,
                d.rows_sum_to_one,
                d.detailed_balance,
                d.stationary,
                d.steps_to_threshold.map(|s| s.to_string()).unwrap_or_else(|| "none".into())
            );
            emit(None, &d.tv_csv())?;
            if d.passed() {
                Ok(())
            } else {
                Err(VerificationFailed.into())
            }
        }
        Command::Estimate {
            graph,
            params,
            class,
            eps,
            delta,
            seed,
            groups,
            samples_per_stage,
        } => {
            let g = read_graph(&graph)?;
            let cfg = EstimatorConfig {
                groups,
                samples_per_stage,
                ..EstimatorConfig::new(seed)
            };
            let r = estimate_z8v(&g, &params, class, eps, delta, &cfg)?;
            for w in &r.estimate.warnings {
                eprintln!("warning: {w}");
            }
            emit(
                None,
                &json(&EstimateOutput {
                    value: r.value,
                    method: &r.estimate.method,
                    plan: &r.plan,
                    stages: r.estimate.stages,
                    diagnostics: &r.estimate,
                })?,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<VerificationFailed>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            if let Some(ce) = e.downcast_ref::<clap::Error>() {
                let _ = ce.print();
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
