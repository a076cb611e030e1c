use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use nzflow::families::{self, Family};
use nzflow::flow::{solve_nz_kflow, verify_flow, FlowError};
use nzflow::format;
use nzflow::pipeline::{check_hypotheses, solve_three_flow, PipelineError};
use nzflow::quotient::certify_multicover;
use nzflow::{Flow, Graph, Orientation, PermGroup, PipelineOptions, SolverConfig};

const OK: u8 = 0;
const INFEASIBLE: u8 = 1;
const ERROR: u8 = 2;
const OUT_OF_SCOPE: u8 = 3;

#[derive(Parser)]
#[command(name = "nzflow", version, about = "Nowhere-zero flows on symmetric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a nowhere-zero k-flow.
    Solve {
        graph: PathBuf,
        #[arg(short)]
        k: u32,
        /// Write the flow here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a flow against a graph.
    Verify { graph: PathBuf, flow: PathBuf },
    /// Build a nowhere-zero 3-flow from a solvable arc-transitive group.
    Pipeline {
        graph: PathBuf,
        /// One group, or one per component with --per-component.
        #[arg(required = true)]
        groups: Vec<PathBuf>,
        /// Use the generic solver when the group hypotheses fail.
        #[arg(long)]
        fallback: bool,
        /// Split a disconnected graph into components (ordered by smallest
        /// vertex) and solve each with its own group, given on the
        /// component's local vertex numbering.
        #[arg(long)]
        per_component: bool,
        /// Write the step records and flow to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Order and derived series of a group; hypothesis report with --graph.
    Group {
        group: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Certify a graph as a multicover of its quotient.
    Quotient {
        graph: PathBuf,
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        partition: Option<PathBuf>,
        /// Use the orbits of this group as the partition.
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Generate a graph family.
    ///
    /// Families: cycle N, complete N, complete_bipartite A B,
    /// circulant N S.., cayley zAxzB.. {(..),..}, octahedron, petersen,
    /// hypercube D, clebsch, singer_k8, heisenberg P.
    Gen {
        family: String,
        params: Vec<String>,
        /// Write the graph here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the family's symmetry group here.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Write the regular subgroup of a Cayley-type family here.
        #[arg(long)]
        regular_group: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solver_config() -> Result<SolverConfig> {
    match std::env::var("NZFLOW_BUDGET") {
        Ok(s) => {
            let budget = s
                .trim()
                .parse()
                .with_context(|| format!("NZFLOW_BUDGET is not a number: `{s}`"))?;
            Ok(SolverConfig {
                budget: Some(budget),
            })
        }
        Err(_) => Ok(SolverConfig::default()),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { graph, k, output } => {
            let g = format::parse_graph(&read(&graph)?)?;
            match solve_nz_kflow(&g, k, &solver_config()?) {
                Ok(Some(flow)) => {
                    emit(&format::write_flow(&flow), output.as_deref())?;
                    Ok(OK)
                }
                Ok(None) => {
                    println!("INFEASIBLE");
                    Ok(INFEASIBLE)
                }
                Err(e @ FlowError::BudgetExceeded { .. }) => {
                    eprintln!("{e}");
                    Ok(ERROR)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { graph, flow } => {
            let g = format::parse_graph(&read(&graph)?)?;
            let f = format::parse_flow(&read(&flow)?)?;
            let report = verify_flow(&g, &f);
            println!("{report}");
            Ok(if report.is_nowhere_zero() { OK } else { INFEASIBLE })
        }
        Command::Pipeline {
            graph,
            groups,
            fallback,
            per_component,
            trace,
            output,
        } => {
            let g = format::parse_graph(&read(&graph)?)?;
            let groups = groups
                .iter()
                .map(|path| Ok(format::parse_group(&read(path)?)?))
                .collect::<Result<Vec<_>>>()?;
            let opts = PipelineOptions {
                fallback,
                solver: solver_config()?,
            };
            let result = if per_component {
                pipeline_per_component(&g, &groups, &opts)?
            } else {
                if groups.len() != 1 {
                    bail!("expected one group file, found {} (see --per-component)", groups.len());
                }
                solve_three_flow(&g, &groups[0], &opts).map(|t| (format::write_trace(&t), t.flow))
            };
            match result {
                Ok((trace_text, flow)) => {
                    if let Some(path) = trace {
                        emit(&trace_text, Some(&path))?;
                    }
                    emit(&format::write_flow(&flow), output.as_deref())?;
                    Ok(OK)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(match e {
                        PipelineError::OutsideScope(_) => OUT_OF_SCOPE,
                        PipelineError::Infeasible => {
                            println!("INFEASIBLE");
                            INFEASIBLE
                        }
                        _ => ERROR,
                    })
                }
            }
        }
        Command::Group { group, graph } => {
            let grp = format::parse_group(&read(&group)?)?;
            let series = grp.derived_series()?;
            let order = grp.order()?;
            match series.derived_length {
                Some(l) => {
                    let orders: Vec<String> = series.orders().iter().map(|o| o.to_string()).collect();
                    println!(
                        "order {order}, solvable, derived length {l}, series {}",
                        orders.join(">")
                    );
                }
                None => println!("order {order}, NOT solvable"),
            }
            if let Some(path) = graph {
                let g = format::parse_graph(&read(&path)?)?;
                let report = check_hypotheses(&g, &grp);
                print!("{report}");
                return Ok(if report.all_hold() { OK } else { OUT_OF_SCOPE });
            }
            Ok(OK)
        }
        Command::Quotient {
            graph,
            partition,
            group,
        } => {
            let g = format::parse_graph(&read(&graph)?)?;
            let p = match (partition, group) {
                (Some(path), _) => format::parse_partition(&read(&path)?, g.vertex_count())?,
                (None, Some(path)) => format::parse_group(&read(&path)?)?.orbits(),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            match certify_multicover(&g, &p) {
                Ok(cert) => {
                    print!("{}", format::write_certificate(&cert));
                    Ok(OK)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(OUT_OF_SCOPE)
                }
            }
        }
        Command::Gen {
            family,
            params,
            output,
            group,
            regular_group,
        } => {
            let f = generate(&family, &params)?;
            emit(&format::write_graph(&f.graph), output.as_deref())?;
            if let Some(path) = group {
                emit(&format::write_group(&f.group), Some(&path))?;
            }
            if let Some(path) = regular_group {
                let Some(reg) = &f.regular else {
                    bail!("family `{family}` has no regular subgroup");
                };
                emit(&format::write_group(reg), Some(&path))?;
            }
            Ok(OK)
        }
    }
}

/// Runs the pipeline on every component and glues the flows together. The
/// trace lists each component's steps after a `# component` comment line.
fn pipeline_per_component(
    graph: &Graph,
    groups: &[PermGroup],
    opts: &PipelineOptions,
) -> Result<Result<(String, Flow), PipelineError>> {
    let components = graph.components();
    if components.len() != groups.len() {
        bail!(
            "graph has {} components but {} groups were given",
            components.len(),
            groups.len()
        );
    }
    let mut arcs = graph.edges().to_vec();
    let mut values = vec![0; graph.edge_count()];
    let mut trace_text = String::new();
    for (i, (c, group)) in components.iter().zip(groups).enumerate() {
        let t = match solve_three_flow(&c.graph, group, opts) {
            Ok(t) => t,
            Err(e) => return Ok(Err(e)),
        };
        writeln!(trace_text, "# component {i}").unwrap();
        for step in &t.steps {
            writeln!(trace_text, "{step}").unwrap();
        }
        for (local, &e) in c.edge_map.iter().enumerate() {
            let (tail, head) = t.flow.orientation.arc(local);
            arcs[e] = (c.vertex_map[tail], c.vertex_map[head]);
            values[e] = t.flow.values[local];
        }
    }
    let flow = Flow::new(3, Orientation::from_arcs(arcs), values);
    let report = verify_flow(graph, &flow);
    if !report.is_nowhere_zero() {
        bail!("assembled flow failed verification: {report}");
    }
    trace_text.push_str(&format::write_flow(&flow));
    Ok(Ok((trace_text, flow)))
}

fn ints(params: &[String]) -> Result<Vec<usize>> {
    params
        .iter()
        .map(|p| p.parse().with_context(|| format!("expected an integer, found `{p}`")))
        .collect()
}

fn arity(family: &str, params: &[usize], n: usize) -> Result<()> {
    if params.len() != n {
        bail!("`{family}` takes {n} integer parameters, found {}", params.len());
    }
    Ok(())
}

fn generate(family: &str, params: &[String]) -> Result<Family> {
    if family == "cayley" {
        return cayley(params);
    }
    let p = ints(params)?;
    let f = match family {
        "cycle" => {
            arity(family, &p, 1)?;
            if p[0] < 3 {
                bail!("cycle needs at least 3 vertices");
            }
            families::cycle(p[0])
        }
        "complete" => {
            arity(family, &p, 1)?;
            if p[0] < 2 {
                bail!("complete graph needs at least 2 vertices");
            }
            families::complete(p[0])
        }
        "complete_bipartite" => {
            arity(family, &p, 2)?;
            if p[0] == 0 || p[1] == 0 {
                bail!("both parts must be nonempty");
            }
            families::complete_bipartite(p[0], p[1])
        }
        "circulant" => {
            if p.len() < 2 {
                bail!("circulant takes N followed by at least one jump");
            }
            families::circulant(p[0], &p[1..])?
        }
        "octahedron" => {
            arity(family, &p, 0)?;
            families::octahedron()
        }
        "petersen" => {
            arity(family, &p, 0)?;
            families::petersen()
        }
        "clebsch" => {
            arity(family, &p, 0)?;
            families::clebsch()
        }
        "singer_k8" => {
            arity(family, &p, 0)?;
            families::singer_k8()
        }
        "hypercube" => {
            arity(family, &p, 1)?;
            if !(1..=20).contains(&p[0]) {
                bail!("hypercube dimension must be in 1..=20");
            }
            families::hypercube(p[0])
        }
        "heisenberg" => {
            arity(family, &p, 1)?;
            if !(2..=7).contains(&p[0]) {
                bail!("heisenberg takes p in 2..=7");
            }
            families::heisenberg_bipartite(p[0])
        }
        other => bail!("unknown family `{other}`"),
    };
    Ok(f)
}

/// `cayley z2xz3 {(1,0),(0,1),...}`; the connection set may be split over
/// several arguments.
fn cayley(params: &[String]) -> Result<Family> {
    let Some((group, rest)) = params.split_first() else {
        bail!("cayley takes a group like z2xz2 and a connection set");
    };
    let orders = group
        .to_ascii_lowercase()
        .split('x')
        .map(|part| {
            part.strip_prefix('z')
                .and_then(|n| n.parse::<usize>().ok())
                .with_context(|| format!("bad group factor `{part}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    let set = rest.join("");
    let mut conn = Vec::new();
    for tuple in set.split('(').skip(1) {
        let body = tuple
            .split(')')
            .next()
            .context("unclosed tuple in connection set")?;
        let coords = body
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .with_context(|| format!("bad coordinate `{c}`"))
            })
            .collect::<Result<Vec<_>>>()?;
        conn.push(coords);
    }
    if conn.is_empty() {
        bail!("empty connection set");
    }
    Ok(families::abelian_cayley(&orders, &conn)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
