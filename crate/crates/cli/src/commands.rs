//! Subcommand definitions and their handlers.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ulam_core::kcenter::{solve_kcenter, CenterVerdict, ColoringFamilyConfig};
use ulam_core::kmedian::{kernelize, pair_scheme_encode, solve_kmedian_with, MedianVerdict, PairSchemeString, XpConfig};
use ulam_core::oracles::{
    brute_kcenter, brute_kmedian, closest_string_center, verify_center_solution, verify_median_solution,
    OracleLimits,
};
use ulam_core::reductions::{
    center_solution_from_cover, gen_center_from_closest_string, gen_center_from_vertex_cover,
    gen_median_from_multicolored_clique, gen_planted, mcc_certificate, min_vertex_cover, subdivide_2, PlantedMode,
    SimpleGraph,
};
use ulam_core::{ulam_distance, Instance, SymbolTable};

use crate::document::{parameters, tokens, Problem, ResultDocument, Stats, VerdictTag, WitnessDoc};
use crate::error::{CliError, Result};
use crate::format::{emit_instance, emit_solution, parse_instance, parse_solution, read_file, write_file};

/// Environment variable overriding the oracle and move-enumeration work guards.
pub const WORK_LIMIT_VAR: &str = "ULAM_WORK_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "ulam", version, about = "Exact k-center and k-median clustering of permutations under the Ulam metric")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ulam distance between two permutations, given inline or as files.
    Dist { a: String, b: String },
    /// Decide an instance and print the verdict with a witness.
    Solve(SolveArgs),
    /// Generate instances from graphs, strings or a planted model.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Shrink a k-median instance and report what changed.
    Kernelize(KernelizeArgs),
    /// Check a solution file against an instance.
    Verify {
        problem: ProblemArg,
        instance: PathBuf,
        solution: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Center,
    Median,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub problem: ProblemArg,
    pub instance: PathBuf,
    /// Coloring family for the k-center search.
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Failure exponent of the random family.
    #[arg(long, default_value_t = 20)]
    pub lambda: u32,
    #[arg(long)]
    pub json: bool,
    /// Use the brute-force reference instead of the solver.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// k-center instance from a triangle-free graph.
    Vc {
        graph: PathBuf,
        /// Number of centers; defaults to the minimum vertex cover size.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Subdivide every edge twice first (removes triangles).
        #[arg(long)]
        subdivide: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// 1-center instance from binary strings.
    Cs {
        /// Bitstrings, or a file with one per line.
        #[arg(required = true)]
        strings: Vec<String>,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k-median instance from a properly colored graph.
    Mcc {
        graph: PathBuf,
        /// Number of colors; defaults to the colors used in the graph.
        #[arg(long)]
        colors: Option<usize>,
        /// Comma-separated 1-based clique vertices for the certificate.
        #[arg(long)]
        clique: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random instance with known centers.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Spend the budget `d` in total rather than per permutation.
        #[arg(long)]
        median: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    pub instance: PathBuf,
    /// Print the report (with the reduced instance embedded) as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Text for both streams plus the process exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }
}

pub fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Dist { a, b } => dist(&a, &b),
        Command::Solve(args) => solve(&args),
        Command::Gen(cmd) => generate(cmd),
        Command::Kernelize(args) => kernelize_cmd(&args),
        Command::Verify {
            problem,
            instance,
            solution,
        } => verify(problem, &instance, &solution),
    }
}

fn work_limit() -> Result<Option<u128>> {
    match std::env::var(WORK_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{WORK_LIMIT_VAR}={v:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read_file(path)?, &path.display().to_string())
}

/// A literal permutation, the first permutation of an instance file,
/// or the first content line of any other file.
fn permutation_text(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(arg.to_string());
    }
    let text = read_file(path)?;
    if let Ok(inst) = parse_instance(&text, arg) {
        return inst
            .perms
            .first()
            .map(|p| inst.table.render(p))
            .ok_or_else(|| CliError::Usage(format!("{arg}: instance has no permutations")));
    }
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .ok_or_else(|| CliError::Usage(format!("{arg}: no permutation line")))
}

fn dist(a: &str, b: &str) -> Result<Output> {
    let (a, b) = (permutation_text(a)?, permutation_text(b)?);
    let table = SymbolTable::new(a.split_whitespace())?;
    let (pa, pb) = (table.parse_permutation(&a)?, table.parse_permutation(&b)?);
    Ok(Output::ok(format!("{}\n", ulam_distance(&pa, &pb)?)))
}

fn solve(args: &SolveArgs) -> Result<Output> {
    let inst = load_instance(&args.instance)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let mut doc = pool.install(|| match args.problem {
        ProblemArg::Center => solve_center(&inst, args),
        ProblemArg::Median => solve_median(&inst, args),
    })?;
    doc.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    doc.threads = args.threads.max(1);
    let code = doc.verdict.exit_code();
    let stdout = if args.json {
        serde_json::to_string_pretty(&doc)? + "\n"
    } else {
        doc.to_text()
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code,
    })
}

fn oracle_limits() -> Result<OracleLimits> {
    Ok(OracleLimits {
        work_limit: work_limit()?,
        ..OracleLimits::default()
    })
}

fn document(inst: &Instance, problem: Problem, verdict: VerdictTag, witness: Option<WitnessDoc>, mode: &str) -> ResultDocument {
    ResultDocument {
        problem,
        verdict,
        parameters: parameters(inst),
        witness,
        stats: Stats::default(),
        mode: mode.to_string(),
        seed: None,
        lambda: None,
        threads: 1,
    }
}

fn solve_center(inst: &Instance, args: &SolveArgs) -> Result<ResultDocument> {
    let center_witness = |centers: &[ulam_core::Permutation], assignment: Vec<usize>, radius: usize| WitnessDoc::Center {
        centers: tokens(inst, centers),
        assignment,
        radius,
    };
    if args.oracle {
        let v = brute_kcenter(inst, &oracle_limits()?)?;
        return Ok(match v.witness {
            Some(w) => document(inst, Problem::Center, VerdictTag::Yes, Some(center_witness(&w.perms, w.assignment, w.value)), "oracle"),
            None => document(inst, Problem::Center, VerdictTag::No, None, "oracle"),
        });
    }
    let (cfg, mode) = match args.family {
        FamilyArg::Exhaustive => (ColoringFamilyConfig::exhaustive(), "exhaustive"),
        FamilyArg::Random => (ColoringFamilyConfig::randomized(args.seed, args.lambda), "random"),
    };
    let out = solve_kcenter(inst, &cfg)?;
    let mut doc = match out.verdict {
        CenterVerdict::Yes(sol) => document(
            inst,
            Problem::Center,
            VerdictTag::Yes,
            Some(center_witness(&sol.centers, sol.assignment, sol.radius)),
            mode,
        ),
        CenterVerdict::No { probabilistic } => {
            let tag = if probabilistic {
                VerdictTag::NoProbabilistic
            } else {
                VerdictTag::No
            };
            document(inst, Problem::Center, tag, None, mode)
        }
    };
    doc.stats.nodes_expanded = out.stats.nodes_expanded;
    doc.stats.family_size = out.stats.family_size;
    if args.family == FamilyArg::Random {
        doc.seed = Some(args.seed);
        doc.lambda = Some(args.lambda);
    }
    Ok(doc)
}

fn solve_median(inst: &Instance, args: &SolveArgs) -> Result<ResultDocument> {
    let median_witness = |medians: &[ulam_core::Permutation], assignment: Vec<usize>, cost: usize| WitnessDoc::Median {
        medians: tokens(inst, medians),
        assignment,
        cost,
    };
    if args.oracle {
        let v = brute_kmedian(inst, &oracle_limits()?)?;
        return Ok(match v.witness {
            Some(w) => document(inst, Problem::Median, VerdictTag::Yes, Some(median_witness(&w.perms, w.assignment, w.value)), "oracle"),
            None => document(inst, Problem::Median, VerdictTag::No, None, "oracle"),
        });
    }
    let cfg = match work_limit()? {
        Some(work_bound) => XpConfig { work_bound },
        None => XpConfig::default(),
    };
    let out = solve_kmedian_with(inst, &cfg)?;
    let mut doc = match out.verdict {
        MedianVerdict::Yes(sol) => document(
            inst,
            Problem::Median,
            VerdictTag::Yes,
            Some(median_witness(&sol.medians, sol.assignment, sol.cost)),
            "kernel+xp",
        ),
        MedianVerdict::No => document(inst, Problem::Median, VerdictTag::No, None, "kernel+xp"),
    };
    doc.stats.nodes_expanded = out.nodes_expanded;
    doc.stats.warning = out.warning;
    Ok(doc)
}

fn load_graph(path: &Path) -> Result<SimpleGraph> {
    Ok(SimpleGraph::parse(&read_file(path)?)?)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".cert");
    PathBuf::from(s)
}

/// Writes the instance (and certificate, when writing to a file).
fn emit_generated(inst: &Instance, certificate: String, out: Option<&Path>) -> Result<Output> {
    let text = emit_instance(inst);
    match out {
        None => Ok(Output::ok(text)),
        Some(path) => {
            write_file(path, &text)?;
            let cert = sidecar_path(path);
            write_file(&cert, &certificate)?;
            Ok(Output::ok(format!(
                "wrote {} (u {} {} {} {}) and {}\n",
                path.display(),
                inst.n(),
                inst.m(),
                inst.k,
                inst.d,
                cert.display()
            )))
        }
    }
}

fn one_based(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn generate(cmd: GenCommand) -> Result<Output> {
    match cmd {
        GenCommand::Vc {
            graph,
            k,
            d,
            subdivide,
            out,
        } => {
            let mut g = load_graph(&graph)?;
            if subdivide {
                g = subdivide_2(&g)?.0;
            }
            let cover = min_vertex_cover(&g).ok();
            let k = match (k, &cover) {
                (Some(k), _) => k,
                (None, Some(c)) => c.len(),
                (None, None) => {
                    return Err(CliError::Usage("graph too large for an automatic --k; pass it explicitly".into()))
                }
            };
            let inst = gen_center_from_vertex_cover(&g, k, d)?;
            let cert = match cover {
                Some(c) if c.len() <= k => emit_solution(
                    &inst.table,
                    &center_solution_from_cover(&g, &c, d)?,
                    &[format!("vertex cover: {}", one_based(&c))],
                ),
                Some(c) => format!("# minimum vertex cover has {} > {k} vertices\n", c.len()),
                None => "# no certificate: graph too large for the cover search\n".into(),
            };
            emit_generated(&inst, cert, out.as_deref())
        }
        GenCommand::Cs { strings, d, out } => {
            let raw: Vec<String> = if strings.len() == 1 && Path::new(&strings[0]).is_file() {
                read_file(Path::new(&strings[0]))?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(str::to_string)
                    .collect()
            } else {
                strings
            };
            let parsed: Vec<PairSchemeString> = raw.iter().map(|s| PairSchemeString::parse(s)).collect::<ulam_core::Result<_>>()?;
            let inst = gen_center_from_closest_string(&parsed, d)?;
            let bits: Vec<Vec<bool>> = parsed.iter().map(|s| s.bits().to_vec()).collect();
            let cert = match closest_string_center(&bits) {
                Ok((radius, center)) if radius <= d => {
                    let center = PairSchemeString::new(center);
                    emit_solution(
                        &inst.table,
                        &[pair_scheme_encode(&center)],
                        &[format!("closest string {center}, radius {radius}")],
                    )
                }
                Ok((radius, _)) => format!("# closest string radius {radius} exceeds {d}\n"),
                Err(e) => format!("# no certificate: {e}\n"),
            };
            emit_generated(&inst, cert, out.as_deref())
        }
        GenCommand::Mcc {
            graph,
            colors,
            clique,
            out,
        } => {
            let g = load_graph(&graph)?;
            let colors = colors.unwrap_or_else(|| g.color_count());
            let (inst, params) = gen_median_from_multicolored_clique(&g, colors)?;
            let clique = match clique {
                Some(list) => Some(parse_vertex_list(&list, g.vertex_count())?),
                None => find_multicolored_clique(&g, colors),
            };
            let cert = match clique {
                Some(q) => {
                    let (medians, _) = mcc_certificate(&inst, &params, &q)?;
                    emit_solution(&inst.table, &medians, &[format!("multicolored clique: {}", one_based(&q))])
                }
                None => "# no multicolored clique found\n".into(),
            };
            emit_generated(&inst, cert, out.as_deref())
        }
        GenCommand::Planted {
            n,
            m,
            k,
            d,
            seed,
            median,
            out,
        } => {
            let mode = if median {
                PlantedMode::Median
            } else {
                PlantedMode::Center
            };
            let (inst, centers) = gen_planted(n, m, k, d, seed, mode)?;
            let cert = emit_solution(&inst.table, &centers, &[format!("planted centers, seed {seed}")]);
            emit_generated(&inst, cert, out.as_deref())
        }
    }
}

fn parse_vertex_list(list: &str, vertex_count: usize) -> Result<Vec<usize>> {
    list.split(',')
        .map(|v| match v.trim().parse::<usize>() {
            Ok(x) if (1..=vertex_count).contains(&x) => Ok(x - 1),
            _ => Err(CliError::Usage(format!("{v:?} is not a vertex in 1..={vertex_count}"))),
        })
        .collect()
}

/// One vertex per color, pairwise adjacent; first hit in lexicographic order.
fn find_multicolored_clique(g: &SimpleGraph, colors: usize) -> Option<Vec<usize>> {
    let coloring = g.colors()?;
    let classes: Vec<Vec<usize>> = (0..colors)
        .map(|c| (0..g.vertex_count()).filter(|&v| coloring[v] == c).collect())
        .collect();
    fn extend(g: &SimpleGraph, classes: &[Vec<usize>], picked: &mut Vec<usize>) -> bool {
        let Some(class) = classes.get(picked.len()) else {
            return true;
        };
        for &v in class {
            if picked.iter().all(|&u| g.has_edge(u, v)) {
                picked.push(v);
                if extend(g, classes, picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    let mut picked = Vec::new();
    extend(g, &classes, &mut picked).then_some(picked)
}

fn kernelize_cmd(args: &KernelizeArgs) -> Result<Output> {
    let inst = load_instance(&args.instance)?;
    let (kernel, report) = kernelize(&inst)?;
    let text = emit_instance(&kernel);
    let summary = format!(
        "n {} -> {}, m {} -> {}, {} contractions{}\n",
        report.original_n,
        report.reduced_n,
        report.original_m,
        report.reduced_m,
        report.contracted.len(),
        if report.trivial_no {
            ", too many distinct permutations: fixed no-instance"
        } else {
            ""
        }
    );
    if let Some(path) = &args.out {
        write_file(path, &text)?;
    }
    let stdout = if args.json {
        let mut value = serde_json::to_value(&report)?;
        value["instance"] = serde_json::Value::String(text);
        serde_json::to_string_pretty(&value)? + "\n"
    } else if args.out.is_some() {
        String::new()
    } else {
        text
    };
    Ok(Output {
        stdout,
        stderr: summary,
        code: 0,
    })
}

fn verify(problem: ProblemArg, instance: &Path, solution: &Path) -> Result<Output> {
    let inst = load_instance(instance)?;
    let sol = parse_solution(&read_file(solution)?, &inst.table, &solution.display().to_string())?;
    let (check, what) = match problem {
        ProblemArg::Center => (verify_center_solution(&inst, &sol)?, "radius"),
        ProblemArg::Median => (verify_median_solution(&inst, &sol)?, "cost"),
    };
    let count_ok = sol.len() <= inst.k;
    let ok = check.ok && count_ok;
    let mut stdout = String::new();
    if check.value == usize::MAX {
        stdout += &format!("{what} unbounded (no permutations given)\n");
    } else {
        stdout += &format!("{what} {}\n", check.value);
    }
    if !count_ok {
        stdout += &format!("{} permutations exceed k = {}\n", sol.len(), inst.k);
    }
    stdout += if ok { "ok\n" } else { "fails\n" };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code: if ok { 0 } else { 1 },
    })
}
