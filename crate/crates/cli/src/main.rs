use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use unionstab_core::casestudy::{run_case_study_63, CaseStudyOptions, CaseStudyReport};
use unionstab_core::diagram::plat::{
    cf_to_fraction, default_tunnel_spec, two_bridge_plat, ContinuedFraction,
};
use unionstab_core::diagram::surgery::{attach_tunnels, perturb};
use unionstab_core::diagram::text::{emit_diagram, parse_diagram};
use unionstab_core::diagram::{PlanarDiagram, TunnelSide, TunnelSpec};
use unionstab_core::genus::{
    euler_glue_check, prop21_bound, prop32_bound, prop33_bounds, thm22_bound, GnPresentation,
};
use unionstab_core::group::{
    abelianization, builtin_group, count_homs, not_free_witness, tietze_simplify, CountOptions,
    FiniteGroupTable, GroupPresentation, TietzeOptions, Verdict, DEFAULT_BUDGET,
};
use unionstab_core::wirtinger::wirtinger;

/// Planar diagrams of knots with tunnels, Wirtinger presentations,
/// finite-quotient analysis and Heegaard genus bounds.
#[derive(Parser)]
#[command(name = "unionstab", version, max_term_width = 100)]
struct Cli {
    /// Relator-evaluation budget for homomorphism counting
    /// (env: UNIONSTAB_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Count the first generator over conjugacy class representatives only,
    /// weighting by class size.
    #[arg(long, global = true)]
    symmetry_reduction: bool,

    /// Worker threads for homomorphism counting.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the 4-plat diagram of a 2-bridge knot or link.
    TwoBridge {
        /// Continued fraction terms, comma separated, like 2,1,1,2.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        cf: Vec<i64>,
    },
    /// Check the structural invariants of a diagram file.
    Validate { file: PathBuf },
    /// Attach unknotting tunnels to a plat or 0-crossing unknot diagram.
    AttachTunnels {
        /// Attach the upper tunnel (bridge level below the top caps).
        #[arg(long)]
        upper: bool,
        /// Attach the lower tunnel (above the bottom caps).
        #[arg(long)]
        lower: bool,
        file: PathBuf,
    },
    /// Resolve the two unresolved tunnel intersections; cases 1..=4 pick
    /// over/over, over/under, under/over, under/under for the first edge
    /// of each intersection record.
    Perturb {
        #[arg(long)]
        case: usize,
        file: PathBuf,
    },
    /// Wirtinger presentation of the diagram's exterior group.
    Wirtinger { file: PathBuf },
    /// Tietze-simplify a presentation file.
    Simplify {
        file: PathBuf,
        /// Maximum number of simplification moves.
        #[arg(long, default_value_t = 10_000)]
        moves: usize,
    },
    /// Abelian invariants (Smith normal form) of a presentation file.
    Abelianize { file: PathBuf },
    /// Count homomorphisms from a presented group to a finite group.
    CountHoms {
        /// Builtin group name (Z2..Z5, S3, D4, A4, S4, A5) or a Cayley
        /// table file path.
        #[arg(long)]
        group: String,
        file: PathBuf,
    },
    /// Look for a witness that the presented group is not free of the
    /// given rank. Exit code 0 when a witness is found, 2 when the scan is
    /// inconclusive.
    NotFree {
        #[arg(long)]
        rank: usize,
        /// Comma-separated candidate groups, tried in order.
        #[arg(long, value_delimiter = ',', default_value = "S3,A4,S4,A5")]
        groups: Vec<String>,
        file: PathBuf,
    },
    /// Genus and tunnel-number bound rules.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Run the full tunnel-perturbation pipeline on a 2-bridge knot
    /// (by default the knot 6_3, fraction 13/5). Exit code 0 when every
    /// case has a not-free witness, 2 when some case is inconclusive.
    #[command(name = "case-study-63")]
    CaseStudy63 {
        /// Continued fraction of the knot.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "2,1,1,2")]
        cf: Vec<i64>,
        /// Candidate witness groups, tried cheapest first.
        #[arg(long, value_delimiter = ',', default_value = "S3,A4,S4,A5")]
        groups: Vec<String>,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Union stabilization genus of two isotopic genus-g splittings.
    Prop21 {
        #[arg(long)]
        g: u64,
    },
    /// Union stabilization genus from a spine diagram with crossings.
    Thm22 {
        #[arg(long)]
        g1: u64,
        #[arg(long)]
        g2: u64,
        #[arg(long)]
        crossings: u64,
    },
    /// Union genus when the second spine lies on the first surface.
    Prop32 {
        #[arg(long)]
        g1: u64,
        #[arg(long)]
        g2: u64,
    },
    /// Tunnel number and union genus bounds of a (g, n) presentation.
    Prop33 {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        n: u64,
        /// Also run the Euler-characteristic consistency check.
        #[arg(long)]
        euler_check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_diagram(path: &PathBuf) -> Result<PlanarDiagram> {
    Ok(parse_diagram(&read_input(path)?)?)
}

fn load_presentation(path: &PathBuf) -> Result<GroupPresentation> {
    Ok(GroupPresentation::parse(&read_input(path)?)?)
}

fn load_group(name: &str) -> Result<FiniteGroupTable> {
    match builtin_group(name) {
        Ok(g) => Ok(g),
        Err(_) if std::path::Path::new(name).exists() => {
            let text = std::fs::read_to_string(name)?;
            let stem = std::path::Path::new(name)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("file-group");
            Ok(FiniteGroupTable::parse(stem, &text)?)
        }
        Err(e) => Err(anyhow!(e)),
    }
}

fn count_options(cli: &Cli) -> Result<CountOptions> {
    let budget = match cli.budget {
        Some(b) => b,
        None => match std::env::var("UNIONSTAB_BUDGET") {
            Ok(v) => v
                .parse::<u64>()
                .map_err(|e| anyhow!("UNIONSTAB_BUDGET must be an integer: {e}"))?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    Ok(CountOptions::default()
        .with_budget(budget)
        .with_symmetry_reduction(cli.symmetry_reduction)
        .with_jobs(cli.jobs))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let counting = count_options(&cli)?;
    let output = cli.output;
    match &cli.command {
        Command::TwoBridge { cf } => {
            let cf = ContinuedFraction::new(cf.clone())?;
            let fraction = cf_to_fraction(&cf)?;
            let d = two_bridge_plat(&cf)?;
            eprintln!(
                "# fraction {fraction}, {} crossings, {} component(s)",
                d.crossings.len(),
                d.component_count()
            );
            print!("{}", emit_diagram(&d));
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { file } => {
            let d = load_diagram(file)?;
            let report = d.validate();
            if output == Output::Json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::AttachTunnels { upper, lower, file } => {
            let d = load_diagram(file)?;
            let mut specs: Vec<TunnelSpec> = Vec::new();
            let frame_cf = d.frame.as_ref().map(|f| f.cf.clone());
            let for_side = |side: TunnelSide| -> Result<TunnelSpec> {
                match &frame_cf {
                    Some(cf) => Ok(default_tunnel_spec(&ContinuedFraction::new(cf.clone())?, side)),
                    None => Ok(TunnelSpec { side, positions: (2, 3) }),
                }
            };
            if *upper {
                specs.push(for_side(TunnelSide::Upper)?);
            }
            if *lower {
                specs.push(for_side(TunnelSide::Lower)?);
            }
            if specs.is_empty() {
                bail!("nothing to attach: pass --upper and/or --lower");
            }
            let out = attach_tunnels(&d, &specs)?;
            eprintln!(
                "# {} crossings, {} vertices, {} unresolved intersection(s), neighborhood genus {}",
                out.crossings.len(),
                out.vertices.len(),
                out.intersections.len(),
                out.first_betti_number()
            );
            print!("{}", emit_diagram(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::Perturb { case, file } => {
            let d = load_diagram(file)?;
            let out = perturb(&d, *case)?;
            print!("{}", emit_diagram(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::Wirtinger { file } => {
            let d = load_diagram(file)?;
            let p = wirtinger(&d)?;
            print!("{}", p.emit());
            Ok(ExitCode::SUCCESS)
        }
        Command::Simplify { file, moves } => {
            let p = load_presentation(file)?;
            let q = tietze_simplify(&p, &TietzeOptions { max_moves: *moves, ..Default::default() });
            print!("{}", q.emit());
            Ok(ExitCode::SUCCESS)
        }
        Command::Abelianize { file } => {
            let p = load_presentation(file)?;
            let inv = abelianization(&p);
            if output == Output::Json {
                println!("{}", serde_json::to_string_pretty(&inv)?);
            } else {
                println!("{inv}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CountHoms { group, file } => {
            let p = load_presentation(file)?;
            let g = load_group(group)?;
            let n = count_homs(&p, &g, &counting)?;
            if output == Output::Json {
                println!(
                    "{}",
                    serde_json::json!({ "group": g.name(), "order": g.order(), "count": n.to_string() })
                );
            } else {
                println!("{n}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::NotFree { rank, groups, file } => {
            let p = load_presentation(file)?;
            let candidates = groups.iter().map(|n| load_group(n)).collect::<Result<Vec<_>>>()?;
            let report = not_free_witness(&p, *rank, &candidates, &counting);
            if output == Output::Json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{}", report.verdict);
                for s in &report.skipped {
                    println!("skipped {}: {}", s.group, s.reason);
                }
            }
            Ok(match report.verdict {
                Verdict::Inconclusive { .. } => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Bounds(cmd) => {
            let reports = match cmd {
                BoundsCommand::Prop21 { g } => vec![prop21_bound(*g)],
                BoundsCommand::Thm22 { g1, g2, crossings } => {
                    vec![thm22_bound(*g1, *g2, *crossings)]
                }
                BoundsCommand::Prop32 { g1, g2 } => vec![prop32_bound(*g1, *g2)],
                BoundsCommand::Prop33 { g, n, euler_check } => {
                    let p = GnPresentation::new(*g, *n)?;
                    let (t, u) = prop33_bounds(p);
                    let mut v = vec![t, u];
                    if *euler_check {
                        v.push(euler_glue_check(p));
                    }
                    v
                }
            };
            if output == Output::Json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CaseStudy63 { cf, groups } => {
            let opts = CaseStudyOptions {
                cf: cf.clone(),
                candidates: groups.clone(),
                count: counting,
                tietze: TietzeOptions::default(),
            };
            let report = run_case_study_63(&opts)?;
            if output == Output::Json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print_case_study(&report);
            }
            Ok(if report.all_cases_not_free { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn print_case_study(r: &CaseStudyReport) {
    println!("2-bridge knot with fraction {} (cf {:?})", r.fraction, r.cf);
    println!(
        "plat: {} crossings; with tunnels: {} crossings, {} unresolved intersections",
        r.base_crossings, r.attached_crossings, r.unresolved_intersections
    );
    println!("candidate witness groups: {}", r.candidates.join(", "));
    println!();
    println!(
        "{:<5} {:<12} {:<10} {:<14} {:<10} {:<42} {:>8}",
        "case", "upper tunnel", "crossings", "presentation", "H1", "verdict", "ms"
    );
    for c in &r.cases {
        let shape = format!(
            "{}g/{}r -> {}g/{}r",
            c.generators, c.relators, c.simplified_generators, c.simplified_relators
        );
        println!(
            "{:<5} {:<12} {:<10} {:<14} {:<10} {:<42} {:>8}",
            c.case,
            format!("{},{}", c.upper_tunnel_roles.0, c.upper_tunnel_roles.1),
            c.crossings,
            shape,
            c.report.abelianization.to_string(),
            c.report.verdict.to_string(),
            c.wall_ms
        );
        for s in &c.report.skipped {
            println!("      skipped {}: {}", s.group, s.reason);
        }
    }
    println!();
    if r.all_cases_not_free {
        println!("all four perturbation cases fail to give a genus-3 handlebody exterior");
    } else {
        println!("some cases are inconclusive: no witness found among the candidates");
    }
}
