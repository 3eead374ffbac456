mod commands;
mod input;
mod report;
mod reproduce;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand};

use commands::GoalArg;
use mixhom::pathlab::BranchCase;
use mixhom::TargetName;
use report::{Format, Outcome};
use reproduce::Manifest;

/// Homomorphisms of colored mixed graphs, and finite checks around the
/// small universal targets t5 and t6.
///
/// Exit status: 0 for a positive answer, 1 for a negative one, 2 for
/// usage or input errors.
#[derive(Parser)]
#[command(name = "mixhom", version)]
#[command(after_help = "GRAPH arguments take an MG1 file, a builtin target \
(t5, t6, t4_oriented, t4_2ec) or a construction such as cactus:girth=5.")]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether SOURCE maps to TARGET; prints a witness or NONE.
    Check { source: String, target: String },
    /// Colors a source vertex takes over all homomorphisms.
    Force {
        source: String,
        target: String,
        #[arg(long)]
        vertex: String,
        /// Restrict a source vertex, e.g. `p0=b` or `3=a,c`.
        #[arg(long = "constrain", value_name = "V=SET")]
        constrain: Vec<String>,
    },
    /// Whether the target has a walk of the given shape. Tokens: B and R
    /// for blue and red edges, F and K for forward and backward arcs.
    Walk {
        target: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Generate a construction, or `replicate INPUT` for the replication
    /// gadget. Writes MG1 to stdout unless -o is given.
    Gen {
        /// cactus, outerplanar5, x14, p7, y_graph, red_cycles, bip_g10 or replicate.
        name: String,
        input: Option<String>,
        #[arg(long)]
        girth: Option<usize>,
        /// Explicit cycle length instead of the smallest valid one.
        #[arg(long)]
        length: Option<usize>,
        /// For bip_g10: exchange the two path shapes.
        #[arg(long)]
        swapped: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Size, girth, exact maximum average degree, bipartiteness.
    Stats {
        graph: String,
        #[arg(long)]
        girth: bool,
        #[arg(long)]
        mad: bool,
        #[arg(long)]
        bipartite: bool,
    },
    /// Check the weak-neighbor hypothesis for K and the resulting mad bound.
    Discharge {
        graph: String,
        #[arg(long)]
        k: usize,
    },
    /// Links a planar universal target of signature (M,N) would need.
    Bound {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Thread extension, forbidden-set profiles and branch cases.
    Pathlab {
        #[command(subcommand)]
        command: PathlabCommand,
    },
    /// Builtin targets: dump, verify facts, reconstruct from facts.
    Target {
        #[command(subcommand)]
        command: TargetCommand,
    },
    /// Forcing reachability under the target's gadget menu.
    ForceClosure {
        target: String,
        #[arg(long, value_enum)]
        goal: GoalArg,
        /// Start sets; defaults to all nonempty subsets of {a,b,d} (abcd)
        /// or {a,b,c,d,e} (good).
        #[arg(long = "start", value_name = "SET")]
        start: Vec<String>,
    },
    /// Core of a small graph (at most 8 vertices) with a retraction.
    Core { graph: String },
    /// Run the reproduction manifest.
    #[command(group(ArgGroup::new("which").required(true).args(["all", "only", "list"])))]
    Reproduce {
        #[arg(long)]
        all: bool,
        /// Run only the named check (repeatable).
        #[arg(long, value_name = "NAME")]
        only: Vec<String>,
        /// List the checks without running them.
        #[arg(long)]
        list: bool,
        /// Manifest file; defaults to the one built into the binary.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PathlabCommand {
    /// Forbidden-set profile for 0..=max-len internal vertices.
    Profile {
        target: String,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Whether every thread with INTERNAL 2-vertices extends.
    Extend {
        target: String,
        #[arg(long)]
        internal: usize,
    },
    /// Whether a 3-vertex with the given thread lengths can be colored.
    Branches {
        target: String,
        #[arg(long = "case", value_name = "L1,L2,L3", required = true, value_parser = parse_case)]
        cases: Vec<BranchCase>,
    },
}

#[derive(Subcommand)]
enum TargetCommand {
    Dump {
        #[arg(value_parser = parse_target)]
        name: TargetName,
    },
    Verify {
        #[arg(value_parser = parse_target)]
        name: TargetName,
    },
    Reconstruct {
        #[arg(value_parser = parse_target)]
        name: TargetName,
    },
}

fn parse_case(s: &str) -> std::result::Result<BranchCase, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => BranchCase::new(a, b, c).map_err(|e| e.to_string()),
        _ => Err(format!("expected three lengths, got `{s}`")),
    }
}

fn parse_target(s: &str) -> std::result::Result<TargetName, String> {
    s.parse().map_err(|e: mixhom::Error| e.to_string())
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Check { source, target } => commands::check(&source, &target),
        Command::Force {
            source,
            target,
            vertex,
            constrain,
        } => commands::force(&source, &target, &vertex, &constrain),
        Command::Walk {
            target,
            pattern,
            from,
            to,
        } => commands::walk(&target, &pattern, &from, &to),
        Command::Gen {
            name,
            input,
            girth,
            length,
            swapped,
            output,
        } => commands::gen(&commands::GenArgs {
            name: &name,
            input: input.as_deref(),
            girth,
            length,
            swapped,
            output: output.as_deref(),
        }),
        Command::Stats {
            graph,
            girth,
            mad,
            bipartite,
        } => commands::stats(&graph, girth, mad, bipartite),
        Command::Discharge { graph, k } => commands::discharge(&graph, k),
        Command::Bound { m, n, k } => commands::bound(m, n, k),
        Command::Pathlab { command } => match command {
            PathlabCommand::Profile { target, max_len } => commands::pathlab_profile(&target, max_len),
            PathlabCommand::Extend { target, internal } => commands::pathlab_extend(&target, internal),
            PathlabCommand::Branches { target, cases } => commands::pathlab_branches(&target, &cases),
        },
        Command::Target { command } => match command {
            TargetCommand::Dump { name } => commands::target_dump(name),
            TargetCommand::Verify { name } => commands::target_verify(name),
            TargetCommand::Reconstruct { name } => commands::target_reconstruct(name),
        },
        Command::ForceClosure { target, goal, start } => commands::force_closure(&target, goal, &start),
        Command::Core { graph } => commands::core(&graph),
        Command::Reproduce {
            all: _,
            only,
            list,
            manifest,
        } => {
            let manifest = match manifest {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    Manifest::parse(&text)?
                }
                None => Manifest::parse(reproduce::BUILTIN_MANIFEST)?,
            };
            if list {
                Ok(reproduce::list(&manifest))
            } else {
                reproduce::run(&manifest, &only)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            outcome.print(cli.format);
            if outcome.affirmative {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
