mod cache;
mod commands;
mod config;
mod error;
mod report;
mod select;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Config;
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "invgen", version, about = "Invariable generation of finite permutation groups")]
pub struct Cli {
    /// Config file with key=value lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. --set lattice_budget=5000.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Include timings and cache status in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Compact single-line JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// alt:n, sym:n, cyclic:n, dicyclic:n, psl2:p, affine:<file>, file:<path> or builtin:<name>.
    #[arg(long, short)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basic facts about a group.
    Group {
        #[command(subcommand)]
        what: GroupCmd,
    },
    /// Conjugacy classes.
    Classes(GroupArg),
    /// Conjugacy classes of subgroups.
    Subgroups(GroupArg),
    /// Maximal subgroups up to conjugacy.
    Maximals(GroupArg),
    /// Invariable generation.
    Igen {
        #[command(subcommand)]
        what: IgenCmd,
    },
    /// Classes whose elements can be dropped from every invariable generating set.
    #[command(name = "fratI")]
    FratI(GroupArg),
    /// Largest independent family of maximal class sets.
    Iota(GroupArg),
    /// Compare d, m with their invariable analogues.
    Bi(GroupArg),
    /// Invariable basis property over all subgroups.
    Ibp(GroupArg),
    /// Crown matrix criterion.
    Crown {
        #[command(subcommand)]
        what: CrownCmd,
    },
    /// Closure operator on subsets.
    Tarski {
        #[command(subcommand)]
        what: TarskiCmd,
    },
    /// Class model of Alt(5)^n.
    Model {
        #[command(subcommand)]
        what: ModelCmd,
    },
    /// Scan built-in groups for counterexamples to open questions (nothing is asserted).
    Scan,
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    Show(GroupArg),
    Order(GroupArg),
    Orbits(GroupArg),
}

#[derive(Args, Debug)]
pub struct ElemsArg {
    #[command(flatten)]
    pub group: GroupArg,
    /// Element in cycle notation; repeat for several.
    #[arg(long = "elem", short = 'e')]
    pub elems: Vec<String>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum WitnessKind {
    #[value(name = "d_i")]
    DI,
    #[value(name = "m_i")]
    MI,
    Iota,
}

#[derive(Subcommand, Debug)]
pub enum IgenCmd {
    /// Whether the given elements invariably generate the group.
    Check(ElemsArg),
    Summary(GroupArg),
    /// Sizes of minimal invariable generating sets.
    Irb(GroupArg),
    Witness {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "m_i")]
        kind: WitnessKind,
    },
}

#[derive(Args, Debug)]
pub struct InstanceArg {
    /// Crown instance file.
    #[arg(long)]
    pub instance: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum CrownCmd {
    /// Matrix criterion verdict for an instance.
    Check {
        #[command(flatten)]
        inst: InstanceArg,
        /// Skip checking that the y elements invariably generate K.
        #[arg(long)]
        assume_y_igen: bool,
    },
    /// Whether some choice of w makes the criterion hold.
    Exists {
        #[command(flatten)]
        inst: InstanceArg,
        /// Also enumerate every w and compare.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Compare the matrix verdict with a direct group computation.
    Oracle {
        #[arg(long, conflicts_with = "random")]
        instance: Option<PathBuf>,
        /// Number of seeded random instances.
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TarskiCmd {
    Closure {
        #[command(flatten)]
        x: ElemsArg,
        /// Also compute the fixpoint of the n-ary closure.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Whether the group is invariable n-ary.
    Nary {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        /// Test the candidate G minus this element; repeat for several.
        #[arg(long = "complement-of")]
        complement_of: Vec<String>,
    },
    /// Check the closure laws on random subsets.
    Laws {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
pub struct ModelArg {
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum ModelCmd {
    Build(ModelArg),
    Iota(ModelArg),
    /// Compare the model with the subgroups of Alt(5)^n (n <= 2).
    Crosscheck(ModelArg),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    Paper {
        #[arg(long, default_value = "core")]
        suite: String,
    },
}

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    for o in &cli.overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got {o:?}")))?;
        cfg.set(k.trim(), v.trim()).map_err(CliError::Usage)?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (report, code) = match load_config(&cli) {
        Ok(cfg) => commands::run(&cli, cfg, argv),
        Err(e) => report::Report::failure(argv, &e),
    };
    let text = if cli.compact {
        serde_json::to_string(&report)
    } else {
        serde_json::to_string_pretty(&report)
    }
    .expect("report serializes");
    println!("{text}");
    if let Some(err) = &report.error {
        eprintln!("invgen: {}", err.message);
    }
    ExitCode::from(code)
}
