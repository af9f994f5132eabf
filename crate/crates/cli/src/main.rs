mod report;

use std::io::IsTerminal;
use std::process::ExitCode;

use approxsym::detsolve::{Ansatz, PerturbedPDE};
use approxsym::harry_dym;
use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{Report, RunConfig};

#[derive(Parser)]
#[command(name = "approxsym", version, about = "Approximate Lie symmetries of perturbed evolution equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact and approximate symmetry generators.
    Symmetries(Common),
    /// Commutator table, derived series, radical and Levi factor.
    Algebra(Common),
    /// Adjoint representation table.
    Adjoint(Common),
    /// Classify a vector, or list the optimal system with its audit.
    Optimal {
        #[command(flatten)]
        common: Common,
        /// Comma-separated rational coordinates on v1..v10.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Characteristic invariants of one generator, or the full table.
    Invariants {
        #[command(flatten)]
        common: Common,
        /// Generator as a combination of v1..vn, e.g. "v1 + a*v2".
        #[arg(long)]
        generator: Option<String>,
        /// Candidate invariant to verify against --generator; repeatable.
        #[arg(long, requires = "generator")]
        check: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    HarryDym,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, conflicts_with = "pde", required_unless_present = "pde")]
    preset: Option<Preset>,
    /// Unperturbed equation F0 = 0, e.g. "u_t + 1/2*u^3*u_xxx".
    #[arg(long, requires = "perturb")]
    pde: Option<String>,
    /// Perturbation F1 of F0 + eps*F1 = 0.
    #[arg(long, requires = "pde")]
    perturb: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Maximal polynomial degree of the ansatz in x and t.
    #[arg(long)]
    ansatz_deg: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn config(&self) -> approxsym::Result<RunConfig> {
        let (pde, preset) = match (&self.preset, &self.pde, &self.perturb) {
            (Some(Preset::HarryDym), _, _) => (harry_dym::pde(), true),
            (None, Some(f0), Some(f1)) => (PerturbedPDE::parse(f0, f1)?, false),
            _ => unreachable!("clap enforces one equation source"),
        };
        let ansatz = match self.ansatz_deg {
            Some(n) => Ansatz::with_degree(n),
            None => Ansatz::default(),
        };
        let color = std::env::var("APPROXSYM_COLOR").map_or(true, |v| v != "0") && std::io::stdout().is_terminal();
        let color = color && matches!(self.format, Format::Text);
        Ok(RunConfig { pde, preset, ansatz, seed: self.seed, color })
    }
}

fn run(cli: &Cli) -> approxsym::Result<(Report, Format, bool)> {
    let common = match &cli.command {
        Command::Symmetries(c) | Command::Algebra(c) | Command::Adjoint(c) => c,
        Command::Optimal { common, .. } | Command::Invariants { common, .. } => common,
    };
    let cfg = common.config()?;
    let r = match &cli.command {
        Command::Symmetries(_) => report::symmetries(&cfg)?,
        Command::Algebra(_) => report::algebra(&cfg)?,
        Command::Adjoint(_) => report::adjoint(&cfg)?,
        Command::Optimal { vector, .. } => report::optimal(&cfg, vector.as_deref())?,
        Command::Invariants { generator, check, .. } => report::invariants(&cfg, generator.as_deref(), check)?,
    };
    Ok((r, common.format, cfg.preset))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((r, format, preset)) => {
            match format {
                Format::Text => print!("{}", r.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("json")),
                Format::Latex => print!("{}", r.latex),
            }
            if preset && r.diffs > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
