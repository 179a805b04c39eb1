use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use omega_scl::error::Error;
use omega_scl::quasimorphism::{Context, Quasimorphism};
use omega_scl::report::{
    chain_grid, context_from_flags, grid_csv, overall_status, run_targets, target_ids, to_json,
    to_json_lines, RunOptions,
};
use omega_scl::words::MappingClassWord;

/// Exact signature cocycles, omega-signature quasimorphisms and scl bounds.
#[derive(Parser)]
#[command(name = "omega-scl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ContextFlags {
    /// Meyer function on the hyperelliptic group of genus G.
    #[arg(long, conflicts_with_all = ["m", "d", "j"])]
    meyer: bool,
    /// Cyclic-cover quasimorphism on the m-pointed sphere (the default when -m is given).
    #[arg(long, conflicts_with = "meyer")]
    omega: bool,
    #[arg(short = 'g')]
    g: Option<u32>,
    #[arg(short = 'm')]
    m: Option<u32>,
    /// Degree of the cover; defaults to m.
    #[arg(short = 'd')]
    d: Option<u32>,
    #[arg(short = 'j')]
    j: Option<u32>,
}

impl ContextFlags {
    fn context(&self) -> Result<Context, Error> {
        context_from_flags(self.meyer, self.g, self.m, self.d, self.j)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// tau(x, y) and dim V_{A,B}.
    Tau {
        #[command(flatten)]
        ctx: ContextFlags,
        x: String,
        y: String,
    },
    /// phi(w).
    Phi {
        #[command(flatten)]
        ctx: ContextFlags,
        word: String,
    },
    /// The homogenization barphi(w); exits 3 if the limit is unconverged.
    Barphi {
        #[command(flatten)]
        ctx: ContextFlags,
        word: String,
    },
    /// Chain-element values against their closed forms, as CSV.
    Grid {
        #[arg(long, default_value_t = 8)]
        m_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs reproduction targets ("all" for every one) and reports exactly.
    Reproduce {
        #[arg(required = true)]
        targets: Vec<String>,
        #[arg(long, default_value_t = 10)]
        m_max: u32,
        #[arg(long, default_value_t = 4)]
        g_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse(ctx: Context, text: &str) -> Result<MappingClassWord, Error> {
    MappingClassWord::parse(ctx.group(), text).map_err(|e| match e {
        Error::Parse { offset, msg } => Error::Parse {
            offset,
            msg: format!("{msg} in \"{text}\""),
        },
        e => e,
    })
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Tau { ctx, x, y } => {
            let ctx = ctx.context()?;
            let qm = Quasimorphism::new(ctx)?;
            let (x, y) = (parse(ctx, &x)?, parse(ctx, &y)?);
            println!("{}", qm.tau(&x, &y)?);
            println!("dim V_AB = {}", qm.v_dimension(&x, &y)?);
            Ok(0)
        }
        Command::Phi { ctx, word } => {
            let ctx = ctx.context()?;
            let w = parse(ctx, &word)?;
            println!("{} (exact)", Quasimorphism::new(ctx)?.phi(&w)?);
            Ok(0)
        }
        Command::Barphi { ctx, word } => {
            let ctx = ctx.context()?;
            let w = parse(ctx, &word)?;
            let v = Quasimorphism::new(ctx)?.homogenize(&w)?;
            println!("{v}");
            Ok(if v.mode.is_certified() { 0 } else { 3 })
        }
        Command::Grid { m_max, out } => {
            let cells = chain_grid(m_max)?;
            emit(&grid_csv(&cells)?, &out)?;
            Ok(u8::from(!cells.iter().all(|c| c.phi_ok && c.barphi_ok)))
        }
        Command::Reproduce {
            targets,
            m_max,
            g_max,
            seed,
            samples,
            cases,
            format,
            out,
        } => {
            let known = target_ids();
            if let Some(bad) = targets
                .iter()
                .find(|t| *t != "all" && !known.contains(&t.as_str()))
            {
                return Err(Error::InvalidInput(format!(
                    "unknown target '{bad}'; known: {}",
                    known.join(", ")
                )));
            }
            let opts = RunOptions {
                m_max,
                g_max,
                seed,
                samples,
                cases,
            };
            let reports = run_targets(&targets, &opts)?;
            for r in &reports {
                eprintln!(
                    "{} {} ({}/{} checks)",
                    r.status,
                    r.id,
                    r.passed,
                    r.checks.len()
                );
            }
            let text = match format {
                Format::Json => to_json(&reports, &opts) + "\n",
                Format::Jsonl => to_json_lines(&reports),
            };
            emit(&text, &out)?;
            Ok(overall_status(&reports).exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::InvalidInput(_) => 2,
                Error::Unconverged(_) => 3,
                _ => 1,
            })
        }
    }
}
