use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use gcr_engine::rootdata::RootType;
use gcr_engine::EngineError;

mod commands;
mod golden;
mod render;

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "gcr", version, about = "Reproduce the non-separable G-cr subgroup tables and the Külshammer families")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "GCR_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Skip comparisons against the embedded expected values.
    #[arg(long, global = true)]
    no_golden: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "UPPER")]
enum TypeTag {
    E6,
    E7,
    E8,
}

impl From<TypeTag> for RootType {
    fn from(t: TypeTag) -> Self {
        match t {
            TypeTag::E6 => RootType::E6,
            TypeTag::E7 => RootType::E7,
            TypeTag::E8 => RootType::E8,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Example {
    E6,
    A2,
}

fn parse_field(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(m @ (1 | 2 | 4 | 6 | 8)) => Ok(m),
        _ => Err(format!("`{s}` is not one of 1, 2, 4, 6, 8")),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy classes of subgroups of the Levi Weyl group S_n.
    Classify {
        #[arg(long = "type", value_enum, ignore_case = true)]
        ty: TypeTag,
    },
    /// Non-separable classes (G-cr ones only for E7 and E8) against the tables.
    Scan {
        #[arg(long = "type", value_enum, ignore_case = true)]
        ty: TypeTag,
        /// Field degree m of GF(2^m).
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: u32,
    },
    /// Full pipeline for one table case.
    Verify {
        #[arg(long = "type", value_enum, ignore_case = true)]
        ty: TypeTag,
        #[arg(long)]
        case: usize,
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: u32,
    },
    /// The representation families of finite groups.
    Kulshammer {
        #[arg(long, value_enum, ignore_case = true)]
        example: Example,
        /// Defaults to 2, or for a2 the least m with d | 2^m - 1.
        #[arg(long, value_parser = parse_field)]
        field: Option<u32>,
        /// Order of c in the a2 family.
        #[arg(long, default_value_t = 3)]
        d: u64,
    },
    /// Verify every case of the three tables.
    Tables {
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: u32,
    },
    /// Squares in F_2(t), the mechanism behind the non-rational examples.
    RationalDemo,
}

const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

fn exit_code(e: &EngineError) -> u8 {
    match e {
        EngineError::Parse(_)
        | EngineError::UnknownType(_)
        | EngineError::UnknownCase { .. }
        | EngineError::NoElementOfOrder { .. }
        | EngineError::DegreeOutOfRange(_)
        | EngineError::NotALeviLetter(_)
        | EngineError::UnknownLabel(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    let golden = !cli.no_golden;
    let outcome = match cli.command {
        Command::Classify { ty } => commands::classify(ty.into(), golden),
        Command::Scan { ty, field } => commands::scan(ty.into(), field, golden),
        Command::Verify { ty, case, field } => commands::verify(ty.into(), case, field),
        Command::Kulshammer { example: Example::E6, field, .. } => commands::kulshammer_e6(field.unwrap_or(2), golden),
        Command::Kulshammer { example: Example::A2, field, d } => commands::kulshammer_a2(d, field),
        Command::Tables { field } => commands::tables(field),
        Command::RationalDemo => commands::rational_demo(),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = match outcome.render(cli.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    for c in outcome.failed() {
        eprintln!("mismatch: {}: {}", c.name, c.detail);
    }
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}
