mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CommandError, Output};

#[derive(Debug, Parser)]
#[command(name = "monores", version, about = "Free resolutions and FP_n certificates for finite monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Restriction to a maximal subgroup through the minimal ideal.
    #[value(alias = "phi_restrict")]
    Phi,
    /// Lift from an ideal with identity.
    #[value(alias = "ideal_lift")]
    Ideal,
    /// Descent from `U¹` to `L¹` for completely simple `U`.
    #[value(name = "cs-descend", alias = "cs_descend")]
    CsDescend,
    /// Lift from a maximal subgroup to `L¹` for completely simple `U`.
    #[value(name = "left-group", alias = "left_group_lift")]
    LeftGroup,
    /// Both routes for a completely simple `U`.
    Pipeline,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input file, or `catalog:NAME` for a built-in entry.
    #[arg(long, short)]
    input: String,
    /// Resolution length.
    #[arg(long, short = 'n', env = "MONORES_LENGTH", default_value_t = 4)]
    length: usize,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run on the opposite semigroup (right-module questions).
    #[arg(long)]
    opposite: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Green's structure, idempotents and minimal ideal.
    Analyze(Common),
    /// Resolve the trivial module over the monoid completion.
    Resolve(Common),
    /// Run one of the transfer constructions.
    Transfer {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        construction: Construction,
        /// 1-based elements of the ideal for `ideal`; defaults to the minimal
        /// ideal.
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<usize>,
        /// 1-based idempotent to use for `phi`, `cs-descend` and `left-group`.
        #[arg(long)]
        idempotent: Option<usize>,
    },
    /// Right unitary generation certificates.
    Fp1 {
        #[command(flatten)]
        common: Common,
        /// Largest generating set size searched for.
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Lift and descent for a completely simple semigroup.
    Pipeline(Common),
    /// Lift from the least component of a strong semilattice.
    Semilattice(Common),
    /// Left and right resolutions.
    Bi(Common),
    /// Run every check over the catalog and the files in a directory.
    Corpus {
        /// Directory of input files.
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long, short = 'n', env = "MONORES_LENGTH", default_value_t = 4)]
        length: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Writes through a temporary file in the target directory so readers never
/// see a partial report.
fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(output: &Output, format: Format, out: Option<&Path>) -> Result<(), CommandError> {
    let body = match format {
        Format::Json => output.json.clone(),
        Format::Text => output.text.clone(),
        Format::Dot => output.dot.clone().ok_or(CommandError::Usage("this command has no DOT output".into()))?,
    };
    match out {
        Some(path) => write_atomically(path, &body).map_err(|e| CommandError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CommandError> {
    let (output, format, out) = match cli.command {
        Command::Analyze(c) => (commands::analyze(&c)?, c.format, c.out),
        Command::Resolve(c) => (commands::resolve(&c)?, c.format, c.out),
        Command::Transfer { common, construction, ideal, idempotent } => {
            (commands::transfer(&common, construction, &ideal, idempotent)?, common.format, common.out)
        }
        Command::Fp1 { common, cap } => (commands::fp1(&common, cap)?, common.format, common.out),
        Command::Pipeline(c) => (commands::transfer(&c, Construction::Pipeline, &[], None)?, c.format, c.out),
        Command::Semilattice(c) => (commands::semilattice(&c)?, c.format, c.out),
        Command::Bi(c) => (commands::bi(&c)?, c.format, c.out),
        Command::Corpus { input, length, out, format } => (commands::corpus(input.as_deref(), length)?, format, out),
    };
    emit(&output, format, out.as_deref())?;
    Ok(output.passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn construction_aliases() {
        let cli = Cli::try_parse_from(["monores", "transfer", "-i", "x", "--construction", "ideal_lift"]).unwrap();
        assert!(matches!(cli.command, Command::Transfer { construction: Construction::Ideal, .. }));
        let cli = Cli::try_parse_from(["monores", "transfer", "-i", "x", "--construction", "cs-descend"]).unwrap();
        assert!(matches!(cli.command, Command::Transfer { construction: Construction::CsDescend, .. }));
    }
}
