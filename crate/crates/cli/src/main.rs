//! `dlvar`: tables and reports on Deligne–Lusztig varieties.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use report::{Format, Report};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "dlvar", version, about = "Exact invariants of Deligne–Lusztig varieties")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "md", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical coefficients, point counts and genera.
    #[command(subcommand)]
    Tables(Tables),
    /// Finite flag geometry.
    #[command(subcommand)]
    Geometry(Geometry),
    /// The exceptional isogeny of Sp4 in characteristic 2.
    #[command(subcommand)]
    Suzuki(Suzuki),
    /// Integral lattices.
    #[command(subcommand)]
    Lattice(Lattice),
    /// Quasi-elliptic Weierstrass equations in characteristic 2.
    #[command(subcommand)]
    Weierstrass(Weierstrass),
    /// Elliptic curves over F2.
    #[command(subcommand)]
    Elliptic(Elliptic),
    /// Recompute one acceptance criterion (1 to 11) with its checks.
    Reproduce {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=11))]
        criterion: u8,
    },
}

#[derive(Args, Debug)]
struct CaseArg {
    /// Catalog key such as A2, 2G2, 2F4, or `all`.
    #[arg(long)]
    case: String,
}

#[derive(Subcommand, Debug)]
enum Tables {
    /// Coefficients of the canonical class in the boundary divisors.
    Canonical {
        #[command(flatten)]
        case: CaseArg,
        /// Word as a digit string, e.g. 21; defaults to the tabulated words.
        #[arg(long)]
        word: Option<String>,
        /// Values of q (of n for Suzuki–Ree keys, where q0 = p^n).
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Values of n for Suzuki–Ree keys (default 0,1,2 with `--case all`).
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u64>>,
    },
    /// Point counts of the zero-dimensional varieties.
    Zerodim {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u64>>,
    },
    /// Genus of the curve X(s1).
    Genus {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u64>>,
    },
}

#[derive(Subcommand, Debug)]
enum Geometry {
    /// Incidence graph of the Sp4 building.
    Building {
        #[arg(long, value_delimiter = ',', default_value = "2")]
        p: Vec<u32>,
    },
    /// Flags grouped by relative position to their Frobenius image.
    Strata {
        #[command(flatten)]
        case: CaseArg,
        #[arg(long)]
        ext: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
}

#[derive(Subcommand, Debug)]
enum Suzuki {
    /// Checks on the group generated by A and S and on the minor isogeny.
    Verify {
        /// Seed for the random symplectic matrices.
        #[arg(long, default_value_t = 6)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Lattice {
    /// Signature and radical of the 22-vertex lattice.
    Gamma,
    /// Determinants and discriminant groups of S(n, c).
    Gram {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        c: Vec<i64>,
    },
    /// Scan over sigma = 3..10.
    K3scan,
}

#[derive(Subcommand, Debug)]
enum Weierstrass {
    /// Quasi-discriminant, valuations and singularity types.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        a4: String,
        #[arg(long, allow_hyphen_values = true)]
        a6: String,
        /// F2, F4, F8, F16, or one of these followed by (u).
        #[arg(long, default_value = "F2")]
        field: String,
    },
}

#[derive(Subcommand, Debug)]
enum Elliptic {
    /// Isomorphism classes over F2 and the residual divisors.
    Census,
}

fn run(cli: &Cli) -> dlvar_core::Result<Report> {
    match &cli.command {
        Command::Tables(t) => match t {
            Tables::Canonical { case, word, q, n } => {
                commands::tables_canonical(&case.case, word.as_deref(), q, n.as_deref())
            }
            Tables::Zerodim { case, q, n } => commands::tables_zerodim(&case.case, q, n.as_deref()),
            Tables::Genus { case, q } => commands::tables_genus(&case.case, q.as_deref()),
        },
        Command::Geometry(g) => match g {
            Geometry::Building { p } => commands::geometry_building(p),
            Geometry::Strata { case, ext, q } => commands::geometry_strata(&case.case, *q, *ext),
        },
        Command::Suzuki(Suzuki::Verify { seed }) => commands::suzuki_verify(*seed),
        Command::Lattice(l) => match l {
            Lattice::Gamma => commands::lattice_gamma(),
            Lattice::Gram { n, c } => commands::lattice_gram(n, c),
            Lattice::K3scan => commands::lattice_k3scan(),
        },
        Command::Weierstrass(Weierstrass::Classify { a4, a6, field }) => commands::weierstrass_classify(field, a4, a6),
        Command::Elliptic(Elliptic::Census) => commands::elliptic_census(),
        Command::Reproduce { criterion } => commands::reproduce(usize::from(*criterion)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(mut report) => {
            report.format = cli.format.tag().into();
            print!("{}", report.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("dlvar: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
