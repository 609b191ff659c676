use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use torelli::json::{self, render, render_error};
use torelli::{catalogue, Error, Result, SurfaceAutomorphism, Wedge3, Weight};

/// Johnson homomorphism, mapping-torus rings and root-bundle monodromy.
///
/// Automorphisms are given as `@path` (a record file), `cat:NAME` (a shipped
/// catalogue entry) or an inline record with `;` between lines, e.g.
/// `"x1 = x1*y1 | x1*y1^-1"`. Results are JSON on stdout.
#[derive(Parser)]
#[command(name = "torelli", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Johnson value of a Torelli automorphism, bounded and closed.
    Tau {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        aut: String,
    },
    /// p(tau) reduced mod g - 1.
    Psi {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        aut: String,
    },
    /// Translation of n-th roots of the canonical bundle.
    Theta {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        aut: String,
    },
    /// Split an element of Lambda^3 H into its q^H and primitive parts.
    Decompose {
        #[arg(long)]
        genus: usize,
        /// Sparse terms, e.g. "1 * a1^b1^a2, -2 * a1^a2^a3".
        #[arg(long, allow_hyphen_values = true)]
        wedge: String,
    },
    /// Mapping-torus cohomology ring, its verification and F round trip.
    Ring {
        #[arg(long)]
        genus: usize,
        #[arg(long, conflicts_with = "tau", required_unless_present = "tau")]
        aut: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
    },
    /// Rank of H^1 with coefficients in V(lambda).
    Ranktable {
        #[arg(long, value_parser = ["lambda1", "lambda3", "other"])]
        lambda: String,
        #[arg(long, default_value_t = 0)]
        r: u64,
        #[arg(long, default_value_t = 0)]
        n: u64,
    },
    /// Shipped catalogue with validation reports.
    Catalogue {
        #[arg(long)]
        genus: usize,
    },
    /// Seeded pool of Torelli elements with their Johnson values.
    Pool {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 20)]
        size: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tau { .. } => "tau",
            Command::Psi { .. } => "psi",
            Command::Theta { .. } => "theta",
            Command::Decompose { .. } => "decompose",
            Command::Ring { .. } => "ring",
            Command::Ranktable { .. } => "ranktable",
            Command::Catalogue { .. } => "catalogue",
            Command::Pool { .. } => "pool",
        }
    }
}

fn resolve_aut(arg: &str, genus: usize) -> Result<SurfaceAutomorphism> {
    let aut = if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        SurfaceAutomorphism::parse(&text)?
    } else if let Some(name) = arg.strip_prefix("cat:") {
        catalogue::load(genus)?.automorphism(name)?
    } else if arg.contains("genus") {
        SurfaceAutomorphism::parse(arg)?
    } else {
        SurfaceAutomorphism::parse(&format!("genus = {genus}; {arg}"))?
    };
    if aut.genus() != genus {
        return Err(Error::GenusMismatch {
            expected: genus,
            found: aut.genus(),
        });
    }
    Ok(aut)
}

fn run(command: &Command) -> Result<String> {
    let name = command.name();
    Ok(match command {
        Command::Tau { genus, aut } => render(
            name,
            Some(*genus),
            json::tau_view(&resolve_aut(aut, *genus)?)?,
        ),
        Command::Psi { genus, aut } => render(
            name,
            Some(*genus),
            json::psi_view(&resolve_aut(aut, *genus)?)?,
        ),
        Command::Theta { genus, n, aut } => render(
            name,
            Some(*genus),
            json::theta_view(&resolve_aut(aut, *genus)?, *n)?,
        ),
        Command::Decompose { genus, wedge } => render(
            name,
            Some(*genus),
            json::decompose_view(&Wedge3::parse(wedge, *genus)?)?,
        ),
        Command::Ring { genus, aut, tau } => {
            let tau = match (aut, tau) {
                (Some(aut), _) => torelli::tau1(&resolve_aut(aut, *genus)?)?.bounded,
                (None, Some(t)) => Wedge3::parse(t, *genus)?,
                (None, None) => unreachable!("clap requires one of --aut, --tau"),
            };
            render(name, Some(*genus), json::ring_view(&tau)?)
        }
        Command::Ranktable { lambda, r, n } => {
            let weight: Weight = lambda.parse()?;
            render(name, None, json::rank_view(weight, *r, *n))
        }
        Command::Catalogue { genus } => {
            let cat = catalogue::parse_shipped(*genus)?;
            render(name, Some(*genus), json::catalogue_view(&cat))
        }
        Command::Pool { genus, size } => {
            let pool = torelli::torelli_pool(*genus, *size)?;
            render(name, Some(*genus), json::pool_view(*genus, &pool)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let (text, code) = match run(&cli.command) {
        Ok(text) => (text, ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("torelli {name}: {e}");
            (render_error(name, &e), ExitCode::from(1))
        }
    };
    let mut out = std::io::stdout().lock();
    if out
        .write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    code
}
