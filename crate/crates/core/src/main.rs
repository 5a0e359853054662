use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use coxline::cli::{self, SweepOptions};
use coxline::{CoxError, DivisorClass, PointConfig};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Cox ring of the plane blown up at points on a line.
#[derive(Parser, Debug)]
#[command(name = "coxline", version)]
struct Args {
    /// Point configuration file (keys n, t, q).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cone membership, decompositions, chi and h0 of a class "d a1 ... an".
    Classify {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        class: Vec<String>,
    },
    /// h0 from the lattice formula and from interpolation.
    H0 {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        class: Vec<String>,
    },
    /// Standard monomials of a degree, their plane forms and the independence check.
    Basis {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        class: Vec<String>,
    },
    /// The trinomial relations, their geometric check and the S-polynomial table.
    Relations,
    /// Cross-check every nef class up to a degree bound.
    Verify {
        #[arg(long = "dmax", default_value_t = 8)]
        d_max: u32,
        /// Comma separated point counts, e.g. "3,4,5".
        #[arg(long = "n-list")]
        n_list: Option<String>,
        /// Check at most this many nef classes per n.
        #[arg(long)]
        max_classes: Option<usize>,
        /// Test mode: perturb the first relation coefficient.
        #[arg(long, hide = true)]
        corrupt_relation: bool,
        /// Test mode: move the last point off the line.
        #[arg(long, hide = true)]
        non_collinear: bool,
    },
}

fn load_config(path: Option<&PathBuf>) -> Result<Option<PointConfig>, CoxError> {
    path.map(|p| PointConfig::from_file(p)).transpose()
}

/// The class and its configuration. Without `--config`, `n` is the number of
/// integers after `d`, and the default configuration is used.
fn class_and_config(words: &[String], cfg: Option<PointConfig>) -> Result<(DivisorClass, PointConfig), CoxError> {
    let text = words.join(" ");
    let cfg = match cfg {
        Some(c) => c,
        None => {
            let n = text.split_whitespace().count().saturating_sub(1);
            PointConfig::default_for(n)?
        }
    };
    let dc = DivisorClass::parse(&text, cfg.n())?;
    Ok((dc, cfg))
}

fn emit<T: Serialize>(json: bool, report: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    } else {
        print!("{}", text());
    }
}

fn run(args: Args) -> Result<u8, CoxError> {
    let cfg = load_config(args.config.as_ref())?;
    let json = args.json;
    match args.command {
        Command::Classify { class } => {
            let (dc, _) = class_and_config(&class, cfg)?;
            let r = cli::cmd_classify(&dc);
            emit(json, &r, || r.to_text());
            Ok(0)
        }
        Command::H0 { class } => {
            let (dc, cfg) = class_and_config(&class, cfg)?;
            let r = cli::cmd_h0(&cfg, &dc)?;
            emit(json, &r, || r.to_text());
            Ok(if r.agree { 0 } else { EXIT_FAILURE })
        }
        Command::Basis { class } => {
            let (dc, cfg) = class_and_config(&class, cfg)?;
            let r = cli::cmd_basis(&cfg, &dc)?;
            emit(json, &r, || r.to_text());
            Ok(if r.is_ok() { 0 } else { EXIT_FAILURE })
        }
        Command::Relations => {
            let cfg = match cfg {
                Some(c) => c,
                None => PointConfig::default_for(3)?,
            };
            let r = cli::cmd_relations(&cfg)?;
            emit(json, &r, || r.to_text());
            Ok(if r.is_ok() { 0 } else { EXIT_FAILURE })
        }
        Command::Verify { d_max, n_list, max_classes, corrupt_relation, non_collinear } => {
            let configs: Vec<PointConfig> = match (n_list, cfg) {
                (Some(list), cfg) => cli::parse_n_list(&list)?
                    .into_iter()
                    .map(|n| match &cfg {
                        Some(c) if c.n() == n => Ok(c.clone()),
                        _ => PointConfig::default_for(n),
                    })
                    .collect::<Result<_, _>>()?,
                (None, Some(c)) => vec![c],
                (None, None) => [3, 4, 5].into_iter().map(PointConfig::default_for).collect::<Result<_, _>>()?,
            };
            let opts = SweepOptions { d_max, max_classes, corrupt_relation };
            let mut reports = Vec::new();
            for c in configs {
                let c = if non_collinear { cli::non_collinear_variant(&c)? } else { c };
                reports.push(cli::cmd_verify(&c, &opts)?);
            }
            let ok = reports.iter().all(cli::SweepReport::passed);
            emit(json, &reports, || reports.iter().map(cli::SweepReport::to_text).collect());
            Ok(if ok { 0 } else { EXIT_FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("coxline: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
