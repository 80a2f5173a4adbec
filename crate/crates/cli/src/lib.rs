//! Command-line front end: JSON in, JSON (or SVG) out.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 a mathematical
//! precondition failed, 4 an internal invariant broke.

pub mod render;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use conic_core::corpus::{self, CorpusConfig};
use conic_core::json::{self, ActionDoc, PolytopeDoc};
use conic_core::{ActionData, BigInt, Error, HRep, MarkedPolytope};

#[derive(Debug, Parser)]
#[command(name = "conic", version, about = "Conic transforms of marked Delzant polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Generate the polytope (and a rank-one action if needed) from this seed
    /// when no polytope path is given.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Reject polytopes whose canonical offsets are not integers.
    #[arg(long, global = true)]
    pub require_integral: bool,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Polytope JSON document.
    pub polytope: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WithAction {
    #[command(flatten)]
    pub input: Input,
    /// Action JSON document.
    #[arg(long)]
    pub action: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Delzant test and, given an action, the Basic Assumption clauses.
    Check(WithAction),
    /// Conic transform report.
    Transform {
        #[command(flatten)]
        args: WithAction,
        /// Emit only the raw transformed H-representation.
        #[arg(long, conflicts_with = "canonical")]
        raw: bool,
        /// Emit only the canonical transformed polytope.
        #[arg(long)]
        canonical: bool,
    },
    /// Reduced polytope and its Delzant certificate.
    Reduce(WithAction),
    /// Even Betti numbers.
    Betti(Input),
    /// Face lattice listing.
    Faces(Input),
    /// Search for an integer shear relating two transforms.
    ShearCheck {
        #[command(flatten)]
        input: Input,
        /// Second polytope, compared with the first in adapted coordinates.
        #[arg(long, requires = "delta", conflicts_with_all = ["action", "alt_action"])]
        other: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<i64>,
        /// Rank-one action; transformed and compared with `--alt-action`.
        #[arg(long, requires = "alt_action")]
        action: Option<PathBuf>,
        #[arg(long)]
        alt_action: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_coeff: u32,
    },
    /// SVG drawing of a polygon with edge normals and markings.
    Render(Input),
}

/// Failure with an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Document still worth printing, such as a failing check report.
    pub document: Option<String>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into(), document: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Schema(_) => 2,
            Error::Internal(_) => 4,
            _ => 3,
        };
        Self { code, message: reason(&e), document: None }
    }
}

/// Short typed reason for an error.
pub fn reason(e: &Error) -> String {
    match e {
        Error::BasicAssumption { clause, detail } => format!("{clause} ({detail})"),
        other => other.to_string(),
    }
}

pub type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// Input polytope: its raw rows as given and the canonical form.
pub struct Loaded {
    pub raw: HRep,
    pub polytope: MarkedPolytope,
    pub action: Option<ActionData>,
}

fn load(cli: &Cli, input: &Input, action: Option<&Path>, need_action: bool) -> Result<Loaded, Failure> {
    let mut generated = None;
    let (raw, markings) = match (&input.polytope, cli.seed) {
        (Some(path), _) => {
            let doc: PolytopeDoc = json::parse(&read(path)?)?;
            (doc.to_hrep()?, doc.markings()?)
        }
        (None, Some(seed)) => {
            let mut rng = corpus::rng(seed);
            let p = corpus::random_delzant(&mut rng, &CorpusConfig::default());
            generated = Some(corpus::random_rank_one_action(&mut rng, &p));
            (p.hrep(), None)
        }
        (None, None) => return Err(Failure::usage("a polytope path or --seed is required")),
    };
    let polytope = MarkedPolytope::from_hrep(&raw, markings, cli.require_integral)?;
    let action = match action {
        Some(path) => Some(json::parse::<ActionDoc>(&read(path)?)?.to_action()?),
        None => generated,
    };
    if need_action && action.is_none() {
        return Err(Failure::usage("this subcommand requires --action"));
    }
    Ok(Loaded { raw, polytope, action })
}

fn load_action(path: &Path) -> Result<ActionData, Failure> {
    Ok(json::parse::<ActionDoc>(&read(path)?)?.to_action()?)
}

/// Run one command and return the output document.
pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check(args) => {
            let l = load(cli, &args.input, args.action.as_deref(), false)?;
            report::check(&l.polytope, l.action.as_ref())
        }
        Command::Transform { args, raw, canonical } => {
            let l = load(cli, &args.input, args.action.as_deref(), true)?;
            let view = match (raw, canonical) {
                (true, _) => report::View::Raw,
                (_, true) => report::View::Canonical,
                _ => report::View::Full,
            };
            report::transform(&l, view)
        }
        Command::Reduce(args) => {
            let l = load(cli, &args.input, args.action.as_deref(), true)?;
            report::reduce(&l.polytope, l.action.as_ref().expect("checked by load"))
        }
        Command::Betti(input) => report::betti(&load(cli, input, None, false)?.polytope),
        Command::Faces(input) => Ok(report::faces(&load(cli, input, None, false)?.polytope)),
        Command::ShearCheck { input, other, delta, action, alt_action, max_coeff } => {
            let l = load(cli, input, None, false)?;
            match (other, action, alt_action) {
                (Some(other), _, _) => {
                    let doc: PolytopeDoc = json::parse(&read(other)?)?;
                    let b = doc.to_marked(cli.require_integral)?;
                    let delta = BigInt::from(delta.expect("required by clap"));
                    Ok(report::shear_direct(&l.polytope, &b, &delta, *max_coeff))
                }
                (None, Some(a), Some(b)) => {
                    report::shear_actions(&l.polytope, &load_action(a)?, &load_action(b)?, *max_coeff)
                }
                _ => Err(Failure::usage("shear-check needs --other with --delta, or --action with --alt-action")),
            }
        }
        Command::Render(input) => Ok(render::render_svg(&load(cli, input, None, false)?.polytope)?),
    }
}
