//! `thetatrop`: JSON in, JSON or SVG out.
//!
//! Exit status is 0 on success, 1 when a check fails (the report is still
//! printed on stdout) and 2 when the input cannot be read or understood.

mod commands;
mod schema;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CommandResult, Outcome};
use schema::{ProjectFile, SchemaError};

#[derive(Parser)]
#[command(name = "thetatrop", version, about = "Tropical theta functions of log Calabi-Yau surfaces")]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// The integral affine manifold glued from the boundary data.
    #[command(subcommand)]
    Trop(TropCmd),
    /// The polygonal Liouville class and orbit lengths.
    #[command(subcommand)]
    Liouville(LiouvilleCmd),
    /// Broken line diagrams.
    #[command(subcommand)]
    Broken(BrokenCmd),
    /// Intersection pairing and the cone of curve classes.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Ring multiplications.
    #[command(subcommand)]
    Ring(RingCmd),
}

#[derive(Args)]
struct Input {
    /// Project file, or `-` for stdin.
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum TropCmd {
    /// Transition matrices and monodromy.
    Build(Input),
    /// Integral points with coordinates at most `bound` in their chart.
    Points {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
    Monodromy(Input),
    /// Basis of the globally linear functions.
    LinearFunctions(Input),
    /// Parallel transport of a tangent vector by whole chart steps.
    Transport {
        #[command(flatten)]
        input: Input,
        /// Chart number, from 1.
        #[arg(long)]
        chart: usize,
        /// JSON pair such as `[1,0]`.
        #[arg(long)]
        vector: String,
        /// Positive steps go counterclockwise.
        #[arg(long, allow_hyphen_values = true)]
        steps: i64,
    },
}

#[derive(Subcommand)]
enum LiouvilleCmd {
    Synth(Input),
    /// Contact and convexity checks.
    Check(Input),
    /// Orbit lengths of the given points, or of all nonzero points up to `bound`.
    Lengths {
        #[command(flatten)]
        input: Input,
        /// JSON list of points, or `@file`.
        #[arg(long)]
        points: Option<String>,
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
    /// Points whose orbit is shorter than the slope.
    Filter {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        slope: String,
    },
}

#[derive(Args)]
struct DiagramInput {
    #[command(flatten)]
    input: Input,
    /// Which entry of `diagrams`, from 0.
    #[arg(long, default_value_t = 0)]
    diagram: usize,
}

#[derive(Subcommand)]
enum BrokenCmd {
    Validate(DiagramInput),
    /// Homology class and localization of a valid diagram.
    Class(DiagramInput),
    /// Draw the charts, and the diagram if the file has one, as SVG.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        diagram: Option<usize>,
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ClassInput {
    #[command(flatten)]
    input: Input,
    /// JSON class such as `{"boundary":[1,0,0],"extras":{"H":1}}`, or `@file`.
    #[arg(long)]
    class: String,
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// Intersection numbers with the boundary divisors.
    Pair(ClassInput),
    /// Verify a certificate that a class lies in the cone.
    Certify {
        #[command(flatten)]
        class: ClassInput,
        /// Defaults to the boundary certificate of the class.
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Degree against the ample class.
    Degree(ClassInput),
}

#[derive(Args)]
struct Factors {
    /// JSON element, or `@file`.
    #[arg(long, allow_hyphen_values = true)]
    left: String,
    #[arg(long, allow_hyphen_values = true)]
    right: String,
}

#[derive(Subcommand)]
enum RingCmd {
    /// Product of theta functions indexed by integral points of the manifold.
    VertexMul {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        factors: Factors,
    },
    /// Product in K[x, y][(xy - 1)^-1]; factors may also be expressions.
    LocalMul(Factors),
    /// Product in K[P] up to ample degree `trunc`.
    MonoidMul {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        factors: Factors,
        #[arg(long)]
        trunc: String,
    },
    /// Rewrite an expression in x, y and u = xy - 1 in the local basis.
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
}

fn read_source(path: &Path) -> Result<String, SchemaError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| SchemaError(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| SchemaError(format!("{}: {e}", path.display())))
}

/// Inline text, or the contents of a file for `@path`.
fn inline(arg: &str) -> Result<String, SchemaError> {
    match arg.strip_prefix('@') {
        Some(path) => read_source(Path::new(path)),
        None => Ok(arg.to_string()),
    }
}

fn project(input: &Input) -> Result<ProjectFile, SchemaError> {
    ProjectFile::parse(&read_source(&input.input)?)
}

fn run(cli: Cli) -> CommandResult {
    use commands::*;
    match cli.group {
        Group::Trop(cmd) => match cmd {
            TropCmd::Build(i) => trop_build(&project(&i)?),
            TropCmd::Points { input, bound } => trop_points(&project(&input)?, bound),
            TropCmd::Monodromy(i) => trop_monodromy(&project(&i)?),
            TropCmd::LinearFunctions(i) => trop_linear_functions(&project(&i)?),
            TropCmd::Transport { input, chart, vector, steps } => {
                trop_transport(&project(&input)?, chart, &inline(&vector)?, steps)
            }
        },
        Group::Liouville(cmd) => match cmd {
            LiouvilleCmd::Synth(i) => liouville_synth(&project(&i)?),
            LiouvilleCmd::Check(i) => liouville_check(&project(&i)?),
            LiouvilleCmd::Lengths { input, points, bound } => {
                let pts = points.as_deref().map(inline).transpose()?;
                liouville_lengths(&project(&input)?, pts.as_deref(), bound)
            }
            LiouvilleCmd::Filter { input, slope } => liouville_filter(&project(&input)?, &slope),
        },
        Group::Broken(cmd) => match cmd {
            BrokenCmd::Validate(d) => broken_validate(&project(&d.input)?, d.diagram),
            BrokenCmd::Class(d) => broken_class(&project(&d.input)?, d.diagram),
            BrokenCmd::Render { input, diagram, bound, out } => broken_render(&project(&input)?, diagram, bound, &out),
        },
        Group::Homology(cmd) => match cmd {
            HomologyCmd::Pair(c) => homology_pair(&project(&c.input)?, &inline(&c.class)?),
            HomologyCmd::Certify { class, certificate } => {
                let cert = certificate.as_deref().map(inline).transpose()?;
                homology_certify(&project(&class.input)?, &inline(&class.class)?, cert.as_deref())
            }
            HomologyCmd::Degree(c) => homology_degree(&project(&c.input)?, &inline(&c.class)?),
        },
        Group::Ring(cmd) => match cmd {
            RingCmd::VertexMul { input, factors } => {
                ring_vertex_mul(&project(&input)?, &inline(&factors.left)?, &inline(&factors.right)?)
            }
            RingCmd::LocalMul(f) => ring_local_mul(&inline(&f.left)?, &inline(&f.right)?),
            RingCmd::MonoidMul { input, factors, trunc } => ring_monoid_mul(
                &project(&input)?,
                &inline(&factors.left)?,
                &inline(&factors.right)?,
                &trunc,
            ),
            RingCmd::NormalForm { expr } => ring_normal_form(&inline(&expr)?),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failure(v)) => {
            println!("{v}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
