use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use octaboson::qkernels::{ParamSet, Profile};
use octaboson::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "octaboson",
    version,
    about = "Hyperoctahedral Hall-Littlewood polynomials and boundary q-boson verification suites"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct p_λ exactly and print its monomial expansion and norm.
    Poly(PolyArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Divide two Laurent polynomials (JSON) exactly.
    Divide(DivideArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Parameter profile: four, three (t4 = 0) or two (t3 = t4 = 0).
    #[arg(long, default_value = "four")]
    pub profile: Profile,
    /// Exact rational, e.g. 1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t4: Option<String>,
}

impl ParamArgs {
    /// Parameters with unspecified entries taken from the profile default,
    /// checked for genericity up to the given sector size and part bound.
    pub fn resolve(&self, max_n: usize, max_part: u32) -> Result<ParamSet> {
        let base = ParamSet::default_for(self.profile);
        let or_default = |given: &Option<String>, fallback: String| given.clone().unwrap_or(fallback);
        let t = base.t();
        let [t1, t2, t3, t4] = [
            or_default(&self.t1, t[0].to_string()),
            or_default(&self.t2, t[1].to_string()),
            or_default(&self.t3, t[2].to_string()),
            or_default(&self.t4, t[3].to_string()),
        ];
        let q = or_default(&self.q, base.q().to_string());
        let params = ParamSet::parse(&q, [&t1, &t2, &t3, &t4], self.profile)?;
        params.ensure_generic(max_n, max_part)?;
        Ok(params)
    }
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// Sector size; defaults to the length of --lambda.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated parts, e.g. 2,1,0.
    #[arg(long)]
    pub lambda: String,
    /// Also build p_λ from Macdonald's formula and compare (two-parameter profile).
    #[arg(long)]
    pub compare_macdonald: bool,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orthogonality,
    Norms,
    Pieri,
    Algebra,
    Adjoint,
    Eigen,
    Degeneration,
    Scattering,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Sector size (largest sector for the operator suites).
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest part of the partitions checked.
    #[arg(long = "maxPart")]
    pub max_part: Option<u32>,
    /// Largest operator index l, k in the algebra and adjoint suites.
    #[arg(long = "maxIndex")]
    pub max_index: Option<u32>,
    /// Quadrature points per dimension.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Seed for the randomly drawn spectral points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relation or family for the algebra suite: a1, com-d, all, ...
    #[arg(long, default_value = "all")]
    pub relation: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DivideArgs {
    /// Dividend as JSON: {"nvars": n, "terms": [{"exp": [...], "num": "..", "den": ".."}]}.
    #[arg(long)]
    pub num: String,
    /// Divisor in the same format.
    #[arg(long)]
    pub den: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn parse_lambda(raw: &str, n: Option<usize>) -> Result<octaboson::Partition> {
    let lambda: octaboson::Partition = raw.parse()?;
    match n {
        Some(n) if n != lambda.len() => Err(Error::Domain(format!(
            "--lambda {raw} has {} parts but --n is {n}",
            lambda.len()
        ))),
        _ => Ok(lambda),
    }
}
