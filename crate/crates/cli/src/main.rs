mod args;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use octaboson::hallittlewood::{
    hl_explicit_budgeted, macdonald_bc_budgeted, principal_specialization,
};
use octaboson::qkernels;
use octaboson::{Budget, Error, LaurentPoly};

use args::{Cli, Command, DivideArgs, Format, OutputArgs, PolyArgs};

const EXIT_FAIL: u8 = 1;
const EXIT_NOT_DIVISIBLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::NotDivisible { .. }) => EXIT_NOT_DIVISIBLE,
            CliError::Core(Error::Budget(_)) => EXIT_BUDGET,
            _ => EXIT_FAIL,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Core(e) => (e.kind(), e.to_string()),
            CliError::Io(e) => ("io", e.to_string()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

/// Output body plus the rows used for `--format csv`.
struct Rendered {
    json: Value,
    csv_header: &'static str,
    csv_rows: Vec<String>,
}

fn emit(output: &OutputArgs, rendered: &Rendered) -> Result<(), CliError> {
    let text = match output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rendered.json).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from(rendered.csv_header);
            s.push('\n');
            for row in &rendered.csv_rows {
                s.push_str(row);
                s.push('\n');
            }
            s
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_poly(args: &PolyArgs, budget: &Budget) -> Result<(), CliError> {
    let lambda = args::parse_lambda(&args.lambda, args.n)?;
    let params = args.params.resolve(lambda.len(), lambda.largest())?;
    let hl = hl_explicit_budgeted(&lambda, &params, budget)?;
    let special = principal_specialization(&hl)?;
    let inverse_c = qkernels::c_lambda(&lambda, &params)?.recip();

    let mut json = serde_json::to_value(hl.to_json()).expect("polynomial serializes");
    json["params"] = json!(params);
    json["principalSpecialization"] = json!({
        "value": special.to_string(),
        "expected": inverse_c.to_string(),
        "equal": special == inverse_c,
    });
    if args.compare_macdonald {
        let other = macdonald_bc_budgeted(&lambda, &params, budget)?;
        json["equal"] = json!(other.poly() == hl.poly());
    }
    let csv_rows = hl
        .to_json()
        .expansion
        .iter()
        .map(|t| format!("{},{}", suites::join(t.mu.parts()), t.coeff))
        .collect();
    emit(
        &args.output,
        &Rendered {
            json,
            csv_header: "mu,coeff",
            csv_rows,
        },
    )
}

fn cmd_divide(args: &DivideArgs) -> Result<(), CliError> {
    let parse = |raw: &str| -> Result<LaurentPoly, Error> {
        serde_json::from_str(raw).map_err(|e| Error::Parse(format!("bad polynomial JSON: {e}")))
    };
    let quotient = parse(&args.num)?.div_exact(&parse(&args.den)?)?;
    let csv_rows = quotient
        .terms()
        .map(|(e, c)| {
            let exp: Vec<String> = e.iter().map(i32::to_string).collect();
            format!("{},{c}", exp.join(" "))
        })
        .collect();
    emit(
        &args.output,
        &Rendered {
            json: json!({ "quotient": quotient }),
            csv_header: "exp,coeff",
            csv_rows,
        },
    )
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let budget = Budget::from_env()?;
    match &cli.command {
        Command::Poly(args) => cmd_poly(args, &budget).map(|()| 0),
        Command::Divide(args) => cmd_divide(args).map(|()| 0),
        Command::Verify(args) => {
            let run = suites::run(args, &budget)?;
            emit(
                &args.output,
                &Rendered {
                    json: run.body,
                    csv_header: run.csv_header,
                    csv_rows: run.csv_rows,
                },
            )?;
            Ok(if run.pass { 0 } else { EXIT_FAIL })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_FAIL);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("values serialize"));
            eprintln!("octaboson: {}", e.to_json()["error"]["message"].as_str().unwrap_or(""));
            ExitCode::from(e.exit_code())
        }
    }
}
