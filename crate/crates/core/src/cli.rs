//! Command-line front end. Every command writes exactly one JSON document
//! to stdout; see [`Outcome`] for the exit-code contract.

use clap::{ArgAction, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::action::induced_automorphism_with;
use crate::dilatation::summarize;
use crate::error::Error;
use crate::forms::{QuadraticForm, RealLinearMap};
use crate::framed::{dilatation_tensor_with, FramedLine};
use crate::models::{DiskPoint, Model, PoincarePoint};
use crate::tolerance::Tolerances;
use crate::verify::{self, Property};

/// Overrides the relative singularity tolerance for map inputs.
pub const TOL_ENV: &str = "DILATATION_KIT_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_UNKNOWN_PROPERTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dilatation-kit",
    version,
    about = "Complex dilatation of planar real linear maps"
)]
pub struct Cli {
    /// Emit JSON (default) or a plain `key = value` listing.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complex dilatation, axis ratio and direction of a linear map.
    Mu {
        /// Row-major matrix "m11,m12,m21,m22".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Convert a disc point between the Klein and Poincaré models.
    Convert {
        /// Point "re,im".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        from: Model,
        #[arg(long)]
        to: Model,
    },
    /// Pull a quadratic form back through a matrix or a multiplication map.
    Pullback {
        /// Form "a,b,c" for aX² + bXY + cY².
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "tau",
            required_unless_present = "tau"
        )]
        matrix: Option<String>,
        /// Multiplier "re,im" for m_τ.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
    },
    /// Write a form as m_τ* q_{a,c} with τ = e^{iθ}.
    Diagonalize {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// The disc automorphism induced by a linear map.
    Automorphism {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Optional Poincaré-disc point "re,im" to map.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Basis-free dilatation tensor coefficient.
    Tensor {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Source basis vector "re,im" (defaults to 1).
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
    },
    /// Run a seeded randomized property check.
    Verify {
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to the property's own tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Exit code plus the JSON document for stdout.
///
/// Codes: 0 success; 1 verification found failures; 2 rejected input;
/// 3 unknown property.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
}

impl Outcome {
    fn ok(document: Value) -> Self {
        Self {
            code: EXIT_OK,
            document,
        }
    }

    fn rejected(code: &str, message: impl Into<String>) -> Self {
        Self {
            code: EXIT_REJECTED,
            document: json!({ "error": code, "message": message.into() }),
        }
    }

    /// Renders the document as JSON or as flattened `key = value` lines.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            return self.document.to_string();
        }
        let mut lines = Vec::new();
        flatten("", &self.document, &mut lines);
        lines.join("\n")
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        other => out.push(format!("{prefix} = {other}")),
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::rejected(e.code(), e.to_string())
    }
}

fn parse_reals<const N: usize>(what: &str, s: &str) -> Result<[f64; N], Outcome> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || {
        Outcome::rejected(
            "invalid_input",
            format!("{what} expects {N} comma-separated reals, got `{s}`"),
        )
    };
    if parts.len() != N {
        return Err(bad());
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse::<f64>().map_err(|_| bad())?;
        if !slot.is_finite() {
            return Err(bad());
        }
    }
    Ok(out)
}

fn parse_complex(what: &str, s: &str) -> Result<Complex64, Outcome> {
    parse_reals::<2>(what, s).map(|[re, im]| Complex64::new(re, im))
}

fn parse_matrix(s: &str) -> Result<RealLinearMap, Outcome> {
    parse_reals::<4>("--matrix", s).map(RealLinearMap::from_row_major)
}

fn parse_form(s: &str) -> Result<QuadraticForm, Outcome> {
    parse_reals::<3>("--form", s).map(|[a, b, c]| QuadraticForm::new(a, b, c))
}

/// Tolerances with the `DILATATION_KIT_TOL` override applied.
pub fn tolerances_from_env() -> Result<Tolerances, String> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(Tolerances::default()),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 => Ok(Tolerances::default().with_singular(v)),
            _ => Err(format!(
                "{TOL_ENV} must be a non-negative real, got `{raw}`"
            )),
        },
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn execute(cmd: &Command, tol: &Tolerances) -> Outcome {
    match run_command(cmd, tol) {
        Ok(o) | Err(o) => o,
    }
}

fn run_command(cmd: &Command, tol: &Tolerances) -> Result<Outcome, Outcome> {
    let out = match cmd {
        Command::Mu { matrix } => {
            let t = parse_matrix(matrix)?;
            to_value(&summarize(&t, tol)?)
        }
        Command::Convert { point, from, to } => {
            let p = DiskPoint::new(*from, parse_complex("--point", point)?)?;
            let converted = p.convert(*to);
            let mut doc = to_value(&converted);
            doc["near_boundary"] = json!(p.is_near_boundary() || converted.is_near_boundary());
            doc
        }
        Command::Pullback { form, matrix, tau } => {
            let q = parse_form(form)?;
            let pulled = match (matrix, tau) {
                (Some(m), _) => q.pullback(&parse_matrix(m)?),
                (None, Some(t)) => q.mult_pullback(parse_complex("--tau", t)?),
                (None, None) => unreachable!("clap requires --matrix or --tau"),
            };
            to_value(&pulled)
        }
        Command::Diagonalize { form } => to_value(&parse_form(form)?.diagonalize()),
        Command::Automorphism { matrix, point } => {
            let u = parse_matrix(matrix)?;
            let phi = induced_automorphism_with(&u, tol)?;
            let mut doc = to_value(&phi);
            if let Some(p) = point {
                let mu = PoincarePoint::new(parse_complex("--point", p)?)?;
                doc["image"] = to_value(&DiskPoint::Poincare(phi.apply(mu)));
            }
            doc
        }
        Command::Tensor { matrix, basis } => {
            let t = parse_matrix(matrix)?;
            let src = match basis {
                Some(b) => FramedLine::new(parse_complex("--basis", b)?)?,
                None => FramedLine::REFERENCE,
            };
            to_value(&dilatation_tensor_with(&t, &src, tol)?)
        }
        Command::Verify {
            property,
            trials,
            seed,
            tol: check_tol,
        } => {
            let prop: Property =
                property
                    .parse()
                    .map_err(|e: verify::UnknownProperty| Outcome {
                        code: EXIT_UNKNOWN_PROPERTY,
                        document: json!({ "error": "unknown_property", "message": e.to_string() }),
                    })?;
            let report = verify::run(
                prop,
                *trials,
                *seed,
                check_tol.unwrap_or(prop.default_tolerance()),
            );
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            return Ok(Outcome {
                code,
                document: to_value(&report),
            });
        }
    };
    Ok(Outcome::ok(out))
}
