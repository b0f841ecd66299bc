//! Command dispatch for the `nilaffine` binary.
//!
//! Every command prints one JSON document on stdout. Exit codes: `0`
//! success (and proper, for `check`), `2` invalid input, `3` not proper,
//! `4` internal contract violation.

pub mod document;

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use nilaffine::algebra::{format_rational, parse_rational, Rational};
use nilaffine::deformation::{canonicalize, orbit_equivalent, stability_probe};
use nilaffine::hom::{approx_sequence, psi1, psi2, rank_one_factor, HomParam};
use nilaffine::oracle::{oracle_verdict, Verdict};
use nilaffine::properness::{
    generic_dimension, is_generic, is_injective_gamma, is_proper, is_proper_lie, Witness,
};
use nilaffine::sampling::Sampler;
use serde_json::{json, Value};

use document::{param_json, parse_param, parse_param_str, rational_json, vector_json, DocError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_PROPER: i32 = 3;
pub const EXIT_CONTRACT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "nilaffine", version, about = "Properness of affine Z^k actions through a two-step nilpotent group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide properness of the parameter on stdin.
    Check,
    /// Branch, properness, genericity and injectivity.
    Classify,
    /// Canonical representative of the G-orbit.
    Canon {
        /// Also canonicalize non-proper parameters (no uniqueness claim).
        #[arg(long)]
        allow_improper: bool,
    },
    /// Orbit equivalence of a JSON array of two parameters.
    Equiv,
    /// Brute-force return counting on boxes.
    Oracle {
        #[arg(long, default_value = "1")]
        box_radius: String,
        #[arg(long, default_value = "8,16,32,64")]
        schedule: String,
    },
    /// Dimension record for the generic part.
    Dim {
        #[arg(long)]
        k: u64,
    },
    /// Random parameters with a classification summary.
    Sample {
        #[arg(long)]
        k: usize,
        /// Parameters per branch.
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closure membership and first-chart approximations.
    Closure,
    /// Perturbation probe around a proper parameter.
    Probe {
        #[arg(long, default_value = "1/10")]
        radius: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code and stdout text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

impl Output {
    fn json(code: i32, v: &Value) -> Self {
        Self {
            code,
            stdout: format!("{}\n", serde_json::to_string(v).expect("serializable")),
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Self::json(code, &json!({ "error": msg.to_string() }))
    }
}

impl From<DocError> for Output {
    fn from(e: DocError) -> Self {
        Output::error(EXIT_INVALID, e)
    }
}

type Outcome = Result<Output, Output>;

/// Parses `args` (including the program name) and runs the command, reading
/// stdin only for commands that take a document.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                },
                _ => Output::error(EXIT_INVALID, e.to_string().trim_end()),
            };
        }
    };
    dispatch(cli.command, stdin).unwrap_or_else(|e| e)
}

fn read_stdin(stdin: &mut dyn Read) -> Result<String, Output> {
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| Output::error(EXIT_INVALID, format!("reading stdin: {e}")))?;
    Ok(s)
}

fn read_param(stdin: &mut dyn Read) -> Result<HomParam, Output> {
    Ok(parse_param_str(&read_stdin(stdin)?)?)
}

fn parse_rational_flag(s: &str, flag: &str) -> Result<Rational, Output> {
    parse_rational(s).map_err(|_| Output::error(EXIT_INVALID, format!("{flag}: bad rational {s:?}")))
}

fn not_proper() -> Output {
    Output::error(EXIT_NOT_PROPER, "parameter is not proper")
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Rank { rank, required } => json!({ "rank": rank, "required": required }),
        Witness::NoRealRoot => json!({ "no_real_root": true }),
        Witness::IdenticallyZero => json!({ "identically_zero": true }),
        Witness::RootInterval { lo, hi } => {
            json!({ "root_interval": [format_rational(lo), format_rational(hi)] })
        }
    }
}

fn generic_of(p: &HomParam) -> bool {
    match p {
        HomParam::Type1(_) => false,
        HomParam::Type2(q) => is_generic(q),
    }
}

/// Cross-checks the criterion against the Lie-algebra route and the
/// `generic ⇒ proper ⇒ injective` chain.
fn contract(p: &HomParam, proper: bool) -> Result<(), Output> {
    if is_proper_lie(p) != proper {
        return Err(Output::error(
            EXIT_CONTRACT,
            "contract violation: criteria disagree",
        ));
    }
    if (generic_of(p) && !proper) || (proper && !is_injective_gamma(p)) {
        return Err(Output::error(
            EXIT_CONTRACT,
            "contract violation: generic => proper => injective fails",
        ));
    }
    Ok(())
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Check => {
            let p = read_param(stdin)?;
            let v = is_proper(&p);
            contract(&p, v.proper)?;
            let code = if v.proper { EXIT_OK } else { EXIT_NOT_PROPER };
            Ok(Output::json(
                code,
                &json!({ "branch": v.branch, "proper": v.proper, "witness": witness_json(&v.witness) }),
            ))
        }
        Command::Classify => {
            let p = read_param(stdin)?;
            let proper = is_proper(&p).proper;
            contract(&p, proper)?;
            Ok(Output::json(
                EXIT_OK,
                &json!({
                    "branch": p.branch(),
                    "proper": proper,
                    "generic": generic_of(&p),
                    "injective": is_injective_gamma(&p),
                }),
            ))
        }
        Command::Canon { allow_improper } => {
            let p = read_param(stdin)?;
            let c = canonicalize(&p, !allow_improper).map_err(|_| not_proper())?;
            Ok(Output::json(EXIT_OK, &param_json(c.param())))
        }
        Command::Equiv => {
            let v: Value = serde_json::from_str(&read_stdin(stdin)?)
                .map_err(|e| Output::error(EXIT_INVALID, format!("malformed JSON: {e}")))?;
            let docs = match &v {
                Value::Array(items) if items.len() == 2 => items,
                _ => return Err(Output::error(EXIT_INVALID, "expected a JSON array of two parameters")),
            };
            let (p, q) = (parse_param(&docs[0])?, parse_param(&docs[1])?);
            match orbit_equivalent(&p, &q) {
                Ok(eq) => Ok(Output::json(EXIT_OK, &json!({ "equivalent": eq }))),
                Err(nilaffine::Error::NotProper) => Err(not_proper()),
                Err(e) => Err(Output::error(EXIT_INVALID, e)),
            }
        }
        Command::Oracle {
            box_radius,
            schedule,
        } => {
            let r = parse_rational_flag(&box_radius, "--box-radius")?;
            let radii = schedule
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Output::error(EXIT_INVALID, format!("--schedule: bad list {schedule:?}")))?;
            let p = read_param(stdin)?;
            let report = oracle_verdict(&p, &r, &radii).map_err(|e| Output::error(EXIT_INVALID, e))?;
            let proper = is_proper(&p).proper;
            let verdict = match report.verdict {
                Verdict::Proper => "proper",
                Verdict::NotProper => "not_proper",
                Verdict::Inconclusive => "inconclusive",
            };
            let doc = json!({
                "box_radius": rational_json(&report.box_radius),
                "lattice_radii": report.lattice_radii,
                "counts": report.counts,
                "cone_counts": report.cone_counts,
                "verdict": verdict,
                "witness": report.witness.as_ref().map(|w| json!({
                    "direction": w.direction,
                    "multiples": w.multiples,
                })),
                "criterion_proper": proper,
            });
            let contradicts = match report.verdict {
                Verdict::Proper => !proper,
                Verdict::NotProper => proper,
                Verdict::Inconclusive => false,
            };
            let code = if contradicts { EXIT_CONTRACT } else { EXIT_OK };
            Ok(Output::json(code, &doc))
        }
        Command::Dim { k } => {
            let d = generic_dimension(k).map_err(|e| Output::error(EXIT_INVALID, e))?;
            Ok(Output::json(
                EXIT_OK,
                &json!({ "dim_M1r": d.dim_m1r, "dim_M2ro": d.dim_m2ro, "dim_T_prime": d.dim_t_prime }),
            ))
        }
        Command::Sample { k, count, seed } => sample(k, count, seed),
        Command::Closure => closure(&read_param(stdin)?),
        Command::Probe {
            radius,
            trials,
            seed,
        } => {
            let radius = parse_rational_flag(&radius, "--radius")?;
            let p = read_param(stdin)?;
            let report = match stability_probe(&p, &radius, trials, seed) {
                Ok(r) => r,
                Err(nilaffine::Error::NotProper) => return Err(not_proper()),
                Err(e) => return Err(Output::error(EXIT_INVALID, e)),
            };
            let crossings: Vec<Value> = report
                .crossings
                .iter()
                .map(|c| json!({ "chart": c.chart, "param": param_json(&c.param) }))
                .collect();
            Ok(Output::json(
                EXIT_OK,
                &json!({
                    "trials": report.trials,
                    "proper": report.proper,
                    "proper_fraction": report.proper_fraction(),
                    "crossings": crossings,
                }),
            ))
        }
    }
}

fn sample(k: usize, count: usize, seed: u64) -> Outcome {
    if k == 0 {
        return Err(Output::error(EXIT_INVALID, "--k must be positive"));
    }
    let mut sampler = Sampler::new(seed);
    let mut summary = serde_json::Map::new();
    let mut samples = Vec::new();
    for branch in [1u8, 2] {
        let mut proper_count = 0;
        let mut generic_count = 0;
        for _ in 0..count {
            let p = sampler.param(k, branch);
            let proper = is_proper(&p).proper;
            contract(&p, proper)?;
            let generic = generic_of(&p);
            proper_count += proper as usize;
            generic_count += generic as usize;
            samples.push(json!({ "param": param_json(&p), "proper": proper, "generic": generic }));
        }
        let fraction = if count == 0 {
            Value::Null
        } else {
            json!(proper_count as f64 / count as f64)
        };
        let mut entry = json!({ "count": count, "proper": proper_count, "proper_fraction": fraction });
        if branch == 2 {
            entry["generic"] = json!(generic_count);
        }
        summary.insert(format!("branch{branch}"), entry);
    }
    summary.insert("k".into(), json!(k));
    summary.insert("seed".into(), json!(seed));
    summary.insert("samples".into(), Value::Array(samples));
    Ok(Output::json(EXIT_OK, &Value::Object(summary)))
}

const PREVIEW_TERMS: [u64; 4] = [1, 10, 100, 1000];

fn closure(p: &HomParam) -> Outcome {
    let HomParam::Type2(q) = p else {
        return Err(Output::error(EXIT_INVALID, "closure expects a type2 parameter"));
    };
    let rank = q.x().rank();
    if rank > 1 {
        return Ok(Output::json(EXIT_OK, &json!({ "in_closure": false, "rank_X": rank })));
    }
    let (x, a) = rank_one_factor(q.x()).map_err(|e| Output::error(EXIT_CONTRACT, e))?;
    let target = psi2(q);
    let preview: Vec<Value> = PREVIEW_TERMS
        .iter()
        .map(|&l| {
            let term = approx_sequence(q, l).expect("rank checked");
            let distance = psi1(&term).matrix_distance(&target);
            json!({ "l": l, "param": param_json(&term.into()), "distance": distance })
        })
        .collect();
    Ok(Output::json(
        EXIT_OK,
        &json!({
            "in_closure": true,
            "rank_X": rank,
            "factor": { "x": vector_json(&x), "a": vector_json(&a) },
            "preview": preview,
        }),
    ))
}
