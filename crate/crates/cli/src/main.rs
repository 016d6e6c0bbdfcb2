//! `tdp`: JSON-in, JSON-out front end for the tdpair toolkit.
//!
//! Exit codes: 0 when the outcome is verified or valid, 1 when it is refuted
//! (not feasible, not direct, identity fails, ...), 2 on input errors. A
//! report is written to stdout in every case.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tdpair::mu::{check_phi, mu_verification, phi_matrix};
use tdpair::params::{
    check_feasible, geometric_sequence, qracah_witness, recurrence_sequence,
    validate_parameter_array, ParameterArray, SequenceJson,
};
use tdpair::relators::{directness_check, verify_psi_identities, DirectnessCertificate};
use tdpair::scan::conjecture_scan;
use tdpair::words::{
    enumerate_words, enumerate_zigzag, is_bracket_zigzag, is_zigzag, is_zigzag_via_signs, kappa_of,
};
use tdpair::{FieldCtx, ParameterSequence, Word, WordType};

#[derive(Debug, Parser)]
#[command(name = "tdp", version)]
#[command(about = "Exact checks for sharp tridiagonal pair parameters and zigzag bases")]
struct Cli {
    /// Field for inputs without a "field" key, and for generated data:
    /// "rational" or "prime:P". Overrides the key when given.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Output format. TSV is available for certificate tables (directness,
    /// mu-verify, conjecture-scan) and word lists.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a sequence pair is feasible
    FeasCheck {
        /// Sequence JSON: a file path or inline text
        #[arg(long)]
        input: String,
    },
    /// Decide whether a feasible sequence is of q-Racah type (d >= 3)
    Qracah {
        #[arg(long)]
        input: String,
    },
    /// theta_i = theta*_i = vartheta^i for 0 <= i <= d
    GenGeometric {
        #[arg(long)]
        vartheta: String,
        #[arg(long)]
        d: usize,
    },
    /// Both sequences from the three-term recurrence with a shared beta
    GenRecurrence {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Starting values t0,t1,t2 of theta
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Starting values of theta*
        #[arg(long, allow_hyphen_values = true)]
        start_star: String,
        #[arg(long)]
        d: usize,
    },
    /// Validate a parameter array (sequence JSON with a "zeta" list)
    ValidateArray {
        #[arg(long)]
        input: String,
    },
    /// List (or count) the words of a type
    Words {
        #[arg(long)]
        d: usize,
        /// "n=N", "[N]", or "length=L,begin=G,end=G" (G like E0 or e2)
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        count_only: bool,
    },
    /// List zigzag words of a type, or test a single word
    Zigzag {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        lambda: Option<String>,
        /// Word to test, e.g. "E0 e2 E0 e1 E0"
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Rank certificate for T_lambda = R_lambda (+) Z_lambda
    Directness {
        #[arg(long)]
        input: String,
        /// Shorthand for --lambda n=N
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: Option<String>,
        /// Expected d; an input of another size is rejected
        #[arg(long)]
        d: Option<usize>,
    },
    /// Directness of [n] for 0 <= n <= n_max, plus the phi matrix check
    MuVerify {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Check the psi identities modulo the relator ideal
    PsiCheck {
        #[arg(long)]
        input: String,
        /// Permit d > 2 (slow)
        #[arg(long)]
        allow_large: bool,
    },
    /// Directness of every type up to a length for random feasible sequences
    ConjectureScan {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 5)]
        max_length: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Seed for ChaCha8; identical arguments give identical reports
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Input errors end with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, InputError>;

struct Report {
    ok: bool,
    body: Value,
    tsv: Option<String>,
}

impl Report {
    fn new(ok: bool, body: impl Serialize) -> CliResult<Self> {
        Ok(Report {
            ok,
            body: serde_json::to_value(body)?,
            tsv: None,
        })
    }

    fn with_tsv(mut self, tsv: String) -> Self {
        self.tsv = Some(tsv);
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("TDP_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // ignore failure: the pool may already exist
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli) {
        Ok(report) => {
            let text = match (cli.format, report.tsv) {
                (Format::Tsv, Some(tsv)) => tsv,
                _ => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.body).expect("json")
                ),
            };
            emit(&text);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({ "error": msg })).expect("json")
            ));
            eprintln!("tdp: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn field_flag(cli: &Cli) -> CliResult<Option<FieldCtx>> {
    cli.field
        .as_deref()
        .map(str::parse)
        .transpose()
        .map_err(Into::into)
}

fn read_json(input: &str) -> CliResult<Value> {
    let text = if input.trim_start().starts_with(['{', '[']) {
        input.to_string()
    } else {
        fs::read_to_string(input).map_err(|e| InputError(format!("{input}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

/// Reads sequence JSON, accepting numbers for entries and filling in the
/// field from the command line.
fn read_sequence_json(cli: &Cli, input: &str) -> CliResult<SequenceJson> {
    let mut v = read_json(input)?;
    let obj = v
        .as_object_mut()
        .ok_or_else(|| InputError("expected a JSON object".into()))?;
    match field_flag(cli)? {
        Some(ctx) => {
            obj.insert("field".into(), serde_json::to_value(ctx)?);
        }
        None if !obj.contains_key("field") => {
            obj.insert("field".into(), serde_json::to_value(FieldCtx::Rational)?);
        }
        None => {
            // "field": "prime:7" is accepted as shorthand
            if let Some(Value::String(s)) = obj.get("field") {
                let ctx: FieldCtx = s.parse()?;
                obj.insert("field".into(), serde_json::to_value(ctx)?);
            }
        }
    }
    for key in ["theta", "theta_star", "zeta"] {
        if let Some(Value::Array(xs)) = obj.get_mut(key) {
            for x in xs.iter_mut() {
                if let Value::Number(n) = x {
                    *x = Value::String(n.to_string());
                }
            }
        }
    }
    if !obj.contains_key("d") {
        if let Some(Value::Array(xs)) = obj.get("theta") {
            let d = xs.len().saturating_sub(1);
            obj.insert("d".into(), json!(d));
        }
    }
    Ok(serde_json::from_value(v)?)
}

fn read_sequence(cli: &Cli, input: &str) -> CliResult<ParameterSequence> {
    Ok(ParameterSequence::from_json(&read_sequence_json(
        cli, input,
    )?)?)
}

fn parse_lambda(s: &str) -> CliResult<WordType> {
    Ok(s.parse()?)
}

fn resolve_lambda(n: Option<usize>, lambda: Option<&str>) -> CliResult<WordType> {
    match (n, lambda) {
        (Some(n), None) => Ok(WordType::bracket(n)),
        (None, Some(l)) => parse_lambda(l),
        (Some(_), Some(_)) => Err(InputError("give either --n or --lambda, not both".into())),
        (None, None) => Err(InputError("one of --n or --lambda is required".into())),
    }
}

/// Refuted outcome for operations that need a feasible sequence.
fn infeasible(p: &ParameterSequence) -> CliResult<Report> {
    Report::new(
        false,
        json!({ "feasible": false, "report": check_feasible(p), "p_digest": p.digest() }),
    )
}

fn certificate_tsv(rows: &[(String, &DirectnessCertificate)]) -> String {
    let mut out = String::from("case\tlambda\td\tdim\tzigzag\trelators\trank\tdirect\n");
    for (case, c) in rows {
        out.push_str(&format!(
            "{case}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            c.word_type(),
            c.d,
            c.dim,
            c.zigzag,
            c.relators,
            c.rank,
            c.direct
        ));
    }
    out
}

fn word_list_tsv(words: &[Word]) -> String {
    words.iter().map(|w| format!("{w}\n")).collect()
}

fn run(cli: &Cli) -> CliResult<Report> {
    let ctx = field_flag(cli)?.unwrap_or(FieldCtx::Rational);
    match &cli.command {
        Command::FeasCheck { input } => {
            let p = read_sequence(cli, input)?;
            let r = check_feasible(&p);
            let beta = r
                .beta_plus_one
                .as_ref()
                .map(|b| b.sub(&p.ctx().one()))
                .transpose()?;
            Report::new(
                r.feasible,
                json!({ "report": r, "beta": beta, "p_digest": p.digest() }),
            )
        }
        Command::Qracah { input } => {
            let p = read_sequence(cli, input)?;
            match qracah_witness(&p) {
                Ok(w) => Report::new(w.is_qracah, json!({ "witness": w, "p_digest": p.digest() })),
                Err(tdpair::Error::NotFeasible) => {
                    Report::new(false, json!({ "feasible": false, "p_digest": p.digest() }))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::GenGeometric { vartheta, d } => {
            let p = geometric_sequence(&ctx.parse_element(vartheta)?, *d)?;
            Report::new(true, p.to_json())
        }
        Command::GenRecurrence {
            beta,
            start,
            start_star,
            d,
        } => {
            let beta = ctx.parse_element(beta)?;
            let parse3 = |s: &str| -> CliResult<Vec<_>> {
                let xs = s
                    .split(',')
                    .map(|x| ctx.parse_element(x.trim()))
                    .collect::<tdpair::Result<Vec<_>>>()?;
                if xs.len() != 3 {
                    return Err(InputError(format!(
                        "expected three starting values, got {s:?}"
                    )));
                }
                Ok(xs)
            };
            let (t, ts) = (parse3(start)?, parse3(start_star)?);
            let theta = recurrence_sequence(&beta, &t[0], &t[1], &t[2], *d)?;
            let theta_star = recurrence_sequence(&beta, &ts[0], &ts[1], &ts[2], *d)?;
            match ParameterSequence::new(ctx, theta, theta_star) {
                Ok(p) => {
                    let feasible = p.is_feasible();
                    Report::new(
                        feasible,
                        json!({ "sequence": p.to_json(), "feasible": feasible }),
                    )
                }
                Err(tdpair::Error::NotDistinct) => Report::new(
                    false,
                    json!({ "feasible": false, "reason": "entries repeat" }),
                ),
                Err(e) => Err(e.into()),
            }
        }
        Command::ValidateArray { input } => {
            let arr = ParameterArray::from_json(&read_sequence_json(cli, input)?)?;
            let v = validate_parameter_array(&arr)?;
            Report::new(
                v.valid,
                json!({ "validation": v, "p_digest": arr.seq.digest() }),
            )
        }
        Command::Words {
            d,
            lambda,
            count_only,
        } => {
            let lambda = parse_lambda(lambda)?;
            let words = enumerate_words(&lambda, *d)?;
            if *count_only {
                let r = Report::new(true, words.len())?;
                return Ok(r.with_tsv(format!("{}\n", words.len())));
            }
            Ok(Report::new(true, &words)?.with_tsv(word_list_tsv(&words)))
        }
        Command::Zigzag {
            d,
            lambda,
            word,
            count_only,
        } => {
            if let Some(w) = word {
                let w: Word = w.parse()?;
                if let Some(d) = d {
                    if w.max_index().is_some_and(|m| m as usize > *d) {
                        return Err(InputError(format!("word {w} has an index above d = {d}")));
                    }
                }
                let z = is_zigzag(&w);
                return Report::new(
                    z,
                    json!({
                        "word": w,
                        "zigzag": z,
                        "zigzag_by_signs": is_zigzag_via_signs(&w),
                        "bracket_zigzag": is_bracket_zigzag(&w),
                        "kappa": kappa_of(&w).ok(),
                    }),
                );
            }
            let (Some(d), Some(lambda)) = (d, lambda) else {
                return Err(InputError(
                    "zigzag needs --word, or --d with --lambda".into(),
                ));
            };
            let words = enumerate_zigzag(&parse_lambda(lambda)?, *d)?;
            if *count_only {
                let r = Report::new(true, words.len())?;
                return Ok(r.with_tsv(format!("{}\n", words.len())));
            }
            Ok(Report::new(true, &words)?.with_tsv(word_list_tsv(&words)))
        }
        Command::Directness {
            input,
            n,
            lambda,
            d,
        } => {
            let p = read_sequence(cli, input)?;
            if !p.is_feasible() {
                return infeasible(&p);
            }
            if let Some(d) = d {
                if *d != p.d() {
                    return Err(InputError(format!(
                        "--d {d} but the input has d = {}",
                        p.d()
                    )));
                }
            }
            let lambda = resolve_lambda(*n, lambda.as_deref())?;
            let c = directness_check(&lambda, &p)?;
            let tsv = certificate_tsv(&[("0".into(), &c)]);
            Ok(Report::new(c.direct, &c)?.with_tsv(tsv))
        }
        Command::MuVerify { input, n_max } => {
            let p = read_sequence(cli, input)?;
            if !p.is_feasible() {
                return infeasible(&p);
            }
            let report = mu_verification(&p, *n_max)?;
            let phi = if p.d() >= 1 {
                Some(check_phi(&phi_matrix(&p)?))
            } else {
                None
            };
            let phi_ok = phi
                .as_ref()
                .is_none_or(|c| c.upper_triangular && c.diagonal_nonzero && c.invertible);
            let rows: Vec<(String, &DirectnessCertificate)> = report
                .per_n
                .iter()
                .map(|c| (c.n.to_string(), &c.certificate))
                .collect();
            let tsv = certificate_tsv(&rows);
            let ok = report.evidence_up_to_n_max && phi_ok;
            Ok(Report::new(ok, json!({ "mu": report, "phi": phi }))?.with_tsv(tsv))
        }
        Command::PsiCheck { input, allow_large } => {
            let p = read_sequence(cli, input)?;
            if !p.is_feasible() {
                return infeasible(&p);
            }
            let r = verify_psi_identities(&p, *allow_large)?;
            Report::new(r.all_hold, &r)
        }
        Command::ConjectureScan {
            d,
            max_length,
            samples,
            seed,
        } => {
            let r = conjecture_scan(*d, *max_length, *samples, *seed, ctx)?;
            let rows: Vec<(String, &DirectnessCertificate)> = r
                .certificates
                .iter()
                .map(|(s, c)| (s.to_string(), c))
                .collect();
            let tsv = certificate_tsv(&rows);
            Ok(Report::new(r.all_direct(), &r)?.with_tsv(tsv))
        }
    }
}
