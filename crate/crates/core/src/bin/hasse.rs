use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use hasse_core::bundle::{
    certify_form, certify_params, verify_bundle, CertificateBundle, CertifyOptions, FormRecord,
};
use hasse_core::corpus::{corpus, corpus_entry};
use hasse_core::cyclotomic::{minimal_polynomial, norm_form, ThetaVariant};
use hasse_core::forms::{
    build_form, build_form_unchecked, check_conditions, search_params, FormParams, Variant,
};
use hasse_core::Error;

const OK: u8 = 0;
const NO_RESULT: u8 = 2;
const CERTIFY_FAIL: u8 = 3;
const REPLAY_FAIL: u8 = 4;
const MALFORMED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "hasse",
    version,
    about = "Build and certify counterexamples to the Hasse principle"
)]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Smallest admissible parameters for a family at a prime N.
    Search {
        #[arg(long = "N")]
        n_prime: u64,
        #[arg(long, default_value = "T1")]
        variant: Variant,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        beta: u32,
        #[arg(long)]
        gamma: Option<usize>,
    },
    /// Build the form for a parameter file.
    Build {
        params: PathBuf,
        /// Skip the hypothesis check.
        #[arg(long)]
        unchecked: bool,
    },
    /// Expand a norm form.
    Expand {
        #[arg(long = "N")]
        n_prime: u64,
        #[arg(long, default_value = "real_theta")]
        theta: String,
        #[arg(long, default_value_t = 2)]
        gamma: usize,
    },
    /// Produce a certificate bundle for a parameter file or a corpus entry.
    Certify {
        params: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long, default_value_t = 200)]
        p_max: u64,
        #[arg(long, default_value_t = 10)]
        height: u64,
        #[arg(long, default_value_t = 1000)]
        q_bound: u64,
    },
    /// Replay a certificate bundle.
    Verify { bundle: PathBuf },
    /// List the regression corpus, or certify it.
    Corpus {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = 100)]
        p_max: u64,
        #[arg(long, default_value_t = 10)]
        height: u64,
    },
}

fn emit(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("serialisable output"));
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("hasse: {msg}");
    ExitCode::from(code)
}

fn read_params(path: &PathBuf) -> Result<FormParams, ExitCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let params: FormParams = serde_json::from_str(first)
        .or_else(|_| serde_json::from_str(&text))
        .map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))?;
    params.validate().map_err(|e| fail(MALFORMED, e))?;
    Ok(params)
}

fn report_bundle(b: &CertificateBundle) -> ExitCode {
    emit(b);
    match b.failures().first() {
        None => ExitCode::from(OK),
        Some(first) => fail(CERTIFY_FAIL, format!("certification failed: {first}")),
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let workers = cli.workers;
    match cli.cmd {
        Cmd::Search {
            n_prime,
            variant,
            count,
            beta,
            gamma,
        } => {
            let n = variant
                .n_for_prime(n_prime)
                .map_err(|e| fail(NO_RESULT, e))?;
            let gamma = gamma.unwrap_or(variant.gamma_range(n).0);
            let found = search_params(n_prime, variant, count, beta, gamma)
                .map_err(|e| fail(NO_RESULT, e))?;
            if found.is_empty() {
                return Err(fail(NO_RESULT, "no parameters found"));
            }
            found.iter().for_each(emit);
            Ok(ExitCode::from(OK))
        }
        Cmd::Build { params, unchecked } => {
            let params = read_params(&params)?;
            let basis = minimal_polynomial(params.n_prime, params.variant.theta())
                .map_err(|e| fail(MALFORMED, e))?;
            let report = check_conditions(&params);
            let built = if unchecked {
                build_form_unchecked(&params, &basis)
            } else {
                build_form(&params, &basis)
            };
            match built {
                Ok(b) => {
                    emit(&json!({"form": FormRecord::new(&b.form), "conditions": report}));
                    Ok(ExitCode::from(OK))
                }
                Err(e) => {
                    emit(&json!({"conditions": report}));
                    Err(fail(NO_RESULT, e))
                }
            }
        }
        Cmd::Expand {
            n_prime,
            theta,
            gamma,
        } => {
            let variant = match theta.as_str() {
                "real_theta" | "real" => ThetaVariant::RealTheta,
                "one_minus_zeta" => ThetaVariant::OneMinusZeta,
                other => return Err(fail(MALFORMED, format!("unknown theta variant '{other}'"))),
            };
            let basis = minimal_polynomial(n_prime, variant).map_err(|e| fail(NO_RESULT, e))?;
            let f = norm_form(&basis, gamma).map_err(|e| fail(NO_RESULT, e))?;
            emit(&json!({"basis": basis, "gamma": gamma, "form": FormRecord::new(&f)}));
            Ok(ExitCode::from(OK))
        }
        Cmd::Certify {
            params,
            corpus: name,
            p_max,
            height,
            q_bound,
        } => {
            let opts = CertifyOptions {
                p_max,
                height,
                q_bound,
                ..CertifyOptions::default()
            };
            let bundle = match (params, name) {
                (Some(path), None) => {
                    let params = read_params(&path)?;
                    certify_params(&params, opts, workers)
                }
                (None, Some(name)) => {
                    let e = corpus_entry(&name).map_err(|e| fail(MALFORMED, e))?;
                    match e.params {
                        Some(p) => certify_params(&p, opts, workers),
                        None => certify_form(e.name, &e.form, opts, workers),
                    }
                }
                _ => {
                    return Err(fail(
                        MALFORMED,
                        "give exactly one of a params file or --corpus",
                    ))
                }
            };
            match bundle {
                Ok(b) => Ok(report_bundle(&b)),
                Err(e @ Error::Precondition(_)) => Err(fail(CERTIFY_FAIL, e)),
                Err(e) => Err(fail(MALFORMED, e)),
            }
        }
        Cmd::Verify { bundle } => {
            let text = fs::read_to_string(&bundle)
                .map_err(|e| fail(MALFORMED, format!("{}: {e}", bundle.display())))?;
            let b: CertificateBundle = serde_json::from_str(&text)
                .map_err(|e| fail(MALFORMED, format!("malformed bundle: {e}")))?;
            match verify_bundle(&b) {
                Ok(()) => {
                    emit(&json!({"pass": true, "name": b.name}));
                    Ok(ExitCode::from(OK))
                }
                Err(f) => {
                    emit(&json!({"pass": false, "step": f.step, "reason": f.reason}));
                    Err(fail(REPLAY_FAIL, f))
                }
            }
        }
        Cmd::Corpus {
            name,
            certify,
            p_max,
            height,
        } => {
            let entries = match name {
                Some(n) => vec![corpus_entry(&n).map_err(|e| fail(MALFORMED, e))?],
                None => corpus().map_err(|e| fail(MALFORMED, e))?,
            };
            if !certify {
                entries.iter().for_each(emit);
                return Ok(ExitCode::from(OK));
            }
            let opts = CertifyOptions {
                p_max,
                height,
                ..CertifyOptions::default()
            };
            let mut code = ExitCode::from(OK);
            for e in entries {
                let b = match &e.params {
                    Some(p) => certify_params(p, opts, workers),
                    None => certify_form(e.name, &e.form, opts, workers),
                }
                .map_err(|err| fail(CERTIFY_FAIL, format!("{}: {err}", e.name)))?;
                if report_bundle(&b) != ExitCode::from(OK) {
                    code = ExitCode::from(CERTIFY_FAIL);
                }
            }
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { MALFORMED } else { OK });
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
