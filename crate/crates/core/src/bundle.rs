//! Certificate bundles: every piece of local and global evidence for one form
//! in a single JSON document, and an offline replay of that document.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclotomic::minimal_polynomial;
use crate::error::{Error, Result};
use crate::exactmath::primes_below;
use crate::exactmath::MultiPoly;
use crate::forms::{build_form_unchecked, check_conditions, FormParams};
use crate::globalcheck::{
    check_roots, height_search, obstruction_transcript, replay_transcript, ContradictionRule,
    GlobalReport,
};
use crate::localsolve::{
    local_sweep_built, local_sweep_form, real_point, real_point_residual, sweep_primes,
    verify_certificate, RealPoint, SweepReport, DEFAULT_K_MAX,
};

pub const REAL_TOLERANCE: f64 = 1e-9;

/// False for NaN residuals as well as large ones.
fn residual_ok(r: f64) -> bool {
    r < REAL_TOLERANCE
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub p_max: u64,
    pub height: u64,
    pub q_bound: u64,
    pub k_max: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            p_max: 200,
            height: 10,
            q_bound: 1000,
            k_max: DEFAULT_K_MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub variables: Vec<String>,
    pub text: String,
    pub sha256: String,
}

impl FormRecord {
    pub fn new(f: &MultiPoly) -> Self {
        let text = f.to_text();
        FormRecord {
            variables: f.vars().to_vec(),
            sha256: text_hash(&text),
            text,
        }
    }

    pub fn parse(&self) -> Result<MultiPoly> {
        MultiPoly::parse(&self.text, self.variables.clone())
    }
}

pub fn text_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub name: String,
    pub params: Option<FormParams>,
    pub options: CertifyOptions,
    pub form: FormRecord,
    pub local: SweepReport,
    pub real_point: Option<RealPoint>,
    pub real_point_error: Option<String>,
    pub global: GlobalReport,
    pub tool_version: String,
    pub timestamp: u64,
}

impl CertificateBundle {
    /// Components that did not certify, in pipeline order.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(f) = self.local.failures.first() {
            out.push(format!("local (p = {}: {})", f.p, f.reason));
        }
        match &self.real_point {
            None => out.push(format!(
                "real_point ({})",
                self.real_point_error.as_deref().unwrap_or("missing")
            )),
            Some(rp) if !residual_ok(rp.residual) => {
                out.push(format!("real_point (residual {})", rp.residual))
            }
            Some(_) => {}
        }
        if !self.global.roots_found.is_empty() {
            out.push(format!(
                "height_search ({} roots)",
                self.global.roots_found.len()
            ));
        }
        if let Some(t) = &self.global.transcript {
            if !t.pass {
                let id = t
                    .steps
                    .iter()
                    .find(|s| !s.pass)
                    .map_or("?", |s| s.id.as_str());
                out.push(format!("transcript ({id})"));
            }
        }
        out
    }

    pub fn is_certified(&self) -> bool {
        self.failures().is_empty()
    }

    /// JSON with the timestamp removed, for comparing runs.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("bundle serialises");
        v.as_object_mut().expect("object").remove("timestamp");
        serde_json::to_string(&v).expect("value serialises")
    }
}

fn now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn assemble(
    name: &str,
    params: Option<FormParams>,
    form: &MultiPoly,
    opts: CertifyOptions,
) -> Result<CertificateBundle> {
    let (local, transcript) = match &params {
        Some(p) => {
            let basis = minimal_polynomial(p.n_prime, p.variant.theta())?;
            let local = local_sweep_built(p, form, opts.p_max);
            let transcript = if ContradictionRule::for_variant(p.variant).is_some() {
                Some(obstruction_transcript(p, &basis, opts.q_bound)?)
            } else {
                None
            };
            (local, transcript)
        }
        None => (
            local_sweep_form(form, &primes_below(opts.p_max + 1), opts.k_max),
            None,
        ),
    };
    let (real_point, real_point_error) = match real_point(form) {
        Ok(rp) => (Some(rp), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let search = height_search(form, opts.height);
    Ok(CertificateBundle {
        name: name.into(),
        params,
        options: opts,
        form: FormRecord::new(form),
        local,
        real_point,
        real_point_error,
        global: GlobalReport::new(search, transcript),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        timestamp: now(),
    })
}

fn with_workers<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

/// Certify a family member. Parameters must pass their hypotheses.
pub fn certify_params(
    params: &FormParams,
    opts: CertifyOptions,
    workers: Option<usize>,
) -> Result<CertificateBundle> {
    let report = check_conditions(params);
    if !report.pass {
        let failed: Vec<_> = report.failures().map(|e| e.id.clone()).collect();
        return Err(Error::Precondition(format!(
            "conditions failed: {}",
            failed.join(", ")
        )));
    }
    let basis = minimal_polynomial(params.n_prime, params.variant.theta())?;
    let form = build_form_unchecked(params, &basis)?.form;
    let name = format!(
        "{:?}(n={}, N={}, alpha0={})",
        params.variant,
        params.n,
        params.n_prime,
        params.alpha0()
    );
    with_workers(workers, || {
        assemble(&name, Some(params.clone()), &form, opts)
    })?
}

/// Certify an arbitrary form (no transcript).
pub fn certify_form(
    name: &str,
    form: &MultiPoly,
    opts: CertifyOptions,
    workers: Option<usize>,
) -> Result<CertificateBundle> {
    with_workers(workers, || assemble(name, None, form, opts))?
}

/// A failed replay: the component and what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayFailure {
    pub step: String,
    pub reason: String,
}

impl std::fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.step, self.reason)
    }
}

fn fail(step: impl Into<String>, reason: impl Into<String>) -> ReplayFailure {
    ReplayFailure {
        step: step.into(),
        reason: reason.into(),
    }
}

/// Replay a bundle without repeating any search.
pub fn verify_bundle(b: &CertificateBundle) -> std::result::Result<(), ReplayFailure> {
    if text_hash(&b.form.text) != b.form.sha256 {
        return Err(fail("form", "hash mismatch"));
    }
    let form = b.form.parse().map_err(|e| fail("form", e.to_string()))?;
    if form.to_text() != b.form.text {
        return Err(fail("form", "text is not canonical"));
    }

    let mut expected_primes = primes_below(b.options.p_max + 1);
    if let Some(p) = &b.params {
        p.validate().map_err(|e| fail("params", e.to_string()))?;
        let basis = minimal_polynomial(p.n_prime, p.variant.theta())
            .map_err(|e| fail("params", e.to_string()))?;
        let rebuilt = build_form_unchecked(p, &basis).map_err(|e| fail("params", e.to_string()))?;
        if FormRecord::new(&rebuilt.form).sha256 != b.form.sha256 {
            return Err(fail(
                "form",
                "hash mismatch with the form built from params",
            ));
        }
        expected_primes = sweep_primes(p, b.options.p_max);
        match (
            &b.global.transcript,
            ContradictionRule::for_variant(p.variant),
        ) {
            (Some(t), Some(_)) => replay_transcript(t, p, &basis)
                .map_err(|(id, why)| fail(format!("transcript.{id}"), why))?,
            (None, Some(_)) => return Err(fail("transcript", "missing")),
            _ => {}
        }
    }

    if let Some(f) = b.local.failures.first() {
        return Err(fail(
            format!("local.p{}", f.p),
            format!("recorded failure: {}", f.reason),
        ));
    }
    for c in &b.local.certificates {
        verify_certificate(&form, c).map_err(|e| fail(format!("local.p{}", c.p), e))?;
    }
    let got: Vec<u64> = b.local.certificates.iter().map(|c| c.p).collect();
    if got != expected_primes {
        return Err(fail(
            "local",
            "certificates do not cover the sweep's primes",
        ));
    }

    let rp = b.real_point.as_ref().ok_or_else(|| {
        fail(
            "real_point",
            b.real_point_error
                .clone()
                .unwrap_or_else(|| "missing".into()),
        )
    })?;
    let r = real_point_residual(&form, rp).map_err(|e| fail("real_point", e.to_string()))?;
    if !residual_ok(r) {
        return Err(fail("real_point", format!("residual {r} above tolerance")));
    }

    if let Some(bad) = check_roots(&form, &b.global.roots_found) {
        return Err(fail("global", format!("{bad:?} is not a primitive zero")));
    }
    if !b.global.roots_found.is_empty() {
        return Err(fail("global", "the height search found rational zeros"));
    }
    Ok(())
}
