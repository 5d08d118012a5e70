//! Fixed regression forms.

use serde::Serialize;

use crate::cyclotomic::{minimal_polynomial, norm_form, ThetaVariant};
use crate::error::{Error, Result};
use crate::exactmath::{var_names, MultiPoly};
use crate::forms::{build_form, search_params, FormParams, Variant};

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub params: Option<FormParams>,
    #[serde(serialize_with = "text")]
    pub form: MultiPoly,
}

fn text<S: serde::Serializer>(f: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_text())
}

pub const NAMES: [&str; 5] = [
    "selmer",
    "swinnerton_dyer",
    "cubic_n7",
    "t1_n1",
    "t1_n2",
];

/// `3x^3 + 4y^3 + 5z^3`.
pub fn selmer() -> MultiPoly {
    MultiPoly::parse("+3 x^3 | +4 y^3 | +5 z^3", var_names(&["x", "y", "z"])).expect("fixed text")
}

/// `t(t + x)(2t + x) - Norm(x + theta y1 + theta^2 y2)` over the cubic
/// subfield of the 7th cyclotomic field.
pub fn swinnerton_dyer() -> Result<MultiPoly> {
    let vars = var_names(&["t", "x", "y1", "y2"]);
    let basis = minimal_polynomial(7, ThetaVariant::RealTheta)?;
    let norm = norm_form(&basis, 2)?.embed(&vars)?;
    let lin = |a: i64| MultiPoly::parse(&format!("+{a} t^1 | +1 x^1"), vars.clone());
    let t = MultiPoly::var(vars.clone(), "t")?;
    Ok(&(&(&t * &lin(1)?) * &lin(2)?) - &norm)
}

/// The G1 member `t(2t + x)(3t + x) - Norm`: `n = 1`, `alpha0 = 2`, `beta = 0`.
pub fn cubic_n7_params() -> FormParams {
    FormParams::new(Variant::G1, 1, 2, vec![], vec![], 0, 2).expect("fixed parameters")
}

pub fn t1_n1_params() -> FormParams {
    FormParams::new(Variant::T1, 1, 2, vec![], vec![], 1, 2).expect("fixed parameters")
}

pub fn t1_n2_params() -> Result<FormParams> {
    search_params(11, Variant::T1, 1, 1, 2)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoAdmissibleResidue("N = 11".into()))
}

fn family(
    name: &'static str,
    description: &'static str,
    params: FormParams,
) -> Result<CorpusEntry> {
    let basis = minimal_polynomial(params.n_prime, params.variant.theta())?;
    let form = build_form(&params, &basis)?.form;
    Ok(CorpusEntry {
        name,
        description,
        params: Some(params),
        form,
    })
}

pub fn corpus_entry(name: &str) -> Result<CorpusEntry> {
    match name {
        "selmer" => Ok(CorpusEntry {
            name: "selmer",
            description: "diagonal cubic 3x^3 + 4y^3 + 5z^3",
            params: None,
            form: selmer(),
        }),
        "swinnerton_dyer" => Ok(CorpusEntry {
            name: "swinnerton_dyer",
            description: "t(t+x)(2t+x) minus the cubic norm form, N = 7",
            params: None,
            form: swinnerton_dyer()?,
        }),
        "cubic_n7" => family(
            "cubic_n7",
            "t(2t+x)(3t+x) minus the cubic norm form, N = 7",
            cubic_n7_params(),
        ),
        "t1_n1" => family(
            "t1_n1",
            "cubic family member, N = 7, alpha0 = 2",
            t1_n1_params(),
        ),
        "t1_n2" => family("t1_n2", "quintic family member, N = 11", t1_n2_params()?),
        other => Err(Error::Invalid(format!(
            "unknown corpus entry '{other}' (known: {})",
            NAMES.join(", ")
        ))),
    }
}

pub fn corpus() -> Result<Vec<CorpusEntry>> {
    NAMES.iter().map(|n| corpus_entry(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_build() {
        let c = corpus().unwrap();
        assert_eq!(c.len(), NAMES.len());
        for e in &c {
            assert!(e.form.is_homogeneous(), "{}", e.name);
            assert_eq!(
                e.form.total_degree(),
                Some(if e.name == "t1_n2" { 5 } else { 3 })
            );
        }
    }

    #[test]
    fn cubic_n7_text() {
        let e = corpus_entry("cubic_n7").unwrap();
        assert!(e
            .form
            .to_text()
            .starts_with("+6 t^3 | +5 t^2 x^1 | +1 t^1 x^2"));
        let sd = swinnerton_dyer().unwrap();
        assert!(sd.to_text().starts_with("+2 t^3 | +3 t^2 x^1 | +1 t^1 x^2"));
    }
}
