//! Input parsing: either a raw (A, B, C) triple of matrix JSON objects or a
//! named model spec.

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::Deserialize;

use krein_riccati::hamiltonian::{assemble, HamiltonianMatrix};
use krein_riccati::json::MatrixJson;
use krein_riccati::matrix::ComplexMatrix;
use krein_riccati::models::{
    gen_cubic_modal, gen_example_diag, gen_fourier_transport, FourierCoeffs, ModalModel,
};
use krein_riccati::rng::DetRng;
use krein_riccati::tol::Tolerances;

/// Parsed problem input.
pub enum ProblemInput {
    Matrices { a: ComplexMatrix, b: ComplexMatrix, c: ComplexMatrix },
    Model(ModelSpec),
}

/// Named model specs consumed from JSON.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "model")]
pub enum ModelSpec {
    #[serde(rename = "diag8_1")]
    Diag { kmax: usize },
    #[serde(rename = "cubic8_2")]
    Cubic {
        kmax: usize,
        #[serde(default = "default_c1")]
        c1: f64,
    },
    #[serde(rename = "fourier8_3")]
    Fourier {
        #[serde(rename = "N")]
        n: i64,
        /// Coefficient rows [m, re, im].
        b: Vec<(i64, f64, f64)>,
        c: Vec<(i64, f64, f64)>,
    },
    #[serde(rename = "random")]
    Random {
        n: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_gamma")]
        gamma: f64,
    },
}

fn default_c1() -> f64 {
    1.0
}

fn default_gamma() -> f64 {
    1.0
}

#[derive(Deserialize)]
struct MatricesJson {
    #[serde(rename = "A")]
    a: MatrixJson,
    #[serde(rename = "B")]
    b: MatrixJson,
    #[serde(rename = "C")]
    c: MatrixJson,
}

pub fn parse_input(text: &str) -> Result<ProblemInput> {
    let value: serde_json::Value =
        serde_json::from_str(text).context("input is not valid JSON")?;
    if value.get("model").is_some() {
        let spec: ModelSpec =
            serde_json::from_value(value).context("invalid model spec")?;
        return Ok(ProblemInput::Model(spec));
    }
    if value.get("A").is_some() {
        let m: MatricesJson =
            serde_json::from_value(value).context("invalid matrix triple")?;
        return Ok(ProblemInput::Matrices {
            a: ComplexMatrix::try_from(&m.a).context("matrix A")?,
            b: ComplexMatrix::try_from(&m.b).context("matrix B")?,
            c: ComplexMatrix::try_from(&m.c).context("matrix C")?,
        });
    }
    bail!("input must contain either a \"model\" spec or matrices \"A\", \"B\", \"C\"")
}

pub fn coeffs_from_rows(rows: &[(i64, f64, f64)]) -> FourierCoeffs {
    rows.iter().map(|&(m, re, im)| (m, Complex64::new(re, im))).collect()
}

/// Modal family behind a spec, when it defines one.
pub fn build_modal(spec: &ModelSpec, tols: &Tolerances) -> Result<Option<ModalModel>> {
    Ok(match spec {
        ModelSpec::Diag { kmax } => Some(gen_example_diag(*kmax, tols)?),
        ModelSpec::Cubic { kmax, c1 } => Some(gen_cubic_modal(*kmax, *c1, tols)?),
        _ => None,
    })
}

/// Single assembled Hamiltonian for any input (modal families are summed).
pub fn build_hamiltonian(input: &ProblemInput, tols: &Tolerances) -> Result<HamiltonianMatrix> {
    match input {
        ProblemInput::Matrices { a, b, c } => Ok(assemble(a, b, c, tols)?),
        ProblemInput::Model(spec) => match spec {
            ModelSpec::Diag { .. } | ModelSpec::Cubic { .. } => {
                let model = build_modal(spec, tols)?.expect("modal spec");
                Ok(model.direct_sum(tols)?)
            }
            ModelSpec::Fourier { n, b, c } => {
                let model = gen_fourier_transport(
                    *n,
                    &coeffs_from_rows(b),
                    &coeffs_from_rows(c),
                    tols,
                )?;
                Ok(model.h)
            }
            ModelSpec::Random { n, seed, gamma } => {
                let mut rng = DetRng::new(*seed);
                let a = rng.matrix(*n, *n);
                let b = rng.psd_plus(*n, *gamma);
                let c = rng.psd_plus(*n, *gamma);
                Ok(assemble(&a, &b, &c, tols)?)
            }
        },
    }
}
