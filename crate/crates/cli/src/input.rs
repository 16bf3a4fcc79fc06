//! Loading algebras, r-matrices, sample specs and numeric arguments.

use std::path::Path;

use hessalg::algcore::{algebra_from_json, algebra_to_json, Algebra};
use hessalg::chartgeom::SampleSpec;
use hessalg::hessdual::example_algebra;
use hessalg::phasespace::{rmatrix_from_json, RMatrix};
use hessalg::{parse_rational, Rational, Scalar};

use crate::bundle::InputDigest;
use crate::CliError;

fn read(path: &str) -> Result<Vec<u8>, CliError> {
    std::fs::read(Path::new(path)).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

/// `example:N` names a built-in algebra; anything else is a JSON file.
pub fn algebra(spec: &str) -> Result<(Algebra<Rational>, InputDigest), CliError> {
    if let Some(k) = spec.strip_prefix("example:") {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::Input(format!("bad example index in {spec:?}")))?;
        let a = example_algebra::<Rational>(k)
            .ok_or_else(|| CliError::Input(format!("no built-in example {k} (expected 1..=6)")))?;
        let canonical = serde_json::to_vec(&algebra_to_json(&a)).expect("algebra serializes");
        return Ok((a, InputDigest::of(spec, &canonical)));
    }
    let bytes = read(spec)?;
    let a = algebra_from_json(&bytes).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    Ok((a, InputDigest::of(spec, &bytes)))
}

pub fn rmatrix(path: &str) -> Result<(RMatrix<Rational>, InputDigest), CliError> {
    let bytes = read(path)?;
    let r = rmatrix_from_json(&bytes).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    Ok((r, InputDigest::of(path, &bytes)))
}

pub fn samples(path: &str) -> Result<(SampleSpec, InputDigest), CliError> {
    let bytes = read(path)?;
    let spec: SampleSpec =
        serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    Ok((spec, InputDigest::of(path, &bytes)))
}

/// Parses `a,b,c` exactly; decimals and fractions are both accepted.
pub fn vector(text: &str, what: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| CliError::Input(format!("{what}: {e}"))))
        .collect()
}

pub fn vector_in<T: Scalar>(text: &str, what: &str, dim: usize) -> Result<Vec<T>, CliError> {
    let v = vector(text, what)?;
    if v.len() != dim {
        return Err(CliError::Input(format!(
            "{what} has {} components, the algebra has dimension {dim}",
            v.len()
        )));
    }
    Ok(v.iter().map(convert).collect())
}

/// A rational as an element of the working field.
pub fn convert<T: Scalar>(q: &Rational) -> T {
    if let Some(t) = (q as &dyn std::any::Any).downcast_ref::<T>() {
        t.clone()
    } else {
        T::from_f64(q.to_f64())
    }
}
