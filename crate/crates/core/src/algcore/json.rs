//! Algebra JSON:
//!
//! ```json
//! {"dim": 3, "basis": ["e1","e2","e3"], "symmetrize": true,
//!  "products": [{"i": 1, "j": 1, "k": 2, "c": 1}, {"i": 1, "j": 2, "k": 3, "c": "1/2"}]}
//! ```
//!
//! Indices are 1-based. Omitted pairs are zero products. Coefficients are
//! numbers or decimal/fraction strings and are parsed exactly.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

use super::structure::{Algebra, StructureTensor};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrize: Option<bool>,
    pub products: Vec<ProductEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Value,
}

/// Parses a JSON number or string coefficient exactly.
pub fn coefficient(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Input(format!("coefficient must be a number or string, got {other}"))),
    }
}

pub fn algebra_from_json(bytes: &[u8]) -> Result<Algebra<Rational>> {
    let spec: AlgebraJson = serde_json::from_slice(bytes)?;
    spec.build()
}

impl AlgebraJson {
    pub fn build(&self) -> Result<Algebra<Rational>> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Input("dim must be positive".into()));
        }
        let symmetrize = self.symmetrize.unwrap_or(false);
        let mut st = StructureTensor::<Rational>::zeros(n);
        let mut seen = vec![false; n * n * n];
        let mut put = |i: usize, j: usize, k: usize, c: &Rational| -> Result<()> {
            let slot = (i * n + j) * n + k;
            if seen[slot] {
                if st.coeff(i, j, k) != c {
                    return Err(Error::Input(format!(
                        "conflicting coefficients for (i={}, j={}, k={})",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
                return Ok(());
            }
            seen[slot] = true;
            st.set(i, j, k, c.clone());
            Ok(())
        };
        for p in &self.products {
            for (name, idx) in [("i", p.i), ("j", p.j), ("k", p.k)] {
                if idx == 0 || idx > n {
                    return Err(Error::Input(format!("index {name}={idx} outside 1..={n}")));
                }
            }
            let c = coefficient(&p.c)?;
            let (i, j, k) = (p.i - 1, p.j - 1, p.k - 1);
            put(i, j, k, &c)?;
            if symmetrize && i != j {
                put(j, i, k, &c)?;
            }
        }
        let algebra = Algebra::new(st);
        match &self.basis {
            Some(names) => algebra.with_names(names.clone()),
            None => Ok(algebra),
        }
    }
}

/// Serializes an algebra with exact fraction strings for non-integers.
pub fn algebra_to_json(a: &Algebra<Rational>) -> AlgebraJson {
    let n = a.dim();
    let st = a.structure();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = st.coeff(i, j, k);
                if *c != Rational::from_integer(0.into()) {
                    let v = if c.is_integer() {
                        c.to_integer()
                            .to_string()
                            .parse::<i64>()
                            .map(Value::from)
                            .unwrap_or_else(|_| Value::String(format_rational(c)))
                    } else {
                        Value::String(format_rational(c))
                    };
                    products.push(ProductEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        c: v,
                    });
                }
            }
        }
    }
    AlgebraJson {
        dim: n,
        basis: a.basis_names().map(<[String]>::to_vec),
        symmetrize: None,
        products,
    }
}
