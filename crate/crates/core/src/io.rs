//! JSON documents for generators, plans, states and cost reports.
//!
//! Complex scalars are `[re, im]` pairs and matrices are arrays of rows.
//! Emission is canonical: keys sorted, no whitespace, floats printed with
//! 17 significant digits, so parse then emit reproduces the input bytes.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::decompose::{ConjugationPlan, Decomposition, UniversalParams};
use crate::error::{Error, Result};
use crate::lindblad::{from_diagonal, DiagonalGenerator, GksGenerator, LindbladTerm};
use crate::numerics::{ComplexMatrix, C64};
use crate::sud::GellMannBasis;
use crate::trotter::CostReport;

pub fn parse(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

/// Canonical text of `v`.
pub fn to_canonical_string(v: &Value) -> Result<String> {
    let mut out = String::new();
    write_value(v, &mut out)?;
    Ok(out)
}

fn write_value(v: &Value, out: &mut String) -> Result<()> {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_u64() {
                write!(out, "{i}").unwrap();
            } else if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else {
                let x = n.as_f64().ok_or_else(|| Error::Format(format!("unrepresentable number {n}")))?;
                write!(out, "{x:.16e}").unwrap();
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s)?),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out)?;
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k)?);
                out.push(':');
                write_value(&map[k], out)?;
            }
            out.push('}');
        }
    }
    Ok(())
}

/// A float value; non-finite numbers are rejected.
pub fn real(x: f64) -> Result<Value> {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or(Error::NonFinite)
}

pub fn reals(xs: &[f64]) -> Result<Value> {
    Ok(Value::Array(xs.iter().map(|&x| real(x)).collect::<Result<_>>()?))
}

pub fn complex(z: C64) -> Result<Value> {
    Ok(Value::Array(vec![real(z.re)?, real(z.im)?]))
}

pub fn complex_vector(v: &[C64]) -> Result<Value> {
    Ok(Value::Array(v.iter().map(|&z| complex(z)).collect::<Result<_>>()?))
}

pub fn matrix(m: &ComplexMatrix) -> Result<Value> {
    Ok(Value::Array(
        (0..m.rows()).map(|i| complex_vector(m.row(i))).collect::<Result<_>>()?,
    ))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Format(format!("missing field \"{key}\"")))
}

pub fn read_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Format(format!("{what} must be a number")))
}

fn read_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Format(format!("{what} must be a non-negative integer")))
}

pub fn read_reals(v: &Value, what: &str) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| Error::Format(format!("{what} must be an array")))?
        .iter()
        .map(|x| read_f64(x, what))
        .collect()
}

pub fn read_complex(v: &Value, what: &str) -> Result<C64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(C64::new(read_f64(re, what)?, read_f64(im, what)?)),
        _ => Err(Error::Format(format!("{what} entries must be [re, im] pairs"))),
    }
}

pub fn read_matrix(v: &Value, what: &str) -> Result<ComplexMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Format(format!("{what} must be an array of rows")))?;
    let rows: Vec<Vec<C64>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Format(format!("{what} rows must be arrays")))?
                .iter()
                .map(|z| read_complex(z, what))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Format(format!("{what} must be a non-empty rectangular matrix")));
    }
    ComplexMatrix::from_rows(&rows).map_err(|e| Error::Format(format!("{what}: {e}")))
}

/// Dissipative part of a generator document.
#[derive(Debug, Clone, PartialEq)]
pub enum Dissipator {
    Gks(ComplexMatrix),
    Terms(Vec<LindbladTerm>),
}

/// Generator as written on disk, before invariant checks.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorDocument {
    pub d: usize,
    pub h: ComplexMatrix,
    pub dissipator: Dissipator,
}

impl GeneratorDocument {
    pub fn from_json(v: &Value) -> Result<Self> {
        if !v.is_object() {
            return Err(Error::Format("generator document must be an object".into()));
        }
        let d = read_usize(field(v, "d")?, "d")?;
        let h = read_matrix(field(v, "H")?, "H")?;
        if h.rows() != d || h.cols() != d {
            return Err(Error::Format(format!("H must be {d}x{d}")));
        }
        let dissipator = match (v.get("A"), v.get("terms")) {
            (Some(a), None) => Dissipator::Gks(read_matrix(a, "A")?),
            (None, Some(terms)) => Dissipator::Terms(
                terms
                    .as_array()
                    .ok_or_else(|| Error::Format("terms must be an array".into()))?
                    .iter()
                    .map(|t| {
                        Ok(LindbladTerm {
                            rate: read_f64(field(t, "gamma")?, "gamma")?,
                            operator: read_matrix(field(t, "L")?, "L")?,
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Format("exactly one of \"A\" or \"terms\" is required".into())),
        };
        Ok(Self { d, h, dissipator })
    }

    pub fn to_json(&self) -> Result<Value> {
        let mut map = Map::new();
        map.insert("d".into(), json!(self.d));
        map.insert("H".into(), matrix(&self.h)?);
        match &self.dissipator {
            Dissipator::Gks(a) => {
                map.insert("A".into(), matrix(a)?);
            }
            Dissipator::Terms(terms) => {
                let terms = terms
                    .iter()
                    .map(|t| Ok(json!({"gamma": real(t.rate)?, "L": matrix(&t.operator)?})))
                    .collect::<Result<Vec<_>>>()?;
                map.insert("terms".into(), Value::Array(terms));
            }
        }
        Ok(Value::Object(map))
    }

    pub fn from_generator(g: &GksGenerator) -> Self {
        Self {
            d: g.d(),
            h: g.hamiltonian().clone(),
            dissipator: Dissipator::Gks(g.gks_matrix().clone()),
        }
    }

    /// Checks every invariant and converts to GKS form.
    pub fn to_generator(&self) -> Result<GksGenerator> {
        match &self.dissipator {
            Dissipator::Gks(a) => GksGenerator::new(self.h.clone(), a.clone(), GellMannBasis::new(self.d)?),
            Dissipator::Terms(terms) => from_diagonal(&DiagonalGenerator::new(self.h.clone(), terms.clone())?),
        }
    }
}

pub fn read_generator(text: &str) -> Result<GeneratorDocument> {
    GeneratorDocument::from_json(&parse(text)?)
}

/// `{"d", "H", "terms": [{"lambda", "theta", "alphaR", "alphaI", "U", "residual"}]}`.
pub fn plan_to_json(dec: &Decomposition) -> Result<Value> {
    let terms = dec
        .plans
        .iter()
        .zip(&dec.residuals)
        .map(|(p, &res)| {
            Ok(json!({
                "lambda": real(p.lambda)?,
                "theta": real(p.params.theta)?,
                "alphaR": reals(&p.params.alpha_r)?,
                "alphaI": reals(&p.params.alpha_i)?,
                "U": matrix(&p.unitary)?,
                "residual": real(res)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "d": dec.hamiltonian.rows(),
        "H": matrix(&dec.hamiltonian)?,
        "terms": terms,
    }))
}

/// Hamiltonian and plans from a plan document.
pub fn plan_from_json(v: &Value) -> Result<(ComplexMatrix, Vec<ConjugationPlan>)> {
    let d = read_usize(field(v, "d")?, "d")?;
    let h = read_matrix(field(v, "H")?, "H")?;
    if h.rows() != d || h.cols() != d {
        return Err(Error::Format(format!("H must be {d}x{d}")));
    }
    let plans = field(v, "terms")?
        .as_array()
        .ok_or_else(|| Error::Format("terms must be an array".into()))?
        .iter()
        .map(|t| {
            let unitary = read_matrix(field(t, "U")?, "U")?;
            if unitary.rows() != d || unitary.cols() != d {
                return Err(Error::Format(format!("U must be {d}x{d}")));
            }
            Ok(ConjugationPlan {
                lambda: read_f64(field(t, "lambda")?, "lambda")?,
                unitary,
                params: UniversalParams {
                    d,
                    theta: read_f64(field(t, "theta")?, "theta")?,
                    alpha_r: read_reals(field(t, "alphaR")?, "alphaR")?,
                    alpha_i: read_reals(field(t, "alphaI")?, "alphaI")?,
                },
            })
        })
        .collect::<Result<_>>()?;
    Ok((h, plans))
}

pub fn cost_to_json(r: &CostReport) -> Result<Value> {
    Ok(json!({
        "k": r.k,
        "r": real(r.r)?,
        "n_reps": r.n_reps,
        "N_exp_actual": r.n_exp_actual,
        "N_exp_bound_res": real(r.n_exp_bound_res)?,
        "N_exp_bound_closed_form": real(r.n_exp_bound_closed_form)?,
        "negative_segments": r.negative_segments,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Trotter,
    Oracle,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trotter" => Ok(Mode::Trotter),
            "oracle" => Ok(Mode::Oracle),
            _ => Err(Error::Format(format!("mode must be \"trotter\" or \"oracle\", got \"{s}\""))),
        }
    }
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Trotter => "trotter",
            Mode::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRequest {
    pub generator: GeneratorDocument,
    pub rho0: ComplexMatrix,
    pub t: f64,
    pub epsilon: f64,
    pub mode: Mode,
}

impl SimulationRequest {
    pub fn from_json(v: &Value) -> Result<Self> {
        let mode = match v.get("mode") {
            None => Mode::Trotter,
            Some(m) => m
                .as_str()
                .ok_or_else(|| Error::Format("mode must be a string".into()))?
                .parse()?,
        };
        Ok(Self {
            generator: GeneratorDocument::from_json(field(v, "generator")?)?,
            rho0: read_matrix(field(v, "rho0")?, "rho0")?,
            t: read_f64(field(v, "t")?, "t")?,
            epsilon: read_f64(field(v, "epsilon")?, "epsilon")?,
            mode,
        })
    }

    pub fn to_json(&self) -> Result<Value> {
        Ok(json!({
            "generator": self.generator.to_json()?,
            "rho0": matrix(&self.rho0)?,
            "t": real(self.t)?,
            "epsilon": real(self.epsilon)?,
            "mode": self.mode.as_str(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose_generator;
    use crate::lambda_atom::LambdaAtom;
    use crate::sample;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn roundtrip(v: &Value) -> String {
        let a = to_canonical_string(v).unwrap();
        let b = to_canonical_string(&parse(&a).unwrap()).unwrap();
        assert_eq!(a, b);
        a
    }

    #[test]
    fn canonical_layout() {
        let v = json!({"b": [1.5, -2], "a": {"z": true, "y": null}, "c": "x"});
        assert_eq!(
            roundtrip(&v),
            r#"{"a":{"y":null,"z":true},"b":[1.5000000000000000e0,-2],"c":"x"}"#
        );
    }

    #[test]
    fn seventeen_digits_survive() {
        let x = 0.1 + 0.2;
        let s = to_canonical_string(&real(x).unwrap()).unwrap();
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert!(real(f64::NAN).is_err());
    }

    #[test]
    fn generator_documents_roundtrip() {
        let atom = LambdaAtom::default();
        let d = atom.diagonal_generator().unwrap();
        let doc = GeneratorDocument {
            d: 3,
            h: d.hamiltonian().clone(),
            dissipator: Dissipator::Terms(d.terms().to_vec()),
        };
        let text = roundtrip(&doc.to_json().unwrap());
        let back = read_generator(&text).unwrap();
        assert_eq!(back, doc);
        let g = back.to_generator().unwrap();
        assert!(g.liouvillian().distance(&atom.generator().unwrap().liouvillian()) < 1e-15);

        let gks = GeneratorDocument::from_generator(&g);
        assert_eq!(read_generator(&roundtrip(&gks.to_json().unwrap())).unwrap(), gks);
    }

    #[test]
    fn plan_documents_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = sample::gks_generator(&mut rng, 3, 3, 1.0);
        let dec = decompose_generator(&g).unwrap();
        let text = roundtrip(&plan_to_json(&dec).unwrap());
        let (h, plans) = plan_from_json(&parse(&text).unwrap()).unwrap();
        assert_eq!(&h, g.hamiltonian());
        assert_eq!(plans, dec.plans);
    }

    #[test]
    fn malformed_documents() {
        for text in [
            "{",
            r#"{"d": 2, "H": [[[0,0],[0,0]],[[0,0],[0,0]]]}"#,
            r#"{"d": 2, "H": [[[0,0]],[[0,0],[0,0]]], "A": []}"#,
            r#"{"d": 2, "H": [[[0,0],[0,0]],[[0,0],[0,0]]], "terms": [{"gamma": "x"}]}"#,
        ] {
            let e = read_generator(text).unwrap_err();
            assert!(e.is_input_error(), "{text}: {e}");
        }
    }

    #[test]
    fn invariant_breach_is_domain_error() {
        let mut h = ComplexMatrix::zeros(2, 2);
        h[(0, 1)] = C64::new(1.0, 0.0);
        h[(1, 0)] = C64::new(1.0, 1e-3);
        let doc = GeneratorDocument {
            d: 2,
            h,
            dissipator: Dissipator::Gks(ComplexMatrix::zeros(3, 3)),
        };
        let e = doc.to_generator().unwrap_err();
        assert!(!e.is_input_error());
    }

    #[test]
    fn cost_keys() {
        let r = CostReport {
            k: 2,
            r: 1.5,
            n_reps: 3,
            n_exp_actual: 31,
            n_exp_bound_res: 40.0,
            n_exp_bound_closed_form: 50.0,
            negative_segments: true,
        };
        assert_eq!(
            roundtrip(&cost_to_json(&r).unwrap()),
            "{\"N_exp_actual\":31,\"N_exp_bound_closed_form\":5.0000000000000000e1,\
             \"N_exp_bound_res\":4.0000000000000000e1,\"k\":2,\"n_reps\":3,\
             \"negative_segments\":true,\"r\":1.5000000000000000e0}"
        );
    }

    proptest! {
        #[test]
        fn floats_roundtrip_bitwise(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = to_canonical_string(&real(x).unwrap()).unwrap();
            let back = parse(&s).unwrap().as_f64().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
            prop_assert_eq!(to_canonical_string(&parse(&s).unwrap()).unwrap(), s);
        }
    }
}
