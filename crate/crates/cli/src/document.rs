//! The JSON input document and its resolution into core objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use dgsymp_core::cdga::{CdgaPresentation, GcAlgebra, Generator, Point, Poly, RingMap};
use dgsymp_core::complexes::FreeComplex;
use dgsymp_core::derham::{ClosedForm, DeRhamComplex};
use dgsymp_core::kernel::{GradedMatrix, Scalar};
use dgsymp_core::moduli::CoalgebroidCandidate;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::poly::{parse_poly, parse_scalar, PolyError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub monomial: Vec<String>,
}

/// A closed form given by its terms; terms of weight above `weight` form the tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub name: String,
    pub weight: u32,
    pub degree: i32,
    pub terms: Vec<TermSpec>,
}

/// Values of degree-0 generators; integers or rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

pub type PointSpec = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
    /// For a base-change target: images of the base generators.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebroidSpec {
    /// Basis of `F` with degrees in `F`; the symbols of `F[-1]` sit one degree higher.
    pub module: Vec<GeneratorSpec>,
    /// `d_F(f)` written as `Σ f_j * c_j`, symbol first.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub module_differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub epsilon: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i32>,
    #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<u32>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub max_polydeg: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<FormSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebroid: Option<CoalgebroidSpec>,
    #[serde(default)]
    pub params: Params,
}

pub const DEFAULT_MAX_WEIGHT: u32 = 4;
pub const DEFAULT_MAX_POLYDEG: u32 = 6;

fn poly_error(field: String, e: PolyError) -> CliError {
    match e {
        PolyError::Undeclared(s) => CliError::UndeclaredSymbol(format!("{s} (in {field})")),
        PolyError::Syntax(msg) => CliError::Parse { field, message: msg },
    }
}

fn presentation(gens: &[GeneratorSpec], differential: &BTreeMap<String, String>, what: &str) -> Result<CdgaPresentation, CliError> {
    let generators: Vec<Generator> = gens.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect();
    let alg = GcAlgebra::new(generators.clone());
    for g in &generators {
        if generators.iter().filter(|h| h.name == g.name).count() > 1 {
            return Err(CliError::Parse { field: format!("{what}.generators"), message: format!("{} declared twice", g.name) });
        }
    }
    for key in differential.keys() {
        if alg.index_of(key).is_none() {
            return Err(CliError::UndeclaredSymbol(format!("{key} (in {what}.differential)")));
        }
    }
    let mut images = Vec::with_capacity(generators.len());
    for g in &generators {
        images.push(match differential.get(&g.name) {
            Some(s) => parse_poly(s, &alg).map_err(|e| poly_error(format!("{what}.differential.{}", g.name), e))?,
            None => Poly::zero(),
        });
    }
    CdgaPresentation::new(generators, images).map_err(CliError::Validation)
}

fn scalar(v: &Value, field: &str) -> Result<Scalar, CliError> {
    match v {
        Value::Int(n) => Ok(Scalar::from_integer((*n).into())),
        Value::Text(s) => parse_scalar(s).map_err(|e| poly_error(field.to_string(), e)),
    }
}

pub fn point(ring: &CdgaPresentation, spec: &PointSpec, field: &str) -> Result<Point, CliError> {
    let mut values = Vec::new();
    for (name, v) in spec {
        values.push((name.as_str(), scalar(v, &format!("{field}.{name}"))?));
    }
    ring.point(&values).map_err(|e| match e {
        dgsymp_core::Error::UndeclaredSymbol(s) => CliError::UndeclaredSymbol(format!("{s} (in {field})")),
        other => CliError::Validation(other),
    })
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse { field: format!("line {}, column {}", e.line(), e.column()), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn presentation(&self) -> Result<Arc<CdgaPresentation>, CliError> {
        presentation(&self.generators, &self.differential, "").map(Arc::new)
    }

    /// The test ring of the point; the ground field when absent.
    pub fn base(&self) -> Result<Arc<CdgaPresentation>, CliError> {
        match &self.base {
            Some(b) => presentation(&b.generators, &b.differential, "base").map(Arc::new),
            None => Ok(Arc::new(CdgaPresentation::ground())),
        }
    }

    /// The base-change target and the map from the base.
    pub fn target(&self, base: &CdgaPresentation) -> Result<(Arc<CdgaPresentation>, RingMap), CliError> {
        let spec = self.target.as_ref().ok_or_else(|| CliError::Parse { field: "target".into(), message: "missing".into() })?;
        let ring = presentation(&spec.generators, &spec.differential, "target")?;
        for key in spec.map.keys() {
            if base.algebra().index_of(key).is_none() {
                return Err(CliError::UndeclaredSymbol(format!("{key} (in target.map)")));
            }
        }
        let mut images = Vec::new();
        for g in base.generators() {
            images.push(match spec.map.get(&g.name) {
                Some(s) => parse_poly(s, ring.algebra()).map_err(|e| poly_error(format!("target.map.{}", g.name), e))?,
                None => Poly::zero(),
            });
        }
        let map = RingMap::new(base, &ring, images).map_err(CliError::Validation)?;
        Ok((Arc::new(ring), map))
    }

    pub fn points(&self, ring: &CdgaPresentation) -> Result<Vec<Point>, CliError> {
        self.params.points.iter().enumerate().map(|(k, p)| point(ring, p, &format!("params.points[{k}]"))).collect()
    }

    pub fn form_spec(&self, name: Option<&str>) -> Result<&FormSpec, CliError> {
        match name {
            Some(n) => self.forms.iter().find(|f| f.name == n).ok_or_else(|| CliError::UndeclaredSymbol(format!("form {n}"))),
            None => self.forms.first().ok_or_else(|| CliError::Parse { field: "forms".into(), message: "no form given".into() }),
        }
    }

    /// Resolve a form against the symbols of `DR`.
    pub fn form(&self, spec: &FormSpec, dr: &DeRhamComplex) -> Result<ClosedForm, CliError> {
        let symbols = dr.symbols();
        let alg = symbols.algebra();
        let mut tail: Vec<Poly> = vec![Poly::zero()];
        for (k, t) in spec.terms.iter().enumerate() {
            let field = format!("forms.{}.terms[{k}]", spec.name);
            let c = parse_scalar(&t.coeff).map_err(|e| poly_error(field.clone(), e))?;
            let factors: Vec<&str> = t.monomial.iter().map(String::as_str).collect();
            let p = dr.monomial(c, &factors).map_err(|e| match e {
                dgsymp_core::Error::UndeclaredSymbol(s) => CliError::UndeclaredSymbol(format!("{s} (in {field})")),
                other => CliError::Validation(other),
            })?;
            for (m, _) in p.terms() {
                let w = symbols.weight(m);
                let deg = alg.monomial_degree(m);
                if deg != spec.degree {
                    return Err(CliError::DegreeMismatch(format!("{field} has degree {deg}, form declares {}", spec.degree)));
                }
                if w < spec.weight {
                    return Err(CliError::DegreeMismatch(format!("{field} has weight {w}, below the form weight {}", spec.weight)));
                }
                let slot = (w - spec.weight) as usize;
                if tail.len() <= slot {
                    tail.resize(slot + 1, Poly::zero());
                }
            }
            let slot = p.terms().next().map(|(m, _)| (symbols.weight(m) - spec.weight) as usize).unwrap_or(0);
            tail[slot] = &tail[slot] + &p;
        }
        Ok(ClosedForm::new(spec.weight, spec.degree - spec.weight as i32, tail))
    }

    pub fn coalgebroid(&self, base: &Arc<CdgaPresentation>, w: u32, d: u32) -> Result<CoalgebroidCandidate, CliError> {
        let Some(spec) = &self.coalgebroid else {
            return CoalgebroidCandidate::de_rham(base, w, d).map_err(CliError::Validation);
        };
        let k = spec.module.len();
        let mut gens: Vec<Generator> = spec.module.iter().map(|g| Generator::new(g.name.clone(), g.degree + 1)).collect();
        gens.extend(base.generators().iter().cloned());
        let alg = GcAlgebra::new(gens.clone());
        let labels: Vec<String> = spec.module.iter().map(|g| g.name.clone()).collect();
        let degrees: Vec<i32> = spec.module.iter().map(|g| g.degree).collect();
        for key in spec.module_differential.keys().chain(spec.epsilon.keys()) {
            if alg.index_of(key).is_none() {
                return Err(CliError::UndeclaredSymbol(format!("{key} (in coalgebroid)")));
            }
        }
        let mut dmat = GradedMatrix::zeros(degrees.clone(), degrees, 1);
        for (col, name) in labels.iter().enumerate() {
            let Some(s) = spec.module_differential.get(name) else { continue };
            let field = format!("coalgebroid.module_differential.{name}");
            let p = parse_poly(s, &alg).map_err(|e| poly_error(field.clone(), e))?;
            for (m, c) in p.terms() {
                let (row, rest) = match m.split_first() {
                    Some((&(g, 1), rest)) if g < k && rest.iter().all(|&(h, _)| h >= k) => (g, rest),
                    _ => return Err(CliError::Parse { field, message: "d_F must be linear in the module basis".into() }),
                };
                let coeff: Vec<_> = rest.iter().map(|&(h, e)| (h - k, e)).collect();
                let mut entry = dmat.get_or_zero(row, col);
                entry.add_term(coeff, c.clone());
                dmat.set(row, col, entry);
            }
        }
        let module = FreeComplex::new(base.clone(), labels, dmat).map_err(CliError::Validation)?;
        let mut eps = Vec::with_capacity(gens.len());
        for g in &gens {
            eps.push(match spec.epsilon.get(&g.name) {
                Some(s) => parse_poly(s, &alg).map_err(|e| poly_error(format!("coalgebroid.epsilon.{}", g.name), e))?,
                None => Poly::zero(),
            });
        }
        CoalgebroidCandidate::new(module, eps, w, d).map_err(CliError::Validation)
    }
}
