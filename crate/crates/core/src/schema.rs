//! Versioned JSON documents: `{"version": "1", "kind": …, "body": …}`.
//!
//! The body is held as raw JSON until the kind is known, so body errors
//! are reported at their line in the original file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::endo::EndoClass;
use crate::ffpoly::{DualityContext, Involution, SelfDualPoly};
use crate::jordan::{context_for, ChiTwist, JordanError, SimpleCuspidalDescriptor};
use crate::lusztig::{datum_validate, EigenTypes, GroupKind, GroupType};
use crate::params::Registry;
use crate::report::{IjordReport, ParamCatalog, PolyListing, VerifyReport};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocKind {
    SimpleCuspidal,
    GeneralCuspidal,
    LparamRegistry,
    EnumerationRequest,
    IjordReport,
    PolyListing,
    ParamCatalog,
    VerifyReport,
}

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported schema version {0:?}, expected {SCHEMA_VERSION:?}")]
    Version(String),
    #[error("invalid {kind:?} body at line {line}, column {column}: {message}")]
    Body { kind: DocKind, line: usize, column: usize, message: String },
    #[error("invalid descriptor: {0}")]
    Descriptor(#[from] JordanError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope<'a> {
    version: String,
    kind: DocKind,
    #[serde(borrow)]
    body: &'a RawValue,
}

#[derive(Serialize)]
struct EnvelopeOut<'a, T: Serialize> {
    version: &'a str,
    kind: DocKind,
    body: &'a T,
}

/// A polynomial as coefficients (constant term first) or `"X-1"` / `"X+1"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolySpec {
    Coeffs(Vec<u32>),
    Named(String),
}

impl PolySpec {
    pub fn resolve(&self, ctx: &DualityContext) -> Result<SelfDualPoly, JordanError> {
        match self {
            PolySpec::Coeffs(c) => Ok(SelfDualPoly::from_coeffs(c.clone(), ctx)?),
            PolySpec::Named(s) => match s.replace(' ', "").as_str() {
                "X-1" => Ok(SelfDualPoly::x_minus_one(ctx)),
                "X+1" => Ok(SelfDualPoly::x_plus_one(ctx)),
                _ => Err(JordanError::UnknownPolynomial(s.clone())),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ATerm {
    pub poly: PolySpec,
    pub a: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub kind: GroupKind,
    pub a: Vec<ATerm>,
    /// Defaults to `Σ a·deg P`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub eigen_types: EigenTypes,
}

fn is_default<T: Default + PartialEq>(x: &T) -> bool {
    *x == T::default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSpec {
    pub t: u8,
    pub m: usize,
    pub sigma: Involution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleSpec {
    pub q: u64,
    pub endo: EndoClass,
    pub n: u32,
    pub factors: [FactorSpec; 2],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub involutions: Vec<InvolutionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_twist: Option<ChiTwist>,
}

impl SimpleSpec {
    pub fn build(&self) -> Result<SimpleCuspidalDescriptor, JordanError> {
        let ctx = context_for(self.q, &self.endo)?;
        let mut data = Vec::with_capacity(2);
        for f in &self.factors {
            let g = GroupType::new(f.kind, &ctx)?;
            let mut a = BTreeMap::new();
            for t in &f.a {
                *a.entry(t.poly.resolve(&ctx)?).or_insert(0) += t.a;
            }
            let dim = f
                .dual_dim
                .unwrap_or_else(|| a.iter().map(|(p, &x)| x as usize * p.degree()).sum());
            data.push(datum_validate(&g, dim, a, f.eigen_types)?);
        }
        let data: [_; 2] = data.try_into().expect("two factors");
        let involutions = self.involutions.iter().map(|i| ((i.t, i.m), i.sigma)).collect();
        SimpleCuspidalDescriptor::new(self.q, self.endo.clone(), self.n, data, involutions, self.chi_twist)
    }

    pub fn from_descriptor(d: &SimpleCuspidalDescriptor) -> Self {
        let factors = d.data().clone().map(|datum| FactorSpec {
            kind: datum.kind(),
            a: datum
                .a_map()
                .iter()
                .map(|(p, &a)| ATerm { poly: PolySpec::Coeffs(p.coeffs().to_vec()), a })
                .collect(),
            dual_dim: Some(datum.dual_dim()),
            eigen_types: datum.eigen_types(),
        });
        SimpleSpec {
            q: d.q(),
            endo: d.endo().clone(),
            n: d.n(),
            factors,
            involutions: d
                .involutions()
                .iter()
                .map(|(&(t, m), &sigma)| InvolutionSpec { t, m, sigma })
                .collect(),
            chi_twist: d.chi_twist(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartSpec {
    pub descriptor: SimpleSpec,
    #[serde(default, skip_serializing_if = "is_default")]
    pub chi: ChiTwist,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralSpec {
    pub n: u32,
    pub parts: Vec<PartSpec>,
}

impl GeneralSpec {
    pub fn build(&self) -> Result<Vec<(SimpleCuspidalDescriptor, ChiTwist)>, JordanError> {
        self.parts.iter().map(|p| Ok((p.descriptor.build()?, p.chi))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerationRequest {
    pub n: u32,
    pub registry: Registry,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    SimpleCuspidal(SimpleSpec),
    GeneralCuspidal(GeneralSpec),
    LparamRegistry(Registry),
    EnumerationRequest(EnumerationRequest),
    IjordReport(IjordReport),
    PolyListing(PolyListing),
    ParamCatalog(ParamCatalog),
    VerifyReport(VerifyReport),
}

impl Document {
    pub fn kind(&self) -> DocKind {
        match self {
            Document::SimpleCuspidal(_) => DocKind::SimpleCuspidal,
            Document::GeneralCuspidal(_) => DocKind::GeneralCuspidal,
            Document::LparamRegistry(_) => DocKind::LparamRegistry,
            Document::EnumerationRequest(_) => DocKind::EnumerationRequest,
            Document::IjordReport(_) => DocKind::IjordReport,
            Document::PolyListing(_) => DocKind::PolyListing,
            Document::ParamCatalog(_) => DocKind::ParamCatalog,
            Document::VerifyReport(_) => DocKind::VerifyReport,
        }
    }
}

/// 1-based line of byte `offset` in `text`.
fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn body<'a, T: Deserialize<'a>>(text: &str, kind: DocKind, raw: &'a RawValue) -> Result<T, SchemaError> {
    serde_json::from_str(raw.get()).map_err(|e| {
        let start = raw.get().as_ptr() as usize - text.as_ptr() as usize;
        let first = line_of(text, start);
        let column = if e.line() == 1 {
            start - text[..start].rfind('\n').map_or(0, |i| i + 1) + e.column()
        } else {
            e.column()
        };
        SchemaError::Body {
            kind,
            line: first + e.line().saturating_sub(1),
            column,
            message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
        }
    })
}

pub fn parse_document(text: &str) -> Result<Document, SchemaError> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| SchemaError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    if env.version != SCHEMA_VERSION {
        return Err(SchemaError::Version(env.version));
    }
    let k = env.kind;
    let raw = env.body;
    Ok(match k {
        DocKind::SimpleCuspidal => Document::SimpleCuspidal(body(text, k, raw)?),
        DocKind::GeneralCuspidal => Document::GeneralCuspidal(body(text, k, raw)?),
        DocKind::LparamRegistry => Document::LparamRegistry(body(text, k, raw)?),
        DocKind::EnumerationRequest => Document::EnumerationRequest(body(text, k, raw)?),
        DocKind::IjordReport => Document::IjordReport(body(text, k, raw)?),
        DocKind::PolyListing => Document::PolyListing(body(text, k, raw)?),
        DocKind::ParamCatalog => Document::ParamCatalog(body(text, k, raw)?),
        DocKind::VerifyReport => Document::VerifyReport(body(text, k, raw)?),
    })
}

fn envelope<T: Serialize>(kind: DocKind, body: &T) -> String {
    let env = EnvelopeOut { version: SCHEMA_VERSION, kind, body };
    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
}

pub fn to_json(doc: &Document) -> String {
    let k = doc.kind();
    match doc {
        Document::SimpleCuspidal(b) => envelope(k, b),
        Document::GeneralCuspidal(b) => envelope(k, b),
        Document::LparamRegistry(b) => envelope(k, b),
        Document::EnumerationRequest(b) => envelope(k, b),
        Document::IjordReport(b) => envelope(k, b),
        Document::PolyListing(b) => envelope(k, b),
        Document::ParamCatalog(b) => envelope(k, b),
        Document::VerifyReport(b) => envelope(k, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{simple_corpus, CorpusSpec};

    const SP2: &str = r#"{
  "version": "1",
  "kind": "simple_cuspidal",
  "body": {
    "q": 3,
    "endo": {"label": "trivial", "degree": 1, "e": 1, "f": 1, "dual_type": "trivial_class", "self_dual": true},
    "n": 1,
    "factors": [
      {"kind": "symplectic", "a": [{"poly": "X-1", "a": 1}, {"poly": "X+1", "a": 2}]},
      {"kind": "symplectic", "a": [{"poly": [2, 1], "a": 1}]}
    ]
  }
}"#;

    #[test]
    fn parses_and_builds() {
        let Document::SimpleCuspidal(spec) = parse_document(SP2).unwrap() else { panic!() };
        let d = spec.build().unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(SimpleSpec::from_descriptor(&d).build().unwrap(), d);
    }

    #[test]
    fn diagnostics_carry_lines() {
        let bad = SP2.replace("\"n\": 1,", "\"n\": 1, \"extra\": 0,");
        match parse_document(&bad).unwrap_err() {
            SchemaError::Body { line, kind, message, .. } => {
                assert_eq!(line, 7);
                assert_eq!(kind, DocKind::SimpleCuspidal);
                assert!(message.contains("extra"), "{message}");
            }
            e => panic!("{e}"),
        }
        let broken = SP2.replace("\"kind\": \"simple_cuspidal\",", "\"kind\": \"simple_cuspidal\"");
        assert!(matches!(parse_document(&broken), Err(SchemaError::Syntax { line: 4, .. })));
        let v2 = SP2.replace("\"1\"", "\"2\"");
        assert!(matches!(parse_document(&v2), Err(SchemaError::Version(_))));
        let extra = SP2.replacen("\"version\"", "\"x\": 1, \"version\"", 1);
        assert!(matches!(parse_document(&extra), Err(SchemaError::Syntax { .. })));
    }

    #[test]
    fn corpus_round_trips() {
        let spec = CorpusSpec { qs: vec![3], max_theta_degree: 2, max_n: 2, ..CorpusSpec::default() };
        for d in simple_corpus(&spec).unwrap() {
            let doc = Document::SimpleCuspidal(SimpleSpec::from_descriptor(&d));
            let text = to_json(&doc);
            let back = parse_document(&text).unwrap();
            assert_eq!(back, doc);
            let Document::SimpleCuspidal(s) = back else { unreachable!() };
            assert_eq!(s.build().unwrap(), d);
        }
    }
}
