//! JSON design documents: schema, validation with field paths, save and load.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thedra::smooth::{molding_surface_range, Repr};
use thedra::{
    build_thedron, miura_data, AngleKind, AxialSpec, DesignData, Interval, ScalarFunction,
    SmoothSpec, TranslationalSpec,
};

use crate::error::{code_of, Error, Result, Violation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created_at: Option<String>,
}

/// Discrete generating data, exactly the stored design set; nothing derived.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscretePayload {
    pub m: usize,
    pub n: usize,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
    pub f0: Vec<f64>,
    pub g0: Vec<f64>,
    pub z: Vec<f64>,
}

impl From<&DesignData<f64>> for DiscretePayload {
    fn from(d: &DesignData<f64>) -> Self {
        Self {
            m: d.m(),
            n: d.n(),
            phi: d.phi.clone(),
            psi: d.psi.clone(),
            f0: d.f0.clone(),
            g0: d.g0.clone(),
            z: d.z.clone(),
        }
    }
}

/// A named closed form or a sample array on `domain = [lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionDoc {
    Polynomial {
        domain: [f64; 2],
        coefficients: Vec<f64>,
    },
    Sine {
        domain: [f64; 2],
        amplitude: f64,
        frequency: f64,
        #[serde(default)]
        phase: f64,
        #[serde(default)]
        offset: f64,
    },
    Cosine {
        domain: [f64; 2],
        amplitude: f64,
        frequency: f64,
        #[serde(default)]
        phase: f64,
        #[serde(default)]
        offset: f64,
    },
    Exponential {
        domain: [f64; 2],
        amplitude: f64,
        rate: f64,
        #[serde(default)]
        offset: f64,
    },
    Sampled {
        domain: [f64; 2],
        values: Vec<f64>,
    },
}

impl FunctionDoc {
    pub fn polynomial(coefficients: &[f64], lo: f64, hi: f64) -> Self {
        Self::Polynomial {
            domain: [lo, hi],
            coefficients: coefficients.to_vec(),
        }
    }

    fn domain(&self) -> [f64; 2] {
        match self {
            Self::Polynomial { domain, .. }
            | Self::Sine { domain, .. }
            | Self::Cosine { domain, .. }
            | Self::Exponential { domain, .. }
            | Self::Sampled { domain, .. } => *domain,
        }
    }

    fn repr(&self) -> Repr<f64> {
        match self.clone() {
            Self::Polynomial { coefficients, .. } => Repr::Polynomial { coefficients },
            Self::Sine {
                amplitude,
                frequency,
                phase,
                offset,
                ..
            } => Repr::Sine {
                amplitude,
                frequency,
                phase,
                offset,
            },
            Self::Cosine {
                amplitude,
                frequency,
                phase,
                offset,
                ..
            } => Repr::Cosine {
                amplitude,
                frequency,
                phase,
                offset,
            },
            Self::Exponential {
                amplitude,
                rate,
                offset,
                ..
            } => Repr::Exponential {
                amplitude,
                rate,
                offset,
            },
            Self::Sampled { values, .. } => Repr::Sampled { values },
        }
    }

    /// The function described, or a violation under `path`.
    pub fn build(&self, path: &str) -> std::result::Result<ScalarFunction<f64>, Violation> {
        let [lo, hi] = self.domain();
        let domain = Interval::new(lo, hi)
            .map_err(|e| Violation::new(format!("{path}.domain"), code_of(&e), e.to_string()))?;
        let values: Vec<f64> = match self {
            Self::Polynomial { coefficients, .. } => coefficients.clone(),
            Self::Sampled { values, .. } => values.clone(),
            Self::Sine {
                amplitude,
                frequency,
                phase,
                offset,
                ..
            }
            | Self::Cosine {
                amplitude,
                frequency,
                phase,
                offset,
                ..
            } => vec![*amplitude, *frequency, *phase, *offset],
            Self::Exponential {
                amplitude,
                rate,
                offset,
                ..
            } => vec![*amplitude, *rate, *offset],
        };
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Violation::new(
                path.to_string(),
                "NotFinite",
                format!("parameter {k} is not a finite number"),
            ));
        }
        ScalarFunction::from_repr(self.repr(), domain).map_err(|e| {
            let field = match self {
                Self::Sampled { .. } => format!("{path}.values"),
                _ => path.to_string(),
            };
            Violation::new(field, code_of(&e), e.to_string())
        })
    }
}

/// Smooth T-surface data of one class; every function is a [`FunctionDoc`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SmoothPayload {
    General {
        g: FunctionDoc,
        psi: FunctionDoc,
        c: FunctionDoc,
        phi: FunctionDoc,
        f: FunctionDoc,
        z: FunctionDoc,
    },
    /// A general surface with constant `c` and `eta = 0`; deformed by the exponential
    /// molding parameter.
    Molding {
        g: FunctionDoc,
        psi: FunctionDoc,
        c: FunctionDoc,
        phi: FunctionDoc,
        f: FunctionDoc,
        z: FunctionDoc,
    },
    Axial {
        c: FunctionDoc,
        phi: FunctionDoc,
        f: FunctionDoc,
        z: FunctionDoc,
    },
    Revolution {
        phi: FunctionDoc,
        f: FunctionDoc,
        z: FunctionDoc,
    },
    /// `sigma = (x(u) + f(v), y(u), z(v))`.
    Translational {
        x: FunctionDoc,
        y: FunctionDoc,
        f: FunctionDoc,
        z: FunctionDoc,
    },
}

impl SmoothPayload {
    pub fn class_name(&self) -> &'static str {
        match self {
            Self::General { .. } => "general",
            Self::Molding { .. } => "molding",
            Self::Axial { .. } => "axial",
            Self::Revolution { .. } => "revolution",
            Self::Translational { .. } => "translational",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Payload {
    Discrete(DiscretePayload),
    Smooth(SmoothPayload),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Discrete,
    Smooth,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignDocument {
    pub schema_version: u32,
    pub payload: Payload,
    pub metadata: Metadata,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    schema_version: u32,
    kind: Kind,
    payload: Value,
    #[serde(default)]
    metadata: Metadata,
}

/// Validated geometry behind a document.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Model {
    Discrete(DesignData<f64>),
    Smooth(SmoothModel),
}

#[derive(Debug, Clone)]
pub enum SmoothModel {
    General(SmoothSpec<f64>),
    Molding(SmoothSpec<f64>),
    Axial(AxialSpec<f64>),
    Revolution(AxialSpec<f64>),
    Translational(TranslationalSpec<f64>),
}

impl SmoothModel {
    pub fn class_name(&self) -> &'static str {
        match self {
            Self::General(_) => "general",
            Self::Molding(_) => "molding",
            Self::Axial(_) => "axial",
            Self::Revolution(_) => "revolution",
            Self::Translational(_) => "translational",
        }
    }
}

impl DesignDocument {
    pub fn discrete(design: &DesignData<f64>, name: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            payload: Payload::Discrete(design.into()),
            metadata: Metadata {
                name: name.into(),
                created_at: None,
            },
        }
    }

    pub fn smooth(payload: SmoothPayload, name: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            payload: Payload::Smooth(payload),
            metadata: Metadata {
                name: name.into(),
                created_at: None,
            },
        }
    }

    pub fn kind(&self) -> Kind {
        match self.payload {
            Payload::Discrete(_) => Kind::Discrete,
            Payload::Smooth(_) => Kind::Smooth,
        }
    }

    /// Pretty JSON with a trailing newline; identical documents give identical bytes.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a, P> {
            schema_version: u32,
            kind: Kind,
            payload: &'a P,
            metadata: &'a Metadata,
        }
        fn pretty<P: Serialize>(doc: &DesignDocument, payload: &P) -> String {
            let out = Out {
                schema_version: doc.schema_version,
                kind: doc.kind(),
                payload,
                metadata: &doc.metadata,
            };
            serde_json::to_string_pretty(&out).expect("documents serialize")
        }
        let mut s = match &self.payload {
            Payload::Discrete(p) => pretty(self, p),
            Payload::Smooth(p) => pretty(self, p),
        };
        s.push('\n');
        s
    }

    /// Parses the schema only. Use [`DesignDocument::from_json`] to validate as well.
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| schema("document".into(), &e))?;
        if !value.is_object() {
            return Err(Error::SchemaViolation(Violation::new(
                "document",
                "Schema",
                "expected a JSON object",
            )));
        }
        let wire: Wire = serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            schema(
                if path == "." { "document".into() } else { path },
                e.inner(),
            )
        })?;
        if wire.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaViolation(Violation::new(
                "schema_version",
                "UnsupportedVersion",
                format!(
                    "schema version {} is not supported (expected {SCHEMA_VERSION})",
                    wire.schema_version
                ),
            )));
        }
        let payload = match wire.kind {
            Kind::Discrete => Payload::Discrete(payload_field(wire.payload)?),
            Kind::Smooth => Payload::Smooth(parse_smooth(wire.payload)?),
        };
        Ok(Self {
            schema_version: wire.schema_version,
            payload,
            metadata: wire.metadata,
        })
    }

    /// Parses and validates every invariant.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc = Self::parse(text)?;
        doc.model()?;
        Ok(doc)
    }

    /// The validated geometry; violations carry field paths.
    pub fn model(&self) -> Result<Model> {
        match &self.payload {
            Payload::Discrete(p) => validate_discrete(p).map(Model::Discrete),
            Payload::Smooth(p) => validate_smooth(p).map(Model::Smooth),
        }
        .map_err(Error::InvariantViolation)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

fn schema(path: String, e: &serde_json::Error) -> Error {
    Error::SchemaViolation(Violation::new(path, "Schema", e.to_string()))
}

fn prefixed(prefix: &str, path: String) -> String {
    if path == "." {
        prefix.to_string()
    } else {
        format!("{prefix}.{path}")
    }
}

fn payload_field<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value)
        .map_err(|e| schema(prefixed("payload", e.path().to_string()), e.inner()))
}

/// Smooth payloads are read field by field so that errors point at the function concerned.
fn parse_smooth(value: Value) -> Result<SmoothPayload> {
    let Value::Object(mut map) = value else {
        return Err(Error::SchemaViolation(Violation::new(
            "payload",
            "Schema",
            "expected an object",
        )));
    };
    let class = match map.remove("class") {
        Some(Value::String(s)) => s,
        _ => {
            return Err(Error::SchemaViolation(Violation::new(
                "payload.class",
                "Schema",
                "expected one of general, molding, axial, revolution, translational",
            )))
        }
    };
    let fields: &[&str] = match class.as_str() {
        "general" | "molding" => &["g", "psi", "c", "phi", "f", "z"],
        "axial" => &["c", "phi", "f", "z"],
        "revolution" => &["phi", "f", "z"],
        "translational" => &["x", "y", "f", "z"],
        other => {
            return Err(Error::SchemaViolation(Violation::new(
                "payload.class",
                "Schema",
                format!("unknown smooth class `{other}`"),
            )))
        }
    };
    if let Some(extra) = map.keys().find(|k| !fields.contains(&k.as_str())) {
        return Err(Error::SchemaViolation(Violation::new(
            format!("payload.{extra}"),
            "Schema",
            format!("unknown field `{extra}` for class {class}"),
        )));
    }
    let mut checked = Map::new();
    for key in fields {
        let value = map.remove(*key).ok_or_else(|| {
            Error::SchemaViolation(Violation::new(
                format!("payload.{key}"),
                "Schema",
                "missing function",
            ))
        })?;
        let parsed: FunctionDoc =
            serde_json::from_value(value).map_err(|e| schema(format!("payload.{key}"), &e))?;
        checked.insert(key.to_string(), serde_json::to_value(parsed)?);
    }
    checked.insert("class".into(), Value::String(class));
    Ok(serde_json::from_value(Value::Object(checked))?)
}

fn validate_discrete(p: &DiscretePayload) -> std::result::Result<DesignData<f64>, Vec<Violation>> {
    let mut out = Vec::new();
    for (field, len, expected) in [
        ("phi", p.phi.len(), p.m),
        ("psi", p.psi.len(), p.m),
        ("g0", p.g0.len(), p.m),
        ("f0", p.f0.len(), p.n),
        ("z", p.z.len(), p.n + 1),
    ] {
        if len != expected {
            out.push(Violation::new(
                format!("payload.{field}"),
                "LengthMismatch",
                format!("has length {len}, expected {expected}"),
            ));
        }
    }
    if p.m == 0 {
        out.push(Violation::new(
            "payload.m",
            "Empty",
            "at least one profile strip is required",
        ));
    }
    if p.n == 0 {
        out.push(Violation::new(
            "payload.n",
            "Empty",
            "at least one trajectory strip is required",
        ));
    }
    for (field, values) in [
        ("phi", &p.phi),
        ("psi", &p.psi),
        ("f0", &p.f0),
        ("g0", &p.g0),
        ("z", &p.z),
    ] {
        for (k, v) in values.iter().enumerate() {
            if !v.is_finite() {
                out.push(Violation::new(
                    format!("payload.{field}[{k}]"),
                    "NotFinite",
                    "is not a finite number",
                ));
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let design = DesignData::new(
        p.phi.clone(),
        p.psi.clone(),
        p.f0.clone(),
        p.g0.clone(),
        p.z.clone(),
    )
    .map_err(|e| vec![discrete_violation(&e)])?;
    build_thedron(&design).map_err(|e| vec![discrete_violation(&e)])?;
    Ok(design)
}

/// Field path of a core validation error.
fn discrete_violation(e: &thedra::Error) -> Violation {
    use thedra::Error as E;
    let path = match e {
        E::LengthMismatch { field, .. } => format!("payload.{field}"),
        E::NotFinite { field, index } => format!("payload.{field}[{index}]"),
        E::AngleOutOfRange {
            index,
            angle: AngleKind::Eta,
            ..
        } => format!("payload.psi[{}]", index - 1),
        E::AngleOutOfRange {
            index,
            angle: AngleKind::Theta,
            ..
        } => format!("payload.phi[{}]", index - 1),
        E::ZeroLength { index } => format!("payload.g0[{}]", index - 1),
        E::BaseHeight { .. } => "payload.z[0]".into(),
        E::DegenerateHeights { index } => format!("payload.z[{index}]"),
        E::SignConsistency { strip, .. } => format!("payload.g0[{}]", strip - 1),
        E::CoincidentLines { index } | E::CoincidentPlanes { index } => {
            format!("payload.phi[{}]", index - 1)
        }
        _ => "payload".into(),
    };
    Violation::new(path, code_of(e), e.to_string())
}

fn validate_smooth(p: &SmoothPayload) -> std::result::Result<SmoothModel, Vec<Violation>> {
    let build = |name: &str, f: &FunctionDoc| f.build(&format!("payload.{name}"));
    let collect = |pairs: &[(&str, &FunctionDoc)]| {
        let mut fns = Vec::new();
        let mut errs = Vec::new();
        for (name, f) in pairs {
            match build(name, f) {
                Ok(v) => fns.push(v),
                Err(v) => errs.push(v),
            }
        }
        if errs.is_empty() {
            Ok(fns)
        } else {
            Err(errs)
        }
    };
    let spec_err = |e: thedra::Error| vec![smooth_violation(&e)];
    match p {
        SmoothPayload::General {
            g,
            psi,
            c,
            phi,
            f,
            z,
        }
        | SmoothPayload::Molding {
            g,
            psi,
            c,
            phi,
            f,
            z,
        } => {
            let mut v = collect(&[
                ("g", g),
                ("psi", psi),
                ("c", c),
                ("phi", phi),
                ("f", f),
                ("z", z),
            ])?
            .into_iter();
            let mut next = || v.next().expect("six functions");
            let spec = SmoothSpec::new(next(), next(), next(), next(), next(), next())
                .map_err(spec_err)?;
            if matches!(p, SmoothPayload::Molding { .. }) {
                molding_surface_range(&spec).map_err(spec_err)?;
                Ok(SmoothModel::Molding(spec))
            } else {
                Ok(SmoothModel::General(spec))
            }
        }
        SmoothPayload::Axial { c, phi, f, z } => {
            let mut v = collect(&[("c", c), ("phi", phi), ("f", f), ("z", z)])?.into_iter();
            let mut next = || v.next().expect("four functions");
            let spec = AxialSpec::new(next(), next(), next(), next()).map_err(spec_err)?;
            Ok(SmoothModel::Axial(spec))
        }
        SmoothPayload::Revolution { phi, f, z } => {
            let mut v = collect(&[("phi", phi), ("f", f), ("z", z)])?.into_iter();
            let mut next = || v.next().expect("three functions");
            let (phi, f, z) = (next(), next(), next());
            let spec = AxialSpec::revolution(f, phi, z).map_err(spec_err)?;
            Ok(SmoothModel::Revolution(spec))
        }
        SmoothPayload::Translational { x, y, f, z } => {
            let mut v = collect(&[("x", x), ("y", y), ("f", f), ("z", z)])?.into_iter();
            let mut next = || v.next().expect("four functions");
            let spec = TranslationalSpec::new(next(), next(), next(), next()).map_err(spec_err)?;
            Ok(SmoothModel::Translational(spec))
        }
    }
}

fn smooth_violation(e: &thedra::Error) -> Violation {
    use thedra::Error as E;
    let path = match e {
        E::InvalidSmooth { condition, .. } => match condition {
            1..=3 => "payload.f",
            4 => "payload.psi",
            5 => "payload.phi",
            _ => "payload.c",
        },
        _ => "payload",
    };
    Violation::new(path, code_of(e), e.to_string())
}

/// Miura-ori `(a, b, c, d)` on `m x n` faces as a discrete document.
pub fn miura_document(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    m: usize,
    n: usize,
) -> Result<DesignDocument> {
    let design = miura_data(a, b, c, d, m, n)?.to_design()?;
    Ok(DesignDocument::discrete(
        &design,
        format!("miura({a}, {b}, {c}, {d}) {m}x{n}"),
    ))
}

/// Smooth example surfaces by name.
pub fn smooth_preset(name: &str) -> Option<DesignDocument> {
    let p = FunctionDoc::polynomial;
    let payload = match name {
        "paraboloid-wedge" => SmoothPayload::Revolution {
            phi: p(&[0.0, 1.0], 0.0, 1.0),
            f: p(&[0.0, 1.0], 0.1, 1.0),
            z: p(&[0.0, 0.0, 1.0], 0.1, 1.0),
        },
        "translational-paraboloid" => SmoothPayload::Translational {
            x: p(&[0.0, 0.0, 1.0], 0.0, 0.5),
            y: p(&[0.0, 1.0], 0.0, 0.5),
            f: p(&[0.0, 0.0, 1.0], 0.0, 0.5),
            z: p(&[0.0, 1.0], 0.0, 0.5),
        },
        "circular-molding" => SmoothPayload::Molding {
            g: p(&[1.0], 0.0, 1.0),
            psi: p(&[0.0, 1.0], 0.0, 1.0),
            c: p(&[1.0], 0.0, 1.0),
            phi: p(&[0.0, 1.0], 0.0, 1.0),
            f: p(&[0.0, 1.0], 0.0, 1.0),
            z: p(&[0.0, 1.0, 1.0], 0.0, 1.0),
        },
        _ => return None,
    };
    Some(DesignDocument::smooth(payload, name))
}

pub const SMOOTH_PRESETS: [&str; 3] = [
    "paraboloid-wedge",
    "translational-paraboloid",
    "circular-molding",
];
