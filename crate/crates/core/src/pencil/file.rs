//! Text format for pencils.
//!
//! ```text
//! # a comment
//! field: rational        # or sqrt3, where `u` denotes √3
//! f_p: y*z - x^2
//! f_q: 40*y^3 + 21*x*y*z - 21*x^3
//! p: 2
//! q: 3
//! ```
//!
//! Instead of `f_p`/`f_q`/`p`/`q`, a file may give the pencil directly as
//! `A:` and `B:`.

use std::collections::BTreeMap;

use super::{pencil_from_pq, Pencil, PencilError, PqGenerators};
use crate::polyalg::{parse_poly_in, Field, PolyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    #[default]
    Rational,
    Sqrt3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilFile {
    Generators { field: FieldKind, f_p: String, f_q: String, p: u32, q: u32 },
    Forms { field: FieldKind, a: String, b: String },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PencilFileError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("in `{key}`: {source}")]
    Poly { key: String, source: PolyError },
    #[error(transparent)]
    Pencil(#[from] PencilError),
}

impl PencilFile {
    pub fn parse(text: &str) -> Result<Self, PencilFileError> {
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .or_else(|| line.split_once('='))
                .ok_or_else(|| PencilFileError::Format { line: i + 1, message: "expected `key: value`".into() })?;
            let k = k.trim().to_string();
            if kv.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(PencilFileError::Format { line: i + 1, message: format!("duplicate key `{k}`") });
            }
        }
        let field = match kv.get("field").map(String::as_str) {
            None | Some("rational") | Some("Q") => FieldKind::Rational,
            Some("sqrt3") | Some("Q(sqrt3)") => FieldKind::Sqrt3,
            Some(other) => {
                return Err(PencilFileError::Format { line: 0, message: format!("unknown field `{other}`") });
            }
        };
        if let (Some(a), Some(b)) = (kv.get("A"), kv.get("B")) {
            return Ok(PencilFile::Forms { field, a: a.clone(), b: b.clone() });
        }
        let get = |k: &'static str| kv.get(k).cloned().ok_or(PencilFileError::Missing(k));
        let int = |k: &'static str| -> Result<u32, PencilFileError> {
            get(k)?.parse().map_err(|_| PencilFileError::Format { line: 0, message: format!("`{k}` must be a positive integer") })
        };
        Ok(PencilFile::Generators { field, f_p: get("f_p")?, f_q: get("f_q")?, p: int("p")?, q: int("q")? })
    }

    pub fn field(&self) -> FieldKind {
        match self {
            PencilFile::Generators { field, .. } | PencilFile::Forms { field, .. } => *field,
        }
    }

    fn poly<K: Field>(key: &str, text: &str) -> Result<crate::polyalg::Poly<K>, PencilFileError> {
        parse_poly_in::<K>(text).map_err(|source| PencilFileError::Poly { key: key.to_string(), source })
    }

    /// The raw generators, without enforcing any hypothesis.
    pub fn generators<K: Field>(&self) -> Result<Option<PqGenerators<K>>, PencilFileError> {
        match self {
            PencilFile::Generators { f_p, f_q, p, q, .. } => Ok(Some(PqGenerators {
                f_p: Self::poly("f_p", f_p)?,
                f_q: Self::poly("f_q", f_q)?,
                p: *p,
                q: *q,
            })),
            PencilFile::Forms { .. } => Ok(None),
        }
    }

    pub fn build<K: Field>(&self) -> Result<Pencil<K>, PencilFileError> {
        match self {
            PencilFile::Generators { f_p, f_q, p, q, .. } => {
                Ok(pencil_from_pq(Self::poly("f_p", f_p)?, Self::poly("f_q", f_q)?, *p, *q)?)
            }
            PencilFile::Forms { a, b, .. } => Ok(Pencil::new(Self::poly("A", a)?, Self::poly("B", b)?)?),
        }
    }

    /// Text form that [`parse`](Self::parse) reads back.
    pub fn render(&self) -> String {
        let field = |f: FieldKind| match f {
            FieldKind::Rational => "rational",
            FieldKind::Sqrt3 => "sqrt3",
        };
        match self {
            PencilFile::Generators { field: k, f_p, f_q, p, q } => {
                format!("field: {}\nf_p: {f_p}\nf_q: {f_q}\np: {p}\nq: {q}\n", field(*k))
            }
            PencilFile::Forms { field: k, a, b } => format!("field: {}\nA: {a}\nB: {b}\n", field(*k)),
        }
    }
}
