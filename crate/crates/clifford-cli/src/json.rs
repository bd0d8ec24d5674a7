//! JSON schemas for every document the tool reads or writes.
//!
//! Field elements are carried as strings in the canonical element grammar
//! (exact values never pass through floats); field specs are tagged objects.
//! Serialization is deterministic: struct fields serialize in declaration
//! order and all values are either exact strings or integers.

use serde::{Deserialize, Serialize};

use clifford_core::field::{Field, FieldSpec};
use clifford_core::form::BinaryForm;
use clifford_core::pencil::MatrixPencil;
use clifford_core::rep::Representation;
use clifford_core::ExactMatrix;

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldSpecDto {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, k: u32, modulus: Vec<String> },
    Cyclotomic { n: u32 },
    Complex,
}

impl FieldSpecDto {
    pub fn from_core(spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => FieldSpecDto::Rationals,
            FieldSpec::PrimeField { p } => FieldSpecDto::Prime { p: *p },
            FieldSpec::ExtensionField { p, k, modulus } => FieldSpecDto::Extension {
                p: *p,
                k: *k,
                modulus: modulus.iter().map(|c| c.to_string()).collect(),
            },
            FieldSpec::Cyclotomic { n } => FieldSpecDto::Cyclotomic { n: *n },
            FieldSpec::ComplexDouble => FieldSpecDto::Complex,
        }
    }

    pub fn to_field(&self) -> Result<Field, CliError> {
        let spec = match self {
            FieldSpecDto::Rationals => FieldSpec::Rationals,
            FieldSpecDto::Prime { p } => FieldSpec::PrimeField { p: *p },
            FieldSpecDto::Extension { p, k, modulus } => {
                let coeffs: Result<Vec<u64>, _> =
                    modulus.iter().map(|s| s.trim().parse::<u64>()).collect();
                FieldSpec::ExtensionField {
                    p: *p,
                    k: *k,
                    modulus: coeffs
                        .map_err(|_| CliError::usage("extension modulus entries must be integers"))?,
                }
            }
            FieldSpecDto::Cyclotomic { n } => FieldSpec::Cyclotomic { n: *n },
            FieldSpecDto::Complex => FieldSpec::ComplexDouble,
        };
        Field::new(&spec).map_err(|e| CliError::usage(format!("invalid field spec: {e}")))
    }
}

/// Parse a `--field` argument: either a tagged JSON object or one of the
/// shorthands `q`/`rationals`, `gfQ` (prime power, least irreducible
/// modulus), `zetaN`, `complex`.
pub fn parse_field_arg(arg: &str) -> Result<Field, CliError> {
    let t = arg.trim();
    if t.starts_with('{') {
        let dto: FieldSpecDto = serde_json::from_str(t)
            .map_err(|e| CliError::usage(format!("bad field spec JSON: {e}")))?;
        return dto.to_field();
    }
    let lower = t.to_ascii_lowercase();
    if lower == "q" || lower == "rationals" {
        return Ok(Field::rationals());
    }
    if lower == "complex" || lower == "c" {
        return Ok(Field::complex());
    }
    if let Some(rest) = lower.strip_prefix("gf") {
        let q: u64 = rest
            .parse()
            .map_err(|_| CliError::usage(format!("bad field shorthand {t:?}")))?;
        return Field::gf(q).map_err(|e| CliError::usage(format!("{e}")));
    }
    if let Some(rest) = lower.strip_prefix("zeta") {
        let n: u32 = rest
            .parse()
            .map_err(|_| CliError::usage(format!("bad field shorthand {t:?}")))?;
        return Field::cyclotomic(n).map_err(|e| CliError::usage(format!("{e}")));
    }
    Err(CliError::usage(format!(
        "unrecognized field {t:?}: expected JSON or q | gfQ | zetaN | complex"
    )))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDto {
    pub field: FieldSpecDto,
    pub degree: usize,
    pub coeffs: Vec<String>,
}

impl FormDto {
    pub fn from_core(form: &BinaryForm) -> Self {
        let field = form.field();
        FormDto {
            field: FieldSpecDto::from_core(&field.spec()),
            degree: form.degree(),
            coeffs: form.coeffs().iter().map(|c| field.format_element(c)).collect(),
        }
    }

    pub fn to_core(&self) -> Result<BinaryForm, CliError> {
        let field = self.field.to_field()?;
        self.to_core_in(&field)
    }

    /// Reinterpret the coefficient strings in a caller-chosen field.
    pub fn to_core_in(&self, field: &Field) -> Result<BinaryForm, CliError> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(CliError::usage(format!(
                "form lists {} coefficients for degree {}",
                self.coeffs.len(),
                self.degree
            )));
        }
        let coeffs: Result<Vec<_>, _> = self
            .coeffs
            .iter()
            .map(|s| {
                field
                    .parse_element(s)
                    .map_err(|e| CliError::usage(format!("coefficient {s:?}: {e}")))
            })
            .collect();
        BinaryForm::new(field.clone(), coeffs?)
            .map_err(|e| CliError::usage(format!("invalid form: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilDto {
    pub field: FieldSpecDto,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
}

impl PencilDto {
    pub fn from_core(p: &MatrixPencil) -> Self {
        let field = p.field();
        let dump = |m: &ExactMatrix| -> Vec<Vec<String>> {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| field.format_element(m.entry(i, j))).collect())
                .collect()
        };
        PencilDto {
            field: FieldSpecDto::from_core(&field.spec()),
            m: p.size(),
            a: dump(p.a()),
            b: dump(p.b()),
        }
    }

    pub fn to_core(&self) -> Result<MatrixPencil, CliError> {
        let field = self.field.to_field()?;
        let load = |rows: &Vec<Vec<String>>, name: &str| -> Result<ExactMatrix, CliError> {
            if rows.len() != self.m || rows.iter().any(|r| r.len() != self.m) {
                return Err(CliError::usage(format!("matrix {name} is not {0}x{0}", self.m)));
            }
            let mut entries = Vec::with_capacity(self.m * self.m);
            for row in rows {
                for s in row {
                    entries.push(field.parse_element(s).map_err(|e| {
                        CliError::usage(format!("matrix {name} entry {s:?}: {e}"))
                    })?);
                }
            }
            ExactMatrix::new(field.clone(), self.m, self.m, entries)
                .map_err(|e| CliError::usage(format!("matrix {name}: {e}")))
        };
        let a = load(&self.a, "A")?;
        let b = load(&self.b, "B")?;
        MatrixPencil::new(a, b).map_err(|e| CliError::usage(format!("{e}")))
    }
}

/// A representation document; loading re-verifies the Clifford identity and
/// the divisibility d | m, and cross-checks the stored r.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub manifest: Option<crate::manifest::Manifest>,
    pub form: FormDto,
    pub r: usize,
    pub pencil: PencilDto,
}

impl RepDoc {
    pub fn from_core(rep: &Representation, manifest: Option<crate::manifest::Manifest>) -> Self {
        RepDoc {
            manifest,
            form: FormDto::from_core(rep.form()),
            r: rep.r(),
            pencil: PencilDto::from_core(rep.pencil()),
        }
    }

    pub fn to_core(&self) -> Result<Representation, CliError> {
        let form = self.form.to_core()?;
        let pencil = self.pencil.to_core()?;
        if form.field() != pencil.field() {
            return Err(CliError::usage("form and pencil carry different fields"));
        }
        let rep = Representation::new(form, pencil).map_err(CliError::failed)?;
        if rep.r() != self.r {
            return Err(CliError::usage(format!(
                "stored r = {} but m/d = {}",
                self.r,
                rep.r()
            )));
        }
        Ok(rep)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path:?}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{path}: {e}")))
}

pub fn load_representation(path: &str) -> Result<Representation, CliError> {
    read_json::<RepDoc>(path)?.to_core()
}

/// Canonical document printing: two-space pretty JSON plus a final newline.
pub fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}
