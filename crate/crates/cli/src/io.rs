//! Instance files: a fixed JSON schema, loading with located diagnostics,
//! and canonical saving.
//!
//! Connection matrices and transitions are sparse lists of
//! `[row_label, col_label]` pairs over generator labels. Cover matrices are
//! sparse lists of `[row, col]` index pairs in canonical homology
//! coordinates, since homology classes have no labels.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use conley_core::{
    check_connection_matrix, BlockTransition, ConnectionMatrix, CoverData, CoverEntry,
    CriticalPoint, FinitePoset, Generator, Gf2Matrix, GradedBasis, Interval, MorseData,
    SpectralPage, TransitionCandidate,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema {0}, expected {SCHEMA}")]
    Schema(u32),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field(field: impl Into<String>, message: impl ToString) -> LoadError {
    LoadError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Raw file layout

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub poset: PosetSection,
    /// Relations of the minimal (flow) order; defaults to `poset`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_order: Option<Vec<(String, String)>>,
    #[serde(default)]
    pub generators: Vec<(String, String, u32)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transition: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<CoverSection>>,
    #[serde(default, skip_serializing_if = "Assumptions::is_empty")]
    pub assumptions: Assumptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular: Option<SingularSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morse: Option<MorseSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_pages: Option<ExpectedPagesSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSection {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSection {
    pub interval: Vec<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_domain: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_codomain: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<(usize, usize)>>,
}

/// Declared hypotheses that the algebra cannot check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assumptions {
    #[serde(default, skip_serializing_if = "is_false")]
    pub continuation: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub morse_smale: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub no_periodic_orbits: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub minimal_order_identity: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub stages_are_connection_matrices: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl Assumptions {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub fn declared(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (flag, name) in [
            (self.continuation, "continuation"),
            (self.morse_smale, "morse_smale"),
            (self.no_periodic_orbits, "no_periodic_orbits"),
            (self.minimal_order_identity, "minimal_order_identity"),
            (
                self.stages_are_connection_matrices,
                "stages_are_connection_matrices",
            ),
        ] {
            if flag {
                out.push(name);
            }
        }
        out
    }
}

/// A candidate matrix with one unknown entry `star`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularSection {
    pub poset: PosetSection,
    pub generators: Vec<(String, String, u32)>,
    pub entries: Vec<(String, String)>,
    pub star: (String, String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseSection {
    pub points: Vec<(String, u32)>,
    #[serde(default)]
    pub incidence: Vec<(String, String, u32)>,
    pub value_order: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSection {
    pub index: u32,
    pub size: usize,
    pub entries: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedPagesSection {
    pub matrix: String,
    pub pages: Vec<PageSection>,
}

/// `dims` and `ranks` are `[p, k, value]` triples with `p` the filtration
/// index (generator position).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PageSection {
    pub stage: usize,
    pub dims: Vec<(usize, u32, usize)>,
    #[serde(default)]
    pub ranks: Vec<(usize, u32, usize)>,
}

// ---------------------------------------------------------------------------
// Typed instance

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Singular {
    pub basis: GradedBasis,
    /// Entries other than the unknown one.
    pub fixed: Gf2Matrix,
    pub star: (usize, usize),
}

impl Singular {
    pub fn matrix(&self, star: bool) -> Gf2Matrix {
        let mut m = self.fixed.clone();
        m.set(self.star.0, self.star.1, star);
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedPages {
    pub matrix: String,
    pub pages: Vec<SpectralPage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: Option<String>,
    pub basis: GradedBasis,
    pub minimal_order: Option<FinitePoset>,
    pub matrices: BTreeMap<String, ConnectionMatrix>,
    pub domain: Option<String>,
    pub codomain: Option<String>,
    pub transition: Option<TransitionCandidate>,
    pub cover: Option<CoverData>,
    pub assumptions: Assumptions,
    pub singular: Option<Singular>,
    pub morse: Option<MorseData>,
    pub blocks: Option<BlockTransition>,
    pub expected_pages: Option<ExpectedPages>,
}

impl Instance {
    pub fn order(&self) -> &FinitePoset {
        self.basis.order()
    }

    pub fn minimal_order(&self) -> &FinitePoset {
        self.minimal_order.as_ref().unwrap_or(self.basis.order())
    }

    /// The named matrix, or the default one: `delta`, else the domain.
    pub fn matrix(&self, name: Option<&str>) -> Result<(&str, &ConnectionMatrix), LoadError> {
        let name = match name {
            Some(n) => n,
            None if self.matrices.contains_key("delta") => "delta",
            None => self.domain_name()?,
        };
        self.matrices
            .get_key_value(name)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| field("matrices", format!("no matrix named `{name}`")))
    }

    fn domain_name(&self) -> Result<&str, LoadError> {
        if let Some(d) = &self.domain {
            return Ok(d);
        }
        for candidate in ["delta_lambda", "delta"] {
            if self.matrices.contains_key(candidate) {
                return Ok(candidate);
            }
        }
        match self.matrices.keys().next() {
            Some(k) if self.matrices.len() == 1 => Ok(k),
            _ => Err(field("domain", "no domain matrix declared")),
        }
    }

    fn codomain_name(&self) -> Result<&str, LoadError> {
        if let Some(c) = &self.codomain {
            return Ok(c);
        }
        if self.matrices.contains_key("delta_mu") {
            return Ok("delta_mu");
        }
        self.domain_name()
    }

    /// `(Δ_dom, Δ_cod)` for transition commands.
    pub fn pair(&self) -> Result<(&ConnectionMatrix, &ConnectionMatrix), LoadError> {
        let (_, d) = self.matrix(Some(self.domain_name()?))?;
        let (_, c) = self.matrix(Some(self.codomain_name()?))?;
        Ok((d, c))
    }

    /// Label used for generator `i` in reports: the element label when every
    /// element carries exactly one generator, the generator label otherwise.
    pub fn position_label(&self, i: usize) -> String {
        position_label(&self.basis, i)
    }
}

pub fn position_label(basis: &GradedBasis, i: usize) -> String {
    let order = basis.order();
    let one_each = order.len() == basis.len()
        && (0..order.len()).all(|p| basis.indices_in(&Interval::singleton(p)).len() == 1);
    if one_each {
        order.label(basis.element(i)).to_string()
    } else {
        basis.generator(i).label.clone()
    }
}

// ---------------------------------------------------------------------------
// Loading

pub fn load(path: impl AsRef<Path>) -> Result<Instance, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Instance, LoadError> {
    let raw: InstanceFile = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.into_instance()
}

fn build_poset(
    section: &PosetSection,
    field_name: &str,
) -> Result<FinitePoset, LoadError> {
    let relations: Vec<(&str, &str)> = section
        .relations
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    FinitePoset::from_labels(&section.elements.iter().map(String::as_str).collect::<Vec<_>>(), &relations)
        .map_err(|e| field(field_name, e))
}

fn build_basis(
    order: FinitePoset,
    generators: &[(String, String, u32)],
    field_name: &str,
) -> Result<GradedBasis, LoadError> {
    let gens = generators
        .iter()
        .map(|(label, element, degree)| {
            let e = order.index_of(element).ok_or_else(|| {
                field(
                    field_name,
                    format!("generator `{label}` refers to unknown element `{element}`"),
                )
            })?;
            Ok(Generator::new(label.clone(), e, *degree))
        })
        .collect::<Result<Vec<_>, LoadError>>()?;
    GradedBasis::new(order, gens).map_err(|e| field(field_name, e))
}

fn labelled_matrix(
    basis: &GradedBasis,
    entries: &[(String, String)],
    field_name: &str,
) -> Result<Gf2Matrix, LoadError> {
    let n = basis.len();
    let mut m = Gf2Matrix::zeros(n, n);
    for (row, col) in entries {
        let lookup = |l: &str| {
            basis
                .index_of(l)
                .ok_or_else(|| field(field_name, format!("unknown generator `{l}`")))
        };
        let (r, c) = (lookup(row)?, lookup(col)?);
        if m.get(r, c) {
            return Err(field(field_name, format!("duplicate entry ({row}, {col})")));
        }
        m.set(r, c, true);
    }
    Ok(m)
}

fn index_matrix(
    dim: usize,
    entries: Option<&[(usize, usize)]>,
    field_name: &str,
) -> Result<Gf2Matrix, LoadError> {
    let Some(entries) = entries else {
        return Ok(Gf2Matrix::identity(dim));
    };
    let mut m = Gf2Matrix::zeros(dim, dim);
    for &(r, c) in entries {
        if r >= dim || c >= dim {
            return Err(field(
                field_name,
                format!("entry ({r}, {c}) outside a {dim}x{dim} matrix"),
            ));
        }
        m.set(r, c, true);
    }
    Ok(m)
}

/// Names every failed check of a candidate connection matrix by its
/// offending entries.
pub fn describe_validation(basis: &GradedBasis, m: &Gf2Matrix) -> Option<String> {
    let report = check_connection_matrix(basis, m).ok()?;
    if report.is_valid() {
        return None;
    }
    let label = |&(r, c): &(usize, usize)| {
        format!(
            "({}, {})",
            basis.generator(r).label,
            basis.generator(c).label
        )
    };
    let mut parts = Vec::new();
    for (name, entries) in [
        ("degree", &report.degree),
        ("triangularity", &report.triangularity),
        ("boundary", &report.boundary),
    ] {
        if !entries.is_empty() {
            let list: Vec<String> = entries.iter().map(label).collect();
            parts.push(format!("{name} check fails at {}", list.join(", ")));
        }
    }
    Some(parts.join("; "))
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance, LoadError> {
        if self.schema != SCHEMA {
            return Err(LoadError::Schema(self.schema));
        }
        let order = build_poset(&self.poset, "poset")?;
        let minimal_order = match &self.minimal_order {
            None => None,
            Some(relations) => {
                let section = PosetSection {
                    elements: self.poset.elements.clone(),
                    relations: relations.clone(),
                };
                Some(build_poset(&section, "minimal_order")?)
            }
        };
        let basis = build_basis(order.clone(), &self.generators, "generators")?;

        let mut matrices = BTreeMap::new();
        for (name, entries) in &self.matrices {
            let f = format!("matrices.{name}");
            let m = labelled_matrix(&basis, entries, &f)?;
            if let Some(msg) = describe_validation(&basis, &m) {
                return Err(field(f, msg));
            }
            let cm = ConnectionMatrix::new(basis.clone(), m).map_err(|e| field(&f, e))?;
            matrices.insert(name.clone(), cm);
        }
        for (key, name) in [("domain", &self.domain), ("codomain", &self.codomain)] {
            if let Some(name) = name {
                if !matrices.contains_key(name) {
                    return Err(field(key, format!("no matrix named `{name}`")));
                }
            }
        }

        let transition = match &self.transition {
            None => None,
            Some(entries) => {
                let m = labelled_matrix(&basis, entries, "transition")?;
                Some(
                    TransitionCandidate::new(basis.clone(), basis.clone(), m)
                        .map_err(|e| field("transition", e))?,
                )
            }
        };

        let cover = match &self.cover {
            None => None,
            Some(sections) => {
                let mut cover = CoverData::new();
                for (i, s) in sections.iter().enumerate() {
                    let f = format!("cover[{i}]");
                    let interval = order
                        .interval_by_labels(&s.interval)
                        .map_err(|e| field(&f, e))?;
                    let entry = CoverEntry {
                        phi_domain: index_matrix(s.dim, s.phi_domain.as_deref(), &format!("{f}.phi_domain"))?,
                        phi_codomain: index_matrix(s.dim, s.phi_codomain.as_deref(), &format!("{f}.phi_codomain"))?,
                        theta: index_matrix(s.dim, s.theta.as_deref(), &format!("{f}.theta"))?,
                    };
                    if cover.insert(interval, entry).is_some() {
                        return Err(field(f, "interval listed twice"));
                    }
                }
                Some(cover)
            }
        };

        let singular = match &self.singular {
            None => None,
            Some(s) => {
                let order = build_poset(&s.poset, "singular.poset")?;
                let basis = build_basis(order, &s.generators, "singular.generators")?;
                let fixed = labelled_matrix(&basis, &s.entries, "singular.entries")?;
                let star = labelled_matrix(&basis, std::slice::from_ref(&s.star), "singular.star")?;
                let star = star.entries()[0];
                if fixed.get(star.0, star.1) {
                    return Err(field("singular.star", "unknown entry also listed as fixed"));
                }
                Some(Singular { basis, fixed, star })
            }
        };

        let morse = self.morse.as_ref().map(|m| MorseData {
            points: m
                .points
                .iter()
                .map(|(l, k)| CriticalPoint::new(l.clone(), *k))
                .collect(),
            incidence: m.incidence.clone(),
            value_order: m.value_order.clone(),
        });

        let blocks = match &self.blocks {
            None => None,
            Some(sections) => {
                let mut blocks = BTreeMap::new();
                for s in sections {
                    let f = format!("blocks[{}]", s.index);
                    let mut m = Gf2Matrix::zeros(s.size, s.size);
                    for &(r, c) in &s.entries {
                        if r >= s.size || c >= s.size {
                            return Err(field(&f, format!("entry ({r}, {c}) outside the block")));
                        }
                        m.set(r, c, true);
                    }
                    if blocks.insert(s.index, m).is_some() {
                        return Err(field(f, "index listed twice"));
                    }
                }
                Some(BlockTransition { blocks })
            }
        };

        let expected_pages = match &self.expected_pages {
            None => None,
            Some(e) => {
                if !matrices.contains_key(&e.matrix) {
                    return Err(field(
                        "expected_pages.matrix",
                        format!("no matrix named `{}`", e.matrix),
                    ));
                }
                let pages = e
                    .pages
                    .iter()
                    .map(|p| SpectralPage {
                        stage: p.stage,
                        dims: p.dims.iter().map(|&(p, k, d)| ((p, k), d)).filter(|(_, d)| *d > 0).collect(),
                        differential_ranks: p
                            .ranks
                            .iter()
                            .map(|&(p, k, d)| ((p, k), d))
                            .filter(|(_, d)| *d > 0)
                            .collect(),
                    })
                    .collect();
                Some(ExpectedPages {
                    matrix: e.matrix.clone(),
                    pages,
                })
            }
        };

        Ok(Instance {
            name: self.name,
            basis,
            minimal_order,
            matrices,
            domain: self.domain,
            codomain: self.codomain,
            transition,
            cover,
            assumptions: self.assumptions,
            singular,
            morse,
            blocks,
            expected_pages,
        })
    }
}

// ---------------------------------------------------------------------------
// Saving

fn poset_section(order: &FinitePoset) -> PosetSection {
    PosetSection {
        elements: order.labels().to_vec(),
        relations: relation_labels(order),
    }
}

fn relation_labels(order: &FinitePoset) -> Vec<(String, String)> {
    order
        .cover_relations()
        .into_iter()
        .map(|(a, b)| (order.label(a).to_string(), order.label(b).to_string()))
        .collect()
}

fn generator_triples(basis: &GradedBasis) -> Vec<(String, String, u32)> {
    basis
        .generators()
        .iter()
        .map(|g| {
            (
                g.label.clone(),
                basis.order().label(g.element).to_string(),
                g.degree,
            )
        })
        .collect()
}

fn entry_labels(basis: &GradedBasis, m: &Gf2Matrix) -> Vec<(String, String)> {
    m.entries()
        .into_iter()
        .map(|(r, c)| {
            (
                basis.generator(r).label.clone(),
                basis.generator(c).label.clone(),
            )
        })
        .collect()
}

/// Identity matrices are omitted from cover entries.
fn index_entries(m: &Gf2Matrix) -> Option<Vec<(usize, usize)>> {
    (*m != Gf2Matrix::identity(m.rows())).then(|| m.entries())
}

impl Instance {
    pub fn to_file(&self) -> InstanceFile {
        let order = self.order();
        InstanceFile {
            schema: SCHEMA,
            name: self.name.clone(),
            poset: poset_section(order),
            minimal_order: self.minimal_order.as_ref().map(relation_labels),
            generators: generator_triples(&self.basis),
            matrices: self
                .matrices
                .iter()
                .map(|(k, m)| (k.clone(), entry_labels(&self.basis, m.matrix())))
                .collect(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            transition: self
                .transition
                .as_ref()
                .map(|t| entry_labels(&self.basis, t.matrix())),
            cover: self.cover.as_ref().map(|c| {
                c.entries()
                    .map(|(interval, e)| CoverSection {
                        interval: interval
                            .members()
                            .iter()
                            .map(|&p| order.label(p).to_string())
                            .collect(),
                        dim: e.theta.rows(),
                        phi_domain: index_entries(&e.phi_domain),
                        phi_codomain: index_entries(&e.phi_codomain),
                        theta: index_entries(&e.theta),
                    })
                    .collect()
            }),
            assumptions: self.assumptions.clone(),
            singular: self.singular.as_ref().map(|s| SingularSection {
                poset: poset_section(s.basis.order()),
                generators: generator_triples(&s.basis),
                entries: entry_labels(&s.basis, &s.fixed),
                star: (
                    s.basis.generator(s.star.0).label.clone(),
                    s.basis.generator(s.star.1).label.clone(),
                ),
            }),
            morse: self.morse.as_ref().map(|m| MorseSection {
                points: m.points.iter().map(|p| (p.label.clone(), p.index)).collect(),
                incidence: m.incidence.clone(),
                value_order: m.value_order.clone(),
            }),
            blocks: self.blocks.as_ref().map(|b| {
                b.blocks
                    .iter()
                    .map(|(&index, m)| BlockSection {
                        index,
                        size: m.rows(),
                        entries: m.entries(),
                    })
                    .collect()
            }),
            expected_pages: self.expected_pages.as_ref().map(|e| ExpectedPagesSection {
                matrix: e.matrix.clone(),
                pages: e.pages.iter().map(page_section).collect(),
            }),
        }
    }

    /// Canonical text: [`to_json`] of the file layout.
    pub fn to_json(&self) -> String {
        to_json(&serde_json::to_value(self.to_file()).expect("plain data serializes"))
    }
}

pub fn page_section(page: &SpectralPage) -> PageSection {
    PageSection {
        stage: page.stage,
        dims: page.dims.iter().map(|(&(p, k), &d)| (p, k, d)).collect(),
        ranks: page
            .differential_ranks
            .iter()
            .map(|(&(p, k), &d)| (p, k, d))
            .collect(),
    }
}

pub fn save(instance: &Instance, path: impl AsRef<Path>) -> Result<(), LoadError> {
    let path = path.as_ref();
    fs::write(path, instance.to_json()).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Pretty JSON with two-space indentation where arrays of scalars stay on
/// one line, so sparse entry lists read one entry per line.
pub fn to_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_arrays() {
        let v: Value = serde_json::from_str(r#"{"a": [[1, 2], [3, 4]], "b": [], "c": {}}"#).unwrap();
        assert_eq!(
            to_json(&v),
            "{\n  \"a\": [\n    [1, 2],\n    [3, 4]\n  ],\n  \"b\": [],\n  \"c\": {}\n}\n"
        );
    }

    #[test]
    fn empty_instance() {
        let inst = parse(r#"{"schema": 1, "poset": {"elements": []}, "generators": []}"#).unwrap();
        assert!(inst.basis.is_empty());
        assert_eq!(parse(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn degree_violation_is_named() {
        let text = r#"{
          "schema": 1,
          "poset": {"elements": ["1", "2"], "relations": [["1", "2"]]},
          "generators": [["a", "1", 0], ["b", "2", 0]],
          "matrices": {"delta": [["a", "b"]]}
        }"#;
        let err = parse(text).unwrap_err().to_string();
        assert_eq!(err, "matrices.delta: degree check fails at (a, b)");
    }

    #[test]
    fn parse_errors_are_located() {
        let err = parse("{\n  \"schema\": 1,\n  \"poset\": 3\n}").unwrap_err();
        assert!(matches!(err, LoadError::Parse { line: 3, .. }), "{err}");
        let err = parse(r#"{"schema": 2, "poset": {"elements": []}}"#).unwrap_err();
        assert!(matches!(err, LoadError::Schema(2)));
        let err = parse(r#"{"schema": 1, "poset": {"elements": ["1"]}, "generators": [["g", "9", 0]]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("unknown element `9`"), "{err}");
    }
}
