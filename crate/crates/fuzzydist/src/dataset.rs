//! Labeled attribute tables and their journey into fuzzy sets.
//!
//! A [`Dataset`] is entities × attributes of raw numbers, loaded from CSV.
//! Raw values become membership grades either by per-column min-max
//! normalization ([`Dataset::normalize_minmax`]) or, when the data already
//! lives in [0, 1], by declaring it so ([`Dataset::into_memberships`]).
//! [`Dataset::to_fuzzy_sets`] then yields one labeled [`FuzzySet`] per
//! entity, ready for the distance machinery.
//!
//! The crate ships one embedded table, [`Dataset::table1`]: 28 European
//! countries × 10 survey attributes of trust/satisfaction scores, already
//! scaled to [0, 1]. It is the worked example used throughout the docs and
//! the default input of the CLI.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::set::{Domain, FuzzySet};

/// The embedded survey table (see [`Dataset::table1`]).
const TABLE1_CSV: &str = include_str!("../../../data/ess_round4_table1.csv");

/// A table of named entities (rows) × named attributes (columns).
///
/// `raw` always holds the loaded values. `normalized` — the membership
/// grades — appears after [`Dataset::normalize_minmax`] or
/// [`Dataset::into_memberships`], and is what [`Dataset::to_fuzzy_sets`]
/// reads.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    entity_labels: Vec<String>,
    attribute_labels: Vec<String>,
    raw: Vec<Vec<f64>>,
    normalized: Option<Vec<Vec<f64>>>,
}

impl Dataset {
    /// Parses CSV: first column entity names, remaining columns numbers.
    /// With `has_header`, the first line names the attributes (its first
    /// cell is ignored); otherwise attributes are named `attr1..attrN`.
    ///
    /// Accepts LF or CRLF endings and quoted names. Error positions count
    /// rows from 1 *including* the header line, and columns from 1
    /// *including* the name column — exactly what an editor shows.
    ///
    /// # Errors
    ///
    /// [`Error::EmptyDataset`] for no data rows; [`Error::RaggedRow`],
    /// [`Error::NumberParse`], [`Error::NotFinite`] with positions;
    /// [`Error::DuplicateEntity`] for a repeated name; [`Error::Csv`] for
    /// malformed CSV framing.
    pub fn from_csv_reader<R: Read>(reader: R, has_header: bool) -> Result<Dataset> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(reader);

        let mut records = csv_reader.records();
        let mut row = 0usize;

        let mut attribute_labels: Option<Vec<String>> = None;
        if has_header {
            match records.next() {
                None => return Err(Error::EmptyDataset),
                Some(header) => {
                    row += 1;
                    let header = header?;
                    attribute_labels =
                        Some(header.iter().skip(1).map(str::to_string).collect());
                }
            }
        }

        let mut entity_labels: Vec<String> = Vec::new();
        let mut raw: Vec<Vec<f64>> = Vec::new();
        for record in records {
            row += 1;
            let record = record?;
            let expected = attribute_labels.as_ref().map(|a| a.len() + 1);
            match expected {
                Some(width) if record.len() != width => {
                    return Err(Error::RaggedRow { row, expected: width, got: record.len() });
                }
                None => {
                    if record.len() < 2 {
                        return Err(Error::RaggedRow { row, expected: 2, got: record.len() });
                    }
                    attribute_labels =
                        Some((1..record.len()).map(|i| format!("attr{i}")).collect());
                }
                _ => {}
            }

            let name = record.get(0).unwrap_or("").to_string();
            if entity_labels.contains(&name) {
                return Err(Error::DuplicateEntity(name));
            }
            let mut values = Vec::with_capacity(record.len() - 1);
            for (field_idx, text) in record.iter().enumerate().skip(1) {
                let col = field_idx + 1;
                let value: f64 = text.trim().parse().map_err(|_| Error::NumberParse {
                    row,
                    col,
                    text: text.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(Error::NotFinite { row, col, value });
                }
                values.push(value);
            }
            entity_labels.push(name);
            raw.push(values);
        }

        if raw.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let attribute_labels = attribute_labels.expect("set by header or first data row");
        Ok(Dataset { entity_labels, attribute_labels, raw, normalized: None })
    }

    /// [`Dataset::from_csv_reader`] on a file, with the path attached to
    /// any I/O error.
    ///
    /// # Errors
    ///
    /// As [`Dataset::from_csv_reader`], plus [`Error::Io`] naming `path`.
    pub fn from_csv_path<P: AsRef<Path>>(path: P, has_header: bool) -> Result<Dataset> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Dataset::from_csv_reader(std::io::BufReader::new(file), has_header)
    }

    /// Writes the table as CSV with a header line; `name` heads the entity
    /// column. Values are printed with however many digits an exact
    /// re-parse needs, so `from_csv_reader` on the output reproduces the
    /// labels and raw values identically. (The normalization cache is a
    /// derived artifact and is not serialized.)
    ///
    /// # Errors
    ///
    /// I/O or CSV-formatting failures from the writer.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        let header =
            std::iter::once("name".to_string()).chain(self.attribute_labels.iter().cloned());
        out.write_record(header)?;
        for (name, values) in self.entity_labels.iter().zip(&self.raw) {
            let record =
                std::iter::once(name.clone()).chain(values.iter().map(|v| v.to_string()));
            out.write_record(record)?;
        }
        out.flush().map_err(Error::from)?;
        Ok(())
    }

    /// Entity (row) names, in order.
    pub fn entity_labels(&self) -> &[String] {
        &self.entity_labels
    }

    /// Attribute (column) names, in order.
    pub fn attribute_labels(&self) -> &[String] {
        &self.attribute_labels
    }

    /// The loaded values, entities × attributes.
    pub fn raw(&self) -> &[Vec<f64>] {
        &self.raw
    }

    /// The membership grades, once normalization has happened.
    pub fn normalized(&self) -> Option<&[Vec<f64>]> {
        self.normalized.as_deref()
    }

    /// Number of entities (rows).
    pub fn n_entities(&self) -> usize {
        self.entity_labels.len()
    }

    /// Number of attributes (columns).
    pub fn n_attributes(&self) -> usize {
        self.attribute_labels.len()
    }

    /// Row position of the entity named `name`, if present.
    pub fn entity_index(&self, name: &str) -> Option<usize> {
        self.entity_labels.iter().position(|l| l == name)
    }

    /// Rescales every attribute column onto [0, 1] by min-max:
    /// `v ← (v − min) / (max − min)`, so each non-constant column attains
    /// exactly 0 and exactly 1. A constant column carries no information
    /// and maps to 0.5 everywhere. The result is stored as the
    /// `normalized` grades; `raw` is kept as loaded.
    ///
    /// Applying this twice equals applying it once: the second pass sees
    /// columns whose extremes are exactly 0 and 1 and rescales by nothing.
    pub fn normalize_minmax(&self) -> Dataset {
        let n_cols = self.n_attributes();
        let mut normalized = self.raw.clone();
        for col in 0..n_cols {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for row in &self.raw {
                min = min.min(row[col]);
                max = max.max(row[col]);
            }
            for (row_out, row_in) in normalized.iter_mut().zip(&self.raw) {
                row_out[col] =
                    if min == max { 0.5 } else { (row_in[col] - min) / (max - min) };
            }
        }
        Dataset { normalized: Some(normalized), ..self.clone() }
    }

    /// Declares the raw values to already *be* membership grades, after
    /// checking every one lies in [0, 1]. Use this for tables that arrive
    /// pre-scaled; use [`Dataset::normalize_minmax`] for everything else.
    ///
    /// # Errors
    ///
    /// [`Error::NotMembership`] naming the first offending entity and
    /// attribute.
    pub fn into_memberships(self) -> Result<Dataset> {
        for (i, row) in self.raw.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&value) {
                    return Err(Error::NotMembership {
                        entity: self.entity_labels[i].clone(),
                        attribute: self.attribute_labels[j].clone(),
                        value,
                    });
                }
            }
        }
        let normalized = Some(self.raw.clone());
        Ok(Dataset { normalized, ..self })
    }

    /// One labeled fuzzy set per entity, over the shared attribute domain,
    /// with that entity's normalized row as its membership function.
    ///
    /// # Errors
    ///
    /// [`Error::NotNormalized`] if no membership grades exist yet — call
    /// [`Dataset::normalize_minmax`] or [`Dataset::into_memberships`]
    /// first. (Construction of the sets themselves cannot fail: normalized
    /// values are in [0, 1] by construction.)
    pub fn to_fuzzy_sets(&self) -> Result<Vec<(String, FuzzySet)>> {
        let normalized = self.normalized.as_ref().ok_or(Error::NotNormalized)?;
        let domain = Domain::labeled(self.attribute_labels.clone())?;
        self.entity_labels
            .iter()
            .zip(normalized)
            .map(|(name, row)| {
                FuzzySet::new(domain.clone(), row.clone()).map(|set| (name.clone(), set))
            })
            .collect()
    }

    /// The embedded example table: 28 European countries × 10 survey
    /// attributes (trust in institutions, satisfaction with life, economy,
    /// government, health services, …), each country's row forming a fuzzy
    /// set over the attribute domain. Values are already membership grades
    /// in [0, 1] at two-decimal precision.
    ///
    /// Two attribute names in the original table coincide (trust in one's
    /// own parliament appears twice at different survey granularity); they
    /// are disambiguated as `country_GOV_a` and `country_GOV_b` to keep
    /// domain labels distinct.
    pub fn table1() -> Dataset {
        Dataset::from_csv_reader(TABLE1_CSV.as_bytes(), true)
            .and_then(Dataset::into_memberships)
            .expect("the embedded table is well-formed")
    }

    /// True once membership grades are available.
    pub fn has_memberships(&self) -> bool {
        self.normalized.is_some()
    }
}
