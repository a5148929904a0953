//! The exact Hurwitz number table and its versioned JSON document.
//!
//! The JSON layout is shared by the CLI cache and the test fixtures:
//!
//! ```json
//! {"schema_version": 1, "gmax": 1, "dmax": 2,
//!  "entries": [{"g": 0, "d": 1, "H": "1"}, …]}
//! ```
//!
//! Rationals are serialized as `p/q` strings in lowest terms (`/q` omitted
//! when the denominator is 1). Unknown schema versions are rejected, never
//! coerced.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rat, parse_rat, Rat};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    SchemaVersion { found: u32 },
    #[error("missing entry H({g},{d})")]
    MissingEntry { g: u32, d: u32 },
    #[error("entry H({g},{d}) outside declared bounds gmax={gmax}, dmax={dmax}")]
    EntryOutOfBounds { g: u32, d: u32, gmax: u32, dmax: u32 },
    #[error("invalid rational for H({g},{d}): {source}")]
    BadRational {
        g: u32,
        d: u32,
        source: crate::rational::ParseRatError,
    },
    #[error("malformed table JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exact table of Hurwitz numbers keyed by (genus, degree), complete on the
/// rectangle g ≤ gmax, 1 ≤ d ≤ dmax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzTable {
    gmax: u32,
    dmax: u32,
    entries: BTreeMap<(u32, u32), Rat>,
}

impl HurwitzTable {
    /// An empty table with declared bounds; callers fill every cell.
    pub fn new(gmax: u32, dmax: u32) -> Self {
        assert!(dmax >= 1, "a Hurwitz table needs at least degree 1");
        HurwitzTable {
            gmax,
            dmax,
            entries: BTreeMap::new(),
        }
    }

    pub fn gmax(&self) -> u32 {
        self.gmax
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn insert(&mut self, g: u32, d: u32, value: Rat) {
        assert!(
            g <= self.gmax && (1..=self.dmax).contains(&d),
            "H({g},{d}) outside table bounds"
        );
        self.entries.insert((g, d), value);
    }

    pub fn get(&self, g: u32, d: u32) -> Result<&Rat, TableError> {
        self.entries
            .get(&(g, d))
            .ok_or(TableError::MissingEntry { g, d })
    }

    /// Entries in (g, d) order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.entries.iter().map(|(&(g, d), v)| (g, d, v))
    }

    pub fn to_json_string(&self) -> String {
        let doc = TableDoc {
            schema_version: SCHEMA_VERSION,
            gmax: self.gmax,
            dmax: self.dmax,
            entries: self
                .iter()
                .map(|(g, d, v)| EntryDoc {
                    g,
                    d,
                    h: format_rat(v),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serialization is infallible")
    }

    pub fn from_json_str(text: &str) -> Result<Self, TableError> {
        let doc: TableDoc = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(TableError::SchemaVersion {
                found: doc.schema_version,
            });
        }
        let mut table = HurwitzTable::new(doc.gmax, doc.dmax);
        for entry in doc.entries {
            if entry.g > doc.gmax || entry.d < 1 || entry.d > doc.dmax {
                return Err(TableError::EntryOutOfBounds {
                    g: entry.g,
                    d: entry.d,
                    gmax: doc.gmax,
                    dmax: doc.dmax,
                });
            }
            let value = parse_rat(&entry.h).map_err(|source| TableError::BadRational {
                g: entry.g,
                d: entry.d,
                source,
            })?;
            table.insert(entry.g, entry.d, value);
        }
        // A cache is only usable if it is complete on its rectangle.
        for g in 0..=doc.gmax {
            for d in 1..=doc.dmax {
                table.get(g, d)?;
            }
        }
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    schema_version: u32,
    gmax: u32,
    dmax: u32,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    g: u32,
    d: u32,
    #[serde(rename = "H")]
    h: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn sample() -> HurwitzTable {
        let mut t = HurwitzTable::new(1, 2);
        t.insert(0, 1, rat_int(1));
        t.insert(0, 2, rat(1, 2));
        t.insert(1, 1, rat_int(0));
        t.insert(1, 2, rat(1, 2));
        t
    }

    #[test]
    fn json_round_trip_is_identical() {
        let t = sample();
        let text = t.to_json_string();
        let back = HurwitzTable::from_json_str(&text).unwrap();
        assert_eq!(back, t);
        // Re-serializing produces byte-identical output.
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn unknown_schema_version_is_rejected() {
        let text = sample()
            .to_json_string()
            .replace("\"schema_version\": 1", "\"schema_version\": 2");
        match HurwitzTable::from_json_str(&text) {
            Err(TableError::SchemaVersion { found: 2 }) => {}
            other => panic!("expected schema rejection, got {other:?}"),
        }
    }

    #[test]
    fn incomplete_table_is_rejected() {
        let mut t = sample();
        t.entries.remove(&(1, 2));
        let text = t.to_json_string();
        match HurwitzTable::from_json_str(&text) {
            Err(TableError::MissingEntry { g: 1, d: 2 }) => {}
            other => panic!("expected missing-entry error, got {other:?}"),
        }
    }

    #[test]
    fn garbage_rational_is_rejected() {
        let text = sample().to_json_string().replace("\"1/2\"", "\"1/0\"");
        assert!(matches!(
            HurwitzTable::from_json_str(&text),
            Err(TableError::BadRational { .. })
        ));
    }
}
