//! Vertex multiplicities: the multinomial closed form in genus 0 and a
//! fixture table for positive genus.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorial, Rational};

/// Signature of a vertex: genus, leak, signed local degrees (inbound
/// positive) and the psi-exponent of each slot. Slots are kept sorted by
/// `(degree, psi)` so that relabelling the slots does not change the key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexKey {
    genus: u32,
    k: i64,
    degrees: Vec<i64>,
    psi: Vec<u32>,
}

impl VertexKey {
    pub fn new(genus: u32, k: i64, degrees: Vec<i64>, psi: Vec<u32>) -> Result<Self, FixtureError> {
        if degrees.len() != psi.len() {
            return Err(FixtureError::SlotMismatch {
                degrees: degrees.len(),
                psi: psi.len(),
            });
        }
        let mut slots: Vec<(i64, u32)> = degrees.into_iter().zip(psi).collect();
        slots.sort_unstable();
        let (degrees, psi) = slots.into_iter().unzip();
        Ok(VertexKey { genus, k, degrees, psi })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn psi(&self) -> &[u32] {
        &self.psi
    }

    pub fn valence(&self) -> usize {
        self.degrees.len()
    }

    /// Whether degree sum and psi total match the vertex's dimension count.
    pub fn is_consistent(&self) -> bool {
        let val = self.valence() as i64;
        let g = self.genus as i64;
        let psi_total: i64 = self.psi.iter().map(|&e| e as i64).sum();
        self.degrees.iter().sum::<i64>() == self.k * (2 * g - 2 + val) && psi_total == val - 3 + 2 * g
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "genus={} k={} degrees={:?} psi={:?}",
            self.genus, self.k, self.degrees, self.psi
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no vertex multiplicity available for {key}")]
pub struct MissingVertexData {
    pub key: VertexKey,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed fixture data: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("degree and psi vectors differ in length ({degrees} vs {psi})")]
    SlotMismatch { degrees: usize, psi: usize },
    #[error("conflicting values {first} and {second} for {key}")]
    Conflict {
        key: VertexKey,
        first: Rational,
        second: Rational,
    },
}

/// Source of vertex multiplicities. Implementations are shared read-only
/// across enumeration workers.
pub trait VertexOracle: Sync {
    fn vertex_mult(&self, key: &VertexKey) -> Result<Rational, MissingVertexData>;
}

/// `(val-3)! / prod e_i!`, the genus-0 vertex multiplicity. Zero when the
/// psi total does not match `val - 3`.
pub fn genus_zero_mult(valence: usize, psi: &[u32]) -> Rational {
    let total: u32 = psi.iter().sum();
    if valence < 3 || total as usize != valence - 3 {
        return Rational::zero();
    }
    let mut out = factorial(total);
    for &e in psi {
        out = &out / &factorial(e);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct FixtureRecord {
    genus: u32,
    k: i64,
    degrees: Vec<i64>,
    psi: Vec<u32>,
    value: Rational,
}

/// Positive-genus vertex multiplicities keyed by canonical [`VertexKey`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureTable {
    entries: HashMap<VertexKey, Rational>,
}

const DEFAULT_FIXTURES: &str = include_str!("../fixtures/default.json");

impl FixtureTable {
    pub fn empty() -> Self {
        FixtureTable::default()
    }

    /// The table shipped with the crate.
    pub fn builtin() -> Self {
        FixtureTable::from_json_str(DEFAULT_FIXTURES).expect("built-in fixture file is well formed")
    }

    pub fn from_json_str(text: &str) -> Result<Self, FixtureError> {
        let mut table = FixtureTable::empty();
        if text.trim().is_empty() {
            return Ok(table);
        }
        let records: Vec<FixtureRecord> = serde_json::from_str(text)?;
        for r in records {
            let key = VertexKey::new(r.genus, r.k, r.degrees, r.psi)?;
            table.insert(key, r.value)?;
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FixtureError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
            path: path.display().to_string(),
            source,
        })?;
        FixtureTable::from_json_str(&text)
    }

    pub fn insert(&mut self, key: VertexKey, value: Rational) -> Result<(), FixtureError> {
        match self.entries.entry(key) {
            Entry::Vacant(v) => {
                v.insert(value);
                Ok(())
            }
            Entry::Occupied(o) if *o.get() == value => Ok(()),
            Entry::Occupied(o) => Err(FixtureError::Conflict {
                key: o.key().clone(),
                first: o.get().clone(),
                second: value,
            }),
        }
    }

    /// Adds every entry of `other`; conflicting values are rejected.
    pub fn extend(&mut self, other: FixtureTable) -> Result<(), FixtureError> {
        for (k, v) in other.entries {
            self.insert(k, v)?;
        }
        Ok(())
    }

    pub fn get(&self, key: &VertexKey) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json_string(&self) -> String {
        let mut keys: Vec<&VertexKey> = self.entries.keys().collect();
        keys.sort();
        let records: Vec<FixtureRecord> = keys
            .into_iter()
            .map(|k| FixtureRecord {
                genus: k.genus,
                k: k.k,
                degrees: k.degrees.clone(),
                psi: k.psi.clone(),
                value: self.entries[k].clone(),
            })
            .collect();
        serde_json::to_string_pretty(&records).expect("fixture records serialize")
    }
}

/// Genus 0 by the closed form, positive genus from a fixture table.
#[derive(Clone, Debug, Default)]
pub struct FixtureOracle {
    table: FixtureTable,
}

impl FixtureOracle {
    pub fn new(table: FixtureTable) -> Self {
        FixtureOracle { table }
    }

    pub fn builtin() -> Self {
        FixtureOracle::new(FixtureTable::builtin())
    }

    pub fn table(&self) -> &FixtureTable {
        &self.table
    }
}

impl VertexOracle for FixtureOracle {
    fn vertex_mult(&self, key: &VertexKey) -> Result<Rational, MissingVertexData> {
        if key.genus == 0 {
            return Ok(genus_zero_mult(key.valence(), &key.psi));
        }
        self.table
            .get(key)
            .cloned()
            .ok_or_else(|| MissingVertexData { key: key.clone() })
    }
}
