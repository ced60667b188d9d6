//! The published tables, compiled in as CSV and checked against recorded
//! digests so a transcription slip shows up as a fixture error.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::characters::DirichletCharacter;
use crate::classify::{classify, is_infinite_family, BoundSpec, ClassifyOptions, Entry, SpaceKind};
use crate::dimfull::dim_full;
use crate::dimnew::dim_new_explicit;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TableId {
    #[serde(rename = "2.1")]
    T2_1,
    #[serde(rename = "2.2")]
    T2_2,
    #[serde(rename = "2.3")]
    T2_3,
    #[serde(rename = "6.1")]
    T6_1,
    #[serde(rename = "6.2")]
    T6_2,
}

impl TableId {
    pub const ALL: [TableId; 5] = [
        TableId::T2_1,
        TableId::T2_2,
        TableId::T2_3,
        TableId::T6_1,
        TableId::T6_2,
    ];

    pub fn parse(s: &str) -> Option<TableId> {
        TableId::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            TableId::T2_1 => "2.1",
            TableId::T2_2 => "2.2",
            TableId::T2_3 => "2.3",
            TableId::T6_1 => "6.1",
            TableId::T6_2 => "6.2",
        }
    }

    pub fn kind(self) -> SpaceKind {
        match self {
            TableId::T2_1 | TableId::T2_2 | TableId::T2_3 => SpaceKind::Full,
            TableId::T6_1 | TableId::T6_2 => SpaceKind::New,
        }
    }

    /// The dimension every listed space has.
    pub fn implied_dim(self) -> i64 {
        match self {
            TableId::T2_1 | TableId::T6_1 => 0,
            TableId::T2_2 | TableId::T6_2 => 1,
            TableId::T2_3 => 2,
        }
    }

    fn source(self) -> (&'static str, &'static str) {
        match self {
            TableId::T2_1 => (
                include_str!("../../fixtures/table_2_1.csv"),
                "87e5570073349dacdefd6c8beceb28e1b88b2849c5114b96e6f07bacc7920cf5",
            ),
            TableId::T2_2 => (
                include_str!("../../fixtures/table_2_2.csv"),
                "2eb246e723cfcda93867e84ed6fd339691c8fd04de9abe05d5f456fbc412aaae",
            ),
            TableId::T2_3 => (
                include_str!("../../fixtures/table_2_3.csv"),
                "ed342caa2d7cc996914ead000a33469cf91b9a912f51cb090a3eee2755aeea57",
            ),
            TableId::T6_1 => (
                include_str!("../../fixtures/table_6_1.csv"),
                "879c60bdc603b4ee315e40fecf0999c6a3152058a6ffc0bcede45d0231e7bb43",
            ),
            TableId::T6_2 => (
                include_str!("../../fixtures/table_6_2.csv"),
                "a2cff8606c4f14c2000fc43377f858a8b04c16cfb6c937ac0c7c38f49fa27a32",
            ),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Clone, Debug)]
pub struct TableFixture {
    pub id: TableId,
    /// `(N, k, conrey)` in file order.
    pub rows: Vec<(u64, u64, u64)>,
    pub implied_dim: i64,
}

impl TableFixture {
    /// The embedded table, after checking its digest.
    pub fn load(id: TableId) -> Result<TableFixture> {
        let (text, digest) = id.source();
        let actual = sha256_hex(text.as_bytes());
        if actual != digest {
            return Err(Error::Fixture {
                name: id.to_string(),
                reason: format!("sha256 {actual} differs from recorded {digest}"),
            });
        }
        TableFixture::from_csv(id, text)
    }

    /// Parse `N,k,conrey` rows without a digest check.
    pub fn from_csv(id: TableId, text: &str) -> Result<TableFixture> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["N", "k", "conrey"] {
            return Err(Error::Fixture {
                name: id.to_string(),
                reason: format!("unexpected header {headers:?}"),
            });
        }
        let rows = reader
            .deserialize::<(u64, u64, u64)>()
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TableFixture {
            id,
            rows,
            implied_dim: id.implied_dim(),
        })
    }

    pub fn max_level(&self) -> u64 {
        self.rows.iter().map(|r| r.0).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffKind {
    /// The search finds the space but the table omits it.
    Missing,
    /// The table lists a space that does not belong to it.
    Extra,
    /// The row does not name a valid space at all.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub kind: DiffKind,
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(rename = "k")]
    pub weight: u64,
    pub conrey: u64,
    pub expected_dim: i64,
    pub actual_dim: Option<i64>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub table: TableId,
    pub rows_checked: usize,
    pub search_ceiling: u64,
    pub diffs: Vec<Diff>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

fn recompute(kind: SpaceKind, n: u64, k: u64, m: u64) -> Result<(i64, u64)> {
    let chi = DirichletCharacter::from_conrey(n, m as i64)?;
    let dim = match kind {
        SpaceKind::Full => dim_full(n, k, &chi)?.total,
        SpaceKind::New => dim_new_explicit(n, k, &chi)?.total,
    };
    Ok((dim, chi.conductor()))
}

/// Row checks only: every row must recompute to the implied dimension, and
/// newspace rows must avoid the vanishing family.
pub fn check_rows(fixture: &TableFixture) -> Vec<Diff> {
    let kind = fixture.id.kind();
    let expected = fixture.implied_dim;
    let mut diffs = Vec::new();
    let mut seen = BTreeSet::new();
    for &(n, k, m) in &fixture.rows {
        let diff = |kind, actual_dim, reason: String| Diff {
            kind,
            level: n,
            weight: k,
            conrey: m,
            expected_dim: expected,
            actual_dim,
            reason,
        };
        if !seen.insert((n, k, m)) {
            diffs.push(diff(DiffKind::Extra, None, "duplicate row".into()));
            continue;
        }
        match recompute(kind, n, k, m) {
            Err(e) => diffs.push(diff(DiffKind::Mismatch, None, e.to_string())),
            Ok((d, _)) if d != expected => {
                diffs.push(diff(DiffKind::Extra, Some(d), format!("dimension is {d}")))
            }
            Ok((d, f)) if kind == SpaceKind::New && is_infinite_family(n, f) => diffs.push(diff(
                DiffKind::Extra,
                Some(d),
                format!("conductor {f} lies in the vanishing family"),
            )),
            Ok(_) => {}
        }
    }
    diffs
}

/// Row checks plus a comparison with a search report that covers the
/// table's space kind with bound at least the implied dimension.
pub fn compare_with_search(fixture: &TableFixture, search: &[Entry], ceiling: u64) -> TableReport {
    let mut diffs = check_rows(fixture);
    let listed: BTreeSet<(u64, u64, u64)> = fixture.rows.iter().copied().collect();
    for e in search
        .iter()
        .filter(|e| e.dim == fixture.implied_dim && e.level <= ceiling)
    {
        if !listed.contains(&(e.level, e.weight, e.conrey)) {
            diffs.push(Diff {
                kind: DiffKind::Missing,
                level: e.level,
                weight: e.weight,
                conrey: e.conrey,
                expected_dim: fixture.implied_dim,
                actual_dim: Some(e.dim),
                reason: "found by the search".into(),
            });
        }
    }
    TableReport {
        table: fixture.id,
        rows_checked: fixture.rows.len(),
        search_ceiling: ceiling,
        diffs,
    }
}

/// Verify the given tables, searching every level up to `ceiling` for
/// spaces the tables omit. One search per space kind is shared.
pub fn verify_tables(ids: &[TableId], ceiling: u64) -> Result<Vec<TableReport>> {
    let mut searches: Vec<(SpaceKind, Vec<Entry>, u64)> = Vec::new();
    let mut out = Vec::new();
    for &id in ids {
        let fixture = TableFixture::load(id)?;
        let kind = id.kind();
        if !searches.iter().any(|s| s.0 == kind) {
            let bound = TableId::ALL
                .iter()
                .filter(|t| t.kind() == kind)
                .map(|t| t.implied_dim())
                .max()
                .unwrap_or(0) as u64;
            let spec = BoundSpec { kind, bound };
            let report = classify(
                spec,
                &ClassifyOptions {
                    n_max: Some(ceiling),
                    full: ceiling > crate::classify::DEFAULT_CEILING,
                    ..Default::default()
                },
            )?;
            searches.push((kind, report.entries, report.search_ceiling));
        }
        let (_, entries, searched) = searches.iter().find(|s| s.0 == kind).unwrap();
        out.push(compare_with_search(&fixture, entries, *searched));
    }
    Ok(out)
}
