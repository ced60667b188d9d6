//! Byte-stable CSV and JSON output of `(N, k, conrey, dim)` records.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::Entry;
use crate::dimfull::FullDimTerms;
use crate::dimnew::NewDimTerms;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(rename = "k")]
    pub weight: u64,
    pub conrey: u64,
    pub dim: i64,
    /// `name=value` pairs joined by `;`, values as exact fractions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<String>,
}

impl From<&Entry> for OutputRecord {
    fn from(e: &Entry) -> Self {
        OutputRecord {
            level: e.level,
            weight: e.weight,
            conrey: e.conrey,
            dim: e.dim,
            terms: None,
        }
    }
}

pub fn full_terms_string(t: &FullDimTerms) -> String {
    format!(
        "main={};elliptic3={};elliptic4={};cusps={};constant={}",
        t.main, t.elliptic3, t.elliptic4, t.cusp_count, t.constant
    )
}

pub fn new_terms_string(t: &NewDimTerms) -> String {
    format!(
        "psi={};rho={};rho_prime={};sigma={};mu={}",
        t.main_psi, t.term_rho, t.term_rho_prime, t.term_sigma, t.term_mu
    )
}

/// Serialize records. CSV always starts with a header, even when empty;
/// the `terms` column appears iff some record carries terms.
pub fn render(records: &[OutputRecord], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let with_terms = records.iter().any(|r| r.terms.is_some());
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(Vec::new());
            if with_terms {
                w.write_record(["N", "k", "conrey", "dim", "terms"])?;
            } else {
                w.write_record(["N", "k", "conrey", "dim"])?;
            }
            for r in records {
                let base = [
                    r.level.to_string(),
                    r.weight.to_string(),
                    r.conrey.to_string(),
                    r.dim.to_string(),
                ];
                if with_terms {
                    let terms = r.terms.clone().unwrap_or_default();
                    w.write_record(base.iter().map(String::as_str).chain([terms.as_str()]))?;
                } else {
                    w.write_record(&base)?;
                }
            }
            w.into_inner()
                .map_err(|e| Error::Csv(e.into_error().into()))
        }
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(records)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn parse(bytes: &[u8], format: Format) -> Result<Vec<OutputRecord>> {
    match format {
        Format::Csv => {
            let mut r = csv::Reader::from_reader(bytes);
            let rows = r
                .deserialize()
                .collect::<std::result::Result<Vec<OutputRecord>, _>>()?;
            Ok(rows
                .into_iter()
                .map(|mut rec| {
                    if rec.terms.as_deref() == Some("") {
                        rec.terms = None;
                    }
                    rec
                })
                .collect())
        }
        Format::Json => Ok(serde_json::from_slice(bytes)?),
    }
}

/// Write to `dest`, or to stdout when `None`.
pub fn emit(records: &[OutputRecord], format: Format, dest: Option<&Path>) -> Result<()> {
    let bytes = render(records, format)?;
    write_bytes(&bytes, dest)
}

pub fn write_bytes(bytes: &[u8], dest: Option<&Path>) -> Result<()> {
    match dest {
        Some(path) => fs::write(path, bytes).map_err(|e| Error::io(path, e)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_is_header_only() {
        assert_eq!(render(&[], Format::Csv).unwrap(), b"N,k,conrey,dim\n");
        assert_eq!(render(&[], Format::Json).unwrap(), b"[]\n");
    }

    #[test]
    fn one_record_one_row() {
        let r = OutputRecord {
            level: 11,
            weight: 2,
            conrey: 1,
            dim: 1,
            terms: None,
        };
        assert_eq!(
            render(&[r], Format::Csv).unwrap(),
            b"N,k,conrey,dim\n11,2,1,1\n"
        );
    }

    fn record() -> impl Strategy<Value = OutputRecord> {
        (
            1u64..10_000,
            2u64..50,
            1u64..10_000,
            0i64..100,
            proptest::option::of("[a-z_]{1,6}=-?[0-9]{1,3}(/[1-9])?"),
        )
            .prop_map(|(level, weight, conrey, dim, terms)| OutputRecord {
                level,
                weight,
                conrey,
                dim,
                terms,
            })
    }

    proptest! {
        #[test]
        fn csv_json_round_trip(records in proptest::collection::vec(record(), 0..20)) {
            // An empty terms cell reads back as absent.
            let records: Vec<OutputRecord> = records;
            for format in [Format::Csv, Format::Json] {
                let bytes = render(&records, format).unwrap();
                prop_assert_eq!(&parse(&bytes, format).unwrap(), &records);
                prop_assert_eq!(render(&records, format).unwrap(), bytes);
            }
            let via_csv = parse(&render(&records, Format::Csv).unwrap(), Format::Csv).unwrap();
            let via_json = parse(&render(&via_csv, Format::Json).unwrap(), Format::Json).unwrap();
            prop_assert_eq!(via_json, records);
        }
    }
}
