//! The surface shared by the command-line tool: embedded tables, table
//! verification, character summaries and record output.

mod emit;
mod fixtures;

use std::fmt;

use serde::Serialize;

pub use emit::{
    emit, full_terms_string, new_terms_string, parse, render, write_bytes, Format, OutputRecord,
};
pub use fixtures::{
    check_rows, compare_with_search, sha256_hex, verify_tables, Diff, DiffKind, TableFixture,
    TableId, TableReport,
};

use crate::characters::{CubeClass, DirichletCharacter, FourthClass};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct LocalInfo {
    pub p: u64,
    /// `p^e` exactly dividing the modulus.
    pub modulus: u64,
    /// Conrey label of the component mod `p^e`.
    pub label: u64,
    pub conductor: u64,
    pub parity: i8,
    pub order: u64,
    pub cube: CubeClass,
    pub fourth: FourthClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharInfo {
    pub modulus: u64,
    pub label: u64,
    pub conductor: u64,
    pub primitive_label: u64,
    pub parity: i8,
    pub order: u64,
    pub components: Vec<LocalInfo>,
}

pub fn char_info(modulus: u64, label: i64) -> Result<CharInfo> {
    let chi = DirichletCharacter::from_conrey(modulus, label)?;
    let components = chi
        .modulus_factors()
        .iter()
        .map(|(p, e)| {
            let c = chi.local_component(p);
            let t = c.local_type();
            LocalInfo {
                p,
                modulus: p.pow(e),
                label: chi.label() % p.pow(e),
                conductor: p.pow(t.alpha),
                parity: t.parity,
                order: c.order(),
                cube: t.cube,
                fourth: t.fourth,
            }
        })
        .collect();
    Ok(CharInfo {
        modulus: chi.modulus(),
        label: chi.label(),
        conductor: chi.conductor(),
        primitive_label: chi.primitive_label(),
        parity: chi.parity(),
        order: chi.order(),
        components,
    })
}

fn parity_word(p: i8) -> &'static str {
    if p == 1 {
        "even"
    } else {
        "odd"
    }
}

impl fmt::Display for CharInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "character  chi_{}({}, .)", self.modulus, self.label)?;
        writeln!(f, "conductor  {}", self.conductor)?;
        writeln!(
            f,
            "primitive  chi_{}({}, .)",
            self.conductor, self.primitive_label
        )?;
        writeln!(f, "parity     {}", parity_word(self.parity))?;
        writeln!(f, "order      {}", self.order)?;
        for c in &self.components {
            writeln!(
                f,
                "  mod {:<6} label {:<6} conductor {:<6} {} order {}",
                c.modulus,
                c.label,
                c.conductor,
                parity_word(c.parity),
                c.order
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_characters() {
        let legendre5 = char_info(5, 4).unwrap();
        assert_eq!(
            (legendre5.conductor, legendre5.parity, legendre5.order),
            (5, 1, 2)
        );
        let trivial8 = char_info(8, 1).unwrap();
        assert_eq!(
            (trivial8.conductor, trivial8.parity, trivial8.order),
            (1, 1, 1)
        );
        let c12 = char_info(12, 11).unwrap();
        assert_eq!((c12.conductor, c12.parity), (12, 1));
        assert!(char_info(12, 3).is_err());
    }

    #[test]
    fn fixtures_load_with_recorded_digests() {
        for id in TableId::ALL {
            let t = TableFixture::load(id).unwrap();
            assert!(!t.rows.is_empty());
        }
    }

    #[test]
    fn misplaced_row_is_one_extra() {
        let mut t = TableFixture::load(TableId::T2_1).unwrap();
        t.rows.push((11, 2, 1));
        let diffs = check_rows(&t);
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].kind, DiffKind::Extra);
        assert_eq!(diffs[0].actual_dim, Some(1));
    }

    #[test]
    fn injected_family_row_fails() {
        // f = 4 and N/f = 2: the newspace is zero, but excluded from the table.
        let mut t = TableFixture::load(TableId::T6_1).unwrap();
        t.rows.push((8, 3, 7));
        let diffs = check_rows(&t);
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].kind, DiffKind::Extra);
        assert_eq!(diffs[0].actual_dim, Some(0));
    }

    #[test]
    fn invalid_row_is_a_mismatch() {
        let mut t = TableFixture::load(TableId::T2_2).unwrap();
        t.rows.push((12, 2, 3));
        assert_eq!(check_rows(&t)[0].kind, DiffKind::Mismatch);
    }
}
