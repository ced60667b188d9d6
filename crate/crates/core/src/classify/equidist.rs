//! Newspace dimensions grouped by conductor.
//!
//! At `k = 1 mod 12` the weight coefficients of both elliptic terms vanish and
//! `k != 2`, so the explicit formula depends on the character only through
//! its conductor. At other weights the classes may spread; that spread is
//! reported, not judged.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::factorize;
use crate::characters::DirichletCharacter;
use crate::dimnew::dim_new_sig;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConductorClass {
    pub conductor: u64,
    pub characters: u64,
    pub min_dim: i64,
    pub max_dim: i64,
}

impl ConductorClass {
    pub fn is_constant(&self) -> bool {
        self.min_dim == self.max_dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquidistReport {
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(rename = "k")]
    pub weight: u64,
    /// `k = 1 mod 12`, where the formula forces equality within each class.
    pub exact_case: bool,
    pub classes: Vec<ConductorClass>,
    /// In the exact case, whether every class is constant.
    pub holds: Option<bool>,
}

/// Group `dim S_k^new(Gamma_0(N), chi)` over the characters of parity
/// `(-1)^k` by conductor.
pub fn equidistribution_check(level: u64, weight: u64) -> Result<EquidistReport> {
    let n = factorize(level);
    let parity = if weight % 2 == 0 { 1 } else { -1 };
    let mut classes: BTreeMap<u64, ConductorClass> = BTreeMap::new();
    for chi in DirichletCharacter::enumerate(level, Some(parity), None) {
        let d = dim_new_sig(&n, weight, &chi.signature())?.total;
        classes
            .entry(chi.conductor())
            .and_modify(|c| {
                c.characters += 1;
                c.min_dim = c.min_dim.min(d);
                c.max_dim = c.max_dim.max(d);
            })
            .or_insert(ConductorClass {
                conductor: chi.conductor(),
                characters: 1,
                min_dim: d,
                max_dim: d,
            });
    }
    let classes: Vec<ConductorClass> = classes.into_values().collect();
    let exact_case = weight % 12 == 1;
    let holds = exact_case.then(|| classes.iter().all(ConductorClass::is_constant));
    Ok(EquidistReport {
        level,
        weight,
        exact_case,
        classes,
        holds,
    })
}
