//! S-Coxeter elements: products of all simple reflections, each once.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::root_system::WeylElement;

/// Largest rank for which all `r!` orderings are scanned.
pub const MAX_COXETER_RANK: usize = 8;

/// The distinct Coxeter elements, one representative word each, sorted by word.
pub fn enumerate_coxeter(datum: &RootDatum) -> Result<Vec<WeylElement>> {
    let r = datum.rank();
    if r > MAX_COXETER_RANK {
        return Err(Error::WeylGroupTooLarge(format!(
            "rank {r} exceeds {MAX_COXETER_RANK} for ordering scans"
        )));
    }
    let mut by_matrix: BTreeMap<Vec<Vec<i64>>, WeylElement> = BTreeMap::new();
    for order in (0..r).permutations(r) {
        let w = datum.weyl_element(&order)?;
        by_matrix
            .entry(w.matrix().to_vec())
            .and_modify(|old| {
                if w.word() < old.word() {
                    *old = w.clone();
                }
            })
            .or_insert(w);
    }
    let mut out: Vec<WeylElement> = by_matrix.into_values().collect();
    out.sort_by(|a, b| a.word().cmp(b.word()));
    for w in &out {
        let len = datum.dual_system().inversion_count(w);
        if len != r || w.support().len() != r {
            return Err(Error::Inconsistent(format!(
                "Coxeter element {} has length {len} and support {:?}",
                w.word_string(),
                w.support()
            )));
        }
    }
    Ok(out)
}

/// `Π 2^{r_i − 1}` over the simple factors.
pub fn count_coxeter(datum: &RootDatum) -> u128 {
    datum
        .components()
        .iter()
        .map(|c| 1u128 << (c.len() - 1))
        .product()
}

/// Whether two elements are conjugate in the (enumerated) Weyl group.
pub fn are_conjugate(weyl: &[WeylElement], a: &WeylElement, b: &WeylElement) -> bool {
    weyl.iter()
        .any(|g| g.compose(a).compose(&g.inverse()).matrix() == b.matrix())
}
