//! Enumeration of posets up to isomorphism.
//!
//! Every poset on `n` elements arises from one on `n - 1` elements by adding a
//! new maximal element above some order ideal. Starting from the canonical
//! representatives of size `n - 1`, all such extensions are canonicalised and
//! deduplicated; the survivors are returned in ascending canonical-code order.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poset::{bits, default_names, OrderClass, Poset};

/// Largest carrier size accepted by [`enumerate_posets`].
pub const ENUMERATION_BOUND: usize = 8;

/// One canonical representative per isomorphism class, ascending by code.
pub fn enumerate_posets(n: usize, filter: OrderClass, exec: Exec) -> Result<Vec<Poset>> {
    let level = canonical_level(n, exec)?;
    Ok(level.into_iter().map(|(_, p)| p).filter(|p| filter.accepts(p.classify_order())).collect())
}

/// Canonical posets of every size `1..=n`, one vector per size.
pub fn enumerate_posets_upto(n: usize, filter: OrderClass, exec: Exec) -> Result<Vec<Vec<Poset>>> {
    check_bound(n)?;
    let mut out = Vec::with_capacity(n);
    let mut level = trivial_level();
    for size in 1..=n {
        if size > 1 {
            level = extend_level(&level, exec);
        }
        out.push(level.iter().map(|(_, p)| p.clone()).filter(|p| filter.accepts(p.classify_order())).collect());
    }
    Ok(out)
}

pub fn count_posets(n: usize, exec: Exec) -> Result<usize> {
    Ok(canonical_level(n, exec)?.len())
}

fn check_bound(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyCarrier)
    } else if n > ENUMERATION_BOUND {
        Err(Error::BoundExceeded { requested: n, bound: ENUMERATION_BOUND })
    } else {
        Ok(())
    }
}

fn canonical_level(n: usize, exec: Exec) -> Result<Vec<(CanonicalCode, Poset)>> {
    check_bound(n)?;
    let mut level = trivial_level();
    for _ in 1..n {
        level = extend_level(&level, exec);
    }
    Ok(level)
}

fn trivial_level() -> Vec<(CanonicalCode, Poset)> {
    let p = Poset::chain(1).expect("trivial poset");
    let (code, _) = canonical_form(&p);
    vec![(code, p)]
}

fn extend_level(level: &[(CanonicalCode, Poset)], exec: Exec) -> Vec<(CanonicalCode, Poset)> {
    let candidates: Vec<(usize, u64)> =
        level.iter().enumerate().flat_map(|(i, (_, p))| p.downsets().into_iter().map(move |d| (i, d))).collect();
    let canon = exec.map(&candidates, |&(i, ideal)| {
        let p = &level[i].1;
        let n = p.size() + 1;
        let new = n - 1;
        let mut up: Vec<u64> = p.up_rows().to_vec();
        for j in bits(ideal) {
            up[j] |= 1u64 << new;
        }
        up.push(1u64 << new);
        let q = Poset::from_up_rows(n, up, default_names(n)).expect("extension is a poset");
        let (code, perm) = canonical_form(&q);
        let canonical = q.relabel(&perm).with_names(default_names(n)).expect("names");
        (code, canonical)
    });
    let unique: BTreeMap<CanonicalCode, Poset> = canon.into_iter().collect();
    unique.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| count_posets(n, Exec::Sequential).unwrap()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn trivial() {
        let ps = enumerate_posets(1, OrderClass::Any, Exec::Sequential).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].size(), 1);
    }

    #[test]
    fn four_element_lattices() {
        let ps = enumerate_posets(4, OrderClass::Lattice, Exec::Sequential).unwrap();
        assert_eq!(ps.len(), 2);
    }

    #[test]
    fn ascending_and_distinct() {
        let ps = enumerate_posets(5, OrderClass::Any, Exec::Parallel).unwrap();
        let codes: Vec<_> = ps.iter().map(canonical_code).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bounds() {
        assert_eq!(
            enumerate_posets(ENUMERATION_BOUND + 1, OrderClass::Any, Exec::Sequential),
            Err(Error::BoundExceeded { requested: ENUMERATION_BOUND + 1, bound: ENUMERATION_BOUND })
        );
        assert_eq!(count_posets(0, Exec::Sequential), Err(Error::EmptyCarrier));
    }
}
