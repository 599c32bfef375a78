//! Subgroup spans and sum-closed families, shared by ideal and submodule enumeration.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Smallest additive subgroup containing `start` and every generator.
///
/// `start` must already be a subgroup (contain 0 and be closed under `add`).
/// Each generator outside the current span adjoins whole cosets, so the cost
/// is linear in the size of the result.
pub(crate) fn additive_span(
    add: impl Fn(usize, usize) -> usize,
    mut span: FixedBitSet,
    generators: impl IntoIterator<Item = usize>,
) -> FixedBitSet {
    let mut members: Vec<usize> = span.ones().collect();
    for g in generators {
        if span.contains(g) {
            continue;
        }
        let base = members.clone();
        let mut shift = g;
        while !span.contains(shift) {
            for &h in &base {
                let y = add(h, shift);
                span.insert(y);
                members.push(y);
            }
            shift = add(shift, g);
        }
    }
    span
}

pub(crate) fn singleton(size: usize, x: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(size);
    s.insert(x);
    s
}

/// Closes a family of subgroups under pairwise sums.
///
/// Every member of the result is a finite sum of the `atoms`. Fails once the
/// family would exceed `limit` members.
pub(crate) fn sum_closure(
    add: impl Fn(usize, usize) -> usize,
    atoms: impl IntoIterator<Item = FixedBitSet>,
    limit: usize,
) -> Result<Vec<FixedBitSet>> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut all: Vec<FixedBitSet> = Vec::new();
    for atom in atoms {
        if seen.insert(atom.clone()) {
            all.push(atom);
        }
    }
    if all.len() > limit {
        return Err(too_many(limit));
    }
    // Each pair (j, k) with j < k is summed once, when `next` reaches k.
    let mut next = 0;
    while next < all.len() {
        for j in 0..next {
            let (x, y) = (&all[j], &all[next]);
            if y.is_subset(x) || x.is_subset(y) {
                continue;
            }
            let sum = additive_span(&add, x.clone(), y.ones());
            if seen.insert(sum.clone()) {
                if all.len() >= limit {
                    return Err(too_many(limit));
                }
                all.push(sum);
            }
        }
        next += 1;
    }
    Ok(all)
}

fn too_many(limit: usize) -> Error {
    Error::validation(format!("sum-closed family exceeds {limit} members"))
}

/// Sorts subsets by cardinality, then lexicographically by their sorted members.
pub(crate) fn sort_by_size_then_members(sets: &mut [FixedBitSet]) {
    sets.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_in_cyclic_group() {
        let add = |a: usize, b: usize| (a + b) % 12;
        let span = additive_span(add, singleton(12, 0), [8]);
        assert_eq!(span.ones().collect::<Vec<_>>(), vec![0, 4, 8]);
        let span = additive_span(add, span, [6]);
        assert_eq!(span.ones().collect::<Vec<_>>(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn subgroup_lattice_of_z12() {
        let add = |a: usize, b: usize| (a + b) % 12;
        let atoms = (0..12).map(|x| additive_span(add, singleton(12, 0), [x]));
        let mut all = sum_closure(add, atoms, 100).unwrap();
        sort_by_size_then_members(&mut all);
        let sizes: Vec<usize> = all.iter().map(|s| s.count_ones(..)).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn klein_group_has_five_subgroups() {
        // Z2 x Z2 encoded as 2 bits; no single element generates everything.
        let add = |a: usize, b: usize| a ^ b;
        let atoms = (0..4).map(|x| additive_span(add, singleton(4, 0), [x]));
        let all = sum_closure(add, atoms, 100).unwrap();
        assert_eq!(all.len(), 5);
        assert!(sum_closure(add, (0..4).map(|x| additive_span(add, singleton(4, 0), [x])), 3).is_err());
    }
}
