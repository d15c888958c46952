//! Enumeration of down-closed subsets of a finite preorder.
//!
//! Elements are `0..n`. `below[i]` holds `i` and everything under it,
//! `above[i]` holds `i` and everything over it. Each down-set is produced
//! exactly once by branching on the least undecided element: including it
//! forces its lower set in, excluding it forces its upper set out.

use fixedbitset::FixedBitSet;

/// Returns `None` as soon as more than `cap` down-sets exist.
pub(crate) fn enumerate_downsets(below: &[FixedBitSet], above: &[FixedBitSet], cap: usize) -> Option<Vec<FixedBitSet>> {
    let n = below.len();
    let mut undecided = FixedBitSet::with_capacity(n);
    undecided.insert_range(..);
    let mut out = Vec::new();
    let mut stack = vec![(FixedBitSet::with_capacity(n), undecided)];
    while let Some((chosen, undecided)) = stack.pop() {
        let Some(i) = undecided.minimum() else {
            if out.len() == cap {
                return None;
            }
            out.push(chosen);
            continue;
        };
        let mut excl = undecided.clone();
        excl.difference_with(&above[i]);
        stack.push((chosen.clone(), excl));

        let mut incl_chosen = chosen;
        incl_chosen.union_with(&below[i]);
        let mut incl = undecided;
        incl.difference_with(&below[i]);
        stack.push((incl_chosen, incl));
    }
    out.sort();
    Some(out)
}

/// Builds `above` from `below`.
pub(crate) fn transpose(below: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = below.len();
    let mut above = vec![FixedBitSet::with_capacity(n); n];
    for (i, set) in below.iter().enumerate() {
        for j in set.ones() {
            above[j].insert(i);
        }
    }
    above
}
