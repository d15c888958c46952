use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::GrothendieckTopology;
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory, ObjId};
use crate::sieves::{maximal_sieve, pullback_sieve, sieve_universe, Sieve};

/// Largest sieve universe per object that enumeration handles.
const MAX_UNIVERSE: usize = 63;

struct Search<'a> {
    c: &'a FinCategory,
    universes: Vec<Arc<Vec<Sieve>>>,
    tops: Vec<usize>,
    /// Per object: arrows into it as `(domain, pullback index table)`.
    pulls: Vec<Vec<(ObjId, Vec<usize>)>>,
    /// Per object, per sieve: which entries of `pulls[x]` it contains.
    members: Vec<Vec<Vec<usize>>>,
    nodes: usize,
    cap: usize,
    found: Vec<Vec<u64>>,
}

/// Every Grothendieck topology on `c`, found by backtracking over cover sets
/// with stability pruning. Visited search nodes are capped by `cap_search`.
pub fn enumerate_topologies(c: &Arc<FinCategory>) -> Result<Vec<GrothendieckTopology>> {
    let cap = c.config().cap_search;
    let mut universes = Vec::new();
    let mut tops = Vec::new();
    let mut log2_size = 0usize;
    for x in c.objects() {
        let u = sieve_universe(c, x)?;
        if u.len() > MAX_UNIVERSE {
            return Err(Error::resource(
                format!("enumerating topologies ({} sieves on {})", u.len(), c.object_name(x)),
                format!("2^{}", u.len() - 1),
                cap,
            ));
        }
        let top = maximal_sieve(c, x)?;
        tops.push(
            u.iter()
                .position(|s| *s == top)
                .expect("maximal sieve is in the universe"),
        );
        log2_size += u.len() - 1;
        universes.push(u);
    }
    if log2_size >= usize::BITS as usize || (1usize << log2_size) > cap.saturating_mul(64) {
        // Pruning rarely beats a factor of 64 on categories this size.
        return Err(Error::resource(
            "enumerating topologies",
            format!("about 2^{log2_size} candidates"),
            cap,
        ));
    }
    let index: Vec<HashMap<&Sieve, usize>> = universes
        .iter()
        .map(|u| u.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut pulls = Vec::new();
    let mut members = Vec::new();
    for x in c.objects() {
        let into: Vec<Arrow> = c.arrows_into(x)?;
        let mut px = Vec::new();
        for h in &into {
            let d = c.dom(h);
            let table = universes[x]
                .iter()
                .map(|s| {
                    let p = pullback_sieve(c, h, s)?;
                    Ok(index[d][&p])
                })
                .collect::<Result<Vec<_>>>()?;
            px.push((d, table));
        }
        pulls.push(px);
        members.push(
            universes[x]
                .iter()
                .map(|s| (0..into.len()).filter(|&i| s.contains(c, &into[i])).collect())
                .collect(),
        );
    }
    let mut search = Search {
        c,
        universes,
        tops,
        pulls,
        members,
        nodes: 0,
        cap,
        found: Vec::new(),
    };
    let mut masks = Vec::new();
    search.descend(&mut masks, log2_size)?;
    let found = std::mem::take(&mut search.found);
    found
        .iter()
        .enumerate()
        .map(|(k, masks)| {
            let covers = masks
                .iter()
                .enumerate()
                .map(|(x, &m)| {
                    search.universes[x]
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| m >> i & 1 == 1)
                        .map(|(_, s)| s.clone())
                        .collect::<BTreeSet<Sieve>>()
                })
                .collect();
            GrothendieckTopology::explicit(c.clone(), format!("J{}", k + 1), covers)
        })
        .collect()
}

impl Search<'_> {
    fn descend(&mut self, masks: &mut Vec<u64>, log2_size: usize) -> Result<()> {
        let x = masks.len();
        if x == self.c.object_count() {
            if self.transitive(masks) {
                self.found.push(masks.clone());
            }
            return Ok(());
        }
        let n = self.universes[x].len();
        let top = self.tops[x];
        let others: Vec<usize> = (0..n).filter(|&i| i != top).collect();
        for choice in 0u64..1 << others.len() {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::resource(
                    "enumerating topologies",
                    format!("more than {} search nodes (about 2^{log2_size} candidates)", self.cap),
                    self.cap,
                ));
            }
            let mut mask = 1u64 << top;
            for (bit, &i) in others.iter().enumerate() {
                if choice >> bit & 1 == 1 {
                    mask |= 1 << i;
                }
            }
            masks.push(mask);
            if self.stable_so_far(masks) {
                self.descend(masks, log2_size)?;
            }
            masks.pop();
        }
        Ok(())
    }

    /// Stability along arrows between objects assigned so far, where the
    /// newest object is at one end.
    fn stable_so_far(&self, masks: &[u64]) -> bool {
        let k = masks.len() - 1;
        for (x, &mx) in masks.iter().enumerate() {
            for (d, table) in &self.pulls[x] {
                if *d > k || (x != k && *d != k) {
                    continue;
                }
                for (i, &p) in table.iter().enumerate() {
                    if mx >> i & 1 == 1 && masks[*d] >> p & 1 == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn transitive(&self, masks: &[u64]) -> bool {
        for (x, &mx) in masks.iter().enumerate() {
            for r in (0..self.universes[x].len()).filter(|&r| mx >> r & 1 == 0) {
                let good: Vec<bool> = self.pulls[x]
                    .iter()
                    .map(|(d, table)| masks[*d] >> table[r] & 1 == 1)
                    .collect();
                let locally_covered = (0..self.universes[x].len())
                    .filter(|&s| mx >> s & 1 == 1)
                    .any(|s| self.members[x][s].iter().all(|&i| good[i]));
                if locally_covered {
                    return false;
                }
            }
        }
        true
    }
}
