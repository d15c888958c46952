use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{same_category, GrothendieckTopology};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, ObjId};
use crate::sieves::{maximal_sieve, pullback_sieve, sieve_universe, Sieve};

fn check_same(j1: &GrothendieckTopology, j2: &GrothendieckTopology) -> Result<()> {
    if same_category(j1.category(), j2.category()) {
        Ok(())
    } else {
        Err(Error::structural(format!(
            "topologies {} and {} live on different categories",
            j1.name(),
            j2.name()
        )))
    }
}

/// `J1 ⊆ J2` pointwise.
pub fn is_coarser(j1: &GrothendieckTopology, j2: &GrothendieckTopology) -> Result<bool> {
    check_same(j1, j2)?;
    for x in j1.category().objects() {
        for s in j1.covers(x)? {
            if !j2.is_cover(&s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pointwise intersection.
pub fn meet(j1: &GrothendieckTopology, j2: &GrothendieckTopology) -> Result<GrothendieckTopology> {
    check_same(j1, j2)?;
    let c = j1.category();
    let mut covers = Vec::new();
    for x in c.objects() {
        let mut set = BTreeSet::new();
        for s in j1.covers(x)? {
            if j2.is_cover(&s)? {
                set.insert(s);
            }
        }
        covers.push(set);
    }
    GrothendieckTopology::explicit(c.clone(), format!("meet({},{})", j1.name(), j2.name()), covers)
}

/// The smallest topology containing both.
pub fn join(j1: &GrothendieckTopology, j2: &GrothendieckTopology) -> Result<GrothendieckTopology> {
    check_same(j1, j2)?;
    let c = j1.category();
    let mut seed = BTreeMap::new();
    for x in c.objects() {
        let mut set = j1.covers(x)?;
        set.extend(j2.covers(x)?);
        seed.insert(x, set);
    }
    Ok(generate_topology(c, &seed)?.with_name(format!("join({},{})", j1.name(), j2.name())))
}

/// The smallest topology in which every seed sieve covers.
///
/// Saturates under the maximal-sieve, stability and transitivity rules until
/// nothing changes.
pub fn generate_topology(
    c: &Arc<FinCategory>,
    seed: &BTreeMap<ObjId, BTreeSet<Sieve>>,
) -> Result<GrothendieckTopology> {
    let mut j: Vec<BTreeSet<Sieve>> = c
        .objects()
        .map(|x| Ok(BTreeSet::from([maximal_sieve(c, x)?])))
        .collect::<Result<_>>()?;
    for (&x, sieves) in seed {
        c.check_object(x)?;
        for s in sieves {
            if s.base() != x {
                return Err(Error::structural(format!(
                    "seed sieve on {} listed under {}",
                    c.object_name(s.base()),
                    c.object_name(x)
                )));
            }
            j[x].insert(s.clone());
        }
    }
    let into: Vec<_> = c.objects().map(|x| c.arrows_into(x)).collect::<Result<_>>()?;
    loop {
        let mut changed = false;
        for x in c.objects() {
            let current: Vec<Sieve> = j[x].iter().cloned().collect();
            for s in &current {
                for h in &into[x] {
                    let p = pullback_sieve(c, h, s)?;
                    changed |= j[c.dom(h)].insert(p);
                }
            }
        }
        for x in c.objects() {
            for r in sieve_universe(c, x)?.iter() {
                if j[x].contains(r) {
                    continue;
                }
                let good = into[x]
                    .iter()
                    .map(|h| Ok(j[c.dom(h)].contains(&pullback_sieve(c, h, r)?)))
                    .collect::<Result<Vec<bool>>>()?;
                let forced = j[x]
                    .iter()
                    .any(|s| into[x].iter().zip(&good).all(|(h, &ok)| ok || !s.contains(c, h)));
                if forced {
                    j[x].insert(r.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    GrothendieckTopology::explicit(c.clone(), "generated", j)
}
