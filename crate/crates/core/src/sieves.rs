//! Sieves: sets of arrows with a common codomain, closed under precomposition.
//!
//! In a `table` category a sieve on `X` stores the ids of its member arrows.
//! In a `finset` category an arrow `g: Y -> X` factors through `f: Z -> X`
//! exactly when `im g ⊆ im f` (for nonempty `Z`), so a sieve is stored as the
//! down-closed family of images of its members; `g` belongs to the sieve iff
//! `im g` is in the family. Only images that some arrow can realize are
//! stored: the empty set needs an empty carrier, a nonempty set of size `k`
//! needs a carrier with at least `k` elements.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::downset::{enumerate_downsets, transpose};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory, MapArrow, ObjId};

/// Largest carrier on which sieves of a `finset` category are represented.
pub const MAX_FINSET_SIEVE_CARRIER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sieve {
    base: ObjId,
    members: FixedBitSet,
}

impl Sieve {
    pub fn base(&self) -> ObjId {
        self.base
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    /// Stored members: arrows for table categories, images for finite-set ones.
    pub fn member_count(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_subset(&self, other: &Sieve) -> bool {
        self.base == other.base && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Sieve) -> Sieve {
        debug_assert_eq!(self.base, other.base);
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Sieve {
            base: self.base,
            members,
        }
    }

    pub fn union(&self, other: &Sieve) -> Sieve {
        debug_assert_eq!(self.base, other.base);
        let mut members = self.members.clone();
        members.union_with(&other.members);
        Sieve {
            base: self.base,
            members,
        }
    }

    pub fn contains(&self, c: &FinCategory, a: &Arrow) -> bool {
        if c.cod(a) != self.base {
            return false;
        }
        match a {
            Arrow::Table(id) => self.members.contains(*id),
            Arrow::Map(m) => self.members.contains(m.image_mask() as usize),
        }
    }

    /// Member arrows. Finite-set categories enumerate hom-sets (capped).
    pub fn arrows(&self, c: &FinCategory) -> Result<Vec<Arrow>> {
        if c.table_arrows().is_some() {
            return Ok(self.members.ones().map(Arrow::Table).collect());
        }
        Ok(c.arrows_into(self.base)?
            .into_iter()
            .filter(|a| self.contains(c, a))
            .collect())
    }

    /// Arrows generating the sieve: every member for table categories, and
    /// one map per maximal image for finite sets.
    pub fn generators(&self, c: &FinCategory) -> Result<Vec<Arrow>> {
        if c.table_arrows().is_some() {
            return Ok(self.members.ones().map(Arrow::Table).collect());
        }
        let images: Vec<usize> = self.members.ones().collect();
        let maximal = images
            .iter()
            .filter(|&&m| !images.iter().any(|&n| n != m && n & m == m));
        let mut out = Vec::new();
        for &mask in maximal {
            let k = mask.count_ones() as usize;
            let dom = c
                .objects()
                .filter(|&o| {
                    let n = c.carrier_size(o).unwrap();
                    n >= k && (k > 0 || n == 0)
                })
                .min_by_key(|&o| c.carrier_size(o).unwrap())
                .expect("members are realizable");
            let elems: Vec<u32> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
            let n = c.carrier_size(dom).unwrap();
            let values = (0..n).map(|i| elems[i.min(k - 1)]).collect();
            out.push(c.map_arrow(dom, self.base, values)?);
        }
        Ok(out)
    }

    /// Sorted member names (table) or sorted images (finset).
    pub fn member_names(&self, c: &FinCategory) -> Vec<String> {
        let mut names: Vec<String> = if c.table_arrows().is_some() {
            self.members.ones().map(|id| c.arrow_name(&Arrow::Table(id))).collect()
        } else {
            self.members
                .ones()
                .map(|mask| {
                    let elems: Vec<String> = (0..64)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i: usize| i.to_string())
                        .collect();
                    format!("[{}]", elems.join(","))
                })
                .collect()
        };
        names.sort();
        names
    }

    /// `{a, b, ...}` with sorted members.
    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        SieveDisplay { sieve: self, cat: c }
    }
}

struct SieveDisplay<'a> {
    sieve: &'a Sieve,
    cat: &'a FinCategory,
}

impl fmt::Display for SieveDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.sieve.member_names(self.cat).join(", "))
    }
}

/// Number of member bits for sieves on `x`.
fn member_bits(c: &FinCategory, x: ObjId) -> Result<usize> {
    c.check_object(x)?;
    match c.table_arrows() {
        Some(arrows) => Ok(arrows.len()),
        None => {
            let n = c.carrier_size(x).unwrap();
            if n > MAX_FINSET_SIEVE_CARRIER {
                return Err(Error::resource(
                    format!("sieves on carrier {} of size {n}", c.object_name(x)),
                    n,
                    MAX_FINSET_SIEVE_CARRIER,
                ));
            }
            Ok(1 << n)
        }
    }
}

/// Images on a carrier of size `n` that some arrow of `c` realizes.
fn realizable(c: &FinCategory, n: usize) -> FixedBitSet {
    let sizes: Vec<usize> = c.objects().map(|o| c.carrier_size(o).unwrap()).collect();
    let widest = sizes.iter().copied().max().unwrap_or(0);
    let has_empty = sizes.contains(&0);
    let mut set = FixedBitSet::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        let k = mask.count_ones() as usize;
        if (k == 0 && has_empty) || (k >= 1 && k <= widest) {
            set.insert(mask);
        }
    }
    set
}

/// Realizable subsets of `mask`, i.e. the principal family below it.
fn realizable_subsets(real: &FixedBitSet, mask: usize, into: &mut FixedBitSet) {
    let mut sub = mask;
    loop {
        if real.contains(sub) {
            into.insert(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
}

pub fn empty_sieve(c: &FinCategory, x: ObjId) -> Result<Sieve> {
    Ok(Sieve {
        base: x,
        members: FixedBitSet::with_capacity(member_bits(c, x)?),
    })
}

/// `t_X`: every arrow with codomain `X`.
pub fn maximal_sieve(c: &FinCategory, x: ObjId) -> Result<Sieve> {
    let bits = member_bits(c, x)?;
    let members = match c.table_index() {
        Some(index) => {
            let mut m = FixedBitSet::with_capacity(bits);
            m.extend(index.into[x].iter().copied());
            m
        }
        None => realizable(c, c.carrier_size(x).unwrap()),
    };
    Ok(Sieve { base: x, members })
}

/// The sieve generated by a single arrow: `{ f . g }`.
pub fn principal_sieve(c: &FinCategory, f: &Arrow) -> Result<Sieve> {
    sieve_closure(c, c.cod(f), std::slice::from_ref(f))
}

/// The smallest sieve on `x` containing the generators.
pub fn sieve_closure(c: &FinCategory, x: ObjId, generators: &[Arrow]) -> Result<Sieve> {
    let mut sieve = empty_sieve(c, x)?;
    for g in generators {
        c.check_arrow(g)?;
        if c.cod(g) != x {
            return Err(Error::structural(format!(
                "generator {} does not have codomain {}",
                c.arrow_name(g),
                c.object_name(x)
            )));
        }
    }
    match c.table_index() {
        Some(index) => {
            for g in generators {
                let Arrow::Table(id) = g else { unreachable!() };
                sieve.members.union_with(&index.principal[*id]);
            }
        }
        None => {
            let real = realizable(c, c.carrier_size(x).unwrap());
            for g in generators {
                let Arrow::Map(m) = g else { unreachable!() };
                realizable_subsets(&real, m.image_mask() as usize, &mut sieve.members);
            }
        }
    }
    Ok(sieve)
}

/// True iff `arrows` all have codomain `x` and are closed under precomposition.
pub fn is_sieve(c: &FinCategory, x: ObjId, arrows: &[Arrow]) -> Result<bool> {
    c.check_object(x)?;
    if arrows.iter().any(|a| c.check_arrow(a).is_err() || c.cod(a) != x) {
        return Ok(false);
    }
    let closure = sieve_closure(c, x, arrows)?;
    match c.table_index() {
        Some(_) => {
            let given: FixedBitSet = arrows
                .iter()
                .map(|a| match a {
                    Arrow::Table(id) => *id,
                    Arrow::Map(_) => unreachable!(),
                })
                .collect();
            Ok(closure.members.ones().all(|id| given.contains(id)))
        }
        None => {
            for a in c.arrows_into(x)? {
                if closure.contains(c, &a) && !arrows.contains(&a) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `h*(S) = { g | cod g = dom h, h . g ∈ S }`.
pub fn pullback_sieve(c: &FinCategory, h: &Arrow, s: &Sieve) -> Result<Sieve> {
    c.check_arrow(h)?;
    if c.cod(h) != s.base {
        return Err(Error::structural(format!(
            "cannot pull back a sieve on {} along {}",
            c.object_name(s.base),
            c.arrow_name(h)
        )));
    }
    let d = c.dom(h);
    let mut out = empty_sieve(c, d)?;
    match (h, c.table_index()) {
        (Arrow::Table(_), Some(index)) => {
            for &g in &index.into[d] {
                if s.contains(c, &c.compose(h, &Arrow::Table(g))?) {
                    out.members.insert(g);
                }
            }
        }
        (Arrow::Map(m), None) => {
            let real = realizable(c, c.carrier_size(d).unwrap());
            for t in real.ones() {
                if s.members.contains(image_of(m, t)) {
                    out.members.insert(t);
                }
            }
        }
        _ => unreachable!("checked by check_arrow"),
    }
    Ok(out)
}

fn image_of(m: &MapArrow, subset: usize) -> usize {
    let mut img = 0usize;
    let mut rest = subset;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        img |= 1 << m.values[i];
        rest &= rest - 1;
    }
    img
}

/// Every sieve on `x`, sorted; memoized per object and capped by `cap_sieves`.
pub fn sieve_universe(c: &FinCategory, x: ObjId) -> Result<Arc<Vec<Sieve>>> {
    c.check_object(x)?;
    if let Some(u) = c.cache.universes.lock().unwrap().get(&x) {
        return Ok(u.clone());
    }
    let cap = c.config().cap_sieves;
    let too_many = || {
        Error::resource(
            format!("sieve universe at {}", c.object_name(x)),
            format!("more than {cap}"),
            cap,
        )
    };
    let bits = member_bits(c, x)?;
    // Elements of the preorder whose down-sets are the sieves.
    let (elements, below): (Vec<usize>, Vec<FixedBitSet>) = match c.table_index() {
        Some(index) => {
            let elems = index.into[x].clone();
            let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &a)| (a, i)).collect();
            let below = elems
                .iter()
                .map(|&a| {
                    let mut s = FixedBitSet::with_capacity(elems.len());
                    s.extend(index.principal[a].ones().map(|b| local[&b]));
                    s
                })
                .collect();
            (elems, below)
        }
        None => {
            let real = realizable(c, c.carrier_size(x).unwrap());
            let elems: Vec<usize> = real.ones().collect();
            // Distinct elements have distinct principal down-sets.
            if elems.len() >= cap {
                return Err(too_many());
            }
            let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &a)| (a, i)).collect();
            let below = elems
                .iter()
                .map(|&mask| {
                    let mut subs = FixedBitSet::with_capacity(bits);
                    realizable_subsets(&real, mask, &mut subs);
                    let mut s = FixedBitSet::with_capacity(elems.len());
                    s.extend(subs.ones().map(|b| local[&b]));
                    s
                })
                .collect();
            (elems, below)
        }
    };
    let above = transpose(&below);
    let downsets = enumerate_downsets(&below, &above, cap).ok_or_else(too_many)?;
    let mut sieves: Vec<Sieve> = downsets
        .into_iter()
        .map(|d| {
            let mut members = FixedBitSet::with_capacity(bits);
            members.extend(d.ones().map(|i| elements[i]));
            Sieve { base: x, members }
        })
        .collect();
    sieves.sort();
    let sieves = Arc::new(sieves);
    c.cache.universes.lock().unwrap().insert(x, sieves.clone());
    Ok(sieves)
}

/// Principal sieves of every arrow into `x` (table) or of every realizable
/// image (finset). Every nonempty sieve contains one of them.
pub(crate) fn principal_sieves(c: &FinCategory, x: ObjId) -> Result<Vec<Sieve>> {
    let bits = member_bits(c, x)?;
    let mut out = match c.table_index() {
        Some(index) => index.into[x]
            .iter()
            .map(|&a| Sieve {
                base: x,
                members: index.principal[a].clone(),
            })
            .collect::<Vec<_>>(),
        None => {
            let real = realizable(c, c.carrier_size(x).unwrap());
            real.ones()
                .map(|mask| {
                    let mut members = FixedBitSet::with_capacity(bits);
                    realizable_subsets(&real, mask, &mut members);
                    Sieve { base: x, members }
                })
                .collect()
        }
    };
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::fincat::{build_divisor_poset, build_finset_category, CategoryBuilder};

    fn d12() -> FinCategory {
        build_divisor_poset(12, Config::default()).unwrap()
    }

    fn arrow_category() -> FinCategory {
        build_divisor_poset(2, Config::default()).unwrap()
    }

    /// Divisors `k` such that `k->x` (or `id_x`) is a member.
    fn domains(c: &FinCategory, s: &Sieve) -> Vec<u64> {
        let mut v: Vec<u64> = s
            .arrows(c)
            .unwrap()
            .iter()
            .map(|a| c.object_name(c.dom(a)).parse().unwrap())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn closure_examples() {
        let c = d12();
        let x = c.object_id("12").unwrap();
        let s = sieve_closure(&c, x, &[c.arrow("4->12").unwrap()]).unwrap();
        assert_eq!(domains(&c, &s), vec![1, 2, 4]);
        assert!(sieve_closure(&c, x, &[]).unwrap().is_empty());
        let s = sieve_closure(&c, x, &[c.arrow("6->12").unwrap(), c.arrow("4->12").unwrap()]).unwrap();
        assert_eq!(domains(&c, &s), vec![1, 2, 3, 4, 6]);
        assert!(sieve_closure(&c, x, &[c.arrow("2->6").unwrap()]).is_err());
    }

    #[test]
    fn maximal_sieve_examples() {
        let c = d12();
        let t = maximal_sieve(&c, c.object_id("12").unwrap()).unwrap();
        assert_eq!(domains(&c, &t), vec![1, 2, 3, 4, 6, 12]);
        let pt = build_divisor_poset(1, Config::default()).unwrap();
        assert_eq!(
            maximal_sieve(&pt, 0).unwrap().arrows(&pt).unwrap(),
            vec![pt.identity(0)]
        );

        let mut b = CategoryBuilder::table("cospan");
        b.object("X").unwrap().object("Y").unwrap().object("Z").unwrap();
        b.arrow("f", "X", "Z").unwrap().arrow("g", "Y", "Z").unwrap();
        let cospan = b.build().unwrap();
        let t = maximal_sieve(&cospan, cospan.object_id("Z").unwrap()).unwrap();
        assert_eq!(t.member_names(&cospan), vec!["f", "g", "id_Z"]);
    }

    #[test]
    fn is_sieve_examples() {
        let c = arrow_category();
        let two = c.object_id("2").unwrap();
        assert!(!is_sieve(&c, two, &[c.identity(two)]).unwrap());
        assert!(is_sieve(&c, two, &[c.arrow("1->2").unwrap()]).unwrap());

        let c = d12();
        let x = c.object_id("12").unwrap();
        let set: Vec<Arrow> = ["1->12", "2->12", "3->12", "6->12"]
            .iter()
            .map(|n| c.arrow(n).unwrap())
            .collect();
        assert!(is_sieve(&c, x, &set).unwrap());
        let closed = sieve_closure(&c, x, &[c.arrow("4->12").unwrap()]).unwrap();
        assert!(is_sieve(&c, x, &closed.arrows(&c).unwrap()).unwrap());
    }

    #[test]
    fn pullback_examples() {
        let c = d12();
        let x = c.object_id("12").unwrap();
        let s = sieve_closure(&c, x, &[c.arrow("4->12").unwrap()]).unwrap();
        assert_eq!(pullback_sieve(&c, &c.identity(x), &s).unwrap(), s);
        let h = c.arrow("6->12").unwrap();
        assert_eq!(domains(&c, &pullback_sieve(&c, &h, &s).unwrap()), vec![1, 2]);
        let t = maximal_sieve(&c, x).unwrap();
        assert_eq!(
            pullback_sieve(&c, &h, &t).unwrap(),
            maximal_sieve(&c, c.object_id("6").unwrap()).unwrap()
        );
        assert!(pullback_sieve(&c, &c.arrow("2->6").unwrap(), &s).is_err());
    }

    #[test]
    fn universe_sizes_on_divisor_posets() {
        let c = d12();
        let x = c.object_id("12").unwrap();
        assert_eq!(sieve_universe(&c, x).unwrap().len(), 10);
        let a = arrow_category();
        assert_eq!(sieve_universe(&a, 0).unwrap().len(), 2);
        assert_eq!(sieve_universe(&a, 1).unwrap().len(), 3);
    }

    #[test]
    fn universe_respects_cap() {
        let cfg = Config {
            cap_sieves: 5,
            ..Config::default()
        };
        let c = build_divisor_poset(12, cfg).unwrap();
        assert!(matches!(
            sieve_universe(&c, c.object_id("12").unwrap()),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn finset_sieves_follow_images() {
        let c = build_finset_category(&[("1", 1), ("G", 2), ("GG", 4)], Config::default()).unwrap();
        let g = c.object_id("G").unwrap();
        // Nonempty subsets {0}, {1}, {0,1}: five down-closed families.
        assert_eq!(sieve_universe(&c, g).unwrap().len(), 5);
        let zero = c.map_arrow(c.object_id("1").unwrap(), g, vec![0]).unwrap();
        let s = principal_sieve(&c, &zero).unwrap();
        assert_eq!(s.member_names(&c), vec!["[0]"]);
        // Constant maps to 0 from every carrier are members, nothing else.
        let members = s.arrows(&c).unwrap();
        assert_eq!(members.len(), 3);
        assert!(is_sieve(&c, g, &members).unwrap());
        assert!(!is_sieve(&c, g, &members[..2]).unwrap());
        // Pull back along the first projection GG -> G.
        let gg = c.object_id("GG").unwrap();
        let p1 = c.map_arrow(gg, g, vec![0, 0, 1, 1]).unwrap();
        let back = pullback_sieve(&c, &p1, &s).unwrap();
        let pair = |v: Vec<u32>| c.map_arrow(g, gg, v).unwrap();
        assert!(back.contains(&c, &pair(vec![0, 1])));
        assert!(!back.contains(&c, &pair(vec![0, 2])));
    }
}
