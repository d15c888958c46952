//! Localized topologies at a single object, pullbacks along arrows,
//! continuity of arrows and cover preservation of functors.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory, Functor, ObjId};
use crate::gtopology::{same_category, GrothendieckTopology};
use crate::sieves::{maximal_sieve, pullback_sieve, sieve_closure, sieve_universe, Sieve};

/// A set of sieves on one object that contains the maximal sieve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalTopology {
    base: ObjId,
    sieves: BTreeSet<Sieve>,
}

impl LocalTopology {
    pub fn new(c: &FinCategory, base: ObjId, sieves: BTreeSet<Sieve>) -> Result<Self> {
        c.check_object(base)?;
        if let Some(s) = sieves.iter().find(|s| s.base() != base) {
            return Err(Error::structural(format!(
                "sieve on {} in a local topology at {}",
                c.object_name(s.base()),
                c.object_name(base)
            )));
        }
        if !sieves.contains(&maximal_sieve(c, base)?) {
            return Err(Error::structural(format!(
                "local topology at {} lacks the maximal sieve",
                c.object_name(base)
            )));
        }
        Ok(LocalTopology { base, sieves })
    }

    pub fn base(&self) -> ObjId {
        self.base
    }

    pub fn sieves(&self) -> &BTreeSet<Sieve> {
        &self.sieves
    }

    pub fn len(&self) -> usize {
        self.sieves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sieves.is_empty()
    }

    pub fn contains(&self, s: &Sieve) -> bool {
        self.sieves.contains(s)
    }

    pub fn is_subset(&self, other: &LocalTopology) -> bool {
        self.base == other.base && self.sieves.is_subset(&other.sieves)
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        LocalDisplay { l: self, c }
    }
}

struct LocalDisplay<'a> {
    l: &'a LocalTopology,
    c: &'a FinCategory,
}

impl fmt::Display for LocalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {{", self.c.object_name(self.l.base))?;
        for (i, s) in self.l.sieves.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", s.display(self.c))?;
        }
        f.write_str("}")
    }
}

/// `(X, J(X))`.
pub fn localize(j: &GrothendieckTopology, x: ObjId) -> Result<LocalTopology> {
    Ok(LocalTopology {
        base: x,
        sieves: j.covers(x)?,
    })
}

/// `f*(L) = { f*(S) | S ∈ L }`, a local topology at `dom f`.
pub fn pullback_local(c: &FinCategory, f: &Arrow, l: &LocalTopology) -> Result<LocalTopology> {
    c.check_arrow(f)?;
    if c.cod(f) != l.base {
        return Err(Error::structural(format!(
            "local topology at {} cannot be pulled back along {}",
            c.object_name(l.base),
            c.arrow_name(f)
        )));
    }
    let sieves = l
        .sieves
        .iter()
        .map(|s| pullback_sieve(c, f, s))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(LocalTopology { base: c.dom(f), sieves })
}

/// Outcome of a continuity check; `witness` is a sieve of `J(B)` missing from
/// `f*(J(C))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityVerdict {
    pub witness: Option<Sieve>,
}

impl ContinuityVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Continuity of `f: B -> C` with `k` at `B` and `l` at `C`: `k ⊆ f*(l)`.
pub fn continuous_under(c: &FinCategory, f: &Arrow, k: &LocalTopology, l: &LocalTopology) -> Result<ContinuityVerdict> {
    c.check_arrow(f)?;
    if k.base != c.dom(f) {
        return Err(Error::structural(format!(
            "local topology at {} is not at the domain of {}",
            c.object_name(k.base),
            c.arrow_name(f)
        )));
    }
    let pulled = pullback_local(c, f, l)?;
    Ok(ContinuityVerdict {
        witness: k.sieves.iter().find(|s| !pulled.contains(s)).cloned(),
    })
}

/// Whether `f: B -> C` satisfies `J(B) ⊆ f*(J(C))`.
pub fn is_continuous(c: &FinCategory, f: &Arrow, j: &GrothendieckTopology) -> Result<ContinuityVerdict> {
    if j.category().as_ref() != c {
        return Err(Error::structural("topology lives on a different category"));
    }
    c.check_arrow(f)?;
    let k = localize(j, c.dom(f))?;
    let l = localize(j, c.cod(f))?;
    continuous_under(c, f, &k, &l)
}

/// `⋂ f_i*(L_i)` at `x`; the whole sieve universe for an empty family.
pub fn initial_local_topology(c: &FinCategory, x: ObjId, family: &[(Arrow, LocalTopology)]) -> Result<LocalTopology> {
    c.check_object(x)?;
    let mut sieves: BTreeSet<Sieve> = sieve_universe(c, x)?.iter().cloned().collect();
    for (f, l) in family {
        c.check_arrow(f)?;
        if c.dom(f) != x {
            return Err(Error::structural(format!(
                "{} does not start at {}",
                c.arrow_name(f),
                c.object_name(x)
            )));
        }
        let pulled = pullback_local(c, f, l)?;
        sieves.retain(|s| pulled.contains(s));
    }
    Ok(LocalTopology { base: x, sieves })
}

/// Outcome of a cover-preservation check; the witness is an object `d` and a
/// cover of `d` whose image does not generate a cover of `F(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverPreservation {
    pub witness: Option<(ObjId, Sieve)>,
}

impl CoverPreservation {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// The sieve on `F(S.base)` generated by the image of `S`.
pub fn image_sieve(func: &Functor, s: &Sieve) -> Result<Sieve> {
    let (dom, cod) = (func.dom(), func.cod());
    let images: Vec<Arrow> = s
        .arrows(dom)?
        .iter()
        .map(|a| match a {
            Arrow::Table(id) => Arrow::Table(func.arrow(*id)),
            Arrow::Map(_) => unreachable!("functors act on table categories"),
        })
        .collect();
    sieve_closure(cod, func.object(s.base()), &images)
}

/// Whether every cover is sent to a generating set of a cover.
///
/// When the codomain topology is given by a rule its covers are upward
/// closed, and only the minimal covers of the domain need to be checked.
pub fn is_cover_preserving(
    func: &Functor,
    jdom: &GrothendieckTopology,
    jcod: &GrothendieckTopology,
) -> Result<CoverPreservation> {
    if !same_category(jdom.category(), func.dom()) || !same_category(jcod.category(), func.cod()) {
        return Err(Error::structural("topologies do not match the functor's categories"));
    }
    for d in func.dom().objects() {
        let candidates: Vec<Sieve> = if jcod.kind().is_some() {
            jdom.minimal_covers(d)?
        } else {
            jdom.covers(d)?.into_iter().collect()
        };
        for s in candidates {
            if !jcod.is_cover(&image_sieve(func, &s)?)? {
                return Ok(CoverPreservation { witness: Some((d, s)) });
            }
        }
    }
    Ok(CoverPreservation { witness: None })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::config::Config;
    use crate::fincat::build_divisor_poset;
    use crate::gtopology::{enumerate_topologies, TopologyKind};
    use crate::sieves::empty_sieve;

    fn d(n: u64) -> Arc<FinCategory> {
        Arc::new(build_divisor_poset(n, Config::default()).unwrap())
    }

    fn rules(c: &Arc<FinCategory>) -> Vec<GrothendieckTopology> {
        TopologyKind::ALL
            .iter()
            .map(|&k| GrothendieckTopology::from_rule(c.clone(), k))
            .filter(|j| crate::gtopology::check_axioms(j).unwrap().passed())
            .collect()
    }

    #[test]
    fn localize_counts() {
        let c = d(12);
        let twelve = c.object_id("12").unwrap();
        let disc = GrothendieckTopology::from_rule(c.clone(), TopologyKind::Discrete);
        assert_eq!(localize(&disc, twelve).unwrap().len(), 10);
        let dense = GrothendieckTopology::from_rule(c.clone(), TopologyKind::Dense);
        let l = localize(&dense, twelve).unwrap();
        assert_eq!(l.len(), 9);
        assert!(!l.contains(&empty_sieve(&c, twelve).unwrap()));
        let triv = GrothendieckTopology::from_rule(c.clone(), TopologyKind::Trivial);
        for x in c.objects() {
            assert_eq!(localize(&triv, x).unwrap().len(), 1);
        }
    }

    #[test]
    fn pullback_examples() {
        let c = d(12);
        let twelve = c.object_id("12").unwrap();
        let six = c.object_id("6").unwrap();
        let triv = GrothendieckTopology::from_rule(c.clone(), TopologyKind::Trivial);
        let l = localize(&triv, twelve).unwrap();
        let p = pullback_local(&c, &c.arrow("6->12").unwrap(), &l).unwrap();
        assert_eq!(p.sieves(), &BTreeSet::from([maximal_sieve(&c, six).unwrap()]));
        let disc = localize(
            &GrothendieckTopology::from_rule(c.clone(), TopologyKind::Discrete),
            twelve,
        )
        .unwrap();
        assert_eq!(pullback_local(&c, &c.identity(twelve), &disc).unwrap(), disc);
        assert!(pullback_local(&c, &c.arrow("6->12").unwrap(), &localize(&triv, six).unwrap()).is_err());
    }

    #[test]
    fn continuity_counterexample_on_arrow_category() {
        let c = d(2);
        let (one, two) = (c.object_id("1").unwrap(), c.object_id("2").unwrap());
        let e1 = empty_sieve(&c, one).unwrap();
        let covers = vec![
            BTreeSet::from([maximal_sieve(&c, one).unwrap(), e1.clone()]),
            BTreeSet::from([maximal_sieve(&c, two).unwrap()]),
        ];
        let j = GrothendieckTopology::explicit(c.clone(), "J", covers).unwrap();
        let v = is_continuous(&c, &c.arrow("1->2").unwrap(), &j).unwrap();
        assert_eq!(v.witness, Some(e1));
        assert!(is_continuous(&c, &c.identity(one), &j).unwrap().holds());
    }

    #[test]
    fn trivial_topology_makes_everything_continuous() {
        let c = d(12);
        let triv = GrothendieckTopology::from_rule(c.clone(), TopologyKind::Trivial);
        for f in c.arrows().unwrap() {
            assert!(is_continuous(&c, &f, &triv).unwrap().holds());
        }
    }

    #[test]
    fn continuous_arrows_compose() {
        for c in [d(12), d(2)] {
            let mut tops = rules(&c);
            if c.object_count() == 2 {
                tops.extend(enumerate_topologies(&c).unwrap());
            }
            let arrows = c.arrows().unwrap();
            for j in &tops {
                for f in &arrows {
                    for g in arrows.iter().filter(|g| c.dom(g) == c.cod(f)) {
                        if is_continuous(&c, f, j).unwrap().holds() && is_continuous(&c, g, j).unwrap().holds() {
                            let gf = c.compose(g, f).unwrap();
                            assert!(is_continuous(&c, &gf, j).unwrap().holds());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_is_functorial_and_keeps_top() {
        let c = d(12);
        let arrows = c.arrows().unwrap();
        for j in rules(&c) {
            for f in &arrows {
                let l = localize(&j, c.cod(f)).unwrap();
                let p = pullback_local(&c, f, &l).unwrap();
                assert!(p.contains(&maximal_sieve(&c, c.dom(f)).unwrap()));
                for g in arrows.iter().filter(|g| c.cod(g) == c.dom(f)) {
                    let fg = c.compose(f, g).unwrap();
                    assert_eq!(pullback_local(&c, &fg, &l).unwrap(), pullback_local(&c, g, &p).unwrap());
                }
            }
        }
    }

    #[test]
    fn initial_topology_examples() {
        let c = d(12);
        let twelve = c.object_id("12").unwrap();
        assert_eq!(initial_local_topology(&c, twelve, &[]).unwrap().len(), 10);
        let dense = localize(&GrothendieckTopology::from_rule(c.clone(), TopologyKind::Dense), twelve).unwrap();
        assert_eq!(
            initial_local_topology(&c, twelve, &[(c.identity(twelve), dense.clone())]).unwrap(),
            dense
        );
        let a = d(2);
        let (one, two) = (a.object_id("1").unwrap(), a.object_id("2").unwrap());
        let l = LocalTopology::new(&a, two, BTreeSet::from([maximal_sieve(&a, two).unwrap()])).unwrap();
        let i = initial_local_topology(&a, one, &[(a.arrow("1->2").unwrap(), l)]).unwrap();
        assert_eq!(i.sieves(), &BTreeSet::from([maximal_sieve(&a, one).unwrap()]));
    }

    #[test]
    fn continuity_is_pullback_inclusion() {
        let c = d(12);
        let arrows = c.arrows().unwrap();
        let tops = rules(&c);
        for f in &arrows {
            for jb in &tops {
                for jc in &tops {
                    let k = localize(jb, c.dom(f)).unwrap();
                    let l = localize(jc, c.cod(f)).unwrap();
                    let v = continuous_under(&c, f, &k, &l).unwrap();
                    assert_eq!(v.holds(), k.is_subset(&pullback_local(&c, f, &l).unwrap()));
                }
            }
        }
    }

    /// `J(Z) ⊆ g*(Ĵ(X))` iff `J(Z) ⊆ (f_i . g)*(J(Y_i))` for every `i`,
    /// over every family of arrows out of `X` with local topologies taken
    /// from the given list of topologies.
    fn check_initial_property(c: &Arc<FinCategory>, tops: &[GrothendieckTopology]) -> usize {
        let arrows = c.arrows().unwrap();
        let mut checked = 0;
        for x in c.objects() {
            let out: Vec<&Arrow> = arrows.iter().filter(|f| c.dom(f) == x).collect();
            for mask in 0u32..1 << out.len() {
                for jy in tops {
                    let family: Vec<(Arrow, LocalTopology)> = out
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, f)| ((*f).clone(), localize(jy, c.cod(f)).unwrap()))
                        .collect();
                    let hat = initial_local_topology(c, x, &family).unwrap();
                    for g in arrows.iter().filter(|g| c.cod(g) == x) {
                        for jz in tops {
                            let k = localize(jz, c.dom(g)).unwrap();
                            let lhs = continuous_under(c, g, &k, &hat).unwrap().holds();
                            let rhs = family.iter().all(|(f, l)| {
                                let fg = c.compose(f, g).unwrap();
                                continuous_under(c, &fg, &k, l).unwrap().holds()
                            });
                            assert_eq!(lhs, rhs, "g = {}", c.arrow_name(g));
                            checked += 1;
                        }
                    }
                }
            }
        }
        checked
    }

    #[test]
    fn initial_topology_characteristic_property() {
        let a = d(2);
        assert!(check_initial_property(&a, &enumerate_topologies(&a).unwrap()) > 0);
        let c = d(12);
        assert!(check_initial_property(&c, &rules(&c)) > 0);
    }

    #[test]
    fn cover_preservation_of_identity() {
        let c = d(12);
        let id = Functor::identity(c.clone()).unwrap();
        for j in rules(&c) {
            assert!(is_cover_preserving(&id, &j, &j).unwrap().holds());
            let e = j.to_explicit().unwrap();
            assert!(is_cover_preserving(&id, &e, &e).unwrap().holds());
        }
    }
}
