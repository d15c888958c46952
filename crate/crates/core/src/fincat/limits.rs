//! Terminal/initial objects and binary (co)products by universal property.

use std::collections::{HashMap, HashSet};

use super::{Arrow, Backend, FinCategory, MapArrow, ObjId};
use crate::error::{Error, Result};

/// Objects `T` with exactly one arrow `X -> T` for every `X`.
pub fn terminal_objects(c: &FinCategory) -> Vec<ObjId> {
    c.objects()
        .filter(|&t| c.objects().all(|x| c.hom_size(x, t) == Some(1)))
        .collect()
}

/// Objects `I` with exactly one arrow `I -> X` for every `X`.
pub fn initial_objects(c: &FinCategory) -> Vec<ObjId> {
    c.objects()
        .filter(|&i| c.objects().all(|x| c.hom_size(i, x) == Some(1)))
        .collect()
}

/// A product `apex` of `factors.0` and `factors.1` with its projections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductCone {
    pub apex: ObjId,
    pub left: Arrow,
    pub right: Arrow,
    pub factors: (ObjId, ObjId),
}

/// A coproduct `apex` of `factors.0` and `factors.1` with its injections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoproductCone {
    pub apex: ObjId,
    pub left: Arrow,
    pub right: Arrow,
    pub factors: (ObjId, ObjId),
}

impl ProductCone {
    /// The mediating arrow `<f, g>: X -> apex`.
    pub fn pair(&self, c: &FinCategory, f: &Arrow, g: &Arrow) -> Result<Arrow> {
        self.check_legs(c, f, g)?;
        if c.backend() == Backend::FinSet {
            return self.pair_pointwise(c, f, g);
        }
        let mut found = self.mediating_arrows(c, f, g)?;
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(Error::UniversalProperty(format!(
                "no mediating arrow for <{}, {}> into {}",
                c.arrow_name(f),
                c.arrow_name(g),
                c.object_name(self.apex)
            ))),
            k => Err(Error::UniversalProperty(format!(
                "{k} mediating arrows for <{}, {}> into {}",
                c.arrow_name(f),
                c.arrow_name(g),
                c.object_name(self.apex)
            ))),
        }
    }

    /// Every `m: X -> apex` with `left . m = f` and `right . m = g`, by exhaustive search.
    pub fn mediating_arrows(&self, c: &FinCategory, f: &Arrow, g: &Arrow) -> Result<Vec<Arrow>> {
        self.check_legs(c, f, g)?;
        let mut out = Vec::new();
        for m in c.hom(c.dom(f), self.apex)? {
            if c.compose(&self.left, &m)? == *f && c.compose(&self.right, &m)? == *g {
                out.push(m);
            }
        }
        Ok(out)
    }

    fn check_legs(&self, c: &FinCategory, f: &Arrow, g: &Arrow) -> Result<()> {
        c.check_arrow(f)?;
        c.check_arrow(g)?;
        if c.dom(f) != c.dom(g) || c.cod(f) != self.factors.0 || c.cod(g) != self.factors.1 {
            return Err(Error::structural(format!(
                "<{}, {}> is not a cone over ({}, {})",
                c.arrow_name(f),
                c.arrow_name(g),
                c.object_name(self.factors.0),
                c.object_name(self.factors.1)
            )));
        }
        Ok(())
    }

    fn pair_pointwise(&self, c: &FinCategory, f: &Arrow, g: &Arrow) -> Result<Arrow> {
        let (Arrow::Map(p1), Arrow::Map(p2), Arrow::Map(fm), Arrow::Map(gm)) = (&self.left, &self.right, f, g) else {
            unreachable!("finset arrows are maps")
        };
        let mut lookup = HashMap::new();
        for (e, (&a, &b)) in p1.values.iter().zip(&p2.values).enumerate() {
            if lookup.insert((a, b), e as u32).is_some() {
                return Err(Error::UniversalProperty(format!(
                    "projections of {} are not jointly injective",
                    c.object_name(self.apex)
                )));
            }
        }
        let values = fm
            .values
            .iter()
            .zip(&gm.values)
            .map(|(a, b)| {
                lookup.get(&(*a, *b)).copied().ok_or_else(|| {
                    Error::UniversalProperty(format!(
                        "projections of {} miss the pair ({a}, {b})",
                        c.object_name(self.apex)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arrow::Map(MapArrow {
            dom: fm.dom,
            cod: self.apex,
            values,
        }))
    }
}

impl CoproductCone {
    /// The mediating arrow `[f, g]: apex -> X`.
    pub fn copair(&self, c: &FinCategory, f: &Arrow, g: &Arrow) -> Result<Arrow> {
        if c.cod(f) != c.cod(g) || c.dom(f) != self.factors.0 || c.dom(g) != self.factors.1 {
            return Err(Error::structural("legs do not form a cocone"));
        }
        let mut found = Vec::new();
        for m in c.hom(self.apex, c.cod(f))? {
            if c.compose(&m, &self.left)? == *f && c.compose(&m, &self.right)? == *g {
                found.push(m);
            }
        }
        if found.len() == 1 {
            Ok(found.pop().unwrap())
        } else {
            Err(Error::UniversalProperty(format!(
                "{} mediating arrows out of {}",
                found.len(),
                c.object_name(self.apex)
            )))
        }
    }
}

/// Binary products of `a` and `b`.
///
/// For `table` categories this returns every cone satisfying the universal
/// property (products are unique only up to isomorphism). For `finset`
/// categories it returns the canonical cartesian cone on the first carrier of
/// size `|a| * |b|`, encoding `(x, y)` as `x * |b| + y`; the result is empty
/// when no such carrier exists.
pub fn binary_product(c: &FinCategory, a: ObjId, b: ObjId) -> Result<Vec<ProductCone>> {
    c.check_object(a)?;
    c.check_object(b)?;
    match c.backend() {
        Backend::Table => search_binary_products(c, a, b),
        Backend::FinSet => {
            let (na, nb) = (c.carrier_size(a).unwrap(), c.carrier_size(b).unwrap());
            let Some(apex) = c.objects().find(|&o| c.carrier_size(o) == Some(na * nb)) else {
                return Ok(Vec::new());
            };
            let left = (0..na * nb).map(|e| (e / nb) as u32).collect();
            let right = (0..na * nb).map(|e| (e % nb) as u32).collect();
            Ok(vec![ProductCone {
                apex,
                left: c.map_arrow(apex, a, left)?,
                right: c.map_arrow(apex, b, right)?,
                factors: (a, b),
            }])
        }
    }
}

/// Universal-property search for products, valid for either backend as long
/// as the hom-sets involved can be enumerated.
pub fn search_binary_products(c: &FinCategory, a: ObjId, b: ObjId) -> Result<Vec<ProductCone>> {
    let mut budget = Budget::new(c, "binary product search");
    let mut out = Vec::new();
    for apex in c.objects() {
        let lefts = c.hom(apex, a)?;
        let rights = c.hom(apex, b)?;
        for p1 in &lefts {
            for p2 in &rights {
                budget.spend(1)?;
                if is_bijective_pairing(
                    c,
                    apex,
                    |m| Ok((c.compose(p1, m)?, c.compose(p2, m)?)),
                    a,
                    b,
                    true,
                    &mut budget,
                )? {
                    out.push(ProductCone {
                        apex,
                        left: p1.clone(),
                        right: p2.clone(),
                        factors: (a, b),
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Whether `cone` satisfies the universal property of a product of its factors.
pub fn is_product_cone(c: &FinCategory, cone: &ProductCone) -> Result<bool> {
    let (a, b) = cone.factors;
    for arrow in [&cone.left, &cone.right] {
        c.check_arrow(arrow)?;
    }
    if c.dom(&cone.left) != cone.apex
        || c.dom(&cone.right) != cone.apex
        || c.cod(&cone.left) != a
        || c.cod(&cone.right) != b
    {
        return Ok(false);
    }
    if let (Arrow::Map(p1), Arrow::Map(p2)) = (&cone.left, &cone.right) {
        // Cartesian products of sets: the legs must be a bijection onto pairs.
        let (na, nb) = (c.carrier_size(a).unwrap(), c.carrier_size(b).unwrap());
        if p1.values.len() != na * nb {
            return Ok(false);
        }
        let pairs: HashSet<(u32, u32)> = p1.values.iter().copied().zip(p2.values.iter().copied()).collect();
        return Ok(pairs.len() == na * nb);
    }
    let mut budget = Budget::new(c, "product cone check");
    is_bijective_pairing(
        c,
        cone.apex,
        |m| Ok((c.compose(&cone.left, m)?, c.compose(&cone.right, m)?)),
        a,
        b,
        true,
        &mut budget,
    )
}

/// Coproducts of `a` and `b` by universal-property search.
pub fn binary_coproduct(c: &FinCategory, a: ObjId, b: ObjId) -> Result<Vec<CoproductCone>> {
    c.check_object(a)?;
    c.check_object(b)?;
    let mut budget = Budget::new(c, "binary coproduct search");
    let mut out = Vec::new();
    for apex in c.objects() {
        let lefts = c.hom(a, apex)?;
        let rights = c.hom(b, apex)?;
        for i1 in &lefts {
            for i2 in &rights {
                budget.spend(1)?;
                if is_bijective_pairing(
                    c,
                    apex,
                    |m| Ok((c.compose(m, i1)?, c.compose(m, i2)?)),
                    a,
                    b,
                    false,
                    &mut budget,
                )? {
                    out.push(CoproductCone {
                        apex,
                        left: i1.clone(),
                        right: i2.clone(),
                        factors: (a, b),
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// For every test object `X`, checks that `m |-> legs(m)` is a bijection
/// `hom(X, apex) -> hom(X, a) x hom(X, b)` (or the dual with arrows out of
/// `apex` when `into_apex` is false). That is existence and uniqueness of
/// mediating arrows at once.
fn is_bijective_pairing<F>(
    c: &FinCategory,
    apex: ObjId,
    legs: F,
    a: ObjId,
    b: ObjId,
    into_apex: bool,
    budget: &mut Budget,
) -> Result<bool>
where
    F: Fn(&Arrow) -> Result<(Arrow, Arrow)>,
{
    for x in c.objects() {
        let (mediators, na, nb) = if into_apex {
            (c.hom(x, apex)?, c.hom_size(x, a), c.hom_size(x, b))
        } else {
            (c.hom(apex, x)?, c.hom_size(a, x), c.hom_size(b, x))
        };
        let (Some(na), Some(nb)) = (na, nb) else {
            return Ok(false);
        };
        if na.checked_mul(nb) != Some(mediators.len() as u128) {
            return Ok(false);
        }
        budget.spend(mediators.len())?;
        let mut seen = HashSet::with_capacity(mediators.len());
        for m in &mediators {
            if !seen.insert(legs(m)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Work counter against `cap_search`.
pub(crate) struct Budget {
    what: &'static str,
    spent: usize,
    cap: usize,
}

impl Budget {
    pub(crate) fn new(c: &FinCategory, what: &'static str) -> Self {
        Budget {
            what,
            spent: 0,
            cap: c.config().cap_search,
        }
    }

    pub(crate) fn spend(&mut self, n: usize) -> Result<()> {
        self.spent = self.spent.saturating_add(n);
        if self.spent > self.cap {
            Err(Error::resource(self.what, format!("more than {}", self.cap), self.cap))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::fincat::{build_divisor_poset, build_finset_category, CategoryBuilder};

    fn cospan() -> FinCategory {
        let mut b = CategoryBuilder::table("cospan");
        b.object("X").unwrap().object("Y").unwrap().object("Z").unwrap();
        b.arrow("f", "X", "Z").unwrap().arrow("g", "Y", "Z").unwrap();
        b.build().unwrap()
    }

    fn apexes<T>(c: &FinCategory, cones: &[T], apex: impl Fn(&T) -> ObjId) -> Vec<String> {
        cones.iter().map(|k| c.object_name(apex(k)).to_string()).collect()
    }

    #[test]
    fn terminal_objects_examples() {
        let d12 = build_divisor_poset(12, Config::default()).unwrap();
        assert_eq!(terminal_objects(&d12), vec![d12.object_id("12").unwrap()]);
        assert_eq!(initial_objects(&d12), vec![d12.object_id("1").unwrap()]);
        let one = build_divisor_poset(1, Config::default()).unwrap();
        assert_eq!(terminal_objects(&one), vec![0]);
        let c = cospan();
        assert_eq!(terminal_objects(&c), vec![c.object_id("Z").unwrap()]);
    }

    #[test]
    fn divisor_products_are_gcds() {
        let d = build_divisor_poset(12, Config::default()).unwrap();
        let id = |s: &str| d.object_id(s).unwrap();
        let p = binary_product(&d, id("4"), id("6")).unwrap();
        assert_eq!(apexes(&d, &p, |k| k.apex), vec!["2"]);
        let p = binary_product(&d, id("12"), id("4")).unwrap();
        assert_eq!(apexes(&d, &p, |k| k.apex), vec!["4"]);
    }

    #[test]
    fn divisor_coproducts_are_lcms() {
        let d = build_divisor_poset(12, Config::default()).unwrap();
        let id = |s: &str| d.object_id(s).unwrap();
        let q = binary_coproduct(&d, id("4"), id("6")).unwrap();
        assert_eq!(apexes(&d, &q, |k| k.apex), vec!["12"]);
        let q = binary_coproduct(&d, id("2"), id("4")).unwrap();
        assert_eq!(apexes(&d, &q, |k| k.apex), vec!["4"]);
    }

    #[test]
    fn cospan_limits() {
        let c = cospan();
        let (x, y) = (c.object_id("X").unwrap(), c.object_id("Y").unwrap());
        assert!(binary_product(&c, x, y).unwrap().is_empty());
        let q = binary_coproduct(&c, x, y).unwrap();
        assert_eq!(apexes(&c, &q, |k| k.apex), vec!["Z"]);
    }

    #[test]
    fn finset_canonical_cone_agrees_with_search() {
        let c = build_finset_category(&[("1", 1), ("2", 2), ("4", 4)], Config::default()).unwrap();
        let two = c.object_id("2").unwrap();
        let canonical = binary_product(&c, two, two).unwrap();
        let searched = search_binary_products(&c, two, two).unwrap();
        assert_eq!(canonical.len(), 1);
        // Any bijection 4 -> 2 x 2 works: 4! cones, all on the same apex.
        assert_eq!(searched.len(), 24);
        assert!(searched.iter().all(|k| k.apex == canonical[0].apex));
        assert!(searched.contains(&canonical[0]));
    }

    #[test]
    fn pairing_in_tables_and_finsets() {
        let d = build_divisor_poset(12, Config::default()).unwrap();
        let id = |s: &str| d.object_id(s).unwrap();
        let cone = &binary_product(&d, id("4"), id("6")).unwrap()[0];
        let m = cone
            .pair(&d, &d.arrow("1->4").unwrap(), &d.arrow("1->6").unwrap())
            .unwrap();
        assert_eq!(d.arrow_name(&m), "1->2");

        let c = build_finset_category(&[("1", 1), ("2", 2), ("4", 4)], Config::default()).unwrap();
        let two = c.object_id("2").unwrap();
        let cone = &binary_product(&c, two, two).unwrap()[0];
        let id2 = c.identity(two);
        let diag = cone.pair(&c, &id2, &id2).unwrap();
        assert_eq!(c.arrow_name(&diag), "2->4[0,3]");
    }
}
