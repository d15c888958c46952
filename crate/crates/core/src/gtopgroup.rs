//! Topological monoid and group objects, in two readings.
//!
//! The object-level reading asks that `mu` and `zeta` be continuous for the
//! localized topology at the carrier, with `G x G` carrying the intersection
//! of the two pulled-back topologies. The functor-level reading treats a
//! monoidal operation on a poset as a functor `C x C -> C` and asks that it
//! be associative, unital and cover preserving.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Witness;
use crate::continuity::{
    continuous_under, is_cover_preserving, localize, pullback_local, ContinuityVerdict, CoverPreservation,
    LocalTopology,
};
use crate::error::{Error, Result};
use crate::fincat::{
    binary_coproduct, binary_product, build_product_category, ArrowId, FinCategory, Functor, ObjId, ProductCategory,
    ProductCone,
};
use crate::gtopology::{same_category, GrothendieckTopology};

/// `pi1*(L) ∩ pi2*(L)` at the apex of `cone`.
pub fn product_local_topology(c: &FinCategory, cone: &ProductCone, l: &LocalTopology) -> Result<LocalTopology> {
    if cone.factors != (l.base(), l.base()) {
        return Err(Error::structural(format!(
            "cone is not a square of {}",
            c.object_name(l.base())
        )));
    }
    let left = pullback_local(c, &cone.left, l)?;
    let right = pullback_local(c, &cone.right, l)?;
    LocalTopology::new(
        c,
        cone.apex,
        left.sieves().intersection(right.sieves()).cloned().collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTopGroupReport {
    pub topology: String,
    /// The local topology used at `G x G`.
    pub product: LocalTopology,
    pub mul: ContinuityVerdict,
    /// `None` for monoid witnesses.
    pub inv: Option<ContinuityVerdict>,
}

impl GTopGroupReport {
    pub fn passed(&self) -> bool {
        self.mul.holds() && self.inv.as_ref().is_none_or(|v| v.holds())
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        GTopDisplay { r: self, c }
    }
}

struct GTopDisplay<'a> {
    r: &'a GTopGroupReport,
    c: &'a FinCategory,
}

fn verdict_line(f: &mut fmt::Formatter<'_>, c: &FinCategory, label: &str, v: &ContinuityVerdict) -> fmt::Result {
    match &v.witness {
        None => writeln!(f, "{label}: continuous"),
        Some(s) => writeln!(f, "{label}: not continuous, witness {}", s.display(c)),
    }
}

impl fmt::Display for GTopDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, c) = (self.r, self.c);
        writeln!(f, "reading: object level, topology {}", r.topology)?;
        writeln!(
            f,
            "product topology at {}: {} sieves",
            c.object_name(r.product.base()),
            r.product.len()
        )?;
        verdict_line(f, c, "mul", &r.mul)?;
        if let Some(v) = &r.inv {
            verdict_line(f, c, "inv", v)?;
        }
        writeln!(f, "verdict: {}", if r.passed() { "holds" } else { "fails" })
    }
}

/// Continuity of `mu` (and `zeta` for groups) at the carrier.
pub fn is_gtop_algebraic_object(c: &FinCategory, w: &Witness, j: &GrothendieckTopology) -> Result<GTopGroupReport> {
    if j.category().as_ref() != c {
        return Err(Error::structural("topology lives on a different category"));
    }
    let m = w.monoid();
    let local = localize(j, m.carrier)?;
    let product = product_local_topology(c, &m.square, &local)?;
    let mul = continuous_under(c, &m.mul, &product, &local)?;
    let inv = w.inv().map(|z| continuous_under(c, z, &local, &local)).transpose()?;
    Ok(GTopGroupReport {
        topology: j.name().to_string(),
        product,
        mul,
        inv,
    })
}

/// A monoid structure on a category given by a multiplication functor.
#[derive(Debug, Clone)]
pub struct FunctorMonoid {
    pub product: ProductCategory,
    pub mul: Functor,
    pub unit: ObjId,
}

impl FunctorMonoid {
    pub fn new(product: ProductCategory, mul: Functor, unit: ObjId) -> Result<Self> {
        if !Arc::ptr_eq(mul.dom(), &product.category) {
            return Err(Error::structural(
                "multiplication must be defined on the product category",
            ));
        }
        if !same_category(mul.cod(), product.left_factor()) || !same_category(mul.cod(), product.right_factor()) {
            return Err(Error::structural("multiplication must land in the factor category"));
        }
        mul.cod().check_object(unit)?;
        Ok(FunctorMonoid { product, mul, unit })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        self.mul.cod()
    }

    fn mul_arrows(&self, f: ArrowId, g: ArrowId) -> ArrowId {
        self.mul.arrow(self.product.pair_arrow(f, g))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetOperation {
    /// Least upper bound, e.g. `lcm` on divisors.
    Join,
    /// Greatest lower bound, e.g. `gcd` on divisors.
    Meet,
}

fn require_thin(c: &FinCategory) -> Result<()> {
    for a in c.objects() {
        for b in c.objects() {
            if c.hom_size(a, b).unwrap_or(0) > 1
                || (a != b && c.hom_size(a, b) == Some(1) && c.hom_size(b, a) == Some(1))
            {
                return Err(Error::structural(format!("{} is not a poset", c.name())));
            }
        }
    }
    Ok(())
}

fn only_arrow(c: &FinCategory, a: ObjId, b: ObjId) -> ArrowId {
    match c.hom(a, b).expect("table hom").pop() {
        Some(crate::fincat::Arrow::Table(id)) => id,
        _ => unreachable!("comparable in a poset"),
    }
}

/// The functor `C x C -> C` sending `(a, b)` to their join or meet.
pub fn poset_monoid(c: &Arc<FinCategory>, op: PosetOperation, unit: ObjId) -> Result<FunctorMonoid> {
    require_thin(c)?;
    let product = build_product_category(c, c)?;
    let mut objects = Vec::with_capacity(product.category.object_count());
    for p in product.category.objects() {
        let (a, b) = (product.left.object(p), product.right.object(p));
        let apex = match op {
            PosetOperation::Join => binary_coproduct(c, a, b)?.first().map(|k| k.apex),
            PosetOperation::Meet => binary_product(c, a, b)?.first().map(|k| k.apex),
        };
        objects.push(apex.ok_or_else(|| {
            Error::structural(format!(
                "{} and {} have no {}",
                c.object_name(a),
                c.object_name(b),
                if op == PosetOperation::Join { "join" } else { "meet" }
            ))
        })?);
    }
    let records = product.category.table_arrows().expect("table");
    let arrows = records
        .iter()
        .map(|r| only_arrow(c, objects[r.dom], objects[r.cod]))
        .collect();
    let mul = Functor::new(product.category.clone(), c.clone(), objects, arrows)?;
    FunctorMonoid::new(product, mul, unit)
}

/// `lcm` on a divisor poset, with unit `1`.
pub fn lcm_monoid(c: &Arc<FinCategory>) -> Result<FunctorMonoid> {
    let unit = c.object_id("1")?;
    poset_monoid(c, PosetOperation::Join, unit)
}

/// The inclusion of a subposet, matching objects by name.
pub fn inclusion_functor(sub: &Arc<FinCategory>, sup: &Arc<FinCategory>) -> Result<Functor> {
    require_thin(sub)?;
    require_thin(sup)?;
    let objects = sub
        .objects()
        .map(|o| sup.object_id(sub.object_name(o)))
        .collect::<Result<Vec<_>>>()?;
    let records = sub.table_arrows().expect("table");
    let mut arrows = Vec::with_capacity(records.len());
    for r in records {
        let (a, b) = (objects[r.dom], objects[r.cod]);
        if sup.hom_size(a, b) != Some(1) {
            return Err(Error::structural(format!(
                "{} is not below {} in {}",
                sup.object_name(a),
                sup.object_name(b),
                sup.name()
            )));
        }
        arrows.push(only_arrow(sup, a, b));
    }
    Functor::new(sub.clone(), sup.clone(), objects, arrows)
}

/// A submonoid given by its own structure and an inclusion functor.
#[derive(Debug, Clone, Copy)]
pub struct Submonoid<'a> {
    pub monoid: &'a FunctorMonoid,
    pub inclusion: &'a Functor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorMonoidReport {
    /// A triple of arrows on which associativity fails.
    pub associativity: Option<(ArrowId, ArrowId, ArrowId)>,
    /// An arrow `f` with `1 * f != f` or `f * 1 != f`.
    pub unit: Option<ArrowId>,
    pub covers: CoverPreservation,
    /// `None` when no submonoid was given; otherwise a failing pair of arrows, if any.
    pub square: Option<Option<(ArrowId, ArrowId)>>,
}

impl FunctorMonoidReport {
    pub fn passed(&self) -> bool {
        self.associativity.is_none()
            && self.unit.is_none()
            && self.covers.holds()
            && !matches!(self.square, Some(Some(_)))
    }

    pub fn display<'a>(&'a self, m: &'a FunctorMonoid) -> impl fmt::Display + 'a {
        FunctorDisplay { r: self, m }
    }
}

struct FunctorDisplay<'a> {
    r: &'a FunctorMonoidReport,
    m: &'a FunctorMonoid,
}

impl fmt::Display for FunctorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, m) = (self.r, self.m);
        let c = m.category();
        let name = |a: ArrowId| c.arrow_name(&crate::fincat::Arrow::Table(a));
        writeln!(f, "reading: functor level")?;
        match r.associativity {
            None => writeln!(f, "associativity: holds")?,
            Some((a, b, d)) => writeln!(f, "associativity: fails on ({}, {}, {})", name(a), name(b), name(d))?,
        }
        match r.unit {
            None => writeln!(f, "unit {}: holds", c.object_name(m.unit))?,
            Some(a) => writeln!(f, "unit {}: fails on {}", c.object_name(m.unit), name(a))?,
        }
        match &r.covers.witness {
            None => writeln!(f, "cover preservation: holds")?,
            Some((d, s)) => {
                let p = &m.product.category;
                writeln!(
                    f,
                    "cover preservation: fails, cover {} of {} is not sent to a cover",
                    s.display(p),
                    p.object_name(*d)
                )?
            }
        }
        match r.square {
            None => {}
            Some(None) => writeln!(f, "submonoid square: commutes")?,
            Some(Some((a, b))) => writeln!(f, "submonoid square: fails on arrow pair ({a}, {b}) of the submonoid")?,
        }
        writeln!(f, "verdict: {}", if r.passed() { "holds" } else { "fails" })
    }
}

/// Associativity, unitality, cover preservation and, given a submonoid,
/// `mul . (i x i) = i . mul'`, all checked on arrows.
pub fn is_gtop_functor_monoid(
    m: &FunctorMonoid,
    jprod: &GrothendieckTopology,
    j: &GrothendieckTopology,
    sub: Option<Submonoid<'_>>,
) -> Result<FunctorMonoidReport> {
    let c = m.category();
    let arrows = c.table_arrows().expect("table").len();
    let mut associativity = None;
    'outer: for a in 0..arrows {
        for b in 0..arrows {
            let ab = m.mul_arrows(a, b);
            for d in 0..arrows {
                if m.mul_arrows(ab, d) != m.mul_arrows(a, m.mul_arrows(b, d)) {
                    associativity = Some((a, b, d));
                    break 'outer;
                }
            }
        }
    }
    let e = m.unit;
    let unit = (0..arrows).find(|&f| m.mul_arrows(e, f) != f || m.mul_arrows(f, e) != f);
    let covers = is_cover_preserving(&m.mul, jprod, j)?;
    let square = sub
        .map(|s| -> Result<_> {
            let i = s.inclusion;
            if !same_category(i.dom(), s.monoid.category()) || !same_category(i.cod(), c) {
                return Err(Error::structural(
                    "inclusion does not connect the submonoid to the monoid",
                ));
            }
            let n = i.dom().table_arrows().expect("table").len();
            for a in 0..n {
                for b in 0..n {
                    if m.mul_arrows(i.arrow(a), i.arrow(b)) != i.arrow(s.monoid.mul_arrows(a, b)) {
                        return Ok(Some((a, b)));
                    }
                }
            }
            Ok(None)
        })
        .transpose()?;
    Ok(FunctorMonoidReport {
        associativity,
        unit,
        covers,
        square,
    })
}
