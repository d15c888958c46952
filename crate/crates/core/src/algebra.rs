//! Monoid, group and abelian group objects in a category with chosen binary
//! products, and homomorphisms between them.
//!
//! `G x G x G` is taken to be `(G x G) x G`. Every derived arrow (`mu x 1`,
//! the diagonal, the twist, `f x f`) is computed by pairing through the
//! chosen cones.

use std::fmt;

use crate::error::{Error, Result};
use crate::fincat::{
    binary_product, is_product_cone, terminal_objects, Arrow, Backend, Budget, FinCategory, ObjId, Path, ProductCone,
};

/// `(G, mu, eta)` with the cones used to read `mu` and state the laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidObject {
    pub carrier: ObjId,
    pub mul: Arrow,
    pub unit: Arrow,
    pub terminal: ObjId,
    /// `G x G`.
    pub square: ProductCone,
    /// `(G x G) x G`.
    pub cube: ProductCone,
}

impl MonoidObject {
    /// Uses the first terminal object and the first product cones found.
    pub fn new(c: &FinCategory, carrier: ObjId, mul: Arrow, unit: Arrow) -> Result<Self> {
        c.check_object(carrier)?;
        let terminal = *terminal_objects(c)
            .first()
            .ok_or_else(|| Error::structural(format!("{} has no terminal object", c.name())))?;
        let square = first_product(c, carrier, carrier)?;
        let cube = first_product(c, square.apex, carrier)?;
        Self::with_cones(c, carrier, mul, unit, terminal, square, cube)
    }

    /// Checks typing and that the given cones are products.
    pub fn with_cones(
        c: &FinCategory,
        carrier: ObjId,
        mul: Arrow,
        unit: Arrow,
        terminal: ObjId,
        square: ProductCone,
        cube: ProductCone,
    ) -> Result<Self> {
        c.check_object(carrier)?;
        c.check_object(terminal)?;
        c.check_arrow(&mul)?;
        c.check_arrow(&unit)?;
        if !terminal_objects(c).contains(&terminal) {
            return Err(Error::structural(format!(
                "{} is not terminal",
                c.object_name(terminal)
            )));
        }
        if square.factors != (carrier, carrier) || cube.factors != (square.apex, carrier) {
            return Err(Error::structural("product cones do not match the carrier"));
        }
        for cone in [&square, &cube] {
            if !is_product_cone(c, cone)? {
                return Err(Error::UniversalProperty(format!(
                    "{} with the given projections is not a product",
                    c.object_name(cone.apex)
                )));
            }
        }
        let g = c.object_name(carrier);
        if c.dom(&mul) != square.apex || c.cod(&mul) != carrier {
            return Err(Error::structural(format!(
                "multiplication {} must go from {} to {g}",
                c.arrow_name(&mul),
                c.object_name(square.apex)
            )));
        }
        if c.dom(&unit) != terminal || c.cod(&unit) != carrier {
            return Err(Error::structural(format!(
                "unit {} must go from {} to {g}",
                c.arrow_name(&unit),
                c.object_name(terminal)
            )));
        }
        Ok(MonoidObject {
            carrier,
            mul,
            unit,
            terminal,
            square,
            cube,
        })
    }

    /// `!: G -> 1`.
    pub fn bang(&self, c: &FinCategory) -> Result<Arrow> {
        Ok(c.hom(self.carrier, self.terminal)?.pop().expect("terminal"))
    }
}

fn first_product(c: &FinCategory, a: ObjId, b: ObjId) -> Result<ProductCone> {
    binary_product(c, a, b)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::structural(format!("no product of {} and {}", c.object_name(a), c.object_name(b))))
}

/// A monoid object with an inverse `zeta: G -> G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupObject {
    pub monoid: MonoidObject,
    pub inv: Arrow,
}

impl GroupObject {
    pub fn new(c: &FinCategory, monoid: MonoidObject, inv: Arrow) -> Result<Self> {
        c.check_arrow(&inv)?;
        if c.dom(&inv) != monoid.carrier || c.cod(&inv) != monoid.carrier {
            return Err(Error::structural(format!(
                "inverse {} must be an endomorphism of {}",
                c.arrow_name(&inv),
                c.object_name(monoid.carrier)
            )));
        }
        Ok(GroupObject { monoid, inv })
    }
}

/// Either kind of algebraic witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Monoid(MonoidObject),
    Group(GroupObject),
}

impl Witness {
    pub fn monoid(&self) -> &MonoidObject {
        match self {
            Witness::Monoid(m) => m,
            Witness::Group(g) => &g.monoid,
        }
    }

    pub fn inv(&self) -> Option<&Arrow> {
        match self {
            Witness::Monoid(_) => None,
            Witness::Group(g) => Some(&g.inv),
        }
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        WitnessDisplay { w: self, c }
    }
}

struct WitnessDisplay<'a> {
    w: &'a Witness,
    c: &'a FinCategory,
}

impl fmt::Display for WitnessDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, m) = (self.c, self.w.monoid());
        let kind = if self.w.inv().is_some() { "group" } else { "monoid" };
        write!(
            f,
            "{kind} {} mul={} unit={}",
            c.object_name(m.carrier),
            c.arrow_name(&m.mul),
            c.arrow_name(&m.unit)
        )?;
        if let Some(z) = self.w.inv() {
            write!(f, " inv={}", c.arrow_name(z))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraLaw {
    Associativity,
    LeftUnit,
    RightUnit,
    Inverse,
    TwistLeft,
    TwistRight,
    Commutativity,
    Homomorphism,
}

impl fmt::Display for AlgebraLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraLaw::Associativity => "associativity",
            AlgebraLaw::LeftUnit => "left unit",
            AlgebraLaw::RightUnit => "right unit",
            AlgebraLaw::Inverse => "inverse",
            AlgebraLaw::TwistLeft => "twist (first projection)",
            AlgebraLaw::TwistRight => "twist (second projection)",
            AlgebraLaw::Commutativity => "commutativity",
            AlgebraLaw::Homomorphism => "homomorphism",
        })
    }
}

/// A diagram that does not commute, as its two paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramFailure {
    pub law: AlgebraLaw,
    pub left: Path,
    pub right: Path,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub failures: Vec<DiagramFailure>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        ReportDisplay { r: self, c }
    }

    fn require(
        &mut self,
        c: &FinCategory,
        law: AlgebraLaw,
        left: Vec<Arrow>,
        right: Vec<Arrow>,
        start: ObjId,
    ) -> Result<()> {
        let left = path(c, start, left)?;
        let right = path(c, start, right)?;
        if left.composite(c)? != right.composite(c)? {
            self.failures.push(DiagramFailure { law, left, right });
        }
        Ok(())
    }
}

fn path(c: &FinCategory, start: ObjId, arrows: Vec<Arrow>) -> Result<Path> {
    if arrows.is_empty() {
        Ok(Path::identity(start))
    } else {
        Path::new(c, arrows)
    }
}

struct ReportDisplay<'a> {
    r: &'a AlgebraReport,
    c: &'a FinCategory,
}

impl fmt::Display for ReportDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.passed() {
            return writeln!(f, "all diagrams commute");
        }
        for d in &self.r.failures {
            writeln!(
                f,
                "{} fails: {} != {}",
                d.law,
                d.left.display(self.c),
                d.right.display(self.c)
            )?;
        }
        Ok(())
    }
}

/// Associativity and both unit laws.
pub fn check_monoid_object(c: &FinCategory, w: &MonoidObject) -> Result<AlgebraReport> {
    let mut report = AlgebraReport::default();
    monoid_laws(c, w, &mut report)?;
    Ok(report)
}

fn monoid_laws(c: &FinCategory, w: &MonoidObject, report: &mut AlgebraReport) -> Result<()> {
    let g = w.carrier;
    let (p1, p2) = (&w.square.left, &w.square.right);
    let (q1, q2) = (&w.cube.left, &w.cube.right);
    let mu = &w.mul;

    // ((a, b), c) -> (ab, c) and ((a, b), c) -> (a, bc).
    let mu_times_1 = w.square.pair(c, &c.compose(mu, q1)?, q2)?;
    let bc = c.compose(mu, &w.square.pair(c, &c.compose(p2, q1)?, q2)?)?;
    let one_times_mu = w.square.pair(c, &c.compose(p1, q1)?, &bc)?;
    report.require(
        c,
        AlgebraLaw::Associativity,
        vec![mu_times_1, mu.clone()],
        vec![one_times_mu, mu.clone()],
        w.cube.apex,
    )?;

    let e = c.compose(&w.unit, &w.bang(c)?)?;
    let id = c.identity(g);
    let left = w.square.pair(c, &e, &id)?;
    report.require(c, AlgebraLaw::LeftUnit, vec![left, mu.clone()], vec![], g)?;
    let right = w.square.pair(c, &id, &e)?;
    report.require(c, AlgebraLaw::RightUnit, vec![right, mu.clone()], vec![], g)?;
    Ok(())
}

fn inverse_law(c: &FinCategory, w: &GroupObject, report: &mut AlgebraReport) -> Result<()> {
    let m = &w.monoid;
    let g = m.carrier;
    let id = c.identity(g);
    // For tables `pair` fails unless the mediating arrow is unique.
    let delta = m.square.pair(c, &id, &id)?;
    let one_times_zeta = m.square.pair(c, &m.square.left, &c.compose(&w.inv, &m.square.right)?)?;
    report.require(
        c,
        AlgebraLaw::Inverse,
        vec![delta, one_times_zeta, m.mul.clone()],
        vec![m.bang(c)?, m.unit.clone()],
        g,
    )
}

/// Monoid laws plus `mu . (1 x zeta) . delta = eta . !`.
pub fn check_group_object(c: &FinCategory, w: &GroupObject) -> Result<AlgebraReport> {
    let mut report = AlgebraReport::default();
    monoid_laws(c, &w.monoid, &mut report)?;
    inverse_law(c, w, &mut report)?;
    Ok(report)
}

/// Group laws plus `mu . tau = mu` for the twist `tau = <p2, p1>`.
pub fn check_abelian_group_object(c: &FinCategory, w: &GroupObject) -> Result<AlgebraReport> {
    let mut report = check_group_object(c, w)?;
    let m = &w.monoid;
    let (p1, p2) = (&m.square.left, &m.square.right);
    let apex = m.square.apex;
    let tau = m.square.pair(c, p2, p1)?;
    report.require(
        c,
        AlgebraLaw::TwistLeft,
        vec![tau.clone(), p2.clone()],
        vec![p1.clone()],
        apex,
    )?;
    report.require(
        c,
        AlgebraLaw::TwistRight,
        vec![tau.clone(), p1.clone()],
        vec![p2.clone()],
        apex,
    )?;
    report.require(
        c,
        AlgebraLaw::Commutativity,
        vec![tau, m.mul.clone()],
        vec![m.mul.clone()],
        apex,
    )?;
    Ok(report)
}

/// `mu2 . (f x f) = f . mu1`.
pub fn check_homomorphism(
    c: &FinCategory,
    source: &MonoidObject,
    target: &MonoidObject,
    f: &Arrow,
) -> Result<AlgebraReport> {
    c.check_arrow(f)?;
    if c.dom(f) != source.carrier || c.cod(f) != target.carrier {
        return Err(Error::structural(format!(
            "{} does not go from {} to {}",
            c.arrow_name(f),
            c.object_name(source.carrier),
            c.object_name(target.carrier)
        )));
    }
    let ff = target.square.pair(
        c,
        &c.compose(f, &source.square.left)?,
        &c.compose(f, &source.square.right)?,
    )?;
    let mut report = AlgebraReport::default();
    report.require(
        c,
        AlgebraLaw::Homomorphism,
        vec![ff, target.mul.clone()],
        vec![source.mul.clone(), f.clone()],
        source.square.apex,
    )?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Monoid,
    Group,
}

/// Every passing witness of the given kind.
///
/// Searches every carrier, every product cone on `G x G`, every terminal
/// object and every candidate `mu`, `eta` (and `zeta`). The cube cone does
/// not affect the verdict, so only the first is used. Candidate count is
/// capped by `cap_search`.
pub fn find_algebraic_objects(c: &FinCategory, kind: AlgebraKind) -> Result<Vec<Witness>> {
    if c.backend() != Backend::Table {
        return Err(Error::structural(
            "searching for algebraic objects needs a table category",
        ));
    }
    let terminals = terminal_objects(c);
    if terminals.is_empty() {
        return Err(Error::structural(format!("{} has no terminal object", c.name())));
    }
    let mut budget = Budget::new(c, "algebraic object search");
    let mut out = Vec::new();
    for g in c.objects() {
        for square in binary_product(c, g, g)? {
            let Some(cube) = binary_product(c, square.apex, g)?.into_iter().next() else {
                continue;
            };
            for &t in &terminals {
                for mul in c.hom(square.apex, g)? {
                    for unit in c.hom(t, g)? {
                        let m = MonoidObject {
                            carrier: g,
                            mul: mul.clone(),
                            unit,
                            terminal: t,
                            square: square.clone(),
                            cube: cube.clone(),
                        };
                        budget.spend(1)?;
                        if !check_monoid_object(c, &m)?.passed() {
                            continue;
                        }
                        match kind {
                            AlgebraKind::Monoid => out.push(Witness::Monoid(m)),
                            AlgebraKind::Group => {
                                for inv in c.hom(g, g)? {
                                    budget.spend(1)?;
                                    let w = GroupObject { monoid: m.clone(), inv };
                                    if check_group_object(c, &w)?.passed() {
                                        out.push(Witness::Group(w));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
