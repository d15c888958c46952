use std::collections::BTreeSet;
use std::fmt;

use super::GrothendieckTopology;
use crate::error::Result;
use crate::fincat::{Arrow, FinCategory, ObjId};
use crate::sieves::{maximal_sieve, pullback_sieve, sieve_universe, Sieve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// The maximal sieve covers.
    Maximal,
    /// Covers pull back to covers.
    Stability,
    /// A sieve that is locally covering on a cover is a cover.
    Transitivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Maximal => "maximal sieve",
            Axiom::Stability => "stability",
            Axiom::Transitivity => "transitivity",
        })
    }
}

/// One failing instance.
///
/// * `Maximal`: `sieve` is the missing maximal sieve on `object`.
/// * `Stability`: `sieve` covers `object` but its pullback along `arrow` does not cover.
/// * `Transitivity`: `sieve` does not cover `object` although it pulls back to a
///   cover along every member of `cover`, which does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub object: ObjId,
    pub sieve: Sieve,
    pub arrow: Option<Arrow>,
    pub cover: Option<Sieve>,
}

impl AxiomViolation {
    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        ViolationDisplay { v: self, c }
    }
}

struct ViolationDisplay<'a> {
    v: &'a AxiomViolation,
    c: &'a FinCategory,
}

impl fmt::Display for ViolationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, c) = (self.v, self.c);
        let x = c.object_name(v.object);
        match v.axiom {
            Axiom::Maximal => write!(f, "maximal sieve on {x} is not a cover"),
            Axiom::Stability => {
                let h = v.arrow.as_ref().expect("stability witness has an arrow");
                write!(
                    f,
                    "stability: {} covers {x} but its pullback along {} does not cover {}",
                    v.sieve.display(c),
                    c.arrow_name(h),
                    c.object_name(c.dom(h))
                )
            }
            Axiom::Transitivity => {
                let s = v.cover.as_ref().expect("transitivity witness has a cover");
                write!(
                    f,
                    "transitivity: {} pulls back to a cover along every arrow of the cover {} of {x} but is not a cover",
                    v.sieve.display(c),
                    s.display(c)
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        ReportDisplay { r: self, c }
    }
}

struct ReportDisplay<'a> {
    r: &'a AxiomReport,
    c: &'a FinCategory,
}

impl fmt::Display for ReportDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.passed() {
            return writeln!(f, "all axioms hold");
        }
        for v in &self.r.violations {
            writeln!(f, "{}", v.display(self.c))?;
        }
        Ok(())
    }
}

/// Checks the three axioms on every object, reporting every failing instance.
pub fn check_axioms(j: &GrothendieckTopology) -> Result<AxiomReport> {
    let c = &**j.category();
    let assignment = j.assignment()?;
    check_assignment(c, &assignment)
}

pub(crate) fn check_assignment(c: &FinCategory, j: &[BTreeSet<Sieve>]) -> Result<AxiomReport> {
    let mut violations = Vec::new();
    for x in c.objects() {
        let top = maximal_sieve(c, x)?;
        if !j[x].contains(&top) {
            violations.push(AxiomViolation {
                axiom: Axiom::Maximal,
                object: x,
                sieve: top,
                arrow: None,
                cover: None,
            });
        }
    }
    for x in c.objects() {
        let into = c.arrows_into(x)?;
        for s in &j[x] {
            for h in &into {
                if !j[c.dom(h)].contains(&pullback_sieve(c, h, s)?) {
                    violations.push(AxiomViolation {
                        axiom: Axiom::Stability,
                        object: x,
                        sieve: s.clone(),
                        arrow: Some(h.clone()),
                        cover: None,
                    });
                }
            }
        }
    }
    for x in c.objects() {
        let into = c.arrows_into(x)?;
        let members: Vec<Vec<usize>> = j[x]
            .iter()
            .map(|s| (0..into.len()).filter(|&i| s.contains(c, &into[i])).collect())
            .collect();
        for r in sieve_universe(c, x)?.iter().filter(|r| !j[x].contains(*r)) {
            let good = into
                .iter()
                .map(|h| Ok(j[c.dom(h)].contains(&pullback_sieve(c, h, r)?)))
                .collect::<Result<Vec<bool>>>()?;
            let witness = j[x].iter().zip(&members).find(|(_, m)| m.iter().all(|&i| good[i]));
            if let Some((s, _)) = witness {
                violations.push(AxiomViolation {
                    axiom: Axiom::Transitivity,
                    object: x,
                    sieve: r.clone(),
                    arrow: None,
                    cover: Some(s.clone()),
                });
            }
        }
    }
    Ok(AxiomReport { violations })
}
