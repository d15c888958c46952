//! Grothendieck topologies on finite categories.
//!
//! A topology either stores its covering sieves explicitly, per object, or is
//! given by one of the named rules (trivial, discrete, dense, atomic), in which
//! case covering sieves are decided from the definition and only enumerated on
//! demand. Rule-backed topologies make it possible to reason about a few
//! objects of categories whose sieve universes are far too large to list.

mod axioms;
mod enumerate;
mod lattice;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{initial_objects, FinCategory, ObjId};
use crate::sieves::{empty_sieve, maximal_sieve, principal_sieve, principal_sieves, sieve_universe, Sieve};

pub use axioms::{check_axioms, Axiom, AxiomReport, AxiomViolation};
pub use enumerate::enumerate_topologies;
pub use lattice::{generate_topology, is_coarser, join, meet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TopologyKind {
    /// Only maximal sieves cover.
    Trivial,
    /// Every sieve covers.
    Discrete,
    /// `S` covers `C` iff for every `f: D -> C` some `f . g` lies in `S`.
    Dense,
    /// Every nonempty sieve covers.
    Atomic,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 4] = [
        TopologyKind::Trivial,
        TopologyKind::Discrete,
        TopologyKind::Dense,
        TopologyKind::Atomic,
    ];
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Trivial => "trivial",
            TopologyKind::Discrete => "discrete",
            TopologyKind::Dense => "dense",
            TopologyKind::Atomic => "atomic",
        })
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(TopologyKind::Trivial),
            "discrete" => Ok(TopologyKind::Discrete),
            "dense" => Ok(TopologyKind::Dense),
            "atomic" => Ok(TopologyKind::Atomic),
            _ => Err(Error::structural(format!(
                "unknown topology kind `{s}` (expected trivial, discrete, dense or atomic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Covers {
    Rule(TopologyKind),
    Explicit(Vec<BTreeSet<Sieve>>),
}

/// An assignment of covering sieves to every object of a category.
///
/// Equality is structural: a rule-backed topology is not equal to its
/// explicit expansion; compare [`GrothendieckTopology::to_explicit`] outputs
/// for that.
#[derive(Debug, Clone)]
pub struct GrothendieckTopology {
    category: Arc<FinCategory>,
    name: String,
    covers: Covers,
}

impl PartialEq for GrothendieckTopology {
    fn eq(&self, other: &Self) -> bool {
        same_category(&self.category, &other.category) && self.covers == other.covers
    }
}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GrothendieckTopology {
    /// An explicit candidate; no axioms are checked and maximal sieves are
    /// not added.
    pub fn explicit(category: Arc<FinCategory>, name: impl Into<String>, covers: Vec<BTreeSet<Sieve>>) -> Result<Self> {
        if covers.len() != category.object_count() {
            return Err(Error::structural("cover assignment must list every object"));
        }
        for (x, set) in covers.iter().enumerate() {
            if let Some(s) = set.iter().find(|s| s.base() != x) {
                return Err(Error::structural(format!(
                    "sieve on {} listed as a cover of {}",
                    category.object_name(s.base()),
                    category.object_name(x)
                )));
            }
        }
        Ok(GrothendieckTopology {
            category,
            name: name.into(),
            covers: Covers::Explicit(covers),
        })
    }

    pub fn from_rule(category: Arc<FinCategory>, kind: TopologyKind) -> Self {
        GrothendieckTopology {
            category,
            name: kind.to_string(),
            covers: Covers::Rule(kind),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    /// The rule, for rule-backed topologies.
    pub fn kind(&self) -> Option<TopologyKind> {
        match self.covers {
            Covers::Rule(k) => Some(k),
            Covers::Explicit(_) => None,
        }
    }

    /// `J(x)`.
    pub fn covers(&self, x: ObjId) -> Result<BTreeSet<Sieve>> {
        let c = &*self.category;
        c.check_object(x)?;
        match &self.covers {
            Covers::Explicit(v) => Ok(v[x].clone()),
            Covers::Rule(TopologyKind::Trivial) => Ok(BTreeSet::from([maximal_sieve(c, x)?])),
            Covers::Rule(_) => {
                let mut out = BTreeSet::new();
                for s in sieve_universe(c, x)?.iter() {
                    if self.is_cover(s)? {
                        out.insert(s.clone());
                    }
                }
                Ok(out)
            }
        }
    }

    /// Whether `s` covers its base object.
    pub fn is_cover(&self, s: &Sieve) -> Result<bool> {
        let c = &*self.category;
        let x = s.base();
        match &self.covers {
            Covers::Explicit(v) => Ok(v[x].contains(s)),
            Covers::Rule(TopologyKind::Trivial) => Ok(*s == maximal_sieve(c, x)?),
            Covers::Rule(TopologyKind::Discrete) => Ok(true),
            Covers::Rule(TopologyKind::Atomic) => Ok(!s.is_empty()),
            // f*(S) is nonempty iff the principal sieve of f meets S.
            Covers::Rule(TopologyKind::Dense) => {
                Ok(principal_sieves(c, x)?.iter().all(|p| !p.intersection(s).is_empty()))
            }
        }
    }

    /// `J(x)` for every object.
    pub fn assignment(&self) -> Result<Vec<BTreeSet<Sieve>>> {
        self.category.objects().map(|x| self.covers(x)).collect()
    }

    pub fn to_explicit(&self) -> Result<GrothendieckTopology> {
        Ok(GrothendieckTopology {
            category: self.category.clone(),
            name: self.name.clone(),
            covers: Covers::Explicit(self.assignment()?),
        })
    }

    /// Covers at `x` that include every inclusion-minimal cover.
    ///
    /// Rule-backed covers are upward closed, so a property that is monotone in
    /// the sieve holds on all of `J(x)` iff it holds on these. Explicit
    /// topologies return all of `J(x)`.
    pub fn minimal_covers(&self, x: ObjId) -> Result<Vec<Sieve>> {
        let c = &*self.category;
        match &self.covers {
            Covers::Explicit(v) => Ok(v[x].iter().cloned().collect()),
            Covers::Rule(TopologyKind::Trivial) => Ok(vec![maximal_sieve(c, x)?]),
            Covers::Rule(TopologyKind::Discrete) => Ok(vec![empty_sieve(c, x)?]),
            Covers::Rule(TopologyKind::Atomic) => principal_sieves(c, x),
            Covers::Rule(TopologyKind::Dense) => {
                // With a strict initial object 0, a dense sieve must contain
                // 0 -> x itself, and the sieve it generates is dense.
                if let Some(&zero) = initial_objects(c).first() {
                    let strict = c
                        .arrows_into(zero)?
                        .iter()
                        .map(|a| c.is_isomorphism(a))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .all(|iso| iso);
                    if strict {
                        let bang = c.hom(zero, x)?.pop().expect("initial object maps everywhere");
                        return Ok(vec![principal_sieve(c, &bang)?]);
                    }
                }
                let covers: Vec<Sieve> = self.covers(x)?.into_iter().collect();
                Ok(covers
                    .iter()
                    .filter(|s| !covers.iter().any(|t| t != *s && t.is_subset(s)))
                    .cloned()
                    .collect())
            }
        }
    }
}

/// A builder output together with the axiom verdict.
#[derive(Debug, Clone)]
pub struct BuiltTopology {
    pub topology: GrothendieckTopology,
    /// `Err` when the check itself could not run (e.g. a resource cap).
    pub verdict: Result<AxiomReport>,
}

impl BuiltTopology {
    pub fn passed(&self) -> bool {
        matches!(&self.verdict, Ok(r) if r.passed())
    }
}

/// Builds the named topology and runs [`check_axioms`] on it.
pub fn build_topology(category: &Arc<FinCategory>, kind: TopologyKind) -> BuiltTopology {
    let topology = GrothendieckTopology::from_rule(category.clone(), kind);
    let verdict = check_axioms(&topology);
    BuiltTopology { topology, verdict }
}
