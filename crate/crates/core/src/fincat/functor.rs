use std::fmt;
use std::sync::Arc;

use super::{ArrowId, FinCategory, ObjId};
use crate::error::{Error, Result};

/// A functor between two `table` categories, given by its object and arrow maps.
#[derive(Debug, Clone)]
pub struct Functor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    objects: Vec<ObjId>,
    arrows: Vec<ArrowId>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.objects == other.objects && self.arrows == other.arrows
    }
}

impl Functor {
    /// Checks only that the maps are total and in range; laws are checked by
    /// [`validate_functor`].
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        objects: Vec<ObjId>,
        arrows: Vec<ArrowId>,
    ) -> Result<Self> {
        let (Some(da), Some(ca)) = (dom.table_arrows(), cod.table_arrows()) else {
            return Err(Error::structural("functors are defined between table categories"));
        };
        if objects.len() != dom.object_count() || arrows.len() != da.len() {
            return Err(Error::structural("functor maps are not total"));
        }
        if objects.iter().any(|&o| o >= cod.object_count()) || arrows.iter().any(|&a| a >= ca.len()) {
            return Err(Error::structural("functor maps leave the codomain"));
        }
        Ok(Functor {
            dom,
            cod,
            objects,
            arrows,
        })
    }

    pub fn identity(c: Arc<FinCategory>) -> Result<Self> {
        let arrows = (0..c.table_arrows().map_or(0, <[_]>::len)).collect();
        let objects = c.objects().collect();
        Functor::new(c.clone(), c, objects, arrows)
    }

    /// `other . self`.
    pub fn then(&self, other: &Functor) -> Result<Functor> {
        if *self.cod != *other.dom {
            return Err(Error::structural("functors are not composable"));
        }
        Functor::new(
            self.dom.clone(),
            other.cod.clone(),
            self.objects.iter().map(|&o| other.objects[o]).collect(),
            self.arrows.iter().map(|&a| other.arrows[a]).collect(),
        )
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    pub fn object(&self, o: ObjId) -> ObjId {
        self.objects[o]
    }

    pub fn arrow(&self, a: ArrowId) -> ArrowId {
        self.arrows[a]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn arrow_map(&self) -> &[ArrowId] {
        &self.arrows
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorLaw {
    Domain,
    Codomain,
    Identity,
    Composition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorViolation {
    pub law: FunctorLaw,
    /// Names of the offending arrows in the domain category.
    pub arrows: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "functor: pass");
        }
        for v in &self.violations {
            writeln!(f, "functor: {:?} fails at {}", v.law, v.arrows.join(", "))?;
        }
        Ok(())
    }
}

/// Checks preservation of domains, codomains, identities and composites.
pub fn validate_functor(func: &Functor) -> FunctorReport {
    let (d, c) = (&*func.dom, &*func.cod);
    let da = d.table_arrows().unwrap();
    let ca = c.table_arrows().unwrap();
    let mut violations = Vec::new();
    let mut flag = |law, names: Vec<&str>| {
        violations.push(FunctorViolation {
            law,
            arrows: names.into_iter().map(String::from).collect(),
        })
    };
    for (id, a) in da.iter().enumerate() {
        let img = &ca[func.arrows[id]];
        if img.dom != func.objects[a.dom] {
            flag(FunctorLaw::Domain, vec![&a.name]);
        }
        if img.cod != func.objects[a.cod] {
            flag(FunctorLaw::Codomain, vec![&a.name]);
        }
    }
    for o in d.objects() {
        if func.arrows[o] != func.objects[o] {
            flag(FunctorLaw::Identity, vec![&da[o].name]);
        }
    }
    for (g, f, h) in d.table_composites() {
        let composite = c
            .compose(
                &super::Arrow::Table(func.arrows[g]),
                &super::Arrow::Table(func.arrows[f]),
            )
            .ok();
        if composite != Some(super::Arrow::Table(func.arrows[h])) {
            flag(FunctorLaw::Composition, vec![&da[g].name, &da[f].name]);
        }
    }
    FunctorReport { violations }
}
