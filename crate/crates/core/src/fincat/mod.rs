//! Finite categories.
//!
//! A [`FinCategory`] has one of two backends:
//!
//! - `table`: objects, arrows and the composition table are fully
//!   materialized. Identity arrows are generated automatically, named
//!   `id_<object>`, and occupy arrow ids `0..object_count` so that the
//!   identity of object `o` is arrow `o`.
//! - `finset`: objects are finite carriers `{0, .., n-1}` and the arrows
//!   between two carriers are all functions, represented intensionally as
//!   [`MapArrow`]s. Hom-sets are only enumerated below the configured cap.

mod builder;
mod functor;
mod limits;
mod path;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::sieves::Sieve;

pub use builder::{
    build_divisor_poset, build_finset_category, build_product_category, CategoryBuilder, ProductCategory,
};
pub use functor::{validate_functor, Functor, FunctorLaw, FunctorReport, FunctorViolation};
pub(crate) use limits::Budget;
pub use limits::{
    binary_coproduct, binary_product, initial_objects, is_product_cone, search_binary_products, terminal_objects,
    CoproductCone, ProductCone,
};
pub use path::{check_commutes, Path};
pub use validate::{validate_category, Law, LawViolation, ValidationReport};

pub type ObjId = usize;
pub type ArrowId = usize;

/// An arrow of a [`FinCategory`]; which variant is valid depends on the backend.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Table(ArrowId),
    Map(MapArrow),
}

/// A function between two finite carriers: `values[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapArrow {
    pub(crate) dom: ObjId,
    pub(crate) cod: ObjId,
    pub(crate) values: Vec<u32>,
}

impl MapArrow {
    pub fn dom(&self) -> ObjId {
        self.dom
    }

    pub fn cod(&self) -> ObjId {
        self.cod
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Bitmask of the image; carriers used with masks have at most 64 elements.
    pub(crate) fn image_mask(&self) -> u64 {
        self.values.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Table,
    FinSet,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Table => "table",
            Backend::FinSet => "finset",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowRecord {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TableData {
    pub(crate) arrows: Vec<ArrowRecord>,
    pub(crate) compose: HashMap<(ArrowId, ArrowId), ArrowId>,
    pub(crate) by_name: HashMap<String, ArrowId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FinSetData {
    pub(crate) sizes: Vec<usize>,
    pub(crate) named: Vec<(String, MapArrow)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Store {
    Table(TableData),
    FinSet(FinSetData),
}

/// Derived lookup tables for the `table` backend.
#[derive(Debug)]
pub(crate) struct TableIndex {
    n: usize,
    homs: Vec<Vec<ArrowId>>,
    pub(crate) into: Vec<Vec<ArrowId>>,
    /// `principal[f]` = `{ f . g }`, as a set of arrow ids.
    pub(crate) principal: Vec<FixedBitSet>,
}

impl TableIndex {
    pub(crate) fn hom(&self, a: ObjId, b: ObjId) -> &[ArrowId] {
        &self.homs[a * self.n + b]
    }
}

#[derive(Debug, Default)]
pub(crate) struct Cache {
    table: OnceLock<TableIndex>,
    pub(crate) universes: Mutex<HashMap<ObjId, Arc<Vec<Sieve>>>>,
}

/// A finite category. Values are immutable once built.
#[derive(Debug)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    pub(crate) store: Store,
    config: Config,
    pub(crate) cache: Cache,
}

impl Clone for FinCategory {
    fn clone(&self) -> Self {
        FinCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            store: self.store.clone(),
            config: self.config,
            cache: Cache::default(),
        }
    }
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.objects == other.objects && self.store == other.store
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    pub(crate) fn from_parts(name: String, objects: Vec<String>, store: Store, config: Config) -> Self {
        FinCategory {
            name,
            objects,
            store,
            config,
            cache: Cache::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn backend(&self) -> Backend {
        match self.store {
            Store::Table(_) => Backend::Table,
            Store::FinSet(_) => Backend::FinSet,
        }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// Replaces the caps and seed; derived caches are dropped.
    pub fn with_config(mut self, config: Config) -> Self {
        self.config = config;
        self.cache = Cache::default();
        self
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::structural(format!("unknown object `{name}` in `{}`", self.name)))
    }

    pub(crate) fn check_object(&self, o: ObjId) -> Result<()> {
        if o < self.objects.len() {
            Ok(())
        } else {
            Err(Error::structural(format!(
                "object id {o} out of range in `{}`",
                self.name
            )))
        }
    }

    /// Carrier size of a `finset` object.
    pub fn carrier_size(&self, o: ObjId) -> Option<usize> {
        match &self.store {
            Store::FinSet(fs) => fs.sizes.get(o).copied(),
            Store::Table(_) => None,
        }
    }

    /// Named arrows of a `finset` category, in declaration order.
    pub fn named_maps(&self) -> &[(String, MapArrow)] {
        match &self.store {
            Store::FinSet(fs) => &fs.named,
            Store::Table(_) => &[],
        }
    }

    /// Declared arrows of a `table` category, identities first.
    pub fn table_arrows(&self) -> Option<&[ArrowRecord]> {
        match &self.store {
            Store::Table(t) => Some(&t.arrows),
            Store::FinSet(_) => None,
        }
    }

    /// Every stored composite `(g, f, g . f)` of a `table` category.
    pub fn table_composites(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        match &self.store {
            Store::Table(t) => {
                let mut v: Vec<_> = t.compose.iter().map(|(&(g, f), &h)| (g, f, h)).collect();
                v.sort_unstable();
                v
            }
            Store::FinSet(_) => Vec::new(),
        }
    }

    pub fn identity(&self, o: ObjId) -> Arrow {
        match &self.store {
            Store::Table(_) => Arrow::Table(o),
            Store::FinSet(fs) => Arrow::Map(MapArrow {
                dom: o,
                cod: o,
                values: (0..fs.sizes[o] as u32).collect(),
            }),
        }
    }

    pub fn is_identity(&self, a: &Arrow) -> bool {
        *a == self.identity(self.dom(a))
    }

    pub fn dom(&self, a: &Arrow) -> ObjId {
        match (a, &self.store) {
            (Arrow::Table(id), Store::Table(t)) => t.arrows[*id].dom,
            (Arrow::Map(m), _) => m.dom,
            (Arrow::Table(_), Store::FinSet(_)) => panic!("table arrow used in a finset category"),
        }
    }

    pub fn cod(&self, a: &Arrow) -> ObjId {
        match (a, &self.store) {
            (Arrow::Table(id), Store::Table(t)) => t.arrows[*id].cod,
            (Arrow::Map(m), _) => m.cod,
            (Arrow::Table(_), Store::FinSet(_)) => panic!("table arrow used in a finset category"),
        }
    }

    /// Checks that `a` is an arrow of this category.
    pub fn check_arrow(&self, a: &Arrow) -> Result<()> {
        match (a, &self.store) {
            (Arrow::Table(id), Store::Table(t)) if *id < t.arrows.len() => Ok(()),
            (Arrow::Map(m), Store::FinSet(fs)) => {
                let (Some(&n), Some(&k)) = (fs.sizes.get(m.dom), fs.sizes.get(m.cod)) else {
                    return Err(Error::structural("map arrow refers to an unknown carrier"));
                };
                if m.values.len() != n || m.values.iter().any(|&v| v as usize >= k) {
                    return Err(Error::structural(format!(
                        "map {} is not a function {} -> {}",
                        self.arrow_name(a),
                        self.objects[m.dom],
                        self.objects[m.cod]
                    )));
                }
                Ok(())
            }
            _ => Err(Error::structural(format!(
                "arrow {a:?} does not belong to the {} category `{}`",
                self.backend(),
                self.name
            ))),
        }
    }

    /// `g . f` (g after f).
    pub fn compose(&self, g: &Arrow, f: &Arrow) -> Result<Arrow> {
        self.check_arrow(g)?;
        self.check_arrow(f)?;
        if self.cod(f) != self.dom(g) {
            return Err(Error::structural(format!(
                "{} . {} is not composable: cod {} != dom {}",
                self.arrow_name(g),
                self.arrow_name(f),
                self.objects[self.cod(f)],
                self.objects[self.dom(g)]
            )));
        }
        match (g, f, &self.store) {
            (Arrow::Table(gi), Arrow::Table(fi), Store::Table(t)) => {
                t.compose.get(&(*gi, *fi)).map(|&h| Arrow::Table(h)).ok_or_else(|| {
                    Error::structural(format!(
                        "composite {} . {} is not declared",
                        t.arrows[*gi].name, t.arrows[*fi].name
                    ))
                })
            }
            (Arrow::Map(gm), Arrow::Map(fm), _) => Ok(Arrow::Map(MapArrow {
                dom: fm.dom,
                cod: gm.cod,
                values: fm.values.iter().map(|&x| gm.values[x as usize]).collect(),
            })),
            _ => unreachable!("checked by check_arrow"),
        }
    }

    /// Looks up an arrow by name. `finset` categories also accept
    /// `id_<object>` and the inline form `<dom>-><cod>[v0,v1,...]`.
    pub fn arrow(&self, name: &str) -> Result<Arrow> {
        match &self.store {
            Store::Table(t) => t
                .by_name
                .get(name)
                .map(|&id| Arrow::Table(id))
                .ok_or_else(|| Error::structural(format!("unknown arrow `{name}` in `{}`", self.name))),
            Store::FinSet(fs) => {
                if let Some((_, m)) = fs.named.iter().find(|(n, _)| n == name) {
                    return Ok(Arrow::Map(m.clone()));
                }
                if let Some(obj) = name.strip_prefix("id_") {
                    if let Ok(o) = self.object_id(obj) {
                        return Ok(self.identity(o));
                    }
                }
                self.parse_inline_map(name)
            }
        }
    }

    fn parse_inline_map(&self, text: &str) -> Result<Arrow> {
        let err = || Error::structural(format!("unknown arrow `{text}` in `{}`", self.name));
        let (head, rest) = text.split_once('[').ok_or_else(err)?;
        let body = rest.strip_suffix(']').ok_or_else(err)?;
        let (dom, cod) = head.split_once("->").ok_or_else(err)?;
        let values = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|v| v.trim().parse::<u32>().map_err(|_| err()))
                .collect::<Result<Vec<_>>>()?
        };
        self.map_arrow(self.object_id(dom)?, self.object_id(cod)?, values)
    }

    /// Builds a `finset` arrow from its value table.
    pub fn map_arrow(&self, dom: ObjId, cod: ObjId, values: Vec<u32>) -> Result<Arrow> {
        if self.backend() != Backend::FinSet {
            return Err(Error::structural("map arrows only exist in finset categories"));
        }
        self.check_object(dom)?;
        self.check_object(cod)?;
        let a = Arrow::Map(MapArrow { dom, cod, values });
        self.check_arrow(&a)?;
        Ok(a)
    }

    pub fn arrow_name(&self, a: &Arrow) -> String {
        match (a, &self.store) {
            (Arrow::Table(id), Store::Table(t)) => t.arrows[*id].name.clone(),
            (Arrow::Map(m), Store::FinSet(fs)) => {
                if let Some((n, _)) = fs.named.iter().find(|(_, x)| x == m) {
                    return n.clone();
                }
                if m.dom == m.cod && m.values.iter().enumerate().all(|(i, &v)| i as u32 == v) {
                    return format!("id_{}", self.objects[m.dom]);
                }
                let vals: Vec<String> = m.values.iter().map(u32::to_string).collect();
                format!("{}->{}[{}]", self.objects[m.dom], self.objects[m.cod], vals.join(","))
            }
            _ => format!("{a:?}"),
        }
    }

    /// Number of arrows `a -> b`; `None` when it does not fit in a `u128`.
    pub fn hom_size(&self, a: ObjId, b: ObjId) -> Option<u128> {
        match &self.store {
            Store::Table(_) => Some(self.table_index().unwrap().hom(a, b).len() as u128),
            Store::FinSet(fs) => (fs.sizes[b] as u128).checked_pow(fs.sizes[a] as u32),
        }
    }

    /// All arrows `a -> b`, refused above `cap_homs`.
    pub fn hom(&self, a: ObjId, b: ObjId) -> Result<Vec<Arrow>> {
        self.check_object(a)?;
        self.check_object(b)?;
        match &self.store {
            Store::Table(_) => Ok(self
                .table_index()
                .unwrap()
                .hom(a, b)
                .iter()
                .map(|&id| Arrow::Table(id))
                .collect()),
            Store::FinSet(fs) => {
                let cap = self.config.cap_homs;
                let size = self.hom_size(a, b);
                if size.is_none_or(|s| s > cap as u128) {
                    let needed = size.map_or_else(|| format!("{}^{}", fs.sizes[b], fs.sizes[a]), |s| s.to_string());
                    return Err(Error::resource(
                        format!("enumerating hom({}, {})", self.objects[a], self.objects[b]),
                        needed,
                        cap,
                    ));
                }
                Ok(enumerate_functions(fs.sizes[a], fs.sizes[b])
                    .into_iter()
                    .map(|values| Arrow::Map(MapArrow { dom: a, cod: b, values }))
                    .collect())
            }
        }
    }

    /// All arrows with codomain `x`, ordered by domain then by arrow.
    pub fn arrows_into(&self, x: ObjId) -> Result<Vec<Arrow>> {
        self.check_object(x)?;
        match &self.store {
            Store::Table(_) => Ok(self.table_index().unwrap().into[x]
                .iter()
                .map(|&id| Arrow::Table(id))
                .collect()),
            Store::FinSet(_) => {
                let mut out = Vec::new();
                for d in self.objects() {
                    out.extend(self.hom(d, x)?);
                }
                Ok(out)
            }
        }
    }

    /// Every arrow of the category (refused for oversized `finset` homs).
    pub fn arrows(&self) -> Result<Vec<Arrow>> {
        match &self.store {
            Store::Table(t) => Ok((0..t.arrows.len()).map(Arrow::Table).collect()),
            Store::FinSet(_) => {
                let mut out = Vec::new();
                for a in self.objects() {
                    for b in self.objects() {
                        out.extend(self.hom(a, b)?);
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn arrow_count(&self) -> Result<usize> {
        match &self.store {
            Store::Table(t) => Ok(t.arrows.len()),
            Store::FinSet(_) => {
                let mut total: u128 = 0;
                for a in self.objects() {
                    for b in self.objects() {
                        total = total.saturating_add(self.hom_size(a, b).unwrap_or(u128::MAX));
                    }
                }
                usize::try_from(total).map_err(|_| Error::resource("counting arrows", total, usize::MAX))
            }
        }
    }

    /// True iff `a` has a two-sided inverse.
    pub fn is_isomorphism(&self, a: &Arrow) -> Result<bool> {
        let (d, c) = (self.dom(a), self.cod(a));
        if let (Arrow::Map(m), Some(n), Some(k)) = (a, self.carrier_size(d), self.carrier_size(c)) {
            let mut seen = vec![false; k];
            for &v in &m.values {
                seen[v as usize] = true;
            }
            return Ok(n == k && seen.iter().all(|&s| s));
        }
        for b in self.hom(c, d)? {
            if self.compose(&b, a)? == self.identity(d) && self.compose(a, &b)? == self.identity(c) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub(crate) fn table_index(&self) -> Option<&TableIndex> {
        let Store::Table(t) = &self.store else {
            return None;
        };
        Some(self.cache.table.get_or_init(|| build_index(self.objects.len(), t)))
    }
}

fn build_index(n: usize, t: &TableData) -> TableIndex {
    let mut homs = vec![Vec::new(); n * n];
    let mut into = vec![Vec::new(); n];
    for (id, a) in t.arrows.iter().enumerate() {
        homs[a.dom * n + a.cod].push(id);
        into[a.cod].push(id);
    }
    let m = t.arrows.len();
    let principal = t
        .arrows
        .iter()
        .enumerate()
        .map(|(f, a)| {
            let mut set = FixedBitSet::with_capacity(m);
            for &g in &into[a.dom] {
                if let Some(&h) = t.compose.get(&(f, g)) {
                    set.insert(h);
                }
            }
            set
        })
        .collect();
    TableIndex {
        n,
        homs,
        into,
        principal,
    }
}

/// All functions `{0..n} -> {0..k}` in lexicographic order of value tables.
pub(crate) fn enumerate_functions(n: usize, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if (cur[i] as usize) < k {
                break;
            }
            cur[i] = 0;
        }
    }
}
