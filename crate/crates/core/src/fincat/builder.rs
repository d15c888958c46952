use std::collections::HashMap;
use std::sync::Arc;

use super::{ArrowId, ArrowRecord, Backend, FinCategory, FinSetData, Functor, MapArrow, ObjId, Store, TableData};
use crate::config::Config;
use crate::error::{Error, Result};

/// Incremental construction of a category from named declarations.
///
/// References are resolved in [`CategoryBuilder::build`], so declarations may
/// come in any order. Identity arrows are implicit; for `table` categories the
/// unit composites `id . f` and `f . id` are filled in unless declared.
#[derive(Debug, Clone)]
pub struct CategoryBuilder {
    name: String,
    backend: Backend,
    config: Config,
    objects: Vec<String>,
    sizes: Vec<usize>,
    arrows: Vec<(String, String, String)>,
    composites: Vec<(String, String, String)>,
    maps: Vec<(String, String, String, Vec<u32>)>,
}

impl CategoryBuilder {
    pub fn table(name: impl Into<String>) -> Self {
        Self::new(name.into(), Backend::Table)
    }

    pub fn finset(name: impl Into<String>) -> Self {
        Self::new(name.into(), Backend::FinSet)
    }

    fn new(name: String, backend: Backend) -> Self {
        CategoryBuilder {
            name,
            backend,
            config: Config::default(),
            objects: Vec::new(),
            sizes: Vec::new(),
            arrows: Vec::new(),
            composites: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn config(mut self, config: Config) -> Self {
        self.config = config;
        self
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn object(&mut self, name: &str) -> Result<&mut Self> {
        self.expect(Backend::Table, "object")?;
        self.push_object(name)?;
        Ok(self)
    }

    pub fn carrier(&mut self, name: &str, size: usize) -> Result<&mut Self> {
        self.expect(Backend::FinSet, "carrier")?;
        self.push_object(name)?;
        self.sizes.push(size);
        Ok(self)
    }

    pub fn arrow(&mut self, name: &str, dom: &str, cod: &str) -> Result<&mut Self> {
        self.expect(Backend::Table, "arrow")?;
        self.check_new_arrow_name(name)?;
        self.arrows.push((name.into(), dom.into(), cod.into()));
        Ok(self)
    }

    /// Declares `g . f = h`.
    pub fn compose(&mut self, g: &str, f: &str, h: &str) -> Result<&mut Self> {
        self.expect(Backend::Table, "compose")?;
        self.composites.push((g.into(), f.into(), h.into()));
        Ok(self)
    }

    /// Names a function between two carriers.
    pub fn map(&mut self, name: &str, dom: &str, cod: &str, values: Vec<u32>) -> Result<&mut Self> {
        self.expect(Backend::FinSet, "map")?;
        self.check_new_arrow_name(name)?;
        self.maps.push((name.into(), dom.into(), cod.into(), values));
        Ok(self)
    }

    fn expect(&self, backend: Backend, what: &str) -> Result<()> {
        if self.backend == backend {
            Ok(())
        } else {
            Err(Error::structural(format!(
                "`{what}` declarations are not allowed in a {} category",
                self.backend
            )))
        }
    }

    fn push_object(&mut self, name: &str) -> Result<()> {
        if self.objects.iter().any(|o| o == name) {
            return Err(Error::structural(format!("duplicate object `{name}`")));
        }
        self.objects.push(name.into());
        Ok(())
    }

    fn check_new_arrow_name(&self, name: &str) -> Result<()> {
        if name.starts_with("id_") {
            return Err(Error::structural(format!(
                "arrow id `{name}` uses the reserved identity prefix `id_`"
            )));
        }
        if self.arrows.iter().any(|a| a.0 == name) || self.maps.iter().any(|m| m.0 == name) {
            return Err(Error::structural(format!("duplicate arrow `{name}`")));
        }
        Ok(())
    }

    pub fn build(self) -> Result<FinCategory> {
        let obj_index: HashMap<&str, ObjId> = self.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let object = |name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::structural(format!("unknown object `{name}`")))
        };
        match self.backend {
            Backend::FinSet => {
                if self.objects.is_empty() {
                    return Err(Error::structural("a finite-set category needs at least one carrier"));
                }
                let mut named = Vec::new();
                for (name, dom, cod, values) in &self.maps {
                    let m = MapArrow {
                        dom: object(dom)?,
                        cod: object(cod)?,
                        values: values.clone(),
                    };
                    if m.values.len() != self.sizes[m.dom] || m.values.iter().any(|&v| v as usize >= self.sizes[m.cod])
                    {
                        return Err(Error::structural(format!(
                            "map `{name}` is not a function {dom} -> {cod}"
                        )));
                    }
                    named.push((name.clone(), m));
                }
                let store = Store::FinSet(FinSetData {
                    sizes: self.sizes,
                    named,
                });
                Ok(FinCategory::from_parts(self.name, self.objects, store, self.config))
            }
            Backend::Table => {
                let n = self.objects.len();
                let total = n + self.arrows.len();
                if total > self.config.cap_homs {
                    return Err(Error::resource(
                        "building a table category",
                        total,
                        self.config.cap_homs,
                    ));
                }
                let mut arrows: Vec<ArrowRecord> = self
                    .objects
                    .iter()
                    .enumerate()
                    .map(|(o, name)| ArrowRecord {
                        name: format!("id_{name}"),
                        dom: o,
                        cod: o,
                    })
                    .collect();
                for (name, dom, cod) in &self.arrows {
                    arrows.push(ArrowRecord {
                        name: name.clone(),
                        dom: object(dom)?,
                        cod: object(cod)?,
                    });
                }
                let by_name: HashMap<String, ArrowId> =
                    arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
                if by_name.len() != arrows.len() {
                    return Err(Error::structural("arrow id collides with an identity arrow"));
                }
                let arrow = |name: &str| {
                    by_name
                        .get(name)
                        .copied()
                        .ok_or_else(|| Error::structural(format!("unknown arrow `{name}`")))
                };
                let mut compose = HashMap::new();
                for (g, f, h) in &self.composites {
                    let (gi, fi, hi) = (arrow(g)?, arrow(f)?, arrow(h)?);
                    let (ga, fa, ha) = (&arrows[gi], &arrows[fi], &arrows[hi]);
                    if fa.cod != ga.dom {
                        return Err(Error::structural(format!(
                            "ill-typed composition {g} . {f}: cod {f} != dom {g}"
                        )));
                    }
                    if ha.dom != fa.dom || ha.cod != ga.cod {
                        return Err(Error::structural(format!(
                            "ill-typed composition {g} . {f} = {h}: {h} must go from dom {f} to cod {g}"
                        )));
                    }
                    if let Some(&prev) = compose.get(&(gi, fi)) {
                        if prev != hi {
                            return Err(Error::structural(format!("conflicting composites for {g} . {f}")));
                        }
                    }
                    compose.insert((gi, fi), hi);
                }
                for (id, a) in arrows.iter().enumerate() {
                    compose.entry((a.cod, id)).or_insert(id);
                    compose.entry((id, a.dom)).or_insert(id);
                }
                let store = Store::Table(TableData {
                    arrows,
                    compose,
                    by_name,
                });
                Ok(FinCategory::from_parts(self.name, self.objects, store, self.config))
            }
        }
    }
}

/// The divisors of `n` ordered by divisibility, with one arrow `k->m` per `k | m`.
pub fn build_divisor_poset(n: u64, config: Config) -> Result<FinCategory> {
    if n == 0 {
        return Err(Error::Domain("the divisor poset needs N >= 1".into()));
    }
    let divisors: Vec<u64> = (1..=n).filter(|&k| n.is_multiple_of(k)).collect();
    let mut b = CategoryBuilder::table(format!("D{n}")).config(config);
    for d in &divisors {
        b.object(&d.to_string())?;
    }
    let name = |k: u64, m: u64| {
        if k == m {
            format!("id_{m}")
        } else {
            format!("{k}->{m}")
        }
    };
    for &m in &divisors {
        for &k in divisors.iter().filter(|&&k| k != m && m % k == 0) {
            b.arrow(&name(k, m), &k.to_string(), &m.to_string())?;
        }
    }
    for &a in &divisors {
        for &bb in divisors.iter().filter(|&&x| x != a && x % a == 0) {
            for &c in divisors.iter().filter(|&&x| x != bb && x % bb == 0) {
                b.compose(&name(bb, c), &name(a, bb), &name(a, c))?;
            }
        }
    }
    b.build()
}

/// A category of finite sets on the given `(name, size)` carriers.
pub fn build_finset_category(carriers: &[(&str, usize)], config: Config) -> Result<FinCategory> {
    let mut b = CategoryBuilder::finset("FinSet").config(config);
    for (name, size) in carriers {
        b.carrier(name, *size)?;
    }
    b.build()
}

/// `C x D` together with its projection functors.
#[derive(Debug, Clone)]
pub struct ProductCategory {
    pub category: Arc<FinCategory>,
    pub left: Functor,
    pub right: Functor,
    right_objects: usize,
    arrow_pairs: HashMap<(ArrowId, ArrowId), ArrowId>,
}

impl ProductCategory {
    pub fn pair_object(&self, a: ObjId, b: ObjId) -> ObjId {
        a * self.right_objects + b
    }

    pub fn pair_arrow(&self, f: ArrowId, g: ArrowId) -> ArrowId {
        self.arrow_pairs[&(f, g)]
    }

    pub fn left_factor(&self) -> &Arc<FinCategory> {
        self.left.cod()
    }

    pub fn right_factor(&self) -> &Arc<FinCategory> {
        self.right.cod()
    }
}

fn pair_name(a: &str, b: &str) -> String {
    format!("({a};{b})")
}

/// Objects `(a;b)`, arrows `(f;g)`, componentwise composition.
pub fn build_product_category(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Result<ProductCategory> {
    let (Some(ca), Some(da)) = (c.table_arrows(), d.table_arrows()) else {
        return Err(Error::structural("product categories are built from table categories"));
    };
    let cap = c.config().cap_homs;
    let total = ca.len().saturating_mul(da.len());
    if total > cap {
        return Err(Error::resource(
            format!("product category {} x {}", c.name(), d.name()),
            total,
            cap,
        ));
    }
    let mut b = CategoryBuilder::table(format!("{}x{}", c.name(), d.name())).config(*c.config());
    for x in c.objects() {
        for y in d.objects() {
            b.object(&pair_name(c.object_name(x), d.object_name(y)))?;
        }
    }
    let name_of = |f: ArrowId, g: ArrowId| {
        let (fr, gr) = (&ca[f], &da[g]);
        if f < c.object_count() && g < d.object_count() {
            format!("id_{}", pair_name(c.object_name(fr.dom), d.object_name(gr.dom)))
        } else {
            pair_name(&fr.name, &gr.name)
        }
    };
    for (f, fr) in ca.iter().enumerate() {
        for (g, gr) in da.iter().enumerate() {
            if f < c.object_count() && g < d.object_count() {
                continue;
            }
            b.arrow(
                &name_of(f, g),
                &pair_name(c.object_name(fr.dom), d.object_name(gr.dom)),
                &pair_name(c.object_name(fr.cod), d.object_name(gr.cod)),
            )?;
        }
    }
    let c_comp = c.table_composites();
    let d_comp = d.table_composites();
    for &(g1, f1, h1) in &c_comp {
        for &(g2, f2, h2) in &d_comp {
            b.compose(&name_of(g1, g2), &name_of(f1, f2), &name_of(h1, h2))?;
        }
    }
    let category = Arc::new(b.build()?);
    let by_name = match &category.store {
        Store::Table(t) => &t.by_name,
        Store::FinSet(_) => unreachable!(),
    };
    let mut arrow_pairs = HashMap::new();
    let mut left_arrows = vec![0; ca.len() * da.len()];
    let mut right_arrows = left_arrows.clone();
    for f in 0..ca.len() {
        for g in 0..da.len() {
            let id = by_name[&name_of(f, g)];
            arrow_pairs.insert((f, g), id);
            left_arrows[id] = f;
            right_arrows[id] = g;
        }
    }
    let nd = d.object_count();
    let left_objects = category.objects().map(|o| o / nd).collect();
    let right_objects = category.objects().map(|o| o % nd).collect();
    let left = Functor::new(category.clone(), c.clone(), left_objects, left_arrows)?;
    let right = Functor::new(category.clone(), d.clone(), right_objects, right_arrows)?;
    Ok(ProductCategory {
        category,
        left,
        right,
        right_objects: nd,
        arrow_pairs,
    })
}
