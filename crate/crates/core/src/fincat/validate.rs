use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Arrow, FinCategory, MapArrow, Store};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    IdentityNotEndo,
    MissingComposite,
    LeftUnit,
    RightUnit,
    Associativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::IdentityNotEndo => "identity is not an endomorphism",
            Law::MissingComposite => "composition is not total",
            Law::LeftUnit => "left unit law id . f = f",
            Law::RightUnit => "right unit law f . id = f",
            Law::Associativity => "associativity h . (g . f) = (h . g) . f",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    /// Witnessing arrows, outermost first.
    pub arrows: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<LawViolation>,
    /// Number of law instances checked (exhaustive or sampled).
    pub checked: usize,
    pub sampled: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = if self.sampled { "sampled" } else { "exhaustive" };
        if self.passed() {
            return writeln!(f, "category laws: pass ({} instances, {how})", self.checked);
        }
        writeln!(f, "category laws: fail ({} violations, {how})", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.law, v.arrows.join(", "))?;
        }
        Ok(())
    }
}

/// Checks identities, totality of composition, unit laws and associativity.
///
/// Table categories are checked exhaustively. Finite-set categories satisfy
/// the laws by construction; they get `spot_checks` seeded random samples.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    match &c.store {
        Store::Table(t) => {
            let mut report = ValidationReport::default();
            let name = |id: usize| t.arrows[id].name.clone();
            let mut flag = |law, arrows: Vec<String>| report.violations.push(LawViolation { law, arrows });
            for o in c.objects() {
                if t.arrows[o].dom != o || t.arrows[o].cod != o {
                    flag(Law::IdentityNotEndo, vec![name(o)]);
                }
            }
            let n = t.arrows.len();
            let get = |g: usize, f: usize| t.compose.get(&(g, f)).copied();
            let mut checked = 0usize;
            for f in 0..n {
                let fa = &t.arrows[f];
                checked += 2;
                if get(fa.cod, f) != Some(f) {
                    flag(Law::LeftUnit, vec![name(fa.cod), name(f)]);
                }
                if get(f, fa.dom) != Some(f) {
                    flag(Law::RightUnit, vec![name(f), name(fa.dom)]);
                }
                for g in (0..n).filter(|&g| t.arrows[g].dom == fa.cod) {
                    checked += 1;
                    let Some(gf) = get(g, f) else {
                        flag(Law::MissingComposite, vec![name(g), name(f)]);
                        continue;
                    };
                    for h in (0..n).filter(|&h| t.arrows[h].dom == t.arrows[g].cod) {
                        checked += 1;
                        let left = get(h, g).and_then(|hg| get(hg, f));
                        let right = get(h, gf);
                        if let (Some(l), Some(r)) = (left, right) {
                            if l != r {
                                flag(Law::Associativity, vec![name(h), name(g), name(f)]);
                            }
                        }
                    }
                }
            }
            report.checked = checked;
            report
        }
        Store::FinSet(fs) => {
            let mut report = ValidationReport {
                sampled: true,
                ..Default::default()
            };
            let mut rng = ChaCha8Rng::seed_from_u64(c.config().seed);
            let k = fs.sizes.len();
            let random_map = |rng: &mut ChaCha8Rng, dom: usize, cod: usize| -> Option<Arrow> {
                let (n, m) = (fs.sizes[dom], fs.sizes[cod]);
                if n > 0 && m == 0 {
                    return None;
                }
                let values = (0..n).map(|_| rng.gen_range(0..m as u32)).collect();
                Some(Arrow::Map(MapArrow { dom, cod, values }))
            };
            for _ in 0..c.config().spot_checks {
                let objs: Vec<usize> = (0..4).map(|_| rng.gen_range(0..k)).collect();
                let (Some(f), Some(g), Some(h)) = (
                    random_map(&mut rng, objs[0], objs[1]),
                    random_map(&mut rng, objs[1], objs[2]),
                    random_map(&mut rng, objs[2], objs[3]),
                ) else {
                    continue;
                };
                report.checked += 1;
                let compose = |a: &Arrow, b: &Arrow| c.compose(a, b).expect("sampled maps compose");
                if compose(&h, &compose(&g, &f)) != compose(&compose(&h, &g), &f) {
                    report.violations.push(LawViolation {
                        law: Law::Associativity,
                        arrows: vec![c.arrow_name(&h), c.arrow_name(&g), c.arrow_name(&f)],
                    });
                }
                if compose(&c.identity(objs[1]), &f) != f {
                    report.violations.push(LawViolation {
                        law: Law::LeftUnit,
                        arrows: vec![c.arrow_name(&f)],
                    });
                }
                if compose(&f, &c.identity(objs[0])) != f {
                    report.violations.push(LawViolation {
                        law: Law::RightUnit,
                        arrows: vec![c.arrow_name(&f)],
                    });
                }
            }
            report
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::fincat::{build_divisor_poset, build_finset_category, CategoryBuilder};

    #[test]
    fn divisor_poset_passes_exhaustively() {
        let d = build_divisor_poset(12, Config::default()).unwrap();
        let r = validate_category(&d);
        assert!(r.passed(), "{r}");
        assert!(!r.sampled);
    }

    #[test]
    fn terminal_category_passes() {
        let mut b = CategoryBuilder::table("pt");
        b.object("*").unwrap();
        assert!(validate_category(&b.build().unwrap()).passed());
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut b = CategoryBuilder::table("gap");
        b.object("A").unwrap().object("B").unwrap().object("C").unwrap();
        b.arrow("f", "A", "B").unwrap().arrow("g", "B", "C").unwrap();
        let r = validate_category(&b.build().unwrap());
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].law, Law::MissingComposite);
        assert_eq!(r.violations[0].arrows, vec!["g", "f"]);
    }

    #[test]
    fn bad_unit_declaration_is_reported() {
        let mut b = CategoryBuilder::table("unit");
        b.object("A").unwrap().object("B").unwrap();
        b.arrow("f", "A", "B").unwrap().arrow("f2", "A", "B").unwrap();
        b.compose("id_B", "f", "f2").unwrap();
        let r = validate_category(&b.build().unwrap());
        assert!(r.violations.iter().any(|v| v.law == Law::LeftUnit));
    }

    #[test]
    fn associativity_failure_is_reported() {
        // Two endomorphisms e, k on A with e.e = k, but (e.e).e != e.(e.e).
        let mut b = CategoryBuilder::table("nonassoc");
        b.object("A").unwrap();
        b.arrow("e", "A", "A").unwrap().arrow("k", "A", "A").unwrap();
        b.compose("e", "e", "k").unwrap();
        b.compose("k", "e", "e").unwrap();
        b.compose("e", "k", "k").unwrap();
        b.compose("k", "k", "k").unwrap();
        let r = validate_category(&b.build().unwrap());
        assert!(r.violations.iter().any(|v| v.law == Law::Associativity), "{r}");
    }

    #[test]
    fn finset_spot_checks_are_seeded() {
        let c = build_finset_category(&[("1", 1), ("2", 2), ("4", 4), ("8", 8)], Config::default()).unwrap();
        let r = validate_category(&c);
        assert!(r.passed() && r.sampled && r.checked == 1000);
        assert_eq!(r, validate_category(&c));
    }
}
