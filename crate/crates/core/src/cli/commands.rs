use std::cmp::Reverse;
use std::fmt::Write;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use super::{
    parse_category_file, parse_category_source, parse_sieve_literal, parse_topology_file, parse_witness_file,
    serialize_category, serialize_topology, serialize_witness_file, witness_line, CommandRequest, Diagnostics, MulArg,
    Options, Outcome, TopologyArgs, Verb, WitnessFile, EXIT_ERROR, EXIT_FAILS, EXIT_HOLDS,
};
use crate::algebra::{
    check_abelian_group_object, check_group_object, check_homomorphism, check_monoid_object, find_algebraic_objects,
    AlgebraReport, Witness,
};
use crate::config::Config;
use crate::continuity::{initial_local_topology, is_continuous, localize, pullback_local};
use crate::error::Error;
use crate::fincat::{
    build_divisor_poset, build_finset_category, build_product_category, initial_objects, terminal_objects,
    validate_category, FinCategory, ObjId,
};
use crate::gtopgroup::{
    inclusion_functor, is_gtop_algebraic_object, is_gtop_functor_monoid, poset_monoid, PosetOperation, Submonoid,
};
use crate::gtopology::{check_axioms, enumerate_topologies, join, meet, GrothendieckTopology, TopologyKind};
use crate::sieves::{principal_sieve, pullback_sieve, sieve_universe};

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Diagnostics(#[from] Diagnostics),
    #[error("error: {0}")]
    Core(#[from] Error),
    #[error("error: {0}")]
    Input(String),
}

type Verdict = Result<(u8, String), Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn status(holds: bool) -> u8 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

struct Ctx<'a> {
    opts: &'a Options,
    config: Config,
}

impl Ctx<'_> {
    fn read(&self, path: &Path) -> Result<String, Failure> {
        fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))
    }

    fn category(&self, path: &Path) -> Result<Arc<FinCategory>, Failure> {
        let text = self.read(path)?;
        let file = path.display().to_string();
        let c = if self.opts.verifying() {
            parse_category_file(&text, &file, self.config)?
        } else {
            parse_category_source(&text, &file, self.config)?
        };
        Ok(Arc::new(c))
    }

    /// Files first, then named builders; each checked unless verification is off.
    fn topologies(
        &self,
        c: &Arc<FinCategory>,
        args: &TopologyArgs,
        notes: &mut String,
    ) -> Result<Vec<GrothendieckTopology>, Failure> {
        let mut out = Vec::new();
        for path in &args.topology {
            let text = self.read(path)?;
            out.push(parse_topology_file(&text, &path.display().to_string(), c)?);
        }
        for &kind in &args.kind {
            out.push(GrothendieckTopology::from_rule(c.clone(), kind).with_name(kind.to_string()));
        }
        if self.opts.verifying() {
            for j in &out {
                let (ok, text) = input_status(j)?;
                if !ok {
                    return Err(input(format!(
                        "topology {} is not a Grothendieck topology:\n{}",
                        j.name(),
                        text.trim_end()
                    )));
                }
                if text.starts_with("note") {
                    notes.push_str(&text);
                }
            }
        }
        Ok(out)
    }

    fn topology(
        &self,
        c: &Arc<FinCategory>,
        args: &TopologyArgs,
        notes: &mut String,
    ) -> Result<GrothendieckTopology, Failure> {
        let mut all = self.topologies(c, args, notes)?;
        match all.len() {
            1 => Ok(all.remove(0)),
            n => Err(input(format!("expected one topology (--topology or --kind), got {n}"))),
        }
    }

    fn witnesses(&self, c: &FinCategory, path: &Path) -> Result<WitnessFile, Failure> {
        let text = self.read(path)?;
        let wf = parse_witness_file(&text, &path.display().to_string(), c)?;
        if self.opts.verifying() {
            for (i, w) in wf.witnesses.iter().enumerate() {
                let r = algebra_report(c, w, false)?;
                if !r.passed() {
                    return Err(input(format!(
                        "witness {} ({}) fails its laws:\n{}",
                        i + 1,
                        witness_line(c, w),
                        r.display(c).to_string().trim_end()
                    )));
                }
            }
        }
        Ok(wf)
    }

    /// Writes `artifact` to `--output`, or appends it to the report.
    fn emit(&self, report: &mut String, artifact: &str) -> Result<(), Failure> {
        match &self.opts.output {
            Some(path) => {
                fs::write(path, artifact).map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
                writeln!(report, "wrote {}", path.display()).unwrap();
            }
            None => report.push_str(artifact),
        }
        Ok(())
    }
}

fn algebra_report(c: &FinCategory, w: &Witness, abelian: bool) -> Result<AlgebraReport, Failure> {
    Ok(match (w, abelian) {
        (Witness::Monoid(m), false) => check_monoid_object(c, m)?,
        (Witness::Group(g), false) => check_group_object(c, g)?,
        (Witness::Group(g), true) => check_abelian_group_object(c, g)?,
        (Witness::Monoid(_), true) => return Err(input("--abelian needs group witnesses")),
    })
}

/// Pullbacks of nonempty sieves stay nonempty.
fn atomic_is_topology(c: &FinCategory) -> Result<bool, Failure> {
    for x in c.objects() {
        let into = c.arrows_into(x)?;
        for f in &into {
            let p = principal_sieve(c, f)?;
            for g in &into {
                if pullback_sieve(c, g, &p)?.is_empty() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Builds the sieve universes of a builder topology, largest objects first,
/// so that an oversized category fails fast.
fn probe_universes(j: &GrothendieckTopology) -> Result<(), Error> {
    if j.kind().is_none() {
        return Ok(());
    }
    let c = j.category();
    let mut order: Vec<ObjId> = c.objects().collect();
    order.sort_by_key(|&x| Reverse(c.arrows_into(x).map_or(usize::MAX, |a| a.len())));
    for x in order {
        sieve_universe(c, x)?;
    }
    Ok(())
}

/// The axiom verdict and its text. Builder topologies too large to
/// materialize fall back to a direct argument.
fn axiom_status(j: &GrothendieckTopology) -> Result<(bool, String), Failure> {
    let c = j.category();
    match (probe_universes(j).and_then(|_| check_axioms(j)), j.kind()) {
        (Ok(r), _) => Ok((r.passed(), r.display(c).to_string())),
        (Err(e @ Error::Resource { .. }), Some(kind)) => {
            let why = match kind {
                TopologyKind::Atomic => {
                    if !atomic_is_topology(c)? {
                        return Err(e.into());
                    }
                    "pullbacks of nonempty sieves are nonempty"
                }
                _ => "this builder yields a topology on every category",
            };
            Ok((
                true,
                format!("note: {} on {} not materialized ({e}); {why}\n", j.name(), c.name()),
            ))
        }
        (Err(e), _) => Err(e.into()),
    }
}

/// Like [`axiom_status`], but named builders are settled without
/// materializing: all but atomic are unconditional, and atomic needs only the
/// nonempty-pullback condition. Failing atomic inputs get the full report.
fn input_status(j: &GrothendieckTopology) -> Result<(bool, String), Failure> {
    match j.kind() {
        Some(TopologyKind::Atomic) if !atomic_is_topology(j.category())? => axiom_status(j),
        Some(_) => Ok((true, String::new())),
        None => axiom_status(j),
    }
}

fn object(c: &FinCategory, name: &str) -> Result<ObjId, Failure> {
    Ok(c.object_id(name)?)
}

fn validate(ctx: &Ctx<'_>, path: &Path) -> Verdict {
    let text = ctx.read(path)?;
    let c = parse_category_source(&text, &path.display().to_string(), ctx.config)?;
    let mut out = format!("category {}: {} objects", c.name(), c.object_count());
    if let Ok(n) = c.arrow_count() {
        write!(out, ", {n} arrows").unwrap();
    }
    out.push('\n');
    let r = validate_category(&c);
    write!(out, "{r}").unwrap();
    Ok((status(r.passed()), out))
}

fn make_category(ctx: &Ctx<'_>, divisors: Option<u64>, carriers: &[String], product: &[std::path::PathBuf]) -> Verdict {
    let c = if let Some(n) = divisors {
        Arc::new(build_divisor_poset(n, ctx.config)?)
    } else if !carriers.is_empty() {
        let mut sizes = Vec::new();
        for item in carriers {
            let (name, size) = item.split_once(':').unwrap_or((item, item));
            let size = size
                .trim()
                .parse::<usize>()
                .map_err(|_| input(format!("bad carrier `{item}`, expected name:size")))?;
            sizes.push((name.trim(), size));
        }
        Arc::new(build_finset_category(&sizes, ctx.config)?)
    } else {
        let a = ctx.category(&product[0])?;
        let b = ctx.category(&product[1])?;
        build_product_category(&a, &b)?.category
    };
    let mut out = String::new();
    let mut code = EXIT_HOLDS;
    if ctx.opts.verifying() {
        let r = validate_category(&c);
        code = status(r.passed());
        write!(out, "{r}").unwrap();
    }
    ctx.emit(&mut out, &serialize_category(&c))?;
    Ok((code, out))
}

fn make_topology(ctx: &Ctx<'_>, path: &Path, kind: TopologyKind) -> Verdict {
    let c = ctx.category(path)?;
    let j = GrothendieckTopology::from_rule(c.clone(), kind).with_name(kind.to_string());
    let text = serialize_topology(&j)?;
    let mut out = String::new();
    let mut code = EXIT_HOLDS;
    if ctx.opts.verifying() {
        let (ok, verdict) = axiom_status(&j)?;
        code = status(ok);
        out.push_str(&verdict);
    }
    ctx.emit(&mut out, &text)?;
    Ok((code, out))
}

fn check_topology(ctx: &Ctx<'_>, path: &Path, args: &TopologyArgs) -> Verdict {
    let c = ctx.category(path)?;
    let quiet = Options {
        no_verify: true,
        ..ctx.opts.clone()
    };
    let loader = Ctx {
        opts: &quiet,
        config: ctx.config,
    };
    let j = loader.topology(&c, args, &mut String::new())?;
    let (ok, verdict) = axiom_status(&j)?;
    Ok((status(ok), format!("topology {} on {}\n{verdict}", j.name(), c.name())))
}

fn pullback(ctx: &Ctx<'_>, path: &Path, arrow: &str, sieve: Option<&str>, args: &TopologyArgs) -> Verdict {
    let c = ctx.category(path)?;
    let f = c.arrow(arrow)?;
    let (b, x) = (c.dom(&f), c.cod(&f));
    let mut out = String::new();
    match sieve {
        Some(text) => {
            let s = parse_sieve_literal(text, "--sieve", &c, x)?;
            let p = pullback_sieve(&c, &f, &s)?;
            writeln!(out, "{arrow}*({}) = {}", s.display(&c), p.display(&c)).unwrap();
        }
        None => {
            let j = ctx.topology(&c, args, &mut out)?;
            let p = pullback_local(&c, &f, &localize(&j, x)?)?;
            writeln!(
                out,
                "{arrow}*({}({})) at {}: {} sieves",
                j.name(),
                c.object_name(x),
                c.object_name(b),
                p.len()
            )
            .unwrap();
            writeln!(out, "{}", p.display(&c)).unwrap();
        }
    }
    Ok((EXIT_HOLDS, out))
}

fn check_continuous(ctx: &Ctx<'_>, path: &Path, arrow: &str, args: &TopologyArgs) -> Verdict {
    let c = ctx.category(path)?;
    let mut out = String::new();
    let j = ctx.topology(&c, args, &mut out)?;
    let f = c.arrow(arrow)?;
    let (b, x) = (c.object_name(c.dom(&f)), c.object_name(c.cod(&f)));
    let v = is_continuous(&c, &f, &j)?;
    match &v.witness {
        None => writeln!(out, "{arrow}: {b} -> {x} is continuous for {}", j.name()).unwrap(),
        Some(s) => writeln!(
            out,
            "{arrow}: {b} -> {x} is not continuous for {}\nwitness: {} covers {b} but is not in {arrow}*({}({x}))",
            j.name(),
            s.display(&c),
            j.name()
        )
        .unwrap(),
    }
    Ok((status(v.holds()), out))
}

fn initial_topology(ctx: &Ctx<'_>, path: &Path, obj: &str, arrows: &[String], args: &TopologyArgs) -> Verdict {
    let c = ctx.category(path)?;
    let mut out = String::new();
    let j = ctx.topology(&c, args, &mut out)?;
    let x = object(&c, obj)?;
    let mut family = Vec::new();
    for name in arrows {
        let f = c.arrow(name)?;
        let l = localize(&j, c.cod(&f))?;
        family.push((f, l));
    }
    let l = initial_local_topology(&c, x, &family)?;
    writeln!(
        out,
        "initial topology at {obj} for [{}] under {}: {} sieves",
        arrows.join(", "),
        j.name(),
        l.len()
    )
    .unwrap();
    writeln!(out, "{}", l.display(&c)).unwrap();
    Ok((EXIT_HOLDS, out))
}

fn enumerate(ctx: &Ctx<'_>, path: &Path) -> Verdict {
    let c = ctx.category(path)?;
    let all = enumerate_topologies(&c)?;
    let mut out = format!("{} topologies on {}\n", all.len(), c.name());
    let mut artifact = String::new();
    for (i, j) in all.iter().enumerate() {
        if i > 0 {
            artifact.push('\n');
        }
        artifact.push_str(&serialize_topology(j)?);
    }
    ctx.emit(&mut out, &artifact)?;
    Ok((EXIT_HOLDS, out))
}

fn lattice(ctx: &Ctx<'_>, path: &Path, args: &TopologyArgs, is_meet: bool) -> Verdict {
    let c = ctx.category(path)?;
    let mut out = String::new();
    let js = ctx.topologies(&c, args, &mut out)?;
    let [a, b] = js.as_slice() else {
        return Err(input(format!("expected two topologies, got {}", js.len())));
    };
    let (r, label) = if is_meet {
        (meet(a, b)?, "meet")
    } else {
        (join(a, b)?, "join")
    };
    let r = r.with_name(label);
    writeln!(out, "{label} of {} and {} on {}", a.name(), b.name(), c.name()).unwrap();
    let mut code = EXIT_HOLDS;
    if ctx.opts.verifying() {
        let (ok, verdict) = axiom_status(&r)?;
        code = status(ok);
        out.push_str(&verdict);
    }
    ctx.emit(&mut out, &serialize_topology(&r)?)?;
    Ok((code, out))
}

fn find_objects(ctx: &Ctx<'_>, path: &Path, structure: super::Structure) -> Verdict {
    let c = ctx.category(path)?;
    let found = find_algebraic_objects(&c, structure.into())?;
    let noun = match structure {
        super::Structure::Monoid => "monoid",
        super::Structure::Group => "group",
    };
    let mut out = format!("{} {noun} objects in {}\n", found.len(), c.name());
    let wf = WitnessFile {
        witnesses: found,
        homs: Vec::new(),
    };
    ctx.emit(&mut out, &serialize_witness_file(&c, &wf))?;
    Ok((EXIT_HOLDS, out))
}

fn check_object(ctx: &Ctx<'_>, path: &Path, wit: &Path, abelian: bool) -> Verdict {
    let c = ctx.category(path)?;
    let text = ctx.read(wit)?;
    let wf = parse_witness_file(&text, &wit.display().to_string(), &c)?;
    let mut out = String::new();
    let mut all = true;
    for (i, w) in wf.witnesses.iter().enumerate() {
        let r = algebra_report(&c, w, abelian)?;
        all &= r.passed();
        writeln!(out, "witness {}: {}", i + 1, witness_line(&c, w)).unwrap();
        write!(out, "{}", r.display(&c)).unwrap();
    }
    Ok((status(all), out))
}

fn check_hom(ctx: &Ctx<'_>, path: &Path, wit: &Path) -> Verdict {
    let c = ctx.category(path)?;
    let wf = ctx.witnesses(&c, wit)?;
    if wf.homs.is_empty() {
        return Err(input(format!("{} has no hom lines", wit.display())));
    }
    let mut out = String::new();
    let mut all = true;
    for h in &wf.homs {
        let (s, t) = (&wf.witnesses[h.source], &wf.witnesses[h.target]);
        let r = check_homomorphism(&c, s.monoid(), t.monoid(), &h.arrow)?;
        all &= r.passed();
        writeln!(
            out,
            "hom {} from witness {} to witness {}: {}",
            c.arrow_name(&h.arrow),
            h.source + 1,
            h.target + 1,
            if r.passed() { "holds" } else { "fails" }
        )
        .unwrap();
        if !r.passed() {
            write!(out, "{}", r.display(&c)).unwrap();
        }
    }
    Ok((status(all), out))
}

struct GtopArgs<'a> {
    witness: Option<&'a Path>,
    topology: &'a TopologyArgs,
    functor_level: bool,
    mul: Option<MulArg>,
    unit: Option<&'a str>,
    product_topology: Option<&'a Path>,
    product_kind: Option<TopologyKind>,
    submonoid: Option<&'a Path>,
}

fn default_unit(c: &FinCategory, op: PosetOperation, unit: Option<&str>) -> Result<ObjId, Failure> {
    if let Some(name) = unit {
        return object(c, name);
    }
    let found = match op {
        PosetOperation::Join => initial_objects(c),
        PosetOperation::Meet => terminal_objects(c),
    };
    found
        .first()
        .copied()
        .ok_or_else(|| input(format!("{} has no default unit; pass --unit", c.name())))
}

fn check_gtop(ctx: &Ctx<'_>, path: &Path, a: GtopArgs<'_>) -> Verdict {
    let c = ctx.category(path)?;
    let mut out = String::new();
    let j = ctx.topology(&c, a.topology, &mut out)?;
    if !a.functor_level {
        let wit = a
            .witness
            .ok_or_else(|| input("the object-level reading needs a witness file"))?;
        let wf = ctx.witnesses(&c, wit)?;
        let mut all = true;
        for (i, w) in wf.witnesses.iter().enumerate() {
            let r = is_gtop_algebraic_object(&c, w, &j)?;
            all &= r.passed();
            writeln!(out, "witness {}: {}", i + 1, witness_line(&c, w)).unwrap();
            write!(out, "{}", r.display(&c)).unwrap();
        }
        return Ok((status(all), out));
    }
    let op = match a.mul {
        Some(MulArg::Join) | None => PosetOperation::Join,
        Some(MulArg::Meet) => PosetOperation::Meet,
    };
    let unit = default_unit(&c, op, a.unit)?;
    let m = poset_monoid(&c, op, unit)?;
    let p = &m.product.category;
    let jprod = match (a.product_topology, a.product_kind.or(j.kind())) {
        (Some(file), _) => TopologyArgs {
            topology: vec![file.to_path_buf()],
            kind: Vec::new(),
        },
        (None, Some(kind)) => TopologyArgs {
            topology: Vec::new(),
            kind: vec![kind],
        },
        (None, None) => return Err(input("pass --product-topology or --product-kind")),
    };
    let jprod = ctx.topology(p, &jprod, &mut out)?;
    let sub = match a.submonoid {
        Some(s) => {
            let sc = ctx.category(s)?;
            let su = match a.unit {
                Some(name) if sc.object_id(name).is_ok() => object(&sc, name)?,
                _ => default_unit(&sc, op, None)?,
            };
            let ms = poset_monoid(&sc, op, su)?;
            let inc = inclusion_functor(&sc, &c)?;
            Some((ms, inc))
        }
        None => None,
    };
    let r = is_gtop_functor_monoid(
        &m,
        &jprod,
        &j,
        sub.as_ref().map(|(ms, inc)| Submonoid {
            monoid: ms,
            inclusion: inc,
        }),
    )?;
    writeln!(
        out,
        "{} on {} with unit {}, {} on {}, {} on {}",
        if op == PosetOperation::Join { "join" } else { "meet" },
        c.name(),
        c.object_name(unit),
        jprod.name(),
        p.name(),
        j.name(),
        c.name()
    )
    .unwrap();
    write!(out, "{}", r.display(&m)).unwrap();
    Ok((status(r.passed()), out))
}

fn dispatch(ctx: &Ctx<'_>, verb: &Verb) -> Verdict {
    match verb {
        Verb::Validate { category } => validate(ctx, category),
        Verb::MakeCategory {
            divisors,
            carriers,
            product_of,
        } => make_category(ctx, *divisors, carriers, product_of),
        Verb::MakeTopology { category, kind } => make_topology(ctx, category, *kind),
        Verb::CheckTopology { category, topology } => check_topology(ctx, category, topology),
        Verb::Pullback {
            category,
            arrow,
            sieve,
            topology,
        } => pullback(ctx, category, arrow, sieve.as_deref(), topology),
        Verb::CheckContinuous {
            category,
            arrow,
            topology,
        } => check_continuous(ctx, category, arrow, topology),
        Verb::InitialTopology {
            category,
            object,
            arrows,
            topology,
        } => initial_topology(ctx, category, object, arrows, topology),
        Verb::EnumerateTopologies { category } => enumerate(ctx, category),
        Verb::Meet { category, topology } => lattice(ctx, category, topology, true),
        Verb::Join { category, topology } => lattice(ctx, category, topology, false),
        Verb::FindObjects { category, structure } => find_objects(ctx, category, *structure),
        Verb::CheckObject {
            category,
            witness,
            abelian,
        } => check_object(ctx, category, witness, *abelian),
        Verb::CheckHom { category, witness } => check_hom(ctx, category, witness),
        Verb::CheckGtop {
            category,
            witness,
            topology,
            functor_level,
            mul,
            unit,
            product_topology,
            product_kind,
            submonoid,
        } => check_gtop(
            ctx,
            category,
            GtopArgs {
                witness: witness.as_deref(),
                topology,
                functor_level: *functor_level,
                mul: *mul,
                unit: unit.as_deref(),
                product_topology: product_topology.as_deref(),
                product_kind: *product_kind,
                submonoid: submonoid.as_deref(),
            },
        ),
    }
}

/// Runs one request; never panics on bad input.
pub fn run_command(req: &CommandRequest) -> Outcome {
    let ctx = Ctx {
        opts: &req.options,
        config: req.options.config(),
    };
    match dispatch(&ctx, &req.verb) {
        Ok((status, report)) => Outcome { status, report },
        Err(e) => {
            let mut report = e.to_string();
            if !report.ends_with('\n') {
                report.push('\n');
            }
            Outcome {
                status: EXIT_ERROR,
                report,
            }
        }
    }
}
