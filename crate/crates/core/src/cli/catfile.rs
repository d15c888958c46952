//! `.cat` files.
//!
//! ```text
//! category cospan
//! object X
//! object Z
//! arrow f : X -> Z
//! compose g . f = h
//! ```
//!
//! Finite-set categories use `category <name> finset`, `carrier <id> <size>`
//! and `map <id> : <dom> -> <cod> = v0 v1 ...`.

use std::collections::HashMap;
use std::fmt::Write;

use super::diag::{lines, DiagnosticCode as Code, Diagnostics, Line, Reporter, Token};
use crate::config::Config;
use crate::error::Error;
use crate::fincat::{validate_category, Arrow, Backend, CategoryBuilder, FinCategory};

pub(crate) fn valid_id(s: &str) -> bool {
    !s.is_empty() && !s.contains(['{', '}', ',', '#', '=']) && !s.chars().any(char::is_whitespace)
}

fn shape_error(r: &mut Reporter, line: &Line<'_>, expected: &str) {
    r.at_line(Code::Syntax, line, format!("expected `{expected}`"));
}

struct Decl<'a> {
    line: usize,
    tok: Token<'a>,
}

/// Parses declarations and builds the category without checking the
/// category laws.
pub fn parse_category_source(text: &str, file: &str, config: Config) -> Result<FinCategory, Diagnostics> {
    let mut r = Reporter::new(file);
    let all = lines(text);
    let Some(first) = all.first() else {
        r.at_start(Code::MissingHeader, "missing category header");
        return r.finish(None);
    };
    let backend = match first.tokens.as_slice() {
        [kw, name] if kw.text == "category" && valid_id(name.text) => Backend::Table,
        [kw, name, b] if kw.text == "category" && valid_id(name.text) && b.text == "finset" => Backend::FinSet,
        [kw, name, b] if kw.text == "category" && valid_id(name.text) && b.text == "table" => Backend::Table,
        [kw, ..] if kw.text == "category" => {
            shape_error(&mut r, first, "category <name> [table|finset]");
            return r.finish(None);
        }
        _ => {
            r.at_line(Code::MissingHeader, first, "missing category header");
            return r.finish(None);
        }
    };
    let name = first.tokens[1].text;
    let mut b = match backend {
        Backend::Table => CategoryBuilder::table(name),
        Backend::FinSet => CategoryBuilder::finset(name),
    }
    .config(config);

    let mut objects: HashMap<&str, usize> = HashMap::new();
    let mut arrows: HashMap<&str, usize> = HashMap::new();
    let mut sizes: HashMap<&str, usize> = HashMap::new();
    let mut arrow_decls: Vec<(Decl<'_>, Token<'_>, Token<'_>)> = Vec::new();
    let mut map_decls: Vec<(Decl<'_>, Token<'_>, Token<'_>, Vec<Token<'_>>)> = Vec::new();
    let mut compose_decls: Vec<(usize, [Token<'_>; 3])> = Vec::new();

    for line in &all[1..] {
        let t = &line.tokens;
        let n = line.number;
        match (t[0].text, backend) {
            ("category", _) => r.at(Code::DuplicateHeader, n, &t[0], "second category header"),
            ("object", Backend::Table) | ("carrier", Backend::FinSet) => {
                let is_carrier = backend == Backend::FinSet;
                if t.len() != if is_carrier { 3 } else { 2 } || !valid_id(t[1].text) {
                    shape_error(
                        &mut r,
                        line,
                        if is_carrier {
                            "carrier <id> <size>"
                        } else {
                            "object <id>"
                        },
                    );
                    continue;
                }
                if let Some(&prev) = objects.get(t[1].text) {
                    r.at(
                        Code::DuplicateObject,
                        n,
                        &t[1],
                        format!("object `{}` already declared on line {prev}", t[1].text),
                    );
                    continue;
                }
                if is_carrier {
                    let Ok(size) = t[2].text.parse::<usize>() else {
                        r.at(Code::Syntax, n, &t[2], "carrier size must be a natural number");
                        continue;
                    };
                    sizes.insert(t[1].text, size);
                }
                objects.insert(t[1].text, n);
            }
            ("arrow", Backend::Table) | ("map", Backend::FinSet) => {
                let is_map = backend == Backend::FinSet;
                let ok = if is_map {
                    t.len() >= 7 && t[2].text == ":" && t[4].text == "->" && t[6].text == "="
                } else {
                    t.len() == 6 && t[2].text == ":" && t[4].text == "->"
                };
                if !ok || !valid_id(t[1].text) {
                    shape_error(
                        &mut r,
                        line,
                        if is_map {
                            "map <id> : <dom> -> <cod> = <values>"
                        } else {
                            "arrow <id> : <dom> -> <cod>"
                        },
                    );
                    continue;
                }
                if t[1].text.starts_with("id_") {
                    r.at(
                        Code::ReservedId,
                        n,
                        &t[1],
                        format!("arrow id `{}` uses the reserved identity prefix `id_`", t[1].text),
                    );
                    continue;
                }
                if let Some(&prev) = arrows.get(t[1].text) {
                    r.at(
                        Code::DuplicateArrow,
                        n,
                        &t[1],
                        format!("arrow `{}` already declared on line {prev}", t[1].text),
                    );
                    continue;
                }
                arrows.insert(t[1].text, n);
                let decl = Decl { line: n, tok: t[1] };
                if is_map {
                    map_decls.push((decl, t[3], t[5], t[7..].to_vec()));
                } else {
                    arrow_decls.push((decl, t[3], t[5]));
                }
            }
            ("compose", Backend::Table) => {
                if t.len() != 6 || t[2].text != "." || t[4].text != "=" {
                    shape_error(&mut r, line, "compose <g> . <f> = <h>");
                    continue;
                }
                compose_decls.push((n, [t[1], t[3], t[5]]));
            }
            _ => r.at(
                Code::UnknownDirective,
                n,
                &t[0],
                format!("`{}` is not a declaration of a {backend} category", t[0].text),
            ),
        }
    }

    let mut names_in_order: Vec<(&str, usize)> = objects.iter().map(|(k, v)| (*k, *v)).collect();
    names_in_order.sort_by_key(|&(_, line)| line);
    for (o, _) in &names_in_order {
        let added = match backend {
            Backend::Table => b.object(o).map(|_| ()),
            Backend::FinSet => b.carrier(o, sizes[o]).map(|_| ()),
        };
        added.expect("checked above");
    }

    let mut typing: HashMap<String, (&str, &str)> = HashMap::new();
    for (o, _) in &names_in_order {
        typing.insert(format!("id_{o}"), (o, o));
    }
    let known = |r: &mut Reporter, line: usize, tok: &Token<'_>| {
        if objects.contains_key(tok.text) {
            true
        } else {
            r.at(Code::UnknownObject, line, tok, format!("unknown object `{}`", tok.text));
            false
        }
    };
    for (d, dom, cod) in &arrow_decls {
        if known(&mut r, d.line, dom) & known(&mut r, d.line, cod) {
            b.arrow(d.tok.text, dom.text, cod.text).expect("checked above");
            typing.insert(d.tok.text.to_string(), (dom.text, cod.text));
        }
    }
    for (d, dom, cod, values) in &map_decls {
        if !(known(&mut r, d.line, dom) & known(&mut r, d.line, cod)) {
            continue;
        }
        let parsed: Option<Vec<u32>> = values.iter().map(|v| v.text.parse().ok()).collect();
        let good = parsed
            .as_ref()
            .is_some_and(|vals| vals.len() == sizes[dom.text] && vals.iter().all(|&v| (v as usize) < sizes[cod.text]));
        if !good {
            r.at(
                Code::InvalidMap,
                d.line,
                &d.tok,
                format!("map `{}` is not a function {} -> {}", d.tok.text, dom.text, cod.text),
            );
            continue;
        }
        b.map(d.tok.text, dom.text, cod.text, parsed.unwrap())
            .expect("checked above");
    }
    let mut seen: HashMap<(&str, &str), (&str, usize)> = HashMap::new();
    for (n, [g, f, h]) in &compose_decls {
        let mut types = Vec::new();
        for tok in [g, f, h] {
            match typing.get(tok.text) {
                Some(ty) => types.push(*ty),
                None => r.at(Code::UnknownArrow, *n, tok, format!("unknown arrow `{}`", tok.text)),
            }
        }
        let [gt, ft, ht] = types[..] else { continue };
        if ft.1 != gt.0 {
            r.at(
                Code::IllTypedComposition,
                *n,
                g,
                format!(
                    "ill-typed composition {} . {}: codomain {} of {} is not the domain {} of {}",
                    g.text, f.text, ft.1, f.text, gt.0, g.text
                ),
            );
            continue;
        }
        if ht != (ft.0, gt.1) {
            r.at(
                Code::IllTypedComposition,
                *n,
                h,
                format!("ill-typed composition: {} must go from {} to {}", h.text, ft.0, gt.1),
            );
            continue;
        }
        if let Some(&(prev, line)) = seen.get(&(g.text, f.text)) {
            if prev != h.text {
                r.at(
                    Code::ConflictingComposite,
                    *n,
                    h,
                    format!("{} . {} already declared as {prev} on line {line}", g.text, f.text),
                );
            }
            continue;
        }
        seen.insert((g.text, f.text), (h.text, *n));
        b.compose(g.text, f.text, h.text).expect("checked above");
    }
    if !r.found.is_empty() {
        return r.finish(None);
    }
    match b.build() {
        Ok(c) => r.finish(Some(c)),
        Err(e) => {
            let code = if matches!(e, Error::Resource { .. }) {
                Code::Resource
            } else {
                Code::Syntax
            };
            r.at_line(code, first, e.to_string());
            r.finish(None)
        }
    }
}

/// Parses and checks the category laws.
pub fn parse_category_file(text: &str, file: &str, config: Config) -> Result<FinCategory, Diagnostics> {
    let c = parse_category_source(text, file, config)?;
    let report = validate_category(&c);
    if report.passed() {
        return Ok(c);
    }
    let mut r = Reporter::new(file);
    let header = lines(text);
    for v in &report.violations {
        r.at_line(
            Code::CategoryLaw,
            &header[0],
            format!("{} fails for {}", v.law, v.arrows.join(", ")),
        );
    }
    r.finish(None)
}

/// Declaration order, unit composites omitted. Output parses back to an
/// equal category.
pub fn serialize_category(c: &FinCategory) -> String {
    let mut out = String::new();
    match c.backend() {
        Backend::Table => {
            writeln!(out, "category {}", c.name()).unwrap();
            for o in c.objects() {
                writeln!(out, "object {}", c.object_name(o)).unwrap();
            }
            let records = c.table_arrows().unwrap();
            for r in &records[c.object_count()..] {
                writeln!(
                    out,
                    "arrow {} : {} -> {}",
                    r.name,
                    c.object_name(r.dom),
                    c.object_name(r.cod)
                )
                .unwrap();
            }
            let n = c.object_count();
            for (g, f, h) in c.table_composites() {
                if g < n || f < n {
                    continue;
                }
                let name = |id| c.arrow_name(&Arrow::Table(id));
                writeln!(out, "compose {} . {} = {}", name(g), name(f), name(h)).unwrap();
            }
        }
        Backend::FinSet => {
            writeln!(out, "category {} finset", c.name()).unwrap();
            for o in c.objects() {
                writeln!(out, "carrier {} {}", c.object_name(o), c.carrier_size(o).unwrap()).unwrap();
            }
            for (name, m) in c.named_maps() {
                let vals: Vec<String> = m.values().iter().map(u32::to_string).collect();
                writeln!(
                    out,
                    "map {name} : {} -> {} = {}",
                    c.object_name(m.dom()),
                    c.object_name(m.cod()),
                    vals.join(" ")
                )
                .unwrap();
            }
        }
    }
    out
}
