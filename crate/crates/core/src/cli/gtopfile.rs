//! `.gtop` files.
//!
//! ```text
//! topology J on D12
//! cover 12 : {4->12}
//! cover 1 : {}
//! ```
//!
//! Each `cover` line lists generators of a covering sieve. Maximal sieves
//! always cover and are not written.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::sync::Arc;

use super::catfile::valid_id;
use super::diag::{lines, split_items, DiagnosticCode as Code, Diagnostics, Reporter, Token};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory, ObjId};
use crate::gtopology::GrothendieckTopology;
use crate::sieves::{maximal_sieve, sieve_closure, Sieve};

/// Parses a candidate topology; axioms are not checked.
pub fn parse_topology_file(text: &str, file: &str, c: &Arc<FinCategory>) -> Result<GrothendieckTopology, Diagnostics> {
    let mut r = Reporter::new(file);
    let all = lines(text);
    let Some(first) = all.first() else {
        r.at_start(Code::MissingHeader, "missing topology header");
        return r.finish(None);
    };
    let name = match first.tokens.as_slice() {
        [kw, name, on, cat] if kw.text == "topology" && on.text == "on" && valid_id(name.text) => {
            if cat.text != c.name() {
                r.at(
                    Code::CategoryMismatch,
                    first.number,
                    cat,
                    format!("topology is on `{}` but the category is `{}`", cat.text, c.name()),
                );
            }
            name.text
        }
        _ => {
            r.at_line(Code::MissingHeader, first, "expected `topology <name> on <category>`");
            return r.finish(None);
        }
    };
    let mut covers: Vec<BTreeSet<Sieve>> = vec![BTreeSet::new(); c.object_count()];
    for line in &all[1..] {
        let t = &line.tokens;
        let n = line.number;
        if t[0].text == "topology" {
            r.at(Code::DuplicateHeader, n, &t[0], "second topology header");
            continue;
        }
        if t[0].text != "cover" {
            r.at(
                Code::UnknownDirective,
                n,
                &t[0],
                format!("unknown directive `{}`", t[0].text),
            );
            continue;
        }
        if t.len() < 4 || t[2].text != ":" {
            r.at_line(Code::Syntax, line, "expected `cover <object> : {<arrows>}`");
            continue;
        }
        let Ok(x) = c.object_id(t[1].text) else {
            r.at(Code::UnknownObject, n, &t[1], format!("unknown object `{}`", t[1].text));
            continue;
        };
        let Some(gens) = sieve_items(&mut r, c, x, n, line.rest(t[3].start), t[3].start, t[1].text) else {
            continue;
        };
        match sieve_closure(c, x, &gens) {
            Ok(s) => {
                covers[x].insert(s);
            }
            Err(e) => r.at_line(Code::Resource, line, e.to_string()),
        }
    }
    if !r.found.is_empty() {
        return r.finish(None);
    }
    for x in c.objects() {
        match maximal_sieve(c, x) {
            Ok(t) => {
                covers[x].insert(t);
            }
            Err(e) => {
                r.at_line(Code::Resource, first, e.to_string());
                return r.finish(None);
            }
        }
    }
    r.finish(Some(
        GrothendieckTopology::explicit(c.clone(), name, covers).expect("covers are per object"),
    ))
}

/// Generators listed in a `{a, b, ...}` literal starting at column `col`.
fn sieve_items(
    r: &mut Reporter,
    c: &FinCategory,
    x: ObjId,
    n: usize,
    literal: &str,
    col: usize,
    object: &str,
) -> Option<Vec<Arrow>> {
    let lit_tok = Token {
        text: literal,
        start: col,
        end: col + literal.len(),
    };
    let Some(body) = literal.strip_prefix('{').and_then(|b| b.strip_suffix('}')) else {
        r.at(Code::Syntax, n, &lit_tok, "sieve literal must be written `{a, b, ...}`");
        return None;
    };
    let mut gens = Vec::new();
    let mut ok = true;
    for item in split_items(body, col + 1) {
        match c.arrow(item.text) {
            Ok(a) if c.cod(&a) == x => gens.push(a),
            Ok(_) => {
                r.at(
                    Code::WrongCoverTarget,
                    n,
                    &item,
                    format!("`{}` does not end at {object}", item.text),
                );
                ok = false;
            }
            Err(_) => {
                r.at(Code::UnknownArrow, n, &item, format!("unknown arrow `{}`", item.text));
                ok = false;
            }
        }
    }
    ok.then_some(gens)
}

/// A sieve on `x` from a standalone literal such as `{2->4, 1->4}`.
pub fn parse_sieve_literal(text: &str, file: &str, c: &FinCategory, x: ObjId) -> Result<Sieve, Diagnostics> {
    let mut r = Reporter::new(file);
    let literal = text.trim();
    let col = text.len() - text.trim_start().len() + 1;
    let Some(gens) = sieve_items(&mut r, c, x, 1, literal, col, c.object_name(x)) else {
        return r.finish(None);
    };
    match sieve_closure(c, x, &gens) {
        Ok(s) => r.finish(Some(s)),
        Err(e) => {
            r.at_start(Code::Resource, e.to_string());
            r.finish(None)
        }
    }
}

/// Canonical text: covers by object, then by sorted generator list.
pub fn serialize_topology(j: &GrothendieckTopology) -> Result<String> {
    let c = j.category();
    let name = if valid_id(j.name()) { j.name() } else { "J" };
    let mut out = format!("topology {name} on {}\n", c.name());
    for x in c.objects() {
        let top = maximal_sieve(c, x)?;
        let mut lits: Vec<Vec<String>> = Vec::new();
        for s in j.covers(x)? {
            if s == top {
                continue;
            }
            let mut names: Vec<String> = s.generators(c)?.iter().map(|a| c.arrow_name(a)).collect();
            names.sort();
            lits.push(names);
        }
        lits.sort();
        for names in lits {
            writeln!(out, "cover {} : {{{}}}", c.object_name(x), names.join(", "))
                .map_err(|e| Error::structural(e.to_string()))?;
        }
    }
    Ok(out)
}
