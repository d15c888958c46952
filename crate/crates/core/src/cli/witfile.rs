//! `.wit` files.
//!
//! ```text
//! monoid 12 mul=id_12 unit=id_12
//! group 2 mul=xor unit=zero inv=id_2 via product=4,fst,snd
//! hom id_2 source=2 target=2
//! ```
//!
//! Optional `via` settings pick the cones (`product=`, `cube=`, each
//! `<apex>,<left>,<right>`) and the terminal object (`terminal=`); they are
//! written only when they differ from the first ones found. `hom` lines refer
//! to witnesses by 1-based position.

use std::collections::HashMap;
use std::fmt::Write;

use super::diag::{lines, split_items, DiagnosticCode as Code, Diagnostics, Line, Reporter, Token};
use crate::algebra::{GroupObject, MonoidObject, Witness};
use crate::error::Result;
use crate::fincat::{binary_product, terminal_objects, Arrow, FinCategory, ProductCone};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEntry {
    pub arrow: Arrow,
    /// 0-based positions in [`WitnessFile::witnesses`].
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WitnessFile {
    pub witnesses: Vec<Witness>,
    pub homs: Vec<HomEntry>,
}

fn settings<'a>(r: &mut Reporter, line: &Line<'a>, tokens: &[Token<'a>]) -> Option<HashMap<&'a str, Token<'a>>> {
    let mut out = HashMap::new();
    let mut ok = true;
    for tok in tokens {
        if tok.text == "via" {
            continue;
        }
        let Some((key, value)) = tok.text.split_once('=') else {
            r.at(
                Code::Syntax,
                line.number,
                tok,
                format!("expected `key=value`, found `{}`", tok.text),
            );
            ok = false;
            continue;
        };
        let value_tok = Token {
            text: value,
            start: tok.start + key.len() + 1,
            end: tok.end,
        };
        if out.insert(key, value_tok).is_some() {
            r.at(Code::Syntax, line.number, tok, format!("`{key}` given twice"));
            ok = false;
        }
    }
    ok.then_some(out)
}

fn arrow(r: &mut Reporter, c: &FinCategory, line: usize, tok: &Token<'_>) -> Option<Arrow> {
    match c.arrow(tok.text) {
        Ok(a) => Some(a),
        Err(_) => {
            r.at(Code::UnknownArrow, line, tok, format!("unknown arrow `{}`", tok.text));
            None
        }
    }
}

fn cone(
    r: &mut Reporter,
    c: &FinCategory,
    line: usize,
    tok: &Token<'_>,
    factors: (usize, usize),
) -> Option<ProductCone> {
    let parts = split_items(tok.text, tok.start);
    let [apex, left, right] = parts.as_slice() else {
        r.at(Code::Syntax, line, tok, "a cone is written `<apex>,<left>,<right>`");
        return None;
    };
    let Ok(apex_id) = c.object_id(apex.text) else {
        r.at(
            Code::UnknownObject,
            line,
            apex,
            format!("unknown object `{}`", apex.text),
        );
        return None;
    };
    let (left, right) = (arrow(r, c, line, left)?, arrow(r, c, line, right)?);
    Some(ProductCone {
        apex: apex_id,
        left,
        right,
        factors,
    })
}

fn default_cone(c: &FinCategory, a: usize, b: usize) -> Option<ProductCone> {
    binary_product(c, a, b).ok()?.into_iter().next()
}

fn parse_witness(r: &mut Reporter, c: &FinCategory, line: &Line<'_>) -> Option<Witness> {
    let t = &line.tokens;
    let n = line.number;
    let is_group = t[0].text == "group";
    if t.len() < 2 {
        r.at_line(
            Code::Syntax,
            line,
            format!("expected `{} <carrier> mul=<arrow> unit=<arrow>`", t[0].text),
        );
        return None;
    }
    let Ok(g) = c.object_id(t[1].text) else {
        r.at(Code::UnknownObject, n, &t[1], format!("unknown object `{}`", t[1].text));
        return None;
    };
    let map = settings(r, line, &t[2..])?;
    let allowed: &[&str] = if is_group {
        &["mul", "unit", "inv", "product", "cube", "terminal"]
    } else {
        &["mul", "unit", "product", "cube", "terminal"]
    };
    for (key, tok) in &map {
        if !allowed.contains(key) {
            r.at(Code::Syntax, n, tok, format!("unexpected setting `{key}`"));
            return None;
        }
    }
    let required: &[&str] = if is_group {
        &["mul", "unit", "inv"]
    } else {
        &["mul", "unit"]
    };
    for key in required {
        if !map.contains_key(key) {
            r.at_line(Code::Syntax, line, format!("missing `{key}=`"));
            return None;
        }
    }
    let mul = arrow(r, c, n, &map["mul"])?;
    let unit = arrow(r, c, n, &map["unit"])?;
    let terminal = match map.get("terminal") {
        Some(tok) => match c.object_id(tok.text) {
            Ok(o) => o,
            Err(_) => {
                r.at(Code::UnknownObject, n, tok, format!("unknown object `{}`", tok.text));
                return None;
            }
        },
        None => match terminal_objects(c).first() {
            Some(&o) => o,
            None => {
                r.at_line(
                    Code::InvalidWitness,
                    line,
                    format!("{} has no terminal object", c.name()),
                );
                return None;
            }
        },
    };
    let square = match map.get("product") {
        Some(tok) => cone(r, c, n, tok, (g, g))?,
        None => match default_cone(c, g, g) {
            Some(k) => k,
            None => {
                r.at_line(
                    Code::InvalidWitness,
                    line,
                    format!("no product of {0} with {0}", t[1].text),
                );
                return None;
            }
        },
    };
    let cube = match map.get("cube") {
        Some(tok) => cone(r, c, n, tok, (square.apex, g))?,
        None => match default_cone(c, square.apex, g) {
            Some(k) => k,
            None => {
                r.at_line(
                    Code::InvalidWitness,
                    line,
                    format!("no product of {} with {}", c.object_name(square.apex), t[1].text),
                );
                return None;
            }
        },
    };
    let monoid = match MonoidObject::with_cones(c, g, mul, unit, terminal, square, cube) {
        Ok(m) => m,
        Err(e) => {
            r.at_line(Code::InvalidWitness, line, e.to_string());
            return None;
        }
    };
    if !is_group {
        return Some(Witness::Monoid(monoid));
    }
    let inv = arrow(r, c, n, &map["inv"])?;
    match GroupObject::new(c, monoid, inv) {
        Ok(w) => Some(Witness::Group(w)),
        Err(e) => {
            r.at(Code::InvalidWitness, n, &map["inv"], e.to_string());
            None
        }
    }
}

pub fn parse_witness_file(text: &str, file: &str, c: &FinCategory) -> Result<WitnessFile, Diagnostics> {
    let mut r = Reporter::new(file);
    let mut out = WitnessFile::default();
    for line in lines(text) {
        let t = &line.tokens;
        let n = line.number;
        match t[0].text {
            "monoid" | "group" => {
                if let Some(w) = parse_witness(&mut r, c, &line) {
                    out.witnesses.push(w);
                }
            }
            "hom" => {
                if t.len() != 4 {
                    r.at_line(Code::Syntax, &line, "expected `hom <arrow> source=<k> target=<k>`");
                    continue;
                }
                let Some(a) = arrow(&mut r, c, n, &t[1]) else { continue };
                let Some(map) = settings(&mut r, &line, &t[2..]) else {
                    continue;
                };
                let mut ends = Vec::new();
                for key in ["source", "target"] {
                    let Some(tok) = map.get(key) else {
                        r.at_line(Code::Syntax, &line, format!("missing `{key}=`"));
                        break;
                    };
                    match tok.text.parse::<usize>() {
                        Ok(k) if (1..=out.witnesses.len()).contains(&k) => ends.push(k - 1),
                        _ => r.at(
                            Code::InvalidWitness,
                            n,
                            tok,
                            format!("`{}` is not the position of an earlier witness", tok.text),
                        ),
                    }
                }
                let [source, target] = ends[..] else { continue };
                let (gs, gt) = (
                    out.witnesses[source].monoid().carrier,
                    out.witnesses[target].monoid().carrier,
                );
                if c.dom(&a) != gs || c.cod(&a) != gt {
                    r.at(
                        Code::InvalidWitness,
                        n,
                        &t[1],
                        format!(
                            "`{}` does not go from {} to {}",
                            t[1].text,
                            c.object_name(gs),
                            c.object_name(gt)
                        ),
                    );
                    continue;
                }
                out.homs.push(HomEntry {
                    arrow: a,
                    source,
                    target,
                });
            }
            other => r.at(Code::UnknownDirective, n, &t[0], format!("unknown directive `{other}`")),
        }
    }
    if out.witnesses.is_empty() && r.found.is_empty() {
        r.at_start(Code::MissingHeader, "no witnesses");
    }
    r.finish(Some(out))
}

fn cone_text(c: &FinCategory, k: &ProductCone) -> String {
    format!(
        "{},{},{}",
        c.object_name(k.apex),
        c.arrow_name(&k.left),
        c.arrow_name(&k.right)
    )
}

/// One witness line, in canonical form.
pub fn witness_line(c: &FinCategory, w: &Witness) -> String {
    let m = w.monoid();
    let mut line = w.display(c).to_string();
    let mut via = Vec::new();
    if default_cone(c, m.carrier, m.carrier).as_ref() != Some(&m.square) {
        via.push(format!("product={}", cone_text(c, &m.square)));
    }
    if default_cone(c, m.square.apex, m.carrier).as_ref() != Some(&m.cube) {
        via.push(format!("cube={}", cone_text(c, &m.cube)));
    }
    if terminal_objects(c).first() != Some(&m.terminal) {
        via.push(format!("terminal={}", c.object_name(m.terminal)));
    }
    if !via.is_empty() {
        write!(line, " via {}", via.join(" ")).unwrap();
    }
    line
}

pub fn serialize_witness_file(c: &FinCategory, f: &WitnessFile) -> String {
    let mut out = String::new();
    for w in &f.witnesses {
        writeln!(out, "{}", witness_line(c, w)).unwrap();
    }
    for h in &f.homs {
        writeln!(
            out,
            "hom {} source={} target={}",
            c.arrow_name(&h.arrow),
            h.source + 1,
            h.target + 1
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::catfile::parse_category_file;
    use crate::config::Config;
    use crate::fincat::build_divisor_poset;

    const Z2: &str = "category Z2 finset\ncarrier 1 1\ncarrier 2 2\ncarrier 4 4\ncarrier 8 8\nmap xor : 4 -> 2 = 0 1 1 0\nmap zero : 1 -> 2 = 0\nmap flip : 2 -> 2 = 1 0\n";

    #[test]
    fn z2_file_round_trips() {
        let c = parse_category_file(Z2, "z2.cat", Config::default()).unwrap();
        let text = "group 2 mul=xor unit=zero inv=id_2\nhom id_2 source=1 target=1\nhom flip source=1 target=1\nhom 2->2[0,0] source=1 target=1\n";
        let f = parse_witness_file(text, "z2.wit", &c).unwrap();
        assert_eq!(f.witnesses.len(), 1);
        assert_eq!(f.homs.len(), 3);
        assert_eq!(serialize_witness_file(&c, &f), text);
    }

    #[test]
    fn explicit_cones_are_kept() {
        let c = parse_category_file(Z2, "z2.cat", Config::default()).unwrap();
        // The same product with the projections swapped.
        let text = "monoid 2 mul=xor unit=zero via product=4,4->2[0,1,0,1],4->2[0,0,1,1]\n";
        let f = parse_witness_file(text, "z2.wit", &c).unwrap();
        assert_eq!(serialize_witness_file(&c, &f), text);
    }

    #[test]
    fn d12_unit_must_start_at_terminal() {
        let c = build_divisor_poset(12, Config::default()).unwrap();
        let e = parse_witness_file("monoid 6 mul=id_6 unit=6->12\n", "d.wit", &c).unwrap_err();
        assert_eq!(e.codes(), [Code::InvalidWitness]);
        let e = parse_witness_file("monoid 12 mul=id_12 unit=12->6\n", "d.wit", &c).unwrap_err();
        assert_eq!(e.codes(), [Code::UnknownArrow]);
        let ok = parse_witness_file("monoid 12 mul=id_12 unit=id_12\n", "d.wit", &c).unwrap();
        assert_eq!(serialize_witness_file(&c, &ok), "monoid 12 mul=id_12 unit=id_12\n");
    }

    #[test]
    fn hom_positions_checked() {
        let c = build_divisor_poset(12, Config::default()).unwrap();
        let e = parse_witness_file(
            "monoid 12 mul=id_12 unit=id_12\nhom id_12 source=1 target=2\n",
            "d.wit",
            &c,
        )
        .unwrap_err();
        assert_eq!(e.codes(), [Code::InvalidWitness]);
    }
}
