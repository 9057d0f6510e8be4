//! The `.fsg` input format.
//!
//! ```text
//! # comments run to the end of the line
//! [ring]
//! p = 3
//! vars = x, y, z, u
//! order = grevlex            # lex | grevlex | block(k); default grevlex
//!
//! [ideal.Q]
//! gens = x*u - y*z           # comma separated; the key may repeat
//!
//! [ideal.M]
//! minors2 = x^2, y, u; z, x^2, y^2 - u    # 2x3 matrix, rows split by ';'
//!
//! [elem.c]
//! poly = x
//! ```
//!
//! Exactly one `[ring]` section; ideal and element names are unique. The name
//! `m` refers to the ideal generated by the variables unless a file defines it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{minors2, parse_poly, MonomialOrder, Polynomial, RingSpec};

#[derive(Debug, Clone)]
pub struct InputFile {
    pub ring: Arc<RingSpec>,
    pub ideals: BTreeMap<String, Ideal>,
    pub elems: BTreeMap<String, Polynomial>,
}

#[derive(Debug)]
struct Section {
    line: usize,
    kind: String,
    name: Option<String>,
    entries: Vec<(usize, String, String)>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Input {
        line,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| err(line, "unterminated section header"))?
                .trim();
            let (kind, name) = match header.split_once('.') {
                Some((kind, name)) => (kind.trim(), Some(name.trim().to_string())),
                None => (header, None),
            };
            match (kind, &name) {
                ("ring", None) => {}
                ("ideal" | "elem", Some(n)) if valid_name(n) => {}
                ("ideal" | "elem", _) => return Err(err(line, format!("invalid section name in [{header}]"))),
                _ => return Err(err(line, format!("unknown section [{header}]"))),
            }
            out.push(Section {
                line,
                kind: kind.to_string(),
                name,
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(line, "expected `key = value`"))?;
        let section = out
            .last_mut()
            .ok_or_else(|| err(line, "entry outside of any section"))?;
        section
            .entries
            .push((line, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn parse_ring(s: &Section) -> Result<Arc<RingSpec>> {
    let mut p = None;
    let mut vars = None;
    let mut order = MonomialOrder::GrevLex;
    for (line, key, value) in &s.entries {
        match key.as_str() {
            "p" => {
                p = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| err(*line, format!("invalid characteristic {value:?}")))?,
                )
            }
            "vars" => {
                vars = Some(
                    value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|v| !v.is_empty())
                        .map(str::to_string)
                        .collect::<Vec<_>>(),
                )
            }
            "order" => order = MonomialOrder::parse(value).map_err(|e| err(*line, e.to_string()))?,
            other => return Err(err(*line, format!("unknown ring key {other:?}"))),
        }
    }
    let p = p.ok_or_else(|| err(s.line, "ring section needs `p`"))?;
    let vars = vars.ok_or_else(|| err(s.line, "ring section needs `vars`"))?;
    RingSpec::new(p, &vars, order).map_err(|e| err(s.line, e.to_string()))
}

fn poly_at(src: &str, ring: &Arc<RingSpec>, line: usize) -> Result<Polynomial> {
    parse_poly(src, ring).map_err(|e| err(line, format!("{src:?}: {e}")))
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_ideal(s: &Section, ring: &Arc<RingSpec>) -> Result<Ideal> {
    let mut gens = Vec::new();
    for (line, key, value) in &s.entries {
        match key.as_str() {
            "gens" => {
                for g in split_list(value) {
                    gens.push(poly_at(g, ring, *line)?);
                }
            }
            "minors2" => {
                let rows: Vec<Vec<Polynomial>> = value
                    .split(';')
                    .map(|row| split_list(row).map(|e| poly_at(e, ring, *line)).collect())
                    .collect::<Result<_>>()?;
                if rows.len() != 2 || rows.iter().any(|r| r.len() != 3) {
                    return Err(err(*line, "minors2 needs a 2x3 matrix: `a, b, c; d, e, f`"));
                }
                let m = [0, 1].map(|r| [0, 1, 2].map(|c| rows[r][c].clone()));
                gens.extend(minors2(&m).map_err(|e| err(*line, e.to_string()))?);
            }
            other => return Err(err(*line, format!("unknown ideal key {other:?}"))),
        }
    }
    Ideal::new(ring, gens)
}

fn parse_elem(s: &Section, ring: &Arc<RingSpec>) -> Result<Polynomial> {
    match s.entries.as_slice() {
        [(line, key, value)] if key == "poly" => poly_at(value, ring, *line),
        _ => Err(err(s.line, "an element section holds exactly one `poly = ...` entry")),
    }
}

pub fn parse_input(text: &str) -> Result<InputFile> {
    let secs = sections(text)?;
    let mut rings = secs.iter().filter(|s| s.kind == "ring");
    let ring_sec = rings.next().ok_or_else(|| err(1, "missing [ring] section"))?;
    if let Some(dup) = rings.next() {
        return Err(err(dup.line, "more than one [ring] section"));
    }
    let ring = parse_ring(ring_sec)?;
    let mut ideals = BTreeMap::new();
    let mut elems = BTreeMap::new();
    for s in &secs {
        let Some(name) = &s.name else { continue };
        if ideals.contains_key(name) || elems.contains_key(name) {
            return Err(err(s.line, format!("name {name:?} defined twice")));
        }
        if s.kind == "ideal" {
            ideals.insert(name.clone(), parse_ideal(s, &ring)?);
        } else {
            elems.insert(name.clone(), parse_elem(s, &ring)?);
        }
    }
    Ok(InputFile { ring, ideals, elems })
}

impl InputFile {
    pub fn ideal(&self, name: &str) -> Result<Ideal> {
        match self.ideals.get(name) {
            Some(i) => Ok(i.clone()),
            None if name == "m" => Ok(Ideal::maximal(&self.ring)),
            None => Err(Error::InvalidArgument(format!("no ideal named {name:?}"))),
        }
    }

    /// The named ideal, or the only one in the file.
    pub fn main_ideal(&self, name: Option<&str>) -> Result<(String, Ideal)> {
        match name {
            Some(n) => Ok((n.to_string(), self.ideal(n)?)),
            None if self.ideals.len() == 1 => {
                let (n, i) = self.ideals.iter().next().expect("one ideal");
                Ok((n.clone(), i.clone()))
            }
            None => Err(Error::InvalidArgument(
                "several ideals in the file: pick one with --ideal".into(),
            )),
        }
    }

    pub fn elem(&self, name: &str) -> Result<Polynomial> {
        self.elems
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no element named {name:?}")))
    }

    /// Canonical text of the ring and every named object, generators sorted.
    pub fn canonical(&self) -> String {
        let mut out = format!(
            "ring p={} vars={} order={}\n",
            self.ring.characteristic(),
            self.ring.vars().join(","),
            self.ring.order().name()
        );
        for (name, ideal) in &self.ideals {
            let mut gens: Vec<String> = ideal.gens().iter().map(Polynomial::render).collect();
            gens.sort();
            gens.dedup();
            out.push_str(&format!("ideal {name} = {}\n", gens.join(", ")));
        }
        for (name, e) in &self.elems {
            out.push_str(&format!("elem {name} = {}\n", e.render()));
        }
        out
    }
}
