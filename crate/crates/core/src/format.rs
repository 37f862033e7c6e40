//! Line-oriented textual documents for every structure the tool handles,
//! with a canonical serializer.
//!
//! A document is a header line `<kind> <name>`, any number of full-line
//! `#` comments, and content rows. All tables are written out in full —
//! omitted rows are an error, never a default — and the serializer emits
//! rows in structural order, so serializing the same structure twice gives
//! identical bytes and canonical files round-trip byte-identically.
//!
//! Element tokens mirror how elements print: atoms are runs of plain
//! characters, a pair is `(a,b)`, a tagged element is `3#e`, a subset
//! element is `[e]`. Whitespace and `( ) [ ] # , : * = { }` never occur
//! inside atoms.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::enriched::EnrichedCat;
use crate::finset::{product, pullback, Element, FinMap, FinObj};
use crate::internal::{idem_object, InternalCat, SplitData};
use crate::plaincat::{arrow_tokens, Arrow, FinCat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("line {line}: duplicate label {label}")]
    DuplicateLabel { line: usize, label: String },
    #[error("the rows do not assemble: {0}")]
    Assemble(String),
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse {
        line,
        col,
        msg: msg.into(),
    })
}

/// A named family of finite sets and maps between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFamilyDoc {
    pub sets: Vec<(String, FinObj)>,
    pub maps: Vec<(String, FinMap)>,
}

/// An internal category together with the optional split rows of the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalDoc {
    pub cat: InternalCat,
    pub split: Option<SplitData>,
}

// Documents are built a handful of times per run; boxing the payloads
// would only obscure the matches below.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    MapFamily(MapFamilyDoc),
    Plain(FinCat),
    Enriched(EnrichedCat),
    Internal(InternalDoc),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::MapFamily(_) => "finset-map-family",
            Payload::Plain(_) => "plain-category",
            Payload::Enriched(_) => "enriched-category",
            Payload::Internal(_) => "internal-category",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    /// Full-line comments, kept verbatim (including the leading `#`).
    pub comments: Vec<String>,
    pub payload: Payload,
}

// ---------------------------------------------------------------------
// Element tokens
// ---------------------------------------------------------------------

const ATOM_FORBIDDEN: &[char] = &['(', ')', '[', ']', '#', ',', ':', '*', '=', '{', '}'];

fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && !ATOM_FORBIDDEN.contains(&c)
}

/// Parse one element token completely; `col` is where the token starts on
/// its line, used for error positions.
pub fn parse_element(tok: &str, line: usize, col: usize) -> Result<Element, FormatError> {
    let (e, rest) = parse_element_prefix(tok, line, col)?;
    if !rest.is_empty() {
        return perr(
            line,
            col + tok.len() - rest.len(),
            format!("trailing characters {rest:?} after element"),
        );
    }
    Ok(e)
}

fn parse_element_prefix(s: &str, line: usize, col: usize) -> Result<(Element, &str), FormatError> {
    let here = |rest: &str| col + s.len() - rest.len();
    if let Some(rest) = s.strip_prefix('(') {
        let (a, rest) = parse_element_prefix(rest, line, here(rest))?;
        let rest = match rest.strip_prefix(',') {
            Some(r) => r,
            None => return perr(line, here(rest), "expected , inside pair"),
        };
        let (b, rest) = parse_element_prefix(rest, line, here(rest))?;
        match rest.strip_prefix(')') {
            Some(r) => Ok((Element::pair(a, b), r)),
            None => perr(line, here(rest), "expected ) closing pair"),
        }
    } else if let Some(rest) = s.strip_prefix('[') {
        let (e, rest) = parse_element_prefix(rest, line, here(rest))?;
        match rest.strip_prefix(']') {
            Some(r) => Ok((Element::sub(e), r)),
            None => perr(line, here(rest), "expected ] closing subset element"),
        }
    } else {
        let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
        if !digits.is_empty() && s[digits.len()..].starts_with('#') {
            let idx: usize = digits.parse().map_err(|_| FormatError::Parse {
                line,
                col,
                msg: format!("tag index {digits} is out of range"),
            })?;
            let rest = &s[digits.len() + 1..];
            let (e, rest) = parse_element_prefix(rest, line, here(rest))?;
            Ok((Element::tag(idx, e), rest))
        } else {
            let end = s.find(|c| !is_atom_char(c)).unwrap_or(s.len());
            if end == 0 {
                return perr(line, col, format!("expected an element, found {s:?}"));
            }
            Ok((Element::atom(&s[..end]), &s[end..]))
        }
    }
}

// ---------------------------------------------------------------------
// Line model
// ---------------------------------------------------------------------

struct Row<'s> {
    line: usize,
    words: Vec<(usize, &'s str)>,
}

impl<'s> Row<'s> {
    fn word(&self, i: usize) -> Option<&'s str> {
        self.words.get(i).map(|&(_, w)| w)
    }

    fn col(&self, i: usize) -> usize {
        self.words.get(i).map(|&(c, _)| c + 1).unwrap_or(1)
    }

    fn expect(&self, i: usize, what: &str) -> Result<&'s str, FormatError> {
        self.word(i).ok_or_else(|| FormatError::Parse {
            line: self.line,
            col: self.col(self.words.len().saturating_sub(1)),
            msg: format!("expected {what}"),
        })
    }

    fn expect_literal(&self, i: usize, lit: &str) -> Result<(), FormatError> {
        let w = self.expect(i, &format!("{lit:?}"))?;
        if w != lit {
            return perr(
                self.line,
                self.col(i),
                format!("expected {lit:?}, found {w:?}"),
            );
        }
        Ok(())
    }

    fn no_more(&self, i: usize) -> Result<(), FormatError> {
        if let Some(w) = self.word(i) {
            return perr(self.line, self.col(i), format!("unexpected trailing {w:?}"));
        }
        Ok(())
    }

    fn element(&self, i: usize, what: &str) -> Result<Element, FormatError> {
        let w = self.expect(i, what)?;
        parse_element(w, self.line, self.col(i))
    }

    fn elements_from(&self, i: usize) -> Result<Vec<Element>, FormatError> {
        (i..self.words.len())
            .map(|k| self.element(k, "an element"))
            .collect()
    }
}

fn split_words(line: &str, number: usize) -> Row<'_> {
    let mut words = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                words.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        words.push((s, &line[s..]));
    }
    Row {
        line: number,
        words,
    }
}

// ---------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let mut comments = Vec::new();
    let mut header: Option<(String, String)> = None;
    let mut rows: Vec<Row<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            comments.push(trimmed.to_string());
            continue;
        }
        if header.is_none() {
            let row = split_words(raw, number);
            let kind = row.expect(0, "a document kind")?.to_string();
            row.expect(1, "a document name")?;
            let name_start = row.col(1) - 1;
            header = Some((kind, raw[name_start..].trim().to_string()));
            continue;
        }
        rows.push(split_words(raw, number));
    }
    let (kind, name) = match header {
        Some(h) => h,
        None => return perr(1, 1, "empty document: expected a header line"),
    };
    let payload = match kind.as_str() {
        "finset-map-family" => Payload::MapFamily(parse_map_family(&rows)?),
        "plain-category" => Payload::Plain(parse_plain(&rows)?),
        "enriched-category" => Payload::Enriched(parse_enriched(&rows)?),
        "internal-category" => Payload::Internal(parse_internal(&rows)?),
        other => {
            return perr(
                rows.first().map(|r| r.line).unwrap_or(1),
                1,
                format!("unknown document kind {other:?}"),
            )
        }
    };
    Ok(Document {
        name,
        comments,
        payload,
    })
}

fn parse_map_family(rows: &[Row<'_>]) -> Result<MapFamilyDoc, FormatError> {
    let mut sets: Vec<(String, FinObj)> = Vec::new();
    let mut maps: Vec<(String, String, String, usize)> = Vec::new();
    let mut map_rows: HashMap<String, Vec<(Element, Element, usize)>> = HashMap::new();
    for row in rows {
        match row.expect(0, "set, map, or row")? {
            "set" => {
                let name = row.expect(1, "a set name")?.to_string();
                row.expect_literal(2, ":")?;
                if sets.iter().any(|(n, _)| n == &name) {
                    return Err(FormatError::DuplicateLabel {
                        line: row.line,
                        label: name,
                    });
                }
                let elems = row.elements_from(3)?;
                let obj = FinObj::new(elems).map_err(|e| FormatError::Parse {
                    line: row.line,
                    col: row.col(3),
                    msg: e.to_string(),
                })?;
                sets.push((name, obj));
            }
            "map" => {
                let name = row.expect(1, "a map name")?.to_string();
                row.expect_literal(2, ":")?;
                let dom = row.expect(3, "a set name")?.to_string();
                row.expect_literal(4, "->")?;
                let cod = row.expect(5, "a set name")?.to_string();
                row.no_more(6)?;
                if maps.iter().any(|(n, _, _, _)| n == &name) {
                    return Err(FormatError::DuplicateLabel {
                        line: row.line,
                        label: name,
                    });
                }
                maps.push((name, dom, cod, row.line));
            }
            "row" => {
                let name = row.expect(1, "a map name")?.to_string();
                row.expect_literal(2, ":")?;
                let x = row.element(3, "a domain element")?;
                row.expect_literal(4, "->")?;
                let y = row.element(5, "an image element")?;
                row.no_more(6)?;
                map_rows.entry(name).or_default().push((x, y, row.line));
            }
            other => {
                return perr(
                    row.line,
                    row.col(0),
                    format!("unexpected keyword {other:?}"),
                )
            }
        }
    }
    let set_of = |name: &str, line: usize| -> Result<FinObj, FormatError> {
        sets.iter()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o.clone())
            .ok_or_else(|| FormatError::Parse {
                line,
                col: 1,
                msg: format!("unknown set {name:?}"),
            })
    };
    let mut built = Vec::with_capacity(maps.len());
    for (name, dom_name, cod_name, line) in &maps {
        let dom = set_of(dom_name, *line)?;
        let cod = set_of(cod_name, *line)?;
        let rows_for = map_rows.remove(name).unwrap_or_default();
        let map = assemble_map(name, &dom, &cod, &rows_for)?;
        built.push((name.clone(), map));
    }
    if let Some(name) = map_rows.keys().next() {
        return Err(FormatError::Assemble(format!(
            "rows for undeclared map {name:?}"
        )));
    }
    Ok(MapFamilyDoc { sets, maps: built })
}

/// Build a total map from keyed rows: every domain element must appear
/// exactly once and every image must land in the codomain.
fn assemble_map(
    name: &str,
    dom: &FinObj,
    cod: &FinObj,
    rows: &[(Element, Element, usize)],
) -> Result<FinMap, FormatError> {
    let mut images: Vec<Option<&Element>> = vec![None; dom.len()];
    for (x, y, line) in rows {
        let i = match dom.elems().iter().position(|e| e == x) {
            Some(i) => i,
            None => {
                return perr(*line, 1, format!("{x} is not in the domain of {name}"));
            }
        };
        if images[i].is_some() {
            return perr(*line, 1, format!("second row for {x} in {name}"));
        }
        if !cod.contains(y) {
            return perr(*line, 1, format!("{y} is not in the codomain of {name}"));
        }
        images[i] = Some(y);
    }
    let mut table = Vec::with_capacity(dom.len());
    for (i, img) in images.into_iter().enumerate() {
        match img {
            Some(y) => table.push(y.clone()),
            None => {
                return Err(FormatError::Assemble(format!(
                    "{name} has no row for {}",
                    dom.elems()[i]
                )))
            }
        }
    }
    FinMap::new(dom.clone(), cod.clone(), table).map_err(|e| FormatError::Assemble(e.to_string()))
}

fn parse_plain(rows: &[Row<'_>]) -> Result<FinCat, FormatError> {
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String, usize)> = Vec::new();
    let mut idents: Vec<(String, String, usize)> = Vec::new();
    let mut comps: Vec<(String, String, String, usize)> = Vec::new();
    for row in rows {
        match row.expect(0, "object, arrow, ident, or comp")? {
            "object" => {
                let name = row.expect(1, "an object label")?.to_string();
                row.no_more(2)?;
                if objects.contains(&name) {
                    return Err(FormatError::DuplicateLabel {
                        line: row.line,
                        label: name,
                    });
                }
                objects.push(name);
            }
            "arrow" => {
                let name = row.expect(1, "an arrow label")?.to_string();
                row.expect_literal(2, ":")?;
                let dom = row.expect(3, "an object label")?.to_string();
                row.expect_literal(4, "->")?;
                let cod = row.expect(5, "an object label")?.to_string();
                row.no_more(6)?;
                if arrows.iter().any(|(n, _, _, _)| n == &name) {
                    return Err(FormatError::DuplicateLabel {
                        line: row.line,
                        label: name,
                    });
                }
                arrows.push((name, dom, cod, row.line));
            }
            "ident" => {
                let obj = row.expect(1, "an object label")?.to_string();
                row.expect_literal(2, "=")?;
                let arrow = row.expect(3, "an arrow label")?.to_string();
                row.no_more(4)?;
                idents.push((obj, arrow, row.line));
            }
            "comp" => {
                let g = row.expect(1, "an arrow label")?.to_string();
                row.expect_literal(2, "*")?;
                let f = row.expect(3, "an arrow label")?.to_string();
                row.expect_literal(4, "=")?;
                let h = row.expect(5, "an arrow label")?.to_string();
                row.no_more(6)?;
                comps.push((g, f, h, row.line));
            }
            other => {
                return perr(
                    row.line,
                    row.col(0),
                    format!("unexpected keyword {other:?}"),
                )
            }
        }
    }
    let object_index = |name: &str, line: usize| -> Result<usize, FormatError> {
        objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| FormatError::Parse {
                line,
                col: 1,
                msg: format!("unknown object {name:?}"),
            })
    };
    let arrow_index = |name: &str, line: usize| -> Result<usize, FormatError> {
        arrows
            .iter()
            .position(|(n, _, _, _)| n == name)
            .ok_or_else(|| FormatError::Parse {
                line,
                col: 1,
                msg: format!("unknown arrow {name:?}"),
            })
    };
    let mut arrow_list = Vec::with_capacity(arrows.len());
    for (name, dom, cod, line) in &arrows {
        arrow_list.push(Arrow {
            label: name.clone(),
            dom: object_index(dom, *line)?,
            cod: object_index(cod, *line)?,
        });
    }
    let mut ident_list = vec![None; objects.len()];
    for (obj, arrow, line) in &idents {
        let o = object_index(obj, *line)?;
        if ident_list[o].is_some() {
            return perr(*line, 1, format!("second identity for {obj}"));
        }
        ident_list[o] = Some(arrow_index(arrow, *line)?);
    }
    let mut comp_table = HashMap::new();
    for (g, f, h, line) in &comps {
        let key = (arrow_index(g, *line)?, arrow_index(f, *line)?);
        if comp_table.insert(key, arrow_index(h, *line)?).is_some() {
            return perr(*line, 1, format!("second composite for {g} * {f}"));
        }
    }
    let idents_resolved: Vec<usize> = ident_list
        .into_iter()
        .enumerate()
        .map(|(o, i)| {
            i.ok_or_else(|| FormatError::Assemble(format!("no identity for {}", objects[o])))
        })
        .collect::<Result<_, _>>()?;
    FinCat::new(objects, arrow_list, &comp_table, idents_resolved)
        .map_err(|e| FormatError::Assemble(e.to_string()))
}

/// Composition rows of an enriched document, keyed by object triple
/// (a, b, c); each entry records (g, f, result, source line).
type EnrichedCompRows = HashMap<(String, String, String), Vec<(Element, Element, Element, usize)>>;

fn parse_enriched(rows: &[Row<'_>]) -> Result<EnrichedCat, FormatError> {
    let mut objects: Vec<String> = Vec::new();
    let mut homs: HashMap<(String, String), (FinObj, usize)> = HashMap::new();
    let mut comp_rows: EnrichedCompRows = HashMap::new();
    let mut idents: HashMap<String, (Element, usize)> = HashMap::new();
    for row in rows {
        match row.expect(0, "object, hom, comp, or ident")? {
            "object" => {
                let name = row.expect(1, "an object label")?.to_string();
                row.no_more(2)?;
                if objects.contains(&name) {
                    return Err(FormatError::DuplicateLabel {
                        line: row.line,
                        label: name,
                    });
                }
                objects.push(name);
            }
            "hom" => {
                let a = row.expect(1, "an object label")?.to_string();
                let b = row.expect(2, "an object label")?.to_string();
                row.expect_literal(3, ":")?;
                let elems = row.elements_from(4)?;
                let obj = FinObj::new(elems).map_err(|e| FormatError::Parse {
                    line: row.line,
                    col: row.col(4),
                    msg: e.to_string(),
                })?;
                if homs
                    .insert((a.clone(), b.clone()), (obj, row.line))
                    .is_some()
                {
                    return perr(row.line, 1, format!("second hom row for {a} {b}"));
                }
            }
            "comp" => {
                let a = row.expect(1, "an object label")?.to_string();
                let b = row.expect(2, "an object label")?.to_string();
                let c = row.expect(3, "an object label")?.to_string();
                row.expect_literal(4, ":")?;
                // `<g>*<f> = <k>`, tolerating spaces around the star.
                let mut tail = String::new();
                for k in 5..row.words.len() {
                    if !tail.is_empty() {
                        tail.push(' ');
                    }
                    tail.push_str(row.word(k).unwrap());
                }
                let (pair_part, k_part) = match tail.split_once('=') {
                    Some(x) => x,
                    None => return perr(row.line, row.col(5), "expected = in composition row"),
                };
                let (g_part, f_part) = match pair_part.split_once('*') {
                    Some(x) => x,
                    None => return perr(row.line, row.col(5), "expected * in composition row"),
                };
                let g = parse_element(g_part.trim(), row.line, row.col(5))?;
                let f = parse_element(f_part.trim(), row.line, row.col(5))?;
                let k = parse_element(k_part.trim(), row.line, row.col(5))?;
                comp_rows
                    .entry((a, b, c))
                    .or_default()
                    .push((g, f, k, row.line));
            }
            "ident" => {
                let a = row.expect(1, "an object label")?.to_string();
                row.expect_literal(2, "=")?;
                let e = row.element(3, "an identity element")?;
                row.no_more(4)?;
                if idents.insert(a.clone(), (e, row.line)).is_some() {
                    return perr(row.line, 1, format!("second identity for {a}"));
                }
            }
            other => {
                return perr(
                    row.line,
                    row.col(0),
                    format!("unexpected keyword {other:?}"),
                )
            }
        }
    }
    let n = objects.len();
    let mut hom_table = Vec::with_capacity(n);
    for a in &objects {
        let mut row_objs = Vec::with_capacity(n);
        for b in &objects {
            match homs.remove(&(a.clone(), b.clone())) {
                Some((obj, _)) => row_objs.push(obj),
                None => {
                    return Err(FormatError::Assemble(format!("no hom row for {a} {b}")));
                }
            }
        }
        hom_table.push(row_objs);
    }
    if let Some(((a, b), (_, line))) = homs.into_iter().next() {
        return perr(line, 1, format!("hom row for unknown objects {a} {b}"));
    }
    let mut comps = Vec::with_capacity(n);
    for (ai, a) in objects.iter().enumerate() {
        let mut plane = Vec::with_capacity(n);
        for (bi, b) in objects.iter().enumerate() {
            let mut row_maps = Vec::with_capacity(n);
            for (ci, c) in objects.iter().enumerate() {
                let (dom, _, _) = product(&hom_table[bi][ci], &hom_table[ai][bi]);
                let rows_for = comp_rows
                    .remove(&(a.clone(), b.clone(), c.clone()))
                    .unwrap_or_default();
                let keyed: Vec<(Element, Element, usize)> = rows_for
                    .into_iter()
                    .map(|(g, f, k, line)| (Element::pair(g, f), k, line))
                    .collect();
                let map = assemble_map(
                    &format!("comp {a} {b} {c}"),
                    &dom,
                    &hom_table[ai][ci],
                    &keyed,
                )?;
                row_maps.push(map);
            }
            plane.push(row_maps);
        }
        comps.push(plane);
    }
    if let Some(((a, b, c), rows_for)) = comp_rows.into_iter().next() {
        let line = rows_for.first().map(|r| r.3).unwrap_or(1);
        return perr(
            line,
            1,
            format!("composition row for unknown objects {a} {b} {c}"),
        );
    }
    let mut ident_list = Vec::with_capacity(n);
    for a in &objects {
        match idents.remove(a) {
            Some((e, _)) => ident_list.push(e),
            None => return Err(FormatError::Assemble(format!("no identity row for {a}"))),
        }
    }
    if let Some((a, (_, line))) = idents.into_iter().next() {
        return perr(line, 1, format!("identity row for unknown object {a}"));
    }
    EnrichedCat::new(objects, hom_table, comps, ident_list)
        .map_err(|e| FormatError::Assemble(e.to_string()))
}

fn parse_internal(rows: &[Row<'_>]) -> Result<InternalDoc, FormatError> {
    let mut a0: Option<(FinObj, usize)> = None;
    let mut a1: Option<(FinObj, usize)> = None;
    let mut map_rows: HashMap<&str, Vec<(Element, Element, usize)>> = HashMap::new();
    let mut split_rows: HashMap<&str, Vec<(Element, Element, usize)>> = HashMap::new();
    for row in rows {
        match row.expect(0, "set, map, or split")? {
            "set" => {
                let which = row.expect(1, "A0 or A1")?;
                row.expect_literal(2, ":")?;
                let elems = row.elements_from(3)?;
                let obj = FinObj::new(elems).map_err(|e| FormatError::Parse {
                    line: row.line,
                    col: row.col(3),
                    msg: e.to_string(),
                })?;
                let slot = match which {
                    "A0" => &mut a0,
                    "A1" => &mut a1,
                    other => {
                        return perr(
                            row.line,
                            row.col(1),
                            format!("expected A0 or A1, found {other:?}"),
                        )
                    }
                };
                if slot.is_some() {
                    return perr(row.line, 1, format!("second set row for {which}"));
                }
                *slot = Some((obj, row.line));
            }
            "map" => {
                let which = row.expect(1, "dom, cod, ident, or comp")?;
                let key = match which {
                    "dom" => "dom",
                    "cod" => "cod",
                    "ident" => "ident",
                    "comp" => "comp",
                    other => {
                        return perr(
                            row.line,
                            row.col(1),
                            format!("expected dom, cod, ident, or comp, found {other:?}"),
                        )
                    }
                };
                row.expect_literal(2, ":")?;
                let x = row.element(3, "a source element")?;
                row.expect_literal(4, "->")?;
                let y = row.element(5, "an image element")?;
                row.no_more(6)?;
                map_rows.entry(key).or_default().push((x, y, row.line));
            }
            "split" => {
                let which = row.expect(1, "R or S")?;
                let key = match which {
                    "R" => "R",
                    "S" => "S",
                    other => {
                        return perr(
                            row.line,
                            row.col(1),
                            format!("expected R or S, found {other:?}"),
                        )
                    }
                };
                row.expect_literal(2, ":")?;
                let x = row.element(3, "an idempotent arrow")?;
                row.expect_literal(4, "->")?;
                let y = row.element(5, "an image arrow")?;
                row.no_more(6)?;
                split_rows.entry(key).or_default().push((x, y, row.line));
            }
            other => {
                return perr(
                    row.line,
                    row.col(0),
                    format!("unexpected keyword {other:?}"),
                )
            }
        }
    }
    let a0 = match a0 {
        Some((o, _)) => o,
        None => return Err(FormatError::Assemble("no set A0 row".into())),
    };
    let a1 = match a1 {
        Some((o, _)) => o,
        None => return Err(FormatError::Assemble("no set A1 row".into())),
    };
    let take = |map_rows: &mut HashMap<&str, Vec<(Element, Element, usize)>>,
                key: &str|
     -> Vec<(Element, Element, usize)> { map_rows.remove(key).unwrap_or_default() };
    let dom = assemble_map("dom", &a1, &a0, &take(&mut map_rows, "dom"))?;
    let cod = assemble_map("cod", &a1, &a0, &take(&mut map_rows, "cod"))?;
    let ident = assemble_map("ident", &a0, &a1, &take(&mut map_rows, "ident"))?;
    let (a2, _, _) = pullback(&dom, &cod)
        .map_err(|e| FormatError::Assemble(format!("boundary maps do not pair: {e}")))?;
    let comp = assemble_map("comp", &a2, &a1, &take(&mut map_rows, "comp"))?;
    let cat = InternalCat::new(a0, a1, dom, cod, ident, comp)
        .map_err(|e| FormatError::Assemble(e.to_string()))?;
    let split = if split_rows.is_empty() {
        None
    } else {
        let (idem_obj, _) = idem_object(&cat);
        let wrap = |rows: Vec<(Element, Element, usize)>| -> Vec<(Element, Element, usize)> {
            rows.into_iter()
                .map(|(x, y, l)| (Element::sub(x), y, l))
                .collect()
        };
        let r_rows = wrap(split_rows.remove("R").unwrap_or_default());
        let s_rows = wrap(split_rows.remove("S").unwrap_or_default());
        let r = assemble_map("split R", &idem_obj, cat.a1(), &r_rows)?;
        let s = assemble_map("split S", &idem_obj, cat.a1(), &s_rows)?;
        let sp = SplitData::new(&cat, r, s).map_err(|e| FormatError::Assemble(e.to_string()))?;
        Some(sp)
    };
    Ok(InternalDoc { cat, split })
}

// ---------------------------------------------------------------------
// Serializing
// ---------------------------------------------------------------------

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", doc.payload.kind(), doc.name);
    for c in &doc.comments {
        let _ = writeln!(out, "{c}");
    }
    match &doc.payload {
        Payload::MapFamily(fam) => serialize_map_family(&mut out, fam),
        Payload::Plain(c) => serialize_plain(&mut out, c),
        Payload::Enriched(m) => serialize_enriched(&mut out, m),
        Payload::Internal(d) => serialize_internal(&mut out, d),
    }
    out
}

fn write_set(out: &mut String, prefix: &str, obj: &FinObj) {
    let _ = write!(out, "{prefix} :");
    for e in obj.elems() {
        let _ = write!(out, " {e}");
    }
    let _ = writeln!(out);
}

fn serialize_map_family(out: &mut String, fam: &MapFamilyDoc) {
    for (name, obj) in &fam.sets {
        write_set(out, &format!("set {name}"), obj);
    }
    for (name, map) in &fam.maps {
        let dom_name = fam
            .sets
            .iter()
            .find(|(_, o)| o == map.dom())
            .map(|(n, _)| n.as_str())
            .unwrap_or("?");
        let cod_name = fam
            .sets
            .iter()
            .find(|(_, o)| o == map.cod())
            .map(|(n, _)| n.as_str())
            .unwrap_or("?");
        let _ = writeln!(out, "map {name} : {dom_name} -> {cod_name}");
        for (x, y) in map.entries() {
            let _ = writeln!(out, "row {name} : {x} -> {y}");
        }
    }
}

fn serialize_plain(out: &mut String, c: &FinCat) {
    let tokens = arrow_tokens(c);
    for o in c.objects() {
        let _ = writeln!(out, "object {o}");
    }
    for (i, a) in c.arrows().iter().enumerate() {
        let _ = writeln!(
            out,
            "arrow {} : {} -> {}",
            tokens[i],
            c.objects()[a.dom],
            c.objects()[a.cod]
        );
    }
    for o in 0..c.n_objects() {
        let _ = writeln!(out, "ident {} = {}", c.objects()[o], tokens[c.ident(o)]);
    }
    for g in 0..c.n_arrows() {
        for f in 0..c.n_arrows() {
            if let Some(h) = c.compose(g, f) {
                let _ = writeln!(out, "comp {} * {} = {}", tokens[g], tokens[f], tokens[h]);
            }
        }
    }
}

fn serialize_enriched(out: &mut String, m: &EnrichedCat) {
    let n = m.n_objects();
    for o in m.objects() {
        let _ = writeln!(out, "object {o}");
    }
    for a in 0..n {
        for b in 0..n {
            write_set(
                out,
                &format!("hom {} {}", m.objects()[a], m.objects()[b]),
                m.hom(a, b),
            );
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for g in m.hom(b, c).elems() {
                    for f in m.hom(a, b).elems() {
                        let k = m.compose_elems(a, b, c, g, f);
                        let _ = writeln!(
                            out,
                            "comp {} {} {} : {g}*{f} = {k}",
                            m.objects()[a],
                            m.objects()[b],
                            m.objects()[c]
                        );
                    }
                }
            }
        }
    }
    for a in 0..n {
        let _ = writeln!(out, "ident {} = {}", m.objects()[a], m.ident(a));
    }
}

fn serialize_internal(out: &mut String, d: &InternalDoc) {
    let cat = &d.cat;
    write_set(out, "set A0", cat.a0());
    write_set(out, "set A1", cat.a1());
    for u in cat.a1().elems() {
        let _ = writeln!(out, "map dom : {u} -> {}", cat.dom_of(u));
    }
    for u in cat.a1().elems() {
        let _ = writeln!(out, "map cod : {u} -> {}", cat.cod_of(u));
    }
    for x in cat.a0().elems() {
        let _ = writeln!(out, "map ident : {x} -> {}", cat.ident_of(x));
    }
    for p in cat.a2().elems() {
        let _ = writeln!(out, "map comp : {p} -> {}", cat.comp_map().apply(p));
    }
    if let Some(sp) = &d.split {
        for su in sp.idem_obj().elems() {
            let u = su.expect_sub();
            let _ = writeln!(out, "split R : {u} -> {}", sp.retraction().apply(su));
        }
        for su in sp.idem_obj().elems() {
            let u = su.expect_sub();
            let _ = writeln!(out, "split S : {u} -> {}", sp.section().apply(su));
        }
    }
}
