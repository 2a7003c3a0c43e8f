//! The ring file format.
//!
//! ```text
//! # comments run to the end of the line
//! field: GF(32003)          # or QQ; defaults to GF(32003)
//! vars: x, y
//! relations:
//!   x*y
//!   x^4 - y^2
//! module M: quotient x, y^2
//! module N: matrix
//!   x, y
//!   0, x^2
//! ```
//!
//! `inverse_system: X^3 + Y^2` (dual variables are the upper-case variable
//! names) replaces the `relations:` block. Items of a block are separated by
//! commas or by indented continuation lines. Matrix rows are continuation
//! lines or `;`-separated; each column is one relation.

use std::fmt;

use crate::algebra::{build_algebra, dual_names, from_inverse_system, parse_poly_at, LocalAlgebra, Poly, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldDescriptor, PrimeField, DEFAULT_PRIME};
use crate::resolution::PresentedModule;

/// Defining data of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingBody {
    Relations(Vec<String>),
    InverseSystem(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `A/(gens)`.
    Quotient(Vec<String>),
    /// Rows of the presentation matrix; columns are relations.
    Matrix(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub spec: ModuleSpec,
}

/// A parsed ring file. Polynomials are stored in normalized printed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingFile {
    pub field: FieldDescriptor,
    pub vars: Vec<String>,
    pub body: RingBody,
    pub modules: Vec<NamedModule>,
}

/// Runs `$body` with `$f` bound to the concrete field named by a descriptor.
#[macro_export]
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc {
            $crate::linalg::FieldDescriptor::Prime(p) => {
                let $f = $crate::linalg::PrimeField::new(p)?;
                $body
            }
            $crate::linalg::FieldDescriptor::Rationals => {
                let $f = $crate::linalg::Rationals;
                $body
            }
        }
    };
}

/// A piece of text with its 1-based position in the file.
#[derive(Clone, Debug)]
struct Item {
    text: String,
    line: usize,
    column: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits on `sep`, trimming, with positions.
fn split_items(text: &str, sep: char, line: usize, column: usize) -> Vec<Item> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(sep) {
        let lead = piece.len() - piece.trim_start().len();
        let col = column + text[..start + lead].chars().count();
        let t = piece.trim();
        if !t.is_empty() {
            out.push(Item {
                text: t.to_string(),
                line,
                column: col,
            });
        }
        start += piece.len() + sep.len_utf8();
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Block {
    None,
    Relations,
    Inverse,
    Quotient,
    Matrix,
}

struct RawModule {
    name: String,
    line: usize,
    matrix: bool,
    items: Vec<Item>,
    rows: Vec<Vec<Item>>,
}

fn parse_field(item: &Item) -> Result<FieldDescriptor> {
    let t = item.text.replace(' ', "");
    if t == "QQ" {
        return Ok(FieldDescriptor::Rationals);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|n| n.parse::<u32>().ok())
        .ok_or_else(|| perr(item.line, item.column, format!("expected GF(p) or QQ, found '{}'", item.text)))?;
    PrimeField::new(p).map_err(|e| perr(item.line, item.column, e.to_string()))?;
    Ok(FieldDescriptor::Prime(p))
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|h| h.is_ascii_alphabetic() || h == '_') && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

/// Parses and normalizes a ring file.
pub fn parse_ring_file(text: &str) -> Result<RingFile> {
    let mut field: Option<FieldDescriptor> = None;
    let mut vars: Option<(Vec<String>, usize)> = None;
    let mut relations: Option<(Vec<Item>, usize)> = None;
    let mut inverse: Option<(Vec<Item>, usize)> = None;
    let mut modules: Vec<RawModule> = Vec::new();
    let mut block = Block::None;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with(' ') || content.starts_with('\t');
        if indented && block != Block::None {
            let lead = content.len() - content.trim_start().len();
            let col = lead + 1;
            let body = content.trim_start();
            match block {
                Block::Relations => relations.as_mut().expect("open").0.extend(split_items(body, ',', line, col)),
                Block::Inverse => inverse.as_mut().expect("open").0.push(Item {
                    text: body.trim_end().to_string(),
                    line,
                    column: col,
                }),
                Block::Quotient => modules.last_mut().expect("open").items.extend(split_items(body, ',', line, col)),
                Block::Matrix => {
                    let m = modules.last_mut().expect("open");
                    for row in split_items(body, ';', line, col) {
                        m.rows.push(split_items(&row.text, ',', row.line, row.column));
                    }
                }
                Block::None => unreachable!(),
            }
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            return Err(perr(line, 1, format!("expected 'key: value', found '{}'", content.trim())));
        };
        let key_trim = key.trim();
        let value_col = key.chars().count() + 2;
        let value = Item {
            text: rest.trim().to_string(),
            line,
            column: value_col + (rest.len() - rest.trim_start().len()),
        };
        block = Block::None;
        match key_trim {
            "field" => {
                if field.is_some() {
                    return Err(perr(line, 1, "duplicate field line"));
                }
                field = Some(parse_field(&value)?);
            }
            "vars" => {
                if vars.is_some() {
                    return Err(perr(line, 1, "duplicate vars line"));
                }
                let mut names = Vec::new();
                for it in split_items(rest, ',', line, value_col) {
                    if !is_identifier(&it.text) {
                        return Err(perr(it.line, it.column, format!("invalid variable name '{}'", it.text)));
                    }
                    if names.contains(&it.text) {
                        return Err(perr(it.line, it.column, format!("duplicate variable '{}'", it.text)));
                    }
                    names.push(it.text);
                }
                if names.is_empty() {
                    return Err(perr(line, value_col, "no variables"));
                }
                vars = Some((names, line));
            }
            "relations" => {
                if relations.is_some() {
                    return Err(perr(line, 1, "duplicate relations block"));
                }
                relations = Some((split_items(rest, ',', line, value_col), line));
                block = Block::Relations;
            }
            "inverse_system" => {
                if inverse.is_some() {
                    return Err(perr(line, 1, "duplicate inverse_system"));
                }
                let items = if value.text.is_empty() { Vec::new() } else { vec![value] };
                inverse = Some((items, line));
                block = Block::Inverse;
            }
            k if k.starts_with("module") => {
                let name = k["module".len()..].trim();
                if !is_identifier(name) || !k["module".len()..].starts_with(char::is_whitespace) {
                    return Err(perr(line, 1, format!("expected 'module <name>:', found '{k}:'")));
                }
                if modules.iter().any(|m| m.name == name) {
                    return Err(perr(line, 1, format!("duplicate module '{name}'")));
                }
                let (kind, args) = match value.text.find(char::is_whitespace) {
                    Some(i) => value.text.split_at(i),
                    None => (value.text.as_str(), ""),
                };
                let args_col = value.column + kind.chars().count() + (args.len() - args.trim_start().len());
                let args = args.trim();
                let mut m = RawModule {
                    name: name.to_string(),
                    line,
                    matrix: false,
                    items: Vec::new(),
                    rows: Vec::new(),
                };
                match kind {
                    "quotient" => {
                        m.items = split_items(args, ',', line, args_col);
                        block = Block::Quotient;
                    }
                    "matrix" => {
                        m.matrix = true;
                        let inline = args.trim_start_matches('[').trim_end_matches(']');
                        for row in split_items(inline, ';', line, args_col) {
                            m.rows.push(split_items(&row.text, ',', row.line, row.column));
                        }
                        block = Block::Matrix;
                    }
                    _ => {
                        return Err(perr(
                            line,
                            value.column,
                            format!("expected 'quotient' or 'matrix', found '{kind}'"),
                        ))
                    }
                }
                modules.push(m);
            }
            other => return Err(perr(line, 1, format!("unknown key '{other}'"))),
        }
    }

    let field = field.unwrap_or(FieldDescriptor::Prime(DEFAULT_PRIME));
    let (vars, vars_line) = vars.ok_or_else(|| perr(1, 1, "missing 'vars:' line"))?;
    for (what, l) in [
        ("relations", relations.as_ref().map(|r| r.1)),
        ("inverse_system", inverse.as_ref().map(|r| r.1)),
    ] {
        if let Some(l) = l.filter(|&l| l < vars_line) {
            return Err(perr(l, 1, format!("{what} before the 'vars:' line")));
        }
    }
    if let Some(m) = modules.iter().find(|m| m.line < vars_line) {
        return Err(perr(m.line, 1, "module before the 'vars:' line"));
    }
    with_field!(field, f => normalize(&f, field, vars, relations, inverse, modules))
}

fn normalize<F: Field>(
    f: &F,
    field: FieldDescriptor,
    vars: Vec<String>,
    relations: Option<(Vec<Item>, usize)>,
    inverse: Option<(Vec<Item>, usize)>,
    modules: Vec<RawModule>,
) -> Result<RingFile> {
    let poly = |it: &Item, dual: bool| -> Result<Poly<F>> { parse_poly_at(f, &vars, &it.text, it.line, it.column, dual) };
    let body = match (relations, inverse) {
        (Some(_), Some((_, l))) => {
            return Err(perr(l, 1, "both relations and inverse_system given"));
        }
        (None, None) => return Err(perr(1, 1, "missing 'relations:' or 'inverse_system:'")),
        (Some((items, _)), None) => {
            let mut out = Vec::with_capacity(items.len());
            for it in &items {
                out.push(poly(it, false)?.format(f, &vars));
            }
            RingBody::Relations(out)
        }
        (None, Some((items, l))) => {
            if items.is_empty() {
                return Err(perr(l, 1, "empty inverse_system"));
            }
            let mut sum = Poly::zero(vars.len());
            for it in &items {
                let text = it.text.strip_prefix('+').unwrap_or(&it.text);
                let shift = it.text.len() - text.len();
                sum = sum.add(f, &parse_poly_at(f, &vars, text, it.line, it.column + shift, true)?);
            }
            if sum.is_zero() {
                return Err(perr(l, 1, "inverse_system polynomial is zero"));
            }
            RingBody::InverseSystem(sum.format(f, &dual_names(&vars)))
        }
    };
    let mut named = Vec::with_capacity(modules.len());
    for m in modules {
        let spec = if m.matrix {
            if m.rows.is_empty() {
                return Err(perr(m.line, 1, format!("module '{}' has an empty matrix", m.name)));
            }
            let width = m.rows[0].len();
            let mut rows = Vec::new();
            for row in &m.rows {
                if row.len() != width {
                    let at = row.first().map_or((m.line, 1), |i| (i.line, i.column));
                    return Err(perr(
                        at.0,
                        at.1,
                        format!("matrix row has {} entries, expected {width}", row.len()),
                    ));
                }
                rows.push(row.iter().map(|it| Ok(poly(it, false)?.format(f, &vars))).collect::<Result<Vec<_>>>()?);
            }
            ModuleSpec::Matrix(rows)
        } else {
            ModuleSpec::Quotient(
                m.items
                    .iter()
                    .map(|it| Ok(poly(it, false)?.format(f, &vars)))
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        named.push(NamedModule { name: m.name, spec });
    }
    Ok(RingFile {
        field,
        vars,
        body,
        modules: named,
    })
}

/// Value of a polynomial in the variables at the algebra generators.
pub fn evaluate<F: Field>(a: &LocalAlgebra<F>, p: &Poly<F>) -> Vec<F::Elem> {
    let gens = a.generators();
    let mut out = a.zero();
    for (m, c) in p.sorted_terms() {
        let mut v = a.one();
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                v = a.mul(&v, &a.pow(&gens[i], e));
            }
        }
        out = a.add(&out, &a.scale(c, &v));
    }
    out
}

impl RingFile {
    /// The relations as a [`Presentation`], if the file gives relations.
    pub fn presentation<F: Field>(&self, f: &F) -> Result<Option<Presentation<F>>> {
        self.check_field(f)?;
        match &self.body {
            RingBody::Relations(rels) => {
                let polys = rels
                    .iter()
                    .map(|r| parse_poly_at(f, &self.vars, r, 1, 1, false))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some(Presentation::new(f, self.vars.clone(), polys)))
            }
            RingBody::InverseSystem(_) => Ok(None),
        }
    }

    fn check_field<F: Field>(&self, f: &F) -> Result<()> {
        if f.descriptor() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), f.descriptor().to_string()));
        }
        Ok(())
    }

    pub fn algebra<F: Field>(&self, f: &F) -> Result<LocalAlgebra<F>> {
        self.check_field(f)?;
        match &self.body {
            RingBody::Relations(_) => build_algebra(&self.presentation(f)?.expect("relations")),
            RingBody::InverseSystem(text) => {
                let dual = parse_poly_at(f, &self.vars, text, 1, 1, true)?;
                from_inverse_system(f, &self.vars, &dual)
            }
        }
    }

    pub fn module_names(&self) -> Vec<&str> {
        self.modules.iter().map(|m| m.name.as_str()).collect()
    }

    /// The named module; `k` names the residue field unless the file
    /// defines a module of that name.
    pub fn module<F: Field>(&self, a: &LocalAlgebra<F>, name: &str) -> Result<PresentedModule<F>> {
        let f = a.field();
        let Some(m) = self.modules.iter().find(|m| m.name == name) else {
            if name == "k" {
                return Ok(PresentedModule::residue_field(a));
            }
            return Err(Error::Precondition(format!("no module named '{name}'")));
        };
        let eval = |t: &str| -> Result<Vec<F::Elem>> { Ok(evaluate(a, &parse_poly_at(f, &self.vars, t, 1, 1, false)?)) };
        match &m.spec {
            ModuleSpec::Quotient(gens) => {
                let g = gens.iter().map(|t| eval(t)).collect::<Result<Vec<_>>>()?;
                Ok(PresentedModule::cyclic(a, &g))
            }
            ModuleSpec::Matrix(rows) => {
                let rank = rows.len();
                let width = rows[0].len();
                let mut cols = vec![Vec::with_capacity(rank); width];
                for row in rows {
                    for (j, t) in row.iter().enumerate() {
                        cols[j].push(eval(t)?);
                    }
                }
                PresentedModule::new(a, rank, cols)
            }
        }
    }

    /// A ring file with a minimal presentation of `a`.
    pub fn from_algebra<F: Field>(a: &LocalAlgebra<F>) -> RingFile {
        let p = a.minimal_presentation();
        let f = a.field();
        let mut relations: Vec<String> = p.relations.iter().map(|r| r.format(f, &p.vars)).collect();
        if p.vars.is_empty() {
            relations.clear();
        }
        RingFile {
            field: a.descriptor(),
            vars: p.vars,
            body: RingBody::Relations(relations),
            modules: Vec::new(),
        }
    }
}

impl fmt::Display for RingFile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "field: {}", self.field)?;
        writeln!(out, "vars: {}", self.vars.join(", "))?;
        match &self.body {
            RingBody::Relations(rels) => {
                writeln!(out, "relations:")?;
                for r in rels {
                    writeln!(out, "  {r}")?;
                }
            }
            RingBody::InverseSystem(f) => writeln!(out, "inverse_system: {f}")?,
        }
        for m in &self.modules {
            match &m.spec {
                ModuleSpec::Quotient(gens) => writeln!(out, "module {}: quotient {}", m.name, gens.join(", "))?,
                ModuleSpec::Matrix(rows) => {
                    writeln!(out, "module {}: matrix", m.name)?;
                    for row in rows {
                        writeln!(out, "  {}", row.join(", "))?;
                    }
                }
            }
        }
        Ok(())
    }
}
