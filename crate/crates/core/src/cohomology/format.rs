//! Plain-text space description files.
//!
//! ```text
//! # comment
//! space P2
//! dim 2
//! basis 1 0 0
//! basis H 1 1
//! basis H^2 2 2
//! point 2
//! chern 0=1 1=3 2=3
//! mult 1 1 -> 2=1
//! ```
//!
//! Basis lines are `basis <name> <p> <q>` in index order. `mult i j -> ...`
//! gives `e_i . e_j` as `index=coefficient` pairs; absent products are zero
//! and products with the unit may be omitted. Coefficients use the compact
//! `Q(i)` rendering (`-1/2+3*i`). Products are exported flattened.

use std::fmt::Write as _;

use super::space::{BasisElement, Space, SpaceRef, Sparse};
use crate::coeffs::GaussRat;
use crate::error::{Error, Result};

fn write_sparse(out: &mut String, terms: &Sparse) {
    for (k, c) in terms {
        let _ = write!(out, " {k}={}", c.to_compact());
    }
}

pub fn write_space(space: &Space) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "space {}", space.name().replace(' ', ""));
    let _ = writeln!(out, "dim {}", space.dim());
    for e in space.basis() {
        let _ = writeln!(out, "basis {} {} {}", e.name, e.p, e.q);
    }
    let _ = writeln!(out, "point {}", space.point_index());
    out.push_str("chern");
    write_sparse(&mut out, space.tangent_chern_terms());
    out.push('\n');
    let unit = space.unit_index();
    for i in 0..space.len() {
        for j in 0..space.len() {
            if i == unit || j == unit {
                continue;
            }
            let prod = space.mult_basis(i, j);
            if !prod.is_empty() {
                let _ = write!(out, "mult {i} {j} ->");
                write_sparse(&mut out, &prod);
                out.push('\n');
            }
        }
    }
    out
}

fn parse_sparse<'a>(tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<Sparse> {
    tokens
        .map(|tok| {
            let (idx, coeff) = tok
                .split_once('=')
                .ok_or_else(|| Error::Format { line, message: format!("expected index=coefficient, found `{tok}`") })?;
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Format { line, message: format!("bad index `{idx}`") })?;
            let c: GaussRat = coeff
                .parse()
                .map_err(|_| Error::Format { line, message: format!("bad coefficient `{coeff}`") })?;
            Ok((idx, c))
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, what: &str, line: usize) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Format { line, message: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Format { line, message: format!("bad {what} `{tok}`") })
}

pub fn read_space(text: &str) -> Result<SpaceRef> {
    let mut name = None;
    let mut dim = None;
    let mut basis = Vec::new();
    let mut point = None;
    let mut chern = None;
    let mut products = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        match keyword {
            "space" => name = Some(tokens.next().ok_or(Error::Format { line, message: "missing name".into() })?.to_string()),
            "dim" => dim = Some(parse_num::<u32>(tokens.next(), "dimension", line)?),
            "basis" => {
                let bname = tokens.next().ok_or(Error::Format { line, message: "missing basis name".into() })?;
                let p = parse_num(tokens.next(), "p", line)?;
                let q = parse_num(tokens.next(), "q", line)?;
                basis.push(BasisElement::new(bname, p, q));
            }
            "point" => point = Some(parse_num::<usize>(tokens.next(), "point index", line)?),
            "chern" => chern = Some(parse_sparse(tokens, line)?),
            "mult" => {
                let i = parse_num::<usize>(tokens.next(), "left index", line)?;
                let j = parse_num::<usize>(tokens.next(), "right index", line)?;
                if tokens.next() != Some("->") {
                    return Err(Error::Format { line, message: "expected `->`".into() });
                }
                products.push(((i, j), parse_sparse(tokens, line)?));
            }
            other => return Err(Error::Format { line, message: format!("unknown keyword `{other}`") }),
        }
        if keyword != "mult" && keyword != "chern" {
            if let Some(extra) = content.split_whitespace().nth(match keyword {
                "basis" => 4,
                _ => 2,
            }) {
                return Err(Error::Format { line, message: format!("unexpected `{extra}`") });
            }
        }
    }
    let missing = |what: &str| Error::Format { line: 0, message: format!("missing `{what}` line") };
    let name = name.ok_or_else(|| missing("space"))?;
    let dim = dim.ok_or_else(|| missing("dim"))?;
    let point = point.ok_or_else(|| missing("point"))?;
    let chern = chern.ok_or_else(|| missing("chern"))?;
    if chern.iter().any(|(k, _)| *k >= basis.len()) {
        return Err(Error::InvalidSpace(format!("{name}: Chern class refers to a missing basis index")));
    }
    Space::from_table(name, dim, basis, products, point, chern)
}
