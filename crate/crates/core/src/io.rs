//! Plain-text file formats: subspace families, rank-metric codes and Gram
//! matrices. All formats are line-oriented with `#` comments, digit-string
//! vectors over GF(q) (one character per coordinate, q ≤ 9), and are
//! canonicalized on load.

use std::sync::Arc;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::lattice::Lattice;
use crate::linalg::MatGf;
use crate::rmcodes::{ExtFieldTower, RankMetricCode};
use crate::subspace::{BilinearForm, Subspace};

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn parse_usize(tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("invalid {what}: {tok:?}")))
}

fn parse_header<const K: usize>(line: Option<&str>, names: [&str; K]) -> Result<[usize; K]> {
    let line = line.ok_or_else(|| Error::Parse("empty file".into()))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != K {
        return Err(Error::Parse(format!(
            "header must be `{}`, got {line:?}",
            names.join(" ")
        )));
    }
    let mut out = [0usize; K];
    for (i, (tok, name)) in toks.iter().zip(names).enumerate() {
        out[i] = parse_usize(tok, name)?;
    }
    Ok(out)
}

fn field_of_order(q: usize) -> Result<Arc<FieldSpec>> {
    if q < 2 || q > 9 {
        return Err(Error::Parse(format!(
            "field order {q} outside the supported digit range 2..=9"
        )));
    }
    FieldSpec::of_order(q)
}

fn parse_vector(field: &Arc<FieldSpec>, n: usize, tok: &str) -> Result<Vec<Fe>> {
    if tok.len() != n {
        return Err(Error::Parse(format!(
            "vector {tok:?} has {} coordinates, expected {n}",
            tok.len()
        )));
    }
    tok.chars()
        .map(|c| {
            let d = c
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("invalid coordinate {c:?} in {tok:?}")))?;
            if d as usize >= field.order() {
                return Err(Error::Parse(format!(
                    "coordinate {d} out of range for GF({})",
                    field.order()
                )));
            }
            Ok(Fe(d as u16))
        })
        .collect()
}

/// Parse one subspace line: `0` for the zero space, `E` for the full space,
/// otherwise space-separated digit-string vectors.
pub fn parse_subspace(field: &Arc<FieldSpec>, n: usize, line: &str) -> Result<Subspace> {
    match line.trim() {
        "0" => Ok(Subspace::zero(field.clone(), n)),
        "E" => Ok(Subspace::full(field.clone(), n)),
        body => {
            let rows: Vec<Vec<Fe>> = body
                .split_whitespace()
                .map(|tok| parse_vector(field, n, tok))
                .collect::<Result<_>>()?;
            Subspace::from_vectors(field.clone(), n, &rows)
        }
    }
}

/// A parsed family file: the ambient parameters and the member subspaces in
/// file order, canonicalized.
#[derive(Debug, Clone)]
pub struct FamilyFile {
    pub field: Arc<FieldSpec>,
    pub n: usize,
    pub spaces: Vec<Subspace>,
}

/// Family file format: line 1 `q n`, then one subspace per line. Duplicate
/// subspaces (after canonicalization) are rejected.
pub fn parse_family(text: &str) -> Result<FamilyFile> {
    let mut lines = content_lines(text);
    let [q, n] = parse_header(lines.next(), ["q", "n"])?;
    let field = field_of_order(q)?;
    let mut spaces: Vec<Subspace> = Vec::new();
    for line in lines {
        let s = parse_subspace(&field, n, line)?;
        if spaces.contains(&s) {
            return Err(Error::Parse(format!(
                "duplicate subspace {:?} (line {line:?})",
                s.render()
            )));
        }
        spaces.push(s);
    }
    if spaces.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(FamilyFile { field, n, spaces })
}

impl FamilyFile {
    pub fn ids(&self, lattice: &Lattice) -> Result<IdSet> {
        let mut out = IdSet::new(lattice.len());
        for s in &self.spaces {
            out.insert(lattice.id_of(s)?);
        }
        Ok(out)
    }
}

/// Render a family as a file, members in lattice order.
pub fn write_family(lattice: &Lattice, ids: &IdSet) -> String {
    let mut out = format!("{} {}\n", lattice.field().order(), lattice.n());
    for id in ids.iter() {
        out.push_str(&lattice.render(id));
        out.push('\n');
    }
    out
}

/// Code file format: line 1 `q m n k`, then k generator rows of n entries;
/// each entry is a length-m digit string over GF(q), constant term first.
pub fn parse_code(text: &str) -> Result<RankMetricCode> {
    let mut lines = content_lines(text);
    let [q, m, n, k] = parse_header(lines.next(), ["q", "m", "n", "k"])?;
    let base = field_of_order(q)?;
    let tower = Arc::new(ExtFieldTower::for_base(&base, m)?);
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(k);
    for line in lines {
        let entries: Vec<Fe> = line
            .split_whitespace()
            .map(|tok| {
                if tok.len() != m {
                    return Err(Error::Parse(format!(
                        "entry {tok:?} has {} digits, expected m = {m}",
                        tok.len()
                    )));
                }
                let digits: Vec<u16> = tok
                    .chars()
                    .map(|c| {
                        let d = c.to_digit(10).ok_or_else(|| {
                            Error::Parse(format!("invalid digit {c:?} in {tok:?}"))
                        })?;
                        if d as usize >= q {
                            return Err(Error::Parse(format!(
                                "digit {d} out of range for GF({q})"
                            )));
                        }
                        Ok(d as u16)
                    })
                    .collect::<Result<_>>()?;
                tower.top().from_coeffs(&digits)
            })
            .collect::<Result<_>>()?;
        if entries.len() != n {
            return Err(Error::Parse(format!(
                "generator row has {} entries, expected n = {n}",
                entries.len()
            )));
        }
        rows.push(entries);
    }
    if rows.len() != k {
        return Err(Error::Parse(format!(
            "expected k = {k} generator rows, got {}",
            rows.len()
        )));
    }
    let gen = MatGf::from_rows(tower.top().clone(), n, &rows)?;
    RankMetricCode::new(tower, gen)
}

/// Gram file format: line 1 `q n`, then n rows of n digits giving the Gram
/// matrix of the bilinear form.
pub fn parse_gram(text: &str) -> Result<BilinearForm> {
    let mut lines = content_lines(text);
    let [q, n] = parse_header(lines.next(), ["q", "n"])?;
    let field = field_of_order(q)?;
    let rows: Vec<Vec<Fe>> = lines
        .map(|line| parse_vector(&field, n, line.split_whitespace().collect::<String>().as_str()))
        .collect::<Result<_>>()?;
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} Gram rows, got {}",
            rows.len()
        )));
    }
    let gram = MatGf::from_rows(field, n, &rows)?;
    BilinearForm::new(gram)
}
