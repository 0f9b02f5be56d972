//! Line-oriented group descriptions.
//!
//! ```text
//! group S3
//! perm (1,2,3)
//! perm (1,2)
//! ```
//!
//! Other bodies: `builtin <kind> key=value ...` or `table <n>` followed by
//! n rows of n indices. `#` starts a comment.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::rules::PermutationRule;
use crate::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpecBody {
    Builtin { kind: String, params: BTreeMap<String, String> },
    /// One generator per entry; each generator is a list of cycles on 1..=degree.
    Perm(Vec<Vec<Vec<usize>>>),
    Table { n: usize, rows: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub body: GroupSpecBody,
}

fn err(line: usize, message: impl Into<String>) -> SpecError {
    SpecError { line, message: message.into() }
}

fn parse_cycles(line: usize, text: &str) -> Result<Vec<Vec<usize>>, SpecError> {
    let t = text.trim();
    if t == "()" || t.is_empty() {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| err(line, format!("expected `(` in `{text}`")))?;
        let (body, after) = inner.split_once(')').ok_or_else(|| err(line, "unclosed cycle"))?;
        let pts: Vec<usize> = body
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| err(line, format!("bad point `{}`", p.trim()))))
            .collect::<Result<_, _>>()?;
        if pts.contains(&0) {
            return Err(err(line, "points are numbered from 1"));
        }
        cycles.push(pts);
        rest = after.trim_start();
    }
    Ok(cycles)
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut name: Option<String> = None;
    let mut body: Option<GroupSpecBody> = None;
    let mut table_rows: Option<(usize, usize, Vec<Vec<u32>>)> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((n, _, rows)) = table_rows.as_mut() {
            if rows.len() < *n {
                let row: Vec<u32> = content
                    .split_whitespace()
                    .map(|v| v.parse::<u32>().map_err(|_| err(line, format!("bad table entry `{v}`"))))
                    .collect::<Result<_, _>>()?;
                if row.len() != *n {
                    return Err(err(line, format!("table row has {} entries, expected {n}", row.len())));
                }
                rows.push(row);
                continue;
            }
        }
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match kw {
            "group" => {
                if name.is_some() {
                    return Err(err(line, "duplicate `group` line"));
                }
                if rest.is_empty() {
                    return Err(err(line, "`group` needs a name"));
                }
                name = Some(rest.to_string());
            }
            "builtin" => {
                if body.is_some() || table_rows.is_some() {
                    return Err(err(line, "group body already given"));
                }
                let mut parts = rest.split_whitespace();
                let kind = parts.next().ok_or_else(|| err(line, "`builtin` needs a kind"))?.to_string();
                let mut params = BTreeMap::new();
                for p in parts {
                    let (k, v) = p.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got `{p}`")))?;
                    params.insert(k.to_string(), v.to_string());
                }
                body = Some(GroupSpecBody::Builtin { kind, params });
            }
            "perm" => {
                let cycles = parse_cycles(line, rest)?;
                match &mut body {
                    None => body = Some(GroupSpecBody::Perm(vec![cycles])),
                    Some(GroupSpecBody::Perm(gens)) => gens.push(cycles),
                    Some(_) => return Err(err(line, "`perm` cannot be mixed with another body")),
                }
            }
            "table" => {
                if body.is_some() || table_rows.is_some() {
                    return Err(err(line, "group body already given"));
                }
                let n: usize = rest.parse().map_err(|_| err(line, "`table` needs a size"))?;
                if n == 0 {
                    return Err(err(line, "table size must be positive"));
                }
                table_rows = Some((n, line, Vec::new()));
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some((n, start, rows)) = table_rows {
        if rows.len() != n {
            return Err(err(start, format!("table declares {n} rows but {} follow", rows.len())));
        }
        body = Some(GroupSpecBody::Table { n, rows });
    }
    let name = name.ok_or_else(|| err(1, "missing `group <name>` line"))?;
    let body = body.ok_or_else(|| err(last_line.max(1), "missing group body"))?;
    Ok(GroupSpec { name, body })
}

impl GroupSpec {
    /// Materialize `perm` and `table` bodies. Builtins are resolved elsewhere.
    pub fn build_basic(&self, closure_cap: usize, table_cap: usize) -> Result<Option<FiniteGroup>, GroupError> {
        match &self.body {
            GroupSpecBody::Builtin { .. } => Ok(None),
            GroupSpecBody::Perm(gens) => {
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
                let encs: Vec<Vec<u8>> = gens
                    .iter()
                    .map(|c| PermutationRule::from_cycles(degree, c).ok_or(GroupError::IncompatibleGenerators))
                    .collect::<Result<_, _>>()?;
                let rule = Arc::new(PermutationRule { degree });
                FiniteGroup::closure(&self.name, rule, &encs, closure_cap, table_cap).map(Some)
            }
            GroupSpecBody::Table { n, rows } => {
                let flat = rows.iter().flatten().copied().collect();
                FiniteGroup::from_table(&self.name, *n, flat).map(Some)
            }
        }
    }
}
