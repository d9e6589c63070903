use serde::{Deserialize, Serialize};

use super::{content_lines, keyed, parse_err, parse_index, FormatError};
use crate::semigroup::{FiniteSemigroup, SemigroupError};

/// JSON form of a multiplication table, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// Reads `n`, `n` table rows and an optional `identity = k` line starting at
/// `lines[*pos]`, advancing `pos` past them.
pub(crate) fn parse_table_block(lines: &[(usize, &str)], pos: &mut usize) -> Result<FiniteSemigroup, FormatError> {
    let last = lines.last().map_or(0, |(l, _)| *l);
    let &(line, header) = lines.get(*pos).ok_or_else(|| parse_err(last, "missing table order"))?;
    let n: usize = header.parse().map_err(|_| parse_err(line, format!("expected the order, found `{header}`")))?;
    if n == 0 {
        return Err(parse_err(line, "order must be positive"));
    }
    *pos += 1;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let &(line, text) = lines.get(*pos).ok_or_else(|| parse_err(last, format!("expected {n} rows, found {r}")))?;
        let row = text.split_whitespace().map(|t| parse_index(line, t, n)).collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
        *pos += 1;
    }
    let mut identity = None;
    let mut blame = line;
    if let Some(&(id_line, text)) = lines.get(*pos) {
        if let Some(v) = keyed(text, "identity") {
            identity = Some(parse_index(id_line, v, n)?);
            blame = id_line;
            *pos += 1;
        }
    }
    FiniteSemigroup::from_table(rows, identity).map_err(|e| match e {
        SemigroupError::BadIdentity(_) => parse_err(blame, e.to_string()),
        _ => parse_err(line, e.to_string()),
    })
}

pub fn parse_table_text(text: &str) -> Result<FiniteSemigroup, FormatError> {
    let lines = content_lines(text);
    let mut pos = 0;
    let s = parse_table_block(&lines, &mut pos)?;
    if let Some(&(line, extra)) = lines.get(pos) {
        return Err(parse_err(line, format!("unexpected `{extra}` after the table")));
    }
    Ok(s)
}

pub(crate) fn write_table_block(s: &FiniteSemigroup, out: &mut String) {
    out.push_str(&format!("{}\n", s.order()));
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(|x| (x + 1).to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(e) = s.identity() {
        out.push_str(&format!("identity = {}\n", e + 1));
    }
}

pub fn semigroup_to_text(s: &FiniteSemigroup) -> String {
    let mut out = String::new();
    write_table_block(s, &mut out);
    out
}

pub fn semigroup_to_json(s: &FiniteSemigroup) -> SemigroupJson {
    SemigroupJson {
        order: s.order(),
        table: s.rows().into_iter().map(|r| r.into_iter().map(|x| x + 1).collect()).collect(),
        identity: s.identity().map(|e| e + 1),
        names: s.names().map(<[String]>::to_vec),
    }
}

pub fn semigroup_from_json(j: &SemigroupJson) -> Result<FiniteSemigroup, FormatError> {
    if j.table.len() != j.order {
        return Err(parse_err(0, format!("table has {} rows, order is {}", j.table.len(), j.order)));
    }
    let rows = j
        .table
        .iter()
        .map(|r| r.iter().map(|&x| x.checked_sub(1).ok_or_else(|| parse_err(0, "indices are 1-based"))).collect())
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    let identity =
        j.identity.map(|e| e.checked_sub(1).ok_or_else(|| parse_err(0, "indices are 1-based"))).transpose()?;
    let s = FiniteSemigroup::from_table(rows, identity)?;
    Ok(match &j.names {
        Some(names) => s.with_names(names.clone())?,
        None => s,
    })
}
