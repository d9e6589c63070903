use serde::{Deserialize, Serialize};

use super::table::{parse_table_block, write_table_block};
use super::{content_lines, keyed, parse_err, semigroup_from_json, semigroup_to_json, FormatError, SemigroupJson};
use crate::rees::ReesMatrixData;
use crate::semigroup::FiniteSemigroup;

/// JSON form of `M[G; I, Ω; P]`; `P` has `|Ω|` rows of `|I|` element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesJson {
    pub group: SemigroupJson,
    #[serde(rename = "I")]
    pub i: usize,
    #[serde(rename = "Omega")]
    pub omega: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
}

fn element_by_name(g: &FiniteSemigroup, line: usize, name: &str) -> Result<usize, FormatError> {
    g.elements().find(|&x| g.name(x) == name).ok_or_else(|| parse_err(line, format!("`{name}` is not a group element")))
}

/// Group table block, then `I = m`, `Omega = n`, then `n` rows of `m` group
/// element names (1-based indices when the group is unnamed).
pub fn parse_rees_text(text: &str) -> Result<ReesMatrixData, FormatError> {
    let lines = content_lines(text);
    let mut pos = 0;
    let group = parse_table_block(&lines, &mut pos)?;
    let last = lines.last().map_or(0, |(l, _)| *l);
    let mut value = |key: &str| -> Result<(usize, usize), FormatError> {
        let &(line, text) = lines.get(pos).ok_or_else(|| parse_err(last, format!("missing `{key} = ...`")))?;
        let v = keyed(text, key).ok_or_else(|| parse_err(line, format!("expected `{key} = ...`, found `{text}`")))?;
        pos += 1;
        v.parse().map(|k| (line, k)).map_err(|_| parse_err(line, format!("`{v}` is not a count")))
    };
    let (_, m) = value("I")?;
    let (omega_line, n) = value("Omega")?;
    let mut p = Vec::with_capacity(n);
    for r in 0..n {
        let &(line, text) = lines
            .get(pos)
            .ok_or_else(|| parse_err(last.max(omega_line), format!("expected {n} rows of P, found {r}")))?;
        let row = text.split_whitespace().map(|t| element_by_name(&group, line, t)).collect::<Result<Vec<_>, _>>()?;
        if row.len() != m {
            return Err(parse_err(line, format!("row of P has {} entries, expected {m}", row.len())));
        }
        p.push(row);
        pos += 1;
    }
    if let Some(&(line, extra)) = lines.get(pos) {
        return Err(parse_err(line, format!("unexpected `{extra}` after P")));
    }
    ReesMatrixData::new(group, m, n, p).map_err(|e| parse_err(omega_line, e.to_string()))
}

fn p_rows(d: &ReesMatrixData) -> Vec<Vec<String>> {
    d.p.iter().map(|row| row.iter().map(|&g| d.group.name(g)).collect()).collect()
}

pub fn rees_to_text(d: &ReesMatrixData) -> String {
    let mut out = String::new();
    write_table_block(&d.group, &mut out);
    out.push_str(&format!("I = {}\nOmega = {}\n", d.i_count, d.omega_count));
    // the text group block carries no names, so entries are written as indices
    for row in &d.p {
        let cells: Vec<String> = row.iter().map(|g| (g + 1).to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn rees_to_json(d: &ReesMatrixData) -> ReesJson {
    ReesJson { group: semigroup_to_json(&d.group), i: d.i_count, omega: d.omega_count, p: p_rows(d) }
}

pub fn rees_from_json(j: &ReesJson) -> Result<ReesMatrixData, FormatError> {
    let group = semigroup_from_json(&j.group)?;
    let p =
        j.p.iter()
            .map(|row| row.iter().map(|name| element_by_name(&group, 0, name)).collect())
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
    Ok(ReesMatrixData::new(group, j.i, j.omega, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    const SANDWICH: &str = "# M[Z2; 2, 2; P]\n2\n1 2\n2 1\nidentity = 1\nI = 2\nOmega = 2\n1 1\n1 2\n";

    #[test]
    fn parses_sandwich_matrix() {
        let d = parse_rees_text(SANDWICH).unwrap();
        assert_eq!((d.i_count, d.omega_count), (2, 2));
        assert_eq!(d.p, vec![vec![0, 0], vec![0, 1]]);
        assert!(d.normalized);
        assert_eq!(rees_to_text(&d), SANDWICH.trim_start_matches("# M[Z2; 2, 2; P]\n"));
    }

    #[test]
    fn json_uses_names() {
        let g = cyclic_group(2).with_names(vec!["e".into(), "g".into()]).unwrap();
        let d = ReesMatrixData::new(g, 2, 1, vec![vec![1, 0]]).unwrap();
        let j = rees_to_json(&d);
        assert_eq!(j.p, vec![vec!["g".to_string(), "e".to_string()]]);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"Omega\":1"));
        assert_eq!(rees_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), d);
    }

    #[test]
    fn errors() {
        let bad_group_row = "2\n1 2\n2 3\nI = 2\nOmega = 2\n1 1\n1 2\n";
        assert!(matches!(parse_rees_text(bad_group_row), Err(FormatError::Parse { line: 3, .. })));
        let bad_entry = "2\n1 2\n2 1\nI = 2\nOmega = 2\n1 1\n1 3\n";
        assert!(matches!(parse_rees_text(bad_entry), Err(FormatError::Parse { line: 7, .. })));
        let short = "2\n1 2\n2 1\nI = 2\nOmega = 2\n1 1\n";
        assert!(matches!(parse_rees_text(short), Err(FormatError::Parse { .. })));
        let not_group = "2\n1 1\n1 1\nI = 1\nOmega = 1\n1\n";
        assert!(matches!(parse_rees_text(not_group), Err(FormatError::Parse { line: 5, .. })));
        let missing = "2\n1 2\n2 1\nOmega = 1\n";
        assert!(matches!(parse_rees_text(missing), Err(FormatError::Parse { line: 4, .. })));
    }
}
