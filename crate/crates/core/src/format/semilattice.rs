use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::table::{parse_table_block, write_table_block};
use super::{
    content_lines, keyed, parse_err, parse_index, semigroup_from_json, semigroup_to_json, FormatError, SemigroupJson,
};
use crate::rees::{make_strong_semilattice, StrongSemilatticeData};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub from: usize,
    pub to: usize,
    pub map: Vec<usize>,
}

/// JSON form of a strong semilattice; `order` holds pairs `[β, α]` with
/// `β < α`, all 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilatticeJson {
    pub components: Vec<SemigroupJson>,
    #[serde(default)]
    pub order: Vec<[usize; 2]>,
    #[serde(default)]
    pub homs: Vec<HomJson>,
}

fn indices(line: usize, text: &str, expected: usize, bound: usize) -> Result<Vec<usize>, FormatError> {
    let v = text.split_whitespace().map(|t| parse_index(line, t, bound)).collect::<Result<Vec<_>, _>>()?;
    if v.len() != expected {
        return Err(parse_err(line, format!("expected {expected} indices, found {}", v.len())));
    }
    Ok(v)
}

/// `components = k`, then in any order: `below β α` lines, `component α`
/// followed by a table block, and `hom α β` followed by one line of images.
pub fn parse_semilattice_text(text: &str) -> Result<StrongSemilatticeData, FormatError> {
    let lines = content_lines(text);
    let &(first, header) = lines.first().ok_or_else(|| parse_err(0, "empty input"))?;
    let k: usize = keyed(header, "components")
        .and_then(|v| v.parse().ok())
        .filter(|&k| k > 0)
        .ok_or_else(|| parse_err(first, "expected `components = k` with k ≥ 1"))?;
    let mut components = vec![None; k];
    let mut order = Vec::new();
    let mut hom_lines = Vec::new();
    let mut pos = 1;
    while let Some(&(line, text)) = lines.get(pos) {
        let words: Vec<&str> = text.split_whitespace().collect();
        pos += 1;
        match words.as_slice() {
            ["below", b, a] => order.push((parse_index(line, b, k)?, parse_index(line, a, k)?)),
            ["component", a] => {
                let a = parse_index(line, a, k)?;
                if components[a].is_some() {
                    return Err(parse_err(line, format!("component {} given twice", a + 1)));
                }
                components[a] = Some(parse_table_block(&lines, &mut pos)?);
            }
            ["hom", a, b] => {
                let (a, b) = (parse_index(line, a, k)?, parse_index(line, b, k)?);
                let &(map_line, map) =
                    lines.get(pos).ok_or_else(|| parse_err(line, "hom header without a map line"))?;
                pos += 1;
                hom_lines.push((line, a, b, map_line, map));
            }
            _ => return Err(parse_err(line, format!("unexpected `{text}`"))),
        }
    }
    let last = lines.last().map_or(first, |(l, _)| *l);
    let components = components
        .into_iter()
        .enumerate()
        .map(|(a, c)| c.ok_or_else(|| parse_err(last, format!("component {} missing", a + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut homs = BTreeMap::new();
    for (line, a, b, map_line, map) in hom_lines {
        let images = indices(map_line, map, components[a].order(), components[b].order())?;
        if homs.insert((a, b), images).is_some() {
            return Err(parse_err(line, format!("hom {} {} given twice", a + 1, b + 1)));
        }
    }
    let data = StrongSemilatticeData { components, order, homs };
    make_strong_semilattice(&data).map_err(|e| parse_err(first, e.to_string()))?;
    Ok(data)
}

pub fn semilattice_to_text(d: &StrongSemilatticeData) -> String {
    let mut out = format!("components = {}\n", d.components.len());
    for &(b, a) in &d.order {
        out.push_str(&format!("below {} {}\n", b + 1, a + 1));
    }
    for (a, c) in d.components.iter().enumerate() {
        out.push_str(&format!("component {}\n", a + 1));
        write_table_block(c, &mut out);
    }
    for (&(a, b), map) in &d.homs {
        out.push_str(&format!("hom {} {}\n", a + 1, b + 1));
        let cells: Vec<String> = map.iter().map(|x| (x + 1).to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn semilattice_to_json(d: &StrongSemilatticeData) -> SemilatticeJson {
    SemilatticeJson {
        components: d.components.iter().map(semigroup_to_json).collect(),
        order: d.order.iter().map(|&(b, a)| [b + 1, a + 1]).collect(),
        homs: d
            .homs
            .iter()
            .map(|(&(a, b), map)| HomJson { from: a + 1, to: b + 1, map: map.iter().map(|x| x + 1).collect() })
            .collect(),
    }
}

pub fn semilattice_from_json(j: &SemilatticeJson) -> Result<StrongSemilatticeData, FormatError> {
    let one_based = |x: usize| x.checked_sub(1).ok_or_else(|| parse_err(0, "indices are 1-based"));
    let components = j.components.iter().map(semigroup_from_json).collect::<Result<Vec<_>, _>>()?;
    let order =
        j.order.iter().map(|&[b, a]| Ok((one_based(b)?, one_based(a)?))).collect::<Result<Vec<_>, FormatError>>()?;
    let mut homs = BTreeMap::new();
    for h in &j.homs {
        let map = h.map.iter().map(|&x| one_based(x)).collect::<Result<Vec<_>, _>>()?;
        homs.insert((one_based(h.from)?, one_based(h.to)?), map);
    }
    let data = StrongSemilatticeData { components, order, homs };
    make_strong_semilattice(&data)?;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    const TWO_CHAIN: &str = "components = 2\nbelow 2 1\ncomponent 1\n2\n1 2\n2 1\nidentity = 1\ncomponent 2\n2\n1 2\n2 1\nidentity = 1\nhom 1 2\n1 2\n";

    #[test]
    fn two_chain_text() {
        let d = parse_semilattice_text(TWO_CHAIN).unwrap();
        assert_eq!(d.order, vec![(1, 0)]);
        assert_eq!(d.homs[&(0, 1)], vec![0, 1]);
        assert_eq!(d.components[1].rows(), cyclic_group(2).rows());
        assert_eq!(semilattice_to_text(&d), TWO_CHAIN);
    }

    #[test]
    fn json_round_trip() {
        let d = parse_semilattice_text(TWO_CHAIN).unwrap();
        let j = serde_json::to_string(&semilattice_to_json(&d)).unwrap();
        assert_eq!(semilattice_from_json(&serde_json::from_str(&j).unwrap()).unwrap(), d);
    }

    #[test]
    fn errors() {
        let missing = TWO_CHAIN.replace("component 2\n2\n1 2\n2 1\nidentity = 1\n", "");
        assert!(matches!(parse_semilattice_text(&missing), Err(FormatError::Parse { .. })));
        let bad_hom = TWO_CHAIN.replace("hom 1 2\n1 2\n", "hom 1 2\n2 1\n");
        assert!(matches!(parse_semilattice_text(&bad_hom), Err(FormatError::Parse { line: 1, .. })));
        let junk = format!("{TWO_CHAIN}nonsense\n");
        assert!(matches!(parse_semilattice_text(&junk), Err(FormatError::Parse { line: 15, .. })));
        let short_map = TWO_CHAIN.replace("hom 1 2\n1 2\n", "hom 1 2\n1\n");
        assert!(matches!(parse_semilattice_text(&short_map), Err(FormatError::Parse { line: 14, .. })));
    }
}
