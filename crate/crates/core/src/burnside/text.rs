//! Line-oriented text format for a single correspondence:
//!
//! ```text
//! # comment
//! group Z            # trivial | Z | Z/r
//! source x0 x1
//! target y0
//! x0 y0 2            # one arrow orbit per line: source label, target label, offset
//! ```

use std::fmt::Write as _;

use super::{ArrowOrbit, Correspondence, FreeGSet, GroupId};
use crate::error::BurnsideError;

fn err(line: usize, message: impl Into<String>) -> BurnsideError {
    BurnsideError::Parse { line, message: message.into() }
}

fn parse_group(line: usize, s: &str) -> Result<GroupId, BurnsideError> {
    match s {
        "trivial" | "1" => Ok(GroupId::Trivial),
        "Z" => Ok(GroupId::InfiniteCyclic),
        _ => {
            let r = s
                .strip_prefix("Z/")
                .and_then(|r| r.parse::<u64>().ok())
                .ok_or_else(|| err(line, format!("unknown group {s:?}; expected trivial, Z or Z/r")))?;
            GroupId::cyclic(r).map_err(|e| err(line, e.to_string()))
        }
    }
}

pub fn parse_correspondence(text: &str) -> Result<Correspondence, BurnsideError> {
    let mut group = None;
    let mut source: Option<Vec<String>> = None;
    let mut target: Option<Vec<String>> = None;
    let mut arrows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "group" => {
                if words.len() != 2 {
                    return Err(err(line, "expected `group <name>`"));
                }
                group = Some(parse_group(line, words[1])?);
            }
            "source" => source = Some(words[1..].iter().map(|s| s.to_string()).collect()),
            "target" => target = Some(words[1..].iter().map(|s| s.to_string()).collect()),
            _ => {
                let (Some(g), Some(src), Some(tgt)) = (group, &source, &target) else {
                    return Err(err(line, "arrow before the group, source and target headers"));
                };
                if words.len() != 3 {
                    return Err(err(line, "expected `<source label> <target label> <offset>`"));
                }
                let s = src.iter().position(|o| o == words[0]).ok_or_else(|| err(line, format!("unknown source orbit {:?}", words[0])))?;
                let t = tgt.iter().position(|o| o == words[1]).ok_or_else(|| err(line, format!("unknown target orbit {:?}", words[1])))?;
                let offset: i64 = words[2].parse().map_err(|_| err(line, format!("bad offset {:?}", words[2])))?;
                if g == GroupId::Trivial && offset != 0 {
                    return Err(err(line, "nonzero offset over the trivial group"));
                }
                arrows.push(ArrowOrbit::new(s, t, offset));
            }
        }
    }
    let last = text.lines().count();
    let group = group.ok_or_else(|| err(last, "missing `group` header"))?;
    let source = FreeGSet::new(group, source.ok_or_else(|| err(last, "missing `source` header"))?).map_err(|e| err(0, e.to_string()))?;
    let target = FreeGSet::new(group, target.ok_or_else(|| err(last, "missing `target` header"))?).map_err(|e| err(0, e.to_string()))?;
    Correspondence::new(source, target, arrows)
}

pub fn format_correspondence(c: &Correspondence) -> String {
    let mut out = String::new();
    writeln!(out, "group {}", c.group()).unwrap();
    writeln!(out, "source {}", c.source().orbits().join(" ")).unwrap();
    writeln!(out, "target {}", c.target().orbits().join(" ")).unwrap();
    for a in c.arrows() {
        writeln!(out, "{} {} {}", c.source().orbits()[a.s], c.target().orbits()[a.t], a.offset).unwrap();
    }
    out
}
