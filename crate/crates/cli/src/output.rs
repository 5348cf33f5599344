//! Plain-text tables. Rows are sorted by homological degree, then by the
//! auxiliary gradings in lexicographic order.

use std::fmt::Write;

use burnside_core::algebra::{GradedChainComplex, HomologySummary};

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> =
        (0..header.len()).map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap()).collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for r in rows {
        out += &line(r);
    }
    out
}

pub fn homology_table(h: &HomologySummary, aux_names: &[String]) -> String {
    let mut out = format!("homology over {}\n", h.ring);
    let graded = h.graded && !aux_names.is_empty();
    let mut header = vec!["degree".to_string()];
    if graded {
        header.extend(aux_names.iter().cloned());
    }
    header.push("group".into());
    let rows: Vec<Vec<String>> = if graded {
        h.groups
            .iter()
            .map(|((d, aux), g)| {
                let mut r = vec![d.to_string()];
                r.extend(aux.iter().map(ToString::to_string));
                r.push(g.to_string());
                r
            })
            .collect()
    } else {
        h.by_degree().iter().map(|(d, g)| vec![d.to_string(), g.to_string()]).collect()
    };
    if rows.is_empty() {
        out += "(zero)\n";
    } else {
        out += &table(&header, &rows);
    }
    out
}

pub fn complex_table(c: &GradedChainComplex) -> String {
    let mut out = format!("complex over {}, {} auxiliary gradings\n", c.ring(), c.aux_arity());
    let rows: Vec<Vec<String>> = c.degrees().map(|d| vec![d.to_string(), c.rank(d).to_string()]).collect();
    out += &table(&["degree".into(), "rank".into()], &rows);
    for (d, m) in c.differentials() {
        let _ = writeln!(out, "\nd[{d}]: degree {d} -> {}, {} x {}", d - 1, m.rows(), m.cols());
        for (r, col, e) in m.nonzero() {
            let _ = writeln!(out, "  ({r}, {col}) = {e}");
        }
    }
    out
}
