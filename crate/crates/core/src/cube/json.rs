//! JSON cube documents (`docs/schemas/cube.schema.json`).
//!
//! Vertices are bit strings `u_1 ... u_n`; coordinates are 1-based. An edge
//! lists arrow orbits as `[source orbit index, target orbit index, offset]`;
//! a face `(u, [i, j])` lists, for each position of the composite that clears
//! `i` first, the position of its image in the composite that clears `j` first.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{bits, format_vertex, parse_vertex, BurnsideCube};
use crate::algebra::json::SCHEMA_VERSION;
use crate::burnside::{ArrowOrbit, Correspondence, FreeGSet, GroupId};
use crate::error::CubeError;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CubeDoc {
    schema_version: u32,
    dimension: usize,
    group: GroupId,
    #[serde(default)]
    aux_arity: usize,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
    #[serde(default)]
    faces: Vec<FaceDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    vertex: String,
    orbits: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    aux: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    vertex: String,
    coordinate: usize,
    arrows: Vec<(usize, usize, i64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceDoc {
    vertex: String,
    coordinates: (usize, usize),
    mapping: Vec<usize>,
}

pub fn cube_to_json(c: &BurnsideCube) -> Value {
    let n = c.dim();
    let vertices = (0..1usize << n)
        .map(|u| VertexDoc {
            vertex: format_vertex(u, n),
            orbits: c.vertex(u).orbits().to_vec(),
            aux: if c.aux_arity() == 0 { Vec::new() } else { c.aux(u).to_vec() },
        })
        .collect();
    let edges = c
        .edges()
        .iter()
        .map(|(&(u, b), e)| EdgeDoc {
            vertex: format_vertex(u, n),
            coordinate: b + 1,
            arrows: e.arrows().iter().map(|a| (a.s, a.t, a.offset)).collect(),
        })
        .collect();
    let faces = c
        .faces()
        .iter()
        .map(|(&(u, i, j), m)| FaceDoc { vertex: format_vertex(u, n), coordinates: (i + 1, j + 1), mapping: m.clone() })
        .collect();
    let doc = CubeDoc {
        schema_version: SCHEMA_VERSION,
        dimension: n,
        group: c.group(),
        aux_arity: c.aux_arity(),
        vertices,
        edges,
        faces,
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Parses a cube document. Missing faces are filled in by first-match
/// bijections; everything else must be present. Coherence is not checked here.
pub fn cube_from_json(v: &Value) -> Result<BurnsideCube, CubeError> {
    let doc: CubeDoc = serde_json::from_value(v.clone()).map_err(|e| CubeError::Malformed(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CubeError::Malformed(format!("unsupported schemaVersion {}", doc.schema_version)));
    }
    let n = doc.dimension;
    if n > 20 {
        return Err(CubeError::Malformed(format!("dimension {n} is too large")));
    }
    if let GroupId::Cyclic { order } = doc.group {
        GroupId::cyclic(order)?;
    }
    let vertex = |s: &str, what: &str| -> Result<usize, CubeError> {
        match parse_vertex(s) {
            Some(u) if s.len() == n => Ok(u),
            _ => Err(CubeError::Malformed(format!("{what}: {s:?} is not a vertex of the {n}-cube"))),
        }
    };

    let mut sets: Vec<Option<FreeGSet>> = vec![None; 1 << n];
    let mut aux: Vec<Vec<Vec<i64>>> = vec![Vec::new(); 1 << n];
    for vd in doc.vertices {
        let u = vertex(&vd.vertex, "vertices")?;
        if sets[u].is_some() {
            return Err(CubeError::Malformed(format!("vertex {} listed twice", vd.vertex)));
        }
        aux[u] = if vd.aux.is_empty() { vec![Vec::new(); vd.orbits.len()] } else { vd.aux };
        sets[u] = Some(FreeGSet::new(doc.group, vd.orbits)?);
    }
    let sets = sets
        .into_iter()
        .enumerate()
        .map(|(u, s)| s.ok_or_else(|| CubeError::Malformed(format!("vertex {} missing", format_vertex(u, n)))))
        .collect::<Result<Vec<_>, _>>()?;

    let mut edges = BTreeMap::new();
    for ed in doc.edges {
        let u = vertex(&ed.vertex, "edges")?;
        if ed.coordinate == 0 || ed.coordinate > n || !bits(u, n).any(|b| b == ed.coordinate - 1) {
            return Err(CubeError::Malformed(format!("no edge at {} in coordinate {}", ed.vertex, ed.coordinate)));
        }
        let b = ed.coordinate - 1;
        let arrows = ed.arrows.into_iter().map(|(s, t, o)| ArrowOrbit::new(s, t, o)).collect();
        let e = Correspondence::new(sets[u].clone(), sets[u & !(1 << b)].clone(), arrows)?;
        if edges.insert((u, b), e).is_some() {
            return Err(CubeError::Malformed(format!("edge at {} in coordinate {} listed twice", ed.vertex, ed.coordinate)));
        }
    }

    let mut cube = BurnsideCube::from_edges(n, doc.group, sets, edges)?;
    let aux_arity = doc.aux_arity;
    cube.set_aux(aux_arity, aux)?;
    for fd in doc.faces {
        let u = vertex(&fd.vertex, "faces")?;
        let (i, j) = fd.coordinates;
        if i == 0 || j == 0 || !cube.faces().contains_key(&(u, i - 1, j - 1)) {
            return Err(CubeError::Malformed(format!("no face at {} in coordinates ({i}, {j})", fd.vertex)));
        }
        cube.set_face_mapping(u, i - 1, j - 1, fd.mapping);
    }
    Ok(cube)
}
