//! JSON documents for complexes and homology summaries (`docs/schemas/`).

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::complex::{BasisElement, GradedChainComplex};
use super::homology::{HomologyGroup, HomologySummary};
use super::laurent::LaurentPoly;
use super::matrix::ExactMatrix;
use super::ring::{Elem, RingId};
use crate::error::AlgebraError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ComplexDoc {
    schema_version: u32,
    ring: RingId,
    aux_arity: usize,
    basis: Vec<BasisDoc>,
    differentials: Vec<DifferentialDoc>,
}

#[derive(Serialize, Deserialize)]
struct BasisDoc {
    label: String,
    degree: i64,
    aux: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct DifferentialDoc {
    degree: i64,
    rows: usize,
    cols: usize,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    row: usize,
    col: usize,
    value: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct HomologyDoc {
    schema_version: u32,
    ring: RingId,
    graded: bool,
    groups: Vec<GroupDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct GroupDoc {
    degree: i64,
    aux: Vec<i64>,
    free_rank: usize,
    torsion: Vec<Value>,
}

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt, AlgebraError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| AlgebraError::Malformed(format!("non-integer number {n}"))),
        Value::String(s) => BigInt::from_str(s).map_err(|_| AlgebraError::Malformed(format!("bad integer {s:?}"))),
        other => Err(AlgebraError::Malformed(format!("expected integer, found {other}"))),
    }
}

/// Integers and prime-field entries are numbers (strings when they overflow
/// `i64`), group-ring entries are `{exponent: coefficient}` objects, rationals
/// are `"p/q"` strings.
pub fn elem_to_value(e: &Elem) -> Value {
    match e {
        Elem::Int(x) => int_value(x),
        Elem::Poly(p) => {
            let mut m = Map::new();
            for (exp, c) in p.terms() {
                m.insert(exp.to_string(), int_value(c));
            }
            Value::Object(m)
        }
        Elem::Rat(r) => Value::String(r.to_string()),
        Elem::Mod(v) => Value::from(*v),
    }
}

pub fn elem_from_value(ring: RingId, v: &Value) -> Result<Elem, AlgebraError> {
    let e = match ring {
        RingId::Integers => Elem::Int(parse_int(v)?),
        RingId::LaurentIntegers | RingId::CyclicGroupRing { .. } => {
            let Value::Object(m) = v else {
                return Err(AlgebraError::Malformed(format!("expected {{exponent: coefficient}}, found {v}")));
            };
            let mut p = LaurentPoly::zero();
            for (k, c) in m {
                let exp = k.parse::<i64>().map_err(|_| AlgebraError::Malformed(format!("bad exponent {k:?}")))?;
                p.add_term(exp, parse_int(c)?);
            }
            Elem::Poly(p)
        }
        RingId::Rationals => match v {
            Value::String(s) => Elem::Rat(
                BigRational::from_str(s).map_err(|_| AlgebraError::Malformed(format!("bad rational {s:?}")))?,
            ),
            other => Elem::Rat(BigRational::from_integer(parse_int(other)?)),
        },
        RingId::PrimeField { .. } => ring.from_bigint(&parse_int(v)?),
    };
    if !ring.contains(&e) {
        return Err(AlgebraError::ForeignEntry(ring));
    }
    Ok(e)
}

pub fn complex_to_json(c: &GradedChainComplex) -> Value {
    let basis = c
        .basis_map()
        .values()
        .flatten()
        .map(|e| BasisDoc { label: e.label.clone(), degree: e.hom_degree, aux: e.aux.clone() })
        .collect();
    let differentials = c
        .differentials()
        .iter()
        .map(|(&degree, d)| DifferentialDoc {
            degree,
            rows: d.rows(),
            cols: d.cols(),
            entries: d.nonzero().map(|(row, col, e)| EntryDoc { row, col, value: elem_to_value(e) }).collect(),
        })
        .collect();
    let doc = ComplexDoc { schema_version: SCHEMA_VERSION, ring: c.ring(), aux_arity: c.aux_arity(), basis, differentials };
    serde_json::to_value(doc).expect("serializable")
}

pub fn complex_from_json(v: &Value) -> Result<GradedChainComplex, AlgebraError> {
    let doc: ComplexDoc = serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(AlgebraError::Malformed(format!("unsupported schemaVersion {}", doc.schema_version)));
    }
    doc.ring.check()?;
    let mut basis: BTreeMap<i64, Vec<BasisElement>> = BTreeMap::new();
    for b in doc.basis {
        basis.entry(b.degree).or_default().push(BasisElement::new(b.label, b.degree, b.aux));
    }
    let mut differentials = BTreeMap::new();
    for d in doc.differentials {
        let mut m = ExactMatrix::zeros(doc.ring, d.rows, d.cols);
        for e in d.entries {
            if e.row >= d.rows || e.col >= d.cols {
                return Err(AlgebraError::Malformed(format!("entry ({}, {}) out of range", e.row, e.col)));
            }
            m.set(e.row, e.col, elem_from_value(doc.ring, &e.value)?);
        }
        differentials.insert(d.degree, m);
    }
    GradedChainComplex::new(doc.ring, doc.aux_arity, basis, differentials)
}

pub fn homology_to_json(h: &HomologySummary) -> Value {
    let groups = h
        .groups
        .iter()
        .map(|((degree, aux), g)| GroupDoc {
            degree: *degree,
            aux: aux.clone(),
            free_rank: g.free_rank,
            torsion: g.torsion.iter().map(int_value).collect(),
        })
        .collect();
    serde_json::to_value(HomologyDoc { schema_version: SCHEMA_VERSION, ring: h.ring, graded: h.graded, groups })
        .expect("serializable")
}

pub fn homology_from_json(v: &Value) -> Result<HomologySummary, AlgebraError> {
    let doc: HomologyDoc = serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
    let mut groups = BTreeMap::new();
    for g in doc.groups {
        let torsion = g.torsion.iter().map(parse_int).collect::<Result<_, _>>()?;
        groups.insert((g.degree, g.aux), HomologyGroup { free_rank: g.free_rank, torsion });
    }
    Ok(HomologySummary { ring: doc.ring, graded: doc.graded, groups })
}
