//! Regression checks over a corpus directory: `diagrams.json` plus optional
//! cube documents under `cubes/`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use burnside_core::algebra::json::SCHEMA_VERSION;
use burnside_core::algebra::{complexes_isomorphic, homology, HomologySummary, RingId};
use burnside_core::burnside::GroupId;
use burnside_core::cube::json::cube_from_json;
use burnside_core::cube::{dual_cube, quotient_cube, totalize, totalize_module_cube, validate_cube, BurnsideCube};
use burnside_core::khovanov::{
    annular_burnside_cube, annular_module_cube, kauffman_bracket_oracle, khovanov_burnside_cube, khovanov_module_cube,
    parse_corpus, quantum_annular_burnside_cube, quantum_annular_module_cube, Diagram,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::Failure;

type FamilyMembers<'a> = Vec<(&'a str, Result<HomologySummary, String>)>;

struct Check {
    subject: String,
    name: &'static str,
    outcome: Result<(), String>,
}

fn check(subject: &str, name: &'static str, f: impl FnOnce() -> Result<bool, String>) -> Check {
    let outcome = match f() {
        Ok(true) => Ok(()),
        Ok(false) => Err("identity does not hold".into()),
        Err(e) => Err(e),
    };
    Check { subject: subject.to_string(), name, outcome }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn q_image(r: RingId) -> burnside_core::algebra::Elem {
    r.q_pow(1).unwrap_or_else(|| r.one())
}

fn valid(f: &BurnsideCube) -> Result<bool, String> {
    validate_cube(f).map(|_| true).map_err(err)
}

fn diagram_checks(name: &str, d: &Diagram) -> Vec<Check> {
    let mut out = vec![
        check(name, "classical cube valid", || valid(&khovanov_burnside_cube(d).map_err(err)?)),
        check(name, "categorification", || {
            let c = totalize_module_cube(&khovanov_module_cube(d).map_err(err)?).map_err(err)?;
            Ok(c.graded_euler_characteristic(0).map_err(err)? == kauffman_bracket_oracle(d).map_err(err)?)
        }),
        check(name, "duality square", || {
            let f = khovanov_burnside_cube(d).map_err(err)?;
            let lhs = totalize(&f).map_err(err)?.finitely_supported_dual_with(f.dim() as i64, true);
            let rhs = totalize(&dual_cube(&f).map_err(err)?).map_err(err)?;
            Ok(complexes_isomorphic(&lhs, &rhs).is_some())
        }),
    ];
    if d.is_annular() {
        out.push(check(name, "annular cube valid", || valid(&annular_burnside_cube(d).map_err(err)?)));
        out.push(check(name, "quantum annular cube valid", || valid(&quantum_annular_burnside_cube(d).map_err(err)?)));
        out.push(check(name, "deformation", || {
            let q = quantum_annular_module_cube(d).map_err(err)?;
            let one = q.specialize(RingId::Integers, &RingId::Integers.one()).map_err(err)?;
            Ok(one.entries_equal(&annular_module_cube(d).map_err(err)?))
        }));
        out.push(check(name, "quotient square", || {
            let f = quantum_annular_burnside_cube(d).map_err(err)?;
            let total = totalize(&f).map_err(err)?;
            for r in 1..=3 {
                let ring = GroupId::cyclic(r).map_err(err)?.ring();
                let lhs = totalize(&quotient_cube(&f, r).map_err(err)?).map_err(err)?;
                if !lhs.entries_equal(&total.specialize(ring, &q_image(ring)).map_err(err)?) {
                    return Err(format!("fails for r = {r}"));
                }
            }
            Ok(true)
        }));
    }
    out
}

fn family_checks(entries: &[(String, Option<String>, Diagram)]) -> Vec<Check> {
    let mut families: BTreeMap<&str, FamilyMembers> = BTreeMap::new();
    let computed: Vec<_> = entries
        .par_iter()
        .filter_map(|(name, family, d)| {
            let family = family.as_deref()?;
            let h = khovanov_module_cube(d)
                .map_err(err)
                .and_then(|m| totalize_module_cube(&m).map_err(err))
                .and_then(|c| homology(&c).map_err(err));
            Some((family, name.as_str(), h))
        })
        .collect();
    for (family, name, h) in computed {
        families.entry(family).or_default().push((name, h));
    }
    families
        .into_iter()
        .map(|(family, members)| {
            let (first, h0) = &members[0];
            let outcome = members[1..].iter().try_for_each(|(name, h)| match (h0, h) {
                (Ok(a), Ok(b)) if a == b => Ok(()),
                (Ok(_), Ok(_)) => Err(format!("{name} differs from {first}")),
                (Err(e), _) => Err(format!("{first}: {e}")),
                (_, Err(e)) => Err(format!("{name}: {e}")),
            });
            Check { subject: format!("family {family}"), name: "invariance", outcome }
        })
        .collect()
}

fn cube_file_check(path: &Path) -> Check {
    let subject = format!("cube {}", path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned()));
    let outcome = (|| {
        let text = fs::read_to_string(path).map_err(err)?;
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("line {}, column {}: {e}", e.line().max(1), e.column().max(1)))?;
        let f = cube_from_json(&v).map_err(err)?;
        validate_cube(&f).map_err(err)?;
        totalize(&f).map_err(err)?.check_d_squared().map_err(err)
    })();
    Check { subject, name: "cube valid", outcome }
}

pub fn run(dir: &Path, json_out: bool) -> Result<String, Failure> {
    if !dir.is_dir() {
        return Err(Failure::Input(format!("corpus directory {} not found", dir.display())));
    }
    let diagrams_path = dir.join("diagrams.json");
    if !diagrams_path.is_file() {
        let empty = fs::read_dir(dir).map_err(|e| Failure::Input(e.to_string()))?.next().is_none();
        let what = if empty { "is empty" } else { "has no diagrams.json" };
        return Err(Failure::Input(format!("corpus directory {} {what}", dir.display())));
    }
    let text = fs::read_to_string(&diagrams_path).map_err(|e| Failure::Input(format!("{}: {e}", diagrams_path.display())))?;
    let entries = parse_corpus(&text).map_err(|e| Failure::Input(format!("{}: {e}", diagrams_path.display())))?;
    if entries.is_empty() {
        return Err(Failure::Input(format!("{} lists no diagrams", diagrams_path.display())));
    }
    let mut diagrams = Vec::with_capacity(entries.len());
    for e in &entries {
        let d = e.diagram().map_err(|err| Failure::Input(format!("diagram {}: {err}", e.name)))?;
        diagrams.push((e.name.clone(), e.family.clone(), d));
    }

    let mut cube_files: Vec<_> = match fs::read_dir(dir.join("cubes")) {
        Ok(rd) => rd
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(_) => Vec::new(),
    };
    cube_files.sort();

    let mut checks: Vec<Check> = diagrams.par_iter().flat_map(|(name, _, d)| diagram_checks(name, d)).collect();
    checks.extend(family_checks(&diagrams));
    checks.extend(cube_files.par_iter().map(|p| cube_file_check(p)).collect::<Vec<_>>());

    let failed = checks.iter().filter(|c| c.outcome.is_err()).count();
    let report = if json_out {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "subject": c.subject,
                    "check": c.name,
                    "passed": c.outcome.is_ok(),
                    "detail": c.outcome.as_ref().err(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&json!({
            "schemaVersion": SCHEMA_VERSION,
            "passed": checks.len() - failed,
            "failed": failed,
            "checks": rows,
        }))
        .expect("serializable")
            + "\n"
    } else {
        let mut s = String::new();
        for c in &checks {
            match &c.outcome {
                Ok(()) => s += &format!("PASS  {}: {}\n", c.subject, c.name),
                Err(e) => s += &format!("FAIL  {}: {}: {e}\n", c.subject, c.name),
            }
        }
        s + &format!("{} passed, {failed} failed\n", checks.len() - failed)
    };
    if failed == 0 {
        Ok(report)
    } else {
        Err(Failure::FailedReport(report))
    }
}
