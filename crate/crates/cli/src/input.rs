use std::fs;

use burnside_core::algebra::GradedChainComplex;
use burnside_core::burnside::GroupId;
use burnside_core::cube::json::cube_from_json;
use burnside_core::cube::{quotient_cube, totalize, totalize_module_cube, BurnsideCube};
use burnside_core::khovanov::{
    annular_burnside_cube, khovanov_burnside_cube, parse_braid, parse_pd, quantum_annular_burnside_cube,
    theory_module_cube, Diagram, Theory,
};
use burnside_core::{CubeError, KhovanovError};

use crate::{Failure, InputArgs, TheoryArg, TheoryArgs};

pub const CROSSING_LIMIT: usize = 14;

pub enum Subject {
    Diagram { diagram: Diagram },
    Cube(BurnsideCube),
}

pub fn khovanov_failure(e: KhovanovError) -> Failure {
    match e {
        KhovanovError::Parse { .. } | KhovanovError::MalformedDiagram(_) => Failure::Input(e.to_string()),
        KhovanovError::Cube(c) => cube_failure(c),
        KhovanovError::NonMonomialStructureMap(_) => Failure::Validation(e.to_string()),
    }
}

pub fn cube_failure(e: CubeError) -> Failure {
    match e {
        CubeError::Malformed(_) | CubeError::Burnside(_) => Failure::Input(e.to_string()),
        other => Failure::Validation(other.to_string()),
    }
}

pub fn check_size(d: &Diagram, force: bool) -> Result<(), Failure> {
    if d.crossing_count() > CROSSING_LIMIT && !force {
        return Err(Failure::Input(format!(
            "{} crossings exceeds the limit of {CROSSING_LIMIT} (2^{CROSSING_LIMIT} states); pass --force to proceed",
            d.crossing_count()
        )));
    }
    Ok(())
}

pub fn load(args: &InputArgs) -> Result<Subject, Failure> {
    let text = match (&args.input, &args.file) {
        (Some(s), None) => s.clone(),
        (None, Some(p)) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        _ => return Err(Failure::Input("give the input inline or with --file".into())),
    };
    if let Some(m) = args.strands {
        let d = Diagram::from_braid(&parse_braid(&text, m).map_err(khovanov_failure)?);
        check_size(&d, args.force)?;
        return Ok(Subject::Diagram { diagram: d });
    }
    if args.pd {
        let d = Diagram::from_pd(&parse_pd(&text).map_err(khovanov_failure)?);
        check_size(&d, args.force)?;
        return Ok(Subject::Diagram { diagram: d });
    }
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!(
            "line {}, column {}: not a cube document ({e}); use --strands for braid words or --pd for PD codes",
            e.line().max(1),
            e.column().max(1)
        ))
    })?;
    Ok(Subject::Cube(cube_from_json(&v).map_err(cube_failure)?))
}

fn theory(t: TheoryArg) -> Theory {
    match t {
        TheoryArg::Classical => Theory::Classical,
        TheoryArg::Annular => Theory::Annular,
        TheoryArg::QuantumAnnular => Theory::QuantumAnnular,
    }
}

fn quotient_group(args: &TheoryArgs, subject: &Subject) -> Result<Option<u64>, Failure> {
    let Some(r) = args.quotient else {
        return Ok(None);
    };
    if r == 0 {
        return Err(Failure::Input("--quotient needs a positive integer".into()));
    }
    match subject {
        Subject::Diagram { .. } if args.theory != TheoryArg::QuantumAnnular => {
            Err(Failure::Input("--quotient is only valid with --theory quantum-annular".into()))
        }
        _ => Ok(Some(r)),
    }
}

fn diagram_only(args: &TheoryArgs) -> Result<(), Failure> {
    if args.theory != TheoryArg::Classical {
        return Err(Failure::Input("--theory applies to diagrams, not cube documents".into()));
    }
    Ok(())
}

pub fn burnside_cube(subject: &Subject, args: &TheoryArgs) -> Result<BurnsideCube, Failure> {
    let r = quotient_group(args, subject)?;
    let cube = match subject {
        Subject::Diagram { diagram } => match args.theory {
            TheoryArg::Classical => khovanov_burnside_cube(diagram),
            TheoryArg::Annular => annular_burnside_cube(diagram),
            TheoryArg::QuantumAnnular => quantum_annular_burnside_cube(diagram),
        }
        .map_err(khovanov_failure)?,
        Subject::Cube(c) => {
            diagram_only(args)?;
            c.clone()
        }
    };
    match r {
        Some(r) => quotient_cube(&cube, r).map_err(cube_failure),
        None => Ok(cube),
    }
}

/// The Khovanov-type complex of a diagram, or the totalization of a cube.
pub fn complex(subject: &Subject, args: &TheoryArgs) -> Result<GradedChainComplex, Failure> {
    let r = quotient_group(args, subject)?;
    match subject {
        Subject::Diagram { diagram } => {
            let mut m = theory_module_cube(diagram, theory(args.theory)).map_err(khovanov_failure)?;
            if let Some(r) = r {
                let ring = GroupId::cyclic(r).map_err(|e| Failure::Input(e.to_string()))?.ring();
                let q = ring.q_pow(1).unwrap_or_else(|| ring.one());
                m = m.specialize(ring, &q).map_err(cube_failure)?;
            }
            totalize_module_cube(&m).map_err(cube_failure)
        }
        Subject::Cube(_) => {
            let cube = burnside_cube(subject, args)?;
            totalize(&cube).map_err(cube_failure)
        }
    }
}

pub fn aux_names(subject: &Subject, args: &TheoryArgs, arity: usize) -> Vec<String> {
    match subject {
        Subject::Diagram { .. } if args.theory == TheoryArg::Classical => vec!["j".into()],
        Subject::Diagram { .. } => vec!["j".into(), "k".into()],
        Subject::Cube(_) => (1..=arity).map(|i| format!("a{i}")).collect(),
    }
}
