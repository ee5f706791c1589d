use std::path::Path;

use serde_json::Value;

use crate::error::Error;
use crate::grid::GridFunction;
use crate::profile::StepProfile;

/// A parsed input file: either a step profile or a grid function.
/// Step files: {"type":"step","atoms":[[value,mass],...]}
/// Grid files: {"type":"grid","dim":1,"box":[[a,b]],"resolution":[n],"cells":[...]}
/// (dim 2 grids carry two box pairs, two resolutions, row-major cells).
#[derive(Debug, Clone)]
pub enum InputFunction {
    Step(StepProfile),
    Grid(GridFunction),
}

pub fn parse_function(text: &str) -> Result<InputFunction, Error> {
    // serde_json already rejects NaN/Inf literals at the lexer level
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    let kind = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field \"type\"".into()))?;
    match kind {
        "step" => parse_step(&v),
        "grid" => parse_grid(&v),
        other => Err(Error::Parse(format!(
            "unknown type {other:?}, expected \"step\" or \"grid\""
        ))),
    }
}

pub fn load_function(path: &Path) -> Result<InputFunction, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_function(&text)
}

fn parse_step(v: &Value) -> Result<InputFunction, Error> {
    let atoms_val = v
        .get("atoms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("step input needs an \"atoms\" array".into()))?;
    let mut atoms = Vec::with_capacity(atoms_val.len());
    for (i, entry) in atoms_val.iter().enumerate() {
        let pair = entry
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("atom {i} must be a [value, mass] pair")))?;
        let value = pair[0]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("atom {i} value is not a number")))?;
        let mass = pair[1]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("atom {i} mass is not a number")))?;
        atoms.push((value, mass));
    }
    Ok(InputFunction::Step(StepProfile::new(&atoms)?))
}

fn parse_grid(v: &Value) -> Result<InputFunction, Error> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("grid input needs an integer \"dim\"".into()))?;
    if dim != 1 && dim != 2 {
        return Err(Error::Parse(format!("dim must be 1 or 2, got {dim}")));
    }
    let boxes = v
        .get("box")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("grid input needs a \"box\" array of [lo, hi] pairs".into()))?;
    let mut bounds = Vec::with_capacity(boxes.len());
    for (axis, pair) in boxes.iter().enumerate() {
        let pair = pair
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("box axis {axis} must be a [lo, hi] pair")))?;
        let lo = pair[0]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("box axis {axis} lower bound is not a number")))?;
        let hi = pair[1]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("box axis {axis} upper bound is not a number")))?;
        bounds.push((lo, hi));
    }
    let res_val = v
        .get("resolution")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("grid input needs a \"resolution\" array".into()))?;
    let mut resolution = Vec::with_capacity(res_val.len());
    for (axis, n) in res_val.iter().enumerate() {
        let n = n
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("resolution axis {axis} is not an integer")))?;
        resolution.push(n as usize);
    }
    let cells_val = v
        .get("cells")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("grid input needs a \"cells\" array".into()))?;
    let mut cells = Vec::with_capacity(cells_val.len());
    for (i, c) in cells_val.iter().enumerate() {
        cells.push(
            c.as_f64()
                .ok_or_else(|| Error::Parse(format!("cell {i} is not a number")))?,
        );
    }
    Ok(InputFunction::Grid(GridFunction::build(
        dim as u8, bounds, resolution, cells,
    )?))
}

/// Compact JSON descriptor that round-trips through `parse_function`.
pub fn step_to_json(p: &StepProfile) -> String {
    let atoms: Vec<Value> = p
        .atoms()
        .iter()
        .map(|a| Value::from(vec![a.value, a.mass]))
        .collect();
    serde_json::json!({"type": "step", "atoms": atoms}).to_string()
}

pub fn grid_to_json(g: &GridFunction) -> String {
    let boxes: Vec<Value> = g
        .bounds()
        .iter()
        .map(|(a, b)| Value::from(vec![*a, *b]))
        .collect();
    serde_json::json!({
        "type": "grid",
        "dim": g.dim(),
        "box": boxes,
        "resolution": g.resolution(),
        "cells": g.cells(),
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_step_profiles() {
        let f = parse_function(r#"{"type":"step","atoms":[[2,1],[1,1]]}"#).unwrap();
        match f {
            InputFunction::Step(p) => assert_eq!(p.total_mass(), 2.0),
            _ => panic!("expected step"),
        }
        assert!(parse_function(r#"{"type":"step","atoms":[[1,-1]]}"#).is_err());
        assert!(parse_function(r#"{"type":"step","atoms":[[1,NaN]]}"#).is_err());
        assert!(parse_function(r#"{"type":"step"}"#).is_err());
    }

    #[test]
    fn parses_grids() {
        let f = parse_function(
            r#"{"type":"grid","dim":1,"box":[[0,2]],"resolution":[2],"cells":[1,-1]}"#,
        )
        .unwrap();
        match f {
            InputFunction::Grid(g) => {
                assert_eq!(g.cells(), &[1.0, -1.0]);
                assert_eq!(g.cell_volume(), 1.0);
            }
            _ => panic!("expected grid"),
        }
        assert!(parse_function(
            r#"{"type":"grid","dim":1,"box":[[0,2]],"resolution":[3],"cells":[1,-1]}"#
        )
        .is_err());
        assert!(parse_function(r#"{"type":"blob"}"#).is_err());
    }

    #[test]
    fn descriptors_round_trip() {
        let p = StepProfile::new(&[(2.5, 1.25), (1.0, 3.0)]).unwrap();
        let text = step_to_json(&p);
        match parse_function(&text).unwrap() {
            InputFunction::Step(q) => assert_eq!(p.atoms(), q.atoms()),
            _ => panic!(),
        }
        let g = GridFunction::new_1d((-1.0, 1.0), 4, vec![0.5, -0.25, 0.0, 3.0]).unwrap();
        match parse_function(&grid_to_json(&g)).unwrap() {
            InputFunction::Grid(h) => assert_eq!(g, h),
            _ => panic!(),
        }
    }
}
