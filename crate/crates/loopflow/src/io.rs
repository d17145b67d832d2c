//! JSON document formats.
//!
//! Four self-describing document types, each tagged with a `schema` field:
//!
//! * `edgeflux/1` — `{"schema", "width", "height", "h", "v"}` where `h` is
//!   `height + 1` rows of `width` values (row `j` holds `H(i, j)`) and `v`
//!   is `height` rows of `width + 1` values (row `j` holds `V(i, j)`).
//! * `cellfield/1` — `{"schema", "width", "height", "cells"}` with
//!   `height` rows of `width` values.
//! * `curves/1` — `{"schema", "grid": {"width", "height"}, "curves"}`;
//!   each curve is `{"weight", "closed", "nodes": [[x, y], ...]}` and a
//!   closed curve repeats its first node at the end.
//! * `polycurves/1` — `{"schema", "c", "curves"}`; each curve is
//!   `{"weight", "closed", "points": [[x, y], ...]}` with real
//!   coordinates, and closed curves do *not* repeat the first point.
//!
//! Values serialize through the scalar backend: integers as JSON numbers,
//! non-integral rationals as `"p/q"` strings, floats as JSON numbers at
//! full round-trip precision. Writers are deterministic (sorted keys,
//! fixed layout), so identical inputs produce identical bytes.

use serde_json::Value;

use crate::curves::{CurveSuperposition, LatticeCurve, WeightedCurve};
use crate::error::{Error, Result};
use crate::grid::{CellField, Cell, Edge, EdgeFlux, GridSpec, Node};
use crate::rigidity::{PolyCurve, RigidityInput};
use crate::scalar::Scalar;

/// Largest width/height accepted from a document; guards allocation.
pub const MAX_PARSE_SIZE: u32 = 4096;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_root<'a>(text: &'a str, schema: &str) -> Result<serde_json::Map<String, Value>> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("invalid JSON at line {}, column {}: {e}", e.line(), e.column())))?;
    let Value::Object(map) = value else {
        return Err(parse_err("document root must be a JSON object"));
    };
    match map.get("schema").and_then(Value::as_str) {
        Some(found) if found == schema => Ok(map),
        Some(found) => Err(parse_err(format!(
            "wrong schema: expected \"{schema}\", found \"{found}\""
        ))),
        None => Err(parse_err(format!(
            "missing \"schema\" field (expected \"{schema}\")"
        ))),
    }
}

fn get_dimension(map: &serde_json::Map<String, Value>, key: &str) -> Result<u32> {
    let n = map
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err(format!("\"{key}\" must be a non-negative integer")))?;
    if n < 1 || n > MAX_PARSE_SIZE as u64 {
        return Err(parse_err(format!(
            "\"{key}\" must be between 1 and {MAX_PARSE_SIZE}, got {n}"
        )));
    }
    Ok(n as u32)
}

fn get_rows<'a>(
    map: &'a serde_json::Map<String, Value>,
    key: &str,
    rows: usize,
    cols: usize,
) -> Result<Vec<&'a Vec<Value>>> {
    let outer = map
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(format!("\"{key}\" must be an array of rows")))?;
    if outer.len() != rows {
        return Err(parse_err(format!(
            "\"{key}\" must have {rows} rows, got {}",
            outer.len()
        )));
    }
    let mut result = Vec::with_capacity(rows);
    for (j, row) in outer.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("\"{key}\"[{j}] must be an array")))?;
        if row.len() != cols {
            return Err(parse_err(format!(
                "\"{key}\"[{j}] must have {cols} entries, got {}",
                row.len()
            )));
        }
        result.push(row);
    }
    Ok(result)
}

fn scalar_at<S: Scalar>(value: &Value, place: impl Fn() -> String) -> Result<S> {
    S::from_json(value)
        .ok_or_else(|| parse_err(format!("{}: expected a number or \"p/q\" string", place())))
}

fn scalar_rows<S: Scalar>(rows: &[&[S]]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| Value::Array(row.iter().map(S::to_json).collect()))
            .collect(),
    )
}

fn render(value: Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("in-memory JSON serializes");
    text.push('\n');
    text
}

/// Serialize an edge flux as an `edgeflux/1` document.
pub fn write_edge_flux<S: Scalar>(mu: &EdgeFlux<S>) -> String {
    let grid = mu.grid();
    render(serde_json::json!({
        "schema": "edgeflux/1",
        "width": grid.width,
        "height": grid.height,
        "h": scalar_rows(&mu.h_rows()),
        "v": scalar_rows(&mu.v_rows()),
    }))
}

/// Parse an `edgeflux/1` document.
pub fn read_edge_flux<S: Scalar>(text: &str) -> Result<EdgeFlux<S>> {
    let map = parse_root(text, "edgeflux/1")?;
    let width = get_dimension(&map, "width")?;
    let height = get_dimension(&map, "height")?;
    let grid = GridSpec::new(width, height);
    let mut mu = EdgeFlux::zeros(grid);
    let h = get_rows(&map, "h", height as usize + 1, width as usize)?;
    for (j, row) in h.iter().enumerate() {
        for (i, value) in row.iter().enumerate() {
            let s = scalar_at::<S>(value, || format!("\"h\"[{j}][{i}]"))?;
            mu.set(Edge::H(i as u32, j as u32), s);
        }
    }
    let v = get_rows(&map, "v", height as usize, width as usize + 1)?;
    for (j, row) in v.iter().enumerate() {
        for (i, value) in row.iter().enumerate() {
            let s = scalar_at::<S>(value, || format!("\"v\"[{j}][{i}]"))?;
            mu.set(Edge::V(i as u32, j as u32), s);
        }
    }
    Ok(mu)
}

/// Serialize a cell field as a `cellfield/1` document.
pub fn write_cell_field<S: Scalar>(f: &CellField<S>) -> String {
    let grid = f.grid();
    let rows: Vec<&[S]> = f.values().chunks(grid.width as usize).collect();
    render(serde_json::json!({
        "schema": "cellfield/1",
        "width": grid.width,
        "height": grid.height,
        "cells": scalar_rows(&rows),
    }))
}

/// Parse a `cellfield/1` document.
pub fn read_cell_field<S: Scalar>(text: &str) -> Result<CellField<S>> {
    let map = parse_root(text, "cellfield/1")?;
    let width = get_dimension(&map, "width")?;
    let height = get_dimension(&map, "height")?;
    let grid = GridSpec::new(width, height);
    let mut f = CellField::zeros(grid);
    let cells = get_rows(&map, "cells", height as usize, width as usize)?;
    for (j, row) in cells.iter().enumerate() {
        for (i, value) in row.iter().enumerate() {
            let s = scalar_at::<S>(value, || format!("\"cells\"[{j}][{i}]"))?;
            f.set(Cell { x: i as u32, y: j as u32 }, s);
        }
    }
    Ok(f)
}

fn node_pairs(curve: &LatticeCurve) -> Value {
    Value::Array(
        curve
            .nodes()
            .iter()
            .map(|n| serde_json::json!([n.x, n.y]))
            .collect(),
    )
}

/// Serialize a curve superposition as a `curves/1` document.
pub fn write_curves<S: Scalar>(eta: &CurveSuperposition<S>) -> String {
    let grid = eta.grid();
    let curves: Vec<Value> = eta
        .items()
        .iter()
        .map(|item| {
            serde_json::json!({
                "weight": item.weight.to_json(),
                "closed": item.curve.is_closed(),
                "nodes": node_pairs(&item.curve),
            })
        })
        .collect();
    render(serde_json::json!({
        "schema": "curves/1",
        "grid": { "width": grid.width, "height": grid.height },
        "curves": curves,
    }))
}

/// Parse a `curves/1` document.
pub fn read_curves<S: Scalar>(text: &str) -> Result<CurveSuperposition<S>> {
    let map = parse_root(text, "curves/1")?;
    let grid_map = map
        .get("grid")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_err("\"grid\" must be an object"))?;
    let width = get_dimension(grid_map, "width")?;
    let height = get_dimension(grid_map, "height")?;
    let grid = GridSpec::new(width, height);

    let raw = map
        .get("curves")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("\"curves\" must be an array"))?;
    let mut items = Vec::with_capacity(raw.len());
    for (k, entry) in raw.iter().enumerate() {
        let entry = entry
            .as_object()
            .ok_or_else(|| parse_err(format!("\"curves\"[{k}] must be an object")))?;
        let weight: S = scalar_at(
            entry.get("weight").unwrap_or(&Value::Null),
            || format!("\"curves\"[{k}].weight"),
        )?;
        if weight.sign() <= 0 {
            return Err(parse_err(format!(
                "\"curves\"[{k}].weight must be positive, got {weight}"
            )));
        }
        let closed = entry
            .get("closed")
            .and_then(Value::as_bool)
            .ok_or_else(|| parse_err(format!("\"curves\"[{k}].closed must be a boolean")))?;
        let raw_nodes = entry
            .get("nodes")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err(format!("\"curves\"[{k}].nodes must be an array")))?;
        let mut nodes = Vec::with_capacity(raw_nodes.len());
        for (n, pair) in raw_nodes.iter().enumerate() {
            let coords = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| {
                    parse_err(format!("\"curves\"[{k}].nodes[{n}] must be a pair [x, y]"))
                })?;
            let x = coords[0].as_u64();
            let y = coords[1].as_u64();
            let (Some(x), Some(y)) = (x, y) else {
                return Err(parse_err(format!(
                    "\"curves\"[{k}].nodes[{n}] must hold non-negative integers"
                )));
            };
            if x > width as u64 || y > height as u64 {
                return Err(parse_err(format!(
                    "\"curves\"[{k}].nodes[{n}] = ({x}, {y}) lies outside the {width}x{height} grid"
                )));
            }
            nodes.push(Node::new(x as u32, y as u32));
        }
        let curve = if closed {
            LatticeCurve::closed(nodes)
        } else {
            LatticeCurve::open(nodes)
        }
        .map_err(|e| parse_err(format!("\"curves\"[{k}]: {e}")))?;
        items.push(WeightedCurve { weight, curve });
    }
    Ok(CurveSuperposition::from_items(grid, items))
}

/// Serialize a rigidity input as a `polycurves/1` document.
pub fn write_polycurves(input: &RigidityInput) -> String {
    let curves: Vec<Value> = input
        .items
        .iter()
        .map(|(w, curve)| {
            serde_json::json!({
                "weight": w,
                "closed": curve.is_closed(),
                "points": curve
                    .points()
                    .iter()
                    .map(|p| serde_json::json!([p[0], p[1]]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    render(serde_json::json!({
        "schema": "polycurves/1",
        "c": input.c,
        "curves": curves,
    }))
}

/// Parse a `polycurves/1` document.
pub fn read_polycurves(text: &str) -> Result<RigidityInput> {
    let map = parse_root(text, "polycurves/1")?;
    let c = map
        .get("c")
        .and_then(Value::as_f64)
        .ok_or_else(|| parse_err("\"c\" must be a number"))?;
    let raw = map
        .get("curves")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("\"curves\" must be an array"))?;
    let mut items = Vec::with_capacity(raw.len());
    for (k, entry) in raw.iter().enumerate() {
        let entry = entry
            .as_object()
            .ok_or_else(|| parse_err(format!("\"curves\"[{k}] must be an object")))?;
        let weight = entry
            .get("weight")
            .and_then(Value::as_f64)
            .ok_or_else(|| parse_err(format!("\"curves\"[{k}].weight must be a number")))?;
        let closed = entry
            .get("closed")
            .and_then(Value::as_bool)
            .ok_or_else(|| parse_err(format!("\"curves\"[{k}].closed must be a boolean")))?;
        let raw_points = entry
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err(format!("\"curves\"[{k}].points must be an array")))?;
        let mut points = Vec::with_capacity(raw_points.len());
        for (n, pair) in raw_points.iter().enumerate() {
            let coords = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| {
                    parse_err(format!("\"curves\"[{k}].points[{n}] must be a pair [x, y]"))
                })?;
            let (Some(x), Some(y)) = (coords[0].as_f64(), coords[1].as_f64()) else {
                return Err(parse_err(format!(
                    "\"curves\"[{k}].points[{n}] must hold numbers"
                )));
            };
            points.push([x, y]);
        }
        let curve = if closed {
            PolyCurve::closed(points)
        } else {
            PolyCurve::open(points)
        }
        .map_err(|e| parse_err(format!("\"curves\"[{k}]: {e}")))?;
        items.push((weight, curve));
    }
    RigidityInput::new(items, c)
}
