//! The `.mm.json` multimatroid format.
//!
//! ```json
//! {"order": 2, "class_sizes": [2, 2], "kind": "circuits",
//!  "circuits": [[[0, "a"], [1, "b"]]]}
//! {"order": 1, "class_sizes": [2], "kind": "sheltered",
//!  "matrix": {"field": 2, "cols": 2, "rows": ["1 0"]},
//!  "columns": [[0, "a"], [0, "b"]]}
//! ```
//!
//! Elements are `[class, slot]` with slots written as letters; integer slots
//! are accepted on input. `columns[j]` names the element carried by column j.

use serde_json::{json, Value};

use crate::algebra::{Field, FieldMatrix, Gf4};
use crate::matroid::{Matroid, Realization};
use crate::multimatroid::{Carrier, MmRealization, Multimatroid, SLOT_NAMES};
use crate::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(format!("mm.json: {}", msg.into()))
}

pub fn element_json(car: &Carrier, e: usize) -> Value {
    json!([car.class_of(e), SLOT_NAMES[car.slot_of(e)].to_string()])
}

pub fn set_json(car: &Carrier, x: u64) -> Value {
    Value::Array(crate::bits::iter_bits(x).map(|e| element_json(car, e)).collect())
}

fn matrix_json(m: &FieldMatrix) -> Value {
    json!({
        "field": m.field().order(),
        "cols": m.cols(),
        "rows": (0..m.rows()).map(|i| m.row_string(i)).collect::<Vec<_>>(),
    })
}

pub fn mm_to_json(z: &Multimatroid) -> Result<Value> {
    let car = z.carrier();
    let mut v = json!({ "order": car.order(), "class_sizes": car.sizes() });
    match z.realization() {
        MmRealization::Sheltered(m) if matches!(m.realization(), Realization::Linear { .. }) => {
            v["kind"] = json!("sheltered");
            v["matrix"] = matrix_json(&m.matrix()?);
            v["columns"] = Value::Array((0..car.total()).map(|e| element_json(car, e)).collect());
        }
        _ => {
            v["kind"] = json!("circuits");
            v["circuits"] = Value::Array(z.circuits()?.iter().map(|&c| set_json(car, c)).collect());
        }
    }
    Ok(v)
}

/// `.mm.json` text; sorted keys, one trailing newline.
pub fn mm_to_string(z: &Multimatroid) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(&mm_to_json(z)?).expect("serializable")))
}

fn parse_element(car: &Carrier, v: &Value) -> Result<usize> {
    let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("element must be [class, slot]"))?;
    let class = pair[0].as_u64().ok_or_else(|| bad("class must be a nonnegative integer"))? as usize;
    let slot = match &pair[1] {
        Value::String(s) => {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => SLOT_NAMES.iter().position(|&n| n == c),
                _ => None,
            }
            .ok_or_else(|| bad(format!("unknown slot {s:?}")))?
        }
        Value::Number(n) => n.as_u64().ok_or_else(|| bad("slot must be a letter or integer"))? as usize,
        _ => return Err(bad("slot must be a letter or integer")),
    };
    if class >= car.order() || slot >= car.size(class) {
        return Err(Error::UnknownElement(format!("[{class}, {slot}]")));
    }
    Ok(car.elem(class, slot))
}

fn parse_matrix(v: &Value) -> Result<FieldMatrix> {
    let field = Field::from_order(v.get("field").and_then(Value::as_u64).ok_or_else(|| bad("matrix.field missing"))?)?;
    let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| bad("matrix.cols missing"))? as usize;
    let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| bad("matrix.rows must be an array"))?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let text = r.as_str().ok_or_else(|| bad("matrix rows are strings"))?;
        let row: Vec<Gf4> = text
            .split_whitespace()
            .map(|t| Gf4::parse(t).ok_or_else(|| bad(format!("bad matrix entry {t:?}"))))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(bad(format!("row {text:?} does not have {cols} entries")));
        }
        out.push(row);
    }
    if out.is_empty() {
        return Ok(FieldMatrix::zeros(field, 0, cols));
    }
    FieldMatrix::from_rows(field, &out)
}

pub fn mm_from_json(v: &Value) -> Result<Multimatroid> {
    let sizes: Vec<usize> = v
        .get("class_sizes")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("class_sizes must be an array"))?
        .iter()
        .map(|s| s.as_u64().map(|n| n as usize).ok_or_else(|| bad("class sizes are integers")))
        .collect::<Result<_>>()?;
    if let Some(order) = v.get("order") {
        if order.as_u64() != Some(sizes.len() as u64) {
            return Err(bad("order disagrees with class_sizes"));
        }
    }
    let car = Carrier::new(sizes)?;
    let set = |x: &Value| -> Result<u64> {
        let items = x.as_array().ok_or_else(|| bad("a set is an array of elements"))?;
        items.iter().try_fold(0u64, |m, e| Ok(m | 1 << parse_element(&car, e)?))
    };
    match v.get("kind").and_then(Value::as_str) {
        Some("circuits") => {
            let cs = v.get("circuits").and_then(Value::as_array).ok_or_else(|| bad("circuits must be an array"))?;
            let circuits = cs.iter().map(set).collect::<Result<Vec<_>>>()?;
            Multimatroid::from_circuits(car, circuits)
        }
        Some("sheltered") => {
            let m = parse_matrix(v.get("matrix").ok_or_else(|| bad("sheltered kind needs a matrix"))?)?;
            let cols = v.get("columns").and_then(Value::as_array).ok_or_else(|| bad("columns must be an array"))?;
            if cols.len() != m.cols() || cols.len() != car.total() {
                return Err(Error::CarrierMismatch(format!(
                    "{} columns for a matrix with {} columns and a carrier with {} elements",
                    cols.len(),
                    m.cols(),
                    car.total()
                )));
            }
            let mut order = vec![usize::MAX; car.total()];
            for (j, c) in cols.iter().enumerate() {
                let e = parse_element(&car, c)?;
                if order[e] != usize::MAX {
                    return Err(bad("an element is named by two columns"));
                }
                order[e] = j;
            }
            let matroid = Matroid::from_matrix(&m.select_columns(&order), Some(car.labels()))?;
            Multimatroid::sheltered(car, matroid)
        }
        _ => Err(bad("kind must be \"circuits\" or \"sheltered\"")),
    }
}

pub fn parse_mm(text: &str) -> Result<Multimatroid> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    mm_from_json(&v)
}
