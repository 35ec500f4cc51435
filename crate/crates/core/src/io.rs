//! JSON encodings. Scalars are exact strings (`"num/den"`, or the canonical
//! residue over `𝔽_p`); algebra elements are coefficient triples in the
//! basis `1, θ, θ²`.

use serde_json::{json, Value};

use crate::cubealg::{AlgebraElement, BaseField, ResolventElement, Scalar};
use crate::error::{Error, Result};
use crate::invariant::QuadForm;
use crate::space::{GroupElement, Point, Space};
use crate::strata::StratumReport;

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalar_from_json(field: BaseField, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) if n.is_i64() => Ok(field.from_i64(n.as_i64().expect("i64"))),
        _ => Err(Error::Parse(format!("expected an exact number, got {v}"))),
    }
}

pub fn element_to_json(a: &AlgebraElement) -> Value {
    Value::Array(a.coeffs().iter().map(scalar_to_json).collect())
}

pub fn element_from_json(field: BaseField, v: &Value) -> Result<AlgebraElement> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Parse(format!("expected a coefficient triple, got {v}")))?;
    Ok(AlgebraElement::new(
        scalar_from_json(field, &arr[0])?,
        scalar_from_json(field, &arr[1])?,
        scalar_from_json(field, &arr[2])?,
    ))
}

pub fn resolvent_to_json(b: &ResolventElement) -> Value {
    json!({"p": element_to_json(&b.p), "q": element_to_json(&b.q)})
}

pub fn point_to_json(x: &Point) -> Value {
    json!({
        "x111": scalar_to_json(&x.x111),
        "x211": element_to_json(&x.x211),
        "x122": element_to_json(&x.x122),
        "x222": scalar_to_json(&x.x222),
    })
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn point_from_json(space: &Space, v: &Value) -> Result<Point> {
    let f = space.field();
    Ok(Point::new(
        scalar_from_json(f, field_of(v, "x111")?)?,
        element_from_json(f, field_of(v, "x211")?)?,
        element_from_json(f, field_of(v, "x122")?)?,
        scalar_from_json(f, field_of(v, "x222")?)?,
    ))
}

pub fn group_to_json(g: &GroupElement) -> Value {
    let row = |r: &[AlgebraElement; 2]| json!([element_to_json(&r[0]), element_to_json(&r[1])]);
    json!({"t1": scalar_to_json(&g.t1), "g2": [row(&g.g2[0]), row(&g.g2[1])]})
}

/// Parses and validates (`t₁ ≠ 0`, `N(det g₂) ≠ 0`).
pub fn group_from_json(space: &Space, v: &Value) -> Result<GroupElement> {
    let f = space.field();
    let t1 = scalar_from_json(f, field_of(v, "t1")?)?;
    let rows = field_of(v, "g2")?
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| Error::Parse("g2 must be a 2×2 array".into()))?;
    let mut g2 = Vec::with_capacity(2);
    for r in rows {
        let r = r
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| Error::Parse("g2 must be a 2×2 array".into()))?;
        g2.push([element_from_json(f, &r[0])?, element_from_json(f, &r[1])?]);
    }
    let [r0, r1]: [[AlgebraElement; 2]; 2] = g2.try_into().expect("two rows");
    space.group_element(t1, [r0, r1])
}

pub fn quad_form_to_json(q: &QuadForm) -> Value {
    json!({
        "a": resolvent_to_json(&q.a),
        "b": resolvent_to_json(&q.b),
        "c": resolvent_to_json(&q.c),
    })
}

pub fn report_to_json(r: &StratumReport) -> Value {
    json!({
        "label": r.label.name(),
        "witness": r.witness.as_ref().map(group_to_json),
        "normalized": r.normalized.as_ref().map(point_to_json),
        "transcript": r.transcript,
    })
}
