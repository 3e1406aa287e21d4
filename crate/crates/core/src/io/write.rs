use serde_json::{json, Value};

use crate::exactmath::{FieldSpec, Scalar};
use crate::freeprod::FiniteGroup;
use crate::gset::GSet;
use crate::rewrite::{LieData, RewriteSystem};
use crate::tensoralg::{StructAlgebra, TensorElement};

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "table": g.table(), "names": g.names() })
}

pub fn algebra_to_json(r: &StructAlgebra) -> Value {
    let d = r.dim();
    let structure: Vec<Value> = (0..d)
        .map(|i| Value::Array((0..d).map(|j| scalars(r.basis_product(i, j))).collect()))
        .collect();
    json!({
        "dim": d,
        "field": FieldSpec::from(r.field()),
        "structure": structure,
        "unit": scalars(&r.one()),
        "names": r.names(),
    })
}

pub fn lie_to_json(l: &LieData) -> Value {
    let d = l.dim();
    let brackets: Vec<Value> = (0..d)
        .map(|i| Value::Array((0..d).map(|j| scalars(l.basis_bracket(i, j))).collect()))
        .collect();
    json!({ "dim": d, "field": FieldSpec::from(l.field()), "brackets": brackets, "names": l.names() })
}

/// Generators are written in precedence order, so `precedence` equals `generators`.
pub fn system_to_json(rs: &RewriteSystem) -> Value {
    let name = |g: &u32| rs.generators()[*g as usize].clone();
    let rules: Vec<Value> = rs
        .rules()
        .iter()
        .map(|rule| {
            let rhs: Vec<Value> = rule
                .rhs
                .terms()
                .iter()
                .rev()
                .map(|(m, c)| json!({ "word": m.letters().iter().map(name).collect::<Vec<_>>(), "coeff": c.to_string() }))
                .collect();
            json!({ "lhs": rule.lhs.iter().map(name).collect::<Vec<_>>(), "rhs": rhs })
        })
        .collect();
    json!({
        "field": FieldSpec::from(rs.field()),
        "generators": rs.generators(),
        "precedence": rs.generators(),
        "rules": rules,
    })
}

pub fn gset_to_json(a: &GSet<'_>, group_path: &str) -> Value {
    json!({ "group": group_path, "points": a.points(), "action": a.action() })
}

pub fn tensor_to_json(t: &TensorElement) -> Value {
    let d = t.dim();
    let w: Vec<Value> = t.coords().chunks(d).map(scalars).collect();
    json!({ "w": w })
}

/// Pretty-printed JSON with arrays of plain values kept on one line.
pub fn render_json(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(xs) if !xs.is_empty() && !is_flat(v) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render_into(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                render_into(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(xs) => {
            let items: Vec<String> = xs.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
