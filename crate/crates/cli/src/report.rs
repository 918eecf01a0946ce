//! JSON rendering. Objects use serde_json's sorted maps, so key order is
//! canonical; big integers are strings.

use num_complex::Complex64;
use qinv_core::invariants::{InvariantKind, InvariantValue};
use qinv_core::ring::{CyclotomicNumber, LaurentPoly};
use serde_json::{json, Value};

fn float(x: f64) -> Value {
    // avoid printing -0.0
    json!(if x == 0.0 { 0.0 } else { x })
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": float(z.re), "im": float(z.im) })
}

/// `[[exponent, "coefficient"], ...]` in increasing exponent order.
pub fn laurent(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, c.to_string()])).collect())
}

/// Coordinates in the basis `1, ζ, ζ², …` together with a float value.
pub fn cyclotomic(x: &CyclotomicNumber) -> Value {
    let coeffs: Vec<String> = x.coeffs().iter().map(ToString::to_string).collect();
    json!({ "coeffs": coeffs, "approx": complex(x.complex_approx()) })
}

fn exponent_text(twice: i64) -> String {
    if twice % 2 == 0 {
        (twice / 2).to_string()
    } else {
        format!("{twice}/2")
    }
}

pub fn invariant(command: &str, link: &str, v: &InvariantValue) -> Value {
    let denominators: Vec<Value> = v
        .denominators
        .iter()
        .map(|d| {
            json!({
                "base": d.label,
                "value": cyclotomic(&d.base),
                "exponent": exponent_text(d.exponent_twice),
                "half_integral": d.is_half_integral(),
            })
        })
        .collect();
    let mut out = json!({
        "command": command,
        "link": link,
        "level": v.level.k(),
        "numerator": cyclotomic(&v.numerator),
        "denominators": denominators,
        "half_exponent": v.has_half_exponent(),
        "value": complex(v.approx),
        "inertia": {
            "b_plus": v.inertia.b_plus,
            "b_minus": v.inertia.b_minus,
            "nullity": v.inertia.nullity,
        },
        "ordinary": v.ordinary,
        "special": v.special,
    });
    if v.kind == InvariantKind::Broda && v.has_half_exponent() {
        out["branch"] = json!("principal square root");
    }
    out
}
