//! JSON forms of kernel specs and vertex payloads, with a `variant`
//! discriminator. Both directions are self-describing (payloads carry
//! their field data), so fixtures and experiment configs can be parsed
//! without ambient context.

use serde_json::{json, Value};

use super::{KernelError, KernelSpec, PowerParam, ProbabilityVector, SPolicyFF, Schedule, VertexPayload};
use crate::arith_ff::{FqField, PlaceFF, Poly};
use crate::arith_nf::{arch_places, split_prime, NfElement, NumberField};
use crate::hierlattice::{HierParams, HierPoint};

fn parse_err(msg: impl Into<String>) -> KernelError {
    KernelError::Parse(msg.into())
}

fn get_f64(v: &Value, key: &str) -> Result<f64, KernelError> {
    v.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| parse_err(format!("missing numeric field {key:?}")))
}

fn get_u64(v: &Value, key: &str) -> Result<u64, KernelError> {
    v.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err(format!("missing integer field {key:?}")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str, KernelError> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err(format!("missing string field {key:?}")))
}

/// `{"q":2}` for a prime field, `{"p":2,"modulus":"1,1,1"}` for an
/// extension.
pub(crate) fn fq_from_json(v: &Value) -> Result<FqField, KernelError> {
    if let Some(modulus) = v.get("modulus").and_then(Value::as_str) {
        let p = get_u64(v, "p")? as u32;
        let coeffs: Result<Vec<u8>, _> = modulus
            .split(',')
            .map(|c| c.trim().parse::<u8>().map_err(|e| parse_err(e.to_string())))
            .collect();
        Ok(FqField::extension(p, coeffs?)?)
    } else {
        let q = get_u64(v, "q")? as u32;
        Ok(FqField::prime(q)?)
    }
}

fn fq_to_json(field: &FqField) -> Value {
    match field.modulus() {
        Some(m) => json!({
            "p": field.p(),
            "modulus": m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
        }),
        None => json!({ "q": field.q() }),
    }
}

fn field_nf_from_json(v: &Value, key: &str) -> Result<NumberField, KernelError> {
    serde_json::from_value(v.get(key).cloned().unwrap_or(Value::Null))
        .map_err(|e| parse_err(format!("bad number field: {e}")))
}

fn power_param_from_json(v: &Value) -> Result<PowerParam, KernelError> {
    match v {
        Value::Number(n) => Ok(PowerParam::Finite(n.as_f64().unwrap())),
        Value::String(s) => match s.as_str() {
            "inf" | "+inf" => Ok(PowerParam::PlusInf),
            "-inf" => Ok(PowerParam::MinusInf),
            other => Err(parse_err(format!("bad power parameter {other:?}"))),
        },
        _ => Err(parse_err("t must be a number or \"±inf\"")),
    }
}

fn power_param_to_json(t: PowerParam) -> Value {
    match t {
        PowerParam::Finite(v) => json!(v),
        PowerParam::PlusInf => json!("inf"),
        PowerParam::MinusInf => json!("-inf"),
    }
}

fn schedule_from_json(v: &Value) -> Result<Schedule, KernelError> {
    serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("bad schedule: {e}")))
}

pub fn kernel_spec_from_json(v: &Value) -> Result<KernelSpec, KernelError> {
    let variant = get_str(v, "variant")?;
    Ok(match variant {
        "lattice" => KernelSpec::Lattice { alpha: get_f64(v, "alpha")? },
        "power_mean" => {
            let t = power_param_from_json(
                v.get("t").ok_or_else(|| parse_err("power_mean needs \"t\""))?,
            )?;
            let lambda = match v.get("lambda") {
                None | Some(Value::Null) => None,
                Some(l) => Some(ProbabilityVector(
                    serde_json::from_value(l.clone())
                        .map_err(|e| parse_err(format!("bad lambda: {e}")))?,
                )),
            };
            KernelSpec::PowerMean { alpha: get_f64(v, "alpha")?, t, lambda }
        }
        "toric" => KernelSpec::Toric { alpha: get_f64(v, "alpha")? },
        "toric_mixed" => KernelSpec::ToricMixed { alpha: get_f64(v, "alpha")? },
        "hier" => KernelSpec::Hier {
            alpha: get_f64(v, "alpha")?,
            params: HierParams::new(get_u64(v, "l")? as u32, get_u64(v, "n")? as u32)?,
        },
        "ff_local" => {
            let field = fq_from_json(v)?;
            let pi = Poly::parse(&field, get_str(v, "pi")?)?;
            KernelSpec::FfLocal { alpha: get_f64(v, "alpha")?, place: PlaceFF::finite(pi)? }
        }
        "ff_infty" => KernelSpec::FfInfty { alpha: get_f64(v, "alpha")? },
        "nf_local" => {
            let field = field_nf_from_json(v, "field")?;
            let p = get_u64(v, "p")?;
            let index = v.get("place_index").and_then(Value::as_u64).unwrap_or(0) as usize;
            let places = split_prime(field, p)?;
            let place = places
                .get(index)
                .ok_or_else(|| parse_err(format!("only {} places over {p}", places.len())))?
                .non_arch()
                .unwrap()
                .clone();
            KernelSpec::NfLocal { alpha: get_f64(v, "alpha")?, place }
        }
        "nf_arch" => {
            let field = field_nf_from_json(v, "field")?;
            let index = v.get("index").and_then(Value::as_u64).unwrap_or(0) as usize;
            let place = *arch_places(field)
                .get(index)
                .ok_or_else(|| parse_err("archimedean index out of range"))?;
            KernelSpec::NfArch { alpha: get_f64(v, "alpha")?, place }
        }
        "adelic_ff" => {
            let field = fq_from_json(v)?;
            let s_policy = if let Some(list) = v.get("s_places").and_then(Value::as_array) {
                let mut places = Vec::with_capacity(list.len());
                for entry in list {
                    let text = entry.as_str().ok_or_else(|| parse_err("s_places entries are strings"))?;
                    places.push(PlaceFF::finite(Poly::parse(&field, text)?)?);
                }
                SPolicyFF::Explicit(places)
            } else {
                SPolicyFF::DivisorSupport {
                    max_degree: get_u64(v, "s_max_degree").unwrap_or(8) as u32,
                }
            };
            let numerator = match v.get("numerator") {
                None | Some(Value::Null) => vec![1],
                Some(n) => serde_json::from_value(n.clone())
                    .map_err(|e| parse_err(format!("bad numerator: {e}")))?,
            };
            KernelSpec::AdelicFf {
                field,
                alpha: schedule_from_json(
                    v.get("alpha").ok_or_else(|| parse_err("adelic_ff needs \"alpha\""))?,
                )?,
                s_policy,
                numerator,
                tail_truncation: v.get("tail_truncation").and_then(Value::as_u64).unwrap_or(12)
                    as u32,
            }
        }
        "adelic_nf" => KernelSpec::AdelicNf {
            field: field_nf_from_json(v, "field")?,
            alpha: schedule_from_json(
                v.get("alpha").ok_or_else(|| parse_err("adelic_nf needs \"alpha\""))?,
            )?,
            pmax: get_u64(v, "pmax")?,
        },
        "arch_adelic" => KernelSpec::ArchAdelic {
            field: field_nf_from_json(v, "field")?,
            alpha: get_f64(v, "alpha")?,
        },
        other => return Err(parse_err(format!("unknown kernel variant {other:?}"))),
    })
}

pub fn kernel_spec_to_json(spec: &KernelSpec) -> Value {
    match spec {
        KernelSpec::Lattice { alpha } => json!({"variant": "lattice", "alpha": alpha}),
        KernelSpec::PowerMean { alpha, t, lambda } => {
            let mut v = json!({"variant": "power_mean", "alpha": alpha, "t": power_param_to_json(*t)});
            if let Some(l) = lambda {
                v["lambda"] = json!(l.0);
            }
            v
        }
        KernelSpec::Toric { alpha } => json!({"variant": "toric", "alpha": alpha}),
        KernelSpec::ToricMixed { alpha } => json!({"variant": "toric_mixed", "alpha": alpha}),
        KernelSpec::Hier { alpha, params } => {
            json!({"variant": "hier", "alpha": alpha, "l": params.l, "n": params.n})
        }
        KernelSpec::FfLocal { alpha, place } => {
            let pi = place.pi().expect("finite place");
            let mut v = fq_to_json(pi.field());
            v["variant"] = json!("ff_local");
            v["alpha"] = json!(alpha);
            v["pi"] = json!(pi.to_text());
            v
        }
        KernelSpec::FfInfty { alpha } => json!({"variant": "ff_infty", "alpha": alpha}),
        KernelSpec::NfLocal { alpha, place } => {
            let index = split_prime(place.field, place.p)
                .map(|places| {
                    places
                        .iter()
                        .position(|q| q.non_arch().unwrap() == place)
                        .unwrap_or(0)
                })
                .unwrap_or(0);
            json!({
                "variant": "nf_local",
                "alpha": alpha,
                "field": serde_json::to_value(place.field).unwrap(),
                "p": place.p,
                "place_index": index,
            })
        }
        KernelSpec::NfArch { alpha, place } => json!({
            "variant": "nf_arch",
            "alpha": alpha,
            "field": serde_json::to_value(place.field).unwrap(),
            "index": place.index,
        }),
        KernelSpec::AdelicFf { field, alpha, s_policy, numerator, tail_truncation } => {
            let mut v = fq_to_json(field);
            v["variant"] = json!("adelic_ff");
            v["alpha"] = serde_json::to_value(alpha).unwrap();
            v["numerator"] = json!(numerator);
            v["tail_truncation"] = json!(tail_truncation);
            match s_policy {
                SPolicyFF::Explicit(places) => {
                    v["s_places"] = json!(places
                        .iter()
                        .filter_map(|p| p.pi().map(Poly::to_text))
                        .collect::<Vec<_>>());
                }
                SPolicyFF::DivisorSupport { max_degree } => {
                    v["s_max_degree"] = json!(max_degree);
                }
            }
            v
        }
        KernelSpec::AdelicNf { field, alpha, pmax } => json!({
            "variant": "adelic_nf",
            "field": serde_json::to_value(field).unwrap(),
            "alpha": serde_json::to_value(alpha).unwrap(),
            "pmax": pmax,
        }),
        KernelSpec::ArchAdelic { field, alpha } => json!({
            "variant": "arch_adelic",
            "field": serde_json::to_value(field).unwrap(),
            "alpha": alpha,
        }),
    }
}

pub fn payload_from_json(v: &Value) -> Result<VertexPayload, KernelError> {
    if let Some(coords) = v.get("lattice") {
        let coords: Vec<i64> = serde_json::from_value(coords.clone())
            .map_err(|e| parse_err(format!("bad lattice payload: {e}")))?;
        return Ok(VertexPayload::Lattice(coords));
    }
    if let Some(nf) = v.get("nf") {
        let el: NfElement = serde_json::from_value(nf.clone())
            .map_err(|e| parse_err(format!("bad nf payload: {e}")))?;
        return Ok(VertexPayload::Nf(el));
    }
    if let Some(h) = v.get("hier") {
        let params = HierParams::new(get_u64(h, "l")? as u32, get_u64(h, "n")? as u32)?;
        let point = HierPoint::parse(params, get_str(h, "digits")?)?;
        return Ok(VertexPayload::Hier(point));
    }
    if let Some(p) = v.get("poly") {
        let field = fq_from_json(p)?;
        return Ok(VertexPayload::Poly(Poly::parse(&field, get_str(p, "coeffs")?)?));
    }
    Err(parse_err("payload must have one of: lattice, nf, hier, poly"))
}

pub fn payload_to_json(payload: &VertexPayload) -> Value {
    match payload {
        VertexPayload::Lattice(coords) => json!({"lattice": coords}),
        VertexPayload::Nf(el) => json!({"nf": serde_json::to_value(el).unwrap()}),
        VertexPayload::Hier(point) => json!({"hier": {
            "l": point.params().l,
            "n": point.params().n,
            "digits": point.to_text(),
        }}),
        VertexPayload::Poly(poly) => {
            let mut field = fq_to_json(poly.field());
            field["coeffs"] = json!(poly.to_text());
            json!({ "poly": field })
        }
    }
}
