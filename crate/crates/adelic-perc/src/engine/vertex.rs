//! Finite vertex sets: deterministic enumerations of boxes in `Z^N`,
//! `O_K`, the hierarchical lattice, and `F_q[t]`.

use serde::Serialize;
use serde_json::json;

use super::EngineError;
use crate::arith_nf::{NfElement, NumberField};
use crate::arith_ff::FqField;
use crate::hierlattice::{enumerate_ball_with_budget, HierParams};
use crate::kernels::VertexPayload;

/// Default cap on `|V|`.
pub const DEFAULT_VERTEX_BUDGET: u64 = 200_000;

/// The finite truncation a vertex set enumerates.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelBounds {
    /// `Z^dim ∩ [−radius, radius]^dim`.
    LatticeBox { dim: u32, radius: i64 },
    /// `{a + b·ω : |a|, |b| ≤ radius} ⊂ O_K`.
    NfBox { field: NumberField, radius: i64 },
    /// Hierarchical points supported on block indices `< max_index`.
    HierBall { params: HierParams, max_index: u32 },
    /// All polynomials with `deg < max_degree` (i.e. `max_degree`
    /// coefficients).
    PolyBox { field: FqField, max_degree: u32 },
}

impl ModelBounds {
    pub fn tag(&self) -> String {
        match self {
            ModelBounds::LatticeBox { dim, radius } => format!("lattice-z{dim}-r{radius}"),
            ModelBounds::NfBox { field, radius } => format!("nfbox-{}-r{radius}", field.name()),
            ModelBounds::HierBall { params, max_index } => {
                format!("hier-l{}-n{}-k{max_index}", params.l, params.n)
            }
            ModelBounds::PolyBox { field, max_degree } => {
                format!("poly-q{}-d{max_degree}", field.q())
            }
        }
    }

    pub fn describe_json(&self) -> serde_json::Value {
        match self {
            ModelBounds::LatticeBox { dim, radius } => {
                json!({"model": "lattice", "dim": dim, "radius": radius})
            }
            ModelBounds::NfBox { field, radius } => {
                json!({"model": "nf_box", "field": serde_json::to_value(field).unwrap(), "radius": radius})
            }
            ModelBounds::HierBall { params, max_index } => {
                json!({"model": "hier", "l": params.l, "n": params.n, "max_index": max_index})
            }
            ModelBounds::PolyBox { field, max_degree } => {
                json!({"model": "poly", "q": field.q(), "max_degree": max_degree})
            }
        }
    }
}

/// A deterministic enumeration of payloads with dense ids `0..len`.
#[derive(Debug, Clone)]
pub struct VertexSet {
    pub bounds: ModelBounds,
    pub payloads: Vec<VertexPayload>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.payloads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payloads.is_empty()
    }

    pub fn pair_count(&self) -> u64 {
        let n = self.len() as u64;
        n * (n - 1) / 2
    }
}

/// Summary of a vertex set for output headers.
#[derive(Debug, Clone, Serialize)]
pub struct VertexSetInfo {
    pub tag: String,
    pub vertices: u64,
}

/// Enumerates the vertex set of a model within the budget.
pub fn build_vertex_set(bounds: ModelBounds, budget: Option<u64>) -> Result<VertexSet, EngineError> {
    let budget = budget.unwrap_or(DEFAULT_VERTEX_BUDGET);
    let payloads = match &bounds {
        ModelBounds::LatticeBox { dim, radius } => {
            let side = 2 * *radius as u64 + 1;
            let total = side.checked_pow(*dim).ok_or(EngineError::Budget { needed: u64::MAX, budget })?;
            if total > budget {
                return Err(EngineError::Budget { needed: total, budget });
            }
            let mut payloads = Vec::with_capacity(total as usize);
            let mut coords = vec![-radius; *dim as usize];
            loop {
                payloads.push(VertexPayload::Lattice(coords.clone()));
                // odometer, last coordinate fastest
                let mut k = *dim as usize;
                loop {
                    if k == 0 {
                        return Ok(VertexSet { bounds, payloads });
                    }
                    k -= 1;
                    if coords[k] < *radius {
                        coords[k] += 1;
                        coords[k + 1..].iter_mut().for_each(|c| *c = -radius);
                        break;
                    }
                }
            }
        }
        ModelBounds::NfBox { field, radius } => {
            let r = *radius;
            match field {
                NumberField::Rationals => {
                    let total = (2 * r + 1) as u64;
                    if total > budget {
                        return Err(EngineError::Budget { needed: total, budget });
                    }
                    (-r..=r).map(|a| VertexPayload::Nf(NfElement::rational(a))).collect()
                }
                _ => {
                    let total = ((2 * r + 1) as u64).pow(2);
                    if total > budget {
                        return Err(EngineError::Budget { needed: total, budget });
                    }
                    let mut payloads = Vec::with_capacity(total as usize);
                    for a in -r..=r {
                        for b in -r..=r {
                            payloads.push(VertexPayload::Nf(NfElement::new(*field, a, b)));
                        }
                    }
                    payloads
                }
            }
        }
        ModelBounds::HierBall { params, max_index } => {
            enumerate_ball_with_budget(*params, *max_index, budget)
                .map_err(|_| EngineError::Budget {
                    needed: (u64::from(params.l)).saturating_pow(params.n * max_index),
                    budget,
                })?
                .into_iter()
                .map(VertexPayload::Hier)
                .collect()
        }
        ModelBounds::PolyBox { field, max_degree } => {
            let q = u64::from(field.q());
            let total = q.checked_pow(*max_degree).ok_or(EngineError::Budget { needed: u64::MAX, budget })?;
            if total > budget {
                return Err(EngineError::Budget { needed: total, budget });
            }
            let mut payloads = Vec::with_capacity(total as usize);
            for code in 0..total {
                let mut coeffs = Vec::with_capacity(*max_degree as usize);
                let mut c = code;
                for _ in 0..*max_degree {
                    coeffs.push((c % q) as u8);
                    c /= q;
                }
                payloads.push(VertexPayload::Poly(crate::arith_ff::Poly::new(
                    field.clone(),
                    coeffs,
                )));
            }
            payloads
        }
    };
    Ok(VertexSet { bounds, payloads })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        let z1 = build_vertex_set(ModelBounds::LatticeBox { dim: 1, radius: 100 }, None).unwrap();
        assert_eq!(z1.len(), 201);
        let h = build_vertex_set(
            ModelBounds::HierBall { params: HierParams::new(2, 1).unwrap(), max_index: 10 },
            None,
        )
        .unwrap();
        assert_eq!(h.len(), 1024);
        let f2 = FqField::prime(2).unwrap();
        let p = build_vertex_set(ModelBounds::PolyBox { field: f2, max_degree: 10 }, None).unwrap();
        assert_eq!(p.len(), 1024);
        let nf = build_vertex_set(
            ModelBounds::NfBox { field: NumberField::GaussQi, radius: 3 },
            None,
        )
        .unwrap();
        assert_eq!(nf.len(), 49);
    }

    #[test]
    fn budget_enforced() {
        let err = build_vertex_set(ModelBounds::LatticeBox { dim: 2, radius: 300 }, Some(1000));
        assert!(matches!(err, Err(EngineError::Budget { .. })));
    }

    #[test]
    fn deterministic_order() {
        let a = build_vertex_set(ModelBounds::LatticeBox { dim: 2, radius: 2 }, None).unwrap();
        let b = build_vertex_set(ModelBounds::LatticeBox { dim: 2, radius: 2 }, None).unwrap();
        assert_eq!(a.payloads, b.payloads);
        assert_eq!(a.payloads[0], VertexPayload::Lattice(vec![-2, -2]));
        assert_eq!(a.payloads[1], VertexPayload::Lattice(vec![-2, -1]));
        assert_eq!(a.payloads.last().unwrap(), &VertexPayload::Lattice(vec![2, 2]));
    }
}
