//! The hierarchical lattice `H^N_L = ⊕_i (Z/L)^N` with its invariant
//! ultrametric, the group isomorphism with `F_q[t]`, and dimension
//! reduction to the one-dimensional lattice of base `L^N`.
//!
//! Digit blocks are indexed from 0, so the minimum nonzero distance is
//! `L^0 = 1` and the polynomial identity `‖f−g‖ = q^{deg(f−g)} = |f−g|_∞`
//! holds on the nose.

use std::fmt;

use crate::arith_ff::{FqField, Poly};
use crate::magnitude::ExactMagnitude;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HierParams {
    pub l: u32,
    pub n: u32,
}

impl HierParams {
    pub fn new(l: u32, n: u32) -> Result<Self, HierError> {
        if l < 2 || n < 1 {
            return Err(HierError::BadParams { l, n });
        }
        Ok(HierParams { l, n })
    }
}

/// An element of `H^N_L`: a finite list of blocks in `(Z/L)^N`, normalized
/// so the last block is nonzero (the zero element has no blocks).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HierPoint {
    params: HierParams,
    blocks: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum HierError {
    BadParams { l: u32, n: u32 },
    MismatchedParams,
    BlockOutOfRange,
    /// `L^N` (or the requested ball) does not fit the configured budget.
    Overflow,
    /// The polynomial isomorphism needs `L = q`, `N = 1`.
    IsoParams { l: u32, n: u32, q: u32 },
    Parse(String),
}

impl fmt::Display for HierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierError::BadParams { l, n } => write!(f, "need L ≥ 2 and N ≥ 1, got L={l}, N={n}"),
            HierError::MismatchedParams => write!(f, "points from different hierarchical lattices"),
            HierError::BlockOutOfRange => write!(f, "block entry not reduced mod L"),
            HierError::Overflow => write!(f, "lattice truncation exceeds the budget"),
            HierError::IsoParams { l, n, q } => {
                write!(f, "isomorphism needs (L,N) = (q,1), got L={l}, N={n}, q={q}")
            }
            HierError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for HierError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOp {
    Add,
    Sub,
}

impl HierPoint {
    pub fn new(params: HierParams, mut blocks: Vec<Vec<u32>>) -> Result<Self, HierError> {
        for block in &blocks {
            if block.len() != params.n as usize {
                return Err(HierError::BlockOutOfRange);
            }
            if block.iter().any(|&d| d >= params.l) {
                return Err(HierError::BlockOutOfRange);
            }
        }
        while blocks.last().map_or(false, |b| b.iter().all(|&d| d == 0)) {
            blocks.pop();
        }
        Ok(HierPoint { params, blocks })
    }

    pub fn zero(params: HierParams) -> Self {
        HierPoint { params, blocks: Vec::new() }
    }

    pub fn params(&self) -> HierParams {
        self.params
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn block(&self, i: usize) -> Vec<u32> {
        self.blocks
            .get(i)
            .cloned()
            .unwrap_or_else(|| vec![0; self.params.n as usize])
    }

    /// Text form: blocks joined by `;`, entries within a block by `,`.
    pub fn to_text(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(params: HierParams, text: &str) -> Result<Self, HierError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(HierPoint::zero(params));
        }
        let mut blocks = Vec::new();
        for part in text.split(';') {
            let block: Result<Vec<u32>, _> =
                part.split(',').map(|d| d.trim().parse::<u32>()).collect();
            blocks.push(block.map_err(|e| HierError::Parse(e.to_string()))?);
        }
        HierPoint::new(params, blocks)
    }
}

/// Blockwise mod-`L` addition or subtraction (direct sum, no carries).
pub fn group_op(a: &HierPoint, b: &HierPoint, op: GroupOp) -> Result<HierPoint, HierError> {
    if a.params != b.params {
        return Err(HierError::MismatchedParams);
    }
    let p = a.params;
    let len = a.blocks.len().max(b.blocks.len());
    let mut blocks = Vec::with_capacity(len);
    for i in 0..len {
        let (ba, bb) = (a.block(i), b.block(i));
        let block = ba
            .iter()
            .zip(bb.iter())
            .map(|(&x, &y)| match op {
                GroupOp::Add => (x + y) % p.l,
                GroupOp::Sub => (x + p.l - y) % p.l,
            })
            .collect();
        blocks.push(block);
    }
    HierPoint::new(p, blocks)
}

/// Largest 0-based index at which the blocks differ; `None` when `a = b`.
pub fn h_index(a: &HierPoint, b: &HierPoint) -> Option<usize> {
    let len = a.blocks.len().max(b.blocks.len());
    (0..len).rev().find(|&i| a.block(i) != b.block(i))
}

/// The invariant ultrametric `L^{h(a,b)}`; `None` encodes distance zero.
pub fn ultrametric(a: &HierPoint, b: &HierPoint) -> Option<ExactMagnitude> {
    h_index(a, b).map(|h| ExactMagnitude::from_int_exp(u64::from(a.params.l), h as i64))
}

pub fn ultrametric_f64(a: &HierPoint, b: &HierPoint) -> f64 {
    ultrametric(a, b).map_or(0.0, |m| m.to_f64())
}

/// `F_q[t] → H^1_q` on coefficients: coefficient `i` becomes block `i`.
/// Field elements map to digits through their canonical `0..q−1` encoding
/// (base-`p` digits for prime fields, the table order for extensions).
pub fn poly_to_hier(f: &Poly, params: HierParams) -> Result<HierPoint, HierError> {
    let q = f.field().q();
    if params.n != 1 || params.l != q {
        return Err(HierError::IsoParams { l: params.l, n: params.n, q });
    }
    let blocks = f.coeffs().iter().map(|&c| vec![u32::from(c)]).collect();
    HierPoint::new(params, blocks)
}

/// Inverse of [`poly_to_hier`].
pub fn hier_to_poly(x: &HierPoint, field: &FqField) -> Result<Poly, HierError> {
    let q = field.q();
    if x.params.n != 1 || x.params.l != q {
        return Err(HierError::IsoParams { l: x.params.l, n: x.params.n, q });
    }
    let coeffs = x.blocks.iter().map(|b| b[0] as u8).collect();
    Ok(Poly::new(field.clone(), coeffs))
}

/// Flattens `H^N_L` to `H^1_{L^N}`: block `(a_1,…,a_N)` becomes the digit
/// `Σ a_i L^{i−1}`. The map is a group isomorphism preserving `h_index`,
/// and the kernels satisfy `J_{α,L,N} = J_{α/N, L^N, 1}` exactly.
pub fn reduce_dimension(x: &HierPoint) -> Result<HierPoint, HierError> {
    let p = x.params;
    let l_pow_n = (u64::from(p.l))
        .checked_pow(p.n)
        .filter(|&v| v <= u64::from(u32::MAX))
        .ok_or(HierError::Overflow)?;
    let reduced = HierParams::new(l_pow_n as u32, 1)?;
    let blocks = x
        .blocks
        .iter()
        .map(|b| {
            let digit = b.iter().rev().fold(0u64, |acc, &d| acc * u64::from(p.l) + u64::from(d));
            vec![digit as u32]
        })
        .collect();
    HierPoint::new(reduced, blocks)
}

/// All points with blocks supported on indices `< max_index`, in
/// lexicographic order (block 0 varies fastest).
pub fn enumerate_ball(params: HierParams, max_index: u32) -> Result<Vec<HierPoint>, HierError> {
    enumerate_ball_with_budget(params, max_index, 1 << 21)
}

pub fn enumerate_ball_with_budget(
    params: HierParams,
    max_index: u32,
    budget: u64,
) -> Result<Vec<HierPoint>, HierError> {
    let digits = params.n as u64 * u64::from(max_index);
    let total = (u64::from(params.l)).checked_pow(digits.try_into().map_err(|_| HierError::Overflow)?);
    let total = total.ok_or(HierError::Overflow)?;
    if total > budget {
        return Err(HierError::Overflow);
    }
    let mut points = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut blocks = Vec::with_capacity(max_index as usize);
        let mut c = code;
        for _ in 0..max_index {
            let mut block = Vec::with_capacity(params.n as usize);
            for _ in 0..params.n {
                block.push((c % u64::from(params.l)) as u32);
                c /= u64::from(params.l);
            }
            blocks.push(block);
        }
        points.push(HierPoint::new(params, blocks)?);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith_ff::FqField;
    use crate::engine::rng::SplitMix64;

    fn params(l: u32, n: u32) -> HierParams {
        HierParams::new(l, n).unwrap()
    }

    fn pt(params: HierParams, digits: &[u32]) -> HierPoint {
        HierPoint::new(params, digits.iter().map(|&d| vec![d]).collect()).unwrap()
    }

    #[test]
    fn group_op_is_blockwise_without_carry() {
        let p3 = params(3, 1);
        let two = pt(p3, &[2]);
        assert_eq!(group_op(&two, &two, GroupOp::Add).unwrap(), pt(p3, &[1]));
        let p2 = params(2, 1);
        let x = pt(p2, &[1, 0, 1]);
        assert!(group_op(&x, &x, GroupOp::Add).unwrap().is_zero());
        let a = pt(p3, &[1, 2]);
        let b = pt(p3, &[1, 1]);
        assert_eq!(group_op(&a, &b, GroupOp::Sub).unwrap(), pt(p3, &[0, 1]));
    }

    #[test]
    fn h_index_and_ultrametric() {
        let p3 = params(3, 1);
        let a = pt(p3, &[1, 0, 2]);
        let b = pt(p3, &[1, 1, 2]);
        assert_eq!(h_index(&a, &b), Some(1));
        assert_eq!(ultrametric(&a, &b).unwrap(), ExactMagnitude::from_int_exp(3, 1));
        assert_eq!(h_index(&a, &a), None);
        assert_eq!(ultrametric_f64(&a, &a), 0.0);
        assert_eq!(h_index(&pt(p3, &[1]), &pt(p3, &[2])), Some(0));
        let p2 = params(2, 1);
        let far = pt(p2, &[0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(ultrametric(&far, &HierPoint::zero(p2)).unwrap().to_f64(), 128.0);
    }

    #[test]
    fn ultrametric_inequality_and_translation_invariance() {
        let p = params(3, 2);
        let mut rng = SplitMix64::new(0x9a715);
        let random_point = |rng: &mut SplitMix64| {
            let mut blocks = Vec::new();
            for _ in 0..(rng.next_u64() % 6) {
                blocks.push(vec![(rng.next_u64() % 3) as u32, (rng.next_u64() % 3) as u32]);
            }
            HierPoint::new(p, blocks).unwrap()
        };
        for _ in 0..10_000 {
            let (x, y, z) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
            let dxz = ultrametric_f64(&x, &z);
            let dxy = ultrametric_f64(&x, &y);
            let dyz = ultrametric_f64(&y, &z);
            assert!(dxz <= dxy.max(dyz));
            let a = random_point(&mut rng);
            let xa = group_op(&x, &a, GroupOp::Add).unwrap();
            let ya = group_op(&y, &a, GroupOp::Add).unwrap();
            assert_eq!(ultrametric(&xa, &ya), ultrametric(&x, &y));
        }
    }

    #[test]
    fn poly_iso_roundtrip_and_norm_identity() {
        let f2 = FqField::prime(2).unwrap();
        let p2 = params(2, 1);
        let f = Poly::parse(&f2, "1,0,1").unwrap(); // t² + 1
        let x = poly_to_hier(&f, p2).unwrap();
        assert_eq!(x, pt(p2, &[1, 0, 1]));
        assert_eq!(hier_to_poly(&x, &f2).unwrap(), f);
        assert_eq!(
            ultrametric(&x, &HierPoint::zero(p2)).unwrap(),
            ExactMagnitude::from_int_exp(2, 2)
        );
        assert!(poly_to_hier(&Poly::zero(f2.clone()), p2).unwrap().is_zero());
        assert!(poly_to_hier(&f, params(3, 1)).is_err());
    }

    #[test]
    fn iso_intertwines_group_and_ring_addition() {
        let f3 = FqField::prime(3).unwrap();
        let p3 = params(3, 1);
        let mut rng = SplitMix64::new(77);
        for _ in 0..200 {
            let coeffs = |rng: &mut SplitMix64| {
                (0..(rng.next_u64() % 7)).map(|_| (rng.next_u64() % 3) as u8).collect::<Vec<_>>()
            };
            let f = Poly::new(f3.clone(), coeffs(&mut rng));
            let g = Poly::new(f3.clone(), coeffs(&mut rng));
            let sum_poly = f.add(&g).unwrap();
            let sum_hier = group_op(
                &poly_to_hier(&f, p3).unwrap(),
                &poly_to_hier(&g, p3).unwrap(),
                GroupOp::Add,
            )
            .unwrap();
            assert_eq!(poly_to_hier(&sum_poly, p3).unwrap(), sum_hier);
        }
    }

    #[test]
    fn dimension_reduction() {
        let p = params(2, 2);
        let x = HierPoint::new(p, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let reduced = reduce_dimension(&x).unwrap();
        assert_eq!(reduced.params(), params(4, 1));
        assert_eq!(reduced, pt(params(4, 1), &[1, 2]));
        assert!(reduce_dimension(&HierPoint::zero(p)).unwrap().is_zero());
        // h is preserved
        let y = HierPoint::new(p, vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(h_index(&x, &y), h_index(&reduce_dimension(&x).unwrap(), &reduce_dimension(&y).unwrap()));
    }

    #[test]
    fn ball_enumeration_counts() {
        assert_eq!(enumerate_ball(params(2, 1), 3).unwrap().len(), 8);
        assert_eq!(enumerate_ball(params(3, 1), 2).unwrap().len(), 9);
        let only_zero = enumerate_ball(params(5, 2), 0).unwrap();
        assert_eq!(only_zero.len(), 1);
        assert!(only_zero[0].is_zero());
        assert!(enumerate_ball_with_budget(params(2, 1), 30, 1 << 20).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let p = params(3, 2);
        let x = HierPoint::new(p, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(x.to_text(), "1,0;0,2");
        assert_eq!(HierPoint::parse(p, &x.to_text()).unwrap(), x);
    }
}
