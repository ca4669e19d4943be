use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{IrrepDescriptor, Parity, ParamsError, QuadChar, Registry, WildParameter};
use crate::config::cardinality_bound;

/// One summand `σ ⊗ St_m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Block {
    pub irrep: IrrepDescriptor,
    pub m: u32,
}

impl Block {
    pub fn new(irrep: &IrrepDescriptor, m: u32) -> Self {
        Block { irrep: irrep.clone(), m }
    }

    pub fn dim(&self) -> u64 {
        self.irrep.dim as u64 * self.m as u64
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.irrep.id)
        } else {
            write!(f, "{}⊗St{}", self.irrep.id, self.m)
        }
    }
}

/// Blocks are kept sorted; repetitions are kept so that validation can
/// report them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LParamShape {
    blocks: Vec<Block>,
}

impl LParamShape {
    pub fn new(mut blocks: Vec<Block>) -> Self {
        blocks.sort();
        LParamShape { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> u64 {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn determinant(&self) -> QuadChar {
        QuadChar::product(self.blocks.iter().map(|b| b.irrep.det_char.pow(b.m as u64)))
    }

    /// Restriction to wild inertia.
    pub fn restriction(&self, reg: &Registry) -> Result<WildParameter, ParamsError> {
        let mut acc = WildParameter::default();
        for b in &self.blocks {
            let w = reg.restriction(&b.irrep)?;
            for _ in 0..b.m {
                acc = acc.add(&w);
            }
        }
        Ok(acc)
    }

    pub fn contains(&self, id: &str, m: u32) -> bool {
        self.blocks.iter().any(|b| b.irrep.id == id && b.m == m)
    }
}

impl fmt::Display for LParamShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.blocks.iter().map(Block::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    RepeatedBlock { id: String, m: u32 },
    DimensionSum { got: u64, expected: u64 },
    ParityMismatch { id: String, m: u32, parity: Parity },
    Determinant { product: QuadChar },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiscreteReport {
    pub violations: Vec<Violation>,
}

impl DiscreteReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks each defining clause of a discrete parameter into `SO_{2N+1}`.
pub fn validate_discrete(shape: &LParamShape, n: u32) -> DiscreteReport {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for b in &shape.blocks {
        if b.m == 0 || !seen.insert((b.irrep.id.as_str(), b.m)) {
            violations.push(Violation::RepeatedBlock { id: b.irrep.id.clone(), m: b.m });
        }
    }
    let expected = 2 * n as u64 + 1;
    if shape.dim() != expected {
        violations.push(Violation::DimensionSum { got: shape.dim(), expected });
    }
    for b in &shape.blocks {
        if b.m > 0 && b.irrep.parity != Parity::required_for(b.m) {
            violations.push(Violation::ParityMismatch {
                id: b.irrep.id.clone(),
                m: b.m,
                parity: b.irrep.parity,
            });
        }
    }
    let product = shape.determinant();
    if product != QuadChar::One {
        violations.push(Violation::Determinant { product });
    }
    DiscreteReport { violations }
}

/// No holes: `(σ, m)` with `m > 2` forces `(σ, m − 2)`.
pub fn is_cuspidal(shape: &LParamShape) -> bool {
    shape
        .blocks
        .iter()
        .all(|b| b.m <= 2 || shape.contains(&b.irrep.id, b.m - 2))
}

/// Every block is a distinct character-free orthogonal summand, `m = 1`.
pub fn is_regular(shape: &LParamShape) -> bool {
    shape.blocks.iter().all(|b| b.m == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketCounts {
    pub packet_size: u64,
    /// Present only for cuspidal shapes.
    pub cuspidal_count: Option<u64>,
}

/// `2^(#I − 1)` and, when cuspidal, `2^(#I₀ − 1)` with `I₀` the distinct
/// orthogonal `σ`.
pub fn packet_counts(shape: &LParamShape) -> PacketCounts {
    let pow = |k: usize| 1u64 << k.saturating_sub(1);
    let i = shape.blocks.iter().map(|b| (&b.irrep.id, b.m)).collect::<BTreeSet<_>>().len();
    let i0 = shape
        .blocks
        .iter()
        .filter(|b| b.irrep.parity == Parity::Orthogonal)
        .map(|b| &b.irrep.id)
        .collect::<BTreeSet<_>>()
        .len();
    PacketCounts {
        packet_size: pow(i),
        cuspidal_count: is_cuspidal(shape).then(|| pow(i0)),
    }
}

/// Sum of a ladder of `len` rungs: `1 + 3 + …` or `2 + 4 + …`.
fn ladder_sum(parity: Parity, len: u64) -> u64 {
    match parity {
        Parity::Orthogonal => len * len,
        Parity::Symplectic => len * (len + 1),
    }
}

fn ladder(irrep: &IrrepDescriptor, len: u32) -> impl Iterator<Item = Block> + '_ {
    let start = if irrep.parity == Parity::Orthogonal { 1 } else { 2 };
    (0..len).map(move |j| Block::new(irrep, start + 2 * j))
}

pub fn enumerate_cuspidal_shapes(
    n: u32,
    inventory: &[IrrepDescriptor],
) -> Result<Vec<LParamShape>, ParamsError> {
    enumerate_cuspidal_shapes_bounded(n, inventory, cardinality_bound())
}

/// All cuspidal discrete shapes of dimension `2N + 1` over the inventory,
/// sorted. Each `σ` contributes a (possibly empty) ladder, which is exactly
/// what cuspidality and the parity clause allow.
pub fn enumerate_cuspidal_shapes_bounded(
    n: u32,
    inventory: &[IrrepDescriptor],
    bound: u64,
) -> Result<Vec<LParamShape>, ParamsError> {
    let target = 2 * n as u64 + 1;
    let irreps: Vec<&IrrepDescriptor> = inventory
        .iter()
        .map(|r| (r.id.as_str(), r))
        .collect::<BTreeMap<_, _>>()
        .into_values()
        .filter(|r| (r.dim as u64) <= target)
        .collect();
    let mut search = Search { irreps: &irreps, bound, visited: 0, choice: Vec::new(), out: Vec::new() };
    search.go(0, target, QuadChar::One)?;
    let mut out = search.out;
    out.sort();
    Ok(out)
}

struct Search<'a> {
    irreps: &'a [&'a IrrepDescriptor],
    bound: u64,
    visited: u64,
    choice: Vec<(usize, u32)>,
    out: Vec<LParamShape>,
}

impl Search<'_> {
    fn go(&mut self, i: usize, remaining: u64, det: QuadChar) -> Result<(), ParamsError> {
        self.visited += 1;
        if self.visited > self.bound || self.out.len() as u64 > self.bound {
            return Err(ParamsError::TooLarge { bound: self.bound });
        }
        if remaining == 0 {
            if det == QuadChar::One {
                let blocks = self
                    .choice
                    .iter()
                    .flat_map(|&(k, len)| ladder(self.irreps[k], len))
                    .collect();
                self.out.push(LParamShape::new(blocks));
            }
            return Ok(());
        }
        if i == self.irreps.len() {
            return Ok(());
        }
        self.go(i + 1, remaining, det)?;
        let r = self.irreps[i];
        for len in 1u32.. {
            let used = r.dim as u64 * ladder_sum(r.parity, len as u64);
            if used > remaining {
                break;
            }
            let d = det * (r.det_char.pow(ladder_sum(r.parity, len as u64)));
            self.choice.push((i, len));
            self.go(i + 1, remaining - used, d)?;
            self.choice.pop();
        }
        Ok(())
    }
}
