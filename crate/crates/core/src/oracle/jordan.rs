//! Jordan types of nilpotent operators from ranks of powers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{fp_rank, FpMatrix};
use crate::error::{Error, Result};

/// Jordan block sizes, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanPartition {
    blocks: Vec<u32>,
}

impl JordanPartition {
    pub fn new(mut blocks: Vec<u32>) -> Self {
        blocks.retain(|&b| b > 0);
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        JordanPartition { blocks }
    }

    /// Partition with `ranks[k] = rank(N^k)`, `ranks[0]` the dimension,
    /// ending at a zero rank.
    pub fn from_ranks(ranks: &[u64]) -> Self {
        let mut blocks = Vec::new();
        for k in 1..ranks.len() {
            let at_least_k = ranks[k - 1] - ranks[k];
            let at_least_next = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
            for _ in 0..(at_least_k - at_least_next) {
                blocks.push(k as u32);
            }
        }
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(|&b| b as u64).sum()
    }

    /// Block size to multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for &b in &self.blocks {
            *out.entry(b).or_insert(0) += 1;
        }
        out
    }

    /// Conjugate partition: entry k-1 counts blocks of size at least k.
    pub fn conjugate(&self) -> Vec<u64> {
        let top = self.blocks.first().copied().unwrap_or(0);
        (1..=top).map(|k| self.blocks.iter().filter(|&&b| b >= k).count() as u64).collect()
    }
}

impl fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Jordan type of a square nilpotent matrix.
pub fn jordan_partition(n: &FpMatrix) -> Result<JordanPartition> {
    if n.rows() != n.cols() {
        return Err(Error::InvalidInput(format!("matrix is {}x{}, not square", n.rows(), n.cols())));
    }
    let dim = n.rows();
    let mut ranks = vec![dim as u64];
    let mut power = n.clone();
    loop {
        let r = fp_rank(&power) as u64;
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > dim + 1 || r == ranks[ranks.len() - 2] {
            return Err(Error::NotNilpotent);
        }
        power = power.mul(n)?;
    }
    Ok(JordanPartition::from_ranks(&ranks))
}
