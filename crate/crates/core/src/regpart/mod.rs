//! Regular partitions of a root system and their canonical constructors.
//!
//! A partition `Δ = Δ_1 ⊔ … ⊔ Δ_m` is *regular* when every block and every
//! pairwise union of two blocks is closed under root addition. Equivalently:
//! whenever `x + y` is a root, its block is the block of `x` or the block of
//! `y` — the form all the checking and pruning here actually uses.
//!
//! For type `A_n` the finest regular partitions are the row and column
//! partitions built from the chain `β_i = α_1 + ⋯ + α_i` (with `β_0 = 0`):
//! every root is a difference `β_j − β_i`, the row partition groups roots by
//! `i`, the column partition by `j`. Coarser regular partitions arise by
//! merging rows, parameterized by integer partitions of `n+1`.

mod enumerate;
mod graph;

pub use enumerate::{
    enumerate_regular_partitions, EnumerationConfig, EnumerationReport, DEFAULT_NODE_BUDGET,
};
pub use graph::{
    build_partition_graph, check_graph_properties, reconstruct_from_graph, GraphProperties,
    PartitionGraph,
};

use crate::rootsys::{Family, RootSet, RootSystem};
use crate::{Error, Result};

/// An ordered list of disjoint, nonempty root-index sets covering the
/// whole root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<RootSet>,
}

impl BlockPartition {
    /// Builds a partition and checks it against the owning system.
    pub fn new(blocks: Vec<RootSet>, rs: &RootSystem) -> Result<Self> {
        let p = BlockPartition { blocks };
        p.validate(rs)?;
        Ok(p)
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<RootSet>) -> Self {
        BlockPartition { blocks }
    }

    pub fn blocks(&self) -> &[RootSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing the given root.
    pub fn block_of(&self, root_index: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(root_index))
    }

    /// Checks disjointness, nonemptiness and coverage of the full system.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        let mut union = RootSet::empty();
        let mut total = 0;
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            if let Some(bad) = b.iter().find(|&r| r >= rs.num_roots()) {
                return Err(Error::InvalidRootIndex {
                    index: bad,
                    len: rs.num_roots(),
                });
            }
            total += b.len();
            union = union.union(b);
        }
        if total != union.len() {
            return Err(Error::InvalidPartition(
                "blocks are not pairwise disjoint".into(),
            ));
        }
        if union != rs.full_set() {
            return Err(Error::InvalidPartition(format!(
                "blocks cover {} of {} roots",
                union.len(),
                rs.num_roots()
            )));
        }
        Ok(())
    }
}

/// A non-increasing integer partition `λ_1 ≥ … ≥ λ_m ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPartition {
    parts: Vec<usize>,
}

impl IntPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "integer partition needs at least one part".into(),
            ));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(
                "integer partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "integer partition parts must be non-increasing, got {parts:?}"
            )));
        }
        Ok(IntPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions of `total`, largest part first.
    pub fn enumerate(total: usize) -> Vec<IntPartition> {
        fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
            if remaining == 0 {
                out.push(IntPartition {
                    parts: prefix.clone(),
                });
                return;
            }
            for part in (1..=remaining.min(max_part)).rev() {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if total > 0 {
            rec(total, total, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// The two finest regular partitions of `A_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Row,
    Column,
}

/// Chain data for `A_n`: the prefix sums `β_0 = 0, β_1, …, β_n` together
/// with the bijection between roots and ordered pairs, `β_j − β_i ↔ (i, j)`.
pub struct BetaChain {
    /// `betas[i]` is the coefficient vector of `β_i` (`betas[0]` is zero).
    betas: Vec<Vec<i64>>,
    /// `pair_root[i * (n+1) + j]` is the root index of `β_j − β_i`.
    pair_root: Vec<u32>,
    /// Inverse of the above, per root index.
    root_pair: Vec<(usize, usize)>,
}

impl BetaChain {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        if rs.rtype().family() != Family::A {
            return Err(Error::Unsupported(format!(
                "the β-chain pair model requires type A, got {}",
                rs.rtype()
            )));
        }
        let n = rs.rank();
        let mut betas: Vec<Vec<i64>> = vec![vec![0; n]];
        for &idx in &rs.beta_chain_basis() {
            betas.push(rs.root(idx).coeffs().to_vec());
        }
        let mut pair_root = vec![u32::MAX; (n + 1) * (n + 1)];
        let mut root_pair = vec![(usize::MAX, usize::MAX); rs.num_roots()];
        for i in 0..=n {
            for j in 0..=n {
                if i == j {
                    continue;
                }
                let diff: Vec<i64> = betas[j]
                    .iter()
                    .zip(&betas[i])
                    .map(|(&a, &b)| a - b)
                    .collect();
                let idx = rs.require_index(&diff)?;
                pair_root[i * (n + 1) + j] = idx as u32;
                root_pair[idx] = (i, j);
            }
        }
        Ok(BetaChain {
            betas,
            pair_root,
            root_pair,
        })
    }

    pub fn rank(&self) -> usize {
        self.betas.len() - 1
    }

    pub fn beta(&self, i: usize) -> &[i64] {
        &self.betas[i]
    }

    /// Root index of `β_j − β_i` (`i ≠ j`, both in `0..=n`).
    pub fn root_of_pair(&self, i: usize, j: usize) -> usize {
        let idx = self.pair_root[i * (self.betas.len()) + j];
        debug_assert!(idx != u32::MAX);
        idx as usize
    }

    /// The pair `(i, j)` with `roots[index] = β_j − β_i`.
    pub fn pair_of_root(&self, index: usize) -> (usize, usize) {
        self.root_pair[index]
    }

    /// All roots `β_j − β_i` with source `i` fixed (row `i`), `j ≠ i`.
    pub fn row(&self, i: usize) -> RootSet {
        let n = self.rank();
        (0..=n)
            .filter(|&j| j != i)
            .map(|j| self.root_of_pair(i, j))
            .collect()
    }

    /// All roots `β_j − β_i` with target `j` fixed (column `j`), `i ≠ j`.
    pub fn column(&self, j: usize) -> RootSet {
        let n = self.rank();
        (0..=n)
            .filter(|&i| i != j)
            .map(|i| self.root_of_pair(i, j))
            .collect()
    }
}

/// True iff every block and every pairwise union of two blocks is closed.
pub fn is_regular_partition(rs: &RootSystem, p: &BlockPartition) -> Result<bool> {
    p.validate(rs)?;
    let mut assign = vec![u16::MAX; rs.num_roots()];
    for (b, block) in p.blocks().iter().enumerate() {
        for r in block.iter() {
            assign[r] = b as u16;
        }
    }
    for x in 0..rs.num_roots() {
        for y in x..rs.num_roots() {
            if let Some(z) = rs.sum(x, y) {
                if assign[z] != assign[x] && assign[z] != assign[y] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The finest `(n+1)`-block regular partition of `A_n`: row orientation
/// gives `Δ_i = {−β_i + β_j | 0 ≤ j ≠ i ≤ n}`, column its blockwise
/// negation.
pub fn finest_partition(rs: &RootSystem, orientation: Orientation) -> Result<BlockPartition> {
    if rs.rtype().family() != Family::A || rs.rank() < 2 {
        return Err(Error::Unsupported(format!(
            "finest partitions exist for A_n with n >= 2, got {}",
            rs.rtype()
        )));
    }
    let chain = BetaChain::new(rs)?;
    let n = rs.rank();
    let blocks: Vec<RootSet> = (0..=n)
        .map(|i| match orientation {
            Orientation::Row => chain.row(i),
            Orientation::Column => chain.column(i),
        })
        .collect();
    BlockPartition::new(blocks, rs)
}

/// The row-form regular partition of `A_n` attached to an integer
/// partition `λ ⊢ n+1`: the `ℓ`-th block collects the rows whose source
/// index lies in the `ℓ`-th consecutive window of sizes `λ`.
pub fn partition_from_int_partition(
    rs: &RootSystem,
    lambda: &IntPartition,
) -> Result<BlockPartition> {
    if rs.rtype().family() != Family::A {
        return Err(Error::Unsupported(format!(
            "λ-window partitions exist for type A only, got {}",
            rs.rtype()
        )));
    }
    let n = rs.rank();
    if lambda.total() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "λ must sum to n+1 = {}, got {:?} summing to {}",
            n + 1,
            lambda.parts(),
            lambda.total()
        )));
    }
    if lambda.len() < 2 {
        return Err(Error::InvalidArgument(
            "λ must have at least 2 parts to define a partition".into(),
        ));
    }
    let chain = BetaChain::new(rs)?;
    let mut blocks = Vec::with_capacity(lambda.len());
    let mut start = 0;
    for &part in lambda.parts() {
        let mut block = RootSet::empty();
        for i in start..start + part {
            block = block.union(&chain.row(i));
        }
        blocks.push(block);
        start += part;
    }
    BlockPartition::new(blocks, rs)
}

/// Unions blocks according to a set partition of the block indices; each
/// group of `merge_spec` becomes one block, in the given group order.
pub fn coarsen(p: &BlockPartition, merge_spec: &[Vec<usize>]) -> Result<BlockPartition> {
    let m = p.num_blocks();
    let mut seen = vec![false; m];
    for group in merge_spec {
        if group.is_empty() {
            return Err(Error::InvalidArgument("empty merge group".into()));
        }
        for &i in group {
            if i >= m {
                return Err(Error::InvalidArgument(format!(
                    "merge group references block {i}, but the partition has {m} blocks"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "block {i} appears in more than one merge group"
                )));
            }
            seen[i] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::InvalidArgument(
            "merge groups do not cover all blocks".into(),
        ));
    }
    let blocks = merge_spec
        .iter()
        .map(|group| {
            group
                .iter()
                .fold(RootSet::empty(), |acc, &i| acc.union(&p.blocks()[i]))
        })
        .collect();
    Ok(BlockPartition::from_blocks_unchecked(blocks))
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> u128 {
    if k == 0 {
        return u128::from(n == 0);
    }
    if k > n {
        return 0;
    }
    // S(n, k) = k·S(n−1, k) + S(n−1, k−1).
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 1..=n {
        for j in (1..=k).rev() {
            row[j] = (j as u128) * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Number of classes of `(m ≥ 3)`-regular partitions of `A_n` modulo block
/// renumbering and global sign swap: `Σ_{k=3}^{n+1} S(n+1, k)`.
pub fn stirling_count_upper(n: usize) -> u128 {
    (3..=n + 1).map(|k| stirling2(n + 1, k)).sum()
}
