//! Exhaustive enumeration of regular partitions by pruned backtracking.
//!
//! Roots are assigned one at a time to an existing block or to one new
//! block; opening new blocks only in first-use order kills the block
//! renumbering symmetry inside the search. After each assignment the
//! closure condition is checked incrementally: for every already-placed
//! root `s`, any triple `x + y = z` of roots whose last member has just
//! been placed must satisfy `block(z) ∈ {block(x), block(y)}`. A leaf
//! therefore always carries a regular partition, and every regular
//! partition appears at exactly one leaf.
//!
//! The assignment order front-loads the chain basis and its negatives,
//! then greedily picks the root completing the most sum triples among the
//! already-ordered prefix, so pruning bites as early as possible.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::regpart::BlockPartition;
use crate::rootsys::{Family, RootSet, RootSystem};
use crate::weyl::{Canonicalizer, Equivalences};
use crate::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    /// Keep only leaves with at least this many blocks.
    pub min_blocks: usize,
    /// Equivalences to quotient the result list by.
    pub modulo: Equivalences,
    /// Abort after this many visited nodes (assignment attempts).
    pub node_budget: u64,
    /// Parallel workers for the subtree fan-out; 1 means sequential.
    pub jobs: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            min_blocks: 3,
            modulo: Equivalences::NONE,
            node_budget: DEFAULT_NODE_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Debug)]
pub struct EnumerationReport {
    /// Canonical representatives under the configured equivalences,
    /// sorted; free of duplicates.
    pub classes: Vec<BlockPartition>,
    /// Total assignment attempts across the whole search.
    pub nodes_visited: u64,
}

const UNASSIGNED: u16 = u16::MAX;

struct SearchCtx<'a> {
    rs: &'a RootSystem,
    /// Root index processed at each depth.
    order: Vec<usize>,
    min_blocks: usize,
    budget: u64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    found: AtomicU64,
}

#[derive(Clone)]
struct SearchState {
    /// Block id per root index.
    assign: Vec<u16>,
    blocks_used: u16,
}

impl<'a> SearchCtx<'a> {
    /// Chain basis and negatives first, then greedy by the number of sum
    /// triples completed against the prefix.
    fn assignment_order(rs: &RootSystem) -> Vec<usize> {
        let len = rs.num_roots();
        let mut order = Vec::with_capacity(len);
        let mut placed = vec![false; len];
        for b in rs.beta_chain_basis() {
            order.push(b);
            placed[b] = true;
        }
        for b in rs.beta_chain_basis() {
            let nb = rs.neg(b);
            if !placed[nb] {
                order.push(nb);
                placed[nb] = true;
            }
        }
        while order.len() < len {
            let best = (0..len)
                .filter(|&t| !placed[t])
                .max_by_key(|&t| {
                    let mut score = 0usize;
                    for &s in &order {
                        if let Some(z) = rs.sum(t, s) {
                            if placed[z] {
                                score += 1;
                            }
                        }
                        if let Some(y) = rs.sum(t, rs.neg(s)) {
                            if placed[y] {
                                score += 1;
                            }
                        }
                    }
                    // Ties broken toward the lowest index for determinism.
                    (score, std::cmp::Reverse(t))
                })
                .expect("unplaced root exists");
            order.push(best);
            placed[best] = true;
        }
        order
    }

    /// Closure constraints touching the root at `depth`, given all roots
    /// at smaller depths are assigned. `true` means consistent.
    fn consistent(&self, state: &SearchState, depth: usize, block: u16) -> bool {
        let t = self.order[depth];
        for &s in &self.order[..depth] {
            let bs = state.assign[s];
            if let Some(z) = self.rs.sum(t, s) {
                let bz = state.assign[z];
                if bz != UNASSIGNED && bz != block && bz != bs {
                    return false;
                }
            }
            if let Some(y) = self.rs.sum(t, self.rs.neg(s)) {
                // s + y = t with both summands placed: block(t) must be
                // the block of s or of y.
                let by = state.assign[y];
                if by != UNASSIGNED && block != bs && block != by {
                    return false;
                }
            }
        }
        true
    }

    fn charge_node(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Error::NodeBudgetExceeded {
                budget: self.budget,
                classes_found: self.found.load(Ordering::Relaxed) as usize,
            });
        }
        Ok(())
    }

    fn dfs(&self, state: &mut SearchState, depth: usize, out: &mut Vec<Vec<RootSet>>) -> Result<()> {
        if depth == self.order.len() {
            if usize::from(state.blocks_used) >= self.min_blocks {
                let mut blocks = vec![RootSet::empty(); usize::from(state.blocks_used)];
                for (root, &b) in state.assign.iter().enumerate() {
                    blocks[usize::from(b)].insert(root);
                }
                out.push(blocks);
                self.found.fetch_add(1, Ordering::Relaxed);
            }
            return Ok(());
        }
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Error::NodeBudgetExceeded {
                budget: self.budget,
                classes_found: self.found.load(Ordering::Relaxed) as usize,
            });
        }
        let t = self.order[depth];
        for block in 0..=state.blocks_used {
            self.charge_node()?;
            if self.consistent(state, depth, block) {
                let prev_used = state.blocks_used;
                state.assign[t] = block;
                state.blocks_used = prev_used.max(block + 1);
                self.dfs(state, depth + 1, out)?;
                state.assign[t] = UNASSIGNED;
                state.blocks_used = prev_used;
            }
        }
        Ok(())
    }

    /// All consistent states at exactly `depth` assigned roots.
    fn prefixes(&self, depth: usize) -> Result<Vec<SearchState>> {
        let mut states = vec![SearchState {
            assign: vec![UNASSIGNED; self.rs.num_roots()],
            blocks_used: 0,
        }];
        for d in 0..depth {
            let t = self.order[d];
            let mut next = Vec::new();
            for state in &states {
                for block in 0..=state.blocks_used {
                    self.charge_node()?;
                    if self.consistent(state, d, block) {
                        let mut s = state.clone();
                        s.assign[t] = block;
                        s.blocks_used = s.blocks_used.max(block + 1);
                        next.push(s);
                    }
                }
            }
            states = next;
        }
        Ok(states)
    }
}

/// Exhaustively enumerates the partitions of the whole root system into at
/// least `min_blocks` nonempty blocks such that every block and every
/// pairwise union of blocks is closed. Returns canonical representatives
/// under the configured equivalences, multiplicity-free and sorted.
pub fn enumerate_regular_partitions(
    rs: &RootSystem,
    config: &EnumerationConfig,
) -> Result<EnumerationReport> {
    if config.modulo.weyl && rs.rtype().family() != Family::A {
        return Err(Error::Unsupported(
            "Weyl reduction of enumeration results is only offered for type A".into(),
        ));
    }
    if config.min_blocks == 0 {
        return Err(Error::InvalidArgument("min_blocks must be positive".into()));
    }

    let ctx = SearchCtx {
        rs,
        order: SearchCtx::assignment_order(rs),
        min_blocks: config.min_blocks,
        budget: config.node_budget,
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        found: AtomicU64::new(0),
    };

    let raw: Vec<Vec<RootSet>> = if config.jobs <= 1 {
        let mut state = SearchState {
            assign: vec![UNASSIGNED; rs.num_roots()],
            blocks_used: 0,
        };
        let mut out = Vec::new();
        ctx.dfs(&mut state, 0, &mut out)?;
        out
    } else {
        // Fan out over the assignment choices of the first few roots.
        let mut split_depth = 1;
        while split_depth < ctx.order.len().saturating_sub(1) && split_depth < 12 {
            // Bell(split_depth+1) states at most; stop once enough branches.
            let width: u64 = (1..=split_depth as u64).product();
            if width >= 4 * config.jobs as u64 {
                break;
            }
            split_depth += 1;
        }
        let states = ctx.prefixes(split_depth)?;
        let results: Vec<Result<Vec<Vec<RootSet>>>> = states
            .into_par_iter()
            .map(|mut state| {
                let mut out = Vec::new();
                ctx.dfs(&mut state, split_depth, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut merged = Vec::new();
        for r in results {
            merged.extend(r?);
        }
        merged
    };

    let canon = Canonicalizer::new(rs, config.modulo)?;
    let mut forms: Vec<Vec<Vec<u32>>> = raw
        .into_iter()
        .map(|blocks| canon.canonical_normal_form(&BlockPartition::from_blocks_unchecked(blocks)))
        .collect();
    forms.sort_by(|a, b| nf_cmp_key(a).cmp(&nf_cmp_key(b)));
    forms.dedup();

    let classes = forms
        .into_iter()
        .map(|nf| {
            BlockPartition::from_blocks_unchecked(
                nf.iter()
                    .map(|b| b.iter().map(|&i| i as usize).collect())
                    .collect(),
            )
        })
        .collect();

    Ok(EnumerationReport {
        classes,
        nodes_visited: ctx.nodes.load(Ordering::Relaxed),
    })
}

fn nf_cmp_key(nf: &[Vec<u32>]) -> Vec<(usize, Vec<u32>)> {
    nf.iter().map(|b| (b.len(), b.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regpart::is_regular_partition;
    use crate::rootsys::RootSystemType;

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::build(RootSystemType::new(f, n).unwrap())
    }

    fn run(rs: &RootSystem, min_blocks: usize, modulo: Equivalences) -> EnumerationReport {
        enumerate_regular_partitions(
            rs,
            &EnumerationConfig {
                min_blocks,
                modulo,
                ..EnumerationConfig::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn a2_single_class_modulo_renumber_sign() {
        let rs = sys(Family::A, 2);
        let report = run(&rs, 3, Equivalences::renumber_sign());
        assert_eq!(report.classes.len(), 1);
        assert!(is_regular_partition(&rs, &report.classes[0]).unwrap());
    }

    #[test]
    fn b2_and_g2_have_no_triple_partitions() {
        for f in [Family::B, Family::G] {
            let rs = sys(f, 2);
            let report = run(
                &rs,
                3,
                Equivalences {
                    renumber: true,
                    ..Equivalences::NONE
                },
            );
            assert!(report.classes.is_empty(), "{f:?}_2");
        }
    }

    #[test]
    fn enumerated_partitions_are_regular_and_match_counts() {
        let rs = sys(Family::A, 3);
        let report = run(&rs, 3, Equivalences::renumber_sign());
        assert_eq!(report.classes.len(), 7);
        for p in &report.classes {
            assert!(is_regular_partition(&rs, p).unwrap());
        }
        let weyl = run(&rs, 3, Equivalences::renumber_sign_weyl());
        assert_eq!(weyl.classes.len(), 2);
    }

    #[test]
    fn two_block_enumeration_includes_borel_split() {
        let rs = sys(Family::A, 2);
        let report = run(&rs, 2, Equivalences::NONE);
        let pos = rs.positive_set();
        let neg = rs.negate_set(&pos);
        let found = report.classes.iter().any(|p| {
            p.num_blocks() == 2
                && ((p.blocks()[0] == pos && p.blocks()[1] == neg)
                    || (p.blocks()[0] == neg && p.blocks()[1] == pos))
        });
        assert!(found, "Borel split missing from 2-block enumeration");
        for p in &report.classes {
            assert!(is_regular_partition(&rs, p).unwrap());
        }
    }

    #[test]
    fn parallel_enumeration_agrees_with_sequential() {
        let rs = sys(Family::A, 3);
        let seq = run(&rs, 3, Equivalences::renumber_sign());
        let par = enumerate_regular_partitions(
            &rs,
            &EnumerationConfig {
                min_blocks: 3,
                modulo: Equivalences::renumber_sign(),
                jobs: 4,
                ..EnumerationConfig::default()
            },
        )
        .unwrap();
        let seq_blocks: Vec<_> = seq.classes.iter().map(|p| p.blocks().to_vec()).collect();
        let par_blocks: Vec<_> = par.classes.iter().map(|p| p.blocks().to_vec()).collect();
        assert_eq!(seq_blocks, par_blocks);
        assert_eq!(seq.nodes_visited, par.nodes_visited);
    }

    #[test]
    fn node_budget_is_enforced() {
        let rs = sys(Family::A, 3);
        let err = enumerate_regular_partitions(
            &rs,
            &EnumerationConfig {
                min_blocks: 3,
                modulo: Equivalences::NONE,
                node_budget: 10,
                jobs: 1,
            },
        )
        .unwrap_err();
        match err {
            Error::NodeBudgetExceeded { budget, .. } => assert_eq!(budget, 10),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn weyl_reduction_rejected_outside_type_a() {
        let rs = sys(Family::B, 2);
        let err = enumerate_regular_partitions(
            &rs,
            &EnumerationConfig {
                min_blocks: 3,
                modulo: Equivalences::renumber_sign_weyl(),
                ..EnumerationConfig::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }
}
