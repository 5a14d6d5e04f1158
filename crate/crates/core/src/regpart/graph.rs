//! The labeled multigraph encoding of a block partition.
//!
//! Fix an integral basis `β_1..β_n` of the root lattice. For each basis
//! root the graph records where `±β_ℓ` live: a loop at vertex `i` when
//! both signs share block `i`, otherwise an edge whose `+` end is the
//! block holding `β_ℓ` and whose `−` end is the block holding `−β_ℓ`.
//!
//! For a regular partition of `A_n` with `m ≥ 3` blocks the graph is
//! forced into a star: at most one vertex carries loops (A1), no vertex is
//! isolated (A2), all edge ends at one vertex carry the same sign (A3),
//! any two edges share a vertex (A4), and loops sit only at the vertex
//! common to all edges (A5). Such a star determines the partition
//! uniquely, which [`reconstruct_from_graph`] realizes.

use crate::regpart::{BetaChain, BlockPartition};
use crate::rootsys::{Family, RootSet, RootSystem};
use crate::{Error, Result};

/// Labeled multigraph on vertices `1..=m` with signed edge ends.
///
/// Every basis label `1..=n` appears exactly once, as a loop label or an
/// edge label; loops are not edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionGraph {
    num_vertices: usize,
    /// `(vertex, basis label)`, one-based.
    loops: Vec<(usize, usize)>,
    /// `(plus vertex, minus vertex, basis label)`, one-based.
    edges: Vec<(usize, usize, usize)>,
}

impl PartitionGraph {
    pub fn new(
        num_vertices: usize,
        loops: Vec<(usize, usize)>,
        edges: Vec<(usize, usize, usize)>,
    ) -> Result<Self> {
        let g = PartitionGraph {
            num_vertices,
            loops,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if self.num_vertices == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let n = self.loops.len() + self.edges.len();
        let mut label_seen = vec![false; n + 1];
        let mut check_label = |l: usize| -> Result<()> {
            if l == 0 || l > n {
                return Err(Error::InvalidGraph(format!(
                    "label {l} out of range 1..={n}"
                )));
            }
            if label_seen[l] {
                return Err(Error::InvalidGraph(format!("label {l} appears twice")));
            }
            label_seen[l] = true;
            Ok(())
        };
        for &(v, l) in &self.loops {
            if v == 0 || v > self.num_vertices {
                return Err(Error::InvalidGraph(format!("loop vertex {v} out of range")));
            }
            check_label(l)?;
        }
        for &(p, m, l) in &self.edges {
            if p == 0 || p > self.num_vertices || m == 0 || m > self.num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({p}, {m}) vertex out of range"
                )));
            }
            if p == m {
                return Err(Error::InvalidGraph(format!(
                    "edge ({p}, {m}) connects a vertex to itself; loops are separate"
                )));
            }
            check_label(l)?;
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of basis labels, equal to the rank of the underlying system.
    pub fn num_labels(&self) -> usize {
        self.loops.len() + self.edges.len()
    }

    pub fn loops(&self) -> &[(usize, usize)] {
        &self.loops
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }
}

/// Builds the graph of a partition with respect to a basis of root indices
/// (labels follow basis positions, one-based).
pub fn build_partition_graph(
    rs: &RootSystem,
    p: &BlockPartition,
    basis: &[usize],
) -> Result<PartitionGraph> {
    p.validate(rs)?;
    let mut loops = Vec::new();
    let mut edges = Vec::new();
    for (pos, &b) in basis.iter().enumerate() {
        if b >= rs.num_roots() {
            return Err(Error::InvalidRootIndex {
                index: b,
                len: rs.num_roots(),
            });
        }
        let label = pos + 1;
        let plus = p.block_of(b).expect("partition covers every root") + 1;
        let minus = p.block_of(rs.neg(b)).expect("partition covers every root") + 1;
        if plus == minus {
            loops.push((plus, label));
        } else {
            edges.push((plus, minus, label));
        }
    }
    PartitionGraph::new(p.num_blocks(), loops, edges)
}

/// Pass/fail report for the star-shape properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphProperties {
    /// At most one vertex carries loops.
    pub a1: bool,
    /// Every vertex has a loop or an incident edge.
    pub a2: bool,
    /// All edge ends incident to one vertex carry the same sign.
    pub a3: bool,
    /// Any two edges share a common vertex.
    pub a4: bool,
    /// Loops occur only at a vertex common to all edges.
    pub a5: bool,
    /// Whether the graph is a star: one hub incident to every edge with a
    /// uniform sign there, loops only at the hub, no isolated vertices.
    pub star_shaped: bool,
    /// The hub vertex witnessing `star_shaped`, one-based.
    pub hub: Option<usize>,
}

impl GraphProperties {
    pub fn all_pass(&self) -> bool {
        self.a1 && self.a2 && self.a3 && self.a4 && self.a5 && self.star_shaped
    }
}

pub fn check_graph_properties(g: &PartitionGraph) -> GraphProperties {
    let m = g.num_vertices();
    let mut loop_vertices: Vec<usize> = g.loops().iter().map(|&(v, _)| v).collect();
    loop_vertices.sort_unstable();
    loop_vertices.dedup();

    let a1 = loop_vertices.len() <= 1;

    let mut covered = vec![false; m + 1];
    for &(v, _) in g.loops() {
        covered[v] = true;
    }
    for &(p, mi, _) in g.edges() {
        covered[p] = true;
        covered[mi] = true;
    }
    let a2 = (1..=m).all(|v| covered[v]);

    // Signs at each vertex: +1 seen, −1 seen.
    let mut plus_at = vec![false; m + 1];
    let mut minus_at = vec![false; m + 1];
    for &(p, mi, _) in g.edges() {
        plus_at[p] = true;
        minus_at[mi] = true;
    }
    let a3 = (1..=m).all(|v| !(plus_at[v] && minus_at[v]));

    let a4 = g.edges().iter().enumerate().all(|(i, &(p1, m1, _))| {
        g.edges()
            .iter()
            .skip(i + 1)
            .all(|&(p2, m2, _)| p1 == p2 || p1 == m2 || m1 == p2 || m1 == m2)
    });

    let common_to_all_edges = |v: usize| g.edges().iter().all(|&(p, mi, _)| p == v || mi == v);
    let a5 = loop_vertices.iter().all(|&v| common_to_all_edges(v));

    let hub = (1..=m).find(|&h| {
        common_to_all_edges(h)
            && !(plus_at[h] && minus_at[h])
            && loop_vertices.iter().all(|&v| v == h)
            && a2
    });

    GraphProperties {
        a1,
        a2,
        a3,
        a4,
        a5,
        star_shaped: hub.is_some(),
        hub,
    }
}

/// Reconstructs the unique `m`-regular partition of `A_n` with the given
/// star graph, `m ≥ 3`. Every difference root `β_j − β_i` is placed by the
/// block holding `−β_i` (hub-side for loops and for `β_0 = 0`), mirrored
/// when the hub carries the `−` ends.
pub fn reconstruct_from_graph(rs: &RootSystem, g: &PartitionGraph) -> Result<BlockPartition> {
    if rs.rtype().family() != Family::A {
        return Err(Error::Unsupported(format!(
            "graph reconstruction requires type A, got {}",
            rs.rtype()
        )));
    }
    if g.num_labels() != rs.rank() {
        return Err(Error::InvalidGraph(format!(
            "graph carries {} labels but {} has rank {}",
            g.num_labels(),
            rs.rtype(),
            rs.rank()
        )));
    }
    let m = g.num_vertices();
    if m < 3 {
        return Err(Error::InvalidGraph(format!(
            "unique reconstruction requires m >= 3 vertices, got {m}"
        )));
    }
    let props = check_graph_properties(g);
    for (name, ok) in [
        ("A1", props.a1),
        ("A2", props.a2),
        ("A3", props.a3),
        ("A4", props.a4),
        ("A5", props.a5),
        ("star shape", props.star_shaped),
    ] {
        if !ok {
            return Err(Error::InvalidGraph(format!("property {name} fails")));
        }
    }
    let hub = props.hub.expect("star_shaped implies a hub");

    // With m >= 3 there are at least two non-hub vertices, hence at least
    // two edges; their signs at the hub are uniform by A3.
    let plus_at_hub = g
        .edges()
        .first()
        .map(|&(p, _, _)| p == hub)
        .expect("m >= 3 star has edges");

    let n = rs.rank();
    // source[i]: block of the hub-opposite sign of β_i (i = 0 is the hub).
    let mut source = vec![hub; n + 1];
    for &(p, mi, l) in g.edges() {
        source[l] = if plus_at_hub { mi } else { p };
    }

    let chain = BetaChain::new(rs)?;
    let mut blocks = vec![RootSet::empty(); m];
    for i in 0..=n {
        for j in 0..=n {
            if i == j {
                continue;
            }
            let root = chain.root_of_pair(i, j);
            let vertex = if plus_at_hub { source[i] } else { source[j] };
            blocks[vertex - 1].insert(root);
        }
    }
    BlockPartition::new(blocks, rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regpart::{finest_partition, BlockPartition, Orientation};
    use crate::rootsys::{RootSystem, RootSystemType};

    fn a(n: usize) -> RootSystem {
        RootSystem::build(RootSystemType::new(Family::A, n).unwrap())
    }

    fn set_of(rs: &RootSystem, coeffs: &[&[i64]]) -> RootSet {
        coeffs
            .iter()
            .map(|c| rs.require_index(c).unwrap())
            .collect()
    }

    fn paper_example(rs: &RootSystem) -> BlockPartition {
        BlockPartition::new(
            vec![
                set_of(rs, &[&[0, -1, 0], &[0, -1, -1], &[1, 0, 0]]),
                set_of(rs, &[&[0, 0, -1], &[0, 1, 0], &[1, 1, 0]]),
                set_of(
                    rs,
                    &[
                        &[0, 0, 1],
                        &[0, 1, 1],
                        &[1, 1, 1],
                        &[-1, -1, -1],
                        &[-1, 0, 0],
                        &[-1, -1, 0],
                    ],
                ),
            ],
            rs,
        )
        .unwrap()
    }

    #[test]
    fn paper_example_graph() {
        // Basis {α, α+β, α+β+γ} = β-chain of A_3.
        let rs = a(3);
        let p = paper_example(&rs);
        let g = build_partition_graph(&rs, &p, &rs.beta_chain_basis()).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.loops(), &[(3, 3)]);
        assert_eq!(g.edges(), &[(1, 3, 1), (2, 3, 2)]);
        let props = check_graph_properties(&g);
        assert!(props.all_pass());
        assert_eq!(props.hub, Some(3));
    }

    #[test]
    fn row_finest_a2_graph() {
        let rs = a(2);
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        let g = build_partition_graph(&rs, &p, &rs.beta_chain_basis()).unwrap();
        assert!(g.loops().is_empty());
        assert_eq!(g.edges(), &[(1, 2, 1), (1, 3, 2)]);
    }

    #[test]
    fn one_block_partition_gives_all_loops() {
        let rs = a(3);
        let p = BlockPartition::new(vec![rs.full_set()], &rs).unwrap();
        let g = build_partition_graph(&rs, &p, &rs.beta_chain_basis()).unwrap();
        assert_eq!(g.loops(), &[(1, 1), (1, 2), (1, 3)]);
        assert!(g.edges().is_empty());
        assert!(check_graph_properties(&g).star_shaped);
    }

    #[test]
    fn disjoint_edges_fail_a4() {
        let g = PartitionGraph::new(4, vec![], vec![(1, 2, 1), (3, 4, 2)]).unwrap();
        let props = check_graph_properties(&g);
        assert!(!props.a4);
        assert!(!props.star_shaped);
        assert!(props.a1 && props.a2 && props.a3);
    }

    #[test]
    fn loop_at_leaf_fails_a5() {
        // Two-edge star with hub 1, plus a loop at the leaf vertex 2.
        let g = PartitionGraph::new(3, vec![(2, 3)], vec![(1, 2, 1), (1, 3, 2)]).unwrap();
        let props = check_graph_properties(&g);
        assert!(!props.a5);
        assert!(!props.star_shaped);
    }

    #[test]
    fn mixed_signs_fail_a3() {
        let g = PartitionGraph::new(3, vec![], vec![(1, 2, 1), (3, 1, 2)]).unwrap();
        let props = check_graph_properties(&g);
        assert!(!props.a3);
    }

    #[test]
    fn reconstruct_paper_example() {
        let rs = a(3);
        let p = paper_example(&rs);
        let g = build_partition_graph(&rs, &p, &rs.beta_chain_basis()).unwrap();
        let q = reconstruct_from_graph(&rs, &g).unwrap();
        assert_eq!(q.blocks(), p.blocks());
    }

    #[test]
    fn reconstruct_rejects_single_vertex() {
        let rs = a(3);
        let g = PartitionGraph::new(1, vec![(1, 1), (1, 2), (1, 3)], vec![]).unwrap();
        assert!(reconstruct_from_graph(&rs, &g).is_err());
    }

    #[test]
    fn reconstruct_round_trips_row_finest() {
        for n in 2..=4 {
            let rs = a(n);
            for orientation in [Orientation::Row, Orientation::Column] {
                let p = finest_partition(&rs, orientation).unwrap();
                let g = build_partition_graph(&rs, &p, &rs.beta_chain_basis()).unwrap();
                let q = reconstruct_from_graph(&rs, &g).unwrap();
                assert_eq!(q.blocks(), p.blocks(), "n = {n}, {orientation:?}");
            }
        }
    }

    #[test]
    fn graph_validation_rejects_malformed() {
        assert!(PartitionGraph::new(2, vec![], vec![(1, 1, 1)]).is_err());
        assert!(PartitionGraph::new(2, vec![(1, 1)], vec![(1, 2, 1)]).is_err());
        assert!(PartitionGraph::new(2, vec![(3, 1)], vec![]).is_err());
        assert!(PartitionGraph::new(2, vec![(1, 2)], vec![]).is_err());
        assert!(PartitionGraph::new(0, vec![], vec![]).is_err());
    }
}
