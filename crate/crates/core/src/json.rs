//! JSON and CSV schemas for partitions, graphs, decompositions and
//! reports.
//!
//! Roots serialize as integer arrays in simple-root coordinates; root sets
//! as lexicographically sorted lists of such arrays. Rationals serialize
//! as `"p/q"` strings in lowest terms with a positive denominator.

use serde::{Deserialize, Serialize};

use crate::liealg::{
    h_coeffs_to_cartan, rat_from_string, rat_to_string, BracketWitness, ElemRef,
    RegularDecomposition, RegularSubalgebra, VerifierReport,
};
use crate::regpart::{BlockPartition, GraphProperties, PartitionGraph};
use crate::rootsys::{Family, RootSet, RootSystem, RootSystemType};
use crate::weyl::Equivalences;
use crate::{Error, Result};

pub fn system_from_names(family: &str, rank: usize) -> Result<RootSystem> {
    let mut chars = family.trim().chars();
    let letter = chars.next().filter(|_| chars.next().is_none());
    let fam = letter
        .and_then(Family::from_letter)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown family {family:?}")))?;
    Ok(RootSystem::build(RootSystemType::new(fam, rank)?))
}

fn sorted_block(rs: &RootSystem, b: &RootSet) -> Vec<Vec<i64>> {
    let mut roots: Vec<Vec<i64>> = b.iter().map(|i| rs.root(i).coeffs().to_vec()).collect();
    roots.sort();
    roots
}

fn block_from_coeffs(rs: &RootSystem, coeffs: &[Vec<i64>]) -> Result<RootSet> {
    let mut set = RootSet::empty();
    for c in coeffs {
        set.insert(rs.require_index(c)?);
    }
    if set.len() != coeffs.len() {
        return Err(Error::InvalidPartition(
            "duplicate root inside a serialized block".into(),
        ));
    }
    Ok(set)
}

/// `{"family":"A","rank":3,"blocks":[[[1,0,0],…],…]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionJson {
    pub family: String,
    pub rank: usize,
    pub blocks: Vec<Vec<Vec<i64>>>,
}

impl PartitionJson {
    pub fn from_partition(rs: &RootSystem, p: &BlockPartition) -> Self {
        PartitionJson {
            family: rs.rtype().family().letter().to_string(),
            rank: rs.rank(),
            blocks: p.blocks().iter().map(|b| sorted_block(rs, b)).collect(),
        }
    }

    /// Rebuilds the root system and the partition; validates both.
    pub fn to_partition(&self) -> Result<(RootSystem, BlockPartition)> {
        let rs = system_from_names(&self.family, self.rank)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| block_from_coeffs(&rs, b))
            .collect::<Result<Vec<_>>>()?;
        let p = BlockPartition::new(blocks, &rs)?;
        Ok((rs, p))
    }
}

/// `{"m":3,"loops":[[3,3]],"edges":[[1,3,1],[2,3,2]]}` — edge triples are
/// `(plus vertex, minus vertex, basis label)`, all one-based.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: usize,
    pub loops: Vec<[usize; 2]>,
    pub edges: Vec<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<GraphPropertiesJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphPropertiesJson {
    pub a1: bool,
    pub a2: bool,
    pub a3: bool,
    pub a4: bool,
    pub a5: bool,
    pub star_shaped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hub: Option<usize>,
}

impl From<GraphProperties> for GraphPropertiesJson {
    fn from(p: GraphProperties) -> Self {
        GraphPropertiesJson {
            a1: p.a1,
            a2: p.a2,
            a3: p.a3,
            a4: p.a4,
            a5: p.a5,
            star_shaped: p.star_shaped,
            hub: p.hub,
        }
    }
}

impl GraphJson {
    pub fn from_graph(g: &PartitionGraph) -> Self {
        GraphJson {
            m: g.num_vertices(),
            loops: g.loops().iter().map(|&(v, l)| [v, l]).collect(),
            edges: g.edges().iter().map(|&(p, m, l)| [p, m, l]).collect(),
            properties: None,
        }
    }

    pub fn with_properties(mut self, props: GraphProperties) -> Self {
        self.properties = Some(props.into());
        self
    }

    pub fn to_graph(&self) -> Result<PartitionGraph> {
        PartitionGraph::new(
            self.m,
            self.loops.iter().map(|&[v, l]| (v, l)).collect(),
            self.edges.iter().map(|&[p, m, l]| (p, m, l)).collect(),
        )
    }
}

/// Partition JSON plus a per-block `cartans` entry: each block carries a
/// list of coefficient vectors over `H_1..H_n`, rationals as `"p/q"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub family: String,
    pub rank: usize,
    pub blocks: Vec<Vec<Vec<i64>>>,
    pub cartans: Vec<Vec<Vec<String>>>,
}

impl DecompositionJson {
    pub fn from_decomposition(rs: &RootSystem, d: &RegularDecomposition) -> Result<Self> {
        let mut blocks = Vec::with_capacity(d.summands().len());
        let mut cartans = Vec::with_capacity(d.summands().len());
        for s in d.summands() {
            blocks.push(sorted_block(rs, &s.root_part));
            let mut lines = Vec::with_capacity(s.cartan_basis.len());
            for c in &s.cartan_basis {
                let coeffs = crate::liealg::cartan_to_h_coeffs(c)?;
                lines.push(coeffs.iter().map(rat_to_string).collect());
            }
            cartans.push(lines);
        }
        Ok(DecompositionJson {
            family: rs.rtype().family().letter().to_string(),
            rank: rs.rank(),
            blocks,
            cartans,
        })
    }

    pub fn to_decomposition(&self) -> Result<(RootSystem, RegularDecomposition)> {
        let rs = system_from_names(&self.family, self.rank)?;
        if self.cartans.len() != self.blocks.len() {
            return Err(Error::Serialization(format!(
                "{} blocks but {} cartan entries",
                self.blocks.len(),
                self.cartans.len()
            )));
        }
        let n = rs.rank();
        let mut summands = Vec::with_capacity(self.blocks.len());
        for (block, lines) in self.blocks.iter().zip(&self.cartans) {
            let root_part = block_from_coeffs(&rs, block)?;
            let mut cartan_basis = Vec::with_capacity(lines.len());
            for line in lines {
                let coeffs = line
                    .iter()
                    .map(|s| rat_from_string(s))
                    .collect::<Result<Vec<_>>>()?;
                cartan_basis.push(h_coeffs_to_cartan(n, &coeffs)?);
            }
            summands.push(RegularSubalgebra::new(root_part, cartan_basis));
        }
        Ok((rs, RegularDecomposition::new(n, summands)))
    }
}

/// `{"valid":…, "type":[m,k], "witness":{…}}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifierReportJson {
    pub valid: bool,
    #[serde(rename = "type")]
    pub decomposition_type: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural_error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    /// One-based summand indices of the offending pair.
    pub pair: [usize; 2],
    /// The two bracketed basis elements.
    pub bracket_of: [ElemJson; 2],
    pub escapes_span: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Root { root: Vec<i64> },
    Cartan { cartan: Vec<String> },
}

impl From<&ElemRef> for ElemJson {
    fn from(e: &ElemRef) -> Self {
        match e {
            ElemRef::Root(coeffs) => ElemJson::Root {
                root: coeffs.clone(),
            },
            ElemRef::Cartan(coeffs) => ElemJson::Cartan {
                cartan: coeffs.iter().map(rat_to_string).collect(),
            },
        }
    }
}

impl VerifierReportJson {
    pub fn from_report(r: &VerifierReport) -> Self {
        VerifierReportJson {
            valid: r.valid,
            decomposition_type: [r.m, r.k],
            witness: r.witness.as_ref().map(|w: &BracketWitness| WitnessJson {
                pair: [w.pair.0, w.pair.1],
                bracket_of: [(&w.left).into(), (&w.right).into()],
                escapes_span: true,
            }),
            structural_error: r.structural_error.clone(),
        }
    }
}

/// Summary of one enumeration run. `wall_time` is in seconds and is the
/// only field excluded from regression comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnumerationJson {
    pub family: String,
    pub rank: usize,
    pub min_blocks: usize,
    pub modulo: String,
    pub class_count: usize,
    pub node_count: u64,
    pub wall_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<Vec<Vec<i64>>>>>,
}

impl EnumerationJson {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        rs: &RootSystem,
        min_blocks: usize,
        modulo: Equivalences,
        classes: &[BlockPartition],
        node_count: u64,
        wall_time: f64,
        with_classes: bool,
    ) -> Self {
        EnumerationJson {
            family: rs.rtype().family().letter().to_string(),
            rank: rs.rank(),
            min_blocks,
            modulo: modulo.to_string(),
            class_count: classes.len(),
            node_count,
            wall_time,
            classes: with_classes.then(|| {
                classes
                    .iter()
                    .map(|p| p.blocks().iter().map(|b| sorted_block(rs, b)).collect())
                    .collect()
            }),
        }
    }

    /// One CSV line matching [`enumeration_csv_header`].
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3}",
            self.family,
            self.rank,
            self.min_blocks,
            self.modulo,
            self.class_count,
            self.node_count,
            self.wall_time
        )
    }
}

pub fn enumeration_csv_header() -> &'static str {
    "family,rank,min_blocks,modulo,class_count,node_count,wall_time"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{construct_k1k, is_regular_decomposition};
    use crate::regpart::{
        build_partition_graph, check_graph_properties, finest_partition, IntPartition,
        Orientation,
    };

    #[test]
    fn partition_round_trip() {
        let rs = system_from_names("A", 3).unwrap();
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        let j = PartitionJson::from_partition(&rs, &p);
        let text = serde_json::to_string(&j).unwrap();
        let back: PartitionJson = serde_json::from_str(&text).unwrap();
        let (rs2, p2) = back.to_partition().unwrap();
        assert_eq!(rs2.rtype(), rs.rtype());
        assert_eq!(p2.blocks(), p.blocks());
    }

    #[test]
    fn partition_rejects_bad_blocks() {
        let j = PartitionJson {
            family: "A".into(),
            rank: 2,
            blocks: vec![vec![vec![1, 0]], vec![vec![5, 5]]],
        };
        assert!(j.to_partition().is_err());
        let j = PartitionJson {
            family: "Q".into(),
            rank: 2,
            blocks: vec![],
        };
        assert!(j.to_partition().is_err());
    }

    #[test]
    fn graph_json_matches_spec_shape() {
        let rs = system_from_names("A", 3).unwrap();
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        let g = build_partition_graph(&rs, &p, &rs.beta_chain_basis()).unwrap();
        let j = GraphJson::from_graph(&g);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with("{\"m\":4,\"loops\":[],\"edges\":"));
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        let g2 = back.to_graph().unwrap();
        assert_eq!(g2, g);

        let with_props = GraphJson::from_graph(&g).with_properties(check_graph_properties(&g));
        let text = serde_json::to_string(&with_props).unwrap();
        assert!(text.contains("\"star_shaped\":true"));
    }

    #[test]
    fn decomposition_round_trip() {
        let rs = system_from_names("A", 3).unwrap();
        let lambda = IntPartition::new(vec![2, 1]).unwrap();
        let d = construct_k1k(&rs, &lambda).unwrap();
        let j = DecompositionJson::from_decomposition(&rs, &d).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        let (rs2, d2) = back.to_decomposition().unwrap();
        let report = is_regular_decomposition(&rs2, &d2).unwrap();
        assert!(report.valid);
        assert_eq!((report.m, report.k), (3, 2));
        for (a, b) in d.summands().iter().zip(d2.summands()) {
            assert_eq!(a.root_part, b.root_part);
            assert_eq!(a.cartan_basis, b.cartan_basis);
        }
    }

    #[test]
    fn verifier_report_shape() {
        let rs = system_from_names("A", 2).unwrap();
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        let d = RegularDecomposition::new(
            2,
            vec![
                RegularSubalgebra::new(
                    p.blocks()[0],
                    vec![
                        crate::liealg::h_matrix(2, 1),
                        crate::liealg::h_matrix(2, 2),
                    ],
                ),
                RegularSubalgebra::new(p.blocks()[1], vec![]),
                RegularSubalgebra::new(p.blocks()[2], vec![]),
            ],
        );
        let report = is_regular_decomposition(&rs, &d).unwrap();
        let j = VerifierReportJson::from_report(&report);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"valid\":false"));
        assert!(text.contains("\"type\":[3,1]"));
        assert!(text.contains("\"pair\":[2,3]"));
        assert!(text.contains("\"escapes_span\":true"));
    }

    #[test]
    fn enumeration_csv_format() {
        let rs = system_from_names("A", 2).unwrap();
        let j = EnumerationJson::new(
            &rs,
            3,
            Equivalences::renumber_sign(),
            &[],
            42,
            0.5,
            false,
        );
        assert_eq!(j.to_csv_row(), "A,2,3,renumber+sign,0,42,0.500");
        assert_eq!(
            enumeration_csv_header(),
            "family,rank,min_blocks,modulo,class_count,node_count,wall_time"
        );
    }
}
