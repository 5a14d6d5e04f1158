//! Simple reflections, Weyl group enumeration and canonical forms.
//!
//! Reflections are computed from Cartan integers rather than an inner
//! product: `s_i(β) = β − ⟨β, α_i^∨⟩ α_i` with `⟨β, α_i^∨⟩ = Σ_j c_j a_ji`
//! for `β = Σ_j c_j α_j`. On the root lattice this gives exactly the same
//! maps as the Killing-form pairing and stays in integer arithmetic.
//!
//! Partitions of a root system are compared modulo a caller-chosen set of
//! equivalences: block renumbering, the global swap of positive and
//! negative roots, and the Weyl group action. The canonical representative
//! of an orbit is the lexicographically least normal form, where a normal
//! form lists blocks sorted by (size, sorted member list).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::regpart::BlockPartition;
use crate::rootsys::{Family, Root, RootSystem, RootSystemType};
use crate::{Error, Result};

/// Largest Weyl group that [`canonicalize`] is willing to enumerate.
pub const WEYL_ENUM_LIMIT: u64 = 10_000_000;

/// Integer Cartan matrix `a[i][j] = ⟨α_i, α_j^∨⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    /// The Cartan matrix of an irreducible system, with the simple roots
    /// ordered as in the Dynkin diagrams used throughout this crate:
    /// `B_n` with the short root last, `C_n` with the long root last,
    /// `D_n`/`E_n` with the fork attached at the tail.
    pub fn for_type(rtype: RootSystemType) -> CartanMatrix {
        let n = rtype.rank();
        let mut m = CartanMatrix {
            n,
            entries: vec![0; n * n],
        };
        for i in 0..n {
            m.set(i, i, 2);
        }
        let mut bond = |i: usize, j: usize, down: i64, up: i64| {
            m.set(i, j, down);
            m.set(j, i, up);
        };
        match rtype.family() {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    bond(i, i + 1, -1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 2 {
                    bond(i, i + 1, -1, -1);
                }
                // α_{n−1} long, α_n short.
                bond(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                for i in 0..n - 2 {
                    bond(i, i + 1, -1, -1);
                }
                // α_{n−1} short, α_n long.
                bond(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                for i in 0..n - 3 {
                    bond(i, i + 1, -1, -1);
                }
                bond(n - 3, n - 2, -1, -1);
                bond(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                // Path α_1 .. α_{n−2}; α_{n−1} attached to α_{n−3};
                // α_n attached to α_{n−1}.
                for i in 0..n - 3 {
                    bond(i, i + 1, -1, -1);
                }
                bond(n - 4, n - 2, -1, -1);
                bond(n - 2, n - 1, -1, -1);
            }
            Family::F => {
                bond(0, 1, -1, -1);
                // α_2 long, α_3 short: a_23 = −2.
                bond(1, 2, -2, -1);
                bond(2, 3, -1, -1);
            }
            Family::G => {
                // α_1 short, α_2 long: a_12 = −1, a_21 = −3.
                bond(0, 1, -1, -3);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Entry `a[i][j]`, zero-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    /// Image of a lattice vector under the simple reflection `s_{i+1}`
    /// (zero-based `i`): the coefficient of `α_{i+1}` becomes
    /// `c_i − Σ_j c_j a_ji`.
    pub fn reflect(&self, i: usize, coeffs: &[i64]) -> Vec<i64> {
        let pairing: i64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * self.entry(j, i))
            .sum();
        let mut out = coeffs.to_vec();
        out[i] -= pairing;
        out
    }

    /// Checks the defining invariants: diagonal 2, off-diagonal entries
    /// nonpositive, and zero entries symmetric.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.entry(i, i) != 2 {
                return Err(Error::InvalidArgument(format!(
                    "Cartan diagonal entry ({i},{i}) is not 2"
                )));
            }
            for j in 0..self.n {
                if i != j && self.entry(i, j) > 0 {
                    return Err(Error::InvalidArgument(format!(
                        "positive off-diagonal Cartan entry at ({i},{j})"
                    )));
                }
                if (self.entry(i, j) == 0) != (self.entry(j, i) == 0) {
                    return Err(Error::InvalidArgument(format!(
                        "asymmetric zero pattern at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A word in the simple reflections, letters `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylWord(Vec<usize>);

impl WeylWord {
    pub fn new(letters: Vec<usize>, rank: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > rank) {
            return Err(Error::InvalidArgument(format!(
                "reflection index {bad} out of range 1..={rank}"
            )));
        }
        Ok(WeylWord(letters))
    }

    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

/// Applies the simple reflection `s_i` (one-based `i`) to a root.
///
/// The Weyl group permutes the root system, so the image is again a root.
pub fn simple_reflection(rs: &RootSystem, i: usize, r: &Root) -> Result<Root> {
    if i == 0 || i > rs.rank() {
        return Err(Error::InvalidArgument(format!(
            "reflection index {i} out of range 1..={}",
            rs.rank()
        )));
    }
    rs.require_index(r.coeffs())?;
    let image = rs.cartan().reflect(i - 1, r.coeffs());
    debug_assert!(rs.index_of(&image).is_some());
    Ok(Root::new(image))
}

/// Permutation of root indices induced by `s_i` (one-based `i`).
fn reflection_perm(rs: &RootSystem, i: usize) -> Vec<u32> {
    (0..rs.num_roots())
        .map(|r| {
            let image = rs.cartan().reflect(i - 1, rs.root(r).coeffs());
            rs.index_of(&image).expect("reflection permutes roots") as u32
        })
        .collect()
}

/// Applies a Weyl word to every root of every block, right-to-left;
/// block order is preserved.
pub fn apply_word(rs: &RootSystem, w: &WeylWord, p: &BlockPartition) -> BlockPartition {
    let perms: Vec<Vec<u32>> = (1..=rs.rank()).map(|i| reflection_perm(rs, i)).collect();
    let image_of = |mut r: usize| {
        for &letter in w.letters().iter().rev() {
            r = perms[letter - 1][r] as usize;
        }
        r
    };
    BlockPartition::from_blocks_unchecked(
        p.blocks()
            .iter()
            .map(|b| b.iter().map(image_of).collect())
            .collect(),
    )
}

/// The Weyl group as the set of permutations it induces on the root list.
#[derive(Debug)]
pub struct WeylGroup {
    perms: Vec<Vec<u32>>,
}

impl WeylGroup {
    /// Enumerates the full group by breadth-first closure over the simple
    /// reflections, deduplicated by the induced permutation of the roots.
    /// Refuses groups larger than `limit` up front.
    pub fn enumerate(rs: &RootSystem, limit: u64) -> Result<WeylGroup> {
        let order = rs.rtype().weyl_order();
        if order > limit {
            return Err(Error::CapacityExceeded {
                what: format!("Weyl group of {}", rs.rtype()),
                size: order,
                limit,
            });
        }
        let generators: Vec<Vec<u32>> =
            (1..=rs.rank()).map(|i| reflection_perm(rs, i)).collect();
        let identity: Vec<u32> = (0..rs.num_roots() as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q: Vec<u32> = p.iter().map(|&r| g[r as usize]).collect();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        assert_eq!(seen.len() as u64, order, "enumerated group has wrong order");
        let mut perms: Vec<Vec<u32>> = seen.into_iter().collect();
        perms.sort();
        Ok(WeylGroup { perms })
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }
}

/// Equivalences a partition may be quotiented by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Equivalences {
    /// Re-numbering of the blocks.
    pub renumber: bool,
    /// Global swap of positive and negative roots.
    pub sign: bool,
    /// Action of the Weyl group.
    pub weyl: bool,
}

impl Equivalences {
    pub const NONE: Equivalences = Equivalences {
        renumber: false,
        sign: false,
        weyl: false,
    };

    pub fn renumber_sign() -> Equivalences {
        Equivalences {
            renumber: true,
            sign: true,
            weyl: false,
        }
    }

    pub fn renumber_sign_weyl() -> Equivalences {
        Equivalences {
            renumber: true,
            sign: true,
            weyl: true,
        }
    }

    /// Parses a list like `renumber,sign,weyl`; `none` (or the empty
    /// string) selects the trivial quotient.
    pub fn parse(s: &str) -> Result<Equivalences> {
        let mut e = Equivalences::NONE;
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "none" {
            return Ok(e);
        }
        for tok in trimmed.split([',', '+']) {
            match tok.trim() {
                "renumber" => e.renumber = true,
                "sign" => e.sign = true,
                "weyl" => e.weyl = true,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown equivalence {other:?} (expected renumber, sign, weyl or none)"
                    )))
                }
            }
        }
        Ok(e)
    }
}

impl fmt::Display for Equivalences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.renumber {
            parts.push("renumber");
        }
        if self.sign {
            parts.push("sign");
        }
        if self.weyl {
            parts.push("weyl");
        }
        if parts.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Blocks as sorted index lists, sorted by (size, members). This is the
/// normal form all partition comparisons use.
pub(crate) fn normal_form(p: &BlockPartition) -> Vec<Vec<u32>> {
    let mut blocks: Vec<Vec<u32>> = p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|i| i as u32).collect())
        .collect();
    blocks.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    blocks
}

fn nf_key(nf: &[Vec<u32>]) -> Vec<(usize, Vec<u32>)> {
    nf.iter().map(|b| (b.len(), b.clone())).collect()
}

/// Precomputed state for canonicalizing many partitions over one system
/// under one equivalence set. Enumerates the Weyl group once.
pub struct Canonicalizer<'a> {
    rs: &'a RootSystem,
    modulo: Equivalences,
    group: Option<WeylGroup>,
}

impl<'a> Canonicalizer<'a> {
    pub fn new(rs: &'a RootSystem, modulo: Equivalences) -> Result<Self> {
        let group = if modulo.weyl {
            Some(WeylGroup::enumerate(rs, WEYL_ENUM_LIMIT)?)
        } else {
            None
        };
        Ok(Canonicalizer { rs, modulo, group })
    }

    /// Normal form of the least representative of the orbit of `p`.
    pub fn canonical_normal_form(&self, p: &BlockPartition) -> Vec<Vec<u32>> {
        let mut variants: Vec<Vec<Vec<u32>>> = Vec::new();
        let base = normal_form(p);
        let sign_images: Vec<Vec<Vec<u32>>> = if self.modulo.sign {
            vec![base.clone(), negate_nf(self.rs, &base)]
        } else {
            vec![base.clone()]
        };
        match &self.group {
            None => variants.extend(sign_images),
            Some(g) => {
                for nf in &sign_images {
                    for w in g.perms() {
                        variants.push(apply_perm_nf(nf, w));
                    }
                }
            }
        }
        variants
            .into_iter()
            .min_by_key(|nf| nf_key(nf))
            .expect("at least one variant")
    }

    pub fn canonical(&self, p: &BlockPartition) -> Result<BlockPartition> {
        p.validate(self.rs)?;
        let nf = self.canonical_normal_form(p);
        Ok(BlockPartition::from_blocks_unchecked(
            nf.iter()
                .map(|b| b.iter().map(|&i| i as usize).collect())
                .collect(),
        ))
    }
}

fn negate_nf(rs: &RootSystem, nf: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut blocks: Vec<Vec<u32>> = nf
        .iter()
        .map(|b| {
            let mut v: Vec<u32> = b.iter().map(|&i| rs.neg(i as usize) as u32).collect();
            v.sort_unstable();
            v
        })
        .collect();
    blocks.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    blocks
}

fn apply_perm_nf(nf: &[Vec<u32>], perm: &[u32]) -> Vec<Vec<u32>> {
    let mut blocks: Vec<Vec<u32>> = nf
        .iter()
        .map(|b| {
            let mut v: Vec<u32> = b.iter().map(|&i| perm[i as usize]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    blocks.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    blocks
}

/// Lexicographically least representative of the orbit of `p` under the
/// chosen equivalences. Two partitions are equivalent under `modulo` iff
/// their canonical forms are equal.
pub fn canonicalize(
    rs: &RootSystem,
    p: &BlockPartition,
    modulo: Equivalences,
) -> Result<BlockPartition> {
    Canonicalizer::new(rs, modulo)?.canonical(p)
}
