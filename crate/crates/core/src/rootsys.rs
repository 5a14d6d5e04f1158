//! Finite irreducible root systems as integer lattice data.
//!
//! A root is stored as its integer coefficient vector over the simple roots
//! `α_1..α_n`, so every query (negation, sums, closure) is a lattice
//! operation and no irrational arithmetic ever appears. The full system is
//! generated by closing the simple roots under the simple reflections
//! computed from the Cartan matrix, which is uniform across all families.
//!
//! Simple roots occupy the first `n` indices in Dynkin-diagram order:
//! `B_n` places its short root at position `n`, `C_n` its long root at
//! position `n`, `D_n` and `E_n` carry the fork at the tail end.

use std::collections::HashMap;
use std::fmt;

use crate::weyl::CartanMatrix;
use crate::{Error, Result};

/// Family letter of an irreducible root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Typed rank of a root system, validated against the family constraints.
///
/// `C_2` is rejected as isomorphic to `B_2`, so the `C` family starts at
/// rank 3; `E` exists only for ranks 6–8, `F` only at 4, `G` only at 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootSystemType { family, rank })
        } else {
            let reason = match family {
                Family::A => "A requires n >= 1",
                Family::B => "B requires n >= 2",
                Family::C => "C requires n >= 3 (C_2 is isomorphic to B_2)",
                Family::D => "D requires n >= 4",
                Family::E => "E requires n in {6, 7, 8}",
                Family::F => "F requires n = 4",
                Family::G => "G requires n = 2",
            };
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                reason: reason.to_string(),
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of roots, from the classification tables. The constructed
    /// system is checked against this count.
    pub fn num_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Order of the Weyl group, from the classification tables.
    pub fn weyl_order(&self) -> u64 {
        fn fact(n: u64) -> u64 {
            (1..=n).product()
        }
        let n = self.rank as u64;
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A root, as its coefficient vector over the simple roots.
///
/// The coefficients of a root are all nonnegative or all nonpositive and
/// never the zero vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|&c| -c).collect())
    }

    fn plus(&self, other: &Root) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a + b)
            .collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Capacity of [`RootSet`] in bits; covers `E_8` with its 240 roots.
const SET_WORDS: usize = 4;
pub const MAX_ROOTS: usize = SET_WORDS * 64;

/// A subset of root indices with bitset semantics.
///
/// Plain value type: cheap to copy, hash and compare, which the
/// backtracking enumeration relies on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootSet {
    words: [u64; SET_WORDS],
}

impl RootSet {
    pub fn empty() -> Self {
        RootSet::default()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = RootSet::empty();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < MAX_ROOTS);
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        self.words[index / 64] &= !(1 << (index % 64));
    }

    pub fn contains(&self, index: usize) -> bool {
        index < MAX_ROOTS && self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        RootSet { words }
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        RootSet { words }
    }

    pub fn difference(&self, other: &RootSet) -> RootSet {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        RootSet { words }
    }

    pub fn is_disjoint(&self, other: &RootSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Iterates member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        RootSet::from_indices(iter)
    }
}

const NO_SUM: u32 = u32::MAX;

/// A fully constructed root system with sum and negation lookup tables.
///
/// Immutable after construction; all queries are table lookups.
pub struct RootSystem {
    rtype: RootSystemType,
    cartan: CartanMatrix,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, u32>,
    neg: Vec<u32>,
    /// Flattened `(i, j) -> index of roots[i] + roots[j]`, `NO_SUM` if the
    /// sum is not a root.
    sum: Vec<u32>,
}

impl RootSystem {
    /// Builds the full root system of the given type: closes the simple
    /// roots under all simple reflections until stable, then fills the
    /// negation map and the sum table.
    pub fn build(rtype: RootSystemType) -> Self {
        let n = rtype.rank();
        let cartan = CartanMatrix::for_type(rtype);

        let mut roots: Vec<Root> = Vec::with_capacity(rtype.num_roots());
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        for i in 0..n {
            let mut coeffs = vec![0i64; n];
            coeffs[i] = 1;
            index.insert(coeffs.clone(), roots.len() as u32);
            roots.push(Root::new(coeffs));
        }

        let mut head = 0;
        while head < roots.len() {
            for i in 0..n {
                let image = cartan.reflect(i, roots[head].coeffs());
                if !index.contains_key(&image) {
                    index.insert(image.clone(), roots.len() as u32);
                    roots.push(Root::new(image));
                }
            }
            head += 1;
        }

        let len = roots.len();
        assert_eq!(
            len,
            rtype.num_roots(),
            "reflection closure of {rtype} produced {len} roots"
        );
        assert!(len <= MAX_ROOTS, "{rtype} exceeds the RootSet capacity");
        debug_assert!(roots.iter().all(|r| {
            r.coeffs().iter().all(|&c| c >= 0) || r.coeffs().iter().all(|&c| c <= 0)
        }));

        let neg = roots
            .iter()
            .map(|r| index[&r.negated().0])
            .collect::<Vec<_>>();

        let mut sum = vec![NO_SUM; len * len];
        for i in 0..len {
            for j in 0..len {
                if let Some(&k) = index.get(&roots[i].plus(&roots[j])) {
                    sum[i * len + j] = k;
                }
            }
        }

        RootSystem {
            rtype,
            cartan,
            roots,
            index,
            neg,
            sum,
        }
    }

    pub fn rtype(&self) -> RootSystemType {
        self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rtype.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.roots[index]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Index of the root with the given coefficient vector.
    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).map(|&i| i as usize)
    }

    pub fn require_index(&self, coeffs: &[i64]) -> Result<usize> {
        self.index_of(coeffs)
            .ok_or_else(|| Error::NotARoot(coeffs.to_vec()))
    }

    /// Index of `-roots[i]`.
    pub fn neg(&self, index: usize) -> usize {
        self.neg[index] as usize
    }

    /// Index of `roots[i] + roots[j]` when the sum is again a root.
    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        match self.sum[i * self.roots.len() + j] {
            NO_SUM => None,
            k => Some(k as usize),
        }
    }

    /// The set of all root indices.
    pub fn full_set(&self) -> RootSet {
        RootSet::from_indices(0..self.roots.len())
    }

    /// The set of positive roots.
    pub fn positive_set(&self) -> RootSet {
        RootSet::from_indices(
            (0..self.roots.len()).filter(|&i| self.roots[i].is_positive()),
        )
    }

    fn check_set(&self, s: &RootSet) -> Result<()> {
        match s.iter().find(|&i| i >= self.roots.len()) {
            Some(i) => Err(Error::InvalidRootIndex {
                index: i,
                len: self.roots.len(),
            }),
            None => Ok(()),
        }
    }

    /// Whether `s` is closed: for all `a, b` in `s` whose sum is a root,
    /// the sum lies in `s`. The empty set and the full system are closed.
    pub fn is_closed(&self, s: &RootSet) -> Result<bool> {
        self.check_set(s)?;
        for i in s.iter() {
            for j in s.iter() {
                if let Some(k) = self.sum(i, j) {
                    if !s.contains(k) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// The symmetric part `s ∩ (−s)`.
    pub fn symmetric_part(&self, s: &RootSet) -> Result<RootSet> {
        self.check_set(s)?;
        Ok(RootSet::from_indices(
            s.iter().filter(|&i| s.contains(self.neg(i))),
        ))
    }

    /// Negates a set elementwise.
    pub fn negate_set(&self, s: &RootSet) -> RootSet {
        RootSet::from_indices(s.iter().map(|i| self.neg(i)))
    }

    /// The chain basis used for the partition graphs: `β_i = α_1 + ⋯ + α_i`
    /// for `A`/`B`/`C`/`F`, the `γ`-variant with the fork root for `D` and
    /// `E`, and the pair of simple roots for `G_2`. Returns root indices.
    ///
    /// Every returned vector is an actual root and the family-specific set
    /// is an integral basis of the root lattice.
    pub fn beta_chain_basis(&self) -> Vec<usize> {
        let n = self.rank();
        let chain = |upto: usize| -> Vec<i64> {
            let mut c = vec![0i64; n];
            for x in c.iter_mut().take(upto) {
                *x = 1;
            }
            c
        };
        let coeff_vectors: Vec<Vec<i64>> = match self.rtype.family() {
            Family::A | Family::B | Family::C | Family::F => {
                (1..=n).map(chain).collect()
            }
            Family::G => vec![vec![1, 0], vec![0, 1]],
            Family::D => {
                // γ_i = β_i for i < n, γ_n = α_1 + ... + α_{n−2} + α_n.
                let mut v: Vec<Vec<i64>> = (1..n).map(chain).collect();
                let mut last = chain(n - 2);
                last[n - 1] = 1;
                v.push(last);
                v
            }
            Family::E => {
                // γ_i = β_i for i ≤ n−2, γ_{n−1} = α_1 + ... + α_{n−3} + α_{n−1},
                // γ_n = γ_{n−1} + α_n.
                let mut v: Vec<Vec<i64>> = (1..=n - 2).map(chain).collect();
                let mut g = chain(n - 3);
                g[n - 2] = 1;
                v.push(g.clone());
                g[n - 1] = 1;
                v.push(g);
                v
            }
        };
        coeff_vectors
            .iter()
            .map(|c| {
                self.index_of(c)
                    .expect("chain basis element is always a root")
            })
            .collect()
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("rtype", &self.rtype.to_string())
            .field("num_roots", &self.roots.len())
            .finish()
    }
}
