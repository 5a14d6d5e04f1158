//! The traceless-matrix realization of `sl(n+1)` and the regular
//! decomposition verifier.
//!
//! Root vectors follow the row model of the finest partitions: the root
//! `−β_i + β_j` corresponds to the unit matrix `E_{i+1, j+1}` (one-based),
//! so the block of roots with source `i` is exactly matrix row `i+1`.
//! Cartan elements are written over the basis `H_i = E_{1,1} − E_{i+1,i+1}`,
//! which agrees with the coroot sum `H_{β_i} = H_{α_1} + ⋯ + H_{α_i}`.
//!
//! All closure checks are span-membership tests by exact rational row
//! reduction; a `false` from the verifier always comes with a concrete
//! witness bracket that escapes its span.

mod construct;
mod rat;

pub use construct::{
    construct_k1k, construct_kk, extend_partition_to_decomposition,
    extend_partition_with_style, extend_two_block, extend_two_block_split, CartanStyle,
};
pub use rat::{bracket, rat, rat_frac, rat_from_string, rat_to_string, Rat, RatMatrix, RowSpace};

use num_traits::Zero;

use crate::regpart::BetaChain;
use crate::rootsys::{Family, RootSet, RootSystem};
use crate::{Error, Result};

/// The standard basis of `sl(n+1)`: all off-diagonal unit matrices
/// followed by `H_1, …, H_n`. Its length is `(n+1)² − 1`.
pub fn sl_basis(n: usize) -> Vec<RatMatrix> {
    let np1 = n + 1;
    let mut basis = Vec::with_capacity(np1 * np1 - 1);
    for i in 0..np1 {
        for j in 0..np1 {
            if i != j {
                basis.push(RatMatrix::unit(np1, i, j));
            }
        }
    }
    for i in 1..=n {
        basis.push(h_matrix(n, i));
    }
    basis
}

/// `H_i = E_{1,1} − E_{i+1,i+1}` (one-based `i`, `H_0 = 0`).
pub fn h_matrix(n: usize, i: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(n + 1);
    if i == 0 {
        return m;
    }
    assert!(i <= n);
    m.set(0, 0, rat(1));
    m.set(i, i, rat(-1));
    m
}

/// `H_γ` for a root-lattice vector `γ = Σ c_t α_t`: the sum `Σ c_t H_{α_t}`
/// with `H_{α_t} = E_{t,t} − E_{t+1,t+1}`.
pub fn cartan_from_alpha_coeffs(coeffs: &[i64]) -> RatMatrix {
    let n = coeffs.len();
    let mut m = RatMatrix::zero(n + 1);
    for (t, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            let v = m.entry(t, t).clone() + rat(c);
            m.set(t, t, v);
            let w = m.entry(t + 1, t + 1).clone() - rat(c);
            m.set(t + 1, t + 1, w);
        }
    }
    m
}

/// Root vector of a root of `A_n`: `E_{i+1, j+1}` for the pair
/// `(i, j)` with `root = β_j − β_i`.
pub fn root_vector(chain: &BetaChain, root_index: usize) -> RatMatrix {
    let (i, j) = chain.pair_of_root(root_index);
    RatMatrix::unit(chain.rank() + 1, i, j)
}

/// Coefficients of a diagonal traceless matrix over `H_1..H_n`:
/// `c_i = −d_{i+1}` for diagonal entries `d_1..d_{n+1}`.
pub fn cartan_to_h_coeffs(m: &RatMatrix) -> Result<Vec<Rat>> {
    if !m.is_diagonal() {
        return Err(Error::InvalidArgument(
            "Cartan element is not diagonal".into(),
        ));
    }
    if !m.trace().is_zero() {
        return Err(Error::InvalidArgument(
            "Cartan element is not traceless".into(),
        ));
    }
    Ok((1..m.size()).map(|i| -m.entry(i, i)).collect())
}

/// The diagonal matrix `Σ c_i H_i` from coefficients over `H_1..H_n`.
pub fn h_coeffs_to_cartan(n: usize, coeffs: &[Rat]) -> Result<RatMatrix> {
    if coeffs.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} Cartan coefficients, got {}",
            coeffs.len()
        )));
    }
    let mut m = RatMatrix::zero(n + 1);
    let total: Rat = coeffs.iter().sum();
    m.set(0, 0, total);
    for (i, c) in coeffs.iter().enumerate() {
        m.set(i + 1, i + 1, -c);
    }
    Ok(m)
}

/// A regular subalgebra: a root subset plus a basis of its Cartan part
/// (diagonal traceless matrices).
#[derive(Debug, Clone)]
pub struct RegularSubalgebra {
    pub root_part: RootSet,
    pub cartan_basis: Vec<RatMatrix>,
}

impl RegularSubalgebra {
    pub fn new(root_part: RootSet, cartan_basis: Vec<RatMatrix>) -> Self {
        RegularSubalgebra {
            root_part,
            cartan_basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.root_part.len() + self.cartan_basis.len()
    }
}

/// A candidate regular decomposition of `sl(n+1)`.
#[derive(Debug, Clone)]
pub struct RegularDecomposition {
    n: usize,
    summands: Vec<RegularSubalgebra>,
}

impl RegularDecomposition {
    pub fn new(n: usize, summands: Vec<RegularSubalgebra>) -> Self {
        RegularDecomposition { n, summands }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn summands(&self) -> &[RegularSubalgebra] {
        &self.summands
    }

    pub fn summands_mut(&mut self) -> &mut Vec<RegularSubalgebra> {
        &mut self.summands
    }

    /// Forgets the Cartan parts, leaving the root partition.
    pub fn root_partition(&self) -> crate::regpart::BlockPartition {
        crate::regpart::BlockPartition::from_blocks_unchecked(
            self.summands.iter().map(|s| s.root_part).collect(),
        )
    }
}

/// The type `(m, k)`: `m` summands, of which `k` carry a nonzero Cartan
/// part. Purely syntactic; does not imply validity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionType {
    pub m: usize,
    pub k: usize,
}

pub fn decomposition_type(d: &RegularDecomposition) -> DecompositionType {
    DecompositionType {
        m: d.summands().len(),
        k: d
            .summands()
            .iter()
            .filter(|s| s.cartan_basis.iter().any(|c| !c.is_zero()))
            .count(),
    }
}

/// One basis element of a summand, for witness reporting.
#[derive(Debug, Clone, PartialEq)]
pub enum ElemRef {
    /// A root vector, by the root's coefficient vector over simple roots.
    Root(Vec<i64>),
    /// A Cartan element, by its coefficients over `H_1..H_n`.
    Cartan(Vec<Rat>),
}

/// A bracket that escapes the span it must lie in.
#[derive(Debug, Clone)]
pub struct BracketWitness {
    /// One-based summand indices; equal when a single summand fails.
    pub pair: (usize, usize),
    pub left: ElemRef,
    pub right: ElemRef,
    pub bracket: RatMatrix,
}

/// Outcome of [`is_regular_decomposition`].
#[derive(Debug, Clone)]
pub struct VerifierReport {
    pub valid: bool,
    pub m: usize,
    pub k: usize,
    /// Set when a closure check failed.
    pub witness: Option<BracketWitness>,
    /// Set when a direct-sum invariant failed before any bracket ran.
    pub structural_error: Option<String>,
}

impl VerifierReport {
    fn ok(ty: DecompositionType) -> Self {
        VerifierReport {
            valid: true,
            m: ty.m,
            k: ty.k,
            witness: None,
            structural_error: None,
        }
    }

    fn structural(ty: DecompositionType, msg: String) -> Self {
        VerifierReport {
            valid: false,
            m: ty.m,
            k: ty.k,
            witness: None,
            structural_error: Some(msg),
        }
    }

    fn witnessed(ty: DecompositionType, w: BracketWitness) -> Self {
        VerifierReport {
            valid: false,
            m: ty.m,
            k: ty.k,
            witness: Some(w),
            structural_error: None,
        }
    }
}

fn require_type_a(rs: &RootSystem, n: usize) -> Result<()> {
    if rs.rtype().family() != Family::A || rs.rank() != n {
        return Err(Error::Unsupported(format!(
            "expected the root system A_{n}, got {}",
            rs.rtype()
        )));
    }
    Ok(())
}

/// Basis of a summand as (descriptor, matrix) pairs: root vectors in root
/// index order, then the Cartan basis.
fn summand_basis(
    rs: &RootSystem,
    chain: &BetaChain,
    s: &RegularSubalgebra,
) -> Result<Vec<(ElemRef, RatMatrix)>> {
    let mut basis = Vec::with_capacity(s.dim());
    for r in s.root_part.iter() {
        if r >= rs.num_roots() {
            return Err(Error::InvalidRootIndex {
                index: r,
                len: rs.num_roots(),
            });
        }
        basis.push((
            ElemRef::Root(rs.root(r).coeffs().to_vec()),
            root_vector(chain, r),
        ));
    }
    for c in &s.cartan_basis {
        if c.size() != rs.rank() + 1 {
            return Err(Error::InvalidArgument(format!(
                "Cartan element has size {}, expected {}",
                c.size(),
                rs.rank() + 1
            )));
        }
        basis.push((ElemRef::Cartan(cartan_to_h_coeffs(c)?), c.clone()));
    }
    Ok(basis)
}

fn span_of(basis: &[(ElemRef, RatMatrix)], width: usize) -> RowSpace {
    let mut space = RowSpace::new(width);
    for (_, m) in basis {
        space.insert(m.flatten());
    }
    space
}

/// True iff every pairwise bracket of basis elements stays in the span.
///
/// Membership is decided by exact rational row reduction; no tolerance.
pub fn is_subalgebra(rs: &RootSystem, s: &RegularSubalgebra) -> Result<bool> {
    let chain = BetaChain::new(rs)?;
    let basis = summand_basis(rs, &chain, s)?;
    Ok(first_escape(&basis, &basis, &span_of(&basis, (rs.rank() + 1).pow(2)))?.is_none())
}

/// First bracket `[x, y]` with `x` from `left`, `y` from `right` that is
/// not in `span`.
fn first_escape(
    left: &[(ElemRef, RatMatrix)],
    right: &[(ElemRef, RatMatrix)],
    span: &RowSpace,
) -> Result<Option<(ElemRef, ElemRef, RatMatrix)>> {
    for (lx, mx) in left {
        for (ly, my) in right {
            let b = bracket(mx, my)?;
            if b.is_zero() {
                continue;
            }
            if !span.contains_matrix(&b) {
                return Ok(Some((lx.clone(), ly.clone(), b)));
            }
        }
    }
    Ok(None)
}

/// Verifies a candidate regular decomposition of `sl(n+1)`.
///
/// Checks, in order: the root parts partition the root system; every
/// Cartan element is diagonal and traceless; the Cartan parts are jointly
/// independent and span the diagonal traceless subspace; the total
/// dimension is `(n+1)² − 1`; every summand is closed under the bracket;
/// and every pairwise sum of summands is closed. On the first failing
/// bracket the report carries the offending summand pair and the bracket.
pub fn is_regular_decomposition(
    rs: &RootSystem,
    d: &RegularDecomposition,
) -> Result<VerifierReport> {
    let n = d.rank();
    require_type_a(rs, n)?;
    let ty = decomposition_type(d);
    let width = (n + 1) * (n + 1);

    // Direct-sum invariants on the root parts.
    let mut union = RootSet::empty();
    let mut total_roots = 0;
    for (i, s) in d.summands().iter().enumerate() {
        if s.root_part.is_empty() && s.cartan_basis.is_empty() {
            return Ok(VerifierReport::structural(ty, format!("summand {} is empty", i + 1)));
        }
        if let Some(bad) = s.root_part.iter().find(|&r| r >= rs.num_roots()) {
            return Err(Error::InvalidRootIndex {
                index: bad,
                len: rs.num_roots(),
            });
        }
        total_roots += s.root_part.len();
        union = union.union(&s.root_part);
    }
    if total_roots != union.len() {
        return Ok(VerifierReport::structural(
            ty,
            "root parts are not pairwise disjoint".into(),
        ));
    }
    if union != rs.full_set() {
        return Ok(VerifierReport::structural(
            ty,
            format!("root parts cover {} of {} roots", union.len(), rs.num_roots()),
        ));
    }

    // Cartan parts: diagonal, traceless, jointly independent, spanning h.
    let mut cartan_space = RowSpace::new(width);
    let mut cartan_count = 0;
    for (i, s) in d.summands().iter().enumerate() {
        for c in &s.cartan_basis {
            if c.size() != n + 1 {
                return Err(Error::InvalidArgument(format!(
                    "summand {} Cartan element has size {}, expected {}",
                    i + 1,
                    c.size(),
                    n + 1
                )));
            }
            if !c.is_diagonal() || !c.trace().is_zero() {
                return Ok(VerifierReport::structural(
                    ty,
                    format!("summand {} has a non-diagonal or non-traceless Cartan element", i + 1),
                ));
            }
            cartan_count += 1;
            if !cartan_space.insert(c.flatten()) {
                return Ok(VerifierReport::structural(
                    ty,
                    format!("Cartan parts are linearly dependent (summand {})", i + 1),
                ));
            }
        }
    }
    if cartan_count != n {
        return Ok(VerifierReport::structural(
            ty,
            format!("Cartan parts span {cartan_count} dimensions, expected {n}"),
        ));
    }
    let total_dim: usize = d.summands().iter().map(|s| s.dim()).sum();
    if total_dim != width - 1 {
        return Ok(VerifierReport::structural(
            ty,
            format!("total dimension {total_dim}, expected {}", width - 1),
        ));
    }

    let chain = BetaChain::new(rs)?;
    let bases: Vec<Vec<(ElemRef, RatMatrix)>> = d
        .summands()
        .iter()
        .map(|s| summand_basis(rs, &chain, s))
        .collect::<Result<_>>()?;
    let spans: Vec<RowSpace> = bases.iter().map(|b| span_of(b, width)).collect();

    // Each summand is a subalgebra.
    for (i, basis) in bases.iter().enumerate() {
        if let Some((l, r, b)) = first_escape(basis, basis, &spans[i])? {
            return Ok(VerifierReport::witnessed(
                ty,
                BracketWitness {
                    pair: (i + 1, i + 1),
                    left: l,
                    right: r,
                    bracket: b,
                },
            ));
        }
    }

    // Each pairwise sum is a subalgebra; within-summand brackets are
    // already covered, so only cross brackets are tested.
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let mut union_span = RowSpace::new(width);
            for (_, m) in bases[i].iter().chain(&bases[j]) {
                union_span.insert(m.flatten());
            }
            if let Some((l, r, b)) = first_escape(&bases[i], &bases[j], &union_span)? {
                return Ok(VerifierReport::witnessed(
                    ty,
                    BracketWitness {
                        pair: (i + 1, j + 1),
                        left: l,
                        right: r,
                        bracket: b,
                    },
                ));
            }
        }
    }

    Ok(VerifierReport::ok(ty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regpart::{finest_partition, Orientation};
    use crate::rootsys::RootSystemType;

    pub(crate) fn a(n: usize) -> RootSystem {
        RootSystem::build(RootSystemType::new(Family::A, n).unwrap())
    }

    #[test]
    fn sl_basis_dimensions_and_brackets() {
        let basis = sl_basis(2);
        assert_eq!(basis.len(), 8);
        // [E_{1,2}, E_{2,1}] = H_1.
        let e12 = RatMatrix::unit(3, 0, 1);
        let e21 = RatMatrix::unit(3, 1, 0);
        assert_eq!(bracket(&e12, &e21).unwrap(), h_matrix(2, 1));
    }

    #[test]
    fn root_vector_correspondence() {
        // E_{2,1} corresponds to −β_1 = −α_1.
        let rs = a(2);
        let chain = BetaChain::new(&rs).unwrap();
        let idx = rs.require_index(&[-1, 0]).unwrap();
        assert_eq!(root_vector(&chain, idx), RatMatrix::unit(3, 1, 0));
        // The diagonal action confirms the weight: [H, E_r] = r(H)·E_r
        // with r(H_1) = −2 for r = −α_1 in A_2... checked numerically.
        let h1 = h_matrix(2, 1);
        let e = root_vector(&chain, idx);
        let br = bracket(&h1, &e).unwrap();
        assert_eq!(br, e.scale(&rat(-2)));
    }

    #[test]
    fn cartan_coefficient_round_trip() {
        let n = 3;
        // H_{β_2} = H_2 via the coroot sum.
        let beta2 = cartan_from_alpha_coeffs(&[1, 1, 0]);
        assert_eq!(beta2, h_matrix(n, 2));
        let coeffs = cartan_to_h_coeffs(&beta2).unwrap();
        assert_eq!(coeffs, vec![rat(0), rat(1), rat(0)]);
        assert_eq!(h_coeffs_to_cartan(n, &coeffs).unwrap(), beta2);
    }

    #[test]
    fn borel_is_subalgebra() {
        let rs = a(2);
        let s = RegularSubalgebra::new(
            rs.positive_set(),
            vec![h_matrix(2, 1), h_matrix(2, 2)],
        );
        assert!(is_subalgebra(&rs, &s).unwrap());
    }

    #[test]
    fn sl2_pair_without_cartan_is_not_a_subalgebra() {
        let rs = a(2);
        let pm = RootSet::from_indices([
            rs.require_index(&[1, 0]).unwrap(),
            rs.require_index(&[-1, 0]).unwrap(),
        ]);
        let s = RegularSubalgebra::new(pm, vec![]);
        assert!(!is_subalgebra(&rs, &s).unwrap());
    }

    #[test]
    fn paper_example_block3_with_cartan_is_subalgebra() {
        let rs = a(3);
        let block3: RootSet = [
            [0, 0, 1],
            [0, 1, 1],
            [1, 1, 1],
            [-1, -1, -1],
            [-1, 0, 0],
            [-1, -1, 0],
        ]
        .iter()
        .map(|c| rs.require_index(&c[..]).unwrap())
        .collect();
        let s = RegularSubalgebra::new(block3, vec![cartan_from_alpha_coeffs(&[1, 1, 1])]);
        assert_eq!(s.dim(), 7);
        assert!(is_subalgebra(&rs, &s).unwrap());
    }

    #[test]
    fn borel_plus_opposite_nilradical_verifies() {
        let rs = a(2);
        let d = RegularDecomposition::new(
            2,
            vec![
                RegularSubalgebra::new(
                    rs.positive_set(),
                    vec![h_matrix(2, 1), h_matrix(2, 2)],
                ),
                RegularSubalgebra::new(rs.negate_set(&rs.positive_set()), vec![]),
            ],
        );
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid, "{report:?}");
        assert_eq!((report.m, report.k), (2, 1));
    }

    #[test]
    fn full_cartan_in_one_block_fails_with_witness() {
        // Row-finest A_2 with all of h in the first summand.
        let rs = a(2);
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        let d = RegularDecomposition::new(
            2,
            vec![
                RegularSubalgebra::new(
                    p.blocks()[0],
                    vec![h_matrix(2, 1), h_matrix(2, 2)],
                ),
                RegularSubalgebra::new(p.blocks()[1], vec![]),
                RegularSubalgebra::new(p.blocks()[2], vec![]),
            ],
        );
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(!report.valid);
        let w = report.witness.expect("bracket witness");
        assert_eq!(w.pair, (2, 3));
        // The escaping bracket is H_{β_2 − β_1} = E_{2,2} − E_{3,3}.
        let mut expected = RatMatrix::zero(3);
        expected.set(1, 1, rat(1));
        expected.set(2, 2, rat(-1));
        assert_eq!(w.bracket, expected);
    }

    #[test]
    fn structural_failures_are_reported() {
        let rs = a(2);
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        // Missing Cartan dimension.
        let d = RegularDecomposition::new(
            2,
            vec![
                RegularSubalgebra::new(p.blocks()[0], vec![h_matrix(2, 1)]),
                RegularSubalgebra::new(p.blocks()[1], vec![]),
                RegularSubalgebra::new(p.blocks()[2], vec![]),
            ],
        );
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(!report.valid);
        assert!(report.structural_error.is_some());

        // Overlapping root parts.
        let d = RegularDecomposition::new(
            2,
            vec![
                RegularSubalgebra::new(p.blocks()[0], vec![h_matrix(2, 1), h_matrix(2, 2)]),
                RegularSubalgebra::new(p.blocks()[0], vec![]),
                RegularSubalgebra::new(p.blocks()[2], vec![]),
            ],
        );
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(!report.valid);
        assert!(report.structural_error.is_some());
    }

    #[test]
    fn dropping_cartans_of_valid_decomposition_gives_regular_partition() {
        use crate::regpart::is_regular_partition;
        let rs = a(3);
        let lambda = crate::regpart::IntPartition::new(vec![2, 1]).unwrap();
        let d = construct_k1k(&rs, &lambda).unwrap();
        assert!(is_regular_decomposition(&rs, &d).unwrap().valid);
        let p = d.root_partition();
        assert!(is_regular_partition(&rs, &p).unwrap());
    }
}
