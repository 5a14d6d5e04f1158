//! Constructors of regular decompositions.
//!
//! Two directions feed these: extending a regular partition to a
//! decomposition by distributing Cartan lines (`H_{β_i}` to the block
//! carrying row `i`), and the closed-form `(k+1, k)` / `(k, k)` families
//! over `sl(n+1)` parameterized by integer partitions.
//!
//! Index conventions: both matrix families take `λ ⊢ n` with `k = len(λ)`
//! parts. For the `(k+1, k)` family this corresponds to the row partition
//! `(λ_1, …, λ_k, 1) ⊢ n+1`; for the `(k, k)` family to
//! `(λ_1 + 1, λ_2, …, λ_k) ⊢ n+1`.

use num_traits::{One, Zero};

use crate::liealg::{
    h_matrix, root_vector, Rat, RatMatrix, RegularDecomposition, RegularSubalgebra, RowSpace,
};
use crate::regpart::{BetaChain, BlockPartition, IntPartition};
use crate::rootsys::{Family, RootSet, RootSystem};
use crate::{Error, Result};

/// Which Cartan line the block carrying row `i` receives when a partition
/// is extended to a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanStyle {
    /// `H_{β_i}` (row 0 contributes nothing).
    Standard,
    /// `H_{β_n − β_i}` (row `n` contributes nothing).
    Reversed,
}

/// Row (or column) groups of a partition: `groups[ℓ]` is the set of
/// source indices whose full row lies in block `ℓ`.
fn detect_groups(
    chain: &BetaChain,
    p: &BlockPartition,
    by_row: bool,
) -> Option<Vec<Vec<usize>>> {
    let n = chain.rank();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); p.num_blocks()];
    for i in 0..=n {
        let line = if by_row { chain.row(i) } else { chain.column(i) };
        let first = line.iter().next().expect("rows are nonempty");
        let block = p.block_of(first)?;
        if !line.is_subset(&p.blocks()[block]) {
            return None;
        }
        groups[block].push(i);
    }
    // Every root lies in some row, so coverage follows from the partition
    // covering the system; blocks made of partial rows were caught above.
    if groups.iter().any(|g| g.is_empty()) {
        return None;
    }
    Some(groups)
}

/// Extends a regular partition of `A_n` with `m ≥ 3` blocks to a regular
/// decomposition, assigning the block that carries row `i` the Cartan line
/// `H_{β_i}` (style [`CartanStyle::Standard`]).
///
/// The partition may be any union of complete rows (or columns, for the
/// negated family) in any Weyl position; anything else is rejected, which
/// for `m ≥ 3` means the partition was not regular.
pub fn extend_partition_to_decomposition(
    rs: &RootSystem,
    p: &BlockPartition,
) -> Result<RegularDecomposition> {
    extend_partition_with_style(rs, p, CartanStyle::Standard)
}

pub fn extend_partition_with_style(
    rs: &RootSystem,
    p: &BlockPartition,
    style: CartanStyle,
) -> Result<RegularDecomposition> {
    if rs.rtype().family() != Family::A {
        return Err(Error::Unsupported(format!(
            "partition extension is defined over sl(n+1), got {}",
            rs.rtype()
        )));
    }
    p.validate(rs)?;
    if p.num_blocks() < 3 {
        return Err(Error::InvalidArgument(format!(
            "partition extension requires m >= 3 blocks, got {}",
            p.num_blocks()
        )));
    }
    let n = rs.rank();
    let chain = BetaChain::new(rs)?;
    let groups = detect_groups(&chain, p, true)
        .or_else(|| detect_groups(&chain, p, false))
        .ok_or_else(|| {
            Error::InvalidPartition(
                "not a coarsened row or column partition; \
                 no regular partition with m >= 3 has this shape"
                    .into(),
            )
        })?;

    let summands = p
        .blocks()
        .iter()
        .zip(&groups)
        .map(|(&block, group)| {
            let cartans = group
                .iter()
                .filter_map(|&i| match style {
                    CartanStyle::Standard => (i != 0).then(|| h_matrix(n, i)),
                    CartanStyle::Reversed => {
                        (i != n).then(|| h_matrix(n, n).sub(&h_matrix(n, i)))
                    }
                })
                .collect();
            RegularSubalgebra::new(block, cartans)
        })
        .collect();
    Ok(RegularDecomposition::new(n, summands))
}

/// Extends a two-block partition into closed subsets to a 2-regular
/// decomposition: each side gets the subalgebra generated by its symmetric
/// part plus the span of its antisymmetric root vectors, and the missing
/// Cartan complement `h'` is assigned entirely to the first summand.
pub fn extend_two_block(
    rs: &RootSystem,
    s1: &RootSet,
    s2: &RootSet,
) -> Result<RegularDecomposition> {
    let (g1, g2, missing) = two_block_parts(rs, s1, s2)?;
    Ok(RegularDecomposition::new(
        rs.rank(),
        vec![
            RegularSubalgebra::new(*s1, [g1, missing].concat()),
            RegularSubalgebra::new(*s2, g2),
        ],
    ))
}

/// As [`extend_two_block`], but the caller distributes the missing Cartan
/// complement explicitly: `extra1` and `extra2` must be diagonal traceless
/// matrices that, together with the generated Cartan parts, exactly fill
/// the Cartan subalgebra.
pub fn extend_two_block_split(
    rs: &RootSystem,
    s1: &RootSet,
    s2: &RootSet,
    extra1: Vec<RatMatrix>,
    extra2: Vec<RatMatrix>,
) -> Result<RegularDecomposition> {
    let (g1, g2, missing) = two_block_parts(rs, s1, s2)?;
    let n = rs.rank();
    let mut joint = RowSpace::new((n + 1) * (n + 1));
    for c in g1.iter().chain(&g2) {
        joint.insert(c.flatten());
    }
    for c in extra1.iter().chain(&extra2) {
        if c.size() != n + 1 || !c.is_diagonal() || !c.trace().is_zero() {
            return Err(Error::InvalidArgument(
                "extra Cartan elements must be diagonal traceless matrices of matching size"
                    .into(),
            ));
        }
        if !joint.insert(c.flatten()) {
            return Err(Error::InvalidArgument(
                "extra Cartan elements overlap the generated Cartan parts".into(),
            ));
        }
    }
    if joint.dim() != g1.len() + g2.len() + missing.len() {
        return Err(Error::InvalidArgument(format!(
            "extra Cartan elements fill {} of the {} missing dimensions",
            joint.dim() - g1.len() - g2.len(),
            missing.len()
        )));
    }
    Ok(RegularDecomposition::new(
        n,
        vec![
            RegularSubalgebra::new(*s1, [g1, extra1].concat()),
            RegularSubalgebra::new(*s2, [g2, extra2].concat()),
        ],
    ))
}

/// Generated Cartan parts of the two sides and a basis of the missing
/// Cartan complement.
fn two_block_parts(
    rs: &RootSystem,
    s1: &RootSet,
    s2: &RootSet,
) -> Result<(Vec<RatMatrix>, Vec<RatMatrix>, Vec<RatMatrix>)> {
    if rs.rtype().family() != Family::A {
        return Err(Error::Unsupported(format!(
            "the two-block extension is realized over the trace form of sl(n+1); \
             root system {} has no matrix realization here",
            rs.rtype()
        )));
    }
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::InvalidPartition(
            "both blocks of a two-block partition must be nonempty".into(),
        ));
    }
    if !s1.is_disjoint(s2) || s1.union(s2) != rs.full_set() {
        return Err(Error::InvalidPartition(
            "the two blocks must partition the root system".into(),
        ));
    }
    for (name, s) in [("S1", s1), ("S2", s2)] {
        if !rs.is_closed(s)? {
            return Err(Error::InvalidPartition(format!("{name} is not closed")));
        }
    }

    let n = rs.rank();
    let chain = BetaChain::new(rs)?;
    let width = (n + 1) * (n + 1);

    // Subalgebra generated by the symmetric part: bracket-close the root
    // vectors. The only new elements are the coroots, which are diagonal.
    let generated_cartans = |s: &RootSet| -> Result<Vec<RatMatrix>> {
        let sym = rs.symmetric_part(s)?;
        let mut basis: Vec<RatMatrix> = sym.iter().map(|r| root_vector(&chain, r)).collect();
        let mut span = RowSpace::new(width);
        for m in &basis {
            span.insert(m.flatten());
        }
        let mut cartans = Vec::new();
        let mut frontier = 0;
        while frontier < basis.len() {
            let upto = basis.len();
            for i in 0..upto {
                for j in frontier.max(i)..upto {
                    let b = super::bracket(&basis[i], &basis[j])?;
                    if !b.is_zero() && span.insert(b.flatten()) {
                        debug_assert!(b.is_diagonal());
                        cartans.push(b.clone());
                        basis.push(b.clone());
                    }
                }
            }
            frontier = upto;
        }
        Ok(cartans)
    };

    let g1 = generated_cartans(s1)?;
    let g2 = generated_cartans(s2)?;

    let mut joint = RowSpace::new(width);
    for c in g1.iter().chain(&g2) {
        joint.insert(c.flatten());
    }
    let mut missing = Vec::new();
    for t in 1..=n {
        let h = h_matrix(n, t);
        if joint.insert(h.flatten()) {
            missing.push(h);
        }
    }
    Ok((g1, g2, missing))
}

fn lambda_windows(lambda: &IntPartition, first_extra: usize) -> Vec<(usize, usize)> {
    // Half-open windows of source indices; the first window is widened by
    // `first_extra` positions.
    let mut windows = Vec::with_capacity(lambda.len());
    let mut start = 0;
    for (idx, &part) in lambda.parts().iter().enumerate() {
        let width = part + if idx == 0 { first_extra } else { 0 };
        windows.push((start, start + width));
        start += width;
    }
    windows
}

/// The `(k+1, k)` family over `sl(n+1)`, `λ ⊢ n` with `k = len(λ) ≥ 2`
/// parts: the first summand is matrix row 1 without a Cartan part, and
/// the `ℓ`-th window of rows `i+1` comes with the Cartan lines `H_i`.
pub fn construct_k1k(rs: &RootSystem, lambda: &IntPartition) -> Result<RegularDecomposition> {
    let n = rs.rank();
    if rs.rtype().family() != Family::A {
        return Err(Error::Unsupported(format!(
            "the (k+1,k) family lives over sl(n+1), got {}",
            rs.rtype()
        )));
    }
    if lambda.total() != n {
        return Err(Error::InvalidArgument(format!(
            "λ must be a partition of n = {n}, got {:?} summing to {}",
            lambda.parts(),
            lambda.total()
        )));
    }
    if lambda.len() < 2 {
        return Err(Error::InvalidArgument(
            "the (k+1,k) family needs k >= 2 parts; k = 1 is the two-block regime".into(),
        ));
    }
    let chain = BetaChain::new(rs)?;
    let mut summands = vec![RegularSubalgebra::new(chain.row(0), vec![])];
    for (start, end) in lambda_windows(lambda, 0) {
        // Window over i ∈ 1..=n, shifted by one because row 0 is taken.
        let mut roots = RootSet::empty();
        let mut cartans = Vec::new();
        for i in start + 1..end + 1 {
            roots = roots.union(&chain.row(i));
            cartans.push(h_matrix(n, i));
        }
        summands.push(RegularSubalgebra::new(roots, cartans));
    }
    Ok(RegularDecomposition::new(n, summands))
}

/// Admissible choices of the shared Cartan shift `X` in the `(k, k)`
/// family, as coefficients over `H_1..H_n`.
fn validate_kk_shift(lambda: &IntPartition, x: &[Rat]) -> Result<()> {
    let lambda1 = lambda.parts()[0];
    if x.iter().skip(lambda1).all(|c| c.is_zero()) {
        // X ∈ span{H_1, …, H_{λ_1}} — always admissible.
        return Ok(());
    }
    // Otherwise X must be exactly H_p for a window q ≥ 2 with λ_q > 1.
    let support: Vec<usize> = x
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    if support.len() != 1 || !x[support[0] - 1].is_one() {
        return Err(Error::InvalidArgument(
            "X must lie in span{H_1..H_λ1} or be exactly H_p for some later window".into(),
        ));
    }
    let p = support[0];
    let mut start = lambda1 + 1;
    for (q, &part) in lambda.parts().iter().enumerate().skip(1) {
        let end = start + part;
        if (start..end).contains(&p) {
            if part > 1 {
                return Ok(());
            }
            return Err(Error::InvalidArgument(format!(
                "X = H_{p} is inadmissible: window {} has λ_{} = 1, but λ_q > 1 is required",
                q + 1,
                q + 1
            )));
        }
        start = end;
    }
    unreachable!("p <= n always lies in some window");
}

/// The `(k, k)` family over `sl(n+1)`, `λ ⊢ n` with `k = len(λ) ≥ 2`
/// parts and a shift `X` given over `H_1..H_n`: the first summand carries
/// rows `1..=λ_1+1` with `H_1..H_{λ_1}` (and `X`), every later window
/// carries its rows with the shifted lines `H_i − X`.
///
/// When `X = H_p` with `p` inside window `q`, that window's Cartan part
/// loses the vanishing line `H_p − X`, compensating the extra dimension
/// picked up by the first summand.
pub fn construct_kk(
    rs: &RootSystem,
    lambda: &IntPartition,
    x_coeffs: &[Rat],
) -> Result<RegularDecomposition> {
    let n = rs.rank();
    if rs.rtype().family() != Family::A {
        return Err(Error::Unsupported(format!(
            "the (k,k) family lives over sl(n+1), got {}",
            rs.rtype()
        )));
    }
    if lambda.total() != n {
        return Err(Error::InvalidArgument(format!(
            "λ must be a partition of n = {n}, got {:?} summing to {}",
            lambda.parts(),
            lambda.total()
        )));
    }
    if lambda.len() < 2 {
        return Err(Error::InvalidArgument(
            "the (k,k) family needs k >= 2 parts".into(),
        ));
    }
    if x_coeffs.len() != n {
        return Err(Error::InvalidArgument(format!(
            "X needs {n} coefficients over H_1..H_n, got {}",
            x_coeffs.len()
        )));
    }
    validate_kk_shift(lambda, x_coeffs)?;

    let chain = BetaChain::new(rs)?;
    let x = super::h_coeffs_to_cartan(n, x_coeffs)?;
    let lambda1 = lambda.parts()[0];
    let x_is_later_h = x_coeffs.iter().skip(lambda1).any(|c| !c.is_zero());

    let mut summands = Vec::with_capacity(lambda.len());
    for (block, (start, end)) in lambda_windows(lambda, 1).into_iter().enumerate() {
        let mut roots = RootSet::empty();
        for i in start..end {
            roots = roots.union(&chain.row(i));
        }
        let cartans = if block == 0 {
            let mut c: Vec<RatMatrix> = (1..=lambda1).map(|i| h_matrix(n, i)).collect();
            if x_is_later_h {
                c.push(x.clone());
            }
            c
        } else {
            (start..end)
                .map(|i| h_matrix(n, i).sub(&x))
                .filter(|m| !m.is_zero())
                .collect()
        };
        summands.push(RegularSubalgebra::new(roots, cartans));
    }
    Ok(RegularDecomposition::new(n, summands))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{
        decomposition_type, is_regular_decomposition, rat, h_coeffs_to_cartan,
    };
    use crate::regpart::{finest_partition, partition_from_int_partition, Orientation};
    use crate::rootsys::RootSystemType;

    fn a(n: usize) -> RootSystem {
        RootSystem::build(RootSystemType::new(Family::A, n).unwrap())
    }

    fn zeros(n: usize) -> Vec<Rat> {
        vec![rat(0); n]
    }

    #[test]
    fn extend_row_finest_a2() {
        let rs = a(2);
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        let d = extend_partition_to_decomposition(&rs, &p).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid, "{report:?}");
        assert_eq!((report.m, report.k), (3, 2));
        // Block of row 0 has no Cartan line; rows 1, 2 get H_1, H_2.
        assert!(d.summands()[0].cartan_basis.is_empty());
        assert_eq!(d.summands()[1].cartan_basis, vec![h_matrix(2, 1)]);
        assert_eq!(d.summands()[2].cartan_basis, vec![h_matrix(2, 2)]);
    }

    #[test]
    fn extend_lambda_partition_a3() {
        let rs = a(3);
        let lambda = IntPartition::new(vec![2, 1, 1]).unwrap();
        let p = partition_from_int_partition(&rs, &lambda).unwrap();
        let d = extend_partition_to_decomposition(&rs, &p).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid);
        assert_eq!((report.m, report.k), (3, 3));
    }

    #[test]
    fn extend_column_partition() {
        let rs = a(3);
        let p = finest_partition(&rs, Orientation::Column).unwrap();
        let d = extend_partition_to_decomposition(&rs, &p).unwrap();
        assert!(is_regular_decomposition(&rs, &d).unwrap().valid);
    }

    #[test]
    fn extend_reversed_style_also_verifies() {
        let rs = a(3);
        let p = finest_partition(&rs, Orientation::Row).unwrap();
        let d = extend_partition_with_style(&rs, &p, CartanStyle::Reversed).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid, "{report:?}");
        assert_eq!((report.m, report.k), (4, 3));
    }

    #[test]
    fn extend_rejects_non_row_partition() {
        // Borel-type two-block split is regular but has m = 2; a made-up
        // 3-block split that is not row-shaped must be rejected.
        let rs = a(2);
        let pos = rs.positive_set();
        let a1 = rs.require_index(&[1, 0]).unwrap();
        let na1 = rs.neg(a1);
        let mut b1 = pos;
        b1.remove(a1);
        let rest = rs
            .full_set()
            .difference(&b1)
            .difference(&RootSet::from_indices([a1, na1]));
        let p = BlockPartition::new(
            vec![b1, RootSet::from_indices([a1, na1]), rest],
            &rs,
        )
        .unwrap();
        assert!(extend_partition_to_decomposition(&rs, &p).is_err());
    }

    #[test]
    fn two_block_borel_extension() {
        let rs = a(2);
        let pos = rs.positive_set();
        let neg = rs.negate_set(&pos);
        let d = extend_two_block(&rs, &pos, &neg).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid);
        assert_eq!((report.m, report.k), (2, 1));
        // Symmetric parts are empty, so h' is all of h, assigned to g_1.
        assert_eq!(d.summands()[0].cartan_basis.len(), 2);
        assert!(d.summands()[1].cartan_basis.is_empty());
    }

    #[test]
    fn two_block_with_symmetric_part() {
        // S1 = {α1, α1+α2}, S2 = rest: S2 contains the sl_2 through ±α2.
        let rs = a(2);
        let s1 = RootSet::from_indices([
            rs.require_index(&[1, 0]).unwrap(),
            rs.require_index(&[1, 1]).unwrap(),
        ]);
        let s2 = rs.full_set().difference(&s1);
        let d = extend_two_block(&rs, &s1, &s2).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid, "{report:?}");
        // g_2's generated Cartan is the coroot of α2; h' is 1-dimensional
        // and lands in g_1.
        assert_eq!(d.summands()[1].cartan_basis.len(), 1);
        assert_eq!(d.summands()[0].cartan_basis.len(), 1);
    }

    #[test]
    fn two_block_rejects_bad_inputs() {
        let rs = a(2);
        let full = rs.full_set();
        assert!(extend_two_block(&rs, &full, &RootSet::empty()).is_err());
        let pos = rs.positive_set();
        assert!(extend_two_block(&rs, &pos, &pos).is_err());
        // Not closed: split {α1} off.
        let a1 = RootSet::from_indices([rs.require_index(&[1, 0]).unwrap()]);
        let rest = full.difference(&a1);
        assert!(extend_two_block(&rs, &rest, &a1).is_err());
    }

    #[test]
    fn two_block_split_distribution() {
        let rs = a(2);
        let pos = rs.positive_set();
        let neg = rs.negate_set(&pos);
        let d = extend_two_block_split(
            &rs,
            &pos,
            &neg,
            vec![h_matrix(2, 1)],
            vec![h_matrix(2, 2)],
        )
        .unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid);
        assert_eq!((report.m, report.k), (2, 2));
        // Under-filled distribution is rejected.
        assert!(extend_two_block_split(&rs, &pos, &neg, vec![h_matrix(2, 1)], vec![]).is_err());
        // Dependent distribution is rejected.
        assert!(extend_two_block_split(
            &rs,
            &pos,
            &neg,
            vec![h_matrix(2, 1)],
            vec![h_matrix(2, 1)]
        )
        .is_err());
    }

    #[test]
    fn k1k_small_example() {
        let rs = a(2);
        let lambda = IntPartition::new(vec![1, 1]).unwrap();
        let d = construct_k1k(&rs, &lambda).unwrap();
        let dims: Vec<usize> = d.summands().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![2, 3, 3]);
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid);
        assert_eq!((report.m, report.k), (3, 2));
    }

    #[test]
    fn k1k_a3_dimensions() {
        let rs = a(3);
        let lambda = IntPartition::new(vec![2, 1]).unwrap();
        let d = construct_k1k(&rs, &lambda).unwrap();
        let dims: Vec<usize> = d.summands().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![3, 8, 4]);
        assert_eq!(dims.iter().sum::<usize>(), 15);
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid);
        assert_eq!((report.m, report.k), (3, 2));
    }

    #[test]
    fn k1k_rejects_single_part() {
        let rs = a(3);
        let lambda = IntPartition::new(vec![3]).unwrap();
        assert!(construct_k1k(&rs, &lambda).is_err());
    }

    #[test]
    fn kk_zero_shift() {
        let rs = a(2);
        let lambda = IntPartition::new(vec![1, 1]).unwrap();
        let d = construct_kk(&rs, &lambda, &zeros(2)).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid, "{report:?}");
        assert_eq!((report.m, report.k), (2, 2));
        // g_1 = rows 1–2 with H_1; g_2 = row 3 with H_2.
        assert_eq!(d.summands()[0].root_part.len(), 4);
        assert_eq!(d.summands()[0].cartan_basis, vec![h_matrix(2, 1)]);
        assert_eq!(d.summands()[1].cartan_basis, vec![h_matrix(2, 2)]);
    }

    #[test]
    fn kk_span_shift() {
        let rs = a(2);
        let lambda = IntPartition::new(vec![1, 1]).unwrap();
        let x = vec![rat(1), rat(0)]; // X = H_1 ∈ span{H_1..H_λ1}.
        let d = construct_kk(&rs, &lambda, &x).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid, "{report:?}");
        // g_2 carries H_2 − H_1.
        let expected = h_matrix(2, 2).sub(&h_matrix(2, 1));
        assert_eq!(d.summands()[1].cartan_basis, vec![expected]);
    }

    #[test]
    fn kk_rejects_inadmissible_h_shift() {
        let rs = a(2);
        let lambda = IntPartition::new(vec![1, 1]).unwrap();
        // X = H_2 targets window 2 with λ_2 = 1.
        let x = vec![rat(0), rat(1)];
        assert!(construct_kk(&rs, &lambda, &x).is_err());
    }

    #[test]
    fn kk_admissible_h_shift() {
        // λ = (2, 2) over A_4: X = H_p with p in window 2 = {3, 4} is
        // admissible since λ_2 = 2 > 1.
        let rs = a(4);
        let lambda = IntPartition::new(vec![2, 2]).unwrap();
        let mut x = zeros(4);
        x[3] = rat(1); // X = H_4.
        let d = construct_kk(&rs, &lambda, &x).unwrap();
        let report = is_regular_decomposition(&rs, &d).unwrap();
        assert!(report.valid, "{report:?}");
        assert_eq!((report.m, report.k), (2, 2));
        // Window 2's Cartan part lost the vanishing H_4 − X line.
        assert_eq!(d.summands()[1].cartan_basis.len(), 1);
        assert_eq!(d.summands()[0].cartan_basis.len(), 3);
    }

    #[test]
    fn kk_rejects_mixed_coefficient_shift() {
        let rs = a(3);
        let lambda = IntPartition::new(vec![1, 1, 1]).unwrap();
        // Mixed support beyond λ_1 with a non-unit coefficient.
        let x = vec![rat(1), rat(2), rat(0)];
        assert!(construct_kk(&rs, &lambda, &x).is_err());
    }

    #[test]
    fn constructed_types_follow_the_type_law() {
        for n in 2..=4 {
            let rs = a(n);
            for lambda in IntPartition::enumerate(n) {
                if lambda.len() < 2 {
                    continue;
                }
                let k = lambda.len();
                let d = construct_k1k(&rs, &lambda).unwrap();
                let ty = decomposition_type(&d);
                assert_eq!((ty.m, ty.k), (k + 1, k));
                let d = construct_kk(&rs, &lambda, &zeros(n)).unwrap();
                let ty = decomposition_type(&d);
                assert_eq!((ty.m, ty.k), (k, k));
            }
        }
    }

    #[test]
    fn h_shift_matrix_helper() {
        let x = h_coeffs_to_cartan(2, &[rat(1), rat(-2)]).unwrap();
        let expected = h_matrix(2, 1).sub(&h_matrix(2, 2).scale(&rat(2)));
        assert_eq!(x, expected);
    }
}
