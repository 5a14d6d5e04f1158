//! Exact rational matrices and row-reduction span membership.
//!
//! Verifier verdicts have to be certificates, so everything here runs on
//! arbitrary-precision rationals; there is no floating point and no
//! tolerance anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(x: i64) -> Rat {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Square matrix of exact rationals, row-major, zero-based indexing.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    size: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(size: usize) -> Self {
        RatMatrix {
            size,
            entries: vec![Rat::zero(); size * size],
        }
    }

    /// The unit matrix `E_{ij}` with a single 1 at row `i`, column `j`.
    pub fn unit(size: usize, i: usize, j: usize) -> Self {
        let mut m = RatMatrix::zero(size);
        m.set(i, j, Rat::one());
        m
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        let mut m = RatMatrix::zero(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.size + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.size).all(|i| {
            (0..self.size).all(|j| i == j || self.entry(i, j).is_zero())
        })
    }

    pub fn trace(&self) -> Rat {
        (0..self.size).map(|i| self.entry(i, i).clone()).sum()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        debug_assert_eq!(self.size, other.size);
        RatMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        debug_assert_eq!(self.size, other.size);
        RatMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix {
            size: self.size,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            size: self.size,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        debug_assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = RatMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if !b.is_zero() {
                        let v = out.entry(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMatrix {
        let n = self.size;
        let mut out = RatMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.entry(i, j).clone());
            }
        }
        out
    }

    /// Flattens to a row-major coordinate vector.
    pub fn flatten(&self) -> Vec<Rat> {
        self.entries.clone()
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.size, self.size)?;
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// The matrix commutator `ab − ba`.
pub fn bracket(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if a.size() != b.size() {
        return Err(Error::InvalidArgument(format!(
            "bracket of {}x{} with {}x{} matrices",
            a.size(),
            a.size(),
            b.size(),
            b.size()
        )));
    }
    Ok(a.mul(b).sub(&b.mul(a)))
}

/// Row space in reduced echelon form, for exact span-membership queries.
pub struct RowSpace {
    width: usize,
    /// Rows with strictly increasing pivot columns, each normalized to a
    /// leading 1 and fully back-substituted.
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rat]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
    }

    /// Adds a vector to the span. Returns `true` if the dimension grew,
    /// `false` if the vector was already in the span.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        // Back-substitute into existing rows to keep the form reduced.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, nv) in row.iter_mut().zip(&v) {
                    *x -= &c * nv;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_matrix(&self, m: &RatMatrix) -> bool {
        self.contains(&m.flatten())
    }
}

/// Formats a rational as `p/q` (always with an explicit denominator).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Serialization(format!("invalid rational component {t:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom.is_zero() {
                return Err(Error::Serialization(format!("zero denominator in {s:?}")));
            }
            let sign_fix = if denom.is_negative() { -1 } else { 1 };
            Ok(BigRational::new(parse_int(p)? * sign_fix, denom * sign_fix))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_basics() {
        let n = 3;
        let e12 = RatMatrix::unit(n, 0, 1);
        let e21 = RatMatrix::unit(n, 1, 0);
        let h1 = RatMatrix::diagonal(&[rat(1), rat(-1), rat(0)]);
        assert_eq!(bracket(&e12, &e21).unwrap(), h1);
        assert_eq!(bracket(&h1, &e12).unwrap(), e12.scale(&rat(2)));
        assert!(bracket(&e12, &e12).unwrap().is_zero());
        assert!(bracket(&e12, &RatMatrix::zero(4)).is_err());
    }

    #[test]
    fn disjoint_units_commute() {
        let e12 = RatMatrix::unit(4, 0, 1);
        let e34 = RatMatrix::unit(4, 2, 3);
        assert!(bracket(&e12, &e34).unwrap().is_zero());
    }

    #[test]
    fn row_space_membership() {
        let mut space = RowSpace::new(3);
        assert!(space.insert(vec![rat(1), rat(2), rat(0)]));
        assert!(space.insert(vec![rat(0), rat(1), rat(1)]));
        assert!(!space.insert(vec![rat(2), rat(5), rat(1)]));
        assert_eq!(space.dim(), 2);
        assert!(space.contains(&[rat(1), rat(3), rat(1)]));
        assert!(!space.contains(&[rat(0), rat(0), rat(1)]));
        assert!(space.contains(&[rat(0), rat(0), rat(0)]));
    }

    #[test]
    fn rational_string_round_trip() {
        assert_eq!(rat_to_string(&rat_frac(-2, 4)), "-1/2");
        assert_eq!(rat_from_string("-1/2").unwrap(), rat_frac(-1, 2));
        assert_eq!(rat_from_string("3").unwrap(), rat(3));
        assert_eq!(rat_from_string("4/-6").unwrap(), rat_frac(-2, 3));
        assert!(rat_from_string("1/0").is_err());
        assert!(rat_from_string("x").is_err());
    }
}
