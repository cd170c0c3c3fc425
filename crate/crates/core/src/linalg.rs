//! Exact rational scalars and vectors, the duality pairing, and the small
//! elimination kernels (solving prescribed pairings, rank, null spaces) that
//! the constructive cone operations are built on.
//!
//! Everything here is exact. `Rational` is an arbitrary precision fraction
//! kept in lowest terms with a positive denominator after every operation.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Result};

/// Exact scalar. The canonical form (reduced, positive denominator) is
/// maintained by `num_rational` after every arithmetic operation.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses the rational text syntax shared by every file format: an optional
/// sign, an integer, and optionally `/` followed by a positive integer.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = numer.strip_prefix(['+', '-']).unwrap_or(numer);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = numer.parse().ok()?;
    let denom: BigInt = match denom {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            d.parse().ok()?
        }
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// A coordinate vector in `Q^n`. The same type houses primal points `x` and
/// dual functionals `y`; the pairing between them is the standard dot product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &Rational, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + factor * b)
                .collect(),
        )
    }

    /// Unchecked dot product; callers guarantee equal dimensions.
    pub(crate) fn dot(&self, other: &Vector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// The representative of the ray through `self` with coprime integer
    /// coordinates. Only positive scaling is quotiented out, so direction is
    /// preserved. The zero vector maps to itself.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Vector(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &gcd))
                .collect(),
        )
    }

    /// True when `other` is a strictly positive multiple of `self`.
    pub fn same_ray(&self, other: &Vector) -> bool {
        !self.is_zero() && !other.is_zero() && self.primitive() == other.primitive()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }
}

/// The duality map `<x, y> = sum_i x_i y_i`.
pub fn pairing(x: &Vector, y: &Vector) -> Result<Rational> {
    check_dim(x.dim(), y.dim())?;
    Ok(x.dot(y))
}

pub(crate) fn check_all_dims<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Result<()> {
    vs.into_iter().try_for_each(|v| check_dim(dim, v.dim()))
}

/// Reduced row echelon form, in place. Returns the pivot column of each
/// nonzero row; zero rows are removed.
pub(crate) fn rref(rows: &mut Vec<Vec<Rational>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for c in rows[r].iter_mut() {
            *c *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let (pivot_row, other) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (o, p) in other.iter_mut().zip(pivot_row) {
                    *o -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Finds `y` with `<v_i, y> = c_i` for every target, by exact elimination.
/// Free coordinates are set to zero. `Ok(None)` means the prescriptions are
/// linearly inconsistent.
pub fn solve_prescribed_values(dim: usize, targets: &[(Vector, Rational)]) -> Result<Option<Vector>> {
    check_all_dims(dim, targets.iter().map(|(v, _)| v))?;
    let mut rows: Vec<Vec<Rational>> = targets
        .iter()
        .map(|(v, c)| {
            let mut row = v.coords().to_vec();
            row.push(c.clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, dim + 1);
    if pivots.last() == Some(&dim) {
        return Ok(None);
    }
    let mut y = Vector::zeros(dim);
    for (row, &col) in rows.iter().zip(&pivots) {
        y.0[col] = row[dim].clone();
    }
    Ok(Some(y))
}

/// Rank over the rationals.
pub fn rank(vectors: &[Vector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let dim = first.dim();
    check_all_dims(dim, vectors)?;
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    Ok(rref(&mut rows, dim).len())
}

/// Canonical basis (reduced echelon rows) of the span of `vectors`.
pub(crate) fn span_basis(dim: usize, vectors: &[Vector]) -> Vec<Vector> {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    rref(&mut rows, dim);
    rows.into_iter().map(Vector).collect()
}

/// Basis of `{y : <v, y> = 0 for all v in vectors}`.
pub(crate) fn null_space(dim: usize, vectors: &[Vector]) -> Vec<Vector> {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let pivots = rref(&mut rows, dim);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut y = Vector::zeros(dim);
        y.0[free] = Rational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            y.0[p] = -row[free].clone();
        }
        basis.push(y);
    }
    basis
}

/// Orthogonal projection onto the complement of span(`basis`), using an
/// exact Gram-Schmidt basis supplied by [`orthogonalize`].
pub(crate) fn project_out(v: &Vector, orthogonal: &[Vector]) -> Vector {
    orthogonal.iter().fold(v.clone(), |acc, q| {
        let coeff = acc.dot(q) / q.dot(q);
        acc.add_scaled(&-coeff, q)
    })
}

pub(crate) fn orthogonalize(vectors: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let q = project_out(v, &out);
        if !q.is_zero() {
            out.push(q);
        }
    }
    out
}

pub(crate) fn sign(value: &Rational) -> i8 {
    if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    }
}
