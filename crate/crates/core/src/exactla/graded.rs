//! ℤ₂-graded vector spaces and parity-homogeneous linear maps.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Matrix, MatrixError, Rational};

/// An element of ℤ₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn from_int(n: i64) -> Self {
        Parity::from_bit(n.rem_euclid(2) as u8)
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Short label used in printed output: `ev` / `od`.
    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "ev",
            Parity::Odd => "od",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `(-1)^{|a||b|}` as a rational.
pub fn koszul_sign(a: Parity, b: Parity) -> Rational {
    if a.is_odd() && b.is_odd() {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// A super vector space with basis ordered even vectors first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedSpace {
    pub dim_even: usize,
    pub dim_odd: usize,
}

impl GradedSpace {
    pub fn new(dim_even: usize, dim_odd: usize) -> Self {
        GradedSpace { dim_even, dim_odd }
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    #[inline]
    pub fn parity(&self, i: usize) -> Parity {
        debug_assert!(i < self.dim());
        if i < self.dim_even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn parities(&self) -> impl Iterator<Item = Parity> + '_ {
        (0..self.dim()).map(|i| self.parity(i))
    }

    /// Basis indices of the given parity.
    pub fn indices(&self, p: Parity) -> std::ops::Range<usize> {
        match p {
            Parity::Even => 0..self.dim_even,
            Parity::Odd => self.dim_even..self.dim(),
        }
    }

    pub fn shifted(&self) -> Self {
        GradedSpace::new(self.dim_odd, self.dim_even)
    }

    pub fn dims_of(&self, p: Parity) -> usize {
        match p {
            Parity::Even => self.dim_even,
            Parity::Odd => self.dim_odd,
        }
    }

    /// Diagonal matrix `diag((-1)^{|v_i|})`.
    pub fn sign_matrix(&self) -> Matrix {
        let mut m = Matrix::identity(self.dim());
        for i in self.indices(Parity::Odd) {
            m[(i, i)] = -Rational::one();
        }
        m
    }

    /// Index map taking this basis to the basis of the parity-shifted space:
    /// old odd vectors come first in the shifted space.
    pub fn shift_permutation(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                if i < self.dim_even {
                    self.dim_odd + i
                } else {
                    i - self.dim_even
                }
            })
            .collect()
    }

    /// Given parities of an arbitrarily ordered basis, the stable even-first
    /// reordering: `perm[old] = new`, plus the resulting space.
    pub fn sort_even_first(parities: &[Parity]) -> (GradedSpace, Vec<usize>) {
        let dim_even = parities.iter().filter(|p| !p.is_odd()).count();
        let mut next_even = 0;
        let mut next_odd = dim_even;
        let perm = parities
            .iter()
            .map(|p| {
                if p.is_odd() {
                    next_odd += 1;
                    next_odd - 1
                } else {
                    next_even += 1;
                    next_even - 1
                }
            })
            .collect();
        (GradedSpace::new(dim_even, parities.len() - dim_even), perm)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("matrix is {rows}x{cols} but spaces need {want_rows}x{want_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("entry ({row}, {col}) breaks block purity for a degree-{degree} map")]
    Impure { row: usize, col: usize, degree: Parity },
    #[error("composition mismatch: {0}")]
    Compose(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// True iff every nonzero entry `(i, j)` has `|target_i| = |source_j| + degree`.
pub fn is_block_pure(m: &Matrix, source: &GradedSpace, target: &GradedSpace, degree: Parity) -> bool {
    first_impure_entry(m, source, target, degree).is_none()
}

fn first_impure_entry(m: &Matrix, source: &GradedSpace, target: &GradedSpace, degree: Parity) -> Option<(usize, usize)> {
    for i in 0..m.rows() {
        for (j, x) in m.row(i).iter().enumerate() {
            if !x.is_zero() && target.parity(i) != source.parity(j) + degree {
                return Some((i, j));
            }
        }
    }
    None
}

/// A homogeneous linear map between graded spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    matrix: Matrix,
    degree: Parity,
}

impl GradedMap {
    pub fn new(source: GradedSpace, target: GradedSpace, matrix: Matrix, degree: Parity) -> Result<Self, GradedError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(GradedError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                want_rows: target.dim(),
                want_cols: source.dim(),
            });
        }
        if let Some((row, col)) = first_impure_entry(&matrix, &source, &target, degree) {
            return Err(GradedError::Impure { row, col, degree });
        }
        Ok(GradedMap {
            source,
            target,
            matrix,
            degree,
        })
    }

    pub fn identity(space: GradedSpace) -> Self {
        GradedMap {
            source: space,
            target: space,
            matrix: Matrix::identity(space.dim()),
            degree: Parity::Even,
        }
    }

    /// The odd map `V -> Π(V)` that is the identity on underlying vectors.
    pub fn parity_shift(space: GradedSpace) -> Self {
        let perm = space.shift_permutation();
        let mut m = Matrix::zeros(space.dim(), space.dim());
        for (i, &j) in perm.iter().enumerate() {
            m[(j, i)] = Rational::one();
        }
        GradedMap {
            source: space,
            target: space.shifted(),
            matrix: m,
            degree: Parity::Odd,
        }
    }

    pub fn source(&self) -> GradedSpace {
        self.source
    }

    pub fn target(&self) -> GradedSpace {
        self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn degree(&self) -> Parity {
        self.degree
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        if other.target != self.source {
            return Err(GradedError::Compose(format!(
                "inner target {:?} != outer source {:?}",
                other.target, self.source
            )));
        }
        Ok(GradedMap {
            source: other.source,
            target: self.target,
            matrix: self.matrix.mul(&other.matrix)?,
            degree: self.degree + other.degree,
        })
    }
}

/// `f ∘ g`.
pub fn graded_compose(f: &GradedMap, g: &GradedMap) -> Result<GradedMap, GradedError> {
    f.compose(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn odd_map(source: GradedSpace, target: GradedSpace, entries: &[i64]) -> GradedMap {
        let m = Matrix::from_i64(target.dim(), source.dim(), entries);
        GradedMap::new(source, target, m, Parity::Odd).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let v = GradedSpace::new(1, 1);
        let g = odd_map(v, v, &[0, 2, 3, 0]);
        assert_eq!(graded_compose(&GradedMap::identity(v), &g).unwrap(), g);
    }

    #[test]
    fn odd_maps_compose_to_even() {
        let v = GradedSpace::new(1, 1);
        let g = odd_map(v, v, &[0, 1, 1, 0]);
        let h = graded_compose(&g, &g).unwrap();
        assert_eq!(h.degree(), Parity::Even);
        assert_eq!(h.matrix(), &Matrix::identity(2));
    }

    #[test]
    fn parity_shift_squares_to_identity() {
        let v = GradedSpace::new(3, 1);
        let s = GradedMap::parity_shift(v);
        assert_eq!(s.target(), GradedSpace::new(1, 3));
        let back = GradedMap::parity_shift(s.target());
        let id = graded_compose(&back, &s).unwrap();
        assert_eq!(id, GradedMap::identity(v));
    }

    #[test]
    fn rejects_impure_and_misshapen() {
        let v = GradedSpace::new(1, 1);
        let m = Matrix::from_i64(2, 2, &[1, 0, 0, 0]);
        assert!(matches!(
            GradedMap::new(v, v, m, Parity::Odd),
            Err(GradedError::Impure { row: 0, col: 0, .. })
        ));
        assert!(matches!(
            GradedMap::new(v, v, Matrix::zeros(1, 2), Parity::Even),
            Err(GradedError::Shape { .. })
        ));
        let g = GradedMap::identity(GradedSpace::new(2, 0));
        assert!(graded_compose(&g, &GradedMap::identity(v)).is_err());
    }

    #[test]
    fn sort_even_first_is_stable() {
        use Parity::*;
        let (space, perm) = GradedSpace::sort_even_first(&[Odd, Even, Odd, Even]);
        assert_eq!(space, GradedSpace::new(2, 2));
        assert_eq!(perm, vec![2, 0, 3, 1]);
    }

    fn pure_map(source: GradedSpace, target: GradedSpace, degree: Parity, vals: &[i64]) -> GradedMap {
        let m = Matrix::from_fn(target.dim(), source.dim(), |i, j| {
            if target.parity(i) == source.parity(j) + degree {
                Rational::from(vals[(i * 7 + j) % vals.len()])
            } else {
                Rational::zero()
            }
        });
        GradedMap::new(source, target, m, degree).unwrap()
    }

    proptest! {
        #[test]
        fn composition_preserves_block_purity(
            dims in proptest::collection::vec(0usize..4, 6),
            d1 in 0u8..2, d2 in 0u8..2,
            vals in proptest::collection::vec(-3i64..=3, 5),
        ) {
            let a = GradedSpace::new(dims[0], dims[1]);
            let b = GradedSpace::new(dims[2], dims[3]);
            let c = GradedSpace::new(dims[4], dims[5]);
            let g = pure_map(a, b, Parity::from_bit(d1), &vals);
            let f = pure_map(b, c, Parity::from_bit(d2), &vals);
            let h = graded_compose(&f, &g).unwrap();
            prop_assert_eq!(h.degree(), Parity::from_bit(d1 + d2));
            prop_assert!(is_block_pure(h.matrix(), &a, &c, h.degree()));
        }
    }
}
