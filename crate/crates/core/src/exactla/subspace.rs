//! Subspaces in reduced echelon form, with restriction and quotient of
//! operators that preserve them.

use super::{GradedSpace, Matrix, Rational};

/// A subspace of `k^n` given by a basis whose rows `coords` form the
/// identity. Equivalently: the transposed basis is in reduced row echelon
/// form with pivots `coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    coords: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `gens`.
    pub fn span(gens: &Matrix) -> Subspace {
        let r = gens.transpose().rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let basis = r.reduced.select_rows(&rows).transpose();
        Subspace {
            basis,
            coords: r.pivots,
        }
    }

    /// Null space of `m`.
    pub fn kernel(m: &Matrix) -> Subspace {
        let r = m.rref();
        let mut is_pivot = vec![false; m.cols()];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        let coords = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
        Subspace {
            basis: r.kernel_basis,
            coords,
        }
    }

    pub fn whole(n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(n),
            coords: (0..n).collect(),
        }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// The grading inherited from an even-first ambient space. Valid for
    /// graded subspaces, whose echelon basis is homogeneous and even-first.
    pub fn graded(&self, ambient: &GradedSpace) -> GradedSpace {
        let even = self.coords.iter().filter(|&&c| c < ambient.dim_even).count();
        GradedSpace::new(even, self.dim() - even)
    }

    /// Whether every basis vector is homogeneous for `ambient`.
    pub fn is_graded(&self, ambient: &GradedSpace) -> bool {
        (0..self.dim()).all(|k| {
            let p = ambient.parity(self.coords[k]);
            (0..self.ambient_dim()).all(|i| self.basis[(i, k)].is_zero() || ambient.parity(i) == p)
        })
    }

    /// Matrix of `op` restricted to this subspace; `op` must preserve it.
    pub fn restrict(&self, op: &Matrix) -> Matrix {
        op.mul(&self.basis).expect("shape").select_rows(&self.coords)
    }

    /// Coordinates of a vector of the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.coords.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let c = self.coordinates(v);
        self.basis.apply(&c).as_slice() == v
    }

    /// Ambient indices whose standard vectors span a complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_coord = vec![false; self.ambient_dim()];
        for &c in &self.coords {
            is_coord[c] = true;
        }
        (0..self.ambient_dim()).filter(|&i| !is_coord[i]).collect()
    }

    /// Matrix of the operator induced by `op` on the quotient by this
    /// subspace, in the basis of complement standard vectors.
    pub fn quotient(&self, op: &Matrix) -> Matrix {
        let np = self.complement_coords();
        let x_np = op.select(&np, &np);
        let b_np = self.basis.select_rows(&np);
        let x_p = op.select(&self.coords, &np);
        x_np.sub(&b_np.mul(&x_p).expect("shape")).expect("shape")
    }

    /// Quotient map `k^n -> k^n / self` in the complement basis.
    pub fn quotient_map(&self) -> Matrix {
        let np = self.complement_coords();
        let n = self.ambient_dim();
        // v ↦ v[np] - B[np,:] v[coords]
        let mut q = Matrix::zeros(np.len(), n);
        for (r, &i) in np.iter().enumerate() {
            q[(r, i)] = Rational::one();
            for (k, &c) in self.coords.iter().enumerate() {
                let b = &self.basis[(i, k)];
                if !b.is_zero() {
                    q[(r, c)] = -b;
                }
            }
        }
        q
    }
}
