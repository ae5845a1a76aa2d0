//! Finite-dimensional supermodules and the functor calculus on them.
//!
//! Sign conventions, fixed throughout the crate:
//!
//! * tensor product: `x·(v⊗w) = (x·v)⊗w + (-1)^{|x||v|} v⊗(x·w)`;
//! * outer tensor product: `(x⊗y)·(v⊠w) = (-1)^{|y||v|} x·v ⊠ y·w`;
//! * dual: `(x·f)(v) = -(-1)^{|x||f|} f(x·v)`, so that evaluation
//!   `M* ⊗ M -> k`, `f⊗v ↦ f(v)` is a module map;
//! * Hom: `(x·f)(v) = x·f(v) - (-1)^{|x||f|} f(x·v)`, which makes
//!   `Hom_k(M, N)` literally equal to `N ⊗ M*` in the lexicographic basis.
//!
//! After any product the basis is the lexicographic pair basis followed by a
//! stable even-first partition; the permutation is exposed so canonical
//! isomorphisms can be written down.

use thiserror::Error;

use crate::exactla::{
    koszul_sign, poly, GradedError, GradedMap, GradedSpace, Matrix, MatrixError, Parity, Rational,
};
use crate::superalg::{self, AlgebraError, Factor, Family, OddVector, SuperAlgebra};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("expected {want} action matrices, got {got}")]
    ActionCount { want: usize, got: usize },
    #[error("action of {generator} is not {want}x{want}")]
    ActionShape { generator: String, want: usize },
    #[error("action of {0} is not parity-pure")]
    ParityImpure(String),
    #[error("RelationFailed({0}, {1})")]
    RelationFailed(String, String),
    #[error("TorusNotDiagonalizable({0})")]
    TorusNotDiagonalizable(String),
    #[error("modules are over different algebras ({0} vs {1})")]
    AlgebraMismatch(Family, Family),
    #[error("operation needs a module over an exterior algebra, got {0}")]
    NotExterior(Family),
    #[error("restriction vectors are linearly dependent")]
    DependentVectors,
    #[error("map does not commute with the action of {0}")]
    NotModuleMap(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A graded space with one action matrix per algebra generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Supermodule {
    algebra: SuperAlgebra,
    space: GradedSpace,
    actions: Vec<Matrix>,
}

impl Supermodule {
    /// Builds and validates.
    pub fn new(algebra: SuperAlgebra, space: GradedSpace, actions: Vec<Matrix>) -> Result<Self, ModuleError> {
        let m = Supermodule {
            algebra,
            space,
            actions,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds without checking relations. Callers in this crate only use it
    /// for constructions that preserve validity.
    pub(crate) fn from_parts(algebra: SuperAlgebra, space: GradedSpace, actions: Vec<Matrix>) -> Self {
        debug_assert_eq!(actions.len(), algebra.len());
        Supermodule {
            algebra,
            space,
            actions,
        }
    }

    pub fn zero(algebra: &SuperAlgebra) -> Self {
        let actions = vec![Matrix::zeros(0, 0); algebra.len()];
        Supermodule::from_parts(algebra.clone(), GradedSpace::default(), actions)
    }

    /// `k_ev` or `k_od`: one-dimensional with every generator acting by zero.
    pub fn trivial(algebra: &SuperAlgebra, parity: Parity) -> Self {
        let space = match parity {
            Parity::Even => GradedSpace::new(1, 0),
            Parity::Odd => GradedSpace::new(0, 1),
        };
        Supermodule::from_parts(algebra.clone(), space, vec![Matrix::zeros(1, 1); algebra.len()])
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> GradedSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.actions[g]
    }

    pub fn action_by_name(&self, name: &str) -> Option<&Matrix> {
        self.algebra.index_of(name).map(|g| &self.actions[g])
    }

    pub fn into_actions(self) -> Vec<Matrix> {
        self.actions
    }

    /// Exterior rank `r` if the module is over `Λ(a_1..a_r)`.
    pub fn exterior_rank(&self) -> Result<usize, ModuleError> {
        match self.algebra.family() {
            Family::Exterior(r) => Ok(r),
            other => Err(ModuleError::NotExterior(other)),
        }
    }

    /// Action of a linear combination of the odd generators.
    pub fn odd_action(&self, v: &OddVector) -> Result<Matrix, ModuleError> {
        let odd = self.algebra.odd_indices();
        if v.coefficients.len() != odd.len() {
            return Err(AlgebraError::OddVectorLength {
                got: v.coefficients.len(),
                want: odd.len(),
            }
            .into());
        }
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (c, &g) in v.coefficients.iter().zip(&odd) {
            out.add_scaled(c, &self.actions[g]);
        }
        Ok(out)
    }

    /// Checks shapes, parity purity, every bracket relation and
    /// diagonalizability of the torus.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let alg = &self.algebra;
        let n = self.dim();
        if self.actions.len() != alg.len() {
            return Err(ModuleError::ActionCount {
                want: alg.len(),
                got: self.actions.len(),
            });
        }
        for (g, x) in self.actions.iter().enumerate() {
            if x.rows() != n || x.cols() != n {
                return Err(ModuleError::ActionShape {
                    generator: alg.name(g).to_string(),
                    want: n,
                });
            }
            if GradedMap::new(self.space, self.space, x.clone(), alg.parity(g)).is_err() {
                return Err(ModuleError::ParityImpure(alg.name(g).to_string()));
            }
        }
        for g in 0..alg.len() {
            for h in g..alg.len() {
                let s = koszul_sign(alg.parity(g), alg.parity(h));
                let xy = self.actions[g].mul(&self.actions[h])?;
                let yx = self.actions[h].mul(&self.actions[g])?;
                let lhs = xy.sub(&yx.scale(&s))?;
                let mut rhs = Matrix::zeros(n, n);
                for (k, c) in alg.bracket(g, h).iter().enumerate() {
                    rhs.add_scaled(c, &self.actions[k]);
                }
                if lhs != rhs {
                    return Err(ModuleError::RelationFailed(
                        alg.name(g).to_string(),
                        alg.name(h).to_string(),
                    ));
                }
            }
        }
        for &t in alg.torus_indices() {
            if poly::rational_eigenvalues_if_diagonalizable(&self.actions[t]).is_none() {
                return Err(ModuleError::TorusNotDiagonalizable(alg.name(t).to_string()));
            }
        }
        Ok(())
    }

    fn same_algebra(&self, other: &Supermodule) -> Result<(), ModuleError> {
        if self.algebra != other.algebra {
            return Err(ModuleError::AlgebraMismatch(self.algebra.family(), other.algebra.family()));
        }
        Ok(())
    }

    /// Conjugates every action by a basis relabelling (`perm[old] = new`).
    pub fn relabel(&self, perm: &[usize], space: GradedSpace) -> Supermodule {
        let actions = self.actions.iter().map(|x| x.permute(perm)).collect();
        Supermodule::from_parts(self.algebra.clone(), space, actions)
    }

    /// Same space, actions conjugated by an invertible even matrix `t`:
    /// the new action is `t X t⁻¹`.
    pub fn conjugate(&self, t: &Matrix) -> Result<Supermodule, ModuleError> {
        let inv = t.inverse()?;
        let actions = self
            .actions
            .iter()
            .map(|x| t.mul(x).and_then(|y| y.mul(&inv)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Supermodule::from_parts(self.algebra.clone(), self.space, actions))
    }

    /// Reinterprets the module over another presentation with the same
    /// generators (used when passing to the principal quotient).
    pub(crate) fn with_algebra(&self, algebra: SuperAlgebra, actions: Vec<Matrix>) -> Supermodule {
        Supermodule::from_parts(algebra, self.space, actions)
    }
}

/// A degree-0 linear map commuting with every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    map: GradedMap,
}

impl ModuleMap {
    pub fn new(source: &Supermodule, target: &Supermodule, matrix: Matrix) -> Result<Self, ModuleError> {
        source.same_algebra(target)?;
        let map = GradedMap::new(source.space, target.space, matrix, Parity::Even)?;
        for g in 0..source.algebra.len() {
            let lhs = map.matrix().mul(source.action(g))?;
            let rhs = target.action(g).mul(map.matrix())?;
            if lhs != rhs {
                return Err(ModuleError::NotModuleMap(source.algebra.name(g).to_string()));
            }
        }
        Ok(ModuleMap { map })
    }

    pub fn matrix(&self) -> &Matrix {
        self.map.matrix()
    }

    pub fn graded(&self) -> &GradedMap {
        &self.map
    }

    pub fn is_isomorphism(&self) -> bool {
        self.map.matrix().is_invertible()
    }
}

/// True iff `matrix` is an even map commuting with all actions.
pub fn is_module_map(source: &Supermodule, target: &Supermodule, matrix: &Matrix) -> bool {
    ModuleMap::new(source, target, matrix.clone()).is_ok()
}

/// `Π(M)`: same operators, parities swapped, basis reordered so that the old
/// odd vectors come first. `Π(Π(M)) = M` exactly.
pub fn parity_shift(m: &Supermodule) -> Supermodule {
    m.relabel(&m.space.shift_permutation(), m.space.shifted())
}

/// Embeds blocks of two spaces into the even-first basis of their sum:
/// `(perm_left, perm_right, sum_space)`.
fn sum_layout(a: GradedSpace, b: GradedSpace) -> (Vec<usize>, Vec<usize>, GradedSpace) {
    let s = GradedSpace::new(a.dim_even + b.dim_even, a.dim_odd + b.dim_odd);
    let left = (0..a.dim())
        .map(|i| if i < a.dim_even { i } else { b.dim_even + i })
        .collect();
    let right = (0..b.dim())
        .map(|j| {
            if j < b.dim_even {
                a.dim_even + j
            } else {
                a.dim() + j
            }
        })
        .collect();
    (left, right, s)
}

/// Index maps of the summands into `direct_sum(m, n)`.
pub fn direct_sum_embeddings(m: GradedSpace, n: GradedSpace) -> (Vec<usize>, Vec<usize>) {
    let (l, r, _) = sum_layout(m, n);
    (l, r)
}

pub fn direct_sum(m: &Supermodule, n: &Supermodule) -> Result<Supermodule, ModuleError> {
    m.same_algebra(n)?;
    let (left, right, space) = sum_layout(m.space, n.space);
    let actions = m
        .actions
        .iter()
        .zip(&n.actions)
        .map(|(x, y)| {
            let mut out = Matrix::zeros(space.dim(), space.dim());
            for (a, b) in [(x, &left), (y, &right)] {
                for i in 0..a.rows() {
                    for (j, v) in a.row(i).iter().enumerate() {
                        if !v.is_zero() {
                            out[(b[i], b[j])] = v.clone();
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(Supermodule::from_parts(m.algebra.clone(), space, actions))
}

pub fn direct_sum_all<'a>(algebra: &SuperAlgebra, parts: impl IntoIterator<Item = &'a Supermodule>) -> Result<Supermodule, ModuleError> {
    let mut acc = Supermodule::zero(algebra);
    for p in parts {
        acc = direct_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Even-first layout of `a ⊗ b`: `perm[i * b.dim() + j]` is the position of
/// `v_i ⊗ w_j`.
pub fn tensor_permutation(a: GradedSpace, b: GradedSpace) -> (GradedSpace, Vec<usize>) {
    let parities: Vec<Parity> = a
        .parities()
        .flat_map(|p| b.parities().map(move |q| p + q))
        .collect();
    GradedSpace::sort_even_first(&parities)
}

/// `diag((-1)^{|x||v_i|})`.
fn sign_for(space: &GradedSpace, x: Parity) -> Matrix {
    if x.is_odd() {
        space.sign_matrix()
    } else {
        Matrix::identity(space.dim())
    }
}

pub fn tensor(m: &Supermodule, n: &Supermodule) -> Result<Supermodule, ModuleError> {
    m.same_algebra(n)?;
    let (space, perm) = tensor_permutation(m.space, n.space);
    let id_n = Matrix::identity(n.dim());
    let actions = (0..m.algebra.len())
        .map(|g| {
            let left = m.actions[g].kronecker(&id_n);
            let right = sign_for(&m.space, m.algebra.parity(g)).kronecker(&n.actions[g]);
            left.add(&right).map(|x| x.permute(&perm))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Supermodule::from_parts(m.algebra.clone(), space, actions))
}

/// `M ⊠ N` over the product algebra.
pub fn outer_tensor(m: &Supermodule, n: &Supermodule) -> Result<Supermodule, ModuleError> {
    let (algebra, factors) = m.algebra.product(&n.algebra)?;
    let (space, perm) = tensor_permutation(m.space, n.space);
    let id_m = Matrix::identity(m.dim());
    let id_n = Matrix::identity(n.dim());
    let actions = factors
        .iter()
        .map(|f| {
            let x = match *f {
                Factor::Left(g) => m.actions[g].kronecker(&id_n),
                Factor::Right(h) => {
                    let sign = sign_for(&m.space, n.algebra.parity(h));
                    sign.mul(&id_m).expect("square").kronecker(&n.actions[h])
                }
            };
            x.permute(&perm)
        })
        .collect();
    Ok(Supermodule::from_parts(algebra, space, actions))
}

/// `M*` on the dual basis, `(x·f)(v) = -(-1)^{|x||f|} f(x·v)`.
///
/// `dual(dual(M))` has the same even actions as `M` and negated odd actions;
/// it is identified with `M` by the Koszul map `v ↦ (-1)^{|v|} v`, see
/// [`double_dual_isomorphism`].
pub fn dual(m: &Supermodule) -> Supermodule {
    let actions = (0..m.algebra.len())
        .map(|g| {
            let t = m.actions[g].transpose();
            let s = sign_for(&m.space, m.algebra.parity(g));
            t.mul(&s).expect("square").neg()
        })
        .collect();
    Supermodule::from_parts(m.algebra.clone(), m.space, actions)
}

/// The canonical isomorphism `M -> M**`, `v ↦ (-1)^{|v|} v` in the
/// (double-)dual basis.
pub fn double_dual_isomorphism(m: &Supermodule) -> Result<ModuleMap, ModuleError> {
    ModuleMap::new(m, &dual(&dual(m)), m.space.sign_matrix())
}

/// Evaluation `M* ⊗ M -> k_ev`, `f ⊗ v ↦ f(v)`, as a 1 x dim² matrix in the
/// basis of `tensor(dual(m), m)`.
pub fn evaluation_matrix(m: &Supermodule) -> Matrix {
    let n = m.dim();
    let (space, perm) = tensor_permutation(m.space, m.space);
    let mut e = Matrix::zeros(1, space.dim());
    for i in 0..n {
        e[(0, perm[i * n + i])] = Rational::one();
    }
    e
}

/// `Hom_k(M, N)` with `(x·f) = x∘f - (-1)^{|x||f|} f∘x`. Basis element
/// `E_{ij}` (sending `v_j` to `w_i`) sits at the position of `w_i ⊗ f_j`.
pub fn hom_module(m: &Supermodule, n: &Supermodule) -> Result<Supermodule, ModuleError> {
    m.same_algebra(n)?;
    let (space, perm) = tensor_permutation(n.space, m.space);
    let (dn, dm) = (n.dim(), m.dim());
    let idx = |i: usize, j: usize| perm[i * dm + j];
    let actions = (0..m.algebra.len())
        .map(|g| {
            let xp = m.algebra.parity(g);
            let (xn, xm) = (&n.actions[g], &m.actions[g]);
            let mut out = Matrix::zeros(space.dim(), space.dim());
            for i in 0..dn {
                for j in 0..dm {
                    let col = idx(i, j);
                    // X_N E_ij = Σ_k X_N[k,i] E_kj
                    for k in 0..dn {
                        let c = &xn[(k, i)];
                        if !c.is_zero() {
                            let slot = &mut out[(idx(k, j), col)];
                            *slot = &*slot + c;
                        }
                    }
                    // E_ij X_M = Σ_l X_M[j,l] E_il
                    let s = koszul_sign(xp, n.space.parity(i) + m.space.parity(j));
                    for l in 0..dm {
                        let c = &xm[(j, l)];
                        if !c.is_zero() {
                            let slot = &mut out[(idx(i, l), col)];
                            *slot = &*slot - &(c * &s);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(Supermodule::from_parts(m.algebra.clone(), space, actions))
}

/// `M|_⟨v_1, …, v_s⟩` over `Λ(a_1..a_s)`, the `i`-th generator acting as
/// `Σ_j c_ij a_j`.
pub fn restrict(m: &Supermodule, vs: &[OddVector]) -> Result<Supermodule, ModuleError> {
    let r = m.exterior_rank()?;
    if vs.is_empty() {
        return Err(AlgebraError::ZeroRank.into());
    }
    for v in vs {
        if v.coefficients.len() != r {
            return Err(AlgebraError::OddVectorLength {
                got: v.coefficients.len(),
                want: r,
            }
            .into());
        }
    }
    let coeffs = Matrix::from_columns(r, &vs.iter().map(|v| v.coefficients.clone()).collect::<Vec<_>>());
    if coeffs.rank() < vs.len() {
        return Err(ModuleError::DependentVectors);
    }
    let algebra = superalg::exterior(vs.len())?;
    let actions = vs.iter().map(|v| m.odd_action(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(Supermodule::from_parts(algebra, m.space, actions))
}

/// Bitmask subsets of `{0..r-1}` in the order used for `Λ(a_1..a_r)`:
/// by degree, then lexicographically; then stable even-first.
pub fn exterior_monomials(r: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << r).collect();
    masks.sort_by_key(|&m| {
        let elems: Vec<u32> = (0..r as u32).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones() % 2, m.count_ones(), elems)
    });
    masks
}

/// `(-1)^{#{j ∈ S : j < i}}`, the sign of `a_i · a_S`.
pub fn wedge_sign(i: usize, mask: u32) -> Rational {
    if (mask & ((1u32 << i) - 1)).count_ones() % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The left regular module of `Λ(a_1..a_r)`, the projective cover of `k_ev`.
pub fn exterior_regular(r: usize) -> Result<Supermodule, ModuleError> {
    let algebra = superalg::exterior(r)?;
    let masks = exterior_monomials(r);
    let mut pos = vec![0usize; 1 << r];
    for (k, &m) in masks.iter().enumerate() {
        pos[m as usize] = k;
    }
    let even = masks.iter().filter(|m| m.count_ones() % 2 == 0).count();
    let space = GradedSpace::new(even, masks.len() - even);
    let actions = (0..r)
        .map(|i| {
            let mut x = Matrix::zeros(masks.len(), masks.len());
            for &m in &masks {
                if m >> i & 1 == 0 {
                    x[(pos[(m | 1 << i) as usize], pos[m as usize])] = wedge_sign(i, m);
                }
            }
            x
        })
        .collect();
    Ok(Supermodule::from_parts(algebra, space, actions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{detecting_e, exterior, gl11};

    fn ext(r: usize) -> SuperAlgebra {
        exterior(r).unwrap()
    }

    #[test]
    fn validate_examples() {
        Supermodule::trivial(&ext(2), Parity::Even).validate().unwrap();
        let reg = exterior_regular(2).unwrap();
        reg.validate().unwrap();
        assert_eq!(reg.space(), GradedSpace::new(2, 2));

        // a1 acting with a1² ≠ 0 on a (1|1) space
        let x = Matrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let bad = Supermodule::new(ext(1), GradedSpace::new(1, 1), vec![x]);
        assert_eq!(bad, Err(ModuleError::RelationFailed("a1".into(), "a1".into())));

        let impure = Supermodule::new(ext(1), GradedSpace::new(2, 0), vec![Matrix::from_i64(2, 2, &[0, 1, 0, 0])]);
        assert_eq!(impure, Err(ModuleError::ParityImpure("a1".into())));

        // gl(1|1) with t1 acting by a Jordan block on the even part
        let g = gl11();
        let j = Matrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let z = Matrix::zeros(2, 2);
        let m = Supermodule::new(g, GradedSpace::new(2, 0), vec![j.clone(), j.scale(&Rational::from(-1)), z.clone(), z]);
        assert!(matches!(m, Err(ModuleError::RelationFailed(..)) | Err(ModuleError::TorusNotDiagonalizable(_))));
    }

    #[test]
    fn torus_must_be_diagonalizable() {
        let g = gl11();
        let j = Matrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let neg = Matrix::from_i64(2, 2, &[-1, -1, 0, -1]);
        let z = Matrix::zeros(2, 2);
        let m = Supermodule::new(g, GradedSpace::new(2, 0), vec![j, neg, z.clone(), z]);
        assert_eq!(m, Err(ModuleError::TorusNotDiagonalizable("t1".into())));
    }

    #[test]
    fn parity_shift_examples() {
        let a = ext(2);
        assert_eq!(parity_shift(&Supermodule::trivial(&a, Parity::Even)), Supermodule::trivial(&a, Parity::Odd));
        let reg = exterior_regular(2).unwrap();
        assert_eq!(parity_shift(&parity_shift(&reg)), reg);
        let m = direct_sum(&reg, &Supermodule::trivial(&a, Parity::Odd)).unwrap();
        let m = direct_sum(&m, &Supermodule::trivial(&a, Parity::Even)).unwrap();
        assert_eq!(m.space(), GradedSpace::new(3, 3));
        let m = direct_sum(&Supermodule::trivial(&a, Parity::Even), &exterior_regular(2).unwrap()).unwrap();
        let m = direct_sum(&m, &Supermodule::trivial(&a, Parity::Even)).unwrap();
        assert_eq!(parity_shift(&m).space(), GradedSpace::new(2, 4));
        parity_shift(&m).validate().unwrap();
    }

    #[test]
    fn direct_sum_examples() {
        let a = ext(2);
        let reg = exterior_regular(2).unwrap();
        assert_eq!(direct_sum(&reg, &Supermodule::zero(&a)).unwrap(), reg);
        assert_eq!(direct_sum(&Supermodule::zero(&a), &reg).unwrap(), reg);
        let s = direct_sum(&Supermodule::trivial(&a, Parity::Even), &Supermodule::trivial(&a, Parity::Odd)).unwrap();
        assert_eq!(s.space(), GradedSpace::new(1, 1));
        let big = direct_sum(&reg, &parity_shift(&reg)).unwrap();
        big.validate().unwrap();
        assert!(direct_sum(&reg, &Supermodule::trivial(&ext(1), Parity::Even)).is_err());
    }

    #[test]
    fn tensor_examples() {
        let a = ext(2);
        let kod = Supermodule::trivial(&a, Parity::Odd);
        let kev = Supermodule::trivial(&a, Parity::Even);
        assert_eq!(tensor(&kod, &kod).unwrap(), kev);
        let reg = exterior_regular(2).unwrap();
        assert_eq!(tensor(&reg, &kev).unwrap(), reg);
        // M ⊗ k_od is literally Π(M) after the canonical permutation.
        assert_eq!(tensor(&reg, &kod).unwrap(), parity_shift(&reg));
        // k_od ⊗ M is Π(M) twisted by the Koszul sign on the factor k_od.
        let left = tensor(&kod, &reg).unwrap();
        let shifted = parity_shift(&reg);
        assert_ne!(left, shifted);
        let t = left.space().sign_matrix();
        assert!(is_module_map(&left, &shifted, &t));
        assert!(tensor(&reg, &Supermodule::trivial(&ext(1), Parity::Even)).is_err());
        assert_eq!(tensor(&reg, &Supermodule::zero(&a)).unwrap(), Supermodule::zero(&a));
    }

    #[test]
    fn dual_examples() {
        let a = ext(2);
        let kev = Supermodule::trivial(&a, Parity::Even);
        assert_eq!(dual(&kev), kev);
        let reg = exterior_regular(2).unwrap();
        let d = dual(&reg);
        d.validate().unwrap();
        let dd = dual(&d);
        // Odd generators come back negated; the Koszul sign map identifies them.
        for g in 0..2 {
            assert_eq!(dd.action(g), &reg.action(g).neg());
        }
        assert!(double_dual_isomorphism(&reg).unwrap().is_isomorphism());
        // Torus actions survive the double dual unchanged.
        let m = crate::structure::induced_sl11(Rational::from(2));
        let dd = dual(&dual(&m));
        assert_eq!(dd.action(0), m.action(0));
        assert_eq!(dd.action(1), &m.action(1).neg());
        assert!(double_dual_isomorphism(&m).unwrap().is_isomorphism());
    }

    #[test]
    fn evaluation_is_a_module_map() {
        let reg = exterior_regular(3).unwrap();
        let m = direct_sum(&reg, &Supermodule::trivial(reg.algebra(), Parity::Odd)).unwrap();
        let t = tensor(&dual(&m), &m).unwrap();
        let kev = Supermodule::trivial(m.algebra(), Parity::Even);
        assert!(is_module_map(&t, &kev, &evaluation_matrix(&m)));
        // Over e_1 as well, where odd brackets are nonzero.
        let e = detecting_e(1).unwrap();
        let p = crate::structure::simple_q1(Rational::from(3), Parity::Even).unwrap();
        let t = tensor(&dual(&p), &p).unwrap();
        assert!(is_module_map(&t, &Supermodule::trivial(&e, Parity::Even), &evaluation_matrix(&p)));
    }

    #[test]
    fn hom_module_matches_tensor_with_dual() {
        let a = ext(2);
        let kev = Supermodule::trivial(&a, Parity::Even);
        assert_eq!(hom_module(&kev, &kev).unwrap(), kev);
        let reg = exterior_regular(2).unwrap();
        let m = direct_sum(&reg, &Supermodule::trivial(&a, Parity::Odd)).unwrap();
        let h = hom_module(&m, &reg).unwrap();
        assert_eq!(h.dim(), m.dim() * reg.dim());
        assert_eq!(h, tensor(&reg, &dual(&m)).unwrap());
        h.validate().unwrap();
    }

    #[test]
    fn restrict_examples() {
        let reg = exterior_regular(2).unwrap();
        let all = [OddVector::basis(2, 0), OddVector::basis(2, 1)];
        assert_eq!(restrict(&reg, &all).unwrap(), reg);
        let one = restrict(&reg, &[OddVector::basis(2, 0)]).unwrap();
        assert_eq!(one.dim(), 4);
        one.validate().unwrap();
        let dep = [OddVector::basis(2, 0), OddVector::new(vec![Rational::from(2), Rational::zero()])];
        assert_eq!(restrict(&reg, &dep), Err(ModuleError::DependentVectors));
        let e = crate::structure::proj_cover_q1();
        assert!(matches!(restrict(&e, &all), Err(ModuleError::NotExterior(_))));
    }

    #[test]
    fn outer_tensor_of_trivials_and_projectives() {
        let e1 = detecting_e(1).unwrap();
        let kev = Supermodule::trivial(&e1, Parity::Even);
        let prod = outer_tensor(&kev, &kev).unwrap();
        assert_eq!(prod, Supermodule::trivial(&detecting_e(2).unwrap(), Parity::Even));
        let p0 = crate::structure::induced_sl11(Rational::zero());
        let pp = outer_tensor(&p0, &p0).unwrap();
        assert_eq!(pp.dim(), 16);
        pp.validate().unwrap();
        assert!(outer_tensor(&kev, &p0).is_err());
    }

    #[test]
    fn tensor_is_associative_up_to_permutation() {
        let a = ext(2);
        let reg = exterior_regular(2).unwrap();
        let m = direct_sum(&Supermodule::trivial(&a, Parity::Odd), &reg).unwrap();
        let n = parity_shift(&reg);
        let k = direct_sum(&Supermodule::trivial(&a, Parity::Even), &Supermodule::trivial(&a, Parity::Odd)).unwrap();
        let left = tensor(&tensor(&m, &n).unwrap(), &k).unwrap();
        let right = tensor(&m, &tensor(&n, &k).unwrap()).unwrap();
        let perm = associator(m.space(), n.space(), k.space());
        assert_eq!(left.relabel(&perm, right.space()), right);
    }

    /// Position in `M⊗(N⊗K)` of each basis vector of `(M⊗N)⊗K`.
    fn associator(a: GradedSpace, b: GradedSpace, c: GradedSpace) -> Vec<usize> {
        let (ab, p_ab) = tensor_permutation(a, b);
        let (_, p_ab_c) = tensor_permutation(ab, c);
        let (bc, p_bc) = tensor_permutation(b, c);
        let (_, p_a_bc) = tensor_permutation(a, bc);
        let mut out = vec![0; a.dim() * b.dim() * c.dim()];
        for i in 0..a.dim() {
            for j in 0..b.dim() {
                for k in 0..c.dim() {
                    let l = p_ab_c[p_ab[i * b.dim() + j] * c.dim() + k];
                    let r = p_a_bc[i * bc.dim() + p_bc[j * c.dim() + k]];
                    out[l] = r;
                }
            }
        }
        out
    }

    #[test]
    fn parity_shift_commutes_with_functors() {
        let a = ext(2);
        let reg = exterior_regular(2).unwrap();
        let m = direct_sum(&Supermodule::trivial(&a, Parity::Odd), &reg).unwrap();
        let n = direct_sum(&reg, &Supermodule::trivial(&a, Parity::Even)).unwrap();
        // M ⊗ Π(N) is literally Π(M ⊗ N).
        let lhs = tensor(&m, &parity_shift(&n)).unwrap();
        let rhs = parity_shift(&tensor(&m, &n).unwrap());
        let (_, p1) = tensor_permutation(m.space(), parity_shift(&n).space());
        let (_, p2) = tensor_permutation(m.space(), n.space());
        let shift = tensor(&m, &n).unwrap().space().shift_permutation();
        let nshift = n.space().shift_permutation();
        let mut perm = vec![0; lhs.dim()];
        for i in 0..m.dim() {
            for j in 0..n.dim() {
                perm[p1[i * n.dim() + nshift[j]]] = shift[p2[i * n.dim() + j]];
            }
        }
        assert_eq!(lhs.relabel(&perm, rhs.space()), rhs);
        // dual(Π M) ≅ Π(dual M) via the sign matrix.
        let d1 = dual(&parity_shift(&m));
        let d2 = parity_shift(&dual(&m));
        assert!(is_module_map(&d1, &d2, &d1.space().sign_matrix()));
        // restrict commutes with Π on the nose.
        let v = [OddVector::new(vec![Rational::from(1), Rational::from(-2)])];
        assert_eq!(restrict(&parity_shift(&m), &v).unwrap(), parity_shift(&restrict(&m, &v).unwrap()));
    }
}
