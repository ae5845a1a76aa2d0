//! Radical, socle, projective covers, stripping, syzygies, Hom and Ext over
//! exterior algebras, plus weight decomposition and the rank-1 constructions
//! over the detecting algebras.
//!
//! Over `Λ = Λ(a_1..a_r)` the element `ã = a_1⋯a_r` spans the socle of `Λ`,
//! so the number of free summands of `M` is `rank(ã|_M)`. Projective covers
//! are direct sums of shifted copies of `Λ` with basis labelled by
//! `(generator, monomial)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactla::{poly, GradedMap, GradedSpace, Matrix, MatrixError, Parity, Rational, Subspace};
use crate::rng::Mcg;
use crate::superalg::{self, AlgebraError, Family, SuperAlgebra};
use crate::supermod::{self, wedge_sign, ModuleError, ModuleMap, Supermodule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("weight entries of a simple constructor must be nonzero")]
    ZeroWeight,
    #[error("weight has {got} entries, algebra has torus rank {want}")]
    WeightLength { got: usize, want: usize },
    #[error("{0} has no central torus to decompose by")]
    NoWeights(Family),
}

impl From<MatrixError> for StructureError {
    fn from(e: MatrixError) -> Self {
        StructureError::Module(e.into())
    }
}

impl From<AlgebraError> for StructureError {
    fn from(e: AlgebraError) -> Self {
        StructureError::Module(e.into())
    }
}

type Result<T> = std::result::Result<T, StructureError>;

/// Row-sparse copy of an operator for repeated application to vectors.
pub(crate) struct SparseOp {
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseOp {
    pub(crate) fn new(m: &Matrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseOp { rows }
    }

    pub(crate) fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        acc += &(a * &v[*j]);
                    }
                }
                acc
            })
            .collect()
    }
}

fn sparse_actions(m: &Supermodule) -> Vec<SparseOp> {
    m.actions().iter().map(SparseOp::new).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `a_S · w` for every subset mask `S`, where `a_S = a_{s_1} a_{s_2} ⋯` with
/// `s_1 < s_2 < ⋯`.
fn monomial_images(ops: &[SparseOp], w: &[Rational]) -> Vec<Vec<Rational>> {
    let r = ops.len();
    let mut out = vec![Vec::new(); 1 << r];
    out[0] = w.to_vec();
    for mask in 1..1usize << r {
        let i = mask.trailing_zeros() as usize;
        out[mask] = ops[i].apply(&out[mask & !(1 << i)]);
    }
    out
}

/// Operator of the monomial `a_S` on `m`.
pub fn monomial_operator(m: &Supermodule, mask: u32) -> Matrix {
    let mut out = Matrix::identity(m.dim());
    for i in (0..m.actions().len()).rev() {
        if mask >> i & 1 == 1 {
            out = m.action(i).mul(&out).expect("square");
        }
    }
    out
}

fn all_monomial_operators(m: &Supermodule) -> Vec<Matrix> {
    let r = m.actions().len();
    let mut out = vec![Matrix::identity(m.dim()); 1 << r];
    for mask in 1..1usize << r {
        let i = mask.trailing_zeros() as usize;
        out[mask] = m.action(i).mul(&out[mask & !(1 << i)]).expect("square");
    }
    out
}

fn top_matrix(m: &Supermodule) -> Matrix {
    monomial_operator(m, (1u32 << m.actions().len()) - 1)
}

/// `Σ_i image(a_i)`.
pub fn radical(m: &Supermodule) -> Result<Subspace> {
    m.exterior_rank()?;
    let n = m.dim();
    let mut gens = Matrix::zeros(n, 0);
    for x in m.actions() {
        gens = gens.hstack(x)?;
    }
    Ok(Subspace::span(&gens))
}

/// `∩_i kernel(a_i)`.
pub fn socle(m: &Supermodule) -> Result<Subspace> {
    m.exterior_rank()?;
    let mut stacked = Matrix::zeros(0, m.dim());
    for x in m.actions() {
        stacked = stacked.vstack(x)?;
    }
    Ok(Subspace::kernel(&stacked))
}

/// `dim M - dim Rad(M)`, the minimal number of generators.
pub fn rk(m: &Supermodule) -> Result<usize> {
    Ok(m.dim() - radical(m)?.dim())
}

/// Basis indices whose standard vectors lift a basis of `M / Rad(M)`.
fn top_lifts(m: &Supermodule) -> Result<Vec<usize>> {
    Ok(radical(m)?.complement_coords())
}

/// The action of `ã = a_1 ⋯ a_r`.
pub fn top_action(m: &Supermodule) -> Result<GradedMap> {
    let r = m.exterior_rank()?;
    let degree = Parity::from_int(r as i64);
    Ok(GradedMap::new(m.space(), m.space(), top_matrix(m), degree).map_err(ModuleError::from)?)
}

/// Number of free summands, `rank(ã|_M)`.
pub fn free_rank(m: &Supermodule) -> Result<usize> {
    m.exterior_rank()?;
    Ok(top_matrix(m).rank())
}

pub fn is_projective(m: &Supermodule) -> Result<bool> {
    let r = m.exterior_rank()?;
    Ok(m.dim() == free_rank(m)? << r)
}

/// `M = core ⊕ (free part)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripResult {
    pub core: Supermodule,
    pub proj_mult_even: usize,
    pub proj_mult_odd: usize,
    /// Basis indices `p` of `M` whose cyclic submodules `Λ·e_p` form the
    /// free summand.
    pub free_generators: Vec<usize>,
    /// Split surjection `M -> core` with the free summand as kernel.
    pub projection: ModuleMap,
}

impl StripResult {
    pub fn projective_count(&self) -> usize {
        self.proj_mult_even + self.proj_mult_odd
    }
}

/// Splits off the largest free summand.
///
/// Generators are the lowest-index standard vectors `e_p` with `ã e_p`
/// independent; they generate a free submodule `F` of maximal rank, which is
/// a summand because free modules are injective, so `M/F` is the core.
pub fn strip_projectives(m: &Supermodule) -> Result<StripResult> {
    let r = m.exterior_rank()?;
    let n = m.dim();
    let gens = top_matrix(m).independent_columns();
    let (mut even, mut odd) = (0, 0);
    for &p in &gens {
        match m.space().parity(p) {
            Parity::Even => even += 1,
            Parity::Odd => odd += 1,
        }
    }
    if gens.is_empty() {
        let projection = ModuleMap::new(m, m, Matrix::identity(n))?;
        return Ok(StripResult {
            core: m.clone(),
            proj_mult_even: 0,
            proj_mult_odd: 0,
            free_generators: gens,
            projection,
        });
    }
    let ops = sparse_actions(m);
    let mut vecs = Vec::with_capacity(gens.len() << r);
    for &p in &gens {
        vecs.extend(monomial_images(&ops, &unit(n, p)));
    }
    let free = Subspace::span(&Matrix::from_columns(n, &vecs));
    debug_assert_eq!(free.dim(), gens.len() << r);
    let keep = free.complement_coords();
    let dim_even = keep.iter().filter(|&&c| c < m.space().dim_even).count();
    let space = GradedSpace::new(dim_even, keep.len() - dim_even);
    let actions = m.actions().iter().map(|x| free.quotient(x)).collect();
    let core = Supermodule::from_parts(m.algebra().clone(), space, actions);
    let projection = ModuleMap::new(m, &core, free.quotient_map())?;
    Ok(StripResult {
        core,
        proj_mult_even: even,
        proj_mult_odd: odd,
        free_generators: gens,
        projection,
    })
}

/// `⊕_j Π^{p_j} Λ`, basis labelled by `(j, S)` standing for `a_S ε_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub module: Supermodule,
    pub labels: Vec<(usize, u32)>,
    pub generator_parities: Vec<Parity>,
}

impl FreeModule {
    pub fn new(r: usize, generator_parities: &[Parity]) -> Result<FreeModule> {
        let algebra = superalg::exterior(r)?;
        let mut masks: Vec<u32> = (0..1u32 << r).collect();
        masks.sort_by_key(|&m| (m.count_ones(), (0..r as u32).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()));
        let natural: Vec<(usize, u32)> = (0..generator_parities.len())
            .flat_map(|j| masks.iter().map(move |&s| (j, s)))
            .collect();
        let parities: Vec<Parity> = natural
            .iter()
            .map(|&(j, s)| generator_parities[j] + Parity::from_int(i64::from(s.count_ones())))
            .collect();
        let (space, perm) = GradedSpace::sort_even_first(&parities);
        let mut labels = vec![(0, 0); natural.len()];
        let mut position = vec![0usize; natural.len()];
        for (k, &lab) in natural.iter().enumerate() {
            labels[perm[k]] = lab;
            position[lab.0 << r | lab.1 as usize] = perm[k];
        }
        let actions = (0..r)
            .map(|i| {
                let mut x = Matrix::zeros(space.dim(), space.dim());
                for (col, &(j, s)) in labels.iter().enumerate() {
                    if s >> i & 1 == 0 {
                        let row = position[j << r | (s | 1 << i) as usize];
                        x[(row, col)] = wedge_sign(i, s);
                    }
                }
                x
            })
            .collect();
        Ok(FreeModule {
            module: Supermodule::from_parts(algebra, space, actions),
            labels,
            generator_parities: generator_parities.to_vec(),
        })
    }

    /// The module map sending `ε_j` to `ys[j]` (which must have parity
    /// `p_j`), as a matrix.
    fn map_from_images(&self, target: &Supermodule, ys: &[Vec<Rational>]) -> Matrix {
        let ops = sparse_actions(target);
        let images: Vec<Vec<Vec<Rational>>> = ys.iter().map(|y| monomial_images(&ops, y)).collect();
        let cols: Vec<Vec<Rational>> = self.labels.iter().map(|&(j, s)| images[j][s as usize].clone()).collect();
        Matrix::from_columns(target.dim(), &cols)
    }
}

/// A minimal projective cover `onto: P -> M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveCover {
    pub free: FreeModule,
    pub onto: ModuleMap,
    /// Basis indices of `M` whose standard vectors are the images of the
    /// free generators.
    pub lifts: Vec<usize>,
}

impl ProjectiveCover {
    pub fn module(&self) -> &Supermodule {
        &self.free.module
    }
}

pub fn projective_cover(m: &Supermodule) -> Result<ProjectiveCover> {
    let r = m.exterior_rank()?;
    let lifts = top_lifts(m)?;
    let parities: Vec<Parity> = lifts.iter().map(|&c| m.space().parity(c)).collect();
    let free = FreeModule::new(r, &parities)?;
    let ys: Vec<Vec<Rational>> = lifts.iter().map(|&c| unit(m.dim(), c)).collect();
    let onto = free.map_from_images(m, &ys);
    let onto = ModuleMap::new(&free.module, m, onto)?;
    Ok(ProjectiveCover { free, onto, lifts })
}

/// Kernel of the projective cover together with its position inside the
/// cover. Not stripped (it is projective-free whenever the cover is minimal
/// and `M` is projective-free).
pub fn omega1_with_cover(m: &Supermodule) -> Result<(Supermodule, Subspace, ProjectiveCover)> {
    let cover = projective_cover(m)?;
    let p = cover.module();
    let k = Subspace::kernel(cover.onto.matrix());
    let actions = p.actions().iter().map(|x| k.restrict(x)).collect();
    let omega = Supermodule::from_parts(p.algebra().clone(), k.graded(&p.space()), actions);
    Ok((omega, k, cover))
}

fn omega_plus(m: &Supermodule) -> Result<Supermodule> {
    Ok(omega1_with_cover(m)?.0)
}

/// `Ω⁻¹(M) = (Ω¹(M*))*`, the cokernel of the injective hull.
fn omega_minus(m: &Supermodule) -> Result<Supermodule> {
    Ok(supermod::dual(&omega_plus(&supermod::dual(m))?))
}

/// Memoized `Ω^n(M)` for a fixed base module.
#[derive(Clone, Debug)]
pub struct SyzygyChain {
    base: Supermodule,
    shifts: BTreeMap<i64, Supermodule>,
}

impl SyzygyChain {
    pub fn new(base: Supermodule) -> Result<Self> {
        let core = strip_projectives(&base)?.core;
        let mut shifts = BTreeMap::new();
        shifts.insert(0, core);
        Ok(SyzygyChain { base, shifts })
    }

    pub fn base(&self) -> &Supermodule {
        &self.base
    }

    pub fn computed(&self) -> impl Iterator<Item = (i64, &Supermodule)> {
        self.shifts.iter().map(|(&n, m)| (n, m))
    }

    pub fn get(&mut self, n: i64) -> Result<&Supermodule> {
        let step = n.signum();
        let mut k = (0..=n.abs()).map(|i| i * step).rev().find(|k| self.shifts.contains_key(k)).unwrap_or(0);
        while k != n {
            let cur = &self.shifts[&k];
            let next = if step > 0 { omega_plus(cur)? } else { omega_minus(cur)? };
            let next = strip_projectives(&next)?.core;
            k += step;
            self.shifts.insert(k, next);
        }
        Ok(&self.shifts[&n])
    }
}

/// `Ω^n(M)` for any integer `n`, projective-free.
pub fn syzygy(m: &Supermodule, n: i64) -> Result<Supermodule> {
    let mut chain = SyzygyChain::new(m.clone())?;
    Ok(chain.get(n)?.clone())
}

/// `M = P/K` with `P` free and `K` given by module generators.
struct Presentation {
    cover: ProjectiveCover,
    relations: Vec<Vec<Rational>>,
}

impl Presentation {
    fn new(m: &Supermodule) -> Result<Self> {
        let (omega, k, cover) = omega1_with_cover(m)?;
        let relations = top_lifts(&omega)?.into_iter().map(|c| k.basis().column(c)).collect();
        Ok(Presentation { cover, relations })
    }

    /// Unknown layout: `y_j` restricted to `N_{p_j}`, concatenated.
    fn unknowns(&self, n: &Supermodule) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, &p) in self.cover.free.generator_parities.iter().enumerate() {
            out.extend(n.space().indices(p).map(|i| (j, i)));
        }
        out
    }

    fn constraints(&self, n: &Supermodule, unknowns: &[(usize, usize)]) -> Matrix {
        let ops = all_monomial_operators(n);
        let labels = &self.cover.free.labels;
        let p_space = self.cover.module().space();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for rel in &self.relations {
            let parity = (0..rel.len())
                .find(|&c| !rel[c].is_zero())
                .map(|c| p_space.parity(c))
                .unwrap_or(Parity::Even);
            // Σ_{(j,S)} c · A_S y_j restricted to the rows of matching parity.
            let mut block = vec![vec![Rational::zero(); unknowns.len()]; n.dim()];
            for (c, coeff) in rel.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let (j, s) = labels[c];
                let op = &ops[s as usize];
                for (u, &(uj, col)) in unknowns.iter().enumerate() {
                    if uj != j {
                        continue;
                    }
                    for (i, row) in block.iter_mut().enumerate() {
                        let a = &op[(i, col)];
                        if !a.is_zero() {
                            row[u] += &(coeff * a);
                        }
                    }
                }
            }
            rows.extend(
                block
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| n.space().parity(*i) == parity)
                    .map(|(_, row)| row),
            );
        }
        Matrix::from_rows(rows, unknowns.len()).expect("row widths agree")
    }
}

fn exterior_pair(m: &Supermodule, n: &Supermodule) -> bool {
    m.algebra() == n.algebra() && m.algebra().is_exterior()
}

fn check_same(m: &Supermodule, n: &Supermodule) -> Result<()> {
    if m.algebra() != n.algebra() {
        return Err(ModuleError::AlgebraMismatch(m.algebra().family(), n.algebra().family()).into());
    }
    Ok(())
}

/// `dim Hom_A(M, N)` for even module maps.
pub fn hom_dim(m: &Supermodule, n: &Supermodule) -> Result<usize> {
    check_same(m, n)?;
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(0);
    }
    if exterior_pair(m, n) {
        let pres = Presentation::new(m)?;
        let unknowns = pres.unknowns(n);
        let c = pres.constraints(n, &unknowns);
        Ok(unknowns.len() - c.rank())
    } else {
        let (c, unknowns) = commutation_system(m, n);
        Ok(unknowns.len() - c.rank())
    }
}

/// Linear system `X_N F - F X_M = 0` on the even blocks of `F`.
fn commutation_system(m: &Supermodule, n: &Supermodule) -> (Matrix, Vec<(usize, usize)>) {
    let (sm, sn) = (m.space(), n.space());
    let mut unknowns = Vec::new();
    let mut index = vec![usize::MAX; n.dim() * m.dim()];
    for k in 0..n.dim() {
        for j in 0..m.dim() {
            if sn.parity(k) == sm.parity(j) {
                index[k * m.dim() + j] = unknowns.len();
                unknowns.push((k, j));
            }
        }
    }
    let mut rows = Vec::new();
    for g in 0..m.actions().len() {
        let (xn, xm) = (n.action(g), m.action(g));
        for i in 0..n.dim() {
            for j in 0..m.dim() {
                let mut row = vec![Rational::zero(); unknowns.len()];
                let mut any = false;
                for k in 0..n.dim() {
                    let u = index[k * m.dim() + j];
                    if u != usize::MAX && !xn[(i, k)].is_zero() {
                        row[u] += &xn[(i, k)];
                        any = true;
                    }
                }
                for l in 0..m.dim() {
                    let u = index[i * m.dim() + l];
                    if u != usize::MAX && !xm[(l, j)].is_zero() {
                        row[u] -= &xm[(l, j)];
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let width = unknowns.len();
    (Matrix::from_rows(rows, width).expect("row widths agree"), unknowns)
}

/// Basis of `Hom_A(M, N)` (even module maps) as `dim N x dim M` matrices.
pub fn hom_space(m: &Supermodule, n: &Supermodule) -> Result<Vec<Matrix>> {
    check_same(m, n)?;
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    if exterior_pair(m, n) {
        let pres = Presentation::new(m)?;
        let unknowns = pres.unknowns(n);
        let sol = pres.constraints(n, &unknowns).kernel();
        // Right inverse of the cover map expresses M's basis through P.
        let section = pres.cover.onto.matrix().solve(&Matrix::identity(m.dim()))?;
        let gens = pres.cover.free.generator_parities.len();
        let mut out = Vec::with_capacity(sol.cols());
        for c in 0..sol.cols() {
            let mut ys = vec![vec![Rational::zero(); n.dim()]; gens];
            for (u, &(j, i)) in unknowns.iter().enumerate() {
                ys[j][i] = sol[(u, c)].clone();
            }
            let g = pres.cover.free.map_from_images(n, &ys);
            out.push(g.mul(&section)?);
        }
        Ok(out)
    } else {
        Ok(hom_space_by_commutation(m, n))
    }
}

/// Direct solution of the commutation equations; used for non-exterior
/// algebras and as an independent check of the presentation route.
pub fn hom_space_by_commutation(m: &Supermodule, n: &Supermodule) -> Vec<Matrix> {
    let (c, unknowns) = commutation_system(m, n);
    let sol = if unknowns.is_empty() { Matrix::zeros(0, 0) } else { c.kernel() };
    (0..sol.cols())
        .map(|col| {
            let mut f = Matrix::zeros(n.dim(), m.dim());
            for (u, &(k, j)) in unknowns.iter().enumerate() {
                f[(k, j)] = sol[(u, col)].clone();
            }
            f
        })
        .collect()
}

/// Dimension of even `Hom_Λ(⊕_j Π^{p_j}Λ, N)`.
fn free_hom_dim(parities: &[Parity], n: &Supermodule) -> usize {
    parities.iter().map(|&p| n.space().dims_of(p)).sum()
}

/// Even maps `M -> N` factoring through a projective module.
///
/// Such maps factor through the injective hull `ι: M -> I(M)`, so this is
/// `dim Hom(I(M), N) - dim Hom(I(M)/M, N)`. The hull is `(cover(M*))*`; the
/// dual of `Π^p Λ` is free on the dual of its top monomial, of parity `p + r`.
pub fn projective_hom_dim(m: &Supermodule, n: &Supermodule) -> Result<usize> {
    check_same(m, n)?;
    let r = m.exterior_rank()?;
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(0);
    }
    let (omega, _, cover) = omega1_with_cover(&supermod::dual(m))?;
    let shift = Parity::from_int(r as i64);
    let hull_parities: Vec<Parity> = cover.free.generator_parities.iter().map(|&p| p + shift).collect();
    let coker = supermod::dual(&omega);
    Ok(free_hom_dim(&hull_parities, n) - hom_dim(&coker, n)?)
}

/// `dim` of the stable Hom space (even maps modulo those factoring through
/// projectives).
pub fn stable_hom_dim(m: &Supermodule, n: &Supermodule) -> Result<usize> {
    Ok(hom_dim(m, n)? - projective_hom_dim(m, n)?)
}

/// Number of free summands of `M ⊗ N*`, i.e. of `Hom_k(N, M)`: the image of
/// `ã` on `Hom_k` is exactly the maps (of either parity) factoring through a
/// projective.
pub fn hom_free_rank(m: &Supermodule, n: &Supermodule) -> Result<usize> {
    Ok(projective_hom_dim(n, m)? + projective_hom_dim(n, &supermod::parity_shift(m))?)
}

/// Even part of `Ext¹(M, N)`: `Hom(Ω¹M, N)` modulo restrictions of maps from
/// the cover, whose image has dimension `dim Hom(P, N) - dim Hom(M, N)`.
fn ext1_even(m: &Supermodule, n: &Supermodule) -> Result<usize> {
    let (omega, _, cover) = omega1_with_cover(m)?;
    let from_cover = free_hom_dim(&cover.free.generator_parities, n);
    Ok(hom_dim(&omega, n)? + hom_dim(m, n)? - from_cover)
}

/// `dim Ext¹(M, N)` counting extensions of both parities, i.e.
/// `Ext¹(M, N) ⊕ Ext¹(M, ΠN)` in the even category.
pub fn ext1_dim(m: &Supermodule, n: &Supermodule) -> Result<usize> {
    check_same(m, n)?;
    m.exterior_rank()?;
    Ok(ext1_even(m, n)? + ext1_even(m, &supermod::parity_shift(n))?)
}

/// Looks for an even isomorphism by trying random combinations of a Hom
/// basis. A `None` is conclusive only when the Hom spaces rule it out; an
/// isomorphism, if present, is found with high probability per attempt.
pub fn find_isomorphism(m: &Supermodule, n: &Supermodule, rng: &mut Mcg, attempts: usize) -> Result<Option<ModuleMap>> {
    check_same(m, n)?;
    if m.space() != n.space() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMap::new(m, n, Matrix::zeros(0, 0))?));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let bound = 4 * m.dim() as i64 + 8;
    for _ in 0..attempts {
        let mut f = Matrix::zeros(n.dim(), m.dim());
        for b in &basis {
            f.add_scaled(&Rational::from(rng.range(-bound, bound)), b);
        }
        if f.is_invertible() {
            return Ok(Some(ModuleMap::new(m, n, f)?));
        }
    }
    Ok(None)
}

/// One simultaneous eigenspace of the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPiece {
    pub weight: Vec<Rational>,
    pub module: Supermodule,
    /// Columns: the piece's basis in the ambient module.
    pub basis: Matrix,
}

/// Splits `M` into torus weight spaces, sorted by weight. Exterior modules
/// form a single piece of empty weight.
pub fn weight_decompose(m: &Supermodule) -> Result<Vec<WeightPiece>> {
    if m.algebra().family() == Family::Gl11 {
        return Err(StructureError::NoWeights(Family::Gl11));
    }
    let mut pieces = vec![WeightPiece {
        weight: Vec::new(),
        module: m.clone(),
        basis: Matrix::identity(m.dim()),
    }];
    for &t in m.algebra().torus_indices() {
        let mut next = Vec::new();
        for piece in pieces {
            let op = piece.module.action(t);
            let Some(eigen) = poly::rational_eigenvalues_if_diagonalizable(op) else {
                return Err(ModuleError::TorusNotDiagonalizable(m.algebra().name(t).to_string()).into());
            };
            for lambda in eigen {
                let shifted = op.sub(&Matrix::identity(op.rows()).scale(&lambda))?;
                let k = Subspace::kernel(&shifted);
                let actions = piece.module.actions().iter().map(|x| k.restrict(x)).collect();
                let module = Supermodule::from_parts(m.algebra().clone(), k.graded(&piece.module.space()), actions);
                let mut weight = piece.weight.clone();
                weight.push(lambda);
                next.push(WeightPiece {
                    weight,
                    module,
                    basis: piece.basis.mul(k.basis())?,
                });
            }
        }
        pieces = next;
    }
    pieces.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(pieces)
}

/// The weight-zero summand as a module over the exterior algebra on the odd
/// generators. Exterior modules are returned unchanged.
pub fn principal_block(m: &Supermodule) -> Result<Supermodule> {
    if m.algebra().is_exterior() {
        return Ok(m.clone());
    }
    let quotient = superalg::principal_quotient(m.algebra())?;
    let zero = weight_decompose(m)?
        .into_iter()
        .find(|p| p.weight.iter().all(Rational::is_zero));
    let Some(piece) = zero else {
        return Ok(Supermodule::zero(&quotient.algebra));
    };
    let actions = quotient.odd_indices.iter().map(|&g| piece.module.action(g).clone()).collect();
    Ok(piece.module.with_algebra(quotient.algebra, actions))
}

fn shift_if_odd(m: Supermodule, parity: Parity) -> Supermodule {
    match parity {
        Parity::Even => m,
        Parity::Odd => supermod::parity_shift(&m),
    }
}

/// Simple `q(1)`-module of weight `λ ≠ 0`: `t = λ`, `e = [[0,1],[λ,0]]`, so
/// `e² = t`.
pub fn simple_q1(lambda: Rational, parity: Parity) -> Result<Supermodule> {
    if lambda.is_zero() {
        return Err(StructureError::ZeroWeight);
    }
    let alg = superalg::detecting_e(1)?;
    let t = Matrix::identity(2).scale(&lambda);
    let mut e = Matrix::zeros(2, 2);
    e[(0, 1)] = Rational::one();
    e[(1, 0)] = lambda;
    let m = Supermodule::new(alg, GradedSpace::new(1, 1), vec![t, e])?;
    Ok(shift_if_odd(m, parity))
}

/// `P(0)` for `q(1)`: basis `{1⊗1, e⊗1}`, `k_ev` on top of `k_od`.
pub fn proj_cover_q1() -> Supermodule {
    let alg = superalg::detecting_e(1).expect("rank 1");
    let mut e = Matrix::zeros(2, 2);
    e[(1, 0)] = Rational::one();
    Supermodule::from_parts(alg, GradedSpace::new(1, 1), vec![Matrix::zeros(2, 2), e])
}

/// `U(sl(1|1)) ⊗_{U(t)} k_λ` with basis `{1, xy | x, y}`.
pub fn induced_sl11(lambda: Rational) -> Supermodule {
    let alg = superalg::detecting_f(1).expect("rank 1");
    let (one, xy, x, y) = (0, 1, 2, 3);
    let t = Matrix::identity(4).scale(&lambda);
    let mut xa = Matrix::zeros(4, 4);
    xa[(x, one)] = Rational::one();
    xa[(xy, y)] = Rational::one();
    let mut ya = Matrix::zeros(4, 4);
    ya[(y, one)] = Rational::one();
    ya[(xy, x)] = -Rational::one();
    ya[(one, x)] = lambda.clone();
    ya[(y, xy)] = lambda;
    Supermodule::from_parts(alg, GradedSpace::new(2, 2), vec![t, xa, ya])
}

/// Simple `sl(1|1)`-module of weight `λ ≠ 0`: `x v₁ = v₂`, `y v₂ = λ v₁`.
pub fn simple_sl11(lambda: Rational, parity: Parity) -> Result<Supermodule> {
    if lambda.is_zero() {
        return Err(StructureError::ZeroWeight);
    }
    let alg = superalg::detecting_f(1)?;
    let t = Matrix::identity(2).scale(&lambda);
    let mut x = Matrix::zeros(2, 2);
    x[(1, 0)] = Rational::one();
    let mut y = Matrix::zeros(2, 2);
    y[(0, 1)] = lambda;
    let m = Supermodule::new(alg, GradedSpace::new(1, 1), vec![t, x, y])?;
    Ok(shift_if_odd(m, parity))
}

/// A simple module of the detecting algebra of the given torus weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectingSimple {
    pub module: Supermodule,
    /// `2^h` for `f`, `2^{⌊(h+1)/2⌋}` for `e`, with `h` the number of
    /// nonzero weight entries.
    pub expected_dim: usize,
    /// False when the outer product could not be split over ℚ; `module` is
    /// then a sum of `module.dim() / expected_dim` simples over an extension.
    pub split: bool,
}

/// Outer product of rank-1 simples (or trivials at zero entries), split down
/// to one summand for the `e` family.
pub fn simple_detecting(alg: &SuperAlgebra, lambda: &[Rational], parity: Parity) -> Result<DetectingSimple> {
    let (rank, is_e) = match alg.family() {
        Family::E(m) => (m, true),
        Family::F(n) => (n, false),
        other => return Err(AlgebraError::FamilyMismatch(other, other).into()),
    };
    if lambda.len() != rank {
        return Err(StructureError::WeightLength { got: lambda.len(), want: rank });
    }
    let base = if is_e { superalg::detecting_e(1)? } else { superalg::detecting_f(1)? };
    let mut acc: Option<Supermodule> = None;
    for l in lambda {
        let factor = if l.is_zero() {
            Supermodule::trivial(&base, Parity::Even)
        } else if is_e {
            simple_q1(l.clone(), Parity::Even)?
        } else {
            simple_sl11(l.clone(), Parity::Even)?
        };
        acc = Some(match acc {
            None => factor,
            Some(prev) => supermod::outer_tensor(&prev, &factor)?,
        });
    }
    let outer = acc.expect("rank is positive");
    let h = lambda.iter().filter(|l| !l.is_zero()).count() as u32;
    let expected_dim = if is_e { 1 << h.div_ceil(2) } else { 1 << h };
    let module = if is_e && h >= 2 { split_rational(&outer)? } else { outer };
    let split = module.dim() == expected_dim;
    Ok(DetectingSimple {
        module: shift_if_odd(module, parity),
        expected_dim,
        split,
    })
}

/// Repeatedly passes to a proper eigenspace of an even endomorphism with a
/// rational eigenvalue. For a semisimple module this ends at a summand whose
/// endomorphisms have no rational eigenvalue splitting it further.
fn split_rational(m: &Supermodule) -> Result<Supermodule> {
    let mut cur = m.clone();
    let mut rng = Mcg::new(0x5eed);
    'outer: loop {
        let basis = hom_space_by_commutation(&cur, &cur);
        let mut candidates = basis.clone();
        for _ in 0..4 {
            let mut f = Matrix::zeros(cur.dim(), cur.dim());
            for b in &basis {
                f.add_scaled(&Rational::from(rng.range(-9, 9)), b);
            }
            candidates.push(f);
        }
        for f in candidates {
            let minpoly = poly::minimal_polynomial(&f);
            let Some(roots) = poly::rational_roots(&minpoly) else { continue };
            for lambda in roots {
                let shifted = f.sub(&Matrix::identity(cur.dim()).scale(&lambda))?;
                let k = Subspace::kernel(&shifted);
                if k.dim() > 0 && k.dim() < cur.dim() {
                    let actions = cur.actions().iter().map(|x| k.restrict(x)).collect();
                    cur = Supermodule::from_parts(cur.algebra().clone(), k.graded(&cur.space()), actions);
                    continue 'outer;
                }
            }
        }
        return Ok(cur);
    }
}
