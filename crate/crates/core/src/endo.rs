//! Endotrivial modules over `Λ(a_1..a_r)`: detection, classification into
//! `T = ℤ × ℤ₂`, and verification suites for the classification theorems.
//!
//! Classes are written `(n, t)` for `Ω^n(k_ev) ⊗ k_od^{⊗t} = Ω^n(k_t)`.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{GradedSpace, Matrix, Parity, Rational, Subspace};
use crate::rng::Mcg;
use crate::structure::{self, FreeModule, StripResult, StructureError};
use crate::superalg::{self, Family, OddVector, SuperAlgebra};
use crate::supermod::{self, ModuleError, Supermodule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EndoError {
    #[error("NOT_ENDOTRIVIAL")]
    NotEndotrivial,
    #[error("NonMonotone: core dim {dim}, Ω⁻¹ gives {minus}, Ω¹ gives {plus}")]
    NonMonotone { dim: usize, minus: usize, plus: usize },
    #[error("suite needs {0}")]
    Precondition(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl From<ModuleError> for EndoError {
    fn from(e: ModuleError) -> Self {
        EndoError::Structure(e.into())
    }
}

impl From<crate::exactla::MatrixError> for EndoError {
    fn from(e: crate::exactla::MatrixError) -> Self {
        EndoError::Structure(e.into())
    }
}

impl From<superalg::AlgebraError> for EndoError {
    fn from(e: superalg::AlgebraError) -> Self {
        EndoError::Structure(e.into())
    }
}

type Result<T> = std::result::Result<T, EndoError>;

/// An element of `T(a_r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TClass {
    pub shift: i64,
    pub parity: Parity,
}

impl TClass {
    pub fn new(shift: i64, parity: Parity) -> Self {
        TClass { shift, parity }
    }
}

impl fmt::Display for TClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.shift, self.parity.label())
    }
}

pub fn tclass_add(x: TClass, y: TClass) -> TClass {
    TClass::new(x.shift + y.shift, x.parity + y.parity)
}

pub fn tclass_neg(x: TClass) -> TClass {
    TClass::new(-x.shift, x.parity)
}

/// Outcome of [`is_endotrivial`].
#[derive(Clone, Debug)]
pub struct EndoCheck {
    pub endotrivial: bool,
    /// Dimension of the projective-free part of `M ⊗ M*`.
    pub tensor_core_dim: usize,
    /// Free summands of `M ⊗ M*`.
    pub tensor_projectives: usize,
    /// The principal-block part of the input, stripped.
    pub strip: StripResult,
    /// Dimension of the input outside the principal block (E/F inputs).
    pub non_principal_dim: usize,
    /// Literal strip of `C ⊗ C*` for the core `C`, computed when small.
    pub witness: Option<StripResult>,
}

/// `dim(C)²` up to which [`is_endotrivial`] also strips `C ⊗ C*` literally.
pub const WITNESS_LIMIT: usize = 1024;

/// Whether `M ⊗ M* ≅ k_ev ⊕ P`.
///
/// E/F inputs are first projected to the principal block. The number of
/// free summands of `C ⊗ C*` is the dimension of the space of maps `C -> C`
/// (of both parities) factoring through projectives, so the core dimension
/// is `dim(C)² - 2^r · that`. When this is 1 the core is even, because free
/// modules have balanced parity and `(dim C_0 - dim C_1)²` is the even minus
/// odd dimension of `C ⊗ C*`.
pub fn is_endotrivial(m: &Supermodule) -> Result<EndoCheck> {
    let principal = structure::principal_block(m)?;
    let non_principal_dim = m.dim() - principal.dim();
    let r = principal.exterior_rank()?;
    let strip = structure::strip_projectives(&principal)?;
    let c = &strip.core;
    let n = c.dim();
    let free = if n == 0 { 0 } else { structure::hom_free_rank(c, c)? };
    let tensor_core_dim = n * n - (free << r);
    let witness = if n * n <= WITNESS_LIMIT && n > 0 {
        let t = supermod::tensor(c, &supermod::dual(c))?;
        let w = structure::strip_projectives(&t)?;
        debug_assert_eq!(w.core.dim(), tensor_core_dim);
        Some(w)
    } else {
        None
    };
    let even_excess = (c.space().dim_even as i64 - c.space().dim_odd as i64).pow(2);
    Ok(EndoCheck {
        endotrivial: tensor_core_dim == 1 && even_excess == 1,
        tensor_core_dim,
        tensor_projectives: free,
        strip,
        non_principal_dim,
        witness,
    })
}

/// `[M] ∈ T(a_r)`.
///
/// Strips to the core `C`; if `C` is not one-dimensional, follows whichever
/// of `Ω⁻¹`, `Ω¹` strictly lowers the dimension until a trivial module is
/// reached. Reaching `k_s` after `n` steps shows `C ≅ Ω^{±n}(k_s)`, which is
/// endotrivial, so the full [`is_endotrivial`] test only runs when the descent
/// stalls, to tell `NotEndotrivial` from `NonMonotone`. Over `Λ(a_1)` every
/// endotrivial core is `k_ev` or `k_od` and the shift collapses to 0.
pub fn classify(m: &Supermodule) -> Result<TClass> {
    let principal = structure::principal_block(m)?;
    principal.exterior_rank()?;
    let core = structure::strip_projectives(&principal)?.core;
    let dim = core.dim();
    match dim {
        0 => return Err(EndoError::NotEndotrivial),
        1 => return Ok(TClass::new(0, core.space().parity(0))),
        _ => {}
    }
    let minus = structure::syzygy(&core, -1)?;
    let stalled = if minus.dim() < dim {
        descend(minus, -1, 1)
    } else {
        let plus = structure::syzygy(&core, 1)?;
        if plus.dim() < dim {
            descend(plus, 1, -1)
        } else {
            Err(EndoError::NonMonotone {
                dim,
                minus: minus.dim(),
                plus: plus.dim(),
            })
        }
    };
    match stalled {
        Err(EndoError::NonMonotone { .. }) if !is_endotrivial(m)?.endotrivial => Err(EndoError::NotEndotrivial),
        other => other,
    }
}

fn descend(mut cur: Supermodule, step: i64, sign: i64) -> Result<TClass> {
    let mut steps = 1;
    while cur.dim() > 1 {
        let next = structure::syzygy(&cur, step)?;
        if next.dim() >= cur.dim() {
            return Err(EndoError::NonMonotone {
                dim: cur.dim(),
                minus: if step < 0 { next.dim() } else { 0 },
                plus: if step > 0 { next.dim() } else { 0 },
            });
        }
        cur = next;
        steps += 1;
    }
    Ok(TClass::new(sign * steps, cur.space().parity(0)))
}

/// `Ω^n(k_s)` over `Λ(a_1..a_r)`.
pub fn omega_k(r: usize, n: i64, s: Parity) -> Result<Supermodule> {
    let k = Supermodule::trivial(&superalg::exterior(r)?, s);
    Ok(structure::syzygy(&k, n)?)
}

// Conditions (1)–(3) on modules over Λ(a_1, a_2).

/// `Rk(M) > Rk(Ω⁻¹(M))`.
pub fn condition1(m: &Supermodule) -> Result<bool> {
    Ok(structure::rk(m)? > structure::rk(&structure::syzygy(m, -1)?)?)
}

/// `M|_⟨v⟩ ≅ Ω^t(k) ⊕ P` with `t ∈ {0, 1}`, i.e. the restriction strips to
/// one dimension.
pub fn condition2(m: &Supermodule, v: &OddVector) -> Result<bool> {
    let res = supermod::restrict(m, std::slice::from_ref(v))?;
    Ok(structure::strip_projectives(&res)?.core.dim() == 1)
}

/// With `a, b` spanning the odd part: a vector generating the trivial summand
/// of `M|_⟨a⟩` is a generator of `M` with `b·v ≠ 0`, and every generator of
/// `M` is moved by `a` or `b`.
pub fn condition3(m: &Supermodule, a: &OddVector, b: &OddVector) -> Result<bool> {
    let xa = m.odd_action(a)?;
    let xb = m.odd_action(b)?;
    let image_a = Subspace::span(&xa);
    let kernel_a = Subspace::kernel(&xa);
    if kernel_a.dim() != image_a.dim() + 1 {
        return Ok(false);
    }
    // v₀ spans ker a modulo im a.
    let v0 = (0..kernel_a.dim())
        .map(|j| kernel_a.basis().column(j))
        .find(|v| !image_a.contains(v))
        .expect("dimension count");
    let rad = structure::radical(m)?;
    if rad.contains(&v0) {
        return Ok(false);
    }
    // b·(v₀ + a·u) ≠ 0 for all u, i.e. b·v₀ ∉ b·a·M.
    let bv0 = xb.apply(&v0);
    let ba = Subspace::span(&xb.mul(&xa)?);
    if ba.contains(&bv0) || bv0.iter().all(Rational::is_zero) {
        return Ok(false);
    }
    // Every generator is moved: Soc(M) ⊆ Rad(M).
    let soc = structure::socle(m)?;
    Ok((0..soc.dim()).all(|j| rad.contains(&soc.basis().column(j))))
}

/// One row of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(description: impl Into<String>, expected: impl fmt::Display, observed: impl fmt::Display) -> Self {
        let expected = expected.to_string();
        let observed = observed.to_string();
        Check {
            description: description.into(),
            pass: expected == observed,
            expected,
            observed,
        }
    }

    fn from_result(description: impl Into<String>, expected: impl fmt::Display, observed: Result<String>) -> Self {
        match observed {
            Ok(o) => Check::new(description, expected, o),
            Err(e) => Check::new(description, expected, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    fn finish(suite: &str, seed: Option<u64>, checks: Vec<Check>, start: Instant) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            seed,
            checks,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        write!(f, "suite {}", self.suite)?;
        if let Some(s) = self.seed {
            write!(f, " (seed {s})")?;
        }
        writeln!(f, ": {passed}/{} passed in {:.1} ms", self.checks.len(), self.wall_time_ms)?;
        let w = self.checks.iter().map(|c| c.description.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let pad = w - c.description.chars().count();
            writeln!(
                f,
                "  {} {}{}  expected {}  observed {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.description,
                " ".repeat(pad),
                c.expected,
                c.observed
            )?;
        }
        Ok(())
    }
}

fn parities() -> [Parity; 2] {
    [Parity::Even, Parity::Odd]
}

/// `Ω^n(k_ev)` over `Λ(a_1)` is literally `k_ev` or `k_od` by parity of `n`.
pub fn verify_rank1(bound: i64) -> VerificationReport {
    let start = Instant::now();
    let checks = (-bound..=bound)
        .into_par_iter()
        .map(|n| {
            let observed = omega_k(1, n, Parity::Even).map(|m| {
                if m.dim() == 1 && m.actions().iter().all(Matrix::is_zero) {
                    format!("k_{}", m.space().parity(0).label())
                } else {
                    format!("module of dims {:?}", (m.space().dim_even, m.space().dim_odd))
                }
            });
            Check::from_result(format!("Ω^{n}(k_ev) over Λ(1)"), format!("k_{}", Parity::from_int(n).label()), observed)
        })
        .collect();
    VerificationReport::finish("rank1", None, checks, start)
}

/// The `T(a_r) ≅ ℤ × ℤ₂` checks over `Λ(a_1..a_r)`.
pub fn verify_rank_r(r: usize, bound: i64) -> Result<VerificationReport> {
    if r < 2 {
        return Err(EndoError::Precondition("rank at least 2".into()));
    }
    let start = Instant::now();
    let modulus = 1usize << r;
    let mut jobs: Vec<Box<dyn Fn() -> Vec<Check> + Send + Sync>> = Vec::new();
    for n in -bound..=bound {
        for s in parities() {
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                match omega_k(r, n, s).and_then(|m| Ok((m.dim(), is_endotrivial(&m)?.endotrivial))) {
                    Ok((dim, endo)) => {
                        out.push(Check::new(format!("Ω^{n}(k_{}) endotrivial", s.label()), true, endo));
                        out.push(Check::new(format!("dim Ω^{n}(k_{})² mod {modulus}", s.label()), 1, dim * dim % modulus));
                        if r == 2 {
                            out.push(Check::new(format!("dim Ω^{n}(k_{})", s.label()), 1 + 2 * n.abs(), dim));
                        }
                    }
                    Err(e) => out.push(Check::new(format!("Ω^{n}(k_{})", s.label()), "ok", format!("error: {e}"))),
                }
                out
            }));
        }
    }
    let half = bound / 2;
    for m in -half..=half {
        for n in -half..=half {
            for s in parities() {
                for t in parities() {
                    jobs.push(Box::new(move || {
                        let desc = format!("classify Ω^{m}(k_{}) ⊗ Ω^{n}(k_{})", s.label(), t.label());
                        let observed = (|| {
                            let x = supermod::tensor(&omega_k(r, m, s)?, &omega_k(r, n, t)?)?;
                            Ok(classify(&x)?.to_string())
                        })();
                        vec![Check::from_result(desc, TClass::new(m + n, s + t), observed)]
                    }));
                }
            }
        }
    }
    let checks = jobs.par_iter().flat_map(|job| job()).collect();
    Ok(VerificationReport::finish(&format!("rank_r(r={r})"), None, checks, start))
}

/// A random odd vector `Σ c_i a_i` with integer `c_i ∈ [-9, 9]`, some
/// `c_i ≠ 0` for `i < r - 1`.
fn random_transverse(r: usize, rng: &mut Mcg) -> OddVector {
    loop {
        let c: Vec<Rational> = (0..r).map(|_| Rational::from(rng.range(-9, 9))).collect();
        if c[..r - 1].iter().any(|x| !x.is_zero()) {
            return OddVector::new(c);
        }
    }
}

/// Restricting an endotrivial module to `⟨v, a_r⟩` gives the same class for
/// every sampled `v`.
pub fn restriction_constancy(m: &Supermodule, samples: usize, seed: u64) -> Result<VerificationReport> {
    let r = m.exterior_rank()?;
    if r < 3 {
        return Err(EndoError::Precondition("rank at least 3".into()));
    }
    if !is_endotrivial(m)?.endotrivial {
        return Err(EndoError::NotEndotrivial);
    }
    let start = Instant::now();
    let mut rng = Mcg::new(seed);
    let vs: Vec<OddVector> = (0..samples).map(|_| random_transverse(r, &mut rng)).collect();
    let last = OddVector::basis(r, r - 1);
    let classes: Vec<Result<TClass>> = vs
        .par_iter()
        .map(|v| classify(&supermod::restrict(m, &[v.clone(), last.clone()])?))
        .collect();
    let reference = match &classes[0] {
        Ok(c) => c.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let checks = vs
        .iter()
        .zip(classes)
        .map(|(v, c)| {
            let coeffs: Vec<String> = v.coefficients.iter().map(Rational::to_string).collect();
            Check::from_result(format!("class of M|⟨v, a{r}⟩, v = ({})", coeffs.join(",")), &reference, c.map(|c| c.to_string()))
        })
        .collect();
    Ok(VerificationReport::finish("restriction_constancy", Some(seed), checks, start))
}

/// Sampled rank of `v` acting on `M` against the deterministic projectivity
/// test: a free module has `rank(v) = dim M / 2` at every `v ≠ 0`.
///
/// Coefficients are drawn from `[-trials·dim, trials·dim]`. A module that is
/// not projective can still look free at random points when its rank variety
/// is a proper subvariety; such a disagreement shows up as a failed row.
pub fn rank_variety_sample(m: &Supermodule, trials: usize, seed: u64) -> Result<VerificationReport> {
    let r = m.exterior_rank()?;
    let start = Instant::now();
    let projective = structure::is_projective(m)?;
    let mut rng = Mcg::new(seed);
    let bound = (trials * m.dim().max(1)) as i64;
    let mut checks = Vec::new();
    let mut free_everywhere = true;
    for _ in 0..trials {
        let v = loop {
            let c: Vec<Rational> = (0..r).map(|_| Rational::from(rng.range(-bound, bound))).collect();
            if c.iter().any(|x| !x.is_zero()) {
                break OddVector::new(c);
            }
        };
        let rank = m.odd_action(&v)?.rank();
        let free_here = 2 * rank == m.dim();
        free_everywhere &= free_here;
        if projective {
            let coeffs: Vec<String> = v.coefficients.iter().map(Rational::to_string).collect();
            checks.push(Check::new(format!("rank of v = ({})", coeffs.join(",")), m.dim() / 2, rank));
        }
    }
    checks.push(Check::new("free at every sampled v", projective, free_everywhere));
    Ok(VerificationReport::finish("rank_variety", Some(seed), checks, start))
}

/// Simple modules of nonzero weight have even dimension, with the exact
/// dimension `2^h` (f) or `2^{⌊(h+1)/2⌋}` (e) whenever the construction
/// splits over ℚ.
pub fn verify_even_dim_nonprincipal(family: Family, samples: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let alg = match family {
        Family::E(m) => superalg::detecting_e(m)?,
        Family::F(n) => superalg::detecting_f(n)?,
        other => return Err(EndoError::Precondition(format!("E or F family, got {other}"))),
    };
    let rank = family.param();
    let mut rng = Mcg::new(seed);
    let weights: Vec<Vec<Rational>> = (0..samples)
        .map(|_| loop {
            let w: Vec<Rational> = (0..rank).map(|_| Rational::from(rng.range(-4, 4))).collect();
            if w.iter().any(|x| !x.is_zero()) {
                break w;
            }
        })
        .collect();
    let checks = weights
        .par_iter()
        .flat_map(|w| weight_checks(&alg, w))
        .collect();
    Ok(VerificationReport::finish(&format!("even_dim({family})"), Some(seed), checks, start))
}

/// Checks for one weight; shared with the acceptance tests.
pub fn weight_checks(alg: &SuperAlgebra, w: &[Rational]) -> Vec<Check> {
    let label: Vec<String> = w.iter().map(Rational::to_string).collect();
    let label = format!("λ = ({})", label.join(","));
    match structure::simple_detecting(alg, w, Parity::Even) {
        Ok(s) => {
            let dim = s.module.dim();
            let mut out = vec![Check::new(format!("{label}: dim even"), true, dim % 2 == 0)];
            if s.split {
                out.push(Check::new(format!("{label}: dim"), s.expected_dim, dim));
            } else {
                out.push(Check::new(
                    format!("{label}: not split over ℚ, dim multiple of {}", s.expected_dim),
                    0,
                    dim % s.expected_dim,
                ));
            }
            out
        }
        Err(e) => vec![Check::new(label, "module", format!("error: {e}"))],
    }
}

/// `dim Ext¹(M, Ω¹M) = 1` for endotrivial `M`.
pub fn verify_ext1(m: &Supermodule) -> Result<VerificationReport> {
    let start = Instant::now();
    if !is_endotrivial(m)?.endotrivial {
        return Err(EndoError::NotEndotrivial);
    }
    let omega = structure::syzygy(m, 1)?;
    let d = structure::ext1_dim(m, &omega)?;
    let checks = vec![Check::new("dim Ext¹(M, Ω¹M)", 1, d)];
    Ok(VerificationReport::finish("ext1", None, checks, start))
}

/// Random module of dimension `1..=max_dim` over `Λ(a_1..a_r)`: a quotient
/// of a free module of rank 1 or 2 by random homogeneous relations, possibly
/// plus a free or trivial summand, in a randomly changed homogeneous basis.
pub fn random_module(r: usize, max_dim: usize, rng: &mut Mcg) -> Result<Supermodule> {
    loop {
        let gens = 1 + rng.below(2) as usize;
        let ps: Vec<Parity> = (0..gens).map(|_| Parity::from_bit(rng.coin() as u8)).collect();
        let free = FreeModule::new(r, &ps)?;
        let p = &free.module;
        let relations = rng.below(4) as usize;
        let mut vecs: Vec<Vec<Rational>> = Vec::new();
        for _ in 0..relations {
            let parity = Parity::from_bit(rng.coin() as u8);
            let mut v = vec![Rational::zero(); p.dim()];
            for i in p.space().indices(parity) {
                if rng.below(3) == 0 {
                    v[i] = Rational::from(rng.range(-3, 3));
                }
            }
            vecs.extend(submodule_generated(p, &v));
        }
        let mut m = if vecs.is_empty() {
            p.clone()
        } else {
            quotient_module(p, &Subspace::span(&Matrix::from_columns(p.dim(), &vecs)))
        };
        if m.dim() == 0 {
            continue;
        }
        match rng.below(4) {
            0 => m = supermod::direct_sum(&m, &Supermodule::trivial(m.algebra(), Parity::from_bit(rng.coin() as u8)))?,
            1 => m = supermod::direct_sum(&m, &supermod::exterior_regular(r)?)?,
            _ => {}
        }
        if m.dim() > max_dim {
            continue;
        }
        return Ok(m.conjugate(&random_even_invertible(m.space(), rng))?);
    }
}

fn submodule_generated(p: &Supermodule, v: &[Rational]) -> Vec<Vec<Rational>> {
    let r = p.actions().len();
    let mut out = vec![v.to_vec()];
    for mask in 1u32..1 << r {
        out.push(structure::monomial_operator(p, mask).apply(v));
    }
    out
}

fn quotient_module(p: &Supermodule, sub: &Subspace) -> Supermodule {
    let keep = sub.complement_coords();
    let even = keep.iter().filter(|&&c| c < p.space().dim_even).count();
    let actions = p.actions().iter().map(|x| sub.quotient(x)).collect();
    Supermodule::new(p.algebra().clone(), GradedSpace::new(even, keep.len() - even), actions)
        .expect("quotient by a submodule")
}

fn random_even_invertible(space: GradedSpace, rng: &mut Mcg) -> Matrix {
    loop {
        let t = Matrix::from_fn(space.dim(), space.dim(), |i, j| {
            if space.parity(i) != space.parity(j) {
                Rational::zero()
            } else {
                Rational::from(rng.range(-2, 2))
            }
        });
        if t.is_invertible() {
            return t;
        }
    }
}

/// Stable isomorphism witness: strips both sides and searches for an even
/// isomorphism between the cores.
pub fn stably_isomorphic(m: &Supermodule, n: &Supermodule, rng: &mut Mcg) -> Result<bool> {
    let a = structure::strip_projectives(m)?.core;
    let b = structure::strip_projectives(n)?.core;
    Ok(structure::find_isomorphism(&a, &b, rng, 8)?.is_some())
}

/// The syzygy calculus on random modules: `Ω⁻¹Ω¹ = Ω¹Ω⁻¹ = Ω⁰`, duality,
/// tensoring with a free module, `Ω^m(M) ⊗ Ω^n(N) ≅ Ω^{m+n}(M ⊗ N) ⊕ P`,
/// additivity, and compatibility with restriction. Every identity is
/// witnessed by an explicit isomorphism of stripped modules.
pub fn syzygy_calculus(samples: usize, max_dim: usize, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let mut rng = Mcg::new(seed);
    let streams: Vec<(usize, Mcg)> = (0..samples).map(|i| (i, rng.fork(i as u64))).collect();
    let checks = streams
        .into_par_iter()
        .flat_map(|(i, mut rng)| {
            let r = 2 + i % 2;
            match syzygy_calculus_sample(r, max_dim, &mut rng) {
                Ok(c) => c,
                Err(e) => vec![Check::new(format!("sample {i}"), "ok", format!("error: {e}"))],
            }
        })
        .collect();
    VerificationReport::finish("syzygy_calculus", Some(seed), checks, start)
}

fn syzygy_calculus_sample(r: usize, max_dim: usize, rng: &mut Mcg) -> Result<Vec<Check>> {
    let m = random_module(r, max_dim, rng)?;
    let n = random_module(r, 4.min(max_dim), rng)?;
    let tag = format!("Λ({r}) M dims ({},{})", m.space().dim_even, m.space().dim_odd);
    let mut out = Vec::new();
    let core = structure::strip_projectives(&m)?.core;
    let s = |x: &Supermodule, k: i64| structure::syzygy(x, k);

    let a1 = s(&s(&m, 1)?, -1)?;
    let a2 = s(&s(&m, -1)?, 1)?;
    out.push(Check::new(format!("{tag}: Ω⁻¹Ω¹M ≅ Ω⁰M"), true, stably_isomorphic(&a1, &core, rng)?));
    out.push(Check::new(format!("{tag}: Ω¹Ω⁻¹M ≅ Ω⁰M"), true, stably_isomorphic(&a2, &core, rng)?));

    let dual_m = supermod::dual(&m);
    for k in [-2i64, -1, 1, 2] {
        let lhs = supermod::dual(&s(&m, k)?);
        let rhs = s(&dual_m, -k)?;
        out.push(Check::new(format!("{tag}: (Ω^{k}M)* ≅ Ω^{}(M*)", -k), true, stably_isomorphic(&lhs, &rhs, rng)?));
    }

    let free = supermod::tensor(&supermod::exterior_regular(r)?, &m)?;
    out.push(Check::new(format!("{tag}: Λ ⊗ M projective"), true, structure::is_projective(&free)?));

    let mn = supermod::tensor(&m, &n)?;
    for (i, j) in [(1i64, 0i64), (0, -1), (1, -1), (-1, 1)] {
        let lhs = supermod::tensor(&s(&m, i)?, &s(&n, j)?)?;
        let rhs = s(&mn, i + j)?;
        out.push(Check::new(format!("{tag}: Ω^{i}M ⊗ Ω^{j}N ≅ Ω^{}(M⊗N) ⊕ P", i + j), true, stably_isomorphic(&lhs, &rhs, rng)?));
    }

    let sum = supermod::direct_sum(&m, &n)?;
    for k in [-1i64, 1, 2] {
        let lhs = s(&sum, k)?;
        let rhs = supermod::direct_sum(&s(&m, k)?, &s(&n, k)?)?;
        out.push(Check::new(format!("{tag}: Ω^{k}(M⊕N) ≅ Ω^{k}M ⊕ Ω^{k}N"), true, stably_isomorphic(&lhs, &rhs, rng)?));
    }

    let vs: Vec<OddVector> = (0..r - 1).map(|_| OddVector::new((0..r).map(|_| Rational::from(rng.range(-5, 5))).collect())).collect();
    if supermod::restrict(&m, &vs).is_ok() {
        for k in [-1i64, 1] {
            let lhs = supermod::restrict(&s(&m, k)?, &vs)?;
            let rhs = s(&supermod::restrict(&m, &vs)?, k)?;
            out.push(Check::new(format!("{tag}: Ω^{k}(M)|_B ≅ Ω^{k}_B(M|_B) ⊕ P"), true, stably_isomorphic(&lhs, &rhs, rng)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supermod::{dual, exterior_regular, parity_shift, tensor};

    fn k(r: usize, p: Parity) -> Supermodule {
        Supermodule::trivial(&superalg::exterior(r).unwrap(), p)
    }

    #[test]
    fn tclass_arithmetic() {
        let ev = Parity::Even;
        let od = Parity::Odd;
        assert_eq!(tclass_add(TClass::new(1, ev), TClass::new(-1, ev)), TClass::new(0, ev));
        assert_eq!(tclass_add(TClass::new(2, od), TClass::new(1, od)), TClass::new(3, ev));
        assert_eq!(tclass_neg(TClass::new(2, od)), TClass::new(-2, od));
        assert_eq!(TClass::new(-1, od).to_string(), "(-1, od)");
    }

    #[test]
    fn endotrivial_examples() {
        assert!(is_endotrivial(&k(2, Parity::Odd)).unwrap().endotrivial);
        let o3 = omega_k(2, 3, Parity::Even).unwrap();
        assert_eq!(o3.dim(), 7);
        let check = is_endotrivial(&o3).unwrap();
        assert!(check.endotrivial);
        let w = check.witness.unwrap();
        assert_eq!(w.core.dim(), 1);
        assert_eq!(w.core.space(), GradedSpace::new(1, 0));
        // simple q(1)-module: nothing in the principal block.
        let s = structure::simple_q1(Rational::one(), Parity::Even).unwrap();
        let c = is_endotrivial(&s).unwrap();
        assert!(!c.endotrivial);
        assert_eq!(c.non_principal_dim, 2);
        assert!(!is_endotrivial(&exterior_regular(2).unwrap()).unwrap().endotrivial);
        let two = supermod::direct_sum(&k(2, Parity::Even), &k(2, Parity::Even)).unwrap();
        assert!(!is_endotrivial(&two).unwrap().endotrivial);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&k(2, Parity::Odd)).unwrap(), TClass::new(0, Parity::Odd));
        assert_eq!(classify(&omega_k(3, 2, Parity::Even).unwrap()).unwrap(), TClass::new(2, Parity::Even));
        let m = tensor(&omega_k(2, 2, Parity::Even).unwrap(), &omega_k(2, 1, Parity::Odd).unwrap()).unwrap();
        assert_eq!(classify(&m).unwrap(), TClass::new(3, Parity::Odd));
        assert_eq!(classify(&omega_k(2, -4, Parity::Odd).unwrap()).unwrap(), TClass::new(-4, Parity::Odd));
        assert_eq!(classify(&exterior_regular(2).unwrap()), Err(EndoError::NotEndotrivial));
        // Rank 1 collapses the shift.
        assert_eq!(classify(&omega_k(1, 3, Parity::Even).unwrap()).unwrap(), TClass::new(0, Parity::Odd));
    }

    #[test]
    fn homomorphism_properties() {
        for r in 2..=3 {
            for n in -2..=2 {
                for s in parities() {
                    let m = omega_k(r, n, s).unwrap();
                    let c = classify(&m).unwrap();
                    assert_eq!(c, TClass::new(n, s));
                    assert_eq!(classify(&parity_shift(&m)).unwrap(), tclass_add(c, TClass::new(0, Parity::Odd)));
                    assert_eq!(classify(&dual(&m)).unwrap(), tclass_neg(c));
                }
            }
        }
    }

    #[test]
    fn conditions_on_rank2_syzygies() {
        let a = OddVector::basis(2, 0);
        let b = OddVector::basis(2, 1);
        let mut rng = Mcg::new(11);
        for n in 1..=4 {
            for s in parities() {
                let m = omega_k(2, n, s).unwrap();
                let minus = structure::syzygy(&m, -1).unwrap();
                // Condition (1) as rank descent, and (1) ⟺ (3) given (2).
                assert!(condition1(&m).unwrap(), "n = {n}");
                assert!(structure::rk(&minus).unwrap() < structure::rk(&m).unwrap());
                assert!(condition3(&m, &a, &b).unwrap());
                for _ in 0..10 {
                    let v = OddVector::new(vec![Rational::from(rng.range(-5, 5)), Rational::from(rng.range(1, 5))]);
                    assert!(condition2(&m, &v).unwrap());
                }
            }
        }
        // Negative syzygies fail (1) and hence (3).
        let m = omega_k(2, -2, Parity::Even).unwrap();
        assert!(!condition1(&m).unwrap());
        assert!(!condition3(&m, &a, &b).unwrap());
    }

    #[test]
    fn suites_small() {
        assert!(verify_rank1(4).passed());
        let rep = verify_rank_r(2, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        let m = omega_k(3, 1, Parity::Odd).unwrap();
        let rep = restriction_constancy(&m, 4, 1).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(restriction_constancy(&k(2, Parity::Odd), 3, 1).is_err());
        let rep = rank_variety_sample(&exterior_regular(3).unwrap(), 5, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        let rep = rank_variety_sample(&omega_k(2, 1, Parity::Even).unwrap(), 5, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        let rep = rank_variety_sample(&k(3, Parity::Even), 5, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(verify_ext1(&k(2, Parity::Even)).unwrap().passed());
        assert!(verify_ext1(&omega_k(2, 1, Parity::Odd).unwrap()).unwrap().passed());
        assert_eq!(verify_ext1(&exterior_regular(2).unwrap()).unwrap_err(), EndoError::NotEndotrivial);
        let rep = verify_even_dim_nonprincipal(Family::F(2), 5, 3).unwrap();
        assert!(rep.passed(), "{rep}");
        let rep = verify_even_dim_nonprincipal(Family::E(2), 5, 3).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn stable_isomorphism_witness_discriminates() {
        let mut rng = Mcg::new(3);
        let k_ev = k(2, Parity::Even);
        let padded = supermod::direct_sum(&k(2, Parity::Odd), &exterior_regular(2).unwrap()).unwrap();
        assert!(stably_isomorphic(&padded, &k(2, Parity::Odd), &mut rng).unwrap());
        assert!(!stably_isomorphic(&padded, &k_ev, &mut rng).unwrap());
        let o1 = omega_k(2, 1, Parity::Even).unwrap();
        assert!(!stably_isomorphic(&o1, &dual(&o1), &mut rng).unwrap());
        assert!(!stably_isomorphic(&o1, &parity_shift(&o1), &mut rng).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let m = tensor(&omega_k(3, 1, Parity::Even).unwrap(), &omega_k(3, 1, Parity::Even).unwrap()).unwrap();
        let rep = restriction_constancy(&m, 5, 4).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checks[0].observed, "(2, ev)");
        let rep = restriction_constancy(&k(4, Parity::Odd), 10, 4).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checks[0].observed, "(0, od)");
    }

    #[test]
    fn random_modules_are_valid_and_bounded() {
        let mut rng = Mcg::new(5);
        for r in 2..=3 {
            for _ in 0..10 {
                let m = random_module(r, 12, &mut rng).unwrap();
                assert!(m.dim() >= 1 && m.dim() <= 12);
                m.validate().unwrap();
            }
        }
    }

    #[test]
    fn syzygy_calculus_few_samples() {
        let rep = syzygy_calculus(4, 12, 9);
        assert!(rep.passed(), "{rep}");
    }
}
