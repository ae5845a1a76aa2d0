//! Finite presentations of the detecting Lie superalgebras `e_m = q(1)^m`,
//! `f_n = sl(1|1)^n`, their exterior quotients `Λ(a_1, …, a_r)`, and
//! `gl(1|1)`.
//!
//! An algebra is a list of homogeneous generators plus a structure-constant
//! table for the super bracket. Nothing about `U(g)` is materialized; module
//! validation checks the bracket relations directly on action matrices.

use std::fmt;

use thiserror::Error;

use crate::exactla::{koszul_sign, Matrix, Parity, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `q(1) × ⋯ × q(1)`, `m` factors.
    E(usize),
    /// `sl(1|1) × ⋯ × sl(1|1)`, `n` factors.
    F(usize),
    /// The exterior algebra on `r` odd generators with zero bracket.
    Exterior(usize),
    Gl11,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::E(_) => "E",
            Family::F(_) => "F",
            Family::Exterior(_) => "Exterior",
            Family::Gl11 => "GL11",
        }
    }

    /// The integer parameter of the family (1 for `gl(1|1)`).
    pub fn param(&self) -> usize {
        match *self {
            Family::E(m) => m,
            Family::F(n) => n,
            Family::Exterior(r) => r,
            Family::Gl11 => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gl11 => write!(f, "GL11"),
            other => write!(f, "{}({})", other.tag(), other.param()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("bracket table is not super-anticommutative at ({0}, {1})")]
    NotAnticommutative(String, String),
    #[error("super Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("bracket of {0} and {1} does not have parity |{0}| + |{1}|")]
    BracketParity(String, String),
    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(Family, Family),
    #[error("{0} has no principal quotient")]
    NoPrincipalQuotient(Family),
    #[error("coefficient vector has length {got}, expected {want}")]
    OddVectorLength { got: usize, want: usize },
}

/// A finite presentation of a Lie superalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperAlgebra {
    family: Family,
    generators: Vec<Generator>,
    /// `bracket[g][h]` is `[g, h]` as coefficients over `generators`.
    bracket: Vec<Vec<Vec<Rational>>>,
    torus: Vec<usize>,
}

/// `c_1 a_1 + ⋯ + c_r a_r`, coefficients over the odd generators in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OddVector {
    pub coefficients: Vec<Rational>,
}

impl OddVector {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        OddVector { coefficients }
    }

    pub fn basis(r: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); r];
        c[i] = Rational::one();
        OddVector { coefficients: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Rational::is_zero)
    }
}

/// Which factor of a product a generator came from, and its index there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Left(usize),
    Right(usize),
}

/// Result of [`principal_quotient`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalQuotient {
    pub algebra: SuperAlgebra,
    /// Generator indices in the source algebra, in order `a_1, …, a_r`.
    pub odd_indices: Vec<usize>,
    /// `(source name, exterior name)` pairs.
    pub names: Vec<(String, String)>,
}

fn gen(name: String, parity: Parity) -> Generator {
    Generator { name, parity }
}

impl SuperAlgebra {
    fn with_zero_bracket(family: Family, generators: Vec<Generator>, torus: Vec<usize>) -> Self {
        let n = generators.len();
        SuperAlgebra {
            family,
            bracket: vec![vec![vec![Rational::zero(); n]; n]; n],
            generators,
            torus,
        }
    }

    fn set_symmetric(&mut self, g: usize, h: usize, value: Vec<Rational>) {
        let sign = -koszul_sign(self.generators[g].parity, self.generators[h].parity);
        self.bracket[h][g] = value.iter().map(|x| x * &sign).collect();
        self.bracket[g][h] = value;
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn parity(&self, g: usize) -> Parity {
        self.generators[g].parity
    }

    pub fn name(&self, g: usize) -> &str {
        &self.generators[g].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn torus_indices(&self) -> &[usize] {
        &self.torus
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.parity(g).is_odd()).collect()
    }

    /// Number of odd generators.
    pub fn rank(&self) -> usize {
        self.odd_indices().len()
    }

    pub fn is_exterior(&self) -> bool {
        matches!(self.family, Family::Exterior(_))
    }

    /// `[g, h]` as coefficients over the generators.
    pub fn bracket(&self, g: usize, h: usize) -> &[Rational] {
        &self.bracket[g][h]
    }

    /// Bracket of two (homogeneous or not) linear combinations.
    pub fn bracket_of(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.len();
        let mut out = vec![Rational::zero(); n];
        for (g, ug) in u.iter().enumerate() {
            if ug.is_zero() {
                continue;
            }
            for (h, vh) in v.iter().enumerate() {
                if vh.is_zero() {
                    continue;
                }
                let c = ug * vh;
                for (k, b) in self.bracket[g][h].iter().enumerate() {
                    if !b.is_zero() {
                        out[k] += &c * b;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, g: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        v[g] = Rational::one();
        v
    }

    /// Checks super-anticommutativity, bracket parity and the super Jacobi
    /// identity on every generator triple.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.len();
        for g in 0..n {
            for h in 0..n {
                let s = -koszul_sign(self.parity(g), self.parity(h));
                let flipped: Vec<Rational> = self.bracket[h][g].iter().map(|x| x * &s).collect();
                if flipped != self.bracket[g][h] {
                    return Err(AlgebraError::NotAnticommutative(
                        self.name(g).into(),
                        self.name(h).into(),
                    ));
                }
                let want = self.parity(g) + self.parity(h);
                if self.bracket[g][h]
                    .iter()
                    .enumerate()
                    .any(|(k, c)| !c.is_zero() && self.parity(k) != want)
                {
                    return Err(AlgebraError::BracketParity(
                        self.name(g).into(),
                        self.name(h).into(),
                    ));
                }
            }
        }
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ux, uy, uz) = (self.unit(x), self.unit(y), self.unit(z));
                    let lhs = self.bracket_of(&ux, &self.bracket_of(&uy, &uz));
                    let a = self.bracket_of(&self.bracket_of(&ux, &uy), &uz);
                    let b = self.bracket_of(&uy, &self.bracket_of(&ux, &uz));
                    let s = koszul_sign(self.parity(x), self.parity(y));
                    let rhs: Vec<Rational> = a.iter().zip(&b).map(|(p, q)| p + &(q * &s)).collect();
                    if lhs != rhs {
                        return Err(AlgebraError::Jacobi(
                            self.name(x).into(),
                            self.name(y).into(),
                            self.name(z).into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Product of two algebras of the same family, with the generator
    /// correspondence. The result is again a canonical presentation
    /// (`E(m1+m2)`, `F(n1+n2)` or `Exterior(r1+r2)`).
    pub fn product(&self, other: &SuperAlgebra) -> Result<(SuperAlgebra, Vec<Factor>), AlgebraError> {
        let (alg, factors) = match (self.family, other.family) {
            (Family::E(m1), Family::E(m2)) => {
                let alg = detecting_e(m1 + m2)?;
                // t_1..t_m, e_1..e_m
                let m = m1 + m2;
                let f = (0..2 * m)
                    .map(|g| {
                        let (block, i) = (g / m, g % m);
                        if i < m1 {
                            Factor::Left(block * m1 + i)
                        } else {
                            Factor::Right(block * m2 + i - m1)
                        }
                    })
                    .collect();
                (alg, f)
            }
            (Family::F(n1), Family::F(n2)) => {
                let alg = detecting_f(n1 + n2)?;
                // t_1..t_n, then x_1, y_1, …, x_n, y_n
                let n = n1 + n2;
                let mut f = Vec::with_capacity(3 * n);
                for i in 0..n {
                    f.push(if i < n1 { Factor::Left(i) } else { Factor::Right(i - n1) });
                }
                for i in 0..n {
                    for k in 0..2 {
                        f.push(if i < n1 {
                            Factor::Left(n1 + 2 * i + k)
                        } else {
                            Factor::Right(n2 + 2 * (i - n1) + k)
                        });
                    }
                }
                (alg, f)
            }
            (Family::Exterior(r1), Family::Exterior(r2)) => {
                let alg = exterior(r1 + r2)?;
                let f = (0..r1 + r2)
                    .map(|i| if i < r1 { Factor::Left(i) } else { Factor::Right(i - r1) })
                    .collect();
                (alg, f)
            }
            (a, b) => return Err(AlgebraError::FamilyMismatch(a, b)),
        };
        Ok((alg, factors))
    }
}

/// `e_m = q(1)^m`: generators `t1..tm` (even), `e1..em` (odd),
/// `[e_i, e_i] = 2 t_i`, all other brackets zero.
pub fn detecting_e(m: usize) -> Result<SuperAlgebra, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::ZeroRank);
    }
    let mut gens: Vec<Generator> = (1..=m).map(|i| gen(format!("t{i}"), Parity::Even)).collect();
    gens.extend((1..=m).map(|i| gen(format!("e{i}"), Parity::Odd)));
    let mut alg = SuperAlgebra::with_zero_bracket(Family::E(m), gens, (0..m).collect());
    for i in 0..m {
        let mut v = vec![Rational::zero(); 2 * m];
        v[i] = Rational::from(2);
        alg.set_symmetric(m + i, m + i, v);
    }
    Ok(alg)
}

/// `f_n = sl(1|1)^n`: generators `t1..tn` (even), then `x1, y1, …, xn, yn`
/// (odd), `[x_i, y_i] = t_i`, all other brackets zero.
pub fn detecting_f(n: usize) -> Result<SuperAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::ZeroRank);
    }
    let mut gens: Vec<Generator> = (1..=n).map(|i| gen(format!("t{i}"), Parity::Even)).collect();
    for i in 1..=n {
        gens.push(gen(format!("x{i}"), Parity::Odd));
        gens.push(gen(format!("y{i}"), Parity::Odd));
    }
    let mut alg = SuperAlgebra::with_zero_bracket(Family::F(n), gens, (0..n).collect());
    for i in 0..n {
        let mut v = vec![Rational::zero(); 3 * n];
        v[i] = Rational::one();
        alg.set_symmetric(n + 2 * i, n + 2 * i + 1, v);
    }
    Ok(alg)
}

/// `Λ(a_1, …, a_r)` viewed as an abelian Lie superalgebra concentrated in
/// odd degree.
pub fn exterior(r: usize) -> Result<SuperAlgebra, AlgebraError> {
    if r == 0 {
        return Err(AlgebraError::ZeroRank);
    }
    let gens = (1..=r).map(|i| gen(format!("a{i}"), Parity::Odd)).collect();
    Ok(SuperAlgebra::with_zero_bracket(Family::Exterior(r), gens, Vec::new()))
}

/// `gl(1|1)` with basis `t1 = E11`, `t2 = E22`, `x = E12`, `y = E21`.
pub fn gl11() -> SuperAlgebra {
    let gens = vec![
        gen("t1".into(), Parity::Even),
        gen("t2".into(), Parity::Even),
        gen("x".into(), Parity::Odd),
        gen("y".into(), Parity::Odd),
    ];
    let mut alg = SuperAlgebra::with_zero_bracket(Family::Gl11, gens, vec![0, 1]);
    let v = |c: [i64; 4]| c.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
    alg.set_symmetric(2, 3, v([1, 1, 0, 0]));
    alg.set_symmetric(0, 2, v([0, 0, 1, 0]));
    alg.set_symmetric(1, 2, v([0, 0, -1, 0]));
    alg.set_symmetric(0, 3, v([0, 0, 0, -1]));
    alg.set_symmetric(1, 3, v([0, 0, 0, 1]));
    alg
}

/// Whether the algebra has only finitely many one-dimensional modules,
/// decided by `g_0 ⊆ [g, g]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    Infinite,
}

pub fn one_dim_finiteness(alg: &SuperAlgebra) -> Finiteness {
    let n = alg.len();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for g in 0..n {
        for h in 0..n {
            let b = alg.bracket(g, h);
            if b.iter().any(|x| !x.is_zero()) {
                cols.push(b.to_vec());
            }
        }
    }
    let span = Matrix::from_columns(n, &cols);
    let base_rank = span.rank();
    let contains = |g: usize| {
        let mut with = cols.clone();
        with.push(alg.unit(g));
        Matrix::from_columns(n, &with).rank() == base_rank
    };
    if (0..n).filter(|&g| !alg.parity(g).is_odd()).all(contains) {
        Finiteness::Finite
    } else {
        Finiteness::Infinite
    }
}

/// The exterior algebra on the odd part of a detecting algebra, which acts on
/// the principal block.
pub fn principal_quotient(alg: &SuperAlgebra) -> Result<PrincipalQuotient, AlgebraError> {
    match alg.family {
        Family::E(_) | Family::F(_) => {}
        other => return Err(AlgebraError::NoPrincipalQuotient(other)),
    }
    let odd = alg.odd_indices();
    let quotient = exterior(odd.len())?;
    let names = odd
        .iter()
        .enumerate()
        .map(|(i, &g)| (alg.name(g).to_string(), quotient.name(i).to_string()))
        .collect();
    Ok(PrincipalQuotient {
        algebra: quotient,
        odd_indices: odd,
        names,
    })
}
