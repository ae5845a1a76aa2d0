//! Minimal polynomials and rational roots, enough to decide whether an
//! operator is diagonalizable over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Matrix, Rational};

/// Monic minimal polynomial of a square matrix, coefficients from the
/// constant term upward.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Rational> {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return vec![Rational::one()];
    }
    // Powers I, M, M², … flattened as columns until the first dependency.
    let mut powers: Vec<Vec<Rational>> = vec![Matrix::identity(n).entries().to_vec()];
    let mut current = Matrix::identity(n);
    loop {
        current = current.mul(m).expect("square");
        let target = current.entries().to_vec();
        let basis = Matrix::from_columns(n * n, &powers);
        let rhs = Matrix::from_columns(n * n, std::slice::from_ref(&target));
        if let Ok(x) = basis.solve(&rhs) {
            // M^k = Σ x_i M^i  =>  p(t) = t^k - Σ x_i t^i
            let mut coeffs: Vec<Rational> = (0..powers.len()).map(|i| -&x[(i, 0)]).collect();
            coeffs.push(Rational::one());
            return coeffs;
        }
        powers.push(target);
    }
}

pub fn eval(poly: &[Rational], x: &Rational) -> Rational {
    poly.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
}

fn small_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Distinct rational roots, sorted. `None` if the integer coefficients are
/// too large for divisor enumeration.
pub fn rational_roots(poly: &[Rational]) -> Option<Vec<Rational>> {
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = lcm.lcm(&c.denom());
    }
    let mut ints: Vec<BigInt> = poly
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::zero());
        ints.drain(..lead_zeros);
    }
    if ints.len() > 1 {
        let low = ints[0].abs().to_u64()?;
        let high = ints.last().unwrap().abs().to_u64()?;
        let reduced: Vec<Rational> = ints.iter().map(|c| Rational::from_bigints(c.clone(), BigInt::one())).collect();
        for p in small_divisors(low) {
            for q in small_divisors(high) {
                for s in [1i64, -1] {
                    let cand = Rational::from_bigints(BigInt::from(p) * s, BigInt::from(q));
                    if !roots.contains(&cand) && eval(&reduced, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// `Some(eigenvalues)` when `m` is diagonalizable over ℚ.
pub fn rational_eigenvalues_if_diagonalizable(m: &Matrix) -> Option<Vec<Rational>> {
    let minpoly = minimal_polynomial(m);
    let roots = rational_roots(&minpoly)?;
    // Squarefree and split over ℚ iff degree equals the number of distinct roots.
    (roots.len() + 1 == minpoly.len()).then_some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(minimal_polynomial(&Matrix::identity(3)), vec![q(-1), q(1)]);
        let nil = Matrix::from_i64(2, 2, &[0, 1, 0, 0]);
        assert_eq!(minimal_polynomial(&nil), vec![q(0), q(0), q(1)]);
        let d = Matrix::from_i64(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 2]);
        // (t-2)(t-3) = t² - 5t + 6
        assert_eq!(minimal_polynomial(&d), vec![q(6), q(-5), q(1)]);
    }

    #[test]
    fn diagonalizability() {
        let d = Matrix::from_i64(2, 2, &[2, 1, 0, 3]);
        assert_eq!(rational_eigenvalues_if_diagonalizable(&d), Some(vec![q(2), q(3)]));
        let jordan = Matrix::from_i64(2, 2, &[1, 1, 0, 1]);
        assert_eq!(rational_eigenvalues_if_diagonalizable(&jordan), None);
        let rot = Matrix::from_i64(2, 2, &[0, -1, 1, 0]);
        assert_eq!(rational_eigenvalues_if_diagonalizable(&rot), None);
        let half = Matrix::from_fn(1, 1, |_, _| Rational::new(-1, 2));
        assert_eq!(rational_eigenvalues_if_diagonalizable(&half), Some(vec![Rational::new(-1, 2)]));
        assert_eq!(rational_eigenvalues_if_diagonalizable(&Matrix::zeros(2, 2)), Some(vec![q(0)]));
    }
}
