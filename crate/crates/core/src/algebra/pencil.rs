use num_traits::{Signed, Zero};

use super::matrix::Matrix;
use super::poly::{interpolate, Poly, SturmSequence};
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Coefficients `a_0, …, a_k` of `f(λ) = det(Y − λX)` for `k × k` matrices.
///
/// Unlike [`Poly`] the vector is not trimmed: it always has length `k + 1`,
/// so `a_k = (−1)^k det X` is present even when it vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PencilPoly {
    coeffs: Vec<Rational>,
}

impl PencilPoly {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Matrix size `k`.
    pub fn size(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn eval(&self, lambda: &Rational) -> Rational {
        self.to_poly().eval(lambda)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

fn check_pair(x: &Matrix, y: &Matrix) -> Result<usize> {
    if !x.is_square() {
        return Err(Error::NonSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::SizeMismatch(format!(
            "X is {}x{} but Y is {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(x.rows())
}

/// Exact coefficients of `det(Y − λX)`, from determinants at `λ = 0, 1, …, k`
/// followed by Lagrange interpolation.
pub fn pencil_coeffs(x: &Matrix, y: &Matrix) -> Result<PencilPoly> {
    let k = check_pair(x, y)?;
    let points = (0..=k)
        .map(|l| {
            let lambda = int(l as i64);
            let d = y.sub(&x.scale(&lambda))?.det()?;
            Ok((lambda, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PencilPoly {
        coeffs: interpolate(&points),
    })
}

/// Closed form of the `λ^{k−1}` coefficient:
/// `(−1)^{k−1} Σ_{i,j} (−1)^{i+j} Y_ij det X̂_ij`, where `X̂_ij` drops row `i`
/// and column `j`.
pub fn cofactor_coefficient(x: &Matrix, y: &Matrix) -> Result<Rational> {
    let k = check_pair(x, y)?;
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let mut sum = Rational::zero();
    for i in 0..k {
        for j in 0..k {
            if y[(i, j)].is_zero() {
                continue;
            }
            let term = &y[(i, j)] * x.minor(i, j).det()?;
            if (i + j) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    Ok(if (k - 1) % 2 == 0 { sum } else { -sum })
}

/// Outcome of counting real roots of a pencil determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootCount {
    /// Number of distinct real roots.
    Finite(usize),
    /// Every coefficient vanishes: `det(Y − λX) = 0` for all `λ`.
    IdenticallyZero,
}

impl RootCount {
    /// True when the pencil determinant vanishes somewhere on the real line.
    pub fn has_real_root(self) -> bool {
        !matches!(self, RootCount::Finite(0))
    }
}

pub fn count_real_roots(p: &PencilPoly) -> RootCount {
    let poly = p.to_poly();
    if poly.is_zero() {
        return RootCount::IdenticallyZero;
    }
    // Strip the content so the chain starts from a primitive polynomial.
    let content = poly
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .expect("nonzero polynomial");
    RootCount::Finite(SturmSequence::new(&poly.scale(&content.recip())).count_all())
}
