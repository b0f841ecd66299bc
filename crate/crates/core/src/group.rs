//! The group `G`, its Lie algebra, and the affine action on `G/H ≅ R^{k+1}`.
//!
//! Elements are stored in exponential coordinates: `GroupElement { x, y, z }`
//! is `g(x, y, z) = exp(A)` with `A` the strictly upper triangular matrix
//! carrying `x`, `y`, `z`. Its `(k+2) × (k+2)` realization is
//!
//! ```text
//! ⎛ I_k  x  y + ½ z x ⎞
//! ⎜ 0    1  z         ⎟
//! ⎝ 0    0  1         ⎠
//! ```
//!
//! Since `G` is two-step nilpotent, `exp` and `log` are polynomial and the
//! group law is `exp A · exp B = exp(A + B + ½[A, B])`.

use num_traits::Zero;

use crate::algebra::{int, rat, Matrix, Rational};
use crate::error::{Error, Result};

fn check_len(v: &[Rational], k: usize, what: &str) -> Result<()> {
    if v.len() != k {
        return Err(Error::SizeMismatch(format!(
            "{what} has length {} but k = {k}",
            v.len()
        )));
    }
    Ok(())
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(p, q)| p + q).collect()
}

fn scaled(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|p| p * c).collect()
}

/// An element of the Lie algebra `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub z: Rational,
}

impl LieElement {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, z: Rational) -> Result<Self> {
        check_len(&y, x.len(), "y")?;
        Ok(Self { x, y, z })
    }

    pub fn zero(k: usize) -> Self {
        Self {
            x: vec![Rational::zero(); k],
            y: vec![Rational::zero(); k],
            z: Rational::zero(),
        }
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero() && self.x.iter().chain(&self.y).all(Zero::is_zero)
    }

    fn check_k(&self, other: &Self) -> Result<()> {
        if self.k() != other.k() {
            return Err(Error::SizeMismatch(format!(
                "k = {} vs k = {}",
                self.k(),
                other.k()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_k(other)?;
        Ok(Self {
            x: add(&self.x, &other.x),
            y: add(&self.y, &other.y),
            z: &self.z + &other.z,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            x: scaled(&self.x, c),
            y: scaled(&self.y, c),
            z: &self.z * c,
        }
    }

    /// `[A, B] = AB − BA`; only the `y` slot survives.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_k(other)?;
        let y = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(xa, xb)| xa * &other.z - xb * &self.z)
            .collect();
        Ok(Self {
            x: vec![Rational::zero(); self.k()],
            y,
            z: Rational::zero(),
        })
    }

    /// The strictly upper triangular `(k+2) × (k+2)` matrix.
    pub fn to_matrix(&self) -> Matrix {
        let k = self.k();
        let mut m = Matrix::zeros(k + 2, k + 2);
        for i in 0..k {
            m[(i, k)] = self.x[i].clone();
            m[(i, k + 1)] = self.y[i].clone();
        }
        m[(k, k + 1)] = self.z.clone();
        m
    }

    /// Inverse of [`LieElement::to_matrix`]; entries outside the pattern are
    /// ignored.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let k = block_size(m)?;
        Ok(Self {
            x: (0..k).map(|i| m[(i, k)].clone()).collect(),
            y: (0..k).map(|i| m[(i, k + 1)].clone()).collect(),
            z: m[(k, k + 1)].clone(),
        })
    }
}

fn block_size(m: &Matrix) -> Result<usize> {
    if !m.is_square() || m.rows() < 2 {
        return Err(Error::SizeMismatch(format!(
            "expected a square matrix of size k + 2, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows() - 2)
}

/// `g(x, y, z)` in exponential coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub z: Rational,
}

impl GroupElement {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, z: Rational) -> Result<Self> {
        check_len(&y, x.len(), "y")?;
        Ok(Self { x, y, z })
    }

    pub fn identity(k: usize) -> Self {
        exp(&LieElement::zero(k))
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        log(self).is_zero()
    }

    /// Membership in `H = { g(x, 0, 0) }`.
    pub fn in_h(&self) -> bool {
        self.z.is_zero() && self.y.iter().all(Zero::is_zero)
    }

    /// Top-right column block of the matrix realization, `y + ½ z x`.
    pub fn corner(&self) -> Vec<Rational> {
        let half_z = &self.z * rat(1, 2);
        self.y
            .iter()
            .zip(&self.x)
            .map(|(y, x)| y + x * &half_z)
            .collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        let k = self.k();
        let mut m = Matrix::identity(k + 2);
        for (i, c) in self.corner().into_iter().enumerate() {
            m[(i, k)] = self.x[i].clone();
            m[(i, k + 1)] = c;
        }
        m[(k, k + 1)] = self.z.clone();
        m
    }

    /// Reads exponential coordinates back from a matrix realization.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let k = block_size(m)?;
        let x: Vec<_> = (0..k).map(|i| m[(i, k)].clone()).collect();
        let z = m[(k, k + 1)].clone();
        let half_z = &z * rat(1, 2);
        let y = (0..k).map(|i| &m[(i, k + 1)] - &x[i] * &half_z).collect();
        Ok(Self { x, y, z })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let (a, b) = (log(self), log(other));
        let half = rat(1, 2);
        Ok(exp(&a.add(&b)?.add(&a.bracket(&b)?.scale(&half))?))
    }

    pub fn inverse(&self) -> Self {
        exp(&log(self).scale(&int(-1)))
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.multiply(&self.inverse())
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }

    /// `Ad(self) W = g W g⁻¹`, by conjugating matrix realizations.
    pub fn adjoint(&self, w: &LieElement) -> Result<LieElement> {
        let g = self.to_matrix();
        let g_inv = self.inverse().to_matrix();
        LieElement::from_matrix(&g.mul(&w.to_matrix())?.mul(&g_inv)?)
    }
}

pub fn exp(a: &LieElement) -> GroupElement {
    GroupElement {
        x: a.x.clone(),
        y: a.y.clone(),
        z: a.z.clone(),
    }
}

pub fn log(g: &GroupElement) -> LieElement {
    LieElement {
        x: g.x.clone(),
        y: g.y.clone(),
        z: g.z.clone(),
    }
}

/// A point `(w, z)` of `R^{k+1}`, the coset `g(0, w, z) H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub w: Vec<Rational>,
    pub z: Rational,
}

impl Point {
    pub fn new(w: Vec<Rational>, z: Rational) -> Self {
        Self { w, z }
    }

    pub fn k(&self) -> usize {
        self.w.len()
    }
}

/// Left translation: `g(a, b, c) · (w, z) = (w + a z + b + ½ c a, z + c)`.
pub fn act_on_point(g: &GroupElement, p: &Point) -> Result<Point> {
    check_len(&p.w, g.k(), "point")?;
    let w = g
        .corner()
        .iter()
        .zip(&p.w)
        .zip(&g.x)
        .map(|((b, w), a)| w + a * &p.z + b)
        .collect();
    Ok(Point {
        w,
        z: &p.z + &g.z,
    })
}

/// The same action computed by multiplying matrices: `g · g(0, w, z)`, then
/// reading the coset coordinates of the product.
pub fn act_on_point_via_matrices(g: &GroupElement, p: &Point) -> Result<Point> {
    check_len(&p.w, g.k(), "point")?;
    let rep = GroupElement {
        x: vec![Rational::zero(); p.k()],
        y: p.w.clone(),
        z: p.z.clone(),
    };
    let prod = GroupElement::from_matrix(&g.to_matrix().mul(&rep.to_matrix())?)?;
    Ok(Point {
        w: prod.corner(),
        z: prod.z,
    })
}

/// Witness for membership in `V = ∪_g Ad(g) h`: `W = (x, b x, 0)`.
pub fn variety_witness(w: &LieElement) -> Option<(Vec<Rational>, Rational)> {
    if !w.z.is_zero() {
        return None;
    }
    let Some(i) = w.x.iter().position(|v| !v.is_zero()) else {
        return w
            .y
            .iter()
            .all(Zero::is_zero)
            .then(|| (w.x.clone(), Rational::zero()));
    };
    let b = &w.y[i] / &w.x[i];
    w.x.iter()
        .zip(&w.y)
        .all(|(x, y)| *y == x * &b)
        .then(|| (w.x.clone(), b))
}

pub fn in_variety_v(w: &LieElement) -> bool {
    variety_witness(w).is_some()
}
