//! Parametrization of `Hom(Z^k, G)` by two disjoint charts.
//!
//! * [`Type1Param`] `(x, Y, z)` with `z ≠ 0`: generator `j` maps to
//!   `g(z_j x, y_j, z_j)`.
//! * [`Type2Param`] `(X, Y)`: generator `j` maps to `g(x_j, y_j, 0)`.
//!
//! Here `x_j`, `y_j` are the `j`-th columns of `X`, `Y`. The images are
//! disjoint, and the second chart meets the closure of the first exactly
//! where `rank X ≤ 1`.

use num_traits::Zero;

use crate::algebra::{int, Matrix, Rational};
use crate::error::{Error, Result};
use crate::group::{GroupElement, LieElement};

fn square_of(m: &Matrix, k: usize, what: &str) -> Result<()> {
    if m.rows() != k || m.cols() != k {
        return Err(Error::SizeMismatch(format!(
            "{what} is {}x{} but k = {k}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Type1Param {
    x: Vec<Rational>,
    y: Matrix,
    z: Vec<Rational>,
}

impl Type1Param {
    pub fn new(x: Vec<Rational>, y: Matrix, z: Vec<Rational>) -> Result<Self> {
        let k = x.len();
        if k == 0 {
            return Err(Error::InvalidK);
        }
        square_of(&y, k, "Y")?;
        if z.len() != k {
            return Err(Error::SizeMismatch(format!("z has length {}, k = {k}", z.len())));
        }
        if z.iter().all(Zero::is_zero) {
            return Err(Error::ZeroZ);
        }
        Ok(Self { x, y, z })
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    pub fn z(&self) -> &[Rational] {
        &self.z
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Type2Param {
    x: Matrix,
    y: Matrix,
}

impl Type2Param {
    pub fn new(x: Matrix, y: Matrix) -> Result<Self> {
        let k = x.rows();
        if k == 0 {
            return Err(Error::InvalidK);
        }
        square_of(&x, k, "X")?;
        square_of(&y, k, "Y")?;
        Ok(Self { x, y })
    }

    pub fn k(&self) -> usize {
        self.x.rows()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }
}

/// A point of `Hom(Z^k, G)` in one of the two charts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomParam {
    Type1(Type1Param),
    Type2(Type2Param),
}

impl HomParam {
    pub fn k(&self) -> usize {
        match self {
            HomParam::Type1(p) => p.k(),
            HomParam::Type2(p) => p.k(),
        }
    }

    /// 1 or 2.
    pub fn branch(&self) -> u8 {
        match self {
            HomParam::Type1(_) => 1,
            HomParam::Type2(_) => 2,
        }
    }

    pub fn image(&self) -> HomImage {
        match self {
            HomParam::Type1(p) => psi1(p),
            HomParam::Type2(p) => psi2(p),
        }
    }

    /// `log φ(e_j)` for each generator.
    pub fn generator_logs(&self) -> Vec<LieElement> {
        self.image().0.iter().map(crate::group::log).collect()
    }
}

impl From<Type1Param> for HomParam {
    fn from(p: Type1Param) -> Self {
        HomParam::Type1(p)
    }
}

impl From<Type2Param> for HomParam {
    fn from(p: Type2Param) -> Self {
        HomParam::Type2(p)
    }
}

/// The generator values `(φ(e_1), …, φ(e_k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomImage(pub Vec<GroupElement>);

impl HomImage {
    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Checks pairwise commutation with the group law.
    pub fn pairwise_commute(&self) -> Result<bool> {
        for (i, a) in self.0.iter().enumerate() {
            for b in &self.0[i + 1..] {
                if !a.commutes_with(b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Largest entrywise distance between matrix realizations, in floating
    /// point. Only used for reporting convergence.
    pub fn matrix_distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .flat_map(|(a, b)| {
                let (ma, mb) = (a.to_matrix(), b.to_matrix());
                ma.entries()
                    .iter()
                    .zip(mb.entries())
                    .map(|(p, q)| crate::algebra::to_f64(&(p - q)).abs())
                    .collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
    }
}

pub fn psi1(p: &Type1Param) -> HomImage {
    HomImage(
        (0..p.k())
            .map(|j| {
                let zj = &p.z[j];
                GroupElement {
                    x: p.x.iter().map(|v| v * zj).collect(),
                    y: p.y.column(j),
                    z: zj.clone(),
                }
            })
            .collect(),
    )
}

pub fn psi2(p: &Type2Param) -> HomImage {
    HomImage(
        (0..p.k())
            .map(|j| GroupElement {
                x: p.x.column(j),
                y: p.y.column(j),
                z: Rational::zero(),
            })
            .collect(),
    )
}

/// Recovers the chart parameter of a commuting tuple.
///
/// Commutation is checked through `z_i x_j = z_j x_i` for every pair.
pub fn parse_hom(t: &HomImage) -> Result<HomParam> {
    let k = t.k();
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if let Some(g) = t.0.iter().find(|g| g.k() != k) {
        return Err(Error::SizeMismatch(format!(
            "generator of dimension {} in a tuple of {k}",
            g.k()
        )));
    }
    for i in 0..k {
        for j in i + 1..k {
            let (gi, gj) = (&t.0[i], &t.0[j]);
            let ok = gi
                .x
                .iter()
                .zip(&gj.x)
                .all(|(xi, xj)| &gi.z * xj == &gj.z * xi);
            if !ok {
                return Err(Error::NotCommuting { i, j });
            }
        }
    }
    let y = Matrix::from_columns(&t.0.iter().map(|g| g.y.clone()).collect::<Vec<_>>())?;
    let z: Vec<Rational> = t.0.iter().map(|g| g.z.clone()).collect();
    let Some(first) = z.iter().position(|v| !v.is_zero()) else {
        let x = Matrix::from_columns(&t.0.iter().map(|g| g.x.clone()).collect::<Vec<_>>())?;
        return Ok(Type2Param::new(x, y)?.into());
    };
    let r: Vec<Rational> = t.0[first].x.iter().map(|v| v / &z[first]).collect();
    for (g, zj) in t.0.iter().zip(&z) {
        if g.x.iter().zip(&r).any(|(xj, ri)| *xj != zj * ri) {
            return Err(Error::Inconsistent);
        }
    }
    Ok(Type1Param::new(r, y, z)?.into())
}

/// Whether `Ψ2(p)` lies in the closure of the first chart (`rank X ≤ 1`).
pub fn in_closure_of_branch1(p: &Type2Param) -> bool {
    p.x.rank() <= 1
}

/// Deterministic factorization `X = x aᵀ` for `rank X ≤ 1`, with `a ≠ 0`.
///
/// `aᵀ` is the first nonzero row of `X`; for `X = 0` it is `(x, a) = (0, e_1)`.
pub fn rank_one_factor(x: &Matrix) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let rank = x.rank();
    if rank > 1 {
        return Err(Error::RankTooHigh(rank));
    }
    let k = x.rows();
    let Some(i0) = (0..k).find(|&i| x.row(i).iter().any(|v| !v.is_zero())) else {
        let mut a = vec![Rational::zero(); x.cols()];
        a[0] = int(1);
        return Ok((vec![Rational::zero(); k], a));
    };
    let a = x.row(i0).to_vec();
    let j0 = a.iter().position(|v| !v.is_zero()).unwrap();
    let col = x.column(j0);
    let xs = col.iter().map(|v| v / &a[j0]).collect();
    Ok((xs, a))
}

/// The `l`-th term `(l x, Y, a / l)` of a first-chart sequence whose images
/// converge to `Ψ2(p)` as `l → ∞`.
pub fn approx_sequence(p: &Type2Param, l: u64) -> Result<Type1Param> {
    if l == 0 {
        return Err(Error::InvalidArgument("l must be positive".into()));
    }
    let (x, a) = rank_one_factor(&p.x)?;
    let l = int(l as i64);
    let inv = l.recip();
    Type1Param::new(
        x.iter().map(|v| v * &l).collect(),
        p.y.clone(),
        a.iter().map(|v| v * &inv).collect(),
    )
}
