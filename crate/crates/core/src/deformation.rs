//! Conjugation by `G` on the chart parameters, orbit representatives, and a
//! seeded perturbation probe around a proper point.
//!
//! For `h = g(a, b, c)` conjugation acts by
//!
//! * `(x, Y, z) ↦ (x, Y + (a − c x) zᵀ, z)` on the first chart;
//! * `(X, Y) ↦ (X, Y − c X)` on the second.
//!
//! Representatives: `Y z = 0` on the first chart and `Trace(X Yᵀ) = 0` on the
//! second.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{dot, Matrix, Rational};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::hom::{in_closure_of_branch1, rank_one_factor, HomParam, Type1Param, Type2Param};
use crate::properness::is_proper;

pub fn g_act_param(h: &GroupElement, p: &HomParam) -> Result<HomParam> {
    if h.k() != p.k() {
        return Err(Error::SizeMismatch(format!(
            "group element has k = {} but parameter has k = {}",
            h.k(),
            p.k()
        )));
    }
    let c = &h.z;
    Ok(match p {
        HomParam::Type1(p) => {
            let shift: Vec<Rational> = h.x.iter().zip(p.x()).map(|(a, x)| a - c * x).collect();
            let y = p.y().add(&Matrix::outer(&shift, p.z()))?;
            Type1Param::new(p.x().to_vec(), y, p.z().to_vec())?.into()
        }
        HomParam::Type2(p) => {
            let y = p.y().sub(&p.x().scale(c))?;
            Type2Param::new(p.x().clone(), y)?.into()
        }
    })
}

/// A chart parameter in its orbit's normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm(HomParam);

impl CanonicalForm {
    pub fn param(&self) -> &HomParam {
        &self.0
    }

    pub fn into_param(self) -> HomParam {
        self.0
    }

    /// Rank of the rows of `Y′` (first chart only).
    pub fn eta_rank(&self) -> Option<usize> {
        match &self.0 {
            HomParam::Type1(p) => Some(p.y().rank()),
            HomParam::Type2(_) => None,
        }
    }

    /// Checks the defining identity of the representative set exactly.
    pub fn satisfies_identity(&self) -> bool {
        match &self.0 {
            HomParam::Type1(p) => p
                .y()
                .mul_vec(p.z())
                .map(|v| v.iter().all(Zero::is_zero))
                .unwrap_or(false),
            HomParam::Type2(p) => trace_x_yt(p.x(), p.y()).is_zero(),
        }
    }
}

fn trace_x_yt(x: &Matrix, y: &Matrix) -> Rational {
    dot(x.entries(), y.entries())
}

/// Projects `p` to the representative of its `G`-orbit.
///
/// With `require_proper` the input must be proper; otherwise the formula is
/// applied regardless and no uniqueness is claimed.
pub fn canonicalize(p: &HomParam, require_proper: bool) -> Result<CanonicalForm> {
    if require_proper && !is_proper(p).proper {
        return Err(Error::NotProper);
    }
    let out = match p {
        HomParam::Type1(p) => {
            let z = p.z();
            let coef = dot(z, z).recip();
            let yz = p.y().mul_vec(z)?;
            let shift: Vec<Rational> = yz.iter().map(|v| -(v * &coef)).collect();
            let y = p.y().add(&Matrix::outer(&shift, z))?;
            Type1Param::new(p.x().to_vec(), y, z.to_vec())?.into()
        }
        HomParam::Type2(p) => {
            let xx = trace_x_yt(p.x(), p.x());
            if xx.is_zero() {
                HomParam::Type2(p.clone())
            } else {
                let c = trace_x_yt(p.x(), p.y()) / xx;
                Type2Param::new(p.x().clone(), p.y().sub(&p.x().scale(&c))?)?.into()
            }
        }
    };
    Ok(CanonicalForm(out))
}

/// Whether two proper parameters are conjugate under `G`.
pub fn orbit_equivalent(p: &HomParam, q: &HomParam) -> Result<bool> {
    if p.k() != q.k() {
        return Err(Error::SizeMismatch(format!("k = {} vs k = {}", p.k(), q.k())));
    }
    let (cp, cq) = (canonicalize(p, true)?, canonicalize(q, true)?);
    Ok(cp == cq)
}

/// A perturbation that left the proper set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Chart the perturbed parameter lives in (1 or 2).
    pub chart: u8,
    pub param: HomParam,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub trials: usize,
    pub proper: usize,
    pub crossings: Vec<Crossing>,
}

impl ProbeReport {
    pub fn proper_fraction(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.proper as f64 / self.trials as f64
    }
}

const GRID: i64 = 1000;

struct Perturber<'a> {
    rng: ChaCha8Rng,
    radius: &'a Rational,
}

impl Perturber<'_> {
    /// Uniform point of the grid `radius · {−1, …, 1}` with step `1/GRID`.
    fn offset(&mut self) -> Rational {
        let n = self.rng.gen_range(-GRID..=GRID);
        self.radius * Rational::new(n.into(), GRID.into())
    }

    fn vector(&mut self, v: &[Rational]) -> Vec<Rational> {
        v.iter().map(|a| a + self.offset()).collect()
    }

    fn matrix(&mut self, m: &Matrix) -> Matrix {
        Matrix::from_fn(m.rows(), m.cols(), |i, j| &m[(i, j)] + self.offset())
    }

    fn type1(&mut self, p: &Type1Param) -> HomParam {
        let (x, y, z) = (self.vector(p.x()), self.matrix(p.y()), self.vector(p.z()));
        if z.iter().all(Zero::is_zero) {
            // Ψ1(x, Y, 0) degenerates to Ψ2(0, Y).
            let k = y.rows();
            return Type2Param::new(Matrix::zeros(k, k), y).unwrap().into();
        }
        Type1Param::new(x, y, z).unwrap().into()
    }

    fn type2(&mut self, p: &Type2Param) -> HomParam {
        Type2Param::new(self.matrix(p.x()), self.matrix(p.y()))
            .unwrap()
            .into()
    }

    /// A first-chart point near `Ψ2(p)` for `rank X ≤ 1`: generators
    /// `g(z_j r, y′_j, z_j)` with small `z` and `z_j r ≈ x_j`.
    fn into_branch1(&mut self, p: &Type2Param) -> HomParam {
        let (u, a) = rank_one_factor(p.x()).expect("rank X <= 1");
        let mut dir = self.vector(&a);
        if dir.iter().all(Zero::is_zero) {
            dir = a;
        }
        let u = self.vector(&u);
        let scale = dir
            .iter()
            .map(|v| if v < &Rational::zero() { -v.clone() } else { v.clone() })
            .max()
            .unwrap();
        let n = self.rng.gen_range(1..=GRID);
        let t = self.radius * Rational::new(n.into(), GRID.into()) / scale;
        let z: Vec<Rational> = dir.iter().map(|v| v * &t).collect();
        let r: Vec<Rational> = u.iter().map(|v| v / &t).collect();
        Type1Param::new(r, self.matrix(p.y()), z).unwrap().into()
    }
}

/// Samples `trials` perturbations of a proper `p` within `radius` in chart
/// coordinates and classifies each. When `p` lies in the second chart with
/// `rank X ≤ 1`, every other trial is drawn from the first chart instead.
///
/// Each trial draws from its own ChaCha stream, so the report depends only on
/// `(p, radius, trials, seed)`.
pub fn stability_probe(
    p: &HomParam,
    radius: &Rational,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if !is_proper(p).proper {
        return Err(Error::NotProper);
    }
    if radius <= &Rational::zero() {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let cross = matches!(p, HomParam::Type2(q) if in_closure_of_branch1(q));
    let mut report = ProbeReport {
        trials,
        proper: 0,
        crossings: Vec::new(),
    };
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut pert = Perturber { rng, radius };
        let q = match p {
            HomParam::Type1(p) => pert.type1(p),
            HomParam::Type2(p) if cross && trial % 2 == 1 => pert.into_branch1(p),
            HomParam::Type2(p) => pert.type2(p),
        };
        if is_proper(&q).proper {
            report.proper += 1;
        } else {
            report.crossings.push(Crossing {
                chart: q.branch(),
                param: q,
            });
        }
    }
    Ok(report)
}
