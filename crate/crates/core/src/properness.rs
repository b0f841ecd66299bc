//! Deciding proper discontinuity, with an independent Lie-algebra route.
//!
//! The primary criterion works on chart parameters:
//!
//! * first chart: proper iff `rank(Yᵀ | z) = k`;
//! * second chart: proper iff `det(Y − λX)` has no real zero (and is not
//!   identically zero).
//!
//! [`is_proper_lie`] reaches the same verdict from the differential
//! `dψ : R^k → g` of the extended homomorphism, by testing that `dψ` is
//! injective and that its image meets `V = ∪ Ad(g) h` only in `0`.

use num_traits::Zero;

use crate::algebra::{
    count_real_roots, pencil_coeffs, rat, Matrix, Poly, Rational, RootCount, SturmSequence,
};
use crate::error::{Error, Result};
use crate::group::LieElement;
use crate::hom::{HomParam, Type1Param, Type2Param};

/// Why a verdict came out the way it did.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// First chart: the rank of `(Yᵀ | z)` against the required `k`.
    Rank { rank: usize, required: usize },
    /// Second chart: the pencil determinant has no real zero.
    NoRealRoot,
    /// Second chart: `det(Y − λX)` vanishes for every `λ`.
    IdenticallyZero,
    /// Second chart: `[lo, hi]` isolates the smallest real zero of the pencil
    /// determinant (`lo == hi` when that zero is rational and was hit).
    RootInterval { lo: Rational, hi: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropernessVerdict {
    pub proper: bool,
    pub branch: u8,
    pub witness: Witness,
}

/// `(Yᵀ | z)`, a `k × (k+1)` matrix.
fn type1_rank_matrix(p: &Type1Param) -> Matrix {
    let z = Matrix::from_columns(&[p.z().to_vec()]).expect("z has length k");
    p.y().transpose().hstack(&z).expect("shapes agree")
}

pub fn is_proper(p: &HomParam) -> PropernessVerdict {
    match p {
        HomParam::Type1(p) => {
            let rank = type1_rank_matrix(p).rank();
            PropernessVerdict {
                proper: rank == p.k(),
                branch: 1,
                witness: Witness::Rank {
                    rank,
                    required: p.k(),
                },
            }
        }
        HomParam::Type2(p) => {
            let f = pencil_coeffs(p.x(), p.y()).expect("chart parameters are square");
            let witness = match count_real_roots(&f) {
                RootCount::IdenticallyZero => Witness::IdenticallyZero,
                RootCount::Finite(0) => Witness::NoRealRoot,
                RootCount::Finite(_) => {
                    let (lo, hi) = SturmSequence::new(&f.to_poly())
                        .isolate_smallest_root(&rat(1, 1024))
                        .expect("a real root was counted");
                    Witness::RootInterval { lo, hi }
                }
            };
            PropernessVerdict {
                proper: witness == Witness::NoRealRoot,
                branch: 2,
                witness,
            }
        }
    }
}

/// The linear map `a ↦ dψ(a)`, stored as its three coordinate blocks:
/// `dψ(a) = (x_part · a, y_part · a, ⟨z_part, a⟩)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DPsiMatrix {
    pub x_part: Matrix,
    pub y_part: Matrix,
    pub z_part: Vec<Rational>,
}

impl DPsiMatrix {
    pub fn k(&self) -> usize {
        self.x_part.cols()
    }

    pub fn apply(&self, a: &[Rational]) -> Result<LieElement> {
        LieElement::new(
            self.x_part.mul_vec(a)?,
            self.y_part.mul_vec(a)?,
            crate::algebra::dot(&self.z_part, a),
        )
    }

    /// `(2k+1) × k` matrix whose kernel is the kernel of `dψ`.
    pub fn stacked(&self) -> Matrix {
        let z = Matrix::new(1, self.k(), self.z_part.clone()).expect("z row");
        self.x_part
            .vstack(&self.y_part)
            .and_then(|m| m.vstack(&z))
            .expect("blocks share k columns")
    }
}

/// `dψ(e_j) = log φ(e_j)`, since `ψ(a) = exp(Σ a_j log φ(e_j))`.
pub fn dpsi_matrix(p: &HomParam) -> DPsiMatrix {
    let logs = p.generator_logs();
    let cols = |f: fn(&LieElement) -> Vec<Rational>| {
        Matrix::from_columns(&logs.iter().map(f).collect::<Vec<_>>()).expect("k columns")
    };
    DPsiMatrix {
        x_part: cols(|l| l.x.clone()),
        y_part: cols(|l| l.y.clone()),
        z_part: logs.iter().map(|l| l.z.clone()).collect(),
    }
}

/// Whether `m` has a real eigenvalue other than `0`, from a Sturm count on
/// its characteristic polynomial.
pub fn has_nonzero_real_eigenvalue(m: &Matrix) -> Result<bool> {
    let mut coeffs = m.charpoly()?.coeffs().to_vec();
    // drop the factor t^r
    while coeffs.first().is_some_and(Zero::is_zero) {
        coeffs.remove(0);
    }
    let p = Poly::new(coeffs);
    if p.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    Ok(SturmSequence::new(&p).count_all() > 0)
}

/// Properness decided from `dψ` alone: injectivity, then `dψ(R^k) ∩ V = {0}`.
pub fn is_proper_lie(p: &HomParam) -> bool {
    let d = dpsi_matrix(p);
    let k = d.k();
    if d.stacked().rank() != k {
        return false;
    }
    if d.z_part.iter().any(|v| !v.is_zero()) {
        // dψ(a) ∈ V forces ⟨z, a⟩ = 0, hence a zero x-slot, hence Ya = 0;
        // injectivity then gives a = 0.
        return true;
    }
    // Here dψ(a) = (Xa, Ya, 0) lies in V \ {0} iff Xa ≠ 0 and Ya = b·Xa.
    let Some(y_inv) = d.y_part.inverse().expect("square") else {
        // a ∈ ker Y \ {0} has Xa ≠ 0 by injectivity: (Xa, 0, 0) ∈ V.
        return false;
    };
    // With Y invertible, Ya = b·Xa (a ≠ 0) needs b ≠ 0 and makes 1/b an
    // eigenvalue of Y⁻¹X.
    let m = y_inv.mul(&d.x_part).expect("square");
    !has_nonzero_real_eigenvalue(&m).expect("square")
}

/// `φ|Γ` is injective iff `dψ` has trivial rational kernel.
pub fn is_injective_gamma(p: &HomParam) -> bool {
    gamma_kernel_matrix(p).rank() == p.k()
}

/// Matrix whose rational kernel is `{a : φ(a) = e}`: `(Y; zᵀ)` or `(X; Y)`.
pub fn gamma_kernel_matrix(p: &HomParam) -> Matrix {
    match p {
        HomParam::Type1(p) => {
            let z = Matrix::new(1, p.k(), p.z().to_vec()).expect("z row");
            p.y().vstack(&z).expect("k columns")
        }
        HomParam::Type2(p) => p.x().vstack(p.y()).expect("k columns"),
    }
}

/// Membership in the generic part of the second chart.
pub fn is_generic(p: &Type2Param) -> bool {
    let k = p.k();
    let shape_ok = if k % 2 == 0 {
        !p.x().det().expect("square").is_zero()
    } else {
        p.x().rank() == k - 1
            && !crate::algebra::cofactor_coefficient(p.x(), p.y())
                .expect("square")
                .is_zero()
    };
    shape_ok && is_proper(&HomParam::Type2(p.clone())).proper
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenericDimension {
    pub dim_m1r: u64,
    pub dim_m2ro: u64,
    pub dim_t_prime: u64,
}

pub fn generic_dimension(k: u64) -> Result<GenericDimension> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let sq = 2 * k * k;
    let dim_m2ro = if k % 2 == 0 { sq } else { sq - 1 };
    let dim_t_prime = match k {
        1 => 2,
        _ if k % 2 == 0 => sq - 1,
        _ => sq - 2,
    };
    Ok(GenericDimension {
        dim_m1r: k * (k + 2),
        dim_m2ro,
        dim_t_prime,
    })
}

/// Properness of `(X, I_k)`.
pub fn halfdim_slice_proper(x: &Matrix) -> Result<bool> {
    if !x.is_square() {
        return Err(Error::NonSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let p = Type2Param::new(x.clone(), Matrix::identity(x.rows()))?;
    Ok(is_proper(&p.into()).proper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn j2() -> Matrix {
        Matrix::from_i64(&[&[0, -1], &[1, 0]])
    }

    fn t2(x: Matrix, y: Matrix) -> HomParam {
        Type2Param::new(x, y).unwrap().into()
    }

    #[test]
    fn verdict_examples() {
        let v = is_proper(&t2(j2(), Matrix::identity(2)));
        assert!(v.proper);
        assert_eq!(v.witness, Witness::NoRealRoot);

        let v = is_proper(&t2(Matrix::from_i64(&[&[1, 0], &[0, 0]]), Matrix::identity(2)));
        assert!(!v.proper);
        assert_eq!(
            v.witness,
            Witness::RootInterval {
                lo: int(1),
                hi: int(1)
            }
        );

        let e1 = vec![int(1), int(0), int(0)];
        let p = Type1Param::new(vec![int(0); 3], Matrix::identity(3), e1).unwrap();
        assert!(is_proper(&p.into()).proper);

        let v = is_proper(&t2(Matrix::zeros(2, 2), Matrix::zeros(2, 2)));
        assert_eq!((v.proper, v.witness), (false, Witness::IdenticallyZero));
    }

    #[test]
    fn dpsi_examples() {
        // a = e_2 is orthogonal to z = e_1 and killed by Y = diag(1, 0).
        let p: HomParam = Type1Param::new(
            vec![int(3), int(-1)],
            Matrix::from_i64(&[&[1, 0], &[0, 0]]),
            vec![int(1), int(0)],
        )
        .unwrap()
        .into();
        assert!(dpsi_matrix(&p).apply(&[int(0), int(1)]).unwrap().is_zero());
        assert!(dpsi_matrix(&p).apply(&[int(0), int(0)]).unwrap().is_zero());

        let x = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let y = Matrix::from_i64(&[&[5, 6], &[7, 8]]);
        let d = dpsi_matrix(&t2(x, y));
        let w = d.apply(&[int(0), int(1)]).unwrap();
        assert_eq!(w.x, vec![int(2), int(4)]);
        assert_eq!(w.y, vec![int(6), int(8)]);
        assert!(w.z.is_zero());
    }

    #[test]
    fn lie_route_examples() {
        assert!(is_proper_lie(&t2(j2(), Matrix::identity(2))));
        let p: HomParam = Type1Param::new(
            vec![int(1), int(1)],
            Matrix::from_i64(&[&[1, 0], &[0, 0]]),
            vec![int(1), int(0)],
        )
        .unwrap()
        .into();
        assert!(!is_proper_lie(&p));
        let x = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert!(!is_proper_lie(&t2(x.clone(), x)));
    }

    #[test]
    fn injectivity_examples() {
        assert!(is_injective_gamma(&t2(Matrix::zeros(3, 3), Matrix::identity(3))));
        assert!(!is_injective_gamma(&t2(Matrix::zeros(2, 2), Matrix::zeros(2, 2))));
        let p: HomParam =
            Type1Param::new(vec![int(2), int(1)], Matrix::zeros(2, 2), vec![int(1), int(0)])
                .unwrap()
                .into();
        assert!(!is_injective_gamma(&p));
    }

    #[test]
    fn generic_examples() {
        let p = Type2Param::new(j2(), Matrix::identity(2)).unwrap();
        assert!(is_generic(&p));
        let j3p = Matrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(is_generic(&Type2Param::new(j3p, Matrix::identity(3)).unwrap()));
        let o = Type2Param::new(Matrix::zeros(2, 2), Matrix::identity(2)).unwrap();
        assert!(!is_generic(&o));
        assert!(is_proper(&o.into()).proper);
    }

    #[test]
    fn dimension_table() {
        let d = |k| {
            let g = generic_dimension(k).unwrap();
            (g.dim_m1r, g.dim_m2ro, g.dim_t_prime)
        };
        assert_eq!(d(1), (3, 1, 2));
        assert_eq!(d(2), (8, 8, 7));
        assert_eq!(d(3), (15, 17, 16));
        assert_eq!(generic_dimension(0), Err(Error::InvalidK));
    }

    #[test]
    fn halfdim_examples() {
        assert!(halfdim_slice_proper(&Matrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap());
        assert!(!halfdim_slice_proper(&Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap());
        assert!(halfdim_slice_proper(&j2()).unwrap());
        assert!(halfdim_slice_proper(&Matrix::zeros(2, 3)).is_err());
        assert!(has_nonzero_real_eigenvalue(&Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap());
        assert!(!has_nonzero_real_eigenvalue(&j2()).unwrap());
    }
}
