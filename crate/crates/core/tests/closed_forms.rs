//! Verdicts checked against closed forms written out entrywise for small `k`,
//! with no use of the library's pencil, rank or Sturm code.

use nilaffine::algebra::{int, Matrix, Rational};
use nilaffine::hom::{HomParam, Type1Param, Type2Param};
use nilaffine::oracle::{box_returns, oracle_verdict, Verdict};
use nilaffine::properness::{generic_dimension, halfdim_slice_proper, is_proper};
use nilaffine::sampling::Sampler;
use num_traits::{Signed, Zero};

fn e(m: &Matrix, i: usize, j: usize) -> Rational {
    m[(i, j)].clone()
}

/// `det(Y − λX) = a + bλ + cλ²` for `k = 2`, expanded by hand.
fn quadratic(x: &Matrix, y: &Matrix) -> (Rational, Rational, Rational) {
    let (x11, x12, x21, x22) = (e(x, 0, 0), e(x, 0, 1), e(x, 1, 0), e(x, 1, 1));
    let (y11, y12, y21, y22) = (e(y, 0, 0), e(y, 0, 1), e(y, 1, 0), e(y, 1, 1));
    let a = &y11 * &y22 - &y12 * &y21;
    let b = -(&y11 * &x22 + &x11 * &y22) + (&y12 * &x21 + &x12 * &y21);
    let c = &x11 * &x22 - &x12 * &x21;
    (a, b, c)
}

/// No real zero and not identically zero.
fn quadratic_has_no_real_root(a: &Rational, b: &Rational, c: &Rational) -> bool {
    if !c.is_zero() {
        b * b - int(4) * a * c < Rational::zero()
    } else if !b.is_zero() {
        false
    } else {
        !a.is_zero()
    }
}

#[test]
fn first_chart_k1_and_k2_by_minors() {
    let mut s = Sampler::new(101);
    for _ in 0..500 {
        let p = s.type1(1);
        // (y | z) has rank 1 iff it is nonzero, and z ≠ 0 always.
        assert!(is_proper(&p.clone().into()).proper);

        let p = s.type1(2);
        let (y, z) = (p.y(), p.z());
        // Minors of the 2 × 3 matrix (Yᵀ | z).
        let m12 = e(y, 0, 0) * e(y, 1, 1) - e(y, 1, 0) * e(y, 0, 1);
        let m13 = e(y, 0, 0) * &z[1] - e(y, 0, 1) * &z[0];
        let m23 = e(y, 1, 0) * &z[1] - e(y, 1, 1) * &z[0];
        let expected = !(m12.is_zero() && m13.is_zero() && m23.is_zero());
        assert_eq!(is_proper(&p.into()).proper, expected);
    }
}

#[test]
fn second_chart_k1_and_k2_by_discriminant() {
    let mut s = Sampler::new(102);
    for _ in 0..500 {
        let p = s.type2(1);
        // y − λx has no real zero iff x = 0 ≠ y.
        let expected = p.x()[(0, 0)].is_zero() && !p.y()[(0, 0)].is_zero();
        assert_eq!(is_proper(&p.into()).proper, expected);

        let p = s.type2(2);
        let (a, b, c) = quadratic(p.x(), p.y());
        assert_eq!(is_proper(&p.into()).proper, quadratic_has_no_real_root(&a, &b, &c));
    }
}

#[test]
fn halfdim_slice_k2_by_trace_and_determinant() {
    let mut s = Sampler::new(103);
    for _ in 0..500 {
        let x = s.matrix(2);
        // Eigenvalues of X solve t² − tr t + det = 0; nonzero real ones exist
        // iff the discriminant is nonnegative and (det ≠ 0 or tr ≠ 0).
        let tr = e(&x, 0, 0) + e(&x, 1, 1);
        let det = e(&x, 0, 0) * e(&x, 1, 1) - e(&x, 0, 1) * e(&x, 1, 0);
        let disc = &tr * &tr - int(4) * &det;
        let nonzero_real = disc >= Rational::zero() && !(tr.is_zero() && det.is_zero());
        assert_eq!(halfdim_slice_proper(&x).unwrap(), !nonzero_real, "{x:?}");
    }
}

#[test]
fn dimension_table() {
    for k in 1..=8u64 {
        let d = generic_dimension(k).unwrap();
        assert_eq!(d.dim_m1r, k * (k + 2));
        let m2ro = if k % 2 == 0 { 2 * k * k } else { 2 * k * k - 1 };
        assert_eq!(d.dim_m2ro, m2ro);
        // One dimension is lost to the conjugation by G, except at k = 1.
        let t = if k == 1 { 2 } else { m2ro - 1 };
        assert_eq!(d.dim_t_prime, t);
    }
    assert!(generic_dimension(0).is_err());
}

#[test]
fn one_dimensional_box_returns_by_hand() {
    // k = 1, second chart: φ(m)(w, z) = (w + m x z + m y, z). The return test is
    // |m x z + m y| ≤ 2 for some |z| ≤ 1, i.e. |m| (|y| − |x|) ≤ 2 when
    // |y| ≥ |x|, and always otherwise.
    let mut s = Sampler::new(104);
    let one = int(1);
    for _ in 0..200 {
        let p = s.type2(1);
        let (x, y) = (p.x()[(0, 0)].abs(), p.y()[(0, 0)].abs());
        let param: HomParam = p.into();
        for m in -20i64..=20 {
            let expected = y <= x || int(m.abs()) * (&y - &x) <= int(2);
            assert_eq!(box_returns(&param, &[m], &one).unwrap(), expected, "{param:?} m={m}");
        }
    }
}

#[test]
fn oracle_examples_from_enumeration() {
    let one = int(1);
    let shift: HomParam = Type2Param::new(Matrix::from_i64(&[&[0]]), Matrix::from_i64(&[&[1]]))
        .unwrap()
        .into();
    let r = oracle_verdict(&shift, &one, &[4, 8, 16]).unwrap();
    assert_eq!((r.counts, r.verdict), (vec![4, 4, 4], Verdict::Proper));

    let shear: HomParam = Type2Param::new(Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[0]]))
        .unwrap()
        .into();
    let r = oracle_verdict(&shear, &one, &[4, 8, 16]).unwrap();
    assert_eq!((r.counts, r.verdict), (vec![8, 16, 32], Verdict::NotProper));

    let j2: HomParam = Type2Param::new(
        Matrix::from_i64(&[&[0, -1], &[1, 0]]),
        Matrix::identity(2),
    )
    .unwrap()
    .into();
    let r = oracle_verdict(&j2, &one, &[4, 8, 16]).unwrap();
    assert_eq!(r.verdict, Verdict::Proper);

    // Non-injective first-chart parameter: e_2 maps to the identity.
    let flat: HomParam = Type1Param::new(
        vec![int(1), int(0)],
        Matrix::from_i64(&[&[1, 0], &[0, 0]]),
        vec![int(1), int(0)],
    )
    .unwrap()
    .into();
    let r = oracle_verdict(&flat, &one, &[4, 8]).unwrap();
    assert_eq!(r.verdict, Verdict::NotProper);
    assert_eq!(r.witness.unwrap().direction, vec![0, 1]);
}
