//! Seeded random rational parameters.
//!
//! Entries are `n/d` with `d ∈ {1, …, 4}` and `|n/d| ≤ 3`. A share of the
//! draws is given deliberately degenerate structure (zero or rank-one
//! blocks, shared kernel directions) so that both verdicts and the
//! identically-zero pencil show up often.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, Matrix, Rational};
use crate::group::GroupElement;
use crate::hom::{HomParam, Type1Param, Type2Param};
use crate::properness::is_proper;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform `n/d` with `d ∈ {1, …, 4}`, `|n| ≤ 3d`.
    pub fn rational(&mut self) -> Rational {
        let d: i64 = self.rng.gen_range(1..=4);
        let n = self.rng.gen_range(-3 * d..=3 * d);
        Rational::new(n.into(), d.into())
    }

    fn sparse_rational(&mut self) -> Rational {
        if self.rng.gen_bool(1.0 / 6.0) {
            Rational::zero()
        } else {
            self.rational()
        }
    }

    pub fn vector(&mut self, k: usize) -> Vec<Rational> {
        (0..k).map(|_| self.sparse_rational()).collect()
    }

    fn nonzero_vector(&mut self, k: usize) -> Vec<Rational> {
        loop {
            let v = self.vector(k);
            if v.iter().any(|a| !a.is_zero()) {
                return v;
            }
        }
    }

    /// Dense draw with no imposed structure.
    pub fn plain_matrix(&mut self, k: usize) -> Matrix {
        Matrix::from_fn(k, k, |_, _| self.rational())
    }

    /// `k × k` matrix from a mix of dense, sparse, integer, rank-one, zero
    /// and zero-column shapes.
    pub fn matrix(&mut self, k: usize) -> Matrix {
        match self.rng.gen_range(0..20) {
            0..=7 => self.plain_matrix(k),
            8..=10 => Matrix::from_fn(k, k, |_, _| self.sparse_rational()),
            11..=13 => Matrix::from_fn(k, k, |_, _| int(self.rng.gen_range(-3..=3))),
            14..=16 => self.rank_one(k),
            17 => Matrix::zeros(k, k),
            _ => {
                let mut m = self.plain_matrix(k);
                let j = self.rng.gen_range(0..k);
                for i in 0..k {
                    m[(i, j)] = Rational::zero();
                }
                m
            }
        }
    }

    /// `u vᵀ` with `u ∈ {−1, 0, 1}^k`, so entries stay in range.
    pub fn rank_one(&mut self, k: usize) -> Matrix {
        let u: Vec<Rational> = (0..k).map(|_| int(self.rng.gen_range(-1..=1))).collect();
        Matrix::outer(&u, &self.vector(k))
    }

    pub fn type1(&mut self, k: usize) -> Type1Param {
        let x = self.vector(k);
        let mut y = self.matrix(k);
        let mut z = self.nonzero_vector(k);
        if k > 1 && self.rng.gen_bool(0.2) {
            // Shared kernel direction e_j of Y and zᵀ.
            let j = self.rng.gen_range(0..k);
            for i in 0..k {
                y[(i, j)] = Rational::zero();
            }
            z[j] = Rational::zero();
            if z.iter().all(Zero::is_zero) {
                z[(j + 1) % k] = int(1);
            }
        }
        Type1Param::new(x, y, z).expect("valid shapes")
    }

    pub fn type2(&mut self, k: usize) -> Type2Param {
        let x = self.matrix(k);
        let mut y = self.matrix(k);
        if self.rng.gen_bool(0.15) {
            // Column j of Y − λ₀X vanishes: a rational pencil root, or an
            // identically zero pencil when that column of X is zero.
            let j = self.rng.gen_range(0..k);
            let l0 = int(self.rng.gen_range(-1..=1));
            for i in 0..k {
                y[(i, j)] = &x[(i, j)] * &l0;
            }
        }
        Type2Param::new(x, y).expect("valid shapes")
    }

    /// Second-chart parameter with `rank X ≤ 1`.
    pub fn rank_one_type2(&mut self, k: usize) -> Type2Param {
        let x = self.rank_one(k);
        let y = self.matrix(k);
        Type2Param::new(x, y).expect("valid shapes")
    }

    pub fn param(&mut self, k: usize, branch: u8) -> HomParam {
        match branch {
            1 => self.type1(k).into(),
            _ => self.type2(k).into(),
        }
    }

    /// Rejection sampling of a proper parameter on the given chart.
    pub fn proper_param(&mut self, k: usize, branch: u8) -> HomParam {
        loop {
            let p = self.param(k, branch);
            if is_proper(&p).proper {
                return p;
            }
        }
    }

    pub fn group_element(&mut self, k: usize) -> GroupElement {
        let x = self.vector(k);
        let y = self.vector(k);
        let z = self.sparse_rational();
        GroupElement::new(x, y, z).expect("matching lengths")
    }

    /// Random integer vector in `[−n, n]^k`.
    pub fn lattice_vector(&mut self, k: usize, n: i64) -> Vec<i64> {
        (0..k).map(|_| self.rng.gen_range(-n..=n)).collect()
    }
}
