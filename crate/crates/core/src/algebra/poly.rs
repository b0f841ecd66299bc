use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree. Trailing zeros are trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Strict bound `B` with every complex root satisfying `|r| < B`.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lc) = self.leading() else {
            return int(1);
        };
        let n = self.coeffs.len() - 1;
        let max = self.coeffs[..n]
            .iter()
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        max + int(1)
    }

    fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    /// Sign as `x -> +inf` (`neg == false`) or `x -> -inf`.
    fn sign_at_infinity(&self, neg: bool) -> Ordering {
        let Some(lc) = self.leading() else {
            return Ordering::Equal;
        };
        let s = lc.cmp(&Rational::zero());
        if neg && self.degree().unwrap() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }
}

/// Sturm sequence of the squarefree part of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Poly>,
}

impl SturmSequence {
    /// Panics on the zero polynomial, which has no Sturm sequence.
    pub fn new(p: &Poly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let p0 = p.squarefree();
        let p1 = p0.derivative();
        let mut chain = vec![p0];
        if !p1.is_zero() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps sign patterns and tames coefficient growth.
            let lc = r.leading().unwrap().abs();
            chain.push(r.scale(&(-lc.recip())));
        }
        Self { chain }
    }

    /// The squarefree polynomial the sequence was built from.
    pub fn base(&self) -> &Poly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, neg: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(neg)))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(true) - self.variations_at_infinity(false)
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// An interval `[lo, hi]` containing exactly one real root, the smallest
    /// one, refined until `hi - lo <= width` or a rational root is hit
    /// exactly (then `lo == hi`).
    pub fn isolate_smallest_root(&self, width: &Rational) -> Option<(Rational, Rational)> {
        if self.count_all() == 0 {
            return None;
        }
        let base = self.base();
        let bound = base.cauchy_bound();
        let (mut lo, mut hi) = (-bound.clone(), bound);
        let two = int(2);
        loop {
            let n = self.count_in(&lo, &hi);
            debug_assert!(n >= 1);
            if n == 1 && &hi - &lo <= *width {
                return Some((lo, hi));
            }
            let mid = (&lo + &hi) / &two;
            if base.eval(&mid).is_zero() {
                // Smallest root unless another one lies strictly left of mid.
                if self.count_in(&lo, &mid) == 1 {
                    return Some((mid.clone(), mid));
                }
                hi = mid;
                continue;
            }
            if self.count_in(&lo, &mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
}

/// Coefficients (ascending) of the unique polynomial of degree `< n` through
/// the `n` given points. Abscissae must be distinct.
pub fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    let mut out = vec![Rational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // basis = prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let f = yi / denom;
        for (o, b) in out.iter_mut().zip(&basis) {
            *o += b * &f;
        }
    }
    out
}
