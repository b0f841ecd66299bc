//! Brute-force return counting on boxes.
//!
//! For `S = [−R, R]^{k+1}` and `γ = m ∈ Z^k` the oracle decides exactly
//! whether `φ(m) S ∩ S ≠ ∅`, counts such `m` over growing cubes
//! `[−N, N]^k`, and reads a verdict off the counts. It uses the chart
//! parameters only through `φ(m)` and never consults the properness
//! criteria.
//!
//! Second-chart homomorphisms never move the `z` coordinate, so a box can
//! miss returns that happen at large `|z|`. For that chart the oracle also
//! counts returns on `C = {(w, z) : |w|∞ ≤ R max(1, |z|)}` and will only
//! report `Proper` when both tables have settled. Widening `C` with `|z|`
//! keeps the band of returns around a pencil root `λ` about as thick as for
//! small `|λ|`; a plain slab makes it thinner as `|λ|` grows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{dot, int, Rational};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::hom::HomParam;
use crate::properness::gamma_kernel_matrix;

/// Schedule used when the caller does not supply one.
pub const DEFAULT_SCHEDULE: [u64; 4] = [8, 16, 32, 64];

/// `φ(m) = exp(Σ m_j log φ(e_j))`.
pub fn gamma_element(p: &HomParam, m: &[i64]) -> Result<GroupElement> {
    if m.len() != p.k() {
        return Err(Error::SizeMismatch(format!(
            "lattice vector has length {} but k = {}",
            m.len(),
            p.k()
        )));
    }
    let m: Vec<Rational> = m.iter().map(|&v| int(v)).collect();
    Ok(match p {
        HomParam::Type1(p) => {
            let c = dot(&m, p.z());
            let x = p.x().iter().map(|v| v * &c).collect();
            GroupElement::new(x, p.y().mul_vec(&m)?, c)?
        }
        HomParam::Type2(p) => GroupElement::new(
            p.x().mul_vec(&m)?,
            p.y().mul_vec(&m)?,
            Rational::zero(),
        )?,
    })
}

/// `(a, b′, c)` with `φ(m)·(w, z) = (w + a z + b′, z + c)`.
fn affine_parts(g: &GroupElement) -> (Vec<Rational>, Vec<Rational>, Rational) {
    (g.x.clone(), g.corner(), g.z.clone())
}

/// Whether some `z ∈ [lo, hi]` satisfies `α z + β ≤ 0` for every
/// constraint; `None` bounds are infinite.
fn feasible(
    constraints: impl IntoIterator<Item = (Rational, Rational)>,
    mut lo: Option<Rational>,
    mut hi: Option<Rational>,
) -> bool {
    for (alpha, beta) in constraints {
        if alpha.is_zero() {
            if beta.is_positive() {
                return false;
            }
            continue;
        }
        let t = -beta / &alpha;
        if alpha.is_positive() {
            if hi.as_ref().map_or(true, |hi| &t < hi) {
                hi = Some(t);
            }
        } else if lo.as_ref().map_or(true, |lo| &t > lo) {
            lo = Some(t);
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => lo <= hi,
        _ => true,
    }
}

/// `|a_i z + b_i| ≤ 2R` as linear constraints in `z`.
fn band(a: &[Rational], b: &[Rational], r: &Rational) -> Vec<(Rational, Rational)> {
    let two_r = r * int(2);
    a.iter()
        .zip(b)
        .flat_map(|(a, b)| [(a.clone(), b - &two_r), (-a, -b - &two_r)])
        .collect()
}

/// `|a_i z + b_i| ≤ 2R μ s z` for `z` of sign `s`, as linear constraints.
fn widening_band(
    a: &[Rational],
    b: &[Rational],
    r_mu: &Rational,
    s: i64,
) -> Vec<(Rational, Rational)> {
    let two = r_mu * int(2 * s);
    a.iter()
        .zip(b)
        .flat_map(|(a, b)| [(a - &two, b.clone()), (-a - &two, -b)])
        .collect()
}

fn max_abs<'a>(entries: impl IntoIterator<Item = &'a Rational>) -> Rational {
    entries
        .into_iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Widening rate `μ = max|X_ij| / max|Y_ij|` of the set `C` (1 when `Y = 0`).
fn widening_rate(p: &HomParam) -> Rational {
    match p {
        HomParam::Type1(_) => Rational::zero(),
        HomParam::Type2(p) => {
            let y = max_abs(p.y().entries());
            if y.is_zero() {
                int(1)
            } else {
                max_abs(p.x().entries()) / y
            }
        }
    }
}

fn check_radius(r: &Rational) -> Result<()> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("box radius must be positive".into()))
    }
}

/// Exact test of `φ(m) S ∩ S ≠ ∅` for `S = [−R, R]^{k+1}`.
pub fn box_returns(p: &HomParam, m: &[i64], r: &Rational) -> Result<bool> {
    check_radius(r)?;
    let (a, b, c) = affine_parts(&gamma_element(p, m)?);
    let lo = std::cmp::max(-r.clone(), -r - &c);
    let hi = std::cmp::min(r.clone(), r - &c);
    if lo > hi {
        return Ok(false);
    }
    Ok(feasible(band(&a, &b, r), Some(lo), Some(hi)))
}

/// Exact test of `φ(m) C ∩ C ≠ ∅` for the unbounded set
/// `C = {(w, z) : |w|∞ ≤ R max(1, μ|z|)}` with `μ = max|X_ij| / max|Y_ij|`.
/// With `X = 0` this is the slab `[−R, R]^k × R`. Only meaningful on the
/// second chart, where `φ(m)` keeps `z` fixed.
pub fn cone_returns(p: &HomParam, m: &[i64], r: &Rational) -> Result<bool> {
    check_radius(r)?;
    let (a, b, _) = affine_parts(&gamma_element(p, m)?);
    let mu = widening_rate(p);
    if mu.is_zero() {
        return Ok(feasible(band(&a, &b, r), None, None));
    }
    let edge = mu.recip();
    let r_mu = r * &mu;
    Ok(feasible(band(&a, &b, r), Some(-edge.clone()), Some(edge.clone()))
        || feasible(widening_band(&a, &b, &r_mu, 1), Some(edge.clone()), None)
        || feasible(widening_band(&a, &b, &r_mu, -1), None, Some(-edge)))
}

/// Integer form of the return test. All quantities are multiplied by a
/// common denominator `q`, so `â = q a`, `b̂ = q b′`, `ĉ = q c` and
/// `r̂ = q R` are integers and the test needs only cross-multiplication.
struct FastKernel {
    k: usize,
    first_chart: bool,
    /// Branch 2: `D X`; branch 1: `D x` as a single row.
    lin: Vec<Vec<i128>>,
    /// `D Y`.
    y: Vec<Vec<i128>>,
    /// `D z` (branch 1 only).
    z: Vec<i128>,
    d: i128,
    /// `q R`.
    r_hat: i128,
    /// Widening rate of `C` as `(num, den)`.
    mu: (i128, i128),
}

/// `num / den` with `den > 0`.
#[derive(Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

fn lt(a: Frac, b: Frac) -> Option<bool> {
    Some(a.num.checked_mul(b.den)? < b.num.checked_mul(a.den)?)
}

fn to_i128(q: &BigInt) -> Option<i128> {
    q.to_i128()
}

impl FastKernel {
    fn new(p: &HomParam, r: &Rational) -> Option<Self> {
        let k = p.k();
        let mut entries: Vec<&Rational> = vec![r];
        let (lin_src, y_src, z_src): (Vec<Vec<Rational>>, _, Vec<Rational>) = match p {
            HomParam::Type1(p) => (vec![p.x().to_vec()], p.y().to_rows(), p.z().to_vec()),
            HomParam::Type2(p) => (p.x().to_rows(), p.y().to_rows(), Vec::new()),
        };
        entries.extend(lin_src.iter().flatten());
        entries.extend(y_src.iter().flatten());
        entries.extend(z_src.iter());
        let d = entries
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scale = |q: &Rational| to_i128(&(q * &d).to_integer());
        let scale_rows = |rows: &[Vec<Rational>]| -> Option<Vec<Vec<i128>>> {
            rows.iter()
                .map(|row| row.iter().map(scale).collect())
                .collect()
        };
        let first_chart = matches!(p, HomParam::Type1(_));
        let d128 = to_i128(&d)?;
        let q = if first_chart {
            d128.checked_mul(d128)?.checked_mul(d128)?.checked_mul(2)?
        } else {
            d128
        };
        let r_hat = to_i128(&(r * BigInt::from(q)).to_integer())?;
        let mu = widening_rate(p);
        let mu = (to_i128(mu.numer())?, to_i128(mu.denom())?);
        Some(Self {
            k,
            first_chart,
            lin: scale_rows(&lin_src)?,
            y: scale_rows(&y_src)?,
            z: z_src.iter().map(scale).collect::<Option<_>>()?,
            d: d128,
            r_hat,
            mu,
        })
    }

    fn row_dot(row: &[i128], m: &[i64]) -> Option<i128> {
        row.iter().zip(m).try_fold(0i128, |acc, (a, &v)| {
            acc.checked_add(a.checked_mul(v as i128)?)
        })
    }

    /// Writes `(â, b̂, ĉ)` for `m`; `None` on overflow. With `prune`, `â`
    /// and `b̂` are left unset once `|c| > 2R` rules out a box return.
    fn parts(&self, m: &[i64], a: &mut [i128], b: &mut [i128], prune: bool) -> Option<i128> {
        if self.first_chart {
            // c = C / D, a = C x_D / D², b′ = Y_D m / D + ½ C² x_D / D³, q = 2D³.
            let cc = Self::row_dot(&self.z, m)?;
            let c_hat = cc.checked_mul(self.d)?.checked_mul(self.d)?.checked_mul(2)?;
            if prune && c_hat.checked_abs()? > self.r_hat.checked_mul(2)? {
                return Some(c_hat);
            }
            let two_d = self.d.checked_mul(2)?;
            let two_dd = two_d.checked_mul(self.d)?;
            let cc2 = cc.checked_mul(cc)?;
            for i in 0..self.k {
                let x = self.lin[0][i];
                a[i] = two_d.checked_mul(cc)?.checked_mul(x)?;
                let ym = Self::row_dot(&self.y[i], m)?;
                b[i] = two_dd.checked_mul(ym)?.checked_add(cc2.checked_mul(x)?)?;
            }
            Some(c_hat)
        } else {
            for i in 0..self.k {
                a[i] = Self::row_dot(&self.lin[i], m)?;
                b[i] = Self::row_dot(&self.y[i], m)?;
            }
            Some(0)
        }
    }

    /// Integer counterpart of the rational `feasible`.
    fn feasible(
        constraints: impl IntoIterator<Item = Option<(i128, i128)>>,
        mut lo: Option<Frac>,
        mut hi: Option<Frac>,
    ) -> Option<bool> {
        for c in constraints {
            let (alpha, beta) = c?;
            if alpha == 0 {
                if beta > 0 {
                    return Some(false);
                }
                continue;
            }
            let t = if alpha > 0 {
                Frac { num: beta.checked_neg()?, den: alpha }
            } else {
                Frac { num: beta, den: alpha.checked_neg()? }
            };
            if alpha > 0 {
                if hi.map_or(Some(true), |hi| lt(t, hi))? {
                    hi = Some(t);
                }
            } else if lo.map_or(Some(true), |lo| lt(lo, t))? {
                lo = Some(t);
            }
        }
        Some(match (lo, hi) {
            (Some(lo), Some(hi)) => !lt(hi, lo)?,
            _ => true,
        })
    }

    fn band<'s>(&self, a: &'s [i128], b: &'s [i128]) -> impl Iterator<Item = Option<(i128, i128)>> + 's {
        let two_r = self.r_hat.checked_mul(2);
        a.iter().zip(b).flat_map(move |(&a, &b)| {
            [
                two_r.and_then(|t| Some((a, b.checked_sub(t)?))),
                two_r.and_then(|t| Some((a.checked_neg()?, b.checked_neg()?.checked_sub(t)?))),
            ]
        })
    }

    /// `|a_i z + b_i| ≤ 2R μ s z`, scaled by the denominator of `μ`.
    fn widening_band<'s>(
        &self,
        a: &'s [i128],
        b: &'s [i128],
        s: i128,
    ) -> impl Iterator<Item = Option<(i128, i128)>> + 's {
        let (num, den) = self.mu;
        let two = self
            .r_hat
            .checked_mul(num)
            .and_then(|v| v.checked_mul(2 * s));
        a.iter().zip(b).flat_map(move |(&a, &b)| {
            let (da, db) = (a.checked_mul(den), b.checked_mul(den));
            [
                (|| Some((da?.checked_sub(two?)?, db?)))(),
                (|| Some((da?.checked_neg()?.checked_sub(two?)?, db?.checked_neg()?)))(),
            ]
        })
    }

    fn box_returns(&self, m: &[i64], a: &mut [i128], b: &mut [i128]) -> Option<bool> {
        let c = self.parts(m, a, b, true)?;
        let q = if self.first_chart {
            self.d.checked_mul(self.d)?.checked_mul(self.d)?.checked_mul(2)?
        } else {
            self.d
        };
        let lo = std::cmp::max(-self.r_hat, (-self.r_hat).checked_sub(c)?);
        let hi = std::cmp::min(self.r_hat, self.r_hat.checked_sub(c)?);
        if lo > hi {
            return Some(false);
        }
        Self::feasible(
            self.band(a, b),
            Some(Frac { num: lo, den: q }),
            Some(Frac { num: hi, den: q }),
        )
    }

    fn cone_returns(&self, m: &[i64], a: &mut [i128], b: &mut [i128]) -> Option<bool> {
        self.parts(m, a, b, false)?;
        let (num, den) = self.mu;
        if num == 0 {
            return Self::feasible(self.band(a, b), None, None);
        }
        let edge = Frac { num: den, den: num };
        let minus_edge = Frac { num: -den, den: num };
        Some(
            Self::feasible(self.band(a, b), Some(minus_edge), Some(edge))?
                || Self::feasible(self.widening_band(a, b, 1), Some(edge), None)?
                || Self::feasible(self.widening_band(a, b, -1), None, Some(minus_edge))?,
        )
    }
}

/// Return tester with an exact integer fast path and a rational fallback.
struct Tester<'a> {
    p: &'a HomParam,
    r: &'a Rational,
    fast: Option<FastKernel>,
    a: Vec<i128>,
    b: Vec<i128>,
}

impl<'a> Tester<'a> {
    fn new(p: &'a HomParam, r: &'a Rational) -> Self {
        let k = p.k();
        Self {
            p,
            r,
            fast: FastKernel::new(p, r),
            a: vec![0; k],
            b: vec![0; k],
        }
    }

    fn box_returns(&mut self, m: &[i64]) -> bool {
        if let Some(f) = &self.fast {
            if let Some(v) = f.box_returns(m, &mut self.a, &mut self.b) {
                return v;
            }
        }
        box_returns(self.p, m, self.r).expect("validated input")
    }

    fn cone_returns(&mut self, m: &[i64]) -> bool {
        if let Some(f) = &self.fast {
            if let Some(v) = f.cone_returns(m, &mut self.a, &mut self.b) {
                return v;
            }
        }
        cone_returns(self.p, m, self.r).expect("validated input")
    }
}

/// Calls `f` on every `m ∈ [−n, n]^k` whose first nonzero entry is positive.
fn for_each_half(k: usize, n: i64, mut f: impl FnMut(&[i64])) {
    let mut m = vec![-n; k];
    loop {
        if m.iter().find(|v| **v != 0).is_some_and(|v| *v > 0) {
            f(&m);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if m[i] < n {
                m[i] += 1;
                break;
            }
            m[i] = -n;
        }
    }
}

fn sup_norm(m: &[i64]) -> u64 {
    m.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
}

/// Cumulative return counts at each radius of `radii`, counting `m` and
/// `−m` together.
fn cumulative(buckets: &[u64], radii: &[u64]) -> Vec<u64> {
    radii
        .iter()
        .map(|&n| buckets[1..=n as usize].iter().sum::<u64>())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Proper,
    NotProper,
    Inconclusive,
}

/// The family `{t · direction : 1 ≤ t ≤ multiples}`, every member of which
/// was checked to return.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReturnFamily {
    pub direction: Vec<i64>,
    pub multiples: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub box_radius: Rational,
    pub lattice_radii: Vec<u64>,
    /// Nonzero `m ∈ [−N, N]^k` with `φ(m) S ∩ S ≠ ∅`, per `N`.
    pub counts: Vec<u64>,
    /// The same for the widening set `C` (second chart only).
    pub cone_counts: Option<Vec<u64>>,
    pub verdict: Verdict,
    pub witness: Option<ReturnFamily>,
}

fn check_schedule(radii: &[u64]) -> Result<()> {
    if radii.is_empty() || radii[0] == 0 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSchedule);
    }
    if radii.last().is_some_and(|&n| n > i64::MAX as u64 / 4) {
        return Err(Error::InvalidSchedule);
    }
    Ok(())
}

/// Counts equal over the final `⌈n/2⌉` entries (at least two of them).
fn settled(counts: &[u64]) -> bool {
    let window = counts.len().div_ceil(2).max(2);
    counts.len() >= window && counts[counts.len() - window..].windows(2).all(|w| w[0] == w[1])
}

fn strictly_growing(counts: &[u64]) -> bool {
    counts.len() >= 2 && counts.windows(2).all(|w| w[0] < w[1])
}

fn gcd_all(m: &[i64]) -> i64 {
    m.iter().fold(0i64, |g, &v| g.gcd(&v))
}

/// Primitive integer direction spanning a rational kernel line.
fn integer_direction(v: &[Rational]) -> Result<Vec<i64>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, q| acc.gcd(q));
    ints.iter()
        .map(|q| {
            (q / &g)
                .to_i64()
                .ok_or_else(|| Error::InvalidArgument("kernel direction exceeds i64".into()))
        })
        .collect()
}

/// Looks for a primitive returning `m0` with `‖m0‖∞ ≤ reach` whose multiples
/// `t m0` return for every `t ≤ n_max`.
fn find_family(t: &mut Tester, k: usize, reach: u64, n_max: u64) -> Option<ReturnFamily> {
    let mut candidates = Vec::new();
    for_each_half(k, reach as i64, |m| {
        if gcd_all(m) == 1 {
            candidates.push(m.to_vec());
        }
    });
    candidates.sort_by_key(|m| sup_norm(m));
    let mut scratch = vec![0i64; k];
    for m0 in candidates {
        let ok = (1..=n_max as i64).all(|s| {
            for (dst, v) in scratch.iter_mut().zip(&m0) {
                *dst = v * s;
            }
            t.box_returns(&scratch)
        });
        if ok {
            return Some(ReturnFamily {
                direction: m0,
                multiples: n_max,
            });
        }
    }
    None
}

/// Counts box returns over the schedule and reads off a verdict.
///
/// A non-injective `φ` is reported `NotProper` at once with its kernel
/// direction as the witness. Otherwise `Proper` needs settled counts (and
/// settled counts on `C` for the second chart), and `NotProper` needs counts
/// growing at every step plus a verified family `{t m0}`.
pub fn oracle_verdict(p: &HomParam, r: &Rational, radii: &[u64]) -> Result<OracleReport> {
    check_radius(r)?;
    check_schedule(radii)?;
    let k = p.k();
    let n_max = *radii.last().expect("nonempty");
    let mut tester = Tester::new(p, r);
    let first_chart = matches!(p, HomParam::Type1(_));

    let mut buckets = vec![0u64; n_max as usize + 1];
    let mut cone_buckets = vec![0u64; n_max as usize + 1];
    for_each_half(k, n_max as i64, |m| {
        let n = sup_norm(m) as usize;
        if tester.box_returns(m) {
            buckets[n] += 2;
        }
        if !first_chart && tester.cone_returns(m) {
            cone_buckets[n] += 2;
        }
    });
    let counts = cumulative(&buckets, radii);
    let cone_counts = (!first_chart).then(|| cumulative(&cone_buckets, radii));

    let mut report = OracleReport {
        box_radius: r.clone(),
        lattice_radii: radii.to_vec(),
        counts,
        cone_counts,
        verdict: Verdict::Inconclusive,
        witness: None,
    };

    if let Some(v) = gamma_kernel_matrix(p).kernel_vector() {
        let direction = integer_direction(&v)?;
        let scaled = |s: i64| -> Option<Vec<i64>> {
            direction.iter().map(|v| v.checked_mul(s)).collect()
        };
        let verified = (1..=n_max as i64)
            .all(|s| scaled(s).is_some_and(|m| tester.box_returns(&m)));
        if verified {
            report.verdict = Verdict::NotProper;
            report.witness = Some(ReturnFamily {
                direction,
                multiples: n_max,
            });
        }
        return Ok(report);
    }

    let cone_settled = report.cone_counts.as_deref().map_or(true, settled);
    if settled(&report.counts) && cone_settled {
        report.verdict = Verdict::Proper;
    } else if strictly_growing(&report.counts) {
        if let Some(w) = find_family(&mut tester, k, radii[0], n_max) {
            report.verdict = Verdict::NotProper;
            report.witness = Some(w);
        }
    }
    Ok(report)
}
