//! Acceptance suite: one line per criterion, `PASS` or `FAIL`.
//!
//! Run with `cargo test -p nilaffine-core --test acceptance`. Passing
//! criterion numbers as arguments runs only those.
//!
//! Criterion 3 asks for a first-chart crossing near `(0, I_2)`. Every
//! first-chart point within the probe radius has `Y` close to `I_2`, hence
//! invertible, hence proper, so that part cannot be met. The check is run
//! as stated and reported as `FAIL`; it does not fail the process.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilaffine::algebra::{int, pencil_coeffs, rat, Matrix, Rational};
use nilaffine::deformation::{canonicalize, g_act_param, stability_probe};
use nilaffine::hom::{approx_sequence, psi1, psi2, HomParam, Type2Param};
use nilaffine::oracle::{oracle_verdict, Verdict, DEFAULT_SCHEDULE};
use nilaffine::properness::{
    generic_dimension, halfdim_slice_proper, has_nonzero_real_eigenvalue, is_generic, is_proper,
    is_proper_lie,
};
use nilaffine::sampling::Sampler;
use num_traits::Zero;

const KNOWN_UNATTAINABLE: &[usize] = &[3];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn within(limit: Duration, start: Instant, out: Outcome) -> Outcome {
    let elapsed = start.elapsed();
    let pass = out.pass && elapsed < limit;
    Outcome::new(
        pass,
        format!("{}; {:.2?} (limit {:?})", out.detail, elapsed, limit),
    )
}

/// `[[0, −I], [I, 0]]` of even size `k`.
fn j(k: usize) -> Matrix {
    let h = k / 2;
    Matrix::from_fn(k, k, |r, c| {
        if r < h && c == r + h {
            int(-1)
        } else if r >= h && c + h == r {
            int(1)
        } else {
            int(0)
        }
    })
}

/// `diag(J_{k−1}, 0)` for odd `k`.
fn j_prime(k: usize) -> Matrix {
    let inner = j(k - 1);
    Matrix::from_fn(k, k, |r, c| {
        if r < k - 1 && c < k - 1 {
            inner[(r, c)].clone()
        } else {
            int(0)
        }
    })
}

fn binomial(n: u64, r: u64) -> i64 {
    (0..r).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in [2usize, 4] {
        let got = pencil_coeffs(&j(k), &Matrix::identity(k)).unwrap();
        // (1 + λ²)^{k/2}: coefficient of λ^{2i} is C(k/2, i).
        let want: Vec<Rational> = (0..=k)
            .map(|d| {
                if d % 2 == 0 {
                    int(binomial(k as u64 / 2, d as u64 / 2))
                } else {
                    int(0)
                }
            })
            .collect();
        if got.coeffs() != want.as_slice() {
            bad.push(k);
        }
    }
    within(
        Duration::from_secs(1),
        start,
        Outcome::new(bad.is_empty(), format!("mismatched k: {bad:?}")),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let cases = [(2, j(2)), (4, j(4)), (3, j_prime(3)), (5, j_prime(5))];
    for (k, x) in cases {
        let p = Type2Param::new(x, Matrix::identity(k)).unwrap();
        let proper = is_proper(&p.clone().into()).proper;
        if !(proper && is_generic(&p)) {
            bad.push(k);
        }
    }
    Outcome::new(bad.is_empty(), format!("failing k: {bad:?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let k = 2;
    let p = Type2Param::new(Matrix::zeros(k, k), Matrix::identity(k)).unwrap();
    let proper = is_proper(&p.clone().into()).proper;
    let generic = is_generic(&p);
    let report = stability_probe(&p.into(), &rat(1, 10), 400, 20_241_015).unwrap();
    let chart1 = report.crossings.iter().filter(|c| c.chart == 1).count();
    let chart2 = report.crossings.len() - chart1;
    let pass = proper && !generic && report.proper_fraction() < 1.0 && chart1 > 0;
    within(
        Duration::from_secs(30),
        start,
        Outcome::new(
            pass,
            format!(
                "proper={proper} generic={generic} trials={} proper_fraction={:.3} \
                 crossings: chart1={chart1} chart2={chart2}",
                report.trials,
                report.proper_fraction()
            ),
        ),
    )
}

fn criterion_4() -> Outcome {
    let t_prime = [2u64, 7, 16, 31];
    let mut bad = Vec::new();
    for k in 1..=4u64 {
        let d = generic_dimension(k).unwrap();
        // x, Y and z of the first chart.
        let m1 = k + k * k + k;
        if d.dim_t_prime != t_prime[k as usize - 1] || d.dim_m1r != m1 {
            bad.push(k);
        }
    }
    Outcome::new(bad.is_empty(), format!("failing k: {bad:?}"))
}

const CRITERION_5_SEED: u64 = 5;

/// The draws of criterion 5, shared with the parity check of criterion 9.
fn criterion_5_samples() -> Vec<HomParam> {
    let mut s = Sampler::new(CRITERION_5_SEED);
    let mut out = Vec::new();
    for k in 1..=4 {
        for branch in [1, 2] {
            out.extend((0..1000).map(|_| s.param(k, branch)));
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let samples = criterion_5_samples();
    let disagreements = samples
        .iter()
        .filter(|p| is_proper(p).proper != is_proper_lie(p))
        .count();
    let proper = samples.iter().filter(|p| is_proper(p).proper).count();
    within(
        Duration::from_secs(120),
        start,
        Outcome::new(
            disagreements == 0,
            format!(
                "{} samples, {proper} proper, {disagreements} disagreements",
                samples.len()
            ),
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(6);
    let one = int(1);
    let (mut agree, mut inconclusive, mut contradictions) = (0, 0, Vec::new());
    for k in 1..=3 {
        for branch in [1, 2] {
            for _ in 0..300 {
                let p = s.param(k, branch);
                let truth = is_proper(&p).proper;
                let report = oracle_verdict(&p, &one, &DEFAULT_SCHEDULE).unwrap();
                match report.verdict {
                    Verdict::Inconclusive => inconclusive += 1,
                    v if (v == Verdict::Proper) == truth => agree += 1,
                    _ => contradictions.push(p),
                }
            }
        }
    }
    for p in contradictions.iter().take(3) {
        eprintln!("  contradiction: {p:?}");
    }
    within(
        Duration::from_secs(600),
        start,
        Outcome::new(
            contradictions.is_empty(),
            format!(
                "agree={agree} inconclusive={inconclusive} contradictions={}",
                contradictions.len()
            ),
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut s = Sampler::new(7);
    let mut failures = 0;
    let mut total = 0;
    for branch in [1, 2] {
        for i in 0..1000 {
            let k = 1 + i % 4;
            let p = s.proper_param(k, branch);
            let h = s.group_element(k);
            let c = canonicalize(&p, true).unwrap();
            let moved = canonicalize(&g_act_param(&h, &p).unwrap(), true).unwrap();
            let again = canonicalize(c.param(), true).unwrap();
            total += 1;
            if !(c.satisfies_identity() && moved == c && again == c) {
                failures += 1;
            }
        }
    }
    Outcome::new(failures == 0, format!("{total} parameters, {failures} failures"))
}

fn criterion_8() -> Outcome {
    let mut s = Sampler::new(8);
    let mut disagreements = 0;
    let mut proper = 0;
    for k in [2, 3] {
        for _ in 0..500 {
            let x = s.matrix(k);
            let slice = halfdim_slice_proper(&x).unwrap();
            let eig = !has_nonzero_real_eigenvalue(&x).unwrap();
            proper += slice as usize;
            if slice != eig {
                disagreements += 1;
            }
        }
    }
    Outcome::new(
        disagreements == 0,
        format!("1000 matrices, {proper} proper, {disagreements} disagreements"),
    )
}

fn criterion_9() -> Outcome {
    let mut s = Sampler::new(9);
    let mut closure_failures = 0;
    let mut worst = 0.0f64;
    for i in 0..100 {
        let k = 1 + i % 4;
        let p = s.rank_one_type2(k);
        let target = psi2(&p);
        let d: Vec<f64> = [10u64, 100, 1000]
            .iter()
            .map(|&l| psi1(&approx_sequence(&p, l).unwrap()).matrix_distance(&target))
            .collect();
        worst = worst.max(d[2]);
        if !(d[0] > d[1] && d[1] > d[2] && d[2] < 1e-2) {
            closure_failures += 1;
        }
    }
    let parity_failures = criterion_5_samples()
        .iter()
        .filter(|p| match p {
            HomParam::Type2(q) if q.k() % 2 == 1 => {
                is_proper(p).proper && !q.x().det().unwrap().is_zero()
            }
            _ => false,
        })
        .count();
    Outcome::new(
        closure_failures == 0 && parity_failures == 0,
        format!(
            "closure failures={closure_failures} (worst distance at l=1000: {worst:.2e}), \
             parity failures={parity_failures}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("pencil exactness", criterion_1),
        ("sample points", criterion_2),
        ("non-interior point", criterion_3),
        ("dimension table", criterion_4),
        ("criterion-criterion agreement", criterion_5),
        ("criterion-oracle agreement", criterion_6),
        ("canonicalization", criterion_7),
        ("eigenvalue slice", criterion_8),
        ("closure relation", criterion_9),
    ];
    let selected: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !selected.is_empty() && !selected.contains(&n) {
            continue;
        }
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        let note = if !out.pass && KNOWN_UNATTAINABLE.contains(&n) {
            " [known unattainable]"
        } else {
            ""
        };
        println!("criterion {n} ({name}): {status}{note} - {}", out.detail);
        if !out.pass && !KNOWN_UNATTAINABLE.contains(&n) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
