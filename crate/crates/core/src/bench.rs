//! Wall-clock benchmarks of the four algorithms and linear trend fits.
//!
//! For a case `(n, t)` one repetition measures:
//! - `setup`: authority setup plus `client_init` for all `n` clients,
//! - `enc`: one encryption by each of the `n` clients,
//! - `pkeygen`: one partial key from each of the `n` clients, all online,
//! - `dec`: decryption over `B = {1..t}`, excluding the one-off discrete-log
//!   table and the untimed keys for `B`.
//!
//! Everything runs on the calling thread, after one untimed warm-up pass.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairing::{Backend, PairingContext};
use crate::poly::ParticipationSet;
use crate::scheme::{client_init, decrypt, encrypt, pkeygen, ta_setup, DlogConfig, FunctionVector};

pub const ALGORITHMS: [&str; 4] = ["setup", "pkeygen", "enc", "dec"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchCase {
    pub name: String,
    pub n: usize,
    pub t: usize,
    pub repetitions: usize,
}

impl BenchCase {
    pub fn new(name: impl Into<String>, n: usize, t: usize, repetitions: usize) -> Result<Self> {
        if repetitions == 0 {
            return Err(Error::Usage("repetitions must be at least 1".into()));
        }
        if t == 0 || t > n {
            return Err(Error::ThresholdOutOfRange { t, n });
        }
        Ok(Self { name: name.into(), n, t, repetitions })
    }

    /// `(10, 5)`, `(10, 10)` and `(20, 10)`.
    pub fn standard(repetitions: usize) -> Result<Vec<Self>> {
        [("case-i", 10, 5), ("case-ii", 10, 10), ("case-iii", 20, 10)]
            .into_iter()
            .map(|(name, n, t)| Self::new(name, n, t, repetitions))
            .collect()
    }

    /// Varying `n` at a fixed threshold.
    pub fn n_sweep(t: usize, ns: &[usize], repetitions: usize) -> Result<Vec<Self>> {
        ns.iter().map(|&n| Self::new(format!("n{n}-t{t}"), n, t, repetitions)).collect()
    }

    /// Varying `t = |B|` at a fixed `n`.
    pub fn t_sweep(n: usize, ts: &[usize], repetitions: usize) -> Result<Vec<Self>> {
        ts.iter().map(|&t| Self::new(format!("n{n}-t{t}"), n, t, repetitions)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub algorithm: String,
    pub mean_ms: f64,
    pub stddev_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: BenchCase,
    pub timings: Vec<Timing>,
}

impl CaseReport {
    pub fn mean(&self, algorithm: &str) -> Option<f64> {
        self.timings.iter().find(|t| t.algorithm == algorithm).map(|t| t.mean_ms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Mean time of one algorithm regressed on `n` or `t`; `fit` is `None`
/// when fewer than two distinct x values are available.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendFit {
    pub algorithm: String,
    pub variable: String,
    pub fit: Option<LinearFit>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub curve: String,
    pub threads: usize,
    pub cases: Vec<CaseReport>,
    pub fits: Vec<TrendFit>,
}

impl BenchReport {
    pub fn case(&self, name: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.case.name == name)
    }

    pub fn fit(&self, algorithm: &str) -> Option<LinearFit> {
        self.fits.iter().find(|f| f.algorithm == algorithm).and_then(|f| f.fit)
    }

    /// `case,algorithm,n,t,mean_ms,stddev_ms`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("case,algorithm,n,t,mean_ms,stddev_ms\n");
        for c in &self.cases {
            for t in &c.timings {
                out.push_str(&format!(
                    "{},{},{},{},{:.3},{:.3}\n",
                    c.case.name, t.algorithm, c.case.n, c.case.t, t.mean_ms, t.stddev_ms
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Ordinary least squares. `None` with fewer than two distinct x values;
/// `r2` is 1 when the y values are all equal.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(LinearFit { slope, intercept, r2 })
}

fn mean_std(samples: &[f64]) -> (f64, f64) {
    let k = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / k;
    let var = if samples.len() > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn bench_case<B: Backend>(case: &BenchCase, ctx: &PairingContext<B>, rng: &mut ChaCha20Rng) -> Result<CaseReport> {
    let (n, t) = (case.n, case.t);
    let mut samples: Vec<Vec<f64>> = (0..4).map(|_| Vec::with_capacity(case.repetitions)).collect();
    for rep in 0..case.repetitions {
        let start = Instant::now();
        let mpk = ta_setup(n, ctx, rng)?;
        let clients = (1..=n).map(|i| client_init::<B, _>(i, n, rng)).collect::<Result<Vec<_>>>()?;
        samples[0].push(ms_since(start));

        let set = ParticipationSet::new(n, 1..=t)?;
        let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=100)).collect();
        let ys: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=100)).collect();
        let y = FunctionVector::from_i64(&ys);
        let label = format!("{}:{rep}", case.name);

        let everyone = ParticipationSet::full(n);
        let start = Instant::now();
        for c in &clients {
            std::hint::black_box(pkeygen(&everyone, c, &y, t, &mpk)?);
        }
        samples[1].push(ms_since(start));
        let keys = set
            .members()
            .iter()
            .map(|&i| pkeygen(&set, &clients[i - 1], &y, t, &mpk))
            .collect::<Result<Vec<_>>>()?;

        let start = Instant::now();
        let cts = clients
            .iter()
            .map(|c| encrypt(xs[c.index - 1], c, t, &label, &mpk))
            .collect::<Result<Vec<_>>>()?;
        samples[2].push(ms_since(start));

        let expected: i64 = set.members().iter().map(|&i| xs[i - 1] * ys[i - 1]).sum();
        let table = mpk.dlog_table(DlogConfig::new((n as u64 * 10_000).max(1))?)?;
        let online = &cts[..t];
        let start = Instant::now();
        let got = decrypt(&set, &y, &keys, online, &label, &table, &mpk)?;
        samples[3].push(ms_since(start));
        if got != expected {
            return Err(Error::MismatchedInputs(format!("bench case {} decrypted {got}, expected {expected}", case.name)));
        }
    }
    let timings = ALGORITHMS
        .iter()
        .zip(&samples)
        .map(|(alg, s)| {
            let (mean_ms, stddev_ms) = mean_std(s);
            Timing { algorithm: alg.to_string(), mean_ms, stddev_ms }
        })
        .collect();
    Ok(CaseReport { case: case.clone(), timings })
}

/// Times every case and fits `setup`, `pkeygen`, `enc` against `n` and
/// `dec` against `t`.
pub fn run_bench<B: Backend>(cases: &[BenchCase], seed: u64) -> Result<BenchReport> {
    if cases.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ctx = PairingContext::<B>::init(B::CURVE)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    // One untimed pass so the first case does not absorb allocator and cache warm-up.
    let warmup = BenchCase { repetitions: 1, ..cases[0].clone() };
    bench_case(&warmup, &ctx, &mut rng)?;
    let reports = cases.iter().map(|c| bench_case(c, &ctx, &mut rng)).collect::<Result<Vec<_>>>()?;

    let fits = ALGORITHMS
        .iter()
        .map(|&alg| {
            let variable = if alg == "dec" { "t" } else { "n" };
            let xs: Vec<f64> = reports
                .iter()
                .map(|r| if alg == "dec" { r.case.t } else { r.case.n } as f64)
                .collect();
            let ys: Vec<f64> = reports.iter().map(|r| r.mean(alg).unwrap()).collect();
            TrendFit { algorithm: alg.into(), variable: variable.into(), fit: linear_fit(&xs, &ys) }
        })
        .collect();
    Ok(BenchReport { curve: B::CURVE.name().into(), threads: 1, cases: reports, fits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::ToyExponent;

    #[test]
    fn least_squares_examples() {
        let f = linear_fit(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && f.intercept.abs() < 1e-12 && (f.r2 - 1.0).abs() < 1e-12);
        let f = linear_fit(&[0.0, 1.0, 2.0, 3.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        // slope 0.8, intercept 1.3, residuals -0.3, 0.9, -0.9, 0.3 → r² = 1 - 1.8/5
        assert!((f.slope - 0.8).abs() < 1e-12);
        assert!((f.intercept - 1.3).abs() < 1e-12);
        assert!((f.r2 - 0.64).abs() < 1e-12);
        assert!(linear_fit(&[2.0], &[1.0]).is_none());
        assert!(linear_fit(&[2.0, 2.0], &[1.0, 3.0]).is_none());
    }

    #[test]
    fn degenerate_single_case() {
        let cases = vec![BenchCase::new("one", 3, 2, 1).unwrap()];
        let report = run_bench::<ToyExponent>(&cases, 1).unwrap();
        assert!(report.fits.iter().all(|f| f.fit.is_none()));
        assert_eq!(report.threads, 1);
        let csv = report.to_csv();
        assert!(csv.starts_with("case,algorithm,n,t,mean_ms,stddev_ms\none,setup,3,2,"));
        assert_eq!(csv.lines().count(), 5);
        assert!(run_bench::<ToyExponent>(&[], 1).is_err());
    }

    #[test]
    fn case_validation() {
        assert!(BenchCase::new("x", 3, 4, 1).is_err());
        assert!(BenchCase::new("x", 3, 2, 0).is_err());
        assert_eq!(BenchCase::standard(10).unwrap().len(), 3);
    }
}
