//! Timing sweeps on BLS12-381: the three standard cases, then `n` and `t`
//! sweeps with their linear fits.
//!
//!     cargo run --release --example bench_scaling -- [reps]

use ftmcfe::bench::{run_bench, BenchCase, BenchReport};
use ftmcfe::pairing::Bls12;

fn show(title: &str, report: &BenchReport) {
    println!("== {title}");
    print!("{}", report.to_csv());
    for f in &report.fits {
        match f.fit {
            Some(fit) => println!(
                "fit {} vs {}: slope {:.3} ms, intercept {:.3} ms, r2 {:.4}",
                f.algorithm, f.variable, fit.slope, fit.intercept, fit.r2
            ),
            None => println!("fit {} vs {}: undefined", f.algorithm, f.variable),
        }
    }
}

fn main() -> ftmcfe::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);

    let standard = run_bench::<Bls12>(&BenchCase::standard(reps)?, 1)?;
    show("standard cases", &standard);
    let dec = |name| standard.case(name).and_then(|c| c.mean("dec")).unwrap();
    println!("dec(10,10) / dec(10,5) = {:.3}", dec("case-ii") / dec("case-i"));

    show("n sweep, t = 5", &run_bench::<Bls12>(&BenchCase::n_sweep(5, &[5, 10, 20, 40], reps)?, 2)?);
    show("t sweep, n = 20", &run_bench::<Bls12>(&BenchCase::t_sweep(20, &[5, 10, 15, 20], reps)?, 3)?);
    Ok(())
}
