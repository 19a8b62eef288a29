//! Command-line front end. Every failure is reported on stderr as one JSON
//! line `{"error": <code>, "message": <text>}` with a nonzero exit status.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::rngs::OsRng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::bench::{run_bench, BenchCase};
use crate::error::{Error, Result};
use crate::harness::{client_file, read_client, read_mpk, run_round, write_sealed, KeyStore, RoundSpec, MPK_FILE};
use crate::pairing::{scalar_to_bytes, Bls12, CurveId, PairingContext};
use crate::poly::ParticipationSet;
use crate::scheme::{
    client_init, decrypt, encrypt, pkeygen, ta_setup, ta_setup_retaining_gamma, Ciphertext, DlogConfig,
    FunctionVector, PartialFunctionalKey, DEFAULT_DLOG_BOUND,
};

pub const ORACLE_ENV: &str = "FTMCFE_TEST_ORACLE";
pub const GAMMA_FILE: &str = "gamma.insecure";

#[derive(Debug, Parser)]
#[command(name = "ftmcfe", version, about = "Flexible-threshold multi-client inner-product encryption")]
pub struct Cli {
    /// Allow test-only behaviour such as retaining the setup trapdoor.
    #[arg(long, global = true)]
    pub insecure_test: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Authority setup: writes the public parameters for `n` clients.
    Setup {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "bls12-381")]
        curve: String,
    },
    /// Creates client `index`'s key pair next to the public parameters.
    ClientInit {
        #[arg(long)]
        index: usize,
        #[arg(long)]
        keys: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Issues a partial functional key for `y` over the online set.
    Pkeygen {
        #[arg(long)]
        keys: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        members: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        y: Vec<i64>,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypts one value; also writes `<out>.json` with routing metadata.
    Encrypt {
        #[arg(long)]
        keys: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        value: i64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        label: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Combines partial keys and ciphertexts and prints the inner product.
    Decrypt {
        #[arg(long)]
        keys: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        y: Vec<i64>,
        #[arg(long)]
        label: String,
        #[arg(long, value_delimiter = ',', required = true)]
        partial_keys: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        ciphertexts: Vec<PathBuf>,
        /// Online set; defaults to the ciphertext senders.
        #[arg(long, value_delimiter = ',')]
        members: Option<Vec<usize>>,
        #[arg(long, default_value_t = DEFAULT_DLOG_BOUND)]
        bound: u64,
    },
    /// Runs one aggregation round from a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Key store directory; created from `--seed` when missing.
        #[arg(long)]
        keys: Option<PathBuf>,
        /// Directory for `result.json` and `metrics.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Times the four algorithms; writes `bench.csv` and `bench.json`.
    Bench {
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Single case instead of the standard three.
        #[arg(long, requires = "t")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn rng_from(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_rng(OsRng).expect("OS randomness"),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, bytes)?;
    Ok(())
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn oracle_requested(env_oracle: bool, insecure: bool) -> Result<bool> {
    if env_oracle && !insecure {
        return Err(Error::Usage(format!("{ORACLE_ENV}=1 requires --insecure-test")));
    }
    Ok(env_oracle)
}

/// Executes a parsed command, writing normal output to `out`.
pub fn execute(cli: Cli, env_oracle: bool, out: &mut dyn Write) -> Result<()> {
    let oracle = oracle_requested(env_oracle, cli.insecure_test)?;
    match cli.command {
        Command::Setup { n, out: dir, seed, curve } => {
            let curve: CurveId = curve.parse()?;
            if curve != CurveId::Bls12_381 {
                return Err(Error::UnsupportedCurve(format!("{} is not available from the command line", curve.name())));
            }
            let ctx = PairingContext::<Bls12>::init(curve)?;
            let mut rng = rng_from(seed);
            fs::create_dir_all(&dir)?;
            let mpk = if oracle {
                let (mpk, gamma) = ta_setup_retaining_gamma(n, &ctx, &mut rng)?;
                let hex: String = scalar_to_bytes(&gamma.0).iter().map(|b| format!("{b:02x}")).collect();
                fs::write(dir.join(GAMMA_FILE), hex)?;
                mpk
            } else {
                ta_setup(n, &ctx, &mut rng)?
            };
            write_sealed(&dir.join(MPK_FILE), &mpk.to_bytes())?;
            writeln!(out, "{}", dir.join(MPK_FILE).display())?;
        }
        Command::ClientInit { index, keys, seed } => {
            let mpk = read_mpk::<Bls12>(&keys.join(MPK_FILE))?;
            let ck = client_init::<Bls12, _>(index, mpk.n, &mut rng_from(seed))?;
            let path = keys.join(client_file(index));
            write_sealed(&path, &ck.to_bytes())?;
            writeln!(out, "{}", path.display())?;
        }
        Command::Pkeygen { keys, index, members, y, t, out: path } => {
            let mpk = read_mpk::<Bls12>(&keys.join(MPK_FILE))?;
            let sk = read_client::<Bls12>(&keys.join(client_file(index)))?;
            let set = ParticipationSet::new(mpk.n, members)?;
            let key = pkeygen(&set, &sk, &FunctionVector::from_i64(&y), t, &mpk)?;
            write_file(&path, &key.to_bytes())?;
            writeln!(out, "{}", path.display())?;
        }
        Command::Encrypt { keys, index, value, t, label, out: path } => {
            let mpk = read_mpk::<Bls12>(&keys.join(MPK_FILE))?;
            let ek = read_client::<Bls12>(&keys.join(client_file(index)))?;
            let ct = encrypt(value, &ek, t, &label, &mpk)?;
            write_file(&path, &ct.to_bytes())?;
            let meta = serde_json::to_string(&ct.meta(mpk.n)).expect("metadata serializes");
            let mut side = path.clone().into_os_string();
            side.push(".json");
            fs::write(side, meta)?;
            writeln!(out, "{}", path.display())?;
        }
        Command::Decrypt { keys, y, label, partial_keys, ciphertexts, members, bound } => {
            let mpk = read_mpk::<Bls12>(&keys.join(MPK_FILE))?;
            let pks = partial_keys
                .iter()
                .map(|p| PartialFunctionalKey::<Bls12>::from_bytes(&read_file(p)?))
                .collect::<Result<Vec<_>>>()?;
            let cts = ciphertexts
                .iter()
                .map(|p| Ciphertext::<Bls12>::from_bytes(&read_file(p)?))
                .collect::<Result<Vec<_>>>()?;
            let members = members.unwrap_or_else(|| cts.iter().map(|c| c.index).collect());
            let set = ParticipationSet::new(mpk.n, members)?;
            let table = mpk.dlog_table(DlogConfig::new(bound)?)?;
            let v = decrypt(&set, &FunctionVector::from_i64(&y), &pks, &cts, &label, &table, &mpk)?;
            writeln!(out, "{v}")?;
        }
        Command::Simulate { config, keys, out: out_dir, seed } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Error::ConfigParse(format!("{}: {e}", config.display())))?;
            let spec = RoundSpec::from_json(&text)?;
            let key_seed = seed.or(spec.seed).unwrap_or(0);
            let store = match keys {
                Some(dir) if dir.join(MPK_FILE).exists() => KeyStore::<Bls12>::load(&dir)?,
                Some(dir) => KeyStore::<Bls12>::init(spec.n(), &dir, key_seed)?,
                None => KeyStore::<Bls12>::generate(spec.n(), key_seed)?,
            };
            let result = run_round(&spec, &store, &spec.gradients_or_synthetic())?;
            let json = serde_json::to_string_pretty(&result).expect("result serializes");
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("result.json"), &json)?;
                fs::write(dir.join("metrics.csv"), result.metrics_csv())?;
            }
            writeln!(out, "{json}")?;
        }
        Command::Bench { reps, seed, n, t, out: out_dir } => {
            let cases = match (n, t) {
                (Some(n), Some(t)) => vec![BenchCase::new(format!("n{n}-t{t}"), n, t, reps)?],
                _ => BenchCase::standard(reps)?,
            };
            let report = run_bench::<Bls12>(&cases, seed)?;
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("bench.csv"), report.to_csv())?;
                fs::write(dir.join("bench.json"), report.to_json())?;
            }
            writeln!(out, "# threads={} curve={}", report.threads, report.curve)?;
            write!(out, "{}", report.to_csv())?;
        }
    }
    Ok(())
}

/// One-line machine-readable form of `err`.
pub fn error_line(err: &Error) -> String {
    serde_json::json!({ "error": err.code(), "message": err.to_string() }).to_string()
}

/// Parses `args`, runs, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", error_line(&Error::Usage(first.to_string())));
            return 2;
        }
    };
    let env_oracle = std::env::var(ORACLE_ENV).map(|v| v == "1").unwrap_or(false);
    let stdout = std::io::stdout();
    match execute(cli, env_oracle, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_line(&e));
            1
        }
    }
}
