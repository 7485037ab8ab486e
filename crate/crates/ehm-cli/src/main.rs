//! `ehm` — command-line front end for the extended-Harper numerics crate.
//!
//! Every command resolves its parameters, runs a deterministic computation,
//! builds the complete output payload in memory, and only then writes it
//! (stdout by default, `--out FILE` otherwise) — an aborted run never leaves
//! a partial file. Payloads carry a provenance header (version, resolved
//! parameters, seed) and horizontal reruns with the same flags are
//! byte-identical. CSV floats use 17 significant digits so they round-trip;
//! JSON floats use the shortest round-trip representation.
//!
//! Exit codes: 0 success, 2 invalid input or usage, 3 numerical contract
//! violation (two computations that must agree did not, or a verification
//! criterion failed).

use clap::{Args, Parser, Subcommand};
use ehm_core::birkhoff::AnalyticTorusFunction;
use ehm_core::cocycle::lyapunov;
use ehm_core::contfrac::{cf_expand, estimate_beta, select_subsequence, FrequencyCF};
use ehm_core::duality::{
    conjugacy_residual, det_identity_check, dual_equation_residual, sequence_to_torus,
};
use ehm_core::model::{classify, dual_has_singularity, sigma, CouplingTriple, Phase};
use ehm_core::spectral::{approximant_spectrum, point_spectrum_probe, truncated_eigensystem};
use ehm_core::verify;
use ehm_core::winding::{factorize, verify_factorization, winding_number};
use ehm_core::{C64, EhmError, GOLDEN};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

/// Golden-ratio frequency used by the pinned parameter bundle.
const PRESET_ALPHA: f64 = GOLDEN;

#[derive(Parser)]
#[command(
    name = "ehm",
    version,
    about = "Numerics for the self-dual extended Harper model",
    long_about = "Numerics for the self-dual extended Harper model: coupling taxonomy, winding \
                  factorization, Birkhoff-sum certificates, Lyapunov exponents, Hofstadter \
                  butterflies, localization probes, duality checks, and the end-to-end \
                  verification suite.\n\nAll outputs are deterministic; rerunning a command with \
                  identical flags reproduces the payload byte for byte."
)]
struct Cli {
    /// Cap on worker threads for parallel sweeps (fallback: EHM_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Recorded in the provenance header. Commands sample deterministically
    /// from fixed internal streams; this value tags the run for downstream
    /// tooling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the payload to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Fill any parameter not given explicitly with the pinned example
    /// bundle ("paper" is the only bundle).
    #[arg(long, global = true, value_parser = ["paper"])]
    preset: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TripleArgs {
    /// Coupling λ1 ≥ 0.
    #[arg(long)]
    l1: Option<f64>,
    /// Coupling λ2 > 0.
    #[arg(long)]
    l2: Option<f64>,
    /// Coupling λ3 ≥ 0.
    #[arg(long)]
    l3: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a coupling triple: region, boundary lines, dual couplings.
    #[command(after_help = "Output: JSON {region, flags, interior, sigma, dual_singularity}.")]
    Classify {
        #[command(flatten)]
        triple: TripleArgs,
    },

    /// Winding factorization of the dual symbol phase.
    #[command(after_help = "Output: JSON {roots, single_root, winding_number, delta0, c_bound, \
                            mean_f, max_residual, conj_residual}.\nWith --samples-out FILE: CSV \
                            with columns theta,f — the phase function on the construction grid.")]
    Winding {
        #[command(flatten)]
        triple: TripleArgs,
        /// Frequency α ∈ (0, 1).
        #[arg(long)]
        alpha: Option<f64>,
        /// Construction grid (power of two ≥ 64).
        #[arg(long)]
        grid: Option<usize>,
        /// Also emit the (θ, f(θ)) samples as CSV to this file.
        #[arg(long, value_name = "FILE")]
        samples_out: Option<PathBuf>,
    },

    /// Certified Birkhoff-sum smallness along selected denominators.
    #[command(
        name = "birkhoff-verify",
        after_help = "Output (csv): columns m,q,sup,bound — convergent index, denominator, \
                      certified sup of |S_q f|, guaranteed analytic bound.\nOutput (json): the \
                      same rows plus the continued-fraction report {terms, convergents, \
                      beta_samples, beta}.\nThe approximation exponent is estimated over the \
                      tail of the stored expansion; measured values below 0.05 are treated as \
                      zero (a finite expansion cannot certify a positive limsup), which selects \
                      every index instead of the exponential-gap subsequence."
    )]
    BirkhoffVerify {
        /// Frequency as a float (continued fraction is expanded numerically).
        #[arg(long, conflicts_with = "alpha_cf")]
        alpha: Option<f64>,
        /// Frequency as explicit partial quotients, e.g. 1,1,1,1,1,1.
        #[arg(long, value_name = "A1,A2,...")]
        alpha_cf: Option<String>,
        /// Observable: builtin:sin1+0.5sin2, or file:PATH with CSV rows n,re,im.
        #[arg(long)]
        f: Option<String>,
        /// Analyticity width for file: observables (builtin has its own).
        #[arg(long)]
        delta0: Option<f64>,
        /// Number of continued-fraction levels to store.
        #[arg(long)]
        levels: Option<usize>,
        /// Payload format.
        #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
        format: String,
    },

    /// Lyapunov exponent sweep over an energy interval.
    #[command(
        allow_negative_numbers = true,
        after_help = "Output: CSV with columns E,le_raw,le_regularized — energy, raw exponent \
                      of the full cocycle, and the exponent after subtracting the mean log \
                      modulus of the hopping symbol."
    )]
    Lyapunov {
        #[command(flatten)]
        triple: TripleArgs,
        /// Frequency α ∈ (0, 1).
        #[arg(long)]
        alpha: Option<f64>,
        /// Lowest energy of the sweep.
        #[arg(long)]
        emin: Option<f64>,
        /// Highest energy of the sweep.
        #[arg(long)]
        emax: Option<f64>,
        /// Number of energies (endpoints included).
        #[arg(long)]
        esteps: Option<usize>,
        /// Iteration steps per sample orbit.
        #[arg(long)]
        n: Option<u64>,
        /// Number of equidistributed starting phases averaged per energy.
        #[arg(long)]
        samples: Option<usize>,
    },

    /// Band spectra of all periodic approximants up to a denominator cap.
    #[command(after_help = "Output: CSV with columns p,q,band_index,E_min,E_max — one row per \
                            merged band of the q-periodic approximant at flux p/q, for every \
                            reduced fraction with q <= qmax.")]
    Butterfly {
        #[command(flatten)]
        triple: TripleArgs,
        /// Largest approximant denominator.
        #[arg(long)]
        qmax: Option<u64>,
        /// Phase and momentum grid per approximant (>= 8).
        #[arg(long)]
        grids: Option<usize>,
    },

    /// Localization probe: filtered IPR statistics over phases and sizes.
    #[command(
        allow_negative_numbers = true,
        after_help = "Output: JSON rows, one per (theta, N): max inverse participation ratio \
                      over mid-spectrum eigenvectors with negligible boundary mass, the energy \
                      attaining it, and how many eigenpairs contributed. Phases from \
                      --theta-rational come first, then --theta values."
    )]
    Probe {
        #[command(flatten)]
        triple: TripleArgs,
        /// Frequency α ∈ (0, 1).
        #[arg(long)]
        alpha: Option<f64>,
        /// Special phase 2θ = jα + k, given as j,k. May repeat.
        #[arg(long, value_name = "J,K")]
        theta_rational: Vec<String>,
        /// Generic phase value. May repeat.
        #[arg(long)]
        theta: Vec<f64>,
        /// Window halfwidths, e.g. 1000,2000,4000.
        #[arg(long, value_name = "N1,N2,...")]
        n_list: Option<String>,
    },

    /// Duality diagnostics for a localized truncated eigenvector.
    #[command(
        name = "duality-check",
        allow_negative_numbers = true,
        after_help = "Output: JSON {r1, r2, conjugacy_residual, b_estimate, \
                      relative_variation, energy, n_half} — residuals of the two dual \
                      eigenvalue equations, the transfer-cocycle conjugacy defect, and the \
                      determinant-identity statistics, for the strongest bulk-localized \
                      eigenvector of the size-N truncation."
    )]
    DualityCheck {
        #[command(flatten)]
        triple: TripleArgs,
        /// Frequency α ∈ (0, 1).
        #[arg(long)]
        alpha: Option<f64>,
        /// Special phase 2θ = jα + k, given as j,k.
        #[arg(long, value_name = "J,K", conflicts_with = "theta")]
        theta_rational: Option<String>,
        /// Generic phase value.
        #[arg(long)]
        theta: Option<f64>,
        /// Truncation window halfwidth N (sites −N..N).
        #[arg(long, value_name = "N")]
        from_truncation: Option<usize>,
    },

    /// Run the numbered verification suite.
    #[command(
        name = "verify-all",
        after_help = "Output (text): one line per criterion. Output (json): the full report \
                      array. Exits 3 if any selected criterion fails."
    )]
    VerifyAll {
        /// Comma-separated criterion numbers (default: all of 1..=11).
        #[arg(long, value_name = "I,J,...")]
        criteria: Option<String>,
        /// Payload format.
        #[arg(long, value_parser = ["text", "json"], default_value = "text")]
        format: String,
    },
}

/// Errors mapped to process exit codes.
enum CliError {
    /// Bad input or usage → exit 2.
    Validation(String),
    /// A numerical invariant failed → exit 3.
    Contract(String),
}

impl From<EhmError> for CliError {
    fn from(e: EhmError) -> Self {
        match e {
            EhmError::Contract(msg) => CliError::Contract(msg),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// Float with 17 significant digits (round-trip safe) for CSV payloads.
fn csv_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct Provenance {
    version: &'static str,
    command: &'static str,
    parameters: BTreeMap<String, String>,
    seed: u64,
}

impl Provenance {
    fn new(command: &'static str, seed: u64) -> Self {
        Provenance {
            version: env!("CARGO_PKG_VERSION"),
            command,
            parameters: BTreeMap::new(),
            seed,
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn csv_header(&self) -> String {
        let params = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "# version={}\n# command={}\n# parameters: {}\n# seed={}\n",
            self.version, self.command, params, self.seed
        )
    }
}

/// JSON payload wrapper: provenance first, then the command's report.
fn json_payload<T: Serialize>(prov: &Provenance, body: &T) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Payload<'a, T> {
        provenance: &'a Provenance,
        #[serde(flatten)]
        body: &'a T,
    }
    serde_json::to_string_pretty(&Payload { provenance: prov, body })
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Contract(format!("serialization failed: {e}")))
}

/// Resolve a parameter: explicit flag, else preset value, else an error
/// naming the missing flag.
fn resolve<T>(explicit: Option<T>, preset: bool, preset_value: T, flag: &str) -> Result<T, CliError> {
    match explicit {
        Some(v) => Ok(v),
        None if preset => Ok(preset_value),
        None => Err(CliError::Validation(format!(
            "missing --{flag} (give it explicitly or use --preset paper)"
        ))),
    }
}

fn resolve_triple(
    t: &TripleArgs,
    preset: bool,
    pv: (f64, f64, f64),
) -> Result<CouplingTriple, CliError> {
    let l1 = resolve(t.l1, preset, pv.0, "l1")?;
    let l2 = resolve(t.l2, preset, pv.1, "l2")?;
    let l3 = resolve(t.l3, preset, pv.2, "l3")?;
    Ok(CouplingTriple::new(l1, l2, l3)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| CliError::Validation(format!("bad {what} entry '{tok}'")))
        })
        .collect()
}

fn parse_pair(s: &str, what: &str) -> Result<(i64, i64), CliError> {
    let v: Vec<i64> = parse_list(s, what)?;
    if v.len() != 2 {
        return Err(CliError::Validation(format!(
            "{what} needs exactly two integers j,k, got '{s}'"
        )));
    }
    Ok((v[0], v[1]))
}

fn check_alpha(alpha: f64) -> Result<f64, CliError> {
    if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
        Ok(alpha)
    } else {
        Err(CliError::Validation(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )))
    }
}

/// Write the payload: a file when --out is given, stdout otherwise. Payloads
/// are fully built before this is called, so no partial file can appear.
fn emit(out: &Option<PathBuf>, payload: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn init_threads(cli_threads: Option<usize>) -> Result<(), CliError> {
    let n = match cli_threads {
        Some(n) => Some(n),
        None => match std::env::var("EHM_THREADS") {
            Ok(s) => Some(s.parse::<usize>().map_err(|_| {
                CliError::Validation(format!("EHM_THREADS must be a positive integer, got '{s}'"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Validation("thread count must be >= 1".into()));
        }
        // A second initialization in the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Contract(msg)) => {
            eprintln!("numerical contract violated: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads(cli.threads)?;
    let preset = cli.preset.is_some();
    let seed = cli.seed;
    match &cli.command {
        Command::Classify { triple } => {
            let lam = resolve_triple(triple, preset, (0.3, 0.5, 0.2))?;
            let label = classify(&lam);
            let dual = sigma(&lam);
            let mut prov = Provenance::new("classify", seed);
            prov.param("l1", lam.l1).param("l2", lam.l2).param("l3", lam.l3);
            #[derive(Serialize)]
            struct Body {
                region: ehm_core::model::Region,
                flags: Vec<ehm_core::model::Line>,
                interior: bool,
                sigma: [f64; 3],
                dual_singularity: bool,
            }
            let body = Body {
                region: label.region,
                flags: label.boundary_flags.clone(),
                interior: label.interior,
                sigma: [dual.l1, dual.l2, dual.l3],
                dual_singularity: dual_has_singularity(&lam),
            };
            emit(&cli.out, &json_payload(&prov, &body)?)
        }

        Command::Winding {
            triple,
            alpha,
            grid,
            samples_out,
        } => {
            let lam = resolve_triple(triple, preset, (0.2, 1.0, 1.0))?;
            let alpha = check_alpha(resolve(*alpha, preset, PRESET_ALPHA, "alpha")?)?;
            let grid = resolve(*grid, true, 1024, "grid")?;
            let w = factorize(&lam, alpha, grid)?;
            let check = verify_factorization(&w, grid);
            let mut prov = Provenance::new("winding", seed);
            prov.param("l1", lam.l1)
                .param("l2", lam.l2)
                .param("l3", lam.l3)
                .param("alpha", alpha)
                .param("grid", grid);
            #[derive(Serialize)]
            struct Body {
                roots: [[f64; 2]; 2],
                single_root: bool,
                reflected: bool,
                winding_number: i64,
                delta0: f64,
                c_bound: f64,
                mean_f: f64,
                max_residual: f64,
                conj_residual: f64,
            }
            let body = Body {
                roots: [
                    [w.roots.0.re, w.roots.0.im],
                    [w.roots.1.re, w.roots.1.im],
                ],
                single_root: w.single_root,
                reflected: w.reflected,
                winding_number: winding_number(&w, grid),
                delta0: w.delta0,
                c_bound: w.c_bound,
                mean_f: check.mean_f,
                max_residual: check.max_residual,
                conj_residual: check.conj_residual,
            };
            // Both payloads are finished before anything is written.
            let main_payload = json_payload(&prov, &body)?;
            let samples_payload = samples_out.as_ref().map(|_| {
                let mut s = prov.csv_header();
                s.push_str("theta,f\n");
                for (j, &v) in w.f_samples.iter().enumerate() {
                    let theta = j as f64 / w.f_samples.len() as f64;
                    let _ = writeln!(s, "{},{}", csv_f64(theta), csv_f64(v));
                }
                s
            });
            emit(&cli.out, &main_payload)?;
            if let (Some(path), Some(payload)) = (samples_out, samples_payload) {
                emit(&Some(path.clone()), &payload)?;
            }
            Ok(())
        }

        Command::BirkhoffVerify {
            alpha,
            alpha_cf,
            f,
            delta0,
            levels,
            format,
        } => {
            let levels = resolve(*levels, true, 18, "levels")?;
            if levels < 2 {
                return Err(CliError::Validation("need at least 2 levels".into()));
            }
            let cf = match (alpha, alpha_cf) {
                (Some(a), None) => cf_expand(check_alpha(*a)?, levels)?,
                (None, Some(terms)) => {
                    let t: Vec<u64> = parse_list(terms, "partial quotient")?;
                    FrequencyCF::from_terms(&t)?
                }
                (None, None) if preset => cf_expand(PRESET_ALPHA, levels)?,
                _ => {
                    return Err(CliError::Validation(
                        "give exactly one of --alpha / --alpha-cf (or use --preset paper)".into(),
                    ))
                }
            };
            let spec = resolve(f.clone(), true, "builtin:sin1+0.5sin2".to_string(), "f")?;
            let func = match spec.as_str() {
                "builtin:sin1+0.5sin2" => AnalyticTorusFunction::from_modes(
                    &[
                        (1, C64::new(0.0, -0.5)),
                        (-1, C64::new(0.0, 0.5)),
                        (2, C64::new(0.0, -0.25)),
                        (-2, C64::new(0.0, 0.25)),
                    ],
                    std::f64::consts::LN_2 / std::f64::consts::TAU,
                )?,
                other => match other.strip_prefix("file:") {
                    Some(path) => {
                        let d0 = delta0.ok_or_else(|| {
                            CliError::Validation(
                                "file: observables need --delta0 (analyticity width)".into(),
                            )
                        })?;
                        let text = std::fs::read_to_string(path).map_err(|e| {
                            CliError::Validation(format!("cannot read {path}: {e}"))
                        })?;
                        let mut modes = Vec::new();
                        for (ln, line) in text.lines().enumerate() {
                            let line = line.trim();
                            if line.is_empty() || line.starts_with('#') || line == "n,re,im" {
                                continue;
                            }
                            let parts: Vec<&str> = line.split(',').collect();
                            if parts.len() != 3 {
                                return Err(CliError::Validation(format!(
                                    "{path}:{}: expected n,re,im",
                                    ln + 1
                                )));
                            }
                            let n: i64 = parts[0].trim().parse().map_err(|_| {
                                CliError::Validation(format!("{path}:{}: bad mode index", ln + 1))
                            })?;
                            let re: f64 = parts[1].trim().parse().map_err(|_| {
                                CliError::Validation(format!("{path}:{}: bad real part", ln + 1))
                            })?;
                            let im: f64 = parts[2].trim().parse().map_err(|_| {
                                CliError::Validation(format!("{path}:{}: bad imag part", ln + 1))
                            })?;
                            modes.push((n, C64::new(re, im)));
                        }
                        AnalyticTorusFunction::from_modes(&modes, d0)?
                    }
                    None => {
                        return Err(CliError::Validation(format!(
                            "unknown observable '{spec}' (builtin:sin1+0.5sin2 or file:PATH)"
                        )))
                    }
                },
            };
            // A finite expansion cannot certify a positive limsup; tiny
            // measured exponents are finite-size noise and select every index.
            let tail_start = (2 * cf.depth() / 3).max(1);
            let beta_est = estimate_beta(&cf, tail_start)?;
            let beta = if beta_est.beta < 0.05 { 0.0 } else { beta_est.beta };
            let sub = select_subsequence(&cf, beta)?;
            let report = ehm_core::birkhoff::verify_uniform_lemma(&func, &cf, &sub, 4096)?;
            let mut prov = Provenance::new("birkhoff-verify", seed);
            match (alpha, alpha_cf) {
                (Some(a), _) => prov.param("alpha", a),
                (_, Some(t)) => prov.param("alpha_cf", t),
                _ => prov.param("alpha", PRESET_ALPHA),
            };
            prov.param("f", &spec)
                .param("levels", levels)
                .param("beta", beta)
                .param("format", format);
            let payload = if format == "json" {
                #[derive(Serialize)]
                struct Frequency {
                    terms: Vec<u64>,
                    convergents: Vec<[String; 2]>,
                    beta_samples: Vec<(f64, f64)>,
                    beta: f64,
                }
                #[derive(Serialize)]
                struct Body {
                    frequency: Frequency,
                    rows: Vec<ehm_core::birkhoff::BirkhoffRow>,
                }
                let body = Body {
                    frequency: Frequency {
                        terms: cf.terms.clone(),
                        convergents: cf
                            .convergents
                            .iter()
                            .map(|(p, q)| [p.to_string(), q.to_string()])
                            .collect(),
                        beta_samples: beta_est.samples.clone(),
                        beta: beta_est.beta,
                    },
                    rows: report.rows.clone(),
                };
                json_payload(&prov, &body)?
            } else {
                let mut s = prov.csv_header();
                s.push_str("m,q,sup,bound\n");
                for r in &report.rows {
                    let _ = writeln!(s, "{},{},{},{}", r.m, r.q, csv_f64(r.sup), csv_f64(r.bound));
                }
                s
            };
            emit(&cli.out, &payload)
        }

        Command::Lyapunov {
            triple,
            alpha,
            emin,
            emax,
            esteps,
            n,
            samples,
        } => {
            let lam = resolve_triple(triple, preset, (0.0, 0.5, 0.0))?;
            let alpha = check_alpha(resolve(*alpha, preset, PRESET_ALPHA, "alpha")?)?;
            let emin = resolve(*emin, preset, -3.0, "emin")?;
            let emax = resolve(*emax, preset, 3.0, "emax")?;
            let esteps = resolve(*esteps, preset, 61, "esteps")?;
            let n = resolve(*n, true, 100_000, "n")?;
            let samples = resolve(*samples, true, 16, "samples")?;
            if !(emin <= emax) {
                return Err(CliError::Validation(format!(
                    "need emin <= emax, got {emin} > {emax}"
                )));
            }
            if esteps == 0 {
                return Err(CliError::Validation("esteps must be >= 1".into()));
            }
            let mut prov = Provenance::new("lyapunov", seed);
            prov.param("l1", lam.l1)
                .param("l2", lam.l2)
                .param("l3", lam.l3)
                .param("alpha", alpha)
                .param("emin", emin)
                .param("emax", emax)
                .param("esteps", esteps)
                .param("n", n)
                .param("samples", samples);
            let mut s = prov.csv_header();
            s.push_str("E,le_raw,le_regularized\n");
            for i in 0..esteps {
                let e = if esteps == 1 {
                    emin
                } else {
                    emin + (emax - emin) * i as f64 / (esteps - 1) as f64
                };
                let est = lyapunov(&lam, e, alpha, n, samples)?;
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    csv_f64(e),
                    csv_f64(est.le_raw),
                    csv_f64(est.le_regularized)
                );
            }
            emit(&cli.out, &s)
        }

        Command::Butterfly {
            triple,
            qmax,
            grids,
        } => {
            let lam = resolve_triple(triple, preset, (0.0, 1.0, 0.0))?;
            let qmax = resolve(*qmax, preset, 55, "qmax")?;
            let grids = resolve(*grids, true, 16, "grids")?;
            if qmax == 0 {
                return Err(CliError::Validation("qmax must be >= 1".into()));
            }
            fn gcd(mut a: u64, mut b: u64) -> u64 {
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                a
            }
            let mut prov = Provenance::new("butterfly", seed);
            prov.param("l1", lam.l1)
                .param("l2", lam.l2)
                .param("l3", lam.l3)
                .param("qmax", qmax)
                .param("grids", grids);
            let mut s = prov.csv_header();
            s.push_str("p,q,band_index,E_min,E_max\n");
            for q in 1..=qmax {
                for p in 0..q.max(1) {
                    if q > 1 && gcd(p.max(1), q) != 1 {
                        continue;
                    }
                    if q > 1 && p == 0 {
                        continue;
                    }
                    let spec = approximant_spectrum(&lam, p, q, grids, grids)?;
                    for (b, band) in spec.bands.iter().enumerate() {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{}",
                            p,
                            q,
                            b,
                            csv_f64(band[0]),
                            csv_f64(band[1])
                        );
                    }
                }
            }
            emit(&cli.out, &s)
        }

        Command::Probe {
            triple,
            alpha,
            theta_rational,
            theta,
            n_list,
        } => {
            let lam = resolve_triple(triple, preset, (1.0, 1.0, 1.0))?;
            let alpha = check_alpha(resolve(*alpha, preset, PRESET_ALPHA, "alpha")?)?;
            let n_spec = resolve(n_list.clone(), preset, "1000,2000,4000".to_string(), "n-list")?;
            let ns: Vec<usize> = parse_list(&n_spec, "window halfwidth")?;
            let mut phases = Vec::new();
            let mut phase_desc = Vec::new();
            if theta_rational.is_empty() && theta.is_empty() && preset {
                phases.push(Phase::alpha_rational(1, 0, alpha));
                phase_desc.push("rational:1,0".to_string());
                phases.push(Phase::generic(0.1234));
                phase_desc.push("generic:0.1234".to_string());
            } else {
                for s in theta_rational {
                    let (j, k) = parse_pair(s, "theta-rational")?;
                    phases.push(Phase::alpha_rational(j, k, alpha));
                    phase_desc.push(format!("rational:{j},{k}"));
                }
                for &t in theta {
                    phases.push(Phase::generic(t));
                    phase_desc.push(format!("generic:{t}"));
                }
            }
            if phases.is_empty() {
                return Err(CliError::Validation(
                    "give at least one --theta or --theta-rational (or use --preset paper)".into(),
                ));
            }
            let rows = point_spectrum_probe(&lam, alpha, &phases, &ns)?;
            let mut prov = Provenance::new("probe", seed);
            prov.param("l1", lam.l1)
                .param("l2", lam.l2)
                .param("l3", lam.l3)
                .param("alpha", alpha)
                .param("thetas", phase_desc.join(";"))
                .param("n_list", &n_spec);
            #[derive(Serialize)]
            struct Body {
                rows: Vec<ehm_core::spectral::ProbeRow>,
            }
            emit(&cli.out, &json_payload(&prov, &Body { rows })?)
        }

        Command::DualityCheck {
            triple,
            alpha,
            theta_rational,
            theta,
            from_truncation,
        } => {
            let lam = resolve_triple(triple, preset, (0.1, 0.4, 0.2))?;
            let alpha = check_alpha(resolve(*alpha, preset, PRESET_ALPHA, "alpha")?)?;
            let n_half = resolve(*from_truncation, preset, 3000, "from-truncation")?;
            let (phase, phase_desc) = match (theta_rational, theta) {
                (Some(s), None) => {
                    let (j, k) = parse_pair(s, "theta-rational")?;
                    (Phase::alpha_rational(j, k, alpha), format!("rational:{j},{k}"))
                }
                (None, Some(t)) => (Phase::generic(*t), format!("generic:{t}")),
                (None, None) if preset => (Phase::generic(0.1234), "generic:0.1234".to_string()),
                _ => {
                    return Err(CliError::Validation(
                        "give exactly one of --theta / --theta-rational (or use --preset paper)"
                            .into(),
                    ))
                }
            };
            let probe = point_spectrum_probe(&lam, alpha, &[phase], &[n_half])?;
            let target_e = probe[0].energy_at_max;
            if !target_e.is_finite() {
                return Err(CliError::Contract(
                    "no bulk-localized eigenvector passed the boundary-mass filter".into(),
                ));
            }
            let sys = truncated_eigensystem(
                &lam,
                alpha,
                &phase,
                n_half,
                Some((target_e - 1e-8, target_e + 1e-8)),
            )?;
            let slot = (0..sys.computed.len())
                .min_by(|&a, &b| {
                    (sys.eigenvalues[sys.computed[a]] - target_e)
                        .abs()
                        .total_cmp(&(sys.eigenvalues[sys.computed[b]] - target_e).abs())
                })
                .ok_or_else(|| {
                    CliError::Contract("energy window lost the targeted eigenvalue".into())
                })?;
            let energy = sys.eigenvalues[sys.computed[slot]];
            let grid = (2 * (2 * n_half + 1)).next_power_of_two();
            let u = sequence_to_torus(&sys.complex_vector(slot), grid)?;
            let res = dual_equation_residual(&lam, alpha, phase.theta, energy, &u);
            let conj = conjugacy_residual(&lam, alpha, phase.theta, energy, &u);
            let det = det_identity_check(&lam, alpha, &phase, &u);
            let mut prov = Provenance::new("duality-check", seed);
            prov.param("l1", lam.l1)
                .param("l2", lam.l2)
                .param("l3", lam.l3)
                .param("alpha", alpha)
                .param("theta", &phase_desc)
                .param("from_truncation", n_half);
            #[derive(Serialize)]
            struct Body {
                r1: f64,
                r2: f64,
                conjugacy_residual: f64,
                b_estimate: f64,
                relative_variation: f64,
                energy: f64,
                n_half: usize,
            }
            let body = Body {
                r1: res.r1,
                r2: res.r2,
                conjugacy_residual: conj.sup,
                b_estimate: det.b_estimate,
                relative_variation: det.relative_variation,
                energy,
                n_half,
            };
            emit(&cli.out, &json_payload(&prov, &body)?)
        }

        Command::VerifyAll { criteria, format } => {
            let ids: Vec<usize> = match criteria {
                Some(s) => {
                    let v: Vec<usize> = parse_list(s, "criterion number")?;
                    if v.iter().any(|&i| i == 0 || i > 11) {
                        return Err(CliError::Validation(
                            "criterion numbers must lie in 1..=11".into(),
                        ));
                    }
                    v
                }
                None => (1..=11).collect(),
            };
            let runners: [fn() -> verify::CriterionReport; 11] = [
                verify::criterion_1,
                verify::criterion_2,
                verify::criterion_3,
                verify::criterion_4,
                verify::criterion_5,
                verify::criterion_6,
                verify::criterion_7,
                verify::criterion_8,
                verify::criterion_9,
                verify::criterion_10,
                verify::criterion_11,
            ];
            let reports: Vec<verify::CriterionReport> =
                ids.iter().map(|&i| runners[i - 1]()).collect();
            let mut prov = Provenance::new("verify-all", seed);
            prov.param(
                "criteria",
                ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
            );
            let payload = if format == "json" {
                #[derive(Serialize)]
                struct Body {
                    reports: Vec<verify::CriterionReport>,
                }
                json_payload(&prov, &Body { reports: reports.clone() })?
            } else {
                let mut s = prov.csv_header();
                for r in &reports {
                    let _ = writeln!(
                        s,
                        "criterion {:2} [{}] {} — {}",
                        r.id,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.details
                    );
                }
                s
            };
            emit(&cli.out, &payload)?;
            let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Contract(format!(
                    "criteria failed: {failed:?}"
                )))
            }
        }
    }
}
