//! The numbered end-to-end verification suite.
//!
//! Eleven criteria, each binding several modules together with tolerances
//! pinned here and nowhere else. Every runner is deterministic: sampling uses
//! a seeded portable ChaCha stream, sweeps reduce in fixed order, and a rerun
//! reproduces every reported digit. Runners never panic on a failed check —
//! they return a report with `passed = false` and the measured numbers, so a
//! caller (test target or CLI) can print one line per criterion and decide
//! what to do.

use crate::birkhoff::{cohomological_solve, verify_uniform_lemma, AnalyticTorusFunction};
use crate::cocycle::{
    convergence_factor_sup, det_cascade_profile, iterate, lyapunov, telescoped_transport,
    transfer_matrix,
};
use crate::contfrac::{
    cf_expand, distance_law_exact, estimate_beta, exact_frac_part, select_subsequence,
    FrequencyCF,
};
use crate::duality::{
    det_identity_check, sequence_to_torus, singular_contradiction_probe, TorusFunctionGrid,
};
use crate::model::{classify, sigma, symbol_eval, CouplingTriple, Line, Phase, Region, SymbolKind};
use crate::spectral::{
    approximant_spectrum, duality_spectrum_check, point_spectrum_probe, truncated_eigensystem,
};
use crate::winding::{factorize, verify_factorization};
use crate::{C64, GOLDEN, TAU};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Outcome of one numbered criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    /// 1-based criterion number.
    pub id: usize,
    /// Short machine-friendly name.
    pub name: &'static str,
    /// All checks inside the criterion held.
    pub passed: bool,
    /// Measured numbers, one line, human-readable.
    pub details: String,
}

fn report(id: usize, name: &'static str, passed: bool, details: String) -> CriterionReport {
    CriterionReport {
        id,
        name,
        passed,
        details,
    }
}

/// Least-squares slope of y against x.
fn lsq_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// sin2πx + ½sin4πx with the exact two-mode decay envelope.
fn sin_mix() -> AnalyticTorusFunction {
    AnalyticTorusFunction::from_modes(
        &[
            (1, C64::new(0.0, -0.5)),
            (-1, C64::new(0.0, 0.5)),
            (2, C64::new(0.0, -0.25)),
            (-2, C64::new(0.0, 0.25)),
        ],
        std::f64::consts::LN_2 / TAU,
    )
    .expect("fixed mode set")
}

/// 1. Continued-fraction distance law, exactly, on 1000 random frequencies
///    through index 20. Zero failures allowed.
pub fn criterion_1() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1_01);
    let mut checked_total = 0usize;
    let mut failures = 0usize;
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(1e-6..1.0 - 1e-6);
        match distance_law_exact(x, 20) {
            Ok((checked, ok)) => {
                checked_total += checked;
                if !ok {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    report(
        1,
        "contfrac-distance-law",
        failures == 0,
        format!("1000 frequencies, {checked_total} exact index checks, {failures} failures"),
    )
}

/// 2. The coupling involution squares to the identity to 1e−14, and maps
///    interior regions and boundary lines as advertised, on 10⁴ samples.
pub fn criterion_2() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2_02);
    let mut worst_inv = 0.0f64;
    let mut failures = 0usize;
    let check_involution = |l: &CouplingTriple, w: &mut f64| {
        let ss = sigma(&sigma(l));
        let d = (ss.l1 - l.l1)
            .abs()
            .max((ss.l2 - l.l2).abs())
            .max((ss.l3 - l.l3).abs());
        *w = w.max(d);
        d <= 1e-14
    };
    for _ in 0..2500 {
        // interior of region I → interior of region II
        let l1 = rng.gen_range(0.01..0.9);
        let l3 = rng.gen_range(0.01..0.95 - l1);
        let l2 = rng.gen_range(0.05..0.95);
        let lam = CouplingTriple::new(l1, l2, l3).expect("valid sample");
        let a = classify(&lam);
        let b = classify(&sigma(&lam));
        if !(a.region == Region::I
            && a.interior
            && b.region == Region::II
            && b.interior
            && check_involution(&lam, &mut worst_inv))
        {
            failures += 1;
        }
    }
    for _ in 0..2500 {
        // interior of region III → interior of region III
        let s = rng.gen_range(1.05..3.0);
        let frac = rng.gen_range(0.05..0.95);
        let (l1, l3) = (s * frac, s * (1.0 - frac));
        let l2 = rng.gen_range(0.1..0.9 * s);
        let lam = CouplingTriple::new(l1, l2, l3).expect("valid sample");
        let a = classify(&lam);
        let b = classify(&sigma(&lam));
        let in_iii = |r: Region| matches!(r, Region::IIIIsotropic | Region::IIIAnisotropic);
        if !(in_iii(a.region)
            && a.interior
            && in_iii(b.region)
            && b.interior
            && check_involution(&lam, &mut worst_inv))
        {
            failures += 1;
        }
    }
    for _ in 0..2500 {
        // boundary line I → boundary line III
        let l1 = rng.gen_range(0.02..0.98);
        let l3 = 1.0 - l1;
        let l2 = rng.gen_range(0.05..0.999);
        let lam = CouplingTriple::new(l1, l2, l3).expect("valid sample");
        let a = classify(&lam);
        let b = classify(&sigma(&lam));
        if !(a.boundary_flags.contains(&Line::LI)
            && b.boundary_flags.contains(&Line::LIII)
            && check_involution(&lam, &mut worst_inv))
        {
            failures += 1;
        }
    }
    for _ in 0..2500 {
        // boundary line II → itself
        let l1 = rng.gen_range(0.02..0.9);
        let l3 = rng.gen_range(0.01..0.98 - l1);
        let lam = CouplingTriple::new(l1, 1.0, l3).expect("valid sample");
        let a = classify(&lam);
        let b = classify(&sigma(&lam));
        if !(a.boundary_flags.contains(&Line::LII)
            && b.boundary_flags.contains(&Line::LII)
            && check_involution(&lam, &mut worst_inv))
        {
            failures += 1;
        }
    }
    report(
        2,
        "involution-and-region-map",
        failures == 0,
        format!("10000 samples, worst involution defect {worst_inv:.3e}, {failures} failures"),
    )
}

/// 3. Winding factorization on 100 random anisotropic triples with
///    λ1+λ3 > 1: sup residual and |mean f| below 1e−10 on 4096-point grids,
///    and the fitted decay width within 20% of the root-modulus prediction.
pub fn criterion_3() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3_03);
    let mut worst_res = 0.0f64;
    let mut worst_mean = 0.0f64;
    let mut worst_dev = 0.0f64;
    let mut failures = 0usize;
    let mut produced = 0usize;
    while produced < 100 {
        let l1: f64 = rng.gen_range(0.05..1.4);
        let l3: f64 = rng.gen_range(0.05..1.4);
        if (l1 - l3).abs() < 0.02 || l1 + l3 < 1.05 {
            continue;
        }
        let l2 = rng.gen_range(0.1..0.95 * (l1 + l3));
        let lam = CouplingTriple::new(l1, l2, l3).expect("valid sample");
        if classify(&lam).region != Region::IIIAnisotropic {
            continue;
        }
        produced += 1;
        let w = match factorize(&lam, GOLDEN, 4096) {
            Ok(w) => w,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let check = verify_factorization(&w, 4096);
        worst_res = worst_res.max(check.max_residual);
        worst_mean = worst_mean.max(check.mean_f.abs());
        let theory = if w.single_root {
            w.roots.0.norm().ln()
        } else {
            w.roots.0.norm().ln().min(w.roots.1.norm().ln())
        } / TAU;
        let dev = (w.delta0 - theory).abs() / theory;
        worst_dev = worst_dev.max(dev);
        if !(check.max_residual < 1e-10
            && check.mean_f.abs() < 1e-10
            && w.delta0 > 0.0
            && dev <= 0.2)
        {
            failures += 1;
        }
    }
    report(
        3,
        "winding-factorization",
        failures == 0,
        format!(
            "100 triples: max residual {worst_res:.3e}, max |mean f| {worst_mean:.3e}, \
             worst width deviation {:.1}%, {failures} failures",
            100.0 * worst_dev
        ),
    )
}

/// 4. Uniform Birkhoff smallness for sin2πx + ½sin4πx: certified sups
///    decreasing along the golden denominators and < 5e−3 at q = 610;
///    cohomological residual < 1e−10; Liouville-schedule selected sups end
///    below 1e−3 and never exceed their certified bounds.
pub fn criterion_4() -> CriterionReport {
    let f = sin_mix();
    let cf = cf_expand(GOLDEN, 18).expect("golden expansion");
    let sub = select_subsequence(&cf, 0.0).expect("full index set");
    let rep = verify_uniform_lemma(&f, &cf, &sub, 4096).expect("certified sups");
    let upto: Vec<_> = rep.rows.iter().filter(|r| r.q <= 610).collect();
    let decreasing = upto.windows(2).all(|w| w[1].sup < w[0].sup);
    let sup_610 = upto
        .iter()
        .find(|r| r.q == 610)
        .map(|r| r.sup)
        .unwrap_or(f64::INFINITY);
    let small_610 = sup_610 < 5e-3;

    let h = cohomological_solve(&f, GOLDEN).expect("good frequency");
    let mut coh_res = 0.0f64;
    let g = 4096;
    for j in 0..g {
        let x = j as f64 / g as f64;
        let d = (h.value((x + GOLDEN).rem_euclid(1.0)) - h.value(x) - f.value(x)).abs();
        coh_res = coh_res.max(d);
    }

    let cf_l = FrequencyCF::from_terms(&[2, 8, 24_154_953]).expect("explicit terms");
    let beta = estimate_beta(&cf_l, 1).expect("beta estimate").beta;
    let sub_l = select_subsequence(&cf_l, beta).expect("gap subsequence");
    let rep_l = verify_uniform_lemma(&f, &cf_l, &sub_l, 4096).expect("certified sups");
    let liou_final = rep_l.rows.last().expect("nonempty").sup;
    let liou_ok = liou_final < 1e-3 && rep_l.rows.iter().all(|r| r.sup <= r.bound);

    let passed = decreasing && small_610 && coh_res < 1e-10 && liou_ok;
    report(
        4,
        "birkhoff-uniform-smallness",
        passed,
        format!(
            "sups decreasing: {decreasing}; sup(610) = {sup_610:.6e} (target < 5e-3: {}); \
             cohomological residual {coh_res:.3e}; Liouville β = {beta:.3}, final sup \
             {liou_final:.3e} ≤ certified bounds: {liou_ok}",
            if small_610 { "ok" } else { "FAIL" }
        ),
    )
}

/// 5. Transfer-matrix determinant identities: det vs symbol ratio to 1e−13 on
///    10⁵ samples, the iteration splitting law to 1e−10, and the k-step
///    product cascade against the telescoped transport function to 1e−9 for
///    k up to 987.
pub fn criterion_5() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5_05);
    let mut worst_det = 0.0f64;
    let mut det_failures = 0usize;
    let mut done = 0usize;
    while done < 100_000 {
        let lam = CouplingTriple::new(
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.1..2.0),
            rng.gen_range(0.0..2.0),
        )
        .expect("valid sample");
        let x = rng.gen_range(0.0..1.0);
        let e = rng.gen_range(-5.0..5.0);
        let a = match transfer_matrix(&lam, e, GOLDEN, x) {
            Ok(a) => a,
            Err(_) => continue, // symbol zero: the constructor refuses, resample
        };
        done += 1;
        let hat = sigma(&lam);
        let num = symbol_eval(
            &hat.symbol(GOLDEN, SymbolKind::CTilde),
            C64::new((x - GOLDEN).rem_euclid(1.0), 0.0),
        )
        .expect("entire symbol");
        let den = symbol_eval(&hat.symbol(GOLDEN, SymbolKind::C), C64::new(x, 0.0))
            .expect("entire symbol");
        let expected = num / den;
        let rel = (a.det() - expected).norm() / expected.norm().max(1e-300);
        worst_det = worst_det.max(rel);
        if rel >= 1e-13 {
            det_failures += 1;
        }
    }

    let lam = CouplingTriple::new(0.4, 1.2, 0.8).expect("valid triple");
    let mut worst_split = 0.0f64;
    for _ in 0..50 {
        let x = rng.gen_range(0.0..1.0);
        let e = rng.gen_range(-2.0..2.0);
        let n1 = rng.gen_range(1..200u64);
        let n2 = rng.gen_range(1..200u64);
        let (full, first) = match (
            iterate(&lam, e, GOLDEN, x, n1 + n2),
            iterate(&lam, e, GOLDEN, x, n1),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let mid = (x + exact_frac_part(GOLDEN, n1)).rem_euclid(1.0);
        let Ok(second) = iterate(&lam, e, GOLDEN, mid, n2) else {
            continue;
        };
        let split = second.product().mul(&first.product());
        let whole = full.product();
        let rel = whole.max_entry_distance(&split) / whole.frobenius_norm();
        worst_split = worst_split.max(rel);
    }

    let (gfun, x0) = telescoped_transport(&lam, 610, 987, 1024).expect("orbit telescoping");
    let profile = det_cascade_profile(&lam, 0.0, 610.0 / 987.0, x0, 987, &gfun)
        .expect("cascade profile");
    let worst_cascade = profile.iter().copied().fold(0.0, f64::max);

    let passed = det_failures == 0 && worst_split < 1e-10 && worst_cascade < 1e-9;
    report(
        5,
        "determinant-and-cascade",
        passed,
        format!(
            "det identity: worst rel {worst_det:.3e} over 1e5 samples ({det_failures} failures); \
             splitting law worst {worst_split:.3e}; cascade max residual {worst_cascade:.3e} \
             over k = 1..=987"
        ),
    )
}

/// 6. The q-step convergence factor for λ = (0.2, 1, 1.0) at the golden
///    frequency: within 1e−2 of 1 at q = 987 and strictly improving along
///    the Fibonacci denominators.
pub fn criterion_6() -> CriterionReport {
    let lam = CouplingTriple::new(0.2, 1.0, 1.0).expect("valid triple");
    let w = factorize(&lam, GOLDEN, 1024).expect("factorization");
    let qs = [13u64, 21, 34, 55, 89, 144, 233, 377, 610, 987];
    let mut sups = Vec::new();
    for &q in &qs {
        sups.push(convergence_factor_sup(&w, q, 256).expect("factor sup"));
    }
    let monotone = sups.windows(2).all(|p| p[1] < p[0]);
    let last = *sups.last().expect("nonempty");
    report(
        6,
        "convergence-factor",
        monotone && last < 1e-2,
        format!(
            "sup|F_q − 1| at 987: {last:.4e} (target < 1e-2); strictly decreasing over \
             Fibonacci q: {monotone}"
        ),
    )
}

/// 7. Spectra duality at matched grids: Hausdorff distance between the band
///    spectrum of λ and λ2 times the dual band spectrum, < 1e−4 for 20
///    random triples at three Fibonacci rationals and < 1e−10 self-dual.
pub fn criterion_7() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7_07);
    let rats = [(5u64, 8u64), (8, 13), (13, 21)];
    let mut worst_random = 0.0f64;
    let mut failures = 0usize;
    for _ in 0..20 {
        let lam = CouplingTriple::new(
            rng.gen_range(0.05..1.5),
            rng.gen_range(0.2..2.0),
            rng.gen_range(0.05..1.5),
        )
        .expect("valid sample");
        for &(p, q) in &rats {
            let d = match duality_spectrum_check(&lam, p, q, 2 * q as usize) {
                Ok(d) => d,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            worst_random = worst_random.max(d);
            if d >= 1e-4 {
                failures += 1;
            }
        }
    }
    let sd = CouplingTriple::new(0.0, 1.0, 0.0).expect("self-dual triple");
    let mut worst_self = 0.0f64;
    for &(p, q) in &rats {
        let d = duality_spectrum_check(&sd, p, q, 2 * q as usize).expect("self-dual check");
        worst_self = worst_self.max(d);
    }
    let passed = failures == 0 && worst_self < 1e-10;
    report(
        7,
        "spectra-duality",
        passed,
        format!(
            "random triples: worst Hausdorff {worst_random:.3e} ({failures} failures); \
             self-dual worst {worst_self:.3e}"
        ),
    )
}

/// 8. Known Lyapunov exponents for the cosine-only couplings at in-spectrum
///    energies: (0, 0.5, 0) → ln 2 and (0, 2, 0) → 0, both to ±0.01, at 10⁶
///    iteration steps.
pub fn criterion_8() -> CriterionReport {
    let start = std::time::Instant::now();
    // A second guaranteed in-spectrum energy: the midpoint of the widest band
    // of a deep periodic approximant.
    let widest_mid = |lam: &CouplingTriple| -> f64 {
        let spec = approximant_spectrum(lam, 34, 55, 16, 16).expect("approximant");
        let b = spec
            .bands
            .iter()
            .max_by(|x, y| (x[1] - x[0]).total_cmp(&(y[1] - y[0])))
            .expect("nonempty");
        0.5 * (b[0] + b[1])
    };
    let mut details = String::new();
    let mut passed = true;
    for (lam, target, label) in [
        (
            CouplingTriple::new(0.0, 0.5, 0.0).expect("valid triple"),
            std::f64::consts::LN_2,
            "(0,0.5,0)",
        ),
        (
            CouplingTriple::new(0.0, 2.0, 0.0).expect("valid triple"),
            0.0,
            "(0,2,0)",
        ),
    ] {
        for e in [0.0, widest_mid(&lam)] {
            let est = lyapunov(&lam, e, GOLDEN, 1_000_000, 32).expect("exponent");
            let ok = (est.le_regularized - target).abs() <= 0.01;
            passed &= ok;
            details.push_str(&format!(
                "{label} E={e:.4}: {:.5} (target {target:.5}); ",
                est.le_regularized
            ));
        }
    }
    details.push_str(&format!("runtime {:.1}s", start.elapsed().as_secs_f64()));
    report(8, "lyapunov-known-values", passed, details)
}

/// 9. Critical cosine-only bandwidth scaling: total approximant measure fits
///    slope −1 ± 0.2 in log-log over the Fibonacci denominators 8..55.
pub fn criterion_9() -> CriterionReport {
    let lam = CouplingTriple::new(0.0, 1.0, 0.0).expect("critical triple");
    let fib = [(5u64, 8u64), (8, 13), (13, 21), (21, 34), (34, 55)];
    let mut pts = Vec::new();
    for &(p, q) in &fib {
        let spec = approximant_spectrum(&lam, p, q, 16, 16).expect("approximant");
        pts.push(((q as f64).ln(), spec.total_measure.ln()));
    }
    let slope = lsq_slope(&pts);
    report(
        9,
        "critical-bandwidth-scaling",
        (slope + 1.0).abs() < 0.2,
        format!("log-measure vs log-q slope {slope:.4} (target −1 ± 0.2)"),
    )
}

/// 10. Determinant identity on a localized vector: the product
///     |det M|·|c|(x−α) is constant to 5% relative variation for a deep
///     truncation in the localized regime; and the singular-regime quadrature
///     of 1/|c| grows with positive log-slope for both singular test triples.
pub fn criterion_10() -> CriterionReport {
    let lam = CouplingTriple::new(0.1, 0.4, 0.2).expect("localized-regime triple");
    let theta = Phase::generic(0.1234);
    let n_half = 3000usize;
    let probe = point_spectrum_probe(&lam, GOLDEN, &[theta], &[n_half]).expect("probe");
    let target_e = probe[0].energy_at_max;
    let sys = truncated_eigensystem(
        &lam,
        GOLDEN,
        &theta,
        n_half,
        Some((target_e - 1e-8, target_e + 1e-8)),
    )
    .expect("windowed eigensystem");
    let slot = (0..sys.computed.len())
        .min_by(|&a, &b| {
            (sys.eigenvalues[sys.computed[a]] - target_e)
                .abs()
                .total_cmp(&(sys.eigenvalues[sys.computed[b]] - target_e).abs())
        })
        .expect("window nonempty");
    let u = sequence_to_torus(&sys.complex_vector(slot), 16_384).expect("mode embedding");
    let det_rep = det_identity_check(&lam, GOLDEN, &theta, &u);
    let var_ok = det_rep.relative_variation < 0.05;

    let mut slopes = Vec::new();
    let modes: Vec<(i64, C64)> = (-6i64..=6)
        .map(|n| (n, C64::new(0.5f64.powi(n.unsigned_abs() as i32), 0.0)))
        .collect();
    let u_probe = TorusFunctionGrid::from_modes(&modes, 256).expect("probe function");
    for lam_s in [
        CouplingTriple::new(0.3, 1.0, 0.7).expect("singular triple"),
        CouplingTriple::new(1.0, 1.0, 1.0).expect("singular triple"),
    ] {
        let rep = singular_contradiction_probe(&lam_s, GOLDEN, &theta, &u_probe)
            .expect("singular regime");
        slopes.push(rep.log_slope);
    }
    let slopes_ok = slopes.iter().all(|&s| s > 0.05);
    report(
        10,
        "determinant-identity-and-singularity",
        var_ok && slopes_ok,
        format!(
            "relative variation {:.3e} at N = {n_half} (target < 0.05), b = {:.4e}; \
             singular quadrature log-slopes {:.3} and {:.3} (target > 0.05)",
            det_rep.relative_variation, det_rep.b_estimate, slopes[0], slopes[1]
        ),
    )
}

/// 11. Qualitative localization probe, reported as PASS/INDETERMINATE and
///     never hard-failed: the special-phase IPR contrast for the isotropic
///     triple at N = 4000, and monotone IPR decay with N in the extended
///     regime. A desk-scale box cannot decide infinite-volume spectral type;
///     this records the measured contrast with full data.
pub fn criterion_11() -> CriterionReport {
    let lam = CouplingTriple::new(1.0, 1.0, 1.0).expect("isotropic triple");
    let special = Phase::alpha_rational(1, 0, GOLDEN);
    let generic = Phase::generic(0.1234);
    let rows = match point_spectrum_probe(&lam, GOLDEN, &[special, generic], &[4000]) {
        Ok(r) => r,
        Err(e) => {
            return report(11, "point-spectrum-probe", false, format!("probe error: {e}"));
        }
    };
    let ratio = rows[0].max_ipr / rows[1].max_ipr;
    let contrast = if ratio > 5.0 { "PASS" } else { "INDETERMINATE" };

    let lam_ac = CouplingTriple::new(0.2, 1.0, 1.0).expect("extended-regime triple");
    let rows_ac = match point_spectrum_probe(&lam_ac, GOLDEN, &[generic], &[1000, 2000, 4000]) {
        Ok(r) => r,
        Err(e) => {
            return report(11, "point-spectrum-probe", false, format!("probe error: {e}"));
        }
    };
    let decay = rows_ac.windows(2).all(|w| w[1].max_ipr < w[0].max_ipr);
    let decay_verdict = if decay { "PASS" } else { "INDETERMINATE" };
    report(
        11,
        "point-spectrum-probe",
        true,
        format!(
            "phase contrast at N=4000: IPR {:.4e} (special) vs {:.4e} (generic), ratio \
             {ratio:.2} → {contrast}; extended-regime IPR over N: {} → {decay_verdict}",
            rows[0].max_ipr,
            rows[1].max_ipr,
            rows_ac
                .iter()
                .map(|r| format!("{:.3e}", r.max_ipr))
                .collect::<Vec<_>>()
                .join(" → ")
        ),
    )
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ]
}
