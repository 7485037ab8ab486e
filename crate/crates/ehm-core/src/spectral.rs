//! Finite-dimensional spectra.
//!
//! Two complementary discretizations of the doubly-infinite operator
//! `(Hu)_n = c(θ+nα)u_{n+1} + conj c(θ+(n−1)α)u_{n−1} + 2cos2π(θ+nα)·u_n`:
//!
//! * **Periodic (Bloch) approximants** at rational α = p/q: the operator
//!   commutes with translation by q, so it diagonalizes over q×q Hermitian
//!   blocks indexed by a Bloch momentum k; unions of block eigenvalues over
//!   (θ, k) grids give band approximations of the spectrum (and, stacked over
//!   p/q, the butterfly).
//! * **Truncated operators** on a window [−N, N] with Dirichlet ends: a real
//!   symmetric tridiagonal eigenproblem after gauging away the off-diagonal
//!   phases. Eigenvector statistics (inverse participation ratio, edge mass,
//!   exponential decay fits) probe localization without pretending a finite
//!   box can decide infinite-volume spectral type.

use crate::contfrac::exact_frac_part;
use crate::error::{EhmError, Result};
use crate::model::{sigma, symbol_eval, CouplingTriple, Phase, SymbolKind};
use crate::{C64, TAU};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

/// Merged band list of a periodic approximant.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodicApproximantSpectrum {
    pub p: u64,
    pub q: u64,
    pub couplings: CouplingTriple,
    /// Disjoint closed intervals [E_min, E_max], ascending.
    pub bands: Vec<[f64; 2]>,
    pub total_measure: f64,
}

/// The q×q Bloch block at phase θ and momentum k: diagonal 2cos2π(θ+nα),
/// first superdiagonal c_λ(θ+nα), Hermitian transpose below, and the
/// wrap-around coupling carrying e^{±2πik} added into the corner (for q = 2
/// both couplings land in the same entry and add; for q = 1 everything folds
/// into the single scalar 2cos2πθ + 2Re(c e^{2πik})).
pub fn bloch_matrix(
    lambda: &CouplingTriple,
    p: u64,
    q: u64,
    theta: f64,
    k: f64,
) -> Result<DMatrix<C64>> {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    if q == 0 {
        return Err(EhmError::Domain("denominator q must be positive".into()));
    }
    if gcd(p.max(1), q) != 1 {
        return Err(EhmError::Domain(format!("p/q = {p}/{q} is not reduced")));
    }
    let alpha = p as f64 / q as f64;
    let n = q as usize;
    let sym = lambda.symbol(alpha, SymbolKind::C);
    let mut h = DMatrix::<C64>::zeros(n, n);
    let bloch = C64::from_polar(1.0, TAU * k);
    for s in 0..n {
        let y = (theta + s as f64 * alpha).rem_euclid(1.0);
        h[(s, s)] += C64::new(2.0 * (TAU * y).cos(), 0.0);
        let t = symbol_eval(&sym, C64::new(y, 0.0)).expect("entire symbol");
        let (row, col, hop) = if s + 1 < n {
            (s, s + 1, t)
        } else {
            // site q−1 couples to site q ≡ 0 with the Bloch phase attached
            (n - 1, 0, t * bloch)
        };
        if n == 1 {
            h[(0, 0)] += hop + hop.conj();
        } else {
            h[(row, col)] += hop;
            h[(col, row)] += hop.conj();
        }
    }
    Ok(h)
}

/// Union of Bloch eigenvalues over uniform (θ, k) grids, tracked per band
/// index and merged into disjoint intervals. Gaps smaller than
/// 1e−9·(spectral width) are treated as eigenvalue clustering noise.
pub fn approximant_spectrum(
    lambda: &CouplingTriple,
    p: u64,
    q: u64,
    theta_grid: usize,
    k_grid: usize,
) -> Result<PeriodicApproximantSpectrum> {
    if theta_grid < 8 || k_grid < 8 {
        return Err(EhmError::Domain(format!(
            "grids must be >= 8, got {theta_grid} x {k_grid}"
        )));
    }
    // Surface p/q validation errors before the parallel sweep starts.
    bloch_matrix(lambda, p, q, 0.0, 0.0)?;
    let n = q as usize;
    // Each grid row is independent; per-band min/max reduce associatively,
    // so the parallel sweep is order-insensitive and deterministic.
    let per_theta: Vec<Vec<[f64; 2]>> = (0..theta_grid)
        .into_par_iter()
        .map(|it| {
            let theta = it as f64 / theta_grid as f64;
            let mut row = vec![[f64::INFINITY, f64::NEG_INFINITY]; n];
            for ik in 0..k_grid {
                let k = ik as f64 / k_grid as f64;
                let h = bloch_matrix(lambda, p, q, theta, k).expect("validated above");
                let eig = nalgebra::SymmetricEigen::new(h);
                let mut evs: Vec<f64> = eig.eigenvalues.iter().copied().collect();
                evs.sort_by(f64::total_cmp);
                for (b, &e) in evs.iter().enumerate() {
                    row[b][0] = row[b][0].min(e);
                    row[b][1] = row[b][1].max(e);
                }
            }
            row
        })
        .collect();
    let mut per_band = vec![[f64::INFINITY, f64::NEG_INFINITY]; n];
    for row in &per_theta {
        for (b, r) in row.iter().enumerate() {
            per_band[b][0] = per_band[b][0].min(r[0]);
            per_band[b][1] = per_band[b][1].max(r[1]);
        }
    }
    per_band.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let lo = per_band.first().map(|b| b[0]).unwrap_or(0.0);
    let hi = per_band.iter().map(|b| b[1]).fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9 * (hi - lo).max(1e-300);
    let mut bands: Vec<[f64; 2]> = Vec::new();
    for b in per_band {
        match bands.last_mut() {
            Some(prev) if b[0] <= prev[1] + tol => prev[1] = prev[1].max(b[1]),
            _ => bands.push(b),
        }
    }
    let total_measure = bands.iter().map(|b| b[1] - b[0]).sum();
    Ok(PeriodicApproximantSpectrum {
        p,
        q,
        couplings: *lambda,
        bands,
        total_measure,
    })
}

/// Hausdorff distance between two finite unions of closed intervals. The
/// supremum of dist(·, B) over A is attained at an endpoint of A or at a gap
/// midpoint of B lying inside A, so only those candidates are examined.
pub fn hausdorff_distance_bands(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    fn dist_to(x: f64, set: &[[f64; 2]]) -> f64 {
        let mut d = f64::INFINITY;
        for iv in set {
            if x >= iv[0] && x <= iv[1] {
                return 0.0;
            }
            d = d.min((x - iv[0]).abs().min((x - iv[1]).abs()));
        }
        d
    }
    fn one_sided(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
        let mut sup: f64 = 0.0;
        for iv in a {
            sup = sup.max(dist_to(iv[0], b)).max(dist_to(iv[1], b));
        }
        for gap in b.windows(2) {
            let mid = 0.5 * (gap[0][1] + gap[1][0]);
            if a.iter().any(|iv| mid >= iv[0] && mid <= iv[1]) {
                sup = sup.max(dist_to(mid, b));
            }
        }
        sup
    }
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    one_sided(a, b).max(one_sided(b, a))
}

/// Hausdorff distance between the approximant spectrum of λ and λ2 times the
/// approximant spectrum of σ(λ) at the same rational. On grids that are
/// multiples of 2q the two eigenvalue unions coincide to rounding: the
/// duality exchanges the roles of θ and k, and 2q-periodic grids are
/// invariant under that exchange.
pub fn duality_spectrum_check(
    lambda: &CouplingTriple,
    p: u64,
    q: u64,
    grids: usize,
) -> Result<f64> {
    let spec_a = approximant_spectrum(lambda, p, q, grids, grids)?;
    let dual = sigma(lambda);
    let spec_b = approximant_spectrum(&dual, p, q, grids, grids)?;
    let scaled: Vec<[f64; 2]> = spec_b
        .bands
        .iter()
        .map(|b| [lambda.l2 * b[0], lambda.l2 * b[1]])
        .collect();
    Ok(hausdorff_distance_bands(&spec_a.bands, &scaled))
}

// ---------------------------------------------------------------------------
// Truncated operators
// ---------------------------------------------------------------------------

/// Gauged real form of the truncation of H to sites [−N, N] with zero
/// boundary conditions: diagonal d_i = 2cos2π(θ+n_iα) and positive
/// off-diagonal e_i = |c(θ+n_iα)|, plus the phases φ_i that undo the gauge
/// (u_{n_i} = e^{iφ_i}·v_i recovers the complex eigenvector).
struct GaugedTridiagonal {
    d: Vec<f64>,
    e: Vec<f64>,
    phases: Vec<f64>,
}

fn gauged_tridiagonal(
    lambda: &CouplingTriple,
    alpha: f64,
    theta: f64,
    n_half: usize,
) -> GaugedTridiagonal {
    let m = 2 * n_half + 1;
    let sym = lambda.symbol(alpha, SymbolKind::C);
    let site = |i: usize| -> f64 {
        let n = i as i64 - n_half as i64;
        let off = exact_frac_part(alpha, n.unsigned_abs());
        if n >= 0 {
            (theta + off).rem_euclid(1.0)
        } else {
            (theta - off).rem_euclid(1.0)
        }
    };
    let mut d = Vec::with_capacity(m);
    let mut e = Vec::with_capacity(m - 1);
    let mut phases = Vec::with_capacity(m);
    let mut phi = 0.0f64;
    phases.push(phi);
    for i in 0..m {
        let y = site(i);
        d.push(2.0 * (TAU * y).cos());
        if i + 1 < m {
            let t = symbol_eval(&sym, C64::new(y, 0.0)).expect("entire symbol");
            e.push(t.norm());
            // gauge recurrence removing arg(t) from the hopping
            phi -= t.arg();
            phases.push(phi);
        }
    }
    GaugedTridiagonal { d, e, phases }
}

/// #{eigenvalues of the tridiagonal < x} by the Sturm sequence.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0usize;
    let mut q = 1.0f64;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q == 0.0 {
            q = 1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th eigenvalue (ascending, 0-based) by bisection inside [lo, hi].
fn bisect_eigenvalue(d: &[f64], e: &[f64], k: usize, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > 1e-13 * (lo.abs().max(hi.abs()).max(1.0)) {
        let mid = 0.5 * (lo + hi);
        if sturm_count(d, e, mid) >= k + 1 {
            hi = mid;
        } else {
            lo = mid;
        }
        if mid == 0.5 * (lo + hi) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// One inverse-iteration solve (T − shift)w = rhs by LU with partial
/// pivoting; a row swap pushes one extra superdiagonal of fill-in.
fn tridiag_solve(d: &[f64], e: &[f64], shift: f64, rhs: &mut [f64]) {
    let m = d.len();
    let mut dg: Vec<f64> = d.iter().map(|v| v - shift).collect();
    let mut du: Vec<f64> = e.to_vec(); // superdiagonal
    let mut du2 = vec![0.0f64; m]; // second superdiagonal fill-in
    let dl: Vec<f64> = e.to_vec(); // subdiagonal
    // Factor and eliminate the right-hand side in one sweep.
    for i in 0..m - 1 {
        if dg[i].abs() >= dl[i].abs() {
            let denom = if dg[i] == 0.0 { 1e-300 } else { dg[i] };
            let fact = dl[i] / denom;
            dg[i + 1] -= fact * du[i];
            rhs[i + 1] -= fact * rhs[i];
        } else {
            // rows i and i+1 exchange; the old row i, now below, loses its
            // leading entry against the new pivot dl[i]
            let fact = dg[i] / dl[i];
            dg[i] = dl[i];
            let old_diag = dg[i + 1];
            dg[i + 1] = du[i] - fact * old_diag;
            du[i] = old_diag;
            if i + 1 < m - 1 {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            let t = rhs[i];
            rhs[i] = rhs[i + 1];
            rhs[i + 1] = t - fact * rhs[i];
        }
    }
    for i in (0..m).rev() {
        let mut v = rhs[i];
        if i + 1 < m {
            v -= du[i] * rhs[i + 1];
        }
        if i + 2 < m {
            v -= du2[i] * rhs[i + 2];
        }
        let denom = if dg[i] == 0.0 { 1e-300 } else { dg[i] };
        rhs[i] = v / denom;
    }
}

fn normalize(v: &mut [f64]) {
    let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
        for (x, y) in v.iter_mut().zip(b) {
            *x -= dot * y;
        }
    }
}

/// Inverse iteration for the eigenvector at an isolated (or
/// cluster-orthogonalized) eigenvalue.
fn inverse_iterate(d: &[f64], e: &[f64], ev: f64, cluster: &[Vec<f64>], seed: u64) -> Vec<f64> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let m = d.len();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0f64..1.0)).collect();
    normalize(&mut v);
    // A shift a hair off the eigenvalue keeps the factorization finite while
    // still amplifying the target component by ~1e13 per pass.
    let shift = ev + 1e-13 * ev.abs().max(1.0);
    for _ in 0..4 {
        tridiag_solve(d, e, shift, &mut v);
        orthogonalize(&mut v, cluster);
        normalize(&mut v);
    }
    v
}

fn residual_norm(d: &[f64], e: &[f64], ev: f64, v: &[f64]) -> f64 {
    let m = d.len();
    let mut acc = 0.0;
    for i in 0..m {
        let mut r = (d[i] - ev) * v[i];
        if i > 0 {
            r += e[i - 1] * v[i - 1];
        }
        if i + 1 < m {
            r += e[i] * v[i + 1];
        }
        acc += r * r;
    }
    acc.sqrt()
}

/// Eigen data of the truncation of H to [−N, N] with Dirichlet ends.
#[derive(Debug, Clone)]
pub struct TruncatedEigensystem {
    pub n_half: usize,
    pub theta: Phase,
    /// Ascending eigenvalues of the full truncation (all 2N+1 of them).
    pub eigenvalues: Vec<f64>,
    /// Indices (into `eigenvalues`) whose eigenvectors were computed.
    pub computed: Vec<usize>,
    /// Gauged real eigenvectors, unit norm, parallel to `computed`.
    pub vectors: Vec<Vec<f64>>,
    /// Gauge phases: u_{n_i} = e^{iφ_i}·v_i is the complex eigenvector.
    pub phases: Vec<f64>,
    d: Vec<f64>,
    e: Vec<f64>,
}

impl TruncatedEigensystem {
    /// ‖Tv − Ev‖₂ for a computed pair.
    pub fn residual(&self, slot: usize) -> f64 {
        residual_norm(
            &self.d,
            &self.e,
            self.eigenvalues[self.computed[slot]],
            &self.vectors[slot],
        )
    }

    /// The complex eigenvector of the ungauged truncation.
    pub fn complex_vector(&self, slot: usize) -> Vec<C64> {
        self.vectors[slot]
            .iter()
            .zip(&self.phases)
            .map(|(&v, &phi)| C64::from_polar(1.0, phi) * v)
            .collect()
    }
}

/// Solve the truncated eigenproblem. All eigenvalues are always computed;
/// eigenvectors only for eigenvalues inside `energy_window` (everything when
/// `None` — at large N that is the memory hog, so window wisely).
pub fn truncated_eigensystem(
    lambda: &CouplingTriple,
    alpha: f64,
    theta: &Phase,
    n_half: usize,
    energy_window: Option<(f64, f64)>,
) -> Result<TruncatedEigensystem> {
    if n_half == 0 || n_half > 10_000 {
        return Err(EhmError::Domain(format!(
            "window halfwidth must be in 1..=10000, got {n_half}"
        )));
    }
    let g = gauged_tridiagonal(lambda, alpha, theta.theta, n_half);
    let m = g.d.len();
    let radius: f64 = (0..m)
        .map(|i| {
            let r = if i > 0 { g.e[i - 1].abs() } else { 0.0 }
                + if i + 1 < m { g.e[i].abs() } else { 0.0 };
            g.d[i].abs() + r
        })
        .fold(0.0, f64::max);
    let (lo, hi) = (-radius - 1.0, radius + 1.0);
    let mut eigenvalues = Vec::with_capacity(m);
    for k in 0..m {
        eigenvalues.push(bisect_eigenvalue(&g.d, &g.e, k, lo, hi));
    }
    let scale = radius.max(1.0);
    let mut computed = Vec::new();
    let mut vectors: Vec<Vec<f64>> = Vec::new();
    let mut cluster: Vec<Vec<f64>> = Vec::new();
    let mut cluster_ev = f64::NEG_INFINITY;
    for k in 0..m {
        let ev = eigenvalues[k];
        if let Some((wl, wh)) = energy_window {
            if ev < wl || ev > wh {
                continue;
            }
        }
        if (ev - cluster_ev).abs() > 1e-9 * scale {
            cluster.clear();
        }
        let v = inverse_iterate(&g.d, &g.e, ev, &cluster, 0x7457 + k as u64);
        cluster.push(v.clone());
        cluster_ev = ev;
        computed.push(k);
        vectors.push(v);
    }
    Ok(TruncatedEigensystem {
        n_half,
        theta: *theta,
        eigenvalues,
        computed,
        vectors,
        phases: g.phases,
        d: g.d,
        e: g.e,
    })
}

/// Shape statistics of one normalized eigenvector.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LocalizationDiagnostics {
    /// Σ|u|⁴ for a unit vector: 1/(2N+1) for flat, → 1 for a point mass.
    pub ipr: f64,
    /// Mass within the outer 10% of the window — boundary-artifact detector.
    pub edge_mass: f64,
    /// Exponential rate fitted to ln|u| vs distance from the peak (0 when
    /// the profile is not decaying).
    pub decay_rate: f64,
}

/// Diagnostics for a computed eigenvector (unit norm assumed).
pub fn diagnose_vector(v: &[f64], n_half: usize) -> LocalizationDiagnostics {
    let m = v.len();
    let ipr: f64 = v.iter().map(|x| x.powi(4)).sum();
    let cutoff = (0.9 * n_half as f64) as i64;
    let mut edge = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let n = i as i64 - n_half as i64;
        if n.abs() > cutoff {
            edge += x * x;
        }
    }
    let peak = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(m / 2);
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        let dist = (i as i64 - peak as i64).abs() as f64;
        let a = x.abs();
        if dist >= 1.0 && a > 1e-13 {
            pts.push((dist, a.ln()));
        }
    }
    let mut decay = 0.0;
    if pts.len() >= 8 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        if slope < 0.0 {
            decay = -slope;
        }
    }
    LocalizationDiagnostics {
        ipr,
        edge_mass: edge,
        decay_rate: decay,
    }
}

/// One probe measurement: the strongest filtered mid-spectrum localization
/// signal for a (θ, N) pair.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeRow {
    pub theta: Phase,
    pub n_half: usize,
    /// max IPR over mid-spectrum eigenpairs passing the edge-mass filter.
    pub max_ipr: f64,
    /// Eigenvalue achieving it.
    pub energy_at_max: f64,
    /// How many eigenpairs entered the statistic.
    pub contributing: usize,
}

/// Qualitative point-spectrum probe: IPR statistics over the central 60% of
/// the spectrum (by index), excluding states with > 1% mass near the
/// boundary, for each phase and each window size. The caller reads trends;
/// nothing here claims to decide infinite-volume spectral type.
pub fn point_spectrum_probe(
    lambda: &CouplingTriple,
    alpha: f64,
    thetas: &[Phase],
    n_list: &[usize],
) -> Result<Vec<ProbeRow>> {
    let mut rows = Vec::new();
    for theta in thetas {
        for &n_half in n_list {
            if n_half == 0 || n_half > 10_000 {
                return Err(EhmError::Domain(format!(
                    "window halfwidth must be in 1..=10000, got {n_half}"
                )));
            }
            let g = gauged_tridiagonal(lambda, alpha, theta.theta, n_half);
            let m = g.d.len();
            let radius: f64 = (0..m)
                .map(|i| {
                    let r = if i > 0 { g.e[i - 1].abs() } else { 0.0 }
                        + if i + 1 < m { g.e[i].abs() } else { 0.0 };
                    g.d[i].abs() + r
                })
                .fold(0.0, f64::max);
            let (lo, hi) = (-radius - 1.0, radius + 1.0);
            let scale = radius.max(1.0);
            // Stream the central 60% of indices: eigenvalue, vector,
            // diagnostics, drop — memory stays O(m).
            let k_lo = (0.2 * m as f64) as usize;
            let k_hi = (0.8 * m as f64) as usize;
            let mut max_ipr = 0.0f64;
            let mut energy_at_max = f64::NAN;
            let mut contributing = 0usize;
            let mut cluster: Vec<Vec<f64>> = Vec::new();
            let mut cluster_ev = f64::NEG_INFINITY;
            for k in k_lo..k_hi {
                let ev = bisect_eigenvalue(&g.d, &g.e, k, lo, hi);
                if (ev - cluster_ev).abs() > 1e-9 * scale {
                    cluster.clear();
                }
                let v = inverse_iterate(&g.d, &g.e, ev, &cluster, 0x9900 + k as u64);
                let diag = diagnose_vector(&v, n_half);
                cluster.push(v);
                if cluster.len() > 8 {
                    cluster.remove(0);
                }
                cluster_ev = ev;
                if diag.edge_mass < 0.01 {
                    contributing += 1;
                    if diag.ipr > max_ipr {
                        max_ipr = diag.ipr;
                        energy_at_max = ev;
                    }
                }
            }
            rows.push(ProbeRow {
                theta: *theta,
                n_half,
                max_ipr,
                energy_at_max,
                contributing,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::lyapunov;
    use crate::GOLDEN;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn triple(l1: f64, l2: f64, l3: f64) -> CouplingTriple {
        CouplingTriple::new(l1, l2, l3).expect("valid test triple")
    }

    /// The 2×2 block of the free-hopping triple at θ = 0, k = 0 in closed
    /// form, eigenvalues ±2√2.
    #[test]
    fn bloch_two_site_closed_form() {
        let lambda = triple(0.0, 1.0, 0.0);
        let h = bloch_matrix(&lambda, 1, 2, 0.0, 0.0).unwrap();
        let expect = [[2.0, 2.0], [2.0, -2.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (h[(i, j)] - C64::new(expect[i][j], 0.0)).norm() < 1e-14,
                    "entry ({i},{j}) = {}",
                    h[(i, j)]
                );
            }
        }
        let mut evs: Vec<f64> = nalgebra::SymmetricEigen::new(h)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        evs.sort_by(f64::total_cmp);
        let r = 8.0f64.sqrt();
        assert!((evs[0] + r).abs() < 1e-12 && (evs[1] - r).abs() < 1e-12);
    }

    /// Hermiticity to rounding for random parameters, and the q = 1 scalar
    /// closed form.
    #[test]
    fn bloch_hermitian_and_single_site() {
        let mut rng = StdRng::seed_from_u64(3133);
        for _ in 0..40 {
            let lambda = triple(
                rng.gen_range(0.0..1.5),
                rng.gen_range(0.1..2.0),
                rng.gen_range(0.0..1.5),
            );
            let theta = rng.gen_range(0.0..1.0);
            let k = rng.gen_range(0.0..1.0);
            let h = bloch_matrix(&lambda, 2, 5, theta, k).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    assert!(
                        (h[(i, j)] - h[(j, i)].conj()).norm() < 1e-15,
                        "Hermiticity defect at ({i},{j})"
                    );
                }
            }
            let h1 = bloch_matrix(&lambda, 0, 1, theta, k).unwrap();
            let c = symbol_eval(
                &lambda.symbol(0.0, SymbolKind::C),
                C64::new(theta.rem_euclid(1.0), 0.0),
            )
            .unwrap();
            let expect = 2.0 * (TAU * theta).cos() + 2.0 * (c * C64::from_polar(1.0, TAU * k)).re;
            assert!((h1[(0, 0)].re - expect).abs() < 1e-13);
        }
        assert!(matches!(
            bloch_matrix(&triple(0.1, 1.0, 0.1), 2, 4, 0.0, 0.0),
            Err(EhmError::Domain(_))
        ));
    }

    /// A 5×5 block entry cross-checked against the symbol evaluated by the
    /// independent model path.
    #[test]
    fn bloch_entry_spot_check() {
        let lambda = triple(0.4, 1.2, 0.8);
        let (theta, alpha) = (0.17, 2.0 / 5.0);
        let h = bloch_matrix(&lambda, 2, 5, theta, 0.3).unwrap();
        let c0 = symbol_eval(
            &lambda.symbol(alpha, SymbolKind::C),
            C64::new(theta, 0.0),
        )
        .unwrap();
        assert!((h[(0, 1)] - c0).norm() < 1e-15);
        assert!((h[(0, 0)].re - 2.0 * (TAU * theta).cos()).abs() < 1e-15);
    }

    /// Free hopping at p/q = 1/2: one merged band [−2√2, 2√2] of measure 4√2
    /// (the two Bloch bands touch at E = 0 on any grid containing θ = 1/4,
    /// k = 1/2).
    #[test]
    fn amo_half_flux_single_band() {
        let lambda = triple(0.0, 1.0, 0.0);
        let spec = approximant_spectrum(&lambda, 1, 2, 8, 8).unwrap();
        assert_eq!(spec.bands.len(), 1, "bands: {:?}", spec.bands);
        let r = 8.0f64.sqrt();
        assert!((spec.bands[0][0] + r).abs() < 1e-12);
        assert!((spec.bands[0][1] - r).abs() < 1e-12);
        assert!((spec.total_measure - 4.0 * 2.0f64.sqrt()).abs() < 1e-12);
    }

    /// Critical free-hopping bandwidth shrinks roughly like 1/q along the
    /// Fibonacci rationals.
    #[test]
    fn critical_measure_shrinks_inverse_q() {
        let lambda = triple(0.0, 1.0, 0.0);
        let fib = [(5u64, 8u64), (8, 13), (13, 21), (21, 34), (34, 55)];
        let mut pts = Vec::new();
        let mut prev = f64::INFINITY;
        for &(p, q) in &fib {
            let spec = approximant_spectrum(&lambda, p, q, 16, 16).unwrap();
            assert!(
                spec.total_measure < prev,
                "measure should decrease with q, got {} at q={}",
                spec.total_measure,
                q
            );
            prev = spec.total_measure;
            pts.push(((q as f64).ln(), spec.total_measure.ln()));
        }
        assert!(prev < 1.0, "measure at q=55 should be small, got {prev}");
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(
            (slope + 1.0).abs() < 0.2,
            "log-measure slope {slope:.4} should be −1 ± 0.2"
        );
    }

    /// Spectra duality at matched 2q grids: the self-dual triple reproduces
    /// itself to rounding; an interior pair and a line-II triple agree to the
    /// loose tolerance.
    #[test]
    fn spectra_duality_at_matched_grids() {
        let d0 = duality_spectrum_check(&triple(0.0, 1.0, 0.0), 8, 13, 26).unwrap();
        assert!(d0 < 1e-10, "self-dual distance {d0:.3e}");
        let d1 = duality_spectrum_check(&triple(0.3, 0.5, 0.2), 8, 13, 26).unwrap();
        assert!(d1 < 1e-4, "interior pair distance {d1:.3e}");
        let d2 = duality_spectrum_check(&triple(0.5, 1.0, 0.3), 8, 13, 26).unwrap();
        assert!(d2 < 1e-4, "line-II distance {d2:.3e}");
    }

    /// The N = 5 truncation against a dense independent eigensolve.
    #[test]
    fn truncated_matches_dense_small() {
        let lambda = triple(0.0, 1.0, 0.0);
        let theta = Phase::generic(0.0);
        let sys = truncated_eigensystem(&lambda, GOLDEN, &theta, 5, None).unwrap();
        assert_eq!(sys.eigenvalues.len(), 11);
        let mut dense = DMatrix::<f64>::zeros(11, 11);
        for i in 0..11 {
            let n = i as i64 - 5;
            dense[(i, i)] = 2.0 * (TAU * (n as f64 * GOLDEN).rem_euclid(1.0)).cos();
            if i + 1 < 11 {
                dense[(i, i + 1)] = 1.0;
                dense[(i + 1, i)] = 1.0;
            }
        }
        let mut evs: Vec<f64> = nalgebra::SymmetricEigen::new(dense)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        evs.sort_by(f64::total_cmp);
        for (a, b) in sys.eigenvalues.iter().zip(&evs) {
            assert!((a - b).abs() < 1e-11, "eigenvalue mismatch {a} vs {b}");
        }
        for slot in 0..sys.computed.len() {
            assert!(
                sys.residual(slot) < 1e-10,
                "residual {:.3e} at slot {slot}",
                sys.residual(slot)
            );
        }
    }

    /// The gauge must reassemble complex eigenvectors of the ungauged
    /// truncation: apply the complex operator directly.
    #[test]
    fn gauge_reconstructs_complex_eigenvectors() {
        let lambda = triple(0.4, 1.2, 0.8);
        let theta = Phase::generic(0.2137);
        let alpha = GOLDEN;
        let n_half = 40usize;
        let sys = truncated_eigensystem(&lambda, alpha, &theta, n_half, None).unwrap();
        let m = 2 * n_half + 1;
        let sym = lambda.symbol(alpha, SymbolKind::C);
        let site = |i: usize| -> f64 {
            let n = i as i64 - n_half as i64;
            let off = exact_frac_part(alpha, n.unsigned_abs());
            if n >= 0 {
                (theta.theta + off).rem_euclid(1.0)
            } else {
                (theta.theta - off).rem_euclid(1.0)
            }
        };
        for slot in [0usize, m / 2, m - 1] {
            let ev = sys.eigenvalues[sys.computed[slot]];
            let u = sys.complex_vector(slot);
            let mut worst: f64 = 0.0;
            for i in 0..m {
                let mut r = C64::new(2.0 * (TAU * site(i)).cos() - ev, 0.0) * u[i];
                if i + 1 < m {
                    let t = symbol_eval(&sym, C64::new(site(i), 0.0)).unwrap();
                    r += t * u[i + 1];
                }
                if i > 0 {
                    let t = symbol_eval(&sym, C64::new(site(i - 1), 0.0)).unwrap();
                    r += t.conj() * u[i - 1];
                }
                worst = worst.max(r.norm());
            }
            assert!(
                worst < 1e-10,
                "complex residual {worst:.3e} at slot {slot}"
            );
        }
    }

    /// Localized regime: eigenvector decay matches the Lyapunov exponent at
    /// the same energy within 15%.
    #[test]
    fn decay_rate_tracks_lyapunov() {
        let lambda = triple(0.0, 0.4, 0.0);
        let theta = Phase::generic(0.2137);
        let sys = truncated_eigensystem(&lambda, GOLDEN, &theta, 800, None).unwrap();
        // strongest well-separated localized state in the bulk
        let mut best: Option<(usize, LocalizationDiagnostics)> = None;
        for slot in 0..sys.computed.len() {
            let k = sys.computed[slot];
            if k < sys.eigenvalues.len() / 5 || k >= 4 * sys.eigenvalues.len() / 5 {
                continue;
            }
            let diag = diagnose_vector(&sys.vectors[slot], sys.n_half);
            if diag.edge_mass < 1e-4
                && best.map(|(_, b)| diag.ipr > b.ipr).unwrap_or(true)
            {
                best = Some((slot, diag));
            }
        }
        let (slot, diag) = best.expect("some localized state");
        let ev = sys.eigenvalues[sys.computed[slot]];
        let le = lyapunov(&lambda, ev, GOLDEN, 20_000, 8).unwrap();
        assert!(
            (diag.decay_rate - le.le_regularized).abs() < 0.15 * le.le_regularized,
            "decay {:.4} vs exponent {:.4}",
            diag.decay_rate,
            le.le_regularized
        );
    }

    /// Diagnostics stay inside their defining ranges, and the probe streams
    /// without blowing up: extended-regime IPR falls with N while the
    /// localized control stays put.
    #[test]
    fn probe_trends_and_bounds() {
        let theta = [Phase::generic(0.2137)];
        let rows_ac = point_spectrum_probe(
            &triple(0.2, 1.0, 1.0),
            GOLDEN,
            &theta,
            &[250, 500, 1000],
        )
        .unwrap();
        for r in &rows_ac {
            let m = (2 * r.n_half + 1) as f64;
            assert!(r.max_ipr >= 1.0 / m && r.max_ipr <= 1.0);
        }
        assert!(
            rows_ac[0].max_ipr > rows_ac[1].max_ipr && rows_ac[1].max_ipr > rows_ac[2].max_ipr,
            "extended-regime IPR should fall with N: {:?}",
            rows_ac.iter().map(|r| r.max_ipr).collect::<Vec<_>>()
        );
        let rows_loc =
            point_spectrum_probe(&triple(0.0, 0.4, 0.0), GOLDEN, &theta, &[250, 500]).unwrap();
        let ratio = rows_loc[0].max_ipr / rows_loc[1].max_ipr;
        assert!(
            (0.5..2.0).contains(&ratio),
            "localized-control IPR should be N-stable, ratio {ratio:.3}"
        );
    }
}
