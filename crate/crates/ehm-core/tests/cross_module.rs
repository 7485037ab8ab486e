//! Integration checks that chain several modules end to end, at sizes small
//! enough to run alongside the unit suites. The heavyweight equivalents live
//! in the acceptance target.

use ehm_core::cocycle::lyapunov;
use ehm_core::duality::{
    conjugacy_residual, det_identity_check, dual_equation_residual, sequence_to_torus,
};
use ehm_core::model::{CouplingTriple, Phase};
use ehm_core::spectral::{
    approximant_spectrum, diagnose_vector, point_spectrum_probe, truncated_eigensystem,
};
use ehm_core::winding::factorize;
use ehm_core::GOLDEN;

/// A deeply localized eigenvector of the truncated operator, read as Fourier
/// coefficients of a torus function, must solve both dual eigenvalue
/// equations, conjugate the dual transfer cocycle to the phase rotation, and
/// make |det M|·|c|(x−α) constant.
#[test]
fn localized_truncation_feeds_the_duality_chain() {
    let lam = CouplingTriple::new(0.1, 0.4, 0.2).unwrap();
    let theta = Phase::generic(0.1234);
    let n_half = 1200usize;

    // strongest bulk-localized eigenpair, located by the streaming probe
    let probe = point_spectrum_probe(&lam, GOLDEN, &[theta], &[n_half]).unwrap();
    let target_e = probe[0].energy_at_max;
    assert!(probe[0].max_ipr > 0.05, "IPR {:.3e}", probe[0].max_ipr);

    let sys = truncated_eigensystem(
        &lam,
        GOLDEN,
        &theta,
        n_half,
        Some((target_e - 1e-8, target_e + 1e-8)),
    )
    .unwrap();
    let slot = (0..sys.computed.len())
        .min_by(|&a, &b| {
            (sys.eigenvalues[sys.computed[a]] - target_e)
                .abs()
                .total_cmp(&(sys.eigenvalues[sys.computed[b]] - target_e).abs())
        })
        .expect("window nonempty");
    let energy = sys.eigenvalues[sys.computed[slot]];
    let diag = diagnose_vector(&sys.vectors[slot], n_half);
    assert!(diag.edge_mass < 1e-8, "edge mass {:.3e}", diag.edge_mass);
    assert!(sys.residual(slot) < 1e-10, "residual {:.3e}", sys.residual(slot));

    let u = sequence_to_torus(&sys.complex_vector(slot), 8192).unwrap();

    let r = dual_equation_residual(&lam, GOLDEN, theta.theta, energy, &u);
    assert!(r.r1 < 1e-6, "first dual equation residual {:.3e}", r.r1);
    assert!(r.r2 < 1e-6, "second dual equation residual {:.3e}", r.r2);

    let conj = conjugacy_residual(&lam, GOLDEN, theta.theta, energy, &u);
    assert_eq!(conj.excluded, 0, "dual symbol should be zero-free");
    assert!(conj.sup < 1e-6, "conjugacy defect {:.3e}", conj.sup);

    let det = det_identity_check(&lam, GOLDEN, &theta, &u);
    assert!(
        det.relative_variation < 1e-4,
        "relative variation {:.3e}",
        det.relative_variation
    );
    assert!(det.b_estimate > 0.0);
    assert!(!det.hypothesis_warning, "generic phase should not warn");
}

/// The zero-mean phase produced by the winding factorization is exactly the
/// kind of observable the Birkhoff machinery certifies: its sups along the
/// golden denominators must fall monotonically to the known value at 987.
#[test]
fn winding_phase_obeys_birkhoff_decay() {
    let lam = CouplingTriple::new(0.2, 1.0, 1.0).unwrap();
    let w = factorize(&lam, GOLDEN, 1024).unwrap();
    let f = w.to_analytic().unwrap();
    assert!(f.mean().norm() < 1e-12);

    let qs = [55u64, 89, 144, 233, 377, 610, 987];
    let mut sups = Vec::new();
    for &q in &qs {
        sups.push(ehm_core::birkhoff::sup_birkhoff(&f, GOLDEN, q, 4096));
    }
    for (pair, q) in sups.windows(2).zip(qs.windows(2)) {
        assert!(
            pair[1] < pair[0],
            "sup grew from q={} ({:.4e}) to q={} ({:.4e})",
            q[0],
            pair[0],
            q[1],
            pair[1]
        );
    }
    // Certified sup = grid max + Lipschitz margin, so it can only sit on or
    // slightly above the converged grid value.
    let last = *sups.last().unwrap();
    assert!(
        (4.270489e-3..4.6e-3).contains(&last),
        "sup at q=987: {last:.6e}"
    );
}

/// Periodic-approximant bands locate the spectrum well enough to predict the
/// Lyapunov exponent plateau: ln 2 at a band midpoint of the half-hopping
/// cosine operator, and strictly larger off the spectrum.
#[test]
fn approximant_bands_predict_lyapunov_plateau() {
    let lam = CouplingTriple::new(0.0, 0.5, 0.0).unwrap();
    let spec = approximant_spectrum(&lam, 13, 21, 16, 16).unwrap();
    let widest = spec
        .bands
        .iter()
        .max_by(|x, y| (x[1] - x[0]).total_cmp(&(y[1] - y[0])))
        .unwrap();
    let mid = 0.5 * (widest[0] + widest[1]);
    let inside = lyapunov(&lam, mid, GOLDEN, 50_000, 8).unwrap();
    assert!(
        (inside.le_regularized - std::f64::consts::LN_2).abs() < 0.02,
        "in-band exponent {:.4}",
        inside.le_regularized
    );
    let top = spec.bands.last().unwrap()[1];
    let outside = lyapunov(&lam, top + 1.0, GOLDEN, 50_000, 8).unwrap();
    assert!(
        outside.le_regularized > std::f64::consts::LN_2 + 0.3,
        "off-spectrum exponent {:.4}",
        outside.le_regularized
    );
}
