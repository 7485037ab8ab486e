//! End-to-end acceptance run: one test per numbered criterion, each printing
//! a single pass/fail line with the measured numbers (visible with
//! `--nocapture`, and always in the failure dump). Tolerances live in the
//! verification module; nothing is loosened here.

use ehm_core::verify::{self, CriterionReport};

fn run(r: CriterionReport) {
    println!(
        "criterion {:2} [{}] {} — {}",
        r.id,
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        r.details
    );
    assert!(r.passed, "criterion {} ({}) failed: {}", r.id, r.name, r.details);
}

#[test]
fn c01_contfrac_distance_law() {
    run(verify::criterion_1());
}

#[test]
fn c02_involution_and_region_map() {
    run(verify::criterion_2());
}

#[test]
fn c03_winding_factorization() {
    run(verify::criterion_3());
}

#[test]
fn c04_birkhoff_uniform_smallness() {
    run(verify::criterion_4());
}

#[test]
fn c05_determinant_and_cascade() {
    run(verify::criterion_5());
}

#[test]
fn c06_convergence_factor() {
    run(verify::criterion_6());
}

#[test]
fn c07_spectra_duality() {
    run(verify::criterion_7());
}

#[test]
fn c08_lyapunov_known_values() {
    run(verify::criterion_8());
}

#[test]
fn c09_critical_bandwidth_scaling() {
    run(verify::criterion_9());
}

#[test]
fn c10_determinant_identity_and_singularity() {
    run(verify::criterion_10());
}

#[test]
fn c11_point_spectrum_probe() {
    run(verify::criterion_11());
}
