//! Coupling taxonomy, the duality involution, and the symbol functions.
//!
//! The coupling triple λ = (λ1, λ2, λ3) enters the operator through the
//! hopping symbol
//!
//! ```text
//! c_λ(θ) = λ1 e^{−2πi(θ+α/2)} + λ2 + λ3 e^{2πi(θ+α/2)}
//! ```
//!
//! and the parameter space splits into three closed regions in the
//! (λ1+λ3, λ2) plane — I: both ≤ 1, II: λ2 dominant, III: λ1+λ3 dominant —
//! glued along three boundary lines. The duality transformation
//! σ(λ) = (λ3/λ2, 1/λ2, λ1/λ2) is an involution that swaps the interiors of
//! I and II, maps III onto itself, and permutes the lines (L_I ↔ L_III,
//! L_II fixed). Region III splits further by isotropy: λ1 = λ3 behaves
//! completely differently from λ1 ≠ λ3 (its dual symbol can vanish on the
//! torus), so that test is exact equality — the isotropic set has measure
//! zero and is only reached on purpose.
//!
//! Numerically, "on a boundary line" is a toleranced predicate: constructing
//! λ1 + λ3 = 1 in floating point leaves detritus of order 1e−16, so
//! membership comparisons carry a relative slack of 1e−12 — far above
//! round-off, far below anything a caller could confuse with an interior
//! point.

use crate::error::{EhmError, Result};
use crate::{C64, TAU};
use serde::Serialize;

/// Relative slack for boundary-line membership (see module docs).
const LINE_TOL: f64 = 1e-12;

/// Coupling constants (λ1, λ2, λ3), with λ1, λ3 ≥ 0 and λ2 > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingTriple {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

/// The four region labels; III carries its isotropy split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    I,
    II,
    IIIIsotropic,
    IIIAnisotropic,
}

/// Boundary lines of the region partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Line {
    /// λ1+λ3 = 1, 0 < λ2 ≤ 1.
    LI,
    /// λ1+λ3 ≤ 1, λ2 = 1.
    LII,
    /// 1 ≤ λ1+λ3 = λ2.
    LIII,
}

/// Where a coupling triple sits: region, boundary lines it lies on, and
/// whether it is interior (no line, all region inequalities strict).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionLabel {
    pub region: Region,
    pub boundary_flags: Vec<Line>,
    pub interior: bool,
}

/// A phase θ, remembering whether it was *constructed* as α-rational
/// (2θ = jα + k). α-rationality of a float is numerically undecidable, so it
/// is never detected, only declared by construction; see
/// [`detect_alpha_rational`] for the advisory heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Phase {
    pub theta: f64,
    pub construction: PhaseKind,
}

/// Construction tag for [`Phase`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PhaseKind {
    Generic,
    /// 2θ = jα + k.
    AlphaRational { j: i64, k: i64 },
}

impl Phase {
    /// A generic phase, wrapped into [0,1).
    pub fn generic(theta: f64) -> Self {
        Phase {
            theta: theta.rem_euclid(1.0),
            construction: PhaseKind::Generic,
        }
    }

    /// The α-rational phase θ = (jα + k)/2 mod 1.
    pub fn alpha_rational(j: i64, k: i64, alpha: f64) -> Self {
        Phase {
            theta: (0.5 * (j as f64 * alpha + k as f64)).rem_euclid(1.0),
            construction: PhaseKind::AlphaRational { j, k },
        }
    }

    /// True if this phase was constructed α-rational.
    pub fn is_alpha_rational(&self) -> bool {
        matches!(self.construction, PhaseKind::AlphaRational { .. })
    }
}

/// Advisory-only heuristic: search |j|, |k| ≤ j_max for 2θ ≈ jα + k within
/// tol. A hit is evidence, not proof — floats cannot certify α-rationality.
pub fn detect_alpha_rational(theta: f64, alpha: f64, j_max: i64, tol: f64) -> Option<(i64, i64)> {
    for j in -j_max..=j_max {
        let t = 2.0 * theta - j as f64 * alpha;
        let k = t.round();
        if (t - k).abs() < tol && k.abs() <= j_max as f64 {
            return Some((j, k as i64));
        }
    }
    None
}

/// Which symbol a [`SymbolFunction`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymbolKind {
    /// c_λ(θ).
    C,
    /// c̃_λ(θ) — conj(c_λ) on ℝ, the analytic continuation conj(c(conj θ))
    /// off it.
    CTilde,
    /// |c|_λ(θ) = √(c·c̃), nonnegative on ℝ, principal branch off it.
    AbsC,
    /// The potential v(θ) = 2cos2πθ.
    PotentialV,
}

/// One of the four symbol functions attached to (λ, α).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolFunction {
    pub couplings: CouplingTriple,
    pub alpha: f64,
    pub kind: SymbolKind,
}

impl CouplingTriple {
    /// Validated constructor: λ1, λ3 ≥ 0 and λ2 > 0.
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        if !(l1 >= 0.0) || !(l3 >= 0.0) {
            return Err(EhmError::Domain("need l1 >= 0 and l3 >= 0".into()));
        }
        if !(l2 > 0.0) {
            return Err(EhmError::Domain("need l2 > 0".into()));
        }
        if !(l1.is_finite() && l2.is_finite() && l3.is_finite()) {
            return Err(EhmError::Domain("couplings must be finite".into()));
        }
        Ok(CouplingTriple { l1, l2, l3 })
    }

    /// λ1 + λ3, the off-center hopping weight the taxonomy runs on.
    pub fn side_sum(&self) -> f64 {
        self.l1 + self.l3
    }

    /// Exact isotropy test (see module docs for why exact).
    pub fn isotropic(&self) -> bool {
        self.l1 == self.l3
    }

    /// The symbol of given kind attached to these couplings and frequency α.
    pub fn symbol(&self, alpha: f64, kind: SymbolKind) -> SymbolFunction {
        SymbolFunction {
            couplings: *self,
            alpha,
            kind,
        }
    }
}

/// Toleranced equality at the scale of the operands.
fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= LINE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Toleranced ≥ at the scale of the operands.
fn ge(a: f64, b: f64) -> bool {
    a >= b - LINE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Classify a coupling triple into its region, with boundary-line flags.
///
/// The closed regions overlap along the lines; membership there follows the
/// priority III > II > I so that every triple gets exactly one label, while
/// the flag set records every line definition the triple satisfies.
pub fn classify(lambda: &CouplingTriple) -> RegionLabel {
    let s = lambda.side_sum();
    let l2 = lambda.l2;

    let region = if ge(s, 1.0) && ge(s, l2) {
        if lambda.isotropic() {
            Region::IIIIsotropic
        } else {
            Region::IIIAnisotropic
        }
    } else if ge(l2, 1.0) && ge(l2, s) {
        Region::II
    } else {
        Region::I
    };

    let mut boundary_flags = Vec::new();
    if close(s, 1.0) && l2 > 0.0 && (l2 < 1.0 || close(l2, 1.0)) {
        boundary_flags.push(Line::LI);
    }
    if close(l2, 1.0) && (s < 1.0 || close(s, 1.0)) {
        boundary_flags.push(Line::LII);
    }
    if close(s, l2) && ge(s, 1.0) {
        boundary_flags.push(Line::LIII);
    }

    let strict = match region {
        Region::I => s > 0.0 && s < 1.0 && l2 < 1.0 && !close(s, 1.0) && !close(l2, 1.0),
        Region::II => l2 > 1.0 && l2 > s && !close(l2, 1.0) && !close(l2, s),
        Region::IIIIsotropic | Region::IIIAnisotropic => {
            s > 1.0 && s > l2 && !close(s, 1.0) && !close(s, l2)
        }
    };
    RegionLabel {
        interior: boundary_flags.is_empty() && strict,
        region,
        boundary_flags,
    }
}

/// The duality transformation σ(λ) = (λ3/λ2, 1/λ2, λ1/λ2), an involution.
pub fn sigma(lambda: &CouplingTriple) -> CouplingTriple {
    CouplingTriple {
        l1: lambda.l3 / lambda.l2,
        l2: 1.0 / lambda.l2,
        l3: lambda.l1 / lambda.l2,
    }
}

/// Evaluate a symbol at complex θ (trigonometric polynomials continue
/// analytically off the torus; |c| continues as √(c·c̃) with the branch that
/// is positive on ℝ).
pub fn symbol_eval(s: &SymbolFunction, theta: C64) -> Result<C64> {
    let lam = &s.couplings;
    let phi = TAU * (theta + 0.5 * s.alpha);
    let i = C64::new(0.0, 1.0);
    match s.kind {
        SymbolKind::C => Ok(lam.l1 * (-i * phi).exp() + lam.l2 + lam.l3 * (i * phi).exp()),
        SymbolKind::CTilde => Ok(lam.l1 * (i * phi).exp() + lam.l2 + lam.l3 * (-i * phi).exp()),
        SymbolKind::PotentialV => Ok(2.0 * (TAU * theta).cos()),
        SymbolKind::AbsC => {
            if theta.im == 0.0 {
                let c = lam.l1 * (-i * phi).exp() + lam.l2 + lam.l3 * (i * phi).exp();
                Ok(C64::new(c.norm(), 0.0))
            } else {
                let c = lam.l1 * (-i * phi).exp() + lam.l2 + lam.l3 * (i * phi).exp();
                let ct = lam.l1 * (i * phi).exp() + lam.l2 + lam.l3 * (-i * phi).exp();
                let w = c * ct;
                let scale = (lam.l1 + lam.l2 + lam.l3).powi(2).max(1.0);
                if w.norm() < 1e-14 * scale {
                    return Err(EhmError::BranchUndefined);
                }
                Ok(w.sqrt())
            }
        }
    }
}

/// The two roots of λ1 z² + z + λ3 (the polynomial behind the dual symbol),
/// labeled by modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualSymbolRoots {
    /// (y_small, y_big) with |y_small| ≤ |y_big|; for a conjugate pair the
    /// moduli tie and the positive-imaginary root is second.
    pub roots: (C64, C64),
    /// λ1 = 0 collapses the quadratic to a line: one root z = −λ3, stored in
    /// both slots.
    pub degenerate: bool,
}

/// Roots of λ1 z² + z + λ3 = 0, labeled by modulus (the ± labels of the
/// quadratic formula do not order moduli consistently across the parameter
/// space). Both roots lie strictly outside the unit circle exactly when
/// λ3 > λ1 and λ1 + λ3 > 1 — the hypothesis of the winding factorization.
pub fn dual_symbol_roots(lambda: &CouplingTriple) -> Result<DualSymbolRoots> {
    let (l1, l3) = (lambda.l1, lambda.l3);
    if l1 == 0.0 && l3 == 0.0 {
        return Err(EhmError::ConstantSymbol);
    }
    if l1 == 0.0 {
        let z = C64::new(-l3, 0.0);
        return Ok(DualSymbolRoots {
            roots: (z, z),
            degenerate: true,
        });
    }
    let disc = 1.0 - 4.0 * l1 * l3;
    if disc >= 0.0 {
        // Stable real-root pair: the large root by direct formula, the small
        // one through the product λ3/λ1 (no cancellation).
        let big = (-1.0 - disc.sqrt()) / (2.0 * l1);
        let small = if l3 == 0.0 { 0.0 } else { (l3 / l1) / big };
        Ok(DualSymbolRoots {
            roots: (C64::new(small, 0.0), C64::new(big, 0.0)),
            degenerate: false,
        })
    } else {
        let re = -1.0 / (2.0 * l1);
        let im = (-disc).sqrt() / (2.0 * l1);
        Ok(DualSymbolRoots {
            roots: (C64::new(re, -im), C64::new(re, im)),
            degenerate: false,
        })
    }
}

/// Real zeros of c_λ on the torus, as θ ∈ [0,1).
///
/// The symbol can vanish only in the closure of region III: isotropic λ with
/// λ2 ≤ 2λ3 give cos2π(θ+α/2) = −λ2/(2λ3) (two simple zeros, collapsing to
/// one double zero at θ = 1/2 − α/2 when λ2 = 2λ3), and anisotropic λ on the
/// line λ1+λ3 = λ2 give the single simple zero θ = 1/2 − α/2. Everywhere
/// else in this operation's scope the list is empty.
pub fn real_roots_on_torus(lambda: &CouplingTriple, alpha: f64) -> Vec<f64> {
    let label = classify(lambda);
    let wrap = |t: f64| t.rem_euclid(1.0);
    match label.region {
        Region::IIIIsotropic => {
            let l3 = lambda.l3;
            if l3 == 0.0 {
                return vec![];
            }
            let ratio = lambda.l2 / (2.0 * l3);
            if close(ratio, 1.0) {
                vec![wrap(0.5 - 0.5 * alpha)]
            } else if ratio < 1.0 {
                let t = (-ratio).acos() / TAU;
                let mut out = vec![wrap(t - 0.5 * alpha), wrap(1.0 - t - 0.5 * alpha)];
                out.sort_by(f64::total_cmp);
                out
            } else {
                vec![]
            }
        }
        Region::IIIAnisotropic if close(lambda.side_sum(), lambda.l2) => {
            vec![wrap(0.5 - 0.5 * alpha)]
        }
        _ => vec![],
    }
}

/// Does the *dual* symbol c_{σ(λ)} vanish somewhere on the torus?
///
/// True exactly for isotropic region III and for anisotropic region III on
/// the line λ1+λ3 = 1 — the couplings whose duality analysis must cope with
/// a singular symbol. Equivalent to `real_roots_on_torus(sigma(λ))` being
/// nonempty.
pub fn dual_has_singularity(lambda: &CouplingTriple) -> bool {
    let label = classify(lambda);
    match label.region {
        Region::IIIIsotropic => true,
        Region::IIIAnisotropic => close(lambda.side_sum(), 1.0),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn lam(l1: f64, l2: f64, l3: f64) -> CouplingTriple {
        CouplingTriple::new(l1, l2, l3).unwrap()
    }

    #[test]
    fn classify_examples() {
        let a = classify(&lam(0.3, 0.5, 0.2));
        assert_eq!(a.region, Region::I);
        assert!(a.boundary_flags.is_empty() && a.interior);

        let b = classify(&lam(0.4, 1.0, 0.8));
        assert_eq!(b.region, Region::IIIAnisotropic);
        assert!(b.boundary_flags.is_empty(), "flags {:?}", b.boundary_flags);

        let c = classify(&lam(0.5, 1.0, 0.5));
        assert_eq!(c.region, Region::IIIIsotropic);
        assert_eq!(c.boundary_flags, vec![Line::LI, Line::LII, Line::LIII]);
        assert!(!c.interior);
    }

    #[test]
    fn classify_rejects_bad_domain() {
        assert!(CouplingTriple::new(0.1, 0.0, 0.1).is_err());
        assert!(CouplingTriple::new(-0.1, 1.0, 0.1).is_err());
        assert!(CouplingTriple::new(0.1, -2.0, 0.1).is_err());
    }

    #[test]
    fn line_membership_survives_float_construction() {
        // 0.4 + 0.6 and 0.3 + 0.7 land on different sides of exact 1.0 in
        // binary; both must still be flagged L_I.
        for &(l1, l3) in &[(0.4, 0.6), (0.3, 0.7), (0.45, 0.55)] {
            let label = classify(&lam(l1, 0.8, l3));
            assert!(
                label.boundary_flags.contains(&Line::LI),
                "({l1},{l3}) missed L_I: {:?}",
                label
            );
        }
    }

    #[test]
    fn sigma_examples_and_involution() {
        let s = sigma(&lam(0.3, 0.5, 0.2));
        assert!((s.l1 - 0.4).abs() < 1e-15);
        assert!((s.l2 - 2.0).abs() < 1e-15);
        assert!((s.l3 - 0.6).abs() < 1e-15);

        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10_000 {
            let l = lam(
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.05..3.0),
                rng.gen_range(0.0..2.0),
            );
            let ss = sigma(&sigma(&l));
            for (a, b) in [(ss.l1, l.l1), (ss.l2, l.l2), (ss.l3, l.l3)] {
                assert!(
                    (a - b).abs() <= 1e-14 * b.abs().max(1.0),
                    "involution broke at {:?}",
                    l
                );
            }
        }
    }

    #[test]
    fn sigma_maps_line_i_to_line_iii() {
        let img = sigma(&lam(0.4, 0.5, 0.6));
        assert!((img.l1 - 1.2).abs() < 1e-15);
        assert!((img.l2 - 2.0).abs() < 1e-15);
        assert!((img.l3 - 0.8).abs() < 1e-15);
        assert!(classify(&img).boundary_flags.contains(&Line::LIII));
    }

    #[test]
    fn region_bijections_on_random_interior_samples() {
        let mut rng = StdRng::seed_from_u64(12);
        let mut seen = [false; 3];
        for _ in 0..2000 {
            let l = lam(
                rng.gen_range(0.01..1.8),
                rng.gen_range(0.05..2.5),
                rng.gen_range(0.01..1.8),
            );
            let lab = classify(&l);
            if !lab.interior {
                continue;
            }
            let dual = classify(&sigma(&l));
            match lab.region {
                Region::I => {
                    assert_eq!(dual.region, Region::II, "{:?}", l);
                    seen[0] = true;
                }
                Region::II => {
                    assert_eq!(dual.region, Region::I, "{:?}", l);
                    seen[1] = true;
                }
                Region::IIIIsotropic | Region::IIIAnisotropic => {
                    assert!(
                        matches!(dual.region, Region::IIIIsotropic | Region::IIIAnisotropic),
                        "{:?}",
                        l
                    );
                    seen[2] = true;
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "some region never sampled: {seen:?}");
    }

    #[test]
    fn symbol_values_at_special_points() {
        // φ = 0: the symbol is the plain coefficient sum.
        let s = lam(0.0, 1.0, 2.0).symbol(0.25, SymbolKind::C);
        let v = symbol_eval(&s, C64::new(-0.125, 0.0)).unwrap();
        assert!((v - C64::new(3.0, 0.0)).norm() < 1e-14, "{v}");

        // Isotropic (1,1,1) vanishes where cos2π(θ+α/2) = −1/2.
        let s = lam(1.0, 1.0, 1.0).symbol(0.4, SymbolKind::C);
        let v = symbol_eval(&s, C64::new(1.0 / 3.0 - 0.2, 0.0)).unwrap();
        assert!(v.norm() < 1e-14, "{v}");
    }

    #[test]
    fn abs_c_agrees_with_sqrt_product_on_axis() {
        let lamv = lam(0.2, 1.0, 1.0);
        let alpha = 0.37;
        for j in 0..64 {
            let th = C64::new(j as f64 / 64.0, 0.0);
            let c = symbol_eval(&lamv.symbol(alpha, SymbolKind::C), th).unwrap();
            let ct = symbol_eval(&lamv.symbol(alpha, SymbolKind::CTilde), th).unwrap();
            let ab = symbol_eval(&lamv.symbol(alpha, SymbolKind::AbsC), th).unwrap();
            assert!((ct - c.conj()).norm() < 1e-14, "tilde is not conj at {th}");
            assert!(
                ((c * ct).re - ab.re * ab.re).abs() < 1e-12,
                "|c|^2 != c*ct at {th}"
            );
        }
    }

    #[test]
    fn abs_c_off_axis_is_analytic_continuation_with_positive_real_branch() {
        let lamv = lam(0.3, 1.1, 0.5);
        let s = lamv.symbol(0.21, SymbolKind::AbsC);
        // Near the axis the continuation must approach the on-axis value.
        let on = symbol_eval(&s, C64::new(0.3, 0.0)).unwrap();
        let off = symbol_eval(&s, C64::new(0.3, 1e-7)).unwrap();
        assert!((on - off).norm() < 1e-5, "{on} vs {off}");
        assert!(off.re > 0.0);
    }

    #[test]
    fn branch_error_at_off_axis_zero() {
        // For isotropic couplings c·c̃ vanishes where cos2πz = −λ2/(2λ3);
        // λ2 > 2λ3 pushes the zero off the real axis: cos2πz = −1 − d has
        // solutions z = 1/2 + i·acosh(1+d)/2π.
        let lamv = lam(1.0, 3.0, 1.0);
        let alpha = 0.3;
        let d: f64 = 0.5; // λ2/(2λ3) = 1.5
        let y = (1.0 + d).acosh() / TAU;
        let z = C64::new(0.5 - 0.5 * alpha, y);
        let s = lamv.symbol(alpha, SymbolKind::AbsC);
        assert_eq!(symbol_eval(&s, z).unwrap_err(), EhmError::BranchUndefined);
    }

    #[test]
    fn dual_symbol_roots_examples() {
        let r = dual_symbol_roots(&lam(0.2, 1.0, 1.0)).unwrap();
        assert!(!r.degenerate);
        assert!((r.roots.0.re + 1.3819660).abs() < 1e-6, "{:?}", r.roots);
        assert!((r.roots.1.re + 3.6180340).abs() < 1e-6, "{:?}", r.roots);
        let prod = r.roots.0 * r.roots.1;
        assert!((prod.re - 5.0).abs() < 1e-12 && prod.im == 0.0);

        let r = dual_symbol_roots(&lam(0.5, 1.0, 0.6)).unwrap();
        assert!((r.roots.1 - C64::new(-1.0, 0.4472136)).norm() < 1e-6);
        assert!((r.roots.0.norm() - 1.2f64.sqrt()).abs() < 1e-12);

        let r = dual_symbol_roots(&lam(0.0, 1.0, 2.0)).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.roots.0, C64::new(-2.0, 0.0));

        assert_eq!(
            dual_symbol_roots(&lam(0.0, 1.0, 0.0)).unwrap_err(),
            EhmError::ConstantSymbol
        );
    }

    #[test]
    fn root_moduli_product_matches_vieta() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..1000 {
            let l = lam(
                rng.gen_range(0.01..2.0),
                rng.gen_range(0.1..2.0),
                rng.gen_range(0.0..2.0),
            );
            let r = dual_symbol_roots(&l).unwrap();
            assert!(r.roots.0.norm() <= r.roots.1.norm() + 1e-15);
            let prod = r.roots.0.norm() * r.roots.1.norm();
            assert!(
                (prod - l.l3 / l.l1).abs() <= 1e-12 * (l.l3 / l.l1).max(1.0),
                "vieta broke at {:?}",
                l
            );
        }
    }

    #[test]
    fn both_roots_outside_unit_circle_iff_hypothesis() {
        let mut rng = StdRng::seed_from_u64(14);
        for _ in 0..2000 {
            let l = lam(
                rng.gen_range(0.01..1.5),
                1.0,
                rng.gen_range(0.01..1.5),
            );
            let r = dual_symbol_roots(&l).unwrap();
            let outside = r.roots.0.norm() > 1.0 && r.roots.1.norm() > 1.0;
            let hyp = l.l3 > l.l1 && l.l1 + l.l3 > 1.0;
            if (l.l3 - l.l1).abs() < 1e-3 || (l.l1 + l.l3 - 1.0).abs() < 1e-3 {
                continue; // skip the boundary where a root touches the circle
            }
            assert_eq!(outside, hyp, "at {:?} roots {:?}", l, r.roots);
        }
    }

    #[test]
    fn real_roots_examples() {
        let alpha = crate::GOLDEN;
        let r = real_roots_on_torus(&lam(1.0, 1.0, 1.0), alpha);
        let expect = [
            (1.0 / 3.0 - alpha / 2.0).rem_euclid(1.0),
            (2.0 / 3.0 - alpha / 2.0).rem_euclid(1.0),
        ];
        assert_eq!(r.len(), 2);
        for e in expect {
            assert!(
                r.iter().any(|&t| (t - e).abs() < 1e-12),
                "missing root {e} in {r:?}"
            );
        }

        // arccos(−1/1.2)/2π and its mirror, to 30-digit precision.
        let r = real_roots_on_torus(&lam(0.6, 1.0, 0.6), alpha);
        assert_eq!(r.len(), 2);
        for t in &r {
            let shifted = (t + alpha / 2.0).rem_euclid(1.0);
            assert!(
                (shifted - 0.40678525066133135).abs() < 1e-12
                    || (shifted - 0.59321474933866865).abs() < 1e-12,
                "θ+α/2 = {shifted}"
            );
        }

        let r = real_roots_on_torus(&lam(0.4, 1.2, 0.8), alpha);
        assert_eq!(r.len(), 1);
        assert!((r[0] - (0.5 - alpha / 2.0).rem_euclid(1.0)).abs() < 1e-14);

        assert!(real_roots_on_torus(&lam(0.2, 1.0, 1.0), alpha).is_empty());
    }

    #[test]
    fn roots_actually_annihilate_the_symbol() {
        let alpha = 0.299792458;
        for l in [lam(1.0, 1.0, 1.0), lam(0.6, 1.0, 0.6), lam(0.4, 1.2, 0.8)] {
            let s = l.symbol(alpha, SymbolKind::C);
            for t in real_roots_on_torus(&l, alpha) {
                let v = symbol_eval(&s, C64::new(t, 0.0)).unwrap();
                assert!(v.norm() < 1e-12, "c({t}) = {v} for {:?}", l);
            }
        }
    }

    #[test]
    fn dual_singularity_examples_and_equivalence() {
        assert!(dual_has_singularity(&lam(1.0, 1.0, 1.0)));
        assert!(dual_has_singularity(&lam(0.3, 1.0, 0.7)));
        assert!(!dual_has_singularity(&lam(0.2, 1.0, 1.0)));

        let mut rng = StdRng::seed_from_u64(15);
        for _ in 0..2000 {
            let iso = rng.gen_bool(0.3);
            let l1 = rng.gen_range(0.01..1.5);
            let l3 = if iso { l1 } else { rng.gen_range(0.01..1.5) };
            let l = lam(l1, rng.gen_range(0.1..2.0), l3);
            let dual_roots = real_roots_on_torus(&sigma(&l), 0.377);
            assert_eq!(
                dual_has_singularity(&l),
                !dual_roots.is_empty(),
                "equivalence broke at {:?} (dual {:?})",
                l,
                sigma(&l)
            );
        }
    }

    #[test]
    fn alpha_rational_phase_construction_and_detection() {
        let alpha = crate::GOLDEN;
        let p = Phase::alpha_rational(1, 0, alpha);
        assert!((2.0 * p.theta - alpha).rem_euclid(1.0).min(1.0 - (2.0 * p.theta - alpha).rem_euclid(1.0)) < 1e-15);
        assert!(p.is_alpha_rational());
        let hit = detect_alpha_rational(p.theta, alpha, 4, 1e-9);
        assert_eq!(hit, Some((1, 0)));
        assert_eq!(detect_alpha_rational(0.1234, alpha, 4, 1e-9), None);
    }
}
