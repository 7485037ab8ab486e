//! Continued-fraction machinery for rotation frequencies.
//!
//! A frequency α ∈ (0,1) is described by its partial quotients a_1, a_2, …
//! and convergents p_m/q_m, computed in exact integer arithmetic. The
//! denominators control everything downstream: the distance law
//! 1/(2q_{m+1}) ≤ ‖q_mα‖ ≤ 1/q_{m+1} is what makes Birkhoff sums along the
//! rotation by α small at the scales q_m, and the growth exponent
//! β = limsup ln(q_{m+1})/q_m separates the bounded-type/Diophantine world
//! (β = 0, cohomological-equation arguments apply) from the Liouville world
//! (β > 0, quantitative Dirichlet-kernel bounds along a sparse subsequence
//! of denominators).
//!
//! Two expansion paths are provided. The numeric Gauss map is the everyday
//! one; it stops once the residual falls below q_m²·ε, because beyond that
//! point floating noise — not α — determines the terms. For statements that
//! must hold *exactly* (the distance law has exact integer content), a second
//! path treats the input double as the dyadic rational it literally is and
//! runs integer Euclid on it, so arbitrary depths carry no floating error.

use crate::error::{EhmError, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// How a [`FrequencyCF`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CfSource {
    /// Floating Gauss-map expansion of a double, depth-limited by the noise
    /// stopping rule.
    Numeric,
    /// Exact integer arithmetic from explicitly supplied (or exactly derived)
    /// partial quotients.
    ExplicitTerms,
}

/// A frequency with its continued-fraction data: partial quotients and exact
/// convergents p_m/q_m (coprime, q strictly increasing).
#[derive(Debug, Clone, Serialize)]
pub struct FrequencyCF {
    /// The frequency itself (for explicit terms: the convergent limit to
    /// working precision).
    pub value: f64,
    /// Partial quotients a_1..a_M.
    pub terms: Vec<u64>,
    /// Convergents (p_m, q_m), m = 1..M, exact integers.
    pub convergents: Vec<(BigUint, BigUint)>,
    /// Provenance of the expansion.
    pub source: CfSource,
}

/// Finite estimate of β = limsup ln(q_{m+1})/q_m, reported with its raw
/// samples because a finite expansion can only bound a limsup.
#[derive(Debug, Clone, Serialize)]
pub struct BetaEstimate {
    /// (q_m, ln(q_{m+1})/q_m) for every stored m with a successor.
    pub samples: Vec<(f64, f64)>,
    /// Max of the samples over m ≥ tail_start (1-based).
    pub beta: f64,
    /// The tail start the max was taken over.
    pub tail_start: usize,
}

/// Which rule produced a denominator subsequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubseqRule {
    /// β = 0: every index works (the cohomological route needs no sparsity).
    All,
    /// β > 0: only indices with the exponential gap q_{m+1} ≥ e^{(β/2)q_m}.
    ExponentialGap,
}

/// Selected convergent indices m_1 < m_2 < … used for Birkhoff decay.
#[derive(Debug, Clone, Serialize)]
pub struct DenominatorSubsequence {
    /// 1-based indices into the convergent list.
    pub indices: Vec<usize>,
    /// The selection rule that was applied.
    pub rule: SubseqRule,
}

impl FrequencyCF {
    /// Build from explicit partial quotients, exactly. The value reported is
    /// the convergent limit evaluated backwards in floating point (stable for
    /// arbitrarily large quotients).
    pub fn from_terms(terms: &[u64]) -> Result<Self> {
        if terms.is_empty() {
            return Err(EhmError::Domain("empty term list".into()));
        }
        if terms.iter().any(|&a| a == 0) {
            return Err(EhmError::Domain("partial quotients must be >= 1".into()));
        }
        let convergents = convergents_of(terms);
        let value = backward_value(terms);
        Ok(FrequencyCF {
            value,
            terms: terms.to_vec(),
            convergents,
            source: CfSource::ExplicitTerms,
        })
    }

    /// Number of stored convergents.
    pub fn depth(&self) -> usize {
        self.convergents.len()
    }

    /// q_m as f64 (1-based m). Saturates for gigantic denominators.
    pub fn q_f64(&self, m: usize) -> f64 {
        big_to_f64(&self.convergents[m - 1].1)
    }

    /// q_m as u64 (1-based m); None if it does not fit.
    pub fn q_u64(&self, m: usize) -> Option<u64> {
        self.convergents[m - 1].1.to_u64()
    }

    /// ln(q_m), computed from the big integer so it is finite even when q_m
    /// overflows f64.
    pub fn ln_q(&self, m: usize) -> f64 {
        ln_big(&self.convergents[m - 1].1)
    }

    /// Float sanity check of the distance law on every checkable index
    /// (m with a stored successor), with multiplicative slack for rounding
    /// in q_m·α. Exactness is the business of [`distance_law_exact`].
    pub fn distance_law_ok(&self, slack: f64) -> bool {
        (1..self.depth())
            .all(|m| {
                let qm = self.q_f64(m);
                let qn = self.q_f64(m + 1);
                let d = dist_to_z(qm * self.value);
                d * qn <= 1.0 + slack && 2.0 * qn * d >= 1.0 - slack
            })
    }
}

/// Distance from x to the nearest integer, ‖x‖ ∈ [0, 1/2].
pub fn dist_to_z(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Numeric expansion of x ∈ (0,1), keeping only trustworthy terms.
///
/// Two noise guards combine. First, the double x stands for any real in
/// [x−ulp, x+ulp]; only the common prefix of the exact expansions of the two
/// bracket endpoints is determined by x at all (beyond it, a floor can flip
/// on which real the double means — a plain float Gauss map happily emits
/// such coin-flip terms after any large quotient). Second, the residual rule:
/// once the Gauss-map residual drops below q_m²·ε, further terms describe
/// rounding noise even when they are bracket-stable. Inputs rational to
/// working precision (fewer than two trustworthy terms) are refused.
pub fn cf_expand(x: f64, max_terms: usize) -> Result<FrequencyCF> {
    if max_terms < 1 {
        return Err(EhmError::Domain("max_terms < 1".into()));
    }
    if !(x > 0.0 && x < 1.0) || !x.is_finite() {
        return Err(EhmError::Domain("frequency must lie in (0,1)".into()));
    }
    let bits = x.to_bits();
    let lo_f = f64::from_bits(bits - 1).max(f64::MIN_POSITIVE);
    let hi_f = f64::from_bits(bits + 1);
    let t_lo = dyadic_cf_terms(lo_f, max_terms + 1);
    let t_hi = if hi_f < 1.0 {
        dyadic_cf_terms(hi_f, max_terms + 1)
    } else {
        dyadic_cf_terms(x, max_terms + 1)
    };
    let stable = t_lo
        .iter()
        .zip(&t_hi)
        .take_while(|(a, b)| a == b)
        .count()
        .min(max_terms);
    let mut terms: Vec<u64> = t_lo[..stable].to_vec();

    // Residual cap: walk the Gauss map and cut where r_m < q_m²·ε.
    let mut r = x;
    let (mut q_prev, mut q_curr) = (0.0_f64, 1.0_f64);
    for (m, &a) in terms.iter().enumerate() {
        if r <= q_curr * q_curr * f64::EPSILON {
            terms.truncate(m);
            break;
        }
        r = 1.0 / r - a as f64;
        let q_next = a as f64 * q_curr + q_prev;
        q_prev = q_curr;
        q_curr = q_next;
    }

    if terms.len() < 2 {
        return Err(EhmError::RationalInput);
    }
    let convergents = convergents_of(&terms);
    Ok(FrequencyCF {
        value: x,
        terms,
        convergents,
        source: CfSource::Numeric,
    })
}

/// Partial quotients of the exact dyadic rational a double is, as raw u64s
/// (quotients beyond u64 cannot occur for inputs bounded away from 0).
fn dyadic_cf_terms(x: f64, max_terms: usize) -> Vec<u64> {
    let (num, k) = dyadic_parts(x);
    let den = BigUint::one() << k;
    let mut hi = den;
    let mut lo = num;
    let mut terms = Vec::new();
    while !lo.is_zero() && terms.len() < max_terms {
        let q = &hi / &lo;
        let r = &hi % &lo;
        terms.push(q.to_u64().unwrap_or(u64::MAX));
        hi = lo;
        lo = r;
    }
    terms
}

/// Exact continued fraction of the dyadic rational a double literally is.
///
/// Every f64 in (0,1) equals A/2^k exactly; integer Euclid on (2^k, A) gives
/// its partial quotients with no floating error at any depth. This is the
/// expansion to use when a statement must hold exactly (distance law,
/// deep-denominator checks); its terms eventually describe the dyadic tail of
/// the representation rather than the real number the double approximates,
/// which is precisely what exactness means here.
pub fn cf_expand_dyadic(x: f64, max_terms: usize) -> Result<FrequencyCF> {
    if max_terms < 1 {
        return Err(EhmError::Domain("max_terms < 1".into()));
    }
    if !(x > 0.0 && x < 1.0) || !x.is_finite() {
        return Err(EhmError::Domain("frequency must lie in (0,1)".into()));
    }
    let (num, k) = dyadic_parts(x);
    let den = BigUint::one() << k;
    // x = num/den in lowest terms (num is odd). CF terms of x are the Euclid
    // quotients of den by num, since x < 1 shifts the expansion by one step.
    let mut hi = den;
    let mut lo = num;
    let mut terms: Vec<u64> = Vec::new();
    while !lo.is_zero() && terms.len() < max_terms {
        let q = &hi / &lo;
        let r = &hi % &lo;
        terms.push(q.to_u64().ok_or_else(|| {
            EhmError::Domain("partial quotient exceeds u64".into())
        })?);
        hi = lo;
        lo = r;
    }
    if terms.len() < 2 {
        return Err(EhmError::RationalInput);
    }
    let convergents = convergents_of(&terms);
    Ok(FrequencyCF {
        value: x,
        terms,
        convergents,
        source: CfSource::ExplicitTerms,
    })
}

/// Finite-sample estimate of the approximation exponent β(α).
///
/// Samples are ln(q_{m+1})/q_m; beta is their max over m ≥ tail_start. The
/// estimate is a lower bound for the true limsup and is nonincreasing in
/// tail_start (deeper tails discard large early samples).
pub fn estimate_beta(cf: &FrequencyCF, tail_start: usize) -> Result<BetaEstimate> {
    if tail_start < 1 {
        return Err(EhmError::Domain("tail_start must be >= 1".into()));
    }
    if cf.depth() < tail_start + 2 {
        return Err(EhmError::Precondition(format!(
            "need at least {} convergents, have {}",
            tail_start + 2,
            cf.depth()
        )));
    }
    let samples: Vec<(f64, f64)> = (1..cf.depth())
        .map(|m| (cf.q_f64(m), cf.ln_q(m + 1) / cf.q_f64(m)))
        .collect();
    let beta = samples[tail_start - 1..]
        .iter()
        .map(|&(_, b)| b)
        .fold(0.0_f64, f64::max);
    Ok(BetaEstimate {
        samples,
        beta,
        tail_start,
    })
}

/// Select the denominator subsequence along which Birkhoff sums decay.
///
/// β = 0: every index (the cohomological route handles all q_m at once).
/// β > 0: the m with q_{m+1} ≥ e^{(β/2)q_m}. The deepest checkable index must
/// itself satisfy the gap — otherwise the selection cannot be certified to
/// continue and the caller is told to extend the expansion (or fix β): for
/// bounded partial quotients no deep index ever satisfies a positive gap.
pub fn select_subsequence(cf: &FrequencyCF, beta: f64) -> Result<DenominatorSubsequence> {
    if beta < 0.0 {
        return Err(EhmError::Domain("beta must be >= 0".into()));
    }
    if beta == 0.0 {
        return Ok(DenominatorSubsequence {
            indices: (1..=cf.depth()).collect(),
            rule: SubseqRule::All,
        });
    }
    if cf.depth() < 2 {
        return Err(EhmError::ExtendExpansion);
    }
    // Compare in log space so e^{(β/2)q_m} never overflows.
    let gap_ok = |m: usize| cf.ln_q(m + 1) >= 0.5 * beta * cf.q_f64(m);
    let last = cf.depth() - 1;
    if !gap_ok(last) {
        return Err(EhmError::ExtendExpansion);
    }
    let indices: Vec<usize> = (1..=last).filter(|&m| gap_ok(m)).collect();
    Ok(DenominatorSubsequence {
        indices,
        rule: SubseqRule::ExponentialGap,
    })
}

/// ‖mult·x‖ computed exactly through the dyadic representation of x.
///
/// mult·x is a ratio of exact integers; only the final division rounds. Used
/// where mult is far beyond the range where mult*x in f64 is trustworthy.
pub fn exact_scaled_distance(x: f64, mult: u64) -> f64 {
    let (num, k) = dyadic_parts(x.fract().abs());
    if num.is_zero() {
        return 0.0;
    }
    let den = BigUint::one() << k;
    let t = num * BigUint::from(mult);
    let d = &t % &den;
    let r = (&den - &d).min(d);
    ratio_to_f64(&r, k)
}

/// frac(mult·x) ∈ [0,1) computed exactly through the dyadic representation
/// of x: mult·A mod 2^k, with only the final division rounding. The u128
/// fast path covers every normal x down to ~1e−19; wider exponents fall back
/// to big integers.
pub fn exact_frac_part(x: f64, mult: u64) -> f64 {
    let xf = x.fract().abs();
    if xf == 0.0 || mult == 0 {
        return 0.0;
    }
    let bits = xf.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    if exp_field != 0 {
        let mant = (bits & ((1u64 << 52) - 1)) | (1 << 52);
        let k = 1075 - exp_field; // xf = mant / 2^k, 1 <= k <= 1074
        if k <= 63 {
            let prod = mant as u128 * mult as u128;
            let rem = prod & ((1u128 << k) - 1);
            return rem as f64 / (k as f64).exp2();
        }
    }
    let (num, k) = dyadic_parts(xf);
    let den = BigUint::one() << k;
    let d = (num * BigUint::from(mult)) % &den;
    ratio_to_f64(&d, k)
}

/// Exact verification of the distance law 1/(2q_{m+1}) ≤ ‖q_mα‖ ≤ 1/q_{m+1}
/// for the dyadic rational α literally is, at every index m ≤ depth with a
/// stored successor. All comparisons are between exact integers:
/// B ≤ 2·q_{m+1}·r and r·q_{m+1} ≤ B, where α = A/B and r = ‖q_m·A mod B‖.
///
/// Returns (number of indices checked, law holds at all of them).
pub fn distance_law_exact(x: f64, depth: usize) -> Result<(usize, bool)> {
    let cf = cf_expand_dyadic(x, depth + 1)?;
    let (num, k) = dyadic_parts(x);
    let den = BigUint::one() << k;
    let two = BigUint::from(2u32);
    let mut checked = 0;
    for m in 1..cf.depth() {
        let qm = &cf.convergents[m - 1].1;
        let qn = &cf.convergents[m].1;
        if m > depth {
            break;
        }
        let t = qm * &num;
        let d = &t % &den;
        let r = (&den - &d).min(d);
        let lower = &den <= &(&two * qn * &r);
        let upper = &(&r * qn) <= &den;
        if !(lower && upper) {
            return Ok((checked + 1, false));
        }
        checked += 1;
    }
    Ok((checked, true))
}

/// Exact dyadic decomposition: x = A·2^{−k} with A odd (x ∈ (0,1)).
fn dyadic_parts(x: f64) -> (BigUint, u32) {
    debug_assert!(x >= 0.0 && x < 1.0 && x.is_finite());
    if x == 0.0 {
        return (BigUint::zero(), 0);
    }
    let bits = x.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut e) = if exp_field == 0 {
        (frac, -1074_i64) // subnormal
    } else {
        (frac | (1 << 52), exp_field - 1075)
    };
    while mant & 1 == 0 {
        mant >>= 1;
        e += 1;
    }
    (BigUint::from(mant), (-e) as u32)
}

/// Convergents (p_m, q_m) from partial quotients, exact.
fn convergents_of(terms: &[u64]) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::with_capacity(terms.len());
    let (mut p_prev, mut p_curr) = (BigUint::one(), BigUint::zero());
    let (mut q_prev, mut q_curr) = (BigUint::zero(), BigUint::one());
    for &a in terms {
        let a = BigUint::from(a);
        let p_next = &a * &p_curr + &p_prev;
        let q_next = &a * &q_curr + &q_prev;
        p_prev = p_curr;
        q_prev = q_curr;
        p_curr = p_next;
        q_curr = q_next;
        out.push((p_curr.clone(), q_curr.clone()));
    }
    out
}

/// Value of [0; a_1, a_2, …] by backward evaluation — stable for any term
/// sizes (1/huge underflows harmlessly to 0).
fn backward_value(terms: &[u64]) -> f64 {
    let mut v = 0.0_f64;
    for &a in terms.iter().rev() {
        v = 1.0 / (a as f64 + v);
    }
    v
}

/// BigUint → f64, finite for any size that fits, +∞ beyond.
fn big_to_f64(q: &BigUint) -> f64 {
    q.to_f64().unwrap_or(f64::INFINITY)
}

/// ln of a BigUint via its top 53 bits, finite even for thousands of bits.
fn ln_big(q: &BigUint) -> f64 {
    let bits = q.bits();
    if bits <= 53 {
        return big_to_f64(q).ln();
    }
    let shift = bits - 53;
    let top = (q >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// r/2^k as f64 without overflow for large k.
fn ratio_to_f64(r: &BigUint, k: u32) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let bits = r.bits();
    if bits <= 53 {
        return r.to_f64().unwrap() * exp2_i(-(k as i64));
    }
    let shift = bits - 53;
    let top = (r >> shift).to_f64().unwrap();
    top * exp2_i(shift as i64 - k as i64)
}

/// 2^e as f64 (subnormal results and overflow to ±∞ handled by powi).
fn exp2_i(e: i64) -> f64 {
    2f64.powi(e.clamp(-1100, 1100) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GOLDEN;

    #[test]
    fn golden_mean_gives_fibonacci_denominators() {
        let cf = cf_expand(GOLDEN, 8).unwrap();
        assert!(cf.terms.iter().all(|&a| a == 1), "terms {:?}", cf.terms);
        let q: Vec<u64> = (1..=8).map(|m| cf.q_u64(m).unwrap()).collect();
        assert_eq!(q, [1, 2, 3, 5, 8, 13, 21, 34]);
        assert!(cf.distance_law_ok(1e-9));
    }

    #[test]
    fn sqrt2_minus_one_has_all_twos() {
        let x = std::f64::consts::SQRT_2 - 1.0;
        let cf = cf_expand(x, 5).unwrap();
        assert!(cf.terms.iter().all(|&a| a == 2), "terms {:?}", cf.terms);
        let q: Vec<u64> = (1..=5).map(|m| cf.q_u64(m).unwrap()).collect();
        assert_eq!(q, [2, 5, 12, 29, 70]);
    }

    #[test]
    fn dist_to_z_examples() {
        assert!((dist_to_z(3.0 * 0.6180339887) - 0.145898).abs() < 1e-6);
        assert_eq!(dist_to_z(0.5), 0.5);
        assert_eq!(dist_to_z(7.0), 0.0);
        assert_eq!(dist_to_z(-2.25), 0.25);
    }

    #[test]
    fn rational_input_is_refused() {
        assert_eq!(cf_expand(0.5, 10).unwrap_err(), EhmError::RationalInput);
        assert_eq!(cf_expand(0.25, 10).unwrap_err(), EhmError::RationalInput);
        // fl(2/3) lies within one ulp of 2/3, whose expansion ends after two
        // terms — rational to working precision, hence refused as well.
        assert_eq!(
            cf_expand(2.0 / 3.0, 10).unwrap_err(),
            EhmError::RationalInput
        );
    }

    #[test]
    fn near_rational_stops_instead_of_emitting_noise() {
        // 5/8 + 1e-13: the honest expansion is [1,1,1,2] and nothing more —
        // the next term (order 1e11) shifts by ~0.1% across the one-ulp
        // bracket of the input, i.e. the double does not determine it.
        let cf = cf_expand(0.625 + 1e-13, 30).unwrap();
        assert_eq!(cf.terms, vec![1, 1, 1, 2], "terms {:?}", cf.terms);
    }

    #[test]
    fn explicit_liouville_schedule_reaches_beta_one() {
        // a_{m+1} = ceil(e^{q_m}) starting from a_1 = 2: terms 2, 8, 24154953.
        let cf = FrequencyCF::from_terms(&[2, 8, 24_154_953]).unwrap();
        let q: Vec<u64> = (1..=3).map(|m| cf.q_u64(m).unwrap()).collect();
        assert_eq!(q, [2, 17, 410_634_203]);
        let est = estimate_beta(&cf, 1).unwrap();
        assert!(est.beta >= 1.0, "beta estimate {}", est.beta);
        // ln(17)/2 ≈ 1.4166, ln(410634203)/17 ≈ 1.1667
        assert!((est.samples[0].1 - 1.4166).abs() < 1e-3);
        assert!((est.samples[1].1 - 1.1667).abs() < 1e-3);
    }

    #[test]
    fn beta_estimate_monotone_and_small_for_golden() {
        let cf = cf_expand(GOLDEN, 20).unwrap();
        let betas: Vec<f64> = (1..=10)
            .map(|t| estimate_beta(&cf, t).unwrap().beta)
            .collect();
        for w in betas.windows(2) {
            assert!(w[1] <= w[0] + 1e-15, "beta not monotone: {:?}", betas);
        }
        assert!(betas[9] < 0.2, "deep-tail beta too large: {}", betas[9]);
    }

    #[test]
    fn bounded_quotients_force_beta_toward_zero() {
        let cf = FrequencyCF::from_terms(&[10; 12]).unwrap();
        let est = estimate_beta(&cf, 3).unwrap();
        assert!(est.beta < 0.05, "beta {}", est.beta);
    }

    #[test]
    fn subsequence_all_for_beta_zero() {
        let cf = cf_expand(GOLDEN, 12).unwrap();
        let sub = select_subsequence(&cf, 0.0).unwrap();
        assert_eq!(sub.rule, SubseqRule::All);
        assert_eq!(sub.indices, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn liouville_subsequence_selects_every_constructed_step() {
        let cf = FrequencyCF::from_terms(&[2, 8, 24_154_953]).unwrap();
        let beta = estimate_beta(&cf, 1).unwrap().beta;
        let sub = select_subsequence(&cf, beta).unwrap();
        assert_eq!(sub.rule, SubseqRule::ExponentialGap);
        assert_eq!(sub.indices, vec![1, 2]);
    }

    #[test]
    fn wrong_beta_on_bounded_quotients_errors() {
        let x = std::f64::consts::SQRT_2 - 1.0;
        let cf = cf_expand(x, 12).unwrap();
        assert_eq!(
            select_subsequence(&cf, 0.5).unwrap_err(),
            EhmError::ExtendExpansion
        );
    }

    #[test]
    fn dyadic_expansion_matches_numeric_prefix() {
        for &x in &[GOLDEN, std::f64::consts::SQRT_2 - 1.0, 0.123456789] {
            let num = cf_expand(x, 10).unwrap();
            let dy = cf_expand_dyadic(x, 10).unwrap();
            assert_eq!(num.terms, dy.terms[..num.terms.len()].to_vec());
        }
    }

    #[test]
    fn exact_distance_law_holds_deep_for_golden() {
        let (checked, ok) = distance_law_exact(GOLDEN, 25).unwrap();
        assert!(ok);
        assert!(checked >= 20, "only {} indices checkable", checked);
    }

    #[test]
    fn exact_scaled_distance_agrees_with_direct_product_at_small_scale() {
        for &(x, m) in &[(GOLDEN, 13_u64), (0.7342118, 55), (0.111317, 377)] {
            let exact = exact_scaled_distance(x, m);
            let float = dist_to_z(m as f64 * x);
            assert!(
                (exact - float).abs() < 1e-10,
                "x={x} m={m}: {exact} vs {float}"
            );
        }
    }

    #[test]
    fn max_terms_zero_is_a_domain_error() {
        assert!(matches!(
            cf_expand(GOLDEN, 0).unwrap_err(),
            EhmError::Domain(_)
        ));
    }
}
