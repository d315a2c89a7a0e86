//! Exponent conditions and region geometry in the (1/q, 1/p) plane.
//!
//! Every admissibility region is decided from the printed inequalities in
//! exact rational arithmetic whenever the inputs are rational; no region
//! vertex is ever hard-coded. Exponents use the reciprocal convention:
//! `q = ∞` is stored as `1/q = 0`.

use crate::error::{Error, Result};
use crate::exact::Exact;
use std::fmt;

/// Dimension, dispersion order, regularity: the triple every condition
/// depends on. Requires `n >= 2` and `1 < alpha < 2`.
#[derive(Debug, Clone)]
pub struct ProblemParams {
    n: u32,
    alpha: Exact,
    gamma: Exact,
}

impl ProblemParams {
    pub fn new(n: u32, alpha: Exact, gamma: Exact) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} < 2")));
        }
        if !alpha.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidParameter("non-finite alpha/gamma".into()));
        }
        if !Exact::int(1).lt(&alpha) || !alpha.lt(&Exact::int(2)) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside (1, 2)"
            )));
        }
        Ok(Self { n, alpha, gamma })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n_exact(&self) -> Exact {
        Exact::int(self.n as i64)
    }

    pub fn alpha(&self) -> &Exact {
        &self.alpha
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64()
    }

    pub fn gamma(&self) -> &Exact {
        &self.gamma
    }

    pub fn gamma_f64(&self) -> f64 {
        self.gamma.to_f64()
    }

    pub fn with_gamma(&self, gamma: Exact) -> Self {
        Self {
            n: self.n,
            alpha: self.alpha.clone(),
            gamma,
        }
    }

    /// `2n/(2n-1) <= alpha`, the standing hypothesis of the estimates.
    pub fn alpha_in_wellposed_range(&self) -> bool {
        let lower = Exact::ratio(2 * self.n as i64, 2 * self.n as i64 - 1);
        lower.le(&self.alpha)
    }

    /// Open lower endpoint of the admissible regularity interval,
    /// `-(alpha-1) n / (2(n+1))`.
    pub fn gamma_lower_bound(&self) -> Exact {
        let n = self.n_exact();
        -&((&(&self.alpha - &Exact::int(1)) * &n) / &Exact::int(2 * (self.n as i64 + 1)))
    }
}

/// A point (1/q, 1/p) with both components in [0, 1].
#[derive(Debug, Clone)]
pub struct ExponentPoint {
    pub inv_q: Exact,
    pub inv_p: Exact,
}

impl ExponentPoint {
    pub fn new(inv_q: Exact, inv_p: Exact) -> Result<Self> {
        for (name, v) in [("1/q", &inv_q), ("1/p", &inv_p)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} not finite")));
            }
            if v.lt(&Exact::int(0)) || Exact::int(1).lt(v) {
                return Err(Error::InvalidParameter(format!("{name} = {v} outside [0,1]")));
            }
        }
        Ok(Self { inv_q, inv_p })
    }
}

/// A pair ((1/q, 1/p), (1/q̃, 1/p̃)).
#[derive(Debug, Clone)]
pub struct ExponentTuple {
    pub pair: ExponentPoint,
    pub dual_pair: ExponentPoint,
}

impl ExponentTuple {
    pub fn new(pair: ExponentPoint, dual_pair: ExponentPoint) -> Self {
        Self { pair, dual_pair }
    }

    pub fn swapped(&self) -> Self {
        Self {
            pair: self.dual_pair.clone(),
            dual_pair: self.pair.clone(),
        }
    }
}

/// Scaling condition: `alpha (1/q + 1/q̃) - n (1 - 1/p - 1/p̃) = 0`.
pub fn check_scaling_pair(params: &ProblemParams, t: &ExponentTuple) -> bool {
    let n = params.n_exact();
    let sum_q = &t.pair.inv_q + &t.dual_pair.inv_q;
    let sum_p = &t.pair.inv_p + &t.dual_pair.inv_p;
    let lhs = &(params.alpha() * &sum_q) - &(&n * &(&Exact::int(1) - &sum_p));
    lhs.eq_slack(&Exact::int(0))
}

/// Necessary condition for one pair: `1/q + n/p < n/2`, strictly.
pub fn check_necessary_point(params: &ProblemParams, pt: &ExponentPoint) -> bool {
    let n = params.n_exact();
    let lhs = &pt.inv_q + &(&n * &pt.inv_p);
    let rhs = &n / &Exact::int(2);
    lhs.lt(&rhs)
}

/// Admissibility for the homogeneous estimate:
/// `alpha/q + n/p = n/2 - gamma`, `2 <= q <= ∞`, and the excluded endpoint
/// `(q, p) = (2, (4n-2)/(2n-3))`.
pub fn check_homogeneous_admissible(params: &ProblemParams, inv_q: &Exact, inv_p: &Exact) -> bool {
    let n = params.n_exact();
    let lhs = &(params.alpha() * inv_q) + &(&n * inv_p);
    let rhs = &(&n / &Exact::int(2)) - params.gamma();
    if !lhs.eq_slack(&rhs) {
        return false;
    }
    let half = Exact::ratio(1, 2);
    if !(Exact::int(0).le(inv_q) && inv_q.le(&half)) {
        return false;
    }
    // Excluded endpoint, in reciprocal form (2n-3)/(4n-2).
    let endpoint_p = Exact::ratio(2 * self_i64(params.n) - 3, 4 * self_i64(params.n) - 2);
    !(inv_q.eq_slack(&half) && inv_p.eq_slack(&endpoint_p))
}

fn self_i64(n: u32) -> i64 {
    n as i64
}

/// The sharp diagonal range: `1/q, 1/q̃ < n/(2(n+1))` and
/// `1/q + 1/q̃ = n/(n+alpha)`.
pub fn check_sharp_diagonal(params: &ProblemParams, inv_q: &Exact, inv_qd: &Exact) -> bool {
    let n = params.n_exact();
    let cap = &n / &Exact::int(2 * (params.n as i64 + 1));
    if !inv_q.lt(&cap) || !inv_qd.lt(&cap) {
        return false;
    }
    let sum = inv_q + inv_qd;
    let target = &n / &(&n + params.alpha());
    sum.eq_slack(&target)
}

/// Region bounds for one pair of the mixed-norm corollary, all strict:
/// two inequalities pinning `1/q` affinely in `1/p`, and one pinning
/// `1/p` affinely in `1/q`.
pub fn check_corollary_region(params: &ProblemParams, inv_q: &Exact, inv_p: &Exact) -> bool {
    let n = params.n_exact();
    let alpha = params.alpha();
    let one = Exact::int(1);
    let two = Exact::int(2);
    let half = Exact::ratio(1, 2);

    // Shared denominators.
    let d1 = &(&(&(&two * alpha) - &one) * &n) + alpha; // (2a-1)n + a
    let d2 = &(&(alpha - &one) * &n) + alpha; // (a-1)n + a

    // Lower bound: -n(n+2-alpha)/((2a-1)n+a) * (1/p - 1/2) < 1/q.
    let coeff_lo = -&(&(&n * &(&(&n + &two) - alpha)) / &d1);
    let lower = &coeff_lo * &(inv_p - &half);
    if !lower.lt(inv_q) {
        return false;
    }

    // Upper bound: 1/q < -n/((a-1)n+a) * (1/p - (n-alpha)/(2n)) + 1/2.
    let coeff_up = -&(&n / &d2);
    let shift = &(&n - alpha) / &(&two * &n);
    let upper = &(&coeff_up * &(inv_p - &shift)) + &half;
    if !inv_q.lt(&upper) {
        return false;
    }

    // 1/p > [(a-1)n^2 - a^2 n - a^2] / (((2a-1)n+a) n) * (1/q)
    //        + alpha(n+2-alpha) / (2((2a-1)n+a)).
    let a2 = alpha * alpha.clone();
    let num = &(&(&(alpha - &one) * &(&n * &n)) - &(&a2 * &n)) - &a2;
    let slope = &num / &(&d1 * &n);
    let intercept = &(alpha * &(&(&n + &two) - alpha)) / &(&two * &d1);
    let bound = &(&slope * inv_q) + &intercept;
    bound.lt(inv_p)
}

/// Which well-posedness condition failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionFailure {
    /// `gamma` outside `(-(alpha-1)n/(2(n+1)), 0]` (precondition).
    GammaRange,
    /// `alpha` below `2n/(2n-1)` (precondition).
    AlphaRange,
    /// `alpha/q + n/p = n/2 - gamma` violated.
    SolutionScaling,
    /// `alpha/r + n/w = alpha` violated.
    PotentialScaling,
    /// `-gamma/(alpha-1) < 1/q` violated.
    QWindowLower,
    /// `1/q < gamma/((alpha-1)n) + 1/2` violated.
    QWindowUpper,
    /// Lower bound of the `1/r` window violated.
    RWindowLower,
    /// Upper bound of the `1/r` window violated.
    RWindowUpper,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionFailure::GammaRange => "gamma outside (-(alpha-1)n/(2(n+1)), 0]",
            ConditionFailure::AlphaRange => "alpha below 2n/(2n-1)",
            ConditionFailure::SolutionScaling => "alpha/q + n/p = n/2 - gamma violated",
            ConditionFailure::PotentialScaling => "alpha/r + n/w = alpha violated",
            ConditionFailure::QWindowLower => "-gamma/(alpha-1) < 1/q violated",
            ConditionFailure::QWindowUpper => "1/q < gamma/((alpha-1)n) + 1/2 violated",
            ConditionFailure::RWindowLower => "lower bound of 1/r window violated",
            ConditionFailure::RWindowUpper => "upper bound of 1/r window violated",
        };
        f.write_str(s)
    }
}

/// Full Theorem-style exponent check for the potential equation.
///
/// `Ok(())` iff all four displayed conditions hold; otherwise the first
/// failing condition, in the order the statement lists them.
pub fn check_wellposedness_exponents(
    params: &ProblemParams,
    inv_q: &Exact,
    inv_p: &Exact,
    inv_r: &Exact,
    inv_w: &Exact,
) -> std::result::Result<(), ConditionFailure> {
    let n = params.n_exact();
    let alpha = params.alpha();
    let gamma = params.gamma();
    let one = Exact::int(1);
    let two = Exact::int(2);

    if !params.alpha_in_wellposed_range() {
        return Err(ConditionFailure::AlphaRange);
    }
    // gamma in (-(alpha-1)n/(2(n+1)), 0], open on the left.
    let lower = params.gamma_lower_bound();
    if !(lower.lt(gamma) && gamma.le(&Exact::int(0))) {
        return Err(ConditionFailure::GammaRange);
    }

    let lhs = &(alpha * inv_q) + &(&n * inv_p);
    let rhs = &(&n / &two) - gamma;
    if !lhs.eq_slack(&rhs) {
        return Err(ConditionFailure::SolutionScaling);
    }

    let lhs_pot = &(alpha * inv_r) + &(&n * inv_w);
    if !lhs_pot.eq_slack(alpha) {
        return Err(ConditionFailure::PotentialScaling);
    }

    let am1 = alpha - &one;
    let q_lo = &(-gamma) / &am1;
    if !q_lo.lt(inv_q) {
        return Err(ConditionFailure::QWindowLower);
    }
    let q_hi = &(gamma / &(&am1 * &n)) + &Exact::ratio(1, 2);
    if !inv_q.lt(&q_hi) {
        return Err(ConditionFailure::QWindowUpper);
    }

    // 1 - 1/q - [n(n+a)(a-1) + 2 gamma ((2a-1)n+a)] / [2n(n+a)(a-1)]
    //   < 1/r < 1 - 1/q + gamma(n+2-a)/((n+a)(a-1)).
    let npa = &n + alpha;
    let base = &(&n * &npa) * &am1;
    let d1 = &(&(&(&two * alpha) - &one) * &n) + alpha;
    let num = &base + &(&(&two * gamma) * &d1);
    let frac = &num / &(&two * &base);
    let r_lo = &(&one - inv_q) - &frac;
    if !r_lo.lt(inv_r) {
        return Err(ConditionFailure::RWindowLower);
    }
    let r_hi = &(&one - inv_q) + &(&(gamma * &(&(&n + &two) - alpha)) / &(&npa * &am1));
    if !inv_r.lt(&r_hi) {
        return Err(ConditionFailure::RWindowUpper);
    }

    Ok(())
}
