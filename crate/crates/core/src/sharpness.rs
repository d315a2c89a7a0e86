//! The necessity experiment: the explicit forcing whose retarded
//! evolution grows along the light-cone shell, ruling out exponent pairs
//! with `1/q + n/p >= n/2`.
//!
//! The forcing has `Fhat(., s)(xi) = chi_(0,1)(s) bump(|xi|)` with the
//! bump supported in [1, 2]. For `t > 1` the s-integration collapses to
//! the explicit factor `(e^{-i rho^alpha} - 1)/(-i rho^alpha)`, so the
//! solution is a single oscillatory integral per `(r, t)`; norms over
//! windows up to `t ~ 10^4.5` are then direct quadratures, no grid.
//!
//! The probe rays use `|x|/t` in the critical-value interval
//! `alpha [(5/4)^{alpha-1}, (7/4)^{alpha-1}]`, where the phase has its
//! nondegenerate critical radius inside the bump; the stationary-phase
//! law `|I(t)| ~ t^{-n/2}` then drives the growth-exponent fit.

use crate::bessel;
use crate::cutoff::Bump;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::{SpaceTimeField, TimeGrid};
use crate::oscillatory::integrate_phase;
use crate::profile::{sphere_area, GridSpec, RadialGrid};
use crate::quadrature::gauss_legendre;
use crate::radial_transform::hankel_inverse;
use crate::report::{fit_line, LineFit};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

/// Verdict margin: a fitted slope above `-DIVERGENCE_MARGIN` flags the
/// pair as divergent (the boundary slope is exactly 0).
pub const DIVERGENCE_MARGIN: f64 = 0.025;

/// Growth measurement over geometric windows.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub q: f64,
    pub p: f64,
    pub window_starts: Vec<f64>,
    pub window_norms: Vec<f64>,
    pub fitted: LineFit,
    pub predicted_slope: f64,
    pub divergent: bool,
}

/// The spectral bump of the counterexample forcing, supported in [1, 2].
pub fn counterexample_bump() -> Bump {
    Bump::new(1.0, 2.0)
}

/// `int_0^1 e^{-i s rho^alpha} ds = (e^{-i rho^alpha} - 1)/(-i rho^alpha)`.
pub fn time_integral_factor(rho: f64, alpha: f64) -> Complex64 {
    let u = rho.powf(alpha);
    (Complex64::from_polar(1.0, -u) - 1.0) / Complex64::new(0.0, -u)
}

/// The forcing as a sampled field on `[0, 1]`: each frame is the inverse
/// transform of the bump (time-independent inside the indicator).
pub fn build_counterexample(
    n: u32,
    grid: &Arc<RadialGrid>,
    time: TimeGrid,
) -> Result<SpaceTimeField> {
    let (t0, t1) = time.span();
    if t0 < -1e-12 || t1 > 1.0 + 1e-12 {
        return Err(Error::Precondition(
            "counterexample frames live on the indicator window [0, 1]".into(),
        ));
    }
    let bump = counterexample_bump();
    let spec_grid = RadialGrid::new(GridSpec::new(-4, 1, grid.r_max()));
    let gh = crate::profile::SpectralProfile::sample(n, &spec_grid, |rho| {
        Complex64::new(bump.eval(rho), 0.0)
    })?;
    let frame = hankel_inverse(&gh, grid)?;
    let frames = vec![frame; time.len()];
    SpaceTimeField::from_frames(n, None, grid.clone(), time, frames)
}

/// The retarded solution for `t >= 1`, evaluated directly:
/// `u(r, t) = -i (2 pi)^{-n/2} r^{-nu} int e^{i t rho^alpha} J_nu(r rho)
///  m(rho) rho^{n/2} d rho` with `m = bump * time_integral_factor`.
pub fn counterexample_solution(n: u32, alpha: f64, r: f64, t: f64) -> Result<Complex64> {
    oscillatory_radial_integral(n, alpha, r, t, &|rho| {
        time_integral_factor(rho, alpha) * counterexample_bump().eval(rho)
    })
    .map(|v| v * Complex64::new(0.0, -1.0) * (2.0 * PI).powf(-(n as f64) / 2.0))
}

/// `r^{-nu} int_1^2 e^{i t rho^alpha} J_nu(r rho) m(rho) rho^{n/2} drho`
/// with the Bessel factor peeled into its analytic-signal branches when
/// the argument allows.
fn oscillatory_radial_integral(
    n: u32,
    alpha: f64,
    r: f64,
    t: f64,
    symbol: &dyn Fn(f64) -> Complex64,
) -> Result<Complex64> {
    let nu = (n as f64 - 2.0) / 2.0;
    let half_n = n as f64 / 2.0;
    let (a, b) = (1.0, 2.0);
    let tol = 1e-11;
    let mut total = Complex64::new(0.0, 0.0);
    if r >= 40.0 {
        for s in [1.0f64, -1.0] {
            let amp = |rho: f64| {
                let aosc = bessel::oscillatory_amplitude(nu, r * rho);
                let factor = if s > 0.0 { aosc } else { aosc.conj() };
                symbol(rho) * factor * rho.powf(half_n)
            };
            let phase = |rho: f64| t * rho.powf(alpha) + s * r * rho;
            let dphase = |rho: f64| t * alpha * rho.powf(alpha - 1.0) + s * r;
            total += integrate_phase(&amp, &phase, &dphase, a, b, tol, 0.0)?.value;
        }
    } else {
        let amp = |rho: f64| symbol(rho) * bessel::j_fast(nu, r * rho) * rho.powf(half_n);
        let phase = |rho: f64| t * rho.powf(alpha);
        let dphase = |rho: f64| t * alpha * rho.powf(alpha - 1.0);
        total += integrate_phase(&amp, &phase, &dphase, a, b, tol, r)?.value;
    }
    Ok(total * r.powf(-nu))
}

/// `|I(t)| = |int e^{i x.xi + i t |xi|^alpha} w(|xi|) dxi|` along the ray
/// `|x| = c t`, with `w` a bump supported in `[w_lo, w_hi]`.
pub fn stationary_phase_probe(
    n: u32,
    alpha: f64,
    t_values: &[f64],
    x_over_t: f64,
    w_lo: f64,
    w_hi: f64,
) -> Result<Vec<(f64, f64)>> {
    let bump = Bump::new(w_lo, w_hi);
    let out = exec::par_map(t_values, |&t| {
        let r = x_over_t * t;
        oscillatory_radial_integral(n, alpha, r, t, &|rho| Complex64::new(bump.eval(rho), 0.0))
            .map(|v| (t, ((2.0 * PI).powf(n as f64 / 2.0) * v).norm()))
    });
    out.into_iter().collect()
}

/// Probe ray with the critical radius at the bump center:
/// `|x|/t = alpha (3/2)^{alpha-1}`.
pub fn critical_ray(alpha: f64) -> f64 {
    alpha * 1.5f64.powf(alpha - 1.0)
}

/// Mixed norm of the counterexample solution over `t in (N, 2N)` and the
/// critical shell `|x|/t in alpha [(5/4)^{alpha-1}, (7/4)^{alpha-1}]`.
fn window_norm(n: u32, alpha: f64, q: f64, p: f64, window_start: f64) -> Result<f64> {
    let c_lo = alpha * 1.25f64.powf(alpha - 1.0);
    let c_hi = alpha * 1.75f64.powf(alpha - 1.0);
    let t_rule = gauss_legendre(16);
    let r_rule = gauss_legendre(24);
    let (t_mid, t_half) = (1.5 * window_start, 0.5 * window_start);
    let area = sphere_area(n);
    let t_nodes: Vec<f64> = t_rule.nodes.iter().map(|&x| t_mid + t_half * x).collect();
    let per_t = exec::par_map(&t_nodes, |&t| -> Result<f64> {
        let (r_lo, r_hi) = (c_lo * t, c_hi * t);
        let (r_mid, r_half) = (0.5 * (r_lo + r_hi), 0.5 * (r_hi - r_lo));
        let mut acc = 0.0;
        for (xr, wr) in r_rule.nodes.iter().zip(&r_rule.weights) {
            let r = r_mid + r_half * xr;
            let u = counterexample_solution(n, alpha, r, t)?;
            acc += wr * r_half * u.norm().powf(p) * r.powi(n as i32 - 1);
        }
        Ok((area * acc).powf(q / p))
    });
    let mut outer = 0.0;
    for (res, wt) in per_t.into_iter().zip(&t_rule.weights) {
        outer += res? * wt * t_half;
    }
    Ok(outer.powf(1.0 / q))
}

/// Fits the growth exponent of the windowed norm against `log N` and
/// compares with the predicted `n(1/p - 1/2) + 1/q`.
pub fn growth_exponent_fit(
    n: u32,
    alpha: f64,
    q: f64,
    p: f64,
    window_starts: &[f64],
) -> Result<GrowthFit> {
    if window_starts.len() < 4 {
        return Err(Error::Precondition(
            "growth fit needs at least 4 windows".into(),
        ));
    }
    let mut norms = Vec::with_capacity(window_starts.len());
    for &nw in window_starts {
        norms.push(window_norm(n, alpha, q, p, nw)?);
    }
    let xs: Vec<f64> = window_starts.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = norms.iter().map(|y| y.ln()).collect();
    let fitted = fit_line(&xs, &ys);
    let predicted = n as f64 * (1.0 / p - 0.5) + 1.0 / q;
    Ok(GrowthFit {
        q,
        p,
        window_starts: window_starts.to_vec(),
        window_norms: norms,
        fitted,
        predicted_slope: predicted,
        divergent: fitted.slope >= -DIVERGENCE_MARGIN,
    })
}

/// Standard geometric windows `10^2 .. 10^{4.5}`.
pub fn default_windows() -> Vec<f64> {
    (0..6).map(|i| 100.0 * 10f64.powf(0.5 * i as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{mixed_spacetime_norm, NormSpec};
    use crate::quadrature::gl_integrate_c;
    use crate::radial_transform::hankel_forward;

    #[test]
    fn time_integral_shortcut_matches_quadrature() {
        let alpha = 1.4;
        for &rho in &[1.0f64, 1.3, 1.9] {
            let direct = gl_integrate_c(
                |s| Complex64::from_polar(1.0, -s * rho.powf(alpha)),
                0.0,
                1.0,
                32,
            );
            let shortcut = time_integral_factor(rho, alpha);
            assert!((direct - shortcut).norm() < 1e-10, "rho = {rho}");
        }
    }

    #[test]
    fn counterexample_field_properties() {
        // Reach 256: the bump's spatial profile decays like
        // e^{-c sqrt(r)}, and the spectral check below wants 1e-6.
        let n = 2u32;
        let grid = RadialGrid::new(GridSpec::new(-6, 8, 8.0));
        let tg = TimeGrid::chebyshev(0.0, 1.0, 2, 10);
        let f = build_counterexample(n, &grid, tg).unwrap();
        // Spectral frame at s = 0.5 equals the bump on the spectral grid.
        let frame = f.frame_at(0.5).unwrap();
        let spec_grid = RadialGrid::new(GridSpec::new(-4, 1, grid.r_max()));
        let fh = hankel_forward(&frame, &spec_grid).unwrap();
        let bump = counterexample_bump();
        for (&rho, v) in spec_grid.nodes().iter().zip(&fh.values).step_by(5) {
            assert!(
                (v.re - bump.eval(rho)).abs() < 1e-6 && v.im.abs() < 1e-8,
                "rho = {rho}: {v}"
            );
        }
        // Finite forcing norm for a few dual exponents.
        for &(qd, pd) in &[(2.0, 2.0), (1.5, 3.0), (4.0, 1.2)] {
            let nrm = mixed_spacetime_norm(&f, &NormSpec::mixed(qd, pd)).unwrap();
            assert!(nrm.is_finite() && nrm > 0.0);
        }
    }

    #[test]
    fn stationary_phase_law_two_decades() {
        // |I(t)| t^{n/2} stable within 10% for n = 2, alpha = 4/3.
        let (n, alpha) = (2u32, 4.0 / 3.0);
        let ts: Vec<f64> = (0..9).map(|i| 100.0 * 10f64.powf(0.25 * i as f64)).collect();
        let vals = stationary_phase_probe(n, alpha, &ts, critical_ray(alpha), 1.0, 2.0).unwrap();
        let scaled: Vec<f64> = vals
            .iter()
            .map(|&(t, v)| v * t.powf(n as f64 / 2.0))
            .collect();
        let (lo, hi) = scaled
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
        assert!(hi / lo < 1.1, "variation {:.3}: {scaled:?}", hi / lo);
    }

    #[test]
    fn off_critical_support_decays_faster() {
        // Bump sitting away from the critical radius: slope well below
        // -n/2 - 1/2.
        let (n, alpha) = (2u32, 4.0 / 3.0);
        let ts: Vec<f64> = (0..7).map(|i| 100.0 * 10f64.powf(i as f64 / 3.0)).collect();
        let vals = stationary_phase_probe(n, alpha, &ts, critical_ray(alpha), 1.0, 1.15).unwrap();
        let xs: Vec<f64> = vals.iter().map(|v| v.0.ln()).collect();
        let ys: Vec<f64> = vals.iter().map(|v| (v.1.max(1e-300)).ln()).collect();
        let fit = fit_line(&xs, &ys);
        assert!(
            fit.slope < -(n as f64) / 2.0 - 0.5,
            "slope {} not steep enough",
            fit.slope
        );
    }

    #[test]
    fn small_time_limit_recovers_symbol_mass() {
        // t -> 0 with x = c t -> 0: I -> int w(xi) dxi.
        let (n, alpha) = (2u32, 1.5);
        let vals =
            stationary_phase_probe(n, alpha, &[1e-4], critical_ray(alpha), 1.0, 2.0).unwrap();
        let bump = counterexample_bump();
        let want = sphere_area(n)
            * gl_integrate_c(
                |rho| Complex64::new(bump.eval(rho) * rho.powi(n as i32 - 1), 0.0),
                1.0,
                2.0,
                64,
            )
            .re;
        assert!(
            (vals[0].1 - want).abs() < 1e-3 * want,
            "{} vs {want}",
            vals[0].1
        );
    }

    #[test]
    fn boundary_pair_has_zero_slope_and_interior_decays() {
        let (n, alpha) = (2u32, 4.0 / 3.0);
        let windows: Vec<f64> = (0..5).map(|i| 100.0 * 10f64.powf(0.5 * i as f64)).collect();
        // Boundary: 1/q + n/p = n/2 with 1/q = 1/4 -> 1/p = 3/8.
        let fit = growth_exponent_fit(n, alpha, 4.0, 8.0 / 3.0, &windows).unwrap();
        assert!(
            (fit.fitted.slope - fit.predicted_slope).abs() < 0.05,
            "slope {} vs predicted {}",
            fit.fitted.slope,
            fit.predicted_slope
        );
        assert!(fit.predicted_slope.abs() < 1e-12);
        assert!(fit.divergent);
        // Interior point: 1/p = 3/8 - 0.1 -> predicted slope -0.2.
        let p_in = 1.0 / (3.0 / 8.0 - 0.1);
        let fit_in = growth_exponent_fit(n, alpha, 4.0, p_in, &windows).unwrap();
        assert!((fit_in.fitted.slope - fit_in.predicted_slope).abs() < 0.05);
        assert!(!fit_in.divergent && fit_in.fitted.slope < -0.05);
    }

    #[test]
    fn duhamel_grid_route_agrees_at_small_time() {
        // Cross-check the direct evaluator against the gridded Duhamel
        // integral at t = 1 (the indicator's edge).
        let (n, alpha) = (2u32, 1.5);
        let grid = RadialGrid::new(GridSpec::new(-6, 5, 8.0));
        let tg = TimeGrid::chebyshev(0.0, 1.0, 4, 20);
        let f = build_counterexample(n, &grid, tg).unwrap();
        let gridded = crate::propagator::duhamel_integral(&f, alpha, 1.0).unwrap();
        let mut worst = 0.0f64;
        for (&r, v) in grid.nodes().iter().zip(&gridded.values) {
            if !(1.0..20.0).contains(&r) {
                continue;
            }
            let direct = counterexample_solution(n, alpha, r, 1.0).unwrap();
            worst = worst.max((direct - v).norm());
        }
        assert!(worst < 1e-6, "max pointwise gap {worst}");
    }
}
