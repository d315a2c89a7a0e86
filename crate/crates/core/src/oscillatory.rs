//! Oscillatory quadrature: Filon panels for linear phases and a general
//! driver for `int amp(x) e^{i phase(x)} dx` with smooth monotone-or-
//! stationary phases.
//!
//! The driver samples the phase derivative, splits at stationary points,
//! and picks a route per segment: plain composite Gauss-Legendre while
//! the phase variation is modest, otherwise the substitution `u =
//! phase(x)` which reduces the integral to a linear-phase Filon form
//! whose cost depends only on the amplitude's own variation, not on the
//! phase size. Every route carries a refinement-based error estimate.

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, gl_integrate_c};
use num_complex::Complex64;

/// Phase variation below which a segment is handled by plain quadrature.
const GL_PHASE_BUDGET: f64 = 60.0;

/// Phase variation kept inside the window around a stationary point.
const STATIONARY_WINDOW_PHASE: f64 = 40.0;

#[derive(Debug, Clone, Copy)]
pub struct OscResult {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// `int_a^b amp(x) e^{i omega x} dx` by Filon panels with piecewise
/// quadratic amplitude. Panels with little oscillation fall back to
/// Gauss-Legendre, so small `omega` is safe.
pub fn filon_linear_phase<F: Fn(f64) -> Complex64>(
    amp: &F,
    omega: f64,
    a: f64,
    b: f64,
    panels: usize,
) -> Complex64 {
    assert!(panels >= 1);
    if b <= a {
        return Complex64::new(0.0, 0.0);
    }
    let h_panel = (b - a) / panels as f64;
    let half = 0.5 * h_panel;
    // Shared endpoint evaluations between neighbours.
    let mut vals = Vec::with_capacity(2 * panels + 1);
    for i in 0..=(2 * panels) {
        vals.push(amp(a + 0.5 * i as f64 * h_panel));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let x1 = a + (i as f64 + 0.5) * h_panel;
        let z = omega * half;
        let (va, vm, vb) = (vals[2 * i], vals[2 * i + 1], vals[2 * i + 2]);
        if z.abs() < 1.0 {
            // Low local oscillation: GL-8 on the quadratic interpolant
            // keeps the evaluation budget fixed.
            total += gl_integrate_c(
                |x| {
                    let u = (x - x1) / half;
                    let c1 = (vb - va) * 0.5;
                    let c2 = (vb - 2.0 * vm + va) * 0.5;
                    (vm + c1 * u + c2 * u * u) * Complex64::from_polar(1.0, omega * x)
                },
                x1 - half,
                x1 + half,
                8,
            );
            continue;
        }
        // Quadratic coefficients in u = x - x1.
        let c0 = vm;
        let c1 = (vb - va) / (2.0 * half);
        let c2 = (vb - 2.0 * vm + va) / (2.0 * half * half);
        let (sz, cz) = z.sin_cos();
        let m0 = 2.0 * sz / omega;
        let m1 = Complex64::new(0.0, 2.0 * (sz - z * cz) / (omega * omega));
        let m2 = 2.0 * ((z * z - 2.0) * sz + 2.0 * z * cz) / (omega * omega * omega);
        let panel_val = c0 * m0 + c1 * m1 + c2 * m2;
        total += panel_val * Complex64::from_polar(1.0, omega * x1);
    }
    total
}

/// Filon with doubling refinement until the panel-halving difference
/// drops below `tol` (or the budget is exhausted).
fn filon_refined<F: Fn(f64) -> Complex64>(
    amp: &F,
    omega: f64,
    a: f64,
    b: f64,
    panels0: usize,
    tol: f64,
) -> OscResult {
    let mut panels = panels0.max(8);
    let mut prev = filon_linear_phase(amp, omega, a, b, panels);
    for _ in 0..4 {
        panels *= 2;
        let next = filon_linear_phase(amp, omega, a, b, panels);
        let diff = (next - prev).norm();
        if diff <= tol {
            return OscResult {
                value: next,
                error_estimate: diff,
            };
        }
        prev = next;
    }
    let next = filon_linear_phase(amp, omega, a, b, panels * 2);
    OscResult {
        error_estimate: (next - prev).norm(),
        value: next,
    }
}

/// Composite GL sized to the phase variation, with an order-refinement
/// error estimate.
fn gl_oscillatory<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, phase_var: f64) -> OscResult {
    let nodes = (2.2 * phase_var) as usize + 24;
    let panels = nodes / 24 + 1;
    let coarse = crate::quadrature::gl_composite_c(f, a, b, 24, panels);
    let fine = crate::quadrature::gl_composite_c(f, a, b, 32, panels);
    OscResult {
        value: fine,
        error_estimate: (fine - coarse).norm(),
    }
}

/// Inverts a monotone phase on [lo, hi]: solves phase(x) = u.
fn invert_phase<P: Fn(f64) -> f64, D: Fn(f64) -> f64>(
    phase: &P,
    dphase: &D,
    lo: f64,
    hi: f64,
    u: f64,
) -> f64 {
    let (mut xl, mut xh) = (lo, hi);
    let (pl, ph) = (phase(lo), phase(hi));
    let increasing = ph > pl;
    let mut x = lo + (hi - lo) * ((u - pl) / (ph - pl)).clamp(0.0, 1.0);
    for _ in 0..60 {
        let fx = phase(x) - u;
        if fx.abs() <= 1e-10 * (1.0 + u.abs()) {
            return x;
        }
        if (fx > 0.0) == increasing {
            xh = x;
        } else {
            xl = x;
        }
        let d = dphase(x);
        let mut next = x - fx / d;
        if !(next > xl && next < xh) || !next.is_finite() {
            next = 0.5 * (xl + xh);
        }
        x = next;
    }
    x
}

/// Non-stationary segment via `u = phase(x)` plus linear-phase Filon.
fn usub_segment<F, P, D>(
    amp: &F,
    phase: &P,
    dphase: &D,
    lo: f64,
    hi: f64,
    amp_freq_hint: f64,
    tol: f64,
) -> OscResult
where
    F: Fn(f64) -> Complex64,
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (pl, ph) = (phase(lo), phase(hi));
    let increasing = ph > pl;
    let (ua, ub) = if increasing { (pl, ph) } else { (ph, pl) };
    let amp_u = |u: f64| {
        let x = invert_phase(phase, dphase, lo, hi, u);
        amp(x) / dphase(x)
    };
    // Amplitude oscillation in u tracks its oscillation in x.
    let panels0 = ((0.8 * amp_freq_hint * (hi - lo)) as usize).max(16);
    let r = filon_refined(&amp_u, 1.0, ua, ub, panels0, tol);
    OscResult {
        value: if increasing { r.value } else { -r.value },
        error_estimate: r.error_estimate,
    }
}

/// General oscillatory integral `int_a^b amp(x) e^{i phase(x)} dx`.
///
/// `amp_freq_hint` bounds the amplitude's own oscillation frequency
/// (radians per unit `x`); pass 0.0 for smooth non-oscillatory
/// amplitudes.
pub fn integrate_phase<F, P, D>(
    amp: &F,
    phase: &P,
    dphase: &D,
    a: f64,
    b: f64,
    tol: f64,
    amp_freq_hint: f64,
) -> Result<OscResult>
where
    F: Fn(f64) -> Complex64,
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(b > a) {
        return Ok(OscResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
        });
    }
    // Cheap exit: total phase variation small enough for plain GL.
    {
        let mut var = amp_freq_hint * (b - a);
        let mut prev = phase(a);
        for i in 1..=16 {
            let x = a + (b - a) * i as f64 / 16.0;
            let p = phase(x);
            var += (p - prev).abs();
            prev = p;
        }
        if var <= GL_PHASE_BUDGET {
            let f = |x: f64| amp(x) * Complex64::from_polar(1.0, phase(x));
            return Ok(gl_oscillatory(&f, a, b, var));
        }
    }
    // Locate stationary points from sign changes of phase'.
    let samples = 65;
    let mut stationary = Vec::new();
    let mut prev_x = a;
    let mut prev_d = dphase(a);
    for i in 1..=samples {
        let x = a + (b - a) * i as f64 / samples as f64;
        let d = dphase(x);
        if prev_d == 0.0 {
            stationary.push(prev_x);
        } else if prev_d.signum() != d.signum() && d != 0.0 {
            // Bisection refine.
            let (mut xl, mut xh) = (prev_x, x);
            for _ in 0..80 {
                let xm = 0.5 * (xl + xh);
                if dphase(xm).signum() == prev_d.signum() {
                    xl = xm;
                } else {
                    xh = xm;
                }
            }
            stationary.push(0.5 * (xl + xh));
        }
        prev_x = x;
        prev_d = d;
    }

    // Segments: a plain-quadrature window around each stationary point,
    // the cheapest adequate route for the monotone-phase remainder.
    let mut cuts: Vec<(f64, f64, bool)> = Vec::new();
    let mut cursor = a;
    for &s in &stationary {
        let h = 1e-4 * (b - a);
        let ddp = (dphase((s + h).min(b)) - dphase((s - h).max(a))) / (2.0 * h);
        let w = if ddp.abs() > 0.0 {
            (2.0 * STATIONARY_WINDOW_PHASE / ddp.abs()).sqrt()
        } else {
            0.25 * (b - a)
        };
        let lo = (s - w).max(cursor);
        let hi = (s + w).min(b);
        if lo > cursor {
            cuts.push((cursor, lo, false));
        }
        cuts.push((lo, hi, true));
        cursor = hi;
    }
    if cursor < b {
        cuts.push((cursor, b, false));
    }

    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let tol_share = tol / cuts.len() as f64;
    for &(lo, hi, is_window) in &cuts {
        if hi - lo < 1e-300 {
            continue;
        }
        let f = |x: f64| amp(x) * Complex64::from_polar(1.0, phase(x));
        let r = if is_window {
            let var = STATIONARY_WINDOW_PHASE + amp_freq_hint * (hi - lo);
            gl_oscillatory(&f, lo, hi, var)
        } else {
            let var = (phase(hi) - phase(lo)).abs() + amp_freq_hint * (hi - lo);
            if var <= GL_PHASE_BUDGET {
                gl_oscillatory(&f, lo, hi, var)
            } else {
                usub_segment(amp, phase, dphase, lo, hi, amp_freq_hint, tol_share)
            }
        };
        value += r.value;
        err += r.error_estimate;
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Quadrature("oscillatory integral overflowed".into()));
    }
    Ok(OscResult {
        value,
        error_estimate: err,
    })
}

/// Brute-force reference: composite GL dense enough for the stated phase
/// variation. Test/oracle duty only; cost grows linearly with the phase.
pub fn brute_force_reference<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    phase_var: f64,
) -> Complex64 {
    let nodes = (4.0 * phase_var) as usize + 64;
    let panels = nodes / 32 + 1;
    let rule = gauss_legendre(32);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            total += f(mid + half * x) * *w * half;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filon_matches_closed_form_plain_exponential() {
        // int_0^1 e^{i w x} dx = (e^{iw} - 1) / (iw).
        for &w in &[3.0, 47.0, 313.0, 4001.0] {
            let got = filon_linear_phase(&|_| Complex64::new(1.0, 0.0), w, 0.0, 1.0, 64);
            let want = (Complex64::from_polar(1.0, w) - 1.0) / Complex64::new(0.0, w);
            assert!((got - want).norm() < 1e-12, "omega = {w}");
        }
    }

    #[test]
    fn filon_with_smooth_amplitude() {
        let amp = |x: f64| Complex64::new((-x * x).exp(), 0.3 * x);
        for &w in &[0.5, 21.0, 250.0] {
            let got = filon_linear_phase(&amp, w, -1.0, 2.0, 256);
            let want = brute_force_reference(
                &|x| amp(x) * Complex64::from_polar(1.0, w * x),
                -1.0,
                2.0,
                3.0 * w,
            );
            assert!((got - want).norm() < 1e-9, "omega = {w}");
        }
    }

    #[test]
    fn general_phase_without_stationary_point() {
        // phase = t rho^alpha + c rho on [1/2, 2] with phase' > 0.
        let (t, alpha, c) = (900.0, 1.4, 35.0);
        let amp = |x: f64| Complex64::new(1.0 / x, 0.0);
        let phase = move |x: f64| t * x.powf(alpha) + c * x;
        let dphase = move |x: f64| t * alpha * x.powf(alpha - 1.0) + c;
        let r = integrate_phase(&amp, &phase, &dphase, 0.5, 2.0, 1e-10, 0.0).unwrap();
        let want = brute_force_reference(
            &|x| amp(x) * Complex64::from_polar(1.0, phase(x)),
            0.5,
            2.0,
            phase(2.0) - phase(0.5),
        );
        assert!((r.value - want).norm() < 1e-9);
    }

    #[test]
    fn general_phase_with_stationary_point() {
        // phase = t rho^alpha - c rho with the critical point inside.
        let (t, alpha) = (230.0, 1.5);
        let rho_star: f64 = 1.21;
        let c = t * alpha * rho_star.powf(alpha - 1.0);
        let amp = |x: f64| Complex64::new((x * 1.1).cos() / x, 0.1);
        let phase = move |x: f64| t * x.powf(alpha) - c * x;
        let dphase = move |x: f64| t * alpha * x.powf(alpha - 1.0) - c;
        let r = integrate_phase(&amp, &phase, &dphase, 0.5, 2.0, 1e-9, 1.1).unwrap();
        let want = brute_force_reference(
            &|x| amp(x) * Complex64::from_polar(1.0, phase(x)),
            0.5,
            2.0,
            1200.0,
        );
        assert!(
            (r.value - want).norm() < 1e-8,
            "got {:?} want {want:?}",
            r.value
        );
    }

    #[test]
    fn huge_phase_stays_accurate() {
        // Far non-stationary regime: phase' ~ 1e5 goes through the
        // substitution route with a few hundred amplitude evaluations.
        let (t, alpha, c) = (40_000.0, 1.33, 150.0);
        let amp = |x: f64| Complex64::new((-0.5 * (x - 1.0) * (x - 1.0)).exp(), 0.0);
        let phase = move |x: f64| t * x.powf(alpha) + c * x;
        let dphase = move |x: f64| t * alpha * x.powf(alpha - 1.0) + c;
        let r = integrate_phase(&amp, &phase, &dphase, 0.5, 2.0, 1e-10, 0.0).unwrap();
        let want = brute_force_reference(
            &|x| amp(x) * Complex64::from_polar(1.0, phase(x)),
            0.5,
            2.0,
            phase(2.0) - phase(0.5),
        );
        assert!((r.value - want).norm() < 1e-8);
        // Integration by parts says the integral is O(1/phase').
        assert!(r.value.norm() < 1e-3);
    }
}
