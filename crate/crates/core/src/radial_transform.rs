//! Fourier transform of radial functions in R^n as Hankel-type
//! integrals.
//!
//! Convention: `fhat(xi) = int f(x) e^{-i x.xi} dx`, so for radial `f`
//!
//! `fhat(rho) = (2 pi)^{n/2} rho^{-(n-2)/2} int_0^inf f(r)
//!              J_{(n-2)/2}(r rho) r^{n/2} dr`,
//!
//! and the inverse carries the `(2 pi)^{-n}` of the inversion formula.
//! The surface-measure constant is verified numerically against direct
//! sphere quadrature rather than cited (see `surface_measure_identity`).

use crate::bessel::{self, j_fast};
use crate::error::{Error, Result};
use crate::exec;
use crate::oscillatory::filon_linear_phase;
use crate::profile::{RadialGrid, RadialProfile, SpectralProfile};
use crate::quadrature::gl_integrate_c;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Shells whose Bessel argument everywhere exceeds this switch to the
/// Filon route in the high-frequency transform path.
pub const FILON_ARG_THRESHOLD: f64 = 50.0;

fn nu_of(dim: u32) -> f64 {
    (dim as f64 - 2.0) / 2.0
}

/// One row of the transform: the radial integral against the kernel at a
/// fixed conjugate value `rho`.
fn row_sum(
    nodes: &[f64],
    weights: &[f64],
    values: &[Complex64],
    nu: f64,
    half_n: f64,
    rho: f64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((&r, &w), v) in nodes.iter().zip(weights).zip(values) {
        acc += v * (w * j_fast(nu, r * rho) * r.powf(half_n));
    }
    acc
}

/// Forward transform onto the nodes of `out_grid`.
///
/// The profile's own quadrature nodes/weights do the integration, so the
/// caller is responsible for a grid that resolves `J(r rho)` up to the
/// output band (`f.grid.conj_max() >= out_grid.r_max()`), which is
/// checked here.
pub fn hankel_forward(f: &RadialProfile, out_grid: &Arc<RadialGrid>) -> Result<SpectralProfile> {
    if f.grid.conj_max() + 1e-9 < out_grid.r_max() {
        return Err(Error::Resolution {
            variable: "rho",
            value: out_grid.r_max(),
            estimate: out_grid.r_max(),
            tolerance: f.grid.conj_max(),
        });
    }
    let n = f.dim;
    let nu = nu_of(n);
    let half_n = n as f64 / 2.0;
    let scale = (2.0 * PI).powf(half_n);
    let nodes = f.grid.nodes();
    let weights = f.grid.weights();
    let out_nodes: Vec<f64> = out_grid.nodes().to_vec();
    let values = exec::par_map(&out_nodes, |&rho| {
        row_sum(nodes, weights, &f.values, nu, half_n, rho) * (scale * rho.powf(-nu))
    });
    SpectralProfile::new(n, out_grid.clone(), values)
}

/// Inverse transform onto the nodes of `out_grid`.
pub fn hankel_inverse(g: &SpectralProfile, out_grid: &Arc<RadialGrid>) -> Result<RadialProfile> {
    if g.grid.conj_max() + 1e-9 < out_grid.r_max() {
        return Err(Error::Resolution {
            variable: "r",
            value: out_grid.r_max(),
            estimate: out_grid.r_max(),
            tolerance: g.grid.conj_max(),
        });
    }
    let n = g.dim;
    let nu = nu_of(n);
    let half_n = n as f64 / 2.0;
    let scale = (2.0 * PI).powf(-half_n);
    let nodes = g.grid.nodes();
    let weights = g.grid.weights();
    let out_nodes: Vec<f64> = out_grid.nodes().to_vec();
    let values = exec::par_map(&out_nodes, |&r| {
        row_sum(nodes, weights, &g.values, nu, half_n, r) * (scale * r.powf(-nu))
    });
    RadialProfile::new(n, out_grid.clone(), values)
}

/// Estimated forward-transform quadrature error at a few sampled output
/// frequencies, by comparing the grid sum against a doubled-density
/// interpolated quadrature. Reports the worst offender when the estimate
/// exceeds `tol`.
pub fn check_forward_resolution(f: &RadialProfile, out_grid: &RadialGrid, tol: f64) -> Result<f64> {
    let n = f.dim;
    let nu = nu_of(n);
    let half_n = n as f64 / 2.0;
    let nodes = f.grid.nodes();
    let weights = f.grid.weights();
    let out = out_grid.nodes();
    let mut worst = 0.0f64;
    let mut worst_rho = 0.0;
    for k in 0..8 {
        let rho = out[(out.len() - 1) * k / 7];
        let direct = row_sum(nodes, weights, &f.values, nu, half_n, rho);
        // Doubled-order panels on the same shells, profile interpolated.
        let mut refined = Complex64::new(0.0, 0.0);
        for p in f.grid.panels() {
            refined += gl_integrate_c(
                |r| f.interpolate(r) * j_fast(nu, r * rho) * r.powf(half_n),
                p.lo,
                p.hi,
                (2 * p.order).min(4096),
            );
        }
        let err = (direct - refined).norm();
        if err > worst {
            worst = err;
            worst_rho = rho;
        }
    }
    if worst > tol {
        return Err(Error::Resolution {
            variable: "rho",
            value: worst_rho,
            estimate: worst,
            tolerance: tol,
        });
    }
    Ok(worst)
}

/// Forward transform values at frequencies beyond the grid's resolved
/// band: Filon route. The Bessel kernel is split into its two analytic-
/// signal branches on shells where the argument exceeds the threshold,
/// leaving smooth amplitudes against `e^{+-i rho r}`.
pub fn hankel_forward_highfreq(f: &RadialProfile, rhos: &[f64]) -> Result<Vec<Complex64>> {
    let n = f.dim;
    let nu = nu_of(n);
    let half_n = n as f64 / 2.0;
    let scale = (2.0 * PI).powf(half_n);
    let values = exec::par_map(rhos, |&rho| {
        let mut acc = Complex64::new(0.0, 0.0);
        for p in f.grid.panels() {
            if rho * p.lo > FILON_ARG_THRESHOLD {
                let amp_plus = |r: f64| {
                    f.interpolate(r) * bessel::oscillatory_amplitude(nu, r * rho) * r.powf(half_n)
                };
                let panels = ((0.3 * (p.hi - p.lo) * f.grid.conj_max()) as usize).max(24);
                let plus = filon_linear_phase(&amp_plus, rho, p.lo, p.hi, panels);
                let amp_minus = |r: f64| {
                    f.interpolate(r)
                        * bessel::oscillatory_amplitude(nu, r * rho).conj()
                        * r.powf(half_n)
                };
                let minus = filon_linear_phase(&amp_minus, -rho, p.lo, p.hi, panels);
                acc += plus + minus;
            } else {
                let order = ((0.6 * (p.hi - p.lo) * rho) as usize + p.order).min(4096);
                acc += gl_integrate_c(
                    |r| f.interpolate(r) * j_fast(nu, r * rho) * r.powf(half_n),
                    p.lo,
                    p.hi,
                    order,
                );
            }
        }
        acc * (scale * rho.powf(-nu))
    });
    Ok(values)
}

/// Left side of the surface-measure identity by direct sphere
/// quadrature: `int_{S^{n-1}} e^{-i z x'.e} dx'` for n = 2, 3.
pub fn sphere_integral_direct(n: u32, z: f64) -> Result<Complex64> {
    let order = ((2.2 * z) as usize + 64).min(4096);
    match n {
        2 => Ok(gl_integrate_c(
            |th| Complex64::from_polar(1.0, -z * th.cos()),
            0.0,
            2.0 * PI,
            order,
        )),
        3 => Ok(gl_integrate_c(
            |th| Complex64::from_polar(1.0, -z * th.cos()) * (2.0 * PI * th.sin()),
            0.0,
            PI,
            order,
        )),
        _ => Err(Error::InvalidParameter(format!(
            "direct sphere quadrature implemented for n = 2, 3 (got {n})"
        ))),
    }
}

/// Right side of the surface-measure identity with the convention's
/// constant: `(2 pi)^{n/2} z^{-(n-2)/2} J_{(n-2)/2}(z)`.
pub fn sphere_integral_bessel(n: u32, z: f64) -> f64 {
    let nu = nu_of(n);
    (2.0 * PI).powf(n as f64 / 2.0) * z.powf(-nu) * j_fast(nu, z)
}
