//! Mixed space-time norms, homogeneous Sobolev norms, and the Sobolev
//! embedding ratio probe.
//!
//! Radial space norms carry the `|S^{n-1}|` factor explicitly, so they
//! equal honest norms over R^n. The sphereless variant `L^q(r^{n-1} dr)`
//! used by the dyadic operator machinery is available through
//! [`lq_radial_norm`].

use crate::error::{Error, Result};
use crate::exec;
use crate::field::SpaceTimeField;
use crate::profile::{sphere_area, RadialGrid, RadialProfile};
use crate::radial_transform::hankel_forward;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Spatial measure of a norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialWeight {
    /// `|S^{n-1}| r^{n-1} dr`: the full R^n measure.
    RadialMeasure,
    /// `dr` on the half-line.
    Plain,
}

/// What to compute: `L^q_t L^p_x` with an optional Sobolev index
/// (applied by [`sobolev_norm`], not here).
#[derive(Debug, Clone, Copy)]
pub struct NormSpec {
    pub time_exponent: f64,
    pub space_exponent: f64,
    pub weight: RadialWeight,
    pub sobolev_gamma: Option<f64>,
}

impl NormSpec {
    pub fn mixed(q: f64, p: f64) -> Self {
        Self {
            time_exponent: q,
            space_exponent: p,
            weight: RadialWeight::RadialMeasure,
            sobolev_gamma: None,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, e) in [
            ("time exponent", self.time_exponent),
            ("space exponent", self.space_exponent),
        ] {
            if !(e >= 1.0) {
                return Err(Error::InvalidParameter(format!("{name} = {e} below 1")));
            }
        }
        Ok(())
    }
}

fn weighted_lp(
    values: &[Complex64],
    grid: &RadialGrid,
    dim: u32,
    p: f64,
    weight: RadialWeight,
    sphere: bool,
) -> f64 {
    if p.is_infinite() {
        return values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    let mut acc = 0.0;
    match weight {
        RadialWeight::RadialMeasure => {
            let k = dim as i32 - 1;
            for ((&r, &w), v) in grid.nodes().iter().zip(grid.weights()).zip(values) {
                acc += w * v.norm().powf(p) * r.powi(k);
            }
            if sphere {
                acc *= sphere_area(dim);
            }
        }
        RadialWeight::Plain => {
            for (&w, v) in grid.weights().iter().zip(values) {
                acc += w * v.norm().powf(p);
            }
        }
    }
    acc.powf(1.0 / p)
}

/// `L^p` norm of a profile over R^n (radial measure with the sphere
/// factor), or `sup` on the grid for `p = inf`.
pub fn space_norm(f: &RadialProfile, p: f64) -> f64 {
    weighted_lp(&f.values, &f.grid, f.dim, p, RadialWeight::RadialMeasure, true)
}

/// The sphereless space `L^q(r^{n-1} dr)` of the dyadic machinery.
pub fn lq_radial_norm(values: &[Complex64], grid: &RadialGrid, dim: u32, q: f64) -> f64 {
    weighted_lp(values, grid, dim, q, RadialWeight::RadialMeasure, false)
}

/// Mixed norm `( int ( ||u(t)||_{L^p_x} )^q dt )^{1/q}` over the field's
/// time window, with ess-sup semantics at infinite exponents.
pub fn mixed_spacetime_norm(u: &SpaceTimeField, spec: &NormSpec) -> Result<f64> {
    spec.validate()?;
    let per_frame = exec::par_map(&u.frames, |fr| {
        weighted_lp(&fr.values, &fr.grid, fr.dim, spec.space_exponent, spec.weight, true)
    });
    let q = spec.time_exponent;
    if q.is_infinite() {
        return Ok(per_frame.iter().fold(0.0, |a: f64, &b| a.max(b)));
    }
    let mut acc = 0.0;
    for (&w, g) in u.time.weights().iter().zip(&per_frame) {
        acc += w * g.powf(q);
    }
    Ok(acc.powf(1.0 / q))
}

/// Homogeneous Sobolev norm `|| |xi|^gamma fhat ||_{L^2}` under the
/// crate's Plancherel normalization, so `gamma = 0` recovers `L^2`.
pub fn sobolev_norm(f: &RadialProfile, gamma: f64) -> Result<f64> {
    let n = f.dim as f64;
    if !(gamma > -n / 2.0) {
        return Err(Error::Precondition(format!(
            "gamma = {gamma} <= -n/2 diverges at the origin"
        )));
    }
    let band = f.grid.conj_max();
    let last_exp = band.log2().floor() as i32;
    let spec_grid = RadialGrid::new(crate::profile::GridSpec::new(
        (last_exp - 10).min(-6),
        last_exp,
        f.grid.r_max(),
    ));
    let fh = hankel_forward(f, &spec_grid)?;
    let weighted: Vec<Complex64> = spec_grid
        .nodes()
        .iter()
        .zip(&fh.values)
        .map(|(&rho, v)| v * rho.powf(gamma))
        .collect();
    let l2 = weighted_lp(
        &weighted,
        &spec_grid,
        f.dim,
        2.0,
        RadialWeight::RadialMeasure,
        true,
    );
    Ok((2.0 * PI).powf(-n / 2.0) * l2)
}

/// Applies the fractional derivative `D^beta` (multiplier `rho^beta`).
pub fn fractional_derivative(f: &RadialProfile, beta: f64) -> Result<RadialProfile> {
    let band = f.grid.conj_max();
    let last_exp = band.log2().floor() as i32;
    let spec_grid = RadialGrid::new(crate::profile::GridSpec::new(
        (last_exp - 10).min(-6),
        last_exp,
        f.grid.r_max(),
    ));
    let mut fh = hankel_forward(f, &spec_grid)?;
    for (&rho, v) in spec_grid.nodes().iter().zip(fh.values.iter_mut()) {
        *v *= rho.powf(beta);
    }
    crate::radial_transform::hankel_inverse(&fh, &f.grid)
}

/// Ratio `||g||_{L^b} / ||D^beta g||_{L^a}` probing the embedding
/// `||g||_{L^b} <= C ||D^beta g||_{L^a}` with `1/a - 1/b = beta/n`.
pub fn sobolev_embedding_check(g: &RadialProfile, a: f64, b: f64, beta: f64) -> Result<f64> {
    let n = g.dim as f64;
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::Precondition(format!("a = {a} outside (1, inf)")));
    }
    if !(0.0..n / a).contains(&beta) && beta != 0.0 {
        return Err(Error::Precondition(format!(
            "beta = {beta} outside [0, n/a)"
        )));
    }
    if ((1.0 / a - 1.0 / b) - beta / n).abs() > 1e-12 {
        return Err(Error::Precondition(
            "exponent relation 1/a - 1/b = beta/n violated".into(),
        ));
    }
    let dg = fractional_derivative(g, beta)?;
    let denom = space_norm(&dg, a);
    if denom == 0.0 {
        return Err(Error::InvalidParameter("zero input".into()));
    }
    Ok(space_norm(g, b) / denom)
}

/// Convenience: the L^2 norm of a profile difference divided by the
/// larger of the two norms (0 when both vanish).
pub fn rel_l2(a: &RadialProfile, b: &RadialProfile) -> f64 {
    a.rel_l2_distance(b)
}
