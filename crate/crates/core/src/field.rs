//! Time grids and space-time fields.
//!
//! Fields carry one radial frame per time node. The default time grid is
//! composite Chebyshev-Lobatto: panel joints are shared nodes, panel
//! quadrature weights are Clenshaw-Curtis, and cumulative integrals are
//! evaluated exactly on the interpolant, which is what the Duhamel
//! integral needs at every target time. Uniform grids (trapezoid
//! weights) exist for the split-step reference marcher.

use crate::error::{Error, Result};
use crate::profile::{RadialGrid, RadialProfile};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeGridKind {
    ChebyshevPanels,
    Uniform,
}

/// Chebyshev-Lobatto reference nodes on [-1, 1], increasing.
fn cgl_nodes(order: usize) -> Vec<f64> {
    (0..=order)
        .map(|j| -(std::f64::consts::PI * j as f64 / order as f64).cos())
        .collect()
}

/// Barycentric weights for the CGL nodes.
fn cgl_bary(order: usize) -> Vec<f64> {
    (0..=order)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == order {
                0.5 * sign
            } else {
                sign
            }
        })
        .collect()
}

/// Cumulative-integration matrix on the reference panel:
/// `C[i][j] = int_{-1}^{x_i} l_j(x) dx` for the CGL cardinal functions.
/// The last row is the Clenshaw-Curtis weight vector.
fn cumulative_matrix(order: usize) -> Arc<Vec<Vec<f64>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<f64>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&order) {
        return m.clone();
    }
    let xs = cgl_nodes(order);
    let bw = cgl_bary(order);
    let cardinal = |j: usize, x: f64| -> f64 {
        for (m, &xm) in xs.iter().enumerate() {
            if (x - xm).abs() < 1e-15 {
                return if m == j { 1.0 } else { 0.0 };
            }
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for (m, (&xm, &wm)) in xs.iter().zip(&bw).enumerate() {
            let c = wm / (x - xm);
            den += c;
            if m == j {
                num = c;
            }
        }
        num / den
    };
    let rule = crate::quadrature::gauss_legendre(order + 2);
    let mut mat = vec![vec![0.0; order + 1]; order + 1];
    for i in 1..=order {
        // Exact on degree-`order` polynomials; accumulate panel by panel.
        let (a, b) = (xs[i - 1], xs[i]);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for j in 0..=order {
            let mut s = 0.0;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                s += w * cardinal(j, mid + half * x);
            }
            mat[i][j] = mat[i - 1][j] + s * half;
        }
    }
    let m = Arc::new(mat);
    cache.lock().unwrap().insert(order, m.clone());
    m
}

/// Time nodes with quadrature weights and (for Chebyshev grids) exact
/// cumulative integration of the interpolant.
#[derive(Debug, Clone)]
pub struct TimeGrid {
    pub kind: TimeGridKind,
    times: Vec<f64>,
    weights: Vec<f64>,
    /// Chebyshev: (start index, order) per panel; nodes shared at joints.
    panels: Vec<(usize, usize)>,
}

impl TimeGrid {
    pub fn chebyshev(t0: f64, t1: f64, panel_count: usize, order: usize) -> Self {
        assert!(t1 > t0 && panel_count >= 1 && order >= 2);
        let ref_nodes = cgl_nodes(order);
        let cum = cumulative_matrix(order);
        let weights_ref = &cum[order];
        let h = (t1 - t0) / panel_count as f64;
        let mut times = Vec::new();
        let mut weights = Vec::new();
        let mut panels = Vec::new();
        for p in 0..panel_count {
            let (a, b) = (t0 + p as f64 * h, t0 + (p + 1) as f64 * h);
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let start = if p == 0 { 0 } else { times.len() - 1 };
            panels.push((start, order));
            let from = if p == 0 { 0 } else { 1 };
            for j in from..=order {
                times.push(mid + half * ref_nodes[j]);
                weights.push(weights_ref[j] * half);
            }
            if p > 0 {
                // Shared joint takes both panels' contributions.
                weights[start] += weights_ref[0] * half;
            }
        }
        Self {
            kind: TimeGridKind::ChebyshevPanels,
            times,
            weights,
            panels,
        }
    }

    pub fn uniform(t0: f64, t1: f64, count: usize) -> Self {
        assert!(count >= 2 && t1 > t0);
        let h = (t1 - t0) / (count - 1) as f64;
        let times: Vec<f64> = (0..count).map(|i| t0 + i as f64 * h).collect();
        let mut weights = vec![h; count];
        weights[0] = 0.5 * h;
        weights[count - 1] = 0.5 * h;
        Self {
            kind: TimeGridKind::Uniform,
            times,
            weights,
            panels: Vec::new(),
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn span(&self) -> (f64, f64) {
        (self.times[0], *self.times.last().unwrap())
    }

    /// Largest panel width (node spacing for uniform grids).
    pub fn max_panel_width(&self) -> f64 {
        match self.kind {
            TimeGridKind::Uniform => self.times[1] - self.times[0],
            TimeGridKind::ChebyshevPanels => self
                .panels
                .iter()
                .map(|&(s, n)| self.times[s + n] - self.times[s])
                .fold(0.0, f64::max),
        }
    }

    pub fn min_panel_order(&self) -> usize {
        self.panels.iter().map(|&(_, n)| n).min().unwrap_or(1)
    }

    /// Rescaled copy: `t -> c t` (c > 0), weights scaled alike.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c > 0.0);
        Self {
            kind: self.kind,
            times: self.times.iter().map(|t| c * t).collect(),
            weights: self.weights.iter().map(|w| c * w).collect(),
            panels: self.panels.clone(),
        }
    }

    /// `int v(t) dt` of node values against the grid weights.
    pub fn integrate(&self, values: &[Complex64]) -> Complex64 {
        values.iter().zip(&self.weights).map(|(v, &w)| v * w).sum()
    }

    /// Cumulative integral of the panel interpolants, at every node.
    /// Chebyshev grids only.
    pub fn cumulative(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.kind != TimeGridKind::ChebyshevPanels {
            return Err(Error::Precondition(
                "cumulative integration needs a Chebyshev time grid".into(),
            ));
        }
        assert_eq!(values.len(), self.times.len());
        let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
        for &(start, order) in &self.panels {
            let cum = cumulative_matrix(order);
            let half = 0.5 * (self.times[start + order] - self.times[start]);
            let offset = out[start];
            for i in 1..=order {
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..=order {
                    s += values[start + j] * cum[i][j];
                }
                out[start + i] = offset + s * half;
            }
        }
        Ok(out)
    }

    fn panel_of(&self, t: f64) -> usize {
        for (idx, &(s, n)) in self.panels.iter().enumerate() {
            if t <= self.times[s + n] {
                return idx;
            }
        }
        self.panels.len() - 1
    }

    /// Interpolates node values at an arbitrary time inside the span.
    pub fn interp(&self, values: &[Complex64], t: f64) -> Result<Complex64> {
        let (a, b) = self.span();
        if !(a - 1e-12 <= t && t <= b + 1e-12) {
            return Err(Error::Precondition(format!(
                "t = {t} outside the field span [{a}, {b}]"
            )));
        }
        match self.kind {
            TimeGridKind::Uniform => {
                let i = self
                    .times
                    .partition_point(|&x| x < t)
                    .clamp(1, self.times.len() - 1);
                let (t0, t1) = (self.times[i - 1], self.times[i]);
                let lam = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
                Ok(values[i - 1] * (1.0 - lam) + values[i] * lam)
            }
            TimeGridKind::ChebyshevPanels => {
                let (start, order) = self.panels[self.panel_of(t)];
                let xs = &self.times[start..=start + order];
                let vs = &values[start..=start + order];
                let bw = cgl_bary(order);
                let mut num = Complex64::new(0.0, 0.0);
                let mut den = 0.0;
                for ((&xm, &wm), &vm) in xs.iter().zip(&bw).zip(vs) {
                    let d = t - xm;
                    if d.abs() < 1e-14 {
                        return Ok(vm);
                    }
                    let c = wm / d;
                    num += vm * c;
                    den += c;
                }
                Ok(num / den)
            }
        }
    }
}

/// A time-indexed family of radial profiles on one shared spatial grid.
#[derive(Debug, Clone)]
pub struct SpaceTimeField {
    pub dim: u32,
    /// Dispersion order when the field came out of a propagator.
    pub alpha: Option<f64>,
    pub grid: Arc<RadialGrid>,
    pub time: TimeGrid,
    pub frames: Vec<RadialProfile>,
}

impl SpaceTimeField {
    pub fn from_frames(
        dim: u32,
        alpha: Option<f64>,
        grid: Arc<RadialGrid>,
        time: TimeGrid,
        frames: Vec<RadialProfile>,
    ) -> Result<Self> {
        if frames.len() != time.len() {
            return Err(Error::InvalidParameter(format!(
                "{} frames for {} time nodes",
                frames.len(),
                time.len()
            )));
        }
        for f in &frames {
            if f.dim != dim || !Arc::ptr_eq(&f.grid, &grid) {
                return Err(Error::InvalidParameter(
                    "frames must share the field grid and dimension".into(),
                ));
            }
        }
        Ok(Self {
            dim,
            alpha,
            grid,
            time,
            frames,
        })
    }

    pub fn from_fn<F: Fn(f64, f64) -> Complex64>(
        dim: u32,
        grid: &Arc<RadialGrid>,
        time: TimeGrid,
        f: F,
    ) -> Result<Self> {
        let frames = time
            .times()
            .iter()
            .map(|&t| RadialProfile::sample(dim, grid, |r| f(r, t)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_frames(dim, None, grid.clone(), time, frames)
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Time-interpolated frame at `t`.
    pub fn frame_at(&self, t: f64) -> Result<RadialProfile> {
        let m = self.grid.len();
        let mut values = vec![Complex64::new(0.0, 0.0); m];
        let mut column = vec![Complex64::new(0.0, 0.0); self.frames.len()];
        for i in 0..m {
            for (k, fr) in self.frames.iter().enumerate() {
                column[k] = fr.values[i];
            }
            values[i] = self.time.interp(&column, t)?;
        }
        RadialProfile::new(self.dim, self.grid.clone(), values)
    }

    /// Frame-wise linear combination `self + c * other` (same grid and
    /// time nodes).
    pub fn axpy(&self, c: Complex64, other: &SpaceTimeField) -> Result<SpaceTimeField> {
        if self.len() != other.len() || !Arc::ptr_eq(&self.grid, &other.grid) {
            return Err(Error::InvalidParameter(
                "field combination needs matching grids and time nodes".into(),
            ));
        }
        let frames = self
            .frames
            .iter()
            .zip(&other.frames)
            .map(|(a, b)| a.axpy(c, b))
            .collect();
        SpaceTimeField::from_frames(self.dim, self.alpha, self.grid.clone(), self.time.clone(), frames)
    }

    /// Pointwise product with another field on the same grid and times.
    pub fn pointwise_mul(&self, other: &SpaceTimeField) -> Result<SpaceTimeField> {
        if self.len() != other.len() || !Arc::ptr_eq(&self.grid, &other.grid) {
            return Err(Error::InvalidParameter(
                "pointwise product needs matching grids and time nodes".into(),
            ));
        }
        let frames = self
            .frames
            .iter()
            .zip(&other.frames)
            .map(|(a, b)| {
                let values = a
                    .values
                    .iter()
                    .zip(&b.values)
                    .map(|(x, y)| x * y)
                    .collect();
                RadialProfile {
                    dim: self.dim,
                    grid: self.grid.clone(),
                    values,
                }
            })
            .collect();
        SpaceTimeField::from_frames(self.dim, None, self.grid.clone(), self.time.clone(), frames)
    }
}
