//! Radial grids and profiles.
//!
//! A grid is a composite Gauss-Legendre rule on dyadic shells: the first
//! panel starts at zero, subsequent panels double. Per-shell orders are
//! sized from the largest conjugate frequency the grid must resolve
//! (spatial grids: the spectral band; spectral grids: the spatial extent
//! plus any propagation phase). Profiles sample complex values on the
//! nodes, so transforms and norms are weighted sums.

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Surface measure of the unit sphere in R^n.
pub fn sphere_area(n: u32) -> f64 {
    let nf = n as f64;
    2.0 * std::f64::consts::PI.powf(nf / 2.0) / crate::bessel::gamma(nf / 2.0)
}

/// One quadrature panel: `[lo, hi]` with a Gauss-Legendre order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Panel {
    pub lo: f64,
    pub hi: f64,
    pub order: usize,
}

/// Serializable recipe for a grid, kept in file sidecars.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GridSpec {
    /// Exponent of the first panel's upper edge: panel 0 is [0, 2^e0].
    pub first_panel_exp: i32,
    /// Upper edge of the last panel is 2^last_exp.
    pub last_exp: i32,
    /// Largest conjugate-variable frequency the grid resolves.
    pub conj_max: f64,
}

impl GridSpec {
    pub fn new(first_panel_exp: i32, last_exp: i32, conj_max: f64) -> Self {
        assert!(last_exp > first_panel_exp);
        assert!(conj_max >= 0.0);
        Self {
            first_panel_exp,
            last_exp,
            conj_max,
        }
    }

    fn panels(&self) -> Vec<Panel> {
        let mut panels = Vec::new();
        let mut lo = 0.0;
        let mut hi = 2f64.powi(self.first_panel_exp);
        loop {
            let width = hi - lo;
            let order = ((0.62 * width * self.conj_max) as usize + 14).clamp(14, 4096);
            panels.push(Panel { lo, hi, order });
            if hi >= 2f64.powi(self.last_exp) - 1e-12 {
                break;
            }
            lo = hi;
            hi *= 2.0;
        }
        panels
    }
}

/// Composite quadrature grid on `[0, r_max]`.
#[derive(Debug)]
pub struct RadialGrid {
    spec: GridSpec,
    panels: Vec<Panel>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialGrid {
    pub fn new(spec: GridSpec) -> Arc<Self> {
        let panels = spec.panels();
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for p in &panels {
            let rule = gauss_legendre(p.order);
            let mid = 0.5 * (p.lo + p.hi);
            let half = 0.5 * (p.hi - p.lo);
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                nodes.push(mid + half * x);
                weights.push(w * half);
            }
        }
        Arc::new(Self {
            spec,
            panels,
            nodes,
            weights,
        })
    }

    /// Default grid for smooth rapidly decaying profiles on [0, 2^last].
    pub fn standard(last_exp: i32, conj_max: f64) -> Arc<Self> {
        Self::new(GridSpec::new(-3, last_exp, conj_max))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn panels(&self) -> &[Panel] {
        &self.panels
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_max(&self) -> f64 {
        2f64.powi(self.spec.last_exp)
    }

    pub fn conj_max(&self) -> f64 {
        self.spec.conj_max
    }
}

impl PartialEq for RadialGrid {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

/// A radial function of space: complex values on a grid, with dimension.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub dim: u32,
    pub grid: Arc<RadialGrid>,
    pub values: Vec<Complex64>,
}

/// A radial function of frequency; same layout, separate type for the
/// direction of the transform convention.
#[derive(Debug, Clone)]
pub struct SpectralProfile {
    pub dim: u32,
    pub grid: Arc<RadialGrid>,
    pub values: Vec<Complex64>,
}

macro_rules! impl_profile {
    ($name:ident) => {
        impl $name {
            pub fn new(dim: u32, grid: Arc<RadialGrid>, values: Vec<Complex64>) -> Result<Self> {
                if dim < 2 {
                    return Err(Error::InvalidParameter(format!("dim = {dim} < 2")));
                }
                if values.len() != grid.len() {
                    return Err(Error::InvalidParameter(format!(
                        "{} values on a {}-node grid",
                        values.len(),
                        grid.len()
                    )));
                }
                if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                    return Err(Error::InvalidParameter("non-finite profile value".into()));
                }
                Ok(Self { dim, grid, values })
            }

            pub fn sample<F: Fn(f64) -> Complex64>(
                dim: u32,
                grid: &Arc<RadialGrid>,
                f: F,
            ) -> Result<Self> {
                let values = grid.nodes().iter().map(|&r| f(r)).collect();
                Self::new(dim, grid.clone(), values)
            }

            pub fn zeros(dim: u32, grid: &Arc<RadialGrid>) -> Self {
                Self {
                    dim,
                    grid: grid.clone(),
                    values: vec![Complex64::new(0.0, 0.0); grid.len()],
                }
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            /// Pointwise linear combination `self + c * other` (same grid).
            pub fn axpy(&self, c: Complex64, other: &Self) -> Self {
                assert!(Arc::ptr_eq(&self.grid, &other.grid), "grid mismatch");
                let values = self
                    .values
                    .iter()
                    .zip(&other.values)
                    .map(|(a, b)| a + c * b)
                    .collect();
                Self {
                    dim: self.dim,
                    grid: self.grid.clone(),
                    values,
                }
            }

            pub fn scaled(&self, c: Complex64) -> Self {
                Self {
                    dim: self.dim,
                    grid: self.grid.clone(),
                    values: self.values.iter().map(|v| v * c).collect(),
                }
            }

            /// Weighted L^2 norm on the full radial measure
            /// `(|S^{n-1}| int |f|^2 r^{n-1} dr)^{1/2}`.
            pub fn l2(&self) -> f64 {
                let n = self.dim;
                let mut s = 0.0;
                for ((&r, &w), v) in self
                    .grid
                    .nodes()
                    .iter()
                    .zip(self.grid.weights())
                    .zip(&self.values)
                {
                    s += w * v.norm_sqr() * r.powi(n as i32 - 1);
                }
                (s * sphere_area(n)).sqrt()
            }

            /// Relative L^2 distance, guarded against zero denominators.
            pub fn rel_l2_distance(&self, other: &Self) -> f64 {
                let diff = self.axpy(Complex64::new(-1.0, 0.0), other);
                let denom = self.l2().max(other.l2());
                if denom == 0.0 {
                    0.0
                } else {
                    diff.l2() / denom
                }
            }

            /// Local 6-point Lagrange interpolation at `r`.
            ///
            /// Extrapolates from the first window on `[0, nodes[0])`
            /// (radial profiles are smooth at the origin); zero beyond
            /// the last node, where profiles are taken as decayed.
            pub fn interpolate(&self, r: f64) -> Complex64 {
                const W: usize = 6;
                let nodes = self.grid.nodes();
                if r > *nodes.last().unwrap() {
                    return Complex64::new(0.0, 0.0);
                }
                let idx = nodes.partition_point(|&x| x < r);
                let i0 = idx.saturating_sub(W / 2).min(nodes.len() - W);
                let xs = &nodes[i0..i0 + W];
                let ys = &self.values[i0..i0 + W];
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..W {
                    let mut l = 1.0;
                    for m in 0..W {
                        if m != j {
                            l *= (r - xs[m]) / (xs[j] - xs[m]);
                        }
                    }
                    acc += ys[j] * l;
                }
                acc
            }
        }
    };
}

impl_profile!(RadialProfile);
impl_profile!(SpectralProfile);
