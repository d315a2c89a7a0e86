//! The dyadic operator machinery: the oscillatory kernel `K(r, lambda,
//! t)`, shell-sampled decay reports, the localized operators `T_j T_k^*`
//! applied to test data, and the bilinear forms pairing them.
//!
//! `K(r,l,t) = (r l)^{-(n-2)/2} int e^{i t rho^alpha} J(r rho) J(l rho)
//! rho phi(rho) d rho` over the band `[1/2, 2]`. Bessel factors whose
//! argument stays past the asymptotic switch are peeled into their two
//! analytic-signal branches, turning each piece into a smooth amplitude
//! against the explicit phase `t rho^alpha + s1 r rho + s2 l rho`; the
//! general oscillatory driver then picks Filon or stationary-window
//! quadrature per branch. Small-shell factors stay in the amplitude.

use crate::bessel::{self, j_fast};
use crate::cutoff::CutoffSpec;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::SpaceTimeField;
use crate::oscillatory::integrate_phase;
use crate::quadrature::gauss_legendre;
use num_complex::Complex64;
use serde::Serialize;

/// Radius above which a Bessel factor is branch-decomposed (argument
/// `>= 16` across the whole band `rho >= 1/2`).
const DECOMPOSE_RADIUS: f64 = 32.0;

/// Shell indices; `j = 0` selects the small-radius variant `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicIndex {
    pub j: u32,
    pub k: u32,
}

/// Half-open shell for one index: `[2^{i-1}, 2^i)`, or `(0, 1)` at 0.
pub fn shell(i: u32) -> (f64, f64) {
    if i == 0 {
        (0.0, 1.0)
    } else {
        (2f64.powi(i as i32 - 1), 2f64.powi(i as i32))
    }
}

/// Dimension, dispersion order and cutoff bundled for kernel work.
#[derive(Debug, Clone)]
pub struct KernelParams {
    pub n: u32,
    pub alpha: f64,
    pub cutoff: CutoffSpec,
}

impl KernelParams {
    pub fn new(n: u32, alpha: f64) -> Self {
        Self {
            n,
            alpha,
            cutoff: CutoffSpec::default(),
        }
    }

    fn nu(&self) -> f64 {
        (self.n as f64 - 2.0) / 2.0
    }
}

/// Which Bessel factors get branch-decomposed.
#[derive(Clone, Copy)]
enum FactorMode {
    Amplitude,
    Branches,
}

fn factor_mode(radius: f64) -> FactorMode {
    if radius >= DECOMPOSE_RADIUS {
        FactorMode::Branches
    } else {
        FactorMode::Amplitude
    }
}

/// Oscillatory band integral
/// `int e^{i t rho^alpha} G1(r rho) G2(l rho) w(rho) d rho`
/// where each `G` is either a true Bessel factor kept in the amplitude
/// or the pair of analytic-signal branches.
fn band_integral(
    p: &KernelParams,
    r: f64,
    lambda: f64,
    t: f64,
    weight: &dyn Fn(f64) -> f64,
    tol: f64,
) -> Result<Complex64> {
    let nu = p.nu();
    let alpha = p.alpha;
    let (a, b) = (0.5, 2.0);
    let mode_r = factor_mode(r);
    let mode_l = factor_mode(lambda);

    // Sign lists: 0 encodes "kept in amplitude".
    let signs_r: &[i32] = match mode_r {
        FactorMode::Amplitude => &[0],
        FactorMode::Branches => &[1, -1],
    };
    let signs_l: &[i32] = match mode_l {
        FactorMode::Amplitude => &[0],
        FactorMode::Branches => &[1, -1],
    };
    let branches = (signs_r.len() * signs_l.len()) as f64;
    let branch_tol = tol / branches;

    let mut total = Complex64::new(0.0, 0.0);
    for &s1 in signs_r {
        for &s2 in signs_l {
            let amp = |rho: f64| {
                let mut v = Complex64::new(weight(rho), 0.0);
                v *= match s1 {
                    0 => Complex64::new(j_fast(nu, r * rho), 0.0),
                    1 => bessel::oscillatory_amplitude(nu, r * rho),
                    _ => bessel::oscillatory_amplitude(nu, r * rho).conj(),
                };
                v *= match s2 {
                    0 => Complex64::new(j_fast(nu, lambda * rho), 0.0),
                    1 => bessel::oscillatory_amplitude(nu, lambda * rho),
                    _ => bessel::oscillatory_amplitude(nu, lambda * rho).conj(),
                };
                v
            };
            let lin = s1 as f64 * r + s2 as f64 * lambda;
            let phase = |rho: f64| t * rho.powf(alpha) + lin * rho;
            let dphase = |rho: f64| t * alpha * rho.powf(alpha - 1.0) + lin;
            let amp_freq = if s1 == 0 { r } else { 0.0 } + if s2 == 0 { lambda } else { 0.0 };
            let res = integrate_phase(&amp, &phase, &dphase, a, b, branch_tol, amp_freq)?;
            total += res.value;
        }
    }
    Ok(total)
}

/// The kernel `K(r, lambda, t)`; `r` must lie in shell `j`, `lambda` in
/// shell `k`. Quadrature tolerance is absolute on the returned value.
pub fn kernel_k_eval(
    p: &KernelParams,
    idx: DyadicIndex,
    r: f64,
    lambda: f64,
    t: f64,
    tol: f64,
) -> Result<Complex64> {
    for (name, val, i) in [("r", r, idx.j), ("lambda", lambda, idx.k)] {
        let (lo, hi) = shell(i);
        if !(val > lo && val < hi) && !(i == 0 && val > 0.0 && val < 1.0) {
            return Err(Error::Precondition(format!(
                "{name} = {val} outside shell [{lo}, {hi})"
            )));
        }
    }
    let nu = p.nu();
    let prefactor = (r * lambda).powf(-nu);
    let cut = p.cutoff;
    let w = move |rho: f64| cut.varphi_sq(rho);
    let integral = band_integral(p, r, lambda, t, &w, tol / prefactor.max(1.0))?;
    Ok(integral * prefactor)
}

/// The pure-remainder part of the kernel: both Bessel factors replaced
/// by their two-term-expansion remainders `E`.
pub fn kernel_e_part_eval(
    p: &KernelParams,
    r: f64,
    lambda: f64,
    t: f64,
    tol: f64,
) -> Result<Complex64> {
    let nu = p.nu();
    let alpha = p.alpha;
    let cut = p.cutoff;
    let e_of = move |x: f64| -> f64 {
        let d = bessel::asymptotic_main(nu, x).expect("x > 1 inside band");
        j_fast(nu, x) - d.main_cos - d.correction_sin
    };
    let amp = |rho: f64| Complex64::new(e_of(r * rho) * e_of(lambda * rho) * cut.varphi_sq(rho), 0.0);
    let phase = |rho: f64| t * rho.powf(alpha);
    let dphase = |rho: f64| t * alpha * rho.powf(alpha - 1.0);
    let res = integrate_phase(&amp, &phase, &dphase, 0.5, 2.0, tol, r + lambda)?;
    Ok(res.value * (r * lambda).powf(-nu))
}

/// How many (r, lambda) and t samples a decay sweep uses.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SamplingSpec {
    pub shell_samples: usize,
    pub t_samples: usize,
}

impl Default for SamplingSpec {
    fn default() -> Self {
        Self {
            shell_samples: 32,
            t_samples: 64,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelCell {
    pub j: u32,
    pub k: u32,
    pub sup_abs: f64,
    /// `sup |K| * 2^{ (2n-1)(j+k)/4 + |j-k|/4 }` for `j, k >= 1`;
    /// `sup |K| * 2^{ max(j,k) n / 2 }` when an index is 0.
    pub normalized: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelDecayReport {
    pub n: u32,
    pub alpha: f64,
    pub sampling: SamplingSpec,
    pub cells: Vec<KernelCell>,
}

impl KernelDecayReport {
    pub fn cell(&self, j: u32, k: u32) -> Option<&KernelCell> {
        self.cells.iter().find(|c| c.j == j && c.k == k)
    }

    pub fn max_normalized<F: Fn(&KernelCell) -> bool>(&self, pred: F) -> f64 {
        self.cells
            .iter()
            .filter(|c| pred(c))
            .map(|c| c.normalized)
            .fold(0.0, f64::max)
    }
}

fn shell_points(i: u32, count: usize) -> Vec<f64> {
    let (lo, hi) = shell(i);
    let lo = if i == 0 { 0.05 } else { lo };
    (0..count)
        .map(|m| lo + (hi - lo) * (m as f64 + 0.5) / count as f64)
        .collect()
}

/// Sampled t values covering the stationary window `(2^m/8, 8 2^m)` and
/// the far regime on both sides of it.
fn t_samples_for(m: u32, count: usize) -> Vec<f64> {
    let base = 2f64.powi(m as i32);
    let half = count / 2;
    let mut ts = Vec::with_capacity(count);
    // Window samples, log-spaced.
    for i in 0..half {
        let frac = i as f64 / (half - 1).max(1) as f64;
        ts.push(base / 8.0 * 64f64.powf(frac));
    }
    // Far samples: [2^m/64, 2^m/8) and (8 2^m, 64 2^m].
    let quarter = (count - half) / 2;
    for i in 0..quarter {
        let frac = i as f64 / quarter.max(1) as f64;
        ts.push(base / 64.0 * 8f64.powf(frac) * 0.999);
        ts.push(8.0 * base * 8f64.powf(frac) * 1.001);
    }
    ts
}

/// Shell-sampled `sup |K|` and its normalization per (j, k).
pub fn dyadic_sup_report(
    p: &KernelParams,
    j_range: (u32, u32),
    k_range: (u32, u32),
    sampling: SamplingSpec,
) -> Result<KernelDecayReport> {
    if j_range.1 > 10 || k_range.1 > 10 {
        return Err(Error::Precondition("desk scale caps shells at 10".into()));
    }
    let mut cells = Vec::new();
    for j in j_range.0..=j_range.1 {
        for k in k_range.0..=k_range.1 {
            let m = j.max(k);
            let rs = shell_points(j, sampling.shell_samples);
            let ls = shell_points(k, sampling.shell_samples);
            let ts = t_samples_for(m, sampling.t_samples);
            // Parallel over (r, lambda) pairs; deterministic max.
            let pairs: Vec<(f64, f64)> = rs
                .iter()
                .flat_map(|&r| ls.iter().map(move |&l| (r, l)))
                .collect();
            let sups = exec::par_map(&pairs, |&(r, l)| {
                let mut local: f64 = 0.0;
                for &t in &ts {
                    let v = kernel_k_eval(p, DyadicIndex { j, k }, r, l, t, 1e-9)
                        .map(|z| z.norm())
                        .unwrap_or(f64::NAN);
                    local = local.max(v);
                }
                local
            });
            let sup_abs = sups.iter().fold(0.0f64, |a, &b| a.max(b));
            if !sup_abs.is_finite() {
                return Err(Error::Quadrature(format!(
                    "kernel sampling failed at (j, k) = ({j}, {k})"
                )));
            }
            let nf = p.n as f64;
            let normalized = if j == 0 || k == 0 {
                sup_abs * 2f64.powf(m as f64 * nf / 2.0)
            } else {
                sup_abs
                    * 2f64.powf(
                        (2.0 * nf - 1.0) / 4.0 * (j + k) as f64 + (j as f64 - k as f64).abs() / 4.0,
                    )
            };
            cells.push(KernelCell {
                j,
                k,
                sup_abs,
                normalized,
            });
        }
    }
    Ok(KernelDecayReport {
        n: p.n,
        alpha: p.alpha,
        sampling,
        cells,
    })
}

/// Which t-regime a pure-phase probe samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `t` inside `(2^m/8, 8 2^m)`: a stationary point can enter the band.
    Window,
    /// `t` outside the window: the phase derivative stays `~ 2^m`.
    Far,
}

/// `sup |int e^{i(t rho^alpha - r rho - l rho)} rho^{-1} phi^2 d rho|`
/// over shell samples and the chosen t-regime. The all-minus sign choice
/// is the one admitting a stationary point.
pub fn pure_phase_sup(
    p: &KernelParams,
    j: u32,
    k: u32,
    regime: Regime,
    sampling: SamplingSpec,
) -> Result<f64> {
    let m = j.max(k);
    let alpha = p.alpha;
    let cut = p.cutoff;
    let rs = shell_points(j, sampling.shell_samples);
    let ls = shell_points(k, sampling.shell_samples);
    let all_ts = t_samples_for(m, sampling.t_samples * 2);
    let base = 2f64.powi(m as i32);
    let ts: Vec<f64> = all_ts
        .into_iter()
        .filter(|&t| {
            let inside = t > base / 8.0 && t < 8.0 * base;
            (regime == Regime::Window) == inside
        })
        .collect();
    let pairs: Vec<(f64, f64)> = rs
        .iter()
        .flat_map(|&r| ls.iter().map(move |&l| (r, l)))
        .collect();
    let sups = exec::par_map(&pairs, |&(r, l)| {
        let mut local: f64 = 0.0;
        for &t in &ts {
            let amp = |rho: f64| Complex64::new(cut.varphi_sq(rho) / rho, 0.0);
            let phase = |rho: f64| t * rho.powf(alpha) - (r + l) * rho;
            let dphase = |rho: f64| t * alpha * rho.powf(alpha - 1.0) - (r + l);
            if let Ok(v) = integrate_phase(&amp, &phase, &dphase, 0.5, 2.0, 1e-11, 0.0) {
                local = local.max(v.value.norm());
            }
        }
        local
    });
    Ok(sups.iter().fold(0.0f64, |a, &b| a.max(b)))
}

/// `T_k^*(lambda^{n-1} H)(rho)` on the given band nodes.
///
/// `h` supplies `H(lambda, s)` on its own grids; the lambda integral is
/// restricted to shell `k` by the characteristic function.
fn t_star(
    p: &KernelParams,
    k: u32,
    h: &SpaceTimeField,
    rho_nodes: &[f64],
) -> Vec<Complex64> {
    let nu = p.nu();
    let alpha = p.alpha;
    let (lo, hi) = shell(k);
    let lam_nodes = h.grid.nodes();
    let lam_weights = h.grid.weights();
    let times = h.time.times();
    let t_weights = h.time.weights();
    exec::par_map(rho_nodes, |&rho| {
        // Inner lambda integral per time frame, then the s integral.
        let mut acc = Complex64::new(0.0, 0.0);
        for (fi, fr) in h.frames.iter().enumerate() {
            let mut inner = Complex64::new(0.0, 0.0);
            for ((&lam, &w), v) in lam_nodes.iter().zip(lam_weights).zip(&fr.values) {
                if lam <= lo || lam >= hi {
                    continue;
                }
                inner += v * (w * lam.powf(-nu) * j_fast(nu, lam * rho) * lam.powf(nu * 2.0 + 1.0));
            }
            let s = times[fi];
            acc += inner * Complex64::from_polar(1.0, -s * rho.powf(alpha)) * t_weights[fi];
        }
        acc * p.cutoff.varphi(rho)
    })
}

/// Band quadrature nodes on [1/2, 2] resolving oscillations up to
/// `freq`.
fn band_nodes(freq: f64) -> (Vec<f64>, Vec<f64>) {
    let order = ((0.62 * 1.5 * freq) as usize + 24).min(4096);
    let rule = gauss_legendre(order);
    let (mid, half) = (1.25, 0.75);
    let nodes: Vec<f64> = rule.nodes.iter().map(|x| mid + half * x).collect();
    let weights: Vec<f64> = rule.weights.iter().map(|w| w * half).collect();
    (nodes, weights)
}

/// Sampled norm ratio
/// `|| T_j T_k^* (lambda^{n-1} H) ||_{L^2_t L^2_r} / ||H||_{L^{q'}_t L^{q'}_r}`
/// at `q = q_dual = 2`, where the t-norm over the full line is evaluated
/// exactly by Plancherel in the variable `u = rho^alpha`.
pub fn apply_tj_tkstar_l2(p: &KernelParams, j: u32, k: u32, h: &SpaceTimeField) -> Result<f64> {
    let nu = p.nu();
    let alpha = p.alpha;
    // Oscillation of T_k^* in rho: lambda reach plus the s-span phase.
    let (_, hi_l) = shell(k);
    let (t0, t1) = h.time.span();
    let s_span = t1.abs().max(t0.abs());
    let freq = hi_l + s_span * alpha * 2f64.powf(alpha - 1.0) + 2f64.powi(j as i32);
    let (rho_nodes, rho_weights) = band_nodes(freq);
    let hk = t_star(p, k, h, &rho_nodes);

    // || T_j T_k^* ||_{L^2_t L^2(r^{n-1} dr)}^2
    //   = int_shell_j r^{n-1} r^{-(n-2)} || int e^{i t u} g_r(u) du ||^2_{L^2_t} dr
    // with u = rho^alpha, g_r(u) = J(r rho) varphi(rho) hk(rho) / (alpha rho^{alpha-1}).
    // Plancherel: || . ||^2_{L^2_t} = 2 pi int |g_r(u)|^2 du.
    let (lo_r, hi_r) = shell(j);
    let lo_r = if j == 0 { 1e-6 } else { lo_r };
    let r_rule = gauss_legendre(((0.62 * (hi_r - lo_r) * 2.0) as usize + 24).min(2048));
    let mid = 0.5 * (lo_r + hi_r);
    let half = 0.5 * (hi_r - lo_r);
    let mut out_sq = 0.0;
    for (xr, wr) in r_rule.nodes.iter().zip(&r_rule.weights) {
        let r = mid + half * xr;
        let mut inner = 0.0;
        for ((&rho, &w), hv) in rho_nodes.iter().zip(&rho_weights).zip(&hk) {
            // |g_r(u)|^2 du = |g~(rho)|^2 / (alpha rho^{alpha-1}) d rho.
            let g = j_fast(nu, r * rho) * p.cutoff.varphi(rho);
            inner += w * (g * g) * hv.norm_sqr() / (alpha * rho.powf(alpha - 1.0));
        }
        out_sq += wr * half * inner * 2.0 * std::f64::consts::PI * r.powf(-(nu * 2.0)) * r.powi(p.n as i32 - 1);
    }
    let out_norm = out_sq.sqrt();

    // ||H||_{L^2_t L^2(r^{n-1} dr)} (q' = 2 when q = 2).
    let mut h_sq = 0.0;
    for (fi, fr) in h.frames.iter().enumerate() {
        let mut sp = 0.0;
        for ((&lam, &w), v) in h.grid.nodes().iter().zip(h.grid.weights()).zip(&fr.values) {
            sp += w * v.norm_sqr() * lam.powi(p.n as i32 - 1);
        }
        h_sq += sp * h.time.weights()[fi];
    }
    let h_norm = h_sq.sqrt();
    if h_norm == 0.0 {
        return Ok(0.0);
    }
    Ok(out_norm / h_norm)
}

/// Bilinear form `B_{j,k}(H, H~) = < T_k^*(lambda^{n-1} H),
/// T_j^*(lambda^{n-1} H~) >_{L^2_rho}`, the pairing behind the adjoint
/// symmetry of `T_j T_k^*`.
pub fn bilinear_form(
    p: &KernelParams,
    j: u32,
    k: u32,
    h_k: &SpaceTimeField,
    h_j: &SpaceTimeField,
) -> Result<Complex64> {
    let alpha = p.alpha;
    let (t0, t1) = h_k.time.span();
    let s_span = t1.abs().max(t0.abs());
    let freq = 2f64.powi(j.max(k) as i32) + s_span * alpha * 2f64.powf(alpha - 1.0);
    let (rho_nodes, rho_weights) = band_nodes(freq);
    let a = t_star(p, k, h_k, &rho_nodes);
    let b = t_star(p, j, h_j, &rho_nodes);
    let mut acc = Complex64::new(0.0, 0.0);
    for ((av, bv), &w) in a.iter().zip(&b).zip(&rho_weights) {
        acc += av * bv.conj() * w;
    }
    Ok(acc)
}
