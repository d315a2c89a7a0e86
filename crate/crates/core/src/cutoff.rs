//! Smooth cutoffs: the dyadic partition function, its square-root weight,
//! and compactly supported bumps.
//!
//! The construction glues 1 and 0 with the standard `exp(-1/x)` step, so
//! the dyadic sum telescopes exactly: `sum_k phi(rho/2^k) = 1` for
//! `rho > 0` with only rounding error.

/// `exp(-beta/x)` mollifier piece.
fn psi(x: f64, beta: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-beta / x).exp()
    }
}

/// Smooth step: 0 for `x <= 0`, 1 for `x >= 1`.
fn smoothstep(x: f64, beta: f64) -> f64 {
    let a = psi(x, beta);
    let b = psi(1.0 - x, beta);
    a / (a + b)
}

/// Generator of the Littlewood-Paley cutoff `phi` supported in (1/2, 2).
#[derive(Debug, Clone, Copy)]
pub struct CutoffSpec {
    /// Steepness of the glued transition; 1.0 is the reference choice.
    pub transition_sharpness: f64,
}

impl Default for CutoffSpec {
    fn default() -> Self {
        Self {
            transition_sharpness: 1.0,
        }
    }
}

impl CutoffSpec {
    /// `eta`: 1 on (-inf, 1], 0 on [2, inf), smooth in between.
    pub fn eta(&self, rho: f64) -> f64 {
        1.0 - smoothstep(rho - 1.0, self.transition_sharpness)
    }

    /// The dyadic piece `phi(rho) = eta(rho) - eta(2 rho)`, supported in
    /// (1/2, 2), with `sum_k phi(rho / 2^k) = 1`.
    pub fn phi(&self, rho: f64) -> f64 {
        if rho <= 0.5 || rho >= 2.0 {
            return 0.0;
        }
        self.eta(rho) - self.eta(2.0 * rho)
    }

    /// The operator weight `varphi(rho) = sqrt(rho phi(rho))`, i.e. the
    /// function whose square is `rho phi(rho)`.
    pub fn varphi(&self, rho: f64) -> f64 {
        (rho * self.phi(rho)).max(0.0).sqrt()
    }

    /// `varphi^2 = rho phi(rho)` directly.
    pub fn varphi_sq(&self, rho: f64) -> f64 {
        rho * self.phi(rho)
    }

    /// Partial dyadic sum `sum_{k=-kmax..kmax} phi(rho/2^k)`.
    pub fn partition_sum(&self, rho: f64, kmax: i32) -> f64 {
        let mut s = 0.0;
        for k in -kmax..=kmax {
            s += self.phi(rho / 2f64.powi(k));
        }
        s
    }
}

/// Smooth bump supported exactly on `[a, b]`, equal to 1 at the midpoint.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub a: f64,
    pub b: f64,
    beta: f64,
}

impl Bump {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(b > a);
        Self { a, b, beta: 1.0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let half = 0.5 * (self.b - self.a);
        smoothstep((x - self.a) / half, self.beta) * smoothstep((self.b - x) / half, self.beta)
    }
}
