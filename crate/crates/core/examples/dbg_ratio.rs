use displab_core::cutoff::Bump;
use displab_core::field::{SpaceTimeField, TimeGrid};
use displab_core::kernels::*;
use displab_core::profile::{GridSpec, RadialGrid};
use num_complex::Complex64;

fn shell_field(n: u32, k: u32, modulated: bool) -> SpaceTimeField {
    let (lo, hi) = shell(k);
    let grid = RadialGrid::new(GridSpec::new(-3, k.max(1) as i32, 6.0));
    let bump = Bump::new(lo.max(1e-3), hi);
    let tg = TimeGrid::chebyshev(-1.0, 1.0, 2, 12);
    let rho0: f64 = 1.0;
    SpaceTimeField::from_fn(n, &grid, tg, move |lam, s| {
        let base = bump.eval(lam) * (-2.0 * s * s).exp();
        if modulated {
            // Travelling modulation matched to the kernel's e^{i lam rho}
            // at rho = rho0 and e^{-i s rho0^alpha}.
            Complex64::from_polar(base, lam * rho0 + s * rho0.powf(1.5))
        } else {
            Complex64::new(base, 0.0)
        }
    })
    .unwrap()
}

fn main() {
    let p = KernelParams::new(2, 1.5);
    for modulated in [false, true] {
        println!("modulated = {modulated}");
        for j in 2..=7u32 {
            let h = shell_field(2, j, modulated);
            let ratio = apply_tj_tkstar_l2(&p, j, j, &h).unwrap();
            println!(
                "  j={j}: ratio = {:.4e}, normalized (ratio * 2^-j) = {:.4e}",
                ratio,
                ratio * 2f64.powi(-(j as i32))
            );
        }
    }
}
