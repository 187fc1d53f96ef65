//! Hydrodynamic quantities of the facilitated TASEP: flux, tagged-particle
//! drift, the front constants, the rarefaction-fan density profile and the
//! law-of-large-numbers particle positions.

use crate::error::{Error, Result};

/// Stationary flux `j(ρ)`.
///
/// `(1-ρ)(2ρ-1)/ρ` for `ρ > 1/2`. Below density 1/2 the process freezes
/// into immobile single-particle clusters, so the flux is zero there.
pub fn flux(rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidArgument(format!(
            "density must lie in [0,1], got {rho}"
        )));
    }
    if rho <= 0.5 {
        Ok(0.0)
    } else {
        Ok((1.0 - rho) * (2.0 * rho - 1.0) / rho)
    }
}

/// Drift of a tagged particle at density `ρ > 1/2`: `j(ρ)/ρ`.
pub fn drift(rho: f64) -> Result<f64> {
    Ok(flux(rho)? / rho)
}

/// Density at the front and the front speed, `(ρ₀, π₀) = (2/3, 1/4)`.
///
/// `ρ₀` maximizes the drift on `(1/2, 1]`; `π₀` is the characteristic
/// speed there. Returned analytically; `front_constants_numeric` recovers
/// the same pair by golden-section maximization.
pub fn front_constants() -> (f64, f64) {
    (2.0 / 3.0, 0.25)
}

/// Maximizer of the drift on (1/2, 1]: golden-section search followed by
/// one parabolic refinement, which recovers the optimum to ~1e-12 despite
/// the flat top of the objective.
pub fn front_constants_numeric() -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.5 + 1e-9, 1.0);
    let f = |r: f64| drift(r).unwrap();
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    while b - a > 1e-4 {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    // parabolic vertex through three points around the bracket midpoint
    let mut x = 0.5 * (a + b);
    for h in [1e-4, 1e-5, 3e-6] {
        let (f0, f1, f2) = (f(x - h), f(x), f(x + h));
        let denom = f0 - 2.0 * f1 + f2;
        if denom.abs() > 0.0 {
            x -= h * 0.5 * (f2 - f0) / denom;
        }
    }
    // at the maximizer the characteristic speed equals the drift
    (x, drift(x).unwrap())
}

/// Limiting density profile at macroscopic position `x` (site/time units).
pub fn density_profile(x: f64) -> f64 {
    if x < -1.0 {
        1.0
    } else if x <= 0.25 {
        1.0 / (2.0 + x).sqrt()
    } else {
        0.0
    }
}

/// LLN position of the particle with index fraction `r`:
/// `x_{⌊rt⌋}(t)/t → (1 - 6r + r²)/4`.
pub fn lln_position(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) && r != 0.0 {
        return Err(Error::InvalidArgument(format!(
            "index fraction must lie in (0,1), got {r}"
        )));
    }
    Ok((1.0 - 6.0 * r + r * r) / 4.0)
}

/// Inverse of [`lln_position`] on `π ∈ [-1, 1/4]`: `κ = 3 - 2√(2+π)`.
pub fn kappa_of_pi(pi: f64) -> Result<f64> {
    if !(-1.0..=0.25).contains(&pi) {
        return Err(Error::InvalidArgument(format!(
            "macroscopic position must lie in [-1, 1/4], got {pi}"
        )));
    }
    Ok(3.0 - 2.0 * (2.0 + pi).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flux_endpoints_and_value() {
        assert_eq!(flux(1.0).unwrap(), 0.0);
        assert_eq!(flux(0.5).unwrap(), 0.0);
        assert!((flux(2.0 / 3.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!(flux(1.5).is_err());
    }

    #[test]
    fn flux_shape() {
        // continuous at 1/2, positive in between, zero at the ends
        assert!(flux(0.5 + 1e-9).unwrap() < 1e-8);
        for k in 1..100 {
            let rho = 0.5 + 0.5 * k as f64 / 100.0;
            assert!(flux(rho).unwrap() > 0.0 || rho == 1.0);
        }
    }

    #[test]
    fn front_constants_analytic_vs_numeric() {
        let (rho0, pi0) = front_constants();
        let (rho_n, _) = front_constants_numeric();
        assert!((rho0 - rho_n).abs() < 1e-10);
        // characteristic speed at the front equals the drift there
        let d = drift(rho0).unwrap();
        assert!((d - pi0).abs() < 1e-15);
    }

    #[test]
    fn drift_unique_max_on_grid() {
        let mut best = (0.0, 0.0);
        let mut r = 0.5 + 1e-4;
        while r <= 1.0 {
            let d = drift(r).unwrap();
            if d > best.1 {
                best = (r, d);
            }
            r += 1e-4;
        }
        assert!((best.0 - 2.0 / 3.0).abs() < 2e-4, "maximizer {}", best.0);
    }

    #[test]
    fn profile_values() {
        assert_eq!(density_profile(-2.0), 1.0);
        assert_eq!(density_profile(1.0), 0.0);
        assert!((density_profile(0.25) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lln_round_trip() {
        assert!((lln_position(1e-12).unwrap() - 0.25).abs() < 1e-9);
        assert!(kappa_of_pi(0.25).unwrap().abs() < 1e-12);
        for p in [-0.5, 0.0, 0.2] {
            let k = kappa_of_pi(p).unwrap();
            assert!((lln_position(k).unwrap() - p).abs() < 1e-12);
        }
    }
}
