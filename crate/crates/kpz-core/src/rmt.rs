//! Largest-eigenvalue sampling for Gaussian ensembles via tridiagonal
//! models (Dumitriu–Edelman). Used as an independent Monte Carlo oracle
//! for the Tracy–Widom GUE distribution.
//!
//! For the unitary ensemble normalized so that the spectrum fills
//! [-2√N, 2√N], the tridiagonal model has diagonal N(0,1) and
//! subdiagonal entries χ_{2(N-i)}/√2; then
//! `(λ_max - 2√N) N^{1/6} → TW₂`.

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

/// Count of eigenvalues of the symmetric tridiagonal (d, e) that are < λ
/// (Sturm sequence with the standard guard against zero pivots).
fn count_below(d: &[f64], e: &[f64], lambda: f64) -> usize {
    let mut count = 0usize;
    let mut q = d[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let denom = if q.abs() < 1e-300 {
            1e-300f64.copysign(if q == 0.0 { 1.0 } else { q })
        } else {
            q
        };
        q = d[i] - lambda - e[i - 1] * e[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of one GUE(n) sample, centered and scaled to the
/// Tracy–Widom coordinate.
pub fn gue_lambda_max_rescaled<R: Rng>(n: usize, rng: &mut R) -> f64 {
    let mut d = vec![0.0f64; n];
    for v in d.iter_mut() {
        *v = rng.sample(StandardNormal);
    }
    let mut e = vec![0.0f64; n - 1];
    for (i, v) in e.iter_mut().enumerate() {
        let dof = 2.0 * (n - 1 - i) as f64;
        let chi2 = ChiSquared::new(dof).unwrap().sample(rng);
        *v = (chi2 / 2.0).sqrt();
    }
    let nf = n as f64;
    let edge = 2.0 * nf.sqrt();
    let scale = nf.powf(-1.0 / 6.0);
    // λ_max lies within a few TW widths of the edge with overwhelming
    // probability; a ±10 absolute window is far wider than that
    let mut lo = edge - 10.0;
    let mut hi = edge + 10.0;
    // bisect for the point where all n eigenvalues lie below
    for _ in 0..70 {
        let mid = 0.5 * (lo + hi);
        if count_below(&d, &e, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lmax = 0.5 * (lo + hi);
    (lmax - edge) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::rng_for;

    #[test]
    fn sturm_counts_match_small_matrix() {
        // 2x2 [[a, b], [b, c]] eigenvalues via closed form
        let (a, b, c) = (0.3f64, 1.1f64, -0.4f64);
        let tr = a + c;
        let det = a * c - b * b;
        let disc = (tr * tr - 4.0 * det).sqrt();
        let l1 = 0.5 * (tr - disc);
        let l2 = 0.5 * (tr + disc);
        let d = [a, c];
        let e = [b];
        assert_eq!(count_below(&d, &e, l1 - 0.01), 0);
        assert_eq!(count_below(&d, &e, 0.5 * (l1 + l2)), 1);
        assert_eq!(count_below(&d, &e, l2 + 0.01), 2);
    }

    #[test]
    fn gue_edge_location() {
        // mean of TW2 is ≈ -1.771; a loose sanity window suffices here
        let mut rng = rng_for(31, 0);
        let m = 200;
        let mean: f64 = (0..m)
            .map(|_| gue_lambda_max_rescaled(200, &mut rng))
            .sum::<f64>()
            / m as f64;
        assert!((-2.4..=-1.2).contains(&mean), "mean {mean}");
    }
}
