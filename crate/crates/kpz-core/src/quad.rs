//! Quadrature on ray-pair contours in the complex plane.
//!
//! A contour `C_a^φ` is the union of two semi-infinite rays leaving the
//! apex `a` at angles `-φ` and `+φ`, oriented from `a + ∞e^{-iφ}` to
//! `a + ∞e^{+iφ}`. Every contour integral in this crate runs over such a
//! pair with `φ = π/3`, where integrands of cubic type `e^{z³/3}` decay
//! like `e^{-u³/3}` in the ray parameter `u`.
//!
//! Rules are composite Gauss–Legendre over panels whose widths grow
//! geometrically away from the apex, so integrands with sharp structure
//! near the apex (poles just off the contour, slow exponential decay) are
//! resolved without wasting nodes in the tail.

use crate::error::{Error, Result};
use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre polynomial and cached per order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: Lazy<Mutex<HashMap<usize, (Vec<f64>, Vec<f64>)>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(v) = CACHE.lock().unwrap().get(&n) {
        return v.clone();
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    CACHE
        .lock()
        .unwrap()
        .insert(n, (nodes.clone(), weights.clone()));
    (nodes, weights)
}

/// A ray-pair contour.
#[derive(Debug, Clone, Copy)]
pub struct Contour {
    pub apex: Complex64,
    pub phi: f64,
}

impl Contour {
    pub fn new(apex: Complex64, phi: f64) -> Self {
        Contour { apex, phi }
    }

    /// Apex on the real axis, angle π/3 (the default everywhere here).
    pub fn standard(apex_re: f64) -> Self {
        Contour {
            apex: Complex64::new(apex_re, 0.0),
            phi: std::f64::consts::FRAC_PI_3,
        }
    }
}

/// Panel layout of a composite rule along one ray.
#[derive(Debug, Clone, Copy)]
pub struct PanelSpec {
    pub panels: usize,
    pub ratio: f64,
    pub nodes_per_panel: usize,
    /// Optional fixed width of the innermost panel; by default it follows
    /// from the geometric progression.
    pub u_first: Option<f64>,
}

impl Default for PanelSpec {
    fn default() -> Self {
        PanelSpec {
            panels: 8,
            ratio: 1.7,
            nodes_per_panel: 24,
            u_first: None,
        }
    }
}

impl PanelSpec {
    pub fn doubled(&self) -> Self {
        PanelSpec {
            panels: self.panels + 2,
            ratio: self.ratio,
            nodes_per_panel: self.nodes_per_panel * 2,
            u_first: self.u_first,
        }
    }

    /// Panel edges on [0, l].
    fn edges(&self, l: f64) -> Vec<f64> {
        let mut e = Vec::with_capacity(self.panels + 1);
        e.push(0.0);
        match self.u_first {
            None => {
                // widths w, w r, w r², …
                let r = self.ratio;
                let total: f64 = (0..self.panels).map(|k| r.powi(k as i32)).sum();
                let w0 = l / total;
                let mut acc = 0.0;
                for k in 0..self.panels {
                    acc += w0 * r.powi(k as i32);
                    e.push(acc);
                }
            }
            Some(u1) => {
                // first edge fixed, remaining edges geometric up to l
                let u1 = u1.min(l / 2.0);
                e.push(u1);
                let steps = self.panels.saturating_sub(1).max(1);
                let q = (l / u1).powf(1.0 / steps as f64);
                let mut cur = u1;
                for _ in 0..steps {
                    cur *= q;
                    e.push(cur.min(l));
                }
            }
        }
        let last = e.len() - 1;
        e[last] = l;
        e
    }
}

/// Discretization of a ray-pair contour: nodes, complex weights (carrying
/// the direction factors `±e^{±iφ}`) and the ray parameters of each node.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub contour: Contour,
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
    /// distance from the apex for each node
    pub us: Vec<f64>,
    pub truncation: f64,
}

/// Build a composite rule approximating `∫_{C_a^φ} f(z) dz`.
pub fn ray_rule_with(contour: Contour, l: f64, spec: PanelSpec) -> Result<QuadratureRule> {
    if l <= 0.0 || !l.is_finite() {
        return Err(Error::Quadrature(format!("bad truncation length {l}")));
    }
    if contour.phi <= 0.0 || contour.phi >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::Quadrature(format!(
            "ray angle must lie in (0, π/2), got {}",
            contour.phi
        )));
    }
    if spec.nodes_per_panel < 4 {
        return Err(Error::Quadrature("need at least 4 nodes per panel".into()));
    }
    let (gx, gw) = gauss_legendre(spec.nodes_per_panel);
    let edges = spec.edges(l);
    let dir_up = Complex64::from_polar(1.0, contour.phi);
    let dir_dn = Complex64::from_polar(1.0, -contour.phi);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut us = Vec::new();
    // lower ray first (orientation from a+∞e^{-iφ} to the apex): weight -e^{-iφ}
    for w in edges.windows(2).rev() {
        let (a, b) = (w[0], w[1]);
        for (x, wgt) in gx.iter().rev().zip(gw.iter().rev()) {
            let u = 0.5 * (a + b) + 0.5 * (b - a) * x;
            nodes.push(contour.apex + u * dir_dn);
            weights.push(-dir_dn * (0.5 * (b - a) * wgt));
            us.push(u);
        }
    }
    // upper ray from the apex outward: weight +e^{+iφ}
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        for (x, wgt) in gx.iter().zip(gw.iter()) {
            let u = 0.5 * (a + b) + 0.5 * (b - a) * x;
            nodes.push(contour.apex + u * dir_up);
            weights.push(dir_up * (0.5 * (b - a) * wgt));
            us.push(u);
        }
    }
    Ok(QuadratureRule {
        contour,
        nodes,
        weights,
        us,
        truncation: l,
    })
}

/// Rule with the default panel layout.
pub fn ray_rule(apex: Complex64, phi: f64, nodes_per_panel: usize, l: f64) -> Result<QuadratureRule> {
    ray_rule_with(
        Contour::new(apex, phi),
        l,
        PanelSpec {
            nodes_per_panel,
            ..PanelSpec::default()
        },
    )
}

/// Pairwise (cascade) summation: deterministic and accurate.
pub fn pairwise_sum(v: &mut Vec<Complex64>) -> Complex64 {
    if v.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let mut n = v.len();
    while n > 1 {
        let half = n / 2;
        for i in 0..half {
            v[i] = v[2 * i] + v[2 * i + 1];
        }
        if n % 2 == 1 {
            v[half] = v[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    v[0]
}

/// Apply a rule to an integrand, with a decay check at the truncation ends.
pub fn integrate1<F: Fn(Complex64) -> Complex64>(f: F, rule: &QuadratureRule) -> Result<Complex64> {
    let mut terms: Vec<Complex64> = Vec::with_capacity(rule.nodes.len());
    let mut max_abs = 0.0f64;
    for (&z, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
        let v = f(z);
        max_abs = max_abs.max(v.norm());
        terms.push(v * w);
    }
    // ends of the two rays: first node (far end of lower ray) and last node
    let end_lo = f(rule.nodes[0]).norm();
    let end_hi = f(*rule.nodes.last().unwrap()).norm();
    if max_abs > 0.0 && (end_lo > 1e-13 * max_abs || end_hi > 1e-13 * max_abs) {
        return Err(Error::Quadrature(format!(
            "integrand does not decay at the truncation ends (|f|_end/|f|_max = {:.2e}); \
             increase the truncation length beyond {}",
            end_lo.max(end_hi) / max_abs,
            rule.truncation
        )));
    }
    Ok(pairwise_sum(&mut terms))
}

/// Tensor-product double integral over two rules.
pub fn integrate2<F: Fn(Complex64, Complex64) -> Complex64>(
    f: F,
    rule_z: &QuadratureRule,
    rule_w: &QuadratureRule,
) -> Result<Complex64> {
    let mut terms = Vec::with_capacity(rule_z.nodes.len() * rule_w.nodes.len());
    for (&z, &wz) in rule_z.nodes.iter().zip(rule_z.weights.iter()) {
        for (&w, &ww) in rule_w.nodes.iter().zip(rule_w.weights.iter()) {
            terms.push(f(z, w) * wz * ww);
        }
    }
    Ok(pairwise_sum(&mut terms))
}

/// Smallest truncation length L with
/// `exp(-c L³/3 + |s| L) < 1e-16 · exp(max_u(-c u³/3 + |s| u))`.
///
/// `c` is the coefficient of the cubic decay along the ray and `s` a
/// linear shift (from factors `e^{-xz}` with `x < 0`).
pub fn auto_truncation(c: f64, s: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::Quadrature(
            "no cubic decay: caller must supply an explicit truncation".into(),
        ));
    }
    let s = s.abs();
    let g = |u: f64| -c * u * u * u / 3.0 + s * u;
    let u_star = (s / c).sqrt();
    let target = g(u_star) - 16.0 * std::f64::consts::LN_10;
    let (mut lo, mut hi) = (u_star, u_star.max(1.0));
    while g(hi) > target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 * hi {
            break;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::airy_ai;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(12);
        // ∫_{-1}^{1} x^k dx
        for k in [0usize, 2, 8, 20] {
            let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(k as i32)).sum();
            let exact = if k > 22 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            if k <= 22 {
                assert!((s - exact).abs() < 1e-13, "k={k}: {s} vs {exact}");
            }
        }
    }

    #[test]
    fn single_ray_exponential() {
        let rule = ray_rule(c64(0.0, 0.0), std::f64::consts::FRAC_PI_3, 24, 40.0).unwrap();
        // sum over the upper-ray nodes only, in the ray parameter
        let n = rule.nodes.len() / 2;
        let mut s = 0.0;
        for i in n..rule.nodes.len() {
            let u = rule.us[i];
            // real GL weight = |complex weight|
            s += rule.weights[i].norm() * (-u).exp();
        }
        assert!((s - 1.0).abs() < 1e-12, "got {s}");
    }

    #[test]
    fn zero_integrand() {
        let rule = ray_rule(c64(0.0, 0.0), std::f64::consts::FRAC_PI_3, 16, 5.0).unwrap();
        let v = integrate1(|_| c64(0.0, 0.0), &rule).unwrap();
        assert_eq!(v, c64(0.0, 0.0));
    }

    #[test]
    fn airy_contour_value_and_self_convergence() {
        // (1/2πi) ∫_{C_0^{π/3}} e^{z³/3 - z} dz = Ai(1)
        let l = auto_truncation(1.0, 1.0).unwrap();
        let f = |z: Complex64| (z * z * z / 3.0 - z).exp();
        let r1 = ray_rule(c64(0.0, 0.0), std::f64::consts::FRAC_PI_3, 24, l).unwrap();
        let r2 = ray_rule(c64(0.0, 0.0), std::f64::consts::FRAC_PI_3, 48, 2.0 * l).unwrap();
        let tau = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let v1 = integrate1(f, &r1).unwrap() / tau;
        let v2 = integrate1(f, &r2).unwrap() / tau;
        assert!((v1 - v2).norm() < 1e-10, "self-convergence {}", (v1 - v2).norm());
        assert!((v1.re - airy_ai(1.0)).abs() < 1e-10);
        assert!(v1.im.abs() < 1e-12);
    }

    #[test]
    fn conjugate_symmetric_integrand_gives_real_result() {
        // for f(conj z) = conj f(z), the 1/(2πi)-normalized contour value is real
        let l = auto_truncation(1.0, 2.0).unwrap();
        let rule = ray_rule(c64(0.5, 0.0), std::f64::consts::FRAC_PI_3, 24, l).unwrap();
        let v = integrate1(|z| (z * z * z / 3.0 - 2.0 * z).exp() / (z + 1.0), &rule).unwrap()
            / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        assert!(v.im.abs() < 1e-12, "imaginary residue {}", v.im);
    }

    #[test]
    fn crossing_a_pole_changes_integral_by_residue() {
        // f(z) = e^{z³/3 - z}/(z - p): apexes on both sides of p
        let p = c64(1.0, 0.0);
        let f = |z: Complex64| (z * z * z / 3.0 - z).exp() / (z - p);
        let l = auto_truncation(1.0, 3.0).unwrap();
        let left = ray_rule(c64(0.25, 0.0), std::f64::consts::FRAC_PI_3, 32, l).unwrap();
        let right = ray_rule(c64(1.75, 0.0), std::f64::consts::FRAC_PI_3, 32, l).unwrap();
        let tau = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let vl = integrate1(f, &left).unwrap() / tau;
        let vr = integrate1(f, &right).unwrap() / tau;
        // ∫_left = ∫_right - 2πi Res ⇒ (vr - vl) = Res/(2πi)·2πi = e^{p³/3 - p}
        let res = (p * p * p / 3.0 - p).exp();
        assert!(((vr - vl) - res).norm() < 1e-9, "{}", ((vr - vl) - res).norm());
    }

    #[test]
    fn linearity() {
        let rule = ray_rule(c64(0.0, 0.0), std::f64::consts::FRAC_PI_3, 24, 6.0).unwrap();
        let f = |z: Complex64| (z * z * z / 3.0 - z).exp();
        let g = |z: Complex64| (z * z * z / 3.0 - 2.0 * z).exp();
        let a = c64(2.0, 1.0);
        let b = c64(-0.5, 3.0);
        let lhs = integrate1(|z| a * f(z) + b * g(z), &rule).unwrap();
        let rhs = a * integrate1(f, &rule).unwrap() + b * integrate1(g, &rule).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn auto_truncation_values() {
        let l = auto_truncation(1.0, 0.0).unwrap();
        let expect = (3.0 * 16.0 * std::f64::consts::LN_10).powf(1.0 / 3.0);
        assert!((l - expect).abs() < 1e-6, "L = {l}");
        assert!(auto_truncation(1.0, 3.0).unwrap() > l);
        assert!(auto_truncation(-1.0, 0.0).is_err());
    }

    #[test]
    fn non_decay_detected() {
        let rule = ray_rule(c64(0.0, 0.0), std::f64::consts::FRAC_PI_3, 8, 3.0).unwrap();
        let err = integrate1(|z| 1.0 / (z + 1.0), &rule);
        assert!(err.is_err());
    }

    #[test]
    fn cubic_decay_along_ray() {
        // Re(z³) along a π/3 ray is -u³ + O(u²): check at the outermost node
        let rule = ray_rule(c64(1.0, 0.0), std::f64::consts::FRAC_PI_3, 8, 30.0).unwrap();
        let z = *rule.nodes.last().unwrap();
        let u = *rule.us.last().unwrap();
        let re = (z * z * z).re;
        assert!(re < -0.9 * u * u * u + 10.0 * u * u);
    }
}
