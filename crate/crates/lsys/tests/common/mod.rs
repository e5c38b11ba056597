//! Brute-force oracles built only from kappa = |m(i) + h| / |m(i) + conj h|,
//! bisection and golden-section search. They never call a closed-form solver.

use std::sync::Arc;

use lsys::{Complex64, WeylModel};
use rand::rngs::StdRng;
use rand::Rng;

/// Golden-section stopping width, relative to 1 + |x|.
pub const BRACKET_TOL: f64 = 1e-12;
/// Search window of the grid pre-bracketing.
pub const WINDOW: f64 = 1e3;
const GRID: usize = 4001;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn kappa(m_at_i: Complex64, h: Complex64) -> f64 {
    (m_at_i + h).norm() / (m_at_i + h.conj()).norm()
}

/// Minimum of a unimodal f on [lo, hi]: the best point of a uniform grid and
/// its neighbours bracket it, then golden section narrows the bracket.
pub fn golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let step = (hi - lo) / (GRID - 1) as f64;
    let at = |k: usize| lo + step * k as f64;
    let best = (0..GRID).map(|k| (k, f(at(k)))).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
    let (mut a, mut b) = (at(best.saturating_sub(1)), at((best + 1).min(GRID - 1)));
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (b - r * (b - a), a + r * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > BRACKET_TOL * (1.0 + a.abs().max(b.abs())) {
        if f1 < f2 {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Root of g on [lo, hi] given a sign change.
pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g_lo = g(lo);
    assert!(g_lo * g(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (g(mid) > 0.0) == (g_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Minimum of kappa along the ray h(y) = origin + y (dir + i), y > 0:
/// returns (y*, kappa(y*)).
pub fn ray_minimum(m_at_i: Complex64, origin: f64, dir: f64) -> (f64, f64) {
    golden_min(|y| kappa(m_at_i, c(origin + dir * y, y)), 0.0, WINDOW)
}

/// Smallest y on the ray with kappa = target; None above the ray's minimum.
pub fn ray_first_crossing(m_at_i: Complex64, origin: f64, dir: f64, target: f64) -> Option<f64> {
    let (y_star, k_min) = ray_minimum(m_at_i, origin, dir);
    (k_min <= target).then(|| bisect(|y| kappa(m_at_i, c(origin + dir * y, y)) - target, 0.0, y_star))
}

/// Smallest Im h over all h with kappa(h) = target, and its Re h.
pub fn donoghue_min_dissipation(m_at_i: Complex64, target: f64) -> (f64, f64) {
    // Infeasible Re h get a penalty that still decreases toward the feasible set.
    let cost = |x: f64| match ray_first_crossing(m_at_i, x, 0.0, target) {
        Some(y) => y,
        None => 1e6 * (1.0 + ray_minimum(m_at_i, x, 0.0).1),
    };
    golden_min(cost, -WINDOW, WINDOW)
}

/// Smallest kappa over Re h at fixed Im h = d: returns (Re h*, kappa).
pub fn donoghue_min_kappa(m_at_i: Complex64, d: f64) -> (f64, f64) {
    golden_min(|x| kappa(m_at_i, c(x, d)), -WINDOW, WINDOW)
}

pub fn m_half(z: Complex64) -> Complex64 {
    -Complex64::i() * z.sqrt()
}

pub fn m_three_halves(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let root = z.sqrt();
    (root - i * z + i) / (root + i)
}

/// alpha + b1 m_half + b2 m_three_halves: a positive combination of the two
/// example Weyl functions plus a real constant, so m(-0) = alpha + b2.
pub fn random_model(rng: &mut StdRng) -> WeylModel {
    let alpha = rng.gen_range(-1.0..1.0);
    let b1 = rng.gen_range(0.0..2.0);
    let b2 = rng.gen_range(0.1..2.0);
    let func = move |z: Complex64| alpha + b1 * m_half(z) + b2 * m_three_halves(z);
    WeylModel::custom(format!("mix({alpha:.3},{b1:.3},{b2:.3})"), Arc::new(func), Some(alpha + b2))
        .expect("positive combinations keep Im m(i) < 0")
}

pub fn relative(computed: f64, expected: f64) -> f64 {
    (computed - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}
