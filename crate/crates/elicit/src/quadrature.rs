//! Fixed-node Gauss–Legendre and Gauss–Hermite rules.
//!
//! Nodes are roots of the orthonormal polynomial of the requested degree,
//! located by a sign-change scan plus bisection; weights are the Christoffel
//! numbers `w_i = 1 / sum_{k<n} p_k(x_i)^2`. Rules are cached per node count.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Default node count used by the expectation engine.
pub const DEFAULT_NODES: usize = 64;

#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Recurrence coefficients of the orthonormal family:
/// `x p_k = b_{k+1} p_{k+1} + b_k p_{k-1}` (both families have a_k = 0).
#[derive(Clone, Copy)]
enum Family {
    Legendre,
    Hermite,
}

impl Family {
    fn p0(self) -> f64 {
        match self {
            // 1/sqrt(2) normalizes the constant on [-1, 1]
            Family::Legendre => std::f64::consts::FRAC_1_SQRT_2,
            // pi^{-1/4} normalizes against exp(-x^2)
            Family::Hermite => std::f64::consts::PI.powf(-0.25),
        }
    }

    fn b(self, k: usize) -> f64 {
        let k = k as f64;
        match self {
            Family::Legendre => k / (4.0 * k * k - 1.0).sqrt(),
            Family::Hermite => (k / 2.0).sqrt(),
        }
    }

    fn scan_points(self, n: usize) -> Vec<f64> {
        match self {
            // uniform in theta = acos(x): Legendre roots are near-uniform there
            Family::Legendre => {
                let m = 40 * n;
                (1..m)
                    .map(|i| (std::f64::consts::PI * i as f64 / m as f64).cos())
                    .collect()
            }
            Family::Hermite => {
                let r = (2.0 * n as f64 + 2.0).sqrt() + 1.0;
                let m = 50 * n;
                (0..=m)
                    .map(|i| -r + 2.0 * r * i as f64 / m as f64)
                    .collect()
            }
        }
    }
}

/// Values p_0(x), ..., p_n(x) of the orthonormal family.
fn eval_all(family: Family, n: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(family.p0());
    if n == 0 {
        return p;
    }
    p.push(x * p[0] / family.b(1));
    for k in 1..n {
        let next = (x * p[k] - family.b(k) * p[k - 1]) / family.b(k + 1);
        p.push(next);
    }
    p
}

fn pn(family: Family, n: usize, x: f64) -> f64 {
    *eval_all(family, n, x).last().unwrap()
}

fn build(family: Family, n: usize) -> Rule {
    assert!(n >= 2, "quadrature rule needs at least 2 nodes");
    let scan = family.scan_points(n);
    let mut nodes = Vec::with_capacity(n);
    let mut prev_x = scan[0];
    let mut prev_v = pn(family, n, prev_x);
    for &x in &scan[1..] {
        let v = pn(family, n, x);
        if prev_v == 0.0 {
            nodes.push(prev_x);
        } else if prev_v.signum() != v.signum() {
            // bisect to machine precision
            let (mut lo, mut hi, mut flo) = (prev_x, x, prev_v);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                let fm = pn(family, n, mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo.signum() == fm.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            nodes.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    assert_eq!(nodes.len(), n, "root scan missed quadrature nodes");
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let weights = nodes
        .iter()
        .map(|&x| {
            let p = eval_all(family, n - 1, x);
            1.0 / p.iter().map(|v| v * v).sum::<f64>()
        })
        .collect();
    Rule { nodes, weights }
}

fn cache() -> &'static Mutex<HashMap<(u8, usize), Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, usize), Rule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(family: Family, n: usize) -> Rule {
    let key = (
        match family {
            Family::Legendre => 0,
            Family::Hermite => 1,
        },
        n,
    );
    let mut guard = cache().lock().unwrap();
    guard.entry(key).or_insert_with(|| build(family, n)).clone()
}

/// Gauss–Legendre rule on [-1, 1]; node weights sum to 2.
pub fn gauss_legendre(n: usize) -> Rule {
    cached(Family::Legendre, n)
}

/// Gauss–Hermite rule for the weight exp(-x^2); weights sum to sqrt(pi).
pub fn gauss_hermite(n: usize) -> Rule {
    cached(Family::Hermite, n)
}

/// Integral of `f` over [a, b] by an n-node Gauss–Legendre rule.
pub fn integrate_legendre<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> f64 {
    let rule = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}
