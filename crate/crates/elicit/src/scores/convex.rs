//! Convex generators with explicit derivative evaluators: the phi in
//! Bregman-type scores and the closed-form generator conditions.

use std::fmt;
use std::sync::Arc;

use crate::domain::{ActionDomain, Interval};
use crate::error::{ElicitError, Result};

type VecFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type GradFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
type HessFn = Arc<dyn Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync>;

/// A convex generator phi with gradient and Hessian evaluators.
#[derive(Clone)]
pub struct ConvexSpec {
    pub name: String,
    pub domain: ActionDomain,
    value: VecFn,
    gradient: GradFn,
    hessian: HessFn,
    /// Interior points the constructor-time validation probes.
    pub probes: Vec<Vec<f64>>,
    /// Set when derivatives come from finite differences rather than
    /// closed forms; reports flag this.
    pub fd_fallback: bool,
}

impl fmt::Debug for ConvexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConvexSpec({})", self.name)
    }
}

impl ConvexSpec {
    pub fn new(
        name: &str,
        domain: ActionDomain,
        value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        hessian: impl Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync + 'static,
        probes: Vec<Vec<f64>>,
    ) -> Self {
        ConvexSpec {
            name: name.to_string(),
            domain,
            value: Arc::new(value),
            gradient: Arc::new(gradient),
            hessian: Arc::new(hessian),
            probes,
            fd_fallback: false,
        }
    }

    /// Generator with finite-difference derivatives.
    pub fn from_value_fd(
        name: &str,
        domain: ActionDomain,
        value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        probes: Vec<Vec<f64>>,
    ) -> Self {
        let v = Arc::new(value);
        let dim = domain.dim();
        let h = 1e-5;
        let grad = {
            let v = v.clone();
            move |x: &[f64]| -> Vec<f64> {
                (0..dim)
                    .map(|i| {
                        let mut xp = x.to_vec();
                        let mut xm = x.to_vec();
                        xp[i] += h;
                        xm[i] -= h;
                        (v(&xp) - v(&xm)) / (2.0 * h)
                    })
                    .collect()
            }
        };
        let hess = {
            let v = v.clone();
            move |x: &[f64]| -> Vec<Vec<f64>> {
                let mut m = vec![vec![0.0; dim]; dim];
                for i in 0..dim {
                    for j in 0..dim {
                        let mut xpp = x.to_vec();
                        let mut xpm = x.to_vec();
                        let mut xmp = x.to_vec();
                        let mut xmm = x.to_vec();
                        xpp[i] += h;
                        xpp[j] += h;
                        xpm[i] += h;
                        xpm[j] -= h;
                        xmp[i] -= h;
                        xmp[j] += h;
                        xmm[i] -= h;
                        xmm[j] -= h;
                        m[i][j] = (v(&xpp) - v(&xpm) - v(&xmp) + v(&xmm)) / (4.0 * h * h);
                    }
                }
                m
            }
        };
        let value_fn: VecFn = {
            let v = v.clone();
            Arc::new(move |x: &[f64]| v(x))
        };
        ConvexSpec {
            name: name.to_string(),
            domain,
            value: value_fn,
            gradient: Arc::new(grad),
            hessian: Arc::new(hess),
            probes,
            fd_fallback: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (self.gradient)(x)
    }

    pub fn hessian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        (self.hessian)(x)
    }

    /// Gradient against central differences of the value, Hessian symmetry,
    /// and positive semi-definiteness at the stored probe points.
    pub fn validate(&self) -> Result<()> {
        let h = 1e-5;
        for probe in &self.probes {
            let grad = self.gradient(probe);
            for i in 0..self.dim() {
                let mut xp = probe.clone();
                let mut xm = probe.clone();
                xp[i] += h;
                xm[i] -= h;
                if !self.domain.contains_interior(&xp) || !self.domain.contains_interior(&xm) {
                    continue;
                }
                let fd = (self.value(&xp) - self.value(&xm)) / (2.0 * h);
                let scale = 1.0_f64.max(grad[i].abs());
                if (grad[i] - fd).abs() > 1e-6 * scale.max(fd.abs()) {
                    return Err(ElicitError::ConvexityError {
                        name: self.name.clone(),
                        point: probe.clone(),
                        detail: format!(
                            "gradient component {i} = {} disagrees with finite difference {fd}",
                            grad[i]
                        ),
                    });
                }
            }
            let hess = self.hessian(probe);
            for i in 0..self.dim() {
                for j in (i + 1)..self.dim() {
                    let scale = 1.0_f64.max(hess[i][j].abs());
                    if (hess[i][j] - hess[j][i]).abs() > 1e-6 * scale {
                        return Err(ElicitError::ConvexityError {
                            name: self.name.clone(),
                            point: probe.clone(),
                            detail: "hessian not symmetric".into(),
                        });
                    }
                }
            }
            if !psd_probe(&hess) {
                return Err(ElicitError::ConvexityError {
                    name: self.name.clone(),
                    point: probe.clone(),
                    detail: "hessian not positive semi-definite".into(),
                });
            }
        }
        Ok(())
    }

    /// phi(m1, m2) = (m2 - m1^2)^{-1} on {m1^2 < m2}; satisfies the
    /// mean-variance generator conditions with equality.
    pub fn inv_gap() -> Self {
        let g = |m: &[f64]| m[1] - m[0] * m[0];
        ConvexSpec::new(
            "(m2 - m1^2)^-1",
            ActionDomain::moment_pair(),
            move |m| 1.0 / g(m),
            move |m| {
                let gi = 1.0 / g(m);
                vec![2.0 * m[0] * gi * gi, -gi * gi]
            },
            move |m| {
                let gi = 1.0 / g(m);
                let gi2 = gi * gi;
                let gi3 = gi2 * gi;
                vec![
                    vec![2.0 * gi2 + 8.0 * m[0] * m[0] * gi3, -4.0 * m[0] * gi3],
                    vec![-4.0 * m[0] * gi3, 2.0 * gi3],
                ]
            },
            vec![
                vec![0.0, 1.0],
                vec![0.5, 1.0],
                vec![-1.0, 2.0],
                vec![2.0, 5.0],
            ],
        )
    }

    /// phi(x) = sum x_m^2 / 2 on R^k: the quadratic Bregman generator.
    pub fn quadratic(k: usize) -> Self {
        ConvexSpec::new(
            "sum x^2/2",
            ActionDomain::reals(k),
            |x| 0.5 * x.iter().map(|v| v * v).sum::<f64>(),
            |x| x.to_vec(),
            move |_| {
                (0..k)
                    .map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                    .collect()
            },
            vec![vec![0.5; k], vec![-1.0; k]],
        )
    }

    /// phi(x) = exp(x_1 + ... + x_k): convex but not additively separable
    /// for k >= 2 (rank-one Hessian with nonzero cross terms).
    pub fn exp_sum(k: usize) -> Self {
        ConvexSpec::new(
            "exp(sum x)",
            ActionDomain::reals(k),
            |x| x.iter().sum::<f64>().exp(),
            |x| {
                let e = x.iter().sum::<f64>().exp();
                vec![e; x.len()]
            },
            move |x| {
                let e = x.iter().sum::<f64>().exp();
                vec![vec![e; k]; k]
            },
            vec![vec![0.0; k], vec![0.3; k]],
        )
    }

    /// Additively separable phi(x) = sum psi_{b/m}(x_m) on (0, inf)^k, the
    /// generator of mixed positively homogeneous moment scores of degree b.
    pub fn separable_psi(b: f64, k: usize) -> Self {
        let comps: Vec<ScalarConvex> = (1..=k)
            .map(|m| ScalarConvex::psi_positive(b / m as f64))
            .collect();
        let domain = ActionDomain {
            boxes: vec![
                Interval {
                    lo: 0.0,
                    hi: f64::INFINITY,
                    lo_open: true,
                    hi_open: true,
                };
                k
            ],
            constraints: vec![],
            extra: None,
        };
        let c1 = comps.clone();
        let c2 = comps.clone();
        let c3 = comps;
        ConvexSpec::new(
            &format!("sum psi_{{{b}/m}}(x_m)"),
            domain,
            move |x| x.iter().zip(&c1).map(|(&v, p)| p.value(v)).sum(),
            move |x| x.iter().zip(&c2).map(|(&v, p)| p.d1(v)).collect(),
            move |x| {
                let k = x.len();
                let mut h = vec![vec![0.0; k]; k];
                for (i, (&v, p)) in x.iter().zip(&c3).enumerate() {
                    h[i][i] = p.d2(v);
                }
                h
            },
            vec![vec![0.5; k], vec![1.0; k], vec![2.0; k]],
        )
    }
}

fn psd_probe(h: &[Vec<f64>]) -> bool {
    let k = h.len();
    // quadratic-form probe over axis and diagonal directions
    let mut dirs: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    dirs.push(vec![1.0; k]);
    if k >= 2 {
        let mut d = vec![1.0; k];
        d[0] = -1.0;
        dirs.push(d);
    }
    dirs.iter().all(|d| {
        let q: f64 = (0..k)
            .map(|i| (0..k).map(|j| d[i] * h[i][j] * d[j]).sum::<f64>())
            .sum();
        q >= -1e-9
    })
}

/// A scalar convex function with explicit first and second derivatives,
/// used by the (VaR, ES) score family.
#[derive(Clone)]
pub struct ScalarConvex {
    pub name: String,
    pub domain: Interval,
    value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    d1: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    d2: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ScalarConvex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarConvex({})", self.name)
    }
}

impl ScalarConvex {
    pub fn new(
        name: &str,
        domain: Interval,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarConvex {
            name: name.to_string(),
            domain,
            value: Arc::new(value),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn d1(&self, x: f64) -> f64 {
        (self.d1)(x)
    }

    pub fn d2(&self, x: f64) -> f64 {
        (self.d2)(x)
    }

    /// The phi_b family on (-inf, 0), b in (0, 1]: phi_1(x) = -log|x| and
    /// phi_b(x) = |x|^{1-b} / (b - 1) otherwise. Both have phi' > 0 and
    /// phi'' > 0 on the negative half-line.
    pub fn psi_b(b: f64) -> Result<Self> {
        if !(0.0 < b && b <= 1.0) {
            return Err(ElicitError::DomainError(format!(
                "psi_b exponent {b} outside (0, 1]"
            )));
        }
        let domain = Interval {
            lo: f64::NEG_INFINITY,
            hi: 0.0,
            lo_open: true,
            hi_open: true,
        };
        if b == 1.0 {
            Ok(ScalarConvex::new(
                "psi_b(1) = -log|x|",
                domain,
                |x| -x.abs().ln(),
                |x| -1.0 / x,
                |x| 1.0 / (x * x),
            ))
        } else {
            Ok(ScalarConvex::new(
                &format!("psi_b({b}) = |x|^(1-{b})/({b}-1)"),
                domain,
                move |x| x.abs().powf(1.0 - b) / (b - 1.0),
                move |x| x.abs().powf(-b),
                move |x| b * x.abs().powf(-b - 1.0),
            ))
        }
    }

    /// (alpha/2) x^2 on R; the generator behind the translation-invariant
    /// (VaR, ES) score.
    pub fn scaled_square(alpha: f64) -> Self {
        ScalarConvex::new(
            &format!("({alpha}/2) x^2"),
            Interval::all(),
            move |x| 0.5 * alpha * x * x,
            move |x| alpha * x,
            move |_| alpha,
        )
    }

    /// The Psi_b class on (0, inf) with d0 = d2 = 0, d1 = 1:
    /// y^b / (b(b-1)), y log y, or -log y depending on b.
    pub fn psi_positive(b: f64) -> Self {
        let domain = Interval {
            lo: 0.0,
            hi: f64::INFINITY,
            lo_open: true,
            hi_open: true,
        };
        if b == 0.0 {
            ScalarConvex::new("-log y", domain, |y| -y.ln(), |y| -1.0 / y, |y| 1.0 / (y * y))
        } else if b == 1.0 {
            ScalarConvex::new("y log y", domain, |y| y * y.ln(), |y| y.ln() + 1.0, |y| 1.0 / y)
        } else {
            ScalarConvex::new(
                &format!("y^{b}/({b}({b}-1))"),
                domain,
                move |y| y.powf(b) / (b * (b - 1.0)),
                move |y| y.powf(b - 1.0) / (b - 1.0),
                move |y| y.powf(b - 2.0),
            )
        }
    }
}

/// A differentiable scalar function with its derivative; the g in the
/// (VaR, ES) score family.
#[derive(Clone)]
pub struct ScalarFn {
    pub name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    df: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFn({})", self.name)
    }
}

impl ScalarFn {
    pub fn new(
        name: &str,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarFn {
            name: name.to_string(),
            f: Arc::new(f),
            df: Arc::new(df),
        }
    }

    /// Constant zero; "differentiable and increasing" admits it.
    pub fn zero() -> Self {
        ScalarFn::new("0", |_| 0.0, |_| 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.df)(x)
    }
}
