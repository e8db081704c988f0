//! The scoring-function catalog: pinball and asymmetric squared losses,
//! Bregman families for (ratios of) expectations, prediction-error losses
//! for centers of symmetry, mean-variance scores, and the (VaR, ES) family.

mod convex;
mod identification;
mod path;

pub use convex::{ConvexSpec, ScalarConvex, ScalarFn};
pub use identification::{canonical_identification, IdentificationFn};
pub use path::{identity_matrix_fn, score_difference_via_path, MatrixFn, Polyline};

use std::fmt;
use std::sync::Arc;

use crate::dist::{Distribution, Functional, FunctionalKind, ObsFn};
use crate::domain::{ActionDomain, Interval};
use crate::error::{ElicitError, Result};

/// A prediction-error shape Phi for scores of the form S(x, y) = Phi(x - y).
/// `kinks` lists offsets t where Phi' jumps; they become integration
/// breakpoints.
#[derive(Clone)]
pub struct ScalarShape {
    pub name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub kinks: Vec<f64>,
}

impl fmt::Debug for ScalarShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarShape({})", self.name)
    }
}

impl ScalarShape {
    pub fn new(
        name: &str,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        kinks: Vec<f64>,
    ) -> Self {
        ScalarShape {
            name: name.to_string(),
            f: Arc::new(f),
            kinks,
        }
    }

    pub fn squared() -> Self {
        ScalarShape::new("t^2", |t| t * t, vec![])
    }

    pub fn absolute() -> Self {
        ScalarShape::new("|t|", |t| t.abs(), vec![0.0])
    }

    /// Quadratic below the tuning constant k, linear with matched value and
    /// slope above it.
    pub fn huber(k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(ElicitError::DomainError(format!(
                "huber constant must be positive, got {k}"
            )));
        }
        Ok(ScalarShape::new(
            &format!("huber({k})"),
            move |t| {
                if t.abs() < k {
                    0.5 * t * t
                } else {
                    k * t.abs() - 0.5 * k * k
                }
            },
            vec![-k, k],
        ))
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

type YOffset = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type PointFunctional = Arc<dyn Fn(f64) -> Result<Vec<f64>> + Send + Sync>;

#[derive(Clone)]
pub enum Family {
    Pinball { alpha: f64 },
    AsymSquared { tau: f64 },
    PhiLoss { shape: ScalarShape },
    BregmanRatioQuadratic { p: ObsFn, q: ObsFn },
    BregmanRatioMulti { p: Vec<ObsFn>, q: ObsFn },
    BregmanGeneral { p: Vec<ObsFn>, q: ObsFn, phi: ConvexSpec },
    MeanVariance { phi: ConvexSpec },
    MvHomogeneous { eps: f64 },
    VarEs { alpha: f64, g: ScalarFn, phi: ScalarConvex },
    VarEsTranslation { alpha: f64, c: f64 },
    Equivalent { base: Box<Score>, lambda: f64, offset: YOffset },
    Normalized { base: Box<Score>, point_value: PointFunctional },
}

/// An evaluable scoring function S(x, y) with its action domain.
#[derive(Clone)]
pub struct Score {
    pub name: String,
    pub domain: ActionDomain,
    pub family: Family,
}

impl fmt::Debug for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Score({})", self.name)
    }
}

impl Score {
    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn evaluate(&self, x: &[f64], y: f64) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(ElicitError::DomainViolation { point: x.to_vec() });
        }
        match &self.family {
            Family::Pinball { alpha } => {
                let ind = if y <= x[0] { 1.0 } else { 0.0 };
                Ok((ind - alpha) * (x[0] - y))
            }
            Family::AsymSquared { tau } => {
                let ind = if y <= x[0] { 1.0 } else { 0.0 };
                Ok((ind - tau).abs() * (x[0] - y) * (x[0] - y))
            }
            Family::PhiLoss { shape } => Ok(shape.eval(x[0] - y)),
            Family::BregmanRatioQuadratic { p, q } => {
                Ok(0.5 * q.eval(y) * x[0] * x[0] - p.eval(y) * x[0])
            }
            Family::BregmanRatioMulti { p, q } => {
                let qy = q.eval(y);
                Ok(p
                    .iter()
                    .zip(x)
                    .map(|(pm, &xm)| 0.5 * qy * xm * xm - pm.eval(y) * xm)
                    .sum())
            }
            Family::BregmanGeneral { p, q, phi } => {
                if !phi.domain.contains(x) {
                    return Err(ElicitError::DomainViolation { point: x.to_vec() });
                }
                let qy = q.eval(y);
                let grad = phi.gradient(x);
                let inner: f64 = grad
                    .iter()
                    .zip(p.iter().zip(x))
                    .map(|(g, (pm, &xm))| g * (qy * xm - pm.eval(y)))
                    .sum();
                Ok(-phi.value(x) * qy + inner)
            }
            Family::MeanVariance { phi } => {
                let m = [x[0], x[1] + x[0] * x[0]];
                if !phi.domain.contains(&m) {
                    return Err(ElicitError::DomainViolation { point: x.to_vec() });
                }
                let grad = phi.gradient(&m);
                Ok(-phi.value(&m) + grad[0] * (m[0] - y) + grad[1] * (m[1] - y * y))
            }
            Family::MvHomogeneous { eps } => {
                if x[1] < *eps {
                    return Err(ElicitError::DomainViolation { point: x.to_vec() });
                }
                let x2i = 1.0 / (x[1] * x[1]);
                Ok(x2i * (x[0] * x[0] - 2.0 * x[1] - 2.0 * x[0] * y + y * y))
            }
            Family::VarEs { alpha, g, phi } => {
                if !phi.domain.contains_interior(x[1]) {
                    return Err(ElicitError::DomainViolation { point: x.to_vec() });
                }
                let ind = if y <= x[0] { 1.0 } else { 0.0 };
                Ok((ind - alpha) * g.eval(x[0]) - ind * g.eval(y)
                    + phi.d1(x[1])
                        * (x[1] + (ind - alpha) * x[0] / alpha - ind * y / alpha)
                    - phi.value(x[1]))
            }
            Family::VarEsTranslation { alpha, c } => {
                let ind = if y <= x[0] { 1.0 } else { 0.0 };
                Ok((ind - alpha) * c * (x[0] - y)
                    + alpha * (0.5 * x[1] * x[1] + 0.5 * x[0] * x[0] - x[0] * x[1])
                    + ind * (-x[1] * (y - x[0]) + 0.5 * y * y - 0.5 * x[0] * x[0]))
            }
            Family::Equivalent {
                base,
                lambda,
                offset,
            } => Ok(lambda * base.evaluate(x, y)? + offset(y)),
            Family::Normalized { base, point_value } => {
                let t = point_value(y)?;
                Ok(base.evaluate(x, y)? - base.evaluate(&t, y)?)
            }
        }
    }

    /// Observation values where S(x, .) has an indicator or kink, used to
    /// split quadrature intervals.
    pub fn y_breakpoints(&self, x: &[f64]) -> Vec<f64> {
        match &self.family {
            Family::Pinball { .. } | Family::AsymSquared { .. } => vec![x[0]],
            Family::PhiLoss { shape } => shape.kinks.iter().map(|t| x[0] - t).collect(),
            Family::VarEs { .. } | Family::VarEsTranslation { .. } => vec![x[0]],
            Family::Equivalent { base, .. } | Family::Normalized { base, .. } => {
                base.y_breakpoints(x)
            }
            _ => vec![],
        }
    }

    /// The expected score under F.
    pub fn expected(&self, x: &[f64], dist: &Distribution) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(ElicitError::DomainViolation { point: x.to_vec() });
        }
        let breakpoints = self.y_breakpoints(x);
        let failure: std::cell::RefCell<Option<ElicitError>> = std::cell::RefCell::new(None);
        let value = dist.expectation_split(&breakpoints, &|y| match self.evaluate(x, y) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        });
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        value
    }

    /// lambda * S + a(y), lambda > 0: same consistency and rankings.
    pub fn equivalent(
        &self,
        lambda: f64,
        offset: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Score> {
        if !(lambda > 0.0) {
            return Err(ElicitError::DomainError(format!(
                "equivalence factor must be positive, got {lambda}"
            )));
        }
        Ok(Score {
            name: format!("{}*{}+a(y)", lambda, self.name),
            domain: self.domain.clone(),
            family: Family::Equivalent {
                base: Box::new(self.clone()),
                lambda,
                offset: Arc::new(offset),
            },
        })
    }
}

fn check_level(level: f64, name: &str) -> Result<()> {
    if !(0.0 < level && level < 1.0) {
        return Err(ElicitError::DomainError(format!(
            "{name} = {level} outside (0, 1)"
        )));
    }
    Ok(())
}

/// The alpha-pinball loss (1{y <= x} - alpha)(x - y) for the alpha-quantile.
pub fn pinball(alpha: f64) -> Result<Score> {
    check_level(alpha, "alpha")?;
    Ok(Score {
        name: format!("pinball({alpha})"),
        domain: ActionDomain::reals(1),
        family: Family::Pinball { alpha },
    })
}

/// The asymmetric squared loss |1{y <= x} - tau|(x - y)^2 for the
/// tau-expectile.
pub fn asym_squared(tau: f64) -> Result<Score> {
    check_level(tau, "tau")?;
    Ok(Score {
        name: format!("asym_squared({tau})"),
        domain: ActionDomain::reals(1),
        family: Family::AsymSquared { tau },
    })
}

/// S(x, y) = Phi(x - y) for a convex even shape Phi.
pub fn phi_loss(shape: ScalarShape) -> Score {
    Score {
        name: format!("phi_loss({})", shape.name),
        domain: ActionDomain::reals(1),
        family: Family::PhiLoss { shape },
    }
}

pub fn huber(k: f64) -> Result<Score> {
    Ok(phi_loss(ScalarShape::huber(k)?))
}

/// The quadratic score q(y) x^2/2 - p(y) x for T(F) = E[p]/E[q].
pub fn bregman_ratio_quadratic(p: ObsFn, q: ObsFn) -> Score {
    Score {
        name: format!("bregman_quad({}/{})", p.name(), q.name()),
        domain: ActionDomain::reals(1),
        family: Family::BregmanRatioQuadratic { p, q },
    }
}

/// The strictly consistent score x^2/2 - x y for the mean.
pub fn mean_score() -> Score {
    let mut s = bregman_ratio_quadratic(ObsFn::identity(), ObsFn::one());
    s.name = "mean_sq".into();
    s
}

/// Componentwise quadratic score for a vector ratio of expectations.
pub fn bregman_ratio_multi(p: Vec<ObsFn>, q: ObsFn) -> Result<Score> {
    if p.len() < 2 {
        return Err(ElicitError::DomainError(
            "multivariate ratio score needs k >= 2 components".into(),
        ));
    }
    let k = p.len();
    Ok(Score {
        name: format!("bregman_multi(k={k})"),
        domain: ActionDomain::reals(k),
        family: Family::BregmanRatioMulti { p, q },
    })
}

/// The general Bregman score -phi(x) q(y) + grad phi(x) . (q(y) x - p(y)).
pub fn bregman_general(p: Vec<ObsFn>, q: ObsFn, phi: ConvexSpec) -> Result<Score> {
    if p.len() != phi.dim() {
        return Err(ElicitError::DomainError(format!(
            "generator dimension {} does not match p dimension {}",
            phi.dim(),
            p.len()
        )));
    }
    phi.validate()?;
    Ok(Score {
        name: format!("bregman({})", phi.name),
        domain: phi.domain.clone(),
        family: Family::BregmanGeneral { p, q, phi },
    })
}

/// The (mean, variance) score built from a generator on the moment domain.
pub fn mean_variance(phi: ConvexSpec) -> Result<Score> {
    if phi.dim() != 2 {
        return Err(ElicitError::DomainError(
            "mean-variance generator must be bivariate".into(),
        ));
    }
    phi.validate()?;
    Ok(Score {
        name: format!("mv({})", phi.name),
        domain: ActionDomain::mean_variance(0.0),
        family: Family::MeanVariance { phi },
    })
}

pub const MV_HOM_EPS: f64 = 1e-8;

/// The closed-form homogeneous (mean, variance) score
/// x2^{-2}(x1^2 - 2 x2 - 2 x1 y + y^2), restricted to x2 >= eps.
pub fn mv_homogeneous() -> Score {
    Score {
        name: "mv_hom".into(),
        domain: ActionDomain {
            boxes: vec![
                Interval::all(),
                Interval {
                    lo: MV_HOM_EPS,
                    hi: f64::INFINITY,
                    lo_open: false,
                    hi_open: true,
                },
            ],
            constraints: vec![],
            extra: None,
        },
        family: Family::MvHomogeneous { eps: MV_HOM_EPS },
    }
}

/// The (VaR, ES) score family with generator phi (phi' > 0, phi'' > 0 on its
/// domain) and increasing differentiable g; g defaults to zero.
pub fn var_es(alpha: f64, g: Option<ScalarFn>, phi: ScalarConvex) -> Result<Score> {
    check_level(alpha, "alpha")?;
    for probe in [-4.0, -1.0, -0.25] {
        if phi.domain.contains_interior(probe) && (phi.d1(probe) <= 0.0 || phi.d2(probe) <= 0.0) {
            return Err(ElicitError::ConvexityError {
                name: phi.name.clone(),
                point: vec![probe],
                detail: "var_es generator needs phi' > 0 and phi'' > 0".into(),
            });
        }
    }
    let g = g.unwrap_or_else(ScalarFn::zero);
    let domain = ActionDomain {
        boxes: vec![Interval::all(), phi.domain],
        constraints: ActionDomain::var_es().constraints,
        extra: None,
    };
    Ok(Score {
        name: format!("var_es({alpha}, g={}, phi={})", g.name, phi.name),
        domain,
        family: Family::VarEs { alpha, g, phi },
    })
}

/// The translation-invariant (VaR, ES) score S_c on the stripe A_c.
pub fn var_es_translation(c: f64, alpha: f64) -> Result<Score> {
    check_level(alpha, "alpha")?;
    if !(c > 0.0) {
        return Err(ElicitError::DomainError(format!(
            "stripe width must be positive, got {c}"
        )));
    }
    Ok(Score {
        name: format!("var_es_c({alpha}, c={c})"),
        domain: ActionDomain::var_es_stripe(c),
        family: Family::VarEsTranslation { alpha, c },
    })
}

/// S_0(x, y) = S(x, y) - S(T(delta_y), y): non-negative, zero at the
/// point-mass functional value, equivalent to S.
pub fn normalize_score(score: &Score, target: &Functional) -> Result<Score> {
    let point_value: PointFunctional = match &target.kind {
        FunctionalKind::Mean
        | FunctionalKind::Quantile { .. }
        | FunctionalKind::Expectile { .. }
        | FunctionalKind::CenterOfSymmetry => Arc::new(|y| Ok(vec![y])),
        FunctionalKind::VarEs { .. } => Arc::new(|y| Ok(vec![y, y])),
        FunctionalKind::MomentVector { k } => {
            let k = *k;
            Arc::new(move |y| Ok((1..=k).map(|m| y.powi(m as i32)).collect()))
        }
        FunctionalKind::RatioOfExpectations { p, q } => {
            let p = p.clone();
            let q = q.clone();
            Arc::new(move |y| {
                let qy = q.eval(y);
                if qy <= 0.0 {
                    return Err(ElicitError::DenominatorError { value: qy });
                }
                Ok(p.iter().map(|pm| pm.eval(y) / qy).collect())
            })
        }
        FunctionalKind::MeanVariance => {
            return Err(ElicitError::Unsupported(
                "T(delta_y) = (y, 0) lies on the variance boundary".into(),
            ))
        }
    };
    Ok(Score {
        name: format!("normalized({})", score.name),
        domain: score.domain.clone(),
        family: Family::Normalized {
            base: Box::new(score.clone()),
            point_value,
        },
    })
}
