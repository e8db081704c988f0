//! Identification functions V with E_F[V(T(F), Y)] = 0.

use std::fmt;
use std::sync::Arc;

use crate::dist::{Distribution, Functional, FunctionalKind};
use crate::error::{ElicitError, Result};

#[derive(Clone)]
pub struct IdentificationFn {
    pub name: String,
    pub target: Functional,
    eval: Arc<dyn Fn(&[f64], f64) -> Vec<f64> + Send + Sync>,
    /// Forecast coordinates appearing inside 1{y <= x_i}; their values become
    /// integration breakpoints.
    pub indicator_coords: Vec<usize>,
}

impl fmt::Debug for IdentificationFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdentificationFn({})", self.name)
    }
}

impl IdentificationFn {
    pub fn new(
        name: &str,
        target: Functional,
        eval: impl Fn(&[f64], f64) -> Vec<f64> + Send + Sync + 'static,
        indicator_coords: Vec<usize>,
    ) -> Self {
        IdentificationFn {
            name: name.to_string(),
            target,
            eval: Arc::new(eval),
            indicator_coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.target.output_dim()
    }

    pub fn evaluate(&self, x: &[f64], y: f64) -> Vec<f64> {
        (self.eval)(x, y)
    }

    pub fn y_breakpoints(&self, x: &[f64]) -> Vec<f64> {
        self.indicator_coords.iter().map(|&i| x[i]).collect()
    }

    /// bar V(x, F), componentwise.
    pub fn expected(&self, x: &[f64], dist: &Distribution) -> Result<Vec<f64>> {
        let breakpoints = self.y_breakpoints(x);
        (0..self.dim())
            .map(|m| {
                dist.expectation_split(&breakpoints, &|y| (self.eval)(x, y)[m])
            })
            .collect()
    }

    /// Flip the sign, which destroys orientation but not the zero.
    pub fn negated(&self) -> IdentificationFn {
        let eval = self.eval.clone();
        IdentificationFn {
            name: format!("-{}", self.name),
            target: self.target.clone(),
            eval: Arc::new(move |x, y| eval(x, y).iter().map(|v| -v).collect()),
            indicator_coords: self.indicator_coords.clone(),
        }
    }
}

/// The canonical strict identification function for each functional kind.
pub fn canonical_identification(target: &Functional) -> Result<IdentificationFn> {
    let t = target.clone();
    match &target.kind {
        FunctionalKind::Mean => Ok(IdentificationFn::new(
            "x - y",
            t,
            |x, y| vec![x[0] - y],
            vec![],
        )),
        FunctionalKind::Quantile { alpha } => {
            let alpha = *alpha;
            Ok(IdentificationFn::new(
                &format!("1{{y<=x}} - {alpha}"),
                t,
                move |x, y| vec![if y <= x[0] { 1.0 } else { 0.0 } - alpha],
                vec![0],
            ))
        }
        FunctionalKind::Expectile { tau } => {
            let tau = *tau;
            Ok(IdentificationFn::new(
                &format!("2|1{{y<=x}} - {tau}|(x - y)"),
                t,
                move |x, y| {
                    let ind = if y <= x[0] { 1.0 } else { 0.0 };
                    vec![2.0 * (ind - tau).abs() * (x[0] - y)]
                },
                vec![0],
            ))
        }
        FunctionalKind::RatioOfExpectations { p, q } => {
            let p = p.clone();
            let q = q.clone();
            Ok(IdentificationFn::new(
                "q(y) x - p(y)",
                t,
                move |x, y| {
                    let qy = q.eval(y);
                    p.iter()
                        .zip(x)
                        .map(|(pm, &xm)| qy * xm - pm.eval(y))
                        .collect()
                },
                vec![],
            ))
        }
        FunctionalKind::MeanVariance => Ok(IdentificationFn::new(
            "(x1 - y, x2 + x1^2 - y^2)",
            t,
            |x, y| vec![x[0] - y, x[1] + x[0] * x[0] - y * y],
            vec![],
        )),
        FunctionalKind::VarEs { alpha } => {
            let alpha = *alpha;
            Ok(IdentificationFn::new(
                &format!("var_es identification (alpha = {alpha})"),
                t,
                move |x, y| {
                    let ind = if y <= x[0] { 1.0 } else { 0.0 };
                    vec![ind - alpha, x[1] - x[0] + ind * (x[0] - y) / alpha]
                },
                vec![0],
            ))
        }
        FunctionalKind::MomentVector { k } => {
            let k = *k;
            Ok(IdentificationFn::new(
                "(x_m - y^m)",
                t,
                move |x, y| (1..=k).map(|m| x[m - 1] - y.powi(m as i32)).collect(),
                vec![],
            ))
        }
        FunctionalKind::CenterOfSymmetry => Err(ElicitError::Unsupported(
            "no canonical identification function for the center of symmetry".into(),
        )),
    }
}
