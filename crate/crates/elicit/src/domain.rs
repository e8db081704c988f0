//! Action domains: box bounds plus linear constraints, with decidable
//! membership and interior-membership tests.

use std::fmt;
use std::sync::Arc;

/// One coordinate range; infinite endpoints allowed.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn all() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let lo_ok = if self.lo_open { x > self.lo } else { x >= self.lo };
        let hi_ok = if self.hi_open { x < self.hi } else { x <= self.hi };
        lo_ok && hi_ok
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

/// `coeffs . x <= offset`, or strict when `strict` is set.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub coeffs: Vec<f64>,
    pub strict: bool,
    pub offset: f64,
}

impl LinearConstraint {
    fn holds(&self, x: &[f64], interior: bool) -> bool {
        let lhs: f64 = self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
        if self.strict || interior {
            lhs < self.offset
        } else {
            lhs <= self.offset
        }
    }
}

/// Optional non-polyhedral membership predicate (e.g. m1^2 < m2).
#[derive(Clone)]
pub struct NamedPredicate {
    pub name: String,
    pub test: Arc<dyn Fn(&[f64]) -> bool + Send + Sync>,
}

impl fmt::Debug for NamedPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NamedPredicate({})", self.name)
    }
}

#[derive(Debug, Clone)]
pub struct ActionDomain {
    pub boxes: Vec<Interval>,
    pub constraints: Vec<LinearConstraint>,
    pub extra: Option<NamedPredicate>,
}

impl ActionDomain {
    /// Unconstrained R^k.
    pub fn reals(dim: usize) -> Self {
        ActionDomain {
            boxes: vec![Interval::all(); dim],
            constraints: vec![],
            extra: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.boxes.len()
    }

    pub fn with_constraint(mut self, c: LinearConstraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn with_predicate(
        mut self,
        name: &str,
        test: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.extra = Some(NamedPredicate {
            name: name.to_string(),
            test: Arc::new(test),
        });
        self
    }

    /// The half-plane x2 <= x1 for (VaR, ES) forecasts.
    pub fn var_es() -> Self {
        ActionDomain::reals(2).with_constraint(LinearConstraint {
            coeffs: vec![-1.0, 1.0],
            strict: false,
            offset: 0.0,
        })
    }

    /// The stripe A_c: x2 <= x1 < x2 + c.
    pub fn var_es_stripe(c: f64) -> Self {
        ActionDomain::var_es().with_constraint(LinearConstraint {
            coeffs: vec![1.0, -1.0],
            strict: true,
            offset: c,
        })
    }

    /// R x (eps, inf) for (mean, variance) forecasts.
    pub fn mean_variance(eps: f64) -> Self {
        ActionDomain {
            boxes: vec![
                Interval::all(),
                Interval {
                    lo: eps,
                    hi: f64::INFINITY,
                    lo_open: true,
                    hi_open: true,
                },
            ],
            constraints: vec![],
            extra: None,
        }
    }

    /// The moment domain A' = {(m1, m2) : m1^2 < m2}.
    pub fn moment_pair() -> Self {
        ActionDomain::reals(2).with_predicate("m1^2 < m2", |x| x[0] * x[0] < x[1])
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.check(x, false)
    }

    /// Membership with every constraint in its strict form.
    pub fn contains_interior(&self, x: &[f64]) -> bool {
        self.check(x, true)
    }

    fn check(&self, x: &[f64], interior: bool) -> bool {
        if x.len() != self.boxes.len() {
            return false;
        }
        let box_ok = self.boxes.iter().zip(x).all(|(iv, &v)| {
            if interior {
                iv.contains_interior(v)
            } else {
                iv.contains(v)
            }
        });
        box_ok
            && self.constraints.iter().all(|c| c.holds(x, interior))
            && self.extra.as_ref().map_or(true, |p| (p.test)(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_es_half_plane() {
        let d = ActionDomain::var_es();
        assert!(d.contains(&[1.0, 0.5]));
        assert!(d.contains(&[1.0, 1.0]));
        assert!(!d.contains(&[0.5, 1.0]));
        assert!(!d.contains_interior(&[1.0, 1.0]));
    }

    #[test]
    fn stripe_bounds() {
        let d = ActionDomain::var_es_stripe(1.0);
        assert!(d.contains(&[0.0, 0.0]));
        assert!(d.contains(&[0.5, 0.0]));
        assert!(!d.contains(&[1.0, 0.0])); // x1 < x2 + c is strict
        assert!(!d.contains(&[1.5, 0.0]));
    }

    #[test]
    fn moment_pair_predicate() {
        let d = ActionDomain::moment_pair();
        assert!(d.contains(&[0.0, 1.0]));
        assert!(!d.contains(&[1.0, 1.0]));
        assert!(!d.contains(&[2.0, 1.0]));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(!ActionDomain::reals(2).contains(&[0.0]));
    }
}
