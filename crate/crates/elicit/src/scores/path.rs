//! Path-integral reconstruction of pointwise score differences from an
//! identification function and the matrix function h.

use std::sync::Arc;

use crate::error::{ElicitError, Result};
use crate::quadrature;

use super::IdentificationFn;

/// Matrix-valued h on the interior of the action domain.
pub type MatrixFn = Arc<dyn Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync>;

/// The identity matrix function in dimension k.
pub fn identity_matrix_fn(k: usize) -> MatrixFn {
    Arc::new(move |_| {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    })
}

/// An integration path given by its vertices; straight segments in between.
#[derive(Debug, Clone)]
pub struct Polyline {
    pub vertices: Vec<Vec<f64>>,
}

impl Polyline {
    pub fn straight(from: &[f64], to: &[f64]) -> Self {
        Polyline {
            vertices: vec![from.to_vec(), to.to_vec()],
        }
    }
}

/// Approximates S(x, y) - S(z, y) as the line integral of h(g) V(g, y) g'
/// along a path from x to z, with per-segment 16-node Gauss-Legendre panels
/// and additional splits where an indicator coordinate crosses y.
pub fn score_difference_via_path(
    h: &MatrixFn,
    identification: &IdentificationFn,
    x: &[f64],
    z: &[f64],
    y: f64,
    path: Option<Polyline>,
    n_steps: usize,
) -> Result<f64> {
    if n_steps < 2 {
        return Err(ElicitError::DomainError(
            "path integral needs n_steps >= 2".into(),
        ));
    }
    let path = path.unwrap_or_else(|| Polyline::straight(x, z));
    let verts = &path.vertices;
    if verts.len() < 2 || verts.first().unwrap() != x || verts.last().unwrap() != z {
        return Err(ElicitError::DomainError(
            "path must run from x to z".into(),
        ));
    }
    let domain = &identification.target.domain;
    let n_segments = verts.len() - 1;
    for (i, v) in verts.iter().enumerate() {
        if !domain.contains_interior(v) {
            return Err(ElicitError::PathOutsideDomain {
                lambda: i as f64 / n_segments as f64,
            });
        }
    }

    let k = identification.dim();
    let mut integral = 0.0;
    for pair in verts.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let direction: Vec<f64> = a.iter().zip(b).map(|(ai, bi)| bi - ai).collect();
        // split the segment where an indicator coordinate crosses y
        let mut cuts = vec![0.0, 1.0];
        for &coord in &identification.indicator_coords {
            let (va, vb) = (a[coord], b[coord]);
            if (va - y) * (vb - y) < 0.0 {
                cuts.push((y - va) / (vb - va));
            }
        }
        cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
        cuts.dedup();

        for piece in cuts.windows(2) {
            let (lo, hi) = (piece[0], piece[1]);
            let step = (hi - lo) / n_steps as f64;
            for panel in 0..n_steps {
                let pa = lo + panel as f64 * step;
                let pb = pa + step;
                integral += panel_integral(h, identification, a, &direction, y, pa, pb, k, domain)?;
            }
        }
    }
    // the line integral of the gradient runs x -> z, the score difference is
    // the other way around
    Ok(-integral)
}

#[allow(clippy::too_many_arguments)]
fn panel_integral(
    h: &MatrixFn,
    identification: &IdentificationFn,
    origin: &[f64],
    direction: &[f64],
    y: f64,
    t_lo: f64,
    t_hi: f64,
    k: usize,
    domain: &crate::domain::ActionDomain,
) -> Result<f64> {
    let rule = quadrature::gauss_legendre(16);
    let mid = 0.5 * (t_lo + t_hi);
    let half = 0.5 * (t_hi - t_lo);
    let mut acc = 0.0;
    for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
        let t = mid + half * node;
        let point: Vec<f64> = origin
            .iter()
            .zip(direction)
            .map(|(o, d)| o + t * d)
            .collect();
        if !domain.contains_interior(&point) {
            return Err(ElicitError::PathOutsideDomain { lambda: t });
        }
        let hm = h(&point);
        let v = identification.evaluate(&point, y);
        let mut integrand = 0.0;
        for i in 0..k {
            let hv: f64 = (0..k).map(|j| hm[i][j] * v[j]).sum();
            integrand += hv * direction[i];
        }
        acc += w * integrand;
    }
    Ok(acc * half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Functional;
    use crate::scores::{canonical_identification, pinball};
    use approx::assert_abs_diff_eq;

    #[test]
    fn mean_score_difference_closed_form() {
        let v = canonical_identification(&Functional::mean()).unwrap();
        let h = identity_matrix_fn(1);
        for (x, z, y) in [(2.0, -1.0, 0.5), (0.0, 3.0, -2.0), (1.0, 1.5, 10.0)] {
            let got = score_difference_via_path(&h, &v, &[x], &[z], y, None, 4).unwrap();
            let want = x * x / 2.0 - z * z / 2.0 - y * (x - z);
            assert_abs_diff_eq!(got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn degenerate_path_is_zero() {
        let v = canonical_identification(&Functional::mean()).unwrap();
        let h = identity_matrix_fn(1);
        let got = score_difference_via_path(&h, &v, &[1.5], &[1.5], 0.0, None, 4).unwrap();
        assert_abs_diff_eq!(got, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn quantile_difference_with_indicator_split() {
        let alpha = 0.5;
        let v = canonical_identification(&Functional::quantile(alpha).unwrap()).unwrap();
        let h = identity_matrix_fn(1);
        let (x, z, y) = (2.0, 0.0, 1.0);
        let got = score_difference_via_path(&h, &v, &[x], &[z], y, None, 4).unwrap();
        let s = pinball(alpha).unwrap();
        let want = s.evaluate(&[x], y).unwrap() - s.evaluate(&[z], y).unwrap();
        assert_abs_diff_eq!(want, 0.0);
        assert_abs_diff_eq!(got, want, epsilon = 1e-12);
    }

    #[test]
    fn quantile_difference_random_probes() {
        let alpha = 0.3;
        let v = canonical_identification(&Functional::quantile(alpha).unwrap()).unwrap();
        let h = identity_matrix_fn(1);
        let s = pinball(alpha).unwrap();
        for (x, z, y) in [(1.0, -2.0, 0.25), (-0.5, 3.0, 1.0), (0.0, 0.7, 0.7)] {
            let got = score_difference_via_path(&h, &v, &[x], &[z], y, None, 8).unwrap();
            let want = s.evaluate(&[x], y).unwrap() - s.evaluate(&[z], y).unwrap();
            assert_abs_diff_eq!(got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn path_outside_interior_rejected() {
        // (VaR, ES) domain: straight segment crossing x2 > x1 must fail
        let t = Functional::var_es(0.5).unwrap();
        let v = canonical_identification(&t).unwrap();
        let h = identity_matrix_fn(2);
        let err = score_difference_via_path(
            &h,
            &v,
            &[0.0, -2.0],
            &[-2.0, 0.0],
            0.0,
            None,
            4,
        )
        .unwrap_err();
        assert!(matches!(err, ElicitError::PathOutsideDomain { .. }));
    }

    #[test]
    fn polyline_must_connect_endpoints() {
        let v = canonical_identification(&Functional::mean()).unwrap();
        let h = identity_matrix_fn(1);
        let bad = Polyline {
            vertices: vec![vec![0.0], vec![5.0]],
        };
        assert!(
            score_difference_via_path(&h, &v, &[0.0], &[1.0], 0.0, Some(bad), 4).is_err()
        );
    }
}
