//! Probe-based verification and falsification of score properties:
//! consistency, order-sensitivity (componentwise, on line segments, metrical),
//! self-calibration, orientation of identification functions, equivariance
//! and homogeneity of score differences, and the closed-form conditions on
//! convex generators.
//!
//! Every verifier samples a finite probe set, so `HoldsOnProbes` is the
//! strongest positive verdict it can return; only `Violated` is conclusive,
//! and it always carries a concrete witness.

use rand::distributions::Distribution as RandDistribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist::{mixture_path, Distribution, Functional};
use crate::error::{ElicitError, Result};
use crate::scores::{ConvexSpec, IdentificationFn, ScalarConvex, ScalarShape, Score};

/// Default number of random unit directions added to the axis directions.
pub const DEFAULT_RANDOM_DIRECTIONS: usize = 16;

/// Probe layout shared by the verifiers: a per-coordinate grid over the
/// action domain plus a set of unit directions.
#[derive(Debug, Clone, Serialize)]
pub struct CheckConfig {
    /// Per-coordinate (lo, hi, n) with n >= 3.
    pub grid: Vec<(f64, f64, usize)>,
    /// Unit-norm probe directions; defaults to the 2k axis directions plus
    /// [`DEFAULT_RANDOM_DIRECTIONS`] seeded random unit vectors.
    pub directions: Vec<Vec<f64>>,
    pub tol_eq: f64,
    pub tol_mono: f64,
    pub rng_seed: u64,
}

impl CheckConfig {
    pub fn new(grid: Vec<(f64, f64, usize)>) -> Result<Self> {
        Self::with_seed(grid, 7)
    }

    pub fn with_seed(grid: Vec<(f64, f64, usize)>, rng_seed: u64) -> Result<Self> {
        let k = grid.len();
        if k == 0 {
            return Err(ElicitError::DomainError("empty probe grid".into()));
        }
        let directions = default_directions(k, DEFAULT_RANDOM_DIRECTIONS, rng_seed);
        let cfg = CheckConfig {
            grid,
            directions,
            tol_eq: 1e-9,
            tol_mono: 1e-9,
            rng_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for &(lo, hi, n) in &self.grid {
            if !(lo < hi) || n < 3 {
                return Err(ElicitError::DomainError(format!(
                    "bad grid axis ({lo}, {hi}, {n}): need lo < hi and n >= 3"
                )));
            }
        }
        let k = self.grid.len();
        for d in &self.directions {
            if d.len() != k {
                return Err(ElicitError::DomainError(
                    "direction dimension does not match the grid".into(),
                ));
            }
            let norm = norm_p(d, 2.0);
            if (norm - 1.0).abs() > 1e-12 {
                return Err(ElicitError::DomainError(format!(
                    "direction {d:?} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    /// Grid values along one coordinate.
    pub fn axis(&self, coord: usize) -> Vec<f64> {
        let (lo, hi, n) = self.grid[coord];
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    pub fn step(&self, coord: usize) -> f64 {
        let (lo, hi, n) = self.grid[coord];
        (hi - lo) / (n - 1) as f64
    }

    /// The full cartesian product of the per-coordinate grids.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let axes: Vec<Vec<f64>> = (0..self.dim()).map(|c| self.axis(c)).collect();
        let mut out = vec![vec![]];
        for axis in &axes {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for &v in axis {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(&self.grid)
            .all(|(&xi, &(lo, hi, _))| lo <= xi && xi <= hi)
    }
}

fn default_directions(k: usize, n_random: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut dirs = Vec::with_capacity(2 * k + n_random);
    for i in 0..k {
        for sign in [1.0, -1.0] {
            let mut d = vec![0.0; k];
            d[i] = sign;
            dirs.push(d);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = statrs::distribution::Normal::new(0.0, 1.0).unwrap();
    while dirs.len() < 2 * k + n_random {
        let raw: Vec<f64> = (0..k).map(|_| normal.sample(&mut rng)).collect();
        let norm = norm_p(&raw, 2.0);
        if norm < 1e-6 {
            continue;
        }
        dirs.push(raw.iter().map(|v| v / norm).collect());
    }
    dirs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsOnProbes,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::HoldsOnProbes => "holds_on_probes",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// A concrete probe backing a verdict: the label says what the numbers are.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub label: String,
    pub values: Vec<f64>,
}

impl Witness {
    fn new(label: impl Into<String>, values: Vec<f64>) -> Self {
        Witness {
            label: label.into(),
            values,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: Verdict,
    pub tol_eq: f64,
    pub tol_mono: f64,
    pub seed: u64,
    pub grid: Vec<(f64, f64, usize)>,
    pub n_directions: usize,
    /// Probes skipped because they left the action domain.
    pub skipped_probes: usize,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    fn new(property: &str, cfg: &CheckConfig) -> Self {
        PropertyReport {
            property: property.to_string(),
            verdict: Verdict::HoldsOnProbes,
            tol_eq: cfg.tol_eq,
            tol_mono: cfg.tol_mono,
            seed: cfg.rng_seed,
            grid: cfg.grid.clone(),
            n_directions: cfg.directions.len(),
            skipped_probes: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn violate(&mut self, witness: Witness) {
        self.verdict = Verdict::Violated;
        self.witnesses.push(witness);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

pub fn norm_p(v: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        v.iter().fold(0.0, |m, x| m.max(x.abs()))
    } else {
        v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Expected score, treating domain violations as skippable probes and
/// propagating everything else.
fn expected_or_skip(
    score: &Score,
    x: &[f64],
    dist: &Distribution,
    skipped: &mut usize,
) -> Result<Option<f64>> {
    match score.expected(x, dist) {
        Ok(v) => Ok(Some(v)),
        Err(ElicitError::DomainViolation { .. }) => {
            *skipped += 1;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Grid-scan check that the expected score is globally minimized at T(F),
/// with a secondary scan for spurious strict interior local minima.
pub fn check_consistency(
    score: &Score,
    functional: &Functional,
    test_dists: &[Distribution],
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    cfg.validate()?;
    let mut report = PropertyReport::new("consistency", cfg);
    let k = cfg.dim();

    for dist in test_dists {
        let t = functional.evaluate(dist)?;
        if !cfg.contains(&t) {
            return Err(ElicitError::DomainError(format!(
                "functional value {t:?} outside the probe grid"
            )));
        }
        let base = match expected_or_skip(score, &t, dist, &mut report.skipped_probes)? {
            Some(v) => v,
            None => {
                report.verdict = Verdict::Inconclusive;
                report
                    .notes
                    .push(format!("functional value {t:?} outside the action domain"));
                continue;
            }
        };

        let points = cfg.points();
        let mut values: Vec<Option<f64>> = Vec::with_capacity(points.len());
        for p in &points {
            values.push(expected_or_skip(score, p, dist, &mut report.skipped_probes)?);
        }

        let mut best: Option<(usize, f64)> = None;
        for (i, v) in values.iter().enumerate() {
            if let Some(v) = *v {
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
        }
        let (best_idx, best_val) = match best {
            Some(b) => b,
            None => {
                report.verdict = Verdict::Inconclusive;
                report.notes.push("all grid probes left the domain".into());
                continue;
            }
        };

        // the functional value must be at least as good as every probe
        if base > best_val + cfg.tol_eq {
            let mut w = t.clone();
            w.extend_from_slice(&points[best_idx]);
            w.push(base);
            w.push(best_val);
            report.violate(Witness::new(
                "t, better grid point, expected(t), expected(grid point)",
                w,
            ));
            continue;
        }

        // the grid argmin must be the grid point nearest t (up to ties
        // within tol_eq, which can put the argmin one step off)
        let off_by: Vec<f64> = points[best_idx]
            .iter()
            .zip(&t)
            .enumerate()
            .map(|(c, (&g, &tc))| (g - tc).abs() / cfg.step(c))
            .collect();
        if off_by.iter().any(|&r| r > 1.0 + 1e-9) && best_val + cfg.tol_eq < base {
            let mut w = t.clone();
            w.extend_from_slice(&points[best_idx]);
            report.violate(Witness::new("t, distant grid argmin", w));
            continue;
        }

        // spurious strict interior local minima away from t
        let dims: Vec<usize> = cfg.grid.iter().map(|&(_, _, n)| n).collect();
        'outer: for (i, v) in values.iter().enumerate() {
            let v = match *v {
                Some(v) => v,
                None => continue,
            };
            let idx = unflatten(i, &dims);
            // skip points within one grid step of t
            let near_t = (0..k).all(|c| {
                (points[i][c] - t[c]).abs() <= cfg.step(c) * (1.0 + 1e-9)
            });
            if near_t {
                continue;
            }
            let mut is_strict_min = true;
            for c in 0..k {
                if idx[c] == 0 || idx[c] + 1 == dims[c] {
                    continue 'outer; // boundary points are not interior minima
                }
                for delta in [-1i64, 1] {
                    let mut nidx = idx.clone();
                    nidx[c] = (nidx[c] as i64 + delta) as usize;
                    let ni = flatten(&nidx, &dims);
                    match values[ni] {
                        Some(nv) if nv > v + cfg.tol_mono => {}
                        _ => {
                            is_strict_min = false;
                        }
                    }
                }
            }
            if is_strict_min {
                let mut w = points[i].clone();
                w.push(v);
                report.violate(Witness::new("interior local minimum away from t", w));
            }
        }
    }
    Ok(report)
}

fn unflatten(mut i: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for c in (0..dims.len()).rev() {
        idx[c] = i % dims[c];
        i /= dims[c];
    }
    idx
}

fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    let mut i = 0;
    for c in 0..dims.len() {
        i = i * dims[c] + idx[c];
    }
    i
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderSensitivity {
    Componentwise,
    LineSegments,
    /// Metrical order-sensitivity in the given p-norm; use f64::INFINITY for
    /// the sup norm.
    Metrical {
        p: f64,
    },
}

/// Order-sensitivity in one of its three senses. Componentwise moves single
/// coordinates away from t, line segments walk rays t + s v, and the
/// metrical check combines the sphere-symmetry criterion with radius
/// monotonicity.
pub fn check_order_sensitivity(
    score: &Score,
    functional: &Functional,
    notion: OrderSensitivity,
    test_dists: &[Distribution],
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    cfg.validate()?;
    if let OrderSensitivity::Metrical { p } = notion {
        if !(p >= 1.0) {
            return Err(ElicitError::DomainError(format!(
                "metrical order-sensitivity needs p in [1, inf], got {p}"
            )));
        }
    }
    let name = match notion {
        OrderSensitivity::Componentwise => "order_sensitivity_componentwise".to_string(),
        OrderSensitivity::LineSegments => "order_sensitivity_line_segments".to_string(),
        OrderSensitivity::Metrical { p } => format!("order_sensitivity_metrical_p{p}"),
    };
    let mut report = PropertyReport::new(&name, cfg);
    report.notes.push(
        "metrical criterion assumes a convex, mixture-continuous class with surjective \
         functional; those hypotheses are the caller's responsibility"
            .into(),
    );
    let k = cfg.dim();
    let mut compared = 0usize;

    for dist in test_dists {
        let t = functional.evaluate(dist)?;
        match notion {
            OrderSensitivity::Componentwise => {
                for c in 0..k {
                    for sign in [1.0, -1.0] {
                        let mut chain = Vec::new();
                        for j in 0..cfg.grid[c].2 {
                            let mut x = t.clone();
                            x[c] += sign * j as f64 * cfg.step(c);
                            if !cfg.contains(&x) {
                                break;
                            }
                            chain.push(x);
                        }
                        check_monotone_chain(
                            score,
                            dist,
                            &chain,
                            cfg,
                            &mut report,
                            &mut compared,
                        )?;
                    }
                }
            }
            OrderSensitivity::LineSegments => {
                let smax = cfg
                    .grid
                    .iter()
                    .map(|&(lo, hi, _)| (hi - lo) / 2.0)
                    .fold(f64::INFINITY, f64::min);
                let n_s = 21;
                for v in &cfg.directions {
                    let chain: Vec<Vec<f64>> = (0..n_s)
                        .map(|j| {
                            let s = smax * j as f64 / (n_s - 1) as f64;
                            t.iter().zip(v).map(|(ti, vi)| ti + s * vi).collect()
                        })
                        .filter(|x: &Vec<f64>| cfg.contains(x))
                        .collect();
                    check_monotone_chain(score, dist, &chain, cfg, &mut report, &mut compared)?;
                }
            }
            OrderSensitivity::Metrical { p } => {
                let rmax = cfg
                    .grid
                    .iter()
                    .map(|&(lo, hi, _)| (hi - lo) / 2.0)
                    .fold(f64::INFINITY, f64::min);
                let radii: Vec<f64> = (1..=4).map(|l| rmax * l as f64 / 4.0).collect();
                // unit vectors in the p-norm
                let dirs: Vec<Vec<f64>> = cfg
                    .directions
                    .iter()
                    .map(|v| {
                        let n = norm_p(v, p);
                        v.iter().map(|vi| vi / n).collect()
                    })
                    .collect();
                let mut per_dir: Vec<Vec<Option<f64>>> = vec![Vec::new(); dirs.len()];
                for &r in &radii {
                    let mut on_sphere: Vec<(usize, f64)> = Vec::new();
                    for (di, u) in dirs.iter().enumerate() {
                        let x: Vec<f64> =
                            t.iter().zip(u).map(|(ti, ui)| ti + r * ui).collect();
                        if !cfg.contains(&x) {
                            report.skipped_probes += 1;
                            per_dir[di].push(None);
                            continue;
                        }
                        match expected_or_skip(score, &x, dist, &mut report.skipped_probes)? {
                            Some(v) => {
                                on_sphere.push((di, v));
                                per_dir[di].push(Some(v));
                            }
                            None => per_dir[di].push(None),
                        }
                    }
                    // symmetry criterion: equal expected score on the sphere
                    for w in on_sphere.windows(2) {
                        compared += 1;
                        let ((da, va), (db, vb)) = (w[0], w[1]);
                        if (va - vb).abs() > cfg.tol_eq {
                            let mut wit = t.clone();
                            wit.push(r);
                            wit.extend_from_slice(&dirs[da]);
                            wit.extend_from_slice(&dirs[db]);
                            wit.push(va);
                            wit.push(vb);
                            report.violate(Witness::new(
                                "t, radius, direction a, direction b, expected a, expected b",
                                wit,
                            ));
                        }
                    }
                }
                // secondary test: monotone in the radius along each direction
                for (di, vals) in per_dir.iter().enumerate() {
                    let present: Vec<f64> = vals.iter().flatten().copied().collect();
                    for w in present.windows(2) {
                        compared += 1;
                        if w[1] < w[0] - cfg.tol_mono {
                            let mut wit = t.clone();
                            wit.extend_from_slice(&dirs[di]);
                            wit.push(w[0]);
                            wit.push(w[1]);
                            report.violate(Witness::new(
                                "t, direction, expected at smaller radius, at larger",
                                wit,
                            ));
                        }
                    }
                }
            }
        }
    }
    if compared == 0 {
        report.verdict = Verdict::Inconclusive;
        report.notes.push("every probe left the domain".into());
    }
    Ok(report)
}

fn check_monotone_chain(
    score: &Score,
    dist: &Distribution,
    chain: &[Vec<f64>],
    cfg: &CheckConfig,
    report: &mut PropertyReport,
    compared: &mut usize,
) -> Result<()> {
    let mut prev: Option<(usize, f64)> = None;
    for (j, x) in chain.iter().enumerate() {
        let v = match expected_or_skip(score, x, dist, &mut report.skipped_probes)? {
            Some(v) => v,
            None => continue,
        };
        if let Some((pj, pv)) = prev {
            *compared += 1;
            if v < pv - cfg.tol_mono {
                let mut w = chain[pj].clone();
                w.extend_from_slice(x);
                w.push(pv);
                w.push(v);
                report.violate(Witness::new(
                    "nearer point, farther point, expected nearer, expected farther",
                    w,
                ));
            }
        }
        prev = Some((j, v));
    }
    Ok(())
}

/// Self-calibration: the excess expected score at distance >= eps from T(F)
/// must be bounded away from zero. Reports the probed (eps, delta) curve.
pub fn check_self_calibration(
    score: &Score,
    functional: &Functional,
    test_dists: &[Distribution],
    epsilons: &[f64],
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    cfg.validate()?;
    if epsilons.iter().any(|&e| !(e > 0.0)) {
        return Err(ElicitError::DomainError(
            "self-calibration epsilons must be positive".into(),
        ));
    }
    let mut report = PropertyReport::new("self_calibration", cfg);
    for dist in test_dists {
        let t = functional.evaluate(dist)?;
        let base = score.expected(&t, dist)?;
        let points = cfg.points();
        for &eps in epsilons {
            let mut delta: Option<f64> = None;
            for p in &points {
                let d: Vec<f64> = p.iter().zip(&t).map(|(a, b)| a - b).collect();
                if norm_p(&d, 2.0) < eps {
                    continue;
                }
                if let Some(v) =
                    expected_or_skip(score, p, dist, &mut report.skipped_probes)?
                {
                    let excess = v - base;
                    delta = Some(delta.map_or(excess, |d: f64| d.min(excess)));
                }
            }
            match delta {
                None => {
                    report.verdict = Verdict::Inconclusive;
                    let mut w = t.clone();
                    w.push(eps);
                    report.witnesses.push(Witness::new(
                        "t, eps with empty probe set beyond eps",
                        w,
                    ));
                }
                Some(d) => {
                    let mut w = t.clone();
                    w.push(eps);
                    w.push(d);
                    if d <= cfg.tol_mono {
                        report.violate(Witness::new("t, eps, nonpositive delta", w));
                    } else {
                        report.witnesses.push(Witness::new("t, eps, delta", w));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Orientation of an identification function: v' E_F[V(t + s v, Y)] > 0 for
/// s > 0 along every probed direction.
pub fn check_orientation(
    identification: &IdentificationFn,
    test_dists: &[Distribution],
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    cfg.validate()?;
    let mut report = PropertyReport::new("orientation", cfg);
    let functional = &identification.target;
    let domain = &functional.domain;
    let mut compared = 0usize;

    for dist in test_dists {
        let t = functional.evaluate(dist)?;
        for v in &cfg.directions {
            for j in 1..=5 {
                let s = j as f64 * cfg.step(0);
                let x: Vec<f64> = t.iter().zip(v).map(|(ti, vi)| ti + s * vi).collect();
                if !cfg.contains(&x) || !domain.contains(&x) {
                    report.skipped_probes += 1;
                    continue;
                }
                let bar = identification.expected(&x, dist)?;
                let proj: f64 = v.iter().zip(&bar).map(|(vi, bi)| vi * bi).sum();
                if proj.abs() <= cfg.tol_eq {
                    report.skipped_probes += 1;
                    continue;
                }
                compared += 1;
                if proj < 0.0 {
                    let mut w = t.clone();
                    w.extend_from_slice(v);
                    w.push(s);
                    w.push(proj);
                    report.violate(Witness::new(
                        "t, direction, step, negative projected expectation",
                        w,
                    ));
                }
            }
        }
    }
    if compared == 0 {
        report.verdict = Verdict::Inconclusive;
        report.notes.push("every probe left the domain".into());
    }
    Ok(report)
}

#[derive(Clone)]
pub enum EquivarianceKind {
    /// Score differences are unchanged when observations shift by m_o * z and
    /// actions by m_a * z.
    Translation { m_o: f64, m_a: Vec<f64> },
    /// The score itself is unchanged under the joint shift, pointwise.
    TranslationInvariant { m_o: f64, m_a: Vec<f64> },
    /// S(cx, cy) - S(cz, cy) = c^b (S(x, y) - S(z, y)) for c > 0.
    Homogeneity { b: f64 },
    /// Mixed homogeneity with per-coordinate degrees:
    /// S(L(c)x, cy) - S(L(c)z, cy) = c^b (...), L(c) = diag(c^degrees).
    MixedHomogeneity { b: f64, degrees: Vec<f64> },
}

impl EquivarianceKind {
    fn name(&self) -> String {
        match self {
            EquivarianceKind::Translation { .. } => "equivariance_translation".into(),
            EquivarianceKind::TranslationInvariant { .. } => {
                "equivariance_translation_invariant".into()
            }
            EquivarianceKind::Homogeneity { b } => format!("homogeneity_degree_{b}"),
            EquivarianceKind::MixedHomogeneity { b, .. } => {
                format!("mixed_homogeneity_degree_{b}")
            }
        }
    }
}

/// Pointwise identity of transformed vs scaled score differences over the
/// probe product set; records the worst absolute deviation.
pub fn check_equivariance(
    score: &Score,
    kind: &EquivarianceKind,
    probe_points: &[Vec<f64>],
    probe_obs: &[f64],
    probe_shifts_or_scales: &[f64],
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new(&kind.name(), cfg);
    let mut worst = 0.0f64;
    let mut compared = 0usize;

    let eval = |x: &[f64], y: f64, skipped: &mut usize| -> Result<Option<f64>> {
        match score.evaluate(x, y) {
            Ok(v) => Ok(Some(v)),
            Err(ElicitError::DomainViolation { .. }) => {
                *skipped += 1;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };

    for (i, x) in probe_points.iter().enumerate() {
        for xp in probe_points.iter().skip(i + 1) {
            for &y in probe_obs {
                for &c in probe_shifts_or_scales {
                    let probe = match kind {
                        EquivarianceKind::Translation { m_o, m_a }
                        | EquivarianceKind::TranslationInvariant { m_o, m_a } => {
                            let tx: Vec<f64> =
                                x.iter().zip(m_a).map(|(xi, ai)| xi + ai * c).collect();
                            let txp: Vec<f64> =
                                xp.iter().zip(m_a).map(|(xi, ai)| xi + ai * c).collect();
                            let ty = y + m_o * c;
                            ((tx, txp, ty), 1.0)
                        }
                        EquivarianceKind::Homogeneity { b } => {
                            if !(c > 0.0) {
                                return Err(ElicitError::DomainError(
                                    "homogeneity scales must be positive".into(),
                                ));
                            }
                            let tx = x.iter().map(|xi| c * xi).collect();
                            let txp = xp.iter().map(|xi| c * xi).collect();
                            ((tx, txp, c * y), c.powf(*b))
                        }
                        EquivarianceKind::MixedHomogeneity { b, degrees } => {
                            if !(c > 0.0) {
                                return Err(ElicitError::DomainError(
                                    "homogeneity scales must be positive".into(),
                                ));
                            }
                            let tx = x
                                .iter()
                                .zip(degrees)
                                .map(|(xi, d)| c.powf(*d) * xi)
                                .collect();
                            let txp = xp
                                .iter()
                                .zip(degrees)
                                .map(|(xi, d)| c.powf(*d) * xi)
                                .collect();
                            ((tx, txp, c * y), c.powf(*b))
                        }
                    };
                    let ((tx, txp, ty), factor) = probe;

                    let vals = (
                        eval(x, y, &mut report.skipped_probes)?,
                        eval(xp, y, &mut report.skipped_probes)?,
                        eval(&tx, ty, &mut report.skipped_probes)?,
                        eval(&txp, ty, &mut report.skipped_probes)?,
                    );
                    let (sx, sxp, stx, stxp) = match vals {
                        (Some(a), Some(b), Some(cc), Some(d)) => (a, b, cc, d),
                        _ => continue,
                    };
                    compared += 1;
                    let dev = if matches!(kind, EquivarianceKind::TranslationInvariant { .. })
                    {
                        (stx - sx).abs().max((stxp - sxp).abs())
                    } else {
                        ((stx - stxp) - factor * (sx - sxp)).abs()
                    };
                    worst = worst.max(dev);
                    if dev > cfg.tol_eq {
                        let mut w = x.clone();
                        w.extend_from_slice(xp);
                        w.push(y);
                        w.push(c);
                        w.push(dev);
                        report.violate(Witness::new("x, x', y, transform, deviation", w));
                    }
                }
            }
        }
    }
    report
        .witnesses
        .push(Witness::new("worst absolute deviation", vec![worst]));
    if compared == 0 {
        report.verdict = Verdict::Inconclusive;
        report.notes.push("every probe left the domain".into());
    }
    Ok(report)
}

/// The closed-form conditions on convex generators that the score catalog
/// relies on.
pub enum ConvexCondition {
    /// phi_12(m) + 2 m_1 phi_22(m) = 0 on the probe grid.
    MvEq(ConvexSpec),
    /// phi_11(m) >= (m_2 + 3 m_1^2) phi_22(m) on the probe grid.
    MvIneq(ConvexSpec),
    /// phi'(x) + (x - z) phi''(x) >= 0 over probe (x, z) pairs.
    EsSufficient(ScalarConvex),
    /// grad phi(L(c) x) L(c) - c^b grad phi(x) is constant in x per scale c.
    MixedHom {
        phi: ConvexSpec,
        b: f64,
        degrees: Vec<f64>,
        scales: Vec<f64>,
    },
    /// Strictness mass P(Y - center in M_{x,z}) for an even loss shape, with
    /// M_{x,z} the set where the symmetrized losses differ.
    PhiSymmetric {
        shape: ScalarShape,
        dist: Distribution,
        center: f64,
        pairs: Vec<(f64, f64)>,
    },
}

impl ConvexCondition {
    fn name(&self) -> &'static str {
        match self {
            ConvexCondition::MvEq(_) => "convex_condition_mv_eq",
            ConvexCondition::MvIneq(_) => "convex_condition_mv_ineq",
            ConvexCondition::EsSufficient(_) => "convex_condition_es_sufficient",
            ConvexCondition::MixedHom { .. } => "convex_condition_mixed_hom",
            ConvexCondition::PhiSymmetric { .. } => "convex_condition_phi_symmetric",
        }
    }
}

pub fn check_convex_conditions(
    which: &ConvexCondition,
    probe_grid: &[Vec<f64>],
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new(which.name(), cfg);
    match which {
        ConvexCondition::MvEq(phi) => {
            let mut worst = 0.0f64;
            for m in probe_grid {
                if !phi.domain.contains(m) {
                    report.skipped_probes += 1;
                    continue;
                }
                let h = phi.hessian(m);
                let margin = (h[0][1] + 2.0 * m[0] * h[1][1]).abs();
                worst = worst.max(margin);
                if margin > cfg.tol_eq {
                    let mut w = m.clone();
                    w.push(margin);
                    report.violate(Witness::new("m, |phi_12 + 2 m1 phi_22|", w));
                }
            }
            report
                .witnesses
                .push(Witness::new("worst equality margin", vec![worst]));
        }
        ConvexCondition::MvIneq(phi) => {
            let mut min_margin = f64::INFINITY;
            for m in probe_grid {
                if !phi.domain.contains(m) {
                    report.skipped_probes += 1;
                    continue;
                }
                let h = phi.hessian(m);
                let margin = h[0][0] - (m[1] + 3.0 * m[0] * m[0]) * h[1][1];
                min_margin = min_margin.min(margin);
                if margin < -cfg.tol_eq {
                    let mut w = m.clone();
                    w.push(margin);
                    report.violate(Witness::new(
                        "m, phi_11 - (m2 + 3 m1^2) phi_22",
                        w,
                    ));
                }
            }
            report
                .witnesses
                .push(Witness::new("minimum inequality margin", vec![min_margin]));
        }
        ConvexCondition::EsSufficient(phi) => {
            let mut min_margin = f64::INFINITY;
            let mut at = vec![0.0, 0.0];
            for pair in probe_grid {
                if pair.len() != 2 {
                    return Err(ElicitError::DomainError(
                        "es_sufficient probes are (x, z) pairs".into(),
                    ));
                }
                let (x, z) = (pair[0], pair[1]);
                if !phi.domain.contains_interior(x) || !phi.domain.contains(z) {
                    report.skipped_probes += 1;
                    continue;
                }
                let margin = phi.d1(x) + (x - z) * phi.d2(x);
                if margin < min_margin {
                    min_margin = margin;
                    at = pair.clone();
                }
                if margin < -cfg.tol_eq {
                    let mut w = pair.clone();
                    w.push(margin);
                    report.violate(Witness::new("x, z, phi'(x) + (x - z) phi''(x)", w));
                }
            }
            let mut w = at;
            w.push(min_margin);
            report
                .witnesses
                .push(Witness::new("x, z, minimum margin", w));
        }
        ConvexCondition::MixedHom {
            phi,
            b,
            degrees,
            scales,
        } => {
            for &c in scales {
                if !(c > 0.0) {
                    return Err(ElicitError::DomainError(
                        "mixed homogeneity scales must be positive".into(),
                    ));
                }
                let mut reference: Option<Vec<f64>> = None;
                let mut worst = 0.0f64;
                for x in probe_grid {
                    let lx: Vec<f64> = x
                        .iter()
                        .zip(degrees)
                        .map(|(xi, d)| c.powf(*d) * xi)
                        .collect();
                    if !phi.domain.contains(&lx) || !phi.domain.contains(x) {
                        report.skipped_probes += 1;
                        continue;
                    }
                    let gl = phi.gradient(&lx);
                    let g = phi.gradient(x);
                    let mapped: Vec<f64> = (0..x.len())
                        .map(|m| gl[m] * c.powf(degrees[m]) - c.powf(*b) * g[m])
                        .collect();
                    match &reference {
                        None => reference = Some(mapped),
                        Some(r) => {
                            let spread = r
                                .iter()
                                .zip(&mapped)
                                .map(|(a, bb)| (a - bb).abs())
                                .fold(0.0, f64::max);
                            worst = worst.max(spread);
                            if spread > cfg.tol_eq {
                                let mut w = x.clone();
                                w.push(c);
                                w.push(spread);
                                report.violate(Witness::new(
                                    "x, scale, spread of the displayed map",
                                    w,
                                ));
                            }
                        }
                    }
                }
                report.witnesses.push(Witness::new(
                    "scale, worst spread across x probes",
                    vec![c, worst],
                ));
            }
        }
        ConvexCondition::PhiSymmetric {
            shape,
            dist,
            center,
            pairs,
        } => {
            let support = match dist {
                Distribution::FiniteDiscrete(points) => points.clone(),
                _ => {
                    return Err(ElicitError::Unsupported(
                        "strictness mass needs a finite discrete distribution".into(),
                    ))
                }
            };
            for &(x, z) in pairs {
                if x.abs() <= z.abs() {
                    return Err(ElicitError::DomainError(format!(
                        "strictness probe needs |x| > |z|, got ({x}, {z})"
                    )));
                }
                let psi = |a: f64, y: f64| 0.5 * (shape.eval(a - y) + shape.eval(-a - y));
                let mass: f64 = support
                    .iter()
                    .map(|&(y, w)| {
                        let gap = psi(x, y - center) - psi(z, y - center);
                        if gap > 0.0 {
                            w
                        } else {
                            0.0
                        }
                    })
                    .sum();
                if mass <= 0.0 {
                    report.violate(Witness::new("x, z, zero strictness mass", vec![x, z, mass]));
                } else {
                    report
                        .witnesses
                        .push(Witness::new("x, z, strictness mass", vec![x, z, mass]));
                }
            }
        }
    }
    Ok(report)
}

/// Additive separability via mixed second differences: for l != r, the
/// cross difference of S in coordinates l and r must vanish.
pub fn check_separability(
    score: &Score,
    probes: &[(Vec<f64>, f64)],
    h: f64,
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    let k = score.dim();
    if k < 2 {
        return Err(ElicitError::DomainError(
            "separability needs at least two coordinates".into(),
        ));
    }
    if !(h > 0.0) {
        return Err(ElicitError::DomainError("step h must be positive".into()));
    }
    let mut report = PropertyReport::new("separability", cfg);
    let mut worst = 0.0f64;
    for (x, y) in probes {
        for l in 0..k {
            for r in (l + 1)..k {
                let mut xl = x.clone();
                xl[l] += h;
                let mut xr = x.clone();
                xr[r] += h;
                let mut xlr = x.clone();
                xlr[l] += h;
                xlr[r] += h;
                let vals = [
                    score.evaluate(&xlr, *y),
                    score.evaluate(&xl, *y),
                    score.evaluate(&xr, *y),
                    score.evaluate(x, *y),
                ];
                if vals.iter().any(|v| {
                    matches!(v, Err(ElicitError::DomainViolation { .. }))
                }) {
                    report.skipped_probes += 1;
                    continue;
                }
                let [slr, sl, sr, s0] = vals.map(|v| v.unwrap());
                let mixed = slr - sl - sr + s0;
                worst = worst.max(mixed.abs());
                if mixed.abs() > cfg.tol_eq {
                    let mut w = x.clone();
                    w.push(*y);
                    w.push(l as f64);
                    w.push(r as f64);
                    w.push(mixed);
                    report.violate(Witness::new("x, y, l, r, mixed second difference", w));
                }
            }
        }
    }
    report
        .witnesses
        .push(Witness::new("worst mixed difference", vec![worst]));
    Ok(report)
}

/// Expected score along a sampled mixture path, evaluated against the fixed
/// start distribution, must be nondecreasing in the mixing weight.
pub fn check_path_monotonicity(
    score: &Score,
    functional: &Functional,
    f: &Distribution,
    g: &Distribution,
    n_grid: usize,
    cfg: &CheckConfig,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("decreasing_path_toward_t", cfg);
    let path = mixture_path(functional, f, g, n_grid)?;
    let mut prev: Option<(f64, f64)> = None;
    for (lambda, x) in &path.samples {
        let v = match expected_or_skip(score, x, f, &mut report.skipped_probes)? {
            Some(v) => v,
            None => continue,
        };
        if let Some((pl, pv)) = prev {
            if v < pv - cfg.tol_mono {
                report.violate(Witness::new(
                    "lambda a, expected a, lambda b, expected b",
                    vec![pl, pv, *lambda, v],
                ));
            }
        }
        prev = Some((*lambda, v));
    }
    Ok(report)
}
