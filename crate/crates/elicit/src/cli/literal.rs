//! Textual score and functional literals for configs and the command line,
//! e.g. `pinball:alpha=0.1`, `var_es:alpha=0.05,phi=psi_b(0.5)`.

use std::collections::HashMap;

use crate::dist::Functional;
use crate::error::{ElicitError, Result};
use crate::scores::{
    asym_squared, huber, mean_score, mean_variance, mv_homogeneous, phi_loss, pinball, var_es,
    var_es_translation, ConvexSpec, ScalarConvex, ScalarShape, Score,
};

pub fn parse_score(text: &str) -> Result<Score> {
    let s = text.trim();
    let (head, params) = split_literal(s)?;
    match head {
        "pinball" => pinball(require(&params, "alpha", s)?),
        "asym_squared" => asym_squared(require(&params, "tau", s)?),
        "huber" => huber(require(&params, "k", s)?),
        "mean_sq" => Ok(mean_score()),
        "squared" => Ok(phi_loss(ScalarShape::squared())),
        "absolute" => Ok(phi_loss(ScalarShape::absolute())),
        "mv" => mean_variance(ConvexSpec::inv_gap()),
        "mv_hom" => Ok(mv_homogeneous()),
        "var_es" => {
            let alpha = require(&params, "alpha", s)?;
            let phi = match params.get("phi") {
                None => ScalarConvex::psi_b(1.0)?,
                Some(spec) => parse_scalar_convex(spec)?,
            };
            var_es(alpha, None, phi)
        }
        "var_es_c" => var_es_translation(require(&params, "c", s)?, require(&params, "alpha", s)?),
        other => Err(usage(format!("unknown score literal {other:?}"))),
    }
}

pub fn parse_functional(text: &str) -> Result<Functional> {
    let s = text.trim();
    let (head, params) = split_literal(s)?;
    match head {
        "mean" => Ok(Functional::mean()),
        "quantile" => Functional::quantile(require(&params, "alpha", s)?),
        "expectile" => Functional::expectile(require(&params, "tau", s)?),
        "mean_variance" => Ok(Functional::mean_variance()),
        "var_es" => Functional::var_es(require(&params, "alpha", s)?),
        "moments" => Functional::moment_vector(require(&params, "k", s)? as usize),
        "center" => Ok(Functional::center_of_symmetry()),
        other => Err(usage(format!("unknown functional literal {other:?}"))),
    }
}

/// The generator family behind `phi=` parameters; `psi_b(b)` names the
/// convex functions on the negative half-line used by the (VaR, ES) score.
fn parse_scalar_convex(spec: &str) -> Result<ScalarConvex> {
    let spec = spec.trim();
    if let Some(arg) = spec
        .strip_prefix("psi_b(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let b = arg
            .trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("psi_b needs a real parameter, got {arg:?}")))?;
        return ScalarConvex::psi_b(b);
    }
    Err(usage(format!("unknown generator literal {spec:?}")))
}

fn split_literal(s: &str) -> Result<(&str, HashMap<String, String>)> {
    let (head, rest) = match s.split_once(':') {
        None => return Ok((s, HashMap::new())),
        Some((h, r)) => (h.trim(), r.trim()),
    };
    let mut params = HashMap::new();
    for part in split_top_level(rest) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter without '=' in {s:?}: {part:?}")))?;
        params.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok((head, params))
}

/// Splits on commas that are not inside parentheses, so `phi=psi_b(0.5)`
/// stays in one piece.
fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

fn require(params: &HashMap<String, String>, key: &str, literal: &str) -> Result<f64> {
    let raw = params
        .get(key)
        .ok_or_else(|| usage(format!("literal {literal:?} is missing {key}=")))?;
    raw.parse::<f64>()
        .map_err(|_| usage(format!("{key}={raw:?} is not a decimal real")))
}

fn usage(msg: String) -> ElicitError {
    ElicitError::UsageError(msg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scalar_scores() {
        assert_eq!(parse_score("pinball:alpha=0.25").unwrap().dim(), 1);
        assert_eq!(parse_score(" asym_squared : tau = 0.8 ").unwrap().dim(), 1);
        assert_eq!(parse_score("huber:k=1.5").unwrap().dim(), 1);
        assert_eq!(parse_score("mean_sq").unwrap().dim(), 1);
        assert_eq!(parse_score("squared").unwrap().dim(), 1);
        assert_eq!(parse_score("absolute").unwrap().dim(), 1);
    }

    #[test]
    fn parses_two_dimensional_scores() {
        assert_eq!(parse_score("mv").unwrap().dim(), 2);
        assert_eq!(parse_score("mv_hom").unwrap().dim(), 2);
        assert_eq!(
            parse_score("var_es:alpha=0.1,phi=psi_b(0.5)").unwrap().dim(),
            2
        );
        assert_eq!(parse_score("var_es:alpha=0.1").unwrap().dim(), 2);
        assert_eq!(parse_score("var_es_c:alpha=0.5,c=1").unwrap().dim(), 2);
    }

    #[test]
    fn parses_functionals() {
        assert_eq!(parse_functional("mean").unwrap().output_dim(), 1);
        assert_eq!(
            parse_functional("quantile:alpha=0.1").unwrap().output_dim(),
            1
        );
        assert_eq!(
            parse_functional("expectile:tau=0.8").unwrap().output_dim(),
            1
        );
        assert_eq!(parse_functional("mean_variance").unwrap().output_dim(), 2);
        assert_eq!(
            parse_functional("var_es:alpha=0.05").unwrap().output_dim(),
            2
        );
        assert_eq!(parse_functional("moments:k=3").unwrap().output_dim(), 3);
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!(parse_score("pinball").is_err());
        assert!(parse_score("pinball:alpha=two").is_err());
        assert!(parse_score("pinball:alpha").is_err());
        assert!(parse_score("cauchy_loss").is_err());
        assert!(parse_score("var_es:alpha=0.1,phi=exp(1)").is_err());
        assert!(parse_functional("variance").is_err());
        assert!(parse_functional("quantile:alpha=1.5").is_err());
    }
}
