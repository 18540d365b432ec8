//! Flat key-value scenario files: strict schema, named rejections, and a
//! canonical emitter whose output parses back to the same configuration.

use std::collections::BTreeMap;
use std::fmt;

use tavis_core::{InitialCondition, Method, ModelParams};

/// The observable columns a run may emit, in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Alpha,
    Gamma,
    Entropy,
    S1,
    S2,
    Negativity,
}

impl Column {
    pub const ALL: [Column; 6] = [
        Column::Alpha,
        Column::Gamma,
        Column::Entropy,
        Column::S1,
        Column::S2,
        Column::Negativity,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Column::Alpha => "alpha",
            Column::Gamma => "gamma",
            Column::Entropy => "S",
            Column::S1 => "s1",
            Column::S2 => "s2",
            Column::Negativity => "negativity",
        }
    }

    fn from_token(token: &str) -> Option<Self> {
        Column::ALL.into_iter().find(|c| c.token() == token)
    }
}

/// Output serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn token(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A fully validated scenario: model, initial state, grid, backend, and
/// output selection.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub params: ModelParams,
    pub init: InitialCondition,
    pub t_max: f64,
    pub t_steps: usize,
    pub method: Method,
    pub outputs: Vec<Column>,
    pub format: Format,
}

/// Rejections carry the reason: `Parse` for malformed documents, `Validation`
/// for well-formed values outside their domain (named, with the bound).
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse(String),
    Validation(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse(msg) => write!(f, "config parse error: {msg}"),
            ConfigError::Validation(msg) => write!(f, "config validation error: {msg}"),
        }
    }
}

impl std::error::Error for ConfigError {}

/// The full fixed schema; every key is required, nothing else is accepted.
pub const KEYS: [&str; 14] = [
    "lambda1", "lambda2", "delta1", "delta2", "omega", "theta", "phi", "fock_n", "p", "t_max",
    "t_steps", "method", "outputs", "format",
];

/// Parse one scenario document: `key = value` lines, `#` comments, blank
/// lines. Every schema key must appear exactly once.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut fields: BTreeMap<&str, String> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::Parse(format!("line {lineno}: expected 'key = value', got '{line}'"))
        })?;
        let key = key.trim();
        let value = value.trim();
        let canonical = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| ConfigError::Parse(format!("line {lineno}: unknown key '{key}'")))?;
        if value.is_empty() {
            return Err(ConfigError::Parse(format!(
                "line {lineno}: empty value for key '{key}'"
            )));
        }
        if fields.insert(canonical, value.to_string()).is_some() {
            return Err(ConfigError::Parse(format!(
                "line {lineno}: duplicate key '{key}'"
            )));
        }
    }
    for key in KEYS {
        if !fields.contains_key(key) {
            return Err(ConfigError::Parse(format!("missing key '{key}'")));
        }
    }

    let number = |key: &str| -> Result<f64, ConfigError> {
        fields[key]
            .parse::<f64>()
            .map_err(|_| ConfigError::Parse(format!("key '{key}': not a number: '{}'", fields[key])))
    };
    let lambda1 = number("lambda1")?;
    let lambda2 = number("lambda2")?;
    let delta1 = number("delta1")?;
    let delta2 = number("delta2")?;
    let omega = number("omega")?;
    let theta = number("theta")?;
    let phi = number("phi")?;
    let p = number("p")?;
    let t_max = number("t_max")?;
    let fock_n = fields["fock_n"].parse::<u32>().map_err(|_| {
        ConfigError::Parse(format!(
            "key 'fock_n': not a non-negative integer: '{}'",
            fields["fock_n"]
        ))
    })?;
    let t_steps = fields["t_steps"].parse::<usize>().map_err(|_| {
        ConfigError::Parse(format!(
            "key 't_steps': not a non-negative integer: '{}'",
            fields["t_steps"]
        ))
    })?;
    let method = fields["method"]
        .parse::<Method>()
        .map_err(ConfigError::Parse)?;
    let format = match fields["format"].as_str() {
        "csv" => Format::Csv,
        "json" => Format::Json,
        other => {
            return Err(ConfigError::Parse(format!(
                "key 'format': unknown format '{other}' (expected csv or json)"
            )))
        }
    };
    let mut outputs = Vec::new();
    for token in fields["outputs"].split(',') {
        let token = token.trim();
        let column = Column::from_token(token).ok_or_else(|| {
            ConfigError::Parse(format!(
                "key 'outputs': unknown column '{token}' (expected alpha, gamma, S, s1, s2, negativity)"
            ))
        })?;
        if outputs.contains(&column) {
            return Err(ConfigError::Parse(format!(
                "key 'outputs': duplicate column '{token}'"
            )));
        }
        outputs.push(column);
    }
    // Canonical order regardless of how the document listed them.
    outputs.sort_by_key(|c| Column::ALL.iter().position(|a| a == c).unwrap());

    let params = ModelParams::new(lambda1, lambda2, delta1, delta2, omega)
        .map_err(|e| ConfigError::Validation(e.to_string()))?;
    let init = InitialCondition::new(theta, phi, fock_n, p)
        .map_err(|e| ConfigError::Validation(e.to_string()))?;
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(ConfigError::Validation(format!(
            "invalid t_max = {t_max}: must satisfy t_max > 0"
        )));
    }
    if t_steps < 2 {
        return Err(ConfigError::Validation(format!(
            "invalid t_steps = {t_steps}: must satisfy t_steps >= 2"
        )));
    }
    if outputs.is_empty() {
        return Err(ConfigError::Validation(
            "invalid outputs: at least one column is required".to_string(),
        ));
    }

    Ok(ScenarioConfig {
        params,
        init,
        t_max,
        t_steps,
        method,
        outputs,
        format,
    })
}

/// Render a configuration as a canonical document; `parse_config` of the
/// result reproduces the configuration exactly.
pub fn emit_config(config: &ScenarioConfig) -> String {
    let outputs: Vec<&str> = config.outputs.iter().map(|c| c.token()).collect();
    format!(
        "lambda1 = {}\nlambda2 = {}\ndelta1 = {}\ndelta2 = {}\nomega = {}\n\
         theta = {}\nphi = {}\nfock_n = {}\np = {}\n\
         t_max = {}\nt_steps = {}\nmethod = {}\noutputs = {}\nformat = {}\n",
        config.params.lambda1,
        config.params.lambda2,
        config.params.delta1,
        config.params.delta2,
        config.params.omega,
        config.init.theta,
        config.init.phi,
        config.init.fock_n,
        config.init.p,
        config.t_max,
        config.t_steps,
        config.method.name(),
        outputs.join(","),
        config.format.token(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_text() -> String {
        "# scenario\nlambda1 = 1.0\nlambda2 = 0.1\ndelta1 = 0\ndelta2 = 1\nomega = 0\n\
         theta = 3.141592653589793\nphi = 0\nfock_n = 1\np = 0.5\n\
         t_max = 25\nt_steps = 2000\nmethod = spectral\noutputs = alpha,S\nformat = csv\n"
            .to_string()
    }

    #[test]
    fn a_complete_document_parses() {
        let c = parse_config(&sample_text()).unwrap();
        assert_eq!(c.params.lambda2, 0.1);
        assert_eq!(c.init.fock_n, 1);
        assert_eq!(c.t_steps, 2000);
        assert_eq!(c.method, Method::Spectral);
        assert_eq!(c.outputs, vec![Column::Alpha, Column::Entropy]);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn unknown_keys_are_rejected_by_name() {
        let text = sample_text() + "coupling3 = 0.7\n";
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Parse(_)));
        assert!(err.to_string().contains("coupling3"), "{err}");
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let text = sample_text() + "p = 0.4\n";
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Parse(_)));
        assert!(err.to_string().contains("duplicate"), "{err}");
        assert!(err.to_string().contains('p'), "{err}");
    }

    #[test]
    fn missing_keys_are_rejected_by_name() {
        let text = sample_text().replace("omega = 0\n", "");
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("omega"), "{err}");
    }

    #[test]
    fn out_of_range_mixing_weight_names_the_field_and_bound() {
        let text = sample_text().replace("p = 0.5", "p = 1.5");
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Validation(_)));
        let msg = err.to_string();
        assert!(msg.contains('p') && msg.contains("0 <= p <= 1"), "{msg}");
    }

    #[test]
    fn nonsense_numbers_are_parse_errors() {
        let text = sample_text().replace("delta2 = 1", "delta2 = fast");
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Parse(_)));
        assert!(err.to_string().contains("delta2"), "{err}");
    }

    #[test]
    fn output_tokens_are_checked() {
        let text = sample_text().replace("outputs = alpha,S", "outputs = alpha,purity");
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("purity"), "{err}");
    }

    #[test]
    fn comments_and_spacing_are_tolerated() {
        let text = sample_text()
            .replace("p = 0.5", "  p   =  0.5   # maximally mixed")
            .replace("# scenario", "\n\n# scenario\n\n");
        let c = parse_config(&text).unwrap();
        assert_eq!(c.init.p, 0.5);
    }

    #[test]
    fn emit_then_parse_round_trips() {
        let c = parse_config(&sample_text()).unwrap();
        let emitted = emit_config(&c);
        let reparsed = parse_config(&emitted).unwrap();
        assert_eq!(c, reparsed);
    }
}
