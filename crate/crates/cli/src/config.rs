//! Line-oriented configuration files: `[section]` headers and `key = value`
//! lines, `#` comments, blank lines ignored. Every parse or validation error
//! carries the line it came from.
//!
//! Sections:
//! - `[geometry]`: `height`, and either `beta_deg` or `width`
//! - `[layer]` (repeatable, topmost first): `top_elevation`, `c`, `phi_deg`, `gamma`
//! - `[search]` (optional): algorithm, slice count, grid and solver overrides
//! - `[sweep]`: the sweep campaign (used by the `sweep` command)
//! - `[bench]` (optional): layer interface elevations for benchmark cases 3-4

use std::fmt;

use slopestab::{
    Algorithm, LayerInterfaces, Material, SearchConfig, SlopeCase, SoilProfile, SweepTable,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

struct Entry {
    key: String,
    value: String,
    line: usize,
    used: std::cell::Cell<bool>,
}

struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn parse_sections(text: &str) -> Result<Vec<Section>, ConfigError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::new(line, "unterminated section header"))?
                .trim()
                .to_string();
            if name.is_empty() {
                return Err(ConfigError::new(line, "empty section name"));
            }
            sections.push(Section { name, line, entries: Vec::new() });
        } else if let Some((key, value)) = content.split_once('=') {
            let section = sections
                .last_mut()
                .ok_or_else(|| ConfigError::new(line, "key before any [section] header"))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::new(line, "expected 'key = value'"));
            }
            section.entries.push(Entry { key, value, line, used: std::cell::Cell::new(false) });
        } else {
            return Err(ConfigError::new(line, "expected 'key = value' or '[section]'"));
        }
    }
    Ok(sections)
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| {
            if e.key == key {
                e.used.set(true);
                true
            } else {
                false
            }
        })
    }

    fn f64(&self, key: &str) -> Result<Option<(f64, usize)>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(e) => {
                let v = e
                    .value
                    .parse::<f64>()
                    .map_err(|_| ConfigError::new(e.line, format!("'{}' is not a number", e.value)))?;
                Ok(Some((v, e.line)))
            }
        }
    }

    fn require_f64(&self, key: &str) -> Result<(f64, usize), ConfigError> {
        self.f64(key)?
            .ok_or_else(|| ConfigError::new(self.line, format!("missing key '{key}' in [{}]", self.name)))
    }

    fn usize(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse::<usize>()
                .map(Some)
                .map_err(|_| ConfigError::new(e.line, format!("'{}' is not a count", e.value))),
        }
    }

    fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| ConfigError::new(e.line, format!("'{}' is not a number", s.trim())))
                })
                .collect::<Result<Vec<f64>, _>>()
                .map(Some),
        }
    }

    fn unused_key_error(&self) -> Result<(), ConfigError> {
        for e in &self.entries {
            if !e.used.get() {
                return Err(ConfigError::new(e.line, format!("unknown key '{}' in [{}]", e.key, self.name)));
            }
        }
        Ok(())
    }
}

fn parse_algorithm(value: &str, line: usize) -> Result<Algorithm, ConfigError> {
    match value {
        "hi" => Ok(Algorithm::Hi),
        "fi" => Ok(Algorithm::Fi),
        "fs" => Ok(Algorithm::Fs),
        other => Err(ConfigError::new(line, format!("unknown algorithm '{other}' (expected hi, fi or fs)"))),
    }
}

fn build_slope(sections: &[Section]) -> Result<SlopeCase, ConfigError> {
    let geometry = sections
        .iter()
        .find(|s| s.name == "geometry")
        .ok_or_else(|| ConfigError::new(1, "missing [geometry] section"))?;
    let (height, height_line) = geometry.require_f64("height")?;
    if height <= 0.0 {
        return Err(ConfigError::new(height_line, "height must be positive"));
    }
    let beta = geometry.f64("beta_deg")?;
    let width = geometry.f64("width")?;

    let mut layers = Vec::new();
    for section in sections.iter().filter(|s| s.name == "layer") {
        let (top, _) = section.require_f64("top_elevation")?;
        let (c, c_line) = section.require_f64("c")?;
        let (phi_deg, phi_line) = section.require_f64("phi_deg")?;
        let (gamma, gamma_line) = section.require_f64("gamma")?;
        if c < 0.0 {
            return Err(ConfigError::new(c_line, "cohesion must be non-negative"));
        }
        if !(0.0..90.0).contains(&phi_deg) {
            return Err(ConfigError::new(phi_line, "friction angle must be in [0, 90)"));
        }
        if gamma <= 0.0 {
            return Err(ConfigError::new(gamma_line, "unit weight must be positive"));
        }
        let material = Material::new(c, phi_deg.to_radians(), gamma)
            .map_err(|e| ConfigError::new(section.line, e.to_string()))?;
        layers.push(((top, material), section.line));
    }
    if layers.is_empty() {
        return Err(ConfigError::new(geometry.line, "at least one [layer] section is required"));
    }
    let first_layer_line = layers[0].1;
    let profile = SoilProfile::new(layers.into_iter().map(|(l, _)| l).collect())
        .map_err(|e| ConfigError::new(first_layer_line, e.to_string()))?;

    match (beta, width) {
        (Some((beta_deg, line)), None) => {
            if !(beta_deg > 0.0 && beta_deg <= 90.0) {
                return Err(ConfigError::new(line, "inclination must be in (0, 90]"));
            }
            SlopeCase::from_height_beta(height, beta_deg.to_radians(), profile)
                .map_err(|e| ConfigError::new(line, e.to_string()))
        }
        (None, Some((w, line))) => {
            if w < 0.0 {
                return Err(ConfigError::new(line, "width must be non-negative"));
            }
            SlopeCase::from_height_width(height, w, profile)
                .map_err(|e| ConfigError::new(line, e.to_string()))
        }
        (Some(_), Some((_, line))) => {
            Err(ConfigError::new(line, "give either beta_deg or width, not both"))
        }
        (None, None) => Err(ConfigError::new(geometry.line, "missing beta_deg or width in [geometry]")),
    }
}

fn build_search(sections: &[Section]) -> Result<(SearchConfig, Algorithm), ConfigError> {
    let mut config = SearchConfig::default();
    let mut algorithm = Algorithm::Hi;
    if let Some(section) = sections.iter().find(|s| s.name == "search") {
        if let Some(e) = section.get("algorithm") {
            algorithm = parse_algorithm(&e.value, e.line)?;
        }
        if let Some(n) = section.usize("n_slices")? {
            config.n_slices = n.max(1);
        }
        if let Some(n) = section.usize("coarse_n_xin")? {
            config.coarse.n_xin = n.max(2);
        }
        if let Some(n) = section.usize("coarse_n_xout")? {
            config.coarse.n_xout = n.max(2);
        }
        if let Some(n) = section.usize("fine_n_xin")? {
            config.fine.n_xin = n.max(2);
        }
        if let Some(n) = section.usize("fine_n_xout")? {
            config.fine.n_xout = n.max(2);
        }
        if let Some((v, _)) = section.f64("delta_spacing_deg")? {
            config.coarse.delta_spacing = v.to_radians();
            config.fine.delta_spacing = v.to_radians();
        }
        if let Some((v, _)) = section.f64("tol_f")? {
            config.solver.tol_f = v;
        }
        if let Some(n) = section.usize("max_iter")? {
            config.solver.max_iter = n.max(1);
        }
        if let Some((v, _)) = section.f64("initial_f")? {
            config.solver.initial_f = v;
        }
        if let Some((v, _)) = section.f64("m_alpha_floor")? {
            config.solver.m_alpha_floor = v;
        }
        if let Some((v, _)) = section.f64("sentinel_f")? {
            config.solver.sentinel_f = v;
        }
        if let Some((v, _)) = section.f64("simplex_f_tol")? {
            config.simplex.f_tol = v;
        }
        if let Some((v, _)) = section.f64("simplex_x_tol")? {
            config.simplex.x_tol = v;
        }
        if let Some(n) = section.usize("simplex_max_evals")? {
            config.simplex.max_evals = n as u64;
        }
        if let Some((v, _)) = section.f64("simplex_initial_step")? {
            config.simplex.initial_step = v;
        }
        section.unused_key_error()?;
    }
    Ok((config, algorithm))
}

/// Full configuration for `analyze` and `compare`.
#[derive(Debug)]
pub struct AnalysisConfig {
    pub slope: SlopeCase,
    pub algorithm: Algorithm,
    pub search: SearchConfig,
}

pub fn analysis_config(text: &str) -> Result<AnalysisConfig, ConfigError> {
    let sections = parse_sections(text)?;
    for s in &sections {
        if !["geometry", "layer", "search"].contains(&s.name.as_str()) {
            return Err(ConfigError::new(s.line, format!("unknown section [{}]", s.name)));
        }
    }
    let slope = build_slope(&sections)?;
    let (search, algorithm) = build_search(&sections)?;
    for s in &sections {
        s.unused_key_error()?;
    }
    Ok(AnalysisConfig { slope, algorithm, search })
}

/// Full configuration for `sweep`.
#[derive(Debug)]
pub struct SweepConfig {
    pub table: SweepTable,
    pub algorithms: Vec<Algorithm>,
    pub search: SearchConfig,
}

pub fn sweep_config(text: &str) -> Result<SweepConfig, ConfigError> {
    let sections = parse_sections(text)?;
    for s in &sections {
        if !["sweep", "search"].contains(&s.name.as_str()) {
            return Err(ConfigError::new(s.line, format!("unknown section [{}]", s.name)));
        }
    }
    let section = sections
        .iter()
        .find(|s| s.name == "sweep")
        .ok_or_else(|| ConfigError::new(1, "missing [sweep] section"))?;
    let (height, h_line) = section.require_f64("height")?;
    if height <= 0.0 {
        return Err(ConfigError::new(h_line, "height must be positive"));
    }
    let (gamma, g_line) = section.require_f64("gamma")?;
    if gamma <= 0.0 {
        return Err(ConfigError::new(g_line, "unit weight must be positive"));
    }
    let betas_deg = section
        .f64_list("beta_deg")?
        .ok_or_else(|| ConfigError::new(section.line, "missing key 'beta_deg' in [sweep]"))?;
    if let Some(&bad) = betas_deg.iter().find(|b| !(**b > 0.0 && **b <= 90.0)) {
        let line = section.get("beta_deg").map(|e| e.line).unwrap_or(section.line);
        return Err(ConfigError::new(line, format!("inclination must be in (0, 90], got {bad}")));
    }
    let cohesions = section
        .f64_list("c")?
        .ok_or_else(|| ConfigError::new(section.line, "missing key 'c' in [sweep]"))?;
    let phis_deg = section
        .f64_list("phi_deg")?
        .ok_or_else(|| ConfigError::new(section.line, "missing key 'phi_deg' in [sweep]"))?;
    let algorithms = match section.get("algorithms") {
        None => vec![Algorithm::Hi, Algorithm::Fi, Algorithm::Fs],
        Some(e) => e
            .value
            .split(',')
            .map(|s| parse_algorithm(s.trim(), e.line))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let (mut search, _) = build_search(&sections)?;
    if let Some(n) = section.usize("n_slices")? {
        search.n_slices = n.max(1);
    }
    section.unused_key_error()?;
    Ok(SweepConfig {
        table: SweepTable { height, unit_weight: gamma, betas_deg, cohesions, phis_deg },
        algorithms,
        search,
    })
}

/// Optional configuration for `bench`: layer interfaces for cases 3-4.
pub fn bench_config(text: &str) -> Result<LayerInterfaces, ConfigError> {
    let sections = parse_sections(text)?;
    let mut interfaces = LayerInterfaces::default();
    for s in &sections {
        if s.name != "bench" {
            return Err(ConfigError::new(s.line, format!("unknown section [{}]", s.name)));
        }
        interfaces.case3_interface = s.f64("case3_interface_elevation")?.map(|(v, _)| v);
        interfaces.case4_interface = s.f64("case4_interface_elevation")?.map(|(v, _)| v);
        s.unused_key_error()?;
    }
    Ok(interfaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use slopestab::GridSpec;

    const CASE1: &str = "\
[geometry]
height = 5.0
width = 10.0

[layer]
top_elevation = 5.0
c = 9.8
phi_deg = 10.0
gamma = 17.64

[search]
algorithm = hi
n_slices = 25
";

    #[test]
    fn parses_a_full_analysis_config() {
        let config = analysis_config(CASE1).unwrap();
        assert_eq!(config.slope.height(), 5.0);
        assert_eq!(config.slope.width(), 10.0);
        assert_eq!(config.algorithm, Algorithm::Hi);
        assert_eq!(config.search.n_slices, 25);
    }

    #[test]
    fn rejects_zero_inclination_with_the_documented_message() {
        let text = "[geometry]\nheight = 5\nbeta_deg = 0\n\n[layer]\ntop_elevation = 5\nc = 1\nphi_deg = 10\ngamma = 18\n";
        let err = analysis_config(text).unwrap_err();
        assert_eq!(err.message, "inclination must be in (0, 90]");
        assert_eq!(err.line, 3);
    }

    #[test]
    fn anchors_parse_errors_to_lines() {
        let err = analysis_config("[geometry]\nheight == 5\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = analysis_config("height = 5\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = analysis_config("[geometry]\nheight = five\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("five"));
    }

    #[test]
    fn rejects_unknown_keys_and_sections() {
        let err = analysis_config(&format!("{CASE1}\n[mystery]\nx = 1\n")).unwrap_err();
        assert!(err.message.contains("unknown section"));
        let err = analysis_config(&CASE1.replace("n_slices", "slices_n")).unwrap_err();
        assert!(err.message.contains("unknown key"));
    }

    #[test]
    fn requires_exactly_one_of_beta_or_width() {
        let both = "[geometry]\nheight = 5\nbeta_deg = 30\nwidth = 10\n\n[layer]\ntop_elevation = 5\nc = 1\nphi_deg = 10\ngamma = 18\n";
        assert!(analysis_config(both).unwrap_err().message.contains("not both"));
        let neither = "[geometry]\nheight = 5\n\n[layer]\ntop_elevation = 5\nc = 1\nphi_deg = 10\ngamma = 18\n";
        assert!(analysis_config(neither).unwrap_err().message.contains("beta_deg or width"));
    }

    #[test]
    fn parses_layers_in_order() {
        let text = "\
[geometry]
height = 5
width = 10

[layer]
top_elevation = 5
c = 14.71
phi_deg = 20
gamma = 18.63

[layer]
top_elevation = 2.5
c = 9.8
phi_deg = 10
gamma = 17.64
";
        let config = analysis_config(text).unwrap();
        let layers = config.slope.profile().layers();
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[0].1.cohesion, 14.71);
        assert_eq!(layers[1].0, 2.5);
    }

    #[test]
    fn parses_sweep_lists() {
        let text = "\
[sweep]
height = 5
gamma = 18
beta_deg = 10, 20, 30
c = 0.5, 5
phi_deg = 20, 25
algorithms = hi, fs
n_slices = 25
";
        let config = sweep_config(text).unwrap();
        assert_eq!(config.table.betas_deg, vec![10.0, 20.0, 30.0]);
        assert_eq!(config.table.len(), 12);
        assert_eq!(config.algorithms, vec![Algorithm::Hi, Algorithm::Fs]);
    }

    #[test]
    fn parses_bench_interfaces() {
        let interfaces = bench_config("[bench]\ncase3_interface_elevation = 2.5\n").unwrap();
        assert_eq!(interfaces.case3_interface, Some(2.5));
        assert_eq!(interfaces.case4_interface, None);
        assert_eq!(bench_config("").unwrap(), LayerInterfaces::default());
    }

    #[test]
    fn search_overrides_apply() {
        let text = format!(
            "{CASE1}coarse_n_xin = 4\ndelta_spacing_deg = 2.5\nsimplex_max_evals = 200\n"
        );
        let config = analysis_config(&text).unwrap();
        assert_eq!(config.search.coarse.n_xin, 4);
        assert!((config.search.fine.delta_spacing - 2.5f64.to_radians()).abs() < 1e-15);
        assert_eq!(config.search.simplex.max_evals, 200);
        assert_eq!(config.search.coarse.n_xout, GridSpec::coarse().n_xout);
        assert_eq!(config.search.fine.n_xin, GridSpec::fine().n_xin);
    }
}
