//! Run configuration shared by the verification suites, plus parsers for
//! the small spec strings (space names, grid specs) used on the command
//! line. Parse errors here are usage errors (exit code 2).

use coarse_toolkit::spaces::{EmbeddingMap, ModelSpace};
use std::collections::BTreeMap;

/// Default RNG seed; every randomized sweep derives from it so repeated
/// runs with the same flags are byte-identical.
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_TRIALS: u32 = 40;
pub const DEFAULT_N_MAX: usize = 3;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    /// Randomized instances per check.
    pub trials: u32,
    /// Largest parallelepiped degree exercised by the chain sweeps.
    pub n_max: usize,
    /// Suites selected for this run, in execution order.
    pub suites: Vec<SuiteKind>,
}

impl RunConfig {
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("seed".to_string(), self.seed.to_string());
        m.insert("trials".to_string(), self.trials.to_string());
        m.insert("n_max".to_string(), self.n_max.to_string());
        let names: Vec<&str> = self.suites.iter().map(|s| s.name()).collect();
        m.insert("suites".to_string(), names.join(","));
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKind {
    Chains,
    Weyl,
    Spaces,
    Filling,
    Asym,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 5] = [
        SuiteKind::Chains,
        SuiteKind::Weyl,
        SuiteKind::Spaces,
        SuiteKind::Filling,
        SuiteKind::Asym,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::Chains => "chains",
            SuiteKind::Weyl => "weyl",
            SuiteKind::Spaces => "spaces",
            SuiteKind::Filling => "filling",
            SuiteKind::Asym => "asym",
        }
    }
}

/// Usage-level error: bad spec string on the command line.
#[derive(Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// Parses a space name: `z<n>` (lattice), `t<d>` (regular tree, d ≥ 3),
/// `half:<spacing>` (half-plane net), `prod:<name>,<name>,…` (product).
pub fn parse_space(s: &str) -> Result<ModelSpace, UsageError> {
    let bad = || UsageError(format!("unknown space '{s}' (try z2, t3, half:1, prod:z2,t3)"));
    if let Some(rest) = s.strip_prefix("prod:") {
        let factors: Result<Vec<ModelSpace>, UsageError> =
            rest.split(',').map(parse_space).collect();
        let factors = factors?;
        if factors.len() < 2 {
            return Err(UsageError("product needs at least two factors".to_string()));
        }
        return Ok(ModelSpace::Product(factors));
    }
    if let Some(rest) = s.strip_prefix("half:") {
        let spacing: u32 = rest.parse().map_err(|_| bad())?;
        if spacing == 0 {
            return Err(UsageError("half-plane spacing must be positive".to_string()));
        }
        return Ok(ModelSpace::HalfPlaneNet { spacing });
    }
    if let Some(rest) = s.strip_prefix('z') {
        let n: usize = rest.parse().map_err(|_| bad())?;
        if n == 0 || n > 4 {
            return Err(UsageError("lattice rank must be 1..=4".to_string()));
        }
        return Ok(ModelSpace::Lattice { n });
    }
    if let Some(rest) = s.strip_prefix('t') {
        let degree: u8 = rest.parse().map_err(|_| bad())?;
        if degree < 3 {
            return Err(UsageError("tree degree must be at least 3".to_string()));
        }
        return Ok(ModelSpace::RegularTree { degree });
    }
    Err(bad())
}

/// Parses an embedding name: `horo<n>` for the ℤⁿ horosphere embedding or
/// `identity:<space>`.
pub fn parse_map(s: &str) -> Result<EmbeddingMap, UsageError> {
    if let Some(rest) = s.strip_prefix("horo") {
        let n: usize = rest
            .parse()
            .map_err(|_| UsageError(format!("unknown map '{s}' (try horo1)")))?;
        if n == 0 || n > 3 {
            return Err(UsageError("horosphere dimension must be 1..=3".to_string()));
        }
        return Ok(coarse_toolkit::spaces::horosphere_embed(n));
    }
    if let Some(rest) = s.strip_prefix("identity:") {
        return Ok(EmbeddingMap::Identity {
            space: parse_space(rest)?,
        });
    }
    Err(UsageError(format!("unknown map '{s}' (try horo1)")))
}

/// Parses a grid spec `log:<lo>:<hi>:<points>`, e.g. `log:1e2:1e6:9`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, UsageError> {
    let parts: Vec<&str> = s.split(':').collect();
    let usage = || UsageError(format!("bad grid '{s}' (expected log:<lo>:<hi>:<points>)"));
    if parts.len() != 4 || parts[0] != "log" {
        return Err(usage());
    }
    let lo: f64 = parts[1].parse().map_err(|_| usage())?;
    let hi: f64 = parts[2].parse().map_err(|_| usage())?;
    let points: usize = parts[3].parse().map_err(|_| usage())?;
    coarse_toolkit::asymptotics::log_grid(lo, hi, points)
        .map_err(|e| UsageError(format!("bad grid '{s}': {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_names_parse() {
        assert_eq!(parse_space("z2").unwrap(), ModelSpace::Lattice { n: 2 });
        assert_eq!(
            parse_space("t3").unwrap(),
            ModelSpace::RegularTree { degree: 3 }
        );
        assert_eq!(
            parse_space("half:1").unwrap(),
            ModelSpace::HalfPlaneNet { spacing: 1 }
        );
        assert_eq!(
            parse_space("prod:z1,t3").unwrap(),
            ModelSpace::Product(vec![
                ModelSpace::Lattice { n: 1 },
                ModelSpace::RegularTree { degree: 3 }
            ])
        );
        assert!(parse_space("q5").is_err());
        assert!(parse_space("t2").is_err());
        assert!(parse_space("prod:z1").is_err());
    }

    #[test]
    fn grid_spec_parses() {
        let g = parse_grid("log:1e2:1e6:9").unwrap();
        assert_eq!(g.len(), 9);
        assert!((g[0] - 1e2).abs() < 1e-9);
        assert!((g[8] - 1e6).abs() < 1e-9);
        assert!(parse_grid("lin:1:10:5").is_err());
        assert!(parse_grid("log:1:10").is_err());
        assert!(parse_grid("log:10:1:5").is_err());
    }

    #[test]
    fn config_echo_is_ordered() {
        let cfg = RunConfig {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            n_max: DEFAULT_N_MAX,
            suites: SuiteKind::ALL.to_vec(),
        };
        let echo = cfg.echo();
        let keys: Vec<&String> = echo.keys().collect();
        assert_eq!(keys, ["n_max", "seed", "suites", "trials"]);
        assert_eq!(echo["suites"], "chains,weyl,spaces,filling,asym");
    }
}
