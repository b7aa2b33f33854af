//! Compute caps shared by the enumeration and DP engines.

/// Environment variable that overrides the default caps. Accepts either a
/// single integer (sets both caps) or `enum=N,horizon=M`.
pub const BUDGET_ENV: &str = "EXOTIC_WALKS_BUDGET";

/// Default cap on enumerated elements (spheres, balls, path enumerations).
pub const DEFAULT_ENUMERATION_CAP: u64 = 20_000_000;

/// Default cap on DP horizons (the engine does O(n²) work up to this n).
pub const DEFAULT_HORIZON_CAP: u64 = 1 << 21;

/// Caps applied before any expensive computation starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of elements an enumeration may produce.
    pub enumeration_cap: u64,
    /// Maximum time horizon for the radial DP and derived series.
    pub horizon_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            horizon_cap: DEFAULT_HORIZON_CAP,
        }
    }
}

impl Budget {
    /// Budget from `EXOTIC_WALKS_BUDGET`, falling back to the defaults when
    /// the variable is unset or unparseable.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => Self::parse(&v).unwrap_or_default(),
            Err(_) => Self::default(),
        }
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Ok(n) = s.parse::<u64>() {
            return Some(Budget {
                enumeration_cap: n,
                horizon_cap: n,
            });
        }
        let mut out = Budget::default();
        for part in s.split(',') {
            let (key, val) = part.split_once('=')?;
            let val: u64 = val.trim().parse().ok()?;
            match key.trim() {
                "enum" => out.enumeration_cap = val,
                "horizon" => out.horizon_cap = val,
                _ => return None,
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_integer_sets_both() {
        let b = Budget::parse("1000").unwrap();
        assert_eq!(b.enumeration_cap, 1000);
        assert_eq!(b.horizon_cap, 1000);
    }

    #[test]
    fn parse_key_value_pairs() {
        let b = Budget::parse("enum=5, horizon=7").unwrap();
        assert_eq!(b.enumeration_cap, 5);
        assert_eq!(b.horizon_cap, 7);
    }

    #[test]
    fn parse_garbage_is_none() {
        assert!(Budget::parse("lots").is_none());
        assert!(Budget::parse("enum=").is_none());
    }
}
