//! Ring selection: a JSON file or a built-in family, with an optional
//! on-disk cache of generated tables.

use std::path::{Path, PathBuf};

use clap::Args;
use repring::families::FamilyParams;
use repring::io::{parse_json, save_ring_file};
use repring::{RingError, RingSpec};

use crate::CliError;

/// Environment variable naming the table cache directory.
pub const CACHE_ENV: &str = "REPRING_CACHE_DIR";

#[derive(Args, Debug, Clone, Default)]
pub struct RingArgs {
    /// Ring JSON file (alternative to --family).
    pub file: Option<PathBuf>,
    /// Built-in family, see `families list`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Index-two subring (Frobenius and Taft families).
    #[arg(long)]
    pub subgroup: bool,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("family {family} needs --{flag}")))
}

impl RingArgs {
    pub fn params(&self) -> Result<FamilyParams, CliError> {
        if let Some(path) = &self.file {
            if self.family.is_some() {
                return Err(CliError::Usage("give either a ring file or --family, not both".into()));
            }
            return Ok(FamilyParams::Custom { path: path.display().to_string() });
        }
        let Some(name) = self.family.as_deref() else {
            return Err(CliError::Usage("no ring given: pass a JSON file or --family NAME".into()));
        };
        Ok(match name {
            "cyclic-p" => FamilyParams::CyclicP { p: need(self.p, "p", name)? },
            "cyclic-pn" => FamilyParams::CyclicPn { p: need(self.p, "p", name)?, n: need(self.n, "n", name)? },
            "frobenius" => FamilyParams::Frobenius {
                p: need(self.p, "p", name)?,
                m: need(self.m, "m", name)?,
                d: need(self.d, "d", name)?,
                subgroup: self.subgroup,
            },
            "taft" => FamilyParams::Taft { m: need(self.m, "m", name)?, n: need(self.n, "n", name)? as u64, subgroup: self.subgroup },
            "sweedler" => FamilyParams::Sweedler,
            "toy-i" => FamilyParams::ToyI { d: need(self.d, "d", name)?.try_into().map_err(|_| CliError::Usage("--d must be non-negative".into()))? },
            "toy-ii" => FamilyParams::ToyIi { d: need(self.d, "d", name)?.try_into().map_err(|_| CliError::Usage("--d must be non-negative".into()))? },
            "toy-iii" => FamilyParams::ToyIii,
            "z2-z4" => FamilyParams::Z2Z4,
            "sl2-quotient" => FamilyParams::Sl2Quotient { q: need(self.q, "q", name)? },
            other => return Err(CliError::Usage(format!("unknown family {other:?}; see `repring families list`"))),
        })
    }

    /// Builds the ring, going through the cache when one is configured.
    pub fn ring(&self) -> Result<RingSpec, CliError> {
        let params = self.params()?;
        if let FamilyParams::Custom { path } = &params {
            return load_file(Path::new(path));
        }
        let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        if let Some(dir) = &cache {
            let path = dir.join(cache_key(&params));
            if let Ok(src) = std::fs::read_to_string(&path) {
                if let Ok(ring) = parse_json(&src).and_then(|j| j.to_ring_unchecked()) {
                    return Ok(ring.with_family(params));
                }
            }
        }
        let ring = params.build()?;
        if let Some(dir) = &cache {
            if ring.is_finite() {
                let stored = std::fs::create_dir_all(dir).map_err(|e| RingError::Io(e.to_string())).and_then(|_| save_ring_file(&ring, dir.join(cache_key(&params))));
                if let Err(e) = stored {
                    eprintln!("warning: could not write the table cache: {e}");
                }
            }
        }
        Ok(ring)
    }
}

/// Loads a ring file after checking the axioms.
pub fn load_file(path: &Path) -> Result<RingSpec, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_json(&src)?.to_ring()?)
}

/// File name derived from the family and its parameters.
pub fn cache_key(params: &FamilyParams) -> String {
    let key: String = params
        .to_string()
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    format!("{key}.json")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_keys_are_file_safe_and_distinct() {
        let a = cache_key(&FamilyParams::Frobenius { p: 7, m: 3, d: -1, subgroup: false });
        let b = cache_key(&FamilyParams::Frobenius { p: 7, m: 3, d: -1, subgroup: true });
        assert_ne!(a, b);
        for key in [&a, &b] {
            assert!(key.ends_with(".json"));
            assert!(key.trim_end_matches(".json").chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_'), "{key}");
        }
    }

    #[test]
    fn family_flags_are_required() {
        let args = RingArgs { family: Some("cyclic-pn".into()), p: Some(2), ..Default::default() };
        assert!(matches!(args.params(), Err(CliError::Usage(_))));
        let args = RingArgs { family: Some("cyclic-pn".into()), p: Some(2), n: Some(3), ..Default::default() };
        assert_eq!(args.params().unwrap(), FamilyParams::CyclicPn { p: 2, n: 3 });
    }
}
