//! On-disk cache of eigen-symbols, one JSON file per
//! `(level, weight, eigen-data fingerprint)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use mazurtate_core::mazurtate::Form;
use mazurtate_core::modsymb::{eigen_symbol_with_bound, EigenSymbol, DEFAULT_EIGEN_BOUND};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "MAZURTATE_CACHE_DIR";

#[derive(Debug, Clone, Default)]
pub struct EigenCache {
    dir: Option<PathBuf>,
}

impl EigenCache {
    /// A cache in `dir`, or a pass-through when `dir` is `None`.
    pub fn new(dir: Option<PathBuf>) -> EigenCache {
        EigenCache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path_for(dir: &Path, form: &Form, fingerprint: &str) -> PathBuf {
        dir.join(format!("eigen-N{}-k{}-{fingerprint}.json", form.level(), form.weight()))
    }

    /// The eigen-symbol of `form`, read from the cache when present.
    /// A malformed cache file is recomputed and replaced.
    pub fn eigen_symbol(&self, form: &Form) -> Result<EigenSymbol> {
        let data = form.eigen_data(DEFAULT_EIGEN_BOUND)?;
        let compute = || eigen_symbol_with_bound(&form.space(), &data, DEFAULT_EIGEN_BOUND);
        let Some(dir) = &self.dir else {
            return Ok(compute()?);
        };
        let path = Self::path_for(dir, form, &EigenSymbol::fingerprint(form.level(), form.weight(), &data));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(phi) = EigenSymbol::from_json(&text) {
                if phi.level() == form.level() && phi.weight() == form.weight() {
                    return Ok(phi);
                }
            }
        }
        let phi = compute()?;
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        // write-then-rename so readers never see a partial file
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(phi.to_json().as_bytes())?;
        tmp.persist(&path).with_context(|| format!("writing {}", path.display()))?;
        Ok(phi)
    }
}
