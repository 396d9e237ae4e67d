//! On-disk cache of `G_k` tables, keyed by a SHA-256 of the model and
//! truncation. Entries are canonical JSON, so a warm run reproduces a cold
//! one byte for byte.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use ecs_core::eigenvalue::{gk_table_for, GkTable};
use ecs_core::lattice::Spectrum;

use crate::json::{gk_table_from_json, gk_table_to_json, render, JsonScalar};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "ECS_CACHE_DIR";

const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// No caching.
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// Explicit directory if given, else `$ECS_CACHE_DIR`, else disabled.
    pub fn from_env_or(dir: Option<PathBuf>) -> Self {
        match dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => Cache::at(d),
            None => Cache::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn key<S: Spectrum>(spectrum: &S, lq: usize, sg: usize) -> String {
        let text = format!(
            "gk/v{FORMAT_VERSION}/{}/{}/lq={lq}/sg={sg}",
            <S::Scalar as ecs_core::Scalar>::KIND,
            spectrum.describe()
        );
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The `G_k` table for `k < Lq`, from disk when present.
    ///
    /// Unreadable or mismatched entries are recomputed and overwritten.
    pub fn gk_table<S: Spectrum>(&self, spectrum: &S, lq: usize, sg: usize) -> Result<GkTable<S::Scalar>, ecs_core::Error>
    where
        S::Scalar: JsonScalar,
    {
        let Some(dir) = &self.dir else {
            return gk_table_for(spectrum, lq, sg);
        };
        let path = dir.join(format!("{}.json", Self::key(spectrum, lq, sg)));
        if let Some(t) = Self::load::<S::Scalar>(&path) {
            if t.label() == spectrum.describe() && (t.q2_order(), t.gamma_order()) == (lq, sg) {
                return Ok(t);
            }
        }
        let table = gk_table_for(spectrum, lq, sg)?;
        // A failed write only costs a recomputation next time.
        let _ = Self::store(dir, &path, &render(&gk_table_to_json(&table)));
        Ok(table)
    }

    fn load<F: JsonScalar>(path: &Path) -> Option<GkTable<F>> {
        let text = fs::read_to_string(path).ok()?;
        let value = serde_json::from_str(&text).ok()?;
        gk_table_from_json(&value).ok()
    }

    fn store(dir: &Path, path: &Path, text: &str) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{}.{}.tmp", path.file_name().and_then(|s| s.to_str()).unwrap_or("entry"), std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)
    }
}
