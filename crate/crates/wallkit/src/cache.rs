//! Read-through cache for pure command output.

use std::fs;
use std::path::PathBuf;

/// Environment variable naming the cache directory. Unset disables caching.
pub const CACHE_ENV: &str = "WALLKIT_CACHE_DIR";

const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn from_env() -> Self {
        Cache { dir: std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from) }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path(&self, command: &str, params: &str) -> Option<PathBuf> {
        let key: String = format!("{command}-{params}-v{ARTIFACT_VERSION}")
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
            .collect();
        self.dir.as_ref().map(|d| d.join(key))
    }

    /// Cached bytes for the key, or the output of `compute`, stored on the way out.
    /// Failures are never cached; an unwritable directory only skips the store.
    pub fn get_or_compute<E>(&self, command: &str, params: &str, compute: impl FnOnce() -> Result<Vec<u8>, E>) -> Result<Vec<u8>, E> {
        let path = self.path(command, params);
        if let Some(p) = &path {
            if let Ok(bytes) = fs::read(p) {
                return Ok(bytes);
            }
        }
        let bytes = compute()?;
        if let Some(p) = &path {
            if let Some(parent) = p.parent() {
                let _ = fs::create_dir_all(parent);
            }
            let tmp = p.with_extension("tmp");
            if fs::write(&tmp, &bytes).is_ok() {
                let _ = fs::rename(&tmp, p);
            }
        }
        Ok(bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    #[test]
    fn hit_returns_stored_bytes() {
        let dir = std::env::temp_dir().join(format!("wallkit-cache-test-{}", std::process::id()));
        let cache = Cache::at(&dir);
        let calls = Cell::new(0);
        let run = || {
            cache.get_or_compute::<()>("enum", "n=2 r=2", || {
                calls.set(calls.get() + 1);
                Ok(b"abc".to_vec())
            })
        };
        assert_eq!(run().unwrap(), b"abc");
        assert_eq!(run().unwrap(), b"abc");
        assert_eq!(calls.get(), 1);
        assert!(Cache::disabled().get_or_compute::<()>("x", "y", || Ok(vec![1])).is_ok());
        let _ = fs::remove_dir_all(dir);
    }
}
