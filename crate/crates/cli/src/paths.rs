use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

/// Environment variable naming the base directory for relative paths.
pub const OUTPUT_DIR_ENV: &str = "HCS_OUTPUT_DIR";

/// Where relative input and output paths are resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    base: PathBuf,
}

impl Workspace {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Workspace { base: base.into() }
    }

    /// `--dir` if given, else `$HCS_OUTPUT_DIR`, else the current directory.
    pub fn from_env(flag: Option<&Path>) -> Self {
        let base = flag
            .map(Path::to_path_buf)
            .or_else(|| env::var_os(OUTPUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        Workspace { base }
    }

    pub fn base(&self) -> &Path {
        &self.base
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base.join(path)
        }
    }

    pub fn read(&self, path: &Path) -> Result<Vec<u8>> {
        let full = self.resolve(path);
        fs::read(&full).map_err(|e| CliError::io(&full, e))
    }

    pub fn read_to_string(&self, path: &Path) -> Result<String> {
        let full = self.resolve(path);
        fs::read_to_string(&full).map_err(|e| CliError::io(&full, e))
    }

    /// Writes `bytes`, creating parent directories.
    pub fn write(&self, path: &Path, bytes: &[u8]) -> Result<PathBuf> {
        let full = self.resolve(path);
        if let Some(parent) = full.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        fs::write(&full, bytes).map_err(|e| CliError::io(&full, e))?;
        Ok(full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_paths_land_under_base() {
        let ws = Workspace::new("/tmp/x");
        assert_eq!(ws.resolve(Path::new("a/b.json")), PathBuf::from("/tmp/x/a/b.json"));
        assert_eq!(ws.resolve(Path::new("/abs.json")), PathBuf::from("/abs.json"));
        assert_eq!(Workspace::from_env(Some(Path::new("d"))).base(), Path::new("d"));
    }

    #[test]
    fn write_creates_parents() {
        let dir = tempfile::tempdir().unwrap();
        let ws = Workspace::new(dir.path());
        let full = ws.write(Path::new("deep/er/file.txt"), b"hi").unwrap();
        assert_eq!(fs::read(full).unwrap(), b"hi");
        assert_eq!(ws.read_to_string(Path::new("deep/er/file.txt")).unwrap(), "hi");
        assert_eq!(ws.read(Path::new("missing")).unwrap_err().kind, crate::error::ErrorKind::Io);
    }
}
