//! On-disk table cache keyed by a content hash of the request.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use cyclo_hecke::Table;
use sha2::{Digest, Sha256};

/// Bumped whenever the JSON layout changes.
const FORMAT: u32 = 1;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    pub fn key(r: usize, p: usize, n: u32) -> String {
        let mut h = Sha256::new();
        h.update(format!("table format={FORMAT} core={} r={r} p={p} n={n}", cyclo_hecke::VERSION));
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored table, or `None` when absent or unreadable.
    pub fn load(&self, key: &str) -> Option<Table> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        Table::from_json(&text).ok()
    }

    /// Write through a temporary file so readers never see a partial table.
    pub fn store(&self, key: &str, table: &Table) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, table.to_json())?;
        fs::rename(tmp, self.path(key))
    }
}
