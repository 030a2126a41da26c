use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::RepoManifest;

const EMBEDDED: [(&str, &str); 3] = [
    ("index.html", include_str!("../../assets/index.html")),
    ("assets/app.js", include_str!("../../assets/app.js")),
    ("assets/style.css", include_str!("../../assets/style.css")),
];

/// Where the catalog front end comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assets {
    /// The bundle compiled into the binary.
    Embedded,
    /// A built bundle: `index.html` plus anything under `assets/`.
    Dir(PathBuf),
}

fn copy_tree(from: &Path, to: &Path) -> Result<()> {
    fs::create_dir_all(to).map_err(|e| Error::io(to, e))?;
    for entry in fs::read_dir(from).map_err(|e| Error::io(from, e))? {
        let entry = entry.map_err(|e| Error::io(from, e))?;
        let path = entry.path();
        let target = to.join(entry.file_name());
        if path.is_dir() {
            copy_tree(&path, &target)?;
        } else {
            fs::copy(&path, &target).map_err(|e| Error::io(&path, e))?;
        }
    }
    Ok(())
}

/// Writes `index.html` and `assets/` next to the JSON and download trees.
pub fn write_site(manifest: &RepoManifest, out_dir: &Path, assets: &Assets) -> Result<PathBuf> {
    match assets {
        Assets::Embedded => {
            for (rel, content) in EMBEDDED {
                let path = out_dir.join(rel);
                if let Some(parent) = path.parent() {
                    fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
                }
                fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
            }
        }
        Assets::Dir(dir) => {
            let index = dir.join("index.html");
            if !index.is_file() {
                return Err(Error::Invalid(format!(
                    "catalog assets not found: {} has no index.html",
                    dir.display()
                )));
            }
            fs::copy(&index, out_dir.join("index.html")).map_err(|e| Error::io(&index, e))?;
            let sub = dir.join("assets");
            if sub.is_dir() {
                copy_tree(&sub, &out_dir.join("assets"))?;
            }
        }
    }
    log::info!(
        "site with {} datasets written to {}",
        manifest.records.len(),
        out_dir.display()
    );
    Ok(out_dir.to_path_buf())
}
