//! Disk cache for expensive reduced bases.
//!
//! Files are JSON: the system in its wire form plus a header
//! `{n, task, version, params}`. The version string embeds the crate
//! version and a revision counter bumped whenever basis-affecting code
//! changes, so stale files read as misses. A hit is byte-equivalent to
//! recomputation.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::Rat;
use crate::poly::json::{order_from_json, order_to_json, poly_from_json, poly_to_json};
use crate::poly::VarContext;

use super::PolySystem;

/// Bump the suffix when the basis pipeline changes in any way that could
/// alter output.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+b2");

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache format: {0}")]
    Format(String),
}

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: Option<PathBuf>,
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '/' => 'd',
            '-' => 'm',
            ',' => '_',
            c if c.is_ascii_alphanumeric() || c == '_' => c,
            _ => '_',
        })
        .collect()
}

impl BasisCache {
    /// A cache rooted at `dir`; `None` disables caching entirely.
    pub fn new(dir: Option<PathBuf>) -> Self {
        BasisCache { dir }
    }

    pub fn disabled() -> Self {
        BasisCache { dir: None }
    }

    /// Resolve from an explicit path or the DISCVAR_CACHE_DIR variable.
    pub fn from_env(explicit: Option<PathBuf>) -> Self {
        let dir = explicit.or_else(|| std::env::var_os("DISCVAR_CACHE_DIR").map(PathBuf::from));
        BasisCache { dir }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path_for(&self, n: usize, task: &str, params: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let file = format!(
            "{}_n{}_{}_v{}.json",
            slug(task),
            n,
            slug(params),
            slug(CODE_VERSION)
        );
        Some(dir.join(file))
    }

    pub fn load(&self, n: usize, task: &str, params: &str) -> Option<PolySystem<Rat>> {
        let path = self.path_for(n, task, params)?;
        if !path.exists() {
            return None;
        }
        // unreadable or stale cache entries are misses
        read_system(&path, n, task).ok()
    }

    pub fn store(
        &self,
        n: usize,
        task: &str,
        params: &str,
        sys: &PolySystem<Rat>,
    ) -> Result<(), CacheError> {
        let Some(path) = self.path_for(n, task, params) else {
            return Ok(());
        };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let doc = json!({
            "header": {
                "n": n,
                "task": task,
                "version": CODE_VERSION,
                "params": params,
                "reduced": sys.is_reduced(),
            },
            "order": order_to_json(sys.order()),
            "vars": sys.ctx().names(),
            "gens": sys.gens().iter().map(poly_to_json).collect::<Vec<_>>(),
        });
        fs::write(&path, serde_json::to_string_pretty(&doc)?)?;
        Ok(())
    }
}

impl From<serde_json::Error> for CacheError {
    fn from(e: serde_json::Error) -> Self {
        CacheError::Format(e.to_string())
    }
}

fn read_system(path: &Path, n: usize, task: &str) -> Result<PolySystem<Rat>, CacheError> {
    let text = fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    let header = doc
        .get("header")
        .ok_or_else(|| CacheError::Format("missing header".into()))?;
    let ok = header.get("n").and_then(Value::as_u64) == Some(n as u64)
        && header.get("task").and_then(Value::as_str) == Some(task)
        && header.get("version").and_then(Value::as_str) == Some(CODE_VERSION);
    if !ok {
        return Err(CacheError::Format("header mismatch".into()));
    }
    let mut sys = system_from_json(&doc)?;
    if header.get("reduced").and_then(Value::as_bool) == Some(true) {
        sys.mark_reduced();
    }
    Ok(sys)
}

/// Parse the wire form `{order, vars, gens}` into a system.
pub fn system_from_json(doc: &Value) -> Result<PolySystem<Rat>, CacheError> {
    let order = order_from_json(
        doc.get("order")
            .ok_or_else(|| CacheError::Format("missing order".into()))?,
    )
    .map_err(|e| CacheError::Format(e.to_string()))?;
    let names: Vec<String> = doc
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| CacheError::Format("missing vars".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| CacheError::Format("vars must be strings".into()))
        })
        .collect::<Result<_, _>>()?;
    let ctx = VarContext::new(names);
    let gens = doc
        .get("gens")
        .and_then(Value::as_array)
        .ok_or_else(|| CacheError::Format("missing gens".into()))?
        .iter()
        .map(|g| {
            poly_from_json(g, order)
                .map(|p| p.rename_into(&ctx, order))
                .map_err(|e| CacheError::Format(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolySystem::new(ctx, order, gens))
}

/// The wire form `{order, vars, gens}` of a system.
pub fn system_to_json(sys: &PolySystem<Rat>) -> Value {
    json!({
        "order": order_to_json(sys.order()),
        "vars": sys.ctx().names(),
        "gens": sys.gens().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MonomialOrder};

    #[test]
    fn store_load_roundtrip() {
        let dir = std::env::temp_dir().join(format!("discvar-cache-test-{}", std::process::id()));
        let cache = BasisCache::new(Some(dir.clone()));
        let ctx = VarContext::new(vec!["x", "y"]);
        let p = parse_poly::<Rat>("x^2 - y", &ctx, MonomialOrder::GrevLex).unwrap();
        let sys = PolySystem::new(ctx, MonomialOrder::GrevLex, vec![p]);
        cache.store(3, "rels", "", &sys).unwrap();
        let back = cache.load(3, "rels", "").expect("cache hit");
        assert_eq!(back, sys);
        // wrong task or n misses
        assert!(cache.load(3, "other", "").is_none());
        assert!(cache.load(4, "rels", "").is_none());
        let _ = std::fs::remove_dir_all(dir);
    }
}
