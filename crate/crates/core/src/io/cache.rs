//! Content-addressed on-disk cache for computed payloads.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::io::report::sha256_hex;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "RINGLAB_CACHE";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    payload: Value,
}

#[derive(Debug, PartialEq)]
pub enum Lookup<T> {
    Hit(T),
    Miss,
    /// The entry existed but could not be trusted; the reason is given.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// `$RINGLAB_CACHE`, else `$XDG_CACHE_HOME/ringlab`, else
    /// `$HOME/.cache/ringlab`; disabled if none is set.
    pub fn from_env() -> Self {
        let var = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
        let dir = var(CACHE_ENV)
            .or_else(|| var("XDG_CACHE_HOME").map(|d| d.join("ringlab")))
            .or_else(|| var("HOME").map(|d| d.join(".cache").join("ringlab")));
        Cache { dir }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// sha256 of the parts, each length-prefixed so that boundaries matter.
    pub fn key(parts: &[&str]) -> String {
        let mut s = String::new();
        for p in parts {
            s.push_str(&format!("{}:{p};", p.len()));
        }
        sha256_hex(s.as_bytes())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Lookup<T> {
        let Some(path) = self.path(key) else { return Lookup::Miss };
        let Ok(text) = fs::read_to_string(&path) else { return Lookup::Miss };
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Lookup::Corrupt(format!("unreadable entry: {e}")),
        };
        if entry.key != key {
            return Lookup::Corrupt("key mismatch".into());
        }
        if sha256_hex(entry.payload.to_string().as_bytes()) != entry.checksum {
            return Lookup::Corrupt("checksum mismatch".into());
        }
        match serde_json::from_value(entry.payload) {
            Ok(v) => Lookup::Hit(v),
            Err(e) => Lookup::Corrupt(format!("payload has the wrong shape: {e}")),
        }
    }

    pub fn store<T: Serialize>(&self, key: &str, payload: &T) -> Result<()> {
        let Some(path) = self.path(key) else { return Ok(()) };
        let payload = serde_json::to_value(payload)?;
        let entry = Entry {
            key: key.to_string(),
            checksum: sha256_hex(payload.to_string().as_bytes()),
            payload,
        };
        fs::create_dir_all(path.parent().expect("cache dir"))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Loads `key` or computes and stores it. Returns the value and the
    /// cache status (`hit`, `miss`, `disabled`, or `corrupt: ...`).
    pub fn get_or_compute<T, C>(&self, key: &str, compute: C) -> Result<(T, String)>
    where
        T: Serialize + DeserializeOwned,
        C: FnOnce() -> Result<T>,
    {
        if !self.is_enabled() {
            return Ok((compute()?, "disabled".into()));
        }
        let status = match self.load(key) {
            Lookup::Hit(v) => return Ok((v, "hit".into())),
            Lookup::Miss => "miss".to_string(),
            Lookup::Corrupt(why) => format!("corrupt entry recomputed ({why})"),
        };
        let v = compute()?;
        self.store(key, &v)?;
        Ok((v, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_miss_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::at(dir.path());
        let k = Cache::key(&["betti", "ring", "10"]);
        assert_ne!(k, Cache::key(&["betti", "ring", "11"]));
        assert_ne!(Cache::key(&["ab", "c"]), Cache::key(&["a", "bc"]));
        let (v, s) = c.get_or_compute(&k, || Ok(vec![1u64, 2, 4])).unwrap();
        assert_eq!((v, s.as_str()), (vec![1, 2, 4], "miss"));
        let (v, s) = c.get_or_compute(&k, || -> Result<Vec<u64>> { panic!("must not recompute") }).unwrap();
        assert_eq!((v, s.as_str()), (vec![1, 2, 4], "hit"));
        let path = dir.path().join(format!("{k}.json"));
        let text = fs::read_to_string(&path).unwrap().replace("[1,2,4]", "[1,2,5]");
        fs::write(&path, text).unwrap();
        assert!(matches!(c.load::<Vec<u64>>(&k), Lookup::Corrupt(_)));
        let (v, s) = c.get_or_compute(&k, || Ok(vec![1u64, 2, 4])).unwrap();
        assert_eq!(v, vec![1, 2, 4]);
        assert!(s.starts_with("corrupt"));
        assert_eq!(c.load::<Vec<u64>>(&k), Lookup::Hit(vec![1, 2, 4]));
        fs::write(&path, "not json").unwrap();
        assert!(matches!(c.load::<Vec<u64>>(&k), Lookup::Corrupt(_)));
        assert_eq!(Cache::disabled().load::<Vec<u64>>(&k), Lookup::Miss);
    }
}
