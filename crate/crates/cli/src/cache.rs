//! On-disk cache of weight multiplicities.
//!
//! One JSON file per `(type, λ)`, named after the key, e.g. `A2_1_m1.json`
//! for `λ = (1, −1)`. Files are written to a temporary sibling and renamed
//! into place, so concurrent writers never expose a partial entry.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use hecke_whittaker::verify::MultiplicitySource;
use hecke_whittaker::{freudenthal_multiplicities, CartanType, Coweight, RootDatum, WeightMultiset};
use serde::{Deserialize, Serialize};

/// Bumped whenever the entry layout or the multiplicity algorithm changes.
pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheFile {
    cache_version: u32,
    entry: WeightMultiset,
}

#[derive(Debug)]
pub enum Lookup {
    Hit(WeightMultiset),
    Miss,
    /// Written by a different cache version.
    Stale(u32),
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    pub fn path(&self, cartan_type: CartanType, lambda: &Coweight) -> PathBuf {
        let mut name = cartan_type.to_string();
        for c in lambda.coords() {
            if *c < 0 {
                name.push_str(&format!("_m{}", c.unsigned_abs()));
            } else {
                name.push_str(&format!("_{c}"));
            }
        }
        name.push_str(".json");
        self.dir.join(name)
    }

    /// Serialized form of an entry; the bytes a hit must reproduce.
    pub fn encode(entry: &WeightMultiset) -> String {
        let file = CacheFile { cache_version: CACHE_VERSION, entry: entry.clone() };
        let mut text = serde_json::to_string_pretty(&file).expect("cache entries serialize");
        text.push('\n');
        text
    }

    pub fn get(&self, cartan_type: CartanType, lambda: &Coweight) -> Lookup {
        let path = self.path(cartan_type, lambda);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        let value: serde_json::Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match value.get("cache_version").and_then(serde_json::Value::as_u64) {
            Some(v) if v == u64::from(CACHE_VERSION) => {}
            Some(v) => return Lookup::Stale(v as u32),
            None => return Lookup::Corrupt("missing cache_version".into()),
        }
        match serde_json::from_value::<CacheFile>(value) {
            Ok(f) if f.entry.cartan_type == cartan_type && f.entry.lambda == *lambda => Lookup::Hit(f.entry),
            Ok(_) => Lookup::Corrupt("entry does not match its key".into()),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    pub fn put(&self, entry: &WeightMultiset) -> io::Result<()> {
        let path = self.path(entry.cartan_type, &entry.lambda);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(Self::encode(entry).as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached multiplicities, recomputing and rewriting missing, stale or
    /// corrupt entries. Warnings go to stderr.
    pub fn get_or_compute(&self, datum: &RootDatum, lambda: &Coweight) -> hecke_whittaker::Result<WeightMultiset> {
        let cartan_type = datum.cartan_type();
        match self.get(cartan_type, lambda) {
            Lookup::Hit(entry) => return Ok(entry),
            Lookup::Miss => {}
            Lookup::Stale(v) => eprintln!(
                "warning: cache entry {} has version {v}, expected {CACHE_VERSION}; recomputing",
                self.path(cartan_type, lambda).display()
            ),
            Lookup::Corrupt(why) => eprintln!(
                "warning: cache entry {} is unreadable ({why}); recomputing",
                self.path(cartan_type, lambda).display()
            ),
        }
        let entry = freudenthal_multiplicities(datum, lambda)?;
        if let Err(e) = self.put(&entry) {
            eprintln!("warning: could not write cache entry: {e}");
        }
        Ok(entry)
    }
}

impl MultiplicitySource for DiskCache {
    fn multiplicities(&self, datum: &RootDatum, lambda: &Coweight) -> hecke_whittaker::Result<WeightMultiset> {
        self.get_or_compute(datum, lambda)
    }
}
