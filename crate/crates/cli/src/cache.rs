//! On-disk cache of subgroup lattices, stored as one generating set per
//! conjugacy class under `<cache_dir>/<sha256>.json`.

use std::io::Write;
use std::path::{Path, PathBuf};

use invgen_core::finite::{Elem, FiniteGroup};
use invgen_core::lattice::Lattice;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const SCHEMA: &str = "invgen-lattice-cache/1";

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct Entry {
    schema: String,
    key: String,
    order: usize,
    class_generators: Vec<Vec<Elem>>,
    class_orders: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl Entry {
    fn new(key: &str, g: &FiniteGroup, l: &Lattice) -> Self {
        Entry {
            schema: SCHEMA.to_string(),
            key: key.to_string(),
            order: g.order(),
            class_generators: l.classes().iter().map(|c| c.rep.gens().to_vec()).collect(),
            class_orders: l.classes().iter().map(|c| c.order()).collect(),
            class_sizes: l.classes().iter().map(|c| c.size()).collect(),
        }
    }
}

/// How a lattice was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheOutcome {
    Disabled,
    Hit,
    /// Hit, and the entry was also checked against a fresh computation.
    HitVerified,
    Miss,
    /// The stored entry did not match and was replaced.
    Invalid,
}

pub struct LatticeCache {
    dir: Option<PathBuf>,
}

pub fn key_for(canonical_group_text: &str) -> String {
    let mut h = Sha256::new();
    h.update(SCHEMA.as_bytes());
    h.update(b"\n");
    h.update(canonical_group_text.as_bytes());
    hex::encode(h.finalize())
}

/// One key in eight is re-verified against a fresh computation on every hit.
fn sampled(key: &str) -> bool {
    key.as_bytes()[0] % 8 == 0
}

impl LatticeCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        LatticeCache { dir }
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        dir.join(format!("{key}.json"))
    }

    fn load(&self, dir: &Path, key: &str, g: &FiniteGroup) -> Option<Lattice> {
        let text = std::fs::read_to_string(Self::path(dir, key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.schema != SCHEMA || entry.key != key || entry.order != g.order() {
            return None;
        }
        let l = Lattice::from_class_generators(g, &entry.class_generators).ok()?;
        (Entry::new(key, g, &l) == entry).then_some(l)
    }

    fn store(dir: &Path, key: &str, g: &FiniteGroup, l: &Lattice) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, &Entry::new(key, g, l))?;
        tmp.flush()?;
        tmp.persist(Self::path(dir, key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Returns the lattice from the cache when a valid entry exists, computing
    /// and storing it otherwise.
    pub fn lattice(
        &self,
        key: &str,
        g: &FiniteGroup,
        compute: impl FnOnce() -> invgen_core::Result<Lattice>,
    ) -> invgen_core::Result<(Lattice, CacheOutcome, Option<String>)> {
        let Some(dir) = &self.dir else {
            return Ok((compute()?, CacheOutcome::Disabled, None));
        };
        let existed = Self::path(dir, key).exists();
        if let Some(l) = self.load(dir, key, g) {
            if !sampled(key) {
                return Ok((l, CacheOutcome::Hit, None));
            }
            let fresh = compute()?;
            if Entry::new(key, g, &fresh) == Entry::new(key, g, &l) {
                return Ok((l, CacheOutcome::HitVerified, None));
            }
            let note = Self::store(dir, key, g, &fresh).err().map(|e| format!("cache write failed: {e}"));
            return Ok((fresh, CacheOutcome::Invalid, note));
        }
        let l = compute()?;
        let note = Self::store(dir, key, g, &l).err().map(|e| format!("cache write failed: {e}"));
        let outcome = if existed { CacheOutcome::Invalid } else { CacheOutcome::Miss };
        Ok((l, outcome, note))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use invgen_core::builder;
    use invgen_core::finite::DEFAULT_ELEMENT_BUDGET;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LatticeCache::new(Some(dir.path().to_path_buf()));
        let g = FiniteGroup::new(&builder::symmetric(4).unwrap(), DEFAULT_ELEMENT_BUDGET).unwrap();
        let key = key_for("sym4");
        let compute = || Lattice::compute(&g, 2000);
        let (l1, o1, _) = cache.lattice(&key, &g, compute).unwrap();
        assert_eq!(o1, CacheOutcome::Miss);
        let (l2, o2, _) = cache.lattice(&key, &g, compute).unwrap();
        assert!(matches!(o2, CacheOutcome::Hit | CacheOutcome::HitVerified));
        assert_eq!(l1.total_subgroups(), l2.total_subgroups());
        assert_eq!(l1.maximal_classes().len(), l2.maximal_classes().len());
        std::fs::write(dir.path().join(format!("{key}.json")), "{\"schema\": 1}").unwrap();
        let (l3, o3, _) = cache.lattice(&key, &g, compute).unwrap();
        assert_eq!(o3, CacheOutcome::Invalid);
        assert_eq!(l3.total_subgroups(), 30);
        let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}
