//! Resource caps shared by every exhaustive routine in the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper limits for the exhaustive scans. Every enumeration in the crate
/// checks the relevant cap before allocating and fails with
/// [`Error::CapExceeded`] instead of running away.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order accepted by any constructor.
    pub order: usize,
    /// Associativity is checked on all triples up to this order, sampled above it.
    pub assoc_exhaustive: usize,
    /// Number of random triples checked above `assoc_exhaustive`.
    pub assoc_samples: usize,
    /// Largest number of faces a skeletal complex may hold.
    pub faces: usize,
    /// Largest total number of cells fed to a homology computation.
    pub homology_cells: usize,
    /// Extra dimensions allowed above `max_p d_p(G)` when killing integral homology.
    pub dimension_slack: usize,
    /// Groups up to this order use the brute-force subgroup enumerator.
    pub subgroup_oracle: usize,
    /// Seed for every sampled check.
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 512,
            assoc_exhaustive: 128,
            assoc_samples: 10_000,
            faces: 2_000_000,
            homology_cells: 400_000,
            dimension_slack: 3,
            subgroup_oracle: 24,
            seed: 0x5eed_ac47,
        }
    }
}

impl Caps {
    /// Parses an override string such as `order=256,faces=100000`.
    ///
    /// Values above the defaults are rejected unless `allow_raise` is set.
    pub fn with_overrides(mut self, spec: &str, allow_raise: bool) -> Result<Self> {
        let defaults = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("malformed cap override `{item}`")))?;
            let parsed: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("cap `{key}` needs an unsigned integer, got `{value}`")))?;
            if parsed == 0 && key.trim() != "seed" {
                return Err(Error::Input(format!("cap `{key}` must be positive")));
            }
            let (slot, default) = match key.trim() {
                "order" => (&mut self.order, defaults.order),
                "assoc" => (&mut self.assoc_exhaustive, defaults.assoc_exhaustive),
                "samples" => (&mut self.assoc_samples, defaults.assoc_samples),
                "faces" => (&mut self.faces, defaults.faces),
                "homology" => (&mut self.homology_cells, defaults.homology_cells),
                "dim" => (&mut self.dimension_slack, defaults.dimension_slack),
                "oracle" => (&mut self.subgroup_oracle, defaults.subgroup_oracle),
                "seed" => {
                    self.seed = parsed;
                    continue;
                }
                other => return Err(Error::Input(format!("unknown cap `{other}`"))),
            };
            let parsed = parsed as usize;
            if parsed > default && !allow_raise {
                return Err(Error::Input(format!(
                    "cap `{}` = {parsed} exceeds the default {default}; pass --unsafe-caps to raise it",
                    key.trim()
                )));
            }
            *slot = parsed;
        }
        Ok(self)
    }

    pub fn check(&self, what: &'static str, requested: usize, limit: usize) -> Result<()> {
        if requested > limit {
            Err(Error::CapExceeded { what, requested, limit })
        } else {
            Ok(())
        }
    }
}
