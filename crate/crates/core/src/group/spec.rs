use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};

use super::{catalog, FiniteGroup, Permutation};

/// JSON description of a group, e.g. `{"type":"cyclic","n":30}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Catalog { name: String },
    Cyclic { n: usize },
    /// One-line image arrays with 1-based points.
    Permutation { generators: Vec<Vec<usize>> },
    Cayley { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad group spec: {e}")))
    }

    /// Accepts either a JSON spec or a bare catalog name.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            Self::from_json(text)
        } else {
            Ok(GroupSpec::Catalog { name: text.to_string() })
        }
    }

    pub fn build(&self, caps: &Caps) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Catalog { name } => catalog(name, caps),
            GroupSpec::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::Input("cyclic group needs n >= 1".into()));
                }
                catalog(&format!("C{n}"), caps)
            }
            GroupSpec::Permutation { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| Permutation::from_one_line(g))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_permutations(&gens, caps)
            }
            GroupSpec::Cayley { table } => FiniteGroup::from_cayley_table(table, caps),
        }
    }

    /// Short display name used as a report identifier.
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Catalog { name } => name.clone(),
            GroupSpec::Cyclic { n } => format!("C{n}"),
            GroupSpec::Permutation { generators } => {
                let gens: Vec<String> = generators
                    .iter()
                    .map(|g| Permutation::from_one_line(g).map(|p| p.to_string()).unwrap_or_else(|_| "?".into()))
                    .collect();
                format!("<{}>", gens.join(", "))
            }
            GroupSpec::Cayley { table } => format!("cayley[{}]", table.len()),
        }
    }
}
