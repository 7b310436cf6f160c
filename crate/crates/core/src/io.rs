//! On-disk descriptions of groups shared by certificate and graph files.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::group::{GroupError, Presentation, RaagGraph, WordProblemContext};

/// A group together with the word-problem strategy used for it.
///
/// JSON forms: `{"raag": {"vertices": 4, "edges": [[1, 3]]}}`,
/// `{"free": {"generators": 2}}`, `{"free_abelian": {"generators": 2}}`,
/// `{"presentation": {"generators": ["a"], "relators": [[1, 1]]}}`.
/// A bare RAAG graph or presentation is read as the corresponding variant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Raag(RaagGraph),
    Free {
        generators: usize,
    },
    FreeAbelian {
        generators: usize,
    },
    /// Arbitrary presentation; equality is only ever checked, never proven.
    Presentation(Presentation),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum Tagged {
    Raag(RaagGraph),
    Free { generators: usize },
    FreeAbelian { generators: usize },
    Presentation(Presentation),
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let has = |k: &str| v.get(k).is_some();
        let spec = if has("vertices") {
            GroupSpec::Raag(serde_json::from_value(v).map_err(D::Error::custom)?)
        } else if v.get("generators").is_some_and(Value::is_array) {
            GroupSpec::Presentation(serde_json::from_value(v).map_err(D::Error::custom)?)
        } else {
            match serde_json::from_value(v).map_err(D::Error::custom)? {
                Tagged::Raag(g) => GroupSpec::Raag(g),
                Tagged::Free { generators } => GroupSpec::Free { generators },
                Tagged::FreeAbelian { generators } => GroupSpec::FreeAbelian { generators },
                Tagged::Presentation(p) => GroupSpec::Presentation(p),
            }
        };
        Ok(spec)
    }
}

impl GroupSpec {
    pub fn context(&self) -> Result<WordProblemContext, GroupError> {
        Ok(match self {
            GroupSpec::Raag(g) => WordProblemContext::raag(g.clone()),
            GroupSpec::Free { generators } => WordProblemContext::free(*generators),
            GroupSpec::FreeAbelian { generators } => WordProblemContext::free_abelian(*generators),
            GroupSpec::Presentation(p) => WordProblemContext::battery(p.clone(), Vec::new())?,
        })
    }

    pub fn presentation(&self) -> Presentation {
        match self {
            GroupSpec::Raag(g) => g.presentation(),
            GroupSpec::Free { generators } => Presentation::free(*generators),
            GroupSpec::FreeAbelian { generators } => Presentation::free_abelian(*generators),
            GroupSpec::Presentation(p) => p.clone(),
        }
    }
}
