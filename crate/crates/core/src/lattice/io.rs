use serde::{Deserialize, Serialize};

use super::Lattice;
use crate::error::{Error, Result};

/// On-disk form: `{"ground": n, "elements": [[i, ...], ...]}`.
///
/// Extra keys (corpus annotations, for instance) are ignored when loading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub ground: usize,
    pub elements: Vec<Vec<usize>>,
}

impl From<&Lattice> for LatticeFile {
    fn from(l: &Lattice) -> Self {
        LatticeFile {
            ground: l.ground_size(),
            elements: l.refs().map(|e| l.members(e)).collect(),
        }
    }
}

impl Lattice {
    pub fn from_json(text: &str) -> Result<Lattice> {
        let file: LatticeFile = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("malformed lattice file: {e}")))?;
        let mut elements = file.elements;
        for e in &mut elements {
            e.sort_unstable();
            e.dedup();
        }
        Lattice::from_family(file.ground, &elements)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&LatticeFile::from(self)).expect("lattice file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::diamond;

    #[test]
    fn json_round_trip() {
        let d = diamond();
        let text = d.to_json();
        assert_eq!(
            text,
            r#"{"ground":3,"elements":[[],[0],[1],[0,1],[0,1,2]]}"#
        );
        assert_eq!(Lattice::from_json(&text).unwrap(), d);
    }

    #[test]
    fn malformed_json_is_input_error() {
        assert!(matches!(Lattice::from_json("{"), Err(Error::Input(_))));
        assert!(matches!(
            Lattice::from_json(r#"{"ground":2,"elements":[[],[0]]}"#),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn extra_keys_are_ignored() {
        let l =
            Lattice::from_json(r#"{"ground":1,"elements":[[],[0]],"separative":true}"#).unwrap();
        assert_eq!(l.len(), 2);
    }
}
