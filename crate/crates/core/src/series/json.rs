//! `{"kind":"dir"|"ord","trunc":N,"coeffs":{"<index>":"<polynomial>"}}`.
//! Omitted indices are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DirSeries, OrdSeries};
use crate::arith::Polynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySeries {
    Dir(DirSeries),
    Ord(OrdSeries),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Dir,
    Ord,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    kind: Kind,
    trunc: usize,
    coeffs: BTreeMap<u64, String>,
}

fn nonzero(first: u64, coeffs: &[Polynomial]) -> BTreeMap<u64, String> {
    coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (first + i as u64, c.to_string())).collect()
}

impl AnySeries {
    pub fn to_json(&self) -> String {
        let wire = match self {
            AnySeries::Dir(s) => Wire { kind: Kind::Dir, trunc: s.trunc(), coeffs: nonzero(1, s.coeffs()) },
            AnySeries::Ord(s) => Wire { kind: Kind::Ord, trunc: s.trunc(), coeffs: nonzero(0, s.coeffs()) },
        };
        serde_json::to_string_pretty(&wire).expect("series serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<AnySeries> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let first = match wire.kind {
            Kind::Dir => 1,
            Kind::Ord => 0,
        };
        let len = wire.trunc + 1 - first as usize;
        let mut coeffs = vec![Polynomial::zero(); len];
        for (idx, text) in &wire.coeffs {
            if *idx < first || *idx > wire.trunc as u64 {
                return Err(Error::Format(format!("coefficient index {idx} outside {first}..={}", wire.trunc)));
            }
            coeffs[(*idx - first) as usize] = text.parse()?;
        }
        Ok(match wire.kind {
            Kind::Dir => AnySeries::Dir(DirSeries::from_coeffs(coeffs)),
            Kind::Ord => AnySeries::Ord(OrdSeries::from_coeffs(coeffs)),
        })
    }
}
