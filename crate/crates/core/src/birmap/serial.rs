//! JSON form of a map.
//!
//! ```json
//! {"schema_version": 1, "ambient": "P2",
//!  "components": [{"1,0,0": ["1","1","0","1"]}, …]}
//! ```
//! Keys are comma-separated exponent vectors; values are
//! `[re_num, re_den, im_num, im_den]` as decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Ambient, BirMap};
use crate::algebra::{Mono, MultiPoly, Scalar};
use crate::error::MapError;

pub const MAP_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MapJson {
    pub schema_version: u32,
    pub ambient: Ambient,
    pub components: Vec<BTreeMap<String, [String; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_tag: Option<String>,
}

pub fn scalar_strings(c: &Scalar) -> [String; 4] {
    c.parts().map(|x| x.to_string())
}

pub fn scalar_from_strings(s: &[String; 4]) -> Result<Scalar, MapError> {
    let mut v = Vec::with_capacity(4);
    for x in s {
        v.push(
            x.parse::<BigInt>()
                .map_err(|_| MapError::Serial(format!("not an integer: `{x}`")))?,
        );
    }
    let [a, b, c, d]: [BigInt; 4] = v.try_into().expect("four parts");
    Scalar::from_parts(a, b, c, d).map_err(MapError::from)
}

impl BirMap {
    pub fn to_json(&self) -> MapJson {
        let nv = self.ambient().nvars();
        let components = self
            .components()
            .iter()
            .map(|p| {
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let key: Vec<String> = m.0[..nv].iter().map(|e| e.to_string()).collect();
                        (key.join(","), scalar_strings(c))
                    })
                    .collect()
            })
            .collect();
        MapJson {
            schema_version: MAP_SCHEMA_VERSION,
            ambient: self.ambient(),
            components,
            inverse_tag: self.inverse_tag().map(String::from),
        }
    }

    pub fn from_json(j: &MapJson) -> Result<BirMap, MapError> {
        if j.schema_version != MAP_SCHEMA_VERSION {
            return Err(MapError::Serial(format!("unsupported schema version {}", j.schema_version)));
        }
        let nv = j.ambient.nvars();
        let mut comps = Vec::new();
        for c in &j.components {
            let mut terms = Vec::new();
            for (k, v) in c {
                let e: Result<Vec<u64>, _> = k.split(',').map(|t| t.trim().parse::<u64>()).collect();
                let e = e.map_err(|_| MapError::Serial(format!("bad exponent key `{k}`")))?;
                if e.len() != nv {
                    return Err(MapError::Serial(format!("exponent key `{k}` has wrong length")));
                }
                terms.push((Mono::from_slice(&e), scalar_from_strings(v)?));
            }
            comps.push(MultiPoly::from_terms(nv, terms));
        }
        let m = BirMap::new(j.ambient, comps)?;
        Ok(match &j.inverse_tag {
            Some(t) => m.with_inverse_tag(t.clone()),
            None => m,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<BirMap, MapError> {
        let j: MapJson = serde_json::from_str(s).map_err(|e| MapError::Serial(e.to_string()))?;
        BirMap::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for (amb, src) in [
            (Ambient::P2, "(-1/x, i y)"),
            (Ambient::P1xP1, "((x+1/2 y)/(1/2+x y), y/2)"),
        ] {
            let f = BirMap::parse(amb, src).unwrap().with_inverse_tag("g");
            let s = f.to_json_string();
            assert!(s.contains("\"schema_version\":1"));
            let g = BirMap::from_json_str(&s).unwrap();
            assert!(f.equals(&g));
            assert_eq!(g.inverse_tag(), Some("g"));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BirMap::from_json_str("{\"schema_version\":2,\"ambient\":\"P2\",\"components\":[]}").is_err());
        assert!(BirMap::from_json_str("not json").is_err());
    }
}
