//! JSON file format for presentations.
//!
//! A presentation is a single JSON document whose composite keys are
//! `;`-joined token lists. Unknown keys are rejected, duplicate keys are an
//! error rather than last-one-wins.

use super::{BicatPresentation, OneCell, TwoCell};
use crate::cell::{join_key, split_key, CellId};
use crate::error::{KernelError, Result};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

/// An ordered map that rejects duplicate keys during deserialization.
#[derive(Debug, Clone, Default, Serialize)]
#[serde(transparent)]
pub struct UniqueMap<V>(pub BTreeMap<String, V>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V2<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V2<V> {
            type Value = UniqueMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map with unique keys")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, V>()? {
                    if out.insert(k.clone(), v).is_some() {
                        return Err(serde::de::Error::custom(format!("duplicate key `{k}`")));
                    }
                }
                Ok(UniqueMap(out))
            }
        }
        deserializer.deserialize_map(V2(PhantomData))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawShape {
    src: String,
    tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    objects: Vec<String>,
    one_cells: UniqueMap<RawShape>,
    two_cells: UniqueMap<RawShape>,
    id1: UniqueMap<String>,
    comp1: UniqueMap<String>,
    id2: UniqueMap<String>,
    vcomp: UniqueMap<String>,
    lwhisker: UniqueMap<String>,
    rwhisker: UniqueMap<String>,
    lunitor: UniqueMap<String>,
    lunitor_inv: UniqueMap<String>,
    runitor: UniqueMap<String>,
    runitor_inv: UniqueMap<String>,
    lassoc: UniqueMap<String>,
    lassoc_inv: UniqueMap<String>,
}

fn key1(map: UniqueMap<String>) -> BTreeMap<CellId, CellId> {
    map.0
        .into_iter()
        .map(|(k, v)| (CellId::from(k), CellId::from(v)))
        .collect()
}

fn key2(table: &str, map: UniqueMap<String>) -> Result<BTreeMap<(CellId, CellId), CellId>> {
    map.0
        .into_iter()
        .map(|(k, v)| {
            let parts = split_key(&k, 2).ok_or_else(|| {
                KernelError::InvalidInput(format!("{table}: key `{k}` is not a 2-token key"))
            })?;
            Ok(((parts[0].clone(), parts[1].clone()), CellId::from(v)))
        })
        .collect()
}

fn key3(
    table: &str,
    map: UniqueMap<String>,
) -> Result<BTreeMap<(CellId, CellId, CellId), CellId>> {
    map.0
        .into_iter()
        .map(|(k, v)| {
            let parts = split_key(&k, 3).ok_or_else(|| {
                KernelError::InvalidInput(format!("{table}: key `{k}` is not a 3-token key"))
            })?;
            Ok((
                (parts[0].clone(), parts[1].clone(), parts[2].clone()),
                CellId::from(v),
            ))
        })
        .collect()
}

impl TryFrom<RawPresentation> for BicatPresentation {
    type Error = KernelError;

    fn try_from(raw: RawPresentation) -> Result<Self> {
        let mut p = BicatPresentation::default();
        for o in raw.objects {
            let o = CellId::from(o);
            if !p.objects.insert(o.clone()) {
                return Err(KernelError::DuplicateId {
                    tier: "objects".into(),
                    token: o,
                });
            }
        }
        p.one_cells = raw
            .one_cells
            .0
            .into_iter()
            .map(|(k, s)| {
                (
                    CellId::from(k),
                    OneCell {
                        src: CellId::from(s.src),
                        tgt: CellId::from(s.tgt),
                    },
                )
            })
            .collect();
        p.two_cells = raw
            .two_cells
            .0
            .into_iter()
            .map(|(k, s)| {
                (
                    CellId::from(k),
                    TwoCell {
                        src: CellId::from(s.src),
                        tgt: CellId::from(s.tgt),
                    },
                )
            })
            .collect();
        p.id1 = key1(raw.id1);
        p.comp1 = key2("comp1", raw.comp1)?;
        p.id2 = key1(raw.id2);
        p.vcomp = key2("vcomp", raw.vcomp)?;
        p.lwhisker = key2("lwhisker", raw.lwhisker)?;
        p.rwhisker = key2("rwhisker", raw.rwhisker)?;
        p.lunitor = key1(raw.lunitor);
        p.lunitor_inv = key1(raw.lunitor_inv);
        p.runitor = key1(raw.runitor);
        p.runitor_inv = key1(raw.runitor_inv);
        p.lassoc = key3("lassoc", raw.lassoc)?;
        p.lassoc_inv = key3("lassoc_inv", raw.lassoc_inv)?;
        Ok(p)
    }
}

impl From<&BicatPresentation> for RawPresentation {
    fn from(p: &BicatPresentation) -> Self {
        let shape1 = |c: &OneCell| RawShape {
            src: c.src.0.clone(),
            tgt: c.tgt.0.clone(),
        };
        let shape2 = |c: &TwoCell| RawShape {
            src: c.src.0.clone(),
            tgt: c.tgt.0.clone(),
        };
        let m1 = |m: &BTreeMap<CellId, CellId>| {
            UniqueMap(m.iter().map(|(k, v)| (k.0.clone(), v.0.clone())).collect())
        };
        let m2 = |m: &BTreeMap<(CellId, CellId), CellId>| {
            UniqueMap(
                m.iter()
                    .map(|((a, b), v)| (join_key([a, b]), v.0.clone()))
                    .collect(),
            )
        };
        let m3 = |m: &BTreeMap<(CellId, CellId, CellId), CellId>| {
            UniqueMap(
                m.iter()
                    .map(|((a, b, c), v)| (join_key([a, b, c]), v.0.clone()))
                    .collect(),
            )
        };
        RawPresentation {
            objects: p.objects.iter().map(|o| o.0.clone()).collect(),
            one_cells: UniqueMap(
                p.one_cells
                    .iter()
                    .map(|(k, c)| (k.0.clone(), shape1(c)))
                    .collect(),
            ),
            two_cells: UniqueMap(
                p.two_cells
                    .iter()
                    .map(|(k, c)| (k.0.clone(), shape2(c)))
                    .collect(),
            ),
            id1: m1(&p.id1),
            comp1: m2(&p.comp1),
            id2: m1(&p.id2),
            vcomp: m2(&p.vcomp),
            lwhisker: m2(&p.lwhisker),
            rwhisker: m2(&p.rwhisker),
            lunitor: m1(&p.lunitor),
            lunitor_inv: m1(&p.lunitor_inv),
            runitor: m1(&p.runitor),
            runitor_inv: m1(&p.runitor_inv),
            lassoc: m3(&p.lassoc),
            lassoc_inv: m3(&p.lassoc_inv),
        }
    }
}

/// Parses a presentation document, rejecting unknown and duplicate keys.
pub fn presentation_from_json(text: &str) -> Result<BicatPresentation> {
    let raw: RawPresentation = serde_json::from_str(text)
        .map_err(|e| KernelError::InvalidInput(format!("presentation: {e}")))?;
    raw.try_into()
}

/// Serializes a presentation to its document form.
pub fn presentation_to_json(p: &BicatPresentation) -> String {
    serde_json::to_string_pretty(&RawPresentation::from(p)).expect("presentation serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::terminal_bicat;

    #[test]
    fn round_trip_terminal() {
        let p = terminal_bicat();
        let text = presentation_to_json(&p);
        let q = presentation_from_json(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unknown_key_rejected() {
        let p = terminal_bicat();
        let mut v: serde_json::Value = serde_json::from_str(&presentation_to_json(&p)).unwrap();
        v.as_object_mut()
            .unwrap()
            .insert("extra".into(), serde_json::json!(1));
        assert!(presentation_from_json(&v.to_string()).is_err());
    }

    #[test]
    fn duplicate_key_rejected() {
        let text = r#"{
            "objects": ["*"],
            "one_cells": {"i": {"src": "*", "tgt": "*"}, "i": {"src": "*", "tgt": "*"}},
            "two_cells": {}, "id1": {}, "comp1": {}, "id2": {}, "vcomp": {},
            "lwhisker": {}, "rwhisker": {}, "lunitor": {}, "lunitor_inv": {},
            "runitor": {}, "runitor_inv": {}, "lassoc": {}, "lassoc_inv": {}
        }"#;
        assert!(presentation_from_json(text).is_err());
    }
}
