//! Serde adapters for tables keyed by token tuples: JSON object keys are
//! the `;`-joined token lists used everywhere in the file formats.

use crate::cell::{join_key, split_key, CellId};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

pub mod key2 {
    use super::*;

    pub fn serialize<S: Serializer, V: Serialize>(
        map: &BTreeMap<(CellId, CellId), V>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let enc: BTreeMap<String, &V> = map
            .iter()
            .map(|((a, b), v)| (join_key([a, b]), v))
            .collect();
        enc.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(
        de: D,
    ) -> Result<BTreeMap<(CellId, CellId), V>, D::Error> {
        let enc: BTreeMap<String, V> = BTreeMap::deserialize(de)?;
        enc.into_iter()
            .map(|(k, v)| {
                let parts = split_key(&k, 2)
                    .ok_or_else(|| D::Error::custom(format!("key `{k}` is not a 2-token key")))?;
                Ok(((parts[0].clone(), parts[1].clone()), v))
            })
            .collect()
    }
}

pub mod key3 {
    #![allow(clippy::type_complexity)]
    use super::*;

    pub fn serialize<S: Serializer, V: Serialize>(
        map: &BTreeMap<(CellId, CellId, CellId), V>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let enc: BTreeMap<String, &V> = map
            .iter()
            .map(|((a, b, c), v)| (join_key([a, b, c]), v))
            .collect();
        enc.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(
        de: D,
    ) -> Result<BTreeMap<(CellId, CellId, CellId), V>, D::Error> {
        let enc: BTreeMap<String, V> = BTreeMap::deserialize(de)?;
        enc.into_iter()
            .map(|(k, v)| {
                let parts = split_key(&k, 3)
                    .ok_or_else(|| D::Error::custom(format!("key `{k}` is not a 3-token key")))?;
                Ok(((parts[0].clone(), parts[1].clone(), parts[2].clone()), v))
            })
            .collect()
    }
}
