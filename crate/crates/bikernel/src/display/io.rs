//! JSON file format for displayed presentations: base inline plus fiber
//! maps and displayed tables with `;`-joined composite keys.

use super::{DispBicatPresentation, DispObj, DispOne, DispTwo};
use crate::bicat::{presentation_from_json, presentation_to_json};
use crate::cell::{join_key, split_key, CellId};
use crate::error::{KernelError, Result};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn as_obj<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| KernelError::InvalidInput(format!("{what} must be a JSON object")))
}

fn as_str(v: &Value, what: &str) -> Result<CellId> {
    v.as_str()
        .map(CellId::from)
        .ok_or_else(|| KernelError::InvalidInput(format!("{what} must be a string")))
}

fn table1(v: &Value, what: &str) -> Result<BTreeMap<CellId, CellId>> {
    let mut out = BTreeMap::new();
    for (k, val) in as_obj(v, what)? {
        out.insert(CellId::from(k.as_str()), as_str(val, what)?);
    }
    Ok(out)
}

fn table2(v: &Value, what: &str) -> Result<BTreeMap<(CellId, CellId), CellId>> {
    let mut out = BTreeMap::new();
    for (k, val) in as_obj(v, what)? {
        let parts = split_key(k, 2)
            .ok_or_else(|| KernelError::InvalidInput(format!("{what}: bad key `{k}`")))?;
        out.insert((parts[0].clone(), parts[1].clone()), as_str(val, what)?);
    }
    Ok(out)
}

fn table3(v: &Value, what: &str) -> Result<BTreeMap<(CellId, CellId, CellId), CellId>> {
    let mut out = BTreeMap::new();
    for (k, val) in as_obj(v, what)? {
        let parts = split_key(k, 3)
            .ok_or_else(|| KernelError::InvalidInput(format!("{what}: bad key `{k}`")))?;
        out.insert(
            (parts[0].clone(), parts[1].clone(), parts[2].clone()),
            as_str(val, what)?,
        );
    }
    Ok(out)
}

const DISP_KEYS: [&str; 18] = [
    "base",
    "d0",
    "d1",
    "d2",
    "disp_id1",
    "disp_comp1",
    "disp_id2",
    "disp_vcomp",
    "disp_lwhisker",
    "disp_rwhisker",
    "disp_lunitor",
    "disp_lunitor_inv",
    "disp_runitor",
    "disp_runitor_inv",
    "disp_lassoc",
    "disp_lassoc_inv",
    "disp_id1_unused",
    "disp_comp1_unused",
];

/// Parses a displayed presentation document.
pub fn disp_from_json(text: &str) -> Result<DispBicatPresentation> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| KernelError::InvalidInput(format!("displayed presentation: {e}")))?;
    let obj = as_obj(&v, "displayed presentation")?;
    for k in obj.keys() {
        if !DISP_KEYS.contains(&k.as_str()) {
            return Err(KernelError::InvalidInput(format!("unknown key `{k}`")));
        }
    }
    let get = |k: &str| -> Result<&Value> {
        obj.get(k)
            .ok_or_else(|| KernelError::InvalidInput(format!("missing key `{k}`")))
    };

    let base = presentation_from_json(&get("base")?.to_string())?;
    let mut d = DispBicatPresentation {
        base,
        ..Default::default()
    };
    for (a, fiber) in as_obj(get("d0")?, "d0")? {
        let list = fiber
            .as_array()
            .ok_or_else(|| KernelError::InvalidInput("d0 fibers must be arrays".into()))?;
        for x in list {
            let x = as_str(x, "d0 token")?;
            if d
                .d0
                .insert(x.clone(), DispObj { over: CellId::from(a.as_str()) })
                .is_some()
            {
                return Err(KernelError::DuplicateId {
                    tier: "d0".into(),
                    token: x,
                });
            }
        }
    }
    for (key, fiber) in as_obj(get("d1")?, "d1")? {
        let parts = split_key(key, 3)
            .ok_or_else(|| KernelError::InvalidInput(format!("d1: bad key `{key}`")))?;
        let list = fiber
            .as_array()
            .ok_or_else(|| KernelError::InvalidInput("d1 fibers must be arrays".into()))?;
        for x in list {
            let x = as_str(x, "d1 token")?;
            if d
                .d1
                .insert(
                    x.clone(),
                    DispOne {
                        over: parts[0].clone(),
                        src: parts[1].clone(),
                        tgt: parts[2].clone(),
                    },
                )
                .is_some()
            {
                return Err(KernelError::DuplicateId {
                    tier: "d1".into(),
                    token: x,
                });
            }
        }
    }
    for (key, fiber) in as_obj(get("d2")?, "d2")? {
        let parts = split_key(key, 3)
            .ok_or_else(|| KernelError::InvalidInput(format!("d2: bad key `{key}`")))?;
        let list = fiber
            .as_array()
            .ok_or_else(|| KernelError::InvalidInput("d2 fibers must be arrays".into()))?;
        for x in list {
            let x = as_str(x, "d2 token")?;
            if d
                .d2
                .insert(
                    x.clone(),
                    DispTwo {
                        over: parts[0].clone(),
                        src: parts[1].clone(),
                        tgt: parts[2].clone(),
                    },
                )
                .is_some()
            {
                return Err(KernelError::DuplicateId {
                    tier: "d2".into(),
                    token: x,
                });
            }
        }
    }
    d.disp_id1 = table1(get("disp_id1")?, "disp_id1")?;
    d.disp_comp1 = table2(get("disp_comp1")?, "disp_comp1")?;
    d.disp_id2 = table1(get("disp_id2")?, "disp_id2")?;
    d.disp_vcomp = table2(get("disp_vcomp")?, "disp_vcomp")?;
    d.disp_lwhisker = table2(get("disp_lwhisker")?, "disp_lwhisker")?;
    d.disp_rwhisker = table2(get("disp_rwhisker")?, "disp_rwhisker")?;
    d.disp_lunitor = table1(get("disp_lunitor")?, "disp_lunitor")?;
    d.disp_lunitor_inv = table1(get("disp_lunitor_inv")?, "disp_lunitor_inv")?;
    d.disp_runitor = table1(get("disp_runitor")?, "disp_runitor")?;
    d.disp_runitor_inv = table1(get("disp_runitor_inv")?, "disp_runitor_inv")?;
    d.disp_lassoc = table3(get("disp_lassoc")?, "disp_lassoc")?;
    d.disp_lassoc_inv = table3(get("disp_lassoc_inv")?, "disp_lassoc_inv")?;
    Ok(d)
}

/// Serializes a displayed presentation to its document form.
pub fn disp_to_json(d: &DispBicatPresentation) -> String {
    let mut d0: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (x, c) in &d.d0 {
        d0.entry(c.over.0.clone()).or_default().push(x.0.clone());
    }
    let mut d1: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (x, c) in &d.d1 {
        d1.entry(join_key([&c.over, &c.src, &c.tgt]))
            .or_default()
            .push(x.0.clone());
    }
    let mut d2: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (x, c) in &d.d2 {
        d2.entry(join_key([&c.over, &c.src, &c.tgt]))
            .or_default()
            .push(x.0.clone());
    }
    let m1 = |m: &BTreeMap<CellId, CellId>| -> BTreeMap<String, String> {
        m.iter().map(|(k, v)| (k.0.clone(), v.0.clone())).collect()
    };
    let m2 = |m: &BTreeMap<(CellId, CellId), CellId>| -> BTreeMap<String, String> {
        m.iter()
            .map(|((a, b), v)| (join_key([a, b]), v.0.clone()))
            .collect()
    };
    let m3 = |m: &BTreeMap<(CellId, CellId, CellId), CellId>| -> BTreeMap<String, String> {
        m.iter()
            .map(|((a, b, c), v)| (join_key([a, b, c]), v.0.clone()))
            .collect()
    };
    let base: Value = serde_json::from_str(&presentation_to_json(&d.base)).expect("base json");
    serde_json::to_string_pretty(&json!({
        "base": base,
        "d0": d0,
        "d1": d1,
        "d2": d2,
        "disp_id1": m1(&d.disp_id1),
        "disp_comp1": m2(&d.disp_comp1),
        "disp_id2": m1(&d.disp_id2),
        "disp_vcomp": m2(&d.disp_vcomp),
        "disp_lwhisker": m2(&d.disp_lwhisker),
        "disp_rwhisker": m2(&d.disp_rwhisker),
        "disp_lunitor": m1(&d.disp_lunitor),
        "disp_lunitor_inv": m1(&d.disp_lunitor_inv),
        "disp_runitor": m1(&d.disp_runitor),
        "disp_runitor_inv": m1(&d.disp_runitor_inv),
        "disp_lassoc": m3(&d.disp_lassoc),
        "disp_lassoc_inv": m3(&d.disp_lassoc_inv),
    }))
    .expect("displayed presentation serializes")
}
