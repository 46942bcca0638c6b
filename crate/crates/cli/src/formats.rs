//! JSON wire formats: morphisms, presheaves, reports.
//!
//! Morphisms serialize as `"1"` at level 0 and as
//! `{"alpha": [a0,...,am], "blocks": [[mor,...],...]}` above; sizes are
//! inferred from the declared domain and codomain objects, so parsing is
//! always situated.  At level 1 a bare value list such as `[0,0,1]` is
//! also accepted and read as a monotone map.
//!
//! Presheaves serialize as
//! `{"level", "max_degree", "elements": {objText: [pointName,...]},
//!   "action": [{"dom", "cod", "mor", "map"}, ...]}`
//! where an action entry for `mor: dom -> cod` maps the points of the
//! codomain's set to points of the domain's set (presheaves are
//! contravariant).  The action list must cover every morphism between
//! bounded objects; the loader reports omissions, duplicates, unknown
//! names, and functor-law violations.  Emission is canonical: objects in
//! canonical order, action entries ordered by (dom, cod, morphism), maps
//! keyed in codomain point order.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use thetakit_core::presheaf::{Presheaf, PresheafMap};
use thetakit_core::term::{MonotoneMap, MorphismTerm, ObjectTerm};
use thetakit_core::trunc::Truncation;
use thetakit_core::verify::VerificationReport;

pub fn morphism_to_json(m: &MorphismTerm) -> Value {
    if m.is_trivial() {
        return Value::String("1".to_string());
    }
    let alpha: Vec<Value> = m.alpha().values().iter().map(|&v| json!(v)).collect();
    let blocks: Vec<Value> = m
        .blocks()
        .iter()
        .map(|block| Value::Array(block.iter().map(morphism_to_json).collect()))
        .collect();
    let mut obj = Map::new();
    obj.insert("alpha".to_string(), Value::Array(alpha));
    obj.insert("blocks".to_string(), Value::Array(blocks));
    Value::Object(obj)
}

fn is_trivial_literal(v: &Value) -> bool {
    match v {
        Value::String(s) => s == "1",
        Value::Number(n) => n.as_u64() == Some(1),
        _ => false,
    }
}

pub fn morphism_from_json(v: &Value, dom: &ObjectTerm, cod: &ObjectTerm) -> Result<MorphismTerm> {
    if dom.level() == 0 {
        if is_trivial_literal(v) {
            return Ok(MorphismTerm::trivial());
        }
        bail!("expected the trivial morphism literal \"1\", found {v}");
    }
    // bare value list: a monotone map, legal exactly at level 1
    if let Value::Array(values) = v {
        if dom.level() != 1 {
            bail!(
                "bare value lists denote level-1 morphisms, not level {}",
                dom.level()
            );
        }
        let values: Vec<u32> = values
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| anyhow!("monotone map values must be small naturals"))
            })
            .collect::<Result<_>>()?;
        let map = MonotoneMap::new(values, cod.arity() as u32)
            .map_err(|e| anyhow!("invalid monotone map: {e}"))?;
        let term = thetakit_core::delta::wrap_map(&map);
        term.check_against(dom, cod)
            .map_err(|e| anyhow!("monotone map does not fit {} -> {}: {e}", dom, cod))?;
        return Ok(term);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| anyhow!("expected a morphism object, found {v}"))?;
    let alpha_values: Vec<u32> = obj
        .get("alpha")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("morphism is missing \"alpha\""))?
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| anyhow!("alpha values must be small naturals"))
        })
        .collect::<Result<_>>()?;
    let alpha = MonotoneMap::new(alpha_values, cod.arity() as u32)
        .map_err(|e| anyhow!("invalid alpha: {e}"))?;
    let blocks_json = obj
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("morphism is missing \"blocks\""))?;
    if blocks_json.len() != dom.arity() {
        bail!(
            "expected {} blocks for domain {}, found {}",
            dom.arity(),
            dom,
            blocks_json.len()
        );
    }
    let mut blocks = Vec::with_capacity(blocks_json.len());
    for (i, block) in blocks_json.iter().enumerate() {
        let entries = block
            .as_array()
            .ok_or_else(|| anyhow!("block {} is not an array", i + 1))?;
        let lo = alpha.value(i as u32) as usize;
        let expected = alpha.value(i as u32 + 1) as usize - lo;
        if entries.len() != expected {
            bail!(
                "block {} should have {} components per alpha, found {}",
                i + 1,
                expected,
                entries.len()
            );
        }
        let mut parsed = Vec::with_capacity(entries.len());
        for (j, entry) in entries.iter().enumerate() {
            parsed.push(morphism_from_json(
                entry,
                &dom.children()[i],
                &cod.children()[lo + j],
            )?);
        }
        blocks.push(parsed);
    }
    let term = MorphismTerm::node(dom.level(), alpha, blocks)
        .map_err(|e| anyhow!("invalid morphism: {e}"))?;
    term.check_against(dom, cod)
        .map_err(|e| anyhow!("morphism does not fit {dom} -> {cod}: {e}"))?;
    Ok(term)
}

pub fn presheaf_to_json(trunc: &Truncation<'_>, x: &Presheaf) -> Value {
    let mut elements = Map::new();
    for c in 0..trunc.object_count() {
        elements.insert(
            trunc.object(c).render(),
            Value::Array(x.names(c).iter().map(|n| json!(n)).collect()),
        );
    }
    let mut action = Vec::new();
    for a in 0..trunc.object_count() {
        for b in 0..trunc.object_count() {
            for (m, mor) in trunc.hom(a, b).iter().enumerate() {
                let mut map = Map::new();
                for p in 0..x.size(b) as u32 {
                    map.insert(
                        x.name(b, p).to_string(),
                        json!(x.name(a, x.apply(a, b, m, p))),
                    );
                }
                let mut entry = Map::new();
                entry.insert("dom".to_string(), json!(trunc.object(a).render()));
                entry.insert("cod".to_string(), json!(trunc.object(b).render()));
                entry.insert("mor".to_string(), morphism_to_json(mor));
                entry.insert("map".to_string(), Value::Object(map));
                action.push(Value::Object(entry));
            }
        }
    }
    let mut root = Map::new();
    root.insert("level".to_string(), json!(trunc.level()));
    root.insert("max_degree".to_string(), json!(trunc.max_degree()));
    root.insert("elements".to_string(), Value::Object(elements));
    root.insert("action".to_string(), Value::Array(action));
    Value::Object(root)
}

/// Header of a presheaf file, read before the oracle is constructed.
pub fn presheaf_json_header(v: &Value) -> Result<(u32, u32)> {
    let obj = v
        .as_object()
        .ok_or_else(|| anyhow!("presheaf file must be a JSON object"))?;
    let level = obj
        .get("level")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("presheaf file is missing \"level\""))? as u32;
    let max_degree =
        obj.get("max_degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| anyhow!("presheaf file is missing \"max_degree\""))? as u32;
    Ok((level, max_degree))
}

pub fn presheaf_from_json(trunc: &Truncation<'_>, v: &Value) -> Result<Presheaf> {
    let (level, max_degree) = presheaf_json_header(v)?;
    if level != trunc.level() || max_degree != trunc.max_degree() {
        bail!(
            "presheaf is tabulated at level {level}, max_degree {max_degree}; the active truncation is level {}, max_degree {}",
            trunc.level(),
            trunc.max_degree()
        );
    }
    let obj = v.as_object().unwrap();
    let elements = obj
        .get("elements")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("presheaf file is missing \"elements\""))?;
    let n = trunc.object_count();
    let mut names: Vec<Vec<String>> = Vec::with_capacity(n);
    for c in 0..n {
        let key = trunc.object(c).render();
        let list = elements
            .get(&key)
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("elements are missing object {key}"))?;
        let mut stage = Vec::with_capacity(list.len());
        for name in list {
            let name = name
                .as_str()
                .ok_or_else(|| anyhow!("point names must be strings (object {key})"))?;
            if stage.iter().any(|s: &String| s == name) {
                bail!("duplicate point name {name:?} at object {key}");
            }
            stage.push(name.to_string());
        }
        names.push(stage);
    }
    for key in elements.keys() {
        if (0..n).all(|c| trunc.object(c).render() != *key) {
            bail!("elements mention unknown object {key}");
        }
    }

    let entries = obj
        .get("action")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("presheaf file is missing \"action\""))?;
    let mut action: Vec<Vec<Vec<Option<Vec<u32>>>>> = (0..n)
        .map(|a| (0..n).map(|b| vec![None; trunc.hom(a, b).len()]).collect())
        .collect();
    for entry in entries {
        let entry = entry
            .as_object()
            .ok_or_else(|| anyhow!("action entries must be objects"))?;
        let dom_text = entry
            .get("dom")
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("action entry is missing \"dom\""))?;
        let cod_text = entry
            .get("cod")
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("action entry is missing \"cod\""))?;
        let dom = thetakit_core::parse::parse_object(dom_text, trunc.level())
            .map_err(|e| anyhow!("bad dom {dom_text:?}: {e}"))?;
        let cod = thetakit_core::parse::parse_object(cod_text, trunc.level())
            .map_err(|e| anyhow!("bad cod {cod_text:?}: {e}"))?;
        let a = trunc
            .object_index(&dom)
            .map_err(|e| anyhow!("dom outside the truncation: {e}"))?;
        let b = trunc
            .object_index(&cod)
            .map_err(|e| anyhow!("cod outside the truncation: {e}"))?;
        let mor = morphism_from_json(
            entry
                .get("mor")
                .ok_or_else(|| anyhow!("action entry is missing \"mor\""))?,
            &dom,
            &cod,
        )?;
        let m = trunc.hom_index(a, b, &mor).map_err(|_| {
            anyhow!(
                "morphism {} is not in hom({dom_text},{cod_text})",
                mor.render_name()
            )
        })?;
        if action[a][b][m].is_some() {
            bail!(
                "duplicate action entry for {} : {dom_text} -> {cod_text}",
                mor.render_name()
            );
        }
        let map = entry
            .get("map")
            .and_then(Value::as_object)
            .ok_or_else(|| anyhow!("action entry is missing \"map\""))?;
        let mut table = Vec::with_capacity(names[b].len());
        for source_name in &names[b] {
            let target_name = map
                .get(source_name)
                .and_then(Value::as_str)
                .ok_or_else(|| {
                    anyhow!(
                        "map for {} is missing point {source_name:?}",
                        mor.render_name()
                    )
                })?;
            let q = names[a]
                .iter()
                .position(|s| s == target_name)
                .ok_or_else(|| {
                    anyhow!(
                        "map for {} sends {source_name:?} to unknown point {target_name:?}",
                        mor.render_name()
                    )
                })?;
            table.push(q as u32);
        }
        if map.len() != names[b].len() {
            bail!(
                "map for {} : {dom_text} -> {cod_text} mentions unknown points",
                mor.render_name()
            );
        }
        action[a][b][m] = Some(table);
    }
    // completeness: every morphism between bounded objects must be covered
    let mut filled: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(n);
    for (a, row) in action.into_iter().enumerate() {
        let mut filled_row = Vec::with_capacity(n);
        for (b, tables) in row.into_iter().enumerate() {
            let mut filled_tables = Vec::with_capacity(tables.len());
            for (m, table) in tables.into_iter().enumerate() {
                match table {
                    Some(t) => filled_tables.push(t),
                    None => bail!(
                        "action omits morphism {} : {} -> {}",
                        trunc.hom(a, b)[m].render_name(),
                        trunc.object(a).render(),
                        trunc.object(b).render()
                    ),
                }
            }
            filled_row.push(filled_tables);
        }
        filled.push(filled_row);
    }
    let presheaf = Presheaf::from_parts(trunc, names, filled)
        .map_err(|e| anyhow!("inconsistent presheaf data: {e}"))?;
    presheaf
        .validate(trunc)
        .map_err(|v| anyhow!("presheaf violates the functor laws: {v:?}"))?;
    Ok(presheaf)
}

/// Match the points of `x` into `y` by equal names, yielding the induced
/// map.  Used by the relative-latching command, where maps are given as a
/// pair of files sharing point names.
pub fn map_by_names(trunc: &Truncation<'_>, x: &Presheaf, y: &Presheaf) -> Result<PresheafMap> {
    let mut components = Vec::with_capacity(trunc.object_count());
    for c in 0..trunc.object_count() {
        let mut comp = Vec::with_capacity(x.size(c));
        for p in 0..x.size(c) as u32 {
            let name = x.name(c, p);
            let q = y.names(c).iter().position(|s| s == name).with_context(|| {
                format!(
                    "point {name:?} of {} has no name-matched image",
                    trunc.object(c).render()
                )
            })?;
            comp.push(q as u32);
        }
        components.push(comp);
    }
    let map = PresheafMap { components };
    map.validate(trunc, x, y)
        .map_err(|v| anyhow!("name-matched map is not natural: {v:?}"))?;
    Ok(map)
}

pub fn report_to_json(report: &VerificationReport) -> Value {
    let items: Vec<Value> = report
        .items
        .iter()
        .map(|i| {
            json!({
                "name": i.name,
                "passed": i.passed(),
                "examined": i.examined,
                "violations": i.violations,
                "advisory": i.advisory,
            })
        })
        .collect();
    let witnesses: Vec<Value> = report
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "item": w.item,
                "message": w.message,
                "terms": w.terms.iter().map(|(l, t)| json!({"label": l, "term": t})).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "check": report.check,
        "oracle": report.oracle,
        "max_degree": report.max_degree,
        "valence": report.valence,
        "passed": report.passed(),
        "items": items,
        "witnesses": witnesses,
        "notes": report.notes,
    })
}
