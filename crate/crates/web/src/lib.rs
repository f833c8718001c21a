//! Browser entry points. Each export takes plain strings and returns a JSON
//! document, or throws a string error.
//!
//! The work happens in the `*_json` functions, which are ordinary Rust and are
//! tested natively.

use ibr_core::brauer::{self, GroupData, RestrictionReport};
use ibr_core::sweep::{self, SweepConfig, SweepRow};
use ibr_core::{parse_group_spec, parse_subgroup_spec, SubgroupLimits};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Browser runs are single-threaded, so keep them small.
pub const MAX_ORDER: usize = 2000;
pub const MAX_SUBGROUPS: usize = 500;

#[derive(Serialize)]
struct Analysis<'a> {
    group: &'a str,
    subgroup: &'a str,
    #[serde(flatten)]
    report: RestrictionReport,
}

#[derive(Serialize)]
struct Sweep<'a> {
    group: &'a str,
    primes: Vec<u64>,
    rows: Vec<SweepRow>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn data(spec: &str) -> Result<(ibr_core::PermGroup, GroupData), String> {
    let g = parse_group_spec(spec).map_err(err)?;
    let d = GroupData::new(&g, MAX_ORDER).map_err(err)?;
    Ok((g, d))
}

pub fn analyze_json(group: &str, subgroup: &str, prime: u32) -> Result<String, String> {
    let (g, gd) = data(group)?;
    let emb = parse_subgroup_spec(&g, subgroup).map_err(err)?;
    let hd = GroupData::new(emb.subgroup(), MAX_ORDER).map_err(err)?;
    let report = brauer::analyze(&gd, &hd, u64::from(prime)).map_err(err)?;
    serde_json::to_string(&Analysis {
        group,
        subgroup,
        report,
    })
    .map_err(err)
}

pub fn table_json(group: &str) -> Result<String, String> {
    let (_, gd) = data(group)?;
    serde_json::to_string(&gd.table().dump()).map_err(err)
}

/// `primes` is a comma-separated list; empty means the automatic choice.
pub fn sweep_json(group: &str, primes: &str) -> Result<String, String> {
    let (_, gd) = data(group)?;
    let explicit = if primes.trim().is_empty() {
        None
    } else {
        Some(
            primes
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| format!("bad prime '{}'", p.trim()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        )
    };
    let cfg = SweepConfig {
        primes: explicit,
        limits: SubgroupLimits {
            max_order: MAX_ORDER,
            max_subgroups: MAX_SUBGROUPS,
        },
    };
    let rows = sweep::sweep(&gd, &cfg).map_err(err)?;
    serde_json::to_string(&Sweep {
        group,
        primes: cfg.primes_for(gd.order() as u64),
        rows,
    })
    .map_err(err)
}

#[wasm_bindgen]
pub fn analyze(group: &str, subgroup: &str, prime: u32) -> Result<String, JsValue> {
    analyze_json(group, subgroup, prime).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn character_table(group: &str) -> Result<String, JsValue> {
    table_json(group).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sweep(group: &str, primes: &str) -> Result<String, JsValue> {
    sweep_json(group, primes).map_err(|e| JsValue::from_str(&e))
}
