//! The worked examples as executable checks.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::brauer::{analyze, GroupData, RestrictionReport};
use crate::catalog::{self, fixtures};
use crate::error::Result;
use crate::group::{PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::perm::Perm;
use crate::subgroups::SubgroupEmbedding;
use crate::sweep::{sweep, SweepConfig};

/// Index of the image of restriction for `(A5, D10, 3)`.
pub const A5_D10_INDEX: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn data(g: &PermGroup) -> Result<GroupData> {
    GroupData::new(g, DEFAULT_ENUMERATION_CAP)
}

fn subgroup(g: &PermGroup, gens: Vec<Perm>) -> Result<GroupData> {
    data(SubgroupEmbedding::new(g, gens)?.subgroup())
}

fn brief(r: &RestrictionReport) -> String {
    format!(
        "coverage={} injective={} bijection={} r_G={} r_H={} index={} isomorphism={}",
        r.coverage,
        r.injective,
        r.class_meet_bijection,
        r.r_g,
        r.r_h,
        r.image_index
            .as_ref()
            .map_or("none".to_string(), ToString::to_string),
        r.isomorphism
    )
}

/// Properties of the order-72 group: order 72, an element of order 8, a normal
/// elementary abelian subgroup of order 9 that is its own centralizer.
pub fn g72_invariants(g: &PermGroup) -> Vec<(&'static str, bool)> {
    let elements = g.elements(1000).unwrap_or_default();
    let translations = fixtures::g72_translations();
    let n = PermGroup::new(g.degree(), translations.clone()).expect("valid generators");
    let n_elements = n.elements(100).unwrap_or_default();
    let elementary = n_elements
        .iter()
        .all(|x| x.is_identity() || x.order_u64() == 3)
        && translations[0].compose(&translations[1]) == translations[1].compose(&translations[0]);
    let centralizer = elements
        .iter()
        .filter(|x| translations.iter().all(|t| x.compose(t) == t.compose(x)))
        .count();
    vec![
        ("order 72", g.order_u64() == Some(72)),
        (
            "element of order 8",
            elements.iter().any(|x| x.order_u64() == 8),
        ),
        (
            "normal elementary abelian subgroup of order 9",
            n.order_u64() == Some(9) && n.is_subgroup_of(g) && n.is_normalized_by(g) && elementary,
        ),
        ("translations are self-centralizing", centralizer == 9),
    ]
}

/// Runs the fixtures and the equivalence sweeps over `S4` and `A5`.
pub fn run() -> Result<Summary> {
    let mut summary = Summary::default();

    let a5 = catalog::alternating(5)?;
    let a5_data = data(&a5)?;

    let d10 = subgroup(&a5, fixtures::a5_d10())?;
    let r = analyze(&a5_data, &d10, 3)?;
    let ok = r.coverage
        && r.injective
        && r.class_meet_bijection
        && r.r_g == 4
        && r.r_h == 4
        && r.image_index == Some(BigInt::from(A5_D10_INDEX))
        && !r.isomorphism;
    summary.push(
        "A5 > D10, p = 3: injective, bijective on classes, index 2",
        ok,
        brief(&r),
    );

    let s3 = subgroup(&a5, fixtures::a5_s3())?;
    let r = analyze(&a5_data, &s3, 5)?;
    let ok = r.injective && r.coverage && r.r_g == 3 && r.r_h == 3;
    summary.push(
        "A5 > S3, p = 5: injective with r_G = r_H = 3",
        ok,
        brief(&r),
    );

    let g72 = catalog::g72();
    for (name, ok) in g72_invariants(&g72) {
        summary.push(&format!("G72: {name}"), ok, String::new());
    }
    let g72_data = data(&g72)?;
    let g72_s3 = subgroup(&g72, fixtures::g72_s3())?;
    let r = analyze(&g72_data, &g72_s3, 2)?;
    let ok = r.coverage && r.injective && g72_s3.order() == 6;
    summary.push("G72 > S3, p = 2: covering and injective", ok, brief(&r));

    let c6 = data(&catalog::cyclic(6)?)?;
    let r = analyze(&c6, &c6, 5)?;
    let ok = r.isomorphism && r.image_index == Some(BigInt::from(1));
    summary.push("C6 = C6, p = 5: identity is an isomorphism", ok, brief(&r));

    for (name, group) in [("S4", catalog::symmetric(4)?), ("A5", a5.clone())] {
        let g = data(&group)?;
        let rows = sweep(&g, &SweepConfig::default())?;
        let bad: Vec<String> = rows
            .iter()
            .filter(|row| !row.report.invariant_violations().is_empty())
            .map(|row| format!("{} p={}", row.subgroup, row.report.prime))
            .collect();
        summary.push(
            &format!("{name}: coverage agrees with injectivity on every subgroup class"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} triples", rows.len())
            } else {
                format!("violations: {}", bad.join(", "))
            },
        );
    }
    Ok(summary)
}
