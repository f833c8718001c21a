//! Analysis of every subgroup class of a group against a list of primes.

use serde::{Deserialize, Serialize};

use crate::brauer::{self, GroupData, RestrictionReport};
use crate::error::Result;
use crate::group::DEFAULT_ENUMERATION_CAP;
use crate::spec::gens_spec;
use crate::subgroups::{enumerate_subgroups_in, SubgroupEmbedding, SubgroupLimits};

#[derive(Clone, Debug, Default)]
pub struct SweepConfig {
    /// Explicit primes, or `None` for the primes dividing `|G|` plus the
    /// smallest prime that does not.
    pub primes: Option<Vec<u64>>,
    pub limits: SubgroupLimits,
}

impl SweepConfig {
    pub fn primes_for(&self, order: u64) -> Vec<u64> {
        match &self.primes {
            Some(p) => p.clone(),
            None => brauer::auto_primes(order),
        }
    }
}

/// One `(subgroup class, prime)` result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub subgroup_index: usize,
    pub subgroup: String,
    pub is_whole_group: bool,
    #[serde(flatten)]
    pub report: RestrictionReport,
    /// Injective with `r_G = r_H` on a proper subgroup.
    pub candidate: bool,
}

/// Rows for one subgroup, one per prime.
pub fn subgroup_rows(
    g: &GroupData,
    index: usize,
    emb: &SubgroupEmbedding,
    primes: &[u64],
) -> Result<Vec<SweepRow>> {
    let h = GroupData::new(emb.subgroup(), DEFAULT_ENUMERATION_CAP)?;
    let whole = h.order() == g.order();
    primes
        .iter()
        .map(|&p| {
            let report = brauer::analyze(g, &h, p)?;
            Ok(SweepRow {
                subgroup_index: index,
                subgroup: gens_spec(emb.subgroup().generators()),
                is_whole_group: whole,
                candidate: !whole && report.injective && report.r_g == report.r_h,
                report,
            })
        })
        .collect()
}

/// The subgroup classes a sweep visits, in canonical order.
pub fn sweep_subgroups(g: &GroupData, cfg: &SweepConfig) -> Result<Vec<SubgroupEmbedding>> {
    enumerate_subgroups_in(g.classes(), cfg.limits)
}

/// Runs the sweep sequentially. Rows are ordered by subgroup class, then prime.
pub fn sweep(g: &GroupData, cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let primes = cfg.primes_for(g.order() as u64);
    let subgroups = sweep_subgroups(g, cfg)?;
    let mut rows = Vec::new();
    for (i, emb) in subgroups.iter().enumerate() {
        rows.extend(subgroup_rows(g, i, emb, &primes)?);
    }
    Ok(rows)
}
