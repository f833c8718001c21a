//! Subgroup embeddings, class fusion and enumeration of subgroups up to
//! conjugacy.

use std::collections::{HashMap, HashSet};

use crate::classes::ClassList;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A subgroup `H` of an ambient group `G`, on the same points.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    ambient: PermGroup,
    subgroup: PermGroup,
}

impl SubgroupEmbedding {
    /// `<gens>` as a subgroup of `ambient`. Every generator must lie in `ambient`.
    pub fn new(ambient: &PermGroup, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() > ambient.degree() || !ambient.contains(g) {
                return Err(Error::NotInGroup(g.to_string()));
            }
        }
        let subgroup = PermGroup::new(ambient.degree(), gens)?;
        Ok(SubgroupEmbedding {
            ambient: ambient.clone(),
            subgroup,
        })
    }

    /// Embeds an already constructed group, checking its generators.
    pub fn from_group(ambient: &PermGroup, subgroup: &PermGroup) -> Result<Self> {
        SubgroupEmbedding::new(ambient, subgroup.generators().to_vec())
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }
}

/// For each class of `h`, the class of `g` containing its representative.
///
/// Returns `NotInGroup` if some representative of `h` is not an element of `g`.
pub fn class_fusion(g: &ClassList, h: &ClassList) -> Result<Vec<usize>> {
    h.classes()
        .iter()
        .map(|c| {
            g.class_of(&c.representative)
                .ok_or_else(|| Error::NotInGroup(c.representative.to_string()))
        })
        .collect()
}

/// Caps for [`enumerate_subgroups`].
#[derive(Clone, Copy, Debug)]
pub struct SubgroupLimits {
    pub max_order: usize,
    pub max_subgroups: usize,
}

impl Default for SubgroupLimits {
    fn default() -> Self {
        SubgroupLimits {
            max_order: 2000,
            max_subgroups: 10_000,
        }
    }
}

/// Multiplication and inversion tables over the element indices of a [`ClassList`].
struct Cayley {
    n: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
}

impl Cayley {
    fn new(classes: &ClassList) -> Self {
        let elements = classes.elements();
        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mult[i * n + j] = classes.element_index(&a.compose(b)).unwrap() as u32;
            }
        }
        let inv = elements
            .iter()
            .map(|a| classes.element_index(&a.inverse()).unwrap() as u32)
            .collect();
        Cayley { n, mult, inv }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b] as usize
    }

    /// Elements of the subgroup generated by `gens`, as a bitset.
    fn closure(&self, gens: &[usize]) -> Vec<u64> {
        let mut set = vec![0u64; self.n.div_ceil(64)];
        let mut list = vec![0usize];
        set[0] |= 1;
        let identity = 0;
        debug_assert_eq!(self.mul(identity, identity), identity);
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for &s in gens {
                let b = self.mul(a, s);
                if set[b / 64] & (1 << (b % 64)) == 0 {
                    set[b / 64] |= 1 << (b % 64);
                    list.push(b);
                }
            }
            i += 1;
        }
        set
    }

    fn conjugate(&self, set: &[u64], x: usize) -> Vec<u64> {
        let mut out = vec![0u64; set.len()];
        let xi = self.inv[x] as usize;
        for k in bits(set) {
            let c = self.mul(self.mul(xi, k), x);
            out[c / 64] |= 1 << (c % 64);
        }
        out
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        (0..64)
            .filter(move |b| word & (1 << b) != 0)
            .map(move |b| w * 64 + b)
    })
}

fn contains(set: &[u64], i: usize) -> bool {
    set[i / 64] & (1 << (i % 64)) != 0
}

/// One representative per conjugacy class of subgroups of `group`, sorted by
/// order and then by the (enumeration-index) element set.
///
/// Classes are found by growing every known subgroup `H` by one element from
/// each right coset of `H`; any subgroup is reached from a chain of such
/// one-element extensions, and conjugate results are merged through a lookup
/// of all conjugate element sets.
pub fn enumerate_subgroups(
    group: &PermGroup,
    limits: SubgroupLimits,
) -> Result<Vec<SubgroupEmbedding>> {
    let classes = ClassList::new(group, limits.max_order)?;
    enumerate_subgroups_in(&classes, limits)
}

/// As [`enumerate_subgroups`], reusing an existing class list.
pub fn enumerate_subgroups_in(
    classes: &ClassList,
    limits: SubgroupLimits,
) -> Result<Vec<SubgroupEmbedding>> {
    let n = classes.order();
    if n > limits.max_order {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration order",
            size: n.to_string(),
            cap: limits.max_order,
        });
    }
    let cayley = Cayley::new(classes);

    struct Found {
        set: Vec<u64>,
        gens: Vec<usize>,
        order: usize,
    }
    let mut found: Vec<Found> = Vec::new();
    let mut lookup: HashSet<Vec<u64>> = HashSet::new();

    let register = |set: Vec<u64>,
                    gens: Vec<usize>,
                    found: &mut Vec<Found>,
                    lookup: &mut HashSet<Vec<u64>>|
     -> Result<()> {
        if found.len() >= limits.max_subgroups {
            return Err(Error::CapExceeded {
                what: "subgroup count",
                size: (found.len() + 1).to_string(),
                cap: limits.max_subgroups,
            });
        }
        for x in 0..n {
            lookup.insert(cayley.conjugate(&set, x));
        }
        let order = bits(&set).count();
        found.push(Found { set, gens, order });
        Ok(())
    };

    register(cayley.closure(&[]), Vec::new(), &mut found, &mut lookup)?;
    let mut next = 0;
    while next < found.len() {
        let (base_set, base_gens) = (found[next].set.clone(), found[next].gens.clone());
        let mut covered = base_set.clone();
        for g in 0..n {
            if contains(&covered, g) {
                continue;
            }
            // mark the right coset H g
            for h in bits(&base_set).collect::<Vec<_>>() {
                let c = cayley.mul(h, g);
                covered[c / 64] |= 1 << (c % 64);
            }
            let mut gens = base_gens.clone();
            gens.push(g);
            let set = cayley.closure(&gens);
            if lookup.contains(&set) {
                continue;
            }
            register(set, gens, &mut found, &mut lookup)?;
        }
        next += 1;
    }

    found.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| bits(&a.set).cmp(bits(&b.set)))
    });
    let ambient = classes.group();
    found
        .into_iter()
        .map(|f| {
            let gens = f
                .gens
                .iter()
                .map(|&i| classes.elements()[i].clone())
                .collect();
            SubgroupEmbedding::new(ambient, gens)
        })
        .collect()
}

/// Element counts of `K ∩ H` for every class `K` of `g`, by direct intersection.
pub fn class_meet_sizes(g: &ClassList, h: &ClassList) -> Vec<usize> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for e in h.elements() {
        if let Some(c) = g.class_of(e) {
            *counts.entry(c).or_default() += 1;
        }
    }
    (0..g.len())
        .map(|c| counts.get(&c).copied().unwrap_or(0))
        .collect()
}
