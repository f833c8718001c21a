//! Conjugacy classes of an enumerated permutation group, with power maps and
//! class lookup for arbitrary elements.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Perm;

/// One conjugacy class, identified by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    #[serde(serialize_with = "serialize_perm")]
    pub representative: Perm,
    pub size: usize,
    pub element_order: u64,
}

fn serialize_perm<S: serde::Serializer>(p: &Perm, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// The conjugacy classes of a group together with its element list.
///
/// Classes are ordered by (element order, class size, least image sequence of
/// the representative); the representative is the least element of its class
/// under the same image-sequence order, so class 0 is always the identity.
#[derive(Clone, Debug)]
pub struct ClassList {
    group: PermGroup,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    members: Vec<Vec<usize>>,
    exponent: u64,
}

impl ClassList {
    /// Enumerates `group` (up to `cap` elements) and splits it into classes
    /// by orbits of the conjugation action of the generators.
    pub fn new(group: &PermGroup, cap: usize) -> Result<Self> {
        let elements = group.elements(cap)?;
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();

        let n = elements.len();
        let mut raw_class = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            raw_class[start] = id;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let g = &elements[orbit[i]];
                for x in group.generators() {
                    let c = index[&g.conjugate_by(x)];
                    if raw_class[c] == usize::MAX {
                        raw_class[c] = id;
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            orbits.push(orbit);
        }

        let mut keyed: Vec<(u64, usize, Perm, Vec<usize>)> = orbits
            .into_iter()
            .map(|mut orbit| {
                orbit.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
                let rep = elements[orbit[0]].clone();
                (rep.order_u64(), orbit.len(), rep, orbit)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));

        let mut class_of = vec![0; n];
        let mut classes = Vec::with_capacity(keyed.len());
        let mut members = Vec::with_capacity(keyed.len());
        let mut exponent = 1u64;
        for (ci, (order, size, rep, orbit)) in keyed.into_iter().enumerate() {
            for &e in &orbit {
                class_of[e] = ci;
            }
            exponent = num_integer::lcm(exponent, order);
            classes.push(ConjugacyClass {
                representative: rep,
                size,
                element_order: order,
            });
            members.push(orbit);
        }

        Ok(ClassList {
            group: group.clone(),
            elements,
            index,
            class_of,
            classes,
            members,
            exponent,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Indices (into [`elements`](Self::elements)) of the members of class `c`.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn element_index(&self, g: &Perm) -> Option<usize> {
        if g.degree() == self.group.degree() {
            self.index.get(g).copied()
        } else if g.degree() < self.group.degree() {
            self.index.get(&g.extended(self.group.degree())).copied()
        } else {
            None
        }
    }

    /// Class containing `g`, or `None` when `g` is not in the group.
    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of[i])
    }

    pub fn class_of_index(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let g = self.classes[c].representative.pow(k);
        self.class_of[self.index[&g]]
    }

    /// The power map `c -> class(g_c^k)` for every class.
    pub fn power_map(&self, k: i64) -> Vec<usize> {
        (0..self.len()).map(|c| self.power_class(c, k)).collect()
    }

    /// Class of inverses.
    pub fn inverse_classes(&self) -> Vec<usize> {
        self.power_map(-1)
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Centralizer order of the representative of class `c`.
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.classes[c].size
    }
}
