//! Permutation groups given by generators, with a stabilizer chain for
//! order and membership.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: Vec<Option<Perm>>,
    inverse_transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverse_transversal: vec![None; degree],
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.inverse_transversal = vec![None; degree];
        let id = Perm::identity(degree);
        self.transversal[self.base] = Some(id.clone());
        self.inverse_transversal[self.base] = Some(id);
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().compose(s);
                    self.inverse_transversal[y] = Some(u.inverse());
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// Stabilizer chain built by deterministic Schreier-Sims.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Perm]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            if chain.levels.is_empty() {
                chain
                    .levels
                    .push(Level::new(g.first_moved().unwrap(), degree));
            }
            chain.levels[0].gens.push(g.clone());
        }
        if chain.levels.is_empty() {
            return chain;
        }
        chain.levels[0].rebuild_orbit();

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = chain.levels[lvl].orbit.clone();
            let gens = chain.levels[lvl].gens.clone();
            for &x in &orbit {
                for s in &gens {
                    let level = &chain.levels[lvl];
                    let y = s.apply(x);
                    let schreier = level.transversal[x]
                        .as_ref()
                        .unwrap()
                        .compose(s)
                        .compose(level.inverse_transversal[y].as_ref().unwrap());
                    let (residue, fail) = chain.strip(schreier, lvl + 1);
                    if fail < chain.levels.len() || !residue.is_identity() {
                        if fail == chain.levels.len() {
                            let base = residue.first_moved().unwrap();
                            chain.levels.push(Level::new(base, degree));
                        }
                        for l in lvl + 1..=fail {
                            chain.levels[l].gens.push(residue.clone());
                            chain.levels[l].rebuild_orbit();
                        }
                        i = fail as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
        chain
    }

    /// Sifts `g` through the levels starting at `from`. Returns the residue and
    /// the index of the level where sifting stopped (`levels.len()` if it
    /// passed every level).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (idx, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.apply(level.base);
            match &level.inverse_transversal[x] {
                Some(inv) => g = g.compose(inv),
                None => return (g, idx),
            }
        }
        (g, self.levels.len())
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() > self.degree {
            // points beyond the group's degree must be fixed
            if (self.degree..g.degree()).any(|x| g.apply(x) != x) {
                return false;
            }
        }
        let g = if g.degree() < self.degree {
            g.extended(self.degree)
        } else if g.degree() > self.degree {
            Perm::new(g.images().take(self.degree).collect()).expect("restriction of a permutation")
        } else {
            g.clone()
        };
        let (residue, _) = self.strip(g, 0);
        residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}

/// A permutation group on `{1..degree}` given by generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// The group generated by `generators`, all padded to a common degree of
    /// at least `degree`.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        let degree = generators
            .iter()
            .map(Perm::degree)
            .max()
            .unwrap_or(0)
            .max(degree)
            .max(1);
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow(degree));
        }
        let generators = generators
            .into_iter()
            .map(|g| {
                if g.degree() < degree {
                    g.extended(degree)
                } else {
                    g
                }
            })
            .collect();
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group within degree cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn stabilizer_chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.stabilizer_chain().order()
    }

    /// Order as a machine integer if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.stabilizer_chain().contains(g)
    }

    /// All elements in breadth-first order from the identity.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "enumeration",
                size: order.to_string(),
                cap,
            });
        }
        Ok(closure(self.identity(), &self.generators))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self, cap: usize) -> Result<u64> {
        let elements = self.elements(cap)?;
        Ok(elements
            .iter()
            .fold(1u64, |acc, g| num_integer::lcm(acc, g.order_u64())))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by every generator of `ambient`.
    pub fn is_normalized_by(&self, ambient: &PermGroup) -> bool {
        ambient.generators.iter().all(|x| {
            self.generators
                .iter()
                .all(|g| self.contains(&g.conjugate_by(x)))
        })
    }
}

/// Closure of `{start}` under right multiplication by `gens`.
pub(crate) fn closure(start: Perm, gens: &[Perm]) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.compose(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out
}
