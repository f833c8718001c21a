//! Restriction of generalized Brauer characters along a subgroup embedding.
//!
//! `Z[IBr(G)]` is never built from irreducible Brauer characters. It is the
//! integer span of the ordinary irreducible characters restricted to the
//! `p`-regular classes, which is exactly the image of the decomposition map.
//! Injectivity of restriction is then a rank question over `Q(z_e)`, and the
//! index of the image in `Z[IBr(H)]` is computed in `Z[Irr(H)]` modulo the
//! kernel of the decomposition map of `H`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chartab::{self, CharacterTable};
use crate::classes::ClassList;
use crate::cyclotomic::{self, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{self, IntMatrix, LatticeBasis};
use crate::subgroups::{class_fusion, SubgroupEmbedding};

/// A group together with its classes and ordinary character table.
#[derive(Clone, Debug)]
pub struct GroupData {
    group: PermGroup,
    classes: Arc<ClassList>,
    table: CharacterTable,
}

impl GroupData {
    /// Enumerates the group (up to `cap` elements) and computes its table.
    pub fn new(group: &PermGroup, cap: usize) -> Result<Self> {
        let classes = Arc::new(ClassList::new(group, cap)?);
        let table = chartab::character_table(classes.clone())?;
        Ok(GroupData {
            group: group.clone(),
            classes,
            table,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassList> {
        &self.classes
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.classes.order()
    }
}

/// The `p`-regular classes of a group.
#[derive(Clone, Debug)]
pub struct BrauerContext {
    classes: Arc<ClassList>,
    prime: u64,
    regular: Vec<usize>,
}

impl BrauerContext {
    pub fn new(classes: &Arc<ClassList>, prime: u64) -> Result<Self> {
        if !chartab::is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let regular = classes
            .classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.element_order % prime != 0)
            .map(|(i, _)| i)
            .collect();
        Ok(BrauerContext {
            classes: classes.clone(),
            prime,
            regular,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Indices of the `p`-regular classes, in class-list order.
    pub fn regular_classes(&self) -> &[usize] {
        &self.regular
    }

    /// `|IBr(G)|`, the number of `p`-regular classes.
    pub fn r(&self) -> usize {
        self.regular.len()
    }

    pub fn is_regular(&self, class: usize) -> bool {
        self.regular.binary_search(&class).is_ok()
    }

    pub fn classes(&self) -> &Arc<ClassList> {
        &self.classes
    }
}

/// `p_regular_classes(G, p)`.
pub fn p_regular_classes(classes: &Arc<ClassList>, prime: u64) -> Result<BrauerContext> {
    BrauerContext::new(classes, prime)
}

/// The character table restricted to `p`-regular classes: rows `Irr(G)`,
/// columns the `p`-regular classes. Its integer row span is `Z[IBr(G)]`.
pub fn brauer_lattice_rows(data: &GroupData, ctx: &BrauerContext) -> Vec<Vec<Cyclotomic>> {
    data.table
        .irreducibles()
        .iter()
        .map(|chi| ctx.regular.iter().map(|&c| chi.value(c).clone()).collect())
        .collect()
}

/// Saturated basis of the kernel of `Z[Irr(H)] -> Z[IBr(H)]`, as vectors of
/// coefficients on `Irr(H)`.
pub fn decomposition_kernel(data: &GroupData, ctx: &BrauerContext) -> LatticeBasis {
    let table = &data.table;
    let rows = brauer_lattice_rows(data, ctx);
    // one integer row per (class, power-basis coordinate)
    let mut coords: Vec<Vec<BigInt>> = Vec::new();
    for (j, _) in ctx.regular.iter().enumerate() {
        let width = rows.first().map_or(0, |r| r[j].coeffs().len());
        for t in 0..width {
            coords.push(
                rows.iter()
                    .map(|row| {
                        let c = &row[j].coeffs()[t];
                        assert!(c.is_integer(), "character values are algebraic integers");
                        c.to_integer()
                    })
                    .collect(),
            );
        }
    }
    let m = if coords.is_empty() {
        IntMatrix::zeros(0, table.len())
    } else {
        IntMatrix::from_rows(&coords)
    };
    lattice::integer_kernel(&m)
}

/// One `(G, H, p)` triple with everything needed to answer the restriction
/// questions.
pub struct Restriction<'a> {
    g: &'a GroupData,
    h: &'a GroupData,
    fusion: Vec<usize>,
    ctx_g: BrauerContext,
    ctx_h: BrauerContext,
}

impl<'a> Restriction<'a> {
    /// `h` must be a subgroup of `g` on the same points.
    pub fn new(g: &'a GroupData, h: &'a GroupData, prime: u64) -> Result<Self> {
        let fusion = class_fusion(&g.classes, &h.classes)?;
        Ok(Restriction {
            g,
            h,
            fusion,
            ctx_g: BrauerContext::new(&g.classes, prime)?,
            ctx_h: BrauerContext::new(&h.classes, prime)?,
        })
    }

    pub fn prime(&self) -> u64 {
        self.ctx_g.prime
    }

    pub fn fusion(&self) -> &[usize] {
        &self.fusion
    }

    pub fn context_g(&self) -> &BrauerContext {
        &self.ctx_g
    }

    pub fn context_h(&self) -> &BrauerContext {
        &self.ctx_h
    }

    /// Every `p`-regular class of `G` meets `H`, read off the class fusion.
    pub fn coverage_criterion(&self) -> bool {
        let hit: Vec<bool> = {
            let mut hit = vec![false; self.g.classes.len()];
            for &c in &self.ctx_h.regular {
                hit[self.fusion[c]] = true;
            }
            hit
        };
        self.ctx_g.regular.iter().all(|&k| hit[k])
    }

    /// `chi_i` evaluated at the representatives of the `p`-regular classes of `H`.
    pub fn restriction_matrix(&self) -> Vec<Vec<Cyclotomic>> {
        let table = &self.g.table;
        table
            .irreducibles()
            .iter()
            .map(|chi| {
                self.ctx_h
                    .regular
                    .iter()
                    .map(|&c| chi.value(self.fusion[c]).clone())
                    .collect()
            })
            .collect()
    }

    /// Rank over `Q(z_e)` of the restriction matrix.
    pub fn image_rank(&self) -> usize {
        cyclotomic::rank(&self.restriction_matrix())
    }

    /// Injective iff the restricted rows still span a space of dimension `r_G`.
    pub fn is_injective(&self) -> bool {
        self.image_rank() == self.ctx_g.r()
    }

    /// Coverage and injectivity agree; the two sides share no code.
    pub fn theorem_a_consistent(&self) -> bool {
        self.coverage_criterion() == self.is_injective()
    }

    /// Whether fusion restricted to `p`-regular classes is a bijection onto the
    /// `p`-regular classes of `G`, i.e. `K -> K cap H` is a bijection.
    pub fn class_meet_bijection(&self) -> bool {
        let mut hits = vec![0usize; self.g.classes.len()];
        for &c in &self.ctx_h.regular {
            hits[self.fusion[c]] += 1;
        }
        self.ctx_g.regular.iter().all(|&k| hits[k] == 1)
    }

    /// `<chi_i|_H, psi_j>` for `chi_i in Irr(G)`, `psi_j in Irr(H)`.
    pub fn restriction_coefficients(&self) -> Result<IntMatrix> {
        let rows = self
            .g
            .table
            .irreducibles()
            .iter()
            .map(|chi| {
                self.h
                    .table
                    .decompose(&chi.restrict(&self.h.classes, &self.fusion))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_rows(&rows))
    }

    pub fn decomposition_kernel(&self) -> LatticeBasis {
        decomposition_kernel(self.h, &self.ctx_h)
    }

    /// `[Z[IBr(H)] : Res(Z[IBr(G)])]`, or `None` when the image has lower rank.
    pub fn image_index(&self) -> Result<Option<BigInt>> {
        let coeffs = self.restriction_coefficients()?;
        let kernel = self.decomposition_kernel();
        let gens = coeffs.transpose().hstack(&kernel.basis);
        Ok(lattice::lattice_index(&gens))
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_injective()
            && self.ctx_g.r() == self.ctx_h.r()
            && self.image_index()? == Some(BigInt::one()))
    }

    pub fn report(&self) -> Result<RestrictionReport> {
        let coverage = self.coverage_criterion();
        let injective = self.is_injective();
        let image_index = self.image_index()?;
        let r_g = self.ctx_g.r();
        let r_h = self.ctx_h.r();
        let isomorphism = injective && r_g == r_h && image_index == Some(BigInt::one());
        Ok(RestrictionReport {
            group_order: self.g.order() as u64,
            subgroup_order: self.h.order() as u64,
            prime: self.prime(),
            r_g,
            r_h,
            coverage,
            injective,
            theorem_a_consistent: coverage == injective,
            class_meet_bijection: self.class_meet_bijection(),
            image_index,
            isomorphism,
        })
    }
}

/// Every verdict for one `(G, H, p)` triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub group_order: u64,
    pub subgroup_order: u64,
    pub prime: u64,
    pub r_g: usize,
    pub r_h: usize,
    pub coverage: bool,
    pub injective: bool,
    pub theorem_a_consistent: bool,
    pub class_meet_bijection: bool,
    #[serde(with = "decimal_opt")]
    pub image_index: Option<BigInt>,
    pub isomorphism: bool,
}

impl RestrictionReport {
    /// Relations that must hold for every triple.
    pub fn invariant_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.theorem_a_consistent || self.coverage != self.injective {
            out.push("coverage criterion disagrees with injectivity");
        }
        if self.isomorphism && !(self.injective && self.image_index == Some(BigInt::one())) {
            out.push("isomorphism without injectivity and index 1");
        }
        if self.isomorphism && !self.class_meet_bijection {
            out.push("isomorphism without a bijection of p-regular classes");
        }
        if self.injective && self.r_g > self.r_h {
            out.push("injective restriction with r_G > r_H");
        }
        if self.injective != self.image_index.is_some() && self.r_g == self.r_h {
            out.push("image index finiteness disagrees with injectivity");
        }
        out
    }
}

mod decimal_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => s.serialize_some(&n.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Full analysis of `(G, H, p)`.
pub fn analyze(g: &GroupData, h: &GroupData, prime: u64) -> Result<RestrictionReport> {
    Restriction::new(g, h, prime)?.report()
}

/// Builds the subgroup's data from an embedding and analyzes it.
pub fn analyze_embedding(
    g: &GroupData,
    emb: &SubgroupEmbedding,
    prime: u64,
    cap: usize,
) -> Result<RestrictionReport> {
    let h = GroupData::new(emb.subgroup(), cap)?;
    analyze(g, &h, prime)
}

/// Primes dividing `n`, in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The primes dividing `n` followed by the smallest prime not dividing `n`.
pub fn auto_primes(n: u64) -> Vec<u64> {
    let mut primes = prime_divisors(n);
    let coprime = (2..)
        .find(|&p| chartab::is_prime(p) && !n.is_multiple_of(p))
        .expect("infinitely many primes");
    primes.push(coprime);
    primes
}

/// `[Z^n : span]` helper used by reports: zero when the index is infinite.
pub fn index_or_zero(index: &Option<BigInt>) -> BigInt {
    index.clone().unwrap_or_else(BigInt::zero)
}
