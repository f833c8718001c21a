//! Ordinary character tables by the Dixon-Schneider method.
//!
//! Class-sum multiplication matrices are diagonalized simultaneously over a
//! prime field `F_q` with `q = 1 (mod e)` and `q > 2 sqrt(|G|)`, where `e` is
//! the group exponent. Each common eigenvector yields a character modulo `q`;
//! its values are lifted to `Q(z_e)` by recovering, for every class, the
//! multiplicity of each eigenvalue `z^l` through the power maps. Those
//! multiplicities lie in `[0, chi(1)]` with `chi(1) < q / 2`, so the lift is
//! unique.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::classes::ClassList;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A class function: one value per conjugacy class, in class-list order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    classes: Arc<ClassList>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(classes: Arc<ClassList>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != classes.len() {
            return Err(Error::InvalidParameter(format!(
                "class function needs {} values, got {}",
                classes.len(),
                values.len()
            )));
        }
        Ok(ClassFunction { classes, values })
    }

    pub fn trivial(classes: Arc<ClassList>) -> Self {
        let values = vec![Cyclotomic::one(); classes.len()];
        ClassFunction { classes, values }
    }

    /// The permutation character of the regular representation.
    pub fn regular(classes: Arc<ClassList>) -> Self {
        let n = classes.order() as i64;
        let values = (0..classes.len())
            .map(|c| Cyclotomic::from_int(if c == 0 { n } else { 0 }))
            .collect();
        ClassFunction { classes, values }
    }

    pub fn classes(&self) -> &Arc<ClassList> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    fn same_group(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.classes, &other.classes)
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ClassFunction {
            classes: self.classes.clone(),
            values,
        })
    }

    pub fn scale(&self, k: &BigInt) -> ClassFunction {
        let q = Rational::from_integer(k.clone());
        ClassFunction {
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v.scale(&q)).collect(),
        }
    }

    /// Restriction to a subgroup whose classes fuse into ours via `fusion`.
    pub fn restrict(&self, subgroup: &Arc<ClassList>, fusion: &[usize]) -> ClassFunction {
        assert_eq!(fusion.len(), subgroup.len(), "fusion map length");
        ClassFunction {
            classes: subgroup.clone(),
            values: fusion.iter().map(|&c| self.values[c].clone()).collect(),
        }
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.values == other.values
    }
}

/// `(1/|G|) sum_K |K| a(g_K) conj(b(g_K))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    if !a.same_group(b) {
        return Err(Error::GroupMismatch);
    }
    let classes = &a.classes;
    let mut total = Cyclotomic::zero();
    for (k, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let term = (x * &y.conj()).scale(&rational::int(classes.classes()[k].size as i64));
        total = &total + &term;
    }
    Ok(total.scale(&rational::frac(1, classes.order() as i64)))
}

/// The irreducible characters of a group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: Arc<ClassList>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    modulus: u64,
}

impl CharacterTable {
    pub fn classes(&self) -> &Arc<ClassList> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// The prime used for the modular eigenspace computation.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.irreducibles[chi].values[class]
    }

    /// Coefficients of `f` in the basis of irreducibles. Each coefficient must
    /// be a rational integer and the combination must reproduce `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<BigInt>> {
        let coeffs = self
            .irreducibles
            .iter()
            .map(|psi| inner_product(f, psi)?.as_integer())
            .collect::<Result<Vec<_>>>()?;
        let mut rebuilt = vec![Cyclotomic::zero(); self.classes.len()];
        for (c, psi) in coeffs.iter().zip(&self.irreducibles) {
            if c.is_zero() {
                continue;
            }
            let q = Rational::from_integer(c.clone());
            for (slot, v) in rebuilt.iter_mut().zip(&psi.values) {
                *slot = &*slot + &v.scale(&q);
            }
        }
        if rebuilt != f.values {
            return Err(Error::NonIntegral(
                "class function is not in the span of the irreducibles".into(),
            ));
        }
        Ok(coeffs)
    }

    /// Serializable snapshot with textual values.
    pub fn dump(&self) -> TableDump {
        let classes = self.classes.classes();
        TableDump {
            order: self.classes.order(),
            conductor: self.classes.exponent(),
            classes: classes
                .iter()
                .map(|c| ClassHeader {
                    representative: c.representative.to_string(),
                    size: c.size,
                    element_order: c.element_order,
                })
                .collect(),
            degrees: self.degrees.clone(),
            rows: self
                .irreducibles
                .iter()
                .map(|chi| chi.values.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct ClassHeader {
    pub representative: String,
    pub size: usize,
    pub element_order: u64,
}

/// Machine-readable form of a character table.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct TableDump {
    pub order: usize,
    pub conductor: u64,
    pub classes: Vec<ClassHeader>,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<String>>,
}

// ---- arithmetic mod q ----

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, q);
        }
        a = mul_mod(a, a, q);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(q: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            factors.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1))
        .unwrap_or(1)
}

/// Qualifying moduli in increasing order: primes `q = 1 (mod e)` with `q^2 > 4n`.
fn moduli(exponent: u64, order: u64) -> impl Iterator<Item = u64> {
    (1u64..)
        .map(move |k| k * exponent + 1)
        .filter(move |&q| q as u128 * q as u128 > 4 * order as u128 && is_prime(q))
}

/// Reduced row echelon form over `F_q`, in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, q: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, q);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + q - mul_mod(y, f, q)) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis (as rows) of the nullspace of a square matrix over `F_q`.
fn nullspace(mut a: Vec<Vec<u64>>, q: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let pivots = rref(&mut a, q);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = (q - a[r][f]) % q;
            }
            v
        })
        .collect()
}

/// A subspace of `F_q^h`, given by an RREF basis.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn new(mut basis: Vec<Vec<u64>>, q: u64) -> Self {
        let pivots = rref(&mut basis, q);
        Space { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Class structure constants: `m[j][k][l] = #{x in C_j : x^-1 g_l in C_k}`.
fn class_matrices(classes: &ClassList) -> Vec<Vec<Vec<u64>>> {
    let h = classes.len();
    let elements = classes.elements();
    let reps: Vec<_> = classes
        .classes()
        .iter()
        .map(|c| c.representative.clone())
        .collect();
    let mut out = vec![vec![vec![0u64; h]; h]; h];
    for (j, m) in out.iter_mut().enumerate() {
        for &x in classes.members(j) {
            let xinv = elements[x].inverse();
            for (l, g) in reps.iter().enumerate() {
                let y = xinv.compose(g);
                let k = classes.class_of(&y).expect("product lies in the group");
                m[k][l] += 1;
            }
        }
    }
    out
}

/// Computes the character table of the group behind `classes`.
pub fn character_table(classes: Arc<ClassList>) -> Result<CharacterTable> {
    let n = classes.order() as u64;
    let e = classes.exponent();
    let matrices = class_matrices(&classes);
    let mut last_err = None;
    for q in moduli(e, n).take(8) {
        match table_mod(&classes, &matrices, q) {
            Ok(table) => return Ok(table),
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::TableFailure("no modulus available".into())))
}

fn split_spaces(matrices: &[Vec<Vec<u64>>], h: usize, q: u64) -> Result<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..h)
        .map(|i| (0..h).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![Space::new(identity, q)];
    // class 0 is the identity class, whose matrix is the identity
    for m in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.dim() == 1 {
                next.push(space);
                continue;
            }
            let d = space.dim();
            // restricted action: A[k][i] = (M b_i)[pivot_k]
            let images: Vec<Vec<u64>> = space
                .basis
                .iter()
                .map(|b| {
                    (0..h)
                        .map(|r| {
                            (0..h).fold(0u64, |acc, c| (acc + mul_mod(m[r][c] % q, b[c], q)) % q)
                        })
                        .collect()
                })
                .collect();
            let a: Vec<Vec<u64>> = (0..d)
                .map(|k| (0..d).map(|i| images[i][space.pivots[k]]).collect())
                .collect();
            let mut found = 0;
            let mut pieces = Vec::new();
            for lambda in 0..q {
                let shifted: Vec<Vec<u64>> = a
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(c, &x)| if r == c { (x + q - lambda) % q } else { x })
                            .collect()
                    })
                    .collect();
                let null = nullspace(shifted, q);
                if null.is_empty() {
                    continue;
                }
                found += null.len();
                let vectors: Vec<Vec<u64>> = null
                    .iter()
                    .map(|c| {
                        (0..h)
                            .map(|x| {
                                c.iter()
                                    .zip(&space.basis)
                                    .fold(0u64, |acc, (&ck, b)| (acc + mul_mod(ck, b[x], q)) % q)
                            })
                            .collect()
                    })
                    .collect();
                pieces.push(Space::new(vectors, q));
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::TableFailure(format!(
                    "class matrix not diagonalizable modulo {q}"
                )));
            }
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.dim() != 1) {
        return Err(Error::TableFailure(format!(
            "eigenspaces did not split modulo {q}"
        )));
    }
    Ok(spaces
        .into_iter()
        .map(|s| s.basis.into_iter().next().unwrap())
        .collect())
}

fn table_mod(
    classes: &Arc<ClassList>,
    matrices: &[Vec<Vec<u64>>],
    q: u64,
) -> Result<CharacterTable> {
    let h = classes.len();
    let n = classes.order() as u64;
    let e = classes.exponent();
    let sizes = classes.class_sizes();
    let inverse = classes.inverse_classes();
    let z = pow_mod(primitive_root(q), (q - 1) / e, q);

    // g_k^i classes, for i in 0..order(g_k)
    let powers: Vec<Vec<usize>> = (0..h)
        .map(|k| {
            let o = classes.classes()[k].element_order as i64;
            (0..o).map(|i| classes.power_class(k, i)).collect()
        })
        .collect();

    let vectors = split_spaces(matrices, h, q)?;
    let mut rows: Vec<(u64, ClassFunction)> = Vec::with_capacity(h);
    for v in vectors {
        if v[0] == 0 {
            return Err(Error::TableFailure(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let norm = inv_mod(v[0], q);
        let w: Vec<u64> = v.iter().map(|&x| mul_mod(x, norm, q)).collect();
        // sum_k w_k w_{k*} / |C_k| = |G| / chi(1)^2
        let s = (0..h).fold(0u64, |acc, k| {
            let t = mul_mod(
                mul_mod(w[k], w[inverse[k]], q),
                inv_mod(sizes[k] as u64 % q, q),
                q,
            );
            (acc + t) % q
        });
        if s == 0 {
            return Err(Error::TableFailure("degenerate norm".into()));
        }
        let target = mul_mod(n % q, inv_mod(s, q), q);
        let degree = (1..)
            .take_while(|d| d * d <= n)
            .find(|d| mul_mod(*d, *d, q) == target)
            .ok_or_else(|| Error::TableFailure(format!("no degree lifts modulo {q}")))?;
        let chi_mod: Vec<u64> = (0..h)
            .map(|k| mul_mod(mul_mod(w[k], degree, q), inv_mod(sizes[k] as u64 % q, q), q))
            .collect();

        let mut values = Vec::with_capacity(h);
        for k in 0..h {
            let o = classes.classes()[k].element_order;
            let zo = pow_mod(z, e / o, q);
            let o_inv = inv_mod(o % q, q);
            let mut counts = vec![0i64; e as usize];
            let mut total = 0u64;
            for l in 0..o {
                // m_l = (1/o) sum_i chi(g^i) zo^(-i l)
                let step = pow_mod(zo, (o - l) % o, q);
                let mut acc = 0u64;
                let mut root = 1u64;
                for i in 0..o as usize {
                    acc = (acc + mul_mod(chi_mod[powers[k][i]], root, q)) % q;
                    root = mul_mod(root, step, q);
                }
                let m = mul_mod(acc, o_inv, q);
                if m > degree {
                    return Err(Error::TableFailure(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree} modulo {q}"
                    )));
                }
                total += m;
                counts[(l * (e / o)) as usize] = m as i64;
            }
            if total != degree {
                return Err(Error::TableFailure(
                    "multiplicities do not sum to the degree".into(),
                ));
            }
            values.push(Cyclotomic::from_exponent_counts(e, &counts));
        }
        rows.push((
            degree,
            ClassFunction {
                classes: classes.clone(),
                values,
            },
        ));
    }

    let sum_sq: u64 = rows.iter().map(|(d, _)| d * d).sum();
    if sum_sq != n || rows.len() != h {
        return Err(Error::TableFailure(format!(
            "degrees do not satisfy sum of squares = {n} modulo {q}"
        )));
    }
    // degree ascending, then values descending, which puts the trivial
    // character first
    rows.sort_by(|(da, a), (db, b)| da.cmp(db).then_with(|| cmp_values(&b.values, &a.values)));
    let degrees = rows.iter().map(|(d, _)| *d).collect();
    Ok(CharacterTable {
        classes: classes.clone(),
        irreducibles: rows.into_iter().map(|(_, f)| f).collect(),
        degrees,
        modulus: q,
    })
}

fn cmp_values(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp_coeffs(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::PermGroup;

    fn table(g: &PermGroup) -> CharacterTable {
        character_table(Arc::new(ClassList::new(g, 100_000).unwrap())).unwrap()
    }

    fn ints(f: &ClassFunction) -> Vec<i64> {
        f.values()
            .iter()
            .map(|v| i64::try_from(v.as_integer().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn moduli_are_prime_and_large_enough() {
        let q: Vec<u64> = moduli(30, 60).take(3).collect();
        assert_eq!(q, vec![31, 61, 151]);
        assert_eq!(moduli(1, 1).next(), Some(3));
    }

    #[test]
    fn trivial_group_table() {
        let t = table(&catalog::cyclic(1).unwrap());
        assert_eq!(t.degrees(), &[1]);
        assert_eq!(t.value(0, 0), &Cyclotomic::one());
    }

    #[test]
    fn c2_table() {
        let t = table(&catalog::cyclic(2).unwrap());
        assert_eq!(ints(&t.irreducibles()[0]), vec![1, 1]);
        assert_eq!(ints(&t.irreducibles()[1]), vec![1, -1]);
    }

    #[test]
    fn s3_table() {
        let t = table(&catalog::symmetric(3).unwrap());
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // classes: identity, transpositions, 3-cycles
        assert_eq!(ints(&t.irreducibles()[2]), vec![2, 0, -1]);
    }

    #[test]
    fn a5_degrees_and_norms() {
        let t = table(&catalog::alternating(5).unwrap());
        assert_eq!(t.degrees(), &[1, 3, 3, 4, 5]);
        for chi in t.irreducibles() {
            assert_eq!(inner_product(chi, chi).unwrap(), Cyclotomic::one());
        }
        let golden = &Cyclotomic::root_of_unity(5, 1) + &Cyclotomic::root_of_unity(5, 4);
        let threes: Vec<&Cyclotomic> = (1..3).map(|i| t.value(i, 3)).collect();
        let minus_golden = -&golden;
        let other = &golden + &Cyclotomic::one();
        assert!(threes.contains(&&minus_golden) && threes.contains(&&other));
    }

    #[test]
    fn trivial_and_regular_characters() {
        let g = catalog::symmetric(4).unwrap();
        let cl = Arc::new(ClassList::new(&g, 100).unwrap());
        let t = character_table(cl.clone()).unwrap();
        let triv = ClassFunction::trivial(cl.clone());
        let reg = ClassFunction::regular(cl.clone());
        assert_eq!(inner_product(&triv, &reg).unwrap(), Cyclotomic::one());
        let coeffs = t.decompose(&reg).unwrap();
        let degrees: Vec<BigInt> = t.degrees().iter().map(|&d| BigInt::from(d)).collect();
        assert_eq!(coeffs, degrees);
        let sum = t
            .irreducibles()
            .iter()
            .skip(1)
            .try_fold(t.irreducibles()[0].clone(), |acc, chi| acc.add(chi))
            .unwrap();
        assert_eq!(t.decompose(&sum).unwrap(), vec![BigInt::from(1); t.len()]);
        for (j, psi) in t.irreducibles().iter().enumerate() {
            let e: Vec<BigInt> = (0..t.len())
                .map(|i| BigInt::from(u8::from(i == j)))
                .collect();
            assert_eq!(t.decompose(psi).unwrap(), e);
        }
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = Arc::new(ClassList::new(&catalog::cyclic(2).unwrap(), 10).unwrap());
        let b = Arc::new(ClassList::new(&catalog::cyclic(2).unwrap(), 10).unwrap());
        let f = ClassFunction::trivial(a);
        let g = ClassFunction::trivial(b);
        assert_eq!(inner_product(&f, &g), Err(Error::GroupMismatch));
    }

    #[test]
    fn non_characters_fail_to_decompose() {
        let cl = Arc::new(ClassList::new(&catalog::cyclic(2).unwrap(), 10).unwrap());
        let t = character_table(cl.clone()).unwrap();
        let half = ClassFunction::new(cl, vec![Cyclotomic::one(), Cyclotomic::zero()]).unwrap();
        assert!(matches!(t.decompose(&half), Err(Error::NonIntegral(_))));
    }
}
