//! Standard permutation representations of small named groups.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Perm, MAX_DEGREE};

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::DegreeOverflow(n))
    } else {
        Ok(())
    }
}

fn cycle(n: usize, points: &[usize]) -> Perm {
    Perm::from_cycles(n, &[points.to_vec()]).expect("catalog cycle is valid")
}

/// Symmetric group on `n` points, generated by an `n`-cycle and a transposition.
pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("S0 is not supported".into()));
    }
    check_degree(n)?;
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let long: Vec<usize> = (1..=n).collect();
    PermGroup::new(n, vec![cycle(n, &long), cycle(n, &[1, 2])])
}

/// Alternating group on `n` points, generated by the 3-cycles `(1,2,i)`.
pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("A0 is not supported".into()));
    }
    check_degree(n)?;
    let gens = (3..=n).map(|i| cycle(n, &[1, 2, i])).collect();
    PermGroup::new(n, gens)
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("C0 is not supported".into()));
    }
    check_degree(n)?;
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let long: Vec<usize> = (1..=n).collect();
    PermGroup::new(n, vec![cycle(n, &long)])
}

/// Dihedral group of order `order` (= 2n), acting on the vertices of an n-gon.
/// Order 2 and 4 are realized as C2 on two points and the Klein four-group.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if order == 0 || !order.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "dihedral order must be a positive even number, got {order}"
        )));
    }
    let n = order / 2;
    check_degree(n.max(4))?;
    match n {
        1 => PermGroup::new(2, vec![cycle(2, &[1, 2])]),
        2 => PermGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]])?,
                Perm::from_cycles(4, &[vec![1, 3], vec![2, 4]])?,
            ],
        ),
        _ => {
            let rotation: Vec<usize> = (1..=n).collect();
            // i -> n + 2 - i, fixing 1
            let reflection: Vec<Vec<usize>> = (2..=n)
                .map(|i| (i, n + 2 - i))
                .filter(|&(i, j)| i < j)
                .map(|(i, j)| vec![i, j])
                .collect();
            PermGroup::new(
                n,
                vec![cycle(n, &rotation), Perm::from_cycles(n, &reflection)?],
            )
        }
    }
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (da, db) = (a.degree(), b.degree());
    check_degree(da + db)?;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(g.extended(da + db));
    }
    for g in b.generators() {
        let images: Vec<usize> = (0..da).chain(g.images().map(|x| x + da)).collect();
        gens.push(Perm::new(images)?);
    }
    PermGroup::new(da + db, gens)
}

/// Point label (zero-based) of `(x, y)` in `F3 x F3`.
fn f3_point(x: usize, y: usize) -> usize {
    (x % 3) + 3 * (y % 3)
}

fn f3_map(f: impl Fn(usize, usize) -> (usize, usize)) -> Perm {
    let mut images = vec![0; 9];
    for y in 0..3 {
        for x in 0..3 {
            let (u, v) = f(x, y);
            images[f3_point(x, y)] = f3_point(u, v);
        }
    }
    Perm::new(images).expect("affine map of F3^2 is a bijection")
}

/// Translation `(x, y) -> (x + 1, y)` on the nine points of `F3 x F3`.
pub fn g72_translation_x() -> Perm {
    f3_map(|x, y| (x + 1, y))
}

/// Translation `(x, y) -> (x, y + 1)`.
pub fn g72_translation_y() -> Perm {
    f3_map(|x, y| (x, y + 1))
}

/// The linear map `(x, y) -> (y, x + y)`, of order 8 in GL(2,3).
pub fn g72_rotation() -> Perm {
    f3_map(|x, y| (y, x + y))
}

/// The affine group `3^2 : 8` of order 72 on the points `1 + x + 3y` of
/// `F3 x F3`: translations extended by a cyclic subgroup of order 8 of GL(2,3)
/// acting regularly on the nonzero vectors.
pub fn g72() -> PermGroup {
    PermGroup::new(
        9,
        vec![g72_translation_x(), g72_translation_y(), g72_rotation()],
    )
    .expect("g72 generators are valid")
}

/// Named subgroups used by the worked examples.
pub mod fixtures {
    use super::*;

    fn gens(n: usize, list: &[&[&[usize]]]) -> Vec<Perm> {
        list.iter()
            .map(|cs| {
                let cs: Vec<Vec<usize>> = cs.iter().map(|c| c.to_vec()).collect();
                Perm::from_cycles(n, &cs).expect("fixture generator is valid")
            })
            .collect()
    }

    /// `D10 = <(1,2,3,4,5), (2,5)(3,4)>` inside A5.
    pub fn a5_d10() -> Vec<Perm> {
        gens(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]])
    }

    /// `S3 = <(1,2,3), (1,2)(4,5)>` inside A5.
    pub fn a5_s3() -> Vec<Perm> {
        gens(5, &[&[&[1, 2, 3]], &[&[1, 2], &[4, 5]]])
    }

    /// `C5 = <(1,2,3,4,5)>` inside A5.
    pub fn a5_c5() -> Vec<Perm> {
        gens(5, &[&[&[1, 2, 3, 4, 5]]])
    }

    /// Point stabilizer `A4 = <(1,2,3), (1,2)(3,4)>` inside A5.
    pub fn a5_a4() -> Vec<Perm> {
        gens(5, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])
    }

    /// `S3 = <t1, a^4>` inside G72, where `a^4 = -1` inverts the translation `t1`.
    pub fn g72_s3() -> Vec<Perm> {
        vec![g72_translation_x(), g72_rotation().pow(4)]
    }

    /// The normal subgroup of translations, elementary abelian of order 9.
    pub fn g72_translations() -> Vec<Perm> {
        vec![g72_translation_x(), g72_translation_y()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(1).unwrap().order_u64(), Some(1));
        assert_eq!(cyclic(6).unwrap().order_u64(), Some(6));
        assert_eq!(symmetric(1).unwrap().order_u64(), Some(1));
        assert_eq!(symmetric(4).unwrap().order_u64(), Some(24));
        assert_eq!(alternating(4).unwrap().order_u64(), Some(12));
        assert_eq!(alternating(5).unwrap().order_u64(), Some(60));
        assert_eq!(dihedral(2).unwrap().order_u64(), Some(2));
        assert_eq!(dihedral(4).unwrap().order_u64(), Some(4));
        assert_eq!(dihedral(10).unwrap().order_u64(), Some(10));
        assert_eq!(dihedral(12).unwrap().order_u64(), Some(12));
        let p = direct_product(&cyclic(2).unwrap(), &symmetric(3).unwrap()).unwrap();
        assert_eq!(p.order_u64(), Some(12));
        assert_eq!(p.degree(), 5);
    }

    #[test]
    fn dihedral_contains_rotation_of_order_n() {
        let d = dihedral(10).unwrap();
        let orders: Vec<u64> = d
            .elements(100)
            .unwrap()
            .iter()
            .map(|g| g.order_u64())
            .collect();
        assert!(orders.contains(&5));
    }

    #[test]
    fn invalid_parameters() {
        assert!(dihedral(7).is_err());
        assert!(cyclic(0).is_err());
        assert!(matches!(symmetric(20_000), Err(Error::DegreeOverflow(_))));
    }

    #[test]
    fn g72_defining_properties() {
        let g = g72();
        assert_eq!(g.order_u64(), Some(72));
        assert_eq!(g72_rotation().order_u64(), 8);
        let n = PermGroup::new(9, fixtures::g72_translations()).unwrap();
        assert_eq!(n.order_u64(), Some(9));
        assert!(n.is_normalized_by(&g));
        let s3 = PermGroup::new(9, fixtures::g72_s3()).unwrap();
        assert_eq!(s3.order_u64(), Some(6));
        assert!(s3.is_subgroup_of(&g));
    }
}
