mod common;

use common::restriction::oracle;
use ibr_core::brauer::{analyze, auto_primes, GroupData, Restriction};
use ibr_core::catalog::{self, fixtures};
use ibr_core::lattice::{self, IntMatrix};
use ibr_core::{enumerate_subgroups, PermGroup, SubgroupEmbedding, SubgroupLimits};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn data(g: &PermGroup) -> GroupData {
    GroupData::new(g, 100_000).unwrap()
}

fn sub(g: &PermGroup, gens: Vec<ibr_core::Perm>) -> GroupData {
    data(SubgroupEmbedding::new(g, gens).unwrap().subgroup())
}

#[test]
fn a5_d10_index_from_minors() {
    let a5 = catalog::alternating(5).unwrap();
    let (g, h) = (data(&a5), sub(&a5, fixtures::a5_d10()));
    let o = oracle(&g, &h, 3, 1e7);
    assert_eq!(o.index, Some(BigInt::from(2)));
    assert!(o.coverage && o.injective);
    assert_eq!((o.r_g, o.r_h), (4, 4));
    let r = analyze(&g, &h, 3).unwrap();
    assert_eq!(r.image_index, Some(BigInt::from(2)));
    assert!(!r.isomorphism);
}

#[test]
fn fixtures_agree_with_oracle() {
    let a5 = catalog::alternating(5).unwrap();
    let g72 = catalog::g72();
    let cases = [
        (data(&a5), sub(&a5, fixtures::a5_s3()), 5),
        (data(&a5), sub(&a5, fixtures::a5_c5()), 2),
        (data(&a5), sub(&a5, fixtures::a5_a4()), 5),
        (data(&g72), sub(&g72, fixtures::g72_s3()), 2),
        (data(&g72), sub(&g72, fixtures::g72_translations()), 2),
    ];
    for (g, h, p) in &cases {
        let o = oracle(g, h, *p, 2e5);
        let r = analyze(g, h, *p).unwrap();
        assert_eq!(
            (r.r_g, r.r_h, r.coverage, r.injective),
            (o.r_g, o.r_h, o.coverage, o.injective)
        );
        if o.index.is_some() {
            assert_eq!(r.image_index, o.index, "|H| = {} p = {p}", h.order());
        }
    }
}

/// Every subgroup class of the small groups, every relevant prime, compared
/// against the oracle wherever the minors computation fits the budget.
#[test]
fn sweep_agrees_with_oracle() {
    let mut compared = 0;
    for g in [
        catalog::symmetric(3).unwrap(),
        catalog::alternating(4).unwrap(),
        catalog::dihedral(10).unwrap(),
        catalog::symmetric(4).unwrap(),
        catalog::alternating(5).unwrap(),
    ] {
        let gd = data(&g);
        for emb in enumerate_subgroups(&g, SubgroupLimits::default()).unwrap() {
            let hd = data(emb.subgroup());
            for p in auto_primes(gd.order() as u64) {
                let o = oracle(&gd, &hd, p, 3e4);
                let r = analyze(&gd, &hd, p).unwrap();
                assert_eq!(r.r_g, o.r_g);
                assert_eq!(r.r_h, o.r_h);
                assert_eq!(r.coverage, o.coverage);
                assert_eq!(r.injective, o.injective);
                assert!(r.invariant_violations().is_empty());
                if let Some(i) = &o.index {
                    assert_eq!(r.image_index.as_ref(), Some(i));
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 40, "only {compared} indices compared");
}

#[test]
fn index_is_independent_of_basis_order() {
    let a5 = catalog::alternating(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = data(&a5);
    for (gens, p) in [
        (fixtures::a5_d10(), 3),
        (fixtures::a5_s3(), 5),
        (fixtures::a5_a4(), 2),
    ] {
        let h = sub(&a5, gens);
        let res = Restriction::new(&g, &h, p).unwrap();
        let coeffs = res.restriction_coefficients().unwrap();
        let kernel = res.decomposition_kernel().basis;
        let expected = res.image_index().unwrap();
        for _ in 0..10 {
            let mut gi: Vec<usize> = (0..coeffs.rows()).collect();
            let mut hi: Vec<usize> = (0..coeffs.cols()).collect();
            gi.shuffle(&mut rng);
            hi.shuffle(&mut rng);
            let mut cols: Vec<Vec<BigInt>> = gi
                .iter()
                .map(|&i| hi.iter().map(|&j| coeffs[(i, j)].clone()).collect())
                .collect();
            for k in 0..kernel.cols() {
                cols.push(hi.iter().map(|&j| kernel[(j, k)].clone()).collect());
            }
            cols.shuffle(&mut rng);
            let gens = IntMatrix::from_columns(hi.len(), &cols);
            assert_eq!(lattice::lattice_index(&gens), expected);
            assert_eq!(lattice::lattice_index_snf(&gens), expected);
        }
    }
}

#[test]
fn coprime_injective_forces_whole_group() {
    for g in [
        catalog::symmetric(4).unwrap(),
        catalog::alternating(5).unwrap(),
        catalog::g72(),
    ] {
        let gd = data(&g);
        let n = gd.order() as u64;
        let p = (2..)
            .find(|p| !n.is_multiple_of(*p) && (2..*p).all(|d| p % d != 0))
            .unwrap();
        for emb in enumerate_subgroups(&g, SubgroupLimits::default()).unwrap() {
            let hd = data(emb.subgroup());
            let r = analyze(&gd, &hd, p).unwrap();
            assert_eq!(
                r.injective,
                hd.order() == gd.order(),
                "p = {p}, |H| = {}",
                hd.order()
            );
        }
    }
}

#[test]
fn decomposition_kernel_is_annihilated() {
    let a5 = catalog::alternating(5).unwrap();
    let g = data(&a5);
    for p in [2, 3, 5, 7] {
        let res = Restriction::new(&g, &g, p).unwrap();
        let k = res.decomposition_kernel();
        // |Irr| - r independent relations among the restricted characters
        assert_eq!(k.rank(), g.table().len() - res.context_g().r());
        let rows = ibr_core::brauer::brauer_lattice_rows(&g, res.context_g());
        for v in k.basis.columns() {
            for c in 0..res.context_g().r() {
                let s: ibr_core::Cyclotomic = rows
                    .iter()
                    .zip(&v)
                    .map(|(row, x)| {
                        row[c].scale(&num_rational::BigRational::from_integer(x.clone()))
                    })
                    .sum();
                assert!(s.is_zero());
            }
        }
        // the identity restriction is always an isomorphism
        assert!(res.is_isomorphism().unwrap());
    }
}

#[test]
fn report_round_trips_through_json() {
    let a5 = catalog::alternating(5).unwrap();
    let r = analyze(&data(&a5), &sub(&a5, fixtures::a5_d10()), 3).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"image_index\":\"2\""));
    let back: ibr_core::RestrictionReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}
