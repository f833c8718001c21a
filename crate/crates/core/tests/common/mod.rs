//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's elimination routines.
#![allow(dead_code, clippy::needless_range_loop)]

use ibr_core::lattice::{self, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Determinant by Gaussian elimination over the rationals.
pub fn rational_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all `k x k` minors of `rows` (0 if they all vanish).
pub fn minors_gcd(rows: &[Vec<BigInt>], k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    let col_sets = combinations(n, k);
    for rs in combinations(m, k) {
        for cs in &col_sets {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                .collect();
            g = g.gcd(&rational_det(&sub));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Rank over the rationals by elimination.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let n = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let pivot = a[rank][c].clone();
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for j in c..n {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rows_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

/// Every lattice invariant for one matrix, as `(name, holds)` pairs.
pub fn lattice_invariants(m: &IntMatrix) -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();
    let smith = lattice::snf(m);
    let (s, u, v) = (&smith.s, &smith.u, &smith.v);
    out.push(("U*M*V = S", u.mul(m).mul(v) == *s));
    out.push(("U unimodular", rational_det(&rows_of(u)).abs().is_one()));
    out.push(("V unimodular", rational_det(&rows_of(v)).abs().is_one()));
    let diagonal = (0..s.rows()).all(|i| (0..s.cols()).all(|j| i == j || s[(i, j)].is_zero()));
    out.push(("S diagonal", diagonal));
    let d: Vec<BigInt> = (0..s.rows().min(s.cols()))
        .map(|i| s[(i, i)].clone())
        .collect();
    let divides = d.windows(2).all(|w| {
        !w[0].is_negative() && (w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])))
    });
    out.push(("S divisibility chain", divides));
    // determinantal divisors: d_1 ... d_k = gcd of k x k minors
    let rows = rows_of(m);
    let rank = rational_rank(&rows);
    let inv = smith.invariants();
    out.push(("SNF rank", inv.len() == rank));
    if m.rows().max(m.cols()) <= 6 {
        let mut prod = BigInt::one();
        let mut ok = true;
        for (k, dk) in inv.iter().enumerate() {
            prod *= dk;
            ok &= minors_gcd(&rows, k + 1) == prod;
        }
        out.push(("SNF determinantal divisors", ok));
    }

    let h = lattice::hnf(m);
    out.push(("HNF idempotent", lattice::hnf(&h) == h));
    out.push(("HNF rank", h.cols() == rank));
    let l = lattice::LatticeBasis::spanned_by(m);
    let same = m.columns().iter().all(|c| l.contains(c))
        && h.columns().iter().all(|c| coefficients_exist(m, c));
    out.push(("HNF spans the same lattice", same));

    let ker = lattice::integer_kernel(m);
    out.push((
        "kernel annihilated",
        m.mul(&ker.basis).is_zero() || ker.is_empty(),
    ));
    out.push(("kernel rank", ker.rank() == m.cols() - rank));
    let saturated = ker.is_empty() || minors_gcd(&rows_of(&ker.basis), ker.rank()).is_one();
    out.push(("kernel saturated", saturated));
    out.push((
        "saturate fixes kernel",
        lattice::saturate(&ker.basis) == ker || ker.is_empty(),
    ));
    out
}

/// Whether `target` is an integer combination of the columns of `m`, decided
/// through the Smith form.
fn coefficients_exist(m: &IntMatrix, target: &[BigInt]) -> bool {
    // U M V = S, so M x = t  iff  S y = U t with x = V y
    let smith = lattice::snf(m);
    let ut = smith.u.mul_vec(target);
    (0..ut.len()).all(|i| {
        let d = if i < smith.s.cols() {
            smith.s[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            ut[i].is_zero()
        } else {
            ut[i].is_multiple_of(&d)
        }
    })
}

pub mod restriction {
    use super::*;
    use ibr_core::brauer::GroupData;
    use ibr_core::cyclotomic::{totient, Cyclotomic};
    use ibr_core::subgroups::class_meet_sizes;

    /// Verdicts for one triple computed without the library's restriction code.
    #[derive(Debug, PartialEq, Eq)]
    pub struct Oracle {
        pub r_g: usize,
        pub r_h: usize,
        pub coverage: bool,
        pub injective: bool,
        /// `None` when the minors budget was exceeded or the image is not full rank.
        pub index: Option<BigInt>,
    }

    fn regular(data: &GroupData, p: u64) -> Vec<usize> {
        let cl = data.classes();
        (0..cl.len())
            .filter(|&k| !cl.classes()[k].element_order.is_multiple_of(p))
            .collect()
    }

    fn coords(values: &[Cyclotomic], e: u64) -> Vec<BigInt> {
        let width = totient(e) as usize;
        let mut out = Vec::new();
        for v in values {
            let w = v.with_conductor(e).expect("value lies in Q(z_e)");
            for t in 0..width {
                let c = w.coeffs().get(t).cloned().unwrap_or_default();
                assert!(c.is_integer());
                out.push(c.to_integer());
            }
        }
        out
    }

    fn dedup_columns(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = rows.first().map_or(0, Vec::len);
        let mut cols: Vec<Vec<BigInt>> = (0..n)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>())
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .map(|c| {
                // sign-normalise, since negated columns give the same minors up to sign
                let neg = c.iter().find(|x| !x.is_zero()).unwrap().is_negative();
                if neg {
                    c.iter().map(|x| -x).collect()
                } else {
                    c
                }
            })
            .collect();
        cols.sort();
        cols.dedup();
        (0..rows.len())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    pub fn oracle(g: &GroupData, h: &GroupData, p: u64, minor_budget: f64) -> Oracle {
        let (gcl, hcl) = (g.classes(), h.classes());
        let (reg_g, reg_h) = (regular(g, p), regular(h, p));
        let meets = class_meet_sizes(gcl, hcl);
        let coverage = reg_g.iter().all(|&k| meets[k] > 0);
        let e = hcl.exponent();

        let restricted: Vec<Vec<BigInt>> = g
            .table()
            .irreducibles()
            .iter()
            .map(|chi| {
                let vals: Vec<Cyclotomic> = reg_h
                    .iter()
                    .map(|&c| {
                        let rep = &hcl.classes()[c].representative;
                        chi.value(gcl.class_of(rep).unwrap()).clone()
                    })
                    .collect();
                coords(&vals, e)
            })
            .collect();
        let psi: Vec<Vec<BigInt>> = h
            .table()
            .irreducibles()
            .iter()
            .map(|chi| {
                coords(
                    &reg_h
                        .iter()
                        .map(|&c| chi.value(c).clone())
                        .collect::<Vec<_>>(),
                    e,
                )
            })
            .collect();
        let rank = rational_rank(&restricted);
        let injective = rank == reg_g.len();

        let r = reg_h.len();
        let mut index = None;
        if rank == r {
            let mut both = restricted.clone();
            both.extend(psi.iter().cloned());
            let reduced = dedup_columns(&both);
            let (img, lat) = reduced.split_at(restricted.len());
            let n = reduced[0].len();
            let cost = binom(n, r) * (binom(img.len(), r) + binom(lat.len(), r));
            if cost <= minor_budget {
                let top = minors_gcd(img, r);
                let bottom = minors_gcd(lat, r);
                assert!(top.is_multiple_of(&bottom));
                index = Some(top / bottom);
            }
        }
        Oracle {
            r_g: reg_g.len(),
            r_h: r,
            coverage,
            injective,
            index,
        }
    }
}
