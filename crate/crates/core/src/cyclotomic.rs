//! Exact arithmetic in cyclotomic fields `Q(z_e)`.
//!
//! An element of conductor `e` is stored by its coordinates in the power basis
//! `1, z, ..., z^(phi(e)-1)` modulo the `e`-th cyclotomic polynomial. Mixed
//! conductors are lifted to their lcm; nothing is compressed back unless
//! [`Cyclotomic::with_conductor`] is asked to.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u64, Rc<[i64]>>> = RefCell::new(HashMap::new());
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Rc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = divide_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    let rc: Rc<[i64]> = poly.into();
    PHI_CACHE.with(|c| c.borrow_mut().insert(n, rc.clone()));
    rc
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let t = rem[i + dn];
        quot[i] = t;
        if t != 0 {
            for (j, &c) in den.iter().enumerate() {
                rem[i + j] -= t * c;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn reduce_mod_phi(mut poly: Vec<Rational>, e: u64) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(e);
    let d = phi.len() - 1;
    if poly.len() <= d {
        poly.resize(d, Rational::zero());
        return poly;
    }
    for i in (d..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let t = std::mem::take(&mut poly[i]);
        for (j, &c) in phi[..d].iter().enumerate() {
            if c != 0 {
                poly[i - d + j] -= &t * BigInt::from(c);
            }
        }
    }
    poly.truncate(d);
    poly
}

/// An element of `Q(z_e)` in canonical power-basis form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(rational::int(n))
    }

    /// Builds `sum coeffs[i] z_e^i`, reducing as needed.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rational>) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        Cyclotomic {
            conductor,
            coeffs: reduce_mod_phi(coeffs, conductor),
        }
    }

    /// `z_e^k`.
    pub fn root_of_unity(e: u64, k: i64) -> Self {
        assert!(e >= 1, "conductor must be positive");
        let k = k.rem_euclid(e as i64) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        Cyclotomic::from_coeffs(e, poly)
    }

    /// `sum_l multiplicities[l] z_e^l` with integer multiplicities.
    pub fn from_exponent_counts(e: u64, counts: &[i64]) -> Self {
        let poly = counts.iter().map(|&c| rational::int(c)).collect();
        Cyclotomic::from_coeffs(e, poly)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Integer value, or `NonIntegral` if the element is not a rational integer.
    pub fn as_integer(&self) -> Result<BigInt> {
        match self.as_rational() {
            Some(q) => rational::to_integer(&q),
            None => Err(Error::NonIntegral(self.to_string())),
        }
    }

    /// Whether every power-basis coordinate is an integer.
    pub fn has_integral_coeffs(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// The same element viewed in `Q(z_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u64) -> Cyclotomic {
        assert!(
            m.is_multiple_of(self.conductor),
            "{m} is not a multiple of {}",
            self.conductor
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Cyclotomic::from_coeffs(m, poly)
    }

    /// The element written in `Q(z_m)`, if it lies in that field.
    pub fn with_conductor(&self, m: u64) -> Option<Cyclotomic> {
        let big = self.conductor.lcm(&m);
        let target = self.lift(big);
        let dim = totient(m) as usize;
        let basis: Vec<Cyclotomic> = (0..dim)
            .map(|i| Cyclotomic::root_of_unity(m, i as i64).lift(big))
            .collect();
        let rows: Vec<Vec<Rational>> = (0..target.coeffs.len())
            .map(|r| basis.iter().map(|b| b.coeffs[r].clone()).collect())
            .collect();
        let x = rational::solve(&rows, &target.coeffs)?;
        Some(Cyclotomic {
            conductor: m,
            coeffs: x,
        })
    }

    /// Rewrites the element in the smallest field `Q(z_m)` containing it.
    pub fn compressed(&self) -> Cyclotomic {
        let e = self.conductor;
        (1..=e)
            .filter(|m| e.is_multiple_of(*m))
            .find_map(|m| self.with_conductor(m))
            .expect("element lies in its own field")
    }

    fn lifted_pair(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyclotomic::from_rational(q.recip()).lift(self.conductor));
        }
        // columns: self * z^j
        let e = self.conductor;
        let d = self.coeffs.len();
        let cols: Vec<Cyclotomic> = (0..d)
            .map(|j| self * &Cyclotomic::root_of_unity(e, j as i64))
            .collect();
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|r| cols.iter().map(|c| c.coeffs[r].clone()).collect())
            .collect();
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let x = rational::solve(&rows, &rhs).ok_or(Error::DivisionByZero)?;
        Ok(Cyclotomic {
            conductor: e,
            coeffs: x,
        })
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        Ok(self * &other.inv()?)
    }

    /// The field automorphism `z_e -> z_e^k`.
    pub fn galois(&self, k: i64) -> Result<Cyclotomic> {
        let e = self.conductor;
        if (k.rem_euclid(e as i64) as u64).gcd(&e) != 1 {
            return Err(Error::NotCoprime { k, conductor: e });
        }
        let mut poly = vec![Rational::zero(); e as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (i as i64 * k).rem_euclid(e as i64) as usize;
            poly[j] += c;
        }
        Ok(Cyclotomic::from_coeffs(e, poly))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1).expect("-1 is a unit mod every conductor")
    }

    pub fn scale(&self, q: &Rational) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Floating-point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * i as f64 / e;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    /// Lexicographic comparison of coordinates after lifting to a common
    /// field, missing trailing coordinates read as zero.
    pub fn cmp_coeffs(&self, other: &Cyclotomic) -> Ordering {
        let (a, b) = self.lifted_pair(other);
        let zero = Rational::zero();
        let n = a.coeffs.len().max(b.coeffs.len());
        (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&zero);
                let y = b.coeffs.get(i).unwrap_or(&zero);
                x.cmp(y)
            })
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.lifted_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor != rhs.conductor {
            let (a, b) = self.lifted_pair(rhs);
            return &a + &b;
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor != rhs.conductor {
            let (a, b) = self.lifted_pair(rhs);
            return &a * &b;
        }
        if self.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        let n = self.coeffs.len();
        let mut poly = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_coeffs(self.conductor, poly)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyclotomic {
    /// `a0 + a1*z(e)^1 + ...`, skipping zero terms; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z({})^{}", self.conductor, i)?;
            } else {
                write!(f, "{mag}*z({})^{}", self.conductor, i)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form. Terms may use different
    /// conductors; the result lives in their lcm.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let err = |pos: usize, msg: &str| Error::Syntax {
            pos,
            msg: msg.to_string(),
        };
        let number = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| s[start..*pos].parse().unwrap())
        };

        let mut total = Cyclotomic::zero();
        let mut first = true;
        loop {
            skip(&mut pos);
            let mut negative = false;
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;

            let coeff = match number(&mut pos) {
                Some(n) => {
                    if pos < bytes.len() && bytes[pos] == b'/' {
                        pos += 1;
                        let d = number(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                        if d.is_zero() {
                            return Err(err(pos, "zero denominator"));
                        }
                        Rational::new(n, d)
                    } else {
                        Rational::from_integer(n)
                    }
                }
                None => {
                    if !s[pos..].starts_with("z(") {
                        return Err(err(pos, "expected a coefficient or z(e)^k"));
                    }
                    Rational::one()
                }
            };
            let had_number = !s[pos..].starts_with("z(");
            let mut term = Cyclotomic::from_rational(coeff.clone());
            let rest = &s[pos..];
            if (had_number && rest.starts_with("*z(")) || rest.starts_with("z(") {
                pos += if had_number { 3 } else { 2 };
                let e = number(&mut pos)
                    .and_then(|n| n.to_u64())
                    .filter(|&e| e >= 1)
                    .ok_or_else(|| err(pos, "expected a positive conductor"))?;
                if !s[pos..].starts_with(")^") {
                    return Err(err(pos, "expected ')^'"));
                }
                pos += 2;
                let k = number(&mut pos)
                    .and_then(|n| n.to_i64())
                    .ok_or_else(|| err(pos, "expected an exponent"))?;
                term = Cyclotomic::root_of_unity(e, k).scale(&coeff);
            }
            if negative {
                term = -term;
            }
            total = &total + &term;
            skip(&mut pos);
            if pos >= bytes.len() {
                return Ok(total);
            }
        }
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Rank over `Q(z)` of a matrix with cyclotomic entries, by Gaussian
/// elimination taking the first nonzero entry of each column as pivot.
pub fn rank(matrix: &[Vec<Cyclotomic>]) -> usize {
    let mut rows: Vec<Vec<Cyclotomic>> = matrix.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        let pivot_row: Vec<Cyclotomic> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &(y * &f);
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
