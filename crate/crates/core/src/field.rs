//! Arithmetic in GF(q) = GF(p^n).
//!
//! Elements are identified by their index in `0..q`: the base-p little-endian
//! encoding of the coefficient vector in the polynomial basis `1, x, .., x^(n-1)`.
//! Multiplication goes through exp/log tables built from a primitive element;
//! addition is digit-wise mod p.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field order must be at least 2, got {0}")]
    OrderTooSmall(u64),
    #[error("{q} is not a prime power (factorization: {factorization})")]
    NotPrimePower { q: u64, factorization: String },
    #[error("field order {0} is too large")]
    OrderTooLarge(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("index {index} is not an element of GF({q})")]
    OutOfRange { index: u64, q: u32 },
}

/// An element of GF(q), by canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw index without checking it against any field.
    /// Prefer [`FieldSpec::element`] when the field is known.
    pub fn from_index(index: u32) -> FieldElement {
        FieldElement(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^n) together with its defining modulus.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

const MAX_ORDER: u64 = 1 << 24;

/// Trial-division factorization as `(prime, exponent)` pairs.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn format_factorization(f: &[(u64, u32)]) -> String {
    f.iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Splits `q` into `(p, n)` with `q = p^n`.
pub fn prime_power(q: u64) -> Result<(u32, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::OrderTooSmall(q));
    }
    let f = factorize(q);
    if f.len() != 1 {
        return Err(FieldError::NotPrimePower {
            q,
            factorization: format_factorization(&f),
        });
    }
    if q > MAX_ORDER {
        return Err(FieldError::OrderTooLarge(q));
    }
    Ok((f[0].0 as u32, f[0].1))
}

// Polynomials over GF(p) as coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let t = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn monic_from_code(code: u64, degree: u32, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut c = code;
    for _ in 0..degree {
        coeffs.push((c % p as u64) as u32);
        c /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// True if the monic polynomial `m` has no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() as u32 - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for code in 0..count {
            let f = monic_from_code(code, d, p);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `n` over GF(p), ordering candidates by
/// their coefficient vector read as a base-p number (leading coefficient most
/// significant).
fn least_irreducible(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(n);
    (0..count)
        .map(|code| monic_from_code(code, n, p))
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists for every degree")
}

impl FieldSpec {
    /// Builds GF(q) with the least irreducible modulus.
    pub fn new(q: u64) -> Result<FieldSpec, FieldError> {
        let (p, n) = prime_power(q)?;
        let modulus = least_irreducible(p, n);
        let mut spec = FieldSpec {
            p,
            n,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_tables();
        Ok(spec)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.n as usize);
        let mut a = a;
        for _ in 0..self.n {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    fn pack_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Polynomial-basis product, reduced by the modulus. Used only to seed the tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.n as usize, 0);
        self.pack_digits(&r)
    }

    fn build_tables(&mut self) {
        let order = self.q - 1;
        let prime_factors: Vec<u64> = factorize(order as u64)
            .into_iter()
            .map(|(f, _)| f)
            .collect();
        let pow = |spec: &FieldSpec, mut base: u32, mut e: u64| {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = spec.slow_mul(acc, base);
                }
                base = spec.slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..self.q)
            .find(|&g| {
                prime_factors
                    .iter()
                    .all(|&r| pow(self, g, order as u64 / r) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut acc = 1u32;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = k as u32;
            acc = self.slow_mul(acc, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant term first. For prime fields this is `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn characteristic_is_two(&self) -> bool {
        self.p == 2
    }

    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index < self.q as u64 {
            Ok(FieldElement(index as u32))
        } else {
            Err(FieldError::OutOfRange { index, q: self.q })
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, u: FieldElement, v: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((u.0 + v.0) % self.p);
        }
        let (mut a, mut b) = (u.0, v.0);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, u: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((self.p - u.0) % self.p);
        }
        let mut a = u.0;
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, u: FieldElement, v: FieldElement) -> FieldElement {
        self.add(u, self.neg(v))
    }

    pub fn mul(&self, u: FieldElement, v: FieldElement) -> FieldElement {
        if u.0 == 0 || v.0 == 0 {
            return FieldElement::ZERO;
        }
        let k =
            (self.log[u.0 as usize] as u64 + self.log[v.0 as usize] as u64) % (self.q as u64 - 1);
        FieldElement(self.exp[k as usize])
    }

    pub fn inv(&self, u: FieldElement) -> Result<FieldElement, FieldError> {
        if u.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let order = self.q - 1;
        let k = (order - self.log[u.0 as usize]) % order;
        Ok(FieldElement(self.exp[k as usize]))
    }

    pub fn pow(&self, u: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if u.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.q as u64 - 1;
        let k = (self.log[u.0 as usize] as u64 * (e % order)) % order;
        FieldElement(self.exp[k as usize])
    }

    /// `(1 + 1) * u`; zero in characteristic 2.
    pub fn double(&self, u: FieldElement) -> FieldElement {
        self.add(u, u)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod ", self.q)?;
        let mut first = true;
        for (deg, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (deg, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (d, 1) => write!(f, "x^{d}")?,
                (d, c) => write!(f, "{c}x^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(i: u32) -> FieldElement {
        FieldElement(i)
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!((f.p(), f.n(), f.q()), (5, 1, 5));
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn least_moduli() {
        assert_eq!(FieldSpec::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldSpec::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn gf4_quadratics_exhaustive() {
        // x^2, x^2+1, x^2+x, x^2+x+1: only the last has no root mod 2.
        let irreducible: Vec<u64> = (0..4)
            .filter(|&c| is_irreducible(&monic_from_code(c, 2, 2), 2))
            .collect();
        assert_eq!(irreducible, vec![3]);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FieldSpec::new(1).unwrap_err(), FieldError::OrderTooSmall(1));
        assert_eq!(FieldSpec::new(0).unwrap_err(), FieldError::OrderTooSmall(0));
        match FieldSpec::new(12).unwrap_err() {
            FieldError::NotPrimePower { q, factorization } => {
                assert_eq!(q, 12);
                assert_eq!(factorization, "2^2 * 3");
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            FieldSpec::new(6),
            Err(FieldError::NotPrimePower { .. })
        ));
    }

    #[test]
    fn small_arithmetic() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(f2.add(el(1), el(1)), el(0));

        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!(f4.mul(el(2), el(2)), el(3));

        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(f5.mul(el(3), el(4)), el(2));
        assert_eq!(f5.inv(el(2)).unwrap(), el(3));
        assert_eq!(f5.inv(el(0)), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn element_listing() {
        let idx = |q| {
            FieldSpec::new(q)
                .unwrap()
                .elements()
                .map(|e| e.index())
                .collect::<Vec<_>>()
        };
        assert_eq!(idx(2), vec![0, 1]);
        assert_eq!(idx(4), vec![0, 1, 2, 3]);
        let nine = idx(9);
        assert_eq!(nine.len(), 9);
        assert_eq!(&nine[..2], &[0, 1]);
    }

    #[test]
    fn doubling_vanishes_in_char_two() {
        let f8 = FieldSpec::new(8).unwrap();
        assert!(f8.elements().all(|u| f8.double(u) == FieldElement::ZERO));
        let f9 = FieldSpec::new(9).unwrap();
        assert_eq!(f9.double(el(1)), el(2));
    }

    #[test]
    fn element_range() {
        let f = FieldSpec::new(7).unwrap();
        assert!(f.element(6).is_ok());
        assert_eq!(f.element(7), Err(FieldError::OutOfRange { index: 7, q: 7 }));
    }

    #[test]
    fn display_modulus() {
        assert_eq!(
            FieldSpec::new(16).unwrap().to_string(),
            "GF(16) mod x^4+x+1"
        );
        assert_eq!(FieldSpec::new(9).unwrap().to_string(), "GF(9) mod x^2+1");
    }
}
