//! Finite fields `F_q`, `q = p^d ≤ 2^16`, with table-driven arithmetic.
//!
//! An element is a code `Σ cᵢ pⁱ` for its coefficient vector
//! `(c₀, …, c_{d−1})` in `F_p[a]/(f)`. The modulus `f` is the monic
//! irreducible of degree `d` whose code `Σ fᵢ pⁱ` is least, i.e. the least
//! polynomial comparing coefficients from the leading one down.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::is_prime;

/// Field orders above this are rejected; log tables are dense.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("field order exceeds {MAX_FIELD_ORDER}")]
    TooLarge,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    d: u32,
    q: u64,
    /// Monic, lowest coefficient first, length `d + 1`.
    modulus: Vec<u64>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (modulus {:?})", self.q, self.modulus)
    }
}

impl FiniteField {
    pub fn new(p: u64, d: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if d == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(d)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge)?;
        let modulus = least_irreducible(p, d as usize);
        let mut field = Self {
            p,
            d,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// `F_q` for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or(FieldError::NotPrimePower(q))?;
        let mut d = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            d += 1;
        }
        if r != 1 {
            return Err(FieldError::NotPrimePower(q));
        }
        Self::new(p, d)
    }

    /// The least element of order `q − 1` generates `F_q^*`; its powers
    /// fill the exponent table and every nonzero element gets a logarithm.
    fn build_tables(&mut self) {
        let q = self.q as usize;
        if q == 2 {
            self.primitive = 1;
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        for g in 2..q as u32 {
            let mut exp = Vec::with_capacity(q - 1);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.mul_slow(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == q - 1 {
                let mut log = vec![0u32; q];
                for (k, &x) in exp.iter().enumerate() {
                    log[x as usize] = k as u32;
                }
                self.primitive = g;
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Least element (by code) generating `F_q^*`; for prime `q` the least
    /// primitive root.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }

    pub fn contains(&self, x: u32) -> bool {
        u64::from(x) < self.q
    }

    pub fn coefficients(&self, x: u32) -> Vec<u64> {
        let mut x = u64::from(x);
        (0..self.d)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    /// Code of `Σ cᵢ aⁱ`; coefficients are reduced mod `p`, and positions at
    /// or beyond the degree must be absent.
    pub fn from_coefficients(&self, c: &[u64]) -> u32 {
        debug_assert!(c.len() <= self.d as usize);
        c.iter()
            .rev()
            .fold(0u64, |acc, &ci| acc * self.p + ci % self.p) as u32
    }

    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.d == 1 {
            return ((u64::from(x) + u64::from(y)) % self.p) as u32;
        }
        let (mut a, mut b) = (u64::from(x), u64::from(y));
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.d {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn neg(&self, x: u32) -> u32 {
        let c: Vec<u64> = self
            .coefficients(x)
            .iter()
            .map(|&ci| (self.p - ci) % self.p)
            .collect();
        self.from_coefficients(&c)
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let n = self.q as usize - 1;
        self.exp[(self.log[x as usize] as usize + self.log[y as usize] as usize) % n]
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let n = self.q as usize - 1;
        Some(self.exp[(n - self.log[x as usize] as usize) % n])
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((u64::from(self.log[x as usize]) * (e % n)) % n) as usize]
    }

    pub fn frobenius(&self, x: u32) -> u32 {
        self.pow(x, self.p)
    }

    /// Discrete logarithm to base [`Self::primitive_element`].
    pub fn log(&self, x: u32) -> Option<u64> {
        (x != 0).then(|| u64::from(self.log[x as usize]))
    }

    /// Multiplicative order; `None` for zero.
    pub fn element_order(&self, x: u32) -> Option<u64> {
        let n = self.q - 1;
        self.log(x).map(|l| n / num_integer::gcd(l, n))
    }

    /// Schoolbook product reduced by the modulus; used to build the tables.
    fn mul_slow(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.coefficients(x), self.coefficients(y));
        let d = self.d as usize;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        reduce(&mut prod, &self.modulus, self.p);
        prod.truncate(d);
        self.from_coefficients(&prod)
    }

    /// Element as a polynomial in `a`, or as an integer for prime fields.
    pub fn format(&self, x: u32) -> String {
        if self.d == 1 {
            return format!("{x}");
        }
        let c = self.coefficients(x);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let coef = if ci == 1 && i > 0 {
                String::new()
            } else {
                format!("{ci}")
            };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}a"),
                _ => format!("{coef}a^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`Self::format`].
    pub fn parse(&self, s: &str) -> Option<u32> {
        let s = s.trim();
        if self.d == 1 {
            return s
                .parse::<u64>()
                .ok()
                .filter(|&k| k < self.p)
                .map(|k| k as u32);
        }
        let mut c = vec![0u64; self.d as usize];
        for term in s.split('+') {
            let term = term.trim();
            let (coef, power) = match term.find('a') {
                None => (term, 0usize),
                Some(i) => {
                    let rest = &term[i + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')?.parse().ok()?
                    };
                    (&term[..i], power)
                }
            };
            let coef: u64 = if coef.is_empty() {
                1
            } else {
                coef.parse().ok()?
            };
            if power >= c.len() || coef >= self.p || c[power] != 0 {
                return None;
            }
            c[power] = coef;
        }
        Some(self.from_coefficients(&c))
    }
}

/// Reduces `poly` (lowest first) modulo the monic `m` in place.
fn reduce(poly: &mut [u64], m: &[u64], p: u64) {
    let d = m.len() - 1;
    for top in (d..poly.len()).rev() {
        let c = poly[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let k = top - d + i;
            poly[k] = (poly[k] + (p - c) * mi) % p;
        }
    }
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        // Monic g of degree k, coefficient code c below p^k.
        for c in 0..p.pow(k as u32) {
            let mut g = Vec::with_capacity(k + 1);
            let mut r = c;
            for _ in 0..k {
                g.push(r % p);
                r /= p;
            }
            g.push(1);
            let mut rem = f.to_vec();
            reduce(&mut rem, &g, p);
            if rem[..k].iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
    for c in 0..p.pow(d as u32) {
        let mut f = Vec::with_capacity(d + 1);
        let mut r = c;
        for _ in 0..d {
            f.push(r % p);
            r /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(FiniteField::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(FiniteField::new(5, 1).unwrap().primitive_element(), 2);
        assert_eq!(FiniteField::new(7, 1).unwrap().primitive_element(), 3);
        assert_eq!(FiniteField::new(2, 1).unwrap().primitive_element(), 1);
        assert_eq!(FiniteField::new(3, 1).unwrap().primitive_element(), 2);
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::with_order(q).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), 0);
                assert_eq!(f.pow(x, q), x);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), f.mul_slow(x, y));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    // Frobenius is additive.
                    assert_eq!(
                        f.frobenius(f.add(x, y)),
                        f.add(f.frobenius(x), f.frobenius(y))
                    );
                }
            }
        }
    }

    #[test]
    fn rejects() {
        assert_eq!(FiniteField::new(4, 1), Err(FieldError::NotPrime(4)));
        assert_eq!(
            FiniteField::with_order(12),
            Err(FieldError::NotPrimePower(12))
        );
        assert_eq!(FiniteField::new(2, 17), Err(FieldError::TooLarge));
        assert_eq!(FiniteField::new(3, 0), Err(FieldError::ZeroDegree));
    }

    #[test]
    fn format_round_trip() {
        let f = FiniteField::with_order(9).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse(&f.format(x)), Some(x));
        }
        assert_eq!(f.format(f.from_coefficients(&[1, 2])), "2a+1");
        let f = FiniteField::with_order(4).unwrap();
        assert_eq!(f.format(2), "a");
        assert_eq!(f.parse("a+1"), Some(3));
    }
}
