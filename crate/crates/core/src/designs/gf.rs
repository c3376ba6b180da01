//! Small finite fields `GF(p^e)` with full operation tables.
//!
//! Elements are encoded `0..q-1` as base-p digit strings of polynomial
//! coefficients (little-endian) modulo the lexicographically least monic
//! irreducible polynomial of degree e. Tables make the fields cheap to use
//! and exhaustively checkable.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: usize,
    e: usize,
    q: usize,
    /// Coefficients of the monic modulus, little-endian, length e+1.
    modulus: Vec<usize>,
    add: Vec<usize>,
    mul: Vec<usize>,
}

fn factor_prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut n = q;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            return if n == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Digits of `x` in base p, little-endian, padded to length e.
fn digits(x: usize, p: usize, e: usize) -> Vec<usize> {
    let mut x = x;
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn from_digits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Polynomial arithmetic over GF(p), little-endian coefficient vectors.
fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r: Vec<usize> = a.to_vec();
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for i in 0..=dm {
                let sub = (lead * m[i]) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.resize(dm.max(1), 0);
    r
}

fn poly_is_zero(a: &[usize]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Irreducibility by trial division with all monic polynomials of degree
/// 1..=e/2. Fine for the tiny degrees used here.
fn is_irreducible(m: &[usize], p: usize) -> bool {
    let e = m.len() - 1;
    for deg in 1..=e / 2 {
        let count = p.pow(deg as u32);
        for idx in 0..count {
            let mut div = digits(idx, p, deg);
            div.push(1);
            if poly_is_zero(&poly_rem(m, &div, p)) {
                return false;
            }
        }
    }
    true
}

/// Construct `GF(q)`; errors unless q is a prime power.
pub fn gf(q: usize) -> Result<FiniteField, FieldError> {
    let (p, e) = factor_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;

    // Lexicographically least monic irreducible of degree e (constant term
    // first); for e = 1 this is just x.
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        let mut found = None;
        'outer: for idx in 0..q {
            let mut m = digits(idx, p, e);
            m.push(1);
            if is_irreducible(&m, p) {
                found = Some(m);
                break 'outer;
            }
        }
        found.expect("an irreducible polynomial of every degree exists")
    };

    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        let da = digits(a, p, e);
        for b in 0..q {
            let db = digits(b, p, e);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = from_digits(&sum, p);
            let prod = poly_rem(&poly_mul(&da, &db, p), &modulus, p);
            mul[a * q + b] = from_digits(&prod, p);
        }
    }

    Ok(FiniteField {
        p,
        e,
        q,
        modulus,
        add,
        mul,
    })
}

impl FiniteField {
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    /// Exhaustive field-axiom check; intended for q <= 27 in tests.
    pub fn check_axioms(&self) -> bool {
        let q = self.q;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.mul(a, 0) != 0 {
                return false;
            }
            if a != 0 && self.inv(a).is_none() {
                return false;
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return false;
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
