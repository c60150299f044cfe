//! Exact arithmetic in small finite fields GF(p^e).
//!
//! Elements are stored as indices into the field: the index digits in base
//! `p` (least significant first) are the coefficients of the polynomial
//! representative. Multiplication and division go through precomputed
//! log/antilog tables, addition is digit-wise (a plain XOR in
//! characteristic 2), so all operations are O(1) after construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field size for which log/antilog tables are built.
pub const DEFAULT_TABLE_CAP: usize = 1 << 16;

/// A field element, stored as its index in `0..q`.
///
/// Index 0 is the zero element and index 1 is the multiplicative identity
/// for every field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The four arithmetic operations of `FieldSpec::arith`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A finite field GF(p^e) with validated irreducible modulus and
/// precomputed discrete-log tables.
///
/// Immutable after construction; share via [`Arc`].
#[derive(Clone)]
pub struct FieldSpec {
    p: u16,
    e: usize,
    q: usize,
    /// Monic modulus polynomial, constant coefficient first, length e + 1.
    /// For e = 1 this is the formal polynomial x and is never used.
    modulus: Vec<u16>,
    /// exp[i] = g^i for a fixed primitive element g, length 2(q-1).
    exp: Vec<u16>,
    /// log[a] for a in 1..q; log[0] is a sentinel.
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u16) -> Result<Arc<FieldSpec>> {
        FieldSpec::build(p, 1, None, DEFAULT_TABLE_CAP)
    }

    /// GF(p^e) with the default modulus: the lexicographically least monic
    /// irreducible polynomial of degree e over Z_p (coefficient vector read
    /// constant term first).
    pub fn extension(p: u16, e: usize) -> Result<Arc<FieldSpec>> {
        FieldSpec::build(p, e, None, DEFAULT_TABLE_CAP)
    }

    /// GF(p^e) with a caller-supplied monic irreducible modulus of degree e,
    /// constant coefficient first.
    pub fn with_modulus(p: u16, e: usize, modulus: Vec<u16>) -> Result<Arc<FieldSpec>> {
        FieldSpec::build(p, e, Some(modulus), DEFAULT_TABLE_CAP)
    }

    /// The field of order q, factored as p^e.
    pub fn of_order(q: usize) -> Result<Arc<FieldSpec>> {
        let (p, e) = factor_prime_power(q)?;
        FieldSpec::build(p, e, None, DEFAULT_TABLE_CAP)
    }

    pub fn build(
        p: u16,
        e: usize,
        modulus: Option<Vec<u16>>,
        cap: usize,
    ) -> Result<Arc<FieldSpec>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::BadModulusDegree { expected: 0 });
        }
        let q = (p as usize)
            .checked_pow(e as u32)
            .ok_or(Error::FieldTooLarge { q: usize::MAX, cap })?;
        if q > cap || q > u16::MAX as usize + 1 {
            return Err(Error::FieldTooLarge { q, cap });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e + 1 || m[e] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulusDegree { expected: e });
                }
                if e > 1 && !is_irreducible(p, &m) {
                    return Err(Error::ReducibleModulus { p: p as u64 });
                }
                m
            }
            None => default_modulus(p, e),
        };
        let mut spec = FieldSpec {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_log_tables();
        Ok(Arc::new(spec))
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    /// Field order q = p^e.
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q as u16).map(Fe)
    }

    /// Polynomial coefficients of an element, constant term first, length e.
    pub fn coeffs(&self, a: Fe) -> Vec<u16> {
        let mut v = Vec::with_capacity(self.e);
        let mut x = a.index();
        for _ in 0..self.e {
            v.push((x % self.p as usize) as u16);
            x /= self.p as usize;
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u16]) -> Result<Fe> {
        if coeffs.len() != self.e || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement {
                index: usize::MAX,
                q: self.q,
            });
        }
        let mut x = 0usize;
        for &c in coeffs.iter().rev() {
            x = x * self.p as usize + c as usize;
        }
        Ok(Fe(x as u16))
    }

    pub fn check(&self, a: Fe) -> Result<Fe> {
        if a.index() < self.q {
            Ok(a)
        } else {
            Err(Error::InvalidElement {
                index: a.index(),
                q: self.q,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (p, mut x, mut y) = (self.p as usize, a.index(), b.index());
        let mut out = 0usize;
        let mut mult = 1usize;
        for _ in 0..self.e {
            out += (x % p + y % p) % p * mult;
            x /= p;
            y /= p;
            mult *= p;
        }
        Fe(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let (p, mut x) = (self.p as usize, a.index());
        let mut out = 0usize;
        let mut mult = 1usize;
        for _ in 0..self.e {
            out += (p - x % p) % p * mult;
            x /= p;
            mult *= p;
        }
        Fe(out as u16)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == Fe::ZERO || b == Fe::ZERO {
            return Fe::ZERO;
        }
        let la = self.log[a.index()] as usize;
        let lb = self.log[b.index()] as usize;
        Fe(self.exp[la + lb])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == Fe::ZERO {
            return Err(Error::DivisionByZero { q: self.q });
        }
        let la = self.log[a.index()] as usize;
        Ok(Fe(self.exp[self.q - 1 - la]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Dispatch a binary field operation by tag.
    pub fn arith(&self, a: Fe, b: Fe, op: FieldOp) -> Result<Fe> {
        self.check(a)?;
        self.check(b)?;
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Sub => Ok(self.sub(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Div => self.div(a, b),
        }
    }

    /// Multiplication by direct polynomial convolution and reduction,
    /// independent of the log tables. Used to build them and as an oracle.
    pub fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0usize; 2 * self.e];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as usize * y as usize) % p;
            }
        }
        // reduce modulo the monic modulus
        for i in (self.e..2 * self.e).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(self.e) {
                let idx = i - self.e + j;
                prod[idx] = (prod[idx] + p * p - c * m as usize % p) % p;
            }
        }
        let coeffs: Vec<u16> = prod[..self.e].iter().map(|&c| c as u16).collect();
        self.from_coeffs(&coeffs).expect("reduced coefficients in range")
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        // find a primitive element by order computation
        let mut generator = Fe(0);
        'cand: for g in 2..q as u16 {
            let g = Fe(g.min(u16::MAX));
            let mut x = Fe::ONE;
            for step in 1..q {
                x = self.mul_slow(x, g);
                if x == Fe::ONE {
                    if step == q - 1 {
                        generator = g;
                        break 'cand;
                    }
                    continue 'cand;
                }
            }
        }
        if q == 2 {
            generator = Fe::ONE;
        }
        assert!(generator != Fe(0), "no primitive element found");
        let mut exp = vec![0u16; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut x = Fe::ONE;
        for (i, slot) in exp.iter_mut().enumerate().take(q - 1) {
            *slot = x.0;
            log[x.index()] = i as u32;
            x = self.mul_slow(x, generator);
        }
        for i in q - 1..2 * (q - 1) {
            exp[i] = exp[i - (q - 1)];
        }
        self.exp = exp;
        self.log = log;
    }
}

/// The lexicographically least monic irreducible polynomial of degree e
/// over Z_p, coefficient vector ordered constant term first.
pub fn default_modulus(p: u16, e: usize) -> Vec<u16> {
    if e == 1 {
        return vec![0, 1];
    }
    let pe = (p as usize).pow(e as u32);
    for low in 0..pe {
        let mut poly = Vec::with_capacity(e + 1);
        let mut x = low;
        for _ in 0..e {
            poly.push((x % p as usize) as u16);
            x /= p as usize;
        }
        poly.push(1);
        if is_irreducible(p, &poly) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// Exhaustive irreducibility test for a monic polynomial over Z_p:
/// trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(p: u16, poly: &[u16]) -> bool {
    let deg = poly.len() - 1;
    debug_assert!(poly[deg] == 1);
    if deg == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=deg / 2 {
        let pd = (p as usize).pow(d as u32);
        for low in 0..pd {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                divisor.push((x % p as usize) as u16);
                x /= p as usize;
            }
            divisor.push(1);
            if poly_rem_is_zero(p, poly, &divisor) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u16, num: &[u16], den: &[u16]) -> bool {
    let p = p as usize;
    let dd = den.len() - 1;
    let mut rem: Vec<usize> = num.iter().map(|&c| c as usize).collect();
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for (j, &m) in den.iter().enumerate().take(dd) {
            let idx = i - dd + j;
            rem[idx] = (rem[idx] + p * p - c * m as usize % p) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factor_prime_power(q: usize) -> Result<(u16, usize)> {
    for p in 2..=q {
        if q % p == 0 {
            if !is_prime(p as u64) {
                return Err(Error::NotPrime(p as u64));
            }
            let mut e = 0;
            let mut x = q;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            if x != 1 {
                return Err(Error::NotPrime(q as u64));
            }
            return Ok((p as u16, e));
        }
    }
    Err(Error::NotPrime(q as u64))
}
