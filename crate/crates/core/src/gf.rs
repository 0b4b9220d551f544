//! Small finite fields `F_{p^k}` with table-driven arithmetic.
//!
//! An element is a `u32` whose base-`p` digits are the coefficients (lowest
//! first) of its residue modulo the defining polynomial. The defining
//! polynomial is the monic irreducible of degree `k` with the smallest
//! integer encoding, so `F_4 = F_2[x]/(x²+x+1)`, `F_8 = F_2[x]/(x³+x+1)`,
//! `F_16 = F_2[x]/(x⁴+x+1)` and `F_9 = F_3[x]/(x²+1)`. The integers `0..p`
//! encode the prime field in every extension.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Field element encoding.
pub type Elem = u32;

/// Largest supported field size.
pub const MAX_ORDER: u32 = 1 << 10;

pub struct Gf {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Vec<Elem>,
    neg: Vec<Elem>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for Gf {}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplies residues given as digit vectors modulo a monic `modulus`.
fn mul_digits(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate().take(k) {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + (p - c) * m % p) % p;
        }
        prod[d] = 0;
    }
    prod.truncate(k);
    prod
}

fn is_irreducible_digits(modulus: &[u32], p: u32) -> bool {
    // trial division by every monic polynomial of degree ≤ k/2
    let k = modulus.len() - 1;
    for deg in 1..=k / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut f = digits(code, p, deg as u32);
            f.push(1);
            if poly_rem_is_zero(modulus, &f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(a: &[u32], b: &[u32], p: u32) -> bool {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().expect("non-empty");
        if c != 0 {
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * bi % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}

impl Gf {
    /// Builds `F_{p^k}`. Requires `p` prime and `p^k ≤ 1024`.
    pub fn new(p: u32, k: u32) -> Result<Arc<Gf>> {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Parameter(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Parameter("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::Parameter(format!("field of order {p}^{k} is too large")))?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|code| {
                    let mut f = digits(code, p, k);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible_digits(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mul_slow = |a: u32, b: u32| -> u32 {
            if k == 1 {
                a * b % p
            } else {
                undigits(&mul_digits(&digits(a, p, k), &digits(b, p, k), &modulus, p), p)
            }
        };
        let generator = (1..q)
            .find(|&g| {
                let mut x = 1;
                for i in 1..q - 1 {
                    x = mul_slow(x, g);
                    if x == 1 {
                        return i == q - 1;
                    }
                }
                true
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0; (q - 1) as usize];
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = x;
            log[x as usize] = i as u32;
            x = mul_slow(x, generator);
        }
        let mut add = vec![0; (q * q) as usize];
        let mut neg = vec![0; q as usize];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p);
            }
            let n: Vec<u32> = da.iter().map(|x| (p - x) % p).collect();
            neg[a as usize] = undigits(&n, p);
        }
        Ok(Arc::new(Gf { p, k, q, modulus, exp, log, add, neg }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Residue class of `x`; a generator of the field over the prime field.
    pub fn gen(&self) -> Elem {
        if self.k == 1 {
            // the prime field is generated by 1; report a primitive root instead
            self.exp[1 % self.exp.len()]
        } else {
            self.p
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(i64::from(self.p)) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        self.add[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Some(self.exp[e as usize])
    }

    /// `a / b`.
    ///
    /// # Panics
    /// Panics when `b = 0`.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (u64::from(self.log[a as usize]) * (e % u64::from(self.q - 1))) % u64::from(self.q - 1);
        self.exp[l as usize]
    }

    /// Frobenius `a ↦ a^p`.
    pub fn frob(&self, a: Elem) -> Elem {
        self.pow(a, u64::from(self.p))
    }

    /// `a ↦ a^{p^j}`.
    pub fn frob_pow(&self, a: Elem, j: u32) -> Elem {
        (0..j % self.k).fold(a, |x, _| self.frob(x))
    }

    /// Whether `a` lies in the subfield `F_{p^j}`.
    pub fn in_subfield(&self, a: Elem, j: u32) -> bool {
        self.k % j == 0 && self.frob_pow(a, j) == a
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    /// A square root if one exists (in characteristic 2 always, via
    /// `a^{2^{k−1}}`).
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(self.pow(a, 1u64 << (self.k - 1)));
        }
        let l = self.log[a as usize];
        (l % 2 == 0).then(|| self.exp[(l / 2) as usize])
    }

    /// Discrete logarithm with respect to the internal primitive element.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Internal primitive element.
    pub fn primitive(&self) -> Elem {
        self.exp[1 % self.exp.len()]
    }

    /// Human-readable form: prime-field elements as integers, others as
    /// polynomials in `a`.
    pub fn format(&self, x: Elem) -> String {
        if x < self.p {
            return x.to_string();
        }
        let d = digits(x, self.p, self.k);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            terms.push(match (c, mon.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mon,
                (_, false) => format!("{c}*{mon}"),
            });
        }
        terms.join("+")
    }

    /// Name such as `"F4"`.
    pub fn name(&self) -> String {
        format!("F{}", self.q)
    }
}
