//! Univariate polynomials and rational functions over a [`Gf`].
//!
//! Values do not carry their field; every operation takes it explicitly.
//! Coefficients are stored lowest degree first with no trailing zeros.

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::guard;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    c: Vec<Elem>,
}

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![1] }
    }

    pub fn constant(a: Elem) -> Self {
        Poly::new(vec![a])
    }

    /// `a·x^d`.
    pub fn monomial(a: Elem, d: usize) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = a;
        Poly::new(c)
    }

    pub fn x() -> Self {
        Poly::monomial(1, 1)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, f: &Gf, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Gf, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Gf) -> Poly {
        Poly::new(self.c.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn scale(&self, f: &Gf, a: Elem) -> Poly {
        Poly::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, f: &Gf, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, f: &Gf, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(f, self))
    }

    /// Quotient and remainder.
    ///
    /// # Panics
    /// Panics when dividing by zero.
    pub fn divrem(&self, f: &Gf, d: &Poly) -> (Poly, Poly) {
        let dd = d.deg().expect("division by the zero polynomial");
        let inv = f.inv(d.lead()).expect("non-zero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.c.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, b));
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, f: &Gf, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, f: &Gf, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(f, d);
        r.is_zero().then_some(q)
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self, f: &Gf) -> Poly {
        match f.inv(self.lead()) {
            Some(i) => self.scale(f, i),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Gf, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Gf) -> Poly {
        Poly::new(
            self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(f.from_int(i as i64), a)).collect(),
        )
    }

    pub fn eval(&self, f: &Gf, x: Elem) -> Elem {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    /// Applies `a ↦ a^p` to every coefficient and `x ↦ x^p`; the inverse map
    /// exists when only exponents divisible by `p` occur.
    pub fn pth_root(&self, f: &Gf) -> Option<Poly> {
        let p = f.p() as usize;
        if self.c.iter().enumerate().any(|(i, &a)| a != 0 && i % p != 0) {
            return None;
        }
        let inv_frob = |a: Elem| f.frob_pow(a, f.k() - 1);
        Some(Poly::new(self.c.iter().step_by(p).map(|&a| inv_frob(a)).collect()))
    }

    /// Square root in characteristic 2, if it exists.
    pub fn sqrt(&self, f: &Gf) -> Option<Poly> {
        if f.p() != 2 {
            return None;
        }
        self.pth_root(f)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Gf, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        acc
    }

    /// Roots in the field (distinct, sorted), by exhaustive evaluation.
    pub fn roots(&self, f: &Gf) -> Vec<Elem> {
        f.elements().filter(|&x| self.eval(f, x) == 0).collect()
    }

    /// Factorization into monic irreducibles with multiplicities, sorted.
    /// The leading coefficient is dropped.
    pub fn factor(&self, f: &Gf) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.deg().map_or(true, |d| d == 0) {
            return out;
        }
        for (sq, mult) in squarefree(f, &self.monic(f)) {
            for (g, d) in distinct_degree(f, &sq) {
                for h in equal_degree(f, &g, d) {
                    out.push((h, mult));
                }
            }
        }
        out.sort();
        out
    }

    /// Renders the polynomial in the variable `var`.
    pub fn format(&self, f: &Gf, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let coef = f.format(a);
            let coef = if coef.contains('+') { format!("({coef})") } else { coef };
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (a == 1, mon.is_empty()) {
                (_, true) => coef,
                (true, false) => mon,
                (false, false) => format!("{coef}*{mon}"),
            });
        }
        terms.join("+")
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// square-free and `Π g^m` equal to the input.
fn squarefree(f: &Gf, a: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p() as usize;
    let mut out = Vec::new();
    let da = a.derivative(f);
    if da.is_zero() {
        if let Some(r) = a.pth_root(f) {
            if !r.is_constant() {
                for (g, m) in squarefree(f, &r) {
                    out.push((g, m * p));
                }
            }
        }
        return out;
    }
    let mut c = a.gcd(f, &da);
    let mut w = a.div_exact(f, &c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(f, &c);
        let z = w.div_exact(f, &y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(f, &w).expect("gcd divides");
    }
    if !c.is_constant() {
        let r = c.pth_root(f).expect("remaining factor is a p-th power");
        for (g, m) in squarefree(f, &r) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree(f: &Gf, a: &Poly) -> Vec<(Poly, usize)> {
    let q = u128::from(f.order());
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = Poly::x();
    let mut d = 0;
    while rest.deg().map_or(false, |k| k >= 2 * (d + 1)) {
        d += 1;
        h = h.powmod(f, q, &rest);
        let g = rest.gcd(f, &h.sub(f, &Poly::x()));
        if !g.is_constant() {
            rest = rest.div_exact(f, &g).expect("gcd divides");
            h = h.rem(f, &rest);
            out.push((g, d));
        }
    }
    if let Some(k) = rest.deg().filter(|&k| k > 0) {
        out.push((rest, k));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &Gf, a: &Poly, d: usize) -> Vec<Poly> {
    let n = a.deg().unwrap_or(0);
    if n == d {
        return vec![a.clone()];
    }
    let q = u128::from(f.order());
    // deterministic sweep over candidate splitting polynomials
    let mut code: u64 = 2;
    loop {
        let cand = poly_from_code(f, code, n);
        code += 1;
        if cand.is_constant() {
            continue;
        }
        let t = if f.p() == 2 {
            // trace map T = Σ_{i<kd} c^{2^i}
            let mut s = Poly::zero();
            let mut cur = cand.rem(f, a);
            for _ in 0..(f.k() as usize * d) {
                s = s.add(f, &cur);
                cur = cur.mul(f, &cur).rem(f, a);
            }
            s
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            cand.powmod(f, e, a).sub(f, &Poly::one())
        };
        let g = a.gcd(f, &t);
        if !g.is_constant() && g.deg() != a.deg() {
            let h = a.div_exact(f, &g).expect("gcd divides");
            let mut out = equal_degree(f, &g, d);
            out.extend(equal_degree(f, &h, d));
            return out;
        }
    }
}

fn poly_from_code(f: &Gf, mut code: u64, max_len: usize) -> Poly {
    let q = u64::from(f.order());
    let mut c = Vec::new();
    while code > 0 && c.len() < max_len {
        c.push((code % q) as Elem);
        code /= q;
    }
    Poly::new(c)
}

/// Rational function `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(f: &Gf, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parameter("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let g = num.gcd(f, &den);
        let num = num.div_exact(f, &g).expect("gcd divides");
        let den = den.div_exact(f, &g).expect("gcd divides");
        let l = f.inv(den.lead()).expect("non-zero");
        Ok(RatFn { num: num.scale(f, l), den: den.scale(f, l) })
    }

    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFn { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(a: Elem) -> Self {
        RatFn { num: Poly::constant(a), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value when the function is constant.
    pub fn constant_value(&self) -> Option<Elem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn add(&self, f: &Gf, o: &RatFn) -> RatFn {
        let num = self.num.mul(f, &o.den).add(f, &o.num.mul(f, &self.den));
        RatFn::new(f, num, self.den.mul(f, &o.den)).expect("non-zero denominator")
    }

    pub fn sub(&self, f: &Gf, o: &RatFn) -> RatFn {
        self.add(f, &o.neg(f))
    }

    pub fn neg(&self, f: &Gf) -> RatFn {
        RatFn { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn mul(&self, f: &Gf, o: &RatFn) -> RatFn {
        RatFn::new(f, self.num.mul(f, &o.num), self.den.mul(f, &o.den)).expect("non-zero denominator")
    }

    pub fn inv(&self, f: &Gf) -> Option<RatFn> {
        (!self.is_zero()).then(|| RatFn::new(f, self.den.clone(), self.num.clone()).expect("non-zero"))
    }

    pub fn div(&self, f: &Gf, o: &RatFn) -> Option<RatFn> {
        o.inv(f).map(|i| self.mul(f, &i))
    }

    pub fn pow(&self, f: &Gf, e: i64) -> Option<RatFn> {
        let base = if e < 0 { self.inv(f)? } else { self.clone() };
        Some((0..e.unsigned_abs()).fold(RatFn::one(), |acc, _| acc.mul(f, &base)))
    }

    /// Square root in characteristic 2: both numerator and (monic)
    /// denominator must be squares.
    pub fn sqrt(&self, f: &Gf) -> Option<RatFn> {
        let n = self.num.sqrt(f)?;
        let d = self.den.sqrt(f)?;
        Some(RatFn::new(f, n, d).expect("non-zero"))
    }

    pub fn is_square(&self, f: &Gf) -> bool {
        self.sqrt(f).is_some()
    }

    pub fn format(&self, f: &Gf, var: &str) -> String {
        let n = self.num.format(f, var);
        if self.den == Poly::one() {
            n
        } else {
            let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
            format!("{}/{}", wrap(n), wrap(self.den.format(f, var)))
        }
    }
}

/// Monic divisors of a non-zero polynomial with degree at most `max_deg`,
/// built from its factorization; fails once the guardrail is exceeded.
pub fn monic_divisors(f: &Gf, a: &Poly, max_deg: usize) -> Result<Vec<Poly>> {
    let fac = a.factor(f);
    let count: u128 = fac.iter().map(|(_, m)| *m as u128 + 1).product();
    guard::check(count)?;
    let mut out = vec![Poly::one()];
    for (g, m) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut cur = d.clone();
            for _ in 0..=m {
                if cur.deg().unwrap_or(0) > max_deg {
                    break;
                }
                next.push(cur.clone());
                cur = cur.mul(f, &g);
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}
