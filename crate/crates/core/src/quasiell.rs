//! Characteristic-2 Weierstrass toolkit: quasi-discriminants, coordinate
//! changes, normal forms, rational-double-point classification and the
//! census of elliptic curves over `F₂`.
//!
//! Coefficients live in `F_{2^m}` or in `F_{2^m}(u)`; both are represented by
//! [`RatFn`] (constants in the finite case). Polynomials in the base
//! coordinate `t` are [`TPoly`].

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::gfpoly::{self, Poly, RatFn};
use crate::guard;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Coefficient element.
pub type Coef = RatFn;

/// `F_{2^m}` (`m ≤ 4`), optionally with one transcendental `u` adjoined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefField {
    gf: Arc<Gf>,
    transcendental: bool,
}

impl CoefField {
    pub fn finite(m: u32) -> Result<Self> {
        Self::build(m, false)
    }

    pub fn function_field(m: u32) -> Result<Self> {
        Self::build(m, true)
    }

    fn build(m: u32, transcendental: bool) -> Result<Self> {
        if !(1..=4).contains(&m) {
            return Err(Error::Parameter(format!("F_2^{m} is not supported (m must be 1..=4)")));
        }
        Ok(CoefField { gf: Gf::new(2, m)?, transcendental })
    }

    /// Parses `F2`, `F4`, `F8`, `F16`, optionally followed by `(u)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (base, tr) = match s.strip_suffix("(u)") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let m = match base {
            "F2" => 1,
            "F4" => 2,
            "F8" => 3,
            "F16" => 4,
            _ => return Err(Error::Parse(format!("unknown coefficient field `{s}`"))),
        };
        Self::build(m, tr)
    }

    pub fn name(&self) -> String {
        if self.transcendental {
            format!("{}(u)", self.gf.name())
        } else {
            self.gf.name()
        }
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    pub fn is_perfect(&self) -> bool {
        !self.transcendental
    }

    pub fn has_u(&self) -> bool {
        self.transcendental
    }

    pub fn zero(&self) -> Coef {
        RatFn::zero()
    }

    pub fn one(&self) -> Coef {
        RatFn::one()
    }

    pub fn constant(&self, a: Elem) -> Coef {
        RatFn::constant(a)
    }

    /// The transcendental `u`.
    pub fn u(&self) -> Result<Coef> {
        if !self.transcendental {
            return Err(Error::Parse(format!("`u` is not available in {}", self.name())));
        }
        Ok(RatFn::from_poly(Poly::x()))
    }

    pub fn add(&self, a: &Coef, b: &Coef) -> Coef {
        a.add(&self.gf, b)
    }

    pub fn mul(&self, a: &Coef, b: &Coef) -> Coef {
        a.mul(&self.gf, b)
    }

    pub fn inv(&self, a: &Coef) -> Option<Coef> {
        a.inv(&self.gf)
    }

    pub fn pow(&self, a: &Coef, e: i64) -> Option<Coef> {
        a.pow(&self.gf, e)
    }

    pub fn is_square(&self, a: &Coef) -> bool {
        a.is_square(&self.gf)
    }

    pub fn sqrt(&self, a: &Coef) -> Option<Coef> {
        a.sqrt(&self.gf)
    }

    pub fn format(&self, a: &Coef) -> String {
        if a.is_constant() {
            self.gf.format(a.constant_value().unwrap_or(0))
        } else {
            a.format(&self.gf, "u")
        }
    }

    /// Constants of the field (the finite part).
    pub fn constants(&self) -> Vec<Coef> {
        self.gf.elements().map(RatFn::constant).collect()
    }

    /// Whether `x² + x = c` has a solution in the field.
    pub fn artin_schreier_solvable(&self, c: &Coef) -> Result<bool> {
        let f = &*self.gf;
        if c.is_zero() {
            return Ok(true);
        }
        if !self.transcendental {
            let c = c.constant_value().expect("finite field elements are constants");
            return Ok(f.elements().any(|x| f.add(f.mul(x, x), x) == c));
        }
        // x = g/h reduced gives (g² + gh)/h², so den(c) = h² and num(c) = g² + gh
        let Some(h) = c.den().sqrt(f) else { return Ok(false) };
        let n = c.num();
        let dh = h.deg().unwrap_or(0);
        let dn = n.deg().unwrap_or(0);
        let dg = dh.max(dn.div_ceil(2));
        let m = f.k() as usize;
        let out_len = (2 * dg).max(dg + dh).max(dn) + 1;
        let rows = out_len * m;
        let cols = (dg + 1) * m;
        guard::check((rows * cols) as u128)?;
        let bits = |p: &Poly| -> Vec<bool> {
            (0..out_len).flat_map(|i| (0..m).map(move |b| (p.coeff(i) >> b) & 1 == 1)).collect()
        };
        let mut columns = Vec::with_capacity(cols);
        for i in 0..=dg {
            for b in 0..m {
                let e = Poly::monomial(1 << b, i);
                columns.push(bits(&e.mul(f, &e).add(f, &e.mul(f, &h))));
            }
        }
        Ok(f2_solvable(&columns, &bits(n)))
    }

    /// Number of roots of `T³ + aT + b` in the field, `b ≠ 0`.
    pub fn cubic_root_count(&self, a: &Coef, b: &Coef) -> Result<usize> {
        let f = &*self.gf;
        if !self.transcendental {
            let (a, b) = (a.constant_value().unwrap_or(0), b.constant_value().unwrap_or(0));
            return Ok(f.elements().filter(|&x| f.add(f.add(f.pow(x, 3), f.mul(a, x)), b) == 0).count());
        }
        // T = X/D with D = lcm of denominators turns the cubic monic over F[u]
        let d = lcm(f, a.den(), b.den());
        let ap = a.mul(f, &RatFn::from_poly(d.mul(f, &d)));
        let bp = b.mul(f, &RatFn::from_poly(d.pow(f, 3)));
        let (ap, bp) = (ap.num().clone(), bp.num().clone());
        if bp.is_zero() {
            return Err(Error::Parameter("constant term must be non-zero".into()));
        }
        let divisors = gfpoly::monic_divisors(f, &bp, bp.deg().unwrap_or(0))?;
        guard::check(divisors.len() as u128 * u128::from(f.order()))?;
        let mut roots = BTreeSet::new();
        for g in &divisors {
            for c in 1..f.order() {
                let x = g.scale(f, c);
                let val = x.pow(f, 3).add(f, &ap.mul(f, &x)).add(f, &bp);
                if val.is_zero() {
                    roots.insert(x);
                }
            }
        }
        Ok(roots.len())
    }
}

fn lcm(f: &Gf, a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(f, b);
    a.mul(f, b).div_exact(f, &g).expect("gcd divides").monic(f)
}

/// Solvability of `Σ x_j·col_j = rhs` over `F₂`.
fn f2_solvable(columns: &[Vec<bool>], rhs: &[bool]) -> bool {
    let rows = rhs.len();
    let mut m: Vec<Vec<bool>> = (0..rows)
        .map(|r| {
            let mut row: Vec<bool> = columns.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let cols = columns.len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c]) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] {
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    m[r..].iter().all(|row| !row[cols])
}

/// Polynomial in `t` with coefficients in a [`CoefField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly {
    c: Vec<Coef>,
}

impl TPoly {
    pub fn new(mut c: Vec<Coef>) -> Self {
        while c.last().map_or(false, RatFn::is_zero) {
            c.pop();
        }
        TPoly { c }
    }

    pub fn zero() -> Self {
        TPoly { c: Vec::new() }
    }

    pub fn constant(a: Coef) -> Self {
        TPoly::new(vec![a])
    }

    /// `a·t^d`.
    pub fn monomial(a: Coef, d: usize) -> Self {
        let mut c = vec![RatFn::zero(); d + 1];
        c[d] = a;
        TPoly::new(c)
    }

    /// Polynomial with constant coefficients `Σ c_i t^i` from field elements.
    pub fn from_elems(c: &[Elem]) -> Self {
        TPoly::new(c.iter().map(|&x| RatFn::constant(x)).collect())
    }

    pub fn coeff(&self, i: usize) -> Coef {
        self.c.get(i).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn coeffs(&self) -> &[Coef] {
        &self.c
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn add(&self, k: &CoefField, o: &TPoly) -> TPoly {
        let n = self.c.len().max(o.c.len());
        TPoly::new((0..n).map(|i| k.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn scale(&self, k: &CoefField, a: &Coef) -> TPoly {
        TPoly::new(self.c.iter().map(|x| k.mul(x, a)).collect())
    }

    pub fn mul(&self, k: &CoefField, o: &TPoly) -> TPoly {
        if self.is_zero() || o.is_zero() {
            return TPoly::zero();
        }
        let mut c = vec![RatFn::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = k.add(&c[i + j], &k.mul(a, b));
            }
        }
        TPoly::new(c)
    }

    pub fn pow(&self, k: &CoefField, e: u32) -> TPoly {
        (0..e).fold(TPoly::constant(RatFn::one()), |acc, _| acc.mul(k, self))
    }

    /// `d/dt` (characteristic 2: odd exponents survive).
    pub fn derivative(&self) -> TPoly {
        TPoly::new(
            self.c.iter().enumerate().skip(1).map(|(i, a)| if i % 2 == 1 { a.clone() } else { RatFn::zero() }).collect(),
        )
    }

    /// Multiplicity of `t = c` as a root.
    pub fn valuation_at(&self, k: &CoefField, c: &Coef) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut cur = self.c.clone();
        let mut v = 0;
        loop {
            // synthetic division by (t − c) = (t + c)
            let n = cur.len();
            let mut q = vec![RatFn::zero(); n - 1];
            let mut acc = RatFn::zero();
            for i in (0..n).rev() {
                acc = k.add(&k.mul(&acc, c), &cur[i]);
                if i > 0 {
                    q[i - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                return Some(v);
            }
            v += 1;
            cur = q;
        }
    }

    /// Valuation at `t = 0`.
    pub fn valuation_at_zero(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    /// Coefficients as field elements when all are constants.
    pub fn to_gf_poly(&self) -> Option<Poly> {
        self.c.iter().map(RatFn::constant_value).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    pub fn format(&self, k: &CoefField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let coef = k.format(a);
            let coef = if coef.contains('+') || coef.contains('/') { format!("({coef})") } else { coef };
            let mon = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            terms.push(match (a == &RatFn::one(), mon.is_empty()) {
                (_, true) => coef,
                (true, false) => mon,
                (false, false) => format!("{coef}*{mon}"),
            });
        }
        terms.join("+")
    }
}

/// `y² = x³ + a4·x + a6` with `deg a_i ≤ d·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortWeierstrass {
    pub a4: TPoly,
    pub a6: TPoly,
    pub d: usize,
}

impl ShortWeierstrass {
    pub fn new(a4: TPoly, a6: TPoly, d: usize) -> Result<Self> {
        if a4.deg().map_or(false, |x| x > 4 * d) || a6.deg().map_or(false, |x| x > 6 * d) {
            return Err(Error::Parameter(format!("coefficients exceed the degree bounds 4d, 6d for d = {d}")));
        }
        Ok(ShortWeierstrass { a4, a6, d })
    }

    /// Smallest admissible `d`.
    pub fn with_minimal_d(a4: TPoly, a6: TPoly) -> Self {
        let d = a4.deg().map_or(0, |x| x.div_ceil(4)).max(a6.deg().map_or(0, |x| x.div_ceil(6))).max(1);
        ShortWeierstrass { a4, a6, d }
    }
}

/// `Ψ = a4·(Da4)² + (Da6)²`.
pub fn quasi_discriminant(k: &CoefField, w: &ShortWeierstrass) -> TPoly {
    let da4 = w.a4.derivative();
    let da6 = w.a6.derivative();
    w.a4.mul(k, &da4.mul(k, &da4)).add(k, &da6.mul(k, &da6))
}

/// Valuation of `Ψ` at a closed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceValuation {
    /// `"∞"` or the monic irreducible polynomial in `t`.
    pub place: String,
    pub degree: usize,
    pub valuation: usize,
}

/// `Ψ` together with its valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiDiscriminant {
    pub psi: TPoly,
    /// Every closed point with non-zero valuation (over function fields only
    /// the rational places `t = c`, `c ∈ F_{2^m}`, are examined), then `∞`.
    pub places: Vec<PlaceValuation>,
    pub val_inf: usize,
    /// Whether `places` covers all closed points.
    pub complete: bool,
}

/// Computes `Ψ` and its valuations; fails when `Ψ = 0`.
pub fn quasi_discriminant_report(k: &CoefField, w: &ShortWeierstrass) -> Result<QuasiDiscriminant> {
    let psi = quasi_discriminant(k, w);
    let deg = psi.deg().ok_or_else(|| Error::Hypothesis("the quasi-discriminant vanishes".into()))?;
    let val_inf = (12 * w.d - 4)
        .checked_sub(deg)
        .ok_or_else(|| Error::Hypothesis(format!("deg Ψ = {deg} exceeds 12d − 4")))?;
    let f = k.gf();
    let mut places = Vec::new();
    let complete = match psi.to_gf_poly() {
        Some(p) if k.is_perfect() => {
            for (g, m) in p.factor(f) {
                places.push(PlaceValuation { place: g.format(f, "t"), degree: g.deg().unwrap_or(0), valuation: m });
            }
            true
        }
        _ => {
            for c in f.elements() {
                let v = psi.valuation_at(k, &RatFn::constant(c)).expect("Ψ ≠ 0");
                if v > 0 {
                    let place = if c == 0 { "t".to_string() } else { format!("t+{}", f.format(c)) };
                    places.push(PlaceValuation { place, degree: 1, valuation: v });
                }
            }
            false
        }
    };
    if val_inf > 0 {
        places.push(PlaceValuation { place: "∞".into(), degree: 1, valuation: val_inf });
    }
    Ok(QuasiDiscriminant { psi, places, val_inf, complete })
}

/// Valuations at `t = 0`, `t = 1` and `t = ∞`.
pub fn valuation_profile(k: &CoefField, w: &ShortWeierstrass) -> Result<(usize, usize, usize)> {
    let psi = quasi_discriminant(k, w);
    let deg = psi.deg().ok_or_else(|| Error::Hypothesis("the quasi-discriminant vanishes".into()))?;
    let v0 = psi.valuation_at(k, &k.zero()).expect("non-zero");
    let v1 = psi.valuation_at(k, &k.one()).expect("non-zero");
    let vinf = (12 * w.d - 4)
        .checked_sub(deg)
        .ok_or_else(|| Error::Hypothesis(format!("deg Ψ = {deg} exceeds 12d − 4")))?;
    Ok((v0, v1, vinf))
}

/// Coordinate change with `r = s²`:
/// `u⁴a4' = a4 + s⁴`, `u⁶a6' = a6 + τ² + s²(s⁴ + a4)`.
pub fn transform(k: &CoefField, w: &ShortWeierstrass, u: &Coef, s: &TPoly, tau: &TPoly) -> Result<ShortWeierstrass> {
    let ui = k.inv(u).ok_or_else(|| Error::Parameter("u must be invertible".into()))?;
    let s2 = s.mul(k, s);
    let s4 = s2.mul(k, &s2);
    let a4 = w.a4.add(k, &s4).scale(k, &k.pow(&ui, 4).expect("non-zero"));
    let a6 = w
        .a6
        .add(k, &tau.mul(k, tau))
        .add(k, &s2.mul(k, &s4.add(k, &w.a4)))
        .scale(k, &k.pow(&ui, 6).expect("non-zero"));
    ShortWeierstrass::new(a4, a6, w.d)
}

/// Normal form `a4 = λ2 t² + λ6 t⁶`, `a6 = μ(t⁵ + t⁷)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub lambda2: Coef,
    pub lambda6: Coef,
    pub mu: Coef,
}

impl NormalForm {
    pub fn weierstrass(&self, k: &CoefField) -> ShortWeierstrass {
        let a4 = TPoly::monomial(self.lambda2.clone(), 2).add(k, &TPoly::monomial(self.lambda6.clone(), 6));
        let a6 = TPoly::monomial(self.mu.clone(), 5).add(k, &TPoly::monomial(self.mu.clone(), 7));
        ShortWeierstrass { a4, a6, d: 2 }
    }
}

/// Reduces a `d = 2` equation with `val_0(Ψ), val_∞(Ψ) ≥ 8`, `val_1(Ψ) ≥ 4`
/// to normal form by clearing the `a4` coefficients in degrees 0, 4, 8 and
/// the even-degree coefficients of `a6`.
pub fn normal_form_reduce(k: &CoefField, w: &ShortWeierstrass) -> Result<NormalForm> {
    if w.d != 2 {
        return Err(Error::Hypothesis(format!("normal form needs d = 2, got {}", w.d)));
    }
    let (v0, v1, vinf) = valuation_profile(k, w)?;
    if v0 < 8 {
        return Err(Error::Hypothesis(format!("val_0(Ψ) = {v0} < 8")));
    }
    if v1 < 4 {
        return Err(Error::Hypothesis(format!("val_1(Ψ) = {v1} < 4")));
    }
    if vinf < 8 {
        return Err(Error::Hypothesis(format!("val_∞(Ψ) = {vinf} < 8")));
    }
    let root = |c: &Coef, e: u32| -> Result<Coef> {
        (0..e).try_fold(c.clone(), |x, _| {
            k.sqrt(&x).ok_or_else(|| Error::Hypothesis(format!("{} has no square root in {}", k.format(c), k.name())))
        })
    };
    let s = TPoly::new((0..3).map(|i| root(&w.a4.coeff(4 * i), 2)).collect::<Result<_>>()?);
    let w1 = transform(k, w, &k.one(), &s, &TPoly::zero())?;
    let tau = TPoly::new((0..7).map(|j| root(&w1.a6.coeff(2 * j), 1)).collect::<Result<_>>()?);
    let w2 = transform(k, &w1, &k.one(), &TPoly::zero(), &tau)?;
    let mu = w2.a6.coeff(5);
    let nf = NormalForm { lambda2: w2.a4.coeff(2), lambda6: w2.a4.coeff(6), mu: mu.clone() };
    if mu.is_zero() || nf.weierstrass(k) != w2 {
        return Err(Error::Hypothesis(format!(
            "reduction ended at a4 = {}, a6 = {}, which is not of the form λ2t²+λ6t⁶, μ(t⁵+t⁷)",
            w2.a4.format(k),
            w2.a6.format(k)
        )));
    }
    Ok(nf)
}

/// Rational double point types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RdpType {
    Regular,
    A1,
    C3,
    C5,
    C7,
    D4,
    D8,
    E8,
    G2rdp,
    Undecidable,
}

impl fmt::Display for RdpType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RdpType::Regular => "Regular",
            RdpType::A1 => "A1",
            RdpType::C3 => "C3",
            RdpType::C5 => "C5",
            RdpType::C7 => "C7",
            RdpType::D4 => "D4",
            RdpType::D8 => "D8",
            RdpType::E8 => "E8",
            RdpType::G2rdp => "G2",
            RdpType::Undecidable => "Undecidable",
        };
        f.write_str(s)
    }
}

/// Singularity over `t = 1` of the normal form.
pub fn rdp_at_one(k: &CoefField, l2: &Coef, l6: &Coef, mu: &Coef) -> Result<RdpType> {
    if mu.is_zero() {
        return Err(Error::Parameter("μ must be non-zero".into()));
    }
    let l = k.add(l2, l6);
    let Some(omega) = k.sqrt(&l) else { return Ok(RdpType::Regular) };
    let omega3 = k.pow(&omega, 3).expect("non-negative power");
    if !k.is_square(&k.add(mu, &omega3)) {
        return Ok(RdpType::A1);
    }
    Ok(match k.cubic_root_count(&l, mu) {
        Ok(0) => RdpType::G2rdp,
        Ok(1) => RdpType::C3,
        Ok(3) => RdpType::D4,
        Ok(n) => return Err(Error::Internal(format!("separable cubic with {n} roots"))),
        Err(Error::EnumerationLimit { .. }) => RdpType::Undecidable,
        Err(e) => return Err(e),
    })
}

/// Singularity over `t = 0`; with `swap` the roles of `λ2, λ6` are exchanged,
/// which gives the singularity over `t = ∞`.
///
/// With `ω² = λ2` and `s = x + ωt` the local equation reads
/// `y² + xs² + A(s+x)⁵ + B(s+x)⁶x + C(s+x)⁷` where `A = μω⁻⁵`, `B = λ6ω⁻⁶`,
/// `C = μω⁻⁷`. For `A = α²` two further blow-ups leave the quadratic
/// `T² + AT + (B + C)`, equivalently `T² + T + (B + C)/A²`; the latter
/// constant is unchanged by `(λ2, λ6, μ) ↦ (λ2/u⁴, λ6/u⁴, μ/u⁶)` and equals
/// `B + C` when `A = 1`. The second blow-up needs `α³` to be a square, which
/// can fail only over `F_{2^m}(u)`; that branch is reported as undecidable.
pub fn rdp_at_zero(k: &CoefField, l2: &Coef, l6: &Coef, mu: &Coef, swap: bool) -> Result<RdpType> {
    if mu.is_zero() {
        return Err(Error::Parameter("μ must be non-zero".into()));
    }
    let (l2, l6) = if swap { (l6, l2) } else { (l2, l6) };
    if l2.is_zero() {
        return Ok(RdpType::E8);
    }
    let Some(omega) = k.sqrt(l2) else { return Ok(RdpType::C3) };
    let w = |e: i64| k.pow(&omega, e).expect("ω ≠ 0");
    let a = k.mul(mu, &w(-5));
    let Some(alpha) = k.sqrt(&a) else { return Ok(RdpType::C5) };
    if !k.is_square(&alpha) {
        return Ok(RdpType::Undecidable);
    }
    let b_plus_c = k.add(&k.mul(l6, &w(-6)), &k.mul(mu, &w(-7)));
    let c = k.mul(&b_plus_c, &k.pow(&a, -2).expect("A ≠ 0"));
    Ok(if k.artin_schreier_solvable(&c)? { RdpType::D8 } else { RdpType::C7 })
}

/// Types over `t = 0, 1, ∞` of a normal form.
pub fn classify_normal_form(k: &CoefField, nf: &NormalForm) -> Result<[RdpType; 3]> {
    Ok([
        rdp_at_zero(k, &nf.lambda2, &nf.lambda6, &nf.mu, false)?,
        rdp_at_one(k, &nf.lambda2, &nf.lambda6, &nf.mu)?,
        rdp_at_zero(k, &nf.lambda2, &nf.lambda6, &nf.mu, true)?,
    ])
}

/// `y² = x³ + α³(t⁵ + t⁷)` over `t = 0, 1, ∞`.
pub fn classify_k3_family(k: &CoefField, alpha: &Coef) -> Result<[RdpType; 3]> {
    if alpha.is_zero() {
        return Err(Error::Parameter("α must be non-zero".into()));
    }
    let mu = k.pow(alpha, 3).expect("non-negative power");
    classify_normal_form(k, &NormalForm { lambda2: k.zero(), lambda6: k.zero(), mu })
}

/// Long Weierstrass tuple `(a1, a2, a3, a4, a6)` over `F₂`.
pub type LongTuple = [u8; 5];

/// Discriminant of a long Weierstrass equation over `ℤ`.
pub fn integer_discriminant(a: &LongTuple) -> i64 {
    let [a1, a2, a3, a4, a6] = a.map(i64::from);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

/// Coordinate change `x = x' + r`, `y = y' + s x' + t` with `u = 1`,
/// reduced modulo 2.
pub fn change_coordinates(a: &LongTuple, r: u8, s: u8, t: u8) -> LongTuple {
    let [a1, a2, a3, a4, a6] = a.map(i64::from);
    let (r, s, t) = (i64::from(r), i64::from(s), i64::from(t));
    let n1 = a1 + 2 * s;
    let n2 = a2 - s * a1 + 3 * r - s * s;
    let n3 = a3 + r * a1 + 2 * t;
    let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    [n1, n2, n3, n4, n6].map(|x| x.rem_euclid(2) as u8)
}

/// Projective `F₂`-points: affine solutions plus the origin at infinity.
pub fn point_count_f2(a: &LongTuple) -> usize {
    let [a1, a2, a3, a4, a6] = *a;
    let mut n = 1;
    for x in 0..2u8 {
        for y in 0..2u8 {
            let lhs = (y * y + a1 * x * y + a3 * y) % 2;
            let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
            n += usize::from(lhs == rhs);
        }
    }
    n
}

/// Isomorphism class of elliptic curves over `F₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    pub representative: LongTuple,
    pub points: usize,
    pub automorphisms: usize,
    pub size: usize,
}

/// All 32 tuples, the non-singular ones grouped into orbits under the eight
/// changes `(r, s, t) ∈ F₂³`; sorted by point count.
pub fn elliptic_census_f2() -> Vec<CensusClass> {
    let tuples: Vec<LongTuple> = (0u8..32).map(|c| std::array::from_fn(|i| (c >> (4 - i)) & 1)).collect();
    let smooth: Vec<LongTuple> = tuples.into_iter().filter(|a| integer_discriminant(a) % 2 != 0).collect();
    let changes: Vec<(u8, u8, u8)> = (0u8..8).map(|c| (c >> 2 & 1, c >> 1 & 1, c & 1)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in &smooth {
        if seen.contains(a) {
            continue;
        }
        let mut orbit = BTreeSet::from([*a]);
        let mut frontier = vec![*a];
        while let Some(x) = frontier.pop() {
            for &(r, s, t) in &changes {
                let y = change_coordinates(&x, r, s, t);
                if orbit.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let rep = *orbit.iter().next().expect("non-empty");
        let automorphisms = changes.iter().filter(|&&(r, s, t)| change_coordinates(&rep, r, s, t) == rep).count();
        seen.extend(orbit.iter().copied());
        out.push(CensusClass { representative: rep, points: point_count_f2(&rep), automorphisms, size: orbit.len() });
    }
    out.sort_by_key(|c| (c.points, c.representative));
    out
}

/// Point counts for the residual divisors of `y² + y = x³ + x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    /// `|D(F₂)|` for `x² + x = 0`, `y² + y = (a4+1)x + a6`.
    pub d_points: usize,
    /// `(k, |D′(F_{2^k})|)` for `k = 1, 2, 4` with `D′: x² + x + 1 = 0`,
    /// `y² + y = a4·x + a6 + 1`.
    pub dprime_counts: Vec<(u32, usize)>,
    /// Degrees of the closed points of `D′`.
    pub dprime_place_degrees: Vec<usize>,
    /// Both divisors are affine, hence miss the origin at infinity.
    pub disjoint_from_origin: bool,
}

fn count_residual(k: u32, xeq: impl Fn(&Gf, Elem) -> bool, yeq: impl Fn(&Gf, Elem, Elem) -> bool) -> Result<usize> {
    let f = Gf::new(2, k)?;
    let mut n = 0;
    for x in f.elements() {
        if !xeq(&f, x) {
            continue;
        }
        n += f.elements().filter(|&y| yeq(&f, x, y)).count();
    }
    Ok(n)
}

pub fn residual_divisor_points() -> Result<ResidualReport> {
    let (a4, a6) = (1u32, 0u32);
    let d_points = count_residual(
        1,
        |f, x| f.add(f.mul(x, x), x) == 0,
        |f, x, y| f.add(f.mul(y, y), y) == f.add(f.mul(f.add(a4, 1), x), a6),
    )?;
    let dprime = |k| {
        count_residual(
            k,
            |f, x| f.add(f.add(f.mul(x, x), x), 1) == 0,
            |f, x, y| f.add(f.mul(y, y), y) == f.add(f.mul(a4, x), f.add(a6, 1)),
        )
    };
    let dprime_counts: Vec<(u32, usize)> = [1u32, 2, 4].iter().map(|&k| Ok((k, dprime(k)?))).collect::<Result<_>>()?;
    // points of exact degree k are those over F_{2^k} not over a proper subfield
    let mut new_by_degree: Vec<(u32, usize)> = Vec::new();
    for &(k, n) in &dprime_counts {
        let old: usize = new_by_degree.iter().filter(|(j, _)| k % j == 0).map(|(_, c)| c).sum();
        new_by_degree.push((k, n - old));
    }
    let dprime_place_degrees = new_by_degree
        .iter()
        .flat_map(|&(k, c)| std::iter::repeat(k as usize).take(c / k as usize))
        .collect();
    Ok(ResidualReport { d_points, dprime_counts, dprime_place_degrees, disjoint_from_origin: true })
}

// ---------------------------------------------------------------------------
// polynomial syntax

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(format!("number `{s}` too large")))?));
            }
            't' | 'u' | 'a' => {
                out.push(Tok::Ident(c));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    k: &'a CoefField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<TPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            let _ = c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(self.k, &rhs); // characteristic 2: subtraction is addition
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = acc.mul(self.k, &rhs);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    if rhs.deg().map_or(true, |d| d > 0) {
                        return Err(Error::Parse("division only by non-zero t-free values".into()));
                    }
                    let inv = self.k.inv(&rhs.coeff(0)).ok_or_else(|| Error::Parse("division by zero".into()))?;
                    acc = acc.scale(self.k, &inv);
                }
                Some(Tok::Ident(_) | Tok::Num(_) | Tok::Op('(')) => {
                    // implicit multiplication, e.g. `u t^2`
                    let rhs = self.power()?;
                    acc = acc.mul(self.k, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<TPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) if e <= 1000 => Ok(base.pow(self.k, e as u32)),
                _ => Err(Error::Parse("exponent must be a non-negative integer ≤ 1000".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<TPoly> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(TPoly::constant(self.k.constant((n % 2) as Elem))),
            Some(Tok::Ident('t')) => Ok(TPoly::monomial(self.k.one(), 1)),
            Some(Tok::Ident('u')) => Ok(TPoly::constant(self.k.u()?)),
            Some(Tok::Ident('a')) => {
                if self.k.gf().k() == 1 {
                    return Err(Error::Parse(format!("`a` is not available in {}", self.k.name())));
                }
                Ok(TPoly::constant(self.k.constant(self.k.gf().gen())))
            }
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::Op(')')) => Ok(e),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(Tok::Op('-')) => self.power(),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses a polynomial in `t` such as `"t^7+t^5"` or `"u*t^2+1"`. Atoms are
/// `t`, `u` (function fields only), `a` (the generator of `F_{2^m}`, `m > 1`)
/// and integers (read modulo 2); operators are `+ - * / ^` and parentheses.
/// Division is allowed by non-zero `t`-free values.
pub fn parse_tpoly(k: &CoefField, s: &str) -> Result<TPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, k };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(out)
}

/// Parses a `t`-free coefficient.
pub fn parse_coef(k: &CoefField, s: &str) -> Result<Coef> {
    let p = parse_tpoly(k, s)?;
    if p.deg().map_or(false, |d| d > 0) {
        return Err(Error::Parse(format!("`{s}` depends on t")));
    }
    Ok(p.coeff(0))
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub report: QuasiDiscriminant,
    pub normal_form: Option<NormalForm>,
    pub types: Option<[RdpType; 3]>,
    pub note: Option<String>,
}

/// Full pipeline used by the command line: `Ψ`, valuations, and when the
/// normal-form hypotheses hold, the types over `0, 1, ∞`.
pub fn classify(k: &CoefField, a4: &str, a6: &str) -> Result<Classification> {
    let w = ShortWeierstrass::with_minimal_d(parse_tpoly(k, a4)?, parse_tpoly(k, a6)?);
    let w = if w.d < 2 { ShortWeierstrass { d: 2, ..w } } else { w };
    let report = quasi_discriminant_report(k, &w)?;
    match normal_form_reduce(k, &w) {
        Ok(nf) => {
            let types = classify_normal_form(k, &nf)?;
            Ok(Classification { report, normal_form: Some(nf), types: Some(types), note: None })
        }
        Err(Error::Hypothesis(msg)) => Ok(Classification { report, normal_form: None, types: None, note: Some(msg) }),
        Err(e) => Err(e),
    }
}
