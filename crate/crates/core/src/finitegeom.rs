//! Linear algebra and flag geometry over small finite fields.
//!
//! Subspaces are stored by the non-zero rows of their reduced row-echelon
//! form, so equality of subspaces is equality of bases. The symplectic form
//! on `F⁴` is `⟨x, y⟩ = x₁y₄ + x₂y₃ − x₃y₂ − x₄y₁`, i.e. the Gram matrix
//! `J = [[0, R], [−R, 0]]` with `R` the 2×2 antidiagonal identity.

use crate::dldatum::weyl_group_cached;
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::guard;
use crate::lattice;
use crate::rootcore::{WeylElement, WeylGroup};
use crate::sp4suzuki;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

/// Vector over a finite field.
pub type Vector = Vec<Elem>;

/// Non-zero rows of the reduced row-echelon form of `rows`.
pub fn rref(f: &Gf, rows: &[Vector]) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is non-zero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..cols {
                    let v = f.sub(m[i][j], f.mul(k, m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

pub fn rank(f: &Gf, rows: &[Vector]) -> usize {
    rref(f, rows).len()
}

/// `dim(A ∩ B) = dim A + dim B − dim(A + B)`.
pub fn intersection_dim(f: &Gf, a: &[Vector], b: &[Vector]) -> usize {
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(f, a) + rank(f, b) - rank(f, &both)
}

/// Basis of `{x : r·x = 0 for every row r}` in ambient dimension `n`.
pub fn kernel(f: &Gf, rows: &[Vector], n: usize) -> Vec<Vector> {
    let r = rref(f, rows);
    let pivots: Vec<usize> = r.iter().map(|row| row.iter().position(|&x| x != 0).expect("non-zero row")).collect();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = f.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(f: &Gf, basis: &[Vector], v: &[Elem]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rank(f, &rows) == rank(f, basis)
}

/// Points of `P^{n−1}(F)`: vectors whose first non-zero entry is 1, in
/// increasing encoding order.
pub fn projective_points(f: &Gf, n: usize) -> Result<Vec<Vector>> {
    let q = u128::from(f.order());
    guard::check(q.pow(n as u32))?;
    let mut out = Vec::new();
    let total = (f.order() as u64).pow(n as u32);
    for code in 1..total {
        let mut v = vec![0; n];
        let mut c = code;
        for i in (0..n).rev() {
            v[i] = (c % u64::from(f.order())) as Elem;
            c /= u64::from(f.order());
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    Ok(out)
}

/// All vectors of `F^n` in increasing encoding order.
pub fn all_vectors(f: &Gf, n: usize) -> Result<Vec<Vector>> {
    guard::check(u128::from(f.order()).pow(n as u32))?;
    let q = u64::from(f.order());
    Ok((0..q.pow(n as u32))
        .map(|code| {
            let mut c = code;
            let mut v = vec![0; n];
            for i in (0..n).rev() {
                v[i] = (c % q) as Elem;
                c /= q;
            }
            v
        })
        .collect())
}

/// Alternating form `⟨x, y⟩ = x₁y₄ + x₂y₃ − x₃y₂ − x₄y₁`.
pub fn symplectic_pairing(f: &Gf, x: &[Elem], y: &[Elem]) -> Elem {
    let a = f.add(f.mul(x[0], y[3]), f.mul(x[1], y[2]));
    let b = f.add(f.mul(x[2], y[1]), f.mul(x[3], y[0]));
    f.sub(a, b)
}

/// Symplectic orthogonal of a subspace of `F⁴`.
pub fn symplectic_perp(f: &Gf, basis: &[Vector]) -> Vec<Vector> {
    // ⟨u, v⟩ = (−u₄, −u₃, u₂, u₁)·v
    let rows: Vec<Vector> = basis.iter().map(|u| vec![f.neg(u[3]), f.neg(u[2]), u[1], u[0]]).collect();
    rref(f, &kernel(f, &rows, 4))
}

/// Hermitian-type orthogonal in `F³` for `⟨u, v⟩ = ᵗu^{(q)} J v` with `J`
/// antidiagonal and `q = p^e`.
pub fn unitary_perp(f: &Gf, e: u32, basis: &[Vector]) -> Vec<Vector> {
    let rows: Vec<Vector> = basis
        .iter()
        .map(|u| u.iter().rev().map(|&x| f.frob_pow(x, e)).collect())
        .collect();
    rref(f, &kernel(f, &rows, 3))
}

/// The two flag varieties handled here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlagKind {
    /// Full flags `0 ⊂ V_1 ⊂ … ⊂ V_{n−1} ⊂ F^n`.
    FullA,
    /// Isotropic flags `0 ⊂ L ⊂ U ⊂ L^⊥ ⊂ F⁴` with `U` Lagrangian.
    IsotropicC2,
}

/// A flag stored by echelonized bases of its proper non-zero members
/// (for `IsotropicC2` only `L` and `U`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagConfig {
    kind: FlagKind,
    dim: usize,
    subspaces: Vec<Vec<Vector>>,
}

impl FlagConfig {
    /// Full flag from bases of `V_1, …, V_{n−1}`.
    pub fn full(f: &Gf, dim: usize, subspaces: Vec<Vec<Vector>>) -> Result<Self> {
        let subspaces: Vec<Vec<Vector>> = subspaces.iter().map(|s| rref(f, s)).collect();
        if subspaces.len() + 1 != dim {
            return Err(Error::MismatchedFlags(format!("expected {} subspaces", dim - 1)));
        }
        for (i, s) in subspaces.iter().enumerate() {
            if s.len() != i + 1 || s.iter().any(|v| v.len() != dim) {
                return Err(Error::MismatchedFlags(format!("member {} has the wrong dimension", i + 1)));
            }
            if i > 0 && intersection_dim(f, &subspaces[i - 1], s) != i {
                return Err(Error::MismatchedFlags("members are not nested".into()));
            }
        }
        Ok(FlagConfig { kind: FlagKind::FullA, dim, subspaces })
    }

    /// Isotropic flag `L ⊂ U` in `F⁴`.
    pub fn isotropic(f: &Gf, l: Vec<Vector>, u: Vec<Vector>) -> Result<Self> {
        let l = rref(f, &l);
        let u = rref(f, &u);
        if l.len() != 1 || u.len() != 2 || l[0].len() != 4 {
            return Err(Error::MismatchedFlags("need a line inside a plane of F⁴".into()));
        }
        if !in_span(f, &u, &l[0]) {
            return Err(Error::MismatchedFlags("L is not contained in U".into()));
        }
        if symplectic_pairing(f, &u[0], &u[1]) != 0 {
            return Err(Error::MismatchedFlags("U is not isotropic".into()));
        }
        Ok(FlagConfig { kind: FlagKind::IsotropicC2, dim: 4, subspaces: vec![l, u] })
    }

    pub fn kind(&self) -> FlagKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored members (for isotropic flags: `[L, U]`).
    pub fn subspaces(&self) -> &[Vec<Vector>] {
        &self.subspaces
    }

    /// The complete chain `F_1 ⊂ … ⊂ F_{n−1}`; for isotropic flags this is
    /// `L ⊂ U ⊂ L^⊥`.
    pub fn chain(&self, f: &Gf) -> Vec<Vec<Vector>> {
        match self.kind {
            FlagKind::FullA => self.subspaces.clone(),
            FlagKind::IsotropicC2 => {
                let mut c = self.subspaces.clone();
                c.push(symplectic_perp(f, &self.subspaces[0]));
                c
            }
        }
    }

    /// Applies `g` to every vector and re-echelonizes.
    pub fn map_vectors(&self, f: &Gf, g: impl Fn(&[Elem]) -> Vector) -> FlagConfig {
        FlagConfig {
            kind: self.kind,
            dim: self.dim,
            subspaces: self.subspaces.iter().map(|s| rref(f, &s.iter().map(|v| g(v)).collect::<Vec<_>>())).collect(),
        }
    }

    /// Entrywise `x ↦ x^{p^e}`.
    pub fn frobenius(&self, f: &Gf, e: u32) -> FlagConfig {
        self.map_vectors(f, |v| v.iter().map(|&x| f.frob_pow(x, e)).collect())
    }

    pub fn format(&self, f: &Gf) -> String {
        let fmt_space = |s: &Vec<Vector>| {
            let rows: Vec<String> = s
                .iter()
                .map(|v| format!("({})", v.iter().map(|&x| f.format(x)).collect::<Vec<_>>().join(",")))
                .collect();
            format!("<{}>", rows.join(","))
        };
        self.subspaces.iter().map(fmt_space).collect::<Vec<_>>().join(" ⊂ ")
    }
}

/// Profile `w[i][j] = #{ν ≤ j : w(ν) ≤ i}` (1-based `i, j`, stored 0-based)
/// of a permutation given by its 1-based images.
pub fn permutation_profile(w: &[usize]) -> Vec<Vec<usize>> {
    let n = w.len();
    (1..=n).map(|i| (1..=n).map(|j| (0..j).filter(|&nu| w[nu] <= i).count()).collect()).collect()
}

/// Intersection-dimension matrix `dim(F_i ∩ G_j)` for `i, j = 1..n`.
pub fn intersection_profile(f: &Gf, a: &FlagConfig, b: &FlagConfig) -> Result<Vec<Vec<usize>>> {
    if a.kind != b.kind || a.dim != b.dim {
        return Err(Error::MismatchedFlags("different kinds or dimensions".into()));
    }
    let n = a.dim;
    let full: Vec<Vector> = (0..n).map(|i| (0..n).map(|j| Elem::from(i == j)).collect()).collect();
    let mut ca = a.chain(f);
    ca.push(full.clone());
    let mut cb = b.chain(f);
    cb.push(full);
    Ok(ca.iter().map(|x| cb.iter().map(|y| intersection_dim(f, x, y)).collect()).collect())
}

/// Permutation (1-based images) with the given profile.
pub fn permutation_from_profile(profile: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = profile.len();
    let at = |i: usize, j: usize| if i == 0 || j == 0 { 0 } else { profile[i - 1][j - 1] as i64 };
    let mut w = Vec::with_capacity(n);
    for j in 1..=n {
        let i = (1..=n)
            .find(|&i| at(i, j) - at(i, j - 1) - at(i - 1, j) + at(i - 1, j - 1) == 1)
            .ok_or_else(|| Error::Internal("intersection profile is not a permutation profile".into()))?;
        w.push(i);
    }
    Ok(w)
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x - 1]).collect()
}

fn transposition(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    for &(a, b) in pairs {
        p.swap(a - 1, b - 1);
    }
    p
}

/// Permutation of a `C2` generator inside `S4`: `s1 = (12)(34)`, `s2 = (23)`.
fn c2_generator(i: usize) -> Vec<usize> {
    if i == 1 {
        transposition(4, &[(1, 2), (3, 4)])
    } else {
        transposition(4, &[(2, 3)])
    }
}

/// Reduced word of a permutation, by peeling right descents.
fn permutation_word(w: &[usize], kind: FlagKind) -> Result<Vec<usize>> {
    let mut cur = w.to_vec();
    let mut word = Vec::new();
    let n = w.len();
    while cur.iter().enumerate().any(|(i, &x)| x != i + 1) {
        let (letter, gen) = match kind {
            FlagKind::FullA => {
                let i = (1..n).find(|&i| cur[i - 1] > cur[i]).expect("non-identity has a descent");
                (i, transposition(n, &[(i, i + 1)]))
            }
            FlagKind::IsotropicC2 => {
                if cur[0] > cur[1] {
                    (1, c2_generator(1))
                } else if cur[1] > cur[2] {
                    (2, c2_generator(2))
                } else {
                    return Err(Error::Internal(format!("{w:?} is not a signed permutation")));
                }
            }
        };
        cur = compose(&cur, &gen);
        word.push(letter);
    }
    word.reverse();
    Ok(word)
}

/// Weyl group acting on flags of the given kind and dimension.
pub fn flag_weyl_group(kind: FlagKind, dim: usize) -> Result<Arc<WeylGroup>> {
    match kind {
        FlagKind::FullA => weyl_group_cached(&format!("A{}", dim - 1)),
        FlagKind::IsotropicC2 => weyl_group_cached("C2"),
    }
}

/// Permutation of `{1..n}` attached to a Weyl element (`S_n` for type A,
/// the signed-permutation embedding of `W(C2)` into `S4`).
pub fn weyl_to_permutation(w: &WeylElement, kind: FlagKind, dim: usize) -> Vec<usize> {
    w.word().iter().fold((1..=dim).collect(), |acc: Vec<usize>, &i| {
        let g = match kind {
            FlagKind::FullA => transposition(dim, &[(i, i + 1)]),
            FlagKind::IsotropicC2 => c2_generator(i),
        };
        compose(&acc, &g)
    })
}

/// Relative position `inv(a, b)` as a Weyl group element.
pub fn relative_position(f: &Gf, a: &FlagConfig, b: &FlagConfig) -> Result<WeylElement> {
    let prof = intersection_profile(f, a, b)?;
    let perm = permutation_from_profile(&prof)?;
    let word = permutation_word(&perm, a.kind)?;
    let g = flag_weyl_group(a.kind, a.dim)?;
    Ok(g.evaluate(&word)?.clone())
}

/// `dim(F_i ∩ G_j) ≥ w[i, j]` for all `i, j`.
pub fn dimension_criterion(f: &Gf, a: &FlagConfig, b: &FlagConfig, w: &WeylElement) -> Result<bool> {
    let prof = intersection_profile(f, a, b)?;
    let wp = permutation_profile(&weyl_to_permutation(w, a.kind, a.dim));
    Ok(prof.iter().zip(&wp).all(|(r, s)| r.iter().zip(s).all(|(x, y)| x >= y)))
}

/// All full flags of `F³`.
pub fn full_flags_3(f: &Gf) -> Result<Vec<FlagConfig>> {
    let q = u128::from(f.order());
    guard::check((q * q + q + 1) * (q + 1))?;
    let pts = projective_points(f, 3)?;
    let mut out = Vec::new();
    for l in &pts {
        // planes through l correspond to points of P(F³/l)
        let mut planes = BTreeSet::new();
        for v in &pts {
            let u = rref(f, &[l.clone(), v.clone()]);
            if u.len() == 2 {
                planes.insert(u);
            }
        }
        for u in planes {
            out.push(FlagConfig { kind: FlagKind::FullA, dim: 3, subspaces: vec![vec![l.clone()], u] });
        }
    }
    Ok(out)
}

/// All full flags of `F^n` for `n ≤ 4` (recursive extension).
pub fn full_flags(f: &Gf, n: usize) -> Result<Vec<FlagConfig>> {
    let pts = projective_points(f, n)?;
    let mut chains: Vec<Vec<Vec<Vector>>> = pts.iter().map(|p| vec![vec![p.clone()]]).collect();
    for d in 2..n {
        let mut next = Vec::new();
        for c in &chains {
            let last = c.last().expect("non-empty");
            let mut ext = BTreeSet::new();
            for v in &pts {
                let mut rows = last.clone();
                rows.push(v.clone());
                let s = rref(f, &rows);
                if s.len() == d {
                    ext.insert(s);
                }
            }
            for s in ext {
                let mut c2 = c.clone();
                c2.push(s);
                next.push(c2);
            }
        }
        guard::check(next.len() as u128)?;
        chains = next;
    }
    Ok(chains.into_iter().map(|subspaces| FlagConfig { kind: FlagKind::FullA, dim: n, subspaces }).collect())
}

/// All isotropic flags `L ⊂ U` of `(F⁴, J)`.
pub fn isotropic_flags(f: &Gf) -> Result<Vec<FlagConfig>> {
    let q = u128::from(f.order());
    guard::check((q * q * q + q * q + q + 1) * (q + 1))?;
    let pts = projective_points(f, 4)?;
    let mut out = Vec::new();
    for l in &pts {
        let mut planes = BTreeSet::new();
        for v in &pts {
            if symplectic_pairing(f, l, v) != 0 {
                continue;
            }
            let u = rref(f, &[l.clone(), v.clone()]);
            if u.len() == 2 {
                planes.insert(u);
            }
        }
        for u in planes {
            out.push(FlagConfig { kind: FlagKind::IsotropicC2, dim: 4, subspaces: vec![vec![l.clone()], u] });
        }
    }
    Ok(out)
}

/// `φ(L ⊂ U) = (U^⊥ ⊂ L^⊥)` for the Hermitian-type pairing with `q = p^e`.
pub fn unitary_phi(f: &Gf, e: u32, flag: &FlagConfig) -> Result<FlagConfig> {
    if flag.kind != FlagKind::FullA || flag.dim != 3 {
        return Err(Error::MismatchedFlags("unitary φ needs a full flag of F³".into()));
    }
    if f.k() % (2 * e) != 0 {
        return Err(Error::Parameter(format!(
            "{} has no subfield of index 2 over F_{}",
            f.name(),
            u64::from(f.p()).pow(e)
        )));
    }
    let l = &flag.subspaces[0];
    let u = &flag.subspaces[1];
    Ok(FlagConfig { kind: FlagKind::FullA, dim: 3, subspaces: vec![unitary_perp(f, e, u), unitary_perp(f, e, l)] })
}

/// Strata cases supported by [`strata_histogram`].
pub const STRATA_CASES: &[&str] = &["A2", "2A2", "2C2"];

/// Histogram of `inv(F, φ(F))` over all flags over `F_{q^ext}`; every
/// Weyl group element gets a bucket (possibly empty). For `2C2` the prime is
/// 2 and `q` is ignored.
pub fn strata_histogram(case: &str, q: u32, ext: u32) -> Result<Vec<(WeylElement, u64)>> {
    let (field, flags, phi): (Arc<Gf>, Vec<FlagConfig>, Box<dyn Fn(&Gf, &FlagConfig) -> Result<FlagConfig>>) =
        match case {
            "A2" | "2A2" => {
                if !(2..=7).contains(&q) || !(2..q).all(|d| q % d != 0) {
                    return Err(Error::Parameter(format!("q = {q} must be a prime ≤ 7")));
                }
                if case == "2A2" && ext % 2 != 0 {
                    return Err(Error::Parameter("the unitary case needs an even extension degree".into()));
                }
                let field = Gf::new(q, ext)?;
                let flags = full_flags_3(&field)?;
                let phi: Box<dyn Fn(&Gf, &FlagConfig) -> Result<FlagConfig>> = if case == "A2" {
                    Box::new(|f, fl| Ok(fl.frobenius(f, 1)))
                } else {
                    Box::new(|f, fl| unitary_phi(f, 1, fl))
                };
                (field, flags, phi)
            }
            "2C2" => {
                let field = Gf::new(2, ext)?;
                let flags = isotropic_flags(&field)?;
                (field, flags, Box::new(|f, fl| sp4suzuki::phi_on_flags(f, fl)))
            }
            other => return Err(Error::UnknownCase(other.to_string())),
        };
    let kind = flags.first().map_or(FlagKind::FullA, FlagConfig::kind);
    let dim = flags.first().map_or(3, FlagConfig::dim);
    let g = flag_weyl_group(kind, dim)?;
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for fl in &flags {
        let w = relative_position(&field, fl, &phi(&field, fl)?)?;
        *counts.entry(w.word().to_vec()).or_default() += 1;
    }
    Ok(g.elements().iter().map(|w| (w.clone(), counts.get(w.word()).copied().unwrap_or(0))).collect())
}

/// Projective points of `X^qZ + Y^{q+1} + Z^qX = 0` over `F_{q^k}` (`q` prime).
pub fn hermitian_counts(q: u32, k: u32) -> Result<u64> {
    let f = Gf::new(q, k)?;
    let pts = projective_points(&f, 3)?;
    let qq = u64::from(q);
    Ok(pts
        .iter()
        .filter(|v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let t1 = f.mul(f.pow(x, qq), z);
            let t2 = f.pow(y, qq + 1);
            let t3 = f.mul(f.pow(z, qq), x);
            f.add(f.add(t1, t2), t3) == 0
        })
        .count() as u64)
}

/// Comparison of the bihomogeneous description with the flag description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCheck {
    pub equations: usize,
    pub flags: usize,
    pub equal: bool,
}

/// Solutions `(x, y) ∈ P² × P²` of `x₀y₀ + x₁y₁ + x₂y₂ = 0` and
/// `y₀y₂^q − y₁^{q+1} + y₂y₀^q = 0`, compared with the pairs `(L, U)` with
/// `L ⊂ U` and `U^⊥ ⊂ U` (`U = ker y`), over `F_{q^k}`.
pub fn surface_equations_check(q: u32, k: u32) -> Result<SurfaceCheck> {
    let f = Gf::new(q, k)?;
    let pts = projective_points(&f, 3)?;
    guard::check((pts.len() as u128).pow(2))?;
    let qq = u64::from(q);
    let dot = |x: &[Elem], y: &[Elem]| (0..3).fold(0, |s, i| f.add(s, f.mul(x[i], y[i])));
    let mut by_eq = BTreeSet::new();
    for y in &pts {
        let a = f.mul(y[0], f.pow(y[2], qq));
        let b = f.pow(y[1], qq + 1);
        let c = f.mul(y[2], f.pow(y[0], qq));
        if f.add(f.sub(a, b), c) != 0 {
            continue;
        }
        for x in &pts {
            if dot(x, y) == 0 {
                by_eq.insert((x.clone(), y.clone()));
            }
        }
    }
    let mut by_flags = BTreeSet::new();
    for y in &pts {
        let u = kernel(&f, &[y.clone()], 3);
        let perp = unitary_perp(&f, 1, &u);
        if perp.len() != 1 || !in_span(&f, &u, &perp[0]) {
            continue;
        }
        for x in &pts {
            if in_span(&f, &u, x) {
                by_flags.insert((x.clone(), y.clone()));
            }
        }
    }
    Ok(SurfaceCheck { equations: by_eq.len(), flags: by_flags.len(), equal: by_eq == by_flags })
}

/// Simple undirected graph with labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for &(a, b) in edges {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        Graph { labels, adj }
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.adj.len()).flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect()
    }

    /// Sorted set of vertex degrees.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.adj.iter().map(BTreeSet::len).collect()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].expect("visited") + 1);
                    q.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![None; self.adj.len()];
        for s in 0..self.adj.len() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                let c = color[v].expect("coloured");
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            q.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.adj.len() {
            let mut dist = vec![usize::MAX; self.adj.len()];
            let mut parent = vec![usize::MAX; self.adj.len()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        q.push_back(w);
                    } else if parent[v] != w {
                        let c = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{l}\"];\n"));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  v{a} -- v{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// One `a b` line per edge.
    pub fn to_edge_list(&self) -> String {
        self.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect()
    }
}

/// Vertex type of the `Sp4` building.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildingVertex {
    Line,
    Plane,
}

/// Incidence graph of lines and Lagrangian planes of `(F_p⁴, J)`; lines come
/// first. Returns the graph and the vertex types.
pub fn building_sp4(p: u32) -> Result<(Graph, Vec<BuildingVertex>)> {
    if p != 2 && p != 3 {
        return Err(Error::Parameter(format!("p = {p} must be 2 or 3")));
    }
    let f = Gf::new(p, 1)?;
    let pts = projective_points(&f, 4)?;
    let mut planes = BTreeSet::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if symplectic_pairing(&f, a, b) == 0 {
                planes.insert(rref(&f, &[a.clone(), b.clone()]));
            }
        }
    }
    let planes: Vec<Vec<Vector>> = planes.into_iter().collect();
    let fmt = |v: &Vector| v.iter().map(|x| x.to_string()).collect::<String>();
    let mut labels: Vec<String> = pts.iter().map(|v| format!("L{}", fmt(v))).collect();
    labels.extend(planes.iter().map(|u| format!("U{}|{}", fmt(&u[0]), fmt(&u[1]))));
    let mut edges = Vec::new();
    for (i, v) in pts.iter().enumerate() {
        for (j, u) in planes.iter().enumerate() {
            if in_span(&f, u, v) {
                edges.push((i, pts.len() + j));
            }
        }
    }
    let mut kinds = vec![BuildingVertex::Line; pts.len()];
    kinds.extend(vec![BuildingVertex::Plane; planes.len()]);
    Ok((Graph::new(labels, &edges), kinds))
}

/// The 22-vertex tree `Γ` as a graph (vertex order as in
/// [`lattice::GAMMA_LABELS`]).
pub fn gamma_graph() -> Graph {
    Graph::new(lattice::GAMMA_LABELS.iter().map(|s| s.to_string()).collect(), lattice::GAMMA_EDGES)
}

/// Induced embedding of `pattern` into `host` by backtracking. Pattern
/// vertices are placed in breadth-first order from `root`; each is mapped to
/// an unused host neighbour of its parent's image that is adjacent to no
/// other placed image. Returns `map[pattern vertex] = host vertex`.
pub fn find_induced_tree_embedding(pattern: &Graph, root: usize, host: &Graph) -> Option<Vec<usize>> {
    let n = pattern.num_vertices();
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in pattern.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    if order.len() != n {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; host.num_vertices()];
    for start in 0..host.num_vertices() {
        map[root] = start;
        used[start] = true;
        if extend(pattern, host, &order, &parent, 1, &mut map, &mut used) {
            return Some(map);
        }
        used[start] = false;
    }
    None
}

fn extend(
    pattern: &Graph,
    host: &Graph,
    order: &[usize],
    parent: &[usize],
    k: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    let pv = map[parent[v]];
    let cands: Vec<usize> = host.neighbors(pv).iter().copied().collect();
    for h in cands {
        if used[h] {
            continue;
        }
        let ok = order[..k].iter().all(|&u| pattern.adjacent(u, v) == host.adjacent(map[u], h));
        if !ok {
            continue;
        }
        map[v] = h;
        used[h] = true;
        if extend(pattern, host, order, parent, k + 1, map, used) {
            return true;
        }
        used[h] = false;
    }
    map[v] = usize::MAX;
    false
}

/// Searches for an induced copy of `Γ` rooted at `ρ`.
pub fn find_gamma_embedding(host: &Graph) -> Option<Vec<usize>> {
    find_induced_tree_embedding(&gamma_graph(), lattice::GAMMA_RHO, host)
}

/// Points of the curve `y³ − y = x⁴ − x²`, `z³ − z = x(y³ − y)` over
/// `F_{3^k}`: affine solutions plus one point at infinity.
pub fn ree_point_count(k: u32) -> Result<u64> {
    if k == 0 || k > 4 {
        return Err(Error::Parameter(format!("k = {k} must lie in 1..=4")));
    }
    let f = Gf::new(3, k)?;
    guard::check(u128::from(f.order()).pow(2))?;
    // number of t with t³ − t = c, for each c
    let mut fiber: BTreeMap<Elem, u64> = BTreeMap::new();
    for t in f.elements() {
        *fiber.entry(f.sub(f.pow(t, 3), t)).or_default() += 1;
    }
    let fib = |c: Elem| fiber.get(&c).copied().unwrap_or(0);
    let mut affine = 0u64;
    for x in f.elements() {
        let rhs = f.sub(f.pow(x, 4), f.pow(x, 2));
        for y in f.elements() {
            let ay = f.sub(f.pow(y, 3), y);
            if ay != rhs {
                continue;
            }
            affine += fib(f.mul(x, ay));
        }
    }
    Ok(affine + 1)
}

/// Affine solution count of the Ree model (without the point at infinity).
pub fn ree_affine_count(k: u32) -> Result<u64> {
    Ok(ree_point_count(k)? - 1)
}
