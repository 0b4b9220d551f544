//! The 2-minor isogeny of `Sp4` in characteristic 2 and the Suzuki group
//! `Sz(2)` it fixes.
//!
//! Matrices are 4×4, row-major, over `F_{2^k}`; the symplectic form is the one
//! of [`crate::finitegeom`].

use crate::error::{Error, Result};
use crate::finitegeom::{self, FlagConfig, FlagKind, Vector};
use crate::gf::{Elem, Gf};
use crate::rootcore::WeylElement;
use std::collections::{BTreeSet, HashMap, VecDeque};

/// 4×4 matrix, row-major.
pub type SMat = [Elem; 16];

/// Gram matrix `J` of the symplectic form.
pub fn j_matrix(f: &Gf) -> SMat {
    let m1 = f.neg(1);
    [0, 0, 0, 1, 0, 0, 1, 0, 0, m1, 0, 0, m1, 0, 0, 0]
}

pub fn identity() -> SMat {
    let mut m = [0; 16];
    for i in 0..4 {
        m[i * 5] = 1;
    }
    m
}

pub fn mat_mul(f: &Gf, a: &SMat, b: &SMat) -> SMat {
    let mut out = [0; 16];
    for i in 0..4 {
        for j in 0..4 {
            out[i * 4 + j] = (0..4).fold(0, |s, k| f.add(s, f.mul(a[i * 4 + k], b[k * 4 + j])));
        }
    }
    out
}

pub fn transpose(a: &SMat) -> SMat {
    let mut t = [0; 16];
    for i in 0..4 {
        for j in 0..4 {
            t[j * 4 + i] = a[i * 4 + j];
        }
    }
    t
}

/// `ᵗS J S = J`.
pub fn is_symplectic(f: &Gf, s: &SMat) -> bool {
    let j = j_matrix(f);
    mat_mul(f, &mat_mul(f, &transpose(s), &j), s) == j
}

/// Inverse of a symplectic matrix: `S⁻¹ = J⁻¹ ᵗS J`.
pub fn symplectic_inverse(f: &Gf, s: &SMat) -> SMat {
    let j = j_matrix(f);
    let jinv: SMat = {
        let mut m = j;
        for x in m.iter_mut() {
            *x = f.neg(*x);
        }
        m
    };
    mat_mul(f, &mat_mul(f, &jinv, &transpose(s)), &j)
}

/// Entrywise Frobenius `x ↦ x²`.
pub fn frobenius(f: &Gf, s: &SMat) -> SMat {
    let mut out = *s;
    for x in out.iter_mut() {
        *x = f.frob(*x);
    }
    out
}

/// The sixteen 2-minors, for any ring given by its multiplication and
/// subtraction.
pub fn minor_map<T: Copy>(s: &[T; 16], mul: impl Fn(T, T) -> T, sub: impl Fn(T, T) -> T) -> [T; 16] {
    let e = |i: usize, j: usize| s[(i - 1) * 4 + (j - 1)];
    let m = |a: (usize, usize), b: (usize, usize), c: (usize, usize), d: (usize, usize)| {
        sub(mul(e(a.0, a.1), e(b.0, b.1)), mul(e(c.0, c.1), e(d.0, d.1)))
    };
    // row pairs (1,2), (1,3), (2,4), (3,4); column pairs (1,2), (1,3), (2,4), (3,4)
    let pairs = [(1, 2), (1, 3), (2, 4), (3, 4)];
    let mut out = [s[0]; 16];
    for (r, &(i, k)) in pairs.iter().enumerate() {
        for (c, &(j, l)) in pairs.iter().enumerate() {
            out[r * 4 + c] = m((i, j), (k, l), (i, l), (k, j));
        }
    }
    out
}

/// `φ(S)` for a symplectic matrix over a field of characteristic 2.
pub fn minor_isogeny(f: &Gf, s: &SMat) -> Result<SMat> {
    if f.p() != 2 {
        return Err(Error::Parameter("the minor isogeny lives in characteristic 2".into()));
    }
    if !is_symplectic(f, s) {
        return Err(Error::Parameter("input matrix is not symplectic".into()));
    }
    Ok(minor_map(s, |a, b| f.mul(a, b), |a, b| f.sub(a, b)))
}

/// Symplectic transvection `x ↦ x + c⟨v, x⟩v`, i.e. `I + c·v·ᵗv·J`.
pub fn transvection(f: &Gf, v: &[Elem], c: Elem) -> SMat {
    let j = j_matrix(f);
    let mut out = identity();
    for r in 0..4 {
        for col in 0..4 {
            let vj = (0..4).fold(0, |s, k| f.add(s, f.mul(v[k], j[k * 4 + col])));
            out[r * 4 + col] = f.add(out[r * 4 + col], f.mul(c, f.mul(v[r], vj)));
        }
    }
    out
}

/// The generator `A` of order 5. The first row is `(1, 1, 0, 1)`; with
/// `(1, 0, 1, 1)` the matrix is not symplectic for `J` and has order 15.
pub fn suzuki_a() -> SMat {
    [1, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0]
}

/// The generator `S` of order 4.
pub fn suzuki_s() -> SMat {
    [1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1]
}

/// Multiplication table and structural data of `⟨A, S⟩ ⊂ Sp4(F₂)`.
#[derive(Clone, Debug)]
pub struct SuzukiGroup {
    pub elements: Vec<SMat>,
    /// `table[i][j]` is the index of `elements[i]·elements[j]`.
    pub table: Vec<Vec<usize>>,
    pub element_orders: Vec<usize>,
    pub order_a: usize,
    pub order_s: usize,
    pub relation_holds: bool,
    pub normal_subgroup_orders: BTreeSet<usize>,
    pub generators_fixed: bool,
}

fn elem_order(f: &Gf, m: &SMat) -> usize {
    let mut x = *m;
    let mut k = 1;
    while x != identity() {
        x = mat_mul(f, &x, m);
        k += 1;
    }
    k
}

/// Builds `Sz(2) = ⟨A, S⟩` over `F₂` and records its structure.
pub fn suzuki_group() -> Result<SuzukiGroup> {
    let f = Gf::new(2, 1)?;
    let gens = [suzuki_a(), suzuki_s()];
    if let Some(g) = gens.iter().find(|g| !is_symplectic(&f, g)) {
        return Err(Error::Internal(format!("generator {g:?} is not symplectic")));
    }
    let mut elements = vec![identity()];
    let mut index: HashMap<SMat, usize> = HashMap::from([(identity(), 0)]);
    let mut head = 0;
    while head < elements.len() {
        for g in &gens {
            let m = mat_mul(&f, &elements[head], g);
            if !index.contains_key(&m) {
                index.insert(m, elements.len());
                elements.push(m);
            }
        }
        head += 1;
    }
    let n = elements.len();
    let table: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| index[&mat_mul(&f, &elements[i], &elements[j])]).collect()).collect();
    let element_orders = elements.iter().map(|m| elem_order(&f, m)).collect();
    let (a, s) = (suzuki_a(), suzuki_s());
    let sas = mat_mul(&f, &mat_mul(&f, &s, &a), &symplectic_inverse(&f, &s));
    let relation_holds = sas == mat_mul(&f, &a, &a);
    let generators_fixed = gens.iter().all(|g| minor_isogeny(&f, g).ok() == Some(*g));
    let normal_subgroup_orders = normal_subgroups(&table).into_iter().map(|h| h.len()).collect();
    Ok(SuzukiGroup {
        elements,
        table,
        element_orders,
        order_a: elem_order(&f, &a),
        order_s: elem_order(&f, &s),
        relation_holds,
        normal_subgroup_orders,
        generators_fixed,
    })
}

/// Subgroups generated by at most two elements that are normal, given a
/// multiplication table with identity at index 0.
pub fn normal_subgroups(table: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    let n = table.len();
    let inv: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| table[i][j] == 0).expect("group")).collect();
    let mut out = BTreeSet::new();
    for g in 0..n {
        for h in g..n {
            let mut sub: BTreeSet<usize> = BTreeSet::from([0]);
            let mut queue = vec![0];
            while let Some(x) = queue.pop() {
                for &y in &[g, h] {
                    let z = table[x][y];
                    if sub.insert(z) {
                        queue.push(z);
                    }
                }
            }
            let normal = (0..n).all(|c| sub.iter().all(|&x| sub.contains(&table[table[c][x]][inv[c]])));
            if normal {
                out.insert(sub);
            }
        }
    }
    out
}

/// Multiplication table as CSV (row index, then products).
pub fn table_csv(g: &SuzukiGroup) -> String {
    let n = g.elements.len();
    let mut s = String::from("x");
    for j in 0..n {
        s.push_str(&format!(",{j}"));
    }
    s.push('\n');
    for (i, row) in g.table.iter().enumerate() {
        s.push_str(&i.to_string());
        for x in row {
            s.push_str(&format!(",{x}"));
        }
        s.push('\n');
    }
    s
}

/// Completes an isotropic flag `L ⊂ U` to a symplectic matrix whose first
/// column spans `L` and first two columns span `U`. `variant` selects a
/// second, independent completion.
pub fn complete_flag(f: &Gf, flag: &FlagConfig, variant: bool) -> Result<SMat> {
    if flag.kind() != FlagKind::IsotropicC2 {
        return Err(Error::MismatchedFlags("need an isotropic flag".into()));
    }
    let l = &flag.subspaces()[0];
    let u = &flag.subspaces()[1];
    let mut v1 = l[0].clone();
    let mut v2 = u
        .iter()
        .find(|v| !finitegeom::in_span(f, l, v))
        .cloned()
        .ok_or_else(|| Error::Internal("U does not extend L".into()))?;
    let mut vecs = finitegeom::all_vectors(f, 4)?;
    if variant {
        let g = f.primitive();
        v1 = v1.iter().map(|&x| f.mul(g, x)).collect();
        v2 = v2.iter().zip(&v1).map(|(&a, &b)| f.add(a, b)).collect();
        vecs.reverse();
    }
    let pair = |x: &Vector, y: &Vector| finitegeom::symplectic_pairing(f, x, y);
    let v4 = vecs
        .iter()
        .find(|v| pair(&v1, v) == 1 && pair(&v2, v) == 0)
        .ok_or_else(|| Error::Internal("no partner for v1".into()))?
        .clone();
    let v3 = vecs
        .iter()
        .find(|v| pair(&v1, v) == 0 && pair(&v2, v) == 1 && pair(v, &v4) == 0)
        .ok_or_else(|| Error::Internal("no partner for v2".into()))?
        .clone();
    let cols = [v1, v2, v3, v4];
    let mut s = [0; 16];
    for (c, v) in cols.iter().enumerate() {
        for r in 0..4 {
            s[r * 4 + c] = v[r];
        }
    }
    if !is_symplectic(f, &s) {
        return Err(Error::Internal("completion is not symplectic".into()));
    }
    Ok(s)
}

/// The flag `S·B`: first column and first two columns of `S`.
pub fn flag_of_matrix(f: &Gf, s: &SMat) -> Result<FlagConfig> {
    let col = |c: usize| (0..4).map(|r| s[r * 4 + c]).collect::<Vector>();
    FlagConfig::isotropic(f, vec![col(0)], vec![col(0), col(1)])
}

/// `φ(L ⊂ U)` via a symplectic completion.
pub fn phi_on_flags(f: &Gf, flag: &FlagConfig) -> Result<FlagConfig> {
    phi_on_flags_with(f, flag, false)
}

/// `φ(L ⊂ U)` through the chosen completion variant.
pub fn phi_on_flags_with(f: &Gf, flag: &FlagConfig, variant: bool) -> Result<FlagConfig> {
    if f.p() != 2 {
        return Err(Error::Parameter("the minor isogeny lives in characteristic 2".into()));
    }
    let s = complete_flag(f, flag, variant)?;
    flag_of_matrix(f, &minor_isogeny(f, &s)?)
}

/// Element of `F₂[ε]/(ε²)` over `F_{2^k}`: `a + εb`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dual {
    pub a: Elem,
    pub b: Elem,
}

/// Kernel of `φ` on `1 + ε·sp4(F₂)`: all 2¹⁰ block matrices are tested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieKernel {
    pub count: usize,
    pub matches_block_conditions: bool,
}

/// Block parameters `(a,b,c,d,u,v,w,x,y,z)` of
/// `T = [[A, B], [C, D]]`, `A = [[a,b],[c,d]]`, `B = [[u,v],[w,u]]`,
/// `C = [[x,y],[z,x]]`, `D = [[−d,−b],[−c,−a]]`.
pub fn lie_block_matrix(f: &Gf, p: [Elem; 10]) -> SMat {
    let [a, b, c, d, u, v, w, x, y, z] = p;
    let n = |e| f.neg(e);
    [a, b, u, v, c, d, w, u, x, y, n(d), n(b), z, x, n(c), n(a)]
}

/// Whether `φ(I + εT) = I` over dual numbers.
pub fn in_lie_kernel(f: &Gf, t: &SMat) -> bool {
    let id = identity();
    let m: [Dual; 16] = std::array::from_fn(|i| Dual { a: id[i], b: t[i] });
    let mul = |x: Dual, y: Dual| Dual { a: f.mul(x.a, y.a), b: f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)) };
    let sub = |x: Dual, y: Dual| Dual { a: f.sub(x.a, y.a), b: f.sub(x.b, y.b) };
    let out = minor_map(&m, mul, sub);
    out.iter().zip(id.iter()).all(|(d, &e)| d.a == e && d.b == 0)
}

pub fn lie_kernel_count() -> Result<LieKernel> {
    let f = Gf::new(2, 1)?;
    let mut count = 0;
    let mut ok = true;
    for code in 0u32..1024 {
        let p: [Elem; 10] = std::array::from_fn(|i| (code >> i) & 1);
        let t = lie_block_matrix(&f, p);
        let inside = in_lie_kernel(&f, &t);
        let [a, _b, _c, d, _u, v, w, _x, y, z] = p;
        let predicted = a == d && v == 0 && w == 0 && y == 0 && z == 0;
        ok &= inside == predicted;
        count += usize::from(inside);
    }
    Ok(LieKernel { count, matches_block_conditions: ok })
}

/// Histogram of `inv(F, φ(F))` over isotropic flags of `F_{2^k}⁴`.
pub fn c2twist_strata(k: u32) -> Result<Vec<(WeylElement, u64)>> {
    if k == 0 || k > 3 {
        return Err(Error::Parameter(format!("k = {k} must lie in 1..=3")));
    }
    finitegeom::strata_histogram("2C2", 2, k)
}

/// Flags `A^i·B`, `i = 0..4`, over `F_{2^k}`.
pub fn suzuki_fixed_cosets(f: &Gf) -> Result<Vec<FlagConfig>> {
    let f2 = Gf::new(2, 1)?;
    let a = suzuki_a();
    let mut m = identity();
    let mut out = Vec::new();
    for _ in 0..5 {
        out.push(flag_of_matrix(f, &m)?);
        m = mat_mul(&f2, &a, &m);
    }
    Ok(out)
}

/// Flags over `F_{2^k}` fixed by `φ`.
pub fn fixed_flags(f: &Gf) -> Result<Vec<FlagConfig>> {
    let mut out = Vec::new();
    for fl in finitegeom::isotropic_flags(f)? {
        if phi_on_flags(f, &fl)? == fl {
            out.push(fl);
        }
    }
    Ok(out)
}

/// Orbits of `Sz(2)` on the isotropic flags over `F₂`.
pub fn suzuki_flag_orbits() -> Result<Vec<Vec<FlagConfig>>> {
    let f = Gf::new(2, 1)?;
    let g = suzuki_group()?;
    let flags = finitegeom::isotropic_flags(&f)?;
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let pos: HashMap<FlagConfig, usize> = flags.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut orbits = Vec::new();
    for (i, fl) in flags.iter().enumerate() {
        if seen.contains(&i) {
            continue;
        }
        let mut orbit = Vec::new();
        let mut queue = VecDeque::from([fl.clone()]);
        seen.insert(i);
        while let Some(x) = queue.pop_front() {
            for m in &g.elements {
                let y = x.map_vectors(&f, |v| (0..4).map(|r| (0..4).fold(0, |s, c| f.add(s, f.mul(m[r * 4 + c], v[c])))).collect());
                if seen.insert(pos[&y]) {
                    queue.push_back(y);
                }
            }
            orbit.push(x);
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}
