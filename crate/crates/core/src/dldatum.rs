//! Deligne–Lusztig data: a root system with a prime `p`, a permutation `d`
//! of the simple indices and exponents `s_i`, encoding the monomial
//! p-morphism `φ_*(α_i^∨) = p^{s_i} α_{d(i)}^∨`.

use crate::error::{Error, Result};
use crate::rootcore::{self, CartanMatrix, RootSystem, WeylElement, WeylGroup};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Largest `r` tried when searching for `φ_*^r = p^s`.
const MAX_R: u32 = 6;

/// A validated Deligne–Lusztig datum.
#[derive(Clone, Debug)]
pub struct DLDatum {
    key: String,
    group: Arc<WeylGroup>,
    p: u64,
    perm: Vec<usize>,
    exps: Vec<u32>,
    r: u32,
    s: u32,
}

fn checked_pow(p: u64, e: u32) -> Result<i64> {
    i64::try_from(p)
        .ok()
        .and_then(|p| p.checked_pow(e))
        .ok_or_else(|| Error::Parameter(format!("{p}^{e} overflows")))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&i| i < perm.len() && !std::mem::replace(&mut seen[i], true))
}

fn perm_order(perm: &[usize]) -> usize {
    let mut k = 1;
    let mut cur: Vec<usize> = perm.to_vec();
    while cur.iter().enumerate().any(|(i, &c)| i != c) {
        cur = cur.iter().map(|&c| perm[c]).collect();
        k += 1;
    }
    k
}

/// Checks `p^{s_i}·C_{d(j),d(i)} = p^{s_j}·C_{j,i}` for all `i, j`
/// (`perm` is 0-based: `perm[i] = d(i)`).
pub fn validate_isogeny(rs: &RootSystem, p: u64, perm: &[usize], exps: &[u32]) -> bool {
    let n = rs.rank();
    if perm.len() != n || exps.len() != n || !is_permutation(perm) || !is_prime(p) {
        return false;
    }
    let c = rs.cartan();
    for i in 0..n {
        for j in 0..n {
            let (Ok(qi), Ok(qj)) = (checked_pow(p, exps[i]), checked_pow(p, exps[j])) else {
                return false;
            };
            if qi * c.entry(perm[j], perm[i]) != qj * c.entry(j, i) {
                return false;
            }
        }
    }
    true
}

/// Integer matrix of `φ_*` on the simple-coroot basis: column `j` carries
/// `p^{s_j}` in row `d(j)`.
pub fn isogeny_matrix(p: u64, perm: &[usize], exps: &[u32]) -> Result<Vec<i64>> {
    let n = perm.len();
    let mut m = vec![0i64; n * n];
    for j in 0..n {
        m[perm[j] * n + j] = checked_pow(p, exps[j])?;
    }
    Ok(m)
}

/// Smallest `(r, s)` with `r ≤ 6`, `s > 0` and `φ_*^r = p^s·id`.
fn find_minimal_exponents(p: u64, perm: &[usize], exps: &[u32]) -> Option<(u32, u32)> {
    let n = perm.len();
    let m = isogeny_matrix(p, perm, exps).ok()?;
    let mut pow = rootcore::identity(n);
    for r in 1..=MAX_R {
        pow = mat_mul_checked(&pow, &m, n)?;
        let d = pow[0];
        let scalar = (0..n).all(|i| (0..n).all(|j| pow[i * n + j] == if i == j { d } else { 0 }));
        if scalar && d > 1 {
            let mut s = 0;
            let mut x = d;
            while x % p as i64 == 0 {
                x /= p as i64;
                s += 1;
            }
            if x == 1 {
                return Some((r, s));
            }
        }
    }
    None
}

fn mat_mul_checked(a: &[i64], b: &[i64], n: usize) -> Option<Vec<i64>> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i * n + j] = out[i * n + j].checked_add(a[i * n + k].checked_mul(b[k * n + j])?)?;
            }
        }
    }
    Some(out)
}

impl DLDatum {
    /// Validates and builds a datum. `perm` is 0-based. A permutation of
    /// order 3 is only accepted on `D4` and on products of `A1`.
    pub fn new(key: impl Into<String>, group: Arc<WeylGroup>, p: u64, perm: Vec<usize>, exps: Vec<u32>) -> Result<Self> {
        let key = key.into();
        let rs = group.root_system();
        if !is_prime(p) {
            return Err(Error::InvalidDatum(format!("{p} is not prime")));
        }
        if !validate_isogeny(rs, p, &perm, &exps) {
            return Err(Error::InvalidDatum(format!(
                "permutation {perm:?} with exponents {exps:?} violates the Cartan compatibility at p={p}"
            )));
        }
        let label = rs.cartan().label();
        match perm_order(&perm) {
            1 | 2 => {}
            3 if label == "D4" || label.split('x').all(|p| p == "A1") => {}
            o => return Err(Error::InvalidDatum(format!("diagram permutation of order {o} not admitted for {label}"))),
        }
        let (r, s) = find_minimal_exponents(p, &perm, &exps)
            .ok_or_else(|| Error::InvalidDatum("no power of φ_* is a positive power of p".into()))?;
        Ok(DLDatum { key, group, p, perm, exps, r, s })
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// 0-based diagram permutation.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Minimal exponents `(r, s)` with `φ_*^r = p^s·id`.
    pub fn minimal_exponents(&self) -> (u32, u32) {
        (self.r, self.s)
    }

    /// Row-major matrix of `φ_*`; its transpose represents `φ*` on
    /// fundamental-weight coordinates.
    pub fn isogeny_matrix(&self) -> Vec<i64> {
        isogeny_matrix(self.p, &self.perm, &self.exps).expect("validated at construction")
    }

    /// Frobenius type: all exponents equal.
    pub fn is_frobenius_type(&self) -> bool {
        self.exps.windows(2).all(|w| w[0] == w[1])
    }

    /// `φ(w)`, obtained by applying `d` to every letter.
    pub fn phi_on_weyl(&self, w: &WeylElement) -> Result<WeylElement> {
        let word: Vec<usize> = w.word().iter().map(|&i| self.perm[i - 1] + 1).collect();
        self.group.evaluate(&word).cloned()
    }

    /// `W^φ`: elements commuting with `φ_*`.
    pub fn phi_fixed_weyl(&self) -> Vec<WeylElement> {
        let n = self.rank();
        let m = self.isogeny_matrix();
        self.group
            .elements()
            .iter()
            .filter(|w| rootcore::mat_mul(&m, w.matrix(), n) == rootcore::mat_mul(w.matrix(), &m, n))
            .cloned()
            .collect()
    }

    /// `φ`-orbits on the simple indices (1-based), sorted.
    pub fn phi_orbits(&self) -> Vec<BTreeSet<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                orbit.insert(j + 1);
                j = self.perm[j];
            }
            out.push(orbit);
        }
        out
    }

    /// Smallest `φ`-stable set of simple indices containing `Supp(w)`.
    pub fn phi_support(&self, w: &WeylElement) -> BTreeSet<usize> {
        let supp = w.support();
        self.phi_orbits().into_iter().filter(|o| !o.is_disjoint(&supp)).flatten().collect()
    }

    /// `φ`-Coxeter: a reduced word meets every `φ`-orbit exactly once.
    pub fn is_phi_coxeter(&self, w: &WeylElement) -> bool {
        let orbits = self.phi_orbits();
        w.length() == orbits.len()
            && orbits.iter().all(|o| w.word().iter().filter(|i| o.contains(i)).count() == 1)
    }

    /// The parameter `q = p^{s/r}` when it is an integer.
    pub fn q(&self) -> Option<u64> {
        (self.s % self.r == 0).then(|| self.p.pow(self.s / self.r))
    }
}

/// All valid `(perm, exps)` with exponents in `0..=max_exp` (not all zero),
/// sorted lexicographically by permutation then exponents.
pub fn enumerate_isogenies(group: &Arc<WeylGroup>, p: u64, max_exp: u32) -> Result<Vec<DLDatum>> {
    if max_exp > 4 {
        return Err(Error::Parameter(format!("max_exp {max_exp} exceeds 4")));
    }
    let n = group.rank();
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::new();
    for perm in perms {
        let total = (max_exp as usize + 1).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let exps: Vec<u32> = (0..n)
                .map(|_| {
                    let e = (c % (max_exp as usize + 1)) as u32;
                    c /= max_exp as usize + 1;
                    e
                })
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect();
            if let Ok(d) = DLDatum::new("enumerated", group.clone(), p, perm.clone(), exps) {
                out.push(d);
            }
        }
    }
    out.sort_by(|a, b| (&a.perm, &a.exps).cmp(&(&b.perm, &b.exps)));
    Ok(out)
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// How the numeric parameter of a catalog entry is interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// The parameter is `q`, a prime power.
    Q,
    /// The parameter is `n`; the displayed value is `q0 = p^n`.
    N,
}

/// Catalog keys in display order.
pub const CATALOG_KEYS: &[&str] = &[
    "A1", "A2", "A3", "A4", "C2", "G2", "D4", "F4", "2A2", "2A3", "2A4", "3D4", "2C2", "2G2", "2F4",
    "weil-A1xA1", "weil-A1xA1xA1",
];

/// Parameter convention for a catalog key.
pub fn param_kind(key: &str) -> Result<ParamKind> {
    match key {
        "2C2" | "2G2" | "2F4" => Ok(ParamKind::N),
        k if CATALOG_KEYS.contains(&k) => Ok(ParamKind::Q),
        k => Err(Error::UnknownCase(k.to_string())),
    }
}

/// Writes a prime power as `(p, s)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Parameter(format!("q = {q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q ≥ 2 has a prime factor");
    let mut x = q;
    let mut s = 0;
    while x % p == 0 {
        x /= p;
        s += 1;
    }
    if x != 1 {
        return Err(Error::Parameter(format!("q = {q} is not a prime power")));
    }
    Ok((p, s))
}

/// Value shown in tables: `q` for Frobenius-type keys, `q0 = p^n` for the
/// Suzuki–Ree keys.
pub fn display_param(key: &str, param: u64) -> Result<u64> {
    Ok(match param_kind(key)? {
        ParamKind::Q => param,
        ParamKind::N => {
            let p = if key == "2G2" { 3u64 } else { 2 };
            p.checked_pow(param as u32).ok_or_else(|| Error::Parameter(format!("n = {param} too large")))?
        }
    })
}

/// Builds the catalog datum for `key`. For Frobenius-type keys `param` is
/// `q`; for `2C2`, `2F4` (p = 2) and `2G2` (p = 3) it is `n` with
/// `q0 = p^n`.
pub fn catalog(key: &str, param: u64) -> Result<DLDatum> {
    let kind = param_kind(key)?;
    if kind == ParamKind::N && param > 8 {
        return Err(Error::Parameter(format!("n = {param} exceeds 8")));
    }
    let n_exp = param as u32;
    let (label, p, perm, exps): (&str, u64, Vec<usize>, Vec<u32>) = match key {
        "2C2" => ("C2", 2, vec![1, 0], vec![n_exp + 1, n_exp]),
        "2G2" => ("G2", 3, vec![1, 0], vec![n_exp + 1, n_exp]),
        "2F4" => ("F4", 2, vec![3, 2, 1, 0], vec![n_exp, n_exp, n_exp + 1, n_exp + 1]),
        _ => {
            let (p, s0) = prime_power(param)?;
            match key {
                "A1" | "A2" | "A3" | "A4" | "C2" | "G2" | "D4" | "F4" => {
                    let n = rootcore::cartan_by_label(key)?.rank();
                    (key, p, (0..n).collect(), vec![s0; n])
                }
                "2A2" | "2A3" | "2A4" => {
                    let label = &key[1..];
                    let n = rootcore::cartan_by_label(label)?.rank();
                    (label, p, (0..n).rev().collect(), vec![s0; n])
                }
                // d = (1 3 4) on the outer nodes of D4
                "3D4" => ("D4", p, vec![2, 1, 3, 0], vec![s0; 4]),
                "weil-A1xA1" => ("A1xA1", p, vec![1, 0], vec![s0; 2]),
                "weil-A1xA1xA1" => ("A1xA1xA1", p, vec![1, 2, 0], vec![s0; 3]),
                other => return Err(Error::UnknownCase(other.to_string())),
            }
        }
    };
    let group = weyl_group_cached(label)?;
    DLDatum::new(key, group, p, perm, exps)
}

/// Weyl groups are cached per label because `F4` takes a moment to build.
pub fn weyl_group_cached(label: &str) -> Result<Arc<WeylGroup>> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<WeylGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().expect("cache lock").get(label) {
        return Ok(g.clone());
    }
    let g = WeylGroup::from_cartan(rootcore::cartan_by_label(label)?)?;
    cache.lock().expect("cache lock").insert(label.to_string(), g.clone());
    Ok(g)
}

/// Datum from explicit data on a catalog Cartan type (1-based permutation).
pub fn custom(label: &str, p: u64, perm_one_based: &[usize], exps: &[u32]) -> Result<DLDatum> {
    let perm: Vec<usize> = perm_one_based
        .iter()
        .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parameter("permutation entries are 1-based".into())))
        .collect::<Result<_>>()?;
    let group = weyl_group_cached(label)?;
    DLDatum::new(format!("custom-{label}"), group, p, perm, exps.to_vec())
}

/// The Cartan matrix underlying a catalog key.
pub fn cartan_for_key(key: &str) -> Result<CartanMatrix> {
    let label = match key {
        "2A2" | "2A3" | "2A4" | "2C2" | "2G2" | "2F4" | "3D4" => &key[1..],
        "weil-A1xA1" => "A1xA1",
        "weil-A1xA1xA1" => "A1xA1xA1",
        k => k,
    };
    rootcore::cartan_by_label(label)
}
