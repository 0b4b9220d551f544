//! Root systems and Weyl groups generated from Cartan matrices.
//!
//! Conventions: `C[i][j] = ⟨α_i, α_j^∨⟩`. Roots are stored in simple-root
//! coordinates and coroots in simple-coroot coordinates. A Weyl group element
//! is identified with its integer matrix on the simple-coroot basis; words are
//! written with 1-based generator indices and `[i1, i2, …]` means
//! `s_{i1} s_{i2} ⋯`.

use crate::error::{Error, Result};
use crate::guard;
use crate::linalg::{rat_int, Rational};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

/// Validated Cartan matrix together with a type label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    label: String,
}

impl CartanMatrix {
    /// Validates the Cartan axioms: square, diagonal 2, off-diagonal ≤ 0 and
    /// a symmetric zero pattern.
    pub fn new(entries: Vec<Vec<i64>>, label: impl Into<String>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({},{}) is not 2", i + 1, i + 1)));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("positive entry at ({},{})", i + 1, j + 1)));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "zero pattern not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
                if entries[i][j] * entries[j][i] > 3 {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({},{}) and ({},{}) do not give a finite type",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(CartanMatrix { entries, label: label.into() })
    }

    /// Type `A_n`.
    pub fn a(n: usize) -> Self {
        let e = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i as i64 - j as i64).abs() {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        CartanMatrix { entries: e, label: format!("A{n}") }
    }

    /// Type `C_2` with `α_1` short.
    pub fn c2() -> Self {
        CartanMatrix { entries: vec![vec![2, -1], vec![-2, 2]], label: "C2".into() }
    }

    /// Type `G_2` with `α_1` short.
    pub fn g2() -> Self {
        CartanMatrix { entries: vec![vec![2, -1], vec![-3, 2]], label: "G2".into() }
    }

    /// Type `F_4` with `α_1, α_2` long and `α_3, α_4` short.
    pub fn f4() -> Self {
        CartanMatrix {
            entries: vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -2, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2],
            ],
            label: "F4".into(),
        }
    }

    /// Type `D_4` with central node 2.
    pub fn d4() -> Self {
        CartanMatrix {
            entries: vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ],
            label: "D4".into(),
        }
    }

    /// Product of `d` copies of `A_1`.
    pub fn a1_power(d: usize) -> Self {
        let e = (0..d).map(|i| (0..d).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
        let label = if d == 1 { "A1".to_string() } else { vec!["A1"; d].join("x") };
        CartanMatrix { entries: e, label }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Entry `C_ij` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Simple reflection in simple-root coordinates:
    /// `s_i(x) = x − (Σ_j x_j C_ji) α_i`.
    pub fn reflect_root(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let pairing: i64 = x.iter().enumerate().map(|(j, &xj)| xj * self.entries[j][i]).sum();
        let mut y = x.to_vec();
        y[i] -= pairing;
        y
    }

    /// Simple reflection in simple-coroot coordinates:
    /// `s_i(y) = y − (Σ_k y_k C_ik) α_i^∨`.
    pub fn reflect_coroot(&self, i: usize, y: &[i64]) -> Vec<i64> {
        let pairing: i64 = y.iter().enumerate().map(|(k, &yk)| yk * self.entries[i][k]).sum();
        let mut z = y.to_vec();
        z[i] -= pairing;
        z
    }
}

/// Full root system with coroots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
}

/// Builds the root system by closing the simple roots under simple
/// reflections; coroots are carried along the same reflection sequence.
pub fn build_root_system(cartan: CartanMatrix) -> RootSystem {
    let n = cartan.rank();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let e: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
        seen.insert(e.clone(), roots.len());
        roots.push(e.clone());
        coroots.push(e.clone());
        queue.push_back(roots.len() - 1);
    }
    while let Some(idx) = queue.pop_front() {
        for i in 0..n {
            let r = cartan.reflect_root(i, &roots[idx]);
            if seen.contains_key(&r) {
                continue;
            }
            let c = cartan.reflect_coroot(i, &coroots[idx]);
            seen.insert(r.clone(), roots.len());
            roots.push(r);
            coroots.push(c);
            queue.push_back(roots.len() - 1);
        }
    }
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = roots.into_iter().zip(coroots).collect();
    pairs.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        (ha.signum() < 0, ha.abs(), &a.0).cmp(&(hb.signum() < 0, hb.abs(), &b.0))
    });
    let (roots, coroots) = pairs.into_iter().unzip();
    RootSystem { cartan, roots, coroots }
}

impl RootSystem {
    pub fn new(cartan: CartanMatrix) -> Self {
        build_root_system(cartan)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// All roots in simple-root coordinates; positive roots come first.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Coroots, aligned with [`RootSystem::roots`].
    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        self.roots[idx].iter().all(|&c| c >= 0)
    }

    pub fn positive_roots(&self) -> Vec<&Vec<i64>> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).map(|i| &self.roots[i]).collect()
    }

    pub fn positive_coroots(&self) -> Vec<&Vec<i64>> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).map(|i| &self.coroots[i]).collect()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn contains_coroot(&self, y: &[i64]) -> bool {
        self.coroots.iter().any(|c| c == y)
    }

    /// Pairing `⟨α, β^∨⟩` of a root and a coroot in their simple coordinates.
    pub fn pairing(&self, root: &[i64], coroot: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += root[i] * coroot[j] * self.cartan.entry(i, j);
            }
        }
        s
    }
}

/// A Weyl group element: its matrix on the simple-coroot basis, its
/// lexicographically least reduced word and its length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-major `rank × rank` integer matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }

    /// Canonical reduced word, 1-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Set of generators occurring in a (equivalently any) reduced word.
    pub fn support(&self) -> BTreeSet<usize> {
        self.word.iter().copied().collect()
    }

    /// Word as a digit string, `"e"` for the identity.
    pub fn word_string(&self) -> String {
        word_to_string(&self.word)
    }

    /// Applies the element to a vector in simple-coroot coordinates.
    pub fn apply_coroot(&self, y: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, self.rank, y)
    }

    /// Transpose action `x ↦ Mᵀ x`, i.e. `x ↦ w⁻¹(x)` on characters written in
    /// fundamental-weight coordinates.
    pub fn apply_transpose(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.rank;
        (0..n)
            .map(|k| (0..n).fold(rat_int(0), |s, r| s + rat_int(self.matrix[r * n + k]) * &x[r]))
            .collect()
    }
}

/// Formats a word, e.g. `[2, 1]` as `"21"` and the empty word as `"e"`.
pub fn word_to_string(word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else if word.iter().all(|&i| i < 10) {
        word.iter().map(|i| i.to_string()).collect()
    } else {
        word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Parses `"21"`, `"2,1"` or `"e"` into a word.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = if s.contains(',') { s.split(',').collect() } else { s.split("").filter(|p| !p.is_empty()).collect() };
    parts
        .into_iter()
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| Error::Parse(format!("invalid word letter `{p}` in `{s}`")))
        })
        .collect()
}

pub(crate) fn mat_vec(m: &[i64], n: usize, y: &[i64]) -> Vec<i64> {
    (0..n).map(|r| (0..n).map(|c| m[r * n + c] * y[c]).sum()).collect()
}

pub(crate) fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

pub(crate) fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// The Weyl group of a root system, fully enumerated.
#[derive(Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    generators: Vec<Vec<i64>>,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylGroup {
    /// Enumerates the group by breadth-first search over right multiplication
    /// by simple reflections.
    pub fn new(rs: RootSystem) -> Result<Arc<Self>> {
        let n = rs.rank();
        let c = rs.cartan().clone();
        let generators: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for col in 0..n {
                    m[i * n + col] -= c.entry(i, col);
                }
                m
            })
            .collect();
        let mut mats: Vec<Vec<i64>> = vec![identity(n)];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(identity(n), 0);
        let mut head = 0;
        while head < mats.len() {
            guard::check(mats.len() as u128)?;
            for g in &generators {
                let m = mat_mul(&mats[head], g, n);
                if !index.contains_key(&m) {
                    index.insert(m.clone(), mats.len());
                    mats.push(m);
                }
            }
            head += 1;
        }
        let mut group = WeylGroup { rs, generators, elements: Vec::new(), index: HashMap::new() };
        let lengths: Vec<usize> = mats.iter().map(|m| group.length_of_matrix(m)).collect();
        // canonical words: smallest left descent first, recursing on s_i w
        let mut order: Vec<usize> = (0..mats.len()).collect();
        order.sort_by_key(|&i| lengths[i]);
        let mut words: Vec<Option<Vec<usize>>> = vec![None; mats.len()];
        for &i in &order {
            if lengths[i] == 0 {
                words[i] = Some(Vec::new());
                continue;
            }
            let (d, rest) = (0..n)
                .find_map(|g| {
                    let m = mat_mul(&group.generators[g], &mats[i], n);
                    let j = index[&m];
                    (lengths[j] + 1 == lengths[i]).then_some((g, j))
                })
                .expect("every non-identity element has a left descent");
            let mut w = vec![d + 1];
            w.extend(words[rest].clone().expect("shorter elements processed first"));
            words[i] = Some(w);
        }
        let mut elements: Vec<WeylElement> = mats
            .into_iter()
            .zip(words)
            .map(|(matrix, word)| WeylElement { rank: n, matrix, word: word.expect("assigned") })
            .collect();
        elements.sort_by(|a, b| (a.length(), &a.word).cmp(&(b.length(), &b.word)));
        group.index = elements.iter().enumerate().map(|(i, e)| (e.matrix.clone(), i)).collect();
        group.elements = elements;
        Ok(Arc::new(group))
    }

    /// Convenience constructor from a Cartan matrix.
    pub fn from_cartan(c: CartanMatrix) -> Result<Arc<Self>> {
        Self::new(RootSystem::new(c))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements sorted by length, then canonical word.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    /// Matrix of the simple reflection `s_i` (0-based `i`).
    pub fn generator_matrix(&self, i: usize) -> &[i64] {
        &self.generators[i]
    }

    /// Number of positive coroots sent to negative coroots.
    pub fn length_of_matrix(&self, m: &[i64]) -> usize {
        let n = self.rank();
        self.rs
            .positive_coroots()
            .into_iter()
            .filter(|y| mat_vec(m, n, y).iter().any(|&c| c < 0))
            .count()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("group is non-empty")
    }

    pub fn simple_reflection(&self, i: usize) -> Result<&WeylElement> {
        if i == 0 || i > self.rank() {
            return Err(Error::Parameter(format!("generator index {i} out of range")));
        }
        Ok(self.from_matrix(&self.generators[i - 1]).expect("generators belong to the group"))
    }

    pub fn from_matrix(&self, m: &[i64]) -> Option<&WeylElement> {
        self.index.get(m).map(|&i| &self.elements[i])
    }

    /// Product of the simple reflections in `word`, without checking
    /// reducedness.
    pub fn evaluate(&self, word: &[usize]) -> Result<&WeylElement> {
        let n = self.rank();
        let mut m = identity(n);
        for &i in word {
            if i == 0 || i > n {
                return Err(Error::Parameter(format!("generator index {i} out of range 1..={n}")));
            }
            m = mat_mul(&m, &self.generators[i - 1], n);
        }
        Ok(self.from_matrix(&m).expect("closure contains all products"))
    }

    /// Element with the given reduced word; errors if the word is not reduced.
    pub fn element(&self, word: &[usize]) -> Result<&WeylElement> {
        let w = self.evaluate(word)?;
        if w.length() != word.len() {
            return Err(Error::NotReduced(word.to_vec()));
        }
        Ok(w)
    }

    fn check_member(&self, w: &WeylElement) -> Result<()> {
        if w.rank != self.rank() || self.index.get(&w.matrix).map(|&i| &self.elements[i]) != Some(w) {
            return Err(Error::MismatchedGroups);
        }
        Ok(())
    }

    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> Result<&WeylElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let m = mat_mul(&a.matrix, &b.matrix, self.rank());
        Ok(self.from_matrix(&m).expect("closed under multiplication"))
    }

    pub fn inverse(&self, a: &WeylElement) -> Result<&WeylElement> {
        self.check_member(a)?;
        let rev: Vec<usize> = a.word.iter().rev().copied().collect();
        self.evaluate(&rev)
    }

    /// Bruhat order: `v ≤ w` iff `v` is the product of a subword of the
    /// canonical reduced word of `w`.
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> Result<bool> {
        self.check_member(v)?;
        self.check_member(w)?;
        if v.length() > w.length() {
            return Ok(false);
        }
        let n = self.rank();
        let mut reach: BTreeSet<Vec<i64>> = BTreeSet::new();
        reach.insert(identity(n));
        for &i in &w.word {
            let extra: Vec<Vec<i64>> =
                reach.iter().map(|m| mat_mul(m, &self.generators[i - 1], n)).collect();
            reach.extend(extra);
        }
        Ok(reach.contains(&v.matrix))
    }

    /// All reduced words of `w`, lexicographically sorted.
    pub fn reduced_words(&self, w: &WeylElement) -> Result<Vec<Vec<usize>>> {
        self.check_member(w)?;
        let mut memo: HashMap<Vec<i64>, Vec<Vec<usize>>> = HashMap::new();
        let mut out = self.reduced_words_rec(&w.matrix, w.length(), &mut memo)?;
        out.sort();
        Ok(out)
    }

    fn reduced_words_rec(
        &self,
        m: &[i64],
        len: usize,
        memo: &mut HashMap<Vec<i64>, Vec<Vec<usize>>>,
    ) -> Result<Vec<Vec<usize>>> {
        if len == 0 {
            return Ok(vec![Vec::new()]);
        }
        if let Some(v) = memo.get(m) {
            return Ok(v.clone());
        }
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            let sm = mat_mul(&self.generators[i], m, n);
            if self.length_of_matrix(&sm) + 1 == len {
                for mut tail in self.reduced_words_rec(&sm, len - 1, memo)? {
                    tail.insert(0, i + 1);
                    out.push(tail);
                }
            }
        }
        guard::check(out.len() as u128)?;
        memo.insert(m.to_vec(), out.clone());
        Ok(out)
    }
}

/// Weyl group of the catalog type with the given label (`A1`…`A4`, `C2`, `G2`,
/// `D4`, `F4`, `A1xA1`, …).
pub fn cartan_by_label(label: &str) -> Result<CartanMatrix> {
    Ok(match label {
        "A1" => CartanMatrix::a1_power(1),
        "A2" => CartanMatrix::a(2),
        "A3" => CartanMatrix::a(3),
        "A4" => CartanMatrix::a(4),
        "C2" | "B2" => CartanMatrix::c2(),
        "G2" => CartanMatrix::g2(),
        "D4" => CartanMatrix::d4(),
        "F4" => CartanMatrix::f4(),
        other => {
            let parts: Vec<&str> = other.split('x').collect();
            if parts.len() > 1 && parts.iter().all(|p| *p == "A1") {
                CartanMatrix::a1_power(parts.len())
            } else {
                return Err(Error::UnknownCase(other.to_string()));
            }
        }
    })
}

/// A character recorded by its pairings `⟨μ, α_i^∨⟩` with the simple coroots.
pub type Character = Vec<Rational>;

/// Fundamental-weight coordinates of `ρ`: all ones.
pub fn rho(n: usize) -> Character {
    vec![rat_int(1); n]
}
