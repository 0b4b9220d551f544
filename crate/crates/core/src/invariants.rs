//! Canonical-divisor coefficients, point counts of zero-dimensional
//! Deligne–Lusztig varieties and genera of Deligne–Lusztig curves.

use crate::dldatum::{self, DLDatum};
use crate::error::{Error, Result};
use crate::linalg::{rat_int, QMatrix, Rational};
use crate::rootcore::{self, Character, WeylElement};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Coefficients `λ_j` of the canonical class in the boundary divisors `D_j`,
/// where `D_j` drops the j-th letter of the word.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalCoefficients {
    pub word: Vec<usize>,
    pub lambdas: Vec<Rational>,
    pub mu: Character,
    pub twisted_coroots: Vec<Vec<i64>>,
}

/// Solves `(φ*∘w⁻¹ − id)(μ) = ρ − φ*(ρ)` for `μ` and returns
/// `λ_j = ⟨μ, α̃_j^∨⟩ − 1` with `α̃_j^∨ = s_{i_1}⋯s_{i_{j−1}}(α_{i_j}^∨)`.
pub fn canonical_coefficients(d: &DLDatum, word: &[usize]) -> Result<CanonicalCoefficients> {
    let g = d.group();
    let n = d.rank();
    let w = g.element(word)?;
    let phi = d.isogeny_matrix();
    // (M_w M_φ)ᵀ represents φ* ∘ w⁻¹ on fundamental-weight coordinates
    let wphi = rootcore::mat_mul(w.matrix(), &phi, n);
    let op = QMatrix::from_rows(
        (0..n).map(|i| (0..n).map(|j| rat_int(wphi[j * n + i] - i64::from(i == j))).collect()).collect(),
    );
    let rho = rootcore::rho(n);
    // φ*(ρ)_k = p^{s_k} ρ_{d(k)}
    let rhs: Vec<Rational> = (0..n)
        .map(|k| {
            let phi_rho: Rational = (0..n).fold(rat_int(0), |s, r| s + rat_int(phi[r * n + k]) * &rho[r]);
            &rho[k] - phi_rho
        })
        .collect();
    if op.det().is_zero() {
        return Err(Error::Internal(format!("operator φ*∘w⁻¹ − id is singular for word {word:?}")));
    }
    let mu = op.solve(&rhs).ok_or_else(|| Error::Internal("linear system inconsistent".into()))?;
    let twisted = twisted_coroots(d, word)?;
    let lambdas = twisted
        .iter()
        .map(|y| {
            let pair = y.iter().zip(&mu).fold(rat_int(0), |s, (&c, m)| s + rat_int(c) * m);
            pair - rat_int(1)
        })
        .collect();
    Ok(CanonicalCoefficients { word: word.to_vec(), lambdas, mu, twisted_coroots: twisted })
}

/// `α̃_j^∨ = s_{i_1}⋯s_{i_{j−1}}(α_{i_j}^∨)` in simple-coroot coordinates.
pub fn twisted_coroots(d: &DLDatum, word: &[usize]) -> Result<Vec<Vec<i64>>> {
    let g = d.group();
    let n = d.rank();
    (0..word.len())
        .map(|j| {
            let prefix = g.evaluate(&word[..j])?;
            let i = word[j];
            if i == 0 || i > n {
                return Err(Error::Parameter(format!("generator index {i} out of range")));
            }
            let e: Vec<i64> = (0..n).map(|k| i64::from(k + 1 == i)).collect();
            Ok(prefix.apply_coroot(&e))
        })
        .collect()
}

/// Catalog key and word of every tabulated length-two variety.
pub const TABLE_WORDS: &[(&str, &str)] = &[
    ("A2", "12"),
    ("2A2", "12"),
    ("C2", "21"),
    ("C2", "12"),
    ("2C2", "12"),
    ("2C2", "21"),
    ("2G2", "21"),
    ("2G2", "12"),
    ("G2", "12"),
    ("G2", "21"),
    ("2A3", "12"),
    ("2A3", "21"),
    ("2A3", "23"),
    ("2A4", "12"),
    ("2A4", "21"),
    ("2A4", "13"),
    ("3D4", "12"),
    ("3D4", "21"),
    ("2F4", "12"),
    ("2F4", "13"),
    ("2F4", "21"),
    ("2F4", "34"),
    ("2F4", "24"),
    ("2F4", "43"),
];

/// Keys whose curve `X(s_1)` is covered by [`curve_genus`] in the tables.
pub const GENUS_KEYS: &[&str] = &["A1", "2A2", "2C2", "2G2"];

/// One row of a coefficient table: displayed parameter and coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub param: u64,
    pub lambdas: Vec<Rational>,
}

/// Evaluates the coefficients of `word` for each catalog parameter value.
/// For Suzuki–Ree keys the inputs are `n` and the rows show `q0 = p^n`.
pub fn table_sweep(key: &str, word: &[usize], params: &[u64]) -> Result<Vec<TableRow>> {
    params
        .iter()
        .map(|&param| {
            let d = dldatum::catalog(key, param)?;
            let c = canonical_coefficients(&d, word)?;
            Ok(TableRow { param: dldatum::display_param(key, param)?, lambdas: c.lambdas })
        })
        .collect()
}

/// Point count of the zero-dimensional variety `X(id)` via the rational
/// Bruhat decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDimCount {
    pub key: String,
    pub total: BigInt,
    pub summands: Vec<(WeylElement, BigInt)>,
}

/// `Σ_{w ∈ W^φ} p^{s·ℓ(w)/r}`.
pub fn zero_dim_count(d: &DLDatum) -> Result<ZeroDimCount> {
    let (r, s) = d.minimal_exponents();
    let mut summands = Vec::new();
    let mut total = BigInt::zero();
    for w in d.phi_fixed_weyl() {
        let e = s as usize * w.length();
        if e % r as usize != 0 {
            return Err(Error::InvalidDatum(format!(
                "r = {r} does not divide s·ℓ(w) = {e} for w = {}",
                w.word_string()
            )));
        }
        let term = num_traits::pow(BigInt::from(d.p()), e / r as usize);
        total += &term;
        summands.push((w, term));
    }
    Ok(ZeroDimCount { key: d.key().to_string(), total, summands })
}

/// Genus of the curve `X(s_1)` from `2g − 2 = λ_1 · |X(id)|`.
pub fn curve_genus(d: &DLDatum) -> Result<BigInt> {
    let s1 = d.group().element(&[1])?.clone();
    if !d.is_phi_coxeter(&s1) {
        return Err(Error::Hypothesis(format!("s1 is not φ-Coxeter for {}", d.key())));
    }
    let lambda = canonical_coefficients(d, &[1])?.lambdas[0].clone();
    let n = zero_dim_count(d)?.total;
    let two_g_minus_two = lambda * Rational::from_integer(n);
    let g = (two_g_minus_two + rat_int(2)) / rat_int(2);
    if !g.is_integer() || g.is_negative() {
        return Err(Error::Hypothesis(format!("genus {g} is not a non-negative integer")));
    }
    Ok(g.to_integer())
}

/// True when every coefficient is `≤ 0`.
pub fn all_nonpositive(l: &[Rational]) -> bool {
    l.iter().all(|x| !x.is_positive())
}

/// Recomputes `λ_j` from the scaled solution `(m, mμ)`:
/// `(⟨mμ, α̃_j^∨⟩ − m)/m`.
pub fn scaled_lambdas(c: &CanonicalCoefficients, m: i64) -> Vec<Rational> {
    let m = rat_int(m);
    c.twisted_coroots
        .iter()
        .map(|y| {
            let pair = y.iter().zip(&c.mu).fold(rat_int(0), |s, (&k, x)| s + rat_int(k) * x * &m);
            (pair - &m) / &m
        })
        .collect()
}

