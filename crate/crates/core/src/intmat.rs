//! Integer matrix algorithms over `BigInt`: fraction-free determinants, Smith
//! normal form and saturated integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Square or rectangular integer matrix stored as rows.
pub type IntRows = Vec<Vec<BigInt>>;

/// Converts machine integers to `BigInt` rows.
pub fn to_big(rows: &[Vec<i64>]) -> IntRows {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Determinant by Bareiss elimination (exact, fraction free).
pub fn det(m: &IntRows) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Diagonal of the Smith normal form, `d_1 | d_2 | … | d_r`, with zeros for
/// the corank appended at the end. Entries are non-negative.
pub fn smith_diagonal(m: &IntRows) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // choose the non-zero entry of least absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            // Euclid on column t against the pivot row; the column is zero
            // below the pivot afterwards, so the row pass only touches row t
            for i in t + 1..rows {
                while !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &a[i][j] - &q * &a[t][j];
                        a[i][j] = v;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                    }
                }
            }
            let mut dirty = false;
            for j in t + 1..cols {
                while !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[j] - &q * &row[t];
                        row[j] = v;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    while diag.len() < rows.min(cols) {
        diag.push(BigInt::zero());
    }
    diag
}

/// Basis of `{x ∈ ℤⁿ : M x = 0}` that is saturated, i.e. spans the full
/// integral kernel, obtained from a unimodular column reduction `M U = [H | 0]`.
pub fn integer_kernel(m: &IntRows) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u: IntRows = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col == cols {
            break;
        }
        // gcd-combine columns pivot_col.. so that only column pivot_col is non-zero in row r
        loop {
            let nz: Vec<usize> = (pivot_col..cols).filter(|&j| !a[r][j].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap_cols(&mut a, &mut u, j, pivot_col);
                    pivot_col += 1;
                }
                break;
            }
            let jmin = *nz.iter().min_by_key(|&&j| a[r][j].abs()).expect("non-empty");
            for &j in &nz {
                if j == jmin {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][jmin]);
                col_axpy(&mut a, &mut u, j, jmin, &q);
            }
        }
    }
    (pivot_col..cols)
        .map(|j| {
            let mut v: Vec<BigInt> = (0..cols).map(|i| u[i][j].clone()).collect();
            normalize_sign(&mut v);
            v
        })
        .collect()
}

fn swap_cols(a: &mut IntRows, u: &mut IntRows, i: usize, j: usize) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(i, j);
    }
}

/// column `j` -= q · column `k`
fn col_axpy(a: &mut IntRows, u: &mut IntRows, j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        let v = &row[j] - q * &row[k];
        row[j] = v;
    }
}

/// Makes the first non-zero entry positive.
pub fn normalize_sign(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

/// Greatest common divisor of the entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Integer matrix product.
pub fn mul(a: &IntRows, b: &IntRows) -> IntRows {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(BigInt::zero(), |s, (x, brow)| s + x * &brow[j]))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntRows) -> IntRows {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}
